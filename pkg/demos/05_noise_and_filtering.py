"""
Outlier messages and the frequency filter
=========================================

Real speakers sometimes emit alternative messages for the same sample.  The
corpus filter keeps a message only when its count reaches a share of the
sample's total (15% by default), so rare synonyms vanish while established
variants survive.  The noisy generator lets us stage both cases exactly.
"""

from emlang import filter_by_frequency, gen_compositional, gen_noisy, moprd_schema
from emlang.corpus import AnnotatedCorpus, CorpusEntry

schema = moprd_schema()
base, _ = gen_compositional(schema, message_length=10, vocab_size=20, seed=2)

# Give every message a count of 36 so 10% and 20% minority shares are exact.
base = AnnotatedCorpus(
    schema=base.schema,
    vocab_size=base.vocab_size,
    message_length=base.message_length,
    entries=tuple(
        CorpusEntry(sample=e.sample, messages=tuple((m, 36) for m, _ in e.messages))
        for e in base.entries
    ),
)

quiet = gen_noisy(base, synonym_count=1, minority_share=0.10, seed=13)
print("10% synonyms, filtered at 15% -> base restored:",
      filter_by_frequency(quiet, 0.15) == base)

loud = gen_noisy(base, synonym_count=1, minority_share=0.20, seed=13)
print("20% synonyms, filtered at 15% -> nothing removed:",
      filter_by_frequency(loud, 0.15) == loud)

sample = loud.entries[0]
print("sample", sample.sample.id, "messages:",
      [(list(m)[:4], c) for m, c in sample.messages])
