"""
Referential-game accuracy
=========================

A speaker describes a target sample with a message; a listener must pick the
target out of a candidate set.  Speakers sample from per-sample message
distributions, and the listener scores candidates by the empirical
likelihood of the message.  An unambiguous language wins every episode; a
constant message leaves the listener guessing at chance level 1/|C|.
"""

from emlang import (
    GameConfig,
    CorpusListener,
    CorpusSpeaker,
    accuracy_per_speaker,
    all_combinations,
    build_corpus,
    gen_compositional,
    moprd_schema,
    run_lewis_game,
)

schema = moprd_schema()
language, _ = gen_compositional(schema, message_length=10, vocab_size=20, seed=1)

perfect = run_lewis_game(language, GameConfig(seed=5, candidate_count=20, episodes=1000))
print("unambiguous language:", perfect.values[0][0])

mute = build_corpus(
    schema,
    vocab_size=20,
    message_length=10,
    records=[
        (f"{i:02d}", combo, (0,) * 10, 1)
        for i, combo in enumerate(all_combinations(schema))
    ],
)
chance = run_lewis_game(mute, GameConfig(seed=101, candidate_count=5, episodes=10_000))
print("constant message, |C|=5:", chance.values[0][0], "(chance is 0.2)")

population = run_lewis_game(
    language,
    GameConfig(
        seed=7,
        candidate_count=10,
        episodes=200,
        speakers=tuple(CorpusSpeaker(language) for _ in range(10)),
        listeners=tuple(CorpusListener(language) for _ in range(10)),
    ),
)
print("10x10 population, per-speaker means:", accuracy_per_speaker(population))
