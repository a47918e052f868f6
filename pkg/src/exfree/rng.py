"""Deterministic per-trial seed derivation.

Experiments fan out into independent trials whose randomness must not depend
on execution order or thread scheduling. Each trial therefore gets its own
stream, seeded by mixing the experiment seed with the trial index through a
splitmix-style 64-bit finalizer. Any subset of trials can be re-run in
isolation and reproduce bit-for-bit.
"""

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A1C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """Splitmix-style finalizer: golden-ratio increment, then two
    xor-shift/multiply rounds. Bijective on 64-bit words, so distinct
    (seed, index) pairs never collide within one experiment."""
    x = (x + _GAMMA) & MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & MASK64
    return x ^ (x >> 31)


def trial_seed(seed: int, index: int) -> int:
    """Seed for trial `index` of an experiment with master seed `seed`."""
    if index < 0:
        raise ValueError("trial index must be nonnegative")
    return mix64((seed & MASK64) ^ index)
