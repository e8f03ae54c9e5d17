"""Random number generation.

All randomness in `vconn` is drawn from *substreams* of one master seed.
A substream is identified by the master seed and a key, e.g.
`("nonscratch", k, i, j)`, and is independent of every other key.
Hence results do not depend on the order (or the process) in which
the random choices are made.

Example:
>>> a = substream(7, "sample", 3).random()
>>> b = substream(7, "sample", 3).random()
>>> a == b
True
>>> a == substream(7, "sample", 4).random()
False
"""

import zlib

import numpy.random as _rnd


def _as_word(key):
    """Map a key part to a non-negative integer."""
    if isinstance(key, str):
        return zlib.crc32(key.encode())
    key = int(key)
    if key < 0:
        raise ValueError(f"Negative seed key: {key}")
    return key


def substream(seed, *key):
    """Get the generator for `key` under the master `seed`.

    Parameters
    ----------
    seed: int
        Master seed (non-negative). Zero is a perfectly good seed here.
    *key: int or str
        Path of the substream, e.g. the role and loop indices.

    Returns
    -------
    numpy.random.Generator
    """
    seq = _rnd.SeedSequence(_as_word(seed), spawn_key=tuple(map(_as_word, key)))
    return _rnd.default_rng(seq)


def sample_rate(rng, n, rate):
    """Sample each of `range(n)` independently with probability `rate`."""
    return frozenset(map(int, (rng.random(n) < rate).nonzero()[0]))


def sample_count(rng, n, count):
    """Sample `min(count, n)` distinct vertices of `range(n)`, sorted."""
    if count >= n:
        return list(range(n))
    return sorted(map(int, rng.choice(n, size=count, replace=False)))
