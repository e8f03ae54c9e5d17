"""Linear sketches of sparse {-1, 0, 1} vectors.

- `l2_sketch`: AMS-style projections onto four-wise independent ±1 vectors.
  The Euclidean norm of the (rescaled) projection estimates `|v|_2`.
- `sr_sketch`: s-sparse recovery. Each of `rows` rows hashes the indices into
  `2s` buckets; each bucket is a 1-sparse tester holding
  σ (sum of values), η (sum of value times 1-based index) and
  two fingerprints τ (sum of value times z^index, mod the prime 2^61 - 1).

Both are exactly linear: sketches of the same `SketchContext` can be added
and subtracted, and the result is the sketch of the sum (difference).
"""

import math
from dataclasses import dataclass

import numpy as np

from vconn.graphs import sentinel
from vconn.tools.seeding import substream
from vconn.vc_config import rc

PRIME = (1 << 61) - 1
"""Fingerprint field."""

HASH_PRIME = (1 << 31) - 1
"""Field of the bucket and sign hash polynomials (products fit in int64)."""

N_FINGERPRINTS = 2


class ContextMismatch(ValueError):
    """Sketches of different contexts cannot be combined."""


TOO_DENSE = sentinel("TOO_DENSE")
"""Outcome of decoding a sketch of a vector with more than `s` non-zeros."""


@dataclass(frozen=True)
class SparseVector:
    """Sorted `(index, value)` pairs without zeros.

    Example:
    >>> SparseVector.from_pairs([(7, -1), (2, 1), (5, 0)])
    SparseVector(entries=((2, 1), (7, -1)))
    """

    entries: tuple = ()

    @classmethod
    def from_pairs(cls, pairs):
        dct = {}
        for i, x in pairs:
            dct[int(i)] = dct.get(int(i), 0) + int(x)
        return cls(tuple(sorted((i, x) for i, x in dct.items() if x)))

    @classmethod
    def indicator(cls, indices):
        return cls(tuple((int(i), 1) for i in sorted(set(indices))))

    @property
    def indices(self):
        return np.array([i for i, _ in self.entries], dtype=np.int64)

    @property
    def values(self):
        return np.array([x for _, x in self.entries], dtype=np.int64)

    def support(self, sign=None):
        """Indices with non-zero value (or with value `sign`)."""
        return frozenset(i for i, x in self.entries if sign is None or x == sign)

    def __len__(self):
        return len(self.entries)


#########################################
# Context
#########################################
def _poly_hash(coefs, x):
    """Evaluate polynomials (rows of `coefs`, highest degree first) at `x`, mod p."""
    x = np.asarray(x, dtype=np.int64) % HASH_PRIME
    acc = np.zeros((len(coefs), len(x)), dtype=np.int64)
    for c in coefs.T:
        acc = (acc * x + c[:, None]) % HASH_PRIME
    return acc


class SketchContext:
    """Shared randomness of all sketches that are ever combined.

    Parameters
    ----------
    n: int
        Universe size; vector indices lie in `range(n)`.
    s: int
        Recovery sparsity: vectors with at most `s` non-zeros decode exactly.
    seed, key:
        The randomness is the substream `(seed, "sketch", *key)`.
    rows: int, optional
        Recovery rows. Default: `ceil(log2 n) + rc.sketch.extra_rows`.
    l2_rows: int, optional
        ℓ2 projections. Default: `max(l2_min_rows, l2_rows_per_log*ceil(log2 n))`.
    l2_scale: float, optional
        Multiplier of the ℓ2 estimate.
    """

    def __init__(self, n, s, seed=0, key=(), rows=None, l2_rows=None,
                 l2_scale=None, config=None):
        if n < 1 or s < 1:
            raise ValueError("The universe and the sparsity must be positive.")
        sk = rc.sketch if config is None else dict(
            extra_rows=config.extra_rows, l2_min_rows=config.l2_min_rows,
            l2_rows_per_log=config.l2_rows_per_log, l2_scale=config.l2_scale)
        logn = max(1, math.ceil(math.log2(max(n, 2))))
        self.n = int(n)
        self.s = int(s)
        self.rows = rows or logn + sk["extra_rows"]
        self.buckets = 2 * self.s
        self.l2_rows = l2_rows or max(sk["l2_min_rows"], sk["l2_rows_per_log"] * logn)
        self.l2_scale = l2_scale or sk["l2_scale"]
        rng = substream(seed, "sketch", *key)
        index = np.arange(self.n)

        # Pairwise independent bucket hashes (a*i + b mod p) mod buckets.
        coefs = np.stack([rng.integers(1, HASH_PRIME, self.rows),
                          rng.integers(0, HASH_PRIME, self.rows)], axis=1)
        self.bucket_of = _poly_hash(coefs, index) % self.buckets

        # Fingerprint powers z^j, j = 1..n, for each fingerprint.
        self.z = [int(z) for z in rng.integers(2, PRIME - 1, N_FINGERPRINTS,
                                               dtype=np.int64)]
        self.powers = np.empty((N_FINGERPRINTS, self.n + 1), dtype=object)
        for f, z in enumerate(self.z):
            acc = 1
            for j in range(self.n + 1):
                self.powers[f, j] = acc
                acc = acc * z % PRIME

        # Four-wise independent signs: parity of a cubic polynomial.
        # Stored per block of rows, to keep the int64 intermediates small.
        coefs = rng.integers(0, HASH_PRIME, (self.l2_rows, 4))
        self.signs = np.empty((self.l2_rows, self.n), dtype=np.int8)
        for r0 in range(0, self.l2_rows, 256):
            block = _poly_hash(coefs[r0:r0 + 256], index)
            self.signs[r0:r0 + 256] = 1 - 2 * (block & 1)

    def check(self, *sketches):
        for sk in sketches:
            if sk.ctx is not self:
                raise ContextMismatch("The sketches belong to different contexts.")

    def _entries(self, v):
        if not isinstance(v, SparseVector):
            v = SparseVector.from_pairs(v)
        idx, val = v.indices, v.values
        if len(idx) and (idx.min() < 0 or idx.max() >= self.n):
            raise IndexError(f"Vector index outside [0, {self.n}).")
        return idx, val


#########################################
# ℓ2 estimation
#########################################
@dataclass(frozen=True, eq=False)
class L2Sketch:
    """Integer projections of a vector; the estimate is a rescaled norm."""

    ctx: SketchContext
    projection: np.ndarray

    def __add__(self, other):
        self.ctx.check(other)
        return L2Sketch(self.ctx, self.projection + other.projection)

    def __sub__(self, other):
        self.ctx.check(other)
        return L2Sketch(self.ctx, self.projection - other.projection)

    def __eq__(self, other):
        return (self.ctx is other.ctx
                and np.array_equal(self.projection, other.projection))


def l2_sketch(ctx, v):
    """Sketch `v` (a `SparseVector` or `(index, value)` pairs) for `l2_estimate`."""
    idx, val = ctx._entries(v)
    projection = ctx.signs[:, idx].astype(np.int64) @ val
    return L2Sketch(ctx, projection)


def l2_estimate(sk):
    """Estimate of `|v|_2`, within `[|v|_2, 1.1 |v|_2]` whp over the context."""
    ctx = sk.ctx
    return ctx.l2_scale * float(np.linalg.norm(sk.projection)) / math.sqrt(ctx.l2_rows)


#########################################
# Sparse recovery
#########################################
@dataclass(frozen=True, eq=False)
class RecoverySketch:
    """`rows x buckets` 1-sparse testers (σ, η, τ)."""

    ctx: SketchContext
    sigma: np.ndarray
    eta: np.ndarray
    tau: np.ndarray  # object dtype (python ints mod PRIME)

    def combine(self, other, sign=+1):
        return sr_combine(self, other, sign)

    def __add__(self, other):
        return sr_combine(self, other, +1)

    def __sub__(self, other):
        return sr_combine(self, other, -1)

    def __eq__(self, other):
        return (self.ctx is other.ctx
                and np.array_equal(self.sigma, other.sigma)
                and np.array_equal(self.eta, other.eta)
                and np.array_equal(self.tau, other.tau))

    def is_zero(self):
        return not (self.sigma.any() or self.eta.any() or any(self.tau.flat))


def _zero_recovery(ctx):
    shape = (ctx.rows, ctx.buckets)
    return (np.zeros(shape, dtype=np.int64), np.zeros(shape, dtype=np.int64),
            np.zeros((N_FINGERPRINTS,) + shape, dtype=object))


def sr_sketch(ctx, v):
    """Sketch `v` (values in {-1, 0, 1}) for `sr_decode`.

    Example:
    >>> ctx = SketchContext(10, 5)
    >>> sk = sr_sketch(ctx, [(2, 1), (7, -1), (9, 1)])
    >>> sr_decode(sk)
    SparseVector(entries=((2, 1), (7, -1), (9, 1)))
    """
    idx, val = ctx._entries(v)
    if np.any(np.abs(val) > 1):
        raise ValueError("Recovery sketches only take values in {-1, 0, 1}.")
    sigma, eta, tau = _zero_recovery(ctx)
    rows = np.repeat(np.arange(ctx.rows)[:, None], len(idx), axis=1)
    cols = ctx.bucket_of[:, idx]
    np.add.at(sigma, (rows, cols), np.broadcast_to(val, cols.shape))
    np.add.at(eta, (rows, cols), np.broadcast_to(val * (idx + 1), cols.shape))
    for f in range(N_FINGERPRINTS):
        # Python ints: an int64 factor would make the bucket sums wrap.
        terms = np.array([int(x) * ctx.powers[f, int(i) + 1]
                          for i, x in zip(idx, val)], dtype=object)
        np.add.at(tau[f], (rows, cols), np.broadcast_to(terms, cols.shape))
    tau %= PRIME
    return RecoverySketch(ctx, sigma, eta, tau)


def sr_combine(a, b, sign=+1):
    """Entrywise `a + b` (or `a - b` for `sign=-1`); σ, η over ℤ, τ mod p."""
    a.ctx.check(b)
    if sign in ("+", 1, +1):
        return RecoverySketch(a.ctx, a.sigma + b.sigma, a.eta + b.eta,
                              (a.tau + b.tau) % PRIME)
    if sign in ("-", -1):
        return RecoverySketch(a.ctx, a.sigma - b.sigma, a.eta - b.eta,
                              (a.tau - b.tau) % PRIME)
    raise ValueError(f"Invalid sign: {sign}")


def sr_decode(sk):
    """Recover the sketched vector, or `TOO_DENSE`.

    Scans every bucket. A bucket passes as holding the single entry
    `(η/σ - 1, σ)` if `σ = ±1`, the index is in range, and both fingerprints
    match. The passing entries are accepted only if, together,
    they number at most `s` and account for the entire sketch.
    """
    ctx = sk.ctx
    found = {}
    for r, b in zip(*np.nonzero(sk.sigma)):
        sigma = int(sk.sigma[r, b])
        if sigma not in (1, -1):
            continue
        j = int(sk.eta[r, b]) * sigma
        if not 1 <= j <= ctx.n:
            continue
        if any(sk.tau[f, r, b] != (sigma * ctx.powers[f, j]) % PRIME
               for f in range(N_FINGERPRINTS)):
            continue
        if found.setdefault(j - 1, sigma) != sigma:
            return TOO_DENSE
    if len(found) > ctx.s:
        return TOO_DENSE
    v = SparseVector.from_pairs(found.items())
    if not (sk - sr_sketch(ctx, v)).is_zero():
        return TOO_DENSE
    return v
