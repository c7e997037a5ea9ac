"""Dense exact linear algebra over a prime field F_p.

Matrices are stored as numpy ``int64`` arrays with entries reduced to
``[0, p)``.  All elimination is done with modular inverses, so results are
exact.  The modulus must satisfy ``(p - 1)**2 < 2**63`` so that a product of
two reduced entries never overflows ``int64``; the default modulus
``2**31 - 1`` leaves ample headroom.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MODULUS = 2**31 - 1

# (p-1)^2 must fit in int64 together with one subtraction of slack.
_MAX_MODULUS = 3_037_000_499


@lru_cache(maxsize=64)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_modulus(p: int) -> int:
    """Validate a modulus for use with MatFp; return it unchanged."""
    if not isinstance(p, int) or p < 3:
        raise ValueError(f"modulus must be an odd prime >= 3, got {p!r}")
    if p > _MAX_MODULUS:
        raise ValueError(f"modulus {p} too large for int64 arithmetic")
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    return p


class MatFp:
    """A dense matrix over F_p supporting rank and kernel-basis extraction.

    The entry array is owned by the instance and never mutated after
    construction; elimination always works on an internal copy, so instances
    can be shared freely between threads.
    """

    __slots__ = ("entries", "p")

    def __init__(self, entries, p: int = MODULUS):
        check_modulus(p)
        arr = np.asarray(entries, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {arr.shape}")
        arr = np.remainder(arr, p)
        arr.flags.writeable = False
        self.entries = arr
        self.p = p

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int = MODULUS) -> "MatFp":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int = MODULUS) -> "MatFp":
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __repr__(self) -> str:
        return f"MatFp({self.rows}x{self.cols} mod {self.p})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatFp):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.entries, other.entries)

    def rref(self) -> tuple[np.ndarray, tuple[int, ...]]:
        """Reduced row-echelon form and the tuple of pivot columns.

        Pivots are chosen as the first nonzero entry in each column (partial
        pivoting by first nonzero); the pivot column is cleared in all other
        rows, so the result is the unique RREF over F_p.
        """
        p = self.p
        a = self.entries.copy()
        nrows, ncols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                a[[r, pr]] = a[[pr, r]]
            inv = pow(int(a[r, c]), -1, p)
            a[r] = a[r] * inv % p
            col = a[:, c].copy()
            col[r] = 0
            other = np.nonzero(col)[0]
            if other.size:
                a[other] = (a[other] - np.outer(col[other], a[r])) % p
            pivots.append(c)
            r += 1
        return a, tuple(pivots)

    def rank(self) -> int:
        """Rank over F_p."""
        return len(self.rref()[1])

    def nullity(self) -> int:
        return self.cols - self.rank()

    def kernel_basis(self) -> list[np.ndarray]:
        """Basis of the right null-space, in reduced echelon normal form.

        One vector per free column ``f`` (in increasing column order), with a
        1 in coordinate ``f``, zeros in the other free coordinates, and the
        pivot coordinates filled from the RREF.  ``len(result) == cols - rank``
        and ``M v == 0`` for every returned vector.
        """
        p = self.p
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            v = np.zeros(self.cols, dtype=np.int64)
            v[f] = 1
            for i, c in enumerate(pivots):
                v[c] = (-int(red[i, f])) % p
            v.flags.writeable = False
            basis.append(v)
        return basis

    def matvec(self, v) -> np.ndarray:
        """Matrix-vector product over F_p."""
        v = np.remainder(np.asarray(v, dtype=np.int64), self.p)
        if v.shape != (self.cols,):
            raise ValueError(f"vector of length {v.shape} incompatible with {self!r}")
        # Reduce each product before summing: column sums of values < p stay
        # far below the int64 limit for any realistic width.
        return (self.entries * v % self.p).sum(axis=1) % self.p

    def inverse(self) -> "MatFp":
        """Inverse of a square matrix; raises ValueError if singular."""
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        n = self.rows
        aug = MatFp(np.hstack([self.entries, np.eye(n, dtype=np.int64)]), self.p)
        red, pivots = aug.rref()
        if pivots != tuple(range(n)):
            raise ValueError("matrix is singular over F_p")
        return MatFp(red[:, n:], self.p)
