"""Splitting type of a parameterized rational plane curve, three ways.

For a degree-d parameterization the pulled-back twisted cotangent bundle
splits as O(-a) + O(-b) with a <= b and a + b = d.  The three independent
routes computed here:

* moving lines: the nullity p of the coefficient matrix of the map
  (S_{n-1})^3 -> S_{n-1+d} (d = 2n + delta) gives a = n - p;
* saturation: the least k >= d with dim J_k = k + 1 is sigma = b + d - 1;
* minimal syzygy: a is the least k with a nonzero syzygy of the ideal
  (phi0, phi1, phi2) in degree k.

For odd d the moving-line rank law pins a = n - p and b = d - a; that is
forced by a + b = d together with the graded dimension count
dim Syz_k = (k - a + 1)_+ + (k - b + 1)_+ and is cross-checked against the
saturation route in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .binform import BinForm, ParamTriple, div_exact, gcd_many
from .exactla import MatFp
from .plane import PlaneForm

__all__ = [
    "SplitType",
    "Syzygy",
    "syzygy_matrix",
    "moving_line_matrix",
    "splitting_moving_lines",
    "splitting_saturation",
    "min_syzygy",
    "syzygy_from_plane",
    "is_syzygy",
]


@dataclass(frozen=True)
class SplitType:
    """(a, b) with 0 <= a <= b; a + b is the curve degree."""

    a: int
    b: int

    def __post_init__(self):
        if not 0 <= self.a <= self.b:
            raise ValueError(f"splitting ({self.a}, {self.b}) violates 0 <= a <= b")

    @property
    def gap(self) -> int:
        return self.b - self.a

    @property
    def degree(self) -> int:
        return self.a + self.b

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "gap": self.gap}


@dataclass(frozen=True)
class Syzygy:
    """A degree-k relation alpha0 phi0 + alpha1 phi1 + alpha2 phi2 = 0."""

    degree: int
    alphas: tuple[BinForm, BinForm, BinForm]

    def __post_init__(self):
        if all(f.is_zero for f in self.alphas):
            raise ValueError("the zero syzygy is not a syzygy")
        for f in self.alphas:
            if not f.is_zero and f.degree != self.degree:
                raise ValueError("syzygy components must share the stated degree")

    def to_json(self) -> dict:
        return {"degree": self.degree, "alphas": [f.to_json() for f in self.alphas]}


def is_syzygy(phi: ParamTriple, syz: Syzygy) -> bool:
    acc = BinForm.zero(phi.p)
    for alpha, f in zip(syz.alphas, phi.phis):
        if alpha.is_zero or f.is_zero:
            continue
        acc = acc + alpha * f
    return acc.is_zero


def syzygy_matrix(phi: ParamTriple, k: int) -> MatFp:
    """Matrix of (beta0, beta1, beta2) in (S_k)^3 -> sum beta_i phi_i.

    Column 3w + i holds the coefficients of s^(k-w) t^w * phi_i; rows are
    indexed by the t-exponent in S_{k+d}.  The kernel is the degree-k graded
    piece of the syzygy module.
    """
    if k < 0:
        raise ValueError("syzygy degree must be non-negative")
    d = phi.degree
    p = phi.p
    rows = k + d + 1
    mat = np.zeros((rows, 3 * (k + 1)), dtype=np.int64)
    for w in range(k + 1):
        for i, f in enumerate(phi.phis):
            if f.is_zero:
                continue
            # s^(k-w) t^w shifts the t-exponent of every coefficient by w
            mat[w : w + d + 1, 3 * w + i] = f.coeffs
    return MatFp(mat, p)


def moving_line_matrix(phi: ParamTriple) -> MatFp:
    """The (n+d) x 3n moving-line matrix in degree n-1, for d = 2n + delta."""
    d = phi.degree
    if d < 2:
        raise ValueError("moving-line analysis needs degree >= 2")
    n = d // 2
    return syzygy_matrix(phi, n - 1)


def splitting_moving_lines(phi: ParamTriple) -> SplitType:
    """Splitting type from the rank of the moving-line matrix."""
    d = phi.degree
    if d < 2:
        raise ValueError("splitting computation needs degree >= 2")
    n = d // 2
    m = moving_line_matrix(phi)
    p_indep = m.cols - m.rank()
    a = n - p_indep
    return SplitType(a, d - a)


def splitting_saturation(phi: ParamTriple) -> SplitType:
    """Splitting type from the saturation degree of (phi0, phi1, phi2).

    dim J_k is the rank of the matrix whose columns are s^i t^(k-d-i) phi_j;
    the least k with dim J_k = k + 1 is sigma = b + d - 1 and is at most
    2d - 2 for any honest parameterization.
    """
    sigma = saturation_degree(phi)
    d = phi.degree
    b = sigma - d + 1
    return SplitType(d - b, b)


def saturation_degree(phi: ParamTriple) -> int:
    d = phi.degree
    if d < 2:
        raise ValueError("saturation analysis needs degree >= 2")
    for k in range(d, 2 * d - 1):
        if syzygy_matrix(phi, k - d).rank() == k + 1:
            return k
    raise ValueError("saturation cap 2d-2 exceeded; components share a factor or the map is degenerate")


def min_syzygy(phi: ParamTriple) -> Syzygy:
    """A nonzero syzygy of least degree; that degree equals a."""
    d = phi.degree
    if d < 2:
        raise ValueError("syzygy search needs degree >= 2")
    for k in range(1, d // 2 + 1):
        kernel = syzygy_matrix(phi, k).kernel_basis()
        if kernel:
            syz = _kernel_vector_to_syzygy(kernel[0], k, phi.p)
            if not is_syzygy(phi, syz):
                raise AssertionError("kernel vector is not a syzygy; matrix layout broken")
            return syz
    raise AssertionError("no syzygy found up to degree d/2; invalid parameterization")


def _kernel_vector_to_syzygy(vec: np.ndarray, k: int, p: int) -> Syzygy:
    alphas = []
    for i in range(3):
        coeffs = np.array([vec[3 * w + i] for w in range(k + 1)], dtype=np.int64)
        alphas.append(BinForm(coeffs, p))
    return Syzygy(k, tuple(alphas))


def syzygy_from_plane(
    phi: ParamTriple, a_forms: tuple[PlaneForm, PlaneForm, PlaneForm]
) -> tuple[Syzygy, BinForm]:
    """Push a plane relation A0 x0 + A1 x1 + A2 x2 = 0 down to a syzygy.

    Restricting the A_i to the curve gives psi_i = A_i(phi) of degree d*q;
    dividing out g = gcd(psi) leaves a syzygy of degree d*q - deg g, with g
    the cofactor.  Raises ValueError if the plane relation fails or if every
    A_i vanishes on the curve.
    """
    q = a_forms[0].degree
    p = phi.p
    for f in a_forms:
        if f.degree != q or f.p != p:
            raise ValueError("plane forms must share one degree and modulus")
    relation = a_forms[0].var_mul(0)
    for j in (1, 2):
        total = [
            (x + y) % p for x, y in zip(relation.coeffs, a_forms[j].var_mul(j).coeffs)
        ]
        relation = PlaneForm(q + 1, tuple(total), p)
    if not relation.is_zero():
        raise ValueError("the given forms do not satisfy A0 x0 + A1 x1 + A2 x2 = 0")
    psis = tuple(f.compose(phi) for f in a_forms)
    if all(f.is_zero for f in psis):
        raise ValueError("all plane forms vanish on the curve; degenerate input")
    g = gcd_many(psis)
    alphas = tuple(div_exact(f, g) if not f.is_zero else f for f in psis)
    degree = phi.degree * q - (0 if g.is_zero else g.degree)
    syz = Syzygy(degree, alphas)
    if not is_syzygy(phi, syz):
        raise AssertionError("plane push-down failed the syzygy identity")
    return syz, g
