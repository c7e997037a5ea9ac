"""Explicit parameterization of rational plane curves over F_p.

Given a numerical type and random points, the engine reduces the class by
greedy quadratic reflections (mirrored geometrically by Cremona maps centered
at triples of points), parameterizes the base case directly, and
back-substitutes through the inverse maps, stripping the common factor at
each stage.

Randomness over a large prime field stands in for genericity: every
degenerate configuration (collinear centers, a point landing on a fundamental
line, a stuck linear system) raises DegenerateConfigurationError, and the
driver retries with points regenerated deterministically from
seed + retry counter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .binform import BinForm, ParamTriple, div_exact, gcd_many
from .exactla import MODULUS, MatFp, check_modulus
from .lattice import DivClass, NumType, reduce_to_base, reflect, smooth_rational_numerics_ok
from .plane import PlaneForm, eval_row


_MASK = (1 << 64) - 1


def _mv(mat: np.ndarray, vec: np.ndarray, p: int) -> np.ndarray:
    """Overflow-safe matrix-vector product mod p (reduce before summing)."""
    return (mat * vec % p).sum(axis=1) % p


def _bilinear(x: np.ndarray, mat: np.ndarray, y: np.ndarray, p: int) -> int:
    return int((x * _mv(mat, y, p) % p).sum() % p)


class DegenerateConfigurationError(RuntimeError):
    """A random configuration failed a genericity requirement; retry."""


class RetryLimitError(RuntimeError):
    """Deterministic retries were exhausted (modulus too small for the task)."""


class SeededRng:
    """splitmix64: tiny, portable, and stable across platforms."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next_u64() % n


def mix_seed(*parts: int) -> int:
    """Deterministically fold integers into one 64-bit sub-seed."""
    state = 0x243F6A8885A308D3
    for part in parts:
        rng = SeededRng(state ^ (part & _MASK))
        state = rng.next_u64()
    return state


@dataclass(frozen=True)
class PlanePoint:
    """Projective point over F_p, scaled so its first nonzero coordinate is 1."""

    x: tuple[int, int, int]
    p: int = MODULUS

    def __post_init__(self):
        check_modulus(self.p)
        coords = tuple(int(c) % self.p for c in self.x)
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("(0, 0, 0) is not a projective point")
        inv = pow(lead, -1, self.p)
        object.__setattr__(self, "x", tuple(c * inv % self.p for c in coords))

    def to_json(self) -> list[int]:
        return list(self.x)


def _line_through(a: PlanePoint, b: PlanePoint, p: int) -> tuple[int, int, int]:
    """Coefficients of the line through two distinct points (cross product)."""
    (a0, a1, a2), (b0, b1, b2) = a.x, b.x
    line = ((a1 * b2 - a2 * b1) % p, (a2 * b0 - a0 * b2) % p, (a0 * b1 - a1 * b0) % p)
    if line == (0, 0, 0):
        raise ValueError("points coincide; no unique line")
    return line


def _eval_line(line: tuple[int, int, int], pt: PlanePoint, p: int) -> int:
    return (line[0] * pt.x[0] + line[1] * pt.x[1] + line[2] * pt.x[2]) % p


def genericity_certificate(points: tuple[PlanePoint, ...], p: int) -> bool:
    """Pairwise distinct, no 3 collinear, no 6 on a conic."""
    if len(set(points)) != len(points):
        return False
    for a, b, c in itertools.combinations(points, 3):
        if _eval_line(_line_through(a, b, p), c, p) == 0:
            return False
    if len(points) >= 6:
        for six in itertools.combinations(points, 6):
            rows = np.vstack([eval_row(pt.x, 2, p) for pt in six])
            if MatFp(rows, p).rank() < 6:
                return False
    return True


@dataclass(frozen=True)
class PointSet:
    """r certified-generic points plus the seed that produced them."""

    points: tuple[PlanePoint, ...]
    seed: int
    p: int = MODULUS

    @property
    def r(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {"seed": self.seed, "p": self.p, "points": [pt.to_json() for pt in self.points]}


def random_points(r: int, seed: int, p: int = MODULUS, max_tries: int = 32) -> PointSet:
    """Deterministic generic points; retries fold a counter into the seed."""
    if r < 1:
        raise ValueError("need at least one point")
    check_modulus(p)
    for attempt in range(max_tries):
        rng = SeededRng(mix_seed(seed, attempt, 0x70494E54))
        pts = tuple(PlanePoint((1, rng.below(p), rng.below(p)), p) for _ in range(r))
        if genericity_certificate(pts, p):
            return PointSet(pts, seed, p)
    raise RetryLimitError(f"no generic configuration of {r} points found mod {p}")


@dataclass(frozen=True)
class CremonaStep:
    """One quadratic Cremona map centered at three of the current points.

    ``quad_forms`` are the three forward conics (products of the lines
    joining the centers); evaluating them maps non-center points.  The three
    center slots of ``points_after`` hold the coordinate points.  ``n_matrix``
    is the linear map sending the centers to the coordinate triangle; the
    inverse map factors as n_matrix^{-1} after the standard involution
    (y1 y2, y0 y2, y0 y1), which is what ``pull_back`` uses.
    """

    centers: tuple[int, int, int]
    quad_forms: tuple[PlaneForm, PlaneForm, PlaneForm]
    points_before: tuple[PlanePoint, ...]
    points_after: tuple[PlanePoint, ...]
    n_matrix: MatFp

    @property
    def p(self) -> int:
        return self.n_matrix.p

    def apply_point(self, pt: PlanePoint) -> PlanePoint:
        """Forward image of a point not on any fundamental line."""
        vals = tuple(q.eval(pt.x) for q in self.quad_forms)
        if sum(1 for v in vals if v == 0) >= 2:
            raise DegenerateConfigurationError(f"{pt} lies on a fundamental line")
        return PlanePoint(vals, self.p)

    def pull_back(self, phis: tuple[BinForm, BinForm, BinForm]) -> tuple[BinForm, BinForm, BinForm]:
        """Compose the inverse map with a parameterization of the image curve.

        Returns the components with their common factor removed; the caller
        checks the resulting degree against the reflected class.
        """
        f0, f1, f2 = phis
        prods = (f1 * f2, f0 * f2, f0 * f1)
        ninv = self.n_matrix.inverse().entries
        combined = []
        for c in range(3):
            acc = BinForm.zero(self.p)
            for l in range(3):
                if prods[l].is_zero or ninv[c, l] == 0:
                    continue
                acc = acc + prods[l].scale(int(ninv[c, l]))
            combined.append(acc)
        if all(f.is_zero for f in combined):
            raise DegenerateConfigurationError("pull-back collapsed to zero")
        g = gcd_many(combined)
        return tuple(div_exact(f, g) if not f.is_zero else f for f in combined)

    def to_json(self) -> dict:
        return {
            "centers": list(self.centers),
            "quad_forms": [list(q.coeffs) for q in self.quad_forms],
            "points_before": [pt.to_json() for pt in self.points_before],
            "points_after": [pt.to_json() for pt in self.points_after],
        }


def cremona_apply(points: tuple[PlanePoint, ...], i: int, j: int, k: int, p: int = MODULUS) -> CremonaStep:
    """Quadratic Cremona map centered at points i, j, k (1-based indices)."""
    r = len(points)
    if not (1 <= i < j < k <= r):
        raise ValueError(f"center indices ({i}, {j}, {k}) must satisfy 1 <= i < j < k <= {r}")
    pi, pj, pk = points[i - 1], points[j - 1], points[k - 1]
    h_ij = _line_through(pi, pj, p)
    h_ik = _line_through(pi, pk, p)
    h_jk = _line_through(pj, pk, p)
    if _eval_line(h_jk, pi, p) == 0:
        raise DegenerateConfigurationError("collinear centers")
    lines = {"ij": PlaneForm.linear(*h_ij, p), "ik": PlaneForm.linear(*h_ik, p), "jk": PlaneForm.linear(*h_jk, p)}
    quad_forms = (lines["ij"] * lines["ik"], lines["ij"] * lines["jk"], lines["ik"] * lines["jk"])
    n_matrix = MatFp(np.array([h_jk, h_ik, h_ij], dtype=np.int64), p)

    coord = {i: PlanePoint((1, 0, 0), p), j: PlanePoint((0, 1, 0), p), k: PlanePoint((0, 0, 1), p)}
    after: list[PlanePoint] = []
    for idx, pt in enumerate(points, start=1):
        if idx in coord:
            after.append(coord[idx])
            continue
        vals = tuple(q.eval(pt.x) for q in quad_forms)
        if sum(1 for v in vals if v == 0) >= 2:
            raise DegenerateConfigurationError(f"point {idx} lies on a fundamental line")
        after.append(PlanePoint(vals, p))
    if len(set(after)) != len(after):
        raise DegenerateConfigurationError("transformed points collide")
    return CremonaStep((i, j, k), quad_forms, tuple(points), tuple(after), n_matrix)


def multiplicity_at(phi: ParamTriple, point: PlanePoint) -> int:
    """Multiplicity of the parameterized curve at a plane point.

    Normalizing the point at a nonzero coordinate c, the parameter values
    mapping to the point are the common roots of phi_a - l_a phi_c and
    phi_b - l_b phi_c; the degree of their gcd counts them with multiplicity,
    which is the multiplicity of the curve at the point (0 off the curve).
    """
    if phi.p != point.p:
        raise ValueError("mixed moduli")
    c = next(idx for idx, v in enumerate(point.x) if v)
    others = [idx for idx in range(3) if idx != c]
    phis = phi.phis
    diffs = []
    for a in others:
        term = phis[a]
        if point.x[a]:
            term = term - phis[c].scale(point.x[a])
        diffs.append(term)
    if all(f.is_zero for f in diffs):
        raise ValueError("components are proportional at this point; not a curve")
    g = gcd_many(diffs)
    return 0 if g.is_zero else g.degree


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a mod p, or None if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if _legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while _legendre(z, p) != -1:
        z += 1
    m, c, t, root = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        root = root * b % p
    return root


def _binform_from(coeffs, p: int) -> BinForm:
    return BinForm(np.asarray(coeffs, dtype=np.int64), p)


def _line_triple(a: PlanePoint, b: PlanePoint, p: int) -> tuple[BinForm, BinForm, BinForm]:
    """phi(s, t) = s*a + t*b."""
    return tuple(_binform_from((a.x[c], b.x[c]), p) for c in range(3))


def _parameterize_line(mults, points, rng: SeededRng, p: int):
    assigned = [idx for idx, m in enumerate(mults) if m == 1]
    if any(m not in (0, 1) for m in mults) or len(assigned) > 2:
        raise ValueError(f"not a line type: multiplicities {mults}")
    chosen = [points[idx] for idx in assigned]
    avoid = [points[idx] for idx, m in enumerate(mults) if m == 0]
    for _ in range(16):
        extras = [PlanePoint((1, rng.below(p), rng.below(p)), p) for _ in range(2 - len(chosen))]
        cand = chosen + extras
        if len(set(cand)) != 2:
            continue
        line = _line_through(cand[0], cand[1], p)
        if any(_eval_line(line, q, p) == 0 for q in avoid):
            if len(chosen) == 2:
                raise DegenerateConfigurationError("forced line hits an assigned zero-multiplicity point")
            continue
        return _line_triple(cand[0], cand[1], p)
    raise DegenerateConfigurationError("could not place a generic line")


def _conic_point(mat: np.ndarray, rng: SeededRng, p: int) -> tuple[int, int, int] | None:
    """A rational point on x^T mat x = 0 via random line sections."""
    for _ in range(64):
        a = np.array([1, rng.below(p), rng.below(p)], dtype=np.int64)
        b = np.array([0, 1, rng.below(p)], dtype=np.int64)
        qa = _bilinear(a, mat, a, p)
        qb = _bilinear(b, mat, b, p)
        qab = _bilinear(a, mat, b, p)
        if qa == 0:
            return tuple(int(v) for v in a)
        disc = (qab * qab - qa * qb) % p
        root = sqrt_mod(disc, p)
        if root is None:
            continue
        s = (-qab + root) % p
        pt = (s * a + qa * b) % p
        if pt.any():
            return tuple(int(v) for v in pt)
    return None


def _parameterize_conic(mults, points, rng: SeededRng, p: int):
    assigned = [idx for idx, m in enumerate(mults) if m == 1]
    if any(m not in (0, 1) for m in mults) or len(assigned) > 5:
        raise ValueError(f"not a conic type: multiplicities {mults}")
    base = [points[idx] for idx in assigned]
    for _ in range(16):
        extras = [PlanePoint((1, rng.below(p), rng.below(p)), p) for _ in range(5 - len(base))]
        five = base + extras
        if len(set(five)) != 5:
            continue
        rows = np.vstack([eval_row(pt.x, 2, p) for pt in five])
        kernel = MatFp(rows, p).kernel_basis()
        if len(kernel) != 1:
            if not extras:
                raise DegenerateConfigurationError("assigned points fail to pin a unique conic")
            continue
        v = kernel[0]
        inv2 = pow(2, -1, p)
        mat = np.array(
            [
                [v[0], v[1] * inv2, v[2] * inv2],
                [v[1] * inv2, v[3], v[4] * inv2],
                [v[2] * inv2, v[4] * inv2, v[5]],
            ],
            dtype=np.int64,
        ) % p
        try:
            MatFp(mat, p).inverse()
        except ValueError:
            if not extras:
                raise DegenerateConfigurationError("assigned points lie on a singular conic")
            continue
        pt0 = _conic_point(mat, rng, p)
        if pt0 is None:
            raise DegenerateConfigurationError("no rational point found on the conic")
        # complete pt0 to a basis and sweep the pencil of lines through it
        for _ in range(16):
            u = np.array([1, rng.below(p), rng.below(p)], dtype=np.int64)
            w = np.array([0, 1, rng.below(p)], dtype=np.int64)
            basis = np.vstack([np.array(pt0, dtype=np.int64), u, w]) % p
            try:
                MatFp(basis, p).inverse()
            except ValueError:
                continue
            p0 = np.array(pt0, dtype=np.int64)
            qu = _bilinear(u, mat, u, p)
            qw = _bilinear(w, mat, w, p)
            quw = _bilinear(u, mat, w, p)
            lu = _bilinear(p0, mat, u, p)
            lw = _bilinear(p0, mat, w, p)
            # phi = -Q(su+tw) * p0 + 2 * (p0^T M (su+tw)) * (su+tw)
            comps = []
            for c in range(3):
                p0c, uc, wc = int(p0[c]), int(u[c]), int(w[c])
                cs2 = (-qu * p0c + 2 * lu * uc) % p
                cst = (-2 * quw * p0c + 2 * (lu * wc + lw * uc)) % p
                ct2 = (-qw * p0c + 2 * lw * wc) % p
                comps.append(_binform_from((cs2, cst, ct2), p))
            if all(f.is_zero for f in comps):
                continue
            return tuple(comps)
        raise DegenerateConfigurationError("failed to complete a basis at the conic point")
    raise DegenerateConfigurationError("could not complete the conic point set")


def _parameterize_pencil(d: int, mults, points, rng: SeededRng, p: int):
    """Degree-d curve with a (d-1)-fold point: swept by the lines through it.

    With the multiple point moved to (0, 0, 1), such a curve is
    (s G, t G, -H) for binary forms G, H of degrees d-1 and d; each simple
    point pins the parameter value of its line through the center and imposes
    one linear condition on (G, H).
    """
    center_candidates = [idx for idx, m in enumerate(mults) if m == d - 1]
    simple = [idx for idx, m in enumerate(mults) if m == 1]
    rest_ok = all(m in (0, 1, d - 1) for m in mults)
    if d < 3 or len(center_candidates) != 1 or not rest_ok:
        raise ValueError(f"base class of degree {d} with multiplicities {mults} is not parameterizable")
    center = points[center_candidates[0]]
    if len(simple) > 2 * d:
        raise ValueError("too many simple points for a pencil curve")
    for _ in range(16):
        u = np.array([1, rng.below(p), rng.below(p)], dtype=np.int64)
        w = np.array([0, 1, rng.below(p)], dtype=np.int64)
        umat = np.vstack([u, w, np.array(center.x, dtype=np.int64)]).T % p
        try:
            uinv = MatFp(umat, p).inverse().entries
        except ValueError:
            continue
        taus = []
        rows = []
        ok = True
        for idx in simple:
            bx = _mv(uinv, np.array(points[idx].x, dtype=np.int64), p)
            a, b, cc = (int(v) for v in bx)
            if a == 0 and b == 0:
                ok = False
                break
            taus.append((a, b))
            # condition H(a, b) + c * G(a, b) = 0 on the stacked (G | H) vector
            gpows = [pow(a, d - 1 - t, p) * pow(b, t, p) % p for t in range(d)]
            hpows = [pow(a, d - t, p) * pow(b, t, p) % p for t in range(d + 1)]
            rows.append([cc * v % p for v in gpows] + hpows)
        if not ok or len({(a * pow(b, -1, p) if b else -1) for a, b in taus}) != len(taus):
            raise DegenerateConfigurationError("simple points collide in the pencil through the center")
        if rows:
            kernel = MatFp(np.array(rows, dtype=np.int64), p).kernel_basis()
        else:
            kernel = [np.eye(2 * d + 1, dtype=np.int64)[i] for i in range(2 * d + 1)]
        if not kernel:
            raise DegenerateConfigurationError("no pencil curve through the prescribed points")
        for _ in range(16):
            coeffs = np.zeros(2 * d + 1, dtype=np.int64)
            for vec in kernel:
                coeffs = (coeffs + rng.below(p) * vec) % p
            gvec, hvec = coeffs[:d], coeffs[d:]
            if not gvec.any() or not hvec.any():
                continue
            g = _binform_from(gvec, p)
            h = _binform_from(hvec, p)
            if not g.is_zero and not h.is_zero and gcd_many([g, h]).degree != 0:
                continue
            # phi0 in the normalized frame, then back through the frame change
            zero_pad = np.zeros(1, dtype=np.int64)
            sg = _binform_from(np.concatenate([gvec, zero_pad]), p)
            tg = _binform_from(np.concatenate([zero_pad, gvec]), p)
            mh = -h
            frame = (sg, tg, mh)
            comps = []
            for c in range(3):
                acc = BinForm.zero(p)
                for l in range(3):
                    if frame[l].is_zero or umat[c, l] == 0:
                        continue
                    acc = acc + frame[l].scale(int(umat[c, l]))
                comps.append(acc)
            if all(f.is_zero for f in comps):
                continue
            return tuple(comps)
    raise DegenerateConfigurationError("failed to build the pencil curve")


class ParameterizationError(ValueError):
    """The requested type cannot be parameterized by this engine."""


def _parameterize_once(D: DivClass, pts: PointSet, rng: SeededRng, verify: bool) -> ParamTriple:
    p = pts.p
    word, base = reduce_to_base(D)
    classes = [D]
    for quad in word:
        classes.append(reflect(classes[-1], [quad]))
    steps: list[CremonaStep] = []
    current = pts.points
    for quad in word:
        step = cremona_apply(current, quad.i, quad.j, quad.k, p)
        steps.append(step)
        current = step.points_after

    if any(m < 0 for m in base.m):
        raise ParameterizationError(f"base class {base} has negative multiplicities")
    if base.d == 1:
        phis = _parameterize_line(base.m, current, rng, p)
    elif base.d == 2:
        phis = _parameterize_conic(base.m, current, rng, p)
    else:
        phis = _parameterize_pencil(base.d, base.m, current, rng, p)

    for step, cls in zip(reversed(steps), reversed(classes[:-1])):
        phis = step.pull_back(phis)
        got = max(f.degree for f in phis if not f.is_zero)
        if got != cls.d:
            raise DegenerateConfigurationError(f"pull-back degree {got}, class predicts {cls.d}")

    try:
        triple = ParamTriple(*phis)
    except ValueError as exc:
        raise DegenerateConfigurationError(str(exc)) from exc
    if triple.degree != D.d:
        raise DegenerateConfigurationError("final degree disagrees with the class")
    if verify:
        for idx, m in enumerate(D.m):
            got = multiplicity_at(triple, pts.points[idx])
            if got != m:
                raise DegenerateConfigurationError(f"multiplicity {got} != {m} at point {idx + 1}")
    return triple


def parameterize(
    ntype: NumType | DivClass,
    points: PointSet,
    seed: int,
    verify: bool = True,
    max_retries: int = 24,
) -> ParamTriple:
    """Parameterize a curve of the given type through the given points.

    The i-th multiplicity is imposed at the i-th point.  The type must pass
    the rational-smoothness numerics and have degree >= 1 (degree-0 classes
    are points, not parameterization targets).  Degenerate configurations
    retry with fresh points derived from seed and the retry counter.
    """
    D = ntype.to_divclass() if isinstance(ntype, NumType) else ntype
    if D.d < 1:
        raise ValueError("degree must be >= 1")
    if any(m < 0 for m in D.m):
        raise ValueError("multiplicities must be non-negative")
    if not smooth_rational_numerics_ok(D):
        raise ValueError(f"{D} fails the rational smoothness numerics")
    if D.r > points.r:
        raise ValueError(f"type needs {D.r} points but only {points.r} given")
    if D.r < points.r:
        D = DivClass(D.d, D.m + (0,) * (points.r - D.r))

    pts = points
    last = "no attempt"
    for attempt in range(max_retries):
        rng = SeededRng(mix_seed(seed, attempt, 0x504152))
        try:
            return _parameterize_once(D, pts, rng, verify)
        except DegenerateConfigurationError as exc:
            last = str(exc)
            pts = random_points(points.r, mix_seed(seed, attempt + 1, 0x52455452), points.p)
    raise RetryLimitError(f"parameterization failed after {max_retries} attempts: {last}")


def parameterize_with_trace(
    ntype: NumType | DivClass, points: PointSet, seed: int, verify: bool = True
) -> tuple[ParamTriple, list[CremonaStep]]:
    """Like parameterize, but also returns the Cremona steps for audit.

    Retries are not folded in here: a degenerate configuration surfaces as an
    exception so the caller sees exactly the trace of the points handed in.
    """
    D = ntype.to_divclass() if isinstance(ntype, NumType) else ntype
    if D.r < points.r:
        D = DivClass(D.d, D.m + (0,) * (points.r - D.r))
    word, _ = reduce_to_base(D)
    steps = []
    current = points.points
    for quad in word:
        step = cremona_apply(current, quad.i, quad.j, quad.k, points.p)
        steps.append(step)
        current = step.points_after
    triple = parameterize(ntype, points, seed, verify=verify, max_retries=1)
    return triple, steps
