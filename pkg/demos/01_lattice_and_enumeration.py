"""Walk through the divisor-class lattice of a blown-up plane.

Every class is a vector (d; m_1, ..., m_r) for d*L - sum m_i E_i.  The
intersection form, the Weyl reflections, and breadth-first closure under
the quadratic reflections are enough to reproduce the classical counts of
exceptional curves, all exactly and in well under a second.
"""

from curvesplit import (
    DivClass,
    NumType,
    Quad,
    canonical_class,
    enum_exceptional,
    intersect,
    is_exceptional_class,
    orbit_closure,
    point_class,
    reduce_to_base,
    reflect,
    semi_adjoint,
)
from curvesplit.lattice import is_ascenzi, num_permutations

# A degree-4 curve with a triple point and eight simple points.  Its class
# has self-intersection -1 and meets the canonical class in -1: exceptional.
E = DivClass(4, (3, 1, 1, 1, 1, 1, 1, 1, 1))
K = canonical_class(9)
print("E.E =", intersect(E, E), " K.E =", intersect(K, E))
print("exceptional?", is_exceptional_class(E))

# The quadratic reflection centered on the first three points drops the
# degree: this is the lattice shadow of a plane Cremona map.
print("after quad(1,2,3):", reflect(E, [Quad(1, 2, 3)]).to_json())

# Greedy reduction drives every such class down to a line or conic.
word, base = reduce_to_base(E)
print("reduction word:", [(q.i, q.j, q.k) for q in word], "base:", base.to_json())

# Counting exceptional classes.  For 7 points the Weyl group is finite and
# the orbit of E_7 is the full set of exceptional classes: 56 of them.
orbit = orbit_closure(point_class(7, 7))
print("r=7 normalized types:", sorted(T.to_json() for T in orbit))
print("with permutations:", sum(num_permutations(T) for T in orbit))

# For 9 points the group is infinite; capping the degree at 61 gives the
# well-known census: 1054 types, 42 of them Ascenzi, 39 with a semi-adjoint
# class A satisfying 2A = E + K + L.
types = enum_exceptional(9, 61)
asc = [T for T in types if is_ascenzi(T)]
sa = [T for T in types if semi_adjoint(T.to_divclass()) is not None]
print(f"r=9, degree <= 61: {len(types)} types, {len(asc)} Ascenzi, {len(sa)} semi-adjoint")

# The semi-adjoint of the flagship unbalanced curve:
F = DivClass(8, (3, 3, 3, 3, 3, 3, 3, 1, 1))
print("semi-adjoint of (8;3^7,1,1):", semi_adjoint(F).to_json())
