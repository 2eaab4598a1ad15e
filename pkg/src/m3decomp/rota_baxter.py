"""Splitting operators induced by direct decompositions, checked against the
weight-lambda identity

    R(x) R(y) = R( R(x) y + x R(y) + lambda x y )

exactly on all 81 ordered basis pairs.

Convention: the decomposition S (+) B induces R(s + b) = -lambda * b, the
projection onto B scaled by -lambda; R and R + lambda*Id are then the two
complementary splitting operators, and both satisfy the identity.  Operators
are stored fraction-free as a 9x9 numerator matrix over a scalar denominator
(the determinant of the basis-change matrix).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotDirectSum
from .linalg import ff_inverse
from .matrices import COORD_ORDER, Mat3, is_direct_sum
from .scalars import (
    EMPTY_CONSTRAINTS,
    ConstraintSet,
    MultiPoly,
    PolynomialRing,
    QQ,
    certified_nonzero,
    poly_to_string,
)

WEIGHT_VAR = "lam"


@dataclass
class RBOperator:
    """A linear operator on the matrix algebra: x -> (matrix9 x) / den."""

    matrix9: tuple
    den: object
    weight: object
    source_entry: str = ""
    constraints: ConstraintSet = EMPTY_CONSTRAINTS
    domain: object = QQ

    def apply_numerator(self, m):
        coords = m.coords()
        out = []
        for i in range(9):
            acc = self.domain.zero()
            for j in range(9):
                acc = acc + self.matrix9[i][j] * coords[j]
            out.append(acc)
        return Mat3.from_coords(out, self.domain)

    def to_json(self):
        return {
            "source_entry": self.source_entry,
            "weight": _scalar_str(self.weight),
            "denominator": _scalar_str(self.den),
            "matrix": [[_scalar_str(x) for x in row] for row in self.matrix9],
            "coordinate_order": ["e%d%d" % ij for ij in COORD_ORDER],
        }


def _scalar_str(x):
    if isinstance(x, MultiPoly):
        return poly_to_string(x)
    return str(x)


def splitting_rb(s, b, weight, source_entry=""):
    """The operator R(s + b) = -weight * b of the decomposition S (+) B,
    realized fraction-free through the basis-change determinant.

    The basis-change matrix is assembled with B's (constant-pivoted) reduced
    basis first so that parametric entries never block a pivot."""
    if s.domain != b.domain:
        raise NotDirectSum("summands live over different domains")
    if not is_direct_sum(s, b):
        raise NotDirectSum("the two subspaces do not span the matrix space directly")
    domain = s.domain
    weight = domain.coerce(weight)
    constraints = s.constraints.merged(b.constraints)
    if not certified_nonzero(weight, constraints):
        raise ValueError("weight must be (certifiably) nonzero")
    b_rows = b.echelon.rows
    s_rows = s.echelon.rows
    cols = [list(r) for r in b_rows] + [list(r) for r in s_rows]
    # D has the basis vectors as columns, B's first
    d_mat = [[cols[j][i] for j in range(9)] for i in range(9)]
    numer, det = ff_inverse(d_mat, constraints, domain)
    m = len(b_rows)
    zero = domain.zero()
    proj = []
    for i in range(9):
        row = []
        for j in range(9):
            acc = zero
            for t in range(m):
                acc = acc + d_mat[i][t] * numer[t][j]
            row.append(acc)
        proj.append(row)
    neg_w = -weight
    matrix9 = tuple(tuple(neg_w * x for x in row) for row in proj)
    return RBOperator(matrix9, det, weight, source_entry, constraints, domain)


def check_rb_identity(r):
    """Verify the weight identity on all 81 ordered basis pairs; returns
    (ok, first failing pair)."""
    dom = r.domain
    basis = [Mat3.basis(i, j, dom) for (i, j) in COORD_ORDER]
    images = [r.apply_numerator(x) for x in basis]
    lam_d = r.weight * r.den
    for a in range(9):
        for c in range(9):
            x, y = basis[a], basis[c]
            lhs = images[a] @ images[c]
            inner = (images[a] @ y) + (x @ images[c]) + (x @ y).scale(lam_d)
            rhs = r.apply_numerator(inner)
            if lhs != rhs:
                return False, (COORD_ORDER[a], COORD_ORDER[c])
    return True, None


def check_complement_identity(r, r_tilde):
    """R + R~ = -lambda Id, cross-multiplied through both denominators."""
    if r.weight != r_tilde.weight:
        return False
    dom = r.domain
    lam = r.weight
    for i in range(9):
        for j in range(9):
            lhs = r.matrix9[i][j] * r_tilde.den + r_tilde.matrix9[i][j] * r.den
            rhs = -(lam * r.den * r_tilde.den) if i == j else dom.zero()
            if lhs != rhs:
                return False
    return True


def rb_for_entry(entry, weight=None):
    """Splitting operator of a catalog entry, symbolic in the entry's
    parameters and (by default) in the weight."""
    if weight is None:
        ring = PolynomialRing(entry.params + (WEIGHT_VAR,))
        lam = ring.gen(WEIGHT_VAR)
        gens = [g.map_domain(ring) for g in entry.s_generators]
        comp = [g.map_domain(ring) for g in entry.complement.generators]
        constraints = entry.constraints.cast(ring).merged(ConstraintSet([lam]))
        from .matrices import span

        s = span(gens, constraints, ring)
        b = span(comp, constraints, ring)
        return splitting_rb(s, b, lam, entry.id)
    s, b = entry.specialize({p: 2 + i for i, p in enumerate(entry.params)}) \
        if entry.params else entry.specialize({})
    return splitting_rb(s, b, Fraction(weight), entry.id)


def rb_pair_for_entry(entry, weight=None):
    """Both complementary operators of an entry's decomposition."""
    r = rb_for_entry(entry, weight)
    if weight is None:
        ring = PolynomialRing(entry.params + (WEIGHT_VAR,))
        lam = ring.gen(WEIGHT_VAR)
        gens = [g.map_domain(ring) for g in entry.s_generators]
        comp = [g.map_domain(ring) for g in entry.complement.generators]
        constraints = entry.constraints.cast(ring).merged(ConstraintSet([lam]))
        from .matrices import span

        s = span(gens, constraints, ring)
        b = span(comp, constraints, ring)
        r_tilde = splitting_rb(b, s, lam, entry.id)
    else:
        s, b = entry.specialize({p: 2 + i for i, p in enumerate(entry.params)}) \
            if entry.params else entry.specialize({})
        r_tilde = splitting_rb(b, s, Fraction(weight), entry.id)
    return r, r_tilde
