"""Constraint-aware exact linear algebra over rationals, prime fields, and
parametric polynomials.

Everything here is division-free at the core: rows are combined by
cross-multiplication with pivots that are *certified* nonzero (a nonzero
field element, or a polynomial that is a unit multiple of a product of the
declared nonzero constraint polynomials).  Ranks computed this way are valid
for every parameter specialization satisfying the constraints; when no
certified pivot exists among nonzero entries the computation refuses with
UndecidedPivot rather than guessing.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SingularMatrix, UndecidedPivot
from .scalars import (
    EMPTY_CONSTRAINTS,
    FpElem,
    MultiPoly,
    certified_nonzero,
    QQ,
)


def sc_is_zero(x):
    if isinstance(x, MultiPoly):
        return x.is_zero()
    if isinstance(x, FpElem):
        return x.value == 0
    return x == 0


def _normalize_row(row):
    """Divide a row by its rational content and fix the sign of its leading
    nonzero entry (leading coefficient positive for polynomials)."""
    lead = None
    for x in row:
        if not sc_is_zero(x):
            lead = x
            break
    if lead is None:
        return row
    if isinstance(lead, FpElem):
        inv = lead.inverse()
        return [x * inv for x in row]
    if isinstance(lead, Fraction):
        num = 0
        den = 1
        for x in row:
            num = _gcd(num, abs(x.numerator))
            den = _lcm(den, x.denominator)
        c = Fraction(num, den)
        if lead < 0:
            c = -c
        return [x / c for x in row]
    # polynomial row: numeric content only, sign from lex-leading coefficient
    num = 0
    den = 1
    for x in row:
        for coeff in x.terms.values():
            num = _gcd(num, abs(coeff.numerator))
            den = _lcm(den, coeff.denominator)
    c = Fraction(num, den)
    if lead.leading()[1] < 0:
        c = -c
    inv = 1 / c
    return [x * inv for x in row]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _lcm(a, b):
    return a * b // _gcd(a, b)


def _eliminate(row, piv_row, col, constraints):
    """Cross-multiplied elimination of row's entry in the pivot column.

    row := piv * row - row[col] * piv_row, which rescales row by a certified
    nonzero factor and therefore never changes zero/nonzero status of the
    residual under any constraint-satisfying specialization.
    """
    c = row[col]
    if sc_is_zero(c):
        return row
    piv = piv_row[col]
    return _normalize_row([piv * x - c * y for x, y in zip(row, piv_row)])


class Echelon:
    """Row echelon data for a list of coordinate rows."""

    __slots__ = ("rows", "pivot_cols", "certificates")

    def __init__(self, rows, pivot_cols, certificates):
        self.rows = rows
        self.pivot_cols = pivot_cols
        self.certificates = certificates

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, row, constraints=EMPTY_CONSTRAINTS):
        """Residual of a row against the echelon; the residual is identically
        zero exactly when the row lies in the span for every
        constraint-satisfying specialization.

        Rows are rescaled by certified pivots along the way, so this is a
        membership test, not a linear projection.
        """
        row = list(row)
        for erow, col in zip(self.rows, self.pivot_cols):
            row = _eliminate(row, erow, col, constraints)
        return row

    def project_field(self, row):
        """Linear projection killing the pivot coordinates (field scalars
        only): row minus its echelon-span component."""
        row = list(row)
        for erow, col in zip(self.rows, self.pivot_cols):
            c = row[col]
            if not sc_is_zero(c):
                f = _field_div(c, erow[col])
                row = [x - f * y for x, y in zip(row, erow)]
        return row


def echelonize(rows, constraints=EMPTY_CONSTRAINTS):
    """Bring rows to a fully reduced, content-normalized echelon form.

    Pivots are chosen leftmost among certified-nonzero entries.  Raises
    UndecidedPivot when a nonzero row offers no certified entry.
    """
    ech_rows = []
    pivot_cols = []
    certificates = []
    for row in rows:
        row = list(row)
        for erow, col in zip(ech_rows, pivot_cols):
            row = _eliminate(row, erow, col, constraints)
        if all(sc_is_zero(x) for x in row):
            continue
        pick = None
        for j, x in enumerate(row):
            if sc_is_zero(x):
                continue
            if certified_nonzero(x, constraints):
                pick = j
                break
        if pick is None:
            raise UndecidedPivot([x for x in row if not sc_is_zero(x)])
        # keep echelon sorted by pivot column, reducing earlier rows too
        ech_rows.append(row)
        pivot_cols.append(pick)
        certificates.append(row[pick])
        order = sorted(range(len(pivot_cols)), key=lambda i: pivot_cols[i])
        ech_rows = [ech_rows[i] for i in order]
        pivot_cols = [pivot_cols[i] for i in order]
        certificates = [certificates[i] for i in order]
    # fully reduce: each pivot column must vanish in every other row, or a
    # later single-pass residual reduction could reintroduce cleared columns
    for i in range(len(ech_rows)):
        for k in range(len(ech_rows)):
            if k != i:
                ech_rows[k] = _eliminate(ech_rows[k], ech_rows[i], pivot_cols[i], constraints)
    ech_rows = [_normalize_row(r) for r in ech_rows]
    certificates = [r[c] for r, c in zip(ech_rows, pivot_cols)]
    return Echelon(ech_rows, pivot_cols, certificates)


def ff_rank(rows, constraints=EMPTY_CONSTRAINTS):
    """Rank of the row span, valid for every constraint-satisfying
    specialization, together with the pivot certificates used."""
    ech = echelonize(rows, constraints)
    return ech.rank, list(ech.certificates)


def ff_inverse(matrix, constraints=EMPTY_CONSTRAINTS, domain=QQ):
    """Fraction-free Gauss-Jordan inverse.

    Returns (N, d) with matrix^-1 = N / d; every intermediate entry is a
    minor of the input (Bareiss one-step divisions are exact).  Pivots are
    searched downward in each column and must be certified nonzero.
    """
    n = len(matrix)
    one = domain.one()
    zero = domain.zero()
    aug = []
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise ValueError("square matrix required")
        aug.append(list(row) + [one if j == i else zero for j in range(n)])
    prev = one
    for k in range(n):
        pick = None
        fallback = None
        for r in range(k, n):
            x = aug[r][k]
            if sc_is_zero(x):
                continue
            if certified_nonzero(x, constraints):
                pick = r
                break
            if fallback is None:
                fallback = x
        if pick is None:
            if fallback is None:
                raise SingularMatrix("matrix has no certified inverse (zero column)")
            raise UndecidedPivot([fallback])
        if pick != k:
            aug[k], aug[pick] = aug[pick], aug[k]
        piv = aug[k][k]
        for i in range(n):
            if i == k:
                continue
            factor = aug[i][k]
            new_row = []
            for j in range(2 * n):
                if j == k:
                    new_row.append(zero)
                    continue
                val = piv * aug[i][j] - factor * aug[k][j]
                new_row.append(_exact_div(val, prev))
            aug[i] = new_row
        prev = piv
    det = aug[n - 1][n - 1]
    numer = [row[n:] for row in aug]
    return numer, det


def _field_div(a, b):
    if isinstance(a, FpElem) or isinstance(b, FpElem):
        return a * b.inverse()
    return Fraction(a) / Fraction(b)


def solve_linear(a_rows, rhs):
    """One exact solution of A c = rhs over a field (free unknowns set to 0),
    or None when inconsistent."""
    n = len(a_rows[0]) if a_rows else 0
    aug = [list(row) + [r] for row, r in zip(a_rows, rhs)]
    ech = echelonize(aug)
    zero = rhs[0] - rhs[0] if rhs else Fraction(0)
    sol = [zero] * n
    if n in ech.pivot_cols:
        return None
    # rows are fully reduced, so with free unknowns at zero each pivot
    # unknown reads off directly
    for row, col in zip(ech.rows, ech.pivot_cols):
        sol[col] = _field_div(row[n], row[col])
    return sol


def kernel_basis(a_rows, n, domain=QQ):
    """Basis of {c : A c = 0} over a field, for a matrix given as rows of
    length n.  Relies on echelonize producing fully reduced rows."""
    ech = echelonize([list(r) for r in a_rows]) if a_rows else Echelon([], [], [])
    pivots = set(ech.pivot_cols)
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        vec = [domain.zero()] * n
        vec[free] = domain.one()
        for row, col in zip(ech.rows, ech.pivot_cols):
            if not sc_is_zero(row[free]):
                vec[col] = -_field_div(row[free], row[col])
        basis.append(vec)
    return basis


def _exact_div(a, b):
    if isinstance(a, MultiPoly):
        if a.is_zero():
            return a
        if isinstance(b, (int, Fraction)):
            return a if b == 1 else a * (Fraction(1) / Fraction(b))
        if b.is_constant():
            return a * (Fraction(1) / b.constant_value())
        return a.exact_divide(b)
    if isinstance(a, FpElem):
        inv = b.inverse() if isinstance(b, FpElem) else FpElem(b, a.p).inverse()
        return a * inv
    if isinstance(b, MultiPoly):
        return a / b.constant_value()
    return a / Fraction(b)
