"""Automorphism and antiautomorphism actions on the 3x3 matrix algebra.

A map is stored as a 9x9 coordinate matrix N together with a scalar
denominator d, acting as X -> (N X) / d in the fixed coordinate order.  This
uniform cleared-denominator form lets the parametric families be verified by
pure polynomial identities: multiplicativity of f = N/d amounts to

    d * N(xy) = N(x) N(y)        (reversed product for antiautomorphisms)

for all 81 ordered pairs of basis matrices.  A map that is multiplicative,
fixes the identity matrix and is nonzero is automatically bijective: its
kernel is a proper two-sided ideal of the full (simple) matrix algebra.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainMismatch, SingularMatrix
from .linalg import sc_is_zero
from .matrices import COORD_ORDER, Mat3, span
from .scalars import (
    EMPTY_CONSTRAINTS,
    ConstraintSet,
    MultiPoly,
    PolynomialRing,
    QQ,
    certified_nonzero,
)

AUTOMORPHISM = "automorphism"
ANTIAUTOMORPHISM = "antiautomorphism"


class AlgebraMap:
    """A linear map of the matrix algebra, tagged automorphism or
    antiautomorphism candidate."""

    __slots__ = ("matrix9", "den", "kind", "params", "constraints", "domain")

    def __init__(self, matrix9, den, kind, constraints=EMPTY_CONSTRAINTS, params=None, domain=QQ):
        self.matrix9 = tuple(tuple(row) for row in matrix9)
        self.den = den
        self.kind = kind
        self.constraints = constraints
        self.params = params
        self.domain = domain
        if not certified_nonzero(den, constraints):
            raise SingularMatrix(f"denominator {den} is not certifiably nonzero")

    # -- action ------------------------------------------------------------

    def image_numerator(self, m):
        """N applied to m's coordinates: d * map(m), fraction-free."""
        if m.domain != self.domain:
            raise DomainMismatch(f"{self.domain} vs {m.domain}")
        coords = m.coords()
        out = []
        for i in range(9):
            acc = self.domain.zero()
            for j in range(9):
                acc = acc + self.matrix9[i][j] * coords[j]
            out.append(acc)
        return Mat3.from_coords(out, self.domain)

    def image(self, m):
        """map(m) itself; requires an invertible denominator in the domain."""
        num = self.image_numerator(m)
        d = self.den
        if isinstance(d, MultiPoly):
            if not d.is_constant():
                raise DomainMismatch("parametric denominator: use image_numerator")
            d = d.constant_value()
        if isinstance(d, Fraction) or isinstance(d, int):
            return num.scale(Fraction(1, 1) / Fraction(d))
        return num.scale(d.inverse())

    def compose(self, other):
        """self after other: (self . other)(x) = self(other(x))."""
        if other.domain != self.domain:
            raise DomainMismatch(f"{self.domain} vs {other.domain}")
        prod = []
        for i in range(9):
            row = []
            for j in range(9):
                acc = self.domain.zero()
                for k in range(9):
                    acc = acc + self.matrix9[i][k] * other.matrix9[k][j]
                row.append(acc)
            prod.append(row)
        kind = AUTOMORPHISM if self.kind == other.kind else ANTIAUTOMORPHISM
        return AlgebraMap(
            prod,
            self.den * other.den,
            kind,
            self.constraints.merged(other.constraints),
            None,
            self.domain,
        )

    def __repr__(self):
        return f"AlgebraMap({self.kind}, den={self.den})"


def apply_map(m, s):
    """Span of the images of s's generators (denominator dropped: a global
    certified-nonzero rescaling never changes a span)."""
    images = [m.image_numerator(g) for g in s.generators]
    return span(images, s.constraints.merged(m.constraints), m.domain)


def preserves(m, s):
    """True when every generator image lies back in s.  Combined with
    is_algebra_map (which forces bijectivity) this certifies map(s) = s even
    for parametric maps whose image rank cannot be pivoted symbolically."""
    return all(s.contains(m.image_numerator(g)) for g in s.generators)


def is_algebra_map(m):
    """Check the 81 product identities (order reversed for antiautomorphism
    candidates), that the identity matrix is fixed, and that the map is
    nonzero.  Returns (ok, witness): witness is the first failing basis pair,
    or a short tag for the unital/nonzero checks."""
    dom = m.domain
    basis = [Mat3.basis(i, j, dom) for (i, j) in COORD_ORDER]
    if all(sc_is_zero(x) for row in m.matrix9 for x in row):
        return False, "zero map"
    # d * map(E) = N(E) must equal d * E
    ident = Mat3.identity(dom)
    lhs = m.image_numerator(ident)
    rhs = ident.scale(m.den)
    if lhs != rhs:
        return False, "identity not fixed"
    nums = [m.image_numerator(b) for b in basis]
    for a in range(9):
        for b in range(9):
            prod = basis[a] @ basis[b]
            lhs = m.image_numerator(prod).scale(m.den)
            if m.kind == ANTIAUTOMORPHISM:
                rhs = nums[b] @ nums[a]
            else:
                rhs = nums[a] @ nums[b]
            if lhs != rhs:
                return False, (COORD_ORDER[a], COORD_ORDER[b])
    return True, None


# ---------------------------------------------------------------------------
# concrete constructions
# ---------------------------------------------------------------------------

def transpose_map(domain=QQ):
    z, o = domain.zero(), domain.one()
    rows = [[z] * 9 for _ in range(9)]
    for k, (i, j) in enumerate(COORD_ORDER):
        rows[COORD_ORDER.index((j, i))][k] = o
    return AlgebraMap(rows, domain.one(), ANTIAUTOMORPHISM, EMPTY_CONSTRAINTS, None, domain)


def _det3(m):
    r = m.rows
    return (
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    )


def _adjugate3(m):
    r = m.rows
    cof = [
        [
            r[1][1] * r[2][2] - r[1][2] * r[2][1],
            -(r[1][0] * r[2][2] - r[1][2] * r[2][0]),
            r[1][0] * r[2][1] - r[1][1] * r[2][0],
        ],
        [
            -(r[0][1] * r[2][2] - r[0][2] * r[2][1]),
            r[0][0] * r[2][2] - r[0][2] * r[2][0],
            -(r[0][0] * r[2][1] - r[0][1] * r[2][0]),
        ],
        [
            r[0][1] * r[1][2] - r[0][2] * r[1][1],
            -(r[0][0] * r[1][2] - r[0][2] * r[1][0]),
            r[0][0] * r[1][1] - r[0][1] * r[1][0],
        ],
    ]
    # adjugate is the transposed cofactor matrix
    return Mat3(tuple(tuple(cof[j][i] for j in range(3)) for i in range(3)), m.domain)


def conjugation(t, constraints=EMPTY_CONSTRAINTS):
    """X -> T^-1 X T as a 9x9 map with denominator det(T)."""
    det = _det3(t)
    if not certified_nonzero(det, constraints):
        raise SingularMatrix(f"det {det} not certifiably nonzero")
    adj = _adjugate3(t)
    dom = t.domain
    cols = []
    for (i, j) in COORD_ORDER:
        image = adj @ Mat3.basis(i, j, dom) @ t
        cols.append(image.coords())
    rows = [[cols[j][i] for j in range(9)] for i in range(9)]
    return AlgebraMap(rows, det, AUTOMORPHISM, constraints, None, dom)


def theta(i, j, domain=QQ):
    """The index-swap automorphism: conjugation by e_ij + e_ji + e_kk."""
    k = ({1, 2, 3} - {i, j}).pop()
    t = Mat3.basis(i, j, domain) + Mat3.basis(j, i, domain) + Mat3.basis(k, k, domain)
    return conjugation(t)


# ---------------------------------------------------------------------------
# the parametric family preserving the 7-dimensional subalgebra
# ---------------------------------------------------------------------------

PHI_PARAM_NAMES = ("beta", "gamma", "kappa", "lamda", "mu", "nu")
PSI_PARAM_NAMES = ("alpha", "beta", "gamma", "delta", "epsilon")


def _phi_cleared_images(beta, gamma, kappa, lamda, mu, nu, domain):
    """The nine images of the family, each multiplied by Delta = kappa*nu -
    lamda*mu so that all entries are polynomial."""
    b, g, k, l, m, n = beta, gamma, kappa, lamda, mu, nu
    delta = k * n - l * m
    gm_bn = g * m - b * n   # the recurring 2x2 minor with beta/gamma
    bl_gk = b * l - g * k
    z = domain.zero()

    def M(rows):
        return Mat3(rows, domain)

    images = {
        (1, 1): M([[delta, delta * b, delta * g], [z, z, z], [z, z, z]]),
        (1, 2): M([[z, delta * k, delta * l], [z, z, z], [z, z, z]]),
        (1, 3): M([[z, delta * m, delta * n], [z, z, z], [z, z, z]]),
        (2, 2): M([[z, k * gm_bn, l * gm_bn], [z, k * n, l * n], [z, -(k * m), -(l * m)]]),
        (2, 3): M([[z, m * gm_bn, n * gm_bn], [z, m * n, n * n], [z, -(m * m), -(m * n)]]),
        (3, 2): M([[z, k * bl_gk, l * bl_gk], [z, -(k * l), -(l * l)], [z, k * k, k * l]]),
        (3, 3): M([[z, m * bl_gk, n * bl_gk], [z, -(l * m), -(l * n)], [z, k * m, k * n]]),
        (2, 1): M([[gm_bn, b * gm_bn, g * gm_bn], [n, b * n, g * n], [-m, -(b * m), -(g * m)]]),
        (3, 1): M([[bl_gk, b * bl_gk, g * bl_gk], [-l, -(b * l), -(g * l)], [k, b * k, g * k]]),
    }
    return images, delta


def _map_from_images(images, den, constraints, params, domain):
    cols = {src: images[src].coords() for src in images}
    rows = [[cols[COORD_ORDER[j]][i] for j in range(9)] for i in range(9)]
    return AlgebraMap(rows, den, AUTOMORPHISM, constraints, params, domain)


def phi_map(beta=None, gamma=None, kappa=None, lamda=None, mu=None, nu=None, domain=None):
    """The six-parameter automorphism family preserving
    Span{e11,e12,e13,e22,e23,e32,e33}; requires Delta = kappa*nu - lamda*mu
    nonzero.

    With no arguments the map is built symbolically over
    Q[beta,gamma,kappa,lamda,mu,nu] with the constraint Delta != 0.
    """
    if beta is None:
        ring = PolynomialRing(PHI_PARAM_NAMES)
        b, g, k, l, m, n = ring.gens()
        delta = k * n - l * m
        constraints = ConstraintSet([delta])
        images, den = _phi_cleared_images(b, g, k, l, m, n, ring)
        params = dict(zip(PHI_PARAM_NAMES, ring.gens()))
        return _map_from_images(images, den, constraints, params, ring)
    if domain is None:
        domain = QQ
    vals = [domain.coerce(x) for x in (beta, gamma, kappa, lamda, mu, nu)]
    images, den = _phi_cleared_images(*vals, domain)
    if sc_is_zero(den):
        raise SingularMatrix("Delta = kappa*nu - lamda*mu vanishes")
    params = dict(zip(PHI_PARAM_NAMES, vals))
    return _map_from_images(images, den, EMPTY_CONSTRAINTS, params, domain)


def psi_map(alpha=None, beta=None, gamma=None, delta=None, epsilon=None, domain=None):
    """The five-parameter automorphism family preserving the upper-triangular
    subalgebra: the previous family specialized to mu = 0 under the renaming
    (kappa, lamda, mu, nu) = (delta, epsilon, 0, alpha); requires alpha and
    delta nonzero."""
    if alpha is None:
        ring = PolynomialRing(PSI_PARAM_NAMES)
        a, b, g, d, e = ring.gens()
        constraints = ConstraintSet([a, d])
        images, den = _phi_cleared_images(b, g, d, e, ring.zero(), a, ring)
        params = dict(zip(PSI_PARAM_NAMES, ring.gens()))
        return _map_from_images(images, den, constraints, params, ring)
    if domain is None:
        domain = QQ
    a, b, g, d, e = [domain.coerce(x) for x in (alpha, beta, gamma, delta, epsilon)]
    if sc_is_zero(a) or sc_is_zero(d):
        raise SingularMatrix("alpha and delta must be nonzero")
    images, den = _phi_cleared_images(b, g, d, e, domain.zero(), a, domain)
    params = dict(zip(PSI_PARAM_NAMES, (a, b, g, d, e)))
    return _map_from_images(images, den, EMPTY_CONSTRAINTS, params, domain)


# ---------------------------------------------------------------------------
# the two rescaling identities used by the reductions
# ---------------------------------------------------------------------------

def rescaled_pair_images_72():
    """For generators with zero first row and the family taken with
    beta = gamma = lamda = mu = 0, the kappa- and nu-rescaled images have the
    fixed shape below.  Returns two (computed, claimed) pairs of cleared
    9-coordinate vectors; each pair must agree entry-by-entry.

    Cleared form: kappa * N(v1) against Delta * (claimed kappa*image), and
    likewise with nu for v2, where Delta = kappa*nu.
    """
    names = ("kappa", "nu", "d", "e", "f", "g", "s", "t", "x", "y")
    ring = PolynomialRing(names)
    k, n, d, e, f, g, s, t, x, y = ring.gens()
    z = ring.zero()
    images, den = _phi_cleared_images(z, z, k, z, z, n, ring)
    phi = _map_from_images(images, den, ConstraintSet([k, n]), None, ring)
    v1 = Mat3([[z, z, z], [ring.one(), d, e], [z, f, g]], ring)
    v2 = Mat3([[z, z, z], [z, s, t], [ring.one(), x, y]], ring)
    computed1 = phi.image_numerator(v1).scale(k)
    claimed1 = Mat3(
        [[z, z, z], [k * n, k * k * n * d, k * n * n * e], [z, k * k * k * f, k * k * n * g]],
        ring,
    )
    computed2 = phi.image_numerator(v2).scale(n)
    claimed2 = Mat3(
        [[z, z, z], [z, k * n * n * s, t * n * n * n], [k * n, k * k * n * x, k * n * n * y]],
        ring,
    )
    return (computed1, claimed1), (computed2, claimed2)


def rescaled_pair_images_63():
    """Same identity for the generator shape of the (6,3) reduction (first
    rows carrying two free coordinates)."""
    names = ("kappa", "nu", "a", "b", "c", "d", "e", "f", "r", "s", "t", "u", "x", "y")
    ring = PolynomialRing(names)
    k, n, a, b, c, d, e, f, r, s, t, u, x, y = ring.gens()
    z, o = ring.zero(), ring.one()
    images, den = _phi_cleared_images(z, z, k, z, z, n, ring)
    phi = _map_from_images(images, den, ConstraintSet([k, n]), None, ring)
    v1 = Mat3([[z, a, b], [o, c, d], [z, e, f]], ring)
    v2 = Mat3([[z, r, s], [z, t, u], [o, x, y]], ring)
    computed1 = phi.image_numerator(v1).scale(k)
    claimed1 = Mat3(
        [
            [z, k * k * k * n * a, k * k * n * n * b],
            [k * n, k * k * n * c, k * n * n * d],
            [z, k * k * k * e, k * k * n * f],
        ],
        ring,
    )
    computed2 = phi.image_numerator(v2).scale(n)
    claimed2 = Mat3(
        [
            [z, k * k * n * n * r, k * n * n * n * s],
            [z, k * n * n * t, n * n * n * u],
            [k * n, k * k * n * x, k * n * n * y],
        ],
        ring,
    )
    return (computed1, claimed1), (computed2, claimed2)
