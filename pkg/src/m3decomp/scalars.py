"""Exact scalar domains: rationals, prime fields, and sparse multivariate
polynomials with rational coefficients.

Three scalar kinds appear throughout the package:

  Fraction   -- arbitrary-precision rationals (the stand-in for the complex
                base field at desk scale),
  FpElem     -- elements of a prime field F_p,
  MultiPoly  -- sparse polynomials over Q in a fixed ordered variable list,
                represented as  {exponent tuple: Fraction coefficient}.

A polynomial never stores zero coefficients, and every exponent tuple has one
entry per ring variable.  Monomials are ordered lexicographically on the fixed
variable order, which makes leading terms, exact division, and printed
certificates deterministic.

The text grammar for polynomials (used by catalog files) is

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := integer | identifier | '(' expr ')'
    identifier := [a-z][a-z0-9]*

with no division and insignificant whitespace.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import DomainMismatch, MissingVariable, ParseError


# ---------------------------------------------------------------------------
# domains
# ---------------------------------------------------------------------------

class RationalField:
    """The field Q with Fraction elements."""

    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise DomainMismatch(f"cannot coerce {x!r} into Q")

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


class FpElem:
    """An element of the prime field F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _check(self, other):
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise DomainMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElem(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElem(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElem(v - self.value, self.p)

    def __mul__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElem(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(-self.value, self.p)

    def __pow__(self, n):
        return FpElem(pow(self.value, n, self.p), self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FpElem(pow(self.value, self.p - 2, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"{self.value}"


class PrimeField:
    """The prime field F_p as a domain object."""

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(math.isqrt(p)) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def zero(self):
        return FpElem(0, self.p)

    def one(self):
        return FpElem(1, self.p)

    def from_int(self, n):
        return FpElem(n, self.p)

    def coerce(self, x):
        if isinstance(x, FpElem):
            if x.p != self.p:
                raise DomainMismatch(f"F_{x.p} element in F_{self.p}")
            return x
        if isinstance(x, int):
            return FpElem(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DomainMismatch(f"denominator of {x} vanishes mod {self.p}")
            return FpElem(x.numerator, self.p) * FpElem(x.denominator, self.p).inverse()
        raise DomainMismatch(f"cannot coerce {x!r} into F_{self.p}")

    def elements(self):
        return [FpElem(v, self.p) for v in range(self.p)]

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


_GF_CACHE = {}


def GF(p):
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


# ---------------------------------------------------------------------------
# multivariate polynomials
# ---------------------------------------------------------------------------

_IDENT_RE = re.compile(r"[a-z][a-z0-9]*")


class PolynomialRing:
    """Q[x1,...,xn] for a fixed ordered tuple of variable names."""

    characteristic = 0

    def __init__(self, names):
        names = tuple(names)
        for n in names:
            if not _IDENT_RE.fullmatch(n):
                raise ValueError(f"invalid variable name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self._zero_exp = (0,) * len(names)

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return MultiPoly(self, {self._zero_exp: Fraction(1)})

    def from_int(self, n):
        return self.constant(Fraction(n))

    def constant(self, c):
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return MultiPoly(self, {self._zero_exp: c})

    def gen(self, name):
        i = self.names.index(name)
        exp = [0] * len(self.names)
        exp[i] = 1
        return MultiPoly(self, {tuple(exp): Fraction(1)})

    def gens(self):
        return tuple(self.gen(n) for n in self.names)

    def coerce(self, x):
        if isinstance(x, MultiPoly):
            if x.ring.names == self.names:
                return x
            return x.cast(self)
        if isinstance(x, (int, Fraction)):
            return self.constant(x)
        raise DomainMismatch(f"cannot coerce {x!r} into {self!r}")

    def parse(self, text):
        return parse_poly(text, self)

    def __repr__(self):
        return "QQ[" + ",".join(self.names) + "]"

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.names == self.names

    def __hash__(self):
        return hash(("ring", self.names))


class MultiPoly:
    """A sparse multivariate polynomial over Q.

    Immutable after construction; arithmetic returns fresh objects.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash = None

    # -- basic queries ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def variables_used(self):
        used = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(self.ring.names[i])
        return used

    def leading(self):
        """Leading (exponent, coefficient) in lex order on the ring's names."""
        exp = max(self.terms)
        return exp, self.terms[exp]

    # -- arithmetic -------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, MultiPoly):
            if other.ring.names != self.ring.names:
                raise DomainMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return MultiPoly(self.ring, out)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __pow__(self, n):
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring.names == other.ring.names and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    # -- structure --------------------------------------------------------

    def cast(self, new_ring):
        """Re-express in a ring whose variables include all used here."""
        pos = {}
        for i, n in enumerate(self.ring.names):
            if n in new_ring.names:
                pos[i] = new_ring.names.index(n)
        out = {}
        for exp, c in self.terms.items():
            new_exp = [0] * len(new_ring.names)
            for i, e in enumerate(exp):
                if e:
                    if i not in pos:
                        raise DomainMismatch(
                            f"variable {self.ring.names[i]!r} absent from {new_ring}"
                        )
                    new_exp[pos[i]] = e
            key = tuple(new_exp)
            out[key] = out.get(key, Fraction(0)) + c
        return MultiPoly(new_ring, out)

    def content_and_primitive(self):
        """Rational content c > 0 and the primitive part p with self = c*p.

        The content is numeric only (gcd of numerators over lcm of
        denominators); multivariate polynomial gcds are deliberately out of
        scope.
        """
        if not self.terms:
            return Fraction(1), self
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        content = Fraction(num, den)
        prim = MultiPoly(self.ring, {e: c / content for e, c in self.terms.items()})
        return content, prim

    def exact_divide(self, divisor):
        """Return q with self = q * divisor, or raise ValueError.

        Long division by the lex-leading term of the divisor; this is exact
        whenever the divisor divides self (the only way it is used here).
        """
        if not isinstance(divisor, MultiPoly) or divisor.ring.names != self.ring.names:
            divisor = self._coerce_other(divisor)
        if divisor is None or divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        d_exp, d_coeff = divisor.leading()
        rem = self
        q_terms = {}
        while not rem.is_zero():
            r_exp, r_coeff = rem.leading()
            q_exp = tuple(a - b for a, b in zip(r_exp, d_exp))
            if any(e < 0 for e in q_exp):
                raise ValueError(f"{divisor} does not divide {self}")
            q_coeff = r_coeff / d_coeff
            q_terms[q_exp] = q_terms.get(q_exp, Fraction(0)) + q_coeff
            mono = MultiPoly(self.ring, {q_exp: q_coeff})
            rem = rem - mono * divisor
        return MultiPoly(self.ring, q_terms)

    def divides(self, other):
        try:
            other.exact_divide(self)
            return True
        except (ValueError, ZeroDivisionError):
            return False

    def eval(self, assignment, domain=QQ):
        """Substitute scalars for every variable; a ring homomorphism into
        the target domain."""
        vals = []
        for n in self.ring.names:
            if n not in assignment:
                # variables that never occur may stay unassigned
                vals.append(None)
            else:
                vals.append(domain.coerce(assignment[n]))
        total = domain.zero()
        for exp, coeff in self.terms.items():
            term = domain.coerce(coeff)
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                if vals[i] is None:
                    raise MissingVariable(self.ring.names[i])
                term = term * vals[i] ** e
            total = total + term
        return total

    def substitute(self, assignment):
        """Partially substitute rationals for some variables, staying in the
        same ring."""
        out = self.ring.zero()
        for exp, coeff in self.terms.items():
            term = self.ring.constant(coeff)
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                name = self.ring.names[i]
                if name in assignment:
                    term = term * self.ring.constant(assignment[name]) ** e
                else:
                    term = term * self.ring.gen(name) ** e
            out = out + term
        return out

    # -- printing ---------------------------------------------------------

    def __repr__(self):
        return poly_to_string(self)


# ---------------------------------------------------------------------------
# constraints
# ---------------------------------------------------------------------------

class ConstraintSet:
    """Parameter side conditions: polynomials required nonzero, plus pairs of
    which at least one member must be nonzero."""

    __slots__ = ("nonzero", "not_both_zero")

    def __init__(self, nonzero=(), not_both_zero=()):
        self.nonzero = tuple(nonzero)
        self.not_both_zero = tuple(tuple(pair) for pair in not_both_zero)
        for p in self.nonzero:
            if isinstance(p, MultiPoly) and p.is_zero():
                raise ValueError("identically zero polynomial in nonzero list")

    def is_empty(self):
        return not self.nonzero and not self.not_both_zero

    def merged(self, other):
        seen = list(self.nonzero)
        for p in other.nonzero:
            if p not in seen:
                seen.append(p)
        pairs = list(self.not_both_zero)
        for pair in other.not_both_zero:
            if pair not in pairs:
                pairs.append(pair)
        return ConstraintSet(seen, pairs)

    def cast(self, ring):
        return ConstraintSet(
            tuple(p.cast(ring) for p in self.nonzero),
            tuple((a.cast(ring), b.cast(ring)) for a, b in self.not_both_zero),
        )

    def __repr__(self):
        parts = [f"{p} != 0" for p in self.nonzero]
        parts += [f"({a},{b}) != (0,0)" for a, b in self.not_both_zero]
        return "{" + ", ".join(parts) + "}" if parts else "{}"

    def __eq__(self, other):
        return (
            isinstance(other, ConstraintSet)
            and self.nonzero == other.nonzero
            and self.not_both_zero == other.not_both_zero
        )


EMPTY_CONSTRAINTS = ConstraintSet()


def poly_eval(p, assignment, domain=QQ):
    """Evaluate p at the assignment (must cover all variables of p)."""
    return p.eval(assignment, domain)


def constraint_satisfied(constraints, assignment, domain=QQ):
    """True iff every nonzero polynomial evaluates nonzero and every
    not-both-zero pair has a nonzero member."""
    zero = domain.zero()
    for p in constraints.nonzero:
        if poly_eval(p, assignment, domain) == zero:
            return False
    for a, b in constraints.not_both_zero:
        if poly_eval(a, assignment, domain) == zero and poly_eval(b, assignment, domain) == zero:
            return False
    return True


def certified_nonzero(scalar, constraints=EMPTY_CONSTRAINTS):
    """Syntactic nonvanishing certificate.

    Field elements certify by being nonzero.  A polynomial certifies when it
    is a nonzero rational multiple of a product of powers of the declared
    nonzero constraint polynomials -- decidable by greedy exact division.
    Membership failures are reported as False, never as a wrong answer.
    """
    if isinstance(scalar, (Fraction, int)):
        return scalar != 0
    if isinstance(scalar, FpElem):
        return scalar.value != 0
    if isinstance(scalar, MultiPoly):
        if scalar.is_zero():
            return False
        _, p = scalar.content_and_primitive()
        progress = True
        while not p.is_constant() and progress:
            progress = False
            for q in constraints.nonzero:
                qc = q if q.ring.names == p.ring.names else q.cast(p.ring)
                if qc.is_constant():
                    continue
                try:
                    p = p.exact_divide(qc)
                    progress = True
                    break
                except (ValueError, ZeroDivisionError):
                    continue
        return p.is_constant() and p.constant_value() != 0
    raise DomainMismatch(f"unknown scalar {scalar!r}")


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[a-z][a-z0-9]*)|(?P<op>[-+*()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", column=pos)
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), pos))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), pos))
        else:
            tokens.append(("op", m.group("op"), pos))
        pos = m.end()
    return tokens


def parse_poly(text, ring):
    """Parse grammar text into a polynomial of the given ring."""
    tokens = _tokenize(text)
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else ("end", None, len(text))

    def advance():
        nonlocal idx
        tok = peek()
        idx += 1
        return tok

    def parse_expr():
        kind, val, pos = peek()
        negate = False
        if kind == "op" and val == "-":
            advance()
            negate = True
        result = parse_term()
        if negate:
            result = -result
        while True:
            kind, val, pos = peek()
            if kind == "op" and val in "+-":
                advance()
                rhs = parse_term()
                result = result + rhs if val == "+" else result - rhs
            else:
                return result

    def parse_term():
        result = parse_factor()
        while True:
            kind, val, pos = peek()
            if kind == "op" and val == "*":
                advance()
                result = result * parse_factor()
            else:
                return result

    def parse_factor():
        kind, val, pos = advance()
        if kind == "int":
            return ring.from_int(val)
        if kind == "ident":
            if val not in ring.names:
                raise ParseError(f"unknown parameter {val!r}", column=pos)
            return ring.gen(val)
        if kind == "op" and val == "(":
            inner = parse_expr()
            kind, val, pos = advance()
            if not (kind == "op" and val == ")"):
                raise ParseError("expected ')'", column=pos)
            return inner
        raise ParseError(f"unexpected token {val!r}", column=pos)

    result = parse_expr()
    kind, val, pos = peek()
    if kind != "end":
        raise ParseError(f"trailing input at {val!r}", column=pos)
    return result


def poly_to_string(p):
    """Deterministic grammar-conforming rendering (integer coefficients)."""
    if not isinstance(p, MultiPoly):
        return str(p)
    if p.is_zero():
        return "0"
    pieces = []
    for exp in sorted(p.terms, reverse=True):
        coeff = p.terms[exp]
        if coeff.denominator != 1:
            raise ValueError(f"non-integer coefficient {coeff} is outside the grammar")
        factors = []
        for name, e in zip(p.ring.names, exp):
            factors.extend([name] * e)
        mag = abs(coeff.numerator)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not pieces:
            pieces.append(body if coeff > 0 else "-" + body)
        else:
            pieces.append(("+" if coeff > 0 else "-") + body)
    return "".join(pieces)
