"""Generator patterns for complements of each fixed subalgebra, and the
closure systems they induce.

A pattern describes candidate complements S of a fixed subalgebra M as a list
of generators, each a constant pivot matrix plus free parameters along
constant directions inside M (some patterns also include the identity matrix
as a generator).  Because the pivot parts complete any basis of M to a basis
of the full space, every pattern instance automatically satisfies the
direct-sum condition, and S being a subalgebra is equivalent to the vanishing
of the derived closure system: for each product of generators, the unique
candidate coefficients are read off by the dual functionals and the residual
must be zero in all nine coordinates.

Patterns whose cells are pinned to zero record the justification; only
division-free normalizations are pinned where completeness over prime fields
is claimed.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PatternMismatch
from .linalg import ff_inverse, kernel_basis
from .matrices import COORD_INDEX, Mat3
from .scalars import PolynomialRing

from .catalog import COMPLEMENTS


def _unit_vec(*positions):
    v = [Fraction(0)] * 9
    for (i, j) in positions:
        v[COORD_INDEX[(i, j)]] = Fraction(1)
    return v


def _affine_vec(positions):
    v = [Fraction(0)] * 9
    for item in positions:
        if len(item) == 2:
            i, j = item
            c = 1
        else:
            i, j, c = item
        v[COORD_INDEX[(i, j)]] += Fraction(c)
    return v


class PatternGen:
    __slots__ = ("base", "dirs")

    def __init__(self, base, dirs):
        self.base = base            # 9-vector of Fractions
        self.dirs = tuple(dirs)     # (param name, 9-vector) pairs


class PivotPattern:
    """A generator shape for candidate complements of a fixed subalgebra."""

    def __init__(self, name, theorem, complement_id, gens, include_identity,
                 fixed_zeros=""):
        self.name = name
        self.theorem = theorem
        self.complement_id = complement_id
        self.include_identity = include_identity
        self.gens = tuple(gens)
        self.fixed_zeros = fixed_zeros
        self.params = tuple(p for g in self.gens for (p, _) in g.dirs)
        if len(set(self.params)) != len(self.params):
            raise ValueError("duplicate cell names")
        self.ring = PolynomialRing(self.params)
        self._check_directions()
        self.functionals = self._compute_functionals()
        self._system_cache = {}

    # number of S generators including the identity when present
    @property
    def gen_count(self):
        return len(self.gens) + (1 if self.include_identity else 0)

    def _check_directions(self):
        comp = COMPLEMENTS[self.complement_id].subspace()
        for g in self.gens:
            for (p, vec) in g.dirs:
                if not comp.contains(Mat3.from_coords(vec)):
                    raise PatternMismatch(
                        f"direction for cell {p!r} lies outside the complement"
                    )

    def _compute_functionals(self):
        comp = COMPLEMENTS[self.complement_id]
        ann = kernel_basis([list(g.coords()) for g in comp.generators], 9)
        k = self.gen_count
        if len(ann) != k:
            raise PatternMismatch(
                f"complement annihilator has dimension {len(ann)}, expected {k}"
            )
        bases = self.base_rows()
        b_mat = [[sum(f[t] * base[t] for t in range(9)) for base in bases] for f in ann]
        try:
            numer, det = ff_inverse(b_mat)
        except Exception as exc:
            raise PatternMismatch(f"pivot parts do not complete a basis: {exc}") from exc
        funcs = []
        for j in range(k):
            row = [Fraction(0)] * 9
            for alpha in range(len(ann)):
                c = numer[j][alpha] / det
                for t in range(9):
                    row[t] += c * ann[alpha][t]
            funcs.append(row)
        return funcs

    def base_rows(self):
        rows = []
        if self.include_identity:
            rows.append(_unit_vec((1, 1), (2, 2), (3, 3)))
        rows.extend([list(g.base) for g in self.gens])
        return rows

    def symbolic_generators(self):
        """Generators over the cell ring (identity first when present)."""
        ring = self.ring
        out = []
        if self.include_identity:
            out.append(Mat3.identity(ring))
        for g in self.gens:
            coords = [ring.constant(x) for x in g.base]
            for (p, vec) in g.dirs:
                gen = ring.gen(p)
                coords = [c + gen * ring.constant(v) for c, v in zip(coords, vec)]
            out.append(Mat3.from_coords(coords, ring))
        return out

    def closure_system(self, pairs="all"):
        """The polynomial system whose vanishing is equivalent to closure of
        the span: coordinates of (product - coefficient combination) over all
        requested ordered generator pairs (products with the identity are
        trivially closed and skipped)."""
        if pairs in self._system_cache:
            return list(self._system_cache[pairs])
        gens = self.symbolic_generators()
        ring = self.ring
        start = 1 if self.include_identity else 0
        if pairs == "all":
            index_pairs = [
                (i, j)
                for i in range(start, len(gens))
                for j in range(start, len(gens))
            ]
        elif pairs == "squares":
            index_pairs = [(i, i) for i in range(start, len(gens))]
        else:
            raise ValueError("pairs must be 'all' or 'squares'")
        system = []
        seen = set()
        for (i, j) in index_pairs:
            prod = gens[i] @ gens[j]
            combo = [ring.zero()] * 9
            pc = prod.coords()
            for func, gen in zip(self.functionals, gens):
                coeff = ring.zero()
                for t in range(9):
                    if func[t]:
                        coeff = coeff + pc[t] * ring.constant(func[t])
                gc = gen.coords()
                combo = [cm + coeff * gcoord for cm, gcoord in zip(combo, gc)]
            for t in range(9):
                eq = pc[t] - combo[t]
                if not eq.is_zero() and eq not in seen:
                    seen.add(eq)
                    system.append(eq)
        self._system_cache[pairs] = tuple(system)
        return list(system)

    def cell_read_offsets(self):
        """Per generator, (param, coordinate index, inverse scale) triples
        that read each cell value off a pattern-normalized row."""
        out = []
        for g in self.gens:
            reads = []
            for idx, (p, vec) in enumerate(g.dirs):
                pos = None
                for t in range(9):
                    if vec[t] and all(
                        other_vec[t] == 0
                        for k, (q, other_vec) in enumerate(g.dirs)
                        if k != idx
                    ):
                        pos = t
                        scale = Fraction(1) / vec[t]
                        break
                if pos is None:
                    raise PatternMismatch(f"cell {p!r} has no private coordinate")
                reads.append((p, pos, scale))
            out.append(reads)
        return out

    def __repr__(self):
        return f"PivotPattern({self.name}, cells={len(self.params)})"


def derive_closure_system(pattern, pairs="all"):
    return pattern.closure_system(pairs)


# ---------------------------------------------------------------------------
# the eight theorem patterns
# ---------------------------------------------------------------------------

def _gen(base_positions, dirs):
    return PatternGen(
        _unit_vec(*base_positions),
        [(p, _affine_vec(spec)) for (p, spec) in dirs],
    )


def _build_patterns():
    pats = {}

    pats["t1"] = PivotPattern(
        "t1", 1, "M7",
        [
            _gen([(2, 1)], [("b", [(1, 2)]), ("c", [(1, 3)]), ("d", [(2, 2)]),
                            ("e", [(2, 3)]), ("f", [(3, 2)]), ("g", [(3, 3)])]),
            _gen([(3, 1)], [("q", [(1, 2)]), ("r", [(1, 3)]), ("s", [(2, 2)]),
                            ("t", [(2, 3)]), ("x", [(3, 2)]), ("y", [(3, 3)])]),
        ],
        include_identity=False,
        fixed_zeros="a = p = 0 (division-only normalization by the preserving family)",
    )

    pats["t2"] = PivotPattern(
        "t2", 2, "M6N",
        [
            _gen([(2, 1)], [("a", [(1, 2)]), ("b", [(1, 3)]), ("c", [(2, 2)]),
                            ("d", [(2, 3)]), ("e", [(3, 2)]), ("f", [(3, 3)])]),
            _gen([(3, 1)], [("r", [(1, 2)]), ("s", [(1, 3)]), ("t", [(2, 2)]),
                            ("u", [(2, 3)]), ("x", [(3, 2)]), ("y", [(3, 3)])]),
        ],
        include_identity=True,
        fixed_zeros="none (the e12-cell normalization needs a square root)",
    )

    pats["t3"] = PivotPattern(
        "t3", 3, "M6U",
        [
            _gen([(2, 1)], [("b", [(1, 2)]), ("c", [(1, 3)]), ("d", [(2, 2)]),
                            ("e", [(2, 3)]), ("f", [(3, 3)])]),
            _gen([(3, 1)], [("g", [(1, 1)]), ("h", [(1, 2)]), ("i", [(1, 3)]),
                            ("j", [(2, 2)]), ("k", [(2, 3)])]),
            _gen([(3, 2)], [("m", [(1, 1)]), ("n", [(1, 2)]), ("s", [(1, 3)]),
                            ("p", [(2, 2)]), ("q", [(2, 3)])]),
        ],
        include_identity=False,
        fixed_zeros="a = l = r = 0 (division-only normalization)",
    )

    pats["t4"] = PivotPattern(
        "t4", 4, "L5_4",
        [
            _gen([(2, 1)], [("b", [(1, 2)]), ("c", [(1, 3)]), ("d", [(2, 2)]),
                            ("e", [(2, 3)])]),
            _gen([(3, 1)], [("g", [(1, 1)]), ("h", [(1, 2)]), ("i", [(1, 3)]),
                            ("j", [(2, 2)]), ("k", [(2, 3)])]),
            _gen([(3, 2)], [("m", [(1, 1)]), ("n", [(1, 2)]), ("s", [(1, 3)]),
                            ("p", [(2, 2)]), ("q", [(2, 3)])]),
        ],
        include_identity=True,
        fixed_zeros="a = 0 (division-only normalization)",
    )

    pats["t4m2"] = PivotPattern(
        "t4m2", 4, "L5_5",
        [
            _gen([(2, 1)], [("a", [(1, 1)]), ("b", [(1, 2)]), ("c", [(1, 3)]),
                            ("d", [(2, 3)]), ("e", [(3, 3)])]),
            _gen([(3, 1)], [("g", [(1, 1)]), ("h", [(1, 2)]), ("i", [(1, 3)]),
                            ("j", [(2, 3)]), ("k", [(3, 3)])]),
            _gen([(3, 2)], [("m", [(1, 1)]), ("n", [(1, 2)]), ("s", [(1, 3)]),
                            ("p", [(2, 3)]), ("q", [(3, 3)])]),
        ],
        include_identity=True,
        fixed_zeros="none (shape adapted to the second complement)",
    )

    pats["t5"] = PivotPattern(
        "t5", 5, "L5_1",
        [
            _gen([(2, 1)], [("b", [(2, 2)]), ("c", [(2, 3)]), ("d", [(3, 2)]),
                            ("e", [(3, 3)])]),
            _gen([(3, 1)], [("g", [(1, 1)]), ("h", [(2, 2)]), ("i", [(2, 3)]),
                            ("j", [(3, 2)]), ("k", [(3, 3)])]),
            _gen([(1, 2)], [("n", [(2, 2)]), ("s", [(2, 3)]), ("p", [(3, 2)]),
                            ("q", [(3, 3)])]),
            _gen([(1, 3)], [("v", [(2, 2)]), ("x", [(2, 3)]), ("y", [(3, 2)]),
                            ("z", [(3, 3)])]),
        ],
        include_identity=False,
        fixed_zeros="a = m = u = 0 (up to the index swap, transpose and the preserving family)",
    )

    pats["t6"] = PivotPattern(
        "t6", 6, "L5_3",
        [
            _gen([(2, 1)], [("a", [(1, 1)]), ("b", [(1, 2)]), ("c", [(1, 3)]),
                            ("d", [(2, 2), (3, 3)])]),
            _gen([(3, 1)], [("g", [(1, 1)]), ("h", [(1, 2)]), ("i", [(1, 3)]),
                            ("j", [(2, 2), (3, 3)]), ("k", [(2, 3)])]),
            _gen([(3, 2)], [("m", [(1, 1)]), ("n", [(1, 2)]), ("s", [(1, 3)]),
                            ("p", [(2, 2), (3, 3)]), ("q", [(2, 3)])]),
            _gen([(3, 3)], [("u", [(1, 1)]), ("v", [(1, 2)]), ("x", [(1, 3)]),
                            ("y", [(2, 2), (3, 3)])]),
        ],
        include_identity=False,
        fixed_zeros="e = z = 0 (division-only normalization)",
    )

    pats["t7"] = PivotPattern(
        "t7", 7, "L5_2",
        [
            _gen([(2, 1)], [("b", [(1, 2)]), ("c", [(1, 3)]), ("d", [(2, 2)]),
                            ("e", [(3, 3)])]),
            _gen([(3, 1)], [("g", [(1, 1)]), ("h", [(1, 2)]), ("i", [(1, 3)]),
                            ("j", [(2, 2)]), ("k", [(3, 3)])]),
            _gen([(3, 2)], [("m", [(1, 1)]), ("n", [(1, 2)]), ("s", [(1, 3)]),
                            ("p", [(2, 2)]), ("q", [(3, 3)])]),
            _gen([(2, 3)], [("u", [(1, 1)]), ("v", [(1, 2)]), ("x", [(1, 3)]),
                            ("y", [(2, 2)]), ("z", [(3, 3)])]),
        ],
        include_identity=False,
        fixed_zeros="a = 0 (division-only normalization)",
    )

    pats["t8"] = PivotPattern(
        "t8", 8, "L5_6",
        [
            _gen([(2, 1)], [("a", [(1, 1), (3, 3)]), ("b", [(1, 2)]), ("c", [(1, 3)])]),
            _gen([(3, 1)], [("g", [(1, 1), (3, 3)]), ("h", [(1, 2)]), ("i", [(1, 3)]),
                            ("j", [(2, 2)]), ("k", [(2, 3)])]),
            _gen([(3, 2)], [("m", [(1, 1), (3, 3)]), ("n", [(1, 2)]), ("s", [(1, 3)]),
                            ("q", [(2, 3)])]),
            _gen([(3, 3)], [("u", [(1, 1), (3, 3)]), ("v", [(1, 2)]), ("x", [(1, 3)]),
                            ("y", [(2, 2)]), ("z", [(2, 3)])]),
        ],
        include_identity=False,
        fixed_zeros="d = e = p = 0 (division-only normalization)",
    )

    return pats


PATTERNS = _build_patterns()

PATTERN_ALIASES = {"7-2": "t1", "t4m1": "t4"}


def get_pattern(name):
    return PATTERNS[PATTERN_ALIASES.get(name, name)]


#: which catalog theorem feeds which pattern for coverage matching
PATTERN_THEOREM_ENTRIES = {
    "t1": ("R", None),
    "t2": ("S", None),
    "t3": ("T", None),
    "t4": ("U", "@M1"),
    "t4m2": ("U", "@M2"),
    "t5": ("V", None),
    "t6": ("X", None),
    "t7": ("Y", None),
    "t8": ("Z", None),
}


# ---------------------------------------------------------------------------
# printed reduced systems (fixtures for the derivation comparison)
# ---------------------------------------------------------------------------

#: each fixture: pattern name, substitutions applied to the derived system
#: (cell -> polynomial string), and the printed equations in the remaining
#: cells
REFERENCE_SYSTEMS = {
    "t1_reduced": {
        "pattern": "t1",
        "substitutions": {"b": "0", "c": "0", "q": "0", "r": "0"},
        "equations": [
            "f*(e-s)", "f*(g-x)", "t*(e-s)", "t*(g-x)",
            "f*t-e*g", "f*t-s*x",
            "g*(g-d)+f*(e-y)",
            "x*(d-x)+f*(y-s)",
            "s*(s-y)+t*(x-d)",
            "e*(y-e)+t*(d-g)",
            "d*(s-e)+e*x-g*s",
            "y*(g-x)+e*x-g*s",
        ],
    },
    "t2_system": {
        "pattern": "t2",
        "substitutions": {"a": "0"},
        "equations": [
            "e*(b-r)", "e*(d-t)", "e*(f-x)",
            "u*(b-r)", "u*(d-t)", "u*(f-x)",
            "b*x-f*r",
            "b+d*f-e*u", "r+t*x-e*u",
            "b*c-b*f+e*s", "r*c-r*x+e*s",
            "b*d-b*y+s*f", "r*t-r*y+s*x",
            "f*f-c*f+d*e-e*y", "x*x-c*x+t*e-e*y",
            "t*t-t*y+u*x-u*c-s", "d*d-d*y+u*f-u*c-s",
            "d*r+s*f-s*x-b*t",
            "r+d*x+c*t-b-f*t-c*d",
            "b+d*x+f*y-r-f*t-x*y",
        ],
    },
    "t3_squares": {
        "pattern": "t3",
        "substitutions": {},
        "pairs": "squares",
        "equations": [
            "b", "q",
            "f*(d-f)", "c*(d-f)", "e*f+c",
            "i-h*m", "h*m-k*f",
            "h*(j-n)", "k*h-c*k-h*s",
            "j*j-j*g-d*k-h*p", "k*(j-e-g)",
            "m*(m-p)", "s*(m-p)", "m*n+s",
        ],
    },
    "t6_radical": {
        "pattern": "t6",
        "substitutions": {
            "c": "0", "h": "0", "i": "0", "j": "0", "k": "0",
            "m": "0", "p": "0", "q": "0", "s": "0", "x": "0", "n": "g",
        },
        "equations": [
            "b*g", "d*g", "d*y", "g*u",
            "b*(u-y)", "y*(y+1)", "g*(y+1)", "u*(u-2*y-1)",
            "d*u-v*(y+1)", "a*(u-y)-d*u+v", "a*d-b*(u+1)",
        ],
    },
}


def reference_system(name):
    """The printed system as polynomials of its pattern's cell ring, plus the
    substitution equations that align it with the derived system."""
    rec = REFERENCE_SYSTEMS[name]
    pat = get_pattern(rec["pattern"])
    ring = pat.ring
    eqs = [ring.parse(s) for s in rec["equations"]]
    subs = [ring.gen(cell) - ring.parse(v) for cell, v in rec["substitutions"].items()]
    return pat, eqs, subs, rec.get("pairs", "all")
