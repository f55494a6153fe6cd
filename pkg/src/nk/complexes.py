"""
Bounded based free chain complexes over Z, Z[z,z^-1], and the rational
subring S^-1 Z[z,z^-1].

A complex is a degree range [lo, hi], a rank per degree, and one
differential matrix per degree i in (lo, hi] mapping degree i to i-1
(one column per degree-i basis element, one row per degree-(i-1) basis
element).  d o d = 0 is checked exactly at construction: there is no way
to hold an invalid complex.

Integral homology splits each H_i as Z^b_i (+) torsion via Smith normal
forms of the adjacent differentials; the Morse inequality lower bound in
degree i is b_i + q_i + q_{i-1} with q counting torsion generators.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .rings import LaurentPoly, RationalFunction
from .linalg import (
    Matrix,
    matmul,
    matrix_from_json,
    matrix_to_json,
    rank_int,
    smith_normal_form_int,
)


class Grade(enum.Enum):
    """Coefficient ring of a complex, ordered by widening."""

    Z = "Z"
    LAURENT = "laurent"
    RATIONAL = "rational"

    def __repr__(self):
        return f"Grade.{self.name}"


_WIDENING = {Grade.Z: 0, Grade.LAURENT: 1, Grade.RATIONAL: 2}


class NotAComplex(Exception):
    """d o d != 0; carries the lowest offending degree and the product."""

    def __init__(self, degree, product=None):
        super().__init__(f"d o d != 0 at degree {degree}")
        self.degree = degree
        self.product = product


class NarrowingNotSupported(Exception):
    """Base change only widens Z -> Laurent -> Rational."""


def _entry_ok(e, grade):
    if isinstance(e, bool):
        return False
    if grade is Grade.Z:
        return isinstance(e, int)
    if grade is Grade.LAURENT:
        return isinstance(e, (int, LaurentPoly))
    return isinstance(e, (int, LaurentPoly, RationalFunction))


class BasedChainComplex:
    """Bounded based f.g. free chain complex; validated on construction."""

    __slots__ = ("grade", "lo", "hi", "ranks", "differentials")

    def __init__(self, grade, lo, hi, ranks, differentials):
        if hi < lo:
            raise ValueError("degree range is empty")
        ranks = tuple(int(r) for r in ranks)
        if len(ranks) != hi - lo + 1 or any(r < 0 for r in ranks):
            raise ValueError("ranks must list one count per degree in [lo, hi]")
        diffs = {}
        for i in range(lo + 1, hi + 1):
            d = differentials.get(i)
            if d is None:
                d = Matrix.zeros(ranks[i - 1 - lo], ranks[i - lo])
            if (d.rows, d.cols) != (ranks[i - 1 - lo], ranks[i - lo]):
                raise ValueError(
                    f"differential at degree {i} is {d.rows}x{d.cols}, "
                    f"expected {ranks[i - 1 - lo]}x{ranks[i - lo]}")
            if not all(_entry_ok(e, grade) for row in d.entries for e in row):
                raise ValueError(f"differential at degree {i} has entries "
                                 f"outside grade {grade.value}")
            diffs[i] = d
        extra = set(differentials) - set(diffs)
        if extra:
            raise ValueError(f"differentials at degrees {sorted(extra)} "
                             f"outside (lo, hi]")
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "differentials", diffs)
        bad = validate_complex(self)
        if bad is not None:
            raise NotAComplex(*bad)

    def __setattr__(self, *a):
        raise AttributeError("BasedChainComplex is immutable")

    def rank(self, i):
        if self.lo <= i <= self.hi:
            return self.ranks[i - self.lo]
        return 0

    def differential(self, i):
        """The matrix of d: C_i -> C_{i-1} (zero-shaped outside range)."""
        d = self.differentials.get(i)
        if d is None:
            d = Matrix.zeros(self.rank(i - 1), self.rank(i))
        return d

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def __eq__(self, other):
        if not isinstance(other, BasedChainComplex):
            return NotImplemented
        return (self.grade, self.lo, self.hi, self.ranks, self.differentials) == \
               (other.grade, other.lo, other.hi, other.ranks, other.differentials)

    def __hash__(self):
        return hash((self.grade, self.lo, self.hi, self.ranks,
                     tuple(sorted(self.differentials.items()))))

    def __repr__(self):
        return (f"BasedChainComplex({self.grade.value}, degrees "
                f"[{self.lo},{self.hi}], ranks {list(self.ranks)})")

    def to_json(self):
        return {
            "lo": self.lo,
            "hi": self.hi,
            "ranks": list(self.ranks),
            "differentials": {str(i): matrix_to_json(d)
                              for i, d in sorted(self.differentials.items())},
        }

    @classmethod
    def from_json(cls, obj, grade=None):
        lo, hi = int(obj["lo"]), int(obj["hi"])
        ranks = [int(r) for r in obj["ranks"]]
        diffs = {int(i): matrix_from_json(d,
                                          rows=ranks[int(i) - 1 - lo],
                                          cols=ranks[int(i) - lo])
                 for i, d in obj.get("differentials", {}).items()}
        if grade is None:
            laurent = any(isinstance(e, LaurentPoly)
                          for d in diffs.values()
                          for row in d.entries for e in row)
            grade = Grade.LAURENT if laurent else Grade.Z
        return cls(grade, lo, hi, ranks, diffs)


def validate_complex(c: BasedChainComplex):
    """None when d o d = 0 in every degree; else (degree, product matrix)
    for the lowest degree i with d_{i-1} o d_i != 0."""
    for i in range(c.lo + 2, c.hi + 1):
        prod = matmul(c.differential(i - 1), c.differential(i))
        if not prod.is_zero:
            return (i, prod)
    return None


@dataclass(frozen=True)
class ChainMap:
    """A degree-preserving map of complexes commuting with d, exactly."""

    source: BasedChainComplex
    target: BasedChainComplex
    components: dict

    def __post_init__(self):
        if self.source.grade is not self.target.grade:
            raise ValueError("chain map between different grades")
        comps = {}
        for i in range(min(self.source.lo, self.target.lo),
                       max(self.source.hi, self.target.hi) + 1):
            f = self.components.get(i)
            if f is None:
                f = Matrix.zeros(self.target.rank(i), self.source.rank(i))
            if (f.rows, f.cols) != (self.target.rank(i), self.source.rank(i)):
                raise ValueError(f"component at degree {i} has wrong shape")
            comps[i] = f
        object.__setattr__(self, "components", comps)
        for i in range(min(self.source.lo, self.target.lo) + 1,
                       max(self.source.hi, self.target.hi) + 1):
            lhs = matmul(self.target.differential(i), self.component(i))
            rhs = matmul(self.component(i - 1), self.source.differential(i))
            if lhs != rhs:
                raise ValueError(f"does not commute with d at degree {i}")

    def component(self, i):
        f = self.components.get(i)
        if f is None:
            f = Matrix.zeros(self.target.rank(i), self.source.rank(i))
        return f


def identity_chain_map(c: BasedChainComplex) -> ChainMap:
    return ChainMap(c, c, {i: Matrix.identity(c.rank(i)) for i in c.degrees()})


def mapping_cone(f: ChainMap) -> BasedChainComplex:
    """cone(f)_i = source_{i-1} (+) target_i with differential
    [[-d_source, 0], [f, d_target]] (shifted source listed first)."""
    s, t = f.source, f.target
    lo = min(s.lo + 1, t.lo)
    hi = max(s.hi + 1, t.hi)
    ranks = [s.rank(i - 1) + t.rank(i) for i in range(lo, hi + 1)]
    diffs = {}
    for i in range(lo + 1, hi + 1):
        diffs[i] = Matrix.block(
            [[-s.differential(i - 1), None],
             [f.component(i - 1), t.differential(i)]],
            row_sizes=[s.rank(i - 2), t.rank(i - 1)],
            col_sizes=[s.rank(i - 1), t.rank(i)])
    return BasedChainComplex(s.grade, lo, hi, ranks, diffs)


def direct_sum(a: BasedChainComplex, b: BasedChainComplex) -> BasedChainComplex:
    if a.grade is not b.grade:
        raise ValueError("direct sum of different grades")
    lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
    ranks = [a.rank(i) + b.rank(i) for i in range(lo, hi + 1)]
    diffs = {i: Matrix.block([[a.differential(i), None],
                              [None, b.differential(i)]],
                             row_sizes=[a.rank(i - 1), b.rank(i - 1)],
                             col_sizes=[a.rank(i), b.rank(i)])
             for i in range(lo + 1, hi + 1)}
    return BasedChainComplex(a.grade, lo, hi, ranks, diffs)


def _widen_entry(e, grade):
    if grade is Grade.LAURENT:
        return e if isinstance(e, LaurentPoly) else LaurentPoly({0: e})
    if grade is Grade.RATIONAL:
        return e if isinstance(e, RationalFunction) else RationalFunction(e)
    return e


def base_change(c: BasedChainComplex, grade: Grade) -> BasedChainComplex:
    """Reinterpret the entries in a wider ring (Z -> Laurent -> Rational);
    the differentials are unchanged."""
    if _WIDENING[grade] < _WIDENING[c.grade]:
        raise NarrowingNotSupported(f"{c.grade.value} -> {grade.value}")
    diffs = {i: d.map_entries(lambda e: _widen_entry(e, grade))
             for i, d in c.differentials.items()}
    return BasedChainComplex(grade, c.lo, c.hi, c.ranks, diffs)


@dataclass(frozen=True)
class HomologyReport:
    """Per degree: Betti number b_i, torsion invariant factors (each
    dividing the next, unit factors stripped), q_i = their count."""

    lo: int
    hi: int
    betti: dict
    torsion_factors: dict

    def torsion_count(self, i):
        return len(self.torsion_factors.get(i, ()))

    def b(self, i):
        return self.betti.get(i, 0)

    @property
    def total_rank(self):
        return sum(self.betti.values())

    def to_json(self):
        return {
            "lo": self.lo,
            "hi": self.hi,
            "betti": {str(i): self.betti[i] for i in sorted(self.betti)},
            "torsion": {str(i): list(self.torsion_factors[i])
                        for i in sorted(self.torsion_factors)},
        }


def integral_homology(c: BasedChainComplex) -> HomologyReport:
    """H_i as Z^{b_i} (+) (+)_j Z/d_j.

    b_i = rank_i - rank(d_i) - rank(d_{i+1}); the torsion coefficients of
    H_i are the nonunit invariant factors of d_{i+1} (its image sits
    inside the saturated summand ker d_i, so the factors agree).
    """
    if c.grade is not Grade.Z:
        raise ValueError("integral homology needs a Z-graded complex")
    snf = {i: smith_normal_form_int(c.differential(i))
           for i in range(c.lo + 1, c.hi + 1)}
    betti, torsion = {}, {}
    for i in c.degrees():
        r_in = snf[i + 1].rank if i + 1 in snf else 0
        r_out = snf[i].rank if i in snf else 0
        betti[i] = c.rank(i) - r_in - r_out
        torsion[i] = [f for f in (snf[i + 1].invariant_factors
                                  if i + 1 in snf else ()) if f != 1]
    return HomologyReport(c.lo, c.hi, betti, torsion)


def morse_lower_bounds(report: HomologyReport) -> dict:
    """Right-hand sides b_i + q_i + q_{i-1} of the Morse inequalities.

    q below the report range counts as 0; the range extends one degree
    above the top when q_hi > 0 (torsion bounds two degrees).
    """
    hi = report.hi + (1 if report.torsion_count(report.hi) else 0)
    return {i: report.b(i) + report.torsion_count(i) + report.torsion_count(i - 1)
            for i in range(report.lo, hi + 1)}


def function_field_betti(c: BasedChainComplex) -> dict:
    """Free ranks over the fraction field, for Laurent/Rational grades."""
    from .linalg import rank_over_function_field
    r = {i: rank_over_function_field(c.differential(i))
         for i in range(c.lo + 1, c.hi + 1)}
    return {i: c.rank(i) - r.get(i, 0) - r.get(i + 1, 0) for i in c.degrees()}


def rank_of_differential_int(c: BasedChainComplex, i: int) -> int:
    return rank_int(c.differential(i))
