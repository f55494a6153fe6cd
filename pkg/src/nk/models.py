"""
Builders turning the standard worked examples into machine inputs.

* Mapping tori: for a chain self-map h of a Z-complex C(N), the
  plus-orientation total complex is the cone of 1 - z h (always acyclic
  over Z((z))) and the minus orientation is the cone of z - h (acyclic
  iff h is an equivalence).
* The circle with the degree-one function [t] -> [4t - 9t^2 + 6t^3]:
  a hard-coded fixture for the two-critical-point fundamental domain.
* Knot complements from Seifert-style data: a reduced base complex
  (the cut-open Seifert surface) plus a chain self-map e generalizing
  the Seifert matrix gives a fundamental domain with h_D = 0, Alexander
  polynomials det(e + z(1 - e)) on homology, and the fibering test:
  the knot fibers iff the Novikov homology of the complement vanishes
  iff every Alexander polynomial has extreme coefficients +-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rings import LaurentPoly, Direction
from .linalg import (
    Matrix,
    det_laurent,
    kernel_basis_int,
    matmul,
    smith_normal_form_int,
    solve_int,
)
from .complexes import (
    BasedChainComplex,
    ChainMap,
    Grade,
    base_change,
    mapping_cone,
)
from .fundomain import AlgebraicFundamentalDomain, assemble_mapping_cone
from .novikov import finite_domination_check

Z = LaurentPoly({1: 1})
ONE = LaurentPoly({0: 1})


class InternalInconsistency(Exception):
    """The two equivalent fibering criteria disagreed: an implementation
    bug, not a property of the input."""


def mapping_torus_complex(h: ChainMap, orientation="plus") -> BasedChainComplex:
    """Total complex of the mapping torus of h, over Z[z,z^-1].

    plus: cone(1 - z h) for the canonical circle projection;
    minus: cone(z - h) for the reversed projection.
    """
    if h.source != h.target:
        raise ValueError("mapping torus needs a chain self-map")
    n = base_change(h.source, Grade.LAURENT)
    comps = {}
    for i in n.degrees():
        ident = Matrix.identity(n.rank(i))
        if orientation == "plus":
            comps[i] = ident - h.component(i).scaled(Z)
        elif orientation == "minus":
            comps[i] = ident.scaled(Z) - h.component(i).map_entries(
                lambda e: LaurentPoly({0: e}))
        else:
            raise ValueError(f"unknown orientation {orientation!r}")
    return mapping_cone(ChainMap(n, n, comps))


def circle_exercise() -> AlgebraicFundamentalDomain:
    """Fundamental domain for the circle with f([t]) = [4t - 9t^2 + 6t^3].

    Desk derivation (this is a fixture, not a flow simulation): the
    derivative 4 - 18t + 18t^2 vanishes at t = 1/3 (a local maximum,
    index 1, value 5/9) and t = 2/3 (a local minimum, index 0, value
    4/9), so cutting at the regular value 0 gives D = Z in degree 0 and
    F with one generator in each of degrees 1 and 0.  Downward flow
    entering the slice at the top wall falls into the minimum (h_F =
    [-1] with orientation signs, h_D = 0: nothing crosses the whole
    slice); of the two flow lines leaving the maximum, one ends at the
    minimum inside (d_F = [1]) and one exits through the cut (c = [1]),
    ending at the deck translate of the minimum.  The resulting Novikov
    differential is 1 - z: the two flow lines of the lift land on
    translates of the minimum one deck transformation apart, and the
    algebraic Novikov complex is acyclic, as it must be for any Morse
    function on the circle.
    """
    D = BasedChainComplex(Grade.Z, 0, 0, [1], {})
    F = BasedChainComplex(Grade.Z, 0, 1, [1, 1],
                          {1: Matrix.from_rows([[1]])})
    return AlgebraicFundamentalDomain(
        D, F,
        c={1: Matrix.from_rows([[1]])},
        h_D={},
        h_F={0: Matrix.from_rows([[-1]])})


@dataclass(frozen=True)
class SeifertData:
    """A reduced base complex over Z and a chain self-map e (the
    generalized Seifert matrix, e = (G - H)^-1 G for the two inclusions
    of the Seifert surface)."""

    base: BasedChainComplex
    e: ChainMap

    def __post_init__(self):
        if self.base.grade is not Grade.Z:
            raise ValueError("Seifert base must be a Z-complex")
        if self.e.source != self.base or self.e.target != self.base:
            raise ValueError("e must be a chain self-map of the base")

    def to_json(self):
        from .linalg import matrix_to_json
        return {"base": self.base.to_json(),
                "e": {str(i): matrix_to_json(self.e.component(i))
                      for i in self.base.degrees()}}


def knot_fundamental_domain(s: SeifertData) -> AlgebraicFundamentalDomain:
    """The fundamental domain of a knot complement cut along a Seifert
    surface.

    With base complex B (reduced) and Seifert chain map e:

      D = Z (+) B   (the augmentation Z sits in degree 0, inert:
                     h_D and h_F vanish on it),
      F_i = B_i (+) B_{i-1},  d_F = [[d, e], [0, -d]],
      c = (0 1): F_i -> D_{i-1},  h_D = 0,  h_F = (1 - e; 0).
    """
    b = s.base
    if b.lo < 0:
        raise ValueError("Seifert base must live in nonnegative degrees")
    d_lo, d_hi = 0, max(b.hi, 0)
    d_ranks = [(1 if i == 0 else 0) + b.rank(i) for i in range(d_lo, d_hi + 1)]
    d_diffs = {}
    for i in range(1, d_hi + 1):
        d_diffs[i] = Matrix.block(
            [[None], [b.differential(i)]] if i == 1 else [[b.differential(i)]],
            row_sizes=([1, b.rank(0)] if i == 1 else [b.rank(i - 1)]),
            col_sizes=[b.rank(i)])
    D = BasedChainComplex(Grade.Z, d_lo, d_hi, d_ranks, d_diffs)

    f_lo, f_hi = min(b.lo, 0), b.hi + 1
    f_ranks = [b.rank(i) + b.rank(i - 1) for i in range(f_lo, f_hi + 1)]
    f_diffs = {}
    for i in range(f_lo + 1, f_hi + 1):
        f_diffs[i] = Matrix.block(
            [[b.differential(i), s.e.component(i - 1)],
             [None, -b.differential(i - 1)]],
            row_sizes=[b.rank(i - 1), b.rank(i - 2)],
            col_sizes=[b.rank(i), b.rank(i - 1)])
    F = BasedChainComplex(Grade.Z, f_lo, f_hi, f_ranks, f_diffs)

    c = {}
    for i in range(f_lo, f_hi + 1):
        if b.rank(i - 1) == 0 or D.rank(i - 1) == 0:
            continue
        incl = Matrix.block(
            [[None], [Matrix.identity(b.rank(i - 1))]]
            if i - 1 == 0 else [[Matrix.identity(b.rank(i - 1))]],
            row_sizes=([1, b.rank(0)] if i - 1 == 0 else [b.rank(i - 1)]),
            col_sizes=[b.rank(i - 1)])
        c[i] = Matrix.block([[None, incl]],
                            row_sizes=[D.rank(i - 1)],
                            col_sizes=[b.rank(i), b.rank(i - 1)])
    h_F = {}
    for i in range(d_lo, d_hi + 1):
        if D.rank(i) == 0 or F.rank(i) == 0:
            continue
        one_minus_e = Matrix.identity(b.rank(i)) - s.e.component(i)
        h_F[i] = Matrix.block(
            [[None, one_minus_e], [None, None]]
            if i == 0 else [[one_minus_e], [None]],
            row_sizes=[b.rank(i), b.rank(i - 1)],
            col_sizes=([1, b.rank(0)] if i == 0 else [b.rank(i)]))
    return AlgebraicFundamentalDomain(D, F, c=c, h_D={}, h_F=h_F)


def homology_free_data(c: BasedChainComplex, i: int):
    """(projection data) for the free part of H_i of a Z-complex.

    Returns (K, U, rank) where the columns of K span ker d_i, U is the
    left Smith transform of the presentation of H_i in kernel
    coordinates, and rank is the number of torsion-or-unit relations:
    rows rank.. of U project kernel coordinates onto H_i / torsion.
    """
    K = kernel_basis_int(c.differential(i))
    B = c.differential(i + 1)
    X = solve_int(K, B)
    if X is None:  # pragma: no cover - boundaries always lie in the kernel
        raise AssertionError("boundaries must lie in the kernel")
    s = smith_normal_form_int(X)
    return K, s.U, s.rank


def induced_map_on_free_homology(c: BasedChainComplex, f: ChainMap, i: int):
    """Matrix of the map induced by f on H_i(c)/torsion, for f: c -> c."""
    K, U, r = homology_free_data(c, i)
    k = K.cols
    free = k - r
    if free == 0:
        return Matrix.zeros(0, 0)
    s_u = smith_normal_form_int(U)  # U is unimodular, so V_s @ U_s = U^-1
    u_inv = matmul(s_u.V, s_u.U)
    if matmul(U, u_inv) != Matrix.identity(U.rows):  # pragma: no cover
        raise AssertionError("failed to invert unimodular transform")
    lift = matmul(K, Matrix(k, free,
                            [[u_inv.entries[row][r + j] for j in range(free)]
                             for row in range(k)]))
    image = matmul(f.component(i), lift)
    W = solve_int(K, image)
    if W is None:  # pragma: no cover - f preserves the kernel
        raise AssertionError("chain map must preserve the kernel")
    coords = matmul(U, W)
    return Matrix(free, free,
                  [[coords.entries[r + row][j] for j in range(free)]
                   for row in range(free)])


def base_homology_torsion(c: BasedChainComplex) -> dict:
    """Degrees of a Z-complex with torsion in homology, with coefficients."""
    from .complexes import integral_homology
    rep = integral_homology(c)
    return {i: tuple(t) for i, t in rep.torsion_factors.items() if t}


def alexander_polynomials(s: SeifertData) -> dict:
    """Alexander polynomials per degree: det(e + z(1 - e)) on the free
    part of H_i(base).

    Torsion in H_i(base) is outside the determinant's reach and is
    reported separately by ``fibering_check``.  Normalization: the
    representative has nonnegative exponents, a nonzero constant term,
    and positive leading coefficient.
    """
    out = {}
    for i in s.base.degrees():
        ebar = induced_map_on_free_homology(s.base, s.e, i)
        n = ebar.rows
        m = Matrix(n, n, [[_alex_entry(ebar.entries[r][cidx], r == cidx)
                           for cidx in range(n)] for r in range(n)])
        out[i] = _normalize_alexander(det_laurent(m))
    return out


def _alex_entry(e, diag):
    # entry of e + z(1 - e)
    return LaurentPoly({0: e, 1: (1 if diag else 0) - e})


def _normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    if p.is_zero:  # pragma: no cover - det(e + z(1-e)) never vanishes
        raise AssertionError("Alexander polynomial cannot be zero: "
                             "a common kernel of e and 1-e is impossible")
    p = p.shifted(-p.ord())
    if p.highest_coeff() < 0:
        p = -p
    return p


@dataclass(frozen=True)
class FiberingVerdict:
    """Outcome of the knot fibering test.

    ``novikov_vanishes``: the complement's Novikov homology vanishes for
    both completions (fibering makes the infinite cyclic cover a finite
    complex, so the two-sided Proposition applies); this is the reading
    under which the equivalence with the Alexander criterion holds for
    arbitrary Seifert data.  ``extreme_coeffs_unit``: every Alexander
    polynomial has constant and leading coefficients +-1.  The two are
    equivalent whenever the base homology is torsion-free; disagreement
    there raises InternalInconsistency.  ``base_torsion`` flags degrees
    whose homology torsion the determinant criterion cannot see.
    """

    alexander: dict
    novikov_vanishes: bool
    extreme_coeffs_unit: bool
    fibers: bool
    base_torsion: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "alexander": {str(i): p.to_json()
                          for i, p in sorted(self.alexander.items())},
            "novikov_vanishes": self.novikov_vanishes,
            "extreme_coeffs_unit": self.extreme_coeffs_unit,
            "fibers": self.fibers,
            "base_torsion": {str(i): list(t)
                             for i, t in sorted(self.base_torsion.items())},
        }


def fibering_check(s: SeifertData) -> FiberingVerdict:
    """Run both fibering criteria and assert they agree.

    (ii) the Novikov homology of the assembled knot complex vanishes
    (two-sidedly); (iii) every Alexander polynomial has extreme
    coefficients +-1.  On a torsion-free base these are equivalent
    degreewise through the exact sequence
    0 -> H_i((z)) --e+z(1-e)--> H_i((z)) -> H^Nov_i -> 0, so any
    disagreement is an internal error.
    """
    alex = alexander_polynomials(s)
    extreme = all(abs(p.coeff(0)) == 1 and abs(p.highest_coeff()) == 1
                  for p in alex.values())
    fd = knot_fundamental_domain(s)
    cone = assemble_mapping_cone(fd)
    verdict = finite_domination_check(cone)
    nov = verdict.finitely_dominated
    torsion = base_homology_torsion(s.base)
    if not torsion and nov != extreme:
        raise InternalInconsistency(
            f"criteria disagree: novikov_vanishes={nov}, "
            f"extreme_coeffs_unit={extreme}")
    return FiberingVerdict(alex, nov, extreme, nov, torsion)


def knot_novikov_factors(s: SeifertData, direction=Direction.PLUS) -> dict:
    """Non-unit Novikov invariant factors of the knot complex per degree."""
    from .novikov import novikov_homology
    cone = assemble_mapping_cone(knot_fundamental_domain(s))
    rep = novikov_homology(cone, direction)
    return rep.factors_by_degree()
