"""
Algebraic fundamental domains and the algebraic Novikov complex.

A fundamental domain packages the chain-level data of one slice of an
infinite cyclic cover: finite based free Z-complexes D (the cut
hypersurface) and F (the relative handles), with

* c   : F_i -> D_{i-1}   gluing block, so that E = D (+) F with
  d_E = [[d_D, c], [0, d_F]] is a complex;
* h_D : D_i -> D_i and h_F : D_i -> F_i, the blocks of a chain map
  h = [h_D; h_F] : D -> E modelling the flow through the slice
  (d_D h_D + c h_F = h_D d_D and d_F h_F = h_F d_D).

Out of this come three exact constructions:

* the mapping cone C(phi) of phi = g - z h = [1 - z h_D; -z h_F], a
  Laurent complex computing the homology of the total space with
  Novikov-type coefficients;
* the algebraic Novikov complex F^ on the ranks of F, with differential
  d_F + z h_F (1 - z h_D)^-1 c  =  d_F + sum_{j>=1} z^j h_F h_D^{j-1} c,
  exactly (rational entries, inverse by adjugate/determinant -- the
  determinant has constant coefficient 1, hence is invertible in the
  rational subring) or truncated at a series order;
* the torsion of the projection C(phi) -> F^, in commutative determinant
  form: the alternating product of det(1 - z h_D | D_i), a zeta-type
  rational function.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import (
    LaurentPoly,
    RationalFunction,
    expand,
    truncate_poly,
)
from .linalg import Matrix, adjugate_laurent, det_laurent, matmul, matrix_to_json
from .complexes import BasedChainComplex, Grade

Z = LaurentPoly({1: 1})
ONE = LaurentPoly({0: 1})


class InvalidDomain(Exception):
    """A fundamental-domain identity fails; names the identity and degree."""

    def __init__(self, identity, degree, detail=""):
        msg = f"{identity} fails at degree {degree}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.identity = identity
        self.degree = degree


@dataclass(frozen=True)
class AlgebraicFundamentalDomain:
    """The block data (d_D, d_F, c, h_D, h_F) of a fundamental domain.

    ``c[i]``: F_i -> D_{i-1}; ``h_D[i]``: D_i -> D_i; ``h_F[i]``:
    D_i -> F_i.  Missing degrees mean zero blocks.  Construction runs
    the full validator.
    """

    D: BasedChainComplex
    F: BasedChainComplex
    c: dict
    h_D: dict
    h_F: dict

    def __post_init__(self):
        if self.D.grade is not Grade.Z or self.F.grade is not Grade.Z:
            raise InvalidDomain("grade", self.D.lo, "D and F must be over Z")
        object.__setattr__(self, "c", _conform(
            self.c, lambda i: (self.D.rank(i - 1), self.F.rank(i)),
            self._span(), "c"))
        object.__setattr__(self, "h_D", _conform(
            self.h_D, lambda i: (self.D.rank(i), self.D.rank(i)),
            self._span(), "h_D"))
        object.__setattr__(self, "h_F", _conform(
            self.h_F, lambda i: (self.F.rank(i), self.D.rank(i)),
            self._span(), "h_F"))
        bad = validate_fundamental_domain(self)
        if bad is not None:
            raise InvalidDomain(*bad)

    def _span(self):
        return range(min(self.D.lo, self.F.lo) - 1,
                     max(self.D.hi, self.F.hi) + 2)

    def c_at(self, i):
        return self.c.get(i) or Matrix.zeros(self.D.rank(i - 1), self.F.rank(i))

    def h_D_at(self, i):
        return self.h_D.get(i) or Matrix.zeros(self.D.rank(i), self.D.rank(i))

    def h_F_at(self, i):
        return self.h_F.get(i) or Matrix.zeros(self.F.rank(i), self.D.rank(i))

    def to_json(self):
        return {
            "D": self.D.to_json(),
            "F": self.F.to_json(),
            "c": {str(i): matrix_to_json(m) for i, m in sorted(self.c.items())},
            "hD": {str(i): matrix_to_json(m) for i, m in sorted(self.h_D.items())},
            "hF": {str(i): matrix_to_json(m) for i, m in sorted(self.h_F.items())},
        }


def _conform(blocks, shape, span, name):
    out = {}
    for i, m in blocks.items():
        rs, cs = shape(i)
        if (m.rows, m.cols) != (rs, cs):
            raise InvalidDomain(f"{name} shape", i,
                                f"{m.rows}x{m.cols}, expected {rs}x{cs}")
        if not m.is_zero:
            out[i] = m
    return out


def validate_fundamental_domain(fd) -> tuple | None:
    """Check the five identity families exactly.

    Returns None, or (identity name, degree) for the first failure.
    d_D^2 = 0 and d_F^2 = 0 hold by construction of the complexes; the
    three block identities are re-derivations of "E is a complex" and
    "h is a chain map":

      d_D c + c d_F = 0
      d_D h_D + c h_F = h_D d_D
      d_F h_F = h_F d_D
    """
    D, F = fd.D, fd.F
    span = fd._span()
    for i in span:
        # d_D c + c d_F = 0 : F_i -> D_{i-2}
        lhs = matmul(D.differential(i - 1), fd.c_at(i)) + \
            matmul(fd.c_at(i - 1), F.differential(i))
        if not lhs.is_zero:
            return ("d_D c + c d_F = 0", i)
        # d_D h_D + c h_F = h_D d_D : D_i -> D_{i-1}
        lhs = matmul(D.differential(i), fd.h_D_at(i)) + \
            matmul(fd.c_at(i), fd.h_F_at(i))
        rhs = matmul(fd.h_D_at(i - 1), D.differential(i))
        if lhs != rhs:
            return ("d_D h_D + c h_F = h_D d_D", i)
        # d_F h_F = h_F d_D : D_i -> F_{i-1}
        lhs = matmul(F.differential(i), fd.h_F_at(i))
        rhs = matmul(fd.h_F_at(i - 1), D.differential(i))
        if lhs != rhs:
            return ("d_F h_F = h_F d_D", i)
    return None


def _lau(m: Matrix) -> Matrix:
    return m.map_entries(lambda e: e if isinstance(e, LaurentPoly)
                         else LaurentPoly({0: e}))


def assemble_mapping_cone(fd: AlgebraicFundamentalDomain) -> BasedChainComplex:
    """The Laurent complex C(phi), phi = g - z h.

    Degree i carries D_{i-1} (+) D_i (+) F_i, with differential blocks

        [ -d_D        0      0   ]
        [ 1 - z h_D   d_D    c   ]
        [ -z h_F      0      d_F ]

    (the last diagonal block is d_F: with d_D there the square of the
    differential picks up c d_F - d_D c != 0 in general, and the
    construction-time validator would reject it).
    """
    D, F = fd.D, fd.F
    lo = min(D.lo, F.lo)
    hi = max(D.hi + 1, F.hi)
    ranks = [D.rank(i - 1) + D.rank(i) + F.rank(i) for i in range(lo, hi + 1)]
    diffs = {}
    for i in range(lo + 1, hi + 1):
        dd_prev = _lau(D.differential(i - 1))
        phi_top = Matrix.identity(D.rank(i - 1)) - fd.h_D_at(i - 1).scaled(Z)
        diffs[i] = Matrix.block(
            [[-dd_prev, None, None],
             [_lau(phi_top), _lau(D.differential(i)), _lau(fd.c_at(i))],
             [-fd.h_F_at(i - 1).scaled(Z), None, _lau(F.differential(i))]],
            row_sizes=[D.rank(i - 2), D.rank(i - 1), F.rank(i - 1)],
            col_sizes=[D.rank(i - 1), D.rank(i), F.rank(i)])
    return BasedChainComplex(Grade.LAURENT, lo, hi, ranks, diffs)


def _one_minus_zh(fd, i) -> Matrix:
    """1 - z h_D on D_i, as a Laurent matrix."""
    return Matrix.identity(fd.D.rank(i)) - fd.h_D_at(i).scaled(Z)


def _inverse_one_minus_zh(fd, i) -> Matrix:
    """(1 - z h_D)^-1 on D_i, exact rational entries via adjugate/det.

    det(1 - z h_D) has constant coefficient det(I) = 1, so it lies in S
    and the inverse stays inside the rational subring.
    """
    m = _lau(_one_minus_zh(fd, i))
    n = m.rows
    if n == 0:
        return Matrix.zeros(0, 0)
    det = det_laurent(m)
    adj = adjugate_laurent(m)
    return adj.map_entries(lambda e: RationalFunction(e, det))


@dataclass(frozen=True)
class TruncatedComplexPresentation:
    """Ranks plus differentials summed through series order `order`;
    d o d vanishes through that order rather than identically."""

    lo: int
    hi: int
    ranks: tuple
    differentials: dict
    order: int

    def rank(self, i):
        if self.lo <= i <= self.hi:
            return self.ranks[i - self.lo]
        return 0

    def differential(self, i):
        d = self.differentials.get(i)
        if d is None:
            d = Matrix.zeros(self.rank(i - 1), self.rank(i))
        return d

    def d_squared_vanishes(self) -> bool:
        for i in range(self.lo + 2, self.hi + 1):
            prod = matmul(self.differential(i - 1), self.differential(i))
            cut = prod.map_entries(
                lambda e: truncate_poly(e, self.order))
            if not cut.is_zero:
                return False
        return True


def algebraic_novikov_complex(fd: AlgebraicFundamentalDomain, mode="exact",
                              order=None):
    """The complex F^ on the ranks of F.

    mode="exact": differentials d_F + z h_F (1 - z h_D)^-1 c as exact
    rational matrices; the result is a validated complex (d^2 = 0
    identically).  mode="truncated": the geometric series is summed
    through z^order, d_F + sum_{j=1..order} z^j h_F h_D^{j-1} c, giving
    Laurent differentials with d^2 = 0 through that order.
    """
    F = fd.F
    if mode == "exact":
        diffs = {}
        for i in range(F.lo + 1, F.hi + 1):
            inv = _inverse_one_minus_zh(fd, i - 1)
            tail = matmul(matmul(fd.h_F_at(i - 1).scaled(Z), inv),
                          fd.c_at(i).map_entries(lambda e: RationalFunction(e)))
            base = F.differential(i).map_entries(lambda e: RationalFunction(e))
            diffs[i] = base + tail
        return BasedChainComplex(Grade.RATIONAL, F.lo, F.hi,
                                 [F.rank(i) for i in F.degrees()], diffs)
    if mode != "truncated":
        raise ValueError(f"unknown mode {mode!r}")
    if order is None:
        raise ValueError("truncated mode needs an order")
    diffs = {}
    for i in range(F.lo + 1, F.hi + 1):
        acc = _lau(F.differential(i))
        hd = fd.h_D_at(i - 1)
        power = Matrix.identity(hd.rows)
        c = _lau(fd.c_at(i))
        hf = _lau(fd.h_F_at(i - 1))
        for j in range(1, order + 1):
            term = matmul(matmul(hf, _lau(power)), c)
            acc = acc + term.scaled(LaurentPoly({j: 1}))
            power = matmul(power, hd)
        diffs[i] = acc
    return TruncatedComplexPresentation(
        F.lo, F.hi, tuple(F.rank(i) for i in F.degrees()), diffs, order)


@dataclass(frozen=True)
class CokernelCheck:
    """Outcome of the cokernel identification test."""

    passed: bool
    degree: int | None = None
    order: int | None = None

    def __bool__(self):
        return self.passed


def cokernel_iso_check(fd: AlgebraicFundamentalDomain, precision) -> CokernelCheck:
    """Verify, through series order `precision`, that projecting C(phi)
    onto its F-summand along the image of phi intertwines the assembled
    differential with the F^ differential.

    phi = [1 - z h_D; -z h_F] is split injective because 1 - z h_D is
    invertible; reducing (b, f) in D_i (+) F_i modulo im(phi) leaves
    (0, f + z h_F (1 - z h_D)^-1 b), so the projection in degree i is
    the block row p_i = [0, z h_F (1 - z h_D)^-1, 1].  The check is
    p_{i-1} d_{C(phi)} = d_F^ p_i through the requested order; the first
    mismatch is reported with its degree and series order.
    """
    cone = assemble_mapping_cone(fd)
    fhat = algebraic_novikov_complex(fd, "exact")
    proj = {}
    for i in cone.degrees():
        inv = _inverse_one_minus_zh(fd, i)
        mid = matmul(fd.h_F_at(i).scaled(Z), inv)
        proj[i] = Matrix.block(
            [[None, mid, Matrix.identity(fd.F.rank(i))]],
            row_sizes=[fd.F.rank(i)],
            col_sizes=[fd.D.rank(i - 1), fd.D.rank(i), fd.F.rank(i)])
    first = None
    for i in range(cone.lo + 1, cone.hi + 1):
        lhs = matmul(proj[i - 1],
                     cone.differential(i).map_entries(
                         lambda e: RationalFunction(e)))
        rhs = matmul(fhat.differential(i), proj[i])
        for r in range(lhs.rows):
            for col in range(lhs.cols):
                diff = lhs.entry(r, col) - rhs.entry(r, col)
                if not diff:
                    continue
                w = expand(diff, precision=precision)
                if not w.is_zero_window:
                    if first is None or (i, w.lowest) < first:
                        first = (i, w.lowest)
    if first is None:
        return CokernelCheck(True)
    return CokernelCheck(False, first[0], first[1])


@dataclass(frozen=True)
class ZetaFunction:
    """The commutative torsion of the projection C(phi) -> F^:
    the alternating product prod_i det(1 - z h_D | D_i)^((-1)^i)."""

    value: RationalFunction

    def __post_init__(self):
        num, den = self.value.numerator, self.value.denominator
        if num.coeff(0) != 1 or den.coeff(0) != 1:  # pragma: no cover
            raise AssertionError("zeta parts must have constant coefficient 1")

    def pretty(self):
        return self.value.pretty()

    def to_json(self):
        return self.value.to_json()


def torsion_zeta(fd: AlgebraicFundamentalDomain) -> ZetaFunction:
    """Alternating determinant product over the degrees of D.

    Each det(1 - z h_D | D_i) lies in S (constant coefficient 1), so the
    product is a well-defined element of the rational subring; even
    degrees multiply the numerator, odd degrees the denominator.
    """
    num, den = ONE, ONE
    for i in fd.D.degrees():
        det = det_laurent(_lau(_one_minus_zh(fd, i)))
        if i % 2 == 0:
            num = num * det
        else:
            den = den * det
    return ZetaFunction(RationalFunction(num, den))


def direct_sum_domains(a: AlgebraicFundamentalDomain,
                       b: AlgebraicFundamentalDomain) -> AlgebraicFundamentalDomain:
    """Blockwise direct sum; all five identities are preserved."""
    from .complexes import direct_sum
    D = direct_sum(a.D, b.D)
    F = direct_sum(a.F, b.F)
    span = range(min(D.lo, F.lo) - 1, max(D.hi, F.hi) + 2)

    def glue(blk_a, blk_b, shape_a, shape_b):
        out = {}
        for i in span:
            (ra, ca), (rb, cb) = shape_a(i), shape_b(i)
            if ra + rb == 0 or ca + cb == 0:
                continue
            out[i] = Matrix.block(
                [[blk_a(i), None], [None, blk_b(i)]],
                row_sizes=[ra, rb], col_sizes=[ca, cb])
        return out

    return AlgebraicFundamentalDomain(
        D, F,
        c=glue(a.c_at, b.c_at,
               lambda i: (a.D.rank(i - 1), a.F.rank(i)),
               lambda i: (b.D.rank(i - 1), b.F.rank(i))),
        h_D=glue(a.h_D_at, b.h_D_at,
                 lambda i: (a.D.rank(i), a.D.rank(i)),
                 lambda i: (b.D.rank(i), b.D.rank(i))),
        h_F=glue(a.h_F_at, b.h_F_at,
                 lambda i: (a.F.rank(i), a.D.rank(i)),
                 lambda i: (b.F.rank(i), b.D.rank(i))))
