"""
Exact arithmetic in Z[z,z^-1], its rational localization, and truncated
windows of Z((z)).

The Novikov ring Z((z)) = Z[[z]][z^-1] consists of formal series with
finitely many negative-exponent terms; its units are exactly the series
whose lowest coefficient is +-1.  This module never materializes a full
series.  It works with three exact stand-ins:

* ``LaurentPoly``       -- finitely supported integer coefficient maps;
* ``RationalFunction``  -- quotients r(z)/s(z) with s(0) = 1, i.e. the
  subring S^-1 Z[z,z^-1] of Z((z)) (S = polynomials with constant
  coefficient 1, the polynomials invertible in Z[[z]] up to sign);
* ``TruncatedSeries``   -- a window of a Z((z)) element: the coefficients
  below an explicit cutoff exponent, nothing more.

Everything is immutable and pure; integer coefficients are arbitrary
precision.  Computations "at z = infinity" (the ring Z((z^-1))) are done
by reversing the variable and delegating to the z-side code; reversed
results are expressed in the reversed variable w = z^-1.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

#: Default number of retained exponents for series windows.
DEFAULT_PRECISION = 32


class NotAUnit(Exception):
    """Raised when inversion is requested for a Novikov non-unit."""


class NotInRationalSubring(Exception):
    """Raised when a quotient does not lie in S^-1 Z[z,z^-1].

    By Fatou's lemma a reduced fraction of integer polynomials has an
    integer power series expansion iff its denominator's trailing
    coefficient is +-1, so this is also the exact divisibility test for
    rational elements of Z((z)).
    """


class Direction(enum.Enum):
    """Which completion of Z[z,z^-1] a computation runs in.

    PLUS is Z((z)) (complete in z), MINUS is Z((z^-1)).
    """

    PLUS = "plus"
    MINUS = "minus"

    def __repr__(self):
        return f"Direction.{self.name}"


class LaurentPoly:
    """An element of Z[z,z^-1] as a finite map {exponent: coefficient}.

    Zero coefficients are never stored; the zero polynomial is the empty
    map.  Instances are immutable and hashable, and mix freely with ints
    in arithmetic.

    >>> p = LaurentPoly({0: 1, 1: -2})
    >>> p * LaurentPoly({-1: 1})
    LaurentPoly('z^-1 - 2')
    >>> p - p
    LaurentPoly('0')
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for j, n in coeffs.items():
                if n:
                    c[int(j)] = int(n)
        self._c = c

    @classmethod
    def const(cls, n):
        return cls({0: n})

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    @property
    def coeffs(self):
        return dict(self._c)

    def coeff(self, j):
        return self._c.get(j, 0)

    def items(self):
        """Coefficients sorted by exponent."""
        return sorted(self._c.items())

    @property
    def is_zero(self):
        return not self._c

    def ord(self):
        """Lowest exponent with nonzero coefficient."""
        if not self._c:
            raise ValueError("ord of the zero polynomial is undefined")
        return min(self._c)

    def deg(self):
        """Highest exponent with nonzero coefficient."""
        if not self._c:
            raise ValueError("deg of the zero polynomial is undefined")
        return max(self._c)

    def lowest_coeff(self):
        return self._c[self.ord()]

    def highest_coeff(self):
        return self._c[self.deg()]

    def shifted(self, k):
        """Multiply by z^k."""
        if k == 0:
            return self
        return LaurentPoly({j + k: n for j, n in self._c.items()})

    def content(self):
        """gcd of the coefficients (0 for the zero polynomial)."""
        return math.gcd(*self._c.values()) if self._c else 0

    def map_coeffs(self, f):
        return LaurentPoly({j: f(n) for j, n in self._c.items()})

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        # constants hash like the ints they equal
        if not self._c:
            return hash(0)
        if set(self._c) == {0}:
            return hash(self._c[0])
        return hash(tuple(self.items()))

    def __neg__(self):
        return LaurentPoly({j: -n for j, n in self._c.items()})

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for j, n in other._c.items():
            c[j] = c.get(j, 0) + n
        return LaurentPoly(c)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        c = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                k = i + j
                c[k] = c.get(k, 0) + a * b
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self._c) == 1 and abs(self.lowest_coeff()) == 1:
                j = self.ord()
                return LaurentPoly({-j: self._c[j]}) ** (-n)
            raise ValueError("negative powers only for monomials with coefficient +-1")
        out = LaurentPoly({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, x):
        return sum(n * x**j for j, n in self.items())

    def pretty(self, var="z"):
        """Human-readable form, ascending exponents: '1 - 2*z'."""
        if not self._c:
            return "0"
        parts = []
        for j, n in self.items():
            sign = "-" if n < 0 else "+"
            a = abs(n)
            if j == 0:
                body = str(a)
            else:
                power = var if j == 1 else f"{var}^{j}"
                body = power if a == 1 else f"{a}*{power}"
            if not parts:
                parts.append(body if n > 0 else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly('{self.pretty()}')"

    def to_json(self):
        return {str(j): n for j, n in self.items()}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, int):
            return cls.const(obj)
        return cls({int(j): int(n) for j, n in obj.items()})


def _coerce_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
Z = LaurentPoly({1: 1})


def normalize(raw) -> LaurentPoly:
    """Drop zero coefficients from a raw exponent->coefficient map.

    Equality of LaurentPoly is equality of the normalized maps.

    >>> normalize({0: 1, 1: 0, 2: 3})
    LaurentPoly('1 + 3*z^2')
    """
    return LaurentPoly(raw)


def reverse_variable(p):
    """Substitute z -> z^-1 (exponent j -> -j).  Involutive.

    Reduces every Z((z^-1)) question to a Z((z)) one.  Works on
    LaurentPoly and RationalFunction.
    """
    if isinstance(p, RationalFunction):
        return RationalFunction(reverse_variable(p.numerator),
                                reverse_variable(p.denominator))
    p = _coerce_poly(p)
    return LaurentPoly({-j: n for j, n in p._c.items()})


def is_novikov_unit(p, direction=Direction.PLUS) -> bool:
    """Is p a unit of Z((z)) (PLUS) resp. Z((z^-1)) (MINUS)?

    A nonzero Laurent polynomial is a unit of the completion iff its
    extreme coefficient on the completion side (lowest exponent for
    PLUS, highest for MINUS) is +-1.

    >>> is_novikov_unit(LaurentPoly({0: 1, 1: -1}))        # 1 - z
    True
    >>> is_novikov_unit(LaurentPoly({0: -2, 1: 1}))        # z - 2
    False
    >>> is_novikov_unit(LaurentPoly({0: -2, 1: 1}), Direction.MINUS)
    True
    """
    p = _coerce_poly(p)
    if p.is_zero:
        return False
    c = p.lowest_coeff() if direction is Direction.PLUS else p.highest_coeff()
    return c in (1, -1)


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (ascending coefficient lists, for gcd work)


def _to_dense(p: LaurentPoly):
    """(shift, ascending coefficient list) with list[0] != 0; p nonzero."""
    lo, hi = p.ord(), p.deg()
    return lo, [p.coeff(j) for j in range(lo, hi + 1)]


def _dense_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_primitive(a):
    g = math.gcd(*a)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def _dense_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _dense_divmod_q(a, b):
    """Division over Q of ascending integer coefficient lists."""
    r = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return q, _dense_trim(r)


def _dense_divexact(a, b):
    """a // b when b | a over Q and the quotient is integral; else None."""
    q, r = _dense_divmod_q(a, b)
    if r or any(x.denominator != 1 for x in q):
        return None
    return _dense_trim([int(x) for x in q])


_FILTER_PRIMES = (9973, 31337, 65537, 999983)


def _coprime_mod_p(a, b):
    """True when gcd over Q is provably 1: the gcd of the reductions
    mod p has degree 0 for some p not dividing both leading coefficients
    (degrees can only drop under reduction, never the gcd's)."""
    for p in _FILTER_PRIMES:
        am = [x % p for x in a]
        bm = [x % p for x in b]
        while am and am[-1] == 0:
            am.pop()
        while bm and bm[-1] == 0:
            bm.pop()
        if len(am) != len(a) or len(bm) != len(b):
            continue  # a leading coefficient vanished: p is unusable
        while bm:
            inv = pow(bm[-1], -1, p)
            for k in range(len(am) - len(bm), -1, -1):
                c = am[k + len(bm) - 1] * inv % p
                if c:
                    for j, y in enumerate(bm):
                        am[k + j] = (am[k + j] - c * y) % p
            while am and am[-1] == 0:
                am.pop()
            am, bm = bm, am
        return len(am) == 1
    return False


def _dense_gcd(a, b):
    """Primitive gcd over Q of two nonzero integer coefficient lists.

    A modular filter dispatches the common coprime case cheaply; the
    primitive pseudo-remainder sequence handles real cancellation.
    Result has positive leading coefficient.
    """
    a = _dense_primitive(list(a))
    b = _dense_primitive(list(b))
    if len(a) == 1 or len(b) == 1 or _coprime_mod_p(a, b):
        return [1]
    while b:
        # pseudo-remainder of a by b
        r = [x * b[-1] ** max(0, len(a) - len(b) + 1) for x in a]
        for k in range(len(a) - len(b), -1, -1):
            c = r[k + len(b) - 1] // b[-1]
            if c:
                for j, y in enumerate(b):
                    r[k + j] -= c * y
        _dense_trim(r)
        a, b = b, (_dense_primitive(r) if r else [])
    return _dense_primitive(a)


def divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division in Z[z,z^-1]; raises ValueError when b does not divide a."""
    b = _coerce_poly(b)
    a = _coerce_poly(a)
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero:
        return ZERO
    sa, da = _to_dense(a)
    sb, db = _to_dense(b)
    q = _dense_divexact(da, db)
    if q is None:
        raise ValueError("not divisible in Z[z,z^-1]")
    return LaurentPoly({sa - sb + j: n for j, n in enumerate(q)})


class RationalFunction:
    """An element of S^-1 Z[z,z^-1]: numerator/denominator with s(0) = 1.

    Canonical form (unique for each value):

    * denominator in S: exponents >= 0 and constant coefficient exactly 1;
    * numerator and denominator share no nonconstant polynomial factor
      over Q, and no common integer content;
    * the numerator keeps its own integer content (it is not cancelled
      against the denominator, whose content is always 1).

    The constructor accepts any pair whose quotient lies in the subring,
    factoring monomials out of the denominator into the numerator's
    support and fixing signs; it raises ``NotInRationalSubring``
    otherwise.  Because of Fatou's lemma this makes ``a / b`` a decision
    procedure for divisibility of rational elements inside Z((z)).
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=ONE):
        num = _coerce_poly(numerator)
        den = _coerce_poly(denominator)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalFunction needs integer or LaurentPoly parts")
        num, den = _canonical(num, den)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    @property
    def is_zero(self):
        return self.numerator.is_zero

    def __bool__(self):
        return not self.numerator.is_zero

    @property
    def is_polynomial(self):
        return self.denominator == ONE

    def series_ord(self):
        """Order of the Z((z)) expansion (= ord of the numerator)."""
        return self.numerator.ord()

    def extreme_coeff(self):
        """Lowest series coefficient; +-1 exactly for subring units."""
        return self.numerator.lowest_coeff()

    def is_unit(self):
        """Unit of S^-1 Z[z,z^-1] (equivalently of Z((z)))."""
        return bool(self) and self.extreme_coeff() in (1, -1)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.denominator, self.numerator)

    def __eq__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.numerator == other.numerator
                and self.denominator == other.denominator)

    def __hash__(self):
        # polynomial values hash like the LaurentPoly they equal
        if self.is_polynomial:
            return hash(self.numerator)
        return hash((self.numerator, self.denominator))

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __add__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        d1, d2 = self.denominator, other.denominator
        # work over lcm(d1, d2) rather than the raw product
        e1, e2 = _split_pair(d1, d2)
        return RationalFunction(self.numerator * e2 + other.numerator * e1,
                                d1 * e2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        # cross-cancel first: the product of the reduced pairs is
        # already in lowest terms, so no gcd on the large product runs
        n1, d2 = _cross_cancel(self.numerator, other.denominator)
        n2, d1 = _cross_cancel(other.numerator, self.denominator)
        return RationalFunction(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero")
        if not self:
            return RationalFunction(ZERO)
        # cancel numerator against numerator and denominator against
        # denominator before the S-membership check on the result
        n1, n2 = _cancel_common(self.numerator, other.numerator)
        d2, d1 = _split_pair(other.denominator, self.denominator)
        return RationalFunction(n1 * d2, d1 * n2)

    def __rtruediv__(self, other):
        other = _coerce_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def pretty(self, var="z"):
        if self.is_polynomial:
            return self.numerator.pretty(var)
        return f"({self.numerator.pretty(var)})/({self.denominator.pretty(var)})"

    def __repr__(self):
        return f"RationalFunction('{self.pretty()}')"

    def to_json(self):
        if self.is_polynomial:
            return self.numerator.to_json()
        return {"num": self.numerator.to_json(), "den": self.denominator.to_json()}


def _coerce_rational(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, LaurentPoly)):
        return RationalFunction(x)
    return NotImplemented


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Primitive gcd over Q of the polynomial parts (monomials stripped),
    with positive leading coefficient; 1 when either side is zero."""
    if a.is_zero or b.is_zero:
        return ONE
    _, da = _to_dense(a)
    _, db = _to_dense(b)
    return LaurentPoly({j: n for j, n in enumerate(_dense_gcd(da, db))})


def _split_pair(d1: LaurentPoly, d2: LaurentPoly):
    """(d1/g, d2/g) for denominators in S, g their gcd with g(0) = 1."""
    if d1 == d2:
        return ONE, ONE
    if d1 == ONE or d2 == ONE:
        return d1, d2
    g = _poly_gcd(d1, d2)
    if g == ONE:
        return d1, d2
    if g.coeff(0) == -1:
        g = -g
    return divexact(d1, g), divexact(d2, g)


def _cross_cancel(num: LaurentPoly, den: LaurentPoly):
    """Divide the gcd over Q out of a numerator and an S-denominator;
    the denominator stays in S (any divisor of it has constant
    coefficient +-1 up to sign)."""
    if num.is_zero or den == ONE:
        return num, den
    g = _poly_gcd(num, den)
    if g == ONE:
        return num, den
    if g.coeff(0) == -1:
        g = -g
    return divexact(num, g), divexact(den, g)


def _cancel_common(a: LaurentPoly, b: LaurentPoly):
    """Divide two Laurent polynomials by their common polynomial factor
    over Q and their common integer content."""
    g = _poly_gcd(a, b)
    if g != ONE:
        if g.highest_coeff() < 0:
            g = -g
        a, b = divexact(a, g), divexact(b, g)
    c = math.gcd(a.content(), b.content())
    if c > 1:
        a = a.map_coeffs(lambda n: n // c)
        b = b.map_coeffs(lambda n: n // c)
    return a, b


def _canonical(num: LaurentPoly, den: LaurentPoly):
    if den.is_zero:
        raise ZeroDivisionError("zero denominator")
    if num.is_zero:
        return ZERO, ONE
    # move the denominator's monomial part into the numerator's support
    k = den.ord()
    den = den.shifted(-k)
    num = num.shifted(-k)
    # common integer content
    g = math.gcd(num.content(), den.content())
    if g > 1:
        num = num.map_coeffs(lambda n: n // g)
        den = den.map_coeffs(lambda n: n // g)
    if den != ONE:
        # cancel the polynomial gcd over Q
        sn, dn = _to_dense(num)
        sd, dd = _to_dense(den)
        gp = _dense_gcd(dn, dd)
        if len(gp) > 1:
            qn = _dense_divexact(dn, gp)
            qd = _dense_divexact(dd, gp)
            if qn is None or qd is None:  # pragma: no cover - Gauss's lemma
                raise AssertionError("gcd cancellation must stay integral")
            num = LaurentPoly({sn + j: n for j, n in enumerate(qn)})
            den = LaurentPoly({sd + j: n for j, n in enumerate(qd)})
    c0 = den.coeff(0)
    if c0 == -1:
        num, den = -num, -den
    elif c0 != 1:
        raise NotInRationalSubring(
            f"denominator {den.pretty()} cannot be normalized into S")
    return num, den


class TruncatedSeries:
    """A window of a Z((z)) element: exact coefficients below a cutoff.

    ``coeffs[i]`` is the coefficient of z^(lowest+i); every exponent
    below ``lowest + len(coeffs)`` (the cutoff) is known exactly, and
    nothing is asserted at or above the cutoff.  If the window is
    nonzero its first stored coefficient is nonzero; a window that is
    known to vanish below the cutoff stores no coefficients and sets
    ``lowest`` to the cutoff itself.

    ``precision`` counts the retained exponents beyond the lowest.
    Arithmetic tracks the surviving window: the min rule under addition,
    the order-shift rule under multiplication.
    """

    __slots__ = ("lowest", "coeffs")

    def __init__(self, lowest, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lowest += 1
        object.__setattr__(self, "lowest", lowest)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    def __setattr__(self, *a):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def of_poly(cls, p, upto):
        """The window of a Laurent polynomial through exponent `upto`."""
        p = _coerce_poly(p)
        if p.is_zero or p.ord() > upto:
            return cls(upto + 1, ())
        lo = p.ord()
        return cls(lo, [p.coeff(j) for j in range(lo, upto + 1)])

    @property
    def cutoff(self):
        """First exponent whose coefficient is unknown."""
        return self.lowest + len(self.coeffs)

    @property
    def precision(self):
        return len(self.coeffs) - 1

    @property
    def is_zero_window(self):
        return not self.coeffs

    def coeff(self, j):
        if j >= self.cutoff:
            raise ValueError(f"coefficient of z^{j} is beyond the window")
        if j < self.lowest:
            return 0
        return self.coeffs[j - self.lowest]

    def truncate(self, upto):
        """Shrink the window to exponents <= upto."""
        if upto + 1 >= self.cutoff:
            return self
        return TruncatedSeries(
            self.lowest, self.coeffs[:max(0, upto + 1 - self.lowest)])

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.lowest == other.lowest and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.lowest, self.coeffs))

    def __neg__(self):
        return TruncatedSeries(self.lowest, [-c for c in self.coeffs])

    def _parts(self):
        """(effective order or None, cutoff)."""
        return (self.lowest if self.coeffs else None), self.cutoff

    def __add__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = TruncatedSeries.of_poly(other, self.cutoff - 1)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        cut = min(self.cutoff, other.cutoff)
        lo = min(self.lowest, other.lowest, cut)
        out = [0] * (cut - lo)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                j = s.lowest + i
                if j < cut:
                    out[j - lo] += c
        return TruncatedSeries(lo, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = TruncatedSeries.of_poly(other, self.cutoff - 1)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            p = _coerce_poly(other)
            if p.is_zero:
                # exact zero: known through self's window shifted arbitrarily
                return TruncatedSeries(self.cutoff, ())
            # exact factor: only the O(z^cutoff) tail limits the result
            cut = self.cutoff + p.ord()
            out = [0] * (cut - (self.lowest + p.ord()))
            for i, c in enumerate(self.coeffs):
                for j, n in p.items():
                    k = self.lowest + i + j
                    if k < cut:
                        out[k - (self.lowest + p.ord())] += c * n
            return TruncatedSeries(self.lowest + p.ord(), out)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        orda, cuta = self._parts()
        ordb, cutb = other._parts()
        cands = [cuta + cutb]
        if orda is not None:
            cands.append(orda + cutb)
        if ordb is not None:
            cands.append(ordb + cuta)
        cut = min(cands)
        if orda is None or ordb is None:
            return TruncatedSeries(cut, ())
        lo = orda + ordb
        out = [0] * max(0, cut - lo)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                k = lo + i + j
                if k < cut:
                    out[k - lo] += a * b
        return TruncatedSeries(lo, out)

    __rmul__ = __mul__

    def pretty(self, var="z"):
        body = LaurentPoly({self.lowest + i: c
                            for i, c in enumerate(self.coeffs)}).pretty(var)
        return f"{body} + O({var}^{self.cutoff})"

    def __repr__(self):
        return f"TruncatedSeries('{self.pretty()}')"


def invert_as_series(p, direction=Direction.PLUS, precision=DEFAULT_PRECISION):
    """Invert a Novikov unit as a series window.

    Returns q with p*q == 1 through the first precision+1 exponents on
    the chosen side.  The mechanism is the geometric series: a unit
    +-z^k(1 - w) with ord(w) >= 1 has inverse +-z^-k(1 + w + w^2 + ...).
    MINUS-side inverses are computed by variable reversal; their window
    is expressed in the reversed variable w = z^-1.

    >>> invert_as_series(LaurentPoly({0: 1, 1: -1}), precision=3)
    TruncatedSeries('1 + z + z^2 + z^3 + O(z^4)')
    """
    p = _coerce_poly(p)
    if precision < 0:
        raise ValueError("precision must be >= 0")
    if not is_novikov_unit(p, direction):
        raise NotAUnit(f"{p!r} is not a unit on the {direction.value} side")
    if direction is Direction.MINUS:
        return invert_as_series(reverse_variable(p), Direction.PLUS, precision)
    k = p.ord()
    sign = p.lowest_coeff()
    # p = sign * z^k * (1 + t) with ord(t) >= 1
    t = {j - k: sign * n for j, n in p.items() if j != k}
    out = [0] * (precision + 1)
    out[0] = 1
    for n in range(1, precision + 1):
        s = 0
        for j, c in t.items():
            if 1 <= j <= n:
                s += c * out[n - j]
        out[n] = -s
    return TruncatedSeries(-k, [sign * c for c in out])


def expand(r, direction=Direction.PLUS, precision=DEFAULT_PRECISION):
    """Series window of a rational element in the chosen completion.

    The window covers every exponent up to ``precision`` inclusive
    (below that cutoff the expansion of an element of S^-1 Z[z,z^-1] is
    determined exactly), so the result is exact whenever r is a
    polynomial whose top exponent is at most ``precision``.  On the
    MINUS side the denominator must be a Z((z^-1))-unit, and the window
    is expressed in the reversed variable w = z^-1.

    >>> expand(RationalFunction(Z, ONE - Z), precision=3)
    TruncatedSeries('z + z^2 + z^3 + O(z^4)')
    """
    r = _coerce_rational(r)
    if direction is Direction.MINUS:
        if not is_novikov_unit(r.denominator, Direction.MINUS):
            raise NotAUnit(
                f"denominator {r.denominator!r} is not a Z((z^-1))-unit")
        return expand(reverse_variable(r), Direction.PLUS, precision)
    if r.is_zero or r.series_ord() > precision:
        return TruncatedSeries(precision + 1, ())
    num = r.numerator
    lo = num.ord()
    n = precision - lo  # need denominator inverse through z^n
    inv = invert_as_series(r.denominator, Direction.PLUS, max(n, 0))
    return (inv * num).truncate(precision)


def truncate_poly(p, upto) -> LaurentPoly:
    """Drop every term of exponent > upto."""
    p = _coerce_poly(p)
    return LaurentPoly({j: n for j, n in p._c.items() if j <= upto})
