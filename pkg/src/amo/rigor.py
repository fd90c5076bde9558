"""Directed-rounded enclosure arithmetic at configurable binary precision.

Every value of interest is represented by an :class:`Enclosure` -- a pair of
representable endpoints ``lo <= hi`` guaranteed to bracket the exact real
number.  All arithmetic rounds outward, so containment survives every
operation.

Two storage regimes sit behind one interface, selected by the working
precision: at exactly 53 bits the endpoints are native ``float`` values and
outward rounding is one ``math.nextafter`` step past the round-to-nearest
result; above (or below) 53 bits the endpoints are MPFR big-floats driven by
paired round-down / round-up contexts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpfr

__all__ = [
    "RigorError",
    "DivisionByEnclosedZero",
    "SqrtOfNegativeEnclosure",
    "SingularEnclosedMatrix",
    "PrecisionContext",
    "Enclosure",
    "EncMatrix2",
    "enc_arith",
    "mat2_ops",
]

Number = Union[int, float, str, Fraction, "mpfr"]

_INF = float("inf")


class RigorError(Exception):
    """Base class for violations of enclosure-arithmetic preconditions."""


class DivisionByEnclosedZero(RigorError):
    pass


class SqrtOfNegativeEnclosure(RigorError):
    pass


class SingularEnclosedMatrix(RigorError):
    pass


def _bits_for_digits(digits: int) -> int:
    return int(math.ceil(digits * math.log2(10)))


def _f_dn(x: float) -> float:
    if math.isnan(x):
        return -_INF
    return math.nextafter(x, -_INF)


def _f_up(x: float) -> float:
    if math.isnan(x):
        return _INF
    return math.nextafter(x, _INF)


class PrecisionContext:
    """Working precision plus the rounding machinery for one computation.

    Instances are immutable; every operation is a pure function of its
    operands and the context, so values can be shared freely between
    workers.
    """

    __slots__ = ("precision_bits", "native", "_down", "_up", "_cache")

    def __init__(self, precision_bits: int):
        if precision_bits < 24:
            raise ValueError("precision_bits must be >= 24")
        object.__setattr__(self, "precision_bits", int(precision_bits))
        object.__setattr__(self, "native", precision_bits == 53)
        object.__setattr__(
            self, "_down", gmpy2.context(precision=self.precision_bits, round=gmpy2.RoundDown)
        )
        object.__setattr__(
            self, "_up", gmpy2.context(precision=self.precision_bits, round=gmpy2.RoundUp)
        )
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("PrecisionContext is immutable")

    def __repr__(self):
        return f"PrecisionContext({self.precision_bits})"

    def __eq__(self, other):
        return isinstance(other, PrecisionContext) and other.precision_bits == self.precision_bits

    def __hash__(self):
        return hash(("PrecisionContext", self.precision_bits))

    def __getstate__(self):
        return self.precision_bits

    def __setstate__(self, bits):
        self.__init__(bits)

    @classmethod
    def from_digits(cls, digits: int) -> "PrecisionContext":
        """Context holding at least ``digits`` decimal digits."""
        return cls(max(24, _bits_for_digits(digits)))

    # -- conversions ---------------------------------------------------------

    @staticmethod
    def _exact(x) -> mpfr:
        """Lossless conversion of int/float/mpfr to mpfr."""
        if isinstance(x, mpfr):
            return x
        if isinstance(x, float):
            return gmpy2.mpfr(x, 53)
        if isinstance(x, int):
            return gmpy2.mpfr(x, max(2, x.bit_length() + 1))
        raise TypeError(f"cannot convert {type(x)} exactly")

    def _cd(self, x) -> mpfr:
        """Convert to a context-precision mpfr, rounding down."""
        if isinstance(x, Fraction):
            return self._down.div(self._exact(x.numerator), self._exact(x.denominator))
        if isinstance(x, str):
            with gmpy2.context(precision=self.precision_bits, round=gmpy2.RoundDown):
                return gmpy2.mpfr(x)
        return self._down.add(self._exact(x), 0)

    def _cu(self, x) -> mpfr:
        """Convert to a context-precision mpfr, rounding up."""
        if isinstance(x, Fraction):
            return self._up.div(self._exact(x.numerator), self._exact(x.denominator))
        if isinstance(x, str):
            with gmpy2.context(precision=self.precision_bits, round=gmpy2.RoundUp):
                return gmpy2.mpfr(x)
        return self._up.add(self._exact(x), 0)

    def _out(self, lo, hi) -> "Enclosure":
        """Package mpfr endpoints, dropping to floats in the native regime."""
        if self.native:
            return Enclosure(self, _mpfr_to_float(lo, -1), _mpfr_to_float(hi, +1))
        return Enclosure(self, lo, hi)

    # -- constructors --------------------------------------------------------

    def point(self, x: Number) -> "Enclosure":
        """Tightest enclosure of a single value (exact for exactly
        representable input)."""
        if self.native and isinstance(x, (int, float)):
            f = float(x)
            if isinstance(x, int) and x != int(f):
                return self._out(self._cd(x), self._cu(x))
            return Enclosure(self, f, f)
        if isinstance(x, (Fraction, str)):
            return self._out(self._cd(x), self._cu(x))
        e = self._exact(x)
        return self._out(self._down.add(e, 0), self._up.add(e, 0))

    def enclose(self, lo: Number, hi: Number) -> "Enclosure":
        out = self._out(self._cd(lo), self._cu(hi))
        if not out.lo <= out.hi:
            raise ValueError(f"invalid enclosure [{lo}, {hi}]")
        return out

    def from_rational(self, num: int, den: int) -> "Enclosure":
        return self.point(Fraction(num, den))

    def zero(self) -> "Enclosure":
        return self.point(0)

    def one(self) -> "Enclosure":
        return self.point(1)

    def whole_line(self) -> "Enclosure":
        if self.native:
            return Enclosure(self, -_INF, _INF)
        return Enclosure(self, mpfr("-inf"), mpfr("inf"))

    def neg_infinity(self) -> "Enclosure":
        if self.native:
            return Enclosure(self, -_INF, -_INF)
        return Enclosure(self, mpfr("-inf"), mpfr("-inf"))

    def pos_infinity(self) -> "Enclosure":
        if self.native:
            return Enclosure(self, _INF, _INF)
        return Enclosure(self, mpfr("inf"), mpfr("inf"))

    def hull(self, *encs: "Enclosure") -> "Enclosure":
        lo = min(e.lo for e in encs)
        hi = max(e.hi for e in encs)
        return Enclosure(self, lo, hi)

    # -- constants -----------------------------------------------------------

    def pi(self) -> "Enclosure":
        if "pi" not in self._cache:
            self._cache["pi"] = self._out(self._down.const_pi(), self._up.const_pi())
        return self._cache["pi"]

    def two_pi(self) -> "Enclosure":
        """Enclosure of 2*pi, computed once per context at full precision."""
        if "two_pi" not in self._cache:
            self._cache["two_pi"] = self._out(
                self._down.mul(self._down.const_pi(), 2),
                self._up.mul(self._up.const_pi(), 2),
            )
        return self._cache["two_pi"]

    def catalan(self) -> "Enclosure":
        """MPFR's Catalan constant.  The independently summed series lives in
        :mod:`amo.experiments` and is cross-checked against this value."""
        return self._out(self._down.const_catalan(), self._up.const_catalan())

    # -- arithmetic ----------------------------------------------------------

    def _chk(self, *xs: "Enclosure"):
        for x in xs:
            if x.ctx is not self and x.ctx != self:
                raise ValueError("mixed-precision enclosure operands")

    def add(self, x: "Enclosure", y: "Enclosure") -> "Enclosure":
        self._chk(x, y)
        if self.native:
            return Enclosure(self, _f_dn(x.lo + y.lo), _f_up(x.hi + y.hi))
        return Enclosure(
            self, _san(self._down.add(x.lo, y.lo), -1), _san(self._up.add(x.hi, y.hi), +1)
        )

    def sub(self, x: "Enclosure", y: "Enclosure") -> "Enclosure":
        self._chk(x, y)
        if self.native:
            return Enclosure(self, _f_dn(x.lo - y.hi), _f_up(x.hi - y.lo))
        return Enclosure(
            self, _san(self._down.sub(x.lo, y.hi), -1), _san(self._up.sub(x.hi, y.lo), +1)
        )

    def neg(self, x: "Enclosure") -> "Enclosure":
        if self.native:
            return Enclosure(self, -x.hi, -x.lo)
        # raw unary minus on mpfr rounds to the *global* context; use the
        # context precision with sound directions instead
        return Enclosure(self, self._down.minus(x.hi), self._up.minus(x.lo))

    def mul(self, x: "Enclosure", y: "Enclosure") -> "Enclosure":
        self._chk(x, y)
        # 0 * inf endpoint products describe the exact set {0}
        if self.native:
            cands = [x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi]
            cands = [0.0 if math.isnan(c) else c for c in cands]
            return Enclosure(self, _f_dn(min(cands)), _f_up(max(cands)))
        dn, up = self._down.mul, self._up.mul
        clo = [dn(x.lo, y.lo), dn(x.lo, y.hi), dn(x.hi, y.lo), dn(x.hi, y.hi)]
        chi = [up(x.lo, y.lo), up(x.lo, y.hi), up(x.hi, y.lo), up(x.hi, y.hi)]
        clo = [mpfr(0) if gmpy2.is_nan(c) else c for c in clo]
        chi = [mpfr(0) if gmpy2.is_nan(c) else c for c in chi]
        return Enclosure(self, min(clo), max(chi))

    def div(self, x: "Enclosure", y: "Enclosure") -> "Enclosure":
        self._chk(x, y)
        if y.lo <= 0 <= y.hi:
            raise DivisionByEnclosedZero(f"divisor {y} encloses zero")
        # inf/inf candidates are limits already covered by finite-endpoint ones
        if self.native:
            cands = [c for c in
                     (x.lo / y.lo, x.lo / y.hi, x.hi / y.lo, x.hi / y.hi)
                     if not math.isnan(c)]
            return Enclosure(self, _f_dn(min(cands)), _f_up(max(cands)))
        dn, up = self._down.div, self._up.div
        clo = [c for c in (dn(x.lo, y.lo), dn(x.lo, y.hi), dn(x.hi, y.lo), dn(x.hi, y.hi))
               if not gmpy2.is_nan(c)]
        chi = [c for c in (up(x.lo, y.lo), up(x.lo, y.hi), up(x.hi, y.lo), up(x.hi, y.hi))
               if not gmpy2.is_nan(c)]
        return Enclosure(self, min(clo), max(chi))

    def sqrt(self, x: "Enclosure") -> "Enclosure":
        if x.hi < 0:
            raise SqrtOfNegativeEnclosure(str(x))
        lo = x.lo if x.lo > 0 else type(x.lo)(0)
        if self.native:
            return Enclosure(self, max(0.0, _f_dn(math.sqrt(lo))), _f_up(math.sqrt(x.hi)))
        return Enclosure(self, self._down.sqrt(lo), self._up.sqrt(self._exact(x.hi)))

    def rootn(self, x: "Enclosure", n: int) -> "Enclosure":
        """n-th root of a nonnegative enclosure."""
        if x.hi < 0:
            raise SqrtOfNegativeEnclosure(str(x))
        lo = x.lo if x.lo > 0 else 0
        return self._out(
            self._down.rootn(self._exact(lo), n), self._up.rootn(self._exact(x.hi), n)
        )

    def pow_int(self, x: "Enclosure", n: int) -> "Enclosure":
        if n == 0:
            return self.one()
        if n < 0:
            return self.div(self.one(), self.pow_int(x, -n))
        dn, up = self._down.pow, self._up.pow
        if n % 2 == 1 or x.lo >= 0:
            lo, hi = dn(self._exact(x.lo), n), up(self._exact(x.hi), n)
        elif x.hi <= 0:
            lo, hi = dn(self._exact(x.hi), n), up(self._exact(x.lo), n)
        else:
            m = self.abs(x).hi
            lo, hi = mpfr(0), up(self._exact(m), n)
        return self._out(lo, hi)

    def abs(self, x: "Enclosure") -> "Enclosure":
        if x.lo >= 0:
            return x
        if x.hi <= 0:
            return self.neg(x)
        if self.native:
            return Enclosure(self, 0.0, max(-x.lo, x.hi))
        return Enclosure(self, mpfr(0), max(self._up.minus(x.lo), x.hi))

    def min(self, x: "Enclosure", y: "Enclosure") -> "Enclosure":
        self._chk(x, y)
        return Enclosure(self, min(x.lo, y.lo), min(x.hi, y.hi))

    def max(self, x: "Enclosure", y: "Enclosure") -> "Enclosure":
        self._chk(x, y)
        return Enclosure(self, max(x.lo, y.lo), max(x.hi, y.hi))

    def exp(self, x: "Enclosure") -> "Enclosure":
        return self._out(self._down.exp(self._exact(x.lo)), self._up.exp(self._exact(x.hi)))

    def log(self, x: "Enclosure") -> "Enclosure":
        if x.lo <= 0:
            raise RigorError(f"log of enclosure touching zero: {x}")
        return self._out(self._down.log(self._exact(x.lo)), self._up.log(self._exact(x.hi)))

    # -- trig on the circle (argument measured in turns) -----------------------

    def cos2pi(self, x: "Enclosure") -> "Enclosure":
        """Enclosure of ``{cos(2*pi*t) : t in x}``.

        Correct across critical points (multiples of 1/2); always a subset
        of [-1, 1].
        """
        return self._circle_trig(x, 0)

    def sin2pi(self, x: "Enclosure") -> "Enclosure":
        # sin(2 pi t) = cos(2 pi (t - 1/4)); the quarter shift is exact in
        # binary, so no extra rounding enters.
        return self._circle_trig(x, -1)

    def sincos2pi(self, x: "Enclosure") -> tuple["Enclosure", "Enclosure"]:
        return self._circle_trig(x, -1), self._circle_trig(x, 0)

    def _circle_trig(self, x: "Enclosure", quarter_shift: int) -> "Enclosure":
        one, neg_one = self.one(), self.point(-1)
        lo = self._exact(x.lo)
        hi = self._exact(x.hi)
        if quarter_shift:
            q = gmpy2.mpfr(quarter_shift * 0.25, 4)  # exact in binary
            lo = self._down.add(lo, q)
            hi = self._up.add(hi, q)
        if not (gmpy2.is_finite(lo) and gmpy2.is_finite(hi)) or self._up.sub(hi, lo) >= 1:
            return self.enclose(-1, 1)
        n = self._down.floor(lo)  # exact integer; any integer shift is harmless
        lo = self._down.sub(lo, n)
        hi = self._up.sub(hi, n)
        tp = self.two_pi()
        rlo = self._down.mul(self._exact(tp.lo), lo)
        rhi = self._up.mul(self._exact(tp.hi), hi)
        if self._up.sub(rhi, rlo) > 3:
            mid = self._down.div(self._down.add(rlo, rhi), 2)
            a = self._cos_range(rlo, mid)
            b = self._cos_range(mid, rhi)
            res = self._out(min(a[0], b[0]), max(a[1], b[1]))
        else:
            res = self._out(*self._cos_range(rlo, rhi))
        return self.min(self.max(res, neg_one), one)

    def _cos_range(self, alo: mpfr, ahi: mpfr) -> tuple[mpfr, mpfr]:
        """Range of cos over a radian interval of width < pi."""
        lo = min(self._down.cos(alo), self._down.cos(ahi))
        hi = max(self._up.cos(alo), self._up.cos(ahi))
        s1d, s1u = self._down.sin(alo), self._up.sin(alo)
        s2d, s2u = self._down.sin(ahi), self._up.sin(ahi)
        if (s1d > 0 and s2d > 0) or (s1u < 0 and s2u < 0):
            return lo, hi  # sin keeps a strict sign: no interior critical point
        if lo > 0:
            return lo, mpfr(1)
        if hi < 0:
            return mpfr(-1), hi
        return mpfr(-1), mpfr(1)


def _san(x, direction: int):
    if gmpy2.is_nan(x):
        return mpfr("-inf") if direction < 0 else mpfr("inf")
    return x


def _mpfr_to_float(x, direction: int) -> float:
    if isinstance(x, float):
        return x
    f = float(x)  # rounds to nearest
    if math.isinf(f) or math.isnan(f):
        return -_INF if (math.isnan(f) and direction < 0) else (_INF if math.isnan(f) else f)
    g = gmpy2.mpfr(f, 53)
    if g == x:
        return f
    if direction < 0:
        return f if g < x else math.nextafter(f, -_INF)
    return f if g > x else math.nextafter(f, _INF)


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` certified to contain one exact real."""

    ctx: PrecisionContext
    lo: object
    hi: object

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"enclosure endpoints out of order: {self.lo} > {self.hi}")

    # geometry ---------------------------------------------------------------

    @property
    def width(self):
        """Upper bound on hi - lo, in the endpoint type."""
        c = self.ctx
        if c.native:
            return _f_up(self.hi - self.lo)
        return c._up.sub(self.hi, self.lo)

    @property
    def mid(self) -> float:
        lo, hi = float(self.lo), float(self.hi)
        if math.isinf(lo) or math.isinf(hi):
            if math.isinf(lo) and math.isinf(hi):
                return 0.0
            return lo if math.isinf(lo) else hi
        return float(self.lo + (self.hi - self.lo) / 2)

    def mid_mpfr(self):
        c = self.ctx
        if c.native:
            return self.lo + (self.hi - self.lo) / 2
        return c._down.add(self.lo, c._down.div(c._down.sub(self.hi, self.lo), 2))

    @property
    def rad(self) -> float:
        """Float upper bound on the radius."""
        if self.lo == self.hi:
            return 0.0
        w = self.width
        return _f_up(float(gmpy2.mpfr(w, 53) if not isinstance(w, float) else w)) / 2

    def contains(self, x) -> bool:
        if isinstance(x, Enclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, Fraction):
            lo = Fraction(*_ratio(self.lo)) if not math.isinf(float(self.lo)) else None
            hi = Fraction(*_ratio(self.hi)) if not math.isinf(float(self.hi)) else None
            return (lo is None or lo <= x) and (hi is None or x <= hi)
        return self.lo <= x <= self.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def is_finite(self) -> bool:
        return not (math.isinf(float(self.lo)) or math.isinf(float(self.hi)))

    # certain (set-wise) comparisons -------------------------------------------

    def certainly_lt(self, other: "Enclosure") -> bool:
        return self.hi < other.lo

    def certainly_gt(self, other: "Enclosure") -> bool:
        return self.lo > other.hi

    def certainly_positive(self) -> bool:
        return self.lo > 0

    # operator sugar -----------------------------------------------------------

    def _coerce(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return other
        return self.ctx.point(other)

    def __add__(self, other):
        return self.ctx.add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.ctx.sub(self, self._coerce(other))

    def __rsub__(self, other):
        return self.ctx.sub(self._coerce(other), self)

    def __mul__(self, other):
        return self.ctx.mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.ctx.div(self, self._coerce(other))

    def __rtruediv__(self, other):
        return self.ctx.div(self._coerce(other), self)

    def __neg__(self):
        return self.ctx.neg(self)

    def __abs__(self):
        return self.ctx.abs(self)

    def __pow__(self, n: int):
        return self.ctx.pow_int(self, n)

    # serialization --------------------------------------------------------------

    def to_hex(self) -> tuple[str, str]:
        """Bit-exact hexadecimal endpoint pair."""
        return _hex_of(self.lo), _hex_of(self.hi)

    @staticmethod
    def from_hex(ctx: PrecisionContext, lo_hex: str, hi_hex: str) -> "Enclosure":
        return Enclosure(ctx, _hex_parse(ctx, lo_hex, -1), _hex_parse(ctx, hi_hex, +1))

    def midrad_str(self, digits: int = 12) -> str:
        if not self.is_finite():
            return f"[{self.lo}, {self.hi}]"
        return f"{_dec_directed(self.mid_mpfr(), digits, 0)} ± {self.rad:.3g}"

    def directed_decimal(self, digits: int = 12) -> tuple[str, str]:
        """Decimal endpoints, lo rounded down and hi rounded up, so the
        printed pair still brackets the exact value."""
        lo = "-inf" if math.isinf(float(self.lo)) and float(self.lo) < 0 else _dec_directed(self.lo, digits, -1)
        hi = "inf" if math.isinf(float(self.hi)) and float(self.hi) > 0 else _dec_directed(self.hi, digits, +1)
        return lo, hi

    def __repr__(self):
        if not self.is_finite():
            return f"Enclosure[{self.lo}, {self.hi}]"
        return f"Enclosure[{self.midrad_str(15)}]"


def _ratio(x):
    if isinstance(x, float):
        return x.as_integer_ratio()
    return x.as_integer_ratio()


def _hex_of(x) -> str:
    f = float(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x.hex()
    if not gmpy2.is_finite(x):
        return "inf" if x > 0 else "-inf"
    return "{:a}".format(x)


def _hex_parse(ctx: PrecisionContext, s: str, direction: int):
    if s in ("inf", "-inf"):
        return float(s) if ctx.native else mpfr(s)
    if ctx.native:
        return float.fromhex(s)
    rnd = gmpy2.RoundDown if direction < 0 else gmpy2.RoundUp
    with gmpy2.context(precision=ctx.precision_bits, round=rnd):
        return gmpy2.mpfr(s, 0, 16)


def _dec_directed(x, digits: int, direction: int) -> str:
    """Decimal string with `digits` significant digits, rounded toward the
    requested direction (0 = round half away, display use only).  Exact
    integer arithmetic throughout, so huge and tiny magnitudes are handled
    rigorously."""
    num, den = _ratio(x)
    if num == 0:
        return "0." + "0" * max(0, digits - 1)
    neg = num < 0
    num = abs(num)
    # exact decimal exponent: e with 10^e <= num/den < 10^(e+1)
    ln, ld = len(str(num)), len(str(den))
    shift0 = digits + 2 + (ld - ln)
    scaled = num * 10 ** shift0 // den if shift0 >= 0 else num // (den * 10 ** (-shift0))
    e = len(str(scaled)) - 1 - shift0
    # keep `digits` significant digits: q ~ value * 10^(digits-1-e)
    shift = digits - 1 - e
    if shift >= 0:
        q, r = divmod(num * 10 ** shift, den)
    else:
        q, r = divmod(num, den * 10 ** (-shift))
    if r != 0:
        if direction == 0:
            if 2 * r >= (den if shift >= 0 else den * 10 ** (-shift)):
                q += 1
        elif (direction > 0) != neg:
            q += 1
    if len(str(q)) > digits:  # bumped into the next decade: exact power of ten
        q //= 10
        e += 1
    s = str(q)
    sign = "-" if neg else ""
    if -4 <= e <= digits + 3:
        return sign + _positional(s, e, digits)
    mant = s[0] + "." + s[1:] if len(s) > 1 else s
    return f"{sign}{mant}e{e:+03d}"


def _positional(s: str, e: int, digits: int) -> str:
    if e >= digits - 1:
        return s + "0" * (e - digits + 1)
    if e >= 0:
        return s[: e + 1] + "." + s[e + 1 :]
    return "0." + "0" * (-e - 1) + s


@dataclass(frozen=True)
class EncMatrix2:
    """2x2 matrix of enclosures with entry-wise containment semantics."""

    a11: Enclosure
    a12: Enclosure
    a21: Enclosure
    a22: Enclosure

    @property
    def ctx(self) -> PrecisionContext:
        return self.a11.ctx

    @staticmethod
    def identity(ctx: PrecisionContext) -> "EncMatrix2":
        one, zero = ctx.one(), ctx.zero()
        return EncMatrix2(one, zero, zero, one)

    @staticmethod
    def diag(d1: Enclosure, d2: Enclosure) -> "EncMatrix2":
        z = d1.ctx.zero()
        return EncMatrix2(d1, z, z, d2)

    def mul(self, other: "EncMatrix2") -> "EncMatrix2":
        a, b = self, other
        return EncMatrix2(
            a.a11 * b.a11 + a.a12 * b.a21,
            a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21,
            a.a21 * b.a12 + a.a22 * b.a22,
        )

    def add(self, other: "EncMatrix2") -> "EncMatrix2":
        return EncMatrix2(
            self.a11 + other.a11, self.a12 + other.a12,
            self.a21 + other.a21, self.a22 + other.a22,
        )

    def sub(self, other: "EncMatrix2") -> "EncMatrix2":
        return EncMatrix2(
            self.a11 - other.a11, self.a12 - other.a12,
            self.a21 - other.a21, self.a22 - other.a22,
        )

    def scale(self, s: Enclosure) -> "EncMatrix2":
        return EncMatrix2(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)

    def neg(self) -> "EncMatrix2":
        return EncMatrix2(-self.a11, -self.a12, -self.a21, -self.a22)

    def apply(self, v: tuple[Enclosure, Enclosure]) -> tuple[Enclosure, Enclosure]:
        x, y = v
        return (self.a11 * x + self.a12 * y, self.a21 * x + self.a22 * y)

    def det(self) -> Enclosure:
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self) -> Enclosure:
        return self.a11 + self.a22

    def max_abs_entry(self) -> Enclosure:
        c = self.ctx
        m = c.abs(self.a11)
        for e in (self.a12, self.a21, self.a22):
            m = c.max(m, c.abs(e))
        return m

    def inverse_exact_adjugate(self) -> "EncMatrix2":
        d = self.det()
        if d.lo <= 0 <= d.hi:
            raise SingularEnclosedMatrix(f"det {d} encloses zero")
        return EncMatrix2(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d)

    def entries(self):
        return (self.a11, self.a12, self.a21, self.a22)


# -- spec-surface dispatch forms ----------------------------------------------

_BINARY = {"add", "sub", "mul", "div", "min", "max"}
_UNARY = {"neg", "sqrt", "abs"}


def enc_arith(op: str, x: Enclosure, y=None) -> Enclosure:
    """Dispatch form of the basic arithmetic: op in {add, sub, mul, div, neg,
    sqrt, pow_int, abs, min, max}."""
    ctx = x.ctx
    if op in _BINARY:
        return getattr(ctx, op)(x, y)
    if op in _UNARY:
        return getattr(ctx, op)(x)
    if op == "pow_int":
        return ctx.pow_int(x, int(y))
    raise ValueError(f"unknown op {op!r}")


def mat2_ops(op: str, A: EncMatrix2, B: EncMatrix2 | None = None):
    if op == "mul":
        return A.mul(B)
    if op == "add":
        return A.add(B)
    if op == "sub":
        return A.sub(B)
    if op == "max_abs_entry":
        return A.max_abs_entry()
    if op == "det":
        return A.det()
    if op == "inverse_exact_adjugate":
        return A.inverse_exact_adjugate()
    raise ValueError(f"unknown op {op!r}")
