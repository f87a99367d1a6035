"""Scalar backends.

Two realizations of the scalar field are used throughout the package:

* exact: :class:`fractions.Fraction` (plain ``int`` is accepted too);
* float: :class:`XFloat`, a complex double mantissa with a separate binary
  exponent, so values like ``2**(10**6)`` neither overflow nor underflow.

Generic code is written with ordinary operators; mixing an ``XFloat`` with
an ``int``/``Fraction``/``float`` promotes to ``XFloat``.
"""

from __future__ import annotations

import cmath
import decimal
import math
import re
import sys
from fractions import Fraction
from numbers import Number

from .errors import ScalarParseError

EXACT = "exact"
FLOAT = "float"

# exponents are renormalized on every operation; ldexp beyond this many
# bits of difference makes the smaller addend vanish anyway
_ALIGN_LIMIT = 1100


def _scale(m: complex, k: int) -> complex:
    return complex(math.ldexp(m.real, k), math.ldexp(m.imag, k))


class XFloat:
    """Complex float with an unbounded power-of-two exponent.

    The value is ``m * 2**e`` with ``max(|m.real|, |m.imag|)`` in
    ``[0.5, 1)`` (or ``m == 0`` and ``e == 0``).
    """

    __slots__ = ("m", "e")

    def __init__(self, m=0.0, e: int = 0):
        if isinstance(m, XFloat):
            self.m, self.e = m.m, m.e + e
            return
        if isinstance(m, int) and not isinstance(m, bool) and abs(m) >= 1 << 53:
            shift = m.bit_length() - 60
            m, e = float(m >> shift), e + shift
        elif isinstance(m, Fraction):
            x = XFloat(m.numerator, e) / XFloat(m.denominator)
            self.m, self.e = x.m, x.e
            return
        m = complex(m)
        if m == 0:
            self.m, self.e = 0j, 0
            return
        if not (math.isfinite(m.real) and math.isfinite(m.imag)):
            raise OverflowError("XFloat mantissa must be finite")
        _, k = math.frexp(max(abs(m.real), abs(m.imag)))
        self.m = _scale(m, -k)
        self.e = e + k

    @classmethod
    def _raw(cls, m: complex, e: int) -> "XFloat":
        # m is known finite; normalize without the type dispatch of __init__
        x = object.__new__(cls)
        if m == 0:
            x.m, x.e = 0j, 0
            return x
        _, k = math.frexp(max(abs(m.real), abs(m.imag)))
        x.m = _scale(m, -k)
        x.e = e + k
        return x

    # -- conversion ---------------------------------------------------------
    def __complex__(self) -> complex:
        if self.e > 1030:
            if self.m == 0:
                return 0j
            return complex(
                math.copysign(math.inf, self.m.real) if self.m.real else 0.0,
                math.copysign(math.inf, self.m.imag) if self.m.imag else 0.0,
            )
        return _scale(self.m, self.e)

    def __float__(self) -> float:
        if self.m.imag != 0:
            raise TypeError("XFloat has a nonzero imaginary part")
        return complex(self).real

    @property
    def real(self) -> "XFloat":
        return XFloat._raw(complex(self.m.real, 0.0), self.e)

    @property
    def imag(self) -> "XFloat":
        return XFloat._raw(complex(self.m.imag, 0.0), self.e)

    def is_real(self) -> bool:
        return self.m.imag == 0

    def conjugate(self) -> "XFloat":
        return XFloat._raw(self.m.conjugate(), self.e)

    def log2abs(self) -> float:
        if self.m == 0:
            return -math.inf
        return math.log2(abs(self.m)) + self.e

    def log10abs(self) -> float:
        return self.log2abs() * math.log10(2.0)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, XFloat):
            other = as_xfloat(other)
        if self.m == 0:
            return other
        if other.m == 0:
            return self
        d = self.e - other.e
        if d >= 0:
            if d > _ALIGN_LIMIT:
                return self
            return XFloat._raw(self.m + _scale(other.m, -d), self.e)
        if -d > _ALIGN_LIMIT:
            return other
        return XFloat._raw(_scale(self.m, d) + other.m, other.e)

    __radd__ = __add__

    def __neg__(self):
        x = object.__new__(XFloat)
        x.m, x.e = -self.m, self.e
        return x

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, XFloat):
            other = as_xfloat(other)
        return self + (-other)

    def __rsub__(self, other):
        return as_xfloat(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, XFloat):
            other = as_xfloat(other)
        return XFloat._raw(self.m * other.m, self.e + other.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, XFloat):
            other = as_xfloat(other)
        if other.m == 0:
            raise ZeroDivisionError("XFloat division by zero")
        return XFloat._raw(self.m / other.m, self.e - other.e)

    def __rtruediv__(self, other):
        return as_xfloat(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("XFloat only supports integer powers")
        if k < 0:
            return XFloat._raw(1.0 + 0j, 0) / (self ** (-k))
        result = XFloat._raw(1.0 + 0j, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __abs__(self):
        return XFloat._raw(complex(abs(self.m), 0.0), self.e)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, XFloat):
            return self.m == other.m and self.e == other.e
        if isinstance(other, Number):
            try:
                other = as_xfloat(other)
            except (TypeError, OverflowError):
                return NotImplemented
            return self.m == other.m and self.e == other.e
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.e))

    def __bool__(self):
        return self.m != 0

    def __repr__(self):
        return f"XFloat({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def as_xfloat(x) -> XFloat:
    if isinstance(x, XFloat):
        return x
    if isinstance(x, (int, float, complex, Fraction)):
        return XFloat(x)
    if isinstance(x, Number):
        return XFloat(complex(x))
    raise TypeError(f"cannot convert {type(x).__name__} to XFloat")


def is_float_scalar(x) -> bool:
    return isinstance(x, (XFloat, float, complex))


def backend_of(values) -> str:
    """``"float"`` if any value is a float-like scalar, else ``"exact"``."""
    return FLOAT if any(is_float_scalar(v) for v in values) else EXACT


def to_backend(x, backend: str):
    if backend == FLOAT:
        return as_xfloat(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"{x!r} has no exact rational representation")


def is_zero(x) -> bool:
    return x == 0


def magnitude_log2(x) -> float:
    """log2 of |x| for either backend (``-inf`` for zero)."""
    if isinstance(x, XFloat):
        return x.log2abs()
    if x == 0:
        return -math.inf
    if isinstance(x, Fraction):
        return math.log2(abs(x.numerator)) - math.log2(x.denominator)
    return math.log2(abs(x))


def relative_deviation(x, y) -> float:
    """|x - y| / max(|x|, |y|), computed without overflow."""
    if x == 0 and y == 0:
        return 0.0
    x, y = as_xfloat(x), as_xfloat(y)
    diff = (x - y).log2abs()
    ref = max(x.log2abs(), y.log2abs())
    if diff == -math.inf:
        return 0.0
    return 2.0 ** (diff - ref)


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_REAL = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


def _split_complex(s: str):
    """Split ``"x+yi"`` into (``"x"`` or None, ``"+y"``); None if not complex."""
    if s[-1] not in "ij":
        return None
    body = s[:-1]
    cut = 0
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            cut = k
            break
    re_txt, im_txt = (body[:cut], body[cut:]) if cut else (None, body)
    if im_txt in ("", "+", "-"):
        im_txt += "1"
    return re_txt, im_txt


_DEC = decimal.Context(prec=40, Emax=decimal.MAX_EMAX, Emin=decimal.MIN_EMIN)


def _decimal_to_xfloat(text: str) -> XFloat:
    value = float(text)
    d = _DEC.create_decimal(text)
    if d == 0 or (math.isfinite(value) and abs(value) >= sys.float_info.min):
        return XFloat(value)
    # outside the normal double range (subnormals lose digits): split off a
    # power of two in decimal arithmetic
    k = int((_DEC.ln(abs(d)) / _DEC.ln(decimal.Decimal(2))).to_integral_value(decimal.ROUND_FLOOR))
    m = _DEC.divide(d, _DEC.power(decimal.Decimal(2), k))
    return XFloat(float(m), k)


def parse_scalar(text, exact_decimals: bool = False):
    """Parse ``"n"``, ``"n/d"``, ``"1.5e-3"``, ``"x+yi"`` into a scalar.

    Integers and ``n/d`` give :class:`Fraction`. Decimals give
    :class:`XFloat` unless ``exact_decimals`` asks for a Fraction. Complex
    input always gives :class:`XFloat`.
    """
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    if isinstance(text, XFloat):
        return text
    if isinstance(text, (float, complex)):
        return as_xfloat(text)
    if not isinstance(text, str):
        raise ScalarParseError(f"not a scalar: {text!r}")
    s = text.strip().replace(" ", "")
    if not s:
        raise ScalarParseError("empty scalar string")
    if _RATIONAL.match(s):
        try:
            return Fraction(s)
        except ZeroDivisionError as exc:
            raise ScalarParseError(f"zero denominator in {text!r}") from exc
    parts = _split_complex(s)
    if parts is None:
        if not _REAL.match(s):
            raise ScalarParseError(f"cannot parse scalar {text!r}")
        if exact_decimals:
            return Fraction(s)
        return _decimal_to_xfloat(s)
    re_txt, im_txt = parts
    if (re_txt is not None and not _REAL.match(re_txt)) or not _REAL.match(im_txt):
        raise ScalarParseError(f"cannot parse scalar {text!r}")
    re_part = _decimal_to_xfloat(re_txt) if re_txt else XFloat(0.0)
    im_part = _decimal_to_xfloat(im_txt)
    return re_part + im_part * XFloat(1j)


def _format_real(m: float, e: int) -> str:
    if m == 0:
        return "0"
    if -1000 < e < 1000:
        return repr(math.ldexp(m, e))
    d = _DEC.multiply(decimal.Decimal(m), _DEC.power(decimal.Decimal(2), e))
    return format(_DEC.plus(d).normalize(_DEC), ".16e").replace("E", "e")


def format_scalar(x) -> str:
    """Text form that :func:`parse_scalar` reads back.

    Exact values print as ``n`` or ``n/d``; floats as Python's shortest
    repr, complex as ``x+yi``; out-of-range floats in decimal scientific
    notation with an unbounded exponent.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    x = as_xfloat(x)
    re_s = _format_real(x.m.real, x.e)
    if x.m.imag == 0:
        return re_s
    im_s = _format_real(x.m.imag, x.e)
    if not im_s.startswith("-"):
        im_s = "+" + im_s
    if x.m.real == 0:
        return im_s.lstrip("+") + "i"
    return f"{re_s}{im_s}i"


def to_python_number(x):
    """Best-effort conversion to a plain ``complex``/``float``."""
    if isinstance(x, XFloat):
        c = complex(x)
        return c.real if c.imag == 0 else c
    if isinstance(x, Fraction):
        return float(x)
    return x


def phase(x) -> float:
    return cmath.phase(complex(as_xfloat(x).m))
