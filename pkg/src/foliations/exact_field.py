"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

A :class:`Scalar` is stored as ``(a + b*sqrt(d)) / c`` with Python integers,
``c > 0`` and ``gcd(a, b, c) == 1``.  ``d`` is zero (plain rationals) or a
square-free integer >= 2.  Comparisons are decided with integer arithmetic
only, so there is never a tolerance anywhere downstream.

    >>> x = Scalar.parse("-1/2+1/2*sqrt(5)")
    >>> x * x + x
    1
    >>> (1 / Scalar(1, 1, 2))
    -1+1*sqrt(2)
"""

from fractions import Fraction
from math import gcd, isqrt
import numbers
import re

from .errors import DivisionByZero, MixedRadicand, ScalarSyntaxError

__all__ = ["Scalar", "arith", "sign", "is_squarefree", "lift"]


def is_squarefree(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def _check_radicand(d):
    if not isinstance(d, int) or d < 0 or d == 1 or (d > 1 and not is_squarefree(d)):
        raise ValueError(f"radicand must be 0 or a square-free integer >= 2, got {d!r}")


class Scalar:
    """Element ``rational + radical*sqrt(d)`` of Q(sqrt(d))."""

    __slots__ = ("_a", "_b", "_c", "_d", "_hash")

    def __init__(self, rational=0, radical=0, d=0):
        _check_radicand(d)
        r = Fraction(rational)
        s = Fraction(radical)
        if d == 0 and s != 0:
            raise ValueError("non-zero radical part needs a radicand d >= 2")
        c = r.denominator * s.denominator // gcd(r.denominator, s.denominator)
        self._set(r.numerator * (c // r.denominator), s.numerator * (c // s.denominator), c, d)

    @classmethod
    def _raw(cls, a, b, c, d):
        obj = object.__new__(cls)
        obj._set(a, b, c, d)
        return obj

    def _set(self, a, b, c, d):
        if c < 0:
            a, b, c = -a, -b, -c
        if b == 0:
            g = gcd(a, c)
        else:
            g = gcd(gcd(a, b), c)
        if g > 1:
            a //= g
            b //= g
            c //= g
        self._a, self._b, self._c, self._d = a, b, c, d
        self._hash = None

    # -- accessors ---------------------------------------------------------

    @property
    def d(self):
        return self._d

    @property
    def rational_part(self):
        return Fraction(self._a, self._c)

    @property
    def radical_part(self):
        return Fraction(self._b, self._c)

    def is_rational(self):
        return self._b == 0

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other._d == self._d:
                return other
            # rationals embed in every field
            if other._b == 0:
                return Scalar._raw(other._a, 0, other._c, self._d)
            if self._b == 0:
                return None
            raise MixedRadicand(f"cannot combine sqrt({self._d}) with sqrt({other._d})")
        if type(other) is int:
            obj = object.__new__(Scalar)
            obj._a, obj._b, obj._c, obj._d, obj._hash = other, 0, 1, self._d, None
            return obj
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Scalar._raw(f.numerator, 0, f.denominator, self._d)
        return NotImplemented

    def _pair(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented, None
        if o is None:
            # self is rational, other carries the radical
            return Scalar._raw(self._a, 0, self._c, other._d), other
        return self, o

    def with_radicand(self, d):
        """Return the same number viewed inside Q(sqrt(d))."""
        if d == self._d:
            return self
        if self._b != 0:
            raise MixedRadicand(f"cannot move sqrt({self._d}) into Q(sqrt({d}))")
        _check_radicand(d)
        return Scalar._raw(self._a, 0, self._c, d)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        x, y = self._pair(other)
        if x is NotImplemented:
            return NotImplemented
        return Scalar._raw(x._a * y._c + y._a * x._c, x._b * y._c + y._b * x._c, x._c * y._c, x._d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self._a, -self._b, self._c, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        x, y = self._pair(other)
        if x is NotImplemented:
            return NotImplemented
        return Scalar._raw(x._a * y._c - y._a * x._c, x._b * y._c - y._b * x._c, x._c * y._c, x._d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        x, y = self._pair(other)
        if x is NotImplemented:
            return NotImplemented
        d = x._d
        return Scalar._raw(
            x._a * y._a + x._b * y._b * d, x._a * y._b + x._b * y._a, x._c * y._c, d
        )

    __rmul__ = __mul__

    def inverse(self):
        a, b, c, d = self._a, self._b, self._c, self._d
        norm = a * a - b * b * d
        if norm == 0:
            raise DivisionByZero("division by zero in Q(sqrt(%d))" % d)
        # c/(a + b r) = c (a - b r) / norm
        return Scalar._raw(c * a, -c * b, norm, d)

    def __truediv__(self, other):
        x, y = self._pair(other)
        if x is NotImplemented:
            return NotImplemented
        return x * y.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order -------------------------------------------------------------

    def sign(self):
        a, b = self._a, self._b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        lhs, rhs = a * a, b * b * self._d
        if lhs > rhs:
            return sa
        if lhs < rhs:
            return sb
        return 0

    def _cmp(self, other):
        diff = self - other
        if diff is NotImplemented:
            return NotImplemented
        return diff.sign()

    def __lt__(self, other):
        s = self._cmp(other)
        return s if s is NotImplemented else s < 0

    def __le__(self, other):
        s = self._cmp(other)
        return s if s is NotImplemented else s <= 0

    def __gt__(self, other):
        s = self._cmp(other)
        return s if s is NotImplemented else s > 0

    def __ge__(self, other):
        s = self._cmp(other)
        return s if s is NotImplemented else s >= 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if self._b == 0 and other._b == 0:
                return self._a == other._a and self._c == other._c
            return (self._a, self._b, self._c, self._d) == (other._a, other._b, other._c, other._d)
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return self._b == 0 and self._a == f.numerator and self._c == f.denominator
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self._b == 0:
                self._hash = hash(Fraction(self._a, self._c))
            else:
                self._hash = hash((self._a, self._b, self._c, self._d))
        return self._hash

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def floor(self):
        a, b, c, d = self._a, self._b, self._c, self._d
        if b >= 0:
            root = isqrt(b * b * d)
        else:
            root = -isqrt(b * b * d) - 1
        n = (a + root) // c
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def ceil(self):
        return -((-self).floor())

    # -- conversion --------------------------------------------------------

    def __float__(self):
        if self._b == 0:
            return float(Fraction(self._a, self._c))
        return float(Fraction(self._a, self._c)) + float(Fraction(self._b, self._c)) * self._d ** 0.5

    def to_mpf(self, prec=128):
        import mpmath

        with mpmath.workprec(prec):
            return (mpmath.mpf(self._a) + mpmath.mpf(self._b) * mpmath.sqrt(self._d)) / self._c

    def __str__(self):
        r, s = self.rational_part, self.radical_part
        if s == 0:
            return _frac_str(r)
        rad = _frac_str(abs(s)) + "*sqrt(%d)" % self._d
        if r == 0:
            return ("-" if s < 0 else "") + rad
        return _frac_str(r) + ("-" if s < 0 else "+") + rad

    def __repr__(self):
        return str(self)

    def __format__(self, spec):
        if spec:
            return format(float(self), spec)
        return str(self)

    # -- parsing -----------------------------------------------------------

    @classmethod
    def parse(cls, text, d=None):
        """Parse ``"p/q"`` or ``"p/q+r/s*sqrt(d)"`` (signs and spaces allowed).

        If ``d`` is given the result lives in Q(sqrt(d)); a different radicand
        in the text is an error.
        """
        if isinstance(text, Scalar):
            return text if d is None else text.with_radicand(d)
        if isinstance(text, (int, Fraction)):
            return cls(text, 0, d or 0)
        if not isinstance(text, str):
            raise ScalarSyntaxError(f"cannot parse {text!r} as a scalar")
        if re.search(r"[\d)]\s+[\d(]", text):
            raise ScalarSyntaxError(f"bad scalar syntax: {text!r}")
        s = text.replace(" ", "")
        if not s:
            raise ScalarSyntaxError("empty scalar")
        pos = 0
        rational = Fraction(0)
        radical = Fraction(0)
        found_d = None
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ScalarSyntaxError(f"bad scalar syntax: {text!r}")
            sgn = -1 if m.group("sign") == "-" else 1
            if pos > 0 and not m.group("sign"):
                raise ScalarSyntaxError(f"bad scalar syntax: {text!r}")
            coef = m.group("coef")
            root = m.group("root") or m.group("root2")
            if coef is None and root is None:
                raise ScalarSyntaxError(f"bad scalar syntax: {text!r}")
            value = Fraction(coef) if coef is not None else Fraction(1)
            if root is None:
                rational += sgn * value
            else:
                k = int(root)
                if found_d is not None and k != found_d:
                    raise ScalarSyntaxError(f"two radicands in {text!r}")
                found_d = k
                radical += sgn * value
            pos = m.end()
        if found_d is not None and found_d in (0, 1):
            # sqrt(0), sqrt(1) are rational
            rational += radical * found_d
            radical = Fraction(0)
            found_d = None
        if found_d is not None and not is_squarefree(found_d):
            raise ScalarSyntaxError(f"radicand {found_d} is not square-free")
        if d is not None:
            _check_radicand(d)
            if found_d is not None and found_d != d and radical != 0:
                raise MixedRadicand(f"{text!r} uses sqrt({found_d}) but context radicand is {d}")
            return cls(rational, radical, d if (radical != 0 or d) else 0)
        return cls(rational, radical, found_d if radical != 0 else 0)


_TERM = re.compile(
    r"(?P<sign>[+-])?"
    r"(?:(?P<coef>\d+(?:/\d+)?)(?:\*sqrt\((?P<root>\d+)\))?"
    r"|sqrt\((?P<root2>\d+)\))"
)


def _frac_str(f):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def lift(x, d):
    """Coerce an int, Fraction, string or Scalar into Q(sqrt(d))."""
    if isinstance(x, Scalar):
        return x.with_radicand(d)
    if isinstance(x, str):
        return Scalar.parse(x, d)
    if isinstance(x, numbers.Rational):
        return Scalar(Fraction(x), 0, d)
    raise TypeError(f"cannot lift {x!r} into Q(sqrt({d}))")


def arith(op, x, y=None):
    """Functional form of the field operations (``add``, ``sub``, ``mul``, ``div``, ``neg``)."""
    if op == "neg":
        return -x
    if x.d != y.d and not (x.is_rational() or y.is_rational()):
        raise MixedRadicand(f"cannot combine sqrt({x.d}) with sqrt({y.d})")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def sign(x):
    return x.sign()
