"""Truncated formal power series over exact rationals.

A :class:`Series` is a tuple of :class:`fractions.Fraction` coefficients
together with an explicit order ``N``: coefficient ``i`` is the coefficient
of ``u**i`` and everything from ``u**N`` on is unknown.  Binary operations
truncate to the smaller order of their operands, so precision loss is always
visible in the result's ``order``.
"""

from __future__ import annotations

import os
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

from .errors import (
    BadConstantTerm,
    InsufficientOrder,
    NonzeroConstantTerm,
    NotReversible,
    ZeroConstantTerm,
)

Rat = Fraction
RatLike = Union[int, Fraction, str]

DEFAULT_ORDER = 32
ORDER_ENV_VAR = "ORIENT_RR_ORDER"


def default_order() -> int:
    """Default truncation order, overridable through ``ORIENT_RR_ORDER``."""
    raw = os.environ.get(ORDER_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_ORDER
    value = int(raw)
    if value < 1:
        raise ValueError(f"{ORDER_ENV_VAR} must be a positive integer, got {raw!r}")
    return value


def to_rat(value: RatLike) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Floats are refused: a float has already lost the exact value the caller
    meant, and accepting it would let rounding leak into every result.
    """
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimal points and exponents are rejected."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rat(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Series:
    """Immutable truncated power series in one variable ``u``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[RatLike] = (), order: int | None = None):
        c = [to_rat(x) for x in coeffs]
        if order is None:
            order = len(c)
        if order < 0:
            raise ValueError("order must be nonnegative")
        if len(c) < order:
            c.extend([Fraction(0)] * (order - len(c)))
        self._c: tuple[Fraction, ...] = tuple(c[:order])

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...]) -> "Series":
        s = object.__new__(cls)
        s._c = coeffs
        return s

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls((1,), order)

    @classmethod
    def variable(cls, order: int) -> "Series":
        """The series ``u``."""
        return cls((0, 1), order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff: RatLike = 1) -> "Series":
        return cls([0] * k + [coeff], order)

    # -- basic access ---------------------------------------------------
    @property
    def order(self) -> int:
        return len(self._c)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def __getitem__(self, i: int) -> Fraction:
        if not 0 <= i < len(self._c):
            raise InsufficientOrder(f"coefficient u^{i} is unknown at order {self.order}")
        return self._c[i]

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise InsufficientOrder(f"cannot raise order {self.order} to {order}")
        return Series._raw(self._c[:order])

    def valuation(self) -> int | None:
        """Index of the first nonzero known coefficient, or None."""
        for i, x in enumerate(self._c):
            if x:
                return i
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"Series([{', '.join(map(format_rat, self._c))}], order={self.order})"

    def __str__(self) -> str:
        return format_series(self)

    # -- ring structure -------------------------------------------------
    def _coerce(self, other) -> "Series | None":
        if isinstance(other, Series):
            return other
        try:
            return Series((to_rat(other),), self.order)
        except TypeError:
            return None

    def __add__(self, other) -> "Series":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return Series._raw(tuple(self._c[i] + o._c[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series._raw(tuple(-x for x in self._c))

    def __sub__(self, other) -> "Series":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def scale(self, c: RatLike) -> "Series":
        c = to_rat(c)
        return Series._raw(tuple(c * x for x in self._c))

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        n = min(self.order, other.order)
        a, b = self._c, other._c
        out = []
        for k in range(n):
            acc = Fraction(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc += a[i] * b[k - i]
            out.append(acc)
        return Series._raw(tuple(out))

    def __rmul__(self, other) -> "Series":
        return self.__mul__(other)

    def __truediv__(self, other) -> "Series":
        if isinstance(other, Series):
            return self * other.invert()
        c = to_rat(other)
        return self.scale(1 / c)

    def __pow__(self, k: int) -> "Series":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.invert()
        k = abs(k)
        result = Series.one(self.order)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- shifts and calculus --------------------------------------------
    def shift_down(self, k: int = 1) -> "Series":
        """Divide by ``u**k``; the first ``k`` coefficients must vanish."""
        if any(self._c[:k]):
            raise ValueError(f"series is not divisible by u^{k}")
        return Series._raw(self._c[k:])

    def shift_up(self, k: int = 1) -> "Series":
        """Multiply by ``u**k``; the order grows by ``k``."""
        return Series._raw((Fraction(0),) * k + self._c)

    def derivative(self) -> "Series":
        return Series._raw(tuple(i * self._c[i] for i in range(1, self.order)))

    def integral(self) -> "Series":
        return Series._raw((Fraction(0),) + tuple(x / (i + 1) for i, x in enumerate(self._c)))

    def dilate(self, c: RatLike) -> "Series":
        """The series ``a(c*u)``."""
        c = to_rat(c)
        out, p = [], Fraction(1)
        for x in self._c:
            out.append(x * p)
            p *= c
        return Series._raw(tuple(out))

    # -- inverse, composition, reversion --------------------------------
    def invert(self) -> "Series":
        """Multiplicative inverse, by forward substitution."""
        a = self._c
        if not a or a[0] == 0:
            raise ZeroConstantTerm("series has zero constant term and is not invertible")
        inv0 = 1 / a[0]
        b: list[Fraction] = [inv0]
        for k in range(1, len(a)):
            acc = Fraction(0)
            for i in range(1, k + 1):
                if a[i]:
                    acc += a[i] * b[k - i]
            b.append(-acc * inv0)
        return Series._raw(tuple(b))

    def compose(self, inner: "Series") -> "Series":
        """``self(inner(u))``; ``inner`` must have zero constant term."""
        if inner.order and inner._c[0] != 0:
            raise NonzeroConstantTerm("inner series must have zero constant term")
        n = min(self.order, inner.order)
        if n == 0:
            return Series._raw(())
        inner = inner.truncate(n)
        # Horner; powers of inner beyond u^{n-1} vanish.
        result = Series((self._c[n - 1],), n)
        for k in range(n - 2, -1, -1):
            result = result * inner + self._c[k]
        return result

    def __call__(self, inner: "Series") -> "Series":
        return self.compose(inner)

    def revert(self) -> "Series":
        """Compositional inverse ``b`` with ``self(b(u)) = u``.

        Solved one coefficient at a time: in ``[u^n] sum_k a_k b^k`` only the
        ``k = 1`` term involves ``b_n``, so each step is a division by ``a_1``.
        """
        a = self._c
        n = len(a)
        if n < 2 or a[0] != 0 or a[1] == 0:
            raise NotReversible("reversion needs a(0) = 0 and a'(0) != 0")
        inv1 = 1 / a[1]
        b = [Fraction(0), inv1]
        # pw[k][m] = [u^m] b^k, filled column by column.
        pw: list[list[Fraction]] = [[Fraction(1)], [Fraction(0), inv1]]
        for m in range(2, n):
            for k in range(2, m + 1):
                if k == len(pw):
                    pw.append([Fraction(0)] * k)
                prev = pw[k - 1]
                acc = Fraction(0)
                for j in range(1, m - k + 2):
                    if b[j] and prev[m - j]:
                        acc += b[j] * prev[m - j]
                pw[k].append(acc)
            rest = Fraction(0)
            for k in range(2, m + 1):
                if a[k]:
                    rest += a[k] * pw[k][m]
            bm = -rest * inv1
            b.append(bm)
            pw[1].append(bm)
        return Series._raw(tuple(b))

    # -- exp / log -------------------------------------------------------
    def exp(self) -> "Series":
        """``exp(a)`` for ``a(0) = 0``, from ``f' = a' f``."""
        a = self._c
        if not a:
            return self
        if a[0] != 0:
            raise BadConstantTerm("exp needs a zero constant term")
        f = [Fraction(1)]
        for m in range(1, len(a)):
            acc = Fraction(0)
            for k in range(1, m + 1):
                if a[k]:
                    acc += k * a[k] * f[m - k]
            f.append(acc / m)
        return Series._raw(tuple(f))

    def log(self) -> "Series":
        """``log(b)`` for ``b(0) = 1``."""
        b = self._c
        if not b:
            return self
        if b[0] != 1:
            raise BadConstantTerm("log needs constant term 1")
        # (log b)' = b'/b, integrated; b'/b is known one order below b.
        q = self.derivative() * self.invert().truncate(self.order - 1)
        return q.integral()


def exp_series(order: int, scale: RatLike = 1) -> Series:
    """``exp(c*u)`` truncated at ``order``."""
    c = to_rat(scale)
    out, term = [], Fraction(1)
    for k in range(order):
        out.append(term)
        term = term * c / (k + 1)
    return Series(out, order)


def format_series(s: Series, var: str = "u") -> str:
    """Human form ``1 + 1/2 u + 1/12 u^2``; zero terms are omitted."""
    parts: list[str] = []
    for i, c in enumerate(s.coeffs):
        if c == 0:
            continue
        mag = format_rat(abs(c))
        if i == 0:
            term = mag
        else:
            mono = var if i == 1 else f"{var}^{i}"
            term = mono if mag == "1" else f"{mag} {mono}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    body = " ".join(parts) if parts else "0"
    return f"{body} + O({var}^{s.order})"


def series_to_json(s: Series) -> list[str]:
    return [format_rat(c) for c in s.coeffs]


def series_from_json(items: Iterable[str]) -> Series:
    return Series([parse_rat(str(x)) for x in items])
