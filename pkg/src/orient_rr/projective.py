"""Cohomology of products of projective spaces, split bundles and K(P^n).

The cohomology ring of ``P^{n_1} x ... x P^{n_k}`` (Bott element absorbed,
rational coefficients) is modelled as ``Q[t_1..t_k]/(t_i^{n_i+1})``, with
``t_i`` the first Chern class of ``O(1)`` pulled back from factor ``i``.
Bundles only exist in split form: a list of signed line bundles
``O(d_1, ..., d_k)`` whose Chern roots are ``d_1 t_1 + ... + d_k t_k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    InsufficientOrder,
    NonNilpotentArgument,
    ShapeMismatch,
    VirtualBundle,
)
from .orientation import Orientation, as_orientation
from .series import RatLike, Series, exp_series, format_rat, parse_rat, to_rat

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class RingShape:
    """Caps ``(n_1, ..., n_k)``: one entry per projective factor."""

    caps: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        caps = tuple(int(c) for c in self.caps)
        if any(c < 0 for c in caps):
            raise ValueError(f"caps must be nonnegative, got {caps}")
        object.__setattr__(self, "caps", caps)

    @property
    def k(self) -> int:
        return len(self.caps)

    @property
    def dim(self) -> int:
        """Complex dimension, also the nilpotency bound of the augmentation ideal."""
        return sum(self.caps)

    @property
    def top(self) -> Exponent:
        return self.caps

    def monomials(self) -> Iterator[Exponent]:
        return itertools.product(*(range(c + 1) for c in self.caps))

    def admits(self, e: Exponent) -> bool:
        return len(e) == len(self.caps) and all(0 <= x <= c for x, c in zip(e, self.caps))

    def __add__(self, other: "RingShape") -> "RingShape":
        return RingShape(self.caps + other.caps)

    def __str__(self) -> str:
        if not self.caps:
            return "pt"
        return " x ".join(f"P^{c}" for c in self.caps)


def as_shape(shape: "RingShape | Sequence[int] | int") -> RingShape:
    if isinstance(shape, RingShape):
        return shape
    if isinstance(shape, int):
        return RingShape((shape,))
    return RingShape(tuple(shape))


class CohElement:
    """Element of the truncated polynomial ring for a :class:`RingShape`."""

    __slots__ = ("shape", "_terms")

    def __init__(self, shape: "RingShape | Sequence[int]", terms: Mapping[Exponent, RatLike] | None = None):
        self.shape = as_shape(shape)
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if not self.shape.admits(e):
                raise ValueError(f"exponent {e} does not fit shape {self.shape.caps}")
            q = to_rat(c)
            if q:
                clean[e] = clean.get(e, Fraction(0)) + q
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, shape: RingShape, terms: dict[Exponent, Fraction]) -> "CohElement":
        obj = object.__new__(cls)
        obj.shape = shape
        obj._terms = terms
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def constant(cls, shape, c: RatLike = 1) -> "CohElement":
        shape = as_shape(shape)
        return cls(shape, {(0,) * shape.k: c})

    @classmethod
    def one(cls, shape) -> "CohElement":
        return cls.constant(shape, 1)

    @classmethod
    def zero(cls, shape) -> "CohElement":
        return cls(shape)

    @classmethod
    def hyperplane(cls, shape, i: int = 0) -> "CohElement":
        """The generator ``t_i``; zero on a ``P^0`` factor."""
        shape = as_shape(shape)
        e = [0] * shape.k
        e[i] = 1
        if shape.caps[i] < 1:
            return cls(shape)
        return cls(shape, {tuple(e): 1})

    @classmethod
    def linear(cls, shape, degrees: Sequence[int]) -> "CohElement":
        """``sum d_i t_i``, the first Chern class of ``O(d_1, ..., d_k)``."""
        shape = as_shape(shape)
        if len(degrees) != shape.k:
            raise ShapeMismatch(f"{len(degrees)} degrees for {shape.k} factors")
        out = cls(shape)
        for i, d in enumerate(degrees):
            if d:
                out = out + cls.hyperplane(shape, i) * d
        return out

    # -- access ---------------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items())

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.shape.k)

    def top_coefficient(self) -> Fraction:
        return self.coefficient(self.shape.top)

    def is_zero(self) -> bool:
        return not self._terms

    def is_nilpotent(self) -> bool:
        return self.constant_term == 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CohElement):
            return self.shape == other.shape and self._terms == other._terms
        try:
            q = to_rat(other)  # type: ignore[arg-type]
        except TypeError:
            return NotImplemented
        return self == CohElement.constant(self.shape, q)

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"CohElement({list(self.shape.caps)}, {self})"

    def __str__(self) -> str:
        return format_element(self)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "CohElement") -> None:
        if other.shape != self.shape:
            raise ShapeMismatch(f"shapes {self.shape.caps} and {other.shape.caps} differ")

    def _lift(self, other) -> "CohElement | None":
        if isinstance(other, CohElement):
            self._check(other)
            return other
        try:
            return CohElement.constant(self.shape, to_rat(other))
        except TypeError:
            return None

    def __add__(self, other) -> "CohElement":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            v = out.get(e, Fraction(0)) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return CohElement._raw(self.shape, out)

    __radd__ = __add__

    def __neg__(self) -> "CohElement":
        return CohElement._raw(self.shape, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "CohElement":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "CohElement":
        return (-self) + other

    def __mul__(self, other) -> "CohElement":
        if not isinstance(other, CohElement):
            try:
                q = to_rat(other)
            except TypeError:
                return NotImplemented
            if not q:
                return CohElement._raw(self.shape, {})
            return CohElement._raw(self.shape, {e: c * q for e, c in self._terms.items()})
        self._check(other)
        caps = self.shape.caps
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if any(x > c for x, c in zip(e, caps)):
                    continue
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return CohElement._raw(self.shape, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CohElement":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        result = CohElement.one(self.shape)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> "CohElement":
        """Inverse of a unit ``c + n`` (``n`` nilpotent) as ``c^-1 sum (-n/c)^j``."""
        c = self.constant_term
        if not c:
            raise ZeroDivisionError("element has zero constant term and is not a unit")
        nil = (self - c) * (-1 / c)
        return substitute(Series([1] * (self.shape.dim + 1)), nil) * (1 / c)

    def __truediv__(self, other) -> "CohElement":
        if isinstance(other, CohElement):
            return self * other.invert()
        return self * (1 / to_rat(other))

    def external(self, other: "CohElement") -> "CohElement":
        """Exterior product onto the concatenated shape."""
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = c1 * c2
        return CohElement._raw(self.shape + other.shape, out)

    def map_exponents(self, shape: RingShape, fn) -> "CohElement":
        """Rebuild on ``shape`` sending each monomial ``e`` to ``fn(e)``.

        ``fn`` returns a new exponent or None to drop the monomial.
        """
        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            e2 = fn(e)
            if e2 is None or not shape.admits(e2):
                continue
            out[e2] = out.get(e2, Fraction(0)) + c
        return CohElement._raw(shape, {e: c for e, c in out.items() if c})


def format_element(a: CohElement) -> str:
    if a.is_zero():
        return "0"
    names = ["t"] if a.shape.k == 1 else [f"t{i + 1}" for i in range(a.shape.k)]
    parts = []
    for e, c in a.items():
        mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
        mag = format_rat(abs(c))
        if not mono:
            term = mag
        else:
            term = mono if mag == "1" else f"{mag} {mono}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts)


def element_to_json(a: CohElement) -> dict:
    return {
        "shape": list(a.shape.caps),
        "terms": [{"exp": list(e), "coeff": format_rat(c)} for e, c in a.items()],
    }


def element_from_json(data: dict) -> CohElement:
    """Read ``{"shape": [...], "terms": [{"exp": [...], "coeff": "p/q"}, ...]}``."""
    try:
        shape = RingShape(tuple(data["shape"]))
        terms: dict[Exponent, Fraction] = {}
        for t in data["terms"]:
            e = tuple(int(x) for x in t["exp"])
            terms[e] = terms.get(e, Fraction(0)) + parse_rat(str(t["coeff"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed class JSON: {exc}") from None
    return CohElement(shape, terms)


def substitute(series: Series, arg: CohElement) -> CohElement:
    """``sum_i series_i * arg^i``; finite because ``arg`` is nilpotent."""
    if not arg.is_nilpotent():
        raise NonNilpotentArgument("argument has a nonzero constant term")
    result = CohElement.zero(arg.shape)
    power = CohElement.one(arg.shape)
    i = 0
    while not power.is_zero():
        if i >= series.order:
            raise InsufficientOrder(
                f"series known to order {series.order} but arg^{i} != 0 on {arg.shape}"
            )
        if series.coeffs[i]:
            result = result + power * series.coeffs[i]
        power = power * arg
        i += 1
    return result


# -- split bundles -------------------------------------------------------


@dataclass(frozen=True)
class SplitBundle:
    """Virtual sum of signed line bundles ``O(d)`` over a product of P^n.

    ``root_degrees`` holds ``(sign, (d_1, ..., d_k))`` pairs; the Chern root
    of such a summand is ``d_1 t_1 + ... + d_k t_k``.
    """

    shape: RingShape
    root_degrees: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def __post_init__(self) -> None:
        shape = as_shape(self.shape)
        roots = []
        for sign, d in self.root_degrees:
            d = tuple(int(x) for x in d)
            if sign not in (1, -1):
                raise ValueError(f"root sign must be +1 or -1, got {sign}")
            if len(d) != shape.k:
                raise ShapeMismatch(f"root {d} does not match shape {shape.caps}")
            roots.append((int(sign), d))
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "root_degrees", tuple(roots))

    @classmethod
    def line(cls, shape, degrees: Sequence[int], sign: int = 1) -> "SplitBundle":
        return cls(as_shape(shape), ((sign, tuple(degrees)),))

    @classmethod
    def trivial(cls, shape, rank: int) -> "SplitBundle":
        shape = as_shape(shape)
        sign = 1 if rank >= 0 else -1
        return cls(shape, tuple((sign, (0,) * shape.k) for _ in range(abs(rank))))

    @property
    def roots(self) -> list[tuple[int, CohElement]]:
        return [(s, CohElement.linear(self.shape, d)) for s, d in self.root_degrees]

    @property
    def rank(self) -> int:
        return sum(s for s, _ in self.root_degrees)

    def is_effective(self) -> bool:
        return all(s == 1 for s, _ in self.root_degrees)

    def __add__(self, other: "SplitBundle") -> "SplitBundle":
        if other.shape != self.shape:
            raise ShapeMismatch(f"shapes {self.shape.caps} and {other.shape.caps} differ")
        return SplitBundle(self.shape, self.root_degrees + other.root_degrees)

    def __neg__(self) -> "SplitBundle":
        return SplitBundle(self.shape, tuple((-s, d) for s, d in self.root_degrees))

    def __sub__(self, other: "SplitBundle") -> "SplitBundle":
        return self + (-other)

    def canonical(self) -> "SplitBundle":
        """Same virtual bundle with cancelling pairs removed and roots sorted."""
        count: dict[tuple[int, ...], int] = {}
        for s, d in self.root_degrees:
            count[d] = count.get(d, 0) + s
        roots = []
        for d in sorted(count):
            n = count[d]
            roots.extend([(1 if n > 0 else -1, d)] * abs(n))
        return SplitBundle(self.shape, tuple(roots))


def bundle_to_json(v: SplitBundle) -> dict:
    return {
        "shape": list(v.shape.caps),
        "roots": [{"sign": s, "d": list(d)} for s, d in v.root_degrees],
    }


def bundle_from_json(data: dict) -> SplitBundle:
    """Read ``{"shape": [...], "roots": [{"sign": 1, "d": [...]}, ...]}``."""
    try:
        shape = RingShape(tuple(data["shape"]))
        roots = tuple((int(r["sign"]), tuple(int(x) for x in r["d"])) for r in data["roots"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed bundle JSON: {exc}") from None
    return SplitBundle(shape, roots)


def tangent_bundle(shape) -> SplitBundle:
    """Euler-sequence roots: ``n_i + 1`` copies of ``+t_i`` and one ``-0`` per factor."""
    shape = as_shape(shape)
    zero = (0,) * shape.k
    roots = []
    for i, n in enumerate(shape.caps):
        e = tuple(1 if j == i else 0 for j in range(shape.k))
        roots.extend([(1, e)] * (n + 1))
        roots.append((-1, zero))
    return SplitBundle(shape, tuple(roots))


# -- characteristic classes ---------------------------------------------


@lru_cache(maxsize=None)
def _root_value(series: Series, shape: RingShape, degrees: tuple[int, ...]) -> CohElement:
    return substitute(series, CohElement.linear(shape, degrees))


def euler_class(A: "Orientation | str", V: SplitBundle) -> CohElement:
    """Product of ``s_A(root)`` over the roots of an effective bundle."""
    A = as_orientation(A)
    if not V.is_effective():
        raise VirtualBundle("Euler classes are only defined for effective bundles")
    s = A.series(V.shape.dim + 1)
    result = CohElement.one(V.shape)
    for _, d in V.root_degrees:
        result = result * _root_value(s, V.shape, d)
    return result


@lru_cache(maxsize=None)
def _ratio_series(num: Orientation, den: Orientation, order: int) -> Series:
    # h_num / h_den, a unit series with constant term 1
    return num.unit_part(order) * den.unit_part(order).invert()


def _characteristic(num: Orientation, den: Orientation, V: SplitBundle) -> CohElement:
    order = V.shape.dim + 1
    plus = _ratio_series(num, den, order)
    minus = _ratio_series(den, num, order)
    result = CohElement.one(V.shape)
    for sign, d in V.root_degrees:
        if not any(d):
            continue  # unit series at a zero root is 1
        result = result * _root_value(plus if sign > 0 else minus, V.shape, d)
    return result


def todd_class(A: "Orientation | str", B: "Orientation | str", V: SplitBundle) -> CohElement:
    """``td_{A,B}(V)``: per root ``h_B(x)/h_A(x)``, inverted for negative roots."""
    return _characteristic(as_orientation(B), as_orientation(A), V)


def multiplier_class(A: "Orientation | str", B: "Orientation | str", V: SplitBundle) -> CohElement:
    """``m_V`` relating the two Thom classes; the inverse of :func:`todd_class`."""
    return _characteristic(as_orientation(A), as_orientation(B), V)


# -- K-theory of P^n -------------------------------------------------------


class KElement:
    """Element of ``K(P^n) (x) Q = Q[x]/(x^{n+1})`` with ``x = [L] - 1``."""

    __slots__ = ("n", "poly")

    def __init__(self, n: int, poly: Iterable[RatLike] = ()):
        if n < 0:
            raise ValueError("n must be nonnegative")
        c = [to_rat(x) for x in poly][: n + 1]
        c.extend([Fraction(0)] * (n + 1 - len(c)))
        self.n = n
        self.poly: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def one(cls, n: int) -> "KElement":
        return cls(n, (1,))

    def _other(self, other) -> "KElement | None":
        if isinstance(other, KElement):
            if other.n != self.n:
                raise DimensionMismatch(f"K(P^{self.n}) and K(P^{other.n})")
            return other
        try:
            return KElement(self.n, (to_rat(other),))
        except TypeError:
            return None

    def __add__(self, other) -> "KElement":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return KElement(self.n, (a + b for a, b in zip(self.poly, o.poly)))

    __radd__ = __add__

    def __neg__(self) -> "KElement":
        return KElement(self.n, (-a for a in self.poly))

    def __sub__(self, other) -> "KElement":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "KElement":
        return (-self) + other

    def __mul__(self, other) -> "KElement":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return KElement(self.n, (self.as_series() * o.as_series()).coeffs)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "KElement":
        return KElement(self.n, (self.as_series() ** k).coeffs)

    def as_series(self) -> Series:
        return Series(self.poly, self.n + 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KElement):
            return NotImplemented
        return self.n == other.n and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.n, self.poly))

    def __repr__(self) -> str:
        return f"KElement({self.n}, [{', '.join(map(format_rat, self.poly))}])"


def o_bundle(n: int, d: int) -> KElement:
    """``[O(d)] = (1 + x)^d`` in ``K(P^n)``; negative ``d`` goes through inversion."""
    return KElement(n, (Series((1, 1), n + 1) ** d).coeffs)


def bott_class(n: int) -> KElement:
    """``1 - [L^{-1}] = x / (1 + x)``."""
    return KElement.one(n) - o_bundle(n, -1)


def chern_character(a: KElement) -> CohElement:
    """Ring map ``K(P^n) -> H(P^n)`` sending ``x`` to ``e^t - 1``."""
    shape = RingShape((a.n,))
    y = substitute(exp_series(a.n + 1) - 1, CohElement.hyperplane(shape))
    return substitute(a.as_series(), y)
