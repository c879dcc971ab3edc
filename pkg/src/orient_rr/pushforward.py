"""Orientation-dependent pushforwards between products of projective spaces.

Three kinds of maps are supported: the terminal map to a point, a product of
linear inclusions ``P^{m_i} -> P^{n_i}`` and the projection forgetting one
factor.  For the additive orientation the pushforward is pure coefficient
bookkeeping.  Every other orientation ``A`` is reduced to it through the
change-of-orientation formula ``f^A_*(a) = f^add_*(a * td_{A,add}(T_f))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .errors import BadMapKind, NonIntegerResult, ShapeMismatch
from .orientation import Orientation, as_orientation, preset_orientation
from .projective import (
    CohElement,
    Exponent,
    KElement,
    RingShape,
    SplitBundle,
    as_shape,
    chern_character,
    o_bundle,
    tangent_bundle,
    todd_class,
)
from .series import Series

MAP_KINDS = ("point", "inclusion", "projection")

Pushed = Union[CohElement, Fraction]


@dataclass(frozen=True)
class ProjectiveMap:
    """A map ``source -> target`` of one of the kinds in :data:`MAP_KINDS`."""

    kind: str
    source: RingShape
    target: RingShape
    drop: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "source", as_shape(self.source))
        object.__setattr__(self, "target", as_shape(self.target))
        src, tgt = self.source.caps, self.target.caps
        if self.kind == "point":
            if tgt:
                raise BadMapKind("a map to a point has empty target shape")
        elif self.kind == "inclusion":
            if len(src) != len(tgt) or any(m > n for m, n in zip(src, tgt)):
                raise BadMapKind(f"no linear inclusion {self.source} -> {self.target}")
        elif self.kind == "projection":
            if self.drop is None or not 0 <= self.drop < len(src):
                raise BadMapKind("projection needs a valid factor index to drop")
            if src[: self.drop] + src[self.drop + 1 :] != tgt:
                raise BadMapKind(f"projection target must be {src} without factor {self.drop}")
        else:
            raise BadMapKind(f"unknown map kind {self.kind!r}; expected one of {MAP_KINDS}")

    # -- constructors ---------------------------------------------------
    @classmethod
    def to_point(cls, source) -> "ProjectiveMap":
        return cls("point", as_shape(source), RingShape(()))

    @classmethod
    def inclusion(cls, source, target) -> "ProjectiveMap":
        return cls("inclusion", as_shape(source), as_shape(target))

    @classmethod
    def projection(cls, source, drop: int) -> "ProjectiveMap":
        src = as_shape(source).caps
        return cls("projection", RingShape(src), RingShape(src[:drop] + src[drop + 1 :]), drop)

    def then(self, g: "ProjectiveMap") -> "ProjectiveMap":
        """The composite ``g o self``, when it is again of a supported kind."""
        if self.target != g.source:
            raise ShapeMismatch(f"cannot compose: {self.target} != {g.source}")
        if g.kind == "point":
            return ProjectiveMap.to_point(self.source)
        if self.kind == "inclusion" and g.kind == "inclusion":
            return ProjectiveMap.inclusion(self.source, g.target)
        raise BadMapKind(f"composite of {self.kind} then {g.kind} is not supported")

    # -- pullbacks ------------------------------------------------------
    def _pull_exponent(self, e: Exponent) -> Exponent | None:
        if self.kind == "point":
            return (0,) * self.source.k
        if self.kind == "inclusion":
            return e  # source.admits() drops what exceeds the smaller caps
        i = self.drop
        return e[:i] + (0,) + e[i:]

    def pullback(self, a: CohElement) -> CohElement:
        if a.shape != self.target:
            raise ShapeMismatch(f"class lives on {a.shape}, map target is {self.target}")
        return a.map_exponents(self.source, self._pull_exponent)

    def pullback_scalar(self, c) -> CohElement:
        return CohElement.constant(self.source, c)

    def pullback_bundle(self, V: SplitBundle) -> SplitBundle:
        if V.shape != self.target:
            raise ShapeMismatch(f"bundle lives on {V.shape}, map target is {self.target}")
        roots = []
        for s, d in V.root_degrees:
            if self.kind == "point":
                roots.append((s, (0,) * self.source.k))
            elif self.kind == "inclusion":
                roots.append((s, d))
            else:
                i = self.drop
                roots.append((s, d[:i] + (0,) + d[i:]))
        return SplitBundle(self.source, tuple(roots))

    def relative_tangent(self) -> SplitBundle:
        """``T_f = TX - f^*TY`` with cancelling roots removed."""
        return (tangent_bundle(self.source) - self.pullback_bundle(tangent_bundle(self.target))).canonical()

    # -- additive pushforward -------------------------------------------
    def push_additive(self, a: CohElement) -> Pushed:
        if a.shape != self.source:
            raise ShapeMismatch(f"class lives on {a.shape}, map source is {self.source}")
        if self.kind == "point":
            return a.top_coefficient()
        if self.kind == "inclusion":
            shift = tuple(n - m for m, n in zip(self.source.caps, self.target.caps))
            return a.map_exponents(self.target, lambda e: tuple(x + s for x, s in zip(e, shift)))
        i, cap = self.drop, self.source.caps[self.drop]
        return a.map_exponents(self.target, lambda e: e[:i] + e[i + 1 :] if e[i] == cap else None)

    def describe(self) -> dict:
        out = {"kind": self.kind, "source": list(self.source.caps), "target": list(self.target.caps)}
        if self.drop is not None:
            out["drop"] = self.drop
        return out


@dataclass(frozen=True)
class PushforwardProblem:
    orientation: Orientation
    map: ProjectiveMap

    @property
    def kind(self) -> str:
        return self.map.kind

    @property
    def source(self) -> RingShape:
        return self.map.source

    @property
    def target(self) -> RingShape:
        return self.map.target


@lru_cache(maxsize=None)
def relative_todd(A: Orientation, B: Orientation, f: ProjectiveMap) -> CohElement:
    """``td_{A,B}(T_f)`` on the source of ``f``."""
    return todd_class(A, B, f.relative_tangent())


def _additive() -> Orientation:
    return preset_orientation("additive")


def pushforward(problem: PushforwardProblem, a: CohElement) -> Pushed:
    """``f^A_*(a)``; a rational for maps to a point, else a class on the target."""
    f = problem.map
    if a.shape != f.source:
        raise ShapeMismatch(f"class lives on {a.shape}, map source is {f.source}")
    td = relative_todd(problem.orientation, _additive(), f)
    return f.push_additive(a * td)


def push(A: "Orientation | str", f: ProjectiveMap, a: CohElement) -> Pushed:
    return pushforward(PushforwardProblem(as_orientation(A), f), a)


def integrate(A: "Orientation | str", shape, a: CohElement) -> Fraction:
    """``int^A a`` over the product of projective spaces ``shape``."""
    shape = as_shape(shape)
    if a.shape != shape:
        raise ShapeMismatch(f"class lives on {a.shape}, integrating over {shape}")
    return push(A, ProjectiveMap.to_point(shape), a)  # type: ignore[return-value]


# -- Riemann-Roch on P^n ---------------------------------------------------


def chi_hrr(n: int, d: int) -> int:
    """``int ch(O(d)) td(TP^n)`` with the K-theory/additive Todd class."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    shape = RingShape((n,))
    td = todd_class("ku", "additive", tangent_bundle(shape))
    value = integrate("additive", shape, chern_character(o_bundle(n, d)) * td)
    if value.denominator != 1:
        raise NonIntegerResult(f"chi(P^{n}, O({d})) came out as {value}")
    return value.numerator


def chi_oracle(n: int, d: int) -> int:
    """``(d+1)(d+2)...(d+n) / n!``, i.e. ``C(n+d, n)`` extended to all ``d``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    num = math.prod(d + j for j in range(1, n + 1))
    q, r = divmod(num, math.factorial(n))
    assert r == 0
    return q


def k_integrate(a: KElement) -> Fraction:
    """Pushforward ``K(P^n) -> K(pt)`` for the orientation with Euler class ``1 - L^-1``.

    Writing ``a`` in powers of ``y = 1 - [L^-1]`` (so ``x = y/(1-y)``), the
    power ``y^j`` is the pushforward of 1 from a linear ``P^{n-j}``, whose
    integral is 1.  The result is the sum of the ``y``-coefficients.
    """
    n = a.n
    x_of_y = Series((0, 1), n + 1) * Series((1, -1), n + 1).invert()
    in_y = a.as_series().compose(x_of_y)
    return sum(in_y.coeffs, Fraction(0))


def is_integral(q: Fraction) -> bool:
    return Fraction(q).denominator == 1


def external_class(parts: Sequence[CohElement]) -> CohElement:
    out = CohElement.one(RingShape(()))
    for p in parts:
        out = out.external(p)
    return out
