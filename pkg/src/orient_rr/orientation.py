"""Complex orientations as Euler-class series, and the series they induce.

Every orientation is stored through its shifted Euler class ``s(t)`` written
in the additive coordinate ``t`` (the first Chern class of the universal line
bundle, Bott element absorbed).  Comparing two orientations gives the series
``phi = s_A o s_B^{-1}``, the Todd function ``u / phi(u)`` and the
multiplier ``phi(u) / u``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Sequence

from .errors import InvalidOrientation, UnknownOrientation
from .series import RatLike, Series, default_order, exp_series, format_rat, parse_rat, to_rat

Builder = Callable[[int], Series]


@dataclass(frozen=True)
class Orientation:
    """A named orientation; ``series(N)`` gives ``s(t)`` to order ``N``.

    Two orientations are equal when names and the leading coefficients of
    ``s`` agree, so a re-registered name with new data compares unequal.
    """

    name: str
    _build: Builder = field(repr=False, compare=False)

    def series(self, order: int) -> Series:
        return _cached_build(self._build, order)

    @property
    def s(self) -> Series:
        return self.series(default_order())

    def unit_part(self, order: int) -> Series:
        """``h(u) = s(u)/u`` to ``order``; constant term 1."""
        return self.series(order + 1).shift_down(1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Orientation):
            return NotImplemented
        return self.name == other.name and self.series(8) == other.series(8)

    def __hash__(self) -> int:
        return hash(self.name)


@lru_cache(maxsize=4096)
def _cached_build(build: Builder, order: int) -> Series:
    s = build(order)
    if s.order != order:
        raise InvalidOrientation(f"builder returned order {s.order}, wanted {order}")
    return s


def _additive(order: int) -> Series:
    return Series.variable(order)


def _ku(order: int) -> Series:
    # 1 - e^{-t}
    return 1 - exp_series(order, -1)


def _ku_alt(order: int) -> Series:
    # e^t - 1
    return exp_series(order) - 1


PRESETS: dict[str, Builder] = {
    "additive": _additive,
    "ku": _ku,
    "ku-alt": _ku_alt,
}
_custom: dict[str, Builder] = {}


def _polynomial_builder(coeffs: tuple[Fraction, ...]) -> Builder:
    def build(order: int) -> Series:
        return Series((Fraction(0),) + coeffs, order)

    return build


def validate_euler_series(s: Series) -> None:
    if s.order < 2:
        raise InvalidOrientation("need at least the coefficients of t^0 and t^1")
    if s[0] != 0:
        raise InvalidOrientation("s(0) must be 0")
    if s[1] != 1:
        raise InvalidOrientation("s'(0) must be 1")


def custom_orientation(name: str, coeffs: Sequence[RatLike]) -> Orientation:
    """Orientation with ``s(t) = sum coeffs[i] t^(i+1)``, a polynomial.

    Coefficients past the end of the list are exactly zero.
    """
    c = tuple(to_rat(x) for x in coeffs)
    build = _polynomial_builder(c)
    validate_euler_series(build(max(2, len(c) + 1)))
    return Orientation(name, build)


def register_orientation(orientation: Orientation) -> Orientation:
    if orientation.name in PRESETS:
        raise InvalidOrientation(f"{orientation.name!r} is a preset name")
    _custom[orientation.name] = orientation._build
    return orientation


def unregister_orientation(name: str) -> None:
    _custom.pop(name, None)


def load_orientation_file(path: str | Path) -> Orientation:
    """Read ``{"name": ..., "coeffs": [...]}`` (coefficients from t^1 up)."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return orientation_from_json(data)


def orientation_from_json(data: dict) -> Orientation:
    try:
        name = data["name"]
        coeffs = data["coeffs"]
    except (KeyError, TypeError):
        raise InvalidOrientation('expected {"name": str, "coeffs": [str, ...]}') from None
    if not isinstance(name, str) or not name:
        raise InvalidOrientation("orientation name must be a non-empty string")
    return custom_orientation(name, [parse_rat(str(x)) for x in coeffs])


def orientation_to_json(o: Orientation, order: int) -> dict:
    s = o.series(order)
    return {"name": o.name, "coeffs": [format_rat(c) for c in s.coeffs[1:]]}


def available_orientations() -> list[str]:
    return list(PRESETS) + sorted(_custom)


def preset_orientation(name: str) -> Orientation:
    """Look up a preset (``additive``, ``ku``, ``ku-alt``) or registered name."""
    if name in PRESETS:
        return Orientation(name, PRESETS[name])
    if name in _custom:
        return Orientation(name, _custom[name])
    raise UnknownOrientation(
        f"unknown orientation {name!r}; known: {', '.join(available_orientations())}"
    )


def as_orientation(o: "Orientation | str") -> Orientation:
    return o if isinstance(o, Orientation) else preset_orientation(o)


@dataclass(frozen=True)
class OrientationPair:
    A: Orientation
    B: Orientation
    phi: Series
    todd: Series
    multiplier: Series


def comparison(A: "Orientation | str", B: "Orientation | str", order: int | None = None) -> OrientationPair:
    """Comparison series of two orientations, all three series at ``order``."""
    A, B = as_orientation(A), as_orientation(B)
    n = default_order() if order is None else order
    phi = A.series(n + 1).compose(B.series(n + 1).revert())
    multiplier = phi.shift_down(1)
    todd = multiplier.invert()
    return OrientationPair(A, B, phi.truncate(n), todd, multiplier)


def solve_todd_series(order: int) -> Series:
    """The unique ``f`` with ``f(0) = 1`` and ``[u^n] f^(n+1) = 1`` for ``n < order``.

    In ``[u^n] f^(n+1)`` the unknown ``f_n`` appears only linearly, with
    coefficient ``n + 1``; every other contribution uses earlier coefficients.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    f = [Fraction(1)]
    for n in range(1, order):
        trial = Series(f, n + 1)  # f_n provisionally 0
        rest = (trial ** (n + 1))[n]
        f.append((1 - rest) / (n + 1))
    return Series(f, order)


def check_todd_condition(f: Series, order: int) -> list[bool]:
    """For each ``n < order``, whether ``[u^n] f^(n+1) == 1``."""
    f = f.truncate(order)
    return [(f.truncate(n + 1) ** (n + 1))[n] == 1 for n in range(order)]
