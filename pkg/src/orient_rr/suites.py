"""Seeded verification suites for the identities the library is built on.

Each suite draws its cases from ``random.Random(seed)`` and compares both
sides of an identity with exact equality.  Cases are generated and checked in
order, so a report depends only on the suite name, seed and parameters.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .errors import NonIntegerResult, UnknownSuite
from .orientation import (
    PRESETS,
    as_orientation,
    check_todd_condition,
    comparison,
    solve_todd_series,
)
from .projective import (
    CohElement,
    KElement,
    RingShape,
    SplitBundle,
    bott_class,
    bundle_to_json,
    chern_character,
    element_to_json,
    euler_class,
    multiplier_class,
    o_bundle,
    substitute,
    tangent_bundle,
    todd_class,
)
from .pushforward import (
    ProjectiveMap,
    chi_hrr,
    chi_oracle,
    integrate,
    k_integrate,
    push,
    relative_todd,
)
from .series import Series, format_rat

PRESET_NAMES = tuple(PRESETS)


@dataclass
class CaseResult:
    index: int
    input: dict
    passed: bool

    def to_json(self) -> dict:
        return {"index": self.index, "input": self.input, "pass": self.passed}


@dataclass
class VerificationReport:
    suite: str
    seed: int
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def case_count(self) -> int:
        return len(self.cases)

    @property
    def verdict(self) -> str:
        return "pass" if all(c.passed for c in self.cases) else "fail"

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": [c.to_json() for c in self.cases],
            "verdict": self.verdict,
        }

    def dumps(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json(), indent=indent, ensure_ascii=False)


# -- random inputs ---------------------------------------------------------


def random_rat(rng: random.Random, size: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size - 1))


def random_class(rng: random.Random, shape: RingShape, density: float = 0.7) -> CohElement:
    terms = {}
    for e in shape.monomials():
        if rng.random() < density:
            terms[e] = random_rat(rng)
    return CohElement(shape, terms)


def random_bundle(
    rng: random.Random,
    shape: RingShape,
    max_roots: int = 4,
    max_degree: int = 2,
    effective: bool = False,
) -> SplitBundle:
    roots = []
    for _ in range(rng.randint(1, max_roots)):
        sign = 1 if effective else rng.choice((1, -1))
        roots.append((sign, tuple(rng.randint(-max_degree, max_degree) for _ in shape.caps)))
    return SplitBundle(shape, tuple(roots))


def random_kelement(rng: random.Random, n: int) -> KElement:
    return KElement(n, [random_rat(rng) for _ in range(n + 1)])


def _jsonable(x) -> object:
    if isinstance(x, CohElement):
        return element_to_json(x)
    if isinstance(x, Fraction):
        return format_rat(x)
    return x


# -- suites ----------------------------------------------------------------
# Each generator yields (input, passed) pairs.


def _main_theorem_maps(max_n: int, max_factor: int) -> list[ProjectiveMap]:
    maps = [ProjectiveMap.to_point((n,)) for n in range(max_n + 1)]
    maps += [ProjectiveMap.inclusion((m,), (n,)) for n in range(1, max_n + 1) for m in range(n)]
    maps += [
        ProjectiveMap.projection((n, m), 1)
        for n in range(max_factor + 1)
        for m in range(max_factor + 1)
    ]
    return maps


def suite_main_theorem(
    rng: random.Random,
    orientations: Sequence[str] = PRESET_NAMES,
    max_n: int = 5,
    max_factor: int = 3,
    classes: int = 50,
) -> Iterator[tuple[dict, bool]]:
    """``f^A_*(a) = f^B_*(a td_{A,B}(T_f))`` and ``f^A_*(a) td(TY) = f^B_*(a td(TX))``."""
    maps = _main_theorem_maps(max_n, max_factor)
    for a_name in orientations:
        for b_name in orientations:
            A, B = as_orientation(a_name), as_orientation(b_name)
            for f in maps:
                td_f = relative_todd(A, B, f)
                td_x = todd_class(A, B, tangent_bundle(f.source))
                td_y = todd_class(A, B, tangent_bundle(f.target))
                for _ in range(classes):
                    a = random_class(rng, f.source)
                    lhs = push(A, f, a)
                    ok = lhs == push(B, f, a * td_f)
                    other = push(B, f, a * td_x)
                    ok = ok and (lhs * td_y if f.kind != "point" else lhs) == other
                    yield {"A": a_name, "B": b_name, "map": f.describe(), "class": _jsonable(a)}, ok


def suite_ghrr(
    rng: random.Random, max_n: int = 6, min_d: int = -6, max_d: int = 6
) -> Iterator[tuple[dict, bool]]:
    """``ch(pi^K_*[O(d)]) = int ch(O(d)) td(TP^n) = C(n+d, n)`` over a grid."""
    for n in range(max_n + 1):
        for d in range(min_d, max_d + 1):
            k_side = k_integrate(o_bundle(n, d))
            try:
                h_side: object = chi_hrr(n, d)
            except NonIntegerResult:
                h_side = None
            oracle = chi_oracle(n, d)
            ok = h_side is not None and k_side.denominator == 1 and k_side == h_side == oracle
            yield {
                "n": n,
                "d": d,
                "k_theory": format_rat(k_side),
                "hrr": None if h_side is None else str(h_side),
                "oracle": str(oracle),
            }, ok


def _random_inclusion(rng: random.Random, max_n: int) -> ProjectiveMap:
    n = rng.randint(1, max_n)
    return ProjectiveMap.inclusion((rng.randint(0, n - 1),), (n,))


def _random_projection(rng: random.Random, max_factor: int) -> ProjectiveMap:
    caps = (rng.randint(0, max_factor), rng.randint(0, max_factor))
    return ProjectiveMap.projection(caps, rng.randint(0, 1))


def _random_map(rng: random.Random, kind: str, max_n: int, max_factor: int) -> ProjectiveMap:
    if kind == "inclusion":
        return _random_inclusion(rng, max_n)
    if kind == "projection":
        return _random_projection(rng, max_factor)
    if rng.random() < 0.5:
        return ProjectiveMap.to_point((rng.randint(0, max_n),))
    return ProjectiveMap.to_point((rng.randint(0, max_factor), rng.randint(0, max_factor)))


def suite_projection_formula(
    rng: random.Random,
    orientations: Sequence[str] = PRESET_NAMES,
    max_n: int = 5,
    max_factor: int = 3,
    cases: int = 50,
) -> Iterator[tuple[dict, bool]]:
    """``f_*(f^*a * x) = a * f_*(x)``."""
    for name in orientations:
        A = as_orientation(name)
        for kind in ("inclusion", "projection", "point"):
            for _ in range(cases):
                f = _random_map(rng, kind, max_n, max_factor)
                x = random_class(rng, f.source)
                if kind == "point":
                    a = random_rat(rng)
                    ok = push(A, f, f.pullback_scalar(a) * x) == a * push(A, f, x)
                    a_json: object = format_rat(a)
                else:
                    a = random_class(rng, f.target)
                    ok = push(A, f, f.pullback(a) * x) == a * push(A, f, x)
                    a_json = element_to_json(a)
                yield {"orientation": name, "map": f.describe(), "a": a_json, "x": element_to_json(x)}, ok


def suite_functoriality(
    rng: random.Random,
    orientations: Sequence[str] = PRESET_NAMES,
    max_n: int = 5,
    max_factor: int = 3,
    cases: int = 50,
) -> Iterator[tuple[dict, bool]]:
    """``(g o f)_* = g_* f_*``, plus Fubini for external products."""
    for name in orientations:
        A = as_orientation(name)
        for kind in ("point-after-inclusion", "inclusion-after-inclusion", "point-after-projection", "fubini"):
            for _ in range(cases):
                if kind == "fubini":
                    p, q = rng.randint(0, max_factor), rng.randint(0, max_factor)
                    a, b = random_class(rng, RingShape((p,))), random_class(rng, RingShape((q,)))
                    ab = a.external(b)
                    ok = integrate(A, ab.shape, ab) == integrate(A, a.shape, a) * integrate(A, b.shape, b)
                    yield {"orientation": name, "kind": kind, "a": element_to_json(a), "b": element_to_json(b)}, ok
                    continue
                if kind == "point-after-inclusion":
                    f = _random_inclusion(rng, max_n)
                    g = ProjectiveMap.to_point(f.target)
                elif kind == "inclusion-after-inclusion":
                    n = rng.randint(2, max_n)
                    m = rng.randint(1, n - 1)
                    k = rng.randint(0, m - 1)
                    f = ProjectiveMap.inclusion((k,), (m,))
                    g = ProjectiveMap.inclusion((m,), (n,))
                else:
                    f = _random_projection(rng, max_factor)
                    g = ProjectiveMap.to_point(f.target)
                a = random_class(rng, f.source)
                ok = push(A, g, push(A, f, a)) == push(A, f.then(g), a)
                yield {
                    "orientation": name,
                    "kind": kind,
                    "f": f.describe(),
                    "g": g.describe(),
                    "class": element_to_json(a),
                }, ok


def suite_multipliers(
    rng: random.Random,
    orientations: Sequence[str] = PRESET_NAMES,
    shapes: Sequence[tuple[int, ...]] = ((3,), (2, 2)),
    bundles: int = 100,
) -> Iterator[tuple[dict, bool]]:
    """``m_{V+W} = m_V m_W``, ``m_V m_{-V} = 1`` and ``m_{V+n} = m_V``."""
    for caps in shapes:
        shape = RingShape(caps)
        for _ in range(bundles):
            V, W = random_bundle(rng, shape), random_bundle(rng, shape)
            r = rng.randint(1, 3)
            for a_name in orientations:
                for b_name in orientations:
                    mv = multiplier_class(a_name, b_name, V)
                    mw = multiplier_class(a_name, b_name, W)
                    ok = multiplier_class(a_name, b_name, V + W) == mv * mw
                    ok = ok and mv * multiplier_class(a_name, b_name, -V) == 1
                    ok = ok and multiplier_class(a_name, b_name, SplitBundle.trivial(shape, r)) == 1
                    ok = ok and multiplier_class(a_name, b_name, V + SplitBundle.trivial(shape, r)) == mv
                    yield {
                        "A": a_name,
                        "B": b_name,
                        "V": bundle_to_json(V),
                        "W": bundle_to_json(W),
                        "trivial_rank": r,
                    }, ok


def suite_euler(
    rng: random.Random,
    orientations: Sequence[str] = PRESET_NAMES,
    shapes: Sequence[tuple[int, ...]] = ((3,), (2, 2), (1, 1, 1)),
    bundles: int = 50,
    max_n: int = 5,
) -> Iterator[tuple[dict, bool]]:
    """Multiplicativity, vanishing on ``V + O``, and ``e(O(1)) = s(t)``."""
    for name in orientations:
        A = as_orientation(name)
        for _ in range(bundles):
            shape = RingShape(rng.choice(shapes))
            V = random_bundle(rng, shape, effective=True)
            W = random_bundle(rng, shape, effective=True)
            ok = euler_class(A, V + W) == euler_class(A, V) * euler_class(A, W)
            ok = ok and euler_class(A, V + SplitBundle.trivial(shape, 1)).is_zero()
            yield {"orientation": name, "V": bundle_to_json(V), "W": bundle_to_json(W)}, ok
        for n in range(max_n + 1):
            shape = RingShape((n,))
            e = euler_class(A, SplitBundle.line(shape, (1,)))
            ok = e == substitute(A.series(n + 1), CohElement.hyperplane(shape))
            yield {"orientation": name, "line_bundle_on": n}, ok


def suite_todd_unique(rng: random.Random, order: int = 16) -> Iterator[tuple[dict, bool]]:
    """The solved series matches ``u/(1-e^-u)``, satisfies the condition, and
    a perturbed coefficient breaks it exactly where perturbed."""
    f = solve_todd_series(order)
    td = comparison("ku", "additive", order).todd
    yield {"check": "solve equals ku/additive todd", "order": order}, f == td
    conditions = check_todd_condition(f, order)
    for n, ok in enumerate(conditions):
        yield {"check": "condition", "n": n}, ok
    for k in range(1, order):
        bumped = list(f.coeffs)
        bumped[k] += 1
        cond = check_todd_condition(Series(bumped), order)
        ok = all(cond[:k]) and not cond[k]
        yield {"check": "perturbed", "k": k}, ok


def suite_chern_character(
    rng: random.Random, max_n: int = 5, pairs: int = 50
) -> Iterator[tuple[dict, bool]]:
    """``ch`` is a ring map, and ``ch(1 - L^-1) = t`` on ``P^1``."""
    for _ in range(pairs):
        n = rng.randint(0, max_n)
        a, b = random_kelement(rng, n), random_kelement(rng, n)
        ok = chern_character(a * b) == chern_character(a) * chern_character(b)
        ok = ok and chern_character(a + b) == chern_character(a) + chern_character(b)
        ok = ok and chern_character(KElement.one(n)) == 1
        yield {
            "n": n,
            "a": [format_rat(c) for c in a.poly],
            "b": [format_rat(c) for c in b.poly],
        }, ok
    ok = chern_character(bott_class(1)) == CohElement.hyperplane(RingShape((1,)))
    yield {"check": "bott"}, ok


SUITES: dict[str, Callable[..., Iterator[tuple[dict, bool]]]] = {
    "main-theorem": suite_main_theorem,
    "ghrr": suite_ghrr,
    "projection-formula": suite_projection_formula,
    "functoriality": suite_functoriality,
    "multipliers": suite_multipliers,
    "euler": suite_euler,
    "todd-unique": suite_todd_unique,
    "chern-character": suite_chern_character,
}


def verify_suite(name: str, seed: int = 0, **params) -> VerificationReport:
    """Run suite ``name`` with a seeded generator; ``params`` go to the suite."""
    try:
        suite = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    rng = random.Random(seed)
    report = VerificationReport(name, seed)
    for i, (inp, ok) in enumerate(suite(rng, **params)):
        report.cases.append(CaseResult(i, inp, bool(ok)))
    return report
