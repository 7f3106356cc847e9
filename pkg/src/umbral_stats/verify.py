"""Machine-checkable property suites over the whole catalog.

Each suite returns a list of :class:`PropertyResult`; a failing result
carries a counterexample description.  Random instances are drawn from a
seeded generator so runs are reproducible.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable, NamedTuple

from . import catalog as cat
from . import oeis
from . import series as fps
from . import statistics as st
from .deformed_entropy import (
    PhiSeries,
    entropy_gradient_holds,
    main_theorem_holds,
    map_f,
    map_f_inverse,
    map_g,
    map_g_inverse,
    rho,
    tau,
    xi,
)
from .series import TruncatedSeries
from .statistics import Statistics
from .umbral import DeltaSeries, binomial_identity_holds, conjugate_sequence

SUITES = (
    "inversion",
    "binomial",
    "occupation",
    "duality",
    "main-theorem",
    "gradient",
    "xi",
    "fixtures",
)


class PropertyResult(NamedTuple):
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
        }


class VerifyReport(NamedTuple):
    results: list[PropertyResult]
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[PropertyResult]:
        return [r for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "elapsed_seconds": self.elapsed,
            "checks": [r.to_json() for r in self.results],
        }


def random_rational(rng: random.Random, span: int = 3, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_statistics(rng: random.Random, order: int, name: str = "random") -> Statistics:
    cluster = [Fraction(1)] + [random_rational(rng) for _ in range(5)]
    cluster += [Fraction(0)] * (order - len(cluster))
    return st.from_cluster(cluster, name)


def random_phi(rng: random.Random, order: int) -> PhiSeries:
    return PhiSeries.from_t([random_rational(rng) for _ in range(5)], order=order)


def _catalog_statistics(order: int) -> list[tuple[str, Statistics]]:
    return [(name, cat.build(name, order)) for name in cat.entries_in_space()]


# -- suites --------------------------------------------------------------------


def suite_inversion(order: int, seed: int) -> list[PropertyResult]:
    rng = random.Random(seed)
    out = []
    ident = fps.identity(order)
    ok = True
    detail = ""
    for i in range(50):
        coeffs = [Fraction(0), rng.choice([Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)])]
        coeffs += [random_rational(rng) for _ in range(order - 1)]
        s = TruncatedSeries(coeffs)
        t = fps.lagrange_invert(s)
        if fps.compose(s, t) != ident or fps.compose(t, s) != ident:
            ok = False
            detail = f"roundtrip failed for instance {i}: {s!r}"
            break
    out.append(PropertyResult("inversion", "compose-roundtrip-50-random", ok, detail))
    cat_ok = True
    detail = ""
    for name, stat in _catalog_statistics(min(order, 12)):
        back = fps.lagrange_invert(stat.X_of_w)
        if back != stat.w:
            cat_ok = False
            detail = f"double inversion differs for {name}"
            break
    out.append(PropertyResult("inversion", "catalog-double-inversion", cat_ok, detail))
    return out


def suite_binomial(order: int, seed: int) -> list[PropertyResult]:
    rng = random.Random(seed)
    out = []
    n_max = min(8, order)
    for name, stat in _catalog_statistics(max(n_max, 8)):
        seq = conjugate_sequence(DeltaSeries(stat.F), n_max)
        ok = True
        detail = ""
        for n in range(1, n_max + 1):
            for _ in range(5):
                a, b = random_rational(rng), random_rational(rng)
                if not binomial_identity_holds(seq, a, b, n):
                    ok = False
                    detail = f"n={n}, points ({a},{b})"
                    break
            if not ok:
                break
        out.append(PropertyResult("binomial", f"binomial-type:{name}", ok, detail))
    return out


def suite_occupation(order: int, seed: int) -> list[PropertyResult]:
    rng = random.Random(seed)
    out = []
    k_max = min(8, order)
    for name, stat in _catalog_statistics(max(k_max, 8)):
        ok = True
        detail = ""
        for n1 in range(5):
            for n2 in range(5):
                for k in range(k_max + 1):
                    if not st.occupation_recursion_holds(stat, n1, n2, k):
                        ok = False
                        detail = f"(N1,N2,k)=({n1},{n2},{k})"
                        break
        out.append(PropertyResult("occupation", f"recursion:{name}", ok, detail))
        # deformed Chu-Vandermonde at random rational points
        polys = [st.occupation_polynomial(stat, i) for i in range(min(6, k_max) + 1)]
        ok = True
        detail = ""
        for n in range(min(6, k_max) + 1):
            for _ in range(5):
                x, y = random_rational(rng), random_rational(rng)
                lhs = sum(polys[i](x) * polys[n - i](y) for i in range(n + 1))
                if lhs != st.occupation_polynomial(stat, n)(x + y):
                    ok = False
                    detail = f"n={n}, points ({x},{y})"
                    break
        out.append(PropertyResult("occupation", f"vandermonde:{name}", ok, detail))
    return out


def suite_duality(order: int, seed: int) -> list[PropertyResult]:
    rng = random.Random(seed)
    out = []
    ok = True
    detail = ""
    for i in range(100):
        s = random_statistics(rng, order, f"random-{i}")
        if st.dual(st.dual(s)) != s:
            ok = False
            detail = f"instance {i}: {s.cluster_coefficients()[:6]}"
            break
    out.append(PropertyResult("duality", "involution-100-random", ok, detail))
    be = cat.build("bose-einstein", order)
    fd = cat.build("fermi-dirac", order)
    bg = cat.build("boltzmann-gibbs", order)
    out.append(
        PropertyResult("duality", "swaps-be-fd", st.dual(be).F == fd.F and st.dual(fd).F == be.F)
    )
    out.append(PropertyResult("duality", "fixes-bg", st.dual(bg).F == bg.F))
    # group law: associativity, identity, twisted law reduces at m = 0
    ok = True
    detail = ""
    for i in range(5):
        a = random_statistics(rng, min(order, 10), "a")
        b = random_statistics(rng, min(order, 10), "b")
        c = random_statistics(rng, min(order, 10), "c")
        left = st.group_compose(st.group_compose(a, b), c)
        right = st.group_compose(a, st.group_compose(b, c))
        if left != right:
            ok = False
            detail = f"associativity instance {i}"
            break
        bg10 = cat.build("boltzmann-gibbs", min(order, 10))
        if st.group_compose(a, bg10) != a or st.group_compose(bg10, a) != a:
            ok = False
            detail = f"identity instance {i}"
            break
        if st.group_compose_m(a, b, 0) != st.group_compose(a, b):
            ok = False
            detail = f"m=0 reduction instance {i}"
            break
    out.append(PropertyResult("duality", "group-law-random-triples", ok, detail))
    return out


def suite_main_theorem(order: int, seed: int) -> list[PropertyResult]:
    rng = random.Random(seed)
    out = []
    for name, stat in _catalog_statistics(max(order, 12)):
        constant = cat.get(name).registered_constant
        out.append(
            PropertyResult(
                "main-theorem", f"catalog:{name}", main_theorem_holds(stat, constant)
            )
        )
    ok = True
    detail = ""
    for i in range(100):
        s = random_statistics(rng, order, f"random-{i}")
        if not main_theorem_holds(s):
            ok = False
            detail = f"instance {i}: {s.cluster_coefficients()[:6]}"
            break
    out.append(PropertyResult("main-theorem", "100-random-statistics", ok, detail))
    return out


def suite_gradient(order: int, seed: int) -> list[PropertyResult]:
    rng = random.Random(seed)
    out = []
    for name, stat in _catalog_statistics(max(order, 12)):
        out.append(
            PropertyResult("gradient", f"catalog:{name}", entropy_gradient_holds(stat))
        )
    ok = True
    detail = ""
    for i in range(50):
        phi = random_phi(rng, order)
        if not entropy_gradient_holds(phi):
            ok = False
            detail = f"instance {i}: T={phi.t_coefficients()[:5]}"
            break
    out.append(PropertyResult("gradient", "50-random-kernels", ok, detail))
    return out


def suite_xi(order: int, seed: int) -> list[PropertyResult]:
    out = []
    for name, stat in _catalog_statistics(max(order, 16)):
        try:
            xi(stat)  # asserts the integral and free-energy routes agree
            ok, detail = True, ""
        except AssertionError as exc:
            ok, detail = False, str(exc)
        out.append(PropertyResult("xi", f"dual-path:{name}", ok, detail))
    rng = random.Random(seed)
    ok = True
    detail = ""
    for i in range(20):
        phi = random_phi(rng, order)
        # roundtrips through the three spaces
        if not map_g_inverse(map_g(phi)).agrees_with(phi, order - 1):
            ok = False
            detail = f"kernel-statistics roundtrip, instance {i}"
            break
        h = map_f(phi)
        if map_f_inverse(h) != PhiSeries.from_t(phi.t_coefficients()):
            ok = False
            detail = f"kernel-density roundtrip, instance {i}"
            break
        if not tau(tau(phi)).agrees_with(phi, order - 2):
            ok = False
            detail = f"tau involution, instance {i}"
            break
        if not rho(rho(h)).agrees_with(map_f(phi), min(4, len(h.s_coeffs))):
            ok = False
            detail = f"rho involution, instance {i}"
            break
        # commuting triangle: density from the statistics equals density from phi
        if not map_f(map_g_inverse(map_g(phi))).agrees_with(h, order - 2):
            ok = False
            detail = f"commuting triangle, instance {i}"
            break
    out.append(PropertyResult("xi", "bijection-roundtrips-20-random", ok, detail))
    return out


def suite_fixtures(order: int, seed: int) -> list[PropertyResult]:
    out = []
    for fixture in cat.fixtures():
        try:
            ok = fixture.check()
            detail = "" if ok else "coefficients differ"
        except Exception as exc:  # pragma: no cover - defensive
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(
            PropertyResult(
                "fixtures",
                f"{fixture.entry}/{fixture.quantity}[{fixture.provenance}]",
                ok,
                detail,
            )
        )
    for fixture in cat.fixtures():
        if not fixture.oeis:
            continue
        check = oeis.check_fixture(fixture, fetch=False)
        out.append(
            PropertyResult(
                "fixtures",
                f"sequence:{fixture.entry}/{fixture.quantity}~{fixture.oeis}",
                check.passed,
                f"prefix {check.prefix} (need {max(check.min_prefix, 1)})",
            )
        )
    return out


_SUITE_FUNCTIONS: dict[str, Callable[[int, int], list[PropertyResult]]] = {
    "inversion": suite_inversion,
    "binomial": suite_binomial,
    "occupation": suite_occupation,
    "duality": suite_duality,
    "main-theorem": suite_main_theorem,
    "gradient": suite_gradient,
    "xi": suite_xi,
    "fixtures": suite_fixtures,
}


def run(suite: str = "all", order: int = 12, seed: int = 0) -> VerifyReport:
    if suite != "all" and suite not in _SUITE_FUNCTIONS:
        raise ValueError(f"unknown suite {suite!r}; valid: all, {', '.join(SUITES)}")
    names = list(SUITES) if suite == "all" else [suite]
    t0 = time.perf_counter()
    results: list[PropertyResult] = []
    for name in names:
        results.extend(_SUITE_FUNCTIONS[name](order, seed))
    return VerifyReport(results, time.perf_counter() - t0)
