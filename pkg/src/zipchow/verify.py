"""Verification suites shared by the command line and the test suite.

Each suite runs a list of named checks and returns their results; the
caller decides whether a failure aborts.  All randomness is drawn from
a seeded generator so runs are reproducible byte for byte.

  operators  divided-difference laws (square zero, braid independence,
             Leibniz) and the pushforward against its divided-difference
             composite
  diagonal   fixed-point criterion for the diagonal class
  chevalley  the divisor relation, compared through fixed-point tuples
  basis      finite models: certified dimensions, stratum independence,
             duality pairings
  hodge      positivity of stratum expansions of Hodge powers, plus the
             closed product formulas
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable

from zipchow.chowpipeline import (
    build_coinvariant_model,
    hodge_class,
    hodge_power_expand,
    pi_star,
    stratum_class,
)
from zipchow.coeffpoly import MultiPoly, ParamPoly
from zipchow.presets import build_preset
from zipchow.rationals import QQ
from zipchow.rootweyl import (
    CartanComponent,
    RootDatum,
    WeylElt,
    enumerate_weyl,
)
from zipchow.schubert import (
    bruhat_tuple,
    chevalley_sides,
    delta_word,
    diagonal_class,
    divided_difference,
    i_w_eval,
    positive_root_product,
)
from zipchow.zipdatum import ZipDatum


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _check(results: list[CheckResult], name: str, ok: bool, detail: str = "") -> None:
    results.append(CheckResult(name, bool(ok), detail))


def _random_poly(
    rng: random.Random,
    datum: RootDatum,
    max_degree: int = 5,
    n_terms: int = 4,
    max_p: int = 1,
) -> MultiPoly:
    space = datum.space
    n = len(space.names)
    f = MultiPoly.zero(space)
    for _ in range(n_terms):
        expo = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            expo[rng.randrange(n)] += 1
        num = rng.randint(-5, 5)
        if num == 0:
            continue
        coeff = QQ(num, rng.randint(1, 3))
        f = f + MultiPoly.monomial(space, tuple(expo), coeff, rng.randint(0, max_p))
    return f


def _all_reduced_words(datum: RootDatum, w: WeylElt) -> list[tuple[int, ...]]:
    if w.is_identity():
        return [()]
    words = []
    for s in datum.simple_labels:
        if w.is_left_descent(s):
            rest = datum.simple_reflection(s) * w
            words.extend((s,) + tail for tail in _all_reduced_words(datum, rest))
    return words


def suite_operators(seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    results: list[CheckResult] = []
    data = {
        "C3": RootDatum((CartanComponent("C", 3),)),
        "B3": RootDatum((CartanComponent("B", 3),)),
    }
    for tag, datum in data.items():
        diag = diagonal_class(datum)
        square_ok = all(
            divided_difference(
                datum, s, divided_difference(datum, s, diag)
            ).is_zero()
            for s in datum.simple_labels
        )
        _check(results, f"operators/{tag}/square-zero", square_ok)
        braid_ok = True
        braid_detail = ""
        for w in enumerate_weyl(datum):
            if not 2 <= w.length <= 4:
                continue
            words = _all_reduced_words(datum, w)
            values = [delta_word(datum, word, diag) for word in words]
            if any(v != values[0] for v in values[1:]):
                braid_ok = False
                braid_detail = f"w={w.word_string()} words disagree"
                break
        _check(results, f"operators/{tag}/braid-independence", braid_ok, braid_detail)

    datum = RootDatum((CartanComponent("C", 2),))
    leibniz_ok = True
    leibniz_detail = ""
    for trial in range(100):
        f = _random_poly(rng, datum)
        g = _random_poly(rng, datum)
        s = rng.choice(list(datum.simple_labels))
        lhs = divided_difference(datum, s, f * g)
        rhs = divided_difference(datum, s, f) * g + datum.simple_reflection(s).act(
            f
        ) * divided_difference(datum, s, g)
        if lhs != rhs:
            leibniz_ok = False
            leibniz_detail = (
                f"trial {trial}, s{s}: f={f.render()}, g={g.render()}"
            )
            break
    _check(results, "operators/C2/leibniz", leibniz_ok, leibniz_detail)

    presets = [
        ("siegel", (2,)),
        ("siegel", (3,)),
        ("spin-odd", (2,)),
        ("spin-odd", (3,)),
    ]
    for name, params in presets:
        Z = build_preset(name, params)
        word = Z.longest_circ.reduced_word()
        ok = True
        detail = ""
        for trial in range(50):
            f = _random_poly(rng, Z.datum, max_degree=4, n_terms=3)
            via_sum = pi_star(Z, f)
            via_delta = delta_word(Z.datum, word, f)
            if via_sum != via_delta:
                ok = False
                detail = f"trial {trial}: f={f.render()}"
                break
        _check(
            results,
            f"operators/{name}:{','.join(map(str, params))}/pushforward-composite",
            ok,
            detail,
        )
    return results


def suite_diagonal(seed: int = 0) -> list[CheckResult]:
    results: list[CheckResult] = []
    data: list[tuple[str, RootDatum]] = []
    for n in (2, 3, 4):
        data.append((f"A{n - 1}", RootDatum((CartanComponent("A", n),))))
    for n in (2, 3):
        data.append((f"B{n}", RootDatum((CartanComponent("B", n),))))
        data.append((f"C{n}", RootDatum((CartanComponent("C", n),))))
    data.append(("D3", RootDatum((CartanComponent("D", 3),))))
    for d in (2, 3, 4):
        data.append(
            (f"A1^{d}", RootDatum(tuple(CartanComponent("A", 2) for _ in range(d))))
        )
    for tag, datum in data:
        diag = diagonal_class(datum)
        expected = positive_root_product(datum)
        at_e = i_w_eval(datum, datum.identity(), diag)
        _check(
            results,
            f"diagonal/{tag}/identity-evaluation",
            at_e == expected,
            "" if at_e == expected else f"got {at_e.render()}",
        )
        vanish_ok = True
        vanish_detail = ""
        for w in enumerate_weyl(datum):
            if w.is_identity():
                continue
            val = i_w_eval(datum, w, diag)
            if not val.is_zero():
                vanish_ok = False
                vanish_detail = f"w={w.word_string()}: {val.render()}"
                break
        _check(results, f"diagonal/{tag}/off-point-vanishing", vanish_ok, vanish_detail)
    return results


def suite_chevalley(seed: int = 0) -> list[CheckResult]:
    results: list[CheckResult] = []
    data = [
        ("A2", RootDatum((CartanComponent("A", 3),))),
        ("B2", RootDatum((CartanComponent("B", 2),))),
        ("C2", RootDatum((CartanComponent("C", 2),))),
    ]
    for tag, datum in data:
        ok = True
        detail = ""
        n = datum.nvars
        for w in enumerate_weyl(datum):
            if w.length > 3:
                continue
            for i in range(n):
                lam = tuple(1 if k == i else 0 for k in range(n))
                lhs, rhs = chevalley_sides(datum, w, lam)
                if bruhat_tuple(datum, lhs) != bruhat_tuple(datum, rhs):
                    ok = False
                    detail = f"w={w.word_string()}, lambda=x{i + 1}"
                    break
            if not ok:
                break
        _check(results, f"chevalley/{tag}/divisor-relation", ok, detail)
    return results


BASIS_PRESETS: tuple[tuple[str, tuple[int, ...]], ...] = (
    ("siegel", (2,)),
    ("siegel", (3,)),
    ("spin-odd", (2,)),
    ("spin-odd", (3,)),
    ("hilbert-blumenthal", (1,)),
    ("hilbert-blumenthal", (2,)),
    ("hilbert-blumenthal", (3,)),
    ("hilbert-blumenthal", (4,)),
)


def suite_basis(
    seed: int = 0, primes: tuple[int, ...] | None = None
) -> list[CheckResult]:
    results: list[CheckResult] = []
    for name, params in BASIS_PRESETS:
        Z = build_preset(name, params)
        tag = f"{name}:{','.join(map(str, params))}"
        for p0 in primes or (2, 3, 5):
            try:
                model = build_coinvariant_model(Z, p0)
            except AssertionError as exc:
                _check(results, f"basis/{tag}/p{p0}/model", False, str(exc))
                continue
            _check(results, f"basis/{tag}/p{p0}/model", True)
            unit_ok = True
            unit_detail = ""
            for w in Z.coset_reps:
                expansion = model.basis_expand(model.numeric_class(w))
                if expansion != {w: QQ(1)}:
                    unit_ok = False
                    unit_detail = f"w={w.word_string()}: {expansion}"
                    break
            _check(results, f"basis/{tag}/p{p0}/stratum-independence", unit_ok, unit_detail)
            pair_ok = True
            pair_detail = ""
            for j in range(Z.d + 1):
                if not model.pairing_nondegenerate(j):
                    pair_ok = False
                    pair_detail = f"degree {j} pairing is degenerate"
                    break
            _check(results, f"basis/{tag}/p{p0}/duality", pair_ok, pair_detail)
    return results


HODGE_PRESETS: tuple[tuple[str, tuple[int, ...]], ...] = (
    ("siegel", (2,)),
    ("spin-odd", (2,)),
    ("hilbert-blumenthal", (1,)),
    ("hilbert-blumenthal", (2,)),
    ("hilbert-blumenthal", (3,)),
    ("hilbert-blumenthal", (4,)),
)


def hodge_positivity_checks(
    Z: ZipDatum, preset: str, p0: int, results: list[CheckResult], tag: str
) -> None:
    model = build_coinvariant_model(Z, p0)
    lam = hodge_class(model, preset)
    by_length: dict[int, list[WeylElt]] = {}
    for w in Z.coset_reps:
        by_length.setdefault(w.length, []).append(w)
    positive_ok = True
    positive_detail = ""
    equal_report: list[str] = []
    for j in range(Z.d + 1):
        coeffs = hodge_power_expand(model, lam, j)
        expected = set(by_length.get(j, []))
        if set(coeffs) != expected or any(c <= 0 for c in coeffs.values()):
            positive_ok = False
            positive_detail = (
                f"j={j}: "
                + ", ".join(
                    f"{w.word_string()}:{c}" for w, c in sorted(
                        coeffs.items(), key=lambda kv: kv[0].reduced_word()
                    )
                )
            )
            break
        if len({c for c in coeffs.values()}) > 1:
            equal_report.append(f"j={j}")
    detail = (
        "coefficients differ within length at " + ", ".join(equal_report)
        if equal_report
        else "coefficients equal within each length"
    )
    results.append(
        CheckResult(
            f"hodge/{tag}/p{p0}/power-positivity",
            positive_ok,
            positive_detail if not positive_ok else detail,
        )
    )


def suite_hodge(
    seed: int = 0, primes: tuple[int, ...] | None = None
) -> list[CheckResult]:
    results: list[CheckResult] = []
    for name, params in HODGE_PRESETS:
        Z = build_preset(name, params)
        tag = f"{name}:{','.join(map(str, params))}"
        for p0 in primes or (3, 5):
            hodge_positivity_checks(Z, name, p0, results, tag)
    for d in range(1, 6):
        Z = build_preset("hilbert-blumenthal", (d,))
        space = Z.datum.space
        lam = MultiPoly.zero(space)
        for c in range(d):
            lam = lam - MultiPoly.variable(space, space.names[Z.datum.offsets[c] + 1])
        total = MultiPoly.zero(space)
        for w in Z.coset_reps:
            if w.length == Z.d - 1:
                report = stratum_class(Z, w)
                total = total + report.zip_class
        expected = lam * (ParamPoly.p() - 1)
        _check(
            results,
            f"hodge/hilbert-blumenthal:{d}/divisor-sum",
            total == expected,
            "" if total == expected else f"sum={total.render()}",
        )
    return results


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "operators": suite_operators,
    "diagonal": suite_diagonal,
    "chevalley": suite_chevalley,
    "basis": suite_basis,
    "hodge": suite_hodge,
}

_PRIME_SUITES = {"basis", "hodge"}


def run_suites(
    names: Iterable[str] | str = "all",
    seed: int = 0,
    primes: tuple[int, ...] | None = None,
) -> list[CheckResult]:
    if isinstance(names, str):
        names = list(SUITES) if names == "all" else [names]
    results: list[CheckResult] = []
    for name in names:
        if name not in SUITES:
            raise ValueError(
                f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'"
            )
        if name in _PRIME_SUITES:
            results.extend(SUITES[name](seed, primes))
        else:
            results.extend(SUITES[name](seed))
    return results
