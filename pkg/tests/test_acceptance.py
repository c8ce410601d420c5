"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line; the lines are printed in the
pytest terminal summary and when this file is run as a script.
"""

import time
from math import comb

import pytest

from forestramsey.calc import classical_r, ramsey_forest, size_ramsey_upper, star_forest
from forestramsey.canon import canonical_coloring_form
from forestramsey.forest import Forest, parse_forest
from forestramsey.graph import MAX_ORDER, build_complete, build_pendant_star, is_free_coloring
from forestramsey.oracle import ArrowQuery, arrows, enumerate_free_colorings, min_ramsey, min_star
from forestramsey.witness import (
    critical_family,
    ramsey_full_witness,
    ramsey_lower_witness,
    star_lower_witness,
    verify_witness,
)

import brute

RESULTS = {}


def record(number, title, ok, detail):
    RESULTS[number] = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    return ok


def tree_forest(n, k):
    return parse_forest(f"{k}*P{n}" if n > 2 else f"{k}*K2")


def test_criterion_1_formula_matches_oracle():
    named = {"2*K2": 5, "3*K2": 7, "P3+K2": 6, "P4": 7, "2*P3": 8}
    bad = []
    start = time.monotonic()
    forests = brute.forests(6)
    for f in forests:
        res = min_ramsey(f, (3,))
        want = ramsey_forest(f, (3,)).value
        if res.value != want or not is_free_coloring(res.certificate, f, (3,)):
            bad.append(f"{f}: oracle {res.value} formula {want}")
    for spec, value in named.items():
        if ramsey_forest(parse_forest(spec), (3,)).value != value:
            bad.append(f"{spec}: formula differs from {value}")
    elapsed = time.monotonic() - start
    detail = f"{len(forests)} forests, named cases {sorted(named.values())}, {elapsed:.1f}s" if not bad else "; ".join(bad)
    assert record(1, "R(F, K3) by exhaustion equals the closed form", not bad, detail), detail


def test_criterion_2_star_critical_matches_oracle():
    expected = {"2*K2": 4, "3*K2": 6, "P3+K2": 5, "P4": 4}
    got = {}
    start = time.monotonic()
    for spec in expected:
        f = parse_forest(spec)
        got[spec] = (min_star(f, (3,)).value, star_forest(f, (3,)).value)
    elapsed = time.monotonic() - start
    ok = all(got[s] == (v, v) for s, v in expected.items()) and elapsed <= 300
    detail = ", ".join(f"{s}: oracle {o} formula {w}" for s, (o, w) in got.items()) + f", {elapsed:.1f}s"
    assert record(2, "R_*(F, K3) by exhaustion equals the closed form", ok, detail), detail


def test_criterion_3_characterization():
    cases = {(2, 3, 2): 1, (2, 3, 3): 2, (3, 3, 2): 1, (2, 4, 2): 1}
    notes, ok = [], True
    for (n, m, k), count in cases.items():
        order = (n - 1) * (m - 2) + n * k - 1
        found = enumerate_free_colorings(build_complete(order), tree_forest(n, k), (m,))
        got = {canonical_coloring_form(c, cap=MAX_ORDER) for c in found}
        want = {canonical_coloring_form(w.coloring, cap=MAX_ORDER) for w in critical_family(n, m, k)}
        same = got == want and len(got) == count
        ok &= same
        notes.append(f"{(n, m, k)}: {len(got)} enumerated / {len(want)} family")
    detail = ", ".join(notes)
    assert record(3, "free colorings on R-1 vertices are exactly the critical family", ok, detail), detail


def test_criterion_4_ramsey_full():
    full = arrows(ArrowQuery(build_complete(6), None, (3, 3))).arrows
    minus = arrows(ArrowQuery(build_complete(6).without_edge(0, 1), None, (3, 3))).arrows
    w = ramsey_full_witness((3, 3))
    ok = full is True and minus is False and bool(verify_witness(w))
    detail = f"K6 arrows={full}, K6-e arrows={minus}, duplication witness verified={bool(verify_witness(w))}"
    assert record(4, "K6 arrows (K3, K3) but K6 - e does not", ok, detail), detail


def test_criterion_5_multicolor_lower_bounds():
    f = parse_forest("2*K2")
    ms = (3, 3)
    r = ramsey_forest(f, ms).value
    rs = star_forest(f, ms).value
    sw = star_lower_witness(f, ms)
    bw = ramsey_lower_witness(f, ms)
    g = sw.coloring.graph
    shape = (g.order, g.degree(g.order - 1), bw.coloring.graph.order)
    lower_ok = (r, rs) == (8, 7) and bool(verify_witness(sw)) and bool(verify_witness(bw)) and shape == (8, 6, 7)
    # upper bounds: attempted with a budget; an undecided search is recorded, not failed
    upper = arrows(ArrowQuery(build_complete(r), f, ms, time_budget=120)).arrows
    upper_star = arrows(ArrowQuery(build_pendant_star(r - 1, rs), f, ms, time_budget=120)).arrows
    verdict = {True: "verified", None: "indeterminate", False: "REFUTED"}
    ok = lower_ok and upper is not False and upper_star is not False
    detail = (
        f"witnesses on K7+K1,6 and K7 verify (R >= {r}, R_* >= {rs}); "
        f"K{r} arrows: {verdict[upper]}, K{r - 1}+K1,{rs} arrows: {verdict[upper_star]}"
    )
    assert record(5, "three-color lower-bound witnesses for (2K2, K3, K3)", ok, detail), detail


def test_criterion_6_identities():
    problems = []
    forests = brute.forests(6)
    for f in forests:
        for m in range(3, 7):
            a, b = size_ramsey_upper(f, m)
            if a != b:
                problems.append(f"size forms differ for {f}, {m}")
    for t in range(1, 5):
        for m in range(3, 7):
            if size_ramsey_upper(parse_forest(f"{t}*K2"), m)[0] != comb(m + 2 * t - 2, 2):
                problems.append(f"matching bound t={t} m={m}")
    for n in range(2, 7):
        for tree in brute.trees(n):
            for m in range(3, 7):
                one = Forest([tree])
                if star_forest(one, (m,)).value != (n - 1) * (m - 2) + 1:
                    problems.append(f"single tree star {tree.to_spec()} m={m}")
                if ramsey_forest(one, (m,)).value != (n - 1) * (m - 1) + 1:
                    problems.append(f"single tree Ramsey {tree.to_spec()} m={m}")
                for k in range(1, 5):
                    many = Forest([tree] * k)
                    if star_forest(many, (m,)).value != (n - 1) * (m - 3) + n * k:
                        problems.append(f"copies star {tree.to_spec()} k={k} m={m}")
                    if ramsey_forest(many, (m,)).value != (n - 1) * (m - 2) + n * k:
                        problems.append(f"copies Ramsey {tree.to_spec()} k={k} m={m}")
    ok = not problems
    detail = f"{len(forests)} forests x m in 3..6, matchings t in 1..4, all trees up to order 6" if ok else "; ".join(problems[:5])
    assert record(6, "closed-form identities", ok, detail), detail


def test_criterion_7_witness_properties():
    failures = []
    count = 0
    start = time.monotonic()
    for n in range(2, 5):
        for m in range(3, 6):
            for k in range(1, 4):
                fam = critical_family(n, m, k)
                for w in fam:
                    count += 1
                    if not verify_witness(w):
                        failures.append(f"critical {(n, m, k)}")
                if k == 1:
                    red = fam[0].coloring.color_class(0)
                    if len(fam) != 1 or sorted(red.degrees()) != [n - 2] * ((n - 1) * (m - 1)):
                        failures.append(f"unique coloring {(n, m)}")
    for f in brute.forests(6):
        for ms in [(m,) for m in range(3, 6)] + [(3, 3)]:
            r = ramsey_forest(f, ms).value
            rs = star_forest(f, ms).value
            sw = star_lower_witness(f, ms)
            bw = ramsey_lower_witness(f, ms)
            count += 2
            g = sw.coloring.graph
            if not (verify_witness(sw) and verify_witness(bw)):
                failures.append(f"{f} {ms} verify")
            if g.order != r or g.degree(g.order - 1) != rs - 1 or bw.coloring.graph.order != r - 1:
                failures.append(f"{f} {ms} shape")
    for ms in [(3,), (3, 3), (3, 4), (3, 5), (3, 6), (4, 4), (3, 3, 3)]:
        count += 1
        if not verify_witness(ramsey_full_witness(ms)):
            failures.append(f"full {ms}")
    elapsed = time.monotonic() - start
    ok = not failures and elapsed <= 60
    detail = f"{count} witnesses verified in {elapsed:.1f}s" if ok else "; ".join(failures[:5]) or f"{elapsed:.1f}s"
    assert record(7, "every constructed witness verifies with the predicted shape", ok, detail), detail


@pytest.fixture(scope="module", autouse=True)
def _report(request):
    yield
    lines = [RESULTS[k] for k in sorted(RESULTS)]
    request.config._acceptance_lines = lines


if __name__ == "__main__":
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for k in sorted(RESULTS):
        print(RESULTS[k])
    sys.exit(0 if all("[PASS]" in line for line in RESULTS.values()) else 1)
