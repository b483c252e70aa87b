"""Acceptance criteria 1-11.

Each test prints one ``criterion N: PASS|FAIL`` line (also collected into the terminal summary)
and then asserts the same condition, so a red criterion shows up in both places.
"""
import functools
import time

import pytest

from affine_lyndon import chains as ch
from affine_lyndon import verify as vf
from affine_lyndon.leclerc import generate_up_to_delta, sl
from affine_lyndon.root_core import finite_part
from affine_lyndon.verify import SuiteConfig, run_suite
from affine_lyndon.words import costandard_factorization

from _oracle import oracle_table
from conftest import ACCEPTANCE_LINES


def report(n, ok, started, budget, detail=""):
    elapsed = time.perf_counter() - started
    ok = ok and elapsed < budget
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s of {budget}s) {detail}".rstrip()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def mismatches(pairs):
    return [(label, got, want) for label, got, want in pairs if got != want]


def chain_listings(T, beta, count):
    return [ch.to_chunk_format(T, ch.element_key(T, beta, k)).listing() for k in range(count)]


def test_criterion_1_f4_golden_words():
    t0 = time.perf_counter()
    T = generate_up_to_delta("F4", (0, 2, 4, 1, 3), 10)
    S = str(sl(T, (1, 2, 3, 4, 2), 1))
    alpha = (0, 1, 1, 2, 2)
    w = lambda j: str(sl(T, tuple(a + j * d for a, d in zip(alpha, T.system.delta))))
    fam = {1: S + "342314"}
    for k in (0, 1):
        fam[2 + 4 * k] = S * (k + 1) + "34" + S * (k + 1) + "34" + S * k + "2" + S * k + "1"
        fam[3 + 4 * k] = S * (k + 1) + "1" + S * k + "2" + S * (k + 1) + "34" + S * (k + 1) + "34"
        fam[4 + 4 * k] = S * (k + 1) + "2" + S * (k + 1) + "34" + S * (k + 1) + "34" + S * (k + 1) + "1"
        fam[5 + 4 * k] = S * (k + 2) + "34" + S * (k + 1) + "2" + S * (k + 1) + "34" + S * (k + 1) + "1"
    checks = [("SL1(delta)", S, "012334423312"), ("SL(alpha)", w(0), "233144")]
    checks += [(f"SL(alpha+{j}delta)", w(j), fam[j]) for j in sorted(fam)]
    listing = [["233144"], [[1, 1], "342314"], [[1, 1], "34", [1, 1], "3421"],
               [[1, 1], "12", [1, 1], "34", [1, 1], "34"], [[1, 1], "2", [1, 1], "34", [1, 1], "34", [1, 1], "1"],
               [[1, 2], "34", [1, 1], "2", [1, 1], "34", [1, 1], "1"],
               [[1, 2], "34", [1, 2], "34", [1, 1], "2", [1, 1], "1"],
               [[1, 2], "1", [1, 1], "2", [1, 2], "34", [1, 2], "34"],
               [[1, 2], "2", [1, 2], "34", [1, 2], "34", [1, 2], "1"]]
    checks.append(("chunk listing", chain_listings(T, alpha[1:], 9), listing))
    bad = mismatches(checks)
    report(1, not bad, t0, 60, f"{len(checks)} exact comparisons" + (f", mismatch {bad[0][0]}" if bad else ""))


def test_criterion_2_d5_golden_words():
    t0 = time.perf_counter()
    T = generate_up_to_delta("D5", (0, 1, 2, 3, 4, 5), 8)
    delta = T.system.delta
    S = str(sl(T, delta, 1))
    w = lambda j: str(sl(T, tuple((j + 1) * d - (i == 0) for i, d in enumerate(delta))))
    fam = {}
    for k in (0, 1):
        fam[3 * k] = S * k + "1" + S * k + "23543" + S * k + "2"
        fam[1 + 3 * k] = S * (k + 1) + "23543" + S * k + "1" + S * k + "2"
        fam[2 + 3 * k] = S * (k + 1) + "234" + S * k + "1" + S * (k + 1) + "235"
    checks = [("SL(delta-alpha0)", w(0), "1235432")]
    checks += [(f"SL({j + 1}delta-alpha0)", w(j), fam[j]) for j in sorted(fam)]
    listing = [["1235432"], [[1, 1], "2354312"], [[1, 1], "2341", [1, 1], "235"],
               [[1, 1], "1", [1, 1], "23543", [1, 1], "2"], [[1, 2], "23543", [1, 1], "1", [1, 1], "2"],
               [[1, 2], "234", [1, 1], "1", [1, 2], "235"]]
    checks.append(("chunk listing", chain_listings(T, T.system.theta, 6), listing))
    M1 = [ch.M_index(T, b) for b in ch.irr_projections(T)]
    checks.append(("M1(beta_i)", M1, [1, 1, 2, 3, 3]))
    bad = mismatches(checks)
    report(2, not bad, t0, 120, f"{len(checks)} exact comparisons" + (f", mismatch {bad[0][0]}" if bad else ""))


def test_criterion_3_g2_chunk_listing():
    t0 = time.perf_counter()
    T = generate_up_to_delta("G2", (1, 2, 0), 9)
    key = T.key_for((9, 16, 24))
    checks = [("flat word", T.word(key).compact(), "1222101222102122210101222101222102122210101222102"),
              ("listing", str(ch.to_chunk_format(T, key)),
               "[[1, 2], '2', [1, 1], '10', [1, 2], '2', [1, 1], '10', [1, 1], '2']")]
    bad = mismatches(checks)
    report(3, not bad, t0, 30, "listing verbatim" if not bad else f"mismatch {bad[0][0]}: {bad[0][1]}")


def test_criterion_4_c2_increasing_pattern():
    t0 = time.perf_counter()
    T = generate_up_to_delta("C2", (0, 1, 2), 7)
    S = str(sl(T, T.system.delta, 1))
    w = lambda k: str(sl(T, tuple(k * d + (i == 0) for i, d in enumerate(T.system.delta))))
    checks = [("SL1(delta)", S, "0121"), ("SL(alpha0+delta)", w(1), "01012"), ("y2", str(ch.y_word(T, 2)), "011")]
    checks += [(f"SL(alpha0+{k}delta)", w(k), "011" + S * (k - 2) + "012012") for k in range(2, 7)]
    bad = mismatches(checks)
    report(4, not bad, t0, 10, f"{len(checks)} exact comparisons" + (f", mismatch {bad[0][0]}" if bad else ""))


def test_g2_increasing_costandard_splits():
    # SL(alpha0 + alpha1 + k delta) under 0<1<2, with the costandard cut moving with k mod 3
    T = generate_up_to_delta("G2", (0, 1, 2), 10)
    S = str(sl(T, (1, 2, 3), 1))
    assert S == "012221" and str(ch.y_word(T, 2)) == "01221"
    for k in range(3, 10):
        a, c = k // 3 - 1, -(-k // 3) - 1
        want = {0: ("01221" + S * a, "01221" + S * a + "01221" + S * a + "01222"),
                1: ("01221" + S * a, "01221" + S * a + "0122201221" + S * c),
                2: ("01221" + S * a + "0122201221" + S * c, "01221" + S * c)}[k % 3]
        u, v = costandard_factorization(sl(T, (1 + k, 1 + 2 * k, 3 * k)))
        assert (str(u), str(v)) == want, k


def test_criterion_5_a_type_spot_checks():
    t0 = time.perf_counter()
    A3 = generate_up_to_delta("A3", (1, 2, 3, 0), 2)
    A2 = generate_up_to_delta("A2", (1, 2, 0), 2)
    checks = [("A3 SL(alpha0+delta)", str(sl(A3, (2, 1, 1, 1))), "10230"),
              ("A2 SL1(delta)", str(sl(A2, (1, 1, 1), 1)), "102"),
              ("A2 SL(alpha1+alpha2+delta)", str(sl(A2, (1, 2, 2))), "12102")]
    bad = mismatches(checks)
    report(5, not bad, t0, 5, "3 exact comparisons" + (f", mismatch {bad[0][0]}" if bad else ""))


def test_criterion_6_a1_oracle():
    t0 = time.perf_counter()
    T = generate_up_to_delta("A1", (0, 1), 3)
    hand = [(str(sl(T, (1, 1), 1)), "01"), (str(sl(T, (2, 1))), "001"), (str(sl(T, (1, 2))), "011"),
            (str(sl(T, (2, 2), 1)), "0011")]
    real, imag = oracle_table("A1", (0, 1), 3)
    same_real = len(real) == len(T.real) and all(
        T.real[(v[0], finite_part(T.system, v))] == key for v, key in real.items())
    same_imag = all(T.imag[k] == row for k, row in imag.items()) and set(imag) == set(range(1, 4))
    ok = all(a == b for a, b in hand) and same_real and same_imag
    report(6, ok, t0, 1, f"{len(real)} real and {len(imag)} imaginary levels against the brute-force recursion")


DESK = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2", "F4"]


def test_criterion_7_table_tightness():
    t0 = time.perf_counter()
    rec = vf.check_tables(DESK)
    report(7, rec.passed, t0, 600, f"{len(DESK)} types, {rec.instances} checks, {rec.violation_count} violations"
           + (f": {rec.violations[0]}" if rec.violations else ""))


@pytest.mark.long_running
def test_criterion_7_table_tightness_e_types():
    rec = vf.check_tables(["E6", "E7", "E8"])
    assert rec.passed, rec.violations


MATRIX = [("A2", (0, 1, 2)), ("A2", (1, 2, 0)), ("A2", (2, 0, 1)),
          ("A3", (0, 1, 2, 3)), ("A3", (1, 2, 3, 0)), ("A3", (3, 1, 0, 2)),
          ("B2", (0, 1, 2)), ("B2", (2, 0, 1)), ("B2", (1, 2, 0)),
          ("D4", (0, 1, 2, 3, 4)), ("D4", (2, 0, 4, 1, 3)), ("D4", (4, 3, 2, 1, 0)),
          ("F4", (0, 1, 2, 3, 4)), ("F4", (0, 2, 4, 1, 3)), ("F4", (4, 3, 1, 0, 2)),
          ("G2", None), ("C2", None)]


@functools.lru_cache(maxsize=None)
def matrix_report():
    suites = tuple(s for s in vf.PER_TABLE_SUITES if s != "connectivity")
    return run_suite(SuiteConfig(systems=MATRIX, suites=suites))


def test_criterion_8_property_matrix():
    t0 = time.perf_counter()
    rep = matrix_report()
    summ = rep.summary()
    cells = {(r.system, r.order) for r in rep.records}
    bad = [r for r in rep.records if not r.passed]
    detail = f"{len(cells)} cells, {summ['checks']} records, {summ['instances']} instances, {summ['failed']} failed"
    if bad:
        detail += f": {bad[0].name} {bad[0].system} {bad[0].order} {bad[0].violations[:1]}"
    report(8, len(cells) == 27 and not bad, t0, 900, detail)


def test_criterion_9_connectivity():
    t0 = time.perf_counter()
    types = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2", "F4"]
    rep = run_suite(SuiteConfig(systems=[(t, None) for t in types], suites=("connectivity",)))
    orders = {(r.system, r.order) for r in rep.records}
    names = {r.name for r in rep.records}
    ok = rep.passed and len(orders) == 218 and names == {"connectivity_direct", "connectivity_criterion"}
    report(9, ok, t0, 600, f"{len(orders)} orders, both formulations, {rep.summary()['failed']} failed")


def test_criterion_10_word_lemmas():
    t0 = time.perf_counter()
    rec = vf.check_word_lemmas(10_000, seed=0)
    counts = {k: v for k, v in rec.stats.items() if isinstance(v, int)}
    ok = rec.passed and len(counts) == 6 and min(counts.values()) >= 10_000
    report(10, ok, t0, 60, f"min cases {min(counts.values())} over {len(counts)} lemmas, "
                           f"{rec.violation_count} violations")


def test_criterion_11_u_statistic():
    t0 = time.perf_counter()
    rep = matrix_report()
    ratio = rep.summary()["max_u_ratio"]
    ok = ratio is not None and ratio < vf.U_RATIO_WARNING and not rep.warnings
    # rides on the matrix run, so the budget is that of criterion 8
    report(11, ok, t0, 900, f"max |u|/|delta| = {ratio} over the criterion 8 matrix")
