import json
import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from affine_lyndon import verify as vf
from affine_lyndon.errors import UsageError
from affine_lyndon.leclerc import generate_up_to_delta
from affine_lyndon.root_core import build_system
from affine_lyndon.verify import SuiteConfig, run_suite


def clean(doc):
    for r in doc["records"]:
        r["elapsed"] = 0
    return doc


def test_g2_all_orders_all_suites():
    rep = run_suite(SuiteConfig(systems=[("G2", None)], depth=8, suites=vf.PER_TABLE_SUITES))
    assert rep.passed, rep.to_text()
    assert len({r.order for r in rep.records}) == 6


def test_c2_increasing_and_f4_decreasing_examples():
    c2 = generate_up_to_delta("C2", (0, 1, 2), 6)
    rec = vf.check_inc_periodicity(c2, 6)
    assert rec.passed and rec.instances > 0
    f4 = generate_up_to_delta("F4", (0, 2, 4, 1, 3), 10)
    rec = vf.check_dec_periodicity(f4, 10)
    assert rec.passed and rec.stats["max_s"] == 9


def test_d5_connectivity_records_both_forms():
    T = generate_up_to_delta("D5", tuple(range(6)), 2)
    direct, crit = vf.check_connectivity(T)
    assert direct.name == "connectivity_direct" and crit.name == "connectivity_criterion"
    assert direct.passed and crit.passed and direct.instances == crit.instances == 4


def test_runs_are_deterministic_and_serialize_losslessly():
    cfg = SuiteConfig(systems=[("A2", (1, 2, 0)), ("B2", None)], depth=4,
                      suites=("convexity", "flags", "word_lemmas"), word_cases=200)
    a, b = run_suite(cfg).to_json(), run_suite(cfg).to_json()
    assert clean(a) == clean(b)
    assert json.loads(json.dumps(a)) == a
    assert "max s" in run_suite(cfg).to_text()


def test_parallel_matches_serial():
    base = dict(systems=[("A2", None)], depth=4, suites=("monotonicity", "dec_periodicity"))
    s = run_suite(SuiteConfig(**base)).to_json()
    p = run_suite(SuiteConfig(jobs=2, **base)).to_json()
    assert clean(s) == clean(p)


def test_injected_fault_is_reported():
    T = generate_up_to_delta("G2", (1, 2, 0), 6)
    b = next(b for b in sorted(T.system.all_roots) if min(b) >= 0)
    k0, k1 = T.real[(1, b)], T.real[(2, b)]
    T.real[(1, b)], T.real[(2, b)] = k1, k0
    rec = vf.check_monotonicity(T, 6)
    assert not rec.passed and any(str(b) in v for v in rec.violations)


def test_config_validation():
    with pytest.raises(UsageError):
        SuiteConfig(systems=[], suites=("nope",))
    with pytest.raises(UsageError):
        SuiteConfig(systems=[], depth=1, suites=("dec_periodicity",))
    with pytest.raises(UsageError):
        vf.expand_systems(SuiteConfig(systems=[("E6", None)]))
    cells = vf.expand_systems(SuiteConfig(systems=[("E6", None)], sample=3))
    assert len(cells) == 3 and len(set(cells)) == 3
    with pytest.raises(UsageError):
        vf.expand_systems(SuiteConfig(systems=[("A2", (0, 1))]))


def test_u_ratio_warning():
    rep = vf.VerificationReport(records=[vf.CheckRecord("x", "A1", "0<1", stats={"max_u_ratio": 12})])
    assert rep.summary()["max_u_ratio"] == 12
    rep = run_suite(SuiteConfig(systems=[("A1", (0, 1))], suites=("dec_periodicity",)))
    assert rep.summary()["max_u_ratio"] < vf.U_RATIO_WARNING and not rep.warnings


def test_table_orders():
    F4 = build_system("F4")
    assert vf.s_bound_order(F4).letters == (0, 2, 1, 3, 4)
    assert vf.c_bound_order(build_system("C3")).letters == (0, 3, 1, 2)
    rec = vf.check_tables(["F4", "G2", "A3"])
    assert rec.passed, rec.violations


def test_tied_f4_order_also_reaches_nine():
    from affine_lyndon.chains import chain_profile
    T = generate_up_to_delta("F4", (0, 3, 1, 2, 4), 2)
    assert chain_profile(T, (0,) + T.system.theta).s == 9


# -- word lemmas ---------------------------------------------------------------------


def test_word_lemma_helpers():
    assert vf.melancon_holds("0101", "011")
    assert vf.lyndon_subwords_inside("0100")
    assert vf.leclerc14_shape("001") and vf.leclerc14_shape("0011")
    rec = vf.check_word_lemmas(300, seed=5)
    assert rec.passed and rec.stats["lifting_inc"] == 300


def test_lifting_hypotheses_matter():
    # without the suffix condition the decreasing lifting statement fails on some pair
    found = False
    rng = random.Random(1)
    for _ in range(5000):
        ell = vf._rand_lyndon(rng, 3, 1, 2)
        p = [rng.randint(0, 2) for _ in range(2)]
        q = [rng.randint(0, 2) for _ in range(2)]
        w = [vf._rand_word(rng, 3, 1, 3) for _ in range(2)]
        u = [vf._rand_word(rng, 3, 1, 3) for _ in range(2)]
        lhs = vf._render(p, w, ell) > vf._render(q, u, ell)
        rhs = vf._render([x + 1 for x in p], w, ell) > vf._render([x + 1 for x in q], u, ell)
        if lhs != rhs:
            found = True
            break
    assert found


# -- triple sums of finite roots ------------------------------------------------------------


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"])
def test_triple_sum_has_two_root_pairs(name):
    S = build_system(name)
    R = S.all_roots
    zero = (0,) * S.rank
    add = lambda x, y: tuple(a + b for a, b in zip(x, y))
    for a, b, c in product(sorted(R), repeat=3):
        if add(add(a, b), c) not in R:
            continue
        pairs = [add(a, b), add(a, c), add(b, c)]
        if zero in pairs:
            continue
        assert sum(p in R for p in pairs) >= 2, (a, b, c)


# -- properties on random orders ------------------------------------------------------------


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(["A2", "B2", "C2", "G2", "A3"]), st.data())
def test_structural_suites_hold_for_random_orders(name, data):
    n = build_system(name).rank + 1
    order = data.draw(st.permutations(list(range(n))))
    T = generate_up_to_delta(name, tuple(order), 2)
    d = vf.auto_depth(T)
    for fn in (vf.check_convexity, vf.check_monotonicity, vf.check_flags, vf.check_factorization,
               vf.check_dec_periodicity, vf.check_inc_periodicity, vf.check_special_orders):
        rec = fn(T, d)
        assert rec.passed, (fn.__name__, rec.violations[:3])
    assert all(r.passed for r in vf.check_connectivity(T))


@pytest.mark.long_running
def test_e6_all_suites_on_table_order():
    rep = run_suite(SuiteConfig(systems=[("E6", (0, 1, 4, 2, 5, 3, 6))], suites=vf.PER_TABLE_SUITES))
    assert rep.passed, rep.to_text()
