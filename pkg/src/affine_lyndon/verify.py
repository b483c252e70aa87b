"""Batch verification of structural results over (type, order, depth) cells.

Every check produces a :class:`CheckRecord` listing the number of instances
examined and a reproducible description of every violation.  Cells are
independent, so :func:`run_suite` can fan them out over processes.
"""

from __future__ import annotations

import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import permutations
from typing import Callable, Iterable, Optional, Sequence

from . import chains as ch
from .errors import AffineLyndonError, UsageError
from .leclerc import SLTable, generate_up_to_delta
from .root_core import (
    FiniteRootSystem,
    FiniteType,
    RationalBasis,
    _gram,
    affine_vector,
    build_system,
    classify,
    finite_part,
    pairing,
    span_index,
    REAL,
)
from .words import (
    LetterOrder,
    key_canonical_factorization,
    key_costandard,
    key_is_lyndon,
    key_standard,
)

SUITES = (
    "convexity",
    "monotonicity",
    "flags",
    "factorization",
    "dec_periodicity",
    "inc_periodicity",
    "connectivity",
    "tables",
    "special_orders",
    "word_lemmas",
)
PER_TABLE_SUITES = SUITES[:7] + ("special_orders",)
MAX_STORED_VIOLATIONS = 50
U_RATIO_WARNING = 10

# Upper bounds on periodicities of decreasing / increasing chains by type.
S_BOUND = {"A1": 1, "A2": 2, "B2": 3, "C2": 3, "B3": 5, "C3": 5, "D4": 5,
           "E6": 9, "E7": 12, "E8": 18, "F4": 9, "G2": 5}
C_BOUND = {"A": 1, "D": 1, "B": 2, "C": 2, "E6": 2, "E7": 2, "E8": 3, "F4": 2, "G2": 3}
C_BOUND_ORDERS = {
    "E6": (0, 1, 4, 2, 5, 3, 6),
    "E7": (0, 1, 5, 2, 6, 4, 3, 7),
    "E8": (0, 1, 6, 2, 3, 4, 7, 5, 8),
    "F4": (0, 1, 4, 2, 3),
    "G2": (0, 1, 2),
}


def s_bound(ft: FiniteType) -> int:
    key = str(ft)
    if key in S_BOUND:
        return S_BOUND[key]
    if ft.family == "A":
        return 3
    if ft.family in "BCD":
        return 6
    raise UsageError(f"no tabulated bound for {ft}")


def c_bound(ft: FiniteType) -> int:
    return C_BOUND.get(str(ft), C_BOUND.get(ft.family))


# -- records ---------------------------------------------------------------------


@dataclass
class CheckRecord:
    name: str
    system: str
    order: str
    instances: int = 0
    violation_count: int = 0
    violations: list = field(default_factory=list)
    elapsed: float = 0.0
    error: Optional[str] = None
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0 and self.error is None

    def check(self, cond: bool, describe: Callable[[], str] | str) -> bool:
        self.instances += 1
        if not cond:
            self.violation_count += 1
            if len(self.violations) < MAX_STORED_VIOLATIONS:
                self.violations.append(describe() if callable(describe) else describe)
        return cond


@dataclass
class VerificationReport:
    records: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def summary(self) -> dict:
        def best(key):
            vals = [r.stats[key] for r in self.records if key in r.stats]
            return max(vals) if vals else None
        return {
            "checks": len(self.records),
            "failed": sum(not r.passed for r in self.records),
            "instances": sum(r.instances for r in self.records),
            "max_s": best("max_s"),
            "max_c": best("max_c"),
            "max_u_ratio": best("max_u_ratio"),
        }

    def to_json(self) -> dict:
        return {"summary": self.summary(), "warnings": list(self.warnings),
                "records": [asdict(r) for r in self.records]}

    def to_text(self) -> str:
        lines = [f"{'check':<22} {'system':<6} {'order':<20} {'inst':>8} {'viol':>5} {'time':>7}"]
        for r in self.records:
            status = "ERROR" if r.error else str(r.violation_count)
            lines.append(f"{r.name:<22} {r.system:<6} {r.order:<20} {r.instances:>8} {status:>5} {r.elapsed:>6.2f}s")
            for v in r.violations[:5]:
                lines.append(f"    - {v}")
            if r.error:
                lines.append(f"    ! {r.error}")
        s = self.summary()
        lines.append(f"max s = {s['max_s']}, max c = {s['max_c']}, max |u|/|delta| = {s['max_u_ratio']}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


@dataclass
class SuiteConfig:
    """``systems`` holds ``(type, order)`` with order ``None`` meaning every order."""

    systems: Sequence[tuple]
    depth: Optional[int] = None
    suites: Sequence[str] = SUITES
    jobs: int = 1
    sample: Optional[int] = None
    seed: int = 0
    word_cases: int = 10_000

    def __post_init__(self) -> None:
        bad = set(self.suites) - set(SUITES)
        if bad:
            raise UsageError(f"unknown suites: {sorted(bad)}")
        if self.depth is not None and self.depth < 2 and \
                {"dec_periodicity", "inc_periodicity"} & set(self.suites):
            raise UsageError("periodicity suites need depth >= 2")


# -- a read-only view of a generated table ------------------------------------------


class _View:
    def __init__(self, table: SLTable, depth: int):
        table.ensure(depth)
        self.t = table
        self.depth = depth
        self.S = table.system
        self.h = table.system.delta_height
        self.roots = sorted(table.system.all_roots)
        self.label = (str(table.system.type), str(table.order))

    def record(self, name: str) -> CheckRecord:
        return CheckRecord(name, *self.label)

    def avail(self, m: int, b) -> bool:
        return SLTable._positive(m, b) and self.t.level_needed(m, b) <= self.depth

    def chain_len(self, b) -> int:
        base = ch.base_level(b)
        p = 0
        while self.avail(base + p, b):
            p += 1
        return p

    def key(self, b, p: int) -> str:
        return self.t.real[(ch.base_level(b) + p, b)]

    def w(self, key: str) -> str:
        return str(self.t.word(key))

    def dirs(self, k: int):
        return [d for _, d in self.t.imag[k]]

    def m_k(self, b, k: int = 1) -> int:
        return span_index(self.dirs(k), b)

    def M_k(self, b, k: int = 1) -> int:
        for r, d in enumerate(self.dirs(k), start=1):
            if pairing(self.S, d, b):
                return r
        return 0

    def imag(self, k: int, r: int) -> str:
        return self.t.imag[k][r - 1][0]

    def deg(self, key: str):
        return self.t.key_degree(key)

    def real_info(self, key: str):
        """(level, finite part) when the word's degree is a real root, else None."""
        d = self.deg(key)
        if classify(self.S, d) != REAL:
            return None
        return d[0], finite_part(self.S, d)

    def profile(self, b):
        return ch.chain_profile(self.t, affine_vector(self.S, b, ch.base_level(b)))

    def inc(self, b) -> bool:
        return ch.is_increasing(self.t, b)


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rec = fn(*args, **kwargs)
        rec.elapsed = time.perf_counter() - t0
        return rec
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


# -- convexity ----------------------------------------------------------------------


@_timed
def check_convexity(table: SLTable, depth: int) -> CheckRecord:
    v = _View(table, depth)
    rec = v.record("convexity")
    real = v.t.real
    rootset = v.S.all_roots
    inc = {b: v.inc(b) for b in v.roots}
    for b1 in v.roots:
        for b2 in v.roots:
            t = _add(b1, b2)
            if t not in rootset:
                continue
            for m1 in range(depth + 1):
                if not v.avail(m1, b1):
                    continue
                k1 = real[(m1, b1)]
                for m2 in range(depth + 1 - m1):
                    if not v.avail(m2, b2) or not v.avail(m1 + m2, t):
                        continue
                    k2 = real[(m2, b2)]
                    if k1 >= k2:
                        continue
                    ks = real[(m1 + m2, t)]
                    rec.check(k1 < ks < k2, lambda: f"part 1: {v.w(k1)} < {v.w(ks)} < {v.w(k2)} fails")
                    if inc[b1] and not inc[b2]:
                        pass  # covered by part 1 since k1 < k2 already
                    if not inc[b1] and inc[b2]:
                        rec.check(False, lambda: f"increasing {v.w(k2)} should be below decreasing {v.w(k1)}")
    # parts 2 and 3
    for b in v.roots:
        base = ch.base_level(b)
        for p in range(v.chain_len(b)):
            ka = v.key(b, p)
            for k in range(1, depth + 1):
                if not v.avail(base + p + k, b):
                    break
                kk = v.key(b, p + k)
                mk = v.imag(k, v.m_k(b, k))
                Mk = v.imag(k, v.M_k(b, k))
                if ka < mk:
                    rec.check(ka < kk < mk, lambda: f"part 2 at {b}+{base + p}d, k={k}")
                if Mk < ka:
                    rec.check(Mk < kk < ka, lambda: f"part 3 at {b}+{base + p}d, k={k}")
    # part 4: alpha + beta imaginary
    for b in v.roots:
        nb = _neg(b)
        for m1 in range(depth + 1):
            if not v.avail(m1, b):
                continue
            for m2 in range(depth + 1 - m1):
                if not v.avail(m2, nb) or m1 + m2 == 0:
                    continue
                k = m1 + m2
                ka, kb = real[(m1, b)], real[(m2, nb)]
                if ka > kb:
                    continue
                ma, mb = v.m_k(b, k), v.m_k(nb, k)
                Ma, Mb = v.M_k(b, k), v.M_k(nb, k)
                ok = ma == mb and Ma == Mb and ka < v.imag(k, ma) and v.imag(k, ma) <= v.imag(k, Ma) \
                    and v.imag(k, Ma) < kb
                rec.check(ok, lambda: f"part 4 for {b}+{m1}d, {nb}+{m2}d: m=({ma},{mb}) M=({Ma},{Mb})")
    return rec


# -- monotonicity and chain invariants ------------------------------------------------


@_timed
def check_monotonicity(table: SLTable, depth: int) -> CheckRecord:
    v = _View(table, min(depth, max(2, depth)))
    rec = v.record("monotonicity")
    S = v.S
    irr = ch.irr_projections(v.t)
    vb = ch.v_bound(S)
    pos_p = [b for b in v.roots if v.inc(b)]
    theta_p = max(pos_p, key=lambda b: sum(ch.beta_coefficients(v.t, b)))
    f_theta = ch.f_value(v.t, ch.beta_coefficients(v.t, _neg(theta_p)))
    for b in v.roots:
        inc = v.inc(b)
        prof = v.profile(b)
        n = v.chain_len(b)
        keys = [v.key(b, p) for p in range(n)]
        mono = all(keys[p] < keys[p + 1] for p in range(n - 1)) if inc else \
            all(keys[p] > keys[p + 1] for p in range(n - 1))
        rec.check(mono, lambda: f"chain {b} is not monotone: {[v.w(k) for k in keys[:4]]}")
        M1 = v.imag(1, v.M_k(b, 1))
        rec.check(inc == (keys[0] < M1), lambda: f"chain {b}: monotonicity vs M1 criterion")
        for key in keys:
            for k in (1, 2):
                if k > depth:
                    continue
                if inc:
                    rec.check(key < v.imag(k, v.m_k(b, k)), lambda: f"{v.w(key)} not below m_{k}")
                else:
                    rec.check(key > v.imag(k, v.M_k(b, k)), lambda: f"{v.w(key)} not above M_{k}")
        rec.check(inc != v.inc(_neg(b)), lambda: f"mirror rule fails for {b}")
        coeffs = prof.beta_coeffs
        rec.check(inc == all(c >= 0 for c in coeffs), lambda: f"{b}: sign pattern {coeffs} vs monotonicity")
        top = max(j for j, c in enumerate(coeffs, start=1) if c)
        rec.check(prof.m1 == top, lambda: f"{b}: m1={prof.m1} but top coefficient at {top}")
        if inc:
            rec.check(prof.periodicity <= vb, lambda: f"{b}: c={prof.periodicity} exceeds v={vb}")
            i = prof.m1
            j = v.M_k(irr[i - 1])
            y = ch.y_key(v.t, i)
            for key in keys:
                t = len(key) // v.h + 2
                rec.check(key < y + v.imag(1, j) * t, lambda: f"{v.w(key)} not below y_{i} SL_{j}^{t}")
        else:
            rec.check(prof.s <= prof.f_value, lambda: f"{b}: s={prof.s} > f={prof.f_value}")
            rec.check(prof.f_value <= f_theta, lambda: f"{b}: f={prof.f_value} > f_theta'={f_theta}")
            low = v.imag(1, prof.Mprime1)
            rec.check(all(low < k for k in keys), lambda: f"{b}: SL(M'1) not below the chain")
    # sums of chains
    for b1 in v.roots:
        for b2 in v.roots:
            t = _add(b1, b2)
            if t not in S.all_roots or b1 > b2:
                continue
            p1, p2, pt = v.profile(b1), v.profile(b2), v.profile(t)
            if p1.increasing == p2.increasing:
                rec.check(pt.increasing == p1.increasing, lambda: f"{b1}+{b2}: monotonicity not inherited")
                rec.check(pt.m1 == max(p1.m1, p2.m1), lambda: f"{b1}+{b2}: m1 not additive")
                if not p1.increasing:
                    rec.check(pt.Mprime1 == min(p1.Mprime1, p2.Mprime1), lambda: f"{b1}+{b2}: M' not additive")
            ms = [p1.m1, p2.m1, pt.m1]
            Ms = [p1.Mprime1, p2.Mprime1, pt.Mprime1]
            rec.check(min(ms) >= max(Ms), lambda: f"{b1}+{b2}: interlock m={ms} M'={Ms}")
            for k in (1, 2):
                if k > depth:
                    continue
                Ma, Mb, Mt = v.M_k(b1, k), v.M_k(b2, k), v.M_k(t, k)
                for x, y in ((Ma, Mb), (Mb, Ma)):
                    if x < y:
                        rec.check(Mt == x, lambda: f"{b1}+{b2}: max rule M_{k}")
                if Ma == Mb:
                    rec.check(Mt >= Ma, lambda: f"{b1}+{b2}: max rule equality case M_{k}")
                ma, mb, mt = v.m_k(b1, k), v.m_k(b2, k), v.m_k(t, k)
                for x, y in ((ma, mb), (mb, ma)):
                    if x > y:
                        rec.check(mt == x, lambda: f"{b1}+{b2}: min rule m_{k}")
                if ma == mb:
                    rec.check(mt <= ma, lambda: f"{b1}+{b2}: min rule equality case m_{k}")
    # splitting existence for periodicity > 1, a bounded search on small ranks
    if S.rank <= 4:
        for b in v.roots:
            prof = v.profile(b)
            if prof.periodicity <= 1:
                continue
            found = False
            for b1 in v.roots:
                b2 = tuple(x - y for x, y in zip(b, b1))
                if b2 not in S.all_roots or v.inc(b1) != prof.increasing or v.inc(b2) != prof.increasing:
                    continue
                q1, q2 = v.profile(b1), v.profile(b2)
                if prof.increasing:
                    found = q1.m1 == q2.m1 == prof.m1
                else:
                    found = q1.Mprime1 == q2.Mprime1 == prof.Mprime1
                if found:
                    break
            rec.check(found, lambda: f"{b}: periodicity {prof.periodicity} but no splitting with equal index")
    # Lyndon prefixes / suffixes
    for (m, b), key in v.t.real.items():
        if not v.avail(m, b):
            continue
        inc = v.inc(b)
        for cut in range(1, len(key)):
            part = key[:cut] if inc else key[cut:]
            if key_is_lyndon(part):
                info = v.real_info(part)
                rec.check(info is not None and v.inc(info[1]) == inc,
                          lambda: f"{'prefix' if inc else 'suffix'} {v.w(part)} of {v.w(key)} in wrong chain class")
    for k in range(1, depth + 1):
        for r in range(1, S.rank + 1):
            key = v.imag(k, r)
            for cut in range(1, len(key)):
                for part, want in ((key[:cut], True), (key[cut:], False)):
                    if key_is_lyndon(part):
                        info = v.real_info(part)
                        rec.check(info is not None and v.inc(info[1]) == want,
                                  lambda: f"Lyndon piece {v.w(part)} of SL_{r}({k}d) in wrong chain class")
    return rec


# -- flags --------------------------------------------------------------------------


@_timed
def check_flags(table: SLTable, depth: int) -> CheckRecord:
    v = _View(table, depth)
    rec = v.record("flags")
    n = v.S.rank
    for k in range(1, depth + 1):
        d1, dk = v.dirs(1), v.dirs(k)
        for i in range(1, n + 1):
            a, b = RationalBasis(n), RationalBasis(n)
            for x in d1[:i]:
                a.add(x)
            for x in dk[:i]:
                b.add(x)
            same = a.rank == b.rank and all(a.contains(x) for x in dk[:i])
            rec.check(same, lambda: f"flag step {i} differs between levels 1 and {k}")
        keys = [v.imag(k, r) for r in range(1, n + 1)]
        rec.check(all(keys[r] > keys[r + 1] for r in range(n - 1)), lambda: f"level {k} words not decreasing")
        for r in range(1, n + 1):
            ls, _ = key_standard(keys[r - 1])
            if r < n:
                rec.check(keys[r] < ls, lambda: f"SL_{r + 1}({k}d) not below SL^ls_{r}({k}d)")
            rec.check(len(ls) > (k - 1) * v.h, lambda: f"|SL^ls_{r}({k}d)| too short")
            if k < depth:
                rec.check(keys[r - 1] > v.imag(k + 1, r), lambda: f"SL_{r}({k}d) <= SL_{r}({k + 1}d)")
    # bracket invariance on every split into two SL words
    all_keys = [(key, ("real",) + tag) for tag, key in v.t.real.items() if v.avail(*tag)]
    all_keys += [(v.imag(k, r), ("imag", k, r)) for k in range(1, depth + 1) for r in range(1, n + 1)]
    for key, tag in all_keys:
        for cut in range(1, len(key)):
            u1, u2 = key[:cut], key[cut:]
            e1, e2 = v.t.lookup_key(u1), v.t.lookup_key(u2)
            if e1 is None or e2 is None:
                continue
            if tag[0] == "real":
                ok = _bracket(v, u1, e1, u2, e2)
                rec.check(ok, lambda: f"split {v.w(u1)}|{v.w(u2)} brackets to zero")
            else:
                _, k, r = tag
                ok = e1[0] == e2[0] == "real"
                if ok:
                    d = finite_part(v.S, v.deg(u1))
                    ok = v.m_k(d, k) == r
                    ok = ok and v.m_k(finite_part(v.S, v.deg(u2)), k) == r
                rec.check(ok, lambda: f"split {v.w(u1)}|{v.w(u2)} of SL_{r}({k}d) leaves S_{r} minus S_{r - 1}")
    return rec


def _bracket(v: _View, u1: str, e1, u2: str, e2) -> bool:
    if e1[0] == "imag" and e2[0] == "imag":
        return False
    if e1[0] == "imag" or e2[0] == "imag":
        im, re = (e1, u2) if e1[0] == "imag" else (e2, u1)
        d = v.t.imag[im[1]][im[2] - 1][1]
        return pairing(v.S, d, finite_part(v.S, v.deg(re))) != 0
    s = _add(finite_part(v.S, v.deg(u1)), finite_part(v.S, v.deg(u2)))
    return not any(s) or s in v.S.all_roots


# -- factorizations -----------------------------------------------------------------


def leclerc14_shape(key: str) -> bool:
    ls, _ = key_standard(key)
    body = key[:-1]
    reps = 0
    while body.startswith(ls, reps * len(ls)):
        reps += 1
    if reps == 0:
        return False
    rest = body[reps * len(ls):]
    return len(rest) < len(ls) and ls.startswith(rest)


@_timed
def check_factorization(table: SLTable, depth: int) -> CheckRecord:
    v = _View(table, depth)
    rec = v.record("factorization")
    n = v.S.rank
    words = [(key, tag) for tag, key in v.t.real.items() if v.avail(*tag)]
    words += [(v.imag(k, r), None) for k in range(1, depth + 1) for r in range(1, n + 1)]
    for key, tag in words:
        rec.check(key_is_lyndon(key), lambda: f"{v.w(key)} is not Lyndon")
        if len(key) < 2:
            continue
        rec.check(leclerc14_shape(key), lambda: f"{v.w(key)} lacks the (ls)^(k+1) f x shape")
        for name, (a, b) in (("costandard", key_costandard(key)), ("standard", key_standard(key))):
            ea, eb = v.t.lookup_key(a), v.t.lookup_key(b)
            rec.check(ea is not None and eb is not None,
                      lambda: f"{name} factors of {v.w(key)} are not both standard")
            if tag is not None and ea is not None and eb is not None:
                M1 = v.imag(1, v.M_k(tag[1]))
                for part, e in ((a, ea), (b, eb)):
                    if e[0] == "imag":
                        rec.check(part == M1, lambda: f"imaginary factor {v.w(part)} of {v.w(key)} is not SL(M1)")
    return rec


# -- decreasing periodicity ---------------------------------------------------------


def _dec_parse(key: str, block: str):
    """Split into runs of ``block`` and connectors: returns (ps, ws)."""
    ps, ws = [], []
    pos = 0
    lit = ""
    while pos < len(key):
        t = ch._count_runs(key, pos, block)
        if t:
            if ps or lit:
                ws.append(lit)
            elif not ps:
                pass
            if not ps and lit:
                ps.append(0)
            ps.append(t)
            lit = ""
            pos += t * len(block)
        else:
            lit += key[pos]
            pos += 1
    if not ps:
        return [0], [lit]
    ws.append(lit)
    return ps, ws


def _render(ps, ws, block: str) -> str:
    return "".join(block * p + w for p, w in zip(ps, ws))


def _split_pieces(key: str, done: Callable[[str], bool], limit: int = 256) -> list[str]:
    out, stack = [], [key]
    while stack:
        p = stack.pop()
        if done(p) or len(p) < 2 or len(out) + len(stack) > limit:
            out.append(p)
        else:
            a, b = key_costandard(p)
            stack.append(b)
            stack.append(a)
    return out


def u_oracle(table: SLTable, i: int) -> dict:
    """``u_i`` on every chain in ``C_i`` via the recursive formula over chain sums."""
    S = table.system
    members = [b for b in sorted(S.all_roots, key=lambda b: sum(abs(c) for c in ch.beta_coefficients(table, b)))
               if ch.in_C(table, b, i)]
    mset = set(members)
    out: dict = {}
    for b in members:
        best = ch.element(table, b, 0)
        for b1 in members:
            b2 = tuple(x - y for x, y in zip(b, b1))
            if b2 not in mset or b1 not in out or b2 not in out:
                continue
            cand = _add(out[b1], out[b2])
            if classify(S, cand) == REAL and finite_part(S, cand) == b and sum(cand) > sum(best):
                best = cand
        out[b] = best
    return out


@_timed
def check_dec_periodicity(table: SLTable, depth: int) -> CheckRecord:
    v = _View(table, depth)
    rec = v.record("dec_periodicity")
    S = v.S
    irr = ch.irr_projections(v.t)
    max_s = 0
    max_u = 0.0
    oracles = {}
    for b in v.roots:
        if v.inc(b):
            continue
        prof = v.profile(b)
        s, i = prof.s, prof.Mprime1
        max_s = max(max_s, s)
        block = v.imag(1, i)
        L = v.chain_len(b)
        keys = [v.key(b, p) for p in range(L)]
        up = ch._u_scan(v.t, b, i)
        max_u = max(max_u, sum(prof.u) / v.h)
        # u via the recursion over chain sums
        if i not in oracles:
            oracles[i] = u_oracle(v.t, i)
        rec.check(oracles[i].get(b) == prof.u, lambda: f"{b}: u scan {prof.u} vs recursion {oracles[i].get(b)}")
        # imaginary subwords of decreasing words
        for key in keys:
            for r in range(1, S.rank + 1):
                im = v.imag(1, r)
                if im in key:
                    rec.check(r == i and key.startswith(im), lambda: f"{v.w(key)} holds SL_{r}(d) out of place")
        # irreducible decreasing chains
        if _neg(b) in irr:
            M = v.imag(1, v.M_k(b))
            for p in range(1, L):
                rec.check(keys[p] == M * p + keys[0], lambda: f"irreducible {b}: word {p} not SL(M1)^k SL(b)")
                rec.check(key_standard(keys[p])[0] == M, lambda: f"irreducible {b}: left factor at {p}")
        parsed = {}
        for k in range(1, L - up):
            key = keys[up + k]
            ps, ws = _dec_parse(key, block)
            parsed[k] = (ps, ws)
            ctx = lambda: f"{b} u+{k}d: {v.w(key)}"
            rec.check(ps[0] > 0 and all(p > 0 for p in ps), lambda: ctx() + " has an empty run")
            rec.check(len(ps) <= s, lambda: ctx() + f" has {len(ps)} chunks > s={s}")
            rec.check(all(block not in w for w in ws), lambda: ctx() + " connector holds SL_i(d)")
            rec.check(all(w[c:] > block for w in ws for c in range(len(w))),
                      lambda: ctx() + " connector suffix below SL_i(d)")
            rec.check(sum(ps) >= k, lambda: ctx() + f" has {sum(ps)} runs < k")
            rec.check(ps[0] >= math.ceil(k / s), lambda: ctx() + f" p1={ps[0]} < ceil(k/s)")
            if k >= s:
                rec.check(len(ps) == s, lambda: ctx() + f" has {len(ps)} chunks, expected s={s}")
                for w in ws:
                    info = v.real_info(w)
                    ok = info is not None and not v.inc(info[1])
                    if ok:
                        pw = v.profile(info[1])
                        ok = pw.Mprime1 == i and pw.s == 1 and pw.u == v.deg(w)
                    rec.check(ok, lambda: ctx() + f" connector {v.w(w)} breaks the connector rules")
                    if not w:
                        continue
                    facs = key_canonical_factorization(w)
                    for jdx, f in enumerate(facs):
                        fi = v.real_info(f)
                        ok = fi is not None and not v.inc(fi[1]) and ch.in_C(v.t, fi[1], i)
                        if ok:
                            ok = ch.element(v.t, fi[1], ch._u_scan(v.t, fi[1], i)) == v.deg(f)
                            ok = ok and ((v.profile(fi[1]).Mprime1 == i) == (jdx == 0))
                        rec.check(ok, lambda: ctx() + f" canonical factor {v.w(f)} of {v.w(w)} misbehaves")
                # repeated costandard splitting
                def done(p):
                    info = v.real_info(p)
                    return info is None or v.inc(info[1]) or v.profile(info[1]).s == 1
                pieces = _split_pieces(key, done)
                lo, hi = k // s, -(-k // s)
                ok = len(pieces) == s
                for pc in pieces:
                    info = v.real_info(pc)
                    if info is None or v.inc(info[1]):
                        ok = False
                        break
                    pp = v.profile(info[1])
                    q = ch._count_runs(pc, 0, block)
                    ok = ok and pp.s == 1 and pp.Mprime1 == i and lo <= q <= hi and block not in pc[q * len(block):]
                rec.check(ok, lambda: ctx() + f" costandard splitting gives {[v.w(p) for p in pieces]}")
        # the periodicity theorem proper
        for k in range(s, 2 * s):
            if k not in parsed:
                continue
            ps, ws = parsed[k]
            rec.check(all(p in (1, 2) for p in ps[1:]), lambda: f"{b} u+{k}d: runs {ps} outside 1..2")
            rec.check(ps[0] == (1 if k == s else 2), lambda: f"{b} u+{k}d: p1={ps[0]}")
            ls_k = key_standard(keys[up + k])[0]
            beta = v.deg(ls_k)
            q = 1
            while k + q * s in parsed:
                kq = k + q * s
                want = _render([p + q for p in ps], ws, block)
                rec.check(keys[up + kq] == want,
                          lambda: f"{b} u+{kq}d: {v.w(keys[up + kq])} != shifted pattern {v.w(want)}")
                got = v.deg(key_standard(keys[up + kq])[0])
                if classify(S, beta) == REAL:
                    sb = v.profile(finite_part(S, beta))
                    shift = sb.s if sb.s else 0
                    exp = _add(beta, tuple(q * shift * x for x in S.marks))
                else:
                    exp = beta
                rec.check(got == exp, lambda: f"{b} u+{kq}d: left standard degree {got}, expected {exp}")
                q += 1
    rec.stats["max_s"] = max_s
    rec.stats["max_u_ratio"] = round(max_u, 4)
    return rec


# -- increasing periodicity ---------------------------------------------------------


def _inc_parse(key: str, y: str, block: str):
    """Split ``y SL_j^p w y SL_j^p w ...``; returns (ps, ws) or None."""
    if not key.startswith(y):
        return None
    ps, ws = [], []
    pos = 0
    while pos < len(key):
        if not key.startswith(y, pos):
            return None
        pos += len(y)
        t = ch._count_runs(key, pos, block)
        pos += t * len(block)
        nxt = key.find(y, pos)
        end = len(key) if nxt < 0 else nxt
        ps.append(t)
        ws.append(key[pos:end])
        pos = end
    return ps, ws


def _render_inc(ps, ws, y: str, block: str) -> str:
    return "".join(y + block * p + w for p, w in zip(ps, ws))


def _l_bounded(table: SLTable, b, y: str, depth: int):
    """Shortest element of chain(b) whose word is at least ``y``, within ``depth``."""
    base = ch.base_level(b)
    k = 0
    while table.level_needed(base + k, b) <= depth:
        if ch.element_key(table, b, k) >= y:
            return ch.element(table, b, k)
        k += 1
    return None


def l_oracle(table: SLTable, b, depth: int) -> Optional[tuple]:
    """``l`` of a non-irreducible increasing chain as a minimum over chain sums.

    Summands use the non-strict comparison with ``y_i`` so that ``l_i`` agrees
    with ``l`` on chains whose own index is ``i``.
    """
    S = table.system
    i = ch.m_index(table, b)
    y = ch.y_key(table, i)
    best = None
    for b1 in sorted(S.all_roots):
        b2 = tuple(x - y_ for x, y_ in zip(b, b1))
        if b2 not in S.all_roots or not ch.is_increasing(table, b1) or not ch.is_increasing(table, b2):
            continue
        l1, l2 = _l_bounded(table, b1, y, depth), _l_bounded(table, b2, y, depth)
        if l1 is None or l2 is None:
            continue
        cand = _add(l1, l2)
        if best is None or sum(cand) < sum(best):
            best = cand
    return best


@_timed
def check_inc_periodicity(table: SLTable, depth: int) -> CheckRecord:
    v = _View(table, depth)
    rec = v.record("inc_periodicity")
    S = v.S
    n = S.rank
    irr = ch.irr_projections(v.t)
    max_c = 0
    empty_tail = 0
    for i in range(1, n + 1):
        y = ch.y_key(v.t, i)
        ydeg = v.deg(y)
        j = v.M_k(finite_part(S, ydeg))
        block = v.imag(1, j)
        rec.check(finite_part(S, ydeg) == irr[i - 1], lambda: f"deg(y_{i}) = {ydeg} is not in chain(beta_{i})")
        k0 = len(y) // v.h + 1
        w0 = None
        for kk in range(1, depth + 1):
            ls = key_standard(v.imag(kk, i))[0]
            info = v.real_info(ls)
            ok = info is not None and v.inc(info[1]) and v.profile(info[1]).c == 1
            rec.check(ok, lambda: f"left factor of SL_{i}({kk}d) does not have c = 1")
            if kk >= k0:
                head = y + block * (kk - k0)
                ok = ls.startswith(head)
                w = ls[len(head):]
                if w0 is None:
                    w0 = w
                # w may be empty: when SL^ls_i(delta) = y_i already, nothing follows y_i
                ok = ok and w == w0 and block.startswith(w)
                rec.check(ok, lambda: f"SL^ls_{i}({kk}d) = {v.w(ls)} does not stabilise after y_{i}")
                if kk == k0 and not w:
                    empty_tail += 1
    for b in v.roots:
        if not v.inc(b):
            continue
        prof = v.profile(b)
        c, i = prof.c, prof.m1
        max_c = max(max_c, c)
        y = ch.y_key(v.t, i)
        j = v.M_k(finite_part(S, v.deg(y)))
        block = v.imag(1, j)
        L = v.chain_len(b)
        keys = [v.key(b, p) for p in range(L)]
        lp = ch._l_scan(v.t, b, y)
        irreducible = b in irr
        if irreducible:
            rec.check(prof.l == v.deg(y), lambda: f"{b}: l={prof.l} differs from deg(y_{i})")
        else:
            rec.check(sum(prof.l) > v.h, lambda: f"{b}: |l| = {sum(prof.l)} not above |delta|")
            ol = l_oracle(v.t, b, depth)
            rec.check(ol == prof.l, lambda: f"{b}: l scan {prof.l} vs recursion {ol}")
        parsed = {}
        for k in range(0, L - lp):
            key = keys[lp + k]
            res = _inc_parse(key, y, block)
            ctx = lambda: f"{b} l+{k}d: {v.w(key)}"
            if not rec.check(res is not None, lambda: ctx() + " is not y-headed"):
                continue
            ps, ws = res
            parsed[k] = res
            rec.check(len(ps) == c, lambda: ctx() + f" has {len(ps)} chunks, expected c={c}")
            rec.check(all(y not in w and not w.startswith(block) and w < block for w in ws),
                      lambda: ctx() + " connector violates the chunk rules")
            rec.check(sum(ps) <= k, lambda: ctx() + f" runs {ps} exceed k")
            if irreducible:
                rec.check(key == y + block * k, lambda: ctx() + " is not y SL_j^k")
                if k >= 1:
                    rec.check(key_costandard(key) == (keys[lp + k - 1], block),
                              lambda: ctx() + " costandard split is not previous word | SL_j")
            # costandard factor structure
            if k > 0 or not irreducible:
                left, right = key_costandard(key)
                li, ri = v.real_info(left), v.real_info(right)
                ok = li is not None and v.inc(li[1]) and v.m_k(li[1]) == i
                if irreducible:
                    ok = ok and right == block
                else:
                    ok = ok and ri is not None and v.inc(ri[1])
                vfac = key_canonical_factorization(key[len(y):]) if len(key) > len(y) else []
                ok = ok and bool(vfac) and vfac[-1] == right
                seen_real = False
                for f in vfac:
                    if v.t.lookup_key(f) is not None and v.t.lookup_key(f)[0] == "imag":
                        ok = ok and not seen_real and f == block
                    else:
                        seen_real = True
                if c > 1 and ri is not None:
                    ok = ok and right.startswith(y) and v.m_k(ri[1]) == i
                    ok = ok and len(right) >= sum(v.profile(ri[1]).l)
                rec.check(ok, lambda: ctx() + " costandard factorization breaks the structure rules")
            # repeated costandard splitting into c pieces
            def done(p):
                info = v.real_info(p)
                return info is None or not v.inc(info[1]) or v.profile(info[1]).c == 1
            pieces = _split_pieces(key, done)
            lo, hi = k // c, -(-k // c)
            ok = len(pieces) == c
            for pc in pieces:
                info = v.real_info(pc)
                if info is None or not v.inc(info[1]) or not pc.startswith(y):
                    ok = False
                    break
                q = ch._count_runs(pc, len(y), block)
                ok = ok and v.profile(info[1]).c == 1 and v.m_k(info[1]) == i and lo <= q <= hi
            rec.check(ok, lambda: ctx() + f" costandard splitting gives {[v.w(p) for p in pieces]}")
        for k in range(0, c):
            if k not in parsed:
                continue
            ps, ws = parsed[k]
            rec.check(ps[0] == 0, lambda: f"{b} l+{k}d: first run {ps[0]} should be 0")
            rec.check(all(p in (0, 1) for p in ps[1:]), lambda: f"{b} l+{k}d: runs {ps} outside 0..1")
            beta = v.deg(key_costandard(keys[lp + k])[0]) if len(keys[lp + k]) > 1 else None
            q = 1
            while k + q * c in parsed:
                kq = k + q * c
                want = _render_inc([p + q for p in ps], ws, y, block)
                rec.check(keys[lp + kq] == want,
                          lambda: f"{b} l+{kq}d: {v.w(keys[lp + kq])} != shifted pattern {v.w(want)}")
                if not irreducible and beta is not None and classify(S, beta) == REAL:
                    cb = v.profile(finite_part(S, beta)).c or 0
                    exp = _add(beta, tuple(q * cb * x for x in S.marks))
                    got = v.deg(key_costandard(keys[lp + kq])[0])
                    rec.check(got == exp, lambda: f"{b} l+{kq}d: costandard left degree {got}, expected {exp}")
                q += 1
    rec.stats["max_c"] = max_c
    rec.stats["empty_ls_tail"] = empty_tail
    return rec


# -- connectivity -------------------------------------------------------------------


def check_connectivity(table: SLTable) -> tuple[CheckRecord, CheckRecord]:
    """Direct formulation and the sufficient word criterion, as two records."""
    t0 = time.perf_counter()
    v = _View(table, max(1, min(2, table.generated_depth or 2)))
    direct = v.record("connectivity_direct")
    crit = v.record("connectivity_criterion")
    irr = ch.irr_projections(v.t)
    for i in range(2, v.S.rank + 1):
        direct.check(any(pairing(v.S, irr[i - 1], irr[j]) for j in range(i - 1)),
                     lambda: f"beta_{i} is orthogonal to beta_1..beta_{i - 1}")
        key = v.imag(1, i)
        crit.check(key_costandard(key)[0] != key_standard(key)[0],
                   lambda: f"SL_{i}(d) = {v.w(key)} has equal standard and costandard left factors")
    direct.elapsed = crit.elapsed = time.perf_counter() - t0
    return direct, crit


# -- special orders -----------------------------------------------------------------


@_timed
def check_special_orders(table: SLTable, depth: int) -> CheckRecord:
    v = _View(table, depth)
    rec = v.record("special_orders")
    S = v.S
    eps = v.t.order.letters[0]
    if S.marks[eps] != 1:
        rec.stats["applicable"] = False
        return rec
    rec.stats["applicable"] = True
    n = S.rank
    for b in v.roots:
        vec = affine_vector(S, b, ch.base_level(b))
        rec.check(v.inc(b) == (vec[eps] > 0), lambda: f"{vec}: monotonicity vs containing alpha_{eps}")
    lasts = []
    for i in range(1, n + 1):
        key = v.imag(1, i)
        ls, rs = key_standard(key)
        rec.check(len(rs) == 1, lambda: f"SL^rs_{i}(d) has length {len(rs)}")
        lasts.append(key[-1])
        rec.check(ch.y_key(v.t, i) == ls, lambda: f"y_{i} differs from SL^ls_{i}(d)")
    rec.check(len(set(lasts)) == n, "imaginary level-1 words share a last letter")
    irr = ch.irr_projections(v.t)
    if eps == 0:
        k = v.t.order.letters[1]
        right = key_costandard(v.imag(1, 1))[1]
        rec.check(v.t.order.decode(right) == (k,), lambda: f"SL^r_1(d) = {v.w(right)} is not the letter {k}")
        rec.check(irr[0] == _neg(S.simple_root(k)), "chain(alpha_k) is not chain(delta - beta_1)")
        simples = {_neg(S.simple_root(a)) for a in range(1, n + 1)}
        rec.check(set(irr) == simples, "delta - beta_i are not the simple roots")
    for r in check_connectivity(v.t):
        rec.check(r.passed, lambda: f"{r.name} fails under a special order")
    return rec


# -- tightness tables ----------------------------------------------------------------


def s_bound_order(system: FiniteRootSystem) -> LetterOrder:
    """``0 < k < rest`` with ``k`` maximising theta_k plus the theta of its neighbours."""
    n = system.rank
    g = _gram(system.type)
    th = system.theta

    def score(k: int) -> int:
        return th[k] + sum(th[j] for j in range(n) if j != k and g[k][j])
    k = max(range(n), key=lambda k: (score(k), -k)) + 1
    return LetterOrder((0, k) + tuple(a for a in range(1, n + 1) if a != k))


def c_bound_order(system: FiniteRootSystem) -> LetterOrder:
    key = str(system.type)
    n = system.rank
    if key in C_BOUND_ORDERS:
        return LetterOrder(C_BOUND_ORDERS[key])
    if system.type.family == "C":
        return LetterOrder((0, n) + tuple(range(1, n)))
    return LetterOrder.standard(n + 1)


@_timed
def check_tables(systems: Iterable[FiniteType | str]) -> CheckRecord:
    systems = list(systems)
    rec = CheckRecord("tables", ",".join(str(s) for s in systems), "table orders")
    for ft in systems:
        S = build_system(ft)
        bound = s_bound(S.type)
        T = generate_up_to_delta(S, s_bound_order(S), 2)
        profs = [ch.chain_profile(T, affine_vector(S, b, ch.base_level(b))) for b in sorted(S.all_roots)]
        svals = {p.s for p in profs if not p.increasing}
        st = ch.chain_profile(T, (0,) + S.theta).s
        rec.check(st == bound, lambda: f"{S.type}: s(chain(theta)) = {st}, table gives {bound}")
        rec.check(max(svals) <= bound, lambda: f"{S.type}: some s exceeds {bound}")
        rec.check(svals == set(range(1, bound + 1)), lambda: f"{S.type}: s values {sorted(svals)}")
        cb = c_bound(S.type)
        T2 = generate_up_to_delta(S, c_bound_order(S), 2)
        c0 = ch.chain_profile(T2, (1,) + (0,) * S.rank).c
        vb = ch.v_bound(S)
        cvals = {ch.chain_profile(T2, affine_vector(S, b, ch.base_level(b))).c
                 for b in sorted(S.all_roots) if ch.is_increasing(T2, b)}
        rec.check(c0 == cb, lambda: f"{S.type}: c(chain(alpha_0)) = {c0}, table gives {cb}")
        rec.check(vb == cb, lambda: f"{S.type}: v bound {vb} differs from the table value {cb}")
        rec.check(max(cvals) <= vb, lambda: f"{S.type}: some c exceeds v = {vb}")
        rec.check(cvals == set(range(1, cb + 1)), lambda: f"{S.type}: c values {sorted(cvals)}")
    return rec


# -- word lemmas on random data ----------------------------------------------------------


def _rand_word(rng: random.Random, alpha: int, lo: int, hi: int) -> str:
    return "".join(chr(48 + rng.randrange(alpha)) for _ in range(rng.randint(lo, hi)))


def _rand_lyndon(rng: random.Random, alpha: int, lo: int = 1, hi: int = 6) -> str:
    while True:
        facs = key_canonical_factorization(_rand_word(rng, alpha, lo, hi))
        cands = [f for f in facs if lo <= len(f) <= hi]
        if cands:
            return rng.choice(cands)


def melancon_holds(w: str, w2: str) -> bool:
    f1, f2 = key_canonical_factorization(w), key_canonical_factorization(w2)
    rhs = False
    for a in range(min(len(f1), len(f2))):
        if f1[a] != f2[a]:
            rhs = f1[a] < f2[a]
            break
    return (w < w2) == rhs


def lyndon_subwords_inside(w: str) -> bool:
    facs = key_canonical_factorization(w)
    bounds = set()
    pos = 0
    for f in facs[:-1]:
        pos += len(f)
        bounds.add(pos)
    for a in range(len(w)):
        for b in range(a + 1, len(w) + 1):
            if any(a < x < b for x in bounds) and key_is_lyndon(w[a:b]):
                return False
    return True


def _dec_connector(rng, alpha, ell) -> Optional[str]:
    for _ in range(50):
        w = _rand_word(rng, alpha, 1, 4)
        if ell not in w and all(w[c:] > ell for c in range(len(w))):
            return w
    return None


def _inc_connector(rng, alpha, ell, y) -> Optional[str]:
    for _ in range(50):
        w = _rand_word(rng, alpha, 0, 4)
        if y not in w and not w.startswith(ell) and ell > w and all(w[c:] > y for c in range(len(w))):
            return w
    return None


def lifting_dec_case(rng: random.Random, alpha: int = 3):
    """A random quadruple meeting the four hypotheses, or None."""
    ell = _rand_lyndon(rng, alpha, 1, 3)

    def side():
        t = rng.randint(1, 3)
        ws = [_dec_connector(rng, alpha, ell) for _ in range(t)]
        if any(w is None for w in ws):
            return None
        ps = [rng.randint(0, 3)] + [rng.randint(1, 3) for _ in range(t - 1)]
        return ps, ws
    a, b = side(), side()
    if a is None or b is None:
        return None
    return ell, a, b


def lifting_inc_case(rng: random.Random, alpha: int = 3):
    ell = _rand_lyndon(rng, alpha, 1, 3)
    y = _rand_word(rng, alpha, 1, 3)
    if not ell > y:
        return None

    def side():
        t = rng.randint(1, 3)
        ws = [_inc_connector(rng, alpha, ell, y) for _ in range(t)]
        if any(w is None for w in ws):
            return None
        return [rng.randint(0, 3) for _ in range(t)], ws
    a, b = side(), side()
    if a is None or b is None:
        return None
    return ell, y, a, b


def sl_word_pool(min_size: int) -> list[tuple[SLTable, str]]:
    """Standard Lyndon words from several small tables, at least ``min_size`` of them."""
    pool: list = []
    plan = [("F4", 3), ("A3", 6), ("B3", 4), ("C3", 4), ("G2", 10), ("C2", 10), ("A2", 12)]
    for name, depth in plan:
        S = build_system(name)
        for perm in permutations(range(S.rank + 1)):
            T = generate_up_to_delta(S, perm, depth)
            pool.extend((T, k) for k in T.real.values() if len(k) > 1)
            pool.extend((T, k) for lvl in T.imag.values() for k, _ in lvl)
            if len(pool) >= min_size:
                return pool
    return pool


@_timed
def check_word_lemmas(cases: int = 10_000, seed: int = 0) -> CheckRecord:
    rng = random.Random(seed)
    rec = CheckRecord("word_lemmas", "-", "random")
    counts = {"melancon": 0, "concat": 0, "leclerc14": 0, "subword": 0, "lifting_dec": 0, "lifting_inc": 0}
    while counts["melancon"] < cases:
        a = rng.randint(2, 4)
        w, w2 = _rand_word(rng, a, 1, 10), _rand_word(rng, a, 1, 10)
        if w2.startswith(w):
            continue
        counts["melancon"] += 1
        rec.check(melancon_holds(w, w2), lambda: f"Melancon rule fails for {w!r}, {w2!r}")
    while counts["concat"] < cases:
        a = rng.randint(2, 4)
        l1, l2 = _rand_lyndon(rng, a), _rand_lyndon(rng, a)
        if l1 == l2:
            continue
        l1, l2 = min(l1, l2), max(l1, l2)
        counts["concat"] += 1
        rec.check(key_is_lyndon(l1 + l2) and l1 + l2 < l2 + l1, lambda: f"concatenation {l1!r}{l2!r}")
    for T, k in sl_word_pool(cases)[:cases]:
        counts["leclerc14"] += 1
        rec.check(leclerc14_shape(k), lambda: f"{T.word(k)} under {T.order} lacks the Leclerc shape")
    while counts["subword"] < cases:
        w = _rand_word(rng, rng.randint(2, 4), 1, 12)
        counts["subword"] += 1
        rec.check(lyndon_subwords_inside(w), lambda: f"Lyndon subword straddles factors in {w!r}")
    while counts["lifting_dec"] < cases:
        case = lifting_dec_case(rng)
        if case is None:
            continue
        ell, (p, w), (q, u) = case
        lhs = _render(p, w, ell) > _render(q, u, ell)
        rhs = _render([x + 1 for x in p], w, ell) > _render([x + 1 for x in q], u, ell)
        counts["lifting_dec"] += 1
        rec.check(lhs == rhs, lambda: f"decreasing lifting fails: ell={ell!r} {p}{w} vs {q}{u}")
    while counts["lifting_inc"] < cases:
        case = lifting_inc_case(rng)
        if case is None:
            continue
        ell, y, (p, w), (q, u) = case
        lhs = _render_inc(p, w, y, ell) > _render_inc(q, u, y, ell)
        rhs = _render_inc([x + 1 for x in p], w, y, ell) > _render_inc([x + 1 for x in q], u, y, ell)
        counts["lifting_inc"] += 1
        rec.check(lhs == rhs, lambda: f"increasing lifting fails: ell={ell!r} y={y!r} {p}{w} vs {q}{u}")
    rec.stats.update(counts)
    return rec


# -- driver -------------------------------------------------------------------------


def auto_depth(table: SLTable) -> int:
    """Twice the largest periodicity plus two."""
    table.ensure(2)
    per = max(ch.chain_profile(table, affine_vector(table.system, b, ch.base_level(b))).periodicity
              for b in table.system.all_roots)
    return 2 * per + 2


def run_cell(family: str, rank: int, order: Sequence[int], depth: Optional[int],
             suites: Sequence[str]) -> list[CheckRecord]:
    """All per-table suites for one (type, order) pair."""
    S = build_system(FiniteType(family, rank))
    label = (f"{family}{rank}", "<".join(map(str, order)))
    out = []
    try:
        T = generate_up_to_delta(S, order, 2)
        d = depth if depth is not None else auto_depth(T)
        T.ensure(d)
    except AffineLyndonError as exc:
        return [CheckRecord("generation", *label, error=f"{type(exc).__name__}: {exc}")]
    for name in suites:
        try:
            if name == "connectivity":
                out.extend(check_connectivity(T))
                continue
            fn = {
                "convexity": check_convexity,
                "monotonicity": check_monotonicity,
                "flags": check_flags,
                "factorization": check_factorization,
                "dec_periodicity": check_dec_periodicity,
                "inc_periodicity": check_inc_periodicity,
                "special_orders": check_special_orders,
            }[name]
            out.append(fn(T, d))
        except (AffineLyndonError, AssertionError) as exc:
            out.append(CheckRecord(name, *label, error=f"{type(exc).__name__}: {exc}"))
    for r in out:
        r.stats.setdefault("depth", d)
    return out


def expand_systems(config: SuiteConfig) -> list[tuple[str, int, tuple[int, ...]]]:
    cells = []
    rng = random.Random(config.seed)
    for ft, order in config.systems:
        ft = FiniteType.parse(ft) if isinstance(ft, str) else ft
        size = ft.rank + 1
        if order is None or order == "all":
            perms = list(permutations(range(size))) if size <= 6 else None
            if perms is None:
                if not config.sample:
                    raise UsageError(f"{ft} has {math.factorial(size)} orders; give a sample size")
                perms = set()
                while len(perms) < config.sample:
                    p = list(range(size))
                    rng.shuffle(p)
                    perms.add(tuple(p))
                perms = sorted(perms)
            cells.extend((ft.family, ft.rank, p) for p in perms)
        else:
            o = order if isinstance(order, LetterOrder) else LetterOrder(tuple(order))
            if o.size != size:
                raise UsageError(f"order {o} does not fit {ft}")
            cells.append((ft.family, ft.rank, o.letters))
    return cells


def run_suite(config: SuiteConfig) -> VerificationReport:
    report = VerificationReport()
    per_table = [s for s in config.suites if s in PER_TABLE_SUITES]
    cells = expand_systems(config) if per_table else []
    args = [(f, r, o, config.depth, per_table) for f, r, o in cells]
    if config.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for recs in pool.map(run_cell, *zip(*args)):
                report.records.extend(recs)
    else:
        for a in args:
            report.records.extend(run_cell(*a))
    if "tables" in config.suites:
        types = []
        for ft, _ in config.systems:
            ft = FiniteType.parse(ft) if isinstance(ft, str) else ft
            if ft not in types:
                types.append(ft)
        report.records.append(check_tables(types))
    if "word_lemmas" in config.suites:
        report.records.append(check_word_lemmas(config.word_cases, config.seed))
    u = report.summary()["max_u_ratio"]
    if u is not None and u >= U_RATIO_WARNING:
        report.warnings.append(f"max |u|/|delta| = {u} reaches {U_RATIO_WARNING}")
    return report


def report_json(report: VerificationReport) -> str:
    return json.dumps(report.to_json(), indent=2)
