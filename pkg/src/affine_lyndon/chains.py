"""Chains ``alpha', alpha'+delta, ...`` of real affine roots and their invariants.

A chain is determined by its finite part ``beta``; its shortest element sits
at level 0 when ``beta`` is positive and at level 1 otherwise.  All flag
indices are read off the level-1 imaginary directions: ``m1`` is the first
flag step containing ``beta`` and ``M1`` the first direction pairing nontrivially
with ``beta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Union

from .errors import DepthError, UsageError
from .leclerc import SLTable
from .root_core import (
    FiniteRootSystem,
    RationalBasis,
    Vector,
    _gram,
    affine_vector,
    build_system,
    classify,
    finite_part,
    pairing,
    solve_exact,
    span_index,
    REAL,
)
from .words import Word, key_standard

Degree = Sequence[int]


@dataclass(frozen=True)
class ChainId:
    """A chain, named by its shortest element."""

    base: Vector

    def __str__(self) -> str:
        return "chain(" + ",".join(map(str, self.base)) + ")"


@dataclass(frozen=True)
class Run:
    """``count`` consecutive copies of ``SL_index(delta)``."""

    index: int
    count: int


@dataclass(frozen=True)
class Literal:
    word: Word


@dataclass(frozen=True)
class ChunkFormat:
    segments: tuple
    mode: str  # "decreasing" or "increasing"
    y_prefix: Optional[Word] = None
    imaginary: dict = field(default_factory=dict, compare=False, repr=False)

    def expand(self) -> Word:
        """Concatenate the segments back into a word."""
        out: list[int] = []
        for seg in self.segments:
            if isinstance(seg, Literal):
                out.extend(seg.word.letters)
            else:
                if self.mode == "increasing":
                    out.extend(self.y_prefix.letters)
                out.extend(self.imaginary[seg.index].letters * seg.count)
        order = self.y_prefix.order if self.y_prefix is not None else next(iter(self.imaginary.values())).order
        return Word(tuple(out), order)

    def __str__(self) -> str:
        return str(self.listing())

    def listing(self) -> list:
        """Mixed list of ``[index, count]`` pairs and literal strings.

        In increasing mode the ``y`` prefix is folded into the neighbouring
        literal text and empty runs are dropped.
        """
        items: list = []
        pending = ""
        for seg in self.segments:
            if isinstance(seg, Literal):
                pending += str(seg.word)
                continue
            if self.mode == "increasing":
                pending += str(self.y_prefix)
            if seg.count == 0:
                continue
            if pending:
                items.append(pending)
                pending = ""
            items.append([seg.index, seg.count])
        if pending:
            items.append(pending)
        return items

    def runs(self) -> list[Run]:
        return [s for s in self.segments if isinstance(s, Run)]


@dataclass(frozen=True)
class ChainProfile:
    id: ChainId
    increasing: bool
    projection: Vector
    beta_coeffs: tuple[int, ...]
    m1: int
    M1: int
    Mprime1: int
    periodicity: int
    f_value: Optional[int]
    relative_height: int
    u: Optional[Vector] = None
    l: Optional[Vector] = None

    @property
    def s(self) -> Optional[int]:
        return None if self.increasing else self.periodicity

    @property
    def c(self) -> Optional[int]:
        return self.periodicity if self.increasing else None


# -- chain bookkeeping ---------------------------------------------------------------


def chain_coords(table: SLTable, degree: Degree) -> tuple[Vector, int]:
    """Return ``(beta, k)`` with ``degree`` the ``k``-th element of ``chain(beta)``."""
    vec = tuple(degree)
    if len(vec) != table.rank + 1:
        raise UsageError(f"degree must have {table.rank + 1} coordinates, got {len(vec)}")
    kind = classify(table.system, vec)
    if kind != REAL or any(x < 0 for x in vec):
        if kind == "imaginary":
            raise UsageError(f"{vec} is imaginary; chains are made of real roots")
        raise UsageError(f"{vec} is not a positive real root")
    beta = finite_part(table.system, vec)
    return beta, vec[0] - base_level(beta)


def base_level(beta: Vector) -> int:
    return 0 if all(x >= 0 for x in beta) else 1


def element(table: SLTable, beta: Vector, k: int) -> Vector:
    return affine_vector(table.system, beta, base_level(beta) + k)


def element_key(table: SLTable, beta: Vector, k: int) -> str:
    return table.real_key(base_level(beta) + k, beta)


def mod_delta(system: FiniteRootSystem, degree: Degree) -> tuple[Vector, int]:
    """Split a real degree as (shortest chain element, multiple of delta)."""
    vec = tuple(degree)
    if classify(system, vec) != REAL or any(x < 0 for x in vec):
        raise UsageError(f"{vec} is not a positive real root")
    beta = finite_part(system, vec)
    b0 = base_level(beta)
    return affine_vector(system, beta, b0), vec[0] - b0


def chain_words(table: SLTable, degree: Degree, depth: int) -> list[Word]:
    """The first ``depth`` words of the chain through ``degree``."""
    beta, _ = chain_coords(table, degree)
    if depth < 1:
        raise UsageError("depth must be positive")
    return [table.word(element_key(table, beta, k)) for k in range(depth)]


def is_increasing(table: SLTable, beta: Vector) -> bool:
    return element_key(table, beta, 0) < element_key(table, beta, 1)


# -- flag indices --------------------------------------------------------------------


def directions(table: SLTable) -> list[Vector]:
    table.ensure(1)
    return [d for _, d in table.imag[1]]


def m_index(table: SLTable, beta: Vector) -> int:
    idx = span_index(directions(table), beta)
    assert idx is not None and idx > 0, "flag does not reach a finite root"
    return idx


def M_index(table: SLTable, beta: Vector) -> int:
    for j, d in enumerate(directions(table), start=1):
        if pairing(table.system, d, beta):
            return j
    raise AssertionError("no direction pairs with a nonzero root")


def irr_projections(table: SLTable) -> list[Vector]:
    """Projections ``Pr(beta_1), ..., Pr(beta_n)`` of the irreducible chains."""
    cache = table.profile_cache
    if "irr" in cache:
        return cache["irr"]
    with table.lock:
        table.ensure(2)
        pos = [b for b in sorted(table.system.all_roots) if is_increasing(table, b)]
        posset = set(pos)
        simple = []
        for b in pos:
            if not any(tuple(x - y for x, y in zip(b, a)) in posset for a in pos):
                simple.append(b)
        n = table.rank
        assert len(simple) == n, f"found {len(simple)} simple roots of the polarization, expected {n}"
        by_index = {}
        for b in simple:
            by_index.setdefault(m_index(table, b), []).append(b)
        assert sorted(by_index) == list(range(1, n + 1)) and all(len(v) == 1 for v in by_index.values()), \
            "m1 does not index the irreducible chains bijectively"
        cache["irr"] = [by_index[i][0] for i in range(1, n + 1)]
    return cache["irr"]


def irr_chains(table: SLTable) -> list[ChainId]:
    return [ChainId(element(table, b, 0)) for b in irr_projections(table)]


def beta_coefficients(table: SLTable, beta: Vector) -> tuple[int, ...]:
    sol = solve_exact(irr_projections(table), beta)
    assert sol is not None and all(x.denominator == 1 for x in sol), f"{beta} is not an integer combination"
    return tuple(int(x) for x in sol)


def _mprime(table: SLTable, coeffs: Sequence[int]) -> int:
    irr = irr_projections(table)
    return min(M_index(table, irr[j]) for j, c in enumerate(coeffs) if c)


def f_value(table: SLTable, coeffs: Sequence[int]) -> int:
    irr = irr_projections(table)
    n = len(irr)
    return max(sum(-coeffs[j] for j in range(n) if pairing(table.system, irr[k], irr[j]))
               for k in range(n))


# -- u, y and l ----------------------------------------------------------------------


def _u_scan(table: SLTable, beta: Vector, i: int) -> int:
    """Chain position of ``u_i``; assumes the chain lies in ``C_i``."""
    im = table.imag_key(1, i)
    k = 0
    while True:
        w = element_key(table, beta, k + 1)
        if w <= im or w.startswith(im):
            return k
        k += 1


def in_C(table: SLTable, beta: Vector, i: int) -> bool:
    if is_increasing(table, beta):
        return False
    coeffs = beta_coefficients(table, beta)
    return _mprime(table, coeffs) >= i and element_key(table, beta, 0) > table.imag_key(1, i)


def u_value(table: SLTable, degree: Degree, i: Optional[int] = None) -> Vector:
    beta, _ = chain_coords(table, degree)
    if is_increasing(table, beta):
        raise UsageError("u is defined on decreasing chains only")
    if i is None:
        i = _mprime(table, beta_coefficients(table, beta))
    elif not in_C(table, beta, i):
        raise UsageError(f"chain of {tuple(degree)} is not in C_{i}")
    return element(table, beta, _u_scan(table, beta, i))


def y_key(table: SLTable, i: int) -> str:
    """Key of ``y_i`` obtained from the ``u_j`` recursion."""
    n = table.rank
    if not 1 <= i <= n:
        raise UsageError(f"index must lie in 1..{n}, got {i}")
    cache = table.profile_cache
    if ("y", i) in cache:
        return cache[("y", i)]
    system = table.system
    u = key_standard(table.imag_key(1, i))[0]
    # shortest elements of decreasing chains are the only real candidates that matter
    dec_bases = [(b, element_key(table, b, 0)) for b in sorted(system.all_roots)
                 if not is_increasing(table, b)]
    limit = table.cap * system.delta_height
    while True:
        udeg = table.key_degree(u)
        ubeta = finite_part(system, udeg)
        best = table.imag_key(1, M_index(table, ubeta))
        best_real = False
        for b, w in dec_bases:
            s = tuple(x + y for x, y in zip(ubeta, b))
            if s not in system.all_roots:
                continue
            if is_increasing(table, s) and m_index(table, s) == i and w > best:
                best, best_real = w, True
        if not best_real:
            break
        u = u + best
        assert len(u) <= limit, "y recursion does not stabilise"
        tag = table.lookup_key(u)
        if tag is None:
            lvl = -(-len(u) // system.delta_height)
            table.ensure(lvl)
            tag = table.lookup_key(u)
        assert tag is not None and tag[0] == "real", "y recursion left the set of standard words"
    cache[("y", i)] = u
    return u


def y_word(table: SLTable, i: int) -> Word:
    return table.word(y_key(table, i))


def y_degree(table: SLTable, i: int) -> Vector:
    return table.key_degree(y_key(table, i))


def _l_scan(table: SLTable, beta: Vector, y: str, strict: bool = False) -> int:
    k = 0
    while True:
        w = element_key(table, beta, k)
        if w > y or (not strict and w == y):
            return k
        k += 1


def l_value(table: SLTable, degree: Degree) -> Vector:
    beta, _ = chain_coords(table, degree)
    if not is_increasing(table, beta):
        raise UsageError("l is defined on increasing chains only")
    i = m_index(table, beta)
    return element(table, beta, _l_scan(table, beta, y_key(table, i)))


# -- profiles ------------------------------------------------------------------------


def chain_profile(table: SLTable, degree: Degree) -> ChainProfile:
    beta, _ = chain_coords(table, degree)
    key = ("profile", beta)
    cache = table.profile_cache
    if key in cache:
        return cache[key]
    inc = is_increasing(table, beta)
    coeffs = beta_coefficients(table, beta)
    assert inc == all(c >= 0 for c in coeffs), "polarization and monotonicity disagree"
    irr = irr_projections(table)
    m1 = m_index(table, beta)
    M1 = M_index(table, beta)
    mp = _mprime(table, coeffs)
    if inc:
        period = coeffs[m1 - 1]
        fv = None
        u = None
        l = l_value(table, element(table, beta, 0))
    else:
        period = sum(-coeffs[j] for j in range(len(irr)) if coeffs[j] and M_index(table, irr[j]) == mp)
        fv = f_value(table, coeffs)
        u = element(table, beta, _u_scan(table, beta, mp))
        l = None
    prof = ChainProfile(
        id=ChainId(element(table, beta, 0)),
        increasing=inc,
        projection=beta,
        beta_coeffs=coeffs,
        m1=m1,
        M1=M1,
        Mprime1=mp,
        periodicity=period,
        f_value=fv,
        relative_height=sum(abs(c) for c in coeffs),
        u=u,
        l=l,
    )
    cache[key] = prof
    return prof


def delta_subsystem(table: SLTable, i: int) -> set[Vector]:
    n = table.rank
    if not 0 <= i <= n:
        raise UsageError(f"index must lie in 0..{n}, got {i}")
    basis = RationalBasis(n)
    for d in directions(table)[:i]:
        basis.add(d)
    return {b for b in table.system.all_roots if basis.contains(b)}


# -- chunks --------------------------------------------------------------------------


def _count_runs(w: str, pos: int, block: str) -> int:
    t = 0
    while w.startswith(block, pos):
        pos += len(block)
        t += 1
    return t


def to_chunk_format(table: SLTable, w: Union[Word, str]) -> ChunkFormat:
    key = w.key if isinstance(w, Word) else w
    tag = table.lookup_key(key)
    if tag is None or tag[0] != "real":
        raise UsageError("chunk format needs a generated word of real degree")
    beta = tag[2]
    prof = chain_profile(table, affine_vector(table.system, beta, tag[1]))
    segments: list = []
    lit = ""

    def flush() -> None:
        nonlocal lit
        if lit:
            segments.append(Literal(table.word(lit)))
            lit = ""

    if not prof.increasing:
        i = prof.Mprime1
        block = table.imag_key(1, i)
        pos = 0
        while pos < len(key):
            t = _count_runs(key, pos, block)
            if t:
                flush()
                segments.append(Run(i, t))
                pos += t * len(block)
            else:
                lit += key[pos]
                pos += 1
        flush()
        return ChunkFormat(tuple(segments), "decreasing", None, {i: table.word(block)})
    i = prof.m1
    j = M_index(table, irr_projections(table)[i - 1])
    y = y_key(table, i)
    block = table.imag_key(1, j)
    pos = 0
    while pos < len(key):
        if key.startswith(y, pos):
            flush()
            pos += len(y)
            t = _count_runs(key, pos, block)
            segments.append(Run(j, t))
            pos += t * len(block)
        else:
            lit += key[pos]
            pos += 1
    flush()
    return ChunkFormat(tuple(segments), "increasing", table.word(y), {j: table.word(block)})


# -- v bound -------------------------------------------------------------------------


def _highest_root(gram: list[list[int]]) -> Vector:
    n = len(gram)
    found = {tuple(1 if j == i else 0 for j in range(n)) for i in range(n)}
    layer = list(found)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in found:
                        p += 1
                    else:
                        break
                q = p - 2 * sum(beta[j] * gram[j][i] for j in range(n)) // gram[i][i]
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    return max(found, key=sum)


def _connected(nodes: Sequence[int], gram) -> bool:
    nodes = list(nodes)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        a = stack.pop()
        for b in nodes:
            if b not in seen and gram[a][b]:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(nodes)


def v_bound(system: FiniteRootSystem | str) -> int:
    """Largest leaf multiplicity in the highest root over all connected subdiagrams."""
    if isinstance(system, str):
        system = build_system(system)
    g = _gram(system.type)
    n = system.rank
    best = 1
    for size in range(2, n + 1):
        for nodes in combinations(range(n), size):
            if not _connected(nodes, g):
                continue
            sub = [[g[a][b] for b in nodes] for a in nodes]
            theta = _highest_root(sub)
            for p, a in enumerate(nodes):
                if sum(1 for b in nodes if b != a and g[a][b]) == 1:
                    best = max(best, theta[p])
    return best
