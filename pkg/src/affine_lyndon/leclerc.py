"""Generation of affine standard Lyndon words by height induction.

Real roots are stored under ``(m, beta)`` meaning the affine root
``beta + m*delta`` with ``beta`` a nonzero finite root.  Imaginary words are
stored per level ``k`` as a list of ``n`` pairs ``(key, direction)`` ordered
``SL_1(k delta) > ... > SL_n(k delta)``.

A bracket of root vectors is never evaluated.  Two real root vectors bracket
to something nonzero iff their degrees add up to a root or to an imaginary
degree; a real root vector against an imaginary element with Cartan direction
``h`` is nonzero iff ``(h, beta) != 0``; two imaginary elements commute.  The
Cartan direction of an imaginary word is the finite part of the degree of its
costandard left factor.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .errors import AffineLyndonError, DepthError, UsageError
from .root_core import (
    ExtendedRoot,
    FiniteRootSystem,
    FiniteType,
    RationalBasis,
    Vector,
    affine_vector,
    build_system,
    classify,
    finite_part,
    pairing,
    IMAGINARY,
    REAL,
)
from .words import LetterOrder, Ordering, Word, key_costandard, key_is_lyndon

DEFAULT_DEPTH_CAP = 64
CACHE_FORMAT_VERSION = 1
CACHE_ENV_VAR = "AFFINE_LYNDON_CACHE"


class GenerationError(AffineLyndonError, AssertionError):
    """The recursion could not complete; indicates broken root data."""


@dataclass(frozen=True)
class SLEntry:
    degree: ExtendedRoot
    word: Word
    direction: Optional[Vector] = None

    @property
    def is_imaginary(self) -> bool:
        return self.degree.is_imaginary

    def finite_part(self, system: FiniteRootSystem) -> Vector:
        return finite_part(system, self.degree.vector)


class SLTable:
    """The bijection between extended positive affine roots and SL words."""

    def __init__(self, system: FiniteRootSystem, order: LetterOrder, cap: int = DEFAULT_DEPTH_CAP):
        if order.size != system.rank + 1:
            raise UsageError(f"order has {order.size} letters but {system.type} needs {system.rank + 1}")
        self.system = system
        self.order = order
        self.cap = cap
        self.real: dict[tuple[int, Vector], str] = {}
        self.imag: dict[int, list[tuple[str, Vector]]] = {}
        self.reverse: dict[str, tuple] = {}
        self.generated_depth = 0
        self.lock = threading.RLock()
        self.profile_cache: dict = {}
        n = system.rank
        self._zero = (0,) * n
        self._h = system.delta_height
        roots = sorted(system.all_roots)
        self._roots = roots
        # for each finite target, the splits into two roots (ordered pairs)
        rootset = system.all_roots
        self._splits: dict[Vector, list[tuple[Vector, Vector]]] = {}
        for b in roots:
            lst = []
            for b1 in roots:
                b2 = tuple(x - y for x, y in zip(b, b1))
                if b2 in rootset:
                    lst.append((b1, b2))
            self._splits[b] = lst

    # -- basic facts ----------------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.system.rank

    def height(self, m: int, beta: Vector) -> int:
        return sum(beta) + m * self._h

    @staticmethod
    def _positive(m: int, beta: Vector) -> bool:
        if m > 0:
            return True
        return m == 0 and all(x >= 0 for x in beta)

    # -- generation -----------------------------------------------------------------

    def ensure(self, depth: int) -> None:
        """Generate everything of height at most ``depth * |delta|``."""
        if depth <= self.generated_depth:
            return
        if depth > self.cap:
            raise DepthError(f"depth {depth} exceeds the cap {self.cap}; raise the cap to go further")
        with self.lock:
            if depth > self.generated_depth:
                self._extend(depth)

    def _extend(self, depth: int) -> None:
        h = self._h
        lo, hi = self.generated_depth * h, depth * h
        items = []
        for m in range(0, depth + 1):
            for b in self._roots:
                if not self._positive(m, b):
                    continue
                ht = self.height(m, b)
                if lo < ht <= hi:
                    items.append((ht, 0, m, b))
        for k in range(self.generated_depth + 1, depth + 1):
            items.append((k * h, 1, k, None))
        items.sort(key=lambda t: (t[0], t[1]))
        for _, kind, m, b in items:
            if kind == 0:
                self._gen_real(m, b)
            else:
                self._gen_imag(m)
        self.generated_depth = depth

    def _gen_real(self, m: int, beta: Vector) -> None:
        if m == 0 and sum(beta) == 1:
            key = self.order.char(beta.index(1) + 1)
        elif m == 1 and beta == tuple(-x for x in self.system.theta):
            key = self.order.char(0)
        else:
            best = ""
            real = self.real
            for b1, b2 in self._splits[beta]:
                for m1 in range(m + 1):
                    w1 = real.get((m1, b1))
                    if w1 is None:
                        continue
                    w2 = real.get((m - m1, b2))
                    if w2 is None:
                        continue
                    cand = w1 + w2 if w1 < w2 else w2 + w1
                    if cand > best:
                        best = cand
            for j in range(1, m + 1):
                rest = real.get((m - j, beta))
                if rest is None:
                    continue
                for wk, d in self.imag[j]:
                    if pairing(self.system, d, beta) == 0:
                        continue
                    cand = wk + rest if wk < rest else rest + wk
                    if cand > best:
                        best = cand
            if not best:
                raise GenerationError(f"no decomposition found for {beta}+{m}delta")
            key = best
        self.real[(m, beta)] = key
        self.reverse[key] = ("real", m, beta)

    def _gen_imag(self, k: int) -> None:
        real = self.real
        cands = set()
        for b in self._roots:
            nb = tuple(-x for x in b)
            for m1 in range(k + 1):
                w1 = real.get((m1, b))
                w2 = real.get((k - m1, nb))
                if w1 is None or w2 is None:
                    continue
                cands.add(w1 + w2 if w1 < w2 else w2 + w1)
        n = self.rank
        basis = RationalBasis(n)
        chosen = []
        for w in sorted(cands, reverse=True):
            d = self.direction_of(w)
            if basis.add(d):
                chosen.append((w, d))
                if len(chosen) == n:
                    break
        if len(chosen) != n:
            raise GenerationError(f"only {len(chosen)} independent imaginary words at level {k}")
        self.imag[k] = chosen
        for r, (w, _) in enumerate(chosen, start=1):
            self.reverse[w] = ("imag", k, r)

    def direction_of(self, key: str) -> Vector:
        left, _ = key_costandard(key)
        return finite_part(self.system, self.key_degree(left))

    # -- lookups --------------------------------------------------------------------

    def key_degree(self, key: str) -> Vector:
        counts = [0] * (self.rank + 1)
        letters = self.order.letters
        for ch in key:
            counts[letters[ord(ch) - 48]] += 1
        return tuple(counts)

    def level_needed(self, m: int, beta: Vector) -> int:
        h = self._h
        return -(-self.height(m, beta) // h)

    def real_key(self, m: int, beta: Vector) -> str:
        """Key of ``beta + m*delta``, extending the table if allowed."""
        beta = tuple(beta)
        if beta not in self.system.all_roots or not self._positive(m, beta):
            raise UsageError(f"{beta}+{m}delta is not a positive real root")
        self.ensure(self.level_needed(m, beta))
        return self.real[(m, beta)]

    def imag_key(self, k: int, r: int) -> str:
        if not 1 <= r <= self.rank or k < 1:
            raise UsageError(f"no imaginary root ({k}delta, {r})")
        self.ensure(k)
        return self.imag[k][r - 1][0]

    def imag_direction(self, k: int, r: int) -> Vector:
        self.imag_key(k, r)
        return self.imag[k][r - 1][1]

    def word(self, key: str) -> Word:
        return Word.from_key(key, self.order)

    def lookup_key(self, key: str) -> Optional[tuple]:
        return self.reverse.get(key)

    def entry_for_key(self, key: str) -> SLEntry:
        tag = self.reverse.get(key)
        if tag is None:
            raise UsageError("word is not a generated standard Lyndon word")
        if tag[0] == "real":
            _, m, b = tag
            return SLEntry(ExtendedRoot(affine_vector(self.system, b, m)), self.word(key))
        _, k, r = tag
        vec = tuple(k * x for x in self.system.marks)
        return SLEntry(ExtendedRoot(vec, r), self.word(key), self.imag[k][r - 1][1])

    def entries(self):
        for (m, b), key in sorted(self.real.items(), key=lambda t: (self.height(*t[0]), t[0])):
            yield SLEntry(ExtendedRoot(affine_vector(self.system, b, m)), self.word(key))
        for k in sorted(self.imag):
            for r in range(1, self.rank + 1):
                yield self.entry_for_key(self.imag[k][r - 1][0])

    def parse_degree(self, degree: ExtendedRoot | Sequence[int], index: Optional[int] = None) -> tuple:
        """Return ``('real', m, beta)`` or ``('imag', k, r)`` for a degree."""
        if isinstance(degree, ExtendedRoot):
            vec, index = degree.vector, degree.imaginary_index if index is None else index
        else:
            vec = tuple(degree)
        if len(vec) != self.rank + 1:
            raise UsageError(f"degree must have {self.rank + 1} coordinates, got {len(vec)}")
        if any(x < 0 for x in vec) or not any(vec):
            raise UsageError(f"{vec} is not a positive root")
        kind = classify(self.system, vec)
        if kind == REAL:
            if index is not None:
                raise UsageError("real degrees take no imaginary index")
            return ("real", vec[0], finite_part(self.system, vec))
        if kind == IMAGINARY:
            if index is None:
                raise UsageError(f"{vec} is imaginary; an index r in 1..{self.rank} is required")
            if not 1 <= index <= self.rank:
                raise UsageError(f"imaginary index must lie in 1..{self.rank}, got {index}")
            return ("imag", vec[0], index)
        raise UsageError(f"{vec} is not a root")

    def key_for(self, degree, index: Optional[int] = None, extend: bool = True) -> str:
        tag = self.parse_degree(degree, index)
        need = tag[1] if tag[0] == "imag" else self.level_needed(tag[1], tag[2])
        if need > self.generated_depth and not extend:
            raise DepthError(f"degree needs depth {need}, table generated to {self.generated_depth}")
        if tag[0] == "real":
            return self.real_key(tag[1], tag[2])
        return self.imag_key(tag[1], tag[2])


def generate_up_to_delta(system: FiniteRootSystem | FiniteType | str, order: LetterOrder | Sequence[int] | str,
                         k: int, cap: int = DEFAULT_DEPTH_CAP) -> SLTable:
    if not isinstance(system, FiniteRootSystem):
        system = build_system(system)
    if not isinstance(order, LetterOrder):
        order = LetterOrder.parse(order) if isinstance(order, str) else LetterOrder(tuple(order))
    if k < 1:
        raise UsageError(f"depth must be at least 1, got {k}")
    table = SLTable(system, order, cap)
    table.ensure(k)
    return table


def sl(table: SLTable, degree: ExtendedRoot | Sequence[int], index: Optional[int] = None) -> Word:
    """Word of a generated degree; raises DepthError beyond the generated depth."""
    return table.word(table.key_for(degree, index, extend=False))


def bracket_nonzero(system: FiniteRootSystem, e1: SLEntry, e2: SLEntry) -> bool:
    if e1.is_imaginary and e2.is_imaginary:
        return False
    if e1.is_imaginary or e2.is_imaginary:
        im, re = (e1, e2) if e1.is_imaginary else (e2, e1)
        return pairing(system, im.direction, re.finite_part(system)) != 0
    s = tuple(a + b for a, b in zip(e1.finite_part(system), e2.finite_part(system)))
    return not any(s) or s in system.all_roots


def compare_extended(table: SLTable, a, b) -> Ordering:
    ka = table.key_for(a, extend=False)
    kb = table.key_for(b, extend=False)
    return Ordering.LESS if ka < kb else Ordering.GREATER if ka > kb else Ordering.EQUAL


# -- cache --------------------------------------------------------------------------


def cache_key(system: FiniteRootSystem, order: LetterOrder) -> str:
    # the Cartan matrix is part of the key so a change of numbering never reuses old files
    blob = json.dumps([system.type.family, system.rank, [list(r) for r in system.cartan],
                       list(order.letters), CACHE_FORMAT_VERSION])
    return hashlib.sha256(blob.encode()).hexdigest()[:24]


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "affine_lyndon"


def cache_file(directory: Path | str, system: FiniteRootSystem, order: LetterOrder) -> Path:
    return Path(directory) / f"{system.type}-{cache_key(system, order)}.json"


def table_to_json(table: SLTable) -> dict:
    o = table.order
    return {
        "format_version": CACHE_FORMAT_VERSION,
        "family": table.system.type.family,
        "rank": table.rank,
        "order": list(o.letters),
        "generated_depth": table.generated_depth,
        "real": [
            {"level": m, "finite": list(b), "degree": list(affine_vector(table.system, b, m)),
             "word": ",".join(map(str, o.decode(w)))}
            for (m, b), w in sorted(table.real.items())
        ],
        "imaginary": [
            {"level": k, "index": r, "word": ",".join(map(str, o.decode(w))), "direction": list(d)}
            for k in sorted(table.imag)
            for r, (w, d) in enumerate(table.imag[k], start=1)
        ],
    }


def table_from_json(doc: dict, cap: int = DEFAULT_DEPTH_CAP) -> SLTable:
    """Rebuild a table and check its invariants; raises UsageError on any defect."""
    if doc.get("format_version") != CACHE_FORMAT_VERSION:
        raise UsageError(f"unsupported cache format {doc.get('format_version')!r}")
    system = build_system(FiniteType(doc["family"], int(doc["rank"])))
    order = LetterOrder(tuple(doc["order"]))
    table = SLTable(system, order, max(cap, int(doc["generated_depth"])))
    depth = int(doc["generated_depth"])

    def enc(text: str) -> str:
        return order.encode(int(t) for t in text.split(","))

    for rec in doc["real"]:
        m, b = int(rec["level"]), tuple(rec["finite"])
        w = enc(rec["word"])
        if b not in system.all_roots or not table._positive(m, b) or table.level_needed(m, b) > depth:
            raise UsageError(f"cache holds an invalid real degree {b}+{m}delta")
        if not key_is_lyndon(w) or table.key_degree(w) != affine_vector(system, b, m):
            raise UsageError(f"cache word for {b}+{m}delta is inconsistent")
        table.real[(m, b)] = w
        table.reverse[w] = ("real", m, b)
    by_level: dict[int, list] = {}
    for rec in doc["imaginary"]:
        by_level.setdefault(int(rec["level"]), []).append(rec)
    for k in range(1, depth + 1):
        recs = sorted(by_level.get(k, []), key=lambda r: r["index"])
        if len(recs) != system.rank:
            raise UsageError(f"cache level {k} has {len(recs)} imaginary words")
        basis = RationalBasis(system.rank)
        row = []
        for rec in recs:
            w, d = enc(rec["word"]), tuple(rec["direction"])
            if not key_is_lyndon(w) or table.key_degree(w) != tuple(k * x for x in system.marks):
                raise UsageError(f"cache imaginary word at level {k} is inconsistent")
            if d != table.direction_of(w) or not basis.add(d):
                raise UsageError(f"cache direction at level {k} is inconsistent")
            row.append((w, d))
        if any(row[i][0] <= row[i + 1][0] for i in range(len(row) - 1)):
            raise UsageError(f"cache imaginary words at level {k} are not strictly decreasing")
        table.imag[k] = row
        for r, (w, _) in enumerate(row, start=1):
            table.reverse[w] = ("imag", k, r)
    expected = sum(1 for m in range(depth + 1) for b in system.all_roots
                   if table._positive(m, b) and table.level_needed(m, b) <= depth)
    if len(table.real) != expected:
        raise UsageError(f"cache has {len(table.real)} real words, expected {expected}")
    if len(table.reverse) != len(table.real) + depth * system.rank:
        raise UsageError("cache words are not pairwise distinct")
    table.generated_depth = depth
    return table


def save_table(table: SLTable, directory: Path | str) -> Path:
    path = cache_file(directory, table.system, table.order)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(table_to_json(table)))
    tmp.replace(path)
    return path


def load_table(directory: Path | str, system: FiniteRootSystem, order: LetterOrder,
               cap: int = DEFAULT_DEPTH_CAP) -> Optional[SLTable]:
    """Return the cached table, or None when absent or stale."""
    path = cache_file(directory, system, order)
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text())
        if doc.get("family") != system.type.family or doc.get("rank") != system.rank \
                or tuple(doc.get("order", ())) != order.letters:
            return None
        return table_from_json(doc, cap)
    except (UsageError, ValueError, KeyError, TypeError):
        return None
