"""Finite and untwisted affine root data.

Vectors are plain tuples of ints.  A finite vector has length ``n`` and is
written in the simple-root basis ``alpha_1 .. alpha_n``.  An affine vector has
length ``n + 1`` and is written in the basis ``alpha_0 .. alpha_n`` of the
extended Dynkin diagram, so ``delta`` is the tuple of marks.

Numbering of simple roots follows Kac's tables: B_n has ``alpha_n`` short,
C_n has ``alpha_n`` long, D_n forks at ``alpha_{n-2}``, F4 has the double bond
between nodes 2 and 3 with nodes 1, 2 long, G2 has ``alpha_1`` long, and in
E_n the node ``alpha_n`` hangs off ``alpha_{n-3}`` of the chain ``alpha_1 .. alpha_{n-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ConfigurationError, UsageError

Vector = tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "E": 6, "F": 4, "G": 2}


@dataclass(frozen=True)
class FiniteType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        fam = self.family
        if fam not in _MIN_RANK:
            raise ConfigurationError(f"unknown family {fam!r}; expected one of A,B,C,D,E,F,G")
        r = self.rank
        if not isinstance(r, int) or r < 1:
            raise ConfigurationError(f"rank must be a positive integer, got {r!r}")
        if fam in "ABCD" and r < _MIN_RANK[fam]:
            raise ConfigurationError(f"type {fam} needs rank >= {_MIN_RANK[fam]}, got {r}")
        if fam == "E" and r not in (6, 7, 8):
            raise ConfigurationError(f"type E needs rank in {{6,7,8}}, got {r}")
        if fam == "F" and r != 4:
            raise ConfigurationError(f"type F needs rank 4, got {r}")
        if fam == "G" and r != 2:
            raise ConfigurationError(f"type G needs rank 2, got {r}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "FiniteType":
        text = text.strip().upper()
        if len(text) < 2 or not text[1:].isdigit():
            raise ConfigurationError(f"cannot parse type {text!r}; expected e.g. 'F4'")
        return cls(text[0], int(text[1:]))


def _gram(ft: FiniteType) -> list[list[int]]:
    """Gram matrix of the simple roots, short roots of squared length 2."""
    n = ft.rank
    g = [[0] * n for _ in range(n)]
    lengths = [2] * n
    edges: list[tuple[int, int]] = []
    fam = ft.family
    if fam == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif fam == "B":
        edges = [(i, i + 1) for i in range(n - 1)]
        lengths = [4] * (n - 1) + [2]
    elif fam == "C":
        edges = [(i, i + 1) for i in range(n - 1)]
        lengths = [2] * (n - 1) + [4]
    elif fam == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif fam == "E":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 4, n - 1)]
    elif fam == "F":
        edges = [(0, 1), (1, 2), (2, 3)]
        lengths = [4, 4, 2, 2]
    elif fam == "G":
        edges = [(0, 1)]
        lengths = [6, 2]
    for i in range(n):
        g[i][i] = lengths[i]
    for i, j in edges:
        # (a_i, a_j) = -max(|a_i|^2, |a_j|^2) / 2 for joined nodes
        v = -max(lengths[i], lengths[j]) // 2
        g[i][j] = g[j][i] = v
    return g


@dataclass(frozen=True)
class FiniteRootSystem:
    """Cartan data plus the positive roots of a finite irreducible system."""

    type: FiniteType
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: Vector
    positive_roots: frozenset
    theta: Vector
    marks: Vector
    # derived lookups, filled in by build_system
    form: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    roots_by_height: tuple[Vector, ...] = field(repr=False, default=())
    all_roots: frozenset = field(repr=False, default=frozenset())

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def delta(self) -> Vector:
        return self.marks

    @property
    def delta_height(self) -> int:
        return sum(self.marks)

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.all_roots

    def simple_root(self, i: int) -> Vector:
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))


def build_system(ft: FiniteType | str) -> FiniteRootSystem:
    """Build the finite root system of the given type.

    Positive roots come from closing the simple roots under root strings,
    level by level in height.
    """
    if isinstance(ft, str):
        ft = FiniteType.parse(ft)
    n = ft.rank
    g = _gram(ft)
    # minimal symmetrizer: d_i = |a_i|^2 / 2 divided by the common gcd
    d = [g[i][i] // 2 for i in range(n)]
    from math import gcd
    common = 0
    for x in d:
        common = gcd(common, x)
    d = [x // common for x in d]
    cartan = tuple(tuple(2 * g[i][j] // g[i][i] for j in range(n)) for i in range(n))
    form = tuple(tuple(d[i] * cartan[i][j] for j in range(n)) for i in range(n))

    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found = set(simples)
    layer = list(simples)
    ordered = list(simples)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # alpha_i-string through beta: p - q = <beta, alpha_i^vee>
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in found:
                        p += 1
                    else:
                        break
                pair = sum(beta[j] * g[j][i] for j in range(n)) * 2 // g[i][i]
                q = p - pair
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
                        ordered.append(up)
        layer = nxt
    ordered.sort(key=lambda v: (sum(v), v))
    theta = max(ordered, key=sum)
    negatives = {tuple(-x for x in v) for v in ordered}
    return FiniteRootSystem(
        type=ft,
        cartan=cartan,
        symmetrizer=tuple(d),
        positive_roots=frozenset(ordered),
        theta=theta,
        marks=(1,) + theta,
        form=form,
        roots_by_height=tuple(ordered),
        all_roots=frozenset(ordered) | frozenset(negatives),
    )


def pairing(system: FiniteRootSystem, x: Sequence[int], y: Sequence[int]) -> int:
    """Integer invariant form ``x^T diag(d) A y`` on finite vectors."""
    n = system.rank
    if len(x) != n or len(y) != n:
        raise UsageError(f"pairing expects vectors of length {n}, got {len(x)} and {len(y)}")
    b = system.form
    return sum(x[i] * b[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j])


def finite_part(system: FiniteRootSystem, v: Sequence[int]) -> Vector:
    """``sum_{i>=1} c_i alpha_i - c_0 theta`` for an affine vector ``v``."""
    if len(v) != system.rank + 1:
        raise UsageError(f"affine vectors have length {system.rank + 1}, got {len(v)}")
    c0 = v[0]
    return tuple(v[i + 1] - c0 * system.theta[i] for i in range(system.rank))


def affine_vector(system: FiniteRootSystem, beta: Sequence[int], level: int) -> Vector:
    """The affine vector ``beta + level * delta``."""
    return (level,) + tuple(beta[i] + level * system.theta[i] for i in range(system.rank))


def height(v: Sequence[int]) -> int:
    return sum(v)


def is_positive(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v) and any(v)


REAL = "real"
IMAGINARY = "imaginary"
NOT_A_ROOT = "not_a_root"


def classify(system: FiniteRootSystem, v: Sequence[int]) -> str:
    """Return ``'real'``, ``'imaginary'`` or ``'not_a_root'``."""
    if len(v) != system.rank + 1:
        return NOT_A_ROOT
    f = finite_part(system, v)
    if any(f):
        return REAL if f in system.all_roots else NOT_A_ROOT
    return IMAGINARY if v[0] != 0 else NOT_A_ROOT


def is_positive_root(system: FiniteRootSystem, v: Sequence[int]) -> bool:
    return is_positive(v) and classify(system, v) != NOT_A_ROOT


@dataclass(frozen=True)
class ExtendedRoot:
    """A positive affine root, with an index ``r`` when it is imaginary."""

    vector: Vector
    imaginary_index: Optional[int] = None

    @property
    def is_imaginary(self) -> bool:
        return self.imaginary_index is not None

    @property
    def level(self) -> int:
        return self.vector[0]

    def __str__(self) -> str:
        body = ",".join(map(str, self.vector))
        return f"({body};{self.imaginary_index})" if self.is_imaginary else f"({body})"


def decompositions(system: FiniteRootSystem, v: Sequence[int]) -> set[tuple[Vector, Vector]]:
    """All unordered pairs of positive affine roots summing to ``v``."""
    v = tuple(v)
    if not is_positive_root(system, v):
        raise UsageError(f"{v} is not a positive affine root")
    beta = finite_part(system, v)
    m = v[0]
    zero = (0,) * system.rank
    options = list(system.all_roots) + [zero]
    out = set()
    for b1 in options:
        b2 = tuple(x - y for x, y in zip(beta, b1))
        if b2 != zero and b2 not in system.all_roots:
            continue
        for m1 in range(m + 1):
            g1 = affine_vector(system, b1, m1)
            g2 = tuple(x - y for x, y in zip(v, g1))
            if is_positive_root(system, g1) and is_positive_root(system, g2):
                out.add(tuple(sorted((g1, g2))))
    return out


# -- exact linear algebra over Q -------------------------------------------------


class RationalBasis:
    """Incremental row echelon form over the rationals."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[tuple[int, list[Fraction]]] = []  # (pivot, row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: Sequence[int | Fraction]) -> list[Fraction]:
        if len(vec) != self.dim:
            raise UsageError(f"expected a vector of length {self.dim}, got {len(vec)}")
        r = [Fraction(x) for x in vec]
        for piv, row in self._rows:
            if r[piv]:
                c = r[piv]
                r = [a - c * b for a, b in zip(r, row)]
        return r

    def contains(self, vec: Sequence[int | Fraction]) -> bool:
        return not any(self._reduce(vec))

    def add(self, vec: Sequence[int | Fraction]) -> bool:
        """Insert ``vec``; return True iff the rank grew."""
        r = self._reduce(vec)
        piv = next((i for i, x in enumerate(r) if x), None)
        if piv is None:
            return False
        c = r[piv]
        r = [x / c for x in r]
        new_rows = []
        for p, row in self._rows:
            if row[piv]:
                k = row[piv]
                row = [a - k * b for a, b in zip(row, r)]
            new_rows.append((p, row))
        new_rows.append((piv, r))
        self._rows = new_rows
        return True


def rank_of(vectors: Iterable[Sequence[int]], dim: int) -> int:
    basis = RationalBasis(dim)
    for v in vectors:
        basis.add(v)
    return basis.rank


def span_index(vectors: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[int]:
    """Smallest ``i`` with ``target`` in the span of ``vectors[:i]``, else None."""
    dim = len(target)
    for v in vectors:
        if len(v) != dim:
            raise UsageError(f"dimension mismatch: {len(v)} vs {dim}")
    basis = RationalBasis(dim)
    if basis.contains(target):
        return 0
    for i, v in enumerate(vectors, start=1):
        basis.add(v)
        if basis.contains(target):
            return i
    return None


def solve_exact(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[list[Fraction]]:
    """Coefficients ``c`` with ``sum c_j columns[j] = target``, or None.

    The columns are assumed linearly independent.
    """
    k = len(columns)
    dim = len(target)
    # augmented matrix, one row per coordinate
    rows = [[Fraction(columns[j][r]) for j in range(k)] + [Fraction(target[r])] for r in range(dim)]
    piv_cols = []
    row = 0
    for col in range(k):
        p = next((r for r in range(row, dim) if rows[r][col]), None)
        if p is None:
            continue
        rows[row], rows[p] = rows[p], rows[row]
        c = rows[row][col]
        rows[row] = [x / c for x in rows[row]]
        for r in range(dim):
            if r != row and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[row])]
        piv_cols.append(col)
        row += 1
    for r in range(row, dim):
        if rows[r][k]:
            return None
    sol = [Fraction(0)] * k
    for r, col in enumerate(piv_cols):
        sol[col] = rows[r][k]
    return sol
