"""Words over the ordered extended alphabet and their Lyndon factorizations.

Internally a word is encoded as a *key*: a ``str`` whose i-th character is
``chr(48 + rank)`` where ``rank`` is the position of the i-th letter in the
order.  Python's native string comparison on keys is then exactly the
lexicographic order with a proper prefix counted as smaller, and slicing and
concatenation are cheap.  The factorization routines below work on keys; the
:class:`Word` wrappers are for the public surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Sequence

from .errors import UsageError


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class LetterOrder:
    """A total order on the letters ``0..n``; ``letters[0]`` is the smallest."""

    letters: tuple[int, ...]
    rank: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        letters = tuple(int(x) for x in self.letters)
        if sorted(letters) != list(range(len(letters))) or not letters:
            raise UsageError(f"order must be a permutation of 0..n, got {self.letters!r}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "rank", {a: i for i, a in enumerate(letters)})

    @classmethod
    def parse(cls, text: str, size: int | None = None) -> "LetterOrder":
        """Parse ``"0,2,4,1,3"`` or ``"0<2<4<1<3"`` (smallest first)."""
        raw = text.replace("<", ",").replace(" ", "")
        try:
            letters = tuple(int(tok) for tok in raw.split(",") if tok != "")
        except ValueError:
            raise UsageError(f"cannot parse order {text!r}") from None
        order = cls(letters)
        if size is not None and order.size != size:
            raise UsageError(f"order {text!r} has {order.size} letters, expected {size}")
        return order

    @classmethod
    def standard(cls, size: int) -> "LetterOrder":
        return cls(tuple(range(size)))

    @property
    def size(self) -> int:
        return len(self.letters)

    def char(self, letter: int) -> str:
        try:
            return chr(48 + self.rank[letter])
        except KeyError:
            raise UsageError(f"letter {letter} is not in the alphabet 0..{self.size - 1}") from None

    def encode(self, letters: Iterable[int]) -> str:
        return "".join(self.char(a) for a in letters)

    def decode(self, key: str) -> tuple[int, ...]:
        return tuple(self.letters[ord(ch) - 48] for ch in key)

    def __str__(self) -> str:
        return "<".join(map(str, self.letters))


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    order: LetterOrder

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        for a in self.letters:
            if a not in self.order.rank:
                raise UsageError(f"letter {a} is not in the alphabet 0..{self.order.size - 1}")

    @classmethod
    def from_key(cls, key: str, order: LetterOrder) -> "Word":
        return cls(order.decode(key), order)

    @classmethod
    def parse(cls, text: str, order: LetterOrder) -> "Word":
        """Accept ``"2,1,0"`` or, when every letter is one digit, ``"210"``."""
        text = text.strip()
        if "," in text:
            toks = [t for t in text.split(",") if t.strip()]
        else:
            toks = list(text)
        try:
            return cls(tuple(int(t) for t in toks), order)
        except ValueError:
            raise UsageError(f"cannot parse word {text!r}") from None

    @property
    def key(self) -> str:
        return self.order.encode(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        _same_order(self, other)
        return Word(self.letters + other.letters, self.order)

    def __str__(self) -> str:
        return self.compact() if self.order.size <= 10 else self.serialize()

    def serialize(self) -> str:
        return ",".join(map(str, self.letters))

    def compact(self) -> str:
        if self.order.size > 10:
            raise UsageError("compact form needs single-character letters")
        return "".join(map(str, self.letters))

    def degree(self) -> tuple[int, ...]:
        """Letter counts, indexed by letter 0..n."""
        counts = [0] * self.order.size
        for a in self.letters:
            counts[a] += 1
        return tuple(counts)

    # ordering through keys; comparing words under different orders is an error
    def _cmp_key(self, other: "Word") -> tuple[str, str]:
        _same_order(self, other)
        return self.key, other.key

    def __lt__(self, other: "Word") -> bool:
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other: "Word") -> bool:
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other: "Word") -> bool:
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other: "Word") -> bool:
        a, b = self._cmp_key(other)
        return a >= b


def _same_order(u: Word, v: Word) -> None:
    if u.order.letters != v.order.letters:
        raise UsageError(f"words use different orders ({u.order} vs {v.order})")


def compare(u: Word, v: Word) -> Ordering:
    a, b = u._cmp_key(v)
    return Ordering.LESS if a < b else Ordering.GREATER if a > b else Ordering.EQUAL


# -- key-level algorithms ---------------------------------------------------------


def key_is_lyndon(w: str) -> bool:
    if not w:
        raise UsageError("the empty word has no Lyndon property")
    # Duval: w is Lyndon iff the scan consumes it as a single period of itself
    n = len(w)
    i, j = 0, 1
    while j < n:
        if w[i] < w[j]:
            i = 0
        elif w[i] == w[j]:
            i += 1
        else:
            return False
        j += 1
    return i == 0


def key_canonical_factorization(w: str) -> list[str]:
    """Chen-Fox-Lyndon factorization by Duval's linear scan."""
    if not w:
        raise UsageError("cannot factor the empty word")
    out = []
    n = len(w)
    k = 0
    while k < n:
        i, j = k, k + 1
        while j < n and w[i] <= w[j]:
            i = k if w[i] < w[j] else i + 1
            j += 1
        period = j - i
        while k <= i:
            out.append(w[k:k + period])
            k += period
    return out


def _check_factorable(w: str) -> None:
    if len(w) < 2:
        raise UsageError("factorization needs a Lyndon word of length > 1")
    if not key_is_lyndon(w):
        raise UsageError("factorization needs a Lyndon word")


def key_costandard(w: str) -> tuple[str, str]:
    """Split off the smallest proper suffix, i.e. the longest Lyndon one."""
    _check_factorable(w)
    right = key_canonical_factorization(w[1:])[-1]
    return w[: len(w) - len(right)], right


def key_standard(w: str) -> tuple[str, str]:
    """Split off the longest proper Lyndon prefix."""
    _check_factorable(w)
    # a prefix w[:j+1] is Lyndon exactly when the Duval scan resets at j
    n = len(w)
    best = 1
    i = 0
    for j in range(1, n - 1):
        if w[i] < w[j]:
            i = 0
            best = j + 1
        elif w[i] == w[j]:
            i += 1
        else:  # pragma: no cover - cannot happen inside a Lyndon word
            break
    return w[:best], w[best:]


# -- public Word API ----------------------------------------------------------------


def is_lyndon(w: Word) -> bool:
    return key_is_lyndon(w.key)


def canonical_factorization(w: Word) -> list[Word]:
    return [Word.from_key(k, w.order) for k in key_canonical_factorization(w.key)]


def costandard_factorization(w: Word) -> tuple[Word, Word]:
    a, b = key_costandard(w.key)
    return Word.from_key(a, w.order), Word.from_key(b, w.order)


def standard_factorization(w: Word) -> tuple[Word, Word]:
    a, b = key_standard(w.key)
    return Word.from_key(a, w.order), Word.from_key(b, w.order)


def make_word(text: str | Sequence[int], order: LetterOrder) -> Word:
    if isinstance(text, str):
        return Word.parse(text, order)
    return Word(tuple(text), order)
