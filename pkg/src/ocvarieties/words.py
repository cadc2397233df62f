"""Word calculus over the free monoid on a countable alphabet.

Letters are nonnegative integers. The first 26 render as single characters
(``x``, ``y``, ``z``, then ``a`` .. ``w``); higher indices render as ``x<k>``.
Words render with caret powers, e.g. ``x^2yx``; the empty word renders as ``1``.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

Letter = int

_NAMES = "xyz" + "abcdefghijklmnopqrstuvw"
_INDEX = {c: i for i, c in enumerate(_NAMES)}
_TOKEN = re.compile(r"\s*(?:(x)(\d+)|([a-z]))(?:\^(\d+))?")


class WordSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def letter_name(letter: Letter) -> str:
    if letter < 0:
        raise ValueError(f"letter index must be nonnegative, got {letter}")
    if letter < len(_NAMES):
        return _NAMES[letter]
    return f"x{letter}"


def parse_letter(name: str) -> Letter:
    if name in _INDEX:
        return _INDEX[name]
    m = re.fullmatch(r"x(\d+)", name)
    if m is None:
        raise ValueError(f"not a letter name: {name!r}")
    return int(m.group(1))


@dataclass(frozen=True, order=True)
class Word:
    """An element of the free monoid; ``Word(())`` is the empty word."""

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def parse(cls, text: str) -> "Word":
        return parse_word(text)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        return Word(self.letters * k)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for letter, run in itertools.groupby(self.letters):
            k = sum(1 for _ in run)
            parts.append(letter_name(letter) + (f"^{k}" if k > 1 else ""))
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


EMPTY = Word(())


def parse_word(text: str) -> Word:
    s = text.strip()
    if s == "1":
        return EMPTY
    if not s:
        raise WordSyntaxError("empty input (use '1' for the empty word)", text, 0)
    letters: List[Letter] = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None or m.end() == pos:
            raise WordSyntaxError("expected a letter", text, pos)
        letter = int(m.group(2)) if m.group(1) else _INDEX[m.group(3)]
        power = int(m.group(4)) if m.group(4) else 1
        if power < 1:
            raise WordSyntaxError("power must be positive", text, m.start(4))
        letters.extend([letter] * power)
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    return Word(tuple(letters))


def as_word(w) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return parse_word(w)
    return Word(tuple(w))


def content(w: Word) -> frozenset:
    return frozenset(w.letters)


def occ(w: Word, a: Letter) -> int:
    return w.letters.count(a)


def occurrence_vector(w: Word) -> Dict[Letter, int]:
    counts: Dict[Letter, int] = {}
    for a in w.letters:
        counts[a] = counts.get(a, 0) + 1
    return counts


def delete(w: Word, letters: Iterable[Letter]) -> Word:
    """Remove every occurrence of every letter in ``letters``."""
    drop = frozenset(letters)
    return Word(tuple(a for a in w.letters if a not in drop))


class SubstitutionKind(enum.Enum):
    MONOID = "monoid"  # images may be empty
    SEMIGROUP = "semigroup"


@dataclass(frozen=True)
class Substitution:
    """Letter-to-word mapping extended homomorphically; unmapped letters are fixed.

    ``images`` is kept as a sorted tuple of pairs so substitutions hash.
    """

    images: Tuple[Tuple[Letter, Word], ...] = ()
    kind: SubstitutionKind = SubstitutionKind.MONOID

    def __post_init__(self):
        pairs = tuple(sorted((int(a), as_word(w)) for a, w in dict(self.images).items()))
        object.__setattr__(self, "images", pairs)
        if self.kind is SubstitutionKind.SEMIGROUP:
            for a, w in pairs:
                if not w:
                    raise ValueError(
                        f"semigroup substitution maps {letter_name(a)} to the empty word"
                    )

    @classmethod
    def from_mapping(cls, mapping: Mapping, kind: SubstitutionKind = SubstitutionKind.MONOID):
        return cls(tuple((a if isinstance(a, int) else parse_letter(a), as_word(w))
                         for a, w in mapping.items()), kind)

    @property
    def mapping(self) -> Dict[Letter, Word]:
        return dict(self.images)

    def image(self, a: Letter) -> Word:
        for b, w in self.images:
            if b == a:
                return w
        return Word((a,))

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{letter_name(a)}->{w}" for a, w in self.images) + "}"


IDENTITY = Substitution()


def apply(xi: Substitution, w: Word) -> Word:
    m = xi.mapping
    out: List[Letter] = []
    for a in w.letters:
        if a in m:
            out.extend(m[a].letters)
        else:
            out.append(a)
    return Word(tuple(out))


def iter_factor_matches(
    pattern: Sequence[Letter],
    word: Sequence[Letter],
    allow_empty: bool,
) -> Iterator[Tuple[int, int, Dict[Letter, Tuple[Letter, ...]]]]:
    """Yield every ``(start, end, bindings)`` with ``word[start:end]`` an image of ``pattern``.

    Starts are tried in increasing order. Bindings map pattern letters to
    letter tuples; unbound letters try the longest image first. Dead
    ``(position, offset, bindings)`` states are memoized across starts.
    """
    word = tuple(word)
    n, m = len(pattern), len(word)
    min_len = 0 if allow_empty else 1
    slots: Dict[Letter, int] = {}
    for c in pattern:
        slots.setdefault(c, len(slots))
    pat = [slots[c] for c in pattern]
    letters = list(slots)
    # occurrences of each slot in pattern[i:]
    rest = [[0] * len(slots) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        rest[i] = rest[i + 1][:]
        rest[i][pat[i]] += 1
    # slots are bound in first-appearance order, so position i fixes how many are bound
    n_bound = [0] * (n + 1)
    for i in range(n):
        n_bound[i + 1] = max(n_bound[i], pat[i] + 1)
    images: List[Optional[Tuple[Letter, ...]]] = [None] * len(slots)
    dead = set()

    def go(i: int, j: int):
        if i == n:
            yield j, {letters[k]: images[k] for k in range(len(slots))}
            return
        key = (i, j, tuple(images[:n_bound[i]]))
        if key in dead:
            return
        found = False
        k = pat[i]
        bound = images[k]
        if bound is not None:
            if word[j:j + len(bound)] == bound:
                for res in go(i + 1, j + len(bound)):
                    found = True
                    yield res
        else:
            counts = rest[i]
            need = sum(
                counts[q] * (len(images[q]) if images[q] is not None else min_len)
                for q in range(len(slots)) if q != k
            )
            longest = (m - j - need) // counts[k]
            for length in range(longest, min_len - 1, -1):
                images[k] = word[j:j + length]
                for res in go(i + 1, j + length):
                    found = True
                    yield res
            images[k] = None
        if not found:
            dead.add(key)

    for start in range(m + 1):
        for end, bindings in go(0, start):
            yield start, end, bindings


@dataclass(frozen=True)
class Encounter:
    """Witness ``v = prefix . xi(u) . suffix`` with ``xi`` a semigroup substitution."""

    prefix: Word
    xi: Substitution
    suffix: Word

    def __str__(self) -> str:
        return f"a={self.prefix}, xi={self.xi}, b={self.suffix}"

    def replays(self, u: Word, v: Word) -> bool:
        if any(not self.xi.image(a) for a in content(u)):
            return False
        return self.prefix * apply(self.xi, u) * self.suffix == v


def encounters(u: Word, v: Word) -> Optional[Encounter]:
    """Return a witness that ``u <= v`` in the encounter quasiorder, or None.

    The search is exhaustive, so None proves that no semigroup substitution
    instance of ``u`` occurs as a factor of ``v``.
    """
    if not u:
        raise ValueError("encounters requires a nonempty pattern word")
    for start, end, bindings in iter_factor_matches(u.letters, v.letters, allow_empty=False):
        xi = Substitution(tuple((a, Word(img)) for a, img in bindings.items()),
                          SubstitutionKind.SEMIGROUP)
        return Encounter(v[:start], xi, v[end:])
    return None


@dataclass(frozen=True)
class ViolatingPair:
    u: Word
    v: Word
    witness: Encounter


def _check_words(words: Sequence[Word]) -> List[Word]:
    ws = [as_word(w) for w in words]
    if any(not w for w in ws):
        raise ValueError("anti-chain words must be nonempty")
    if len(set(ws)) != len(ws):
        raise ValueError("anti-chain words must be pairwise distinct")
    return ws


def check_antichain(words: Sequence[Word]) -> Optional[ViolatingPair]:
    """First ordered pair ``u != v`` with ``u <= v``, or None for an anti-chain."""
    ws = _check_words(words)
    for u in ws:
        for v in ws:
            if u is v or u == v:
                continue
            witness = encounters(u, v)
            if witness is not None:
                return ViolatingPair(u, v, witness)
    return None


def is_antichain(words: Sequence[Word]) -> bool:
    return check_antichain(words) is None


@dataclass(frozen=True)
class HypothesisViolation:
    u: Word
    v: Word
    deleted: Optional[frozenset]  # None when the contents differ


def nonempty_subsets(letters: Iterable[Letter]) -> Iterator[frozenset]:
    items = sorted(letters)
    for r in range(1, len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def check_hypothesis(words: Sequence[Word]) -> Optional[HypothesisViolation]:
    """Check that all words share content and agree after deleting any nonempty letter set."""
    ws = [as_word(w) for w in words]
    if not ws:
        raise ValueError("hypothesis check needs at least one word")
    first = ws[0]
    letters = content(first)
    for v in ws[1:]:
        if content(v) != letters:
            return HypothesisViolation(first, v, None)
    subsets = list(nonempty_subsets(letters))
    for v in ws[1:]:
        for X in subsets:
            if delete(first, X) != delete(v, X):
                return HypothesisViolation(first, v, X)
    return None


def is_balanced_pair(u: Word, v: Word) -> bool:
    return occurrence_vector(u) == occurrence_vector(v)


def generate_an(n: int) -> List[Word]:
    """The words ``x^(n-i) y x^i`` for ``i = 0..n``."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    x, y = 0, 1
    return [Word((x,) * (n - i) + (y,) + (x,) * i) for i in range(n + 1)]
