"""Bounded equational deduction for monoid identity systems.

A derivation step rewrites ``a . xi(s) . b`` into ``a . xi(t) . b`` where
``s = t`` is an identity of the system read in either direction and ``xi`` is
a monoid substitution (erasing images allowed). ``derive`` searches
breadth-first and returns a replayable :class:`Certificate`.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .words import (
    Substitution,
    SubstitutionKind,
    Word,
    apply,
    as_word,
    content,
    iter_factor_matches,
    letter_name,
    occurrence_vector,
    parse_word,
)

DEFAULT_MAX_DEPTH = 64
DEFAULT_MAX_VISITED = 10**6


class UnbalancedIdentityError(ValueError):
    """Identity whose sides have different content; the engine cannot enumerate its instances."""


@dataclass(frozen=True)
class Identity:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        object.__setattr__(self, "lhs", as_word(self.lhs))
        object.__setattr__(self, "rhs", as_word(self.rhs))

    @classmethod
    def parse(cls, text: str) -> "Identity":
        if text.count("=") != 1:
            raise ValueError(f"identity must have the form '<word> = <word>': {text!r}")
        left, right = text.split("=")
        return cls(parse_word(left), parse_word(right))

    @property
    def content_balanced(self) -> bool:
        return content(self.lhs) == content(self.rhs)

    def sides(self, direction: "Direction") -> Tuple[Word, Word]:
        if direction is Direction.FORWARD:
            return self.lhs, self.rhs
        return self.rhs, self.lhs

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


class IdentitySystem:
    """Ordered, duplicate-free collection of content-balanced identities.

    Reflexive identities and reversed duplicates are dropped; indices into
    ``identities`` are what certificates refer to.
    """

    def __init__(self, identities: Iterable = ()):
        kept: List[Identity] = []
        seen = set()
        for item in identities:
            ident = item if isinstance(item, Identity) else Identity(*item)
            if not ident.content_balanced:
                raise UnbalancedIdentityError(
                    f"identity {ident} has different content on its two sides"
                )
            if ident.lhs == ident.rhs:
                continue
            key = frozenset((ident.lhs, ident.rhs))
            if key in seen:
                continue
            seen.add(key)
            kept.append(ident)
        self.identities: Tuple[Identity, ...] = tuple(kept)

    @classmethod
    def parse(cls, text: str) -> "IdentitySystem":
        idents = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                idents.append(Identity.parse(line))
        return cls(idents)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "IdentitySystem":
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        return "".join(f"{ident}\n" for ident in self.identities)

    def union(self, other: "IdentitySystem") -> "IdentitySystem":
        return IdentitySystem(self.identities + other.identities)

    def __len__(self) -> int:
        return len(self.identities)

    def __iter__(self) -> Iterator[Identity]:
        return iter(self.identities)

    def __getitem__(self, i: int) -> Identity:
        return self.identities[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, IdentitySystem) and self.identities == other.identities

    def __hash__(self) -> int:
        return hash(self.identities)

    def __repr__(self) -> str:
        return f"IdentitySystem([{', '.join(str(i) for i in self.identities)}])"


@dataclass(frozen=True)
class SearchBounds:
    """Limits for ``derive``; ``max_word_length=None`` means the longer endpoint's length."""

    max_word_length: Optional[int] = None
    max_depth: int = DEFAULT_MAX_DEPTH
    max_visited: int = DEFAULT_MAX_VISITED

    def __post_init__(self):
        for name in ("max_word_length", "max_depth", "max_visited"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be positive, got {value}")


class Direction(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True)
class DerivationStep:
    a: Word
    b: Word
    xi: Substitution
    identity_index: int
    direction: Direction

    def to_dict(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "identity_index": self.identity_index,
            "direction": self.direction.value,
            "xi": [[letter_name(x), str(w)] for x, w in self.xi.images],
        }


@dataclass(frozen=True)
class Certificate:
    words: Tuple[Word, ...]
    steps: Tuple[DerivationStep, ...] = ()

    @property
    def start(self) -> Word:
        return self.words[0]

    @property
    def end(self) -> Word:
        return self.words[-1]

    def __len__(self) -> int:
        return len(self.steps)

    def to_dict(self) -> dict:
        return {
            "words": [str(w) for w in self.words],
            "steps": [s.to_dict() for s in self.steps],
        }


@dataclass(frozen=True)
class NotFound:
    """``derive`` gave up. ``complete`` means the whole length-bounded component was explored."""

    complete: bool
    visited: int
    reason: str
    length_pruned: bool = False


def require_balanced(system) -> IdentitySystem:
    if isinstance(system, IdentitySystem):
        return system
    return IdentitySystem(system)


def _raw_successors(w: Tuple[int, ...], system: IdentitySystem, max_len: Optional[int]):
    """Yield ``(new_letters, move)`` for every one-step rewrite; ``new_letters`` is None when over length.

    ``move`` is ``(start, end, bindings, identity_index, direction)``.
    """
    for idx, ident in enumerate(system.identities):
        for direction in (Direction.FORWARD, Direction.BACKWARD):
            src, dst = ident.sides(direction)
            dst_letters = dst.letters
            for start, end, bindings in iter_factor_matches(src.letters, w, allow_empty=True):
                middle = tuple(a for c in dst_letters for a in bindings[c])
                new = w[:start] + middle + w[end:]
                if max_len is not None and len(new) > max_len:
                    yield None, None
                    continue
                yield new, (start, end, bindings, idx, direction)


def _step(w: Tuple[int, ...], move) -> DerivationStep:
    start, end, bindings, idx, direction = move
    xi = Substitution(tuple((a, Word(img)) for a, img in bindings.items()), SubstitutionKind.MONOID)
    return DerivationStep(Word(w[:start]), Word(w[end:]), xi, idx, direction)


def rewrite_successors(
    w: Word, system: IdentitySystem, bounds: Optional[SearchBounds] = None
) -> List[Tuple[Word, DerivationStep]]:
    """All one-step rewrites of ``w`` within the length bound, in enumeration order."""
    system = require_balanced(system)
    max_len = bounds.max_word_length if bounds else None
    letters = as_word(w).letters
    out = []
    seen = set()
    for new, move in _raw_successors(letters, system, max_len):
        if new is None:
            continue
        item = (Word(new), _step(letters, move))
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out


def derive(
    u: Word, v: Word, system, bounds: Optional[SearchBounds] = None
) -> Union[Certificate, NotFound]:
    """Breadth-first search for a derivation of ``u = v`` from ``system``.

    Returns the shortest certificate found, or :class:`NotFound`. When
    ``NotFound.complete`` is true, every word reachable from ``u`` through
    words no longer than ``max_word_length`` was visited, so ``v`` is not
    derivable along such paths.
    """
    system = require_balanced(system)
    u, v = as_word(u), as_word(v)
    bounds = bounds or SearchBounds()
    max_len = bounds.max_word_length
    if max_len is None:
        max_len = max(len(u), len(v))
    if u == v:
        return Certificate((u,), ())
    if len(u) > max_len or len(v) > max_len:
        return NotFound(False, 0, "endpoint longer than max_word_length", True)

    target = v.letters
    parent = {u.letters: None}
    frontier = deque([(u.letters, 0)])
    truncated = None
    length_pruned = False
    while frontier and truncated != "max_visited reached":
        w, depth = frontier.popleft()
        for new, move in _raw_successors(w, system, max_len):
            if new is None:
                length_pruned = True
                continue
            if new in parent:
                continue
            if depth >= bounds.max_depth:
                truncated = "max_depth reached"
                break
            if len(parent) >= bounds.max_visited:
                truncated = "max_visited reached"
                break
            parent[new] = (w, move)
            if new == target:
                return _rebuild(parent, target)
            frontier.append((new, depth + 1))
    if truncated:
        return NotFound(False, len(parent), truncated, length_pruned)
    return NotFound(True, len(parent), "frontier exhausted", length_pruned)


def _rebuild(parent, target) -> Certificate:
    words, steps = [Word(target)], []
    w = target
    while parent[w] is not None:
        prev, move = parent[w]
        words.append(Word(prev))
        steps.append(_step(prev, move))
        w = prev
    return Certificate(tuple(reversed(words)), tuple(reversed(steps)))


def check_certificate(cert: Certificate, system) -> bool:
    """Replay every step of ``cert`` against ``system`` using substitution application only."""
    idents = system.identities if isinstance(system, IdentitySystem) else tuple(system)
    if len(cert.words) != len(cert.steps) + 1:
        return False
    for i, step in enumerate(cert.steps):
        if not 0 <= step.identity_index < len(idents):
            return False
        if step.xi.kind is not SubstitutionKind.MONOID:
            return False
        src, dst = idents[step.identity_index].sides(step.direction)
        if step.a * apply(step.xi, src) * step.b != cert.words[i]:
            return False
        if step.a * apply(step.xi, dst) * step.b != cert.words[i + 1]:
            return False
    return True


def certificate_is_balanced(cert: Certificate) -> bool:
    first = occurrence_vector(cert.words[0])
    return all(occurrence_vector(w) == first for w in cert.words)


def restriction_blocks(system, words: Sequence[Word], bounds: Optional[SearchBounds]):
    system = require_balanced(system)
    words = [as_word(w) for w in words]
    if len(set(words)) != len(words):
        raise ValueError("words must be pairwise distinct")
    if bounds is None:
        bounds = SearchBounds(
            max_word_length=max((len(w) for w in words), default=1) or 1,
            max_depth=10 * max(len(words), 1),
        )
    root = list(range(len(words)))

    def find(i: int) -> int:
        while root[i] != i:
            root[i] = root[root[i]]
            i = root[i]
        return i

    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            ri, rj = find(i), find(j)
            if ri == rj:
                continue
            if isinstance(derive(words[i], words[j], system, bounds), Certificate):
                root[max(ri, rj)] = min(ri, rj)
    blocks: Dict[int, List[Word]] = {}
    for i, w in enumerate(words):
        blocks.setdefault(find(i), []).append(w)
    return list(blocks.values())


def theory_restriction(
    system, words: Sequence[Word], bounds: Optional[SearchBounds] = None
) -> FrozenSet[FrozenSet[Word]]:
    """Pairs of ``words`` identified by ``system``, closed to an equivalence.

    Each pair is an unordered ``frozenset``; reflexive pairs appear as
    singletons. Default bounds use the longest word and depth ``10 * len(words)``.
    """
    pairs = set()
    for block in restriction_blocks(system, words, bounds):
        for i, u in enumerate(block):
            for v in block[i:]:
                pairs.add(frozenset((u, v)))
    return frozenset(pairs)
