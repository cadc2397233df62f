"""Finite partition lattices.

A :class:`Partition` is stored as a restricted growth string aligned with an
ordered universe of hashable labels, so equality and hashing are structural.
Text form: blocks joined by ``|``, elements comma-separated, e.g. ``a,b|c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

DEFAULT_ENUMERATION_CAP = 8


class UniverseMismatch(ValueError):
    pass


def _canonical(codes: Sequence[int]) -> Tuple[int, ...]:
    relabel: Dict[int, int] = {}
    out = []
    for c in codes:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    universe: Tuple[Hashable, ...]
    codes: Tuple[int, ...]

    def __post_init__(self):
        universe = tuple(self.universe)
        if len(set(universe)) != len(universe):
            raise ValueError("universe labels must be distinct")
        codes = tuple(self.codes)
        if len(codes) != len(universe):
            raise ValueError("one block code per universe element is required")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "codes", _canonical(codes))

    @classmethod
    def from_blocks(cls, universe: Sequence[Hashable], blocks: Iterable[Iterable[Hashable]]) -> "Partition":
        universe = tuple(universe)
        index = {x: i for i, x in enumerate(universe)}
        codes: List[Optional[int]] = [None] * len(universe)
        for b, block in enumerate(blocks):
            members = list(block)
            if not members:
                raise ValueError("blocks must be nonempty")
            for x in members:
                if x not in index:
                    raise ValueError(f"{x!r} is not in the universe")
                if codes[index[x]] is not None:
                    raise ValueError(f"{x!r} appears in two blocks")
                codes[index[x]] = b
        if any(c is None for c in codes):
            raise ValueError("blocks do not cover the universe")
        return cls(universe, tuple(codes))

    @classmethod
    def bottom(cls, universe: Sequence[Hashable]) -> "Partition":
        return cls(tuple(universe), tuple(range(len(universe))))

    @classmethod
    def top(cls, universe: Sequence[Hashable]) -> "Partition":
        return cls(tuple(universe), (0,) * len(universe))

    @property
    def blocks(self) -> Tuple[Tuple[Hashable, ...], ...]:
        out: List[List[Hashable]] = []
        for x, c in zip(self.universe, self.codes):
            if c == len(out):
                out.append([])
            out[c].append(x)
        return tuple(tuple(b) for b in out)

    def same_block(self, x: Hashable, y: Hashable) -> bool:
        index = {z: i for i, z in enumerate(self.universe)}
        return self.codes[index[x]] == self.codes[index[y]]

    def pairs(self) -> Iterator[Tuple[Hashable, Hashable]]:
        """Unordered non-reflexive pairs lying in a common block, in universe order."""
        for block in self.blocks:
            for i, u in enumerate(block):
                for v in block[i + 1:]:
                    yield u, v

    def __len__(self) -> int:
        return max(self.codes, default=-1) + 1

    def __or__(self, other: "Partition") -> "Partition":
        return join(self, other)

    def __and__(self, other: "Partition") -> "Partition":
        return meet(self, other)

    def __le__(self, other: "Partition") -> bool:
        return leq(self, other)

    def __str__(self) -> str:
        return format_partition(self)


def _same_universe(p: Partition, q: Partition) -> None:
    if p.universe != q.universe:
        raise UniverseMismatch("partitions live on different universes")


def meet(p: Partition, q: Partition) -> Partition:
    _same_universe(p, q)
    return Partition(p.universe, tuple(zip(p.codes, q.codes)))


def join(p: Partition, q: Partition) -> Partition:
    _same_universe(p, q)
    n = len(p.universe)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for codes in (p.codes, q.codes):
        first: Dict[int, int] = {}
        for i, c in enumerate(codes):
            if c in first:
                a, b = find(first[c]), find(i)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                first[c] = i
    return Partition(p.universe, tuple(find(i) for i in range(n)))


def leq(p: Partition, q: Partition) -> bool:
    _same_universe(p, q)
    seen: Dict[int, int] = {}
    for cp, cq in zip(p.codes, q.codes):
        if seen.setdefault(cp, cq) != cq:
            return False
    return True


def bell_number_guard(n: int, cap: int) -> None:
    if n > cap:
        raise ValueError(f"universe of size {n} exceeds the enumeration cap {cap}")


def enumerate_partitions(universe: Sequence[Hashable], cap: int = DEFAULT_ENUMERATION_CAP) -> List[Partition]:
    """All partitions of ``universe`` in lexicographic restricted-growth order."""
    universe = tuple(universe)
    n = len(universe)
    bell_number_guard(n, cap)
    if n == 0:
        return [Partition((), ())]
    out: List[Partition] = []
    codes = [0] * n

    def extend(i: int, top: int) -> None:
        if i == n:
            out.append(Partition(universe, tuple(codes)))
            return
        for c in range(top + 2):
            codes[i] = c
            extend(i + 1, max(top, c))

    extend(1, 0)
    return out


def restrict(p: Partition, subset: Iterable[Hashable]) -> Partition:
    """Trace of ``p`` on ``subset``; the result keeps ``p``'s universe order."""
    wanted = set(subset)
    if not wanted:
        raise ValueError("restriction needs a nonempty subset")
    missing = wanted.difference(p.universe)
    if missing:
        raise ValueError(f"not in the universe: {sorted(map(str, missing))}")
    kept = [(x, c) for x, c in zip(p.universe, p.codes) if x in wanted]
    return Partition(tuple(x for x, _ in kept), tuple(c for _, c in kept))


@dataclass(frozen=True)
class IdealSplit:
    """The principal ideal below a two-block partition ``alpha = A | B``.

    ``forward`` sends ``beta <= alpha`` to its traces on ``A`` and ``B``;
    ``inverse`` glues a pair of partitions back together.
    """

    alpha: Partition

    def __post_init__(self):
        if len(self.alpha) != 2:
            raise ValueError("ideal_split needs a partition with exactly two blocks")

    @property
    def parts(self) -> Tuple[Tuple[Hashable, ...], Tuple[Hashable, ...]]:
        a, b = self.alpha.blocks
        return a, b

    def forward(self, beta: Partition) -> Tuple[Partition, Partition]:
        if not leq(beta, self.alpha):
            raise ValueError("partition is not below alpha")
        a, b = self.parts
        return restrict(beta, a), restrict(beta, b)

    def inverse(self, pair: Tuple[Partition, Partition]) -> Partition:
        left, right = pair
        a, b = self.parts
        if set(left.universe) != set(a) or set(right.universe) != set(b):
            raise UniverseMismatch("pair does not live on the two blocks of alpha")
        return Partition.from_blocks(self.alpha.universe, left.blocks + right.blocks)

    def ideal(self, cap: int = DEFAULT_ENUMERATION_CAP) -> List[Partition]:
        return [p for p in enumerate_partitions(self.alpha.universe, cap) if leq(p, self.alpha)]


def ideal_split(alpha: Partition) -> IdealSplit:
    return IdealSplit(alpha)


def format_partition(p: Partition, render: Callable[[Hashable], str] = str) -> str:
    return "|".join(",".join(render(x) for x in block) for block in p.blocks)


def parse_partition(
    text: str,
    universe: Optional[Sequence[Hashable]] = None,
    parse_label: Callable[[str], Hashable] = str,
) -> Partition:
    """Parse ``a,b|c``. Without ``universe``, the labels in text order form it."""
    blocks = []
    for chunk in text.split("|"):
        items = [s.strip() for s in chunk.split(",")]
        if any(not s for s in items):
            raise ValueError(f"empty element in partition text {text!r}")
        blocks.append([parse_label(s) for s in items])
    if universe is None:
        universe = [x for block in blocks for x in block]
    return Partition.from_blocks(universe, blocks)


def verify_ideal_isomorphism(alpha: Partition, cap: int = DEFAULT_ENUMERATION_CAP) -> List[str]:
    """Exhaustively check that ``beta -> (beta|A, beta|B)`` is a lattice isomorphism on ``(alpha]``.

    Returns failure descriptions; an empty list certifies the instance.
    """
    split = ideal_split(alpha)
    a, b = split.parts
    ideal = split.ideal(cap)
    failures: List[str] = []
    targets = [(p, q) for p in enumerate_partitions(a, cap) for q in enumerate_partitions(b, cap)]
    images = {beta: split.forward(beta) for beta in ideal}
    if len(set(images.values())) != len(ideal):
        failures.append("forward map is not injective")
    if set(images.values()) != set(targets):
        failures.append(f"forward image has {len(set(images.values()))} of {len(targets)} pairs")
    for pair in targets:
        if split.forward(split.inverse(pair)) != pair:
            failures.append(f"forward(inverse({pair[0]} ; {pair[1]})) differs")
    for beta in ideal:
        if split.inverse(images[beta]) != beta:
            failures.append(f"inverse(forward({beta})) differs")
        for gamma in ideal:
            (b1, b2), (g1, g2) = images[beta], images[gamma]
            if split.forward(join(beta, gamma)) != (join(b1, g1), join(b2, g2)):
                failures.append(f"join not preserved at {beta} , {gamma}")
            if split.forward(meet(beta, gamma)) != (meet(b1, g1), meet(b2, g2)):
                failures.append(f"meet not preserved at {beta} , {gamma}")
    return failures
