"""Lattice terms and identities.

Grammar (whitespace insignificant, ``/\\`` binds tighter than ``\\/``)::

    identity ::= term "=" term
    term     ::= factor ( "\\/" factor )*
    factor   ::= atom ( "/\\" atom )*
    atom     ::= variable | "(" term ")"
    variable ::= [a-z][a-z0-9]*
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple, Union

from .partitions import enumerate_partitions, join as part_join, meet as part_meet

DEFAULT_BUDGET = 10**6


class LatticeSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"{_wrap(self.left, Join)} /\\ {_wrap(self.right, (Join, Meet))}"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"{self.left} \\/ {_wrap(self.right, Join)}"


Term = Union[Var, Meet, Join]


def _wrap(t: Term, kinds) -> str:
    return f"({t})" if isinstance(t, kinds) else str(t)


@dataclass(frozen=True)
class LatticeIdentity:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"

    def variables(self) -> List[str]:
        return sorted(set(variables(self.lhs)) | set(variables(self.rhs)))


_TOKENS = re.compile(r"\s*(?:(?P<var>[a-z][a-z0-9]*)|(?P<op>/\\|\\/|[()=]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKENS.match(text, pos)
        if m is None:
            raise LatticeSyntaxError("unexpected character", text, pos)
        kind = "var" if m.group("var") else m.group("op")
        start = m.start("var") if m.group("var") else m.start("op")
        tokens.append((kind, m.group(0).strip(), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def expect(self, kind: str) -> str:
        tk, value, pos = self.tokens[self.i]
        if tk != kind:
            want = "a variable" if kind == "var" else repr(kind) if kind != "end" else "end of input"
            got = "end of input" if tk == "end" else repr(value)
            raise LatticeSyntaxError(f"expected {want}, got {got}", self.text, pos)
        self.i += 1
        return value

    def term(self) -> Term:
        t = self.factor()
        while self.peek() == "\\/":
            self.i += 1
            t = Join(t, self.factor())
        return t

    def factor(self) -> Term:
        t = self.atom()
        while self.peek() == "/\\":
            self.i += 1
            t = Meet(t, self.atom())
        return t

    def atom(self) -> Term:
        if self.peek() == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        return Var(self.expect("var"))


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.expect("end")
    return t


def parse_identity(text: str) -> LatticeIdentity:
    p = _Parser(text)
    lhs = p.term()
    p.expect("=")
    rhs = p.term()
    p.expect("end")
    return LatticeIdentity(lhs, rhs)


def variables(t: Term) -> List[str]:
    if isinstance(t, Var):
        return [t.name]
    seen = variables(t.left)
    return seen + [v for v in variables(t.right) if v not in seen]


def dual(t):
    """Swap meet and join throughout a term or identity."""
    if isinstance(t, LatticeIdentity):
        return LatticeIdentity(dual(t.lhs), dual(t.rhs))
    if isinstance(t, Var):
        return t
    if isinstance(t, Meet):
        return Join(dual(t.left), dual(t.right))
    return Meet(dual(t.left), dual(t.right))


class FiniteLattice:
    """A finite lattice given by its element list and join/meet operations."""

    def __init__(self, elements: Sequence, join: Callable, meet: Callable, name: str = ""):
        self.elements = list(elements)
        self.join = join
        self.meet = meet
        self.name = name

    @classmethod
    def from_tables(cls, elements: Sequence, join_table, meet_table, name: str = "", validate: bool = True):
        """Build from index tables ``join_table[i][j]``; the lattice axioms are checked."""
        elements = list(elements)
        index = {e: i for i, e in enumerate(elements)}
        lat = cls(
            elements,
            lambda a, b: elements[join_table[index[a]][index[b]]],
            lambda a, b: elements[meet_table[index[a]][index[b]]],
            name,
        )
        if validate:
            problem = lat.axiom_violation()
            if problem:
                raise ValueError(f"not a lattice: {problem}")
        return lat

    def axiom_violation(self) -> Optional[str]:
        E, j, m = self.elements, self.join, self.meet
        for a in E:
            if j(a, a) != a or m(a, a) != a:
                return f"idempotence fails at {a!r}"
            for b in E:
                if j(a, b) != j(b, a) or m(a, b) != m(b, a):
                    return f"commutativity fails at {a!r}, {b!r}"
                if j(a, m(a, b)) != a or m(a, j(a, b)) != a:
                    return f"absorption fails at {a!r}, {b!r}"
                for c in E:
                    if j(j(a, b), c) != j(a, j(b, c)) or m(m(a, b), c) != m(a, m(b, c)):
                        return f"associativity fails at {a!r}, {b!r}, {c!r}"
        return None

    def dual(self) -> "FiniteLattice":
        return FiniteLattice(self.elements, self.meet, self.join, f"dual({self.name})")

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteLattice({self.name or len(self.elements)})"


def partition_lattice(universe: Sequence[Hashable], cap: Optional[int] = None) -> FiniteLattice:
    kwargs = {} if cap is None else {"cap": cap}
    elements = enumerate_partitions(universe, **kwargs)
    return FiniteLattice(elements, part_join, part_meet, f"Part({len(universe)})")


def chain(n: int) -> FiniteLattice:
    return FiniteLattice(list(range(n)), max, min, f"chain({n})")


def evaluate(t: Term, assignment: Dict[str, object], lattice: FiniteLattice):
    if isinstance(t, Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise KeyError(f"unbound variable {t.name!r}") from None
    left = evaluate(t.left, assignment, lattice)
    right = evaluate(t.right, assignment, lattice)
    if isinstance(t, Meet):
        return lattice.meet(left, right)
    return lattice.join(left, right)


@dataclass(frozen=True)
class Counterexample:
    assignment: Dict[str, object]
    lhs_value: object
    rhs_value: object


def check_identity(
    identity: LatticeIdentity, lattice: FiniteLattice, budget: int = DEFAULT_BUDGET
) -> Optional[Counterexample]:
    """None if ``identity`` holds in ``lattice``, else the first failing assignment.

    Assignments run in mixed-radix lexicographic order: variables sorted by
    name, values in the lattice's element order.
    """
    names = identity.variables()
    total = len(lattice.elements) ** len(names)
    if total > budget:
        raise BudgetExceeded(
            f"{len(lattice.elements)}^{len(names)} = {total} assignments exceed the budget {budget}"
        )
    for values in itertools.product(lattice.elements, repeat=len(names)):
        sigma = dict(zip(names, values))
        lhs = evaluate(identity.lhs, sigma, lattice)
        rhs = evaluate(identity.rhs, sigma, lattice)
        if lhs != rhs:
            return Counterexample(sigma, lhs, rhs)
    return None


@lru_cache(maxsize=None)
def free_leq(s: Term, t: Term) -> bool:
    """Decide ``s <= t`` in the free lattice by Whitman's recursion."""
    if isinstance(s, Join):
        return free_leq(s.left, t) and free_leq(s.right, t)
    if isinstance(t, Meet):
        return free_leq(s, t.left) and free_leq(s, t.right)
    if isinstance(s, Var) and isinstance(t, Var):
        return s == t
    if isinstance(s, Meet) and (free_leq(s.left, t) or free_leq(s.right, t)):
        return True
    if isinstance(t, Join) and (free_leq(s, t.left) or free_leq(s, t.right)):
        return True
    return False


def is_trivial(identity: LatticeIdentity) -> bool:
    """True iff the identity holds in every lattice."""
    return free_leq(identity.lhs, identity.rhs) and free_leq(identity.rhs, identity.lhs)
