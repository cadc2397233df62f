"""From partitions of a word anti-chain to overcommutative monoid varieties.

For a certified anti-chain ``A`` (pairwise incomparable words sharing content
and agreeing after any nonempty letter deletion), every partition ``beta`` of
``A`` is presented by the identities ``u = v`` for ``u, v`` in a common block.
``phi`` maps a presentation back to the partition its equational theory
induces on ``A``; on these presentations it inverts ``variety_of_partition``
and turns unions of systems into joins of partitions. Lattice identities are
falsified by searching ``Part(A_n)`` for a counterexample to the dual identity
and lifting the assignment to varieties.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .deduction import (
    Certificate,
    Identity,
    IdentitySystem,
    SearchBounds,
    restriction_blocks,
    check_certificate,
    derive,
)
from .lattice_terms import (
    DEFAULT_BUDGET,
    LatticeIdentity,
    check_identity,
    dual,
    evaluate,
    is_trivial,
    partition_lattice,
)
from .partitions import Partition, enumerate_partitions, join, meet
from .words import Word, as_word, check_antichain, check_hypothesis, generate_an, is_balanced_pair


class NotAnAntichainContext(ValueError):
    pass


class TrivialIdentityError(ValueError):
    pass


@dataclass(frozen=True)
class AntichainContext:
    """A word list certified as an anti-chain satisfying the deletion hypothesis."""

    words: Tuple[Word, ...]

    def __post_init__(self):
        words = tuple(as_word(w) for w in self.words)
        object.__setattr__(self, "words", words)
        violation = check_antichain(words)
        if violation is not None:
            raise NotAnAntichainContext(
                f"{violation.u} <= {violation.v} ({violation.witness})"
            )
        bad = check_hypothesis(words)
        if bad is not None:
            raise NotAnAntichainContext(f"deletion hypothesis fails for {bad.u}, {bad.v}")

    @classmethod
    def standard(cls, n: int) -> "AntichainContext":
        return cls(tuple(generate_an(n)))

    def default_bounds(self) -> SearchBounds:
        return SearchBounds(
            max_word_length=max(len(w) for w in self.words),
            max_depth=10 * len(self.words),
        )

    def partitions(self) -> List[Partition]:
        return enumerate_partitions(self.words)

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class VarietyPresentation:
    system: IdentitySystem
    origin: Optional[Tuple[AntichainContext, Partition]] = None


def variety_of_partition(
    beta: Partition, context: AntichainContext, spanning_tree: bool = False
) -> VarietyPresentation:
    """All intra-block pairs as identities (or a path through each block when ``spanning_tree``)."""
    if beta.universe != context.words:
        raise ValueError("partition universe differs from the context's words")
    if spanning_tree:
        pairs = [(b[i], b[i + 1]) for b in beta.blocks for i in range(len(b) - 1)]
    else:
        pairs = list(beta.pairs())
    return VarietyPresentation(IdentitySystem(Identity(u, v) for u, v in pairs), (context, beta))


def phi(
    presentation: Union[VarietyPresentation, IdentitySystem],
    context: AntichainContext,
    bounds: Optional[SearchBounds] = None,
) -> Partition:
    """The partition of the context's words induced by the presented equational theory."""
    system = presentation.system if isinstance(presentation, VarietyPresentation) else presentation
    blocks = restriction_blocks(system, context.words, bounds or context.default_bounds())
    return Partition.from_blocks(context.words, blocks)


def verify_overcommutative(presentation) -> bool:
    """Every identity balanced, hence every consequence balanced and all commutative monoids satisfy it."""
    if isinstance(presentation, VarietyPresentation):
        identities = presentation.system.identities
    elif isinstance(presentation, IdentitySystem):
        identities = presentation.identities
    else:
        identities = [i if isinstance(i, Identity) else Identity(*i) for i in presentation]
    return all(is_balanced_pair(i.lhs, i.rhs) for i in identities)


@dataclass
class CaseFailure:
    label: str
    expected: str
    got: str


@dataclass
class VerificationReport:
    name: str
    n_cases: int = 0
    failures: List[CaseFailure] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def n_passed(self) -> int:
        return self.n_cases - len(self.failures)

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "cases": self.n_cases,
            "passed": self.n_passed,
            "failures": [vars(f) for f in self.failures],
        }


def verify_surjectivity(
    context: AntichainContext, bounds: Optional[SearchBounds] = None
) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport("surjectivity")
    for beta in context.partitions():
        report.n_cases += 1
        got = phi(variety_of_partition(beta, context), context, bounds)
        if got != beta:
            report.failures.append(CaseFailure(str(beta), str(beta), str(got)))
    report.seconds = time.perf_counter() - start
    return report


def _relation(p: Partition) -> frozenset:
    return frozenset(frozenset(pair) for pair in p.pairs())


def verify_antihomomorphism(
    context: AntichainContext, bounds: Optional[SearchBounds] = None
) -> VerificationReport:
    """For all partition pairs: union of systems maps to the join, common theory to the meet."""
    start = time.perf_counter()
    report = VerificationReport("antihom")
    parts = context.partitions()
    systems = {beta: variety_of_partition(beta, context).system for beta in parts}
    theories = {beta: phi(systems[beta], context, bounds) for beta in parts}
    for b1 in parts:
        for b2 in parts:
            report.n_cases += 1
            label = f"({b1}) , ({b2})"
            union = phi(systems[b1].union(systems[b2]), context, bounds)
            if union != join(b1, b2):
                report.failures.append(
                    CaseFailure(f"union {label}", str(join(b1, b2)), str(union)))
            common = _relation(theories[b1]) & _relation(theories[b2])
            expected = meet(b1, b2)
            if common != _relation(expected):
                got = "; ".join(f"{u}={v}" for u, v in sorted(map(sorted, common)))
                report.failures.append(
                    CaseFailure(f"intersection {label}", str(expected), got or "(none)"))
    report.seconds = time.perf_counter() - start
    return report


FIRST_CERTIFIED_N = 2


class VerificationLevel(enum.Enum):
    GENERATOR_LEVEL = "GeneratorLevel"
    DEPTH1_ANTIHOM = "Depth1AntiHom"


INTERPRETATION = (
    "phi_A maps the sublattice L_A of overcommutative monoid varieties onto Part(A_n) "
    "as a surjective anti-homomorphism; a failure of the dual identity in Part(A_n) "
    "under this assignment therefore pulls back to a failure of the identity among "
    "the listed varieties. Nested variety joins are not recomputed."
)


@dataclass
class WitnessReport:
    identity: LatticeIdentity
    n: int
    context: AntichainContext
    assignment: Dict[str, Partition]
    presentations: Dict[str, VarietyPresentation]
    lhs_value: Partition
    rhs_value: Partition
    generator_certificates: Dict[str, List[Certificate]]
    round_trips: Dict[str, bool]
    verification_level: VerificationLevel
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def dual_identity(self) -> LatticeIdentity:
        return dual(self.identity)

    def certificates_replay(self) -> bool:
        return all(
            check_certificate(cert, self.presentations[name].system)
            for name, certs in self.generator_certificates.items()
            for cert in certs
        )

    def to_dict(self, include_timings: bool = False) -> dict:
        doc = {
            "identity": str(self.identity),
            "dual": str(self.dual_identity),
            "n": self.n,
            "antichain": [str(w) for w in self.context.words],
            "assignment": {k: str(v) for k, v in self.assignment.items()},
            "presentations": {
                k: self.presentations[k].system.dumps().splitlines() for k in self.assignment
            },
            "lhs_value": str(self.lhs_value),
            "rhs_value": str(self.rhs_value),
            "round_trips": dict(self.round_trips),
            "generator_certificates": {
                k: [c.to_dict() for c in certs] for k, certs in self.generator_certificates.items()
            },
            "verification_level": self.verification_level.value,
            "interpretation": INTERPRETATION,
        }
        if include_timings:
            doc["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return doc


@dataclass(frozen=True)
class NotFoundUpTo:
    max_n: int


def falsify_in_oc(
    identity: LatticeIdentity,
    max_n: int,
    bounds: Optional[SearchBounds] = None,
    budget: int = DEFAULT_BUDGET,
    verify_antihom: bool = False,
) -> Union[WitnessReport, NotFoundUpTo]:
    """Find the least ``2 <= n <= max_n`` whose ``Part(A_n)`` refutes the dual identity.

    The counterexample assignment is lifted to presentations of overcommutative
    varieties; every generator identity gets a replayed certificate and each
    presentation is round-tripped through ``phi``.
    """
    if is_trivial(identity):
        raise TrivialIdentityError(f"{identity} holds in every lattice")
    dual_id = dual(identity)
    t0 = time.perf_counter()
    # A_1 = {xy, yx} is not an anti-chain (swap x, y); Part(A_1) is a 2-chain,
    # a sublattice of Part(A_2), so starting at n = 2 loses no witness.
    for n in range(FIRST_CERTIFIED_N, max_n + 1):
        context = AntichainContext.standard(n)
        lattice = partition_lattice(context.words)
        cx = check_identity(dual_id, lattice, budget)
        if cx is None:
            continue
        t_search = time.perf_counter() - t0
        presentations, certs, round_trips = {}, {}, {}
        for name, beta in cx.assignment.items():
            pres = variety_of_partition(beta, context)
            presentations[name] = pres
            certs[name] = []
            for ident in pres.system:
                cert = derive(ident.lhs, ident.rhs, pres.system, bounds or context.default_bounds())
                if not isinstance(cert, Certificate) or not check_certificate(cert, pres.system):
                    raise RuntimeError(f"generator {ident} failed to certify")
                certs[name].append(cert)
            round_trips[name] = phi(pres, context, bounds) == beta
        level = VerificationLevel.GENERATOR_LEVEL
        if verify_antihom and verify_antihomomorphism(context, bounds).passed:
            level = VerificationLevel.DEPTH1_ANTIHOM
        return WitnessReport(
            identity=identity,
            n=n,
            context=context,
            assignment=dict(cx.assignment),
            presentations=presentations,
            lhs_value=evaluate(dual_id.lhs, cx.assignment, lattice),
            rhs_value=evaluate(dual_id.rhs, cx.assignment, lattice),
            generator_certificates=certs,
            round_trips=round_trips,
            verification_level=level,
            timings={"search": t_search, "total": time.perf_counter() - t0},
        )
    return NotFoundUpTo(max_n)
