"""Word anti-chains, monoid equational deduction, partition lattices, and
witnesses that the lattice of overcommutative monoid varieties satisfies no
nontrivial lattice identity."""

from .deduction import (
    Certificate,
    DerivationStep,
    Direction,
    Identity,
    IdentitySystem,
    NotFound,
    SearchBounds,
    check_certificate,
    derive,
    rewrite_successors,
    theory_restriction,
)
from .lattice_terms import (
    FiniteLattice,
    LatticeIdentity,
    check_identity,
    dual,
    evaluate,
    is_trivial,
    parse_identity,
    partition_lattice,
)
from .partitions import Partition, enumerate_partitions, ideal_split, join, leq, meet, restrict
from .variety_bridge import (
    AntichainContext,
    NotFoundUpTo,
    VarietyPresentation,
    WitnessReport,
    falsify_in_oc,
    phi,
    variety_of_partition,
    verify_antihomomorphism,
    verify_overcommutative,
    verify_surjectivity,
)
from .words import (
    Substitution,
    SubstitutionKind,
    Word,
    apply,
    check_antichain,
    check_hypothesis,
    content,
    delete,
    encounters,
    generate_an,
    is_antichain,
    is_balanced_pair,
    occ,
    parse_word,
)

__version__ = "0.1.0"

__all__ = [
    "AntichainContext",
    "Certificate",
    "DerivationStep",
    "Direction",
    "FiniteLattice",
    "Identity",
    "IdentitySystem",
    "LatticeIdentity",
    "NotFound",
    "NotFoundUpTo",
    "Partition",
    "SearchBounds",
    "Substitution",
    "SubstitutionKind",
    "VarietyPresentation",
    "WitnessReport",
    "Word",
    "apply",
    "check_antichain",
    "check_certificate",
    "check_hypothesis",
    "check_identity",
    "content",
    "delete",
    "derive",
    "dual",
    "encounters",
    "enumerate_partitions",
    "evaluate",
    "falsify_in_oc",
    "generate_an",
    "ideal_split",
    "is_antichain",
    "is_balanced_pair",
    "is_trivial",
    "join",
    "leq",
    "meet",
    "occ",
    "parse_identity",
    "parse_word",
    "partition_lattice",
    "phi",
    "restrict",
    "rewrite_successors",
    "theory_restriction",
    "variety_of_partition",
    "verify_antihomomorphism",
    "verify_overcommutative",
    "verify_surjectivity",
]
