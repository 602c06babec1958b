"""Carrier registry: build semirings from JSON-style specs."""

from __future__ import annotations

from .base import (AxiomCheck, AxiomReport, Semiring, TropicalCheck,
                   check_axioms, check_tropical, tropical_leq, tropical_min)
from .cone import PositiveCone, decompose_pure, enumeration_budget, positive_subsemiring
from .finitefield import (ExtensionField, ParitySemiring, PrimeField,
                          QuadraticExtension, finite_field, quadratic_extension)
from .lattice import BooleanSemiring, ChainLattice
from .padic import PadicQuadratic, PadicScalar, PadicScalarField
from .rational import RationalField
from .splitcomplex import SplitComplexRationals
from .tropical import INF, TropicalSemiring, ViterbiSemiring
from ..errors import SemiringSpecError

__all__ = [
    "AxiomCheck", "AxiomReport", "Semiring", "TropicalCheck",
    "check_axioms", "check_tropical", "tropical_leq", "tropical_min",
    "PositiveCone", "decompose_pure", "enumeration_budget", "positive_subsemiring",
    "ExtensionField", "ParitySemiring", "PrimeField", "QuadraticExtension",
    "finite_field", "quadratic_extension",
    "BooleanSemiring", "ChainLattice",
    "PadicQuadratic", "PadicScalar", "PadicScalarField",
    "RationalField", "SplitComplexRationals",
    "INF", "TropicalSemiring", "ViterbiSemiring",
    "construct_semiring",
]


def construct_semiring(spec) -> Semiring:
    """Build a carrier from a spec dict (or bare kind string).

    Recognized kinds: boolean, chain_lattice, parity, rational, split_complex,
    finite_field, quadratic_extension, padic, tropical_int, tropical_nat,
    tropical_rat, viterbi.
    """
    if isinstance(spec, str):
        spec = {"kind": spec}
    if not isinstance(spec, dict) or "kind" not in spec:
        raise SemiringSpecError(f"not a carrier spec: {spec!r}")
    kind = spec["kind"]
    try:
        if kind == "boolean":
            return BooleanSemiring()
        if kind == "chain_lattice":
            return ChainLattice(int(spec["size"]))
        if kind == "parity":
            return ParitySemiring()
        if kind == "rational":
            return RationalField()
        if kind == "split_complex":
            return SplitComplexRationals()
        if kind == "finite_field":
            return finite_field(int(spec["p"]), int(spec.get("n", 1)))
        if kind == "quadratic_extension":
            return quadratic_extension(int(spec["p"]), int(spec.get("n", 1)),
                                       spec.get("epsilon"))
        if kind == "padic":
            return PadicQuadratic(int(spec["p"]), int(spec["precision"]))
        if kind in ("tropical_int", "tropical_nat", "tropical_rat"):
            return TropicalSemiring(kind.split("_", 1)[1])
        if kind == "viterbi":
            return ViterbiSemiring()
    except KeyError as exc:
        raise SemiringSpecError(f"spec {spec!r} is missing field {exc}") from exc
    raise SemiringSpecError(f"unknown carrier kind {kind!r}")
