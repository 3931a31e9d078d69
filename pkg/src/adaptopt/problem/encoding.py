"""Multi-encoding genotype specifications and conformance checks.

A genotype is a plain tuple of sub-values, one per registered sub-encoding:
bit vectors and permutations are tuples of ints, real vectors tuples of
floats. Keeping genotypes as hashable tuples lets archives deduplicate them
directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from ..errors import ContractError, EncodingError


class EncodingKind(Enum):
    BINARY = "binary"
    REAL = "real"
    PERMUTATION = "permutation"


@dataclass(frozen=True)
class SubEncodingSpec:
    name: str
    kind: EncodingKind
    length: int
    bounds: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.length < 1:
            raise ContractError(f"sub-encoding '{self.name}': length must be >= 1")
        if self.kind is EncodingKind.REAL:
            if len(self.bounds) != self.length:
                raise ContractError(
                    f"sub-encoding '{self.name}': need one (low, high) pair per dimension"
                )
            for dim, (low, high) in enumerate(self.bounds):
                if not (math.isfinite(low) and math.isfinite(high) and low < high):
                    raise ContractError(
                        f"sub-encoding '{self.name}': bounds of dimension {dim} must "
                        f"satisfy low < high, got ({low}, {high})"
                    )
        elif self.bounds:
            raise ContractError(
                f"sub-encoding '{self.name}': bounds only apply to real vectors"
            )


@dataclass(frozen=True)
class MultiEncodingSpec:
    subs: tuple[SubEncodingSpec, ...]

    def __post_init__(self):
        names = [s.name for s in self.subs]
        if len(set(names)) != len(names):
            raise ContractError(f"duplicate sub-encoding names in {names}")

    def __len__(self) -> int:
        return len(self.subs)

    def __iter__(self):
        return iter(self.subs)


Genotype = tuple  # tuple of per-sub-encoding value tuples


def validate_genotype(spec: MultiEncodingSpec, genotype: Genotype) -> list[str]:
    """List every constraint the genotype violates (empty list = conforming)."""
    violations: list[str] = []
    if not isinstance(genotype, tuple) or len(genotype) != len(spec.subs):
        return [
            f"genotype must be a tuple of {len(spec.subs)} sub-values, "
            f"got {type(genotype).__name__} of length "
            f"{len(genotype) if isinstance(genotype, (tuple, list)) else 'n/a'}"
        ]
    for sub, value in zip(spec.subs, genotype):
        if not isinstance(value, tuple):
            violations.append(f"'{sub.name}': sub-value must be a tuple")
            continue
        if len(value) != sub.length:
            violations.append(
                f"'{sub.name}': expected length {sub.length}, got {len(value)}"
            )
            continue
        if sub.kind is EncodingKind.BINARY:
            for i, bit in enumerate(value):
                if bit not in (0, 1):
                    violations.append(f"'{sub.name}': gene {i} is {bit!r}, not a bit")
        elif sub.kind is EncodingKind.REAL:
            for i, (x, (low, high)) in enumerate(zip(value, sub.bounds)):
                if not isinstance(x, (int, float)) or not math.isfinite(x):
                    violations.append(f"'{sub.name}': gene {i} is {x!r}, not a finite real")
                elif not (low <= x <= high):
                    violations.append(
                        f"'{sub.name}': gene {i} value {x} outside bounds ({low}, {high})"
                    )
        else:
            if sorted(value) != list(range(sub.length)):
                violations.append(
                    f"'{sub.name}': {value!r} is not a permutation of 0..{sub.length - 1}"
                )
    return violations


def check_genotype(spec: MultiEncodingSpec, genotype: Genotype) -> None:
    """Raise :class:`EncodingError` unless the genotype conforms to the spec."""
    violations = validate_genotype(spec, genotype)
    if violations:
        raise EncodingError("; ".join(violations))


def genotype_to_jsonable(spec: MultiEncodingSpec, genotype: Sequence) -> dict:
    """Map sub-encoding names to plain lists for JSON artifacts."""
    return {sub.name: list(value) for sub, value in zip(spec.subs, genotype)}


def genotype_from_jsonable(spec: MultiEncodingSpec, data: dict) -> Genotype:
    """Rebuild a genotype tuple from its JSON artifact form."""
    try:
        genotype = tuple(tuple(data[sub.name]) for sub in spec.subs)
    except KeyError as exc:
        raise EncodingError(f"missing sub-encoding value {exc}") from None
    check_genotype(spec, genotype)
    return genotype
