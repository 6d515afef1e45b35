"""
Nearest-neighbour chain Hamiltonians and Local Hamiltonian instances.

Sites are 0-based: a term at site ``i`` acts on particles ``i`` and ``i+1``.
The instance file is a flat JSON object::

    {"n": 3, "d": 2, "a": 0.1, "b": 0.5,
     "terms": [{"site": 0, "matrix": <Matrix JSON>}, ...],
     "metadata": {...}}
"""
from __future__ import annotations

import json
from typing import Any, Dict, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.linalg import HermitianMatrix
from src.utils.errors import InputError, NicLabError, PreconditionError
from src.utils.logger import NicLogger

logger = NicLogger()


class ThresholdError(NicLabError):
    """Promise thresholds are out of order or out of range"""


class LocalTerm(BaseModel):
    """Two-site term H_i on particles (site, site+1)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    site: int = Field(ge=0)
    matrix: HermitianMatrix


class ChainHamiltonian(BaseModel):
    """H = Σ_i H_i on n qudits of dimension d; r = len(terms) may be 0"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(ge=2)
    d: int = Field(ge=1)
    terms: Tuple[LocalTerm, ...] = ()

    @model_validator(mode="after")
    def _check_terms(self) -> "ChainHamiltonian":
        seen = set()
        for term in self.terms:
            if term.matrix.dim != self.d ** 2:
                raise ValueError(
                    f"term at site {term.site} has dimension {term.matrix.dim}, expected {self.d ** 2}"
                )
            if term.site > self.n - 2:
                raise ValueError(f"term site {term.site} outside chain of {self.n}")
            if term.site in seen:
                raise ValueError(f"duplicate term at site {term.site}")
            seen.add(term.site)
        return self

    @property
    def r(self) -> int:
        return len(self.terms)

    @property
    def dim(self) -> int:
        return self.d ** self.n

    def with_terms(self, terms, d: int | None = None) -> "ChainHamiltonian":
        return ChainHamiltonian(n=self.n, d=self.d if d is None else d, terms=tuple(terms))


class HamiltonianInstance(BaseModel):
    """Local Hamiltonian question: is λ_min(H) ≤ a, or ≥ b?"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    hamiltonian: ChainHamiltonian
    a: float
    b: float
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_promise(self) -> "HamiltonianInstance":
        if not self.b - self.a > 0:
            raise ValueError(f"thresholds need b > a, got a={self.a}, b={self.b}")
        if self.hamiltonian.r < 1:
            raise ValueError("instance needs at least one term")
        return self

    # ========================
    # Document codec
    # ========================
    def to_document(self) -> Dict[str, Any]:
        h = self.hamiltonian.model_dump(mode="json")
        return {
            "n": h["n"],
            "d": h["d"],
            "a": self.a,
            "b": self.b,
            "terms": h["terms"],
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2)

    @classmethod
    def from_document(cls, doc: Dict[str, Any]) -> "HamiltonianInstance":
        try:
            return cls(
                hamiltonian=ChainHamiltonian(n=doc["n"], d=doc["d"], terms=doc.get("terms", [])),
                a=doc["a"],
                b=doc["b"],
                metadata=doc.get("metadata", {}),
            )
        except (KeyError, TypeError, ValidationError) as e:
            logger.error(action="instance_decode", response=str(e))
            raise InputError("malformed Hamiltonian instance", original=e) from None

    @classmethod
    def from_json(cls, text: str) -> "HamiltonianInstance":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError("Hamiltonian instance is not valid JSON", original=e) from None
        if not isinstance(doc, dict):
            raise InputError("Hamiltonian instance must be a JSON object")
        return cls.from_document(doc)
