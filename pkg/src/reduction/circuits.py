"""
Layered circuits on qudit chains and their dense simulation.

Circuit file::

    {"n": 4, "d": 3,
     "layers": [[{"first_site": 0, "span": 2, "unitary": <Matrix JSON>}, ...], ...]}

Layer 0 is applied first.
"""
from __future__ import annotations

import json
from typing import Any, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.distance import DistanceReport, report
from src.linalg import ComplexMatrix, DimensionMismatchError, apply_local, dagger, is_unitary
from src.utils.config import Settings, get_settings, resolve
from src.utils.errors import InputError, NicLabError, ResourceLimitError
from src.utils.logger import NicLogger

logger = NicLogger()


class OverlapError(NicLabError):
    """Two gates of one layer act on a common site"""


class Gate(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    first_site: int = Field(ge=0)
    span: int = Field(ge=1, le=2)
    unitary: ComplexMatrix

    @field_validator("unitary")
    @classmethod
    def _check_unitary(cls, u: np.ndarray) -> np.ndarray:
        # env-only tolerance: validators have no settings argument
        tol = get_settings().gate_unitary_tol
        if not is_unitary(u, tol):
            raise ValueError(f"gate is not unitary within {tol:.1e}")
        return u

    @property
    def sites(self) -> range:
        return range(self.first_site, self.first_site + self.span)


class LayeredCircuit(BaseModel):
    """Gates grouped into layers; gates inside a layer act on disjoint sites"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(ge=1)
    d: int = Field(ge=1)
    layers: Tuple[Tuple[Gate, ...], ...] = ()

    @model_validator(mode="after")
    def _check_layers(self) -> "LayeredCircuit":
        for index, layer in enumerate(self.layers):
            used = set()
            for gate in layer:
                if gate.first_site + gate.span > self.n:
                    raise ValueError(f"gate at site {gate.first_site} runs past {self.n} sites")
                expected = self.d ** gate.span
                if gate.unitary.shape[0] != expected:
                    raise ValueError(
                        f"gate at site {gate.first_site} has dimension "
                        f"{gate.unitary.shape[0]}, expected {expected}"
                    )
                if used.intersection(gate.sites):
                    raise ValueError(f"layer {index} has overlapping gates at site {gate.first_site}")
                used.update(gate.sites)
        return self

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def gate_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def dim(self) -> int:
        return self.d ** self.n

    def gates(self):
        """(layer index, gate index, gate) in application order"""
        for i, layer in enumerate(self.layers):
            for j, gate in enumerate(layer):
                yield i, j, gate

    # ========================
    # Document codec
    # ========================
    def to_document(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2)

    @classmethod
    def from_document(cls, doc: Dict[str, Any]) -> "LayeredCircuit":
        try:
            return cls.model_validate(
                {"n": doc["n"], "d": doc["d"], "layers": doc.get("layers", [])}
            )
        except (KeyError, TypeError, ValidationError) as e:
            logger.error(action="circuit_decode", response=str(e))
            raise InputError("malformed circuit", original=e) from None

    @classmethod
    def from_json(cls, text: str) -> "LayeredCircuit":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError("circuit is not valid JSON", original=e) from None
        if not isinstance(doc, dict):
            raise InputError("circuit must be a JSON object")
        return cls.from_document(doc)


def simulate(c: LayeredCircuit, settings: Optional[Settings] = None) -> np.ndarray:
    """Product of the layer unitaries, later layers on the left"""
    settings = resolve(settings)
    if c.dim > settings.max_dim:
        logger.error(action="simulate_limit", response={"dim": c.dim, "max_dim": settings.max_dim})
        raise ResourceLimitError(f"circuit dimension {c.dim} exceeds limit {settings.max_dim}")
    dims = [c.d] * c.n
    state = np.eye(c.dim, dtype=np.complex128)
    for _, _, gate in c.gates():
        state = apply_local(gate.unitary, state, gate.first_site, gate.span, dims)
    return state


def equivalence_report(
    c1: LayeredCircuit, c2: LayeredCircuit, settings: Optional[Settings] = None
) -> DistanceReport:
    """Distance report of U₁†U₂: zero distances iff the circuits agree up to a global phase"""
    if (c1.n, c1.d) != (c2.n, c2.d):
        raise DimensionMismatchError(
            f"circuits act on different registers: {(c1.n, c1.d)} vs {(c2.n, c2.d)}"
        )
    return report(dagger(simulate(c1, settings)) @ simulate(c2, settings), settings)
