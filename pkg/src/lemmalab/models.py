from __future__ import annotations

from enum import Enum
from typing import Any, Dict, List, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field

from src.linalg import matrix_from_json, matrix_to_json
from src.utils.errors import NicLabError

TrialInputs = Dict[str, Union[np.ndarray, float]]


class SuiteConfigError(NicLabError):
    """Unknown lemma id or unusable suite configuration"""


class LemmaId(str, Enum):
    LEMMA1 = "lemma1"
    LEMMA2 = "lemma2"
    LEMMA3 = "lemma3"
    LEMMA4 = "lemma4"
    LEMMA5 = "lemma5"
    EQ5 = "eq5"
    REPORT = "report"
    GATE_ERRORS = "gate_errors"


class TrialConfig(BaseModel):
    """tolerance may be negative to demand a strict margin"""
    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=2, le=8)
    trials: int = Field(ge=1)
    seed: int = 0
    tolerance: float = 1e-9


class FailureRecord(BaseModel):
    """One violated relation lhs ≤ rhs + tolerance; trial −1 marks a suite-level statistic"""
    model_config = ConfigDict(frozen=True)

    trial: int
    seed: List[int]
    relation: str
    lhs: float
    rhs: float
    inputs: Dict[str, Any] = Field(default_factory=dict)


class SuiteReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    lemma: LemmaId
    config: TrialConfig
    trials: int
    rejected: int = 0
    failures: List[FailureRecord] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.failures


def encode_inputs(inputs: TrialInputs) -> Dict[str, Any]:
    """Matrices as Matrix JSON, scalars as floats"""
    return {
        name: matrix_to_json(value) if isinstance(value, np.ndarray) else float(value)
        for name, value in inputs.items()
    }


def decode_inputs(doc: Dict[str, Any]) -> TrialInputs:
    return {
        name: matrix_from_json(value) if isinstance(value, dict) else float(value)
        for name, value in doc.items()
    }
