"""
Constant c in |α(e^{iHt}e^{iKt}) − α(e^{i(H+K)t})| ≤ c·t² for
0 ⪯ H, K and H + K ⪯ π, t ∈ (0, 1).

The operator-norm bound ‖e^{iHt}e^{iKt} − e^{i(H+K)t}‖ ≤ c1·t² is turned
into the phase-range bound through the Lipschitz constant π, so c = π·c1.
"""
from __future__ import annotations

import math
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.hamiltonian import PreconditionError
from src.linalg import HermitianMatrix, expi, random_hermitian_bounded, spectral_norm
from src.utils.config import Settings, resolve
from src.utils.logger import NicLogger

logger = NicLogger()

# ½‖[A,B]‖e^{‖A‖+‖B‖} with ‖A‖, ‖B‖ ≤ π/2 and ‖[A,B]‖ ≤ 2‖A‖‖B‖
ANALYTIC_C1 = (math.pi ** 2 / 4) * math.exp(math.pi)
SAFETY_FACTOR = 2.0


class ConstantMode(str, Enum):
    ANALYTIC = "analytic"
    EMPIRICAL = "empirical"


class TrotterConstant(BaseModel):
    model_config = ConfigDict(frozen=True)

    c1: float = Field(gt=0)
    c: float = Field(gt=0)
    mode: ConstantMode = ConstantMode.ANALYTIC
    samples: int = 0

    @model_validator(mode="after")
    def _check_relation(self) -> "TrotterConstant":
        if not math.isclose(self.c, math.pi * self.c1, rel_tol=1e-12):
            raise ValueError(f"c must equal π·c1, got c={self.c}, c1={self.c1}")
        return self

    @classmethod
    def from_c1(cls, c1: float, mode: ConstantMode, samples: int = 0) -> "TrotterConstant":
        return cls(c1=c1, c=math.pi * c1, mode=mode, samples=samples)


def trotter_deviation(
    h: HermitianMatrix, k: HermitianMatrix, t: float, settings: Optional[Settings] = None
) -> float:
    """‖e^{iHt}e^{iKt} − e^{i(H+K)t}‖"""
    h, k = HermitianMatrix.of(h), HermitianMatrix.of(k)
    split = expi(h, t, settings) @ expi(k, t, settings)
    return spectral_norm(split - expi(h + k, t, settings), settings)


def trotter_constant(
    mode: ConstantMode | str = ConstantMode.ANALYTIC,
    samples: int = 200,
    seed: int = 0,
    dim: int = 4,
    settings: Optional[Settings] = None,
) -> TrotterConstant:
    """
    Analytic mode returns c1 = (π²/4)e^π. Empirical mode takes the largest
    observed ‖e^{iHt}e^{iKt} − e^{i(H+K)t}‖/t² over seeded samples with
    spectra of H and K in [0, π/2] and t ∈ [0.05, 1), times a safety factor 2.

    Raises:
        PreconditionError: empirical mode with no samples.
    """
    mode = ConstantMode(mode)
    if mode is ConstantMode.ANALYTIC:
        return TrotterConstant.from_c1(ANALYTIC_C1, mode)
    if samples < 1:
        raise PreconditionError("empirical Trotter constant needs at least one sample")

    settings = resolve(settings)
    worst = 0.0
    for index in range(samples):
        rng = np.random.default_rng([seed, index])
        h = random_hermitian_bounded(dim, 0.0, math.pi / 2, rng)
        k = random_hermitian_bounded(dim, 0.0, math.pi / 2, rng)
        t = float(rng.uniform(0.05, 1.0))
        worst = max(worst, trotter_deviation(h, k, t, settings) / t ** 2)

    logger.info(
        action="trotter_constant",
        response={"samples": samples, "seed": seed, "dim": dim, "sup_ratio": worst}
    )
    return TrotterConstant.from_c1(SAFETY_FACTOR * worst, mode, samples)
