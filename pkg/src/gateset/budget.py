"""
Per-gate precision and depth budgets for compiling a NIC circuit into a
finite gate set. The depth factor is the asymptotic model (ln 1/ε)^δ
without hidden constants; δ has no default.
"""
from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, model_validator

from src.reduction import NicInstance
from src.utils.errors import NicLabError
from src.utils.logger import NicLogger

logger = NicLogger()


class BudgetError(NicLabError):
    """Budget inputs out of range"""


class DepthBudget(BaseModel):
    model_config = ConfigDict(frozen=True)

    gate_count: int
    target_gap: float
    per_gate_epsilon: float
    sk_exponent: float
    depth_factor: float

    @model_validator(mode="after")
    def _check_budget(self) -> "DepthBudget":
        spent = self.per_gate_epsilon * self.gate_count * math.pi
        if spent > self.target_gap / 2 * (1 + 1e-12):
            raise ValueError(f"gate errors use {spent}, more than half the gap {self.target_gap}")
        return self


def depth_budget(gate_count: int, target_gap: float, sk_exponent: float) -> DepthBudget:
    """
    Split half the promise gap evenly over the gates: ε = gap/(2π·gates),
    depth factor (ln 1/ε)^δ.

    Raises:
        BudgetError: nonpositive inputs, δ < 1, or ε ≥ 1.
    """
    if gate_count < 1 or not target_gap > 0 or not sk_exponent >= 1:
        raise BudgetError(
            f"need gate_count ≥ 1, target_gap > 0, sk_exponent ≥ 1; "
            f"got {gate_count}, {target_gap}, {sk_exponent}"
        )
    epsilon = target_gap / (2 * math.pi * gate_count)
    if epsilon >= 1:
        raise BudgetError(f"per-gate epsilon {epsilon} must be below 1")
    budget = DepthBudget(
        gate_count=gate_count,
        target_gap=target_gap,
        per_gate_epsilon=epsilon,
        sk_exponent=sk_exponent,
        depth_factor=math.log(1 / epsilon) ** sk_exponent,
    )
    logger.info(action="depth_budget", response=budget.model_dump())
    return budget


def instance_budget(inst: NicInstance, sk_exponent: float) -> DepthBudget:
    """Budget for a reduced instance: every gate of its circuit, gap b_nic − a_nic"""
    return depth_budget(inst.circuit.gate_count, inst.b_nic - inst.a_nic, sk_exponent)
