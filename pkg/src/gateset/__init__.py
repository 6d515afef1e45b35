"""
Gate imperfections and compilation budgets

Exports:
- perturb_circuit / alpha_stability_check / PerturbationReport: error propagation
- depth_budget / instance_budget / DepthBudget: precision and depth arithmetic
"""

from .perturbation import (
    PerturbationReport,
    ShapeMismatchError,
    StabilityViolation,
    alpha_stability_check,
    perturb_circuit,
)
from .budget import BudgetError, DepthBudget, depth_budget, instance_budget

__all__ = [
    'PerturbationReport',
    'perturb_circuit',
    'alpha_stability_check',
    'DepthBudget',
    'depth_budget',
    'instance_budget',
    'ShapeMismatchError',
    'StabilityViolation',
    'BudgetError',
]
