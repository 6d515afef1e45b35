from typing import Optional, Sequence, Union

import numpy as np

from .matrices import DimensionMismatchError, as_matrix

Dims = Union[int, Sequence[int]]


def site_dims(n: int, dims: Dims) -> list:
    """Per-site dimensions for an n-site chain from a scalar or a sequence"""
    if isinstance(dims, (int, np.integer)):
        return [int(dims)] * n
    dims = [int(d) for d in dims]
    if len(dims) != n:
        raise DimensionMismatchError(f"expected {n} site dimensions, got {len(dims)}")
    return dims


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def infer_span(op_dim: int, first_site: int, dims: Sequence[int]) -> int:
    """Smallest number of contiguous sites from ``first_site`` whose dimension product is ``op_dim``"""
    product = 1
    for span, d in enumerate(dims[first_site:], start=1):
        product *= d
        if product == op_dim:
            return span
        if product > op_dim:
            break
    raise DimensionMismatchError(
        f"operator of dimension {op_dim} does not cover whole sites from site {first_site}"
    )


def embed_local(
    op: np.ndarray,
    first_site: int,
    n: int,
    dims: Dims,
    span: Optional[int] = None,
) -> np.ndarray:
    """
    Place ``op`` on sites ``first_site .. first_site+span-1`` of an n-site
    chain, identity elsewhere.

    Raises:
        DimensionMismatchError: ``op`` does not match the covered sites or
            the span runs past the end of the chain.
    """
    op = as_matrix(op)
    dims = site_dims(n, dims)
    if not 0 <= first_site < n:
        raise DimensionMismatchError(f"site {first_site} outside chain of {n}")
    if span is None:
        span = infer_span(op.shape[0], first_site, dims)
    if first_site + span > n:
        raise DimensionMismatchError(f"span {span} from site {first_site} exceeds {n} sites")
    covered = int(np.prod(dims[first_site:first_site + span]))
    if covered != op.shape[0]:
        raise DimensionMismatchError(
            f"operator dimension {op.shape[0]} != covered dimension {covered}"
        )
    left = int(np.prod(dims[:first_site]))
    right = int(np.prod(dims[first_site + span:]))
    return np.kron(np.kron(np.eye(left), op), np.eye(right))


def apply_local(
    op: np.ndarray,
    target: np.ndarray,
    first_site: int,
    span: int,
    dims: Sequence[int],
) -> np.ndarray:
    """
    ``embed_local(op) @ target`` without forming the embedded operator:
    reshape the row index into (left, op, right) and contract.
    """
    left = int(np.prod(dims[:first_site]))
    right = int(np.prod(dims[first_site + span:]))
    local = op.shape[0]
    cols = target.shape[1]
    blocks = target.reshape(left, local, right * cols)
    out = np.einsum("ab,lbr->lar", op, blocks, optimize=True)
    return out.reshape(left * local * right, cols)
