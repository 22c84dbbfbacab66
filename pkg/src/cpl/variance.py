"""Four-valued variance algebra.

A functor slot is free (ignores its argument), covariant, contravariant or
fixed (acts on objects only).  Variances compose like signs and are ordered
with free at the bottom and fixed at the top.
"""
from __future__ import annotations

from enum import Enum
from functools import reduce
from typing import Sequence


class Variance(Enum):
    FREE = "b"
    CO = "+"
    CONTRA = "-"
    FIXED = "t"

    def __str__(self) -> str:
        return self.value

    def __mul__(self, other: Variance) -> Variance:
        return compose_variance(self, other)

    def __or__(self, other: Variance) -> Variance:
        return lub_variance(self, other)


FREE, CO, CONTRA, FIXED = Variance.FREE, Variance.CO, Variance.CONTRA, Variance.FIXED

Varity = tuple[Variance, ...]

_COMPOSE = {
    (FREE, FREE): FREE, (FREE, CO): FREE, (FREE, CONTRA): FREE, (FREE, FIXED): FREE,
    (CO, FREE): FREE, (CO, CO): CO, (CO, CONTRA): CONTRA, (CO, FIXED): FIXED,
    (CONTRA, FREE): FREE, (CONTRA, CO): CONTRA, (CONTRA, CONTRA): CO, (CONTRA, FIXED): FIXED,
    (FIXED, FREE): FREE, (FIXED, CO): FIXED, (FIXED, CONTRA): FIXED, (FIXED, FIXED): FIXED,
}

_LUB = {
    (FREE, FREE): FREE, (FREE, CO): CO, (FREE, CONTRA): CONTRA, (FREE, FIXED): FIXED,
    (CO, FREE): CO, (CO, CO): CO, (CO, CONTRA): FIXED, (CO, FIXED): FIXED,
    (CONTRA, FREE): CONTRA, (CONTRA, CO): FIXED, (CONTRA, CONTRA): CONTRA, (CONTRA, FIXED): FIXED,
    (FIXED, FREE): FIXED, (FIXED, CO): FIXED, (FIXED, CONTRA): FIXED, (FIXED, FIXED): FIXED,
}


def compose_variance(u: Variance, v: Variance) -> Variance:
    return _COMPOSE[u, v]


def lub_variance(u: Variance, v: Variance) -> Variance:
    return _LUB[u, v]


def leq_variance(u: Variance, v: Variance) -> bool:
    return lub_variance(u, v) is v


def lub_varity(u: Sequence[Variance], v: Sequence[Variance]) -> Varity:
    if len(u) != len(v):
        raise ValueError(f"varity length mismatch: {len(u)} vs {len(v)}")
    return tuple(lub_variance(a, b) for a, b in zip(u, v))


def scale_varity(u: Variance, v: Sequence[Variance]) -> Varity:
    """Compose a single variance with every slot of a varity."""
    return tuple(compose_variance(u, x) for x in v)


def varity_product(u: Sequence[Variance], matrix: Sequence[Sequence[Variance]],
                   width: int | None = None) -> Varity:
    """Row vector times matrix in the (lub, compose) semiring.

    ``u`` is the varity of an outer functor of arity n; row j of ``matrix`` is
    the varity of its j-th argument over m variables.  ``width`` gives m when
    there are no rows to read it from.
    """
    if len(u) != len(matrix):
        raise ValueError(f"matrix has {len(matrix)} rows, expected {len(u)}")
    if width is None:
        if not matrix:
            raise ValueError("width is required for an empty matrix")
        width = len(matrix[0])
    for row in matrix:
        if len(row) != width:
            raise ValueError("ragged variance matrix")
    return tuple(
        reduce(lub_variance, (compose_variance(u[j], matrix[j][i]) for j in range(len(u))), FREE)
        for i in range(width)
    )


def parse_varity(text: str) -> Varity:
    """Read the internal compact form, e.g. ``"-+"`` or ``"bt"``."""
    return tuple(Variance(ch) for ch in text)


def format_varity(v: Sequence[Variance]) -> str:
    """Display style: ``(+,+)``, or empty for a constant functor."""
    if not v:
        return ""
    return "(" + ",".join(str(x) for x in v) + ")"
