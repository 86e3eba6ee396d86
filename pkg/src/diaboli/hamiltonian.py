"""Bordered diagonal (arrowhead) Hamiltonians over violation diagonals.

The operator acts on the assignment basis plus one extra "head" state
appended at the last index.  The body block is diagonal, every body state
couples to the head with one uniform border element, and the head carries
the opposite bias, so the two sectors cross as ``z`` changes sign:

* ``unscaled``   body ``z/4 + d[i]``,     border ``x``,          head ``-z/4``
* ``z_scaled``   body ``z/4 + N * d[i]``, border ``x``,          head ``-z/4``
* ``x_scaled``   body ``z/4 + d[i]``,     border ``x / sqrt(N)``, head ``-z/4``

``N`` is the body dimension of the diagonal being built, so restricted
subproblems scale by their own size.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLarge, EmptyMask, IndexOutOfRange, UnknownVariant
from .instance import ViolationDiagonal

VARIANTS = ("unscaled", "z_scaled", "x_scaled")

DENSE_LIMIT = 4097  # largest matrix the dense paths will materialize


@dataclass(frozen=True)
class ParameterPoint:
    """A point (x, z) in the two-parameter control plane."""

    x: float
    z: float

    def __post_init__(self) -> None:
        for name in ("x", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class SubspaceMask:
    """Strictly increasing assignment indices naming a subspace."""

    selected: tuple[int, ...]

    def __post_init__(self) -> None:
        sel = tuple(int(i) for i in self.selected)
        if not sel:
            raise EmptyMask("mask selects no basis states")
        if any(i < 0 for i in sel):
            raise IndexOutOfRange(f"negative index in mask: {sel}")
        if any(b <= a for a, b in zip(sel, sel[1:])):
            raise IndexOutOfRange("mask indices must be strictly increasing")
        object.__setattr__(self, "selected", sel)

    def __len__(self) -> int:
        return len(self.selected)


@dataclass(frozen=True, eq=False)
class ArrowheadHamiltonian:
    """Real symmetric arrowhead matrix: diagonal body, uniform border, head last."""

    body_diag: np.ndarray
    border: float
    head_diag: float
    params: ParameterPoint | None = None
    variant: str | None = None

    def __post_init__(self) -> None:
        body = np.asarray(self.body_diag, dtype=np.float64)
        if body.ndim != 1 or body.size < 1:
            raise IndexOutOfRange("body diagonal must be a non-empty 1-d array")
        if not np.all(np.isfinite(body)):
            raise ValueError("body diagonal contains non-finite entries")
        body = body.copy()
        body.setflags(write=False)
        object.__setattr__(self, "body_diag", body)
        object.__setattr__(self, "border", float(self.border))
        object.__setattr__(self, "head_diag", float(self.head_diag))

    @property
    def dimension(self) -> int:
        return int(self.body_diag.size) + 1

    def to_dense(self) -> np.ndarray:
        """Materialize the full symmetric matrix (small systems only)."""

        dim = self.dimension
        if dim > DENSE_LIMIT:
            raise DimensionTooLarge(f"dense matrix of dimension {dim} exceeds {DENSE_LIMIT}")
        mat = np.zeros((dim, dim), dtype=np.float64)
        mat[np.arange(dim - 1), np.arange(dim - 1)] = self.body_diag
        mat[-1, -1] = self.head_diag
        mat[:-1, -1] = self.border
        mat[-1, :-1] = self.border
        return mat

    def descriptor(self) -> dict:
        """Small JSON-ready summary of how this operator was built."""

        n = None
        size = self.body_diag.size
        if size & (size - 1) == 0:
            n = int(size).bit_length() - 1
        return {
            "variant": self.variant,
            "n": n,
            "x": self.params.x if self.params is not None else None,
            "z": self.params.z if self.params is not None else None,
        }

    def descriptor_json(self) -> str:
        return json.dumps(self.descriptor(), sort_keys=True, indent=2) + "\n"

    def dense_csv(self) -> str:
        """CSV dump of the dense matrix, one row per line, %.17g cells."""

        mat = self.to_dense()
        lines = [",".join(f"{v:.17g}" for v in row) for row in mat]
        return "\n".join(lines) + "\n"


def build(diag: ViolationDiagonal, point: ParameterPoint, variant: str = "unscaled") -> ArrowheadHamiltonian:
    """Assemble the arrowhead operator for a diagonal at a parameter point."""

    if variant not in VARIANTS:
        raise UnknownVariant(f"variant {variant!r} not in {VARIANTS}")
    entries = diag.entries.astype(np.float64)
    size = entries.size
    quarter = point.z / 4.0
    if variant == "z_scaled":
        body = quarter + size * entries
    else:
        body = quarter + entries
    border = point.x / math.sqrt(size) if variant == "x_scaled" else point.x
    return ArrowheadHamiltonian(
        body_diag=body,
        border=border,
        head_diag=-quarter,
        params=point,
        variant=variant,
    )


def restrict(diag: ViolationDiagonal, mask: SubspaceMask) -> ViolationDiagonal:
    """Select a subspace of the diagonal, preserving index order."""

    idx = np.asarray(mask.selected, dtype=np.int64)
    if idx[-1] >= diag.dimension:
        raise IndexOutOfRange(f"mask index {int(idx[-1])} outside diagonal of size {diag.dimension}")
    return ViolationDiagonal(entries=diag.entries[idx])
