"""Complete residuated lattices on the unit interval.

Four structures are supported: the two-element Boolean algebra and the
Gödel, Łukasiewicz and product structures on [0, 1]. All four are chains,
so join and meet are max and min; only the multiplication and its residuum
differ.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

DEFAULT_EPSILON = 1e-9


class LatticeKind(str, enum.Enum):
    BOOLEAN = "boolean"
    GODEL = "godel"
    LUKASIEWICZ = "lukasiewicz"
    PRODUCT = "product"

    @property
    def code(self) -> int:
        # integer tag understood by the compiled kernels
        return _KIND_CODES[self]


_KIND_CODES = {
    LatticeKind.BOOLEAN: 0,
    LatticeKind.GODEL: 1,
    LatticeKind.LUKASIEWICZ: 2,
    LatticeKind.PRODUCT: 3,
}


@dataclass(frozen=True)
class LatticeSpec:
    """The lattice governing all arithmetic, plus the comparison tolerance.

    ``epsilon`` is used by every ordering/equality test on values; the
    arithmetic itself is exact floating point and never rounds or clamps.
    """

    kind: LatticeKind
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        kind = LatticeKind(self.kind)
        object.__setattr__(self, "kind", kind)
        eps = float(self.epsilon)
        if kind is LatticeKind.BOOLEAN:
            if eps != 0.0:
                raise ValueError("the boolean lattice is compared exactly (epsilon must be 0)")
        elif not eps > 0.0:
            raise ValueError(f"epsilon must be positive for {kind.value}, got {eps!r}")
        object.__setattr__(self, "epsilon", eps)

    @classmethod
    def of(cls, kind, epsilon: float | None = None) -> "LatticeSpec":
        """Build a spec with the default tolerance for ``kind``."""
        kind = LatticeKind(kind)
        if epsilon is None:
            epsilon = 0.0 if kind is LatticeKind.BOOLEAN else DEFAULT_EPSILON
        return cls(kind, epsilon)

    # -- constants -------------------------------------------------------

    zero = 0.0
    one = 1.0

    # -- scalar operations -----------------------------------------------

    def join(self, a: float, b: float) -> float:
        return a if a >= b else b

    def meet(self, a: float, b: float) -> float:
        return a if a <= b else b

    def tensor(self, a: float, b: float) -> float:
        kind = self.kind
        if kind is LatticeKind.LUKASIEWICZ:
            # lo - (1 - hi): a single rounding, and tensor(1, b) == b exactly
            c = min(a, b) - (1.0 - max(a, b))
            return c if c > 0.0 else 0.0
        if kind is LatticeKind.PRODUCT:
            return a * b
        # boolean AND coincides with min on {0, 1}
        return a if a <= b else b

    def residuum(self, a: float, b: float) -> float:
        kind = self.kind
        if kind is LatticeKind.LUKASIEWICZ:
            c = 1.0 - a + b
            return c if c < 1.0 else 1.0
        if a <= b:
            return 1.0
        if kind is LatticeKind.PRODUCT:
            return b / a
        # Gödel; on {0, 1} this is (not a) or b
        return b

    def leq(self, a: float, b: float) -> bool:
        return a <= b + self.epsilon

    def value_eq(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.epsilon

    def is_value(self, a: float) -> bool:
        if self.kind is LatticeKind.BOOLEAN:
            return a == 0.0 or a == 1.0
        return 0.0 <= a <= 1.0

    # -- elementwise (numpy) operations -----------------------------------

    def tensor_arr(self, a, b) -> np.ndarray:
        kind = self.kind
        if kind is LatticeKind.LUKASIEWICZ:
            return np.maximum(np.minimum(a, b) - (1.0 - np.maximum(a, b)), 0.0)
        if kind is LatticeKind.PRODUCT:
            return np.multiply(a, b)
        return np.minimum(a, b)

    def residuum_arr(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
        kind = self.kind
        if kind is LatticeKind.LUKASIEWICZ:
            return np.minimum(1.0 - a + b, 1.0)
        below = a <= b
        if kind is LatticeKind.PRODUCT:
            quotient = np.divide(b, a, out=np.ones_like(b), where=~below)
            return np.where(below, 1.0, quotient)
        return np.where(below, 1.0, b)

    def check_values(self, arr) -> bool:
        arr = np.asarray(arr, dtype=float)
        if self.kind is LatticeKind.BOOLEAN:
            return bool(np.all((arr == 0.0) | (arr == 1.0)))
        return bool(np.all((arr >= 0.0) & (arr <= 1.0)))

    def to_dict(self) -> dict:
        return {"lattice": self.kind.value, "epsilon": self.epsilon}


BOOLEAN = LatticeSpec.of(LatticeKind.BOOLEAN)
GODEL = LatticeSpec.of(LatticeKind.GODEL)
LUKASIEWICZ = LatticeSpec.of(LatticeKind.LUKASIEWICZ)
PRODUCT = LatticeSpec.of(LatticeKind.PRODUCT)

ALL_KINDS = tuple(LatticeKind)
