"""Monomial orders on exponent vectors.

Every supported order is a matrix order whose rows are non-negative integer
linear forms.  ``Ring`` uses the rows to pack a monomial into a single Python
integer whose natural ordering agrees with the monomial order and whose
addition is monomial multiplication.  :func:`compare_monomials` is written
directly from the definitions and serves as the reference for that packing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

LT, EQ, GT = -1, 0, 1


@dataclass(frozen=True)
class MonomialOrder:
    """A term order.

    ``kind`` is one of ``"grevlex"``, ``"lex"``, ``"block"`` or ``"weighted"``.
    A block order compares the first ``split`` variables with ``inner[0]`` and
    only on a tie the remaining ones with ``inner[1]``.  A weighted order
    compares ``weights . e`` first and breaks ties with grevlex.
    """

    kind: str = "grevlex"
    split: int = 0
    inner: tuple["MonomialOrder", ...] = ()
    weights: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block", "weighted"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block":
            if self.split < 0 or len(self.inner) != 2:
                raise ValueError("block order needs a split index and two inner orders")
        if self.kind == "weighted":
            if not self.weights or any(w <= 0 for w in self.weights):
                raise ValueError("weights must be positive integers")

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls("grevlex")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def block(cls, split: int, first: "MonomialOrder | None" = None,
              second: "MonomialOrder | None" = None) -> "MonomialOrder":
        return cls("block", split=split,
                   inner=(first or cls.grevlex(), second or cls.grevlex()))

    @classmethod
    def weighted(cls, weights: Sequence[int]) -> "MonomialOrder":
        return cls("weighted", weights=tuple(int(w) for w in weights))

    def check_arity(self, nvars: int) -> None:
        if self.kind == "block":
            if self.split > nvars:
                raise ValueError(f"block split {self.split} exceeds {nvars} variables")
            self.inner[0].check_arity(self.split)
            self.inner[1].check_arity(nvars - self.split)
        elif self.kind == "weighted" and len(self.weights) != nvars:
            raise ValueError(f"weight vector has length {len(self.weights)}, expected {nvars}")

    def matrix(self, nvars: int) -> list[list[int]]:
        """Rows of non-negative linear forms realising the order on ``nvars`` variables."""
        self.check_arity(nvars)
        if self.kind == "lex":
            return [[int(i == j) for j in range(nvars)] for i in range(nvars)]
        if self.kind == "grevlex":
            # degree, then the partial sums e_1 + ... + e_k for k = n-1 .. 1;
            # a larger partial sum means a smaller exponent of a later variable
            return [[int(j < k) for j in range(nvars)] for k in range(nvars, 0, -1)]
        if self.kind == "weighted":
            return [list(self.weights)] + MonomialOrder.grevlex().matrix(nvars)
        k = self.split
        top = [row + [0] * (nvars - k) for row in self.inner[0].matrix(k)]
        bottom = [[0] * k + row for row in self.inner[1].matrix(nvars - k)]
        return top + bottom

    def spec(self) -> str:
        """Textual form used in ring declaration lines."""
        if self.kind == "block":
            if self.inner != (MonomialOrder.grevlex(), MonomialOrder.grevlex()):
                raise ValueError("only grevlex blocks have a textual form")
            return f"block:{self.split}"
        if self.kind == "weighted":
            return "weight:" + ",".join(map(str, self.weights))
        return self.kind


def _grevlex(a: Sequence[int], b: Sequence[int]) -> int:
    da, db = sum(a), sum(b)
    if da != db:
        return GT if da > db else LT
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return GT if x < y else LT
    return EQ


def _lex(a: Sequence[int], b: Sequence[int]) -> int:
    for x, y in zip(a, b):
        if x != y:
            return GT if x > y else LT
    return EQ


def compare_monomials(a: Sequence[int], b: Sequence[int], order: MonomialOrder) -> int:
    """Compare two exponent vectors; returns ``LT``, ``EQ`` or ``GT``."""
    if len(a) != len(b):
        raise ValueError(f"exponent vectors of different lengths {len(a)} and {len(b)}")
    order.check_arity(len(a))
    if order.kind == "grevlex":
        return _grevlex(a, b)
    if order.kind == "lex":
        return _lex(a, b)
    if order.kind == "weighted":
        wa = sum(w * x for w, x in zip(order.weights, a))
        wb = sum(w * x for w, x in zip(order.weights, b))
        if wa != wb:
            return GT if wa > wb else LT
        return _grevlex(a, b)
    k = order.split
    c = compare_monomials(a[:k], b[:k], order.inner[0])
    if c != EQ:
        return c
    return compare_monomials(a[k:], b[k:], order.inner[1])
