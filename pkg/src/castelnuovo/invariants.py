"""Numerical invariants of Castelnuovo surfaces and their double covers.

Intersection numbers live on the P^2-bundle ``P_{a,b,c}`` over P^1, whose
Chow ring is generated by the tautological class ``T`` and the fibre ``L``
with ``L^2 = 0``, ``T^2 L = 1`` and ``T^3 = a + b + c``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement


@dataclass(frozen=True)
class BundleClass:
    """The divisor class ``m T + n L`` on ``P_{a,b,c}``."""

    m: int
    n: int
    abc: tuple[int, int, int] = (0, 0, 0)

    def __post_init__(self):
        a, b, c = self.abc
        if not (0 <= a <= b <= c):
            raise ValueError(f"bundle data must satisfy 0 <= a <= b <= c, got {self.abc}")

    @classmethod
    def T(cls, abc=(0, 0, 0)) -> "BundleClass":
        return cls(1, 0, tuple(abc))

    @classmethod
    def L(cls, abc=(0, 0, 0)) -> "BundleClass":
        return cls(0, 1, tuple(abc))

    def __add__(self, other: "BundleClass") -> "BundleClass":
        if self.abc != other.abc:
            raise ValueError("classes live on different bundles")
        return BundleClass(self.m + other.m, self.n + other.n, self.abc)

    def __rmul__(self, k: int) -> "BundleClass":
        return BundleClass(k * self.m, k * self.n, self.abc)


def castelnuovo_class(abc: tuple[int, int, int]) -> BundleClass:
    """``4T - (a+b+c-2) L``."""
    return BundleClass(4, -(sum(abc) - 2), tuple(abc))


def chow_intersect(x: BundleClass, y: BundleClass, z: BundleClass) -> int:
    if not (x.abc == y.abc == z.abc):
        raise ValueError("classes live on different bundles")
    t3 = sum(x.abc)
    return x.m * y.m * z.m * t3 + x.m * y.m * z.n + x.m * y.n * z.m + x.n * y.m * z.m


@dataclass
class InvariantRecord:
    p_g: int
    q: int
    K2: int | None = None
    nu: int | None = None
    g: int | None = None
    abc: tuple[int, int, int] | None = None
    family: str | None = None
    flags: dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        d = asdict(self)
        d["abc"] = list(self.abc) if self.abc is not None else None
        return d


def castelnuovo_numbers(a: int, b: int, c: int) -> InvariantRecord:
    """Invariants of the minimal resolution S of a Castelnuovo surface of type (a, b, c)."""
    if not (0 <= a <= b <= c):
        raise ValueError(f"need 0 <= a <= b <= c, got ({a}, {b}, {c})")
    p_g = a + b + c + 3
    k2 = 3 * p_g - 7
    abc = (a, b, c)
    t = BundleClass.T(abc)
    chow = chow_intersect(t, t, castelnuovo_class(abc))
    return InvariantRecord(p_g=p_g, q=0, K2=k2, abc=abc,
                           flags={"chow_agrees": chow == k2 == 3 * (a + b + c) + 2})


def double_cover_invariants(p_g_y: int, q_y: int, k2_y: int, nu: int) -> tuple[int, int]:
    """``(chi(O_X), K_X^2)`` for a double cover branched exactly over ``nu`` nodes."""
    if nu < 0 or nu % 4:
        raise ValueError(f"number of nodes must be a non-negative multiple of 4, got {nu}")
    chi_y = 1 - q_y + p_g_y
    return 2 * chi_y - nu // 4, 2 * k2_y


def node_count(p_g: int, q: int) -> int:
    """Nodes of the canonical image when the canonical map is a double cover."""
    if p_g < 3 or q < 0:
        raise ValueError(f"need p_g >= 3 and q >= 0, got ({p_g}, {q})")
    return 4 * (1 + p_g + q)


def type2_node_count(g: int) -> int:
    """``2g + 2`` double fibres with 8 nodes each."""
    return 16 * g + 16


def canonical_degree(p_g: int, k2_x: int) -> int:
    """Largest possible degree of the canonical map onto a surface of degree >= 3 p_g - 7."""
    if 3 * p_g - 7 <= 0:
        raise ValueError("need p_g >= 3")
    return k2_x // (3 * p_g - 7)


def c2_budget(g: int, p_g: int) -> tuple[int, int, bool]:
    """Noether's ``c_2(S) = 9 p_g + 19`` against the fibre bound ``-8 + 14 (2g + 2)``."""
    if g < 1:
        raise ValueError("need g >= 1")
    lhs = 9 * p_g + 19
    rhs = 2 * (-4) + (2 * g + 2) * 14
    return lhs, rhs, lhs >= rhs


FAMILY_BY_EXCESS = {0: "a", 1: "b", 2: "c"}


def enumerate_type2(g_max: int) -> list[InvariantRecord]:
    """All numerical type-II possibilities with ``1 <= g <= g_max``.

    Each record holds the invariants of the double cover X (``K2`` is
    ``K_X^2``, ``nu`` the number of nodes of its canonical image).

    Conditions: ``q - g = 3g + 3 - p_g`` in {0, 1, 2}, ``9 p_g >= 28 g + 1``,
    ``a + b + c = p_g - 3`` and ``0 <= a <= b <= c <= g``.  Records are sorted
    by family, then genus, then (a, b, c).
    """
    if g_max < 1:
        raise ValueError("need g_max >= 1")
    out = []
    for g in range(1, g_max + 1):
        for excess in (0, 1, 2):
            p_g = 3 * g + 3 - excess
            q = g + excess
            if not c2_budget(g, p_g)[2]:
                continue
            for abc in combinations_with_replacement(range(g + 1), 3):
                if sum(abc) != p_g - 3:
                    continue
                nu = node_count(p_g, q)
                chi_x, k2_x = double_cover_invariants(p_g, 0, 3 * p_g - 7, nu)
                out.append(InvariantRecord(
                    p_g=p_g, q=q, K2=k2_x, nu=nu, g=g, abc=abc,
                    family=FAMILY_BY_EXCESS[excess],
                    flags={"nodes_agree": nu == type2_node_count(g),
                           "chi_agrees": chi_x == 1 - q + p_g,
                           "k2_on_line": k2_x == 6 * p_g - 14}))
    out.sort(key=lambda r: (r.family, r.g, r.abc))
    return out
