"""Hilbert series of monomial ideals.

For a monomial ideal ``M`` in ``n`` variables the Hilbert series of ``S/M`` is
``N(t) / (1 - t)^n`` with an integer polynomial ``N``.  ``N`` is computed by
pivoting: for a monomial ``m``,

    N(M) = N(M + (m)) + t^deg(m) * N(M : m)

until the generators have pairwise disjoint supports, where ``N`` is the
product of the factors ``1 - t^deg``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class HilbertProfile:
    codimension: int
    degree: int


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens: Sequence[Monomial]) -> list[Monomial]:
    """Minimal generators of the monomial ideal spanned by ``gens``."""
    out: list[Monomial] = []
    for m in sorted(set(gens), key=sum):
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _disjoint(gens: list[Monomial]) -> bool:
    used = [False] * len(gens[0])
    for m in gens:
        for i, e in enumerate(m):
            if e:
                if used[i]:
                    return False
                used[i] = True
    return True


def hilbert_numerator(gens: Sequence[Monomial], nvars: int | None = None) -> list[int]:
    """Coefficients (constant first) of the numerator ``N(t)`` for ``S/(gens)``."""
    gens = minimalize([tuple(m) for m in gens])
    if not gens:
        return [1]
    if any(sum(m) == 0 for m in gens):
        return [0]
    return _numerator(gens)


def _numerator(gens: list[Monomial]) -> list[int]:
    if _disjoint(gens):
        out = [1]
        for m in gens:
            d = sum(m)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    n = len(gens[0])
    # pivot on the variable occurring in most generators, at the median of its exponents
    counts = [sum(1 for m in gens if m[i]) for i in range(n)]
    var = max(range(n), key=lambda i: counts[i])
    # exponents of mixed generators only, so the pivot never lies in the ideal
    exps = sorted(m[var] for m in gens if m[var] and m[var] != sum(m))
    e = exps[(len(exps) - 1) // 2]
    pivot = tuple(e if i == var else 0 for i in range(n))
    plus = minimalize(gens + [pivot])
    colon = minimalize([tuple(max(x - y, 0) for x, y in zip(m, pivot)) for m in gens])
    left = _numerator(plus)
    if any(sum(m) == 0 for m in colon):
        right = [0]
    else:
        right = _numerator(colon)
    return _poly_add(left, [0] * e + right)


def profile_from_numerator(num: list[int], nvars: int) -> HilbertProfile:
    """Codimension and degree from ``N(t)``: divide out ``1 - t`` as often as possible."""
    num = list(num)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    if num == [0]:
        raise ValueError("unit ideal has empty projective scheme")
    codim = 0
    while sum(num) == 0:
        # synthetic division by (1 - t): quotient q with q_k = sum_{i<=k} num_i
        q, acc = [], 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
        codim += 1
    if codim > nvars:
        raise ArithmeticError("inconsistent Hilbert numerator")
    return HilbertProfile(codimension=codim, degree=sum(num))


def monomial_profile(gens: Sequence[Monomial], nvars: int) -> HilbertProfile:
    return profile_from_numerator(hilbert_numerator(gens, nvars), nvars)
