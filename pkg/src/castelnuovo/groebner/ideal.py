"""Ideals of polynomial rings over GF(p) and the operations built on Gröbner bases."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from castelnuovo.groebner.buchberger import (
    GBStats,
    Reducers,
    groebner_terms,
    make_monic,
    quotient_polys,
    reduce_terms,
    spoly_terms,
)
from castelnuovo.groebner.hilbert import HilbertProfile, monomial_profile
from castelnuovo.polyring import MonomialOrder, Polynomial, Ring, RingMismatch


class NotHomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class GBInfo:
    order: MonomialOrder
    basis: tuple[Polynomial, ...]
    degree_reached: int
    stats: GBStats = field(compare=False)


class Ideal:
    """An ideal given by generators, with an optional cached reduced Gröbner basis."""

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = (),
                 gb_cache: GBInfo | None = None):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatch(f"generator {g} is not in {ring}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.gb_cache = gb_cache

    def __repr__(self):
        return f"Ideal({self.ring.header()!r}, {[str(g) for g in self.generators]})"

    def __add__(self, other: "Ideal | Iterable[Polynomial]") -> "Ideal":
        extra = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.ring, self.generators + tuple(extra))

    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        return all(g.is_homogeneous(weights) for g in self.generators)

    def groebner_basis(self, order: MonomialOrder | None = None,
                       weights: Sequence[int] | None = None) -> tuple[Polynomial, ...]:
        """Reduced Gröbner basis in this ideal's ring, computed under ``order``."""
        return buchberger(self, order, weights).gb_cache.basis

    def contains(self, f: Polynomial) -> bool:
        return ideal_member(f, self)

    def is_unit(self) -> bool:
        basis = self.groebner_basis()
        return len(basis) == 1 and basis[0].is_constant() and bool(basis[0])


def to_ring(f: Polynomial, ring: Ring) -> Polynomial:
    """Rewrite ``f`` in ``ring``, matching variables by name.

    Variables missing from ``ring`` must not occur in ``f``.
    """
    if f.ring == ring:
        return f
    if f.ring.characteristic != ring.characteristic:
        raise RingMismatch("rings have different characteristic")
    idx = [ring._index.get(v) for v in f.ring.variables]
    acc = {}
    n = ring.nvars
    for e, c in f.terms():
        out = [0] * n
        for v, i, x in zip(f.ring.variables, idx, e):
            if i is not None:
                out[i] = x
            elif x:
                raise RingMismatch(f"variable {v!r} of {f} does not exist in {ring}")
        acc[ring.encode(out)] = c
    return Polynomial._from_acc(ring, acc)


def _same_ring(polys: Iterable[Polynomial], ring: Ring) -> None:
    for g in polys:
        if g.ring != ring:
            raise RingMismatch(f"{g} is not in {ring}")


def normal_form(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Remainder of ``f`` under full division by ``basis``.

    Among divisors of the current term the one with the smallest leading
    monomial is used, ties broken by position in ``basis``.
    """
    return division(f, basis)[1]


def division(f: Polynomial, basis: Sequence[Polynomial]) -> tuple[list[Polynomial], Polynomial]:
    """Quotients ``q`` and remainder ``r`` with ``f = sum(q_i * basis_i) + r``."""
    ring = f.ring
    _same_ring(basis, ring)
    basis = list(basis)
    if not basis or any(not b for b in basis):
        raise ValueError("division needs a nonempty list of nonzero polynomials")
    p = ring.characteristic
    reducers = Reducers(ring)
    for i, b in enumerate(basis):
        reducers.add(make_monic(b._terms, p), i)
    quotients: dict = {}
    r = reduce_terms(f._terms, reducers, p, quotients)
    qs = quotient_polys(ring, quotients)
    out = []
    for i, b in enumerate(basis):
        q = qs.get(i, ring.zero)
        # quotients were taken against the monic multiple of b
        out.append(q.scale(pow(b.leading_coefficient, -1, p)))
    return out, Polynomial(ring, r)


def buchberger(ideal: Ideal, order: MonomialOrder | None = None,
               weights: Sequence[int] | None = None) -> Ideal:
    """Return ``ideal`` with its reduced monic Gröbner basis cached.

    ``weights`` only steers the pair selection (sugar degree); it should be a
    grading for which the generators are homogeneous, if one is known.
    """
    ring = ideal.ring
    order = order or ring.order
    cache = ideal.gb_cache
    if cache is not None and cache.order == order:
        return ideal
    work = ring if order == ring.order else ring.with_order(order)
    polys = [to_ring(g, work)._terms for g in ideal.generators]
    res = groebner_terms(work, polys, weights=weights)
    basis = tuple(to_ring(Polynomial(work, t), ring) for t in res.basis)
    info = GBInfo(order, basis, res.stats.max_degree, res.stats)
    out = Ideal(ring, ideal.generators, info)
    ideal.gb_cache = ideal.gb_cache or info
    return out


def _gb_reducers(ideal: Ideal) -> Reducers:
    gb = buchberger(ideal).gb_cache
    return Reducers(ideal.ring, [g._terms for g in gb.basis])


def ideal_member(f: Polynomial, ideal: Ideal) -> bool:
    if f.ring != ideal.ring:
        raise RingMismatch(f"{f} is not in {ideal.ring}")
    if not f:
        return True
    if ideal.is_zero():
        return False
    return not reduce_terms(f._terms, _gb_reducers(ideal), ideal.ring.characteristic)


def membership_certificate(f: Polynomial, ideal: Ideal) -> list[Polynomial] | None:
    """Cofactors ``c`` with ``f = sum(c_i * generators_i)``, or None if ``f`` is not in the ideal."""
    ring = ideal.ring
    if f.ring != ring:
        raise RingMismatch(f"{f} is not in {ring}")
    n = len(ideal.generators)
    if not f:
        return [ring.zero] * n
    if not n:
        return None
    p = ring.characteristic
    res = groebner_terms(ring, [g._terms for g in ideal.generators], track=True)
    reducers = Reducers(ring)
    for i, (terms, _) in enumerate(res.tracked):
        reducers.add(terms, i)
    quotients: dict = {}
    if reduce_terms(f._terms, reducers, p, quotients):
        return None
    cof = [ring.zero] * n
    for i, q in quotient_polys(ring, quotients).items():
        cof = [a + q * b for a, b in zip(cof, res.tracked[i][1])]
    return cof


def _fresh_name(ring: Ring, base: str) -> str:
    name, k = base, 0
    while name in ring.variables:
        k += 1
        name = f"{base}{k}"
    return name


def radical_member(f: Polynomial, ideal: Ideal) -> bool:
    """Whether some power of ``f`` lies in the ideal: ``1 in I + (u*f - 1)`` for a fresh ``u``."""
    ring = ideal.ring
    if f.ring != ring:
        raise RingMismatch(f"{f} is not in {ring}")
    if not f:
        return True
    u = _fresh_name(ring, "u")
    big = Ring(ring.variables + (u,), ring.characteristic, MonomialOrder.grevlex())
    gens = [to_ring(g, big)._terms for g in ideal.generators]
    gens.append((big.var(u) * to_ring(f, big) - 1)._terms)
    res = groebner_terms(big, gens)
    return res.basis == [((0, 1),)]


def minimal_power(f: Polynomial, ideal: Ideal, max_power: int) -> int | None:
    """Smallest ``N <= max_power`` with ``f^N`` in the ideal, or None."""
    reducers = _gb_reducers(ideal)
    p = ideal.ring.characteristic
    g = ideal.ring.one
    for n in range(1, max_power + 1):
        g = g * f
        if not reduce_terms(g._terms, reducers, p):
            return n
    return None


def eliminate(ideal: Ideal, names: Iterable[str], weights: Sequence[int] | None = None) -> Ideal:
    """Generators of the intersection of the ideal with the subring free of ``names``.

    The result lives in the ring of the remaining variables (same order of
    names, grevlex).  ``weights`` (one per variable of the ideal's ring) is an
    optional grading used for the sugar strategy.
    """
    ring = ideal.ring
    elim = list(dict.fromkeys(names))
    for v in elim:
        ring.index(v)
    keep = [v for v in ring.variables if v not in elim]
    sub = Ring(keep, ring.characteristic, MonomialOrder.grevlex())
    if not elim:
        return Ideal(sub, [to_ring(g, sub) for g in ideal.generators])
    work = Ring(elim + keep, ring.characteristic, MonomialOrder.block(len(elim)))
    w = None
    if weights is not None:
        wmap = dict(zip(ring.variables, weights))
        w = [wmap[v] for v in work.variables]
    res = groebner_terms(work, [to_ring(g, work)._terms for g in ideal.generators], weights=w)
    k = len(elim)
    out = []
    for t in res.basis:
        # block order: a leading term free of the first block means the whole polynomial is
        if not any(work.decode(t[0][0])[:k]):
            out.append(Polynomial(work, t))
    return Ideal(sub, [to_ring(g, sub) for g in out])


def map_kernel(source: Ring, target: Ring, images: Sequence[Polynomial],
               constraints: Ideal | Iterable[Polynomial] = ()) -> Ideal:
    """Kernel of ``target -> source/constraints`` sending target variable j to ``images[j]``.

    Computed by eliminating the source variables from
    ``constraints + (y_j - images_j)``.
    """
    if len(images) != target.nvars:
        raise ValueError(f"{len(images)} images for {target.nvars} target variables")
    _same_ring(images, source)
    cons = constraints.generators if isinstance(constraints, Ideal) else tuple(constraints)
    _same_ring(cons, source)
    if source.characteristic != target.characteristic:
        raise RingMismatch("source and target rings have different characteristic")
    # target names may clash with source names; rename internally
    taken = set(source.variables)
    tnames = []
    for v in target.variables:
        name = v
        while name in taken:
            name += "_"
        taken.add(name)
        tnames.append(name)
    big = Ring(source.variables + tuple(tnames), source.characteristic, MonomialOrder.grevlex())
    gens = [to_ring(c, big) for c in cons]
    for name, img in zip(tnames, images):
        gens.append(big.var(name) - to_ring(img, big))
    weights = None
    if all(img.is_homogeneous() and img for img in images) and all(c.is_homogeneous() for c in cons):
        weights = [1] * source.nvars + [max(img.degree(), 1) for img in images]
    kernel = eliminate(Ideal(big, gens), source.variables, weights)
    # the kernel ring has the renamed target variables in target order
    gens = [Polynomial._from_acc(target, {target.encode(e): c for e, c in g.terms()})
            for g in kernel.generators]
    return Ideal(target, gens)


def s_polynomials_reduce_to_zero(basis: Sequence[Polynomial]) -> bool:
    """Buchberger's criterion checked exhaustively over all pairs."""
    if not basis:
        return True
    ring = basis[0].ring
    p = ring.characteristic
    monic = [make_monic(b._terms, p) for b in basis]
    reducers = Reducers(ring, monic)
    for i in range(len(monic)):
        for j in range(i + 1, len(monic)):
            l = ring.lcm(monic[i][0][0], monic[j][0][0])
            s = spoly_terms(monic[i], monic[j], l, p)
            if reduce_terms(s, reducers, p):
                return False
    return True


def is_reduced_basis(basis: Sequence[Polynomial]) -> bool:
    """Monic, and no term of any element is divisible by another element's leading monomial."""
    if not basis:
        return True
    ring = basis[0].ring
    leads = [b._terms[0][0] for b in basis]
    for i, b in enumerate(basis):
        if b.leading_coefficient != 1:
            return False
        for j, l in enumerate(leads):
            if i != j and any(ring.divides(l, k) for k, _ in b._terms):
                return False
    return True


def hilbert_profile(ideal: Ideal) -> HilbertProfile:
    """Codimension and degree of the projective scheme defined by a homogeneous ideal.

    Read off the Hilbert series of the leading-term ideal of a grevlex basis.
    """
    if not ideal.is_homogeneous():
        raise NotHomogeneous("hilbert_profile needs a homogeneous ideal")
    ring = ideal.ring
    if ideal.is_zero():
        return HilbertProfile(0, 1)
    order = ring.order if ring.order.kind == "grevlex" else MonomialOrder.grevlex()
    basis = buchberger(ideal, order).gb_cache.basis
    if any(b.is_constant() for b in basis):
        raise ValueError("unit ideal defines the empty scheme")
    work = ring.with_order(order)
    leads = [to_ring(b, work).leading_monomial for b in basis]
    return monomial_profile(leads, ring.nvars)
