"""Buchberger's algorithm on packed-key term tuples.

Polynomials are handled as ``(key, coeff)`` tuples sorted by decreasing key
(see :mod:`castelnuovo.polyring.ring`); basis elements are kept monic.
Pairs are processed by the normal strategy (smallest sugar degree, then
smallest lcm) and pruned with Buchberger's coprimality criterion and the
Gebauer-Moeller chain criteria.
"""

from __future__ import annotations

import heapq
import logging
from bisect import bisect_right
from dataclasses import dataclass

from castelnuovo.polyring import Polynomial, Ring

log = logging.getLogger(__name__)

Terms = tuple  # tuple[tuple[int, int], ...]


class Reducers:
    """Monic polynomials searchable by leading monomial.

    :meth:`find` returns the divisor with the smallest leading monomial, ties
    going to the lowest insertion index.
    """

    def __init__(self, ring: Ring, polys=()):
        self.ring = ring
        self._leads: list[int] = []
        self._entries: list[tuple[int, int, Terms]] = []
        self._count = 0
        self._cache: dict[int, tuple | None] = {}
        for f in polys:
            self.add(f)

    def __len__(self):
        return len(self._entries)

    def add(self, terms: Terms, index: int | None = None) -> None:
        lead = terms[0][0]
        if index is None:
            index = self._count
        self._count = max(self._count, index) + 1
        entry = (lead, index, terms)
        pos = bisect_right(self._leads, lead)
        self._leads.insert(pos, lead)
        self._entries.insert(pos, entry)
        self._cache = {k: v for k, v in self._cache.items() if v is not None}

    def discard_multiples(self, lead: int) -> None:
        """Drop entries whose leading monomial is a proper multiple of ``lead``."""
        div = self.ring.divides
        keep = [i for i, k in enumerate(self._leads) if k == lead or not div(lead, k)]
        if len(keep) != len(self._entries):
            self._leads = [self._leads[i] for i in keep]
            self._entries = [self._entries[i] for i in keep]
            self._cache = {}

    def find(self, key: int):
        """Entry ``(lead, index, terms)`` of the chosen divisor of ``key``, or None."""
        try:
            return self._cache[key]
        except KeyError:
            pass
        ring = self.ring
        g, lm = ring._guard, ring._low_mask
        b = key & lm | g
        found = None
        leads = self._leads
        # a divisor never exceeds its multiple in a term order
        for i in range(bisect_right(leads, key)):
            if (b - (leads[i] & lm)) & g == g:
                found = self._entries[i]
                break
        self._cache[key] = found
        return found


def reduce_terms(terms: Terms, reducers: Reducers, p: int, quotients: dict | None = None) -> Terms:
    """Fully reduced remainder of ``terms`` modulo the (monic) reducers.

    If ``quotients`` is a dict it receives ``{reducer index: {shift key: coeff}}``
    so that ``terms = sum(q_i * g_i) + remainder``.
    """
    if not terms:
        return terms
    acc = dict(terms)
    heap = [-k for k, _ in terms]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    find = reducers.find
    rem = []
    while heap:
        k = -pop(heap)
        c = acc.pop(k, None)
        if c is None:
            continue
        entry = find(k)
        if entry is None:
            rem.append((k, c))
            continue
        lead, idx, g = entry
        shift = k - lead
        if quotients is not None:
            q = quotients.setdefault(idx, {})
            q[shift] = (q.get(shift, 0) + c) % p
        for gk, gc in g[1:]:
            nk = gk + shift
            v = acc.get(nk)
            if v is None:
                acc[nk] = (-c * gc) % p
                push(heap, -nk)
            else:
                v = (v - c * gc) % p
                if v:
                    acc[nk] = v
                else:
                    del acc[nk]
    return tuple(rem)


def make_monic(terms: Terms, p: int) -> Terms:
    if not terms or terms[0][1] == 1:
        return terms
    inv = pow(terms[0][1], -1, p)
    return tuple((k, c * inv % p) for k, c in terms)


def spoly_terms(f: Terms, g: Terms, lcm: int, p: int) -> Terms:
    """S-polynomial of monic ``f`` and ``g`` given the lcm of their leading monomials."""
    sf = lcm - f[0][0]
    sg = lcm - g[0][0]
    acc = {}
    for k, c in f[1:]:
        acc[k + sf] = c
    for k, c in g[1:]:
        nk = k + sg
        v = (acc.get(nk, 0) - c) % p
        if v:
            acc[nk] = v
        else:
            acc.pop(nk, None)
    return tuple(sorted(acc.items(), reverse=True))


@dataclass
class GBStats:
    pairs_total: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    max_degree: int = 0
    basis_size: int = 0


@dataclass
class GBResult:
    basis: list[Terms]
    stats: GBStats
    # (terms, cofactors over the input list) for a Gröbner basis of the ideal,
    # filled only when tracking was requested
    tracked: list[tuple[Terms, list[Polynomial]]] | None = None


def quotient_polys(ring: Ring, quotients: dict) -> dict[int, Polynomial]:
    return {i: Polynomial._from_acc(ring, q) for i, q in quotients.items()}


def _shifted(f: Polynomial, shift: int, c: int = 1) -> Polynomial:
    p = f.ring.characteristic
    return Polynomial(f.ring, tuple((k + shift, x * c % p) for k, x in f._terms))


class _Buchberger:
    def __init__(self, ring: Ring, weights, track: bool, stop_on_unit: bool):
        self.ring = ring
        self.p = ring.characteristic
        self.weights = weights
        self.track = track
        self.stop_on_unit = stop_on_unit
        self.stats = GBStats()
        self.basis: list[Terms] = []
        self.sugar: list[int] = []
        self.alive: list[bool] = []
        self.cofactors: list[list[Polynomial]] = []
        self.reducers = Reducers(ring)
        self.pairs: list[tuple[int, int, int, int, int]] = []
        self.pending: set[tuple[int, int]] = set()
        self.use_sugar = True

    def degree(self, key: int) -> int:
        e = self.ring.decode(key)
        if self.weights is None:
            return sum(e)
        return sum(w * x for w, x in zip(self.weights, e))

    def terms_degree(self, terms: Terms) -> int:
        return max(self.degree(k) for k, _ in terms)

    # -- pair bookkeeping ------------------------------------------------

    def update(self, h_idx: int) -> None:
        ring, div = self.ring, self.ring.divides
        basis, alive = self.basis, self.alive
        lh = basis[h_idx][0][0]
        cands = []
        for g_idx, ok in enumerate(alive):
            if ok and g_idx != h_idx:
                lg = basis[g_idx][0][0]
                l = ring.lcm(lg, lh)
                cands.append((l, l != lg + lh, g_idx))
        # drop new pairs whose lcm is a multiple of another new pair's lcm;
        # among equal lcms keep a coprime one if present (then it is skipped)
        cands.sort()
        kept: list[tuple[int, bool, int]] = []
        for l, not_coprime, g_idx in cands:
            if any(div(l2, l) for l2, _, _ in kept):
                continue
            kept.append((l, not_coprime, g_idx))
        # chain criterion on old pairs
        if self.pairs:
            survivors = []
            for entry in self.pairs:
                _, l, i, j, _ = entry
                if div(lh, l):
                    if ring.lcm(basis[i][0][0], lh) != l and ring.lcm(basis[j][0][0], lh) != l:
                        self.pending.discard((i, j))
                        continue
                survivors.append(entry)
            if len(survivors) != len(self.pairs):
                self.pairs = survivors
                heapq.heapify(self.pairs)
        for l, not_coprime, g_idx in kept:
            if not not_coprime:
                continue
            lg = basis[g_idx][0][0]
            s = max(self.sugar[g_idx] + self.degree(l - lg), self.sugar[h_idx] + self.degree(l - lh))
            heapq.heappush(self.pairs, (s if self.use_sugar else 0, l, g_idx, h_idx, s))
            self.pending.add((g_idx, h_idx))
            self.stats.pairs_total += 1
        for g_idx, ok in enumerate(alive):
            if ok and g_idx != h_idx and div(lh, basis[g_idx][0][0]):
                alive[g_idx] = False
        self.reducers.discard_multiples(lh)

    def insert(self, terms: Terms, s: int, cof) -> None:
        self.basis.append(terms)
        self.sugar.append(s)
        self.alive.append(True)
        if self.track:
            self.cofactors.append(cof)
        idx = len(self.basis) - 1
        self.reducers.add(terms, idx)
        self.update(idx)

    # -- main loop -----------------------------------------------------

    def reduce(self, f: Terms, cof):
        if not self.track:
            return reduce_terms(f, self.reducers, self.p), None
        quotients: dict = {}
        r = reduce_terms(f, self.reducers, self.p, quotients)
        for idx, q in quotient_polys(self.ring, quotients).items():
            cof = [a - q * b for a, b in zip(cof, self.cofactors[idx])]
        return r, cof

    def normalize(self, r: Terms, cof):
        c = r[0][1]
        if c != 1:
            inv = pow(c, -1, self.p)
            r = tuple((k, x * inv % self.p) for k, x in r)
            if cof is not None:
                cof = [a.scale(inv) for a in cof]
        return r, cof

    def run(self, polys: list[Terms]) -> GBResult:
        ring, p = self.ring, self.p
        n_in = len(polys)
        # sugar selection pays off for degree-compatible orders or graded input;
        # otherwise (lex on inhomogeneous input) pick the smallest lcm first
        graded = all(len({self.degree(k) for k, _ in t}) <= 1 for t in polys)
        self.use_sugar = graded or ring.order.kind in ("grevlex", "weighted")
        queue = []
        for n, t in enumerate(polys):
            if t:
                s = self.terms_degree(t)
                queue.append((s if self.use_sugar else 0, t[0][0], n, t, s))
        heapq.heapify(queue)
        unit = False
        while (self.pairs or queue) and not unit:
            if queue and (not self.pairs or queue[0][:2] <= self.pairs[0][:2]):
                _, _, n, f, s = heapq.heappop(queue)
                cof = None
                if self.track:
                    cof = [ring.one if m == n else ring.zero for m in range(n_in)]
                from_pair = False
            else:
                _, l, i, j, s = heapq.heappop(self.pairs)
                if (i, j) not in self.pending:
                    continue
                self.pending.discard((i, j))
                f = spoly_terms(self.basis[i], self.basis[j], l, p)
                cof = None
                if self.track:
                    si, sj = l - self.basis[i][0][0], l - self.basis[j][0][0]
                    cof = [_shifted(a, si) - _shifted(b, sj)
                           for a, b in zip(self.cofactors[i], self.cofactors[j])]
                self.stats.pairs_reduced += 1
                from_pair = True
            self.stats.max_degree = max(self.stats.max_degree, s)
            r, cof = self.reduce(f, cof)
            if not r:
                self.stats.zero_reductions += from_pair
                continue
            r, cof = self.normalize(r, cof)
            self.insert(r, s, cof)
            if r[0][0] == 0 and self.stop_on_unit:
                unit = True
            log.debug("degree %d: basis %d, pairs %d", s, len(self.basis), len(self.pairs))

        live = [i for i, ok in enumerate(self.alive) if ok]
        if unit:
            result = [((0, 1),)]
            live = [len(self.basis) - 1]
        else:
            result = interreduce(ring, [self.basis[i] for i in live])
        self.stats.basis_size = len(result)
        tracked = None
        if self.track:
            tracked = [(self.basis[i], self.cofactors[i]) for i in live]
        return GBResult(result, self.stats, tracked)


def groebner_terms(ring: Ring, polys: list[Terms], weights=None, track: bool = False,
                   stop_on_unit: bool = True) -> GBResult:
    """Reduced Gröbner basis of the ideal generated by ``polys`` under ``ring.order``.

    ``weights`` is the grading used for sugar degrees (standard grading if
    None).  With ``track=True`` the result also carries a Gröbner basis
    whose elements are expressed through the inputs.
    """
    return _Buchberger(ring, weights, track, stop_on_unit).run(list(polys))


def interreduce(ring: Ring, polys: list[Terms]) -> list[Terms]:
    """Reduced basis from a Gröbner basis: minimal leading terms, reduced tails, monic.

    The result is sorted by increasing leading monomial.
    """
    p = ring.characteristic
    polys = sorted((make_monic(f, p) for f in polys if f), key=lambda f: f[0][0])
    if any(f[0][0] == 0 for f in polys):
        return [((0, 1),)]
    minimal: list[Terms] = []
    for f in polys:
        if not any(ring.divides(g[0][0], f[0][0]) for g in minimal):
            minimal.append(f)
    out = []
    for n, f in enumerate(minimal):
        others = Reducers(ring, [g for m, g in enumerate(minimal) if m != n])
        out.append((f[0],) + reduce_terms(f[1:], others, p))
    return out
