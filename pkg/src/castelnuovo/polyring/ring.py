"""Polynomial rings over prime fields and their sparse polynomials.

A monomial is stored as one packed integer ("key").  The high part holds the
rows of the order matrix applied to the exponent vector, the low part holds
the exponents themselves in 12-bit fields whose top bit is a guard.  Hence

* ``key_a < key_b`` iff ``a < b`` in the ring's monomial order,
* ``key_a + key_b`` is the key of the product monomial,
* divisibility is a single subtraction against the guard mask.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from castelnuovo.polyring.order import MonomialOrder

DEFAULT_CHARACTERISTIC = 31991

EXP_BITS = 12
MAX_EXPONENT = (1 << (EXP_BITS - 1)) - 1


class ExponentOverflow(ArithmeticError):
    pass


class RingMismatch(ValueError):
    pass


class UnknownVariable(KeyError, ValueError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown variable"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True, init=False)
class Ring:
    """GF(p)[variables] with a monomial order."""

    variables: tuple[str, ...]
    characteristic: int = DEFAULT_CHARACTERISTIC
    order: MonomialOrder = field(default_factory=MonomialOrder.grevlex)

    # packing data, derived in _setup
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _columns: tuple = field(init=False, repr=False, compare=False, hash=False)
    _guard: int = field(init=False, repr=False, compare=False, hash=False)
    _low_mask: int = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, variables: Iterable[str], characteristic: int = DEFAULT_CHARACTERISTIC,
                 order: MonomialOrder | None = None):
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "characteristic", int(characteristic))
        object.__setattr__(self, "order", order or MonomialOrder.grevlex())
        self._setup()

    def _setup(self):
        p, names = self.characteristic, self.variables
        if p <= 2 or not is_prime(p):
            raise ValueError(f"characteristic must be an odd prime, got {p}")
        if any(not isinstance(v, str) or not v for v in names):
            raise ValueError("variable names must be nonempty strings")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        n = len(names)
        rows = self.order.matrix(n)
        width = max([1] + [sum(r) * MAX_EXPONENT for r in rows]).bit_length()
        low = EXP_BITS * n
        cols = []
        for j in range(n):
            col = 1 << (EXP_BITS * j)
            for i, row in enumerate(reversed(rows)):
                col += row[j] << (low + width * i)
            cols.append(col)
        guard = sum(1 << (EXP_BITS * j + EXP_BITS - 1) for j in range(n))
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(names)})
        object.__setattr__(self, "_columns", tuple(cols))
        object.__setattr__(self, "_guard", guard)
        object.__setattr__(self, "_low_mask", (1 << low) - 1)

    # -- monomial keys -------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"exponent vector of length {len(exps)} for {self.nvars} variables")
        key = 0
        for e, col in zip(exps, self._columns):
            if e < 0:
                raise ValueError("negative exponent")
            if e > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
            key += e * col
        return key

    def decode(self, key: int) -> tuple[int, ...]:
        m = (1 << EXP_BITS) - 1
        return tuple((key >> (EXP_BITS * j)) & m for j in range(self.nvars))

    def divides(self, a: int, b: int) -> bool:
        g = self._guard
        lm = self._low_mask
        return ((b & lm | g) - (a & lm)) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.encode([max(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def check_overflow(self, keys: Iterable[int]) -> None:
        g = self._guard
        for k in keys:
            if k & g:
                raise ExponentOverflow(f"exponent exceeds {MAX_EXPONENT}")

    # -- constructors --------------------------------------------------

    def __call__(self, src: str | int) -> "Polynomial":
        if isinstance(src, int):
            return self.constant(src)
        from castelnuovo.polyring.parse import parse_polynomial
        return parse_polynomial(src, self)

    def constant(self, c: int) -> "Polynomial":
        c %= self.characteristic
        return Polynomial(self, ((0, c),) if c else ())

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def var(self, name: str) -> "Polynomial":
        return Polynomial(self, ((self._columns[self.index(name)], 1),))

    @property
    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        c = coeff % self.characteristic
        return Polynomial(self, ((self.encode(exps), c),) if c else ())

    def from_dict(self, terms: Mapping[Sequence[int], int]) -> "Polynomial":
        acc: dict[int, int] = {}
        for exps, c in terms.items():
            k = self.encode(exps)
            acc[k] = acc.get(k, 0) + c
        return Polynomial._from_acc(self, acc)

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.variables, self.characteristic, order)

    def header(self) -> str:
        return (f"ring p={self.characteristic} vars={','.join(self.variables)} "
                f"order={self.order.spec()}")

    def __str__(self):
        return self.header()


class Polynomial:
    """An immutable sparse polynomial; terms are kept sorted by decreasing monomial."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: tuple = ()):
        # trusted constructor: terms are (key, coeff) pairs, nonzero, sorted descending
        self.ring = ring
        self._terms = terms
        self._hash = None

    @classmethod
    def _from_acc(cls, ring: Ring, acc: dict) -> "Polynomial":
        p = ring.characteristic
        items = []
        for k, c in acc.items():
            c %= p
            if c:
                items.append((k, c))
        items.sort(reverse=True)
        return cls(ring, tuple(items))

    # -- inspection ---------------------------------------------------

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """``(exponent vector, coefficient)`` pairs in decreasing order."""
        dec = self.ring.decode
        return [(dec(k), c) for k, c in self._terms]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    @property
    def leading_monomial(self) -> tuple[int, ...]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.ring.decode(self._terms[0][0])

    @property
    def leading_coefficient(self) -> int:
        return self._terms[0][1] if self._terms else 0

    def degree(self, weights: Sequence[int] | None = None) -> int:
        """Total (or weighted) degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(_wdeg(e, weights) for e, _ in self.terms())

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [self.ring.index(v) for v in names]
        if not self._terms:
            return -1
        return max(sum(e[i] for i in idx) for e, _ in self.terms())

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        return len({_wdeg(e, weights) for e, _ in self.terms()}) <= 1

    def variables_used(self) -> set[str]:
        used = set()
        for e, _ in self.terms():
            used.update(v for v, x in zip(self.ring.variables, e) if x)
        return used

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for k, c in other._terms:
            acc[k] = acc.get(k, 0) + c
        return Polynomial._from_acc(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.characteristic
        return Polynomial(self.ring, tuple((k, p - c) for k, c in self._terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.characteristic
        c %= p
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, tuple((k, x * c % p) for k, x in self._terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._terms) < len(other._terms):
            a, b = self._terms, other._terms
        else:
            a, b = other._terms, self._terms
        acc: dict[int, int] = {}
        get = acc.get
        for k1, c1 in a:
            for k2, c2 in b:
                k = k1 + k2
                acc[k] = get(k, 0) + c1 * c2
        self.ring.check_overflow(acc)
        return Polynomial._from_acc(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(pow(self._terms[0][1], -1, self.ring.characteristic))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self._terms))
        return self._hash

    # -- calculus and substitution -------------------------------------

    def diff(self, var: str) -> "Polynomial":
        return differentiate(self, var)

    def subs(self, mapping: Mapping[str, "Polynomial | int"], target: Ring | None = None):
        return substitute(self, mapping, target)

    def __str__(self):
        from castelnuovo.polyring.parse import format_polynomial
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _wdeg(e: Sequence[int], weights: Sequence[int] | None) -> int:
    if weights is None:
        return sum(e)
    return sum(w * x for w, x in zip(weights, e))


def differentiate(f: Polynomial, var: str) -> Polynomial:
    """Formal partial derivative with respect to ``var``."""
    ring = f.ring
    i = ring.index(var)
    acc = {}
    for e, c in f.terms():
        if e[i]:
            d = list(e)
            d[i] -= 1
            acc[ring.encode(d)] = c * e[i]
    return Polynomial._from_acc(ring, acc)


def substitute(f: Polynomial, mapping: Mapping[str, "Polynomial | int"],
               target: Ring | None = None) -> Polynomial:
    """Image of ``f`` under the ring map sending each variable to ``mapping[var]``."""
    ring = f.ring
    images = [mapping[v] if v in mapping else None for v in ring.variables]
    if target is None:
        rings = {g.ring for g in images if isinstance(g, Polynomial)}
        if len(rings) > 1:
            raise RingMismatch("substitution images live in different rings")
        target = rings.pop() if rings else ring
    used = [any(e[i] for e, _ in f.terms()) for i in range(ring.nvars)]
    for v, g, u in zip(ring.variables, images, used):
        if g is None and u:
            raise ValueError(f"substitution map has no image for {v!r}")
    imgs = []
    for g in images:
        if isinstance(g, int):
            g = target.constant(g)
        elif isinstance(g, Polynomial) and g.ring != target:
            raise RingMismatch(f"image lives in {g.ring}, expected {target}")
        imgs.append(g)
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(i, n):
        if (i, n) not in powers:
            powers[(i, n)] = imgs[i] ** n
        return powers[(i, n)]

    acc: dict[int, int] = {}
    for e, c in f.terms():
        t = target.constant(c)
        for i, n in enumerate(e):
            if n:
                t = t * power(i, n)
        for k, x in t._terms:
            acc[k] = acc.get(k, 0) + x
    return Polynomial._from_acc(target, acc)
