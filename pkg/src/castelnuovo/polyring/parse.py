"""Text format for rings and polynomials.

Grammar::

    poly  := sign? term (('+' | '-') term)*
    term  := coeff? ('*'? var ('^' nat)?)*
    coeff := nat ('/' nat)?
    ring  := 'ring' 'p=' prime 'vars=' name (',' name)* 'order=' order
    order := 'grevlex' | 'lex' | 'block:' k | 'weight:' w1 ',' ... ',' wn

Variables are matched longest-first against the ring's names, so ``x0x1``
reads as ``x0*x1``.  With ``transcript=True`` digits directly after a
variable are an exponent, which accepts Macaulay-style input such as
``x[0]2+5x[0]x[1]``.
"""

from __future__ import annotations

import re

from castelnuovo.polyring.order import MonomialOrder
from castelnuovo.polyring.ring import DEFAULT_CHARACTERISTIC, Polynomial, Ring

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_\[\]]*")
_NAT = re.compile(r"[0-9]+")


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, src: str, pos: int):
        self.src = src
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {src[:pos]}<HERE>{src[pos:]}")


class _Parser:
    def __init__(self, src: str, ring: Ring, transcript: bool):
        self.src = src
        self.ring = ring
        self.transcript = transcript
        self.pos = 0
        self.names = sorted(ring.variables, key=len, reverse=True)

    def error(self, msg, pos=None):
        raise PolynomialSyntaxError(msg, self.src, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def nat(self) -> int | None:
        self.skip()
        m = _NAT.match(self.src, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return int(m.group())

    def variable(self) -> int | None:
        self.skip()
        for name in self.names:
            if self.src.startswith(name, self.pos):
                self.pos += len(name)
                return self.ring.index(name)
        m = _IDENT.match(self.src, self.pos)
        if m:
            self.error(f"unknown variable {m.group()!r}")
        return None

    def coefficient(self) -> int | None:
        start = self.pos
        num = self.nat()
        if num is None:
            return None
        p = self.ring.characteristic
        if self.peek() == "/":
            self.pos += 1
            den = self.nat()
            if den is None:
                self.error("expected denominator")
            if den % p == 0:
                self.error(f"coefficient {num}/{den} is not reducible mod {p}", start)
            return num * pow(den, -1, p) % p
        return num % p

    def term(self, acc: dict, sign: int):
        start = self.pos
        c = self.coefficient()
        exps = [0] * self.ring.nvars
        seen_factor = c is not None
        while True:
            save = self.pos
            star = self.peek() == "*"
            if star:
                self.pos += 1
            v = self.variable()
            if v is None:
                if star:
                    self.error("expected variable after '*'")
                self.pos = save
                break
            e = 1
            if self.peek() == "^":
                self.pos += 1
                e = self.nat()
                if e is None:
                    self.error("expected exponent after '^'")
            elif self.transcript:
                m = _NAT.match(self.src, self.pos)
                if m:
                    self.pos = m.end()
                    e = int(m.group())
            exps[v] += e
            seen_factor = True
        if not seen_factor:
            self.error("expected a term", start)
        k = self.ring.encode(exps)
        acc[k] = acc.get(k, 0) + sign * (1 if c is None else c)

    def poly(self) -> Polynomial:
        acc: dict[int, int] = {}
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.src[self.pos] == "-" else 1
            self.pos += 1
        self.term(acc, sign)
        while True:
            ch = self.peek()
            if not ch:
                break
            if ch not in "+-":
                self.error(f"unexpected character {ch!r}")
            self.pos += 1
            self.term(acc, -1 if ch == "-" else 1)
        return Polynomial._from_acc(self.ring, acc)


def parse_polynomial(src: str, ring: Ring, transcript: bool = False) -> Polynomial:
    """Parse ``src`` into a polynomial of ``ring``."""
    return _Parser(src, ring, transcript).poly()


def parse_order(text: str) -> MonomialOrder:
    text = text.strip()
    if text in ("grevlex", "lex"):
        return MonomialOrder(text)
    if text.startswith("block:"):
        try:
            return MonomialOrder.block(int(text[6:]))
        except ValueError:
            raise ValueError(f"bad block order {text!r}") from None
    if text.startswith("weight:"):
        try:
            return MonomialOrder.weighted([int(w) for w in text[7:].split(",")])
        except ValueError:
            raise ValueError(f"bad weight order {text!r}") from None
    raise ValueError(f"unknown monomial order {text!r}")


def parse_ring(line: str) -> Ring:
    """Parse a ``ring p=... vars=... order=...`` declaration."""
    parts = line.split()
    if not parts or parts[0] != "ring":
        raise ValueError("ring declaration must start with 'ring'")
    fields = {}
    for part in parts[1:]:
        key, eq, value = part.partition("=")
        if not eq or key not in ("p", "vars", "order") or key in fields:
            raise ValueError(f"bad ring field {part!r}")
        fields[key] = value
    if "vars" not in fields:
        raise ValueError("ring declaration needs vars=")
    p = int(fields.get("p", DEFAULT_CHARACTERISTIC))
    order = parse_order(fields.get("order", "grevlex"))
    return Ring(fields["vars"].split(","), p, order)


def _coeff_text(c: int, p: int) -> tuple[str, str]:
    if c > p // 2:
        return "-", str(p - c)
    return "+", str(c)


def format_polynomial(f: Polynomial) -> str:
    """Render ``f`` in the grammar understood by :func:`parse_polynomial`."""
    if f.is_zero():
        return "0"
    ring = f.ring
    out = []
    for exps, c in f.terms():
        sign, mag = _coeff_text(c, ring.characteristic)
        factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(ring.variables, exps) if e]
        if mag != "1" or not factors:
            factors.insert(0, mag)
        body = "*".join(factors)
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(sign + body)
    return "".join(out)
