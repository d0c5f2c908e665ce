"""Bidegree (4,3) divisors of P^1 x P^2 with four prescribed double fibres.

Given points z_1..z_4 of P^1, conics Q_1..Q_4 and nonzero weights, the
surface is ``h = sum_i lambda_i * l_i(s, t) * Q_i(x)^2`` where ``l_i`` is the
cubic form on P^1 vanishing at the other three points, so the fibre over
``z_i`` is the double conic ``Q_i^2``.  The module checks chart by chart that
its singularities are at most nodes, embeds it in P^5 by the Segre map and
reads the length of the singular locus from a Hilbert series.
"""

from __future__ import annotations

import logging
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from castelnuovo.groebner import (
    Ideal,
    buchberger,
    derivative_matrix,
    hilbert_profile,
    map_kernel,
    minimal_power,
    minors,
    radical_member,
    to_ring,
)
from castelnuovo.groebner.hilbert import HilbertProfile
from castelnuovo.polyring import (
    DEFAULT_CHARACTERISTIC,
    Polynomial,
    Ring,
    parse_polynomial,
    parse_ring,
)

log = logging.getLogger(__name__)

NODES_PER_DOUBLE_FIBRE = 8
APPENDIX_POINTS = ((1, 0), (0, 1), (1, -1), (1, 1))
APPENDIX_CONICS = (
    "x0^2+x1^2+x2^2",
    "x0^2+x1^2-x2^2",
    "x0*x1+x0*x2+x1*x2",
    "x0^2+5*x0*x1+2*x1^2+7*x0*x2+11*x1*x2+3*x2^2",
)


class SurfaceError(ValueError):
    """Input data violating the construction's preconditions."""


class SurfaceFileError(SurfaceError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line else message)


def default_ring(p: int = DEFAULT_CHARACTERISTIC) -> Ring:
    return Ring(("s", "t", "x0", "x1", "x2"), p)


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                c = m[i][col]
                m[i] = [(x - c * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class SurfaceSpec:
    ring: Ring
    points: tuple[tuple[int, int], ...]
    conics: tuple[Polynomial, ...]
    lambdas: tuple[int, ...]
    h: Polynomial

    @property
    def base_vars(self) -> tuple[str, str]:
        return self.ring.variables[0], self.ring.variables[1]

    @property
    def fibre_vars(self) -> tuple[str, str, str]:
        return self.ring.variables[2], self.ring.variables[3], self.ring.variables[4]

    def fibre(self, point: tuple[int, int]) -> Polynomial:
        s, t = self.base_vars
        return self.h.subs({s: point[0], t: point[1], **{v: self.ring.var(v) for v in self.fibre_vars}})


def point_form(ring: Ring, point: tuple[int, int]) -> Polynomial:
    """The linear form on P^1 vanishing at ``point``."""
    s, t = ring.variables[:2]
    a, b = point
    return ring.var(s) * b - ring.var(t) * a


def conic_matrix(q: Polynomial, names: Sequence[str]) -> list[list[int]]:
    """Symmetric coefficient matrix of a ternary quadratic form."""
    p = q.ring.characteristic
    half = pow(2, -1, p)
    idx = [q.ring.index(v) for v in names]
    a = [[0] * 3 for _ in range(3)]
    for e, c in q.terms():
        occ = [i for i, j in enumerate(idx) for _ in range(e[j])]
        if len(occ) != 2 or sum(e) != 2:
            raise SurfaceError(f"{q} is not a quadratic form in {', '.join(names)}")
        i, j = occ
        if i == j:
            a[i][i] = c
        else:
            a[i][j] = a[j][i] = c * half % p
    return a


def _check_inputs(ring: Ring, points, conics, lambdas) -> None:
    p = ring.characteristic
    k = len(points)
    if k != 4:
        raise SurfaceError(f"need 4 points of P^1, got {k}")
    if not (len(conics) == len(lambdas) == k):
        raise SurfaceError("need one conic and one weight per point")
    for a, b in points:
        if a % p == 0 and b % p == 0:
            raise SurfaceError("(0,0) is not a point of P^1")
    for i in range(k):
        for j in range(i):
            (a, b), (c, d) = points[i], points[j]
            if (a * d - b * c) % p == 0:
                raise SurfaceError(f"points z_{j + 1} and z_{i + 1} coincide in P^1")
    names = ring.variables[2:]
    for i, q in enumerate(conics):
        if rank_mod_p(conic_matrix(q, names), p) < 2:
            raise SurfaceError(f"conic Q_{i + 1} = {q} is not reduced")
    for i, lam in enumerate(lambdas):
        if lam % p == 0:
            raise SurfaceError(f"weight lambda_{i + 1} is zero")
    squares = [(q * q).as_dict() for q in conics]
    monos = sorted({m for sq in squares for m in sq})
    if rank_mod_p([[sq.get(m, 0) for m in monos] for sq in squares], p) < k:
        raise SurfaceError("the squared conics are linearly dependent")


def build_sigma(points: Sequence[tuple[int, int]], conics: Sequence[Polynomial | str],
                lambdas: Sequence[int] = (1, 1, 1, 1), ring: Ring | None = None) -> SurfaceSpec:
    """Assemble ``h`` from the double-fibre data after checking the preconditions."""
    ring = ring or default_ring()
    if ring.nvars != 5:
        raise SurfaceError("ring must have variables (s, t, x0, x1, x2) of P^1 x P^2")
    p = ring.characteristic
    points = tuple((a % p, b % p) for a, b in points)
    conics = tuple(ring(q) if isinstance(q, str) else q for q in conics)
    lambdas = tuple(int(l) % p for l in lambdas)
    _check_inputs(ring, points, conics, lambdas)
    forms = [point_form(ring, z) for z in points]
    h = ring.zero
    for i, (q, lam) in enumerate(zip(conics, lambdas)):
        lag = ring.constant(lam)
        for j, f in enumerate(forms):
            if j != i:
                lag = lag * f
        h = h + lag * q * q
    spec = SurfaceSpec(ring, points, conics, lambdas, h)
    if any(sum(e[:2]) != 3 or sum(e[2:]) != 4 for e, _ in h.terms()) or not h:
        raise SurfaceError("h is not of bidegree (4,3)")
    for z, q in zip(points, conics):
        if not _proportional(spec.fibre(z), to_ring(q * q, spec.fibre(z).ring)):
            raise SurfaceError(f"fibre over {z} is not proportional to the squared conic")
    return spec


def _proportional(f: Polynomial, g: Polynomial) -> bool:
    if not f or not g:
        return False
    p = f.ring.characteristic
    c = f.leading_coefficient * pow(g.leading_coefficient, -1, p)
    return f == g.scale(c)


# -- nodality, chart by chart -------------------------------------------

CHART_ORDER = (("s", "x0"), ("s", "x1"), ("s", "x2"), ("t", "x0"), ("t", "x1"), ("t", "x2"))


@dataclass(frozen=True)
class ChartReport:
    chart: str
    nodal_ok: bool
    gb_degree_reached: int
    certificate: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {"chart": self.chart, "nodal_ok": self.nodal_ok,
               "degree_reached": self.gb_degree_reached}
        out.update(self.certificate)
        return out


def chart_names(spec: SurfaceSpec) -> list[tuple[str, str]]:
    base, fibre = spec.base_vars, spec.fibre_vars
    return [(b, f) for b in base for f in fibre]


def chart_closure(spec: SurfaceSpec, chart: tuple[str, str]) -> Polynomial:
    """Closure in P^3 of the surface on the chart where both chart variables are nonzero.

    Both inverted variables become the homogenizing variable ``w``; the
    result lives in the ring (other base var, other two fibre vars, w).
    """
    b, f = chart
    base, fibre = spec.base_vars, spec.fibre_vars
    if b not in base or f not in fibre:
        raise SurfaceError(f"invalid chart {chart}: need one of {base} and one of {fibre}")
    keep = [v for v in base if v != b] + [v for v in fibre if v != f]
    w = "w"
    while w in spec.ring.variables:
        w += "_"
    target = Ring(keep + [w], spec.ring.characteristic)
    mapping = {v: target.var(v) for v in keep}
    mapping[b] = mapping[f] = target.var(w)
    return spec.h.subs(mapping, target)


def non_nodal_ideal(h_chart: Polynomial) -> Ideal:
    """Partials of ``h_chart`` together with the 3x3 minors of its Hessian.

    ``h_chart`` itself lies in this ideal by Euler's identity, which needs the
    degree to be invertible in the field.
    """
    ring = h_chart.ring
    if ring.nvars != 4 or not h_chart.is_homogeneous() or not h_chart:
        raise SurfaceError("expected a nonzero form in 4 variables")
    d = h_chart.degree()
    if d % ring.characteristic == 0:
        raise SurfaceError(f"characteristic {ring.characteristic} divides the degree {d}")
    partials = [h_chart.diff(v) for v in ring.variables]
    hess = derivative_matrix([h_chart], "hessian")
    gens = list(dict.fromkeys(partials + minors(hess, 3)))
    return Ideal(ring, gens)


def affine_non_nodal_ideal(h_chart: Polynomial) -> Ideal:
    """Affine variant: set the last variable to 1 and use the 3x3 Hessian determinant."""
    ring = h_chart.ring
    names = ring.variables[:-1]
    aff = Ring(names, ring.characteristic)
    mapping = {v: aff.var(v) for v in names}
    mapping[ring.variables[-1]] = aff.one
    f = h_chart.subs(mapping, aff)
    gens = [f] + [f.diff(v) for v in names] + minors(derivative_matrix([f], "hessian"), 3)
    return Ideal(aff, gens)


def check_chart(spec: SurfaceSpec, chart: tuple[str, str], power: int | None = None,
                affine: bool = False) -> ChartReport:
    hc = chart_closure(spec, chart)
    ideal = buchberger(non_nodal_ideal(hc))
    w = hc.ring.var(hc.ring.variables[-1])
    if power is None:
        ok = radical_member(w, ideal)
        cert = {"method": "radical"}
    else:
        n = minimal_power(w, ideal, power)
        ok = n is not None
        cert = {"method": "power", "power": n}
    if affine:
        aff_ok = affine_non_nodal_ideal(hc).is_unit()
        cert["affine_nodal_ok"] = aff_ok
    report = ChartReport(",".join(chart), ok, ideal.gb_cache.degree_reached, cert)
    log.info("chart %s: nodal_ok=%s degree %d", report.chart, ok, report.gb_degree_reached)
    return report


def _check_chart_args(args):
    return check_chart(*args)


def verify_nodal(spec: SurfaceSpec, power: int | None = None, jobs: int = 1,
                 affine: bool = False) -> list[ChartReport]:
    """One report per standard chart, in the fixed order (s,x0), (s,x1), ..., (t,x2)."""
    charts = chart_names(spec)
    args = [(spec, c, power, affine) for c in charts]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_check_chart_args, args))
    return [check_chart(*a) for a in args]


# -- Segre embedding and the singular locus -----------------------------

@dataclass(frozen=True)
class SegreResult:
    ring: Ring
    surface: Ideal
    surface_profile: HilbertProfile
    singular: Ideal
    profile: HilbertProfile


def segre_ring(spec: SurfaceSpec) -> Ring:
    return Ring([f"y{i}" for i in range(6)], spec.ring.characteristic)


def segre_images(spec: SurfaceSpec) -> list[Polynomial]:
    r = spec.ring
    return [r.var(b) * r.var(f) for b in spec.base_vars for f in spec.fibre_vars]


def segre_singular_profile(spec: SurfaceSpec) -> SegreResult:
    """Ideal of the surface in P^5, its singular locus, and the locus' Hilbert profile."""
    target = segre_ring(spec)
    surface = map_kernel(spec.ring, target, segre_images(spec), [spec.h])
    sprof = hilbert_profile(surface)
    jac = derivative_matrix(list(surface.generators), "jacobian")
    sing = surface + minors(jac, sprof.codimension)
    log.info("singular locus: %d generators", len(sing.generators))
    return SegreResult(target, surface, sprof, sing, hilbert_profile(sing))


def double_fibre_forms(spec: SurfaceSpec, segre: Ring) -> list[Polynomial]:
    """Quartics in P^5 vanishing exactly on the union of the prescribed fibres.

    ``prod_i (b_i s - a_i t) * x_k`` rewritten in Segre coordinates, one per fibre
    variable ``x_k``.
    """
    out = []
    for k in range(3):
        f = segre.one
        for a, b in spec.points:
            # (b s - a t) x_k = b y_k - a y_{3+k}
            f = f * (segre.var(f"y{k}") * b - segre.var(f"y{3 + k}") * a)
        out.append(f)
    return out


def even_set_check(spec: SurfaceSpec, singular: Ideal) -> bool:
    """Even number of double fibres, and every singular point on one of them."""
    k = len(spec.points)
    if k < 2 or k % 2:
        return False
    return all(radical_member(f, singular) for f in double_fibre_forms(spec, singular.ring))


# -- full pipeline ---------------------------------------------------------

@dataclass
class VerificationReport:
    charts: list[ChartReport]
    segre: HilbertProfile | None
    expected_nodes: int
    even_set: bool
    lambdas: tuple[int, ...]
    attempts: int

    @property
    def passed(self) -> bool:
        return (len(self.charts) == 6 and all(c.nodal_ok for c in self.charts)
                and self.segre == HilbertProfile(5, self.expected_nodes))

    def to_json(self) -> dict:
        return {
            "charts": [c.to_json() for c in self.charts],
            "segre": None if self.segre is None else
            {"codim": self.segre.codimension, "degree": self.segre.degree},
            "expected_nodes": self.expected_nodes,
            "even_set": self.even_set,
            "passed": self.passed,
            "lambda": list(self.lambdas),
            "attempts": self.attempts,
        }


def expected_nodes(spec: SurfaceSpec) -> int:
    return NODES_PER_DOUBLE_FIBRE * len(spec.points)


def verify_spec(spec: SurfaceSpec, power: int | None = None, jobs: int = 1,
                affine: bool = False, attempt: int = 1) -> VerificationReport:
    charts = verify_nodal(spec, power, jobs, affine)
    segre, even = None, False
    if all(c.nodal_ok for c in charts):
        res = segre_singular_profile(spec)
        segre = res.profile
        even = even_set_check(spec, res.singular)
    return VerificationReport(charts, segre, expected_nodes(spec), even, spec.lambdas, attempt)


def verify(points: Sequence[tuple[int, int]], conics: Sequence[Polynomial | str],
           lambdas: Sequence[int] | None = None, ring: Ring | None = None,
           seed: int | None = 0, retries: int = 5, power: int | None = None,
           jobs: int = 1, affine: bool = False) -> VerificationReport:
    """Build the surface and verify it, redrawing random weights if a check fails.

    The first attempt uses ``lambdas`` (default all ones); each retry draws
    nonzero weights from ``random.Random(seed)``.
    """
    ring = ring or default_ring()
    p = ring.characteristic
    rng = random.Random(seed)
    lam = tuple(lambdas) if lambdas is not None else (1,) * len(points)
    report = None
    for attempt in range(1, retries + 2):
        spec = build_sigma(points, conics, lam, ring)
        report = verify_spec(spec, power, jobs, affine, attempt)
        if report.passed:
            break
        log.info("attempt %d with lambda=%s failed", attempt, lam)
        lam = tuple(rng.randrange(1, p) for _ in points)
    return report


def appendix_spec(lambdas: Sequence[int] = (1, 1, 1, 1)) -> SurfaceSpec:
    return build_sigma(APPENDIX_POINTS, APPENDIX_CONICS, lambdas)


# -- input files ---------------------------------------------------------------

@dataclass
class SurfaceInput:
    ring: Ring
    points: list[tuple[int, int]]
    conics: list[Polynomial]
    lambdas: list[int] | None = None
    power: int | None = None


_POINT = re.compile(r"^\(\s*([-+]?\d+)\s*,\s*([-+]?\d+)\s*\)$")


def parse_surface_file(text: str, transcript: bool = False) -> SurfaceInput:
    """Read a ring header, four ``point =`` and ``conic =`` lines, optional ``lambda``/``power``."""
    ring = None
    points, conics = [], []
    lambdas = power = None
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ring"):
            if ring is not None:
                raise SurfaceFileError("second ring declaration", num)
            try:
                ring = parse_ring(line)
            except ValueError as e:
                raise SurfaceFileError(str(e), num) from None
            if ring.nvars != 5:
                raise SurfaceFileError("ring must have exactly 5 variables (P^1 then P^2)", num)
            continue
        key, eq, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not eq:
            raise SurfaceFileError(f"expected 'key = value', got {line!r}", num)
        if ring is None:
            ring = default_ring()
        try:
            if key == "point":
                m = _POINT.match(value)
                if not m:
                    raise ValueError(f"bad point {value!r}")
                points.append((int(m.group(1)), int(m.group(2))))
            elif key == "conic":
                conics.append(parse_polynomial(value, ring, transcript=transcript))
            elif key == "lambda":
                lambdas = [int(x) for x in value.split(",")]
            elif key == "power":
                power = int(value)
                if power < 1:
                    raise ValueError("power must be positive")
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as e:
            raise SurfaceFileError(str(e), num) from None
    if ring is None:
        raise SurfaceFileError("empty surface file")
    if ring.nvars != 5:
        raise SurfaceFileError("ring must have exactly 5 variables (P^1 then P^2)")
    if len(points) != 4 or len(conics) != 4:
        raise SurfaceFileError(f"need 4 points and 4 conics, got {len(points)} and {len(conics)}")
    if lambdas is not None and len(lambdas) != 4:
        raise SurfaceFileError("lambda needs 4 values")
    return SurfaceInput(ring, points, conics, lambdas, power)
