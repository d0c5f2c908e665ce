"""Acceptance criteria, one marked group per criterion.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section of the terminal summary for the per-criterion verdicts.
"""

import random

import numpy as np
import pytest

import oracles
from castelnuovo.groebner import (
    HilbertProfile,
    Ideal,
    PolyMatrix,
    buchberger,
    hilbert_profile,
    ideal_member,
    map_kernel,
    membership_certificate,
    minimal_power,
    minors,
    normal_form,
    radical_member,
    s_polynomials_reduce_to_zero,
)
from castelnuovo.invariants import (
    BundleClass,
    castelnuovo_class,
    castelnuovo_numbers,
    chow_intersect,
    enumerate_type2,
    node_count,
)
from castelnuovo.polyring import MonomialOrder, Ring
from castelnuovo.surfgeom import (
    APPENDIX_CONICS,
    APPENDIX_POINTS,
    appendix_spec,
    chart_closure,
    non_nodal_ideal,
    verify,
)

criterion = pytest.mark.criterion


# -- AC1 ------------------------------------------------------------------------------

@pytest.fixture(scope="module")
def appendix_report():
    return verify(APPENDIX_POINTS, APPENDIX_CONICS)


@criterion("AC1", "appendix surface: 6 nodal charts and singular locus (5, 32)")
def test_appendix_charts_nodal(appendix_report):
    charts = appendix_report.charts
    assert [c.chart for c in charts] == ["s,x0", "s,x1", "s,x2", "t,x0", "t,x1", "t,x2"]
    assert all(c.nodal_ok for c in charts)


@criterion("AC1", "appendix surface: 6 nodal charts and singular locus (5, 32)")
def test_appendix_segre_profile(appendix_report):
    assert appendix_report.segre == HilbertProfile(5, 32)
    assert appendix_report.passed and appendix_report.even_set


# -- AC2 ------------------------------------------------------------------------------

@pytest.fixture(scope="module")
def chart_s_x0():
    hc = chart_closure(appendix_spec(), ("s", "x0"))
    return hc, buchberger(non_nodal_ideal(hc))


@criterion("AC2", "chart (s,x0): w in the radical, some w^N with N <= 30 reduces to 0")
def test_chart_radical_membership(chart_s_x0):
    hc, ideal = chart_s_x0
    w = hc.ring.var("w")
    assert radical_member(w, ideal)


@criterion("AC2", "chart (s,x0): w in the radical, some w^N with N <= 30 reduces to 0")
def test_chart_power_mode(chart_s_x0):
    hc, ideal = chart_s_x0
    w = hc.ring.var("w")
    n = minimal_power(w, ideal, 30)
    assert n is not None and n <= 30
    assert normal_form(w ** 30, ideal.gb_cache.basis).is_zero()


# -- AC3 ------------------------------------------------------------------------------

@criterion("AC3", "node counts 20, 32, 32")
@pytest.mark.parametrize("p_g,q,nodes", [(4, 0, 20), (5, 2, 32), (6, 1, 32)])
def test_node_count(p_g, q, nodes):
    assert node_count(p_g, q) == nodes


# -- AC4 / AC5 ------------------------------------------------------------------------

RECORDS = enumerate_type2(30)


@criterion("AC4", "4(1+p_g+q) = 16g+16 on every type-II record")
def test_consistency_identity():
    assert RECORDS
    bad = [r for r in RECORDS if 4 * (1 + r.p_g + r.q) != 16 * r.g + 16]
    assert not bad
    assert all(all(r.flags.values()) for r in RECORDS)


@criterion("AC4", "4(1+p_g+q) = 16g+16 on every type-II record")
def test_record_count():
    # (g-2, g, g) is not a valid type at g = 1, so family c starts at g = 2
    assert len(RECORDS) == 58


@criterion("AC5", "maximal genera 26, 17, 8")
def test_enumerator_bounds():
    top = {}
    for r in RECORDS:
        top[r.family] = max(top.get(r.family, 0), r.g)
    assert top == {"a": 26, "b": 17, "c": 8}
    assert enumerate_type2(100) == RECORDS


# -- AC6 ------------------------------------------------------------------------------

@criterion("AC6", "Chow ring K^2 equals 3(a+b+c)+2 for c <= 5")
def test_chow_agreement():
    count = 0
    for c in range(6):
        for b in range(c + 1):
            for a in range(b + 1):
                t = BundleClass.T((a, b, c))
                k2 = chow_intersect(t, t, castelnuovo_class((a, b, c)))
                assert k2 == 3 * (a + b + c) + 2 == castelnuovo_numbers(a, b, c).K2
                count += 1
    assert count == 56


# -- AC7 ------------------------------------------------------------------------------

P = 101


def random_ideals():
    out = []
    rng = random.Random(7)
    for i in range(12):
        n = 2 + i % 3
        order = [MonomialOrder.grevlex(), MonomialOrder.lex()][i % 2]
        ring = Ring([f"x{j}" for j in range(n)], P, order)
        gens = []
        for _ in range(rng.randint(2, 3)):
            terms = {tuple(rng.randint(0, 2) for _ in range(n)): rng.randrange(1, P)
                     for _ in range(rng.randint(2, 4))}
            gens.append(ring.from_dict(terms))
        out.append(Ideal(ring, gens))
    return out


IDEALS = random_ideals()


@criterion("AC7", "Groebner engine property suite")
@pytest.mark.parametrize("case", range(len(IDEALS)))
def test_generators_reduce_to_zero(case):
    ideal = buchberger(IDEALS[case])
    basis = ideal.gb_cache.basis
    assert all(normal_form(g, basis).is_zero() for g in ideal.generators)


@criterion("AC7", "Groebner engine property suite")
@pytest.mark.parametrize("case", range(len(IDEALS)))
def test_s_polynomials_reduce(case):
    basis = buchberger(IDEALS[case]).gb_cache.basis
    assert s_polynomials_reduce_to_zero(basis)


@criterion("AC7", "Groebner engine property suite")
def test_chart_basis_properties(chart_s_x0):
    _, ideal = chart_s_x0
    basis = ideal.gb_cache.basis
    assert all(normal_form(g, basis).is_zero() for g in ideal.generators)
    assert s_polynomials_reduce_to_zero(basis)


@criterion("AC7", "Groebner engine property suite")
@pytest.mark.parametrize("case", range(len(IDEALS)))
def test_certificates_reverify(case):
    ideal = IDEALS[case]
    ring = ideal.ring
    rng = random.Random(case)
    gens = list(ideal.generators)
    # a known member: random combination of the generators
    f = ring.zero
    for g in gens:
        f = f + g * ring.from_dict({tuple(rng.randint(0, 2) for _ in ring.variables): rng.randrange(P)})
    for target in [f] + list(buchberger(ideal).gb_cache.basis)[:4]:
        cof = membership_certificate(target, ideal)
        assert cof is not None and len(cof) == len(gens)
        assert sum((c * g for c, g in zip(cof, gens)), ring.zero) == target


@criterion("AC7", "Groebner engine property suite")
@pytest.mark.parametrize("p", [101, 31991])
def test_segre_kernel_equals_minors(p):
    src = Ring(("s", "t", "x0", "x1", "x2"), p)
    tgt = Ring([f"y{i}" for i in range(6)], p)
    images = [src.var(b) * src.var(f) for b in ("s", "t") for f in ("x0", "x1", "x2")]
    kernel = map_kernel(src, tgt, images)
    y = tgt.gens
    mins = Ideal(tgt, minors(PolyMatrix.from_rows([y[:3], y[3:]]), 2))
    assert all(ideal_member(g, mins) for g in kernel.generators)
    assert all(ideal_member(g, kernel) for g in mins.generators)


# -- AC8 ------------------------------------------------------------------------------

def point_cases():
    rng = np.random.default_rng(8)
    cases = []
    for i in range(24):
        n = 2 + i % 3
        k = 1 + (i * 5) % 7
        cases.append((n, k, oracles.random_points(rng, n, k, P)))
    return cases


POINTS = point_cases()
PROJ = {n: oracles.projective_points(n, P) for n in (2, 3, 4)}


@criterion("AC8", "Hilbert degree equals point count on >= 20 point ideals")
@pytest.mark.parametrize("case", range(len(POINTS)))
def test_point_ideal_degree(case):
    n, k, pts = POINTS[case]
    ring = Ring([f"x{i}" for i in range(n)], P)
    ideal = Ideal(ring, [ring.from_dict(f) for f in oracles.forms_through(pts, n, k, P)])
    zeros = oracles.common_zeros([g.terms() for g in ideal.generators], n, P, PROJ[n])
    assert hilbert_profile(ideal) == HilbertProfile(n - 1, len(zeros))
    assert len(zeros) == k


@criterion("AC8", "Hilbert degree equals point count on >= 20 point ideals")
def test_point_case_count():
    assert len(POINTS) >= 20 and max(n for n, _, _ in POINTS) <= 4


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
