"""
Acceptance criteria, one test per criterion.  All comparisons are exact.

A line ``[PASS] n. title`` / ``[FAIL] n. title`` is printed per criterion in
the terminal summary.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from affinehecke import bernstein as bn
from affinehecke import tadic, weyl
from affinehecke.coeff import SYMBOLIC, CoeffMode, RatFunc, to_rat
from affinehecke.errors import InvalidParameter
from affinehecke.hecke import (HeckeConfig, basis, from_laurent, gen, invert_monomial, laurent_convolve,
                               laurent_form, mul, relation_check, unit)
from affinehecke.iso import verify_isomorphism
from affinehecke.parser import evaluate, pretty

from conftest import FIXTURES, random_element


def _elapsed(label, start):
    print(f"{label}: {time.perf_counter() - start:.2f} s")


@pytest.mark.acceptance(1, "relation suite (R0)-(R5), r = 1..5, symbolic")
def test_relation_suite():
    start = time.perf_counter()
    for r in range(1, 6):
        report = relation_check(HeckeConfig.symbolic(r))
        assert report.passed, [res.name for res in report.results if not res.passed]
    _elapsed("relation suite", start)


def _bfs_lengths_independent(rank, max_len):
    """Word lengths by BFS over s_0..s_{r-1} from every t^k, written against compose only."""
    gens = [weyl.generator(rank, i) for i in range(rank)]
    out = {}
    for d in range(-max_len, max_len + 1):
        start = weyl.omega_element(rank, -d)
        frontier, out[start] = [start], 0
        for depth in range(1, max_len + 1):
            nxt = []
            for w in frontier:
                for g in gens:
                    x = weyl.compose(w, g)
                    if x not in out:
                        out[x] = depth
                        nxt.append(x)
            frontier = nxt
    return out


@pytest.mark.acceptance(2, "closed-form length equals BFS length, r = 2,3,4, max_len 6")
def test_length_oracle():
    start = time.perf_counter()
    total = 0
    for r in (2, 3, 4):
        ball = weyl.bfs_ball(r, 6)
        independent = _bfs_lengths_independent(r, 6)
        assert ball == independent
        bad = [w for w, d in ball.items() if weyl.length(w) != d]
        assert not bad, bad[:5]
        total += len(ball)
    assert total >= 1000
    _elapsed(f"length oracle over {total} elements", start)


def _word_product(config, dec):
    r = config.rank
    out = unit(config)
    step = gen(config, "T") if dec.omega_power > 0 else gen(config, "Tinv")
    for _ in range(abs(dec.omega_power)):
        out = mul(out, step)
    for i in dec.word:
        out = mul(out, gen(config, i))
    return out


@pytest.mark.acceptance(3, "reduced-word products equal T_w; two reduced words agree (r <= 4, length <= 6)")
def test_reduced_word_soundness():
    start = time.perf_counter()
    distinct_words = 0
    for r in (1, 2, 3, 4):
        config = HeckeConfig.symbolic(r)
        for w in weyl.bfs_ball(r, 6):
            lo = weyl.reduced_decomposition(w, "min")
            hi = weyl.reduced_decomposition(w, "max")
            assert _word_product(config, lo) == basis(config, w)
            if hi.word != lo.word:
                distinct_words += 1
                assert _word_product(config, hi) == basis(config, w)
    assert distinct_words > 0
    _elapsed(f"reduced words ({distinct_words} elements with two distinct words)", start)


@pytest.mark.acceptance(4, "associativity fuzz: 200 triples per (r, mode), r = 1,2,3")
def test_associativity_fuzz():
    for r in (1, 2, 3):
        for config in (HeckeConfig.symbolic(r), HeckeConfig.numeric(r, 4)):
            rng = random.Random(1000 * r + config.is_symbolic)
            for _ in range(200):
                a, b, c = (random_element(rng, config, max_terms=3, spread=1) for _ in range(3))
                assert mul(mul(a, b), c) == mul(a, mul(b, c))


@pytest.mark.acceptance(5, "H(1,z) <-> Laurent polynomials on exponents [-6, 6]")
def test_laurent_identification():
    v = RatFunc.v()
    for config in (HeckeConfig.symbolic(1), HeckeConfig.numeric(1, 4)):
        exps = range(-6, 7)
        # bijective on monomials: exponent k <-> basis element T_{(1+k)}
        images = {k: from_laurent(config, {k: 1}) for k in exps}
        assert len({tuple(e.terms) for e in images.values()}) == len(exps)
        for k in exps:
            assert laurent_form(images[k]) == {k: 1}
            assert laurent_form(basis(config, (1 + k,))) == {k: 1}
        t = gen(config, "T")
        assert mul(t, invert_monomial(t)) == unit(config)
        rng = random.Random(5)
        scalars = [1, -2, to_rat(Fraction(3, 2))] + ([v, v - 1] if config.is_symbolic else [])
        for _ in range(100):
            p = {rng.randint(-3, 3): config.coerce(rng.choice(scalars)) for _ in range(3)}
            q = {rng.randint(-3, 3): config.coerce(rng.choice(scalars)) for _ in range(3)}
            a, b = from_laurent(config, p), from_laurent(config, q)
            added = dict(p)
            for k, c in q.items():
                added[k] = added.get(k, 0) + c
            assert laurent_form(a + b) == {k: c for k, c in added.items() if c}
            assert laurent_form(mul(a, b)) == {k: c for k, c in laurent_convolve(p, q).items() if c}
            assert from_laurent(config, laurent_form(a)) == a


@pytest.mark.acceptance(6, "rank-two isomorphism at max_len 6: symbolic and z = 2,4,9,1; z = -1 rejected")
def test_isomorphism():
    start = time.perf_counter()
    for mode in (SYMBOLIC, CoeffMode.numeric(2), CoeffMode.numeric(4), CoeffMode.numeric(9),
                 CoeffMode.numeric(1)):
        report = verify_isomorphism(mode, 6)
        assert report.passed, report.failures[:3]
        assert report.checked_pairs == 2 * report.ball_size ** 2
    with pytest.raises(InvalidParameter):
        verify_isomorphism(CoeffMode.numeric(-1), 6)
    _elapsed("isomorphism checks", start)


@pytest.mark.acceptance(7, "GL2 fixtures give the three presentations; cuspidal any-N gives one Laurent variable")
def test_presentation_table():
    import json

    def load(name):
        return bn.descriptor_from_json(json.loads((FIXTURES / name).read_text()))

    expected = {
        "gl2_cusp.json": ("Cusp", "C[x,x^-1]"),
        "gl2_neqv.json": ("Neqv", "C[y,z,y^-1,z^-1]"),
        "gl2_eqv.json": ("Eqv", "C~[s,t,t^-1]/<s^2-1, t^2*s-s*t^2>"),
    }
    for name, (kind, algebra) in expected.items():
        d = load(name)
        assert bn.gl2_classify(d) == kind
        assert bn.presentation_of(d).to_json()["algebra"] == algebra
    assert bn.ss_decompose(load("gl2_neqv.json")).factors == ((1, 2), (1, 4))
    assert bn.ss_decompose(load("gl2_eqv.json")).factors == ((2, 4),)
    cusp = load("cusp_n4.json")
    assert bn.presentation_of(cusp) == bn.LaurentPoly(1)
    assert bn.ss_decompose(cusp).factors == ((1, to_rat(5) ** 3),)


ALGEBRAS = [bn.DivisionAlgebra(q, d) for q, d in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 3)]]


@pytest.mark.acceptance(8, "Morita tag sets agree across division algebras (GL2 grid and cuspidal shapes)")
def test_division_algebra_independence():
    shapes = bn.gl2_shape_grid([1, 2, 3]) + bn.cuspidal_shapes(range(1, 7), [1, 2, 3])
    for a, b in itertools.combinations(ALGEBRAS, 2):
        report = bn.census_compare(shapes, a, b)
        assert report.passed and not report.unsupported
        assert report.tag_set("tag_a") == report.tag_set("tag_b")


@pytest.mark.acceptance(9, "rank >= 3 tags separate q = 2 from q = 3 and identify z with 1/z")
def test_rank_three_obstruction():
    import json

    def load(name):
        return bn.descriptor_from_json(json.loads((FIXTURES / name).read_text()))

    t2, t3 = bn.morita_tag(load("gl3_equal_q2.json")), bn.morita_tag(load("gl3_equal_q3.json"))
    assert t2 != t3
    for z in (to_rat(2), to_rat(3), to_rat(Fraction(7, 4))):
        assert bn.tag_of_factors([(3, z)]) == bn.tag_of_factors([(3, 1 / z)])
    assert t2 == bn.tag_of_factors([(3, Fraction(1, 2))])


def _brute_equivalent(x, y):
    if x.label != y.label or x.twist_r != y.twist_r:
        return False
    return any((x.twist_theta + Fraction(k, x.torsion) - y.twist_theta).denominator == 1
               for k in range(x.torsion))


def _brute_reducible(s1, s2):
    for sign in (1, -1):
        shifted = tadic.TwistedCuspidalD(s1.label, s1.a, s1.torsion, s1.twist_r + sign * s1.a, s1.twist_theta)
        if _brute_equivalent(shifted, s2):
            return True
    return False


@pytest.mark.acceptance(10, "reducibility matches brute-force twist-and-compare on 200 cases; midpoints reassemble")
def test_tadic_truth_table():
    rng = random.Random(10)
    reducible_cases = 0
    for _ in range(200):
        label = rng.choice(["rho", "pi"])
        a, n = {"rho": (rng.choice([1, 2]), 2), "pi": (3, rng.choice([1, 3]))}[label]
        r1 = Fraction(rng.randint(-6, 6), rng.choice([1, 2]))
        th1 = Fraction(rng.randint(0, 5), 6)
        s1 = tadic.TwistedCuspidalD(label, a, n, r1, th1)
        if rng.random() < 0.5:
            # bias towards the reducibility line
            r2 = r1 + rng.choice([a, -a, Fraction(a, 2), 0])
            th2 = (th1 + Fraction(rng.randint(0, n - 1), n) + rng.choice([0, 0, Fraction(1, 6)])) % 1
            label2 = label
        else:
            r2, th2, label2 = Fraction(rng.randint(-6, 6), 2), Fraction(rng.randint(0, 5), 6), rng.choice(["rho", "pi"])
        a2, n2 = (a, n) if label2 == label else {"rho": (1, 2), "pi": (3, 1)}[label2]
        s2 = tadic.TwistedCuspidalD(label2, a2, n2, r2, th2)
        expected = _brute_reducible(s1, s2)
        assert tadic.reducibility(s1, s2) == expected
        if expected:
            reducible_cases += 1
            c = tadic.constituents(s1, s2)
            lo = tadic.twist(c.sigma0, -Fraction(a, 2))
            hi = tadic.twist(c.sigma0, Fraction(a, 2))
            assert ((_brute_equivalent(lo, s1) and _brute_equivalent(hi, s2))
                    or (_brute_equivalent(lo, s2) and _brute_equivalent(hi, s1)))
    assert reducible_cases >= 20
    print(f"tadic grid: {reducible_cases} reducible of 200")


@pytest.mark.acceptance(11, "parser round trip on 500 random elements per mode")
def test_parser_round_trip():
    for symbolic in (True, False):
        rng = random.Random(11 + symbolic)
        configs = [HeckeConfig.symbolic(r) if symbolic else HeckeConfig.numeric(r, Fraction(9, 2))
                   for r in (1, 2, 3)]
        for k in range(500):
            config = configs[k % 3]
            e = random_element(rng, config, max_terms=4, spread=2)
            assert evaluate(pretty(e), config) == e
