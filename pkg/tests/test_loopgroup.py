"""Loop-group machinery against the worked examples: elementary matrices,
raw characteristic polynomials, curve normalization, generator relations."""

import random
from fractions import Fraction

import pytest

from clusterdimer.algebra import Monomial, RationalFunction as RF, parse, render
from clusterdimer.loopgroup import (
    LoopElement,
    NewtonPolygon,
    check_relation,
    curve_from_rf,
    curves_equivalent,
    elementary_e,
    elementary_h,
    elementary_lambda,
    generating_function,
    hamiltonians_and_casimirs,
    lax_from_word,
    normalize_curve,
    projectively_equal,
)
from clusterdimer.weyl import parse_word, sort_positive_negative, tau_word


def entries(le):
    return [[render(e) for e in row] for row in le.matrix]


def test_elementary_matrices_rank2():
    e1 = elementary_e(1, 2)
    assert entries(e1) == [["1", "1"], ["0", "1"]]
    assert e1.shift.is_one()
    e0 = elementary_e(0, 2)
    assert entries(e0) == [["1", "0"], ["lambda", "1"]]
    h0 = elementary_h(0, RF.var("x"), 2)
    assert entries(h0) == [["1", "0"], ["0", "1"]]
    assert h0.shift == RF.var("x")
    lam = elementary_lambda(2)
    assert entries(lam) == [["0", "1"], ["lambda", "0"]]


def test_loop_mul_shift_substitution():
    h = elementary_h(0, RF.var("x"), 2)
    e0 = elementary_e(0, 2)
    prod = h * e0
    assert entries(prod) == [["1", "0"], ["lambda*x", "1"]]
    assert prod.shift == RF.var("x")
    ident = LoopElement.identity(2)
    assert projectively_equal(prod * ident, prod)


def test_lambda_conjugation_shifts_dynkin_index():
    # conjugation by the rotation matrix lowers the index by one; full letter
    # blocks H_i(x)E_i conjugate the same way (checked in the second loop)
    from clusterdimer.algebra import RationalFunction as RF2

    for rank in (2, 3, 4):
        lam = elementary_lambda(rank)
        for i in range(rank):
            lhs = lam * elementary_e(i, rank) * lam.inverse()
            rhs = elementary_e((i - 1) % rank, rank)
            assert projectively_equal(lhs, rhs), (rank, i)
        x = RF2.var("x")
        for i in range(rank):
            lhs = lam * (elementary_h(i, x, rank) * elementary_e(i, rank))
            rhs = (elementary_h((i - 1) % rank, x, rank) * elementary_e((i - 1) % rank, rank)) * lam
            assert projectively_equal(lhs, rhs), (rank, i)


def test_triangle_raw_characteristic_polynomial():
    w = parse_word("0 1 0 L", 2)
    lax = lax_from_word(w, ["x", "y", "z"])
    assert lax.shift.is_one()
    curve = generating_function(lax)
    expected = curve_from_rf(parse("mu^2 - lambda*y - mu*lambda^2*x*y - lambda*mu*(1+y+x*y)"))
    assert curve == expected


def test_triangle_lax_det_is_lambda_monomial():
    # the determinant is a monomial (constant in lambda up to the power
    # contributed by Lambda^k)
    w = parse_word("0 1 0 L", 2)
    lax = lax_from_word(w, ["x", "y", "z"])
    m = lax.determinant().as_monomial()
    assert m.exponent("lambda") == 1


def test_nonaffine_toda_raw():
    w = parse_word("1 -1 0", 2)
    lax = lax_from_word(w, ["x", "y", "z"])
    curve = generating_function(lax)
    expected = curve_from_rf(parse("mu^2 - mu*(1+x+y*x) - lambda*mu*x + y*x"))
    assert curve == expected


def test_toda2_raw():
    w = parse_word("1 -1 0 -0", 2)
    lax = lax_from_word(w, ["x", "y", "z", "w"])
    curve = generating_function(lax)
    raw = parse("mu^2 - mu*(q+1+x+x*y) - lambda*mu*q*x - lambda^(-1)*mu + x*y")
    expected = curve_from_rf(raw.substitute({"q": RF.var("x") * RF.var("y") * RF.var("z")}))
    assert curve == expected


def test_identity_curve():
    curve = generating_function(LoopElement.identity(2))
    assert curve == curve_from_rf(parse("(1-mu)^2"))


def test_sf4_raw():
    w = parse_word("1 -1 0 -0 1 -1 L", 2)
    lax = lax_from_word(w, ["x", "y", "z", "w", "u", "v"])
    curve = generating_function(lax)
    disp = parse(
        "mu^2 - lambda*mu*x*(1+u+u*y+u*y*z+u*y*z*v+u*y*z*v*x)"
        " - mu*(1+u+u*v+u*v*x+u*v*x*y+u*v*x*y*z)"
        " - lambda^2*mu*x^2*y*z*u - lambda^(-1)*mu*u*v - lambda*x*u*y*v"
    )
    velim = (RF.var("x") * RF.var("y") * RF.var("z") * RF.var("w") * RF.var("u")).inverse()
    expected = curve_from_rf(disp.substitute({"v": velim}))
    assert curve == expected


def test_toda2pgl3_raw():
    w = parse_word("0 -0 1 -1 2 -2", 3)
    lax = lax_from_word(w, ["w", "u", "y", "z", "v", "x"])
    curve = generating_function(lax)
    disp = parse(
        "mu^3 - v*w*y*mu^2*lambda - (1+u+u*v+u*v*x+u*v*x*y+u*v*x*y*z)*u^(-1)*mu^2"
        " + (1+u+u*y+u*y*z+u*y*z*v+u*y*z*v*x)*v*x*u^(-1)*mu"
        " - v*x*u^(-1)*w^(-1)*mu*lambda^(-1) - v^2*x^2*y*z"
    )
    xelim = (RF.var("w") * RF.var("u") * RF.var("y") * RF.var("z") * RF.var("v")).inverse()
    expected = curve_from_rf((-disp).substitute({"x": xelim}))
    assert curve == expected


def test_sf4_equivalent_to_pgl3_form_via_lattice_map():
    w2 = parse_word("1 -1 0 -0 1 -1 L", 2)
    sub = {"v": (RF.var("x") * RF.var("y") * RF.var("z") * RF.var("w") * RF.var("u")).inverse()}
    c2 = generating_function(lax_from_word(w2, ["x", "y", "z", "w", "u", "v"], substitution=sub))
    w3 = parse_word("0 -0 1 -1 2 -2", 3)
    c3 = generating_function(lax_from_word(w3, ["w", "u", "y", "z", "v", "x"], substitution=sub))
    ok, witness = curves_equivalent(c2, c3, allow_lattice_map=True)
    assert ok and witness["map"] is not None
    assert not curves_equivalent(c2, c3)[0]


def test_normalize_triangle_matches_paper_sf():
    w = parse_word("0 1 0 L", 2)
    curve = generating_function(lax_from_word(w, ["x", "y", "z"]))
    norm, (alpha, beta, gamma) = normalize_curve(curve)
    corners = curve.polygon().vertices[:3]
    for c in corners:
        assert norm.coefficients[c].is_one()
    from clusterdimer.loopgroup import SpectralCurve

    paper = SpectralCurve(
        {
            (-1, 0): RF.const(1),
            (0, 1): RF.const(1),
            (1, -1): -RF.const(1),
            (0, 0): parse("x^(-1/3)*y^(-2/3) + x^(-1/3)*y^(1/3) + x^(2/3)*y^(1/3)"),
        }
    )
    ok, witness = curves_equivalent(norm, paper, allow_lattice_map=True)
    assert ok


def test_normalize_three_term_monomial_curve():
    c = curve_from_rf(parse("mu^2*x + lambda*y - lambda*mu"))
    norm, _ = normalize_curve(c)
    assert all(v.is_one() for v in norm.coefficients.values())


def test_normalize_nonaffine_toda_paper_witness():
    # substitute mu -> -y^(1/2)x^(1/2)mu, lambda -> y^(1/2)x^(-1/2)lambda, divide by mu*y*x
    w = parse_word("1 -1 0", 2)
    curve = generating_function(lax_from_word(w, ["x", "y", "z"]))
    alpha = Monomial({"x": Fraction(-1, 2), "y": Fraction(1, 2)})
    beta = Monomial({"x": Fraction(1, 2), "y": Fraction(1, 2)}, sign=-1)
    gamma = Monomial({"x": Fraction(-1, 1), "y": Fraction(-1, 1)})
    moved = curve.scaled(alpha, beta, gamma).transformed((1, 0, 0, 1), (0, -1))
    from clusterdimer.loopgroup import SpectralCurve

    expected = SpectralCurve(
        {
            (0, 0): parse("y^(1/2)*x^(1/2) + y^(-1/2)*x^(-1/2) + y^(-1/2)*x^(1/2)"),
            (0, 1): RF.const(1),
            (0, -1): RF.const(1),
            (1, 0): RF.const(1),
        }
    )
    assert moved == expected


def test_curves_equivalent_trivial_and_false():
    c = curve_from_rf(parse("mu^2 - lambda*x + x*y*mu"))
    norm, _ = normalize_curve(c)
    ok, wit = curves_equivalent(c, norm)
    assert ok and wit["map"] is None
    a = curve_from_rf(parse("mu^2 - lambda"))
    b = curve_from_rf(parse("mu^2 - lambda^2"))
    assert not curves_equivalent(a, b)[0]


def test_polygon_counts_examples():
    tri = NewtonPolygon.from_points([(-1, 0), (0, 1), (1, -1)])
    assert tri.area() == Fraction(3, 2)
    assert tri.interior_count() == 1 and tri.boundary_count() == 3
    assert sorted(tri.interior_points()) == [(0, 0)]
    sq = NewtonPolygon.from_points([(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert sq.interior_count() == 1 and sq.boundary_count() == 4
    par = NewtonPolygon.from_points([(-1, 0), (0, 1), (2, 0), (1, -1)])
    assert par.interior_count() == 2
    assert sorted(par.interior_points()) == [(0, 0), (1, 0)]
    # Pick identity against the brute-force scan
    for poly in (tri, sq, par):
        assert poly.interior_count() == len(poly.interior_points())
        assert poly.boundary_count() == len(poly.boundary_points())


def test_hamiltonian_casimir_partition():
    w = parse_word("1 -1 0 -0 1 -1 L", 2)
    curve = generating_function(lax_from_word(w, ["x", "y", "z", "w", "u", "v"]))
    norm, _ = normalize_curve(curve)
    parts = hamiltonians_and_casimirs(norm)
    assert parts["expected_hamiltonians"] == 2
    assert len(parts["hamiltonians"]) == 2
    assert parts["expected_free_casimirs"] == len(parts["casimirs"]) - 3


def test_polygon_width_equals_rank():
    for text, rank, names in [
        ("0 1 0 L", 2, ["x", "y", "z"]),
        ("1 -1 0 -0", 2, ["x", "y", "z", "w"]),
        ("0 -0 1 -1 2 -2", 3, ["a", "b", "c", "d", "e", "f"]),
    ]:
        w = parse_word(text, rank)
        curve = generating_function(lax_from_word(w, names))
        assert curve.polygon().width() == rank


def test_tau_image_curve_equivalent():
    # For all-positive words the tau rearrangement is conjugation of the whole
    # element by the Dynkin rotation, so the curve formula itself is preserved.
    # Mixed words change coordinates by a genuine (non-monomial) flow; those
    # are exercised through the named flows in the cluster layer instead.
    for text, rank in [("0 1 0 L", 2), ("0 1 2 L", 3), ("0 1 1 2 L^2", 3)]:
        w = sort_positive_negative(parse_word(text, rank))
        names = [f"x{i}" for i in range(len(w))]
        c1 = generating_function(lax_from_word(w, names))
        c2 = generating_function(lax_from_word(tau_word(w), names))
        ok, _ = curves_equivalent(c1, c2, allow_lattice_map=False)
        assert ok, text


def test_relation_examples():
    assert check_relation(6, 3, 1)
    assert check_relation(2, 3, 1)
    assert check_relation(5, 4, 1, 3)


@pytest.mark.parametrize("rank", [2, 3, 4])
@pytest.mark.parametrize("rel", list(range(1, 10)))
def test_all_relations_all_ranks(rel, rank):
    assert check_relation(rel, rank)


def test_random_lax_det_monomial():
    rng = random.Random(21)
    for _ in range(5):
        rank = rng.choice([2, 3])
        letters = " ".join(
            ("-" if rng.random() < 0.5 else "") + str(rng.randrange(rank)) for _ in range(rng.randint(2, 5))
        )
        k = rng.randrange(rank)
        w = parse_word(letters + (f" L^{k}" if k else ""), rank)
        names = [f"x{i}" for i in range(len(w))]
        lax = lax_from_word(w, names)
        m = lax.determinant().as_monomial()
        assert m.exponent("lambda") == w.lambda_power
