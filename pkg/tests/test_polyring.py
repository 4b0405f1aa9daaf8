"""Tests for exact fields, polynomial arithmetic, the parser and the Gröbner engine."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from affpi0.errors import ParseError, ResourceLimitError, RingMismatchError
from affpi0.polyring import (FieldDescriptor, GF, QQ, Polynomial,
                             elimination_ideal, groebner, ideal_membership,
                             monomials_up_to, normal_form, poly_parse,
                             set_limits, standard_monomials)


def P(text, names, field=QQ):
    return poly_parse(text, names, field)


# ---------------------------------------------------------------------------
# fields


def test_field_descriptor_rejects_composite():
    with pytest.raises(ValueError):
        FieldDescriptor(6)


def test_prime_field_fermat_self_test():
    for p in (2, 3, 5, 7, 11):
        f = GF(p)
        for a in f.elements():
            acc = f.one()
            for _ in range(p):
                acc = f.mul(acc, a)
            assert acc == a


def test_rational_scalar_canonical():
    f = QQ
    assert f.scalar(Fraction(2, 4)) == Fraction(1, 2)
    v = f.scalar(Fraction(-3, -6))
    assert v.denominator > 0


# ---------------------------------------------------------------------------
# parsing


def test_parse_circle():
    p = P("x^2 + y^2 - 1", ["x", "y"])
    assert len(p.terms) == 3
    assert p.terms[(2, 0)] == 1
    assert p.terms[(0, 0)] == -1


def test_parse_zero_and_char_two_collapse():
    assert P("0", ["x"]).is_zero
    assert P("2*x", ["x"], GF(2)).is_zero


def test_parse_rational_literal_and_division_errors():
    p = P("1/2*x", ["x"])
    assert p.terms[(1,)] == Fraction(1, 2)
    with pytest.raises(ParseError):
        P("x/2", ["x"])
    with pytest.raises(ParseError):
        P("1/0", ["x"])
    with pytest.raises(ParseError):
        P("1/3", ["x"], GF(3))


def test_parse_unknown_identifier_and_syntax():
    with pytest.raises(ParseError):
        P("x + z", ["x", "y"])
    with pytest.raises(ParseError):
        P("x + ", ["x"])
    with pytest.raises(ParseError):
        P("x y", ["x", "y"])  # no implicit multiplication


def test_parse_unary_minus_placement():
    assert P("-x + 1", ["x"]) == P("1 - x", ["x"])
    assert P("(-x)^2", ["x"]) == P("x^2", ["x"])


def test_parse_print_parse_roundtrip():
    names = ["x", "y", "z"]
    rng = random.Random(7)
    for _ in range(25):
        terms = {}
        for _ in range(rng.randint(0, 6)):
            m = tuple(rng.randint(0, 3) for _ in names)
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            if c:
                terms[m] = c
        p = Polynomial(3, QQ, {m: c for m, c in terms.items() if c != 0})
        assert P(p.to_string(names), names) == p


# ---------------------------------------------------------------------------
# arithmetic


def test_difference_of_squares():
    names = ["x"]
    assert P("(x+1)*(x-1)", names) == P("x^2-1", names)


def test_frobenius_over_f2():
    names = ["x", "y"]
    assert P("(x+y)^2", names, GF(2)) == P("x^2+y^2", names, GF(2))


def test_scale_by_zero():
    p = P("x", ["x"])
    assert p.scale(0).is_zero


def test_pow_negative_exponent_rejected():
    with pytest.raises(ValueError):
        P("x", ["x"]) ** -1


def test_ring_mismatch_detected():
    with pytest.raises(RingMismatchError):
        P("x", ["x"]) + P("x", ["x", "y"])
    with pytest.raises(RingMismatchError):
        P("x", ["x"]) * P("x", ["x"], GF(5))


def test_derivative_and_substitute():
    names = ["x", "y"]
    p = P("x^2*y + 3*x", names)
    assert p.derivative(0) == P("2*x*y + 3", names)
    q = p.substitute([P("y", names), P("x", names)])
    assert q == P("y^2*x + 3*y", names)


# ---------------------------------------------------------------------------
# Gröbner bases


def test_groebner_hand_reduction():
    names = ["x"]
    gb = groebner([P("x^2-1", names), P("x-1", names)])
    assert [g.to_string(names) for g in gb] == ["x - 1"]


def test_groebner_empty():
    assert len(groebner([])) == 0


def test_groebner_two_points_quotient_dimension():
    names = ["x", "y"]
    gb = groebner([P("x*y", names), P("x+y-1", names)])
    std = standard_monomials(gb, 2, 10)
    assert len(std) == 2


def test_groebner_deterministic_output():
    names = ["x", "y", "z"]
    gens = [P("x^2+y^2+z^2-1", names), P("x*y - z", names), P("y*z - x", names)]
    a = groebner(gens)
    b = groebner(list(reversed(gens)))
    assert [g.to_string(names) for g in a] == [g.to_string(names) for g in b]


def test_groebner_basis_is_monic_and_reduced():
    names = ["x", "y"]
    gb = groebner([P("2*x^2 - 2*y", names), P("3*y^2 - 3*x", names)])
    for g in gb:
        assert g.leading_coeff(gb.order) == 1
        for h in gb:
            if h is g:
                continue
            lt = h.leading_monomial(gb.order)
            for m in g.terms:
                assert not all(a <= b for a, b in zip(lt, m))


def test_normal_form_examples():
    names = ["x"]
    gb = groebner([P("x^2-x", names)])
    assert normal_form(P("x^2", names), gb) == P("x", names)
    gb3 = groebner([P("x^3-x", names)])
    assert normal_form(P("x^3", names), gb3) == P("x", names)
    assert normal_form(P("x^3-x", names), gb3).is_zero


def test_normal_form_linear_and_idempotent():
    names = ["x", "y"]
    gb = groebner([P("x^2-y", names), P("y^2-1", names)])
    rng = random.Random(3)
    for _ in range(20):
        p = Polynomial(2, QQ, {})
        q = Polynomial(2, QQ, {})
        for _ in range(4):
            p = p + Polynomial.monomial(
                (rng.randint(0, 3), rng.randint(0, 3)), QQ, rng.randint(-3, 3))
            q = q + Polynomial.monomial(
                (rng.randint(0, 3), rng.randint(0, 3)), QQ, rng.randint(-3, 3))
        lhs = normal_form(p + q, gb)
        rhs = normal_form(p, gb) + normal_form(q, gb)
        assert lhs == rhs
        nf = normal_form(p, gb)
        assert normal_form(nf, gb) == nf


def test_ideal_membership_examples():
    names = ["z0", "z1"]
    gb = groebner([P("z0^2-z0", names), P("z1*(2*z0-1)", names),
                   P("z1^2", names)])
    assert ideal_membership(P("z1", names), gb)
    names1 = ["x"]
    assert ideal_membership(P("1", names1),
                            groebner([P("x", names1), P("x-1", names1)]))
    assert not ideal_membership(P("x", names1), groebner([P("x^2", names1)]))


def test_ideal_membership_against_bruteforce_span():
    """Membership agrees with linear algebra over the degree-bounded span."""
    from affpi0.linalg import in_span

    names = ["x", "y"]
    gens = [P("x^2-y", names), P("x*y-1", names)]
    gb = groebner(gens)
    rng = random.Random(11)
    slack = 4
    for _ in range(12):
        p = Polynomial(2, QQ, {})
        for _ in range(3):
            p = p + Polynomial.monomial(
                (rng.randint(0, 2), rng.randint(0, 2)), QQ, rng.randint(-2, 2))
        bound = p.total_degree() + slack
        span_polys = []
        for g in gens:
            for m in monomials_up_to(2, max(bound - g.total_degree(), 0)):
                span_polys.append(g.mul_monomial(m))
        coords = sorted({m for q in span_polys for m in q.terms}
                        | set(p.terms))
        rows = [[q.terms.get(m, Fraction(0)) for m in coords]
                for q in span_polys]
        target = [p.terms.get(m, Fraction(0)) for m in coords]
        brute = in_span(rows, target, QQ)
        assert brute == ideal_membership(p, gb)


def test_elimination_ideal_substitution():
    names = ["t", "x", "y"]
    gens = [P("t - x^2", names), P("t - y", names)]
    out = elimination_ideal(gens, [0])
    small = ["x", "y"]
    assert [g.to_string(small) for g in out] == ["x^2 - y"]


def test_elimination_identity_and_zero():
    names = ["x", "y"]
    assert elimination_ideal([P("x", names)], [0]) == []
    out = elimination_ideal([P("y - x^2", names)], [])
    assert [g.to_string(names) for g in out] == ["x^2 - y"]


def test_standard_monomials_ordering():
    names = ["x"]
    gb = groebner([P("x^3-x", names)])
    assert standard_monomials(gb, 1, 5) == [(0,), (1,), (2,)]
    free = groebner([])
    assert standard_monomials(free, 1, 2) == [(0,), (1,), (2,)]


def test_resource_guard_trips():
    set_limits(max_degree=8)
    try:
        with pytest.raises(ResourceLimitError):
            P("x+1", ["x"]) ** 20
    finally:
        set_limits(max_degree=64)


def test_prime_field_groebner():
    names = ["x", "y"]
    f = GF(2)
    gb = groebner([P("x^2+x", names, f), P("y^2+y", names, f)])
    assert ideal_membership(P("x^2+x", names, f), gb)
    assert not ideal_membership(P("x+y", names, f), gb)


def test_normal_form_of_product_depends_only_on_class():
    """nf(p·m) is unchanged when p is replaced by nf(p) or shifted by the ideal."""
    names = ["x", "y"]
    gens = [P("x^2 - y", names), P("y^2 - 1", names)]
    gb = groebner(gens)
    rng = random.Random(17)
    for _ in range(15):
        p = Polynomial(2, QQ, {})
        for _ in range(4):
            p = p + Polynomial.monomial(
                (rng.randint(0, 3), rng.randint(0, 3)), QQ, rng.randint(-3, 3))
        m = Polynomial.monomial((rng.randint(0, 2), rng.randint(0, 2)), QQ)
        shifted = p + gens[rng.randrange(2)].mul_monomial(
            (rng.randint(0, 1), rng.randint(0, 1)))
        assert normal_form(p * m, gb) == normal_form(normal_form(p, gb) * m, gb)
        assert normal_form(p * m, gb) == normal_form(shifted * m, gb)


def test_groebner_property_by_independent_spolynomial_reduction():
    """Every S-polynomial of the output reduces to zero: the defining test,
    run independently of the pair-elimination logic inside the engine."""
    from affpi0.polyring import _s_polynomial

    rng = random.Random(23)
    systems = [
        [P("x*y - 1", ["x", "y", "z"]), P("y*z - 1", ["x", "y", "z"]),
         P("x + y + z - 3", ["x", "y", "z"])],
        [P("x^2 + y^2 + z^2 - 1", ["x", "y", "z"]),
         P("x*y - z", ["x", "y", "z"])],
    ]
    for _ in range(6):
        names = ["x", "y", "z"]
        gens = []
        for _ in range(3):
            p = Polynomial(3, QQ, {})
            for _ in range(3):
                p = p + Polynomial.monomial(
                    (rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 1)),
                    QQ, rng.randint(-2, 2))
            if not p.is_zero:
                gens.append(p)
        if gens:
            systems.append(gens)
    for gens in systems:
        gb = groebner(gens)
        for g in gens:
            assert normal_form(g, gb).is_zero
        polys = list(gb)
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                s = _s_polynomial(polys[i], polys[j], gb.order)
                assert normal_form(s, gb).is_zero


def test_known_benchmark_quotient_dimensions():
    names = ["x", "y", "z"]
    cyclic3 = groebner([P("x + y + z", names), P("x*y + y*z + z*x", names),
                        P("x*y*z - 1", names)])
    assert len(standard_monomials(cyclic3, 3, 12)) == 6
    k_names = ["u0", "u1", "u2"]
    katsura2 = groebner([
        P("u0 + 2*u1 + 2*u2 - 1", k_names),
        P("u0^2 + 2*u1^2 + 2*u2^2 - u0", k_names),
        P("2*u0*u1 + 2*u1*u2 - u1", k_names)])
    assert len(standard_monomials(katsura2, 3, 12)) == 4


def test_prime_field_quotient_dimension_equals_point_count():
    names = ["x", "y"]
    f2 = GF(2)
    gb = groebner([P("x^2 - x", names, f2), P("y^2 - y", names, f2)])
    assert len(standard_monomials(gb, 2, 8)) == 4


def test_elimination_classical_cusp():
    # the parametrized cusp (t^2, t^3): eliminating t leaves x^3 - y^2
    names = ["t", "x", "y"]
    out = elimination_ideal([P("x - t^2", names), P("y - t^3", names)], [0])
    small = ["x", "y"]
    strings = [g.to_string(small) for g in out]
    assert strings == ["x^3 - y^2"]


def test_elimination_middle_variable():
    # I = (y - x^2, z - x^4): eliminating x relates the kept variables
    names = ["x", "y", "z"]
    out = elimination_ideal([P("y - x^2", names), P("z - x^4", names)], [0])
    small = ["y", "z"]
    assert [g.to_string(small) for g in out] == ["y^2 - z"]


def test_groebner_spolynomial_soak_over_prime_field():
    from affpi0.polyring import _s_polynomial

    rng = random.Random(41)
    f5 = GF(5)
    for _ in range(8):
        gens = []
        for _ in range(3):
            p = Polynomial(3, f5, {})
            for _ in range(4):
                p = p + Polynomial.monomial(
                    (rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)),
                    f5, rng.randint(0, 4))
            if not p.is_zero:
                gens.append(p)
        if not gens:
            continue
        gb = groebner(gens)
        for g in gens:
            assert normal_form(g, gb).is_zero
        polys = list(gb)
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                s = _s_polynomial(polys[i], polys[j], gb.order)
                assert normal_form(s, gb).is_zero
