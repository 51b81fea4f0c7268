from fractions import Fraction
from itertools import permutations

import pytest

from petersonring.exact import kernel_basis, RationalMatrix
from petersonring.groebner import ideal_membership, monomials_of_degree, standard_monomials
from petersonring.hilbert import expected_peterson_series
from petersonring.peterson import (
    T,
    PetersonFixedPoint,
    build_presentation,
    enumerate_fixed_points,
    equivariant_variables,
    flag_restriction,
    flag_variables,
    injectivity_check,
    partial_flag_sum,
    peterson_generator,
    restrict_class,
    restrict_xi,
    restriction_matrix,
    verify_relations,
)
from petersonring.poly import Polynomial, VariableSet, parse_polynomial


def point(n, one_line):
    return next(p for p in enumerate_fixed_points(n) if p.label == one_line)


def test_fixed_points_n2():
    fps = enumerate_fixed_points(2)
    assert [(p.subset, p.one_line) for p in fps] == [((), (2, 1)), ((1,), (1, 2))]


def test_fixed_points_n3():
    fps = enumerate_fixed_points(3)
    assert [(p.subset, p.label) for p in fps] == [
        ((), "321"), ((1,), "132"), ((2,), "213"), ((1, 2), "123"),
    ]


@pytest.mark.parametrize("n", range(2, 9))
def test_fixed_point_count_and_involution(n):
    fps = enumerate_fixed_points(n)
    assert len(fps) == 2 ** (n - 1) == expected_peterson_series(n, "ordinary", 2 * n).total()
    assert len({p.one_line for p in fps}) == len(fps)
    for p in fps:
        w = p.one_line
        assert tuple(w[w[i] - 1] for i in range(n)) == tuple(range(1, n + 1))


def test_fixed_point_validation():
    assert PetersonFixedPoint(4, (1, 3), (1, 3, 2, 4)).mask == 0b101
    with pytest.raises(ValueError):
        PetersonFixedPoint(4, (1, 3), (1, 2, 3, 4))
    with pytest.raises(ValueError):
        PetersonFixedPoint(4, (3, 1))
    with pytest.raises(ValueError):
        PetersonFixedPoint(4, (4,))
    with pytest.raises(ValueError):
        enumerate_fixed_points(1)


def test_restrict_xi_examples():
    assert restrict_xi(1, point(3, "321")) == 2
    for k in range(4):
        assert restrict_xi(k, point(3, "123")) == 0
    for p in enumerate_fixed_points(5):
        assert restrict_xi(5, p) == 0 and restrict_xi(0, p) == 0
    with pytest.raises(ValueError):
        restrict_xi(4, point(3, "123"))


def test_restrict_xi_table_n3():
    table = {p.label: restrict_xi(2, p) for p in enumerate_fixed_points(3)}
    assert table == {"123": 0, "132": 1, "213": 0, "321": 2}


def test_restrict_class_examples():
    fps2 = enumerate_fixed_points(2)
    t = Polynomial.var(T, "t")
    vec = restrict_class(Polynomial.var(equivariant_variables(2), "xi_1"), fps2)
    assert vec[point(2, "21")] == t and vec[point(2, "12")].is_zero()
    vec = restrict_class(Polynomial.var(equivariant_variables(3), "t"), enumerate_fixed_points(3))
    assert all(v == t for v in vec.values)
    vs = equivariant_variables(3)
    rel = parse_polynomial("xi_1*(xi_1 - 1/2*xi_2 - t)", vs)
    assert restrict_class(rel, enumerate_fixed_points(3)).is_zero()


def test_restrict_class_rejects_foreign_variables():
    vs = VariableSet(("xi_1", "xi_3", "t"))
    with pytest.raises(KeyError):
        restrict_class(Polynomial.var(vs, "xi_3"), enumerate_fixed_points(3))


def test_restriction_is_homogeneous():
    vs = equivariant_variables(4)
    p = parse_polynomial("xi_1*xi_2*t - 3*xi_3^3 + t^3", vs)
    for v in restrict_class(p, enumerate_fixed_points(4)).values:
        assert set(v.terms) <= {(3,)}


def test_build_presentation_examples():
    ring = build_presentation(2)
    vs = ring.variables
    assert ring.ideal.generators == (parse_polynomial("xi_1^2 - t*xi_1", vs),)
    vs = build_presentation(3).variables
    assert build_presentation(3).ideal.generators == (
        parse_polynomial("xi_1^2 - 1/2*xi_1*xi_2 - t*xi_1", vs),
        parse_polynomial("xi_2^2 - 1/2*xi_1*xi_2 - t*xi_2", vs),
    )
    flag = build_presentation(2, "flag")
    fv = flag.variables
    assert flag.ideal.generators == (
        parse_polynomial("tau_1 + tau_2 - t_1 - t_2", fv),
        parse_polynomial("tau_1*tau_2 - t_1*t_2", fv),
    )
    ordinary = build_presentation(3, "ordinary")
    assert ordinary.ideal.generators[0] == parse_polynomial("xibar_1^2 - 1/2*xibar_1*xibar_2", ordinary.variables)


def test_flag_restriction_examples():
    fv = flag_variables(2)
    tt = VariableSet(("t_1", "t_2"))
    assert flag_restriction(Polynomial.var(fv, "tau_1"), (2, 1)) == Polynomial.var(tt, "t_2")
    e2 = build_presentation(2, "flag").ideal.generators[1]
    for w in [(1, 2), (2, 1)]:
        assert flag_restriction(e2, w).is_zero()
    t = Polynomial.var(T, "t")
    assert flag_restriction(partial_flag_sum(2, 1), (2, 1), specialize=True) == t
    assert restrict_xi(1, point(2, "21")) == 1


@pytest.mark.parametrize("n", range(2, 7))
def test_two_restriction_routes_agree(n):
    t = Polynomial.var(T, "t")
    for p in enumerate_fixed_points(n):
        for k in range(n + 1):
            assert flag_restriction(partial_flag_sum(n, k), p.one_line, specialize=True) == t * restrict_xi(k, p)


@pytest.mark.parametrize("n", range(2, 5))
def test_flag_ideal_vanishes_on_all_permutations(n):
    ring = build_presentation(n, "flag")
    for w in permutations(range(1, n + 1)):
        for g in ring.ideal.generators:
            assert flag_restriction(g, w).is_zero()


def test_verify_relations_small():
    assert verify_relations(2).passed
    rep = verify_relations(3)
    assert rep.passed
    by = {(d["point"], d["k"]): d for d in rep.dichotomy}
    assert by[("132", 1)]["partial_sum_vanishes"]
    assert by[("321", 1)]["adjacent_factor_vanishes"]
    assert not by[("321", 1)]["partial_sum_vanishes"]


def test_verify_relations_detects_perturbed_generator():
    ring = build_presentation(3)
    bad = peterson_generator(3, 1, ring.variables, half=Fraction(1, 3))
    rep = verify_relations(3, ring.with_generator(0, bad))
    assert not rep.passed
    assert not rep.generators[0]["zero"] and rep.generators[1]["zero"]


def test_injectivity_matrix_n2():
    vs = equivariant_variables(2)
    rows = [vs.unit("t"), vs.unit("xi_1")]
    cols = [point(2, "12"), point(2, "21")]
    M = restriction_matrix(rows, cols)
    assert M == RationalMatrix.from_rows([[1, 1], [0, 1]])
    rep = injectivity_check(2, 2)
    assert rep.degrees == [
        {"degree": 0, "rows": 1, "rank": 1, "pass": True},
        {"degree": 2, "rows": 2, "rank": 2, "pass": True},
    ]


def test_injectivity_n3():
    rep = injectivity_check(3, 12)
    assert rep.passed
    assert [d["rows"] for d in rep.degrees] == [1, 3, 4, 4, 4, 4, 4]


def test_injectivity_threads_do_not_change_result():
    assert injectivity_check(4, 16, threads=4).degrees == injectivity_check(4, 16).degrees


def test_fast_restriction_matches_substitution():
    n = 4
    vs = equivariant_variables(n)
    fps = enumerate_fixed_points(n)
    for m in monomials_of_degree(len(vs), 3):
        row = restriction_matrix([m], fps)
        vec = restrict_class(Polynomial.monomial(vs, m), fps)
        assert [row[0, j] for j in range(len(fps))] == [v.coefficient((3,)) for v in vec.values]


@pytest.mark.parametrize("n", [3, 4])
def test_quadratic_kernel_lies_in_ideal(n):
    vs = equivariant_variables(n)
    fps = enumerate_fixed_points(n)
    quad = list(monomials_of_degree(len(vs), 2))
    M = restriction_matrix(quad, fps).transpose()
    G = build_presentation(n).groebner()
    kernel = kernel_basis(M)
    assert len(kernel) == len(quad) - expected_peterson_series(n, "equivariant", 4).coefficients[2]
    for z in kernel:
        p = Polynomial(vs, dict(zip(quad, z)))
        assert ideal_membership(p, G)


@pytest.mark.parametrize("n", [3, 4])
def test_ideal_elements_restrict_to_zero(n):
    ring = build_presentation(n)
    D = 8
    std = standard_monomials(ring.groebner(), D - 4)
    fps = enumerate_fixed_points(n)
    for g in ring.ideal.generators:
        for d, monos in std.items():
            for m in monos:
                assert restrict_class(g * Polynomial.monomial(ring.variables, m), fps).is_zero()
