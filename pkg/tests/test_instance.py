import random

import pytest
from hypothesis import given

from conftest import instances
from mglfsr.ff import Field
from mglfsr.instance import (
    ALGORITHMS,
    ParseError,
    build_basis,
    format_instance,
    format_solution,
    has_trivial_solution,
    is_member,
    is_solution,
    new_instance,
    parse_instance,
    solve,
    solve_detailed,
    weak_popov_certificate,
)
from mglfsr.oracle import minimal_degree_by_linear_algebra
from mglfsr.polymat import PolyMatrix, WeightProfile

F5, F13 = Field(5), Field(13)
x = F5.x()
T1, T2 = WeightProfile.trivial(1), WeightProfile.trivial(2)


def test_sequences_are_reduced_mod_g():
    g = x**3 + 2 * x + 1
    assert new_instance(F5, [g], [g], T1).S == (F5.zero(),)
    s = x**2 + 3
    assert new_instance(F5, [s], [g], T1).S == (s,)
    for p in (2, 3, 17):
        f = Field(p)
        fx = f.x()
        assert new_instance(f, [fx**5], [fx**4], T1).S == (f.zero(),)


def test_instance_validation():
    with pytest.raises(ValueError):
        new_instance(F5, [x], [x, x], T1)
    with pytest.raises(ValueError):
        new_instance(F5, [x], [F5.one()], T1)
    with pytest.raises(ValueError):
        new_instance(F5, [x], [x**2], T2)
    with pytest.raises(ValueError):
        new_instance(F5, [F13.x()], [x**2], T1)


def test_trivial_solution_detection():
    zero_inst = new_instance(F5, [F5.zero(), F5.zero()], [x**3, x + 1], T2)
    assert has_trivial_solution(zero_inst).lam == F5.one()
    s = x**2 + 1
    inst = new_instance(F5, [s], [x**4], WeightProfile(1, (3, 0)))
    sol = has_trivial_solution(inst)
    assert sol.lam == F5.one() and sol.omegas == (s,)
    assert has_trivial_solution(new_instance(F5, [s], [x**4], T1)) is None


def test_build_basis_examples():
    inst = new_instance(F5, [x], [x**2], T1)
    assert build_basis(inst) == PolyMatrix([[F5.one(), x], [F5.zero(), x**2]])
    inst2 = new_instance(F5, [x, x + 1], [x**2, x**3 + 1], T2)
    M = build_basis(inst2)
    assert [M[i][i] for i in range(3)] == [F5.one(), x**2, x**3 + 1]
    assert M.is_upper_triangular()


@given(instances())
def test_basis_rows_and_combinations_are_members(inst):
    M = build_basis(inst)
    assert all(is_member(inst, row) for row in M)
    rng = random.Random(inst.field.p + inst.ell)
    coeffs = [inst.field([rng.randrange(inst.field.p) for _ in range(3)]) for _ in M]
    combo = [sum((c * row[k] for c, row in zip(coeffs, M)), inst.field.zero()) for k in range(M.size)]
    assert is_member(inst, combo)


def test_membership_examples():
    inst = new_instance(F5, [x + 2], [x**3], T1)
    assert not is_member(inst, [F5.zero(), F5.one()])
    assert not is_member(inst, [F5.one()])
    f3 = Field(3)
    y = f3.x()
    inst3 = new_instance(f3, [f3.one()], [y**3], T1)
    assert is_solution(inst3, [y**3, f3.zero()])
    assert not is_solution(inst3, [f3.zero(), f3.zero()])
    triv = new_instance(F5, [x], [x**4], WeightProfile(1, (2, 0)))
    assert is_solution(triv, [F5.one(), x])


def test_minimal_degree_example():
    f3 = Field(3)
    inst = new_instance(f3, [f3.one()], [f3.x() ** 3], T1)
    for alg in ALGORITHMS:
        sol = solve(inst, alg)
        assert sol.lam.deg == 3 and sol.lam.lc == 1
        assert is_solution(inst, sol.vector)


@pytest.mark.parametrize("alg", ALGORITHMS)
def test_all_zero_sequences_give_one(alg):
    inst = new_instance(F13, [F13.zero()] * 3, [F13.x() ** 2] * 3, WeightProfile.trivial(3))
    assert solve(inst, alg).lam == F13.one()


def test_unknown_algorithm():
    inst = new_instance(F5, [x], [x**2], T1)
    with pytest.raises(ValueError):
        solve(inst, "bm")


@given(instances())
def test_algorithms_agree_with_oracle(inst):
    D, _ = minimal_degree_by_linear_algebra(inst)
    for alg in ALGORITHMS:
        sol, stats, V = solve_detailed(inst, alg)
        assert is_solution(inst, sol.vector)
        assert sol.lam.deg == D and sol.lam.lc == 1
        assert stats.within_bound()
        if V is not None:
            assert weak_popov_certificate(inst, V)


SAMPLE = """\
# a small instance
p 7
ell 2
nu 2
w 1 0 3
S 1 1 2 3   # trailing comment
S 2 0
G 1 0 0 0 1
G 2 1 1 1
"""


def test_parse_and_format_round_trip():
    inst = parse_instance(SAMPLE)
    assert inst.field.p == 7 and inst.ell == 2 and inst.profile == WeightProfile(2, (1, 0, 3))
    assert inst.S[1] == inst.field.zero()
    assert parse_instance(format_instance(inst)) == inst


@given(instances())
def test_format_round_trip_random(inst):
    assert parse_instance(format_instance(inst)) == inst


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("p 7\nell 1\nnu 1\nw 0 0\nS 1 1 x\nG 1 0 1\n", 5),
        ("p 8\nell 1\nnu 1\nw 0 0\nS 1 1\nG 1 0 1\n", 1),
        ("p 7\nell 1\nnu 1\nw 0\nS 1 1\nG 1 0 1\n", 4),
        ("p 7\nell 1\nnu 1\nw 0 0\nS 1 1\nG 1 3\n", 6),
        ("p 7\nell 1\nnu 1\nw 0 0\nS 2 1\nG 1 0 1\n", 5),
        ("p 7\nell 1\nnu 1\nw 0 0\nQ 1 1\n", 5),
        ("p 7\np 7\n", 2),
        ("p 7\nell 1\nnu 0\nw 0 0\nS 1 1\nG 1 0 1\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_parse_missing_lines():
    with pytest.raises(ParseError):
        parse_instance("p 7\nell 1\nnu 1\nw 0 0\nS 1 1\n")
    with pytest.raises(ParseError):
        parse_instance("")


def test_format_solution():
    f3 = Field(3)
    inst = new_instance(f3, [f3.one()], [f3.x() ** 3], T1)
    assert format_solution(solve(inst)) == "lambda 0 0 0 1\nomega 1 0\n"
