import pytest

from constarm import errors, spaces
from constarm.spaces import CodeParams


def test_decompose_ab_examples():
    assert spaces.decompose_ab(5, 7) == (0, 5)
    assert spaces.decompose_ab(19, 17) == (1, 3)
    assert spaces.decompose_ab(0, 7) == (0, 0)


def test_decompose_round_trip():
    for q in (7, 13, 17):
        for a in range(4):
            for b in range(q - 1):
                assert spaces.decompose_ab((q - 1) * a + b, q) == (a, b)


def test_translate_L_examples():
    assert spaces.translate_L(13, 3, 5) == (1, 1, 5, 17)
    assert spaces.translate_L(7, 3, 0) == (0, 0, 2, 2)
    assert spaces.translate_L(13, 3, 1) == (0, 1, 5, 5)
    with pytest.raises(errors.RNotDivisor):
        spaces.translate_L(13, 5, 1)


def test_admissible_degrees_examples():
    assert spaces.admissible_degrees(7, 2, 3) == [2, 5, 8]
    assert spaces.admissible_degrees(9, 2, 4) == [3, 7, 11]
    assert spaces.admissible_degrees(7, 2, 6) == [5]


def test_build_space_examples():
    sp = spaces.build_space(7, 2, 3, 2, 2)
    assert sp.K == 3
    assert set(sp.monomials()) == {(2, 0), (1, 1), (0, 2)}
    # ascending graded lex with X1 heaviest
    assert sp.monomials() == [(0, 2), (1, 1), (2, 0)]
    assert spaces.build_space(7, 2, 3, 5, 2).K == 9
    sp0 = spaces.build_space(7, 2, 3, 3, 0)
    assert sp0.K == 5
    assert (0, 0) in sp0.monomials()
    with pytest.raises(errors.BadResidue):
        spaces.build_space(7, 2, 3, 2, 3)


def test_dimension_K_examples():
    assert spaces.dimension_K(CodeParams(7, 2, 3, 2)) == 3
    assert spaces.dimension_K(CodeParams(7, 2, 3, 5)) == 9
    assert spaces.dimension_K(CodeParams(7, 2, 3, 8)) == 14
    with pytest.raises(errors.NotAdmissible):
        spaces.dimension_K(CodeParams(7, 2, 3, 11))


def test_dimension_matches_basis_length():
    for q, m, r in ((7, 2, 3), (13, 2, 4), (9, 2, 4), (13, 3, 3)):
        for ell in spaces.admissible_degrees(q, m, r):
            p = CodeParams(q, m, r, ell)
            assert spaces.dimension_K(p) == spaces.code_space(p).K


def test_direct_sum_decomposition():
    # residue layers at fixed order s partition the degree-<= s monomials
    for q, m, r, s in ((7, 2, 3, 5), (9, 2, 4, 7), (13, 2, 3, 10)):
        total = sum(spaces.build_space(q, m, r, s, c).K for c in range(r))
        boxes = spaces.count_monomials(q, m, s, 1, 0)
        assert total == boxes


def test_params_derived_fields():
    p = CodeParams(13, 3, 3, 17)
    assert (p.a, p.b, p.nu, p.h, p.L) == (1, 5, 4, 1, 5)
    assert p.n * p.r == 13 ** 3 - 1
    assert p.intermediate and p.admissible and not p.terminal
    t = CodeParams(7, 2, 3, 8)
    assert t.terminal and t.admissible
    assert t.b <= 7 - 3  # admissible terminal forces b <= q-3
    with pytest.raises(errors.RNotDivisor):
        CodeParams(7, 2, 4, 3)


def test_admissible_b_at_least_two():
    for q, r in ((7, 3), (13, 4), (17, 4), (25, 6)):
        for m in (2, 3):
            for ell in spaces.admissible_degrees(q, m, r):
                p = CodeParams(q, m, r, ell)
                if r > 2:
                    assert 2 <= p.b <= q - 2
