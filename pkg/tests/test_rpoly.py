import numpy as np
import pytest

from constarm import errors, gf, linalg, rpoly

F7 = gf.make_field(7, 1)


def P(terms, field=F7, m=2):
    return rpoly.ReducedPoly(field, m, terms)


def test_reduce_product_exponent_rule():
    # X1 * X1^6 = X1^7 reduces to X1 (e=7 -> 1 + (6 mod 6) = 1)
    f = P({(1, 0): 1})
    g = P({(6, 0): 1})
    assert rpoly.reduce_product(f, g).terms == {(1, 0): 1}


def test_reduce_product_pencil_factors():
    # (X1 - X2)(X1 - 2 X2) = X1^2 + 4 X1 X2 + 2 X2^2 over F_7
    f = P({(1, 0): 1, (0, 1): -1})
    g = P({(1, 0): 1, (0, 1): -2})
    assert rpoly.reduce_product(f, g).terms == {(2, 0): 1, (1, 1): 4, (0, 2): 2}


def test_reduce_product_identity_and_mismatch():
    f = P({(3, 2): 5, (0, 1): 2})
    one = rpoly.constant(F7, 2, 1)
    assert rpoly.reduce_product(f, one) == f
    with pytest.raises(errors.DimensionMismatch):
        rpoly.reduce_product(f, rpoly.constant(F7, 3, 1))


def test_evaluate_examples():
    f = P({(1, 1): 1})
    assert rpoly.evaluate(f, (2, 3)) == 6
    ind = P({(0, 0): 1, (6, 0): -1})  # 1 - X1^6
    assert rpoly.evaluate(ind, (0, 5)) == 1
    assert rpoly.evaluate(ind, (4, 5)) == 0
    assert rpoly.evaluate(rpoly.zero(F7, 2), (3, 3)) == 0
    with pytest.raises(errors.DimensionMismatch):
        rpoly.evaluate(f, (1, 2, 3))


def test_residue_class_examples():
    assert rpoly.residue_class(P({(2, 0): 1, (1, 1): 1}), 3) == 2
    # (1 - X1^6) X2^2 has degrees 2 and 8, both = 2 mod 3
    f = rpoly.reduce_product(P({(0, 0): 1, (6, 0): -1}), P({(0, 2): 1}))
    assert sorted(sum(e) for e in f.terms) == [2, 8]
    assert rpoly.residue_class(f, 3) == 2
    assert rpoly.residue_class(P({(1, 0): 1, (1, 1): 1}), 3) is None
    with pytest.raises(errors.ZeroPolynomial):
        rpoly.residue_class(rpoly.zero(F7, 2), 3)


def test_scalar_dilate_examples():
    f = P({(2, 0): 1})
    assert rpoly.scalar_dilate(f, 2).terms == {(2, 0): 4}
    # pencil F_{0,2}: dilation by alpha in mu_3 multiplies by alpha^b
    from constarm import witnesses

    pen = witnesses.pencil(7, 2, witnesses.pencil_spec(7, 0, 2))
    assert rpoly.scalar_dilate(pen, 2) == rpoly.poly_scale(pen, 4)
    assert rpoly.scalar_dilate(pen, 1) == pen
    with pytest.raises(errors.ZeroScalar):
        rpoly.scalar_dilate(pen, 0)


def test_scalar_dilate_round_trip():
    rng = np.random.default_rng(5)
    for _ in range(20):
        f = P({tuple(rng.integers(0, 7, 2)): int(rng.integers(1, 7)) for _ in range(4)})
        for a in range(1, 7):
            g = rpoly.scalar_dilate(rpoly.scalar_dilate(f, a), F7.inv(a))
            assert g == f


def test_leading_monomial_examples():
    assert rpoly.leading_monomial(P({(2, 0): 1, (0, 5): 1})) == (0, 5)
    assert rpoly.leading_monomial(P({(1, 1): 1, (0, 2): 1})) == (1, 1)
    from constarm import witnesses

    pen = witnesses.pencil(7, 2, witnesses.pencil_spec(7, 0, 2))
    assert rpoly.leading_monomial(pen) == (2, 0)
    with pytest.raises(errors.ZeroPolynomial):
        rpoly.leading_monomial(rpoly.zero(F7, 2))


def test_substitute_linear_examples():
    f = P({(1, 0): 1})
    ident = np.eye(2, dtype=np.int16)
    assert rpoly.substitute_linear(f, ident) == f
    swap = np.array([[0, 1], [1, 0]], dtype=np.int16)
    assert rpoly.substitute_linear(f, swap).terms == {(0, 1): 1}
    with pytest.raises(errors.SingularMatrix):
        rpoly.substitute_linear(f, np.array([[1, 1], [2, 2]], dtype=np.int16))


def test_substitute_linear_agreement_and_invariants():
    rng = np.random.default_rng(11)
    pts = rpoly.grid_coords(F7, 2)
    for _ in range(10):
        # random pure residue-2 polynomial mod 3 over F_7
        terms = {}
        for e in [(2, 0), (1, 1), (0, 2), (5, 0), (2, 3), (0, 5)]:
            c = int(rng.integers(0, 7))
            if c:
                terms[e] = c
        if not terms:
            continue
        f = P(terms)
        while True:
            T = rng.integers(0, 7, size=(2, 2)).astype(np.int16)
            if linalg.is_invertible(F7, T):
                break
        g = rpoly.substitute_linear(f, T)
        Tinv = linalg.mat_inv(F7, T)
        moved = F7.matmul(pts.astype(np.int16), Tinv)
        for P_, Q_ in zip(pts, np.asarray(moved)):
            assert rpoly.evaluate(g, P_) == rpoly.evaluate(f, Q_)
        assert rpoly.residue_class(g, 3) == 2
        assert g.total_degree == f.total_degree
        assert rpoly.support_size(g) == rpoly.support_size(f)


def test_product_evaluation_agreement_full_domain():
    rng = np.random.default_rng(3)
    for q, m in ((7, 2), (9, 2)):
        F = gf.field_from_order(q)
        pts = rpoly.grid_coords(F, m)
        for _ in range(5):
            f = rpoly.ReducedPoly(
                F, m, {tuple(rng.integers(0, q, m)): int(rng.integers(1, q)) for _ in range(3)}
            )
            g = rpoly.ReducedPoly(
                F, m, {tuple(rng.integers(0, q, m)): int(rng.integers(1, q)) for _ in range(3)}
            )
            h = rpoly.reduce_product(f, g)
            vf = rpoly.values_on_grid(f)
            vg = rpoly.values_on_grid(g)
            vh = rpoly.values_on_grid(h)
            assert np.array_equal(vh, F.mul_index(vf, vg))


def test_uniqueness_of_reduced_representative():
    rng = np.random.default_rng(9)
    for _ in range(10):
        f = P({tuple(rng.integers(0, 7, 2)): int(rng.integers(1, 7)) for _ in range(5)})
        vals = rpoly.values_on_grid(f)
        coeffs = rpoly.batch_coeffs(F7, 2, vals[None, :])[0]
        g = rpoly.from_coeff_vector(F7, 2, coeffs)
        assert g == f


def test_grid_engine_matches_pointwise_on_extension_field():
    F9 = gf.make_field(3, 2)
    rng = np.random.default_rng(2)
    f = rpoly.ReducedPoly(
        F9, 2, {tuple(rng.integers(0, 9, 2)): int(rng.integers(1, 9)) for _ in range(6)}
    )
    grid = rpoly.batch_values(F9, 2, rpoly.coeff_vector(f)[None, :])[0]
    for i, pt in enumerate(rpoly.grid_coords(F9, 2)):
        assert grid[i] == rpoly.evaluate(f, pt)


def test_text_serialization_round_trip():
    f = P({(2, 0): 1, (1, 1): 6})
    text = rpoly.to_text(f)
    assert text == "1*X1^2*X2^0 + 6*X1^1*X2^1"
    assert rpoly.from_text(F7, 2, text) == f
    assert rpoly.to_text(rpoly.zero(F7, 2)) == "0"
    assert rpoly.from_text(F7, 2, "0").is_zero()
