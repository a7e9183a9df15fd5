import numpy as np
import pytest

from freeqg.reps import (
    Gen,
    MatrixRep,
    PolyParseError,
    SeparationStrategy,
    block_rep,
    check_relations,
    evaluate,
    free_product_rep,
    haar_orthogonal,
    haar_unitary,
    lift_b_to_a,
    operator_norm,
    orthogonal_point_rep,
    parse_poly,
    point_rep,
    separate,
)


def test_parse_poly_structure():
    poly = parse_poly("2.5 i u11 u21' - u22 + 3", 2, "A")
    assert poly.family == "A" and poly.n == 2
    assert len(poly.terms) == 3
    coeff, gens = poly.terms[0]
    assert coeff == pytest.approx(2.5j)
    assert gens == (Gen(1, 1, False), Gen(2, 1, True))
    assert poly.terms[1] == (-1 + 0j, (Gen(2, 2, False),))
    assert poly.terms[2] == (3 + 0j, ())


def test_parse_poly_b_family_letters():
    poly = parse_poly("v12 v21", 2, "B")
    assert poly.terms[0][1] == (Gen(1, 2, False), Gen(2, 1, False))
    with pytest.raises(PolyParseError):
        parse_poly("u11", 2, "B")
    with pytest.raises(PolyParseError):
        parse_poly("v11", 2, "A")


def test_parse_poly_errors_carry_positions():
    with pytest.raises(PolyParseError) as err:
        parse_poly("u11 ?", 2, "A")
    assert err.value.position == 5
    with pytest.raises(PolyParseError) as err:
        parse_poly("u13", 2, "A")
    assert err.value.position == 1
    with pytest.raises(PolyParseError):
        parse_poly("", 2, "A")
    with pytest.raises(PolyParseError):
        parse_poly("u11 + ", 2, "A")
    with pytest.raises(PolyParseError):
        parse_poly("u11 2 u12", 2, "A")
    with pytest.raises(PolyParseError):
        parse_poly("u1", 2, "A")


def test_point_rep_and_evaluate_constants():
    rep = point_rep(np.eye(2))
    poly = parse_poly("u11 - 1", 2, "A")
    assert operator_norm(evaluate(poly, rep)) == 0.0
    poly = parse_poly("u12", 2, "A")
    assert operator_norm(evaluate(poly, rep)) == 0.0
    report = check_relations(rep)
    assert report.passed and report.selfadjoint_residual is None


def test_point_rep_rejects_non_unitary():
    with pytest.raises(ValueError):
        point_rep(np.eye(2) * 0.5)
    with pytest.raises(ValueError):
        point_rep(np.ones((2, 3)))


def test_evaluate_checks_compatibility():
    rep = point_rep(np.eye(2))
    with pytest.raises(ValueError):
        evaluate(parse_poly("u11", 3, "A"), rep)
    with pytest.raises(ValueError):
        evaluate(parse_poly("v11", 2, "B"), rep)


def test_evaluate_adjoint_and_products():
    rng = np.random.default_rng(3)
    w = haar_unitary(2, rng)
    rep = point_rep(w)
    # u11' u11 + u21' u21 - 1 vanishes by unitarity of w
    poly = parse_poly("u11' u11 + u21' u21 - 1", 2, "A")
    assert operator_norm(evaluate(poly, rep)) < 1e-14
    poly = parse_poly("2 u11 u12", 2, "A")
    expected = 2 * w[0, 0] * w[0, 1]
    assert evaluate(poly, rep)[0, 0] == pytest.approx(expected)


def test_orthogonal_point_rep():
    rng = np.random.default_rng(11)
    rep = orthogonal_point_rep(haar_orthogonal(3, rng))
    report = check_relations(rep)
    assert report.passed
    assert report.selfadjoint_residual == 0.0
    with pytest.raises(ValueError):
        orthogonal_point_rep(haar_unitary(3, rng))


def test_free_product_rep_relations_and_validation():
    rng = np.random.default_rng(5)
    twist = haar_unitary(4, rng)
    points = [haar_unitary(3, rng) for _ in range(4)]
    rep = free_product_rep(twist, points, 3)
    assert rep.d == 4 and rep.n == 3
    assert check_relations(rep).passed
    with pytest.raises(ValueError):
        free_product_rep(twist, points[:3], 3)
    with pytest.raises(ValueError):
        free_product_rep(twist, [], 3)
    with pytest.raises(ValueError):
        free_product_rep(twist, [haar_unitary(2, rng)], 3)


def test_free_product_rep_repeats_points_along_runs():
    rng = np.random.default_rng(9)
    twist = np.eye(4)
    points = [haar_unitary(2, rng), haar_unitary(2, rng)]
    rep = free_product_rep(twist, points, 2)
    diag = np.diagonal(rep.images[0, 1])
    assert diag[0] == diag[1] == points[0][0, 1]
    assert diag[2] == diag[3] == points[1][0, 1]


def test_block_rep():
    rng = np.random.default_rng(13)
    left = point_rep(haar_unitary(2, rng))
    right = point_rep(haar_unitary(3, rng))
    rep = block_rep(left, right)
    assert rep.n == 5 and rep.d == 1
    assert check_relations(rep).passed
    assert operator_norm(rep.images[0, 3]) == 0.0
    with pytest.raises(ValueError):
        block_rep(left, orthogonal_point_rep(haar_orthogonal(2, rng)))
    deeper = free_product_rep(haar_unitary(2, rng), [haar_unitary(3, rng)] * 2, 3)
    with pytest.raises(ValueError):
        block_rep(left, deeper)


def test_lift_b_to_a_broadcasts_and_checks():
    rng = np.random.default_rng(17)
    brep = orthogonal_point_rep(haar_orthogonal(3, rng))
    lifted = lift_b_to_a(haar_unitary(4, rng), brep)
    assert lifted.family == "A" and lifted.d == 4
    assert check_relations(lifted).passed
    scalar_lift = lift_b_to_a(haar_unitary(1, rng), brep)
    assert scalar_lift.d == 1
    with pytest.raises(ValueError):
        lift_b_to_a(haar_unitary(2, rng), point_rep(haar_unitary(3, rng)))
    broken = MatrixRep("B", 2, 1, np.zeros((2, 2, 1, 1)))
    with pytest.raises(ValueError):
        lift_b_to_a(haar_unitary(1, rng), broken)


def test_check_relations_fails_on_garbage():
    rep = MatrixRep("A", 2, 1, np.full((2, 2, 1, 1), 0.5))
    report = check_relations(rep)
    assert not report.passed
    assert report.max_residual > 0.1


def test_haar_draws_are_deterministic_and_unitary():
    a = haar_unitary(4, np.random.default_rng(123))
    b = haar_unitary(4, np.random.default_rng(123))
    assert np.array_equal(a, b)
    assert operator_norm(a.conj().T @ a - np.eye(4)) < 1e-12
    o = haar_orthogonal(4, np.random.default_rng(123))
    assert operator_norm(o.T @ o - np.eye(4)) < 1e-12
    assert not np.iscomplexobj(o)


def test_strategy_validation():
    with pytest.raises(ValueError):
        SeparationStrategy("nope")
    with pytest.raises(ValueError):
        SeparationStrategy("point", 0)
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        SeparationStrategy("freeproduct").draw(2, "B", rng)
    with pytest.raises(ValueError):
        SeparationStrategy("block").draw(1, "A", rng)


def test_commutator_vanishes_exactly_on_point_reps():
    poly = parse_poly("u11 u12 - u12 u11", 2, "A")
    for seed in range(10):
        rep = point_rep(haar_unitary(2, np.random.default_rng(seed)))
        assert operator_norm(evaluate(poly, rep)) == 0.0


def test_separate_finds_commutator_witness():
    poly = parse_poly("u11 u12 - u12 u11", 2, "A")
    witness = separate(
        poly, SeparationStrategy("freeproduct", 2), trials=10, seed=42, tol=1e-6
    )
    assert witness is not None
    assert witness.trial == 0
    assert witness.norm > 1e-6
    assert check_relations(witness.rep).passed
    # replaying the winning trial reproduces the representation exactly
    replay = SeparationStrategy("freeproduct", 2).draw(
        2, "A", np.random.default_rng(42 + witness.trial)
    )
    assert np.array_equal(replay.images, witness.rep.images)


def test_separate_gives_up_on_zero_polynomial():
    poly = parse_poly("u11 u12 - u11 u12", 2, "A")
    assert separate(poly, SeparationStrategy("point", 1), trials=5, seed=0) is None


def test_matrix_rep_json_roundtrip_shape():
    rep = point_rep(np.eye(2))
    doc = rep.to_json()
    assert doc["family"] == "A" and doc["n"] == 2 and doc["d"] == 1
    assert doc["images"][0][0] == [[[1.0, 0.0]]]
    assert doc["images"][0][1] == [[[0.0, 0.0]]]
