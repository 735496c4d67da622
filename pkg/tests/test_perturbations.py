"""Rank-one perturbations, distance bounds, Weyr deltas, and the harness."""

import json
import random

import pytest

from weyrlab.errors import DimensionMismatch, NotRegularError
from weyrlab.io_formats import report_to_dict
from weyrlab.linalg import Matrix, unit_vector, vector
from weyrlab.pencils import CanonicalSpec, OperatorPencil, jordan_block
from weyrlab.perturbations import (
    PerturbationSpec,
    SuiteConfig,
    TrialInputs,
    apply_perturbation,
    greedy_shrink,
    matching_representation_distance,
    random_trial,
    relation_distance,
    run_suite,
    weyr_delta_check,
)
from weyrlab.relations import LinearRelation
from weyrlab.scalars import gr

I2 = Matrix.identity(2)
J2 = jordan_block(gr(0), 2)
ZERO2 = Matrix.zeros(2, 2)
E1 = unit_vector(0, 2)
E2 = unit_vector(1, 2)


def test_spec_slot_validation():
    with pytest.raises(ValueError):
        PerturbationSpec(kind="type_v", u=E1, v_func=E1)  # w missing
    with pytest.raises(ValueError):
        PerturbationSpec(kind="type_u", u=E1, v_func=E1, w=E2, w_func=E2)
    with pytest.raises(ValueError):
        PerturbationSpec(kind="sideways", u=E1, v_func=E1, w=E2)


def test_apply_perturbation_zero_data_is_identity():
    p = OperatorPencil.from_matrices(I2, J2)
    zero = vector([0, 0])
    spec = PerturbationSpec(kind="type_v", u=zero, v_func=zero, w=zero)
    assert apply_perturbation(p, spec) == p


def test_apply_perturbation_worked_example():
    p = OperatorPencil.from_matrices(ZERO2, ZERO2)
    spec = PerturbationSpec(kind="type_u", u=E1, v_func=E1, w_func=E2)
    hat = apply_perturbation(p, spec)
    assert hat.e_mat == Matrix.from_rows([[1, 0], [0, 0]])
    assert hat.a_mat == Matrix.from_rows([[0, 1], [0, 0]])


def test_apply_perturbation_type_u_on_jordan_pencil():
    p = OperatorPencil.from_matrices(I2, J2)
    spec = PerturbationSpec(kind="type_u", u=E1, v_func=vector([0, 0]), w_func=E1)
    hat = apply_perturbation(p, spec)
    assert hat.e_mat == I2
    assert hat.a_mat == Matrix.from_rows([[1, 1], [0, 0]])


def test_apply_perturbation_length_check():
    p = OperatorPencil.from_matrices(I2, J2)
    with pytest.raises(DimensionMismatch):
        apply_perturbation(p, PerturbationSpec(kind="type_v", u=vector([1]), v_func=E1, w=E2))


def test_relation_distance_basics():
    l = LinearRelation.from_graph(J2)
    assert relation_distance(l, l) == 0
    zero_graph = LinearRelation.from_graph(ZERO2)
    proj = LinearRelation.from_graph(Matrix.from_rows([[1, 0], [0, 0]]))
    # intersection is {(x, 0) : x on the second axis}, so both quotients are 1
    assert relation_distance(zero_graph, proj) == 1
    with pytest.raises(DimensionMismatch):
        relation_distance(l, LinearRelation.identity(3))


def test_matching_distance_zero_perturbation():
    p = OperatorPencil.from_matrices(I2, J2)
    zero = vector([0, 0])
    d, ok = matching_representation_distance(p, PerturbationSpec(kind="type_v", u=zero, v_func=zero, w=zero))
    assert (d, ok) == (0, True)


def test_matching_distance_bound_randomized():
    rng = random.Random(3)
    for trial in range(60):
        n = rng.randint(1, 5)
        e = Matrix.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        a = Matrix.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        p = OperatorPencil.from_matrices(e, a)
        u = vector([rng.randint(-3, 3) for _ in range(n)])
        vf = vector([rng.randint(-3, 3) for _ in range(n)])
        wx = vector([rng.randint(-3, 3) for _ in range(n)])
        if trial % 2 == 0:
            spec = PerturbationSpec(kind="type_v", u=u, v_func=vf, w=wx)
        else:
            spec = PerturbationSpec(kind="type_u", u=u, v_func=vf, w_func=wx)
        d, ok = matching_representation_distance(p, spec)
        assert ok and d <= 1


def test_offside_distance_can_reach_two():
    p = OperatorPencil.from_matrices(ZERO2, ZERO2)
    type_u = PerturbationSpec(kind="type_u", u=E1, v_func=E1, w_func=E2)
    hat = apply_perturbation(p, type_u)
    offside = relation_distance(p.range_representation(), hat.range_representation())
    assert offside == 2
    matching, ok = matching_representation_distance(p, type_u)
    assert matching <= 1 and ok


def test_weyr_delta_identical_pencils():
    p = OperatorPencil.from_matrices(I2, J2)
    res = weyr_delta_check(p, p)
    assert res.passed and not res.has_nonzero_delta
    for _, tb, tp in res.tables:
        assert tb.indices == tp.indices


def test_weyr_delta_worked_example():
    base = OperatorPencil.from_matrices(I2, J2)
    pert = OperatorPencil.from_matrices(I2, Matrix.from_rows([[1, 1], [0, 0]]))
    res = weyr_delta_check(base, pert)
    tables = {str(pt): (tb.indices, tp.indices) for pt, tb, tp in res.tables}
    assert tables["0"] == ((1, 1), (1,))
    assert res.passed
    assert res.has_nonzero_delta


def test_weyr_delta_jordan3_perturbation():
    base = OperatorPencil.from_matrices(Matrix.identity(3), jordan_block(gr(0), 3))
    spec = PerturbationSpec(
        kind="type_u", u=unit_vector(0, 3), v_func=vector([0, 0, 0]), w_func=unit_vector(2, 3)
    )
    pert = apply_perturbation(base, spec)
    res = weyr_delta_check(base, pert)
    assert res.passed
    for pt, tb, tp in res.tables:
        for k in range(1, 5):
            assert abs(tb.index_at(k) - tp.index_at(k)) <= 1


def test_weyr_delta_requires_regular():
    zero = OperatorPencil.from_matrices(ZERO2, ZERO2)
    with pytest.raises(NotRegularError):
        weyr_delta_check(zero, zero)


def test_irrational_eigenvalues_pass_when_simple():
    # base has eigenvalues +-sqrt(2); the perturbed pencil is rational
    base = OperatorPencil.from_matrices(I2, Matrix.from_rows([[0, 2], [1, 0]]))
    pert = OperatorPencil.from_matrices(I2, Matrix.from_rows([[1, 2], [1, 0]]))
    res = weyr_delta_check(base, pert)
    assert res.passed
    assert base.spectrum().residual.degree == 2


def test_irrational_eigenvalue_multiplicity_is_flagged():
    # two copies of the sqrt(2) companion block: geometric multiplicity 2 at
    # +-sqrt(2), which no rank-one neighbour can mask
    a = Matrix.from_rows(
        [[0, 2, 0, 0], [1, 0, 0, 0], [0, 0, 0, 2], [0, 0, 1, 0]]
    )
    base = OperatorPencil.from_matrices(Matrix.identity(4), a)
    other = OperatorPencil.from_matrices(
        Matrix.identity(4), jordan_block(gr(0), 4)
    )
    res = weyr_delta_check(base, other)
    names = {v.name for v in res.violations}
    assert "irrational_eigenvalue_multiplicity_base" in names


def test_greedy_shrink_reaches_minimal_inputs():
    blocks = CanonicalSpec(((gr(1), 2), (gr(0), 1)), (1,))
    s = Matrix.from_rows([[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    inputs = TrialInputs(
        trial_id=0,
        blocks=blocks,
        s_mat=s,
        t_mat=Matrix.identity(4),
        pspec=PerturbationSpec(
            kind="type_v", u=vector([1, 2, 0, 3]), v_func=vector([4, 5, 6, 0]), w=vector([7, 0, 8, 9])
        ),
    )

    def fake_violation(cand: TrialInputs) -> bool:
        return bool(cand.pspec.u[0])

    shrunk = greedy_shrink(inputs, fake_violation)
    assert fake_violation(shrunk)
    assert shrunk.blocks.total_size == 1
    assert shrunk.pspec.u == vector([1])
    assert shrunk.pspec.v_func == vector([0])
    assert shrunk.pspec.w == vector([0])
    assert shrunk.s_mat == Matrix.identity(1)


def test_random_trial_is_deterministic():
    cfg = SuiteConfig(trials=1, seed=99, max_dim=4)
    a = random_trial(cfg, 5)
    b = random_trial(cfg, 5)
    assert a.base == b.base and a.perturbed == b.perturbed
    assert a.tables == b.tables and a.distance == b.distance


def test_random_trial_retry_cap_reports_without_crashing():
    cfg = SuiteConfig(trials=1, seed=1, max_dim=3, retry_cap=0)
    res = random_trial(cfg, 0)
    assert [v.name for v in res.violations] == ["generation_retry_cap_exhausted"]


def test_run_suite_empty():
    rep = run_suite("perturbation_bounds", SuiteConfig(trials=0, seed=42))
    assert rep.trials == 0 and rep.failed == 0 and rep.failures == ()


def test_run_suite_unknown_name():
    from weyrlab.errors import ParseError

    with pytest.raises(ParseError):
        run_suite("nonsense", SuiteConfig(trials=1, seed=1))


def test_reports_are_deterministic_excluding_elapsed():
    cfg = SuiteConfig(trials=8, seed=123, max_dim=4)
    r1 = run_suite("perturbation_bounds", cfg)
    r2 = run_suite("perturbation_bounds", cfg)
    d1 = json.dumps(report_to_dict(r1, include_elapsed=False), sort_keys=True)
    d2 = json.dumps(report_to_dict(r2, include_elapsed=False), sort_keys=True)
    assert d1 == d2


def test_run_all_covers_every_suite():
    rep = run_suite("all", SuiteConfig(trials=2, seed=7, max_dim=3))
    from weyrlab.perturbations import SUITE_NAMES

    assert rep.trials == 2 * len(SUITE_NAMES)
    assert rep.failed == 0


@pytest.mark.parametrize(
    "suite",
    [
        "resolvent_representation",
        "kernel_range_identities",
        "spectrum_equality",
        "weyr_equality",
        "singular_subspace",
        "matching_distance",
        "perturbation_bounds",
        "relation_weyr_bound",
    ],
)
def test_each_suite_smoke(suite):
    rep = run_suite(suite, SuiteConfig(trials=4, seed=2024, max_dim=4))
    assert rep.failed == 0, [f.name for f in rep.failures]
