import numpy as np
import pytest

from qbayes.bayesnet import (
    BayesNet,
    CPT,
    Variable,
    parse_model,
    render_model,
    topological_order,
    validate,
)
from qbayes.errors import ModelError

from .conftest import random_net


def net_from(variables, cpts):
    return BayesNet(
        tuple(Variable(n, i) for i, n in enumerate(variables)), tuple(cpts)
    )


class TestValidate:
    def test_ids_net_is_ok(self, ids_net):
        assert validate(ids_net) == []

    def test_cycle_reported(self):
        net = net_from(["A", "B"], [CPT((1,), {(0,): 0.5, (1,): 0.5}),
                                    CPT((0,), {(0,): 0.5, (1,): 0.5})])
        violations = validate(net)
        assert any(v.startswith("cycle:") for v in violations)

    def test_probability_out_of_range(self):
        net = net_from(["A"], [CPT((), {(): 1.3})])
        assert any("out of range" in v for v in violations_of(net))

    def test_missing_row(self):
        net = net_from(
            ["A", "B"],
            [CPT((), {(): 0.5}), CPT((0,), {(0,): 0.5})],
        )
        assert any("missing CPT row" in v for v in violations_of(net))

    def test_duplicate_name(self):
        net = net_from(["A", "A"], [CPT((), {(): 0.5}), CPT((), {(): 0.5})])
        assert any("duplicate" in v for v in violations_of(net))

    def test_validate_is_total_on_garbage(self):
        net = net_from(["9bad"], [CPT((7,), {})])
        # must return a verdict, never raise
        assert violations_of(net)


def violations_of(net):
    return validate(net)


class TestTopologicalOrder:
    def test_declaration_order_already_topological(self, ids_net):
        # ids declares X before its parent Y, so Y must come first
        assert topological_order(ids_net) == [1, 0, 2]

    def test_parents_precede_children(self):
        net = net_from(
            ["FA", "X", "Y"],
            [
                CPT((1, 2), {a: 0.5 for a in [(0, 0), (0, 1), (1, 0), (1, 1)]}),
                CPT((), {(): 0.3}),
                CPT((), {(): 0.6}),
            ],
        )
        assert topological_order(net) == [1, 2, 0]

    def test_cycle_raises(self):
        net = net_from(["A", "B"], [CPT((1,), {(0,): 0.5, (1,): 0.5}),
                                    CPT((0,), {(0,): 0.5, (1,): 0.5})])
        with pytest.raises(ModelError, match="cycle"):
            topological_order(net)

    @pytest.mark.parametrize("seed", range(20))
    def test_random_dags_respect_all_edges(self, seed):
        net = random_net(np.random.default_rng(seed), n_min=5, n_max=5)
        order = topological_order(net)
        assert sorted(order) == list(range(net.n))
        pos = {v: i for i, v in enumerate(order)}
        for i in range(net.n):
            for p in net.cpts[i].parents:
                assert pos[p] < pos[i]


class TestParseModel:
    def test_ids_fixture(self, ids_text):
        net = parse_model(ids_text)
        assert [v.name for v in net.variables] == ["X", "Y", "FA"]
        assert len(net.cpts[2].rows) == 4

    def test_missing_row_named(self):
        text = (
            "variables: [X, Y, FA]\n"
            "X: {cpt: {parents: [], rows: {'': 0.3}}}\n"
            "Y: {cpt: {parents: [], rows: {'': 0.6}}}\n"
            "FA: {cpt: {parents: [X, Y], rows: {'0,0': 0.1, '0,1': 0.2, '1,1': 0.4}}}\n"
        )
        with pytest.raises(ModelError, match="X=1,Y=0"):
            parse_model(text)

    def test_undeclared_parent(self):
        text = (
            "variables: [A]\n"
            "A: {cpt: {parents: [Z], rows: {'0': 0.1, '1': 0.2}}}\n"
        )
        with pytest.raises(ModelError, match="undeclared parent"):
            parse_model(text)

    def test_syntax_error(self):
        with pytest.raises(ModelError, match="syntax"):
            parse_model("variables: [A\n  broken")

    def test_unquoted_single_bit_keys(self):
        # YAML turns bare 0/1 keys into ints; the parser must accept them
        text = (
            "variables: [A, B]\n"
            "A: {cpt: {parents: [], rows: {'': 0.3}}}\n"
            "B: {cpt: {parents: [A], rows: {0: 0.1, 1: 0.9}}}\n"
        )
        net = parse_model(text)
        assert net.cpts[1].rows == {(0,): 0.1, (1,): 0.9}

    @pytest.mark.parametrize("seed", range(25))
    def test_roundtrip(self, seed):
        net = random_net(np.random.default_rng(seed))
        assert parse_model(render_model(net)) == net

    def test_roundtrip_ids(self, ids_net):
        assert parse_model(render_model(ids_net)) == ids_net
