import itertools

import pytest

from mv2bool.core import (
    And,
    Atom,
    BAnd,
    BNot,
    BOr,
    BVar,
    BoolFormula,
    Const,
    MVNetwork,
    MVVariable,
    Mode,
    Or,
    Rule,
    SupportMap,
    asynchronous_mode,
    canonical_dnf,
    eval_guard,
    format_dnf,
    is_unitary_stepwise,
    local_step,
    minterm,
)
from mv2bool.errors import CapacityError, SpecificationError

from netzoo import fig_running, oracle_running_g


def test_eval_guard_atoms():
    guard = And((Atom("x", "=", 1), Atom("y", ">=", 2)))
    assert eval_guard(guard, {"x": 1, "y": 2}) is True
    assert eval_guard(Const(True), {}) is True
    guard = And((Atom("x", "=", 0), Atom("y", "=", 3)))
    assert eval_guard(guard, {"x": 1, "y": 3}) is False


def test_eval_guard_all_operators():
    env = {"y": 2}
    assert eval_guard(Atom("y", "!=", 1), env)
    assert eval_guard(Atom("y", "<", 3), env)
    assert eval_guard(Atom("y", "<=", 2), env)
    assert eval_guard(Atom("y", ">", 1), env)
    assert not eval_guard(Not(Atom("y", ">=", 2)), env)


def test_eval_guard_unbound_variable():
    with pytest.raises(SpecificationError):
        eval_guard(Atom("z", "=", 0), {"x": 1})


def test_local_step_running_example():
    net = fig_running()
    assert local_step(net, "y", {"x": 1, "y": 0}) == 1
    assert local_step(net, "y", {"x": 0, "y": 0}) == 0
    assert local_step(net, "x", {"x": 0, "y": 3}) == 1


def test_local_step_matches_oracle_everywhere():
    net = fig_running()
    for x, y in itertools.product(range(2), range(4)):
        env = {"x": x, "y": y}
        assert (local_step(net, "x", env), local_step(net, "y", env)) == \
            oracle_running_g(x, y)


def test_local_step_stays_in_range():
    net = fig_running()
    for state in net.states():
        env = net.state_dict(state)
        for v in net.variables:
            assert 0 <= local_step(net, v.name, env) <= v.max_level


def test_unitary_stepwise_running_example():
    ok, violations = is_unitary_stepwise(fig_running())
    assert ok and violations == []


def test_unitary_stepwise_jump_detected():
    net = MVNetwork(
        (MVVariable("y", 2),), {"y": (Rule(2, Atom("y", "=", 0)),)}
    )
    ok, violations = is_unitary_stepwise(net)
    assert not ok
    assert ("y", {"y": 0}) in violations


def test_unitary_stepwise_no_rules():
    small = MVNetwork((MVVariable("y", 1),), {})
    assert is_unitary_stepwise(small) == (True, [])
    # with more than two levels the default jump to 0 is too wide
    wide = MVNetwork((MVVariable("y", 3),), {})
    ok, violations = is_unitary_stepwise(wide)
    assert not ok
    assert violations == [("y", {"y": 2}), ("y", {"y": 3})]


def test_unitary_stepwise_cap():
    net = MVNetwork((MVVariable("a", 3), MVVariable("b", 3)), {})
    with pytest.raises(CapacityError) as err:
        is_unitary_stepwise(net, cap=8)
    assert "4 * 4" in str(err.value)


def test_rule_order_sensitivity():
    overlapping = lambda first: MVNetwork(
        (MVVariable("y", 2),),
        {
            "y": (
                Rule(first, Atom("y", "<=", 1)),
                Rule(3 - first, Atom("y", "<=", 1)),
            )
        },
    )
    assert local_step(overlapping(1), "y", {"y": 0}) == 1
    assert local_step(overlapping(2), "y", {"y": 0}) == 2
    # disjoint guards: order never matters
    a = Rule(1, Atom("y", "=", 0))
    b = Rule(2, Atom("y", "=", 1))
    net_ab = MVNetwork((MVVariable("y", 2),), {"y": (a, b)})
    net_ba = MVNetwork((MVVariable("y", 2),), {"y": (b, a)})
    for y in range(3):
        assert local_step(net_ab, "y", {"y": y}) == \
            local_step(net_ba, "y", {"y": y})


def test_network_validation():
    with pytest.raises(SpecificationError):
        MVNetwork((MVVariable("y", 0),), {})
    with pytest.raises(SpecificationError):
        MVNetwork((MVVariable("y", 1), MVVariable("y", 2)), {})
    with pytest.raises(SpecificationError):
        MVNetwork((MVVariable("y", 1),), {"z": (Rule(1, Const(True)),)})
    with pytest.raises(SpecificationError):
        MVNetwork((MVVariable("y", 1),), {"y": (Rule(2, Const(True)),)})
    with pytest.raises(SpecificationError):
        MVNetwork(
            (MVVariable("y", 1),), {"y": (Rule(1, Atom("z", "=", 0)),)}
        )


def test_mode_invariants():
    with pytest.raises(SpecificationError):
        Mode((frozenset(),))
    with pytest.raises(SpecificationError):
        Mode((frozenset({"a"}), frozenset({"a"})))
    mode = asynchronous_mode(("a", "b"))
    assert mode.label(0) == "a"
    with pytest.raises(SpecificationError):
        mode.validate_over(("a",))


def test_support_map_invariants():
    with pytest.raises(SpecificationError):
        SupportMap({"x": ("b",), "y": ("b",)}, {"x": 1, "y": 1})
    with pytest.raises(SpecificationError):
        SupportMap({"x": ()}, {"x": 1})
    sm = SupportMap({"x": ("x_1",), "y": ("y_1", "y_2")}, {"x": 1, "y": 2})
    assert sm.bool_names == ("x_1", "y_1", "y_2")
    assert sm.owner("y_2") == "y"


def test_canonical_dnf_normalization():
    # contradiction dropped, duplicates merged, supersets absorbed
    terms = [
        [("a", True), ("a", False)],
        [("b", True)],
        [("b", True), ("c", False)],
        [("b", True)],
    ]
    assert canonical_dnf(terms) == ((("b", True),),)
    assert canonical_dnf([[]]) == ((),)
    assert canonical_dnf([]) == ()


def test_formula_from_ast_pushes_negation():
    ast = BNot(BAnd((BVar("a"), BNot(BVar("b")))))
    f = BoolFormula(ast)
    assert f.dnf == ((("a", False),), (("b", True),))
    g = BoolFormula(BOr((BNot(BVar("a")), BVar("b"))))
    assert f == g and hash(f) == hash(g)


def test_formula_evaluation_and_equivalence():
    f = BoolFormula.from_dnf([[("a", True), ("b", False)]])
    assert f.evaluate({"a": 1, "b": 0})
    assert not f.evaluate({"a": 1, "b": 1})
    g = BoolFormula.from_dnf([[("b", False), ("a", True)]])
    assert f.equivalent_to(g)
    assert not f.equivalent_to(BoolFormula.true())
    with pytest.raises(SpecificationError):
        f.evaluate({"a": 1})


def test_format_dnf():
    assert format_dnf(()) == "0"
    assert format_dnf(((),)) == "1"
    single = BoolFormula.from_dnf([[("x_1", True)]])
    assert str(single) == "x_1"
    ors = BoolFormula.from_dnf([[("y_1", True)], [("y_2", True)]])
    assert str(ors) == "y_1 | y_2"
    mixed = BoolFormula.from_dnf(
        [[("x_1", True), ("y_1", False)], [("x_1", False), ("y_1", True)]]
    )
    assert str(mixed) == "(x_1 & !y_1) | (!x_1 & y_1)"
    lone = BoolFormula.from_dnf([[("x_1", True), ("y_1", False)]])
    assert str(lone) == "x_1 & !y_1"


def test_minterm():
    assert minterm(("a", "b"), (1, 0)) == (("a", True), ("b", False))
    with pytest.raises(SpecificationError):
        minterm(("a",), (1, 0))


from mv2bool.core import Not  # noqa: E402  (used in an early test)
