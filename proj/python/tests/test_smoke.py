import pytest

import condsym

BSQ = "u_yy + u*u_xx + u_x^2 + u_xxxx"


@pytest.fixture
def ws():
    return condsym.Workspace()


def test_parse_and_print(ws):
    assert str(ws.parse("-2*x + y^2")) == "y^2 - 2*x"
    assert (ws.parse("(x+y)^2") - ws.parse("x^2 + 2*x*y + y^2")).is_zero()
    with pytest.raises(condsym.ParseError):
        ws.parse("x + * y")


def test_total_derivative(ws):
    c = ws.parse("2*y + y*u_x + u_y")
    assert ws.total_derivative(c, "x") == ws.parse("y*u_xx + u_xy")


def test_prolongation_and_invariants(ws):
    x1 = ws.field("y", "1", "-2*y")
    assert x1.prolong(1)["y"] == ws.parse("-2 - u_x")
    assert str(x1.characteristic()) == "y*u_x + 2*y + u_y"
    assert x1.is_invariant(ws.parse("u_yy + 2*y*u_xy + 2*(y^2 - x)*u_xx"))
    assert not x1.is_invariant(ws.parse("x"))


def test_symmetry_checks(ws):
    x1 = ws.field("y", "1", "-2*y")
    bsq = ws.equation(BSQ)
    assert bsq.variable == "u_xxxx"
    assert condsym.is_conditional_symmetry(x1, bsq)
    assert not condsym.is_point_symmetry(x1, bsq)
    kdv = ws.equation("u_y - 1/y*(u_xxx + u*u_x) + 2*y", "u_y")
    verdict, factor = condsym.classify(x1, kdv)
    assert verdict == "point-equivalent"
    assert factor == ws.parse("y")


def test_reduce_and_construct():
    ws = condsym.Workspace(constants=["I0", "I1", "I2", "I7"])
    x1 = ws.field("y", "1", "-2*y")
    comb = ws.parse("(2*x + u)*u_xx + u_yy + 2*y*u_xy + 2*(y^2 - x)*u_xx + u_xxxx + u_x^2")
    assert condsym.reduce(ws, comb, x1, ["x"]) == ws.parse(BSQ)
    inv = [("I0", ws.parse("-2*x + y^2")), ("I1", ws.parse("2*x + u")), ("I2", ws.parse("u_x")),
           ("I7", ws.parse("u_xxx"))]
    eq = condsym.construct_equation(ws, inv, ws.parse("I7 + (I1 + I0)*I2"), x1, "u_y", solve_base="u_x")
    assert eq.rhs == ws.parse("(u_xxx + u*u_x)/y - 2*y")


def test_determining(ws):
    system = condsym.determining_system(ws.equation("u*u_xx + u_yy", "u_yy"))
    assert system.check(ws.field("x", "y", "0"))
    assert not system.check(ws.field("y", "1", "-2*y"))


def test_functions():
    ws = condsym.Workspace(constants=["g3"], functions=[("wp", "wpd(s)", ""), ("wpd", "6*wp(s)^2", "4*wp(s)^3 - g3")])
    assert ws.parse("wpd(y)^2 - 4*wp(y)^3 + g3").is_zero()


def test_corpus_entry():
    root = condsym.default_corpus_root()
    results = condsym.verify_problem(root / "problems" / "bsq-X1.ini")
    assert results and all(r["status"] == "pass" for r in results)
