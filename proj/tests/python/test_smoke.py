import os
import pathlib
from fractions import Fraction

import pytest

import expgame

GAMES = pathlib.Path(os.environ.get("EXPGAME_GAMES_DIR", pathlib.Path(__file__).resolve().parents[2] / "games"))


def load(name):
    return expgame.parse_game((GAMES / name).read_text())


def test_parse_game():
    g = load("example2.exg")
    assert g.k == 1
    assert g.players == ["P1", "P2"]
    assert g.controls == [["p1"], ["p2"]]
    assert g.strategy_count(0) == 2
    assert g.strategy(0, 1) == [Fraction(1)]
    assert "goal P1: ~d(E[P1], E[P2])" in str(g)


def test_parse_errors_are_value_errors():
    with pytest.raises(ValueError, match="missing goal for P1"):
        expgame.parse_game("k: 1\nplayer P1 controls p\npayoff P1: p\n")


def test_expectations_and_goals():
    g = load("example2.exg")
    p = expgame.parse_profile(g, (GAMES / "uniform_point.prof").read_text())
    assert expgame.expected_payoffs(g, p) == [Fraction(1, 2), Fraction(1)]
    assert expgame.goal_values(g, p) == [Fraction(1, 2), Fraction(1, 2)]
    assert expgame.payoffs(g, "p1=1,p2=0") == [1, 0]


def test_profiles_from_dicts():
    g = load("example2.exg")
    p = expgame.profile(g, [{0: Fraction(1, 2), 1: Fraction(1, 2)}, {1: 1}])
    assert p.strategies == [{0: Fraction(1, 2), 1: Fraction(1, 2)}, {1: Fraction(1)}]
    with pytest.raises(ValueError, match="sum to"):
        expgame.profile(g, [{0: Fraction(1, 3)}, {1: 1}])


def test_verify_example2():
    g = load("example2.exg")
    p = expgame.profile(g, [{0: Fraction(1, 2), 1: Fraction(1, 2)}, {1: 1}])
    r = expgame.verify(g, p)
    assert r["verdict"] == "not-equilibrium"
    assert r["player"] == "P1"
    assert r["witness"] == {1: Fraction(1)}
    assert r["new_value"] > r["old_value"]


def test_search_and_dynamics():
    g1 = load("example1.exg")
    r = expgame.search(g1, 1)
    assert r["certified"] is not None
    assert r["certified"].strategies == [{1: 1}, {1: 1}]
    g2 = load("example2.exg")
    assert expgame.search(g2, 2)["epsilon"] > 0
    d = expgame.dynamics(g2, max_iters=50)
    assert d["status"] == "cycle"
    assert d["period"] == 4


def test_compile_is_deterministic():
    g = load("example1.exg")
    text = expgame.compile_existence(g)
    assert "(set-logic NRA)" in text
    assert text == expgame.compile_existence(g)
    p = expgame.profile(g, [{1: 1}, {1: 1}])
    assert "(set-logic QF_NRA)" in expgame.compile_verification(g, p, "P1")


def test_logic():
    assert expgame.is_tautology("p (+) ~p", 3)
    assert not expgame.is_tautology("(p & p) <-> p", 2)
    assert expgame.evaluate("p -> q", {"p": Fraction(1, 2), "q": 0}, 2) == Fraction(1, 2)


def test_cli_entry_point():
    code, out, _ = expgame.run_cli(["taut", "p (+) ~p", "--k", "3"])
    assert code == 0
    assert "tautology" in out
    code, out, _ = expgame.run_cli(["verify", str(GAMES / "example2.exg"), str(GAMES / "uniform_point.prof")])
    assert code == 1
    assert "P1: deviation" in out
