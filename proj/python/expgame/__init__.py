"""Expectation games over finite-valued Lukasiewicz logic.

Rationals cross the boundary as fractions.Fraction. Profiles are built from
one dict per player mapping strategy index to probability, or parsed from
profile-file text.
"""

from ._core import (
    Game,
    Profile,
    compile_existence,
    compile_verification,
    dynamics,
    evaluate,
    expected_payoffs,
    format_profile,
    goal_values,
    is_tautology,
    parse_game,
    parse_profile,
    payoffs,
    profile,
    run_cli,
    search,
    verify,
)

__all__ = [
    "Game",
    "Profile",
    "compile_existence",
    "compile_verification",
    "dynamics",
    "evaluate",
    "expected_payoffs",
    "format_profile",
    "goal_values",
    "is_tautology",
    "parse_game",
    "parse_profile",
    "payoffs",
    "profile",
    "run_cli",
    "search",
    "verify",
]

__version__ = "0.1.0"
