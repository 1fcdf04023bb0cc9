"""Built-in worked examples with their known invariants."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .classify import burch_check, classify
from .groebner import height
from .invariants import ModuleSpec, fitting_ideal, rank
from .poly import PolyRing
from .reductions import direct_sum_reduction, reduction_number_wrt


@dataclass
class CorpusEntry:
    name: str
    description: str
    variables: tuple[str, ...]
    generators: list[list[str]]
    expected: dict
    extra: dict[str, Callable[[ModuleSpec], object]] = field(default_factory=dict)
    extra_expected: dict = field(default_factory=dict)

    def module(self) -> ModuleSpec:
        ring = PolyRing(self.variables)
        return ModuleSpec.from_strings(ring, self.generators)

    def to_input(self) -> dict:
        """The entry as a CLI input document."""
        return {
            "ring": {"variables": list(self.variables), "field": "Q"},
            "module": {"ambient_rank": len(self.generators[0]), "generators": self.generators},
        }


def _sum(ideals: list[list[str]]) -> list[list[str]]:
    e = len(ideals)
    return [["0"] * i + [g] + ["0"] * (e - i - 1) for i, gens in enumerate(ideals) for g in gens]


def _constructed_r(alphas):
    def run(E: ModuleSpec):
        x, y = E.ring.gens()[:2]
        U = direct_sum_reduction(x, y, E.ambient_rank, alphas)
        return reduction_number_wrt(U, E)

    return run


def _spread_formula(E: ModuleSpec):
    e = rank(E)
    rep = classify(E, with_reduction=False)
    return rep.analytic_spread == E.nvars + e - 1 == height(fitting_ideal(E, e)) + e - 1


def _burch_equality(E: ModuleSpec):
    b = burch_check(E, 3)
    return b["status"] == "PASS" and b["equality"]


CORPUS: list[CorpusEntry] = [
    CorpusEntry(
        "two_primes_sum",
        "(x1,x2) + (x1,x3) over Q[x1,x2,x3]",
        ("x1", "x2", "x3"),
        _sum([["x1", "x2"], ["x1", "x3"]]),
        {
            "analytic_spread": 4,
            "analytic_deviation": 1,
            "r": 0,
            "mu": 4,
            "deviation": 1,
            "ht_fitting_e": 2,
            "generically_ci": "true",
            "equimultiple": False,
            "ci": False,
        },
    ),
    CorpusEntry(
        "max_ideal_sum_e2",
        "m + m over Q[x,y]",
        ("x", "y"),
        _sum([["x", "y"], ["x", "y"]]),
        {
            "analytic_spread": 3,
            "equimultiple": True,
            "ci": False,
            "r": 1,
            "deviation": 1,
            "analytic_deviation": 0,
            "linear_type": False,
        },
        {"constructed_reduction_number": _constructed_r([1]), "burch_equality": _burch_equality, "spread_is_d_plus_e_minus_1": _spread_formula},
        {"constructed_reduction_number": 1, "burch_equality": True, "spread_is_d_plus_e_minus_1": True},
    ),
    CorpusEntry(
        "max_ideal_sum_e3",
        "m + m + m over Q[x,y]",
        ("x", "y"),
        _sum([["x", "y"]] * 3),
        {"analytic_spread": 4, "equimultiple": True, "ci": False, "r": 1},
        {"constructed_reduction_number": _constructed_r([1, 2])},
        {"constructed_reduction_number": 1},
    ),
    CorpusEntry(
        "ci_ideal",
        "(x,y) in Q[x,y]",
        ("x", "y"),
        [["x"], ["y"]],
        {"analytic_spread": 2, "ci": True, "equimultiple": True, "linear_type": True, "deviation": 0, "r": 0},
    ),
    CorpusEntry(
        "free_plus_ci_ideal",
        "R + (x,y) over Q[x,y,z]",
        ("x", "y", "z"),
        [["1", "0"], ["0", "x"], ["0", "y"]],
        {"ci": True, "mu": 3, "analytic_spread": 3, "equimultiple": True, "generically_ci": "true"},
    ),
    CorpusEntry(
        "free_rank2",
        "R^2 over Q[x,y]",
        ("x", "y"),
        [["1", "0"], ["0", "1"]],
        {"trivially_free": True, "analytic_spread": 2, "linear_type": True, "r": 0},
    ),
    CorpusEntry(
        "three_primes_sum",
        "(x1,x2) + (x1,x3) + (x2,x3) over Q[x1,x2,x3]",
        ("x1", "x2", "x3"),
        _sum([["x1", "x2"], ["x1", "x3"], ["x2", "x3"]]),
        {"analytic_spread": 5, "analytic_deviation": 1, "generically_ci": "true", "equimultiple": False, "ci": False},
    ),
    CorpusEntry(
        "max_ideal_sum_d3",
        "m + m over Q[x,y,z]",
        ("x", "y", "z"),
        _sum([["x", "y", "z"], ["x", "y", "z"]]),
        {"analytic_spread": 4, "equimultiple": True, "deviation": 2, "ci": False, "free_on_punctured_spectrum": True},
        {"spread_is_d_plus_e_minus_1": _spread_formula},
        {"spread_is_d_plus_e_minus_1": True},
    ),
]


def get_entry(name: str) -> CorpusEntry:
    for c in CORPUS:
        if c.name == name:
            return c
    raise KeyError(name)


def run_entry(entry: CorpusEntry, seed: int = 0) -> dict:
    E = entry.module()
    rep = classify(E, seed=seed).to_dict()
    actual = dict(rep)
    actual["r"] = rep["reduction"]["r"] if rep["reduction"] else None
    checks = []
    for key, want in entry.expected.items():
        got = actual[key]
        checks.append({"key": key, "expected": want, "actual": got, "pass": got == want})
    for key, fn in entry.extra.items():
        got = fn(E)
        if not isinstance(got, (bool, int)):
            got = repr(got)
        want = entry.extra_expected[key]
        checks.append({"key": key, "expected": want, "actual": got, "pass": got == want})
    return {"name": entry.name, "description": entry.description, "checks": checks, "pass": all(c["pass"] for c in checks)}


def run_corpus(seed: int = 0) -> list[dict]:
    return [run_entry(c, seed) for c in CORPUS]
