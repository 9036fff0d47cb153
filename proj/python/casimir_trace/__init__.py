"""Exact Casimir traces on sl(2) modules.

Series come back as ``Series(order, terms)`` with ``terms`` a dict from
exponent to coefficient, both ``fractions.Fraction``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

try:
    from . import _core
except ImportError:  # build tree: the extension sits next to the package, not inside it
    import _core

CasimirError = _core.CasimirError
DomainError = _core.DomainError
PrecisionError = _core.PrecisionError
UnsupportedInputError = _core.UnsupportedInputError
InvariantError = _core.InvariantError
ParseError = _core.ParseError

__all__ = [
    "Series", "BiSeries", "trace", "trace_deformed", "kappa_matrix", "spectral", "monodromy",
    "jacobi_theta", "partial_appell_lerch", "verma_multiplicities", "canonical_rep",
    "check_names", "run_check", "CasimirError", "DomainError", "PrecisionError",
    "UnsupportedInputError", "InvariantError", "ParseError",
]


@dataclass(frozen=True)
class Series:
    order: Fraction
    terms: dict

    def coefficient(self, exponent) -> Fraction:
        e = Fraction(exponent)
        if e >= self.order:
            raise PrecisionError(f"exponent {e} is at or beyond the order {self.order}")
        return self.terms.get(e, Fraction(0))


@dataclass(frozen=True)
class BiSeries:
    q_order: Fraction
    terms: dict  # (q exponent, x exponent) -> coefficient


def _series(text: str) -> Series:
    j = json.loads(text)
    return Series(Fraction(j["order"]), {Fraction(e): Fraction(c) for e, c in j["terms"]})


def _bi_series(text: str) -> BiSeries:
    j = json.loads(text)
    return BiSeries(Fraction(j["q_order"]), {(Fraction(q), int(x)): Fraction(c) for q, x, c in j["terms"]})


def _matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def canonical_rep(rep: str) -> str:
    return _core.canonical_rep(rep)


def trace(rep: str, loops: int, order, method: str = "ladder") -> Series:
    return _series(_core.trace(rep, loops, str(Fraction(order)), method))


def trace_deformed(rep: str, loops: int, order) -> BiSeries:
    return _bi_series(_core.trace_deformed(rep, loops, str(Fraction(order))))


def kappa_matrix(rep: str, weight: int) -> dict:
    j = json.loads(_core.kappa_matrix(rep, weight))
    j["matrix"] = _matrix(j["matrix"])
    return j


def spectral(rep: str, weight: int) -> dict:
    return json.loads(_core.spectral(rep, weight))


def monodromy(rep: str, weight: int, loops: int) -> dict:
    return json.loads(_core.monodromy(rep, weight, loops))


def jacobi_theta(loops: int, order) -> Series:
    return _series(_core.jacobi_theta(loops, str(Fraction(order))))


def partial_appell_lerch(alphas, betas, loops: int, order) -> Series:
    return _series(_core.partial_appell_lerch(list(alphas), list(betas), loops, str(Fraction(order))))


def verma_multiplicities(alphas, betas, max_k: int) -> list[int]:
    return [int(a) for a in _core.verma_multiplicities(list(alphas), list(betas), max_k)]


def check_names() -> list[str]:
    return list(_core.check_names())


def run_check(name: str, seed: int | None = None) -> dict:
    return json.loads(_core.run_check(name, seed))
