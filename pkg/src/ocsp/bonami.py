"""Numeric cross-check of the fourth-moment bound via a surrogate polynomial.

The centered objective f = sum of its nonempty parts is compared against a
polynomial M_f in independent copies of a two-point variable Z taking 3 with
probability 1/4 and -1 with probability 3/4.  M_f carries one coefficient per
part, 3^(-|S|/2) * sqrt(E[part^2]), so that E[M_f^2] = E[f^2]; its fourth
moment only needs the small moments of Z and dominates E[f^4] up to the local
fourth-moment ratio C, while hypercontractivity of Z bounds it by
81^degree * E[M_f^2]^2.  Floats throughout: this module is diagnostic and is
never imported by the exact decision path.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .efron_stein import ESDecomposition

REL_TOL = 1e-9

# two-point law of Z; every moment below is computed from it, not hard-coded
Z_SUPPORT: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(3), Fraction(1, 4)),
    (Fraction(-1), Fraction(3, 4)),
)


def z_moments() -> dict[int, Fraction]:
    """Exact E[Z^r] for r = 1..4, computed from the two-point distribution."""
    return {
        r: sum((p * v**r for v, p in Z_SUPPORT), start=Fraction(0))
        for r in range(1, 5)
    }


@dataclass(frozen=True)
class SurrogateMoments:
    coefficients: dict[tuple[int, ...], float]
    em2: float
    em4: float


def surrogate_moments(dec: ESDecomposition) -> SurrogateMoments:
    """E[M_f^2] and E[M_f^4] of the surrogate polynomial of the centered objective.

    The fourth moment expands over quadruples of parts; any variable covered
    by exactly one part contributes a factor E[Z] = 0, so only quadruples
    covering every variable at least twice survive.
    """
    zm = {r: float(v) for r, v in z_moments().items()}
    subsets = dec.subsets()
    coeff = {s: 3.0 ** (-len(s) / 2) * math.sqrt(float(dec.m2(s))) for s in subsets}
    em2 = sum(coeff[s] ** 2 * 3.0 ** len(s) for s in subsets)
    em4 = 0.0
    for combo in itertools.combinations_with_replacement(subsets, 4):
        counts: dict[int, int] = {}
        for s in combo:
            for v in s:
                counts[v] = counts.get(v, 0) + 1
        if any(c == 1 for c in counts.values()):
            continue
        orderings = 24
        for _, group in itertools.groupby(combo):
            orderings //= math.factorial(len(tuple(group)))
        term = 1.0
        for s in combo:
            term *= coeff[s]
        for c in counts.values():
            term *= zm[c]
        em4 += orderings * term
    return SurrogateMoments(coefficients=coeff, em2=em2, em4=em4)


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    lhs: float
    rhs: float
    slack: float


@dataclass(frozen=True)
class BonamiWitness:
    z: dict[int, Fraction]
    surrogate: SurrogateMoments
    ef2: Fraction
    ef4: Fraction
    degree: int
    C: Fraction
    checks: dict[str, CheckResult]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks.values())


def _leq(lhs: float, rhs: float) -> CheckResult:
    tol = REL_TOL * max(1.0, abs(lhs), abs(rhs))
    return CheckResult(lhs <= rhs + tol, lhs, rhs, rhs - lhs)


def _close(lhs: float, rhs: float) -> CheckResult:
    tol = REL_TOL * max(1.0, abs(lhs), abs(rhs))
    return CheckResult(abs(lhs - rhs) <= tol, lhs, rhs, rhs - lhs)


def verify_chain(dec: ESDecomposition, ef4: Fraction) -> BonamiWitness:
    """Check the three links bounding E[f^4] through the surrogate.

    (i) E[f^4] <= C * E[M_f^4]; (ii) E[M_f^4] <= 81^degree * E[M_f^2]^2;
    (iii) E[M_f^2] = E[f^2].  ``ef4`` is the exact fourth central moment,
    normally from the linear-extension oracle.
    """
    surrogate = surrogate_moments(dec)
    ef2 = dec.variance()
    big_c = dec.local_fourth_moment_ratio()
    checks = {
        "fourth_moment_vs_surrogate": _leq(float(ef4), float(big_c) * surrogate.em4),
        "surrogate_hypercontractivity": _leq(
            surrogate.em4, 81.0**dec.degree * surrogate.em2**2
        ),
        "second_moment_identity": _close(surrogate.em2, float(ef2)),
    }
    return BonamiWitness(
        z=z_moments(),
        surrogate=surrogate,
        ef2=ef2,
        ef4=ef4,
        degree=dec.degree,
        C=big_c,
        checks=checks,
    )
