"""Decide whether some ordering beats the average value by at least t.

Pipeline: decompose the objective, try the fourth-moment certificate
(variance large against t implies a positive-probability tail beyond t,
hence a witness exists), and otherwise restrict to the variables that carry
any nonzero part and decide that kernel exhaustively.  Everything on the
decision path is exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from fractions import Fraction

from .efron_stein import ESDecomposition, decompose_instance
from .errors import CapExceededError
from .instance import Instance, Ordering

YES_CERTIFIED = "yes-certified"
YES_KERNEL = "yes-kernel"
NO_KERNEL = "no-kernel"
UNDECIDED = "undecided"

DEFAULT_CAP = 10
DEFAULT_BUDGET = 10_000
DEFAULT_SEED = 0


@dataclass(frozen=True)
class DecideConfig:
    cap: int = DEFAULT_CAP
    witness: bool = False
    budget: int = DEFAULT_BUDGET
    seed: int = DEFAULT_SEED


@dataclass(frozen=True)
class CertificateReport:
    sigma2: Fraction
    C: Fraction
    b: Fraction
    t: Fraction
    fires: bool


@dataclass(frozen=True)
class Witness:
    ordering: Ordering
    value: int


@dataclass(frozen=True)
class KernelReport:
    kernel_vars: tuple[int, ...]
    dec: ESDecomposition
    opt_minus_avg: Fraction | None = None
    best_ordering: Ordering | None = None


@dataclass(frozen=True)
class DecisionReport:
    outcome: str
    certificate: CertificateReport
    kernel: KernelReport | None
    witness: Witness | None


def certify_above_average(dec: ESDecomposition, t: Fraction) -> CertificateReport:
    """Variance test: fires when sigma^2 >= 4*b*t^2 with b = 81^k * C + 1.

    The objective minus its mean has fourth moment at most (b - 1) * sigma^4,
    so it exceeds sigma / (2 sqrt(b)) with positive probability; firing means
    that tail bound already clears t.  Comparing squares keeps it rational.
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    sigma2 = dec.variance()
    big_c = dec.local_fourth_moment_ratio()
    b = Fraction(81) ** dec.arity * big_c + 1
    fires = sigma2 >= 4 * b * t * t
    return CertificateReport(sigma2=sigma2, C=big_c, b=b, t=t, fires=fires)


def kernelize(inst: Instance, dec: ESDecomposition | None = None) -> KernelReport:
    """Restrict to the variables appearing in some nonzero part.

    The objective is a function of those variables alone, so any ordering
    question above the average is decided inside the kernel.
    """
    if dec is None:
        dec = decompose_instance(inst)
    return KernelReport(kernel_vars=tuple(sorted(dec.dependency_set())), dec=dec)


def representative_point(ordering: Ordering) -> dict[int, Fraction]:
    """Tie-free point realizing an ordering: rank i of v gets -1 + 2i/(v+1)."""
    v = len(ordering)
    return {var: Fraction(2 * (i + 1), v + 1) - 1 for i, var in enumerate(ordering)}


def brute_force_kernel(kernel: KernelReport, cap: int = DEFAULT_CAP) -> KernelReport:
    """Maximize the centered objective over all kernel orderings, exactly.

    Each ordering is scored as the sum of all nonempty parts at its
    representative point.  The sum is constant on the ordering's cell, so the
    point choice does not matter.  Ties go to the lexicographically first
    ordering.
    """
    kvars = kernel.kernel_vars
    v = len(kvars)
    if v > cap:
        raise CapExceededError(f"kernel size {v} exceeds the enumeration cap {cap}")
    dec = kernel.dec
    values = [Fraction(2 * i, v + 1) - 1 for i in range(1, v + 1)]
    subsets = dec.subsets()
    parts = {s: dec.part(s) for s in subsets}
    memo: dict[tuple, dict[tuple, Fraction]] = {s: {} for s in subsets}
    best: Fraction | None = None
    best_ordering: Ordering | None = None
    for perm in itertools.permutations(kvars):
        rank = {var: i for i, var in enumerate(perm)}
        total = Fraction(0)
        for s in subsets:
            key = tuple(rank[var] for var in s)
            cache = memo[s]
            val = cache.get(key)
            if val is None:
                point = {var: values[rank[var]] for var in s}
                val = cache[key] = parts[s].evaluate(point)
            total += val
        if best is None or total > best:
            best = total
            best_ordering = perm
    assert best is not None and best_ordering is not None
    return replace(kernel, opt_minus_avg=best, best_ordering=best_ordering)


def extend_ordering(partial: Ordering, n: int) -> Ordering:
    """Append the missing variables in id order; the objective ignores them."""
    present = set(partial)
    return tuple(partial) + tuple(v for v in range(n) if v not in present)


def find_witness(
    inst: Instance,
    t: Fraction,
    budget: int = DEFAULT_BUDGET,
    seed: int = DEFAULT_SEED,
) -> Witness | None:
    """Random restarts plus steepest-ascent adjacent swaps until value >= avg + t.

    ``budget`` counts restarts.  Returns None when the budget runs out; a
    returned witness is always exactly verified.
    """
    target = inst.average_value() + Fraction(t)
    rng = random.Random(seed)
    base = list(range(inst.n))
    for _ in range(max(budget, 0)):
        rng.shuffle(base)
        current = list(base)
        value = inst.evaluate(tuple(current))
        while value < target:
            best_gain_value = value
            best_i = -1
            for i in range(inst.n - 1):
                current[i], current[i + 1] = current[i + 1], current[i]
                candidate = inst.evaluate(tuple(current))
                current[i], current[i + 1] = current[i + 1], current[i]
                if candidate > best_gain_value:
                    best_gain_value = candidate
                    best_i = i
            if best_i < 0:
                break
            current[best_i], current[best_i + 1] = current[best_i + 1], current[best_i]
            value = best_gain_value
        if value >= target:
            return Witness(tuple(current), value)
    return None


def decide(
    inst: Instance,
    t: Fraction,
    config: DecideConfig = DecideConfig(),
    dec: ESDecomposition | None = None,
) -> DecisionReport:
    """Full decision: certificate first, kernel enumeration second.

    Outcomes: ``yes-certified`` (certificate fired; witness search optional),
    ``yes-kernel`` / ``no-kernel`` (kernel enumerated and compared to t
    exactly), ``undecided`` (kernel bigger than the cap).
    """
    t = Fraction(t)
    if dec is None:
        dec = decompose_instance(inst)
    certificate = certify_above_average(dec, t)
    if certificate.fires:
        witness = None
        if config.witness:
            witness = find_witness(inst, t, budget=config.budget, seed=config.seed)
        return DecisionReport(YES_CERTIFIED, certificate, None, witness)
    kernel = kernelize(inst, dec)
    if len(kernel.kernel_vars) > config.cap:
        return DecisionReport(UNDECIDED, certificate, kernel, None)
    kernel = brute_force_kernel(kernel, config.cap)
    assert kernel.opt_minus_avg is not None and kernel.best_ordering is not None
    if kernel.opt_minus_avg >= t:
        full = extend_ordering(kernel.best_ordering, inst.n)
        witness = Witness(full, inst.evaluate(full))
        return DecisionReport(YES_KERNEL, certificate, kernel, witness)
    return DecisionReport(NO_KERNEL, certificate, kernel, None)
