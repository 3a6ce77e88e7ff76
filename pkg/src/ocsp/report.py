"""JSON-ready report dictionaries.

Rationals are serialized in lowest terms as ``"p"`` or ``"p/q"`` strings so
no report ever rounds an exact value; variables and orderings are 1-based
externally, matching the instance text format.  Serialization is fully
deterministic: subsets are sorted, keys are sorted at dump time.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .bonami import BonamiWitness
from .decider import DecisionReport, KernelReport
from .efron_stein import ESDecomposition
from .instance import Instance


def rational_str(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _vars_1based(subset) -> list[int]:
    return [v + 1 for v in sorted(subset)]


def _ordering_1based(ordering) -> list[int]:
    return [v + 1 for v in ordering]


def decision_report_dict(report: DecisionReport) -> dict:
    cert = report.certificate
    out: dict = {
        "outcome": report.outcome,
        "certificate": {
            "sigma2": rational_str(cert.sigma2),
            "C": rational_str(cert.C),
            "b": rational_str(cert.b),
            "t": rational_str(cert.t),
            "fires": cert.fires,
        },
        "kernel": None,
        "witness": None,
    }
    if report.kernel is not None:
        k = report.kernel
        out["kernel"] = {
            "kernel_vars": _vars_1based(k.kernel_vars),
            "size": len(k.kernel_vars),
            "opt_minus_avg": None if k.opt_minus_avg is None else rational_str(k.opt_minus_avg),
            "best_ordering": None if k.best_ordering is None else _ordering_1based(k.best_ordering),
        }
    if report.witness is not None:
        out["witness"] = {
            "ordering": _ordering_1based(report.witness.ordering),
            "value": report.witness.value,
        }
    return out


def kernel_report_dict(kernel: KernelReport) -> dict:
    dec = kernel.dec
    return {
        "kernel_vars": _vars_1based(kernel.kernel_vars),
        "size": len(kernel.kernel_vars),
        "degree": dec.degree,
        "mean": rational_str(dec.mean),
        "variance": rational_str(dec.variance()),
    }


def analyze_report_dict(
    inst: Instance,
    dec: ESDecomposition,
    include_m4: bool = False,
    include_pieces: bool = False,
) -> dict:
    parts = []
    for s in dec.subsets():
        entry: dict = {
            "vars": _vars_1based(s),
            "cells": dec.part(s).cell_count(),
            "m2": rational_str(dec.m2(s)),
        }
        if include_m4:
            entry["m4"] = rational_str(dec.m4(s))
        if include_pieces:
            entry["pieces"] = dec.part(s).serialized_pieces()
        parts.append(entry)
    min_m2 = dec.min_m2()
    return {
        "n": inst.n,
        "m": inst.m,
        "arity": inst.arity,
        "degree": dec.degree,
        "mean": rational_str(dec.mean),
        "variance": rational_str(dec.variance()),
        "dependency_vars": _vars_1based(dec.dependency_set()),
        "dependency_size": len(dec.dependency_set()),
        "C": rational_str(dec.local_fourth_moment_ratio()),
        "min_m2": None if min_m2 is None else rational_str(min_m2),
        "parts": parts,
    }


def oracle_report_dict(
    opt: int,
    avg: Fraction,
    moment2: Fraction | None,
    moment4: Fraction | None,
) -> dict:
    return {
        "opt": opt,
        "avg": rational_str(avg),
        "moment2": None if moment2 is None else rational_str(moment2),
        "moment4": None if moment4 is None else rational_str(moment4),
    }


def bonami_report_dict(witness: BonamiWitness) -> dict:
    return {
        "z_moments": {str(r): rational_str(v) for r, v in witness.z.items()},
        "coefficients": [
            {"vars": _vars_1based(s), "value": witness.surrogate.coefficients[s]}
            for s in sorted(witness.surrogate.coefficients, key=lambda s: (len(s), s))
        ],
        "em2": witness.surrogate.em2,
        "em4": witness.surrogate.em4,
        "ef2": rational_str(witness.ef2),
        "ef4": rational_str(witness.ef4),
        "degree": witness.degree,
        "C": rational_str(witness.C),
        "checks": {
            name: {
                "passed": check.passed,
                "lhs": check.lhs,
                "rhs": check.rhs,
                "slack": check.slack,
            }
            for name, check in witness.checks.items()
        },
        "all_passed": witness.all_passed,
    }


def dump_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
