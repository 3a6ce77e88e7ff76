"""Shared fixtures: independent integration oracle and corpus builders.

The sympy-based cell integrator below recomputes chain-function moments by
iterated symbolic integration, sharing no code with the package's own
antiderivative/substitute route; tests use it as ground truth for moments.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from ocsp.chainfn import ChainFunction
from ocsp.instance import Constraint, Instance, generate
from ocsp.poly import Polynomial


def poly_to_sympy(poly: Polynomial) -> sympy.Expr:
    expr = sympy.Integer(0)
    for mono, coeff in poly.terms.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for var, exp in mono:
            term *= sympy.Symbol(f"x{var}") ** exp
        expr += term
    return expr


def sympy_moment(cf: ChainFunction, power: int = 1) -> Fraction:
    """E[cf^power] by iterated sympy integration over each ordering cell."""
    total = sympy.Integer(0)
    for cell, poly in cf.pieces.items():
        expr = poly_to_sympy(poly) ** power
        for i, var in enumerate(cell):
            sym = sympy.Symbol(f"x{var}")
            upper = sympy.Symbol(f"x{cell[i + 1]}") if i + 1 < len(cell) else sympy.Integer(1)
            expr = sympy.integrate(expr, (sym, sympy.Integer(-1), upper))
        total += expr
    total = sympy.Rational(sympy.simplify(total * sympy.Rational(1, 2 ** len(cf.support))))
    return Fraction(int(total.p), int(total.q))


@pytest.fixture(scope="session")
def sympy_oracle():
    return sympy_moment


def random_tie_free_point(variables, rng: random.Random, denominator: int = 1 << 20):
    while True:
        point = {
            v: Fraction(rng.randrange(-denominator, denominator + 1), denominator)
            for v in variables
        }
        if len(set(point.values())) == len(point):
            return point


def mixed_corpus(
    count: int,
    seed: int,
    max_n: int = 10,
    max_k: int = 4,
    max_m: int = 6,
    include_empty: bool = True,
) -> list[Instance]:
    """Deterministic list of instances across all generator models."""
    rng = random.Random(seed)
    fractions = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
    out: list[Instance] = []
    for i in range(count):
        if include_empty and i % 25 == 24:
            out.append(Instance(rng.randint(0, max_n), ()))
            continue
        model = ("mas", "betweenness", "random-k")[i % 3]
        if model == "mas":
            k = 2
        elif model == "betweenness":
            k = 3
        else:
            k = rng.randint(2, max_k)
        n = rng.randint(k, max_n)
        m = rng.randint(1, max_m)
        frac = rng.choice(fractions) if model == "random-k" else Fraction(1, 2)
        out.append(
            generate(
                model,
                n=n,
                m=m,
                k=k if model == "random-k" else None,
                allowed_fraction=frac,
                seed=rng.randrange(1 << 30),
            )
        )
    return out


def triangle_mas() -> Instance:
    edge = frozenset({(0, 1)})
    return Instance(
        3,
        (
            Constraint((0, 1), edge),
            Constraint((1, 2), edge),
            Constraint((2, 0), edge),
        ),
    )


def single_mas() -> Instance:
    return Instance(2, (Constraint((0, 1), frozenset({(0, 1)})),))


def single_betweenness() -> Instance:
    return Instance(3, (Constraint((0, 1, 2), frozenset({(0, 1, 2), (2, 1, 0)})),))


def opposite_pair() -> Instance:
    return Instance(
        2,
        (
            Constraint((0, 1), frozenset({(0, 1)})),
            Constraint((1, 0), frozenset({(0, 1)})),
        ),
    )
