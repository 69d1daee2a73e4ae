"""Seeded random multilinear polynomials for property tests and benchmarks."""

from __future__ import annotations

import math
import random

from .freealg import MultilinearPoly, Permutation
from .parsing import parse

SMALL_COEFFS = tuple(range(-3, 4))


def random_poly(
    m: int, rng: random.Random, coeffs=SMALL_COEFFS, density: float = 1.0
) -> MultilinearPoly:
    """Each word of S_m is kept with probability ``density`` and a coefficient
    drawn from ``coeffs``; redrawn until nonzero."""
    if m < 1:
        raise ValueError("m must be positive")
    while True:
        terms = {
            perm: rng.choice(coeffs)
            for perm in Permutation.all(m)
            if rng.random() < density
        }
        poly = MultilinearPoly(m, terms)
        if poly:
            return poly


def _word(vars_):
    return "*".join(f"x{v}" for v in vars_)


def random_commutator_chain(m: int, r: int, rng: random.Random) -> MultilinearPoly:
    """A random multilinear consequence of ``[x1,x2]...[x_{2r-1},x_{2r}]``.

    The variables are shuffled and cut into ``u_0 [a_1,b_1] u_1 ... [a_r,b_r] u_r``
    with nonempty words ``a_i, b_i`` and possibly empty ``u_i``.  The result lies
    in Id(UT_r), so its commutator-degree is at least ``r``.
    """
    if r < 1 or m < 2 * r:
        raise ValueError(f"need r >= 1 and m >= 2r (got m={m}, r={r})")
    letters = list(range(1, m + 1))
    rng.shuffle(letters)
    # r commutators take 2 letters each at least; spread the rest over 3r + 1 slots
    sizes = [1] * (2 * r) + [0] * (r + 1)
    for _ in range(m - 2 * r):
        sizes[rng.randrange(len(sizes))] += 1
    pieces = []
    pos = 0
    for size in sizes:
        pieces.append(letters[pos:pos + size])
        pos += size
    comm, gaps = pieces[: 2 * r], pieces[2 * r:]
    parts = []
    for i in range(r):
        if gaps[i]:
            parts.append(_word(gaps[i]))
        parts.append(f"[{_word(comm[2 * i])},{_word(comm[2 * i + 1])}]")
    if gaps[r]:
        parts.append(_word(gaps[r]))
    return parse("*".join(parts))


def random_graded_poly(
    m: int, r: int, rng: random.Random, terms: int = 2, coeffs=SMALL_COEFFS
) -> MultilinearPoly:
    """Combination of ``terms`` random commutator chains with coefficients from ``coeffs``.

    Redrawn until nonzero.  Commutator-degree is at least ``r``.
    """
    nonzero = [c for c in coeffs if c]
    while True:
        total = MultilinearPoly.zero(m)
        for _ in range(terms):
            total = total + random_commutator_chain(m, r, rng).scale(rng.choice(nonzero))
        if total:
            return total


def random_mixed_poly(rng: random.Random, max_arity: int = 5) -> MultilinearPoly:
    """Draw from a mix of dense, sparse and commutator-graded polynomials so that
    every commutator-degree up to ``max_arity // 2`` shows up regularly."""
    m = rng.randint(1, max_arity)
    kind = rng.randrange(4)
    if kind == 0 or m < 2:
        return random_poly(m, rng)
    if kind == 1:
        return random_poly(m, rng, density=min(1.0, 4 / math.factorial(m)))
    r = rng.randint(1, m // 2)
    return random_graded_poly(m, r, rng, terms=rng.randint(1, 3))
