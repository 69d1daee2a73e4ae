"""Commutator-degree of multilinear polynomials.

A *profile* ``(k, T, t)`` over arity ``m`` picks disjoint index sets
``T_1..T_k`` and distinct indices ``t_1..t_k`` outside them.  The permutation
set ``S(k, T, t)`` contains the ``s`` whose word starts with a block
spelling ``T_1`` (in any order) followed by ``t_1``, then a block spelling
``T_2`` followed by ``t_2``, and so on; whatever follows ``t_k`` is free.
``beta(f, p)`` sums the coefficients of ``f`` over that set.

The commutator-degree of ``f`` is the least ``k`` with a nonzero ``beta``
among size-``k`` profiles; it equals the largest ``n`` with ``f`` an
identity of ``UT_n``.  :func:`commutator_degree_oracle` recomputes that
number independently by substituting matrix units.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .errors import (
    ArityMismatch,
    CostLimit,
    InternalVerificationFailure,
    InvalidProfile,
    ZeroPolynomial,
)
from .freealg import MultilinearPoly, Permutation, coefficient_sum, scalar_to_str
from .triangular import enumerate_units, unit

DEFAULT_COST_LIMIT = 10**8


@dataclass(frozen=True)
class Profile:
    """Selector ``(k, T, t)`` of the permutation subset ``S(k, T, t)``.

    ``T`` holds ``k`` sorted tuples, ``t`` holds ``k`` indices; both are
    1-based and live in ``{1, ..., m}``.  ``t`` may be in any order.
    """

    m: int
    T: tuple = ()
    t: tuple = ()

    def __post_init__(self):
        T = tuple(tuple(sorted(int(x) for x in block)) for block in self.T)
        t = tuple(int(x) for x in self.t)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "t", t)
        if len(T) != len(t):
            raise InvalidProfile(f"{len(T)} blocks but {len(t)} designated indices")
        used = [x for block in T for x in block] + list(t)
        if len(set(used)) != len(used):
            raise InvalidProfile("blocks and designated indices must be pairwise disjoint")
        if any(not 1 <= x <= self.m for x in used):
            raise InvalidProfile(f"indices must lie in 1..{self.m}")
        # distinct indices in 1..m already give sum(|T_i| + 1) <= m

    @classmethod
    def empty(cls, m: int) -> "Profile":
        return cls(m)

    @property
    def k(self) -> int:
        return len(self.t)

    @property
    def sizes(self) -> tuple:
        return tuple(len(block) for block in self.T)

    def sort_key(self) -> tuple:
        """Position of this profile in the enumeration order."""
        return (self.sizes, self.t, self.T)

    def to_json(self) -> dict:
        return {"k": self.k, "T": [list(block) for block in self.T], "t": list(self.t)}

    @classmethod
    def from_json(cls, data: dict, m: int) -> "Profile":
        profile = cls(m, tuple(data.get("T", ())), tuple(data.get("t", ())))
        if "k" in data and data["k"] != profile.k:
            raise InvalidProfile(f"'k' is {data['k']} but {profile.k} indices were given")
        return profile


def _profile_key_of(perm: tuple, sizes: tuple) -> tuple:
    """(t, T) of the unique profile with block sizes ``sizes`` containing ``perm``."""
    pos = 0
    T = []
    t = []
    for s in sizes:
        T.append(tuple(sorted(perm[pos:pos + s])))
        t.append(perm[pos + s])
        pos += s + 1
    return tuple(t), tuple(T)


def member_S(perm: Permutation, p: Profile) -> bool:
    if len(perm) != p.m:
        raise ArityMismatch(f"permutation of {len(perm)} letters vs profile over {p.m}")
    pos = 0
    for block, target in zip(p.T, p.t):
        s = len(block)
        if perm[pos + s] != target or tuple(sorted(perm[pos:pos + s])) != block:
            return False
        pos += s + 1
    return True


def beta(poly: MultilinearPoly, p: Profile) -> Fraction:
    if poly and poly.arity != p.m:
        raise ArityMismatch(f"polynomial arity {poly.arity} vs profile over {p.m}")
    if p.k == 0:
        return coefficient_sum(poly)
    return sum((c for perm, c in poly.items() if member_S(perm, p)), Fraction(0))


def block_shapes(m: int, k: int) -> Iterator[tuple]:
    """Block-size vectors ``(|T_1|, ..., |T_k|)`` with sum(|T_i| + 1) <= m, lexicographic."""
    if k == 0:
        yield ()
        return
    budget = m - k
    if budget < 0:
        return

    def rec(prefix, left, slots):
        if slots == 0:
            yield tuple(prefix)
            return
        for s in range(left + 1):
            yield from rec(prefix + [s], left - s, slots - 1)

    yield from rec([], budget, k)


def shape_count(m: int, sizes: tuple) -> int:
    """Number of profiles over arity ``m`` with the given block sizes."""
    used = sum(sizes) + len(sizes)
    if used > m:
        return 0
    count = math.factorial(m) // math.factorial(m - used)
    for s in sizes:
        count //= math.factorial(s)
    return count


def _profiles_of_shape(m: int, sizes: tuple) -> Iterator[Profile]:
    k = len(sizes)
    universe = range(1, m + 1)
    for t in itertools.permutations(universe, k):
        rest = [x for x in universe if x not in t]

        def fill(i, available, chosen):
            if i == k:
                yield Profile(m, tuple(chosen), t)
                return
            for block in itertools.combinations(available, sizes[i]):
                remaining = [x for x in available if x not in block]
                yield from fill(i + 1, remaining, chosen + [block])

        yield from fill(0, rest, [])


def enumerate_profiles(m: int, k: int) -> Iterator[Profile]:
    """Every size-``k`` profile over arity ``m``, once each.

    Order: by block-size vector, then by ``t``, then by the blocks.  ``t``
    runs over all orderings of distinct indices, not only increasing ones.
    """
    for sizes in block_shapes(m, k):
        yield from _profiles_of_shape(m, sizes)


def count_profiles(m: int, k: int) -> int:
    return sum(shape_count(m, sizes) for sizes in block_shapes(m, k))


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    witness: Profile
    witness_beta: Fraction
    profiles_checked: int

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "witness": self.witness.to_json(),
            "beta": scalar_to_str(self.witness_beta),
            "profiles_checked": self.profiles_checked,
        }


def _first_nonzero_in_shape(poly: MultilinearPoly, sizes: tuple):
    # every permutation lies in exactly one profile of a given shape, so one
    # pass over the terms yields beta for the whole shape
    buckets: dict = {}
    for perm, c in poly.items():
        key = _profile_key_of(perm, sizes)
        buckets[key] = buckets.get(key, 0) + c
    nonzero = [key for key, total in buckets.items() if total]
    if not nonzero:
        return None
    key = min(nonzero)
    return key, buckets[key]


def commutator_degree(poly: MultilinearPoly) -> DegreeReport:
    """Least ``k`` for which some size-``k`` profile has nonzero beta.

    The witness is the first such profile in :func:`enumerate_profiles`
    order; ``profiles_checked`` counts the profiles that order visits up to
    and including the witness.
    """
    if not poly:
        raise ZeroPolynomial("the zero polynomial is an identity of every UT_n; its degree is undefined")
    m = poly.arity
    total = coefficient_sum(poly)
    if total:
        return DegreeReport(0, Profile.empty(m), total, 1)
    checked = 1
    for k in range(1, m // 2 + 1):
        for sizes in block_shapes(m, k):
            hit = _first_nonzero_in_shape(poly, sizes)
            if hit is None:
                checked += shape_count(m, sizes)
                continue
            (t, T), value = hit
            witness = Profile(m, T, t)
            key = witness.sort_key()
            for rank, p in enumerate(_profiles_of_shape(m, sizes), start=1):
                if p.sort_key() == key:
                    checked += rank
                    break
            return DegreeReport(k, witness, value, checked)
    raise InternalVerificationFailure(
        f"no nonzero beta with k <= {m // 2} for a nonzero polynomial of arity {m}"
    )


def witness_evaluation(p: Profile) -> list:
    """Matrix units of UT_{k+1} on which ``f`` evaluates to ``beta(f, p) E_{1,k+1}``.

    ``x_{t_i} -> E_{i,i+1}``, ``x_j -> E_{i,i}`` for ``j`` in ``T_i``, and
    every remaining variable goes to ``E_{k+1,k+1}``.
    """
    r = p.k
    if r < 1:
        raise InvalidProfile("witness evaluation needs a profile with k >= 1")
    n = r + 1
    args = [unit(n, n, n)] * p.m
    for i, (block, ti) in enumerate(zip(p.T, p.t), start=1):
        args[ti - 1] = unit(n, i, i + 1)
        for j in block:
            args[j - 1] = unit(n, i, i)
    return args


# -- brute-force identity oracle ---------------------------------------------

def _term_trie(poly: MultilinearPoly) -> dict:
    # node: var -> [children, coefficient at this prefix (only for full words)]
    root: dict = {}
    for perm, c in poly.items():
        node = root
        for depth, var in enumerate(perm):
            entry = node.get(var)
            if entry is None:
                entry = node[var] = [{}, 0]
            if depth == len(perm) - 1:
                entry[1] += c
            node = entry[0]
    return root


def _evaluate_on_units(trie: dict, assignment: tuple) -> dict:
    """Evaluate on matrix units given as (i, j) pairs; returns {(i, j): value}."""
    acc: dict = {}
    stack = [(trie, None)]
    while stack:
        node, cur = stack.pop()
        for var, (children, coeff) in node.items():
            i, j = assignment[var - 1]
            if cur is None:
                nxt = (i, j)
            elif cur[1] == i:
                nxt = (cur[0], j)
            else:
                continue
            if coeff:
                acc[nxt] = acc.get(nxt, 0) + coeff
            if children:
                stack.append((children, nxt))
    return acc


def substitution_count(m: int, n: int) -> int:
    return (n * (n + 1) // 2) ** m


def is_identity_bruteforce(
    poly: MultilinearPoly, n: int, *, force: bool = False, limit: int = DEFAULT_COST_LIMIT
) -> bool:
    """True iff ``poly`` vanishes on every tuple of matrix units of ``UT_n``.

    By multilinearity this decides membership in Id(UT_n).  Refuses with
    :class:`CostLimit` above ``limit`` substitutions unless ``force`` is set.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not poly:
        return True
    cost = substitution_count(poly.arity, n)
    if cost > limit and not force:
        raise CostLimit(
            f"{cost} unit substitutions exceed the limit of {limit}; pass force=True to run anyway"
        )
    trie = _term_trie(poly)
    units = [(u.i, u.j) for u in enumerate_units(n)]
    for assignment in itertools.product(units, repeat=poly.arity):
        if any(_evaluate_on_units(trie, assignment).values()):
            return False
    return True


class OracleDegree(NamedTuple):
    """Degree found by brute force; ``exact=False`` means "at least ``value``"."""

    value: int
    exact: bool

    def __str__(self):
        return str(self.value) if self.exact else f">= {self.value}"


def commutator_degree_oracle(poly: MultilinearPoly, n_max: int, *, force: bool = False) -> OracleDegree:
    """Largest ``r <= n_max`` with ``poly`` in Id(UT_r), by unit substitution."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if not poly:
        raise ZeroPolynomial("the zero polynomial is an identity of every UT_n")
    for n in range(1, n_max + 1):
        if not is_identity_bruteforce(poly, n, force=force):
            return OracleDegree(n - 1, True)
    return OracleDegree(n_max, False)
