"""Constructive preimages: solve ``f(c_1, ..., c_m) = A`` over UT_n.

For ``f`` of commutator-degree ``r >= 1`` with witness profile ``(T, t)``:

* variables in ``T_l`` become random diagonal matrices ``D_l``; the
  leftover variables share a further diagonal ``D_{r+1}``;
* ``t_1, ..., t_{r-1}`` become random superdiagonal matrices ``N_i``;
* ``t_r`` (the pivot) becomes an unknown strictly upper matrix ``X``.

``f`` is linear in ``X``.  An entry of ``X`` with offset ``s = b - a`` only
reaches output entries of offset ``q = s + r - 1``; writing ``j`` for the
position of ``X`` among the ``r`` strictly upper factors, pivot entry
``(k + j - 1, k + j - 1 + s)`` feeds output ``(k, k + q)`` with coefficient
``delta[j, q, k]``.  The resulting system is triangular once rows
``1..r-1`` of ``X`` are pinned to zero, and ``delta[r, q, k]`` is nonzero for
generic parameters.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .degree import DegreeReport, Profile, beta, commutator_degree
from .errors import (
    InternalVerificationFailure,
    InvalidWitness,
    RetriesExhausted,
    SizeMismatch,
    TargetOutsideImage,
    ZeroPolynomial,
)
from .freealg import MultilinearPoly, coefficient_sum, format_poly
from .triangular import (
    UTMatrix,
    evaluate,
    matrix_to_json,
    radical_power_member,
    scale,
    unit,
)

SAMPLE_MAX = 2**16


class Role(NamedTuple):
    kind: str  # "diagonal", "superdiagonal" or "pivot"
    index: int  # block l, superdiagonal i, or r for the pivot


@dataclass(frozen=True)
class GenericAssignment:
    witness: Profile
    n: int
    roles: tuple
    diag_values: dict  # l -> n values
    super_values: dict  # i -> n - 1 values
    seed: int
    attempt: int = 0

    @property
    def degree(self) -> int:
        return self.witness.k

    @property
    def pivot(self) -> int:
        """1-based index of the pivot variable."""
        return self.witness.t[-1]

    def matrices(self, pivot_matrix: UTMatrix) -> list:
        n = self.n
        diag = {l: UTMatrix.diagonal(vals) for l, vals in self.diag_values.items()}
        sup = {
            i: UTMatrix(n, {(j, j + 1): v for j, v in enumerate(vals, start=1)})
            for i, vals in self.super_values.items()
        }
        out = []
        for role in self.roles:
            if role.kind == "diagonal":
                out.append(diag[role.index])
            elif role.kind == "superdiagonal":
                out.append(sup[role.index])
            else:
                out.append(pivot_matrix)
        return out


def _rng(seed: int, attempt: int) -> random.Random:
    return random.Random(f"{seed}:{attempt}")


def build_assignment(
    f: MultilinearPoly, witness: Profile, n: int, seed: int = 0, attempt: int = 0
) -> GenericAssignment:
    r = witness.k
    if r < 1:
        raise InvalidWitness("the generic assignment needs a witness with k >= 1")
    if witness.m != f.arity:
        raise InvalidWitness(f"witness is over {witness.m} variables, polynomial has {f.arity}")
    if n <= r:
        raise InvalidWitness(f"need n > r, got n={n}, r={r}")
    if not beta(f, witness):
        raise InvalidWitness("beta vanishes on the given witness profile")
    roles = [Role("diagonal", r + 1)] * f.arity
    for l, block in enumerate(witness.T, start=1):
        for j in block:
            roles[j - 1] = Role("diagonal", l)
    for i, ti in enumerate(witness.t[:-1], start=1):
        roles[ti - 1] = Role("superdiagonal", i)
    roles[witness.t[-1] - 1] = Role("pivot", r)

    rng = _rng(seed, attempt)
    diag_values = {
        l: tuple(rng.randint(1, SAMPLE_MAX) for _ in range(n)) for l in range(1, r + 2)
    }
    super_values = {
        i: tuple(rng.randint(1, SAMPLE_MAX) for _ in range(n - 1)) for i in range(1, r)
    }
    return GenericAssignment(witness, n, tuple(roles), diag_values, super_values, seed, attempt)


@dataclass(frozen=True)
class DeltaTable:
    """Coefficients ``values[(j, q, k)]`` of the triangular pivot system."""

    r: int
    n: int
    values: dict

    def __getitem__(self, jqk) -> Fraction:
        return self.values[jqk]

    def usable(self) -> bool:
        r, n = self.r, self.n
        return all(
            self.values[(r, q, k)] != 0 for q in range(r, n) for k in range(1, n - q + 1)
        )

    def to_json(self) -> list:
        return [
            [j, q, k, f"{v.numerator}/{v.denominator}"]
            for (j, q, k), v in sorted(self.values.items())
        ]


def pivot_position(j: int, q: int, k: int, r: int) -> tuple:
    """Entry of ``X`` multiplied by ``delta[j, q, k]`` in output entry ``(k, k + q)``."""
    row = k + j - 1
    return row, row + q - r + 1


def delta_table(f: MultilinearPoly, assignment: GenericAssignment, n: int) -> DeltaTable:
    """Recover every ``delta[j, q, k]`` by evaluating ``f`` with a unit pivot.

    One evaluation per strictly upper unit ``E_{a,b}`` of offset at most
    ``n - r``; each evaluation yields the coefficients for every ``j``.
    """
    r = assignment.degree
    if n != assignment.n:
        raise SizeMismatch(f"assignment was built for n={assignment.n}, not {n}")
    values = {}
    for s in range(1, n - r + 1):
        q = s + r - 1
        for a in range(1, n - s + 1):
            image = evaluate(f, assignment.matrices(unit(n, a, a + s)))
            expected_cells = set()
            for j in range(1, r + 1):
                k = a - j + 1
                if 1 <= k <= n - q:
                    values[(j, q, k)] = image[k, k + q]
                    expected_cells.add((k, k + q))
            stray = set(image.entries) - expected_cells
            if stray:
                raise InternalVerificationFailure(
                    f"pivot unit E_({a},{a + s}) reached unexpected entries {sorted(stray)}"
                )
    return DeltaTable(r, n, values)


def solve_pivot(table: DeltaTable, target: UTMatrix) -> UTMatrix:
    """Back-substitute the triangular system for the pivot matrix ``X``.

    Rows ``1..r-1`` of ``X`` stay zero; for each output offset ``q`` the
    remaining unknowns are solved in increasing ``k``.
    """
    r, n = table.r, table.n
    x: dict = {}
    for q in range(r, n):
        for k in range(1, n - q + 1):
            rhs = target[k, k + q]
            for j in range(1, r):
                rhs -= table[(j, q, k)] * x.get(pivot_position(j, q, k, r), 0)
            x[pivot_position(r, q, k, r)] = rhs / table[(r, q, k)]
    return UTMatrix(n, x)


@dataclass(frozen=True)
class PreimageCertificate:
    matrices: tuple
    target: UTMatrix
    degree: int
    witness: Profile
    retries: int
    seed: int
    verified: bool
    delta: DeltaTable | None = None
    assignment: GenericAssignment | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "seed": self.seed,
            "retries": self.retries,
            "witness": self.witness.to_json(),
            "matrices": [matrix_to_json(c) for c in self.matrices],
            "target": matrix_to_json(self.target),
            "verified": self.verified,
        }


def _verified(f, matrices, target, **fields) -> PreimageCertificate:
    got = evaluate(f, matrices, n=target.n)
    if got != target:
        raise InternalVerificationFailure(
            f"f({len(matrices)} matrices) = {got!r} differs from the target {target!r}"
        )
    return PreimageCertificate(matrices=tuple(matrices), target=target, verified=True, **fields)


def solve_preimage(
    f: MultilinearPoly,
    target: UTMatrix,
    n: int | None = None,
    seed: int = 0,
    max_retries: int = 5,
    report: DegreeReport | None = None,
) -> PreimageCertificate:
    """Find matrices ``c`` with ``f(c) = target`` exactly, or explain why none exist.

    Raises :class:`TargetOutsideImage` when ``target`` is not in ``J^r``,
    since the image of ``f`` on ``UT_n`` is exactly ``J^r``.
    """
    if not f:
        raise ZeroPolynomial("the zero polynomial only reaches the zero matrix")
    n = target.n if n is None else n
    if target.n != n:
        raise SizeMismatch(f"target is {target.n}x{target.n}, expected n={n}")
    if report is None:
        report = commutator_degree(f)
    r = report.degree
    if not radical_power_member(target, r):
        (i, j) = min((j - i, (i, j)) for (i, j) in target.entries)[1]
        raise TargetOutsideImage(
            f"target entry ({i},{j}) lies off J^{r}: f has commutator-degree {r}, "
            f"so its image on UT_{n} is J^{r}"
        )
    m = f.arity
    common = dict(degree=r, witness=report.witness, seed=seed)

    if r == 0:
        total = coefficient_sum(f)
        mats = [UTMatrix.identity(n)] * (m - 1) + [scale(1 / total, target)]
        return _verified(f, mats, target, retries=0, **common)

    if r >= n:
        # f is an identity of UT_n and the target is 0
        return _verified(f, [UTMatrix.zero(n)] * m, target, retries=0, **common)

    for attempt in range(max_retries):
        assignment = build_assignment(f, report.witness, n, seed, attempt)
        table = delta_table(f, assignment, n)
        if not table.usable():
            continue
        pivot = solve_pivot(table, target)
        return _verified(
            f, assignment.matrices(pivot), target,
            retries=attempt, delta=table, assignment=assignment, **common,
        )
    raise RetriesExhausted(
        f"every one of {max_retries} sampled assignments had a vanishing pivot coefficient"
    )


# -- image certification -----------------------------------------------------

ENTRY_RANGE = 100


def _random_matrix(rng: random.Random, n: int, min_offset: int = 0) -> UTMatrix:
    return UTMatrix(
        n,
        {
            (i, j): rng.randint(-ENTRY_RANGE, ENTRY_RANGE)
            for i in range(1, n + 1)
            for j in range(i + min_offset, n + 1)
        },
    )


def image_name(r: int, n: int) -> str:
    if r >= n:
        return "{0}"
    if r == 0:
        return f"UT_{n}"
    return "J" if r == 1 else f"J^{r}"


@dataclass
class ImageCertificationReport:
    polynomial: str
    n: int
    degree: int
    image: str
    samples: int
    seed: int
    evaluations_checked: int = 0
    containment_failures: list = field(default_factory=list)
    unit_targets: int = 0
    random_targets: int = 0
    zero_target: bool = False
    solved: int = 0
    max_retries_used: int = 0

    @property
    def containment_passed(self) -> bool:
        return not self.containment_failures

    @property
    def surjectivity_passed(self) -> bool:
        planned = self.unit_targets + self.random_targets + int(self.zero_target)
        return planned > 0 and self.solved == planned

    @property
    def passed(self) -> bool:
        return self.containment_passed and self.surjectivity_passed

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial,
            "n": self.n,
            "degree": self.degree,
            "image": self.image,
            "samples": self.samples,
            "seed": self.seed,
            "containment": {
                "evaluations": self.evaluations_checked,
                "failures": [matrix_to_json(a) for a in self.containment_failures],
                "passed": self.containment_passed,
            },
            "surjectivity": {
                "unit_targets": self.unit_targets,
                "random_targets": self.random_targets,
                "zero_target": self.zero_target,
                "solved": self.solved,
                "max_retries_used": self.max_retries_used,
                "passed": self.surjectivity_passed,
            },
            "passed": self.passed,
        }


def certify_image(
    f: MultilinearPoly,
    n: int,
    samples: int = 20,
    seed: int = 0,
    max_retries: int = 5,
    report: DegreeReport | None = None,
) -> ImageCertificationReport:
    """Check at desk scale that the image of ``f`` on ``UT_n`` is ``J^r``.

    Containment: ``samples`` random evaluations must land in ``J^r``.
    Surjectivity: every unit ``E_{i,j}`` with ``j - i >= r`` and ``samples``
    random elements of ``J^r`` must get verified preimages (when ``r >= n``
    the only target is the zero matrix).  Passing ``report`` skips the
    degree computation.
    """
    if not f:
        raise ZeroPolynomial("cannot certify the image of the zero polynomial")
    if n < 1 or samples < 1:
        raise ValueError("n and samples must be positive")
    if report is None:
        report = commutator_degree(f)
    r = report.degree
    out = ImageCertificationReport(format_poly(f), n, r, image_name(r, n), samples, seed)
    rng = random.Random(seed)

    for _ in range(samples):
        value = evaluate(f, [_random_matrix(rng, n) for _ in range(f.arity)])
        out.evaluations_checked += 1
        if not radical_power_member(value, r):
            out.containment_failures.append(value)

    if r >= n:
        targets = [UTMatrix.zero(n)]
        out.zero_target = True
    else:
        units = [unit(n, i, j) for i in range(1, n + 1) for j in range(i + r, n + 1)]
        targets = units + [_random_matrix(rng, n, r) for _ in range(samples)]
        out.unit_targets = len(units)
        out.random_targets = samples
    for idx, target in enumerate(targets):
        cert = solve_preimage(f, target, n, seed=seed + idx, max_retries=max_retries, report=report)
        out.solved += 1
        out.max_retries_used = max(out.max_retries_used, cert.retries)
    return out
