"""Exact upper triangular matrices over the rationals.

Matrices are sparse: ``entries`` maps 1-based ``(i, j)`` with ``i <= j`` to
nonzero Fractions.  Matrix-unit evaluations of multilinear polynomials
touch very few entries, so a dict beats dense storage here.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, NamedTuple, Sequence

from .errors import ArityMismatch, IndexOutOfRange, SizeMismatch
from .freealg import MultilinearPoly, as_scalar, scalar_to_str


class UTMatrix:
    __slots__ = ("n", "_entries", "_hash")

    def __init__(self, n: int, entries: Mapping | None = None):
        if n < 1:
            raise ValueError("matrix size must be positive")
        clean = {}
        for (i, j), value in (entries or {}).items():
            if not 1 <= i <= j <= n:
                raise IndexOutOfRange(
                    f"entry ({i}, {j}) is not on or above the diagonal of a {n}x{n} matrix"
                )
            value = as_scalar(value)
            if value:
                clean[(i, j)] = value
        self.n = n
        self._entries = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, n: int, entries: dict) -> "UTMatrix":
        mat = cls.__new__(cls)
        mat.n = n
        mat._entries = entries
        mat._hash = None
        return mat

    @classmethod
    def zero(cls, n: int) -> "UTMatrix":
        return cls(n)

    @classmethod
    def identity(cls, n: int) -> "UTMatrix":
        return cls._from_clean(n, {(i, i): Fraction(1) for i in range(1, n + 1)})

    @classmethod
    def diagonal(cls, values: Sequence) -> "UTMatrix":
        return cls(len(values), {(i, i): v for i, v in enumerate(values, start=1)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "UTMatrix":
        """Build from a dense square array; anything below the diagonal must be 0."""
        n = len(rows)
        entries = {}
        for i, row in enumerate(rows, start=1):
            if len(row) != n:
                raise SizeMismatch("rows must form a square array")
            for j, value in enumerate(row, start=1):
                value = as_scalar(value)
                if value and j < i:
                    raise IndexOutOfRange(f"nonzero entry ({i}, {j}) below the diagonal")
                if value:
                    entries[(i, j)] = value
        return cls._from_clean(n, entries)

    @property
    def entries(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._entries)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexOutOfRange(f"({i}, {j}) outside a {self.n}x{self.n} matrix")
        return self._entries.get((i, j), Fraction(0))

    def to_rows(self) -> list:
        return [[self[i, j] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def is_zero(self) -> bool:
        return not self._entries

    def __bool__(self):
        return bool(self._entries)

    def __eq__(self, other):
        if not isinstance(other, UTMatrix):
            return NotImplemented
        return self.n == other.n and self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._entries.items())))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, UTMatrix):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, UTMatrix):
            return NotImplemented
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __matmul__(self, other):
        if not isinstance(other, UTMatrix):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, factor):
        if isinstance(factor, (int, Fraction)) and not isinstance(factor, bool):
            return scale(factor, self)
        return NotImplemented

    def __repr__(self):
        body = ", ".join(f"({i},{j}): {scalar_to_str(v)}" for (i, j), v in sorted(self._entries.items()))
        return f"UTMatrix({self.n}, {{{body}}})"


class MatrixUnit(NamedTuple):
    n: int
    i: int
    j: int

    def matrix(self) -> UTMatrix:
        return unit(self.n, self.i, self.j)


def unit(n: int, i: int, j: int) -> UTMatrix:
    """The matrix unit E_{i,j} of size n."""
    if not 1 <= i <= j <= n:
        raise IndexOutOfRange(f"E_({i},{j}) is not an upper triangular unit of size {n}")
    return UTMatrix._from_clean(n, {(i, j): Fraction(1)})


def _same_size(a: UTMatrix, b: UTMatrix) -> None:
    if a.n != b.n:
        raise SizeMismatch(f"sizes {a.n} and {b.n} differ")


def add(a: UTMatrix, b: UTMatrix) -> UTMatrix:
    _same_size(a, b)
    out = dict(a._entries)
    for key, value in b._entries.items():
        total = out.get(key, 0) + value
        if total:
            out[key] = total
        else:
            out.pop(key, None)
    return UTMatrix._from_clean(a.n, out)


def scale(factor, a: UTMatrix) -> UTMatrix:
    factor = as_scalar(factor)
    if not factor:
        return UTMatrix.zero(a.n)
    return UTMatrix._from_clean(a.n, {k: v * factor for k, v in a._entries.items()})


def _rows(a: UTMatrix) -> dict:
    rows: dict = {}
    for (i, j), value in a._entries.items():
        rows.setdefault(i, []).append((j, value))
    return rows


def mul(a: UTMatrix, b: UTMatrix) -> UTMatrix:
    _same_size(a, b)
    brows = _rows(b)
    out: dict = {}
    for (i, k), x in a._entries.items():
        row = brows.get(k)
        if row is None:
            continue
        for j, y in row:
            key = (i, j)
            out[key] = out.get(key, 0) + x * y
    return UTMatrix._from_clean(a.n, {k: v for k, v in out.items() if v})


def radical_power_member(a: UTMatrix, r: int) -> bool:
    """True iff ``a`` lies in J^r, i.e. every nonzero entry has j - i >= r."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return all(j - i >= r for (i, j) in a._entries)


def evaluate(poly: MultilinearPoly, args: Sequence[UTMatrix], n: int | None = None) -> UTMatrix:
    """Substitute ``args[q-1]`` for ``x_q`` and return the resulting matrix.

    Each monomial is multiplied left to right and abandoned as soon as a
    partial product vanishes.  ``n`` is needed only when there are no
    arguments (the arity-0 zero polynomial).
    """
    if len(args) != poly.arity:
        raise ArityMismatch(f"polynomial has arity {poly.arity} but got {len(args)} matrices")
    if args:
        n = args[0].n
        for a in args:
            if a.n != n:
                raise SizeMismatch(f"arguments mix sizes {n} and {a.n}")
    elif n is None:
        raise ArityMismatch("cannot infer the matrix size without arguments")
    total: dict = {}
    for perm, coeff in poly.items():
        prod = args[perm[0] - 1]
        for q in perm[1:]:
            if not prod._entries:
                break
            prod = mul(prod, args[q - 1])
        for key, value in prod._entries.items():
            total[key] = total.get(key, 0) + coeff * value
    return UTMatrix._from_clean(n, {k: v for k, v in total.items() if v})


def enumerate_units(n: int) -> list:
    """All n(n+1)/2 matrix units in row-major order."""
    if n < 1:
        raise ValueError("n must be positive")
    return [MatrixUnit(n, i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def matrix_to_json(a: UTMatrix) -> dict:
    return {
        "n": a.n,
        "entries": [[i, j, scalar_to_str(v)] for (i, j), v in sorted(a._entries.items())],
    }


def matrix_from_json(data: Mapping) -> UTMatrix:
    try:
        n = data["n"]
        raw = data.get("entries", [])
    except (TypeError, KeyError, AttributeError) as exc:
        raise ValueError(f"matrix JSON needs 'n' and 'entries': {exc}") from None
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError("matrix JSON 'n' must be an integer")
    entries = {}
    for item in raw:
        if len(item) != 3:
            raise ValueError(f"matrix entry {item!r} is not [i, j, value]")
        i, j, value = item
        if (i, j) in entries:
            raise ValueError(f"duplicate entry ({i}, {j})")
        try:
            entries[(int(i), int(j))] = as_scalar(value)
        except (TypeError, ValueError, ZeroDivisionError):
            raise ValueError(f"entry ({i}, {j}) has non-rational value {value!r}") from None
    return UTMatrix(n, entries)

