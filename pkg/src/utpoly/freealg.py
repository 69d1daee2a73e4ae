"""Multilinear polynomials in noncommuting variables over the rationals.

A multilinear polynomial of arity ``m`` is a linear combination of the
words ``x_{s(1)} x_{s(2)} ... x_{s(m)}`` with ``s`` ranging over the
permutations of ``{1, ..., m}``.  We store it sparsely as a map from
:class:`Permutation` to a nonzero :class:`~fractions.Fraction`; the
permutation's image tuple *is* the word.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import ArityMismatch, NotMultilinear

Scalar = Fraction


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: every quantity in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational scalar")


def scalar_to_str(value: Fraction) -> str:
    """Serialize as ``"num/den"`` (the denominator is always written)."""
    return f"{value.numerator}/{value.denominator}"


class Permutation(tuple):
    """A permutation of ``{1, ..., m}`` stored by its images.

    ``Permutation((2, 3, 1))`` maps 1 -> 2, 2 -> 3, 3 -> 1.  Being a tuple,
    permutations hash, compare and sort like their image words.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(int(p) for p in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        return super().__new__(cls, images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls._trusted(tuple(range(1, m + 1)))

    @classmethod
    def all(cls, m: int) -> Iterator["Permutation"]:
        """All of S_m in lexicographic order of the image word."""
        for images in itertools.permutations(range(1, m + 1)):
            yield cls._trusted(images)

    @property
    def arity(self) -> int:
        return len(self)

    def __call__(self, q: int) -> int:
        return self[q - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """Return ``self o other``, i.e. ``q -> self(other(q))``."""
        if len(other) != len(self):
            raise ArityMismatch("cannot compose permutations of different arity")
        return Permutation._trusted(tuple(self[p - 1] for p in other))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for q, p in enumerate(self, start=1):
            inv[p - 1] = q
        return Permutation._trusted(tuple(inv))

    def sign(self) -> int:
        seen = [False] * len(self)
        parity = 0
        for start in range(len(self)):
            if seen[start]:
                continue
            length = 0
            q = start
            while not seen[q]:
                seen[q] = True
                q = self[q] - 1
                length += 1
            parity += length - 1
        return -1 if parity % 2 else 1

    def __repr__(self):
        return f"Permutation({tuple(self)!r})"


class MultilinearPoly:
    """Immutable sparse multilinear polynomial with rational coefficients.

    ``terms`` maps each permutation to its coefficient; zero coefficients
    are dropped on construction.  The zero polynomial has an empty map.
    """

    __slots__ = ("_arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping | None = None):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        clean = {}
        for key, coeff in (terms or {}).items():
            perm = key if type(key) is Permutation else Permutation(key)
            if len(perm) != arity:
                raise NotMultilinear(
                    f"word {tuple(perm)} does not use exactly the variables x1..x{arity}"
                )
            coeff = as_scalar(coeff)
            if coeff:
                clean[perm] = coeff
        self._arity = arity
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, arity: int, terms: dict) -> "MultilinearPoly":
        poly = cls.__new__(cls)
        poly._arity = arity
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, arity: int = 0) -> "MultilinearPoly":
        return cls._from_clean(arity, {})

    @classmethod
    def monomial(cls, word: Iterable[int], coeff=1) -> "MultilinearPoly":
        perm = Permutation(word)
        return cls(len(perm), {perm: coeff})

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def terms(self) -> Mapping[Permutation, Fraction]:
        return MappingProxyType(self._terms)

    def coefficient(self, perm) -> Fraction:
        return self._terms.get(tuple(perm), Fraction(0))

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self._arity == other._arity and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._arity, frozenset(self._terms.items())))
        return self._hash

    def _check_arity(self, other: "MultilinearPoly") -> None:
        if self._arity != other._arity and self and other:
            raise ArityMismatch(f"arity {self._arity} vs {other._arity}")

    def __add__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        self._check_arity(other)
        arity = self._arity if self else other._arity
        out = dict(self._terms)
        for perm, coeff in other._terms.items():
            total = out.get(perm, 0) + coeff
            if total:
                out[perm] = total
            else:
                out.pop(perm, None)
        return MultilinearPoly._from_clean(arity, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "MultilinearPoly":
        factor = as_scalar(factor)
        if not factor:
            return MultilinearPoly.zero(self._arity)
        return MultilinearPoly._from_clean(
            self._arity, {p: c * factor for p, c in self._terms.items()}
        )

    def __rmul__(self, factor):
        if isinstance(factor, (int, Fraction)) and not isinstance(factor, bool):
            return self.scale(factor)
        return NotImplemented

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultilinearPoly({self._arity}, {format_poly(self)!r})"


def coefficient_sum(poly: MultilinearPoly) -> Fraction:
    """Sum of all coefficients; zero exactly when ``poly`` lies in the
    T-ideal generated by ``[x1, x2]``."""
    return sum(poly._terms.values(), Fraction(0))


def _format_coeff(abs_coeff: Fraction) -> str:
    if abs_coeff.denominator == 1:
        return str(abs_coeff.numerator)
    return f"{abs_coeff.numerator}/{abs_coeff.denominator}"


def format_poly(poly: MultilinearPoly) -> str:
    """Canonical text, terms sorted by their word.

    >>> format_poly(standard_poly(2))
    'x1*x2 - x2*x1'
    """
    if not poly:
        return "0"
    parts = []
    for perm in sorted(poly._terms):
        coeff = poly._terms[perm]
        word = "*".join(f"x{p}" for p in perm)
        mag = abs(coeff)
        body = word if mag == 1 else f"{_format_coeff(mag)}*{word}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"{'-' if coeff < 0 else '+'} {body}")
    return " ".join(parts)


def standard_poly(m: int) -> MultilinearPoly:
    """The standard polynomial: sum of sign(s) x_{s(1)}...x_{s(m)} over S_m."""
    if m < 1:
        raise ValueError("standard_poly needs m >= 1")
    return MultilinearPoly._from_clean(
        m, {perm: Fraction(perm.sign()) for perm in Permutation.all(m)}
    )


def commutator_product(r: int) -> MultilinearPoly:
    """Expansion of ``[x1,x2][x3,x4]...[x_{2r-1},x_{2r}]`` (2**r terms)."""
    if r < 1:
        raise ValueError("commutator_product needs r >= 1")
    terms = {}
    for flips in itertools.product((False, True), repeat=r):
        word = []
        sign = 1
        for i, flipped in enumerate(flips):
            a, b = 2 * i + 1, 2 * i + 2
            if flipped:
                word += [b, a]
                sign = -sign
            else:
                word += [a, b]
        terms[Permutation._trusted(tuple(word))] = Fraction(sign)
    return MultilinearPoly._from_clean(2 * r, terms)
