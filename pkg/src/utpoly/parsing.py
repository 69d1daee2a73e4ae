"""Recursive-descent parser for multilinear polynomial text.

Grammar (whitespace-insensitive)::

    expr     := [sign] term (sign term)*
    term     := [rational ['*']] factor ('*' factor)*
    factor   := variable | '[' expr ',' expr ']' | '(' expr ')'
    variable := 'x' digits
    rational := digits ['/' digits]

A leading sign on the first term, and an optional ``*`` between a
coefficient and its first factor, are accepted so that everything
:func:`~utpoly.freealg.format_poly` prints parses back.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import EmptyPolynomial, NotMultilinear, PolySyntaxError
from .freealg import MultilinearPoly, Permutation

_TOKEN = re.compile(r"\s*(?:(x\d+)|(\d+)|([-+*/\[\](),])|(\S))")

# intermediate form: word (tuple of variable indices) -> coefficient
_Words = dict


def _tokenize(text: str):
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    while True:
        match = _TOKEN.match(text, pos)
        if match is None:
            break
        var, num, sym, bad = match.groups()
        start = match.start(match.lastindex)
        if bad is not None:
            raise PolySyntaxError(f"unexpected character {bad!r}", start)
        if var is not None:
            index = int(var[1:])
            if index < 1:
                raise PolySyntaxError("variable indices start at 1", start)
            tokens.append(("var", index, start))
        elif num is not None:
            tokens.append(("num", int(num), start))
        else:
            tokens.append((sym, sym, start))
        pos = match.end()
    tokens.append(("end", None, len(text)))
    return tokens


def _add_into(acc: _Words, other: _Words, sign: Fraction) -> None:
    for word, coeff in other.items():
        total = acc.get(word, 0) + sign * coeff
        if total:
            acc[word] = total
        else:
            acc.pop(word, None)


def _multiply(left: _Words, right: _Words) -> _Words:
    out: _Words = {}
    for lw, lc in left.items():
        lvars = set(lw)
        for rw, rc in right.items():
            shared = lvars.intersection(rw)
            if shared:
                raise NotMultilinear(
                    f"variable x{min(shared)} occurs twice in a monomial"
                )
            word = lw + rw
            total = out.get(word, 0) + lc * rc
            if total:
                out[word] = total
            else:
                out.pop(word, None)
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            expected = "end of input" if kind == "end" else repr(kind)
            raise PolySyntaxError(f"expected {expected}, found {self._describe(tok)}", tok[2])
        self.i += 1
        return tok

    @staticmethod
    def _describe(tok):
        kind, value, _ = tok
        if kind == "end":
            return "end of input"
        if kind == "var":
            return f"x{value}"
        return repr(str(value))

    def expr(self) -> _Words:
        acc: _Words = {}
        sign = Fraction(1)
        if self.peek()[0] in ("+", "-"):
            sign = Fraction(-1 if self.take()[0] == "-" else 1)
        _add_into(acc, self.term(), sign)
        while self.peek()[0] in ("+", "-"):
            sign = Fraction(-1 if self.take()[0] == "-" else 1)
            _add_into(acc, self.term(), sign)
        return acc

    def term(self) -> _Words:
        coeff = Fraction(1)
        if self.peek()[0] == "num":
            num = self.take()[1]
            den = 1
            if self.peek()[0] == "/":
                self.take()
                tok = self.take("num")
                den = tok[1]
                if den == 0:
                    raise PolySyntaxError("zero denominator", tok[2])
            coeff = Fraction(num, den)
            if self.peek()[0] == "*":
                self.take()
        result = self.factor()
        while self.peek()[0] == "*":
            self.take()
            result = _multiply(result, self.factor())
        if coeff != 1:
            result = {w: c * coeff for w, c in result.items() if c * coeff}
        return result

    def factor(self) -> _Words:
        tok = self.peek()
        kind = tok[0]
        if kind == "var":
            self.take()
            return {(tok[1],): Fraction(1)}
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "[":
            self.take()
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            out = _multiply(a, b)
            _add_into(out, _multiply(b, a), Fraction(-1))
            return out
        raise PolySyntaxError(
            f"expected a variable, '[' or '(', found {self._describe(tok)}", tok[2]
        )


def parse(text: str) -> MultilinearPoly:
    """Parse and expand ``text`` into a :class:`MultilinearPoly`.

    >>> str(parse("[x1,x2]"))
    'x1*x2 - x2*x1'
    """
    if text.strip() == "0":
        return MultilinearPoly.zero()
    parser = _Parser(text)
    if parser.peek()[0] == "end":
        raise PolySyntaxError("empty input", 0)
    words = parser.expr()
    parser.take("end")
    if not words:
        raise EmptyPolynomial(f"{text.strip()!r} expands to the zero polynomial; write '0'")
    arity = max(max(w) for w in words)
    wanted = set(range(1, arity + 1))
    terms = {}
    for word, coeff in words.items():
        if len(word) != arity:
            missing = sorted(wanted.difference(word))
            raise NotMultilinear(
                f"monomial {'*'.join(f'x{v}' for v in word)} is missing x{missing[0]}"
            )
        terms[Permutation._trusted(word)] = coeff
    return MultilinearPoly._from_clean(arity, terms)
