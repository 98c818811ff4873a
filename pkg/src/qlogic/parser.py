"""Parser for algebra specs such as ``"C(3) + spin(4) + O3"``.

Grammar (whitespace between tokens is ignored)::

    spec   := factor ("+" factor)*
    factor := "R(" int ")" | "C(" int ")" | "H(" int ")" | "O3" | "spin(" int ")"

``O(3)`` is accepted as a synonym of ``O3``; any other octonionic size is
a semantic error.
"""

from __future__ import annotations

import re

from .jordan import AlgebraDescriptor, SimpleFactorDescriptor

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z]+)|(?P<int>\d+)|(?P<punct>[()+])|(?P<bad>\S))")
_MATRIX = {"R": "R", "C": "C", "H": "H"}


class SpecError(ValueError):
    """Base class; ``offset`` is the byte offset of the offending token."""

    def __init__(self, message, text, offset):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at byte {offset} in {text!r}")


class SpecSyntaxError(SpecError):
    def __init__(self, text, offset, expected, found):
        self.expected = expected
        self.found = found
        super().__init__(f"expected {expected}, found {found}", text, offset)


class SpecSemanticError(SpecError):
    pass


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        start = m.start(kind)
        offset = len(text[:start].encode("utf-8"))
        tokens.append((kind, m.group(kind), offset))
        pos = m.end()
    tokens.append(("end", "", len(text.encode("utf-8"))))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        kind, value, offset = self.peek()
        found = "end of input" if kind == "end" else repr(value)
        raise SpecSyntaxError(self.text, offset, expected, found)

    def expect(self, kind, value=None, expected=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            self.fail(expected or repr(value))
        return self.advance()

    def parse(self):
        factors = [self.factor()]
        while self.peek()[0] == "punct" and self.peek()[1] == "+":
            self.advance()
            factors.append(self.factor())
        self.expect("end", expected="'+' or end of input")
        return AlgebraDescriptor(factors)

    def size(self):
        self.expect("punct", "(")
        kind, value, offset = self.expect("int", expected="an integer")
        self.expect("punct", ")")
        return int(value), offset

    def factor(self):
        kind, name, offset = self.peek()
        if kind != "name":
            self.fail("a factor (R(k), C(k), H(k), O3 or spin(n))")
        self.advance()
        if name in _MATRIX:
            k, where = self.size()
            if k < 1:
                raise SpecSemanticError(f"{name}(k) needs k >= 1", self.text, where)
            return SimpleFactorDescriptor(_MATRIX[name], k)
        if name == "spin":
            n, where = self.size()
            if n < 2:
                raise SpecSemanticError("spin(n) needs n >= 2", self.text, where)
            return SimpleFactorDescriptor("spin", n)
        if name == "O":
            nxt = self.peek()
            if nxt[0] == "int":
                k, where = int(nxt[1]), nxt[2]
                self.advance()
            elif nxt[0] == "punct" and nxt[1] == "(":
                k, where = self.size()
            else:
                self.fail("'3' or '(3)' after O")
            if k != 3:
                raise SpecSemanticError(f"octonionic factor only k=3, got k={k}", self.text, where)
            return SimpleFactorDescriptor("O", 3)
        raise SpecSyntaxError(self.text, offset, "one of R, C, H, O, spin", repr(name))


def parse_algebra_spec(text: str) -> AlgebraDescriptor:
    return _Parser(text).parse()


def canonical_spec(descriptor: AlgebraDescriptor) -> str:
    return str(descriptor)
