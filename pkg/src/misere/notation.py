"""Text notation for game forms.

Grammar (whitespace ignored)::

    expr   := term (('+') term)*
    term   := '~' term | '{' opts '|' opts '}' | INT | '*'
    opts   := <empty> | '.' | item (',' item)*
    item   := expr | '#'
    INT    := '-'? [0-9]+

'#' marks a tombstone on that side, '~' is the conjugate operator, '+' the
disjunctive sum, and a negative integer denotes the conjugate of the
positive one (the usual overline).  ``parse`` and ``print_form`` are
mutually inverse on form ids; printing emits integers, '*' and brace
notation with options in canonical (interner id) order, tombstone first.
"""

from __future__ import annotations

from .forms import FormId, Interner, ZERO


class ParseError(ValueError):
    """Syntax error, carrying the 0-based offset of the offending character."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class _Parser:
    def __init__(self, it: Interner, text: str):
        self.it = it
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_expr(self) -> FormId:
        g = self.parse_term()
        while self.peek() == "+":
            self.pos += 1
            g = self.it.sum(g, self.parse_term())
        return g

    def parse_term(self) -> FormId:
        ch = self.peek()
        if ch == "~":
            self.pos += 1
            return self.it.conjugate(self.parse_term())
        if ch == "{":
            return self.parse_braces()
        if ch == "*":
            self.pos += 1
            return self.it.make((ZERO,), (ZERO,))
        if ch == "-" or ch.isdigit():
            return self.it.integer(self.parse_int())
        if ch == "":
            raise self.error("unexpected end of input")
        raise self.error(f"unknown token {ch!r}")

    def parse_int(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
            raise self.error("expected digits")
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def parse_braces(self) -> FormId:
        self.eat("{")
        left, lt = self.parse_opts()
        self.eat("|")
        right, rt = self.parse_opts()
        self.eat("}")
        return self.it.make(left, right, lt, rt)

    def parse_opts(self):
        options = []
        tombstone = False
        ch = self.peek()
        if ch in ("|", "}"):
            return options, tombstone
        if ch == ".":
            self.pos += 1
            return options, tombstone
        while True:
            if self.peek() == "#":
                self.pos += 1
                tombstone = True
            else:
                options.append(self.parse_expr())
            if self.peek() != ",":
                return options, tombstone
            self.pos += 1


def parse(it: Interner, text: str) -> FormId:
    """Parse an expression into its canonical interned form."""
    p = _Parser(it, text)
    g = p.parse_expr()
    if p.peek() != "":
        raise p.error("trailing input")
    return g


def print_form(it: Interner, g: FormId) -> str:
    """Canonical notation; parse(print_form(g)) == g."""
    n = it.int_value(g)
    if n is not None:
        return str(n)
    f = it.form(g)
    if f.left == (ZERO,) and f.right == (ZERO,) and not f.left_tombstone and not f.right_tombstone:
        return "*"
    left = ["#"] if f.left_tombstone else []
    left += [print_form(it, o) for o in f.left]
    right = ["#"] if f.right_tombstone else []
    right += [print_form(it, o) for o in f.right]
    return "{%s|%s}" % (",".join(left), ",".join(right))
