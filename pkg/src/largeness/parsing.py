"""Text format for words and presentations.

Grammar (whitespace is free between tokens)::

    presentation := "<" names [ "|" [ relation { "," relation } ] ] ">"
    relation     := word [ "=" word ]
    word         := { factor } | "1"
    factor       := atom [ "^" exponent ]
    atom         := generator | "(" word ")" | "[" word "," word "]"
    exponent     := [ "-" ] digits | "{" [ "-" ] digits "}"

Generators are matched greedily against the declared names, so ``xy`` reads
as ``x y`` when both are generators.  ``u = v`` is stored as ``u v^-1`` and
``[u, v]`` expands to ``u v u^-1 v^-1``.  The angle brackets may also be
written as the Unicode ``⟨ ⟩``.
"""

from __future__ import annotations

import re
from typing import Sequence

from .presentation import Presentation
from .words import Word, commutator, power


class ParseError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: int = 0):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}" + (f": {text[pos:pos + 20]!r}" if text else ""))


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _Parser:
    def __init__(self, text: str, names: Sequence[str] = ()):
        self.text = text.replace("−", "-").replace("⟨", "<").replace("⟩", ">")
        self.pos = 0
        self.set_names(names)

    def set_names(self, names: Sequence[str]):
        self.names = list(names)
        self.by_length = sorted(range(len(self.names)), key=lambda i: -len(self.names[i]))

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def at_end(self) -> bool:
        return self.peek() == ""

    # -- words --

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"[+-]?\s*\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group().replace(" ", ""))

    def exponent(self) -> int:
        if self.peek() == "{":
            self.pos += 1
            e = self.integer()
            self.expect("}")
            return e
        return self.integer()

    def generator(self) -> Word:
        self.skip()
        for i in self.by_length:
            n = self.names[i]
            if self.text.startswith(n, self.pos):
                self.pos += len(n)
                return Word.gen(i)
        m = _NAME.match(self.text, self.pos)
        if m:
            self.error(f"unknown generator {m.group()!r}")
        self.error("expected a generator")

    def atom(self) -> Word:
        c = self.peek()
        if c == "(":
            self.pos += 1
            w = self.word()
            self.expect(")")
            return w
        if c == "[":
            self.pos += 1
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            return commutator(u, v)
        if c == "1":
            self.pos += 1
            return Word()
        return self.generator()

    def factor(self) -> Word:
        w = self.atom()
        while self.peek() == "^":
            self.pos += 1
            w = power(w, self.exponent())
        return w

    def word(self) -> Word:
        w = Word()
        start = self.pos
        while True:
            c = self.peek()
            if c == "" or c in ",|>=)]}":
                break
            w = w * self.factor()
        if self.pos == start:
            self.error("empty word")
        return w

    def relation(self) -> Word:
        u = self.word()
        if self.peek() == "=":
            self.pos += 1
            v = self.word()
            return u * v.inverse()
        return u

    # -- presentations --

    def presentation(self) -> Presentation:
        self.expect("<")
        names: list[str] = []
        while True:
            self.skip()
            m = _NAME.match(self.text, self.pos)
            if not m:
                self.error("expected a generator name")
            names.append(m.group())
            self.pos = m.end()
            c = self.peek()
            if c == ",":
                self.pos += 1
                continue
            break
        if len(set(names)) != len(names):
            self.error("duplicate generator name")
        self.set_names(names)
        rels: list[Word] = []
        if self.peek() == "|":
            self.pos += 1
            if self.peek() != ">":
                while True:
                    rels.append(self.relation())
                    if self.peek() == ",":
                        self.pos += 1
                        continue
                    break
        self.expect(">")
        if not self.at_end():
            self.error("trailing text")
        return Presentation(tuple(names), tuple(rels))


def parse_word(text: str, names: Sequence[str]) -> Word:
    p = _Parser(text, names)
    w = p.relation()
    if not p.at_end():
        p.error("trailing text")
    return w


def parse_presentation(text: str) -> Presentation:
    return _Parser(text.strip()).presentation()


def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in w.runs)


def format_presentation(p: Presentation) -> str:
    gens = ", ".join(p.names)
    if not p.relators:
        return f"< {gens} >"
    rels = ", ".join(format_word(r, p.names) for r in p.relators)
    return f"< {gens} | {rels} >"
