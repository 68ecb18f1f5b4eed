"""Random strings matching a regular expression (a practical subset).

Supports what message-field patterns actually use: literals, ``.``,
escapes (``\\d \\w \\s`` and escaped metacharacters), character classes
with ranges and negation, groups, alternation, and the quantifiers ``?``
``*`` ``+`` ``{n}`` ``{n,}`` ``{n,m}``. Anchors are meaningless here (the
whole output matches) and unsupported constructs raise ValueError.

Unbounded quantifiers draw a length from [lower, lower + size].
"""

from __future__ import annotations

import string

from .rng import Rng

_PRINTABLE = string.digits + string.ascii_letters + string.punctuation + " "
_DIGITS = string.digits
_WORD = string.ascii_letters + string.digits + "_"
_SPACE = " \t"
_METACHARS = set("\\^$.|?*+()[]{}")


class _Parser:
    def __init__(self, pattern: str):
        self.pattern = pattern
        self.pos = 0

    def error(self, message: str):
        raise ValueError(f"regex sampler: {message} at {self.pos} in {self.pattern!r}")

    def peek(self) -> str | None:
        return self.pattern[self.pos] if self.pos < len(self.pattern) else None

    def take(self) -> str:
        ch = self.peek()
        if ch is None:
            self.error("unexpected end")
        self.pos += 1
        return ch

    # alternation := sequence ('|' sequence)*
    def parse(self):
        node = self.parse_alternation()
        if self.pos != len(self.pattern):
            self.error("unbalanced ')'")
        return node

    def parse_alternation(self):
        options = [self.parse_sequence()]
        while self.peek() == "|":
            self.take()
            options.append(self.parse_sequence())
        return ("alt", options) if len(options) > 1 else options[0]

    def parse_sequence(self):
        items = []
        while self.peek() is not None and self.peek() not in "|)":
            items.append(self.parse_quantified())
        return ("seq", items)

    def parse_quantified(self):
        atom = self.parse_atom()
        ch = self.peek()
        if ch == "?":
            self.take()
            return ("repeat", atom, 0, 1)
        if ch == "*":
            self.take()
            return ("repeat", atom, 0, None)
        if ch == "+":
            self.take()
            return ("repeat", atom, 1, None)
        if ch == "{":
            self.take()
            lo = self._int()
            hi = lo
            if self.peek() == ",":
                self.take()
                hi = self._int() if self.peek() != "}" else None
            if self.take() != "}":
                self.error("expected '}'")
            if hi is not None and hi < lo:
                self.error("bad repetition bounds")
            return ("repeat", atom, lo, hi)
        return atom

    def _int(self) -> int:
        digits = ""
        while (ch := self.peek()) and ch.isdigit():
            digits += self.take()
        if not digits:
            self.error("expected a number")
        return int(digits)

    def parse_atom(self):
        ch = self.take()
        if ch == "(":
            if self.peek() == "?":  # (?:...) non-capturing
                self.take()
                if self.take() != ":":
                    self.error("only (?:...) groups are supported")
            node = self.parse_alternation()
            if self.take() != ")":
                self.error("expected ')'")
            return node
        if ch == "[":
            return self.parse_class()
        if ch == ".":
            return ("chars", _PRINTABLE)
        if ch == "\\":
            return ("chars", self._escape(self.take()))
        if ch in "^$":
            return ("seq", [])  # anchors contribute nothing
        if ch in "?*+{}|)":
            self.error(f"misplaced {ch!r}")
        return ("chars", ch)

    def _escape(self, ch: str) -> str:
        if ch == "d":
            return _DIGITS
        if ch == "w":
            return _WORD
        if ch == "s":
            return _SPACE
        if ch in _METACHARS or ch == "/":
            return ch
        if ch == "n":
            return "\n"
        if ch == "t":
            return "\t"
        self.error(f"unsupported escape \\{ch}")

    def parse_class(self):
        negated = self.peek() == "^"
        if negated:
            self.take()
        chars: set[str] = set()
        first = True
        while True:
            ch = self.peek()
            if ch is None:
                self.error("unterminated character class")
            if ch == "]" and not first:
                self.take()
                break
            first = False
            ch = self.take()
            if ch == "\\":
                chars.update(self._escape(self.take()))
                continue
            if self.peek() == "-" and self.pattern[self.pos + 1 : self.pos + 2] not in ("]", ""):
                self.take()
                end = self.take()
                if end == "\\":
                    self.error("range ending in escape")
                if ord(end) < ord(ch):
                    self.error("reversed class range")
                chars.update(chr(c) for c in range(ord(ch), ord(end) + 1))
            else:
                chars.add(ch)
        if negated:
            chars = set(_PRINTABLE) - chars
            if not chars:
                self.error("negated class excludes everything")
        return ("chars", "".join(sorted(chars)))


def compile_pattern(pattern: str):
    """Parse once; the result can be sampled many times."""
    return _Parser(pattern).parse()


def sample_compiled(node, rng: Rng, size: int) -> str:
    kind = node[0]
    if kind == "chars":
        return rng.choice(node[1])
    if kind == "seq":
        return "".join(sample_compiled(item, rng, size) for item in node[1])
    if kind == "alt":
        return sample_compiled(rng.choice(node[1]), rng, size)
    if kind == "repeat":
        _, atom, lo, hi = node
        count = rng.randint(lo, hi if hi is not None else lo + max(size, 1))
        return "".join(sample_compiled(atom, rng, size) for _ in range(count))
    raise AssertionError(node)


def sample_regex(pattern: str, rng: Rng, size: int = 8) -> str:
    """One random string that full-matches the pattern."""
    return sample_compiled(compile_pattern(pattern), rng, size)
