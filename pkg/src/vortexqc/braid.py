"""
Braid-word language.

Grammar (whitespace is spaces, tabs or newlines)::

    word    := ws* (letter (ws+ letter)*)? ws*
    letter  := "s" integer ("^-1")?
    integer := [1-9][0-9]*

``s2^-1`` is the inverse of the generator exchanging strands 2 and 3.
Letters act left to right: the leftmost letter is applied to the state first.

Script files hold one word per line; ``#`` starts a comment that runs to the
end of the line. A script denotes the concatenation of its lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

MAX_SITE = 2 ** 31 - 1
_WS = " \t\r\n"


class BraidSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, line: int | None = None):
        self.offset = offset
        self.line = line
        where = f"line {line}, offset {offset}" if line is not None else f"offset {offset}"
        super().__init__(f"{message} at {where}")
        self.message = message


class Letter(NamedTuple):
    site: int
    inverse: bool = False

    def __str__(self):
        return f"s{self.site}^-1" if self.inverse else f"s{self.site}"


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple(Letter(int(s), bool(i)) for s, i in self.letters)
        for s, _ in letters:
            if s < 1:
                raise ValueError(f"braid sites start at 1 (got {s})")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)

    def __str__(self):
        return format_braid_word(self)

    @property
    def max_site(self) -> int:
        return max((s for s, _ in self.letters), default=0)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple(Letter(s, not inv) for s, inv in reversed(self.letters)))


IDENTITY = BraidWord()


def parse_braid_word(text: str) -> BraidWord:
    letters: list[Letter] = []
    n = len(text)
    pos = 0
    while pos < n and text[pos] in _WS:
        pos += 1
    while pos < n:
        start = pos
        if text[pos] != "s":
            raise BraidSyntaxError(f"expected 's', found {text[pos]!r}", pos)
        pos += 1
        digits_at = pos
        while pos < n and text[pos].isdigit() and text[pos].isascii():
            pos += 1
        digits = text[digits_at:pos]
        if not digits:
            raise BraidSyntaxError("expected a site number after 's'", digits_at)
        if digits[0] == "0":
            raise BraidSyntaxError("site numbers start at 1 and have no leading zeros", start)
        if len(digits) > 10 or int(digits) > MAX_SITE:
            raise BraidSyntaxError("site number too large", start)
        inverse = False
        if text.startswith("^", pos):
            if not text.startswith("^-1", pos):
                raise BraidSyntaxError("expected '^-1'", pos)
            inverse = True
            pos += 3
        letters.append(Letter(int(digits), inverse))
        if pos < n and text[pos] not in _WS:
            raise BraidSyntaxError("expected whitespace between letters", pos)
        while pos < n and text[pos] in _WS:
            pos += 1
    return BraidWord(tuple(letters))


def format_braid_word(word: BraidWord) -> str:
    return " ".join(str(letter) for letter in word)


def free_reduce(word: BraidWord) -> BraidWord:
    """Cancel adjacent ``s_i s_i^-1`` / ``s_i^-1 s_i`` pairs until none remain."""
    stack: list[Letter] = []
    for letter in word:
        if stack and stack[-1].site == letter.site and stack[-1].inverse != letter.inverse:
            stack.pop()
        else:
            stack.append(letter)
    return BraidWord(tuple(stack))


def parse_braid_script(text: str) -> BraidWord:
    """Parse a multi-line script; errors carry a 1-based line and 0-based column offset."""
    word = IDENTITY
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        try:
            word = word + parse_braid_word(body)
        except BraidSyntaxError as exc:
            raise BraidSyntaxError(exc.message, exc.offset, lineno) from None
    return word
