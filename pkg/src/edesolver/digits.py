"""Base-p digit words encoding tuples of naturals.

A letter is a width-w tuple of digits in [0, p); a word is a sequence of
letters stored least-significant first, so letter j carries the p^j digit
of every component.  The empty word decodes to the zero tuple, and
appending zero letters at the tail never changes the decoded value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapacityError, StructureError

MAX_LETTERS = 4096


def alphabet(p: int, width: int, max_letters: int = MAX_LETTERS) -> tuple:
    """All p^width letters in ascending lexicographic order."""
    if p < 2 or width < 1:
        raise StructureError("need p >= 2 and width >= 1")
    if p**width > max_letters:
        raise CapacityError(
            f"alphabet of size {p**width} exceeds cap {max_letters}",
            discovered=p**width,
        )
    return tuple(itertools.product(range(p), repeat=width))


def check_letter(letter, p: int, width: int) -> tuple:
    letter = tuple(letter)
    if len(letter) != width:
        raise StructureError(f"letter {letter} has width {len(letter)}, expected {width}")
    if any(d < 0 or d >= p for d in letter):
        raise StructureError(f"letter {letter} has digits outside [0, {p})")
    return letter


def letter_exponents(letter, p: int) -> tuple:
    """The exponent vector a single letter contributes, digit for digit."""
    letter = tuple(letter)
    if any(d < 0 or d >= p for d in letter):
        raise StructureError(f"letter {letter} has digits outside [0, {p})")
    return letter


def digit_length(value: int, p: int) -> int:
    """Number of base-p digits of a natural (0 needs none)."""
    if value < 0:
        raise StructureError("negative value")
    n = 0
    while value:
        value //= p
        n += 1
    return n


@dataclass(frozen=True)
class DigitWord:
    """A word over the width-w digit alphabet, least significant letter first."""

    p: int
    width: int
    letters: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "letters",
            tuple(check_letter(l, self.p, self.width) for l in self.letters),
        )

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def decode(self) -> tuple:
        """The tuple of naturals this word spells."""
        values = [0] * self.width
        weight = 1
        for letter in self.letters:
            for i, d in enumerate(letter):
                values[i] += d * weight
            weight *= self.p
        return tuple(values)

    @classmethod
    def encode(cls, values, p: int, width: int, length: int | None = None) -> "DigitWord":
        """Word spelling ``values``; ``length`` pads with zero letters.

        With ``length=None`` the minimal length is used.  An explicit
        ``length`` below the minimal one raises.
        """
        values = tuple(values)
        if len(values) != width:
            raise StructureError(f"expected {width} components, got {len(values)}")
        if any(v < 0 for v in values):
            raise StructureError("components must be naturals")
        need = max((digit_length(v, p) for v in values), default=0)
        if length is None:
            length = need
        elif length < need:
            raise StructureError(f"length {length} cannot hold {values} in base {p}")
        letters = []
        rest = list(values)
        for _ in range(length):
            letters.append(tuple(v % p for v in rest))
            rest = [v // p for v in rest]
        return cls(p, width, tuple(letters))

    def with_tail_letter(self, letter) -> "DigitWord":
        """Append one letter at the most significant end."""
        return DigitWord(self.p, self.width, self.letters + (tuple(letter),))

    def __str__(self):
        return format_word(self)


def decode(word: DigitWord) -> tuple:
    return word.decode()


def encode(values, p: int, width: int, length: int | None = None) -> DigitWord:
    return DigitWord.encode(values, p, width, length)


def format_word(word: DigitWord) -> str:
    """Text form "d,d;d,d" with ';' between letters; the empty word is ""."""
    return ";".join(",".join(str(d) for d in letter) for letter in word.letters)


def parse_word(text: str, p: int, width: int) -> DigitWord:
    text = text.strip()
    if not text:
        return DigitWord(p, width, ())
    letters = []
    for part in text.split(";"):
        try:
            letters.append(tuple(int(d) for d in part.strip().split(",")))
        except ValueError as exc:
            raise StructureError(f"cannot parse letter {part!r}") from exc
    return DigitWord(p, width, tuple(letters))
