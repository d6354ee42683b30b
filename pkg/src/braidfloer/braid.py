"""Braid words: parsing and the classical data of the closure."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class BraidError(ValueError):
    """Raised for malformed or out-of-range braid input."""


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the braid group on ``strands`` strands.

    Letter ``k`` stands for ``sigma_|k|`` with exponent ``sign(k)``.
    """

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError(f"strand count must be positive, got {self.strands}")
        letters = tuple(int(k) for k in self.letters)
        for k in letters:
            if k == 0 or abs(k) > self.strands - 1:
                raise BraidError(f"letter {k} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-k for k in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise BraidError("cannot multiply braids on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def conjugate(self, k: int) -> "BraidWord":
        """Return ``sigma_k^(+-1) * w * sigma_k^(-+1)``."""
        return BraidWord(self.strands, (k,) + self.letters + (-k,))

    def stabilize(self, sign: int = 1) -> "BraidWord":
        """Markov stabilization into one more strand."""
        n = self.strands
        return BraidWord(n + 1, self.letters + (sign * n,))

    def __str__(self):
        return ",".join(str(k) for k in self.letters)


_TOKEN = re.compile(r"[,\s]+")


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse a comma/whitespace separated list of nonzero integers."""
    letters = []
    for tok in _TOKEN.split(text.strip()):
        if not tok:
            continue
        try:
            k = int(tok)
        except ValueError:
            raise BraidError(f"malformed braid letter {tok!r}") from None
        if k == 0:
            raise BraidError("braid letters must be nonzero")
        letters.append(k)
    return BraidWord(strands, tuple(letters))


def writhe(w: BraidWord) -> int:
    return sum(1 if k > 0 else -1 for k in w.letters)


def permutation(w: BraidWord) -> list[int]:
    """Image of each strand position (0-based) after reading the word left to right."""
    perm = list(range(w.strands))
    for k in w.letters:
        i = abs(k) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return perm


def closure_components(w: BraidWord) -> int:
    perm = permutation(w)
    seen = [False] * w.strands
    cycles = 0
    for start in range(w.strands):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return cycles


def self_linking(w: BraidWord) -> int:
    return writhe(w) - w.strands


def expected_invariant_gradings(w: BraidWord) -> tuple[int, Fraction]:
    """(Maslov, Alexander) bigrading carried by the transverse invariant."""
    sl = self_linking(w)
    return sl + 1, Fraction(sl + 1, 2)
