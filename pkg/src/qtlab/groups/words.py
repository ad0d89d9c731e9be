"""Reduced words in free groups.

A word is a tuple of nonzero ints: generator ``k`` (1-based) is ``k`` and its
inverse is ``-k``.  The text form uses ``a, b, c, ...`` for generators and
upper case for inverses, so ``"abAB"`` is the commutator ``[a, b]``.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence

Word = tuple[int, ...]

ALPHABET = "abcdefghij"


class EmptyWord(ValueError):
    pass


def reduce(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def mul(*words: Sequence[int]) -> Word:
    return reduce(itertools.chain.from_iterable(words))


def inv(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def power(w: Sequence[int], n: int) -> Word:
    if n < 0:
        w, n = inv(w), -n
    return reduce(tuple(w) * n)


def parse(text: str) -> Word:
    text = text.replace(" ", "")
    if text == "1":
        return ()
    letters = []
    for ch in text:
        k = ALPHABET.find(ch.lower())
        if k < 0:
            raise ValueError(f"unknown letter {ch!r}")
        letters.append(k + 1 if ch.islower() else -(k + 1))
    return reduce(letters)


def fmt(w: Sequence[int]) -> str:
    if not w:
        return "1"
    return "".join(ALPHABET[abs(x) - 1] if x > 0 else ALPHABET[abs(x) - 1].upper() for x in w)


def letter_key(x: int) -> tuple[int, int]:
    # a < A < b < B < ...
    return (abs(x), 0 if x > 0 else 1)


def word_key(w: Sequence[int]) -> tuple:
    return (len(w), tuple(letter_key(x) for x in w))


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    return mul(u, v, inv(u), inv(v))


def letters(rank: int) -> list[int]:
    return [s * k for k in range(1, rank + 1) for s in (1, -1)]


def ball(rank: int, radius: int) -> list[Word]:
    """All reduced words of length <= radius, shortlex ordered."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    gens = sorted(letters(rank), key=letter_key)
    layer: list[Word] = [()]
    out: list[Word] = [()]
    for _ in range(radius):
        nxt = [w + (x,) for w in layer for x in gens if not (w and w[-1] == -x)]
        out.extend(nxt)
        layer = nxt
    return out


def ball_size(rank: int, radius: int) -> int:
    return 1 + sum(2 * rank * (2 * rank - 1) ** (j - 1) for j in range(1, radius + 1))


def random_word(rank: int, length: int, rng: random.Random) -> Word:
    gens = letters(rank)
    w: list[int] = []
    while len(w) < length:
        x = rng.choice(gens)
        if w and w[-1] == -x:
            continue
        w.append(x)
    return tuple(w)


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    return len(w) < 2 or w[0] != -w[-1]


def cyclic_reduction(w: Sequence[int]) -> tuple[Word, Word]:
    """Split ``w = s * core * s^-1`` with ``core`` cyclically reduced."""
    w = reduce(w)
    i = 0
    while len(w) - 2 * i >= 2 and w[i] == -w[len(w) - 1 - i]:
        i += 1
    return tuple(w[:i]), tuple(w[i : len(w) - i])


def root_power(w: Sequence[int], c: Sequence[int]) -> int | None:
    """Return ``p`` with ``w == c^p`` for cyclically reduced ``c``, else None."""
    w = tuple(w)
    if not w:
        return 0
    n, r = divmod(len(w), len(c))
    if r or n == 0:
        return None
    if w == tuple(c) * n:
        return n
    if w == inv(c) * n:
        return -n
    return None


def coset_canonical(w: Sequence[int], c: Sequence[int]) -> tuple[Word, int]:
    """Canonical representative of the coset ``w <c>`` and the exponent used.

    The representative is shortlex-minimal among ``w c^m``.  Lengths grow
    like ``|m||c| - |w|``, so ``|m| <= 2|w|/|c| + 1`` covers every candidate.
    """
    w = reduce(w)
    bound = 2 * len(w) // len(c) + 1
    best, best_m = w, 0
    for m in range(-bound, bound + 1):
        cand = mul(w, power(c, m))
        if word_key(cand) < word_key(best):
            best, best_m = cand, m
    return best, best_m


def conjugator_into_cyclic(w: Sequence[int], c: Sequence[int]) -> Word | None:
    """Find ``t`` with ``t^-1 w t`` a nonzero power of ``c``, or None.

    ``c`` must be cyclically reduced and ``w`` nontrivial.
    """
    s, core = cyclic_reduction(w)
    if not core:
        return None
    n = len(core)
    for k in range(n):
        # core = r * rot * r^-1 where rot is the rotation by k
        rot = core[k:] + core[:k]
        if root_power(rot, c) is not None:
            return mul(s, core[:k])
    return None


def count_occurrences(w: Sequence[int], pattern: Sequence[int]) -> int:
    """Number of (possibly overlapping) occurrences of ``pattern`` in ``w``."""
    w, pattern = tuple(w), tuple(pattern)
    m = len(pattern)
    return sum(1 for i in range(len(w) - m + 1) if w[i : i + m] == pattern)
