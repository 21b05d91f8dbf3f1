"""Free-group word combinatorics.

A word over generators a_1..a_n is a tuple of nonzero ints: +i encodes a_i,
-i encodes a_i^{-1}.  The flattened letter code maps a_1..a_n to 1..n and
a_1^{-1}..a_n^{-1} to n+1..2n; the canonical order on words is lexicographic
on flattened codes.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import InputError, ResourceCapError

Word = tuple[int, ...]

ENUMERATION_CAP = 10**7

_TOKEN_RE = re.compile(r"([gG])(\d+)")


def flatten_letter(x: int, n: int) -> int:
    """Flattened code of a signed letter: a_i -> i, a_i^{-1} -> n+i."""
    if x == 0 or abs(x) > n:
        raise InputError(f"letter {x} outside alphabet of size {n}")
    return x if x > 0 else n - x


def unflatten_letter(code: int, n: int) -> int:
    if not 1 <= code <= 2 * n:
        raise InputError(f"flattened code {code} outside [1, {2 * n}]")
    return code if code <= n else n - code


def reduce_word(letters: Iterable[int]) -> Word:
    """Freely reduce a raw letter sequence.  Idempotent; may return ()."""
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise InputError("letter 0 is not a generator")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(w: Word) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def cyclic_reduce(w: Word) -> Word:
    """Strip matching first/last inverse pairs until none remain."""
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def is_cyclically_reduced(w: Word) -> bool:
    return len(w) >= 1 and cyclic_reduce(w) == w


def invert(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def word_count(n: int, l: int) -> int:
    """|W_l| = 2n(2n-1)^(l-1)."""
    if n < 1 or l < 1:
        raise InputError("need n >= 1 and l >= 1")
    return 2 * n * (2 * n - 1) ** (l - 1)


def iter_reduced(n: int, l: int) -> Iterator[Word]:
    """Stream all freely reduced length-l words in canonical order."""
    if n < 1 or l < 1:
        raise InputError("need n >= 1 and l >= 1")
    alphabet = [unflatten_letter(c, n) for c in range(1, 2 * n + 1)]

    def rec(prefix: list[int], remaining: int) -> Iterator[Word]:
        if remaining == 0:
            yield tuple(prefix)
            return
        for x in alphabet:
            if prefix and prefix[-1] == -x:
                continue
            prefix.append(x)
            yield from rec(prefix, remaining - 1)
            prefix.pop()

    yield from rec([], l)


def enumerate_reduced(n: int, l: int, cap: int = ENUMERATION_CAP) -> list[Word]:
    """All freely reduced words of length l, canonical order."""
    total = word_count(n, l)
    if total > cap:
        raise ResourceCapError(
            f"|W_{l}| = {total} exceeds enumeration cap {cap}; stream instead"
        )
    return list(iter_reduced(n, l))


def enumerate_cyclically_reduced(n: int, k: int, cap: int = ENUMERATION_CAP) -> list[Word]:
    """All cyclically reduced words of length k, canonical order."""
    if word_count(n, k) > cap:
        raise ResourceCapError(
            f"|W_{k}| = {word_count(n, k)} exceeds enumeration cap {cap}"
        )
    return [w for w in iter_reduced(n, k) if is_cyclically_reduced(w)]


def class_index(w: Word, n: int) -> int:
    """Flattened code of the first letter of w."""
    if not w:
        raise InputError("class_index of empty word")
    return flatten_letter(w[0], n)


def last_class_index(w: Word, n: int) -> int:
    """The i with last letter of w equal to a_i^{-1} (flattened convention)."""
    if not w:
        raise InputError("last_class_index of empty word")
    return flatten_letter(-w[-1], n)


def split_lengths(k: int) -> tuple[int, int, int]:
    """Piece lengths (|r_x|, |r_y|, |r_z|) for a length-k relator."""
    if k < 3:
        raise InputError("need k >= 3")
    r = k % 3
    if r == 0:
        return (k // 3, k // 3, k // 3)
    if r == 1:
        return ((k - 1) // 3, (k - 1) // 3, (k + 2) // 3)
    return ((k + 1) // 3, (k + 1) // 3, (k - 2) // 3)


def split_relator(r: Word, k: int) -> tuple[Word, Word, Word]:
    """Split a cyclically reduced length-k relator into its three pieces."""
    if len(r) != k:
        raise InputError(f"relator length {len(r)} != k = {k}")
    a, b, _ = split_lengths(k)
    return r[:a], r[a : a + b], r[a + b :]


def critical_density(k: int) -> Fraction:
    """d_k = (k + (-k mod 3)) / 3k, as an exact rational."""
    if k < 3:
        raise InputError("need k >= 3")
    return Fraction(k + ((-k) % 3), 3 * k)


def index_bound(n: int, l: int) -> int:
    """2n(2n-1)^(l-2), the finite-index bound for the subgroup <W_l>."""
    if n < 1 or l < 2:
        raise InputError("need n >= 1 and l >= 2")
    return 2 * n * (2 * n - 1) ** (l - 2)


def word_to_text(w: Word) -> str:
    """Whitespace-separated token form, e.g. 'g1 g2 G1'."""
    return " ".join(f"g{x}" if x > 0 else f"G{-x}" for x in w)


def word_from_text(text: str) -> Word:
    """Parse whitespace-separated tokens g<i> / G<i> into a word."""
    letters = []
    for tok in text.split():
        m = _TOKEN_RE.fullmatch(tok)
        if m is None:
            raise InputError(f"malformed word token {tok!r}")
        i = int(m.group(2))
        if i < 1:
            raise InputError(f"generator index must be >= 1, got {tok!r}")
        letters.append(i if m.group(1) == "g" else -i)
    w = tuple(letters)
    if not is_reduced(w):
        raise InputError(f"word {text!r} is not freely reduced")
    return w


def word_to_label(w: Word) -> str:
    """Space-free token form used as a graph vertex label, e.g. 'g1g2G1'."""
    return "".join(f"g{x}" if x > 0 else f"G{-x}" for x in w)


def word_from_label(label: str) -> Word:
    parts = _TOKEN_RE.findall(label)
    if "".join(s + d for s, d in parts) != label:
        raise InputError(f"malformed vertex label {label!r}")
    return tuple(int(d) if s == "g" else -int(d) for s, d in parts)
