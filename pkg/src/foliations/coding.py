"""The coding semigroup of the five-piece return map.

A word ``R_{q1} ... R_{qN}`` names the points ``x`` with
``i^{N-j}(x)`` in piece ``q_j``: the last symbol is the piece of ``x`` itself
and the first one the piece reached after ``N - 1`` returns.  Its support is
an open interval (possibly empty) and ``i^N`` moves the whole support by one
constant amount ``r``.
"""

from dataclasses import dataclass
import re

from .errors import CapExceeded, ClosedUp, ZeroWord
from .genus2_glue import phi_words
from .intervals import IntervalUnion
from .word_algebra import RANK4, FreeWord, abelianize

__all__ = [
    "CodeWord",
    "word_support",
    "extend",
    "product",
    "nonzero_words",
    "represent_pi1",
    "represent_homology",
    "closed_curve_of_word",
    "parse_symbols",
    "format_symbols",
    "WORD_CAP",
]

WORD_CAP = 24
COUNT_CAP = 200_000


@dataclass(frozen=True)
class CodeWord:
    symbols: tuple
    support: IntervalUnion
    shift: object

    @property
    def measure(self):
        return self.support.measure()

    def is_zero(self):
        return not self.support

    def __str__(self):
        return format_symbols(self.symbols)

    def to_json(self):
        from .jsonio import scalar_json

        out = {"word": str(self), "measure": scalar_json(self.measure) if self.support else "0"}
        if self.support:
            out["support"] = [[scalar_json(lo), scalar_json(hi)] for lo, hi in self.support.parts]
            out["shift"] = scalar_json(self.shift)
        return out


def parse_symbols(text):
    if isinstance(text, (list, tuple)):
        return tuple(int(s) for s in text)
    found = re.findall(r"R(\d+)", text)
    if not found or "".join(f"R{s}" for s in found) != text.replace(" ", ""):
        raise ValueError(f"bad code word {text!r}")
    return tuple(int(s) for s in found)


def format_symbols(symbols):
    return "".join(f"R{q}" for q in symbols)


def _piece(bi, q):
    if not 1 <= q <= len(bi.domains):
        raise ValueError(f"symbol R{q} out of range")
    lo, hi = bi.domains[q - 1]
    return IntervalUnion.of(lo, hi), bi.shifts[q - 1]


def extend(bi, p, word):
    """``R_p`` prepended to ``word``: points whose ``N``-th return lies in piece ``p``."""
    tau, s = _piece(bi, p)
    if word.is_zero():
        return CodeWord((p,) + word.symbols, IntervalUnion(), None)
    support = word.support.intersect(tau.shift(-word.shift))
    if not support:
        return CodeWord((p,) + word.symbols, support, None)
    return CodeWord((p,) + word.symbols, support, word.shift + s)


def word_support(bi, fp, symbols):
    """Support and shift of a word; ``fp`` is accepted for symmetry with the other calls."""
    symbols = parse_symbols(symbols) if isinstance(symbols, str) else tuple(symbols)
    if not symbols:
        raise ValueError("empty word")
    tau, s = _piece(bi, symbols[-1])
    word = CodeWord(symbols[-1:], tau, s)
    for p in reversed(symbols[:-1]):
        word = extend(bi, p, word)
    return word


def product(u, v):
    """Semigroup product ``u v`` computed from the two supports."""
    symbols = u.symbols + v.symbols
    if u.is_zero() or v.is_zero():
        return CodeWord(symbols, IntervalUnion(), None)
    support = v.support.intersect(u.support.shift(-v.shift))
    if not support:
        return CodeWord(symbols, support, None)
    return CodeWord(symbols, support, u.shift + v.shift)


def nonzero_words(bi, fp, N, cap=WORD_CAP):
    """All nonzero words of length ``N``, sorted by the left end of their support."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if N > cap:
        raise CapExceeded(f"word length {N} exceeds the cap {cap}", cap=cap)
    level = [word_support(bi, fp, (q,)) for q in range(1, len(bi.domains) + 1)]
    for _ in range(N - 1):
        nxt = []
        for w in level:
            for p in range(1, len(bi.domains) + 1):
                e = extend(bi, p, w)
                if not e.is_zero():
                    nxt.append(e)
        if len(nxt) > COUNT_CAP:
            raise CapExceeded("too many nonzero words", cap=COUNT_CAP)
        level = nxt
    return sorted(level, key=lambda w: w.support.parts[0][0])


def represent_pi1(word, fp, table=None):
    """Product of the two-street pass classes of the symbols, in word order."""
    if word.is_zero():
        raise ZeroWord(f"{word} has measure zero")
    table = table or phi_words()
    out = FreeWord((), RANK4)
    for q in word.symbols:
        out = out * table[fp.labels[q - 1]]
    return out


def represent_homology(word, fp, table=None):
    return abelianize(represent_pi1(word, fp, table))


def closed_curve_of_word(word, fp, table=None):
    """Closed transversal curve of a nonzero word: ``(word, measure, orientation)``."""
    if word.is_zero():
        raise ZeroWord(f"{word} has measure zero")
    r = word.shift
    s = r.sign()
    if s == 0:
        raise ClosedUp(f"{word} returns every point to itself")
    w = represent_pi1(word, fp, table)
    if s < 0:
        return w, -r, 1
    return w.inverse(), r, -1
