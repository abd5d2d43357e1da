"""Free-group words, the positive matrix semigroup generated by T1, T2 and its lifts.

Generators are named by short ids: ``ap``/``bp`` for the rank-2 basis
``a', b'`` and ``a1 b1 a2 b2`` for the rank-4 basis ``a*_1, b*_1, a*_2, b*_2``.
A word is a tuple of ``(generator, exponent)`` with exponent +1 or -1.
"""

from dataclasses import dataclass, field
from math import gcd

from .errors import CommonPower, NonPositive, NotCoprime, UnknownGenerator
from .torus_flow import T1, T2, matmul

__all__ = [
    "RANK2",
    "RANK4",
    "FreeWord",
    "MatrixWord",
    "TcbPair",
    "reduce",
    "abelianize",
    "lift_T",
    "reduce_pair",
    "conjugate_orbit",
    "simple_curve_word",
    "simple_curve_segments",
    "commutator",
]

RANK2 = ("ap", "bp")
RANK4 = ("a1", "b1", "a2", "b2")

_PRETTY = {"ap": "a'", "bp": "b'", "a1": "a*1", "b1": "b*1", "a2": "a*2", "b2": "b*2"}


def _alphabet_for(gens):
    if all(g in RANK2 for g in gens):
        return RANK2
    if all(g in RANK4 for g in gens):
        return RANK4
    bad = sorted(g for g in gens if g not in RANK2 + RANK4)
    if bad:
        raise UnknownGenerator(f"unknown generator {bad[0]!r}")
    raise UnknownGenerator("word mixes the rank-2 and rank-4 alphabets")


def _free_reduce(letters):
    out = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word; construct through :func:`reduce` or :meth:`parse`."""

    letters: tuple = ()
    alphabet: tuple = field(default=RANK2, compare=False)

    def __post_init__(self):
        for g, e in self.letters:
            if g not in self.alphabet:
                raise UnknownGenerator(f"generator {g!r} not in alphabet {self.alphabet}")
            if e not in (1, -1):
                raise ValueError("exponents must be +1 or -1")
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def parse(cls, text, alphabet=None):
        letters = []
        for tok in text.replace(",", " ").split():
            gen, _, exp = tok.partition("^")
            if exp not in ("", "1", "+1", "-1"):
                raise UnknownGenerator(f"bad exponent in {tok!r}")
            letters.append((gen, -1 if exp == "-1" else 1))
        if alphabet is None:
            alphabet = _alphabet_for([g for g, _ in letters]) if letters else RANK2
        return cls(tuple(letters), alphabet)

    @classmethod
    def gen(cls, name, alphabet=None):
        return cls.parse(name, alphabet)

    def __mul__(self, other):
        return FreeWord(self.letters + other.letters, self.alphabet)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return FreeWord(self.letters * n, self.alphabet)

    def inverse(self):
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)), self.alphabet)

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def is_positive(self):
        return all(e == 1 for _, e in self.letters)

    def rotate(self, k):
        k %= max(1, len(self.letters))
        return FreeWord(self.letters[k:] + self.letters[:k], self.alphabet)

    def rotations(self):
        return [self.rotate(k) for k in range(len(self.letters))]

    def __str__(self):
        return " ".join(g if e == 1 else f"{g}^-1" for g, e in self.letters)

    def pretty(self):
        return " ".join(_PRETTY[g] + ("" if e == 1 else "^-1") for g, e in self.letters)

    def plain(self):
        """Letters without primes or indices, e.g. ``"b a a"``."""
        return " ".join(g[0] + ("" if e == 1 else "^-1") for g, e in self.letters)


def reduce(letters, alphabet=None):
    if isinstance(letters, FreeWord):
        return letters
    letters = tuple(letters)
    if alphabet is None:
        alphabet = _alphabet_for([g for g, _ in letters]) if letters else RANK2
    return FreeWord(letters, alphabet)


def abelianize(w):
    counts = dict.fromkeys(w.alphabet, 0)
    for g, e in w.letters:
        counts[g] += e
    return tuple(counts[g] for g in w.alphabet)


def commutator(x, y):
    return x * y * x.inverse() * y.inverse()


# -- the matrix semigroup ---------------------------------------------------


@dataclass(frozen=True)
class MatrixWord:
    """Product ``T_{i1}^{n1} T_{i2}^{n2} ...`` in the written order."""

    factors: tuple

    def __post_init__(self):
        norm = []
        for which, power in self.factors:
            if which not in (1, 2):
                raise ValueError("factors must be T1 or T2")
            if power < 1:
                raise ValueError("factor powers must be positive")
            if norm and norm[-1][0] == which:
                norm[-1] = (which, norm[-1][1] + power)
            else:
                norm.append((which, power))
        object.__setattr__(self, "factors", tuple(norm))

    @classmethod
    def parse(cls, text):
        factors = []
        for tok in text.replace(" ", "").split(","):
            if not tok:
                continue
            base, _, power = tok.partition("^")
            if base.upper() not in ("T1", "T2"):
                raise UnknownGenerator(f"unknown matrix generator {tok!r}")
            factors.append((int(base[1]), int(power) if power else 1))
        if not factors:
            raise ValueError("empty matrix word")
        return cls(tuple(factors))

    @property
    def matrix(self):
        out = ((1, 0), (0, 1))
        for which, power in self.factors:
            for _ in range(power):
                out = matmul(out, T1 if which == 1 else T2)
        return out

    def letters(self):
        return [which for which, power in self.factors for _ in range(power)]

    def __str__(self):
        return ",".join(f"T{w}" + (f"^{p}" if p > 1 else "") for w, p in self.factors)


@dataclass(frozen=True)
class TcbPair:
    A: FreeWord
    B: FreeWord
    crossing_index: int = 0

    def is_reduced(self):
        return not (self.A and self.B and self.A.letters[0] == self.B.letters[0])

    def matrix(self):
        return (abelianize(self.A), abelianize(self.B))

    def to_json(self):
        return {"A": str(self.A), "B": str(self.B), "crossing_index": self.crossing_index}


_A = FreeWord((("ap", 1),))
_B = FreeWord((("bp", 1),))


def _substitute(word, images):
    out = FreeWord((), RANK2)
    for g, e in word.letters:
        out = out * (images[g] if e == 1 else images[g].inverse())
    return out


def lift_T(mw):
    """Lift a matrix word to a pair of positive words.

    The factors act as substitutions in the written order: ``T1 T2`` first
    applies ``T1^`` to ``(a', b')`` and then substitutes ``T2^`` into the
    result, so the rows of the matrix product are the abelianized words.
    """
    if not mw.factors:
        raise ValueError("empty matrix word")
    A, B = _A, _B
    for which in mw.letters():
        if which == 1:
            images = {"ap": _A * _B, "bp": _B}
        else:
            images = {"ap": _A, "bp": _B * _A}
        A, B = _substitute(A, images), _substitute(B, images)
    return TcbPair(A, B, 0)


def _check_not_common_power(A, B):
    if not A or not B or A * B == B * A:
        raise CommonPower("the two words are powers of a common word")


def reduce_pair(p):
    """Strip the shared leading letter of both words until they start differently."""
    A, B = p.A, p.B
    _check_not_common_power(A, B)
    steps = 0
    while A.letters[0] == B.letters[0]:
        A, B = A.rotate(1), B.rotate(1)
        steps += 1
        if steps > len(A) + len(B):
            raise CommonPower("stripping does not terminate")
    return TcbPair(A, B, 0), steps


def conjugate_orbit(p):
    """All non-reduced simultaneous conjugates of the reduced form of ``p``.

    They are produced by running the stripping move backwards from the
    reduced pair (shared trailing letter moved to the front); the reduced
    pair itself is not part of the list (see :func:`reduce_pair`).
    """
    reduced, _ = reduce_pair(p)
    A, B = reduced.A, reduced.B
    orbit = []
    while A.letters[-1] == B.letters[-1]:
        A, B = A.rotate(-1), B.rotate(-1)
        orbit.append(TcbPair(A, B, len(orbit) + 1))
        if len(orbit) > len(A) + len(B):
            raise CommonPower("backward stripping does not terminate")
    return orbit


# -- simple transversal curves -----------------------------------------------


def _check_kl(k, l):
    if k < 0 or l < 0 or (k == 0 and l == 0):
        raise NonPositive("need k, l >= 0 and not both zero")
    if gcd(k, l) != 1:
        raise NotCoprime(f"gcd({k}, {l}) != 1")


def simple_curve_segments(k, l):
    """Order in which the k+l segments (1-based) are traversed from segment 1."""
    _check_kl(k, l)
    n = k + l
    step = max(k, l)
    return [(i * step) % n + 1 for i in range(n)]


def simple_curve_word(k, l, start=1):
    """Positive word with ``k`` letters a' and ``l`` letters b' of the simple closed curve.

    Segment ``j`` (1-based) is linked to segment ``j + max(k, l)`` modulo
    ``k + l``; for ``k >= l`` the first ``l`` segments carry ``b'`` and the
    rest ``a'``.  The case ``k < l`` is the mirror image with the letters
    exchanged.
    """
    order = simple_curve_segments(k, l)
    small = min(k, l)
    if k >= l:
        hi_letter, lo_letter = ("ap", 1), ("bp", 1)
    else:
        hi_letter, lo_letter = ("bp", 1), ("ap", 1)
    letters = tuple(lo_letter if j <= small else hi_letter for j in order)
    w = FreeWord(letters, RANK2)
    return w.rotate(order.index(start))
