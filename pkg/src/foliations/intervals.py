"""Exact piecewise translations of a segment ``[0, m]`` and finite unions of open intervals."""

from dataclasses import dataclass

from .errors import Degenerate, InvariantViolation

__all__ = ["IntervalUnion", "PiecewiseTranslation"]


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise disjoint, non-empty open intervals ``(lo, hi)``."""

    parts: tuple = ()

    @classmethod
    def of(cls, lo, hi):
        return cls(((lo, hi),)) if lo < hi else cls(())

    @classmethod
    def from_parts(cls, parts):
        parts = sorted((p for p in parts if p[0] < p[1]), key=lambda p: p[0])
        merged = []
        for lo, hi in parts:
            if merged and lo <= merged[-1][1]:
                if lo < merged[-1][1]:
                    raise InvariantViolation("overlapping intervals in union")
                # touching open intervals stay separate: the shared point is missing
            merged.append((lo, hi))
        return cls(tuple(merged))

    def __bool__(self):
        return bool(self.parts)

    def measure(self):
        total = 0
        for lo, hi in self.parts:
            total = hi - lo + total
        return total

    def is_interval(self):
        return len(self.parts) == 1

    def contains(self, x):
        return any(lo < x < hi for lo, hi in self.parts)

    def shift(self, r):
        return IntervalUnion(tuple((lo + r, hi + r) for lo, hi in self.parts))

    def intersect(self, other):
        out = []
        i = j = 0
        a, b = self.parts, other.parts
        while i < len(a) and j < len(b):
            lo = a[i][0] if a[i][0] > b[j][0] else b[j][0]
            hi = a[i][1] if a[i][1] < b[j][1] else b[j][1]
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalUnion(tuple(out))

    def issubset(self, other):
        return self.intersect(other).measure() == self.measure()

    def bounds(self):
        return self.parts[0][0], self.parts[-1][1]


@dataclass(frozen=True)
class PiecewiseTranslation:
    """A bijection of ``(0, m)`` (up to finitely many points) that translates each piece.

    ``pieces`` is a tuple of ``(lo, hi, shift)`` in domain order covering ``[0, m]``.
    """

    pieces: tuple

    def __post_init__(self):
        if not self.pieces:
            raise InvariantViolation("empty piecewise translation")
        for (lo, hi, _), nxt in zip(self.pieces, self.pieces[1:] + (None,)):
            if not lo < hi:
                raise InvariantViolation("piece with non-positive width")
            if nxt is not None and nxt[0] != hi:
                raise InvariantViolation("pieces are not contiguous")

    @property
    def length(self):
        return self.pieces[-1][1] - self.pieces[0][0]

    @property
    def domains(self):
        return tuple((lo, hi) for lo, hi, _ in self.pieces)

    @property
    def shifts(self):
        return tuple(s for _, _, s in self.pieces)

    @property
    def images(self):
        return tuple((lo + s, hi + s) for lo, hi, s in self.pieces)

    def breaks(self):
        return tuple(hi for _, hi, _ in self.pieces[:-1])

    def piece_index(self, x):
        for k, (lo, hi, _) in enumerate(self.pieces):
            if lo < x < hi:
                return k
        raise Degenerate("point is a break point or outside the segment", x=str(x))

    def __call__(self, x):
        return x + self.pieces[self.piece_index(x)][2]

    def inverse(self):
        return PiecewiseTranslation(
            tuple(sorted(((lo + s, hi + s, -s) for lo, hi, s in self.pieces), key=lambda p: p[0]))
        )

    def merged(self):
        """Join adjacent pieces whose shifts agree."""
        out = [list(self.pieces[0])]
        for lo, hi, s in self.pieces[1:]:
            if s == out[-1][2]:
                out[-1][1] = hi
            else:
                out.append([lo, hi, s])
        return PiecewiseTranslation(tuple(tuple(p) for p in out))

    def then(self, other):
        """The composition ``other o self`` (apply ``self`` first)."""
        cuts = set(self.breaks())
        for b in other.breaks():
            for lo, hi, s in self.pieces:
                if lo + s < b < hi + s:
                    cuts.add(b - s)
        cuts = sorted(cuts)
        start, end = self.pieces[0][0], self.pieces[-1][1]
        edges = [start] + cuts + [end]
        out = []
        for lo, hi in zip(edges, edges[1:]):
            mid = (lo + hi) / 2
            y = self(mid)
            out.append((lo, hi, other(y) - mid))
        return PiecewiseTranslation(tuple(out))

    def image_of(self, union):
        parts = []
        for lo, hi, s in self.pieces:
            parts.extend((p + s, q + s) for p, q in union.intersect(IntervalUnion.of(lo, hi)).parts)
        return IntervalUnion.from_parts(parts)

    def preimage_of(self, union):
        return self.inverse().image_of(union)

    def is_bijection(self):
        """Images tile ``(start, end)`` with no overlap and no gap."""
        imgs = sorted(self.images, key=lambda p: p[0])
        if imgs[0][0] != self.pieces[0][0] or imgs[-1][1] != self.pieces[-1][1]:
            return False
        return all(a[1] == b[0] for a, b in zip(imgs, imgs[1:]))
