"""Straight-line flow on a torus with one transversal slit.

Conventions (pinned by the tracing oracle in :mod:`foliations.oracle`):

* the transversal measures of the basic cycles are ``|a| > 0`` and ``|b| > 0``,
  with ``a`` and ``b^-1`` positive;
* the slit ``s`` has measure ``m`` with ``0 < m < |a| + |b|`` and is
  parametrised by ``[0, m]`` from its left end to its right end (observer
  looking along the flow);
* ``h1 = u[a] + v[b]`` and ``h2 = w[a] + y[b]`` are the lattice translates of the
  copies of ``s`` first hit from the left street (1) and the right street (2);
  the long middle street (0) hits ``s + h1 + h2``.
"""

from dataclasses import dataclass

from .errors import Degenerate, InvalidInstance, InvariantViolation, NonTerminating
from .exact_field import Scalar, lift

__all__ = [
    "FlowTorus",
    "StreetSet",
    "minimal_pairs",
    "street_set",
    "m_cut_euclid",
    "continued_fraction",
    "reconstruct_from_euclid",
    "T1",
    "T2",
]

_MAX_STEPS = 100_000

T1 = ((1, 1), (0, 1))
T2 = ((1, 0), (1, 1))


@dataclass(frozen=True)
class FlowTorus:
    a: Scalar
    b: Scalar
    m: Scalar
    d: int = 0

    def __post_init__(self):
        d = self.d
        for name in ("a", "b", "m"):
            value = getattr(self, name)
            if isinstance(value, Scalar) and not value.is_rational():
                if d == 0:
                    d = value.d
                elif value.d != d:
                    raise InvalidInstance(f"{name} lives in Q(sqrt({value.d})), torus uses {d}")
        object.__setattr__(self, "d", d)
        for name in ("a", "b", "m"):
            object.__setattr__(self, name, lift(getattr(self, name), d))
        if self.a.sign() <= 0 or self.b.sign() <= 0:
            raise InvalidInstance("cycle measures |a|, |b| must be positive")
        if self.m.sign() <= 0:
            raise InvalidInstance("obstacle measure m must be positive", invariant="m>0")
        if self.m >= self.a + self.b:
            raise InvalidInstance("obstacle measure must satisfy m < |a| + |b|", invariant="m<|a|+|b|")

    @classmethod
    def from_json(cls, obj, d=None):
        d = obj.get("d", d) or 0
        return cls(Scalar.parse(obj["a"], d), Scalar.parse(obj["b"], d), Scalar.parse(obj["m"], d), d)

    def to_json(self):
        return {"d": self.d, "a": str(self.a), "b": str(self.b), "m": str(self.m)}

    def is_generic_ratio(self):
        return not (self.a / self.b).is_rational()


@dataclass(frozen=True)
class StreetSet:
    """The three streets of a slit torus.

    ``widths[tau]`` is ``|p^tau|`` and ``classes[tau]`` the lattice translate
    ``(i, j)`` meaning ``i[a] + j[b]``; index 0 is the long street, 1 the left
    one and 2 the right one.
    """

    widths: tuple
    pairs: tuple
    a_star: Scalar
    b_star: Scalar
    classes: tuple

    @property
    def p0(self):
        return self.widths[0]

    @property
    def p1(self):
        return self.widths[1]

    @property
    def p2(self):
        return self.widths[2]

    def to_json(self):
        from .jsonio import scalar_json

        (u, v), (w, y) = self.pairs
        return {
            "widths": [scalar_json(p) for p in self.widths],
            "pairs": [[u, v], [w, y]],
            "a_star": scalar_json(self.a_star),
            "b_star": scalar_json(self.b_star),
            "classes": [list(h) for h in self.classes],
        }


def _first_visible(first, second, m):
    """Smallest ``i > 0`` (then smallest ``j >= 0``) with ``0 < i*first - j*second < m``.

    Walks the Stern-Brocot tree towards ``first/second``: the successive
    lower bounds are exactly the one-sided best approximations, and the first
    ``i`` whose fractional error drops below ``m`` is one of them.  Runs of
    identical moves are batched, so the cost is linear in the number of
    partial quotients rather than in their sum.
    """
    # lower bound L = (i, j) with err(L) > 0, upper bound R with err(R) < 0
    li, lj, le = 1, 0, first
    ri, rj, re_ = 0, 1, -second
    for _ in range(_MAX_STEPS):
        s = (le - m).sign()
        if s < 0:
            break
        if s == 0:
            raise Degenerate("translate lands exactly on the slit end", pair=(li, lj))
        # L-phase: L + kR stays a lower bound for k <= kmax
        q = le / (-re_)
        kmax = q.ceil() - 1
        if q.is_rational() and q.floor() == q.ceil():
            raise Degenerate("ratio |a|/|b| is rational", pair=(li + q.floor() * ri, lj + q.floor() * rj))
        t = (le - m) / (-re_)
        kneed = t.floor() + 1
        if t.floor() == t.ceil() and 1 <= t.floor() <= kmax:
            raise Degenerate("translate lands exactly on the slit end")
        if kneed <= kmax:
            li, lj, le = li + kneed * ri, lj + kneed * rj, le + kneed * re_
            break
        li, lj, le = li + kmax * ri, lj + kmax * rj, le + kmax * re_
        # R-phase: R + kL stays an upper bound for k <= jmax
        q = (-re_) / le
        if q.floor() == q.ceil():
            raise Degenerate("ratio |a|/|b| is rational")
        jmax = q.ceil() - 1
        ri, rj, re_ = ri + jmax * li, rj + jmax * lj, re_ + jmax * le
    else:
        raise NonTerminating("Stern-Brocot walk did not terminate")
    i = li
    # smallest j with i*first - j*second < m
    t = (i * first - m) / second
    j = max(0, t.floor() + 1)
    if t.floor() == t.ceil() and t.floor() + 1 == j and t.floor() >= 0:
        raise Degenerate("translate lands exactly on the slit end", pair=(i, j - 1))
    err = i * first - j * second
    if not (err.sign() > 0 and err < m):
        raise InvariantViolation("Stern-Brocot walk returned an invalid pair", pair=(i, j))
    return i, j


def minimal_pairs(t):
    """Return ``((u, v), (w, y))``: the minimal visible translates of the slit."""
    u, v = _first_visible(t.a, t.b, t.m)
    y, w = _first_visible(t.b, t.a, t.m)
    return (u, v), (w, y)


def street_set(t):
    (u, v), (w, y) = minimal_pairs(t)
    a_star = u * t.a - v * t.b
    b_star = y * t.b - w * t.a
    p0 = a_star + b_star - t.m
    p1 = t.m - a_star
    p2 = t.m - b_star
    for name, p in (("p0", p0), ("p1", p1), ("p2", p2)):
        if p.sign() <= 0:
            raise InvariantViolation(f"street width {name} is not positive", width=str(p))
    h1 = (u, v)
    h2 = (w, y)
    h0 = (u + w, v + y)
    return StreetSet((p0, p1, p2), ((u, v), (w, y)), a_star, b_star, (h0, h1, h2))


def continued_fraction(x, y, depth, generic=False):
    """First ``depth`` partial quotients of ``x / y`` (fewer if it terminates)."""
    if x.sign() <= 0 or y.sign() <= 0:
        raise ValueError("continued_fraction needs positive arguments")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    r = x / y
    out = []
    while len(out) < depth:
        q = r.floor()
        out.append(q)
        frac = r - q
        if not frac:
            if generic and len(out) < depth:
                raise Degenerate("continued fraction terminates: ratio is rational", quotients=out)
            break
        r = 1 / frac
    return out


def m_cut_euclid(A, B, m):
    """Truncated Euclidean descent from the measures of any basis to ``(|a'|, |b'|)``.

    Returns ``(ls, (a_prime, b_prime), swapped)``.  ``swapped`` is true when the
    input had ``A < B`` and the roles were exchanged before the descent.  The
    matrix ``T1^l1 T2^l2 T1^l3 ...`` applied to the column ``(a', b')`` gives
    back ``(A, B)`` (or ``(B, A)`` when swapped).
    """
    if A.sign() <= 0 or B.sign() <= 0 or m.sign() <= 0:
        raise ValueError("m_cut_euclid needs positive A, B, m")
    if A + B <= m:
        raise ValueError("m_cut_euclid needs A + B > m")
    if A == B:
        raise Degenerate("A == B")
    swapped = A < B
    if swapped:
        A, B = B, A
    x, y = A, B
    ls = []
    reduce_first = True
    for _ in range(_MAX_STEPS):
        total = x + y
        biggest = x if x > y else y
        if total == m or biggest == m:
            raise Degenerate("m-cut descent hits the obstacle measure exactly", l=ls)
        if total > m and biggest < m:
            return ls, (x, y), swapped
        if total < m:
            raise Degenerate("m-cut descent overshot below the obstacle measure", l=ls)
        if reduce_first:
            bound = m if m > y else y
            t = (x - bound) / y
            l = max(0, t.floor() + 1)
            x = x - l * y
        else:
            bound = m if m > x else x
            t = (y - bound) / x
            l = max(0, t.floor() + 1)
            y = y - l * x
        ls.append(l)
        if not x or not y:
            raise Degenerate("m-cut descent reached zero (rational ratio)", l=ls)
        reduce_first = not reduce_first
    raise NonTerminating("m-cut Euclidean algorithm did not stop (rational ratio?)", l=ls[:20])


def matmul(p, q):
    return (
        (p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]),
        (p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]),
    )


def matpow(p, n):
    out = ((1, 0), (0, 1))
    for _ in range(n):
        out = matmul(out, p)
    return out


def euclid_matrix(ls):
    """``T1^l1 T2^l2 T1^l3 ...`` as a 2x2 integer matrix."""
    out = ((1, 0), (0, 1))
    for k, l in enumerate(ls):
        out = matmul(out, matpow(T1 if k % 2 == 0 else T2, l))
    return out


def reconstruct_from_euclid(ls, base):
    M = euclid_matrix(ls)
    x, y = base
    return (M[0][0] * x + M[0][1] * y, M[1][0] * x + M[1][1] * y)
