"""Brute-force tracer on the universal cover, used as ground truth.

The flow is vertical and upward.  A torus ``(|a|, |b|, m)`` is realised as
the lattice spanned by ``e_a = (-|a|, h_a)`` and ``e_b = (|b|, h_b)`` with
arbitrary positive heights, so the transversal measure is ``-dx`` and the
cycle measures are ``|a|`` and ``-|b|``.  The obstacle is the horizontal
segment ``[O_x, O_x + m] x {O_y}``; a point of it is named by its offset
``x`` from the left end.  Nothing here calls into the street or gluing
modules: every answer comes from enumerating lattice translates.
"""

from dataclasses import dataclass
import random as _random

from .errors import Degenerate, InvariantViolation, UnexpectedStreetCount, WindowExhausted
from .exact_field import Scalar, lift
from .intervals import PiecewiseTranslation
from .genus2_glue import BrokenIsometry
from .torus_flow import StreetSet

__all__ = [
    "PlanarScene",
    "scene_for",
    "random_scene",
    "first_hit",
    "streets_by_tracing",
    "first_hit_map",
    "induced_map_by_tracing",
    "trace_trajectory",
    "Trajectory",
    "street_coordinates",
    "traced_homology",
]

WINDOW_START = 8
WINDOW_CAP = 2 ** 16


@dataclass(frozen=True)
class PlanarScene:
    """Lattice, obstacle and placement on the plane.

    ``basis`` holds the two lattice vectors used for enumeration; ``to_ab``
    is the integer matrix turning enumeration coefficients ``(p, q)`` into
    coefficients over ``(e_a, e_b)``.
    """

    basis: tuple
    to_ab: tuple
    m: Scalar
    offset: tuple

    def __post_init__(self):
        (f1x, f1y), (f2x, f2y) = self.basis
        det = f1x * f2y - f2x * f1y
        if not det:
            raise InvariantViolation("lattice basis is degenerate")
        # inverse of the column matrix [f1 f2]
        object.__setattr__(self, "_inv", ((f2y / det, -f2x / det), (-f1y / det, f1x / det)))

    def vector(self, p, q):
        (f1x, f1y), (f2x, f2y) = self.basis
        return (p * f1x + q * f2x, p * f1y + q * f2y)

    def ab(self, p, q):
        (r00, r01), (r10, r11) = self.to_ab
        return (r00 * p + r01 * q, r10 * p + r11 * q)

    def coefficient_bounds(self, T):
        """Integers bounding ``|p|, |q|`` for lattice vectors with ``|V_x| <= m`` and ``|V_y| <= T``."""
        (i00, i01), (i10, i11) = self._inv
        bp = abs(i00) * self.m + abs(i01) * T
        bq = abs(i10) * self.m + abs(i11) * T
        return bp.floor() + 1, bq.floor() + 1

    def point(self, x):
        return (self.offset[0] + x, self.offset[1])


def scene_for(torus, heights=(1, 1), offset=(0, 0), change=((1, 0), (0, 1))):
    """Scene of a torus; ``change`` is a unimodular matrix whose rows give the enumeration basis over ``(e_a, e_b)``."""
    d = torus.d
    ha, hb = (lift(h, d) for h in heights)
    if ha.sign() <= 0 or hb.sign() <= 0:
        raise ValueError("heights must be positive")
    ea = (-torus.a, ha)
    eb = (torus.b, hb)
    (c00, c01), (c10, c11) = change
    if c00 * c11 - c01 * c10 not in (1, -1):
        raise ValueError("basis change must be unimodular")
    f1 = (c00 * ea[0] + c01 * eb[0], c00 * ea[1] + c01 * eb[1])
    f2 = (c10 * ea[0] + c11 * eb[0], c10 * ea[1] + c11 * eb[1])
    # coefficients over (f1, f2) -> over (e_a, e_b): transpose of change
    to_ab = ((c00, c10), (c01, c11))
    return PlanarScene((f1, f2), to_ab, torus.m, (lift(offset[0], d), lift(offset[1], d)))


def _random_unimodular(rng, steps):
    mat = ((1, 0), (0, 1))
    for _ in range(steps):
        k = rng.choice((-1, 1))
        if rng.random() < 0.5:
            mat = ((mat[0][0] + k * mat[1][0], mat[0][1] + k * mat[1][1]), mat[1])
        else:
            mat = (mat[0], (mat[1][0] + k * mat[0][0], mat[1][1] + k * mat[0][1]))
    return mat


def random_scene(torus, rng=None):
    """Scene with random heights, obstacle position and lattice representative."""
    rng = rng or _random.Random()

    def frac(lo, hi):
        den = rng.randint(1, 12)
        return Scalar(rng.randint(lo * den, hi * den), 0, torus.d) / den

    ha = frac(1, 3)
    hb = frac(1, 3)
    offset = (frac(-5, 5), frac(-5, 5))
    return scene_for(torus, (ha, hb), offset, _random_unimodular(rng, rng.randint(0, 4)))


def _candidates(scene, x, lo_x, hi_x, W, T=None):
    """Lattice coefficients ``|p| <= W`` with ``lo_x <= V_x <= hi_x`` and ``0 < V_y`` (``<= T`` if given)."""
    (f1x, f1y), (f2x, f2y) = scene.basis
    out = []
    for p in range(-W, W + 1):
        px, py = p * f1x, p * f1y
        if f2x:
            q1 = (lo_x - px) / f2x
            q2 = (hi_x - px) / f2x
            if q1 > q2:
                q1, q2 = q2, q1
            qs = range(max(-W, q1.ceil()), min(W, q2.floor()) + 1)
        else:
            qs = range(-W, W + 1) if lo_x <= px <= hi_x else ()
        for q in qs:
            vy = py + q * f2y
            if vy.sign() > 0 and (T is None or vy <= T):
                out.append((vy, px + q * f2x, p, q))
    return out


def first_hit(scene, x):
    """First obstacle copy met by the upward ray from the obstacle point ``x``.

    Returns ``(translate, landing, time)`` where ``translate`` is over
    ``(e_a, e_b)``.  The search window doubles until the minimum is certified.
    """
    m = scene.m
    if not (x.sign() > 0 and x < m):
        raise Degenerate("start point must lie strictly inside the obstacle", x=str(x))
    px, py = scene.point(x)
    ox, oy = scene.offset
    W = WINDOW_START
    while W <= WINDOW_CAP:
        # copy O + V covers px iff O_x + V_x <= px <= O_x + V_x + m
        found = _candidates(scene, x, px - ox - m, px - ox, W)
        if found:
            found.sort(key=lambda c: (c[0]))
            best = found[0]
            T = best[0]
            bp, bq = scene.coefficient_bounds(T)
            if bp <= W and bq <= W:
                return _finish(scene, x, px, py, ox, oy, found, T)
            # the best copy so far bounds the window that certifies it
            W = max(W, min(max(bp, bq), WINDOW_CAP // 2))
        W *= 2
    raise WindowExhausted("no certified first hit inside the search window", cap=WINDOW_CAP)


def _finish(scene, x, px, py, ox, oy, found, T):
    best = found[0]
    for vy, vx, p, q in found:
        if vy > T:
            break
        left = ox + vx
        if px == left or px == left + scene.m:
            raise Degenerate("trajectory runs into an obstacle end (separatrix)", x=str(x))
        if (p, q) != (best[2], best[3]) and vy == T:
            raise Degenerate("two obstacle copies at the same height", x=str(x))
    vy, vx, p, q = best
    landing = px - (ox + vx)
    time = (oy + vy) - py
    return scene.ab(p, q), landing, time


def _street_breaks(scene, T):
    """Endpoints inside ``(0, m)`` of all copies reachable within time ``T``."""
    m = scene.m
    zero = m - m
    W = max(scene.coefficient_bounds(T))
    pts = set()
    for vy, vx, p, q in _candidates(scene, zero, -m, m, W, T):
        if not vx:
            raise Degenerate("lattice has a vertical vector: closed leaves (rational torus)")
        for e in (vx, vx + m):
            if zero < e < m:
                pts.add(e)
    return sorted(pts)


def first_hit_map(scene):
    """First-hit data on maximal intervals of constancy: ``[(lo, hi, translate, time, shift)]``."""
    m = scene.m
    zero = m - m
    T = None
    for k in (2, 3, 5, 7, 11, 13):
        # the probe only seeds the time bound; any non-separatrix point will do
        try:
            _, _, T = first_hit(scene, m / k)
            break
        except Degenerate:
            continue
    if T is None:
        raise Degenerate("no regular probe point found on the obstacle")
    for _ in range(64):
        edges = [zero] + _street_breaks(scene, T) + [m]
        hits = []
        for lo, hi in zip(edges, edges[1:]):
            mid = (lo + hi) / 2
            tr, landing, time = first_hit(scene, mid)
            hits.append((lo, hi, tr, time, landing - mid))
        tmax = max(h[3] for h in hits)
        if tmax <= T:
            break
        T = tmax * 2
    else:
        raise InvariantViolation("break-point search did not stabilise")
    merged = [list(hits[0])]
    for lo, hi, tr, time, shift in hits[1:]:
        if tr == merged[-1][2]:
            if shift != merged[-1][4]:
                raise InvariantViolation("same translate with different shift")
            merged[-1][1] = hi
        else:
            merged.append([lo, hi, tr, time, shift])
    return [tuple(h) for h in merged]


def streets_by_tracing(scene):
    pieces = first_hit_map(scene)
    if len(pieces) != 3:
        raise UnexpectedStreetCount(f"found {len(pieces)} streets", count=len(pieces))
    longest = max(range(3), key=lambda k: pieces[k][3])
    others = [k for k in range(3) if k != longest]
    left, right = others
    widths = tuple(pieces[k][1] - pieces[k][0] for k in (longest, left, right))
    h0, h1, h2 = (pieces[k][2] for k in (longest, left, right))
    m = scene.m
    a_star = m - widths[1]
    b_star = m - widths[2]
    return StreetSet(widths, (h1, h2), a_star, b_star, (h0, h1, h2))


def _as_translation(pieces):
    return PiecewiseTranslation(tuple((lo, hi, shift) for lo, hi, _, _, shift in pieces))


def induced_map_by_tracing(scene1, scene2):
    """Return map of the glued surface: cross torus 1, then torus 2, by tracing only."""
    if scene1.m != scene2.m:
        raise Degenerate("scenes have different obstacle measures")
    map1 = _as_translation(first_hit_map(scene1))
    map2 = _as_translation(first_hit_map(scene2))
    m = scene1.m
    zero = m - m
    cuts = set(map1.breaks())
    for b in map2.breaks():
        for lo, hi, s in map1.pieces:
            if lo + s < b < hi + s:
                cuts.add(b - s)
            elif b == lo + s or b == hi + s:
                raise Degenerate("break points of the two tori collide")
    edges = [zero] + sorted(cuts) + [m]
    out = []
    for lo, hi in zip(edges, edges[1:]):
        mid = (lo + hi) / 2
        _, y, _ = first_hit(scene1, mid)
        _, z, _ = first_hit(scene2, y)
        out.append((lo, hi, z - mid))
    return BrokenIsometry(PiecewiseTranslation(tuple(out)).merged())


@dataclass(frozen=True)
class Trajectory:
    points: tuple
    symbols: tuple
    translates: tuple

    @property
    def word(self):
        """Symbols in word order: the last symbol is the first piece visited."""
        return tuple(reversed(self.symbols))


def trace_trajectory(scene1, scene2, x, N, pieces=None):
    """Follow ``N`` returns to the slit starting at ``x``.

    ``symbols[k]`` is the (1-based) piece of the traced return map holding
    the ``k``-th point; ``translates[k]`` is the 4-vector of lattice
    coefficients over ``(a1, b1, a2, b2)`` picked up during that return.
    """
    if pieces is None:
        pieces = induced_map_by_tracing(scene1, scene2).domains
    pts, syms, trs = [x], [], []
    for _ in range(N):
        sym = None
        for k, (lo, hi) in enumerate(pieces):
            if lo < x < hi:
                sym = k + 1
                break
        if sym is None:
            raise Degenerate("trajectory reaches a break point", x=str(x))
        t1, y, _ = first_hit(scene1, x)
        t2, z, _ = first_hit(scene2, y)
        syms.append(sym)
        trs.append((t1[0], t1[1], t2[0], t2[1]))
        x = z
        pts.append(x)
    return Trajectory(tuple(pts), tuple(syms), tuple(trs))


def street_coordinates(streets, t):
    """Coordinates of the translate ``t`` over the left and right street classes."""
    (u, v), (w, y) = streets.classes[1], streets.classes[2]
    det = u * y - v * w
    if det not in (1, -1):
        raise InvariantViolation("street classes are not a lattice basis", det=det)
    return ((y * t[0] - w * t[1]) * det, (u * t[1] - v * t[0]) * det)


def traced_homology(scene1, scene2, translates):
    """Sum of the per-return translates of a trace, as a vector over ``(a1, b1, a2, b2)``.

    Each torus translate is written over that torus' traced street basis.
    A pass contributes its torus-2 coordinates to the ``a1, b1`` slots and
    minus its torus-1 coordinates to the ``a2, b2`` slots; this dictionary
    was fixed by matching traced trajectories against the pass table.
    """
    s1, s2 = streets_by_tracing(scene1), streets_by_tracing(scene2)
    total = [0, 0, 0, 0]
    for t in translates:
        c1 = street_coordinates(s1, t[:2])
        c2 = street_coordinates(s2, t[2:])
        for k, val in enumerate((c2[0], c2[1], -c1[0], -c1[1])):
            total[k] += val
    return tuple(total)
