"""Genus-2 surface glued from two slit tori: jump maps, the five-piece partition and the two-street pass table.

Both tori share the slit ``s = [0, m]``.  ``eta12`` is the first-hit map of
torus 1 (streets 1, 0, 2 in domain order go to the image blocks
``[0*, 1*]``, ``[3*, 0*]``, ``[2*, 3*]``) and ``eta21`` the first-hit map of
torus 2.  The broken isometry is ``eta21 o eta12``.
"""

from dataclasses import dataclass

from .errors import Degenerate, InvariantViolation, MeasureMismatch
from .intervals import PiecewiseTranslation
from .torus_flow import street_set
from .word_algebra import RANK4, FreeWord

__all__ = [
    "GluedSurface",
    "FivePartition",
    "BrokenIsometry",
    "glue",
    "eta_map",
    "five_partition",
    "broken_isometry_map",
    "phi_table",
    "PUBLISHED_SIGMA",
    "PUBLISHED_LABELS",
    "TYPE_ORDERINGS",
    "STREET_ORDER",
]

# street order along the slit, left to right
STREET_ORDER = (1, 0, 2)

TYPE_ORDERINGS = {
    ("1'", "2'", "3*", "0*"): "I",
    ("1'", "3*", "2'", "0*"): "II",
    ("1'", "3*", "0*", "2'"): "III",
    ("3*", "1'", "2'", "0*"): "IV",
    ("3*", "1'", "0*", "2'"): "V",
    ("3*", "0*", "1'", "2'"): "VI",
}

# permutations and measure lists as published, kept verbatim for comparison
PUBLISHED_SIGMA = {
    "I": (3, 2, 5, 4, 1),
    "II": (2, 4, 1, 5, 3),
    "III": (4, 1, 5, 2, 3),
    "IV": (2, 5, 3, 1, 4),
    "V": (3, 1, 5, 2, 4),
    "VI": (5, 2, 1, 3, 4),
}

PUBLISHED_LABELS = {
    "I": ("12'", "02'", "21'", "20'", "22'"),
    "II": ("12'", "01'", "02'", "21'", "20'"),
    "III": ("10'", "12'", "00'", "21'", "20'"),
    "IV": ("12'", "01'", "00'", "02'", "21'"),
    "V": ("10'", "21'", "01'", "00'", "21'"),
    "VI": ("11'", "10'", "12'", "01'", "02'"),
}

_ALL_LABELS = tuple(f"{a}{b}'" for a in STREET_ORDER for b in STREET_ORDER)


def _except(*labels):
    return frozenset(x for x in _ALL_LABELS if x not in labels)


# classes of two-street passes listed as carrying positive measure, per type
PUBLISHED_NONZERO_PHI = {
    "I": _except(),
    "II": _except("22'"),
    "III": _except("22'", "02'"),
    "IV": _except("20'", "22'"),
    "V": _except("22'", "20'", "02'"),
    "VI": _except("20'", "22'", "00'", "02'"),
}

PUBLISHED_NONZERO_PHI_STAR = {
    "I": _except("11'", "10'", "01'", "00'"),
    "II": _except("11'", "10'", "01'"),
    "III": _except("11'", "01'"),
    "IV": _except("11'", "10'"),
    "V": _except("11'"),
    "VI": _except(),
}

_KAPPA = "a1 b1 a1^-1 b1^-1"
_KAPPA_INV = "b1 a1 b1^-1 a1^-1"

PHI_TEXT = {
    "11'": f"a1 {_KAPPA_INV} a2^-1",
    "10'": "a1 b1 a2^-1",
    "12'": "b1 a2^-1",
    "01'": "a1 b2^-1 a2^-1",
    "00'": f"a1 b1 {_KAPPA} b2^-1 a2^-1",
    "02'": f"b1 {_KAPPA} b2^-1 a2^-1",
    "21'": "a1 b2^-1",
    "20'": f"a1 b1 {_KAPPA} b2^-1",
    "22'": f"b1 {_KAPPA} b2^-1",
}


@dataclass(frozen=True)
class GluedSurface:
    torus1: object
    torus2: object
    streets1: object
    streets2: object

    @property
    def m(self):
        return self.torus1.m

    def points(self):
        """Named division points of the slit (image side of torus 1, domain side of torus 2)."""
        s1, s2 = self.streets1, self.streets2
        m = self.m
        return {
            "2*": m - m,
            "3*": s1.p2,
            "0*": m - s1.p1,
            "1*": m,
            "0'": m - m,
            "1'": s2.p1,
            "2'": s2.p1 + s2.p0,
            "3'": m,
        }

    def to_json(self):
        return {
            "d": self.torus1.d,
            "m": str(self.m),
            "torus1": self.torus1.to_json(),
            "torus2": self.torus2.to_json(),
        }


@dataclass(frozen=True)
class FivePartition:
    type_id: str
    sigma: tuple
    tau: tuple
    labels: tuple
    intervals: tuple
    image_points: tuple
    p_matrix: dict

    @property
    def published_sigma(self):
        return PUBLISHED_SIGMA[self.type_id]

    @property
    def sigma_matches_published(self):
        return self.sigma == PUBLISHED_SIGMA[self.type_id]

    @property
    def published_labels(self):
        return PUBLISHED_LABELS[self.type_id]

    def label_corrections(self):
        """Published labels that differ from the computed multiset, as ``(published, computed)``."""
        pub = list(PUBLISHED_LABELS[self.type_id])
        ours = list(self.labels)
        for x in list(ours):
            if x in pub:
                pub.remove(x)
                ours.remove(x)
        return list(zip(pub, ours))

    def to_json(self):
        from .jsonio import scalar_json

        return {
            "type": self.type_id,
            "sigma": list(self.sigma),
            "published_sigma": list(self.published_sigma),
            "sigma_matches_published": self.sigma_matches_published,
            "tau": [scalar_json(t) for t in self.tau],
            "labels": list(self.labels),
            "intervals": [[scalar_json(lo), scalar_json(hi)] for lo, hi in self.intervals],
            "image_points": [[name, scalar_json(x)] for name, x in self.image_points],
            "label_corrections": [list(p) for p in self.label_corrections()],
        }


@dataclass(frozen=True)
class BrokenIsometry:
    map: PiecewiseTranslation

    @property
    def domains(self):
        return self.map.domains

    @property
    def shifts(self):
        return self.map.shifts

    def __call__(self, x):
        return self.map(x)

    def to_json(self):
        from .jsonio import scalar_json

        return {
            "domains": [[scalar_json(lo), scalar_json(hi)] for lo, hi in self.domains],
            "shifts": [scalar_json(s) for s in self.shifts],
            "images": [[scalar_json(lo), scalar_json(hi)] for lo, hi in self.map.images],
        }


def glue(t1, t2):
    if t1.m != t2.m:
        raise MeasureMismatch("the two tori must carry the same obstacle measure", m1=str(t1.m), m2=str(t2.m))
    gs = GluedSurface(t1, t2, street_set(t1), street_set(t2))
    if gs.streets1.widths == gs.streets2.widths:
        # same street data means the same flow on both handles
        raise Degenerate("the two tori carry identical street data", widths=[str(p) for p in gs.streets1.widths])
    pts = gs.points()
    names = ("3*", "0*", "1'", "2'")
    for i, p in enumerate(names):
        for q in names[i + 1:]:
            if pts[p] == pts[q]:
                raise Degenerate(f"division points {p} and {q} coincide", point=str(pts[p]))
    return gs


def eta_map(streets, m):
    """First-hit map of one torus as a 3-piece translation of ``[0, m]``."""
    p0, p1, p2 = streets.widths
    zero = m - m
    return PiecewiseTranslation(
        (
            (zero, p1, streets.a_star),
            (p1, p1 + p0, streets.a_star - streets.b_star),
            (p1 + p0, m, -streets.b_star),
        )
    )


def _street_of(streets, x):
    p0, p1, _ = streets.widths
    if x < p1:
        return 1
    if x < p1 + p0:
        return 0
    return 2


def broken_isometry_map(gs):
    e12 = eta_map(gs.streets1, gs.m)
    e21 = eta_map(gs.streets2, gs.m)
    comp = e12.then(e21)
    if len(comp.pieces) != 5:
        raise Degenerate("composition does not have five pieces", pieces=len(comp.pieces))
    return BrokenIsometry(comp)


def five_partition(gs):
    pts = gs.points()
    order = tuple(sorted(("1'", "2'", "3*", "0*"), key=lambda k: pts[k]))
    type_id = TYPE_ORDERINGS.get(order)
    if type_id is None:
        raise InvariantViolation("ordering of division points matches no type", order=list(order))
    bi = broken_isometry_map(gs)
    e12 = eta_map(gs.streets1, gs.m)
    labels = []
    for lo, hi in bi.domains:
        mid = (lo + hi) / 2
        alpha = _street_of(gs.streets1, mid)
        beta = _street_of(gs.streets2, e12(mid))
        labels.append(f"{alpha}{beta}'")
    images = bi.map.images
    ranked = sorted(range(5), key=lambda q: images[q][0])
    sigma = [0] * 5
    for pos, q in enumerate(ranked):
        sigma[q] = pos + 1
    tau = tuple(hi - lo for lo, hi in bi.domains)
    p_matrix = {lab: gs.m - gs.m for lab in _ALL_LABELS}
    for lab, t in zip(labels, tau):
        p_matrix[lab] = p_matrix[lab] + t
    image_points = tuple((k, pts[k]) for k in ("2*",) + order + ("1*",))
    return FivePartition(type_id, tuple(sigma), tau, tuple(labels), bi.domains, image_points, p_matrix)


def marginals_hold(gs, fp):
    """Row sums give the torus-1 widths and column sums the torus-2 widths."""
    w1 = dict(zip((0, 1, 2), gs.streets1.widths))
    w2 = dict(zip((0, 1, 2), gs.streets2.widths))
    for a in STREET_ORDER:
        if sum((fp.p_matrix[f"{a}{b}'"] for b in STREET_ORDER), gs.m - gs.m) != w1[a]:
            return False
    for b in STREET_ORDER:
        if sum((fp.p_matrix[f"{a}{b}'"] for a in STREET_ORDER), gs.m - gs.m) != w2[b]:
            return False
    return True


def phi_words():
    """The nine two-street pass classes as reduced words over ``a1 b1 a2 b2``."""
    return {lab: FreeWord.parse(text, RANK4) for lab, text in PHI_TEXT.items()}


def phi_table(gs=None):
    """Two-street pass classes, with per-type nonzero flags when a surface is given."""
    words = phi_words()
    out = {}
    fp = five_partition(gs) if gs is not None else None
    for lab, w in words.items():
        entry = {"word": w}
        if fp is not None:
            entry["measure"] = fp.p_matrix[lab]
            entry["nonzero"] = bool(fp.p_matrix[lab])
            entry["published_nonzero"] = lab in PUBLISHED_NONZERO_PHI[fp.type_id]
            entry["published_nonzero_star"] = lab in PUBLISHED_NONZERO_PHI_STAR[fp.type_id]
        out[lab] = entry
    return out
