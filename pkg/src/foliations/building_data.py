"""Genus-g building data: a Morse tree on the sphere, its transversal branches and the tori.

JSON layout::

    {
      "genus": 2, "d": 5,
      "tree": {"vertices": {"0": "0", "inf": "1"}, "edges": [["0", "inf"]]},
      "branches": [{"name": "t1", "path": ["0", "inf"], "start": "0", "end": "1"}, ...],
      "psi": [{"edge": ["0", "inf"], "lo": "0", "hi": "1", "order": ["t1", "t2"]}, ...],
      "tori": [{"a": "1", "b": "-1/2+1/2*sqrt(5)"}, ...],
      "cycle_type": [2]
    }

``psi`` (the cyclically ordered branch lists between consecutive levels of
each edge) and ``cycle_type`` are optional.  Branch ``k`` and torus ``k``
share the measure ``end - start``.
"""

from collections import defaultdict
from dataclasses import dataclass, field

from .errors import (
    ConservationViolated,
    GenusTooSmall,
    InvalidCensus,
    InvalidInstance,
    MaximalOddGenus,
)
from .exact_field import Scalar

__all__ = [
    "MorseTree",
    "Branch",
    "PsiRecord",
    "BuildingData",
    "TransitionMatrix",
    "validate_building_data",
    "classify_foliation",
    "minimal_diagram_types",
    "check_conservation",
    "minimal_example",
]


@dataclass(frozen=True)
class MorseTree:
    values: dict
    edges: tuple

    def neighbours(self):
        nb = defaultdict(list)
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return nb

    def degree(self, v):
        return len(self.neighbours().get(v, ()))

    def leaves(self):
        nb = self.neighbours()
        return sorted(v for v in self.values if len(nb.get(v, ())) == 1)

    def inner(self):
        nb = self.neighbours()
        return sorted(v for v in self.values if len(nb.get(v, ())) == 3)


@dataclass(frozen=True)
class Branch:
    name: str
    path: tuple
    start: Scalar
    end: Scalar

    @property
    def measure(self):
        return self.end - self.start


@dataclass(frozen=True)
class PsiRecord:
    edge: tuple
    lo: Scalar
    hi: Scalar
    order: tuple


@dataclass(frozen=True)
class BuildingData:
    genus: int
    tree: MorseTree
    branches: tuple
    tori: tuple = ()
    psi: tuple = ()
    cycle_type: tuple = None
    d: int = 0

    @classmethod
    def from_json(cls, obj):
        try:
            d = obj.get("d", 0) or 0
            tree = MorseTree(
                {str(k): Scalar.parse(v, d) for k, v in obj["tree"]["vertices"].items()},
                tuple((str(u), str(v)) for u, v in obj["tree"]["edges"]),
            )
            branches = tuple(
                Branch(b["name"], tuple(str(p) for p in b["path"]), Scalar.parse(b["start"], d), Scalar.parse(b["end"], d))
                for b in obj["branches"]
            )
            psi = tuple(
                PsiRecord(
                    tuple(str(x) for x in r["edge"]), Scalar.parse(r["lo"], d), Scalar.parse(r["hi"], d), tuple(r["order"])
                )
                for r in obj.get("psi", ())
            )
            tori = tuple((Scalar.parse(t["a"], d), Scalar.parse(t["b"], d)) for t in obj.get("tori", ()))
            ct = obj.get("cycle_type")
            return cls(int(obj["genus"]), tree, branches, tori, psi, tuple(ct) if ct is not None else None, d)
        except KeyError as exc:
            raise InvalidInstance(f"building data is missing key {exc.args[0]!r}") from None


# -- validation ----------------------------------------------------------------


def _tree_problems(tree):
    out = []
    names = set(tree.values)
    for u, v in tree.edges:
        if u not in names or v not in names:
            out.append(("unknown-vertex", f"edge {u}-{v} uses an unknown vertex"))
    if out:
        return out
    nb = tree.neighbours()
    if len(tree.edges) != len(names) - 1:
        out.append(("not-a-tree", f"{len(names)} vertices but {len(tree.edges)} edges"))
    seen, stack = set(), [next(iter(names))] if names else []
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(nb[v])
    if seen != names:
        out.append(("disconnected", "tree is not connected"))
    for v in sorted(names):
        if len(nb[v]) not in (1, 3):
            out.append(("not-trivalent", f"vertex {v} has degree {len(nb[v])}"))
    vals = list(tree.values.values())
    if len(set(vals)) != len(vals):
        out.append(("equal-values", "two vertices share a value"))
    for v in sorted(names):
        if len(nb[v]) == 3:
            hs = [tree.values[w] for w in nb[v]]
            if not (min(hs) < tree.values[v] < max(hs)):
                out.append(("not-a-saddle", f"inner vertex {v} is a local extremum"))
    return out


def _edge_key(u, v):
    return (u, v) if u <= v else (v, u)


def _covered_ranges(bd):
    """For every tree edge, the level ranges covered by each branch."""
    tree = bd.tree
    cover = defaultdict(list)
    for br in bd.branches:
        for u, v in zip(br.path, br.path[1:]):
            lo = max(min(tree.values[u], tree.values[v]), br.start)
            hi = min(max(tree.values[u], tree.values[v]), br.end)
            if lo < hi:
                cover[_edge_key(u, v)].append((lo, hi, br.name))
    return cover


def _branch_problems(bd):
    tree = bd.tree
    out = []
    edges = {_edge_key(u, v) for u, v in tree.edges}
    if len(bd.branches) != bd.genus:
        out.append(("branch-count", f"{len(bd.branches)} branches for genus {bd.genus}"))
    for br in bd.branches:
        if not br.measure.sign() > 0:
            out.append(("nonpositive-measure", f"branch {br.name} has m <= 0"))
            continue
        if len(br.path) < 2 or any(p not in tree.values for p in br.path):
            out.append(("bad-path", f"branch {br.name} has an invalid path"))
            continue
        if any(_edge_key(u, v) not in edges for u, v in zip(br.path, br.path[1:])):
            out.append(("bad-path", f"branch {br.name} leaves the tree"))
            continue
        hs = [tree.values[p] for p in br.path]
        if any(x >= y for x, y in zip(hs, hs[1:])):
            out.append(("not-monotone", f"branch {br.name} path is not increasing"))
            continue
        if not (hs[0] <= br.start < hs[1] and hs[-2] < br.end <= hs[-1]):
            out.append(("endpoint-off-path", f"branch {br.name} ends outside its first/last edge"))
    if out:
        return out
    # endpoint levels: exactly two meet at each centre, all others distinct
    leaves = set(tree.leaves())
    at_centre = defaultdict(int)
    free_levels = []
    for br in bd.branches:
        for vertex, level in ((br.path[0], br.start), (br.path[-1], br.end)):
            if vertex in leaves and tree.values[vertex] == level:
                at_centre[vertex] += 1
            else:
                free_levels.append(level)
    for c in sorted(leaves):
        if at_centre[c] != 2:
            out.append(("centre-endpoints", f"centre {c} carries {at_centre[c]} branch ends, expected 2"))
    vertex_levels = set(tree.values.values())
    if len(set(free_levels)) != len(free_levels) or vertex_levels & set(free_levels):
        out.append(("endpoint-levels", "branch end levels coincide with each other or with a critical level"))
    # condition b, encoded as: Psi non-empty on every edge at every level
    cover = _covered_ranges(bd)
    for u, v in tree.edges:
        lo, hi = sorted((tree.values[u], tree.values[v]))
        reach = lo
        for a, b, _ in sorted(cover.get(_edge_key(u, v), ()), key=lambda r: r[0]):
            if a > reach:
                break
            if b > reach:
                reach = b
        if reach < hi:
            out.append(("psi-empty", f"no branch covers part of edge {u}-{v}"))
    return out


def _cyclic_equal(x, y):
    if len(x) != len(y):
        return False
    if not x:
        return True
    s = list(x) + list(x)
    n = len(x)
    return any(s[k:k + n] == list(y) for k in range(n))


def _cyclic_concat(whole, first, second):
    """Is the cyclic order ``whole`` a block of ``first`` followed by a block of ``second``?"""
    n = len(whole)
    if n != len(first) + len(second):
        return False
    for k in range(n):
        rot = list(whole[k:]) + list(whole[:k])
        if _cyclic_equal(rot[: len(first)], first) and _cyclic_equal(rot[len(first):], second):
            return True
    return False


def _psi_problems(bd):
    tree = bd.tree
    out = []
    cover = _covered_ranges(bd)
    by_edge = defaultdict(list)
    for rec in bd.psi:
        if _edge_key(*rec.edge) not in {_edge_key(u, v) for u, v in tree.edges}:
            out.append(("psi-edge", f"record on unknown edge {rec.edge}"))
            continue
        by_edge[_edge_key(*rec.edge)].append(rec)
        if not rec.order:
            out.append(("psi-empty", f"empty record on edge {rec.edge}"))
        mid = (rec.lo + rec.hi) / 2
        present = sorted(name for a, b, name in cover.get(_edge_key(*rec.edge), ()) if a < mid < b)
        if sorted(rec.order) != present:
            out.append(("psi-mismatch", f"record on {rec.edge} lists {list(rec.order)} but branches {present} pass"))
    for key, recs in by_edge.items():
        recs.sort(key=lambda r: r.lo)
        lo, hi = sorted((tree.values[key[0]], tree.values[key[1]]))
        if recs[0].lo != lo or recs[-1].hi != hi or any(a.hi != b.lo for a, b in zip(recs, recs[1:])):
            out.append(("psi-gap", f"records on edge {key} do not tile it"))
        for a, b in zip(recs, recs[1:]):
            if abs(len(a.order) - len(b.order)) != 1:
                out.append(("psi-jump", f"|Psi| jumps by {len(b.order) - len(a.order)} on edge {key}"))
                continue
            small, big = (a.order, b.order) if len(a.order) < len(b.order) else (b.order, a.order)
            if not _cyclic_equal([x for x in big if x in small], small):
                out.append(("psi-order", f"cyclic order not inherited on edge {key}"))
    # at saddles one list splits into two or two merge into one
    nb = tree.neighbours()
    for q in tree.inner():
        hq = tree.values[q]
        below, above = [], []
        for w in nb[q]:
            recs = by_edge.get(_edge_key(q, w))
            if not recs:
                break
            near = [r for r in recs if r.hi == hq] if tree.values[w] < hq else [r for r in recs if r.lo == hq]
            if len(near) != 1:
                break
            (below if tree.values[w] < hq else above).append(near[0].order)
        else:
            single, pair = (below[0], above) if len(below) == 1 else (above[0], below)
            if not _cyclic_concat(single, pair[0], pair[1]):
                out.append(("psi-saddle", f"cyclic orders at saddle {q} are not a split of one another"))
    return out


def _torus_problems(bd):
    out = []
    if len(bd.tori) != bd.genus:
        out.append(("torus-count", f"{len(bd.tori)} tori for genus {bd.genus}"))
    for k, ((a, b), br) in enumerate(zip(bd.tori, bd.branches)):
        m = br.measure
        if a.sign() <= 0 or b.sign() <= 0:
            out.append(("torus-measures", f"torus {k + 1} needs |a|, |b| > 0"))
        elif not a + b > m:
            out.append(("torus-too-small", f"torus {k + 1}: |a| + |b| <= m"))
    return out


def validate_building_data(bd):
    """Check every structural condition and report all failures."""
    problems = _tree_problems(bd.tree)
    if not problems:
        problems += _branch_problems(bd)
        if not problems and bd.psi:
            problems += _psi_problems(bd)
    problems += _torus_problems(bd)
    return {
        "valid": not problems,
        "violations": [{"name": n, "message": msg} for n, msg in problems],
    }


# -- classification --------------------------------------------------------------


def branch_cycles(bd):
    """Lengths of the cycles formed by branches glued end to end at the centres."""
    leaves = set(bd.tree.leaves())
    at = defaultdict(list)
    for br in bd.branches:
        for vertex, level in ((br.path[0], br.start), (br.path[-1], br.end)):
            if vertex in leaves and bd.tree.values[vertex] == level:
                at[vertex].append(br.name)
    adj = defaultdict(list)
    for names in at.values():
        if len(names) == 2:
            adj[names[0]].append(names[1])
            adj[names[1]].append(names[0])
    seen, lengths = set(), []
    for br in bd.branches:
        if br.name in seen:
            continue
        comp, stack = set(), [br.name]
        while stack:
            v = stack.pop()
            if v not in comp:
                comp.add(v)
                stack.extend(adj[v])
        seen |= comp
        if all(len(adj[v]) == 2 for v in comp):
            lengths.append(len(comp))
    return sorted(lengths)


def classify_foliation(bd):
    t = len(bd.tree.leaves())
    r = len(bd.tree.inner())
    g = bd.genus
    if t - r != 2:
        raise InvalidCensus(f"t - r = {t - r}, a trivalent tree always has 2", t=t, r=r)
    others = 2 * g - 2 * t
    if others < 0 or r + t + others != 2 * g - 2:
        raise InvalidCensus(f"saddle census fails for genus {g}: t={t}, r={r}", t=t, r=r)
    out = {"genus": g, "t": t, "r": r, "cycle_type": None, "minimal": r == 0}
    if r == 0:
        out["class"] = "Simple"
        return out
    if r == g - 2:
        if g % 2:
            raise MaximalOddGenus(f"maximal foliations need even genus, got {g}", genus=g)
        if bd.cycle_type is not None:
            ct = tuple(bd.cycle_type)
        else:
            cycles = branch_cycles(bd)
            if any(c % 2 for c in cycles):
                raise InvalidCensus("a boundary cycle has odd length", cycles=cycles)
            ct = tuple(sorted((c // 2 for c in cycles), reverse=True))
        if sum(2 * x for x in ct) != g or any(x <= 0 for x in ct):
            raise InvalidCensus(f"cycle type {list(ct)} does not pair all {g} boundaries", cycle_type=list(ct))
        out["class"] = "Maximal"
        out["cycle_type"] = list(ct)
        return out
    out["class"] = f"rank-{r}"
    return out


def minimal_diagram_types(g):
    if g < 2:
        raise GenusTooSmall(f"genus must be >= 2, got {g}")
    out = [{"type": "a", "two_cycles": 1, "pairs_at_poles": 0, "three_chains": 0, "disjoint": g - 2}]
    if g >= 4:
        out.append({"type": "b", "two_cycles": 0, "pairs_at_poles": 2, "three_chains": 0, "disjoint": g - 4})
    if g >= 3:
        out.append({"type": "c", "two_cycles": 0, "pairs_at_poles": 0, "three_chains": 1, "disjoint": g - 3})
    return out


# -- conservation for the maximal g = 4 cycle type (2) -----------------------------

NORTH = ("12", "14", "32", "34")
SOUTH = ("21", "23", "41", "43")


@dataclass(frozen=True)
class TransitionMatrix:
    m: dict
    A: tuple

    @classmethod
    def from_json(cls, obj):
        d = obj.get("d", 0) or 0
        return cls({k: Scalar.parse(v, d) for k, v in obj["m"].items()}, tuple(Scalar.parse(a, d) for a in obj["A"]))

    @classmethod
    def from_free(cls, m12, m23, m34, m41, flux):
        """Solve the conservation identities from four transitions and the flux."""
        m = {"12": m12, "23": m23, "34": m34, "41": m41}
        m["21"], m["32"], m["43"], m["14"] = m12 - flux, m23 - flux, m34 - flux, m41 - flux
        A = (m["12"] + m["14"], m["21"] + m["23"], m["32"] + m["34"], m["41"] + m["43"])
        return cls(m, A)


def _neighbours(k):
    return ((k - 2) % 4 + 1, k % 4 + 1)


def check_conservation(tm):
    m, A = tm.m, tm.A
    failures = []
    missing = [k for k in NORTH + SOUTH if k not in m]
    if missing or len(A) != 4:
        raise ConservationViolated("need the eight visible transitions and four boundary measures", missing=missing)
    for k in NORTH + SOUTH:
        if m[k].sign() < 0:
            failures.append(f"m{k} >= 0")
    for k in range(1, 5):
        out_sum = sum((m[f"{k}{l}"] for l in _neighbours(k)), A[0] - A[0])
        in_sum = sum((m[f"{l}{k}"] for l in _neighbours(k)), A[0] - A[0])
        if out_sum != A[k - 1]:
            failures.append(f"sum_l m{k}l = |A{k}|")
        if in_sum != A[k - 1]:
            failures.append(f"sum_k m k{k} = |A{k}|")
    if A[0] - A[1] + A[2] - A[3]:
        failures.append("A1 - A2 + A3 - A4 = 0")
    fluxes = [m["12"] - m["21"], m["23"] - m["32"], m["34"] - m["43"], m["41"] - m["14"]]
    if any(f != fluxes[0] for f in fluxes):
        failures.append("m12 - m21 = m23 - m32 = m34 - m43 = m41 - m14")
    if failures:
        raise ConservationViolated("conservation law violated: " + "; ".join(failures), failing=failures)
    flux = fluxes[0]
    s = flux.sign()
    direction = "clockwise" if s > 0 else "contrclockwise" if s < 0 else "degenerate"
    return {"flux": flux, "direction": direction}


def minimal_example(d=5, a1="1", b1="-1/2+1/2*sqrt(5)", a2="1", b2="-2+1*sqrt(5)", m="1"):
    """The genus-2 minimal data: one edge 0 - inf and two branches along it."""
    return {
        "genus": 2,
        "d": d,
        "tree": {"vertices": {"0": "0", "inf": m}, "edges": [["0", "inf"]]},
        "branches": [
            {"name": "t1", "path": ["0", "inf"], "start": "0", "end": m},
            {"name": "t2", "path": ["0", "inf"], "start": "0", "end": m},
        ],
        "psi": [{"edge": ["0", "inf"], "lo": "0", "hi": m, "order": ["t1", "t2"]}],
        "tori": [{"a": a1, "b": b1}, {"a": a2, "b": b2}],
    }
