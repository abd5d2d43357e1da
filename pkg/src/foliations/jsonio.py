"""JSON helpers: every exact number is emitted as its text form plus a float hint."""

import json

from .errors import InvalidInstance
from .exact_field import Scalar
from .torus_flow import FlowTorus


def scalar_json(x):
    return {"exact": str(x), "approx": float(x)}


def scalar_from_json(obj, d=None):
    if isinstance(obj, dict):
        obj = obj["exact"]
    return Scalar.parse(obj, d)


def torus_from_json(obj, d=None, m=None):
    try:
        d = obj.get("d", d) or 0
        m_text = obj.get("m", m)
        if m_text is None:
            raise InvalidInstance("torus needs an obstacle measure m")
        return FlowTorus(Scalar.parse(obj["a"], d), Scalar.parse(obj["b"], d), Scalar.parse(m_text, d), d)
    except KeyError as exc:
        raise InvalidInstance(f"torus object is missing key {exc.args[0]!r}") from None


def glued_from_json(obj):
    """``{"d", "m", "torus1": {"a", "b"}, "torus2": {"a", "b"}}``; per-torus m overrides the shared one."""
    try:
        d = obj.get("d", 0) or 0
        m = obj.get("m")
        return torus_from_json(obj["torus1"], d, m), torus_from_json(obj["torus2"], d, m)
    except KeyError as exc:
        raise InvalidInstance(f"glued instance is missing key {exc.args[0]!r}") from None


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False)
