"""Deterministic SVG 1.1 drawings; exact values become floats only when written out."""

from xml.sax.saxutils import escape

from .errors import UnsupportedKind

KINDS = ("streets", "partition", "plane-diagram")

WIDTH = 800
HEIGHT = 240
MARGIN = 40
COLORS = {0: "#4e79a7", 1: "#f28e2b", 2: "#59a14f"}
PIECE_COLORS = ("#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1")


def _num(x):
    s = f"{float(x):.2f}"
    return s.rstrip("0").rstrip(".") if "." in s else s


def _doc(body, height=HEIGHT):
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}">\n'
        f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>\n'
    )
    return head + "".join(line + "\n" for line in body) + "</svg>\n"


def _text(x, y, s, size=14, anchor="middle"):
    return (
        f'<text x="{_num(x)}" y="{_num(y)}" font-family="sans-serif" font-size="{size}" '
        f'text-anchor="{anchor}">{escape(s)}</text>'
    )


def render_streets(streets, m):
    """Three strips in slit order (1, 0, 2), widths proportional to the street widths."""
    span = WIDTH - 2 * MARGIN
    body = [_text(WIDTH / 2, 24, f"streets, m = {m}", 16)]
    x = float(MARGIN)
    for tau in (1, 0, 2):
        w = span * float(streets.widths[tau]) / float(m)
        body.append(
            f'<rect id="street-{tau}" x="{_num(x)}" y="50" width="{_num(w)}" height="140" '
            f'fill="{COLORS[tau]}" stroke="black" stroke-width="1"/>'
        )
        body.append(_text(x + w / 2, 210, f"p{tau} = {float(streets.widths[tau]):.4f}", 12))
        body.append(_text(x + w / 2, 125, f"{tau}", 18))
        x += w
    return _doc(body)


def render_partition(fp, m):
    """The slit with the division points and the five domain pieces."""
    span = WIDTH - 2 * MARGIN
    scale = span / float(m)
    body = [_text(WIDTH / 2, 24, f"Type {fp.type_id}   sigma = {''.join(map(str, fp.sigma))}", 16)]
    for q, ((lo, hi), lab) in enumerate(zip(fp.intervals, fp.labels)):
        x0 = MARGIN + scale * float(lo)
        w = scale * float(hi - lo)
        body.append(
            f'<rect id="tau-{q + 1}" x="{_num(x0)}" y="60" width="{_num(w)}" height="40" '
            f'fill="{PIECE_COLORS[q]}" stroke="black" stroke-width="1"/>'
        )
        body.append(_text(x0 + w / 2, 85, f"R{q + 1}", 12))
        body.append(_text(x0 + w / 2, 118, lab, 11))
    body.append(f'<line x1="{MARGIN}" y1="160" x2="{WIDTH - MARGIN}" y2="160" stroke="black" stroke-width="2"/>')
    for k, (name, x) in enumerate(fp.image_points):
        px = MARGIN + scale * float(x)
        body.append(f'<circle cx="{_num(px)}" cy="160" r="4" fill="black"/>')
        body.append(_text(px, 185 + 14 * (k % 2), name, 12))
    return _doc(body)


def render_plane_diagram(genus, names=None):
    """``genus`` boundary squares, each with its two arcs A_j+ (top) and A_j- (bottom)."""
    cols = min(genus, 4)
    rows = (genus + cols - 1) // cols
    cell = (WIDTH - 2 * MARGIN) / cols
    side = min(cell - 30, 120)
    height = 60 + rows * (side + 70)
    body = [_text(WIDTH / 2, 28, f"plane diagram, genus {genus}", 16)]
    for j in range(genus):
        r, c = divmod(j, cols)
        x0 = MARGIN + c * cell + (cell - side) / 2
        y0 = 60 + r * (side + 70)
        label = names[j] if names else f"{j + 1}"
        body.append(
            f'<rect id="A{j + 1}" x="{_num(x0)}" y="{_num(y0)}" width="{_num(side)}" height="{_num(side)}" '
            f'fill="none" stroke="black" stroke-width="1.5"/>'
        )
        body.append(
            f'<path d="M {_num(x0)} {_num(y0)} Q {_num(x0 + side / 2)} {_num(y0 - 25)} {_num(x0 + side)} {_num(y0)}" '
            f'fill="none" stroke="#e15759" stroke-width="2"/>'
        )
        body.append(
            f'<path d="M {_num(x0)} {_num(y0 + side)} Q {_num(x0 + side / 2)} {_num(y0 + side + 25)} '
            f'{_num(x0 + side)} {_num(y0 + side)}" fill="none" stroke="#4e79a7" stroke-width="2"/>'
        )
        body.append(_text(x0 + side / 2, y0 - 12, f"A{j + 1}+", 12))
        body.append(_text(x0 + side / 2, y0 + side + 30, f"A{j + 1}-", 12))
        body.append(_text(x0 + side / 2, y0 + side / 2 + 5, f"T{label}", 14))
    return _doc(body, int(height))


def render(kind, **data):
    if kind == "streets":
        return render_streets(data["streets"], data["m"])
    if kind == "partition":
        return render_partition(data["partition"], data["m"])
    if kind == "plane-diagram":
        return render_plane_diagram(data["genus"], data.get("names"))
    raise UnsupportedKind(f"unknown render kind {kind!r}; choose from {', '.join(KINDS)}", kind=kind)
