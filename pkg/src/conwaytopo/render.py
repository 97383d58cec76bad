"""DOT and SVG pictures of a depth-limited piece of a topograph.

Vertices are superbases reached from the root {(1,0), (0,1), (1,1)} by at
most ``depth`` edge crossings in any direction.  Faces are primitive
vectors up to sign, labelled by their value.  River edges (faces of
opposite signs on the two sides) are drawn thick and red; faces with value
zero (lakes) are marked.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from html import escape

from .topograph import QuadraticForm

__all__ = ["Neighbourhood", "neighbourhood", "to_dot", "to_svg"]

Vec = tuple[int, int]


def _norm(v: Vec) -> Vec:
    x, y = v
    return (x, y) if x > 0 or (x == 0 and y > 0) else (-x, -y)


@dataclass
class Neighbourhood:
    form: QuadraticForm
    vertices: dict[frozenset, int]  # superbase -> id
    depth_of: dict[int, int]
    parent: dict[int, int]
    edges: list[tuple[int, int, Vec, Vec]]  # vertex ids and the two faces between them
    faces: dict[Vec, int]  # face -> value

    def is_river_edge(self, edge) -> bool:
        _, _, f, g = edge
        return self.faces[f] * self.faces[g] < 0

    def lakes(self) -> list[Vec]:
        return [f for f, v in self.faces.items() if v == 0]


def neighbourhood(Q: QuadraticForm, depth: int = 3) -> Neighbourhood:
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    root = ((1, 0), (0, 1), (-1, -1))
    key0 = frozenset(_norm(v) for v in root)
    vertices = {key0: 0}
    depth_of = {0: 0}
    parent: dict[int, int] = {}
    edges = []
    faces = {_norm(v): Q(*v) for v in root}
    queue = deque([(root, 0)])
    while queue:
        sb, vid = queue.popleft()
        if depth_of[vid] == depth:
            continue
        for i in range(3):
            j, k = [n for n in range(3) if n != i]
            u, v = sb[j], sb[k]
            new = (u[0] - v[0], u[1] - v[1])
            nb = [None, None, None]
            nb[i], nb[j], nb[k] = new, (-u[0], -u[1]), v
            key = frozenset(_norm(x) for x in nb)
            if key in vertices:
                continue
            nid = len(vertices)
            vertices[key] = nid
            depth_of[nid] = depth_of[vid] + 1
            parent[nid] = vid
            faces.setdefault(_norm(new), Q(*new))
            edges.append((vid, nid, _norm(u), _norm(v)))
            queue.append((tuple(nb), nid))
    return Neighbourhood(Q, vertices, depth_of, parent, edges, faces)


def _face_label(f: Vec) -> str:
    return f"({f[0]},{f[1]})"


def to_dot(Q: QuadraticForm, depth: int = 3) -> str:
    nb = neighbourhood(Q, depth)
    lines = ["graph topograph {", f'  label="{escape(str(Q))}";', "  node [shape=point];"]
    for key, vid in sorted(nb.vertices.items(), key=lambda kv: kv[1]):
        faces = ", ".join(f"{_face_label(f)}:{nb.faces[f]}" for f in sorted(key))
        lines.append(f'  v{vid} [tooltip="{faces}"];')
    for f, val in sorted(nb.faces.items()):
        shape = "doublecircle" if val == 0 else "plaintext"
        lines.append(f'  f_{f[0]}_{f[1]}'.replace("-", "m") + f' [shape={shape}, label="{val}"];')
    for edge in nb.edges:
        a, b, f, g = edge
        style = ' [color=red, penwidth=3, class="river"]' if nb.is_river_edge(edge) else ""
        lines.append(f"  v{a} -- v{b}{style};")
    # dotted spokes tie each face label to the vertices around it
    for key, vid in nb.vertices.items():
        for f in sorted(key):
            name = f"f_{f[0]}_{f[1]}".replace("-", "m")
            lines.append(f"  v{vid} -- {name} [style=dotted, color=gray];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _layout(nb: Neighbourhood, radius: float) -> dict[int, tuple[float, float]]:
    children: dict[int, list[int]] = {}
    for c, p in nb.parent.items():
        children.setdefault(p, []).append(c)
    pos = {0: (0.0, 0.0)}
    stack = [(0, 0.0, 2 * math.pi)]
    while stack:
        vid, lo, hi = stack.pop()
        kids = sorted(children.get(vid, []))
        if not kids:
            continue
        width = (hi - lo) / len(kids)
        for n, c in enumerate(kids):
            a, b = lo + n * width, lo + (n + 1) * width
            mid = (a + b) / 2
            r = radius * nb.depth_of[c]
            pos[c] = (r * math.cos(mid), r * math.sin(mid))
            stack.append((c, a, b))
    return pos


def to_svg(Q: QuadraticForm, depth: int = 3, radius: float = 60.0) -> str:
    nb = neighbourhood(Q, depth)
    pos = _layout(nb, radius)
    extent = radius * (depth + 1)
    size = 2 * extent
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" height="{size:.0f}" '
        f'viewBox="{-extent:.1f} {-extent:.1f} {size:.1f} {size:.1f}">',
        f"<title>{escape(str(Q))}</title>",
    ]
    for edge in nb.edges:
        a, b, _, _ = edge
        (x1, y1), (x2, y2) = pos[a], pos[b]
        if nb.is_river_edge(edge):
            attrs = 'class="river" stroke="red" stroke-width="3"'
        else:
            attrs = 'stroke="black" stroke-width="1"'
        out.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" {attrs}/>')
    # a face label sits at the mean position of the drawn vertices around it
    around: dict[Vec, list[tuple[float, float]]] = {}
    for key, vid in nb.vertices.items():
        for f in key:
            around.setdefault(f, []).append(pos[vid])
    for f, pts in sorted(around.items()):
        x = sum(p[0] for p in pts) / len(pts)
        y = sum(p[1] for p in pts) / len(pts)
        val = nb.faces[f]
        cls = "lake" if val == 0 else "face"
        fill = "blue" if val == 0 else ("black" if val > 0 else "gray")
        out.append(
            f'<text class="{cls}" x="{x:.1f}" y="{y:.1f}" font-size="10" fill="{fill}" '
            f'text-anchor="middle" data-vector="{f[0]},{f[1]}">{val}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
