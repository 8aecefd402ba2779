"""Byte-deterministic JSON, DOT and plain-table renderings."""
from __future__ import annotations

import json
from typing import Sequence

from .quiver import Quiver, antichain_of, build_quiver, stabilizer_excluded_roots
from .rootcore import CosetWord, RootSystemId


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def quiver_to_json(q: Quiver) -> str:
    return dumps(q.to_dict())


def quiver_from_dict(d: dict) -> Quiver:
    """Rebuild a quiver from its JSON object; arrows are recomputed and
    compared with the stored ones."""
    sys = RootSystemId(d["family"], int(d["rank"]))
    verts = sorted(d["vertices"], key=lambda v: v["id"])
    if [v["id"] for v in verts] != list(range(1, len(verts) + 1)):
        raise ValueError("vertex ids must be 1..r")
    letters = tuple(int(v["color"]) for v in verts)
    q = build_quiver(CosetWord(sys, int(d["weight"]), letters))
    if q.letters != letters:
        raise ValueError("vertices are not in canonical order")
    stored = sorted(tuple(a) for a in d.get("arrows", []))
    if stored != list(q.arrows):
        raise ValueError("stored arrows do not match the arrow rule")
    return q


def quiver_from_json(text: str) -> Quiver:
    return quiver_from_dict(json.loads(text))


def quiver_to_dot(q: Quiver, name: str = "Q") -> str:
    lines = [f"digraph {name} {{"]
    for i in q.vertices:
        lines.append(f'  {i} [label="{i}:α_{q.color(i)}"];')
    for a, b in q.arrows:
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(h) for h in headers]] + [[fmt_cell(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    out = []
    for k, r in enumerate(cells):
        out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if k == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def fmt_cell(c) -> str:
    if isinstance(c, bool):
        return "yes" if c else "no"
    if c is None:
        return "-"
    if isinstance(c, (set, frozenset)):
        return "{" + ",".join(map(str, sorted(c))) + "}"
    if isinstance(c, (list, tuple)):
        return ",".join(map(str, c)) or "-"
    return str(c)


def quiver_table(q: Quiver) -> str:
    ann = q.annotations
    rows = []
    for i in q.vertices:
        rows.append((
            i,
            q.color(i),
            sorted(q.out_arrows[i]),
            ann.height[i],
            i in ann.pics,
            i in ann.holes,
        ))
    head = (
        f"{q.system} weight {q.weight_index}  dim {q.size}\n"
        f"word: {','.join(map(str, q.letters)) or '(empty)'}\n"
        f"pics: {fmt_cell(ann.pics)}  holes: {fmt_cell(ann.holes)}  "
        f"virtual hole colors: {fmt_cell(ann.virtual_holes)}\n"
        f"stabilizer excluded roots: {fmt_cell(stabilizer_excluded_roots(q))}\n"
        f"ambient antichain: {fmt_cell(antichain_of(q))}\n"
    )
    return head + table(("vertex", "color", "arrows to", "height", "pic", "hole"), rows)
