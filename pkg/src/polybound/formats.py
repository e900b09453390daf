"""File formats: H-rep, V-rep, incidence matrices, Hasse diagram JSON.

All writers are byte-stable: rationals in lowest terms, faces sorted by
(rank, vertex tuple), arcs sorted, and a trailing newline everywhere, so
re-running a command reproduces files bit for bit.
"""

from __future__ import annotations

import json
from typing import Optional

from .errors import InputError
from .bounded import HasseDiagram
from .incidence import IncidenceMatrix, indices_from_mask, mask_from_indices
from .polyhedron import HRep, VRep
from .rational import format_rational, parse_rational

HREP_MAGIC = "polybound-hrep 1"
VREP_MAGIC = "polybound-vrep 1"
INC_MAGIC = "polybound-inc 1"


def _lines(path: str) -> list[str]:
    try:
        with open(path, "r", encoding="ascii") as fh:
            return [ln.rstrip("\n") for ln in fh]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _expect(condition: bool, message: str):
    if not condition:
        raise InputError(message)


def hrep_to_text(h: HRep) -> str:
    out = [HREP_MAGIC, f"dim {h.dim} rows {len(h.rows)}"]
    for a, b in h.rows:
        out.append(" ".join(format_rational(x) for x in (*a, b)))
    return "\n".join(out) + "\n"


def parse_hrep(text_lines: list[str]) -> HRep:
    _expect(bool(text_lines) and text_lines[0] == HREP_MAGIC, "not an H-rep file")
    head = text_lines[1].split()
    _expect(len(head) == 4 and head[0] == "dim" and head[2] == "rows",
            "malformed H-rep header")
    d, m = int(head[1]), int(head[3])
    rows = []
    for ln in text_lines[2:2 + m]:
        parts = [parse_rational(tok) for tok in ln.split()]
        _expect(len(parts) == d + 1, "H-rep row has wrong width")
        rows.append((tuple(parts[:d]), parts[d]))
    _expect(len(rows) == m, "H-rep row count mismatch")
    return HRep(d, tuple(rows))


def write_hrep(h: HRep, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(hrep_to_text(h))


def read_hrep(path: str) -> HRep:
    return parse_hrep(_lines(path))


def vrep_to_text(v: VRep) -> str:
    out = [VREP_MAGIC, f"dim {v.dim}", f"vertices {len(v.vertices)}"]
    for p in v.vertices:
        out.append(" ".join(format_rational(x) for x in p))
    out.append(f"rays {len(v.rays)}")
    for r in v.rays:
        out.append(" ".join(format_rational(x) for x in r))
    return "\n".join(out) + "\n"


def parse_vrep(text_lines: list[str]) -> VRep:
    _expect(bool(text_lines) and text_lines[0] == VREP_MAGIC, "not a V-rep file")
    _expect(text_lines[1].startswith("dim "), "malformed V-rep header")
    d = int(text_lines[1].split()[1])
    _expect(text_lines[2].startswith("vertices "), "missing vertices section")
    k = int(text_lines[2].split()[1])
    idx = 3
    vertices = []
    for ln in text_lines[idx:idx + k]:
        parts = [parse_rational(tok) for tok in ln.split()]
        _expect(len(parts) == d, "vertex has wrong width")
        vertices.append(tuple(parts))
    idx += k
    _expect(idx < len(text_lines) and text_lines[idx].startswith("rays "),
            "missing rays section")
    r = int(text_lines[idx].split()[1])
    idx += 1
    rays = []
    for ln in text_lines[idx:idx + r]:
        parts = [parse_rational(tok) for tok in ln.split()]
        _expect(len(parts) == d, "ray has wrong width")
        rays.append(tuple(parts))
    return VRep.build(d, vertices, rays)


def write_vrep(v: VRep, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(vrep_to_text(v))


def read_vrep(path: str) -> VRep:
    return parse_vrep(_lines(path))


def incidence_to_text(inc: IncidenceMatrix) -> str:
    out = [INC_MAGIC, f"facets {inc.m} vertices {inc.n}"]
    for row in inc.row_masks:
        out.append("".join("1" if row >> v & 1 else "0" for v in range(inc.n)))
    if inc.far_face is not None:
        out.append("farface " + " ".join(str(i) for i in indices_from_mask(inc.far_face)))
    return "\n".join(out) + "\n"


def parse_incidence(text_lines: list[str]) -> IncidenceMatrix:
    _expect(bool(text_lines) and text_lines[0] == INC_MAGIC, "not an incidence file")
    head = text_lines[1].split()
    _expect(len(head) == 4 and head[0] == "facets" and head[2] == "vertices",
            "malformed incidence header")
    m, n = int(head[1]), int(head[3])
    masks = []
    for ln in text_lines[2:2 + m]:
        _expect(len(ln) == n and set(ln) <= {"0", "1"}, "bad incidence row")
        masks.append(mask_from_indices(i for i, ch in enumerate(ln) if ch == "1"))
    _expect(len(masks) == m, "incidence row count mismatch")
    far: Optional[int] = None
    rest = [ln for ln in text_lines[2 + m:] if ln.strip()]
    if rest:
        _expect(len(rest) == 1 and rest[0].startswith("farface"),
                "unexpected trailing content in incidence file")
        far = mask_from_indices(int(tok) for tok in rest[0].split()[1:])
    return IncidenceMatrix(n, tuple(masks), far)


def write_incidence(inc: IncidenceMatrix, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(incidence_to_text(inc))


def read_incidence(path: str) -> IncidenceMatrix:
    return parse_incidence(_lines(path))


def hasse_to_json_dict(hd: HasseDiagram) -> dict:
    """Canonical JSON form: faces sorted by (rank, vertices) and renumbered,
    arcs sorted; the empty face has rank -1 and vertices []."""
    order = sorted(hd.nodes, key=lambda nd: (nd.rank, indices_from_mask(nd.vertex_set)))
    new_id = {nd.id: i for i, nd in enumerate(order)}
    faces = [{"id": i, "rank": nd.rank, "vertices": list(indices_from_mask(nd.vertex_set))}
             for i, nd in enumerate(order)]
    arcs = sorted([new_id[lo], new_id[hi]] for lo, hi in hd.arcs)
    far = list(indices_from_mask(hd.far_face)) if hd.far_face is not None else []
    return {
        "n_vertices": hd.n,
        "far_face": far,
        "faces": faces,
        "arcs": arcs,
        "f_vector": hd.f_vector(),
    }


def hasse_to_json(hd: HasseDiagram) -> str:
    return json.dumps(hasse_to_json_dict(hd), sort_keys=True, indent=1) + "\n"


def write_hasse(hd: HasseDiagram, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(hasse_to_json(hd))
