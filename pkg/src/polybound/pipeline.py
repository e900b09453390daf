"""Pipeline orchestration: generate, close, enumerate, incidences, bounded
complex, report.  Also the bench harness that reproduces the face-count
columns of the benchmark tables."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from statistics import mean, pstdev
from typing import Optional, Sequence

from .errors import InputError, InternalError
from .bounded import (HasseDiagram, HasseNode, filter_bounded,
                      full_face_lattice, relabel_vertices, selective_generation)
from .moebius import moebius_generation
from .generators import (cyclic_matrix, dwarfed_cube, permutohedron_matrix,
                         random_metric, thrackle_metric, tight_span_hrep,
                         tropical_hrep, tropical_vertices)
from .incidence import (IncidenceMatrix, compute_incidences, far_face_vertices,
                        restrict_to_near)
from .polyhedron import (DEFAULT_BUDGET, ClosureResult, HRep, VRep,
                         enumerate_vertices_pivoting, projective_closure)
from . import formats

FAMILIES = ("dwarfed-cube", "thrackle", "random-metric",
            "tropical-cyclic", "tropical-permutohedron")
ALGORITHMS = ("selective", "moebius", "filter")
SUITES = ("dwarfed", "thrackle", "random", "tropical-cyclic", "tropical-perm")


@dataclass(frozen=True)
class BenchRow:
    label: str
    d: int
    m_bar: int
    n_bar: int
    alpha: int
    phi_prime: int
    time_ms: float
    error: Optional[str] = None


def make_instance(family: str, params: Sequence[int],
                  budget: int = DEFAULT_BUDGET) -> tuple[str, HRep, Optional[VRep]]:
    """(label, unbounded H-rep, optional precomputed V-rep) for a family.

    The tropical permutohedra come with their vertices already enumerated
    combinatorially; their closures are too degenerate for pivoting."""
    arity = {"dwarfed-cube": 1, "thrackle": 1, "random-metric": 2,
             "tropical-cyclic": 2, "tropical-permutohedron": 1}
    if family not in arity:
        raise InputError(f"unknown family {family!r}; choose from {FAMILIES}")
    params = list(params)
    if len(params) != arity[family]:
        raise InputError(f"{family} takes {arity[family]} parameter(s), got {len(params)}")
    if family == "dwarfed-cube":
        (d,) = params
        _, reversal = dwarfed_cube(d)
        return f"dwarfed-cube-{d}", reversal, None
    if family == "thrackle":
        (d,) = params
        return f"thrackle-{d}", tight_span_hrep(thrackle_metric(d)), None
    if family == "random-metric":
        d, seed = params
        return f"random-metric-{d}-s{seed}", tight_span_hrep(random_metric(d, seed)), None
    if family == "tropical-cyclic":
        s, t = params
        return f"tropical-cyclic-{s}-{t}", tropical_hrep(cyclic_matrix(s, t)), None
    (t,) = params
    matrix = permutohedron_matrix(t, budget)
    return (f"tropical-permutohedron-{t}", tropical_hrep(matrix),
            tropical_vertices(matrix, budget))


def closure_data(h: HRep, vrep: Optional[VRep] = None,
                 budget: int = DEFAULT_BUDGET) -> tuple[ClosureResult, VRep, IncidenceMatrix]:
    """Close the polyhedron and assemble the closure's vertex set and
    incidence matrix (far face attached) from one enumeration of h."""
    clo = projective_closure(h)
    if vrep is None:
        vrep = enumerate_vertices_pivoting(h, budget)
    points = [clo.map_point(x) for x in vrep.vertices]
    points += [clo.map_ray(r) for r in vrep.rays]
    vbar = VRep.build(h.dim, points, [])
    inc = compute_incidences(clo.closure, vbar)
    inc = inc.with_far_face(far_face_vertices(clo, vbar))
    return clo, vbar, inc


def bounded_diagram(inc: IncidenceMatrix, alg: str = "selective",
                    max_dim: Optional[int] = None) -> HasseDiagram:
    """Bounded-subcomplex Hasse diagram by the chosen algorithm, always
    expressed in the closure's vertex indexing."""
    if alg == "selective":
        return selective_generation(inc, max_dim)
    if alg == "filter":
        if inc.far_face is None:
            raise InputError("far-face data required for the filter algorithm")
        hd = filter_bounded(full_face_lattice(inc), inc.far_face)
        if max_dim is not None:
            keep = {nd.id for nd in hd.nodes if nd.rank <= max_dim}
            nodes = [nd for nd in hd.nodes if nd.id in keep]
            remap = {nd.id: i for i, nd in enumerate(nodes)}
            arcs = sorted((remap[lo], remap[hi]) for lo, hi in hd.arcs
                          if lo in keep and hi in keep)
            nodes = [HasseNode(remap[nd.id], nd.vertex_set, nd.rank) for nd in nodes]
            return HasseDiagram(hd.n, nodes, arcs, remap[hd.root_id], hd.far_face)
        return hd
    if alg == "moebius":
        if inc.far_face is None:
            return moebius_generation(inc, max_dim)
        near_inc, near = restrict_to_near(inc)
        hd = moebius_generation(near_inc, max_dim)
        return relabel_vertices(hd, dict(enumerate(near)), inc.n, inc.far_face)
    raise InputError(f"unknown algorithm {alg!r}; choose from {ALGORITHMS}")


def run_pipeline(family: str, params: Sequence[int], alg: str = "selective",
                 max_dim: Optional[int] = None, out_dir: Optional[str] = None,
                 budget: int = DEFAULT_BUDGET, verify: bool = False) -> BenchRow:
    """Full generate -> close -> enumerate -> incidences -> bounded run."""
    started = time.perf_counter()
    stage = "generate"
    try:
        label, h, pre = make_instance(family, params, budget)
        stage = "close/enumerate"
        clo, vbar, inc = closure_data(h, pre, budget)
        stage = f"bounded[{alg}]"
        hd = bounded_diagram(inc, alg, max_dim)
        if verify:
            stage = "verify"
            other = bounded_diagram(inc, "moebius" if alg != "moebius" else "selective",
                                    max_dim)
            if other.canonical() != hd.canonical():
                raise InternalError("algorithms disagree on the bounded complex")
    except Exception as exc:
        raise type(exc)(f"{stage}: {exc}") from exc
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        formats.write_hrep(h, os.path.join(out_dir, f"{label}.hrep"))
        formats.write_hrep(clo.closure, os.path.join(out_dir, f"{label}.closure.hrep"))
        formats.write_vrep(vbar, os.path.join(out_dir, f"{label}.closure.vrep"))
        formats.write_incidence(inc, os.path.join(out_dir, f"{label}.inc"))
        formats.write_hasse(hd, os.path.join(out_dir, f"{label}.hasse.json"))
    return BenchRow(label, h.dim, inc.m, inc.n, inc.alpha, hd.node_count(), elapsed_ms)


def suite_instances(suite: str, max_size: Optional[int], seeds: int):
    if suite == "dwarfed":
        top = max_size or 15
        return [("dwarfed-cube", (d,)) for d in range(5, top + 1, 5)]
    if suite == "thrackle":
        top = max_size or 8
        return [("thrackle", (d,)) for d in range(3, top + 1)]
    if suite == "random":
        top = max_size or 6
        return [("random-metric", (d, s)) for d in range(5, top + 1)
                for s in range(seeds)]
    if suite == "tropical-cyclic":
        pairs = [(3, 3), (4, 4), (5, 5), (3, 10)]
        if max_size:
            pairs = [(s, t) for s, t in pairs if max(s, t) <= max_size]
        return [("tropical-cyclic", p) for p in pairs]
    if suite == "tropical-perm":
        top = max_size or 3
        return [("tropical-permutohedron", (t,)) for t in range(3, top + 1)]
    raise InputError(f"unknown suite {suite!r}; choose from {SUITES}")


def run_suite(suite: str, max_size: Optional[int] = None, seeds: int = 20,
              out_dir: Optional[str] = None, alg: str = "selective",
              budget: int = DEFAULT_BUDGET, verify: bool = False) -> list[BenchRow]:
    """One BenchRow per instance; per-row failures are recorded and the
    suite continues."""
    rows = []
    for family, params in suite_instances(suite, max_size, seeds):
        try:
            rows.append(run_pipeline(family, params, alg, None, out_dir, budget, verify))
        except Exception as exc:
            label = f"{family}-" + "-".join(str(p) for p in params)
            rows.append(BenchRow(label, 0, 0, 0, 0, 0, 0.0, error=str(exc)))
    return rows


def aggregate_random_rows(rows: Sequence[BenchRow]) -> list[dict]:
    """Per-dimension mean/stddev summary for the random-metric suite."""
    by_d: dict[int, list[BenchRow]] = {}
    for row in rows:
        if row.error is None:
            by_d.setdefault(row.d, []).append(row)
    out = []
    for d in sorted(by_d):
        group = by_d[d]
        out.append({
            "d": d,
            "samples": len(group),
            "m_bar": group[0].m_bar,
            "n_bar_mean": mean(r.n_bar for r in group),
            "alpha_mean": mean(r.alpha for r in group),
            "phi_prime_mean": mean(r.phi_prime for r in group),
            "phi_prime_stddev": pstdev(r.phi_prime for r in group),
            "time_ms_mean": mean(r.time_ms for r in group),
        })
    return out


def format_rows(rows: Sequence[BenchRow], fmt: str = "table") -> str:
    header = ("label", "d", "m", "n", "alpha", "phi'", "ms", "error")
    cells = [[r.label, str(r.d), str(r.m_bar), str(r.n_bar), str(r.alpha),
              str(r.phi_prime), f"{r.time_ms:.1f}", r.error or ""] for r in rows]
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(c) for c in cells]
        return "\n".join(lines) + "\n"
    if fmt != "table":
        raise InputError(f"unknown format {fmt!r}")
    widths = [max(len(header[i]), *(len(c[i]) for c in cells)) if cells else len(header[i])
              for i in range(len(header))]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip()]
    for c in cells:
        lines.append("  ".join(c[i].ljust(widths[i]) for i in range(len(c))).rstrip())
    return "\n".join(lines) + "\n"


def format_random_summary(summary: Sequence[dict], fmt: str = "table") -> str:
    header = ("d", "samples", "m", "n_mean", "alpha_mean", "phi'_mean", "phi'_std", "ms_mean")
    cells = [[str(s["d"]), str(s["samples"]), str(s["m_bar"]),
              f"{s['n_bar_mean']:.2f}", f"{s['alpha_mean']:.2f}",
              f"{s['phi_prime_mean']:.2f}", f"{s['phi_prime_stddev']:.2f}",
              f"{s['time_ms_mean']:.1f}"] for s in summary]
    if fmt == "csv":
        return "\n".join([",".join(header)] + [",".join(c) for c in cells]) + "\n"
    widths = [max(len(header[i]), *(len(c[i]) for c in cells)) if cells else len(header[i])
              for i in range(len(header))]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip()]
    for c in cells:
        lines.append("  ".join(c[i].ljust(widths[i]) for i in range(len(c))).rstrip())
    return "\n".join(lines) + "\n"
