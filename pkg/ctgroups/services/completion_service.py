"""Completion witnesses for paths and cycles, and the presentation dump of an amalgam.

A witness sends every vertex group and edge group into one target SL_n. Paths land
in SL_n(q) on consecutive blocks; cycles land in SL_n(q[t, t^-1]), where the wrap
vertex straddles the first and last coordinates with a t-twist.
"""

import json
import logging
import random
from dataclasses import dataclass, field
from typing import Literal

from ctgroups.core.config import settings
from ctgroups.core.errors import MatrixError, PresentationParseError, WitnessScopeError
from ctgroups.core.field import FieldCtx, FieldElem, format_field_spec, parse_field_spec
from ctgroups.core.laurent import LaurentRing
from ctgroups.core.matrix import MAX_DIM, Mat, Ring, parse_mat, serialize_mat
from ctgroups.models.amalgam import CTAmalgam
from ctgroups.models.coords import DirectedEdge
from ctgroups.models.diagram import Diagram
from ctgroups.models.maps import BlockEmbedding
from ctgroups.models.reports import CheckReport
from ctgroups.services.diagram_service import cycle_diagram, is_cycle_diagram, is_path_diagram, path_diagram
from ctgroups.services.matrix_group_service import is_unipotent, sl2_generators
from ctgroups.services.standard_pair_service import standard_pair_from_generators

logger = logging.getLogger(__name__)

WitnessKind = Literal["spherical", "affine"]


@dataclass(frozen=True)
class CompletionWitness:
    dim: int
    ring: Ring
    kind: WitnessKind
    vertex_maps: dict[str, BlockEmbedding] = field(repr=False)
    # keyed by the stored orientation of each edge
    edge_maps: dict[tuple[str, str], BlockEmbedding] = field(repr=False)

    @property
    def target(self) -> str:
        return f"SL_{self.dim}({self.ring.name})"


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------

def _labels(count: int, labels: list[str] | None) -> list[str]:
    if labels is None:
        return [str(i) for i in range(1, count + 1)]
    if len(labels) != count:
        raise ValueError(f"expected {count} vertex labels, got {len(labels)}")
    return list(labels)


def spherical_completion(n: int, field: FieldCtx, labels: list[str] | None = None) -> CompletionWitness:
    """The path on n - 1 vertices into SL_n(q): vertex k on coordinates (k, k+1)."""
    if not 2 <= n <= MAX_DIM:
        raise WitnessScopeError(f"spherical witnesses cover 2 <= n <= {MAX_DIM}, got {n}")
    vs = _labels(n - 1, labels)
    vertex_maps = {v: BlockEmbedding(n, (k, k + 1), field) for k, v in enumerate(vs)}
    edge_maps = {(vs[k], vs[k + 1]): BlockEmbedding(n, (k, k + 1, k + 2), field) for k in range(n - 2)}
    return CompletionWitness(dim=n, ring=field, kind="spherical", vertex_maps=vertex_maps, edge_maps=edge_maps)


def affine_completion(n: int, field: FieldCtx, labels: list[str] | None = None) -> CompletionWitness:
    """The n-cycle into SL_n(q[t, t^-1]).

    Vertices 1..n-1 sit on consecutive blocks. The wrap vertex n uses coordinates
    (n, 1) conjugated by diag(t, 1, ..., 1), so M = [[a, b], [c, d]] lands as
    (n,n) = a, (n,1) = b t^-1, (1,n) = c t, (1,1) = d.
    """
    if n < 4:
        raise WitnessScopeError(f"affine witnesses need a cycle of length at least 4, got {n}")
    if n > MAX_DIM:
        raise WitnessScopeError(f"affine witnesses cover n <= {MAX_DIM}, got {n}")
    vs = _labels(n, labels)
    ring = LaurentRing(field)
    one, t = ring.one(), ring.t()
    first = Mat.diag(ring, [t] + [one] * (n - 1))
    first_two = Mat.diag(ring, [t, t] + [one] * (n - 2))

    vertex_maps = {v: BlockEmbedding(n, (k, k + 1), ring) for k, v in enumerate(vs[:-1])}
    vertex_maps[vs[-1]] = BlockEmbedding(n, (n - 1, 0), ring, first)
    edge_maps = {(vs[k], vs[k + 1]): BlockEmbedding(n, (k, k + 1, k + 2), ring) for k in range(n - 2)}
    edge_maps[(vs[n - 2], vs[n - 1])] = BlockEmbedding(n, (n - 2, n - 1, 0), ring, first)
    edge_maps[(vs[n - 1], vs[0])] = BlockEmbedding(n, (n - 1, 0, 1), ring, first_two)
    return CompletionWitness(dim=n, ring=ring, kind="affine", vertex_maps=vertex_maps, edge_maps=edge_maps)


def evaluate_witness(w: CompletionWitness, c: FieldElem) -> CompletionWitness:
    """Specialize t -> c (c nonzero), giving a witness into SL_n(q)."""
    if w.ring.is_field:
        return w
    if c.is_zero():
        raise MatrixError("t can only be specialized to a nonzero value")
    field = w.ring.field

    def at(x):
        return x.evaluate(c)

    return CompletionWitness(
        dim=w.dim,
        ring=field,
        kind=w.kind,
        vertex_maps={v: e.specialize(at, field) for v, e in w.vertex_maps.items()},
        edge_maps={k: e.specialize(at, field) for k, e in w.edge_maps.items()},
    )


def _chain_order(d: Diagram, closed: bool) -> list[str] | None:
    """Vertices ordered so every stored edge points forward along the path or cycle."""
    succ = {a: b for a, b in d.edges}
    if len(succ) != len(d.edges):
        return None
    if closed:
        start = min(d.vertices)
    else:
        heads = [v for v in d.vertices if v not in succ.values()]
        if len(heads) != 1:
            return None
        start = heads[0]
    order = [start]
    while order[-1] in succ and len(order) <= len(d.vertices):
        nxt = succ[order[-1]]
        if nxt == start:
            break
        order.append(nxt)
    if len(order) != len(d.vertices):
        return None
    return order


def completion_for(A: CTAmalgam) -> CompletionWitness:
    """Pick the witness matching the amalgam's diagram, or raise WitnessScopeError."""
    d = A.diagram
    if not A.pointing.is_trivial():
        raise WitnessScopeError("completion witnesses cover the trivial pointing only")
    if A.convention != "forward":
        raise WitnessScopeError("completion witnesses use the forward block convention")
    if len(d.vertices) == 1:
        return spherical_completion(2, A.field, list(d.vertices))
    if is_path_diagram(d):
        order = _chain_order(d, closed=False)
        if order is None:
            raise WitnessScopeError("path edges must all point the same way along the path")
        return spherical_completion(len(order) + 1, A.field, order)
    if is_cycle_diagram(d):
        order = _chain_order(d, closed=True)
        if order is None:
            raise WitnessScopeError("cycle edges must all point the same way around the cycle")
        return affine_completion(len(order), A.field, order)
    raise WitnessScopeError("no completion witness available: the diagram is neither a path nor a cycle")


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

def verify_completion(A: CTAmalgam, w: CompletionWitness, seed: int = 0) -> CheckReport:
    """Compatibility squares per directed edge and generator, commutation across
    non-edges, determinant one, and injectivity of each vertex map on a sample."""
    report = CheckReport()
    d = A.diagram
    gens = sl2_generators(A.field)
    if set(w.vertex_maps) != set(d.vertices) or {tuple(sorted(k)) for k in w.edge_maps} != {
        tuple(sorted(e)) for e in d.edges
    }:
        report.add("shape", "witness", False, "witness does not match the diagram")
        return report
    one = w.ring.one()

    for v in d.vertices:
        phi_v = w.vertex_maps[v]
        report.add("determinant", v, all(phi_v(s).det() == one for s in gens))
    for a, b in d.edges:
        hat = w.edge_maps.get((a, b))
        if hat is None:
            # witness stored the edge the other way round
            report.add("orientation", f"{a} {b}", False, "edge map keyed against the diagram orientation")
            continue
        for e in (DirectedEdge(a, b), DirectedEdge(b, a)):
            inc = A.inclusion(e)
            phi_v = w.vertex_maps[e.source]
            for k, s in enumerate(gens):
                report.add("square", f"{e} #{k}", hat(inc(s)) == phi_v(s))

    for a, b in d.non_edges():
        pa, pb = w.vertex_maps[a], w.vertex_maps[b]
        commute = all(pa(g) * pb(h) == pb(h) * pa(g) for g in gens for h in gens)
        report.add("non-edge", f"{a} {b}", commute)

    rng = random.Random(seed)
    sample = set(gens)
    for _ in range(settings.NONTRIVIALITY_SAMPLE):
        x = gens[rng.randrange(len(gens))]
        for _ in range(3):
            x = x * gens[rng.randrange(len(gens))]
        sample.add(x)
    for v in d.vertices:
        images = {w.vertex_maps[v](x) for x in sample}
        report.add("injective", v, len(images) == len(sample))

    failed = report.failures()
    if failed:
        logger.warning(f"{len(failed)} completion checks failed, first: {failed[0].name} {failed[0].subject}")
    else:
        logger.info(f"Completion into {w.target} verified: {len(report.checks)} checks")
    return report


# ---------------------------------------------------------------------------
# Presentation dump
# ---------------------------------------------------------------------------

def generator_names(field: FieldCtx) -> list[str]:
    """Names matching the order of sl2_generators: x+k then x-k for basis element k."""
    return [f"x+{k}" for k in range(field.m)] + [f"x-{k}" for k in range(field.m)]


def _mat_json(m: Mat) -> str:
    return json.dumps(serialize_mat(m), separators=(",", ":"))


def emit_presentation(A: CTAmalgam) -> str:
    field = A.field
    gens = sl2_generators(field)
    names = generator_names(field)
    lines = [f"FIELD {format_field_spec(field)}", f"CONVENTION {A.convention}"]
    for v in A.diagram.vertices:
        lines.append(f"VERTEX {v}")
        lines.extend(f"GEN {v} {name} {_mat_json(s)}" for name, s in zip(names, gens))
    for a, b in A.diagram.edges:
        lines.append(f"EDGE {a} {b}")
        for e in (DirectedEdge(a, b), DirectedEdge(b, a)):
            inc = A.inclusion(e)
            lines.extend(f"IMAGE {e.source} {e.target} {name} {_mat_json(inc(s))}" for name, s in zip(names, gens))
    lines.extend(f"NONEDGE {a} {b}" for a, b in A.diagram.non_edges())
    return "\n".join(lines) + "\n"


@dataclass
class Presentation:
    field: FieldCtx
    convention: str
    vertices: list[str]
    generators: dict[str, dict[str, Mat]]
    edges: list[tuple[str, str]]
    images: dict[tuple[str, str], dict[str, Mat]]
    non_edges: list[tuple[str, str]]

    @property
    def diagram(self) -> Diagram:
        return Diagram(vertices=tuple(self.vertices), edges=tuple(self.edges))


def _parse_matrix(field: FieldCtx | None, text: str, line_no: int) -> Mat:
    if field is None:
        raise PresentationParseError("FIELD must come first", line_no)
    try:
        return parse_mat(field, json.loads(text))
    except (json.JSONDecodeError, ValueError) as exc:
        raise PresentationParseError(f"bad matrix: {exc}", line_no) from exc


def parse_presentation(text: str) -> Presentation:
    field = None
    convention = "forward"
    vertices: list[str] = []
    generators: dict[str, dict[str, Mat]] = {}
    edges: list[tuple[str, str]] = []
    images: dict[tuple[str, str], dict[str, Mat]] = {}
    non_edges: list[tuple[str, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        kind, _, rest = line.partition(" ")
        parts = rest.split(" ", 3)
        if kind == "FIELD" and len(parts) == 1:
            try:
                field = parse_field_spec(parts[0])
            except ValueError as exc:
                raise PresentationParseError(str(exc), line_no) from exc
        elif kind == "CONVENTION" and len(parts) == 1:
            convention = parts[0]
        elif kind == "VERTEX" and len(parts) == 1:
            vertices.append(parts[0])
            generators[parts[0]] = {}
        elif kind == "GEN" and len(parts) == 3:
            v, name, body = parts
            if v not in generators:
                raise PresentationParseError(f"generator for undeclared vertex {v!r}", line_no)
            generators[v][name] = _parse_matrix(field, body, line_no)
        elif kind == "EDGE" and len(parts) == 2:
            a, b = parts
            edges.append((a, b))
            images[(a, b)] = {}
            images[(b, a)] = {}
        elif kind == "IMAGE" and len(parts) == 4:
            a, b, name, body = parts
            if (a, b) not in images:
                raise PresentationParseError(f"image on undeclared edge {a} {b}", line_no)
            images[(a, b)][name] = _parse_matrix(field, body, line_no)
        elif kind == "NONEDGE" and len(parts) == 2:
            non_edges.append((parts[0], parts[1]))
        else:
            raise PresentationParseError(f"malformed line {line!r}", line_no)
    if field is None:
        raise PresentationParseError("missing FIELD line")
    return Presentation(
        field=field,
        convention=convention,
        vertices=vertices,
        generators=generators,
        edges=edges,
        images=images,
        non_edges=non_edges,
    )


def verify_presentation(pres: Presentation) -> CheckReport:
    """Re-check a parsed dump: each edge carries a standard pair, images respect the
    commutation and unipotence of the generators, and the non-edges are complete."""
    report = CheckReport()
    field = pres.field
    try:
        d = pres.diagram
    except ValueError as exc:
        report.add("diagram", "presentation", False, str(exc))
        return report
    names = generator_names(field)
    for a, b in pres.edges:
        forward, backward = pres.images[(a, b)], pres.images[(b, a)]
        if any(name not in forward or name not in backward for name in names):
            report.add("complete", f"{a} {b}", False, "missing generator images")
            continue
        report.add("complete", f"{a} {b}", True)
        g1 = [forward[name] for name in names]
        g2 = [backward[name] for name in names]
        report.add("CT2", f"{a} {b}", standard_pair_from_generators(g1, g2, field) is not None)
        for (src, dst), table in (((a, b), forward), ((b, a), backward)):
            subject = f"{src}->{dst}"
            source = pres.generators.get(src, {})
            report.add("in-SL3", subject, all(table[x].is_special() for x in names))
            report.add("unipotent", subject, all(is_unipotent(table[x]) for x in names))
            relations = all(
                (table[x] * table[y] == table[y] * table[x])
                == (source[x] * source[y] == source[y] * source[x])
                for x in names
                for y in names
                if x in source and y in source
            )
            report.add("relations", subject, relations)
    expected = {tuple(sorted(pair)) for pair in d.non_edges()}
    report.add("non-edges", "presentation", {tuple(sorted(pair)) for pair in pres.non_edges} == expected)
    return report


def standard_witness_diagram(kind: WitnessKind, n: int) -> Diagram:
    """The diagram a standard witness of dimension n is built for."""
    return path_diagram(n - 1) if kind == "spherical" else cycle_diagram(n)
