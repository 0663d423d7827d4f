"""DIMACS graph files and the vertex-label sidecar.

DIMACS (1-based vertices)::

    c lkneser graph
    c family local-kneser n=5 r=4 t=2
    p edge 30 15
    e 1 30
    ...

Edges are written once with ``u < v``, sorted.  The sidecar has one line per
vertex, ``index<TAB>A<TAB>B``, each set as comma separated ascending integers
(an empty set is an empty field).
"""

from __future__ import annotations

from pathlib import Path

from . import graphs, setkit
from .errors import SchemaError
from .graphs import Graph


def write_dimacs(g: Graph, fh) -> None:
    fh.write("c lkneser graph\n")
    if g.family in graphs.FAMILIES:
        params = " ".join(f"{k}={v}" for k, v in g.params.items())
        fh.write(f"c family {g.family} {params}\n")
    edges = g.edges()
    fh.write(f"p edge {len(g)} {len(edges)}\n")
    for u, v in edges:
        fh.write(f"e {u + 1} {v + 1}\n")


def write_labels(g: Graph, fh) -> None:
    for i, (a, b) in enumerate(g.labels, start=1):
        fh.write(f"{i}\t{setkit.format_set(a)}\t{setkit.format_set(b)}\n")


def export_graph(g: Graph, prefix) -> tuple[Path, Path]:
    prefix = Path(prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    dimacs = prefix.with_name(prefix.name + ".dimacs")
    labels = prefix.with_name(prefix.name + ".labels")
    with open(dimacs, "w") as fh:
        write_dimacs(g, fh)
    with open(labels, "w") as fh:
        write_labels(g, fh)
    return dimacs, labels


def read_dimacs(fh) -> tuple[int, list[tuple[int, int]], dict]:
    """Vertex count, 0-based edge list and the ``c family`` header (if any)."""
    n = None
    declared = None
    edges = []
    meta: dict = {}
    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "c":
            if len(parts) >= 3 and parts[1] == "family":
                meta["family"] = parts[2]
                for kv in parts[3:]:
                    k, _, v = kv.partition("=")
                    try:
                        meta[k] = int(v)
                    except ValueError:
                        raise SchemaError(f"line {lineno}: bad family parameter {kv!r}") from None
            continue
        if parts[0] == "p":
            if n is not None or len(parts) != 4 or parts[1] != "edge":
                raise SchemaError(f"line {lineno}: expected a single 'p edge V E' header")
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise SchemaError(f"line {lineno}: non-integer header") from None
            continue
        if parts[0] == "e":
            if n is None:
                raise SchemaError(f"line {lineno}: edge before header")
            try:
                u, v = int(parts[1]), int(parts[2])
            except (ValueError, IndexError):
                raise SchemaError(f"line {lineno}: malformed edge") from None
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise SchemaError(f"line {lineno}: edge {u} {v} out of range or a loop")
            edges.append((u - 1, v - 1))
            continue
        raise SchemaError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise SchemaError("missing 'p edge' header")
    if declared != len(edges):
        raise SchemaError(f"header declares {declared} edges, file has {len(edges)}")
    return n, edges, meta


def _parse_set(field: str, lineno: int) -> int:
    if field == "":
        return 0
    try:
        items = [int(x) for x in field.split(",")]
    except ValueError:
        raise SchemaError(f"line {lineno}: bad set {field!r}") from None
    if items != sorted(set(items)) or items[0] < 1:
        raise SchemaError(f"line {lineno}: set {field!r} is not ascending positive integers")
    return setkit.mask_of(items)


def read_labels(fh) -> list[tuple[int, int]]:
    labels = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise SchemaError(f"line {lineno}: expected 'index<TAB>A<TAB>B'")
        try:
            idx = int(fields[0])
        except ValueError:
            raise SchemaError(f"line {lineno}: bad index {fields[0]!r}") from None
        if idx != len(labels) + 1:
            raise SchemaError(f"line {lineno}: index {idx} out of sequence")
        a, b = _parse_set(fields[1], lineno), _parse_set(fields[2], lineno)
        if a & b:
            raise SchemaError(f"line {lineno}: A and B overlap")
        labels.append((a, b))
    return labels


def load_graph(dimacs_path, labels_path) -> Graph:
    """Read a graph plus sidecar; family graphs are rebuilt and compared edge for edge."""
    with open(dimacs_path) as fh:
        n, edges, meta = read_dimacs(fh)
    with open(labels_path) as fh:
        labels = read_labels(fh)
    if len(labels) != n:
        raise SchemaError(f"sidecar lists {len(labels)} vertices, graph has {n}")
    family = meta.pop("family", None)
    if family is None:
        g = graphs.from_edges(n, edges)
        ground = max(((a | b).bit_length() for a, b in labels), default=0)
        return Graph("file", {"n": n}, ground, tuple(labels), g.adj)
    try:
        ref = graphs.build(family, **meta)
    except (KeyError, TypeError):
        raise SchemaError(f"family {family!r} with parameters {meta} is incomplete") from None
    if tuple(labels) != ref.labels:
        raise SchemaError("sidecar labels do not match the declared family")
    if sorted(tuple(sorted(e)) for e in edges) != ref.edges():
        raise SchemaError("edge list does not match the declared family")
    return ref
