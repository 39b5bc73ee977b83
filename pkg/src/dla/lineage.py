"""Lineage DAG construction, license-range computation, and capture selection.

The graph points from a collector to what it collected from: an edge
``(parent, child)`` records that ``parent`` gathered content from ``child``.
The root is the dataset under analysis and must reach every other node.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from .errors import (
    AmbiguousRange,
    CycleDetected,
    DanglingReference,
    MissingOriginYear,
    NoDatasetAncestor,
    ParseError,
    UnreachableNode,
)
from .model import (
    CaptureStatus,
    LicenseCapture,
    LicenseRange,
    ProvenanceRecord,
    SubjectKind,
    _check_fields,
    _expect_mapping,
    _get_int,
    _get_list,
    _get_str,
)


@dataclass(frozen=True)
class LineageGraph:
    """Validated, canonically ordered lineage DAG.

    Construct through :func:`build_lineage`; the constructor itself does not
    re-run structural validation.
    """

    nodes: Mapping[str, ProvenanceRecord]
    edges: tuple[tuple[str, str], ...]
    root_id: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", dict(self.nodes))
        object.__setattr__(self, "edges", tuple((p, c) for p, c in self.edges))

    def children(self, node_id: str) -> tuple[str, ...]:
        return tuple(c for p, c in self.edges if p == node_id)

    def parents(self, node_id: str) -> tuple[str, ...]:
        return tuple(p for p, c in self.edges if c == node_id)

    @property
    def root(self) -> ProvenanceRecord:
        return self.nodes[self.root_id]

    def to_dict(self) -> dict[str, Any]:
        return {
            "records": [self.nodes[k].to_dict() for k in self.nodes],
            "edges": [list(edge) for edge in self.edges],
            "root_id": self.root_id,
        }

    @classmethod
    def from_dict(cls, data: Any, path: str = "lineage", strict: bool = True) -> "LineageGraph":
        data = _expect_mapping(data, path)
        _check_fields(data, path, {"records", "edges", "root_id"}, set(), strict)
        records = [
            ProvenanceRecord.from_dict(item, f"{path}.records[{i}]", strict)
            for i, item in enumerate(_get_list(data, "records", path))
        ]
        edges: list[tuple[str, str]] = []
        for i, item in enumerate(_get_list(data, "edges", path)):
            if not isinstance(item, (list, tuple)) or len(item) != 2:
                raise ParseError(f"{path}.edges[{i}]", "expected [parent_id, child_id] pair")
            edges.append((str(item[0]), str(item[1])))
        return build_lineage(records, edges, _get_str(data, "root_id", path))


def _find_cycle(adjacency: Mapping[str, Sequence[str]]) -> tuple[str, ...] | None:
    """Return one directed cycle as (n0, ..., n0), or None if acyclic."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {node: WHITE for node in adjacency}
    stack: list[str] = []

    def visit(node: str) -> tuple[str, ...] | None:
        color[node] = GRAY
        stack.append(node)
        for child in adjacency[node]:
            if color[child] == GRAY:
                start = stack.index(child)
                return tuple(stack[start:]) + (child,)
            if color[child] == WHITE:
                found = visit(child)
                if found:
                    return found
        stack.pop()
        color[node] = BLACK
        return None

    for node in sorted(adjacency):
        if color[node] == WHITE:
            found = visit(node)
            if found:
                return found
    return None


def build_lineage(
    records: Iterable[ProvenanceRecord],
    edges: Iterable[tuple[str, str] | Sequence[str]],
    root: str,
) -> LineageGraph:
    """Assemble and validate a lineage graph.

    Nodes and edges are stored sorted lexicographically by id, so permuting
    the inputs yields an identical graph.

    Raises:
        DanglingReference: an edge endpoint or the root names no record.
        CycleDetected: the edge set contains a directed cycle (one is named).
        UnreachableNode: a non-root node cannot be reached from the root.
        ParseError: duplicate subject ids in ``records``.
    """
    nodes: dict[str, ProvenanceRecord] = {}
    for record in records:
        if record.subject_id in nodes:
            raise ParseError("records", f"duplicate subject_id {record.subject_id!r}")
        nodes[record.subject_id] = record

    edge_list = sorted((str(p), str(c)) for p, c in edges)
    for parent, child in edge_list:
        if parent not in nodes:
            raise DanglingReference(parent)
        if child not in nodes:
            raise DanglingReference(child)
    if root not in nodes:
        raise DanglingReference(root)

    adjacency: dict[str, list[str]] = {node_id: [] for node_id in sorted(nodes)}
    for parent, child in edge_list:
        adjacency[parent].append(child)

    cycle = _find_cycle(adjacency)
    if cycle:
        raise CycleDetected(cycle)

    reachable = {root}
    queue = deque([root])
    while queue:
        current = queue.popleft()
        for child in adjacency[current]:
            if child not in reachable:
                reachable.add(child)
                queue.append(child)
    for node_id in sorted(nodes):
        if node_id not in reachable:
            raise UnreachableNode(node_id)

    ordered_nodes = {node_id: nodes[node_id] for node_id in sorted(nodes)}
    return LineageGraph(nodes=ordered_nodes, edges=tuple(edge_list), root_id=root)


def compute_license_range(node_id: str, graph: LineageGraph) -> LicenseRange:
    """License range for one node.

    Datasets use their own origin year: the range runs from the year before
    the origin to the origin. Websites and search engines inherit the range
    of their nearest dataset ancestor (the dataset they fed content into).

    Raises:
        KeyError: unknown node id.
        MissingOriginYear: a dataset node without an origin year.
        NoDatasetAncestor: a non-dataset node with no dataset upstream.
        AmbiguousRange: two equally near dataset ancestors disagree.
    """
    record = graph.nodes[node_id]
    if record.subject_kind is SubjectKind.DATASET:
        if record.origin_year is None:
            raise MissingOriginYear(node_id)
        return LicenseRange.ending_at(record.origin_year)

    # Breadth-first walk upward; the first level containing dataset nodes
    # decides, and all of them must agree.
    level = {node_id}
    seen = {node_id}
    while level:
        datasets = sorted(
            n for n in level if graph.nodes[n].subject_kind is SubjectKind.DATASET
        )
        if datasets:
            ranges = {d: compute_license_range(d, graph) for d in datasets}
            distinct = {r for r in ranges.values()}
            if len(distinct) > 1:
                raise AmbiguousRange(node_id, tuple(datasets))
            return next(iter(distinct))
        next_level: set[str] = set()
        for n in level:
            for parent in graph.parents(n):
                if parent not in seen:
                    seen.add(parent)
                    next_level.add(parent)
        level = next_level
    raise NoDatasetAncestor(node_id)


@dataclass(frozen=True)
class CaptureInput:
    """One dated license snapshot offered for selection."""

    year: int
    url: str
    content: str

    def to_dict(self) -> dict[str, Any]:
        return {"year": self.year, "url": self.url, "content": self.content}

    @classmethod
    def from_dict(cls, data: Any, path: str = "capture", strict: bool = True) -> "CaptureInput":
        data = _expect_mapping(data, path)
        _check_fields(data, path, {"year", "url", "content"}, set(), strict)
        return cls(
            year=_get_int(data, "year", path),
            url=_get_str(data, "url", path),
            content=_get_str(data, "content", path),
        )


def parse_capture_list(data: Any, path: str = "captures", strict: bool = True) -> list[CaptureInput]:
    if not isinstance(data, list):
        raise ParseError(path, f"expected array of captures, got {type(data).__name__}")
    return [CaptureInput.from_dict(item, f"{path}[{i}]", strict) for i, item in enumerate(data)]


def select_capture(
    source_id: str,
    captures: Sequence[CaptureInput],
    license_range: LicenseRange,
) -> LicenseCapture:
    """Pick the applicable license capture for a source.

    Preference order: the earliest capture dated inside the license range;
    failing that, the earliest capture at all (flagged as a fallback); failing
    that, an unavailable marker. Same-year ties go to the smallest URL.
    """
    def pick(pool: Sequence[CaptureInput]) -> CaptureInput:
        return min(pool, key=lambda c: (c.year, c.url))

    in_range = [c for c in captures if c.year in license_range]
    if in_range:
        chosen = pick(in_range)
        status = CaptureStatus.IN_RANGE
    elif captures:
        chosen = pick(captures)
        status = CaptureStatus.OUT_OF_RANGE_FALLBACK
    else:
        return LicenseCapture(source_id=source_id, status=CaptureStatus.UNAVAILABLE)
    return LicenseCapture(
        source_id=source_id,
        status=status,
        capture_year=chosen.year,
        capture_url=chosen.url,
        content=chosen.content,
    )
