"""Activities-on-arrows project networks: parsing, validation, ordering and
the node/activity incidence matrix."""

from __future__ import annotations

import csv
import heapq
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CycleError, ParseError, ValidationError

VIRTUAL_START = "__start__"
VIRTUAL_FINISH = "__finish__"


@dataclass(frozen=True)
class Activity:
    id: str
    index: int
    source: str
    sink: str
    duration: float
    max_duration: float | None = None


@dataclass(frozen=True)
class ProjectNetwork:
    """A project network with activities on arrows.

    Instances built through :func:`parse_project` or :meth:`from_activities`
    with ``check=True`` are guaranteed analysis-ready.  The raw constructor
    performs no checks so that :func:`validate` can describe broken networks.
    """

    nodes: tuple[str, ...]
    activities: tuple[Activity, ...]
    start_node: str | None
    finish_node: str | None
    notes: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def from_activities(cls, activities, nodes=None, check=True, notes=()):
        """Build a network from ``(id, source, sink, duration[, max_duration])``
        tuples or mappings.  Node order defaults to first appearance."""
        acts = []
        for k, a in enumerate(activities):
            if isinstance(a, Activity):
                a = (a.id, a.source, a.sink, a.duration, a.max_duration)
            elif isinstance(a, dict):
                a = (a["id"], a["source"], a["sink"], a["duration"], a.get("max_duration"))
            aid, src, snk, dur, *rest = a
            mx = rest[0] if rest else None
            acts.append(Activity(str(aid), k, str(src), str(snk), float(dur),
                                 None if mx is None else float(mx)))
        order = [str(n) for n in nodes] if nodes is not None else []
        seen = set(order)
        for a in acts:
            for n in (a.source, a.sink):
                if n not in seen:
                    seen.add(n)
                    order.append(n)
        indeg = {n: 0 for n in order}
        outdeg = {n: 0 for n in order}
        for a in acts:
            outdeg[a.source] += 1
            indeg[a.sink] += 1
        starts = [n for n in order if indeg[n] == 0]
        finishes = [n for n in order if outdeg[n] == 0]
        net = cls(tuple(order), tuple(acts),
                  starts[0] if len(starts) == 1 else None,
                  finishes[0] if len(finishes) == 1 else None,
                  tuple(notes))
        if check:
            report = validate(net)
            if not report.ok:
                if report.cycle:
                    raise CycleError(report.cycle)
                raise ValidationError("invalid project network: " + "; ".join(report.violations),
                                      report.violations)
        return net

    @property
    def n_activities(self) -> int:
        return len(self.activities)

    @property
    def activity_ids(self) -> list[str]:
        return [a.id for a in self.activities]

    @property
    def durations(self) -> np.ndarray:
        return np.array([a.duration for a in self.activities], dtype=float)

    @property
    def max_durations(self) -> np.ndarray | None:
        """Vector of maximum durations, or None if any activity lacks one."""
        if any(a.max_duration is None for a in self.activities):
            return None
        return np.array([a.max_duration for a in self.activities], dtype=float)

    def out_activities(self) -> dict[str, list[Activity]]:
        out = {n: [] for n in self.nodes}
        for a in self.activities:
            out[a.source].append(a)
        return out

    def in_activities(self) -> dict[str, list[Activity]]:
        inc = {n: [] for n in self.nodes}
        for a in self.activities:
            inc[a.sink].append(a)
        return inc


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()
    cycle: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class IncidenceMatrix:
    matrix: np.ndarray
    node_order: tuple[str, ...]
    grounded: bool

    @property
    def rank(self) -> int:
        return int(np.linalg.matrix_rank(self.matrix))


def _find_cycle(nodes, activities):
    """Return one directed cycle as a closed node list, or ()."""
    succ = {n: [] for n in nodes}
    for a in activities:
        if a.source in succ and a.sink in succ:
            succ[a.source].append(a.sink)
    color = dict.fromkeys(nodes, 0)
    for root in nodes:
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        trail = [root]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                trail.pop()
            elif color[nxt] == 1:
                return tuple(trail[trail.index(nxt):] + [nxt])
            elif color[nxt] == 0:
                color[nxt] = 1
                trail.append(nxt)
                stack.append((nxt, iter(succ[nxt])))
    return ()


def validate(network: ProjectNetwork) -> ValidationReport:
    """List every violated invariant; an empty report means analysis-ready."""
    v = []
    nodes = list(network.nodes)
    node_set = set(nodes)
    if len(node_set) != len(nodes):
        v.append("duplicate node ids")
    if not network.activities:
        v.append("network has no activities")
    ids = [a.id for a in network.activities]
    dup = sorted({i for i in ids if ids.count(i) > 1})
    for i in dup:
        v.append(f"duplicate activity id {i!r}")
    for k, a in enumerate(network.activities):
        if a.index != k:
            v.append(f"activity {a.id!r} has index {a.index}, expected {k}")
        if a.source not in node_set or a.sink not in node_set:
            v.append(f"activity {a.id!r} references an unknown node")
        if a.source == a.sink:
            v.append(f"activity {a.id!r} is a self-loop on {a.source!r}")
        if not math.isfinite(a.duration) or a.duration < 0:
            v.append(f"activity {a.id!r} has negative or non-finite duration {a.duration}")
        if a.max_duration is not None and not a.max_duration >= a.duration:
            v.append(f"activity {a.id!r} has max_duration {a.max_duration} < duration {a.duration}")

    cycle = _find_cycle(nodes, network.activities)
    if cycle:
        v.append("cycle detected: " + " -> ".join(cycle))

    indeg = dict.fromkeys(nodes, 0)
    outdeg = dict.fromkeys(nodes, 0)
    for a in network.activities:
        if a.source in outdeg and a.sink in indeg:
            outdeg[a.source] += 1
            indeg[a.sink] += 1
    starts = [n for n in nodes if indeg[n] == 0]
    finishes = [n for n in nodes if outdeg[n] == 0]
    if not starts:
        v.append("no start node")
    elif len(starts) > 1:
        v.append("multiple start nodes: " + ", ".join(starts))
    if not finishes:
        v.append("no finish node")
    elif len(finishes) > 1:
        v.append("multiple finish nodes: " + ", ".join(finishes))
    if len(starts) == 1 and network.start_node != starts[0]:
        v.append(f"start_node is {network.start_node!r}, expected {starts[0]!r}")
    if len(finishes) == 1 and network.finish_node != finishes[0]:
        v.append(f"finish_node is {network.finish_node!r}, expected {finishes[0]!r}")

    touched = {a.source for a in network.activities} | {a.sink for a in network.activities}
    # with an ambiguous start, reachability is judged from every start that has arcs
    roots = [network.start_node] if network.start_node in node_set else [n for n in starts if n in touched]
    sinks = [network.finish_node] if network.finish_node in node_set else [n for n in finishes if n in touched]
    reach = set().union(*(_reach(r, network.activities, forward=True) for r in roots))
    coreach = set().union(*(_reach(r, network.activities, forward=False) for r in sinks))
    for n in nodes:
        if n not in reach:
            v.append(f"node {n!r} unreachable from start")
        if n not in coreach:
            v.append(f"node {n!r} cannot reach finish")
    return ValidationReport(tuple(v), cycle)


def _reach(root, activities, forward):
    adj = {}
    for a in activities:
        u, w = (a.source, a.sink) if forward else (a.sink, a.source)
        adj.setdefault(u, []).append(w)
    seen = {root}
    stack = [root]
    while stack:
        for w in adj.get(stack.pop(), ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def topological_order(network: ProjectNetwork) -> list[str]:
    """Kahn's algorithm; among ready nodes the lexicographically smallest id
    is emitted first."""
    indeg = dict.fromkeys(network.nodes, 0)
    for a in network.activities:
        indeg[a.sink] += 1
    out = network.out_activities()
    ready = [n for n, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        n = heapq.heappop(ready)
        order.append(n)
        for a in out[n]:
            indeg[a.sink] -= 1
            if indeg[a.sink] == 0:
                heapq.heappush(ready, a.sink)
    if len(order) != len(network.nodes):
        rest = [n for n in network.nodes if indeg[n] > 0]
        raise CycleError(_find_cycle(rest, network.activities))
    return order


def incidence_matrix(network: ProjectNetwork, grounded: bool = False) -> IncidenceMatrix:
    """Node x activity matrix with +1 at each activity's source and -1 at its
    sink.  Grounding drops the start-node row, leaving full row rank."""
    row = {n: i for i, n in enumerate(network.nodes)}
    H = np.zeros((len(network.nodes), network.n_activities), dtype=np.int64)
    for a in network.activities:
        H[row[a.source], a.index] = 1
        H[row[a.sink], a.index] = -1
    order = tuple(network.nodes)
    if grounded:
        keep = [i for i, n in enumerate(order) if n != network.start_node]
        H = H[keep]
        order = tuple(order[i] for i in keep)
    return IncidenceMatrix(H, order, grounded)


def flow_rhs(network: ProjectNetwork, node_order=None) -> np.ndarray:
    """Right-hand side b of the flow-conservation constraints: +1 at the
    start node, -1 at the finish node, 0 elsewhere."""
    order = network.nodes if node_order is None else node_order
    b = np.zeros(len(order), dtype=np.int64)
    for i, n in enumerate(order):
        if n == network.start_node:
            b[i] = 1
        elif n == network.finish_node:
            b[i] = -1
    return b


def add_virtual_terminals(network: ProjectNetwork) -> ProjectNetwork:
    """Join multiple sources (sinks) to a virtual start (finish) node with
    zero-duration dummy activities.  Each insertion is recorded in ``notes``."""
    if _find_cycle(list(network.nodes), network.activities):
        raise CycleError(_find_cycle(list(network.nodes), network.activities))
    indeg = dict.fromkeys(network.nodes, 0)
    outdeg = dict.fromkeys(network.nodes, 0)
    for a in network.activities:
        outdeg[a.source] += 1
        indeg[a.sink] += 1
    starts = [n for n in network.nodes if indeg[n] == 0]
    finishes = [n for n in network.nodes if outdeg[n] == 0]
    acts = [(a.id, a.source, a.sink, a.duration, a.max_duration) for a in network.activities]
    nodes = list(network.nodes)
    notes = list(network.notes)
    if len(starts) > 1:
        nodes.insert(0, VIRTUAL_START)
        for n in starts:
            aid = f"__dummy_start_{n}"
            acts.append((aid, VIRTUAL_START, n, 0.0, 0.0))
            notes.append(f"added dummy activity {aid}: {VIRTUAL_START} -> {n}")
    if len(finishes) > 1:
        nodes.append(VIRTUAL_FINISH)
        for n in finishes:
            aid = f"__dummy_finish_{n}"
            acts.append((aid, n, VIRTUAL_FINISH, 0.0, 0.0))
            notes.append(f"added dummy activity {aid}: {n} -> {VIRTUAL_FINISH}")
    return ProjectNetwork.from_activities(acts, nodes=nodes, notes=notes)


_with_virtual_terminals = add_virtual_terminals


# -- text formats -----------------------------------------------------------

def _number(value, what, line=None):
    if isinstance(value, bool):
        raise ParseError(f"{what} must be a number, got {value!r}", line)
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise ParseError(f"{what} must be a number, got {value!r}", line) from None
    if not math.isfinite(x):
        raise ParseError(f"{what} must be finite, got {value!r}", line)
    return x


def _check_values(acts, lines):
    ids = set()
    for (aid, _, _, dur, mx), line in zip(acts, lines):
        if aid in ids:
            raise ValidationError(f"duplicate activity id {aid!r}", [f"duplicate activity id {aid!r}"])
        ids.add(aid)
        if dur < 0:
            raise ValidationError(f"activity {aid!r} has negative duration {dur}")
        if mx is not None and mx < dur:
            raise ValidationError(f"activity {aid!r} has max_duration {mx} < duration {dur}")


def _parse_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{exc.msg} (column {exc.colno})", exc.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("activities"), list):
        raise ParseError("expected an object with an 'activities' list")
    nodes = doc.get("nodes")
    if nodes is not None and not isinstance(nodes, list):
        raise ParseError("'nodes' must be a list")
    acts = []
    for k, a in enumerate(doc["activities"]):
        where = f"activities[{k}]"
        if not isinstance(a, dict):
            raise ParseError(f"{where} must be an object")
        for key in ("id", "source", "sink", "duration"):
            if key not in a:
                raise ParseError(f"{where} is missing {key!r}")
        mx = a.get("max_duration")
        acts.append((str(a["id"]), str(a["source"]), str(a["sink"]),
                     _number(a["duration"], f"{where}.duration"),
                     None if mx is None else _number(mx, f"{where}.max_duration")))
    return nodes, acts, [None] * len(acts)


def _parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header = [h.strip() for h in rows[0]] if rows else []
    if header[:4] != ["id", "source", "sink", "duration"] or len(header) > 5 or (
            len(header) == 5 and header[4] != "max_duration"):
        raise ParseError("header must be id,source,sink,duration[,max_duration]", 1)
    acts, lines = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) not in (4, len(header)):
            raise ParseError(f"expected {len(header)} fields, got {len(row)}", lineno)
        row = [c.strip() for c in row]
        mx = row[4] if len(row) == 5 and row[4] != "" else None
        acts.append((row[0], row[1], row[2], _number(row[3], "duration", lineno),
                     None if mx is None else _number(mx, "max_duration", lineno)))
        lines.append(lineno)
    return None, acts, lines


def parse_project(text: str, format: str = "json", add_virtual_terminals: bool = False) -> ProjectNetwork:
    """Parse a network from JSON or edge-CSV text and validate it.

    Raises ParseError for syntax problems and ValidationError (or CycleError)
    for structural ones.
    """
    if format == "json":
        nodes, acts, lines = _parse_json(text)
    elif format in ("edge-csv", "csv"):
        nodes, acts, lines = _parse_csv(text)
    else:
        raise ValueError(f"unknown format {format!r}")
    _check_values(acts, lines)
    if add_virtual_terminals:
        raw = ProjectNetwork.from_activities(acts, nodes=nodes, check=False)
        return _with_virtual_terminals(raw)
    return ProjectNetwork.from_activities(acts, nodes=nodes)


def serialize_project(network: ProjectNetwork, format: str = "json") -> str:
    if format == "json":
        acts = []
        for a in network.activities:
            d = {"id": a.id, "source": a.source, "sink": a.sink, "duration": a.duration}
            if a.max_duration is not None:
                d["max_duration"] = a.max_duration
            acts.append(d)
        return json.dumps({"nodes": list(network.nodes), "activities": acts}, indent=2) + "\n"
    if format in ("edge-csv", "csv"):
        with_max = any(a.max_duration is not None for a in network.activities)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "source", "sink", "duration"] + (["max_duration"] if with_max else []))
        for a in network.activities:
            row = [a.id, a.source, a.sink, repr(a.duration)]
            if with_max:
                row.append("" if a.max_duration is None else repr(a.max_duration))
            w.writerow(row)
        return buf.getvalue()
    raise ValueError(f"unknown format {format!r}")


def load_project(path, format=None, add_virtual_terminals=False) -> ProjectNetwork:
    """Read a network file; the format is guessed from the suffix if omitted."""
    path = str(path)
    if format is None:
        format = "edge-csv" if path.lower().endswith(".csv") else "json"
    with open(path, encoding="utf-8") as fh:
        return parse_project(fh.read(), format, add_virtual_terminals=add_virtual_terminals)
