"""
Labelled trees, the T_a / T_b / T_c families and exhaustive enumeration up to isomorphism.

Family builders number vertices spine first, then branch vertices in attachment order, so the
same parameters always produce the same edge list.
"""

import itertools
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Optional

import networkx as nx
import structlog

logger = structlog.get_logger(__name__)

Edge = tuple[int, int]
CanonicalCode = tuple[Any, ...]

STRATEGIES = ("auto", "prufer", "free")
DEFAULT_PRUFER_MAX_ORDER = 8
DEFAULT_ENUMERATION_CAP = 16


class InvalidTreeError(ValueError):
    """Exception raised when an edge set does not describe a tree."""

    def __init__(self, reason: str):
        super().__init__(f"Invalid tree: {reason}")
        self.reason = reason


class FamilyParamsError(ValueError):
    """Exception raised when a family parameter is below its minimum."""

    def __init__(self, name: str, value: int, minimum: int):
        super().__init__(f"Family parameter {name}={value} is below the minimum {minimum}")
        self.name = name
        self.value = value
        self.minimum = minimum


class InfeasibleTreeError(ValueError):
    """Exception raised when no T_c tree exists for the requested (delta, order)."""

    def __init__(self, delta: int, order: int):
        super().__init__(
            f"No tree of order {order} with two adjacent degree-{delta} vertices and only 2-branches or pendents"
            f" (need {2 * delta} <= n <= {4 * delta - 2})"
        )
        self.delta = delta
        self.order = order


class EnumerationCapError(ValueError):
    """Exception raised when enumeration is requested above the configured cap."""

    def __init__(self, order: int, cap: int):
        super().__init__(f"Enumeration of trees on {order} vertices exceeds the cap of {cap}")
        self.order = order
        self.cap = cap


class UnknownStrategyError(ValueError):
    """Exception raised for an enumeration strategy outside STRATEGIES."""

    def __init__(self, strategy: str):
        super().__init__(f"Unknown enumeration strategy {strategy!r}, expected one of {STRATEGIES}")
        self.strategy = strategy


@dataclass(frozen=True)
class Tree:
    """A labelled simple tree on vertices 0..vertex_count-1, edges stored sorted as (min, max) pairs."""

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        normalized = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", normalized)
        self._validate()

    def _validate(self) -> None:
        n = self.vertex_count
        if n < 1:
            raise InvalidTreeError(f"vertex_count must be positive, got {n}")
        if len(self.edges) != n - 1:
            raise InvalidTreeError(f"{len(self.edges)} edges on {n} vertices, expected {n - 1}")

        components = nx.utils.UnionFind(range(n))
        for u, v in self.edges:
            if u == v:
                raise InvalidTreeError(f"self-loop at vertex {u}")
            if u < 0 or v >= n:
                raise InvalidTreeError(f"edge ({u}, {v}) uses a vertex outside 0..{n - 1}")
            if components[u] == components[v]:
                raise InvalidTreeError(f"edge ({u}, {v}) closes a cycle or repeats an edge")
            components.union(u, v)

    @property
    def order(self) -> int:
        return self.vertex_count

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        neighbours: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            neighbours[u].append(v)
            neighbours[v].append(u)
        return tuple(tuple(sorted(nbrs)) for nbrs in neighbours)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nbrs) for nbrs in self.adjacency)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    def count_degree(self, degree: int) -> int:
        return sum(1 for d in self.degrees if d == degree)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges)
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Tree":
        """Build a Tree from a networkx graph, relabelling nodes to 0..n-1 in sorted node order."""
        index = {node: i for i, node in enumerate(sorted(graph.nodes))}
        return cls(graph.number_of_nodes(), tuple((index[u], index[v]) for u, v in graph.edges))

    @cached_property
    def canonical_form(self) -> CanonicalCode:
        """Center-rooted canonical nested tuple; equal codes iff the trees are isomorphic."""
        graph = self.to_networkx()
        return min(nx.to_nested_tuple(graph, center, canonical_form=True) for center in tree_centers(self))

    def is_isomorphic(self, other: "Tree") -> bool:
        return self.vertex_count == other.vertex_count and self.canonical_form == other.canonical_form

    def canonical_relabel(self) -> "Tree":
        """Deterministic representative of the isomorphism class (BFS labels from the canonical root)."""
        return tree_from_code(self.canonical_form)


def tree_from_code(code: CanonicalCode) -> Tree:
    return Tree.from_networkx(nx.from_nested_tuple(code, sensible_relabeling=True))


def tree_centers(tree: Tree) -> tuple[int, ...]:
    """The one or two centers of a tree, found by repeatedly stripping leaves."""
    n = tree.vertex_count
    if n <= 2:
        return tuple(range(n))

    degree = list(tree.degrees)
    layer = [v for v in range(n) if degree[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        next_layer = []
        for leaf in layer:
            for neighbour in tree.adjacency[leaf]:
                degree[neighbour] -= 1
                if degree[neighbour] == 1:
                    next_layer.append(neighbour)
        layer = next_layer
    return tuple(sorted(layer))


@dataclass(frozen=True)
class FamilyParams:
    delta: int
    t: int

    def __post_init__(self) -> None:
        if self.delta < 3:
            raise FamilyParamsError("delta", self.delta, 3)
        if self.t < 3:
            raise FamilyParamsError("t", self.t, 3)

    @property
    def order(self) -> int:
        return family_order(self.delta, self.t)

    @classmethod
    def from_order(cls, delta: int, order: int) -> "FamilyParams":
        return cls(delta, order + 4 - 4 * delta)


def family_order(delta: int, t: int) -> int:
    return 4 * delta - 4 + t


def build_path(t: int) -> Tree:
    if t < 1:
        raise FamilyParamsError("t", t, 1)
    return Tree(t, tuple((i, i + 1) for i in range(t - 1)))


class _Builder:
    """Accumulates edges while handing out fresh vertex ids."""

    def __init__(self, spine_length: int):
        self.edges: list[Edge] = [(i, i + 1) for i in range(spine_length - 1)]
        self.next_id = spine_length

    def hang_two_branches(self, anchor: int, count: int) -> None:
        for _ in range(count):
            middle, leaf = self.next_id, self.next_id + 1
            self.edges.extend([(anchor, middle), (middle, leaf)])
            self.next_id += 2

    def hang_pendents(self, anchor: int, count: int) -> None:
        for _ in range(count):
            self.edges.append((anchor, self.next_id))
            self.next_id += 1

    def build(self) -> Tree:
        return Tree(self.next_id, tuple(self.edges))


def _family_a(delta: int, t: int) -> Tree:
    builder = _Builder(t)
    builder.hang_two_branches(0, delta - 1)
    builder.hang_two_branches(t - 1, delta - 1)
    return builder.build()


def _family_b(delta: int, t: int) -> Tree:
    builder = _Builder(t + 2)
    builder.hang_two_branches(0, delta - 1)
    builder.hang_two_branches(1, delta - 2)
    return builder.build()


def build_Ta(params: FamilyParams) -> Tree:
    """P_t with delta-1 hanging P_2's on each end."""
    return _family_a(params.delta, params.t)


def build_Tb(params: FamilyParams) -> Tree:
    """P_{t+2} with delta-1 hanging P_2's on vertex 0 and delta-2 on vertex 1."""
    return _family_b(params.delta, params.t)


def build_degenerate_pair(delta: int, t: int) -> tuple[Tree, Tree]:
    """
    The (T_a, T_b) pair without the delta >= 3, t >= 3 bounds.

    For delta = 2 both members are the path on t + 4 vertices.
    """
    if delta < 2:
        raise FamilyParamsError("delta", delta, 2)
    if t < 2:
        raise FamilyParamsError("t", t, 2)
    return _family_a(delta, t), _family_b(delta, t)


def tc_feasible(delta: int, order: int) -> bool:
    return delta >= 3 and 2 * delta <= order <= 4 * delta - 2


def build_Tc(delta: int, order: int) -> Tree:
    """
    Adjacent branching vertices u=0, v=1 carrying order-2*delta 2-branches in total.

    The remaining 4*delta-2-order attachments are pendents, u taking the larger half.
    Per vertex, 2-branches are numbered before pendents; u's attachments come before v's.
    """
    if delta < 3:
        raise FamilyParamsError("delta", delta, 3)
    if not tc_feasible(delta, order):
        raise InfeasibleTreeError(delta, order)

    pendents = 4 * delta - 2 - order
    u_pendents = (pendents + 1) // 2
    v_pendents = pendents // 2

    builder = _Builder(2)
    builder.hang_two_branches(0, delta - 1 - u_pendents)
    builder.hang_pendents(0, u_pendents)
    builder.hang_two_branches(1, delta - 1 - v_pendents)
    builder.hang_pendents(1, v_pendents)
    tree = builder.build()

    logger.debug("Built T_c", delta=delta, order=order, u_pendents=u_pendents, v_pendents=v_pendents)
    return tree


def has_two_max_degree_vertices(degrees: Iterable[int], delta: int) -> bool:
    counts = Counter(degrees)
    return max(counts) == delta and counts[delta] == 2


def _check_order(order: int, cap: int) -> None:
    if order < 1:
        raise InvalidTreeError(f"cannot enumerate trees on {order} vertices")
    if order > cap:
        raise EnumerationCapError(order, cap)


def _prufer_trees(order: int, delta: Optional[int]) -> Iterator[nx.Graph]:
    for sequence in itertools.product(range(order), repeat=order - 2):
        if delta is not None:
            # a label's degree is one more than its multiplicity in the sequence
            multiplicities = Counter(sequence)
            top = max(multiplicities.values())
            if top != delta - 1 or sum(1 for m in multiplicities.values() if m == top) != 2:
                continue
        yield nx.from_prufer_sequence(list(sequence))


def _free_trees(order: int, delta: Optional[int]) -> Iterator[nx.Graph]:
    for graph in nx.nonisomorphic_trees(order):
        if delta is None or has_two_max_degree_vertices((d for _, d in graph.degree), delta):
            yield graph


def _resolve_strategy(strategy: str, order: int, prufer_max_order: int) -> str:
    if strategy not in STRATEGIES:
        raise UnknownStrategyError(strategy)
    if strategy == "auto":
        return "prufer" if order <= prufer_max_order else "free"
    return strategy


def _unique_trees(graphs: Iterable[nx.Graph]) -> Iterator[Tree]:
    seen: set[CanonicalCode] = set()
    for graph in graphs:
        tree = Tree.from_networkx(graph)
        code = tree.canonical_form
        if code in seen:
            continue
        seen.add(code)
        yield tree_from_code(code)


def enumerate_trees(
    order: int,
    strategy: str = "auto",
    cap: int = DEFAULT_ENUMERATION_CAP,
    prufer_max_order: int = DEFAULT_PRUFER_MAX_ORDER,
) -> Iterator[Tree]:
    """
    Yield one canonically labelled representative per isomorphism class of trees on `order` vertices.

    `prufer` decodes every Prüfer sequence and keeps the first tree of each canonical class;
    `free` walks the networkx free-tree generator through the same canonical filter.
    `auto` uses `prufer` up to `prufer_max_order` vertices and `free` above it; both yield the
    same canonical representatives.
    """
    _check_order(order, cap)
    resolved = _resolve_strategy(strategy, order, prufer_max_order)
    logger.debug("Enumerating trees", order=order, strategy=resolved)
    if order <= 2:
        yield build_path(order)
        return
    source = _prufer_trees(order, None) if resolved == "prufer" else _free_trees(order, None)
    yield from _unique_trees(source)


def enumerate_constrained_trees(
    order: int,
    delta: int,
    strategy: str = "auto",
    cap: int = DEFAULT_ENUMERATION_CAP,
    prufer_max_order: int = DEFAULT_PRUFER_MAX_ORDER,
) -> Iterator[Tree]:
    """Trees on `order` vertices whose maximum degree `delta` is attained by exactly two vertices."""
    _check_order(order, cap)
    if order < 3:
        raise InvalidTreeError(f"constrained enumeration needs at least 3 vertices, got {order}")
    if delta < 3:
        raise FamilyParamsError("delta", delta, 3)
    resolved = _resolve_strategy(strategy, order, prufer_max_order)
    logger.debug("Enumerating constrained trees", order=order, delta=delta, strategy=resolved)
    source = _prufer_trees(order, delta) if resolved == "prufer" else _free_trees(order, delta)
    yield from _unique_trees(source)
