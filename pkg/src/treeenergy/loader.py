from collections.abc import Iterable
from importlib import resources
from pathlib import Path
from typing import TextIO, Union

import networkx as nx
import pandas as pd
import structlog

from treeenergy.trees import Tree

logger = structlog.get_logger(__name__)

TABLE1_RESOURCE = "table1.csv"


class EdgeListError(ValueError):
    """Base class for edge-list parse errors, always tied to an input line."""

    kind = "invalid edge list"

    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {self.kind}: {reason}")
        self.line_number = line_number
        self.reason = reason


class MalformedLineError(EdgeListError):
    kind = "malformed line"


class DuplicateEdgeError(EdgeListError):
    kind = "duplicate edge"


class CycleError(EdgeListError):
    kind = "cycle detected"


class DisconnectedError(EdgeListError):
    kind = "disconnected"


class NonContiguousIdsError(EdgeListError):
    kind = "vertex ids not contiguous"


class EdgeListLoadError(Exception):
    """Exception raised when an edge-list file cannot be found."""

    def __init__(self, file_path: Path):
        super().__init__(f"Edge list file not found: {file_path}")
        self.file_path = file_path


class FixtureLoadError(Exception):
    """Exception raised when the packaged Table 1 fixture cannot be read."""

    def __init__(self, original_error: Exception):
        super().__init__(f"Error reading Table 1 fixture: {original_error}")
        self.original_error = original_error


def _parse_line(line_number: int, line: str) -> tuple[int, int]:
    tokens = line.split()
    if len(tokens) != 2:
        raise MalformedLineError(line_number, f"expected 'u v', got {line!r}")
    try:
        u, v = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise MalformedLineError(line_number, f"non-integer vertex id in {line!r}") from None
    if u < 0 or v < 0:
        raise MalformedLineError(line_number, f"negative vertex id in {line!r}")
    if u == v:
        raise MalformedLineError(line_number, f"self-loop at vertex {u}")
    return u, v


def _lines(text: Union[str, TextIO]) -> Iterable[str]:
    return text.splitlines() if isinstance(text, str) else text


def read_edgelist(text: Union[str, TextIO]) -> Tree:
    """
    Parse "u v" lines with 0-based ids into a validated Tree.

    Blank lines and lines starting with '#' are ignored. An input without edges is the
    single-vertex tree.
    """
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    components = nx.utils.UnionFind()
    last_line = 0

    for line_number, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last_line = line_number
        u, v = _parse_line(line_number, line)

        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(line_number, f"edge {key[0]} {key[1]} already listed")
        if components[u] == components[v]:
            raise CycleError(line_number, f"edge {u} {v} closes a cycle")
        seen.add(key)
        components.union(u, v)
        edges.append(key)

    if not edges:
        logger.debug("Empty edge list read as single vertex")
        return Tree(1, ())

    ids = {vertex for edge in edges for vertex in edge}
    vertex_count = max(ids) + 1
    if len(ids) != vertex_count:
        # fewer ids than vertex_count leaves a gap below len(ids)
        missing = next(i for i, vertex in enumerate(sorted(ids)) if i != vertex)
        raise NonContiguousIdsError(last_line, f"vertex {missing} never appears (ids must be 0..{vertex_count - 1})")
    if len(edges) != vertex_count - 1:
        raise DisconnectedError(
            last_line, f"{len(edges)} edges on {vertex_count} vertices leave {vertex_count - len(edges)} components"
        )

    logger.debug("Edge list parsed", vertex_count=vertex_count, edge_count=len(edges))
    return Tree(vertex_count, tuple(edges))


def write_edgelist(tree: Tree) -> str:
    """Edges sorted lexicographically, one 'u v' per line, newline-terminated."""
    return "".join(f"{u} {v}\n" for u, v in tree.edges)


def load_edgelist(file_path: Union[str, Path]) -> Tree:
    file_path = Path(file_path)
    if not file_path.exists():
        raise EdgeListLoadError(file_path)

    tree = read_edgelist(file_path.read_text(encoding="utf-8"))
    logger.info("Edge list loaded", file_path=str(file_path), vertex_count=tree.vertex_count)
    return tree


def load_table1_fixture() -> pd.DataFrame:
    """The published f(delta) column for 8 <= delta <= 67, indexed by delta."""
    try:
        fixture = resources.files("treeenergy").joinpath("data").joinpath(TABLE1_RESOURCE)
        with fixture.open("r", encoding="utf-8") as handle:
            df = pd.read_csv(handle, dtype={"delta": "int64", "f_paper": "float64"})
    except Exception as e:
        raise FixtureLoadError(e) from e

    logger.debug("Table 1 fixture loaded", rows=len(df))
    return df.set_index("delta", drop=False)
