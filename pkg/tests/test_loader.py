import os
import sys
from io import StringIO

import pytest

# Add the source directory to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), "..", "src"))

from treeenergy.loader import (
    CycleError,
    DisconnectedError,
    DuplicateEdgeError,
    EdgeListError,
    EdgeListLoadError,
    MalformedLineError,
    NonContiguousIdsError,
    load_edgelist,
    load_table1_fixture,
    read_edgelist,
    write_edgelist,
)
from treeenergy.trees import Tree, build_path


class TestReadEdgelist:
    """Test parsing of 'u v' edge lists."""

    def test_valid_path(self):
        """A well-formed list becomes a Tree."""
        tree = read_edgelist("0 1\n1 2\n")
        assert tree == build_path(3)

    def test_comments_and_blank_lines(self):
        """Comments and blank lines are skipped."""
        tree = read_edgelist("# a star\n\n0 1\n0 2\n   \n0 3\n")
        assert tree.degrees == (3, 1, 1, 1)

    def test_file_like_input(self):
        """Open text streams are accepted."""
        assert read_edgelist(StringIO("1 0\n")).vertex_count == 2

    def test_empty_is_single_vertex(self):
        """No edges at all means K_1."""
        assert read_edgelist("") == Tree(1, ())

    @pytest.mark.parametrize(
        "text,error,line",
        [
            ("0\n", MalformedLineError, 1),
            ("0 1\na b\n", MalformedLineError, 2),
            ("0 -1\n", MalformedLineError, 1),
            ("0 1\n1 1\n", MalformedLineError, 2),
            ("0 1\n1 0\n", DuplicateEdgeError, 2),
            ("0 1\n1 2\n2 0\n", CycleError, 3),
            ("0 1\n2 3\n", DisconnectedError, 2),
            ("0 1\n1 3\n", NonContiguousIdsError, 2),
        ],
    )
    def test_errors_carry_line_numbers(self, text, error, line):
        """Each defect raises its own error tied to the offending line."""
        with pytest.raises(error) as exc_info:
            read_edgelist(text)
        assert isinstance(exc_info.value, EdgeListError)
        assert exc_info.value.line_number == line
        assert f"line {line}" in str(exc_info.value)

    def test_huge_vertex_id(self):
        """A single far-off id is a gap error naming the first missing vertex."""
        with pytest.raises(NonContiguousIdsError) as exc_info:
            read_edgelist("0 1000000000\n")
        assert exc_info.value.line_number == 1
        assert "vertex 1 never appears" in str(exc_info.value)


class TestWriteAndLoad:
    """Test writing and loading edge-list files."""

    def test_write_sorted(self):
        """Edges come out sorted, newline-terminated."""
        tree = Tree(3, ((2, 1), (1, 0)))
        assert write_edgelist(tree) == "0 1\n1 2\n"

    def test_write_then_read(self):
        """Written output parses back to the same tree."""
        tree = Tree(5, ((0, 1), (0, 2), (2, 3), (2, 4)))
        assert read_edgelist(write_edgelist(tree)) == tree

    def test_load_file(self, tmp_path):
        """Files are read as UTF-8 edge lists."""
        path = tmp_path / "tree.txt"
        path.write_text("0 1\n1 2\n1 3\n", encoding="utf-8")
        assert load_edgelist(path).degrees == (1, 3, 1, 1)

    def test_missing_file(self, tmp_path):
        """A missing file raises EdgeListLoadError."""
        with pytest.raises(EdgeListLoadError):
            load_edgelist(tmp_path / "absent.txt")


class TestTable1Fixture:
    """Test the packaged Table 1 column."""

    def test_shape(self):
        """Sixty rows, one per delta in [8, 67]."""
        df = load_table1_fixture()
        assert len(df) == 60
        assert list(df.index) == list(range(8, 68))

    @pytest.mark.parametrize("delta,value", [(8, -0.00377), (23, -0.20792), (67, -0.38798)])
    def test_known_values(self, delta, value):
        """Spot values of the published column."""
        assert load_table1_fixture().loc[delta, "f_paper"] == pytest.approx(value)
