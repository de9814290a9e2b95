from __future__ import annotations

import pytest

from engelgroups.group import MalformedTable, OrderCapExceeded
from engelgroups.io import (MAX_INPUT_BYTES, InputError, detect_format, group_from_text,
                            parse_cycles, parse_matrix_text, parse_permutation_text,
                            parse_table_text, read_group)


def test_cycles():
    assert parse_cycles("(1 2 3)(4 5)") == [[1, 2, 3], [4, 5]]
    assert parse_cycles("()") == []
    assert parse_cycles("(1,2)") == [[1, 2]]


@pytest.mark.parametrize("text, col", [("(1 2 3(", 1), ("(1 0)", 4), ("(1 a)", 4),
                                       ("(1 2 1)", 1), ("1 2", 1)])
def test_cycle_errors(text, col):
    with pytest.raises(InputError) as exc:
        parse_cycles(text, 3)
    assert exc.value.line == 3 and exc.value.column == col


def test_permutation_file():
    text = "# S3\n(1 2 3)\n\n(1 2)  # transposition\n"
    gens, degree = parse_permutation_text(text)
    assert degree == 3 and len(gens) == 2
    assert group_from_text(text).order == 6


def test_repeated_point_across_cycles():
    with pytest.raises(InputError) as exc:
        parse_permutation_text("(1 2)\n(1 2)(2 3)\n")
    assert exc.value.line == 2


def test_table_file():
    text = "3\n0 1 2\n1 2 0\n2 0 1\n"
    assert parse_table_text(text) == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    g = group_from_text(text)
    assert g.order == 3 and g.backend == "cayley-table"


@pytest.mark.parametrize("text, line", [("2\n0 1\n", None), ("2\n0 1\n1 x\n", 3),
                                        ("2\n0 1\n1\n", 3), ("x\n", 1)])
def test_table_errors(text, line):
    with pytest.raises(InputError) as exc:
        parse_table_text(text)
    assert exc.value.line == line


def test_table_semantic_errors():
    with pytest.raises(MalformedTable):
        group_from_text("2\n0 1\n1 1\n")


def test_matrix_file():
    text = "matrix 3 2\n0 2\n1 0\n\n1 1\n1 2\n"
    p, n, gens = parse_matrix_text(text)
    assert (p, n, len(gens)) == (3, 2, 2)
    assert group_from_text(text).order == 8


@pytest.mark.parametrize("text", ["matrix 3\n", "mat 3 2\n", "matrix 3 2\n1 0\n\n0 1\n",
                                  "matrix 3 2\n1 0 0\n0 1\n"])
def test_matrix_errors(text):
    with pytest.raises(InputError):
        parse_matrix_text(text)


def test_detect():
    assert detect_format("# c\n(1 2)\n") == "perm"
    assert detect_format("2\n0 1\n1 0\n") == "table"
    assert detect_format("matrix 2 2\n1 1\n0 1\n") == "matrix"


def test_read_group_and_caps(tmp_path):
    f = tmp_path / "s5.txt"
    f.write_text("(1 2 3 4 5)\n(1 2)\n")
    assert read_group(f).order == 120
    with pytest.raises(OrderCapExceeded):
        read_group(f, max_order=50)


def test_size_guard(tmp_path):
    f = tmp_path / "big.txt"
    f.write_bytes(b"#" * (MAX_INPUT_BYTES + 1))
    with pytest.raises(InputError, match="10 MB"):
        read_group(f)
