"""Readers for permutation, Cayley-table and matrix input files."""

from __future__ import annotations

import re
from pathlib import Path

from .group import (DEFAULT_MAX_ORDER, FiniteGroup, cycles_to_perm, from_matrices,
                    from_permutations, from_table)

MAX_INPUT_BYTES = 10 * 1024 * 1024


class InputError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        yield lineno, body


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(line: str, lineno: int | None = None) -> list[list[int]]:
    """``(1 2 3)(4 5)`` -> ``[[1, 2, 3], [4, 5]]``; ``()`` is the identity."""
    cycles = []
    pos = 0
    stripped = line.rstrip()
    while pos < len(stripped):
        if stripped[pos].isspace():
            pos += 1
            continue
        m = _CYCLE.match(stripped, pos)
        if not m:
            raise InputError("expected a cycle like (1 2 3)", lineno, pos + 1)
        body = m[1].replace(",", " ").split()
        pts = []
        for tok in body:
            if not tok.isdigit() or int(tok) < 1:
                col = m.start(1) + m[1].find(tok) + 1
                raise InputError(f"bad point {tok!r}; points are positive integers", lineno, col)
            pts.append(int(tok))
        if len(set(pts)) != len(pts):
            raise InputError("point repeated inside a cycle", lineno, m.start() + 1)
        if pts:
            cycles.append(pts)
        pos = m.end()
    return cycles


def parse_permutation_text(text: str) -> tuple[list[tuple[int, ...]], int]:
    parsed = []
    degree = 1
    for lineno, body in _content_lines(text):
        if not body.strip():
            continue
        cycles = parse_cycles(body, lineno)
        parsed.append((lineno, cycles))
        degree = max([degree] + [p for c in cycles for p in c])
    gens = []
    for lineno, cycles in parsed:
        try:
            gens.append(cycles_to_perm(cycles, degree))
        except ValueError as exc:
            raise InputError(str(exc), lineno) from None
    return gens, degree


def _ints(body: str, lineno: int) -> list[int]:
    out = []
    for m in re.finditer(r"\S+", body):
        try:
            out.append(int(m[0]))
        except ValueError:
            raise InputError(f"expected an integer, found {m[0]!r}", lineno, m.start() + 1) from None
    return out


def parse_table_text(text: str) -> list[list[int]]:
    rows = [(ln, b) for ln, b in _content_lines(text) if b.strip()]
    if not rows:
        raise InputError("empty table file")
    ln, first = rows[0]
    head = _ints(first, ln)
    if len(head) != 1 or head[0] < 1:
        raise InputError("first line must be the group order", ln, 1)
    n = head[0]
    if len(rows) - 1 != n:
        raise InputError(f"expected {n} table rows, found {len(rows) - 1}")
    table = []
    for ln, body in rows[1:]:
        row = _ints(body, ln)
        if len(row) != n:
            raise InputError(f"expected {n} entries, found {len(row)}", ln)
        table.append(row)
    return table


def parse_matrix_text(text: str) -> tuple[int, int, list[list[list[int]]]]:
    lines = list(_content_lines(text))
    idx = 0
    while idx < len(lines) and not lines[idx][1].strip():
        idx += 1
    if idx == len(lines):
        raise InputError("empty matrix file")
    ln, header = lines[idx]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "matrix":
        raise InputError("header must be 'matrix p n'", ln, 1)
    try:
        p, n = int(parts[1]), int(parts[2])
    except ValueError:
        raise InputError("header must be 'matrix p n' with integers", ln, 1) from None
    if n < 1:
        raise InputError("matrix dimension must be positive", ln)
    gens, block = [], []
    for ln, body in lines[idx + 1:]:
        if not body.strip():
            if block:
                raise InputError(f"generator block has {len(block)} rows, expected {n}", ln)
            continue
        row = _ints(body, ln)
        if len(row) != n:
            raise InputError(f"expected {n} entries, found {len(row)}", ln)
        block.append(row)
        if len(block) == n:
            gens.append(block)
            block = []
    if block:
        raise InputError(f"generator block has {len(block)} rows, expected {n}")
    return p, n, gens


def detect_format(text: str) -> str:
    for _, body in _content_lines(text):
        s = body.strip()
        if not s:
            continue
        if s.startswith("matrix"):
            return "matrix"
        if s.isdigit():
            return "table"
        return "perm"
    return "perm"


def read_group(path, fmt: str | None = None, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    p = Path(path)
    if p.stat().st_size > MAX_INPUT_BYTES:
        raise InputError(f"input file {p} is larger than 10 MB")
    text = p.read_text(encoding="utf-8")
    return group_from_text(text, fmt, max_order=max_order, name=p.stem)


def group_from_text(text: str, fmt: str | None = None, *,
                    max_order: int = DEFAULT_MAX_ORDER, name: str = "input") -> FiniteGroup:
    fmt = fmt or detect_format(text)
    if fmt == "perm":
        gens, degree = parse_permutation_text(text)
        return from_permutations(gens, degree, max_order=max_order, name=name)
    if fmt == "table":
        return from_table(parse_table_text(text), max_order=max_order, name=name)
    if fmt == "matrix":
        p, n, gens = parse_matrix_text(text)
        return from_matrices(gens, p, n, max_order=max_order, name=name)
    raise InputError(f"unknown format {fmt!r}")
