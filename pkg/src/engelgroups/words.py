"""Free-group words over ``x1, x2, ..., y``, Engel and tower words.

A word is a freely reduced tuple of signed letter codes: ``y`` has code 1
and ``x_i`` has code ``i + 1``; a negative code is the inverse letter.  Two
variable sequences (``u_n(x, y)``) are written in ``x1`` and ``y``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .group import CrossGroupError, FiniteGroup, GroupElement


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(WordSyntaxError):
    pass


class UnassignedVariableError(KeyError):
    pass


class SequenceBoundError(IndexError):
    pass


def var_code(name: str) -> int:
    if name == "y":
        return 1
    m = re.fullmatch(r"x([1-9]\d*)", name)
    if not m:
        raise ValueError(f"unknown variable {name!r}")
    return int(m[1]) + 1


def var_name(code: int) -> str:
    code = abs(code)
    return "y" if code == 1 else f"x{code - 1}"


def _reduce(codes) -> tuple[int, ...]:
    out: list[int] = []
    for c in codes:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    codes: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "codes", _reduce(self.codes))

    @classmethod
    def var(cls, name: str) -> Word:
        return cls((var_code(name),))

    @property
    def letters(self) -> list[tuple[str, int]]:
        return [(var_name(c), 1 if c > 0 else -1) for c in self.codes]

    @property
    def variables(self) -> set[str]:
        return {var_name(c) for c in self.codes}

    @property
    def is_identity(self) -> bool:
        return not self.codes

    def __len__(self):
        return len(self.codes)

    def __mul__(self, other: Word) -> Word:
        return Word(self.codes + other.codes)

    def inverse(self) -> Word:
        return Word(tuple(-c for c in reversed(self.codes)))

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        return Word(base.codes * abs(n))

    def substitute(self, mapping: Mapping[str, Word]) -> Word:
        """Simultaneous substitution of words for variables."""
        table = {var_code(k): v.codes for k, v in mapping.items()}
        inv = {k: Word(v).inverse().codes for k, v in table.items()}
        out: list[int] = []
        for c in self.codes:
            if c in table:
                out.extend(table[c])
            elif -c in inv:
                out.extend(inv[-c])
            else:
                out.append(c)
        return Word(tuple(out))

    def rename(self, shift: int) -> Word:
        """Shift every ``x_i`` to ``x_{i+shift}``; ``y`` is unchanged."""
        return Word(tuple(c if abs(c) == 1 else (c + shift if c > 0 else c - shift)
                          for c in self.codes))

    def __str__(self):
        if not self.codes:
            return "1"
        return "*".join(var_name(c) + ("" if c > 0 else "^-1") for c in self.codes)


X1 = Word.var("x1")
Y = Word.var("y")


def x(i: int) -> Word:
    return Word((i + 1,))


def comm(a: Word, b: Word) -> Word:
    """``[a, b] = a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


@lru_cache(maxsize=None)
def engel_word(n: int) -> Word:
    """``e_1 = [x1, y]``, ``e_n = [e_{n-1}, y]``."""
    if n < 1:
        raise ValueError("Engel words are indexed from 1")
    w = comm(X1, Y)
    for _ in range(n - 1):
        w = comm(w, Y)
    return w


# -- sequences and towers ----------------------------------------------------

@dataclass(frozen=True)
class CorrectSequence:
    """A sequence ``u_1, u_2, ...`` of two-variable words in ``x1`` and ``y``.

    ``bound`` is set for finite user-supplied prefixes.
    """

    name: str
    generator: Callable[[int], Word]
    bound: int | None = None

    def __getitem__(self, n: int) -> Word:
        if n < 1:
            raise SequenceBoundError("sequence indices start at 1")
        if self.bound is not None and n > self.bound:
            raise SequenceBoundError(f"index {n} beyond the sequence prefix of length {self.bound}")
        return self.generator(n)

    @classmethod
    def from_words(cls, name: str, words: Sequence[Word]) -> CorrectSequence:
        words = tuple(words)
        for w in words:
            extra = w.variables - {"x1", "y"}
            if extra:
                raise ValueError(f"sequence words use only x1 and y, found {sorted(extra)}")
        return cls(name, lambda n: words[n - 1], len(words))


ENGEL = CorrectSequence("engel", engel_word)


def read_sequence(text: str, name: str = "user") -> CorrectSequence:
    """One expression per line defines ``u_1, u_2, ...``; blank lines and
    ``#`` comments are skipped."""
    words = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        try:
            words.append(parse_word(body))
        except WordSyntaxError as exc:
            raise WordSyntaxError(f"line {lineno}: {exc.args[0]}", exc.position) from None
    return CorrectSequence.from_words(name, words)


def read_sequence_file(path) -> CorrectSequence:
    p = Path(path)
    return read_sequence(p.read_text(encoding="utf-8"), name=p.stem)


def tower_word(seq: CorrectSequence, idx: Sequence[int]) -> Word:
    """``u_(n1)(x1; y) = u_n1(x1, y)`` and
    ``u_(n1..nk) = u_nk(x_k; u_(n1..n_{k-1}))``."""
    idx = check_tower_index(idx)
    w = seq[idx[0]]
    for level, n in enumerate(idx[1:], start=2):
        w = seq[n].substitute({"x1": x(level), "y": w})
    return w


def check_tower_index(idx: Sequence[int]) -> tuple[int, ...]:
    idx = tuple(int(n) for n in idx)
    if not idx or any(n < 1 for n in idx):
        raise ValueError(f"tower index needs k >= 1 positive entries, got {idx}")
    return idx


# -- evaluation --------------------------------------------------------------

def _resolve(assignment: Mapping) -> dict[int, object]:
    out = {}
    for k, v in assignment.items():
        code = var_code(k) if isinstance(k, str) else abs(k.codes[0])
        out[code] = v
    return out


def evaluate(w: Word, assignment: Mapping[str, GroupElement]) -> GroupElement:
    """Image of ``w`` under a map from variables to group elements."""
    vals = _resolve(assignment)
    group = None
    for v in vals.values():
        if group is None:
            group = v.group
        elif v.group is not group:
            raise CrossGroupError("assignment mixes elements of different groups")
    missing = {var_name(c) for c in w.codes} - {var_name(c) for c in vals}
    if missing:
        raise UnassignedVariableError(f"unassigned variables {sorted(missing)}")
    if group is None:
        raise UnassignedVariableError("cannot evaluate without any assigned element")
    return group[evaluate_indices(group, w, {var_name(c): v.index for c, v in vals.items()})]


def evaluate_indices(g: FiniteGroup, w: Word, assignment: Mapping[str, object]):
    """Evaluate over element indices; values may be ints or broadcastable arrays."""
    vals = _resolve(assignment)
    t, inv = g.table, g.inverse
    arrays = [v.shape for v in vals.values() if isinstance(v, np.ndarray)]
    shape = np.broadcast_shapes(*arrays) if arrays else None
    if shape is None:
        acc = 0
        for c in w.codes:
            v = int(vals[abs(c)])
            acc = int(t[acc, v if c > 0 else inv[v]])
        return acc
    acc = np.zeros(shape, dtype=np.int64)
    arrs = {k: np.broadcast_to(np.asarray(v), shape) for k, v in vals.items()}
    invs = {}
    for c in w.codes:
        if c > 0:
            acc = t[acc, arrs[c]]
        else:
            if -c not in invs:
                invs[-c] = inv[arrs[-c]]
            acc = t[acc, invs[-c]]
    return acc


def iterated_engel(a: GroupElement, g: GroupElement, n: int) -> GroupElement:
    """``e_n(a, g)`` via ``c_1 = [a, g]``, ``c_{i+1} = [c_i, g]``."""
    if a.group is not g.group:
        raise CrossGroupError("elements belong to different groups")
    if n < 1:
        raise ValueError("n must be >= 1")
    grp = a.group
    return grp[engel_index(grp, a.index, g.index, n)]


def engel_index(g: FiniteGroup, a, y, n: int):
    """Index form of ``e_n(a, y)``; ``a`` and ``y`` may be arrays."""
    ct = g.commutator_table
    c = ct[a, y]
    for _ in range(n - 1):
        c = ct[c, y]
    return c


def tower_value(g: FiniteGroup, seq: CorrectSequence, idx: Sequence[int], xs, y):
    """Evaluate a tower word level by level, substituting the inner value as a
    group element.  ``xs`` holds one index (or array) per level."""
    idx = check_tower_index(idx)
    if len(xs) != len(idx):
        raise ValueError("one x value per tower level is required")
    v = y
    for n, xv in zip(idx, xs):
        if seq is ENGEL:
            v = engel_index(g, xv, v, n)
        else:
            v = evaluate_indices(g, seq[n], {"x1": xv, "y": v})
    return v


# -- correctness -------------------------------------------------------------

@dataclass
class CorrectnessReport:
    sequence: str
    group: str
    checked_up_to: int
    samples: int
    seed: int
    passed: bool
    violation: dict | None = None


def check_correctness(seq: CorrectSequence, g: FiniteGroup, samples: int = 2000, *,
                      n_max: int = 8, seed: int = 0) -> CorrectnessReport:
    """Empirically test the two defining properties of a correct sequence.

    Property 1 (``u_n(a,1) = u_n(1,a) = 1``) is checked for every element and
    every index up to the bound; property 2 (vanishing persists to larger
    indices) on ``samples`` seeded random ``(a, g, n, m)`` with ``n < m``.
    """
    top = min(n_max, seq.bound) if seq.bound is not None else n_max
    report = CorrectnessReport(seq.name, g.name, top, samples, seed, True)
    allx = np.arange(g.order)
    ident = np.zeros(g.order, dtype=np.int64)
    for n in range(1, top + 1):
        w = seq[n]
        for label, assign in (("u_n(a,1)", {"x1": allx, "y": ident}),
                              ("u_n(1,a)", {"x1": ident, "y": allx})):
            vals = evaluate_indices(g, w, assign)
            bad = np.flatnonzero(vals != 0)
            if bad.size:
                a = int(bad[0])
                report.passed = False
                report.violation = {"property": 1, "form": label, "n": n,
                                    "a": g.label(a), "value": g.label(int(vals[a]))}
                return report
    if top < 2:
        return report
    rng = np.random.default_rng(seed)
    a = rng.integers(0, g.order, samples)
    y = rng.integers(0, g.order, samples)
    n = rng.integers(1, top, samples)
    m = np.minimum(n + 1 + rng.integers(0, top, samples), top)
    for i in range(samples):
        un = evaluate_indices(g, seq[int(n[i])], {"x1": int(a[i]), "y": int(y[i])})
        if un != 0:
            continue
        um = evaluate_indices(g, seq[int(m[i])], {"x1": int(a[i]), "y": int(y[i])})
        if um != 0:
            report.passed = False
            report.violation = {"property": 2, "n": int(n[i]), "m": int(m[i]),
                                "a": g.label(int(a[i])), "g": g.label(int(y[i]))}
            return report
    return report


# -- parser ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<var>[A-Za-z_]\w*)|(?P<int>-?\d+)|(?P<sym>[*^\[\](),]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m[kind], start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.tokens[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise WordSyntaxError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Word:
        w = self.expr()
        self.take(kind="end")
        return w

    def expr(self) -> Word:
        w = self.term()
        while self.peek()[1] == "*":
            self.take("*")
            w = w * self.term()
        return w

    def term(self) -> Word:
        w = self.atom()
        if self.peek()[1] == "^":
            self.take("^")
            _, val, _ = self.take(kind="int")
            w = w ** int(val)
        return w

    def atom(self) -> Word:
        kind, val, pos = self.peek()
        if kind == "var":
            self.take()
            try:
                return Word.var(val)
            except ValueError:
                raise UnknownVariableError(f"unknown variable {val!r}", pos) from None
        if val == "[":
            self.take("[")
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            return comm(a, b)
        if val == "(":
            self.take("(")
            w = self.expr()
            self.take(")")
            return w
        if val == "1":  # the printed form of the empty word
            self.take()
            return Word()
        got = repr(val) if kind != "end" else "end of input"
        raise WordSyntaxError(f"expected a variable, '[' or '(', found {got}", pos)


def parse_word(expr: str) -> Word:
    """Parse ``expr := term {* term}``, ``term := atom [^ int]``,
    ``atom := x<k> | y | [expr, expr] | (expr)``, plus ``1`` for the empty
    word so that printed words parse back."""
    return _Parser(expr).parse()
