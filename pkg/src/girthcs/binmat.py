"""Binary 0-1 measurement matrices: representation, file formats, the builtin
example matrices, and a progressive-edge-growth generator."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from girthcs.errors import FormatError, GenerationError, InfeasibleParameters
from girthcs.rng import TrialRNG


@dataclass(frozen=True)
class BinaryMatrix:
    """Immutable sparse 0-1 matrix stored by column supports.

    ``col_support[j]`` is the strictly increasing tuple of row indices holding
    a 1 in column ``j``; ``row_support`` is derived from it.
    """

    m: int
    n: int
    col_support: tuple[tuple[int, ...], ...]
    row_support: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"matrix dimensions must be positive, got {self.m}x{self.n}")
        cols = tuple(tuple(int(i) for i in c) for c in self.col_support)
        if len(cols) != self.n:
            raise ValueError(f"expected {self.n} column supports, got {len(cols)}")
        rows: list[list[int]] = [[] for _ in range(self.m)]
        for j, col in enumerate(cols):
            for a, b in zip(col, col[1:]):
                if b <= a:
                    raise ValueError(f"column {j} support not strictly increasing")
            for i in col:
                if not 0 <= i < self.m:
                    raise ValueError(f"row index {i} out of range in column {j}")
                rows[i].append(j)
        object.__setattr__(self, "col_support", cols)
        object.__setattr__(self, "row_support", tuple(tuple(r) for r in rows))

    @classmethod
    def from_dense(cls, array) -> "BinaryMatrix":
        a = np.asarray(array)
        if a.ndim != 2:
            raise ValueError("dense matrix must be two-dimensional")
        if not np.isin(a, (0, 1)).all():
            raise ValueError("dense matrix must contain only 0 and 1")
        m, n = a.shape
        cols = tuple(tuple(np.flatnonzero(a[:, j]).tolist()) for j in range(n))
        return cls(m, n, cols)

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> "BinaryMatrix":
        """Build from strings of '0'/'1' characters, one per row."""
        return cls.from_dense([[int(ch) for ch in r.replace(" ", "")] for r in rows])

    def to_dense(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.m, self.n), dtype=dtype)
        for j, col in enumerate(self.col_support):
            a[list(col), j] = 1
        return a

    @property
    def col_weights(self) -> list[int]:
        return [len(c) for c in self.col_support]

    @property
    def row_weights(self) -> list[int]:
        return [len(r) for r in self.row_support]

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "BinaryMatrix":
        """Return P_r H P_c: new row ``row_perm[i]`` is old row i, new column
        ``b`` is old column ``col_perm[b]``."""
        cols = [tuple(sorted(row_perm[i] for i in self.col_support[col_perm[b]]))
                for b in range(self.n)]
        return BinaryMatrix(self.m, self.n, tuple(cols))

    def csr_arrays(self):
        """Column- and row-major index arrays (pointer, index) as intp."""
        def pack(supports):
            ptr = np.zeros(len(supports) + 1, dtype=np.intp)
            ptr[1:] = np.cumsum([len(s) for s in supports])
            idx = np.fromiter((i for s in supports for i in s), dtype=np.intp, count=int(ptr[-1]))
            return ptr, idx
        var_ptr, var_idx = pack(self.col_support)
        chk_ptr, chk_idx = pack(self.row_support)
        return var_ptr, var_idx, chk_ptr, chk_idx


# --------------------------------------------------------------------------- alist

def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise FormatError(f"non-integer token in {line.strip()!r}", lineno) from None


def load_alist(text: str) -> BinaryMatrix:
    """Parse alist text (1-based indices, 0-padded) into a BinaryMatrix."""
    lines = [(no, ln) for no, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if len(lines) < 4:
        raise FormatError("truncated header", lines[-1][0] if lines else 1)
    (l1, s1), (l2, s2), (l3, s3), (l4, s4) = lines[:4]
    head = _ints(s1, l1)
    if len(head) != 2 or min(head) < 1:
        raise FormatError("malformed header: expected 'n m'", l1)
    n, m = head
    maxw = _ints(s2, l2)
    if len(maxw) != 2:
        raise FormatError("malformed header: expected 'max_col_weight max_row_weight'", l2)
    max_col, max_row = maxw
    colw = _ints(s3, l3)
    roww = _ints(s4, l4)
    if len(colw) != n:
        raise FormatError(f"expected {n} column weights, got {len(colw)}", l3)
    if len(roww) != m:
        raise FormatError(f"expected {m} row weights, got {len(roww)}", l4)
    body = lines[4:]
    if len(body) < n + m:
        raise FormatError(f"expected {n + m} support lines, got {len(body)}",
                          body[-1][0] if body else l4)

    def read_support(no, line, declared, maxdecl, bound, what):
        vals = _ints(line, no)
        k = len(vals)
        while k and vals[k - 1] == 0:
            k -= 1
        nz = vals[:k]
        if 0 in nz:
            raise FormatError("zero padding must trail the indices", no)
        if len(nz) > maxdecl:
            raise FormatError(f"weight mismatch: {len(nz)} entries exceed declared "
                              f"max {what} weight {maxdecl}", no)
        if len(nz) != declared:
            raise FormatError(f"weight mismatch: declared {declared}, listed {len(nz)}", no)
        for v in nz:
            if not 1 <= v <= bound:
                raise FormatError(f"index {v} out of range 1..{bound}", no)
        if len(set(nz)) != len(nz):
            raise FormatError("duplicate index", no)
        return tuple(sorted(v - 1 for v in nz))

    cols = [read_support(no, ln, colw[j], max_col, m, "column")
            for j, (no, ln) in enumerate(body[:n])]
    rows = [read_support(no, ln, roww[i], max_row, n, "row")
            for i, (no, ln) in enumerate(body[n:n + m])]
    if max(colw) != max_col or max(roww) != max_row:
        raise FormatError("weight mismatch: declared maximum weights disagree with lists", l2)
    H = BinaryMatrix(m, n, tuple(cols))
    if tuple(rows) != H.row_support:
        bad = next(i for i in range(m) if rows[i] != H.row_support[i])
        raise FormatError("row list inconsistent with column list", body[n + bad][0])
    return H


def save_alist(H: BinaryMatrix) -> str:
    cw, rw = H.col_weights, H.row_weights
    max_c, max_r = max(cw), max(rw)
    out = [f"{H.n} {H.m}", f"{max_c} {max_r}",
           " ".join(map(str, cw)), " ".join(map(str, rw))]
    def line(support, width):
        # an all-zero line with zero max weight still needs a placeholder
        toks = [str(v + 1) for v in support] + ["0"] * (width - len(support))
        return " ".join(toks) or "0"
    out += [line(c, max_c) for c in H.col_support]
    out += [line(r, max_r) for r in H.row_support]
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------- dense

def load_dense(text: str) -> BinaryMatrix:
    """Parse rows of whitespace-separated 0/1 tokens."""
    rows = []
    width = None
    for no, line in enumerate(text.splitlines(), start=1):
        toks = line.split()
        if not toks:
            continue
        for tok in toks:
            if tok not in ("0", "1"):
                raise FormatError(f"non-binary token {tok!r}", no)
        if width is None:
            width = len(toks)
        elif len(toks) != width:
            raise FormatError(f"ragged rows: expected {width} tokens, got {len(toks)}", no)
        rows.append([int(t) for t in toks])
    if not rows:
        raise FormatError("empty matrix", 1)
    return BinaryMatrix.from_dense(rows)


def save_dense(H: BinaryMatrix) -> str:
    return "".join(" ".join(map(str, row)) + "\n" for row in H.to_dense().tolist())


# --------------------------------------------------------------------------- builtins

_BUILTIN_ROWS = {
    # point-plane incidence of EG(3,2): gamma=4, lambda=2, girth 4
    "eg32_pointplane": [
        "10011100110001",
        "01001111011000",
        "10100110101100",
        "11010010010110",
        "11101000001011",
        "01110101000101",
        "00111011100010",
        "00000001111111",
    ],
    # point-line incidence of a Euclidean plane: gamma=2, girth 6
    "euclid_plane": [
        "101100",
        "110010",
        "011001",
        "000111",
    ],
    # point-line incidence of a cube: gamma=2, girth 8
    "cube": [
        "100100001000",
        "110000000100",
        "011010000000",
        "001100100000",
        "000000011001",
        "000000000111",
        "000011000010",
        "000001110000",
    ],
    # point-line incidence of GP(5,2): gamma=2, girth 10
    "gp52": [
        "100011000000000",
        "110000000100000",
        "011000001000000",
        "001100010000000",
        "000110100000000",
        "000001000010001",
        "000000000100110",
        "000000001011000",
        "000000010000011",
        "000000100001100",
    ],
    # gamma=2, girth 12
    "girth12": [
        "111000000000",
        "000111000000",
        "000000111000",
        "000000000111",
        "100100000000",
        "000010100000",
        "010000010000",
        "001000000100",
        "000001000010",
        "000000001001",
    ],
}

#: Bound-achieving nullspace vectors printed alongside each builtin matrix.
BUILTIN_CERTIFICATES = {
    "eg32_pointplane": (1, -1, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, 0),
    "euclid_plane": (1, 0, -1, 0, -1, 1),
    "cube": (1, -1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0),
    "gp52": (-1, 1, 0, 0, 1, 0, -1, 0, -1, 0, 0, 1, 0, 0, 0),
    "girth12": (1, 0, -1, -1, 0, 1, 0, 0, 0, 1, -1, 0),
}

BUILTIN_NAMES = tuple(_BUILTIN_ROWS)


def builtin(name: str) -> BinaryMatrix:
    try:
        rows = _BUILTIN_ROWS[name]
    except KeyError:
        raise KeyError(f"unknown builtin matrix {name!r}; "
                       f"choose from {', '.join(BUILTIN_NAMES)}") from None
    return BinaryMatrix.from_rows(rows)


# --------------------------------------------------------------------------- generator

def _reachable_checks(cols: list[list[int]], rows: list[list[int]], j: int, m: int):
    """BFS from variable j; return check distance map (in edges)."""
    dist = {}
    seen_var = {j}
    frontier = [j]
    d = 1
    while frontier:
        nxt_checks = []
        for v in frontier:
            for c in cols[v]:
                if c not in dist:
                    dist[c] = d
                    nxt_checks.append(c)
        frontier = []
        for c in nxt_checks:
            for v in rows[c]:
                if v not in seen_var:
                    seen_var.add(v)
                    frontier.append(v)
        d += 2
    return dist


def generate_regular(m: int, n: int, gamma: int, target_girth: Optional[int] = None,
                     seed: int = 0) -> tuple[BinaryMatrix, object]:
    """Column-regular matrix by progressive edge growth.

    Each new edge of column ``j`` goes to a check that is unreachable from
    ``j`` in the current graph if one exists, otherwise to one at maximum
    distance.  Ties go to the lowest current row weight, then to the lowest
    rank in a seed-derived row permutation.

    Returns ``(H, girth)``; raises :class:`GenerationError` when
    ``target_girth`` is given and not reached.
    """
    from girthcs.tanner import INFINITE, girth

    if gamma < 1:
        raise InfeasibleParameters("gamma must be at least 1")
    if m < 1 or n < 1:
        raise InfeasibleParameters("m and n must be positive")
    if gamma > m:
        raise InfeasibleParameters(f"gamma exceeds m ({gamma} > {m})")
    if target_girth is not None and (target_girth < 4 or target_girth % 2):
        raise InfeasibleParameters("target girth must be an even integer >= 4")

    rank = TrialRNG(seed, 0).permutation(m)
    cols: list[list[int]] = [[] for _ in range(n)]
    rows: list[list[int]] = [[] for _ in range(m)]
    for j in range(n):
        for _ in range(gamma):
            if cols[j]:
                dist = _reachable_checks(cols, rows, j, m)
                free = [c for c in range(m) if c not in dist]
                if free:
                    cand = free
                else:
                    far = max(dist.values())
                    cand = [c for c, d in dist.items() if d == far and c not in cols[j]]
                    if not cand:
                        cand = [c for c in range(m) if c not in cols[j]]
            else:
                cand = list(range(m))
            c = min(cand, key=lambda c: (len(rows[c]), rank[c]))
            cols[j].append(c)
            rows[c].append(j)
    H = BinaryMatrix(m, n, tuple(tuple(sorted(c)) for c in cols))
    g = girth(H)
    if target_girth is not None and g < target_girth:
        raise GenerationError(f"target girth {target_girth} not reached "
                              f"(achieved {g}) for seed {seed}")
    return H, g
