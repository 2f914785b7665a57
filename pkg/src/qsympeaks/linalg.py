"""Exact dense matrices, the transition matrices B_n, and exact rank/kernel.

Rows and columns of B_n are subsets of [n-1] in reverse-lex order, which is
the same as ascending bitmask order.  Column I holds the coefficients of
L_{n,I} on the enriched q-monomials eta_{n,J}.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Sequence

from .combinatorics import IndexSet, all_subsets
from .qsym import L_in_eta_basis, symbolic_q
from .scalars import QPolynomial, q_integer, scalar_str, scalar_to_json


class ExactMatrix:
    """Dense matrix of exact scalars with subset-indexed rows and columns."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: Sequence, cols: Sequence, entries: Sequence[Sequence]):
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        self.entries = [list(r) for r in entries]
        if len(self.entries) != len(self.rows) or any(len(r) != len(self.cols) for r in self.entries):
            raise ValueError("entry grid does not match the row/column labels")

    @classmethod
    def empty(cls) -> "ExactMatrix":
        return cls((), (), [])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def entry(self, row_label, col_label):
        return self.entries[self.rows.index(row_label)][self.cols.index(col_label)]

    def map(self, fn: Callable) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [[fn(x) for x in r] for r in self.entries])

    def specialize(self, value) -> "ExactMatrix":
        """Apply the evaluation homomorphism q -> value to every entry."""
        return self.map(lambda x: x.evaluate(value) if isinstance(x, QPolynomial) else x)

    def scale(self, c) -> "ExactMatrix":
        return self.map(lambda x: c * x)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix(
            self.rows, self.cols,
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
        )

    def column(self, j: int) -> list:
        return [r[j] for r in self.entries]

    def select_columns(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(
            self.rows, [self.cols[j] for j in idx], [[r[j] for j in idx] for r in self.entries]
        )

    def matvec(self, v: Sequence) -> list:
        return [sum((a * x for a, x in zip(r, v) if a and x), 0) for r in self.entries]

    def with_labels(self, rows, cols) -> "ExactMatrix":
        return ExactMatrix(rows, cols, self.entries)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.entries, other.entries) for a, b in zip(r, s)
        )

    __hash__ = None

    def __repr__(self):
        return f"ExactMatrix({self.shape[0]}x{self.shape[1]})"

    def rank(self) -> int:
        return rank(self)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [str(c) for c in self.cols])
        for label, r in zip(self.rows, self.entries):
            w.writerow([str(label)] + [scalar_str(x) for x in r])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "rows": [list(s.members) if isinstance(s, IndexSet) else s for s in self.rows],
            "cols": [list(s.members) if isinstance(s, IndexSet) else s for s in self.cols],
            "entries": [[scalar_to_json(x) for x in r] for r in self.entries],
        }


def block_matrix(blocks: Sequence[Sequence[ExactMatrix | None]], zero=0) -> list[list]:
    """Glue a grid of blocks into a plain entry grid; None blocks are zero."""
    heights = [next(b.shape[0] for b in row if b is not None) for row in blocks]
    widths = [next(row[j].shape[1] for row in blocks if row[j] is not None) for j in range(len(blocks[0]))]
    out = []
    for row, h in zip(blocks, heights):
        for i in range(h):
            line = []
            for b, w in zip(row, widths):
                line.extend(b.entries[i] if b is not None else [zero] * w)
            out.append(line)
    return out


# -- the transition matrices ------------------------------------------------------

def subset_order(n: int) -> list[IndexSet]:
    """Subsets of [n-1] sorted reverse-lexicographically (decreasing words compared lexicographically)."""
    return all_subsets(n)


def build_B_direct(n: int, q=None) -> ExactMatrix:
    """B_n^(q) column by column from the L-to-eta expansion."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ExactMatrix.empty()
    q = symbolic_q() if q is None else q
    order = subset_order(n)
    pos = {s: k for k, s in enumerate(order)}
    zero = q * 0
    grid = [[zero] * len(order) for _ in order]
    for j, col in enumerate(order):
        for row, c in L_in_eta_basis(n, col, q).items():
            grid[pos[row]][j] = c
    return ExactMatrix(order, order, grid)


def _recursive_pair(n: int, q):
    """(B_n, A_n) as bare entry grids via the block recurrences."""
    zero, one = q * 0, q**0
    B = {0: ExactMatrix.empty(), 1: ExactMatrix((0,), (0,), [[one]])}
    A = {1: ExactMatrix((0,), (0,), [[one]]), 2: ExactMatrix((0,), (0,), [[q - 1]])}
    for k in range(2, n + 1):
        if k >= 3:
            prev = B[k - 2]
            top = prev.scale(q - 1)
            grid = block_matrix([[top, top], [prev.scale(-q), A[k - 1].scale(q - 1)]], zero)
            A[k] = ExactMatrix(range(len(grid)), range(len(grid)), grid)
        prev = B[k - 1]
        grid = block_matrix([[prev, prev], [None, A[k]]], zero)
        B[k] = ExactMatrix(range(len(grid)), range(len(grid)), grid)
    return B, A


def build_B_recursive(n: int, q=None) -> ExactMatrix:
    """B_n^(q) from B_n = [[B_{n-1}, B_{n-1}], [0, A_n]] and the A_n recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ExactMatrix.empty()
    q = symbolic_q() if q is None else q
    B, _ = _recursive_pair(n, q)
    order = subset_order(n)
    return B[n].with_labels(order, order)


def build_A(k: int, q=None) -> ExactMatrix:
    """Diagonal block A_k^(q) (rows/columns: subsets with maximum k-1)."""
    q = symbolic_q() if q is None else q
    _, A = _recursive_pair(max(k, 2), q)
    labels = [s for s in subset_order(max(k, 1)) if s.max() == k - 1] if k >= 1 else []
    return A[k].with_labels(labels, labels)


def kernel_block_identity(n: int, alpha, beta, q=None) -> tuple[ExactMatrix, ExactMatrix]:
    """Both sides of the block form of alpha*A_{n+1} + beta*B_n (n >= 2).

    Returns (direct, assembled): ``direct`` is the combination itself;
    ``assembled`` is [[c*B_{n-1}, c*B_{n-1}], [-q*alpha*B_{n-1}, c*A_n]] with
    c = (q-1)*alpha + beta, whose action on (X1; X2) is the two-line system
    used in the kernel recurrence.
    """
    if n < 2:
        raise ValueError("the block identity needs n >= 2")
    q = symbolic_q() if q is None else q
    B, A = _recursive_pair(n + 1, q)
    direct = A[n + 1].scale(alpha) + B[n].scale(beta)
    c = (q - 1) * alpha + beta
    lower = B[n - 1]
    grid = block_matrix(
        [[lower.scale(c), lower.scale(c)], [lower.scale(-q * alpha), A[n].scale(c)]], q * 0
    )
    return direct, ExactMatrix(direct.rows, direct.cols, grid)


# -- exact elimination ----------------------------------------------------------

@dataclass
class Echelon:
    rank: int
    pivots: list[tuple[int, int]]        # (row id, column) in pivot order
    rows: dict[int, dict[int, object]]   # sparse reduced rows, keyed by row id


def _eliminate(entries: Sequence[Sequence], reduce_fully: bool) -> Echelon:
    """Sparse Gauss-Jordan over an exact field with Markowitz-style pivoting.

    Each step picks, among rows not yet used, one with the fewest nonzeros, and
    in it the column shared by the fewest other rows.  Pivot rows are scaled to
    a leading 1.  With ``reduce_fully`` the pivot column is also cleared from
    earlier pivot rows (reduced row echelon form).
    """
    rows: dict[int, dict[int, object]] = {}
    col_index: dict[int, set[int]] = {}
    for i, r in enumerate(entries):
        sparse = {j: x for j, x in enumerate(r) if x}
        if sparse:
            rows[i] = sparse
            for j in sparse:
                col_index.setdefault(j, set()).add(i)
    active = set(rows)
    pivots: list[tuple[int, int]] = []
    while active:
        r = min(active, key=lambda i: (len(rows[i]), i))
        row = rows[r]
        c = min(row, key=lambda j: (len(col_index[j]), j))
        inv = 1 / row[c]
        row = {j: x * inv for j, x in row.items()}
        row[c] = 1
        rows[r] = row
        active.discard(r)
        pivots.append((r, c))
        targets = [t for t in col_index[c] if t != r and (reduce_fully or t in active)]
        for t in targets:
            trow = rows[t]
            factor = trow.pop(c)
            col_index[c].discard(t)
            for j, x in row.items():
                if j == c:
                    continue
                if j in trow:
                    v = trow[j] - factor * x
                    if v:
                        trow[j] = v
                    else:
                        del trow[j]
                        col_index[j].discard(t)
                else:
                    trow[j] = -factor * x
                    col_index[j].add(t)
            if not trow:
                del rows[t]
                active.discard(t)
    return Echelon(len(pivots), pivots, rows)


def _bareiss_rank(entries: Sequence[Sequence]) -> int:
    """Fraction-free rank for entries in a polynomial ring (exact division)."""
    m = [list(r) for r in entries]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                v = m[i][j] * p - m[r][j] * m[i][c]
                m[i][j] = v.exact_div(prev) if isinstance(v, QPolynomial) else v / prev
            m[i][c] = p * 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def _plain_entries(M) -> Sequence[Sequence]:
    return M.entries if isinstance(M, ExactMatrix) else M


def rank(M) -> int:
    """Exact rank; polynomial entries are ranked over their fraction field."""
    entries = _plain_entries(M)
    if any(isinstance(x, QPolynomial) for r in entries for x in r):
        return _bareiss_rank(entries)
    return _eliminate(entries, reduce_fully=False).rank


def kernel_basis(M) -> list[list]:
    """A basis of {v : M v = 0}, one vector per non-pivot column."""
    entries = _plain_entries(M)
    ncols = len(entries[0]) if entries else 0
    ech = _eliminate(entries, reduce_fully=True)
    pivot_of_col = {c: r for r, c in ech.pivots}
    zero = next((x * 0 for r in entries for x in r), 0)
    basis = []
    for free in range(ncols):
        if free in pivot_of_col:
            continue
        v = [zero] * ncols
        v[free] = zero + 1
        for c, r in pivot_of_col.items():
            x = ech.rows[r].get(free)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def is_consistent(M, b: Sequence) -> bool:
    """Whether M x = b has a solution."""
    entries = _plain_entries(M)
    augmented = [list(r) + [x] for r, x in zip(entries, b)]
    return rank(augmented) == rank(entries)


# -- recurrences -------------------------------------------------------------------

def coefficient_sequence(n: int, q=None) -> tuple:
    """(alpha_n, beta_n) = (0, 1) * [[q-1, q], [1, 0]]^n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = symbolic_q() if q is None else q
    a, b = q * 0, q**0
    for _ in range(n):
        a, b = a * (q - 1) + b, a * q
    return a, b


def coefficient_sequence_closed_form(n: int, q=None) -> tuple:
    """(-1)^n (-[n]_{-q}, q [n-1]_{-q}) for n >= 1."""
    if n < 1:
        raise ValueError("closed form holds for n >= 1")
    q = symbolic_q() if q is None else q
    sign = (-1) ** n
    return sign * -q_integer(n, -q), sign * q * q_integer(n - 1, -q)


def kernel_dimensions(p: int, n_max: int, ranks: dict[int, int] | None = None) -> list[int]:
    """dim ker B_n^(rho_p) for n = 1..n_max, by elimination."""
    from .scalars import rho

    r = rho(p)
    out = []
    for n in range(1, n_max + 1):
        rk = ranks[n] if ranks and n in ranks else rank(build_B_direct(n, r))
        out.append(2 ** (n - 1) - rk)
    return out


def kernel_recurrence_value(p: int, n: int, dimker: dict[int, int]) -> int:
    """Right-hand side of the kernel recurrence, dimker_0 = 0 and absent negatives."""
    total = sum(dimker.get(n - k, 0) for k in range(1, p + 2) if n - k >= 0)
    if n > p + 1:
        total += 2 ** (n - p - 2)
    return total


def rank_recurrence_value(p: int, n: int, ranks: dict[int, int]) -> int:
    if 1 <= n <= p:
        return 2 ** (n - 1)
    return sum(ranks.get(n - k, 0) for k in range(1, p + 2) if n - k >= 0)
