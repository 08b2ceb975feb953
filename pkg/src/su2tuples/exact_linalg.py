"""Exact integer matrix algebra: Smith normal form, cokernels, field ranks.

All results are exact.  Matrices are immutable and hold Python integers, so
no magnitude bound is ever assumed; the machine-word kernel backends are an
internal fast path only and every computation that cannot stay in int64 is
redone in arbitrary precision with identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _backend, _bigint
from ._limits import ENTRY_LIMIT, MOD_P_LIMIT

__all__ = [
    "IntegerMatrix",
    "SmithDecomposition",
    "AbelianGroup",
    "smith_normal_form",
    "cokernel_structure",
    "rank_over_field",
]


class IntegerMatrix:
    """Immutable integer matrix, row-major, arbitrary-precision entries."""

    __slots__ = ("rows", "cols", "_flat", "_maxabs")

    def __init__(self, rows: int, cols: int, entries: Sequence[int]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        flat = tuple(int(x) for x in entries)
        if len(flat) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
                f"got {len(flat)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_flat", flat)
        object.__setattr__(self, "_maxabs", None)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]], cols: int | None = None):
        rows = len(data)
        if rows == 0:
            return cls(0, 0 if cols is None else cols, ())
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged rows")
        flat = [x for row in data for x in row]
        return cls(rows, width, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int):
        flat = [0] * (n * n)
        for i in range(n):
            flat[i * n + i] = 1
        return cls(n, n, flat)

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._flat[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._flat[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list:
        c = self.cols
        return [list(self._flat[i * c : (i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "IntegerMatrix":
        r, c, f = self.rows, self.cols, self._flat
        flat = [f[i * c + j] for j in range(c) for i in range(r)]
        return IntegerMatrix(c, r, flat)

    def max_abs(self) -> int:
        cached = self._maxabs
        if cached is None:
            cached = max((abs(x) for x in self._flat), default=0)
            object.__setattr__(self, "_maxabs", cached)
        return cached

    def is_zero(self) -> bool:
        return not any(self._flat)

    def diagonal(self) -> tuple:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} @ "
                f"{other.rows}x{other.cols}"
            )
        n = self.cols
        if n == 0 or self.rows == 0 or other.cols == 0:
            return IntegerMatrix.zeros(self.rows, other.cols)
        # int64 product is safe when no dot product can reach 2**62
        bound = self.max_abs() * other.max_abs() * n
        if bound < (1 << 62):
            a = np.array(self._flat, dtype=np.int64).reshape(self.rows, n)
            b = np.array(other._flat, dtype=np.int64).reshape(n, other.cols)
            return IntegerMatrix(self.rows, other.cols, (a @ b).ravel().tolist())
        bt = other.transpose().to_rows()
        flat = []
        for i in range(self.rows):
            ra = self.row(i)
            for col in bt:
                flat.append(sum(x * y for x, y in zip(ra, col)))
        return IntegerMatrix(self.rows, other.cols, flat)

    def __eq__(self, other):
        return (
            isinstance(other, IntegerMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._flat == other._flat
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._flat))

    def __repr__(self):
        if self.rows * self.cols <= 36:
            return f"IntegerMatrix.from_rows({self.to_rows()!r})"
        return f"<IntegerMatrix {self.rows}x{self.cols}>"

    def _kernel_array(self) -> np.ndarray | None:
        """Fresh int64 copy if every entry is within the kernel range."""
        if self.max_abs() > ENTRY_LIMIT:
            return None
        arr = np.array(self._flat, dtype=np.int64).reshape(self.rows, self.cols)
        return arr


@dataclass(frozen=True)
class SmithDecomposition:
    """Factorization A = U @ S @ V with U, V unimodular and S diagonal.

    The diagonal of S is nonnegative, each entry divides the next, and zeros
    trail.
    """

    U: IntegerMatrix
    S: IntegerMatrix
    V: IntegerMatrix

    def diagonal(self) -> tuple:
        return self.S.diagonal()


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form.

    ``invariant_factors`` is the canonical chain d1 | d2 | ... with every
    di >= 2.  Equality of groups is exactly field-wise equality.
    """

    free_rank: int = 0
    invariant_factors: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for d in factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for d, e in zip(factors, factors[1:]):
            if e % d != 0:
                raise ValueError(f"invariant factors {d}, {e} violate divisibility")

    @classmethod
    def trivial(cls) -> "AbelianGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "AbelianGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        n = abs(int(n))
        if n == 0:
            return cls(1, ())
        if n == 1:
            return cls(0, ())
        return cls(0, (n,))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def torsion_order(self) -> int:
        order = 1
        for d in self.invariant_factors:
            order *= d
        return order

    def primary_decomposition(self) -> tuple:
        """Torsion as a sorted tuple of prime powers (p, e)."""
        parts = []
        for d in self.invariant_factors:
            parts.extend(sorted(_factorize(d).items()))
        return tuple(sorted(parts))

    def torsion_rank_at(self, p: int) -> int:
        """Number of cyclic p-power summands in the primary decomposition."""
        return sum(1 for d in self.invariant_factors if d % p == 0)

    def direct_sum(self, *others: "AbelianGroup") -> "AbelianGroup":
        return direct_sum(self, *others)

    def __str__(self):
        if self.is_trivial:
            return "0"
        parts = ["Z"] * self.free_rank
        parts += [f"Z/{p ** e}" for p, e in self.primary_decomposition()]
        return " + ".join(parts)


def _factorize(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def direct_sum(*groups: AbelianGroup) -> AbelianGroup:
    """Direct sum, renormalized to the canonical invariant-factor chain."""
    rank = sum(g.free_rank for g in groups)
    by_prime: dict = {}
    for g in groups:
        for p, e in g.primary_decomposition():
            by_prime.setdefault(p, []).append(e)
    if not by_prime:
        return AbelianGroup(rank, ())
    for exps in by_prime.values():
        exps.sort(reverse=True)
    depth = max(len(exps) for exps in by_prime.values())
    factors = []
    for level in range(depth):
        d = 1
        for p, exps in by_prime.items():
            if level < len(exps):
                d *= p ** exps[level]
        factors.append(d)
    return AbelianGroup(rank, tuple(reversed(factors)))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == small:
            return True
        if n % small == 0:
            return False
    # deterministic Miller-Rabin for anything that survives trial division
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# kernel dispatch


def _snf_diagonal(m: IntegerMatrix) -> list:
    """Diagonal of the Smith form (nonnegative, divisibility chain)."""
    k = min(m.rows, m.cols)
    if k == 0:
        return []
    arr = m._kernel_array()
    if arr is not None:
        dummy = np.zeros((1, 1), dtype=np.int64)
        if _backend.kernels().snf_inplace(arr, dummy, dummy, False) == 0:
            return [int(arr[i, i]) for i in range(k)]
    work = m.to_rows()
    _bigint.snf_inplace(work, None, None, False)
    return [work[i][i] for i in range(k)]


def smith_normal_form(a: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms: a = U @ S @ V.

    Total and deterministic; empty matrices get size-0 identity factors.
    """
    r, c = a.rows, a.cols
    if r == 0 or c == 0 or a.is_zero():
        return SmithDecomposition(
            IntegerMatrix.identity(r), a, IntegerMatrix.identity(c)
        )
    arr = a._kernel_array()
    if arr is not None:
        u = np.eye(r, dtype=np.int64)
        v = np.eye(c, dtype=np.int64)
        if _backend.kernels().snf_inplace(arr, u, v, True) == 0:
            return SmithDecomposition(
                IntegerMatrix(r, r, u.ravel().tolist()),
                IntegerMatrix(r, c, arr.ravel().tolist()),
                IntegerMatrix(c, c, v.ravel().tolist()),
            )
    work = a.to_rows()
    u_rows = IntegerMatrix.identity(r).to_rows()
    v_rows = IntegerMatrix.identity(c).to_rows()
    _bigint.snf_inplace(work, u_rows, v_rows, True)
    return SmithDecomposition(
        IntegerMatrix.from_rows(u_rows, cols=r),
        IntegerMatrix.from_rows(work, cols=c),
        IntegerMatrix.from_rows(v_rows, cols=c),
    )


def invariant_factors(a: IntegerMatrix) -> tuple:
    """Diagonal entries of the Smith form that exceed 1."""
    return tuple(d for d in _snf_diagonal(a) if d > 1)


def smith_rank(a: IntegerMatrix) -> int:
    """Number of nonzero diagonal entries of the Smith form."""
    return sum(1 for d in _snf_diagonal(a) if d != 0)


def cokernel_structure(a: IntegerMatrix) -> AbelianGroup:
    """Structure of Z^rows / column-span(a) in canonical form."""
    diag = _snf_diagonal(a)
    nonzero = sum(1 for d in diag if d != 0)
    return AbelianGroup(a.rows - nonzero, tuple(d for d in diag if d > 1))


def rank_over_field(a: IntegerMatrix, p: int) -> int:
    """Rank of ``a`` over Q (p = 0) or over the field of p elements.

    Rejects nonprime p > 0.  The rational rank uses fraction-free (Bareiss)
    elimination, independent of the Smith form routines.
    """
    p = int(p)
    if p < 0 or (p > 0 and not _is_prime(p)):
        raise ValueError(f"p must be 0 or a prime, got {p}")
    if a.rows == 0 or a.cols == 0:
        return 0
    if p == 0:
        arr = a._kernel_array()
        if arr is not None:
            status, rank = _backend.kernels().rank_bareiss(arr)
            if status == 0:
                return int(rank)
        return _bigint.rank_bareiss(a.to_rows())
    if p < MOD_P_LIMIT:
        flat = a._flat
        if a.max_abs() > ENTRY_LIMIT:
            flat = [x % p for x in flat]
        arr = np.array(flat, dtype=np.int64).reshape(a.rows, a.cols)
        return int(_backend.kernels().rank_mod_p(arr, p))
    return _bigint.rank_mod_p(a.to_rows(), p)
