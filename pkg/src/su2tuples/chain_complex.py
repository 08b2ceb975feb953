"""Finite cellular chain complexes over Z and over Z[t]/(t^2 - 1).

Complexes are immutable and graded in degrees 0..max_degree.  Constructors
(tensor products, quotients, wedges, suspensions, coinvariants of a free
order-two action) all preserve the chain condition, and exact (co)homology is
computed through Smith normal form.  Integral cohomology is computed twice,
by dualizing and through universal coefficients, and the two answers are
compared on every call.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

from .exact_linalg import AbelianGroup, IntegerMatrix, rank_over_field

__all__ = [
    "ChainComplex",
    "EquivariantChainComplex",
    "GradedGroupTable",
    "verify_complex",
    "homology",
    "cohomology",
    "homology_table",
    "cohomology_table",
    "tensor",
    "equivariant_tensor",
    "coinvariants",
    "quotient_by_subcomplex",
    "suspend",
    "wedge",
    "parse_coefficients",
]


def _matrix_add(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix:
    if a.rows != b.rows or a.cols != b.cols:
        raise ValueError("shape mismatch in matrix addition")
    return IntegerMatrix(
        a.rows, a.cols, [x + y for x, y in zip(a._flat, b._flat)]
    )


class ChainComplex:
    """Chain complex of free Z-modules with integer boundary matrices.

    ``ranks[j]`` is the number of cells in degree j; ``boundary(j)`` has
    shape ranks[j-1] x ranks[j].  ``basepoint`` optionally marks one 0-cell
    as distinguished (required by the based constructors).
    """

    __slots__ = ("_ranks", "_boundaries", "basepoint", "_verified", "_cache")

    def __init__(
        self,
        ranks: Sequence[int],
        boundaries: Mapping[int, IntegerMatrix],
        basepoint: int | None = None,
    ):
        ranks = tuple(int(r) for r in ranks)
        if not ranks:
            ranks = (0,)
        if any(r < 0 for r in ranks):
            raise ValueError("ranks must be nonnegative")
        stored = {}
        for j in range(1, len(ranks)):
            b = boundaries.get(j)
            if b is None:
                b = IntegerMatrix.zeros(ranks[j - 1], ranks[j])
            elif b.rows != ranks[j - 1] or b.cols != ranks[j]:
                raise ValueError(
                    f"boundary({j}) has shape {b.rows}x{b.cols}, expected "
                    f"{ranks[j - 1]}x{ranks[j]}"
                )
            stored[j] = b
        for j in boundaries:
            if not 1 <= j < len(ranks):
                raise ValueError(f"boundary degree {j} out of range")
        if basepoint is not None and not 0 <= basepoint < ranks[0]:
            raise ValueError("basepoint index out of range")
        self._ranks = ranks
        self._boundaries = stored
        self.basepoint = basepoint
        self._verified = None
        self._cache = {}

    @property
    def min_degree(self) -> int:
        return 0

    @property
    def max_degree(self) -> int:
        return len(self._ranks) - 1

    def rank(self, j: int) -> int:
        if 0 <= j <= self.max_degree:
            return self._ranks[j]
        return 0

    @property
    def ranks(self) -> tuple:
        return self._ranks

    def boundary(self, j: int) -> IntegerMatrix:
        b = self._boundaries.get(j)
        if b is None:
            return IntegerMatrix.zeros(self.rank(j - 1), self.rank(j))
        return b

    @property
    def is_based(self) -> bool:
        return self.basepoint is not None

    def total_cells(self) -> int:
        return sum(self._ranks)

    def __repr__(self):
        return f"<ChainComplex ranks={list(self._ranks)} based={self.is_based}>"

    # cached Smith data, keyed so distinct degrees never collide
    def _diag(self, j: int, transposed: bool) -> tuple:
        from .exact_linalg import _snf_diagonal

        if not 1 <= j <= self.max_degree:
            return ()
        key = ("diag", j, transposed)
        got = self._cache.get(key)
        if got is None:
            b = self.boundary(j)
            got = tuple(_snf_diagonal(b.transpose() if transposed else b))
            self._cache[key] = got
        return got

    def _rank_z(self, j: int, transposed: bool = False) -> int:
        return sum(1 for d in self._diag(j, transposed) if d != 0)

    def _torsion(self, j: int, transposed: bool = False) -> tuple:
        return tuple(d for d in self._diag(j, transposed) if d > 1)

    def _rank_field(self, j: int, p: int) -> int:
        if not 1 <= j <= self.max_degree:
            return 0
        key = ("rank", j, p)
        got = self._cache.get(key)
        if got is None:
            got = rank_over_field(self.boundary(j), p)
            self._cache[key] = got
        return got

    def _augmentable(self) -> bool:
        # reduced computations need the all-ones augmentation to be a chain map
        key = ("augmentable",)
        got = self._cache.get(key)
        if got is None:
            b = self.boundary(1)
            got = all(
                sum(b[i, j] for i in range(b.rows)) == 0 for j in range(b.cols)
            )
            self._cache[key] = got
        return got


class EquivariantChainComplex:
    """Chain complex of free modules over Z[t]/(t^2 - 1).

    Boundary entries are pairs a + b*t, stored as two integer matrices per
    degree (the 1-part and the t-part).  All modules are free over the group
    ring, one generator per column.
    """

    __slots__ = ("_ranks", "_boundaries", "_verified")

    def __init__(
        self,
        ranks: Sequence[int],
        boundaries: Mapping[int, tuple],
    ):
        ranks = tuple(int(r) for r in ranks)
        if not ranks:
            ranks = (0,)
        if any(r < 0 for r in ranks):
            raise ValueError("ranks must be nonnegative")
        stored = {}
        for j in range(1, len(ranks)):
            pair = boundaries.get(j)
            if pair is None:
                z = IntegerMatrix.zeros(ranks[j - 1], ranks[j])
                pair = (z, z)
            one, tau = pair
            for part in (one, tau):
                if part.rows != ranks[j - 1] or part.cols != ranks[j]:
                    raise ValueError(
                        f"boundary({j}) part has shape {part.rows}x{part.cols},"
                        f" expected {ranks[j - 1]}x{ranks[j]}"
                    )
            stored[j] = (one, tau)
        for j in boundaries:
            if not 1 <= j < len(ranks):
                raise ValueError(f"boundary degree {j} out of range")
        self._ranks = ranks
        self._boundaries = stored
        self._verified = None

    @property
    def min_degree(self) -> int:
        return 0

    @property
    def max_degree(self) -> int:
        return len(self._ranks) - 1

    def rank(self, j: int) -> int:
        if 0 <= j <= self.max_degree:
            return self._ranks[j]
        return 0

    @property
    def ranks(self) -> tuple:
        return self._ranks

    def boundary(self, j: int) -> tuple:
        pair = self._boundaries.get(j)
        if pair is None:
            z = IntegerMatrix.zeros(self.rank(j - 1), self.rank(j))
            return (z, z)
        return pair

    def __repr__(self):
        return f"<EquivariantChainComplex ranks={list(self._ranks)}>"


class GradedGroupTable:
    """Degree-indexed table of abelian groups with a coefficient tag.

    Degrees holding the trivial group may be omitted; omitted and explicitly
    trivial entries compare equal.
    """

    __slots__ = ("coefficients", "reduced", "_groups")

    def __init__(
        self,
        coefficients: str,
        reduced: bool,
        groups: Mapping[int, AbelianGroup],
    ):
        parse_coefficients(coefficients)
        self.coefficients = coefficients
        self.reduced = bool(reduced)
        self._groups = {
            int(j): g for j, g in sorted(groups.items()) if not g.is_trivial
        }

    def group_at(self, j: int) -> AbelianGroup:
        return self._groups.get(j, AbelianGroup.trivial())

    def degrees(self) -> tuple:
        return tuple(self._groups)

    @property
    def groups(self) -> dict:
        return dict(self._groups)

    @property
    def max_degree(self) -> int:
        return max(self._groups, default=-1)

    def free_ranks(self) -> dict:
        return {j: g.free_rank for j, g in self._groups.items()}

    def euler_characteristic(self) -> int:
        return sum((-1) ** j * g.free_rank for j, g in self._groups.items())

    def __eq__(self, other):
        return (
            isinstance(other, GradedGroupTable)
            and self.coefficients == other.coefficients
            and self.reduced == other.reduced
            and self._groups == other._groups
        )

    def __repr__(self):
        body = ", ".join(f"{j}: {g}" for j, g in self._groups.items())
        tag = "reduced" if self.reduced else "unreduced"
        return f"<GradedGroupTable {self.coefficients} {tag} {{{body}}}>"


def parse_coefficients(coeff: str) -> int | None:
    """Validate a coefficient tag; return None for Z, 0 for Q, p for F_p."""
    from .exact_linalg import _is_prime

    if coeff == "Z":
        return None
    if coeff == "Q":
        return 0
    if coeff.startswith("F"):
        try:
            p = int(coeff[1:])
        except ValueError:
            raise ValueError(f"invalid coefficient tag {coeff!r}") from None
        if not _is_prime(p):
            raise ValueError(f"coefficient field order {p} is not prime")
        return p
    raise ValueError(f"invalid coefficient tag {coeff!r}")


def verify_complex(c) -> bool:
    """True iff all boundary composites vanish (in the group ring, if any)."""
    if c._verified is not None:
        return c._verified
    ok = True
    if isinstance(c, ChainComplex):
        for j in range(2, c.max_degree + 1):
            if not (c.boundary(j - 1) @ c.boundary(j)).is_zero():
                ok = False
                break
    elif isinstance(c, EquivariantChainComplex):
        for j in range(2, c.max_degree + 1):
            a1, b1 = c.boundary(j - 1)
            a2, b2 = c.boundary(j)
            one = _matrix_add(a1 @ a2, b1 @ b2)
            tau = _matrix_add(a1 @ b2, b1 @ a2)
            if not (one.is_zero() and tau.is_zero()):
                ok = False
                break
    else:
        raise TypeError(f"not a chain complex: {c!r}")
    c._verified = ok
    return ok


def _require_verified(c):
    if not verify_complex(c):
        raise ValueError("boundary maps do not compose to zero")


def _require_reducible(c: ChainComplex):
    if not c._augmentable():
        raise ValueError(
            "degree-1 boundary columns do not sum to zero; "
            "reduced homology is undefined for this complex"
        )


def homology(c: ChainComplex, j: int, reduced: bool = False) -> AbelianGroup:
    """H_j(c) in canonical form (kernel of boundary modulo image)."""
    _require_verified(c)
    if reduced:
        _require_reducible(c)
    if j < 0 or j > c.max_degree:
        return AbelianGroup.trivial()
    if j == 0:
        rank_out = 1 if (reduced and c.rank(0) > 0) else 0
    else:
        rank_out = c._rank_z(j)
    free = c.rank(j) - rank_out - c._rank_z(j + 1)
    return AbelianGroup(free, c._torsion(j + 1))


def cohomology(
    c: ChainComplex, j: int, coeff: str = "Z", reduced: bool = False
) -> AbelianGroup:
    """H^j(c; coeff) for coeff in Z, Q, F_p.

    Integral cohomology is computed from the transposed boundaries and
    checked against Hom(H_j, Z) + Ext(H_{j-1}, Z) before being returned.
    """
    p = parse_coefficients(coeff)
    _require_verified(c)
    if reduced:
        _require_reducible(c)
    if j < 0 or j > c.max_degree:
        return AbelianGroup.trivial()
    if p is None:
        if j == 0:
            rank_in = 1 if (reduced and c.rank(0) > 0) else 0
            torsion = ()
        else:
            rank_in = c._rank_z(j, transposed=True)
            torsion = c._torsion(j, transposed=True)
        free = c.rank(j) - rank_in - c._rank_z(j + 1, transposed=True)
        result = AbelianGroup(free, torsion)
        expected = AbelianGroup(
            homology(c, j, reduced).free_rank,
            homology(c, j - 1, reduced).invariant_factors,
        )
        if result != expected:
            raise RuntimeError(
                f"universal-coefficient cross-check failed in degree {j}: "
                f"dualized {result} vs Hom/Ext {expected}"
            )
        return result
    if j == 0:
        rank_out = 1 if (reduced and c.rank(0) > 0) else 0
    else:
        rank_out = c._rank_field(j, p)
    dim = c.rank(j) - rank_out - c._rank_field(j + 1, p)
    return AbelianGroup.free(dim)


def homology_table(
    c: ChainComplex, coeff: str = "Z", reduced: bool = False
) -> GradedGroupTable:
    p = parse_coefficients(coeff)
    groups = {}
    for j in range(c.max_degree + 1):
        if p is None:
            groups[j] = homology(c, j, reduced)
        else:
            # over a field, homology and cohomology have equal dimensions
            groups[j] = cohomology(c, j, coeff, reduced)
    return GradedGroupTable(coeff, reduced, groups)


def cohomology_table(
    c: ChainComplex, coeff: str = "Z", reduced: bool = False
) -> GradedGroupTable:
    groups = {
        j: cohomology(c, j, coeff, reduced) for j in range(c.max_degree + 1)
    }
    return GradedGroupTable(coeff, reduced, groups)


# ---------------------------------------------------------------------------
# constructors


def tensor(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """Tensor product with the Koszul sign on the left factor's degree."""
    _require_verified(c)
    _require_verified(d)
    top = c.max_degree + d.max_degree
    ranks = []
    offsets = []  # offsets[n][p] = index of cell (p, 0, 0) within degree n
    for n in range(top + 1):
        off = {}
        total = 0
        for p in range(max(0, n - d.max_degree), min(n, c.max_degree) + 1):
            off[p] = total
            total += c.rank(p) * d.rank(n - p)
        offsets.append(off)
        ranks.append(total)

    def cell_index(n, p, i, j):
        return offsets[n][p] + i * d.rank(n - p) + j

    boundaries = {}
    for n in range(1, top + 1):
        rows, cols = ranks[n - 1], ranks[n]
        if rows == 0 or cols == 0:
            continue
        flat = [0] * (rows * cols)
        for p, base in offsets[n].items():
            q = n - p
            dc = c.boundary(p)
            dd = d.boundary(q)
            sign = -1 if p % 2 else 1
            for i in range(c.rank(p)):
                for j in range(d.rank(q)):
                    col = base + i * d.rank(q) + j
                    if p >= 1:
                        for ell in range(c.rank(p - 1)):
                            e = dc[ell, i]
                            if e:
                                r = cell_index(n - 1, p - 1, ell, j)
                                flat[r * cols + col] += e
                    if q >= 1:
                        for m in range(d.rank(q - 1)):
                            e = dd[m, j]
                            if e:
                                r = cell_index(n - 1, p, i, m)
                                flat[r * cols + col] += sign * e
        boundaries[n] = IntegerMatrix(rows, cols, flat)

    basepoint = None
    if c.is_based and d.is_based:
        basepoint = cell_index(0, 0, c.basepoint, d.basepoint)
    return ChainComplex(ranks, boundaries, basepoint)


def equivariant_tensor(
    c: EquivariantChainComplex, d: EquivariantChainComplex
) -> EquivariantChainComplex:
    """Tensor over Z with the diagonal action, in a free group-ring basis.

    For group-ring generators x of c and y of d, the basis of the product in
    each bidegree is {x@y, x@(t.y)}; the diagonal action permutes the orbit
    {w.x @ w'.y} freely, so the result is again free with two generators per
    pair (x, y).
    """
    _require_verified(c)
    _require_verified(d)
    top = c.max_degree + d.max_degree
    ranks = []
    offsets = []
    for n in range(top + 1):
        off = {}
        total = 0
        for p in range(max(0, n - d.max_degree), min(n, c.max_degree) + 1):
            off[p] = total
            total += 2 * c.rank(p) * d.rank(n - p)
        offsets.append(off)
        ranks.append(total)

    def cell_index(n, p, i, j, twisted):
        return offsets[n][p] + (i * d.rank(n - p) + j) * 2 + twisted

    boundaries = {}
    for n in range(1, top + 1):
        rows, cols = ranks[n - 1], ranks[n]
        if rows == 0 or cols == 0:
            continue
        one = [0] * (rows * cols)
        tau = [0] * (rows * cols)
        for p, base in offsets[n].items():
            q = n - p
            ca, cb = c.boundary(p)
            da, db = d.boundary(q)
            sign = -1 if p % 2 else 1
            for i in range(c.rank(p)):
                for j in range(d.rank(q)):
                    for twisted in (0, 1):
                        col = base + (i * d.rank(q) + j) * 2 + twisted
                        if p >= 1:
                            for ell in range(c.rank(p - 1)):
                                alpha = ca[ell, i]
                                beta = cb[ell, i]
                                # d(x)@y keeps the twist on y; the t-part of
                                # d(x) lands on the opposite twist, as t.
                                if alpha:
                                    r = cell_index(n - 1, p - 1, ell, j, twisted)
                                    one[r * cols + col] += alpha
                                if beta:
                                    r = cell_index(
                                        n - 1, p - 1, ell, j, 1 - twisted
                                    )
                                    tau[r * cols + col] += beta
                        if q >= 1:
                            for m in range(d.rank(q - 1)):
                                gamma = da[m, j]
                                delta = db[m, j]
                                # x@d(y): gamma keeps the twist, delta flips
                                # it, both with plain integer coefficients.
                                if gamma:
                                    r = cell_index(n - 1, p, i, m, twisted)
                                    one[r * cols + col] += sign * gamma
                                if delta:
                                    r = cell_index(n - 1, p, i, m, 1 - twisted)
                                    one[r * cols + col] += sign * delta
        boundaries[n] = (
            IntegerMatrix(rows, cols, one),
            IntegerMatrix(rows, cols, tau),
        )
    return EquivariantChainComplex(ranks, boundaries)


def coinvariants(e: EquivariantChainComplex) -> ChainComplex:
    """Quotient complex of the free action: apply t -> 1 entrywise."""
    boundaries = {}
    for j in range(1, e.max_degree + 1):
        one, tau = e.boundary(j)
        boundaries[j] = _matrix_add(one, tau)
    basepoint = 0 if e.rank(0) > 0 else None
    return ChainComplex(e.ranks, boundaries, basepoint)


def _normalize_selection(c: ChainComplex, cell_selector) -> list:
    selected = []
    for j in range(c.max_degree + 1):
        if callable(cell_selector):
            chosen = {i for i in range(c.rank(j)) if cell_selector(j, i)}
        else:
            chosen = set(cell_selector.get(j, ()))
            if any(not 0 <= i < c.rank(j) for i in chosen):
                raise ValueError(f"selected cell out of range in degree {j}")
        selected.append(chosen)
    return selected


def quotient_by_subcomplex(c: ChainComplex, cell_selector) -> ChainComplex:
    """Collapse a subcomplex to the basepoint.

    ``cell_selector`` is either a callable (degree, index) -> bool or a
    mapping degree -> iterable of cell indices.  The selection must be closed
    under the boundary; selected cells in positive degrees are deleted, and
    selected 0-cells are identified to a single basepoint 0-cell.
    """
    selected = _normalize_selection(c, cell_selector)
    for j in range(1, c.max_degree + 1):
        b = c.boundary(j)
        for col in selected[j]:
            for i in range(b.rows):
                if b[i, col] != 0 and i not in selected[j - 1]:
                    raise ValueError(
                        f"selection is not boundary-closed: cell {col} in "
                        f"degree {j} hits unselected cell {i}"
                    )
    if not any(selected):
        return ChainComplex(
            c.ranks,
            {j: c.boundary(j) for j in range(1, c.max_degree + 1)},
            c.basepoint,
        )

    keep = [sorted(set(range(c.rank(j))) - selected[j]) for j in
            range(c.max_degree + 1)]
    collapse_zero = bool(selected[0])
    if collapse_zero:
        new_rank0 = 1 + len(keep[0])
        zero_map = {old: pos + 1 for pos, old in enumerate(keep[0])}
        basepoint = 0
    else:
        new_rank0 = c.rank(0)
        zero_map = {old: old for old in range(c.rank(0))}
        basepoint = c.basepoint

    ranks = [new_rank0] + [len(keep[j]) for j in range(1, c.max_degree + 1)]
    boundaries = {}
    b1 = c.boundary(1)
    if len(ranks) > 1 and ranks[1] > 0:
        flat = [0] * (new_rank0 * len(keep[1]))
        for col_pos, col in enumerate(keep[1]):
            for i in range(b1.rows):
                e = b1[i, col]
                if e:
                    if i in selected[0]:
                        flat[0 * len(keep[1]) + col_pos] += e
                    else:
                        flat[zero_map[i] * len(keep[1]) + col_pos] += e
        boundaries[1] = IntegerMatrix(new_rank0, len(keep[1]), flat)
    for j in range(2, c.max_degree + 1):
        b = c.boundary(j)
        rows = keep[j - 1]
        cols = keep[j]
        flat = [b[i, col] for i in rows for col in cols]
        boundaries[j] = IntegerMatrix(len(rows), len(cols), flat)
    return ChainComplex(ranks, boundaries, basepoint)


def suspend(c: ChainComplex) -> ChainComplex:
    """Reduced suspension: shift the reduced complex up one degree.

    Requires a based complex whose degree-1 boundary columns sum to zero
    (true of any honest cellular model); then reduced homology shifts,
    H~_{j+1} of the output = H~_j of the input.
    """
    if not c.is_based:
        raise ValueError("suspension requires a based complex")
    _require_reducible(c)
    bp = c.basepoint
    ranks = [1, c.rank(0) - 1] + [c.rank(j) for j in range(1, c.max_degree + 1)]
    keep0 = [i for i in range(c.rank(0)) if i != bp]
    boundaries = {}
    # suspended former 0-cells become 1-cells attached to the new basepoint
    # at both ends, so their boundary vanishes
    boundaries[1] = IntegerMatrix.zeros(1, len(keep0))
    if c.max_degree >= 1:
        b1 = c.boundary(1)
        flat = [b1[i, col] for i in keep0 for col in range(b1.cols)]
        boundaries[2] = IntegerMatrix(len(keep0), b1.cols, flat)
    for j in range(2, c.max_degree + 1):
        boundaries[j + 1] = c.boundary(j)
    return ChainComplex(ranks, boundaries, basepoint=0)


def wedge(summands: Iterable[ChainComplex]) -> ChainComplex:
    """One-point union: identify all basepoints to a single 0-cell."""
    parts = list(summands)
    if not parts:
        return ChainComplex((1,), {}, basepoint=0)
    for c in parts:
        if not c.is_based:
            raise ValueError("wedge requires based complexes")
    top = max(c.max_degree for c in parts)
    ranks = [0] * (top + 1)
    ranks[0] = 1
    zero_maps = []
    offsets = []  # offsets[s][j] = column offset of summand s in degree j
    for c in parts:
        zmap = {}
        for i in range(c.rank(0)):
            if i == c.basepoint:
                zmap[i] = 0
            else:
                zmap[i] = ranks[0]
                ranks[0] += 1
        zero_maps.append(zmap)
        offs = {}
        for j in range(1, c.max_degree + 1):
            offs[j] = ranks[j]
            ranks[j] += c.rank(j)
        offsets.append(offs)
    boundaries = {}
    for j in range(1, top + 1):
        rows = ranks[j - 1]
        cols = ranks[j]
        if rows == 0 or cols == 0:
            continue
        flat = [0] * (rows * cols)
        for s, c in enumerate(parts):
            if j > c.max_degree:
                continue
            b = c.boundary(j)
            base = offsets[s][j]
            if j == 1:
                for col in range(b.cols):
                    for i in range(b.rows):
                        e = b[i, col]
                        if e:
                            flat[zero_maps[s][i] * cols + (base + col)] += e
            else:
                rbase = offsets[s][j - 1]
                for col in range(b.cols):
                    for i in range(b.rows):
                        e = b[i, col]
                        if e:
                            flat[(rbase + i) * cols + (base + col)] += e
        boundaries[j] = IntegerMatrix(rows, cols, flat)
    return ChainComplex(ranks, boundaries, basepoint=0)
