"""Closed-form cohomology tables and the cross-checking machinery.

The reduced integral cohomology of the suspended sphere bundles has a short
case-by-case description; assembling binomially many copies over k = 1..n
gives the full table for the space of commuting n-tuples in SU(2).  Every
closed form here is verifiable against two independent computations: the
cellular chain pipeline and, rationally, an order-two invariant-theory count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .chain_complex import (
    GradedGroupTable,
    cohomology_table,
    parse_coefficients,
)
from .exact_linalg import AbelianGroup, direct_sum

__all__ = [
    "PoincarePolynomial",
    "SplittingSummand",
    "VerificationItem",
    "VerificationReport",
    "stunted_cohomology_closed_form",
    "sigma_skl_closed_form",
    "splitting_summands",
    "commuting_tuple_cohomology",
    "rational_poincare",
    "verify_all",
]

# literal subset enumeration is exponential; beyond this bound only the
# binomial closed form is evaluated
ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class PoincarePolynomial:
    """Graded dimension generating function with nonnegative coefficients."""

    coefficients: tuple = ()

    def __post_init__(self):
        coeffs = tuple(int(x) for x in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if any(x < 0 for x in coeffs):
            raise ValueError("coefficients must be nonnegative")
        object.__setattr__(self, "coefficients", coeffs)

    def coefficient(self, j: int) -> int:
        if 0 <= j < len(self.coefficients):
            return self.coefficients[j]
        return 0

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, t: int) -> int:
        return sum(c * t ** j for j, c in enumerate(self.coefficients))

    def euler_characteristic(self) -> int:
        return self.evaluate(-1)

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for j, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                lead = "" if c == 1 else str(c)
                power = "t" if j == 1 else f"t^{j}"
                terms.append(lead + power)
        return " + ".join(terms)


@dataclass(frozen=True)
class SplittingSummand:
    """One wedge block of the suspension splitting: C(n, k) copies at index k."""

    k: int
    multiplicity: int
    piece: str

    _PIECES = ("S3", "S2_wedge_stunted", "SigmaRP2_wedge_stunted")

    def __post_init__(self):
        if self.piece not in self._PIECES:
            raise ValueError(f"unknown piece tag {self.piece!r}")


def _merge_groups(*tables: dict) -> dict:
    out: dict = {}
    for table in tables:
        for j, g in table.items():
            out[j] = direct_sum(out[j], g) if j in out else g
    return out


_Z = AbelianGroup.free(1)
_Z2 = AbelianGroup.cyclic(2)


def stunted_cohomology_closed_form(k: int) -> GradedGroupTable:
    """Reduced integral cohomology of RP^(k+2)/RP^(k-1).

    For k >= 3 there is a Z in degree k+1-(-1)^k and a Z/2 in degree
    k + (3+(-1)^k)/2; for k = 2 only a Z/2 in degree 4.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    if k == 2:
        groups = {4: _Z2}
    else:
        sign = (-1) ** k
        groups = {k + 1 - sign: _Z, k + (3 + sign) // 2: _Z2}
    return GradedGroupTable("Z", True, groups)


def sigma_skl_closed_form(k: int) -> GradedGroupTable:
    """Reduced integral cohomology of the suspended sphere bundle of kL.

    k = 1 is a 3-sphere; k = 2 splits as S^2 wedge RP^4/RP^2; k >= 3 splits
    as a suspended RP^2 wedge RP^(k+2)/RP^(k-1).
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if k == 1:
        groups = {3: _Z}
    elif k == 2:
        groups = {2: _Z, 4: _Z2}
    else:
        groups = _merge_groups(
            {3: _Z2}, stunted_cohomology_closed_form(k).groups
        )
    return GradedGroupTable("Z", True, groups)


def splitting_summands(n: int) -> list:
    """The wedge blocks of the suspension splitting for n-tuples."""
    if n < 1:
        raise ValueError("need n >= 1")
    out = []
    for k in range(1, n + 1):
        if k == 1:
            piece = "S3"
        elif k == 2:
            piece = "S2_wedge_stunted"
        else:
            piece = "SigmaRP2_wedge_stunted"
        out.append(SplittingSummand(k, math.comb(n, k), piece))
    return out


def commuting_tuple_cohomology(n: int, coeff: str = "Z") -> GradedGroupTable:
    """Unreduced cohomology of the space of commuting n-tuples in SU(2).

    The reduced part is the direct sum over k = 1..n of C(n, k) copies of the
    suspended sphere-bundle table; degree 0 carries one copy of the
    coefficient ring.  Field tables are derived from the integral one by
    universal coefficients.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    p = parse_coefficients(coeff)
    pieces = []
    for summand in splitting_summands(n):
        block = sigma_skl_closed_form(summand.k).groups
        pieces.extend([block] * summand.multiplicity)
    integral = _merge_groups({0: _Z}, *pieces)
    if p is None:
        return GradedGroupTable("Z", False, integral)
    if p == 0:
        groups = {
            j: AbelianGroup.free(g.free_rank)
            for j, g in integral.items()
            if g.free_rank
        }
        return GradedGroupTable("Q", False, groups)
    top = max(integral)
    groups = {}
    for j in range(top + 1):
        here = integral.get(j, AbelianGroup.trivial())
        above = integral.get(j + 1, AbelianGroup.trivial())
        dim = (
            here.free_rank
            + here.torsion_rank_at(p)
            + above.torsion_rank_at(p)
        )
        if dim:
            groups[j] = AbelianGroup.free(dim)
    return GradedGroupTable(coeff, False, groups)


def rational_poincare(n: int) -> PoincarePolynomial:
    """Rational Poincare polynomial of the commuting n-tuple space.

    Counts order-two-invariant monomials s^e * x_S (e in {0,1}, S a subset of
    n degree-one generators, invariance forcing e + |S| even, total degree
    2e + |S|), and independently evaluates the binomial closed form
    ((1+t)^n + (1-t)^n)/2 + t^2 ((1+t)^n - (1-t)^n)/2.  Both are computed and
    must agree.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    top = n + 2
    closed = [0] * (top + 1)
    for j in range(top + 1):
        # even-degree part of (1+t)^n, plus t^2 times the odd-degree part
        if j % 2 == 0:
            closed[j] += math.comb(n, j) if j <= n else 0
        else:
            if 0 <= j - 2 <= n:
                closed[j] += math.comb(n, j - 2)
    closed_poly = PoincarePolynomial(tuple(closed))
    if n <= ENUMERATION_LIMIT:
        counted = [0] * (top + 1)
        for mask in range(1 << n):
            size = mask.bit_count()
            for e in (0, 1):
                if (e + size) % 2 == 0:
                    counted[2 * e + size] += 1
        counted_poly = PoincarePolynomial(tuple(counted))
        if counted_poly != closed_poly:
            raise RuntimeError(
                f"invariant-monomial count {counted_poly} disagrees with the "
                f"binomial closed form {closed_poly} at n={n}"
            )
    return closed_poly


@dataclass(frozen=True)
class VerificationItem:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        suffix = f": {self.detail}" if (self.detail and not self.passed) else ""
        return f"{status} {self.name}{suffix}"


@dataclass(frozen=True)
class VerificationReport:
    items: tuple = ()

    @property
    def all_passed(self) -> bool:
        return all(item.passed for item in self.items)

    def lines(self) -> list:
        out = [item.line() for item in self.items]
        n_fail = sum(1 for item in self.items if not item.passed)
        out.append(
            f"{len(self.items)} checks, "
            + ("all passed" if n_fail == 0 else f"{n_fail} FAILED")
        )
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _check(name: str, thunk) -> VerificationItem:
    try:
        ok, detail = thunk()
    except Exception as exc:  # report, never raise
        return VerificationItem(name, False, f"{type(exc).__name__}: {exc}")
    return VerificationItem(name, bool(ok), detail)


def verify_all(max_n: int = 8, max_k: int = 12) -> VerificationReport:
    """Cross-check every closed form against its independent oracles.

    (a) per k: the suspended sphere-bundle closed form against the cellular
    chain computation; (b) per n: the assembled table against the chain
    computation on the explicit wedge model; (c) per n: integral free ranks
    against the rational invariant count.  Failures become report entries.
    """
    if max_n < 1 or max_k < 1:
        raise ValueError("bounds must be positive")
    from .space_models import sphere_bundle_skl, suspension_splitting_wedge
    from .chain_complex import suspend

    items = []
    for k in range(1, max_k + 1):
        def check_block(k=k):
            closed = sigma_skl_closed_form(k)
            chain = cohomology_table(
                suspend(sphere_bundle_skl(k)), "Z", reduced=True
            )
            return closed == chain, f"closed {closed!r} vs chain {chain!r}"

        items.append(_check(f"suspended S({k}L) closed form vs chain", check_block))
    for n in range(1, max_n + 1):
        def check_table(n=n):
            closed = commuting_tuple_cohomology(n, "Z")
            chain = cohomology_table(
                suspension_splitting_wedge(n), "Z", reduced=False
            )
            return closed == chain, f"closed {closed!r} vs chain {chain!r}"

        items.append(_check(f"n={n} table closed form vs wedge chain", check_table))
    for n in range(1, max_n + 1):
        def check_ranks(n=n):
            table = commuting_tuple_cohomology(n, "Z")
            poly = rational_poincare(n)
            top = max(table.max_degree, poly.degree)
            for j in range(top + 1):
                if table.group_at(j).free_rank != poly.coefficient(j):
                    return False, (
                        f"degree {j}: free rank "
                        f"{table.group_at(j).free_rank} vs coefficient "
                        f"{poly.coefficient(j)}"
                    )
            return True, ""

        items.append(_check(f"n={n} free ranks vs rational count", check_ranks))
    return VerificationReport(tuple(items))
