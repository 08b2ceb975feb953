"""Named cellular models: spheres, tori, projective and stunted projective
spaces, and the sphere bundles S(kL) of sums of the canonical line bundle.

All models are minimal (spheres carry two cells) and based.  The equivariant
sphere is the standard free order-two structure with one group-ring generator
per degree and boundary (1 + (-1)^j t), so its coinvariants are literally the
real projective space complex with boundaries alternating 0, 2.
"""

from __future__ import annotations

import math

from .chain_complex import (
    ChainComplex,
    EquivariantChainComplex,
    coinvariants,
    equivariant_tensor,
    quotient_by_subcomplex,
    suspend,
    tensor,
    wedge,
)
from .exact_linalg import IntegerMatrix

__all__ = [
    "sphere",
    "circle",
    "torus",
    "equivariant_sphere",
    "rp",
    "stunted_rp",
    "sphere_bundle_skl",
    "thom_space_kl",
    "suspension_splitting_wedge",
]


def sphere(m: int) -> ChainComplex:
    """Minimal based model of the m-sphere (two cells; m = 0 gets two points)."""
    if m < 0:
        raise ValueError("sphere dimension must be nonnegative")
    if m == 0:
        return ChainComplex((2,), {}, basepoint=0)
    ranks = [1] + [0] * (m - 1) + [1]
    return ChainComplex(ranks, {}, basepoint=0)


def circle() -> ChainComplex:
    return sphere(1)


def torus(n: int) -> ChainComplex:
    """The n-torus as an n-fold tensor power of the circle."""
    if n < 1:
        raise ValueError("torus dimension must be positive")
    out = circle()
    for _ in range(n - 1):
        out = tensor(out, circle())
    return out


def equivariant_sphere(m: int) -> EquivariantChainComplex:
    """Free order-two model of the m-sphere with the antipodal action."""
    if m < 0:
        raise ValueError("sphere dimension must be nonnegative")
    boundaries = {}
    for j in range(1, m + 1):
        one = IntegerMatrix.from_rows([[1]])
        tau = IntegerMatrix.from_rows([[(-1) ** j]])
        boundaries[j] = (one, tau)
    return EquivariantChainComplex((1,) * (m + 1), boundaries)


def rp(m: int) -> ChainComplex:
    """Real projective m-space (coinvariants of the equivariant sphere)."""
    if m < 0:
        raise ValueError("projective space dimension must be nonnegative")
    return coinvariants(equivariant_sphere(m))


def stunted_rp(m: int, k: int) -> ChainComplex:
    """RP^m with RP^(k-1) collapsed; reduced cells in degrees k..m."""
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    return quotient_by_subcomplex(rp(m), lambda degree, _i: degree < k)


def sphere_bundle_skl(k: int) -> ChainComplex:
    """Sphere bundle of k copies of the canonical line bundle over RP^2.

    Modeled as the quotient of S^(k-1) x S^2 by the simultaneous antipodal
    action: coinvariants of the equivariant tensor product.  This is the
    chain-level oracle for the closed-form suspension answers.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    product = equivariant_tensor(equivariant_sphere(k - 1), equivariant_sphere(2))
    return coinvariants(product)


def thom_space_kl(k: int, m: int) -> ChainComplex:
    """Thom space of k copies of the canonical line bundle over RP^m.

    This is the stunted projective space RP^(k+m)/RP^(k-1); the alias records
    the identification.
    """
    if k < 1 or m < 1:
        raise ValueError("need k >= 1 and m >= 1")
    return stunted_rp(k + m, k)


def suspension_splitting_wedge(n: int) -> ChainComplex:
    """Wedge of C(n, k) copies of the suspended S(kL) models, k = 1..n.

    Its reduced (co)homology agrees with that of the space of commuting
    n-tuples in SU(2); this is the chain-level side of the splitting that the
    closed-form tables are checked against.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    parts = []
    for k in range(1, n + 1):
        block = suspend(sphere_bundle_skl(k))
        parts.extend([block] * math.comb(n, k))
    return wedge(parts)
