"""Reconstruction-guarantee constants for column-regular binary matrices.

``c0`` bounds every nullspace coordinate by ``||w||_1 / c0``; basis pursuit
then recovers every k-sparse signal with ``k < c0 / 2``.  All threshold
quantities are exact rationals so that strict inequalities in ``k`` are
decided without rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from girthcs.errors import BoundsNotApplicable, InfeasibleParameters
from girthcs.tanner import INFINITE, MatrixProfile


def c0_girth4(gamma: int, lam: int) -> Fraction:
    """``2*gamma/lam``: valid for any column-regular matrix (any girth)."""
    if gamma < 1:
        raise InfeasibleParameters("gamma must be at least 1")
    if lam == 0:
        raise BoundsNotApplicable("lambda = 0: no two columns intersect")
    if not 1 <= lam <= gamma:
        raise InfeasibleParameters(f"lambda must lie in 1..gamma, got {lam}")
    return Fraction(2 * gamma, lam)


def tree_depth(g: int) -> int:
    """Number of complete local-tree levels beyond level 0, ``floor((g-6)/4)``."""
    return (g - 6) // 4


def _geometric(gamma: int, t: int) -> int:
    return sum((gamma - 1) ** u for u in range(t + 2))


def c0_girth6(gamma: int, g: int) -> int:
    """``2 * sum_{u=0}^{t+1} (gamma-1)^u`` with ``t = floor((g-6)/4)``."""
    if gamma < 2:
        raise InfeasibleParameters("girth formula requires gamma >= 2")
    if g < 6 or g % 2:
        raise InfeasibleParameters(f"girth must be even and >= 6, got {g}")
    return 2 * _geometric(gamma, tree_depth(g))


def largest_k_below(sup) -> int:
    """Largest integer ``k`` with ``k < sup`` (exact for rationals)."""
    return math.ceil(Fraction(sup)) - 1


def nsp_k_sup(gamma: int, g: int) -> Fraction:
    """Pseudoweight-based recoverable sparsity supremum for girth >= 6."""
    t = tree_depth(g)
    s = Fraction(_geometric(gamma, t))
    if (g // 2) % 2:
        return s - Fraction((gamma - 1) ** (t + 1), 2)
    return s


def rip_k_sup(gamma: int, lam: int) -> Fraction:
    """RIP-based recoverable sparsity supremum ``(1 + gamma/lam) / 2``."""
    return (1 + Fraction(gamma, lam)) / 2


@dataclass(frozen=True)
class GuaranteeBundle:
    c0: Fraction
    source: str  # "girth4" or "girth6"
    t: Optional[int]
    k_max: int
    rip_k_sup: Fraction
    nsp_k_sup: Optional[Fraction]
    gamma: int
    girth: object
    lam: int

    @property
    def rip_k_max(self) -> int:
        return largest_k_below(self.rip_k_sup)

    @property
    def nsp_k_max(self) -> Optional[int]:
        return None if self.nsp_k_sup is None else largest_k_below(self.nsp_k_sup)


def guarantee_from(gamma: int, g, lam: int) -> GuaranteeBundle:
    if g is INFINITE:
        raise BoundsNotApplicable("girth unbounded: the girth-based guarantees do not apply")
    if lam == 0:
        raise BoundsNotApplicable("lambda = 0: no two columns intersect")
    if g == 4:
        c0 = c0_girth4(gamma, lam)
        source, t, nsp = "girth4", None, None
    elif gamma >= 2:
        c4 = c0_girth4(gamma, 1)
        c6 = Fraction(c0_girth6(gamma, g))
        c0 = max(c4, c6)
        source = "girth6" if c6 >= c4 else "girth4"
        t, nsp = tree_depth(g), nsp_k_sup(gamma, g)
    else:
        c0 = c0_girth4(gamma, 1)
        source, t, nsp = "girth4", None, None
    return GuaranteeBundle(c0=c0, source=source, t=t, k_max=largest_k_below(c0 / 2),
                           rip_k_sup=rip_k_sup(gamma, lam), nsp_k_sup=nsp,
                           gamma=gamma, girth=g, lam=lam)


def guarantee(profile: MatrixProfile) -> GuaranteeBundle:
    """Guarantee constants for a matrix profile (requires uniform column weight)."""
    if profile.gamma is None:
        raise BoundsNotApplicable("non-uniform column weight")
    return guarantee_from(profile.gamma, profile.girth, profile.lam)


@dataclass(frozen=True)
class ApproximationConstants:
    """Multipliers of ``||x_Kbar||_1 / k`` in the l1, l2 and linf error bounds."""

    c1: float
    c2: float
    c3: float
    k: int
    exact_c1: Fraction
    exact_c3: Fraction


def approximation_constants(c0, k: int) -> ApproximationConstants:
    c0 = Fraction(c0)
    if k < 1:
        raise InfeasibleParameters("k must be at least 1")
    if not k < c0 / 2:
        raise InfeasibleParameters(f"k >= C0/2 ({k} >= {c0 / 2}): constants undefined")
    excess = c0 / (2 * k) - 1
    c1 = c0 / excess
    c3 = 1 / excess
    c2 = math.sqrt(c0) / float(excess)
    return ApproximationConstants(float(c1), c2, float(c3), k, c1, c3)


def prop13_l2_constant(c_prime, k: int) -> float:
    """l2/l1 multiplier ``1 / (sqrt(C'/4k) - 1)`` from the AWGN-pseudoweight route."""
    if not c_prime > 4 * k:
        raise InfeasibleParameters(f"requires C' > 4k, got C'={c_prime}, k={k}")
    return 1.0 / (math.sqrt(float(Fraction(c_prime) / (4 * k))) - 1.0)


def l2_guarantee_sharper(c0, k: int) -> bool:
    """True when ``C2/k < C''/sqrt(k)`` taking ``C' = C0`` (needs ``C0 > 4k``)."""
    ours = approximation_constants(c0, k).c2 / k
    theirs = prop13_l2_constant(c0, k) / math.sqrt(k)
    return ours < theirs
