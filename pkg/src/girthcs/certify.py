"""Exact verification of claimed nullspace certificates."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real
from typing import Optional, Sequence

from girthcs.binmat import BinaryMatrix
from girthcs.errors import BoundsNotApplicable, FormatError

MAX_DENOMINATOR = 10**6


def rationalize(values: Sequence, max_denominator: int = MAX_DENOMINATOR):
    """Convert to Fractions; floats are rounded to the nearest rational with
    bounded denominator.  Returns ``(fractions, max rounding distance)``."""
    out, dist = [], 0.0
    for v in values:
        if isinstance(v, (Rational, str)):
            f = Fraction(v)
        elif isinstance(v, Real):
            f = Fraction(float(v)).limit_denominator(max_denominator)
            dist = max(dist, abs(float(v) - float(f)))
        else:
            f = Fraction(v)
        out.append(f)
    return out, dist


def load_certificate(text: str) -> list[Fraction]:
    """One rational (``p/q``) or decimal per line; ``#`` starts a comment."""
    vals = []
    for no, line in enumerate(text.splitlines(), start=1):
        tok = line.split("#", 1)[0].strip()
        if not tok:
            continue
        try:
            vals.append(Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"not a rational or decimal: {tok!r}", no) from None
    return vals


def save_certificate(w: Sequence) -> str:
    return "".join(f"{Fraction(v)}\n" for v in w)


@dataclass(frozen=True)
class CertificateReport:
    in_nullspace: bool
    balance_ok: Optional[bool]  # None: not applicable (non-uniform column weight)
    l1: Fraction
    l2: float
    linf: Fraction
    awgn_pseudoweight: Fraction
    maxfrac_pseudoweight: Fraction
    tightness: Optional[Fraction]
    c0_used: Optional[Fraction]
    rounding_distance: float = 0.0
    note: str = ""


def _nullspace_residual(H: BinaryMatrix, w: Sequence[Fraction]) -> list[Fraction]:
    return [sum((w[j] for j in row), Fraction(0)) for row in H.row_support]


def verify_certificate(H: BinaryMatrix, w: Sequence, c0=None) -> CertificateReport:
    """Check ``w`` against ``H`` in exact arithmetic.

    ``c0`` defaults to the theoretical constant of ``H``'s profile; when the
    guarantee does not apply, tightness is left unset.
    """
    from girthcs.bounds import guarantee
    from girthcs.tanner import profile

    w, dist = rationalize(w)
    if len(w) != H.n:
        raise ValueError(f"certificate length {len(w)} != n = {H.n}")
    if not any(w):
        raise ValueError("certificate must be non-zero")
    notes = []
    in_null = all(r == 0 for r in _nullspace_residual(H, w))

    l1 = sum((abs(v) for v in w), Fraction(0))
    l2sq = sum((v * v for v in w), Fraction(0))
    linf = max(abs(v) for v in w)

    if len(set(H.col_weights)) == 1:
        pos = sum((v for v in w if v > 0), Fraction(0))
        neg = -sum((v for v in w if v < 0), Fraction(0))
        balance = pos == neg == l1 / 2
    else:
        balance = None
        notes.append("balance check not applicable: non-uniform column weight")

    if c0 is None:
        try:
            c0 = guarantee(profile(H)).c0
        except BoundsNotApplicable as exc:
            notes.append(f"no theoretical C0: {exc}")
    c0 = None if c0 is None else Fraction(c0)
    tight = None if c0 is None else linf * c0 / l1
    return CertificateReport(
        in_nullspace=in_null, balance_ok=balance, l1=l1, l2=math.sqrt(l2sq), linf=linf,
        awgn_pseudoweight=l1 * l1 / l2sq, maxfrac_pseudoweight=l1 / linf,
        tightness=tight, c0_used=c0, rounding_distance=dist, note="; ".join(notes))


def condition5_holds(H: Optional[BinaryMatrix], w: Sequence, c0) -> bool:
    """``max_i |w_i| <= ||w||_1 / c0``, decided exactly for rational input."""
    w, _ = rationalize(w)
    if H is not None and len(w) != H.n:
        raise ValueError(f"vector length {len(w)} != n = {H.n}")
    if not any(w):
        raise ValueError("vector must be non-zero")
    l1 = sum((abs(v) for v in w), Fraction(0))
    return max(abs(v) for v in w) * Fraction(c0) <= l1
