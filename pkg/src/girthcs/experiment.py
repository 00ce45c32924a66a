"""Exact-recovery and sparse-approximation experiments with CSV reporting."""
from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from girthcs.binmat import BinaryMatrix
from girthcs.bounds import GuaranteeBundle, approximation_constants, guarantee
from girthcs.errors import BoundsNotApplicable, EnumerationLimit, InfeasibleParameters
from girthcs.lpsolve import ENUMERATION_LIMIT, FEAS_TOL, basis_pursuit
from girthcs.rng import TrialRNG, stream_id
from girthcs.tanner import MatrixProfile, profile

CSV_HEADER = ("matrix_id,n,m,gamma,girth,lambda,c0,k,trial,support,signs,success,"
              "linf_err,l1_ratio,l2_ratio,linf_ratio,alt_opt,residual")

MAG_LOW, MAG_HIGH = 0.5, 2.0
DEFAULT_TAIL_EPS = 1e-3


@dataclass
class ExperimentConfig:
    matrix_id: str
    H: BinaryMatrix
    k_values: Sequence[int]
    trials: int = 100
    seed: int = 0
    exhaustive: bool = False
    tail_eps: float = 0.0

    def __post_init__(self):
        if self.trials < 1:
            raise InfeasibleParameters("trials must be positive")
        for k in self.k_values:
            if not 1 <= k <= self.H.n:
                raise InfeasibleParameters(f"k = {k} outside 1..{self.H.n}")
            if self.exhaustive:
                work = math.comb(self.H.n, k) * 2**k
                if work > ENUMERATION_LIMIT:
                    raise EnumerationLimit(f"exhaustive k={k}: C(n,k)*2^k = {work} "
                                           f"exceeds {ENUMERATION_LIMIT}")


@dataclass(frozen=True)
class TrialRecord:
    k: int
    trial: int
    support: tuple[int, ...]
    signs: tuple[int, ...]
    success: bool
    linf_err: float
    l1_ratio: Optional[float]
    l2_ratio: Optional[float]
    linf_ratio: Optional[float]
    alt_opt: bool
    residual: float
    violation: str = ""


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    profile: MatrixProfile
    bundle: Optional[GuaranteeBundle]
    records: list[TrialRecord] = field(default_factory=list)

    @property
    def violations(self) -> list[TrialRecord]:
        return [r for r in self.records if r.violation]

    def summary(self) -> list[dict]:
        rows = []
        for k, group in itertools.groupby(self.records, key=lambda r: r.k):
            group = list(group)
            rows.append(dict(k=k, trials=len(group),
                             success_rate=sum(r.success for r in group) / len(group),
                             alt_opt=sum(r.alt_opt for r in group),
                             violations=sum(bool(r.violation) for r in group)))
        return rows

    def to_csv(self) -> str:
        p, b = self.profile, self.bundle
        prefix = [self.config.matrix_id, str(p.n), str(p.m),
                  "" if p.gamma is None else str(p.gamma), str(p.girth), str(p.lam),
                  "" if b is None else str(b.c0)]
        buf = io.StringIO()
        buf.write(CSV_HEADER + "\n")
        for r in self.records:
            cells = prefix + [
                str(r.k), str(r.trial), ";".join(map(str, r.support)),
                "".join("+" if s > 0 else "-" for s in r.signs), str(int(r.success)),
                _fmt(r.linf_err), _fmt(r.l1_ratio), _fmt(r.l2_ratio), _fmt(r.linf_ratio),
                str(int(r.alt_opt)), _fmt(r.residual)]
            buf.write(",".join(cells) + "\n")
        return buf.getvalue()


def _fmt(v: Optional[float]) -> str:
    return "" if v is None else repr(float(v))


def _patterns(cfg: ExperimentConfig, k: int) -> Iterator[tuple[int, TrialRNG, tuple, tuple]]:
    """Yield ``(trial, rng, support, signs)`` in trial order for sparsity ``k``."""
    n = cfg.H.n
    if cfg.exhaustive:
        t = 0
        for K in itertools.combinations(range(n), k):
            for s in itertools.product((1, -1), repeat=k):
                for _ in range(cfg.trials):
                    yield t, TrialRNG(cfg.seed, stream_id(k, t)), K, s
                    t += 1
    else:
        for t in range(cfg.trials):
            rng = TrialRNG(cfg.seed, stream_id(k, t))
            K = tuple(sorted(rng.sample(n, k)))
            s = tuple(rng.signs(k))
            yield t, rng, K, s


def best_k_support(x: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest |x_i|, ties to the lowest index."""
    return np.sort(np.argsort(-np.abs(x), kind="stable")[:k])


def run_trial(H: BinaryMatrix, D: np.ndarray, k: int, trial: int, rng: TrialRNG,
              support, signs, tail_eps: float, bundle: Optional[GuaranteeBundle]) -> TrialRecord:
    n = H.n
    x = np.zeros(n)
    x[list(support)] = np.array(signs, dtype=np.float64) * rng.uniform(k, MAG_LOW, MAG_HIGH)
    if tail_eps > 0:
        tail = rng.uniform(n, -tail_eps, tail_eps)
        off = np.ones(n, dtype=bool)
        off[list(support)] = False
        x[off] = tail[off]
    res = basis_pursuit(H, D @ x, x)

    K = best_k_support(x, k)
    rest = np.ones(n, dtype=bool)
    rest[K] = False
    tail_l1 = float(np.abs(x[rest]).sum())
    ratios = (None, None, None)
    if tail_l1 > 0:
        ratios = tuple(e * k / tail_l1 for e in (res.err_l1, res.err_l2, res.err_linf))

    violation = ""
    guaranteed = bundle is not None and k <= bundle.k_max
    if guaranteed:
        if tail_l1 == 0:
            if not res.success:
                violation = "exact recovery failed"
        else:
            consts = approximation_constants(bundle.c0, k)
            slack = FEAS_TOL * max(1.0, float(np.abs(x).max()))
            errs = (res.err_l1, res.err_l2, res.err_linf)
            failed = [name for name, err, c in
                      zip(("l1/l1", "l2/l1", "linf/l1"), errs,
                          (consts.c1, consts.c2, consts.c3))
                      if err > c * tail_l1 / k + slack]
            violation = ",".join(failed)
    return TrialRecord(k, trial, tuple(support), tuple(signs), bool(res.success),
                       res.err_linf, *ratios, res.alternate_optimum, res.residual, violation)


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run every trial; records are ordered by ``(k, trial)``."""
    prof = profile(cfg.H)
    try:
        bundle = guarantee(prof)
    except BoundsNotApplicable:
        bundle = None
    D = cfg.H.to_dense(np.float64)
    result = ExperimentResult(cfg, prof, bundle)
    for k in sorted(set(cfg.k_values)):
        for t, rng, K, s in _patterns(cfg, k):
            result.records.append(run_trial(cfg.H, D, k, t, rng, K, s, cfg.tail_eps, bundle))
    return result
