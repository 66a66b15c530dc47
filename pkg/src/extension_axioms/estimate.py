"""
Monte Carlo estimation of extension-axiom failure rates.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional, Tuple

from scipy.stats import norm

from core.errors import PreconditionError
from core.models import Signature
from core.prng import Prng
from structures.combinatorics import falling_factorial
from structures.sampling import sample_random_graph, sample_random_hypergraph, sample_random_structure

from .atomic import entry_count
from .graph import check_ea_graph
from .hypergraph import check_ea_hypergraph
from .structure import check_ea_structure

KINDS = ("graph", "hypergraph", "structure")


def wilson_interval(failures: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise PreconditionError("trials must be >= 1")
    z = float(norm.ppf(1 - (1 - confidence) / 2))
    phat = failures / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass(frozen=True)
class FailureEstimate:
    """Failure count over independent samples with its Wilson interval."""
    kind: str
    k: int
    trials: int
    failures: int
    interval: Tuple[float, float]
    union_bound: float

    @property
    def failure_rate(self) -> Fraction:
        return Fraction(self.failures, self.trials)

    def as_metrics(self) -> Dict[str, Any]:
        return {
            "trials": self.trials,
            "failures": self.failures,
            "failure_rate": f"{self.failure_rate.numerator}/{self.failure_rate.denominator}",
            "wilson_low": round(self.interval[0], 6),
            "wilson_high": round(self.interval[1], 6),
            "union_bound": self.union_bound,
        }


def _trial(kind: str, params: Mapping[str, Any], k: int, rng: Prng, budget: Optional[int]) -> bool:
    n = params["n"]
    if kind == "graph":
        return check_ea_graph(sample_random_graph(n, rng), k, budget).holds
    if kind == "hypergraph":
        return check_ea_hypergraph(sample_random_hypergraph(n, params["t"], rng), k, budget).holds
    return check_ea_structure(sample_random_structure(params["sig"], n, rng), k, budget).holds


def ea_failure_bound(kind: str, params: Mapping[str, Any], k: int) -> float:
    """
    Union bound on the probability that a uniform sample fails EA_k.

    Each of the `choices` (S, target) pairs fails when all n-k outside
    elements miss a target of probability 2^-bits.
    """
    n = params["n"]
    if kind == "graph":
        bits = k
        choices = math.comb(n, k) * 2 ** bits
    elif kind == "hypergraph":
        bits = math.comb(k, params["t"] - 1)
        choices = math.comb(n, k) * 2 ** bits
    elif kind == "structure":
        bits = entry_count(params["sig"], k)
        choices = falling_factorial(n, k) * 2 ** bits
    else:
        raise PreconditionError(f"unknown kind {kind!r}")
    if n - k <= 0 or choices == 0:
        return 1.0
    log_bound = math.log(choices) + (n - k) * math.log1p(-(2.0 ** -bits))
    return 1.0 if log_bound >= 0 else math.exp(log_bound)


def estimate_ea_failure(
    kind: str,
    params: Mapping[str, Any],
    k: int,
    trials: int,
    rng: Prng,
    threads: int = 1,
    confidence: float = 0.95,
    budget: Optional[int] = None,
) -> FailureEstimate:
    """
    Fraction of uniform samples that fail the extension axiom.

    Args:
        kind: "graph", "hypergraph" or "structure".
        params: {"n"} plus "t" for hypergraphs or "sig" for structures.
        k: Axiom size.
        trials: Number of samples; trial i uses rng.child(i).
        rng: Source of randomness.
        threads: Worker threads; counts are merged, so the result does not depend on it.
        confidence: Wilson interval confidence level.
        budget: Per-sample checker budget.

    Raises:
        PreconditionError: On trials < 1, an unknown kind or missing params.
        BudgetExceededError: Propagated from the checker.
    """
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    if kind not in KINDS:
        raise PreconditionError(f"kind must be one of {KINDS}, got {kind!r}")
    required = {"graph": ("n",), "hypergraph": ("n", "t"), "structure": ("n", "sig")}[kind]
    missing = [key for key in required if params.get(key) is None]
    if missing:
        raise PreconditionError(f"{kind} estimation needs params {missing}")
    if kind == "structure" and not isinstance(params["sig"], Signature):
        raise PreconditionError("params['sig'] must be a Signature")

    def run(i: int) -> bool:
        return _trial(kind, params, k, rng.child(i), budget)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run, range(trials)))
    else:
        outcomes = [run(i) for i in range(trials)]

    failures = sum(1 for holds in outcomes if not holds)
    return FailureEstimate(
        kind=kind,
        k=k,
        trials=trials,
        failures=failures,
        interval=wilson_interval(failures, trials, confidence),
        union_bound=ea_failure_bound(kind, params, k),
    )
