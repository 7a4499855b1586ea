"""Isolating-vector machinery: elimination oracles, chains, and sampling.

A random vector z with entries in {1..R} almost always orders a finite set
C of integer vectors so that greedily taking the unique inner-product
minimizer (skipping everything already eliminated by the chain so far)
walks through a maximal chain. The radius R needed for failure probability
eps is computed by isolation_radius.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from . import linalg as la
from .errors import NotUnique, PreconditionViolated, RetryLimitExceeded

log = logging.getLogger(__name__)

DEFAULT_MAX_DRAWS = 64


class EliminationOracle:
    """Membership test for the closure E(A) of a set of integer vectors.

    E(A) may be infinite (the span oracle closes over a whole subspace),
    so the oracle exposes only membership, never the set itself.
    """

    def __init__(self, name, member_fn):
        self.name = name
        self._member = member_fn

    def member(self, A, x) -> bool:
        return self._member(tuple(tuple(a) for a in A), tuple(x))

    def __repr__(self):
        return f"EliminationOracle({self.name!r})"


def span_oracle() -> EliminationOracle:
    """E(A) = span(A) intersected with the integer vectors."""

    def member(A, x):
        if not A:
            return not any(x)
        return la.int_rank(A + (x,)) == la.int_rank(A)

    return EliminationOracle("span", member)


def trivial_oracle() -> EliminationOracle:
    """E(empty) = empty, E(anything else) = everything."""

    def member(A, x):
        return bool(A)

    return EliminationOracle("trivial", member)


def top_d_oracle(d: int) -> EliminationOracle:
    """Identity on sets smaller than d, everything once |A| reaches d."""

    def member(A, x):
        if len(A) < d:
            return x in A
        return True

    return EliminationOracle(f"top_{d}", member)


@dataclass(frozen=True)
class Chain:
    vectors: tuple
    selector: la.IntVec
    maximal: bool


def extract_chain(C, z, oracle: EliminationOracle) -> Chain:
    """Greedy unique-minimizer chain of C under the selector z.

    At each step the not-yet-eliminated vector with the strictly smallest
    inner product against z is appended; a tie raises NotUnique with the
    1-based step index. Runs until everything is eliminated, so returned
    chains are always maximal.
    """
    vecs = sorted({tuple(c) for c in C})
    if not vecs:
        raise PreconditionViolated("C must be nonempty")
    z = tuple(z)
    dots = {c: la.dot(z, c) for c in vecs}
    chain = []
    step = 1
    while True:
        active = [c for c in vecs if not oracle.member(chain, c)]
        if not active:
            return Chain(tuple(chain), z, True)
        best = min(dots[c] for c in active)
        hits = [c for c in active if dots[c] == best]
        if len(hits) > 1:
            raise NotUnique(step)
        chain.append(hits[0])
        step += 1


def isolation_radius(K: int, m: int, n: int, eps) -> int:
    """Sampling radius ceil(K*(2K+1)*m^2*n / eps).

    K bounds the max-norm of the vectors, m the chain length, n the
    dimension; eps in (0, 1] is the admissible failure probability.
    """
    e = Fraction(eps)
    if K < 1 or m < 1 or n < 1:
        raise PreconditionViolated("K, m, n must all be >= 1")
    if not 0 < e <= 1:
        raise PreconditionViolated(f"eps must lie in (0, 1], got {eps}")
    return ceil(Fraction(K * (2 * K + 1) * m * m * n) / e)


def sample_isolating(
    C, oracle: EliminationOracle, m: int, eps, rng_seed, max_draws: int = DEFAULT_MAX_DRAWS
):
    """Draw selectors uniformly from {1..R}^n until one isolates a chain.

    R comes from isolation_radius with K read off C. Returns (z, chain);
    raises RetryLimitExceeded after max_draws failed draws.
    """
    vecs = sorted({tuple(c) for c in C})
    if not vecs:
        raise PreconditionViolated("C must be nonempty")
    n = len(vecs[0])
    K = max((abs(x) for c in vecs for x in c), default=0)
    K = max(K, 1)
    R = isolation_radius(K, m, n, eps)
    rng = random.Random(rng_seed)
    for attempt in range(1, max_draws + 1):
        z = tuple(rng.randint(1, R) for _ in range(n))
        try:
            chain = extract_chain(vecs, z, oracle)
        except NotUnique:
            continue
        log.debug("isolating selector found after %d draw(s) at radius %d", attempt, R)
        return z, chain
    raise RetryLimitExceeded(f"no isolating selector in {max_draws} draws at radius {R}")


def estimate_isolation_prob(C, oracle: EliminationOracle, R: int, trials: int, rng_seed) -> Fraction:
    """Empirical probability that a uniform selector isolates a maximal chain.

    Trial t draws with seed rng_seed + t, so estimates are reproducible and
    independent of evaluation order.
    """
    if trials < 1:
        raise PreconditionViolated("trials must be >= 1")
    vecs = sorted({tuple(c) for c in C})
    if not vecs:
        raise PreconditionViolated("C must be nonempty")
    n = len(vecs[0])
    hits = 0
    for t in range(trials):
        rng = random.Random(rng_seed + t)
        z = tuple(rng.randint(1, R) for _ in range(n))
        try:
            chain = extract_chain(vecs, z, oracle)
        except NotUnique:
            continue
        if chain.maximal:
            hits += 1
    return Fraction(hits, trials)
