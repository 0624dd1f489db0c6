"""Classical walks: traces, rho functions, internal walks, fiber orders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .clubs import HigherCSequence, UndefinedClub
from .ordinal import ZERO, Ordinal, OrdinalLike

__all__ = [
    "WalkTrace",
    "upper_trace",
    "rho2",
    "rho1",
    "r1_slice",
    "r2_slice",
    "internal_trace",
    "rho2_internal",
    "recursive_phi",
    "branch_order",
    "InfiniteWeight",
]


class InfiniteWeight(ValueError):
    pass


@dataclass(frozen=True)
class WalkTrace:
    steps: tuple[Ordinal, ...]
    lower: tuple[Ordinal, ...]

    @property
    def rho2(self) -> int:
        return len(self.steps) - 1


def _o(x) -> Ordinal:
    return Ordinal.of(x)


def _club(C: HigherCSequence, *index):
    club = C.club(index)
    if club is None:
        raise UndefinedClub(tuple(str(x) for x in index))
    return club


def upper_trace(C: HigherCSequence, alpha: OrdinalLike, beta: OrdinalLike) -> WalkTrace:
    """Walk from beta down to alpha, stepping to min(C_b - alpha)."""
    alpha, beta = _o(alpha), _o(beta)
    if alpha > beta:
        raise ValueError(f"walk needs alpha <= beta, got {alpha} > {beta}")
    steps = [beta]
    lower = []
    running = ZERO
    b = beta
    while b != alpha:
        club = _club(C, b)
        running = max(running, club.sup_strictly_below(alpha))
        lower.append(running)
        b = club.min_above(alpha)
        steps.append(b)
    return WalkTrace(tuple(steps), tuple(lower))


def rho2(C: HigherCSequence, alpha: OrdinalLike, beta: OrdinalLike) -> int:
    return upper_trace(C, alpha, beta).rho2


def rho1(C: HigherCSequence, alpha: OrdinalLike, beta: OrdinalLike) -> int:
    """Maximal weight |alpha & C_{b}| over the steps b before alpha."""
    tr = upper_trace(C, alpha, beta)
    best = 0
    for b in tr.steps[:-1]:
        w = _club(C, b).count_below(alpha)
        if not w.is_finite():
            raise InfiniteWeight(f"|{alpha} & C_{b}| = {w} is infinite")
        best = max(best, int(w))
    return best


def _max_lower(C, beta, gamma) -> Ordinal:
    tr = upper_trace(C, beta, gamma)
    return tr.lower[-1] if tr.lower else ZERO


def r1_slice(C: HigherCSequence, alpha, beta_probe, gamma) -> bool:
    """Whether max L(beta_probe, gamma) = alpha."""
    alpha, beta_probe, gamma = _o(alpha), _o(beta_probe), _o(gamma)
    if not alpha < beta_probe < gamma:
        raise ValueError("r1_slice needs alpha < beta < gamma")
    return _max_lower(C, beta_probe, gamma) == alpha


def r2_slice(C: HigherCSequence, alpha, beta_probe, gamma) -> Optional[tuple[Ordinal, Ordinal]]:
    """The edge (beta, min Tr(beta, gamma) - (beta+1)) when max L(beta, gamma) = alpha."""
    if not r1_slice(C, alpha, beta_probe, gamma):
        return None
    steps = upper_trace(C, beta_probe, gamma).steps
    return (_o(beta_probe), steps[-2])


def internal_trace(C: HigherCSequence, gamma, alpha, beta) -> WalkTrace:
    """The walk from beta to alpha conducted inside C_gamma.

    The lower entries record sup(alpha & C_{b, gamma}) along the way.
    """
    gamma, alpha, beta = _o(gamma), _o(alpha), _o(beta)
    if not alpha <= beta < gamma:
        raise ValueError("internal walk needs alpha <= beta < gamma")
    if C.order < 2:
        raise ValueError("internal walks need a sequence of order >= 2")
    cg = _club(C, gamma)
    ground = cg.min_above(alpha)
    steps = [beta]
    lower = []
    running = ZERO
    b = beta
    if not cg.contains(b):
        b = cg.min_above(b)
        steps.append(b)
        lower.append(running)
    while b != ground:
        club = _club(C, b, gamma)
        running = max(running, club.sup_strictly_below(alpha))
        lower.append(running)
        b = club.min_above(alpha)
        if b is None:
            raise UndefinedClub(f"internal walk stalled below {gamma}")
        steps.append(b)
    return WalkTrace(tuple(steps), tuple(lower))


def rho2_internal(C: HigherCSequence, gamma, alpha, beta) -> int:
    return internal_trace(C, gamma, alpha, beta).rho2


def recursive_phi(C: HigherCSequence, beta: OrdinalLike, xi: OrdinalLike) -> int:
    """phi_beta(xi) built from successor and ladder recursion.

    At a successor beta = a+1 the value is 0 when xi = a and phi_a(xi)
    otherwise.  At a limit, with i = min{i : beta_i > xi}, the value is
    i when phi_{beta_i}(xi) < i and phi_{beta_i}(xi) otherwise.
    """
    beta, xi = _o(beta), _o(xi)
    if not xi < beta:
        raise ValueError(f"recursive_phi needs xi < beta, got {xi} >= {beta}")
    # unroll the recursion; each limit step contributes its i(xi)
    contributions = []
    b = beta
    while True:
        if b.is_successor():
            a = b.pred()
            if a == xi:
                break
            b = a
            continue
        club = _club(C, b)
        nxt = club.min_above(xi.succ())
        contributions.append(int(club.index_of(nxt)))
        b = nxt
    value = 0
    for i in reversed(contributions):
        value = i if value < i else value
    return value


def branch_order(rho: Callable[[Ordinal, Ordinal], int], S: Iterable[OrdinalLike],
                 beta: OrdinalLike, gamma: OrdinalLike) -> bool:
    """beta before gamma in the fiber order, with disagreement sought inside S."""
    beta, gamma = _o(beta), _o(gamma)
    if beta == gamma:
        return False
    low = min(beta, gamma)
    for xi in sorted(_o(s) for s in S):
        if xi >= low:
            break
        a, b = rho(xi, beta), rho(xi, gamma)
        if a != b:
            return a < b
    return beta < gamma
