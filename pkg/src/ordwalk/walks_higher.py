"""Higher walks: tail splits, signed walk trees and their invariants."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .clubs import HigherCSequence, UndefinedClub
from .formal import FormalSum
from .ordinal import OMEGA, ZERO, Ordinal, OrdinalLike, fundamental_sequence

__all__ = [
    "TailSplit",
    "WalkNode",
    "SignedWalkTree",
    "tail_split",
    "expand_tr",
    "rho2n",
    "rho2t",
    "lower_trace_map",
    "lower_trace_n",
    "max_lower",
    "boundary_sum",
    "is_cyclic",
    "boundary_inputs",
    "pairing_partition",
    "r2n_slice",
    "r2n_face_sum",
    "coherence_check",
    "CoherenceReport",
    "node_sign",
    "oscillation",
    "depth",
    "descent_violations",
    "build_recursive_2coherent",
    "PairingError",
    "PreconditionViolated",
    "OutOfScope",
]


class PairingError(RuntimeError):
    pass


class PreconditionViolated(ValueError):
    pass


class OutOfScope(NotImplementedError):
    pass


Tuple = tuple[Ordinal, ...]


def _t(xs) -> Tuple:
    return tuple(Ordinal.of(x) for x in xs)


@dataclass(frozen=True)
class TailSplit:
    iota: Tuple
    tau: Tuple
    j: int


def tail_split(C: HigherCSequence, t: Sequence[OrdinalLike]) -> TailSplit:
    """Split t into a head and its longest proper tail that is a C-index."""
    t = _t(t)
    n = len(t) - 1
    if n < 1:
        raise ValueError("need a tuple of length at least 2")
    size = 1
    limit = min(n, C.order)
    # validity is closed under shortening, so grow until the first failure
    while size < limit and C.is_index(t[n - size:]):
        size += 1
    tau = t[n + 1 - size:]
    return TailSplit(t[: n + 1 - size], tau, n - size)


@dataclass
class WalkNode:
    sigma: str
    in_sign: int
    inputs: Tuple
    boundary: bool
    j: Optional[int] = None
    out_sign: Optional[int] = None
    out: Optional[Ordinal] = None
    # deletion index that produced this node from its parent (None at the root)
    deleted: Optional[int] = None
    children: tuple[str, ...] = ()


@dataclass
class SignedWalkTree:
    n: int
    nodes: dict[str, WalkNode] = field(default_factory=dict)

    @property
    def root(self) -> WalkNode:
        return self.nodes[""]

    def outputs(self) -> list[tuple[int, Ordinal]]:
        return [(v.out_sign, v.out) for v in self.ordered() if not v.boundary]

    def ordered(self) -> list[WalkNode]:
        return [self.nodes[k] for k in sorted(self.nodes, key=lambda s: (len(s), s))]

    def charge(self) -> int:
        return sum(v.out_sign for v in self.nodes.values() if not v.boundary)

    def tree_type(self) -> frozenset[str]:
        return frozenset(k for k, v in self.nodes.items() if not v.boundary)

    def boundary_multiset(self) -> Counter:
        return Counter((v.in_sign, v.inputs) for v in self.nodes.values() if v.boundary)

    def __len__(self):
        return len(self.nodes)


def expand_tr(C: HigherCSequence, t: Sequence[OrdinalLike], sign: int = 1,
              max_nodes: int = 1_000_000) -> SignedWalkTree:
    """Expand the order-n walk from the (n+1)-tuple t with the given initial sign."""
    t = _t(t)
    n = len(t) - 1
    if n < 1:
        raise ValueError("need a tuple of length at least 2")
    if any(a > b for a, b in zip(t, t[1:])):
        raise ValueError("walk input must be nondecreasing")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if C.order < n:
        raise ValueError(f"an order-{n} walk needs a C-sequence of order >= {n}, got {C.order}")
    tree = SignedWalkTree(n)
    stack = [("", sign, t, None)]
    while stack:
        sigma, s, tup, deleted = stack.pop()
        if len(tree.nodes) >= max_nodes:
            raise RuntimeError(f"walk tree exceeded {max_nodes} nodes")
        split = tail_split(C, tup)
        j = split.j
        club = C.club(split.tau)
        m = club.min_above(tup[j]) if club is not None else None
        if m is None:
            tree.nodes[sigma] = WalkNode(sigma, s, tup, True, j=j, deleted=deleted)
            continue
        u = tup[: j + 1] + (m,) + split.tau
        kids = []
        label = 0
        for i in range(n + 1, 0, -1):
            if i == j + 1:
                continue
            child = u[:i] + u[i + 1:]
            child_sign = s * (-1) ** (i + j)
            kid = sigma + str(label)
            kids.append(kid)
            stack.append((kid, child_sign, child, i))
            label += 1
        tree.nodes[sigma] = WalkNode(sigma, s, tup, False, j=j, out_sign=s * (-1) ** j,
                                     out=m, deleted=deleted, children=tuple(kids))
    return tree


def rho2n(C: HigherCSequence, t: Sequence[OrdinalLike]) -> int:
    """Pluses minus minuses among the outputs of the walk from t."""
    return expand_tr(C, t).charge()


def rho2t(C: HigherCSequence, t: Sequence[OrdinalLike]) -> frozenset[str]:
    return expand_tr(C, t).tree_type()


def _sup_below(C: HigherCSequence, beta: Ordinal, index: Tuple) -> Ordinal:
    club = C.club(index)
    return ZERO if club is None else club.sup_strictly_below(beta)


def lower_trace_map(C: HigherCSequence, beta: OrdinalLike, g: Sequence[OrdinalLike],
                    tree: Optional[SignedWalkTree] = None) -> dict[str, Ordinal]:
    """L_n(beta, g) at every non-boundary node of the walk from (beta, g)."""
    beta = Ordinal.of(beta)
    g = _t(g)
    if tree is None:
        tree = expand_tr(C, (beta,) + g)
    values: dict[str, Ordinal] = {}
    for node in tree.ordered():
        if node.boundary:
            continue
        here = _sup_below(C, beta, node.inputs[1:])
        parent = values.get(node.sigma[:-1], ZERO) if node.sigma else ZERO
        values[node.sigma] = max(parent, here)
    return values


def lower_trace_n(C: HigherCSequence, beta: OrdinalLike, g: Sequence[OrdinalLike],
                  sigma: str) -> Ordinal:
    values = lower_trace_map(C, beta, g)
    if sigma not in values:
        raise KeyError(f"{sigma!r} is not a node of the walk tree")
    return values[sigma]


def max_lower(C: HigherCSequence, beta: OrdinalLike, g: Sequence[OrdinalLike]) -> Ordinal:
    vals = lower_trace_map(C, beta, g).values()
    return max(vals, default=ZERO)


def boundary_sum(terms: Iterable[tuple[int, Sequence[OrdinalLike]]]) -> FormalSum:
    """Signed face sum: (s, xi, g) maps to sum_i s*(-1)^i [g^i]."""
    acc: dict = {}
    for s, tup in terms:
        g = _t(tup)[1:]
        for i in range(len(g)):
            face = g[:i] + g[i + 1:]
            acc[face] = acc.get(face, 0) + s * (-1) ** i
    return FormalSum(acc)


def is_cyclic(terms) -> bool:
    return boundary_sum(terms).is_zero()


def boundary_inputs(C: HigherCSequence, sign: int, t: Sequence[OrdinalLike]) -> Counter:
    """Multiset of the boundary inputs (sign, tuple) of the signed walk."""
    return expand_tr(C, t, sign).boundary_multiset()


def _faces(g: Tuple) -> list[Tuple]:
    return [g[:i] + g[i + 1:] for i in range(len(g))]


def pairing_partition(C: HigherCSequence, g: Sequence[OrdinalLike],
                      alpha: OrdinalLike) -> list[tuple[Tuple, int]]:
    """Match the boundary inputs of the walks from (alpha, g^i), sign (-1)^i.

    g is strictly increasing of length n+1 and alpha <= g_0.  Returns a list
    of (tuple, pair count); raises PairingError if some tuple is unbalanced.
    """
    g = _t(g)
    alpha = Ordinal.of(alpha)
    if any(a >= b for a, b in zip(g, g[1:])):
        raise ValueError("g must be strictly increasing")
    if alpha > g[0]:
        raise ValueError("alpha must not exceed g_0")
    total: Counter = Counter()
    for i, face in enumerate(_faces(g)):
        total.update(boundary_inputs(C, (-1) ** i, (alpha,) + face))
    pairs = []
    for tup in sorted({tup for _, tup in total}):
        plus, minus = total[(1, tup)], total[(-1, tup)]
        if plus != minus:
            raise PairingError(
                f"boundary input {[str(x) for x in tup]} occurs {plus} times with + "
                f"and {minus} times with -")
        pairs.append((tup, plus))
    return pairs


def r2n_slice(C: HigherCSequence, xi: OrdinalLike, beta: OrdinalLike,
              g: Sequence[OrdinalLike]) -> FormalSum:
    """Signed sum of the inputs at nodes sigma of the walk from (beta, g) with L_n = xi."""
    xi, beta, g = Ordinal.of(xi), Ordinal.of(beta), _t(g)
    if not xi < beta < g[0]:
        raise ValueError("r2n_slice needs xi < beta < g_0")
    tree = expand_tr(C, (beta,) + g)
    lows = lower_trace_map(C, beta, g, tree)
    acc: dict = {}
    for sigma, val in lows.items():
        if val == xi:
            node = tree.nodes[sigma]
            acc[node.inputs] = acc.get(node.inputs, 0) + node.in_sign
    return FormalSum(acc)


def r2n_face_sum(C: HigherCSequence, xi, beta, d: Sequence[OrdinalLike]) -> FormalSum:
    """sum_i (-1)^i r2n_slice(xi, beta, d^i) for a strictly increasing d."""
    d = _t(d)
    return FormalSum.total((-1) ** i * r2n_slice(C, xi, beta, face)
                           for i, face in enumerate(_faces(d)))


@dataclass(frozen=True)
class CoherenceReport:
    eta: Ordinal
    constant: bool
    value: int
    samples: tuple[tuple[Ordinal, int], ...]


def _face_charge(C, xi, d: Tuple) -> int:
    return sum((-1) ** i * rho2n(C, (xi,) + face) for i, face in enumerate(_faces(d)))


def coherence_sample_points(alpha: Ordinal, eta: Ordinal, samples: int) -> list[Ordinal]:
    """alpha, eta+1 and ladder points of alpha inside (eta, alpha]."""
    pts = [alpha]
    if eta.succ() < alpha:
        pts.append(eta.succ())
    k = 0
    while len(pts) < samples + 2:
        x = fundamental_sequence(alpha, k)
        k += 1
        if x <= eta:
            continue
        pts.append(x)
        if x.succ() < alpha and len(pts) < samples + 2:
            pts.append(x.succ())
    # descending, without repeats
    return sorted(set(pts), reverse=True)[: samples + 1]


def coherence_check(C: HigherCSequence, n: int, d: Sequence[OrdinalLike], alpha: OrdinalLike,
                    samples: int = 16) -> CoherenceReport:
    """Check sum_i (-1)^i rho2n(xi, d^i) is constant for xi in (eta, alpha]."""
    d = _t(d)
    alpha = Ordinal.of(alpha)
    if len(d) != n + 1:
        raise ValueError(f"d must have length {n + 1}")
    if any(a >= b for a, b in zip(d, d[1:])):
        raise ValueError("d must be strictly increasing")
    if not alpha.is_limit() or alpha > d[0]:
        raise ValueError("alpha must be a limit ordinal <= d_0")
    eta = max(max_lower(C, alpha, face) for face in _faces(d))
    if eta >= alpha:
        raise PreconditionViolated(f"eta = {eta} is not below alpha = {alpha}")
    pts = coherence_sample_points(alpha, eta, samples)
    vals = tuple((xi, _face_charge(C, xi, d)) for xi in pts)
    top = vals[0][1]
    return CoherenceReport(eta, all(v == top for _, v in vals), top, vals)


def node_sign(C: HigherCSequence, alpha, beta, gamma, sigma: str) -> int:
    tree = expand_tr(C, (alpha, beta, gamma))
    node = tree.nodes.get(sigma)
    if node is None or node.boundary:
        raise KeyError(f"{sigma!r} is not an output node")
    return node.out_sign


def _oscillations(tree: SignedWalkTree) -> dict[str, int]:
    osc: dict[str, int] = {}
    for node in tree.ordered():
        if node.boundary:
            continue
        if not node.sigma:
            osc[""] = 0
            continue
        parent = tree.nodes[node.sigma[:-1]]
        osc[node.sigma] = osc[parent.sigma] + (parent.out_sign != node.out_sign)
    return osc


def oscillation(C: HigherCSequence, alpha, beta, gamma, sigma: str) -> int:
    osc = _oscillations(expand_tr(C, (alpha, beta, gamma)))
    if sigma not in osc:
        raise KeyError(f"{sigma!r} is not an output node")
    return osc[sigma]


def depth(C: HigherCSequence, alpha, beta, gamma) -> int:
    """Largest number of output-sign changes along a branch; 0 for empty trees."""
    return max(_oscillations(expand_tr(C, (alpha, beta, gamma))).values(), default=0)


def descent_violations(tree: SignedWalkTree, C: Optional[HigherCSequence] = None) -> list[str]:
    """Check the coordinate-descent pattern behind finiteness on every edge.

    For an edge from a node with split j that deletes coordinate i:
    i < j forces a boundary child; i == j raises coordinate j strictly and
    keeps the rest; i > j+1 strictly lowers coordinates j+1..i-1 and keeps
    the rest.  The child's split index is then below i (i == j) or below
    i-1 (i > j+1).  Along every branch each window of n consecutive steps
    contains a step with i > j+1.
    """
    bad = []
    n = tree.n
    for node in tree.nodes.values():
        if not node.sigma:
            continue
        parent = tree.nodes[node.sigma[:-1]]
        j, i = parent.j, node.deleted
        p, c = parent.inputs, node.inputs
        where = f"node {node.sigma!r} of {[str(x) for x in tree.root.inputs]}"
        if i < j and not node.boundary:
            bad.append(f"{where}: deletion {i} < split {j} but child is not boundary")
        if i == j:
            changed = [k for k in range(n + 1) if p[k] != c[k]]
            if changed != [j] or not c[j] > p[j]:
                bad.append(f"{where}: step with i == j did not raise only coordinate {j}")
            if not node.boundary and not node.j < i:
                bad.append(f"{where}: child split {node.j} not below {i}")
        if i > j + 1:
            for k in range(n + 1):
                if j < k < i:
                    if not c[k] < p[k]:
                        bad.append(f"{where}: coordinate {k} did not drop")
                elif c[k] != p[k]:
                    bad.append(f"{where}: coordinate {k} changed outside ({j},{i})")
            if not node.boundary and not node.j < i - 1:
                bad.append(f"{where}: child split {node.j} not below {i - 1}")
    # window condition along branches
    for sigma, node in tree.nodes.items():
        if node.boundary or len(sigma) < n:
            continue
        steps = []
        for k in range(len(sigma) - n, len(sigma)):
            par = tree.nodes[sigma[:k]]
            child = tree.nodes[sigma[: k + 1]]
            steps.append(child.deleted > par.j + 1)
        if not any(steps):
            bad.append(f"branch {sigma!r}: {n} consecutive steps without a lowering step")
    return bad


class RecursiveTwoCoherent:
    """Evaluator for the stage-by-stage 2-coherent family phi_{alpha gamma}(xi).

    Successor stages copy the previous function (zero on the diagonal); limit
    stages of countable cofinality follow the ladder recursion, and points
    off the ladder are reached through the least ladder point above them.
    """

    def __init__(self, C: HigherCSequence, bound: OrdinalLike):
        self.C = C
        self.bound = Ordinal.of(bound)
        self._memo: dict = {}

    def ladder(self, gamma: Ordinal):
        club = self.C.club((gamma,))
        if club is None:
            raise UndefinedClub((str(gamma),))
        if club.order_type() > OMEGA:
            raise OutOfScope(f"C_{gamma} is too long for a countable-cofinality stage")
        return club

    def __call__(self, alpha: OrdinalLike, gamma: OrdinalLike, xi: OrdinalLike) -> FormalSum:
        alpha, gamma, xi = Ordinal.of(alpha), Ordinal.of(gamma), Ordinal.of(xi)
        if not xi < alpha < gamma:
            raise ValueError("phi needs xi < alpha < gamma")
        if gamma > self.bound:
            raise ValueError(f"{gamma} exceeds the bound {self.bound}")
        return self._phi(alpha, gamma, xi)

    def _phi(self, alpha, gamma, xi) -> FormalSum:
        key = (alpha, gamma, xi)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        val = self._compute(alpha, gamma, xi)
        self._memo[key] = val
        return val

    def _compute(self, alpha, gamma, xi) -> FormalSum:
        while gamma.is_successor():
            beta = gamma.pred()
            if alpha == beta:
                return FormalSum()
            gamma = beta
        club = self.ladder(gamma)
        if not club.contains(alpha):
            top = club.min_above(alpha)
            return self._phi(alpha, top, xi) + self._phi(top, gamma, xi)
        i = int(club.index_of(alpha))
        # walk the ladder recursion down to the stage where xi enters
        m = int(club.index_of(club.min_above(xi.succ())))
        value = FormalSum()
        for ell in range(m, i):
            lo, hi = club.element_at(ell), club.element_at(ell + 1)
            value = value - self._phi(lo, hi, xi)
        return value


def build_recursive_2coherent(C: HigherCSequence, bound: OrdinalLike) -> RecursiveTwoCoherent:
    return RecursiveTwoCoherent(C, bound)
