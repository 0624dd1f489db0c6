"""Higher-dimensional linear orders induced by integer-valued fiber functions.

A fiber function ``rho(xi, b)`` takes an ordinal xi and a strictly increasing
n-tuple b with xi < b_0.  From it we orient every (n+1)-subset of a finite
ground set and test the result for the forbidden configuration H_{n+2}.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .clubs import HigherCSequence
from .ordinal import Ordinal, OrdinalLike
from .walks_higher import rho2n

__all__ = [
    "perm_sign",
    "act",
    "symmetrize",
    "face_sum",
    "delta",
    "orient",
    "orient_permuted",
    "Hypertournament",
    "hypertournament",
    "classify_restriction",
    "is_H_free",
    "automorphisms",
    "edge_induced",
    "enumerate_h3",
    "rho2n_fiber",
    "random_fiber",
]

Rho = Callable[[Ordinal, tuple], int]


def perm_sign(p: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of images of 0..m-1."""
    seen = [False] * len(p)
    sign = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = p[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def act(p: Sequence[int], t: Sequence) -> tuple:
    """sigma . t: the entry at position i moves to position p[i]."""
    out = [None] * len(t)
    for i, x in enumerate(t):
        out[p[i]] = x
    return tuple(out)


def _sort_with_sign(t: Sequence) -> tuple[int, tuple]:
    # sign of the permutation that sorts t, together with the sorted tuple
    order = sorted(range(len(t)), key=lambda i: t[i])
    return perm_sign(order), tuple(t[i] for i in order)


def hat(rho: Rho) -> Rho:
    """The symmetrized function: hat(xi, sigma.b) = sgn(sigma) rho(xi, b)."""

    def f(xi, t):
        if len(set(t)) != len(t):
            raise ValueError("symmetrized arguments must be distinct")
        s, srt = _sort_with_sign(t)
        return s * rho(xi, srt)

    return f


def symmetrize(rho: Rho, sigma: Sequence[int], xi: OrdinalLike, t: Sequence[OrdinalLike]) -> int:
    """hat-rho evaluated at (xi, sigma . t) for a strictly increasing t."""
    t = tuple(Ordinal.of(x) for x in t)
    return hat(rho)(Ordinal.of(xi), act(sigma, t))


def _faces(t: tuple) -> list[tuple]:
    return [t[:j] + t[j + 1:] for j in range(len(t))]


def face_sum(rho: Rho, xi, g: tuple) -> int:
    """sum_j (-1)^j hat-rho(xi, g^j); g may be in any order."""
    h = hat(rho)
    return sum((-1) ** j * h(xi, f) for j, f in enumerate(_faces(tuple(g))))


def delta(rho: Rho, S: Iterable[OrdinalLike], g: Sequence[OrdinalLike]) -> Optional[Ordinal]:
    """Least xi in S below min(g) with a nonzero alternating face sum."""
    g = tuple(Ordinal.of(x) for x in g)
    low = min(g)
    for xi in sorted(Ordinal.of(s) for s in S):
        if xi >= low:
            break
        if face_sum(rho, xi, g) != 0:
            return xi
    return None


def orient(rho: Rho, S: Iterable[OrdinalLike], g: Sequence[OrdinalLike]) -> bool:
    """Whether the relation holds of g in its increasing order."""
    g = tuple(sorted(Ordinal.of(x) for x in g))
    d = delta(rho, S, g)
    if d is None:
        return True
    return face_sum(rho, d, g) > 0


def orient_permuted(rho: Rho, S, g: Sequence[OrdinalLike]) -> bool:
    """The relation at an arbitrarily ordered tuple, computed from hat-rho directly."""
    g = tuple(Ordinal.of(x) for x in g)
    d = delta(rho, S, g)
    if d is None:
        s, _ = _sort_with_sign(g)
        return s == 1
    return face_sum(rho, d, g) > 0


@dataclass
class Hypertournament:
    """One orientation bit per (m)-subset; True means the increasing order holds."""

    arity: int
    points: tuple
    bits: dict = field(default_factory=dict)

    def holds(self, t: Sequence) -> bool:
        s, srt = _sort_with_sign(t)
        bit = self.bits[srt]
        return bit if s == 1 else not bit

    def subsets(self, size: int):
        return itertools.combinations(self.points, size)

    def restrict(self, q: Sequence) -> "Hypertournament":
        q = tuple(sorted(q))
        return Hypertournament(self.arity, q,
                               {f: self.bits[f] for f in itertools.combinations(q, self.arity)})


def hypertournament(rho: Rho, S: Iterable[OrdinalLike], n: int) -> Hypertournament:
    pts = tuple(sorted(set(Ordinal.of(s) for s in S)))
    H = Hypertournament(n + 1, pts)
    for g in itertools.combinations(pts, n + 1):
        H.bits[g] = orient(rho, pts, g)
    return H


def _face_signs(H: Hypertournament, q: tuple) -> list[int]:
    return [1 if H.bits[f] else -1 for f in _faces(q)]


def automorphisms(H: Hypertournament, q: Sequence) -> list[tuple[int, ...]]:
    """Permutations of q (as index maps) preserving every orientation on q."""
    q = tuple(sorted(q))
    m = len(q)
    out = []
    for p in itertools.permutations(range(m)):
        ok = True
        for f in itertools.combinations(range(m), H.arity):
            src = tuple(q[i] for i in f)
            dst = tuple(q[p[i]] for i in f)
            if H.holds(src) != H.holds(dst):
                ok = False
                break
        if ok:
            out.append(p)
    return out


def _canonical_bits(H: Hypertournament, q: tuple) -> tuple:
    m = len(q)
    best = None
    for p in itertools.permutations(range(m)):
        relabeled = tuple(
            H.holds(tuple(q[p[i]] for i in f)) for f in itertools.combinations(range(m), H.arity))
        if best is None or relabeled < best:
            best = relabeled
    return best


def _reference_c4():
    H = Hypertournament(3, (0, 1, 2, 3))
    for f in itertools.combinations(range(4), 3):
        H.bits[f] = True
    return _canonical_bits(H, (0, 1, 2, 3))


_C4 = None


def classify_restriction(H: Hypertournament, q: Sequence) -> str:
    """"H" or "non-H"; for 3-subsets of 4 points the tags H4, C4, O4."""
    global _C4
    q = tuple(sorted(q))
    if len(q) != H.arity + 1:
        raise ValueError(f"need {H.arity + 1} points, got {len(q)}")
    signs = _face_signs(H, q)
    alt = {(-1) ** k * s for k, s in enumerate(signs)}
    is_h = len(alt) == 1
    if H.arity != 3:
        return "H" if is_h else "non-H"
    if is_h:
        return "H4"
    if _C4 is None:
        _C4 = _reference_c4()
    return "C4" if _canonical_bits(H, q) == _C4 else "O4"


def is_H_free(H: Hypertournament) -> tuple[bool, Optional[tuple]]:
    for q in H.subsets(H.arity + 1):
        if classify_restriction(H, q) in ("H", "H4"):
            return False, q
    return True, None


def edge_induced(edges: dict) -> Hypertournament:
    """Majority rule on 4 points: face a<b<c holds iff two of a->b, b->c, c->a do.

    ``edges`` maps each pair (a, b) with a < b to True when oriented a -> b.
    """
    pts = tuple(sorted({x for e in edges for x in e}))
    if len(pts) != 4 or len(edges) != 6:
        raise ValueError("need an orientation of the 6 edges on 4 points")
    H = Hypertournament(3, pts)
    for a, b, c in itertools.combinations(pts, 3):
        votes = edges[(a, b)] + edges[(b, c)] + (not edges[(a, c)])
        H.bits[(a, b, c)] = votes >= 2
    return H


def enumerate_h3(vertices: int = 4) -> dict:
    """Labeled and unlabeled counts of 3-hypertournament classes on 4 points."""
    if vertices != 4:
        raise ValueError("only 4 vertices are classified")
    pts = (0, 1, 2, 3)
    faces = list(itertools.combinations(pts, 3))
    labeled = {"H4": 0, "C4": 0, "O4": 0}
    classes: dict = {"H4": set(), "C4": set(), "O4": set()}
    for bits in itertools.product((False, True), repeat=len(faces)):
        H = Hypertournament(3, pts, dict(zip(faces, bits)))
        tag = classify_restriction(H, pts)
        labeled[tag] += 1
        classes[tag].add(_canonical_bits(H, pts))
    return {"labeled": labeled, "unlabeled": {k: len(v) for k, v in classes.items()}}


def rho2n_fiber(C: HigherCSequence) -> Rho:
    """rho(xi, b) = rho2n(xi, b) with the order read off from len(b)."""

    def f(xi, b):
        return rho2n(C, (xi,) + tuple(b))

    return f


def random_fiber(rng: random.Random, lo: int = -3, hi: int = 3) -> Rho:
    """A memoized random integer function, reproducible from rng."""
    memo: dict = {}

    def f(xi, b):
        key = (xi, tuple(b))
        if key not in memo:
            memo[key] = rng.randint(lo, hi)
        return memo[key]

    return f
