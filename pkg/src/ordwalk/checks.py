"""Seeded property harnesses shared by the CLI and the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .clubs import HigherCSequence
from .ordinal import Ordinal, limit_part, random_below, random_limit_at_most, render
from .walks_higher import (
    PairingError,
    _faces,
    coherence_check,
    depth,
    descent_violations,
    expand_tr,
    lower_trace_map,
    max_lower,
    pairing_partition,
    r2n_face_sum,
)

__all__ = ["CheckResult", "sample_tuple", "CHECKS", "run_check"]


@dataclass
class CheckResult:
    name: str
    samples: int = 0
    violations: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def _lits(t) -> list[str]:
    return [render(x) for x in t]


def sample_tuple(rng: random.Random, bound: Ordinal, k: int, strict: bool = False,
                 C: Optional[HigherCSequence] = None) -> tuple[Ordinal, ...]:
    """A sorted k-tuple below bound; sequences overridden at some lam end there half the time."""
    lam = getattr(C, "lam", None)
    use_lam = lam is not None and lam < bound and rng.random() < 0.5
    while True:
        if use_lam:
            xs = sorted(random_below(rng, lam) for _ in range(k - 1)) + [lam]
        else:
            xs = sorted(random_below(rng, bound) for _ in range(k))
        if not strict or len(set(xs)) == k:
            return tuple(xs)


def check_finiteness(C, n, bound, samples, rng) -> CheckResult:
    res = CheckResult("finiteness")
    biggest = 0
    for _ in range(samples):
        t = sample_tuple(rng, bound, n + 1, C=C)
        tree = expand_tr(C, t)
        biggest = max(biggest, len(tree))
        bad = descent_violations(tree)
        res.samples += 1
        if bad:
            res.violations.append({"tuple": _lits(t), "detail": bad[0]})
    res.stats["largest_tree"] = biggest
    return res


def _agrees(a, b) -> bool:
    # node-wise agreement up to the first coordinate
    return (a.in_sign == b.in_sign and a.inputs[1:] == b.inputs[1:]
            and a.boundary == b.boundary and a.out == b.out and a.out_sign == b.out_sign)


def check_end_extension(C, n, bound, samples, rng, per_sample: int = 8) -> CheckResult:
    res = CheckResult("end-extension")
    while res.samples < samples:
        t = sample_tuple(rng, bound, n + 1, C=C)
        beta, g = t[0], t[1:]
        if beta.is_zero():
            continue
        res.samples += 1
        tree = expand_tr(C, t)
        eta = max_lower(C, beta, g)
        if not eta < beta:
            res.violations.append({"tuple": _lits(t), "detail": f"max L = {eta} is not below {beta}"})
            continue
        for _ in range(per_sample):
            alpha = random_below(rng, beta.succ())
            if alpha <= eta:
                alpha = eta.succ()
            ext = expand_tr(C, (alpha,) + g)
            for sigma, node in tree.nodes.items():
                if node.boundary:
                    continue
                other = ext.nodes.get(sigma)
                if other is None or not _agrees(node, other):
                    res.violations.append({"tuple": _lits(t), "alpha": render(alpha),
                                           "detail": f"node {sigma!r} not carried over"})
                    break
    return res


def check_pairing(C, n, bound, samples, rng) -> CheckResult:
    res = CheckResult("pairing")
    pairs = 0
    for _ in range(samples):
        t = sample_tuple(rng, bound, n + 2, strict=True, C=C)
        res.samples += 1
        try:
            pairs += sum(c for _, c in pairing_partition(C, t[1:], t[0]))
        except PairingError as exc:
            res.violations.append({"tuple": _lits(t), "detail": str(exc)})
    res.stats["pairs"] = pairs
    return res


def check_coherence(C, n, bound, samples, rng, points: int = 16) -> CheckResult:
    res = CheckResult("coherence")
    nonzero = 0
    while res.samples < samples:
        d = sample_tuple(rng, bound, n + 1, strict=True, C=C)
        alpha = random_limit_at_most(rng, d[0]) if not d[0].is_zero() else None
        if alpha is None:
            continue
        res.samples += 1
        rep = coherence_check(C, n, d, alpha, points)
        nonzero += rep.value != 0
        if not rep.constant:
            res.violations.append({
                "tuple": _lits(d), "alpha": render(alpha), "eta": render(rep.eta),
                "detail": "face charge varies: "
                          + ", ".join(f"{render(x)}:{v}" for x, v in rep.samples)})
    res.stats["nonzero_values"] = nonzero
    return res


def check_r2n(C, n, bound, samples, rng, probes: int = 3) -> CheckResult:
    """Per-probe face vanishing of r2n slices above the lower-trace bound of a limit."""
    res = CheckResult("r2n")
    nonvacuous = 0
    while res.samples < samples:
        d = sample_tuple(rng, bound, n + 1, strict=True, C=C)
        if d[0].is_zero():
            continue
        alpha = limit_part(random_below(rng, d[0]))
        if alpha.is_zero():
            continue
        res.samples += 1
        eta = max(max_lower(C, alpha, f) for f in _faces(d))
        for _ in range(probes):
            beta = random_below(rng, alpha.succ())
            if beta <= eta.succ():
                continue
            levels = {v for f in _faces(d) for v in lower_trace_map(C, beta, f).values()
                      if eta < v < beta}
            extra = random_below(rng, beta)
            if eta < extra:
                levels.add(extra)
            for xi in sorted(levels):
                s = r2n_face_sum(C, xi, beta, d)
                nonvacuous += xi != extra
                if not s.is_zero():
                    res.violations.append({"tuple": _lits(d), "alpha": render(alpha),
                                           "beta": render(beta), "xi": render(xi),
                                           "detail": repr(s)})
    res.stats["nonvacuous_levels"] = nonvacuous
    return res


def check_depth_truncation(C, n, bound, samples, rng) -> CheckResult:
    res = CheckResult("depth-truncation")
    if n != 2:
        raise ValueError("depth-truncation runs on order-2 walks")
    deepest = 0
    for _ in range(samples):
        t = sample_tuple(rng, bound, 3, C=C)
        res.samples += 1
        tree = expand_tr(C, t)
        base = expand_tr(C, (Ordinal.of(0),) + t[1:])
        deepest = max(deepest, depth(C, *t))
        for sigma in tree.tree_type():
            other = base.nodes.get(sigma)
            node = tree.nodes[sigma]
            if (other is None or other.boundary or other.in_sign != node.in_sign
                    or other.out_sign != node.out_sign or other.j != node.j):
                res.violations.append({"tuple": _lits(t),
                                       "detail": f"node {sigma!r} disagrees with the walk from 0"})
                break
    res.stats["max_depth"] = deepest
    return res


CHECKS = {
    "finiteness": check_finiteness,
    "end-extension": check_end_extension,
    "pairing": check_pairing,
    "coherence": check_coherence,
    "r2n": check_r2n,
    "depth-truncation": check_depth_truncation,
}


def run_check(name: str, C: HigherCSequence, n: int, bound: Ordinal, samples: int,
              seed: int) -> CheckResult:
    rng = random.Random(seed)
    return CHECKS[name](C, n, bound, samples, rng)
