"""Acceptance criteria 1-12, one verdict line each.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from acceptance_log import record  # noqa: E402

from ordwalk.checks import run_check, sample_tuple
from ordwalk.clubs import compound, canonical_sequence, full_at, parse_cseq
from ordwalk.export import tree_to_dot, tree_to_json
from ordwalk.norders import (
    Hypertournament,
    act,
    classify_restriction,
    edge_induced,
    enumerate_h3,
    face_sum,
    hypertournament,
    is_H_free,
    orient_permuted,
    perm_sign,
    random_fiber,
    rho2n_fiber,
)
from ordwalk.ordinal import OMEGA, Ordinal, parse, random_below, render
from ordwalk.walks_classic import recursive_phi, rho1, rho2, upper_trace
from ordwalk.walks_higher import _faces, boundary_sum, expand_tr, rho2n

W3 = parse("w^3")
GOLDEN = Path(__file__).parent / "golden"
GOLDEN_CASES = {
    "finite_013": ("compound:2", ("0", "1", "3")),
    "compound_w2": ("compound:2", ("w+1", "w*2+3", "w^2")),
    "full_w": ("full:w", ("2", "5", "w")),
}


def golden_tree(name):
    sel, lits = GOLDEN_CASES[name]
    return expand_tr(parse_cseq(sel), [parse(x) for x in lits])


def test_c01_finiteness():
    start = time.perf_counter()
    failures = []
    total = 0
    for n in (1, 2, 3):
        for sel in ("trivial:%d" % n, "canonical:%d" % n, "compound:%d" % n, "square:%d" % n):
            res = run_check("finiteness", parse_cseq(sel), n, W3, 500, seed=n)
            total += res.samples
            if not res.ok:
                failures.append((sel, res.violations[0]))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record(1, ok, f"{total} walks finite, descent pattern clean, {elapsed:.1f}s"
           + (f"; first failure {failures[0]}" if failures else ""))
    assert ok, failures[:1] or f"too slow: {elapsed:.1f}s"


def test_c02_classical_reduction():
    rng = random.Random(2)
    C = canonical_sequence()
    bad = []
    for _ in range(500):
        a, b = sample_tuple(rng, W3, 2)
        tree = expand_tr(C, (a, b))
        outs = tree.outputs()
        steps = upper_trace(C, a, b).steps[1:]
        if [x for _, x in outs] != list(steps) or any(s != 1 for s, _ in outs):
            bad.append((render(a), render(b)))
    record(2, not bad, "500 pairs: order-1 outputs equal the classical trace, all signs +"
           + (f"; witness {bad[0]}" if bad else ""))
    assert not bad, bad[:3]


def test_c03_identity_a():
    C = compound(canonical_sequence(), 2)
    bad = []
    count = 0
    for g in range(30):
        for b in range(g + 1):
            for a in range(b + 1):
                count += 1
                if rho2n(C, (a, b, g)) != 1 - rho2(C, b, g):
                    bad.append((a, b, g))
    off_diag = [t for t in bad if t[1] != t[2]]
    detail = (f"{count} triples, {len(bad)} mismatches"
              f" ({len(bad) - len(off_diag)} with beta = gamma, {len(off_diag)} with beta < gamma)")
    if bad:
        detail += f"; witness {bad[0]}: lhs {rho2n(C, bad[0])} rhs {1 - rho2(C, *bad[0][1:])}"
    record(3, not bad, detail)
    assert not bad, detail


def test_c04_identity_b():
    rng = random.Random(4)
    bad = []
    for lam in (OMEGA, parse("w*2"), parse("w^2")):
        F = full_at(compound(canonical_sequence(), 2), lam)
        for _ in range(200):
            a, b = sample_tuple(rng, lam, 2)
            if rho2n(F, (a, b, lam)) != rho2(F, a, b):
                bad.append((render(a), render(b), render(lam)))
    F = full_at(compound(canonical_sequence(), 2), OMEGA)
    pts = [Ordinal.of(k) for k in range(13)] + [OMEGA]
    values = {rho2n(F, t) for t in itertools.combinations(pts, 3)}
    missing = [k for k in range(-10, 11) if k not in values]
    ok = not bad and not missing
    record(4, ok, f"600 samples at w, w*2, w^2 agree; range on entries <= w is "
                  f"[{min(values)}, {max(values)}]"
           + (f"; mismatch {bad[0]}" if bad else "") + (f"; missing {missing}" if missing else ""))
    assert ok


def test_c05_lower_bound_end_extension():
    fails = []
    n_samples = 0
    for n in (1, 2):
        for sel in ("canonical:%d" % n, "compound:%d" % n):
            res = run_check("end-extension", parse_cseq(sel), n, W3, 300, seed=5 + n)
            n_samples += res.samples
            if not res.ok:
                fails.append((sel, res.violations[0]))
    record(5, not fails, f"{n_samples} (beta, g) samples x 8 alphas: max L below beta, trees end-extend"
           + (f"; witness {fails[0]}" if fails else ""))
    assert not fails, fails[:1]


def _cone_step_violations(C, n, rng, cones):
    """Advance one walk of a cyclic face collection by one step; the boundary sum stays 0."""
    bad = []
    for _ in range(cones):
        g = sample_tuple(rng, W3, n + 1, strict=True)
        alpha = random_below(rng, g[0].succ())
        terms = [((-1) ** i, (alpha,) + f) for i, f in enumerate(_faces(g))]
        assert boundary_sum(terms).is_zero()
        trees = [expand_tr(C, t, s) for s, t in terms]
        for k, tree in enumerate(trees):
            for node in tree.nodes.values():
                if node.boundary:
                    continue
                kids = [tree.nodes[c] for c in node.children]
                stepped = [x for i, x in enumerate(terms) if i != k]
                stepped += [(c.in_sign, c.inputs) for c in kids]
                before = boundary_sum([(node.in_sign, node.inputs)])
                after = boundary_sum([(c.in_sign, c.inputs) for c in kids])
                if before != after:
                    bad.append([render(x) for x in node.inputs])
                if node.sigma == "" and not boundary_sum(stepped).is_zero():
                    bad.append([render(x) for x in g])
    return bad


def test_c06_cyclicity_and_pairing():
    rng = random.Random(6)
    bad = []
    pair_fail = []
    for n in (1, 2, 3):
        C = parse_cseq("compound:%d" % n)
        bad += _cone_step_violations(C, n, rng, 100)
        res = run_check("pairing", C, n, W3, 300, seed=60 + n)
        if not res.ok:
            pair_fail.append(res.violations[0])
    ok = not bad and not pair_fail
    record(6, ok, "300 cones conserve the boundary sum stepwise; pairing on 900 tuples, n = 1..3"
           + (f"; witness {bad[0]}" if bad else "") + (f"; {pair_fail[0]}" if pair_fail else ""))
    assert ok


def test_c07_coherence():
    fails = []
    nonzero = 0
    for n in (1, 2):
        for sel in ("canonical:%d" % n, "compound:%d" % n):
            res = run_check("coherence", parse_cseq(sel), n, W3, 200, seed=70 + n)
            nonzero += res.stats["nonzero_values"]
            if not res.ok:
                fails.append((sel, res.violations[0]))
    record(7, not fails, f"800 tuples constant on (eta, alpha], {nonzero} with nonzero value"
           + (f"; witness {fails[0]}" if fails else ""))
    assert not fails, fails[:1]


def test_c08_r2n_face_vanishing():
    fails = []
    parts = []
    runs = [(1, "canonical:1"), (1, "compound:1"), (2, "compound:2"), (2, "full:w^2,compound:2")]
    for n, sel in runs:
        res = run_check("r2n", parse_cseq(sel), n, W3, 200, seed=80 + n)
        parts.append(f"{sel} {res.stats['nonvacuous_levels']}")
        if not res.ok:
            fails.append((sel, res.violations[0]))
    record(8, not fails, "face sums vanish above eta; lower-trace levels probed: " + ", ".join(parts)
           + (f"; witness {fails[0]}" if fails else ""))
    assert not fails, fails[:1]


def test_c09_recursive_family():
    rng = random.Random(9)
    C = canonical_sequence()
    bad = []
    for _ in range(500):
        xi, b = sample_tuple(rng, W3, 2, strict=True)
        if recursive_phi(C, b, xi) != rho1(C, xi.succ(), b):
            bad.append((render(xi), render(b)))
    record(9, not bad, "500 pairs: recursive family equals rho1(xi+1, beta)"
           + (f"; witness {bad[0]}" if bad else ""))
    assert not bad


def test_c10_truncation():
    fails = []
    depth = 0
    for sel in ("canonical:2", "compound:2"):
        res = run_check("depth-truncation", parse_cseq(sel), 2, W3, 200, seed=10)
        depth = max(depth, res.stats["max_depth"])
        if not res.ok:
            fails.append((sel, res.violations[0]))
    record(10, not fails, f"400 triples: tree types are initial subtrees of the walk from 0, "
                          f"max depth {depth}" + (f"; witness {fails[0]}" if fails else ""))
    assert not fails, fails[:1]


def test_c11_norders():
    start = time.perf_counter()
    rng = random.Random(11)
    problems = []
    even = {m: [p for p in itertools.permutations(range(m)) if perm_sign(p) == 1] for m in (2, 3, 4, 5)}
    for n in (1, 2):
        rho = rho2n_fiber(parse_cseq("compound:%d" % n))
        for _ in range(100):
            S = set()
            while len(S) < 6:
                S.add(random_below(rng, parse("w^2+1")))
            H = hypertournament(rho, S, n)
            free, witness = is_H_free(H)
            if not free:
                problems.append(("H", n, [render(x) for x in witness]))
            for g in itertools.combinations(H.points, n + 1):
                base = orient_permuted(rho, H.points, g)
                if any(orient_permuted(rho, H.points, act(p, g)) != base for p in even[n + 1]):
                    problems.append(("alt", n, [render(x) for x in g]))
    counts = enumerate_h3(4)
    if counts["unlabeled"] != {"H4": 1, "C4": 1, "O4": 1}:
        problems.append(("classes", counts))
    pairs = list(itertools.combinations(range(4), 2))
    for bits in itertools.product((False, True), repeat=6):
        H = edge_induced(dict(zip(pairs, bits)))
        if classify_restriction(H, (0, 1, 2, 3)) == "H4":
            problems.append(("majority", bits))
    for n in (1, 2, 3):
        for _ in range(50):
            rho = random_fiber(rng)
            g = tuple(Ordinal.of(k) for k in range(1, n + 2))
            for xi in (Ordinal.of(0),):
                ref = face_sum(rho, xi, g)
                for p in itertools.permutations(range(n + 1)):
                    if face_sum(rho, xi, act(p, g)) != perm_sign(p) * ref:
                        problems.append(("sigmaout", n, p))
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 30
    record(11, ok, f"200 ground sets H-free and Alt-invariant; classes {counts['unlabeled']}; "
                   f"64 majority images avoid H4; face-sum sign rule on Sym(2..4); {elapsed:.1f}s"
           + (f"; problem {problems[0]}" if problems else ""))
    assert ok, problems[:3]


def test_c12_golden_files():
    mismatched = []
    for name in GOLDEN_CASES:
        first, second = golden_tree(name), golden_tree(name)
        for ext, render_fn in (("json", tree_to_json), ("dot", tree_to_dot)):
            text = render_fn(first)
            if text != render_fn(second):
                mismatched.append(f"{name}.{ext} unstable")
            path = GOLDEN / f"{name}.{ext}"
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                mismatched.append(f"{name}.{ext} differs from golden")
    record(12, not mismatched, "3 walks x {json, dot} byte-identical to goldens"
           + (f"; {mismatched}" if mismatched else ""))
    assert not mismatched, mismatched


if __name__ == "__main__":
    failed = 0
    for fn_name, fn in sorted(globals().items()):
        if fn_name.startswith("test_c"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
