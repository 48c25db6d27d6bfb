"""Acceptance criteria, one test each. Every test records a PASS/FAIL line;
the lines are printed in the terminal summary (see conftest.py), or directly
when this file is run as a script."""

from __future__ import annotations

import json
import time
from itertools import product as cartesian

import numpy as np

from _support import doily_tensor_power, pauli_matrix, phase_of, random_assignable, transvect
from hypergrams import assign, cli, degree as D, geometry, gf2, pauli
from hypergrams import hypergram as H
from hypergrams.hypergram import RawHypergram
from hypergrams.pauli import PauliObservable, PhasedPauli

RESULTS: list[str] = []


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def fixture_signs(build):
    hg, alpha = build()
    return hg, assign.sign_function(alpha, hg)


def test_01_doily_degree_cli(tmp_path, capsys):
    path = tmp_path / "doily.json"
    path.write_text(json.dumps(geometry.doily()[0].to_json()))
    start = time.perf_counter()
    code = cli.main(["degree", str(path), "--auto-assign", "--method", "exact"])
    elapsed = time.perf_counter() - start
    doc = json.loads(capsys.readouterr().out)
    ok = code == 0 and doc["value"] == 3 and doc["exact"] and elapsed < 1.0
    report(1, "doily degree", ok, f"value={doc['value']} exact={doc['exact']} time={elapsed:.3f}s (<1s)")


def test_02_two_spread_degree():
    hg, signs = fixture_signs(geometry.two_spread)
    r = D.degree_exact(hg, signs)
    unsat = [k for k, (s, t) in enumerate(zip(signs, assign.classical_sign_function(r.witness, hg))) if s != t]
    ok = r.value == 1 and r.exact and len(unsat) == 1
    report(2, "two-spread degree", ok, f"value={r.value} |unsatisfied|={len(unsat)}")


def test_03_variant_noncontextual():
    hg, signs = fixture_signs(geometry.two_spread_variant)
    r = D.degree_exact(hg, signs)
    report(3, "variant degree", r.value == 0 and not D.is_contextual(hg, signs), f"value={r.value}")


def test_04_assignability():
    s = geometry.nonassignable_example()
    defects = H.assignability_defects(s)
    accepted = [H.is_assignable(build()[0]) for build in (geometry.doily, geometry.two_spread, geometry.two_spread_variant)]
    ok = bool(defects) and (0, 4) in defects and all(accepted)
    shown = [(i + 1, j + 1) for i, j in defects]
    report(4, "assignability", ok, f"S nonzero entries {shown}; fixtures accepted {accepted}")


def test_05_algorithm_contract():
    checked = 0
    graphs = [build()[0] for build in (geometry.doily, geometry.two_spread, geometry.two_spread_variant)]
    rng = np.random.default_rng(2024)
    graphs += [random_assignable(rng)[0] for _ in range(100)]
    ok = True
    for hg in graphs:
        alpha, n = assign.pauli_assignment_from_anticommutations(hg, checked=True)
        ok &= assign.verify_assignment(alpha, hg) and 2 * n == gf2.rank(H.anticommutation_matrix(hg))
        checked += 1
    report(5, "labeling contract", ok, f"{checked} hypergrams verified with loop invariants checked")


def test_06_line_counts():
    expected = {2: (15, 3), 3: (315, 90), 4: (5355, 1908), 5: (86955, 35400)}
    table = {6: (1396395, 615888), 7: (22362795, 10352160)}
    got, ok = {}, True
    start = time.perf_counter()
    for n in (2, 3, 4, 5):
        t0 = time.perf_counter()
        conf = geometry.wn_lines(n)
        elapsed = time.perf_counter() - t0
        got[n] = (len(conf.lines), conf.negative_count)
        ok &= got[n] == expected[n]
        if n == 5:
            ok &= elapsed < 60
    for n, pair in {**expected, **table}.items():
        ok &= (geometry.count_lines(n), geometry.count_negative_lines(n)) == pair
    report(6, "line counts", ok, f"enumerated {got}; closed forms n=2..7 match; n=5 in {elapsed:.2f}s (<60s); total {time.perf_counter() - start:.2f}s")


def test_07_l3_heuristic():
    conf = geometry.wn_lines(3)
    hg = conf.hypergram
    alpha, _ = assign.pauli_assignment_from_anticommutations(hg)
    details, ok = [], True
    for label, signs in (("native", conf.signs), ("labeling", assign.sign_function(alpha, hg))):
        for seed in (0, 7):
            r = D.degree_heuristic(hg, signs, D.HeuristicParams(seed=seed))
            verified = D.distance(hg, signs, r.witness) == r.value
            ok &= r.value == 63 and verified and not r.exact
            details.append(f"{label}/seed{seed}={r.value}")
    report(7, "L3 heuristic", ok, ", ".join(details) + " (witnesses re-verified)")


def test_08_degree_invariance():
    fx = geometry.transfer_fixtures()
    rng = np.random.default_rng(8)
    details, ok = [], True
    for name, build in (("doily", geometry.doily), ("two-spread", geometry.two_spread), ("variant", geometry.two_spread_variant)):
        hg, _ = build()
        alpha, n = assign.pauli_assignment_from_anticommutations(hg)
        base = D.degree_exact(hg, assign.sign_function(alpha, hg)).value
        others = [transvect(alpha, rng, extra=k) for k in (1, 2, 3)]
        if name != "variant":
            # The transfer labelings of the doily also label the two-spread.
            others += [fx.alpha_3q, fx.alpha_4q]
        values = []
        for beta in others:
            ok &= assign.verify_assignment(beta, hg)
            values.append(D.degree_exact(hg, assign.sign_function(beta, hg)).value)
        ok &= all(v == base for v in values)
        details.append(f"{name}: {base} vs {values}")
    report(8, "degree invariance", ok, "; ".join(details))


def test_09_transfer():
    hg, _ = geometry.doily()
    fx = geometry.transfer_fixtures()
    a2 = assign.transfer_classical(fx.alpha_3q, fx.alpha_4q, fx.a1, hg)
    before = assign.unsatisfied_set(fx.alpha_3q, fx.a1, hg)
    after = assign.unsatisfied_set(fx.alpha_4q, a2, hg)
    printed = assign.unsatisfied_set(fx.alpha_4q, fx.a2, hg)
    ok = before == after == printed and len(before) == 3
    report(9, "transfer", ok, f"unsatisfied hyperedges {sorted(k + 1 for k in before)} -> {sorted(k + 1 for k in after)}")


def test_10_commutative_assignment_speed():
    hg, _ = geometry.doily()
    worst, ok = 0.0, True
    for qubits in range(4, 16):
        labels = doily_tensor_power(qubits)
        start = time.perf_counter()
        a = assign.classical_assignment_commutative(labels, hg.hyperedges)
        elapsed = time.perf_counter() - start
        worst = max(worst, elapsed)
        for h in hg.hyperedges:
            ok &= np.prod([a[v] for v in h]) == pauli.product_sign([labels[v] for v in h])
    ok &= worst < 0.1
    report(10, "commutative assignment speed", ok, f"4..15 qubits, slowest {1000 * worst:.2f} ms (<100 ms), all contexts satisfied")


def test_11_exact_vs_bruteforce():
    rng = np.random.default_rng(11)
    mismatches = 0
    for k in range(500):
        if k % 2:
            hg, _ = random_assignable(rng, max_vertices=16)
        else:
            size = int(rng.integers(1, 17))
            edges = [rng.choice(size, size=int(rng.integers(1, min(size, 4) + 1)), replace=False) for _ in range(int(rng.integers(1, 20)))]
            hg = RawHypergram(size, edges, [])
        signs = [int(s) for s in rng.choice([1, -1], size=hg.context_count)]
        mismatches += D.degree_exact(hg, signs).value != D.degree_bruteforce(hg, signs).value
    report(11, "exact = brute force", mismatches == 0, f"500 instances, {mismatches} mismatches")


def _check_pair(p: str, q: str) -> bool:
    P, Q = pauli_matrix(p), pauli_matrix(q)
    r = pauli.multiply(PhasedPauli(PauliObservable(p)), PhasedPauli(PauliObservable(q)))
    ok = phase_of(P @ Q, r.obs.letters) == r.phase_exp
    ok &= pauli.commutes(p, q) == np.allclose(P @ Q, Q @ P)
    if pauli.commutes(p, q):
        s = pauli.product_sign([p, q, r.obs.letters])
        ok &= np.allclose(P @ Q @ pauli_matrix(r.obs.letters), s * np.eye(len(P)))
    else:
        try:
            pauli.product_sign([p, q, r.obs.letters])
            ok = False
        except pauli.NonCommutingError:
            pass
    return ok


def test_12_pauli_ground_truth():
    cases, ok = 0, True
    for n in (1, 2):
        words = ["".join(w) for w in cartesian("IXYZ", repeat=n)]
        for p in words:
            for q in words:
                ok &= _check_pair(p, q)
                cases += 1
    rng = np.random.default_rng(12)
    for _ in range(1000):
        p, q, r = ("".join(rng.choice(list("IXYZ"), size=3)) for _ in range(3))
        ok &= _check_pair(p, q)
        M = pauli_matrix(p) @ pauli_matrix(q) @ pauli_matrix(r)
        commuting = pauli.commutes(p, q) and pauli.commutes(p, r) and pauli.commutes(q, r)
        try:
            s = pauli.product_sign([p, q, r])
            ok &= commuting and np.allclose(M, s * np.eye(8))
        except pauli.NonCommutingError:
            ok &= not commuting
        except pauli.NonIdentityProduct:
            ok &= commuting and not any(np.allclose(M, (1j**k) * np.eye(8)) for k in range(4))
        cases += 1
    report(12, "Pauli algebra vs matrices", ok, f"{cases} cases (exhaustive n<=2, 1000 random triples n=3)")


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
