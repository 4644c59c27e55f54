"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings.  The parameter sweep (criteria 4/7/8/11) covers every
q in {7, 9, 13, 16, 17, 19, 25}, every divisor r of q-1 with 2 < r < q-1,
and m in {2, 3, 4}.
"""

import json
import time

import numpy as np
import pytest

from constarm import checks, cli, distance, evalcode, spaces, witnesses
from constarm.spaces import CodeParams


def _report(n, ok, detail, t0):
    line = f"[criterion {n:2d}] {'PASS' if ok else 'FAIL'} ({time.time() - t0:6.1f}s) {detail}"
    print(line)
    assert ok, line


def test_criterion_01_table_reproduction(capsys):
    t0 = time.time()
    code = cli.main(["table", "--paper-table1", "--format", "csv"])
    out = capsys.readouterr().out
    rows = out.strip().splitlines()[1:]
    d_col = [int(r.split(",")[8]) for r in rows]
    elapsed = time.time() - t0
    ok = code == 0 and d_col == [12, 6, 468, 273, 1020] and elapsed < 1.0
    with capsys.disabled():
        _report(1, ok, f"table --paper-table1 d column = {d_col}", t0)


def test_criterion_02_exhaustive_oracle_agreement():
    t0 = time.time()
    model = evalcode.build_eval_model(7, 2, 3)
    results = {}
    for ell in (2, 5):
        p = CodeParams(7, 2, 3, ell)
        tcase = time.time()
        G = evalcode.generator_matrix(model, spaces.code_space(p))
        d_oracle = distance.min_distance_exhaustive(G, model.field)
        results[ell] = (d_oracle, time.time() - tcase)
    p2, p5 = CodeParams(7, 2, 3, 2), CodeParams(7, 2, 3, 5)
    ok = results[2][0] == 12 and results[2][1] < 1.0
    ok &= results[5][0] == 6 and results[5][1] < 300.0
    ok &= results[2][0] == distance.exact_distance(p2) == distance.sdw_bounds(p2)[1]
    ok &= results[5][0] == distance.exact_distance(p5) == distance.sdw_bounds(p5)[1]
    lower5 = distance.sdw_bounds(p5)[0]
    ok &= lower5 == 5 and results[5][0] > lower5
    _report(2, ok, f"oracle d(ell=2)={results[2][0]}, d(ell=5)={results[5][0]} "
                   f"({results[5][1]:.1f}s), both exceed/meet bounds", t0)


def test_criterion_03_terminal_support_search():
    t0 = time.time()
    p = CodeParams(7, 2, 3, 8)
    model = evalcode.build_eval_model(7, 2, 3)
    G = evalcode.generator_matrix(model, spaces.code_space(p))
    got = distance.min_distance_support_search(G, model.field, 3)
    want = distance.exact_distance(p)
    elapsed = time.time() - t0
    ok = got == 2 == want and elapsed < 10.0
    _report(3, ok, f"support-search d(C(7,2,3,8)) = {got}, formula = {want}", t0)


def test_criterion_04_witness_tightness_sweep(sweep):
    t0 = time.time()
    bad = []
    for p in sweep:
        model = evalcode.build_eval_model(p.q, p.m, p.r)
        f = witnesses.pencil(p.q, p.m, witnesses.pencil_spec(p.q, p.a, p.b))
        w = evalcode.encode(model, f)
        if w.weight != distance.exact_distance(p):
            bad.append((p.q, p.m, p.r, p.ell, w.weight))
    elapsed = time.time() - t0
    ok = not bad and elapsed < 300.0
    _report(4, ok, f"{len(sweep)} parameter sets, pencil weight == d everywhere"
                   f"{'' if not bad else f', failures: {bad[:5]}'}", t0)


def test_criterion_05_residue_layer_dichotomy():
    t0 = time.time()
    model = evalcode.build_eval_model(7, 2, 3)
    expect = {(3, 0): (5, 9), (4, 1): (7, 7), (5, 2): (9, 6)}
    got = {}
    ok = True
    for (s, c), (k_want, delta_want) in expect.items():
        sp = spaces.build_space(7, 2, 3, s, c)
        G = evalcode.generator_matrix(model, sp)
        d_oracle = distance.min_distance_exhaustive(G, model.field)
        _, delta_formula = distance.residue_layer_distance(7, 2, 3, s, c)
        got[(s, c)] = (sp.K, d_oracle)
        ok &= sp.K == k_want and d_oracle == delta_want == delta_formula
    elapsed = time.time() - t0
    ok &= elapsed < 300.0
    _report(5, ok, f"layer minima (K, delta): {got}", t0)


def test_criterion_06_obstruction_scan():
    t0 = time.time()
    counts = {b: distance.first_layer_scan(7, 2, 3, 0, b) for b in (2, 4, 5)}
    elapsed = time.time() - t0
    ok = counts[2] == 0 and counts[5] == 0 and counts[4] >= 1 and elapsed < 1.0
    _report(6, ok, f"survivor counts {counts}: zero in class r-1, positive in class 1", t0)


def test_criterion_07_orbit_weight_identity(sweep):
    t0 = time.time()
    bad = []
    for p in sweep:
        seed = ((p.q * 1000003 + p.m * 10007) + p.r * 101 + p.ell) & 0x7FFFFFFF
        res = checks.check_orbit_weight(p, count=100, seed=seed)
        if not res["passed"]:
            bad.append((p.q, p.m, p.r, p.ell, res["violations"]))
    ok = not bad
    _report(7, ok, f"100 random words per space x {len(sweep)} spaces, "
                   f"wt*r == |Supp| exactly"
                   f"{'' if ok else f', failures: {bad[:5]}'}", t0)


def test_criterion_08_constacyclic_closure(sweep):
    t0 = time.time()
    bad = []
    full = sampled = 0
    # the swept code layers (c = r-1) plus the residue layers of criterion 5
    layers = [(p.q, p.m, p.r, p.ell, (p.r - 1) % p.r) for p in sweep]
    layers += [(7, 2, 3, 3, 0), (7, 2, 3, 4, 1), (7, 2, 3, 5, 2)]
    for q, m, r, s, c in layers:
        res = checks.check_closure(q, m, r, s, c)
        if not res["passed"]:
            bad.append((q, m, r, s, c))
        if res.get("full_basis", True):
            full += 1
        else:
            sampled += 1
    ok = not bad
    _report(8, ok, f"{full} layers with every basis polynomial checked, "
                   f"{sampled} large layers sampled (48 polynomials each)"
                   f"{'' if ok else f', failures: {bad[:5]}'}", t0)


def test_criterion_09_structural_field_checks():
    t0 = time.time()
    ok = True
    for q, m in ((7, 2), (9, 2), (7, 3), (13, 2)):
        res = checks.check_structural(q, m)
        ok &= res["passed"]
    elapsed = time.time() - t0
    ok &= elapsed < 30.0
    _report(9, ok, "M^n = lambda*I and full orbit coverage at (7,2),(9,2),(7,3),(13,2)", t0)


def test_criterion_10_block_tables():
    t0 = time.time()
    t13 = [row[3] for row in distance.block_table(13, 3, 3, 0)]
    t17 = [row[3] for row in distance.block_table(17, 4, 4, 0)]
    t19 = [row[3] for row in distance.block_table(19, 2, 6, 0)]
    ok = t13 == [48, 36, 24, 12] and t17 == [60, 44, 28, 12] and t19 == [45, 27, 9]
    for q, r, m, a in ((13, 3, 3, 0), (17, 4, 4, 1), (19, 6, 3, 1), (25, 8, 2, 0)):
        rows = distance.block_table(q, m, r, a)
        step = (q - 1) * q ** (m - a - 2)
        absolute = [norm * q ** (m - a - 2) for _, _, _, norm in rows]
        ok &= all(absolute[i] - absolute[i + 1] == step for i in range(len(absolute) - 1))
    elapsed = time.time() - t0
    ok &= elapsed < 1.0
    _report(10, ok, f"normalized blocks {t13}, {t17}, {t19}; progression step (q-1)q^(m-a-2)", t0)


def test_criterion_11_property_suite(sweep):
    t0 = time.time()
    params = checks.sweep_params(nonterminal_only=False)
    bad = []
    for p in params:
        res = checks.check_properties(p)
        if not res["passed"]:
            bad.append((p.q, p.m, p.r, p.ell))
    ok = not bad
    _report(11, ok, f"kappa integrality, Singleton, envelope, d < n over "
                    f"{len(params)} parameter sets (terminal included), zero violations"
                    f"{'' if ok else f', failures: {bad[:5]}'}", t0)
