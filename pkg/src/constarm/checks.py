"""Verification suites: every structural identity the toolkit relies on,
packaged as functions returning small report dicts.

These power both the `verify` CLI subcommand and the acceptance tests.
Each check recomputes both sides of an identity through independent routes
(formula vs. enumeration, codeword weight vs. affine support, shift vs.
substitution) and never assumes the identity it is testing.
"""

from __future__ import annotations

import numpy as np

from . import distance, errors, evalcode, linalg, rpoly, spaces, witnesses
from .gf import field_from_order, mu_subgroup
from .spaces import CodeParams

SWEEP_QS = (7, 9, 13, 16, 17, 19, 25)
SWEEP_MS = (2, 3, 4)


def intermediate_divisors(q: int):
    """Divisors r of q-1 with 2 < r < q-1."""
    return [r for r in range(3, q - 1) if (q - 1) % r == 0]


def sweep_params(qs=SWEEP_QS, ms=SWEEP_MS, rs=None, nonterminal_only=True):
    """Admissible intermediate parameter sets, deterministic order."""
    out = []
    for q in qs:
        rlist = intermediate_divisors(q) if rs is None else [
            r for r in rs if (q - 1) % r == 0 and 2 < r < q - 1
        ]
        for m in ms:
            for r in rlist:
                for ell in spaces.admissible_degrees(q, m, r):
                    p = CodeParams(q, m, r, ell)
                    if nonterminal_only and p.terminal:
                        continue
                    out.append(p)
    return out


def _chunk_rows(field, m: int) -> int:
    return max(1, int(2.5e7 // (field.q ** m * field.e)))


def _batch_values_chunked(field, m, mat):
    rows = _chunk_rows(field, m)
    parts = [
        rpoly.batch_values(field, m, mat[i : i + rows])
        for i in range(0, mat.shape[0], rows)
    ]
    return np.concatenate(parts, axis=0)


def _batch_mask_chunked(field, m, mat):
    rows = _chunk_rows(field, m)
    parts = [
        rpoly.batch_support_mask(field, m, mat[i : i + rows])
        for i in range(0, mat.shape[0], rows)
    ]
    return np.concatenate(parts, axis=0)


def _batch_coeffs_chunked(field, m, mat):
    rows = _chunk_rows(field, m)
    parts = [
        rpoly.batch_coeffs(field, m, mat[i : i + rows])
        for i in range(0, mat.shape[0], rows)
    ]
    return np.concatenate(parts, axis=0)


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def check_field_axioms(q: int, trials: int = 10_000, seed: int = 0) -> dict:
    """Associativity, distributivity and inverses on random triples."""
    F = field_from_order(q)
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, q, size=(3, trials))
    ok = True
    ok &= bool(np.array_equal(F.add_index(F.add_index(a, b), c),
                              F.add_index(a, F.add_index(b, c))))
    ok &= bool(np.array_equal(F.mul_index(F.mul_index(a, b), c),
                              F.mul_index(a, F.mul_index(b, c))))
    ok &= bool(np.array_equal(F.mul_index(a, F.add_index(b, c)),
                              F.add_index(F.mul_index(a, b), F.mul_index(a, c))))
    ok &= bool(np.array_equal(F.add_index(a, F.neg_t[a]), np.zeros(trials, dtype=np.int64)))
    nz = a[a != 0]
    ok &= bool(np.array_equal(F.mul_index(nz, F.inv_t[nz]), np.ones(nz.size, dtype=np.int64)))
    return {"check": "field_axioms", "q": q, "trials": trials, "passed": ok}


def check_structural(q: int, m: int, rs=None) -> dict:
    """M^n = lambda I, M^{q^m-1} = I, and full orbit coverage."""
    F = field_from_order(q)
    rlist = rs if rs is not None else intermediate_divisors(q) or [1]
    ok = True
    details = []
    for r in rlist:
        model = evalcode.build_eval_model(q, m, r)
        Mn = linalg.mat_pow(F, model.Mmat, model.n)
        lamI = np.zeros((m, m), dtype=np.int16)
        lamI[np.arange(m), np.arange(m)] = model.lam
        scalar_ok = bool(np.array_equal(Mn, lamI))
        Mfull = linalg.mat_pow(F, model.Mmat, q ** m - 1)
        eye = np.zeros((m, m), dtype=np.int16)
        eye[np.arange(m), np.arange(m)] = 1
        full_ok = bool(np.array_equal(Mfull, eye))
        seq = model.ext.power_flat_sequence()
        counts = np.bincount(seq, minlength=q ** m)
        cover_ok = bool(counts[0] == 0 and np.all(counts[1:] == 1))
        orbit_ok = bool(
            np.all(np.bincount(model.orbit_rep[1:], minlength=model.n) == r)
        )
        ok &= scalar_ok and full_ok and cover_ok and orbit_ok
        details.append({"r": r, "n": model.n, "lam": model.lam,
                        "scalar": scalar_ok, "coverage": cover_ok,
                        "orbits": orbit_ok, "full_cycle": full_ok})
    return {"check": "structural", "q": q, "m": m, "passed": ok, "cases": details}


def check_pencil_tightness(params: CodeParams) -> dict:
    """weight(encode(pencil)) == exact_distance, plus the support count."""
    q, m, r = params.q, params.m, params.r
    model = evalcode.build_eval_model(q, m, r)
    f = witnesses.pencil(q, m, witnesses.pencil_spec(q, params.a, params.b))
    word = evalcode.encode(model, f)
    d = distance.exact_distance(params)
    supp = rpoly.support_size(f)
    expected_supp = (q - 1) * (q - params.b + 1) * q ** (m - params.a - 2)
    passed = word.weight == d and supp == expected_supp and supp == r * word.weight
    return {
        "check": "pencil_tightness", "params": params.to_dict(),
        "weight": word.weight, "d_exact": d, "support": supp,
        "passed": bool(passed),
    }


def check_orbit_weight(params: CodeParams, count: int = 100, seed: int = 0) -> dict:
    """wt(c_f) * r == |Supp(f)| for random f from the defining space."""
    model = evalcode.build_eval_model(params.q, params.m, params.r)
    space = spaces.code_space(params)
    F, m = model.field, params.m
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, params.q, size=(count, space.K), dtype=np.int64)
    mat = np.zeros((count, params.q ** m), dtype=np.int16)
    mat[:, space.flat] = coeffs
    vals = _batch_values_chunked(F, m, mat)
    support = np.count_nonzero(vals, axis=1)
    weight = np.count_nonzero(vals[:, model.point_flat], axis=1)
    bad = int(np.count_nonzero(support != params.r * weight))
    return {
        "check": "orbit_weight", "params": params.to_dict(), "count": count,
        "violations": bad, "passed": bad == 0,
    }


def _monomial_grid_values(F, m, exps) -> np.ndarray:
    pts = rpoly.grid_coords(F, m)
    t = np.ones(pts.shape[0], dtype=np.int16)
    for j in range(m):
        e = int(exps[j])
        if e:
            t = F.mul_index(t, F.pow_index(pts[:, j], e)).astype(np.int16)
    return t


def check_closure(q: int, m: int, r: int, s: int, c: int,
                  max_polys: int = 48) -> dict:
    """Constacyclic closure of the layer R_s^(c) under the lambda^{-c} shift.

    For each checked basis monomial f the shifted codeword is compared with
    the encoding of g(P) = f(P M^{-1}), and g is interpolated back to reduced
    coefficients to confirm it stays inside the layer (degree <= s, residue c).
    Spaces too large for a full pass are sampled deterministically; small
    ones additionally get an elimination-based row-space membership test.
    """
    model = evalcode.build_eval_model(q, m, r)
    space = spaces.build_space(q, m, r, s, c)
    F = model.field
    qm = q ** m
    K = space.K
    if K == 0:
        return {"check": "closure", "q": q, "m": m, "r": r, "s": s, "c": c,
                "checked": 0, "passed": True}
    mu = F.pow(model.lam, -c)
    full = K * qm <= (1 << 25)
    if full:
        picks = np.arange(K)
    else:
        picks = np.unique(np.linspace(0, K - 1, max_polys).round().astype(np.int64))

    Minv = linalg.mat_inv(F, model.Mmat)
    pts = rpoly.grid_coords(F, m)
    qvec = (q ** np.arange(m - 1, -1, -1)).astype(np.int64)
    perm = np.asarray(F.matmul(pts.astype(np.int16), Minv), dtype=np.int64) @ qvec

    vals_f = np.empty((picks.size, qm), dtype=np.int16)
    for row, i in enumerate(picks):
        vals_f[row] = _monomial_grid_values(F, m, space.basis[int(i)])
    vals_g = vals_f[:, perm]

    # shifted codeword vs. encoding of the substituted polynomial
    w = vals_f[:, model.point_flat]
    shifted = np.empty_like(w)
    shifted[:, 0] = F.mul_index(np.full(picks.size, mu, dtype=np.int64), w[:, -1])
    shifted[:, 1:] = w[:, :-1]
    cg = vals_g[:, model.point_flat]
    shift_ok = bool(np.array_equal(shifted, cg))

    # g must stay inside the layer
    coeffs = _batch_coeffs_chunked(F, m, vals_g)
    degs = rpoly.grid_degrees(F, m)
    nz = coeffs != 0
    deg_ok = bool(np.all(np.where(nz, degs[None, :], 0) <= s))
    res_ok = bool(np.all((np.where(nz, degs[None, :], c) % r) == c))

    member_ok = True
    membership_checked = 0
    if K * K * model.n <= 30_000_000:
        G = evalcode.generator_matrix(model, space, check_rank=False)
        take = picks[: min(3, picks.size)]
        for row in range(take.size):
            member_ok &= linalg.in_row_space(F, G, shifted[row])
            membership_checked += 1

    passed = shift_ok and deg_ok and res_ok and member_ok
    return {
        "check": "closure", "q": q, "m": m, "r": r, "s": s, "c": c,
        "checked": int(picks.size), "full_basis": bool(full),
        "shift_ok": shift_ok, "stays_in_layer": bool(deg_ok and res_ok),
        "membership_checked": membership_checked, "passed": bool(passed),
    }


def check_first_layer(q: int, r: int, m: int = 2, a: int = 0) -> dict:
    """Obstruction scan over every b: zero survivors in class r-1 (r > 2),
    a positive count in class 1."""
    ok = True
    cases = []
    for b in range(1, q - 1):
        cnt = distance.first_layer_scan(q, m, r, a, b)
        if b % r == (r - 1) % r and r > 2:
            good = cnt == 0
        elif b % r == 1 % r:
            good = cnt > 0
        else:
            good = cnt == 0  # stable sets have size 1 mod r
        ok &= good
        cases.append({"b": b, "count": cnt, "passed": good})
    return {"check": "first_layer_scan", "q": q, "r": r, "passed": ok, "cases": cases}


def check_formula_vs_oracle(params: CodeParams, oracle: str = "exhaustive",
                            budget: int = distance.EXHAUSTIVE_BUDGET,
                            w_max: int = 3) -> dict:
    rep = distance.build_report(params, oracle=oracle, budget=budget, w_max=w_max)
    if rep.oracle_d is None:
        passed = rep.oracle_method == "witness-upper-only"
    else:
        passed = rep.oracle_d == rep.d_exact
    return {
        "check": "formula_vs_oracle", "params": params.to_dict(),
        "oracle": rep.oracle_method, "oracle_d": rep.oracle_d,
        "d_exact": rep.d_exact, "passed": bool(passed),
    }


def check_block_progression(q: int, r: int, m: int = 2, a: int = 0) -> dict:
    rows = distance.block_table(q, m, r, a)
    norm = [row[3] for row in rows]
    diffs = {norm[i] - norm[i + 1] for i in range(len(norm) - 1)}
    ok = diffs <= {q - 1}
    return {"check": "block_progression", "q": q, "r": r,
            "normalized": norm, "passed": bool(ok)}


def check_properties(params: CodeParams) -> dict:
    """kappa integrality, Singleton, sanity envelope, d < n."""
    q, m, r, a, b = params.q, params.m, params.r, params.a, params.b
    d = distance.exact_distance(params)
    K = spaces.dimension_K(params)
    n = params.n
    nu = params.nu
    ok = d < n and d <= n - K + 1
    if not params.terminal:
        lower, upper = distance.sdw_bounds(params)
        kap = distance.kappa(params)
        ok &= lower <= d <= upper and d == upper
        ok &= kap == d - lower and kap >= 0
        ok &= (kap == 0) == (b == r - 1 and a == m - 2)
        ok &= 3 * nu * q ** (m - a - 2) <= d <= nu * (q - 1) * q ** (m - a - 2)
        ok &= ((b - 1) * q ** (m - a - 2) - (r - 2)) % r == 0
    else:
        ok &= (q - b + r - 2) % r == 0
    return {"check": "properties", "params": params.to_dict(),
            "d": d, "k": K, "n": n, "passed": bool(ok)}


def check_mu_structure(q: int) -> dict:
    """|mu_r| = r, coset partition, and the product-of-roots sign."""
    F = field_from_order(q)
    ok = True
    for r in [r for r in range(1, q) if (q - 1) % r == 0]:
        mu = mu_subgroup(F, r)
        ok &= len(mu) == r and all(F.pow(x, r) == 1 for x in mu)
        prod = 1
        for x in mu:
            prod = F.mul(prod, x)
        expected = F.neg(1) if r % 2 == 0 else 1
        ok &= prod == expected
        orbits = witnesses.mu_orbits(q, r)
        ok &= len(orbits) == (q - 1) // r
        ok &= all(len(o) == r for o in orbits)
        ok &= sorted(x for o in orbits for x in o) == list(range(1, q))
    return {"check": "mu_structure", "q": q, "passed": bool(ok)}


# ---------------------------------------------------------------------------
# orchestration for the CLI
# ---------------------------------------------------------------------------

def run_verify(qs=(7,), ms=(2,), rs=None, ells=None, oracle="none",
               budget=distance.EXHAUSTIVE_BUDGET, w_max=3, seed=0,
               orbit_trials=25) -> dict:
    checks = []
    for q in sorted(set(qs)):
        checks.append(check_field_axioms(q, seed=seed))
        checks.append(check_mu_structure(q))
        rlist = intermediate_divisors(q) if rs is None else [
            r for r in rs if (q - 1) % r == 0 and 2 < r < q - 1
        ]
        for m in sorted(set(ms)):
            checks.append(check_structural(q, m, rlist or None))
            for r in rlist:
                checks.append(check_first_layer(q, r))
                checks.append(check_block_progression(q, r, m=max(m, 2)))
                for ell in spaces.admissible_degrees(q, m, r):
                    if ells is not None and ell not in ells:
                        continue
                    p = CodeParams(q, m, r, ell)
                    checks.append(check_properties(p))
                    if not p.terminal:
                        checks.append(check_pencil_tightness(p))
                        checks.append(check_orbit_weight(p, count=orbit_trials, seed=seed))
                        checks.append(check_closure(q, m, r, ell, (r - 1) % r))
                    if oracle == "exhaustive" and not p.terminal:
                        try:
                            checks.append(check_formula_vs_oracle(p, "exhaustive", budget))
                        except errors.BudgetExceeded:
                            checks.append({
                                "check": "formula_vs_oracle", "params": p.to_dict(),
                                "oracle": "witness-upper-only", "oracle_d": None,
                                "d_exact": distance.exact_distance(p), "passed": True,
                            })
                    elif oracle == "support" and p.terminal:
                        checks.append(check_formula_vs_oracle(p, "support", budget, w_max))
    all_pass = all(c["passed"] for c in checks)
    return {"seed": seed, "all_pass": all_pass, "checks": checks}
