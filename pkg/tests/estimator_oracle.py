"""Straight-line re-evaluation of the attack-cost formulas in high precision.

Written independently of ``rankcrypt.estimator``: every formula is typed in
again in its printed form (including the subtractive forms the estimator
avoids) and evaluated with mpmath at 60 digits.  Constraint replay uses exact
integers only.

Shared convention: every polynomial or binomial factor below 1 counts as 1.
"""

from __future__ import annotations

import math

from mpmath import mp, mpf

mp.dps = 60


def C(a, b) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def lg(x) -> mpf:
    x = mpf(x)
    return mpf(0) if x <= 1 else mp.log(x, 2)


def ceil_div(a, b):
    return int(mp.ceil(mpf(a) / mpf(b)))


def floor_div(a, b):
    return int(mp.floor(mpf(a) / mpf(b)))


# ---------------------------------------------------------------------------
# costs


def cost(report, omega=mpf("2.81")):
    inst = report.instance
    omega = mpf(omega)
    fn = globals()["_" + report.problem.lower() + "_" + report.attack.replace("-", "_").lower()]
    return fn(inst, dict(report.params), omega)


def _q(inst):
    return mp.log(inst.q, 2)


# RSD


def _rsd_oj(i, prm, w):
    m, k, t = i.m, i.k, i.r
    a = lg(mpf(m) ** 3) + lg(mpf(t) ** 3) + _q(i) * (t - 1) * (k + 1)
    b = lg(mpf(k + t) ** 3) + lg(mpf(t) ** 3) + _q(i) * (t - 1) * (m - t)
    return min(a, b)


def _rsd_grs(i, prm, w):
    m, n, k, t = i.m, i.n, i.k, i.r
    e = min(t * ceil_div(m * k, n), (t - 1) * ceil_div(m * (k + 1), n))
    return lg(mpf(n - k) ** 3) + lg(mpf(m) ** 3) + _q(i) * e


def _rsd_aght(i, prm, w):
    m, n, k, t = i.m, i.n, i.k, i.r
    return lg(mpf(n - k) ** 3) + lg(mpf(m) ** 3) + _q(i) * (t * ceil_div(m * (k + 1), n) - m)


def _rsd_mm_linear(i, prm, w):
    m, n, t = i.m, i.n, i.r
    return w * lg(mpf((m + n) * t) ** t / mp.factorial(t))


def _rsd_mm_linear_under(i, prm, w):
    m, n, t = i.m, i.n, i.r
    return w * lg(mpf((m + n) * t) ** (t + 1) / mp.factorial(t + 1))


def _rsd_sm_punctured(i, prm, w):
    m, n, k, t, p = i.m, i.n, i.k, i.r, prm["p"]
    return lg(m) + lg(C(n - p - k - 1, t)) + (w - 1) * lg(C(n - p, t))


def _rsd_sm_hybrid(i, prm, w):
    m, n, k, t, a = i.m, i.n, i.k, i.r, prm["a"]
    return _q(i) * a * t + lg(m) + lg(C(n - k - 1, t)) + (w - 1) * lg(C(n - a, t))


def sm_sums(m, n, k, t, b):
    A = sum(C(n, t) * C(m * k + 1, j) for j in range(1, b + 1))
    B = sum(m * C(n - k - 1, t) * C(m * k + 1, j) for j in range(1, b + 1))
    Cs = sum((-1) ** (i + 1) * C(n, t + i) * C(m + i - 1, i) * C(m * k + 1, j - i)
             for j in range(1, b + 1) for i in range(1, j + 1))
    return A, B, Cs


def _rsd_sm_bilinear(i, prm, w):
    m, n, k, t, b = i.m, i.n, i.k, i.r, prm["b"]
    A, B, Cs = sm_sums(m, n, k, t, b)
    val = (mpf(B) * C(k + t + 1, t) + mpf(Cs) * (m * k + 1) * (t + 1)) / (mpf(B) + Cs) * mpf(A) ** 2
    return lg(val)


# BRD


def _brd_aght_small_m(i, prm, w):
    m, n, k, r = i.m, i.n, i.k, i.r
    return w * lg((n - k - 1) * m) + _q(i) * (r * ceil_div((k + 1) * m, n) - m)


def _brd_aght_large_m(i, prm, w):
    m, n, k, r = i.m, i.n, i.k, i.r
    return w * lg(n - k - 1) + lg(mpf(m) ** 2) + _q(i) * r * (k + 1)


def _brd_prr_columns(i, prm, w):
    m, n, k = i.m, i.n, i.k
    e = sum(ri * (m - ti) for ri, ti in zip(i.rho, prm["t"])) - m
    return w * lg(m * (n - k - 1)) + _q(i) * e


def _brd_prr_rows(i, prm, w):
    m, n, k = i.m, i.n, i.k
    e = sum(ri * (ni - ti) for ri, ni, ti in zip(i.rho, i.eta, prm["t"]))
    return w * lg(n - k - 1) + lg(mpf(m) ** 2) + _q(i) * e


def _brd_oj_basis(i, prm, w):
    m, k, r = i.m, i.k, i.r
    return w * lg(k * r + r) + _q(i) * (m - r) * (r - 1)


def _oj_common(i):
    gamma = max(i.rho[1:]) if len(i.rho) > 1 else 0
    return i.m, i.k, i.r, i.eta[0], i.rho[0], gamma


def _brd_oj_k1(i, prm, w):
    m, k, r, n1, r1, g = _oj_common(i)
    return w * lg(m * (r - 1) + (n1 - r1)) + _q(i) * ((r1 - 1) * (n1 - r1) + g)


def _brd_oj_k2(i, prm, w):
    m, k, r, n1, r1, g = _oj_common(i)
    return w * lg(m * (r - 1) + (k + 1 - r1)) + _q(i) * ((r1 - 1) * (k + 1 - r1) + g)


def _brd_oj_k3(i, prm, w):
    m, k, r, n1, r1, g = _oj_common(i)
    return w * lg(m * (r - 1)) + _q(i) * g


def _brd_ap_linearization(i, prm, w):
    k = i.k
    vals = []
    for nv, rv in zip(i.eta, i.rho):
        if rv:
            vals.append(w * lg(rv * k) + _q(i) * rv * ceil_div((k + 1) * (rv + 1) - (nv + 1), rv))
    return min(vals)


def _brd_ap_groebner(i, prm, w):
    d = prm["dreg"]
    return min(lg(nv) + w * lg(C(rv + i.k + d - 1, d)) for nv, rv in zip(i.eta, i.rho))


def _brd_mm_block(i, prm, w):
    m, n, k, r, p = i.m, i.n, i.k, i.r, prm["p"]
    prod = C(i.eta[-1] - p, i.rho[-1])
    for nv, rv in zip(i.eta[:-1], i.rho[:-1]):
        prod *= C(nv, rv)
    return lg(m) + lg(C(n - p - k - 1, r)) + (w - 1) * lg(prod)


def _brd_mm_block_hybrid(i, prm, w):
    m, n, k, r, a = i.m, i.n, i.k, i.r, prm["a"]
    prod = 1
    for nv, rv, av in zip(i.eta, i.rho, a):
        prod *= C(nv - av, rv)
    return (_q(i) * sum(av * rv for av, rv in zip(a, i.rho)) + lg(m)
            + lg(C(n - k - 1, r)) + (w - 1) * lg(prod))


def _brd_bp_mm(i, prm, w):
    m, n, k, r, a, p = i.m, i.n, i.k, i.r, prm["a"], prm["p"]
    prod = 1
    for nv, rv, av, pv in zip(i.eta, i.rho, a, p):
        prod *= C(nv - pv - av, rv)
    return (_q(i) * sum(av * rv for av, rv in zip(a, i.rho)) + lg(m)
            + lg(C(n - sum(p) - k - 1, r)) + (w - 1) * lg(prod))


# NHRSD


def _nhrsd_nh_combinatorial(i, prm, w):
    w1, w2 = i.rho
    r, rho = prm["r"], prm["rho"]
    return _q(i) * ((w1 + w2) * (i.m - r) - w2 * rho - i.m)


def nh_alg_terms(m, n, n1, w1, w2, a):
    Nfq = m * sum(C(n1 - 1, j) * C(n, w1 + w2 - j) for j in range(w2, w1 + w2 + 1))
    v = m * C(n1 - 1, w2 - 1) * C(n - 1, w1)
    Ma = sum(C(n1, j) * C(2 * n - a, w1 + w2 - j) for j in range(0, w2))
    return Nfq, C(2 * n + n1 - a, w1 + w2) - Ma - v


def _nhrsd_nh_algebraic(i, prm, w):
    w1, w2 = i.rho
    a = prm["a"]
    Nfq, size = nh_alg_terms(i.m, i.eta[0], i.eta[1], w1, w2, a)
    return _q(i) * a * w1 + lg(Nfq) + (w - 1) * lg(size)


def U(n, k, r, nv, rv):
    n1, n2, n3 = nv
    r1, r2 = rv
    if n2 > r2 and n1 + n3 >= r1:
        return C(n, r) - sum(C(n2, j) * C(n1 + n3, r - j) for j in range(0, r2))
    if n2 == r2 and n1 + n3 >= r1:
        return C(n2, r2) * C(n1 + n3, r1)
    if n2 > r2 and n1 + n3 <= r1:
        return sum(C(n2, r - j) * C(n1 + n3, j) for j in range(0, n1 + n3 + 1))
    raise ValueError("U undefined")


def _u_args(i, a, p):
    nv = (i.eta[0] - p[0], i.eta[1] - p[1], i.eta[2] - p[2] - a)
    return sum(nv), nv


def _nhrsd_nh_bp_mm(i, prm, w):
    m, n, k, r = i.m, i.n, i.k, i.r
    a, p = prm["a"], prm["p"]
    tot, nv = _u_args(i, a, p)
    u = U(tot, k, r, nv, i.rho)
    return _q(i) * a * i.rho[0] + lg(m) + lg(C(n - sum(p) - k - 1, r)) + (w - 1) * lg(u)


# RSL


def _rsl_rsl_combinatorial(i, prm, w):
    m, n, k, r, N = i.m, i.n, i.k, i.r, i.N
    a = floor_div(N, r)
    return _q(i) * r * (m - floor_div(m * (n - k) - N, n - a))


def rsl_sizes(n, k, r_eff, Np, a, b, alpha_r, alpha_l):
    M = sum(C(n - a - alpha_r, r_eff) * C(Np - alpha_l, j) for j in range(1, b + 1))
    Ns = 0
    for j in range(1, b + 1):
        for d in range(1, j + 1):
            for jj in range(1, n - k + 1):
                Ns += C(jj - 1, d - 1) * C(n - k - jj, r_eff - d + 1) * C(Np - alpha_l - jj, j - d)
    return M, Ns


def _rsl_alg(i, prm, w, r_eff):
    m, n, k, r = i.m, i.n, i.k, i.r
    a, Np, b = prm["a"], prm["n_prime"], prm["b"]
    aR, aL = prm["alpha_R"], prm["alpha_lambda"]
    M, Ns = rsl_sizes(n, k, r_eff, Np, a, b, aR, aL)
    first = lg(m) + lg(Ns) + (w - 1) * lg(M)
    second = lg(Np - aL) + lg(C(k - a + 1 + r, r)) + 2 * lg(M)
    return (r * aR + aL) + min(first, second)


def _rsl_rsl_algebraic(i, prm, w):
    return _rsl_alg(i, prm, w, i.r)


def _rsl_rsl_algebraic_delta(i, prm, w):
    return _rsl_alg(i, prm, w, i.r - prm["delta"])


# NHRSL


def _nhrsl_nhrsl_combinatorial(i, prm, w):
    w1, w2 = i.rho
    return _q(i) * (w2 * (i.m - prm["r"]) - (w2 - w1) * prm["rho"])


# ---------------------------------------------------------------------------
# constraint replay (exact integers)


def constraints_hold(report) -> bool:
    i = report.instance
    prm = dict(report.params)
    name = report.attack
    m, n, k, r = i.m, i.n, i.k, i.r
    if name == "PRR-columns":
        t = prm["t"]
        return (all(rv <= tv <= m for rv, tv in zip(i.rho, t)) and sum(t) <= m
                and sum(nv * tv for nv, tv in zip(i.eta, t)) <= m * (n - k - 1))
    if name == "PRR-rows":
        t = prm["t"]
        return (all(rv <= tv <= nv for rv, tv, nv in zip(i.rho, t, i.eta))
                and sum(t) <= n - k - 1)
    if name in ("SM-punctured", "SM-hybrid"):
        p = prm["p"] if "p" in prm else prm["a"]
        ok = lambda j: m * C(n - k - 1, r) >= C(n - j, r) - 1
        return 1 <= p <= n and ok(p) and not any(ok(j) for j in range(1, p))
    if name == "SM-bilinear":
        b = prm["b"]
        ok = lambda x: (lambda A, B, Cs: A - 1 <= B + Cs)(*sm_sums(m, n, k, r, x))
        return 0 < b < r + 2 and ok(b) and not any(ok(x) for x in range(1, b))
    if name == "MM-block":
        p = prm["p"]
        rest = 1
        for nv, rv in zip(i.eta[:-1], i.rho[:-1]):
            rest *= C(nv, rv)
        ok = lambda j: m * C(n - j - k - 1, r) >= C(i.eta[-1] - j, i.rho[-1]) * rest - 1
        top = i.eta[-1] - i.rho[-1]
        return 0 <= p <= top and ok(p) and not any(ok(j) for j in range(p + 1, top + 1))
    if name == "MM-block-hybrid":
        a = prm["a"]
        prod = 1
        for nv, rv, av in zip(i.eta, i.rho, a):
            prod *= C(nv - av, rv)
        return all(0 <= av <= nv - rv for av, nv, rv in zip(a, i.eta, i.rho)) and m * C(n - k - 1, r) >= prod - 1
    if name == "BP-MM":
        a, p = prm["a"], prm["p"]
        prod = 1
        for nv, rv, av, pv in zip(i.eta, i.rho, a, p):
            prod *= C(nv - pv - av, rv)
        return min(a + p) >= 0 and m * C(n - sum(p) - k - 1, r) >= prod
    if name == "NH-combinatorial":
        w1, w2 = i.rho
        return w1 <= prm["r"] and w2 <= prm["rho"] and prm["r"] + prm["rho"] <= m - 1
    if name == "NH-algebraic":
        w1, w2 = i.rho
        ok = lambda a: (lambda N, s: N >= s - 1)(*nh_alg_terms(m, i.eta[0], i.eta[1], w1, w2, a))
        return ok(prm["a"]) and not any(ok(a) for a in range(prm["a"]))
    if name == "NH-BP-MM":
        a, p = prm["a"], prm["p"]
        tot, nv = _u_args(i, a, p)
        return a >= 0 and min(p) >= 0 and m * C(n - sum(p) - k - 1, r) >= U(tot, k, r, nv, i.rho)
    if name == "RSL-combinatorial":
        return i.N < k * r and prm["a"] == i.N // r
    if name in ("RSL-algebraic", "RSL-algebraic-delta"):
        d, a, Np, b = prm["delta"], prm["a"], prm["n_prime"], prm["b"]
        aR, aL = prm["alpha_R"], prm["alpha_lambda"]
        N = i.N
        if d == 0:
            structural = a * r < N <= (a + 1) * r and Np == a * r + 1
        else:
            base = d * (n - r + d)
            structural = (N >= base + a * (r - d) and N < base + (a + 1) * (r - d)
                          and Np == base + a * (r - d))
        M, Ns = rsl_sizes(n, k, r - d, Np, a, b, aR, aL)
        return (structural and 1 <= b <= r + 1 and 0 <= aR < n - a - r
                and 0 <= aL < Np - b and m * Ns >= M - 1)
    if name == "NHRSL-combinatorial":
        w1, w2 = i.rho
        z = i.eta[0]
        N1, N2, rv, rho = prm["N1"], prm["N2"], prm["r"], prm["rho"]
        a = N1 // w1 if w1 else 0
        b = N2 // w2 if w2 else 0
        return (N1 >= 0 and N2 >= 0 and N1 + N2 == i.N and w1 <= rv and w2 - w1 <= rho
                and rv + rho <= m - 1 and a <= n - 2 * z and b <= 2 * z
                and m * (n - z) >= (n - 2 * z - b) * (rv + rho) + (2 * z - a) * rv + i.N)
    return True
