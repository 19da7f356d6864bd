"""Attack-cost estimates for rank-metric decoding and support-learning problems.

Every cost is the log2 of an operation count.  Big-O constants are taken as 1
and each polynomial or binomial factor is clamped below at 1, so the numbers
are estimates comparable across parameter sets rather than exact counts.  A
negative total is floored at 0 bits and the report says so in its notes.

Internal attack parameters are picked by bounded exhaustive search:

* PRR column sizes ``t_i``: every prefix in ``[r_i, m]``, the last size solved
  for directly (the objective is linear in it).
* PRR row sizes ``t'_i``: unit-weight knapsack, filled greedily (exact).
* MaxMinors puncturing ``p``: every value in ``[0, n_l - r_l]``.
* MaxMinors hybrid vector ``a``: depth-first branch and bound over
  ``a_i in [0, n_i - r_i]`` (exact).
* Blockwise BP vectors: the reduction ``c_i = a_i + p_i`` in
  ``[0, n_i - r_i]`` is scanned in full along the last block and on a strided
  grid (at most ``GRID_PREFIX`` points) along the others, then refined with
  stride 1 around the best point.
* Non-homogeneous BP: ``(p_2, p_1 + a + p_3)`` scanned exhaustively.
* Support-learning algebraic attacks: ``b in [1, r+1]``,
  ``alpha_R in [0, n-a-r)``, ``alpha_lambda in [0, N'-b)`` exhaustively, up to
  ``RSL_GRID_LIMIT`` points.

Ties are broken towards the lexicographically smallest parameter tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .params import BWE, NH, UR, SchemeParams

OMEGA = 2.81

RSD = "RSD"
BRD = "BRD"
NHRSD = "NHRSD"
RSL = "RSL"
NHRSL = "NHRSL"
PROBLEMS = (RSD, BRD, NHRSD, RSL, NHRSL)

COMBINATORIAL = "combinatorial"
ALGEBRAIC = "algebraic"

GRID_PREFIX = 4096
RSL_GRID_LIMIT = 2_000_000

_LN2 = math.log(2.0)
_EXACT_LIMIT = 4096
_TIE = 1e-9


# ---------------------------------------------------------------------------
# log-domain combinatorics


def log2_binomial(a: int, b: int) -> float:
    """log2 C(a, b); -inf when the binomial is zero (b < 0 or b > a)."""
    if a < 0 or b < 0 or b > a:
        return -math.inf
    if a <= _EXACT_LIMIT:
        return math.log2(math.comb(a, b))
    return (math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)) / _LN2


def _comb(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def _lg(x) -> float:
    """log2 of a nonnegative factor, clamped below at 0."""
    if x <= 1:
        return 0.0
    if isinstance(x, Fraction):
        return math.log2(x.numerator) - math.log2(x.denominator)
    return math.log2(x)


def _lb(a: int, b: int) -> float:
    return max(log2_binomial(a, b), 0.0)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _floor_div(a: int, b: int) -> int:
    return a // b


# ---------------------------------------------------------------------------
# instances and reports


@dataclass(frozen=True)
class ProblemInstance:
    """A decoding or support-learning instance.

    ``eta``/``rho`` hold block lengths and weights.  Non-homogeneous problems
    use ``eta = (n_1, n_2, n_3)`` with ``n_2`` the middle block and
    ``rho = (r_1, r_2)`` where ``r_1`` is the joint weight of the outer blocks.
    ``N`` is the number of syndromes of a support-learning instance.
    """

    problem: str
    m: int
    n: int
    k: int
    r: int
    eta: tuple[int, ...] = ()
    rho: tuple[int, ...] = ()
    N: int = 1
    q: int = 2
    dreg: int | None = None
    label: str = ""

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.m < 1 or self.n < 1 or self.q < 2:
            raise ValueError("need m >= 1, n >= 1, q >= 2")
        if not 0 <= self.k < self.n:
            raise ValueError("need 0 <= k < n")
        if self.r < 0 or self.N < 1:
            raise ValueError("need r >= 0 and N >= 1")
        if self.eta and sum(self.eta) != self.n:
            raise ValueError("block lengths must sum to n")
        if any(x < 0 for x in self.eta + self.rho):
            raise ValueError("block sizes must be nonnegative")
        if self.problem == BRD:
            if not self.eta or len(self.eta) != len(self.rho):
                raise ValueError("BRD needs one weight per block")
            if sum(self.rho) != self.r:
                raise ValueError("block weights must sum to r")
            if any(w > x for w, x in zip(self.rho, self.eta)):
                raise ValueError("block weight exceeds block length")
        if self.problem in (NHRSD, NHRSL):
            if len(self.eta) != 3 or len(self.rho) != 2:
                raise ValueError("non-homogeneous instances need 3 blocks and 2 weights")
            if sum(self.rho) != self.r or self.rho[0] > self.rho[1]:
                raise ValueError("need r = r_1 + r_2 with r_1 <= r_2")

    @classmethod
    def rsd(cls, m: int, n: int, k: int, t: int, **kw) -> "ProblemInstance":
        return cls(RSD, m, n, k, t, **kw)

    @classmethod
    def brd(cls, m: int, k: int, eta, rho, **kw) -> "ProblemInstance":
        eta, rho = tuple(eta), tuple(rho)
        return cls(BRD, m, sum(eta), k, sum(rho), eta, rho, **kw)

    @classmethod
    def nhrsd(cls, m: int, k: int, eta, rho, **kw) -> "ProblemInstance":
        eta, rho = tuple(eta), tuple(rho)
        return cls(NHRSD, m, sum(eta), k, sum(rho), eta, rho, **kw)

    @classmethod
    def rsl(cls, m: int, n: int, k: int, r: int, N: int, **kw) -> "ProblemInstance":
        return cls(RSL, m, n, k, r, N=N, **kw)

    @classmethod
    def nhrsl(cls, m: int, k: int, eta, rho, N: int, **kw) -> "ProblemInstance":
        eta, rho = tuple(eta), tuple(rho)
        return cls(NHRSL, m, sum(eta), k, sum(rho), eta, rho, N=N, **kw)

    def describe(self) -> str:
        core = f"{self.problem}(q={self.q}, m={self.m}, n={self.n}, k={self.k}, r={self.r}"
        if self.eta:
            core += f", eta={self.eta}, rho={self.rho}"
        if self.problem in (RSL, NHRSL):
            core += f", N={self.N}"
        return core + ")"


@dataclass(frozen=True)
class AttackReport:
    """Cost of one attack on one instance.

    ``bits`` is the floored cost used for comparisons (``inf`` when the
    attack does not apply); ``raw_bits`` is the formula value before flooring.
    """

    problem: str
    attack: str
    family: str
    bits: float
    raw_bits: float
    params: Mapping[str, object] = field(default_factory=dict)
    applicable: bool = True
    notes: tuple[str, ...] = ()
    instance: ProblemInstance | None = None


def _report(inst, attack, family, raw, params=None, applicable=True, notes=()):
    notes = tuple(notes)
    params = dict(params or {})
    if not applicable or raw is None or math.isnan(raw):
        raw = math.nan if raw is None else raw
        return AttackReport(inst.problem, attack, family, math.inf, raw, params, False, notes, inst)
    if raw < 0:
        notes += ("negative cost floored at 0 bits",)
    return AttackReport(inst.problem, attack, family, max(raw, 0.0), raw, params, True, notes, inst)


def _expect(inst: ProblemInstance, *problems: str) -> None:
    if inst.problem not in problems:
        raise ValueError(f"expected a {'/'.join(problems)} instance, got {inst.problem}")


# ---------------------------------------------------------------------------
# RSD


def _mm_condition(m, n, k, t) -> bool:
    return m * _comb(n - k - 1, t) >= _comb(n, t) - 1


def _first_index(m, n, k, t) -> int:
    lhs = m * _comb(n - k - 1, t)
    for i in range(1, n + 1):
        if lhs >= _comb(n - i, t) - 1:
            return i
    return n


def _sm_sums(m, n, k, t, b):
    big = m * k + 1
    a_sum = sum(_comb(n, t) * _comb(big, j) for j in range(1, b + 1))
    b_sum = sum(m * _comb(n - k - 1, t) * _comb(big, j) for j in range(1, b + 1))
    c_sum = 0
    for j in range(1, b + 1):
        for i in range(1, j + 1):
            term = _comb(n, t + i) * _comb(m + i - 1, i) * _comb(big, j - i)
            c_sum += term if i % 2 else -term
    return a_sum, b_sum, c_sum


def estimate_rsd(inst: ProblemInstance, omega: float = OMEGA) -> list[AttackReport]:
    _expect(inst, RSD)
    m, n, k, t = inst.m, inst.n, inst.k, inst.r
    lq = math.log2(inst.q)
    out = []

    first = 3 * _lg(m) + 3 * _lg(t) + lq * (t - 1) * (k + 1)
    second = 3 * _lg(k + t) + 3 * _lg(t) + lq * (t - 1) * (m - t)
    out.append(_report(inst, "OJ", COMBINATORIAL, min(first, second),
                       {"branch": 1 if first <= second else 2}))

    expo = min(t * _ceil_div(m * k, n), (t - 1) * _ceil_div(m * (k + 1), n))
    out.append(_report(inst, "GRS", COMBINATORIAL, 3 * _lg(n - k) + 3 * _lg(m) + lq * expo))

    expo = t * _ceil_div(m * (k + 1), n) - m
    out.append(_report(inst, "AGHT", COMBINATORIAL, 3 * _lg(n - k) + 3 * _lg(m) + lq * expo))

    over = _mm_condition(m, n, k, t)
    regime = {"overdetermined": over}

    cost = omega * _lg(Fraction(((m + n) * t) ** t, math.factorial(t)))
    out.append(_report(inst, "MM-linear", ALGEBRAIC, cost, regime, applicable=over))

    p = _first_index(m, n, k, t)
    cost = _lg(m) + _lb(n - p - k - 1, t) + (omega - 1) * _lb(n - p, t)
    out.append(_report(inst, "SM-punctured", ALGEBRAIC, cost, {**regime, "p": p}, applicable=over))

    cost = omega * _lg(Fraction(((m + n) * t) ** (t + 1), math.factorial(t + 1)))
    out.append(_report(inst, "MM-linear-under", ALGEBRAIC, cost, regime, applicable=not over))

    a = _first_index(m, n, k, t)
    cost = lq * a * t + _lg(m) + _lb(n - k - 1, t) + (omega - 1) * _lb(n - a, t)
    out.append(_report(inst, "SM-hybrid", ALGEBRAIC, cost, {**regime, "a": a}, applicable=not over))

    out.append(_sm_bilinear(inst, over, regime))
    return out


def _sm_bilinear(inst, over, regime):
    m, n, k, t = inst.m, inst.n, inst.k, inst.r
    if over:
        return _report(inst, "SM-bilinear", ALGEBRAIC, None, regime, applicable=False)
    for b in range(1, t + 2):
        a_sum, b_sum, c_sum = _sm_sums(m, n, k, t, b)
        if a_sum - 1 <= b_sum + c_sum:
            break
    else:
        return _report(inst, "SM-bilinear", ALGEBRAIC, None, regime, applicable=False,
                       notes=("no b in (0, t+2) balances the system",))
    num = b_sum * _comb(k + t + 1, t) + c_sum * (m * k + 1) * (t + 1)
    den = b_sum + c_sum
    params = {**regime, "b": b}
    if num <= 0 or den <= 0:
        return _report(inst, "SM-bilinear", ALGEBRAIC, None, params, applicable=False,
                       notes=("nonpositive weighted size",))
    return _report(inst, "SM-bilinear", ALGEBRAIC, _lg(Fraction(num, den) * a_sum * a_sum), params)


# ---------------------------------------------------------------------------
# BRD


def _prr_columns(m, n, k, eta, rho):
    """Maximize sum r_i t_i under r_i <= t_i <= m, sum t_i <= m, sum n_i t_i <= m(n-k-1)."""
    l = len(eta)
    cap = m * (n - k - 1)
    best: list = [None, None]

    def rec(i, prefix, used_t, used_nt, score):
        if i == l - 1:
            hi = m - used_t
            if eta[i]:
                hi = min(hi, (cap - used_nt) // eta[i])
            if hi < rho[i]:
                return
            last = hi if rho[i] else rho[i]
            total = score + rho[i] * last
            if best[0] is None or total > best[0]:
                best[0], best[1] = total, prefix + (last,)
            return
        for ti in range(rho[i], m - used_t + 1):
            if used_nt + eta[i] * ti > cap:
                break
            rec(i + 1, prefix + (ti,), used_t + ti, used_nt + eta[i] * ti, score + rho[i] * ti)

    rec(0, (), 0, 0, 0)
    return best[1]


def _prr_rows(n, k, eta, rho):
    """Maximize sum r_i t'_i under r_i <= t'_i <= n_i, sum t'_i <= n-k-1."""
    slack = n - k - 1 - sum(rho)
    if slack < 0:
        return None
    t = list(rho)
    order = sorted(range(len(eta)), key=lambda i: (-rho[i], -i))
    for i in order:
        if rho[i] == 0 or slack == 0:
            break
        add = min(slack, eta[i] - t[i])
        t[i] += add
        slack -= add
    return tuple(t)


def _oj_branches(inst, omega):
    m, k, r = inst.m, inst.k, inst.r
    lq = math.log2(inst.q)
    n1, r1 = inst.eta[0], inst.rho[0]
    r2 = inst.rho[1] if len(inst.rho) > 1 else 0
    gamma = max(inst.rho[1:], default=0)
    rows = [
        ("OJ-k1", n1 - 1 <= k < n1 + r2 - 1,
         omega * _lg(m * (r - 1) + (n1 - r1)) + lq * ((r1 - 1) * (n1 - r1) + gamma)),
        ("OJ-k2", r1 - 1 <= k <= n1 - 1,
         omega * _lg(m * (r - 1) + (k + 1 - r1)) + lq * ((r1 - 1) * (k + 1 - r1) + gamma)),
        ("OJ-k3", 1 <= k <= r1 - 1,
         omega * _lg(m * (r - 1)) + lq * gamma),
    ]
    hits = sum(ok for _, ok, _ in rows)
    notes = ("k-range branches overlap",) if hits > 1 else ()
    return [_report(inst, name, COMBINATORIAL, cost, {"gamma": gamma}, applicable=ok, notes=notes)
            for name, ok, cost in rows]


def _mm_product(eta, rho, cut=None) -> int:
    out = 1
    for i, (x, w) in enumerate(zip(eta, rho)):
        out *= _comb(x - (cut[i] if cut else 0), w)
    return out


def _mm_hybrid_search(eta, rho, budget, lq, w1):
    """Minimize lq*sum a_i r_i + w1*sum log C(n_i - a_i, r_i) s.t. prod C <= budget."""
    l = len(eta)
    exact = [[_comb(eta[i] - a, rho[i]) for a in range(eta[i] - rho[i] + 1)] for i in range(l)]
    logs = [[_lg(c) for c in row] for row in exact]
    best: list = [math.inf, None]

    def rec(i, cost, prod, vec):
        for a, (c_exact, c_log) in enumerate(zip(exact[i], logs[i])):
            base = cost + lq * a * rho[i]
            if base >= best[0] - _TIE and rho[i]:
                break
            total = base + w1 * c_log
            if i == l - 1:
                if prod * c_exact <= budget and total < best[0] - _TIE:
                    best[0], best[1] = total, vec + (a,)
            else:
                rec(i + 1, total, prod * c_exact, vec + (a,))

    rec(0, 0.0, 1, ())
    return best[1]


def _mm_reports(inst, omega):
    m, n, k, r, eta, rho = inst.m, inst.n, inst.k, inst.r, inst.eta, inst.rho
    lq = math.log2(inst.q)
    lhs = m * _comb(n - k - 1, r)
    full = _mm_product(eta, rho)
    over = lhs >= full - 1
    regime = {"overdetermined": over}
    out = []
    if over:
        rest = full // _comb(eta[-1], rho[-1]) if _comb(eta[-1], rho[-1]) else 0
        p = 0
        for i in range(eta[-1] - rho[-1] + 1):
            if m * _comb(n - i - k - 1, r) >= _comb(eta[-1] - i, rho[-1]) * rest - 1:
                p = i
        cost = _lg(m) + _lb(n - p - k - 1, r) + (omega - 1) * _lg(_comb(eta[-1] - p, rho[-1]) * rest)
        out.append(_report(inst, "MM-block", ALGEBRAIC, cost, {**regime, "p": p}))
        out.append(_report(inst, "MM-block-hybrid", ALGEBRAIC, None, regime, applicable=False))
    else:
        out.append(_report(inst, "MM-block", ALGEBRAIC, None, regime, applicable=False))
        a = _mm_hybrid_search(eta, rho, lhs + 1, lq, omega - 1)
        cost = (lq * sum(x * w for x, w in zip(a, rho)) + _lg(m) + _lb(n - k - 1, r)
                + (omega - 1) * _lg(_mm_product(eta, rho, a)))
        out.append(_report(inst, "MM-block-hybrid", ALGEBRAIC, cost, {**regime, "a": a}))
    return out


def _strided(lo: int, hi: int, step: int) -> list[int]:
    vals = list(range(lo, hi + 1, step))
    if vals[-1] != hi:
        vals.append(hi)
    return vals


def _bp_brd(inst, omega):
    """Blockwise BP: optimize a, p with c_i = a_i + p_i on a refined grid."""
    m, n, k, r, eta, rho = inst.m, inst.n, inst.k, inst.r, inst.eta, inst.rho
    lq = math.log2(inst.q)
    w1 = omega - 1
    l = len(eta)
    pmax = n - k - 1 - r
    if pmax < 0 or any(x < w for x, w in zip(eta, rho)):
        return None
    # lhs[P] = m C(n-P-k-1, r): nonincreasing in P
    lhs_exact = [m * _comb(n - p - k - 1, r) for p in range(pmax + 1)]
    lhs_log = np.array([_lg(v) for v in lhs_exact])
    neg_lhs = -lhs_log
    block_exact = [[_comb(eta[i] - c, rho[i]) for c in range(eta[i] - rho[i] + 1)] for i in range(l)]
    block_log = [np.array([_lg(v) for v in row]) for row in block_exact]
    order = sorted(range(l), key=lambda i: (rho[i], i))
    last = np.arange(eta[-1] - rho[-1] + 1)

    def scan(prefix):
        rhs = sum(block_log[i][c] for i, c in enumerate(prefix)) + block_log[-1]
        total = sum(prefix) + last
        cnt = np.searchsorted(neg_lhs, -rhs - 1e-9, side="right")
        pstar = cnt - 1
        feasible = pstar >= 0
        p = np.minimum(total, np.maximum(pstar, 0))
        need = total - p
        qa = np.zeros(len(last))
        for i in order:
            cap = last if i == l - 1 else prefix[i]
            take = np.minimum(need, cap)
            qa = qa + take * rho[i]
            need = need - take
        cost = lq * qa + lhs_log[p] + w1 * rhs
        cost = np.where(feasible, cost, np.inf)
        j = int(np.argmin(cost))
        return float(cost[j]), prefix + (int(last[j]),)

    best = (math.inf, None)
    ranges = [(0, eta[i] - rho[i]) for i in range(l - 1)]
    if l == 1:
        best = scan(())
    else:
        per = max(2, int(GRID_PREFIX ** (1.0 / (l - 1))))
        steps = [max(1, _ceil_div(hi - lo + 1, per)) for lo, hi in ranges]
        grids = [_strided(lo, hi, s) for (lo, hi), s in zip(ranges, steps)]
        for prefix in _product(grids):
            cand = scan(prefix)
            if cand[0] < best[0] - _TIE:
                best = cand
        if best[1] is not None and any(s > 1 for s in steps):
            centre = best[1][:-1]
            local = [range(max(lo, c - s), min(hi, c + s) + 1)
                     for (lo, hi), c, s in zip(ranges, centre, steps)]
            for prefix in _product([list(x) for x in local]):
                cand = scan(prefix)
                if cand[0] < best[0] - _TIE or (abs(cand[0] - best[0]) <= _TIE and cand[1] < best[1]):
                    best = cand
    if best[1] is None or not math.isfinite(best[0]):
        return None
    c = best[1]
    prod = 1
    for i in range(l):
        prod *= block_exact[i][c[i]]
    p_total = max(P for P in range(pmax + 1) if lhs_exact[P] >= prod) if lhs_exact[0] >= prod else None
    if p_total is None:
        return None
    p_total = min(p_total, sum(c))
    need = sum(c) - p_total
    a = [0] * l
    for i in order:
        take = min(need, c[i])
        a[i] = take
        need -= take
    p = tuple(ci - ai for ci, ai in zip(c, a))
    return tuple(a), p


def _product(lists):
    if not lists:
        yield ()
        return
    for x in lists[0]:
        for rest in _product(lists[1:]):
            yield (x,) + rest


def bp_brd_cost(inst: ProblemInstance, a, p, omega: float = OMEGA) -> float:
    m, n, k, r = inst.m, inst.n, inst.k, inst.r
    lq = math.log2(inst.q)
    prod = 1
    for x, w, ai, pi in zip(inst.eta, inst.rho, a, p):
        prod *= _comb(x - pi - ai, w)
    return (lq * sum(ai * w for ai, w in zip(a, inst.rho)) + _lg(m)
            + _lb(n - sum(p) - k - 1, r) + (omega - 1) * _lg(prod))


def estimate_brd(inst: ProblemInstance, omega: float = OMEGA) -> list[AttackReport]:
    _expect(inst, BRD)
    m, n, k, r, eta, rho = inst.m, inst.n, inst.k, inst.r, inst.eta, inst.rho
    lq = math.log2(inst.q)
    out = []

    cost = omega * _lg((n - k - 1) * m) + lq * (r * _ceil_div((k + 1) * m, n) - m)
    out.append(_report(inst, "AGHT-small-m", COMBINATORIAL, cost, applicable=m <= n))
    cost = omega * _lg(n - k - 1) + 2 * _lg(m) + lq * r * (k + 1)
    out.append(_report(inst, "AGHT-large-m", COMBINATORIAL, cost, applicable=m > n))

    t = _prr_columns(m, n, k, eta, rho)
    if t is None:
        out.append(_report(inst, "PRR-columns", COMBINATORIAL, None, applicable=False,
                           notes=("no column sizes satisfy the constraints",)))
    else:
        expo = sum(w * (m - ti) for w, ti in zip(rho, t)) - m
        out.append(_report(inst, "PRR-columns", COMBINATORIAL,
                           omega * _lg(m * (n - k - 1)) + lq * expo, {"t": t}))
    t = _prr_rows(n, k, eta, rho)
    if t is None:
        out.append(_report(inst, "PRR-rows", COMBINATORIAL, None, applicable=False,
                           notes=("no row sizes satisfy the constraints",)))
    else:
        expo = sum(w * (x - ti) for w, x, ti in zip(rho, eta, t))
        out.append(_report(inst, "PRR-rows", COMBINATORIAL,
                           omega * _lg(n - k - 1) + 2 * _lg(m) + lq * expo, {"t": t}))

    cost = omega * _lg(k * r + r) + lq * (m - r) * (r - 1)
    out.append(_report(inst, "OJ-basis", COMBINATORIAL, cost))
    out.extend(_oj_branches(inst, omega))

    lin = []
    for v, (x, w) in enumerate(zip(eta, rho), 1):
        if w:
            expo = w * _ceil_div((k + 1) * (w + 1) - (x + 1), w)
            lin.append((omega * _lg(w * k) + lq * expo, v))
    if lin:
        cost, v = min(lin)
        out.append(_report(inst, "AP-linearization", ALGEBRAIC, cost, {"v": v}))
    else:
        out.append(_report(inst, "AP-linearization", ALGEBRAIC, None, applicable=False,
                           notes=("all blocks have weight 0",)))
    if inst.dreg is None:
        out.append(_report(inst, "AP-groebner", ALGEBRAIC, None, applicable=False,
                           notes=("degree of regularity not supplied",)))
    else:
        d = inst.dreg
        cost, v = min((_lg(x) + omega * _lb(w + k + d - 1, d), v)
                      for v, (x, w) in enumerate(zip(eta, rho), 1))
        out.append(_report(inst, "AP-groebner", ALGEBRAIC, cost, {"v": v, "dreg": d}))

    out.extend(_mm_reports(inst, omega))

    found = _bp_brd(inst, omega)
    if found is None:
        out.append(_report(inst, "BP-MM", ALGEBRAIC, None, applicable=False,
                           notes=("no (a, p) satisfies the balance condition",)))
    else:
        a, p = found
        out.append(_report(inst, "BP-MM", ALGEBRAIC, bp_brd_cost(inst, a, p, omega),
                           {"a": a, "p": p}))
    return out


# ---------------------------------------------------------------------------
# NHRSD


def nh_u(n2: int, outer: int, r1: int, r2: int) -> int:
    """Number of supports meeting the middle block in at least r2 positions."""
    if n2 < r2:
        return 0
    r = r1 + r2
    return sum(_comb(n2, i) * _comb(outer, r - i) for i in range(r2, r + 1))


def _u_branch(n2, outer, r1, r2) -> int | None:
    if n2 > r2 and outer >= r1:
        return 1
    if n2 == r2 and outer >= r1:
        return 2
    if n2 > r2 and outer <= r1:
        return 3
    return None


def nhrd_bp_cost(inst: ProblemInstance, a: int, p, omega: float = OMEGA) -> float:
    m, n, k, r = inst.m, inst.n, inst.k, inst.r
    r1, r2 = inst.rho
    n1, n2, n3 = inst.eta
    lq = math.log2(inst.q)
    u = nh_u(n2 - p[1], n1 - p[0] + n3 - p[2] - a, r1, r2)
    return lq * a * r1 + _lg(m) + _lb(n - sum(p) - k - 1, r) + (omega - 1) * _lg(u)


def _nhrd_bp(inst, omega):
    m, n, k, r = inst.m, inst.n, inst.k, inst.r
    r1, r2 = inst.rho
    n1, n2, n3 = inst.eta
    lq = math.log2(inst.q)
    pmax = n - k - 1 - r
    if pmax < 0 or n2 < r2:
        return None
    lhs_exact = [m * _comb(n - P - k - 1, r) for P in range(pmax + 1)]
    best = (math.inf, None)
    for p2 in range(n2 - r2 + 1):
        for d in range(n1 + n3 + 1):
            if _u_branch(n2 - p2, n1 + n3 - d, r1, r2) is None:
                continue
            u = nh_u(n2 - p2, n1 + n3 - d, r1, r2)
            if lhs_exact[0] < u:
                continue
            pstar = _last_at_least(lhs_exact, u)
            c3 = min(d, n3)
            p1 = d - c3
            P = min(p2 + d, pstar)
            a = p2 + d - P
            if a > c3:
                continue
            cost = lq * a * r1 + _lg(lhs_exact[P]) + (omega - 1) * _lg(u)
            if cost < best[0] - _TIE:
                best = (cost, (a, (p1, p2, c3 - a)))
    return best[1]


def _last_at_least(values: list[int], bound: int) -> int:
    """Largest index whose (nonincreasing) value is >= bound."""
    lo, hi = 0, len(values) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if values[mid] >= bound:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _nh_algebraic_terms(m, nt, n1t, w1, w2, a):
    w = w1 + w2
    nfq = m * sum(_comb(n1t - 1, i) * _comb(nt, w - i) for i in range(w2, w + 1))
    vfq = m * _comb(n1t - 1, w2 - 1) * _comb(nt - 1, w1)
    ma = sum(_comb(n1t, i) * _comb(2 * nt - a, w - i) for i in range(w2))
    size = _comb(2 * nt + n1t - a, w) - ma - vfq
    return nfq, size


def estimate_nhrsd(inst: ProblemInstance, omega: float = OMEGA) -> list[AttackReport]:
    _expect(inst, NHRSD)
    m = inst.m
    w1, w2 = inst.rho
    lq = math.log2(inst.q)
    out = []

    best = None
    for rv in range(w1, m - w2):
        rho = m - 1 - rv if w2 else w2
        score = (w1 + w2) * rv + w2 * rho
        if best is None or score > best[0]:
            best = (score, rv, rho)
    if best is None:
        out.append(_report(inst, "NH-combinatorial", COMBINATORIAL, None, applicable=False,
                           notes=("no (r, rho) with r + rho <= m - 1",)))
    else:
        _, rv, rho = best
        expo = (w1 + w2) * (m - rv) - w2 * rho - m
        out.append(_report(inst, "NH-combinatorial", COMBINATORIAL, lq * expo,
                           {"r": rv, "rho": rho}, notes=("polynomial factor taken as 1",)))

    o1, mid, o3 = inst.eta
    if o1 != o3:
        out.append(_report(inst, "NH-algebraic", ALGEBRAIC, None, applicable=False,
                           notes=("outer blocks must have equal length",)))
    else:
        for a in range(2 * o1 + 1):
            nfq, size = _nh_algebraic_terms(m, o1, mid, w1, w2, a)
            if nfq >= size - 1:
                cost = lq * a * w1 + _lg(nfq) + (omega - 1) * _lg(size)
                out.append(_report(inst, "NH-algebraic", ALGEBRAIC, cost, {"a": a}))
                break
        else:
            out.append(_report(inst, "NH-algebraic", ALGEBRAIC, None, applicable=False,
                               notes=("no a balances the system",)))
    out.extend(estimate_nhrd_bp(inst, omega))
    return out


def estimate_nhrd_bp(inst: ProblemInstance, omega: float = OMEGA) -> list[AttackReport]:
    _expect(inst, NHRSD)
    found = _nhrd_bp(inst, omega)
    if found is None:
        return [_report(inst, "NH-BP-MM", ALGEBRAIC, None, applicable=False,
                        notes=("no (a, p) satisfies the balance condition",))]
    a, p = found
    n1, n2, n3 = inst.eta
    branch = _u_branch(n2 - p[1], n1 - p[0] + n3 - p[2] - a, *inst.rho)
    return [_report(inst, "NH-BP-MM", ALGEBRAIC, nhrd_bp_cost(inst, a, p, omega),
                    {"a": a, "p": p, "u_branch": branch})]


# ---------------------------------------------------------------------------
# RSL


def rsl_counts(n: int, k: int, r_eff: int, x: int, b: int) -> tuple[int, int]:
    """Return (sum_{i<=b} C(x, i), N_{<=b}) for the support-learning systems."""
    s = sum(_comb(x, i) for i in range(1, b + 1))
    total = 0
    for i in range(1, b + 1):
        for d in range(1, i + 1):
            for j in range(1, n - k + 1):
                total += _comb(j - 1, d - 1) * _comb(n - k - j, r_eff - d + 1) * _comb(x - j, i - d)
    return s, total


def rsl_algebraic_cost(inst, a, n_prime, r_eff, b, alpha_r, alpha_l, omega=OMEGA) -> float:
    m, n, k, r = inst.m, inst.n, inst.k, inst.r
    s, nsum = rsl_counts(n, k, r_eff, n_prime - alpha_l, b)
    big_m = _comb(n - a - alpha_r, r_eff) * s
    first = _lg(m) + _lg(nsum) + (omega - 1) * _lg(big_m)
    second = _lg(n_prime - alpha_l) + _lb(k - a + 1 + r, r) + 2 * _lg(big_m)
    return r * alpha_r + alpha_l + min(first, second)


def _rsl_search(inst, a, n_prime, r_eff, omega):
    m, n, k, r = inst.m, inst.n, inst.k, inst.r
    span_r = n - a - r
    if span_r <= 0 or n_prime < 2:
        return None
    if (r + 1) * n_prime * span_r > RSL_GRID_LIMIT:
        raise OverflowError("support-learning search space exceeds RSL_GRID_LIMIT")
    best = (math.inf, None)
    for alpha_l in range(n_prime - 1):
        x = n_prime - alpha_l
        s = 0
        nsum = 0
        for b in range(1, r + 2):
            if alpha_l >= n_prime - b:
                break
            s += _comb(x, b)
            for d in range(1, b + 1):
                for j in range(1, n - k + 1):
                    nsum += _comb(j - 1, d - 1) * _comb(n - k - j, r_eff - d + 1) * _comb(x - j, b - d)
            for alpha_r in range(span_r):
                big_m = _comb(n - a - alpha_r, r_eff) * s
                if m * nsum < big_m - 1:
                    continue
                first = _lg(m) + _lg(nsum) + (omega - 1) * _lg(big_m)
                second = _lg(x) + _lb(k - a + 1 + r, r) + 2 * _lg(big_m)
                cost = r * alpha_r + alpha_l + min(first, second)
                key = (b, alpha_r, alpha_l)
                if cost < best[0] - _TIE or (abs(cost - best[0]) <= _TIE and key < best[1]):
                    best = (cost, key)
    return best[1]


def estimate_rsl(inst: ProblemInstance, omega: float = OMEGA) -> list[AttackReport]:
    _expect(inst, RSL)
    m, n, k, r, big_n = inst.m, inst.n, inst.k, inst.r, inst.N
    lq = math.log2(inst.q)
    out = []

    if r < 1 or big_n >= k * r or n - big_n // r <= 0:
        out.append(_report(inst, "RSL-combinatorial", COMBINATORIAL, None, applicable=False,
                           notes=("needs r >= 1 and N < k r",)))
    else:
        a = big_n // r
        expo = r * (m - _floor_div(m * (n - k) - big_n, n - a))
        out.append(_report(inst, "RSL-combinatorial", COMBINATORIAL, lq * expo, {"a": a}))

    if r < 1:
        out.append(_report(inst, "RSL-algebraic", ALGEBRAIC, None, applicable=False))
    else:
        a = (big_n - 1) // r
        n_prime = a * r + 1
        out.append(_rsl_alg_report(inst, "RSL-algebraic", 0, a, n_prime, r, omega))

    cands = []
    for delta in range(1, r):
        base = delta * (n - r + delta)
        if big_n < base:
            continue
        a = (big_n - base) // (r - delta)
        n_prime = base + a * (r - delta)
        rep = _rsl_alg_report(inst, "RSL-algebraic-delta", delta, a, n_prime, r - delta, omega)
        cands.append(rep)
    applicable = [c for c in cands if c.applicable]
    if applicable:
        out.append(min(applicable, key=lambda c: (c.raw_bits, c.params["delta"])))
    else:
        out.append(_report(inst, "RSL-algebraic-delta", ALGEBRAIC, None, applicable=False,
                           notes=("no delta > 0 admits a search point",)))
    return out


def _rsl_alg_report(inst, name, delta, a, n_prime, r_eff, omega):
    base = {"delta": delta, "a": a, "n_prime": n_prime}
    try:
        found = _rsl_search(inst, a, n_prime, r_eff, omega)
    except OverflowError as exc:
        return _report(inst, name, ALGEBRAIC, None, base, applicable=False, notes=(str(exc),))
    if found is None:
        return _report(inst, name, ALGEBRAIC, None, base, applicable=False,
                       notes=("empty (b, alpha_R, alpha_lambda) range",))
    b, alpha_r, alpha_l = found
    cost = rsl_algebraic_cost(inst, a, n_prime, r_eff, b, alpha_r, alpha_l, omega)
    return _report(inst, name, ALGEBRAIC, cost,
                   {**base, "b": b, "alpha_R": alpha_r, "alpha_lambda": alpha_l})


def _nhrsl_search(m, n, z, w1, w2, big_n):
    best = None
    for n1 in range(big_n + 1):
        n2 = big_n - n1
        a = n1 // w1 if w1 else (0 if n1 == 0 else None)
        b = n2 // w2 if w2 else (0 if n2 == 0 else None)
        if a is None or b is None or a > n - 2 * z or b > 2 * z:
            continue
        coef = n - 2 * z - b
        for rv in range(w1, m):
            lo, hi = w2 - w1, m - 1 - rv
            slack = m * (n - z) - (2 * z - a) * rv - coef * rv - big_n
            if coef > 0:
                hi = min(hi, slack // coef)
            elif coef == 0:
                if slack < 0:
                    continue
            else:
                lo = max(lo, _ceil_div(-slack, -coef))
            if lo > hi:
                continue
            rho = hi if w2 - w1 else lo
            score = w2 * rv + (w2 - w1) * rho
            if best is None or score > best[0]:
                best = (score, n1, n2, rv, rho, a, b)
    return best


def estimate_nhrsl(inst: ProblemInstance, omega: float = OMEGA) -> list[AttackReport]:
    _expect(inst, NHRSL)
    m, n = inst.m, inst.n
    w1, w2 = inst.rho
    z, _, z3 = inst.eta
    lq = math.log2(inst.q)
    notes = []
    applicable = True
    if z != z3:
        return [_report(inst, "NHRSL-combinatorial", COMBINATORIAL, None, applicable=False,
                        notes=("outer blocks must have equal length",))]
    if not n < 3 * z:
        applicable = False
        notes.append("requires n < 3z")
    best = _nhrsl_search(m, n, z, w1, w2, inst.N)
    if best is None:
        return [_report(inst, "NHRSL-combinatorial", COMBINATORIAL, None, applicable=False,
                        notes=tuple(notes) + ("no (N1, N2, r, rho) satisfies the constraints",))]
    _, n1, n2, rv, rho, a, b = best
    expo = w2 * (m - rv) - (w2 - w1) * rho
    params = {"N1": n1, "N2": n2, "r": rv, "rho": rho, "a": a, "b": b}
    return [_report(inst, "NHRSL-combinatorial", COMBINATORIAL, lq * expo, params,
                    applicable=applicable, notes=tuple(notes) + ("polynomial factor taken as 1",))]


# ---------------------------------------------------------------------------
# dispatch and scheme-level evaluation


_ESTIMATORS = {
    RSD: estimate_rsd,
    BRD: estimate_brd,
    NHRSD: estimate_nhrsd,
    RSL: estimate_rsl,
    NHRSL: estimate_nhrsl,
}


def estimate(inst: ProblemInstance, omega: float = OMEGA) -> list[AttackReport]:
    return _ESTIMATORS[inst.problem](inst, omega)


def security_instances(p: SchemeParams) -> list[ProblemInstance]:
    """Problem instances behind the IND-CPA argument of each variant."""
    m = p.m
    if p.scheme == BWE:
        n = p.n
        return [
            ProblemInstance.brd(m, n, (n, n), (p.wx, p.wy), label="2-IBRSD"),
            ProblemInstance.brd(m, n, (n, n, n), (p.wx, p.we, p.wy), label="3-IBRSD"),
        ]
    if p.scheme == NH:
        return [
            ProblemInstance.rsd(m, 2 * p.n2, p.n2, p.wx + p.wy, label="2-IRSD"),
            ProblemInstance.nhrsl(m, p.n2, (p.n2, p.n2, p.n2), (p.w1, p.w2), p.n1, label="NHRSL"),
        ]
    if p.scheme == UR:
        return [
            ProblemInstance.rsl(m, 2 * p.z, p.z, p.wx + p.wy, p.n1, label="RSL"),
            ProblemInstance.nhrsl(m, p.z, (p.z, p.n1, p.z), (p.w1, p.w2), p.n2, label="NHRSL"),
        ]
    raise ValueError(f"unknown scheme {p.scheme!r}")


class Security(NamedTuple):
    bits: float
    reports: list[AttackReport]


def minimum(reports: Iterable[AttackReport]) -> AttackReport | None:
    live = [r for r in reports if r.applicable and math.isfinite(r.bits)]
    return min(live, key=lambda r: r.bits) if live else None


def scheme_security(p: SchemeParams, omega: float = OMEGA) -> Security:
    reports: list[AttackReport] = []
    for inst in security_instances(p):
        reports.extend(estimate(inst, omega))
    best = minimum(reports)
    return Security(best.bits if best else math.inf, reports)


def discrepancy(p: SchemeParams, bits: float, tolerance: float = 16.0) -> str | None:
    """Message when ``bits`` is further than ``tolerance`` from the claimed level."""
    if not p.level or abs(bits - p.level) <= tolerance:
        return None
    return (f"{p.name}: estimated minimum {bits:.1f} bits differs from the claimed "
            f"{p.level} by more than {tolerance:g} bits")
