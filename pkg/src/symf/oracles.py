"""Brute-force evaluation formulas used to cross-check the operator engine.

Everything here works with exact rationals at concrete points; nothing
touches the power-sum representation except the final comparison.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Mapping, Optional, Sequence

from gmpy2 import mpq

from .coef import CoefPoly, rat
from .linalg import det, pfaffian

MAX_SYMMETRIZE = 7


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class EvalPoint:
    xs: tuple
    params: Mapping = field(default_factory=dict)

    def __post_init__(self):
        xs = tuple(rat(x) for x in self.xs)
        if len(set(xs)) != len(xs):
            raise OracleError("evaluation point has coincident coordinates")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "params", {k: rat(v) for k, v in dict(self.params).items()})

    @property
    def n(self) -> int:
        return len(self.xs)

    def param(self, name: str) -> mpq:
        if name not in self.params:
            raise OracleError(f"parameter {name!r} is not assigned")
        return self.params[name]

    def extended(self, x=0) -> "EvalPoint":
        return EvalPoint(self.xs + (rat(x),), self.params)


def random_rational(rng: random.Random, bound: int = 50, nonzero: bool = True) -> mpq:
    while True:
        v = mpq(rng.randint(-bound, bound), rng.randint(1, bound))
        if v or not nonzero:
            return v


def random_point(n: int, seed, params: Sequence[str] = (), bound: int = 50,
                 fixed: Optional[Mapping] = None) -> EvalPoint:
    """Distinct nonzero rationals with numerators and denominators bounded by ``bound``."""
    rng = random.Random(seed if isinstance(seed, (int, str, bytes)) else repr(seed))
    xs: list = []
    while len(xs) < n:
        v = random_rational(rng, bound)
        if v not in xs:
            xs.append(v)
    vals = {p: random_rational(rng, bound) for p in params}
    if fixed:
        vals.update({k: rat(v) for k, v in fixed.items()})
    return EvalPoint(tuple(xs), vals)


# -- Schur via tableaux -----------------------------------------------------------

def schur_tableaux_eval(lam: Sequence[int], pt: EvalPoint) -> mpq:
    """Sum of x^T over semistandard tableaux of shape lam with entries <= n."""
    lam = tuple(p for p in lam if p)
    n = pt.n
    if len(lam) > n:
        return mpq(0)
    cells = [(r, c) for r, row in enumerate(lam) for c in range(row)]
    fill: dict = {}
    xs = pt.xs

    def rec(idx: int, weight: mpq) -> mpq:
        if idx == len(cells):
            return weight
        r, c = cells[idx]
        lo = 1
        if c > 0:
            lo = max(lo, fill[(r, c - 1)])
        if r > 0:
            lo = max(lo, fill[(r - 1, c)] + 1)
        # leave room for the strictly increasing cells below in this column
        below = sum(1 for rr in range(r + 1, len(lam)) if lam[rr] > c)
        total = mpq(0)
        for v in range(lo, n - below + 1):
            fill[(r, c)] = v
            total += rec(idx + 1, weight * xs[v - 1])
        del fill[(r, c)]
        return total

    return rec(0, mpq(1))


# -- symmetrisation formulas --------------------------------------------------------

def _pad(lam: Sequence[int], n: int) -> tuple:
    lam = tuple(lam)
    if any(p < 0 for p in lam):
        raise OracleError("symmetrisation needs non-negative parts")
    nz = [p for p in lam if p]
    if len(nz) > n:
        raise OracleError(f"need at least {len(nz)} variables, got {n}")
    if len(lam) > n:
        if any(lam[n:]):
            raise OracleError("nonzero parts beyond the number of variables")
        lam = lam[:n]
    return lam + (0,) * (n - len(lam))


def _length(lam: tuple) -> int:
    return sum(1 for p in lam if p)


def _prefactor(t: mpq, n: int, l: int) -> mpq:
    den = mpq(1)
    for i in range(1, n - l + 1):
        den *= 1 - t ** i
    if not den:
        raise OracleError(f"prefactor is singular: t = {t} is a root of 1 - t^i for some i <= {n - l}")
    return (1 - t) ** n / den


def _symmetrize(values: list, t: mpq, xs: tuple) -> mpq:
    """sum_sigma prod_i values[i][sigma(i)] prod_{i<j} (x_si - t x_sj)/(x_si - x_sj)."""
    n = len(xs)
    if n > MAX_SYMMETRIZE:
        raise OracleError(f"symmetrisation over S_{n} exceeds the cap S_{MAX_SYMMETRIZE}")
    pair = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a != b:
                pair[a][b] = (xs[a] - t * xs[b]) / (xs[a] - xs[b])
    total = mpq(0)
    for sigma in permutations(range(n)):
        term = mpq(1)
        for i in range(n):
            term *= values[i][sigma[i]]
            if not term:
                break
        if not term:
            continue
        for i in range(n):
            si = sigma[i]
            for j in range(i + 1, n):
                term *= pair[si][sigma[j]]
        total += term
    return total


def hl_symmetrized_eval(lam: Sequence[int], pt: EvalPoint) -> mpq:
    """Hall-Littlewood F_lam at pt via the S_n symmetrisation formula."""
    n = pt.n
    lam = _pad(lam, n)
    t = pt.param("t")
    pre = _prefactor(t, n, _length(lam))
    values = [[x ** lam[i] for x in pt.xs] for i in range(n)]
    return pre * _symmetrize(values, t, pt.xs)


def _normalize_polys(polys) -> list:
    out = []
    seq = polys.f if hasattr(polys, "f") else polys
    for fk in seq:
        if isinstance(fk, Mapping):
            out.append({int(s): CoefPoly.coerce(c) for s, c in fk.items()})
        else:
            out.append({s: CoefPoly.coerce(c) for s, c in enumerate(fk)})
    return out


def _poly_value(fk: dict, x: mpq, params: Mapping) -> mpq:
    total = mpq(0)
    for s, c in fk.items():
        cv = c.evaluate(params)
        if not cv:
            continue
        if s < 0:
            raise OracleError("Laurent terms are not allowed in f_k")
        total += cv * x ** s
    return total


def _check_hypotheses(fs: list, lam: tuple) -> None:
    if not fs or fs[0] != {0: CoefPoly.const(1)}:
        raise OracleError("f_0 must be the constant 1")
    for k in set(lam):
        if k == 0:
            continue
        if k >= len(fs):
            raise OracleError(f"f_{k} not supplied")
        if fs[k].get(0):
            raise OracleError(f"f_{k} has a nonzero constant term")


def transformed_symmetrized_eval(polys, lam: Sequence[int], pt: EvalPoint,
                                 strict: bool = True, method: str = "auto") -> mpq:
    """Symmetrisation with x^k replaced by f_k(x).

    ``method`` is "auto" (bialternant at t = 0, coset sum at t = -1,
    full S_n sum otherwise), or one of "symmetrize", "bialternant", "coset".
    """
    fs = _normalize_polys(polys)
    n = pt.n
    lam = _pad(lam, n)
    if strict:
        _check_hypotheses(fs, lam)
    for k in lam:
        if k >= len(fs):
            raise OracleError(f"f_{k} not supplied")
    t = pt.param("t")
    if method == "auto":
        method = "bialternant" if t == 0 else "coset" if t == -1 else "symmetrize"
    if method == "bialternant":
        if t != 0:
            raise OracleError("bialternant formula is the t = 0 case")
        return bialternant_eval(fs, lam, pt)
    if method == "coset":
        if t != -1:
            raise OracleError("coset formula is the t = -1 case")
        return _coset_eval(fs, lam, pt)
    if method != "symmetrize":
        raise ValueError(f"unknown method {method!r}")
    pre = _prefactor(t, n, _length(lam))
    values = [[_poly_value(fs[lam[i]], x, pt.params) for x in pt.xs] for i in range(n)]
    return pre * _symmetrize(values, t, pt.xs)


def bialternant_eval(polys, lam: Sequence[int], pt: EvalPoint) -> mpq:
    """det[f_{lam_j}(x_i) x_i^{n-j}] / det[x_i^{n-j}]."""
    fs = _normalize_polys(polys)
    n = pt.n
    lam = _pad(lam, n)
    if n == 0:
        return mpq(1)
    xs = pt.xs
    num = det([[_poly_value(fs[lam[j]], xs[i], pt.params) * xs[i] ** (n - 1 - j)
                for j in range(n)] for i in range(n)], mpq(0))
    return num / _vandermonde(xs)


def _vandermonde(xs: tuple) -> mpq:
    v = mpq(1)
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            v *= xs[i] - xs[j]
    return v


def _coset_eval(fs: list, lam: tuple, pt: EvalPoint) -> mpq:
    """2^l sum over ordered l-subsets of prod f_{lam_i}(x_si) prod_{i<=l, i<j} (x_si+x_sj)/(x_si-x_sj)."""
    xs = pt.xs
    n = len(xs)
    l = _length(lam)
    if any(lam[l:]) or any(not p for p in lam[:l]):
        raise OracleError("coset formula expects the nonzero parts first")
    total = mpq(0)
    for head in permutations(range(n), l):
        term = mpq(1)
        for i, a in enumerate(head):
            term *= _poly_value(fs[lam[i]], xs[a], pt.params)
        if not term:
            continue
        used = set()
        for a in head:
            used.add(a)
            for b in range(n):
                if b not in used:
                    term *= (xs[a] + xs[b]) / (xs[a] - xs[b])
        total += term
    return 2 ** l * total


def monomial_polys(kmax: int) -> list:
    """f_k(x) = x^k."""
    return [{k: CoefPoly.const(1)} for k in range(kmax + 1)]


# -- Schur Q via Pfaffian ------------------------------------------------------------

def _q_values(xs: tuple, kmax: int) -> list:
    """q_0..q_kmax at xs from prod (1 + x u)/(1 - x u)."""
    series = [mpq(1)] + [mpq(0)] * kmax
    for x in xs:
        # multiply by (1 + x u) / (1 - x u) = 1 + 2 sum_{k>=1} x^k u^k
        factor = [mpq(1)] + [2 * x ** k for k in range(1, kmax + 1)]
        series = [sum(series[i] * factor[k - i] for i in range(k + 1)) for k in range(kmax + 1)]
    return series


def schurq_pfaffian_eval(lam: Sequence[int], pt: EvalPoint) -> mpq:
    lam = tuple(lam)
    if any(lam[i] <= lam[i + 1] for i in range(len(lam) - 1)) or any(p <= 0 for p in lam):
        raise OracleError(f"{lam} is not a strict partition")
    parts = list(lam) + ([0] if len(lam) % 2 else [])
    if not parts:
        return mpq(1)
    top = sum(parts)
    q = _q_values(pt.xs, top)

    def qv(k):
        return q[k] if 0 <= k <= top else mpq(0)

    def qpair(a, b):
        v = qv(a) * qv(b)
        for i in range(1, b + 1):
            v += 2 * (-1) ** i * qv(a + i) * qv(b - i)
        return v

    m = len(parts)
    M = [[mpq(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            M[i][j] = qpair(parts[i], parts[j])
            M[j][i] = -M[i][j]
    return pfaffian(M, mpq(0), mpq(1))


# -- Grothendieck alternant ------------------------------------------------------------

def grothendieck_alternant_eval(lam: Sequence[int], pt: EvalPoint) -> mpq:
    """det[x_i^{lam_j+n-j} (1+beta x_i)^{j-1}] / prod_{i<j} (x_i - x_j)."""
    lam = tuple(p for p in lam if p)
    n = pt.n
    beta = pt.param("beta")
    if len(lam) > n:
        return mpq(0)
    if n == 0:
        return mpq(1)
    lam = lam + (0,) * (n - len(lam))
    xs = pt.xs
    num = det([[xs[i] ** (lam[j] + n - 1 - j) * (1 + beta * xs[i]) ** j for j in range(n)]
               for i in range(n)], mpq(0))
    return num / _vandermonde(xs)


def grothendieck_beta_coefficients(lam: Sequence[int], xs: Sequence) -> list:
    """Coefficients in beta of G_lam(xs; beta), by exact interpolation.

    The beta-degree is at most n(n-1)/2, so that many + 1 nodes suffice.
    """
    n = len(xs)
    deg = n * (n - 1) // 2
    nodes = [mpq(k) for k in range(deg + 1)]
    vals = [grothendieck_alternant_eval(lam, EvalPoint(tuple(xs), {"beta": b})) for b in nodes]
    return _interpolate(nodes, vals)


def _interpolate(nodes: list, vals: list) -> list:
    """Coefficients (low to high) of the interpolating polynomial."""
    m = len(nodes)
    coeffs = [mpq(0)] * m
    for i in range(m):
        basis = [mpq(1)]
        denom = mpq(1)
        for j in range(m):
            if j == i:
                continue
            basis = [mpq(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= nodes[j] * basis[k + 1]
            denom *= nodes[i] - nodes[j]
        scale = vals[i] / denom
        for k in range(m):
            coeffs[k] += scale * basis[k]
    return coeffs
