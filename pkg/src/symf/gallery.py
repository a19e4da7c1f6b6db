"""Example matrices, their polynomial sequences, and Grothendieck families."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Mapping, Optional, Sequence

from gmpy2 import mpq

from .coef import BETA, CoefPoly, check_param_name, rat
from .linalg import det
from .symfun import SymFun, adjoint, apply_diff, gen_e, gen_h
from .transform import RowFiniteMatrix, explicit_matrix
from .vertex import gamma_plus

BETA_PARAM = "beta"


def gen_binom(a: int, m: int) -> int:
    """C(a, m) for any integer a and m >= 0."""
    if m < 0:
        return 0
    num = 1
    for r in range(m):
        num *= a - r
    den = 1
    for r in range(2, m + 1):
        den *= r
    return num // den


def coef_arg(value) -> CoefPoly:
    """Rational, CoefPoly, or a bare parameter name."""
    if isinstance(value, CoefPoly):
        return value
    if isinstance(value, str) and value and value[0].isalpha():
        return CoefPoly.var(check_param_name(value))
    return CoefPoly.const(value)


# -- Toeplitz ----------------------------------------------------------------------

def toeplitz_matrix(a: Mapping[int, object]) -> RowFiniteMatrix:
    """A_{ij} = a_{j-i} for a finitely supported a."""
    coeffs = {int(k): coef_arg(v) for k, v in a.items()}
    coeffs = {k: v for k, v in coeffs.items() if v}
    if not coeffs:
        raise ValueError("Toeplitz symbol is zero")
    s0, s1 = min(coeffs), max(coeffs)
    zero = CoefPoly()

    def inverse():
        lead = coeffs[s0]
        if not lead.is_constant():
            raise ValueError("inverse needs a rational leading coefficient")
        inv_lead = 1 / lead.constant_value()
        memo = {}
        lock = threading.Lock()

        def b(n):
            # sum_k a_k b_{n-k} = delta_{n,0}, b supported on n >= -s0
            if n < -s0:
                return zero
            with lock:
                if n in memo:
                    return memo[n]
            acc = CoefPoly.const(1) if n == 0 else CoefPoly()
            for k, ak in coeffs.items():
                if k > s0:
                    acc = acc - ak * b(n + s0 - k)
            v = acc * inv_lead
            with lock:
                memo[n] = v
            return v

        return RowFiniteMatrix(lambda i, j: b(j - i),
                               lambda i: (i - s0, None),
                               lambda j: (None, j + s0),
                               name="Toeplitz^-1")

    return RowFiniteMatrix(
        lambda i, j: coeffs.get(j - i, zero),
        lambda i: (i + s0, i + s1),
        lambda j: (j - s1, j - s0),
        inverse=inverse,
        name="Toeplitz",
    )


# -- cumulative shift ---------------------------------------------------------------

def _cumulative_entry(i, j):
    if i < 0:
        return CoefPoly.const(1) if i <= j < 0 else CoefPoly()
    if i == 0:
        return CoefPoly.const(1 if j == 0 else 0)
    if j == i:
        return CoefPoly.const(1)
    if j == i + 1:
        return CoefPoly.const(-1)
    return CoefPoly()


def _cumulative_rows(i):
    if i < 0:
        return (i, -1)
    if i == 0:
        return (0, 0)
    return (i, i + 1)


def _cumulative_cols(j):
    if j < 0:
        return (None, j)
    if j == 0:
        return (0, 0)
    return (max(1, j - 1), j)


def cumulative_matrix() -> RowFiniteMatrix:
    """Block matrix with f_k(x) = x + ... + x^k; its inverse is A^vee."""
    def make():
        return RowFiniteMatrix(_cumulative_entry, _cumulative_rows, _cumulative_cols,
                               inverse=lambda: make().vee(), name="cumulative", block=True)
    return make()


def cumulative_fermion_pair() -> tuple:
    """(A, B) with B_{k,i} = A_{k-1,i-1}, preserving the charged fermion relations."""
    A = cumulative_matrix()

    def row_range(k):
        lo, hi = _cumulative_rows(k - 1)
        return (lo + 1, None if hi is None else hi + 1)

    def col_range(i):
        lo, hi = _cumulative_cols(i - 1)
        return (None if lo is None else lo + 1, None if hi is None else hi + 1)

    B = RowFiniteMatrix(lambda k, i: _cumulative_entry(k - 1, i - 1), row_range, col_range,
                        name="cumulative-shifted")
    return A, B


# -- multiparameter and Pascal ---------------------------------------------------------

class _ParamSymmetric:
    """e_k and h_k of prefixes a_1..a_n of a parameter list, memoised."""

    def __init__(self, a: Sequence):
        self.a = tuple(coef_arg(v) for v in a)
        self._e: dict = {}
        self._h: dict = {}
        self._lock = threading.Lock()

    def _need(self, n):
        if n > len(self.a):
            raise ValueError(f"multiparameter matrix needs a_1..a_{n}, only {len(self.a)} supplied")

    def e(self, k: int, n: int) -> CoefPoly:
        if k < 0 or k > n:
            return CoefPoly()
        if k == 0:
            return CoefPoly.const(1)
        self._need(n)
        key = (k, n)
        with self._lock:
            if key in self._e:
                return self._e[key]
        v = self.e(k, n - 1) + self.a[n - 1] * self.e(k - 1, n - 1)
        with self._lock:
            self._e[key] = v
        return v

    def h(self, k: int, n: int) -> CoefPoly:
        if k < 0:
            return CoefPoly()
        if k == 0:
            return CoefPoly.const(1)
        if n == 0:
            return CoefPoly()
        self._need(n)
        key = (k, n)
        with self._lock:
            if key in self._h:
                return self._h[key]
        v = self.h(k, n - 1) + self.a[n - 1] * self.h(k - 1, n)
        with self._lock:
            self._h[key] = v
        return v


def _block_rows(i):
    if i < 0:
        return (i, -1)
    return (i, i) if i == 0 else (i, None)


def _block_cols(j):
    if j < 0:
        return (None, j)
    return (0, 0) if j == 0 else (1, j)


def multiparameter_matrix(a: Sequence) -> RowFiniteMatrix:
    """A_{-i,-j} = (-1)^{i-j} e_{i-j}(a_1..a_{i-1}), A_{ij} = h_{j-i}(a_1..a_i)."""
    sym = _ParamSymmetric(a)

    def entry(i, j):
        if i == 0 or j == 0:
            return CoefPoly.const(1 if i == j else 0)
        if i < 0 and j < 0:
            I, J = -i, -j
            v = sym.e(I - J, I - 1)
            return -v if (I - J) % 2 else v
        if i > 0 and j > 0:
            return sym.h(j - i, i)
        return CoefPoly()

    def make():
        return RowFiniteMatrix(entry, _block_rows, _block_cols,
                               inverse=lambda: make().vee(), name="multiparameter", block=True)
    return make()


def _pascal_entry(i, j):
    if i == 0 or j == 0:
        return CoefPoly.const(1 if i == j else 0)
    if i < 0 and j < 0:
        I, J = -i, -j
        v = comb(I - 1, J - 1) if J <= I else 0
        return CoefPoly.const(-v if (I - J) % 2 else v)
    if i > 0 and j > 0:
        return CoefPoly.const(comb(j - 1, i - 1) if j >= i else 0)
    return CoefPoly()


def pascal_matrix() -> RowFiniteMatrix:
    def make():
        return RowFiniteMatrix(_pascal_entry, _block_rows, _block_cols,
                               inverse=lambda: make().vee(), name="pascal", block=True)
    return make()


# -- rows given by Laurent polynomials ---------------------------------------------------

def laurent_rows_matrix(rows: Mapping[int, Mapping[int, object]]) -> RowFiniteMatrix:
    """A_{-i,j} = a_{i,j} for the listed i >= 1, delta rows elsewhere."""
    for i in rows:
        if i < 1:
            raise ValueError("row labels must be positive")
    table = {-i: {j: coef_arg(v) for j, v in r.items()} for i, r in rows.items()}
    return explicit_matrix(table, default="identity", name="laurent-rows")


def grothendieck_dual_matrix(lam: Sequence[int]) -> tuple:
    """(A, mu) with tilde s_mu = g_lam; rows -i carry C(1-i, lam_i + j) beta^{lam_i + j}."""
    lam = tuple(lam)
    l = len(lam)

    def entry(i, j):
        if -l <= i <= -1:
            r = -i
            m = lam[r - 1] + j
            if m < 0:
                return CoefPoly()
            c = gen_binom(1 - r, m)
            return CoefPoly.var(BETA_PARAM, m) * c if m else CoefPoly.const(c)
        return CoefPoly.const(1 if i == j else 0)

    def row_range(i):
        if -l <= i <= -1:
            r = -i
            lo = -lam[r - 1]
            return (lo, lo if r == 1 else None)
        return (i, i)

    def col_range(j):
        members_lo, members_hi = [], []
        if not -l <= j <= -1:
            members_lo.append(j)
            members_hi.append(j)
        for r in range(1, l + 1):
            lo = -lam[r - 1]
            if j == lo or (r > 1 and j > lo):
                members_lo.append(-r)
                members_hi.append(-r)
        if not members_lo:
            return None
        return (min(members_lo), max(members_hi))

    A = RowFiniteMatrix(entry, row_range, col_range, name="grothendieck-dual")
    return A, tuple(range(1, l + 1))


# -- polynomial sequences -----------------------------------------------------------

@dataclass(frozen=True)
class PolySeq:
    """f_k(x) = sum_s A_{-k,-s} x^s for k = 0..kmax, stored as {s: coef}."""

    f: tuple

    def __len__(self):
        return len(self.f)

    def coeffs(self, k: int) -> dict:
        return self.f[k]

    def is_laurent_free(self) -> bool:
        return all(s >= 0 for fk in self.f for s in fk)

    def check_shape(self) -> bool:
        """f_0 = 1 and f_k(0) = 0 for k >= 1."""
        if not self.f or self.f[0] != {0: CoefPoly.const(1)}:
            return False
        return self.is_laurent_free() and all(0 not in fk for fk in self.f[1:])

    def evaluate(self, k: int, x, assign: Optional[Mapping] = None) -> mpq:
        x = rat(x)
        total = mpq(0)
        for s, c in self.f[k].items():
            cv = c.evaluate(assign or {})
            total += cv * x ** s if s >= 0 else cv / x ** (-s)
        return total


def poly_seq(A: RowFiniteMatrix, kmax: int) -> PolySeq:
    out = []
    for k in range(kmax + 1):
        hi = A.row_end(-k)
        rr = A.row_range(-k)
        if rr is None:
            out.append({})
            continue
        if hi is None:
            raise ValueError(f"row {-k} of {A.name} is infinite; f_{k} is not a Laurent polynomial")
        out.append({-j: v for j, v in A.row(-k, hi)})
    return PolySeq(tuple(out))


def g_coeffs(A: RowFiniteMatrix, k: int, smin: int, smax: int) -> dict:
    """g_k(x) = sum_s (A^{-1})_{-s,-k} x^s restricted to smin <= s <= smax."""
    inv = A.inverse
    if inv is None:
        raise ValueError(f"{A.name} has no closed-form inverse")
    out = {}
    for s in range(smin, smax + 1):
        v = inv.entry(-s, -k)
        if v:
            out[s] = v
    return out


# -- Grothendieck families --------------------------------------------------------------

def _beta_pow(m: int) -> CoefPoly:
    return CoefPoly.var(BETA_PARAM, m) if m else CoefPoly.const(1)


@lru_cache(maxsize=None)
def e_beta(order: int) -> SymFun:
    """E(beta) = sum_i e_i beta^i, truncated at beta^order."""
    acc = SymFun.zero()
    for i in range(order + 1):
        acc = acc + SymFun.const(_beta_pow(i)) * gen_e(i)
    return acc


def b_plus(k: int, f: SymFun, order: int) -> SymFun:
    """Coefficient of B+(u) = Gamma+(u)|_{t=0} E(beta), truncated at beta^order."""
    g = (e_beta(order) * f).truncate(BETA_PARAM, order)
    return gamma_plus(k, g, 0).truncate(BETA_PARAM, order)


def _stable_at(lam: tuple, order: int) -> SymFun:
    f = SymFun.one()
    for part in reversed(lam):
        f = b_plus(-part, f, order)
        if not f:
            break
    return f


class TruncationError(ArithmeticError):
    pass


def grothendieck_stable(lam: Sequence[int], order: int) -> SymFun:
    """Stable Grothendieck G_lam modulo beta^(order+1), via iterated B+.

    The result is certified by recomputing with one more order and
    comparing the truncations.
    """
    lam = tuple(lam)
    if order < 0:
        raise ValueError("order must be non-negative")
    f = _stable_at(lam, order)
    g = _stable_at(lam, order + 1).truncate(BETA_PARAM, order)
    if f != g:
        raise TruncationError(f"beta-truncation at order {order} did not stabilise")
    return f


@lru_cache(maxsize=None)
def grothendieck_G_single(n: int, order: int) -> SymFun:
    """G_n = E(beta) sum_{k>=0} (-beta)^k h_{n+k}, truncated at beta^order."""
    acc = SymFun.zero()
    for k in range(order + 1):
        h = gen_h(n + k)
        if h:
            c = _beta_pow(k) * (-1 if k % 2 else 1)
            acc = acc + SymFun.const(c) * h
    return (e_beta(order) * acc).truncate(BETA_PARAM, order)


def grothendieck_jt(lam: Sequence[int], order: int) -> SymFun:
    """det[sum_m C(i-l, m) beta^m G_{lam_i - i + j + m}] modulo beta^(order+1)."""
    lam = tuple(lam)
    l = len(lam)
    if l == 0:
        return SymFun.one()

    def cell(i, j):  # 1-indexed
        acc = SymFun.zero()
        for m in range(order + 1):
            c = gen_binom(i - l, m)
            if c:
                acc = acc + SymFun.const(_beta_pow(m) * c) * grothendieck_G_single(lam[i - 1] - i + j + m, order)
        return acc.truncate(BETA_PARAM, order)

    rows = [[cell(i, j) for j in range(1, l + 1)] for i in range(1, l + 1)]
    return det(rows, SymFun.zero()).truncate(BETA_PARAM, order)


def grothendieck_dual(lam: Sequence[int]) -> SymFun:
    """g_lam = det[sum_m C(1-i, m) beta^m h_{lam_i - i + j - m}]."""
    lam = tuple(lam)
    l = len(lam)
    if l == 0:
        return SymFun.one()

    def cell(i, j):
        top = lam[i - 1] - i + j
        acc = SymFun.zero()
        for m in range(max(top, -1) + 1):
            c = gen_binom(1 - i, m)
            if c:
                acc = acc + SymFun.const(_beta_pow(m) * c) * gen_h(top - m)
        return acc

    rows = [[cell(i, j) for j in range(1, l + 1)] for i in range(1, l + 1)]
    return det(rows, SymFun.zero())


@lru_cache(maxsize=None)
def _h_perp(c: int):
    return adjoint(gen_h(c))


def h_perp_beta(f: SymFun) -> SymFun:
    """H^perp(-1/beta) f = sum_c (-beta)^c h_c^perp f (finite)."""
    acc = SymFun.zero()
    for c in range(f.pdeg() + 1):
        g = apply_diff(_h_perp(c), f)
        if g:
            coef = _beta_pow(c) * (-1 if c % 2 else 1)
            acc = acc + SymFun.const(coef) * g
    return acc


def j_plus(k: int, f: SymFun) -> SymFun:
    return gamma_plus(k, h_perp_beta(f), 0)


def grothendieck_dual_vertex(lam: Sequence[int]) -> SymFun:
    f = SymFun.one()
    for part in reversed(tuple(lam)):
        f = j_plus(-part, f)
        if not f:
            break
    return f
