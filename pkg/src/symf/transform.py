"""Row-finite Z x Z matrices acting on field coefficients.

A matrix is described by an entry function together with index ranges:
``row_range(i)`` bounds the support of row i and ``col_range(j)`` that of
column j.  A range is ``(lo, hi)`` with ``hi`` (or, for columns, ``lo``)
allowed to be ``None`` for an unbounded side; ``None`` in place of the pair
marks an identically zero row or column.  Row lower bounds are always finite,
which is exactly the row-finiteness condition.
"""
from __future__ import annotations

import enum
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional, Sequence

from gmpy2 import mpq

from .coef import CoefPoly
from .linalg import det, pfaffian as _pfaffian
from .symfun import SymFun, gen_h, gen_q
from .vertex import (
    ChargedState,
    FieldKind,
    GammaPlus,
    GammaPlusAt,
    gamma_plus,
    phi,
    psi_minus,
    psi_plus,
)

Range = Optional[tuple]

_SCAN_LIMIT = 10_000


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"

    def __bool__(self):
        return self is Verdict.TRUE


class RowFiniteMatrix:
    def __init__(
        self,
        entry: Callable[[int, int], object],
        row_range: Callable[[int], Range],
        col_range: Callable[[int], Range],
        inverse: Optional[Callable[[], "RowFiniteMatrix"]] = None,
        name: str = "A",
        block: bool = False,
    ):
        self._entry = entry
        self._row_range = row_range
        self._col_range = col_range
        self._inverse = inverse
        self._inverse_obj = None
        self.name = name
        self.block = block
        self._cache: dict = {}

    # -- access -----------------------------------------------------------
    def entry(self, i: int, j: int) -> CoefPoly:
        key = (i, j)
        v = self._cache.get(key)
        if v is None:
            rr = self._row_range(i)
            if rr is None or j < rr[0] or (rr[1] is not None and j > rr[1]):
                v = CoefPoly()
            else:
                v = CoefPoly.coerce(self._entry(i, j))
            self._cache[key] = v
        return v

    def row_range(self, i: int) -> Range:
        return self._row_range(i)

    def col_range(self, j: int) -> Range:
        return self._col_range(j)

    def cutoff(self, i: int) -> Optional[int]:
        """M(i): column of the first nonzero entry of row i (None if zero)."""
        rr = self._row_range(i)
        if rr is None:
            return None
        lo, hi = rr
        j = lo
        while hi is None or j <= hi:
            if self.entry(i, j):
                return j
            j += 1
            if hi is None and j - lo > _SCAN_LIMIT:
                raise ValueError(f"row {i} of {self.name} has no nonzero entry in scan range")
        return None

    def row_end(self, i: int) -> Optional[int]:
        rr = self._row_range(i)
        return None if rr is None else rr[1]

    def row(self, i: int, upto: int) -> list:
        """Nonzero ``(j, A_ij)`` with j <= upto, in increasing j."""
        rr = self._row_range(i)
        if rr is None:
            return []
        lo, hi = rr
        top = upto if hi is None else min(upto, hi)
        out = []
        for j in range(lo, top + 1):
            v = self.entry(i, j)
            if v:
                out.append((j, v))
        return out

    @property
    def inverse(self) -> Optional["RowFiniteMatrix"]:
        if self._inverse is None:
            return None
        if self._inverse_obj is None:
            self._inverse_obj = self._inverse()
        return self._inverse_obj

    def vee(self) -> "RowFiniteMatrix":
        """(A^vee)_{ij} = A_{-j,-i}."""
        src = self

        def row_range(i):
            c = src.col_range(-i)
            if c is None:
                return None
            lo, hi = c
            if hi is None:
                raise ValueError(f"{src.name}^vee is not row-finite (column {-i} unbounded above)")
            return (-hi, None if lo is None else -lo)

        def col_range(j):
            r = src.row_range(-j)
            if r is None:
                return None
            lo, hi = r
            return (None if hi is None else -hi, -lo)

        return RowFiniteMatrix(lambda i, j: src.entry(-j, -i), row_range, col_range,
                               name=f"{src.name}^vee", block=src.block)

    def __repr__(self):
        return f"RowFiniteMatrix({self.name})"


# -- basic constructors ------------------------------------------------------------

def identity_matrix() -> RowFiniteMatrix:
    return RowFiniteMatrix(
        lambda i, j: CoefPoly.const(1) if i == j else CoefPoly(),
        lambda i: (i, i),
        lambda j: (j, j),
        inverse=identity_matrix,
        name="Id",
        block=True,
    )


def scalar_matrix(c) -> RowFiniteMatrix:
    c = CoefPoly.coerce(c)
    if not c:
        return zero_matrix()
    return RowFiniteMatrix(lambda i, j: c if i == j else CoefPoly(),
                           lambda i: (i, i), lambda j: (j, j), name=f"{c}*Id")


def zero_matrix() -> RowFiniteMatrix:
    return RowFiniteMatrix(lambda i, j: CoefPoly(), lambda i: None, lambda j: None, name="0")


def explicit_matrix(rows: Mapping[int, Mapping[int, object]], default: str = "identity",
                    name: str = "explicit") -> RowFiniteMatrix:
    """Finitely many listed rows; all other rows are delta rows or zero."""
    if default not in ("identity", "zero"):
        raise ValueError(f"default must be 'identity' or 'zero', got {default!r}")
    table = {int(i): {int(j): CoefPoly.coerce(v) for j, v in r.items() if CoefPoly.coerce(v)}
             for i, r in rows.items()}
    cols: dict = {}
    for i, r in table.items():
        for j in r:
            cols.setdefault(j, set()).add(i)

    def entry(i, j):
        if i in table:
            return table[i].get(j, CoefPoly())
        if default == "identity" and i == j:
            return CoefPoly.const(1)
        return CoefPoly()

    def row_range(i):
        if i in table:
            r = table[i]
            return (min(r), max(r)) if r else None
        return (i, i) if default == "identity" else None

    def col_range(j):
        members = set(cols.get(j, ()))
        if default == "identity" and j not in table:
            members.add(j)
        return (min(members), max(members)) if members else None

    return RowFiniteMatrix(entry, row_range, col_range, name=name)


# -- transformed field coefficients ------------------------------------------------

def _gamma(kind: FieldKind, j: int, f: SymFun) -> SymFun:
    if kind.name == "GammaPlus":
        return gamma_plus(j, f)
    if kind.name == "GammaPlusAt":
        return gamma_plus(j, f, kind.t0)
    if kind.name == "Phi":
        return phi(j, f)
    raise ValueError(f"transformations act on Gamma+ kinds, got {kind}")


def transformed_coeff(A: RowFiniteMatrix, kind: FieldKind, k: int, f: SymFun) -> SymFun:
    """sum_{M(k) <= j <= pdeg f} A_{k,j} Gamma_j f."""
    if not f:
        return SymFun.zero()
    acc = SymFun.zero()
    for j, a in A.row(k, f.pdeg()):
        g = _gamma(kind, j, f)
        if g:
            acc = acc + SymFun.const(a) * g
    return acc


def transformed_family(A: RowFiniteMatrix, lam: Sequence[int],
                       kind: FieldKind = GammaPlus) -> SymFun:
    """tilde Gamma_{-lam_1} ... tilde Gamma_{-lam_l} (1)."""
    f = SymFun.one()
    for part in reversed(tuple(lam)):
        f = transformed_coeff(A, kind, -part, f)
        if not f:
            break
    return f


def transformed_family_reversed(A: RowFiniteMatrix, lam: Sequence[int],
                                kind: FieldKind = GammaPlus) -> SymFun:
    """Same operators applied in the opposite order (lam_1 innermost)."""
    return transformed_family(A, tuple(reversed(tuple(lam))), kind)


# -- Jacobi-Trudi analogue -----------------------------------------------------------

def h_tilde(A: RowFiniteMatrix, k: int, m: int) -> SymFun:
    """sum_r A_{-k,-r} h_{r-m}; only r >= m contributes."""
    acc = SymFun.zero()
    for j, a in A.row(-k, -m):
        acc = acc + SymFun.const(a) * gen_h(-j - m)
    return acc


def jt_transformed(A: RowFiniteMatrix, lam: Sequence[int]) -> SymFun:
    lam = tuple(lam)
    n = len(lam)
    if n == 0:
        return SymFun.one()
    rows = [[h_tilde(A, lam[i], i - j) for j in range(n)] for i in range(n)]
    return det(rows, SymFun.zero())


# -- Pfaffian analogue -------------------------------------------------------------

@lru_cache(maxsize=None)
def q_pair(a: int, b: int) -> SymFun:
    """q_a q_b + 2 sum_{i=1}^{b} (-1)^i q_{a+i} q_{b-i}."""
    acc = gen_q(a) * gen_q(b)
    for i in range(1, b + 1):
        term = gen_q(a + i) * gen_q(b - i)
        acc = acc + term * (2 if i % 2 == 0 else -2)
    return acc


class SkewMatrix:
    """Even-dimensional skew-symmetric matrix of SymFun entries."""

    def __init__(self, entries: Sequence[Sequence[SymFun]]):
        n = len(entries)
        rows = [list(r) for r in entries]
        for r in rows:
            if len(r) != n:
                raise ValueError("SkewMatrix must be square")
        for i in range(n):
            if rows[i][i]:
                raise ValueError(f"nonzero diagonal entry at {i}")
            for j in range(i + 1, n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not opposite")
        self.entries = rows
        self.dim = n

    @classmethod
    def from_upper(cls, upper: Callable[[int, int], SymFun], n: int) -> "SkewMatrix":
        rows = [[SymFun.zero()] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = upper(i, j)
                rows[i][j] = v
                rows[j][i] = -v
        return cls(rows)


def pfaffian(M: SkewMatrix) -> SymFun:
    return _pfaffian(M.entries, SymFun.zero(), SymFun.one())


_PAD = object()


def _row_support(A: RowFiniteMatrix, part, upto: int) -> list:
    """Nonzero (k, A_{-part,-k}) with k >= -upto... as (k, coef) pairs."""
    if part is _PAD:
        return [(0, CoefPoly.const(1))]
    return [(-j, a) for j, a in A.row(-part, upto)]


def pf_entry(A: RowFiniteMatrix, pi, pj) -> SymFun:
    """sum_{k,r} A_{-pi,-k} A_{-pj,-r} q_{k,r} (pad index = delta row)."""
    acc = SymFun.zero()
    # q_{k,r} != 0 needs r >= 0 and k + r >= 0
    right = _row_support(A, pj, 0)
    for r, ar in right:
        for k, ak in _row_support(A, pi, r):
            q = q_pair(k, r)
            if q:
                acc = acc + SymFun.const(ak * ar) * q
    return acc


def pf_transformed(A: RowFiniteMatrix, lam: Sequence[int]) -> SymFun:
    """Pf[sum A A q_{k,r}], built from the upper triangle.

    Odd length vectors get one extra index carrying the delta row at 0.
    """
    parts: list = list(lam)
    if len(parts) % 2:
        parts.append(_PAD)
    n = len(parts)
    if n == 0:
        return SymFun.one()
    M = SkewMatrix.from_upper(lambda i, j: pf_entry(A, parts[i], parts[j]), n)
    return pfaffian(M)


def schur_q(lam: Sequence[int]) -> SymFun:
    """q_lam = Pf[q_{lam_i, lam_j}] for strict partitions."""
    from .symfun import is_strict
    if not is_strict(lam):
        raise ValueError(f"{tuple(lam)} is not a strict partition")
    parts = list(lam)
    if len(parts) % 2:
        parts.append(0)
    n = len(parts)
    if n == 0:
        return SymFun.one()
    return pfaffian(SkewMatrix.from_upper(lambda i, j: q_pair(parts[i], parts[j]), n))


# -- matrix identities --------------------------------------------------------------

def _product_entry(B: RowFiniteMatrix, A: RowFiniteMatrix, i: int, j: int,
                   kfilter: Optional[Callable[[int], bool]] = None):
    """(BA)_{ij} or None when the k-range cannot be bounded."""
    br = B.row_range(i)
    ac = A.col_range(j)
    if br is None or ac is None:
        return CoefPoly()
    lo = br[0] if ac[0] is None else max(br[0], ac[0])
    his = [h for h in (br[1], ac[1]) if h is not None]
    if not his:
        return None
    hi = min(his)
    acc = CoefPoly()
    for k in range(lo, hi + 1):
        if kfilter is not None and not kfilter(k):
            continue
        b = B.entry(i, k)
        if b:
            a = A.entry(k, j)
            if a:
                acc = acc + b * a
    return acc


def check_inverse(A: RowFiniteMatrix, B: RowFiniteMatrix, window: Iterable[int]) -> Verdict:
    """sum_k B_{ik} A_{kj} = delta_{ij} for all i, j in the window."""
    window = list(window)
    inconclusive = False
    for i in window:
        for j in window:
            v = _product_entry(B, A, i, j)
            if v is None:
                inconclusive = True
                continue
            if v != (1 if i == j else 0):
                return Verdict.FALSE
    return Verdict.INCONCLUSIVE if inconclusive else Verdict.TRUE


def fermion_pairing(A: RowFiniteMatrix, B: RowFiniteMatrix, k: int, m: int) -> CoefPoly:
    """sum_i A_{k,i} B_{m,1-i}."""
    ma, mb = A.cutoff(k), B.cutoff(m)
    if ma is None or mb is None:
        return CoefPoly()
    acc = CoefPoly()
    for i in range(ma, 1 - mb + 1):
        a = A.entry(k, i)
        if a:
            b = B.entry(m, 1 - i)
            if b:
                acc = acc + a * b
    return acc


def _tilde_psi(M: RowFiniteMatrix, k: int, state: ChargedState, plus: bool) -> ChargedState:
    # psi+_[i] kills z^m f once i + m > pdeg f; psi-_[i] once i - m > pdeg f
    d = state.body.pdeg()
    m = state.charge
    top = d - m if plus else d + m
    op = psi_plus if plus else psi_minus
    out = ChargedState(m + 1 if plus else m - 1, SymFun.zero())
    for i, a in M.row(k, top):
        s = op(i, state)
        if not s.is_zero():
            out = out + s.scaled(SymFun.const(a))
    return out


def _basis_states(max_deg: int, charges: Iterable[int]) -> list:
    from .symfun import partitions_upto
    return [ChargedState(m, SymFun.p(*mu)) for m in charges for mu in partitions_upto(max_deg)]


def fermion_operator_defect(A, B, k: int, m: int, state: ChargedState) -> ChargedState:
    """{tilde psi+_k, tilde psi-_m} state - delta_{k+m,1} state."""
    x = _tilde_psi(A, k, _tilde_psi(B, m, state, False), True)
    y = _tilde_psi(B, m, _tilde_psi(A, k, state, True), False)
    total = x + y
    if k + m == 1:
        total = total - state
    return total


def check_fermion_preservation(A: RowFiniteMatrix, B: RowFiniteMatrix, window: Iterable[int],
                               operator_window: Optional[Iterable[int]] = None,
                               max_deg: int = 2) -> Verdict:
    window = list(window)
    for k in window:
        for m in window:
            if fermion_pairing(A, B, k, m) != (1 if k + m == 1 else 0):
                return Verdict.FALSE
    # inverse form (A^{-1})_{ij} = B_{1-j,1-i}, when a closed-form inverse exists
    inv = A.inverse
    if inv is not None:
        for i in window:
            for j in window:
                if inv.entry(i, j) != B.entry(1 - j, 1 - i):
                    return Verdict.FALSE
    # independent route: anticommutators of the transformed operators on states
    ow = list(operator_window) if operator_window is not None else [x for x in window if -2 <= x <= 3]
    for state in _basis_states(max_deg, (-1, 0, 1)):
        for k in ow:
            for m in ow:
                if not fermion_operator_defect(A, B, k, m, state).is_zero():
                    return Verdict.FALSE
    return Verdict.TRUE


def neutral_pairing(A: RowFiniteMatrix, k: int, m: int) -> CoefPoly:
    """sum_i A_{k,i} (-1)^i A_{m,-i}."""
    mk, mm = A.cutoff(k), A.cutoff(m)
    if mk is None or mm is None:
        return CoefPoly()
    acc = CoefPoly()
    for i in range(mk, -mm + 1):
        a = A.entry(k, i)
        if a:
            b = A.entry(m, -i)
            if b:
                acc = acc + (a * b if i % 2 == 0 else -(a * b))
    return acc


def _tilde_phi(A: RowFiniteMatrix, k: int, f: SymFun) -> SymFun:
    acc = SymFun.zero()
    for i, a in A.row(k, f.pdeg()):
        g = phi(i, f)
        if g:
            acc = acc + SymFun.const(a) * g
    return acc


def check_neutral_preservation(A: RowFiniteMatrix, window: Iterable[int],
                               operator_window: Optional[Iterable[int]] = None,
                               max_deg: int = 3) -> Verdict:
    window = list(window)
    for k in window:
        for m in window:
            want = 0 if k + m else (1 if m % 2 == 0 else -1)
            if neutral_pairing(A, k, m) != want:
                return Verdict.FALSE
    from .symfun import partitions_upto
    ow = list(operator_window) if operator_window is not None else [x for x in window if -2 <= x <= 2]
    states = [SymFun.p(*mu) for mu in partitions_upto(max_deg) if all(x % 2 for x in mu)]
    for f in states:
        for k in ow:
            for m in ow:
                lhs = _tilde_phi(A, k, _tilde_phi(A, m, f)) + _tilde_phi(A, m, _tilde_phi(A, k, f))
                want = f * (2 if m % 2 == 0 else -2) if k + m == 0 else SymFun.zero()
                if lhs != want:
                    return Verdict.FALSE
    return Verdict.TRUE


def heisenberg_pairing(A: RowFiniteMatrix, k: int, m: int) -> CoefPoly:
    """(A P A^T)_{k,m} = sum_i A_{k,i} i A_{m,-i}."""
    mk, mm = A.cutoff(k), A.cutoff(m)
    if mk is None or mm is None:
        return CoefPoly()
    acc = CoefPoly()
    for i in range(mk, -mm + 1):
        if i == 0:
            continue
        a = A.entry(k, i)
        if a:
            b = A.entry(m, -i)
            if b:
                acc = acc + a * b * i
    return acc


def check_heisenberg_preservation(A: RowFiniteMatrix, window: Iterable[int]) -> Verdict:
    window = list(window)
    for k in window:
        for m in window:
            if heisenberg_pairing(A, k, m) != (k if k == -m else 0):
                return Verdict.FALSE
    return Verdict.TRUE


def delta_coefficient(A: RowFiniteMatrix, r: int, p: int, part: Optional[str] = None):
    """Coefficient of x^{-r} y^p in sum_k g_k(x^{-1}) f_k(y).

    ``part`` restricts to k >= 0 ("nonneg") or k < 0 ("neg").
    """
    inv = A.inverse
    if inv is None:
        raise ValueError(f"{A.name} has no closed-form inverse")
    kfilter = None
    if part == "nonneg":
        kfilter = lambda idx: idx <= 0   # idx = -k
    elif part == "neg":
        kfilter = lambda idx: idx > 0
    return _product_entry(inv, A, -r, -p, kfilter)


def delta_reexpansion_check(A: RowFiniteMatrix, window: Iterable[int]) -> Verdict:
    window = list(window)
    inconclusive = False
    for r in window:
        for p in window:
            v = delta_coefficient(A, r, p)
            if v is None:
                inconclusive = True
            elif v != (1 if r == p else 0):
                return Verdict.FALSE
            if A.block:
                pos = delta_coefficient(A, r, p, "nonneg")
                neg = delta_coefficient(A, r, p, "neg")
                if pos is None or neg is None:
                    inconclusive = True
                    continue
                if pos != (1 if r == p and r >= 0 else 0):
                    return Verdict.FALSE
                if neg != (1 if r == p and r < 0 else 0):
                    return Verdict.FALSE
    return Verdict.INCONCLUSIVE if inconclusive else Verdict.TRUE
