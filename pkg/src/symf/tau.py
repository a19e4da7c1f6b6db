"""Bilinear KP and BKP residues.

The KP residue of a charged state tau is

    sum_r  psi+_[r] tau (x) psi-_[1-r] tau,

and the BKP residue of tau in B_odd is

    sum_n (-1)^n phi_n tau (x) phi_{-n} tau  -  tau (x) tau.

Both sums are finite: psi+_[r] (z^m f) vanishes once r + m > pdeg f,
psi-_[1-r] once 1 - r - m > pdeg f, and phi_n f once |n| > pdeg f.
"""
from __future__ import annotations

import random
from typing import Iterator, Mapping, Optional

from gmpy2 import mpq

from .coef import CoefPoly, mono_mul
from .symfun import SymFun
from .vertex import ChargedState, phi, psi_minus, psi_plus


class TensorElt:
    """Finite sum of (left key) (x) (right key) with CoefPoly coefficients.

    Keys are ``(charge, pmono)`` for KP residues and ``pmono`` for BKP ones.
    Internally the coefficients are kept flat as ``{(left, right, cmono): mpq}``.
    """

    __slots__ = ("_d",)

    def __init__(self, flat: Optional[dict] = None):
        self._d = {k: v for k, v in (flat or {}).items() if v}

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self.terms())

    def terms(self) -> dict:
        out: dict = {}
        for (lk, rk, cm), c in self._d.items():
            out.setdefault((lk, rk), {})[cm] = c
        return {k: CoefPoly(v) for k, v in out.items()}

    def sorted_terms(self) -> list:
        return sorted(self.terms().items(), key=lambda kv: kv[0], reverse=True)

    def first_term(self):
        st = self.sorted_terms()
        return st[0] if st else None

    def __eq__(self, other):
        if not isinstance(other, TensorElt):
            return NotImplemented
        return self._d == other._d

    def __repr__(self):
        return f"TensorElt({len(self._d)} flat terms)"


def _accumulate(acc: dict, left: SymFun, right: SymFun, ltag, rtag, sign: int = 1) -> None:
    ritems = list(right.raw_items())
    for (lp, lc), lv in left.raw_items():
        lkey = ltag(lp)
        lv = lv * sign
        for (rp, rc), rv in ritems:
            key = (lkey, rtag(rp), mono_mul(lc, rc) if lc and rc else (lc or rc))
            v = acc.get(key)
            nv = lv * rv if v is None else v + lv * rv
            if nv:
                acc[key] = nv
            else:
                del acc[key]


def kp_window(tau: ChargedState) -> range:
    d = tau.body.pdeg()
    m = tau.charge
    return range(1 - m - d, d - m + 1)


def kp_residue(tau: ChargedState, pad: int = 0) -> TensorElt:
    if tau.is_zero():
        return TensorElt()
    m = tau.charge
    w = kp_window(tau)
    acc: dict = {}
    lt = lambda p: (m + 1, p)
    rt = lambda p: (m - 1, p)
    d = tau.body.pdeg()
    for r in range(w.start - pad, w.stop + pad):
        # evaluate the lower-degree factor first; the other is skipped if it vanishes
        if d - (r + m) <= d - 1 + r + m:
            left = psi_plus(r, tau)
            if left.is_zero():
                continue
            right = psi_minus(1 - r, tau)
        else:
            right = psi_minus(1 - r, tau)
            if right.is_zero():
                continue
            left = psi_plus(r, tau)
        if left.is_zero() or right.is_zero():
            continue
        _accumulate(acc, left.body, right.body, lt, rt)
    return TensorElt(acc)


def _as_state(tau) -> ChargedState:
    if isinstance(tau, ChargedState):
        return tau
    if isinstance(tau, SymFun):
        return ChargedState(0, tau)
    raise TypeError(f"expected ChargedState or SymFun, got {type(tau).__name__}")


def is_kp_tau(tau) -> bool:
    return kp_residue(_as_state(tau)).is_zero()


def bkp_residue(tau: SymFun, pad: int = 0) -> TensorElt:
    if not tau.is_odd():
        raise ValueError("BKP residue needs tau in B_odd (odd power sums only)")
    if not tau:
        return TensorElt()
    d = tau.pdeg()
    acc: dict = {}
    ident = lambda p: p
    for n in range(-d - pad, d + pad + 1):
        left = phi(n, tau)
        if not left:
            continue
        right = phi(-n, tau)
        if not right:
            continue
        _accumulate(acc, left, right, ident, ident, -1 if n % 2 else 1)
    _accumulate(acc, tau, tau, ident, ident, -1)
    return TensorElt(acc)


def is_bkp_tau(tau: SymFun) -> bool:
    return bkp_residue(tau).is_zero()


# -- seeded non-examples ---------------------------------------------------------------

def random_symfun(seed, degree: int, odd_only: bool = False, terms: int = 4,
                  bound: int = 9) -> SymFun:
    """Random combination of power-sum monomials of degree <= ``degree``."""
    from .symfun import partitions_upto
    rng = random.Random(seed)
    pool = [mu for mu in partitions_upto(degree) if mu and (not odd_only or all(p % 2 for p in mu))]
    chosen = rng.sample(pool, min(terms, len(pool)))
    f = SymFun.zero()
    for mu in chosen:
        c = 0
        while c == 0:
            c = rng.randint(-bound, bound)
        f = f + SymFun.p(*mu) * c
    return f
