"""Coefficients of the quantum fields acting on symmetric functions.

Every field used here factors as (multiplication series) x (translation of
the p_k).  Coefficients are therefore finite sums

    Gamma+_k f = sum_c P_{c-k}(t) (-1)^c e_c^perp f,
    P_n(t)     = sum_a (-t)^a e_a h_{n-a},

    Gamma-_k f = sum_c R_{c-k}(t) h_c^perp f,
    R_n(t)     = sum_a t^a h_a (-1)^(n-a) e_{n-a},

computed per power-sum monomial and cached.  The charged fermions are the
t = 0 specialisations of these with a charge shift, and the neutral fermions
are Gamma+ at t = -1 restricted to B_odd.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from gmpy2 import mpq

from .coef import CoefPoly, rat
from .linalg import det
from .symfun import (
    SymFun,
    gen_e,
    gen_h,
    translate_mono_coeffs,
)

T_PARAM = "t"


# -- field kinds --------------------------------------------------------------

@dataclass(frozen=True)
class FieldKind:
    name: str
    t0: Optional[mpq] = None

    def __post_init__(self):
        if self.name not in {"GammaPlus", "GammaMinus", "GammaPlusAt", "Phi",
                             "PsiPlus", "PsiMinus"}:
            raise ValueError(f"unknown field kind {self.name!r}")
        if self.name == "GammaPlusAt":
            if self.t0 is None:
                raise ValueError("GammaPlusAt needs a value of t")
            object.__setattr__(self, "t0", rat(self.t0))

    @property
    def tkey(self):
        """None for symbolic t, otherwise the specialised value."""
        if self.name == "GammaPlusAt":
            return self.t0
        if self.name == "Phi":
            return mpq(-1)
        return None

    def __str__(self):
        if self.name == "GammaPlusAt":
            return f"GammaPlusAt({self.t0})"
        return self.name


GammaPlus = FieldKind("GammaPlus")
GammaMinus = FieldKind("GammaMinus")
Phi = FieldKind("Phi")
PsiPlus = FieldKind("PsiPlus")
PsiMinus = FieldKind("PsiMinus")


def GammaPlusAt(t0) -> FieldKind:
    return FieldKind("GammaPlusAt", rat(t0))


# -- multiplication series -----------------------------------------------------

def _t_power(tkey, a: int):
    if tkey is None:
        return CoefPoly.var(T_PARAM, a) if a else CoefPoly.const(1)
    return CoefPoly.const(tkey ** a)


@lru_cache(maxsize=None)
def plus_series(n: int, tkey=None) -> SymFun:
    """Coefficient of u^n in E(-tu) H(u)."""
    if n < 0:
        return SymFun.zero()
    acc = SymFun.zero()
    for a in range(n + 1):
        c = _t_power(tkey, a)
        if a % 2:
            c = -c
        if c:
            acc = acc + SymFun.const(c) * gen_e(a) * gen_h(n - a)
    return acc


@lru_cache(maxsize=None)
def minus_series(n: int, tkey=None) -> SymFun:
    """Coefficient of u^n in H(tu) E(-u)."""
    if n < 0:
        return SymFun.zero()
    acc = SymFun.zero()
    for a in range(n + 1):
        c = _t_power(tkey, a)
        if (n - a) % 2:
            c = -c
        if c:
            acc = acc + SymFun.const(c) * gen_h(a) * gen_e(n - a)
    return acc


# -- per-monomial coefficient operators ---------------------------------------

def _combine(series, shift: int, mu: tuple, sign: int, tkey) -> SymFun:
    acc = SymFun.zero()
    for c, rest in translate_mono_coeffs(mu, sign).items():
        n = c - shift
        if n < 0:
            continue
        s = series(n, tkey)
        if not s:
            continue
        acc = acc + s * SymFun.from_terms((pm, m) for pm, m in rest.items())
    return acc


@lru_cache(maxsize=1 << 17)
def _gamma_plus_mono(k: int, mu: tuple, tkey) -> SymFun:
    return _combine(plus_series, k, mu, -1, tkey)


@lru_cache(maxsize=1 << 17)
def _gamma_minus_mono(k: int, mu: tuple, tkey) -> SymFun:
    return _combine(minus_series, k, mu, +1, tkey)


def gamma_plus(k: int, f: SymFun, t0=None) -> SymFun:
    """Coefficient of u^{-k} in Gamma+(u) f, optionally at t = t0."""
    tkey = None if t0 is None else rat(t0)
    if k > f.pdeg():
        return SymFun.zero()
    return f.map_pmonos(lambda mu: _gamma_plus_mono(k, mu, tkey))


def gamma_minus(k: int, f: SymFun, t0=None) -> SymFun:
    """Coefficient of u^{-k} in Gamma-(u) f, optionally at t = t0."""
    tkey = None if t0 is None else rat(t0)
    if k > f.pdeg():
        return SymFun.zero()
    return f.map_pmonos(lambda mu: _gamma_minus_mono(k, mu, tkey))


def field_coeff(kind: FieldKind, k: int, f: SymFun) -> SymFun:
    if kind.name in ("GammaPlus", "GammaPlusAt"):
        return gamma_plus(k, f, kind.tkey)
    if kind.name == "GammaMinus":
        return gamma_minus(k, f)
    if kind.name == "Phi":
        return phi(k, f)
    raise ValueError(f"{kind} does not act on SymFun")


def iterate_field(kind: FieldKind, lam: Sequence[int]) -> SymFun:
    """Gamma_{-lam_1} ... Gamma_{-lam_l} (1), innermost factor first."""
    if kind.name not in ("GammaPlus", "GammaPlusAt", "Phi"):
        raise ValueError(f"iterate_field needs a Gamma+ kind, got {kind}")
    f = SymFun.one()
    for part in reversed(tuple(lam)):
        f = field_coeff(kind, -part, f)
        if not f:
            break
    return f


def hall_littlewood(lam: Sequence[int]) -> SymFun:
    return iterate_field(GammaPlus, lam)


def schur_jt(lam: Sequence[int]) -> SymFun:
    """det[h_{lam_i - i + j}] for any integer vector."""
    lam = tuple(lam)
    n = len(lam)
    if n == 0:
        return SymFun.one()
    rows = [[gen_h(lam[i] - i + j) for j in range(n)] for i in range(n)]
    return det(rows, SymFun.zero())


# -- neutral fermions ----------------------------------------------------------

def phi(j: int, f: SymFun) -> SymFun:
    if not f.is_odd():
        raise ValueError("phi acts on B_odd only (odd power sums)")
    return gamma_plus(j, f, mpq(-1))


# -- charged fermions ------------------------------------------------------------

@dataclass(frozen=True)
class ChargedState:
    """z^charge (x) body, an element of the boson Fock space."""

    charge: int
    body: SymFun

    def __post_init__(self):
        if not isinstance(self.charge, int):
            raise TypeError("charge must be an int")

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def __add__(self, other: "ChargedState") -> "ChargedState":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.charge != other.charge:
            raise ValueError("adding states of different charge")
        return ChargedState(self.charge, self.body + other.body)

    def __sub__(self, other: "ChargedState") -> "ChargedState":
        return self + ChargedState(other.charge, -other.body)

    def scaled(self, c) -> "ChargedState":
        return ChargedState(self.charge, self.body * c)


def psi_plus(r: int, s: ChargedState) -> ChargedState:
    """psi+ with half-integer index r - 1/2."""
    m = s.charge
    return ChargedState(m + 1, gamma_plus(r + m, s.body, 0))


def psi_minus(r: int, s: ChargedState) -> ChargedState:
    """psi- with half-integer index r - 1/2."""
    m = s.charge
    return ChargedState(m - 1, gamma_minus(r - m, s.body, 0))


# -- relation checks -------------------------------------------------------------

def gamma_gamma_defect(a: int, b: int, f: SymFun, kind: FieldKind = GammaPlus) -> SymFun:
    t = SymFun.const(CoefPoly.var(T_PARAM))
    if kind.name == "GammaPlus":
        g = gamma_plus
    elif kind.name == "GammaMinus":
        g = gamma_minus
    else:
        raise ValueError(f"relation defined for GammaPlus/GammaMinus, got {kind}")
    return (g(a + 1, g(b, f)) - t * g(a, g(b + 1, f))
            + g(b + 1, g(a, f)) - t * g(b, g(a + 1, f)))


def check_gamma_gamma(a: int, b: int, f: SymFun, kind: FieldKind = GammaPlus) -> bool:
    """(u - vt) G(u) G(v) + (v - ut) G(v) G(u) = 0, coefficient of u^{-a} v^{-b}."""
    return gamma_gamma_defect(a, b, f, kind).is_zero()


def gamma_cross_defect(a: int, b: int, f: SymFun, delta_at: int = -1) -> SymFun:
    # the (1-t)^2 f term lives at a + b = -1: both sides have u,v-degree +1
    t = SymFun.const(CoefPoly.var(T_PARAM))
    gp, gm = gamma_plus, gamma_minus
    lhs = (gp(a, gm(b + 1, f)) - t * gp(a + 1, gm(b, f))
           + gm(b, gp(a + 1, f)) - t * gm(b + 1, gp(a, f)))
    if a + b == delta_at:
        one_minus_t = SymFun.one() - t
        lhs = lhs - one_minus_t * one_minus_t * f
    return lhs


def check_gamma_cross(a: int, b: int, f: SymFun) -> bool:
    return gamma_cross_defect(a, b, f).is_zero()


def charged_defects(r: int, s: int, state: ChargedState) -> dict:
    """Defects of the three anticommutators {psi+_r, psi-_s}, {psi+, psi+}, {psi-, psi-}."""
    pp, pm = psi_plus, psi_minus
    mixed = pp(r, pm(s, state)) + pm(s, pp(r, state))
    if r + s == 1:
        mixed = mixed - state
    return {
        "plus-minus": mixed,
        "plus-plus": pp(r, pp(s, state)) + pp(s, pp(r, state)),
        "minus-minus": pm(r, pm(s, state)) + pm(s, pm(r, state)),
    }


def neutral_defect(a: int, b: int, f: SymFun) -> SymFun:
    """phi_a phi_b f + phi_b phi_a f - 2 (-1)^a delta_{a+b,0} f."""
    lhs = phi(a, phi(b, f)) + phi(b, phi(a, f))
    if a + b == 0:
        lhs = lhs - f * (2 if a % 2 == 0 else -2)
    return lhs
