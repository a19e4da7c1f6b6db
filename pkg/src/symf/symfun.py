"""The ring of symmetric functions over Q[params], in the power-sum basis.

A ``SymFun`` is stored flat: keys are pairs ``(pmono, cmono)`` where ``pmono``
is a weakly decreasing tuple of positive integers (the product of power sums
p_mu) and ``cmono`` is a CoefPoly monomial in the named parameters.  Values
are nonzero ``mpq`` rationals.
"""
from __future__ import annotations

import threading
from collections import Counter
from functools import lru_cache
from itertools import product as iproduct
from math import comb, factorial
from typing import Iterable, Iterator, Mapping, Sequence

from gmpy2 import mpq

from .coef import (
    CoefPoly,
    ONE_MONO,
    UnassignedParameterError,
    mono_mul,
    rat,
)

__all__ = [
    "SymFun",
    "DiffOperator",
    "UnassignedParameterError",
    "partitions",
    "is_partition",
    "is_strict",
    "z_lambda",
    "pmono_mul",
    "gen_h",
    "gen_e",
    "gen_p",
    "gen_q",
    "adjoint",
    "apply_diff",
    "hall_inner",
    "translate_coeffs",
    "add",
    "mul",
    "scale",
    "evaluate",
]


# -- partitions ---------------------------------------------------------------

def is_partition(lam: Sequence[int]) -> bool:
    return all(x > 0 for x in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def is_strict(lam: Sequence[int]) -> bool:
    return all(x > 0 for x in lam) and all(a > b for a, b in zip(lam, lam[1:]))


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple:
    """All partitions of n (parts at most max_part), largest first."""
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_upto(d: int) -> list:
    return [lam for n in range(d + 1) for lam in partitions(n)]


@lru_cache(maxsize=None)
def z_lambda(lam: tuple) -> int:
    z = 1
    for part, mult in Counter(lam).items():
        z *= part ** mult * factorial(mult)
    return z


@lru_cache(maxsize=1 << 18)
def pmono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


# -- the ring -----------------------------------------------------------------

class SymFun:
    """Immutable element of Lambda[params]."""

    __slots__ = ("_d", "_hash")

    def __init__(self, data: Mapping | None = None):
        # data: {(pmono, cmono): rational}; normalised on entry
        d = {}
        if data:
            for (pm, cm), c in data.items():
                pm = tuple(sorted(pm, reverse=True))
                if any(x <= 0 for x in pm):
                    raise ValueError(f"power-sum monomial with nonpositive part: {pm}")
                c = mpq(c)
                if c:
                    key = (pm, cm)
                    v = d.get(key, 0) + c
                    if v:
                        d[key] = v
                    else:
                        d.pop(key, None)
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "SymFun":
        obj = cls.__new__(cls)
        obj._d = d
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def zero(cls) -> "SymFun":
        return cls._raw({})

    @classmethod
    def one(cls) -> "SymFun":
        return cls._raw({((), ONE_MONO): mpq(1)})

    @classmethod
    def const(cls, c) -> "SymFun":
        c = CoefPoly.coerce(c)
        return cls._raw({((), m): v for m, v in c.items()})

    @classmethod
    def p(cls, *parts: int) -> "SymFun":
        """The power-sum monomial p_{parts[0]} p_{parts[1]} ..."""
        return cls({(tuple(parts), ONE_MONO): 1})

    @classmethod
    def from_terms(cls, terms: Iterable) -> "SymFun":
        """Build from ``(pmono, CoefPoly-or-rational)`` pairs."""
        d: dict = {}
        for pm, c in terms:
            pm = tuple(sorted(pm, reverse=True))
            if any(x <= 0 for x in pm):
                raise ValueError(f"power-sum monomial with nonpositive part: {pm}")
            for m, v in CoefPoly.coerce(c).items():
                key = (pm, m)
                s = d.get(key, 0) + v
                if s:
                    d[key] = s
                else:
                    d.pop(key, None)
        return cls._raw(d)

    # inspection
    def __bool__(self) -> bool:
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def __len__(self) -> int:
        return len(self._d)

    def raw_items(self) -> Iterator:
        return iter(self._d.items())

    def terms(self) -> dict:
        """Group by power-sum monomial: ``{pmono: CoefPoly}``."""
        grouped: dict = {}
        for (pm, cm), c in self._d.items():
            grouped.setdefault(pm, {})[cm] = c
        return {pm: CoefPoly._raw(cs) for pm, cs in grouped.items()}

    def coefficient(self, pmono: Sequence[int]) -> CoefPoly:
        pm = tuple(sorted(pmono, reverse=True))
        return CoefPoly._raw({cm: c for (p, cm), c in self._d.items() if p == pm})

    def pdeg(self) -> int:
        """Largest |mu| among stored power-sum monomials (-1 for zero)."""
        if not self._d:
            return -1
        return max(sum(pm) for pm, _ in self._d)

    def params(self) -> set:
        return {n for _, cm in self._d for n, _ in cm}

    def is_odd(self) -> bool:
        """True when only odd power sums occur (membership in B_odd)."""
        return all(x % 2 for pm, _ in self._d for x in pm)

    def is_constant(self) -> bool:
        return all(pm == () for pm, _ in self._d)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, SymFun):
            try:
                other = SymFun.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        if len(other._d) > len(self._d):
            self, other = other, self
        d = dict(self._d)
        for k, c in other._d.items():
            v = d.get(k, 0) + c
            if v:
                d[k] = v
            else:
                del d[k]
        return SymFun._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return SymFun._raw({k: -c for k, c in self._d.items()})

    def __sub__(self, other):
        if not isinstance(other, SymFun):
            try:
                other = SymFun.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        d = dict(self._d)
        for k, c in other._d.items():
            v = d.get(k, 0) - c
            if v:
                d[k] = v
            else:
                del d[k]
        return SymFun._raw(d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SymFun):
            return _mul(self, other)
        if isinstance(other, CoefPoly):
            return _mul(self, SymFun.const(other))
        try:
            s = rat(other)
        except (TypeError, ValueError):
            return NotImplemented
        if not s:
            return SymFun._raw({})
        return SymFun._raw({k: c * s for k, c in self._d.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = SymFun.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SymFun):
            return self._d == other._d
        try:
            return self._d == SymFun.const(other)._d
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    # parameters
    def subs(self, assign: Mapping[str, object]) -> "SymFun":
        """Substitute rationals or CoefPolys for parameters."""
        if not assign or not self._d:
            return self
        names = set(assign)
        out: dict = {}
        cache: dict = {}
        for (pm, cm), c in self._d.items():
            if not any(n in names for n, _ in cm):
                key = (pm, cm)
                v = out.get(key, 0) + c
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
                continue
            if cm not in cache:
                cache[cm] = CoefPoly._raw({cm: mpq(1)}).subs(assign)
            for m2, c2 in cache[cm].items():
                key = (pm, m2)
                v = out.get(key, 0) + c * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return SymFun._raw(out)

    def truncate(self, name: str, order: int) -> "SymFun":
        """Drop terms whose degree in parameter ``name`` exceeds ``order``."""
        return SymFun._raw({
            (pm, cm): c for (pm, cm), c in self._d.items()
            if dict(cm).get(name, 0) <= order
        })

    def map_pmonos(self, fn) -> "SymFun":
        """Linear extension of ``pmono -> SymFun``, keeping coefficients."""
        out: dict = {}
        for (pm, cm), c in self._d.items():
            img = fn(pm)
            for (pm2, cm2), c2 in img._d.items():
                key = (pm2, mono_mul(cm, cm2))
                v = out.get(key, 0) + c * c2
                if v:
                    out[key] = v
                else:
                    del out[key]
        return SymFun._raw(out)

    # evaluation
    def evaluate_p(self, xs: Sequence, assign: Mapping | None = None) -> CoefPoly:
        """Substitute p_k = sum x_i^k; unassigned parameters stay symbolic."""
        xs = [rat(x) for x in xs]
        psum: dict = {}

        def pk(k):
            if k not in psum:
                psum[k] = sum((x ** k for x in xs), mpq(0))
            return psum[k]

        out: dict = {}
        for (pm, cm), c in self._d.items():
            v = c
            for k in pm:
                v *= pk(k)
                if not v:
                    break
            if v:
                out[cm] = out.get(cm, 0) + v
        poly = CoefPoly(out)
        if assign:
            poly = poly.subs({k: rat(v) for k, v in assign.items()})
        return poly

    def evaluate(self, xs: Sequence, assign: Mapping | None = None) -> mpq:
        assign = assign or {}
        poly = self.evaluate_p(xs, {k: v for k, v in assign.items()})
        missing = poly.params()
        if missing:
            raise UnassignedParameterError(sorted(missing)[0])
        return poly.constant_value()

    # presentation
    def sorted_terms(self) -> list:
        """``[(pmono, CoefPoly)]`` with pmonos in reverse-lexicographic order."""
        t = self.terms()
        return [(pm, t[pm]) for pm in sorted(t, reverse=True)]

    def __repr__(self):
        return f"SymFun({self})"

    def __str__(self):
        if not self._d:
            return "0"
        parts = []
        for pm, c in self.sorted_terms():
            mono = "*".join(f"p{k}" for k in pm)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)


def _mul(f: SymFun, g: SymFun) -> SymFun:
    if not f._d or not g._d:
        return SymFun._raw({})
    if len(f._d) < len(g._d):
        f, g = g, f
    out: dict = {}
    gi = list(g._d.items())
    for (pm1, cm1), c1 in f._d.items():
        for (pm2, cm2), c2 in gi:
            key = (pmono_mul(pm1, pm2), mono_mul(cm1, cm2))
            out[key] = out.get(key, 0) + c1 * c2
    return SymFun._raw({k: v for k, v in out.items() if v})


def add(f: SymFun, g: SymFun) -> SymFun:
    return f + g


def mul(f: SymFun, g: SymFun) -> SymFun:
    return f * g


def scale(c, f: SymFun) -> SymFun:
    return SymFun.const(c) * f if isinstance(c, CoefPoly) else f * c


def evaluate(f: SymFun, xs: Sequence, assign: Mapping | None = None) -> mpq:
    return f.evaluate(xs, assign)


# -- generators ---------------------------------------------------------------

_memo_lock = threading.Lock()
_h_memo: list = []
_e_memo: list = []


def gen_p(k: int) -> SymFun:
    if k < 0:
        return SymFun.zero()
    if k == 0:
        return SymFun.one()
    return SymFun.p(k)


def _extend(memo: list, k: int, sign: int) -> None:
    # n x_n = sum_i s_i p_i x_{n-i}, s_i = 1 for h and (-1)^(i-1) for e
    with _memo_lock:
        if not memo:
            memo.append(SymFun.one())
        while len(memo) <= k:
            n = len(memo)
            acc = SymFun.zero()
            for i in range(1, n + 1):
                term = SymFun.p(i) * memo[n - i]
                if sign < 0 and i % 2 == 0:
                    acc = acc - term
                else:
                    acc = acc + term
            memo.append(acc * mpq(1, n))


def gen_h(k: int) -> SymFun:
    """Complete homogeneous symmetric function h_k (zero for k < 0)."""
    if k < 0:
        return SymFun.zero()
    if k >= len(_h_memo):
        _extend(_h_memo, k, +1)
    return _h_memo[k]


def gen_e(k: int) -> SymFun:
    """Elementary symmetric function e_k (zero for k < 0)."""
    if k < 0:
        return SymFun.zero()
    if k >= len(_e_memo):
        _extend(_e_memo, k, -1)
    return _e_memo[k]


@lru_cache(maxsize=None)
def gen_q(k: int) -> SymFun:
    """Schur Q generator q_k = sum_i e_i h_{k-i}."""
    if k < 0:
        return SymFun.zero()
    acc = SymFun.zero()
    for i in range(k + 1):
        acc = acc + gen_e(i) * gen_h(k - i)
    return acc


# -- adjoints -----------------------------------------------------------------

class DiffOperator:
    """Constant-coefficient differential operator in the p_k.

    Stored as ``{nu: CoefPoly}`` where the partition ``nu`` stands for
    d/dp_{nu_1} d/dp_{nu_2} ...
    """

    __slots__ = ("_ops",)

    def __init__(self, ops: Mapping[tuple, CoefPoly]):
        self._ops = {tuple(sorted(k, reverse=True)): CoefPoly.coerce(v)
                     for k, v in ops.items() if CoefPoly.coerce(v)}

    def items(self):
        return self._ops.items()

    def __call__(self, f: SymFun) -> SymFun:
        return apply_diff(self, f)

    def __eq__(self, other):
        return isinstance(other, DiffOperator) and self._ops == other._ops

    def __repr__(self):
        return f"DiffOperator({self._ops})"


def adjoint(f: SymFun) -> DiffOperator:
    """f^perp: substitute p_n -> n d/dp_n."""
    ops: dict = {}
    for pm, c in f.terms().items():
        w = 1
        for k in pm:
            w *= k
        ops[pm] = ops.get(pm, CoefPoly()) + c * w
    return DiffOperator(ops)


@lru_cache(maxsize=1 << 16)
def _diff_mono(nu: tuple, mu: tuple):
    """d^nu p_mu as (coefficient, remaining pmono), or None."""
    cm = Counter(mu)
    c = 1
    for part, k in Counter(nu).items():
        have = cm.get(part, 0)
        if have < k:
            return None
        c *= factorial(have) // factorial(have - k)
        cm[part] = have - k
    rest = tuple(sorted(cm.elements(), reverse=True))
    return c, rest


def apply_diff(D: DiffOperator, f: SymFun) -> SymFun:
    out = SymFun.zero()
    for nu, coef in D.items():
        d: dict = {}
        for (pm, cm), c in f.raw_items():
            r = _diff_mono(nu, pm)
            if r is None:
                continue
            mult, rest = r
            key = (rest, cm)
            v = d.get(key, 0) + c * mult
            if v:
                d[key] = v
            else:
                d.pop(key, None)
        if d:
            out = out + SymFun.const(coef) * SymFun._raw(d)
    return out


def hall_inner(f: SymFun, g: SymFun) -> CoefPoly:
    gt = g.terms()
    acc = CoefPoly()
    for pm, c in f.terms().items():
        if pm in gt:
            acc = acc + c * gt[pm] * z_lambda(pm)
    return acc


# -- translations p_k -> p_k + s w^k -------------------------------------------

@lru_cache(maxsize=1 << 16)
def _translate_mono(mu: tuple, sign: int) -> tuple:
    """Expand prod_i (p_{mu_i} + sign w^{mu_i}) as ((c, pmono, mult), ...)."""
    counts = sorted(Counter(mu).items(), reverse=True)
    out = []
    for picks in iproduct(*(range(m + 1) for _, m in counts)):
        c = 0
        mult = 1
        rest: list = []
        for (part, m), j in zip(counts, picks):
            c += part * j
            mult *= comb(m, j)
            rest.extend([part] * (m - j))
        if sign < 0 and sum(picks) % 2:
            mult = -mult
        out.append((c, tuple(rest), mult))
    return tuple(out)


def translate_coeffs(f: SymFun, sign: int) -> dict:
    """Coefficients of w^c after p_k -> p_k + sign*w^k, as ``{c: SymFun}``.

    With sign=-1 the coefficient of w^c is (-1)^c e_c^perp f; with sign=+1
    it is h_c^perp f.
    """
    buckets: dict = {}
    for (pm, cm), c in f.raw_items():
        for deg, rest, mult in _translate_mono(pm, sign):
            d = buckets.setdefault(deg, {})
            key = (rest, cm)
            v = d.get(key, 0) + c * mult
            if v:
                d[key] = v
            else:
                del d[key]
    return {c: SymFun._raw(d) for c, d in buckets.items() if d}


def translate_mono_coeffs(mu: tuple, sign: int) -> dict:
    """``translate_coeffs`` for a single power-sum monomial, ``{c: {pmono: int}}``."""
    return _translate_mono_dict(mu, sign)


@lru_cache(maxsize=1 << 16)
def _translate_mono_dict(mu: tuple, sign: int) -> dict:
    out: dict = {}
    for deg, rest, mult in _translate_mono(mu, sign):
        out.setdefault(deg, {})[rest] = mult
    return out
