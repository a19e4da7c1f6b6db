"""Exact rationals and sparse polynomials in named parameters.

``CoefPoly`` is the coefficient ring used throughout the package: polynomials
over Q in finitely many named symbols such as ``t``, ``beta`` or ``a1``.
Monomials are stored as name-sorted tuples of ``(name, exponent)`` pairs so
that equal polynomials have identical internal dictionaries.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from gmpy2 import mpq

Mono = tuple  # tuple[tuple[str, int], ...]

_PARAM_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")

ONE_MONO: Mono = ()


class UnassignedParameterError(ValueError):
    """Raised when evaluation meets a parameter that has no value."""

    def __init__(self, name: str):
        super().__init__(f"parameter {name!r} is not assigned")
        self.name = name


def rat(value) -> mpq:
    """Convert an int, Fraction, mpq or ``"p/q"`` string to an exact rational."""
    if isinstance(value, str):
        m = _RAT_RE.match(value)
        if m is None:
            raise ValueError(f"not an exact rational: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {value!r}")
        return mpq(num, den)
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, CoefPoly):
        return value.constant_value()
    if isinstance(value, float):
        raise TypeError("floating-point values are not accepted; use 'p/q' strings")
    return mpq(value)


def rat_str(value) -> str:
    """Canonical ``"p/q"`` / ``"p"`` spelling of a rational."""
    q = mpq(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def check_param_name(name: str) -> str:
    if not isinstance(name, str) or not _PARAM_RE.match(name):
        raise ValueError(f"invalid parameter name {name!r}")
    return name


@lru_cache(maxsize=1 << 16)
def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for name, e in b:
        merged[name] = merged.get(name, 0) + e
    return tuple(sorted(merged.items()))


def mono_degree(m: Mono, name: str) -> int:
    for n, e in m:
        if n == name:
            return e
    return 0


class CoefPoly:
    """Immutable sparse polynomial over Q in named parameters."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Mono, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = mpq(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "CoefPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value) -> "CoefPoly":
        v = rat(value)
        return cls._raw({ONE_MONO: v} if v else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "CoefPoly":
        check_param_name(name)
        if power < 0:
            raise ValueError("negative exponent")
        if power == 0:
            return cls.const(1)
        return cls._raw({((name, power),): mpq(1)})

    @classmethod
    def coerce(cls, value) -> "CoefPoly":
        if isinstance(value, CoefPoly):
            return value
        return cls.const(value)

    # -- inspection -------------------------------------------------------
    def items(self) -> Iterator[tuple[Mono, mpq]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_value(self) -> mpq:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(ONE_MONO, mpq(0))

    def params(self) -> set[str]:
        return {n for m in self._terms for n, _ in m}

    def degree(self, name: str) -> int:
        if not self._terms:
            return -1
        return max(mono_degree(m, name) for m in self._terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, CoefPoly):
            try:
                other = CoefPoly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return CoefPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return CoefPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CoefPoly):
            try:
                other = CoefPoly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CoefPoly):
            try:
                s = rat(other)
            except (TypeError, ValueError):
                return NotImplemented
            if not s:
                return CoefPoly._raw({})
            return CoefPoly._raw({m: c * s for m, c in self._terms.items()})
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return CoefPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = CoefPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CoefPoly):
            return self._terms == other._terms
        try:
            return self._terms == CoefPoly.const(other)._terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution -----------------------------------------------------
    def subs(self, assign: Mapping[str, object]) -> "CoefPoly":
        """Substitute rationals or CoefPolys for some parameters."""
        if not assign:
            return self
        vals = {k: CoefPoly.coerce(v) for k, v in assign.items()}
        out = CoefPoly._raw({})
        for m, c in self._terms.items():
            kept = []
            factor = CoefPoly.const(c)
            for name, e in m:
                if name in vals:
                    factor = factor * (vals[name] ** e)
                else:
                    kept.append((name, e))
            out = out + factor * CoefPoly._raw({tuple(kept): mpq(1)})
        return out

    def evaluate(self, assign: Mapping[str, object]) -> mpq:
        total = mpq(0)
        for m, c in self._terms.items():
            term = c
            for name, e in m:
                if name not in assign:
                    raise UnassignedParameterError(name)
                term *= rat(assign[name]) ** e
            total += term
        return total

    def truncate(self, name: str, order: int) -> "CoefPoly":
        """Drop every monomial whose degree in ``name`` exceeds ``order``."""
        return CoefPoly._raw(
            {m: c for m, c in self._terms.items() if mono_degree(m, name) <= order}
        )

    # -- presentation -----------------------------------------------------
    def sorted_items(self) -> list[tuple[Mono, mpq]]:
        return sorted(self._terms.items(), key=lambda mc: mc[0])

    def __repr__(self):
        return f"CoefPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_items():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)
            if not mono:
                parts.append(rat_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rat_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_sum(items: Iterable[CoefPoly]) -> CoefPoly:
    out: dict = {}
    for p in items:
        for m, c in p._terms.items():
            out[m] = out.get(m, 0) + c
    return CoefPoly._raw({m: c for m, c in out.items() if c})


Scalar = Union[int, Fraction, mpq, str, CoefPoly]

T = CoefPoly.var("t")
BETA = CoefPoly.var("beta")
