"""The arrow category of a base, with diagonals as nullhomotopies.

Objects are arrows ``a: A -> A0`` of the base, arrows are commuting squares
``(f, f0)`` and a nullhomotopy on ``(g, g0): (B, b, B0) -> (C, c, C0)`` is a
diagonal ``phi: B0 -> C`` with ``b . phi = g`` and ``phi . c = g0``.

The cokernel of ``(f, f0): (A, a, A0) -> (B, b, B0)`` is built from the pushout
``P`` of ``a`` and ``f``: it is ``(P, [f0, b], B0)`` with ``c = (a', id)`` and the
pushout leg ``f': A0 -> P`` as the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from . import matfp
from .fincat import CompositionError, FinSet, FinSetMap, compose_finset
from .nullhomotopy import (
    DIAGONAL,
    CokernelTriple,
    InitialNull,
    NullCategory,
    NullFunctor,
    PreconditionError,
    TerminalNull,
    Token,
    UniversalityError,
    check_cancellation,
    check_cokernel,
    lifts,
)


def then(f, g):
    """Diagrammatic composite in whichever base ``f`` lives in."""
    if isinstance(f, FinSetMap):
        return compose_finset(f, g)
    return matfp.compose(f, g)


def base_of(x) -> Any:
    if isinstance(x, FinSetMap):
        return FinSet()
    return matfp.Mat(x.p)


@dataclass(frozen=True)
class ArrObject:
    top: int
    bottom: int
    a: Any

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.top, self.bottom, self.a))
            object.__setattr__(self, "_hash", h)
            return h

    def __post_init__(self):
        if (self.a.dom, self.a.cod) != (self.top, self.bottom):
            raise ValueError(f"arrow {self.a!r} does not go {self.top} -> {self.bottom}")

    def __repr__(self):
        return f"Arr({self.top} -{self.a!r}-> {self.bottom})"


@dataclass(frozen=True)
class ArrMorphism:
    """A commuting square ``source.a . f0 = f . target.a``."""

    source: ArrObject
    target: ArrObject
    f: Any
    f0: Any

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.source, self.target, self.f, self.f0))
            object.__setattr__(self, "_hash", h)
            return h

    def __post_init__(self):
        s, t = self.source, self.target
        if (self.f.dom, self.f.cod) != (s.top, t.top):
            raise CompositionError(f"top map {self.f!r} does not go {s.top} -> {t.top}")
        if (self.f0.dom, self.f0.cod) != (s.bottom, t.bottom):
            raise CompositionError(f"bottom map {self.f0!r} does not go {s.bottom} -> {t.bottom}")
        if then(s.a, self.f0) != then(self.f, t.a):
            raise ValueError(f"square does not commute: {s!r} -> {t!r} via ({self.f!r}, {self.f0!r})")

    @classmethod
    def _trusted(cls, source, target, f, f0) -> "ArrMorphism":
        out = object.__new__(cls)
        for k, v in (("source", source), ("target", target), ("f", f), ("f0", f0)):
            object.__setattr__(out, k, v)
        return out

    def __repr__(self):
        return f"Sq({self.f!r}, {self.f0!r})"


Diagonal = Token


class ArrowCategory(NullCategory):
    """``Arr(base)`` with the diagonal nullhomotopy structure."""

    tag = DIAGONAL

    def __init__(self, base=None):
        self.base = base if base is not None else FinSet()
        self.name = f"arr[{self.base.name}]"
        self._hom = lru_cache(maxsize=None)(self._hom_uncached)
        self._theta = lru_cache(maxsize=None)(self._theta_uncached)
        self._identity = lru_cache(maxsize=None)(self._identity_uncached)

    def __repr__(self):
        return f"ArrowCategory({self.base!r})"

    def __eq__(self, other):
        return isinstance(other, ArrowCategory) and other.base == self.base

    def __hash__(self):
        return hash(("ArrowCategory", self.base))

    def obj(self, a) -> ArrObject:
        return ArrObject(a.dom, a.cod, a)

    def arrow(self, source, target, f, f0) -> ArrMorphism:
        return ArrMorphism(source, target, f, f0)

    def dom(self, m):
        return m.source

    def cod(self, m):
        return m.target

    def compose(self, m, n):
        if m.target != n.source:
            raise CompositionError(f"cannot compose {m!r} then {n!r}: {m.target!r} != {n.source!r}")
        b = self.base
        return ArrMorphism._trusted(m.source, n.target, b.compose(m.f, n.f),
                                    b.compose(m.f0, n.f0))

    def identity(self, x):
        return self._identity(x)

    def _identity_uncached(self, x):
        b = self.base
        return ArrMorphism._trusted(x, x, b.identity(x.top), b.identity(x.bottom))

    def hom(self, x, y):
        return self._hom(x, y)

    def _hom_uncached(self, x, y):
        b = self.base
        out = []
        for f0 in b.hom(x.bottom, y.bottom):
            lhs = b.compose(x.a, f0)
            for f in b.hom(x.top, y.top):
                if b.compose(f, y.a) == lhs:
                    out.append(ArrMorphism._trusted(x, y, f, f0))
        return tuple(out)

    def objects(self, bound):
        b = self.base
        return tuple(
            ArrObject(top, bottom, a)
            for top in b.objects(bound)
            for bottom in b.objects(bound)
            for a in b.hom(top, bottom)
        )

    def theta(self, g):
        return self._theta(g)

    def _theta_uncached(self, g):
        b = self.base
        x, y = g.source, g.target
        return tuple(
            Token(DIAGONAL, phi) for phi in b.hom(x.bottom, y.top)
            if b.compose(x.a, phi) == g.f and b.compose(phi, y.a) == g.f0
        )

    def is_null(self, g, phi):
        b = self.base
        d = phi.payload
        x, y = g.source, g.target
        return (
            phi.tag == DIAGONAL
            and (d.dom, d.cod) == (x.bottom, y.top)
            and b.compose(x.a, d) == g.f
            and b.compose(d, y.a) == g.f0
        )

    def _whisker(self, f, phi, h):
        d = phi.payload
        if f is not None:
            d = self.base.compose(f.f0, d)
        if h is not None:
            d = self.base.compose(d, h.f)
        return Token(DIAGONAL, d)

    # colimits, level-wise
    def initial(self):
        zero = self.base.initial()
        return ArrObject(zero, zero, self.base.identity(zero))

    def initial_arrow(self, x):
        b = self.base
        return ArrMorphism(self.initial(), x, b.initial_arrow(x.top), b.initial_arrow(x.bottom))

    def pushout(self, m, n):
        return arr_pushout(self, m, n)

    def copair(self, po, x, y):
        b = self.base
        return ArrMorphism(po.apex, x.target, b.copair(po.top, x.f, y.f),
                           b.copair(po.bottom, x.f0, y.f0))

    # cokernels are constructed, not searched
    def theta_cokernel(self, m):
        return homotopy_cokernel(m, self)

    def factorize(self, t, h, phi):
        return cokernel_factorize(t, h, phi, self)

    def lift(self, t, h, phi):
        return strong_lift(t, h, phi, self)


def arr_category_for(m) -> ArrowCategory:
    return ArrowCategory(base_of(m.f))


# --------------------------------------------------------------------------
# The embeddings of the base


def gamma(x, base=None):
    """``X -> (0, 0_X, X)`` on objects, ``g0 -> (id_0, g0)`` on arrows, same payload on tokens."""
    if isinstance(x, Token):
        return Token(DIAGONAL, x.payload)
    if isinstance(x, int):
        b = base if base is not None else FinSet()
        zero = b.initial()
        return ArrObject(zero, x, b.initial_arrow(x))
    b = base if base is not None else base_of(x)
    return ArrMorphism(gamma(x.dom, b), gamma(x.cod, b), b.identity(b.initial()), x)


def gamma_functor(base=None) -> NullFunctor:
    base = base if base is not None else FinSet()
    return NullFunctor(
        InitialNull(base), ArrowCategory(base),
        lambda x: gamma(x, base), lambda g: gamma(g, base), lambda g, phi: gamma(phi),
        name="Gamma",
    )


def lam(x, base=None):
    """``X -> (X, !, *)`` on objects, ``g -> (g, id_*)`` on arrows, same payload on tokens."""
    if isinstance(x, Token):
        return Token(DIAGONAL, x.payload)
    if isinstance(x, int):
        b = base if base is not None else FinSet()
        return ArrObject(x, b.terminal(), b.terminal_arrow(x))
    b = base if base is not None else base_of(x)
    return ArrMorphism(lam(x.dom, b), lam(x.cod, b), x, b.identity(b.terminal()))


def lambda_functor(base=None) -> NullFunctor:
    base = base if base is not None else FinSet()
    return NullFunctor(
        TerminalNull(base), ArrowCategory(base),
        lambda x: lam(x, base), lambda g: lam(g, base), lambda g, phi: lam(phi),
        name="Lambda",
    )


# --------------------------------------------------------------------------
# Cokernels


@dataclass(frozen=True)
class CokernelData:
    """The pushout behind a cokernel, kept for factorizations."""

    pushout: Any


def homotopy_cokernel(m: ArrMorphism, s: ArrowCategory | None = None) -> CokernelTriple:
    s = s if s is not None else arr_category_for(m)
    b = s.base
    src, tgt = m.source, m.target
    po = b.pushout(src.a, m.f)  # A0 <-a- A -f-> B
    f_prime, a_prime = po.leg_from_B, po.leg_from_C
    bottom_map = b.copair(po, m.f0, tgt.a)
    obj = ArrObject(po.apex, tgt.bottom, bottom_map)
    c = ArrMorphism(tgt, obj, a_prime, b.identity(tgt.bottom))
    gamma_tok = Token(DIAGONAL, f_prime)
    return CokernelTriple(obj, c, gamma_tok, m, CokernelData(po))


def _pushout_of(t: CokernelTriple, s: ArrowCategory):
    if isinstance(t.construction, CokernelData):
        return t.construction.pushout
    return s.base.pushout(t.arrow.source.a, t.arrow.f)


def cokernel_factorize(t: CokernelTriple, h: ArrMorphism, phi: Token,
                       s: ArrowCategory | None = None) -> ArrMorphism:
    """The arrow ``h': C(g) -> D`` with ``c . h' = h`` and ``gamma o h' = phi``."""
    s = s if s is not None else arr_category_for(h)
    g = t.arrow
    if h.source != g.target:
        raise CompositionError(f"{h!r} does not start at the codomain of {g!r}")
    if not s.is_null(s.compose(g, h), phi):
        raise PreconditionError(f"{phi!r} is not a nullhomotopy on g.h")
    po = _pushout_of(t, s)
    top = s.base.copair(po, phi.payload, h.f)
    out = ArrMorphism(t.obj, h.target, top, h.f0)
    if s.compose(t.c, out) != h or s.whisker(None, t.gamma, out) != phi:
        raise UniversalityError("constructed factorization fails its defining equations")
    return out


def strong_lift(t: CokernelTriple, h: ArrMorphism, phi: Token,
                s: ArrowCategory | None = None) -> Token:
    """The token ``phi'`` on ``h`` with ``c o phi' = phi``, for ``g o phi = gamma o h``."""
    s = s if s is not None else arr_category_for(h)
    g = t.arrow
    if h.source != t.obj:
        raise CompositionError(f"{h!r} does not start at the cokernel object")
    if not s.is_null(s.compose(t.c, h), phi):
        raise PreconditionError(f"{phi!r} is not a nullhomotopy on c.h")
    if s.whisker(g, phi, None) != s.whisker(None, t.gamma, h):
        raise PreconditionError("incompatible: g o phi != gamma o h")
    found = lifts(s, t, h, phi)
    if len(found) != 1:
        raise UniversalityError(f"expected exactly one lift, found {len(found)}")
    return found[0]


def cokernel_induced_arrow(s: NullCategory, a, b, f, f0, ta=None, tb=None):
    """``C(f, f0): C(a) -> C(b)`` for a commuting square ``a . f0 = f . b``."""
    if s.compose(a, f0) != s.compose(f, b):
        raise PreconditionError("square does not commute")
    ta = ta if ta is not None else s.theta_cokernel(a)
    tb = tb if tb is not None else s.theta_cokernel(b)
    return s.factorize(ta, s.compose(f0, tb.c), s.whisker(f, tb.gamma, None))


def cokernel_induced_nullhomotopy(s: NullCategory, a, b, f, f0, d, ta=None, tb=None):
    """``C(d)`` on ``C(f, f0)`` with ``c_a o C(d) = d o gamma_b``, for a diagonal ``d``."""
    if s.compose(a, d) != f or s.compose(d, b) != f0:
        raise PreconditionError("d is not a diagonal of the square")
    ta = ta if ta is not None else s.theta_cokernel(a)
    tb = tb if tb is not None else s.theta_cokernel(b)
    induced = cokernel_induced_arrow(s, a, b, f, f0, ta, tb)
    return s.lift(ta, induced, s.whisker(d, tb.gamma, None))


def check_universal(t: CokernelTriple, probe_max: int, s: NullCategory | None = None,
                    strong: bool = True):
    s = s if s is not None else arr_category_for(t.arrow)
    r = check_cokernel(s, t.arrow, t, s.objects(probe_max), strong=strong,
                       name="cokernel-universal")
    r.params["probe_max"] = probe_max
    return r


def cancellation_checks(s: NullCategory, triples, probe_max: int, use_gamma: bool = True):
    from .report import Sweep

    sw = Sweep("cancellation", probe_max=probe_max, use_gamma=use_gamma)
    probes = s.objects(probe_max)
    for t in triples:
        sw.absorb(check_cancellation(s, t, probes, use_gamma=use_gamma), arrow=t.arrow)
    return sw.report()


def find_isomorphism(s: NullCategory, x, y):
    """An arrow ``x -> y`` with a two-sided inverse, or None."""
    for u in s.hom(x, y):
        for v in s.hom(y, x):
            if s.compose(u, v) == s.identity(x) and s.compose(v, u) == s.identity(y):
                return u, v
    return None


def compare_cokernels(s: NullCategory, t1: CokernelTriple, t2: CokernelTriple):
    """The comparison ``t1.obj -> t2.obj`` and its inverse, both induced by universality."""
    u = s.factorize(t1, t2.c, t2.gamma)
    v = s.factorize(t2, t1.c, t1.gamma)
    if s.compose(u, v) != s.identity(t1.obj) or s.compose(v, u) != s.identity(t2.obj):
        raise UniversalityError("comparison maps are not mutually inverse")
    return u, v


# --------------------------------------------------------------------------
# Level-wise pushouts


@dataclass(frozen=True)
class ArrPushout:
    f: ArrMorphism
    g: ArrMorphism
    apex: ArrObject
    leg_from_B: ArrMorphism
    leg_from_C: ArrMorphism
    top: Any
    bottom: Any


def arr_pushout(s: ArrowCategory, m: ArrMorphism, n: ArrMorphism) -> ArrPushout:
    """Pushout of ``B <-m- A -n-> C`` computed separately on both levels."""
    if m.source != n.source:
        raise CompositionError("span legs have different domains")
    b = s.base
    top = b.pushout(m.f, n.f)
    bottom = b.pushout(m.f0, n.f0)
    bb, cc = m.target, n.target
    a = b.copair(top, b.compose(bb.a, bottom.leg_from_B), b.compose(cc.a, bottom.leg_from_C))
    apex = ArrObject(top.apex, bottom.apex, a)
    leg_b = ArrMorphism(bb, apex, top.leg_from_B, bottom.leg_from_B)
    leg_c = ArrMorphism(cc, apex, top.leg_from_C, bottom.leg_from_C)
    return ArrPushout(m, n, apex, leg_b, leg_c, top, bottom)


def copair_diagonals(s: ArrowCategory, po: ArrPushout, phi: Token, psi: Token) -> Token:
    """Level-wise copairing of two diagonals: ``[phi, psi]`` out of the bottom apex."""
    return Token(DIAGONAL, s.base.copair(po.bottom, phi.payload, psi.payload))
