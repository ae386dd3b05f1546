"""Categories with nullhomotopies, their morphisms, and exhaustive law checkers.

A structure assigns to every arrow ``g`` a finite set ``theta(g)`` of tokens and
lets arrows act on both sides (``whisker``).  Every structure shipped here has
plain morphisms as nullhomotopies, so tokens compare by payload.

Universal properties are checked over a finite probe universe.  A cokernel
check, for instance, verifies that ``h' -> (c . h', gamma o h')`` is a bijection
from ``hom(C(g), D)`` onto the compatible pairs, for every probe object ``D``.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .fincat import CompositionError
from .report import Report, Sweep

EMPTY = "EmptyWitness"
TERMINAL = "TerminalWitness"
DIAGONAL = "Diagonal"
RG_DIAGONAL = "RGDiagonal"
TAGS = (EMPTY, TERMINAL, DIAGONAL, RG_DIAGONAL)


class TagMismatch(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class UniversalityError(RuntimeError):
    """A universal construction found zero or several candidates."""


@dataclass(frozen=True)
class NullhomotopyToken:
    tag: str
    payload: Any

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.tag, self.payload))
            object.__setattr__(self, "_hash", h)
            return h

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown token tag {self.tag!r}")


Token = NullhomotopyToken


@dataclass(frozen=True)
class CokernelTriple:
    """``(C(g), c_g, gamma_g)`` for the arrow ``arrow``.

    The same shape is used for kernels, with ``c`` pointing into the domain.
    """

    obj: Any
    c: Any
    gamma: NullhomotopyToken
    arrow: Any = None
    construction: Any = field(default=None, compare=False, repr=False)


class NullCategory(ABC):
    """A small category with a structure of nullhomotopies.

    Composition is diagrammatic.  ``whisker(f, phi, h)`` maps a token on ``g``
    to one on ``f . g . h``; ``None`` stands for an identity.
    """

    tag: str
    name: str = "nullcat"

    @abstractmethod
    def dom(self, f): ...

    @abstractmethod
    def cod(self, f): ...

    @abstractmethod
    def compose(self, f, g): ...

    @abstractmethod
    def identity(self, x): ...

    @abstractmethod
    def hom(self, x, y) -> tuple: ...

    @abstractmethod
    def objects(self, bound) -> tuple: ...

    @abstractmethod
    def theta(self, g) -> tuple[NullhomotopyToken, ...]: ...

    @abstractmethod
    def is_null(self, g, phi: NullhomotopyToken) -> bool: ...

    @abstractmethod
    def _whisker(self, f, phi: NullhomotopyToken, h) -> NullhomotopyToken: ...

    def compose_all(self, *fs):
        out = fs[0]
        for f in fs[1:]:
            out = self.compose(out, f)
        return out

    def whisker(self, f, phi, h, on=None) -> NullhomotopyToken:
        if phi.tag != self.tag:
            raise TagMismatch(f"{self.name} expects {self.tag} tokens, got {phi.tag}")
        if on is not None:
            if f is not None and self.cod(f) != self.dom(on):
                raise CompositionError(f"left whisker {f!r} does not end at the domain of {on!r}")
            if h is not None and self.dom(h) != self.cod(on):
                raise CompositionError(f"right whisker {h!r} does not start at the codomain of {on!r}")
            if not self.is_null(on, phi):
                raise PreconditionError(f"{phi!r} is not a nullhomotopy on {on!r}")
        return self._whisker(f, phi, h)

    # Colimit structure, where available.
    def initial(self):
        raise NotImplementedError(f"{self.name} has no initial object")

    def initial_arrow(self, x):
        raise NotImplementedError(f"{self.name} has no initial object")

    def pushout(self, f, g):
        raise NotImplementedError(f"{self.name} has no pushouts")

    def copair(self, po, x, y):
        raise NotImplementedError(f"{self.name} has no pushouts")

    # Cokernel capability used by the completion; defaults search hom-sets.
    def theta_cokernel(self, g) -> CokernelTriple:
        raise NotImplementedError(f"{self.name} does not construct cokernels")

    def factorize(self, t: CokernelTriple, h, phi):
        return unique(factorizations(self, t, h, phi), "factorization", h=h, phi=phi)

    def lift(self, t: CokernelTriple, h, phi):
        return unique(lifts(self, t, h, phi), "lift", h=h, phi=phi)


def unique(candidates, what, **context):
    candidates = list(candidates)
    if len(candidates) != 1:
        raise UniversalityError(f"expected exactly one {what}, found {len(candidates)} ({context})")
    return candidates[0]


def factorizations(s: NullCategory, t: CokernelTriple, h, phi):
    """All ``h'`` with ``c . h' = h`` and ``gamma o h' = phi`` (search)."""
    return [
        x for x in s.hom(t.obj, s.cod(h))
        if s.compose(t.c, x) == h and s.whisker(None, t.gamma, x) == phi
    ]


def lifts(s: NullCategory, t: CokernelTriple, h, phi):
    """All ``phi'`` in ``theta(h)`` with ``c o phi' = phi`` (search)."""
    return [psi for psi in s.theta(h) if s.whisker(t.c, psi, None) == phi]


class _OverBase(NullCategory):
    def __init__(self, base):
        self.base = base

    def dom(self, f):
        return self.base.dom(f)

    def cod(self, f):
        return self.base.cod(f)

    def compose(self, f, g):
        return self.base.compose(f, g)

    def identity(self, x):
        return self.base.identity(x)

    def hom(self, x, y):
        return self.base.hom(x, y)

    def objects(self, bound):
        return self.base.objects(bound)

    def initial(self):
        return self.base.initial()

    def initial_arrow(self, x):
        return self.base.initial_arrow(x)

    def pushout(self, f, g):
        return self.base.pushout(f, g)

    def copair(self, po, x, y):
        return self.base.copair(po, x, y)

    def __eq__(self, other):
        return type(self) is type(other) and self.base == other.base

    def __hash__(self):
        return hash((type(self).__name__, self.base))


class InitialNull(_OverBase):
    """Nullhomotopies on ``g: B -> C`` are the ``phi: B -> 0`` with ``phi . 0_C = g``."""

    tag = EMPTY

    def __init__(self, base):
        super().__init__(base)
        self.name = f"{base.name}/empty"

    def __repr__(self):
        return f"InitialNull({self.base!r})"

    def is_null(self, g, phi):
        b = self.base
        f = phi.payload
        return (
            phi.tag == EMPTY
            and b.dom(f) == b.dom(g)
            and b.cod(f) == b.initial()
            and b.compose(f, b.initial_arrow(b.cod(g))) == g
        )

    def theta(self, g):
        b = self.base
        return tuple(
            Token(EMPTY, f) for f in b.hom(b.dom(g), b.initial())
            if b.compose(f, b.initial_arrow(b.cod(g))) == g
        )

    def _whisker(self, f, phi, h):
        if f is None:
            return phi
        return Token(EMPTY, self.base.compose(f, phi.payload))


class TerminalNull(_OverBase):
    """Nullhomotopies on ``g: B -> C`` are the ``phi: * -> C`` with ``!_B . phi = g``."""

    tag = TERMINAL

    def __init__(self, base):
        super().__init__(base)
        self.name = f"{base.name}/terminal"

    def __repr__(self):
        return f"TerminalNull({self.base!r})"

    def is_null(self, g, phi):
        b = self.base
        f = phi.payload
        return (
            phi.tag == TERMINAL
            and b.dom(f) == b.terminal()
            and b.cod(f) == b.cod(g)
            and b.compose(b.terminal_arrow(b.dom(g)), f) == g
        )

    def theta(self, g):
        b = self.base
        bang = b.terminal_arrow(b.dom(g))
        return tuple(
            Token(TERMINAL, f) for f in b.hom(b.terminal(), b.cod(g))
            if b.compose(bang, f) == g
        )

    def _whisker(self, f, phi, h):
        if h is None:
            return phi
        return Token(TERMINAL, self.base.compose(phi.payload, h))


# --------------------------------------------------------------------------
# Probe universes


class ProbeUniverse:
    """All objects up to a bound, with their arrows, indexed for sweeps."""

    def __init__(self, s: NullCategory, bound=None, objects=None):
        self.s = s
        self.bound = bound
        self.objects = tuple(objects) if objects is not None else tuple(s.objects(bound))
        self.arrows = []
        self.into = defaultdict(list)
        self.out = defaultdict(list)
        for x in self.objects:
            for y in self.objects:
                for f in s.hom(x, y):
                    self.arrows.append(f)
                    self.out[x].append(f)
                    self.into[y].append(f)

    def tokens(self):
        for g in self.arrows:
            for phi in self.s.theta(g):
                yield g, phi

    def composable_pairs(self):
        for f in self.arrows:
            for g in self.out[self.s.cod(f)]:
                yield f, g

    def whisker_triples(self):
        for g, phi in self.tokens():
            for f in self.into[self.s.dom(g)]:
                for h in self.out[self.s.cod(g)]:
                    yield f, g, phi, h

    def quintuples(self, mode: str = "generating"):
        """Composable ``(f', f, g, phi, h, h')`` with ``phi`` on ``g``.

        ``exhaustive`` lists every quintuple.  ``generating`` lists every one
        with identities placed so that the associativity law on the family
        implies it on all quintuples: ``(f',f,g,1,1)``, ``(1,1,g,h,h')``,
        ``(1,f,g,1,h)`` and ``(f,1,g,h,1)``.
        """
        s = self.s
        ident = s.identity
        for g, phi in self.tokens():
            b, c = s.dom(g), s.cod(g)
            if mode == "exhaustive":
                for f in self.into[b]:
                    for f2 in self.into[s.dom(f)]:
                        for h in self.out[c]:
                            for h2 in self.out[s.cod(h)]:
                                yield f2, f, g, phi, h, h2
                continue
            for f in self.into[b]:
                a = s.dom(f)
                for f2 in self.into[a]:
                    yield f2, f, g, phi, ident(c), ident(c)
            for h in self.out[c]:
                d = s.cod(h)
                for h2 in self.out[d]:
                    yield ident(b), ident(b), g, phi, h, h2
            for f in self.into[b]:
                for h in self.out[c]:
                    yield ident(s.dom(f)), f, g, phi, ident(c), h
                    yield f, ident(b), g, phi, h, ident(s.cod(h))


# --------------------------------------------------------------------------
# Axioms of a structure


def check_generating_axioms(u: ProbeUniverse, name=None) -> Report:
    """Laws (a) and (b) on a probe universe, swept family by family.

    Checks the left action ``(f'.f) o phi = f' o (f o phi)``, the right action,
    that the two actions commute and agree with the two-sided whisker, and
    the unit law.  Together these give law (a) for every quintuple; the sweep
    reuses the inner whisker across the outer loop.
    """
    s = u.s
    sw = Sweep(name or f"structure-axioms[{s.name}]", bound=u.bound, mode="generating")
    for g, phi in u.tokens():
        b, c = s.dom(g), s.cod(g)
        if not sw.case(s.is_null(g, phi), "token not on g", g=g, phi=phi):
            continue
        unit = s.whisker(s.identity(b), phi, s.identity(c))
        sw.case(unit == phi, "law (b)", g=g, phi=phi, result=unit)
        left = {}
        for f in u.into[b]:
            lf = left[f] = s.whisker(f, phi, None)
            sw.case(s.is_null(s.compose(f, g), lf), "whisker leaves theta(f.g)", f=f, g=g, phi=phi)
            for f2 in u.into[s.dom(f)]:
                lhs = s.whisker(s.compose(f2, f), phi, None)
                rhs = s.whisker(f2, lf, None)
                sw.case(lhs == rhs, "law (a), left action", f2=f2, f=f, g=g, phi=phi,
                        lhs=lhs, rhs=rhs)
        right = {}
        for h in u.out[c]:
            rh = right[h] = s.whisker(None, phi, h)
            sw.case(s.is_null(s.compose(g, h), rh), "whisker leaves theta(g.h)", g=g, phi=phi, h=h)
            for h2 in u.out[s.cod(h)]:
                lhs = s.whisker(None, phi, s.compose(h, h2))
                rhs = s.whisker(None, rh, h2)
                sw.case(lhs == rhs, "law (a), right action", g=g, phi=phi, h=h, h2=h2,
                        lhs=lhs, rhs=rhs)
        for f, lf in left.items():
            fg = s.compose(f, g)
            for h, rh in right.items():
                both = s.whisker(f, phi, h)
                sw.case(s.is_null(s.compose(fg, h), both), "whisker leaves theta(f.g.h)",
                        f=f, g=g, phi=phi, h=h)
                a1 = s.whisker(None, lf, h)
                a2 = s.whisker(f, rh, None)
                sw.case(both == a1 == a2, "law (a), mixed", f=f, g=g, phi=phi, h=h,
                        whisker=both, left_then_right=a1, right_then_left=a2)
    return sw.report()


def check_structure_axioms(s: NullCategory, corpus: Iterable, name=None) -> Report:
    """Laws (a) and (b) of a nullhomotopy structure on the given quintuples."""
    sw = Sweep(name or f"structure-axioms[{s.name}]")
    for f2, f, g, phi, h, h2 in corpus:
        if not sw.case(s.is_null(g, phi), "token not on g", g=g, phi=phi):
            continue
        inner = s.whisker(f, phi, h)
        fgh = s.compose_all(f, g, h)
        sw.case(s.is_null(fgh, inner), "whisker leaves theta(f.g.h)", f=f, g=g, phi=phi, h=h,
                result=inner)
        lhs = s.whisker(s.compose(f2, f), phi, s.compose(h, h2))
        rhs = s.whisker(f2, inner, h2)
        sw.case(lhs == rhs, "law (a)", f2=f2, f=f, g=g, phi=phi, h=h, h2=h2, lhs=lhs, rhs=rhs)
        unit = s.whisker(s.identity(s.dom(g)), phi, s.identity(s.cod(g)))
        sw.case(unit == phi, "law (b)", g=g, phi=phi, result=unit)
    return sw.report()


def check_reduced_interchange(s: NullCategory, pairs: Iterable, name=None) -> Report:
    """``alpha o g = f o beta`` for all consecutive ``alpha`` on ``f``, ``beta`` on ``g``."""
    sw = Sweep(name or f"reduced-interchange[{s.name}]")
    for f, g in pairs:
        for alpha in s.theta(f):
            right = s.whisker(None, alpha, g)
            for beta in s.theta(g):
                left = s.whisker(f, beta, None)
                sw.case(right == left, "alpha o g != f o beta", f=f, g=g, alpha=alpha, beta=beta,
                        alpha_g=right, f_beta=left)
    return sw.report()


# --------------------------------------------------------------------------
# Morphisms, 2-morphisms, natural nullhomotopies


@dataclass
class NullFunctor:
    """A functor with, for each arrow ``g``, a map ``theta(g) -> theta(F g)``."""

    source: NullCategory
    target: NullCategory
    on_objects: Callable
    on_arrows: Callable
    on_tokens: Callable | None = None  # (g, phi) -> token
    name: str = "F"

    def __call__(self, x):
        return self.on_arrows(x)

    def obj(self, x):
        return self.on_objects(x)

    def arr(self, f):
        return self.on_arrows(f)

    def tok(self, g, phi):
        if self.on_tokens is None:
            raise NotImplementedError(f"{self.name} carries no nullhomotopy map")
        return self.on_tokens(g, phi)


def identity_functor(s: NullCategory) -> NullFunctor:
    return NullFunctor(s, s, lambda x: x, lambda f: f, lambda g, phi: phi, name=f"id[{s.name}]")


def compose_functors(F: NullFunctor, G: NullFunctor) -> NullFunctor:
    """``F`` then ``G``."""
    tok = None
    if F.on_tokens is not None and G.on_tokens is not None:
        def tok(g, phi):
            return G.tok(F.arr(g), F.tok(g, phi))
    return NullFunctor(
        F.source, G.target,
        lambda x: G.obj(F.obj(x)),
        lambda f: G.arr(F.arr(f)),
        tok,
        name=f"{F.name}.{G.name}",
    )


def check_null_functor(F: NullFunctor, corpus: ProbeUniverse, name=None) -> Report:
    """Functor laws, typing of ``F_g``, and ``F(f o phi o h) = F f o F phi o F h``."""
    S, T = F.source, F.target
    sw = Sweep(name or f"null-functor[{F.name}]", bound=corpus.bound)
    for x in corpus.objects:
        sw.case(F.arr(S.identity(x)) == T.identity(F.obj(x)), "identity not preserved", object=x)
    for f in corpus.arrows:
        image = F.arr(f)
        sw.case(T.dom(image) == F.obj(S.dom(f)) and T.cod(image) == F.obj(S.cod(f)),
                "arrow image has wrong endpoints", arrow=f, image=image)
    for f, g in corpus.composable_pairs():
        sw.case(F.arr(S.compose(f, g)) == T.compose(F.arr(f), F.arr(g)),
                "composite not preserved", f=f, g=g)
    if F.on_tokens is None:
        return sw.report(tokens="skipped")
    for g, phi in corpus.tokens():
        sw.case(T.is_null(F.arr(g), F.tok(g, phi)), "F(phi) not on F(g)", g=g, phi=phi)
    for f, g, phi, h in corpus.whisker_triples():
        lhs = F.tok(S.compose_all(f, g, h), S.whisker(f, phi, h))
        try:
            rhs = T.whisker(F.arr(f), F.tok(g, phi), F.arr(h))
        except CompositionError as exc:
            # an ill-typed image token cannot be whiskered at all
            sw.case(False, f"whiskering not defined: {exc}", f=f, g=g, phi=phi, h=h)
            continue
        sw.case(lhs == rhs, "whiskering not preserved", f=f, g=g, phi=phi, h=h, lhs=lhs, rhs=rhs)
    return sw.report()


@dataclass
class NullTwoMorphism:
    """A natural transformation ``F => G`` compatible with nullhomotopies."""

    source: NullFunctor
    target: NullFunctor
    component: Callable
    name: str = "alpha"

    def __call__(self, x):
        return self.component(x)


def check_two_morphism(alpha: NullTwoMorphism, corpus: ProbeUniverse, tokens: bool = True,
                       name=None) -> Report:
    """Naturality and ``alpha_B o G(phi) = F(phi) o alpha_C``."""
    F, G = alpha.source, alpha.target
    T = F.target
    sw = Sweep(name or f"two-morphism[{alpha.name}]", bound=corpus.bound)
    for x in corpus.objects:
        a = alpha(x)
        sw.case(T.dom(a) == F.obj(x) and T.cod(a) == G.obj(x), "component has wrong endpoints",
                object=x, component=a)
    for g in corpus.arrows:
        b, c = corpus.s.dom(g), corpus.s.cod(g)
        sw.case(T.compose(F.arr(g), alpha(c)) == T.compose(alpha(b), G.arr(g)),
                "naturality square fails", arrow=g)
    if tokens:
        for g, phi in corpus.tokens():
            b, c = corpus.s.dom(g), corpus.s.cod(g)
            lhs = T.whisker(alpha(b), G.tok(g, phi), None)
            rhs = T.whisker(None, F.tok(g, phi), alpha(c))
            sw.case(lhs == rhs, "nullhomotopy compatibility fails", arrow=g, phi=phi,
                    lhs=lhs, rhs=rhs)
    return sw.report()


@dataclass
class NaturalNullhomotopy:
    """Arrows ``tau_a(D): F D -> G D`` with tokens ``tau_n(D)`` on them."""

    source: NullFunctor
    target: NullFunctor
    arrows: Callable
    tokens: Callable


def check_natural_nullhomotopy(tau: NaturalNullhomotopy, corpus: ProbeUniverse) -> Report:
    F, G = tau.source, tau.target
    T = F.target
    sw = Sweep("natural-nullhomotopy", bound=corpus.bound)
    for x in corpus.objects:
        sw.case(T.is_null(tau.arrows(x), tau.tokens(x)), "token not on its arrow", object=x)
    for g in corpus.arrows:
        d, d2 = corpus.s.dom(g), corpus.s.cod(g)
        sw.case(T.compose(F.arr(g), tau.arrows(d2)) == T.compose(tau.arrows(d), G.arr(g)),
                "arrow family not natural", arrow=g)
        lhs = T.whisker(None, tau.tokens(d), G.arr(g))
        rhs = T.whisker(F.arr(g), tau.tokens(d2), None)
        sw.case(lhs == rhs, "token family not natural", arrow=g, lhs=lhs, rhs=rhs)
    return sw.report()


# --------------------------------------------------------------------------
# Strong colimits


def check_strong_initial(s: NullCategory, objects: Iterable, name=None) -> Report:
    """Exactly one arrow out of the initial object, carrying exactly one token."""
    sw = Sweep(name or f"strong-initial[{s.name}]")
    zero = s.initial()
    counts = {}
    for x in objects:
        arrows = s.hom(zero, x)
        if not sw.case(len(arrows) == 1, "initial object has the wrong number of arrows",
                       object=x, count=len(arrows)):
            continue
        n = len(s.theta(arrows[0]))
        counts[repr(x)] = n
        sw.case(n == 1, "initial arrow carries the wrong number of tokens", object=x, count=n)
    return sw.report(token_counts=counts)


def strong_pushout_pair(s: NullCategory, po, x, y, phi, psi):
    """The unique token ``[phi, psi]`` on ``[x, y]`` restricting to ``phi`` and ``psi``."""
    if s.whisker(po.f, phi, None) != s.whisker(po.g, psi, None):
        raise PreconditionError("incompatible pair: f o phi != g o psi")
    xy = s.copair(po, x, y)
    found = [
        chi for chi in s.theta(xy)
        if s.whisker(po.leg_from_B, chi, None) == phi and s.whisker(po.leg_from_C, chi, None) == psi
    ]
    if len(found) != 1:
        raise UniversalityError(f"pushout is not strong here: {len(found)} candidate tokens")
    return found[0]


def check_strong_pushout(s: NullCategory, po, probes: Iterable, name=None) -> Report:
    """The square ``po`` is a pushout, and a strong one, relative to ``probes``.

    ``po`` needs ``f``, ``g``, ``apex``, ``leg_from_B`` and ``leg_from_C``.
    """
    sw = Sweep(name or f"strong-pushout[{s.name}]")
    f, g, gp, fp = po.f, po.g, po.leg_from_B, po.leg_from_C
    if not sw.case(s.compose(f, gp) == s.compose(g, fp), "square does not commute"):
        return sw.report()
    b, c = s.cod(f), s.cod(g)
    for d in probes:
        hits = defaultdict(list)
        for u in s.hom(po.apex, d):
            hits[(s.compose(gp, u), s.compose(fp, u))].append(u)
        gys = [(y, s.compose(g, y)) for y in s.hom(c, d)]
        for x in s.hom(b, d):
            fx = s.compose(f, x)
            for y, gy in gys:
                if gy == fx:
                    n = len(hits.get((x, y), ()))
                    sw.case(n == 1, "cocone does not factor uniquely", probe=d, x=x, y=y, count=n)
        for (x, y), us in hits.items():
            if len(us) != 1:
                continue
            lifted = defaultdict(list)
            for chi in s.theta(us[0]):
                lifted[(s.whisker(gp, chi, None), s.whisker(fp, chi, None))].append(chi)
            psis = [(psi, s.whisker(g, psi, None)) for psi in s.theta(y)]
            for phi in s.theta(x):
                fphi = s.whisker(f, phi, None)
                for psi, gpsi in psis:
                    if gpsi == fphi:
                        n = len(lifted.get((phi, psi), ()))
                        sw.case(n == 1, "compatible pair does not lift uniquely", probe=d,
                                x=x, y=y, phi=phi, psi=psi, count=n)
    return sw.report()


# --------------------------------------------------------------------------
# Cokernels and kernels


def check_cokernel(s: NullCategory, g, t: CokernelTriple, probes: Iterable, strong: bool = True,
                   name=None) -> Report:
    """Universal property of ``t`` as a cokernel of ``g``, plus strongness."""
    sw = Sweep(name or f"cokernel[{s.name}]")
    c, gamma = t.c, t.gamma
    if not sw.case(s.dom(c) == s.cod(g) and s.cod(c) == t.obj, "c has the wrong endpoints", c=c):
        return sw.report()
    if not sw.case(s.is_null(s.compose(g, c), gamma), "gamma is not on g.c", gamma=gamma):
        return sw.report()
    for d in probes:
        hits = defaultdict(list)
        for x in s.hom(t.obj, d):
            hits[(s.compose(c, x), s.whisker(None, gamma, x))].append(x)
        for h in s.hom(s.cod(g), d):
            for phi in s.theta(s.compose(g, h)):
                n = len(hits.get((h, phi), ()))
                sw.case(n == 1, "triple does not factor uniquely", probe=d, h=h, phi=phi, count=n)
        if not strong:
            continue
        for x in s.hom(t.obj, d):
            wanted = s.whisker(None, gamma, x)
            lifted = defaultdict(list)
            for psi in s.theta(x):
                lifted[s.whisker(c, psi, None)].append(psi)
            for phi in s.theta(s.compose(c, x)):
                if s.whisker(g, phi, None) != wanted:
                    continue
                n = len(lifted.get(phi, ()))
                sw.case(n == 1, "compatible nullhomotopy does not lift uniquely", probe=d, h=x,
                        phi=phi, count=n)
    return sw.report()


def check_kernel(s: NullCategory, g, t: CokernelTriple, probes: Iterable, strong: bool = True,
                 name=None) -> Report:
    """Dual of :func:`check_cokernel`: ``t.c`` points from ``t.obj`` into ``dom(g)``."""
    sw = Sweep(name or f"kernel[{s.name}]")
    k, kappa = t.c, t.gamma
    if not sw.case(s.cod(k) == s.dom(g) and s.dom(k) == t.obj, "k has the wrong endpoints", k=k):
        return sw.report()
    if not sw.case(s.is_null(s.compose(k, g), kappa), "kappa is not on k.g", kappa=kappa):
        return sw.report()
    for d in probes:
        hits = defaultdict(list)
        for x in s.hom(d, t.obj):
            hits[(s.compose(x, k), s.whisker(x, kappa, None))].append(x)
        for h in s.hom(d, s.dom(g)):
            for phi in s.theta(s.compose(h, g)):
                n = len(hits.get((h, phi), ()))
                sw.case(n == 1, "triple does not factor uniquely", probe=d, h=h, phi=phi, count=n)
        if not strong:
            continue
        for x in s.hom(d, t.obj):
            wanted = s.whisker(x, kappa, None)
            lifted = defaultdict(list)
            for psi in s.theta(x):
                lifted[s.whisker(None, psi, k)].append(psi)
            for phi in s.theta(s.compose(x, k)):
                if s.whisker(None, phi, g) != wanted:
                    continue
                n = len(lifted.get(phi, ()))
                sw.case(n == 1, "compatible nullhomotopy does not lift uniquely", probe=d, h=x,
                        phi=phi, count=n)
    return sw.report()


def check_cancellation(s: NullCategory, t: CokernelTriple, probes: Iterable,
                       use_gamma: bool = True, name=None) -> Report:
    """Arrows out of ``C(f)`` are determined by ``(c . -, gamma o -)``; tokens by ``c o -``."""
    sw = Sweep(name or f"cancellation[{s.name}]")
    for d in probes:
        seen = {}
        for x in s.hom(t.obj, d):
            key = (s.compose(t.c, x), s.whisker(None, t.gamma, x)) if use_gamma else s.compose(t.c, x)
            other = seen.setdefault(key, x)
            sw.case(other == x, "distinct arrows agree after c and gamma", probe=d, g=other, h=x)
            seen_tok = {}
            for psi in s.theta(x):
                other_tok = seen_tok.setdefault(s.whisker(t.c, psi, None), psi)
                sw.case(other_tok == psi, "distinct tokens agree after c", probe=d, arrow=x,
                        phi=other_tok, psi=psi)
    return sw.report()


def pairs_product(*iters):
    return itertools.product(*iters)
