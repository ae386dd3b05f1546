"""Finite corpora of functors and natural transformations used by the checks.

``copy_functor(n, m, s)`` sends a finite set ``X`` to the arrow
``n x X -> m x X`` that moves copy ``i`` to copy ``s(i)``.  Such functors
preserve finite colimits (they do so level-wise), and pairs of copy maps
``(t, u)`` with ``s . u = t . s'`` give natural transformations between them.
"""

from __future__ import annotations

import itertools

from .arrowcat import ArrMorphism, ArrObject, ArrowCategory
from .fincat import FinSet, FinSetMap, compose_finset, enumerate_finset_maps, initial_map
from .nullhomotopy import DIAGONAL, InitialNull, NullFunctor, NullTwoMorphism, Token


def _copies(s: FinSetMap, x: int) -> FinSetMap:
    """``s x X``: copy ``i`` of ``X`` goes to copy ``s(i)``."""
    return FinSetMap(s.dom * x, s.cod * x, tuple(s(i) * x + e for i in range(s.dom) for e in range(x)))


def _levelwise(n: int, g: FinSetMap) -> FinSetMap:
    """``n x g``: ``g`` applied inside each of ``n`` copies."""
    y = g.cod
    return FinSetMap(n * g.dom, n * y, tuple(i * y + g(e) for i in range(n) for e in range(g.dom)))


def copy_functor(n: int, m: int, s: FinSetMap) -> NullFunctor:
    if (s.dom, s.cod) != (n, m):
        raise ValueError(f"copy map must go {n} -> {m}")
    base = FinSet()

    def on_objects(x):
        return ArrObject(n * x, m * x, _copies(s, x))

    def on_arrows(g):
        return ArrMorphism(on_objects(g.dom), on_objects(g.cod), _levelwise(n, g), _levelwise(m, g))

    def on_tokens(g, phi):
        # tokens only live on arrows out of the empty set, whose image has empty bottom
        return Token(DIAGONAL, initial_map(n * g.cod))

    return NullFunctor(InitialNull(base), ArrowCategory(base), on_objects, on_arrows, on_tokens,
                       name=f"copy[{n},{m},{list(s.table)}]")


def functor_corpus(max_copies: int = 2):
    """``(n, m, s, F)`` for every copy functor with ``n, m <= max_copies``."""
    out = []
    for n in range(max_copies + 1):
        for m in range(max_copies + 1):
            for s in enumerate_finset_maps(n, m):
                out.append((n, m, s, copy_functor(n, m, s)))
    return out


def copy_transformation(F, G, t: FinSetMap, u: FinSetMap, name="lambda") -> NullTwoMorphism:
    """Components ``(t x X, u x X): F X -> G X``."""

    def component(x):
        return ArrMorphism(F.obj(x), G.obj(x), _copies(t, x), _copies(u, x))

    return NullTwoMorphism(F, G, component, name=name)


def transformation_corpus(max_copies: int = 2, limit: int | None = None):
    """All copy transformations ``(t, u)`` between corpus functors, in a fixed order."""
    functors = functor_corpus(max_copies)
    out = []
    for (n, m, s, F), (n2, m2, s2, G) in itertools.product(functors, functors):
        for t in enumerate_finset_maps(n, n2):
            for u in enumerate_finset_maps(m, m2):
                if compose_finset(s, u) == compose_finset(t, s2):
                    name = f"({list(t.table)},{list(u.table)}): {F.name} => {G.name}"
                    out.append(copy_transformation(F, G, t, u, name=name))
                    if limit is not None and len(out) >= limit:
                        return out
    return out


# --------------------------------------------------------------------------
# A functor on Arr(FinSet) isomorphic, but not equal, to the identity


def reversal(n: int) -> FinSetMap:
    return FinSetMap(n, n, tuple(range(n - 1, -1, -1)))


def relabel_functor(s: ArrowCategory | None = None) -> NullFunctor:
    """``(A, a, A0) -> (A, rho . a, A0)`` with ``rho`` reversing ``A``; arrows are conjugated."""
    s = s if s is not None else ArrowCategory(FinSet())

    def on_objects(x):
        return ArrObject(x.top, x.bottom, compose_finset(reversal(x.top), x.a))

    def on_arrows(m):
        f = compose_finset(compose_finset(reversal(m.source.top), m.f), reversal(m.target.top))
        return ArrMorphism(on_objects(m.source), on_objects(m.target), f, m.f0)

    def on_tokens(m, phi):
        return Token(DIAGONAL, compose_finset(phi.payload, reversal(m.target.top)))

    return NullFunctor(s, s, on_objects, on_arrows, on_tokens, name="relabel")


def relabel_unit(M: NullFunctor, identity: NullFunctor) -> NullTwoMorphism:
    """``(rho, id): X -> M X``, a natural isomorphism from the identity to ``M``."""

    def component(x):
        return ArrMorphism(x, M.obj(x), reversal(x.top), FinSet().identity(x.bottom))

    return NullTwoMorphism(identity, M, component, name="rho")
