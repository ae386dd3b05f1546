"""Skeletal finite sets: maps as lookup tables, the initial object, pushouts.

Objects are naturals ``n`` standing for ``{0, ..., n-1}``.  Composition is
diagrammatic throughout the package: ``compose_finset(f, g)`` is "f then g".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from scipy.cluster.hierarchy import DisjointSet


class CompositionError(ValueError):
    pass


class NoFactorizationError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FinSetMap:
    dom_size: int
    cod_size: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if self.dom_size < 0 or self.cod_size < 0:
            raise ValueError("object sizes must be natural numbers")
        if len(self.table) != self.dom_size:
            raise ValueError(
                f"table has length {len(self.table)}, expected {self.dom_size}"
            )
        for x in self.table:
            if not 0 <= x < self.cod_size:
                raise ValueError(f"table entry {x} outside codomain {self.cod_size}")

    def __hash__(self):
        # maps are hashed constantly by the memoized hom-set sweeps
        try:
            return self._hash
        except AttributeError:
            h = hash((self.dom_size, self.cod_size, self.table))
            object.__setattr__(self, "_hash", h)
            return h

    @classmethod
    def _trusted(cls, dom_size: int, cod_size: int, table: tuple) -> "FinSetMap":
        """Skip validation; for tables produced by composing valid maps."""
        out = object.__new__(cls)
        object.__setattr__(out, "dom_size", dom_size)
        object.__setattr__(out, "cod_size", cod_size)
        object.__setattr__(out, "table", table)
        return out

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __repr__(self):
        return f"FinSetMap({self.dom_size}->{self.cod_size}, {list(self.table)})"

    @property
    def dom(self) -> int:
        return self.dom_size

    @property
    def cod(self) -> int:
        return self.cod_size


@lru_cache(maxsize=None)
def identity(n: int) -> FinSetMap:
    return FinSetMap(n, n, tuple(range(n)))


def initial_map(n: int) -> FinSetMap:
    """The unique map from the empty set into ``n``."""
    return FinSetMap(0, n, ())


def terminal_map(n: int) -> FinSetMap:
    """The unique map from ``n`` onto the one-point set."""
    return FinSetMap(n, 1, (0,) * n)


@lru_cache(maxsize=1 << 16)
def compose_finset(f: FinSetMap, g: FinSetMap) -> FinSetMap:
    """``f`` then ``g``."""
    if f.cod_size != g.dom_size:
        raise CompositionError(
            f"cannot compose {f!r} then {g!r}: codomain {f.cod_size} "
            f"!= domain {g.dom_size}"
        )
    gt = g.table
    return FinSetMap._trusted(f.dom_size, g.cod_size, tuple(gt[i] for i in f.table))


@dataclass(frozen=True)
class PushoutResult:
    """Pushout of a span ``B <-f- A -g-> C`` with legs ``g'`` and ``f'``."""

    f: FinSetMap
    g: FinSetMap
    apex_size: int
    leg_from_B: FinSetMap
    leg_from_C: FinSetMap

    @property
    def apex(self) -> int:
        return self.apex_size


def pushout_finset(f: FinSetMap, g: FinSetMap) -> PushoutResult:
    """Quotient of ``B + C`` by the equivalence generated by ``f(a) ~ g(a)``.

    Classes are numbered by their least element of ``B + C``, where the
    elements of ``B`` come first.
    """
    if f.dom_size != g.dom_size:
        raise CompositionError(
            f"span legs have different domains: {f.dom_size} and {g.dom_size}"
        )
    nb, nc = f.cod_size, g.cod_size
    ds = DisjointSet(range(nb + nc))
    for a in range(f.dom_size):
        ds.merge(f.table[a], nb + g.table[a])
    label: dict[int, int] = {}
    classes = []
    for x in range(nb + nc):
        root = ds[x]
        if root not in label:
            label[root] = len(label)
        classes.append(label[root])
    k = len(label)
    return PushoutResult(
        f=f,
        g=g,
        apex_size=k,
        leg_from_B=FinSetMap(nb, k, tuple(classes[:nb])),
        leg_from_C=FinSetMap(nc, k, tuple(classes[nb:])),
    )


def copair_finset(p: PushoutResult, x: FinSetMap, y: FinSetMap) -> FinSetMap:
    """The mediating map ``[x, y]`` out of the pushout apex."""
    if x.dom_size != p.f.cod_size or y.dom_size != p.g.cod_size:
        raise CompositionError("cocone legs do not start at the span codomains")
    if x.cod_size != y.cod_size:
        raise CompositionError(
            f"cocone legs have different codomains: {x.cod_size} and {y.cod_size}"
        )
    for a in range(p.f.dom_size):
        if x.table[p.f.table[a]] != y.table[p.g.table[a]]:
            raise NoFactorizationError(
                f"outer square does not commute at element {a}", witness=a
            )
    out = [None] * p.apex_size
    for b in range(x.dom_size):
        out[p.leg_from_B.table[b]] = x.table[b]
    for c in range(y.dom_size):
        out[p.leg_from_C.table[c]] = y.table[c]
    return FinSetMap(p.apex_size, x.cod_size, tuple(out))


@lru_cache(maxsize=None)
def enumerate_finset_maps(n: int, m: int) -> tuple[FinSetMap, ...]:
    """All ``m**n`` maps ``n -> m`` in lexicographic order of their tables."""
    return tuple(
        FinSetMap(n, m, t) for t in itertools.product(range(m), repeat=n)
    )


class FinSet:
    """The category of skeletal finite sets, as a base for arrow categories."""

    name = "finset"

    def dom(self, f: FinSetMap) -> int:
        return f.dom_size

    def cod(self, f: FinSetMap) -> int:
        return f.cod_size

    def compose(self, f, g):
        return compose_finset(f, g)

    def identity(self, n):
        return identity(n)

    def hom(self, x, y):
        return enumerate_finset_maps(x, y)

    def objects(self, bound):
        return tuple(range(bound + 1))

    def initial(self):
        return 0

    def initial_arrow(self, x):
        return initial_map(x)

    def terminal(self):
        return 1

    def terminal_arrow(self, x):
        return terminal_map(x)

    def pushout(self, f, g):
        return pushout_finset(f, g)

    def copair(self, p, x, y):
        return copair_finset(p, x, y)

    def __repr__(self):
        return "FinSet()"

    def __eq__(self, other):
        return isinstance(other, FinSet)

    def __hash__(self):
        return hash("FinSet")
