"""Reflexive graphs over Mat(F_p), normalization and denormalization.

A reflexive graph is ``d, c: A1 -> A0`` with a common section ``i``.  The
denormalization of ``a: A -> A0`` is the graph on ``A0 + A`` (``A0`` first)
with ``d = pi_1``, ``c = [id; a]`` and ``i = i_1``.  Normalization takes the
canonical kernel ``k_d`` of ``d`` and returns the arrow ``k_d . c``.

All maps are matrices acting on column vectors; ``x . y`` means ``y @ x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import matfp
from .arrowcat import ArrMorphism, ArrObject, ArrowCategory
from .fincat import CompositionError
from .matfp import MatFp, Mat, block_diag, eye, hstack, kernel, solve, vstack, zeros
from .nullhomotopy import (
    RG_DIAGONAL,
    CokernelTriple,
    NullCategory,
    Token,
    check_cokernel,
    check_kernel,
)
from .report import Report, Sweep, combine


def then(x: MatFp, y: MatFp) -> MatFp:
    return matfp.compose(x, y)


@dataclass(frozen=True)
class RGObject:
    A1_dim: int
    A0_dim: int
    d: MatFp
    c: MatFp
    i: MatFp

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.A1_dim, self.A0_dim, self.d, self.c, self.i))
            object.__setattr__(self, "_hash", h)
            return h

    def __post_init__(self):
        n1, n0 = self.A1_dim, self.A0_dim
        for name, m, shape in (("d", self.d, (n0, n1)), ("c", self.c, (n0, n1)),
                               ("i", self.i, (n1, n0))):
            if (m.rows, m.cols) != shape:
                raise ValueError(f"{name} has shape {m.rows}x{m.cols}, expected {shape[0]}x{shape[1]}")
        one = eye(self.p, n0)
        if then(self.i, self.d) != one or then(self.i, self.c) != one:
            raise ValueError("i is not a common section of d and c")

    @property
    def p(self) -> int:
        return self.d.p

    def __repr__(self):
        return f"RG({self.A1_dim}=>{self.A0_dim}, d={self.d.entries}, c={self.c.entries})"


@dataclass(frozen=True)
class RGMorphism:
    source: RGObject
    target: RGObject
    f1: MatFp
    f0: MatFp

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.source, self.target, self.f1, self.f0))
            object.__setattr__(self, "_hash", h)
            return h

    def __post_init__(self):
        x, y = self.source, self.target
        if (self.f1.cols, self.f1.rows) != (x.A1_dim, y.A1_dim):
            raise CompositionError(f"f1 does not go {x.A1_dim} -> {y.A1_dim}")
        if (self.f0.cols, self.f0.rows) != (x.A0_dim, y.A0_dim):
            raise CompositionError(f"f0 does not go {x.A0_dim} -> {y.A0_dim}")
        bad = rg_morphism_defects(x, y, self.f1, self.f0)
        if bad:
            raise ValueError(f"not a morphism of reflexive graphs: {', '.join(bad)} fail")

    @classmethod
    def _trusted(cls, source, target, f1, f0) -> "RGMorphism":
        out = object.__new__(cls)
        for k, v in (("source", source), ("target", target), ("f1", f1), ("f0", f0)):
            object.__setattr__(out, k, v)
        return out

    def __repr__(self):
        return f"RGMor({self.f1.entries}, {self.f0.entries})"


def rg_morphism_defects(x: RGObject, y: RGObject, f1: MatFp, f0: MatFp) -> list[str]:
    bad = []
    if then(x.i, f1) != then(f0, y.i):
        bad.append("i.f1 = f0.i")
    if then(x.d, f0) != then(f1, y.d):
        bad.append("d.f0 = f1.d")
    if then(x.c, f0) != then(f1, y.c):
        bad.append("c.f0 = f1.c")
    return bad


def _rg_residual(x: RGObject, y: RGObject):
    def residual(ms):
        f1, f0 = ms
        return (f1 @ x.i - y.i @ f0, f0 @ x.d - y.d @ f1, f0 @ x.c - y.c @ f1)
    return residual


@lru_cache(maxsize=1 << 14)
def induced_on_kernels(m: RGMorphism) -> MatFp:
    """``K(f1)``: the unique map with ``K(f1) . k_d = k_d . f1``."""
    ka, kb = mat_kernel(m.source.d), mat_kernel(m.target.d)
    return solve(kb, m.f1 @ ka)


class ReflexiveGraphs(NullCategory):
    """``RG(Mat(F_p))``; a nullhomotopy on ``(f1, f0): A -> B`` is ``phi: A0 -> B1`` with
    ``phi . d = 0``, ``phi . c = f0`` and ``k_d . c . phi = K(f1) . k_d``."""

    tag = RG_DIAGONAL

    def __init__(self, p: int = 2):
        self.base = Mat(p)
        self.p = p
        self.name = f"rg[mat{p}]"
        self._hom = lru_cache(maxsize=None)(self._hom_uncached)
        self._theta = lru_cache(maxsize=None)(self._theta_uncached)

    def __eq__(self, other):
        return isinstance(other, ReflexiveGraphs) and other.p == self.p

    def __hash__(self):
        return hash(("ReflexiveGraphs", self.p))

    def dom(self, m):
        return m.source

    def cod(self, m):
        return m.target

    def compose(self, m, n):
        if m.target != n.source:
            raise CompositionError(f"cannot compose {m!r} then {n!r}")
        return RGMorphism._trusted(m.source, n.target, then(m.f1, n.f1), then(m.f0, n.f0))

    def identity(self, x):
        return RGMorphism._trusted(x, x, eye(self.p, x.A1_dim), eye(self.p, x.A0_dim))

    def hom(self, x, y):
        return self._hom(x, y)

    def _hom_uncached(self, x, y):
        shapes = ((y.A1_dim, x.A1_dim), (y.A0_dim, x.A0_dim))
        sols = matfp.affine_solutions(self.p, shapes, _rg_residual(x, y))
        return tuple(RGMorphism._trusted(x, y, f1, f0) for f1, f0 in sols)

    def objects(self, bound):
        return rg_objects(self.p, bound)

    def theta(self, g):
        return self._theta(g)

    def _theta_uncached(self, g):
        return tuple(Token(RG_DIAGONAL, phi) for phi in rg_nullhomotopies(g))

    def is_null(self, g, phi):
        if phi.tag != RG_DIAGONAL:
            return False
        x, y = g.source, g.target
        m = phi.payload
        if (m.cols, m.rows) != (x.A0_dim, y.A1_dim):
            return False
        return all(r.is_zero() for r in _rg_null_residual(g)((m,)))

    def _whisker(self, f, phi, h):
        m = phi.payload
        if f is not None:
            m = then(f.f0, m)
        if h is not None:
            m = then(m, h.f1)
        return Token(RG_DIAGONAL, m)


def _rg_null_residual(g: RGMorphism):
    x, y = g.source, g.target
    ka, kb = mat_kernel(x.d), mat_kernel(y.d)
    kf = induced_on_kernels(g)

    def residual(ms):
        (phi,) = ms
        return (y.d @ phi, y.c @ phi - g.f0, phi @ x.c @ ka - kb @ kf)
    return residual


def rg_nullhomotopies(g: RGMorphism) -> list[MatFp]:
    """Every ``phi: A0 -> B1`` satisfying the three nullhomotopy equations."""
    x, y = g.source, g.target
    sols = matfp.affine_solutions(x.p, ((y.A1_dim, x.A0_dim),), _rg_null_residual(g),
                                  linear_key=("rg-null", x, y))
    return [phi for (phi,) in sols]


def alternative_reading_count(g: RGMorphism) -> int | None:
    """Solutions when the third equation uses the target graph's ``c``; None if ill-typed.

    ``k_d . c . phi`` with ``k_d`` of the source and ``c`` of the target only
    composes when ``A1 = B1`` and ``B0 = A0``.
    """
    x, y = g.source, g.target
    if x.A1_dim != y.A1_dim or x.A0_dim != y.A0_dim:
        return None
    ka, kb = mat_kernel(x.d), mat_kernel(y.d)
    kf = induced_on_kernels(g)

    def residual(ms):
        (phi,) = ms
        return (y.d @ phi, y.c @ phi - g.f0, phi @ y.c @ ka - kb @ kf)

    return len(matfp.affine_solutions(x.p, ((y.A1_dim, x.A0_dim),), residual,
                                      linear_key=("rg-null-target-c", x, y)))


@lru_cache(maxsize=None)
def rg_objects(p: int, bound: int) -> tuple[RGObject, ...]:
    """Every reflexive graph with ``A1, A0 <= bound``, ordered by dims then entries."""
    out = []
    for n1 in range(bound + 1):
        for n0 in range(min(n1, bound) + 1):
            one = eye(p, n0)
            for i in matfp.enumerate_matrices(p, n1, n0):
                sections = matfp.affine_solutions(p, ((n0, n1),), lambda ms, i=i: (ms[0] @ i - one,))
                for (d,) in sections:
                    for (c,) in sections:
                        out.append(RGObject(n1, n0, d, c, i))
    return tuple(out)


# --------------------------------------------------------------------------
# Normalization and denormalization


def mat_kernel(m: MatFp) -> MatFp:
    """Canonical kernel basis: RREF pivots ascending, one column per free variable."""
    return kernel(m)


@dataclass(frozen=True)
class NormalizedArrow:
    ker_basis: MatFp
    arrow: MatFp
    source: RGObject | None = field(default=None, compare=False, repr=False)

    @property
    def obj(self) -> ArrObject:
        return ArrObject(self.arrow.cols, self.arrow.rows, self.arrow)


def normalize(g: RGObject) -> NormalizedArrow:
    k = mat_kernel(g.d)
    return NormalizedArrow(k, then(k, g.c), g)


def normalize_morphism(m: RGMorphism) -> ArrMorphism:
    return ArrMorphism(normalize(m.source).obj, normalize(m.target).obj, induced_on_kernels(m), m.f0)


def _as_arrow(x) -> MatFp:
    if isinstance(x, ArrObject):
        return x.a
    if isinstance(x, NormalizedArrow):
        return x.arrow
    return x


def denormalize(x) -> RGObject:
    """``(A, a, A0) -> (A0 + A, pi_1, [id; a], i_1)``."""
    return _denormalize(_as_arrow(x))


@lru_cache(maxsize=None)
def _denormalize(a: MatFp) -> RGObject:
    p, n, n0 = a.p, a.cols, a.rows
    dims = (n0, n)
    return RGObject(n0 + n, n0, matfp.projection(p, dims, 0), hstack(eye(p, n0), a),
                    matfp.injection(p, dims, 0))


def denormalize_morphism(m: ArrMorphism) -> RGMorphism:
    """``(f, f0) -> (f0 + f, f0)``."""
    return RGMorphism(denormalize(m.source), denormalize(m.target), block_diag(m.f0, m.f), m.f0)


def denormalize_token(m: ArrMorphism, phi: Token) -> Token:
    """A diagonal ``phi: A0 -> B`` becomes ``<0; phi>: A0 -> B0 + B``."""
    d = phi.payload
    return Token(RG_DIAGONAL, vstack(zeros(d.p, m.target.bottom, d.cols), d))


@dataclass(frozen=True)
class DKIso:
    delta: MatFp
    forward: MatFp
    backward: MatFp
    graph: RGObject
    renormalized: RGObject


def dk_iso(g: RGObject) -> DKIso:
    """``<d; delta>: A1 -> A0 + Ker(d)`` and its inverse ``[i; k_d]``.

    ``delta`` is the unique map with ``delta . k_d = -d . i + id``.
    """
    p = g.p
    k = mat_kernel(g.d)
    delta = solve(k, eye(p, g.A1_dim) - g.i @ g.d)
    forward = vstack(g.d, delta)
    backward = hstack(g.i, k)
    if then(forward, backward) != eye(p, g.A1_dim) or then(backward, forward) != eye(p, forward.rows):
        raise ArithmeticError(f"<d; delta> and [i; k_d] are not inverse for {g!r}")
    dkg = denormalize(normalize(g).arrow)
    bad = rg_morphism_defects(g, dkg, forward, eye(p, g.A0_dim))
    if bad:
        raise ArithmeticError(f"<d; delta> is not a graph morphism into D(K(g)): {bad}")
    return DKIso(delta, forward, backward, g, dkg)


# --------------------------------------------------------------------------
# The internal groupoid structure on D(a)


def groupoid_compose(a: MatFp) -> MatFp:
    """``id + nabla: A0 + A + A -> A0 + A``."""
    p, n, n0 = a.p, a.cols, a.rows
    return vstack(
        hstack(eye(p, n0), zeros(p, n0, n), zeros(p, n0, n)),
        hstack(zeros(p, n, n0), eye(p, n), eye(p, n)),
    )


def composable_pair(g: RGObject, u: MatFp, v: MatFp) -> MatFp:
    """``<u, v>: X -> A1 x_{A0} A1`` for ``u . c = v . d``, in coordinates ``(x0, x, y)``.

    For ``D(a)`` the pullback of ``c`` and ``d`` is ``A0 + A + A``: a pair of
    composable arrows is determined by the first arrow and the ``A`` part of the second.
    """
    if then(u, g.c) != then(v, g.d):
        raise ValueError("pair is not composable: u . c != v . d")
    return _pair_coords(g, u, v)


def _pair_coords(g: RGObject, u: MatFp, v: MatFp) -> MatFp:
    rows = u.entries + v.entries[g.A0_dim:]
    return MatFp._trusted(u.p, len(rows), u.cols, rows)


def check_groupoid_axioms(a: MatFp, name=None) -> Report:
    """Source, target, units, associativity and inverses of ``id + nabla`` on ``D(a)``."""
    p, n, n0 = a.p, a.cols, a.rows
    g = denormalize(a)
    m = groupoid_compose(a)
    sw = Sweep(name or "groupoid", p=p, rows=n0, cols=n)
    one = eye(p, g.A1_dim)
    pdims = (n0, n, n)
    x0, x, y = (matfp.projection(p, pdims, k) for k in range(3))
    first = vstack(x0, x)
    second = vstack(x0 + a @ x, y)
    pair = composable_pair(g, first, second)
    sw.case(pair == eye(p, n0 + 2 * n), "projections do not recover the pullback coordinates")
    sw.case(then(m, g.d) == then(first, g.d), "source of a composite is not the source of the first")
    sw.case(then(m, g.c) == then(second, g.c), "target of a composite is not the target of the second")

    ci, di = then(g.c, g.i), then(g.d, g.i)
    sw.case(then(composable_pair(g, one, ci), m) == one, "right unit law fails")
    sw.case(then(composable_pair(g, di, one), m) == one, "left unit law fails")

    tdims = (n0, n, n, n)
    t0, tx, ty, tz = (matfp.projection(p, tdims, k) for k in range(4))
    q1 = vstack(t0, tx)
    q2 = vstack(t0 + a @ tx, ty)
    q3 = vstack(t0 + a @ tx + a @ ty, tz)
    left = then(composable_pair(g, then(composable_pair(g, q1, q2), m), q3), m)
    right = then(composable_pair(g, q1, then(composable_pair(g, q2, q3), m)), m)
    sw.case(left == right, "composition is not associative")

    inv = vstack(hstack(eye(p, n0), a), hstack(zeros(p, n, n0), -eye(p, n)))
    sw.case(then(inv, g.d) == g.c and then(inv, g.c) == g.d, "inverse does not swap source and target")
    sw.case(then(composable_pair(g, one, inv), m) == di, "x . x^-1 is not an identity")
    sw.case(then(composable_pair(g, inv, one), m) == ci, "x^-1 . x is not an identity")
    return sw.report(matrix=m)


# --------------------------------------------------------------------------
# The two embeddings of Mat(F_p) and the cokernel = kernel square


def gamma_prime(x, p: int | None = None):
    """Discrete graphs: ``B0 -> (B0, id, id, id)``, ``g0 -> (g0, g0)``."""
    if isinstance(x, int):
        one = eye(p, x)
        return RGObject(x, x, one, one, one)
    return RGMorphism(gamma_prime(x.cols, x.p), gamma_prime(x.rows, x.p), x, x)


def lambda_prime(x, p: int | None = None):
    """Graphs over the zero object: ``B -> (B, 0)``, ``g -> (g, 0)``."""
    if isinstance(x, int):
        return RGObject(x, 0, zeros(p, 0, x), zeros(p, 0, x), zeros(p, x, 0))
    return RGMorphism(lambda_prime(x.cols, x.p), lambda_prime(x.rows, x.p), x, zeros(x.p, 0, 0))


def rg_cokernel_of_discrete(a: MatFp, middle: RGObject | None = None) -> CokernelTriple:
    """``D(a)`` with ``c = (i_1, id)`` and the diagonal ``i_2``, as a cokernel of ``Gamma'(a)``."""
    p, n, n0 = a.p, a.cols, a.rows
    mid = middle if middle is not None else denormalize(a)
    g = gamma_prime(a)
    c = RGMorphism._trusted(g.target, mid, matfp.injection(p, (n0, n), 0), eye(p, n0))
    gamma_tok = Token(RG_DIAGONAL, matfp.injection(p, (n0, n), 1))
    return CokernelTriple(mid, c, gamma_tok, g)


def rg_kernel_over_zero(a: MatFp, middle: RGObject | None = None) -> CokernelTriple:
    """``D(a)`` with ``k = (pi_2, 0)`` and the diagonal ``id``, as a kernel of ``Lambda'(a)``."""
    p, n, n0 = a.p, a.cols, a.rows
    mid = middle if middle is not None else denormalize(a)
    g = lambda_prime(a)
    k = RGMorphism._trusted(mid, g.source, matfp.projection(p, (n0, n), 1), zeros(p, 0, n0))
    return CokernelTriple(mid, k, Token(RG_DIAGONAL, eye(p, n0)), g)


def check_cof_eq_ker(a: MatFp, probe_dims: int, middle: RGObject | None = None,
                     name=None) -> Report:
    """Cokernel of ``Gamma'(a)`` and kernel of ``Lambda'(a)``, sharing ``D(a)``."""
    rg = ReflexiveGraphs(a.p)
    params = dict(p=a.p, a=a.entries, rows=a.rows, cols=a.cols, probe_dims=probe_dims)
    name = name or f"cof=ker[{a.rows}x{a.cols}]"
    try:
        cok = rg_cokernel_of_discrete(a, middle)
        ker = rg_kernel_over_zero(a, middle)
        structure = Sweep("cof=ker-structure", **params)
        for label, t in (("c", cok.c), ("k", ker.c)):
            bad = rg_morphism_defects(t.source, t.target, t.f1, t.f0)
            structure.case(not bad, f"{label} is not a morphism of graphs", defects=bad)
        structure.case(cok.obj == ker.obj, "cokernel and kernel objects differ")
    except ValueError as e:
        return Report(name, False, 0, {"reason": str(e)}, params)
    probes = rg.objects(probe_dims)
    parts = [structure.report()]
    if parts[0].passed:
        parts.append(check_cokernel(rg, cok.arrow, cok, probes, name="cokernel-of-discrete"))
        parts.append(check_kernel(rg, ker.arrow, ker, probes, name="kernel-over-zero"))
    return combine(name, parts, **params)


# --------------------------------------------------------------------------
# Diagonals, graph nullhomotopies and 2-cells from zero


def two_cells_from_zero(m: RGMorphism) -> list[MatFp]:
    """Internal natural transformations ``0 => m`` between the groupoids ``D(a)``, ``D(b)``.

    ``tau: A0 -> B1`` with ``tau . d = 0``, ``tau . c = f0`` and, for every arrow
    ``x`` of the source, ``0(x) ; tau(c x) = tau(d x) ; f1(x)`` in the target groupoid.
    """
    x, y = m.source, m.target
    p = x.p
    b = _as_denormalized(y)
    comp = groupoid_compose(b)
    zero1 = zeros(p, y.A1_dim, x.A1_dim)

    def naturality(tau):
        lhs = then(_pair_coords(y, zero1, then(x.c, tau)), comp)
        return lhs - then(_pair_coords(y, then(x.d, tau), m.f1), comp)

    sols = matfp.affine_solutions(
        p, ((y.A1_dim, x.A0_dim),),
        lambda ms: (y.d @ ms[0], y.c @ ms[0] - m.f0, naturality(ms[0])),
        linear_key=("two-cell", x, y))
    out = []
    for (tau,) in sols:
        # re-check with the composability of both pairs asserted
        lhs = then(composable_pair(y, zero1, then(x.c, tau)), comp)
        rhs = then(composable_pair(y, then(x.d, tau), m.f1), comp)
        if lhs != rhs:
            raise ArithmeticError(f"solved 2-cell {tau!r} is not natural")
        out.append(tau)
    return out


def _as_denormalized(g: RGObject) -> MatFp:
    """Recover ``b`` from ``g = D(b)``."""
    n0 = g.A0_dim
    b = MatFp(g.p, n0, g.A1_dim - n0, tuple(r[n0:] for r in g.c.entries))
    if denormalize(b) != g:
        raise ValueError(f"{g!r} is not a denormalized graph")
    return b


def two_cell_correspondence(f: ArrMorphism, name=None) -> Report:
    """Diagonals of ``f``, graph nullhomotopies on ``D(f)`` and 2-cells ``0 => D(f)``.

    The maps are ``phi -> <0; phi>`` and the identity; each is checked to be a bijection.
    """
    p = f.f.p
    arr = ArrowCategory(Mat(p))
    rg = ReflexiveGraphs(p)
    df = denormalize_morphism(f)
    diagonals = [t.payload for t in arr.theta(f)]
    graph_tokens = [t.payload for t in rg.theta(df)]
    cells = two_cells_from_zero(df)
    counts = {"diagonals": len(diagonals), "rg_nullhomotopies": len(graph_tokens),
              "two_cells": len(cells)}
    sw = Sweep(name or "two-cells", p=p, source=f.source.a.entries, target=f.target.a.entries,
               f=f.f.entries, f0=f.f0.entries)
    sw.case(len(set(diagonals)) == len(set(graph_tokens)) == len(set(cells)),
            "the three counts differ", **counts)
    image = {denormalize_token(f, Token(arr.tag, phi)).payload: phi for phi in diagonals}
    sw.case(len(image) == len(diagonals), "diagonal map is not injective")
    sw.case(set(image) == set(graph_tokens), "diagonals do not map onto graph nullhomotopies")
    sw.case(set(graph_tokens) == set(cells), "graph nullhomotopies and 2-cells differ")
    n0 = f.target.bottom
    for psi, phi in image.items():
        back = MatFp(p, psi.rows - n0, psi.cols, psi.entries[n0:])
        sw.case(back == phi, "second component does not recover the diagonal", phi=phi)
    return sw.report(**counts, target_c_reading=alternative_reading_count(df))
