"""Extending a colimit-preserving functor ``F: A -> B`` along ``Gamma: A -> Arr(A)``.

The extension sends ``(A, a, A0)`` to the chosen cokernel of ``F a`` in the
target, arrows to the arrows induced between cokernels, and diagonals to the
lifted nullhomotopies.  The target is any :class:`NullCategory` providing
``theta_cokernel``, ``factorize`` and ``lift``.
"""

from __future__ import annotations

from .arrowcat import ArrMorphism, ArrowCategory, gamma, gamma_functor
from .nullhomotopy import (
    CokernelTriple,
    NullCategory,
    NullFunctor,
    NullTwoMorphism,
    ProbeUniverse,
    Token,
    UniversalityError,
    check_cokernel,
    check_null_functor,
    check_reduced_interchange,
    check_strong_initial,
    check_strong_pushout,
    check_two_morphism,
    compose_functors,
    factorizations,
    lifts,
)
from .report import Report, Sweep, combine


class ExtendedFunctor(NullFunctor):
    """``F^: Arr(A) -> B`` built from the target's cokernels of ``F``-images."""

    def __init__(self, F: NullFunctor, target: NullCategory | None = None, name=None):
        self.base_functor = F
        self._cokernels: dict = {}
        self._arrows: dict = {}
        self._tokens: dict = {}
        super().__init__(ArrowCategory(F.source.base), target if target is not None else F.target,
                         self._on_objects, self._on_arrows, self._on_tokens,
                         name=name or f"{F.name}^")

    def cokernel(self, x) -> CokernelTriple:
        """The target cokernel of ``F a`` that defines the image of ``x``."""
        t = self._cokernels.get(x)
        if t is None:
            t = self._cokernels[x] = self.target.theta_cokernel(self.base_functor.arr(x.a))
        return t

    def _on_objects(self, x):
        return self.cokernel(x).obj

    def _on_arrows(self, m: ArrMorphism):
        out = self._arrows.get(m)
        if out is None:
            T, F = self.target, self.base_functor
            ta, tb = self.cokernel(m.source), self.cokernel(m.target)
            h = T.compose(F.arr(m.f0), tb.c)
            phi = T.whisker(F.arr(m.f), tb.gamma, None)
            out = self._arrows[m] = T.factorize(ta, h, phi)
        return out

    def _on_tokens(self, m: ArrMorphism, phi: Token):
        key = (m, phi)
        out = self._tokens.get(key)
        if out is None:
            T, F = self.target, self.base_functor
            ta, tb = self.cokernel(m.source), self.cokernel(m.target)
            d = phi.payload
            wanted = T.whisker(F.arr(d), tb.gamma, None)
            out = self._tokens[key] = T.lift(ta, self._on_arrows(m), wanted)
        return out


def extend_functor(F: NullFunctor, target: NullCategory | None = None,
                   validate: int | None = None) -> ExtendedFunctor:
    """``F^``; with ``validate`` set, first probe the target hypotheses at that bound."""
    fhat = ExtendedFunctor(F, target)
    if validate is not None:
        r = validate_target(fhat.target, F, validate)
        if not r.passed:
            raise UniversalityError(f"target fails its hypotheses: {r.witness}")
    return fhat


def image_pushout(F: NullFunctor, po):
    """The square ``F(po)`` as a pushout-shaped record in the target."""
    T = F.target
    f, g = F.arr(po.f), F.arr(po.g)
    return _Square(f, g, T.cod(F.arr(po.leg_from_B)), F.arr(po.leg_from_B), F.arr(po.leg_from_C))


class _Square:
    def __init__(self, f, g, apex, leg_from_B, leg_from_C):
        self.f, self.g, self.apex = f, g, apex
        self.leg_from_B, self.leg_from_C = leg_from_B, leg_from_C


def spans(u: ProbeUniverse, symmetric: bool = True):
    """Spans ``(m, n)`` out of a common object; with ``symmetric``, each unordered pair once."""
    for x in u.objects:
        out = u.out[x]
        for i, m in enumerate(out):
            for n in out[i if symmetric else 0:]:
                yield m, n


def check_colimit_images(F: NullFunctor, probe_max: int, source_bound: int | None = None,
                         name="colimit-images") -> Report:
    """Images under ``F`` of the initial object and of probed pushouts are strong."""
    S, T = F.source, F.target
    sb = probe_max if source_bound is None else source_bound
    probes = T.objects(probe_max)
    sw = Sweep(name, probe_max=probe_max, source_bound=sb)
    zero = F.obj(S.initial())
    sw.absorb(check_strong_initial(_AtObject(T, zero), probes), object="initial")
    u = ProbeUniverse(S, sb)
    for m, n in spans(u):
        po = S.pushout(m, n)
        sw.absorb(check_strong_pushout(T, image_pushout(F, po), probes), f=m, g=n)
    return sw.report()


class _AtObject:
    """View of ``T`` with ``zero`` standing in for its initial object."""

    def __init__(self, T, zero):
        self.T, self.zero, self.name = T, zero, T.name

    def initial(self):
        return self.zero

    def __getattr__(self, item):
        return getattr(self.T, item)


def validate_target(T: NullCategory, F: NullFunctor, probe_max: int) -> Report:
    """Hypotheses on the target: reduced interchange, strong colimit images, strong cokernels."""
    u = ProbeUniverse(T, probe_max)
    parts = [check_reduced_interchange(T, u.composable_pairs())]
    parts.append(check_colimit_images(F, probe_max))
    sw = Sweep("image-cokernels", probe_max=probe_max)
    probes = T.objects(probe_max)
    for g in ProbeUniverse(F.source, probe_max).arrows:
        image = F.arr(g)
        sw.absorb(check_cokernel(T, image, T.theta_cokernel(image), probes), arrow=g)
    parts.append(sw.report())
    return combine("target-hypotheses", parts, probe_max=probe_max)


# --------------------------------------------------------------------------
# Natural transformations and the counit


def extend_nat_trans(lam: NullTwoMorphism, fhat: ExtendedFunctor, ghat: ExtendedFunctor
                     ) -> NullTwoMorphism:
    """``lam^``: the arrow with ``c . lam^ = lam_{A0} . c`` and ``gamma o lam^ = lam_A o gamma``."""
    T = fhat.target
    memo: dict = {}

    def component(x):
        out = memo.get(x)
        if out is None:
            tf, tg = fhat.cokernel(x), ghat.cokernel(x)
            h = T.compose(lam(x.bottom), tg.c)
            phi = T.whisker(lam(x.top), tg.gamma, None)
            out = memo[x] = T.factorize(tf, h, phi)
        return out

    return NullTwoMorphism(fhat, ghat, component, name=f"{lam.name}^")


def counit_component(M: NullFunctor, x, hat: ExtendedFunctor | None = None):
    """``m_x: (Gamma.M)^(x) -> M(x)`` and its two-sided inverse."""
    base = M.source.base
    hat = hat if hat is not None else extend_functor(compose_functors(gamma_functor(base), M),
                                                   M.target)
    T = M.target
    s = M.source
    t = hat.cokernel(x)
    zero_top = base.initial_arrow(x.top)
    leg = ArrMorphism(gamma(x.bottom, base), x, zero_top, base.identity(x.bottom))
    ga = gamma(x.a, base)
    tok = Token(s.tag, base.identity(x.top))
    m = T.factorize(t, M.arr(leg), M.tok(s.compose(ga, leg), tok))
    inverse = _two_sided_inverse(T, m)
    if inverse is None:
        raise UniversalityError(f"counit component at {x!r} has no inverse")
    return m, inverse


def _two_sided_inverse(T: NullCategory, m):
    ident_dom, ident_cod = T.identity(T.dom(m)), T.identity(T.cod(m))
    for v in T.hom(T.cod(m), T.dom(m)):
        if T.compose(m, v) == ident_dom and T.compose(v, m) == ident_cod:
            return v
    return None


def counit(M: NullFunctor, name="m") -> NullTwoMorphism:
    base = M.source.base
    hat = extend_functor(compose_functors(gamma_functor(base), M), M.target)
    memo: dict = {}

    def component(x):
        if x not in memo:
            memo[x] = counit_component(M, x, hat)[0]
        return memo[x]

    return NullTwoMorphism(hat, M, component, name=name)


def check_counit(M: NullFunctor, probe_max: int) -> Report:
    """Invertibility of every component, naturality, and nullhomotopy compatibility."""
    m = counit(M)
    u = ProbeUniverse(M.source, probe_max)
    sw = Sweep(f"counit[{M.name}]", probe_max=probe_max)
    for x in u.objects:
        try:
            counit_component(M, x, m.source)
            sw.case(True)
        except UniversalityError as exc:
            sw.case(False, str(exc), object=x)
    sw.absorb(check_two_morphism(m, u), check="two-morphism")
    return sw.report()


def check_counit_square(mu: NullTwoMorphism, probe_max: int) -> Report:
    """``(Gamma.mu)^ . n = m . mu`` for a 2-morphism ``mu: M => N``."""
    M, N = mu.source, mu.target
    m, n = counit(M), counit(N)
    base = M.source.base
    gmu = NullTwoMorphism(compose_functors(gamma_functor(base), M),
                          compose_functors(gamma_functor(base), N),
                          lambda x: mu(gamma(x, base)), name=f"Gamma.{mu.name}")
    hat_mu = extend_nat_trans(gmu, m.source, n.source)
    T = M.target
    sw = Sweep(f"counit-square[{mu.name}]", probe_max=probe_max)
    for x in M.source.objects(probe_max):
        lhs = T.compose(hat_mu(x), n(x))
        rhs = T.compose(m(x), mu(x))
        sw.case(lhs == rhs, "counit square does not commute", object=x, lhs=lhs, rhs=rhs)
    return sw.report()


# --------------------------------------------------------------------------
# The extension checks


def check_restriction(fhat: ExtendedFunctor, probe_max: int) -> Report:
    """Clause (i): ``Gamma . F^ = F`` on objects, arrows and nullhomotopies."""
    F = fhat.base_functor
    base = F.source.base
    sw = Sweep("extension-restricts", probe_max=probe_max)
    u = ProbeUniverse(F.source, probe_max)
    for x in u.objects:
        got = fhat.obj(gamma(x, base))
        sw.case(got == F.obj(x), "object image differs", object=x, got=got, expected=F.obj(x))
    for g in u.arrows:
        got = fhat.arr(gamma(g, base))
        sw.case(got == F.arr(g), "arrow image differs", arrow=g, got=got, expected=F.arr(g))
    for g, phi in u.tokens():
        got = fhat.tok(gamma(g, base), gamma(phi))
        sw.case(got == F.tok(g, phi), "nullhomotopy image differs", arrow=g, phi=phi, got=got)
    return sw.report()


def check_uniqueness(fhat: ExtendedFunctor, probe_max: int) -> Report:
    """Every candidate satisfying the defining equations is the one ``F^`` picked."""
    T, F = fhat.target, fhat.base_functor
    u = ProbeUniverse(fhat.source, probe_max)
    sw = Sweep("extension-unique", probe_max=probe_max)
    for m in u.arrows:
        ta, tb = fhat.cokernel(m.source), fhat.cokernel(m.target)
        h = T.compose(F.arr(m.f0), tb.c)
        phi = T.whisker(F.arr(m.f), tb.gamma, None)
        found = factorizations(T, ta, h, phi)
        sw.case(found == [fhat.arr(m)], "arrow equations do not pin the image", arrow=m,
                candidates=len(found))
        for d in fhat.source.theta(m):
            wanted = T.whisker(F.arr(d.payload), tb.gamma, None)
            found = lifts(T, ta, fhat.arr(m), wanted)
            sw.case(found == [fhat.tok(m, d)], "token equation does not pin the image", arrow=m,
                    phi=d, candidates=len(found))
    return sw.report()


def check_preserves_cokernels(fhat: ExtendedFunctor, probe_max: int,
                              source_bound: int | None = None) -> Report:
    """Clause (ii): images of diagonal cokernels are strong cokernels in the target."""
    S, T = fhat.source, fhat.target
    sb = probe_max if source_bound is None else source_bound
    probes = T.objects(probe_max)
    sw = Sweep("extension-preserves-cokernels", probe_max=probe_max, source_bound=sb)
    for m in ProbeUniverse(S, sb).arrows:
        t = S.theta_cokernel(m)
        image = CokernelTriple(fhat.obj(t.obj), fhat.arr(t.c),
                               fhat.tok(S.compose(m, t.c), t.gamma), fhat.arr(m))
        sw.absorb(check_cokernel(T, image.arrow, image, probes), arrow=m)
    return sw.report()


def check_extension(fhat: ExtendedFunctor, probe_max: int,
                    source_bound: int | None = None) -> list[Report]:
    """Per-clause reports: restriction, cokernels, colimits, plus functor laws and uniqueness."""
    u = ProbeUniverse(fhat.source, probe_max if source_bound is None else source_bound)
    return [
        check_restriction(fhat, probe_max),
        check_preserves_cokernels(fhat, probe_max, source_bound),
        check_colimit_images(fhat, probe_max, source_bound, name="extension-preserves-colimits"),
        check_null_functor(fhat, u, name="extension-is-morphism"),
        check_uniqueness(fhat, probe_max if source_bound is None else source_bound),
    ]


def check_lambda_hat(lam: NullTwoMorphism, fhat: ExtendedFunctor, ghat: ExtendedFunctor,
                     probe_max: int) -> Report:
    """``lam^`` is a 2-morphism and restricts to ``lam`` along ``Gamma``."""
    base = fhat.base_functor.source.base
    lh = extend_nat_trans(lam, fhat, ghat)
    sw = Sweep(f"lambda-hat[{lam.name}]", probe_max=probe_max)
    sw.absorb(check_two_morphism(lh, ProbeUniverse(fhat.source, probe_max)))
    for x in base.objects(probe_max):
        got = lh(gamma(x, base))
        sw.case(got == lam(x), "restriction along Gamma differs", object=x, got=got,
                expected=lam(x))
    return sw.report()

