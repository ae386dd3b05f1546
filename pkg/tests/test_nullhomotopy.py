import pytest

from nullhom.arrowcat import ArrMorphism, ArrObject, ArrowCategory, gamma, gamma_functor
from nullhom.fincat import FinSet, FinSetMap, identity
from nullhom.nullhomotopy import (
    DIAGONAL,
    EMPTY,
    InitialNull,
    NullFunctor,
    NullTwoMorphism,
    PreconditionError,
    ProbeUniverse,
    TagMismatch,
    Token,
    UniversalityError,
    check_generating_axioms,
    check_null_functor,
    check_reduced_interchange,
    check_strong_initial,
    check_strong_pushout,
    check_structure_axioms,
    check_two_morphism,
    identity_functor,
    strong_pushout_pair,
)

FS = FinSet()
ARR = ArrowCategory(FS)
EMPTY_FS = InitialNull(FS)


def fmap(dom, cod, *tab):
    return FinSetMap(dom, cod, tab)


def obj(top, bottom, *tab):
    return ArrObject(top, bottom, fmap(top, bottom, *tab))


class DropsLeftLeg(ArrowCategory):
    """Whiskering that forgets ``f0``: the payload keeps its old domain."""

    def _whisker(self, f, phi, h):
        d = phi.payload
        if h is not None:
            d = self.base.compose(d, h.f)
        return Token(DIAGONAL, d)


def test_empty_witnesses_on_finsets():
    assert EMPTY_FS.theta(identity(0)) == (Token(EMPTY, identity(0)),)
    assert EMPTY_FS.theta(identity(1)) == ()
    assert len(EMPTY_FS.theta(fmap(0, 3))) == 1


def test_diagonal_example():
    x, y = obj(2, 1, 0, 0), obj(1, 1, 0)
    g = ArrMorphism(x, y, fmap(2, 1, 0, 0), fmap(1, 1, 0))
    assert ARR.theta(g) == (Token(DIAGONAL, fmap(1, 1, 0)),)


def test_diagonals_match_enumeration():
    # Theta_Delta(g) is every B0 -> C with both triangles commuting
    for x in ARR.objects(2):
        for y in ARR.objects(2):
            for g in ARR.hom(x, y):
                brute = [Token(DIAGONAL, d) for d in FS.hom(x.bottom, y.top)
                         if FS.compose(x.a, d) == g.f and FS.compose(d, y.a) == g.f0]
                assert list(ARR.theta(g)) == brute


def test_whisker_examples():
    x, y = obj(1, 1, 0), obj(1, 1, 0)
    g = ARR.identity(x)
    phi = ARR.theta(g)[0]
    assert ARR.whisker(ARR.identity(x), phi, ARR.identity(y)) == phi
    h = ArrMorphism(y, y, fmap(1, 1, 0), fmap(1, 1, 0))
    assert ARR.whisker(ARR.identity(x), phi, h).payload == fmap(1, 1, 0)
    f = fmap(0, 2)
    tok = Token(EMPTY, identity(0))
    assert EMPTY_FS.whisker(None, tok, f, on=identity(0)) == tok


def test_whisker_checks_tags_and_preconditions():
    y = obj(2, 2, 0, 1)
    with pytest.raises(TagMismatch):
        ARR.whisker(None, Token(EMPTY, identity(0)), None)
    with pytest.raises(PreconditionError):
        ARR.whisker(None, Token(DIAGONAL, fmap(2, 2, 1, 0)), None, on=ARR.identity(y))


@pytest.mark.parametrize("s, bound", [(ARR, 2), (EMPTY_FS, 2)])
def test_generating_axioms_hold(s, bound):
    assert check_generating_axioms(ProbeUniverse(s, bound)).passed


def test_exhaustive_quintuples_hold_on_small_corpus():
    u = ProbeUniverse(ARR, 1)
    r = check_structure_axioms(ARR, u.quintuples("exhaustive"))
    assert r.passed and r.cases > 0


def test_generating_family_and_exhaustive_sweep_agree_on_mutation():
    bad = DropsLeftLeg(FS)
    u = ProbeUniverse(bad, 1)
    gen = check_generating_axioms(u)
    full = check_structure_axioms(bad, u.quintuples("exhaustive"))
    assert not gen.passed and not full.passed
    assert gen.witness["reason"].startswith("whisker leaves theta")


def test_vacuous_corpus_passes():
    assert check_structure_axioms(ARR, []).passed
    # no arrow 1 -> 0 exists, hence no tokens either
    assert check_reduced_interchange(EMPTY_FS, [(identity(1), identity(1))]).passed


def test_reduced_interchange_on_diagonals():
    u = ProbeUniverse(ARR, 1)
    assert check_reduced_interchange(ARR, u.composable_pairs()).passed


def test_gamma_is_a_morphism_of_structures():
    u = ProbeUniverse(EMPTY_FS, 2)
    assert check_null_functor(gamma_functor(FS), u).passed
    assert check_null_functor(identity_functor(ARR), ProbeUniverse(ARR, 1)).passed


def test_gamma_with_constant_token_map_fails():
    g = gamma_functor(FS)
    fixed = Token(DIAGONAL, fmap(1, 1, 0))
    broken = NullFunctor(g.source, g.target, g.on_objects, g.on_arrows, lambda f, phi: fixed)
    r = check_null_functor(broken, ProbeUniverse(EMPTY_FS, 2))
    assert not r.passed and r.witness["reason"] == "F(phi) not on F(g)"


def _swap_at_two(x):
    sigma = fmap(2, 2, 1, 0) if x == 2 else identity(x)
    return ArrMorphism(gamma(x), gamma(x), identity(0), sigma)


def test_identity_two_morphism_and_a_permuted_one():
    g = gamma_functor(FS)
    u = ProbeUniverse(EMPTY_FS, 2)
    ident = NullTwoMorphism(g, g, lambda x: ARR.identity(gamma(x)))
    assert check_two_morphism(ident, u).passed
    r = check_two_morphism(NullTwoMorphism(g, g, _swap_at_two), u)
    assert not r.passed and r.witness["reason"] == "naturality square fails"


@pytest.mark.parametrize("s, bound", [(EMPTY_FS, 3), (ARR, 2)])
def test_initial_object_is_strong(s, bound):
    r = check_strong_initial(s, s.objects(bound))
    assert r.passed
    assert set(r.details["token_counts"].values()) == {1}


def test_pushouts_of_arrow_objects_are_strong():
    x, y = obj(1, 1, 0), obj(1, 2, 0)
    legs = ARR.hom(x, y)
    probes = ARR.objects(1)
    for m in legs:
        for n in legs:
            assert check_strong_pushout(ARR, ARR.pushout(m, n), probes).passed


def test_strong_pushout_pair_of_identities():
    x = obj(1, 1, 0)
    i = ARR.identity(x)
    po = ARR.pushout(i, i)
    phi = ARR.theta(i)[0]
    assert strong_pushout_pair(ARR, po, i, i, phi, phi) == phi


def test_strong_pushout_pair_rejects_incompatible_tokens():
    a = obj(0, 1)
    d = obj(2, 1, 0, 0)
    i = ARR.identity(a)
    po = ARR.pushout(i, i)
    x = ArrMorphism(a, d, fmap(0, 2), identity(1))
    phi, psi = ARR.theta(x)
    assert phi != psi
    with pytest.raises(PreconditionError):
        strong_pushout_pair(ARR, po, x, x, phi, psi)
    assert strong_pushout_pair(ARR, po, x, x, phi, phi) == phi
