import itertools

import pytest

from nullhom import corpus
from nullhom.arrowcat import ArrObject, ArrowCategory, gamma, gamma_functor
from nullhom.completion import (
    ExtendedFunctor,
    check_colimit_images,
    check_counit,
    check_extension,
    check_lambda_hat,
    check_restriction,
    counit_component,
    extend_functor,
    extend_nat_trans,
    validate_target,
)
from nullhom.fincat import FinSet, FinSetMap
from nullhom.nullhomotopy import NullTwoMorphism, ProbeUniverse, identity_functor

FS = FinSet()
ARR = ArrowCategory(FS)


@pytest.fixture(scope="module")
def gamma_hat():
    return extend_functor(gamma_functor(FS), ARR, validate=1)


def test_target_satisfies_the_hypotheses():
    assert validate_target(ARR, gamma_functor(FS), 1).passed


def test_extension_of_gamma_is_the_identity_on_objects(gamma_hat):
    for x in ARR.objects(2):
        assert gamma_hat.obj(x) == x


def test_extension_on_identities_and_squares(gamma_hat):
    u = ProbeUniverse(ARR, 1)
    for x in u.objects:
        assert gamma_hat.arr(ARR.identity(x)) == ARR.identity(x)
    for m in u.arrows:
        assert gamma_hat.arr(m) == m


def test_extension_on_diagonals_matches_filter_oracle(gamma_hat):
    u = ProbeUniverse(ARR, 1)
    seen = 0
    for m, phi in u.tokens():
        t_a = gamma_hat.cokernel(m.source)
        t_b = gamma_hat.cokernel(m.target)
        wanted = ARR.whisker(gamma(phi.payload), t_b.gamma, None)
        oracle = [psi for psi in ARR.theta(gamma_hat.arr(m))
                  if ARR.whisker(t_a.c, psi, None) == wanted]
        assert oracle == [gamma_hat.tok(m, phi)]
        seen += 1
    assert seen


def test_all_extension_clauses_pass(gamma_hat):
    reports = check_extension(gamma_hat, 1)
    assert [r.name for r in reports] == [
        "extension-restricts", "extension-preserves-cokernels", "extension-preserves-colimits",
        "extension-is-morphism", "extension-unique",
    ]
    assert all(r.passed for r in reports)


class WrongOnOneObject(ExtendedFunctor):
    def _on_objects(self, x):
        if x == gamma(1):
            return ArrObject(0, 2, FinSetMap(0, 2, ()))
        return super()._on_objects(x)


def test_corrupted_object_map_fails_restriction():
    bad = WrongOnOneObject(gamma_functor(FS), ARR)
    r = check_restriction(bad, 1)
    assert not r.passed
    assert r.witness["object"] == 1


def test_colimit_clause_on_span_corpus(gamma_hat):
    assert check_colimit_images(gamma_hat, 1).passed


def test_identity_transformation_extends_to_identities(gamma_hat):
    g = gamma_functor(FS)
    ident = NullTwoMorphism(g, g, lambda x: ARR.identity(gamma(x)))
    hat = extend_nat_trans(ident, gamma_hat, gamma_hat)
    for x in ARR.objects(2):
        assert hat(x) == ARR.identity(x)


def test_extended_copy_transformations():
    lams = corpus.transformation_corpus(max_copies=2)
    for lam in lams[:: max(1, len(lams) // 8)]:
        fh = extend_functor(lam.source, ARR)
        gh = extend_functor(lam.target, ARR)
        assert check_lambda_hat(lam, fh, gh, 1).passed, lam.name


def test_counit_of_identity_is_identity():
    M = identity_functor(ARR)
    for x in ARR.objects(2):
        m, inverse = counit_component(M, x)
        assert m == inverse == ARR.identity(x)


@pytest.mark.parametrize("make", [
    lambda: identity_functor(ARR),
    lambda: corpus.relabel_functor(ARR),
])
def test_counit_is_invertible_and_natural(make):
    assert check_counit(make(), 1).passed


def test_counit_components_of_relabel_are_not_identities():
    M = corpus.relabel_functor(ARR)
    x = ArrObject(2, 2, FinSetMap(2, 2, (0, 1)))
    m, inverse = counit_component(M, x)
    assert m.target == M.obj(x) != x
    assert m.f0 == FS.identity(2) and m.f != FS.identity(2)
    assert ARR.compose(m, inverse) == ARR.identity(ARR.dom(m))


def test_copy_functors_extend():
    for n, m, s, F in itertools.islice(corpus.functor_corpus(2), 0, None, 7):
        fh = extend_functor(F, ARR)
        assert check_restriction(fh, 1).passed, F.name
