"""The acceptance suite: one function per criterion, each returning a :class:`Report`.

Bounds come from :class:`SuiteConfig`.  With the defaults every criterion
runs at the sizes it is stated for; the CLI exposes the same knobs.
"""

from __future__ import annotations

import random
import subprocess
import sys
from collections import defaultdict
from dataclasses import dataclass

from . import corpus
from .arrowcat import ArrObject, ArrowCategory, check_universal, gamma, gamma_functor, homotopy_cokernel
from .completion import (
    check_counit,
    check_counit_square,
    check_extension,
    check_lambda_hat,
    extend_functor,
    spans,
)
from .dold_kan import (
    check_cof_eq_ker,
    check_groupoid_axioms,
    denormalize,
    RGObject,
    dk_iso,
    normalize,
    rg_objects,
    two_cell_correspondence,
)
from .fincat import FinSet, FinSetMap, copair_finset, enumerate_finset_maps, pushout_finset
from .matfp import Mat, MatFp, enumerate_matrices, eye, injection, mat, rank, solve
from .nullhomotopy import (
    InitialNull,
    ProbeUniverse,
    UniversalityError,
    check_generating_axioms,
    check_reduced_interchange,
    check_strong_initial,
    check_strong_pushout,
    check_structure_axioms,
    identity_functor,
)
from .oracles import naive_pushout
from .report import Report, Sweep, combine


@dataclass(frozen=True)
class SuiteConfig:
    probe_max: int = 2
    max_dim: int = 2
    prime: int = 2
    seed: int = 0
    lambda_count: int = 12

    @property
    def finset_max(self) -> int:
        """Plain finite sets are swept one size further than arrow objects."""
        return self.probe_max + 1

    def params(self) -> dict:
        return {"probe_max": self.probe_max, "max_dim": self.max_dim, "prime": self.prime,
                "seed": self.seed}


def pushout_oracle(cfg: SuiteConfig) -> Report:
    """Union-find pushouts agree with the closure oracle; copairing is the unique mediator."""
    n = cfg.finset_max
    oracle = Sweep("pushout-vs-closure-oracle", max_size=n)
    mediate = Sweep("copair-unique", max_size=n)
    for a in range(n + 1):
        for b in range(n + 1):
            for c in range(n + 1):
                for f in enumerate_finset_maps(a, b):
                    for g in enumerate_finset_maps(a, c):
                        po = pushout_finset(f, g)
                        expected = naive_pushout(f.table, g.table, b, c)
                        got = (po.apex_size, po.leg_from_B.table, po.leg_from_C.table)
                        oracle.case(got == expected, "pushout differs from oracle", f=f, g=g,
                                    got=got, expected=expected)
                        _sweep_cocones(mediate, po, b, c, n)
    return combine("pushout-oracle", [oracle.report(), mediate.report()], max_size=n)


def _sweep_cocones(sw: Sweep, po, b: int, c: int, n: int):
    f, g = po.f.table, po.g.table
    for d in range(n + 1):
        by_image = defaultdict(list)
        for u in enumerate_finset_maps(po.apex_size, d):
            x = tuple(u.table[i] for i in po.leg_from_B.table)
            y = tuple(u.table[i] for i in po.leg_from_C.table)
            by_image[(x, y)].append(u)
        ys = defaultdict(list)
        for y in enumerate_finset_maps(c, d):
            ys[tuple(y.table[i] for i in g)].append(y)
        for x in enumerate_finset_maps(b, d):
            for y in ys.get(tuple(x.table[i] for i in f), ()):
                mediators = by_image.get((x.table, y.table), [])
                ok = len(mediators) == 1 and copair_finset(po, x, y) == mediators[0]
                sw.case(ok, "cocone does not factor uniquely through copair", f=po.f, g=po.g,
                        x=x, y=y, mediators=len(mediators))


def structure_axioms(cfg: SuiteConfig) -> Report:
    """Whisker laws and reduced interchange for empty-domain witnesses and diagonals."""
    parts = []
    empty = InitialNull(FinSet())
    u = ProbeUniverse(empty, cfg.probe_max)
    parts.append(check_structure_axioms(empty, u.quintuples("exhaustive"),
                                        name="axioms[empty-witness]"))
    parts.append(check_reduced_interchange(empty, u.composable_pairs(),
                                           name="interchange[empty-witness]"))
    arr = ArrowCategory(FinSet())
    v = ProbeUniverse(arr, cfg.probe_max)
    parts.append(check_generating_axioms(v, name="axioms[diagonal]"))
    parts.append(check_reduced_interchange(arr, v.composable_pairs(), name="interchange[diagonal]"))
    return combine("structure-axioms", parts, probe_max=cfg.probe_max)


def strong_cokernels(cfg: SuiteConfig) -> Report:
    """Every square's constructed cokernel is universal and strong against all probes."""
    arr = ArrowCategory(FinSet())
    sw = Sweep("strong-cokernels", probe_max=cfg.probe_max)
    for m in ProbeUniverse(arr, cfg.probe_max).arrows:
        sw.absorb(check_universal(homotopy_cokernel(m, arr), cfg.probe_max, arr), arrow=m)
    return sw.report()


def gamma_cokernel_exact(cfg: SuiteConfig) -> Report:
    """The cokernel of ``Gamma a`` is ``(A, a, A0)`` itself, not just up to isomorphism."""
    base = FinSet()
    n = cfg.finset_max
    sw = Sweep("gamma-cokernel-exact", max_size=n)
    for top in range(n + 1):
        for bottom in range(n + 1):
            for a in enumerate_finset_maps(top, bottom):
                got = homotopy_cokernel(gamma(a, base)).obj
                sw.case(got == ArrObject(top, bottom, a), "cokernel object differs", a=a, got=got)
    return sw.report()


def strong_colimits(cfg: SuiteConfig) -> Report:
    """Initial objects and pushouts are strong, in finite sets and level-wise in arrows."""
    parts = []
    empty = InitialNull(FinSet())
    n = cfg.finset_max
    probes = empty.objects(n)
    parts.append(check_strong_initial(empty, probes, name="strong-initial[finset]"))
    sw = Sweep("strong-pushouts[finset]", max_size=n)
    for m, k in spans(ProbeUniverse(empty, n)):
        sw.absorb(check_strong_pushout(empty, empty.pushout(m, k), probes), f=m, g=k)
    parts.append(sw.report())
    arr = ArrowCategory(FinSet())
    aprobes = arr.objects(cfg.probe_max)
    parts.append(check_strong_initial(arr, aprobes, name="strong-initial[arrows]"))
    sw = Sweep("strong-pushouts[arrows]", probe_max=cfg.probe_max)
    for m, k in spans(ProbeUniverse(arr, cfg.probe_max)):
        sw.absorb(check_strong_pushout(arr, arr.pushout(m, k), aprobes), f=m, g=k)
    parts.append(sw.report())
    return combine("strong-colimits", parts, symmetric_spans=True)


def extension_round_trip(cfg: SuiteConfig) -> Report:
    """Extending ``Gamma``, the counit, and extended natural transformations."""
    k = cfg.probe_max
    arr = ArrowCategory(FinSet())
    parts = []
    try:
        fhat = extend_functor(gamma_functor(FinSet()), arr, validate=k)
    except UniversalityError as exc:
        return Report("extension-round-trip", False, 0, {"reason": str(exc)}, {"probe_max": k})
    parts.extend(check_extension(fhat, k))
    ident = identity_functor(arr)
    relabel = corpus.relabel_functor(arr)
    for M in (ident, relabel, fhat):
        parts.append(check_counit(M, k))
    parts.append(check_counit_square(corpus.relabel_unit(relabel, ident), k))
    lams = corpus.transformation_corpus(max_copies=2)
    step = max(1, len(lams) // cfg.lambda_count)
    chosen = lams[::step][:cfg.lambda_count]
    sw = Sweep("lambda-hat-corpus", probe_max=k, count=len(chosen))
    hats = {}
    for lam in chosen:
        fh = hats.setdefault(id(lam.source), extend_functor(lam.source, arr))
        gh = hats.setdefault(id(lam.target), extend_functor(lam.target, arr))
        sw.absorb(check_lambda_hat(lam, fh, gh, k), transformation=lam.name)
    parts.append(sw.report(transformations=[lam.name for lam in chosen]))
    return combine("extension-round-trip", parts, probe_max=k)


def normalization_round_trip(cfg: SuiteConfig) -> Report:
    """``<d; delta>`` inverts ``[i; k_d]``, ``K . D = id``, and ``id + nabla`` is a groupoid."""
    parts = []
    for p, bound in ((2, cfg.max_dim + 1), (3, cfg.max_dim)):
        iso = Sweep(f"dk-iso[F{p}]", p=p, max_dim=bound)
        for g in rg_objects(p, bound):
            try:
                dk_iso(g)
                iso.case(True)
            except (ArithmeticError, ValueError) as exc:
                iso.case(False, str(exc), graph=g)
        parts.append(iso.report())
        rt = Sweep(f"normalize-denormalize[F{p}]", p=p, max_dim=bound)
        grp = Sweep(f"groupoid[F{p}]", p=p, max_dim=bound)
        for rows in range(bound + 1):
            for cols in range(bound + 1):
                for a in enumerate_matrices(p, rows, cols):
                    n = normalize(denormalize(a))
                    basis_ok = n.ker_basis == _second_injection(p, rows, cols)
                    rt.case(n.arrow == a and basis_ok, "K(D(a)) is not a", a=a, got=n.arrow)
                    grp.absorb(check_groupoid_axioms(a), a=a)
        parts += [rt.report(), grp.report()]
    return combine("normalization-round-trip", parts, max_dim=cfg.max_dim)


def _second_injection(p: int, rows: int, cols: int):
    return injection(p, (rows, cols), 1)


def two_cell_counts(cfg: SuiteConfig) -> Report:
    """Diagonals, graph nullhomotopies on ``D(f)`` and 2-cells from zero are in bijection."""
    arr = ArrowCategory(Mat(cfg.prime))
    sw = Sweep("two-cell-correspondence", p=cfg.prime, max_dim=cfg.max_dim)
    alternative = {"ill_typed": 0, "same": 0, "different": 0}
    histogram: dict[int, int] = defaultdict(int)
    for m in ProbeUniverse(arr, cfg.max_dim).arrows:
        r = two_cell_correspondence(m)
        sw.absorb(r, arrow=m)
        histogram[r.details["diagonals"]] += 1
        alt = r.details["target_c_reading"]
        if alt is None:
            alternative["ill_typed"] += 1
        else:
            alternative["same" if alt == r.details["rg_nullhomotopies"] else "different"] += 1
    return sw.report(count_histogram=dict(sorted(histogram.items())),
                     target_c_reading=alternative)


def cokernel_equals_kernel(cfg: SuiteConfig) -> Report:
    p = cfg.prime
    sw = Sweep("cokernel-equals-kernel", p=p, max_dim=cfg.max_dim)
    for rows in range(cfg.max_dim + 1):
        for cols in range(cfg.max_dim + 1):
            for a in enumerate_matrices(p, rows, cols):
                sw.absorb(check_cof_eq_ker(a, 1), a=a)
    for a in (mat(p, [[1]]), mat(p, [[0]])):
        sw.absorb(check_cof_eq_ker(a, cfg.probe_max), a=a, probe_dims=cfg.probe_max)
    return sw.report()


CRITERIA = (
    ("pushout-oracle", pushout_oracle),
    ("structure-axioms", structure_axioms),
    ("strong-cokernels", strong_cokernels),
    ("gamma-cokernel-exact", gamma_cokernel_exact),
    ("strong-colimits", strong_colimits),
    ("extension-round-trip", extension_round_trip),
    ("normalization-round-trip", normalization_round_trip),
    ("two-cell-correspondence", two_cell_counts),
    ("cokernel-equals-kernel", cokernel_equals_kernel),
)


def run_suite(cfg: SuiteConfig = SuiteConfig(), only=None) -> list[Report]:
    return [fn(cfg) for name, fn in CRITERIA if only is None or name in only]


def cli_determinism(cfg: SuiteConfig = SuiteConfig(), runs: int = 2) -> Report:
    """The ``suite`` subcommand, run in fresh processes, gives identical bytes and exit 0."""
    argv = [sys.executable, "-m", "nullhom", "suite", "--probe-max-size", str(cfg.probe_max),
            "--max-dim", str(cfg.max_dim), "--prime", str(cfg.prime), "--seed", str(cfg.seed)]
    outs = [subprocess.run(argv, capture_output=True) for _ in range(runs)]
    sw = Sweep("cli-determinism", runs=runs, **cfg.params())
    for i, o in enumerate(outs):
        sw.case(o.returncode == 0, "suite did not exit 0", run=i, code=o.returncode,
                stderr=o.stderr.decode(errors="replace")[-2000:])
    sw.case(len({o.stdout for o in outs}) == 1, "reports differ between runs")
    return sw.report(bytes=len(outs[0].stdout))


def randomized_spot_checks(cfg: SuiteConfig, draws: int = 25) -> Report:
    """Seeded draws beyond the exhaustive bounds: larger spans and larger graphs."""
    rng = random.Random(cfg.seed)
    sw = Sweep("randomized-spot-checks", seed=cfg.seed, draws=draws)
    for _ in range(draws):
        a, b, c = (rng.randint(0, 6) for _ in range(3))
        if a and not (b and c):
            b, c = max(b, 1), max(c, 1)
        f = FinSetMap(a, b, tuple(rng.randrange(b) for _ in range(a)))
        g = FinSetMap(a, c, tuple(rng.randrange(c) for _ in range(a)))
        po = pushout_finset(f, g)
        got = (po.apex_size, po.leg_from_B.table, po.leg_from_C.table)
        sw.case(got == naive_pushout(f.table, g.table, b, c), "pushout differs from oracle",
                f=f, g=g)
    p = cfg.prime
    for _ in range(draws):
        n, n0 = rng.randint(0, 5), rng.randint(0, 3)
        a = MatFp(p, n0, n, tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n0)))
        # move D(a) along a random change of basis of A1 to get a less special graph
        g = denormalize(a)
        u = _random_invertible(rng, p, g.A1_dim)
        u_inv = solve(u, eye(p, g.A1_dim))
        moved = RGObject(g.A1_dim, g.A0_dim, g.d @ u_inv, g.c @ u_inv, u @ g.i)
        try:
            dk_iso(moved)
            ok = normalize(g).arrow == a and check_groupoid_axioms(a).passed
            sw.case(ok, "normalization round trip or groupoid laws fail", a=a)
        except (ArithmeticError, ValueError) as exc:
            sw.case(False, str(exc), a=a, graph=moved)
    return sw.report()


def _random_invertible(rng: random.Random, p: int, n: int) -> MatFp:
    while True:
        m = MatFp(p, n, n, tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n)))
        if rank(m) == n:
            return m
