"""In-process property suite behind `app.py selftest`."""
import logging
from itertools import combinations

import numpy as np

import toolkit_config
from algebra import direct_sum, generate, span_equal
from equivalence import (
    StateFamily,
    equivalence_relation_check,
    joint_distribution,
    object_pvm_on_composite,
    pointer_readout_pvm,
    product_family,
    verify_mppc,
)
from frontend.report import Check, QueryResult, Report
from measurement import (
    PVM,
    composite_sector_measure,
    corrupted_measurement,
    generalized_born,
    ideal_measurement,
    pvm_from_observable,
)
from numeric import random_density, random_hermitian, random_unitary, seeded_rng
from observability import metrics
from sectors import (
    are_disjoint,
    central_measure,
    commutant,
    instrument_functional,
    kappa_pairing,
)
from states import State, gns

logger = logging.getLogger(__name__)


def _random_algebra(rng, index: int):
    if index % 3 == 0:
        blocks = [int(b) for b in rng.integers(1, 3, size=int(rng.integers(1, 3)))]
        return direct_sum(blocks)
    n = int(rng.integers(2, 4))
    if index % 3 == 1:
        return generate([random_hermitian(rng, n), random_hermitian(rng, n)], n)
    # M_{n-1} (+) C: a block-diagonal generator keeps a nontrivial center
    block = np.zeros((n, n), dtype=np.complex128)
    block[: n - 1, : n - 1] = random_hermitian(rng, n - 1)
    gens = [block, np.diag([1.0] * (n - 1) + [2.0])]
    return generate(gens, n)


def gns_reproduction(rng, result: QueryResult):
    reproduction, morphism = 0.0, 0.0
    for index in range(20):
        alg = _random_algebra(rng, index)
        n = alg.ambient_dim
        omega = State(random_density(rng, n, rank=1 + index % n))
        rep = gns(alg, omega)
        reproduction = max(reproduction, rep.reproduction_residual())
        morphism = max(morphism, rep.morphism_residual())
    result.values["pairs"] = 20
    result.checks += [Check("reproduction", reproduction, 1e-10), Check("*-morphism", morphism, 1e-9)]


def double_commutant(rng, result: QueryResult):
    worst = 0.0
    for index in range(10):
        alg = _random_algebra(rng, index)
        worst = max(worst, span_equal(commutant(commutant(alg)), alg))
    result.values["algebras"] = 10
    result.checks.append(Check("A'' = A", worst, 1e-8))


def _two_block_fixture():
    alg = direct_sum([2, 3])
    omega = State(np.diag([0.125, 0.125, 0.25, 0.25, 0.25]).astype(np.complex128))
    rep = gns(alg, omega)
    return alg, omega, rep, central_measure(rep, omega)


def sector_decomposition(rng, result: QueryResult):
    alg, omega, rep, measure = _two_block_fixture()
    weights = sorted(measure.weights)
    first, second = measure.components
    result.values.update(sectors=len(measure.components), weights=list(measure.weights))
    result.checks += [
        Check("two components", float(abs(len(measure.components) - 2)), 0.5),
        Check("weights", max(abs(weights[0] - 0.25), abs(weights[1] - 0.75)), 1e-10),
        Check("barycenter", measure.barycenter_residual(omega), 1e-9),
        Check("disjoint", 0.0 if are_disjoint(alg, first.state, second.state) else 1.0, 0.5),
    ]


def kappa_identity(rng, result: QueryResult):
    alg, omega, rep, measure = _two_block_fixture()
    worst = 0.0
    for _ in range(50):
        f = {label: complex(*rng.normal(size=2)) for label in measure.all_labels}
        X = alg.element(rng.normal(size=alg.dim) + 1j * rng.normal(size=alg.dim))
        worst = max(worst, abs(instrument_functional(measure, f, X) - kappa_pairing(measure, f, X)))
    result.values["draws"] = 50
    result.checks.append(Check("instrument = kappa pairing", worst, 1e-9))


def _subsets(values):
    for r in range(len(values) + 1):
        yield from combinations(values, r)


def born_oracle(rng, result: QueryResult):
    worst = 0.0
    for n in (2, 3, 4):
        A = np.diag(np.arange(n, dtype=float))
        Q = random_unitary(rng, n)
        pvm = pvm_from_observable(Q @ A @ Q.conj().T)
        process = ideal_measurement(pvm)
        for _ in range(20):
            phi = State(random_density(rng, n))
            for delta in _subsets(pvm.outcomes):
                oracle = np.trace(phi.density @ pvm.projection(delta)).real
                worst = max(worst, abs(generalized_born(process, phi, delta) - oracle))
    angles = 0.0
    pvm = pvm_from_observable(np.diag([0.0, 1.0]))
    process = ideal_measurement(pvm)
    for theta in (0.3, 0.7, 1.1):
        phi = State(np.outer([np.cos(theta), np.sin(theta)], [np.cos(theta), np.sin(theta)]).astype(np.complex128))
        angles = max(angles, abs(generalized_born(process, phi, [1.0]) - np.sin(theta) ** 2))
    result.checks += [Check("oracle", worst, 1e-10), Check("sin^2 angles", angles, 1e-10)]


def sector_born_consistency(rng, result: QueryResult):
    consistency, purity = 0.0, 0.0
    for n in (2, 3):
        pvm = pvm_from_observable(random_hermitian(rng, n))
        process = ideal_measurement(pvm)
        for _ in range(3):
            phi = State(random_density(rng, n))
            sectors = composite_sector_measure(process, phi)
            consistency = max(consistency, sectors.consistency_residual(phi))
            purity = max(purity, sectors.worst_purity_residual())
    result.checks += [Check("sector = born", consistency, 1e-10), Check("pointer purity", purity, 1e-9)]


def mppc_and_joint(rng, result: QueryResult):
    pvm = pvm_from_observable(random_hermitian(rng, 3))
    states = [State(random_density(rng, 3)) for _ in range(5)]
    process = ideal_measurement(pvm)
    family = product_family(process, states)
    check = verify_mppc(process, family)
    readout, obj = pointer_readout_pvm(process), object_pvm_on_composite(process)
    off_diagonal = max(joint_distribution(readout, obj, phi).off_diagonal_mass for phi in family)
    corrupted = corrupted_measurement(pvm, (0, 1))
    broken = verify_mppc(corrupted, product_family(corrupted, states))
    result.values.update(ideal_violation=check.violation, corrupted_violation=broken.violation)
    result.checks += [
        Check("ideal mppc", check.violation, 1e-9),
        Check("joint off-diagonal", off_diagonal, 1e-10),
        Check("corrupted mppc fails", broken.violation, 0.1, expect_within=False),
    ]


def equivalence_relation(rng, result: QueryResult):
    Q = random_unitary(rng, 3)

    def rotated(diagonals):
        return PVM(
            outcomes=(0.0, 1.0),
            projections=tuple(Q @ np.diag(d).astype(np.complex128) @ Q.conj().T for d in diagonals),
        )

    pvms = [
        rotated([[1, 0, 0], [0, 1, 1]]),
        rotated([[1, 1, 0], [0, 0, 1]]),
        rotated([[1, 0, 1], [0, 1, 0]]),
    ]
    v = Q[:, 0]
    family = StateFamily((State(np.outer(v, v.conj())),), description="common eigenvector")
    report = equivalence_relation_check(pvms, family)
    result.values.update(reflexive=report.reflexive, symmetric=report.symmetric, transitive=report.transitive)
    result.checks += [
        Check("relation holds", 0.0 if report.passed else 1.0, 0.5),
        Check("vector criterion", report.worst_residual, 1e-9),
    ]


PROPERTIES = [
    ("gns reproduction", gns_reproduction),
    ("double commutant", double_commutant),
    ("sector decomposition", sector_decomposition),
    ("kappa identity", kappa_identity),
    ("born oracle", born_oracle),
    ("sector/born consistency", sector_born_consistency),
    ("mppc and joint support", mppc_and_joint),
    ("equivalence relation", equivalence_relation),
]


def run_selftest(seed: int | None = None, timings: bool = False) -> Report:
    seed = toolkit_config.default_seed if seed is None else seed
    results = []
    for index, (name, prop) in enumerate(PROPERTIES):
        start_time = metrics.record_query_start()
        result = QueryResult(index=index, kind=name)
        try:
            prop(seeded_rng([seed, index]), result)
            result.settle()
        except Exception as e:
            logger.exception("selftest: property '%s' raised", name)
            result.status, result.error = "error", f"{type(e).__name__}: {e}"
        finally:
            result.elapsed = metrics.record_query_end(start_time)
            metrics.record_outcome(result.status)
        logger.info("selftest: %s -> %s", name, result.status)
        results.append(result)
    return Report(
        scenario="selftest",
        seed=seed,
        tol=toolkit_config.default_tol,
        rank_tol=toolkit_config.rank_tol,
        results=results,
        timings=timings,
    )
