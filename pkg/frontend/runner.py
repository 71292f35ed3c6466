"""Executes the queries of a scenario and assembles the report."""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

import toolkit_config
from equivalence import (
    StateFamily,
    born_rule,
    joint_distribution,
    object_pvm_on_composite,
    pointer_readout_pvm,
    product_family,
    spectrally_equivalent,
    verify_mppc,
)
from errors import MppcFailed
from frontend.environment import ScenarioEnvironment
from frontend.report import Check, QueryResult, Report
from frontend.syntax import Name, Query, Scenario
from measurement import (
    composite_sector_measure,
    generalized_born,
    instrument_functional_composite,
    pvm_from_observable,
)
from numeric import kron
from observability import metrics
from sectors import (
    center,
    central_measure,
    indicator,
    instrument_functional,
    is_factor_state,
    separation,
)
from states import gns

REPRODUCTION_TOL = 1e-10
MORPHISM_TOL = 1e-9
SECTOR_TOL = 1e-9
PROBABILITY_TOL = 1e-10
AUTOMORPHISM_TOL = 1e-8


class ScenarioRunner:
    """
    Runs every query of a parsed scenario against a shared environment.
    A failing query is recorded and never stops the others.
    """

    def __init__(self, tol: float | None = None, seed: int | None = None,
                 workers: int | None = None, timings: bool = False):
        self.logger = logging.getLogger(__name__)
        self.tol = tol
        self.seed = seed
        self.workers = workers or toolkit_config.workers
        self.timings = timings
        self.handlers = {
            "gns": self._gns,
            "sectors": self._sectors,
            "born": self._born,
            "generalized_born": self._generalized_born,
            "spectral_eq": self._spectral_eq,
            "mppc": self._mppc,
            "instrument": self._instrument,
        }

    def run(self, scenario: Scenario) -> Report:
        tol = self.tol if self.tol is not None else (
            scenario.tolerance if scenario.tolerance is not None else toolkit_config.default_tol
        )
        seed = self.seed if self.seed is not None else (
            scenario.seed if scenario.seed is not None else toolkit_config.default_seed
        )
        env = ScenarioEnvironment(scenario, seed)
        self.logger.info(
            "ScenarioRunner: running '%s' (%d queries, tol=%g, seed=%d, workers=%d)",
            scenario.name, len(scenario.queries), tol, seed, self.workers,
        )
        jobs = list(enumerate(scenario.queries))
        if self.workers > 1 and len(jobs) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(lambda job: self.run_query(env, job[0], job[1], tol), jobs))
        else:
            results = [self.run_query(env, index, query, tol) for index, query in jobs]

        self.logger.info("ScenarioRunner: metrics snapshot: %s", metrics.snapshot())
        return Report(
            scenario=scenario.name,
            seed=seed,
            tol=tol,
            rank_tol=toolkit_config.rank_tol,
            results=results,
            timings=self.timings,
        )

    def run_query(self, env: ScenarioEnvironment, index: int, query: Query, tol: float) -> QueryResult:
        start_time = metrics.record_query_start()
        result = QueryResult(index=index, kind=query.kind, line=query.line)
        self.logger.info("ScenarioRunner: query %d (%s) at line %d", index, query.kind, query.line)
        try:
            self.handlers[query.kind](env, query, tol, result)
            result.settle()
        except MppcFailed as e:
            self.logger.warning("ScenarioRunner: query %d not applicable: %s", index, e)
            result.status, result.error = "fail", f"MppcFailed: {e}"
        except Exception as e:
            self.logger.exception("ScenarioRunner: error in query %d (%s)", index, query.kind)
            result.status, result.error = "error", f"{type(e).__name__}: {e}"
        finally:
            elapsed = metrics.record_query_end(start_time)
            result.elapsed = elapsed
            metrics.record_outcome(result.status)
        self.logger.info("ScenarioRunner: query %d -> %s", index, result.status)
        return result

    # handlers
    def _gns(self, env, query, tol, result):
        alg = env.algebra(query.get("algebra"))
        rep = gns(alg, env.state(query.get("state")))
        rank = rep.cyclic_rank()
        result.values.update(algebra_dim=alg.dim, gns_dim=rep.gns_dim, cyclic_rank=rank)
        result.checks += [
            Check("reproduction", rep.reproduction_residual(), REPRODUCTION_TOL),
            Check("*-morphism", rep.morphism_residual(), MORPHISM_TOL),
            Check("cyclicity", float(abs(rank - rep.gns_dim)), 0.5),
        ]

    def _sectors(self, env, query, tol, result):
        alg = env.algebra(query.get("algebra"))
        omega = env.state(query.get("state"))
        rep = gns(alg, omega)
        decomposition = center(rep)
        measure = central_measure(rep, omega)
        rows = []
        for component in measure.components:
            rows.append({
                "label": component.label,
                "weight": component.weight,
                "rank": int(round(np.trace(component.projection).real)),
                "factor": is_factor_state(alg, component.state),
            })
        separations = [
            max(1.0 - w1, w2)
            for i, a in enumerate(measure.components)
            for b in measure.components[i + 1:]
            for w1, w2 in [separation(alg, a.state, b.state)]
        ]
        result.values.update(
            center_dim=decomposition.dim,
            sectors=len(measure.components),
            factor_state=decomposition.dim == 1,
            weights=list(measure.weights),
            suppressed=list(measure.suppressed),
        )
        result.tables["sectors"] = rows
        result.checks += [
            Check("central projections", decomposition.invariant_residual(), SECTOR_TOL),
            Check("projection count", float(abs(len(decomposition.minimal_projections) - decomposition.dim)), 0.5),
            Check("normalization", abs(sum(measure.weights) - 1.0), PROBABILITY_TOL),
            Check("barycenter", measure.barycenter_residual(omega), SECTOR_TOL),
            Check("mutual disjointness", max(separations, default=0.0), SECTOR_TOL),
        ]

    def _born(self, env, query, tol, result):
        setup = env.measurement(query.get("measurement"))
        phi = setup.lift(env.state(query.get("state")))
        outcomes = env.outcomes(query.get("outcomes"), setup.process.pvm)
        born = born_rule(setup.process, phi, outcomes, tol=tol)
        result.values.update(outcomes=outcomes, generalized=born.lhs, classical=born.rhs,
                             mppc_violation=born.mppc_violation)
        result.checks.append(Check("born rule", born.residual, tol))

    def _generalized_born(self, env, query, tol, result):
        setup = env.measurement(query.get("measurement"))
        process = setup.process
        phi = setup.lift(env.state(query.get("state")))
        outcomes = env.outcomes(query.get("outcomes"), process.pvm)
        rest = [a for a in process.outcomes if a not in outcomes]
        p = generalized_born(process, phi, outcomes)
        q = generalized_born(process, phi, rest)
        oracle = float(phi(process.pvm.projection(outcomes)).real)
        result.values.update(outcomes=outcomes, probability=p, complement=q, oracle=oracle)
        result.checks += [
            Check("range", max(0.0, -p, p - 1.0), PROBABILITY_TOL),
            Check("additivity", abs(p + q - 1.0), PROBABILITY_TOL),
        ]

    def _expect(self, query) -> bool:
        value = query.get("expect")
        return not (isinstance(value, Name) and value.ident == "false")

    def _joint_rows(self, E1, E2, members, tol):
        rows = []
        for i, phi in enumerate(members):
            joint = joint_distribution(E1, E2, phi, tol=tol)
            rows.append({
                "state": i,
                "off_diagonal": joint.off_diagonal_mass,
                "min_mass": joint.min_mass,
                "total": joint.total,
                "diagonal": joint.diagonal_support,
            })
        return rows

    def _spectral_eq(self, env, query, tol, result):
        E1 = pvm_from_observable(env.matrix(query.get("left")))
        E2 = pvm_from_observable(env.matrix(query.get("right")))
        family = StateFamily(tuple(env.states(query.get("states"))), description="scenario states")
        check = spectrally_equivalent(E1, E2, family, tol=tol)
        rows = self._joint_rows(E1, E2, family.members, tol)
        per_state = [spectrally_equivalent(E1, E2, StateFamily((phi,)), tol=tol).equivalent for phi in family]
        disagreements = sum(1 for row, eq in zip(rows, per_state) if row["diagonal"] != eq)
        result.values.update(equivalent=check.equivalent, violation=check.violation,
                             worst_pair=list(check.pair) if check.pair else [])
        result.tables["joint distributions"] = rows
        result.checks += [
            Check("spectral equivalence", check.violation, tol, expect_within=self._expect(query)),
            Check("joint support agreement", float(disagreements), 0.5),
        ]

    def _mppc(self, env, query, tol, result):
        setup = env.measurement(query.get("measurement"))
        process = setup.process
        family = product_family(process, [setup.lift(s) for s in env.states(query.get("states"))])
        check = verify_mppc(process, family, tol=tol)
        rows = self._joint_rows(pointer_readout_pvm(process), object_pvm_on_composite(process), family.members, tol)
        result.values.update(holds=check.equivalent, violation=check.violation, family_size=len(family),
                             worst_member=check.member if check.member is not None else -1)
        result.tables["joint distributions"] = rows
        result.checks += [
            Check("mppc", check.violation, tol, expect_within=self._expect(query)),
            Check("automorphism", process.automorphism_residual(setup.object_algebra), AUTOMORPHISM_TOL),
        ]

    def _instrument(self, env, query, tol, result):
        setup = env.measurement(query.get("measurement"))
        process = setup.process
        phi = setup.lift(env.state(query.get("state")))
        X = setup.transfer(env.matrix(query.get("observable")))
        outcomes = env.outcomes(query.get("outcomes"), process.pvm)
        chi = {a: (1.0 if a in outcomes else 0.0) for a in process.outcomes}
        direct = instrument_functional_composite(process, phi, chi, X)

        sectors = composite_sector_measure(process, phi, setup.object_algebra)
        labels = [label for label, a in sectors.outcome_of.items() if a in outcomes]
        via_sectors = instrument_functional(
            sectors.measure, indicator(sectors.measure, labels), kron(X, np.eye(process.pointer_dim))
        )
        result.values.update(
            outcomes=outcomes,
            value_re=direct.real,
            value_im=direct.imag,
            probability=generalized_born(process, phi, outcomes),
        )
        result.tables["pointer sectors"] = [
            {
                "label": c.label,
                "outcome": sectors.outcome_of[c.label],
                "weight": c.weight,
                "purity_residual": sectors.purity_residuals[c.label],
            }
            for c in sectors.measure.components
        ]
        result.checks += [
            Check("sector route", abs(direct - via_sectors), tol),
            Check("sector/born consistency", sectors.consistency_residual(phi), PROBABILITY_TOL),
            Check("pointer purity", sectors.worst_purity_residual(), SECTOR_TOL),
        ]


def run(scenario: Scenario, **options) -> Report:
    return ScenarioRunner(**options).run(scenario)
