"""Evaluation of scenario declarations, memoized per run."""
import hashlib
import logging
import threading
from dataclasses import dataclass

import numpy as np

from algebra import StarAlgebra, contains, direct_sum, full_matrix_algebra, generate
from errors import DimensionMismatch, NotInAlgebra, ScenarioSemanticError
from frontend.syntax import (
    AlgebraDecl,
    AllOutcomes,
    Call,
    Complement,
    Let,
    MatrixLiteral,
    MeasurementDecl,
    Name,
    NameList,
    Number,
    OutcomeSet,
    Scenario,
    Weighted,
)
from measurement import (
    PVM,
    MeasurementProcess,
    corrupted_measurement,
    ideal_measurement,
    pointer_algebra,
    pvm_from_observable,
)
from numeric import random_density, random_hermitian
from states import GNSRepresentation, State, gns, mixture, normal_lift, state_from_density, state_from_vector

logger = logging.getLogger(__name__)

PAULI = {
    "pauli_x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "pauli_y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "pauli_z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}
SCALAR_FUNCTIONS = {"cos": np.cos, "sin": np.sin, "sqrt": np.sqrt, "exp": np.exp}


def fourier_matrix(n: int) -> np.ndarray:
    k = np.arange(n)
    return np.exp(2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)


@dataclass(frozen=True, eq=False)
class MeasurementSetup:
    """A measurement process together with the way scenario states and
    observables reach its object space."""

    name: str
    process: MeasurementProcess
    object_algebra: StarAlgebra | None = None
    representation: GNSRepresentation | None = None

    def lift(self, phi: State) -> State:
        if self.representation is None:
            return phi
        return normal_lift(self.representation, phi)

    def transfer(self, X) -> np.ndarray:
        if self.representation is None:
            return np.asarray(X, dtype=np.complex128)
        return self.representation.transfer(X)


class ScenarioEnvironment:
    """
    Lazily evaluates the declarations of one scenario and keeps the values,
    so concurrent queries share algebras, states and processes.
    """

    def __init__(self, scenario: Scenario, seed: int):
        self.logger = logging.getLogger(__name__)
        self.scenario = scenario
        self.seed = seed
        self._values: dict[str, object] = {}
        self._lock = threading.RLock()

    def value(self, name: str):
        with self._lock:
            if name not in self._values:
                decl = self.scenario.declaration(name)
                if decl is None:
                    raise ScenarioSemanticError(f"undeclared name '{name}'", name=name)
                self.logger.debug("ScenarioEnvironment: evaluating '%s'", name)
                self._values[name] = self._evaluate_declaration(decl)
            return self._values[name]

    def _rng(self, name: str) -> np.random.Generator:
        digest = hashlib.sha256(name.encode("utf-8")).digest()
        return np.random.default_rng([self.seed, int.from_bytes(digest[:8], "little")])

    def _evaluate_declaration(self, decl):
        if isinstance(decl, Let):
            return self.evaluate(decl.expr, owner=decl.name)
        if isinstance(decl, AlgebraDecl):
            return self._algebra(decl)
        return self._measurement(decl)

    # expressions
    def evaluate(self, expr, owner: str = ""):
        if isinstance(expr, Number):
            return expr.value
        if isinstance(expr, Name):
            if expr.ident == "pi":
                return complex(np.pi)
            if expr.ident in PAULI:
                return PAULI[expr.ident].copy()
            return self.value(expr.ident)
        if isinstance(expr, MatrixLiteral):
            return np.array([[self.scalar(e) for e in row] for row in expr.rows], dtype=np.complex128)
        if isinstance(expr, Call):
            return self._call(expr, owner)
        raise ScenarioSemanticError(f"cannot evaluate {type(expr).__name__}", line=expr.line, col=expr.col)

    def scalar(self, expr) -> complex:
        return complex(self.evaluate(expr))

    def real(self, expr) -> float:
        value = self.scalar(expr)
        if abs(value.imag) > 1e-12:
            raise ScenarioSemanticError(f"expected a real number, got {value}", line=expr.line, col=expr.col)
        return value.real

    def matrix(self, expr) -> np.ndarray:
        return np.asarray(self.evaluate(expr), dtype=np.complex128)

    def state(self, expr) -> State:
        value = self.evaluate(expr)
        if not isinstance(value, State):
            raise ScenarioSemanticError("expected a state", line=expr.line, col=expr.col)
        return value

    def _call(self, call: Call, owner: str):
        func, args = call.func, call.args
        if func == "neg":
            value = self.evaluate(args[0], owner)
            return -value
        if func in SCALAR_FUNCTIONS:
            return complex(SCALAR_FUNCTIONS[func](self.scalar(args[0])))
        if func in ("identity", "fourier", "random_hermitian", "maximally_mixed", "random_state"):
            n = int(self.real(args[0]))
            if func == "identity":
                return np.eye(n, dtype=np.complex128)
            if func == "fourier":
                return fourier_matrix(n)
            if func == "random_hermitian":
                return random_hermitian(self._rng(owner), n)
            if func == "maximally_mixed":
                return State(np.eye(n, dtype=np.complex128) / n)
            return State(random_density(self._rng(owner), n))
        if func == "diag":
            return np.diag([self.scalar(a) for a in args]).astype(np.complex128)
        if func in ("vector", "ket"):
            v = np.array([self.scalar(a) for a in args], dtype=np.complex128)
            if func == "ket":
                v = v / np.linalg.norm(v)
            return state_from_vector(v)
        if func == "kron":
            left, right = self.evaluate(args[0], owner), self.evaluate(args[1], owner)
            if isinstance(left, State):
                return State(np.kron(left.density, right.density))
            return np.kron(left, right)
        if func == "density":
            return state_from_density(self.matrix(args[0]))
        if func == "mixture":
            terms = [a for a in args if isinstance(a, Weighted)]
            return mixture([self.real(t.weight) for t in terms], [self.state(t.item) for t in terms])
        raise ScenarioSemanticError(f"unknown function '{func}'", line=call.line, col=call.col, name=func)

    # blocks
    def _algebra(self, decl: AlgebraDecl) -> StarAlgebra:
        if decl.kind == "generators":
            gens = [self.matrix(g) for g in decl.args]
            return generate(gens, gens[0].shape[0], label=decl.name)
        sizes = [int(self.real(a)) for a in decl.args]
        if decl.kind == "direct_sum":
            return direct_sum(sizes)
        if decl.kind == "full":
            return full_matrix_algebra(sizes[0])
        return pointer_algebra(sizes[0])

    def _measurement(self, decl: MeasurementDecl) -> MeasurementSetup:
        observable = self.matrix(decl.get("observable"))
        algebra = self.value(decl.get("algebra").ident) if decl.get("algebra") is not None else None
        representation = None
        if decl.get("reference") is not None:
            reference = self.value(decl.get("reference").ident)
            representation = gns(algebra, reference)
            observable = representation.transfer(observable)
            object_algebra = representation.image_algebra
        else:
            object_algebra = algebra
            if algebra is not None:
                membership = contains(algebra, observable)
                if not membership:
                    raise NotInAlgebra(
                        f"observable of '{decl.name}' is not in the algebra (residual {membership.residual:.3e})"
                    )
        pvm = pvm_from_observable(observable)
        apparatus = self.state(decl.get("pointer")) if decl.get("pointer") is not None else None
        if apparatus is not None and apparatus.ambient_dim != len(pvm):
            raise DimensionMismatch(
                f"pointer state of '{decl.name}' has dim {apparatus.ambient_dim}, observable has {len(pvm)} outcomes"
            )
        swap = decl.get("swap")
        if swap is not None:
            process = corrupted_measurement(pvm, (int(self.real(swap[0])), int(self.real(swap[1]))), apparatus)
        else:
            process = ideal_measurement(pvm, apparatus)
        return MeasurementSetup(
            name=decl.name,
            process=process,
            object_algebra=object_algebra,
            representation=representation,
        )

    def measurement(self, value) -> MeasurementSetup:
        return self.value(value.ident)

    def algebra(self, value) -> StarAlgebra:
        return self.value(value.ident)

    def states(self, value: NameList) -> list[State]:
        return [self.state(name) for name in value.names]

    def outcomes(self, value, pvm: PVM) -> list[float]:
        """Outcome values of a set expression, validated against the PVM."""
        if isinstance(value, AllOutcomes):
            return list(pvm.outcomes)
        inner = value.inner if isinstance(value, Complement) else value
        assert isinstance(inner, OutcomeSet)
        chosen = [pvm.outcomes[j] for j in pvm.indices(self.real(v) for v in inner.values)]
        if isinstance(value, Complement):
            return [a for a in pvm.outcomes if a not in chosen]
        return chosen
