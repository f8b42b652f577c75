"""Witness assembly, projector-witness dominance, noise tolerance, seesaw search."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    HermitianOperator,
    PartyStructure,
    PureState,
    bipartitions,
    combine_bipartite,
    expectation,
    identity,
    min_eigenvalue,
    schmidt_max_sq,
    spectral_norm,
)

DOMINANCE_TOL_SCALE = 1e-8


class WitnessNeverFiresError(ValueError):
    """The witness cannot be negative on the target state, so no noise tolerance exists."""


@dataclass(frozen=True, eq=False)
class Witness:
    """Operator alpha*1 - c_op; a negative expectation certifies entanglement."""

    alpha: float
    c_op: HermitianOperator
    label: str = ""

    def __post_init__(self) -> None:
        if not math.isfinite(self.alpha):
            raise ValueError(f"witness constant must be finite, got {self.alpha}")

    def operator(self) -> HermitianOperator:
        return self.alpha * identity(self.c_op.structure) - self.c_op

    def value(self, state) -> float:
        return self.alpha - expectation(self.c_op, state)


@dataclass(frozen=True, eq=False)
class ProjectorWitness:
    """alpha_p*1 - |target><target| with alpha_p the maximal biseparable overlap."""

    alpha_p: float
    target: PureState

    def __post_init__(self) -> None:
        best = max(
            schmidt_max_sq(self.target, cut)
            for cut in bipartitions(self.target.structure.n_parties)
        )
        if abs(self.alpha_p - best) > 1e-10:
            raise ValueError(
                f"alpha_p={self.alpha_p} is not the maximal squared Schmidt coefficient {best}"
            )

    def operator(self) -> HermitianOperator:
        return self.alpha_p * identity(self.target.structure) - self.target.projector()

    def value(self, state) -> float:
        return self.alpha_p - expectation(self.target.projector(), state)


@dataclass(frozen=True)
class DominanceCertificate:
    """Record of a W - gamma*W_p >= 0 check."""

    gamma: float
    min_eig: float
    passed: bool
    tol: float


@dataclass(frozen=True, eq=False)
class SeesawResult:
    """Best biseparable value found, with the cut, restart and state attaining it."""

    value: float
    cut: tuple[int, ...]
    restart: int
    state: PureState


def make_witness(alpha: float, c_op: HermitianOperator, label: str = "") -> Witness:
    return Witness(float(alpha), c_op, label)


def projector_witness(target: PureState) -> ProjectorWitness:
    """Projector witness with constant = max squared Schmidt coefficient over all cuts."""
    if target.structure.n_parties < 2:
        raise ValueError("projector witness needs at least two parties")
    alpha_p = max(
        schmidt_max_sq(target, cut) for cut in bipartitions(target.structure.n_parties)
    )
    return ProjectorWitness(alpha_p, target)


def verify_dominance(
    w: Witness, wp: ProjectorWitness, gamma: float, tol: float | None = None
) -> DominanceCertificate:
    """Check W - gamma*W_p >= 0 via the smallest eigenvalue of the difference.

    The default tolerance is -1e-8 scaled by the spectral norm of W, since
    witness constants quoted to a few digits cannot give exact semidefiniteness.
    """
    gamma = float(gamma)
    if gamma <= 0.0:
        raise ValueError(f"dominance factor must be positive, got {gamma}")
    diff = w.operator() - gamma * wp.operator()
    lowest = min_eigenvalue(diff)
    if tol is None:
        tol = DOMINANCE_TOL_SCALE * spectral_norm(w.operator())
    return DominanceCertificate(gamma, lowest, lowest >= -tol, float(tol))


def noise_tolerance(w: Witness, target: PureState) -> float:
    """Largest white-noise fraction at which the witness still fires on the target.

    Solves alpha = (p/dim) Tr(c_op) + (1-p) <c_op> exactly; the left side is
    affine in p so the root is closed-form.
    """
    c_target = expectation(w.c_op, target)
    if c_target <= w.alpha:
        raise WitnessNeverFiresError(
            f"expectation {c_target} does not exceed the witness constant {w.alpha}"
        )
    c_mixed = w.c_op.trace() / w.c_op.structure.dim
    denom = c_target - c_mixed
    if denom <= 0.0:
        raise ArithmeticError("maximally mixed state outperforms the target; no finite tolerance")
    return float((c_target - w.alpha) / denom)


def _top_eigvec(mat: np.ndarray) -> tuple[float, np.ndarray]:
    vals, vecs = np.linalg.eigh(mat)
    return float(vals[-1]), vecs[:, -1]


def biseparable_max(
    op: HermitianOperator, restarts: int = 200, iters: int = 500, seed: int = 1234
) -> SeesawResult:
    """Lower bound on max <a x b|op|a x b> over all bipartitions, by alternating
    top-eigenvector updates of the operator contracted against the other side.

    Deterministic for a fixed seed; ties between (value, cut index, restart)
    are broken lexicographically.  The returned value never exceeds the global
    maximum eigenvalue of `op`.
    """
    structure = op.structure
    dims = structure.dims
    n = structure.n_parties
    tensor = op.matrix.reshape(dims + dims)
    best: SeesawResult | None = None
    for cut_index, cut in enumerate(bipartitions(n)):
        axes_a = [p - 1 for p in cut]
        axes_b = [k for k in range(n) if k not in axes_a]
        dim_a = int(np.prod([dims[k] for k in axes_a]))
        dim_b = structure.dim // dim_a
        perm = axes_a + axes_b
        contracted = tensor.transpose(perm + [n + ax for ax in perm]).reshape(
            dim_a, dim_b, dim_a, dim_b
        )
        for restart in range(restarts):
            rng = np.random.default_rng([seed, cut_index, restart])
            vec_a = rng.standard_normal(dim_a) + 1j * rng.standard_normal(dim_a)
            vec_a /= np.linalg.norm(vec_a)
            vec_b = rng.standard_normal(dim_b) + 1j * rng.standard_normal(dim_b)
            vec_b /= np.linalg.norm(vec_b)
            value = -math.inf
            for _ in range(iters):
                mat_a = np.einsum("ijkl,j,l->ik", contracted, vec_b.conj(), vec_b)
                _, vec_a = _top_eigvec(mat_a)
                mat_b = np.einsum("ijkl,i,k->jl", contracted, vec_a.conj(), vec_a)
                new_value, vec_b = _top_eigvec(mat_b)
                if abs(new_value - value) < 1e-10:
                    value = new_value
                    break
                value = new_value
            if best is None or value > best.value:
                state = combine_bipartite(vec_a, cut, vec_b, structure)
                best = SeesawResult(float(value), cut, restart, state)
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# Reference constants for the three witness families, as published alongside
# the constructions this package reproduces.


@dataclass(frozen=True)
class Ghz4Case:
    """One row of the GHZ witness summary: angles, witness constant, dominance
    factor, and quoted white-noise tolerance."""

    theta: float
    phi: float
    alpha: float
    gamma: float
    noise_delta: float
    label: str


GHZ4_CASES: tuple[Ghz4Case, ...] = (
    Ghz4Case(math.pi / 4, math.pi / 6, 9.01, 6.54, 0.139, "theta=pi/4 phi=pi/6"),
    Ghz4Case(math.pi / 4.9, 0.0, 9.21, 6.44, 0.150, "theta=pi/4.9 phi=0"),
    Ghz4Case(math.pi / 3.7, math.pi / 9, 8.92, 6.86, 0.169, "theta=pi/3.7 phi=pi/9"),
)

#: Expected witness expectation values: row = witness case, column = state case.
GHZ4_WITNESS_GRID: tuple[tuple[float, float, float], ...] = (
    (-1.45, -1.83, -1.72),
    (-1.25, -1.63, -1.52),
    (-1.55, -1.92, -1.81),
)

SINGLET_ALPHA = 36.5
SINGLET_GAMMA = 30.0
SINGLET_NOISE_DELTA = 15.0 / 88.0

GHZ4X3_ALPHA = 40.5
GHZ4X3_GAMMA = 36.0
GHZ4X3_NOISE_DELTA = 0.4
