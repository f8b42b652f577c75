"""Dense complex tensor algebra for small multi-party Hilbert spaces.

Party labels are 1-based throughout the package, and party 1 is the leftmost
(most significant) tensor factor.  All container types are immutable after
construction and every operation is a pure function, so values can be shared
freely between concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

# Structural tolerances guard object construction (hermiticity, norm, trace);
# the spectral tolerance is the default accuracy target of eigenvalue checks.
STRUCTURAL_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
SPECTRAL_TOL = 1e-9
IMAG_TOL = 1e-10


class EigensolverError(RuntimeError):
    """Dense Hermitian eigensolver failed to converge."""


def set_tolerances(structural: float | None = None, spectral: float | None = None) -> None:
    """Override the module-wide structural / spectral tolerances."""
    global STRUCTURAL_TOL, SPECTRAL_TOL
    if structural is not None:
        STRUCTURAL_TOL = float(structural)
    if spectral is not None:
        SPECTRAL_TOL = float(spectral)


@dataclass(frozen=True)
class PartyStructure:
    """Ordered list of local dimensions, one entry per party."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("PartyStructure needs at least one party")
        if any(d < 2 for d in dims):
            raise ValueError(f"local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        out = 1
        for d in self.dims:
            out *= d
        return out

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def parties(self) -> range:
        return range(1, len(self.dims) + 1)

    def local_dim(self, party: int) -> int:
        self.check_party(party)
        return self.dims[party - 1]

    def check_party(self, party: int) -> None:
        if not 1 <= int(party) <= len(self.dims):
            raise ValueError(f"party {party} outside 1..{len(self.dims)}")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over a tensor-product Hilbert space."""

    amplitudes: np.ndarray
    structure: PartyStructure

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.structure.dim:
            raise ValueError(
                f"amplitude vector has length {amps.size}, structure needs {self.structure.dim}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > STRUCTURAL_TOL:
            raise ValueError(f"state norm {norm!r} differs from 1 beyond tolerance")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    def projector(self) -> HermitianOperator:
        return HermitianOperator(np.outer(self.amplitudes, self.amplitudes.conj()), self.structure)

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.structure)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix with party structure."""

    matrix: np.ndarray
    structure: PartyStructure

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=np.complex128)
        _check_square(mat, self.structure)
        _check_hermitian(mat)
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {trace!r} differs from 1")
        lowest = float(np.linalg.eigvalsh(mat)[0])
        if lowest < -PSD_TOL:
            raise ValueError(f"density matrix has negative eigenvalue {lowest!r}")
        object.__setattr__(self, "matrix", _frozen(mat))


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Dense complex matrix asserted Hermitian, with party structure."""

    matrix: np.ndarray
    structure: PartyStructure

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=np.complex128)
        _check_square(mat, self.structure)
        _check_hermitian(mat)
        object.__setattr__(self, "matrix", _frozen(mat))

    def __add__(self, other: HermitianOperator) -> HermitianOperator:
        self._check_same_structure(other)
        return HermitianOperator(self.matrix + other.matrix, self.structure)

    def __sub__(self, other: HermitianOperator) -> HermitianOperator:
        self._check_same_structure(other)
        return HermitianOperator(self.matrix - other.matrix, self.structure)

    def __mul__(self, scale: float) -> HermitianOperator:
        return HermitianOperator(float(scale) * self.matrix, self.structure)

    __rmul__ = __mul__

    def __neg__(self) -> HermitianOperator:
        return HermitianOperator(-self.matrix, self.structure)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def _check_same_structure(self, other: HermitianOperator) -> None:
        if not isinstance(other, HermitianOperator):
            raise TypeError(f"expected HermitianOperator, got {type(other).__name__}")
        if self.structure.dims != other.structure.dims:
            raise ValueError(
                f"party structures differ: {self.structure.dims} vs {other.structure.dims}"
            )


def _check_square(mat: np.ndarray, structure: PartyStructure) -> None:
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    if mat.shape[0] != structure.dim:
        raise ValueError(f"matrix size {mat.shape[0]} does not match structure dim {structure.dim}")


def _check_hermitian(mat: np.ndarray) -> None:
    dev = float(np.max(np.abs(mat - mat.conj().T)))
    if dev > STRUCTURAL_TOL:
        raise ValueError(f"matrix deviates from Hermitian by {dev!r}")


def identity(structure: PartyStructure) -> HermitianOperator:
    return HermitianOperator(np.eye(structure.dim, dtype=np.complex128), structure)


def kron(a, b):
    """Tensor product of two states or two operators; a becomes the leading parties."""
    if isinstance(a, PureState) and isinstance(b, PureState):
        merged = PartyStructure(a.structure.dims + b.structure.dims)
        return PureState(np.kron(a.amplitudes, b.amplitudes), merged)
    if isinstance(a, HermitianOperator) and isinstance(b, HermitianOperator):
        merged = PartyStructure(a.structure.dims + b.structure.dims)
        return HermitianOperator(np.kron(a.matrix, b.matrix), merged)
    raise TypeError(
        f"kron operands must both be PureState or both HermitianOperator, "
        f"got {type(a).__name__} and {type(b).__name__}"
    )


def expectation(op: HermitianOperator, state: PureState | DensityMatrix) -> float:
    """<s|op|s> for pure states, Tr(op.rho) for density matrices."""
    if op.structure.dims != state.structure.dims:
        raise ValueError(
            f"party structures differ: {op.structure.dims} vs {state.structure.dims}"
        )
    if isinstance(state, PureState):
        val = complex(np.vdot(state.amplitudes, op.matrix @ state.amplitudes))
    elif isinstance(state, DensityMatrix):
        val = complex(np.trace(op.matrix @ state.matrix))
    else:
        raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")
    if abs(val.imag) > IMAG_TOL:
        raise ValueError(f"imaginary residue {val.imag!r} exceeds tolerance; operator not Hermitian?")
    return float(val.real)


def min_eigenvalue(op: HermitianOperator) -> float:
    try:
        spectrum = np.linalg.eigvalsh(op.matrix)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"Hermitian eigensolver did not converge: {exc}") from exc
    return float(spectrum[0])


def spectral_norm(op: HermitianOperator) -> float:
    try:
        spectrum = np.linalg.eigvalsh(op.matrix)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"Hermitian eigensolver did not converge: {exc}") from exc
    return float(np.max(np.abs(spectrum)))


def _split_axes(structure: PartyStructure, parties) -> tuple[list[int], list[int]]:
    subset = tuple(sorted({int(p) for p in parties}))
    for p in subset:
        structure.check_party(p)
    if not subset or len(subset) >= structure.n_parties:
        raise ValueError("bipartition must be a proper non-empty subset of the parties")
    axes_a = [p - 1 for p in subset]
    axes_b = [k for k in range(structure.n_parties) if k not in axes_a]
    return axes_a, axes_b


def schmidt_max_sq(state: PureState, parties) -> float:
    """Largest squared Schmidt coefficient of `state` across the given bipartition.

    `parties` selects one side of the cut; the amplitude vector is reshaped to a
    matrix over (side A, side B) and the top singular value is squared.
    """
    axes_a, axes_b = _split_axes(state.structure, parties)
    dims = state.structure.dims
    dim_a = 1
    for k in axes_a:
        dim_a *= dims[k]
    tensor = state.amplitudes.reshape(dims)
    matrix = tensor.transpose(axes_a + axes_b).reshape(dim_a, -1)
    top = np.linalg.svd(matrix, compute_uv=False)[0]
    return float(top**2)


def bipartitions(n_parties: int) -> list[tuple[int, ...]]:
    """All 2^(n-1) - 1 bipartitions, each named by the side containing party 1."""
    if n_parties < 2:
        raise ValueError("need at least two parties to bipartition")
    rest = range(2, n_parties + 1)
    cuts = []
    for size in range(0, n_parties - 1):
        for extra in combinations(rest, size):
            cuts.append((1,) + extra)
    return cuts


def combine_bipartite(side_a, parties_a, side_b, structure: PartyStructure) -> PureState:
    """Assemble a product state from amplitudes on the two sides of a cut.

    `side_a` holds amplitudes for the ascending parties in `parties_a`,
    `side_b` those for the remaining parties; the result is reordered to the
    global party order and normalized.
    """
    axes_a, axes_b = _split_axes(structure, parties_a)
    dims = structure.dims
    vec_a = np.asarray(side_a, dtype=np.complex128).reshape(-1)
    vec_b = np.asarray(side_b, dtype=np.complex128).reshape(-1)
    shape = [dims[k] for k in axes_a] + [dims[k] for k in axes_b]
    tensor = np.outer(vec_a, vec_b).reshape(shape)
    full = tensor.transpose(np.argsort(axes_a + axes_b)).reshape(-1)
    norm = np.linalg.norm(full)
    if norm == 0.0:
        raise ValueError("cannot combine zero vectors into a state")
    return PureState(full / norm, structure)
