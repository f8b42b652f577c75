"""Correlator-operator families and the combined operators built from them.

Three families are provided:

* one-versus-rest and pair-versus-pair correlator pairs for the tunable
  four-qubit GHZ states, in the z and x measurement settings;
* flip-conjugated correlator pairs for the four-qubit singlet state in the
  z, x and y settings;
* four-member correlator families for the four-level tripartite GHZ state,
  indexed by the nine fixed-point-free permutations of {0,1,2,3}, in the
  z setting and in a discrete-Fourier setting.

Each pair carries the bipartition it certifies (`cut`): for a state that is
product across that cut, the product of the two expectation values is <= 0
(sign test), while a four-member family of a product state can never be
positive throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

import numpy as np

from .core import (
    HermitianOperator,
    PartyStructure,
    PureState,
    STRUCTURAL_TOL,
    combine_bipartite,
    expectation,
)
from .states import QUBIT4, QUDIT4X3

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)

#: The nine fixed-point-free permutations of {0,1,2,3}, lexicographically
#: ordered; index j-1 holds the images (s_0, s_1, s_2, s_3).  The plain cyclic
#: shift k -> k+1 sits at j=2 and the shift by two at j=5.
DERANGEMENTS_4: tuple[tuple[int, ...], ...] = tuple(
    p for p in itertools.permutations(range(4)) if all(p[i] != i for i in range(4))
)


@dataclass(frozen=True, eq=False)
class LocalBasis:
    """Orthonormal single-party basis: z, x, y, or phase-offset Fourier."""

    kind: str
    dimension: int
    offset: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        d = int(self.dimension)
        if self.kind == "z":
            vectors = np.eye(d, dtype=np.complex128)
        elif self.kind in ("x", "y"):
            if d != 2:
                raise ValueError(f"{self.kind} basis is only defined for dimension 2")
            second = 1.0 if self.kind == "x" else 1.0j
            vectors = np.array([[1.0, 1.0], [second, -second]], dtype=np.complex128) / np.sqrt(2)
        elif self.kind == "fourier":
            levels = np.arange(d)
            phase = -2j * np.pi / d
            vectors = np.exp(phase * np.outer(levels, levels + float(self.offset))) / np.sqrt(d)
        else:
            raise ValueError(f"unknown basis kind {self.kind!r}")
        gram_dev = float(np.max(np.abs(vectors.conj().T @ vectors - np.eye(d))))
        if gram_dev > STRUCTURAL_TOL:
            raise ValueError(f"basis vectors deviate from orthonormal by {gram_dev!r}")
        vectors.setflags(write=False)
        object.__setattr__(self, "_vectors", vectors)

    def vector(self, level: int) -> np.ndarray:
        self._check_level(level)
        return self._vectors[:, level]

    def projector(self, level: int) -> np.ndarray:
        vec = self.vector(level)
        return np.outer(vec, vec.conj())

    def exchange(self) -> np.ndarray:
        """Unitary swapping the two basis vectors (dimension-2 bases only)."""
        if self.dimension != 2:
            raise ValueError("exchange is only defined for dimension-2 bases")
        v0, v1 = self._vectors[:, 0], self._vectors[:, 1]
        return np.outer(v0, v1.conj()) + np.outer(v1, v0.conj())

    def _check_level(self, level: int) -> None:
        if not 0 <= int(level) < self.dimension:
            raise ValueError(f"level {level} outside 0..{self.dimension - 1}")


_Z2 = LocalBasis("z", 2)
_X2 = LocalBasis("x", 2)
_Y2 = LocalBasis("y", 2)
_Z4 = LocalBasis("z", 4)
_F4 = LocalBasis("fourier", 4)

_QUBIT_BASES = {"z": _Z2, "x": _X2, "y": _Y2}
_QUDIT4_BASES = {"z": _Z4, "f": _F4}


def local_projector(basis: LocalBasis, level: int) -> HermitianOperator:
    """Rank-1 projector onto the level-th basis vector, as a one-party operator."""
    return HermitianOperator(basis.projector(level), PartyStructure((basis.dimension,)))


@dataclass(frozen=True, eq=False)
class CorrelatorPair:
    """Two correlator operators whose expectation product is a sign test for `cut`."""

    c0: HermitianOperator
    c1: HermitianOperator
    label: str
    basis: str
    cut: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.c0.structure.dims != self.c1.structure.dims:
            raise ValueError("pair members must share a party structure")


@dataclass(frozen=True, eq=False)
class CorrelatorFamily:
    """Operators that must be jointly positive to certify correlation across `cut`."""

    members: tuple[HermitianOperator, ...]
    arity: int
    label: str
    basis: str
    cut: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("family needs at least one member")
        dims = self.members[0].structure.dims
        if any(m.structure.dims != dims for m in self.members):
            raise ValueError("family members must share a party structure")


def _projector_product(basis: LocalBasis, structure: PartyStructure, levels: dict[int, int]) -> np.ndarray:
    mats = []
    for party in structure.parties():
        local = structure.local_dim(party)
        if party in levels:
            if local != basis.dimension:
                raise ValueError("basis dimension does not match the party's local dimension")
            mats.append(basis.projector(levels[party]))
        else:
            mats.append(np.eye(local, dtype=np.complex128))
    return reduce(np.kron, mats)


def _check_qubit_party(n: int) -> None:
    if n not in (1, 2, 3, 4):
        raise ValueError(f"party index {n} outside 1..4")


# ---------------------------------------------------------------------------
# Tunable four-qubit GHZ family


def ghz4_party_z(n: int) -> CorrelatorPair:
    """z-setting pair testing correlation between party n and the other three."""
    _check_qubit_party(n)
    others = [m for m in (1, 2, 3, 4) if m != n]
    c0 = _projector_product(_Z2, QUBIT4, {n: 0, **{m: 0 for m in others}}) - _projector_product(
        _Z2, QUBIT4, {n: 1, **{m: 0 for m in others}}
    )
    c1 = _projector_product(_Z2, QUBIT4, {n: 1, **{m: 1 for m in others}}) - _projector_product(
        _Z2, QUBIT4, {n: 0, **{m: 1 for m in others}}
    )
    return CorrelatorPair(
        HermitianOperator(c0, QUBIT4),
        HermitianOperator(c1, QUBIT4),
        label=f"ghz4.z.n{n}",
        basis="z",
        cut=(n,),
    )


def ghz4_pair_z(n: int, m: int) -> CorrelatorPair:
    """z-setting pair testing correlation between the group {n, m} and the other two."""
    _check_qubit_party(n)
    _check_qubit_party(m)
    if n == m:
        raise ValueError("pair correlator needs two distinct parties")
    others = [p for p in (1, 2, 3, 4) if p not in (n, m)]
    c0 = _projector_product(_Z2, QUBIT4, {n: 0, m: 0, **{p: 0 for p in others}}) - _projector_product(
        _Z2, QUBIT4, {n: 1, m: 1, **{p: 0 for p in others}}
    )
    c1 = _projector_product(_Z2, QUBIT4, {n: 1, m: 1, **{p: 1 for p in others}}) - _projector_product(
        _Z2, QUBIT4, {n: 0, m: 0, **{p: 1 for p in others}}
    )
    return CorrelatorPair(
        HermitianOperator(c0, QUBIT4),
        HermitianOperator(c1, QUBIT4),
        label=f"ghz4.z.n{n}m{m}",
        basis="z",
        cut=tuple(sorted((n, m))),
    )


def ghz4_party_x(n: int) -> CorrelatorPair:
    """x-setting pair for party n: even x-parity sum on one side, odd on the other."""
    _check_qubit_party(n)
    others = [m for m in (1, 2, 3, 4) if m != n]
    even = np.zeros((16, 16), dtype=np.complex128)
    odd = np.zeros((16, 16), dtype=np.complex128)
    for bits in itertools.product((0, 1), repeat=3):
        rest = dict(zip(others, bits))
        target = even if sum(bits) % 2 == 0 else odd
        target += _projector_product(_X2, QUBIT4, {n: 0, **rest}) - _projector_product(
            _X2, QUBIT4, {n: 1, **rest}
        )
    return CorrelatorPair(
        HermitianOperator(even, QUBIT4),
        HermitianOperator(-odd, QUBIT4),
        label=f"ghz4.x.n{n}",
        basis="x",
        cut=(n,),
    )


def ghz4_z_pairs() -> list[CorrelatorPair]:
    """The 4 + 3 z-setting pairs entering the combined GHZ operator."""
    return [ghz4_party_z(n) for n in (1, 2, 3, 4)] + [ghz4_pair_z(1, m) for m in (2, 3, 4)]


def ghz4_x_pairs() -> list[CorrelatorPair]:
    return [ghz4_party_x(n) for n in (1, 2, 3, 4)]


@lru_cache(maxsize=1)
def build_C_phi() -> HermitianOperator:
    """Sum of all GHZ correlator members; checked against its closed form.

    The z members collapse to 8(P_0000 + P_1111) - 1 and the x members to
    4 sigma_x^{(x)4}; both identities are verified entrywise on every build.
    """
    z_sum = np.zeros((16, 16), dtype=np.complex128)
    for pair in ghz4_z_pairs():
        z_sum += pair.c0.matrix + pair.c1.matrix
    x_sum = np.zeros((16, 16), dtype=np.complex128)
    for pair in ghz4_x_pairs():
        x_sum += pair.c0.matrix + pair.c1.matrix

    p0000 = _projector_product(_Z2, QUBIT4, {p: 0 for p in (1, 2, 3, 4)})
    p1111 = _projector_product(_Z2, QUBIT4, {p: 1 for p in (1, 2, 3, 4)})
    z_closed = 8.0 * (p0000 + p1111) - np.eye(16)
    x_closed = 4.0 * reduce(np.kron, [PAULI_X] * 4)
    z_dev = float(np.max(np.abs(z_sum - z_closed)))
    x_dev = float(np.max(np.abs(x_sum - x_closed)))
    if max(z_dev, x_dev) > 1e-12:
        raise ArithmeticError(
            f"combined GHZ correlator misses its closed form (z dev {z_dev}, x dev {x_dev})"
        )
    return HermitianOperator(z_sum + x_sum, QUBIT4)


# ---------------------------------------------------------------------------
# Four-qubit singlet


def _toggled(levels: dict[int, int], party: int) -> dict[int, int]:
    out = dict(levels)
    out[party] = 1 - out[party]
    return out


def singlet_flip_pair(basis_kind: str, m: int) -> CorrelatorPair:
    """Pair comparing the 0011/1100 patterns with the same patterns flipped at party m.

    For the x and y settings the flip is the unitary exchanging the two local
    basis vectors, so the construction is the z one transplanted verbatim.
    """
    basis = _QUBIT_BASES[basis_kind]
    _check_qubit_party(m)
    members = []
    for pattern in ({1: 0, 2: 0, 3: 1, 4: 1}, {1: 1, 2: 1, 3: 0, 4: 0}):
        mat = _projector_product(basis, QUBIT4, pattern) - _projector_product(
            basis, QUBIT4, _toggled(pattern, m)
        )
        members.append(HermitianOperator(mat, QUBIT4))
    return CorrelatorPair(
        members[0], members[1], label=f"singlet4.{basis_kind}.m{m}", basis=basis_kind, cut=(m,)
    )


def singlet_group_pair(basis_kind: str, n: int, k: int) -> CorrelatorPair:
    """Pair comparing a 01/10 pattern on one party pair, flipped at party k,
    multiplied by the symmetric 01+10 pattern on the complementary pair."""
    basis = _QUBIT_BASES[basis_kind]
    if n not in (0, 1):
        raise ValueError(f"group index must be 0 or 1, got {n}")
    a, b, c, e = (1, 2, 3, 4) if n == 0 else (3, 4, 1, 2)
    if k not in (a, b):
        raise ValueError(f"flip party {k} must be one of the group parties {(a, b)}")
    members = []
    for la in (0, 1):
        mat = np.zeros((16, 16), dtype=np.complex128)
        for u, v in ((0, 1), (1, 0)):
            levels = {a: la, b: 1 - la, c: u, e: v}
            mat += _projector_product(basis, QUBIT4, levels) - _projector_product(
                basis, QUBIT4, _toggled(levels, k)
            )
        members.append(HermitianOperator(mat, QUBIT4))
    return CorrelatorPair(
        members[0], members[1], label=f"singlet4.{basis_kind}.n{n}k{k}", basis=basis_kind, cut=(k,)
    )


def singlet_correlators(basis_kind: str) -> list[CorrelatorPair]:
    """All eight correlator pairs of one setting: four flip pairs, four group pairs."""
    if basis_kind not in _QUBIT_BASES:
        raise ValueError(f"basis kind must be one of z/x/y, got {basis_kind!r}")
    pairs = [singlet_flip_pair(basis_kind, m) for m in (1, 2, 3, 4)]
    for n in (0, 1):
        for k in (2 * n + 1, 2 * n + 2):
            pairs.append(singlet_group_pair(basis_kind, n, k))
    return pairs


@lru_cache(maxsize=1)
def build_C_psi() -> HermitianOperator:
    """Weighted sum over the three settings: flip pairs x5, group pairs x1."""
    total = np.zeros((16, 16), dtype=np.complex128)
    for kind in ("z", "x", "y"):
        for m in (1, 2, 3, 4):
            pair = singlet_flip_pair(kind, m)
            total += 5.0 * (pair.c0.matrix + pair.c1.matrix)
        for n in (0, 1):
            for k in (2 * n + 1, 2 * n + 2):
                pair = singlet_group_pair(kind, n, k)
                total += pair.c0.matrix + pair.c1.matrix
    return HermitianOperator(total, QUBIT4)


# ---------------------------------------------------------------------------
# Four-level tripartite GHZ


def ghz4x3_correlators(basis_kind: str, n: int, j: int) -> CorrelatorFamily:
    """Four-member correlator family for party n against the rest.

    `j` in 1..9 picks a fixed-point-free permutation s of the levels
    (lexicographic order, see DERANGEMENTS_4).  In the z setting member k is
    (k - s_k) on party n times level-k projectors on the others; in the
    Fourier setting the other two parties carry the level-sum-zero pair sum.
    """
    if basis_kind not in _QUDIT4_BASES:
        raise ValueError(f"basis kind must be z or f, got {basis_kind!r}")
    if n not in (1, 2, 3):
        raise ValueError(f"party index {n} outside 1..3")
    if not 1 <= j <= 9:
        raise ValueError(f"permutation index {j} outside 1..9")
    basis = _QUDIT4_BASES[basis_kind]
    shifts = DERANGEMENTS_4[j - 1]
    p, q = [party for party in (1, 2, 3) if party != n]
    members = []
    for k in range(4):
        if basis_kind == "z":
            mat = _projector_product(basis, QUDIT4X3, {n: k, p: k, q: k}) - _projector_product(
                basis, QUDIT4X3, {n: shifts[k], p: k, q: k}
            )
        else:
            mat = np.zeros((64, 64), dtype=np.complex128)
            for l, r in itertools.product(range(4), repeat=2):
                if (k + l + r) % 4 != 0:
                    continue
                mat += _projector_product(basis, QUDIT4X3, {n: k, p: l, q: r})
                mat -= _projector_product(basis, QUDIT4X3, {n: shifts[k], p: l, q: r})
        members.append(HermitianOperator(mat, QUDIT4X3))
    return CorrelatorFamily(
        tuple(members),
        arity=4,
        label=f"ghz4x3.{basis_kind}.n{n}.j{j}",
        basis=basis_kind,
        cut=(n,),
    )


def all_ghz4x3_families() -> list[CorrelatorFamily]:
    """The 54 families: both settings, all parties, all nine permutations."""
    return [
        ghz4x3_correlators(kind, n, j)
        for kind in ("z", "f")
        for n in (1, 2, 3)
        for j in range(1, 10)
    ]


@lru_cache(maxsize=1)
def build_C_ghz4x3() -> HermitianOperator:
    """Weighted sum over all families: z members x1.5, Fourier members x1."""
    total = np.zeros((64, 64), dtype=np.complex128)
    for family in all_ghz4x3_families():
        weight = 1.5 if family.basis == "z" else 1.0
        for member in family.members:
            total += weight * member.matrix
    return HermitianOperator(total, QUDIT4X3)


# ---------------------------------------------------------------------------
# Sign tests and random product-state suites


def prop1_test(pair: CorrelatorPair, state) -> bool:
    """True iff the product of the two expectation values is strictly positive."""
    return expectation(pair.c0, state) * expectation(pair.c1, state) > 0.0


def prop2_test(family: CorrelatorFamily, state) -> bool:
    """True iff every member expectation is strictly positive."""
    return all(expectation(member, state) > 0.0 for member in family.members)


def random_product_state(structure: PartyStructure, cut, rng: np.random.Generator) -> PureState:
    """Haar-ish random product state across the given bipartition."""
    axes_a = sorted({int(p) for p in cut})
    dims = structure.dims
    dim_a = 1
    for p in axes_a:
        dim_a *= dims[p - 1]
    dim_b = structure.dim // dim_a

    def _unit(dim: int) -> np.ndarray:
        vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        return vec / np.linalg.norm(vec)

    return combine_bipartite(_unit(dim_a), axes_a, _unit(dim_b), structure)


def count_prop1_violations(pair: CorrelatorPair, trials: int, seed: int) -> int:
    """Sign-test failures of `pair` over random states product across its cut."""
    rng = np.random.default_rng(seed)
    structure = pair.c0.structure
    return sum(
        prop1_test(pair, random_product_state(structure, pair.cut, rng)) for _ in range(trials)
    )


def count_prop2_violations(family: CorrelatorFamily, trials: int, seed: int) -> int:
    """Joint-positivity failures of `family` over random states product across its cut."""
    rng = np.random.default_rng(seed)
    structure = family.members[0].structure
    return sum(
        prop2_test(family, random_product_state(structure, family.cut, rng))
        for _ in range(trials)
    )
