"""Operator algebra on truncated Fock spaces.

Operators are sparse complex matrices tagged with the cutoff of every tensor
factor.  Tensor products follow the Kronecker convention: the left factor
varies slowest.
"""

from __future__ import annotations

import io
import math
import os
import warnings
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
import scipy.io
import scipy.sparse as sp

__all__ = [
    "FockSpace",
    "Operator",
    "State",
    "DEFAULT_CUTOFF",
    "TENSOR_LIMIT",
    "annihilation",
    "creation",
    "number",
    "identity",
    "basis",
    "commutator",
    "tensor",
    "tensor_state",
    "embed",
    "coherent_state",
    "expectation",
    "lower_block_indices",
    "write_operator",
    "read_operator",
    "write_state",
    "read_state",
]

DEFAULT_CUTOFF = 24
TENSOR_LIMIT = 4096


@dataclass(frozen=True)
class FockSpace:
    """Span of ``|0>, ..., |dim - 1>``."""

    dim: int = DEFAULT_CUTOFF

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"Fock cutoff must be an integer >= 2, got {self.dim!r}")

    @property
    def dims(self) -> tuple[int, ...]:
        return (int(self.dim),)


SpaceLike = Union[FockSpace, int, Sequence[int]]


def _dims(space: SpaceLike) -> tuple[int, ...]:
    if isinstance(space, FockSpace):
        return space.dims
    if isinstance(space, (int, np.integer)):
        return FockSpace(int(space)).dims
    dims = tuple(int(d) for d in space)
    for d in dims:
        FockSpace(d)
    return dims


class Operator:
    """Square complex matrix on a (product of) truncated Fock space(s).

    Stored as a CSR sparse matrix; ``matrix`` gives a dense copy.
    """

    __array_priority__ = 100

    def __init__(self, matrix, dims: SpaceLike | None = None):
        if sp.issparse(matrix):
            data = sp.csr_matrix(matrix, dtype=complex)
        else:
            dense = np.asarray(matrix, dtype=complex)
            if dense.ndim != 2:
                raise ValueError(f"operator matrix must be square, got shape {dense.shape}")
            data = sp.csr_matrix(dense)
        if data.shape[0] != data.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {data.shape}")
        dims = (data.shape[0],) if dims is None else _dims(dims)
        if math.prod(dims) != data.shape[0]:
            raise ValueError(f"dims {dims} do not match matrix size {data.shape[0]}")
        self.sparse = data
        self.dims = dims

    @property
    def matrix(self) -> np.ndarray:
        return self.sparse.toarray()

    @property
    def dim(self) -> int:
        return self.sparse.shape[0]

    def __repr__(self):
        return f"Operator(dims={self.dims}, nnz={self.sparse.nnz})"

    def _check(self, other: "Operator"):
        if not isinstance(other, Operator):
            return NotImplemented
        if other.dims != self.dims:
            raise ValueError(f"space mismatch: {self.dims} vs {other.dims}")
        return other

    def dag(self) -> "Operator":
        return Operator(self.sparse.conj().T, self.dims)

    def __matmul__(self, other):
        if isinstance(other, State):
            if other.dims != self.dims:
                raise ValueError(f"space mismatch: {self.dims} vs {other.dims}")
            return self.sparse @ other.vector
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Operator(self.sparse @ other.sparse, self.dims)

    def __add__(self, other):
        if np.isscalar(other):
            return Operator(self.sparse + other * sp.identity(self.dim, format="csr"), self.dims)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Operator(self.sparse + other.sparse, self.dims)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Operator(-self.sparse, self.dims)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return Operator(self.sparse * scalar, self.dims)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Operator(self.sparse / scalar, self.dims)

    def hermiticity_error(self) -> float:
        return _max_abs(self.sparse - self.sparse.conj().T)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return self.hermiticity_error() <= tol

    def lower_block(self) -> np.ndarray:
        """Restriction to states with every occupation below its cutoff - 1."""
        idx = lower_block_indices(self.dims)
        return self.sparse[idx][:, idx].toarray()

    def allclose(self, other: "Operator", atol: float = 1e-12) -> bool:
        self._check(other)
        return _max_abs(self.sparse - other.sparse) <= atol


def _max_abs(m) -> float:
    m = sp.csr_matrix(m)
    return float(np.max(np.abs(m.data))) if m.nnz else 0.0


class State:
    """Normalised state vector."""

    def __init__(self, vector, dims: SpaceLike | None = None, normalize: bool = True):
        vector = np.asarray(vector, dtype=complex).ravel()
        dims = (vector.size,) if dims is None else _dims(dims)
        if math.prod(dims) != vector.size:
            raise ValueError(f"dims {dims} do not match vector size {vector.size}")
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise ValueError("cannot build a state from the zero vector")
        if normalize:
            vector = vector / norm
        elif abs(norm - 1) > 1e-12:
            raise ValueError(f"state norm {norm!r} differs from 1")
        self.vector = vector
        self.dims = dims

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def __repr__(self):
        return f"State(dims={self.dims})"


def lower_block_indices(dims: Sequence[int]) -> np.ndarray:
    """Flat indices whose occupations are all ``< d_i - 1``."""
    grids = np.indices(tuple(dims)).reshape(len(dims), -1)
    keep = np.all(grids < (np.asarray(dims)[:, None] - 1), axis=0)
    return np.flatnonzero(keep)


def annihilation(space: SpaceLike = DEFAULT_CUTOFF) -> Operator:
    """``a |n> = sqrt(n) |n - 1>``."""
    (d,) = _dims(space)
    return Operator(sp.diags(np.sqrt(np.arange(1, d, dtype=float)), 1, shape=(d, d)), (d,))


def creation(space: SpaceLike = DEFAULT_CUTOFF) -> Operator:
    return annihilation(space).dag()


def number(space: SpaceLike = DEFAULT_CUTOFF) -> Operator:
    (d,) = _dims(space)
    return Operator(sp.diags(np.arange(d, dtype=float), 0, shape=(d, d)), (d,))


def identity(space: SpaceLike) -> Operator:
    dims = _dims(space)
    return Operator(sp.identity(math.prod(dims), format="csr"), dims)


def basis(space: SpaceLike, n: int) -> State:
    dims = _dims(space)
    total = math.prod(dims)
    if not 0 <= n < total:
        raise ValueError(f"basis index {n} outside 0..{total - 1}")
    v = np.zeros(total, dtype=complex)
    v[n] = 1.0
    return State(v, dims)


def commutator(A: Operator, B: Operator) -> Operator:
    """``AB - BA``."""
    if A.dims != B.dims:
        raise ValueError(f"space mismatch: {A.dims} vs {B.dims}")
    return Operator(A.sparse @ B.sparse - B.sparse @ A.sparse, A.dims)


def _guard(dims, limit):
    total = math.prod(dims)
    if total > limit:
        raise OverflowError(f"tensor dimension {total} exceeds limit {limit}")


def tensor(*ops: Operator, limit: int = TENSOR_LIMIT) -> Operator:
    """Kronecker product, left factor slowest."""
    if not ops:
        raise ValueError("tensor needs at least one operator")
    dims = tuple(d for op in ops for d in op.dims)
    _guard(dims, limit)
    out = ops[0].sparse
    for op in ops[1:]:
        out = sp.kron(out, op.sparse, format="csr")
    return Operator(out, dims)


def tensor_state(*states: State, limit: int = TENSOR_LIMIT) -> State:
    if not states:
        raise ValueError("tensor_state needs at least one state")
    dims = tuple(d for s in states for d in s.dims)
    _guard(dims, limit)
    out = states[0].vector
    for s in states[1:]:
        out = np.kron(out, s.vector)
    return State(out, dims)


def embed(op: Operator, position: int, dims: Sequence[int],
          limit: int = TENSOR_LIMIT) -> Operator:
    """Place a single-factor operator at ``position`` of a product space."""
    dims = tuple(dims)
    if op.dims != (dims[position],):
        raise ValueError(f"operator dims {op.dims} do not fit factor {position} of {dims}")
    factors = [identity(d) for d in dims]
    factors[position] = op
    return tensor(*factors, limit=limit)


def coherent_state(alpha_c: complex, space: SpaceLike = DEFAULT_CUTOFF) -> State:
    """Truncated coherent state, renormalised after the cutoff."""
    (d,) = _dims(space)
    r = abs(alpha_c)
    if d < r**2 + 10 * r + 10:
        warnings.warn(f"cutoff {d} is small for a coherent amplitude |alpha| = {r:.3g}",
                      RuntimeWarning, stacklevel=2)
    n = np.arange(d)
    # alpha^n / sqrt(n!) via log-gamma to avoid overflow
    if alpha_c == 0:
        coeff = (n == 0).astype(complex)
    else:
        log_mag = n * math.log(r) - 0.5 * np.array([math.lgamma(k + 1) for k in n])
        coeff = np.exp(log_mag - 0.5 * r**2) * np.exp(1j * n * np.angle(alpha_c))
    return State(coeff, (d,))


def expectation(A: Operator, psi: State) -> complex:
    """``<psi|A|psi>``."""
    if A.dims != psi.dims:
        raise ValueError(f"space mismatch: {A.dims} vs {psi.dims}")
    return complex(np.vdot(psi.vector, A.sparse @ psi.vector))


def _dims_comment(dims) -> str:
    return "dims=" + ",".join(str(d) for d in dims)


def _parse_dims(text: str):
    for line in text.splitlines():
        line = line.lstrip("%").strip()
        if line.startswith("dims="):
            return tuple(int(x) for x in line[5:].split(","))
    return None


def write_operator(target, op: Operator, precision: int = 17) -> None:
    """Matrix Market coordinate file with a ``dims=`` comment line."""
    scipy.io.mmwrite(target, op.sparse.tocoo(), comment=_dims_comment(op.dims),
                     field="complex", precision=precision)


def read_operator(source) -> Operator:
    text = _read_text(source)
    matrix = scipy.io.mmread(io.BytesIO(text.encode()))
    matrix = matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix)
    return Operator(matrix, _parse_dims(text))


def write_state(target, psi: State, precision: int = 17) -> None:
    scipy.io.mmwrite(target, psi.vector.reshape(-1, 1), comment=_dims_comment(psi.dims),
                     field="complex", precision=precision)


def read_state(source) -> State:
    text = _read_text(source)
    vec = scipy.io.mmread(io.BytesIO(text.encode()))
    vec = vec.toarray() if sp.issparse(vec) else np.asarray(vec)
    return State(vec.ravel(), _parse_dims(text))


def _read_text(source) -> str:
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="ascii") as fh:
            return fh.read()
    data = source.read()
    return data.decode() if isinstance(data, bytes) else data
