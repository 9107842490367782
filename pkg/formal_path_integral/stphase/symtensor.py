from itertools import permutations, combinations_with_replacement
from math import factorial

import numpy as np

from formal_path_integral import Config
from formal_path_integral.errors import SingularMatrixError, NotPositiveDefiniteError
from formal_path_integral.graphs import count_pairings


class SymTensor:
    """Symmetric tensor of rank ``r`` over R^N.

    The dense array is symmetrised on construction, so every index permutation reads the
    same value. Rank-2 tensors expose determinant, inverse and signature.

    Args:
        array (array_like): dense tensor of shape ``(N,) * r``; a scalar for rank 0.
    """

    def __init__(self, array):
        array = np.asarray(array, dtype=float)
        if len(set(array.shape)) > 1:
            raise ValueError(f"Invalid value for `array`, shape {array.shape} is not cubical")
        self.array = _symmetrize(array)

    @classmethod
    def from_coefficients(cls, dimension, rank, coefficients):
        """Build from ``{sorted multi-index: value}``; missing entries are zero."""
        array = np.zeros((dimension,) * rank)
        for index, value in coefficients.items():
            for permuted in set(permutations(index)):
                array[permuted] = value
        return cls(array)

    @property
    def rank(self):
        return self.array.ndim

    @property
    def dimension(self):
        return self.array.shape[0] if self.array.ndim else 0

    def coefficient(self, index):
        return float(self.array[tuple(sorted(index))])

    def coefficients(self):
        return {index: float(self.array[index])
                for index in combinations_with_replacement(range(self.dimension), self.rank)}

    def transform(self, matrix):
        """Pull back along the linear map ``x -> matrix @ x`` (contract every slot)."""
        result = self.array
        for axis in range(self.rank):
            result = np.moveaxis(np.tensordot(result, matrix, axes=([axis], [0])), -1, axis)
        return SymTensor(result)

    def norm(self):
        return float(np.linalg.norm(self.array))

    # ---------------------- rank 2 ---------------------- #

    def _require_matrix(self):
        if self.rank != 2:
            raise ValueError(f"rank-{self.rank} tensor has no matrix structure")

    @property
    def determinant(self):
        self._require_matrix()
        return float(np.linalg.det(self.array))

    @property
    def inverse(self):
        self._require_matrix()
        if abs(self.determinant) <= Config.SINGULAR_TOL * max(1.0, self.norm()) ** self.dimension:
            raise SingularMatrixError(f"Hessian is singular (det = {self.determinant:.3e})", module="stphase")
        return SymTensor(np.linalg.inv(self.array))

    @property
    def signature(self):
        """Number of negative eigenvalues."""
        self._require_matrix()
        return int(np.sum(np.linalg.eigvalsh(self.array) < 0))

    def is_positive_definite(self):
        self._require_matrix()
        return bool(np.all(np.linalg.eigvalsh(self.array) > 0))

    def __repr__(self):
        return f"SymTensor(dimension={self.dimension}, rank={self.rank})"


def _is_symmetric(array):
    # transposition (0 1) and the cycle (0 1 ... r-1) generate all permutations
    swap = np.swapaxes(array, 0, 1)
    cycle = np.moveaxis(array, 0, -1)
    return np.allclose(swap, array, rtol=1e-12, atol=1e-14) and np.allclose(cycle, array, rtol=1e-12, atol=1e-14)


def _symmetrize(array):
    if array.ndim < 2 or _is_symmetric(array):
        return array
    total = np.zeros_like(array)
    for axes in permutations(range(array.ndim)):
        total += np.transpose(array, axes)
    return total / factorial(array.ndim)


def gaussian_moment(b, a):
    """Sum over pairings of ``b`` contracted with copies of ``a^{-1}``.

    This is the bracketed sum of the Gaussian moment formula, without the
    ``sqrt(det(2 pi a^{-1}))`` prefactor; odd ranks give zero.

    Args:
        b (SymTensor): rank-n tensor.
        a (SymTensor): positive-definite rank-2 tensor.

    :rtype: float
    """
    if not a.is_positive_definite():
        raise NotPositiveDefiniteError("gaussian_moment needs a positive-definite quadratic form",
                                       module="stphase")
    if b.rank % 2:
        return 0.0
    # b is symmetric, so every pairing contracts to the same number
    a_inverse = a.inverse.array
    result = b.array
    while result.ndim:
        result = np.tensordot(result, a_inverse, axes=([0, 1], [0, 1]))
    return float(count_pairings(b.rank) * result)
