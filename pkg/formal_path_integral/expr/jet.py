"""Truncated multivariate Taylor jets.

A :class:`Jet` stores the normalised Taylor coefficients ``d^alpha f / alpha!`` of a
function at an expansion point, one per multi-index ``alpha`` with ``|alpha| <= N``.
The coefficient array has the multi-index axis first; any trailing axes are a batch of
expansion points evaluated together.
"""
from functools import lru_cache
from itertools import product
from math import factorial

import numpy as np
from scipy import sparse

from formal_path_integral.errors import JetDomainError


def _compositions(total, parts):
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class JetIndex:
    """Multi-index bookkeeping for jets in ``n_vars`` variables truncated at ``order``.

    Multi-indices are ordered by total degree, so the first ``count(k)`` entries are
    exactly those of degree at most ``k``.
    """

    def __init__(self, n_vars, order):
        if order < 0:
            raise ValueError("Invalid value for `order`, must be a value greater than or equal to `0`")
        self.n_vars = n_vars
        self.order = order

        self.multi_indices = []
        self._degree_counts = []
        for degree in range(order + 1):
            self.multi_indices.extend(_compositions(degree, n_vars))
            self._degree_counts.append(len(self.multi_indices))

        self.size = len(self.multi_indices)
        self.position = {alpha: i for i, alpha in enumerate(self.multi_indices)}
        self.degrees = np.array([sum(alpha) for alpha in self.multi_indices], dtype=int)
        self.factorials = np.array(
            [np.prod([factorial(a) for a in alpha]) for alpha in self.multi_indices], dtype=float)

        left, right, target = [], [], []
        for i, alpha in enumerate(self.multi_indices):
            limit = self.count(order - sum(alpha))
            for j in range(limit):
                beta = self.multi_indices[j]
                left.append(i)
                right.append(j)
                target.append(self.position[tuple(a + b for a, b in zip(alpha, beta))])
        self.left = np.array(left, dtype=int)
        self.right = np.array(right, dtype=int)
        self.target = np.array(target, dtype=int)
        self.scatter = sparse.csr_matrix(
            (np.ones(len(target)), (self.target, np.arange(len(target)))),
            shape=(self.size, len(target)),
        )

    def count(self, degree):
        """Number of multi-indices with total degree at most ``degree``."""
        if degree < 0:
            return 0
        return self._degree_counts[min(degree, self.order)]

    def unit(self, variable):
        alpha = [0] * self.n_vars
        alpha[variable] += 1
        return tuple(alpha)

    def __repr__(self):
        return f"JetIndex(n_vars={self.n_vars}, order={self.order}, size={self.size})"


@lru_cache(maxsize=None)
def jet_index(n_vars, order):
    return JetIndex(n_vars, order)


@lru_cache(maxsize=None)
def _derivative_map(n_vars, order, variable):
    source = jet_index(n_vars, order)
    target = jet_index(n_vars, order - 1)
    positions = np.empty(target.size, dtype=int)
    weights = np.empty(target.size, dtype=float)
    for i, alpha in enumerate(target.multi_indices):
        raised = list(alpha)
        raised[variable] += 1
        positions[i] = source.position[tuple(raised)]
        weights[i] = raised[variable]
    return positions, weights


@lru_cache(maxsize=None)
def _tensor_map(n_vars, order, rank, variables):
    """Jet positions and factorial weights for every index tuple of a partial tensor."""
    index = jet_index(n_vars, order)
    k = len(variables)
    positions = np.empty(k ** rank, dtype=int)
    weights = np.empty(k ** rank, dtype=float)
    for flat, combo in enumerate(product(range(k), repeat=rank)):
        alpha = [0] * n_vars
        for c in combo:
            alpha[variables[c]] += 1
        alpha = tuple(alpha)
        positions[flat] = index.position[alpha]
        weights[flat] = index.factorials[index.position[alpha]]
    return positions, weights


class Jet:
    """Truncated Taylor expansion with arithmetic.

    Args:
        index (JetIndex): multi-index table shared by all jets of the same shape.
        coefficients (numpy.ndarray): shape ``(index.size,) + batch_shape``.
    """

    __slots__ = ("index", "coefficients")

    def __init__(self, index, coefficients):
        self.index = index
        self.coefficients = np.asarray(coefficients, dtype=float)

    # ---------------------- constructors ---------------------- #

    @classmethod
    def constant(cls, index, value, batch_shape=()):
        coefficients = np.zeros((index.size,) + tuple(batch_shape))
        coefficients[0] = value
        return cls(index, coefficients)

    @classmethod
    def variable(cls, index, variable, value):
        value = np.asarray(value, dtype=float)
        coefficients = np.zeros((index.size,) + value.shape)
        coefficients[0] = value
        if index.order >= 1:
            coefficients[index.position[index.unit(variable)]] = 1.0
        return cls(index, coefficients)

    # ---------------------- properties ---------------------- #

    @property
    def order(self):
        return self.index.order

    @property
    def batch_shape(self):
        return self.coefficients.shape[1:]

    @property
    def value(self):
        return self.coefficients[0]

    def coefficient(self, alpha):
        return self.coefficients[self.index.position[tuple(alpha)]]

    def partial(self, alpha):
        """The partial derivative d^alpha f at the expansion point."""
        position = self.index.position[tuple(alpha)]
        return self.coefficients[position] * self.index.factorials[position]

    def tensor(self, rank, variables):
        """Dense symmetric tensor of rank-``rank`` partials over ``variables``.

        The batch axes come first: the result has shape
        ``batch_shape + (len(variables),) * rank``.
        """
        if rank > self.order:
            raise JetDomainError(f"jet of order {self.order} cannot supply rank-{rank} partials")
        positions, weights = _tensor_map(self.index.n_vars, self.order, rank, tuple(variables))
        values = self.coefficients[positions] * weights.reshape((-1,) + (1,) * len(self.batch_shape))
        values = np.moveaxis(values, 0, -1)
        return values.reshape(self.batch_shape + (len(variables),) * rank)

    def is_constant(self):
        return not np.any(self.coefficients[1:])

    # ---------------------- structural ---------------------- #

    def _like(self, coefficients):
        return Jet(self.index, coefficients)

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.index is not self.index:
                raise ValueError("Jets with different multi-index tables cannot be combined")
            return other
        return Jet.constant(self.index, other, self.batch_shape)

    def derivative(self, variable):
        """Jet of d f / d x_variable, one order lower."""
        if self.order == 0:
            raise JetDomainError("cannot differentiate an order-0 jet")
        positions, weights = _derivative_map(self.index.n_vars, self.order, variable)
        weights = weights.reshape((-1,) + (1,) * len(self.batch_shape))
        return Jet(jet_index(self.index.n_vars, self.order - 1), self.coefficients[positions] * weights)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("Invalid value for `order`, cannot raise the truncation order")
        return Jet(jet_index(self.index.n_vars, order), self.coefficients[: self.index.count(order)])

    # ---------------------- arithmetic ---------------------- #

    def __add__(self, other):
        other = self._coerce(other)
        return self._like(self.coefficients + other.coefficients)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self._like(self.coefficients - other.coefficients)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self._like(-self.coefficients)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return self._like(self.coefficients * np.asarray(other, dtype=float))
        other = self._coerce(other)
        index = self.index
        products = self.coefficients[index.left] * other.coefficients[index.right]
        if products.ndim == 1:
            result = np.bincount(index.target, weights=products, minlength=index.size)
        else:
            flat = products.reshape(products.shape[0], -1)
            result = (index.scatter @ flat).reshape((index.size,) + products.shape[1:])
        return self._like(result)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self._like(self.coefficients / np.asarray(other, dtype=float))
        return self * reciprocal(other)

    def __rtruediv__(self, other):
        return self._coerce(other) * reciprocal(self)

    def __pow__(self, other):
        return power(self, other)

    def compose(self, series):
        """Evaluate ``sum_k series[k] * (self - value)^k`` by Horner's rule.

        ``series[k]`` are the univariate Taylor coefficients of an outer function at
        ``self.value``; each may be an array over the batch.
        """
        shift = self - self.value
        result = Jet.constant(self.index, series[-1], self.batch_shape)
        for coefficient in reversed(series[:-1]):
            result = result * shift + coefficient
        return result

    def __repr__(self):
        return f"Jet(order={self.order}, n_vars={self.index.n_vars}, batch={self.batch_shape})"


# ---------------------- elementary functions ---------------------- #

def _require_positive(x0, name, strict=True):
    bad = x0 <= 0 if strict else x0 < 0
    if np.any(bad):
        raise JetDomainError(f"{name} of a non-positive value {np.min(x0)!r} at the expansion point")


def _power_series(x0, exponent, order):
    series = [x0 ** exponent]
    binomial = 1.0
    for k in range(1, order + 1):
        binomial *= (exponent - k + 1) / k
        series.append(binomial * x0 ** (exponent - k))
    return series


def reciprocal(jet):
    x0 = jet.value
    if np.any(x0 == 0):
        raise JetDomainError("division by a jet vanishing at the expansion point")
    series = [(-1.0) ** k / x0 ** (k + 1) for k in range(jet.order + 1)]
    return jet.compose(series)


def exp(jet):
    e0 = np.exp(jet.value)
    return jet.compose([e0 / factorial(k) for k in range(jet.order + 1)])


def log(jet):
    x0 = jet.value
    _require_positive(x0, "log")
    series = [np.log(x0)] + [(-1.0) ** (k + 1) / (k * x0 ** k) for k in range(1, jet.order + 1)]
    return jet.compose(series)


def sin(jet):
    x0 = jet.value
    return jet.compose([np.sin(x0 + k * np.pi / 2) / factorial(k) for k in range(jet.order + 1)])


def cos(jet):
    x0 = jet.value
    return jet.compose([np.cos(x0 + k * np.pi / 2) / factorial(k) for k in range(jet.order + 1)])


def sqrt(jet):
    x0 = jet.value
    _require_positive(x0, "sqrt")
    return jet.compose(_power_series(x0, 0.5, jet.order))


def tanh(jet):
    # y' = 1 - y^2 gives the Taylor recurrence (k+1) y_{k+1} = [k == 0] - sum_j y_j y_{k-j}
    y = [np.tanh(jet.value)]
    for k in range(jet.order):
        convolution = sum(y[j] * y[k - j] for j in range(k + 1))
        y.append(((1.0 if k == 0 else 0.0) - convolution) / (k + 1))
    return jet.compose(y)


def integer_power(jet, exponent):
    if exponent < 0:
        return integer_power(reciprocal(jet), -exponent)
    result = Jet.constant(jet.index, 1.0, jet.batch_shape)
    base = jet
    while exponent:
        if exponent & 1:
            result = result * base
        exponent >>= 1
        if exponent:
            base = base * base
    return result


def power(base, exponent):
    """``base ** exponent`` for a constant integer exponent, or a positive base."""
    if not isinstance(exponent, Jet):
        exponent = Jet.constant(base.index, exponent, base.batch_shape)
    if exponent.is_constant():
        values = np.unique(exponent.value)
        if values.size == 1 and float(values[0]).is_integer():
            return integer_power(base, int(values[0]))
        if np.all(base.value > 0):
            return base.compose(_power_series(base.value, exponent.value, base.order))
    elif np.all(base.value > 0):
        return exp(exponent * log(base))
    raise JetDomainError("power needs a constant integer exponent or a positive base at the expansion point")


ELEMENTARY = {
    "sin": sin,
    "cos": cos,
    "exp": exp,
    "log": log,
    "sqrt": sqrt,
    "tanh": tanh,
}
