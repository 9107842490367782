import numpy as np


def _as_coefficient(value):
    array = np.asarray(value, dtype=float)
    return float(array) if array.ndim == 0 else array


class DeltaPoly:
    """Polynomial in the formal symbol ``D0 = delta(0)``.

    Coefficients may be scalars or equally shaped arrays (tree tensors); the degree-0
    coefficient is the finite value.
    """

    def __init__(self, coefficients=(0.0,)):
        coefficients = [_as_coefficient(c) for c in coefficients]
        if not coefficients:
            coefficients = [0.0]
        self.coefficients = coefficients

    @classmethod
    def monomial(cls, value, degree=0):
        zero = np.zeros_like(np.asarray(value, dtype=float))
        return cls([zero] * degree + [value])

    # ---------------------- properties ---------------------- #

    @property
    def degree(self):
        """Highest degree with a nonzero coefficient; 0 for the zero polynomial."""
        for k in range(len(self.coefficients) - 1, 0, -1):
            if np.any(self.coefficients[k]):
                return k
        return 0

    @property
    def finite(self):
        return self.coefficients[0]

    def coefficient(self, degree):
        if degree < len(self.coefficients):
            return self.coefficients[degree]
        return _as_coefficient(np.zeros_like(np.asarray(self.coefficients[0], dtype=float)))

    def divergent_part(self):
        """``{degree: coefficient}`` for every degree >= 1."""
        return {k: self.coefficients[k] for k in range(1, self.degree + 1)}

    def is_zero(self):
        return not any(np.any(c) for c in self.coefficients)

    def is_finite(self):
        return self.degree == 0

    def evaluate(self, d0):
        """Value with ``D0`` replaced by the number ``d0`` (regularised comparisons)."""
        return sum(c * d0 ** k for k, c in enumerate(self.coefficients))

    # ---------------------- arithmetic ---------------------- #

    def __add__(self, other):
        if not isinstance(other, DeltaPoly):
            other = DeltaPoly([other])
        size = max(len(self.coefficients), len(other.coefficients))
        return DeltaPoly([self.coefficient(k) + other.coefficient(k) for k in range(size)])

    __radd__ = __add__

    def __neg__(self):
        return DeltaPoly([-c for c in self.coefficients])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, DeltaPoly):
            return DeltaPoly([c * other for c in self.coefficients])
        product = [0.0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                product[i + j] = product[i + j] + a * b
        return DeltaPoly(product)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return DeltaPoly([c / scalar for c in self.coefficients])

    def __eq__(self, other):
        if not isinstance(other, DeltaPoly):
            return NotImplemented
        size = max(len(self.coefficients), len(other.coefficients))
        return all(np.array_equal(self.coefficient(k), other.coefficient(k)) for k in range(size))

    __hash__ = None

    # ---------------------- serialisation ---------------------- #

    def to_list(self):
        """Coefficients up to the degree, as plain floats or nested lists."""
        return [c.tolist() if isinstance(c, np.ndarray) else float(c)
                for c in self.coefficients[:self.degree + 1]]

    @classmethod
    def from_list(cls, values):
        return cls([np.asarray(v, dtype=float) if isinstance(v, list) else v for v in values])

    def __repr__(self):
        if all(isinstance(c, float) for c in self.coefficients):
            terms = [f"{c:.6g}" + (f"*D0^{k}" if k else "") for k, c in enumerate(self.coefficients[:self.degree + 1])]
            return "DeltaPoly(" + " + ".join(terms) + ")"
        return f"DeltaPoly(degree={self.degree}, shape={np.shape(self.coefficients[0])})"
