"""Homogeneous polynomials as exponent-vector -> Fraction maps."""

from collections import defaultdict
from collections.abc import Iterator, Mapping, Sequence
from fractions import Fraction


class DensePolyError(ValueError):
    pass


class DensePoly:
    """Homogeneous polynomial of a fixed degree in n variables, exact rational coefficients.

    The degree is stored explicitly so the zero polynomial still knows its degree.
    """

    __slots__ = ("n", "degree", "_coeffs")

    def __init__(self, n: int, degree: int, coeffs: Mapping[Sequence[int], Fraction | int] | None = None):
        if n < 1:
            raise DensePolyError(f"Need at least one variable, got n={n}")
        if degree < 0:
            raise DensePolyError(f"Degree must be non-negative, got {degree}")
        self.n = n
        self.degree = degree
        self._coeffs: dict[tuple[int, ...], Fraction] = {}
        for exponent, coeff in (coeffs or {}).items():
            alpha = tuple(exponent)
            if len(alpha) != n or any(a < 0 for a in alpha):
                raise DensePolyError(f"Bad exponent vector {alpha} for {n} variables")
            if sum(alpha) != degree:
                raise DensePolyError(f"Exponent {alpha} has degree {sum(alpha)}, expected {degree} (not homogeneous)")
            value = Fraction(coeff)
            if value:
                self._coeffs[alpha] = self._coeffs.get(alpha, Fraction(0)) + value
                if not self._coeffs[alpha]:
                    del self._coeffs[alpha]

    # --- Access ---

    def items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending lexicographic order of exponents."""
        return sorted(self._coeffs.items(), reverse=True)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(sorted(self._coeffs, reverse=True))

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._coeffs.get(tuple(exponent), Fraction(0))

    @property
    def support(self) -> set[tuple[int, ...]]:
        return set(self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DensePoly):
            return NotImplemented
        if self.is_zero and other.is_zero:
            return self.n == other.n
        return self.n == other.n and self.degree == other.degree and self._coeffs == other._coeffs

    __hash__ = None  # type: ignore[assignment]

    # --- Arithmetic ---

    def __add__(self, other: "DensePoly") -> "DensePoly":
        self._check_compatible(other)
        merged: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
        for alpha, c in self._coeffs.items():
            merged[alpha] += c
        for alpha, c in other._coeffs.items():
            merged[alpha] += c
        return DensePoly(self.n, self.degree, merged)

    def scale(self, factor: Fraction | int) -> "DensePoly":
        return DensePoly(self.n, self.degree, {alpha: c * factor for alpha, c in self._coeffs.items()})

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        if self.n != other.n:
            raise DensePolyError(f"Variable count mismatch: {self.n} vs {other.n}")
        product: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
        for alpha, a in self._coeffs.items():
            for beta, b in other._coeffs.items():
                product[tuple(x + y for x, y in zip(alpha, beta, strict=True))] += a * b
        return DensePoly(self.n, self.degree + other.degree, product)

    def _check_compatible(self, other: "DensePoly") -> None:
        if self.n != other.n or self.degree != other.degree:
            raise DensePolyError(
                f"Incompatible polynomials: ({self.n} vars, degree {self.degree}) vs ({other.n}, {other.degree})"
            )

    # --- Calculus ---

    def partial(self, index: int) -> "DensePoly":
        """Derivative with respect to variable ``index`` (0-based)."""
        if not 0 <= index < self.n:
            raise DensePolyError(f"Variable index {index} out of range for {self.n} variables")
        if self.degree == 0:
            return DensePoly(self.n, 0)
        result = {}
        for alpha, c in self._coeffs.items():
            if alpha[index]:
                lowered = list(alpha)
                lowered[index] -= 1
                result[tuple(lowered)] = c * alpha[index]
        return DensePoly(self.n, self.degree - 1, result)

    def hessian(self) -> list[list[Fraction]]:
        """Constant Hessian of a quadratic form."""
        if self.degree != 2:
            raise DensePolyError(f"Hessian is constant only for quadratics, degree is {self.degree}")
        matrix = [[Fraction(0)] * self.n for _ in range(self.n)]
        for alpha, c in self._coeffs.items():
            support = [i for i, a in enumerate(alpha) if a]
            if len(support) == 1:
                i = support[0]
                matrix[i][i] += 2 * c
            else:
                i, j = support
                matrix[i][j] += c
                matrix[j][i] += c
        return matrix

    def permute(self, order: Sequence[int]) -> "DensePoly":
        """Rename variable i to variable order[i] (0-based): the exponent at i moves to order[i]."""
        if sorted(order) != list(range(self.n)):
            raise DensePolyError(f"Not a permutation of the {self.n} variables: {order}")
        moved = {}
        for alpha, c in self._coeffs.items():
            beta = [0] * self.n
            for i, a in enumerate(alpha):
                beta[order[i]] = a
            moved[tuple(beta)] = c
        return DensePoly(self.n, self.degree, moved)

    # --- Display ---

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        pieces = []
        for alpha, c in self.items():
            monomial = "*".join(f"x{i + 1}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(alpha) if a)
            if not monomial:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(monomial)
            elif c == -1:
                pieces.append(f"-{monomial}")
            else:
                pieces.append(f"{c}*{monomial}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"DensePoly(n={self.n}, degree={self.degree}, {self})"
