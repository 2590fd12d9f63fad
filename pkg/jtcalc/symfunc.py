"""Sparse symmetric polynomials in n variables over the integers.

A SymPoly is tagged with its basis: monomial (m), complete homogeneous (h) or
Schur (s). m and s keys with more than n parts are zero in n variables and are
dropped on construction; h keys are formal products and may have any length.
Conversions are the single source of truth for comparing across bases.
"""

import logging
from collections import defaultdict
from collections.abc import Mapping, Sequence
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

from fractions import Fraction
from functools import lru_cache

import sympy
from sympy.utilities.iterables import multiset_permutations

from combinatorics import (
    ConsistencyError,
    Partition,
    SkewShape,
    contains,
    count_ssyt,
    enumerate_partitions,
    parse_partition,
)
from config import get_config
from dense_poly import DensePoly
from weights import Weight, kostka

logger = logging.getLogger(__name__)


class BasisError(ValueError):
    pass


class Basis(StrEnum):
    MONOMIAL = "monomial"
    COMPLETE = "complete"
    SCHUR = "schur"


_PREFIX = {Basis.MONOMIAL: "m", Basis.COMPLETE: "h", Basis.SCHUR: "s"}


class SymPoly:
    __slots__ = ("basis", "n", "_terms")

    def __init__(self, basis: Basis | str, n: int, terms: Mapping[Partition, int] | None = None):
        try:
            self.basis = Basis(basis)
        except ValueError:
            raise BasisError(f"Unknown basis {basis!r}") from None
        if n < 1:
            raise BasisError(f"Need at least one variable, got n={n}")
        self.n = n
        self._terms: dict[Partition, int] = {}
        for key, coeff in (terms or {}).items():
            if self.basis != Basis.COMPLETE and key.length > n:
                continue
            total = self._terms.get(key, 0) + int(coeff)
            if total:
                self._terms[key] = total
            else:
                self._terms.pop(key, None)

    @property
    def terms(self) -> dict[Partition, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Partition, int]]:
        """Terms with keys in descending (reverse lexicographic) order."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, key: Partition) -> int:
        return self._terms.get(key, 0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {key.size for key in self._terms}

    def _check_compatible(self, other: "SymPoly") -> None:
        if self.basis != other.basis or self.n != other.n:
            raise BasisError(f"Cannot combine {self.basis} in {self.n} vars with {other.basis} in {other.n} vars")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.basis == other.basis and self.n == other.n and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "SymPoly") -> "SymPoly":
        return add(self, other)

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return add(self, scale(other, -1))

    def __neg__(self) -> "SymPoly":
        return scale(self, -1)

    def __mul__(self, factor: int) -> "SymPoly":
        return scale(self, factor)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        prefix = _PREFIX[self.basis]
        pieces = []
        for key, coeff in self.items():
            label = f"{prefix}[{key}]" if key.length else "1"
            if coeff == 1:
                pieces.append(label)
            elif coeff == -1:
                pieces.append(f"-{label}")
            else:
                pieces.append(f"{coeff}*{label}" if key.length else str(coeff))
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SymPoly({self.basis}, n={self.n}, {self})"


# ---------------------------------------------------------------------------
# Constructors and linear structure
# ---------------------------------------------------------------------------


def monomial(lam: Partition, n: int) -> SymPoly:
    return SymPoly(Basis.MONOMIAL, n, {lam: 1})


def schur(lam: Partition, n: int) -> SymPoly:
    return SymPoly(Basis.SCHUR, n, {lam: 1})


def complete(lam: Partition, n: int) -> SymPoly:
    return SymPoly(Basis.COMPLETE, n, {lam: 1})


def h_of_vector(tau: Weight | Sequence[int], n: int) -> SymPoly:
    """h_{tau_1} h_{tau_2} ... with h_0 = 1 and h_k = 0 for k < 0."""
    entries = tau.entries if isinstance(tau, Weight) else tuple(tau)
    if any(t < 0 for t in entries):
        return SymPoly(Basis.COMPLETE, n)
    return complete(Partition(tuple(sorted(entries, reverse=True))), n)


def add(f: SymPoly, g: SymPoly) -> SymPoly:
    f._check_compatible(g)
    merged = defaultdict(int, f._terms)
    for key, coeff in g._terms.items():
        merged[key] += coeff
    return SymPoly(f.basis, f.n, merged)


def scale(f: SymPoly, c: int) -> SymPoly:
    return SymPoly(f.basis, f.n, {key: c * coeff for key, coeff in f._terms.items()})


def total(polys: Sequence[SymPoly], basis: Basis, n: int) -> SymPoly:
    """Sum of a list of polynomials (the zero polynomial for an empty list)."""
    merged: dict[Partition, int] = defaultdict(int)
    for f in polys:
        if f.basis != basis or f.n != n:
            raise BasisError(f"Cannot sum {f.basis} in {f.n} vars into {basis} in {n} vars")
        for key, coeff in f._terms.items():
            merged[key] += coeff
    return SymPoly(basis, n, merged)


# ---------------------------------------------------------------------------
# Basis conversions
# ---------------------------------------------------------------------------


def to_monomial(f: SymPoly) -> SymPoly:
    if f.basis == Basis.MONOMIAL:
        return f
    expand = _schur_in_monomials if f.basis == Basis.SCHUR else _complete_in_monomials
    merged: dict[Partition, int] = defaultdict(int)
    for key, coeff in f._terms.items():
        for rho, value in expand(key, f.n):
            merged[rho] += coeff * value
    return SymPoly(Basis.MONOMIAL, f.n, merged)


@lru_cache(maxsize=4096)
def _schur_in_monomials(lam: Partition, n: int) -> tuple[tuple[Partition, int], ...]:
    """s_lam = sum_rho K_{lam,rho} m_rho."""
    return tuple(
        (rho, k) for rho in enumerate_partitions(lam.size, n) if (k := kostka(lam, Weight(rho.padded(n))))
    )


@lru_cache(maxsize=4096)
def _complete_in_monomials(lam: Partition, n: int) -> tuple[tuple[Partition, int], ...]:
    """h_lam as a product of h_k = sum of all m_rho with rho |- k."""
    if not lam.length:
        return ((Partition(), 1),)
    head = SymPoly(Basis.MONOMIAL, n, dict(_complete_in_monomials(Partition(lam.parts[:-1]), n)))
    last = SymPoly(Basis.MONOMIAL, n, dict.fromkeys(enumerate_partitions(lam.parts[-1], n), 1))
    return tuple(_monomial_product(head, last).items())


def _monomial_product(f: SymPoly, g: SymPoly) -> SymPoly:
    """Expand f to exponent vectors, multiply by each rearrangement of g's keys, keep sorted exponents."""
    n = f.n
    expanded: dict[tuple[int, ...], int] = defaultdict(int)
    for lam, coeff in f._terms.items():
        for alpha in multiset_permutations(list(lam.padded(n))):
            expanded[tuple(alpha)] += coeff
    product: dict[Partition, int] = defaultdict(int)
    for sigma, coeff in g._terms.items():
        for beta in multiset_permutations(list(sigma.padded(n))):
            for alpha, value in expanded.items():
                gamma = tuple(a + b for a, b in zip(alpha, beta, strict=True))
                if all(gamma[i] >= gamma[i + 1] for i in range(n - 1)):
                    product[Partition(gamma)] += value * coeff
    return SymPoly(Basis.MONOMIAL, n, product)


def h_to_schur(f: SymPoly) -> SymPoly:
    """h_tau = sum_lam K_{lam,tau} s_lam, summed over lam with at most n parts."""
    if f.basis != Basis.COMPLETE:
        raise BasisError(f"h_to_schur needs the complete basis, got {f.basis}")
    merged: dict[Partition, int] = defaultdict(int)
    for tau, coeff in f._terms.items():
        rank = max(f.n, tau.length)
        content = Weight(tau.padded(rank))
        for lam in enumerate_partitions(tau.size, f.n):
            merged[lam] += coeff * kostka(lam, content)
    return SymPoly(Basis.SCHUR, f.n, merged)


def monomial_to_schur(f: SymPoly) -> SymPoly:
    """Invert the Kostka matrix: peel off the lexicographically largest term repeatedly."""
    if f.basis != Basis.MONOMIAL:
        raise BasisError(f"monomial_to_schur needs the monomial basis, got {f.basis}")
    remaining = dict(f._terms)
    result: dict[Partition, int] = defaultdict(int)
    while remaining:
        lam = max(remaining)
        coeff = remaining[lam]
        result[lam] += coeff
        for rho, k in _schur_in_monomials(lam, f.n):
            left = remaining.get(rho, 0) - coeff * k
            if left:
                remaining[rho] = left
            else:
                remaining.pop(rho, None)
    return SymPoly(Basis.SCHUR, f.n, result)


def multiply(f: SymPoly, g: SymPoly) -> SymPoly:
    f._check_compatible(g)
    if f.basis == Basis.COMPLETE:
        product: dict[Partition, int] = defaultdict(int)
        for lam, a in f._terms.items():
            for sigma, b in g._terms.items():
                product[Partition(tuple(sorted(lam.parts + sigma.parts, reverse=True)))] += a * b
        return SymPoly(Basis.COMPLETE, f.n, product)
    if f.basis == Basis.MONOMIAL:
        return _monomial_product(f, g)
    return monomial_to_schur(_monomial_product(to_monomial(f), to_monomial(g)))


# ---------------------------------------------------------------------------
# Skew Schur polynomials and the bialternant
# ---------------------------------------------------------------------------


def skew_schur_monomial(shape: SkewShape, n: int) -> SymPoly:
    """SSYT generating function of the skew shape in the monomial basis."""
    return SymPoly(
        Basis.MONOMIAL,
        n,
        {rho: count_ssyt(shape, rho.padded(n)) for rho in enumerate_partitions(shape.size, n)},
    )


def skew_schur_by_duality(mu: Partition, nu: Partition, n: int) -> SymPoly:
    """Coefficient of s_lam is the coefficient of s_mu in s_lam * s_nu."""
    if not contains(mu, nu):
        raise BasisError(f"{nu} does not fit inside {mu}")
    if mu.length > n:
        raise BasisError(f"{mu} has more than {n} parts")
    coeffs = {}
    for lam in enumerate_partitions(mu.size - nu.size, n):
        coeffs[lam] = multiply(schur(lam, n), schur(nu, n)).coefficient(mu)
    return SymPoly(Basis.SCHUR, n, coeffs)


def bialternant_schur(lam: Partition, n: int) -> DensePoly:
    """det(x_j^(lam_i + n - i)) / det(x_j^(n - i)) by exact multivariate division."""
    guard = get_config().bialternant_max_vars
    if n > guard:
        raise BasisError(f"Dense alternants are limited to {guard} variables, got n={n}")
    if lam.length > n:
        raise BasisError(f"{lam} has more than {n} parts")
    xs = sympy.symbols(f"x1:{n + 1}")
    shifted = [lam[i] + n - 1 - i for i in range(n)]
    numerator = sympy.Matrix(n, n, lambda i, j: xs[j] ** shifted[i]).det(method="berkowitz")
    vandermonde = sympy.Matrix(n, n, lambda i, j: xs[j] ** (n - 1 - i)).det(method="berkowitz")
    quotient, remainder = sympy.div(
        sympy.Poly(numerator, *xs, domain="QQ"), sympy.Poly(vandermonde, *xs, domain="QQ")
    )
    if not remainder.is_zero:
        raise ConsistencyError(f"Bialternant for {lam} in {n} variables left remainder {remainder.as_expr()}")
    terms = {}
    for exponent, coeff in quotient.terms():
        rational = sympy.Rational(coeff)
        terms[exponent] = Fraction(int(rational.p), int(rational.q))
    return DensePoly(n, lam.size, terms)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def to_json(f: SymPoly) -> dict:
    return {
        "basis": str(f.basis),
        "n": f.n,
        "terms": [{"partition": str(key), "coeff": str(coeff)} for key, coeff in f.items()],
    }


def from_json(document: Mapping) -> SymPoly:
    try:
        terms = {parse_partition(t["partition"]): int(t["coeff"]) for t in document["terms"]}
        return SymPoly(document["basis"], int(document["n"]), terms)
    except (KeyError, TypeError) as e:
        raise BasisError(f"Malformed SymPoly document: {e}") from None
