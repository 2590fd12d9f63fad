"""Exact Lorentzian checks for homogeneous polynomials.

A homogeneous polynomial of degree d is Lorentzian when its coefficients are
non-negative, its support is M-convex, and every (d-2)-fold partial derivative
is a quadratic form whose Hessian has at most one positive eigenvalue. The
eigenvalue condition is decided exactly by symmetric congruence reduction
(Sylvester's law of inertia) over the rationals.
"""

import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from sympy.utilities.iterables import multiset_permutations

from dense_poly import DensePoly
from symfunc import Basis, SymPoly

logger = logging.getLogger(__name__)

CHECKER_SCHEMA = 1


class LorentzianError(ValueError):
    pass


@dataclass(frozen=True)
class Inertia:
    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def dimension(self) -> int:
        return self.n_pos + self.n_neg + self.n_zero


@dataclass(frozen=True)
class FailedCondition:
    kind: str
    witness: dict

    def to_dict(self) -> dict:
        return {"kind": self.kind, "witness": self.witness}


@dataclass(frozen=True)
class LorentzianResult:
    lorentzian: bool
    degree: int
    n: int
    failed_condition: FailedCondition | None = None

    def __bool__(self) -> bool:
        return self.lorentzian

    def to_dict(self, mu: str | None = None, k: int | None = None) -> dict:
        return {
            "schema": CHECKER_SCHEMA,
            "mu": mu,
            "k": k,
            "n": self.n,
            "degree": self.degree,
            "lorentzian": self.lorentzian,
            "failed_condition": self.failed_condition.to_dict() if self.failed_condition else None,
        }


# ---------------------------------------------------------------------------
# Symmetric -> dense
# ---------------------------------------------------------------------------


def densify(f: SymPoly) -> DensePoly:
    """Expand each m_lam into the sum of its distinct rearrangements."""
    if f.basis != Basis.MONOMIAL:
        raise LorentzianError(f"densify needs the monomial basis, got {f.basis}")
    degrees = f.degrees()
    if len(degrees) > 1:
        raise LorentzianError(f"densify needs a homogeneous polynomial, got degrees {sorted(degrees)}")
    degree = degrees.pop() if degrees else 0
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for lam, coeff in f.items():
        for alpha in multiset_permutations(list(lam.padded(f.n))):
            coeffs[tuple(alpha)] = Fraction(coeff)
    return DensePoly(f.n, degree, coeffs)


def normalize(f: DensePoly) -> DensePoly:
    """Divide the coefficient of x^alpha by alpha! = prod alpha_i!."""
    return DensePoly(
        f.n, f.degree, {alpha: c / math.prod(math.factorial(a) for a in alpha) for alpha, c in f.items()}
    )


# ---------------------------------------------------------------------------
# M-convexity
# ---------------------------------------------------------------------------


def m_convexity_witness(support: Iterable[Sequence[int]]) -> dict | None:
    """First (alpha, beta, i) violating the exchange axiom, or None if M-convex."""
    points = sorted({tuple(alpha) for alpha in support}, reverse=True)
    if not points:
        return None
    if len({len(alpha) for alpha in points}) > 1 or len({sum(alpha) for alpha in points}) > 1:
        raise LorentzianError("Support vectors must share length and coordinate sum")
    members = set(points)
    n = len(points[0])
    for alpha, beta in itertools.product(points, repeat=2):
        for i in range(n):
            if alpha[i] <= beta[i]:
                continue
            exchanged = False
            for j in range(n):
                if alpha[j] < beta[j]:
                    moved = list(alpha)
                    moved[i] -= 1
                    moved[j] += 1
                    if tuple(moved) in members:
                        exchanged = True
                        break
            if not exchanged:
                return {"alpha": list(alpha), "beta": list(beta), "i": i}
    return None


def is_m_convex(support: Iterable[Sequence[int]]) -> bool:
    return m_convexity_witness(support) is None


# ---------------------------------------------------------------------------
# Inertia
# ---------------------------------------------------------------------------


def inertia(matrix: Sequence[Sequence[Fraction | int]]) -> Inertia:
    """Signature of a symmetric rational matrix by congruence reduction.

    A nonzero diagonal pivot contributes its sign and is eliminated by a Schur
    complement. When every remaining diagonal entry is zero but some b = A[i][j]
    is not, the block [[0, b], [b, 0]] contributes one positive and one
    negative direction and both rows are eliminated together.
    """
    size = len(matrix)
    a = [[Fraction(value) for value in row] for row in matrix]
    if any(len(row) != size for row in a):
        raise LorentzianError("Matrix must be square")
    for i in range(size):
        for j in range(i + 1, size):
            if a[i][j] != a[j][i]:
                raise LorentzianError(f"Matrix is not symmetric at ({i}, {j})")

    pos = neg = 0
    active = list(range(size))
    while active:
        pivot = next((i for i in active if a[i][i] != 0), None)
        if pivot is not None:
            d = a[pivot][pivot]
            if d > 0:
                pos += 1
            else:
                neg += 1
            active.remove(pivot)
            for r in active:
                factor = a[r][pivot] / d
                if factor:
                    for c in active:
                        a[r][c] -= factor * a[pivot][c]
            continue

        pair = next(((i, j) for i, j in itertools.combinations(active, 2) if a[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        b = a[i][j]
        pos += 1
        neg += 1
        active.remove(i)
        active.remove(j)
        updates = {
            (r, c): (a[r][i] * a[j][c] + a[r][j] * a[i][c]) / b for r in active for c in active
        }
        for (r, c), delta in updates.items():
            a[r][c] -= delta
    return Inertia(n_pos=pos, n_neg=neg, n_zero=size - pos - neg)


# ---------------------------------------------------------------------------
# Lorentzian check
# ---------------------------------------------------------------------------


def derivative_multisets(n: int, order: int) -> list[tuple[int, ...]]:
    """Multisets of variable indices of the given size, colexicographic."""
    return sorted(itertools.combinations_with_replacement(range(n), order), key=lambda s: tuple(reversed(s)))


def is_lorentzian(f: DensePoly) -> LorentzianResult:
    """Check non-negativity, M-convexity and the Hessian condition, reporting the first failure."""
    for alpha, c in f.items():
        if c < 0:
            return _fail(f, "negative_coefficient", {"exponent": list(alpha), "coeff": str(c)})
    if f.degree <= 1:
        return LorentzianResult(True, f.degree, f.n)

    witness = m_convexity_witness(f.support)
    if witness is not None:
        return _fail(f, "m_convexity", witness)

    for multiset in derivative_multisets(f.n, f.degree - 2):
        quadratic = f
        for index in multiset:
            quadratic = quadratic.partial(index)
        signature = inertia(quadratic.hessian())
        if signature.n_pos > 1:
            return _fail(
                f,
                "hessian",
                {
                    "derivative": list(multiset),
                    "inertia": [signature.n_pos, signature.n_neg, signature.n_zero],
                },
            )
    return LorentzianResult(True, f.degree, f.n)


def _fail(f: DensePoly, kind: str, witness: dict) -> LorentzianResult:
    logger.debug(f"Not Lorentzian ({kind}): {witness}")
    return LorentzianResult(False, f.degree, f.n, FailedCondition(kind, witness))
