"""Jacobi-Trudi determinants and their truncations g^k.

The determinant det(h_{mu_i - nu_j - i + j}) is kept in its signed-sum form
over S_n: one term (-1)^l(w) h_{mu + delta - w(nu + delta)} per permutation.
The truncation g^k keeps the terms with l(w) >= k and multiplies by (-1)^k;
its Schur coefficients are tensor product multiplicities
[L(lam) (x) V(nu, k) : L(mu)] and therefore non-negative, which
``positivity_report`` checks rather than assumes.
"""

import logging
from dataclasses import dataclass, field

from combinatorics import Partition, Permutation, contains, enumerate_partitions, permutations_by_length
from symfunc import Basis, SymPoly, h_of_vector, total
from weights import Weight, act, dot, kostka

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 1


class JacobiTrudiError(ValueError):
    pass


@dataclass(frozen=True)
class JTTerm:
    w: Permutation
    sign: int
    hvector: Weight
    dotweight: Weight

    @property
    def length(self) -> int:
        return self.w.length


def default_rank(mu: Partition, nu: Partition) -> int:
    """Smallest rank in which the skew identity is nontrivial: max(l(mu), l(nu) + 1)."""
    return max(mu.length, nu.length + 1)


def max_truncation(n: int) -> int:
    return n * (n - 1) // 2


def _validate(mu: Partition, nu: Partition, n: int) -> None:
    if n < 1:
        raise JacobiTrudiError(f"Rank must be at least 1, got n={n}")
    if not contains(mu, nu):
        raise JacobiTrudiError(f"{nu} does not fit inside {mu}")
    if mu.length > n or nu.length > n:
        raise JacobiTrudiError(f"{mu}/{nu} needs at most {n} parts")


def _validate_k(k: int, n: int) -> None:
    if not 0 <= k <= max_truncation(n):
        raise JacobiTrudiError(f"Truncation index k={k} out of range 0..{max_truncation(n)} for n={n}")


def jt_terms(mu: Partition, nu: Partition, n: int) -> list[JTTerm]:
    """One term per w in S_n, ordered by length then lexicographically."""
    _validate(mu, nu, n)
    mu_weight = Weight.of(mu, n)
    nu_weight = Weight.of(nu, n)
    delta = Weight.delta(n)
    terms = []
    for _, perms in sorted(permutations_by_length(n).items()):
        for w in perms:
            terms.append(
                JTTerm(
                    w=w,
                    sign=w.sign,
                    hvector=mu_weight + delta - act(w, nu_weight + delta),
                    dotweight=dot(w, nu_weight),
                )
            )
    return terms


def jt_determinant(mu: Partition, nu: Partition, n: int) -> SymPoly:
    return truncation(mu, nu, n, 0)


def truncation(mu: Partition, nu: Partition, n: int, k: int) -> SymPoly:
    """g^k = (-1)^k sum over l(w) >= k of (-1)^l(w) h_{mu + delta - w(nu + delta)}."""
    _validate(mu, nu, n)
    _validate_k(k, n)
    outer = -1 if k % 2 else 1
    return total(
        [outer * term.sign * h_of_vector(term.hvector, n) for term in jt_terms(mu, nu, n) if term.length >= k],
        Basis.COMPLETE,
        n,
    )


def layer_character(mu: Partition, nu: Partition, n: int, i: int) -> SymPoly:
    """Character of Y_i(mu/nu): the sum of h_{mu + delta - w(nu + delta)} over l(w) = i."""
    _validate(mu, nu, n)
    _validate_k(i, n)
    return total([h_of_vector(term.hvector, n) for term in jt_terms(mu, nu, n) if term.length == i], Basis.COMPLETE, n)


def truncation_schur(mu: Partition, nu: Partition, n: int, k: int) -> SymPoly:
    """Schur expansion of g^k: coefficient of s_lam is (-1)^k sum (-1)^l(w) K_{lam, hvector(w)}."""
    _validate(mu, nu, n)
    _validate_k(k, n)
    outer = -1 if k % 2 else 1
    kept = [term for term in jt_terms(mu, nu, n) if term.length >= k]
    coeffs = {}
    for lam in enumerate_partitions(mu.size - nu.size, n):
        coeffs[lam] = outer * sum(term.sign * kostka(lam, term.hvector) for term in kept)
    return SymPoly(Basis.SCHUR, n, coeffs)


def tensor_verma_mult(lam: Partition, w: Permutation, nu: Partition, mu: Partition, n: int) -> int:
    """[L(lam) (x) Delta(w.nu) : L(mu)] = K_{lam, mu + delta - w(nu + delta)}."""
    if w.degree != n:
        raise JacobiTrudiError(f"Permutation of degree {w.degree} used at rank {n}")
    for name, part in (("lambda", lam), ("mu", mu), ("nu", nu)):
        if part.length > n:
            raise JacobiTrudiError(f"{name}={part} has more than {n} parts")
    delta = Weight.delta(n)
    return kostka(lam, Weight.of(mu, n) + delta - act(w, Weight.of(nu, n) + delta))


# ---------------------------------------------------------------------------
# Positivity report
# ---------------------------------------------------------------------------


@dataclass
class TruncationRow:
    k: int
    schur_coefficients: dict[Partition, int]
    all_nonnegative: bool
    zero_poly: bool


@dataclass
class PositivityReport:
    mu: Partition
    nu: Partition
    n: int
    rows: list[TruncationRow] = field(default_factory=list)
    telescoping_ok: bool = True
    telescoping_failures: list[int] = field(default_factory=list)

    @property
    def k_max(self) -> int:
        return max_truncation(self.n)

    @property
    def all_nonnegative(self) -> bool:
        return all(row.all_nonnegative for row in self.rows)

    @property
    def ok(self) -> bool:
        return self.all_nonnegative and self.telescoping_ok

    def negative_entries(self) -> list[tuple[int, Partition, int]]:
        return [
            (row.k, lam, coeff) for row in self.rows for lam, coeff in row.schur_coefficients.items() if coeff < 0
        ]

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "mu": str(self.mu),
            "nu": str(self.nu),
            "n": self.n,
            "k_max": self.k_max,
            "rows": [
                {
                    "k": row.k,
                    "coeffs": {str(lam): coeff for lam, coeff in row.schur_coefficients.items()},
                    "nonneg": row.all_nonnegative,
                    "zero_poly": row.zero_poly,
                }
                for row in self.rows
            ],
            "telescoping_ok": self.telescoping_ok,
            "telescoping_failures": list(self.telescoping_failures),
        }


def positivity_report(mu: Partition, nu: Partition, n: int) -> PositivityReport:
    """Schur coefficients of every g^k plus the telescoping check g^k + g^(k+1) = ch Y_k."""
    _validate(mu, nu, n)
    report = PositivityReport(mu=mu, nu=nu, n=n)
    shapes = enumerate_partitions(mu.size - nu.size, n)
    for k in range(max_truncation(n) + 1):
        expansion = truncation_schur(mu, nu, n, k)
        coefficients = {lam: expansion.coefficient(lam) for lam in shapes}
        row = TruncationRow(
            k=k,
            schur_coefficients=coefficients,
            all_nonnegative=all(c >= 0 for c in coefficients.values()),
            zero_poly=expansion.is_zero,
        )
        if not row.all_nonnegative:
            logger.error(f"Negative Schur coefficient in g^{k} for {mu}/{nu}, n={n}: {expansion}")
        report.rows.append(row)

    truncations = [truncation(mu, nu, n, k) for k in range(max_truncation(n) + 1)]
    for k in range(max_truncation(n)):
        if truncations[k] + truncations[k + 1] != layer_character(mu, nu, n, k):
            report.telescoping_ok = False
            report.telescoping_failures.append(k)
            logger.error(f"Telescoping failed at k={k} for {mu}/{nu}, n={n}")
    return report
