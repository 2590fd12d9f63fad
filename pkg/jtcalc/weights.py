"""Integer weights for sl_n and the Kostant partition function.

Weights live in gl_n coordinates (length-n integer vectors) and the staircase
delta = (n-1, ..., 1, 0) stands in for the Weyl vector, so the dot action is
w.lam = w(lam + delta) - delta. Weight multiplicities of Verma modules are
Kostant partition function values; Kostka numbers come out of the Weyl
character formula as an alternating sum of them over S_n.
"""

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from combinatorics import Partition, Permutation, all_permutations, permutations_by_length, staircase

logger = logging.getLogger(__name__)


class WeightError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Weight:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        for value in entries:
            if not isinstance(value, int) or isinstance(value, bool):
                raise WeightError(f"Weight entries must be integers, got {value!r}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, partition: Partition, n: int) -> "Weight":
        if partition.length > n:
            raise WeightError(f"Partition {partition} has more than {n} parts")
        return cls(partition.padded(n))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n)

    @classmethod
    def delta(cls, n: int) -> "Weight":
        return cls(staircase(n))

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def size(self) -> int:
        return sum(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> int:
        return self.entries[index]

    def _check_rank(self, other: "Weight") -> None:
        if len(self.entries) != len(other.entries):
            raise WeightError(f"Rank mismatch: {self} has {len(self)} entries, {other} has {len(other)}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check_rank(other)
        return Weight(tuple(a + b for a, b in zip(self.entries, other.entries, strict=True)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check_rank(other)
        return Weight(tuple(a - b for a, b in zip(self.entries, other.entries, strict=True)))

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.entries)


def parse_weight(text: str, n: int | None = None) -> Weight:
    """Parse signed "a,b,c"; when n is given the length must match."""
    stripped = text.strip()
    entries: list[int] = []
    if stripped:
        for token in stripped.split(","):
            token = token.strip()
            try:
                entries.append(int(token))
            except ValueError:
                raise WeightError(f"Malformed weight entry {token!r} in {text!r}") from None
    if n is not None and len(entries) != n:
        raise WeightError(f"Weight {text!r} has {len(entries)} entries, expected {n}")
    if not entries:
        raise WeightError("Weight must have at least one entry")
    return Weight(tuple(entries))


# ---------------------------------------------------------------------------
# Root system of type A
# ---------------------------------------------------------------------------


class RootSystemA:
    """Positive roots e_i - e_j (i < j) of sl_n, in the order (1,2), (1,3), ..., (n-1,n)."""

    def __init__(self, n: int):
        if n < 1:
            raise WeightError(f"Rank must be at least 1, got {n}")
        self.n = n
        self.root_pairs: tuple[tuple[int, int], ...] = tuple((i, j) for i in range(n) for j in range(i + 1, n))
        self.rho = Weight.delta(n)

    @property
    def positive_roots(self) -> list[Weight]:
        roots = []
        for i, j in self.root_pairs:
            entries = [0] * self.n
            entries[i], entries[j] = 1, -1
            roots.append(Weight(tuple(entries)))
        return roots


def act(w: Permutation, v: Weight) -> Weight:
    """(w v)_i = v_{w^-1(i)}: entry j moves to position w(j)."""
    if w.degree != v.rank:
        raise WeightError(f"Permutation of degree {w.degree} cannot act on weight of rank {v.rank}")
    result = [0] * v.rank
    for j, value in enumerate(v.entries, start=1):
        result[w(j) - 1] = value
    return Weight(tuple(result))


def dot(w: Permutation, lam: Weight) -> Weight:
    delta = Weight.delta(lam.rank)
    return act(w, lam + delta) - delta


# ---------------------------------------------------------------------------
# Kostant partition function
# ---------------------------------------------------------------------------


class _KostantTable:
    """Memoized partition function for one rank.

    Recursion runs over the roots in order; root (i, j) takes coefficient c and
    the rest is decomposed with later roots only. The last root starting at i
    is forced to clear entry i, since nothing after it touches that coordinate.
    """

    def __init__(self, n: int):
        self.system = RootSystemA(n)
        self.values: dict[tuple[int, ...], int] = {}
        self._partial: dict[tuple[tuple[int, ...], int], int] = {}

    def __call__(self, v: tuple[int, ...]) -> int:
        cached = self.values.get(v)
        if cached is not None:
            return cached
        value = self._count(v, 0) if _in_support(v) else 0
        self.values[v] = value
        return value

    def _count(self, remainder: tuple[int, ...], index: int) -> int:
        pairs = self.system.root_pairs
        if index == len(pairs):
            return 1 if not any(remainder) else 0
        key = (remainder, index)
        cached = self._partial.get(key)
        if cached is not None:
            return cached

        i, j = pairs[index]
        if j == self.system.n - 1:
            forced = remainder[i]
            if forced < 0:
                total = 0
            else:
                total = self._count(_shift(remainder, i, j, forced), index + 1)
        else:
            # prefix sums over i..j-1 drop by c and must stay non-negative
            bound = min(sum(remainder[: k + 1]) for k in range(i, j))
            total = sum(self._count(_shift(remainder, i, j, c), index + 1) for c in range(bound + 1))
        self._partial[key] = total
        return total


def _shift(v: tuple[int, ...], i: int, j: int, c: int) -> tuple[int, ...]:
    if c == 0:
        return v
    out = list(v)
    out[i] -= c
    out[j] += c
    return tuple(out)


def _in_support(v: Sequence[int]) -> bool:
    """Zero sum and non-negative prefix sums: necessary for any sum of positive roots."""
    running = 0
    for value in v:
        running += value
        if running < 0:
            return False
    return running == 0


_kostant_tables: dict[int, _KostantTable] = {}
_kostka_values: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}


def _table(n: int) -> _KostantTable:
    table = _kostant_tables.get(n)
    if table is None:
        table = _kostant_tables.setdefault(n, _KostantTable(n))
    return table


def kostant_p(v: Weight) -> int:
    """Number of ways to write v as a non-negative integer combination of positive roots."""
    return _table(v.rank)(v.entries)


def verma_weight_mult(lam: Weight, tau: Weight) -> int:
    """dim of the tau weight space of the Verma module of highest weight lam."""
    return kostant_p(lam - tau)


# ---------------------------------------------------------------------------
# Kostka numbers and BGG characters
# ---------------------------------------------------------------------------


def kostka_alternating(lam: Partition, tau: Weight) -> int:
    """sum over v in S_n of (-1)^l(v) p(v.lam - tau), with no support shortcuts."""
    lam_weight = Weight.of(lam, tau.rank)
    return sum(w.sign * kostant_p(dot(w, lam_weight) - tau) for w in all_permutations(tau.rank))


def kostka(lam: Partition, tau: Weight) -> int:
    """K_{lam,tau} = dim L(lam)_tau by the Weyl character formula.

    Zero when |lam| != sum(tau) or tau has a negative entry; the alternating
    sum vanishes there too (checked by the kostka sweep, not assumed).
    """
    if lam.length > tau.rank:
        raise WeightError(f"Partition {lam} has more parts than the rank {tau.rank}")
    if lam.size != tau.size or any(t < 0 for t in tau.entries):
        return 0
    key = (lam.parts, tau.entries)
    cached = _kostka_values.get(key)
    if cached is not None:
        return cached
    value = kostka_alternating(lam, tau)
    _kostka_values[key] = value
    return value


def _check_truncation_index(k: int, n: int) -> None:
    top = n * (n - 1) // 2
    if not 0 <= k <= top:
        raise WeightError(f"Truncation index k={k} out of range 0..{top} for n={n}")


def image_weight_mult(nu: Partition, k: int, tau: Weight) -> int:
    """Weight multiplicity of tau in V(nu, k), the image of d_k in the BGG resolution of L(nu).

    (-1)^k sum over l(w) >= k of (-1)^l(w) p(w.nu - tau).
    """
    n = tau.rank
    _check_truncation_index(k, n)
    nu_weight = Weight.of(nu, n)
    total = 0
    for length, perms in permutations_by_length(n).items():
        if length < k:
            continue
        sign = -1 if length % 2 else 1
        total += sign * sum(kostant_p(dot(w, nu_weight) - tau) for w in perms)
    return total if k % 2 == 0 else -total


def chain_weight_mult(nu: Partition, k: int, tau: Weight) -> int:
    """Weight multiplicity of tau in C_k = direct sum of Verma modules Delta(w.nu), l(w) = k."""
    n = tau.rank
    _check_truncation_index(k, n)
    nu_weight = Weight.of(nu, n)
    return sum(verma_weight_mult(dot(w, nu_weight), tau) for w in permutations_by_length(n)[k])


def tensor_product_mult(lam: Partition, w: Permutation, nu: Partition, mu: Partition) -> int:
    """[L(lam) (x) Delta(w.nu) : L(mu)] by extracting Verma coefficients of the character product.

    sum over v in S_n of (-1)^l(v) p(v.lam + w.nu - mu).
    """
    n = w.degree
    shift = dot(w, Weight.of(nu, n)) - Weight.of(mu, n)
    lam_weight = Weight.of(lam, n)
    return sum(v.sign * kostant_p(dot(v, lam_weight) + shift) for v in all_permutations(n))


# ---------------------------------------------------------------------------
# Memo tables (seeded from and saved to the persistent cache)
# ---------------------------------------------------------------------------


def export_memo() -> dict[str, dict]:
    """Snapshot of top-level memo values: {"kostant": {n: {v: p}}, "kostka": {(lam, tau): K}}."""
    return {
        "kostant": {n: dict(table.values) for n, table in sorted(_kostant_tables.items())},
        "kostka": dict(_kostka_values),
    }


def seed_memo(kostant: dict[int, dict[tuple[int, ...], int]], kostka_table: dict) -> None:
    for n, values in kostant.items():
        _table(n).values.update(values)
    _kostka_values.update(kostka_table)
    logger.debug(f"Seeded memo with {sum(len(v) for v in kostant.values())} Kostant and {len(kostka_table)} Kostka values")


def clear_memo() -> None:
    _kostant_tables.clear()
    _kostka_values.clear()
