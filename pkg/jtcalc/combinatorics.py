"""Partitions, skew shapes, permutations and semistandard tableau counting.

This is the brute-force oracle layer: everything here is computed by direct
enumeration so the representation-theoretic formulas in ``weights`` and
``jacobi_trudi`` have something independent to be checked against.
"""

import itertools
import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from config import get_config

logger = logging.getLogger(__name__)


class PartitionError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """An identity that must hold exactly did not (implementation bug, never user error)."""


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing non-negative integers, stored without trailing zeros."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        for part in parts:
            if not isinstance(part, int) or isinstance(part, bool):
                raise PartitionError(f"Partition entries must be integers, got {part!r}")
            if part < 0:
                raise PartitionError(f"Partition entries must be non-negative, got {part}")
        for left, right in itertools.pairwise(parts):
            if left < right:
                raise PartitionError(f"Partition must be weakly decreasing, got {left} before {right}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, index: int) -> int:
        """Part at ``index`` (0-based), 0 past the last nonzero part."""
        return self.parts[index] if index < len(self.parts) else 0

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self.parts) > n:
            raise PartitionError(f"Partition {self} has more than {n} parts")
        return self.parts + (0,) * (n - len(self.parts))

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts) if self.parts else "0"


EMPTY = Partition()


def parse_partition(text: str) -> Partition:
    """Parse "a,b,c" (spaces tolerated); "" and "0" are the empty partition."""
    stripped = text.strip()
    if not stripped:
        return EMPTY
    parts = []
    for token in stripped.split(","):
        token = token.strip()
        try:
            value = int(token)
        except ValueError:
            raise PartitionError(f"Malformed partition entry {token!r} in {text!r}") from None
        parts.append(value)
    return Partition(tuple(parts))


def staircase(n: int) -> tuple[int, ...]:
    """The vector (n-1, n-2, ..., 1, 0)."""
    if n < 1:
        raise PartitionError(f"Staircase needs at least one variable, got n={n}")
    return tuple(range(n - 1, -1, -1))


def contains(outer: Partition, inner: Partition) -> bool:
    return all(outer[i] >= inner[i] for i in range(len(inner)))


def dominates(lam: Partition, mu: Partition) -> bool:
    """True iff lam >= mu in dominance order (partial sums of lam bound those of mu)."""
    if lam.size != mu.size:
        return False
    lam_sum = mu_sum = 0
    for i in range(max(len(lam), len(mu))):
        lam_sum += lam[i]
        mu_sum += mu[i]
        if lam_sum < mu_sum:
            return False
    return True


def enumerate_partitions(d: int, max_parts: int) -> list[Partition]:
    """All partitions of d with at most max_parts parts, reverse lexicographic."""
    return [Partition(parts) for parts in _partitions(d, d, max_parts)]


def _partitions(d: int, largest: int, max_parts: int) -> Iterator[tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first, max_parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Skew shapes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition = EMPTY

    def __post_init__(self):
        if not contains(self.outer, self.inner):
            raise PartitionError(f"Inner partition {self.inner} does not fit inside {self.outer}")

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def columns(self) -> list[list[int]]:
        """Row indices of the boxes in each column, top to bottom."""
        width = self.outer[0]
        return [
            [row for row in range(len(self.outer)) if self.inner[row] <= col < self.outer[row]]
            for col in range(width)
        ]

    def __str__(self) -> str:
        return f"{self.outer}/{self.inner}"


def parse_skew(text: str) -> SkewShape:
    """Parse "outer/inner"; a bare partition is a straight shape."""
    outer_text, _, inner_text = text.partition("/")
    return SkewShape(parse_partition(outer_text), parse_partition(inner_text))


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """Bijection on {1..n} in one-line notation; ``length`` is the inversion count."""

    images: tuple[int, ...]
    length: int = field(init=False, compare=False)

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise PartitionError(f"Not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)
        inversions = sum(1 for i, j in itertools.combinations(range(len(images)), 2) if images[i] > images[j])
        object.__setattr__(self, "length", inversions)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def simple(cls, i: int, n: int) -> "Permutation":
        """The adjacent transposition s_i swapping i and i+1."""
        if not 1 <= i < n:
            raise PartitionError(f"Simple reflection s_{i} does not exist in S_{n}")
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        result = [0] * self.degree
        for position, image in enumerate(self.images, start=1):
            result[image - 1] = position
        return Permutation(tuple(result))

    def compose(self, other: "Permutation") -> "Permutation":
        """self ∘ other (apply other first)."""
        return Permutation(tuple(self(other(i)) for i in range(1, other.degree + 1)))

    def __str__(self) -> str:
        return "".join(str(i) for i in self.images) if self.degree < 10 else ",".join(map(str, self.images))


def permutations_by_length(n: int) -> dict[int, list[Permutation]]:
    """S_n bucketed by inversion count, lexicographic within each bucket."""
    return {length: list(perms) for length, perms in _permutation_table(n, get_config().max_permutation_degree)}


def all_permutations(n: int) -> list[Permutation]:
    """S_n ordered by length, then lexicographically."""
    return [w for _, perms in _permutation_table(n, get_config().max_permutation_degree) for w in perms]


@lru_cache(maxsize=None)
def _permutation_table(n: int, bound: int) -> tuple[tuple[int, tuple[Permutation, ...]], ...]:
    if n < 1:
        raise PartitionError(f"S_n needs n >= 1, got {n}")
    if n > bound:
        raise PartitionError(f"S_{n} exceeds the permutation bound {bound} (JT_MAX_PERMUTATION_DEGREE)")
    buckets: dict[int, list[Permutation]] = {k: [] for k in range(n * (n - 1) // 2 + 1)}
    for images in itertools.permutations(range(1, n + 1)):
        w = Permutation(images)
        buckets[w.length].append(w)
    logger.debug(f"Built S_{n}: {sum(len(b) for b in buckets.values())} permutations")
    return tuple((k, tuple(perms)) for k, perms in buckets.items())


# ---------------------------------------------------------------------------
# Semistandard tableaux
# ---------------------------------------------------------------------------


def count_ssyt(shape: SkewShape, content: Sequence[int]) -> int:
    """Number of SSYT of the skew shape using value i exactly content[i-1] times.

    Column-by-column backtracking: each column is a strictly increasing run of
    values, each row must be weakly increasing against the previous column.
    Impossible inputs (negative content, size mismatch) count 0.
    """
    content = tuple(content)
    if any(c < 0 for c in content) or sum(content) != shape.size:
        return 0
    n = len(content)
    columns = shape.columns()
    if any(len(col) > n for col in columns):
        return 0

    memo: dict[tuple[int, tuple[tuple[int, int], ...], tuple[int, ...]], int] = {}

    def fill(col: int, previous: tuple[tuple[int, int], ...], remaining: tuple[int, ...]) -> int:
        if col == len(columns):
            return 1
        key = (col, previous, remaining)
        if key in memo:
            return memo[key]
        left = dict(previous)
        rows = columns[col]
        total = 0
        for values in _column_fillings(rows, left, remaining, n):
            rest = list(remaining)
            for value in values:
                rest[value - 1] -= 1
            total += fill(col + 1, tuple(zip(rows, values, strict=True)), tuple(rest))
        memo[key] = total
        return total

    return fill(0, (), content)


def _column_fillings(
    rows: list[int], left: dict[int, int], remaining: tuple[int, ...], n: int
) -> Iterator[tuple[int, ...]]:
    """Strictly increasing values for one column, weakly above the left neighbours."""

    def extend(index: int, floor: int) -> Iterator[tuple[int, ...]]:
        if index == len(rows):
            yield ()
            return
        low = max(floor, left.get(rows[index], 1))
        # leave room for the strictly larger values below
        high = n - (len(rows) - 1 - index)
        for value in range(low, high + 1):
            if remaining[value - 1] == 0:
                continue
            for tail in extend(index + 1, value + 1):
                yield (value,) + tail

    return extend(0, 1)


def compositions(total: int, n: int, low: int, high: int) -> Iterable[tuple[int, ...]]:
    """Integer vectors of length n with entries in [low, high] summing to total, lexicographic."""
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(low, high + 1):
        rest = total - first
        if (n - 1) * low <= rest <= (n - 1) * high:
            for tail in compositions(rest, n - 1, low, high):
                yield (first,) + tail
