"""Verification sweeps: generate cases per suite, evaluate them, assemble a manifest.

Every case is evaluated by the module-level ``evaluate`` so it can be shipped
to worker processes. A case never raises: any exception becomes a failure
with the exception text as its witness. Case order is fixed by the generators,
so manifests do not depend on the number of workers.
"""

import json
import logging
import os
import time
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from combinatorics import (
    Partition,
    Permutation,
    SkewShape,
    compositions,
    contains,
    count_ssyt,
    enumerate_partitions,
)
from jacobi_trudi import (
    jt_determinant,
    jt_terms,
    layer_character,
    max_truncation,
    truncation,
    truncation_schur,
)
from lorentzian import densify, is_lorentzian, normalize
from memo_cache import MemoCache
from symfunc import (
    Basis,
    bialternant_schur,
    h_of_vector,
    h_to_schur,
    schur,
    skew_schur_by_duality,
    skew_schur_monomial,
    to_monomial,
    total,
)
from weights import (
    Weight,
    chain_weight_mult,
    dot,
    export_memo,
    image_weight_mult,
    kostka,
    kostka_alternating,
    seed_memo,
    verma_weight_mult,
)

logger = logging.getLogger(__name__)

MANIFEST_SCHEMA = 1
LONG_LORENTZIAN_BOXES = 9


class Suite:
    JACOBI_TRUDI = "jacobi-trudi"
    KOSTKA = "kostka"
    POSITIVITY = "positivity"
    TELESCOPING = "telescoping"
    IMAGE_POSITIVITY = "image-positivity"
    BIALTERNANT = "bialternant"
    LORENTZIAN = "lorentzian"
    ENDPOINTS = "endpoints"
    SKEW_DUALITY = "skew-duality"
    BGG_RANK2 = "bgg-rank2"


ALL_SUITES = (
    Suite.JACOBI_TRUDI,
    Suite.KOSTKA,
    Suite.POSITIVITY,
    Suite.TELESCOPING,
    Suite.IMAGE_POSITIVITY,
    Suite.BIALTERNANT,
    Suite.LORENTZIAN,
    Suite.ENDPOINTS,
    Suite.SKEW_DUALITY,
    Suite.BGG_RANK2,
)


class SweepConfigError(ValueError):
    pass


@dataclass
class SweepConfig:
    max_boxes: int
    n: int
    suites: tuple[str, ...] = ALL_SUITES
    output: str | None = None
    cache: str | None = None
    jobs: int = 1
    long: bool = False

    def __post_init__(self):
        if self.max_boxes < 0:
            raise SweepConfigError(f"max_boxes must be >= 0, got {self.max_boxes}")
        if self.n < 1:
            raise SweepConfigError(f"n must be >= 1, got {self.n}")
        if self.jobs < 1:
            raise SweepConfigError(f"jobs must be >= 1, got {self.jobs}")
        if not self.suites:
            raise SweepConfigError("At least one suite must be selected")
        unknown = [s for s in self.suites if s not in ALL_SUITES]
        if unknown:
            raise SweepConfigError(f"Unknown suites: {', '.join(unknown)} (choose from {', '.join(ALL_SUITES)})")
        # keep suites in canonical order so manifests are comparable
        self.suites = tuple(s for s in ALL_SUITES if s in self.suites)

    @property
    def lorentzian_max_boxes(self) -> int:
        return max(self.max_boxes, LONG_LORENTZIAN_BOXES) if self.long else self.max_boxes


@dataclass(frozen=True)
class Case:
    suite: str
    args: tuple

    @property
    def label(self) -> str:
        return " ".join(str(a) for a in self.args)


@dataclass
class CaseResult:
    suite: str
    label: str
    ok: bool
    witness: str | None = None


@dataclass
class SuiteSummary:
    cases: int = 0
    failures: int = 0
    witnesses: list[dict] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Case generation
# ---------------------------------------------------------------------------


def partitions_up_to(max_boxes: int, max_parts: int) -> Iterator[Partition]:
    for d in range(max_boxes + 1):
        yield from enumerate_partitions(d, max_parts)


def skew_pairs(max_boxes: int, n: int) -> Iterator[tuple[Partition, Partition]]:
    """Every nu inside mu with |mu| <= max_boxes and at most n parts."""
    for mu in partitions_up_to(max_boxes, n):
        for nu in partitions_up_to(mu.size, n):
            if contains(mu, nu):
                yield mu, nu


def generate_cases(config: SweepConfig) -> list[Case]:
    n = config.n
    cases: list[Case] = []
    for suite in config.suites:
        if suite in (Suite.JACOBI_TRUDI, Suite.ENDPOINTS, Suite.SKEW_DUALITY):
            cases.extend(Case(suite, (mu, nu, n)) for mu, nu in skew_pairs(config.max_boxes, n))
        elif suite == Suite.KOSTKA:
            for lam in partitions_up_to(config.max_boxes, n):
                for tau in compositions(lam.size, n, -2, lam.size):
                    cases.append(Case(suite, (lam, Weight(tau))))
        elif suite == Suite.POSITIVITY:
            for mu, nu in skew_pairs(config.max_boxes, n):
                cases.extend(Case(suite, (mu, nu, n, k)) for k in range(max_truncation(n) + 1))
        elif suite == Suite.TELESCOPING:
            for mu, nu in skew_pairs(config.max_boxes, n):
                cases.extend(Case(suite, (mu, nu, n, k)) for k in range(max_truncation(n)))
        elif suite == Suite.IMAGE_POSITIVITY:
            for nu in partitions_up_to(config.max_boxes, n):
                cases.extend(Case(suite, (nu, n, k)) for k in range(max_truncation(n) + 1))
        elif suite == Suite.BIALTERNANT:
            cases.extend(Case(suite, (lam, n)) for lam in partitions_up_to(config.max_boxes, n))
        elif suite == Suite.LORENTZIAN:
            for mu in partitions_up_to(config.lorentzian_max_boxes, n):
                cases.extend(Case(suite, (mu, n, k)) for k in range(max_truncation(n) + 1))
        elif suite == Suite.BGG_RANK2:
            cases.extend(Case(suite, (lam,)) for lam in partitions_up_to(config.max_boxes, 2))
    return cases


# ---------------------------------------------------------------------------
# Checks (each returns None on success, a witness string on failure)
# ---------------------------------------------------------------------------


def check_jacobi_trudi(mu: Partition, nu: Partition, n: int) -> str | None:
    determinant = to_monomial(jt_determinant(mu, nu, n))
    oracle = skew_schur_monomial(SkewShape(mu, nu), n)
    if determinant != oracle:
        return f"det -> {determinant}; SSYT -> {oracle}"
    return None


def check_kostka(lam: Partition, tau: Weight) -> str | None:
    by_weights = kostka(lam, tau)
    by_tableaux = count_ssyt(SkewShape(lam), tau.entries)
    if by_weights != by_tableaux:
        return f"alternating sum {by_weights} != SSYT count {by_tableaux}"
    raw = kostka_alternating(lam, tau)
    if raw != by_weights:
        return f"unshortcut alternating sum {raw} != {by_weights}"
    return None


def check_positivity(mu: Partition, nu: Partition, n: int, k: int) -> str | None:
    expansion = truncation_schur(mu, nu, n, k)
    negative = [(str(lam), c) for lam, c in expansion.items() if c < 0]
    if negative:
        return f"negative Schur coefficients {negative}"
    via_h = h_to_schur(truncation(mu, nu, n, k))
    if via_h != expansion:
        return f"Kostka route {expansion} != h route {via_h}"
    return None


def check_telescoping(mu: Partition, nu: Partition, n: int, k: int) -> str | None:
    lhs = truncation(mu, nu, n, k) + truncation(mu, nu, n, k + 1)
    rhs = layer_character(mu, nu, n, k)
    if lhs != rhs:
        return f"g^{k} + g^{k + 1} = {lhs}; layer {k} = {rhs}"
    return None


def check_endpoints(mu: Partition, nu: Partition, n: int) -> str | None:
    terms = jt_terms(mu, nu, n)
    signed_sum = total([t.sign * h_of_vector(t.hvector, n) for t in terms], Basis.COMPLETE, n)
    if truncation(mu, nu, n, 0) != signed_sum:
        return "g^0 differs from the full signed sum"
    if jt_determinant(mu, nu, n) != signed_sum:
        return "determinant differs from the full signed sum"
    longest = Permutation.longest(n)
    top_term = next(t for t in terms if t.w == longest)
    if truncation(mu, nu, n, max_truncation(n)) != h_of_vector(top_term.hvector, n):
        return f"g^{max_truncation(n)} is not the longest-element term h_{top_term.hvector}"
    if not nu.length and truncation_schur(mu, nu, n, 0) != schur(mu, n):
        return f"g^0 for {mu}/0 is {truncation_schur(mu, nu, n, 0)}, not s_{mu}"
    return None


def check_skew_duality(mu: Partition, nu: Partition, n: int) -> str | None:
    determinant = h_to_schur(jt_determinant(mu, nu, n))
    duality = skew_schur_by_duality(mu, nu, n)
    if determinant != duality:
        return f"det -> {determinant}; <s_mu, s_lam s_nu> -> {duality}"
    return None


def check_image_positivity(nu: Partition, n: int, k: int) -> str | None:
    """V(nu, k) weight multiplicities are >= 0 and telescope to the C_k multiplicities."""
    bound = 4
    for tau_entries in compositions(nu.size, n, -bound, nu.size + bound):
        tau = Weight(tau_entries)
        value = image_weight_mult(nu, k, tau)
        if value < 0:
            return f"tau={tau}: multiplicity {value}"
        if k < max_truncation(n):
            chain = chain_weight_mult(nu, k, tau)
            if value + image_weight_mult(nu, k + 1, tau) != chain:
                return f"tau={tau}: V(nu,{k}) + V(nu,{k + 1}) != C_{k} ({chain})"
    return None


def check_bialternant(lam: Partition, n: int) -> str | None:
    expected = densify(to_monomial(schur(lam, n)))
    quotient = bialternant_schur(lam, n)
    if quotient != expected:
        return f"bialternant {quotient} != SSYT expansion {expected}"
    return None


def check_lorentzian(mu: Partition, n: int, k: int) -> str | None:
    polynomial = normalize(densify(to_monomial(truncation(mu, Partition(), n, k))))
    result = is_lorentzian(polynomial)
    if not result.lorentzian:
        assert result.failed_condition is not None
        return json.dumps(result.failed_condition.to_dict(), sort_keys=True)
    return None


def check_bgg_rank2(lam: Partition) -> str | None:
    """Rank 2: ch L(lam) = ch Delta(lam) - ch Delta(s_1 . lam), weight by weight."""
    lam_weight = Weight.of(lam, 2)
    reflected = dot(Permutation.simple(1, 2), lam_weight)
    for tau_entries in compositions(lam.size, 2, -2, lam.size + 2):
        tau = Weight(tau_entries)
        expected = verma_weight_mult(lam_weight, tau) - verma_weight_mult(reflected, tau)
        if kostka(lam, tau) != expected:
            return f"tau={tau}: K={kostka(lam, tau)}, Verma difference {expected}"
    return None


_CHECKS: dict[str, Callable[..., str | None]] = {
    Suite.JACOBI_TRUDI: check_jacobi_trudi,
    Suite.KOSTKA: check_kostka,
    Suite.POSITIVITY: check_positivity,
    Suite.TELESCOPING: check_telescoping,
    Suite.IMAGE_POSITIVITY: check_image_positivity,
    Suite.BIALTERNANT: check_bialternant,
    Suite.LORENTZIAN: check_lorentzian,
    Suite.ENDPOINTS: check_endpoints,
    Suite.SKEW_DUALITY: check_skew_duality,
    Suite.BGG_RANK2: check_bgg_rank2,
}


def evaluate(case: Case) -> CaseResult:
    try:
        witness = _CHECKS[case.suite](*case.args)
    except Exception as e:
        logger.exception(f"[{case.suite}] {case.label} raised")
        witness = f"{type(e).__name__}: {e}"
    if witness is not None:
        logger.error(f"[{case.suite}] {case.label} failed: {witness}")
        return CaseResult(case.suite, case.label, ok=False, witness=witness)
    logger.debug(f"[{case.suite}] {case.label} ok")
    return CaseResult(case.suite, case.label, ok=True)


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def _init_worker(cache_path: str | None) -> None:
    if cache_path:
        MemoCache(cache_path).load()


def _memo_delta(before: dict, after: dict) -> dict:
    """Memo entries present in after but not in before."""
    return {
        "kostant": {
            n: {v: p for v, p in values.items() if v not in before["kostant"].get(n, {})}
            for n, values in after["kostant"].items()
        },
        "kostka": {key: k for key, k in after["kostka"].items() if key not in before["kostka"]},
    }


def evaluate_chunk(cases: list[Case]) -> tuple[list[CaseResult], dict]:
    """Evaluate cases in a worker; also return the memo entries they added, for the parent cache."""
    before = export_memo()
    results = [evaluate(case) for case in cases]
    return results, _memo_delta(before, export_memo())


def run_verify(config: SweepConfig) -> dict:
    """Run the selected suites and return the manifest (also written to config.output)."""
    started = time.monotonic()
    cache = MemoCache(config.cache) if config.cache else None
    if cache:
        cache.load()

    cases = generate_cases(config)
    logger.info(f"Verifying {len(cases)} cases across {', '.join(config.suites)} with {config.jobs} job(s)")

    if config.jobs == 1:
        results = [evaluate(case) for case in cases]
    else:
        size = max(1, len(cases) // (config.jobs * 8))
        chunks = [cases[i : i + size] for i in range(0, len(cases), size)]
        results = []
        with ProcessPoolExecutor(
            max_workers=config.jobs, initializer=_init_worker, initargs=(config.cache,)
        ) as executor:
            for chunk_results, delta in executor.map(evaluate_chunk, chunks):
                results.extend(chunk_results)
                seed_memo(delta["kostant"], delta["kostka"])

    summaries = {suite: SuiteSummary() for suite in config.suites}
    for result in results:
        summary = summaries[result.suite]
        summary.cases += 1
        if not result.ok:
            summary.failures += 1
            summary.witnesses.append({"case": result.label, "witness": result.witness})

    if cache:
        cache.save()

    manifest = {
        "schema": MANIFEST_SCHEMA,
        "config": {
            "max_boxes": config.max_boxes,
            "n": config.n,
            "suites": list(config.suites),
            "lorentzian_max_boxes": config.lorentzian_max_boxes,
        },
        "suites": {
            suite: {"cases": s.cases, "failures": s.failures, "witnesses": s.witnesses}
            for suite, s in summaries.items()
        },
        "total_cases": len(results),
        "total_failures": sum(s.failures for s in summaries.values()),
        "passed": all(s.failures == 0 for s in summaries.values()),
        "wall_time_seconds": round(time.monotonic() - started, 3),
    }
    for suite, s in summaries.items():
        logger.info(f"{suite}: {s.cases} cases, {s.failures} failures")

    if config.output:
        directory = os.path.dirname(os.path.abspath(config.output))
        os.makedirs(directory, exist_ok=True)
        with open(config.output, "w", encoding="utf-8") as f:
            json.dump(manifest, f, indent=2)
            f.write("\n")
        logger.info(f"Wrote manifest to {config.output}")
    return manifest
