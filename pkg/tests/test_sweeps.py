"""Tests for jtcalc/sweeps.py.

Sweeps are run at tiny sizes; the process pool is swapped for a thread pool
so the parallel path runs in-process.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from unittest.mock import patch

import pytest

import sweeps
from combinatorics import Partition
from config import reset_config
from memo_cache import CACHE_VERSION
from sweeps import (
    ALL_SUITES,
    LONG_LORENTZIAN_BOXES,
    MANIFEST_SCHEMA,
    Case,
    Suite,
    SweepConfig,
    SweepConfigError,
    check_bgg_rank2,
    check_bialternant,
    check_endpoints,
    check_image_positivity,
    check_jacobi_trudi,
    check_kostka,
    check_lorentzian,
    check_positivity,
    check_skew_duality,
    check_telescoping,
    evaluate,
    evaluate_chunk,
    generate_cases,
    run_verify,
    skew_pairs,
)
from weights import Weight, clear_memo, export_memo, kostka, seed_memo

EMPTY = Partition()


@pytest.fixture(autouse=True)
def _set_env(monkeypatch):
    for name in ("JT_CACHE_PATH", "JT_JOBS", "JT_MAX_PERMUTATION_DEGREE", "JT_BIALTERNANT_MAX_VARS"):
        monkeypatch.delenv(name, raising=False)
    reset_config()
    yield
    reset_config()


def P(*parts):
    return Partition(parts)


class _FreshWorkerExecutor:
    """Runs every task in-process against an empty memo, like a newly started worker."""

    def __init__(self, max_workers=None, initializer=None, initargs=()):
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    def map(self, fn, iterable):
        results = []
        for item in iterable:
            parent = export_memo()
            clear_memo()
            results.append(fn(item))
            clear_memo()
            seed_memo(parent["kostant"], parent["kostka"])
        return iter(results)


# ---------------------------------------------------------------------------
# SweepConfig
# ---------------------------------------------------------------------------


class TestSweepConfig:
    def test_defaults_select_every_suite(self):
        assert SweepConfig(max_boxes=3, n=2).suites == ALL_SUITES

    def test_suites_are_put_in_canonical_order(self):
        config = SweepConfig(max_boxes=3, n=2, suites=(Suite.LORENTZIAN, Suite.KOSTKA))
        assert config.suites == (Suite.KOSTKA, Suite.LORENTZIAN)

    @pytest.mark.parametrize(
        ("kwargs", "message"),
        [
            ({"max_boxes": -1, "n": 2}, "max_boxes"),
            ({"max_boxes": 2, "n": 0}, "n must be"),
            ({"max_boxes": 2, "n": 2, "jobs": 0}, "jobs"),
            ({"max_boxes": 2, "n": 2, "suites": ()}, "At least one"),
            ({"max_boxes": 2, "n": 2, "suites": ("kostka", "schubert")}, "schubert"),
        ],
    )
    def test_validation(self, kwargs, message):
        with pytest.raises(SweepConfigError, match=message):
            SweepConfig(**kwargs)

    def test_long_mode_extends_lorentzian_only(self):
        config = SweepConfig(max_boxes=4, n=3, long=True)
        assert config.lorentzian_max_boxes == LONG_LORENTZIAN_BOXES
        assert config.max_boxes == 4
        assert SweepConfig(max_boxes=4, n=3).lorentzian_max_boxes == 4


# ---------------------------------------------------------------------------
# Case generation
# ---------------------------------------------------------------------------


class TestCaseGeneration:
    def test_skew_pairs(self):
        pairs = list(skew_pairs(2, 2))
        assert len(pairs) == 9
        assert pairs[0] == (EMPTY, EMPTY)
        assert (P(1, 1), P(1)) in pairs
        assert (P(2), P(1, 1)) not in pairs

    def test_cases_per_suite(self):
        config = SweepConfig(max_boxes=2, n=2, suites=(Suite.JACOBI_TRUDI, Suite.POSITIVITY, Suite.TELESCOPING))
        cases = generate_cases(config)
        counts = {suite: sum(1 for c in cases if c.suite == suite) for suite in config.suites}
        assert counts == {Suite.JACOBI_TRUDI: 9, Suite.POSITIVITY: 18, Suite.TELESCOPING: 9}

    def test_bgg_rank2_ignores_n(self):
        cases = generate_cases(SweepConfig(max_boxes=2, n=3, suites=(Suite.BGG_RANK2,)))
        assert [c.args for c in cases] == [(EMPTY,), (P(1),), (P(2),), (P(1, 1),)]

    def test_case_label(self):
        assert Case(Suite.POSITIVITY, (P(2, 1), P(1), 3, 0)).label == "2,1 1 3 0"


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------


class TestChecks:
    def test_passing_checks_return_none(self):
        assert check_jacobi_trudi(P(3, 1), P(1), 3) is None
        assert check_kostka(P(2, 1), Weight((1, 1, 1))) is None
        assert check_kostka(P(2, 1), Weight((3, 1, -1))) is None
        assert check_positivity(P(3, 1), P(1), 3, 1) is None
        assert check_telescoping(P(3, 1), P(1), 3, 2) is None
        assert check_endpoints(P(2, 1), EMPTY, 3) is None
        assert check_skew_duality(P(3, 2), P(1), 3) is None
        assert check_image_positivity(P(2), 3, 1) is None
        assert check_bialternant(P(2, 1), 3) is None
        assert check_lorentzian(P(2, 1), 3, 1) is None
        assert check_bgg_rank2(P(3, 1)) is None

    def test_lorentzian_witness_is_json(self):
        with patch("sweeps.normalize", side_effect=lambda f: f.scale(-1)):
            witness = check_lorentzian(P(2), 2, 0)
        assert json.loads(witness)["kind"] == "negative_coefficient"


class TestEvaluate:
    def test_ok(self):
        result = evaluate(Case(Suite.KOSTKA, (P(2, 1), Weight((1, 1, 1)))))
        assert result.ok
        assert result.witness is None

    def test_exception_becomes_failure(self):
        result = evaluate(Case(Suite.KOSTKA, (P(1, 1, 1), Weight((2, 1)))))
        assert not result.ok
        assert result.witness.startswith("WeightError:")

    def test_witness_is_recorded(self):
        with patch.dict(sweeps._CHECKS, {Suite.KOSTKA: lambda *args: "boom"}):
            result = evaluate(Case(Suite.KOSTKA, (P(1), Weight((1,)))))
        assert (result.ok, result.witness, result.label) == (False, "boom", "1 1")


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


class TestRunVerify:
    def test_manifest(self, tmp_path):
        output = tmp_path / "out" / "manifest.json"
        config = SweepConfig(max_boxes=2, n=2, suites=(Suite.JACOBI_TRUDI, Suite.KOSTKA), output=str(output))
        manifest = run_verify(config)

        assert manifest["schema"] == MANIFEST_SCHEMA
        assert manifest["passed"] is True
        assert manifest["total_failures"] == 0
        assert manifest["suites"][Suite.JACOBI_TRUDI] == {"cases": 9, "failures": 0, "witnesses": []}
        assert manifest["total_cases"] == len(generate_cases(config))
        assert manifest["config"] == {
            "max_boxes": 2,
            "n": 2,
            "suites": [Suite.JACOBI_TRUDI, Suite.KOSTKA],
            "lorentzian_max_boxes": 2,
        }
        assert json.loads(output.read_text(encoding="utf-8"))["total_cases"] == manifest["total_cases"]

    def test_failures_are_collected(self):
        with patch.dict(sweeps._CHECKS, {Suite.BGG_RANK2: lambda lam: "bad" if lam.size == 2 else None}):
            manifest = run_verify(SweepConfig(max_boxes=2, n=2, suites=(Suite.BGG_RANK2,)))
        assert manifest["passed"] is False
        summary = manifest["suites"][Suite.BGG_RANK2]
        assert summary["failures"] == 2
        assert summary["witnesses"] == [{"case": "2", "witness": "bad"}, {"case": "1,1", "witness": "bad"}]

    def test_parallel_matches_sequential(self):
        suites = (Suite.TELESCOPING, Suite.ENDPOINTS, Suite.SKEW_DUALITY)
        sequential = run_verify(SweepConfig(max_boxes=3, n=2, suites=suites))
        with patch("sweeps.ProcessPoolExecutor", ThreadPoolExecutor):
            parallel = run_verify(SweepConfig(max_boxes=3, n=2, suites=suites, jobs=3))
        for manifest in (sequential, parallel):
            manifest.pop("wall_time_seconds")
        assert parallel == sequential
        assert parallel["passed"] is True

    def test_cache_is_saved(self, tmp_path):
        cache = tmp_path / "memo.json"
        clear_memo()
        run_verify(SweepConfig(max_boxes=2, n=2, suites=(Suite.KOSTKA,), cache=str(cache)))
        assert json.loads(cache.read_text(encoding="utf-8"))["version"] == CACHE_VERSION

    @pytest.mark.parametrize("suite", ALL_SUITES)
    def test_every_suite_passes_at_small_size(self, suite):
        assert run_verify(SweepConfig(max_boxes=3, n=2, suites=(suite,)))["passed"] is True

    def test_parallel_run_fills_the_cache_like_a_sequential_one(self, tmp_path):
        config = {"max_boxes": 3, "n": 3, "suites": (Suite.KOSTKA,)}
        sequential_cache = tmp_path / "sequential.json"
        parallel_cache = tmp_path / "parallel.json"

        clear_memo()
        run_verify(SweepConfig(**config, cache=str(sequential_cache)))
        clear_memo()
        with patch("sweeps.ProcessPoolExecutor", _FreshWorkerExecutor):
            run_verify(SweepConfig(**config, cache=str(parallel_cache), jobs=2))
        clear_memo()

        sequential = json.loads(sequential_cache.read_text(encoding="utf-8"))
        parallel = json.loads(parallel_cache.read_text(encoding="utf-8"))
        assert sequential["kostka"]
        assert parallel == sequential


class TestEvaluateChunk:
    def test_returns_only_new_memo_entries(self):
        clear_memo()
        kostka(P(1), Weight((1, 0)))
        cases = [Case(Suite.KOSTKA, (P(2, 1), Weight((1, 1, 1))))]
        results, delta = evaluate_chunk(cases)

        assert [r.ok for r in results] == [True]
        assert ((2, 1), (1, 1, 1)) in delta["kostka"]
        assert ((1,), (1, 0)) not in delta["kostka"]
        assert delta["kostant"][3]
        clear_memo()
