"""
Tests for the fiberpowers.verify.suite module.
"""
import tempfile
import unittest
from unittest.mock import patch

from fiberpowers.errors import GenerationError
from fiberpowers.verify.checks import CheckID, CheckReport, Status
from fiberpowers.verify.generate import GeneratorConfig
from fiberpowers.verify.suite import (
    SuiteReport,
    characteristic_disagreements,
    count_statuses,
    run_suite,
)

# ========== Constants ==========
TESTING_PACKAGE = "fiberpowers.verify"
TESTING_MODULE = f"{TESTING_PACKAGE}.suite"

CONFIG = GeneratorConfig(
    nvars=2, max_degree=3, max_gens=2, s_max=2, chars=(2, 3), instances=3, structure="squarefree"
)


# ========== Functions ==========
def report(check, index, s, char, status):
    return CheckReport(
        check=check, instance=f"#{index}", s=s, char=char, status=status, index=index
    )


# ========== Tests ==========
class TestAggregation(unittest.TestCase):
    def test_count_statuses(self):
        reports = [
            report(CheckID.C7, 0, 1, 2, Status.PASS),
            report(CheckID.C7, 1, 1, 2, Status.HYPOTHESIS_NOT_MET),
            report(CheckID.C1, 0, 1, 2, Status.PASS),
        ]
        counts = count_statuses(reports)

        self.assertEqual(list(counts), [CheckID.C1, CheckID.C7])
        self.assertEqual(counts[CheckID.C7], {Status.PASS: 1, Status.HYPOTHESIS_NOT_MET: 1})

    def test_characteristic_disagreements(self):
        reports = [
            report(CheckID.C15, 0, 1, 2, Status.PASS),
            report(CheckID.C15, 0, 1, 3, Status.FAIL),
            report(CheckID.C15, 1, 1, 2, Status.PASS),
            report(CheckID.C15, 1, 1, 3, Status.RESOURCE_EXCEEDED),
            # characteristic dependent checks never disagree
            report(CheckID.C2, 0, 1, 2, Status.PASS),
            report(CheckID.C2, 0, 1, 3, Status.FAIL),
        ]
        self.assertEqual(
            characteristic_disagreements(reports), ((CheckID.C15, 0, 1, ("fail", "pass")),)
        )

    def test_verdict(self):
        self.assertTrue(SuiteReport().ok)
        failing = SuiteReport(reports=(report(CheckID.C1, 0, 1, 2, Status.FAIL),))
        self.assertEqual(failing.verdict, "fail")
        self.assertEqual(len(failing.failures), 1)
        self.assertEqual(failing.as_dict()["failures"][0]["check"], "C1")


class TestRunSuite(unittest.TestCase):
    def tearDown(self):
        patch.stopall()

    def test_empty_inputs(self):
        self.assertEqual(run_suite([], CONFIG), SuiteReport())
        self.assertEqual(run_suite(["C1"], GeneratorConfig(instances=0)), SuiteReport())

    def test_runs_every_job(self):
        result = run_suite(["C1", "C20"], CONFIG)

        # C1 runs for s = 1 only; C20 for s = 1, 2
        self.assertEqual(len(result.reports), 3 * 2 * (1 + 2))
        self.assertTrue(result.ok, result.as_dict())
        self.assertEqual(result.reports, tuple(sorted(result.reports, key=lambda r: r.sort_key())))

    def test_shared_cache_gives_the_same_result(self):
        plain = run_suite(["C7"], CONFIG)
        with tempfile.TemporaryDirectory() as cache_dir:
            cached = run_suite(["C7"], CONFIG, cache_dir=cache_dir)
            again = run_suite(["C7"], CONFIG, cache_dir=cache_dir)

        statuses = [r.status for r in plain.reports]
        self.assertEqual([r.status for r in cached.reports], statuses)
        self.assertEqual([r.status for r in again.reports], statuses)

    def test_generation_errors_propagate(self):
        patch(f"{TESTING_MODULE}.generate_instance", side_effect=GenerationError("none")).start()
        with self.assertRaises(GenerationError):
            run_suite(["C1"], CONFIG)
