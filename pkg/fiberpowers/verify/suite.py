"""
.. module:: fiberpowers.verify.suite
    :synopsis: Run the check catalogue over a generated corpus.

Work is split into one job per (instance, characteristic) so the checks of a job
share one :class:`~fiberpowers.verify.checks.CheckContext`. Jobs rebuild their
instance from the configuration and its index, so only small arguments cross
process boundaries. Reports are sorted before aggregation, which makes the
result independent of the worker count and of completion order.
"""
import logging
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from fiberpowers.config.config_files import DEFAULT_BUDGETS
from fiberpowers.struct.cache import BettiCache
from fiberpowers.verify.checks import CheckContext, CheckID, Status, run_check
from fiberpowers.verify.generate import generate_instance

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
# verdicts of these checks must not depend on the characteristic
CHARACTERISTIC_FREE = (CheckID.C15, CheckID.C19, CheckID.C20, CheckID.C22)

SLOWEST_COUNT = 5


# ========== Classes ==========
@dataclass(frozen=True)
class SuiteReport:
    """Aggregate of every check report of a suite run.

    :param reports: all reports, sorted by instance, check, s and characteristic
    :param disagreements: (check, instance index, s, statuses) for the
        characteristic-free checks whose verdicts differ across characteristics
    """

    reports: tuple = ()
    disagreements: tuple = ()
    counts: dict = field(default_factory=dict)

    @property
    def failures(self):
        return tuple(r for r in self.reports if r.failed)

    @property
    def ok(self):
        """The overall verdict: no failure and no characteristic disagreement."""
        return not self.failures and not self.disagreements

    @property
    def verdict(self):
        return "pass" if self.ok else "fail"

    def slowest(self, count=SLOWEST_COUNT):
        return tuple(sorted(self.reports, key=lambda r: -r.wall_time)[:count])

    def as_dict(self):
        return {
            "verdict": self.verdict,
            "counts": {
                str(check): {str(status): n for status, n in statuses.items()}
                for check, statuses in self.counts.items()
            },
            "failures": [r.as_dict() for r in self.failures],
            "disagreements": [
                {"check": str(check), "index": index, "s": s, "statuses": list(statuses)}
                for check, index, s, statuses in self.disagreements
            ],
            "slowest": [r.as_dict() for r in self.slowest()],
        }


# ========== Functions ==========
def _s_values(check, s_max):
    return range(1, s_max + 1) if check.uses_s else range(1, 2)


def _run_job(job):
    """Run every requested check for one instance in one characteristic."""
    config, index, p, ids, budgets, cache_dir = job
    inst = generate_instance(config, index)
    cache = BettiCache(cache_dir) if cache_dir is not None else None
    context = CheckContext(inst, p, budgets=budgets, cache=cache)

    return [
        run_check(check, inst, s, p, context=context, index=index)
        for check in ids
        for s in _s_values(check, config.s_max)
    ]


def count_statuses(reports):
    """Per-check counts of each status.

    :rtype: dict
    """
    counts = defaultdict(Counter)
    for report in reports:
        counts[report.check][report.status] += 1
    return {
        check: {status: counts[check][status] for status in Status if counts[check][status]}
        for check in sorted(counts, key=lambda c: c.number)
    }


def characteristic_disagreements(reports):
    """Characteristic-free checks whose pass/fail verdict depends on p.

    :rtype: tuple
    """
    verdicts = defaultdict(set)
    for report in reports:
        if report.check in CHARACTERISTIC_FREE and report.status in (Status.PASS, Status.FAIL):
            verdicts[(report.check, report.index, report.s)].add(report.status)

    return tuple(
        (check, index, s, tuple(sorted(str(status) for status in statuses)))
        for (check, index, s), statuses in sorted(
            verdicts.items(), key=lambda item: (item[0][1], item[0][0].number, item[0][2])
        )
        if len(statuses) > 1
    )


def run_suite(ids, config, *, workers=1, budgets=DEFAULT_BUDGETS, cache_dir=None):
    """Run a set of checks over the corpus described by config.

    :param ids: the checks to run; an empty set gives an empty report
    :type ids: iterable of CheckID
    :param config: the corpus
    :type config: GeneratorConfig
    :param workers: number of worker processes (default: 1, no pool)
    :type workers: int
    :param budgets: resource limits for the kernels
    :type budgets: Budgets
    :param cache_dir: directory of a shared Betti cache (default: no cache)
    :type cache_dir: str or path-like object
    :rtype: SuiteReport
    :raises GenerationError: if an instance cannot be generated
    """
    ids = tuple(sorted(set(CheckID(i) for i in ids), key=lambda c: c.number))
    if not ids or not config.instances:
        return SuiteReport()

    jobs = [
        (config, index, p, ids, budgets, cache_dir)
        for index in range(config.instances)
        for p in config.chars
    ]
    syslog.info(
        "Running %d checks on %d instances in %d characteristics",
        len(ids),
        config.instances,
        len(config.chars),
    )

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_job, jobs))
    else:
        batches = [_run_job(job) for job in jobs]

    reports = tuple(sorted((r for batch in batches for r in batch), key=lambda r: r.sort_key()))
    report = SuiteReport(
        reports=reports,
        disagreements=characteristic_disagreements(reports),
        counts=count_statuses(reports),
    )

    for check, statuses in report.counts.items():
        syslog.info(
            "%s: %s", check, ", ".join(f"{n} {status}" for status, n in statuses.items())
        )
    syslog.info("Suite verdict: %s", report.verdict)
    return report
