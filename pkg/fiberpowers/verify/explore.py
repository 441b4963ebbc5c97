"""
.. module:: fiberpowers.verify.explore
    :synopsis: Collect evidence on open regularity questions.

The explorer never passes or fails anything. It appends one record per usable
instance to an :class:`~fiberpowers.struct.explorelog.ExplorationLog` and
summarizes the smallest slack it saw; a negative slack or an unsettled window is
reported as a finding.

Questions:

* ``reg-lb``: is reg I^(s) ≥ 2s for unmixed I ⊆ m^2?
* ``asym-eq``: is reg F^(s) = max(reg I^(s), reg J^(s)) for unmixed I and J?
  Records also carry max_i(reg I^(i) + s - i) next to reg I^(s), and the
  depths of T/F^(s).
* ``asym-ord``: is reg F^s = max(reg I^s, reg J^s) once s is large?
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from fiberpowers.config.config_files import DEFAULT_BUDGETS
from fiberpowers.errors import ExponentOverflowError, ResourceError
from fiberpowers.struct.cache import BettiCache
from fiberpowers.verify.checks import CheckContext
from fiberpowers.verify.generate import generate_instance

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
QUESTIONS = ("reg-lb", "asym-eq", "asym-ord")

UNMIXED_STRUCTURES = ("squarefree", "unmixed", "primary")


# ========== Classes ==========
@dataclass(frozen=True)
class ExplorationSummary:
    """What one exploration run found.

    :param question: the question explored
    :param records: the records appended to the log, in instance order
    :param skipped: instances that did not meet the question's preconditions
    :param min_slack: smallest slack over all records, ``None`` without records
    :param findings: records with a negative slack or an unsettled window
    """

    question: str
    records: tuple
    skipped: int
    min_slack: object
    findings: tuple

    def as_dict(self):
        return {
            "question": self.question,
            "records": len(self.records),
            "skipped": self.skipped,
            "min_slack": self.min_slack,
            "findings": list(self.findings),
        }


# ========== Functions ==========
def corpus_config(question, config):
    """The corpus a question draws from.

    Questions about unmixed ideals switch to the ``unmixed`` structure unless the
    configured structure already guarantees it.
    """
    if question in ("reg-lb", "asym-eq") and config.structure not in UNMIXED_STRUCTURES:
        return config.with_structure("unmixed")
    return config


def _usable(ctx, question):
    inst = ctx.inst
    if question == "reg-lb":
        return ctx.unmixed(inst.I) and inst.i_in_m2
    if question == "asym-eq":
        return inst.in_squares and ctx.unmixed(inst.I) and ctx.unmixed(inst.J)
    return inst.in_squares and not inst.I.is_zero and not inst.J.is_zero


def _settled(slacks):
    """Slack zero over the last two values of s (or the only one)."""
    return all(slack == 0 for slack in slacks[-2:])


def reg_lower_bound_record(ctx, s_max):
    """reg I^(s) and its slack over 2s, for s = 1..s_max."""
    ideal = ctx.inst.I
    regs = [ctx.reg(ctx.symbolic(ideal, s)) for s in range(1, s_max + 1)]
    slacks = [reg - 2 * s for s, reg in enumerate(regs, start=1)]
    return {
        "question": "reg-lb",
        "variables": list(ideal.ring.variables),
        "ideal": str(ideal),
        "char": ctx.char.p,
        "s": list(range(1, s_max + 1)),
        "reg": regs,
        "slack": slacks,
        "min_slack": min(slacks),
    }


def asymptotic_symbolic_record(ctx, s_max):
    """reg F^(s) against max(reg I^(s), reg J^(s)), with the remark conjecture data."""
    inst = ctx.inst
    s_values = range(1, s_max + 1)
    reg_i = [ctx.reg(ctx.symbolic(inst.I, s)) for s in s_values]
    reg_j = [ctx.reg(ctx.symbolic(inst.J, s)) for s in s_values]
    reg_f = [ctx.reg(ctx.symbolic(inst.F, s)) for s in s_values]
    depth_f = [ctx.depth(ctx.symbolic(inst.F, s)) for s in s_values]
    slacks = [f - max(i, j) for f, i, j in zip(reg_f, reg_i, reg_j)]

    remark = [max(reg_i[i - 1] + s - i for i in range(1, s + 1)) for s in s_values]
    return {
        "question": "asym-eq",
        "instance": inst.as_dict(),
        "I": str(inst.I),
        "J": str(inst.J),
        "char": ctx.char.p,
        "s": list(s_values),
        "reg_F": reg_f,
        "reg_I": reg_i,
        "reg_J": reg_j,
        "slack": slacks,
        "min_slack": min(slacks),
        "consistent": _settled(slacks),
        "remark_max": remark,
        "remark_holds": [a == b for a, b in zip(remark, reg_i)],
        "depth_F": depth_f,
        "depth_stable": len(depth_f) < 2 or depth_f[-1] == depth_f[-2],
    }


def asymptotic_ordinary_record(ctx, s_max):
    """reg F^s against max(reg I^s, reg J^s)."""
    inst = ctx.inst
    s_values = range(1, s_max + 1)
    reg_i = [ctx.reg(ctx.power(inst.I, s)) for s in s_values]
    reg_j = [ctx.reg(ctx.power(inst.J, s)) for s in s_values]
    reg_f = [ctx.reg(ctx.power(inst.F, s)) for s in s_values]
    slacks = [f - max(i, j) for f, i, j in zip(reg_f, reg_i, reg_j)]
    return {
        "question": "asym-ord",
        "instance": inst.as_dict(),
        "I": str(inst.I),
        "J": str(inst.J),
        "char": ctx.char.p,
        "s": list(s_values),
        "reg_F": reg_f,
        "reg_I": reg_i,
        "reg_J": reg_j,
        "slack": slacks,
        "min_slack": min(slacks),
        "consistent": _settled(slacks),
    }


RECORDERS = {
    "reg-lb": reg_lower_bound_record,
    "asym-eq": asymptotic_symbolic_record,
    "asym-ord": asymptotic_ordinary_record,
}


def _explore_one(job):
    """The record of one instance, or ``None`` if it cannot be used."""
    question, config, index, p, budgets, cache_dir = job
    inst = generate_instance(config, index)
    cache = BettiCache(cache_dir) if cache_dir is not None else None
    ctx = CheckContext(inst, p, budgets=budgets, cache=cache)

    try:
        if not _usable(ctx, question):
            return None
        record = RECORDERS[question](ctx, config.s_max)
    except (ResourceError, ExponentOverflowError) as e:
        syslog.warning("Skipping %s: %s", inst, e)
        return None

    record["index"] = index
    return record


def _is_finding(record):
    if record["question"] == "reg-lb":
        return record["min_slack"] < 0
    return not record["consistent"]


def explore_question(
    question, config, budget, log, p=None, *, workers=1, budgets=DEFAULT_BUDGETS, cache_dir=None
):
    """Explore a question over ``budget`` instances and append the records to log.

    :param question: one of ``QUESTIONS``
    :type question: str
    :param config: the corpus configuration
    :type config: GeneratorConfig
    :param budget: number of instances drawn; 0 leaves the log untouched
    :type budget: int
    :param log: where records are appended
    :type log: ExplorationLog
    :param p: characteristic (default: the first configured one)
    :type p: int
    :param workers: worker processes computing records; the log has a single writer
    :type workers: int
    :rtype: ExplorationSummary
    :raises ValueError: on an unknown question or a negative budget
    """
    if question not in QUESTIONS:
        raise ValueError(f"unknown question '{question}', expected one of {QUESTIONS}")
    if budget < 0:
        raise ValueError("the exploration budget must not be negative")

    corpus = corpus_config(question, config)
    p = corpus.chars[0] if p is None else p
    jobs = [(question, corpus, index, p, budgets, cache_dir) for index in range(budget)]

    if workers > 1 and jobs:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_explore_one, jobs))
    else:
        results = [_explore_one(job) for job in jobs]

    records = tuple(r for r in results if r is not None)
    log.extend(records)

    findings = tuple(r["index"] for r in records if _is_finding(r))
    min_slack = min((r["min_slack"] for r in records), default=None)
    syslog.info(
        "%s: %d records, %d skipped, minimum slack %s, %d findings",
        question,
        len(records),
        len(results) - len(records),
        min_slack,
        len(findings),
    )
    return ExplorationSummary(question, records, len(results) - len(records), min_slack, findings)
