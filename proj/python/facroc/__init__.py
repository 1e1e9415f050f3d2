"""Fairness measures for clusterings and (fair) clustering models.

Thin Python layer over the compiled ``_facroc`` core: pairwise ROC / AUCC
analysis, the FACROC between-group curve area, balance, proportionality
audits, and the five clustering models behind the ``facroc`` CLI.
"""

import json as _json

from _facroc import (  # noqa: F401
    DataError,
    InfeasibleFairnessError,
    UsageError,
    aucc,
    balance,
    facroc,
    model_names,
    run_oracle_suite,
    select_k,
    write_standin_dataset,
)
from _facroc import evaluate_json as _evaluate_json

__all__ = [
    "DataError",
    "InfeasibleFairnessError",
    "UsageError",
    "aucc",
    "balance",
    "evaluate",
    "facroc",
    "model_names",
    "run_oracle_suite",
    "select_k",
    "write_standin_dataset",
]


def evaluate(dataset, model, k="2", seed=42, balance_target=0.4):
    """Evaluate one model on a dataset; returns the report as a dict.

    ``dataset`` is a packaged schema name (e.g. ``"german"``) or a path to a
    schema JSON file. ``k`` is an integer-like string or ``"auto"``.
    """
    report = _evaluate_json(dataset, model, str(k), seed, balance_target)
    return _json.loads(report)
