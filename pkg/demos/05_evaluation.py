"""Batch evaluation over a gold dataset, as the eval subcommand does it.

Run from the repository root:  python3 demos/05_evaluation.py
"""

import os

from graphqa import (
    PipelineConfig,
    load_dataset,
    load_gazetteer_file,
    load_lexicon_file,
    load_ntriples_file,
    run_dataset,
)
from graphqa.evalkit import format_report

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")

kb = load_ntriples_file(os.path.join(FIXTURES, "golden.nt"))
gazetteer = load_gazetteer_file(os.path.join(FIXTURES, "gazetteer.tsv"))
lexicon = load_lexicon_file(os.path.join(FIXTURES, "lexicon.tsv"))
questions = load_dataset(os.path.join(FIXTURES, "golden.jsonl"))

report = run_dataset(kb, gazetteer, lexicon, PipelineConfig(), questions)
print(format_report(report))

# Macro averages count every question, so projecting a subset onto a larger
# set is just a ratio; useful when only part of a benchmark is in scope.
projected = report.projected(10)
print(
    "\nprojected onto a 10-question set: "
    f"precision={projected[0]:.4f} recall={projected[1]:.4f} f1={projected[2]:.4f}"
)
