"""Subgraph traversal and joint path ranking, with the full score table.

Run from the repository root:  python3 demos/03_path_ranking.py
"""

import os

from graphqa import (
    PipelineConfig,
    QuestionInput,
    answer,
    load_gazetteer_file,
    load_lexicon_file,
    load_ntriples_file,
)
from graphqa.kbstore import load_prefixes
from graphqa.pipeline import format_paths

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")
gazetteer = load_gazetteer_file(os.path.join(FIXTURES, "gazetteer.tsv"))
lexicon = load_lexicon_file(os.path.join(FIXTURES, "lexicon.tsv"))
prefixes = load_prefixes(os.path.join(FIXTURES, "prefixes.json"))
cfg = PipelineConfig()

# Single-hop case: one seed entity, predicates around it compete on the
# similarity of their labels to the phrase "mayor of"; the answer-type
# constraint (who -> person/organization) then separates the field.
kb = load_ntriples_file(os.path.join(FIXTURES, "berlin.nt"))
q = QuestionInput(
    "demo-1",
    "Who is the mayor of Berlin?",
    "(SBARQ (WHNP (WP Who)) (SQ (VBZ is) (NP (NP (DT the) (NN mayor)) (PP (IN of) (NP (NNP Berlin))))) (. ?))",
)
trace = answer(kb, gazetteer, lexicon, cfg, q)
print(q.question)
for line in format_paths(trace.paths, prefixes):
    print(" ", line)

# Triangle case: two seeds must meet in a common neighbor; three candidate
# paths survive and the (starring, director) pair wins, helped by the focus
# "movies" matching the film class of the answer.
kb = load_ntriples_file(os.path.join(FIXTURES, "pitt_ritchie.nt"))
q = QuestionInput(
    "demo-2",
    "Give me all movies starring Brad Pitt and directed by Guy Ritchie.",
    "(S (VP (VB Give) (NP (PRP me)) (NP (NP (DT all) (NNS movies)) (VP (VP (VBG starring) (NP (NNP Brad) (NNP Pitt))) (CC and) (VP (VBN directed) (PP (IN by) (NP (NNP Guy) (NNP Ritchie))))))) (. .))",
)
trace = answer(kb, gazetteer, lexicon, cfg, q)
print(f"\n{q.question}")
for line in format_paths(trace.paths, prefixes):
    print(" ", line)
print(f"  final answer: {sorted(trace.answers)}")
