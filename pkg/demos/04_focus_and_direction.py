"""Focus extraction, answer typing, and the edge-direction switch.

Run from the repository root:  python3 demos/04_focus_and_direction.py
"""

import os

from graphqa import (
    Focus,
    PipelineConfig,
    QuestionInput,
    RankerConfig,
    answer,
    load_gazetteer_file,
    load_lexicon_file,
    load_ntriples_file,
    parse_bracketed,
    extract_focus,
    score_question,
    type_score,
)
from graphqa.intent import align_to_question

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")
gazetteer = load_gazetteer_file(os.path.join(FIXTURES, "gazetteer.tsv"))
lexicon = load_lexicon_file(os.path.join(FIXTURES, "lexicon.tsv"))

# The focus is either coarse (derived from the interrogative) or the first
# noun run after the opener.
CASES = [
    ("Who is the mayor of Berlin?",
     "(SBARQ (WHNP (WP Who)) (SQ (VBZ is) (NP (NP (DT the) (NN mayor)) (PP (IN of) (NP (NNP Berlin))))) (. ?))"),
    ("When did Michael Jackson die?",
     "(SBARQ (WHADVP (WRB When)) (SQ (VBD did) (NP (NNP Michael) (NNP Jackson)) (VP (VB die))) (. ?))"),
    ("Which television shows were created by John Cleese?",
     "(SBARQ (WHNP (WDT Which) (NN television) (NNS shows)) (SQ (VBD were) (VP (VBN created) (PP (IN by) (NP (NNP John) (NNP Cleese))))) (. ?))"),
]
for question, tree_text in CASES:
    tree = align_to_question(parse_bracketed(tree_text), question)
    f = extract_focus(question, tree)
    kind = f"coarse={'|'.join(f.coarse_types)}" if f.coarse_types else f"phrase={f.phrase!r}"
    print(f"{question:55} -> {kind}")

# Headword-vs-type-label scoring: "movies" against the film class.
kb = load_ntriples_file(os.path.join(FIXTURES, "golden.nt"))
snatch = "http://dbpedia.org/resource/Snatch_(film)"
f = Focus(phrase="movies", headword="movies")
print(f"\ntype score of the film answer for focus 'movies': "
      f"{type_score(kb, {snatch}, f, lexicon)}")

# Traversal ignores which side of a triple an entity sits on.  For the
# two-hop question below that merges the parents of the queen with her
# children; the optional direction switch removes the reversed bindings.
kb = load_ntriples_file(os.path.join(FIXTURES, "juan_carlos.nt"))
gold = frozenset({
    "http://dbpedia.org/resource/Paul_of_Greece",
    "http://dbpedia.org/resource/Frederica_of_Hanover",
})
q = QuestionInput(
    "demo-4",
    "Who are the parents of the wife of Juan Carlos I?",
    "(SBARQ (WHNP (WP Who)) (SQ (VBP are) (NP (NP (DT the) (NNS parents)) (PP (IN of) (NP (NP (DT the) (NN wife)) (PP (IN of) (NP (NNP Juan) (NNP Carlos) (NNP I))))))) (. ?))",
    gold,
)
print(f"\n{q.question}")
for respect in (False, True):
    cfg = PipelineConfig(ranker=RankerConfig(respect_direction=respect))
    trace = answer(kb, gazetteer, lexicon, cfg, q)
    s = score_question(gold, trace.answers, q.id)
    mode = "direction respected" if respect else "direction ignored "
    print(f"  {mode}: {len(trace.answers)} answers, "
          f"precision={s.precision:.2f} recall={s.recall:.2f}")
