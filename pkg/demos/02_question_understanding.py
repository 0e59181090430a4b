"""From question text to mentions and a topological intent structure.

Run from the repository root:  python3 demos/02_question_understanding.py
"""

import os

from graphqa import detect_mentions, extract_structure, load_gazetteer_file, parse_bracketed
from graphqa.intent import align_to_question

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")
gazetteer = load_gazetteer_file(os.path.join(FIXTURES, "gazetteer.tsv"))

CASES = [
    # one example per pattern, plus a two-hop chain and a triangle
    ("Who produces Orangina?",
     "(SBARQ (WHNP (WP Who)) (SQ (VP (VBZ produces) (NP (NNP Orangina)))) (. ?))"),
    ("Which television shows were created by John Cleese?",
     "(SBARQ (WHNP (WDT Which) (NN television) (NNS shows)) (SQ (VBD were) (VP (VBN created) (PP (IN by) (NP (NNP John) (NNP Cleese))))) (. ?))"),
    ("Who is the mayor of Berlin?",
     "(SBARQ (WHNP (WP Who)) (SQ (VBZ is) (NP (NP (DT the) (NN mayor)) (PP (IN of) (NP (NNP Berlin))))) (. ?))"),
    ("When was Alberta admitted as province?",
     "(SBARQ (WHADVP (WRB When)) (SQ (VBD was) (NP (NNP Alberta)) (VP (VBN admitted) (PP (IN as) (NP (NN province))))) (. ?))"),
    ("Who are the parents of the wife of Juan Carlos I?",
     "(SBARQ (WHNP (WP Who)) (SQ (VBP are) (NP (NP (DT the) (NNS parents)) (PP (IN of) (NP (NP (DT the) (NN wife)) (PP (IN of) (NP (NNP Juan) (NNP Carlos) (NNP I))))))) (. ?))"),
    ("Give me all movies starring Brad Pitt and directed by Guy Ritchie.",
     "(S (VP (VB Give) (NP (PRP me)) (NP (NP (DT all) (NNS movies)) (VP (VP (VBG starring) (NP (NNP Brad) (NNP Pitt))) (CC and) (VP (VBN directed) (PP (IN by) (NP (NNP Guy) (NNP Ritchie))))))) (. .))"),
    # a pattern inside a linked title is skipped, leaving a single edge
    ("Who wrote the book The Pillars of the Earth?",
     "(SBARQ (WHNP (WP Who)) (SQ (VP (VBD wrote) (NP (NP (DT the) (NN book)) (NP (NP (DT The) (NNP Pillars)) (PP (IN of) (NP (DT the) (NNP Earth))))))) (. ?))"),
]

for question, tree_text in CASES:
    print(f"\n{question}")
    mentions = detect_mentions(question, gazetteer)
    for m in mentions:
        print(f"  mention {m.surface!r} -> {m.entity.rsplit('/', 1)[-1]} ({m.confidence})")
    tree = align_to_question(parse_bracketed(tree_text), question)
    structure = extract_structure(tree, mentions)
    for edge in structure.edges:
        src = edge.source.name if edge.source.kind != "seed" else edge.source.name.rsplit("/", 1)[-1]
        dst = edge.target.name if edge.target.kind != "seed" else edge.target.name.rsplit("/", 1)[-1]
        print(f"  edge {src} --[{edge.phrase}]-- {dst}")
    print(f"  hop bound: {structure.k}")
