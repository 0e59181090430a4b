"""Focus phrase extraction and answer-type compatibility scoring.

The focus is the question phrase that directly describes the answer.  It is
either derived from the interrogative itself (who / where / when map to
coarse types) or taken as the first run of noun-tagged tokens after the
interrogative part, whose last word is the headword used for type scoring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import GraphQAError
from .intent import ParseTree, find_interrogative
from .kbstore import DATE_CLASS, KnowledgeBase, Term, term_text
from .lexsim import SimilarityLexicon, tokenize, word_similarity

FOAF_PERSON = "http://xmlns.com/foaf/0.1/Person"
DBO_PLACE = "http://dbpedia.org/ontology/Place"
DBO_ORGANISATION = "http://dbpedia.org/ontology/Organisation"

COARSE_PERSON = "Person"
COARSE_ORGANIZATION = "Organization"
COARSE_PLACE = "Place"
COARSE_DATE = "Date"

# "who" keeps both readings; a match on either one counts fully.
WH_COARSE: dict[str, tuple[str, ...]] = {
    "who": (COARSE_PERSON, COARSE_ORGANIZATION),
    "where": (COARSE_PLACE,),
    "when": (COARSE_DATE,),
}

DEFAULT_COARSE_CLASSES: dict[str, tuple[str, ...]] = {
    COARSE_PERSON: (FOAF_PERSON,),
    COARSE_ORGANIZATION: (DBO_ORGANISATION,),
    COARSE_PLACE: (DBO_PLACE,),
    COARSE_DATE: (DATE_CLASS,),
}


@dataclass(frozen=True)
class Focus:
    phrase: str = ""
    headword: str = ""
    coarse_types: tuple[str, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.phrase and not self.coarse_types


def load_coarse_classes(path: str) -> dict[str, tuple[str, ...]]:
    """Read a JSON override of the coarse-type to class-IRI map."""
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise GraphQAError(f"type map {path}: expected a JSON object")
    table = dict(DEFAULT_COARSE_CLASSES)
    for coarse, classes in data.items():
        if coarse not in DEFAULT_COARSE_CLASSES:
            raise GraphQAError(f"type map {path}: unknown coarse type {coarse!r}")
        table[coarse] = tuple(str(c) for c in classes)
    return table


def extract_focus(question: str, tree: ParseTree) -> Focus:
    """Extract the focus from the question and its parse tree.

    who/where/when map straight to coarse answer types.  Other openers
    ("What", "Which", "Give me all", ...) take the first maximal run of
    NN-tagged leaves after the interrogative part as the focus phrase.
    """
    leaves = [l for l in tree.leaves()]
    inter = find_interrogative(leaves)
    if inter is None:
        return Focus()
    _, inter_end, words = inter
    if len(words) == 1 and words[0] in WH_COARSE:
        return Focus(coarse_types=WH_COARSE[words[0]])
    run: list[str] = []
    for leaf in leaves:
        if leaf.start < inter_end:
            continue
        if leaf.label.startswith("NN"):
            run.append(leaf.token)
        elif run:
            break
    if not run:
        return Focus()
    return Focus(phrase=" ".join(run), headword=run[-1])


def _headword_label_score(
    kb: KnowledgeBase, class_iri: str, headword: str, lex: SimilarityLexicon
) -> float:
    best = 0.0
    for label in kb.labels_of(class_iri):
        words = tokenize(label)
        if not words:
            continue
        per_word = [word_similarity(lex, w, headword) for w in words]
        best = max(best, sum(per_word) / len(per_word))
    return best


def type_score(
    kb: KnowledgeBase,
    answers: set[Term] | frozenset[Term],
    f: Focus,
    lex: SimilarityLexicon,
    coarse_classes: dict[str, tuple[str, ...]] | None = None,
) -> float:
    """Mean answer-type compatibility in [0, 1].

    With a coarse type the per-answer score is binary against the canonical
    classes; otherwise the headword is matched against the labels of each
    answer's declared types with the same word-matching scheme used for
    predicate ranking.  An empty focus scores 0.
    """
    if f.is_empty or not answers:
        return 0.0
    table = coarse_classes or DEFAULT_COARSE_CLASSES
    ordered = sorted(answers, key=term_text)
    scores: list[float] = []
    if f.coarse_types:
        wanted: set[str] = set()
        for coarse in f.coarse_types:
            wanted.update(table.get(coarse, ()))
        for answer in ordered:
            scores.append(1.0 if wanted.intersection(kb.types_of(answer)) else 0.0)
    else:
        headword = f.headword
        for answer in ordered:
            best = 0.0
            for cls in kb.types_of(answer):
                best = max(best, _headword_label_score(kb, cls, headword, lex))
            scores.append(best)
    return sum(scores) / len(scores)
