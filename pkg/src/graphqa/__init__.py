"""Graph-traversal question answering over RDF knowledge bases.

The engine links question mentions to entities, extracts a small topological
intent structure from the constituent tree, walks a bounded subgraph around
the seed entities, and jointly ranks candidate predicate paths with an
answer-type constraint derived from the question focus.
"""

from .entitylink import Gazetteer, MentionLink, detect_mentions, load_gazetteer_file
from .errors import GraphQAError
from .evalkit import EvalReport, QuestionScore, load_dataset, run_dataset, score_question
from .focus import Focus, extract_focus, type_score
from .intent import IntentStructure, ParseTree, extract_structure, parse_bracketed
from .kbstore import (
    KnowledgeBase,
    Literal,
    Triple,
    load_ntriples,
    load_ntriples_file,
)
from .lexsim import SimilarityLexicon, load_lexicon_file, tokenize, word_similarity
from .pipeline import AnswerTrace, PipelineConfig, QuestionInput, answer
from .traversal import (
    CandidatePath,
    RankerConfig,
    Subgraph,
    build_subgraph,
    enumerate_and_rank,
    predicate_score,
)

__version__ = "0.1.0"

__all__ = [
    "AnswerTrace",
    "CandidatePath",
    "EvalReport",
    "Focus",
    "Gazetteer",
    "GraphQAError",
    "IntentStructure",
    "KnowledgeBase",
    "Literal",
    "MentionLink",
    "ParseTree",
    "PipelineConfig",
    "QuestionInput",
    "QuestionScore",
    "RankerConfig",
    "SimilarityLexicon",
    "Subgraph",
    "Triple",
    "answer",
    "build_subgraph",
    "detect_mentions",
    "enumerate_and_rank",
    "extract_focus",
    "extract_structure",
    "load_dataset",
    "load_gazetteer_file",
    "load_lexicon_file",
    "load_ntriples",
    "load_ntriples_file",
    "parse_bracketed",
    "predicate_score",
    "run_dataset",
    "score_question",
    "tokenize",
    "type_score",
    "word_similarity",
]
