"""K-hop subgraph construction and joint candidate-path ranking.

Traversal roots a breadth-first neighborhood at the seed entities (merged
across seeds, literals are leaves), then binds the intent structure's edges
to predicates inside that neighborhood.  Each step keeps the best `beam`
predicates by label-vs-phrase similarity, bindings with any step below the
similarity threshold are dropped, and surviving bindings that share the same
predicates and intermediate nodes are grouped into one candidate whose
answer set is the whole group.  A candidate's total is the mean of its step
scores plus the answer-type score.

Traversal is deliberately blind to edge direction, which reproduces a known
failure mode (a reversed role binds just as well); `respect_direction`
restricts binding to edges leaving the frontier node, which repairs the
canonical two-hop case but is not a general role disambiguator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import GraphQAError
from .focus import Focus, type_score
from .intent import ANSWER, IntentStructure, StructEdge
from .kbstore import Direction, KnowledgeBase, Literal, Term, term_text
from .lexsim import SimilarityLexicon, tokenize, word_similarity

logger = logging.getLogger(__name__)

DEFAULT_TAU = 0.3
DEFAULT_BEAM = 5
DEFAULT_MAX_K = 2


class UnknownSeedError(GraphQAError):
    def __init__(self, iri: str):
        self.iri = iri
        super().__init__(f"seed entity not present in the knowledge base: {iri}")


class NoPathError(GraphQAError):
    """No structure-conforming binding survived filtering."""


@dataclass(frozen=True)
class RankerConfig:
    tau: float = DEFAULT_TAU
    beam: int = DEFAULT_BEAM
    max_k: int = DEFAULT_MAX_K
    respect_direction: bool = False
    exclude_predicates: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must be within [0, 1], got {self.tau}")
        if self.beam < 1:
            raise ValueError(f"beam must be >= 1, got {self.beam}")
        if self.max_k < 1:
            raise ValueError(f"max_k must be >= 1, got {self.max_k}")


@dataclass
class Subgraph:
    """Neighborhood of the seeds: node layers plus restricted adjacency."""

    layers: dict[Term, int]
    adjacency: dict[Term, tuple[tuple[str, Term, Direction], ...]]
    k: int
    seeds: tuple[str, ...]

    @property
    def nodes(self) -> set[Term]:
        return set(self.layers)


def build_subgraph(
    kb: KnowledgeBase,
    seeds: list[str],
    k: int,
    exclude_predicates: frozenset[str] = frozenset(),
) -> Subgraph:
    """Breadth-first undirected expansion to depth ``k`` from every seed.

    Layers record the minimum distance to the nearest seed; neighborhoods of
    multiple seeds are merged into one subgraph.  Literal nodes are included
    but never expanded.  A seed absent from the store raises UnknownSeedError.
    """
    if not seeds:
        raise ValueError("at least one seed is required")
    layers: dict[Term, int] = {}
    for seed in seeds:
        if seed not in kb:
            raise UnknownSeedError(seed)
        layers[seed] = 0
    frontier: list[Term] = list(dict.fromkeys(seeds))
    for depth in range(1, k + 1):
        nxt: list[Term] = []
        for node in frontier:
            if isinstance(node, Literal):
                continue
            for pred, other, _direction in kb.neighbors(node):
                if pred in exclude_predicates:
                    continue
                if other not in layers:
                    layers[other] = depth
                    nxt.append(other)
        frontier = nxt

    adjacency: dict[Term, tuple[tuple[str, Term, Direction], ...]] = {}
    for node in layers:
        edges = tuple(
            (pred, other, direction)
            for pred, other, direction in kb.neighbors(node)
            if other in layers and pred not in exclude_predicates
        )
        adjacency[node] = edges
    return Subgraph(layers, adjacency, k, tuple(dict.fromkeys(seeds)))


def predicate_score(
    kb: KnowledgeBase,
    predicate: str,
    phrase: str,
    lex: SimilarityLexicon,
    extra_phrase: str | None = None,
) -> float:
    """Label-vs-phrase similarity of one predicate, in [0, 1].

    Every word of a predicate label takes its best similarity against the
    phrase words; a label scores the mean of its word scores; the predicate
    scores its best label.  When an extra phrase is supplied (the focus, for
    the step next to the answer) the better of the two phrase scores wins.
    """
    score = _phrase_score(kb, predicate, phrase, lex, warn=True)
    if extra_phrase:
        score = max(score, _phrase_score(kb, predicate, extra_phrase, lex, warn=False))
    return score


def _phrase_score(
    kb: KnowledgeBase, predicate: str, phrase: str, lex: SimilarityLexicon, warn: bool
) -> float:
    phrase_words = tokenize(phrase)
    if not phrase_words:
        if warn:
            logger.warning("phrase %r has no content words; predicate %s scores 0", phrase, predicate)
        return 0.0
    best = 0.0
    for label in kb.labels_of(predicate):
        label_words = tokenize(label)
        if not label_words:
            continue
        word_scores = [
            max(word_similarity(lex, w, tw) for tw in phrase_words) for w in label_words
        ]
        best = max(best, sum(word_scores) / len(word_scores))
    return best


@dataclass(frozen=True)
class PathStep:
    edge_index: int
    phrase: str
    predicate: str
    direction: str  # "out", "in" or "both"
    score: float


@dataclass(frozen=True)
class CandidatePath:
    steps: tuple[PathStep, ...]
    var_bindings: tuple[tuple[str, Term], ...]
    answers: frozenset[Term]
    predicate_mean: float
    type_score: float
    total: float


def _path_sort_key(path: CandidatePath):
    return (
        -path.total,
        tuple(step.predicate for step in path.steps),
        tuple(sorted(term_text(a) for a in path.answers)),
        tuple((name, term_text(node)) for name, node in path.var_bindings),
    )


def _direction_label(directions: set[Direction]) -> str:
    if len(directions) > 1:
        return "both"
    return next(iter(directions)).value


class _Ranker:
    def __init__(self, kb, sub, structure, f, lex, cfg, coarse_classes=None):
        self.kb = kb
        self.sub = sub
        self.structure = structure
        self.focus = f
        self.lex = lex
        self.cfg = cfg
        self.coarse_classes = coarse_classes
        self.extra = f.phrase or None

    def admissible_edges(self, node: Term) -> list[tuple[str, Term, Direction]]:
        edges = self.sub.adjacency.get(node, ())
        if self.cfg.respect_direction:
            return [e for e in edges if e[2] is Direction.OUT]
        return list(edges)

    def candidate_predicates(
        self, node: Term, phrase: str, with_extra: bool
    ) -> list[tuple[str, float]]:
        """Distinct predicates around ``node`` scored against ``phrase``,
        beam-limited then threshold-filtered."""
        preds = sorted({pred for pred, _other, _d in self.admissible_edges(node)})
        scored = [
            (pred, predicate_score(self.kb, pred, phrase, self.lex,
                                   self.extra if with_extra else None))
            for pred in preds
        ]
        scored.sort(key=lambda ps: (-ps[1], ps[0]))
        kept = scored[: self.cfg.beam]
        return [(pred, s) for pred, s in kept if s >= self.cfg.tau]

    def targets(self, node: Term, predicate: str) -> dict[Term, set[Direction]]:
        out: dict[Term, set[Direction]] = {}
        for pred, other, direction in self.admissible_edges(node):
            if pred == predicate:
                out.setdefault(other, set()).add(direction)
        return out

    def score_answers(self, answers: frozenset[Term]) -> float:
        return type_score(self.kb, answers, self.focus, self.lex, self.coarse_classes)

    def rank(self) -> list[CandidatePath]:
        edges = self.structure.edges
        if len(edges) == 1:
            paths = self._rank_single(edges[0])
        elif all(e.source.kind == ANSWER for e in edges):
            paths = self._rank_triangle(edges[0], edges[1])
        else:
            paths = self._rank_chain(edges[0], edges[1])
        paths.sort(key=_path_sort_key)
        if not paths:
            raise NoPathError("no candidate path matches the structure")
        return paths

    def _rank_single(self, edge: StructEdge) -> list[CandidatePath]:
        seed = edge.target.name
        paths = []
        for pred, score in self.candidate_predicates(seed, edge.phrase, with_extra=True):
            bound = self.targets(seed, pred)
            if not bound:
                continue
            answers = frozenset(bound)
            directions = set().union(*bound.values())
            step = PathStep(0, edge.phrase, pred, _direction_label(directions), score)
            ts = self.score_answers(answers)
            paths.append(CandidatePath((step,), (), answers, score, ts, score + ts))
        return paths

    def _rank_triangle(self, first: StructEdge, second: StructEdge) -> list[CandidatePath]:
        seed_a, seed_b = first.target.name, second.target.name
        cands_a = self.candidate_predicates(seed_a, first.phrase, with_extra=True)
        cands_b = self.candidate_predicates(seed_b, second.phrase, with_extra=True)
        paths = []
        for pred_a, score_a in cands_a:
            bound_a = self.targets(seed_a, pred_a)
            for pred_b, score_b in cands_b:
                bound_b = self.targets(seed_b, pred_b)
                common = frozenset(bound_a) & frozenset(bound_b)
                if not common:
                    continue
                dirs_a = set().union(*(bound_a[n] for n in common))
                dirs_b = set().union(*(bound_b[n] for n in common))
                steps = (
                    PathStep(0, first.phrase, pred_a, _direction_label(dirs_a), score_a),
                    PathStep(1, second.phrase, pred_b, _direction_label(dirs_b), score_b),
                )
                mean = (score_a + score_b) / 2
                ts = self.score_answers(common)
                paths.append(CandidatePath(steps, (), common, mean, ts, mean + ts))
        return paths

    def _rank_chain(self, ans_edge: StructEdge, seed_edge: StructEdge) -> list[CandidatePath]:
        seed = seed_edge.target.name
        var_name = seed_edge.source.name
        paths = []
        for pred_s, score_s in self.candidate_predicates(seed, seed_edge.phrase, with_extra=False):
            for var_node, var_dirs in sorted(
                self.targets(seed, pred_s).items(), key=lambda kv: term_text(kv[0])
            ):
                for pred_a, score_a in self.candidate_predicates(
                    var_node, ans_edge.phrase, with_extra=True
                ):
                    bound = self.targets(var_node, pred_a)
                    if not bound:
                        continue
                    answers = frozenset(bound)
                    dirs_a = set().union(*bound.values())
                    steps = (
                        PathStep(0, ans_edge.phrase, pred_a, _direction_label(dirs_a), score_a),
                        PathStep(1, seed_edge.phrase, pred_s, _direction_label(var_dirs), score_s),
                    )
                    mean = (score_a + score_s) / 2
                    ts = self.score_answers(answers)
                    paths.append(
                        CandidatePath(steps, ((var_name, var_node),), answers, mean, ts, mean + ts)
                    )
        return paths


def enumerate_and_rank(
    kb: KnowledgeBase,
    sub: Subgraph,
    structure: IntentStructure,
    f: Focus,
    lex: SimilarityLexicon,
    cfg: RankerConfig,
    coarse_classes: dict[str, tuple[str, ...]] | None = None,
) -> list[CandidatePath]:
    """Bind the structure's edges inside the subgraph and rank the results.

    Output is sorted by total descending, ties broken by predicate IRIs then
    answer terms, and is therefore byte-stable across runs.  Raises
    NoPathError when nothing survives.
    """
    if structure.k > cfg.max_k:
        raise ValueError(f"structure needs {structure.k} hops, config allows {cfg.max_k}")
    return _Ranker(kb, sub, structure, f, lex, cfg, coarse_classes).rank()
