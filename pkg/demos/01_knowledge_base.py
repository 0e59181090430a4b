"""Loading an N-Triples file and exploring the indexed store.

Run from the repository root:  python3 demos/01_knowledge_base.py
"""

import os

from graphqa import load_ntriples, load_ntriples_file
from graphqa.kbstore import Literal, load_prefixes, format_term

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")

# The store is built once from an N-Triples file and is immutable afterwards.
kb = load_ntriples_file(os.path.join(FIXTURES, "berlin.nt"))
prefixes = load_prefixes(os.path.join(FIXTURES, "prefixes.json"))
print(f"loaded {len(kb)} triples")

# Every node exposes its incident edges in both directions, sorted, so the
# same query always prints the same lines.
berlin = "http://dbpedia.org/resource/Berlin"
print(f"\nneighbors of {format_term(berlin, prefixes)}:")
for predicate, other, direction in kb.neighbors(berlin):
    print(f"  {format_term(predicate, prefixes):22} {direction.value:3}  {format_term(other, prefixes)}")

# Labels fall back to a decamelized local name when no rdfs:label exists,
# so ranking always has text to work with.
print("\nlabels:")
for iri in (
    "http://dbpedia.org/ontology/leader",
    "http://dbpedia.org/ontology/leaderTitle",
    "http://dbpedia.org/ontology/birthPlace",
):
    print(f"  {format_term(iri, prefixes):20} -> {kb.labels_of(iri)}")

# Literals carry a pseudo-class derived from their datatype instead of
# rdf:type triples.
print("\ntypes:")
wowereit = "http://dbpedia.org/resource/Klaus_Wowereit"
print(f"  {format_term(wowereit, prefixes)} -> {kb.types_of(wowereit)}")
date = Literal("1989-11-09", "http://www.w3.org/2001/XMLSchema#date")
print(f"  {date} -> {kb.types_of(date)}")

# Serialization round-trips: rebuilding from the dump gives the same set.
again = load_ntriples(kb.to_ntriples())
print(f"\nround trip preserved all triples: {again.triples == kb.triples}")
