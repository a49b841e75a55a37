#!/usr/bin/env python3
"""Generate data/dfd_reference_graph.json.

A synthetic type graph of four services whose afferent/efferent coupling
and relational cohesion equal the published figures for the dataflow-driven
decomposition of the Cargo system:

  service   Ca  Ce   RC
  Cargo     13   4   1.8
  Planning  10   3  11.5
  Location  15   1  21.5
  Tracking  16   5  14.1

Each service has 10 types. For every ordered service pair (X, S) the table
below fixes how many distinct types of X depend on S ("sources") and how
many distinct types of S they reach ("targets"); Ca(S) is the column sum of
sources and Ce(X) the row sum of targets.
"""

import argparse
import json

SERVICES = ["Cargo", "Planning", "Location", "Tracking"]
TYPES_PER_SERVICE = 10
INTERNAL = {"Cargo": 18, "Planning": 115, "Location": 215, "Tracking": 141}
KINDS = ["invocation", "attribute_access", "instantiation", "inheritance"]

# (from, to): (distinct source types in `from`, distinct target types in `to`)
CROSS = {
    ("Planning", "Cargo"): (5, 1),
    ("Location", "Cargo"): (4, 1),
    ("Tracking", "Cargo"): (4, 2),
    ("Cargo", "Planning"): (5, 2),
    ("Tracking", "Planning"): (5, 1),
    ("Cargo", "Location"): (5, 1),
    ("Planning", "Location"): (5, 1),
    ("Tracking", "Location"): (5, 2),
    ("Cargo", "Tracking"): (8, 1),
    ("Planning", "Tracking"): (8, 1),
}


def type_name(service: str, i: int) -> str:
    return f"{service.lower()}.Type{i:02d}"


def build() -> dict:
    nodes = [{"type_name": type_name(s, i), "service": s} for s in SERVICES for i in range(TYPES_PER_SERVICE)]
    relations = []
    for s in SERVICES:
        want = INTERNAL[s]
        emitted = 0
        for kind in KINDS:
            for a in range(TYPES_PER_SERVICE):
                for b in range(TYPES_PER_SERVICE):
                    if a == b or emitted == want:
                        continue
                    relations.append({"source": type_name(s, a), "target": type_name(s, b), "kind": kind})
                    emitted += 1
        assert emitted == want
    for (src, dst), (n_src, n_dst) in CROSS.items():
        # Sources use the highest-numbered types so they stay clear of the
        # lowest-numbered targets; targets use Type00, Type01, ...
        for k in range(max(n_src, n_dst)):
            relations.append({
                "source": type_name(src, TYPES_PER_SERVICE - 1 - (k % n_src)),
                "target": type_name(dst, k % n_dst),
                "kind": "invocation",
            })
    return {"nodes": nodes, "relations": relations}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="data/dfd_reference_graph.json")
    args = parser.parse_args()
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(build(), fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
