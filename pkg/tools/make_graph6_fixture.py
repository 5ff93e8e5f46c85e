"""Write every non-isomorphic simple graph on 1..N vertices to a graph6 file.

Graphs on n vertices are produced by attaching a new vertex to graphs on n-1
vertices in every possible way, then deduplicated by WL hash buckets and an
exact isomorphism test inside each bucket. The encoder is networkx's own, so
the fixture is independent of the package under test.

    python3 tools/make_graph6_fixture.py --max-n 8 -o tests/data/graphs_le8.g6
"""

import argparse
import itertools
import sys
from collections import defaultdict

import networkx as nx

# OEIS A000088, number of graphs on n unlabeled nodes
KNOWN = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668}


def _key(g):
    degs = tuple(sorted(d for _, d in g.degree()))
    return degs, nx.weisfeiler_lehman_graph_hash(g, iterations=3)


def extend(graphs, n):
    buckets = defaultdict(list)
    out = []
    for base in graphs:
        for r in range(n):
            for nbrs in itertools.combinations(range(n - 1), r):
                g = base.copy()
                g.add_node(n - 1)
                g.add_edges_from((v, n - 1) for v in nbrs)
                bucket = buckets[_key(g)]
                if any(nx.is_isomorphic(g, h) for h in bucket):
                    continue
                bucket.append(g)
                out.append(g)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args(argv)

    single = nx.Graph()
    single.add_node(0)
    levels = {1: [single]}
    for n in range(2, args.max_n + 1):
        levels[n] = extend(levels[n - 1], n)
        print(f"n={n}: {len(levels[n])} graphs", file=sys.stderr)
    for n, gs in levels.items():
        if n in KNOWN and len(gs) != KNOWN[n]:
            raise SystemExit(f"n={n}: got {len(gs)} graphs, expected {KNOWN[n]}")

    lines = []
    for n in sorted(levels):
        for g in levels[n]:
            lines.append(nx.to_graph6_bytes(g, nodes=range(n), header=False).decode().strip())
    text = "\n".join(lines) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)


if __name__ == "__main__":
    main()
