"""Collect all connected k-regular graphs on n vertices (up to isomorphism)
by rejection sampling, and write them as graph6 lines.

Usage: python scripts/gen_regular.py K N EXPECTED OUT.g6
"""
import sys

import networkx as nx
import numpy as np


def key(g):
    a = nx.to_numpy_array(g, nodelist=sorted(g))
    ev = np.round(np.linalg.eigvalsh(a), 6)
    tri = sorted(nx.triangles(g).values())
    return (tuple(ev), tuple(tri))


def main():
    k, n, expected, out = int(sys.argv[1]), int(sys.argv[2]), int(sys.argv[3]), sys.argv[4]
    rng = np.random.default_rng(0)
    buckets = {}
    found = 0
    tries = 0
    while found < expected:
        tries += 1
        g = nx.random_regular_graph(k, n, seed=int(rng.integers(2**31)))
        if not nx.is_connected(g):
            continue
        b = buckets.setdefault(key(g), [])
        if any(nx.is_isomorphic(g, h) for h in b):
            continue
        b.append(g)
        found += 1
    graphs = [g for b in buckets.values() for g in b]
    lines = sorted(nx.to_graph6_bytes(g, header=False).decode().strip() for g in graphs)
    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"{len(lines)} graphs after {tries} samples")


if __name__ == "__main__":
    main()
