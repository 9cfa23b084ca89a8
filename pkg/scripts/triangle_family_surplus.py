"""Best additive surplus over all spanning trees of the treewidth-2 graphs G_c.

For each c the script enumerates every spanning tree, records the largest
surplus over all vertex pairs and reports the minimum over trees.
"""

import argparse

import numpy as np

from spanner_forge.graph import all_pairs_distances, count_spanning_trees, enumerate_spanning_trees
from spanner_forge.snowflake import triangle_recursion_graph


def best_surplus(g):
    host = np.array(all_pairs_distances(g).rows)
    best, hist = None, {}
    for t in enumerate_spanning_trees(g):
        d = np.array(all_pairs_distances(t.as_graph()).rows)
        s = int((d - host).max())
        hist[s] = hist.get(s, 0) + 1
        best = s if best is None else min(best, s)
    return best, dict(sorted(hist.items()))


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-c", type=int, default=3)
    a = p.parse_args()
    print("c  n   trees     best  surplus histogram")
    for c in range(1, a.max_c + 1):
        g = triangle_recursion_graph(c)
        best, hist = best_surplus(g)
        print(f"{c:<2} {g.n:<3} {count_spanning_trees(g):<9} {best:<5} {hist}")


if __name__ == "__main__":
    main()
