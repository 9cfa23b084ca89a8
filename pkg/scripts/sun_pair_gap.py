"""Compare the sun gadget for k=2 under sun pairs only and under all terminal pairs.

With only the sun pairs there is a pair of FC trees that keeps every sun pair
within +3; with all terminal pairs the gadget is certified.
"""

from spanner_forge.gadgets import sun_chordal_gadget
from spanner_forge.lowerbound import FcSpace, certify_d_gadget, sun_gadget_check, sun_pairs


def main():
    gd = sun_chordal_gadget(2)
    full = certify_d_gadget(gd, 3, 2)
    print(f"all terminal pairs, c=3, d=2: {full.verdict} ({full.trees_examined} FC trees)")
    cert = sun_gadget_check(2, 3, 2)
    print(f"sun pairs only,     c=3, d=2: {cert.verdict}")
    if "spanning_parents" not in cert.detail:
        return
    space = FcSpace(gd)
    trees = [space.tree(p) for p in cert.detail["spanning_parents"]]
    for i, t in enumerate(trees):
        print(f"  tree {i}: {sorted(t.edges)}")
    for u, v in sun_pairs(gd):
        ds = [t.distance(u, v) for t in trees]
        print(f"  {gd.graph.label(u):>4} - {gd.graph.label(v):<4} distances {ds} best surplus {min(ds) - 1}")


if __name__ == "__main__":
    main()
