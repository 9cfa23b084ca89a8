"""FC cover checks on star graphs, exhaustive for small k and sampled beyond."""

import argparse

from spanner_forge.lowerbound import SAMPLED, SearchBudget, star_fc_cover_check


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    a = p.parse_args()
    for k, delta in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)]:
        cert = star_fc_cover_check(k, delta)
        print(f"k={k} delta={delta} exhaustive: {cert.verdict}")
    for k in (3, 4):
        cert = star_fc_cover_check(k, 2, SearchBudget(max_tuples=a.samples, seed=a.seed, mode=SAMPLED))
        fails = cert.detail.get("failures")
        print(f"k={k} delta=2 sampled ({a.samples} pairs): {cert.verdict}, {fails} pairs leave an edge uncovered")


if __name__ == "__main__":
    main()
