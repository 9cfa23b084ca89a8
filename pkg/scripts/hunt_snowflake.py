"""Run the deficiency hunter against random tree spanners of a snowflake."""

import argparse
import time

from spanner_forge.snowflake import LazyTreeSpanner, Snowflake, find_deficient_edge


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--h", type=int, default=8)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--strategy", choices=["random", "bfs"], default="random")
    a = p.parse_args()
    s = Snowflake(a.k, a.h, max_vertices=10**8)
    print(f"S({a.k},{a.h}): n={s.n}")
    print("seed  status  edge                 deficiency  steps  seconds")
    for seed in range(a.seeds):
        start = time.perf_counter()
        res = find_deficient_edge(s, LazyTreeSpanner(s, a.strategy, seed), a.c)
        edge = str(res.edge) if res.edge else "-"
        print(f"{seed:<5} {res.status:<7} {edge:<20} {res.deficiency!s:<11} {len(res.trace):<6} "
              f"{time.perf_counter() - start:.2f}")


if __name__ == "__main__":
    main()
