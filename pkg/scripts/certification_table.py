"""Certify the small gadget families and print one table row per instance."""

import argparse

from spanner_forge.cli import render_table
from spanner_forge.gadgets import chordal_gadget, ell_house, house, star_graph
from spanner_forge.lowerbound import (
    certify_d_gadget,
    certify_infinity_gadget,
    star_fc_cover_check,
    sun_gadget_check,
)


def certificates():
    yield certify_infinity_gadget(house(), 2)
    for c in (2, 3, 4):
        yield certify_infinity_gadget(ell_house(-(-c // 2)), c)
    yield certify_d_gadget(chordal_gadget(1), 2, 1)
    yield certify_d_gadget(chordal_gadget(2), 2, 2)
    yield certify_d_gadget(chordal_gadget(2), 2, 3)
    yield sun_gadget_check(1, 3, 1)
    yield certify_d_gadget(star_graph(1), 1, 1)
    for k in (1, 2):
        yield star_fc_cover_check(k, 1)
    yield star_fc_cover_check(2, 2)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--format", choices=["markdown", "text"], default="markdown")
    a = p.parse_args()
    print(render_table(list(certificates()), a.format), end="")


if __name__ == "__main__":
    main()
