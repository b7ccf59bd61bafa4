"""Smoke test for the pygardner extension. Run after `pip install ./crates/python`."""

from fractions import Fraction

import pygardner as g


def main():
    fig1 = g.Placement.fixture("figure1")
    assert fig1.is_good() and len(fig1) == 10 and fig1.lonely_queens() == []

    fig2 = g.Placement.fixture("figure2")
    assert fig2.is_good()
    assert fig2.lonely_queens() == g.Placement.from_centered(5, [(0, 2)]).queens

    fig3 = g.Placement.fixture("figure3")
    assert not fig3.is_good()
    assert len(fig3.addable_squares()) == 12
    assert fig3.transform("r90") == fig3
    assert g.Placement.from_json(fig3.to_json()) == fig3

    r = g.find_min_good(5)
    assert r.m3 == 6 and r.exhausted and r.witness.is_good()
    assert g.exists_good_of_size(4, 3) is None
    assert g.known_m3(27) == 28

    assert all(c == 0 and f == 0 for _, c, f in g.case2_coefficients(fig3))
    assert g.classify(fig3) == "in null space"
    assert g.omega(2) == 6
    basis = g.nullspace(3)
    assert [Fraction(x) for x in basis[0]] == [1, 1, 0, 2, Fraction(-1, 2), Fraction(-1, 2), 0, -1]
    assert len(g.nullspace(3, exact=True)) == 2

    seeds = g.enumerate_seeds(9)
    assert len(seeds) == 6
    assert g.octagon_placement(9, [(4, 1)]) == fig3
    assert all(g.validate_null_a(g.octagon_placement(9, s)) for s in seeds)
    assert g.enumerate_case2_candidates(5) == []

    dimacs = g.encode_cnf(2, 4)
    assert dimacs == g.encode_cnf(2, 4)
    header = next(line for line in dimacs.splitlines() if line.startswith("p cnf"))
    nvars = int(header.split()[2])
    model = "s SATISFIABLE\nv " + " ".join(str(v) for v in range(1, nvars + 1)) + " 0\n"
    assert len(g.decode_model(dimacs, model)) == 4

    print("pygardner smoke test passed")


if __name__ == "__main__":
    main()
