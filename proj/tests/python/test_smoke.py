import math

import pytest

import satdiv


def test_parse_and_roundtrip():
    f = satdiv.parse_dimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n")
    assert f.num_vars == 2
    assert f.num_clauses == 2
    assert f.clauses() == [[1, -2], [-1, 2]]
    again = satdiv.parse_dimacs(f.to_dimacs())
    assert again.clauses() == f.clauses()


def test_parse_error_carries_line():
    with pytest.raises(ValueError, match="line 2"):
        satdiv.parse_dimacs("p cnf 2 1\n3 0\n")


def test_solve_and_verify():
    f = satdiv.parse_dimacs("p cnf 3 2\n1 -2 0\n2 3 0\n")
    model = satdiv.solve(f)
    assert model is not None
    assert f.satisfied_by(model)

    unsat = satdiv.parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")
    assert satdiv.solve(unsat) is None


def test_enumerate_models():
    f = satdiv.parse_dimacs("p cnf 2 1\n1 2 0\n")
    models = satdiv.enumerate_models(f)
    assert models == [[False, True], [True, False], [True, True]]


def test_blocking_clause():
    assert satdiv.blocking_clause([True, False, True]) == [-1, 2, -3]


def test_entropy_values():
    assert satdiv.contribution(10, 20) == pytest.approx(0.34657359027997264, abs=1e-14)
    members = [[True, False], [False, False]]
    assert satdiv.entropy(members) == pytest.approx(0.34657359027997264, abs=1e-14)
    assert satdiv.entropy(members, "H2", [3, 1]) == pytest.approx(1.0397207708399179, abs=1e-14)
    assert satdiv.max_entropy("H1", 100) == pytest.approx(100 / math.e, abs=1e-12)
    assert satdiv.least_contributor([[True, True], [True, True], [False, False]]) == 1


def test_operators_are_seed_deterministic():
    y = [(1, True), (4, False)]
    assert satdiv.fixset_mutation(y, 9, seed=5) == satdiv.fixset_mutation(y, 9, seed=5)
    a = satdiv.bitflip_fixset([False] * 10, seed=3)
    assert a == satdiv.bitflip_fixset([False] * 10, seed=3)
    for var, value in a:
        assert 1 <= var <= 10
        assert value is True  # flipped from all-False


def test_generator_and_run():
    text, rejects = satdiv.generate_satisfiable(20, 40, 3, dist="uniform", seed=11)
    assert rejects == 0
    f = satdiv.parse_dimacs(text)
    assert f.num_clauses == 40

    result = satdiv.run(f, "edo_mutation", fitness="H1", mu=4, iterations=40, l=4, seed=1)
    assert len(result.population) == 4
    assert len(result.fixsets) == 4
    for member in result.population:
        assert f.satisfied_by(member)
    assert len(result.trajectory) == 40
    assert 0.0 <= result.h1_normalized <= 1.0

    # Elitism: fitness series is non-decreasing once the population is full,
    # which for EDO is from the first iteration.
    h = [p.h1 for p in result.trajectory]
    assert all(b >= a - 1e-12 for a, b in zip(h, h[1:]))


def test_run_unsat_raises():
    unsat = satdiv.parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")
    with pytest.raises(ValueError):
        satdiv.run(unsat, "bitflip", iterations=5)


def test_kruskal_wallis_against_scipy():
    scipy_stats = pytest.importorskip("scipy.stats")
    groups = [[1.0, 2.0, 3.0, 4.0, 5.0], [6.0, 7.0, 8.0, 9.0, 10.0]]
    h, p = satdiv.kruskal_wallis(groups)
    ref = scipy_stats.kruskal(*groups)
    assert h == pytest.approx(ref.statistic, abs=1e-12)
    assert p == pytest.approx(ref.pvalue, abs=1e-9)

    import random

    rng = random.Random(7)
    for _ in range(20):
        gs = [[rng.uniform(0, 10) for _ in range(rng.randint(5, 15))] for _ in range(3)]
        h, p = satdiv.kruskal_wallis(gs)
        ref = scipy_stats.kruskal(*gs)
        assert h == pytest.approx(ref.statistic, abs=1e-9)
        assert p == pytest.approx(ref.pvalue, abs=1e-9)
