import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pwcolor import (
    Coloring,
    ConflictState,
    Graph,
    basis_from_temperature,
    color_distribution,
    energy,
    generate_partite,
    neighbor_color_counts,
    recolor,
    sample_color,
    temperature_from_basis,
)


def test_energy_examples(triangle, k333):
    assert energy(triangle, Coloring([0, 0, 0], 3)) == 3
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert energy(path, Coloring([0, 0, 0], 1)) == 2
    assert energy(k333, Coloring(k333.planted, 3)) == 0


def test_neighbor_counts():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    c = Coloring([2, 0, 0, 1], 3)
    assert neighbor_color_counts(g, c, 0, 3).tolist() == [2, 1, 0]
    iso = Graph.from_edges(2, [])
    assert neighbor_color_counts(iso, Coloring([0, 1], 3), 0, 3).tolist() == [0, 0, 0]


def test_neighbor_counts_k333(k333):
    c = Coloring(k333.planted, 3)
    for v in range(9):
        S = neighbor_color_counts(k333, c, v, 3)
        own = k333.planted[v]
        assert S[own] == 0 and all(S[i] == 3 for i in range(3) if i != own)


def test_distribution_examples():
    np.testing.assert_allclose(color_distribution([2, 0, 1], 4), [1 / 21, 16 / 21, 4 / 21], atol=1e-12)
    np.testing.assert_allclose(color_distribution([0, 0, 0], 7.5), [1 / 3] * 3, atol=1e-12)
    np.testing.assert_allclose(color_distribution([5, 5, 6], 4), [4 / 9, 4 / 9, 1 / 9], atol=1e-12)


def test_distribution_no_underflow():
    p = color_distribution([900, 1000, 1200], 10.0)
    assert p[0] == pytest.approx(1.0) and np.isfinite(p).all()


def test_distribution_errors():
    with pytest.raises(ValueError):
        color_distribution([], 4)
    with pytest.raises(ValueError):
        color_distribution([1, 2], 1.0)


counts = st.lists(st.integers(0, 60), min_size=1, max_size=12)
bases = st.floats(1.01, 50)


@given(counts, bases, st.integers(0, 500))
def test_shift_invariance(S, b, shift):
    a = color_distribution(S, b)
    c = color_distribution(np.array(S) + shift, b)
    np.testing.assert_allclose(a, c, atol=1e-12)
    assert abs(a.sum() - 1) < 1e-12


@given(counts, bases)
def test_monotone(S, b):
    p = color_distribution(S, b)
    for i in range(len(S)):
        for j in range(len(S)):
            if S[i] < S[j]:
                assert p[i] > p[j] or p[j] == 0.0


def test_sample_degenerate():
    rng = np.random.default_rng(0)
    assert all(sample_color([1.0, 0.0, 0.0], rng) == 0 for _ in range(100))
    assert all(sample_color([0.0, 1.0], rng) == 1 for _ in range(100))
    assert sample_color([0.5, 0.5], 0.49) == 0 and sample_color([0.5, 0.5], 0.5) == 1


def test_sample_frequencies():
    dist = color_distribution([2, 0, 1], 4)
    rng = np.random.default_rng(1)
    draws = np.array([sample_color(dist, rng) for _ in range(100_000)])
    freq = np.bincount(draws, minlength=3) / draws.size
    np.testing.assert_allclose(freq, [1 / 21, 16 / 21, 4 / 21], atol=0.01)


def test_sample_deterministic():
    dist = [0.2, 0.3, 0.5]
    a = [sample_color(dist, np.random.default_rng(5)) for _ in range(3)]
    b = [sample_color(dist, np.random.default_rng(5)) for _ in range(3)]
    assert a == b


def test_recolor_examples(triangle):
    c = Coloring([0, 0, 0], 3)
    st_ = ConflictState(triangle, c)
    assert st_.energy == 3
    assert recolor(triangle, c, st_, 0, 0) == 0 and st_.energy == 3
    assert recolor(triangle, c, st_, 0, 1) == 2
    assert st_.energy == 1 and st_.check()
    assert sorted(st_.bad_list) == [1, 2]


def test_recolor_rejects_foreign_state(triangle):
    c = Coloring([0, 0, 0], 3)
    st_ = ConflictState(triangle, c)
    with pytest.raises(ValueError):
        recolor(triangle, c.copy(), st_, 0, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 5))
def test_recolor_matches_recount(seed, C):
    rng = np.random.default_rng(seed)
    g = generate_partite(40, 3, 0.15, seed=seed)
    c = Coloring(rng.integers(C, size=g.n), C)
    st_ = ConflictState(g, c)
    for _ in range(200):
        v, new = int(rng.integers(g.n)), int(rng.integers(C))
        S = neighbor_color_counts(g, c, v, C)
        old = c.colors[v]
        before = st_.energy
        delta = st_.recolor(v, new)
        assert delta == S[old] - S[new]
        assert st_.energy == before - delta == energy(g, c)
    assert st_.check()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_zero_energy_iff_no_bad(seed):
    rng = np.random.default_rng(seed)
    g = generate_partite(12, 3, 0.4, seed=seed)
    c = Coloring(rng.integers(2, size=g.n) if seed % 2 else np.array(g.planted), 3)
    st_ = ConflictState(g, c)
    assert (energy(g, c) == 0) == (len(st_.bad_list) == 0)


def test_temperature_basis():
    assert temperature_from_basis(4) == pytest.approx(1 / math.log(4))
    assert round(temperature_from_basis(4), 2) == 0.72
    assert basis_from_temperature(1.0) == pytest.approx(math.e)
    for b in (1.5, 2.0, 4.0, 10.0):
        assert abs(basis_from_temperature(temperature_from_basis(b)) - b) <= 1e-12 * b
    with pytest.raises(ValueError):
        basis_from_temperature(0)
    with pytest.raises(ValueError):
        temperature_from_basis(1.0)


def test_coloring_text_round_trip():
    c = Coloring([0, 2, 1, 1], 3)
    assert Coloring.from_text(c.to_text()) == c
    assert c.to_text().splitlines()[0] == "3"
    with pytest.raises(ValueError):
        Coloring([0, 3], 3)
