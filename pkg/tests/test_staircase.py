import itertools

import pytest

from mskit.staircase import (add_box_set, dim, format_staircase, from_pair,
                             interlaces, is_valid, parse_staircase,
                             remove_box_set, to_pair, validate)


def all_staircases(d, lo, hi):
    return [g for g in itertools.product(range(hi, lo - 1, -1), repeat=d)
            if is_valid(g)]


def test_validity():
    assert is_valid((3, 1, 0, 0, -2))
    assert is_valid((0,))
    assert not is_valid((0, 1))
    assert not is_valid(())
    with pytest.raises(ValueError):
        validate((1, 2))


def test_add_box_examples():
    assert set(add_box_set((1, 0, 0))) == {(2, 0, 0), (1, 1, 0)}
    assert set(add_box_set((0, 0))) == {(1, 0)}
    assert set(add_box_set((2, -1))) == {(3, -1), (2, 0)}


def test_remove_box_examples():
    assert set(remove_box_set((2, 0))) == {(1, 0), (2, -1)}
    assert set(remove_box_set((0, 0))) == {(0, -1)}
    assert set(remove_box_set((1, 1, 0))) == {(1, 0, 0), (1, 1, -1)}


def test_add_remove_never_empty():
    for g in all_staircases(3, -2, 2):
        assert add_box_set(g)
        assert remove_box_set(g)


def test_adjacency_symmetry():
    for g in all_staircases(3, -2, 2):
        for h in add_box_set(g):
            assert g in remove_box_set(h)
        for h in remove_box_set(g):
            assert g in add_box_set(h)


def test_interlaces():
    assert interlaces((0,), (2, -1))
    assert not interlaces((3,), (2, -1))
    assert interlaces((1, 0), (1, 0, 0))
    with pytest.raises(ValueError):
        interlaces((1, 0), (1, 0))


def test_dim_examples():
    assert dim((2, 0, -2)) == 27
    assert dim((2, -1)) == 4
    for d in range(1, 6):
        assert dim((0,) * d) == 1


def test_dim_shift_invariance():
    for g in all_staircases(4, -2, 2):
        for c in (-3, 1, 5):
            assert dim(tuple(x + c for x in g)) == dim(g)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_dim_box_sums(d):
    # tensoring with the (dual) defining irrep preserves total dimension
    for g in all_staircases(d, -2, 2)[::3]:
        assert sum(dim(h) for h in add_box_set(g)) == d * dim(g)
        assert sum(dim(h) for h in remove_box_set(g)) == d * dim(g)


def test_dim_box_sums_wide_entries():
    import random

    rng = random.Random(1)
    for d in (2, 3, 4, 5):
        for _ in range(40):
            g = tuple(sorted((rng.randint(-6, 6) for _ in range(d)), reverse=True))
            assert sum(dim(h) for h in add_box_set(g)) == d * dim(g)
            assert sum(dim(h) for h in remove_box_set(g)) == d * dim(g)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_dim_matches_branching(d):
    for g in all_staircases(d, -2, 2)[::5]:
        total = sum(dim(mu) for mu in all_staircases(d - 1, -4, 4)
                    if interlaces(mu, g))
        assert total == dim(g)


def test_pair_split():
    assert to_pair((3, 1, 0, 0, -2)) == ((3, 1), (2,))
    assert to_pair((0, 0)) == ((), ())
    assert from_pair((1,), (1,), 2) == (1, -1)
    assert from_pair((3, 1), (2,), 5) == (3, 1, 0, 0, -2)
    with pytest.raises(ValueError):
        from_pair((1, 1), (1,), 2)


def test_pair_round_trip():
    for g in all_staircases(4, -3, 3):
        a, b = to_pair(g)
        assert from_pair(a, b, 4) == g


def test_text_encoding():
    assert format_staircase((2, 0, -2)) == "[2,0,-2]"
    assert parse_staircase("[2,0,-2]") == (2, 0, -2)
    with pytest.raises(ValueError):
        parse_staircase("2,0")
    with pytest.raises(ValueError):
        parse_staircase("[0,1]")
