"""Gelfand-Tsetlin patterns for rational irreps of U(d).

A GT pattern is a triangular array of integers: a top row of length d equal to
the irrep staircase, and below it rows of length d-1, ..., 1, each interlacing
the row above.  Entries may be negative.  Each pattern labels one vector of
the subgroup-adapted basis for the chain U(d) > U(d-1) > ... > U(1), where
U(k) acts on the first k coordinates: row k of the pattern is the U(k) irrep
the vector lives in.

Patterns are stored as tuples of rows, top row first, e.g. ((2, -1), (0,)).

Canonical pattern order: patterns of a fixed staircase are sorted by their
flattened row sequence (top row first) in descending lexicographic order.
With this choice the second row is the leading sort key, so the U(d-1)
isotypic blocks reported by :func:`subduce` are contiguous, and the basis
vector carrying weight w precedes the one carrying weight w' whenever
w > w' lexicographically.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .staircase import Staircase, dim, interlaces, validate

GTPattern = tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def interlacing_set(gamma: Staircase) -> tuple[Staircase, ...]:
    """All length d-1 staircases interlacing gamma, in descending lex order."""
    gamma = validate(gamma)
    d = len(gamma)
    if d == 1:
        return ()
    ranges = [range(gamma[i], gamma[i + 1] - 1, -1) for i in range(d - 1)]
    return tuple(mu for mu in itertools.product(*ranges)
                 if all(mu[i] >= mu[i + 1] for i in range(d - 2)))


@lru_cache(maxsize=None)
def enumerate_patterns(gamma: Staircase) -> tuple[GTPattern, ...]:
    """All GT patterns with top row gamma, in canonical (descending) order."""
    gamma = validate(gamma)
    if len(gamma) == 1:
        return ((gamma,),)
    out: list[GTPattern] = []
    for mu in interlacing_set(gamma):
        for sub in enumerate_patterns(mu):
            out.append((gamma,) + sub)
    out.sort(key=_flat, reverse=True)
    pats = tuple(out)
    assert len(pats) == dim(gamma)
    return pats


def _flat(pattern: GTPattern) -> tuple[int, ...]:
    return tuple(itertools.chain.from_iterable(pattern))


def is_valid_pattern(pattern: GTPattern) -> bool:
    rows = tuple(tuple(r) for r in pattern)
    d = len(rows)
    if any(len(rows[k]) != d - k for k in range(d)):
        return False
    for k in range(d - 1):
        try:
            if not interlaces(rows[k + 1], rows[k]):
                return False
        except ValueError:
            return False
    return True


def pattern_weight(pattern: GTPattern) -> tuple[int, ...]:
    """Weight vector (w_1, ..., w_d): w_k = sum(row with k entries) - sum(row with k-1).

    A diagonal unitary diag(e^{i t_1}, ..., e^{i t_d}) acts on the basis
    vector labeled by this pattern with phase exp(i sum_k w_k t_k).
    """
    d = len(pattern[0])
    sums = [0] * (d + 1)
    for row in pattern:
        sums[len(row)] = sum(row)
    return tuple(sums[k] - sums[k - 1] for k in range(1, d + 1))


def index_of(pattern: GTPattern) -> int:
    """Position of the pattern in the canonical order of its staircase."""
    gamma = tuple(pattern[0])
    try:
        return _index_map(gamma)[tuple(tuple(r) for r in pattern)]
    except KeyError:
        raise ValueError(f"not a valid pattern of {gamma}: {pattern}") from None


def pattern_at(gamma: Staircase, idx: int) -> GTPattern:
    """Inverse of :func:`index_of`."""
    pats = enumerate_patterns(tuple(gamma))
    if not 0 <= idx < len(pats):
        raise ValueError(f"pattern index {idx} out of range for {gamma} (dim {len(pats)})")
    return pats[idx]


@lru_cache(maxsize=None)
def _index_map(gamma: Staircase) -> dict[GTPattern, int]:
    return {p: k for k, p in enumerate(enumerate_patterns(gamma))}


@lru_cache(maxsize=None)
def subduce(gamma: Staircase) -> tuple[tuple[Staircase, int, int], ...]:
    """Contiguous blocks of the canonical pattern order grouped by second row.

    Returns (mu', offset, count) triples: the patterns with second row mu'
    occupy indices [offset, offset + count), and count = dim(mu').  This is
    the multiplicity-free restriction of the irrep gamma to U(d-1).
    """
    gamma = validate(gamma)
    if len(gamma) < 2:
        raise ValueError("subduce needs d >= 2")
    out = []
    offset = 0
    for mu in interlacing_set(gamma):
        c = dim(mu)
        out.append((mu, offset, c))
        offset += c
    assert offset == dim(gamma)
    return tuple(out)


def subduce_offsets(gamma: Staircase) -> dict[Staircase, int]:
    """Second row -> offset map derived from :func:`subduce`."""
    return {mu: off for mu, off, _ in subduce(gamma)}


def pattern_to_json(pattern: GTPattern) -> list[list[int]]:
    """JSON encoding: list of rows, top row first, e.g. [[2,-1],[0]]."""
    return [list(row) for row in pattern]


def pattern_from_json(data: list[list[int]]) -> GTPattern:
    pattern = tuple(tuple(int(x) for x in row) for row in data)
    if not is_valid_pattern(pattern):
        raise ValueError(f"invalid GT pattern: {data}")
    return pattern
