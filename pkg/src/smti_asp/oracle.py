"""Brute-force reference enumerations used to cross-check every other solver."""
from __future__ import annotations

import math
from typing import Iterator

from .errors import BoundExceededError, InvalidInstanceError
from .model import (
    Criterion,
    Matching,
    SmtiInstance,
    is_weakly_stable,
    matching_cost,
    validate_instance,
)

DEFAULT_BOUND = 12


def _check(instance: SmtiInstance, bound: int) -> None:
    violations = validate_instance(instance)
    if violations:
        raise InvalidInstanceError(violations)
    if instance.n + instance.p > bound:
        raise BoundExceededError(f"{instance.n + instance.p} persons exceed the oracle bound of {bound}")


def _partial_injections(n: int, p: int, allowed) -> Iterator[list[tuple[int, int]]]:
    """Every set of couples in which each man and woman occurs at most once."""
    used = [False] * (p + 1)
    couples: list[tuple[int, int]] = []

    def extend(i):
        if i > n:
            yield list(couples)
            return
        yield from extend(i + 1)
        for j in range(1, p + 1):
            if not used[j] and allowed(i, j):
                used[j] = True
                couples.append((i, j))
                yield from extend(i + 1)
                couples.pop()
                used[j] = False

    yield from extend(1)


def all_matchings(instance: SmtiInstance, bound: int = DEFAULT_BOUND) -> Iterator[Matching]:
    """Every matching of the instance, acceptable or not, in canonical order."""
    _check(instance, bound)
    matchings = [Matching.from_couples(instance.n, instance.p, c) for c in _partial_injections(instance.n, instance.p, lambda i, j: True)]
    return iter(sorted(matchings))


def _stable_couple_sets(instance: SmtiInstance) -> Iterator[list[tuple[int, int]]]:
    # Only mutually acceptable couples can occur in a stable matching; blocking
    # pairs between men already placed and women already taken prune early.
    n, p = instance.n, instance.p
    man_rank = [[None] * (p + 1)] + [[pl.rank(j) for j in range(p + 1)] for pl in instance.men]
    woman_rank = [[None] * (n + 1)] + [[pl.rank(i) for i in range(n + 1)] for pl in instance.women]
    man_single = [0] + [pl.self_rank for pl in instance.men]
    woman_single = [0] + [pl.self_rank for pl in instance.women]
    wife = [0] * (n + 1)
    husband = [0] * (p + 1)

    def rank_of_man(i):
        return man_rank[i][wife[i]] if wife[i] else man_single[i]

    def blocked(i):
        # pairs (a, j) with a <= i and j already matched to some man <= i
        for a in range(1, i + 1):
            current = rank_of_man(a)
            for j in range(1, p + 1):
                h = husband[j]
                if not h or h == a:
                    continue
                rm, rw = man_rank[a][j], woman_rank[j][a]
                if rm is not None and rw is not None and rm < current and rw < woman_rank[j][h]:
                    return True
        return False

    def extend(i):
        if i > n:
            yield [(a, wife[a]) for a in range(1, n + 1) if wife[a]]
            return
        options = [0] + [j for j in range(1, p + 1) if not husband[j] and man_rank[i][j] is not None and woman_rank[j][i] is not None]
        for j in options:
            wife[i] = j
            if j:
                husband[j] = i
            if not blocked(i):
                yield from extend(i + 1)
            if j:
                husband[j] = 0
            wife[i] = 0

    yield from extend(1)


def enumerate_stable(instance: SmtiInstance, bound: int = DEFAULT_BOUND) -> list[Matching]:
    """All weakly stable matchings, canonically sorted."""
    _check(instance, bound)
    found = []
    for couples in _stable_couple_sets(instance):
        matching = Matching.from_couples(instance.n, instance.p, couples)
        if is_weakly_stable(instance, matching):
            found.append(matching)
    return sorted(found)


def optimize(instance: SmtiInstance, criterion: Criterion, bound: int = DEFAULT_BOUND) -> tuple[int, list[Matching]]:
    """Optimal criterion value over the stable matchings and every matching attaining it."""
    best = None
    winners: list[Matching] = []
    for matching in enumerate_stable(instance, bound):
        value = matching_cost(instance, matching).value(criterion)
        if best is None or criterion.better(value, best):
            best, winners = value, [matching]
        elif value == best:
            winners.append(matching)
    return best, winners


def stable_pair(instance: SmtiInstance, m: int, w: int, bound: int = DEFAULT_BOUND) -> bool:
    """Whether man ``m`` and woman ``w`` are married in some weakly stable matching."""
    return any((m, w) in matching.couples for matching in enumerate_stable(instance, bound))


def count_matchings(n: int, p: int) -> int:
    """Number of matchings of n men and p women (partial injections)."""
    return sum(math.comb(n, k) * math.comb(p, k) * math.factorial(k) for k in range(min(n, p) + 1))
