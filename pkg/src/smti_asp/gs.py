"""Deferred acceptance for SMTI instances via tie-breaking.

Ties are broken into a strict order, either by ascending index or by a
seeded shuffle of each tie-group.  Partners tied with staying single are
dropped from the broken lists: being single is weakly preferred to them,
so nobody proposes to or accepts them.  Deferred acceptance on the
resulting strict instance with incomplete lists yields a matching that is
weakly stable for the original instance.

The seeded shuffle is portable: a SplitMix64 generator seeded with the
64-bit seed drives a Fisher-Yates shuffle (``j = next() % (i + 1)`` for
``i`` from ``len - 1`` down to ``1``) of every non-neutral tie-group, with
the group first sorted ascending.  Groups are visited man 1..n, then woman
1..p, each list front to back, all from one generator stream.
"""
from __future__ import annotations

from collections import deque

from .errors import InvalidInstanceError
from .model import Matching, PreferenceList, SmtiInstance, validate_instance

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.next() % (i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def break_ties(instance: SmtiInstance, seed: int | None = None) -> SmtiInstance:
    """Strict SMI instance: singleton groups, neutral partners made unacceptable."""
    rng = None if seed is None else SplitMix64(seed)

    def strict(plist: PreferenceList) -> PreferenceList:
        order = []
        for group in plist.groups[:-1]:
            members = sorted(group)
            order += members if rng is None else rng.shuffle(members)
        return PreferenceList(tuple([x] for x in order) + ((),))

    men = tuple(strict(pl) for pl in instance.men)
    women = tuple(strict(pl) for pl in instance.women)
    return SmtiInstance(men, women)


def _deferred_acceptance(proposers: list[list[int]], receiver_rank: list[dict[int, int]]) -> dict[int, int]:
    """Proposer-optimal matching of a strict instance; returns receiver -> proposer (1-based)."""
    held: dict[int, int] = {}
    nxt = [0] * len(proposers)
    free = deque(range(len(proposers)))
    while free:
        a = free.popleft()
        prefs = proposers[a]
        while nxt[a] < len(prefs):
            b = prefs[nxt[a]]
            nxt[a] += 1
            ranks = receiver_rank[b - 1]
            if a + 1 not in ranks:
                continue
            current = held.get(b)
            if current is None:
                held[b] = a + 1
                break
            if ranks[a + 1] < ranks[current]:
                held[b] = a + 1
                free.append(current - 1)
                break
    return held


def solve_gs(instance: SmtiInstance, seed: int | None = None, proposing: str = "men") -> Matching:
    """One weakly stable matching, deterministic for a given ``seed`` and side.

    ``seed=None`` breaks ties by ascending index; an integer seed uses the
    SplitMix64 shuffle described in the module docstring.
    """
    violations = validate_instance(instance)
    if violations:
        raise InvalidInstanceError(violations)
    if proposing not in ("men", "women"):
        raise ValueError(f"proposing side must be 'men' or 'women', not {proposing!r}")
    strict = break_ties(instance, seed)
    men = [pl.ordered() for pl in strict.men]
    women = [pl.ordered() for pl in strict.women]
    if proposing == "men":
        held = _deferred_acceptance(men, [{x: r for r, x in enumerate(w)} for w in women])
        couples = [(i, j) for j, i in held.items()]
    else:
        held = _deferred_acceptance(women, [{x: r for r, x in enumerate(m)} for m in men])
        couples = list(held.items())
    return Matching.from_couples(instance.n, instance.p, couples)
