"""Three-dimensional SMTI: men, women and children matched into triples.

Each man ranks (woman, child) pairs, each woman (man, child) pairs and each
child (man, woman) pairs, with the same tie-group conventions as the
two-sided problem.  A triple blocks a matching when all three of its
members strictly prefer it to their current assignment.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .errors import BoundExceededError, InvalidInstanceError, MalformedMatchingError
from .model import PersonRef, PreferenceList, Side, _as_plist, child, list_violations, man, woman

DEFAULT_BOUND_3D = 9


@dataclass(frozen=True)
class Smti3dInstance:
    men: tuple[PreferenceList, ...]
    women: tuple[PreferenceList, ...]
    children: tuple[PreferenceList, ...]

    def __post_init__(self):
        for name in ("men", "women", "children"):
            object.__setattr__(self, name, tuple(_as_plist(x) for x in getattr(self, name)))

    @property
    def n(self) -> int:
        return len(self.men)

    @property
    def p(self) -> int:
        return len(self.women)

    @property
    def r(self) -> int:
        return len(self.children)

    def persons(self) -> Iterator[PersonRef]:
        yield from map(man, range(1, self.n + 1))
        yield from map(woman, range(1, self.p + 1))
        yield from map(child, range(1, self.r + 1))


def _pair_check(first: int, second: int):
    def check(x):
        return (
            isinstance(x, tuple) and len(x) == 2 and all(isinstance(v, int) for v in x)
            and 1 <= x[0] <= first and 1 <= x[1] <= second
        )
    return check


def validate_instance_3d(instance: Smti3dInstance) -> list[str]:
    n, p, r = instance.n, instance.p, instance.r
    violations = []
    for label, lists, check in (
        ("m", instance.men, _pair_check(p, r)),
        ("w", instance.women, _pair_check(n, r)),
        ("c", instance.children, _pair_check(n, p)),
    ):
        for position, plist in enumerate(lists, start=1):
            violations += list_violations(plist, f"{label}{position}", check)
    return violations


def _require_valid(instance: Smti3dInstance) -> None:
    violations = validate_instance_3d(instance)
    if violations:
        raise InvalidInstanceError(violations)


@functools.total_ordering
@dataclass(frozen=True)
class Matching3:
    """Triples ``(i, j, k)`` of man, woman and child indices plus singles."""

    triples: frozenset[tuple[int, int, int]]
    singles: frozenset[PersonRef]

    def __post_init__(self):
        object.__setattr__(self, "triples", frozenset(tuple(t) for t in self.triples))
        object.__setattr__(self, "singles", frozenset(self.singles))

    @classmethod
    def from_triples(cls, n: int, p: int, r: int, triples) -> "Matching3":
        triples = frozenset(tuple(t) for t in triples)
        taken = {man(i) for i, _, _ in triples} | {woman(j) for _, j, _ in triples} | {child(k) for _, _, k in triples}
        everyone = [*map(man, range(1, n + 1)), *map(woman, range(1, p + 1)), *map(child, range(1, r + 1))]
        return cls(triples, frozenset(x for x in everyone if x not in taken))

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.triples)), tuple(sorted(self.singles)))

    def __lt__(self, other: "Matching3") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        parts = [f"(m{i},w{j},c{k})" for i, j, k in sorted(self.triples)]
        parts += [f"({x},{x},{x})" for x in sorted(self.singles)]
        return " ".join(parts)


def validate_matching_3d(instance: Smti3dInstance, matching: Matching3) -> list[str]:
    violations = []
    counts: dict[PersonRef, int] = {}
    limits = {Side.MAN: instance.n, Side.WOMAN: instance.p, Side.CHILD: instance.r}
    for i, j, k in matching.triples:
        for x in (man(i), woman(j), child(k)):
            counts[x] = counts.get(x, 0) + 1
    for x in matching.singles:
        counts[x] = counts.get(x, 0) + 1
    for x in counts:
        if not 1 <= x.index <= limits[x.side]:
            violations.append(f"{x} is not a person of the instance")
    for x in instance.persons():
        if counts.get(x, 0) == 0:
            violations.append(f"{x} does not occur in the matching")
        elif counts[x] > 1:
            violations.append(f"{x} occurs {counts[x]} times")
    return violations


def _ranks(instance: Smti3dInstance, matching: Matching3) -> dict[PersonRef, float]:
    violations = validate_matching_3d(instance, matching)
    if violations:
        raise MalformedMatchingError(violations)
    current: dict[PersonRef, float] = {}
    for i, j, k in matching.triples:
        for who, plist, pair in (
            (man(i), instance.men[i - 1], (j, k)),
            (woman(j), instance.women[j - 1], (i, k)),
            (child(k), instance.children[k - 1], (i, j)),
        ):
            rank = plist.rank(pair)
            current[who] = math.inf if rank is None else rank
    for x in matching.singles:
        current[x] = _lists(instance, x).self_rank
    return current


def _lists(instance: Smti3dInstance, who: PersonRef) -> PreferenceList:
    return {Side.MAN: instance.men, Side.WOMAN: instance.women, Side.CHILD: instance.children}[who.side][who.index - 1]


def blocking_triples(instance: Smti3dInstance, matching: Matching3) -> frozenset[tuple[int, int, int]]:
    """Triples outside the matching whose three members all strictly prefer them."""
    current = _ranks(instance, matching)
    found = set()
    for i, j, k in itertools.product(range(1, instance.n + 1), range(1, instance.p + 1), range(1, instance.r + 1)):
        if (i, j, k) in matching.triples:
            continue
        ranks = (instance.men[i - 1].rank((j, k)), instance.women[j - 1].rank((i, k)), instance.children[k - 1].rank((i, j)))
        if None in ranks:
            continue
        if all(rank < current[who] for rank, who in zip(ranks, (man(i), woman(j), child(k)))):
            found.add((i, j, k))
    return frozenset(found)


def blocking_individuals_3d(instance: Smti3dInstance, matching: Matching3) -> frozenset[PersonRef]:
    """Persons strictly preferring single to their assignment (unacceptable ones included)."""
    current = _ranks(instance, matching)
    return frozenset(x for x in instance.persons() if _lists(instance, x).self_rank < current[x])


def is_weakly_stable_3d(instance: Smti3dInstance, matching: Matching3) -> bool:
    return not blocking_triples(instance, matching) and not blocking_individuals_3d(instance, matching)


def _check(instance: Smti3dInstance, bound: int) -> None:
    _require_valid(instance)
    total = instance.n + instance.p + instance.r
    if total > bound:
        raise BoundExceededError(f"{total} persons exceed the 3D oracle bound of {bound}")


def _triple_sets(n, p, r, allowed) -> Iterator[list[tuple[int, int, int]]]:
    used_w = [False] * (p + 1)
    used_c = [False] * (r + 1)
    chosen: list[tuple[int, int, int]] = []

    def extend(i):
        if i > n:
            yield list(chosen)
            return
        yield from extend(i + 1)
        for j in range(1, p + 1):
            if used_w[j]:
                continue
            for k in range(1, r + 1):
                if used_c[k] or not allowed(i, j, k):
                    continue
                used_w[j] = used_c[k] = True
                chosen.append((i, j, k))
                yield from extend(i + 1)
                chosen.pop()
                used_w[j] = used_c[k] = False

    yield from extend(1)


def all_matchings_3d(instance: Smti3dInstance, bound: int = DEFAULT_BOUND_3D) -> list[Matching3]:
    """Every 3D matching, acceptable or not, in canonical order."""
    _check(instance, bound)
    n, p, r = instance.n, instance.p, instance.r
    return sorted(Matching3.from_triples(n, p, r, t) for t in _triple_sets(n, p, r, lambda i, j, k: True))


def enumerate_stable_3d(instance: Smti3dInstance, bound: int = DEFAULT_BOUND_3D) -> list[Matching3]:
    """All weakly stable 3D matchings, canonically sorted; may be empty."""
    _check(instance, bound)
    n, p, r = instance.n, instance.p, instance.r

    # a triple some member finds unacceptable always yields a blocking individual
    def acceptable(i, j, k):
        return (
            instance.men[i - 1].rank((j, k)) is not None
            and instance.women[j - 1].rank((i, k)) is not None
            and instance.children[k - 1].rank((i, j)) is not None
        )

    found = []
    for triples in _triple_sets(n, p, r, acceptable):
        matching = Matching3.from_triples(n, p, r, triples)
        if is_weakly_stable_3d(instance, matching):
            found.append(matching)
    return sorted(found)


def exists_stable_3d(instance: Smti3dInstance, bound: int = DEFAULT_BOUND_3D) -> bool:
    return bool(enumerate_stable_3d(instance, bound))


def matching3_from_answer_set(interp) -> Matching3:
    """Read the ``accept/3`` atoms of an answer set; ``accept(x,x,x)`` is a single."""
    triples, singles = set(), set()
    for x in interp:
        if x.predicate != "accept" or x.negated or len(x.args) != 3:
            continue
        refs = [PersonRef.parse(a) for a in x.args]
        if refs[0] == refs[1] == refs[2]:
            singles.add(refs[0])
        else:
            triples.add(tuple(ref.index for ref in refs))
    return Matching3(frozenset(triples), frozenset(singles))
