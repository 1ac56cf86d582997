"""Stable marriage instances with ties and incomplete lists (SMTI).

A preference list is a sequence of tie-groups.  The last group is special:
its members are tied with staying single, so it is the only group allowed
to be empty.  Persons are referenced 1-based (``m1``, ``w3``) and a single
person is represented as a self-pair ``(x, x)``.
"""
from __future__ import annotations

import enum
import functools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping

from .errors import MalformedMatchingError, UnacceptablePartnerError


class Side(enum.Enum):
    MAN = "m"
    WOMAN = "w"
    CHILD = "c"


_SIDE_ORDER = {Side.MAN: 0, Side.WOMAN: 1, Side.CHILD: 2}
_PERSON_RE = re.compile(r"^([mwc])_?(\d+)$")


@functools.total_ordering
@dataclass(frozen=True)
class PersonRef:
    side: Side
    index: int

    def __str__(self) -> str:
        return f"{self.side.value}{self.index}"

    def __repr__(self) -> str:
        return f"PersonRef({self})"

    def __lt__(self, other: "PersonRef") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple[int, int]:
        return (_SIDE_ORDER[self.side], self.index)

    @classmethod
    def parse(cls, text: str) -> "PersonRef":
        """Parse ``m1``, ``w12`` or ``c3`` (an underscore after the letter is tolerated)."""
        match = _PERSON_RE.match(text.strip())
        if not match or int(match.group(2)) < 1:
            raise ValueError(f"not a person reference: {text!r}")
        return cls(Side(match.group(1)), int(match.group(2)))


def man(i: int) -> PersonRef:
    return PersonRef(Side.MAN, i)


def woman(j: int) -> PersonRef:
    return PersonRef(Side.WOMAN, j)


def child(k: int) -> PersonRef:
    return PersonRef(Side.CHILD, k)


@dataclass(frozen=True)
class PreferenceList:
    """Ordered tie-groups of partner indices (index pairs for the 3D variant).

    ``PreferenceList([[1], [2, 3], []])`` ranks partner 1 first, ties 2 and 3
    second and has an empty neutral group.  An empty sequence of groups is
    normalised to a single empty group.
    """

    groups: tuple[frozenset, ...]

    def __post_init__(self):
        groups = tuple(frozenset(g) for g in self.groups)
        object.__setattr__(self, "groups", groups or (frozenset(),))

    @classmethod
    def of(cls, *groups: Iterable[Hashable]) -> "PreferenceList":
        return cls(tuple(groups))

    def __len__(self) -> int:
        return len(self.groups)

    @cached_property
    def _ranks(self) -> dict:
        ranks = {}
        for position, group in enumerate(self.groups):
            for item in group:
                ranks.setdefault(item, position)
        return ranks

    @property
    def self_rank(self) -> int:
        """Group position of staying single: tied with the neutral group."""
        return len(self.groups) - 1

    def rank(self, item) -> int | None:
        """0-based group position of ``item``, or None when it is unacceptable."""
        return self._ranks.get(item)

    def acceptable(self) -> frozenset:
        return frozenset(self._ranks)

    def neutral(self) -> frozenset:
        return self.groups[-1]

    def preferred(self) -> frozenset:
        return self.acceptable() - self.neutral()

    def unacceptable(self, partner_count: int) -> frozenset:
        return frozenset(range(1, partner_count + 1)) - self.acceptable()

    def ordered(self) -> list:
        """Acceptable partners in preference order, ties by ascending index."""
        return [item for group in self.groups for item in sorted(group)]


def acceptable_set(plist: PreferenceList) -> frozenset:
    return plist.acceptable()


def preferred_set(plist: PreferenceList) -> frozenset:
    return plist.preferred()


def neutral_set(plist: PreferenceList) -> frozenset:
    return plist.neutral()


def unacceptable_set(plist: PreferenceList, partner_count: int) -> frozenset:
    return plist.unacceptable(partner_count)


def _as_plist(value) -> PreferenceList:
    return value if isinstance(value, PreferenceList) else PreferenceList(tuple(value))


@dataclass(frozen=True)
class SmtiInstance:
    men: tuple[PreferenceList, ...]
    women: tuple[PreferenceList, ...]

    def __post_init__(self):
        object.__setattr__(self, "men", tuple(_as_plist(x) for x in self.men))
        object.__setattr__(self, "women", tuple(_as_plist(x) for x in self.women))

    @property
    def n(self) -> int:
        return len(self.men)

    @property
    def p(self) -> int:
        return len(self.women)

    def persons(self) -> Iterator[PersonRef]:
        for i in range(1, self.n + 1):
            yield man(i)
        for j in range(1, self.p + 1):
            yield woman(j)

    def preferences(self, who: PersonRef) -> PreferenceList:
        if who.side is Side.MAN:
            return self.men[who.index - 1]
        if who.side is Side.WOMAN:
            return self.women[who.index - 1]
        raise ValueError(f"{who} is not part of a two-sided instance")


def _partner_rank(instance: SmtiInstance, who: PersonRef, partner: PersonRef) -> int | None:
    plist = instance.preferences(who)
    if partner == who:
        return plist.self_rank
    if {who.side, partner.side} != {Side.MAN, Side.WOMAN}:
        raise ValueError(f"{who} cannot be paired with {partner}")
    return plist.rank(partner.index)


def _checked_rank(instance: SmtiInstance, who: PersonRef, partner: PersonRef) -> int:
    rank = _partner_rank(instance, who, partner)
    if rank is None:
        raise UnacceptablePartnerError(f"{partner} is unacceptable to {who}")
    return rank


def prefers_strictly(instance: SmtiInstance, who: PersonRef, a: PersonRef, b: PersonRef) -> bool:
    """True iff ``who`` strictly prefers ``a`` to ``b``; ``who`` itself means staying single."""
    return _checked_rank(instance, who, a) < _checked_rank(instance, who, b)


def partner_cost(instance: SmtiInstance, who: PersonRef, partner: PersonRef) -> int:
    """Number of options ``who`` strictly prefers to ``partner``, plus one."""
    rank = _checked_rank(instance, who, partner)
    plist = instance.preferences(who)
    return sum(len(group) for group in plist.groups[:rank]) + 1


@functools.total_ordering
@dataclass(frozen=True)
class Matching:
    """Man-woman couples plus singles, the latter stored as self-pairs."""

    pairs: frozenset[tuple[PersonRef, PersonRef]]

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(tuple(pair) for pair in self.pairs))

    @classmethod
    def from_couples(cls, n: int, p: int, couples: Iterable[tuple[int, int]]) -> "Matching":
        """Build a matching from ``(i, j)`` couples; everyone else is single."""
        couples = list(couples)
        taken = {man(i) for i, _ in couples} | {woman(j) for _, j in couples}
        pairs = {(man(i), woman(j)) for i, j in couples}
        pairs |= {(x, x) for x in [*map(man, range(1, n + 1)), *map(woman, range(1, p + 1))] if x not in taken}
        return cls(frozenset(pairs))

    @property
    def couples(self) -> list[tuple[int, int]]:
        return sorted((a.index, b.index) for a, b in self.pairs if a != b)

    @property
    def singles(self) -> list[PersonRef]:
        return sorted(a for a, b in self.pairs if a == b)

    def partner_map(self) -> dict[PersonRef, PersonRef]:
        mapping = {}
        for a, b in self.pairs:
            mapping[a] = b
            mapping[b] = a
        return mapping

    def partner(self, who: PersonRef) -> PersonRef:
        return self.partner_map()[who]

    def sorted_pairs(self) -> list[tuple[PersonRef, PersonRef]]:
        return sorted(self.pairs, key=_pair_key)

    def sort_key(self) -> tuple:
        return tuple(_pair_key(pair) for pair in self.sorted_pairs())

    def __lt__(self, other: "Matching") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return " ".join(f"({a},{b})" for a, b in self.sorted_pairs())

    def to_text(self) -> str:
        """Compact ``m1-w3,m2-w1`` form used on the command line (singles implied)."""
        return ",".join(f"m{i}-w{j}" for i, j in self.couples)


def _pair_key(pair: tuple[PersonRef, PersonRef]) -> tuple:
    a, b = pair
    if a == b:
        return (1 + _SIDE_ORDER[a.side], a.index)
    return (0, a.index, b.index)


@dataclass(frozen=True)
class BlockReport:
    blocking_pairs: frozenset[tuple[int, int]]
    blocking_individuals: frozenset[PersonRef]
    unacceptable_pairings: frozenset[tuple[int, int]]

    @property
    def stable(self) -> bool:
        return not (self.blocking_pairs or self.blocking_individuals or self.unacceptable_pairings)


def validate_instance(instance: SmtiInstance) -> list[str]:
    violations = []
    for label, lists, partners in (("m", instance.men, instance.p), ("w", instance.women, instance.n)):
        for position, plist in enumerate(lists, start=1):
            violations += list_violations(
                plist, f"{label}{position}", lambda x, k=partners: isinstance(x, int) and 1 <= x <= k
            )
    return violations


def list_violations(plist: PreferenceList, label: str, in_range) -> list[str]:
    """Invariant violations of one preference list; ``in_range`` checks a single entry."""
    violations = []
    seen = set()
    for position, group in enumerate(plist.groups, start=1):
        if not group and position < len(plist.groups):
            violations.append(f"{label}: group {position} is empty but is not the last group")
        overlap = seen & group
        if overlap:
            violations.append(f"{label}: groups are not disjoint ({sorted(overlap)} repeated)")
        seen |= group
        bad = [x for x in group if not in_range(x)]
        if bad:
            violations.append(f"{label}: entries out of range: {sorted(bad, key=repr)}")
    return violations


def validate_matching(instance: SmtiInstance, matching: Matching) -> list[str]:
    violations = []
    counts: dict[PersonRef, int] = {}
    limits = {Side.MAN: instance.n, Side.WOMAN: instance.p}
    for a, b in matching.pairs:
        if a != b and (a.side, b.side) != (Side.MAN, Side.WOMAN):
            violations.append(f"pair ({a},{b}) is neither man-woman nor a self-pair")
        for x in {a, b}:
            if x.side not in limits or not 1 <= x.index <= limits[x.side]:
                violations.append(f"{x} is not a person of the instance")
            counts[x] = counts.get(x, 0) + 1
    for x in instance.persons():
        if counts.get(x, 0) == 0:
            violations.append(f"{x} does not occur in the matching")
        elif counts[x] > 1:
            violations.append(f"{x} occurs in {counts[x]} pairs")
    return violations


def _require_valid(instance: SmtiInstance, matching: Matching) -> dict[PersonRef, PersonRef]:
    violations = validate_matching(instance, matching)
    if violations:
        raise MalformedMatchingError(violations)
    return matching.partner_map()


def block_report(instance: SmtiInstance, matching: Matching) -> BlockReport:
    partner = _require_valid(instance, matching)

    def current_rank(x):
        rank = _partner_rank(instance, x, partner[x])
        return math.inf if rank is None else rank

    current = {x: current_rank(x) for x in instance.persons()}
    pairs = set()
    for i in range(1, instance.n + 1):
        m = man(i)
        for j in range(1, instance.p + 1):
            w = woman(j)
            if partner[m] == w:
                continue
            rank_m = instance.men[i - 1].rank(j)
            rank_w = instance.women[j - 1].rank(i)
            if rank_m is not None and rank_w is not None and rank_m < current[m] and rank_w < current[w]:
                pairs.add((i, j))
    individuals = {x for x in instance.persons() if instance.preferences(x).self_rank < current[x]}
    unacceptable = {
        (a.index, b.index)
        for a, b in matching.pairs
        if a != b and (instance.men[a.index - 1].rank(b.index) is None or instance.women[b.index - 1].rank(a.index) is None)
    }
    return BlockReport(frozenset(pairs), frozenset(individuals), frozenset(unacceptable))


def blocking_pairs(instance: SmtiInstance, matching: Matching) -> frozenset[tuple[int, int]]:
    return block_report(instance, matching).blocking_pairs


def blocking_individuals(instance: SmtiInstance, matching: Matching) -> frozenset[PersonRef]:
    return block_report(instance, matching).blocking_individuals


def is_weakly_stable(instance: SmtiInstance, matching: Matching) -> bool:
    return block_report(instance, matching).stable


class CriterionKind(enum.Enum):
    SEX_EQUAL = "sexeq"
    EGALITARIAN = "egal"
    REGRET = "regret"
    SINGLES = "singles"
    MAN_WEIGHT = "man-weight"
    WOMAN_WEIGHT = "woman-weight"


class Direction(enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


@dataclass(frozen=True)
class Criterion:
    kind: CriterionKind
    direction: Direction = Direction.MINIMIZE

    @classmethod
    def parse(cls, kind: str, direction: str = "min") -> "Criterion":
        return cls(CriterionKind(kind), Direction(direction))

    def better(self, a: int, b: int) -> bool:
        return a < b if self.direction is Direction.MINIMIZE else a > b

    def __str__(self) -> str:
        return f"{self.kind.value}/{self.direction.value}"


@dataclass(frozen=True)
class CostReport:
    per_person_cost: Mapping[PersonRef, int]
    man_weight: int
    woman_weight: int
    sexeq: int
    weight: int
    regret: int
    singles: int

    def value(self, criterion: Criterion | CriterionKind) -> int:
        kind = criterion.kind if isinstance(criterion, Criterion) else criterion
        return {
            CriterionKind.SEX_EQUAL: self.sexeq,
            CriterionKind.EGALITARIAN: self.weight,
            CriterionKind.REGRET: self.regret,
            CriterionKind.SINGLES: self.singles,
            CriterionKind.MAN_WEIGHT: self.man_weight,
            CriterionKind.WOMAN_WEIGHT: self.woman_weight,
        }[kind]


def matching_cost(instance: SmtiInstance, matching: Matching) -> CostReport:
    """All four optimality costs of ``matching`` plus the per-side weights.

    Raises UnacceptablePartnerError if someone is paired with a partner
    outside their ordering, since costs are undefined there.
    """
    partner = _require_valid(instance, matching)
    costs = {x: partner_cost(instance, x, partner[x]) for x in instance.persons()}
    man_weight = sum(c for x, c in costs.items() if x.side is Side.MAN)
    woman_weight = sum(c for x, c in costs.items() if x.side is Side.WOMAN)
    return CostReport(
        per_person_cost=costs,
        man_weight=man_weight,
        woman_weight=woman_weight,
        sexeq=abs(man_weight - woman_weight),
        weight=man_weight + woman_weight,
        regret=max(costs.values(), default=0),
        singles=sum(1 for a, b in matching.pairs if a == b),
    )


def criterion_value(instance: SmtiInstance, matching: Matching, criterion: Criterion) -> int:
    return matching_cost(instance, matching).value(criterion)
