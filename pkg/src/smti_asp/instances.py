"""Instance files and random instance generation.

File format::

    smti                  # or smti3
    men 2
    women 3
                          # children R   (smti3 only)
    m 1 : (1) (2 3) ()
    m 2 : (2) (1)
    w 1 : (1 2) ()
    ...

Groups are listed in preference order and the last one is the neutral
group; indices that do not occur are unacceptable.  In ``smti3`` files
the entries are pairs written ``1,2``.  ``#`` starts a comment.  Persons
may be listed in any order; a person without a line has an empty list.
"""
from __future__ import annotations

import random
import re

from .errors import InvalidInstanceError, ParseError
from .model import PreferenceList, SmtiInstance, validate_instance
from .threedim import Smti3dInstance, validate_instance_3d

_LINE = re.compile(r"^\s*([mwc])\s+(\d+)\s*:(.*)$")
_GROUP = re.compile(r"\s*\(([^()]*)\)")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _parse_entry(token: str, pairs: bool, line_no: int, col: int):
    try:
        if pairs:
            a, b = token.split(",")
            return int(a), int(b)
        if "," in token:
            raise ValueError
        return int(token)
    except ValueError:
        kind = "an index pair like 1,2" if pairs else "an index"
        raise ParseError(f"expected {kind}, found {token!r}", line_no, col) from None


def _parse_groups(body: str, offset: int, pairs: bool, line_no: int) -> PreferenceList:
    groups = []
    pos = 0
    while pos < len(body):
        if not body[pos:].strip():
            break
        m = _GROUP.match(body, pos)
        if not m:
            col = offset + pos + len(body[pos:]) - len(body[pos:].lstrip()) + 1
            raise ParseError("expected a group in parentheses", line_no, col)
        inner_start = m.start(1)
        entries = []
        for tok in re.finditer(r"\S+", m.group(1)):
            entries.append(_parse_entry(tok.group(), pairs, line_no, offset + inner_start + tok.start() + 1))
        groups.append(entries)
        pos = m.end()
    if not groups:
        raise ParseError("a preference line needs at least one group", line_no, offset + len(body) + 1)
    return PreferenceList(tuple(groups))


def parse_instance(text: str) -> SmtiInstance | Smti3dInstance:
    """Parse and validate an instance file."""
    lines = [(k, _strip(raw)) for k, raw in enumerate(text.splitlines(), start=1)]
    lines = [(k, s) for k, s in lines if s.strip()]
    if not lines:
        raise ParseError("empty instance file", 1, 1)

    def header(position, keyword):
        if position >= len(lines):
            raise ParseError(f"missing '{keyword} <count>' line", lines[-1][0] + 1, 1)
        k, s = lines[position]
        parts = s.split()
        if len(parts) != 2 or parts[0] != keyword or not parts[1].isdigit():
            raise ParseError(f"expected '{keyword} <count>'", k, len(s) - len(s.lstrip()) + 1)
        return int(parts[1])

    k, kind = lines[0]
    kind = kind.strip()
    if kind not in ("smti", "smti3"):
        raise ParseError(f"expected 'smti' or 'smti3', found {kind!r}", k, 1)
    three = kind == "smti3"
    counts = {"m": header(1, "men"), "w": header(2, "women")}
    body_start = 3
    if three:
        counts["c"] = header(3, "children")
        body_start = 4
    lists = {side: [PreferenceList(())] * count for side, count in counts.items()}
    seen = set()
    for k, s in lines[body_start:]:
        m = _LINE.match(s)
        if not m:
            raise ParseError("expected a preference line like 'm 1 : (1) (2 3) ()'", k, len(s) - len(s.lstrip()) + 1)
        side, index = m.group(1), int(m.group(2))
        if side not in counts:
            raise ParseError(f"'{side}' lines are not allowed in {kind} files", k, m.start(1) + 1)
        if not 1 <= index <= counts[side]:
            raise ParseError(f"{side}{index} is out of range 1..{counts[side]}", k, m.start(2) + 1)
        if (side, index) in seen:
            raise ParseError(f"duplicate preference line for {side}{index}", k, m.start(1) + 1)
        seen.add((side, index))
        lists[side][index - 1] = _parse_groups(m.group(3), m.start(3), three, k)
    if three:
        instance = Smti3dInstance(tuple(lists["m"]), tuple(lists["w"]), tuple(lists["c"]))
        violations = validate_instance_3d(instance)
    else:
        instance = SmtiInstance(tuple(lists["m"]), tuple(lists["w"]))
        violations = validate_instance(instance)
    if violations:
        raise InvalidInstanceError(violations)
    return instance


def _format_entry(x) -> str:
    return f"{x[0]},{x[1]}" if isinstance(x, tuple) else str(x)


def _format_list(plist: PreferenceList) -> str:
    return " ".join("(" + " ".join(_format_entry(x) for x in sorted(group)) + ")" for group in plist.groups)


def format_instance(instance: SmtiInstance | Smti3dInstance) -> str:
    """Canonical file text; ``parse_instance(format_instance(x)) == x``."""
    if isinstance(instance, Smti3dInstance):
        out = ["smti3", f"men {instance.n}", f"women {instance.p}", f"children {instance.r}"]
        sides = (("m", instance.men), ("w", instance.women), ("c", instance.children))
    else:
        out = ["smti", f"men {instance.n}", f"women {instance.p}"]
        sides = (("m", instance.men), ("w", instance.women))
    for label, lists in sides:
        for index, plist in enumerate(lists, start=1):
            out.append(f"{label} {index} : {_format_list(plist)}")
    return "\n".join(out) + "\n"


def _check_probabilities(**probabilities) -> None:
    for name, value in probabilities.items():
        if not 0 <= value <= 1:
            raise ValueError(f"{name} must lie in [0, 1], got {value}")


def _random_list(rng: random.Random, items: list, ties: float, incomplete: float) -> PreferenceList:
    items = list(items)
    rng.shuffle(items)
    kept = [x for x in items if rng.random() >= incomplete]
    groups: list[list] = []
    for x in kept:
        if groups and rng.random() < ties:
            groups[-1].append(x)
        else:
            groups.append([x])
    # the last group is tied with single only with the tie probability
    if not groups or rng.random() >= ties:
        groups.append([])
    return PreferenceList(tuple(groups))


def generate_instance(n: int, p: int, tie_probability: float, incompleteness_probability: float, seed: int) -> SmtiInstance:
    """Random instance, deterministic for a fixed seed.

    Each list is a random order of the other side with every entry dropped
    with ``incompleteness_probability``; an entry joins the previous group
    with ``tie_probability``, and with the same probability the final group
    is left tied with staying single.
    """
    if n < 0 or p < 0:
        raise ValueError("side sizes must be non-negative")
    _check_probabilities(tie_probability=tie_probability, incompleteness_probability=incompleteness_probability)
    rng = random.Random(seed)
    men = tuple(_random_list(rng, range(1, p + 1), tie_probability, incompleteness_probability) for _ in range(n))
    women = tuple(_random_list(rng, range(1, n + 1), tie_probability, incompleteness_probability) for _ in range(p))
    return SmtiInstance(men, women)


def generate_instance_3d(n: int, p: int, r: int, tie_probability: float, incompleteness_probability: float, seed: int) -> Smti3dInstance:
    """3D analogue of :func:`generate_instance` over index pairs."""
    if min(n, p, r) < 0:
        raise ValueError("side sizes must be non-negative")
    _check_probabilities(tie_probability=tie_probability, incompleteness_probability=incompleteness_probability)
    rng = random.Random(seed)

    def pairs(a, b):
        return [(x, y) for x in range(1, a + 1) for y in range(1, b + 1)]

    men = tuple(_random_list(rng, pairs(p, r), tie_probability, incompleteness_probability) for _ in range(n))
    women = tuple(_random_list(rng, pairs(n, r), tie_probability, incompleteness_probability) for _ in range(p))
    children = tuple(_random_list(rng, pairs(n, p), tie_probability, incompleteness_probability) for _ in range(r))
    return Smti3dInstance(men, women, children)
