"""A small propositional answer-set kernel.

Ground programs may use disjunctive heads, classical negation (``-a``) and
negation as failure (``not a``).  Interpretations are frozensets of
literals.  Everything here is exact and exponential in the worst case, so
the public entry points carry explicit size bounds.

Text format, one rule per line::

    a v -b :- c, not d.     % disjunctive rule
    fact.
    :- not sat.             % constraint
"""
from __future__ import annotations

import graphlib
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import BoundExceededError, ParseError


@dataclass(frozen=True, order=True)
class Literal:
    predicate: str
    args: tuple[str, ...] = ()
    negated: bool = False

    def __str__(self) -> str:
        text = self.predicate + (f"({','.join(self.args)})" if self.args else "")
        return "-" + text if self.negated else text

    def __repr__(self) -> str:
        return f"Literal({self})"

    @property
    def atom(self) -> "Literal":
        return Literal(self.predicate, self.args) if self.negated else self

    def complement(self) -> "Literal":
        return Literal(self.predicate, self.args, not self.negated)


def lit(predicate: str, *args, negated: bool = False) -> Literal:
    return Literal(predicate, tuple(str(a) for a in args), negated)


Interpretation = frozenset  # of Literal


class Rule:
    """``head_1 v ... v head_k :- pos_1, ..., not naf_1, ...``

    Equality and hashing ignore literal order.  A rule with empty head and
    empty body is the unsatisfiable constraint; the parser rejects it but a
    reduct may produce it.
    """

    __slots__ = ("head", "pos_body", "naf_body")

    def __init__(self, head: Iterable[Literal] = (), pos_body: Iterable[Literal] = (), naf_body: Iterable[Literal] = ()):
        self.head = tuple(dict.fromkeys(head))
        self.pos_body = tuple(dict.fromkeys(pos_body))
        self.naf_body = tuple(dict.fromkeys(naf_body))

    def _key(self):
        return (frozenset(self.head), frozenset(self.pos_body), frozenset(self.naf_body))

    def __eq__(self, other):
        return isinstance(other, Rule) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Rule({self})"

    @property
    def is_fact(self) -> bool:
        return bool(self.head) and not self.pos_body and not self.naf_body

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def is_normal(self) -> bool:
        return len(self.head) <= 1

    def literals(self) -> Iterator[Literal]:
        yield from self.head
        yield from self.pos_body
        yield from self.naf_body

    def __str__(self) -> str:
        head = " v ".join(map(str, self.head))
        body = [str(x) for x in self.pos_body] + [f"not {x}" for x in self.naf_body]
        if not body:
            return f"{head}." if head else ":- ."
        return f"{head} :- {', '.join(body)}." if head else f":- {', '.join(body)}."


class Program:
    """Sequence of ground rules; equality is set equality of the rules."""

    def __init__(self, rules: Iterable[Rule] = ()):
        self.rules = tuple(rules)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __eq__(self, other):
        return isinstance(other, Program) and set(self.rules) == set(other.rules)

    def __hash__(self):
        return hash(frozenset(self.rules))

    def __repr__(self):
        return f"Program({len(self.rules)} rules)"

    @cached_property
    def universe(self) -> frozenset[Literal]:
        return frozenset(x for rule in self.rules for x in rule.literals())

    @property
    def is_normal(self) -> bool:
        return all(rule.is_normal for rule in self.rules)

    @property
    def is_naf_free(self) -> bool:
        return not any(rule.naf_body for rule in self.rules)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>%[^\n]*)|(?P<if>:-)|(?P<dot>\.)|(?P<comma>,)"
    r"|(?P<lpar>\()|(?P<rpar>\))|(?P<minus>-)|(?P<ident>[a-z0-9_][A-Za-z0-9_']*)"
)


def _tokenize(text: str):
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            yield kind, m.group(), line, pos - start + 1
        pos = m.end()
    yield "eof", "", line, pos - start + 1


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            expected = value or kind
            raise ParseError(f"expected {expected!r}, found {tok[1] or 'end of input'!r}", tok[2], tok[3])
        self.i += 1
        return tok

    def literal(self) -> Literal:
        negated = False
        if self.peek()[0] == "minus":
            self.take("minus")
            negated = True
        name = self.take("ident")
        if name[1] in ("not", "v"):
            raise ParseError(f"{name[1]!r} is reserved and cannot be a predicate", name[2], name[3])
        if not name[1][0].isalpha():
            raise ParseError(f"predicate must start with a letter: {name[1]!r}", name[2], name[3])
        args = []
        if self.peek()[0] == "lpar":
            self.take("lpar")
            args.append(self.take("ident")[1])
            while self.peek()[0] == "comma":
                self.take("comma")
                args.append(self.take("ident")[1])
            self.take("rpar")
        return Literal(name[1], tuple(args), negated)

    def rule(self) -> Rule:
        start = self.peek()
        head, pos, naf = [], [], []
        if start[0] != "if":
            head.append(self.literal())
            while self.peek()[:2] == ("ident", "v"):
                self.take("ident", "v")
                head.append(self.literal())
        if self.peek()[0] == "if":
            self.take("if")
            while True:
                if self.peek()[:2] == ("ident", "not") and self.tokens[self.i + 1][0] in ("ident", "minus"):
                    self.take("ident", "not")
                    naf.append(self.literal())
                else:
                    pos.append(self.literal())
                if self.peek()[0] != "comma":
                    break
                self.take("comma")
        self.take("dot")
        if not head and not pos and not naf:
            raise ParseError("empty rule", start[2], start[3])
        return Rule(head, pos, naf)

    def program(self) -> Program:
        rules = []
        while self.peek()[0] != "eof":
            rules.append(self.rule())
        return Program(rules)


def parse_program(text: str) -> Program:
    return _Parser(text).program()


def parse_literal(text: str) -> Literal:
    parser = _Parser(text)
    result = parser.literal()
    parser.take("eof")
    return result


# ------------------------------------------------------------- semantics

def is_consistent(interp: Iterable[Literal]) -> bool:
    interp = set(interp)
    return not any(x.negated and x.atom in interp for x in interp)


def reduct(program: Program, interp: Iterable[Literal]) -> Program:
    """Drop rules whose naf-body meets ``interp``; strip ``not`` from the rest."""
    interp = frozenset(interp)
    return Program(Rule(r.head, r.pos_body) for r in program if not interp.intersection(r.naf_body))


def _satisfies(interp: frozenset, rule: Rule) -> bool:
    return not interp.issuperset(rule.pos_body) or any(h in interp for h in rule.head)


def is_model(interp: Iterable[Literal], program: Program) -> bool:
    if not program.is_naf_free:
        raise ValueError("is_model expects a naf-free program")
    interp = frozenset(interp)
    return all(_satisfies(interp, rule) for rule in program)


def _has_smaller_model(interp: frozenset, rules: Iterable[Rule]) -> bool:
    """Whether some strict subset of ``interp`` is a model; ``interp`` must already be one."""
    rules = [r for r in rules if interp.issuperset(r.pos_body)]
    if all(r.is_normal for r in rules):
        least: set[Literal] = set()
        changed = True
        while changed:
            changed = False
            for r in rules:
                if r.head and r.head[0] not in least and least.issuperset(r.pos_body):
                    least.add(r.head[0])
                    changed = True
        return least != interp
    # subset search: variables are the members of interp, everything else false
    order = sorted(interp)
    var = {x: k + 1 for k, x in enumerate(order)}
    clauses = [[var[h] for h in r.head if h in var] + [-var[b] for b in r.pos_body] for r in rules]
    clauses.append([-v for v in var.values()])
    return next(_dpll(clauses, len(order)), None) is not None


def is_minimal_model(interp: Iterable[Literal], program: Program, max_size: int = 30) -> bool:
    interp = frozenset(interp)
    if not is_model(interp, program):
        return False
    if len(interp) > max_size:
        raise BoundExceededError(f"interpretation of size {len(interp)} exceeds the bound {max_size}")
    return not _has_smaller_model(interp, program.rules)


def _is_answer_set(program: Program, interp: frozenset) -> bool:
    if not is_consistent(interp):
        return False
    red = reduct(program, interp)
    return all(_satisfies(interp, r) for r in red) and not _has_smaller_model(interp, red.rules)


def is_answer_set(program: Program, interp: Iterable[Literal], max_size: int = 30) -> bool:
    """Gelfond-Lifschitz check: ``interp`` is a minimal model of its own reduct."""
    interp = frozenset(interp)
    if len(interp) > max_size:
        raise BoundExceededError(f"interpretation of size {len(interp)} exceeds the bound {max_size}")
    return _is_answer_set(program, interp)


# -------------------------------------------------- answer-set enumeration

class _Search:
    """Backtracking over literal truth values with model and support propagation.

    Rules are propagated as clauses (naf read as classical falsity), every
    true literal needs a rule whose body holds and whose other head
    literals are false, and a literal and its complement never both hold.
    Each total assignment is confirmed with the exact answer-set check.
    """

    def __init__(self, program: Program):
        self.program = program
        self.literals = sorted(program.universe)
        index = {x: k for k, x in enumerate(self.literals)}
        self.rules = [
            (tuple(index[x] for x in r.head), tuple(index[x] for x in r.pos_body), tuple(index[x] for x in r.naf_body))
            for r in program
        ]
        self.heads_of = [[] for _ in self.literals]
        for k, (head, _, _) in enumerate(self.rules):
            for h in head:
                self.heads_of[h].append(k)
        self.complement = [index.get(x.complement(), -1) for x in self.literals]
        naf_atoms = {v for _, _, naf in self.rules for v in naf}
        occurrences = [0] * len(self.literals)
        for head, pos, naf in self.rules:
            for v in (*head, *pos, *naf):
                occurrences[v] += 1
        self.order = sorted(range(len(self.literals)), key=lambda v: (v not in naf_atoms, -occurrences[v], v))

    def propagate(self, value: list) -> bool:
        rules, heads_of = self.rules, self.heads_of
        changed = True
        while changed:
            changed = False
            for v, val in enumerate(value):
                if val == 1:
                    c = self.complement[v]
                    if c >= 0:
                        if value[c] == 1:
                            return False
                        if value[c] == 0:
                            value[c] = -1
                            changed = True
            for head, pos, naf in rules:
                unknown = []
                falsified = False
                for b in pos:
                    if value[b] == -1:
                        falsified = True
                        break
                    if value[b] == 0:
                        unknown.append((b, -1))
                if falsified:
                    continue
                for b in naf:
                    if value[b] == 1:
                        falsified = True
                        break
                    if value[b] == 0:
                        unknown.append((b, 1))
                if falsified:
                    continue
                open_heads = []
                satisfied = False
                for h in head:
                    if value[h] == 1:
                        satisfied = True
                        break
                    if value[h] == 0:
                        open_heads.append(h)
                if satisfied:
                    continue
                if not unknown:
                    if not open_heads:
                        return False
                    if len(open_heads) == 1:
                        value[open_heads[0]] = 1
                        changed = True
                elif not open_heads and len(unknown) == 1:
                    b, falsity = unknown[0]
                    value[b] = falsity
                    changed = True
            for v, val in enumerate(value):
                if val == -1:
                    continue
                support = []
                for k in heads_of[v]:
                    head, pos, naf = rules[k]
                    if any(value[b] == -1 for b in pos) or any(value[b] == 1 for b in naf):
                        continue
                    if any(value[h] == 1 for h in head if h != v):
                        continue
                    support.append(k)
                    if len(support) > 1:
                        break
                if not support:
                    if val == 1:
                        return False
                    value[v] = -1
                    changed = True
                elif val == 1 and len(support) == 1:
                    head, pos, naf = rules[support[0]]
                    forced = [(b, 1) for b in pos] + [(b, -1) for b in naf] + [(h, -1) for h in head if h != v]
                    for b, want in forced:
                        if value[b] == -want:
                            return False
                        if value[b] == 0:
                            value[b] = want
                            changed = True
        return True

    def run(self) -> Iterator[frozenset]:
        stack = [[0] * len(self.literals)]
        while stack:
            value = stack.pop()
            if not self.propagate(value):
                continue
            branch = next((v for v in self.order if value[v] == 0), None)
            if branch is None:
                interp = frozenset(x for x, val in zip(self.literals, value) if val == 1)
                if _is_answer_set(self.program, interp):
                    yield interp
                continue
            for choice in (-1, 1):
                nxt = list(value)
                nxt[branch] = choice
                stack.append(nxt)


def interp_key(interp: Iterable[Literal]) -> tuple:
    return tuple(sorted(interp))


def enumerate_answer_sets(program: Program, max_atoms: int | None = 26) -> list[frozenset]:
    """All answer sets, sorted by their sorted literal lists.

    ``max_atoms`` bounds the number of literals in the program's universe;
    pass None to lift the bound.
    """
    size = len(program.universe)
    if max_atoms is not None and size > max_atoms:
        raise BoundExceededError(f"program mentions {size} literals, above max_atoms={max_atoms}")
    return sorted(set(_Search(program).run()), key=interp_key)


def project(interp: Iterable[Literal], *predicates: str) -> frozenset:
    """Restrict an interpretation to positive literals of the given predicates."""
    return frozenset(x for x in interp if not x.negated and x.predicate in predicates)


# --------------------------------------------------------------- completion

SignedAtom = tuple  # (Literal, bool): the literal, and True for a positive occurrence


@dataclass(frozen=True)
class ClauseSet:
    """CNF over program atoms; ``auxiliary`` names helper variables for multi-body atoms."""

    clauses: tuple[tuple[SignedAtom, ...], ...]
    variables: frozenset[Literal]
    auxiliary: frozenset[Literal] = frozenset()

    def _key(self):
        return (frozenset(frozenset(c) for c in self.clauses), self.variables, self.auxiliary)

    def __eq__(self, other):
        return isinstance(other, ClauseSet) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __len__(self):
        return len(self.clauses)


def equivalence_clauses(head: Literal, bodies: list[list[SignedAtom]], fresh) -> list[tuple[SignedAtom, ...]]:
    """Clauses for ``head <-> body_1 v ... v body_k`` with conjunctive bodies.

    No bodies means ``head <-> false``; an empty body means ``head <-> true``.
    ``fresh()`` supplies an auxiliary variable for a multi-literal body when
    there is more than one body.
    """
    if not bodies:
        return [((head, False),)]
    if any(not body for body in bodies):
        return [((head, True),)]
    if len(bodies) == 1:
        body = bodies[0]
        clauses = [((head, False), b) for b in body]
        clauses.append(((head, True),) + tuple((x, not sign) for x, sign in body))
        return clauses
    clauses = []
    disjuncts = []
    for body in bodies:
        if len(body) == 1:
            disjuncts.append(body[0])
            continue
        aux = fresh()
        clauses += equivalence_clauses(aux, [body], fresh)
        disjuncts.append((aux, True))
    clauses.append(((head, False),) + tuple(disjuncts))
    clauses += [((head, True), (x, not sign)) for x, sign in disjuncts]
    return clauses


def completion(program: Program) -> ClauseSet:
    """Clark completion of a normal program, clausified.

    Classically negated literals are treated as independent variables.
    """
    if not program.is_normal:
        raise ValueError("completion is defined for normal programs only")
    bodies: dict[Literal, list[list[SignedAtom]]] = {x: [] for x in program.universe}
    constraints = []
    for rule in program:
        body = [(x, True) for x in rule.pos_body] + [(x, False) for x in rule.naf_body]
        if rule.head:
            bodies[rule.head[0]].append(body)
        else:
            constraints.append(body)
    auxiliary = []

    def fresh():
        aux = Literal("auxbody", (str(len(auxiliary) + 1),))
        auxiliary.append(aux)
        return aux

    clauses = []
    for atom in sorted(bodies):
        clauses += equivalence_clauses(atom, bodies[atom], fresh)
    for body in constraints:
        clauses.append(tuple((x, not sign) for x, sign in body))
    return ClauseSet(tuple(clauses), frozenset(bodies), frozenset(auxiliary))


def _dpll(clauses: list[list[int]], nvars: int) -> Iterator[dict[int, bool]]:
    """All satisfying total assignments of an integer CNF (DIMACS-style literals)."""

    def simplify(cls, literal):
        out = []
        for c in cls:
            if literal in c:
                continue
            if -literal in c:
                c = [x for x in c if x != -literal]
                if not c:
                    return None
            out.append(c)
        return out

    def solve(cls, assignment):
        while True:
            unit = next((c[0] for c in cls if len(c) == 1), None)
            if unit is None:
                break
            assignment = {**assignment, abs(unit): unit > 0}
            cls = simplify(cls, unit)
            if cls is None:
                return
        free = next((v for v in range(1, nvars + 1) if v not in assignment), None)
        if free is None:
            yield assignment
            return
        for literal in (free, -free):
            nxt = simplify(cls, literal)
            if nxt is not None:
                yield from solve(nxt, {**assignment, free: literal > 0})

    if any(not c for c in clauses):
        return
    yield from solve([list(dict.fromkeys(c)) for c in clauses], {})


def models_of_completion(clauses: ClauseSet, max_clauses: int = 20000) -> list[frozenset]:
    """Every model of the clause set as its set of true non-auxiliary variables, sorted."""
    if len(clauses.clauses) > max_clauses:
        raise BoundExceededError(f"{len(clauses.clauses)} clauses exceed max_clauses={max_clauses}")
    names = sorted(clauses.variables | clauses.auxiliary | {x for c in clauses.clauses for x, _ in c})
    var = {x: k + 1 for k, x in enumerate(names)}
    cnf = [[var[x] if sign else -var[x] for x, sign in c] for c in clauses.clauses]
    models = {
        frozenset(names[v - 1] for v, val in assignment.items() if val and names[v - 1] not in clauses.auxiliary)
        for assignment in _dpll(cnf, len(names))
    }
    return sorted(models, key=interp_key)


def is_tight(program: Program) -> bool:
    """No cycle through positive body literals (self-loops included)."""
    graph = {}
    for rule in program:
        for h in rule.head:
            graph.setdefault(h, set()).update(rule.pos_body)
    try:
        graphlib.TopologicalSorter(graph).prepare()
    except graphlib.CycleError:
        return False
    return True
