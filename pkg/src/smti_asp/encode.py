"""Grounding SMTI instances into answer-set programs.

Constants are ``m1``, ``w2``, ``c3``; a single person ``x`` is the atom
``accept(x,x)`` (``accept(x,x,x)`` in three dimensions).  Predicate names
follow the usual encoding: ``accept``, ``manpropose``, ``womanpropose``,
``manprop``/``womprop``/``childprop`` for triples, and the cost and
saturation predicates of the optimisation programs.

The optimisation programs use DLV aggregates (``#sum``, ``#max``,
``#count``, ``#succ``, ``#int``) and are therefore produced as text only;
they are meant for an external DLV-compatible solver.  Their answers are
the stable matchings that :func:`smti_asp.oracle.optimize` returns.
"""
from __future__ import annotations

from .asp import ClauseSet, Literal, Program, Rule, equivalence_clauses, lit
from .errors import InvalidInstanceError
from .model import (
    Criterion,
    CriterionKind,
    Direction,
    Matching,
    PersonRef,
    PreferenceList,
    SmtiInstance,
    man,
    partner_cost,
    validate_instance,
    woman,
)

# Grounded rule count bounds c * k**e for k = max(n, p[, r]) >= 2 and
# complete strict lists.  Each count divided by k**e is largest at k = 2 and
# decreases from there, so the constant is the k = 2 ratio rounded up.
#   normal:       k^2 accept rules + 2k single rules + 2k^2 propose rules
#   disjunctive:  3k^2 + 2k persons with 1 + 2k + k(k-1)/2 rules each
#   3d:           k^3 accept rules + 3k single rules + 3k^3 propose rules
#   regret/singles opt: the max- and sum-chains over (k-1) (k+1)^2 groundings
#   sexeq/egal opt: the weight-difference and sat rules over O(k^2) x O(k^2) values
GROUND_SIZE_BOUNDS = {
    "normal": (4, 2),
    "disjunctive": (5, 3),
    "3d": (5, 3),
    "regret": (29, 3),
    "singles": (29, 3),
    "sexeq": (21, 4),
    "egal": (21, 4),
}


def _require_valid(instance: SmtiInstance) -> None:
    violations = validate_instance(instance)
    if violations:
        raise InvalidInstanceError(violations)


def accept(*args) -> Literal:
    return lit("accept", *args)


def manpropose(m, w) -> Literal:
    return lit("manpropose", m, w)


def womanpropose(m, w) -> Literal:
    return lit("womanpropose", m, w)


def _neg(x: Literal) -> Literal:
    return x.complement()


def _weakly_better(plist: PreferenceList, item) -> tuple[list, bool]:
    """Partners at least as good as ``item`` other than itself, and whether single is among them."""
    rank = plist.rank(item)
    others = [x for x in plist.ordered() if x != item and plist.rank(x) <= rank]
    return others, plist.self_rank <= rank


def encode_smti(instance: SmtiInstance) -> Program:
    """Normal program whose answer sets are the weakly stable matchings."""
    _require_valid(instance)
    rules = []
    for i in range(1, instance.n + 1):
        for j in range(1, instance.p + 1):
            m, w = f"m{i}", f"w{j}"
            rules.append(Rule([accept(m, w)], [manpropose(m, w), womanpropose(m, w)]))
    for i, plist in enumerate(instance.men, start=1):
        m = f"m{i}"
        rules.append(Rule([accept(m, m)], naf_body=[accept(m, f"w{k}") for k in plist.ordered()]))
        for j in plist.ordered():
            others, single = _weakly_better(plist, j)
            naf = [accept(m, f"w{x}") for x in others] + ([accept(m, m)] if single else [])
            rules.append(Rule([manpropose(m, f"w{j}")], naf_body=naf))
    for j, plist in enumerate(instance.women, start=1):
        w = f"w{j}"
        rules.append(Rule([accept(w, w)], naf_body=[accept(f"m{k}", w) for k in plist.ordered()]))
        for i in plist.ordered():
            others, single = _weakly_better(plist, i)
            naf = [accept(f"m{x}", w) for x in others] + ([accept(w, w)] if single else [])
            rules.append(Rule([womanpropose(f"m{i}", w)], naf_body=naf))
    return Program(rules)


def encode_smti_disjunctive(instance: SmtiInstance) -> Program:
    """Naf-free disjunctive program obtained from the clausified completion."""
    _require_valid(instance)
    n, p = instance.n, instance.p
    rules = []
    for i in range(1, n + 1):
        for j in range(1, p + 1):
            m, w = f"m{i}", f"w{j}"
            a, mp, wp = accept(m, w), manpropose(m, w), womanpropose(m, w)
            rules += [Rule([_neg(a), mp]), Rule([_neg(a), wp]), Rule([a, _neg(mp), _neg(wp)])]

    def side(lists, me, partner, couple, propose, partner_count):
        for idx, plist in enumerate(lists, start=1):
            x = me(idx)
            single = accept(x, x)
            options = [accept(*couple(x, partner(k))) for k in plist.ordered()]
            rules.append(Rule(options + [single]))
            rules.extend(Rule([_neg(single), _neg(o)]) for o in options)
            for k in plist.ordered():
                others, tied_single = _weakly_better(plist, k)
                better = [accept(*couple(x, partner(o))) for o in others] + ([single] if tied_single else [])
                prop = propose(*couple(x, partner(k)))
                rules.extend(Rule([_neg(prop), _neg(b)]) for b in better)
                rules.append(Rule(better + [prop]))
            for k in sorted(plist.unacceptable(partner_count)):
                rules.append(Rule([_neg(propose(*couple(x, partner(k))))]))

    side(instance.men, lambda i: f"m{i}", lambda k: f"w{k}", lambda x, y: (x, y), manpropose, p)
    side(instance.women, lambda j: f"w{j}", lambda k: f"m{k}", lambda x, y: (y, x), womanpropose, n)
    return Program(rules)


def _no_aux():
    raise AssertionError("each atom of the induced program has a single defining formula")


def encode_completion(instance: SmtiInstance) -> ClauseSet:
    """Completion of :func:`encode_smti`, built directly from its equivalences."""
    _require_valid(instance)
    n, p = instance.n, instance.p
    variables = set()
    clauses = []

    def define(atom, body):
        variables.add(atom)
        variables.update(x for x, _ in body or ())
        clauses.extend(equivalence_clauses(atom, [] if body is None else [body], _no_aux))

    for i in range(1, n + 1):
        for j in range(1, p + 1):
            m, w = f"m{i}", f"w{j}"
            define(accept(m, w), [(manpropose(m, w), True), (womanpropose(m, w), True)])
    for i, plist in enumerate(instance.men, start=1):
        m = f"m{i}"
        define(accept(m, m), [(accept(m, f"w{k}"), False) for k in plist.ordered()])
        for j in range(1, p + 1):
            if plist.rank(j) is None:
                define(manpropose(m, f"w{j}"), None)
                continue
            others, single = _weakly_better(plist, j)
            body = [(accept(m, f"w{x}"), False) for x in others] + ([(accept(m, m), False)] if single else [])
            define(manpropose(m, f"w{j}"), body)
    for j, plist in enumerate(instance.women, start=1):
        w = f"w{j}"
        define(accept(w, w), [(accept(f"m{k}", w), False) for k in plist.ordered()])
        for i in range(1, n + 1):
            if plist.rank(i) is None:
                define(womanpropose(f"m{i}", w), None)
                continue
            others, single = _weakly_better(plist, i)
            body = [(accept(f"m{x}", w), False) for x in others] + ([(accept(w, w), False)] if single else [])
            define(womanpropose(f"m{i}", w), body)
    return ClauseSet(tuple(clauses), frozenset(variables))


def matching_answer_set(instance: SmtiInstance, matching: Matching) -> frozenset[Literal]:
    """The answer set of :func:`encode_smti` that corresponds to a weakly stable matching.

    A person proposes to every partner strictly preferred to their current
    one, and to the current partner itself.
    """
    partner = matching.partner_map()
    interp = {accept(str(a), str(b)) for a, b in matching.pairs}
    for i, plist in enumerate(instance.men, start=1):
        current = partner[man(i)]
        rank = plist.self_rank if current == man(i) else plist.rank(current.index)
        for j in plist.acceptable():
            if plist.rank(j) < rank or current == woman(j):
                interp.add(manpropose(f"m{i}", f"w{j}"))
    for j, plist in enumerate(instance.women, start=1):
        current = partner[woman(j)]
        rank = plist.self_rank if current == woman(j) else plist.rank(current.index)
        for i in plist.acceptable():
            if plist.rank(i) < rank or current == man(i):
                interp.add(womanpropose(f"m{i}", f"w{j}"))
    return frozenset(interp)


def matching_from_answer_set(interp) -> Matching:
    """Read the ``accept/2`` atoms of an answer set as a matching."""
    return Matching(frozenset(
        (PersonRef.parse(x.args[0]), PersonRef.parse(x.args[1]))
        for x in interp
        if x.predicate == "accept" and not x.negated and len(x.args) == 2
    ))


# ------------------------------------------------------------------ 3D

def encode_smti_3d(instance) -> Program:
    """Normal program whose answer sets are the weakly stable 3D matchings."""
    from .threedim import validate_instance_3d

    violations = validate_instance_3d(instance)
    if violations:
        raise InvalidInstanceError(violations)
    n, p, r = instance.n, instance.p, instance.r
    rules = []
    for i in range(1, n + 1):
        for j in range(1, p + 1):
            for k in range(1, r + 1):
                t = (f"m{i}", f"w{j}", f"c{k}")
                rules.append(Rule([accept(*t)], [lit("manprop", *t), lit("womprop", *t), lit("childprop", *t)]))

    def side(lists, label, triple, predicate):
        for idx, plist in enumerate(lists, start=1):
            x = f"{label}{idx}"
            single = accept(x, x, x)
            rules.append(Rule([single], naf_body=[accept(*triple(x, pair)) for pair in plist.ordered()]))
            for pair in plist.ordered():
                others, tied_single = _weakly_better(plist, pair)
                naf = [accept(*triple(x, o)) for o in others] + ([single] if tied_single else [])
                rules.append(Rule([lit(predicate, *triple(x, pair))], naf_body=naf))

    side(instance.men, "m", lambda x, pr: (x, f"w{pr[0]}", f"c{pr[1]}"), "manprop")
    side(instance.women, "w", lambda x, pr: (f"m{pr[0]}", x, f"c{pr[1]}"), "womprop")
    side(instance.children, "c", lambda x, pr: (f"m{pr[0]}", f"w{pr[1]}", x), "childprop")
    return Program(rules)


# ------------------------------------------------------------ emission

def emit_dlv(obj) -> str:
    """DLV text for a ground program, or for a clause set as guess-and-check.

    A clause set becomes ``a v -a.`` for every variable plus one constraint
    per clause, so the answer sets (restricted to positive atoms) are the
    clause set's models.
    """
    if isinstance(obj, Program):
        return "".join(f"{rule}\n" for rule in obj)
    if isinstance(obj, ClauseSet):
        lines = [f"{x} v {x.complement()}." for x in sorted(obj.variables | obj.auxiliary)]
        for clause in obj.clauses:
            body = [f"not {x}" if positive else str(x) for x, positive in clause]
            lines.append(f":- {', '.join(body)}.")
        return "".join(f"{line}\n" for line in lines)
    raise TypeError(f"cannot emit {type(obj).__name__}")


_CRIT_PREDICATE = {
    CriterionKind.SEX_EQUAL: "sexeq",
    CriterionKind.EGALITARIAN: "weight",
    CriterionKind.REGRET: "regret",
    CriterionKind.SINGLES: "singles",
    CriterionKind.MAN_WEIGHT: "manweight",
    CriterionKind.WOMAN_WEIGHT: "womanweight",
}


def criterion_range(n: int, p: int, kind: CriterionKind) -> tuple[int, int]:
    """Smallest and largest value a criterion can take on an n-by-p instance."""
    return {
        CriterionKind.SEX_EQUAL: (0, max(n * p + n - p, n * p + p - n, 0)),
        CriterionKind.EGALITARIAN: (n + p, 2 * n * p + p + n),
        CriterionKind.REGRET: (1, max(p, n) + 1),
        CriterionKind.SINGLES: (0, n + p),
        CriterionKind.MAN_WEIGHT: (n, n * (p + 1)),
        CriterionKind.WOMAN_WEIGHT: (p, p * (n + 1)),
    }[kind]


def _maxint(n: int, p: int, kind: CriterionKind) -> int:
    if kind in (CriterionKind.SEX_EQUAL, CriterionKind.EGALITARIAN):
        top = 2 * n * p + n + p
    else:
        top = criterion_range(n, p, kind)[1]
    return max(top, n + 1, p + 1)


def _primed(x: Literal, prime: str) -> str:
    name = ("n" if x.negated else "") + x.predicate + prime
    return f"{name}({','.join(x.args)})" if x.args else name


def _primed_rule(rule: Rule, prime: str) -> str:
    head = " v ".join(_primed(x, prime) for x in rule.head)
    body = [_primed(x, prime) for x in rule.pos_body]
    return f"{head} :- {', '.join(body)}." if body else f"{head}."


def _opt_rules(instance: SmtiInstance, criterion: Criterion, prime: str) -> list[tuple[str, int]]:
    """(line, grounded rule count) pairs of the optimisation program."""
    _require_valid(instance)
    n, p = instance.n, instance.p
    kind = criterion.kind
    P = prime
    crit = _CRIT_PREDICATE[kind]
    cmp = "<=" if criterion.direction is Direction.MINIMIZE else ">="
    maxint = _maxint(n, p, kind)
    lo, hi = criterion_range(n, p, kind)
    values = hi - lo + 1
    weights = kind in (CriterionKind.SEX_EQUAL, CriterionKind.EGALITARIAN, CriterionKind.MAN_WEIGHT, CriterionKind.WOMAN_WEIGHT)
    use_men = kind is not CriterionKind.WOMAN_WEIGHT
    use_women = kind is not CriterionKind.MAN_WEIGHT
    out: list[tuple[str, int]] = []

    def add(text, count=1):
        out.append((text, count))

    def comment(text):
        out.append((f"% {text}", 0))

    add(f"#maxint={maxint}.", 0)
    comment("candidate stable matching")
    for rule in encode_smti(instance):
        add(str(rule))
    for i in range(1, n + 1):
        add(f"man(m{i}).")
    for j in range(1, p + 1):
        add(f"woman(w{j}).")

    def cost_rules(q):
        for i, plist in enumerate(instance.men, start=1):
            for x in [woman(k) for k in plist.ordered()] + [man(i)]:
                add(f"mancost{q}({i},{partner_cost(instance, man(i), x)}) :- accept{q}(m{i},{x}).")
        for j, plist in enumerate(instance.women, start=1):
            for x in [man(k) for k in plist.ordered()] + [woman(j)]:
                partner = f"{x},w{j}" if x != woman(j) else f"w{j},w{j}"
                add(f"womancost{q}({j},{partner_cost(instance, woman(j), x)}) :- accept{q}({partner}).")

    comment("criterion value of the candidate")
    if kind is CriterionKind.SINGLES:
        add("singles(Z) :- #count{B : accept(B,B)} = Z, #int(Z).", maxint + 1)
    else:
        cost_rules("")
        if weights:
            for side, count, used in (("man", n, use_men), ("woman", p, use_women)):
                if not used:
                    continue
                if count:
                    add(f"{side}weight(Z) :- #sum{{B,A : {side}cost(A,B)}} = Z, #int(Z).", maxint + 1)
                else:
                    add(f"{side}weight(0).")
        if kind is CriterionKind.SEX_EQUAL:
            add("sexeq(Z) :- manweight(X), womanweight(Y), Z=X-Y.", (n * p + 1) ** 2)
            add("sexeq(Z) :- manweight(X), womanweight(Y), Z=Y-X.", (n * p + 1) ** 2)
        elif kind is CriterionKind.EGALITARIAN:
            add("weight(Z) :- manweight(X), womanweight(Y), Z=X+Y.", (n * p + 1) ** 2)
        elif kind is CriterionKind.REGRET:
            for side, count in (("man", n), ("woman", p)):
                if count:
                    add(f"{side}regret(Z) :- #max{{B : {side}cost(A,B)}} = Z, #int(Z).", maxint + 1)
                else:
                    add(f"{side}regret(0).")
            add("regret(X) :- manregret(X), womanregret(Y), X>Y.", (p + 1) * (n + 1))
            add("regret(Y) :- manregret(X), womanregret(Y), X<=Y.", (p + 1) * (n + 1))

    comment("second candidate, naf-free, classical negation as prefix n")
    for rule in encode_smti_disjunctive(instance):
        add(_primed_rule(rule, P))
    add(f"sat :- manpropose{P}(X,Y), nmanpropose{P}(X,Y), man(X), woman(Y).", n * p)
    add(f"sat :- womanpropose{P}(X,Y), nwomanpropose{P}(X,Y), man(X), woman(Y).", n * p)
    add(f"sat :- accept{P}(X,Y), naccept{P}(X,Y), man(X), woman(Y).", n * p)
    add(f"sat :- accept{P}(X,X), naccept{P}(X,X), man(X).", n)
    add(f"sat :- accept{P}(X,X), naccept{P}(X,X), woman(X).", p)

    comment("criterion value of the second candidate")
    if kind is CriterionKind.SINGLES:
        for i in range(1, n + 1):
            add(f"single{P}({p + i},1) :- accept{P}(m{i},m{i}).")
            add(f"single{P}({p + i},0) :- naccept{P}(m{i},m{i}).")
        for j in range(1, p + 1):
            add(f"single{P}({j},1) :- accept{P}(w{j},w{j}).")
            add(f"single{P}({j},0) :- naccept{P}(w{j},w{j}).")
        total = n + p
        if total:
            add(f"singlesum{P}({total},X) :- single{P}({total},X).", 2)
            add(f"singlesum{P}(J,Z) :- singlesum{P}(I,X), single{P}(J,Y), Z=X+Y, #succ(J,I).",
                sum(2 * (total - J + 1) for J in range(1, total)))
            add(f"singles{P}(Z) :- singlesum{P}(1,Z).", total + 1)
        else:
            add(f"singles{P}(0).")
    else:
        cost_rules(P)
        for side, count, other, used in (("man", n, p, use_men), ("woman", p, n, use_women)):
            if not used:
                continue
            if kind is CriterionKind.REGRET:
                if not count:
                    add(f"{side}regret{P}(0).")
                    continue
                add(f"{side}max{P}({count},X) :- {side}cost{P}({count},X).", other + 1)
                add(f"{side}max{P}(J,X) :- {side}max{P}(I,X), {side}cost{P}(J,Y), X>=Y, #succ(J,I).",
                    (count - 1) * (other + 1) * (other + 2) // 2)
                add(f"{side}max{P}(J,Y) :- {side}max{P}(I,X), {side}cost{P}(J,Y), X<Y, #succ(J,I).",
                    (count - 1) * (other + 1) * other // 2)
                add(f"{side}regret{P}(Z) :- {side}max{P}(1,Z).", other + 1)
            else:
                if not count:
                    add(f"{side}weight{P}(0).")
                    continue
                add(f"{side}sum{P}({count},X) :- {side}cost{P}({count},X).", other + 1)
                add(f"{side}sum{P}(J,Z) :- {side}sum{P}(I,X), {side}cost{P}(J,Y), Z=X+Y, #succ(J,I).",
                    sum(((count - J) * other + 1) * (other + 1) for J in range(1, count)))
                add(f"{side}weight{P}(Z) :- {side}sum{P}(1,Z).", count * other + 1)
        if kind is CriterionKind.SEX_EQUAL:
            add(f"sexeq{P}(Z) :- manweight{P}(X), womanweight{P}(Y), Z=X-Y.", (n * p + 1) ** 2)
            add(f"sexeq{P}(Z) :- manweight{P}(X), womanweight{P}(Y), Z=Y-X.", (n * p + 1) ** 2)
        elif kind is CriterionKind.EGALITARIAN:
            add(f"weight{P}(Z) :- manweight{P}(X), womanweight{P}(Y), Z=X+Y.", (n * p + 1) ** 2)
        elif kind is CriterionKind.REGRET:
            add(f"regret{P}(X) :- manregret{P}(X), womanregret{P}(Y), X>Y.", (p + 1) * (n + 1))
            add(f"regret{P}(Y) :- manregret{P}(X), womanregret{P}(Y), X<=Y.", (p + 1) * (n + 1))

    comment("saturation")
    add(f"sat :- {crit}(X), {crit}{P}(Y), X{cmp}Y.", values * (values + 1) // 2)
    add(":- not sat.")
    if kind is not CriterionKind.SINGLES:
        for name, top in ((f"manargcost_1{P}", n), (f"manargcost_2{P}", p + 1),
                          (f"womanargcost_1{P}", p), (f"womanargcost_2{P}", n + 1)):
            if top:
                add(f"{name}(1..{top}).", top)
        add(f"mancost{P}(X,Y) :- sat, manargcost_1{P}(X), manargcost_2{P}(Y).", n * (p + 1))
        add(f"womancost{P}(X,Y) :- sat, womanargcost_1{P}(X), womanargcost_2{P}(Y).", p * (n + 1))
    for prefix in ("", "n"):
        add(f"{prefix}manpropose{P}(X,Y) :- sat, man(X), woman(Y).", n * p)
        add(f"{prefix}womanpropose{P}(X,Y) :- sat, man(X), woman(Y).", n * p)
        add(f"{prefix}accept{P}(X,Y) :- sat, man(X), woman(Y).", n * p)
        add(f"{prefix}accept{P}(X,X) :- sat, man(X).", n)
        add(f"{prefix}accept{P}(X,X) :- sat, woman(X).", p)
    return out


def emit_opt_program(instance: SmtiInstance, criterion: Criterion, prime: str = "'") -> str:
    """DLV text of the saturation program selecting criterion-optimal stable matchings.

    ``prime`` is the suffix marking the second copy of every predicate;
    pass e.g. ``"_p"`` for solvers that reject quotes in identifiers.
    """
    return "".join(f"{line}\n" for line, _ in _opt_rules(instance, criterion, prime))


def opt_grounded_size(instance: SmtiInstance, criterion: Criterion) -> int:
    """Grounded rule count of :func:`emit_opt_program`, each template counted over its value domains."""
    return sum(count for _, count in _opt_rules(instance, criterion, "'"))
