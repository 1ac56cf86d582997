"""Rule-text normalisation and random instance parameters shared by the tests."""
import random
import re

from smti_asp.instances import generate_instance

PROBABILITIES = (0.0, 0.3, 0.7)


def random_instance(seed: int, max_n: int, max_p: int, min_size: int = 0):
    rng = random.Random(seed)
    n = rng.randint(min_size, max_n)
    p = rng.randint(min_size, max_p)
    return generate_instance(n, p, rng.choice(PROBABILITIES), rng.choice(PROBABILITIES), seed)


def split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside parentheses and braces."""
    parts, depth, start, i = [], 0, 0, 0
    while i < len(text):
        c = text[i]
        if c in "({":
            depth += 1
        elif c in ")}":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            parts.append(text[start:i])
            start = i + len(sep)
            i = start
            continue
        i += 1
    parts.append(text[start:])
    return parts


def statements(text: str) -> list[str]:
    """Rule statements of a DLV text; comments and ``#`` directives dropped."""
    body = "\n".join(line.split("%", 1)[0] for line in text.splitlines())
    out = []
    for chunk in split_top(body, "."):
        chunk = " ".join(chunk.split())
        if chunk and not re.match(r"^#\w+\s*=", chunk):
            out.append(chunk)
    return out


def normalise(statement: str):
    """Order-insensitive form: (head literals, body items), whitespace removed."""
    head, _, body = statement.partition(":-")
    heads = frozenset(x.replace(" ", "") for x in split_top(head, " v ") if x.strip())
    items = frozenset(re.sub(r"\s+", " ", x.strip()).replace(", ", ",") for x in split_top(body, ",") if x.strip())
    items = frozenset(x if x.startswith("not ") else x.replace(" ", "") for x in items)
    return heads, items


def rule_set(text: str) -> set:
    return {normalise(s) for s in statements(text)}


def ground_over_persons(rules: set, n: int, p: int) -> set:
    """Instantiate the two non-ground shapes used by hand-written listings.

    ``h(X,Y) :- b(X,Y), c(X,Y)`` without domain atoms ranges over all men X
    and women Y, and a body of exactly ``man(M), woman(W)`` is the same
    domain written out.
    """
    out = set()
    for heads, body in rules:
        variables = None
        if body == frozenset({"man(M)", "woman(W)"}):
            variables, body = ("M", "W"), frozenset()
        elif heads and all(h.endswith("(X,Y)") for h in heads) and body and all(b.endswith("(X,Y)") for b in body):
            variables = ("X", "Y")
        if variables is None:
            out.add((heads, body))
            continue
        a, b = variables
        for i in range(1, n + 1):
            for j in range(1, p + 1):
                def sub(x):
                    return x.replace(f"({a},{b})", f"(m{i},w{j})")
                out.add((frozenset(map(sub, heads)), frozenset(map(sub, body))))
    return out
