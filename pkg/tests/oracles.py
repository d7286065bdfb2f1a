"""Brute-force enumeration oracles, independent of the package internals.

These deliberately re-derive everything from first principles (recursive
enumeration, direct counting on step strings) so the closed formulas and
generating functions are checked against a second route.
"""

from collections import Counter


def pascal_binomial(n, k):
    """C(n, k) from the Pascal triangle recurrence."""
    if k < 0 or k > n:
        return 0
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k]


def dyck_paths(u):
    """All Dyck paths with u up steps, as strings over UD."""
    def rec(s, h, ups, downs):
        if ups == 0 and downs == 0:
            yield s
            return
        if ups:
            yield from rec(s + "U", h + 1, ups - 1, downs)
        if downs and h > 0:
            yield from rec(s + "D", h - 1, ups, downs - 1)
    yield from rec("", 0, u, u)


def motzkin_paths(n, horizontals="H"):
    """All Motzkin paths of size n; pass horizontals="RB" for 2-Motzkin."""
    def rec(s, h, remaining):
        if remaining == 0:
            if h == 0:
                yield s
            return
        if h + 1 <= remaining - 1:
            yield from rec(s + "U", h + 1, remaining - 1)
        if h > 0:
            yield from rec(s + "D", h - 1, remaining - 1)
        if h <= remaining - 1:
            for c in horizontals:
                yield from rec(s + c, h, remaining - 1)
    yield from rec("", 0, n)


def balanced_strings(pairs):
    """All matched bracket strings with the given number of pairs."""
    if pairs == 0:
        yield ""
        return
    for inner in range(pairs):
        for a in balanced_strings(inner):
            for b in balanced_strings(pairs - 1 - inner):
                yield "(" + a + ")" + b


def step_counts(path):
    """(u, r, r0) of a step string: ups, horizontals, horizontals at level 0."""
    h = u = r = r0 = 0
    for ch in path:
        if ch == "U":
            u += 1
            h += 1
        elif ch == "D":
            h -= 1
        else:
            r += 1
            if h == 0:
                r0 += 1
    return u, r, r0


def irreducible_factors(dyck):
    """Number of returns to the axis of a Dyck path string."""
    h = f = 0
    for ch in dyck:
        h += 1 if ch == "U" else -1
        if h == 0:
            f += 1
    return f


def hairpin_count(bracket_string):
    """Occurrences of "()" in a matched bracket string."""
    return bracket_string.count("()")


def count_by(iterable, key):
    return Counter(key(x) for x in iterable)
