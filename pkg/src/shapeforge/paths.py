"""Dyck, Motzkin and 2-Motzkin lattice paths with bracket-string bijections.

A path of size n runs from (0,0) to (n,0) without dipping below the axis.
Steps are U (up), D (down) and, depending on the kind, H (horizontal) or the
two coloured horizontals R and B.

The encoding to bracket strings grows a string from "()" one step at a time.
Writing the current string as head + "(" + inner + ")" where the final ")"
closes the last group, the steps act as

    U: head + "(" + "(" + inner + ")" + "()"      (new bracket, new hairpin)
    D: whole string + ")"
    R: whole string + "()"                        (new hairpin)
    B: head + "(" + "(" + inner + ")" + ")"       (nest the last group)

A full path of size n yields a matched string of n + 1 pairs.  Only B can
create a directly nested pair, so paths without B (plain Motzkin paths) map
onto exactly the pi shapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import (
    IllegalCharacter,
    NegativeHeight,
    NonzeroFinalHeight,
    NotInImage,
    ResourceGuardExceeded,
    UnbalancedBrackets,
)
from .structures import IslandDiagram, PiShape


class PathKind(Enum):
    DYCK = "dyck"
    MOTZKIN1 = "motzkin1"
    MOTZKIN2 = "motzkin2"

    @property
    def alphabet(self) -> str:
        return {"dyck": "UD", "motzkin1": "UDH", "motzkin2": "UDRB"}[self.value]


@dataclass(frozen=True)
class LatticePath:
    """A validated path; construction checks alphabet and heights."""

    kind: PathKind
    steps: str

    def __post_init__(self):
        bad = set(self.steps) - set(self.kind.alphabet)
        if bad:
            raise IllegalCharacter(
                f"steps {sorted(bad)} not in {self.kind.value} alphabet"
            )
        h = 0
        for pos, ch in enumerate(self.steps, start=1):
            if ch == "U":
                h += 1
            elif ch == "D":
                h -= 1
                if h < 0:
                    raise NegativeHeight(f"path dips below axis at step {pos}")
        if h != 0:
            raise NonzeroFinalHeight(f"path ends at height {h}")

    @property
    def size(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class PathStats:
    u: int   # up steps
    d: int   # down steps
    r: int   # plain horizontals (H or R)
    b: int   # blue horizontals (B)
    r0: int  # horizontals of any colour at level 0


def parse_path(text: str, kind: PathKind) -> LatticePath:
    """Validate a step string; raises IllegalCharacter, NegativeHeight or
    NonzeroFinalHeight."""
    return LatticePath(kind, text)


def enumerate_paths(n: int, kind: PathKind, limit: int = 16) -> Iterator[LatticePath]:
    """Yield every path of size n exactly once, in step-alphabet order."""
    if n < 0:
        raise ValueError(f"enumerate_paths: n must be nonnegative, got {n}")
    if n > limit:
        raise ResourceGuardExceeded(f"enumerate_paths: n = {n} exceeds guard {limit}")
    alphabet = kind.alphabet

    def rec(prefix: list, h: int, remaining: int):
        if remaining == 0:
            if h == 0:
                yield "".join(prefix)
            return
        for ch in alphabet:
            if ch == "U":
                nh = h + 1
            elif ch == "D":
                if h == 0:
                    continue
                nh = h - 1
            else:
                nh = h
            if nh > remaining - 1:
                continue
            prefix.append(ch)
            yield from rec(prefix, nh, remaining - 1)
            prefix.pop()

    for steps in rec([], 0, n):
        yield LatticePath(kind, steps)


def path_stats(path: LatticePath) -> PathStats:
    u = d = r = b = r0 = 0
    h = 0
    for ch in path.steps:
        if ch == "U":
            u += 1
            h += 1
        elif ch == "D":
            d += 1
            h -= 1
        else:
            if ch == "B":
                b += 1
            else:
                r += 1
            if h == 0:
                r0 += 1
    return PathStats(u, d, r, b, r0)


# ---------------------------------------------------------------------------
# bracket-string encoding


def _split_last_group(s: str) -> tuple[str, str]:
    """Split s == head + "(" + inner + ")" at the final group; ignores "_"."""
    depth = 0
    for i in range(len(s) - 1, -1, -1):
        ch = s[i]
        if ch == ")":
            depth += 1
        elif ch == "(":
            depth -= 1
            if depth == 0:
                return s[:i], s[i + 1 : len(s) - 1]
    raise UnbalancedBrackets(f"no opener for the final ')' in {s!r}")


def _encode_steps(steps: str) -> str:
    s = "()"
    for ch in steps:
        if ch == "D":
            s = s + ")"
        elif ch in ("R", "H"):
            s = s + "()"
        else:
            head, inner = _split_last_group(s)
            core = "(" + inner + ")"
            if ch == "U":
                s = head + "(" + core + "()"
            else:  # B
                s = head + "(" + core + ")"
    return s


def encode2(path: LatticePath) -> str:
    """Encode a 2-Motzkin path of size n as a matched string of n + 1 pairs."""
    if path.kind is not PathKind.MOTZKIN2:
        raise ValueError("encode2 expects a 2-Motzkin path")
    return _encode_steps(path.steps)


def encode1(path: LatticePath) -> PiShape:
    """Encode a Motzkin path as a pi shape (H read as a plain horizontal)."""
    if path.kind is not PathKind.MOTZKIN1:
        raise ValueError("encode1 expects a Motzkin path")
    s = _encode_steps(path.steps)
    return PiShape(s.replace("(", "[").replace(")", "]"))


def _undo_candidates(s: str, allow_blue: bool):
    """Possible (step, previous string) undos of the final encoding step.

    The last step is not locally determined: a trailing "()" may come from U
    or R and a trailing "))" from B or D, so the inverse tries candidates in
    the fixed order B, D, U, R and lets the caller backtrack.
    """
    out = []
    if s.endswith("))"):
        if allow_blue:
            head, inner = _split_last_group(s)
            if inner.startswith("("):
                depth = 0
                for k, ch in enumerate(inner):
                    depth += 1 if ch == "(" else -1
                    if depth == 0:
                        break
                if k == len(inner) - 1:
                    out.append(("B", head + inner))
        out.append(("D", s[:-1]))
    elif s.endswith("()") and len(s) > 2:
        t = s[:-2]
        if t.endswith(")"):
            head, inner = _split_last_group(t)
            if head.endswith("("):
                out.append(("U", head[:-1] + "(" + inner + ")"))
            out.append(("R", t))
    return out


def _invert(s: str, allow_blue: bool) -> str | None:
    """Recover the forward step string for s, or None if s is unreachable.

    Depth-first over undo candidates with an explicit stack, memoizing
    strings whose whole undo subtree failed.
    """
    if s == "()":
        return ""
    dead: set[str] = set()
    frames = [(s, _undo_candidates(s, allow_blue))]
    cursor = [0]
    chosen = [""]
    while frames:
        cur, cands = frames[-1]
        i = cursor[-1]
        if i >= len(cands):
            dead.add(cur)
            frames.pop()
            cursor.pop()
            chosen.pop()
            if cursor:
                cursor[-1] += 1
            continue
        letter, prev = cands[i]
        chosen[-1] = letter
        if prev == "()":
            return "".join(reversed(chosen))
        if prev in dead:
            cursor[-1] += 1
            continue
        frames.append((prev, _undo_candidates(prev, allow_blue)))
        cursor.append(0)
        chosen.append("")
    return None


def _check_matched(s: str) -> int:
    """Validate a matched bracket string over "()"; return its pair count."""
    bad = set(s) - set("()")
    if bad:
        raise IllegalCharacter(f"bracket string characters {sorted(bad)}")
    depth = 0
    for i, ch in enumerate(s):
        depth += 1 if ch == "(" else -1
        if depth < 0:
            raise UnbalancedBrackets(f"unmatched ')' at index {i}")
    if depth != 0:
        raise UnbalancedBrackets("unmatched '('")
    return len(s) // 2


def decode2(s: str) -> LatticePath:
    """Invert encode2 by a backtracking reverse replay.

    A candidate undo is accepted only when the whole chain reaches "()";
    failed intermediate strings are memoized per call.  Raises NotInImage if
    no chain succeeds (the encoding is onto matched strings, so this
    signals a malformed input rather than occurring for valid ones).
    """
    pairs = _check_matched(s)
    if pairs < 1:
        raise UnbalancedBrackets("decode2 needs at least one pair")
    steps = _invert(s, allow_blue=True)
    if steps is None:
        raise NotInImage(f"{s!r} is not the encoding of any 2-Motzkin path")
    return LatticePath(PathKind.MOTZKIN2, steps)


def decode1(shape: PiShape | str) -> LatticePath:
    """Invert encode1; raises DirectlyNested when the input is not a pi shape."""
    if not isinstance(shape, PiShape):
        shape = PiShape(shape)
    s = shape.text.replace("[", "(").replace("]", ")")
    steps = _invert(s, allow_blue=False)
    if steps is None:
        raise NotInImage(f"{shape.text!r} is not the encoding of any Motzkin path")
    return LatticePath(PathKind.MOTZKIN1, steps.replace("R", "H"))


# ---------------------------------------------------------------------------
# island-diagram decoration


def decorate_islands(path: LatticePath, limit: int = 8) -> set:
    """All island diagrams that a 2-Motzkin path expands to.

    Replays the encoding on decorated strings, starting from the hairpin
    "(_)".  Each new bracket from U or D optionally carries a blank beside
    it, each appended hairpin may be preceded by a blank, and a B step nests
    the last group as a stack, one of the two bulges, or an interior loop:

        U: head ( g1 (inner) g2 (_)      g1, g2 optional blanks
        D: head (inner) g )
        R: head (inner) g (_)
        B: head ( g1 (inner) g2 )
    """
    if path.kind is not PathKind.MOTZKIN2:
        raise ValueError("decorate_islands expects a 2-Motzkin path")
    if path.size > limit:
        raise ResourceGuardExceeded(
            f"decorate_islands: size {path.size} exceeds guard {limit}"
        )
    blanks = ("", "_")
    texts = {"(_)"}
    for ch in path.steps:
        nxt = set()
        for s in texts:
            if ch == "D":
                for g in blanks:
                    nxt.add(s + g + ")")
            elif ch == "R":
                for g in blanks:
                    nxt.add(s + g + "(_)")
            else:
                head, inner = _split_last_group(s)
                core = "(" + inner + ")"
                tail = "(_)" if ch == "U" else ")"
                for g1 in blanks:
                    for g2 in blanks:
                        nxt.add(head + "(" + g1 + core + g2 + tail)
        texts = nxt
    return {IslandDiagram(t) for t in texts}
