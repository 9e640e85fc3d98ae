"""Words in a right-angled Coxeter group.

Words are tuples of vertex names.  Every generator is an involution, so the
inverse of a word is its reversal.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import LengthCapExceeded, ParseError, UnknownLetter
from .graphs import SimplicialGraph

Word = tuple  # tuple[str, ...]

MAX_WORD_LENGTH = 512


def parse_word(text: str) -> Word:
    """``"s1 s2 s1"`` -> ``("s1", "s2", "s1")``; blank text is the empty word."""
    text = text.strip()
    if not text:
        return ()
    return tuple(text.split())


def format_word(w: Sequence[str]) -> str:
    return " ".join(w)


def read_word_file(text: str) -> list[Word]:
    """One word per line, letters separated by single spaces; an empty line is the
    empty word.  A trailing newline does not add a word."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    words = []
    for line in lines:
        line = line.rstrip("\r")
        if line != line.strip() or "  " in line:
            raise ParseError(f"letters must be separated by single spaces: {line!r}")
        words.append(parse_word(line))
    return words


def write_word_file(words: Iterable[Sequence[str]]) -> str:
    return "".join(format_word(w) + "\n" for w in words)


def reverse(w: Sequence[str]) -> Word:
    return tuple(reversed(w))


def encode(w: Sequence[str], g: SimplicialGraph) -> list[int]:
    idx = g.index
    try:
        return [idx[x] for x in w]
    except KeyError as exc:
        raise UnknownLetter(exc.args[0]) from None


def _cancel(letters: list[int], adj) -> list[int]:
    # Appending s to a reduced word u is non-reduced exactly when u has an
    # occurrence of s followed only by letters commuting with s; deleting that
    # occurrence leaves a reduced word for u*s.
    out: list[int] = []
    for s in letters:
        nb = adj[s]
        j = len(out) - 1
        while j >= 0 and out[j] != s and out[j] in nb:
            j -= 1
        if j >= 0 and out[j] == s:
            del out[j]
        else:
            out.append(s)
    return out


def _lex_least(letters: list[int], adj) -> list[int]:
    # Least word in the commutation class: repeatedly emit the smallest letter
    # that commutes with everything before it.
    rest = list(letters)
    out = []
    while rest:
        out.append(rest.pop(_first_free_min(rest, adj)))
    return out


def _first_free_min(rest: list[int], adj) -> int:
    best = -1
    for i, s in enumerate(rest):
        if best != -1 and s >= rest[best]:
            continue
        nb = adj[s]
        if all(rest[j] in nb for j in range(i)):
            best = i
    return best


def reduce_indices(letters: list[int], g: SimplicialGraph) -> list[int]:
    if len(letters) > MAX_WORD_LENGTH:
        raise LengthCapExceeded(f"word of length {len(letters)} exceeds {MAX_WORD_LENGTH}")
    return _lex_least(_cancel(letters, g.adj), g.adj)


def reduce(w: Sequence[str], g: SimplicialGraph) -> Word:
    """Canonical normal form: the ShortLex-least reduced word for ``w``, with
    letters ordered by the graph's vertex order."""
    names = g.vertices
    return tuple(names[i] for i in reduce_indices(encode(w, g), g))


def is_reduced(w: Sequence[str], g: SimplicialGraph) -> bool:
    return len(_cancel(encode(w, g), g.adj)) == len(w)


def equal(w1: Sequence[str], w2: Sequence[str], g: SimplicialGraph) -> bool:
    return reduce(tuple(w1) + reverse(w2), g) == ()


# -- reflection representation ---------------------------------------------------

def generator_matrix(s: int, g: SimplicialGraph) -> np.ndarray:
    """Integer matrix of the reflection in generator ``s`` (column t = image of e_t)."""
    n = len(g)
    m = np.identity(n, dtype=object)
    m[s, s] = -1
    for t in range(n):
        if t != s and t not in g.adj[s]:
            m[s, t] = 2
    return m


def tits_matrix(w: Sequence[str], g: SimplicialGraph) -> np.ndarray:
    """Product of the generator matrices along ``w``; identity iff ``w`` = 1."""
    gens = [generator_matrix(s, g) for s in range(len(g))]
    m = np.identity(len(g), dtype=object)
    for s in encode(w, g):
        m = m.dot(gens[s])
    return m


def is_identity_matrix(m: np.ndarray) -> bool:
    return bool((m == np.identity(m.shape[0], dtype=object)).all())


# -- subgroup balls ----------------------------------------------------------------

def subgroup_ball(gens: Iterable[Sequence[str]], g: SimplicialGraph, m: int) -> set[Word]:
    """Normal forms of all products of at most ``m`` generators or inverses."""
    if m < 0:
        raise ValueError("factor bound must be non-negative")
    letters = []
    for w in gens:
        code = encode(w, g)
        letters.append(code)
        letters.append(code[::-1])
    ball = {()}
    layer = {()}
    for _ in range(m):
        nxt = set()
        for u in layer:
            for x in letters:
                nxt.add(tuple(reduce_indices(list(u) + x, g)))
        nxt -= ball
        if not nxt:
            break
        ball |= nxt
        layer = nxt
    names = g.vertices
    return {tuple(names[i] for i in u) for u in ball}
