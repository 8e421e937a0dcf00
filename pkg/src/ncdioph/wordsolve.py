"""Bounded-length word-equation solving over a free monoid.

An equation is a pair of sequences mixing alphabet letters and word variables
(``x<digits>``).  ``word_solve`` returns *all* assignments of words of length
at most ``max_len`` satisfying every equation, in shortlex-tuple order.  The
twist that keeps this desk-scale: the linear length constraints are solved
first, and only length-consistent tuples are enumerated.  That pruning is a
necessary condition, so it never loses a solution within the bound; no claim
is made beyond the bound.

File format: one equation per line, symbols separated by spaces, ``=``
between the sides, ``1`` as the empty word, ``#`` comments, and an optional
``alphabet a b ...`` line (default: the letters occurring in the system).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import NCDiophError, ParseError

_VAR_RE = re.compile(r"x\d+$")


def is_word_variable(symbol):
    return bool(_VAR_RE.match(symbol))


@dataclass(frozen=True)
class WordEquation:
    left: tuple
    right: tuple

    def symbols(self):
        return set(self.left) | set(self.right)


def _var_key(name):
    return (name[0], int(name[1:]))


def _length_profile(side, variables):
    counts = {v: 0 for v in variables}
    const = 0
    for sym in side:
        if sym in counts:
            counts[sym] += 1
        else:
            const += 1
    return counts, const


def _expand(side, assignment):
    out = []
    for sym in side:
        if sym in assignment:
            out.extend(assignment[sym])
        else:
            out.append(sym)
    return tuple(out)


def word_solve(equations, alphabet, max_len, variables=None):
    """All solutions with every variable bound to a word of length <= max_len."""
    if max_len < 0:
        raise NCDiophError("max_len must be >= 0")
    alphabet = tuple(sorted(set(alphabet)))
    if variables is None:
        variables = sorted(
            {s for eq in equations for s in eq.symbols() if is_word_variable(s)},
            key=_var_key)
    else:
        variables = sorted(variables, key=_var_key)
    for eq in equations:
        for sym in eq.symbols():
            if not is_word_variable(sym) and sym not in alphabet:
                raise NCDiophError(f"letter {sym!r} is not in the alphabet")

    profiles = []
    for eq in equations:
        lcounts, lconst = _length_profile(eq.left, variables)
        rcounts, rconst = _length_profile(eq.right, variables)
        profiles.append(({v: lcounts[v] - rcounts[v] for v in variables},
                         rconst - lconst))

    def lengths_ok(lens):
        for diff, target in profiles:
            if sum(diff[v] * lens[k] for k, v in enumerate(variables)) != target:
                return False
        return True

    solutions = []
    for lens in itertools.product(range(max_len + 1), repeat=len(variables)):
        if not lengths_ok(lens):
            continue
        pools = [itertools.product(alphabet, repeat=n) for n in lens]
        for words in itertools.product(*pools):
            assignment = dict(zip(variables, words))
            if all(_expand(eq.left, assignment) == _expand(eq.right, assignment)
                   for eq in equations):
                solutions.append(assignment)
    solutions.sort(key=lambda a: tuple((len(a[v]), a[v]) for v in variables))
    return solutions


def word_str(word):
    return "".join(word) if word else "1"


def parse_word_system(text):
    """Parse the word-equation file format; returns (equations, alphabet, variables)."""
    equations = []
    alphabet = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        symbols = line.split()
        if symbols[0] == "alphabet":
            alphabet = tuple(symbols[1:])
            if not alphabet:
                raise ParseError("empty alphabet declaration", lineno, 1)
            continue
        if "=" not in symbols:
            raise ParseError("equation line without '='", lineno, 1)
        k = symbols.index("=")
        left = tuple(s for s in symbols[:k] if s != "1")
        right = tuple(s for s in symbols[k + 1:] if s != "1")
        if "=" in symbols[k + 1:]:
            raise ParseError("more than one '=' in an equation", lineno, 1)
        equations.append(WordEquation(left, right))
    if alphabet is None:
        alphabet = tuple(sorted(
            {s for eq in equations for s in eq.symbols() if not is_word_variable(s)}))
    variables = sorted(
        {s for eq in equations for s in eq.symbols() if is_word_variable(s)},
        key=_var_key)
    return equations, alphabet, variables
