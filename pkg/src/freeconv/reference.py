"""Reference implementations for the verification suites.

These exist to cross-check the production routes and deliberately share
no code with them.  The word-moment function expands products of free
variables by repeated centering, straight from the defining property
that alternating products of centered factors have zero expectation.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations


def _compress(word):
    runs = []
    for letter in word:
        if runs and runs[-1][0] == letter:
            runs[-1] = (letter, runs[-1][1] + 1)
        else:
            runs.append((letter, 1))
    return tuple(runs)


def _merge(runs):
    out = []
    for letter, cnt in runs:
        if out and out[-1][0] == letter:
            out[-1] = (letter, out[-1][1] + cnt)
        else:
            out.append((letter, cnt))
    return tuple(out)


def free_word_moment(word, moments) -> float:
    """E(word) for mutually free variables via the centering recursion.

    `word` is a sequence of letters; `moments[letter][k-1]` holds the k-th
    moment of that letter's variable.  Expanding
    E[(x_1 - E x_1)...(x_s - E x_s)] = 0 over subsets expresses the full
    moment through strictly shorter words.
    """

    def m(letter, k):
        return moments[letter][k - 1]

    @lru_cache(maxsize=None)
    def expect(runs):
        if not runs:
            return 1.0
        if len(runs) == 1:
            return m(*runs[0])
        s = len(runs)
        means = [m(letter, cnt) for letter, cnt in runs]
        total = 0.0
        for keep in range(s):
            for kept in combinations(range(s), keep):
                coef = 1.0
                dropped = set(range(s)) - set(kept)
                for i in dropped:
                    coef *= -means[i]
                total += coef * expect(_merge(tuple(runs[i] for i in kept)))
        return -total

    return expect(_compress(tuple(word)))
