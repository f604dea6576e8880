"""Independent oracles shared by the test suite.

These deliberately avoid the package's rewriting and series machinery:
Lyndon words are enumerated straight from the rotation-minimality
definition, and bracket expressions are expanded as iterated commutators
in a hand-rolled free associative algebra.
"""

from fractions import Fraction
from itertools import product


def brute_force_lyndon(length, alphabet=(1, 2)):
    """All words strictly smaller than every proper rotation."""
    out = []
    for w in product(alphabet, repeat=length):
        if all(w < w[i:] + w[:i] for i in range(1, length)):
            out.append(w)
    return out


def assoc_add(a, b, mult=1):
    out = dict(a)
    for w, c in b.items():
        nc = out.get(w, 0) + mult * c
        if nc:
            out[w] = nc
        else:
            out.pop(w, None)
    return out


def assoc_mul(a, b):
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            nc = out.get(w, 0) + ca * cb
            if nc:
                out[w] = nc
            else:
                out.pop(w, None)
    return out


def expand_commutator(tree):
    """Iterated-commutator expansion of a nested bracket tree."""
    if isinstance(tree, int):
        return {(tree,): Fraction(1)}
    left = expand_commutator(tree[0])
    right = expand_commutator(tree[1])
    return assoc_add(assoc_mul(left, right), assoc_mul(right, left), -1)
