"""Shared fixtures and independent brute-force oracles.

The oracle helpers deliberately avoid chromarank.kernels: they recompute
composition, closure, classes, centralizers and commuting-tuple counts
from first principles so the fast paths have something honest to be
checked against.
"""

import itertools
from math import lcm

import pytest

from chromarank import (
    abelian,
    cyclic,
    dihedral,
    direct_product,
    general_linear,
    quaternion8,
    symmetric,
)

# -- oracles (no chromarank internals) ------------------------------------


def o_compose(a, b):
    return tuple(b[a[i]] for i in range(len(a)))


def o_inverse(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def o_conjugate(x, g):
    # inverse(g) * x * g, computed literally
    return o_compose(o_compose(o_inverse(g), x), g)


def o_order(a):
    n = 1
    cur = a
    ident = tuple(range(len(a)))
    while cur != ident:
        cur = o_compose(cur, a)
        n += 1
    return n


def o_close(gens):
    """Brute closure by repeated multiplication until a fixed point."""
    degree = len(gens[0])
    elems = {tuple(range(degree))}
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = o_compose(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(elems)


def o_classes(elements):
    """Conjugacy classes as frozensets, via the full element set."""
    left = set(elements)
    classes = []
    while left:
        x = min(left)
        cls = {o_conjugate(x, g) for g in elements}
        classes.append(frozenset(cls))
        left -= cls
    return classes


def o_centralizer(elements, targets):
    out = []
    for e in elements:
        if all(o_compose(e, t) == o_compose(t, e) for t in targets):
            out.append(e)
    return out


def o_is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def o_commuting_tuples(elements, p, h):
    """Naive scan of all |G|^h tuples: p-power orders, pairwise commuting."""
    pool = [e for e in elements if o_is_p_power(o_order(e), p)]
    out = []
    for tup in itertools.product(pool, repeat=h):
        ok = True
        for i in range(h):
            for j in range(i + 1, h):
                if o_compose(tup[i], tup[j]) != o_compose(tup[j], tup[i]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tup)
    return out


def o_tuple_classes(elements, tuples):
    """Group tuples under simultaneous conjugation by all elements."""
    left = set(tuples)
    count = 0
    while left:
        t = min(left)
        orbit = {tuple(o_conjugate(c, g) for c in t) for g in elements}
        left -= orbit
        count += 1
    return count


def o_parity(a):
    seen = [False] * len(a)
    parity = 0
    for i in range(len(a)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def o_exponent(elements):
    out = 1
    for e in elements:
        out = lcm(out, o_order(e))
    return out


# -- corpus ----------------------------------------------------------------


CORPUS_BUILDERS = {
    "C_6": lambda: cyclic(6),
    "S_3": lambda: symmetric(3),
    "S_4": lambda: symmetric(4),
    "D_8": lambda: dihedral(4),
    "Q_8": lambda: quaternion8(),
    "A_4": None,  # filled in below, needs explicit generators
    "C_2xC_4": lambda: abelian((2, 4)),
    "GL_2(3)": lambda: general_linear(2, 3),
    "S_3xS_3": lambda: direct_product(symmetric(3), symmetric(3)),
}


def _alternating4():
    from chromarank import Permutation, group_from_generators

    return group_from_generators(
        [Permutation.from_cycles("(0 1 2)", degree=4), Permutation.from_cycles("(1 2 3)", degree=4)]
    )


CORPUS_BUILDERS["A_4"] = _alternating4

CORPUS_ORDERS = {
    "C_6": 6,
    "S_3": 6,
    "S_4": 24,
    "D_8": 8,
    "Q_8": 8,
    "A_4": 12,
    "C_2xC_4": 8,
    "GL_2(3)": 48,
    "S_3xS_3": 36,
}


@pytest.fixture(scope="session")
def corpus():
    return {name: build() for name, build in CORPUS_BUILDERS.items()}


@pytest.fixture(scope="session")
def wreath_4608():
    from chromarank import wreath_cyclic

    return wreath_cyclic(general_linear(2, 3), 2)
