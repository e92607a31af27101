"""Pure-Python kernels.

Permutations are bare tuples of point images; composition is left to right,
so compose(a, b) maps i to b[a[i]].  chromarank._kernels_c implements the
same contract compiled; chromarank.kernels picks one at import time.
"""

from math import lcm

BACKEND = "pure"


def compose(a, b):
    """a then b: the permutation mapping i to b[a[i]]."""
    return tuple(map(b.__getitem__, a))


def inverse(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def conjugate(x, g):
    """x conjugated by g, i.e. inverse(g) * x * g."""
    out = [0] * len(x)
    for j, gj in enumerate(g):
        out[gj] = g[x[j]]
    return tuple(out)


def commutes(a, b):
    return all(a[b[i]] == b[a[i]] for i in range(len(a)))


def element_order(a):
    n = 1
    seen = bytearray(len(a))
    for i in range(len(a)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            length += 1
        n = lcm(n, length)
    return n


def close_group(gens, limit):
    """All products of the generators, sorted; None once the count passes limit.

    Breadth-first closure from the identity; the generator list must be
    nonempty and of uniform degree.
    """
    degree = len(gens[0])
    identity = tuple(range(degree))
    seen = {identity}
    queue = [identity]
    for x in queue:
        for g in gens:
            y = tuple(map(g.__getitem__, x))
            if y not in seen:
                if len(seen) >= limit:
                    return None
                seen.add(y)
                queue.append(y)
    queue.sort()
    return queue


def conjugacy_orbit(x, gens):
    """Orbit of x under conjugation by the generators, in discovery order."""
    orbit = {x}
    queue = [x]
    for e in queue:
        for g in gens:
            y = conjugate(e, g)
            if y not in orbit:
                orbit.add(y)
                queue.append(y)
    return queue


def tuple_orbit(tup, gens):
    """Orbit of a tuple of permutations under simultaneous conjugation."""
    start = tuple(tup)
    orbit = {start}
    queue = [start]
    for e in queue:
        for g in gens:
            y = tuple(conjugate(c, g) for c in e)
            if y not in orbit:
                orbit.add(y)
                queue.append(y)
    return queue


def centralizer_filter(elements, targets):
    """Members of elements commuting with every target, input order kept."""
    out = []
    for e in elements:
        for t in targets:
            if not commutes(e, t):
                break
        else:
            out.append(e)
    return out


def normalizer_filter(elements, sub_gens, sub_elements):
    """Members of elements conjugating the given subgroup onto itself."""
    sub = set(sub_elements)
    out = []
    for g in elements:
        for s in sub_gens:
            if conjugate(s, g) not in sub:
                break
        else:
            out.append(g)
    return out
