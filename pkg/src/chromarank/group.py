"""Permutation groups with deterministic stabilizer chains.

The chain is built by a non-randomized Schreier-Sims pass with base points
chosen as the smallest non-fixed point of each new strong generator, so
orders, transversals and membership tests reproduce bit for bit.  Element
enumeration, conjugacy classes, centralizers, Sylow subgroups and
fingerprints only run below a configurable order limit (the default is
2**21; see enumeration_limit).
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from math import lcm, prod

from . import kernels
from .arith import is_p_power, is_prime, p_part
from .errors import (
    ChromarankError,
    DegreeMismatch,
    InvalidPermutation,
    NotInGroup,
    ParseError,
    ThresholdExceeded,
)
from .perm import Permutation

DEFAULT_ENUMERATION_LIMIT = 2**21
LIMIT_ENV_VAR = "CHROMARANK_MAX_ORDER"


def enumeration_limit(explicit: int | None = None) -> int:
    """Resolve the element-enumeration limit.

    Precedence: explicit argument, then the CHROMARANK_MAX_ORDER environment
    variable, then the built-in default of 2**21.
    """
    if explicit is not None:
        if explicit < 1:
            raise ValueError("enumeration limit must be positive")
        return explicit
    raw = os.environ.get(LIMIT_ENV_VAR)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ChromarankError(f"{LIMIT_ENV_VAR} must be an integer, got {raw!r}") from None
        if value < 1:
            raise ChromarankError(f"{LIMIT_ENV_VAR} must be positive, got {raw!r}")
        return value
    return DEFAULT_ENUMERATION_LIMIT


class _Level:
    __slots__ = ("base", "gens", "transversal")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[tuple[int, ...]] = []
        self.transversal: dict[int, tuple[int, ...]] = {}


def _orbit_transversal(base, gens, degree):
    """Schreier tree for base under gens; maps point -> word sending base there."""
    trans = {base: tuple(range(degree))}
    queue = [base]
    for pt in queue:
        u = trans[pt]
        for g in gens:
            img = g[pt]
            if img not in trans:
                trans[img] = kernels.compose(u, g)
                queue.append(img)
    return trans


class _Chain:
    """Stabilizer chain over a fixed base, deterministic construction."""

    __slots__ = ("degree", "identity", "levels")

    def __init__(self, degree: int, raw_gens: Iterable[tuple[int, ...]]):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.levels: list[_Level] = []
        seen = set()
        for g in raw_gens:
            if g == self.identity or g in seen:
                continue
            seen.add(g)
            res, j = self.sift(g, 0)
            if res != self.identity:
                self._add_strong_gen(0, res, j)
        self._close()

    def sift(self, g, start=0):
        """Strip g through the chain; returns (residue, stop level)."""
        i = start
        cur = g
        while i < len(self.levels):
            if cur == self.identity:
                return cur, i
            lvl = self.levels[i]
            u = lvl.transversal.get(cur[lvl.base])
            if u is None:
                return cur, i
            cur = kernels.compose(cur, kernels.inverse(u))
            i += 1
        return cur, i

    def contains(self, g) -> bool:
        res, _ = self.sift(g)
        return res == self.identity

    def order(self) -> int:
        return prod(len(lvl.transversal) for lvl in self.levels)

    def base_points(self) -> tuple[int, ...]:
        return tuple(lvl.base for lvl in self.levels)

    def _add_strong_gen(self, low, g, depth):
        # g fixes the first `depth` base points; it generates at every level
        # from `low` through `depth`, whose transversals must be rebuilt.
        if depth == len(self.levels):
            base = next(i for i, j in enumerate(g) if i != j)
            self.levels.append(_Level(base))
        for i in range(low, depth + 1):
            self.levels[i].gens.append(g)
        for i in range(low, depth + 1):
            lvl = self.levels[i]
            lvl.transversal = _orbit_transversal(lvl.base, lvl.gens, self.degree)

    def _close(self):
        # Bottom-up Schreier closure: level i is complete once every one of
        # its Schreier generators sifts to the identity through i+1 onward.
        i = len(self.levels) - 1
        while i >= 0:
            lvl = self.levels[i]
            restart = False
            for pt in sorted(lvl.transversal):
                u = lvl.transversal[pt]
                for s in lvl.gens:
                    u2 = lvl.transversal[s[pt]]
                    sg = kernels.compose(kernels.compose(u, s), kernels.inverse(u2))
                    if sg == self.identity:
                        continue
                    res, j = self.sift(sg, i + 1)
                    if res != self.identity:
                        self._add_strong_gen(i + 1, res, j)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1


@dataclass(frozen=True)
class ConjClassTable:
    """Conjugacy classes: lex-least representatives, sizes, element index."""

    reps: tuple[Permutation, ...]
    sizes: tuple[int, ...]
    index: Mapping[tuple[int, ...], int]

    def class_of(self, p: Permutation) -> int:
        return self.index[p.images]

    def __len__(self) -> int:
        return len(self.reps)


@dataclass(frozen=True)
class Fingerprint:
    """Cheap isomorphism-invariant summary of a finite group.

    Equality of fingerprints is necessary but not sufficient for group
    isomorphism; the registry treats it as an identity heuristic and offers
    a paranoid mode that compares finer class data when available.
    """

    order: int
    exponent: int
    element_order_histogram: tuple[tuple[int, int], ...]
    class_size_histogram: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int
    abelian: bool

    def to_record(self) -> dict:
        return {
            "order": self.order,
            "exponent": self.exponent,
            "element_order_histogram": [list(x) for x in self.element_order_histogram],
            "class_size_histogram": [list(x) for x in self.class_size_histogram],
            "center_order": self.center_order,
            "derived_order": self.derived_order,
            "abelian": self.abelian,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Fingerprint":
        expected = {
            "order",
            "exponent",
            "element_order_histogram",
            "class_size_histogram",
            "center_order",
            "derived_order",
            "abelian",
        }
        if set(rec) != expected:
            raise ParseError(f"bad fingerprint fields: {sorted(rec)}")
        return cls(
            order=int(rec["order"]),
            exponent=int(rec["exponent"]),
            element_order_histogram=tuple((int(a), int(b)) for a, b in rec["element_order_histogram"]),
            class_size_histogram=tuple((int(a), int(b)) for a, b in rec["class_size_histogram"]),
            center_order=int(rec["center_order"]),
            derived_order=int(rec["derived_order"]),
            abelian=bool(rec["abelian"]),
        )


class PermGroup:
    """Finitely generated permutation group on {0, ..., degree-1}.

    Instances are immutable; derived data (chain, elements, class table,
    fingerprint) is computed on demand and cached on the instance.
    """

    __slots__ = ("degree", "generators", "_raw", "_chain", "_cache")

    def __init__(self, degree: int, generators: Iterable[Permutation]):
        gens = tuple(generators)
        if not gens:
            raise InvalidPermutation("a group needs at least one generator")
        for g in gens:
            if not isinstance(g, Permutation):
                raise InvalidPermutation(f"not a Permutation: {g!r}")
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree}, group degree {degree}")
        self.degree = degree
        self.generators = gens
        self._raw = tuple(g.images for g in gens)
        self._chain = None
        self._cache = {}

    @classmethod
    def from_generators(cls, generators: Iterable[Permutation]) -> "PermGroup":
        gens = tuple(generators)
        if not gens:
            raise InvalidPermutation("a group needs at least one generator")
        return cls(gens[0].degree, gens)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, (Permutation.identity(degree),))

    # -- chain-backed queries ------------------------------------------------

    def chain(self) -> _Chain:
        if self._chain is None:
            self._chain = _Chain(self.degree, self._raw)
        return self._chain

    def order(self) -> int:
        cached = self._cache.get("order")
        if cached is None:
            cached = self.chain().order()
            self._cache["order"] = cached
        return cached

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"degree {p.degree} vs group degree {self.degree}")
        return self.chain().contains(p.images)

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def is_abelian(self) -> bool:
        raw = self._raw
        return all(kernels.commutes(a, b) for i, a in enumerate(raw) for b in raw[i + 1 :])

    # -- enumeration-backed queries -------------------------------------------

    def _raw_elements(self, limit: int | None = None) -> tuple[tuple[int, ...], ...]:
        cached = self._cache.get("elements_raw")
        if cached is not None:
            return cached
        cap = enumeration_limit(limit)
        n = self.order()
        if n > cap:
            raise ThresholdExceeded(f"desk-scale exceeded: group order {n} > limit {cap}")
        closed = kernels.close_group(list(self._raw), n)
        if closed is None or len(closed) != n:
            raise ChromarankError("closure disagrees with stabilizer chain order")
        cached = tuple(closed)
        self._cache["elements_raw"] = cached
        return cached

    def elements(self, limit: int | None = None) -> tuple[Permutation, ...]:
        """All elements, lexicographically sorted by image tuple."""
        cached = self._cache.get("elements")
        if cached is None:
            cached = tuple(Permutation._wrap(t) for t in self._raw_elements(limit))
            self._cache["elements"] = cached
        return cached

    def exponent(self, limit: int | None = None) -> int:
        out = 1
        for o, _ in self.element_order_histogram(limit):
            out = lcm(out, o)
        return out

    def element_order_histogram(self, limit: int | None = None) -> tuple[tuple[int, int], ...]:
        cached = self._cache.get("order_histogram")
        if cached is None:
            counts: dict[int, int] = {}
            for t in self._raw_elements(limit):
                o = kernels.element_order(t)
                counts[o] = counts.get(o, 0) + 1
            cached = tuple(sorted(counts.items()))
            self._cache["order_histogram"] = cached
        return cached

    def conjugacy_classes(self, limit: int | None = None) -> ConjClassTable:
        """Orbits of the conjugation action via generator-conjugation closure."""
        cached = self._cache.get("classes")
        if cached is not None:
            return cached
        reps: list[Permutation] = []
        sizes: list[int] = []
        index: dict[tuple[int, ...], int] = {}
        raw_gens = self._raw
        for t in self._raw_elements(limit):
            if t in index:
                continue
            orbit = kernels.conjugacy_orbit(t, raw_gens)
            cid = len(reps)
            reps.append(Permutation._wrap(t))
            sizes.append(len(orbit))
            for o in orbit:
                index[o] = cid
        table = ConjClassTable(tuple(reps), tuple(sizes), index)
        self._cache["classes"] = table
        return table

    def _centralizer_raw(self, raw_targets, limit: int | None = None) -> "PermGroup":
        filtered = kernels.centralizer_filter(list(self._raw_elements(limit)), list(raw_targets))
        return _subgroup_from_elements(self.degree, filtered)

    def centralizer(self, targets: Iterable[Permutation], limit: int | None = None) -> "PermGroup":
        """Centralizer of a set of elements, by elementwise filtering."""
        tt = tuple(targets)
        for t in tt:
            if not isinstance(t, Permutation):
                raise InvalidPermutation(f"not a Permutation: {t!r}")
            if not self.contains(t):
                raise NotInGroup(f"{t!r} is not a member of this group")
        return self._centralizer_raw([t.images for t in tt], limit)

    def center(self, limit: int | None = None) -> "PermGroup":
        return self._centralizer_raw(self._raw, limit)

    def sylow_subgroup(self, p: int, limit: int | None = None) -> "PermGroup":
        """A Sylow p-subgroup, grown from a cyclic p-subgroup via normalizers.

        Deterministic: the seed and every extension element are the
        lexicographically least candidates, so repeated runs agree.
        """
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        target = p_part(self.order(), p)
        if target == 1:
            return _subgroup_from_elements(self.degree, [tuple(range(self.degree))])
        elems = self._raw_elements(limit)
        identity = tuple(range(self.degree))
        seed = next(t for t in elems if t != identity and is_p_power(kernels.element_order(t), p))
        sub_gens = [seed]
        sub_elems = kernels.close_group(sub_gens, target)
        if sub_elems is None:
            raise ChromarankError("p-subgroup grew past the p-part; non-p-element slipped in")
        while len(sub_elems) < target:
            normalizer = kernels.normalizer_filter(list(elems), sub_gens, sub_elems)
            sub_set = set(sub_elems)
            ext = next(
                (
                    t
                    for t in normalizer
                    if t not in sub_set and is_p_power(kernels.element_order(t), p)
                ),
                None,
            )
            if ext is None:
                raise ChromarankError("normalizer holds no p-element outside the subgroup")
            sub_gens.append(ext)
            sub_elems = kernels.close_group(sub_gens, target)
            if sub_elems is None:
                raise ChromarankError("p-subgroup grew past the p-part; non-p-element slipped in")
        return _subgroup_from_elements(self.degree, sub_elems)

    def derived_subgroup(self, limit: int | None = None) -> "PermGroup":
        """Normal closure of the generator commutators."""
        cached = self._cache.get("derived")
        if cached is not None:
            return cached
        identity = tuple(range(self.degree))
        work: list[tuple[int, ...]] = []
        for a in self._raw:
            for b in self._raw:
                c = kernels.compose(
                    kernels.compose(kernels.inverse(a), kernels.inverse(b)),
                    kernels.compose(a, b),
                )
                if c != identity:
                    work.append(c)
        gens: list[tuple[int, ...]] = []
        chain: _Chain | None = None
        while work:
            x = work.pop(0)
            if x == identity or (chain is not None and chain.contains(x)):
                continue
            gens.append(x)
            chain = _Chain(self.degree, gens)
            for g in self._raw:
                work.append(kernels.conjugate(x, g))
        if not gens:
            result = _subgroup_from_elements(self.degree, [identity])
        else:
            result = PermGroup(self.degree, tuple(Permutation._wrap(t) for t in gens))
            result._chain = chain
        cap = enumeration_limit(limit)
        if result.order() > cap:
            raise ThresholdExceeded(
                f"desk-scale exceeded: derived subgroup order {result.order()} > limit {cap}"
            )
        self._cache["derived"] = result
        return result

    def fingerprint(self, limit: int | None = None) -> Fingerprint:
        cached = self._cache.get("fingerprint")
        if cached is not None:
            return cached
        order_hist = self.element_order_histogram(limit)
        table = self.conjugacy_classes(limit)
        size_counts: dict[int, int] = {}
        for s in table.sizes:
            size_counts[s] = size_counts.get(s, 0) + 1
        fp = Fingerprint(
            order=self.order(),
            exponent=self.exponent(limit),
            element_order_histogram=order_hist,
            class_size_histogram=tuple(sorted(size_counts.items())),
            center_order=self.center(limit).order(),
            derived_order=self.derived_subgroup(limit).order(),
            abelian=self.is_abelian(),
        )
        self._cache["fingerprint"] = fp
        return fp

    def conjugate_by(self, s: Permutation) -> "PermGroup":
        """The relabeled group s^-1 G s."""
        if s.degree != self.degree:
            raise DegreeMismatch(f"degree {s.degree} vs group degree {self.degree}")
        return PermGroup(
            self.degree,
            tuple(Permutation._wrap(kernels.conjugate(t, s.images)) for t in self._raw),
        )

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, gens={len(self.generators)})"


def _subgroup_from_elements(degree: int, raw_elements) -> PermGroup:
    """Build a group from a closed element list, with a reduced generating set.

    Scans elements in sorted order and keeps those not generated by the
    elements kept so far; the element cache is pre-seeded since the full
    list is already in hand.
    """
    identity = tuple(range(degree))
    elems = sorted(raw_elements)
    gens: list[tuple[int, ...]] = []
    chain: _Chain | None = None
    for t in elems:
        if t == identity:
            continue
        if chain is not None and chain.contains(t):
            continue
        gens.append(t)
        chain = _Chain(degree, gens)
        if chain.order() == len(elems):
            break
    if not gens:
        gens = [identity]
        chain = _Chain(degree, gens)
    group = PermGroup(degree, tuple(Permutation._wrap(t) for t in gens))
    group._chain = chain
    if chain.order() != len(elems):
        raise ChromarankError("element list is not closed under the group operation")
    group._cache["order"] = len(elems)
    group._cache["elements_raw"] = tuple(elems)
    return group


def group_from_generators(generators: Iterable[Permutation], degree: int | None = None) -> PermGroup:
    """Public constructor used by callers that have bare generator lists."""
    gens = tuple(generators)
    if degree is None:
        return PermGroup.from_generators(gens)
    return PermGroup(degree, gens)


def read_generator_file(path: str) -> PermGroup:
    """Read a generator file: a degree header, then one permutation per line.

    Format: the first significant line is "degree <d>"; every following
    nonempty line is a generator in 0-based disjoint-cycle notation, with
    "()" for the identity.  "#" starts a comment.
    """
    with open(path, encoding="utf-8") as fh:
        raw_lines = fh.readlines()
    degree = None
    gens: list[Permutation] = []
    for no, line in enumerate(raw_lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if degree is None:
            parts = text.split()
            if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit():
                raise ParseError(f"expected 'degree <d>' header, got {text!r}", line=no)
            degree = int(parts[1])
            if degree < 1:
                raise ParseError("degree must be at least 1", line=no)
            continue
        try:
            gens.append(Permutation.from_cycles(text, degree))
        except ParseError as exc:
            raise ParseError(f"bad generator: {exc.args[0]}", line=no) from None
    if degree is None:
        raise ParseError(f"no degree header in {path}")
    if not gens:
        raise ParseError(f"no generators in {path}")
    return PermGroup(degree, gens)
