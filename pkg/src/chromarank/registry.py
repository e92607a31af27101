"""Good-group ledger: seed axioms, closure-rule certification, exploration.

A registry is keyed by a prime p and stores entries with a status of
"good", "bad" or "unknown" plus a fingerprint for concrete groups.  The
rule set mirrors the closure properties of the good class:

    SEED         axiom families (abelian, symmetric, GL coprime to p,
                 order p**3, order 32 at p = 2)
    PRODUCT      both factors good implies the product good
    WREATH       base good implies base wr C_p good
    CENTRALIZER  ambient good implies centralizers of p-power elements good
    SYLOW        Sylow p-subgroup good implies the group good
    FACTOR       product and one factor good implies the other factor good

certify searches those rules backward from an expression to seed axioms;
explore applies the forward constructions breadth-first, deduplicating by
fingerprint.  Matching fingerprints with contradictory statuses raise
ConsistencyError, and a derivation for a bad-fingerprinted group is a hard
error since the rules are theorems.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from . import constructors, dsl, kernels
from .arith import is_p_power, is_prime, p_part
from .errors import ChromarankError, ConsistencyError, ParseError, ThresholdExceeded
from .group import Fingerprint, PermGroup, enumeration_limit

log = logging.getLogger(__name__)

RULES = ("SEED", "PRODUCT", "WREATH", "CENTRALIZER", "SYLOW", "FACTOR")
STATUSES = ("good", "bad", "unknown")

ENTRY_FIELDS = ("name", "expr", "prime", "order", "fingerprint", "status", "rule", "parents")

SEED_AXIOMS = ("abelian", "symmetric", "gl-coprime", "order-p3", "order-32")


@dataclass(frozen=True)
class RegistryEntry:
    """One ledger line; axiom entries carry no order or fingerprint."""

    name: str
    expr: str | None
    prime: int
    order: int | None
    fingerprint: Fingerprint | None
    status: str
    rule: str
    parents: tuple[str, ...] = ()

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ChromarankError(f"bad status {self.status!r}")

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "expr": self.expr,
            "prime": self.prime,
            "order": self.order,
            "fingerprint": None if self.fingerprint is None else self.fingerprint.to_record(),
            "status": self.status,
            "rule": self.rule,
            "parents": list(self.parents),
        }

    @classmethod
    def from_record(cls, rec: dict) -> "RegistryEntry":
        if set(rec) != set(ENTRY_FIELDS):
            unknown = sorted(set(rec) - set(ENTRY_FIELDS))
            missing = sorted(set(ENTRY_FIELDS) - set(rec))
            trouble = []
            if unknown:
                trouble.append(f"unknown fields {unknown}")
            if missing:
                trouble.append(f"missing fields {missing}")
            raise ParseError("registry record with " + " and ".join(trouble))
        fp = rec["fingerprint"]
        return cls(
            name=str(rec["name"]),
            expr=None if rec["expr"] is None else str(rec["expr"]),
            prime=int(rec["prime"]),
            order=None if rec["order"] is None else int(rec["order"]),
            fingerprint=None if fp is None else Fingerprint.from_record(fp),
            status=str(rec["status"]),
            rule=str(rec["rule"]),
            parents=tuple(str(x) for x in rec["parents"]),
        )


@dataclass(frozen=True)
class DerivationTree:
    """A certificate: the expression, the rule applied, and its premises."""

    subject: str
    rule: str
    detail: str
    premises: tuple["DerivationTree", ...] = ()

    def to_record(self) -> dict:
        return {
            "subject": self.subject,
            "rule": self.rule,
            "detail": self.detail,
            "premises": [p.to_record() for p in self.premises],
        }

    def walk(self):
        yield self
        for p in self.premises:
            yield from p.walk()

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        head = f"{pad}{self.subject}  [{self.rule}"
        if self.detail:
            head += f": {self.detail}"
        head += "]"
        lines = [head]
        for p in self.premises:
            lines.append(p.render(indent + 1))
        return "\n".join(lines)


def _fp_key(fp: Fingerprint) -> tuple:
    return (
        fp.order,
        fp.exponent,
        fp.element_order_histogram,
        fp.class_size_histogram,
        fp.center_order,
        fp.derived_order,
        fp.abelian,
    )


class Registry:
    """Ordered collection of entries for one prime, consistency-checked."""

    def __init__(self, prime: int | None = None, entries=()):
        if prime is not None and not is_prime(prime):
            raise ValueError(f"{prime} is not prime")
        self.prime = prime
        self.entries: list[RegistryEntry] = []
        self._by_name: dict[str, RegistryEntry] = {}
        self._by_fp: dict[tuple, list[RegistryEntry]] = {}
        for e in entries:
            self.add(e)

    @classmethod
    def with_defaults(cls, p: int, limit: int | None = None) -> "Registry":
        return cls(p, seed_defaults(p, limit))

    def add(self, entry: RegistryEntry) -> RegistryEntry:
        if self.prime is None:
            self.prime = entry.prime
        elif entry.prime != self.prime:
            raise ConsistencyError(
                f"registry is keyed to prime {self.prime}, entry has {entry.prime}"
            )
        if entry.name in self._by_name:
            existing = self._by_name[entry.name]
            if existing == entry:
                return existing
            raise ConsistencyError(f"duplicate entry name {entry.name!r}")
        if entry.fingerprint is not None:
            key = _fp_key(entry.fingerprint)
            for other in self._by_fp.get(key, ()):
                if {other.status, entry.status} == {"good", "bad"}:
                    raise ConsistencyError(
                        f"fingerprint of {entry.name!r} matches {other.name!r} "
                        f"with contradictory status"
                    )
            self._by_fp.setdefault(key, []).append(entry)
        self.entries.append(entry)
        self._by_name[entry.name] = entry
        return entry

    def get(self, name: str) -> RegistryEntry | None:
        return self._by_name.get(name)

    def find_fingerprint(self, fp: Fingerprint) -> list[RegistryEntry]:
        return list(self._by_fp.get(_fp_key(fp), ()))

    def bad_match(self, fp: Fingerprint) -> RegistryEntry | None:
        for e in self.find_fingerprint(fp):
            if e.status == "bad":
                return e
        return None

    def good_entries(self) -> list[RegistryEntry]:
        return [e for e in self.entries if e.status == "good"]

    def has_bad_of_order(self, order: int) -> bool:
        return any(e.status == "bad" and e.order == order for e in self.entries)

    def save(self, path: str) -> None:
        """One canonical record per line; stable field order, append-friendly."""
        with open(path, "w", encoding="utf-8") as fh:
            for e in self.entries:
                fh.write(json.dumps(e.to_record(), separators=(",", ":")) + "\n")

    @classmethod
    def load(cls, path: str) -> "Registry":
        reg = cls()
        with open(path, encoding="utf-8") as fh:
            for no, line in enumerate(fh, start=1):
                text = line.strip()
                if not text:
                    continue
                try:
                    rec = json.loads(text)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"bad registry line: {exc}", line=no) from None
                try:
                    reg.add(RegistryEntry.from_record(rec))
                except ParseError as exc:
                    raise ParseError(str(exc.args[0]), line=no) from None
        return reg


# -- seeds ---------------------------------------------------------------


def seed_defaults(p: int, limit: int | None = None) -> list[RegistryEntry]:
    """Axiom entries for the good families, plus the known bad example.

    The bad entry at odd p is the unipotent radical of GL_4(F_p), the
    upper unitriangular 4x4 matrices, of order p**6; its fingerprint is
    computed here once from a faithful q**3-point action.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    out = []
    for key in SEED_AXIOMS:
        if key == "order-32" and p != 2:
            continue
        out.append(
            RegistryEntry(
                name=f"axiom:{key}",
                expr=None,
                prime=p,
                order=None,
                fingerprint=None,
                status="good",
                rule="SEED",
            )
        )
    if p != 2:
        uni = constructors.unitriangular4(p)
        out.append(
            RegistryEntry(
                name="unipotent-radical-gl4",
                expr=None,
                prime=p,
                order=uni.order(),
                fingerprint=uni.fingerprint(limit),
                status="bad",
                rule="CITED",
                parents=(),
            )
        )
    return out


def _match_seed(expr: dsl.GroupExpr, p: int, group: PermGroup) -> str | None:
    """First axiom family the expression falls into, or None."""
    if isinstance(expr, dsl.Atom) and expr.kind == "symmetric":
        return "symmetric"
    if isinstance(expr, dsl.GL) and expr.q != p:
        return "gl-coprime"
    if group.is_abelian():
        return "abelian"
    if group.order() == p**3:
        return "order-p3"
    if p == 2 and group.order() == 32:
        return "order-32"
    return None


# -- certification ---------------------------------------------------------


DEFAULT_SEARCH_DEPTH = 6


def certify(
    expr: dsl.GroupExpr | str,
    p: int,
    registry: Registry,
    depth: int = DEFAULT_SEARCH_DEPTH,
    limit: int | None = None,
) -> DerivationTree | None:
    """Backward search for a derivation of goodness; None when not found.

    Rules are tried in a fixed order (RULES), so results are deterministic.
    When a derivation is found but the group's fingerprint matches a
    bad-status entry, ConsistencyError is raised: the rules are theorems,
    so that combination marks a bug or a poisoned registry.
    """
    if isinstance(expr, str):
        expr = dsl.parse(expr)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if registry.prime not in (None, p):
        raise ConsistencyError(f"registry is keyed to prime {registry.prime}, not {p}")
    cache: dict[str, PermGroup] = {}
    tree = _search(expr, p, registry, depth, limit, cache)
    if tree is not None:
        group = _eval_cached(expr, limit, cache)
        if registry.has_bad_of_order(group.order()):
            fp = group.fingerprint(limit)
            bad = registry.bad_match(fp)
            if bad is not None:
                raise ConsistencyError(
                    f"derivation found for {dsl.print_expr(expr)} whose fingerprint "
                    f"matches bad entry {bad.name!r}"
                )
    return tree


def _eval_cached(expr, limit, cache: dict):
    return dsl.evaluate(expr, limit, memo=cache)


def _search(expr, p, registry, depth, limit, cache) -> DerivationTree | None:
    if depth <= 0:
        return None
    text = dsl.print_expr(expr)

    # SEED
    group = _eval_cached(expr, limit, cache)
    axiom = _match_seed(expr, p, group)
    if axiom is not None:
        return DerivationTree(text, "SEED", axiom)

    # PRODUCT
    if isinstance(expr, dsl.Prod):
        left = _search(expr.left, p, registry, depth - 1, limit, cache)
        if left is not None:
            right = _search(expr.right, p, registry, depth - 1, limit, cache)
            if right is not None:
                return DerivationTree(text, "PRODUCT", "", (left, right))

    # WREATH: base wr C_p with the registry prime on top
    if isinstance(expr, dsl.Wr) and expr.n == p:
        base = _search(expr.base, p, registry, depth - 1, limit, cache)
        if base is not None:
            return DerivationTree(text, "WREATH", f"top c({p})", (base,))

    # CENTRALIZER: centralizers of p-power elements of a good group
    if isinstance(expr, dsl.Cent):
        inner_group = _eval_cached(expr.inner, limit, cache)
        rep, _ = dsl._select_centralizer(inner_group, expr.order, expr.czorder, limit)
        if is_p_power(rep.order(), p):
            inner = _search(expr.inner, p, registry, depth - 1, limit, cache)
            if inner is not None:
                return DerivationTree(
                    text, "CENTRALIZER", f"of class rep {rep.cycle_string()}", (inner,)
                )

    # SYLOW: good Sylow p-subgroup lifts to the group
    if not (isinstance(expr, dsl.Syl) and expr.p == p):
        if p_part(group.order(), p) < group.order():
            syl_expr = dsl.Syl(p, expr)
            sub = _search(syl_expr, p, registry, depth - 1, limit, cache)
            if sub is not None:
                return DerivationTree(text, "SYLOW", "", (sub,))

    # FACTOR: a registered good product with this expression as one factor
    for entry in registry.good_entries():
        if entry.expr is None:
            continue
        try:
            parsed = dsl.parse(entry.expr)
        except ParseError:
            continue
        if not isinstance(parsed, dsl.Prod):
            continue
        for mine, other in ((parsed.left, parsed.right), (parsed.right, parsed.left)):
            if dsl.print_expr(mine) == text:
                sub = _search(other, p, registry, depth - 1, limit, cache)
                if sub is not None:
                    return DerivationTree(text, "FACTOR", f"witness {entry.name}", (sub,))

    return None


def replay(
    tree: DerivationTree,
    p: int,
    registry: Registry,
    limit: int | None = None,
    _memo: dict | None = None,
) -> None:
    """Re-check every rule application in a derivation; raises on failure."""
    if _memo is None:
        _memo = {}
    expr = dsl.parse(tree.subject)
    if tree.rule == "SEED":
        group = dsl.evaluate(expr, limit, memo=_memo)
        axiom = _match_seed(expr, p, group)
        if axiom != tree.detail:
            raise ConsistencyError(
                f"{tree.subject}: seed axiom {tree.detail!r} no longer matches"
            )
        if registry.get(f"axiom:{axiom}") is None and axiom in SEED_AXIOMS:
            # Seeded registries carry the axiom entries; their absence means
            # the registry was not initialized for this prime.
            raise ConsistencyError(f"axiom entry axiom:{axiom} missing from registry")
        return
    if tree.rule == "PRODUCT":
        if not isinstance(expr, dsl.Prod) or len(tree.premises) != 2:
            raise ConsistencyError(f"{tree.subject}: malformed PRODUCT node")
        expected = {dsl.print_expr(expr.left), dsl.print_expr(expr.right)}
        if {t.subject for t in tree.premises} != expected:
            raise ConsistencyError(f"{tree.subject}: PRODUCT premises do not match factors")
    elif tree.rule == "WREATH":
        if (
            not isinstance(expr, dsl.Wr)
            or expr.n != p
            or len(tree.premises) != 1
            or tree.premises[0].subject != dsl.print_expr(expr.base)
        ):
            raise ConsistencyError(f"{tree.subject}: malformed WREATH node")
    elif tree.rule == "CENTRALIZER":
        if (
            not isinstance(expr, dsl.Cent)
            or len(tree.premises) != 1
            or tree.premises[0].subject != dsl.print_expr(expr.inner)
        ):
            raise ConsistencyError(f"{tree.subject}: malformed CENTRALIZER node")
        inner_group = dsl.evaluate(expr.inner, limit, memo=_memo)
        rep, _ = dsl._select_centralizer(inner_group, expr.order, expr.czorder, limit)
        if not is_p_power(rep.order(), p):
            raise ConsistencyError(
                f"{tree.subject}: selected class has order {rep.order()}, not a {p}-power"
            )
    elif tree.rule == "SYLOW":
        if len(tree.premises) != 1 or tree.premises[0].subject != dsl.print_expr(
            dsl.Syl(p, expr)
        ):
            raise ConsistencyError(f"{tree.subject}: malformed SYLOW node")
    elif tree.rule == "FACTOR":
        if len(tree.premises) != 1 or not tree.detail.startswith("witness "):
            raise ConsistencyError(f"{tree.subject}: malformed FACTOR node")
        witness = registry.get(tree.detail.removeprefix("witness "))
        if witness is None or witness.status != "good" or witness.expr is None:
            raise ConsistencyError(f"{tree.subject}: FACTOR witness missing or not good")
        parsed = dsl.parse(witness.expr)
        if not isinstance(parsed, dsl.Prod):
            raise ConsistencyError(f"{tree.subject}: FACTOR witness is not a product")
        sides = {dsl.print_expr(parsed.left), dsl.print_expr(parsed.right)}
        if tree.subject not in sides or tree.premises[0].subject not in sides:
            raise ConsistencyError(f"{tree.subject}: FACTOR sides do not line up")
    else:
        raise ConsistencyError(f"{tree.subject}: unknown rule {tree.rule!r}")
    for premise in tree.premises:
        replay(premise, p, registry, limit, _memo)


def register_derivation(
    registry: Registry,
    tree: DerivationTree,
    p: int,
    limit: int | None = None,
) -> list[RegistryEntry]:
    """Add an entry per derivation node (leaves first); returns new entries."""
    added = []
    memo: dict = {}
    for node in reversed(list(tree.walk())):
        if registry.get(node.subject) is not None:
            continue
        group = dsl.evaluate(dsl.parse(node.subject), limit, memo=memo)
        parents: tuple[str, ...]
        if node.rule == "SEED":
            parents = (f"axiom:{node.detail}",)
        else:
            parents = tuple(t.subject for t in node.premises)
        entry = RegistryEntry(
            name=node.subject,
            expr=node.subject,
            prime=p,
            order=group.order(),
            fingerprint=group.fingerprint(limit),
            status="good",
            rule=node.rule,
            parents=parents,
        )
        try:
            registry.add(entry)
            added.append(entry)
        except ConsistencyError:
            raise
    return added


# -- exploration -------------------------------------------------------------


@dataclass
class _Session:
    """Transient realization state for one explore run."""

    groups: dict[str, PermGroup] = field(default_factory=dict)
    class_profiles: dict[tuple, tuple] = field(default_factory=dict)


def _class_profile(group: PermGroup, limit) -> tuple:
    """Joint (element order, class size) histogram; finer than the fingerprint."""
    table = group.conjugacy_classes(limit)
    pairs = sorted((rep.order(), size) for rep, size in zip(table.reps, table.sizes))
    return tuple(pairs)


def _realize(entry: RegistryEntry, session: _Session, limit) -> PermGroup | None:
    group = session.groups.get(entry.name)
    if group is not None:
        return group
    if entry.expr is None:
        log.info("explore: cannot realize %s (no expression); skipping", entry.name)
        return None
    try:
        group = dsl.evaluate(dsl.parse(entry.expr), limit)
    except ThresholdExceeded as exc:
        log.info("explore: %s exceeds the enumeration limit (%s); skipping", entry.name, exc)
        return None
    session.groups[entry.name] = group
    return group


def _register_candidate(
    registry: Registry,
    session: _Session,
    name: str,
    expr: str | None,
    p: int,
    group: PermGroup,
    rule: str,
    parents: tuple[str, ...],
    limit,
    paranoid: bool,
) -> RegistryEntry | None:
    """Fingerprint, dedup, and add a freshly constructed good group."""
    try:
        fp = group.fingerprint(limit)
    except ThresholdExceeded as exc:
        log.info("explore: skipping %s: %s", name, exc)
        return None
    key = _fp_key(fp)
    matches = registry.find_fingerprint(fp)
    for other in matches:
        if other.status == "bad":
            raise ConsistencyError(
                f"constructed good group {name!r} matches bad entry {other.name!r}"
            )
    if matches:
        if paranoid:
            profile = _class_profile(group, limit)
            for other in matches:
                known = session.class_profiles.get(_fp_key(other.fingerprint))
                if known is not None and known != profile:
                    raise ConsistencyError(
                        f"fingerprint collision between {name!r} and {other.name!r}: "
                        f"class profiles differ"
                    )
        return None
    if registry.get(name) is not None:
        # Same name, different fingerprint: disambiguate deterministically.
        suffix = 2
        while registry.get(f"{name}#{suffix}") is not None:
            suffix += 1
        name = f"{name}#{suffix}"
    entry = RegistryEntry(
        name=name,
        expr=expr,
        prime=p,
        order=group.order(),
        fingerprint=fp,
        status="good",
        rule=rule,
        parents=parents,
    )
    registry.add(entry)
    session.groups[name] = group
    if paranoid:
        session.class_profiles[key] = _class_profile(group, limit)
    return entry


def _centralizer_children(
    registry, session, parent: RegistryEntry, group: PermGroup, p, bound, limit, paranoid
) -> list[RegistryEntry]:
    """Centralizers of one representative per p-power class of the group."""
    cap = enumeration_limit(limit)
    if group.order() > cap:
        log.info("explore: %s too large to enumerate for centralizers", parent.name)
        return []
    added = []
    table = group.conjugacy_classes(limit)
    chosen: dict[tuple[int, int], str] = {}
    for rep in table.reps:
        o = rep.order()
        if not is_p_power(o, p):
            continue
        cent = group._centralizer_raw([rep.images], limit)
        czo = cent.order()
        if czo > bound:
            continue
        expr = None
        if parent.expr is not None and (o, czo) not in chosen:
            expr = f"cent({parent.expr},order={o},czorder={czo})"
        chosen.setdefault((o, czo), rep.cycle_string())
        name = expr or f"cent[{parent.name};o{o};cz{czo};{rep.cycle_string()}]"
        entry = _register_candidate(
            registry, session, name, expr, p, cent, "CENTRALIZER", (parent.name,), limit, paranoid
        )
        if entry is not None:
            added.append(entry)
    return added


def explore(
    registry: Registry,
    p: int,
    order_bound: int,
    depth: int = 3,
    limit: int | None = None,
    paranoid: bool = False,
) -> list[RegistryEntry]:
    """Forward closure of the good entries under the constructions.

    Each round applies, to every concrete good entry: the wreath with C_p
    (and centralizers of p-power classes inside the new wreath), products
    with other registry members, and centralizers of p-power classes of
    the entry itself.  Only results of order at most order_bound are
    registered, deduplicated by fingerprint, so a rerun with the same
    bounds adds nothing once a round reaches a fixed point.  depth caps
    the number of rounds; groups past the enumeration limit are skipped
    with a logged notice.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if registry.prime not in (None, p):
        raise ConsistencyError(f"registry is keyed to prime {registry.prime}, not {p}")
    session = _Session()
    added: list[RegistryEntry] = []
    for _round in range(depth):
        snapshot = [e for e in registry.good_entries() if e.order is not None]
        fresh: list[RegistryEntry] = []
        for entry in snapshot:
            group = _realize(entry, session, limit)
            if group is None:
                continue
            # wreath with C_p, then its centralizer children
            worder = entry.order**p * p
            if worder <= order_bound:
                wexpr = f"wr({entry.expr},c({p}))" if entry.expr is not None else None
                wname = wexpr or f"wr[{entry.name};c({p})]"
                wreath = constructors.wreath_cyclic(group, p)
                wentry = _register_candidate(
                    registry, session, wname, wexpr, p, wreath, "WREATH", (entry.name,), limit, paranoid
                )
                if wentry is not None:
                    fresh.append(wentry)
                    fresh.extend(
                        _centralizer_children(
                            registry, session, wentry, wreath, p, order_bound, limit, paranoid
                        )
                    )
            # centralizers inside the entry itself
            fresh.extend(
                _centralizer_children(
                    registry, session, entry, group, p, order_bound, limit, paranoid
                )
            )
            # products with other snapshot members
            for other in snapshot:
                if other.order is None or entry.order * other.order > order_bound:
                    continue
                if other.name < entry.name:
                    continue  # unordered pairs once
                ogroup = _realize(other, session, limit)
                if ogroup is None:
                    continue
                if entry.expr is not None and other.expr is not None:
                    pexpr = f"prod({entry.expr},{other.expr})"
                else:
                    pexpr = None
                pname = pexpr or f"prod[{entry.name};{other.name}]"
                product = constructors.direct_product(group, ogroup)
                pentry = _register_candidate(
                    registry,
                    session,
                    pname,
                    pexpr,
                    p,
                    product,
                    "PRODUCT",
                    (entry.name, other.name),
                    limit,
                    paranoid,
                )
                if pentry is not None:
                    fresh.append(pentry)
        added.extend(fresh)
        if not fresh:
            break
    return added
