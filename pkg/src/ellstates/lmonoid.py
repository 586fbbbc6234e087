"""Lattice-ordered monoids and their Grothendieck lattice-group envelope.

Two carrier forms are supported: finite Cayley tables, and the symbolic
cancellative cones N^k (componentwise addition).  The envelope K(M) is the
abelian lattice-group of formal differences [x, y]; in the finite case its
classes are computed by explicit witness search over the carrier, in the
symbolic case by canonical integer forms x - y.

The witness relation defining equality of pairs is

    [x, y] = [x', y']   iff   some carrier z has  z + x + y' = z + x' + y

and the order, join and meet of classes are

    [x1, y1] <= [x2, y2]  iff  some z has  z + x1 + y2 <=_M z + y1 + x2
    join = [x1 + x2, (x1 + y2) /\\ (x2 + y1)]
    meet = [(x1 + y2) /\\ (x2 + y1), y1 + y2]

The monoid embeds via h(x) = [x + x, x]; h is injective exactly when M is
cancellative.

A symbolic cone may carry either lattice orientation.  The natural one has
meet = componentwise min.  Multiplicative cones (hoop reducts) are ordered
the other way around -- the unit is the top -- and order-sensitive facts
about K(M), such as the lower-bound guarantee of image_bound, only come out
right when the monoid's own orientation is used.  Hence the
``reversed_order`` flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Iterable

from .reports import (
    Check,
    MalformedInputError,
    ValidationReport,
    passed_check,
)

Element = Any  # int index (finite) or tuple of ints (symbolic)


def check_table(name: str, table: Any, rows: int, entries: int) -> tuple[tuple[int, ...], ...]:
    """Shape-check a Cayley table; raises MalformedInputError naming the cell."""
    if len(table) != rows:
        raise MalformedInputError(f"{name}: expected {rows} rows, got {len(table)}")
    out = []
    for i, row in enumerate(table):
        if len(row) != rows:
            raise MalformedInputError(f"{name} row {i}: expected {rows} entries, got {len(row)}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < entries:
                raise MalformedInputError(f"{name}[{i}][{j}] = {v!r} is not an index in 0..{entries - 1}")
        out.append(tuple(row))
    return tuple(out)


class FiniteLMonoid:
    """A lattice-ordered monoid given by n x n tables over indices 0..n-1."""

    def __init__(self, add, meet, join, unit: int, size: int | None = None):
        n = size if size is not None else len(add)
        if n < 1:
            raise MalformedInputError("size must be at least 1")
        self.size = n
        self.add_table = check_table("add", add, n, n)
        self.meet_table = check_table("meet", meet, n, n)
        self.join_table = check_table("join", join, n, n)
        if not isinstance(unit, int) or not 0 <= unit < n:
            raise MalformedInputError(f"unit = {unit!r} is not an index in 0..{n - 1}")
        self.unit = unit

    def elements(self) -> range:
        return range(self.size)

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def leq(self, x: int, y: int) -> bool:
        return self.meet_table[x][y] == x

    def token(self, x: int) -> str:
        return str(x)


@dataclass(frozen=True)
class SymbolicCancellativeMonoid:
    """The cone N^rank under componentwise addition.

    ``reversed_order=False`` gives the natural lattice (meet = min);
    ``reversed_order=True`` gives the hoop-reduct orientation (meet = max,
    the zero tuple on top).  Cancellative by construction either way.
    """

    rank: int
    reversed_order: bool = False

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise MalformedInputError("rank must be at least 1")

    @property
    def unit(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, x: tuple, y: tuple) -> tuple:
        return tuple(a + b for a, b in zip(x, y))

    def meet(self, x: tuple, y: tuple) -> tuple:
        if self.reversed_order:
            return tuple(max(a, b) for a, b in zip(x, y))
        return tuple(min(a, b) for a, b in zip(x, y))

    def join(self, x: tuple, y: tuple) -> tuple:
        if self.reversed_order:
            return tuple(min(a, b) for a, b in zip(x, y))
        return tuple(max(a, b) for a, b in zip(x, y))

    def leq(self, x: tuple, y: tuple) -> bool:
        if self.reversed_order:
            return all(a >= b for a, b in zip(x, y))
        return all(a <= b for a, b in zip(x, y))

    def window(self, bound: int) -> list[tuple[int, ...]]:
        return [tuple(t) for t in product(range(bound + 1), repeat=self.rank)]

    def token(self, x: tuple) -> str:
        return "(" + ",".join(str(c) for c in x) + ")"


@dataclass(frozen=True)
class KElement:
    """A formal difference [pos, neg] over the base monoid."""

    pos: Element
    neg: Element


class KGroup:
    """The envelope K(M), as an explicit pair quotient or as canonical Z^k."""

    def __init__(self, base):
        self.base = base
        if isinstance(base, SymbolicCancellativeMonoid):
            self.mode = "symbolic"
            self.pairs = None
            self.class_ids = None
            self.class_members = None
        else:
            self.mode = "finite-quotient"
            self._build_finite_quotient()

    def _build_finite_quotient(self) -> None:
        M = self.base
        pairs = [(x, y) for x in M.elements() for y in M.elements()]
        class_ids: dict[tuple, int] = {}
        members: list[list[tuple]] = []
        for p in pairs:
            for cid, group in enumerate(members):
                if eq_witness(M, p, group[0]) is not None:
                    class_ids[p] = cid
                    group.append(p)
                    break
            else:
                class_ids[p] = len(members)
                members.append([p])
        self.pairs = pairs
        self.class_ids = class_ids
        self.class_members = members

    # Representatives are lexicographically least because pairs are scanned
    # in index order and the first member of each class is kept first.
    def representatives(self) -> list[KElement]:
        return [KElement(*group[0]) for group in self.class_members]

    def class_of(self, e: KElement) -> int:
        try:
            return self.class_ids[(e.pos, e.neg)]
        except KeyError:
            raise MalformedInputError(f"pair ({e.pos}, {e.neg}) is not over this carrier") from None

    def canonical(self, e: KElement) -> tuple[int, ...]:
        if self.mode != "symbolic":
            raise MalformedInputError("canonical forms exist only in symbolic mode")
        return tuple(p - n for p, n in zip(e.pos, e.neg))

    def from_canonical(self, c: Iterable[int]) -> KElement:
        c = tuple(c)
        return KElement(tuple(max(v, 0) for v in c), tuple(max(-v, 0) for v in c))

    def zero(self) -> KElement:
        return KElement(self.base.unit, self.base.unit)

    def token(self, e: KElement) -> str:
        if self.mode == "symbolic":
            return "(" + ",".join(str(v) for v in self.canonical(e)) + ")"
        return f"[{self.base.token(e.pos)},{self.base.token(e.neg)}]"


def eq_witness(M, p: tuple, q: tuple):
    """A carrier z with z + x + y' = z + x' + y, or None."""
    x, y = p
    xp, yp = q
    for z in M.elements():
        if M.add(M.add(z, x), yp) == M.add(M.add(z, xp), y):
            return z
    return None


def leq_witness(M, p: tuple, q: tuple):
    """A carrier z with z + x1 + y2 <=_M z + y1 + x2, or None."""
    x1, y1 = p
    x2, y2 = q
    for z in M.elements():
        if M.leq(M.add(M.add(z, x1), y2), M.add(M.add(z, y1), x2)):
            return z
    return None


def k_envelope(M) -> tuple[KGroup, Callable[[Element], KElement]]:
    """The envelope of M together with the embedding h(x) = [x + x, x]."""
    K = KGroup(M)

    def h(x: Element) -> KElement:
        return KElement(M.add(x, x), x)

    return K, h


def k_equal(K: KGroup, e1: KElement, e2: KElement) -> bool:
    if K.mode == "symbolic":
        return K.canonical(e1) == K.canonical(e2)
    return eq_witness(K.base, (e1.pos, e1.neg), (e2.pos, e2.neg)) is not None


def k_leq(K: KGroup, e1: KElement, e2: KElement) -> bool:
    if K.mode == "symbolic":
        c1, c2 = K.canonical(e1), K.canonical(e2)
        if K.base.reversed_order:
            return all(a >= b for a, b in zip(c1, c2))
        return all(a <= b for a, b in zip(c1, c2))
    return leq_witness(K.base, (e1.pos, e1.neg), (e2.pos, e2.neg)) is not None


def k_add(K: KGroup, e1: KElement, e2: KElement) -> KElement:
    M = K.base
    return KElement(M.add(e1.pos, e2.pos), M.add(e1.neg, e2.neg))


def k_negate(K: KGroup, e: KElement) -> KElement:
    return KElement(e.neg, e.pos)


def k_join(K: KGroup, e1: KElement, e2: KElement) -> KElement:
    M = K.base
    return KElement(
        M.add(e1.pos, e2.pos),
        M.meet(M.add(e1.pos, e2.neg), M.add(e2.pos, e1.neg)),
    )


def k_meet(K: KGroup, e1: KElement, e2: KElement) -> KElement:
    M = K.base
    return KElement(
        M.meet(M.add(e1.pos, e2.neg), M.add(e2.pos, e1.neg)),
        M.add(e1.neg, e2.neg),
    )


def image_bound(K: KGroup, h: Callable[[Element], KElement], e: KElement) -> KElement:
    """h(a /\\ b) for e = [a, b]: an image element below e (lower-bound lemma)."""
    return h(K.base.meet(e.pos, e.neg))


def is_cancellative(M) -> bool:
    if isinstance(M, SymbolicCancellativeMonoid):
        return True
    for a, b, c in product(M.elements(), repeat=3):
        if M.add(a, c) == M.add(b, c) and a != b:
            return False
    return True


def h_is_injective(K: KGroup) -> bool:
    M = K.base
    if K.mode == "symbolic":
        return True
    seen = {}
    for x in M.elements():
        cid = K.class_of(KElement(M.add(x, x), x))
        if cid in seen and seen[cid] != x:
            return False
        seen[cid] = x
    return True


def envelope_summary(K: KGroup) -> dict[str, Any]:
    if K.mode == "symbolic":
        return {
            "mode": "symbolic",
            "classes": f"free abelian of rank {K.base.rank}",
            "trivial": False,
            "h_injective": True,
            "cancellative": True,
        }
    count = len(K.class_members)
    return {
        "mode": "finite-quotient",
        "classes": count,
        "trivial": count == 1,
        "h_injective": h_is_injective(K),
        "cancellative": is_cancellative(K.base),
    }


def validate_lmonoid(M: FiniteLMonoid) -> ValidationReport:
    """Scan every ell-monoid axiom instance; every violation is listed."""
    report = ValidationReport(subject="lmonoid")
    elems = list(M.elements())

    def scan(axiom, instances, lhs_fn, rhs_fn, names):
        bad = []
        for inst in instances:
            lhs, rhs = lhs_fn(*inst), rhs_fn(*inst)
            if lhs != rhs:
                bad.append(
                    {
                        "witness": {n: M.token(v) for n, v in zip(names, inst)},
                        "lhs": M.token(lhs),
                        "rhs": M.token(rhs),
                    }
                )
        if bad:
            report.add(Check(axiom=axiom, passed=False, witnesses=bad, violations=len(bad)))
        else:
            report.add(passed_check(axiom))

    pairs = list(product(elems, repeat=2))
    triples = list(product(elems, repeat=3))

    scan("add-commutative", pairs, lambda x, y: M.add(x, y), lambda x, y: M.add(y, x), "xy")
    scan(
        "add-associative",
        triples,
        lambda x, y, z: M.add(M.add(x, y), z),
        lambda x, y, z: M.add(x, M.add(y, z)),
        "xyz",
    )
    scan("add-unit", [(x,) for x in elems], lambda x: M.add(x, M.unit), lambda x: x, "x")
    for name, op in (("meet", M.meet), ("join", M.join)):
        scan(f"{name}-commutative", pairs, lambda x, y, op=op: op(x, y), lambda x, y, op=op: op(y, x), "xy")
        scan(
            f"{name}-associative",
            triples,
            lambda x, y, z, op=op: op(op(x, y), z),
            lambda x, y, z, op=op: op(x, op(y, z)),
            "xyz",
        )
        scan(f"{name}-idempotent", [(x,) for x in elems], lambda x, op=op: op(x, x), lambda x: x, "x")
    scan("absorption-meet", pairs, lambda x, y: M.meet(x, M.join(x, y)), lambda x, y: x, "xy")
    scan("absorption-join", pairs, lambda x, y: M.join(x, M.meet(x, y)), lambda x, y: x, "xy")
    scan(
        "distribution-meet",
        triples,
        lambda x, y, z: M.add(x, M.meet(y, z)),
        lambda x, y, z: M.meet(M.add(x, y), M.add(x, z)),
        "xyz",
    )
    scan(
        "distribution-join",
        triples,
        lambda x, y, z: M.add(x, M.join(y, z)),
        lambda x, y, z: M.join(M.add(x, y), M.add(x, z)),
        "xyz",
    )
    return report
