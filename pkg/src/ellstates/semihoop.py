"""Prelinear semihoops, their states, and the envelope-group correspondence.

A semihoop (H, ·, →, ∧, 1) is a meet-semilattice with top 1, a commutative
isotone monoid on the same order, and a residuum tied to the order by
c1 ≤ c2 iff c1 → c2 = 1 together with the exchange law
(c1·c2) → c3 = c1 → (c2 → c3).  The pseudo-join

    x ∨ y = ((x → y) → y) ∧ ((y → x) → x)

is a true join exactly when it is associative, which prelinearity grants.

A state is a map w: H → ℝ⁻ with w(1) = 0, w(x·y) = w(x) + w(y), monotone.
Everything here is exact: values are Fractions, never floats.

Sign convention for the induced envelope-group state: with the embedding
h(x) = [x·x, x], this module uses σ̂([x, y]) = w(x) − w(y), which makes
σ̂ ∘ h = w and makes σ̂ positive for the envelope order.  The mirrored
formula w(y) − w(x) negates both facts; sign_convention_diagnostic shows
the two side by side on image elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Mapping, Sequence

from ._scan import stride_select
from .lmonoid import (
    FiniteLMonoid,
    KElement,
    KGroup,
    SymbolicCancellativeMonoid,
    check_table,
    k_add,
    k_envelope,
    k_leq,
)
from .reports import (
    Check,
    InternalConsistencyError,
    MalformedInputError,
    ValidationReport,
    failed_check,
    passed_check,
)

# Scans over infinite carriers work on a window of elements.  Pair and
# triple axioms additionally stride-sample the window once it gets large,
# so a rank-3 cone does not cost 729^3 instances.
PAIR_BASE_CAP = 128
TRIPLE_BASE_CAP = 24
# The induced-state constructor re-verifies positivity and additivity on
# pairs of window elements; a modest cap keeps that affordable when callers
# sweep many states, and dedicated tests sweep wider.
SIGMA_BASE_CAP = 32


class FiniteSemihoop:
    """A semihoop on indices 0..n-1 given by times/impl/meet tables."""

    is_finite = True

    def __init__(self, times, impl, meet, top: int, size: int | None = None):
        n = size if size is not None else len(times)
        if n < 1:
            raise MalformedInputError("size must be at least 1")
        self.size = n
        self.times_table = check_table("times", times, n, n)
        self.impl_table = check_table("impl", impl, n, n)
        self.meet_table = check_table("meet", meet, n, n)
        if not isinstance(top, int) or not 0 <= top < n:
            raise MalformedInputError(f"top = {top!r} is not an index in 0..{n - 1}")
        self.top = top

    def elements(self) -> range:
        return range(self.size)

    def carrier(self, window: int) -> list[int]:
        return list(range(self.size))

    def times(self, x: int, y: int) -> int:
        return self.times_table[x][y]

    def impl(self, x: int, y: int) -> int:
        return self.impl_table[x][y]

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def leq(self, x: int, y: int) -> bool:
        return self.meet_table[x][y] == x

    def token(self, x: int) -> str:
        return str(x)


@dataclass(frozen=True)
class SymbolicConeHoop:
    """The cancellative hoop on k-tuples of nonnegative integers.

    Multiplication is addition of tuples, so accumulating more makes an
    element smaller: m ≤ n iff m ≥ n componentwise, the unit (the empty
    product, the zero tuple) is the top, and the residuum is truncated
    difference.
    """

    rank: int

    is_finite = False

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise MalformedInputError("rank must be at least 1")

    @property
    def top(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def times(self, x: tuple, y: tuple) -> tuple:
        return tuple(a + b for a, b in zip(x, y))

    def impl(self, x: tuple, y: tuple) -> tuple:
        return tuple(max(b - a, 0) for a, b in zip(x, y))

    def meet(self, x: tuple, y: tuple) -> tuple:
        return tuple(max(a, b) for a, b in zip(x, y))

    def leq(self, x: tuple, y: tuple) -> bool:
        return all(a >= b for a, b in zip(x, y))

    def carrier(self, window: int) -> list[tuple[int, ...]]:
        return [tuple(t) for t in product(range(window + 1), repeat=self.rank)]

    def token(self, x: tuple) -> str:
        return "(" + ",".join(str(c) for c in x) + ")"


class ProductHoop:
    """Direct product of semihoops, all operations componentwise."""

    def __init__(self, factors: Sequence[Any]):
        if not factors:
            raise MalformedInputError("a product needs at least one factor")
        self.factors = tuple(factors)
        self.is_finite = all(f.is_finite for f in self.factors)
        self.top = tuple(f.top for f in self.factors)

    def times(self, x: tuple, y: tuple) -> tuple:
        return tuple(f.times(a, b) for f, a, b in zip(self.factors, x, y))

    def impl(self, x: tuple, y: tuple) -> tuple:
        return tuple(f.impl(a, b) for f, a, b in zip(self.factors, x, y))

    def meet(self, x: tuple, y: tuple) -> tuple:
        return tuple(f.meet(a, b) for f, a, b in zip(self.factors, x, y))

    def leq(self, x: tuple, y: tuple) -> bool:
        return all(f.leq(a, b) for f, a, b in zip(self.factors, x, y))

    def carrier(self, window: int) -> list[tuple]:
        return [tuple(t) for t in product(*(f.carrier(window) for f in self.factors))]

    def token(self, x: tuple) -> str:
        return "(" + "|".join(f.token(a) for f, a in zip(self.factors, x)) + ")"


class RationalNegativeFragment:
    """A finitely generated piece of the semihoop on ℝ⁻.

    Carrier: nonpositive multiples of 1/denominator, · = +,
    x → y = min{0, y − x}, the numeric order.  The identity map into ℝ⁻ is
    a hoop homomorphism, hence a state.
    """

    is_finite = False

    def __init__(self, denominator: int = 1):
        if denominator < 1:
            raise MalformedInputError("denominator must be positive")
        self.denominator = denominator

    @property
    def top(self) -> Fraction:
        return Fraction(0)

    def times(self, x: Fraction, y: Fraction) -> Fraction:
        return x + y

    def impl(self, x: Fraction, y: Fraction) -> Fraction:
        return min(Fraction(0), y - x)

    def meet(self, x: Fraction, y: Fraction) -> Fraction:
        return min(x, y)

    def leq(self, x: Fraction, y: Fraction) -> bool:
        return x <= y

    def carrier(self, window: int) -> list[Fraction]:
        return [Fraction(-k, self.denominator) for k in range(window + 1)]

    def token(self, x: Fraction) -> str:
        return str(x)


def pseudo_join(H, x, y):
    return H.meet(H.impl(H.impl(x, y), y), H.impl(H.impl(y, x), x))


def lattice_check(H, window: int = 8) -> bool:
    """Whether the pseudo-join is associative over the (windowed) carrier."""
    base = stride_select(H.carrier(window), TRIPLE_BASE_CAP)
    for x, y, z in product(base, repeat=3):
        if pseudo_join(H, pseudo_join(H, x, y), z) != pseudo_join(H, x, pseudo_join(H, y, z)):
            return False
    return True


def _scan_mode(H, window: int) -> str:
    return "exhaustive" if H.is_finite else f"window-verified (N={window})"


def validate_semihoop(H, window: int = 8) -> ValidationReport:
    """Check the defining laws, then classify: prelinear, basic, cancellative.

    The classification scans are reported with pass/fail and witnesses like
    everything else but are not required for validity, so a Gödel chain
    (not cancellative) still yields an ok report.
    """
    report = ValidationReport(subject="semihoop")
    elems = H.carrier(window)
    mode = _scan_mode(H, window)
    bases = {
        1: elems,
        2: stride_select(elems, PAIR_BASE_CAP),
        3: stride_select(elems, TRIPLE_BASE_CAP),
    }

    def note_for(arity: int) -> str:
        if len(bases[arity]) < len(elems):
            return f"axis sampled {len(bases[arity])} of {len(elems)} window elements"
        return ""

    def scan(axiom: str, arity: int, instance_check, names: str, required: bool = True) -> Check:
        bad = []
        for inst in product(bases[arity], repeat=arity):
            lhs, rhs = instance_check(*inst)
            if lhs != rhs:
                bad.append(
                    {
                        "witness": {n: H.token(v) for n, v in zip(names, inst)},
                        "lhs": lhs if isinstance(lhs, bool) else H.token(lhs),
                        "rhs": rhs if isinstance(rhs, bool) else H.token(rhs),
                    }
                )
        if bad:
            check = failed_check(axiom, bad, mode=mode, note=note_for(arity))
            check.required = required
        else:
            check = passed_check(axiom, mode=mode, note=note_for(arity))
            check.required = required
        return report.add(check)

    # (i) meet-semilattice with the unit on top
    scan("meet-commutative", 2, lambda x, y: (H.meet(x, y), H.meet(y, x)), "xy")
    scan("meet-associative", 3, lambda x, y, z: (H.meet(H.meet(x, y), z), H.meet(x, H.meet(y, z))), "xyz")
    scan("meet-idempotent", 1, lambda x: (H.meet(x, x), x), "x")
    scan("top-upper-bound", 1, lambda x: (H.meet(x, H.top), x), "x")
    # (ii) commutative isotone monoid
    scan("times-commutative", 2, lambda x, y: (H.times(x, y), H.times(y, x)), "xy")
    scan("times-associative", 3, lambda x, y, z: (H.times(H.times(x, y), z), H.times(x, H.times(y, z))), "xyz")
    scan("times-unit", 1, lambda x: (H.times(x, H.top), x), "x")
    scan(
        "times-isotone",
        3,
        lambda x, y, z: (not H.leq(x, y) or H.leq(H.times(x, z), H.times(y, z)), True),
        "xyz",
    )
    # (iii) the residuum reflects the order
    scan("order-reflection", 2, lambda x, y: (H.impl(x, y) == H.top, H.leq(x, y)), "xy")
    # (iv) exchange, and the residuation law it gives together with (iii)
    scan("exchange", 3, lambda x, y, z: (H.impl(H.times(x, y), z), H.impl(x, H.impl(y, z))), "xyz")
    scan(
        "residuation",
        3,
        lambda x, y, z: (H.leq(H.times(x, z), y), H.leq(z, H.impl(x, y))),
        "xyz",
    )

    # Classification
    pre = scan(
        "prelinearity",
        3,
        lambda x, y, z: (H.leq(H.impl(H.impl(x, y), z), H.impl(H.impl(H.impl(y, x), z), z)), True),
        "xyz",
        required=False,
    )
    pj = scan(
        "pseudo-join-associative",
        3,
        lambda x, y, z: (pseudo_join(H, pseudo_join(H, x, y), z), pseudo_join(H, x, pseudo_join(H, y, z))),
        "xyz",
        required=False,
    )
    div = scan(
        "divisibility",
        2,
        lambda x, y: (H.times(x, H.impl(x, y)), H.times(y, H.impl(y, x))),
        "xy",
        required=False,
    )
    canc = scan(
        "cancellativity",
        2,
        lambda x, y: (H.impl(H.impl(x, H.times(x, y)), y), H.top),
        "xy",
        required=False,
    )

    report.flags = {
        "prelinear": pre.passed and pj.passed,
        "divisible": div.passed,
        "basic": pre.passed and pj.passed and div.passed,
        "cancellative": pre.passed and pj.passed and div.passed and canc.passed,
    }
    return report


# ---------------------------------------------------------------------------
# States


class TableState:
    """A state given pointwise, as a map element -> Fraction."""

    def __init__(self, values: Mapping[Any, Fraction | int | str]):
        self.values = {k: Fraction(v) for k, v in values.items()}

    def value(self, x) -> Fraction:
        try:
            return self.values[x]
        except KeyError:
            raise MalformedInputError(f"state has no value for element {x!r}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, TableState) and self.values == other.values


class ConeState:
    """w(m) = -<lam, m> on a cone hoop; nonnegative lam gives a valid state."""

    def __init__(self, lam: Sequence[Fraction | int | str]):
        self.lam = tuple(Fraction(v) for v in lam)

    def value(self, m: tuple) -> Fraction:
        if len(m) != len(self.lam):
            raise MalformedInputError(f"weight tuple has rank {len(self.lam)}, element has rank {len(m)}")
        return -sum((l * c for l, c in zip(self.lam, m)), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, ConeState) and self.lam == other.lam


class ProductState:
    """Sum of per-factor states on a product hoop."""

    def __init__(self, parts: Sequence[Any]):
        self.parts = tuple(parts)

    def value(self, xs: tuple) -> Fraction:
        if len(xs) != len(self.parts):
            raise MalformedInputError(f"product state has {len(self.parts)} parts, element has {len(xs)}")
        return sum((p.value(x) for p, x in zip(self.parts, xs)), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductState) and self.parts == other.parts


def zero_state(H, window: int = 8) -> TableState:
    return TableState({x: Fraction(0) for x in H.carrier(window)})


def validate_state(H, w, window: int = 8) -> ValidationReport:
    """Check codomain, (v1), (v2), (v3) exactly over the (windowed) carrier.

    A state that is not total on the carrier is a structural defect, not an
    axiom failure, and raises.
    """
    report = ValidationReport(subject="state")
    elems = H.carrier(window)
    mode = _scan_mode(H, window)
    values = {}
    for x in elems:
        values[x] = Fraction(w.value(x))  # raises MalformedInputError if partial

    bad = [{"witness": {"x": H.token(x)}, "value": str(v)} for x, v in values.items() if v > 0]
    report.add(
        failed_check("codomain-nonpositive", bad, mode=mode)
        if bad
        else passed_check("codomain-nonpositive", mode=mode)
    )

    top_val = values[H.top]
    if top_val == 0:
        report.add(passed_check("v1-unit", mode=mode))
    else:
        report.add(failed_check("v1-unit", [{"witness": {"x": H.token(H.top)}, "value": str(top_val)}], mode=mode))

    base = stride_select(elems, PAIR_BASE_CAP)
    note = f"axis sampled {len(base)} of {len(elems)} window elements" if len(base) < len(elems) else ""
    bad = []
    for x, y in product(base, repeat=2):
        xy = H.times(x, y)
        if xy not in values:
            continue  # product escaped the window; nothing to compare
        if values[xy] != values[x] + values[y]:
            bad.append(
                {
                    "witness": {"x": H.token(x), "y": H.token(y)},
                    "lhs": str(values[xy]),
                    "rhs": str(values[x] + values[y]),
                }
            )
    report.add(failed_check("v2-additive", bad, mode=mode, note=note) if bad else passed_check("v2-additive", mode=mode, note=note))

    bad = []
    for x, y in product(base, repeat=2):
        if H.leq(x, y) and values[x] > values[y]:
            bad.append(
                {
                    "witness": {"x": H.token(x), "y": H.token(y)},
                    "lhs": str(values[x]),
                    "rhs": str(values[y]),
                }
            )
    report.add(failed_check("v3-monotone", bad, mode=mode, note=note) if bad else passed_check("v3-monotone", mode=mode, note=note))
    return report


def state_properties(H, w, window: int = 8, flags: Mapping[str, bool] | None = None, pairs=None) -> ValidationReport:
    """Verify the valuation identity, the Bosbach identity, and that for a
    divisible hoop monotonicity already follows from the other axioms.

    ``pairs`` overrides the scanned pair set (used for randomized sweeps);
    ``flags`` skips re-running the semihoop classifier when already known.
    """
    if flags is None:
        flags = validate_semihoop(H, window).flags
    report = ValidationReport(subject="state-properties", flags=dict(flags))
    mode = _scan_mode(H, window)
    if pairs is None:
        base = stride_select(H.carrier(window), PAIR_BASE_CAP)
        pairs = list(product(base, repeat=2))

    def wv(x) -> Fraction:
        return Fraction(w.value(x))

    if flags.get("prelinear"):
        bad = []
        for x, y in pairs:
            lhs = wv(H.meet(x, y)) + wv(pseudo_join(H, x, y))
            rhs = wv(x) + wv(y)
            if lhs != rhs:
                bad.append({"witness": {"x": H.token(x), "y": H.token(y)}, "lhs": str(lhs), "rhs": str(rhs)})
        report.add(failed_check("valuation", bad, mode=mode) if bad else passed_check("valuation", mode=mode))

    if flags.get("basic"):
        bad = []
        for x, y in pairs:
            lhs = wv(x) + wv(H.impl(x, y))
            rhs = wv(y) + wv(H.impl(y, x))
            if lhs != rhs:
                bad.append({"witness": {"x": H.token(x), "y": H.token(y)}, "lhs": str(lhs), "rhs": str(rhs)})
        report.add(failed_check("bosbach", bad, mode=mode) if bad else passed_check("bosbach", mode=mode))

    if flags.get("divisible"):
        # v1 + v2 + nonpositive codomain already force monotonicity here;
        # confirm by direct scan.
        bad = []
        for x, y in pairs:
            if H.leq(x, y) and wv(x) > wv(y):
                bad.append({"witness": {"x": H.token(x), "y": H.token(y)}, "lhs": str(wv(x)), "rhs": str(wv(y))})
        report.add(failed_check("monotone-derived", bad, mode=mode) if bad else passed_check("monotone-derived", mode=mode))
    return report


def enumerate_states_finite(H: FiniteSemihoop) -> list[TableState]:
    """All states of a finite semihoop, by solving (v1)+(v2) exactly.

    The linear system over the rationals already pins every coordinate to
    zero: following x, x·x, (x·x)·(x·x), ... around its eventual cycle
    multiplies w(x) by powers of two that must agree, so w(x) = 0.
    Elimination therefore has to find a null space of dimension 0, and the
    guard below is a sanity check on the elimination itself.
    """
    if not getattr(H, "is_finite", False):
        raise MalformedInputError("state enumeration needs a finite carrier")
    n = H.size
    rows = []
    unit_row = [Fraction(0)] * n
    unit_row[H.top] = Fraction(1)
    rows.append(unit_row)
    for x, y in product(range(n), repeat=2):
        row = [Fraction(0)] * n
        row[H.times(x, y)] += 1
        row[x] -= 1
        row[y] -= 1
        if any(row):
            rows.append(row)

    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1

    if rank != n:
        raise InternalConsistencyError(
            f"state space has dimension {n - rank} > 0; the input violates the semihoop laws"
        )
    return [TableState({x: Fraction(0) for x in range(n)})]


# ---------------------------------------------------------------------------
# Correspondence with envelope-group states


def monoid_reduct(H):
    """The multiplicative ell-monoid (H, ·, ∧, ∨, 1) of a prelinear semihoop."""
    if isinstance(H, SymbolicConeHoop):
        return SymbolicCancellativeMonoid(rank=H.rank, reversed_order=True)
    if isinstance(H, FiniteSemihoop):
        n = H.size
        join = [[pseudo_join(H, x, y) for y in range(n)] for x in range(n)]
        return FiniteLMonoid(
            [list(r) for r in H.times_table],
            [list(r) for r in H.meet_table],
            join,
            unit=H.top,
        )
    raise MalformedInputError("envelope correspondence supports finite tables and symbolic cones")


@dataclass(frozen=True)
class KGroupState:
    """σ̂ on the subgroup generated by the image of h, σ̂([x,y]) = w(x) − w(y)."""

    K: KGroup
    h: Callable[[Any], KElement]
    state: Any

    def value(self, e: KElement) -> Fraction:
        return Fraction(self.state.value(e.pos)) - Fraction(self.state.value(e.neg))

    @property
    def weights(self) -> tuple[Fraction, ...] | None:
        return self.state.lam if isinstance(self.state, ConeState) else None


def state_to_kgroup_state(H, w, window: int = 8) -> KGroupState:
    """Induce σ̂ from a state and verify it is a state of the envelope.

    Verified on the (windowed) carrier: equal classes get equal values,
    σ̂ ∘ h = w, additivity, and positivity for the envelope order.  Any
    failure is an internal consistency error, since each is a theorem for a
    valid w.
    """
    M = monoid_reduct(H)
    K, h = k_envelope(M)
    sigma = KGroupState(K=K, h=h, state=w)

    if K.mode == "finite-quotient":
        for members in K.class_members:
            vals = {KElement(*p): sigma.value(KElement(*p)) for p in members}
            if len(set(vals.values())) > 1:
                raise InternalConsistencyError(f"σ̂ not constant on a class: {vals}")

    elems = H.carrier(window)
    for x in elems:
        if sigma.value(h(x)) != Fraction(w.value(x)):
            raise InternalConsistencyError(f"σ̂(h(x)) != w(x) at x = {H.token(x)}")

    base = stride_select(elems, SIGMA_BASE_CAP)
    candidates = [KElement(a, b) for a, b in product(base, repeat=2)]
    zero = K.zero()
    for e in candidates:
        if k_leq(K, zero, e) and sigma.value(e) < 0:
            raise InternalConsistencyError(f"σ̂ negative on a positive element [{H.token(e.pos)},{H.token(e.neg)}]")
    for e1, e2 in zip(candidates, reversed(candidates)):
        if sigma.value(k_add(K, e1, e2)) != sigma.value(e1) + sigma.value(e2):
            raise InternalConsistencyError("σ̂ not additive")
    return sigma


def kgroup_state_to_state(H, sigma, window: int = 8):
    """Pull an envelope-group state back along h; returns (w, report).

    ``sigma`` is a KGroupState or, for a cone hoop, a weight tuple.  A
    non-positive sigma is not an error here: the pulled-back map simply
    fails validation and the report names the witnesses.
    """
    if isinstance(sigma, KGroupState):
        if isinstance(H, SymbolicConeHoop):
            lam = []
            for i in range(H.rank):
                gen = tuple(1 if j == i else 0 for j in range(H.rank))
                lam.append(-sigma.value(sigma.h(gen)))
            w: Any = ConeState(lam)
        else:
            w = TableState({x: sigma.value(sigma.h(x)) for x in H.carrier(window)})
    else:
        if not isinstance(H, SymbolicConeHoop):
            raise MalformedInputError("weight-tuple form needs a cone hoop")
        w = ConeState(sigma)
    return w, validate_state(H, w, window)


def sign_convention_diagnostic(H, w, x) -> dict[str, str]:
    """What each sign convention assigns to the image element h(x)."""
    wx = Fraction(w.value(x))
    wxx = Fraction(w.value(H.times(x, x)))
    return {
        "element": H.token(x),
        "w": str(wx),
        "adopted": str(wxx - wx),
        "mirrored": str(wx - wxx),
    }
