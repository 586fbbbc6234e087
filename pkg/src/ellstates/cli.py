"""Command-line front end: load algebra and state files, run the validators
and constructions, emit machine-readable reports.

All files are JSON.  The canonical form (what ``corpus --out`` writes and
what every dump function produces) has sorted keys and two-space indent, so
parse -> serialize -> parse is the identity on canonical files.

  lattice monoid    {"size", "add", "meet", "join", "unit"}
  semihoop          {"size", "times", "impl", "meet", "top"}
  bounded algebra   {"size", "times", "impl", "meet", "join", "bot", "top"}
  symbolic          {"kind": "rotation", "rank": k}
                    {"kind": "cone", "rank": k}
                    {"kind": "product", "factors": [<algebra>, ...]}
  state             {"<index>": "<fraction>", ...} or {"lambda": ["<fraction>", ...]}
  hyperstate        {"measure": {"<atom index>": "<fraction>"}, "lambda": [...]}
                    or {"table": {"<index>": "<r+es>", ...}}

Tables are row-major arrays of element indices.  All numbers in reports are
exact fraction strings.

Exit status: 0 when every required check passed, 1 when some check failed
(the report carries witnesses), 2 when an input could not be parsed at all.
Output is deterministic for identical invocations, except the elapsed_ms
field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .corpus import (
    hyperstate_product_corpus,
    ibp0_corpus,
    lmonoid_corpus,
    lukasiewicz_mtl,
    semihoop_corpus,
)
from .ibp0 import (
    FiniteMTL,
    ProductAlgebra,
    SymbolicPerfectAlgebra,
    _scan_mode,
    boolean_skeleton,
    decompose_element,
    radical,
    validate_ibp0,
    validate_mtl,
)
from .lmonoid import FiniteLMonoid, envelope_summary, k_envelope, validate_lmonoid
from .reports import (
    Check,
    InternalConsistencyError,
    MalformedInputError,
    PreconditionError,
    failed_check,
    passed_check,
)
from .semihoop import (
    ConeState,
    FiniteSemihoop,
    ProductHoop,
    ProductState,
    SymbolicConeHoop,
    TableState,
    enumerate_states_finite,
    state_properties,
    validate_semihoop,
    validate_state,
    zero_state,
)
from .states import (
    FormulaHyperstate,
    ProbabilityMeasure,
    TableHyperstate,
    hyperstate_properties,
    split_hyperstate,
    validate_hyperstate,
)


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _fraction(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise MalformedInputError(f"{where}: expected an exact fraction, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInputError(f"{where}: {exc}") from exc


def _index_key(key: str, where: str) -> int:
    try:
        return int(key)
    except ValueError:
        raise MalformedInputError(f"{where}: key {key!r} is not an element index") from None


def _require_fields(obj: dict, required: set[str], what: str) -> None:
    missing = required - obj.keys()
    if missing:
        raise MalformedInputError(f"{what}: missing field {sorted(missing)[0]!r}")
    extra = obj.keys() - required
    if extra:
        raise MalformedInputError(f"{what}: unexpected field {sorted(extra)[0]!r}")


# ---------------------------------------------------------------------------
# Parsing and dumping


def algebra_from_json(obj: Any):
    """Dispatch on the key shape; constructors do the table checking."""
    if not isinstance(obj, dict):
        raise MalformedInputError("algebra file must hold a JSON object")
    if "kind" in obj:
        kind = obj["kind"]
        if kind == "rotation":
            _require_fields(obj, {"kind", "rank"}, "rotation")
            return SymbolicPerfectAlgebra(SymbolicConeHoop(rank=obj["rank"]))
        if kind == "cone":
            _require_fields(obj, {"kind", "rank"}, "cone")
            return SymbolicConeHoop(rank=obj["rank"])
        if kind == "product":
            _require_fields(obj, {"kind", "factors"}, "product")
            factors = obj["factors"]
            if not isinstance(factors, list) or not factors:
                raise MalformedInputError("product: 'factors' must be a non-empty array")
            return ProductAlgebra([algebra_from_json(f) for f in factors])
        raise MalformedInputError(f"unknown kind {kind!r}")
    if "add" in obj:
        _require_fields(obj, {"size", "add", "meet", "join", "unit"}, "lattice monoid")
        return FiniteLMonoid(
            obj["add"], obj["meet"], obj["join"], unit=obj["unit"], size=obj["size"]
        )
    if "bot" in obj or "join" in obj:
        _require_fields(
            obj, {"size", "times", "impl", "meet", "join", "bot", "top"}, "bounded algebra"
        )
        return FiniteMTL(
            obj["times"], obj["impl"], obj["meet"], obj["join"],
            bot=obj["bot"], top=obj["top"], size=obj["size"],
        )
    _require_fields(obj, {"size", "times", "impl", "meet", "top"}, "semihoop")
    return FiniteSemihoop(obj["times"], obj["impl"], obj["meet"], top=obj["top"], size=obj["size"])


def _rows(table) -> list[list[int]]:
    return [list(row) for row in table]


def algebra_to_json(A) -> dict[str, Any]:
    if isinstance(A, FiniteLMonoid):
        return {
            "size": A.size,
            "add": _rows(A.add_table),
            "meet": _rows(A.meet_table),
            "join": _rows(A.join_table),
            "unit": A.unit,
        }
    if isinstance(A, FiniteMTL):
        return {
            "size": A.size,
            "times": _rows(A.times_table),
            "impl": _rows(A.impl_table),
            "meet": _rows(A.meet_table),
            "join": _rows(A.join_table),
            "bot": A.bot,
            "top": A.top,
        }
    if isinstance(A, FiniteSemihoop):
        return {
            "size": A.size,
            "times": _rows(A.times_table),
            "impl": _rows(A.impl_table),
            "meet": _rows(A.meet_table),
            "top": A.top,
        }
    if isinstance(A, SymbolicPerfectAlgebra):
        return {"kind": "rotation", "rank": A.rank}
    if isinstance(A, SymbolicConeHoop):
        return {"kind": "cone", "rank": A.rank}
    if isinstance(A, (ProductAlgebra, ProductHoop)):
        return {"kind": "product", "factors": [algebra_to_json(f) for f in A.factors]}
    raise MalformedInputError(f"no file form for {type(A).__name__}")


def state_from_json(obj: Any, hoop):
    if not isinstance(obj, dict):
        raise MalformedInputError("state file must hold a JSON object")
    if "lambda" in obj:
        _require_fields(obj, {"lambda"}, "state")
        lam = [_fraction(v, "lambda") for v in obj["lambda"]]
        return _radical_state(hoop, lam, window=8)
    return TableState(
        {_index_key(k, "state") : _fraction(v, f"state[{k}]") for k, v in obj.items()}
    )


def state_to_json(w) -> dict[str, Any]:
    if isinstance(w, ConeState):
        return {"lambda": [str(v) for v in w.lam]}
    if isinstance(w, TableState):
        return {str(k): str(v) for k, v in sorted(w.values.items())}
    if isinstance(w, ProductState):
        return {"parts": [state_to_json(p) for p in w.parts]}
    raise MalformedInputError(f"no file form for {type(w).__name__}")


def _symbolic_rank(hoop) -> int:
    if isinstance(hoop, SymbolicConeHoop):
        return hoop.rank
    if isinstance(hoop, ProductHoop):
        return sum(_symbolic_rank(f) for f in hoop.factors)
    return 0


def _radical_state(hoop, lam: list[Fraction], window: int):
    """Distribute a flat weight vector over the symbolic axes of a radical
    hoop; finite axes admit only the zero state and consume no entries."""
    rank = _symbolic_rank(hoop)
    if len(lam) != rank:
        raise MalformedInputError(
            f"lambda has {len(lam)} entries for a radical of symbolic rank {rank}"
        )
    if isinstance(hoop, SymbolicConeHoop):
        return ConeState(lam)
    if isinstance(hoop, ProductHoop):
        parts, used = [], 0
        for f in hoop.factors:
            r = _symbolic_rank(f)
            parts.append(_radical_state(f, lam[used : used + r], window))
            used += r
        return ProductState(parts)
    return zero_state(hoop, window)


def _pair_token(std: Fraction, inf: Fraction) -> str:
    return f"{std}+e{inf}"


def hyperstate_from_json(obj: Any, A, window: int):
    """Either form; the measure form returns the map built from (p, w),
    whose validation verdict the caller is responsible for."""
    if not isinstance(obj, dict):
        raise MalformedInputError("hyperstate file must hold a JSON object")
    if "table" in obj:
        _require_fields(obj, {"table"}, "hyperstate")
        if not A.is_finite:
            raise MalformedInputError("the table form requires a finite algebra")
        return TableHyperstate(
            {_index_key(k, "table"): v for k, v in obj["table"].items()}
        )
    if "measure" not in obj:
        raise MalformedInputError("hyperstate: missing field 'measure'")
    extra = obj.keys() - {"measure", "lambda"}
    if extra:
        raise MalformedInputError(f"hyperstate: unexpected field {sorted(extra)[0]!r}")
    sk = boolean_skeleton(A, window)
    weights = {
        _index_key(k, "measure"): _fraction(v, f"measure[{k}]")
        for k, v in obj["measure"].items()
    }
    p = ProbabilityMeasure(sk, weights)
    lam = [_fraction(v, "lambda") for v in obj.get("lambda", [])]
    w = _radical_state(radical(A, window).hoop, lam, window)
    return FormulaHyperstate(A, p, w, window)


def hyperstate_to_json(s, A) -> dict[str, Any]:
    if isinstance(s, TableHyperstate):
        return {"table": {A.token(k): str(v) for k, v in sorted(s.items())}}
    out: dict[str, Any] = {
        "measure": {str(i): str(v) for i, v in enumerate(s.measure.weights) if v != 0}
    }
    lam = _lambda_of(s.state)
    if lam:
        out["lambda"] = [str(v) for v in lam]
    return out


def _lambda_of(w) -> list[Fraction]:
    if isinstance(w, ConeState):
        return list(w.lam)
    if hasattr(w, "parts"):
        return [v for p in w.parts for v in _lambda_of(p)]
    return []


# ---------------------------------------------------------------------------
# Run reports


@dataclass
class RunReport:
    command: list[str]
    subject: str
    checks: list[Check] = field(default_factory=list)
    result: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def exit_status(self) -> int:
        return 0 if all(c.passed for c in self.checks if c.required) else 1

    def render(self, fmt: str) -> str:
        if fmt == "tsv":
            lines = []
            for c in self.checks:
                witness = (
                    json.dumps(c.witnesses[0], sort_keys=True, separators=(",", ":"))
                    if c.witnesses
                    else ""
                )
                lines.append(f"{c.axiom}\t{'pass' if c.passed else 'fail'}\t{witness}")
            return "\n".join(lines) + ("\n" if lines else "")
        return canonical_json(
            {
                "command": self.command,
                "subject": self.subject,
                "ok": self.exit_status == 0,
                "checks": [c.to_json() for c in self.checks],
                "result": self.result,
                "elapsed_ms": self.elapsed_ms,
            }
        )


def _load(path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedInputError(f"{path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path}: {exc}") from exc


def _bounded(A, verb: str):
    if isinstance(A, (FiniteLMonoid, FiniteSemihoop, SymbolicConeHoop)):
        raise MalformedInputError(f"{verb} expects a bounded algebra file")
    return A


def _describe(A) -> dict[str, Any]:
    if isinstance(A, (SymbolicPerfectAlgebra, SymbolicConeHoop)):
        return {"kind": type(A).__name__, "rank": A.rank}
    if isinstance(A, (ProductAlgebra, ProductHoop)):
        return {"kind": type(A).__name__, "factors": [_describe(f) for f in A.factors]}
    return {"kind": type(A).__name__, "size": A.size}


# ---------------------------------------------------------------------------
# Verbs


def _run_validate(args) -> tuple[str, list[Check], dict]:
    A = algebra_from_json(_load(args.algebra))
    if isinstance(A, FiniteLMonoid):
        if args.ibp0:
            raise MalformedInputError("--ibp0 applies to bounded algebra files")
        report = validate_lmonoid(A)
    elif isinstance(A, (FiniteSemihoop, SymbolicConeHoop)):
        if args.ibp0:
            raise MalformedInputError("--ibp0 applies to bounded algebra files")
        report = validate_semihoop(A, args.window)
    elif args.ibp0:
        report = validate_ibp0(A, args.window)
    else:
        report = validate_mtl(A, args.window)
    result = _describe(A)
    if report.flags:
        result["flags"] = dict(sorted(report.flags.items()))
    return report.subject, report.checks, result


def _run_skeleton(args) -> tuple[str, list[Check], dict]:
    A = _bounded(algebra_from_json(_load(args.algebra)), "skeleton")
    sk = boolean_skeleton(A, args.window)
    result = {
        "elements": [A.token(b) for b in sk.elements],
        "atoms": [A.token(b) for b in sk.atoms],
    }
    return sk.report.subject, sk.report.checks, result


def _run_radical(args) -> tuple[str, list[Check], dict]:
    A = _bounded(algebra_from_json(_load(args.algebra)), "radical")
    rad = radical(A, args.window)
    result = {
        "elements": [A.token(x) for x in rad.elements],
        "hoop": _describe(rad.hoop),
        "flags": dict(sorted(rad.report.flags.items())),
    }
    return rad.report.subject, rad.report.checks, result


def _run_decompose(args) -> tuple[str, list[Check], dict]:
    A = _bounded(algebra_from_json(_load(args.algebra)), "decompose")
    rows, bad = [], []
    for a in A.carrier(args.window):
        d = decompose_element(A, a)
        rows.append({"x": A.token(a), "b": A.token(d.b), "c": A.token(d.c)})
        rebuilt = A.meet(A.join(d.b, A.neg(d.c)), A.join(A.neg(d.b), d.c))
        if rebuilt != a:
            bad.append({"witness": rows[-1], "lhs": A.token(rebuilt), "rhs": A.token(a)})
    mode = _scan_mode(A, args.window)
    check = (
        failed_check("element-decomposition", bad, mode=mode)
        if bad
        else passed_check("element-decomposition", mode=mode, note=f"{len(rows)} elements")
    )
    return "decomposition", [check], {"elements": rows}


def _run_grothendieck(args) -> tuple[str, list[Check], dict]:
    M = algebra_from_json(_load(args.monoid))
    if not isinstance(M, FiniteLMonoid):
        raise MalformedInputError("grothendieck expects a lattice monoid file")
    report = validate_lmonoid(M)
    result: dict[str, Any] = {}
    if report.ok:
        K, h = k_envelope(M)
        result = envelope_summary(K)
        result["representatives"] = [K.token(e) for e in K.representatives()]
    return "envelope", report.checks, result


def _run_states(args) -> tuple[str, list[Check], dict]:
    H = algebra_from_json(_load(args.hoop))
    if not isinstance(H, (FiniteSemihoop, SymbolicConeHoop, ProductHoop)):
        raise MalformedInputError("states expects a semihoop file")
    report = validate_semihoop(H, args.window)
    checks = list(report.checks)
    if args.state is None:
        if isinstance(H, FiniteSemihoop):
            found = enumerate_states_finite(H)
            result: dict[str, Any] = {
                "count": len(found),
                "states": [state_to_json(w) for w in found],
            }
        else:
            result = {
                "rank": _symbolic_rank(H),
                "note": "states are the nonnegative weight vectors; pass a state file to check one",
            }
        return "states", checks, result
    w = state_from_json(_load(args.state), H)
    if report.ok:
        checks += validate_state(H, w, args.window).checks
        checks += state_properties(H, w, args.window, flags=report.flags).checks
    return "state", checks, {"state": state_to_json(w)}


def _run_hyperstate(args) -> tuple[str, list[Check], dict]:
    A = _bounded(algebra_from_json(_load(args.algebra)), "hyperstate")
    s = hyperstate_from_json(_load(args.hyperstate), A, args.window)
    values = {
        A.token(a): _pair_token(*s.raw_value(a)) for a in A.carrier(args.window)
    }

    if args.action == "validate":
        report = validate_hyperstate(A, s, args.window)
        return "hyperstate", report.checks, {"values": values}

    if args.action == "properties":
        report = hyperstate_properties(A, s, args.window)
        return "hyperstate-properties", report.checks, {"values": values}

    split = split_hyperstate(A, s, args.window)
    check = passed_check(
        "split-identity",
        mode=_scan_mode(A, args.window),
        note=f"{len(split.residuals)} elements, zero residual",
    )
    result = {
        "p": {A.token(b): str(split.p.value(b)) for b in split.p.skeleton.atoms},
        "w": state_to_json(split.w),
        "residuals": split.residuals,
    }
    return "split", [check], result


FIXTURES = ("fixture-lukasiewicz-3", "fixture-ragged-times", "fixture-deficient-measure")


def corpus_files() -> dict[str, dict[str, Any]]:
    """Every corpus object in canonical file form, plus the planted failures.

    The fixtures are deliberately broken: the Lukasiewicz chain sits outside
    the variety (validate --ibp0 must exit 1), the ragged table must be
    rejected at parse time (exit 2), and the deficient measure joins to a map
    violating the boundary axioms (hyperstate validate must exit 1).
    """
    files: dict[str, dict[str, Any]] = {}
    for name, M in lmonoid_corpus().items():
        files[f"lmonoid-{name}.json"] = algebra_to_json(M)
    for name, H in semihoop_corpus().items():
        files[f"hoop-{name}.json"] = algebra_to_json(H)
    files["hoop-cone-1.json"] = {"kind": "cone", "rank": 1}
    files["hoop-cone-2.json"] = {"kind": "cone", "rank": 2}
    for name, A in ibp0_corpus().items():
        files[f"algebra-{name}.json"] = algebra_to_json(A)
    for name, A in hyperstate_product_corpus().items():
        files[f"product-{name.replace('*', 'x')}.json"] = algebra_to_json(A)
    files["state-cone-1.json"] = {"lambda": ["2"]}
    files["hyperstate-chang-1.json"] = {"measure": {"0": "1"}, "lambda": ["2"]}

    files["fixture-lukasiewicz-3.json"] = algebra_to_json(lukasiewicz_mtl(3))
    ragged = algebra_to_json(lukasiewicz_mtl(3))
    ragged["times"] = ragged["times"][:2]
    files["fixture-ragged-times.json"] = ragged
    files["fixture-deficient-measure.json"] = {"measure": {"0": "1/2"}, "lambda": ["1"]}
    return files


def _run_corpus(args) -> tuple[str, list[Check], dict]:
    files = corpus_files()
    fixtures = [f"{n}.json" for n in FIXTURES]
    if args.out is None:
        return "corpus", [], {"files": sorted(files), "fixtures": fixtures}
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, obj in files.items():
        (out / name).write_text(canonical_json(obj))
    return "corpus", [], {
        "written": sorted(files),
        "fixtures": fixtures,
        "directory": str(out),
    }


# ---------------------------------------------------------------------------
# Entry point


def _parser() -> argparse.ArgumentParser:
    def window(text: str) -> int:
        n = int(text)
        if n < 1:
            raise argparse.ArgumentTypeError("window must be at least 1")
        return n

    parser = argparse.ArgumentParser(
        prog="ellstates",
        description="Exact validators and constructions for lattice-ordered algebras and their states.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name: str, handler, help_text: str, windowed: bool = True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        if windowed:
            p.add_argument("--window", type=window, default=8, metavar="N",
                           help="carrier bound for symbolic algebras (default 8)")
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        return p

    p = add("validate", _run_validate, "check the axioms of an algebra file")
    p.add_argument("algebra")
    p.add_argument("--ibp0", action="store_true",
                   help="also require the doubling law and involution")

    p = add("skeleton", _run_skeleton, "complemented elements and atoms")
    p.add_argument("algebra")

    p = add("radical", _run_radical, "elements above their negation, as a semihoop")
    p.add_argument("algebra")

    p = add("decompose", _run_decompose, "skeleton/radical coordinates of every element")
    p.add_argument("algebra")

    p = add("grothendieck", _run_grothendieck, "envelope group of a lattice monoid",
            windowed=False)
    p.add_argument("monoid")

    p = add("states", _run_states, "enumerate or check states of a semihoop")
    p.add_argument("hoop")
    p.add_argument("state", nargs="?", default=None)

    p = add("hyperstate", _run_hyperstate, "validate, split, or test a hyperstate")
    p.add_argument("action", choices=("validate", "split", "properties"))
    p.add_argument("algebra")
    p.add_argument("hyperstate")

    p = add("corpus", _run_corpus, "list or write the canonical corpus files",
            windowed=False)
    p.add_argument("--out", default=None, metavar="DIR")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = _parser().parse_args(argv)
    started = time.monotonic()
    try:
        subject, checks, result = args.handler(args)
    except MalformedInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        checks = [failed_check("precondition", [{"error": str(exc)}])]
        subject, result = "precondition", {}
    except InternalConsistencyError as exc:
        checks = [failed_check("consistency", [{"error": str(exc)}])]
        subject, result = "consistency", {}
    report = RunReport(
        command=argv,
        subject=subject,
        checks=checks,
        result=result,
        elapsed_ms=int((time.monotonic() - started) * 1000),
    )
    sys.stdout.write(report.render(args.format))
    return report.exit_status


if __name__ == "__main__":
    raise SystemExit(main())
