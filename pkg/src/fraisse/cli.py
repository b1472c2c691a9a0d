"""Command-line interface.

Every command prints a ``CommandResult`` as JSON (``status``, ``payload``,
``diagnostics``) unless ``--format table`` asks for a human layout.
Exit codes: 0 ok, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import verify
from .amalgam import (
    DEFAULT_MAX_LEAVES,
    AmalgamationDiagram,
    EmbeddingError,
    SizeBoundError,
    enumerate_amalgamations,
)
from .category import gram_semisimplicity
from .measures import Measure, enumerate_measures, evaluate
from .subclass import (
    InducedSubclassSpec,
    enumerate_subclasses,
    spec_of,
    support_label,
    support_of,
)
from .trees import TreeSyntaxError, parse_tree, to_string

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    status: str
    payload: object = None
    diagnostics: list = field(default_factory=list)
    exit_code: int = EXIT_OK

    def to_json(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


def ok(payload, diagnostics=None) -> CommandResult:
    return CommandResult("ok", payload, list(diagnostics or []))


def error(message: str, code: int = EXIT_USAGE, payload=None) -> CommandResult:
    return CommandResult("error", payload, [message], code)


# ------------------------------------------------------------------ helpers


def _check_n(n: int, high: int = 4) -> None:
    if not 1 <= n <= high:
        raise UsageError(f"--n must lie in 1..{high}, got {n}")


def _tree(text: str, n: int, max_leaves: int):
    try:
        t = parse_tree(text, n)
    except TreeSyntaxError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from exc
    if t.leaf_count > max_leaves:
        raise UsageError(f"{text!r} has {t.leaf_count} leaves, above --max-leaves {max_leaves}")
    return t


def _leaf_map(text: str | None) -> dict:
    if not text:
        return {}
    out = {}
    for part in text.split(","):
        try:
            a, b = part.split(":")
            out[int(a)] = int(b)
        except ValueError as exc:
            raise UsageError(f"bad leaf map entry {part!r}; expected a:b") from exc
    return out


def _parse_induced(text: str, n: int) -> InducedSubclassSpec:
    """``"2,1/1"`` means order 2 < 1 with color 1 repeatable; ``"1,2/"`` has no repeats."""
    order_text, _, repeat_text = text.partition("/")
    try:
        order = tuple(int(c) for c in order_text.split(",") if c)
        repeats = frozenset(int(c) for c in repeat_text.split(",") if c)
    except ValueError as exc:
        raise UsageError(f"bad --induced value {text!r}") from exc
    if sorted(order) != list(range(1, n + 1)) or not repeats <= set(order):
        raise UsageError(f"--induced needs an order on all colors 1..{n} and repeats among them")
    return InducedSubclassSpec(n, order, repeats)


def _select_measure(args) -> tuple:
    """Measure plus a short description of where it came from."""
    n = args.n
    chosen = [x for x in (args.measure, args.induced, args.index) if x is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --measure, --induced, --index")
    if args.induced is not None:
        spec = _parse_induced(args.induced, n)
        return spec.measure(), {"induced": spec.to_json()}
    if args.index is not None:
        ms = enumerate_measures(n)
        if not 0 <= args.index < len(ms):
            raise UsageError(f"--index must lie in 0..{len(ms) - 1}")
        return ms[args.index], {"index": args.index}
    try:
        with open(args.measure) as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read measure file: {exc}") from exc
    if isinstance(data, dict) and "payload" in data:
        data = data["payload"]
    if isinstance(data, dict) and "measures" in data:
        data = data["measures"]
    if isinstance(data, list):
        if len(data) != 1:
            raise UsageError("measure file holds several measures; keep one")
        data = data[0]
    try:
        mu = Measure.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid measure file: {exc}") from exc
    if mu.n != n:
        raise UsageError(f"measure has n = {mu.n} but --n is {n}")
    return mu, {"file": args.measure}


# ----------------------------------------------------------------- commands


def cmd_enumerate_measures(args) -> CommandResult:
    _check_n(args.n)
    ms = enumerate_measures(args.n)
    rows = []
    for index, mu in enumerate(ms):
        entry = mu.to_json()
        entry["index"] = index
        entry["row"] = [str(v) for v in mu.row()]
        entry["support"] = support_label(support_of(mu))
        rows.append(entry)
    return ok({"n": args.n, "count": len(ms), "measures": rows})


def _measure_table(payload: dict) -> str:
    n = payload["n"]
    header = []
    for i in range(1, n + 1):
        header.append(f"B({i})")
        header.extend(f"C({i},{j})" for j in range(1, n + 1))
    header.append("Support")
    lines = [[str(m["index"])] + m["row"] + [m["support"]] for m in payload["measures"]]
    table = [["#"] + header] + lines
    widths = [max(len(r[c]) for r in table) for c in range(len(table[0]))]
    return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in table)


def cmd_eval(args) -> CommandResult:
    _check_n(args.n, 9)
    mu, source = _select_measure(args)
    t = _tree(args.tree, args.n, args.max_leaves)
    value = evaluate(mu, t)
    return ok({"tree": to_string(t), "value": str(value), "dyadic": value.to_json(), "measure": source})


def cmd_subclasses(args) -> CommandResult:
    _check_n(args.n, 5)
    entries = []
    for s in enumerate_subclasses(args.n):
        entry = s.to_json()
        entry["infinite"] = s.is_infinite()
        spec = spec_of(s)
        entry["induced"] = spec.to_json() if spec else None
        entries.append(entry)
    return ok({"n": args.n, "count": len(entries), "subclasses": entries})


def cmd_amalgamate(args) -> CommandResult:
    n = args.n
    left = _tree(args.left, n, args.max_leaves)
    right = _tree(args.right, n, args.max_leaves)
    base = _tree(args.base, n, args.max_leaves)
    try:
        d = AmalgamationDiagram.build(base, left, right, _leaf_map(args.left_map), _leaf_map(args.right_map))
        found = enumerate_amalgamations(d, max_leaves=args.max_leaves, n=n)
    except EmbeddingError as exc:
        raise UsageError(str(exc)) from exc
    except SizeBoundError as exc:
        raise UsageError(str(exc)) from exc
    return ok(
        {
            "count": len(found),
            "amalgamations": [
                {"total": to_string(a.total), "labeled": a.describe(), "left": a.from_left, "right": a.from_right}
                for a in found
            ],
        }
    )


def cmd_gram(args) -> CommandResult:
    _check_n(args.n, 3)
    mu, source = _select_measure(args)
    t = _tree(args.tree, args.n, args.max_leaves)
    member = None
    if args.in_support:
        member = support_of(mu)
    result = gram_semisimplicity(mu, t, member)
    result["measure"] = source
    return ok(result)


def _run_suite(name: str) -> dict:
    return verify.SUITES[name]()


def cmd_verify(args) -> CommandResult:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_suite, names))
    else:
        reports = [_run_suite(name) for name in names]
    failed = [r["suite"] for r in reports if not r["pass"]]
    payload = reports[0] if len(reports) == 1 else {"suites": reports}
    if failed:
        return CommandResult("error", payload, [f"suite failed: {name}" for name in failed], EXIT_FAILED)
    return ok(payload)


# -------------------------------------------------------------------- parser


def _add_measure_choice(p) -> None:
    p.add_argument("--measure", help="JSON file holding one measure (as printed by enumerate-measures)")
    p.add_argument("--induced", help="induced measure, e.g. '1,2,3/1,2,3' (order/repeatable colors)")
    p.add_argument("--index", type=int, help="position in the enumerate-measures listing")


def _global_flags(defaults: bool) -> argparse.ArgumentParser:
    """Global flags; subcommands get copies without defaults so either position works."""
    flags = argparse.ArgumentParser(add_help=False)
    values = {"n": 1, "max_leaves": DEFAULT_MAX_LEAVES, "jobs": 1, "format": "json"}

    def default(key):
        return values[key] if defaults else argparse.SUPPRESS

    flags.add_argument("--n", type=int, default=default("n"), help="number of colors (default 1)")
    flags.add_argument("--max-leaves", type=int, default=default("max_leaves"), help="enumeration guard (default 8)")
    flags.add_argument("--jobs", type=int, default=default("jobs"), help="worker processes (default 1)")
    flags.add_argument("--format", choices=("json", "table"), default=default("format"))
    return flags


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fraisse", description=__doc__.splitlines()[0], parents=[_global_flags(True)])
    sub = parser.add_subparsers(dest="command", required=True)
    common = _global_flags(False)

    p = sub.add_parser("enumerate-measures", parents=[common], help="list every measure")
    p.set_defaults(func=cmd_enumerate_measures)

    p = sub.add_parser("eval", parents=[common], help="value of a tree under a measure")
    _add_measure_choice(p)
    p.add_argument("tree")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("subclasses", parents=[common], help="list subclasses containing every color")
    p.set_defaults(func=cmd_subclasses)

    p = sub.add_parser("amalgamate", parents=[common], help="amalgamations of a diagram")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--base", default="()", help="common subtree (default: empty)")
    p.add_argument("--left-map", help="base leaf -> left leaf, e.g. '0:1,1:2'")
    p.add_argument("--right-map", help="base leaf -> right leaf")
    p.set_defaults(func=cmd_amalgamate)

    p = sub.add_parser("gram", parents=[common], help="trace form on End(tree)")
    _add_measure_choice(p)
    p.add_argument("tree")
    p.add_argument("--in-support", action="store_true", help="restrict the hom basis to the measure's support")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("suite", choices=["all", *verify.SUITES])
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(result: CommandResult, args) -> None:
    if getattr(args, "format", "json") == "table" and result.status == "ok":
        if args.command == "enumerate-measures":
            print(_measure_table(result.payload))
            return
    print(json.dumps(result.to_json(), indent=2, sort_keys=True, default=str))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.max_leaves < 0 or args.jobs < 1:
        result = error("--max-leaves must be >= 0 and --jobs >= 1")
    else:
        try:
            result = args.func(args)
        except UsageError as exc:
            result = error(str(exc))
    _emit(result, args)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
