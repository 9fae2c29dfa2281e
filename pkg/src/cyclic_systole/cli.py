"""Command-line front end.

    cyclic-systole table  [--model p1] [--genus 4..7]
    cyclic-systole verify (--all | --check NAME ...) --model p1 --genus 4..1024
    cyclic-systole oracle --model p2 --genus 7
    cyclic-systole figure --model p1 --genus 4 --id polygon -o out.svg

Exit status: 0 success, 1 a claimed inequality or value failed,
2 usage error, 3 resource limit hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from datetime import datetime, timezone

from . import __version__
from .fuchsian import DEFAULT_MAX_ELEMENTS, FuchsianError, InconclusiveError, ResourceError
from .models import MAX_GENUS, ModelKind, candidate_systole, theorem_systole
from .verifier import GUARD_BAND, CheckId, MarginRecord, sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

# genus from which the systole formula is a theorem rather than a candidate
PROVEN_FROM = {ModelKind.P1: 4, ModelKind.P2: 7, ModelKind.P2STAR: 7}
TABLE_DEFAULT = {ModelKind.P1: (4, 7), ModelKind.P2: (7, 10)}

CONFIG_KEYS = {
    "guard_band": float,
    "max_elements": int,
    "genus_cap": int,
    "workers": int,
    "bound_slack": float,
}


class UsageError(Exception):
    pass


def parse_genus_range(text: str) -> range:
    """'4..7' -> range(4, 8); a single integer is a one-element range.
    An upper end below the lower end gives an empty range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed genus range {text!r}; use A..B") from None
    if lo < 2:
        raise argparse.ArgumentTypeError("genus must be at least 2")
    return range(lo, hi + 1)


def parse_model(text: str) -> ModelKind:
    try:
        return ModelKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_check(text: str) -> CheckId:
    try:
        return CheckId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"{exc}; choose from {', '.join(c.value for c in CheckId)}"
        ) from None


def load_config(path: str) -> dict:
    """key=value lines; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{n}: unknown key {key!r}")
            try:
                out[key] = CONFIG_KEYS[key](value)
            except ValueError:
                raise UsageError(f"{path}:{n}: bad value for {key}") from None
    return out


def _setting(args, cfg: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return cfg.get(key, default)


def fmt(x) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return f"{x:.12g}"
    return str(x)


def _document(command: str, params: dict, records: list[dict], deterministic: bool) -> dict:
    doc = {"version": __version__, "command": command, "params": params, "records": records}
    if not deterministic:
        doc["generated"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return doc


def _json_text(doc: dict) -> str:
    """Indented header, one compact line per record (fast for big sweeps)."""
    head = {k: v for k, v in doc.items() if k != "records"}
    head["records"] = []
    text = json.dumps(head, indent=2, allow_nan=False)
    if not doc["records"]:
        return text + "\n"
    lines = ",\n    ".join(json.dumps(r, allow_nan=False) for r in doc["records"])
    return text[: text.rindex("[]")] + "[\n    " + lines + "\n  ]\n}\n"


def _emit(args, doc: dict, human: str, columns: list[str]) -> None:
    if args.json:
        text = _json_text(doc)
    elif args.csv:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for rec in doc["records"]:
            w.writerow({k: ("" if rec.get(k) is None else rec.get(k)) for k in columns})
        text = buf.getvalue()
    else:
        text = human
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _text_table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(str(c).rjust(w) for c, w in zip(r, widths)) for r in [header] + rows]
    return "\n".join(lines) + "\n"


# table


def cmd_table(args, cfg) -> int:
    kinds = args.model or [ModelKind.P1, ModelKind.P2]
    records = []
    for kind in kinds:
        if args.genus is None:
            lo, hi = TABLE_DEFAULT.get(kind, (7, 10))
            genera = range(lo, hi + 1)
        else:
            genera = args.genus
        for g in genera:
            records.append({
                "model": kind.value,
                "genus": g,
                "systole": candidate_systole(kind, g),
                "closed_form": theorem_systole(kind, g),
                "status": "proven" if g >= PROVEN_FROM[kind] else "candidate",
            })
    rows = [[r["model"], r["genus"], f"{r['systole']:.8f}", r["status"]] for r in records]
    human = _text_table(rows, ["model", "genus", "systole", "status"])
    params = {"models": [k.value for k in kinds],
              "genus": None if args.genus is None else [args.genus.start, args.genus.stop - 1]}
    _emit(args, _document("table", params, records, args.deterministic), human,
          ["model", "genus", "systole", "closed_form", "status"])
    return EXIT_OK


# verify

RECORD_COLUMNS = ["check", "model", "genus", "index", "lhs", "threshold", "margin", "status",
                  "scale", "claim", "asserted", "note"]


def cmd_verify(args, cfg) -> int:
    if not args.all and not args.check:
        raise UsageError("give --all or at least one --check")
    checks = list(CheckId) if args.all else args.check
    kinds = args.model or list(ModelKind)
    guard = _setting(args, cfg, "guard_band", GUARD_BAND)
    workers = _setting(args, cfg, "workers", 1)
    cap = cfg.get("genus_cap", MAX_GENUS)
    genera = args.genus if args.genus is not None else range(4, 65)
    if len(genera) and genera[-1] > cap:
        raise UsageError(f"genus above the configured cap {cap}")
    records: list[MarginRecord] = []
    summary_rows = []
    for kind in kinds:
        rep = sweep(checks, kind, genera, guard=guard, workers=workers)
        records.extend(rep.records)
        summ = rep.summary
        counts: dict[CheckId, dict[str, int]] = {}
        for r in rep.records:
            c = counts.setdefault(r.check, dict.fromkeys(("PASS", "FAIL", "UNASSERTED", "INDETERMINATE"), 0))
            c[r.status.value] += 1
        for check in sorted(counts, key=list(CheckId).index):
            c = counts[check]
            m, g = summ.get(check, (math.nan, "-"))
            summary_rows.append([kind.value, check.value, c["PASS"], c["FAIL"],
                                 c["INDETERMINATE"], c["UNASSERTED"], fmt(m), g])
    failures = [r for r in records if r.failed]
    human = _text_table(summary_rows, ["model", "check", "pass", "fail", "indet",
                                       "unasserted", "min margin", "at genus"])
    if failures:
        human += f"\n{len(failures)} failing record(s):\n"
        rows = [[r.kind.value, r.check.value, r.genus, r.index, fmt(r.lhs), r.claim,
                 fmt(r.threshold), fmt(r.margin), r.status.value, r.note] for r in failures[:50]]
        human += _text_table(rows, ["model", "check", "genus", "index", "lhs", "rel",
                                    "threshold", "margin", "status", "note"])
        if len(failures) > 50:
            human += f"... {len(failures) - 50} more\n"
    params = {
        "checks": [c.value for c in checks],
        "models": [k.value for k in kinds],
        "genus": [genera.start, genera.stop - 1],
        "guard_band": guard,
    }
    rows = [r.to_dict() for r in records] if (args.json or args.csv) else []
    doc = _document("verify", params, rows, args.deterministic)
    _emit(args, doc, human, RECORD_COLUMNS)
    return EXIT_FAIL if failures else EXIT_OK


# oracle


def cmd_oracle(args, cfg) -> int:
    from .fuchsian import oracle_systole

    kind = args.model[0] if args.model else ModelKind.P1
    if kind is ModelKind.P2STAR:
        raise UsageError("the oracle runs on p1 or p2 (p2star is the same surface as p2)")
    if args.genus is None or len(args.genus) != 1:
        raise UsageError("oracle needs a single genus, e.g. --genus 4")
    genus = args.genus[0]
    cap = _setting(args, cfg, "max_elements", DEFAULT_MAX_ELEMENTS)
    slack = _setting(args, cfg, "bound_slack", 0.5)
    res = oracle_systole(kind, genus, max_elements=cap, slack=slack)
    expected = 2 * genus if kind is ModelKind.P1 else 2 * genus + 1
    diff = abs(res.length - res.candidate)
    rec = {
        "model": kind.value,
        "genus": genus,
        "oracle": res.length,
        "candidate": res.candidate,
        "difference": diff,
        "multiplicity": res.multiplicity,
        "expected_multiplicity": expected,
        "elements": res.element_count,
        "bound": res.bound,
    }
    if not args.deterministic:
        rec["runtime_s"] = round(res.runtime, 3)
    human = "".join(f"{k:>22}: {fmt(v)}\n" for k, v in rec.items())
    params = {"model": kind.value, "genus": genus, "max_elements": cap, "bound_slack": slack}
    _emit(args, _document("oracle", params, [rec], args.deterministic), human, list(rec))
    return EXIT_OK if diff <= 1e-6 else EXIT_FAIL


# figure


def cmd_figure(args, cfg) -> int:
    from .figures import render

    kind = args.model[0] if args.model else ModelKind.P1
    if args.genus is None or len(args.genus) != 1:
        raise UsageError("figure needs a single genus, e.g. --genus 4")
    kw = {}
    if args.id == "ball":
        kw["max_elements"] = _setting(args, cfg, "max_elements", DEFAULT_MAX_ELEMENTS)
    try:
        svg, info = render(args.id, kind, args.genus[0], **kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    path = args.output or f"{args.id}-{kind.value}-g{args.genus[0]}.svg"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
    msg = f"wrote {path}"
    if args.id == "ball":
        msg += f" ({info.components} ball translates, smallest gap {info.min_gap:.3g})"
    print(msg)
    if args.id == "ball" and info.min_gap < -1e-7:
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", type=parse_model, action="append",
                        help="p1, p2 or p2star (repeatable)")
    common.add_argument("--genus", type=parse_genus_range, help="genus or range A..B")
    fmt_group = common.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", action="store_true", help="write one JSON document")
    fmt_group.add_argument("--csv", action="store_true", help="write one CSV row per record")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("--deterministic", action="store_true",
                        help="omit timestamps and timings so reruns are byte-identical")
    common.add_argument("--config", help="key=value file; command-line flags win")

    p = argparse.ArgumentParser(prog="cyclic-systole", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("table", parents=[common], help="systole values by genus")

    v = sub.add_parser("verify", parents=[common], help="run margin checks")
    v.add_argument("--check", type=parse_check, action="append",
                   help="check name (repeatable): " + ", ".join(c.value for c in CheckId))
    v.add_argument("--all", action="store_true", help="run every check")
    v.add_argument("--guard-band", type=float, dest="guard_band")
    v.add_argument("--workers", type=int, help="processes for the sweep")

    o = sub.add_parser("oracle", parents=[common], help="systole from the side-pairing group")
    o.add_argument("--max-elements", type=int, dest="max_elements")
    o.add_argument("--bound-slack", type=float, dest="bound_slack")

    f = sub.add_parser("figure", parents=[common], help="write an SVG in the disk model")
    f.add_argument("--id", required=True, choices=["polygon", "ball"])
    f.add_argument("--max-elements", type=int, dest="max_elements")
    return p


COMMANDS = {"table": cmd_table, "verify": cmd_verify, "oracle": cmd_oracle, "figure": cmd_figure}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else {}
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceError, InconclusiveError) as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        print("hint: raise --max-elements / --bound-slack, or try a smaller genus", file=sys.stderr)
        return EXIT_RESOURCE
    except FuchsianError as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
