"""Command-line front end.

    bentforge verify-examples
    bentforge sweep --m 6 --combiner x1 --scope exhaustive
    bentforge sweep --m 12 --combiner x1x2 --scope 10000 --seed 1
    bentforge kloosterman --n 6 --out k6.csv
    bentforge expand --m 6 --a 1 --b w^7
    bentforge spectrum --m 6 --combiner x1 --a 1 --b w^7
    bentforge fingerprint --m 6 --combiner x1 --a 1 --b w^7 --against gold

Output goes to stdout unless --out is given.  JSON output is a stream of
JSON lines: a metadata object first, then records, then a summary.  CSV
output carries the same metadata as leading ``# key=value`` comment lines.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .boolfun import TruthTable, bent_mask, walsh
from .constructions import (EXHAUSTIVE_LIMIT, MAJ3, X1, X1X2, Combiner, HParams, build_h,
                            coefficient_grid, h_tables, parameter_count, sample_parameters,
                            theorem_condition, xxeq_mask)
from .eainv import bent_monomial, distinguish, fingerprint, known_exponents
from .expsums import kloosterman_table
from .gf2m import FieldError, FieldSpec, field_new
from .polyform import expand_h1
from .reference import check_all

RECORD_FIELDS = ["m", "combiner_table_hex", "a_list_hex", "b_hex", "bent",
                 "matched_condition", "walsh_verified"]
DEFAULT_CHECKPOINT = 10 ** 6


class CommandError(Exception):
    pass


# -- parsing helpers --------------------------------------------------------------

def parse_element(text: str, field: FieldSpec) -> int:
    """Accept ``w^k``, ``0x..`` hex, or a decimal integer."""
    s = text.strip().lower().replace(" ", "")
    if s.startswith("w"):
        k = int(s[2:]) if s.startswith("w^") else (1 if s == "w" else None)
        if k is None:
            raise CommandError(f"cannot parse element {text!r}")
        return field.w(k)
    v = int(s, 0)
    if not 0 <= v < field.size:
        raise CommandError(f"element {text!r} is outside GF(2^{field.m})")
    return v


def make_field(args) -> FieldSpec:
    if args.m is None:
        raise CommandError("--m is required")
    return field_new(args.m, args.poly)


def metadata(command: str, field: FieldSpec | None, args, **extra) -> dict:
    meta = {"tool": "bentforge", "version": __version__, "command": command,
            "seed": getattr(args, "seed", None)}
    if field is not None:
        meta["m"] = field.m
        meta["poly"] = f"{field.poly:#x}"
    meta.update(extra)
    return meta


class Sink:
    """Writes metadata, rows and a summary as JSON lines or CSV."""

    def __init__(self, fmt: str, fields: list[str], out=None, append: bool = False):
        self.fmt = fmt
        self.fields = fields
        if out is None:
            self.fh, self.close_fh = sys.stdout, False
        else:
            self.fh = open(out, "a" if append else "w", newline="")
            self.close_fh = True
        self.writer = csv.writer(self.fh, lineterminator="\n") if fmt == "csv" else None

    def header(self, meta: dict):
        if self.fmt == "json":
            self.fh.write(json.dumps({"metadata": meta}, sort_keys=True) + "\n")
        else:
            for k, v in meta.items():
                self.fh.write(f"# {k}={v}\n")
            self.writer.writerow(self.fields)

    def row(self, rec: dict):
        if self.fmt == "json":
            self.fh.write(json.dumps(rec) + "\n")
        else:
            self.writer.writerow([_csv_cell(rec[k]) for k in self.fields])

    def summary(self, summ: dict):
        if self.fmt == "json":
            self.fh.write(json.dumps({"summary": summ}, sort_keys=True) + "\n")
        else:
            self.fh.write("# summary " + " ".join(f"{k}={v}" for k, v in summ.items()) + "\n")

    def close(self):
        self.fh.flush()
        if self.close_fh:
            self.fh.close()


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return v


def _hex(field: FieldSpec, v: int) -> str:
    return f"0x{int(v):0{(field.m + 3) // 4}x}"


def make_record(field: FieldSpec, combiner: Combiner, a_list, b, bent, label, walsh_ok):
    return {"m": field.m, "combiner_table_hex": combiner.table_hex,
            "a_list_hex": [_hex(field, a) for a in a_list], "b_hex": _hex(field, b),
            "bent": bool(bent), "matched_condition": label, "walsh_verified": bool(walsh_ok)}


# -- verify-examples -------------------------------------------------------------------

def cmd_verify_examples(args) -> int:
    results = check_all()
    sink = Sink(args.format, RECORD_FIELDS + ["example", "expected_condition", "ok"], args.out)
    sink.header(metadata("verify-examples", None, args))
    failed = []
    cache = {}
    for r in results:
        key = (r.ref.m, r.ref.poly)
        F = cache.setdefault(key, FieldSpec(*key))
        rec = make_record(F, r.ref.combiner, r.params.a_list, r.params.b, r.criterion,
                          r.matched_condition, r.bent == r.criterion)
        rec.update(example=r.ref.name, expected_condition=r.ref.condition, ok=r.ok)
        sink.row(rec)
        if not r.ok:
            failed.append(f"{r.ref.name} {r.ref.condition}")
    sink.summary({"checked": len(results), "verified": len(results) - len(failed),
                  "failed": failed})
    sink.close()
    if failed:
        print("mismatch: " + ", ".join(failed), file=sys.stderr)
    return 1 if failed else 0


# -- sweep --------------------------------------------------------------------------

def _theorem_agrees(combiner_label: str, label: str, walsh_bent: bool) -> bool:
    """Does the condition verdict agree with the oracle?  The majority conditions are only sufficient."""
    if label in ("", "precondition"):
        return True
    matched = label != "none"
    if combiner_label == "maj3":
        return walsh_bent or not matched
    return matched == walsh_bent


def _sweep_block(field_key, combiner_hex, A, b, with_labels):
    F = FieldSpec(*field_key)
    C = Combiner.from_hex(combiner_hex)
    crit = xxeq_mask(F, C, A, b)
    oracle = bent_mask(F, h_tables(F, C, A, b))
    labels = None
    if with_labels:
        bb = np.broadcast_to(np.asarray(b), (A.shape[0],))
        labels = [theorem_condition(F, HParams(tuple(int(v) for v in row), int(bv), C))
                  for row, bv in zip(A, bb)]
    return crit, oracle, labels


def _combiner_name(C: Combiner) -> str:
    return {X1: "x1", X1X2: "x1x2", MAJ3: "maj3"}.get(C, "")


def cmd_sweep(args) -> int:
    F = make_field(args)
    C = Combiner.from_hex(args.combiner)
    name = _combiner_name(C)
    with_labels = bool(name)
    C_spec = f"{C.t}:{C.table_hex}"
    key = (F.m, F.poly)

    if args.scope == "exhaustive":
        count = parameter_count(F, C)
        if count > EXHAUSTIVE_LIMIT:
            raise CommandError(f"{count} parameter sets exceed the exhaustive limit "
                               f"{EXHAUSTIVE_LIMIT}; pass --scope <k> to sample")
        grid = coefficient_grid(F, C.t)
        blocks = [(grid, b) for b in range(1, F.size)]
    else:
        try:
            k = int(args.scope)
        except ValueError:
            raise CommandError(f"--scope must be 'exhaustive' or an integer, got {args.scope!r}")
        A, b = sample_parameters(F, C, k, args.seed)
        step = 4096
        blocks = [(A[i:i + step], b[i:i + step]) for i in range(0, k, step)]

    ckpt = Path(args.out + ".ckpt") if args.out else None
    start, counts = 0, {"checked": 0, "bent": 0, "walsh_mismatch": 0, "theorem_mismatch": 0}
    resume = bool(args.resume and ckpt is not None and ckpt.exists())
    if resume:
        state = json.loads(ckpt.read_text())
        start, counts = state["next_block"], state["counts"]

    sink = Sink(args.format, RECORD_FIELDS, args.out, append=resume)
    if not resume:
        sink.header(metadata("sweep", F, args, combiner=C_spec, scope=args.scope,
                             records="all" if args.all else "bent"))
    since = 0

    def work():
        todo = blocks[start:]
        jobs = [(key, C_spec, A, b, with_labels) for A, b in todo]
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(args.jobs) as ex:
                yield from ex.map(_sweep_block, *zip(*jobs))
        else:
            for job in jobs:
                yield _sweep_block(*job)

    for i, (crit, oracle, labels) in enumerate(work(), start=start):
        A, b = blocks[i]
        bb = np.broadcast_to(np.asarray(b), (A.shape[0],))
        for j in range(A.shape[0]):
            bent, ok = bool(crit[j]), bool(crit[j] == oracle[j])
            label = labels[j] if labels else ""
            counts["checked"] += 1
            counts["bent"] += bent
            counts["walsh_mismatch"] += not ok
            counts["theorem_mismatch"] += not _theorem_agrees(name, label, bool(oracle[j]))
            if bent or args.all or not ok:
                sink.row(make_record(F, C, A[j], bb[j], bent, label, ok))
        since += A.shape[0]
        if ckpt is not None and since >= args.checkpoint:
            sink.fh.flush()
            ckpt.write_text(json.dumps({"next_block": i + 1, "counts": counts}))
            since = 0
    sink.summary(counts)
    sink.close()
    if ckpt is not None and ckpt.exists():
        ckpt.unlink()
    return 1 if counts["walsh_mismatch"] or counts["theorem_mismatch"] else 0


# -- table exports ------------------------------------------------------------------

def _emit_rows(args, command, field, header: list[str], rows, extra=None, csv_text=None):
    """CSV goes out in the module's own format; JSON wraps rows with metadata."""
    meta = metadata(command, field, args, **(extra or {}))
    if args.format == "csv" and csv_text is not None:
        text = csv_text
    else:
        buf = io.StringIO()
        buf.write(json.dumps({"metadata": meta}, sort_keys=True) + "\n")
        for r in rows:
            buf.write(json.dumps(dict(zip(header, r))) + "\n")
        text = buf.getvalue()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_kloosterman(args) -> int:
    n = args.n
    if n is None:
        raise CommandError("--n is required")
    F = field_new(args.m, args.poly) if args.m else FieldSpec(n)
    table = kloosterman_table(F, n)
    rows = [(_hex(F, a), v) for a, v in sorted(table.values.items())]
    _emit_rows(args, "kloosterman", F, ["a_hex", "value"], rows, {"n": n},
               csv_text=table.to_csv())
    return 0


def cmd_expand(args) -> int:
    F = make_field(args)
    a, b = parse_element(args.a, F), parse_element(args.b, F)
    poly = expand_h1(a, b, F)
    rows = [(e, _hex(F, c)) for e, c in poly.exponents()]
    _emit_rows(args, "expand", F, ["exponent", "coeff_hex"], rows,
               {"a": _hex(F, a), "b": _hex(F, b)}, csv_text=poly.to_csv())
    return 0


def _function_from_args(args, F: FieldSpec) -> TruthTable:
    if args.table:
        return TruthTable.loads(Path(args.table).read_text(), F)
    if args.b is None or not args.a:
        raise CommandError("give --table, or --a (repeatable) and --b")
    C = Combiner.from_hex(args.combiner)
    a_list = tuple(parse_element(a, F) for a in args.a)
    return build_h(HParams(a_list, parse_element(args.b, F), C), F)


def cmd_spectrum(args) -> int:
    F = make_field(args)
    f = _function_from_args(args, F)
    W = walsh(f)
    rows = [(_hex(F, w), int(v)) for w, v in enumerate(W.values)]
    bent = bool(np.all(np.abs(W.values) == F.q)) if F.m % 2 == 0 else False
    _emit_rows(args, "spectrum", F, ["omega_hex", "value"], rows, {"bent": bent},
               csv_text=W.to_csv())
    return 0


def cmd_fingerprint(args) -> int:
    F = make_field(args)
    f = _function_from_args(args, F)
    fp = fingerprint(f)
    lines = [fp.canonical()]
    if args.against:
        if args.against in known_exponents(F.m):
            g = bent_monomial(F, known_exponents(F.m)[args.against])
            if g is None:
                raise CommandError(f"no bent Tr(a x^d) for {args.against} at m={F.m}")
        elif args.against in ("gold", "leander", "cck"):
            raise CommandError(f"{args.against} exponent is not defined at m={F.m}")
        else:
            g = TruthTable.loads(Path(args.against).read_text(), F)
        report = distinguish(f, g)
        lines += [fingerprint(g).canonical(), report.outcome]
    if args.format == "json":
        meta = metadata("fingerprint", F, args)
        obj = {"metadata": meta, "fingerprint": lines[0]}
        if args.against:
            obj.update(against=lines[1], outcome=lines[2])
        text = json.dumps(obj, sort_keys=True) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# -- entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, help="field degree (even, 2..16)")
    common.add_argument("--poly", help="reduction polynomial as hex, e.g. 0x5b")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = argparse.ArgumentParser(prog="bentforge", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"bentforge {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("verify-examples", parents=[common], help="rebuild the reference sets")

    s = sub.add_parser("sweep", parents=[common], help="criterion vs Walsh over a parameter space")
    s.add_argument("--combiner", default="x1",
                   help="x1, x1x2, maj3, x1x2x3, '<t>:<hex table>' or a bare hex table")
    s.add_argument("--scope", default="exhaustive", help="'exhaustive' or a sample size")
    s.add_argument("--all", action="store_true", help="emit non-bent records too")
    s.add_argument("--checkpoint", type=int, default=DEFAULT_CHECKPOINT,
                   help="records between checkpoints (needs --out)")
    s.add_argument("--resume", action="store_true", help="continue from <out>.ckpt")

    k = sub.add_parser("kloosterman", parents=[common], help="K_n(a) for every nonzero a")
    k.add_argument("--n", type=int)

    e = sub.add_parser("expand", parents=[common], help="polynomial form of Tr(a/(x^(q-1)+b))")
    e.add_argument("--a", default="1")
    e.add_argument("--b", required=True)

    for name, helptext in (("spectrum", "Walsh spectrum"), ("fingerprint", "EA invariants")):
        c = sub.add_parser(name, parents=[common], help=helptext)
        c.add_argument("--table", help="truth table file (m=<int> header)")
        c.add_argument("--combiner", default="x1")
        c.add_argument("--a", action="append", help="block coefficient; repeat for each block")
        c.add_argument("--b")
        if name == "fingerprint":
            c.add_argument("--against", help="gold, leander, cck, or a truth table file")
    return p


COMMANDS = {"verify-examples": cmd_verify_examples, "sweep": cmd_sweep,
            "kloosterman": cmd_kloosterman, "expand": cmd_expand,
            "spectrum": cmd_spectrum, "fingerprint": cmd_fingerprint}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        sys.stdout = open(os.devnull, "w")
        return 0
    except (CommandError, FieldError, ValueError, OSError) as exc:
        print(f"bentforge {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
