"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 data error, 4 bound not applicable,
5 a proved inequality was violated (implementation bug).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import bounds, codebook, constructions, conventional, core, distance, report
from .channel import DEFAULT_SEED, ErrorPattern
from .errors import ContradictionError, NotApplicableError, SeqSubsetError

log = logging.getLogger("seqsubset")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NA, EXIT_CONTRADICTION = 0, 2, 3, 4, 5

DNA = "ACGT"

BOUND_COLUMNS = ["bound", "q", "L", "M", "d", "K", "applicable", "value", "reason"]


class Output:
    """Collects rows and prints them as aligned text, CSV or JSON lines."""

    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream

    def line(self, text):
        if self.fmt == "text":
            print(text, file=self.stream)

    def rows(self, columns, rows):
        if self.fmt == "csv":
            w = csv.writer(self.stream, lineterminator="\n")
            w.writerow(columns)
            w.writerows([[_cell(r.get(c)) for c in columns] for r in rows])
        elif self.fmt == "jsonl":
            for r in rows:
                print(json.dumps({c: r.get(c) for c in columns}), file=self.stream)
        else:
            table = [columns] + [[_cell(r.get(c)) for c in columns] for r in rows]
            widths = [max(len(row[i]) for row in table) for i in range(len(columns))]
            for row in table:
                print("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip(), file=self.stream)

    def record(self, obj):
        if self.fmt == "jsonl":
            print(json.dumps(obj), file=self.stream)
        elif self.fmt == "csv":
            self.rows(list(obj), [obj])


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _dna_in(text):
    out = []
    for line in text.splitlines():
        if line.lstrip().startswith("#") or line.strip() == "---":
            out.append(line)
        else:
            out.append(" ".join(str(DNA.index(ch)) for ch in line.upper() if ch in DNA))
    text = "\n".join(out)
    if "#q=" not in text.replace(" ", ""):
        first = next((l for l in out if l.strip() and not l.startswith("#")), "")
        text = f"#q=4 L={len(first.split())}\n" + text
    return text


def _read(path, dna):
    text = Path(path).read_text(encoding="utf-8")
    return _dna_in(text) if dna else text


def _seq_text(s, dna):
    if dna:
        return "".join(DNA[x] for x in s)
    return core.seq_str(s)


def _pool_text(pool, dna, comments=()):
    if not dna:
        return core.serialize_pool(pool, comments=comments)
    lines = [f"#{c}" for c in comments] + [_seq_text(m, True) for m in pool.members]
    return "\n".join(lines) + "\n"


def _load_pool(path, args, q=None):
    q = getattr(args, "q", None) or q
    return core.parse_pool(_read(path, args.dna), q=q, multiset=getattr(args, "multiset", False))


def _load_code(path, args):
    return codebook.parse_code(_read(path, args.dna))


def _int_range(text):
    """``"4"``, ``"2,3,5"`` or ``"2..6"`` (inclusive) to a list of ints."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            values.extend(range(int(lo), int(hi) + 1))
        elif part:
            values.append(int(part))
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return values


# subcommands ---------------------------------------------------------------


def cmd_distance(args, out):
    a = _load_pool(args.pool_a, args)
    b = _load_pool(args.pool_b, args)
    res = distance.seqsubset_distance(a, b)
    oracle = None
    if args.oracle:
        oracle = distance.seqsubset_distance_bruteforce(a, b).distance
        if oracle != res.distance:
            raise ContradictionError(f"matching gives {res.distance}, brute force gives {oracle}")
    pairs = res.witness.pairs()
    if out.fmt == "text":
        out.line(str(res.distance))
        for x, y in pairs:
            out.line(f"{_seq_text(x, args.dna)} -> {_seq_text(y, args.dna)}")
        if oracle is not None:
            out.line(f"oracle {oracle} agrees")
    else:
        out.record({
            "distance": res.distance,
            "witness": [[_seq_text(x, args.dna), _seq_text(y, args.dna)] for x, y in pairs],
            "oracle": oracle,
        })
    return EXIT_OK


def cmd_mindist(args, out):
    code = _load_code(args.code, args)
    pairs = distance.pairwise_distances(code.codewords, jobs=args.jobs)
    d = codebook.min_distance(code, jobs=args.jobs)
    if out.fmt == "text" and not args.pairs:
        out.line(str(d))
    else:
        rows = [{"i": i + 1, "j": j + 1, "distance": v} for (i, j), v in pairs.items()]
        if out.fmt == "text":
            out.line(str(d))
        out.rows(["i", "j", "distance"], rows)
    if args.figure:
        report.plot_distance_matrix(len(code), pairs, args.figure)
    return EXIT_OK


def cmd_decode(args, out):
    code = _load_code(args.code, args)
    y = _load_pool(args.received, args, q=code.q)
    res = codebook.decode(code, y, dedup=args.dedup)
    amb = str(res.ambiguous).lower()
    header = f"distance={res.distance} ambiguous={amb}"
    if out.fmt == "text":
        out.line(f"X{res.index + 1} distance={res.distance}")
        if res.runner_up_distance is not None:
            out.line(f"# runner_up={res.runner_up_distance} ambiguous={amb}")
        sys.stdout.flush()
        out.stream.write(_pool_text(res.decoded, args.dna, comments=[header]))
    else:
        out.record({
            "codeword": res.index + 1,
            "distance": res.distance,
            "ambiguous": res.ambiguous,
            "runner_up": res.runner_up_distance,
        })
    if args.output:
        Path(args.output).write_text(_pool_text(res.decoded, args.dna, comments=[header]))
    return EXIT_OK


def _load_index_map(path, c1, args):
    """Lines ``i j seq``: 1-based position ``i``, symbol ``j`` of the outer alphabet."""
    mapping = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 2)
        if len(parts) != 3:
            raise core.ParseError("expected 'i j sequence'", lineno)
        text = _dna_in(parts[2]).splitlines()[-1] if args.dna else parts[2]
        mapping[int(parts[0]) - 1, int(parts[1])] = core.parse_sequence_line(text, c1.q, lineno)
    return mapping


def cmd_construct(args, out):
    verify = not args.no_verify
    if args.construction == "c1":
        if None in (args.q, args.L, args.M):
            raise SystemExit("construct c1 needs --q, --L and --M")
        code, cert = constructions.construct1(args.q, args.L, args.M, N=args.N, verify=verify, jobs=args.jobs)
    else:
        if not (args.c1 and args.c2):
            raise SystemExit(f"construct {args.construction} needs --c1 and --c2")
        c1 = conventional.parse_conventional(_read(args.c1, args.dna))
        c2 = conventional.parse_conventional(_read(args.c2, args.dna and args.construction != "c2"))
        if args.construction == "c2":
            code, cert = constructions.construct2(c1, c2, verify=verify, jobs=args.jobs)
        elif args.construction == "c3":
            imap = _load_index_map(args.index_map, c1, args) if args.index_map else None
            code, cert = constructions.construct3(c1, c2, index_map=imap, verify=verify, jobs=args.jobs)
        elif args.construction == "c4":
            code, cert = constructions.construct4(c1, c2, verify=verify, jobs=args.jobs)
        else:
            code, cert = constructions.construct4_prime(c1, c2, args.n, verify=verify, jobs=args.jobs)
    text = codebook.serialize_code(code, comments=cert.lines())
    if args.output:
        Path(args.output).write_text(text)
    if out.fmt == "text":
        if not args.output:
            out.stream.write(text)
        else:
            for line in cert.lines():
                out.line(line)
    else:
        out.record({
            "construction": cert.construction,
            "codewords": len(code),
            "L": code.L,
            "M": code.M,
            "claimed_min_distance": cert.claimed_min_distance,
            "verified": cert.verified,
            "min_distance": cert.min_distance,
            "inner_distances": cert.inner_distances,
        })
    return EXIT_OK


def _bound_rows(args):
    kinds = ["special", "plotkin", "singleton", "recursive"] if args.kind == "all" else [args.kind]
    reports = []
    for q in args.q:
        for L in args.L:
            for M in args.M:
                for d in args.d:
                    if args.kind == "recursive" and args.inner is not None:
                        for K in args.K or [q ** L]:
                            reports.append(bounds._report(
                                "recursive-step",
                                lambda: bounds.recursive_bound_step(q, L, M, K, d, args.inner),
                                q, L, M, d, K=K,
                            ))
                        continue
                    Ks = args.K or ([q ** L] if "recursive" in kinds else [None])
                    for K in Ks:
                        for r in bounds.size_bounds(q, L, M, d, K=K):
                            if r.name in kinds and not (r.name != "recursive" and K != Ks[0]):
                                reports.append(r)
    return reports


def cmd_bound(args, out):
    reports = _bound_rows(args)
    rows = [
        {"bound": r.name, "q": r.q, "L": r.L, "M": r.M, "d": r.d, "K": r.K,
         "applicable": r.applicable, "value": r.value, "reason": r.reason}
        for r in reports
    ]
    out.rows(BOUND_COLUMNS, rows)
    if args.figure:
        report.plot_bounds(reports, args.figure)
    return EXIT_OK if any(r.applicable for r in reports) else EXIT_NA


def cmd_simulate(args, out):
    code = _load_code(args.code, args)
    pattern = ErrorPattern.parse(args.pattern)
    summary = codebook.simulate_round_trips(code, pattern, args.trials, args.seed, jobs=args.jobs)
    if out.fmt == "text":
        out.line(f"{summary.recovered}/{summary.trials} recovered")
        out.line(
            f"pattern_bound={summary.pattern_bound} radius={summary.radius} "
            f"within_radius={str(summary.within_radius).lower()} ambiguous={summary.ambiguous} "
            f"bound_violations={summary.bound_violations}"
        )
    else:
        out.record({
            "trials": summary.trials,
            "recovered": summary.recovered,
            "ambiguous": summary.ambiguous,
            "bound_violations": summary.bound_violations,
            "pattern_bound": summary.pattern_bound,
            "radius": summary.radius,
            "within_radius": summary.within_radius,
        })
    if args.figure:
        report.plot_simulation(summary, args.figure)
    if summary.bound_violations:
        return EXIT_CONTRADICTION
    if summary.within_radius and summary.recovered < summary.trials:
        return EXIT_CONTRADICTION
    return EXIT_OK


def cmd_verify(args, out):
    code = _load_code(args.code, args)
    checks = []
    d = codebook.min_distance(code, jobs=args.jobs) if len(code) >= 2 else None
    claim = args.claim
    for m in code.metadata:
        if m.startswith("certificate claimed_min_distance=") and claim is None:
            v = m.split("=", 1)[1]
            claim = int(v) if v not in ("None", "") else None
    if claim is not None:
        checks.append({"check": "certificate", "ok": d is not None and d >= claim,
                       "detail": f"min_distance={d} claimed={claim}"})
    if code.constant_size and d is not None:
        for r in bounds.check_code_against_bounds(code):
            if r.applicable:
                detail = f"|C|={r.code_size} bound={_cell(r.value)}"
                if "actual" in r.extra:
                    detail = f"redundancy={_cell(r.extra['actual'])} bound={_cell(r.value)}"
                checks.append({"check": r.name, "ok": r.holds, "detail": detail})
            else:
                checks.append({"check": r.name, "ok": None, "detail": f"not applicable: {r.reason}"})
    problems = distance.metric_violations(list(code.codewords), trials=args.trials, seed=args.seed)
    checks.append({"check": "metric-spot", "ok": not problems,
                   "detail": f"{args.trials} triples" if not problems else problems[0]})
    if out.fmt == "text":
        out.line(f"min_distance={d}")
    out.rows(["check", "ok", "detail"], checks)
    return EXIT_CONTRADICTION if any(c["ok"] is False for c in checks) else EXIT_OK


# parser --------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "csv", "jsonl"], default="text")
    common.add_argument("--dna", action="store_true", help="read and write A,C,G,T as symbols 0..3")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for pair/trial scans")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(
        prog="seqsubset",
        description="Sequence-subset distance, codes, bounds and channel simulation.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("distance", parents=[common], help="distance between two pool files")
    s.add_argument("pool_a")
    s.add_argument("pool_b")
    s.add_argument("--multiset", action="store_true")
    s.add_argument("--oracle", action="store_true", help="confirm by exhaustive enumeration")
    s.add_argument("--q", type=int, help="alphabet size for files without a #q= header")
    s.set_defaults(func=cmd_distance)

    s = sub.add_parser("mindist", parents=[common], help="minimum distance of a code file")
    s.add_argument("code")
    s.add_argument("--pairs", action="store_true", help="also list every pairwise distance")
    s.add_argument("--figure", metavar="PATH", help="write a pairwise-distance heatmap")
    s.set_defaults(func=cmd_mindist)

    s = sub.add_parser("decode", parents=[common], help="minimum-distance decoding")
    s.add_argument("code")
    s.add_argument("received")
    s.add_argument("--multiset", action="store_true", help="read the received pool as a multiset")
    s.add_argument("--dedup", action="store_true", help="collapse repeated reads before decoding")
    s.add_argument("-o", "--output", help="also write the decoded pool here")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("construct", parents=[common], help="build a code with a certificate")
    s.add_argument("construction", choices=["c1", "c2", "c3", "c4", "c4p"])
    s.add_argument("--q", type=int)
    s.add_argument("--L", type=int)
    s.add_argument("--M", type=int)
    s.add_argument("--N", type=int, help="c1: number of codewords (fallback variant)")
    s.add_argument("--c1", help="inner code file (codeword list or generator matrix)")
    s.add_argument("--c2", help="outer code file (codeword list or generator matrix)")
    s.add_argument("--index-map", help="c3: lines 'i j sequence' fixing x_{i,j}")
    s.add_argument("--n", type=int, default=2, help="c4p: fold count")
    s.add_argument("--no-verify", action="store_true", help="skip the exhaustive distance check")
    s.add_argument("-o", "--output", help="write the code file here")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser(
        "bound", parents=[common], help="tabulate code-size bounds",
        description="Columns: " + ", ".join(BOUND_COLUMNS) + ". Ranges: 4, 2,3,5 or 2..6.",
    )
    s.add_argument("kind", choices=["special", "plotkin", "singleton", "recursive", "all"])
    s.add_argument("--q", type=_int_range, required=True)
    s.add_argument("--L", type=_int_range, required=True)
    s.add_argument("--M", type=_int_range, required=True)
    s.add_argument("--d", type=_int_range, required=True)
    s.add_argument("--K", type=_int_range, help="recursive: size of the codeword union (default q^L)")
    s.add_argument("--inner", type=int, help="recursive: evaluate one step with this inner cap")
    s.add_argument("--figure", metavar="PATH", help="plot applicable values against M")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("simulate", parents=[common], help="channel + decode round trips")
    s.add_argument("code")
    s.add_argument("--pattern", required=True, help="nI,nD,nS")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--figure", metavar="PATH", help="plot per-trial distances")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("verify", parents=[common], help="certificate, bound and metric checks")
    s.add_argument("code")
    s.add_argument("--claim", type=int, help="expected lower bound on the minimum distance")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None, stdout=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(message)s")
    out = Output(args.format, stdout or sys.stdout)
    try:
        return args.func(args, out)
    except ContradictionError as exc:
        print(f"error: contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except NotApplicableError as exc:
        print(f"error: not applicable: {exc}", file=sys.stderr)
        return EXIT_NA
    except (SeqSubsetError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
