"""``permgen`` command line: classify, generate, verify, sweep.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 excluded triple, 4 a criterion contradicted the group order.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass
from multiprocessing import Pool

from . import groups
from .certify import (
    SCHEMA_VERSION,
    CriterionContradictsGroundTruth,
    check_claims,
    certify,
)
from .pairs import OmegaTriple, admissible_triples, build_pair, classify

logger = logging.getLogger("permgen")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_EXCLUDED = 3
EXIT_CONTRADICTION = 4

_SIGNS = {"+1": 1, "1": 1, "even": 1, "-1": -1, "odd": -1}


def parse_sign(text: str) -> int:
    try:
        return _SIGNS[text.strip().lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"sign must be +1, -1, even or odd, got {text!r}"
        ) from None


def parse_signs(text: str) -> tuple[int, ...]:
    if text.strip().lower() in ("both", "all"):
        return (-1, 1)
    return tuple(sorted({parse_sign(part) for part in text.split(",")}))


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if a < 3 or b < a:
        raise argparse.ArgumentTypeError(f"range {text!r} must satisfy 3 <= A <= B")
    return a, b


def parse_ks(text: str) -> tuple[int, ...]:
    out = set()
    for part in text.split(","):
        lo, sep, hi = part.partition("..")
        try:
            out.update(range(int(lo), int(hi) + 1) if sep else [int(lo)])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad k list {text!r}") from None
    return tuple(sorted(out))


@dataclass(frozen=True)
class SweepConfig:
    n_range: tuple[int, int]
    ks: tuple[int, ...] | None = None
    signs: tuple[int, ...] = (-1, 1)
    jobs: int = 1
    oracle: bool = False
    oracle_max_degree: int = 9
    tuple_budget: int = groups.DEFAULT_TUPLE_BUDGET
    claims_only: bool = False
    fmt: str = "text"

    def __post_init__(self):
        if self.n_range[0] < 3:
            raise ValueError("n range must start at 3 or above")

    def triples(self) -> list[OmegaTriple]:
        lo, hi = self.n_range
        out = []
        for n in range(lo, hi + 1):
            out.extend(admissible_triples(n, self.ks, self.signs))
        return sorted(out, key=OmegaTriple.as_tuple)

    def excluded(self) -> list[tuple[OmegaTriple, str]]:
        lo, hi = self.n_range
        out = []
        for n in range(lo, hi + 1):
            ks = self.ks if self.ks is not None else range(3, n + 1)
            for k in ks:
                if not 3 <= k <= n:
                    continue
                for s in self.signs:
                    adm = classify(n, k, s)
                    if not adm.member:
                        out.append((OmegaTriple(n, k, s), adm.exclusion_reason.value))
        return out


def _record(kind: str, **fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **fields}


def _sweep_one(args) -> dict:
    triple, cfg = args
    pair = build_pair(triple)
    if cfg.claims_only:
        rep = check_claims(pair)
    else:
        try:
            rep = certify(
                pair,
                tuple_budget=cfg.tuple_budget,
                oracle=cfg.oracle,
                oracle_max_degree=cfg.oracle_max_degree,
            )
        except CriterionContradictsGroundTruth as exc:
            return _record("triple", triple=_triple_dict(triple), status="failed",
                           error=str(exc))
    d = rep.to_dict()
    d["status"] = "verified" if rep.ok else "failed"
    d.pop("schema_version")
    return _record("triple", **d)


def _triple_dict(t: OmegaTriple) -> dict:
    return {"n": t.n, "k": t.k, "sign": t.sign}


def _sign_text(s: int) -> str:
    return "+1" if s == 1 else "-1"


def _triple_text(t: dict) -> str:
    return f"({t['n']},{t['k']},{_sign_text(t['sign'])})"


def _dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=False, separators=(",", ":"))


_CSV_FIELDS = ("n", "k", "sign", "case", "status", "verdict", "group_order",
               "a_inv_b_fixed_count", "bochert", "manning", "wielandt", "marggraff")


def _csv_row(rec: dict) -> dict:
    t = rec["triple"]
    crit = rec.get("criteria", {})
    return {
        "n": t["n"], "k": t["k"], "sign": _sign_text(t["sign"]),
        "case": rec.get("case", ""), "status": rec.get("status", ""),
        "verdict": rec.get("verdict", ""), "group_order": rec.get("group_order", ""),
        "a_inv_b_fixed_count": rec.get("a_inv_b_fixed_count", ""),
        **{c: crit.get(c, "") for c in ("bochert", "manning", "wielandt", "marggraff")},
    }


def _text_row(rec: dict) -> str:
    head = f"{_triple_text(rec['triple']):>14} {rec.get('case', ''):<22} {rec['status']:<9}"
    if "verdict" in rec:
        applied = ",".join(c for c, v in rec["criteria"].items() if v == "applies") or "-"
        oracle = "" if rec.get("oracle_order") is None else f" oracle={rec['oracle_order']}"
        return f"{head} {rec['verdict']:<11} |G|={rec['group_order']} criteria={applied}{oracle}"
    if "checks" in rec:
        failed = [c for c, ok in rec["checks"].items() if not ok]
        return f"{head} fixed={rec['a_inv_b_fixed_count']} failed={','.join(failed) or '-'}"
    return f"{head} {rec.get('error', '')}"


class _Writer:
    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream
        self.csv = None
        if fmt == "csv":
            self.csv = csv.DictWriter(stream, fieldnames=_CSV_FIELDS, lineterminator="\n")
            self.csv.writeheader()

    def triple(self, rec: dict) -> None:
        if self.fmt == "json":
            self.stream.write(_dumps(rec) + "\n")
        elif self.fmt == "csv":
            self.csv.writerow(_csv_row(rec))
        else:
            self.stream.write(_text_row(rec) + "\n")
        self.stream.flush()

    def summary(self, rec: dict) -> None:
        if self.fmt == "json":
            self.stream.write(_dumps(rec) + "\n")
        elif self.fmt == "text":
            self.stream.write(
                f"verified={rec['verified']} excluded={rec['excluded']} failed={rec['failed']}\n"
            )
        self.stream.flush()


def run_sweep(cfg: SweepConfig, stream) -> int:
    triples = cfg.triples()
    excluded = cfg.excluded()
    for t, reason in excluded:
        logger.info("skipping %s: %s", t, reason)
    writer = _Writer(cfg.fmt, stream)
    counts = {"verified": 0, "failed": 0}
    work = [(t, cfg) for t in triples]
    if cfg.jobs > 1 and len(work) > 1:
        with Pool(cfg.jobs) as pool:
            for rec in pool.imap(_sweep_one, work, chunksize=1):
                counts[rec["status"]] += 1
                writer.triple(rec)
    else:
        for item in work:
            rec = _sweep_one(item)
            counts[rec["status"]] += 1
            writer.triple(rec)
    writer.summary(_record(
        "summary",
        n_range=list(cfg.n_range),
        verified=counts["verified"],
        excluded=len(excluded),
        failed=counts["failed"],
    ))
    return EXIT_OK if counts["failed"] == 0 else EXIT_FAILED


def _cmd_classify(ns, out) -> int:
    adm = classify(ns.n, ns.k, ns.sign)
    rec = _record(
        "classification",
        triple={"n": ns.n, "k": ns.k, "sign": ns.sign},
        member=adm.member,
        exclusion_reason=None if adm.member else adm.exclusion_reason.value,
        d_equals_one=adm.d_equals_one,
    )
    if ns.format == "json":
        out.write(_dumps(rec) + "\n")
    else:
        t = _triple_text(rec["triple"])
        if adm.member:
            note = " (d_equals_one: A_3 is generated by one element)" if adm.d_equals_one else ""
            out.write(f"{t} member{note}\n")
        else:
            out.write(f"{t} excluded/{adm.exclusion_reason.value}\n")
    return EXIT_OK if adm.member else EXIT_EXCLUDED


def _excluded_message(ns) -> int:
    adm = classify(ns.n, ns.k, ns.sign)
    reason = adm.exclusion_reason.value if adm.exclusion_reason else "out_of_range"
    sys.stderr.write(f"({ns.n},{ns.k},{_sign_text(ns.sign)}) excluded/{reason}\n")
    return EXIT_EXCLUDED


def _cmd_generate(ns, out) -> int:
    if not classify(ns.n, ns.k, ns.sign).member:
        return _excluded_message(ns)
    pair = build_pair(OmegaTriple(ns.n, ns.k, ns.sign))
    rec = _record("pair", triple=_triple_dict(pair.triple), case=pair.case.value,
                  a=str(pair.a), b=str(pair.b))
    if ns.format == "json":
        out.write(_dumps(rec) + "\n")
    else:
        out.write(f"a={rec['a']}\nb={rec['b']}\ncase={rec['case']}\n")
    return EXIT_OK


def _cmd_verify(ns, out) -> int:
    if not classify(ns.n, ns.k, ns.sign).member:
        return _excluded_message(ns)
    triple = OmegaTriple(ns.n, ns.k, ns.sign)
    try:
        rep = certify(build_pair(triple), tuple_budget=ns.tuple_budget, oracle=ns.oracle)
    except CriterionContradictsGroundTruth as exc:
        sys.stderr.write(f"criterion contradicts group order: {exc}\n")
        return EXIT_CONTRADICTION
    d = rep.to_dict()
    d["kind"] = "report"
    d["status"] = "verified" if rep.ok else "failed"
    if ns.format == "json":
        out.write(_dumps(d) + "\n")
    else:
        out.write(
            f"triple={triple}\ncase={rep.case.value}\na={rep.a}\nb={rep.b}\n"
            f"verdict={rep.verdict.value}\ngroup_order={rep.group_order}\n"
            f"primitive={rep.primitive}\n"
            f"a_inv_b_cycle_lengths={list(rep.a_inv_b_cycle_lengths)}\n"
            f"criteria={','.join(f'{k}:{v.value}' for k, v in rep.criteria.items())}\n"
            f"d_k_value={rep.d_k_value}\n"
        )
        if rep.oracle_order is not None:
            out.write(f"oracle_order={rep.oracle_order}\n")
    if not rep.ok:
        sys.stderr.write(
            f"expected {rep.expected_verdict.value}, got {rep.verdict.value} "
            f"(order {rep.group_order})\n"
        )
        return EXIT_FAILED
    return EXIT_OK


def _default_jobs() -> int:
    env = os.environ.get("PERMGEN_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            logger.warning("ignoring non-integer PERMGEN_JOBS=%r", env)
    return os.cpu_count() or 1


def _cmd_sweep(ns, out) -> int:
    cfg = SweepConfig(
        n_range=ns.n,
        ks=ns.k,
        signs=ns.sign,
        jobs=ns.jobs if ns.jobs is not None else _default_jobs(),
        oracle=ns.oracle,
        oracle_max_degree=ns.oracle_max_degree,
        tuple_budget=ns.tuple_budget,
        claims_only=ns.claims_only,
        fmt=ns.format,
    )
    return run_sweep(cfg, out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="permgen", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log skipped triples")
    sub = p.add_subparsers(dest="command", required=True)

    def triple_args(sp):
        sp.add_argument("n", type=int)
        sp.add_argument("k", type=int)
        sp.add_argument("sign", type=parse_sign, help="+1/even or -1/odd (permutation parity)")

    def common(sp, fmts=("text", "json")):
        sp.add_argument("--format", choices=fmts, default="text")
        sp.add_argument("--out", help="write output to FILE")

    sp = sub.add_parser("classify", help="admissibility of (n, k, sign)")
    triple_args(sp)
    common(sp)
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("generate", help="print the generating pair")
    triple_args(sp)
    common(sp)
    sp.set_defaults(func=_cmd_generate)

    sp = sub.add_parser("verify", help="certify one pair")
    triple_args(sp)
    common(sp)
    sp.add_argument("--oracle", action="store_true", help="cross-check with brute-force closure")
    sp.add_argument("--tuple-budget", type=int, default=groups.DEFAULT_TUPLE_BUDGET)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("sweep", help="certify every admissible triple in a range")
    common(sp, ("text", "json", "csv"))
    sp.add_argument("--n", type=parse_range, default=(3, 40), help="A..B (default 3..40)")
    sp.add_argument("--k", type=parse_ks, default=None, help="k list, e.g. 4,6 or 3..8")
    sp.add_argument("--sign", type=parse_signs, default=(-1, 1),
                    help="+1, -1, even, odd, or both (default)")
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--oracle-max-degree", type=int, default=9)
    sp.add_argument("--claims-only", action="store_true",
                    help="structural checks only, no group orders")
    sp.add_argument("--tuple-budget", type=int, default=groups.DEFAULT_TUPLE_BUDGET)
    sp.add_argument("--jobs", type=int, default=None, help="worker processes (env PERMGEN_JOBS)")
    sp.set_defaults(func=_cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if ns.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    if ns.out:
        with open(ns.out, "w", encoding="utf-8", newline="") as fh:
            return ns.func(ns, fh)
    return ns.func(ns, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
