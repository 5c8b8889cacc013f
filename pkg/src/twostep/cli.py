"""Command-line interface.

Verbs: ``validate``, ``invariants``, ``decompose``, ``dual``, ``catalog``,
``classify``.  Global flags ``--machine``, ``--seed`` and
``--oracle-budget`` may appear before or after the verb.

Every command builds a report dictionary with the same top-level keys;
``--machine`` prints it as one JSON line per subject, otherwise a text
rendering of the same dictionary is printed.

Exit codes: 0 success, 1 usage error, 2 parse or validation error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import importlib
import json
import re
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from . import fileformat
from .algebra import TwoStepAlgebra
from .decompose import BlockDiagonalWitness, PencilReport, decide, run_oracle
from .duality import dual, parse_relation, quotient
from .errors import TwoStepError
from .invariants import INVARIANCE_CAVEAT, fingerprint

# the package namespace rebinds "catalog" to the function of that name
cat = importlib.import_module(".catalog", __package__)

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
SCHEMA = "twostep-report/1"

HYPERGRAPH_CAVEAT = "hypergraph connectivity is basis-dependent: a connected hypergraph does not prove indecomposability"
MATCH_CAVEAT = "catalog matches are invariant-level agreement, not isomorphism proofs"
WITHHELD_CAVEAT = "not 3-uniform; center sequences withheld"
BASE_CAVEATS = (HYPERGRAPH_CAVEAT, INVARIANCE_CAVEAT, cat.RANK_CAVEAT)


class InternalError(RuntimeError):
    """An exactly checkable claim failed to verify."""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _report(command: str, subject: Optional[str], status: str = "ok", **kw) -> dict:
    rep = {
        "schema": SCHEMA,
        "command": command,
        "subject": subject,
        "status": status,
        "fingerprint": None,
        "verdict": None,
        "matches": None,
        "caveats": list(BASE_CAVEATS),
        "details": {},
    }
    rep.update(kw)
    return rep


def _seq(v) -> str:
    return "none" if v is None else "(" + ",".join(str(x) for x in v) + ")"


# ---------------------------------------------------------------------------
# Report pieces
# ---------------------------------------------------------------------------


def _fingerprint_section(alg: TwoStepAlgebra, rep: dict) -> None:
    fp = fingerprint(alg)
    rep["fingerprint"] = dict(fp.as_dict(), n=alg.n)
    if not fp.uniform3:
        rep["caveats"].append(WITHHELD_CAVEAT)


def _matrix(m) -> List[List[str]]:
    return [[str(x) for x in row] for row in m]


def _witness_dict(w: BlockDiagonalWitness) -> dict:
    return {
        "S": sorted(w.S_subset),
        "T": sorted(w.T_subset),
        "blocks": w.describe(),
        "basis_change": {"S": _matrix(w.basis_change.S), "C": _matrix(w.basis_change.C)},
    }


def _pencil_dict(r: PencilReport) -> dict:
    return {
        "kind": "pencil",
        "generic_rank": r.generic_rank,
        "rank_a": r.rank_a,
        "rank_b": r.rank_b,
        "drop_polynomial": str(r.drop_polynomial),
        "drop_points": [
            {"modulus": None if d.modulus is None else str(d.modulus), "label": d.label(), "rank": d.rank}
            for d in r.drop_points
        ],
        "min_pair_sum": r.min_pair_sum,
        "q": r.q,
    }


def _verdict_section(alg: TwoStepAlgebra, rep: dict, oracle_budget: Optional[int], seed: int) -> None:
    v = decide(alg)
    if v.witness is not None and not v.witness.verify(alg.tensor):
        raise InternalError("decomposition witness failed exact verification")
    cert = None
    if isinstance(v.certificate, PencilReport):
        cert = _pencil_dict(v.certificate)
    elif v.certificate is not None:
        cert = {"kind": "marginal-rank", "marginal_rank": v.certificate.marginal_rank, "q": v.certificate.q}
    rep["verdict"] = {
        "status": v.status.value,
        "method": v.method,
        "headline": f"{v.status.value}: {v.notes[-1]}",
        "notes": list(v.notes),
        "witness": None if v.witness is None else _witness_dict(v.witness),
        "certificate": cert,
    }
    if v.split is not None:
        rep["details"]["trivial_split"] = {
            "abelian_count": v.split.abelian_count,
            "summand": fileformat.algebra_to_dict(v.split.summand),
        }
    if oracle_budget is not None:
        o = run_oracle(alg, budget=oracle_budget, seed=seed)
        if o.witness is not None and not o.witness.verify(alg.tensor):
            raise InternalError("oracle witness failed exact verification")
        rep["details"]["oracle"] = {
            "found": o.witness is not None,
            "source": o.source,
            "candidates_tried": o.candidates_tried,
            "budget": o.budget,
            "seed": o.seed,
            "witness": None if o.witness is None else _witness_dict(o.witness),
        }
        if o.witness is None:
            rep["caveats"].append("oracle found no witness within budget; this is not a proof of indecomposability")


def _match_section(alg: TwoStepAlgebra, rep: dict) -> None:
    rep["matches"] = [
        {"id": m.entry.id, "t_name": m.entry.t_name, "strength": m.strength.value} for m in cat.match(alg)
    ]
    rep["caveats"].append(MATCH_CAVEAT)
    if not cat.has_coverage(alg.q, alg.p):
        rep["details"]["coverage"] = f"no catalog coverage for (q,p) = ({alg.q},{alg.p})"


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------


def render_text(rep: dict) -> str:
    lines = []
    head = rep["command"] + (f" {rep['subject']}" if rep["subject"] else "")
    lines.append(f"== {head} ==")
    if rep["status"] == "error":
        lines.append(f"error: {rep['details'].get('error')}")
        return "\n".join(lines)
    d = rep["details"]
    if "message" in d:
        lines.append(d["message"])
    if "brackets" in d:
        lines.extend(f"  {b}" for b in d["brackets"])
    fp = rep["fingerprint"]
    if fp:
        lines.append(f"q = {fp['q']}, p = {fp['p']}, n = {fp['n']}")
        lines.append(f"related sequence: {_seq(fp['related_sequence'])}")
        lines.append(f"generator relation sequence: {_seq(fp['generator_relation_sequence'])}")
        if fp["uniform3"]:
            lines.append(f"center related sequence: {_seq(fp['center_related_sequence'])}")
            lines.append(f"weighted center related sequence: {_seq(fp['weighted_center_related_sequence'])}")
        else:
            lines.append(f"center sequences: {WITHHELD_CAVEAT}")
        lines.append(f"girth: {fp['girth'] if fp['girth'] is not None else 'none (forest)'}")
    v = rep["verdict"]
    if v:
        lines.append(v["headline"])
        for note in v["notes"][:-1]:
            lines.append(f"  - {note}")
        if v["witness"]:
            lines.append(f"  witness blocks {v['witness']['blocks']}")
        c = v["certificate"]
        if c and c["kind"] == "pencil":
            pts = ", ".join(f"{p['label']} -> {p['rank']}" for p in c["drop_points"]) or "none"
            lines.append(
                f"  pencil A + tB: generic rank {c['generic_rank']}, rank(A) = {c['rank_a']}, "
                f"rank(B) = {c['rank_b']}"
            )
            lines.append(f"  drop points: {pts}; min pair sum {c['min_pair_sum']}")
        elif c:
            lines.append(f"  marginal rank {c['marginal_rank']} (q = {c['q']})")
    if "trivial_split" in d:
        lines.append(f"  abelian generators split off: {d['trivial_split']['abelian_count']}")
    if "oracle" in d:
        o = d["oracle"]
        if o["found"]:
            lines.append(
                f"oracle: witness {o['witness']['blocks']} after {o['candidates_tried']} candidates "
                f"({o['source']}, seed {o['seed']})"
            )
        else:
            lines.append(f"oracle: no witness within budget {o['budget']} (seed {o['seed']})")
    if rep["matches"] is not None:
        if rep["matches"]:
            for m in rep["matches"]:
                lines.append(f"{m['strength']} match {m['id']} / {m['t_name']}")
        elif "coverage" in d:
            lines.append(d["coverage"])
        else:
            lines.append("no catalog match")
    for key in ("bookkeeping",):
        for line in d.get(key, []):
            lines.append(line)
    if rep["caveats"]:
        lines.append("caveats:")
        lines.extend(f"  * {c}" for c in rep["caveats"])
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _per_file(command: str, fill: Callable[[TwoStepAlgebra, dict, argparse.Namespace], None]):
    def run(args) -> List[tuple]:
        out = []
        for path in args.files:
            try:
                alg = fileformat.read(path)
            except OSError as exc:
                out.append((EXIT_INPUT, _error(command, path, f"cannot read file: {exc.strerror or exc}")))
                continue
            except TwoStepError as exc:
                out.append((EXIT_INPUT, _error(command, path, str(exc))))
                continue
            rep = _report(command, alg.name or path)
            rep["details"]["file"] = str(path)
            fill(alg, rep, args)
            out.append((EXIT_OK, rep))
        return out

    return run


def _error(command: str, subject: Optional[str], message: str) -> dict:
    rep = _report(command, subject, status="error")
    rep["details"]["error"] = message
    return rep


def _fill_validate(alg, rep, args):
    rep["details"]["message"] = f"valid: q = {alg.q}, p = {alg.p}, n = {alg.n}"
    rep["details"]["q"], rep["details"]["p"], rep["details"]["n"] = alg.q, alg.p, alg.n


def _fill_invariants(alg, rep, args):
    _fingerprint_section(alg, rep)


def _fill_decompose(alg, rep, args):
    _fingerprint_section(alg, rep)
    _verdict_section(alg, rep, args.oracle_budget, args.seed)


def _fill_classify(alg, rep, args):
    _fingerprint_section(alg, rep)
    _match_section(alg, rep)


def cmd_dual(args) -> List[tuple]:
    if (args.relations is None) == (args.relations_file is None):
        raise UsageError("dual: give exactly one of --relations or --relations-file")
    if args.relations_file is not None:
        try:
            expr = Path(args.relations_file).read_text(encoding="utf-8")
        except OSError as exc:
            return [(EXIT_INPUT, _error("dual", args.relations_file, f"cannot read file: {exc.strerror or exc}"))]
    else:
        expr = args.relations
    subject = f"N^{args.q} / I"
    try:
        ideal = parse_relation(args.q, expr)
        base = quotient(args.q, ideal)
        result = dual(base, name=args.name or f"dual of N^{args.q}/I")
    except (TwoStepError, ValueError) as exc:
        return [(EXIT_INPUT, _error("dual", subject, str(exc)))]
    q, half = args.q, args.q * (args.q - 1) // 2
    rep = _report("dual", subject)
    rep["details"]["relations"] = ideal.to_text()
    rep["details"]["bookkeeping"] = [
        f"dim V = q(q-1)/2 = {half}; dim I = {ideal.dim}; dim I^perp = {half - ideal.dim}",
        f"N = N^{q}/I: q = {q}, center dim {base.p}, dim {base.n}",
        f"dual N^perp = N^{q}/I^perp: q = {q}, center dim {result.p} = dim I, dim {result.n} = q + dim I",
    ]
    rep["details"]["dimensions"] = {
        "q": q,
        "dim_V": half,
        "dim_I": ideal.dim,
        "dim_N": base.n,
        "dim_dual": result.n,
        "center_dim_dual": result.p,
    }
    rep["details"]["algebra"] = fileformat.algebra_to_dict(result)
    rep["details"]["brackets"] = result.bracket_lines()
    _fingerprint_section(result, rep)
    if args.output:
        fileformat.write(result, args.output)
        rep["details"]["message"] = f"wrote {args.output}"
    return [(EXIT_OK, rep)]


def _slug(ident: str) -> str:
    return re.sub(r"[^0-9A-Za-z]+", "_", ident).strip("_")


def cmd_catalog(args) -> List[tuple]:
    action = args.action
    if action == "list":
        rep = _report("catalog list", None)
        rows = [
            {"id": e.id, "t_name": e.t_name, "n": e.n, "p": e.p, "r": e.rank_r} for e in cat.catalog()
        ]
        rep["details"]["entries"] = rows
        rep["details"]["message"] = "\n".join(
            f"{r['id']:<14} {r['t_name']:<16} n={r['n']} p={r['p']} r={r['r']}" for r in rows
        ) + f"\n{len(rows)} entries"
        return [(EXIT_OK, rep)]
    if action == "show":
        if not args.ident:
            raise UsageError("catalog show: missing ID")
        try:
            e = cat.get(args.ident)
        except KeyError as exc:
            return [(EXIT_INPUT, _error("catalog show", args.ident, exc.args[0]))]
        rep = _report("catalog show", e.id)
        flag = {True: "all one-dimensional", False: "some of dimension > 1", None: "not stated"}[
            e.root_spaces_all_dim1
        ]
        rep["details"].update(
            {
                "id": e.id,
                "t_name": e.t_name,
                "n": e.n,
                "p": e.p,
                "q": e.q,
                "rank_r": e.rank_r,
                "root_spaces_all_dim1": e.root_spaces_all_dim1,
                "hmsg_related_sequence": list(e.hmsg_related_sequence),
                "provenance": e.provenance,
                "notes": list(e.notes),
                "brackets": e.algebra.bracket_lines(),
                "message": "\n".join(
                    [
                        f"{e.id} = {e.t_name}",
                        f"n = {e.n}, p = {e.p}, q = {e.q}, rank {e.rank_r} (literature value)",
                        f"root spaces: {flag}",
                        f"H-msg related sequence: {_seq(e.hmsg_related_sequence)}",
                        f"source: {e.provenance}",
                    ]
                    + [f"note: {n}" for n in e.notes]
                    + ["bracket table:"]
                ),
            }
        )
        _fingerprint_section(e.algebra, rep)
        return [(EXIT_OK, rep)]
    if action == "export":
        if not args.ident:
            raise UsageError("catalog export: missing DIR")
        out = Path(args.ident)
        out.mkdir(parents=True, exist_ok=True)
        index = []
        for e in cat.catalog():
            fname = _slug(e.id) + ".json"
            fileformat.write(e.algebra, out / fname, notes=f"{e.t_name}; {e.provenance}")
            index.append(
                {"id": e.id, "t_name": e.t_name, "file": fname, "rank_r": e.rank_r, "provenance": e.provenance}
            )
        if args.include_fixtures:
            for f in cat.auxiliary_fixtures():
                fname = "fixture_" + _slug(f.id) + ".json"
                fileformat.write(f.algebra(), out / fname, notes=f.description)
                index.append({"id": f.id, "t_name": None, "file": fname, "rank_r": None, "provenance": f.description})
        (out / "index.json").write_text(json.dumps(index, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        rep = _report("catalog export", str(out))
        rep["details"]["files"] = [row["file"] for row in index]
        rep["details"]["message"] = f"wrote {len(index)} algebra files and index.json to {out}"
        return [(EXIT_OK, rep)]
    raise UsageError(f"catalog: unknown action {action!r} (expected list, show or export)")


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _globals(parser: argparse.ArgumentParser, top: bool) -> None:
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--machine", action="store_true", default=d(False), help="emit JSON reports only")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for the brute-force oracle")
    parser.add_argument(
        "--oracle-budget", type=int, default=d(None), metavar="N", help="run the oracle with N candidates"
    )


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twostep", description="Exact analysis of two-step nilpotent Lie algebras.")
    _globals(p, True)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name, fill, help_ in (
        ("validate", _fill_validate, "check an algebra file"),
        ("invariants", _fill_invariants, "hypergraph invariants and sequences"),
        ("decompose", _fill_decompose, "decomposability verdict"),
        ("classify", _fill_classify, "fingerprint and catalog matches"),
    ):
        sp = sub.add_parser(name, help=help_)
        _globals(sp, False)
        sp.add_argument("files", nargs="+", metavar="FILE")
        sp.set_defaults(run=_per_file(name, fill))
    sp = sub.add_parser("dual", help="dual algebra N^q / I^perp of a relation ideal")
    _globals(sp, False)
    sp.add_argument("q", type=int)
    sp.add_argument("--relations", metavar="EXPR")
    sp.add_argument("--relations-file", metavar="PATH")
    sp.add_argument("--name")
    sp.add_argument("-o", "--output", metavar="PATH")
    sp.set_defaults(run=cmd_dual)
    sp = sub.add_parser("catalog", help="list, show or export the shipped catalog")
    _globals(sp, False)
    sp.add_argument("action", choices=["list", "show", "export"])
    sp.add_argument("ident", nargs="?", metavar="ID|DIR")
    sp.add_argument("--include-fixtures", action="store_true", help="export: also write auxiliary fixtures")
    sp.set_defaults(run=cmd_catalog)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing command (validate, invariants, decompose, dual, catalog, classify)")
        if args.oracle_budget is not None and args.oracle_budget < 0:
            raise UsageError("--oracle-budget must be non-negative")
        results = args.run(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - contract: internal failures map to exit 3
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    code = EXIT_OK
    for status, rep in results:
        code = max(code, status)
        if args.machine:
            print(json.dumps(rep, ensure_ascii=False, sort_keys=False))
        elif rep["status"] == "error":
            print(render_text(rep), file=sys.stderr)
        elif rep["command"] == "dual" and not args.output:
            print(render_text(rep), file=sys.stderr)
            print(json.dumps(rep["details"]["algebra"], indent=2, ensure_ascii=False))
        else:
            print(render_text(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
