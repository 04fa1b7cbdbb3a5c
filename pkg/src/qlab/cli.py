"""Command-line front end.

Exit codes: 0 all checks pass, 1 any FAIL, 2 no FAIL but at least one SKIP,
3 input error. JSON reports are canonical and byte-stable for a fixed seed
and instance; wall-clock timing goes to stderr only, in human mode.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import config, interchange
from .errors import InputError, PreconditionError, QlabError, ResourceLimitError, TheoremViolation
from .interchange import Instance, Report
from .projections import (inverse_quantal_frame_check, localic_equivalence_report,
                          frame_injectivity_report, ideal_join_map, pseudogroup_of)
from .quantale import (check_axioms, classify, is_quantal_frame, projections,
                       stably_gelfand_witness)
from .qmaps import (comparison_map, direct_image, frobenius_check, is_surjection,
                    make_map, split_surjection_check)
from .search import CONSTRAINT_NAMES, search

THEOREMS = ("ibq", "littlelemma", "invqfr", "iqfs", "comparison", "split")


class _Parser(argparse.ArgumentParser):
    # usage errors must exit 3 (input error), not argparse's default 2
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qlab",
                description="finite involutive quantale laboratory")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--rel", type=int, metavar="N",
                        help="use the binary-relation quantale on an N-set")
        sp.add_argument("--file", metavar="PATH", help="instance file to load")
        sp.add_argument("--max-carrier", type=int, metavar="N",
                        help="override the exhaustiveness bound")
        sp.add_argument("--seed", type=int, default=0, metavar="N")
        sp.add_argument("--jobs", type=int, default=1, metavar="N")
        sp.add_argument("--json", action="store_true", help="canonical JSON report")

    sp = sub.add_parser("check", help="axiom and class checks")
    common(sp)
    sp.add_argument("which", nargs="?", default="all",
                    choices=("axioms", "class", "all"))

    sp = sub.add_parser("projections", help="list projections with dossier summaries")
    common(sp)

    sp = sub.add_parser("verify", help="machine-check one theorem on the instance")
    common(sp)
    sp.add_argument("theorem", choices=THEOREMS)

    sp = sub.add_parser("search", help="hunt for quantales matching class constraints")
    common(sp)
    sp.add_argument("--require", action="append", default=[], metavar="CLASS",
                    help=f"one of {', '.join(CONSTRAINT_NAMES)} (repeatable)")
    sp.add_argument("--forbid", action="append", default=[], metavar="CLASS")
    sp.add_argument("--max-size", type=int, default=3, metavar="N")
    sp.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    sp.add_argument("--hits", type=int, default=1, metavar="N")
    return p


def _limits(args) -> config.Limits:
    lim = config.get(None)
    if args.max_carrier is not None:
        lim = lim.with_max_exhaustive(args.max_carrier)
    if args.jobs and args.jobs > 1:
        lim = lim.with_jobs(args.jobs)
    return lim


def _instance(args) -> Instance:
    if args.rel is not None and args.file is not None:
        raise InputError("give either --rel or --file, not both")
    if args.rel is not None:
        if args.rel < 0:
            raise InputError("--rel needs a nonnegative size")
        return interchange.rel_instance(args.rel)
    if args.file is not None:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                return interchange.load_instance(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc}")
    raise InputError("no instance: give --rel N or --file PATH")


def _config_echo(args, lim: config.Limits) -> dict:
    return {
        "max_carrier": lim.max_exhaustive,
        "seed": args.seed,
        "jobs": lim.jobs,
    }


def _require_quantale(inst: Instance):
    if inst.quantale is None:
        raise InputError("instance has no quantale block")
    return inst.quantale


def cmd_check(args, inst: Instance, lim, report: Report):
    q = _require_quantale(inst)
    if args.which in ("axioms", "all"):
        ax = check_axioms(q, lim)
        if ax.ok:
            report.add("axioms", "PASS", data={"strategy": ax.strategy})
        else:
            for law, w in ax.failures:
                report.add(f"axioms.{law}", "FAIL",
                           witness=[inst.label(x) for x in w])
    if args.which in ("class", "all"):
        rep = classify(q, lim)
        for flag, value in rep.flags().items():
            w = rep.witnesses.get(flag)
            reason = rep.notes.get(flag)
            report.add(f"class.{flag}", "PASS" if value else "FAIL",
                       witness=None if w is None else [inst.label(x) for x in w],
                       reason=reason,
                       data={"value": value})


def cmd_projections(args, inst: Instance, lim, report: Report):
    q = _require_quantale(inst)
    pr = projections(q, lim)
    report.add("projections.count", "PASS", data={"count": len(pr)})
    stably = stably_gelfand_witness(q, lim) is None
    for b in pr:
        name = f"projection[{inst.label(b)}]"
        if not stably:
            report.add(name, "SKIP", reason="stably_gelfand")
            continue
        try:
            dossier = pseudogroup_of(q, b, lim)
        except TheoremViolation as exc:
            report.add(name, "FAIL", reason=exc.law)
            continue
        data = {
            "units": len(dossier.units),
            "idempotents": len(dossier.two_sided_below_b),
            "spatial": True,
        }
        try:
            eq = localic_equivalence_report(q, b, dossier, lim)
            data["ideals"] = dossier.completion.n
            data["localic"] = eq.localic
            verdict = "PASS" if eq.consistent else "FAIL"
        except ResourceLimitError:
            data["localic"] = "not computed (resource bound)"
            verdict = "PASS"
        report.add(name, verdict, data=data)


def cmd_verify(args, inst: Instance, lim, report: Report):
    theorem = args.theorem
    if theorem in ("comparison", "split"):
        return _verify_map_theorem(args, inst, lim, report)
    q = _require_quantale(inst)
    stably = stably_gelfand_witness(q, lim) is None

    if theorem == "iqfs":
        res = inverse_quantal_frame_check(q, lim)
        if res.verdict == "SKIP":
            report.add("iqfs", "SKIP", reason=res.failed_hypothesis)
        elif res.verdict == "PASS":
            report.add("iqfs", "PASS",
                       data={"ideals": len(res.forward),
                             "iso": "completion of partial units ~ quantale"})
        else:
            report.add("iqfs", "FAIL", witness=[str(res.witness)])
        return

    if not stably:
        report.add(theorem, "SKIP", reason="stably_gelfand")
        return
    if theorem == "invqfr" and not is_quantal_frame(q):
        report.add(theorem, "SKIP", reason="quantal_frame")
        return

    for b in projections(q, lim):
        name = f"{theorem}[{inst.label(b)}]"
        try:
            if theorem == "ibq":
                pseudogroup_of(q, b, lim)
                report.add(name, "PASS")
            elif theorem == "littlelemma":
                eq = localic_equivalence_report(q, b, limits=lim)
                report.add(name, "PASS" if eq.consistent else "FAIL",
                           data={"localic": eq.localic, "injective": eq.injective,
                                 "surjection_dual": eq.surjective})
            elif theorem == "invqfr":
                res = frame_injectivity_report(q, b, limits=lim)
                report.add(name, res.verdict, reason=res.skip_reason,
                           witness=None if res.witness is None else [str(res.witness)])
        except ResourceLimitError as exc:
            report.add(name, "SKIP", reason=f"resource: {exc}")
        except TheoremViolation as exc:
            report.add(name, "FAIL", reason=exc.law,
                       witness=None if exc.witness is None else [str(exc.witness)])


def _canonical_map(inst: Instance, lim):
    """The map attached to the instance, or the canonical identification of a
    relation quantale with the open sets of the pair groupoid."""
    from .groupoid import opens_quantale, pair_groupoid
    from .quantale import RelationQuantale

    if inst.map_block is not None:
        src = inst.quantales[inst.map_block["source"]][0]
        tgt = inst.quantales[inst.map_block["target"]][0]
        return make_map(src, tgt, inst.map_block["star"])
    q = inst.quantale
    if isinstance(q, RelationQuantale):
        oq = opens_quantale(pair_groupoid(q.nset), lim)
        return make_map(q, oq, range(oq.n), unital=True)
    return None


def _verify_map_theorem(args, inst: Instance, lim, report: Report):
    theorem = args.theorem
    try:
        qm = _canonical_map(inst, lim)
    except PreconditionError as exc:
        report.add(theorem, "SKIP", reason=str(exc))
        return
    if qm is None:
        report.add(theorem, "SKIP", reason="no map block and no canonical map")
        return
    try:
        if theorem == "comparison":
            res = comparison_map(qm, lim)
            report.add("comparison", "PASS",
                       data={"b": inst.label(res.b) if qm.source is inst.quantale else res.b,
                             "q_surjection": res.q_surjection,
                             "k_surjection": res.k_surjection})
        else:
            if not is_surjection(qm):
                report.add("split", "SKIP", reason="surjection")
                return
            pm = direct_image(qm)
            if pm is None:
                report.add("split", "SKIP", reason="semiopen")
                return
            ok, w = frobenius_check(pm)
            if not ok:
                report.add("split", "SKIP", reason=f"frobenius at {w}")
                return
            split_surjection_check(qm, lim)
            report.add("split", "PASS")
    except ResourceLimitError as exc:
        report.add(theorem, "SKIP", reason=f"resource: {exc}")
    except PreconditionError as exc:
        report.add(theorem, "SKIP", reason=str(exc))
    except TheoremViolation as exc:
        report.add(theorem, "FAIL", reason=exc.law,
                   witness=None if exc.witness is None else [str(exc.witness)])


def cmd_search(args, lim, report: Report):
    res = search(args.require, args.forbid, args.max_size, seed=args.seed,
                 mode=args.mode, max_hits=args.hits, limits=lim)
    if res.vacuous:
        report.add("search", "SKIP", reason="vacuous constraints")
        return
    data = {"tried": res.tried, "hits": len(res.hits),
            "exhausted": res.exhausted, "mode": res.mode}
    report.add("search", "PASS", data=data)
    for i, hit in enumerate(res.hits):
        report.add(f"hit[{i}]", "PASS", data={
            "size": hit.size,
            "mult": [list(r) for r in hit.mult],
            "inv": list(hit.inv),
            "order_upsets": list(hit.up),
            "unit": hit.unit,
            "flags": hit.flags,
        })


def main(argv=None) -> int:
    t0 = time.monotonic()
    try:
        args = build_parser().parse_args(argv)
        lim = _limits(args)
        if args.command == "search":
            report = Report(command="search", instance="(generated)",
                            config=_config_echo(args, lim))
            cmd_search(args, lim, report)
        else:
            inst = _instance(args)
            report = Report(command=args.command, instance=inst.name,
                            config=_config_echo(args, lim))
            if args.command == "check":
                cmd_check(args, inst, lim, report)
            elif args.command == "projections":
                cmd_projections(args, inst, lim, report)
            elif args.command == "verify":
                cmd_verify(args, inst, lim, report)
    except (InputError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except QlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.render_text())
        print(f"elapsed: {time.monotonic() - t0:.3f}s", file=sys.stderr)
    return report.exit_code()


if __name__ == "__main__":
    raise SystemExit(main())
