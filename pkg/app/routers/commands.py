import argparse
import json
import logging
import sys
from typing import Optional

from app import config
from app.agents.fact_verifier import FactVerifierAgent
from app.exceptions import FactMismatchError, UsageError
from app.models import Report
from app.services import reports
from app.services.algebra import Algebra, build_algebra
from app.services.approximation import mho_quiver
from app.services.classification import torsionless_census
from app.services.duality import a_dual, phi
from app.services.facts import FactStore
from app.services.parser import format_presentation, load_presentation, resolve_module
from app.services.representation import simple
from app.services.self_injectivity import self_injectivity_report, simple_dual_report

logger = logging.getLogger(__name__)


def _load_algebra(source: str) -> Algebra:
    presentation = load_presentation(source)
    a = build_algebra(presentation)
    logger.info(f"Built {a.name}: dim {a.dim} over {a.field}")
    return a


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def info_command(args) -> int:
    """Dimensions, basis and socle"""
    a = _load_algebra(args.file)
    _emit(Report(algebra=reports.algebra_section(a), socle=reports.socle_section(a)).to_json())
    return 0


def canonical_command(args) -> int:
    """Canonical presentation text"""
    _emit(format_presentation(load_presentation(args.file)))
    return 0


def simples_command(args) -> int:
    """Duals of the simple modules and their torsionless/reflexive flags"""
    a = _load_algebra(args.file)
    report = simple_dual_report(a)
    sections = reports.simple_sections(report)
    if args.check:
        sections = [s for s in sections if getattr(s, args.check)]
        logger.info(f"{len(sections)} of {len(report.simples)} simples are {args.check}")
    _emit(Report(simples=sections).to_json())
    return 0


def dual_command(args) -> int:
    """The A-dual of one module, with the cokernel of its evaluation map"""
    a = _load_algebra(args.file)
    m = resolve_module(args.module, a)
    dual = a_dual(m)
    data = phi(m)
    logger.info(
        f"{m.name}: dual dims {dual.dims}, evaluation map injective={data.injective}, bijective={data.bijective}"
    )
    _emit(Report(module=reports.module_section(m), dual=reports.module_section(dual, f"{m.name}*")).to_json())
    return 0


def mho_quiver_command(args) -> int:
    """Iterate mho from the seeds and print the quiver as JSON or DOT"""
    a = _load_algebra(args.file)
    if args.seeds == "simples":
        seeds = [simple(a, v) for v in a.vertices]
    else:
        seeds = [resolve_module(d, a) for d in args.seeds.split(",") if d.strip()]
    if not seeds:
        raise UsageError("--seeds needs `simples` or a comma-separated list of module descriptors")
    quiver = mho_quiver(seeds, args.max_steps)
    if args.format == "dot":
        _emit(quiver.to_dot(a.name))
    else:
        _emit(Report(mho_quiver=reports.mho_quiver_section(quiver)).to_json())
    return 0


def self_injective_command(args) -> int:
    """All socle characterizations of self-injectivity"""
    a = _load_algebra(args.file)
    report = self_injectivity_report(a)
    _emit(Report(self_injective=reports.self_injective_section(a, report)).to_json())
    return 0


def census_command(args) -> int:
    """Indecomposable torsionless modules"""
    a = _load_algebra(args.file)
    census = torsionless_census(a, budget=args.budget)
    _emit(Report(census=reports.census_section(census)).to_json())
    return 0


def verify_paper_command(args) -> int:
    """Replay the fact ledger; exit 5 on any mismatch"""
    ledger = FactStore(args.facts).load()
    agent = FactVerifierAgent(include_slow=not args.skip_slow, algebras=args.algebra or None)
    results = agent.verify(ledger)
    failed = sum(not r["success"] for r in results)
    _emit(json.dumps({"schema_version": config.SCHEMA_VERSION, "checked": len(results), "failed": failed}, indent=2))
    if failed:
        raise FactMismatchError(f"{failed} of {len(results)} facts failed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="workbench",
        description="Exact computations with modules over quiver algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    file_help = "presentation file, shipped presentation name or corpus slug"

    p = sub.add_parser("info", help=info_command.__doc__)
    p.add_argument("file", help=file_help)
    p.set_defaults(handler=info_command)

    p = sub.add_parser("canonical", help=canonical_command.__doc__)
    p.add_argument("file", help=file_help)
    p.set_defaults(handler=canonical_command)

    p = sub.add_parser("simples", help=simples_command.__doc__)
    p.add_argument("file", help=file_help)
    p.add_argument("--check", choices=["torsionless", "reflexive"])
    p.set_defaults(handler=simples_command)

    p = sub.add_parser("dual", help=dual_command.__doc__)
    p.add_argument("file", help=file_help)
    p.add_argument("--module", required=True, help="S1, P2, P1/<c>, rad(P2), mho(S1), dual(S1) or a .mod file")
    p.set_defaults(handler=dual_command)

    p = sub.add_parser("mho-quiver", help=mho_quiver_command.__doc__)
    p.add_argument("file", help=file_help)
    p.add_argument("--seeds", default="simples")
    p.add_argument("--max-steps", type=int, default=config.MHO_MAX_STEPS)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(handler=mho_quiver_command)

    p = sub.add_parser("self-injective", help=self_injective_command.__doc__)
    p.add_argument("file", help=file_help)
    p.set_defaults(handler=self_injective_command)

    p = sub.add_parser("census", help=census_command.__doc__)
    p.add_argument("file", help=file_help)
    p.add_argument("--budget", type=int, default=config.ENUMERATION_BUDGET)
    p.set_defaults(handler=census_command)

    p = sub.add_parser("verify-paper", help=verify_paper_command.__doc__)
    p.add_argument("--facts", default=None, help="fact ledger (default: the shipped one)")
    p.add_argument("--skip-slow", action="store_true")
    p.add_argument("--algebra", action="append", help="restrict to a corpus slug; repeatable")
    p.set_defaults(handler=verify_paper_command)
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage; usage errors are 1 here
        return 0 if e.code == 0 else 1
    if getattr(args, "max_steps", 0) < 0:
        raise UsageError("--max-steps must be non-negative")
    if getattr(args, "budget", 1) < 1:
        raise UsageError("--budget must be positive")
    return args.handler(args)
