"""
KappaLat - 명령줄 인터페이스
analyze / generate / verify / dot 서브커맨드
"""

import argparse
import logging
import re
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from . import __version__
from .algebra_generators import Interval, LatticeFamily, TorsLattice, generate_family
from .checks import CheckResult, CheckStatus, run_battery
from .config import KappaLatSettings, get_settings, use_settings
from .corpus import build_corpus
from .dot_export import brick_dot, hasse_dot, labelling_dot, render
from .exceptions import EXIT_CHECK_FAILED, EXIT_OK, InputError, KappaLatError, exit_code_for
from .lattice_core import LatticeDocument, parse_document, serialize_document
from .reporting import build_report, render_json, render_text

# 로깅 설정
logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
RELATION_PATTERN = re.compile(r"^\s*(\d+)\s*<\s*(\d+)\s*$")


def read_document(path: str) -> LatticeDocument:
    """경로 또는 '-'(stdin)에서 lattice-v1 문서를 읽음"""
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"cannot read {path}: {e.strerror or e}")
    return parse_document(text)


def write_output(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {output}")


def _tors_from(doc: LatticeDocument) -> Optional[TorsLattice]:
    return TorsLattice.from_document(doc) if "algebra" in doc.meta else None


def parse_relation(text: str) -> Tuple[int, int]:
    match = RELATION_PATTERN.match(text)
    if not match:
        raise InputError(f"expected relation 'a<b', got '{text}'")
    return int(match.group(1)), int(match.group(2))


# 서브커맨드

def cmd_analyze(path: str, fmt: str = "text", settings: Optional[KappaLatSettings] = None) -> int:
    doc = read_document(path)
    report = build_report(doc, source=path, settings=settings or get_settings())
    if fmt == "json":
        sys.stdout.write(render_json(report).decode("utf-8"))
    else:
        sys.stdout.write(render_text(report))
    return EXIT_OK


def cmd_generate(
    family: str,
    n: Optional[int] = None,
    forbid: Sequence[str] = (),
    relations: Sequence[str] = (),
    output: str = "-",
) -> int:
    doc = generate_family(
        family,
        n=n,
        forbid=[Interval.parse_range(text) for text in forbid],
        relations=[parse_relation(text) for text in relations],
    )
    write_output(serialize_document(doc), output)
    return EXIT_OK


def _print_results(results: List[CheckResult]) -> bool:
    for result in results:
        print(result.line())
    return not any(r.status is CheckStatus.FAIL for r in results)


def cmd_verify(
    path: Optional[str] = None,
    corpus: bool = False,
    max_vertices: int = 5,
    settings: Optional[KappaLatSettings] = None,
) -> int:
    settings = settings or get_settings()
    all_passed = True
    counts = {status: 0 for status in CheckStatus}

    if corpus:
        targets = [(entry.name, entry.lattice, entry.tors, None) for entry in build_corpus(max_vertices)]
    else:
        if path is None:
            raise InputError("verify needs a lattice file or --corpus")
        doc = read_document(path)
        targets = [(path, doc.lattice, _tors_from(doc), doc)]

    for name, lattice, tors, doc in targets:
        print(f"== {name}")
        results = run_battery(lattice, tors=tors, settings=settings, doc=doc)
        all_passed &= _print_results(results)
        for result in results:
            counts[result.status] += 1

    print(
        f"summary: {counts[CheckStatus.PASS]} passed, {counts[CheckStatus.FAIL]} failed, "
        f"{counts[CheckStatus.SKIPPED]} skipped"
    )
    return EXIT_OK if all_passed else EXIT_CHECK_FAILED


def cmd_dot(path: str, kind: str = "hasse", labels: bool = True, output: str = "-") -> int:
    doc = read_document(path)
    if kind == "hasse":
        graph = hasse_dot(doc.lattice, labels=labels)
    elif kind == "labelling":
        graph = labelling_dot(doc.lattice)
    else:
        tors = _tors_from(doc)
        if tors is None:
            raise InputError("brick graph needs '# meta algebra' and '# meta brick' lines")
        graph = brick_dot(tors)
    write_output(render(graph), output)
    return EXIT_OK


# 인자 파서

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kappalat",
        description="Finite lattice analysis: left modularity, kappa maps, extremality, labelling quivers",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--max-chains", type=int, help="cap on enumerated maximal chains")
    parser.add_argument("--max-sets", type=int, help="cap on enumerated successor-closed sets")
    parser.add_argument("--jobs", type=int, help="worker threads for per-element scans")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="stderr log level")
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze_p = subparsers.add_parser("analyze", help="Analyze a lattice-v1 file")
    analyze_p.add_argument("path", help="lattice file, or '-' for stdin")
    analyze_p.add_argument("--format", choices=["text", "json"], default="text")

    generate_p = subparsers.add_parser("generate", help="Generate a lattice from a named family")
    generate_p.add_argument("family", choices=[f.value for f in LatticeFamily])
    generate_p.add_argument("--n", type=int)
    generate_p.add_argument("--forbid", action="append", default=[], metavar="A..B")
    generate_p.add_argument("--relation", action="append", default=[], metavar="A<B")
    generate_p.add_argument("-o", "--output", default="-")

    verify_p = subparsers.add_parser("verify", help="Run the cross-check battery")
    verify_p.add_argument("path", nargs="?", help="lattice file, or '-' for stdin")
    verify_p.add_argument("--corpus", action="store_true", help="check the built-in instance corpus")
    verify_p.add_argument("--max-vertices", type=int, default=5)

    dot_p = subparsers.add_parser("dot", help="Export a DOT digraph")
    dot_p.add_argument("path")
    dot_p.add_argument("--kind", choices=["hasse", "labelling", "brick"], default="hasse")
    dot_p.add_argument("--labels", action=argparse.BooleanOptionalAction, default=True)
    dot_p.add_argument("-o", "--output", default="-")
    return parser


def _settings_from(args: argparse.Namespace) -> KappaLatSettings:
    overrides = {
        "max_chains": args.max_chains,
        "max_sets": args.max_sets,
        "jobs": args.jobs,
        "log_level": args.log_level,
    }
    values = {**get_settings().model_dump(), **{k: v for k, v in overrides.items() if v is not None}}
    try:
        return KappaLatSettings.model_validate(values)
    except ValidationError as e:
        fields = ", ".join(str(err["loc"][0]) for err in e.errors())
        raise InputError(f"invalid option value for {fields}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        settings = _settings_from(args)
        logging.basicConfig(stream=sys.stderr, level=settings.log_level, format=LOG_FORMAT)
        use_settings(settings)
        if args.command == "analyze":
            return cmd_analyze(args.path, args.format, settings)
        if args.command == "generate":
            return cmd_generate(args.family, args.n, args.forbid, args.relation, args.output)
        if args.command == "verify":
            return cmd_verify(args.path, args.corpus, args.max_vertices, settings)
        return cmd_dot(args.path, args.kind, args.labels, args.output)
    except KappaLatError as e:
        print(f"error: {e}", file=sys.stderr)
        logger.debug(f"{args.command} failed", exc_info=True)
        return exit_code_for(e)
    finally:
        use_settings(None)
