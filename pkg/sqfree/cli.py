import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import agate

from sqfree import core, duality, homalg, linquo, oracles, trees
from sqfree.__version__ import version
from sqfree.config import ToolkitConfig
from sqfree.contracts import (
    CoverListCertificate,
    ForestWitnessCertificate,
    HomologyRow,
    HomologyTable,
    QuotientOrderCertificate,
    Report,
    ShellingCertificate,
    names,
)
from sqfree.core import MonomialIdeal, SimplicialComplex, SquareFreeMonomial, VariableSet
from sqfree.events import ToolkitLogger, setup_event_logger
from sqfree.exceptions import (
    InternalException,
    OracleMismatchException,
    PreconditionException,
    SearchBudgetException,
    ValidationException,
    raise_internal_error,
    raise_parsing_error,
    raise_validation_error,
)

logger = ToolkitLogger("CLI")

Parsed = Union[MonomialIdeal, SimplicialComplex]


class ExitCodes(int, Enum):
    Success = 0
    InternalError = 1
    InputError = 2
    PreconditionViolation = 3


@dataclass
class Outcome:
    report: Report
    config: ToolkitConfig
    tables: Dict[str, agate.Table] = field(default_factory=dict)


def _text(ambient: VariableSet, monomials: Sequence[SquareFreeMonomial]) -> List[str]:
    return [ambient.format_monomial(monomial) for monomial in monomials]


def _as_complex(obj: Parsed) -> SimplicialComplex:
    if isinstance(obj, MonomialIdeal):
        return core.facet_complex(obj)
    return obj


def _as_ideal(obj: Parsed) -> MonomialIdeal:
    if isinstance(obj, SimplicialComplex):
        return core.facet_ideal(obj)
    return obj


def _check_oracle(what: str, fast, oracle, ambient: VariableSet):
    if tuple(fast) != tuple(oracle):
        raise OracleMismatchException(what, _text(ambient, fast), _text(ambient, oracle))
    logger.debug("{}: oracle agrees", what)


def _table(rows: List[list], column_names: List[str]) -> agate.Table:
    return agate.Table(rows, column_names, [agate.Text(cast_nulls=False)] * len(column_names))


def cmd_covers(obj: Parsed, config: ToolkitConfig, args) -> Outcome:
    complex = _as_complex(obj)
    ambient = complex.ambient
    cover = duality.cover_complex(complex)
    report = Report("covers", core.format(complex))
    report.results["covers"] = _text(ambient, cover.facets)
    report.results["covering_number"] = cover.covering_number
    report.verdicts["unmixed"] = cover.is_pure
    if config.oracle:
        _check_oracle(
            "minimal covers", cover.facets, oracles.brute_force_minimal_covers(complex), ambient
        )
        report.verdicts["oracle"] = True
    report.add_certificate(
        CoverListCertificate(vars=list(ambient.names), covers=names(ambient, cover.facets))
    )
    rows = [[text, str(facet.degree)] for text, facet in zip(_text(ambient, cover.facets),
                                                           cover.facets)]
    return Outcome(report, config, {"minimal covers": _table(rows, ["cover", "size"])})


def cmd_dual(obj: Parsed, config: ToolkitConfig, args) -> Outcome:
    ideal = _as_ideal(obj)
    ambient = ideal.ambient
    dual = duality.dual_ideal(ideal)
    if duality.dual_ideal(dual) != ideal:
        raise_internal_error("the dual of the dual ideal is not the input")
    view = duality.nonface_complex(ideal)
    alexander = duality.alexander_dual(view)

    if ideal.is_unit:
        cover_facets = dual.generators
    else:
        cover_facets = duality.cover_complex(core.facet_complex(ideal)).facets
        if cover_facets != dual.generators:
            raise_internal_error("cover complex and dual ideal disagree")
    complemented = duality.complement_complex(SimplicialComplex(ambient, cover_facets)).facets
    if complemented != view.facets:
        raise_internal_error("Δ_N facets differ from the complements of Δ_M")

    report = Report("dual", core.format(ideal))
    report.results.update({
        "dual_ideal": core.format(dual),
        "cover_complex": _text(ambient, cover_facets),
        "nonface_facets": _text(ambient, view.facets),
        "alexander_dual_facets": _text(ambient, alexander.facets),
    })
    report.verdicts["involution"] = True
    if config.oracle:
        _check_oracle(
            "Δ_N facets",
            view.facets,
            oracles.brute_force_facets(oracles.brute_force_nonface_faces(ideal)),
            ambient,
        )
        _check_oracle(
            "Alexander dual facets",
            alexander.facets,
            oracles.brute_force_facets(oracles.brute_force_alexander_dual_faces(ideal)),
            ambient,
        )
        report.verdicts["oracle"] = True

    rows = [
        ["I", core.format(ideal)],
        ["I^∨", core.format(dual)],
        ["Δ_M", ", ".join(report.results["cover_complex"])],
        ["Δ_N", ", ".join(report.results["nonface_facets"])],
        ["Alexander dual of Δ_N", ", ".join(report.results["alexander_dual_facets"])],
    ]
    return Outcome(report, config, {"duality": _table(rows, ["object", "value"])})


def cmd_tree(obj: Parsed, config: ToolkitConfig, args) -> Outcome:
    complex = _as_complex(obj)
    ambient = complex.ambient
    verdict = trees.is_forest(complex, config.max_facets)
    connected = None if complex.is_void else core.is_connected(complex)
    report = Report("tree", core.format(complex))
    report.verdicts["forest"] = verdict.is_forest
    report.verdicts["tree"] = bool(verdict.is_forest and connected)
    report.verdicts["connected"] = connected

    rows = []
    leaf_rows = []
    for row in trees.leaf_table(complex):
        witness = None if row.witness is None else ambient.format_monomial(row.witness)
        leaf_rows.append({
            "facet": ambient.format_monomial(row.facet),
            "leaf": row.is_leaf,
            "witness": witness,
            "free_vertices": ambient.names_of(row.free_vertices),
        })
        rows.append([
            ambient.format_monomial(row.facet),
            "yes" if row.is_leaf else "no",
            witness or "",
            ",".join(ambient.names_of(row.free_vertices)),
        ])
    report.results["leaf_table"] = leaf_rows
    if config.oracle:
        oracle = oracles.brute_force_is_forest(complex)
        if oracle != verdict.is_forest:
            raise OracleMismatchException("forest verdict", verdict.is_forest, oracle)
        report.verdicts["oracle"] = True

    report.add_certificate(
        ForestWitnessCertificate(
            vars=list(ambient.names),
            is_forest=verdict.is_forest,
            witness_kind="leaf_order" if verdict.is_forest else "leafless",
            facets=names(ambient, verdict.witness),
        )
    )
    table = _table(rows, ["facet", "leaf", "witness", "free vertices"])
    return Outcome(report, config, {"leaves": table})


def _obstruction_row(
    ambient: VariableSet, i: int, ideal: MonomialIdeal, obstruction
) -> HomologyRow:
    row = HomologyRow(skeleton=i, ideal=core.format(ideal), cohen_macaulay=obstruction is None)
    if obstruction is not None:
        row.obstruction_face = ambient.names_of(obstruction.face)
        row.obstruction_degree = obstruction.degree
        row.link_homology = list(obstruction.profile.betti)
    return row


def cmd_cm(obj: Parsed, config: ToolkitConfig, args) -> Outcome:
    ideal = _as_ideal(obj)
    ambient = ideal.ambient
    field_spec = config.field_spec
    obstruction = homalg.reisner_obstruction(ideal, field_spec)
    report = Report("cm", core.format(ideal), field=field_spec.spec)
    report.verdicts["cohen_macaulay"] = obstruction is None
    report.results["krull_dimension"] = homalg.krull_dimension(ideal)
    report.results["nonface_facets"] = _text(ambient, duality.nonface_complex(ideal).facets)
    row = _obstruction_row(ambient, duality.nonface_complex(ideal).dimension, ideal, obstruction)
    report.results["obstruction"] = None if obstruction is None else row.to_dict()
    if config.oracle:
        report.verdicts["eagon_reiner"] = homalg.eagon_reiner_check(ideal, field_spec)

    if obstruction is None:
        try:
            shelling = linquo.shelling_from_quotients(ideal, config.search_budget)
        except PreconditionException as exc:
            logger.info("no shelling certified: {}", exc.msg)
            report.verdicts["shelling_certified"] = False
        else:
            report.verdicts["shelling_certified"] = True
            report.add_certificate(
                ShellingCertificate(
                    vars=list(ambient.names), shelling=names(ambient, shelling.facets)
                )
            )
    return Outcome(report, config)


def cmd_scm(obj: Parsed, config: ToolkitConfig, args) -> Outcome:
    ideal = _as_ideal(obj)
    ambient = ideal.ambient
    field_spec = config.field_spec
    scm = homalg.sequential_cm_report(ideal, field_spec)
    report = Report("scm", core.format(ideal), field=field_spec.spec)
    report.verdicts["sequentially_cm"] = scm.is_sequentially_cm
    report.verdicts["cohen_macaulay"] = homalg.is_cohen_macaulay(ideal, field_spec)

    rows = [_obstruction_row(ambient, row.i, row.ideal, row.obstruction) for row in scm.rows]
    report.results["skeleta"] = [
        {"i": row.i, "ideal": core.format(row.ideal), "cohen_macaulay": row.cohen_macaulay}
        for row in scm.rows
    ]
    report.add_certificate(HomologyTable(field=field_spec.spec, rows=rows))
    if config.oracle:
        dual_linear = homalg.is_componentwise_linear(duality.dual_ideal(ideal), field_spec)
        if dual_linear != scm.is_sequentially_cm:
            raise OracleMismatchException(
                "sequential Cohen-Macaulayness vs componentwise linear dual",
                scm.is_sequentially_cm, dual_linear,
            )
        report.verdicts["oracle"] = True

    table = _table(
        [[str(row.i), core.format(row.ideal), "yes" if row.cohen_macaulay else "no"]
         for row in scm.rows],
        ["i", "pure skeleton ideal", "CM"],
    )
    return Outcome(report, config, {"pure skeleta": table})


def cmd_linquo(obj: Parsed, config: ToolkitConfig, args) -> Outcome:
    ideal = _as_ideal(obj)
    ambient = ideal.ambient
    field_spec = config.field_spec
    degrees = None
    if getattr(args, "component", None) is not None:
        if not 0 <= args.component <= ambient.n:
            raise_validation_error(
                "--component {} outside 0..{}".format(args.component, ambient.n)
            )
        degrees = [args.component]
    report = Report("linquo", core.format(ideal), field=field_spec.spec)

    try:
        whole = linquo.find_linear_quotient_order(ideal, config.search_budget)
    except SearchBudgetException as exc:
        logger.info("{}", exc.msg)
        whole = None
        report.verdicts["linear_quotients"] = None
    else:
        report.verdicts["linear_quotients"] = whole is not None
    if whole is not None:
        report.add_certificate(_quotient_certificate(ambient, whole, None))

    components = linquo.componentwise_linear_via_quotients(
        ideal, field_spec, config.search_budget, degrees, config.max_facets
    )
    report.verdicts["certified"] = components.certified
    report.verdicts["componentwise_linear"] = components.componentwise_linear
    rows = []
    listed = []
    for verdict in components.components:
        certified = verdict.certificate is not None
        if certified:
            if config.oracle and not linquo.replay_quotient_order(
                verdict.ideal, verdict.certificate
            ):
                raise OracleMismatchException("quotient order replay", True, False)
            report.add_certificate(
                _quotient_certificate(ambient, verdict.certificate, verdict.k),
                ".k{}".format(verdict.k),
            )
        listed.append({
            "k": verdict.k,
            "generators": len(verdict.ideal.generators),
            "certified": certified,
            "strategy": verdict.strategy,
            "linear_resolution": verdict.linear_resolution,
        })
        rows.append([
            str(verdict.k),
            str(len(verdict.ideal.generators)),
            "yes" if certified else "no",
            verdict.strategy,
            "" if verdict.linear_resolution is None else str(verdict.linear_resolution),
        ])
    report.results["components"] = listed
    table = _table(rows, ["k", "generators", "certified", "strategy", "linear resolution"])
    return Outcome(report, config, {"components": table})


def _quotient_certificate(
    ambient: VariableSet, certificate: linquo.QuotientOrder, k: Optional[int]
) -> QuotientOrderCertificate:
    return QuotientOrderCertificate(
        vars=list(ambient.names),
        order=names(ambient, certificate.order),
        colon_vars=names(ambient, certificate.colon_variables),
        component=k,
    )


def cmd_betti(obj: Parsed, config: ToolkitConfig, args) -> Outcome:
    ideal = _as_ideal(obj)
    field_spec = config.field_spec
    table = homalg.betti_table(ideal, field_spec)
    report = Report("betti", core.format(ideal), field=field_spec.spec)
    report.results["betti"] = table.to_json()
    report.results["projective_dimension"] = table.projective_dimension
    report.results["regularity"] = table.regularity
    if ideal.is_zero:
        linear = True
    elif ideal.is_equigenerated:
        linear = table.is_linear(ideal.degrees[0])
    else:
        linear = False
    report.verdicts["linear_resolution"] = linear
    if config.oracle:
        taylor = oracles.taylor_betti_table(ideal, field_spec)
        if taylor.entries != table.entries:
            raise OracleMismatchException("Betti table", table.to_json(), taylor.to_json())
        report.verdicts["oracle"] = True
    return Outcome(report, config, {"betti table": table.to_agate()})


COMMANDS: Dict[str, Callable[[Parsed, ToolkitConfig, argparse.Namespace], Outcome]] = {
    "covers": cmd_covers,
    "dual": cmd_dual,
    "tree": cmd_tree,
    "cm": cmd_cm,
    "scm": cmd_scm,
    "linquo": cmd_linquo,
    "betti": cmd_betti,
}

HELP = {
    "covers": "minimal vertex covers, covering number and unmixedness",
    "dual": "dual ideal, cover complex, nonface complex and Alexander dual",
    "tree": "leaf table and forest verdict with a witness",
    "cm": "Cohen-Macaulay verdict by Reisner's criterion",
    "scm": "sequential Cohen-Macaulay verdict from the pure skeleta",
    "linquo": "linear quotient certificates per square-free component",
    "betti": "graded Betti table of the quotient ring",
}


def parse_args(args: Sequence[str]) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "input", nargs="?", default="-",
        help="file with an ideal like '(xyz, zu) over x,y,z,u', a complex '<...>' "
             "or JSON; '-' reads stdin",
    )
    common.add_argument("--field", help="q (default) or fp:<prime>")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument(
        "--oracle", action="store_true", help="cross-check against brute-force oracles"
    )
    common.add_argument(
        "--max-facets", dest="max_facets", type=int,
        help="largest complex the exhaustive forest check accepts (default 15)",
    )
    common.add_argument("--cert-dir", dest="cert_dir", help="write certificates here")
    common.add_argument(
        "--search-budget", dest="search_budget", type=int,
        help="node budget of the linear quotient search",
    )
    common.add_argument("--debug", action="store_true", help="log debug output to stderr")

    parser = argparse.ArgumentParser(
        prog="sqfree",
        description="Exact toolkit for square-free monomial ideals and their complexes.",
    )
    parser.add_argument("--version", action="version", version="sqfree {}".format(version))
    subs = parser.add_subparsers(dest="command")
    subs.required = True
    for name in COMMANDS:
        sub = subs.add_parser(name, parents=[common], help=HELP[name])
        if name == "linquo":
            sub.add_argument(
                "--component", type=int, help="only the square-free component of this degree"
            )
    return parser.parse_args(args)


def read_input(path: str) -> str:
    source = "stdin" if path == "-" else path
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except UnicodeDecodeError as exc:
        raise_parsing_error("{} is not valid UTF-8: {}".format(source, exc.reason))
    except OSError as exc:
        raise_validation_error("cannot read {}: {}".format(source, exc.strerror))


def write_certificates(report: Report, cert_dir: str) -> List[str]:
    os.makedirs(cert_dir, exist_ok=True)
    written = []
    for kind, payload in sorted(report.certificates.items()):
        path = os.path.join(cert_dir, "{}.{}.json".format(report.command, kind))
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True)
            handle.write("\n")
        written.append(path)
        logger.debug("wrote {}", path)
    return written


def execute(args: Sequence[str]) -> Tuple[Optional[Outcome], ExitCodes]:
    parsed = parse_args(args)
    try:
        config = ToolkitConfig.from_args(parsed)
    except ValidationException as exc:
        logger.error(str(exc))
        return None, ExitCodes.InputError

    with setup_event_logger(config.debug).applicationbound():
        started = time.perf_counter()
        try:
            obj = core.parse(read_input(parsed.input))
            outcome = COMMANDS[parsed.command](obj, config, parsed)
            outcome.report.elapsed = round(time.perf_counter() - started, 6)
            if config.cert_dir:
                write_certificates(outcome.report, config.cert_dir)
        except ValidationException as exc:
            logger.error(str(exc))
            return None, ExitCodes.InputError
        except PreconditionException as exc:
            logger.error(str(exc))
            return None, ExitCodes.PreconditionViolation
        except InternalException as exc:
            logger.error("Internal error: {}", exc)
            return None, ExitCodes.InternalError
        except Exception as exc:
            logger.exception("Unhandled error: {}", exc)
            return None, ExitCodes.InternalError
    logger.debug("{} finished in {:.3f}s", parsed.command, outcome.report.elapsed)
    return outcome, ExitCodes.Success


def handle_and_check(args: Sequence[str]) -> Tuple[Optional[Report], bool]:
    outcome, code = execute(args)
    report = None if outcome is None else outcome.report
    return report, code == ExitCodes.Success


def render(outcome: Outcome, out=None):
    out = sys.stdout if out is None else out
    report = outcome.report
    if outcome.config.json:
        out.write(json.dumps(report.to_dict(), indent=2, sort_keys=True))
        out.write("\n")
        return
    out.write("{}: {}\n".format(report.command, report.input))
    if report.field is not None:
        out.write("field: {}\n".format(report.field))
    for name, value in report.verdicts.items():
        out.write("{}: {}\n".format(name, value))
    for name, value in report.results.items():
        if isinstance(value, (str, int)) or value is None:
            out.write("{}: {}\n".format(name, value))
    for title, table in outcome.tables.items():
        out.write("\n{}\n".format(title))
        table.print_table(output=out, max_column_width=80)


def main(args: Optional[Sequence[str]] = None):
    outcome, code = execute(sys.argv[1:] if args is None else args)
    if outcome is not None:
        render(outcome)
    sys.exit(code.value)


if __name__ == "__main__":
    main()
