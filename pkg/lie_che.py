import argparse
import logging
import os
import sys
from fractions import Fraction

import numpy as np
from tqdm import tqdm

from src.adjointsys.adjoint import adjointMatrices, comparePrinted
from src.adjointsys.errors import AdjointError, ToleranceFailure
from src.adjointsys.optimal import (
    CLASSES,
    Normalizer,
    classHistogram,
    randomElements,
    sweep,
)
from src.data_loading.che_builtin import (
    SOLUTIONS,
    cheAlgebra,
    cheGenerators,
    chePde,
    printedDeterminingEquations,
)
from src.data_loading.data_loader import SampleBoxLoader
from src.helper_functions.reporting import (
    FAIL,
    PASS,
    SKIPPED,
    anyFailed,
    checkEntry,
    dumpReport,
    renderColumns,
    renderTable,
)
from src.jetprolong.determining import determiningSystem, impliedBy, satisfiesSystem
from src.jetprolong.errors import JetError
from src.jetprolong.jet import invarianceResidual
from src.liestruct.algebra import derivedSeries, isSemisimple, isSolvable, killingMatrix
from src.liestruct.errors import LieStructureError
from src.liestruct.levi import cheRadicalAndLevi, verifyLevi
from src.numverify.closed_forms import CLOSED_FORM_TOL, closedFormReport
from src.numverify.errors import DomainError, NumericError, SingularityApproachError
from src.numverify.evaluate import onShellResidual
from src.numverify.flows import cartesianOracle, checkGroupLaw, integrateBatch, stateDistance
from src.numverify.invariants import (
    besselArgumentComparison,
    invariantReport,
    publishedInvariants,
)
from src.numverify.transport import SolutionSampler, cheResidualExact, transportSolution
from src.symcore.errors import SymcoreError
from src.symcore.parser import printExpr
from src.txt_loading.txt_loader import (
    InputFileError,
    parseConstantArgs,
    readConstants,
    readFieldFile,
    readPdeFile,
    readSampleBox,
    readSolutionFixtures,
)

logger = logging.getLogger("lie_che")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

ROOT = os.path.dirname(os.path.abspath(__file__))
GOLDEN_TABLE = os.path.join(ROOT, "data", "table1_golden.txt")
KILLING_DIAGONAL = (-4, 0, 0, 0, 0, -4, -4)
FLOW_PARAMETERS = (0.3, 0.4)
TRANSPORT_PARAMETERS = (0.3, 0.7)
INPUT_ERRORS = (
    InputFileError,
    SymcoreError,
    JetError,
    LieStructureError,
    AdjointError,
    NumericError,
    KeyError,
    ValueError,
    OSError,
)


def main(args):
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        payload, text, code = COMMANDS[args.command](args)
    except INPUT_ERRORS as error:
        logger.debug("%s failed", args.command, exc_info=True)
        print("error: %s" % error, file=sys.stderr)
        return EXIT_INPUT_ERROR
    payload["command"] = args.command
    payload["exit_code"] = code
    output = dumpReport(payload) if args.json else text
    if args.output:
        with open(args.output, "w") as f:
            f.write(output)
    else:
        sys.stdout.write(output)
    return code


def numericConstants(args):
    constants = {"k": 1.0}
    if args.const_file:
        constants.update(readConstants(args.const_file))
    constants.update(parseConstantArgs(args.const))
    return constants


def sampleBox(args):
    return readSampleBox(args.box) if args.box else None


def cmdCheckSymmetry(args):
    pde = readPdeFile(args.pde)
    fields = [readFieldFile(path) for path in args.field] if args.field else list(cheGenerators())
    constants = numericConstants(args)
    entries = []
    for v in tqdm(fields, desc="symmetry", disable=not args.progress):
        residual = invarianceResidual(v, pde)
        entry = {"field": v.name, "symbolic_zero": residual == 0}
        if residual == 0:
            entry["symmetry"] = True
        else:
            try:
                value = onShellResidual(v, pde, args.samples, args.seed, constants,
                                        sampleBox(args))
                entry["numeric_residual"] = value
                entry["symmetry"] = value <= args.tol
            except DomainError as error:
                entry["note"] = str(error)
                entry["symmetry"] = False
            if not entry["symmetry"]:
                entry["residual"] = printExpr(residual)
        entries.append(entry)
    rows = [["field", "symbolic zero", "numeric residual", "symmetry"]]
    for entry in entries:
        rows.append([
            entry["field"],
            "yes" if entry["symbolic_zero"] else "no",
            "%.3g" % entry["numeric_residual"] if "numeric_residual" in entry else "-",
            "yes" if entry["symmetry"] else "no",
        ])
    code = EXIT_OK if all(entry["symmetry"] for entry in entries) else EXIT_CHECK_FAILED
    payload = {"pde": pde.name, "fields": entries, "tolerance": args.tol}
    return payload, renderColumns(rows), code


def cmdStructure(args):
    g = cheAlgebra()
    table = renderTable(g.labels, zip(g.labels, g.commutatorTable()))
    with open(args.golden) as f:
        golden = f.read()
    series = derivedSeries(g)
    payload = {
        "commutator_table": g.commutatorTable(),
        "golden_match": table == golden,
        "antisymmetric": g.isAntisymmetric(),
        "jacobi_defects": len(g.jacobiDefects()),
        "derived_series_dims": [term.dim for term in series],
        "semisimple": isSemisimple(g),
        "solvable": isSolvable(g),
    }
    ok = payload["golden_match"] and payload["antisymmetric"] and not payload["jacobi_defects"]
    text = table
    text += "golden table: %s\n" % ("match" if payload["golden_match"] else "MISMATCH")
    text += "derived series dimensions: %s\n" % payload["derived_series_dims"]
    text += "semisimple: %s\n" % ("yes" if payload["semisimple"] else "no")
    text += "solvable: %s\n" % ("yes" if payload["solvable"] else "no")
    if args.killing:
        K = killingMatrix(g)
        gram = [[int(K[i, j]) for j in range(g.dim)] for i in range(g.dim)]
        expected = [[KILLING_DIAGONAL[i] if i == j else 0 for j in range(g.dim)]
                    for i in range(g.dim)]
        payload["killing"] = {"matrix": gram, "matches": gram == expected}
        ok = ok and gram == expected
        text += renderTable(g.labels, zip(g.labels, gram), corner="K")
    if args.levi:
        radical, levi = cheRadicalAndLevi(g.dim)
        report = verifyLevi(g, radical, levi)
        payload["levi"] = report.toDict()
        ok = ok and report.passed
        rows = [[a.name, PASS if a.passed else FAIL, a.witness] for a in report.assertions]
        text += renderColumns(rows)
        if report.so3.get("matches"):
            text += "so(3) rescaling: %s\n" % ", ".join(report.so3["scaling"])
    return payload, text, EXIT_OK if ok else EXIT_CHECK_FAILED


def _equationLines(system):
    return [printExpr(e) for e in system]


def cmdDetSys(args):
    pde = readPdeFile(args.pde)
    bound = {name: Fraction(str(value)) for name, value in parseConstantArgs(args.const).items()}
    if bound:
        pde = pde.bind(bound)
    system = determiningSystem(pde)
    payload = {"pde": pde.name, "equations": _equationLines(system), "size": len(system)}
    text = "".join("%s = 0\n" % line for line in payload["equations"])
    code = EXIT_OK
    if pde == chePde():
        generators = {v.name: satisfiesSystem(v, system) for v in cheGenerators()}
        printed = []
        for e in tqdm(printedDeterminingEquations(), desc="printed", disable=not args.progress):
            printed.append({"equation": printExpr(e), "implied": impliedBy(e, system)})
        payload["generators_satisfy"] = generators
        payload["printed"] = printed
        rows = [["printed equation", "implied"]]
        rows += [[entry["equation"], "yes" if entry["implied"] else "no"] for entry in printed]
        text += renderColumns(rows)
        text += renderColumns([[name, "solves system" if ok else "FAILS"]
                               for name, ok in generators.items()])
        if not all(generators.values()) or not all(entry["implied"] for entry in printed):
            code = EXIT_CHECK_FAILED
    if args.laplace:
        laplace = determiningSystem(pde.bind({"k": 0}))
        lines = set(_equationLines(laplace))
        dropped = [line for line in payload["equations"] if line not in lines]
        payload["laplace"] = {"size": len(laplace), "equations": _equationLines(laplace),
                              "dropped": dropped}
        text += "laplace case: %d equations, %d differ\n" % (len(laplace), len(dropped))
    return payload, text, code


def cmdAdjoint(args):
    g = cheAlgebra()
    grid = np.linspace(-5.0, 5.0, 21)
    entries = []
    for i, matrix in adjointMatrices(g).items():
        comparison = comparePrinted(g, i)
        seriesError = max(matrix.crossCheck(s) for s in grid)
        expmError = max(matrix.expmCheck(s) for s in grid)
        entry = {
            "generator": i,
            "kind": matrix.kind,
            "printed_match": comparison["matches"],
            "misprints": comparison["misprints"],
            "mismatches": comparison["mismatches"],
            "series_error": seriesError,
            "expm_error": expmError,
        }
        entry["status"] = PASS if (comparison["matches"] and seriesError <= args.tol
                                   and expmError <= args.tol) else FAIL
        entries.append(entry)
    rows = [["M", "kind", "printed", "misprints", "series err", "expm err", "status"]]
    for entry in entries:
        rows.append(["M%d" % entry["generator"], entry["kind"],
                     "match" if entry["printed_match"] else "differs",
                     len(entry["misprints"]), "%.2g" % entry["series_error"],
                     "%.2g" % entry["expm_error"], entry["status"]])
    code = EXIT_CHECK_FAILED if anyFailed(entries) else EXIT_OK
    return {"matrices": entries, "tolerance": args.tol}, renderColumns(rows), code


def parseCoefficients(text):
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except ValueError:
        raise ValueError("coefficients must be numbers separated by commas: %r" % text)


def _replayError(g, result):
    return float(np.max(np.abs(result.replay(g) - result.transformedElement)))


def cmdOptimal(args):
    g = cheAlgebra()
    normalizer = Normalizer(g)
    if args.coeffs:
        try:
            result = normalizer.normalize(parseCoefficients(args.coeffs))
        except ToleranceFailure as error:
            payload = {"input": args.coeffs, "case": error.case, "off_pattern": error.offPattern}
            return payload, "%s\n" % error, EXIT_CHECK_FAILED
        payload = result.toDict()
        payload["replay_error"] = _replayError(g, result)
        text = renderColumns([
            ["class", "%d) %s" % (result.classId, result.label)],
            ["case", result.case],
            ["parameters", ", ".join("%s = %.6g" % kv for kv in result.parameters.items())],
            ["transcript", ", ".join("X%d: %.6g" % move for move in result.transcript)],
        ])
        return payload, text, EXIT_OK
    elements = randomElements(args.sweep, args.seed)
    results, failures = sweep(normalizer, elements, progress=args.progress)
    replay = max((_replayError(g, result) for result in results), default=0.0)
    histogram = classHistogram(results)
    examples = {}
    for result in results:
        examples.setdefault(result.classId, result)
    payload = {
        "count": len(elements),
        "seed": args.seed,
        "histogram": {str(k): v for k, v in histogram.items()},
        "tolerance_failures": len(failures),
        "max_replay_error": replay,
        "examples": {str(k): r.toDict() for k, r in sorted(examples.items())},
    }
    rows = [["class", "subalgebra", "count", "example input"]]
    for classId, (label, _, _) in CLASSES.items():
        example = examples.get(classId)
        rows.append([classId, label, histogram[classId],
                     ",".join("%.3g" % x for x in example.inputElement) if example else "-"])
    text = renderColumns(rows)
    text += "tolerance failures: %d, max replay error %.3g\n" % (len(failures), replay)
    ok = not failures and replay <= args.replay_tol
    return payload, text, EXIT_OK if ok else EXIT_CHECK_FAILED


def verifyFlows(args, constants):
    starts = SampleBoxLoader(args.flow_samples, args.seed, sampleBox(args)).asArray()
    s, t = FLOW_PARAMETERS
    entries = []
    for i, v in enumerate(tqdm(cheGenerators(), desc="flows", disable=not args.progress), 1):
        try:
            discrepancy = checkGroupLaw(v, starts, s, t, bindings=constants)
            moved = integrateBatch(v, starts, s, bindings=constants)
        except (SingularityApproachError, DomainError) as error:
            entries.append({"name": "flow %s" % v.name, "status": SKIPPED, "note": str(error)})
            continue
        entries.append(checkEntry("group law %s" % v.name, discrepancy, args.flow_tol))
        deviation = float(np.max(stateDistance(moved, cartesianOracle(i, starts, s))))
        entries.append(checkEntry("cartesian oracle %s" % v.name, deviation, args.flow_tol))
        for p0 in starts[: args.closed_form_samples]:
            entries.append(closedFormReport(i, p0, s, tol=args.closed_form_tol))
    return entries


def verifyInvariants(args, constants):
    reports = [
        invariantReport(spec, args.samples, args.seed, constants["k"], args.invariant_tol)
        for spec in publishedInvariants()
    ]
    return reports + [besselArgumentComparison(reports)]


def verifyTransport(args, constants):
    grid = SampleBoxLoader(args.transport_samples, args.seed, sampleBox(args)).asArray()
    if args.solutions:
        samplers = [SolutionSampler(name, expression, constants)
                    for name, expression in readSolutionFixtures(args.solutions).items()]
    else:
        samplers = [SolutionSampler.builtin(name, constants) for name in SOLUTIONS]
    entries = []
    for sampler in samplers:
        name = sampler.name
        before = float(np.max(cheResidualExact(sampler, grid)))
        entries.append(checkEntry("%s before transport" % name, before, args.residual_tol))
        for i in tqdm(range(1, 8), desc=name, disable=not args.progress):
            for s in TRANSPORT_PARAMETERS:
                label = "%s under g%d(%g)" % (name, i, s)
                try:
                    value = transportSolution(sampler, i, s, grid)
                except (SingularityApproachError, DomainError) as error:
                    entries.append({"name": label, "status": SKIPPED, "note": str(error)})
                    continue
                entries.append(checkEntry(label, value, args.transport_tol))
    return entries


SUITES = {
    "flows": verifyFlows,
    "invariants": verifyInvariants,
    "transport": verifyTransport,
}


def cmdVerify(args):
    constants = numericConstants(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    payload = {"constants": constants, "suites": {}}
    text = ""
    failed = False
    for name in names:
        entries = SUITES[name](args, constants)
        payload["suites"][name] = entries
        failed = failed or anyFailed(entries)
        rows = [["check", "value", "tolerance", "status"]]
        for entry in entries:
            value = entry.get("value")
            rows.append([entry["name"], "-" if value is None else "%.3g" % value,
                         "%.0e" % entry["tolerance"] if "tolerance" in entry else "-",
                         entry["status"]])
        text += "%s\n%s" % (name, renderColumns(rows))
    return payload, text, EXIT_CHECK_FAILED if failed else EXIT_OK


COMMANDS = {
    "check-symmetry": cmdCheckSymmetry,
    "structure": cmdStructure,
    "detsys": cmdDetSys,
    "adjoint": cmdAdjoint,
    "optimal": cmdOptimal,
    "verify": cmdVerify,
}


def buildParser():
    parser = argparse.ArgumentParser(
        description="Lie point symmetries of the cylindrical Helmholtz equation"
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--output", type=str, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--verbose", action="store_true")
    parser.add_argument("--progress", action="store_true", help="show tqdm progress bars")
    parser.add_argument(
        "--const",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="bind a symbolic constant, e.g. k=1.0",
    )
    parser.add_argument("--const_file", type=str, default=None)
    parser.add_argument("--box", type=str, default=None, help="sample box file")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check-symmetry")
    check.add_argument("--pde", type=str, default="builtin")
    check.add_argument("--field", action="append", default=[],
                       help="field file or builtin:NAME, repeatable")
    check.add_argument("--tol", type=float, default=1e-8)
    check.add_argument("--samples", type=int, default=200)

    structure = commands.add_parser("structure")
    structure.add_argument("--killing", action="store_true")
    structure.add_argument("--levi", action="store_true")
    structure.add_argument("--golden", type=str, default=GOLDEN_TABLE)

    detsys = commands.add_parser("detsys")
    detsys.add_argument("--pde", type=str, default="builtin")
    detsys.add_argument("--laplace", action="store_true", help="also report k = 0")

    adjoint = commands.add_parser("adjoint")
    adjoint.add_argument("--tol", type=float, default=1e-12)

    optimal = commands.add_parser("optimal")
    group = optimal.add_mutually_exclusive_group(required=True)
    group.add_argument("--coeffs", type=str, help="a1,...,a7")
    group.add_argument("--sweep", type=int, help="number of seeded random elements")
    optimal.add_argument("--replay_tol", type=float, default=1e-9)

    verify = commands.add_parser("verify")
    verify.add_argument("suite", choices=list(SUITES) + ["all"])
    verify.add_argument("--samples", type=int, default=200)
    verify.add_argument("--flow_samples", type=int, default=20)
    verify.add_argument("--closed_form_samples", type=int, default=3)
    verify.add_argument("--transport_samples", type=int, default=20)
    verify.add_argument("--solutions", type=str, default=None,
                        help="solution fixture file, name = expression per line")
    verify.add_argument("--flow_tol", type=float, default=1e-8)
    verify.add_argument("--closed_form_tol", type=float, default=CLOSED_FORM_TOL)
    verify.add_argument("--residual_tol", type=float, default=1e-8)
    verify.add_argument("--transport_tol", type=float, default=1e-5)
    verify.add_argument("--invariant_tol", type=float, default=None)
    return parser


if __name__ == "__main__":
    parser = buildParser()
    args = parser.parse_args()
    sys.exit(main(args))
