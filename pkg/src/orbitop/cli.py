"""Command-line front end: scenario files, orchestration, reports.

Scenario files are a line-oriented key-value format with section
headers; complex entries are written like `-1`, `i`, `1/2+1/2i`.
Reports are deterministic: the same scenario and version give
byte-identical output.  Exit codes: 0 success, 2 parse error,
3 precondition violation, 4 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import __version__
from .errors import (
    CapExceededError,
    OrbitopError,
    PreconditionError,
    ScenarioParseError,
)
from .exact import Matrix
from .group import CLOSURE_CAP, Motion, close, conjugacy_classes, spin7_check, su_classify
from .invariants import (
    ContributionTable,
    NodeConfiguration,
    chi_family_census,
    chi_total_count,
    ledger_apply,
    node_kahler,
    node_smoothable,
    orbifold_euler,
    plan_from_choices,
    quotient_betti,
)
from .mckay import analyze_splitting
from .torus import TorusLattice, fixed_set, singular_set

COMMANDS = (
    "group",
    "fixed-sets",
    "singular-set",
    "euler",
    "lifts",
    "invariant-pair",
    "chi-census",
    "chi-count",
    "ledger",
    "nodes",
)


# ---------------------------------------------------------------------------
# Scenario model and parsing


@dataclass(frozen=True)
class GeneratorSpec:
    rows: tuple[tuple, ...]
    real: bool = False
    conjugate: bool = False

    def to_motion(self, complex_dim: int) -> Motion:
        if self.real:
            if len(self.rows) != 2 * complex_dim:
                raise ScenarioParseError("real generator needs 2n rows")
            return Motion(matrix=Matrix([list(r) for r in self.rows]))
        if len(self.rows) != complex_dim:
            raise ScenarioParseError("complex generator needs n rows")
        return Motion.from_complex(
            [list(r) for r in self.rows], conjugate=self.conjugate
        )


@dataclass(frozen=True)
class Scenario:
    name: str
    ambient: str  # "torus" | "linear"
    complex_dim: int
    generators: tuple[GeneratorSpec, ...]
    lattice_rows: tuple[tuple[Fraction, ...], ...] | None = None
    splitting_axis: int = 1  # 1-based complex coordinate
    node_classes: tuple[tuple[Fraction, ...], ...] | None = None
    plan_ref: str | None = None  # default plan for the ledger command
    table_ref: str | None = None  # default contribution table

    def motions(self) -> list[Motion]:
        return [g.to_motion(self.complex_dim) for g in self.generators]

    def lattice(self) -> TorusLattice:
        if self.ambient != "torus":
            raise PreconditionError("scenario has no torus ambient")
        if self.lattice_rows is None:
            return TorusLattice.standard(2 * self.complex_dim)
        return TorusLattice(basis=Matrix([list(r) for r in self.lattice_rows]).T)


def parse_complex_entry(token: str) -> tuple[Fraction, Fraction]:
    s = token.strip().replace(" ", "")
    if not s:
        raise ScenarioParseError("empty complex entry")
    terms = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "+-/":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    re = Fraction(0)
    im = Fraction(0)
    try:
        for t in terms:
            if t.endswith("i"):
                body = t[:-1]
                if body in ("", "+", "-"):
                    body += "1"
                im += Fraction(body)
            else:
                re += Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScenarioParseError(f"bad complex entry {token!r}: {exc}") from exc
    return re, im


def format_complex_entry(value: tuple[Fraction, Fraction]) -> str:
    re, im = value
    if im == 0:
        return str(re)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = f"{im}i"
    if re == 0:
        return imag
    return f"{re}{imag}" if imag.startswith("-") else f"{re}+{imag}"


def parse_scenario(text: str) -> Scenario:
    header: dict[str, str] = {}
    sections: list[tuple[str, list[tuple[str, str]]]] = []
    current: list[tuple[str, str]] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = []
            sections.append((line[1:-1].strip(), current))
            continue
        if ":" not in line:
            raise ScenarioParseError(f"line {lineno}: expected key: value")
        key, value = (part.strip() for part in line.split(":", 1))
        if current is None:
            header[key] = value
        else:
            current.append((key, value))

    for needed in ("name", "ambient", "complex_dim"):
        if needed not in header:
            raise ScenarioParseError(f"missing header field {needed!r}")
    ambient = header["ambient"]
    if ambient not in ("torus", "linear"):
        raise ScenarioParseError(f"unknown ambient {ambient!r}")
    try:
        complex_dim = int(header["complex_dim"])
    except ValueError as exc:
        raise ScenarioParseError("complex_dim must be an integer") from exc

    generators = []
    lattice_rows = None
    splitting_axis = 1
    node_classes = None
    for title, entries in sections:
        if title == "generator":
            real = any(k == "real" and v == "true" for k, v in entries)
            conj = any(k == "conjugate" and v == "true" for k, v in entries)
            rows = []
            for k, v in entries:
                if k != "row":
                    continue
                toks = v.split()
                if real:
                    rows.append(tuple(Fraction(t) for t in toks))
                else:
                    rows.append(tuple(parse_complex_entry(t) for t in toks))
            if not rows:
                raise ScenarioParseError("generator section has no rows")
            generators.append(
                GeneratorSpec(rows=tuple(rows), real=real, conjugate=conj)
            )
        elif title == "lattice":
            lattice_rows = tuple(
                tuple(Fraction(t) for t in v.split())
                for k, v in entries
                if k == "row"
            )
        elif title == "splitting":
            for k, v in entries:
                if k == "axis":
                    splitting_axis = int(v)
        elif title == "node_classes":
            node_classes = tuple(
                tuple(Fraction(t) for t in v.split())
                for k, v in entries
                if k == "row"
            )
        else:
            raise ScenarioParseError(f"unknown section [{title}]")
    if not generators:
        raise ScenarioParseError("scenario defines no generators")
    try:
        scenario = Scenario(
            name=header["name"],
            ambient=ambient,
            complex_dim=complex_dim,
            generators=tuple(generators),
            lattice_rows=lattice_rows,
            splitting_axis=splitting_axis,
            node_classes=node_classes,
            plan_ref=header.get("plan"),
            table_ref=header.get("table"),
        )
        scenario.motions()  # validate generator shapes now
    except OrbitopError:
        raise
    except ValueError as exc:
        raise ScenarioParseError(str(exc)) from exc
    return scenario


def serialize_scenario(scenario: Scenario) -> str:
    out = [
        f"name: {scenario.name}",
        f"ambient: {scenario.ambient}",
        f"complex_dim: {scenario.complex_dim}",
    ]
    if scenario.plan_ref:
        out.append(f"plan: {scenario.plan_ref}")
    if scenario.table_ref:
        out.append(f"table: {scenario.table_ref}")
    if scenario.lattice_rows is not None:
        out.append("")
        out.append("[lattice]")
        for row in scenario.lattice_rows:
            out.append("row: " + " ".join(str(x) for x in row))
    for gen in scenario.generators:
        out.append("")
        out.append("[generator]")
        if gen.real:
            out.append("real: true")
        if gen.conjugate:
            out.append("conjugate: true")
        for row in gen.rows:
            if gen.real:
                out.append("row: " + " ".join(str(x) for x in row))
            else:
                out.append(
                    "row: " + " ".join(format_complex_entry(x) for x in row)
                )
    out.append("")
    out.append("[splitting]")
    out.append(f"axis: {scenario.splitting_axis}")
    if scenario.node_classes is not None:
        out.append("")
        out.append("[node_classes]")
        for row in scenario.node_classes:
            out.append("row: " + " ".join(str(x) for x in row))
    return "\n".join(out) + "\n"


def load_scenario(path_or_name: str) -> Scenario:
    if path_or_name.endswith(".scn") or "/" in path_or_name:
        try:
            with open(path_or_name, "r", encoding="utf-8") as fh:
                return parse_scenario(fh.read())
        except FileNotFoundError as exc:
            raise ScenarioParseError(f"scenario file not found: {path_or_name}") from exc
    return parse_scenario(bundled_scenario_text(path_or_name))


def bundled_scenario_text(name: str) -> str:
    try:
        return (
            resources.files("orbitop.scenarios").joinpath(f"{name}.scn").read_text()
        )
    except (FileNotFoundError, ModuleNotFoundError) as exc:
        raise ScenarioParseError(f"no bundled scenario named {name!r}") from exc


def load_table(name_or_path: str) -> ContributionTable:
    if name_or_path.endswith(".json") or "/" in name_or_path:
        try:
            with open(name_or_path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except FileNotFoundError as exc:
            raise ScenarioParseError(f"table file not found: {name_or_path}") from exc
        except json.JSONDecodeError as exc:
            raise ScenarioParseError(f"bad table JSON: {exc}") from exc
    else:
        try:
            text = (
                resources.files("orbitop.tables")
                .joinpath(f"{name_or_path}.json")
                .read_text()
            )
        except FileNotFoundError as exc:
            raise ScenarioParseError(f"no bundled table named {name_or_path!r}") from exc
        raw = json.loads(text)
    entries = {}
    for e in raw["entries"]:
        entries[(e["kind"], e["choice"])] = (int(e["dh11"]), int(e["dh21"]))
    return ContributionTable(name=raw.get("name", name_or_path), entries=entries)


# ---------------------------------------------------------------------------
# Report assembly


def _fr(x: Fraction) -> str:
    return str(x)


def _point(p) -> str:
    return "(" + ", ".join(_fr(x) for x in p) + ")"


def run_command(command: str, args) -> dict:
    """Build the machine report for one CLI invocation."""
    if command == "chi-census":
        census = chi_family_census(args.grid_n)
        return {
            "command": command,
            "version": __version__,
            "grid_n": args.grid_n,
            "family1_count": census.family1_count,
            "axis_family_count": census.axis_family_count,
            "union_count": census.union_count,
            "inclusion_exclusion_ok": True,
        }
    if command == "chi-count":
        total = chi_total_count(args.grid_n)
        return {
            "command": command,
            "version": __version__,
            "grid_n": args.grid_n,
            "total_admissible": total,
            "algorithms_agree": True,
        }

    if not args.scenario:
        raise PreconditionError(f"command {command} requires --scenario")
    scenario = load_scenario(args.scenario)
    base = {"command": command, "scenario": scenario.name, "version": __version__}

    if command == "nodes":
        if scenario.node_classes is None:
            raise PreconditionError("scenario has no [node_classes] section")
        cfg = NodeConfiguration.make(scenario.node_classes)
        sm = node_smoothable(cfg, seed=args.seed)
        base.update(
            {
                "class_count": len(cfg.classes),
                "smoothable": sm.smoothable,
                "smoothing_witness": (
                    [_fr(x) for x in sm.witness] if sm.witness else None
                ),
                "kahler_positive": node_kahler(cfg),
            }
        )
        return base

    motions = scenario.motions()
    group = close(motions, cap=args.cap)
    base["group_order"] = group.order

    if command == "group":
        classes = conjugacy_classes(group)
        kinds = sorted(
            {su_classify(m).kind for m in group.elements}
        )
        base.update(
            {
                "abelian": group.is_abelian(),
                "class_sizes": sorted(len(c) for c in classes),
                "element_kinds": kinds,
            }
        )
        if group.dim_real == 8:
            base["spin7_all"] = all(spin7_check(m) for m in group.elements)
        return base

    if command == "euler":
        lattice = scenario.lattice() if scenario.ambient == "torus" else None
        report = orbifold_euler(group, lattice)
        base.update(
            {
                "euler_characteristic": report.value,
                "commuting_pairs": report.commuting_pairs,
                "conjugacy_classes": report.class_count,
                "nonidentity_classes": report.nonidentity_class_count,
            }
        )
        if lattice is None and report.value != report.nonidentity_class_count:
            base["note"] = (
                "value equals the total class count "
                f"({report.class_count}), which exceeds the nonidentity "
                f"class count ({report.nonidentity_class_count})"
            )
        return base

    if command == "fixed-sets":
        out = []
        if scenario.ambient == "torus":
            lattice = scenario.lattice()
            for i, motion in enumerate(group.elements):
                if i == group.identity_index:
                    continue
                fam = fixed_set(motion, lattice)
                out.append(
                    {
                        "element": i,
                        "dimension": fam.dimension,
                        "components": fam.component_count,
                        "representatives": [
                            _point(p) for p in fam.representatives[:16]
                        ],
                    }
                )
        else:
            for i, motion in enumerate(group.elements):
                if i == group.identity_index:
                    continue
                block = motion.matrix - Matrix.identity(group.dim_real)
                out.append(
                    {
                        "element": i,
                        "fixed_subspace_dimension": len(block.kernel_basis()),
                    }
                )
        base["fixed_sets"] = out
        return base

    if command == "singular-set":
        lattice = scenario.lattice()
        report = singular_set(group, lattice)
        base.update(
            {
                "component_counts": report.count_by_label(),
                "components": [
                    {
                        "id": k,
                        "label": c.quotient_label,
                        "dimension": c.dimension,
                        "orbit_size": c.orbit_size,
                        "stabilizer_order": len(c.generic_stabilizer),
                        "special_points": [_point(p) for p in c.special_points],
                    }
                    for k, c in enumerate(report.components)
                ],
                "intersection_points": [
                    {"point": _point(p), "components": list(inc)}
                    for p, inc in report.intersection_points
                ],
            }
        )
        return base

    if command in ("lifts", "invariant-pair"):
        result = analyze_splitting(
            group, axis=scenario.splitting_axis - 1, seed=args.seed
        )
        base.update(
            {
                "h_order": len(result.h_indices),
                "diagram": result.classification.diagram.name,
                "diagram_ambiguous": result.classification.ambiguous,
                "quotient_order": result.quotient.order,
                "psi_trivial": result.psi.is_trivial(),
                "weyl_order": result.weyl.order,
                "lift_count": len(result.lifts),
            }
        )
        if command == "lifts":
            base["lifts"] = [
                {
                    "canonical": lift.is_canonical(),
                    "images": [
                        {"aut": list(e.aut), "weyl": _matrix_rows(e.weyl)}
                        for e in lift.images
                    ],
                }
                for lift in result.lifts
            ]
            return base
        base["phi"] = [str(s) for s in result.phi]
        base["decisions"] = [
            {
                "lift": idx,
                "canonical": lift.is_canonical(),
                "exists": dec.exists,
                "alpha": [_fr(x) for x in dec.label.alpha] if dec.label else None,
                "beta": [str(x) for x in dec.label.beta] if dec.label else None,
                "blocking_root": (
                    list(dec.blocking_root) if dec.blocking_root else None
                ),
            }
            for idx, (lift, dec) in enumerate(zip(result.lifts, result.decisions))
        ]
        return base

    if command == "ledger":
        lattice = scenario.lattice()
        report = singular_set(group, lattice)
        base_betti = quotient_betti(group, lattice)
        table = load_table(args.table or scenario.table_ref or scenario.name)
        plans = _resolve_plans(args.plan or scenario.plan_ref, scenario, report)
        rows = []
        for plan_name, plan in plans:
            result = ledger_apply(base_betti, plan, table)
            rows.append(
                {
                    "plan": plan_name,
                    "b": list(result.b),
                    "h11": result.h11,
                    "h21": result.h21,
                    "euler_characteristic": result.euler_characteristic,
                }
            )
        base.update(
            {
                "base_betti": list(base_betti.b),
                "table": table.name,
                "results": rows,
            }
        )
        return base

    raise PreconditionError(f"unknown command {command!r}")


def _matrix_rows(m: Matrix):
    return [[_fr(x) for x in row] for row in m.data]


def _resolve_plans(plan_arg, scenario, report):
    """Bundled plan names or a plan JSON file path."""
    labels = [c.quotient_label for c in report.components]
    if plan_arg is None:
        if scenario.name == "t6_z4":
            return [
                (f"methods-a-count-{k}", _z4_plan(report, k)) for k in range(5)
            ]
        if scenario.name == "t6_z2z2":
            return [
                ("all-crepant", _z2z2_plan(report, "crepant", "i")),
                ("all-deformation", _z2z2_plan(report, "deformation", "ix")),
            ]
        raise PreconditionError(
            "no default plans for this scenario; pass --plan"
        )
    if plan_arg.startswith("z4:k"):
        return [(plan_arg, _z4_plan(report, int(plan_arg[4:])))]
    if plan_arg == "z2z2:crepant":
        return [(plan_arg, _z2z2_plan(report, "crepant", "i"))]
    if plan_arg == "z2z2:deformation":
        return [(plan_arg, _z2z2_plan(report, "deformation", "ix"))]
    try:
        with open(plan_arg, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise ScenarioParseError(f"plan not found: {plan_arg}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"bad plan JSON: {exc}") from exc
    comp = {int(k): v for k, v in raw.get("components", {}).items()}
    pts = {int(k): v for k, v in raw.get("points", {}).items()}
    signs = {k: int(v) for k, v in raw.get("signs", {}).items()} or None
    return [(plan_arg, plan_from_choices(report, comp, pts, signs))]


def _z4_plan(report, k):
    choices = {}
    quotient_ids = [
        i
        for i, c in enumerate(report.components)
        if c.quotient_label == "T2/Z2"
    ]
    if len(quotient_ids) != 4:
        raise PreconditionError("plan expects four T2/Z2 components")
    for i, c in enumerate(report.components):
        if c.quotient_label == "T2":
            choices[i] = "crepant"
    for pos, i in enumerate(quotient_ids):
        choices[i] = "a" if pos < k else "b"
    return plan_from_choices(report, choices)


def _z2z2_plan(report, line_choice, point_case):
    choices = {i: line_choice for i in range(len(report.components))}
    points = {i: point_case for i in range(len(report.intersection_points))}
    signs = {"crepant": 1, "deformation": -1}
    return plan_from_choices(report, choices, points, signs)


# ---------------------------------------------------------------------------
# Rendering


def render_text(report: dict) -> str:
    lines = []

    def emit(prefix, value):
        if isinstance(value, dict):
            for k in value:
                emit(f"{prefix}{k}." if prefix else f"{k}.", value[k])
        elif isinstance(value, list):
            if all(not isinstance(x, (dict, list)) for x in value):
                lines.append(f"{prefix[:-1]}: {' '.join(str(x) for x in value)}")
            else:
                for idx, item in enumerate(value):
                    emit(f"{prefix}{idx}.", item)
        else:
            lines.append(f"{prefix[:-1]}: {value}")

    emit("", report)
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    return render_text(report)


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitop",
        description=(
            "Exact analysis of finite-group quotients of flat tori and "
            "vector spaces: fixed points, singular sets, Euler "
            "characteristics, desingularization data"
        ),
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--scenario", help="bundled name or path to a .scn file")
    parser.add_argument("--out", help="write the report to this path")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--cap", type=int, default=CLOSURE_CAP)
    parser.add_argument("--grid-n", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--plan", help="bundled plan name or plan JSON path")
    parser.add_argument("--table", help="bundled table name or table JSON path")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run_command(args.command, args)
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 4
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
