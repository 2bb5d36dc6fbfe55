"""Command-line interface.

Subcommands:

  realize    full realization pipeline for a field -> JSON report
  theta      number of step-3 edge-class assignments -> integer
  synchrony  balanced partitions of a network -> JSON lattice
  ode-equiv  ODE-equivalence of two networks -> JSON verdict
  iso        graph isomorphism of two networks -> JSON verdict
  aut        automorphism group of a network -> JSON listing
  simulate   RK4 trajectory of a field -> CSV
  export     network -> JSON or DOT

Field files: `vars: x1 x2 ...`, optional `cells: (x1 x2)(x3)...`, then one
`f<i> = <expr>` line per coordinate; `#` starts a comment.

Assignment files (JSON, 1-based cells): {"cells": [{"cell": 1,
"tails": [1, 1], "vars": ["x", "y1", "y2"], "g": ["x + y1*y2"]}, ...]}
where `vars` names the slot variables in layout order (own coordinates
first, then one group per input edge) and `g` gives one expression per
cell coordinate.

Exit codes: 0 success, 1 domain error, 2 usage error.  The environment
variable ADMNET_MAX_CELLS overrides the brute-force size bounds.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional

import numpy as np

from .network import (
    Network,
    NetworkError,
    automorphism_group,
    is_isomorphic,
    network_from_json,
    network_to_json,
)
from .odeeq import ode_equivalent
from .polynomial import Polynomial, PolynomialError, parse_polynomial
from .realize import (
    CellGenerator,
    GeneratingAssignment,
    RealizationError,
    VectorFieldSpec,
    realize_all,
    theta,
)
from .synchrony import enumerate_balanced, lattice_to_json
from .dynamics import (
    IntegrationError,
    VdpParams,
    integrate_rk4,
    vdp_network_field,
)


class CliError(ValueError):
    """Domain-level failure reported with exit code 1."""


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------


def parse_field_file(text: str) -> VectorFieldSpec:
    """Parse the plain-text field format (see module docstring)."""
    variables: list[str] = []
    cell_groups: Optional[list[list[str]]] = None
    exprs: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            variables = line[len("vars:"):].split()
        elif line.startswith("cells:"):
            body = line[len("cells:"):].strip()
            groups = re.findall(r"\(([^)]*)\)", body)
            if "".join(groups).strip() == "" or re.sub(r"\([^)]*\)|\s", "", body):
                raise CliError(f"line {lineno}: malformed cells declaration")
            cell_groups = [grp.split() for grp in groups]
        else:
            m = re.match(r"f(\d+)\s*=\s*(.+)$", line)
            if not m:
                raise CliError(f"line {lineno}: expected 'f<i> = <expr>'")
            exprs[int(m.group(1))] = m.group(2)
    if not variables:
        raise CliError("field file must declare 'vars:'")
    if sorted(exprs) != list(range(1, len(variables) + 1)):
        raise CliError("need exactly one f<i> line per variable, numbered from 1")
    try:
        components = tuple(
            parse_polynomial(exprs[i + 1], variables) for i in range(len(variables))
        )
    except PolynomialError as exc:
        raise CliError(f"malformed expression: {exc}") from exc
    if cell_groups is None:
        cellization = tuple((i,) for i in range(len(variables)))
    else:
        index = {v: i for i, v in enumerate(variables)}
        try:
            cellization = tuple(tuple(index[v] for v in grp) for grp in cell_groups)
        except KeyError as exc:
            raise CliError(f"cells declaration names unknown variable {exc}") from exc
    return VectorFieldSpec(len(variables), cellization, components)


def parse_assignment_json(data: dict, f: VectorFieldSpec) -> GeneratingAssignment:
    gens = []
    for item in data["cells"]:
        cell = int(item["cell"]) - 1
        tails = tuple(int(t) - 1 for t in item["tails"])
        slot_vars = list(item["vars"])
        polys = tuple(parse_polynomial(expr, slot_vars) for expr in item["g"])
        gens.append(CellGenerator(cell, polys, tails))
    gens.sort(key=lambda g: g.cell)
    return GeneratingAssignment(tuple(gens))


def load_field(path: str) -> VectorFieldSpec:
    with open(path) as fh:
        return parse_field_file(fh.read())


def load_network(path: str) -> Network:
    with open(path) as fh:
        return network_from_json(json.load(fh))


def load_assignment(path: str, f: VectorFieldSpec) -> GeneratingAssignment:
    with open(path) as fh:
        return parse_assignment_json(json.load(fh), f)


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------

_NODE_SHAPES = ["circle", "box", "diamond", "ellipse", "hexagon", "triangle"]
_EDGE_STYLES = ["solid", "dashed", "dotted", "bold"]
_EDGE_COLORS = ["black", "red", "blue", "green4", "orange", "purple"]


def _edge_attrs(etype: int) -> str:
    if etype < len(_EDGE_STYLES):
        return f'style={_EDGE_STYLES[etype]}'
    color = _EDGE_COLORS[(etype - len(_EDGE_STYLES)) % len(_EDGE_COLORS)]
    return f'style=solid, color={color}'


def export_dot(g: Network) -> str:
    """Deterministic DOT rendering: node shapes by cell class, edge styles
    by edge type."""
    lines = ["digraph network {"]
    for c in range(g.n_cells):
        shape = _NODE_SHAPES[g.cell_class.block_of(c) % len(_NODE_SHAPES)]
        lines.append(f'  c{c + 1} [label="{c + 1}", shape={shape}];')
    for e in g.edges:
        lines.append(f"  c{e.tail + 1} -> c{e.head + 1} [{_edge_attrs(e.etype)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Output plumbing
# ---------------------------------------------------------------------------


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(data, out: Optional[str]) -> None:
    _emit(json.dumps(data, indent=2, sort_keys=True) + "\n", out)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_realize(args) -> int:
    f = load_field(args.field)
    assignments = None
    if args.assignment:
        assignments = [load_assignment(args.assignment, f)]
    report = realize_all(f, assignments)
    if args.format == "dot":
        raise CliError("realize reports are JSON only; use 'export' for DOT")
    _emit_json(report.to_json(), args.out)
    return 0


def _cmd_theta(args) -> int:
    f = load_field(args.field)
    a = load_assignment(args.assignment, f) if args.assignment else None
    _emit(f"{theta(f, a)}\n", args.out)
    return 0


def _cmd_synchrony(args) -> int:
    g = load_network(args.network[0])
    lat = enumerate_balanced(g)
    data = lattice_to_json(lat)
    if not args.chimera:
        data.pop("chimera")
    _emit_json(data, args.out)
    return 0


def _cmd_ode_equiv(args) -> int:
    if len(args.network) != 2:
        raise CliError("ode-equiv needs exactly two --network arguments")
    g1, g2 = (load_network(p) for p in args.network)
    witness = ode_equivalent(g1, g2)
    _emit_json(
        {
            "equivalent": witness is not None,
            "witness": None if witness is None else [c + 1 for c in witness],
        },
        args.out,
    )
    return 0


def _cmd_iso(args) -> int:
    if len(args.network) != 2:
        raise CliError("iso needs exactly two --network arguments")
    g1, g2 = (load_network(p) for p in args.network)
    result = is_isomorphic(g1, g2)
    data = {"isomorphic": result is not None}
    if result is not None:
        data["cell_map"] = [c + 1 for c in result[0]]
        data["type_map"] = list(result[1])
    _emit_json(data, args.out)
    return 0


def _cmd_aut(args) -> int:
    g = load_network(args.network[0])
    group = automorphism_group(g)
    _emit_json(
        {
            "order": len(group),
            "elements": [
                {"cells": [c + 1 for c in w[0]], "types": list(w[1])} for w in group
            ],
        },
        args.out,
    )
    return 0


def _parse_params(spec: str) -> VdpParams:
    params = VdpParams()
    if not spec:
        return params
    overrides = {}
    for item in spec.split(","):
        if "=" not in item:
            raise CliError(f"malformed parameter override {item!r} (expected k=v)")
        k, v = item.split("=", 1)
        try:
            overrides[k.strip()] = Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"bad parameter value {item!r}: {exc}") from exc
    try:
        return params.replace(**overrides)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _cmd_simulate(args) -> int:
    if args.vdp:
        f = vdp_network_field(args.vdp, _parse_params(args.params or ""))
    elif args.field:
        if args.params:
            raise CliError("--params applies only to the built-in --vdp field")
        f = load_field(args.field)
    else:
        raise CliError("simulate needs --field or --vdp")
    if args.x0:
        x0 = np.array([float(v) for v in args.x0.split(",")])
    else:
        rng = np.random.default_rng(args.seed)
        x0 = rng.uniform(-0.5, 0.5, size=f.n)
    traj = integrate_rk4(f, x0, args.t_end, args.dt)
    if args.out:
        traj.to_csv(args.out)
    else:
        n = traj.states.shape[1]
        sys.stdout.write("t," + ",".join(f"x{i + 1}" for i in range(n)) + "\n")
        for t, row in zip(traj.times, traj.states):
            sys.stdout.write(repr(float(t)) + "," + ",".join(repr(float(v)) for v in row) + "\n")
    return 0


def _cmd_export(args) -> int:
    g = load_network(args.network[0])
    if args.format == "dot":
        _emit(export_dot(g), args.out)
    else:
        _emit_json(network_to_json(g), args.out)
    return 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="admnet",
        description="Realize, classify and simulate coupled-cell networks "
        "admitting a polynomial vector field.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--out", metavar="PATH", help="write output to a file")
        p.add_argument("--format", choices=["json", "dot", "csv"], default="json")
        return p

    p = add("realize", _cmd_realize, help="run the full realization pipeline")
    p.add_argument("--field", required=True)
    p.add_argument("--assignment")

    p = add("theta", _cmd_theta, help="count the step-3 edge-class assignments")
    p.add_argument("--field", required=True)
    p.add_argument("--assignment")

    p = add("synchrony", _cmd_synchrony, help="enumerate balanced partitions")
    p.add_argument("--network", action="append", required=True)
    p.add_argument("--chimera", action="store_true", help="include chimera flags")

    p = add("ode-equiv", _cmd_ode_equiv, help="decide ODE-equivalence")
    p.add_argument("--network", action="append", required=True)

    p = add("iso", _cmd_iso, help="decide graph isomorphism")
    p.add_argument("--network", action="append", required=True)

    p = add("aut", _cmd_aut, help="compute the automorphism group")
    p.add_argument("--network", action="append", required=True)

    p = add("simulate", _cmd_simulate, help="integrate a trajectory (CSV)")
    p.add_argument("--field")
    p.add_argument("--vdp", type=int, metavar="N", help="built-in van der Pol ring")
    p.add_argument("--t-end", type=float, default=50.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--x0", help="comma-separated initial state")
    p.add_argument("--params", help="k=v,... overrides for the built-in field")
    p.add_argument("--seed", type=int, help="seed for the random initial state")

    p = add("export", _cmd_export, help="export a network as JSON or DOT")
    p.add_argument("--network", action="append", required=True)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        CliError,
        NetworkError,
        RealizationError,
        PolynomialError,
        IntegrationError,
        FileNotFoundError,
        json.JSONDecodeError,
        KeyError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
