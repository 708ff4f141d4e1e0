"""Command-line front end: construction, verification, formula evaluation,
oracle search, catalog listing, and reproducible batch runs.

Reports are line-oriented "key: value" text, stable across runs (no
timestamps inside the verdict section).  Exit codes: 0 success,
1 verification/agreement failure, 2 input error, 3 budget exhausted.
"""

from __future__ import annotations

import json
import sys
import time

import click
import numpy as np

from . import catalog as cat
from .constructions import (
    conference_of_order,
    hadamard_of_order,
    is_conference,
    is_hadamard,
    write_sign_matrix,
    read_sign_matrix,
)
from .maxorder import EXACT, formula_max_order
from .search import (
    BudgetExceeded,
    brute_force_max_order,
    oracle_budget_ms,
    witness_matrix,
)
from .star import (
    BipartiteTemplate,
    assemble_graph,
    existence_check,
    read_edge_list,
    spectrum_check,
    template_violations,
    verify_template,
    write_edge_list,
)

EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _emit(pairs, as_json: bool):
    if as_json:
        click.echo(json.dumps(dict(pairs), indent=2))
    else:
        for key, value in pairs:
            click.echo(f"{key}: {value}")


def _mu_str(mu_sq: int) -> str:
    return f"sqrt({mu_sq})"


@click.group()
def main():
    """Signed bipartite graphs with totally disconnected star complements."""


# -- construct -----------------------------------------------------------------


@main.group()
def construct():
    """Build certified matrices, templates, and named graphs."""


@construct.command("hadamard")
@click.argument("order", type=int)
@click.argument("out", type=click.Path(dir_okay=False), required=False)
def construct_hadamard(order, out):
    h = hadamard_of_order(order)
    if h is None:
        click.echo(f"error: no Hadamard matrix of order {order} reachable")
        sys.exit(EXIT_INPUT)
    assert is_hadamard(h)
    report = [("command", f"construct hadamard {order}"),
              ("certified", f"H^T H = {order}I")]
    if out:
        with open(out, "w") as f:
            f.write(write_sign_matrix(h))
        report.append(("wrote", out))
    _emit(report, False)
    if not out:
        click.echo(write_sign_matrix(h), nl=False)


@construct.command("conference")
@click.argument("order", type=int)
@click.argument("out", type=click.Path(dir_okay=False), required=False)
def construct_conference(order, out):
    c = conference_of_order(order)
    if c is None:
        click.echo(f"error: no conference matrix of order {order} reachable")
        sys.exit(EXIT_INPUT)
    assert is_conference(c)
    report = [("command", f"construct conference {order}"),
              ("certified", f"C^T C = {order - 1}I")]
    if out:
        with open(out, "w") as f:
            f.write(write_sign_matrix(c))
        report.append(("wrote", out))
    _emit(report, False)
    if not out:
        click.echo(write_sign_matrix(c), nl=False)


@construct.command("template")
@click.option("--s", "s", type=int, required=True)
@click.option("--mu2", "mu_sq", type=int, required=True)
@click.argument("out", type=click.Path(dir_okay=False), required=False)
def construct_template(s, mu_sq, out):
    """Best constructive witness template for the (s, mu^2) cell."""
    try:
        result = formula_max_order(s, mu_sq)
    except ValueError as e:
        click.echo(f"error: {e}")
        sys.exit(EXIT_INPUT)
    t = result.witness
    report = [
        ("command", f"construct template --s {s} --mu2 {mu_sq}"),
        ("columns", t.k),
        ("order", t.n),
        ("certified", f"B^T B = {mu_sq}I"),
    ]
    if out:
        with open(out, "w") as f:
            f.write(write_sign_matrix(t.B))
        report.append(("wrote", out))
    _emit(report, False)
    if not out:
        click.echo(write_sign_matrix(t.B), nl=False)


@construct.command("named")
@click.argument("name")
@click.argument("params", nargs=-1, type=int)
@click.argument("out", type=click.Path(dir_okay=False), required=False)
def construct_named(name, params, out):
    """Build a named graph; see `starbip catalog --list` for families."""
    try:
        g = cat.build_named(name, *params)
    except (ValueError, TypeError) as e:
        click.echo(f"error: {e}")
        sys.exit(EXIT_INPUT)
    report = [
        ("command", f"construct named {name} {' '.join(map(str, params))}".rstrip()),
        ("order", g.n),
        ("edges", len(g.edges())),
    ]
    if out:
        with open(out, "w") as f:
            f.write(write_edge_list(g))
        report.append(("wrote", out))
    _emit(report, False)
    if not out:
        click.echo(write_edge_list(g), nl=False)


# -- maxorder ------------------------------------------------------------------


@main.command()
@click.option("--s", "s", type=int, required=True)
@click.option("--mu2", "mu_sq", type=int, required=True)
@click.option("--oracle", is_flag=True, help="also run the brute-force oracle")
@click.option("--json", "as_json", is_flag=True)
def maxorder(s, mu_sq, oracle, as_json):
    """Closed-form maximum order, optionally checked against the oracle."""
    try:
        result = formula_max_order(s, mu_sq)
    except ValueError as e:
        click.echo(f"error: {e}")
        sys.exit(EXIT_INPUT)
    report = [("command", f"maxorder --s {s} --mu2 {mu_sq}"), ("mu", _mu_str(mu_sq))]
    if result.verdict == EXACT:
        report.append(("formula", f"Exact {result.lo} ({result.provenance})"))
    else:
        report.append(("formula", f"Bounds [{result.lo}, {result.hi}] ({result.provenance})"))
    code = 0
    if oracle:
        res = brute_force_max_order(s, mu_sq)
        if not res.exact:
            report += [("oracle", f">= {res.size} (budget exhausted)")]
            _emit(report, as_json)
            sys.exit(EXIT_BUDGET)
        report.append(("oracle", res.size))
        agree = (
            result.lo == res.size
            if result.verdict == EXACT
            else result.lo <= res.size <= result.hi
        )
        report.append(("agreement", "AGREE" if agree else "DISAGREE"))
        if not agree:
            code = EXIT_FAILURE
    _emit(report, as_json)
    sys.exit(code)


# -- verify --------------------------------------------------------------------


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--mu2", "mu_sq", type=int, default=None,
              help="treat the file as a sign-matrix template for this mu^2")
@click.option("--json", "as_json", is_flag=True)
def verify(path, mu_sq, as_json):
    """Verify a template (sign-matrix, with --mu2) or a signed edge list."""
    text = open(path).read()
    report = [("command", f"verify {path}")]
    try:
        if mu_sq is not None:
            b = read_sign_matrix(text)
            t = BipartiteTemplate(B=b, mu_sq=mu_sq)
            if verify_template(t):
                claim = spectrum_check(t)
                report += [
                    ("valid", "yes"),
                    ("order", claim.n),
                    ("spectrum",
                     f"mu^{claim.mult_mu} 0^{claim.mult_zero} (-mu)^{claim.mult_neg_mu}"),
                ]
                g = assemble_graph(t)
            else:
                report.append(("valid", "no"))
                for problem in template_violations(t):
                    report.append(("violation", problem))
                _emit(report, as_json)
                sys.exit(EXIT_FAILURE)
        else:
            g = read_edge_list(text)
            report += [("valid", "yes"), ("order", g.n), ("edges", len(g.edges()))]
        params = cat.srg_check(g)
        report.append((
            "srg",
            f"({params.n},{params.r},{params.a},{params.b},{params.c})" if params else "none",
        ))
    except ValueError as e:
        click.echo(f"error: {e}")
        sys.exit(EXIT_INPUT)
    _emit(report, as_json)


# -- search --------------------------------------------------------------------


@main.command()
@click.option("--s", "s", type=int, required=True)
@click.option("--mu2", "mu_sq", type=int, required=True)
@click.option("--budget-ms", type=int, default=None)
@click.option("--emit-witness", type=click.Path(dir_okay=False), default=None)
@click.option("--json", "as_json", is_flag=True)
def search(s, mu_sq, budget_ms, emit_witness, as_json):
    """Brute-force oracle: exact maximum order by clique search."""
    if budget_ms is None:
        budget_ms = oracle_budget_ms()
    try:
        res = brute_force_max_order(s, mu_sq, time_budget_ms=budget_ms)
    except ValueError as e:
        click.echo(f"error: {e}")
        sys.exit(EXIT_INPUT)
    except BudgetExceeded as e:
        click.echo(f"error: {e}")
        sys.exit(EXIT_BUDGET)
    report = [
        ("command", f"search --s {s} --mu2 {mu_sq}"),
        ("oracle" if res.exact else "oracle-lower-bound", res.size),
        ("exact", "yes" if res.exact else "no"),
    ]
    if emit_witness:
        b = witness_matrix(s, mu_sq, res.witness)
        with open(emit_witness, "w") as f:
            f.write(write_sign_matrix(b))
        report.append(("wrote", emit_witness))
    _emit(report, as_json)
    if not res.exact:
        sys.exit(EXIT_BUDGET)


# -- catalog -------------------------------------------------------------------


@main.command("catalog")
@click.option("--list", "do_list", is_flag=True, default=True)
def catalog_cmd(do_list):
    """List the named graph families and their parameter schemas."""
    for name in sorted(cat.NAMED_FAMILIES):
        schema, _ = cat.NAMED_FAMILIES[name]
        click.echo(f"{name}: {schema}")


# -- reproduce -----------------------------------------------------------------

DEFAULT_MU_MAX = 8
DEFAULT_S_MAX = 12
DESK_SCALE_S = 12

CHARACTERIZATION_CASES = (
    # (mu^2, s, family name, params)
    (2, 2, "K22_negK2", ()),
    (3, 3, "star", (3,)),
    (4, 4, "K44_negC6", ()),
    (3, 4, "K44_minus_4K2_negP4K2", ()),
    (5, 6, "BR_signed", ()),
)


def _parse_grid(spec: str):
    """Grid spec: 'default', or 's<=N'.  'huge' maps past desk scale."""
    if spec == "default":
        return DEFAULT_MU_MAX, DEFAULT_S_MAX
    if spec == "huge":
        return DEFAULT_MU_MAX, 64
    if spec.startswith("s<="):
        try:
            return DEFAULT_MU_MAX, int(spec[3:])
        except ValueError:
            pass
    raise click.UsageError(f"bad grid spec {spec!r}: use 'default' or 's<=N'")


def _grid_cells(mu_max: int, s_max: int):
    return [
        (mu_sq, s)
        for mu_sq in range(1, mu_max + 1)
        for s in range(mu_sq, s_max + 1)
    ]


def _render_figure(rows, png_path: str):
    """Maximum order against s, one line per mu^2."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 5))
    by_mu: dict = {}
    for mu_sq, s, _verdict, _lo, _hi, oracle_n, _status in rows:
        by_mu.setdefault(mu_sq, []).append((s, oracle_n))
    for mu_sq in sorted(by_mu):
        pts = sorted(by_mu[mu_sq])
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                marker="o", markersize=3, label=f"$\\mu^2={mu_sq}$")
    ax.set_xlabel("star complement order s")
    ax.set_ylabel("maximum graph order n")
    ax.set_title("Maximum order with totally disconnected star complement")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)


@main.command()
@click.option("--grid", default="default", help="'default' or 's<=N'")
@click.option("--json", "as_json", is_flag=True)
@click.option("--out-prefix", default="reproduce_grid",
              help="prefix for the CSV and PNG artifacts")
def reproduce(grid, as_json, out_prefix):
    """Full formula-vs-oracle grid plus the extremal characterizations.

    Writes <prefix>.csv (delimited cells) and <prefix>.png (order-vs-s
    figure) alongside the line report.
    """
    mu_max, s_max = _parse_grid(grid)
    if s_max > DESK_SCALE_S:
        click.echo(f"error: grid up to s={s_max} exceeds the desk-scale budget "
                   f"(s <= {DESK_SCALE_S})")
        sys.exit(EXIT_BUDGET)
    start = time.monotonic()
    failures = 0
    rows = []
    for mu_sq, s in _grid_cells(mu_max, s_max):
        result = formula_max_order(s, mu_sq)
        oracle = brute_force_max_order(s, mu_sq)
        if not oracle.exact:
            click.echo(f"error: oracle budget exhausted at mu2={mu_sq} s={s}")
            sys.exit(EXIT_BUDGET)
        if result.verdict == EXACT:
            ok = result.lo == oracle.size
        else:
            ok = result.lo <= oracle.size <= result.hi
        failures += not ok
        rows.append((mu_sq, s, result.verdict, result.lo, result.hi,
                     oracle.size, "AGREE" if ok else "DISAGREE"))

    iso_rows = []
    for mu_sq, s, family, params in CHARACTERIZATION_CASES:
        if s > s_max:
            continue
        named = cat.build_named(family, *params)
        witness_graph = assemble_graph(formula_max_order(s, mu_sq).witness)
        cert = cat.switching_isomorphic(witness_graph, named)
        ok = cert is not None
        failures += not ok
        iso_rows.append((mu_sq, s, family, "ISOMORPHIC" if ok else "FAILED"))

    report = [("command", f"reproduce --grid {grid}"), ("cells", len(rows))]
    for mu_sq, s, verdict, lo, hi, oracle_n, status in rows:
        value = str(lo) if verdict == EXACT else f"[{lo},{hi}]"
        report.append(
            (f"cell mu2={mu_sq} s={s}", f"formula={verdict}:{value} oracle={oracle_n} {status}")
        )
    for mu_sq, s, family, status in iso_rows:
        report.append((f"characterization mu2={mu_sq} s={s}", f"{family} {status}"))
    report.append(("failures", failures))

    csv_path = f"{out_prefix}.csv"
    with open(csv_path, "w") as f:
        f.write("mu2,s,verdict,lo,hi,oracle,status\n")
        for row in rows:
            f.write(",".join(map(str, row)) + "\n")
    png_path = f"{out_prefix}.png"
    _render_figure(rows, png_path)
    report += [("wrote", csv_path), ("wrote", png_path)]
    _emit(report, as_json)
    click.echo(f"wall-time-seconds: {time.monotonic() - start:.1f}")
    sys.exit(EXIT_FAILURE if failures else 0)


if __name__ == "__main__":
    main()
