"""Command-line front end: analyze states, classify discord, reproduce tables.

Exit codes: 0 success (and ZERO for classify), 1 NONZERO (classify), 2 parse
error, 3 validation error, 4 AMBIGUOUS (classify). Optimizer settings resolve
as flags > environment (DISCORDANT_SEED, DISCORDANT_RESTARTS,
DISCORDANT_THREADS) > defaults.
"""

from __future__ import annotations

import json
import os
import sys
import time
from dataclasses import asdict

import click
import numpy as np

from .correlations import (
    cerf_adami_conditional_entropy,
    conditional_entropy_after_measurement,
    entropy_of_eigenvalues,
    mutual_information,
)
from .demon import WorkLedger, work_ledger
from .discord import (
    DiscordReport,
    OptimizerConfig,
    ZeroDiscordVerdict,
    classify_zero_discord,
    bell_mixture_discord_closed_form,
    discord_d1_at,
    discord_d2_at,
    discord_d3,
    discord_d3_symmetric,
    optimize_discord,
)
from .documents import (
    FAMILIES,
    FAMILY_PARAMETERS,
    StateDocument,
    document_to_state,
    dumps_document,
    loads_document,
    state_to_document,
)
from .exceptions import DiscordantError, DocumentError
from .measurement import ProjectiveMeasurement, conditional_blocks
from .states import BipartiteState, bell_mixture, classical_classical_state, teahouse_ensemble

EXIT_NONZERO = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_AMBIGUOUS = 4

IDENTITY_TOL = 1e-7

CLOSED_FORM_NOTE = (
    "Bell-mixture closed form: D(a) = 1 + a*log2(a) + (1-a)*log2(1-a) = 1 - H2(a), "
    "which vanishes at a = 1/2 and matches the measurement optimizer; the sometimes "
    "transcribed variant 'a*log2(a) - (1-a)*log2(a) + 1' does not vanish at a = 1/2 "
    "and is not used."
)


def _parse_param(pair: str):
    if "=" not in pair:
        raise DocumentError(f"--param expects KEY=VALUE, got {pair!r}")
    key, _, raw = pair.partition("=")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip(), value


def _resolve_document(input_path, family, params) -> StateDocument:
    if (input_path is None) == (family is None):
        raise DocumentError("provide exactly one of --input or --family")
    if input_path is not None:
        if params:
            raise DocumentError("--param only applies together with --family")
        text = sys.stdin.read() if input_path == "-" else open(input_path, "r", encoding="utf-8").read()
        return loads_document(text)
    parameters = dict(_parse_param(pair) for pair in params)
    if family not in FAMILIES:
        raise DocumentError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")
    return StateDocument(family=family, parameters=parameters)


def _load_state(input_path, family, params) -> tuple[BipartiteState, StateDocument]:
    document = _resolve_document(input_path, family, params)
    return document_to_state(document), document


def _fail(error: Exception, code: int):
    click.echo(f"error: {error}", err=True)
    sys.exit(code)


def _guarded_load(input_path, family, params):
    try:
        return _load_state(input_path, family, params)
    except (DocumentError, OSError) as error:
        _fail(error, EXIT_PARSE)
    except DiscordantError as error:
        _fail(error, EXIT_VALIDATION)


def optimizer_options(command):
    command = click.option(
        "--seed", type=int, default=0, envvar="DISCORDANT_SEED", show_default=True,
        help="Seed for the optimizer restarts.",
    )(command)
    command = click.option(
        "--restarts", type=int, default=20, envvar="DISCORDANT_RESTARTS", show_default=True,
        help="Random restarts (the eigenbasis seed is added on top).",
    )(command)
    command = click.option(
        "--tol", type=float, default=1e-9, show_default=True,
        help="Simplex value tolerance.",
    )(command)
    command = click.option(
        "--threads", type=int, default=None, envvar="DISCORDANT_THREADS",
        help="Optimizer restart parallelism [default: machine parallelism].",
    )(command)
    return command


def input_options(command):
    command = click.option("--input", "input_path", type=str, default=None,
                           help="State document (JSON file, or '-' for stdin).")(command)
    command = click.option("--family", type=str, default=None,
                           help=f"Named family: {', '.join(FAMILIES)}.")(command)
    command = click.option("--param", "params", multiple=True,
                           help="Family parameter KEY=VALUE (JSON values).")(command)
    return command


def _make_config(seed, restarts, tol, threads) -> OptimizerConfig:
    if threads is None:
        threads = os.cpu_count() or 1
    return OptimizerConfig(
        restarts=restarts, simplex_tolerance=tol, seed=seed, threads=max(1, threads)
    )


def _matrix_pairs(matrix: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix)]


def _measurement_payload(m: ProjectiveMeasurement | None):
    if m is None:
        return None
    return {"subsystem": m.subsystem, "basis": _matrix_pairs(m.basis)}


def _report_payload(report: DiscordReport) -> dict:
    diagnostics = asdict(report.diagnostics)
    diagnostics["best_per_restart"] = list(diagnostics["best_per_restart"])
    return {
        "measure": report.measure,
        "value": report.value,
        "j_value": report.j_value,
        "optimal_measurement": _measurement_payload(report.optimal_measurement),
        "diagnostics": diagnostics,
    }


def _verdict_payload(verdict: ZeroDiscordVerdict) -> dict:
    return {
        "verdict": verdict.verdict,
        "commutator_norm": verdict.commutator_norm,
        "residual_discord": verdict.residual_discord,
        "method": verdict.method,
        "witness": _measurement_payload(verdict.witness),
    }


def _ledger_payload(ledger: WorkLedger) -> dict:
    return {
        "kT": ledger.kt,
        "w_plus": ledger.w_plus,
        "w_local": ledger.w_local,
        "w2": ledger.w2,
        "w3": ledger.w3,
        "delta_L": ledger.delta_l,
        "delta_2": ledger.delta_2,
        "delta_3": ledger.delta_3,
        "measurement_w2": _measurement_payload(ledger.measurement_w2),
    }


def _outcome_probabilities(state: BipartiteState, m: ProjectiveMeasurement) -> np.ndarray:
    blocks = conditional_blocks(state.rho, state.dims, m.basis, m.subsystem)
    return np.einsum("kii->k", blocks).real


def _analysis_report(state: BipartiteState, document: StateDocument, config: OptimizerConfig) -> dict:
    started = time.perf_counter()
    s_a = entropy_of_eigenvalues(np.linalg.eigvalsh(state.marginal("A")))
    s_b = entropy_of_eigenvalues(np.linalg.eigvalsh(state.marginal("B")))
    s_ab = entropy_of_eigenvalues(np.linalg.eigvalsh(state.rho))
    mutual = mutual_information(state)

    d1 = optimize_discord("D1", state, side="A", config=config)
    d2 = optimize_discord("D2", state, side="A", config=config)
    d3 = discord_d3(state, side="A")
    d3sym = discord_d3_symmetric(state)
    verdicts = {
        "A": classify_zero_discord(state, "A"),
        "B": classify_zero_discord(state, "B"),
    }
    ledger = work_ledger(state, kt=1.0, config=config)

    warnings: list[str] = []

    def _identity(name: str, left: float, right: float) -> dict:
        residual = abs(left - right)
        if residual > IDENTITY_TOL:
            warnings.append(f"WARN identity {name} residual {residual:.3e} exceeds {IDENTITY_TOL:.1e}")
        return {"left": left, "right": right, "residual": residual, "tolerance": IDENTITY_TOL}

    check = d2.optimal_measurement
    h_check = entropy_of_eigenvalues(_outcome_probabilities(state, check))
    identities = {
        "d1_vs_d2_at_optimal_basis": _identity(
            "d1_vs_d2_at_optimal_basis",
            discord_d1_at(state, check).value,
            discord_d2_at(state, check) - (h_check - s_a),
        ),
        "conditional_operator_entropy": _identity(
            "conditional_operator_entropy",
            cerf_adami_conditional_entropy(state),
            conditional_entropy_after_measurement(state, d1.optimal_measurement)
            - discord_d1_at(state, d1.optimal_measurement).value,
        ),
        "work_vs_mutual_information": _identity(
            "work_vs_mutual_information", ledger.delta_l, ledger.kt * mutual
        ),
        "work_vs_one_way_deficit": _identity(
            "work_vs_one_way_deficit", ledger.delta_2, ledger.kt * d2.value
        ),
    }

    notes = []
    if document.is_family and document.family == "bell_mixture":
        a = float(document.parameters.get("a"))
        notes.append(CLOSED_FORM_NOTE)
        notes.append(f"closed-form discord at a={a}: {bell_mixture_discord_closed_form(a)!r}")

    report = {
        "state": {
            "dims": list(state.dims),
            "purity": state.purity(),
            "spectrum_ab": [float(v) for v in np.linalg.eigvalsh(state.rho)],
            "spectrum_a": [float(v) for v in np.linalg.eigvalsh(state.marginal("A"))],
            "spectrum_b": [float(v) for v in np.linalg.eigvalsh(state.marginal("B"))],
        },
        "entropies": {"s_a": s_a, "s_b": s_b, "s_ab": s_ab, "mutual_information": mutual},
        "discord": {
            "d1": _report_payload(d1),
            "d2": _report_payload(d2),
            "d3": _report_payload(d3),
            "d3sym": _report_payload(d3sym),
        },
        "classification": {side: _verdict_payload(v) for side, v in verdicts.items()},
        "demon": _ledger_payload(ledger),
        "identities": identities,
        "notes": notes,
        "warnings": warnings,
        "settings": {
            "seed": config.seed,
            "restarts": config.restarts,
            "tolerance": config.simplex_tolerance,
            "threads": config.threads,
        },
    }
    report["_timing_seconds"] = time.perf_counter() - started
    return report


def _echo_json(payload) -> None:
    # Wall-clock fields are stripped so identical seeds and flags give
    # byte-identical output.
    cleaned = {k: v for k, v in payload.items() if not k.startswith("_")} if isinstance(payload, dict) else payload
    click.echo(json.dumps(cleaned, indent=2, sort_keys=True))


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def _render_analysis(report: dict) -> None:
    dims = report["state"]["dims"]
    click.echo(f"state: dims {dims[0]}x{dims[1]}, purity {_fmt(report['state']['purity'])}")
    e = report["entropies"]
    click.echo(
        f"entropies: S_A {_fmt(e['s_a'])}  S_B {_fmt(e['s_b'])}  "
        f"S_AB {_fmt(e['s_ab'])}  I {_fmt(e['mutual_information'])}"
    )
    d = report["discord"]
    click.echo(
        "discord:   D1 " + _fmt(d["d1"]["value"]) + "  D2 " + _fmt(d["d2"]["value"])
        + "  D3 " + _fmt(d["d3"]["value"]) + "  D3sym " + _fmt(d["d3sym"]["value"])
    )
    for side in ("A", "B"):
        v = report["classification"][side]
        extra = "" if v["residual_discord"] is None else f", residual {v['residual_discord']:.3e}"
        click.echo(
            f"classify {side}: {v['verdict']} via {v['method']} "
            f"(commutator {v['commutator_norm']:.3e}{extra})"
        )
    w = report["demon"]
    click.echo(
        f"demon (kT={w['kT']}): W+ {_fmt(w['w_plus'])}  W_L {_fmt(w['w_local'])}  "
        f"W2 {_fmt(w['w2'])}  W3 {_fmt(w['w3'])}"
    )
    click.echo(
        f"           dL {_fmt(w['delta_L'])}  d2 {_fmt(w['delta_2'])}  d3 {_fmt(w['delta_3'])}"
    )
    for warning in report["warnings"]:
        click.echo(warning)
    for note in report["notes"]:
        click.echo(f"note: {note}")
    click.echo(f"elapsed: {report['_timing_seconds']:.2f} s")


@click.group()
def main() -> None:
    """Correlation and discord analysis for bipartite quantum states."""


@main.command()
@input_options
@optimizer_options
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def analyze(input_path, family, params, seed, restarts, tol, threads, as_json):
    """Full report: entropies, discords, classification, work ledger."""
    state, document = _guarded_load(input_path, family, params)
    config = _make_config(seed, restarts, tol, threads)
    report = _analysis_report(state, document, config)
    if as_json:
        _echo_json(report)
    else:
        _render_analysis(report)


@main.command()
@input_options
@click.option("--side", type=click.Choice(["A", "B"], case_sensitive=False), default="A",
              show_default=True, help="Subsystem to test.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def classify(input_path, family, params, side, as_json):
    """Zero-discord test; exit 0 ZERO, 1 NONZERO, 4 AMBIGUOUS."""
    state, _ = _guarded_load(input_path, family, params)
    verdict = classify_zero_discord(state, side.upper())
    if as_json:
        _echo_json(_verdict_payload(verdict))
    else:
        residual = "n/a" if verdict.residual_discord is None else f"{verdict.residual_discord:.6e}"
        click.echo(
            f"{verdict.verdict} (side {side.upper()}, method {verdict.method}, "
            f"commutator norm {verdict.commutator_norm:.6e}, residual discord {residual})"
        )
    if verdict.verdict == "NONZERO":
        sys.exit(EXIT_NONZERO)
    if verdict.verdict == "AMBIGUOUS":
        sys.exit(EXIT_AMBIGUOUS)


@main.command(name="discord")
@input_options
@optimizer_options
@click.option("--measure", type=click.Choice(["D1", "D2", "D3", "D3SYM"], case_sensitive=False),
              default="D1", show_default=True)
@click.option("--side", type=click.Choice(["A", "B"], case_sensitive=False), default="A",
              show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def discord_command(input_path, family, params, seed, restarts, tol, threads, measure, side, as_json):
    """Single discord measure with optimizer diagnostics."""
    state, _ = _guarded_load(input_path, family, params)
    config = _make_config(seed, restarts, tol, threads)
    measure = measure.upper()
    if measure in ("D1", "D2"):
        report = optimize_discord(measure, state, side=side.upper(), config=config)
    elif measure == "D3":
        report = discord_d3(state, side=side.upper())
    else:
        report = discord_d3_symmetric(state)
    if as_json:
        _echo_json(_report_payload(report))
    else:
        click.echo(f"{report.measure} = {_fmt(report.value)} bits (J = {_fmt(report.j_value)})")
        if report.diagnostics.degenerate_marginal:
            click.echo("note: measured marginal is degenerate; eigenbasis fixed by convention")
            if report.diagnostics.restricted_infimum is not None:
                click.echo(
                    f"      restricted-basis infimum {_fmt(report.diagnostics.restricted_infimum)}"
                )


@main.command()
@input_options
@optimizer_options
@click.option("--kt", type=float, default=1.0, show_default=True, help="Energy unit kT.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def demon(input_path, family, params, seed, restarts, tol, threads, kt, as_json):
    """Work-extraction ledger for the four engine scenarios."""
    state, _ = _guarded_load(input_path, family, params)
    config = _make_config(seed, restarts, tol, threads)
    try:
        ledger = work_ledger(state, kt=kt, config=config)
    except DiscordantError as error:
        _fail(error, EXIT_VALIDATION)
    if as_json:
        _echo_json(_ledger_payload(ledger))
    else:
        click.echo(
            f"W+ {_fmt(ledger.w_plus)}  W_L {_fmt(ledger.w_local)}  "
            f"W2 {_fmt(ledger.w2)}  W3 {_fmt(ledger.w3)}  (kT={ledger.kt})"
        )
        click.echo(
            f"dL {_fmt(ledger.delta_l)}  d2 {_fmt(ledger.delta_2)}  d3 {_fmt(ledger.delta_3)}"
        )


def _table1_rows(a: float, config: OptimizerConfig) -> list[dict]:
    rows = []
    teahouse_equal = teahouse_ensemble().density_matrix()
    rows.append({
        "states": "9 teahouse states, equal weights",
        "d1_a": optimize_discord("D1", teahouse_equal, "A", config).value,
        "d1_b": optimize_discord("D1", teahouse_equal, "B", config).value,
        "locally_measurable": "no",
        "notes": [],
    })
    biorthogonal = classical_classical_state(np.diag([0.5, 0.5]))
    rows.append({
        "states": "2 product bi-orthogonal states",
        "d1_a": optimize_discord("D1", biorthogonal, "A", config).value,
        "d1_b": optimize_discord("D1", biorthogonal, "B", config).value,
        "locally_measurable": "yes",
        "notes": [],
    })
    entangled = bell_mixture(a)
    rows.append({
        "states": f"2 entangled orthogonal states (Bell mixture, a={a})",
        "d1_a": optimize_discord("D1", entangled, "A", config).value,
        "d1_b": None,
        "locally_measurable": "yes",
        "notes": [
            f"closed form 1 - H2(a) = {bell_mixture_discord_closed_form(a)!r}",
            CLOSED_FORM_NOTE,
        ],
    })
    doubled = np.full(9, 1 / 11)
    doubled[6] = doubled[8] = 2 / 11
    teahouse_doubled = teahouse_ensemble(doubled).density_matrix()
    rows.append({
        "states": "9 teahouse states, psi7/psi9 weights doubled",
        "d1_a": optimize_discord("D1", teahouse_doubled, "A", config).value,
        "d1_b": None,
        "locally_measurable": "no",
        "notes": [],
    })
    return rows


@main.command()
@optimizer_options
@click.option("--param", "params", multiple=True, help="Row parameter, e.g. a=0.3.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def table1(seed, restarts, tol, threads, params, as_json):
    """Local measurability vs. discord: recompute the discord column.

    The locally-measurable column is cited from prior literature, not computed.
    """
    try:
        parameters = dict(_parse_param(pair) for pair in params)
        a = float(parameters.pop("a", 0.25))
        if parameters:
            raise DocumentError(f"unknown table parameters: {sorted(parameters)}")
    except (TypeError, ValueError) as error:
        _fail(error, EXIT_PARSE)
    config = _make_config(seed, restarts, tol, threads)
    rows = _table1_rows(a, config)
    if as_json:
        _echo_json({
            "rows": rows,
            "locally_measurable_source": "cited from prior literature, not computed",
        })
        return
    click.echo(f"{'states':<50} {'discord':<24} locally measurable (cited)")
    for row in rows:
        if row["d1_b"] is None:
            discord_text = f"D1^A = {_fmt(row['d1_a'])}"
        else:
            discord_text = f"D^A = {_fmt(row['d1_a'])}, D^B = {_fmt(row['d1_b'])}"
        click.echo(f"{row['states']:<50} {discord_text:<24} {row['locally_measurable']}")
    for row in rows:
        for note in row["notes"]:
            click.echo(f"note: {note}")


@main.group()
def states() -> None:
    """List the named state families or emit their documents."""


@states.command("list")
def states_list() -> None:
    """Show families and their parameters."""
    for name in FAMILIES:
        click.echo(f"{name:<22} {FAMILY_PARAMETERS[name]}")


@states.command("emit")
@click.argument("family", type=click.Choice(list(FAMILIES)))
@click.option("--param", "params", multiple=True, help="Family parameter KEY=VALUE.")
@click.option("--explicit", is_flag=True, help="Materialize the density matrix.")
@click.option("-o", "--output", type=str, default=None, help="Write to a file instead of stdout.")
def states_emit(family, params, explicit, output):
    """Emit a state document for FAMILY."""
    try:
        parameters = dict(_parse_param(pair) for pair in params)
        document = StateDocument(family=family, parameters=parameters)
        if explicit:
            document = state_to_document(document_to_state(document))
        text = dumps_document(document)
    except DocumentError as error:
        _fail(error, EXIT_PARSE)
    except DiscordantError as error:
        _fail(error, EXIT_VALIDATION)
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        click.echo(text)


if __name__ == "__main__":
    main()
