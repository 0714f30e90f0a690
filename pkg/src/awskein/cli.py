"""Command-line front end: verification suites, normal forms, Hilbert series and the braid action.

Exit codes are 0 when every selected check passes, 1 when a check fails and
2 on usage errors.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

REPORT_SCHEMA = "awskein-report/1"
SUITES = ("confluence", "compat", "aw", "iso", "quasiR", "braid", "hopf", "rea")


def _load_system(rules: str | None):
    from .rewrite import rules_from_json
    from .skein import golden_system

    if rules is None:
        return golden_system()
    return rules_from_json(Path(rules).read_text())


def _report(check: str, ok: bool, details: list, counters: dict, started: float) -> dict:
    details = [d if isinstance(d, str) else json.dumps(d, default=str, sort_keys=True) for d in details]
    if not ok and not details:
        details = ["check failed without a witness"]
    return {
        "check": check,
        "status": "pass" if ok else "fail",
        "details": details,
        "timing_ms": round((time.perf_counter() - started) * 1000),
        "counters": counters,
    }


def _suite_confluence(opts) -> dict:
    from .rewrite import check_confluence

    t = time.perf_counter()
    sys_ = _load_system(opts["rules"])
    r = check_confluence(sys_)
    counters = {"rules": len(sys_), "ambiguities": r["ambiguities"], "resolved": r["resolved"]}
    return _report("confluence", r["ok"], r["failures"], counters, t)


def _suite_compat(opts) -> dict:
    from .rewrite import check_compatibility, check_strategy_independence

    t = time.perf_counter()
    sys_ = _load_system(opts["rules"])
    c = check_compatibility(sys_)
    s = check_strategy_independence(sys_, samples=opts["sample"] or 1000)
    counters = {"rules": c["rules"], "violations": len(c["violations"]), "strategy_samples": s["samples"]}
    return _report("compat", c["ok"] and s["ok"], c["violations"] + s["failures"], counters, t)


def _suite_aw(opts) -> dict:
    from .tensor import verify_aw_commutators, verify_centralizer

    t = time.perf_counter()
    ns = (opts["n"],) if opts["n"] else (3, 4)
    details, counters, ok = [], {}, True
    for n in ns:
        r = verify_aw_commutators(n, opts["orientation"])
        c = verify_centralizer(n)
        ok = ok and r["ok"] and c["ok"]
        details += r["failures"] + c["failures"]
        counters[f"n{n}_commutator_pairs"] = r["checked"]
        counters[f"n{n}_commuting_pairs"] = r["commuting_checked"]
        counters[f"n{n}_centralizer_checks"] = c["checked"]
    counters["orientation"] = opts["orientation"]
    return _report("aw", ok, details, counters, t)


def _suite_iso(opts) -> dict:
    from .tensor import verify_iso_corpus, verify_iso_n3

    t = time.perf_counter()
    r4 = verify_iso_corpus()
    r3 = verify_iso_n3()
    counters = {"relations_verified": r4["checked"] + r3["checked"], "n4": r4["checked"], "n3": r3["checked"]}
    return _report("iso", r4["ok"] and r3["ok"], r4["failures"] + r3["failures"], counters, t)


def _suite_quasiR(opts) -> dict:
    from .tensor import verify_unbraiding

    t = time.perf_counter()
    r = verify_unbraiding(pairs=opts["sample"] or 200, order=opts["tmax"] or 6)
    counters = {k: r[k] for k in ("lambda_checked", "pairs_checked", "action_checked", "quasiR_order")}
    return _report("quasiR", r["ok"], r["failures"], counters, t)


def _suite_braid(opts) -> dict:
    from .braidaction import beta_on_generator, verify_braid_action, verify_inverse
    from .freealg import parse_expr

    t = time.perf_counter()
    r = verify_braid_action()
    inv = verify_inverse()
    spot = {
        "beta_1 s1 = s2": beta_on_generator(1, frozenset({1})) == parse_expr("S2"),
        "beta_2 s23 = s23": beta_on_generator(2, frozenset({2, 3})) == parse_expr("S23"),
        "beta_2 s1234 = s1234": beta_on_generator(2, frozenset({1, 2, 3, 4})) == parse_expr("S1234"),
    }
    details = r["failures"] + inv["failures"] + [k for k, v in spot.items() if not v]
    counters = {
        "well_defined_checked": r["well_defined_checked"],
        "braid_checked": r["braid_checked"],
        "far_checked": r["far_checked"],
        "inverse_checked": inv["checked"],
    }
    return _report("braid", r["ok"] and inv["ok"] and all(spot.values()), details, counters, t)


def _suite_hopf(opts) -> dict:
    from .tensor import verify_hopf

    t = time.perf_counter()
    r = verify_hopf(samples=opts["sample"] or 20)
    return _report("hopf", r["ok"], r["failures"], {"identities": r["checked"]}, t)


def _suite_rea(opts) -> dict:
    from .uqsl2 import verify_rea_image

    t = time.perf_counter()
    r = verify_rea_image()
    details = [f"{k}: {v}" for k, v in sorted(r.items()) if k != "ok" and v is not True and v != []]
    counters = {k: v for k, v in r.items() if isinstance(v, bool) and k != "ok"}
    return _report("rea", r["ok"], details, counters, t)


_RUNNERS = {name: globals()[f"_suite_{name}"] for name in SUITES}


def _dump(path: str, data) -> None:
    text = json.dumps(data, indent=2, default=str)
    if path == "-":
        click.echo(text)
    else:
        Path(path).write_text(text + "\n")


@click.group()
def main() -> None:
    """Exact computations for the skein algebra of the five-punctured sphere."""


@main.command()
@click.argument("suite", type=click.Choice(SUITES + ("all",)))
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the report as JSON ('-' for stdout).")
@click.option("--n", type=click.IntRange(3, 4), help="Tensor power for the aw suite (default: both 3 and 4).")
@click.option("--sample", type=click.IntRange(1), help="Random sample size for compat, quasiR and hopf.")
@click.option("--tmax", type=click.IntRange(0), help="Quasi-R order for the quasiR suite (default 6).")
@click.option("--rules", type=click.Path(exists=True, dir_okay=False), help="Import a rule set instead of the bundled one.")
@click.option("--export-rules", type=click.Path(dir_okay=False), help="Also write the rule set in use.")
@click.option("--orientation", type=click.Choice(["literal", "reversed"]), default="literal", show_default=True,
              help="Bracket orientation for the aw suite.")
def verify(suite, json_path, n, sample, tmax, rules, export_rules, orientation) -> None:
    """Run a verification suite and print one line per check."""
    opts = {"n": n, "sample": sample, "tmax": tmax, "rules": rules, "orientation": orientation}
    names = SUITES if suite == "all" else (suite,)
    reports = []
    for name in names:
        rep = _RUNNERS[name](opts)
        reports.append(rep)
        counters = " ".join(f"{k}={v}" for k, v in rep["counters"].items())
        click.echo(f"{rep['status'].upper():4} {name:<10} {rep['timing_ms']:>8} ms  {counters}")
        for d in rep["details"][:5]:
            click.echo(f"     {d}")
    if export_rules:
        from .rewrite import rules_to_json

        _dump(export_rules, rules_to_json(_load_system(rules)))
    ok = all(r["status"] == "pass" for r in reports)
    if json_path:
        _dump(json_path, {"schema": REPORT_SCHEMA, "status": "pass" if ok else "fail", "reports": reports})
    sys.exit(0 if ok else 1)


@main.command("normal-form")
@click.argument("expr")
@click.option("--rules", type=click.Path(exists=True, dir_okay=False), help="Import a rule set instead of the bundled one.")
@click.option("--strategy", type=click.Choice(["leftmost", "rightmost"]), default="leftmost", show_default=True)
def normal_form_cmd(expr, rules, strategy) -> None:
    """Print the normal form of EXPR, e.g. "S23*S12"."""
    from .freealg import ExprSyntaxError, parse_expr

    sys_ = _load_system(rules)
    try:
        x = parse_expr(expr, sys_.table)
    except (ExprSyntaxError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    click.echo(str(sys_.normal_form(x, strategy)))


@main.command()
@click.option("--n", type=click.IntRange(1), default=4, show_default=True, help="Number of tensor factors.")
@click.option("--tmax", type=click.IntRange(0), default=12, show_default=True)
@click.option("--route", type=click.Choice(["closed", "character", "convolution", "enumerated"]), default="closed",
              show_default=True)
@click.option("--rules", type=click.Path(exists=True, dir_okay=False), help="Rule set for the enumerated route.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the coefficients as a JSON array.")
def hilbert(n, tmax, route, rules, json_path) -> None:
    """Print the Hilbert series coefficients up to t^TMAX."""
    from . import hilbert as h

    if route == "closed":
        s = h.closed_form_h(n, tmax)
    elif route == "character":
        s = h.character_route(n, tmax, "bivariate")
    elif route == "convolution":
        s = h.character_route(n, tmax, "convolution")
    else:
        if n != 4:
            raise click.UsageError("the enumerated route exists only for n = 4")
        s = h.enumerated_series(_load_system(rules), tmax)
    coeffs = [str(c) for c in s.coeffs]
    for d, c in enumerate(coeffs):
        click.echo(f"{d:>3}  {c}")
    if json_path:
        _dump(json_path, [int(c) if c.lstrip("-").isdigit() else c for c in coeffs])


@main.command()
@click.option("--word", required=True, help='Braid word, e.g. "1 2 1"; negative entries are inverses.')
@click.option("--apply", "expr", required=True, help="Expression to act on, e.g. S134.")
def braid(word, expr) -> None:
    """Apply a braid word to an expression and print the normal form."""
    from .braidaction import InvalidBraidGenerator, beta_word
    from .freealg import ExprSyntaxError, parse_expr

    try:
        letters = [int(tok) for tok in word.replace(",", " ").split()]
        x = parse_expr(expr)
        click.echo(str(beta_word(letters, x)))
    except (ExprSyntaxError, InvalidBraidGenerator, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc


@main.group()
def rules() -> None:
    """Rule set import and export."""


@rules.command("export")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--complete", is_flag=True, help="Run the completion instead of using the bundled rule set.")
def rules_export(path, complete) -> None:
    """Write the rewriting system as JSON to PATH ('-' for stdout)."""
    from .rewrite import rules_to_json
    from .skein import build_skein_system, golden_system

    sys_ = build_skein_system() if complete else golden_system()
    _dump(path, rules_to_json(sys_))
    if path != "-":
        click.echo(f"wrote {len(sys_)} rules to {path}")


if __name__ == "__main__":
    main()
