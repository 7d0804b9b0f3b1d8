"""Command-line front end.

Exit codes: 0 when every assertion passes, 1 when any assertion fails, and
2 for malformed input (syntax, unresolved names, invalid homomorphisms).
"""

from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path

import click

from . import __version__
from .fileformat import (GRID_KEYS, LADDER_KEYS, AssertionDecl, FileFormatError,
                         grid_document, ladder_document, parse_diagram_file,
                         parse_json_subset)
from .genprop import SCHEMES, GenConfig, gen_ladder, gen_nine_grid
from .intlin import IntMatrix, smith_normal_form
from .report import ReportDocument, run_file

FORMATS = click.Choice(["text", "structured"])


def _emit(doc: ReportDocument, fmt: str) -> None:
    click.echo(doc.to_json() if fmt == "structured" else doc.to_text(), nl=False)
    sys.exit(doc.exit_code)


def _load(path: str):
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parse_diagram_file(text), None
    except FileFormatError as exc:
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        return None, ReportDocument(digest, None, error=exc)


def _format_option(f):
    return click.option("--format", "fmt", type=FORMATS, default="text", show_default=True,
                        help="text for people, structured for canonical JSON")(f)


def _jobs_option(f):
    return click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
                        help="worker processes for independent assertions")(f)


@click.group()
@click.version_option(__version__, prog_name="diagchase")
def main():
    """Verify commutative diagrams and diagram lemmas on concrete instances."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@_format_option
@_jobs_option
def check(file, fmt, jobs):
    """Run every assertion in FILE."""
    df, err = _load(file)
    _emit(err or run_file(df, jobs=jobs), fmt)


@main.group()
def lemma():
    """Run one lemma verifier on the instance in a file."""


def _select(df, kinds, keys, default_kind, extra):
    """Assertions of the given kinds, or one built from conventional names."""
    chosen = tuple(a for a in df.assertions if a.kind in kinds)
    if chosen:
        return chosen
    missing = [k for k in keys if k not in df.morphisms]
    if missing:
        raise FileFormatError(
            f"no {default_kind} assertion and no morphisms named {', '.join(missing)}", 1, 1)
    args = tuple((k, k) for k in keys) + tuple(extra.items())
    return (AssertionDecl(0, default_kind, args, None, 1, 1),)


def _override(a: AssertionDecl, kind: str, **opts) -> AssertionDecl:
    args = dict(a.args)
    args.update({k: v for k, v in opts.items() if v is not None})
    if kind == "short_five_trace":
        args.pop("mode", None)
    elif "mode" not in args:
        args["mode"] = "iso"
    return AssertionDecl(a.index, kind, tuple(args.items()), a.label, a.line, a.col)


@lemma.command("short-five")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(["monic", "epic", "iso"]), default=None,
              help="override the mode given in the file")
@click.option("--trace", is_flag=True, help="replay the pullback argument step by step")
@_format_option
@_jobs_option
def short_five(file, mode, trace, fmt, jobs):
    """Short five lemma on the ladder(s) in FILE."""
    df, err = _load(file)
    if err:
        _emit(err, fmt)
    try:
        chosen = _select(df, ("short_five", "short_five_trace"), LADDER_KEYS,
                         "short_five", {"mode": mode or "iso"})
    except FileFormatError as exc:
        _emit(ReportDocument(df.digest, df.category, error=exc), fmt)
    kind = "short_five_trace" if trace else "short_five"
    pending = tuple(_override(a, kind, mode=None if trace else mode) for a in chosen)
    _emit(run_file(df, jobs=jobs, assertions=pending), fmt)


@lemma.command("nine")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--direction", type=click.Choice(["top_from_bottom", "bottom_from_top"]),
              default=None, help="override the direction given in the file")
@_format_option
@_jobs_option
def nine(file, direction, fmt, jobs):
    """Nine lemma on the grid(s) in FILE."""
    df, err = _load(file)
    if err:
        _emit(err, fmt)
    try:
        chosen = _select(df, ("nine_lemma",), GRID_KEYS, "nine_lemma",
                         {"direction": direction or "bottom_from_top"})
    except FileFormatError as exc:
        _emit(ReportDocument(df.digest, df.category, error=exc), fmt)
    pending = tuple(AssertionDecl(a.index, a.kind,
                               tuple({**dict(a.args),
                                      **({"direction": direction} if direction else {})}.items()),
                               a.label, a.line, a.col) for a in chosen)
    _emit(run_file(df, jobs=jobs, assertions=pending), fmt)


@main.command()
@click.option("--scheme", type=click.Choice(SCHEMES), default="split_split", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--count", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--mode", type=click.Choice(["monic", "epic", "iso"]), default="iso",
              show_default=True)
@click.option("--kind", type=click.Choice(["ladder", "grid"]), default="ladder",
              show_default=True)
@click.option("--direction", type=click.Choice(["top_from_bottom", "bottom_from_top"]),
              default="bottom_from_top", show_default=True, help="grid direction")
@click.option("--max-rank", type=click.IntRange(min=0), default=2, show_default=True)
@click.option("--pool", default="2,3,4,8,9,0", show_default=True,
              help="comma-separated invariant factors to draw from")
def gen(scheme, seed, count, mode, kind, direction, max_rank, pool):
    """Emit COUNT random instances as diagram documents, one JSON per line."""
    try:
        factors = tuple(int(x) for x in pool.split(",") if x.strip())
        cfg = GenConfig(seed=seed, max_rank=max_rank, factor_pool=factors, scheme=scheme)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--pool") from None
    rng = cfg.rng()
    for _ in range(count):
        if kind == "ladder":
            doc = ladder_document(gen_ladder(cfg, mode, rng), mode)
        else:
            doc = grid_document(gen_nine_grid(cfg, rng, direction), direction)
        click.echo(json.dumps(doc, separators=(",", ":")))


@main.command()
@click.option("--matrix", "matrix_text", required=True,
              help='integer rows, for example "[[2,4],[6,8]]"')
@_format_option
def snf(matrix_text, fmt):
    """Smith normal form U A V = D of an integer matrix."""
    try:
        node = parse_json_subset(matrix_text)
        rows = node.plain()
        if (not isinstance(rows, list) or any(not isinstance(r, list) for r in rows)
                or any(type(x) is not int for r in rows for x in r)):
            raise FileFormatError("matrix must be a list of integer rows", node.line, node.col)
        if len({len(r) for r in rows}) > 1:
            raise FileFormatError("rows have different lengths", node.line, node.col)
    except FileFormatError as exc:
        click.echo(f"error at {exc.line}:{exc.col}: {exc.message}", err=True)
        sys.exit(2)
    a = IntMatrix.from_rows(rows, cols=len(rows[0]) if rows else 0)
    s = smith_normal_form(a)
    out = {"diagonal": list(s.diagonal), "rank": s.rank, "D": s.D.tolist(),
           "U": s.U.tolist(), "V": s.V.tolist()}
    if fmt == "structured":
        click.echo(json.dumps(out, indent=2))
    else:
        click.echo(f"diagonal: {out['diagonal']}  rank: {out['rank']}")
        for key in ("D", "U", "V"):
            click.echo(f"{key} = {out[key]}")


if __name__ == "__main__":
    main()
