"""Execute the assertions of a diagram file and render the results."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any

from . import __version__, abcat
from .diagram import (Check, Diagram, NineGrid, SesLadder, VerificationReport,
                      check_commutes, short_five_trace, verify_nine_lemma, verify_short_five)
from .errors import DiagChaseError, InputError
from .fgab import FGAB, FgGroup, make_hom
from .fileformat import (GRID_KEYS, LADDER_KEYS, AssertionDecl, DiagramFile,
                         FileFormatError)
from .vecfp import VecFp, make_map

TOOL = "diagchase"
EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass(frozen=True)
class Instance:
    """Category-level objects and morphisms built from a parsed file."""
    cat: abcat.AbelianCategory
    objects: dict[str, Any]
    morphisms: dict[str, Any]
    endpoints: dict[str, tuple[str, str]]


def build_instance(df: DiagramFile) -> Instance:
    """Validate every object and morphism in its category.

    Raises :class:`FileFormatError` located at the offending declaration.
    """
    try:
        cat = FGAB if df.category == "fgab" else VecFp(df.prime)
    except InputError as exc:
        raise FileFormatError(str(exc), 1, 1) from None
    objects = {}
    for name, o in df.objects.items():
        try:
            objects[name] = FgGroup(o.value) if df.category == "fgab" else cat.space(o.value)
        except InputError as exc:
            raise FileFormatError(f"object {name!r}: {exc}", o.line, o.col) from None
    morphisms = {}
    build = make_hom if df.category == "fgab" else make_map
    for name, m in df.morphisms.items():
        try:
            morphisms[name] = build(objects[m.src], objects[m.dst], [list(r) for r in m.rows])
        except InputError as exc:
            raise FileFormatError(f"morphism {name!r}: {exc}", m.line, m.col) from None
    endpoints = {name: (m.src, m.dst) for name, m in df.morphisms.items()}
    return Instance(cat, objects, morphisms, endpoints)


def evaluate(inst: Instance, a: AssertionDecl) -> VerificationReport:
    """Run one assertion; raises :class:`InputError` for ill-formed shapes."""
    cat, mor = inst.cat, inst.morphisms
    args = dict(a.args)
    if a.kind == "commutes":
        names = args["morphisms"] or tuple(mor)
        arrows = {n: (*inst.endpoints[n], mor[n]) for n in names}
        return check_commutes(Diagram(cat, inst.objects, arrows))
    if a.kind in ("exact_at", "short_exact"):
        f, g = mor[args["f"]], mor[args["g"]]
        if not cat.object_equal(cat.codomain(f), cat.domain(g)):
            raise InputError(f"{args['f']} and {args['g']} are not composable")
        if a.kind == "exact_at":
            ok = abcat.is_exact_at(cat, f, g)
            return VerificationReport("exact at", conclusions=(
                Check("image f = kernel g", ok, None if ok else "image f != kernel g"),))
        v = abcat.is_short_exact(cat, f, g)
        return VerificationReport("short exact", conclusions=(
            Check("short exact", v.exact, v.diagnostic),))
    if a.kind in ("short_five", "short_five_trace"):
        ladder = SesLadder(cat, **{k: mor[args[k]] for k in LADDER_KEYS})
        if a.kind == "short_five":
            return verify_short_five(ladder, args["mode"])
        return short_five_trace(ladder)
    grid = NineGrid(cat, **{k: mor[args[k]] for k in GRID_KEYS})
    return verify_nine_lemma(grid, args["direction"])


@dataclass(frozen=True)
class AssertionResult:
    index: int
    kind: str
    label: str | None
    report: VerificationReport

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"index": self.index + 1, "kind": self.kind}
        if self.label is not None:
            d["label"] = self.label
        d["passed"] = self.passed
        d["report"] = self.report.to_dict()
        return d


@dataclass(frozen=True)
class ReportDocument:
    input_sha256: str
    category: str | None
    results: tuple[AssertionResult, ...] = ()
    error: FileFormatError | None = None

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if all(r.passed for r in self.results) else "fail"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "error": EXIT_INPUT}[self.verdict]

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"tool": TOOL, "version": __version__,
                             "input_sha256": self.input_sha256,
                             "category": self.category, "verdict": self.verdict}
        if self.error is not None:
            d["error"] = {"line": self.error.line, "column": self.error.col,
                          "message": self.error.message}
        else:
            d["assertions"] = [r.to_dict() for r in self.results]
        return d

    def to_json(self) -> str:
        """Canonical rendering: fixed key order, two-space indent, final newline."""
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"{TOOL} {__version__}  category={self.category}  "
                 f"sha256={self.input_sha256[:16]}"]
        if self.error is not None:
            lines.append(f"error at {self.error.line}:{self.error.col}: {self.error.message}")
        for r in self.results:
            head = f"[{r.index + 1}] {r.kind}"
            if r.label:
                head += f" ({r.label})"
            lines.append(f"{head}: {'PASS' if r.passed else 'FAIL'}")
            for section, checks in (("hypothesis", r.report.hypotheses),
                                    ("step", r.report.trace),
                                    ("conclusion", r.report.conclusions)):
                for c in checks:
                    mark = "ok  " if c.passed else "FAIL"
                    extra = f"  ({c.detail})" if c.detail else ""
                    lines.append(f"    {mark} {section}: {c.name}{extra}")
        lines.append(f"verdict: {self.verdict.upper()}")
        return "\n".join(lines) + "\n"


def _located(inst: Instance, a: AssertionDecl) -> VerificationReport:
    try:
        return evaluate(inst, a)
    except DiagChaseError as exc:
        raise FileFormatError(f"assertion {a.index + 1} ({a.kind}): {exc}",
                              a.line, a.col) from None


def _run_one(df: DiagramFile, a: AssertionDecl) -> VerificationReport:
    return _located(build_instance(df), a)


def run_file(df: DiagramFile, jobs: int = 1,
             assertions: tuple[AssertionDecl, ...] | None = None) -> ReportDocument:
    """Validate the instance, then run assertions in order.

    ``jobs > 1`` evaluates assertions in worker processes; results are
    collected in file order, so the report does not depend on ``jobs``.
    """
    pending = df.assertions if assertions is None else assertions
    try:
        inst = build_instance(df)
        if jobs > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                reports = list(pool.map(_run_one, [df] * len(pending), pending))
        else:
            reports = [_located(inst, a) for a in pending]
    except FileFormatError as exc:
        return ReportDocument(df.digest, df.category, error=exc)
    results = tuple(AssertionResult(a.index, a.kind, a.label, r) for a, r in zip(pending, reports))
    return ReportDocument(df.digest, df.category, results)
