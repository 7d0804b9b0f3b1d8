"""Diagrams, commutativity, and diagram-lemma verifiers.

Verifiers never assume their hypotheses.  Each hypothesis is evaluated on the
concrete instance and reported; the conclusion is only evaluated once every
hypothesis passes.  A report therefore checks an *instance* of a lemma, and a
lemma counterexample would show up as a report whose hypotheses all pass but
whose conclusion fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from . import abcat
from .abcat import AbelianCategory, chain, is_epic, is_monic, opposite_instance
from .errors import DiagChaseError, InputError

MODES = ("monic", "epic", "iso")
DIRECTIONS = ("top_from_bottom", "bottom_from_top")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str | None = None

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.detail is not None:
            d["detail"] = self.detail
        return d


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    hypotheses: tuple[Check, ...] = ()
    conclusions: tuple[Check, ...] = ()
    trace: tuple[Check, ...] = ()

    @property
    def hypotheses_passed(self) -> bool:
        return all(c.passed for c in self.hypotheses)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.hypotheses + self.conclusions + self.trace)

    @property
    def failed_hypotheses(self) -> list[str]:
        return [c.name for c in self.hypotheses if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "hypotheses": [c.to_dict() for c in self.hypotheses],
            "conclusions": [c.to_dict() for c in self.conclusions],
            "trace": [c.to_dict() for c in self.trace],
        }


# ---------------------------------------------------------------- diagrams


@dataclass(frozen=True)
class Diagram:
    """Named objects and arrows in one category.

    ``arrows`` maps a name to ``(source name, target name, morphism)``.
    """
    cat: AbelianCategory
    objects: Mapping[str, Any]
    arrows: Mapping[str, tuple[str, str, Any]]

    def __post_init__(self):
        for name, (s, t, m) in self.arrows.items():
            for end in (s, t):
                if end not in self.objects:
                    raise InputError(f"arrow {name!r} refers to undeclared object {end!r}")
            self.cat.check_morphism(m)
            if not (self.cat.object_equal(self.cat.domain(m), self.objects[s])
                    and self.cat.object_equal(self.cat.codomain(m), self.objects[t])):
                raise InputError(f"arrow {name!r} does not run from {s!r} to {t!r}")


def _adjacency(d: Diagram) -> dict[str, list[tuple[str, str]]]:
    adj: dict[str, list[tuple[str, str]]] = {o: [] for o in d.objects}
    for name, (s, t, m) in d.arrows.items():
        if s == t:
            if d.cat.morphism_equal(m, d.cat.identity(d.objects[s])):
                continue
            raise InputError(f"cyclic diagram: arrow {name!r} is a non-identity loop")
        adj[s].append((name, t))
    # cycle detection
    state: dict[str, int] = {}

    def visit(o, stack):
        state[o] = 1
        for name, t in adj[o]:
            if state.get(t) == 1:
                raise InputError(f"cyclic diagram: cycle through {' -> '.join(stack + [t])}")
            if t not in state:
                visit(t, stack + [t])
        state[o] = 2

    for o in d.objects:
        if o not in state:
            visit(o, [o])
    return adj


def _paths(adj, start):
    """All directed paths out of ``start`` as (target, [arrow names])."""
    out = []

    def walk(o, names):
        for name, t in adj[o]:
            out.append((t, names + [name]))
            walk(t, names + [name])

    walk(start, [])
    return out


def _path_label(names: list[str]) -> str:
    return ".".join(reversed(names))


def check_commutes(d: Diagram) -> VerificationReport:
    """Compare every pair of parallel paths; one check per pair."""
    adj = _adjacency(d)
    checks = []
    for src in d.objects:
        by_target: dict[str, list[list[str]]] = {}
        for t, names in _paths(adj, src):
            by_target.setdefault(t, []).append(names)
        for t in d.objects:
            paths = by_target.get(t, [])
            composed = [chain(d.cat, *[d.arrows[n][2] for n in reversed(p)]) for p in paths]
            for i in range(len(paths)):
                for j in range(i + 1, len(paths)):
                    ok = d.cat.morphism_equal(composed[i], composed[j])
                    checks.append(Check(
                        f"{_path_label(paths[i])} = {_path_label(paths[j])}", ok,
                        None if ok else f"paths {src} -> {t} differ"))
    return VerificationReport("commutes", conclusions=tuple(checks))


# ---------------------------------------------------------------- ladders


@dataclass(frozen=True)
class SesLadder:
    """Two rows ``A -f-> B -g-> C`` over ``A' -f'-> B' -g'-> C'`` joined by
    ``α, β, γ``."""
    cat: AbelianCategory
    f: Any
    g: Any
    f_prime: Any
    g_prime: Any
    alpha: Any
    beta: Any
    gamma: Any

    def __post_init__(self):
        c = self.cat
        for m in (self.f, self.g, self.f_prime, self.g_prime,
                  self.alpha, self.beta, self.gamma):
            c.check_morphism(m)
        eq = c.object_equal
        pairs = [
            ("A", c.domain(self.f), c.domain(self.alpha)),
            ("B", c.codomain(self.f), c.domain(self.g)),
            ("B", c.codomain(self.f), c.domain(self.beta)),
            ("C", c.codomain(self.g), c.domain(self.gamma)),
            ("A'", c.codomain(self.alpha), c.domain(self.f_prime)),
            ("B'", c.codomain(self.f_prime), c.domain(self.g_prime)),
            ("B'", c.codomain(self.f_prime), c.codomain(self.beta)),
            ("C'", c.codomain(self.g_prime), c.codomain(self.gamma)),
        ]
        for label, x, y in pairs:
            if not eq(x, y):
                raise InputError(f"ladder endpoints inconsistent at {label}")

    def diagram(self) -> Diagram:
        c = self.cat
        objs = {"A": c.domain(self.f), "B": c.domain(self.g), "C": c.codomain(self.g),
                "A'": c.domain(self.f_prime), "B'": c.domain(self.g_prime),
                "C'": c.codomain(self.g_prime)}
        arrows = {"f": ("A", "B", self.f), "g": ("B", "C", self.g),
                  "f'": ("A'", "B'", self.f_prime), "g'": ("B'", "C'", self.g_prime),
                  "alpha": ("A", "A'", self.alpha), "beta": ("B", "B'", self.beta),
                  "gamma": ("C", "C'", self.gamma)}
        return Diagram(c, objs, arrows)


def _has_property(cat, m, mode):
    if mode == "monic":
        return is_monic(cat, m)
    if mode == "epic":
        return is_epic(cat, m)
    return abcat.classify_morphism(cat, m).iso


def _row_check(cat, name, f, g):
    v = abcat.is_short_exact(cat, f, g)
    return Check(name, v.exact, v.diagnostic)


def _square_check(cat, name, left, right):
    return Check(name, cat.morphism_equal(left, right))


def _hypothesis_names(mode: str) -> list[str]:
    return ["top row short exact", "bottom row short exact",
            "left square commutes: f' alpha = beta f",
            "right square commutes: g' beta = gamma g",
            f"alpha {mode}", f"gamma {mode}"]


def _ladder_hypotheses(l: SesLadder, mode: str) -> list[Check]:
    c = l.cat
    top, bottom, left, right, a_name, c_name = _hypothesis_names(mode)
    return [
        _row_check(c, top, l.f, l.g),
        _row_check(c, bottom, l.f_prime, l.g_prime),
        _square_check(c, left, c.compose(l.f_prime, l.alpha), c.compose(l.beta, l.f)),
        _square_check(c, right, c.compose(l.g_prime, l.beta), c.compose(l.gamma, l.g)),
        Check(a_name, _has_property(c, l.alpha, mode)),
        Check(c_name, _has_property(c, l.gamma, mode)),
    ]


def verify_short_five(l: SesLadder, mode: str = "iso") -> VerificationReport:
    """Check one instance of the short five lemma in the given mode."""
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}, got {mode!r}")
    hyps = _ladder_hypotheses(l, mode)
    subject = f"short five ({mode})"
    if not all(h.passed for h in hyps):
        return VerificationReport(subject, tuple(hyps))
    concl = Check(f"beta {mode}", _has_property(l.cat, l.beta, mode))
    return VerificationReport(subject, tuple(hyps), (concl,))


_DUAL_NAMES = {
    "top row short exact": "bottom row short exact",
    "bottom row short exact": "top row short exact",
    "left square commutes: f' alpha = beta f": "right square commutes: g' beta = gamma g",
    "right square commutes: g' beta = gamma g": "left square commutes: f' alpha = beta f",
    "alpha monic": "gamma epic",
    "gamma monic": "alpha epic",
    "beta monic": "beta epic",
}
_DUAL_DETAILS = {"f not monic": "g not epic", "g not epic": "f not monic"}


def reversed_ladder(l: SesLadder) -> SesLadder:
    """The same ladder read in the opposite category.

    Rows run ``C' -> B' -> A'`` on top and ``C -> B -> A`` below, with
    ``γ, β, α`` as the verticals.
    """
    return SesLadder(opposite_instance(l.cat), f=l.g_prime, g=l.f_prime,
                     f_prime=l.g, g_prime=l.f, alpha=l.gamma, beta=l.beta,
                     gamma=l.alpha)


def verify_short_five_dual(l: SesLadder) -> VerificationReport:
    """Epic mode obtained by running the monic verifier on the reversed
    ladder in the opposite category, then translating names back."""
    op_report = verify_short_five(reversed_ladder(l), "monic")

    def back(c: Check) -> Check:
        return Check(_DUAL_NAMES[c.name], c.passed,
                     _DUAL_DETAILS.get(c.detail, c.detail) if c.detail else None)

    order = _hypothesis_names("epic")
    hyps = sorted((back(h) for h in op_report.hypotheses), key=lambda c: order.index(c.name))
    return VerificationReport("short five (epic, via opposite category)", tuple(hyps),
                              tuple(back(c) for c in op_report.conclusions))


class _StepFailed(Exception):
    pass


def short_five_trace(l: SesLadder) -> VerificationReport:
    """Replay the pullback argument that ``β`` is monic, step by step.

    Every equation is evaluated on the concrete morphisms.  Symbols: ``κ`` is
    ``ker β``, ``φ: A -> I_f`` the canonical epi onto the image of ``f``,
    ``ψ: K_β -> I_f`` the factorization of ``κ`` through ``img f``, and
    ``P`` the pullback of ``φ`` and ``ψ`` with projections ``π_A, π_K``.
    """
    c = l.cat
    subject = "short five trace (monic)"
    hyps = _ladder_hypotheses(l, "monic")
    if not all(h.passed for h in hyps):
        return VerificationReport(subject, tuple(hyps))

    steps: list[Check] = []
    zero = c.is_zero_morphism

    def step(name, ok, detail=None):
        steps.append(Check(name, bool(ok), None if ok else detail))
        if not ok:
            raise _StepFailed

    try:
        kappa = c.kernel(l.beta).inclusion
        step("1. gamma g ker(beta) = g' beta ker(beta) = 0",
             zero(chain(c, l.gamma, l.g, kappa)) and zero(chain(c, l.g_prime, l.beta, kappa)))

        ok = zero(c.compose(l.g, kappa))
        if ok:
            h = c.factor_through_kernel(l.g, kappa)
            ok = c.morphism_equal(c.compose(c.kernel(l.g).inclusion, h), kappa)
        step("2. g ker(beta) = 0, so ker(beta) factors through ker g", ok,
             "gamma is monic but g ker(beta) is not zero")

        imf = abcat.image_factorization(c, l.f)
        ok = zero(c.compose(imf.cokernel_map, kappa))
        if ok:
            psi = c.factor_through_kernel(imf.cokernel_map, kappa)
            ok = c.morphism_equal(c.compose(imf.image_mono, psi), kappa)
        step("3. (cok f) ker(beta) = 0, so ker(beta) = img(f) psi", ok,
             "ker(beta) does not factor through img f")

        phi = imf.canonical_epi
        step("4. f = img(f) phi with phi epic",
             c.morphism_equal(c.compose(imf.image_mono, phi), l.f) and is_epic(c, phi))

        pb = abcat.pullback(c, phi, psi)
        pi_a, pi_k = pb.proj_a, pb.proj_b
        step("5. pullback P of phi and psi: phi pi_A = psi pi_K",
             c.morphism_equal(c.compose(phi, pi_a), c.compose(psi, pi_k)))

        step("6. f' alpha pi_A = 0, hence pi_A = 0",
             zero(chain(c, l.f_prime, l.alpha, pi_a)) and zero(pi_a))

        lhs = c.compose(kappa, pi_k)
        mid = chain(c, imf.image_mono, psi, pi_k)
        rhs = chain(c, imf.image_mono, phi, pi_a)
        step("7. ker(beta) pi_K = img(f) psi pi_K = img(f) phi pi_A = 0",
             c.morphism_equal(lhs, mid) and c.morphism_equal(mid, rhs) and zero(rhs))

        step("8. pi_K epic, hence ker(beta) = 0 and beta monic",
             is_epic(c, pi_k) and zero(kappa) and is_monic(c, l.beta))
    except _StepFailed:
        pass
    except DiagChaseError as exc:
        steps.append(Check("trace aborted", False, str(exc)))

    concl = Check("beta monic", is_monic(c, l.beta))
    return VerificationReport(subject, tuple(hyps), (concl,), tuple(steps))


# ---------------------------------------------------------------- nine lemma


@dataclass(frozen=True)
class NineGrid:
    """Rows ``A_i -f_i-> B_i -g_i-> C_i`` (i = 1, 2, 3) and columns
    ``X_1 -x_1-> X_2 -x_2-> X_3`` for ``x`` in ``α, β, γ``."""
    cat: AbelianCategory
    f1: Any
    g1: Any
    f2: Any
    g2: Any
    f3: Any
    g3: Any
    alpha1: Any
    alpha2: Any
    beta1: Any
    beta2: Any
    gamma1: Any
    gamma2: Any

    def __post_init__(self):
        c = self.cat
        for name in ("f1", "g1", "f2", "g2", "f3", "g3", "alpha1", "alpha2",
                     "beta1", "beta2", "gamma1", "gamma2"):
            c.check_morphism(getattr(self, name))
        dom, cod, eq = c.domain, c.codomain, c.object_equal
        rows = [(self.f1, self.g1), (self.f2, self.g2), (self.f3, self.g3)]
        cols = {"A": (self.alpha1, self.alpha2), "B": (self.beta1, self.beta2),
                "C": (self.gamma1, self.gamma2)}
        for i, (f, g) in enumerate(rows, 1):
            if not eq(cod(f), dom(g)):
                raise InputError(f"row {i} is not composable")
        for label, (x1, x2) in cols.items():
            if not eq(cod(x1), dom(x2)):
                raise InputError(f"column {label} is not composable")
        for i, (f, g) in enumerate(rows):
            objs = {"A": dom(f), "B": cod(f), "C": cod(g)}
            for label, (x1, x2) in cols.items():
                col_obj = (dom(x1), cod(x1), cod(x2))[i]
                if not eq(objs[label], col_obj):
                    raise InputError(f"grid endpoints inconsistent at {label}{i + 1}")

    def diagram(self) -> Diagram:
        c = self.cat
        objs, arrows = {}, {}
        for i, (f, g) in enumerate([(self.f1, self.g1), (self.f2, self.g2),
                                    (self.f3, self.g3)], 1):
            objs[f"A{i}"], objs[f"B{i}"], objs[f"C{i}"] = c.domain(f), c.codomain(f), c.codomain(g)
            arrows[f"f{i}"] = (f"A{i}", f"B{i}", f)
            arrows[f"g{i}"] = (f"B{i}", f"C{i}", g)
        for x, label in (("alpha", "A"), ("beta", "B"), ("gamma", "C")):
            for i in (1, 2):
                arrows[f"{x}{i}"] = (f"{label}{i}", f"{label}{i + 1}", getattr(self, f"{x}{i}"))
        return Diagram(c, objs, arrows)


def verify_nine_lemma(grid: NineGrid, direction: str = "bottom_from_top") -> VerificationReport:
    if direction not in DIRECTIONS:
        raise InputError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    c = grid.cat
    g = grid
    hyps = [
        _row_check(c, "column A short exact", g.alpha1, g.alpha2),
        _row_check(c, "column B short exact", g.beta1, g.beta2),
        _row_check(c, "column C short exact", g.gamma1, g.gamma2),
        _square_check(c, "square f2 alpha1 = beta1 f1",
                      c.compose(g.f2, g.alpha1), c.compose(g.beta1, g.f1)),
        _square_check(c, "square g2 beta1 = gamma1 g1",
                      c.compose(g.g2, g.beta1), c.compose(g.gamma1, g.g1)),
        _square_check(c, "square f3 alpha2 = beta2 f2",
                      c.compose(g.f3, g.alpha2), c.compose(g.beta2, g.f2)),
        _square_check(c, "square g3 beta2 = gamma2 g2",
                      c.compose(g.g3, g.beta2), c.compose(g.gamma2, g.g2)),
    ]
    rows = {1: (g.f1, g.g1), 2: (g.f2, g.g2), 3: (g.f3, g.g3)}
    given, concluded = ((2, 3), 1) if direction == "top_from_bottom" else ((1, 2), 3)
    for i in given:
        hyps.append(_row_check(c, f"row {i} short exact", *rows[i]))
    subject = f"nine lemma ({direction})"
    if not all(h.passed for h in hyps):
        return VerificationReport(subject, tuple(hyps))
    concl = _row_check(c, f"row {concluded} short exact", *rows[concluded])
    return VerificationReport(subject, tuple(hyps), (concl,))
