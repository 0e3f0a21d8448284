"""Executable verification of the package's headline mathematical claims.

Each check function reproduces one numerically testable statement about the
classified Ricci-flat Lorentzian nilpotent metrics, the curvature formulas,
the double-extension construction or the search regression, and returns a
:class:`CheckResult` row (name, expected, observed, residual, pass/fail).
The CLI's ``verify-paper`` subcommand and the acceptance test suite both
drive :func:`run_checks`.

All randomness is seeded; rerunning a check reproduces it exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .catalog import (
    ALGEBRA_NAMES,
    DERIVATION_TABLE,
    METRIC_VARIANTS,
    MetricVariant,
    make_algebra,
    make_metric,
    table1_derivation,
)
from .curvature import VERDICT_TOL, MetricLieAlgebra, Verdict
from .doubleext import (
    decompose,
    extend,
    guediri_2step,
    model_residual,
    random_admissible,
    ricci_ebar,
)
from .errors import ConstraintViolation
from .pseudolin import Gram, SubspaceTag, classify_subspace
from .search import SearchSpec, run_search

#: Einstein constant of the eight-dimensional example metric, frozen after the
#: first verified run as a regression anchor.
EX8_LAMBDA = 0.5

_BASE_SEED = 20260823


@dataclass
class CheckResult:
    """One verification row: what was claimed, what was measured."""

    name: str
    expected: str
    observed: str
    residual: float
    passed: bool
    failures: List[str] = field(default_factory=list)


def _result(
    name: str, expected: str, observed: str, residual: float, failures: List[str]
) -> CheckResult:
    if failures:
        shown = "; ".join(failures[:3])
        if len(failures) > 3:
            shown += f"; … {len(failures) - 3} more"
        observed = f"{observed} — FAILURES: {shown}"
    return CheckResult(name, expected, observed, residual, not failures, failures)


def _rng(check_index: int) -> np.random.Generator:
    return np.random.default_rng([_BASE_SEED, check_index])


def _random_gram(rng: np.random.Generator, n: int) -> Gram:
    """Random nondegenerate symmetric form A^T η A with η = diag(±1)."""
    while True:
        a = np.eye(n) + 0.3 * rng.normal(size=(n, n))
        if np.linalg.svd(a, compute_uv=False)[-1] >= 1e-3:
            break
    eta = rng.choice([-1.0, 1.0], size=n)
    return Gram(a.T @ np.diag(eta) @ a)


def _sample_params(mv: MetricVariant, rng: np.random.Generator) -> List[Dict[str, float]]:
    """One random parameter assignment inside the variant's constraints;
    variants with an ε parameter yield both sign choices."""
    base: Dict[str, float] = {}
    for p in mv.params:
        if p == "eps":
            continue
        if p in ("a", "b"):
            base[p] = float(rng.uniform(-0.9, 0.9))
        elif p == "y":
            base[p] = float(rng.uniform(-1.5, 1.5))
        elif p == "alpha" and mv.name == "m32":
            base[p] = float(rng.uniform(0.3, 1.8))
        else:  # alpha, x, mu, rho: bounded away from zero, either sign
            base[p] = float(rng.uniform(0.3, 1.8) * rng.choice([-1.0, 1.0]))
    if "eps" in mv.params:
        return [dict(base, eps=1.0), dict(base, eps=-1.0)]
    return [base]


def _variant_instances(rng: np.random.Generator, draws: int = 5):
    """(variant, params, metric algebra) for seeded draws of every variant."""
    for mv in METRIC_VARIANTS.values():
        for _ in range(draws):
            for params in _sample_params(mv, rng):
                yield mv, params, make_metric(mv.algebra, mv.name, params)


def _catalog_instances(rng: np.random.Generator, grams: int = 20):
    """(name, metric algebra) for every catalog algebra with random grams."""
    for name in ALGEBRA_NAMES:
        algebra = make_algebra(name)
        for _ in range(grams):
            yield name, MetricLieAlgebra(algebra, _random_gram(rng, algebra.n))


# ---------------------------------------------------------------------------
# the checks
# ---------------------------------------------------------------------------


def check_classified_ricci_flat(tol: float) -> CheckResult:
    rng = _rng(1)
    failures: List[str] = []
    worst = 0.0
    count = 0
    for mv, params, m in _variant_instances(rng):
        count += 1
        sig = m.signature()
        n = m.n
        if (sig.minus, sig.plus, sig.null) != (1, n - 1, 0):
            failures.append(f"{mv.name} {params}: signature {tuple(sig)}")
            continue
        ric = m.ricci_operator()
        resid = float(np.abs(ric).max(initial=0.0))
        worst = max(worst, resid)
        if resid > tol * max(1.0, resid):
            failures.append(f"{mv.name} {params}: ‖Ric‖∞ = {resid:.3e}")
    return _result(
        "classified-ricci-flat",
        f"10 variants, seeded draws: Lorentzian (1,n−1) and ‖Ric‖∞ ≤ {tol:g}·scale",
        f"{count} metrics all Lorentzian and Ricci-flat",
        worst,
        failures,
    )


def check_flatness(tol: float) -> CheckResult:
    rng = _rng(2)
    failures: List[str] = []
    worst_flat = 0.0
    witness = np.inf
    count = 0
    for mv, params, m in _variant_instances(rng):
        if mv.name not in ("m32", "m42", "m52", "m43"):
            continue
        count += 1
        defect, scale = m.flatness_defect()
        if mv.name == "m43" and params["eps"] == 1.0:
            witness = min(witness, defect / scale)
            if defect <= 1e-6 * scale:
                failures.append(f"m43 eps=+1 {params}: curvature too small ({defect:.3e})")
        else:
            worst_flat = max(worst_flat, defect / scale)
            if defect > tol * scale:
                failures.append(f"{mv.name} {params}: curvature defect {defect:.3e}")
    return _result(
        "flatness",
        "m32/m42/m52 and m43[ε=−1] flat; m43[ε=+1] visibly curved",
        f"{count} instances match (smallest ε=+1 curvature witness {witness:.2e})",
        worst_flat,
        failures,
    )


def check_degenerate_center(tol: float) -> CheckResult:
    rng = _rng(3)
    failures: List[str] = []
    count = 0
    for mv, params, m in _variant_instances(rng):
        count += 1
        cls = classify_subspace(m.gram, m.algebra.center())
        if cls.tag is not SubspaceTag.DEGENERATE:
            failures.append(f"{mv.name} {params}: center {cls.tag.value}")
    return _result(
        "degenerate-center",
        "every classified dim ≤ 5 metric has a Degenerate center",
        f"{count - len(failures)}/{count} centers Degenerate",
        0.0,
        failures,
    )


def check_examples(tol: float) -> CheckResult:
    strict = tol / 10.0
    failures: List[str] = []
    worst = 0.0

    obs: List[str] = []
    for name in ("EX6", "EX7"):
        m = make_metric(name)
        report = m.einstein_classify()
        resid = float(np.abs(report.ricci_operator).max(initial=0.0))
        worst = max(worst, resid)
        if report.verdict is not Verdict.RICCI_FLAT:
            failures.append(f"{name}: verdict {report.verdict.value}")
        cls = classify_subspace(m.gram, m.algebra.center())
        if cls.tag is SubspaceTag.DEGENERATE:
            failures.append(f"{name}: center is Degenerate")
        obs.append(f"{name} {report.verdict.value}/{cls.tag.value}")

    m = make_metric("EX8")
    report = m.einstein_classify()
    lam = float(np.trace(report.ricci_operator)) / m.n
    scale = max(1.0, float(np.abs(report.ricci_operator).max(initial=0.0)))
    if report.verdict is not Verdict.EINSTEIN:
        failures.append(f"EX8: verdict {report.verdict.value}")
    if abs(lam) <= 1e-6:
        failures.append(f"EX8: λ̂ = {lam:.3e} not clearly nonzero")
    if report.einstein_residual > tol * scale:
        failures.append(f"EX8: Einstein residual {report.einstein_residual:.3e}")
    if abs(lam - EX8_LAMBDA) > tol * max(1.0, abs(EX8_LAMBDA)):
        failures.append(f"EX8: λ̂ = {lam!r} drifted from frozen {EX8_LAMBDA}")
    center = m.algebra.center()
    derived = m.algebra.derived_ideal()
    c_cls = classify_subspace(m.gram, center)
    d_cls = classify_subspace(m.gram, derived)
    if c_cls.tag is not SubspaceTag.EUCLIDEAN:
        failures.append(f"EX8: center {c_cls.tag.value}")
    if d_cls.tag is not SubspaceTag.LORENTZIAN:
        failures.append(f"EX8: derived ideal {d_cls.tag.value}")
    p = derived.basis  # orthonormal rows
    incl = 0.0
    for z in center.basis:
        incl = max(incl, float(np.linalg.norm(z - p.T @ (p @ z))))
    if incl > strict:
        failures.append(f"EX8: center ⊄ derived ideal (residual {incl:.3e})")
    worst = max(worst, report.einstein_residual, abs(lam - EX8_LAMBDA), incl)
    obs.append(
        f"EX8 Einstein λ̂={lam:.12g} ({c_cls.tag.value} center ⊆ {d_cls.tag.value} derived)"
    )
    return _result(
        "examples",
        f"EX6/EX7 Ricci-flat with nondegenerate center; EX8 Einstein, λ̂ = {EX8_LAMBDA}",
        "; ".join(obs),
        worst,
        failures,
    )


def check_route_equivalence(tol: float) -> CheckResult:
    rng = _rng(5)
    failures: List[str] = []
    worst = 0.0
    count = 0
    for name, m in _catalog_instances(rng):
        count += 1
        r_def = m.ricci_via_definition()
        r_gen = m.ricci_general()
        scale = max(1.0, float(np.abs(r_def).max(initial=0.0)))
        d_form = float(np.abs(r_def - r_gen).max(initial=0.0))
        worst = max(worst, d_form / scale)
        if d_form > tol * scale:
            failures.append(f"{name}: definition vs general {d_form:.3e}")
        if m.algebra.is_nilpotent():
            op_def = m.gram_inv @ r_def
            op_nil = m.ricci_nilpotent()
            op_scale = max(1.0, float(np.abs(op_def).max(initial=0.0)))
            d_op = float(np.abs(op_def - op_nil).max(initial=0.0))
            worst = max(worst, d_op / op_scale)
            if d_op > tol * op_scale:
                failures.append(f"{name}: definition vs 𝒥-route {d_op:.3e}")
    return _result(
        "route-equivalence",
        f"definition ≡ general (≡ 𝒥-route when nilpotent) within {tol:g}·scale",
        f"{count} (algebra, gram) instances agree on all routes",
        worst,
        failures,
    )


def check_trace_j1_j2(tol: float) -> CheckResult:
    rng = _rng(5)  # same instance set as route-equivalence
    failures: List[str] = []
    worst = 0.0
    count = 0
    for name, m in _catalog_instances(rng):
        count += 1
        j1, j2 = m.j1_j2()
        t1, t2 = float(np.trace(j1)), float(np.trace(j2))
        scale = max(1.0, abs(t1))
        diff = abs(t1 - t2)
        worst = max(worst, diff / scale)
        if diff > tol * scale:
            failures.append(f"{name}: tr𝒥₁={t1:.6g} tr𝒥₂={t2:.6g}")
    return _result(
        "trace-j1-j2",
        f"tr 𝒥₁ = tr 𝒥₂ within {tol:g}·scale",
        f"{count} instances agree",
        worst,
        failures,
    )


def check_trace_formula(tol: float) -> CheckResult:
    rng = _rng(5)  # same instance set as route-equivalence
    rng_e = _rng(7)
    failures: List[str] = []
    worst = 0.0
    count = 0
    derivations = {}
    for name in ALGEBRA_NAMES:
        basis = make_algebra(name).derivation_space()
        derivations[name] = max(basis, key=lambda d: float(np.linalg.norm(d.matrix)))
    for name, m in _catalog_instances(rng):
        n = m.n
        for _ in range(50):
            count += 1
            e = rng_e.normal(size=(n, n))
            lhs, rhs = m.trace_q_times(e)
            scale = max(1.0, abs(lhs), abs(rhs))
            diff = abs(lhs - rhs)
            worst = max(worst, diff / scale)
            if diff > tol * scale:
                failures.append(f"{name}: |lhs−rhs| = {diff:.3e}")
        lhs, rhs = m.trace_q_times(derivations[name])
        scale = max(1.0, abs(lhs), abs(rhs))
        big = max(abs(lhs), abs(rhs))
        worst = max(worst, big / scale)
        if big > tol * scale:
            failures.append(f"{name}: derivation E gives tr(QE) = {lhs:.3e}")
    return _result(
        "trace-formula",
        f"tr(QE) = bracket double sum within {tol:g}·scale; both ≈ 0 for derivations",
        f"{count} random E plus one derivation per instance agree",
        worst,
        failures,
    )


def check_double_extension(tol: float) -> CheckResult:
    rng = _rng(8)
    failures: List[str] = []
    worst = 0.0
    for trial in range(100):
        data = random_admissible(
            rng,
            f_dim=int(rng.integers(1, 4)),
            blocks=int(rng.integers(1, 3)),
            nilpotent=True,
        )
        m = extend(data)
        n = m.n
        tag = f"nilpotent trial {trial} (v={data.v_dim})"
        if not m.algebra.is_nilpotent():
            failures.append(f"{tag}: extension not nilpotent")
            continue
        sig = m.signature()
        if (sig.minus, sig.plus, sig.null) != (1, n - 1, 0):
            failures.append(f"{tag}: signature {tuple(sig)}")
            continue
        report = m.einstein_classify()
        ric = float(np.abs(report.ricci_operator).max(initial=0.0))
        worst = max(worst, ric)
        if report.verdict not in (Verdict.RICCI_FLAT, Verdict.FLAT):
            failures.append(f"{tag}: verdict {report.verdict.value} (‖Ric‖∞={ric:.3e})")
            continue
        dec = decompose(m)
        if dec is None:
            failures.append(f"{tag}: decompose found no isotropic central vector")
            continue
        resid = model_residual(m, dec)
        scale = max(
            1.0,
            float(np.abs(m.algebra.c).max(initial=0.0)),
            float(np.abs(m.gram.mat).max(initial=0.0)),
        )
        worst = max(worst, resid / scale)
        if resid > tol * scale:
            failures.append(f"{tag}: decompose∘extend residual {resid:.3e}")
    for trial in range(100):
        data = random_admissible(
            rng,
            f_dim=int(rng.integers(1, 4)),
            blocks=int(rng.integers(1, 3)),
            nilpotent=False,
        )
        m = extend(data)
        pred = ricci_ebar(data)
        obs = float(m.ricci_via_definition()[m.n - 1, m.n - 1])
        scale = max(1.0, abs(obs))
        diff = abs(pred - obs)
        worst = max(worst, diff / scale)
        if diff > tol * scale:
            failures.append(f"μ≠0 trial {trial}: ricci_ebar {pred:.6g} vs {obs:.6g}")
    return _result(
        "double-extension",
        "100 nilpotent data: extend nilpotent/Lorentzian/Ricci-flat and decompose "
        f"round-trips; 100 μ≠0 data: ricci_ebar matches, all within {tol:g}·scale",
        "200 extensions behave as constructed",
        worst,
        failures,
    )


def check_guediri(tol: float) -> CheckResult:
    rng = _rng(9)
    failures: List[str] = []
    worst = 0.0

    def draw():
        q = int(rng.integers(2, 4))
        p = int(rng.integers(1, 3))
        while True:
            a = rng.normal(size=(q, q))
            a = a - a.T
            if float(np.sum(a * a)) > 0.1:
                break
        c = rng.normal(size=(q, p))
        c = c * np.sqrt(float(np.sum(a * a)) / (2.0 * float(np.sum(c * c))))
        alpha = rng.normal(size=q)
        return p, q, alpha, c, a, int(rng.integers(0, 3))

    for trial in range(50):
        p, q, alpha, c, a, ab = draw()
        m = guediri_2step(p, q, alpha, c, a, abelian_dim=ab)
        report = m.einstein_classify()
        ric = float(np.abs(report.ricci_operator).max(initial=0.0))
        worst = max(worst, ric)
        if report.verdict not in (Verdict.RICCI_FLAT, Verdict.FLAT):
            failures.append(f"trial {trial}: verdict {report.verdict.value}")
        cls = classify_subspace(m.gram, m.algebra.center())
        if cls.tag is not SubspaceTag.DEGENERATE:
            failures.append(f"trial {trial}: center {cls.tag.value}")
    rejected = 0
    for trial in range(10):
        p, q, alpha, c, a, ab = draw()
        try:
            guediri_2step(p, q, alpha, 1.3 * c, a, abelian_dim=ab)
        except ConstraintViolation:
            rejected += 1
    if rejected != 10:
        failures.append(f"only {rejected}/10 violating parameter sets rejected")
    return _result(
        "guediri",
        "50 constrained parameter sets Ricci-flat with degenerate center; "
        "10 violating sets rejected",
        f"50 built, {rejected}/10 rejected",
        worst,
        failures,
    )


def check_derivations(tol: float) -> CheckResult:
    failures: List[str] = []
    worst = 0.0
    for name in DERIVATION_TABLE:
        der = table1_derivation(name)
        algebra = make_algebra(name)
        defect = algebra.derivation_defect(der.matrix)
        worst = max(worst, defect)
        if defect > 1e-12:
            failures.append(f"{name}: derivation defect {defect:.3e}")
        if abs(der.trace) <= 1e-12:
            failures.append(f"{name}: listed derivation is traceless")
        found = algebra.find_nonzero_trace_derivation()
        if found is None or abs(found.trace) <= 1e-9:
            failures.append(f"{name}: find_nonzero_trace_derivation failed")
    return _result(
        "derivations",
        "tabulated diagonal derivations exact (defect ≤ 1e-12) with nonzero trace; "
        "the search finds one on every algebra",
        f"{len(DERIVATION_TABLE)} table rows verified",
        worst,
        failures,
    )


def check_lemma_fuzz(tol: float) -> CheckResult:
    strict = tol / 10.0
    rng = _rng(11)
    failures: List[str] = []
    worst = 0.0
    count = 0
    for trial in range(1000):
        count += 1
        n = int(rng.integers(3, 9))
        gm = np.eye(n)
        gm[0, 0] = gm[1, 1] = 0.0
        gm[0, 1] = gm[1, 0] = 1.0  # basis (e, ē, f_1..f_{n-2})

        mode = trial % 3
        w = rng.normal(size=(n, n))
        w = w - w.T
        if mode == 1:  # force Ae = αe
            alpha = float(rng.normal())
            w[:, 0] = 0.0
            w[0, :] = 0.0
            w[1, 0] = alpha
            w[0, 1] = -alpha
        elif mode == 2:  # force Ae = 0
            w[:, 0] = 0.0
            w[0, :] = 0.0
        a = np.linalg.solve(gm, w)  # ⟨Ax,y⟩ = −⟨x,Ay⟩ by construction

        while True:
            p = np.eye(n) + 0.3 * rng.normal(size=(n, n))
            if np.linalg.svd(p, compute_uv=False)[-1] >= 1e-2:
                break
        g = p.T @ gm @ p
        ap = np.linalg.solve(p, a @ p)
        ep = np.linalg.solve(p, np.eye(n)[:, 0])

        v = ap @ ep
        val = float(v @ g @ v)
        scale = max(1.0, float(np.abs(g).max()) * float(v @ v))
        tag = f"trial {trial} (n={n}, mode={mode})"
        if mode == 0:
            worst = max(worst, max(0.0, -val) / scale)
            if val < -strict * scale:
                failures.append(f"{tag}: ⟨Ae,Ae⟩ = {val:.3e} < 0")
        elif mode == 1:
            worst = max(worst, abs(val) / scale)
            if abs(val) > strict * scale:
                failures.append(f"{tag}: ⟨Ae,Ae⟩ = {val:.3e} ≠ 0 for Ae ∥ e")
            coef = float(v @ ep) / float(ep @ ep)
            resid = float(np.linalg.norm(v - coef * ep))
            if resid > strict * max(1.0, float(np.linalg.norm(v))):
                failures.append(f"{tag}: Ae not collinear with e (residual {resid:.3e})")
        else:
            tr2 = float(np.trace(ap @ ap))
            worst = max(worst, max(0.0, tr2) / max(1.0, float(np.sum(ap * ap))))
            if tr2 > strict * max(1.0, float(np.sum(ap * ap))):
                failures.append(f"{tag}: tr A² = {tr2:.3e} > 0 with Ae = 0")
            # degenerate companion: A0 f_j = λ_j e, A0 ē = −Σ λ_j f_j, A0 e = 0
            lam = rng.normal(size=n - 2)
            w0 = np.zeros((n, n))
            w0[1, 2:] = lam
            w0[2:, 1] = -lam
            a0 = np.linalg.solve(gm, w0)
            a0p = np.linalg.solve(p, a0 @ p)
            s0 = max(1.0, float(np.sum(a0p * a0p)))
            if abs(float(np.trace(a0p @ a0p))) > strict * s0:
                failures.append(f"{tag}: degenerate map has tr A₀² ≠ 0")
            cross = float(np.trace(a0p @ ap))
            s1 = max(1.0, float(np.linalg.norm(a0p) * np.linalg.norm(ap)))
            worst = max(worst, abs(cross) / s1)
            if abs(cross) > strict * s1:
                failures.append(f"{tag}: tr(A₀A) = {cross:.3e} ≠ 0")
    return _result(
        "lemma-fuzz",
        "isotropy inequality ⟨Ae,Ae⟩ ≥ 0 with equality ⇔ Ae ∥ e; tr A² ≤ 0 "
        "when Ae = 0, with tr(A₀B) = 0 in the degenerate case",
        f"{count} trials in Lorentzian dims 3–8 hold",
        worst,
        failures,
    )


def check_search_regression(tol: float) -> CheckResult:
    failures: List[str] = []
    spec = SearchSpec(
        make_algebra("L3_2"), target="ricci-flat", signature=(1, 2), seed=0, restarts=8
    )
    r1 = run_search(spec)
    r2 = run_search(spec)
    if not r1.converged:
        failures.append(f"search did not converge (residual {r1.residual:.3e})")
    elif r1.residual > 1e-6:
        failures.append(f"residual {r1.residual:.3e} above 1e-6")
    if r1.iterations > spec.max_iters:
        failures.append(f"used {r1.iterations} iterations > {spec.max_iters}")
    same = (
        r1.converged == r2.converged
        and r1.residual == r2.residual
        and r1.iterations == r2.iterations
        and r1.restart_index == r2.restart_index
        and (r1.best_gram is None) == (r2.best_gram is None)
        and (r1.best_gram is None or np.array_equal(r1.best_gram.mat, r2.best_gram.mat))
    )
    if not same:
        failures.append("two runs of the same spec differ")
    return _result(
        "search-regression",
        "L3_2 (1,2) Ricci-flat search converges below 1e-6 and reruns bit-identically",
        f"converged={r1.converged} iterations={r1.iterations} "
        f"restart={r1.restart_index} bit-identical={same}",
        r1.residual,
        failures,
    )


CHECKS: Dict[str, Callable[[float], CheckResult]] = {
    "classified-ricci-flat": check_classified_ricci_flat,
    "flatness": check_flatness,
    "degenerate-center": check_degenerate_center,
    "examples": check_examples,
    "route-equivalence": check_route_equivalence,
    "trace-j1-j2": check_trace_j1_j2,
    "trace-formula": check_trace_formula,
    "double-extension": check_double_extension,
    "guediri": check_guediri,
    "derivations": check_derivations,
    "lemma-fuzz": check_lemma_fuzz,
    "search-regression": check_search_regression,
}

CHECK_NAMES: Tuple[str, ...] = tuple(CHECKS)


def run_checks(
    names: Optional[Iterable[str]] = None, tol: float = VERDICT_TOL
) -> List[CheckResult]:
    """Run the named checks (all by default) at the given verdict tolerance.

    Checks quoting a stricter bound use tol/10; the pinned regression
    constants (derivation defect 1e-12, search tolerance 1e-6) stay put.
    """
    selected: Sequence[str] = list(names) if names is not None else list(CHECK_NAMES)
    unknown = [s for s in selected if s not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}; known: {', '.join(CHECK_NAMES)}")
    return [CHECKS[s](tol) for s in selected]


def format_row(r: CheckResult) -> str:
    status = "PASS" if r.passed else "FAIL"
    return (
        f"[{status}] {r.name:<22} residual {r.residual:9.2e}  "
        f"expected: {r.expected}  |  observed: {r.observed}"
    )
