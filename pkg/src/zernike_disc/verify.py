"""Verification suites behind ``zernike-disc verify``.

Each suite returns a report dictionary (format ``report_v1``)::

    {"format": "report_v1", "suite": ..., "passed": bool,
     "parameters": {...}, "checks": [...], "info": [...],
     "environment": {...}, "timing": {"seconds": ...}}

A check records the identity, its parameters, the worst residual found,
the threshold and the verdict. ``info`` entries are reported values that
are not pass/fail (for instance a closed form of the commutator in terms
of K_0 that disagrees with the exact diagonal). A report passes exactly
when every check passes.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .coherent_states import cs_overlap, cs_overlap_series, cs_vector, resolution_check
from .kernels import (
    basis_column,
    k_ladder_residual,
    kernel_closed_values,
    kernel_diagonal,
    kernel_series_values,
    projection_apply,
)
from .quadrature import gram_matrix, identity_deviation, integrate, rule_for_degree
from .quantization import (
    adjoint_matrix_elements,
    berezin_standard_disc,
    berezin_transform,
    berezin_weighted_bergman,
    commutator,
    commutator_diagonal,
    diffop_upper_symbol_check,
    hamiltonian_diagonal,
    ladder_matrices,
    lower_symbol,
    position_momentum_hamiltonian,
    quantize_observable,
)
from .special_functions import verify_hypergeometric_identities
from .su11 import (
    compare_with_zernike,
    su11_basis_partial_sums,
    su11_diffop_check,
    su11_kernel,
    su11_reconstruction_residual,
)
from .zernike import (
    apply_lowering,
    apply_raising,
    build_zernike,
    check_recurrence,
    path_agreement,
    relative_residual,
)

__all__ = ["FORMAT", "SUITES", "ALPHA_GRID", "run_suite", "run_suites", "report_passed"]

FORMAT = "report_v1"
ALPHA_GRID = (-0.5, 0.0, 0.5, 2.0)
SEED = 20240607


class _Recorder:
    def __init__(self, suite, parameters):
        self.suite = suite
        self.parameters = parameters
        self.checks = []
        self.info = []
        self.environment = {}

    def check(self, identity, residual, threshold, **params):
        residual = float(residual)
        self.checks.append(
            {
                "id": identity,
                "params": params,
                "residual": residual,
                "threshold": threshold,
                "passed": bool(residual <= threshold),
            }
        )

    def note(self, identity, **values):
        self.info.append({"id": identity, **values})

    def report(self, seconds):
        return {
            "format": FORMAT,
            "suite": self.suite,
            "passed": all(c["passed"] for c in self.checks),
            "parameters": self.parameters,
            "checks": self.checks,
            "info": self.info,
            "environment": self.environment,
            "timing": {"seconds": seconds},
        }


def _random_disc(rng, size, r_min, r_max):
    r = rng.uniform(r_min, r_max, size)
    return r * np.exp(2j * np.pi * rng.uniform(size=size))


def _suite_polynomials(rec, alphas, max_m):
    rng = np.random.default_rng(SEED)
    pts = _random_disc(rng, 40, 0.0, 0.9)
    top = min(max_m, 15)
    for a in alphas:
        worst_path = worst_low = worst_raise = worst_rec = 0.0
        for m in range(top + 1):
            for n in range(top + 1):
                worst_path = max(worst_path, path_agreement(m, n, a, pts))
                p = build_zernike(m, n, a)
                low = apply_lowering(m, n, a, p)
                low_rhs = m * build_zernike(m - 1, n, a) if m else 0 * p
                worst_low = max(worst_low, relative_residual(low, low_rhs))
                up = apply_raising(m, n, a, p)
                worst_raise = max(worst_raise, relative_residual(up, (m + 1 + a) * build_zernike(m + 1, n, a)))
                if n:
                    worst_rec = max(worst_rec, check_recurrence(m, n, a))
        rec.check("path_agreement", worst_path, 1e-12, alpha=a, max_m=top, max_n=top)
        rec.check("lowering", worst_low, 1e-12, alpha=a, max_m=top, max_n=top)
        rec.check("raising", worst_raise, 1e-12, alpha=a, max_m=top, max_n=top)
        rec.check("recurrence", worst_rec, 1e-12, alpha=a, max_m=top, max_n=top)
        worst_ladder = 0.0
        for m in range(min(top, 10) + 1):
            for n in range(min(top, 6) + 1):
                for direction in ("+", "-", "commutator"):
                    worst_ladder = max(worst_ladder, k_ladder_residual(m, n, a, pts, direction))
        rec.check("k_ladder_pointwise", worst_ladder, 1e-11, alpha=a, max_m=min(top, 10), max_n=min(top, 6))
    rec.environment["sample_points"] = len(pts)


def _suite_quadrature(rec, alphas, max_m):
    top_m = min(max_m, 12)
    top_n = min(max_m, 6)
    for a in alphas:
        indices = [(m, n) for m in range(top_m + 1) for n in range(top_n + 1)]
        G = gram_matrix(indices, a)
        rec.check("orthonormality", identity_deviation(G), 1e-10, alpha=a, max_m=top_m, max_n=top_n)
        rule = rule_for_degree(0, a)
        area = integrate(lambda z: np.ones_like(z), rule)
        rec.check("measure_mass", abs(area - math.pi / (a + 1)) / (math.pi / (a + 1)), 1e-13, alpha=a)
        M = min(max_m + 1, 12)
        worst = max(resolution_check(n, a, M) for n in range(min(max_m, 3) + 1))
        rec.check("resolution_of_identity", worst, 1e-10, alpha=a, M=M, max_n=min(max_m, 3))
    rec.environment["gram_size"] = (top_m + 1) * (top_n + 1)


def _suite_kernels(rec, alphas, max_m):
    rng = np.random.default_rng(SEED + 1)
    kernel_alphas = [a for a in alphas if a >= 0] or [0.0]
    max_n = min(max_m, 5)
    for a in kernel_alphas:
        z = _random_disc(rng, 30, 0.0, 0.6)
        worst_diag = 0.0
        for n in range(max_n + 1):
            series = kernel_series_values(n, a, z, z, 400).real
            worst_diag = max(worst_diag, float(np.max(np.abs(series / kernel_diagonal(n, a, z) - 1))))
        rec.check("diagonal_closed_form", worst_diag, 1e-10, alpha=a, max_n=max_n, M=400)

        zz = _random_disc(rng, 60, 0.05, 0.7)
        ww = _random_disc(rng, 60, 0.05, 0.7)
        worst_closed = worst_herm = 0.0
        for n in range(max_n + 1):
            c = kernel_closed_values(n, a, zz, ww)
            s = kernel_series_values(n, a, zz, ww, 400)
            worst_closed = max(worst_closed, float(np.max(np.abs(c - s) / np.abs(s))))
            back = kernel_closed_values(n, a, ww, zz)
            worst_herm = max(worst_herm, float(np.max(np.abs(c - np.conj(back)) / np.abs(c))))
        rec.check("closed_vs_series", worst_closed, 1e-8, alpha=a, max_n=max_n, pairs=len(zz), M=400)
        rec.check("hermitian_symmetry", worst_herm, 1e-10, alpha=a, max_n=max_n)

        bergman = (a + 1) / (math.pi * (1 - zz * np.conj(ww)) ** (a + 2))
        err = np.max(np.abs(kernel_closed_values(0, a, zz, ww) - bergman) / np.abs(bergman))
        rec.check("bergman_n0", err, 1e-12, alpha=a, pairs=len(zz))

        z0 = 0.35 + 0.25j
        errs = []
        for delta in (1e-3, 5e-4):
            v = complex(kernel_closed_values(2, a, z0, z0 * (1 + delta)))
            errs.append(abs(v - kernel_diagonal(2, a, z0)) / kernel_diagonal(2, a, z0))
        order = math.log(errs[0] / errs[1]) / math.log(2.0)
        rec.check("diagonal_limit_first_order", abs(order - 1.0), 0.1, alpha=a, n=2, deltas=[1e-3, 5e-4])

        pts = _random_disc(rng, 12, 0.0, 0.8)
        worst_psd = 0.0
        for n in range(max_n + 1):
            G = cs_overlap(pts[:, None], pts[None, :], n, a)
            worst_psd = max(worst_psd, -float(np.min(np.linalg.eigvalsh((G + G.conj().T) / 2))))
        rec.check("positive_semidefinite", max(worst_psd, 0.0), 1e-10, alpha=a, points=len(pts))

        worst_norm = worst_ov = 0.0
        for n in range(min(max_n, 3) + 1):
            for zi, wi in zip(zz[:8], ww[:8]):
                worst_norm = max(worst_norm, abs(complex(cs_overlap(zi, zi, n, a)) - 1))
                worst_ov = max(worst_ov, abs(complex(cs_overlap(zi, wi, n, a)) - cs_overlap_series(zi, wi, n, a)))
        rec.check("cs_normalization", worst_norm, 1e-10, alpha=a)
        rec.check("cs_overlap_vs_vectors", worst_ov, 1e-9, alpha=a)

    # projection property of the Schwartz kernel, alpha = first grid value
    a = kernel_alphas[0]
    rule = rule_for_degree(80, a)
    probe = np.array([0.2 + 0.1j, -0.3j, 0.45])
    worst = 0.0
    for n in range(min(max_n, 3) + 1):
        for n2 in range(min(max_n, 3) + 1):
            for m in range(min(max_m, 5) + 1):
                f_nodes = basis_column(m + 1, n2, a, rule.nodes, weighted=False)[m]
                got = projection_apply(n, a, f_nodes, probe, rule)
                want = basis_column(m + 1, n2, a, probe, weighted=False)[m] if n == n2 else 0.0
                worst = max(worst, float(np.max(np.abs(got - want))))
    rec.check("projection_property", worst, 1e-9, alpha=a, max_m=min(max_m, 5), max_n=min(max_n, 3))
    rec.environment["projection_nodes"] = int(rule.nodes.size)

    for a in alphas:
        res = verify_hypergeometric_identities(a)
        rec.check("hypergeometric_identities", max(res.values()), 1e-10, alpha=a, terms=400)

    for r in (0.5, 0.9):
        rec.environment[f"cs_cutoff_r{r}"] = cs_vector(r, 0, 0.0).cutoff


def _suite_quantization(rec, alphas, max_m):
    M = min(max(max_m, 2), 12)
    quant_alphas = [a for a in alphas if a >= 0] or [0.0]
    for a in quant_alphas:
        worst_ladder = worst_one = 0.0
        for n in range(4):
            Az, Azb = ladder_matrices(n, a, M)
            worst_ladder = max(
                worst_ladder,
                float(np.max(np.abs(quantize_observable("z", n, a, M).entries - Az.entries))),
                float(np.max(np.abs(quantize_observable("zbar", n, a, M).entries - Azb.entries))),
            )
            worst_one = max(worst_one, float(np.max(np.abs(quantize_observable("1", n, a, M).entries - np.eye(M)))))
        rec.check("ladder_closed_vs_quadrature", worst_ladder, 1e-11, alpha=a, M=M, max_n=3)
        rec.check("identity_quantization", worst_one, 1e-12, alpha=a, M=M, max_n=3)

        worst_comm = worst_qp = worst_h = worst_hdiag = 0.0
        for n in range(4):
            Az, Azb = ladder_matrices(n, a, M)
            C = commutator(Az, Azb).interior()
            worst_comm = max(worst_comm, float(np.max(np.abs(np.diag(C) - commutator_diagonal(n, a, M)[:-1]))))
            Q, P, H = position_momentum_hamiltonian(n, a, M)
            worst_qp = max(worst_qp, float(np.max(np.abs(commutator(Q, P).interior() - 1j * C))))
            worst_h = max(worst_h, float(np.max(np.abs(H.interior() - ((Q @ Q + P @ P) / 2).interior()))))
            worst_hdiag = max(
                worst_hdiag, float(np.max(np.abs(H.interior() - np.diag(hamiltonian_diagonal(n, a, M)[:-1]))))
            )
        rec.check("commutator_diagonal", worst_comm, 1e-12, alpha=a, M=M, max_n=3)
        rec.check("qp_commutator", worst_qp, 1e-12, alpha=a, M=M, max_n=3)
        rec.check("hamiltonian_qp", worst_h, 1e-12, alpha=a, M=M, max_n=3)
        rec.check("hamiltonian_diagonal", worst_hdiag, 1e-12, alpha=a, M=M, max_n=3)

    Az, Azb = ladder_matrices(0, 0.0, M)
    diag = np.diag(commutator(Az, Azb).interior()).real
    expected = 1.0 / ((np.arange(M - 1) + 1.0) * (np.arange(M - 1) + 2.0))
    rec.check("commutator_n0_alpha0", float(np.max(np.abs(diag - expected))), 1e-12, M=M)

    rng = np.random.default_rng(SEED + 2)
    zs = _random_disc(rng, 4, 0.0, 0.6)
    observables = ["1", "z^2*zbar^2", "z*zbar^3 + 2i*z", "re(z)^3 - r2"]
    for n, a in ((0, 0.0), (2, 0.5)):
        Ms = 90
        mats = {f: quantize_observable(f, n, a, Ms) for f in observables}
        worst = worst_one = 0.0
        for z in zs:
            for f in observables:
                b = berezin_transform(f, z, n, a)
                worst = max(worst, abs(b - lower_symbol(mats[f], z)))
                if f == "1":
                    worst_one = max(worst_one, abs(b - 1))
        rec.check("berezin_lower_symbol", worst, 1e-7, n=n, alpha=a, points=len(zs), M=Ms)
        rec.check("berezin_of_one", worst_one, 1e-9, n=n, alpha=a)
    worst_std = worst_bb2 = 0.0
    for z in zs:
        for f in observables:
            worst_std = max(worst_std, abs(berezin_transform(f, z, 0, 0.0) - berezin_standard_disc(f, z)))
            worst_bb2 = max(worst_bb2, abs(berezin_transform(f, z, 0, 1.5) - berezin_weighted_bergman(f, z, 1.5)))
    rec.check("berezin_standard_disc", worst_std, 1e-8, n=0, alpha=0.0)
    rec.check("berezin_weighted_bergman", worst_bb2, 1e-8, n=0, alpha=1.5)

    pts = _random_disc(rng, 6, 0.0, 0.8)
    worst_d1 = worst_adj = 0.0
    k0_rows = []
    for a in alphas:
        for m in range(min(max_m, 6) + 1):
            for n in range(3):
                r = diffop_upper_symbol_check(m, n, a, pts)
                worst_d1 = max(worst_d1, r["d1_residual"], r["k_minus_residual"])
                if a == alphas[0] and n == 0:
                    k0_rows.append([m, r["commutator_exact"], r["commutator_k0_form"]])
                if m:
                    first, second = adjoint_matrix_elements(m, n, a)
                    target = math.sqrt(m * (m + a))
                    worst_adj = max(worst_adj, abs(first - target), abs(second - target))
    rec.check("upper_symbol_diffop", worst_d1, 1e-12, max_m=min(max_m, 6), max_n=2)
    rec.check("adjoint_matrix_elements", worst_adj, 1e-10, max_m=min(max_m, 6), max_n=2)
    rec.note(
        "commutator_k0_form_vs_exact",
        alpha=alphas[0],
        n=0,
        rows=[[m, _finite(e), _finite(p)] for m, e, p in k0_rows],
        columns=["m", "exact C^2(m)-C^2(m-1)", "K0 form 2K0/((m+n+a+1)sqrt((m+n+a)(m+n+a+2)))"],
    )


def _finite(x):
    return x if math.isfinite(x) else str(x)


def _suite_su11(rec, alphas, max_m):
    etas = (0.75, 1.0, 2.0)
    top = min(max(max_m, 1), 15)
    pts = np.array([0.3 + 0.2j, -0.5j, 0.65])
    worst_diff = worst_rec = 0.0
    for eta in etas:
        for k in range(top + 1):
            r = su11_diffop_check(k, eta, pts)
            worst_diff = max(worst_diff, r["k_plus"], r["k_minus"])
            worst_rec = max(worst_rec, su11_reconstruction_residual(k, eta))
    rec.check("su11_ladder_diffop", worst_diff, 1e-12, max_k=top, etas=list(etas))
    rec.check("su11_reconstruction", worst_rec, 1e-12, max_k=top, etas=list(etas))
    rng = np.random.default_rng(SEED + 3)
    z = _random_disc(rng, 20, 0.0, 0.95)
    worst_kd = max(float(np.max(np.abs(su11_kernel(z, z, eta) - 1))) for eta in etas)
    rec.check("su11_kernel_diagonal", worst_kd, 1e-14, etas=list(etas))
    worst_norm = 0.0
    monotone = True
    for eta in etas:
        sums = su11_basis_partial_sums(0.7, eta, 400)
        worst_norm = max(worst_norm, abs(sums[-1] - 1))
        monotone = monotone and bool(np.all(np.diff(sums) >= 0))
    rec.check("su11_basis_normalization", worst_norm, 1e-10, radius=0.7, M=400)
    rec.check("su11_partial_sums_monotone", 0.0 if monotone else 1.0, 0.0, radius=0.7)
    for a in alphas:
        report = compare_with_zernike(0, a, 1.0, min(max(max_m, 4), 12))
        structural = report["zernike_bounded_decaying"] and report["su11_linear"]
        unrelated = not report["related_by_parameter_adjustment"]
        rec.check("su11_structural_difference", 0.0 if (structural and unrelated) else 1.0, 0.0, alpha=a, eta=1.0)
        rec.note(
            "su11_comparison",
            alpha=a,
            eta=1.0,
            zernike_diagonal=report["zernike_diagonal"],
            su11_diagonal=report["su11_diagonal"],
            summary=report["summary"],
        )


SUITES = {
    "polynomials": _suite_polynomials,
    "quadrature": _suite_quadrature,
    "kernels": _suite_kernels,
    "quantization": _suite_quantization,
    "su11": _suite_su11,
}


def run_suite(name, alpha=None, max_m=10):
    """Run one suite. ``alpha=None`` uses the grid (-0.5, 0, 0.5, 2)."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    alphas = list(ALPHA_GRID) if alpha is None else [float(alpha)]
    rec = _Recorder(name, {"alpha": alphas, "max_m": int(max_m)})
    start = time.perf_counter()
    with np.errstate(all="ignore"):
        SUITES[name](rec, alphas, int(max_m))
    return rec.report(time.perf_counter() - start)


def _thread_count():
    try:
        return max(1, int(os.environ.get("ZERNIKE_DISC_THREADS", "1")))
    except ValueError:
        return 1


def run_suites(names, alpha=None, max_m=10):
    """Run several suites (in parallel up to ZERNIKE_DISC_THREADS) and merge the reports."""
    names = list(SUITES) if names in ("all", ["all"]) else list(names)
    workers = min(_thread_count(), len(names))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda s: run_suite(s, alpha, max_m), names))
    else:
        reports = [run_suite(s, alpha, max_m) for s in names]
    return {
        "format": FORMAT,
        "suite": "all" if len(names) > 1 else names[0],
        "passed": all(r["passed"] for r in reports),
        "suites": reports,
        "environment": {"threads": workers},
        "timing": {"seconds": sum(r["timing"]["seconds"] for r in reports)},
    }


def report_passed(report):
    return bool(report["passed"])
