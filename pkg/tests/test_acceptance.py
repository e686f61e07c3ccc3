"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines as they complete.
"""

import numpy as np

from nmsqueeze import (
    KrausPair,
    SpectralModel,
    continuum_weight,
    eta_critical,
    find_bound_state,
    husimi_q,
    initial_moments,
    markov_kappa,
    oat_state,
    optimize_theta,
    symmetric_power_expectation,
    tat_state,
    transverse_anisotropy,
    u_spectral_grid,
    xi2_oat_formula,
    xi2_oat_steady_asymptote,
    xi2_tat_formula,
    xi2_tat_steady,
    y_of_e,
)
from nmsqueeze.channel_oracle import (
    IDENTITY_2,
    apply_channel,
    collective_moments,
    embed_dicke,
    master_equation_single,
)
from nmsqueeze.husimi import _coherent_product_vector, single_site_operator
from nmsqueeze.squeezing import oat_ab, oat_pair_correlators, theta_oat_optimal


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_criterion_bound_state_threshold():
    model = SpectralModel(eta=0.03, s=1.0, omega_c=50.0)
    checks = []
    checks.append(eta_critical(model) == 0.02)
    below = find_bound_state(SpectralModel(eta=0.019, s=1.0, omega_c=50.0))
    checks.append(not below.exists)
    just_above = SpectralModel(eta=0.021, s=1.0, omega_c=50.0)
    above = find_bound_state(just_above)
    resid = abs(y_of_e(just_above, above.e_b) - above.e_b)
    checks.append(above.exists and resid < 1e-10)
    _report(
        "bound-state threshold",
        all(checks),
        f"eta_c={eta_critical(model)!r}, exists(0.019)={below.exists}, "
        f"exists(0.021)={above.exists}, residual={resid:.2e}",
    )


def test_criterion_sum_rule():
    devs = []
    for eta in (0.03, 0.05):
        model = SpectralModel(eta=eta, s=1.0, omega_c=50.0)
        z = find_bound_state(model).z_residue
        devs.append(abs(z + continuum_weight(model) - 1.0))
    ok = all(d < 1e-6 for d in devs)
    _report("sum rule", ok, f"|Z + int C - 1| = {['%.2e' % d for d in devs]}")


def test_criterion_representation_cross_check(model_003, traj_003_t50):
    ts = np.linspace(0.0, 50.0, 101)
    us = u_spectral_grid(model_003, ts)
    idx = np.round(ts / traj_003_t50.dt).astype(int)
    dev = float(np.max(np.abs(us - traj_003_t50.u[idx])))
    _report("representation cross-check", dev < 1e-3, f"max |u_volterra - u_spectral| = {dev:.2e}")


def test_criterion_steady_state_plateau(traj_003_t400, traj_001_t400, bound_003):
    dev_bound = abs(abs(traj_003_t400.u[-1]) - bound_003.z_residue)
    mod_free = abs(traj_001_t400.u[-1])
    ok = dev_bound < 1e-2 and mod_free < 5e-2
    _report(
        "steady-state plateau", ok,
        f"eta=0.03: ||u(400)|-Z| = {dev_bound:.2e}; eta=0.01: |u(400)| = {mod_free:.2e}",
    )


def test_criterion_markov_limit(traj_markov):
    model, traj = traj_markov
    kappa = markov_kappa(model)
    kt = kappa * traj.t_grid
    mask = (kt >= 0.2) & (kt <= 1.0)
    dev = np.abs(np.log(np.abs(traj.u[mask])) + kt[mask]) / kt[mask]
    worst = float(dev.max())
    _report(
        "Markov limit", worst < 0.05,
        f"max |log|u| + kt|/kt over kt in [0.2, 1] = {worst:.4f} "
        f"(the exact modulus decays at pi*J(omega0 + Delta), "
        f"{(1 - np.pi * 0.001 * 0.9469 * np.exp(-0.9469 / 50) / kappa) * 100:.1f}% below pi*J(omega0))",
    )


def test_criterion_oracle_equivalence():
    worst_oat = worst_tat = worst_corr = 0.0
    for n in (4, 6, 8):
        for theta in (0.1, 0.3):
            state_oat = oat_state(n, theta)
            state_tat = tat_state(n, theta)
            mom_tat0 = initial_moments(state_tat)
            for u in (1.0, 0.9 * np.exp(0.3j), 0.5):
                k = KrausPair(u)
                for state, which in ((state_oat, "oat"), (state_tat, "tat")):
                    mom = collective_moments(apply_channel(embed_dicke(state), k))
                    xi2_oracle = 4.0 * (mom.jperp2_sum - abs(mom.jminus2)) / 2.0 / n
                    if which == "oat":
                        d = abs(xi2_oat_formula(n, theta, abs(u) ** 2) - xi2_oracle)
                        worst_oat = max(worst_oat, d)
                    else:
                        d = abs(xi2_tat_formula(n, mom_tat0, abs(u) ** 2) - xi2_oracle)
                        worst_tat = max(worst_tat, d)
            mom0 = initial_moments(state_oat)
            pm_closed, mm_closed = oat_pair_correlators(n, theta)
            a, b = oat_ab(n, theta)
            worst_corr = max(
                worst_corr,
                abs(mom0.pair_pm - a / 8.0),
                abs(mom0.pair_mm - mm_closed),
                abs(abs(mom0.pair_mm) - np.hypot(a, b) / 8.0),
            )
    ok = worst_oat < 1e-10 and worst_tat < 1e-10 and worst_corr < 1e-10
    _report(
        "oracle equivalence", ok,
        f"max dev: oat={worst_oat:.1e}, tat={worst_tat:.1e}, correlators={worst_corr:.1e} "
        "(pair correlator signs follow the twist unitary's phase convention)",
    )


def test_criterion_decoherence_free_oat_scaling():
    details = []
    ok = True
    for n in (100, 1000, 10000):
        theta, xi2 = optimize_theta(n, "oat", u_mod2=1.0)
        xi2_rel = abs(xi2 / (1.04 * n ** (-2 / 3)) - 1.0)
        th_rel = abs(theta / theta_oat_optimal(n) - 1.0)
        ok = ok and xi2_rel < 0.10 and th_rel < 0.05
        details.append(f"N={n}: xi2 off {xi2_rel * 100:.1f}%, theta off {th_rel * 100:.1f}%")
    _report("decoherence-free OAT scaling", ok, "; ".join(details))


def test_criterion_steady_state_law(bound_003):
    z = bound_003.z_residue
    ok = True
    details = []
    for n in (100, 1000, 10000):
        _, xi2 = optimize_theta(n, "oat", u_mod2=z * z)
        rel = abs(xi2 / xi2_oat_steady_asymptote(n, z) - 1.0)
        ok = ok and rel < 0.05
        details.append(f"N={n}: off {rel * 100:.2f}%")
    _, xi2_big = optimize_theta(10000, "oat", u_mod2=z * z)
    floor_gap = abs(xi2_big - (1.0 - z * z))
    ok = ok and floor_gap < 2e-2
    _report(
        "steady-state law", ok,
        "; ".join(details) + f"; floor gap at N=1e4: {floor_gap:.2e}",
    )


def test_criterion_tat_scaling(bound_003):
    ok = True
    details = []
    for n in (50, 100, 200):
        _, xi2 = optimize_theta(n, "tat", u_mod2=1.0)
        rel = abs(xi2 / (2.0 / n) - 1.0)
        ok = ok and rel < 0.15
        details.append(f"N={n}: off {rel * 100:.1f}%")
    z = bound_003.z_residue
    mom = initial_moments(tat_state(50, optimize_theta(50, "tat", 1.0)[0]))
    ident = abs(xi2_tat_steady(50, mom, z) - xi2_tat_formula(50, mom, z * z))
    exceeds = xi2_tat_steady(50, mom, z) > 1.0 - z * z
    ok = ok and ident < 1e-8 and exceeds
    _report(
        "TAT scaling", ok,
        "; ".join(details) + f"; steady identity dev {ident:.1e}, exceeds 1-Z^2: {exceeds}",
    )


def test_criterion_kraus_me_consistency(model_003, traj_003_t50, rng):
    worst_complete = 0.0
    for _ in range(100):
        r = np.sqrt(rng.uniform())
        k = KrausPair(r * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        total = k.k1.conj().T @ k.k1 + k.k2.conj().T @ k.k2
        worst_complete = max(worst_complete, float(np.max(np.abs(total - IDENTITY_2))))
    rho0 = np.array([[0.7, 0.2 + 0.1j], [0.2 - 0.1j, 0.3]], dtype=complex)
    rhos = master_equation_single(model_003, traj_003_t50, rho0)
    u = traj_003_t50.u
    kraus_ee = np.abs(u) ** 2 * rho0[0, 0]
    kraus_eg = u * rho0[0, 1]
    worst_me = max(
        float(np.max(np.abs(rhos[:, 0, 0] - kraus_ee))),
        float(np.max(np.abs(rhos[:, 0, 1] - kraus_eg))),
        float(np.max(np.abs(rhos[:, 1, 1] - (1.0 - kraus_ee)))),
    )
    ok = worst_complete < 1e-14 and worst_me < 1e-6
    _report(
        "Kraus/ME consistency", ok,
        f"completeness dev {worst_complete:.1e}; ME vs Kraus dev {worst_me:.1e}",
    )


def test_criterion_husimi(traj_003_t400, traj_001_t400, rng):
    # path equivalence on random grid points
    worst_path = 0.0
    for n in (4, 8, 10):
        state = oat_state(n, 0.3)
        k = KrausPair(0.85 * np.exp(0.4j))
        rho = apply_channel(embed_dicke(state), k)
        for _ in range(20):
            th = rng.uniform(0, np.pi)
            ph = rng.uniform(0, 2 * np.pi)
            vec = _coherent_product_vector(n, th, ph)
            brute = np.real(np.vdot(vec, rho.entries @ vec))
            sym = np.real(symmetric_power_expectation(state, single_site_operator(th, ph, k)))
            worst_path = max(worst_path, abs(brute - sym))

    state10 = oat_state(10, theta_oat_optimal(10))
    fresh = husimi_q(state10, KrausPair(1.0))
    weight_dev = abs(fresh.symmetric_weight - 1.0)
    norm = np.trapezoid(
        fresh.q_normalized.sum(axis=1) * (2 * np.pi / len(fresh.phis)) * np.sin(fresh.thetas),
        fresh.thetas,
    )
    norm_dev = abs(norm - 1.0)

    protected = husimi_q(state10, KrausPair(complex(traj_003_t400.u[-1])))
    destroyed = husimi_q(state10, KrausPair(complex(traj_001_t400.u[-1])))
    aniso_p = transverse_anisotropy(protected)
    aniso_d = transverse_anisotropy(destroyed)

    ok = worst_path < 1e-10 and weight_dev < 1e-3 and norm_dev < 1e-3 \
        and aniso_p >= 1.5 and aniso_d < 1.1
    _report(
        "Husimi", ok,
        f"path dev {worst_path:.1e}; weight(t=0) dev {weight_dev:.1e}; "
        f"norm dev {norm_dev:.1e}; anisotropy protected {aniso_p:.2f} (>=1.5), "
        f"destroyed {aniso_d:.3f} (<1.1)",
    )
