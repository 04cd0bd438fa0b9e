//! The `reproduce` command: recompute the reference results across the
//! trine-mixed instance, the symmetric-qubit sweep, and the spin-1 family,
//! check every number against its closed form, and emit the full table.

use nosig::Complex64;

use nosig::discrim::{
    certificate, l4_bound, spin1_eta, spin1_l4_success, success_probability,
    symmetric_pure_success, symmetric_qubit_optimal_povm,
};
use nosig::linalg::positive_part;
use nosig::nosignal::{
    beta_max, build_qubit_family, build_spin_family, lp_bound, qubit_ns_bound, spin_ns_bound,
};
use nosig::oracle::{optimize_povm, random_restarts};
use nosig::states::{spin_family, symmetric_qubit_family, SpinSystem};

use crate::report::{
    CheckRecord, ClosedFormRecord, L4Record, NsBoundRecord, OracleRecord, Report, ReproduceOutput,
};

const PI: f64 = std::f64::consts::PI;
const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

pub struct ReproduceParams {
    pub seed: u64,
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
}

/// Sweep grid shared with the acceptance suite: N in {2..6}, 25 polar
/// angles strictly inside (0, pi), radii {1/3, 2/3, 1}.
pub fn sweep_grid() -> Vec<(usize, f64, f64)> {
    let mut grid = Vec::new();
    for n in 2..=6 {
        for i in 0..25 {
            let theta = 0.05 + (PI - 0.1) * i as f64 / 24.0;
            for r in [1.0 / 3.0, 2.0 / 3.0, 1.0] {
                grid.push((n, theta, r));
            }
        }
    }
    grid
}

pub fn run(params: &ReproduceParams) -> ReproduceOutput {
    let mut reports = Vec::new();
    let mut checks = Vec::new();

    trine_mixed(params, &mut reports, &mut checks);
    qubit_sweep(params, &mut reports, &mut checks);
    spin_one(params, &mut reports, &mut checks);

    ReproduceOutput { reports, checks }
}

fn trine_mixed(params: &ReproduceParams, reports: &mut Vec<Report>, checks: &mut Vec<CheckRecord>) {
    let (n, theta, r) = (3, FRAC_PI_2, 1.0 / 3.0);
    let ns = qubit_ns_bound(n, theta, r).expect("valid parameters");
    checks.push(CheckRecord::assert_close(
        "trine_ns_error_is_5_9",
        ns.error_lower,
        5.0 / 9.0,
        1e-12,
    ));

    let family = build_qubit_family(n, theta, r).expect("non-degenerate theta");
    let lp = lp_bound(&family).expect("positive weights");
    checks.push(CheckRecord::assert_close(
        "trine_lp_matches_closed_form",
        lp.success_upper,
        ns.success_upper,
        1e-12,
    ));
    checks.push(CheckRecord::assert_true(
        "trine_family_averages_identical",
        family.average_spread() <= 1e-10,
        format!("average spread {:.2e} (tol 1e-10)", family.average_spread()),
    ));

    let ensemble = symmetric_qubit_family(n, theta, r).expect("valid parameters");
    let oracle = random_restarts(&ensemble, params.restarts, params.seed, params.max_iters, params.tol)
        .expect("oracle runs");
    checks.push(CheckRecord::assert_close(
        "trine_oracle_success_is_4_9",
        oracle.success,
        4.0 / 9.0,
        1e-6,
    ));
    checks.push(CheckRecord::assert_true(
        "trine_oracle_certificate_gap",
        oracle.certificate_gap >= -1e-8,
        format!("gap {:.2e} (needs >= -1e-8)", oracle.certificate_gap),
    ));

    let povm = symmetric_qubit_optimal_povm(n);
    let achieved = success_probability(&ensemble, &povm).expect("matched sizes");
    checks.push(CheckRecord::assert_close(
        "trine_optimal_povm_success",
        achieved,
        4.0 / 9.0,
        1e-10,
    ));
    let cert = certificate(&ensemble, &povm).expect("matched sizes");
    checks.push(CheckRecord::assert_true(
        "trine_optimal_povm_certified",
        cert.optimal,
        format!("gap {:.2e}", cert.gap),
    ));

    let l4 = l4_bound(&ensemble).expect("valid ensemble");
    let l4_closed = 2.0 / 3.0 - 1.0 / (3.0 * 3.0_f64.sqrt());
    checks.push(CheckRecord::assert_close(
        "trine_l4_closed_form",
        l4.error_lower,
        l4_closed,
        1e-12,
    ));
    checks.push(CheckRecord::assert_close(
        "trine_l4_printed_value",
        l4.error_lower,
        0.4742,
        5e-5,
    ));
    let mut worst = 0.0_f64;
    for j in 0..n {
        for k in 0..n {
            if j == k {
                continue;
            }
            let t = positive_part(&(ensemble.state(j).matrix() - ensemble.state(k).matrix()))
                .expect("hermitian difference")
                .trace()
                .re;
            worst = worst.max((t - 1.0 / (2.0 * 3.0_f64.sqrt())).abs());
        }
    }
    checks.push(CheckRecord::assert_true(
        "trine_positive_part_ingredient",
        worst <= 1e-10,
        format!("max |tr(rho_j - rho_k)_+ - 1/(2 sqrt 3)| = {worst:.2e} (tol 1e-10)"),
    ));

    reports.push(Report::new(
        "trine_mixed",
        n,
        2,
        Some(NsBoundRecord {
            success_upper: ns.success_upper,
            error_lower: ns.error_lower,
            construction: "symmetric_qubit".into(),
        }),
        L4Record {
            error_lower: l4.error_lower,
            success_upper: l4.success_upper,
        },
        OracleRecord {
            success: oracle.success,
            certificate_gap: oracle.certificate_gap,
            converged: oracle.converged,
        },
        Some(ClosedFormRecord {
            value: achieved,
            formula: "symmetric_qubit_optimal_povm".into(),
        }),
    ));
}

fn qubit_sweep(params: &ReproduceParams, reports: &mut Vec<Report>, checks: &mut Vec<CheckRecord>) {
    let mut worst_lp = 0.0_f64;
    let mut worst_closed = 0.0_f64;
    let mut worst_oracle = 0.0_f64;
    let mut worst_spread = 0.0_f64;
    let mut all_certified = true;

    for (n, theta, r) in sweep_grid() {
        let ns = qubit_ns_bound(n, theta, r).expect("valid parameters");
        let formula = ((1.0 + r * theta.sin()) / n as f64).min(1.0);

        let family = build_qubit_family(n, theta, r).expect("theta inside (0, pi)");
        let lp = lp_bound(&family).expect("positive weights");
        worst_lp = worst_lp.max((lp.success_upper - formula).abs());
        worst_spread = worst_spread.max(family.average_spread());

        let ensemble = symmetric_qubit_family(n, theta, r).expect("valid parameters");
        let closed = if r == 1.0 {
            let c = [
                Complex64::new((theta / 2.0).cos(), 0.0),
                Complex64::new((theta / 2.0).sin(), 0.0),
            ];
            symmetric_pure_success(n, &c)
        } else {
            let povm = symmetric_qubit_optimal_povm(n);
            all_certified &= certificate(&ensemble, &povm).expect("matched sizes").optimal;
            success_probability(&ensemble, &povm).expect("matched sizes")
        };
        worst_closed = worst_closed.max((closed - ns.success_upper).abs());

        let oracle = optimize_povm(&ensemble, params.max_iters, params.tol).expect("oracle runs");
        worst_oracle = worst_oracle
            .max((oracle.success - closed).abs())
            .max((oracle.success - ns.success_upper).abs());

        let l4 = l4_bound(&ensemble).expect("valid ensemble");
        reports.push(Report::new(
            format!("qubit_N{n}_theta{theta:.6}_r{r:.6}"),
            n,
            2,
            Some(NsBoundRecord {
                success_upper: ns.success_upper,
                error_lower: ns.error_lower,
                construction: "symmetric_qubit".into(),
            }),
            L4Record {
                error_lower: l4.error_lower,
                success_upper: l4.success_upper,
            },
            OracleRecord {
                success: oracle.success,
                certificate_gap: oracle.certificate_gap,
                converged: oracle.converged,
            },
            Some(ClosedFormRecord {
                value: closed,
                formula: if r == 1.0 {
                    "symmetric_pure_states".into()
                } else {
                    "symmetric_qubit_optimal_povm".into()
                },
            }),
        ));
    }

    checks.push(CheckRecord::assert_true(
        "qubit_sweep_lp_tightness",
        worst_lp <= 1e-12,
        format!("max |lp - (1 + r sin theta)/N| = {worst_lp:.2e} (tol 1e-12)"),
    ));
    checks.push(CheckRecord::assert_true(
        "qubit_sweep_closed_form_vs_ns",
        worst_closed <= 1e-10,
        format!("max |optimum - ns bound| = {worst_closed:.2e} (tol 1e-10)"),
    ));
    checks.push(CheckRecord::assert_true(
        "qubit_sweep_oracle_agreement",
        worst_oracle <= 1e-6,
        format!("max oracle deviation = {worst_oracle:.2e} (tol 1e-6)"),
    ));
    checks.push(CheckRecord::assert_true(
        "qubit_sweep_certificates_optimal",
        all_certified,
        "optimal measurement certified at every mixed grid point".into(),
    ));
    checks.push(CheckRecord::assert_true(
        "qubit_sweep_averages_identical",
        worst_spread <= 1e-10,
        format!("max family average spread = {worst_spread:.2e} (tol 1e-10)"),
    ));
}

fn spin_one(params: &ReproduceParams, reports: &mut Vec<Report>, checks: &mut Vec<CheckRecord>) {
    let sys = SpinSystem::new(2).expect("two_j = 2");
    let thetas = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0];

    let beta = beta_max(&sys).expect("bisection brackets");
    checks.push(CheckRecord::assert_close(
        "spin1_beta_max",
        beta,
        1.0 / 2.0_f64.sqrt(),
        1e-9,
    ));

    let mut worst_purity = 0.0_f64;
    for i in 0..10 {
        let b = 0.05 + i as f64 * (beta - 0.05) / 9.0;
        let sigma0 = sys.linear_state([b, 0.0, b]).expect("within positivity");
        worst_purity = worst_purity.max((sigma0.purity() - (3.0 + 4.0 * b * b) / 9.0).abs());
    }
    checks.push(CheckRecord::assert_true(
        "spin1_sigma_purity_grid",
        worst_purity <= 1e-12,
        format!("max |tr(sigma0^2) - (3 + 4 beta^2)/9| = {worst_purity:.2e} (tol 1e-12)"),
    ));

    let eta = spin1_eta(thetas[1], thetas[2]);
    checks.push(CheckRecord::assert_close(
        "spin1_eta_equal_spacing",
        eta,
        2.0 * 3.0_f64.sqrt() / 3.0,
        1e-12,
    ));

    for alpha in [0.1, 0.3, 0.5] {
        let ns = spin_ns_bound(&sys, alpha, &thetas).expect("alpha within positivity");
        let expected = (1.0 + 2.0_f64.sqrt() * alpha) / 3.0;
        checks.push(CheckRecord::assert_close(
            &format!("spin1_ns_closed_form_alpha_{alpha}"),
            ns.success_upper,
            expected,
            1e-10,
        ));

        let family = build_spin_family(&sys, alpha, &thetas).expect("alpha within positivity");
        checks.push(CheckRecord::assert_true(
            &format!("spin1_family_averages_identical_alpha_{alpha}"),
            family.average_spread() <= 1e-10,
            format!("average spread {:.2e} (tol 1e-10)", family.average_spread()),
        ));

        let ensemble = spin_family(&sys, alpha, &thetas).expect("alpha within positivity");
        let l4 = l4_bound(&ensemble).expect("valid ensemble");
        checks.push(CheckRecord::assert_close(
            &format!("spin1_l4_eta_cross_check_alpha_{alpha}"),
            l4.success_upper,
            spin1_l4_success(alpha, thetas[1], thetas[2]),
            1e-10,
        ));

        let oracle = random_restarts(
            &ensemble,
            params.restarts,
            params.seed,
            params.max_iters,
            params.tol,
        )
        .expect("oracle runs");
        let ordered = oracle.success - 1e-6 <= l4.success_upper
            && l4.success_upper <= ns.success_upper + 1e-6;
        checks.push(CheckRecord::assert_true(
            &format!("spin1_ordering_alpha_{alpha}"),
            ordered,
            format!(
                "oracle {:.9} <= 1 - L4 {:.9} <= ns {:.9}",
                oracle.success, l4.success_upper, ns.success_upper
            ),
        ));

        reports.push(Report::new(
            format!("spin1_alpha{alpha:.2}"),
            3,
            3,
            Some(NsBoundRecord {
                success_upper: ns.success_upper,
                error_lower: ns.error_lower,
                construction: "spin_identical_average".into(),
            }),
            L4Record {
                error_lower: l4.error_lower,
                success_upper: l4.success_upper,
            },
            OracleRecord {
                success: oracle.success,
                certificate_gap: oracle.certificate_gap,
                converged: oracle.converged,
            },
            None,
        ));
    }
}
