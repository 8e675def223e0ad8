//! Acceptance gate: one PASS/FAIL line per criterion.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resolvent_inv::geometry::hull_distance;
use resolvent_inv::linalg::{vec_norm, vec_sub};
use resolvent_inv::series::{evaluate_f, gamma_beta, zeros_of_f};
use resolvent_inv::*;
use statrs::function::erf::erfc;

struct Outcome {
    pass: bool,
    detail: String,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cx(r: &mut ChaCha8Rng, s: f64) -> C {
    C::new(r.gen_range(-s..s), r.gen_range(-s..s))
}

fn rel(a: &[C], b: &[C]) -> f64 {
    vec_norm(&vec_sub(a, b)) / vec_norm(b)
}

/// Adds points from `gen` until `k` of them are pairwise `sep` apart.
fn separated_points(r: &mut ChaCha8Rng, k: usize, sep: f64, mut gen: impl FnMut(&mut ChaCha8Rng) -> C) -> Vec<C> {
    let mut out: Vec<C> = Vec::new();
    while out.len() < k {
        let p = gen(r);
        if out.iter().all(|q| (p - q).norm() > sep) {
            out.push(p);
        }
    }
    out
}

fn positive_series(r: &mut ChaCha8Rng, poles: &[C]) -> ResolventSeries64 {
    ResolventSeries64::new(
        poles
            .iter()
            .map(|&p| Term64::new(C::new(r.gen_range(0.1..1.0), 0.0), p))
            .collect(),
    )
    .unwrap()
}

fn resolvent(a: &Matrix64, z: C) -> Matrix64 {
    Matrix64::identity(a.rows()).scale(z).sub(a).inverse().unwrap()
}

fn assemble_f(s: &ResolventSeries64, a: &Matrix64) -> Matrix64 {
    s.terms().iter().fold(Matrix64::zeros(a.rows(), a.rows()), |acc, t| {
        acc.add(&resolvent(a, t.pole).scale(t.coeff))
    })
}

fn assemble_plan(p: &InversionPlan64, a: &Matrix64) -> Matrix64 {
    let n = a.rows();
    let mut g = Matrix64::identity(n).scale(p.gamma).add(&a.scale(p.beta));
    for grp in &p.remainder.groups {
        let r = resolvent(a, grp.pole);
        let mut pow = Matrix64::identity(n);
        for &c in &grp.coeffs {
            pow = pow.matmul(&r);
            g = g.add(&pow.scale(c));
        }
    }
    g
}

fn criterion_1() -> Outcome {
    let mut r = rng(101);
    let (mut worst, mut fails) = (0.0f64, 0);
    for _ in 0..200 {
        let n = r.gen_range(2..=16);
        let k = r.gen_range(1..=8);
        let (a, series) = loop {
            let s = 1.0 / (n as f64).sqrt();
            let a = Matrix64::from_fn(n, n, |_, _| cx(&mut r, s));
            let center = C::from_polar(3.0, r.gen_range(0.0..2.0 * PI));
            let poles = separated_points(&mut r, k, 0.05, |r| center + cx(r, 1.0));
            let hull = convex_hull(&poles).unwrap();
            let eig = a.eigenvalues().unwrap();
            if eig.iter().all(|&l| hull.distance(l) >= 0.5) {
                break (a, positive_series(&mut r, &poles));
            }
        };
        let plan = invert_to_plan(&series).unwrap();
        let f = assemble_f(&series, &a);
        let defect = assemble_plan(&plan, &a).matmul(&f).sub(&Matrix64::identity(n)).norm_1();
        let ratio = defect / (1e-9 * f.cond_1());
        worst = worst.max(ratio);
        if ratio > 1.0 {
            fails += 1;
        }
    }
    Outcome {
        pass: fails == 0,
        detail: format!("200 instances, {fails} failures, worst defect/(1e-9 cond) = {worst:.2e}"),
    }
}

fn criterion_2() -> Outcome {
    let mut r = rng(202);
    let (mut worst, mut fails) = (0.0f64, 0);
    for _ in 0..1000 {
        let k = r.gen_range(2..=8);
        let poles = separated_points(&mut r, k, 1e-3, |r| {
            C::new(r.gen_range(0.0..1.0), r.gen_range(0.0..1.0))
        });
        let s = ResolventSeries64::new(
            poles
                .iter()
                .map(|&p| Term64::new(C::new(r.gen_range(0.0..1.0), 0.0), p))
                .collect(),
        )
        .unwrap();
        let hull = convex_hull(&s.poles()).unwrap();
        for z in zeros_of_f(&s).unwrap() {
            let d = hull_distance(&hull, z);
            worst = worst.max(d);
            if d > 1e-8 {
                fails += 1;
            }
        }
    }
    Outcome {
        pass: fails == 0,
        detail: format!("1000 series, {fails} zeros outside, worst distance = {worst:.2e}"),
    }
}

fn criterion_3() -> Outcome {
    let mut r = rng(303);
    let (mut worst_f, mut worst_ax) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let k = r.gen_range(3..=6);
        let poles = separated_points(&mut r, k, 0.1, |r| {
            C::from_polar(r.gen_range(0.0..1.0), r.gen_range(0.0..2.0 * PI))
        });
        let lambda = loop {
            let w: Vec<f64> = (0..k).map(|_| r.gen_range(0.05..1.0)).collect();
            let total: f64 = w.iter().sum();
            let l: C = poles.iter().zip(&w).map(|(p, wi)| p * (wi / total)).sum();
            if poles.iter().all(|p| (p - l).norm() > 1e-3) {
                break l;
            }
        };
        let series = caratheodory_counterexample(&poles, lambda).unwrap();
        worst_f = worst_f.max(evaluate_f(&series, lambda).unwrap().norm());
        let n = r.gen_range(3..=8);
        let mut diag = vec![lambda];
        diag.extend((1..n).map(|_| C::from_polar(r.gen_range(3.0..5.0), r.gen_range(0.0..2.0 * PI))));
        let p = Matrix64::from_fn(n, n, |_, _| cx(&mut r, 0.3)).shift_diagonal(C::new(1.0, 0.0));
        let a = p.matmul(&Matrix64::from_diagonal(&diag)).matmul(&p.inverse().unwrap());
        let x = p.column(0);
        let op = DenseMatrixOperator64::new(a).unwrap();
        let fx = apply_f(&series, &op, &x).unwrap();
        worst_ax = worst_ax.max(vec_norm(&fx) / vec_norm(&x));
    }
    Outcome {
        pass: worst_f <= 1e-12 && worst_ax <= 1e-10,
        detail: format!("100 planted eigenpairs, max |f(λ)| = {worst_f:.2e}, max ‖f(A)x‖/‖x‖ = {worst_ax:.2e}"),
    }
}

/// Filter with poles `zⱼ` and residues `aⱼ > 0`: `p = Π(z − zⱼ)`,
/// `q = z Σ aⱼ Π_{i≠j}(z − zᵢ)`.
fn planted_filter(poles: &[C], residues: &[f64]) -> FilterSpec64 {
    let one = C::new(1.0, 0.0);
    let p = Polynomial64::from_roots(poles, one);
    let mut q = Polynomial64::zero();
    for (j, &a) in residues.iter().enumerate() {
        let others: Vec<C> = poles
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, z)| *z)
            .collect();
        q = q.add(&Polynomial64::from_roots(&others, C::new(a, 0.0)));
    }
    let mut b = q.coeffs().to_vec();
    b.resize(poles.len(), C::new(0.0, 0.0));
    FilterSpec64::new(p.coeffs().to_vec(), b).unwrap()
}

fn criterion_4() -> Outcome {
    let mut r = rng(404);
    let mut worst_rt = 0.0f64;
    for _ in 0..50 {
        let n_ord = r.gen_range(1..=4);
        let poles = separated_points(&mut r, n_ord, 0.05, |r| {
            C::from_polar(r.gen_range(0.0..0.8), r.gen_range(0.0..2.0 * PI))
        });
        let residues: Vec<f64> = (0..n_ord).map(|_| r.gen_range(0.2..2.0)).collect();
        let spec = planted_filter(&poles, &residues);
        let x: Vec<C> = (0..256).map(|_| cx(&mut r, 1.0)).collect();
        let back = invert_filter(&spec, &forward_filter(&spec, &x).unwrap()).unwrap();
        worst_rt = worst_rt.max(rel(&back, &x));
    }
    let mut worst_cf = 0.0f64;
    for _ in 0..20 {
        let c1 = cx(&mut r, 2.0) + C::new(0.1, 0.0);
        let z1 = C::from_polar(r.gen_range(0.0..0.8), r.gen_range(0.0..2.0 * PI));
        let b1 = c1 * r.gen_range(0.2..2.0);
        let c0 = -z1 * c1;
        let spec = FilterSpec64::new(vec![c0, c1], vec![b1]).unwrap();
        let y: Vec<C> = (0..256).map(|_| cx(&mut r, 1.0)).collect();
        let x = invert_filter(&spec, &y).unwrap();
        let n = y.len();
        let want: Vec<C> = (0..n).map(|k| c0 / b1 * y[(k + n - 1) % n] + c1 / b1 * y[k]).collect();
        let scale = want.iter().fold(0.0f64, |m, w| m.max(w.norm()));
        let diff = x.iter().zip(&want).fold(0.0f64, |m, (a, b)| m.max((a - b).norm()));
        worst_cf = worst_cf.max(diff / scale);
    }
    Outcome {
        pass: worst_rt <= 1e-9 && worst_cf <= 1e-12,
        detail: format!(
            "50 filters N≤4 at n=256, worst round trip = {worst_rt:.2e}; N=1 closed form worst = {worst_cf:.2e}"
        ),
    }
}

/// `y(t) = Σ aⱼ ∫ₜ^∞ e^{−αⱼ(s−t)} e^{−(s−c)²} ds` in closed form.
fn gaussian_response(terms: &[(f64, f64)], t: f64, c: f64) -> f64 {
    let tau = t - c;
    terms
        .iter()
        .map(|&(a, al)| a * (al * tau + al * al / 4.0).exp() * PI.sqrt() / 2.0 * erfc(tau + al / 2.0))
        .sum()
}

fn criterion_5() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for terms in [vec![(1.0, 1.0)], vec![(1.0, 1.0), (1.0, 2.0)]] {
        let kernel = ResolventSeries64::new(
            terms
                .iter()
                .map(|&(a, al)| Term64::new(C::new(a, 0.0), C::new(al, 0.0)))
                .collect(),
        )
        .unwrap();
        let mut errs = Vec::new();
        for n in [500, 1000, 2000] {
            let grid = GridSpec64::new(0.0, 10.0, n).unwrap();
            let pts = grid.points();
            let x0: Vec<C> = pts
                .iter()
                .map(|&t| C::new((-(t - 5.0) * (t - 5.0)).exp(), 0.0))
                .collect();
            let y: Vec<C> = pts
                .iter()
                .map(|&t| C::new(gaussian_response(&terms, t, 5.0), 0.0))
                .collect();
            let sol = solve_integral_first_kind(&kernel, &y, &grid).unwrap();
            errs.push(rel(&sol.x, &x0));
        }
        let orders = [(errs[0] / errs[1]).log2(), (errs[1] / errs[2]).log2()];
        pass &= orders.iter().all(|&o| o >= 1.0) && errs[2] <= 1e-3;
        lines.push(format!(
            "{}-term errors {:.2e}/{:.2e}/{:.2e}, orders {:.2}/{:.2}",
            terms.len(),
            errs[0],
            errs[1],
            errs[2],
            orders[0],
            orders[1]
        ));
    }
    Outcome {
        pass,
        detail: lines.join("; "),
    }
}

fn criterion_6() -> Outcome {
    let mut r = rng(606);
    let mut worst = 0.0f64;
    for trial in 0..40 {
        let count = if trial % 2 == 0 { 1 } else { 2 };
        let terms: Vec<EvenKernelTerm64> = (0..count)
            .map(|_| {
                let beta = C::from_polar(r.gen_range(0.5..2.0), r.gen_range(-PI / 2.0 + 0.1..-0.1));
                let a = r.gen_range(0.2..2.0);
                EvenKernelTerm64::new(C::new(0.0, 1.0) * a / (2.0 * beta), beta)
            })
            .collect();
        let n = 256;
        let period = r.gen_range(2.0 * PI..4.0 * PI);
        let x = band_limited(&mut r, n, 8);
        let y = convolution_forward(&terms, &x, period).unwrap();
        worst = worst.max(rel(&solve_convolution_even_kernel(&terms, &y, period).unwrap(), &x));
    }
    Outcome {
        pass: worst <= 1e-9,
        detail: format!("40 band-limited signals, 1- and 2-term kernels, worst = {worst:.2e}"),
    }
}

/// `Σ_{|k|≤band} c_k e^{2πikm/n}` with random `c_k`.
fn band_limited(r: &mut ChaCha8Rng, n: usize, band: i64) -> Vec<C> {
    let coeffs: Vec<(i64, C)> = (-band..=band).map(|k| (k, cx(r, 1.0))).collect();
    (0..n)
        .map(|m| {
            coeffs
                .iter()
                .map(|&(k, c)| c * C::from_polar(1.0, 2.0 * PI * (k * m as i64) as f64 / n as f64))
                .sum()
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let mut r = rng(707);
    let mut pass = true;
    let mut worst_final = 0.0f64;
    for _ in 0..5 {
        let a = Matrix64::from_fn(8, 8, |_, _| cx(&mut r, 0.2)).shift_diagonal(C::new(1.5, 0.0));
        let op = DenseMatrixOperator64::new(a).unwrap();
        let series = ResolventSeries64::from_pairs(&[
            (C::new(1.0, 0.0), C::new(6.0, 1.0)),
            (C::new(2.0, 0.0), C::new(7.0, -2.0)),
        ])
        .unwrap();
        let x: Vec<C> = (0..8).map(|_| cx(&mut r, 1.0)).collect();
        let cfg = RegularizerConfig64::log_spaced(1e-2, 1e-10, 9).unwrap();
        let rep = convergence_sweep(&series, &op, &x, &cfg).unwrap();
        let fin = rep.final_error() / vec_norm(&x);
        worst_final = worst_final.max(fin);
        pass &= rep.strictly_decreasing() && fin <= 1e-5;
    }
    Outcome {
        pass,
        detail: format!("5 instances, 9 alphas 1e-2..1e-10, worst final error/‖x‖ = {worst_final:.2e}"),
    }
}

fn criterion_8() -> Outcome {
    let mut r = rng(808);
    let (mut wb, mut wg) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let k = r.gen_range(1..=8);
        let spread = r.gen_range(0.5..20.0);
        let poles = separated_points(&mut r, k, 0.01 * spread, |r| cx(r, spread));
        let s = positive_series(&mut r, &poles);
        let (g, b) = gamma_beta(&s).unwrap();
        let z = C::from_polar(1e6 * s.scale(), r.gen_range(0.0..2.0 * PI));
        let f = evaluate_f(&s, z).unwrap();
        wb = wb.max((1.0 / (z * f) - b).norm());
        wg = wg.max((1.0 / f - b * z - g).norm());
    }
    Outcome {
        pass: wb <= 1e-4 && wg <= 1e-3,
        detail: format!("50 series at |z| = 1e6·scale, max |1/(zf) − β| = {wb:.2e}, max |1/f − βz − γ| = {wg:.2e}"),
    }
}

fn criterion_9() -> Outcome {
    let failures: Vec<String> = common::CASES
        .iter()
        .filter_map(|c| common::check_case(c).err())
        .collect();
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!(
                "{} golden runs byte-stable with documented exit codes",
                common::CASES.len()
            )
        } else {
            failures.join("; ")
        },
    }
}

type Criterion = (&'static str, fn() -> Outcome, Option<f64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("left-inverse oracle equivalence", criterion_1, Some(10.0)),
        ("zeros of f inside the pole hull", criterion_2, Some(5.0)),
        ("counterexample annihilates planted eigenvector", criterion_3, None),
        ("recursive filter round trip", criterion_4, None),
        ("integral equation grid convergence", criterion_5, None),
        ("even-kernel convolution round trip", criterion_6, None),
        ("Tikhonov sweep convergence", criterion_7, None),
        ("asymptotic constants beta and gamma", criterion_8, None),
        ("CLI golden runs", criterion_9, None),
    ];
    let mut all = true;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = run();
        let secs = start.elapsed().as_secs_f64();
        if let Some(limit) = budget {
            if secs >= *limit {
                out.pass = false;
                out.detail.push_str(&format!("; over the {limit} s budget"));
            }
        }
        all &= out.pass;
        println!(
            "{} {}: {} ({}; {:.2} s)",
            if out.pass { "PASS" } else { "FAIL" },
            i + 1,
            name,
            out.detail,
            secs
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
