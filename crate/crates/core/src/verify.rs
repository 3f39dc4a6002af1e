//! Randomized verification suites over the library's invariants.
//!
//! Each case draws its own seeded stream (derived from the run seed and the
//! case name), so a case's outcome does not depend on which other cases ran.
//! A case records the largest observed error against its tolerance; it fails
//! if any single check exceeds the tolerance.

use rand::Rng;
use serde::Serialize;

use crate::assignment::{min_trace_bruteforce, min_trace_from_radius, min_trace_hungarian};
use crate::birkhoff::{
    average_all_permutations, birkhoff_decompose, khoury_projection, random_matrix_with,
    rng_from_seed, sample_convex, sample_convex_with, sample_mixed_with, sample_sinkhorn,
    BirkhoffDecomposition, SampleRng,
};
use crate::error::Result;
use crate::geometry::{
    alpha_line_norm, bounding_ball_radius_enum, bounding_ball_radius_s2, center_uniqueness_probe,
    chebyshev_radius, equidistance_check, radius_bounds_s2, Search,
};
use crate::json::fmt_g17;
use crate::matrix::{
    central_form_decompose, jn, DoublyStochasticMatrix, SquareMatrix, DEFAULT_TOL,
};
use crate::permutation::PermutationMatrix;
use crate::spectral::{
    frobenius_norm, schatten_norm, singular_values, von_neumann_gap, SchattenExponent,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Norms,
    Mintrace,
    Radius,
    Chebyshev,
    Decompose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub checks: usize,
    /// Largest observed error; the case passes when every error is `<= tolerance`.
    pub worst: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub cases_run: usize,
    pub cases_failed: usize,
    /// Max over cases of `worst - tolerance`; nonpositive iff nothing failed.
    pub worst_violation: f64,
    pub per_case: Vec<CaseResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases_failed == 0
    }
}

struct Check {
    name: &'static str,
    tol: f64,
    worst: f64,
    checks: usize,
    failures: usize,
    first_failure: Option<String>,
    error: Option<String>,
}

impl Check {
    fn new(name: &'static str, tol: f64) -> Self {
        Self {
            name,
            tol,
            worst: f64::NEG_INFINITY,
            checks: 0,
            failures: 0,
            first_failure: None,
            error: None,
        }
    }

    fn record(&mut self, err: f64, context: impl FnOnce() -> String) {
        self.checks += 1;
        let err = if err.is_nan() { f64::INFINITY } else { err };
        self.worst = self.worst.max(err);
        if err > self.tol {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(format!("{}: error {}", context(), fmt_g17(err)));
            }
        }
    }

    fn record_result<T>(&mut self, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures += 1;
                self.worst = f64::INFINITY;
                self.error.get_or_insert_with(|| e.to_string());
                None
            }
        }
    }

    fn finish(self) -> CaseResult {
        let status = if self.failures == 0 {
            Status::Pass
        } else {
            Status::Fail
        };
        let worst = if self.checks == 0 { 0.0 } else { self.worst };
        let mut detail = format!(
            "{} checks, {} failed, worst {} (tol {})",
            self.checks,
            self.failures,
            fmt_g17(worst),
            fmt_g17(self.tol)
        );
        if let Some(e) = self.error {
            detail.push_str("; error: ");
            detail.push_str(&e);
        }
        if let Some(f) = self.first_failure {
            detail.push_str("; first failure: ");
            detail.push_str(&f);
        }
        CaseResult {
            name: self.name.to_string(),
            status,
            detail,
            checks: self.checks,
            worst,
            tolerance: self.tol,
        }
    }
}

/// Per-case stream: FNV-1a of the name mixed into the run seed.
fn case_rng(seed: u64, name: &str) -> SampleRng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    rng_from_seed(seed ^ h)
}

fn exp(v: f64) -> SchattenExponent {
    SchattenExponent::new(v).expect("valid exponent")
}

const GRID_P: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 5.0];

type CaseFn = fn(u64, usize) -> CaseResult;

fn cases(suite: Suite) -> Vec<CaseFn> {
    let norms: Vec<CaseFn> = vec![
        schatten_monotonicity,
        schatten_permutation_invariance,
        schatten_submultiplicativity,
        schatten_p2_matches_frobenius,
        norm_range_on_birkhoff,
        extremal_norms,
        von_neumann_gap_nonnegative,
        jn_absorbs_doubly_stochastic,
        central_form_roundtrip,
        central_form_of_birkhoff_members,
        birkhoff_closure,
    ];
    let mintrace: Vec<CaseFn> = vec![
        hungarian_vs_bruteforce,
        min_trace_unit_interval,
        min_trace_extremes,
        zero_diagonal_gives_zero,
        min_trace_below_one_off_center,
        shift_covariance,
        min_trace_from_radius_roundtrip,
    ];
    let radius: Vec<CaseFn> = vec![
        closed_form_vs_enumeration,
        radius_sandwich,
        ratio_convergence,
        radius_extremes,
        permutation_averaging,
    ];
    let chebyshev: Vec<CaseFn> = vec![
        chebyshev_radius_by_enumeration,
        equidistance_of_jn,
        alpha_line_minimum,
        uniqueness_probe,
    ];
    let decompose: Vec<CaseFn> = vec![
        decomposition_soundness,
        average_of_all_permutations,
        khoury_generalized_and_fixed,
        khoury_minimality,
        sampler_determinism,
        convex_sampler_concentrates,
    ];
    match suite {
        Suite::All => [norms, mintrace, radius, chebyshev, decompose].concat(),
        Suite::Norms => norms,
        Suite::Mintrace => mintrace,
        Suite::Radius => radius,
        Suite::Chebyshev => chebyshev,
        Suite::Decompose => decompose,
    }
}

/// Runs `suite` with `trials` random instances per randomized case.
pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> VerificationReport {
    let per_case: Vec<CaseResult> = cases(suite).into_iter().map(|f| f(seed, trials)).collect();
    let cases_failed = per_case.iter().filter(|c| c.status == Status::Fail).count();
    let worst_violation = per_case
        .iter()
        .map(|c| c.worst - c.tolerance)
        .fold(f64::NEG_INFINITY, f64::max);
    VerificationReport {
        suite,
        seed,
        trials,
        cases_run: per_case.len(),
        cases_failed,
        worst_violation: if per_case.is_empty() {
            0.0
        } else {
            worst_violation
        },
        per_case,
    }
}

// ---- norms ----

fn schatten_monotonicity(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("schatten_monotonicity", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=6);
        let a = random_matrix_with(n, -5.0, 5.0, &mut rng);
        let (x, y): (f64, f64) = (rng.random_range(1.0..10.0), rng.random_range(1.0..10.0));
        let (p, q) = (x.min(y), x.max(y));
        let Some(s) = c.record_result(singular_values(&a)) else {
            continue;
        };
        let (s1, sp, sq) = (s.schatten(exp(1.0)), s.schatten(exp(p)), s.schatten(exp(q)));
        c.record((sp - s1).max(sq - sp), || format!("n={n} p={p} q={q}"));
    }
    c.finish()
}

fn schatten_permutation_invariance(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("schatten_permutation_invariance", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=6);
        let a = random_matrix_with(n, -5.0, 5.0, &mut rng);
        let p = exp(rng.random_range(1.0..6.0));
        let (l, r) = (
            PermutationMatrix::random(n, &mut rng),
            PermutationMatrix::random(n, &mut rng),
        );
        let pa = a.permute_rows(&l).and_then(|m| m.permute_cols(&r));
        let Some(pa) = c.record_result(pa) else {
            continue;
        };
        let (Some(x), Some(y)) = (
            c.record_result(schatten_norm(&a, p)),
            c.record_result(schatten_norm(&pa, p)),
        ) else {
            continue;
        };
        c.record((x - y).abs(), || format!("n={n} {p:?}"));
    }
    c.finish()
}

fn schatten_submultiplicativity(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("schatten_submultiplicativity", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=6);
        let a = random_matrix_with(n, -3.0, 3.0, &mut rng);
        let b = random_matrix_with(n, -3.0, 3.0, &mut rng);
        let p = exp(rng.random_range(1.0..6.0));
        let ab = a.matmul(&b).expect("same dimension");
        let vals = [&ab, &a, &b].map(|m| schatten_norm(m, p));
        let [Some(x), Some(y), Some(z)] = vals.map(|v| c.record_result(v)) else {
            continue;
        };
        c.record(x - y * z, || format!("n={n} {p:?}"));
    }
    c.finish()
}

fn schatten_p2_matches_frobenius(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("schatten_p2_matches_frobenius", 1e-10);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(1..=8);
        let a = random_matrix_with(n, -10.0, 10.0, &mut rng);
        let Some(s2) = c.record_result(schatten_norm(&a, SchattenExponent::TWO)) else {
            continue;
        };
        let f = frobenius_norm(&a);
        c.record((s2 - f).abs() / (1.0 + f), || format!("n={n}"));
    }
    c.finish()
}

fn norm_range_on_birkhoff(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("norm_range_on_birkhoff", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=8);
        let Some(d) = c.record_result(sample_mixed_with(n, &mut rng)) else {
            continue;
        };
        let Some(s) = c.record_result(singular_values(&d)) else {
            continue;
        };
        c.record((s.max() - 1.0).abs(), || format!("sigma_1, n={n}"));
        for p in [1.0, 1.5, 2.0, 3.0] {
            let v = s.schatten(exp(p));
            let hi = (n as f64).powf(1.0 / p);
            c.record((1.0 - v).max(v - hi), || format!("n={n} p={p} norm={v}"));
        }
    }
    c.finish()
}

fn extremal_norms(seed: u64, _trials: usize) -> CaseResult {
    let mut c = Check::new("extremal_norms", 1e-10);
    let mut rng = case_rng(seed, c.name);
    for n in 1..=8 {
        let q = PermutationMatrix::random(n, &mut rng).to_dense();
        for p in GRID_P {
            let e = exp(p);
            if let Some(v) = c.record_result(schatten_norm(jn(n).as_matrix(), e)) {
                c.record((v - 1.0).abs(), || format!("J_{n} p={p}"));
            }
            if let Some(v) = c.record_result(schatten_norm(&q, e)) {
                c.record((v - (n as f64).powf(1.0 / p)).abs(), || {
                    format!("P n={n} p={p}")
                });
            }
        }
    }
    c.finish()
}

fn von_neumann_gap_nonnegative(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("von_neumann_gap_nonnegative", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=6);
        let b = random_matrix_with(n, -5.0, 5.0, &mut rng);
        let m = random_matrix_with(n, -5.0, 5.0, &mut rng);
        if let Some(g) = c.record_result(von_neumann_gap(&b, &m)) {
            c.record(-g, || format!("n={n}"));
        }
        // B = C = M M^T is symmetric PSD: the inequality is tight
        let psd = b.matmul(&b.transpose()).expect("same dimension");
        if let Some(g) = c.record_result(von_neumann_gap(&psd, &psd)) {
            let scale = 1.0 + frobenius_norm(&psd).powi(2);
            c.record(g.abs() / scale, || format!("psd equality n={n} gap={g}"));
        }
    }
    c.finish()
}

fn jn_absorbs_doubly_stochastic(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("jn_absorbs_doubly_stochastic", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(1..=10);
        let Some(d) = c.record_result(sample_mixed_with(n, &mut rng)) else {
            continue;
        };
        let j = jn(n);
        for prod in [d.matmul(&j), j.matmul(&d)] {
            let e = prod.and_then(|m| m.sub(&j)).map(|m| frobenius_norm(&m));
            if let Some(e) = c.record_result(e) {
                c.record(e, || format!("n={n}"));
            }
        }
    }
    c.finish()
}

fn central_form_roundtrip(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("central_form_roundtrip", 1e-10);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=8);
        let (a, b) = (
            rng.random_range(-10.0..=10.0),
            rng.random_range(-10.0..=10.0),
        );
        let m = SquareMatrix::identity(n)
            .scale(a)
            .add(&jn(n).scale(b))
            .expect("same dimension");
        if let Some(cf) = c.record_result(central_form_decompose(&m, 1e-12)) {
            c.record((cf.a - a).abs().max((cf.b - b).abs()), || {
                format!("n={n} a={a} b={b}")
            });
        }
    }
    c.finish()
}

fn central_form_of_birkhoff_members(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("central_form_of_birkhoff_members", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=8);
        let t: f64 = rng.random_range(0.0..=1.0);
        let m = SquareMatrix::identity(n)
            .scale(t)
            .add(&jn(n).scale(1.0 - t))
            .expect("same dimension");
        let Some(d) = c.record_result(DoublyStochasticMatrix::with_default_tol(m)) else {
            continue;
        };
        if let Some(cf) = c.record_result(central_form_decompose(&d, 1e-12)) {
            let err = (-cf.a).max(-cf.b).max((cf.a + cf.b - 1.0).abs());
            c.record(err, || format!("n={n} t={t} a={} b={}", cf.a, cf.b));
        }
    }
    c.finish()
}

fn birkhoff_closure(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("birkhoff_closure", 0.0);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(1..=10);
        let (Some(d), Some(e)) = (
            c.record_result(sample_mixed_with(n, &mut rng)),
            c.record_result(sample_mixed_with(n, &mut rng)),
        ) else {
            continue;
        };
        let q = PermutationMatrix::random(n, &mut rng);
        for prod in [d.permute_rows(&q), d.permute_cols(&q), d.matmul(&e)] {
            let ok = prod
                .and_then(|m| DoublyStochasticMatrix::new(m, DEFAULT_TOL))
                .is_ok();
            c.record(if ok { 0.0 } else { 1.0 }, || format!("n={n}"));
        }
    }
    c.finish()
}

// ---- minimal trace ----

fn hungarian_vs_bruteforce(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("hungarian_vs_bruteforce", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=8);
        let a = random_matrix_with(n, -10.0, 10.0, &mut rng);
        let h = min_trace_hungarian(&a);
        let Some(b) = c.record_result(min_trace_bruteforce(&a)) else {
            continue;
        };
        let via_argmin = h.argmin.trace_product(&a).expect("same dimension");
        c.record(
            (h.value - b.value).abs().max((via_argmin - b.value).abs()),
            || format!("n={n}"),
        );
    }
    c.finish()
}

fn min_trace_unit_interval(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("min_trace_unit_interval", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(1..=12);
        let Some(d) = c.record_result(sample_mixed_with(n, &mut rng)) else {
            continue;
        };
        let t = min_trace_hungarian(&d).value;
        c.record((-t).max(t - 1.0), || format!("n={n} tr_min={t}"));
    }
    c.finish()
}

fn min_trace_extremes(seed: u64, _trials: usize) -> CaseResult {
    let mut c = Check::new("min_trace_extremes", 0.0);
    let mut rng = case_rng(seed, c.name);
    for n in 1..=12 {
        let t = min_trace_hungarian(jn(n).as_matrix()).value;
        c.record((t - 1.0).abs(), || format!("J_{n}: {t}"));
        if n >= 2 {
            let q = PermutationMatrix::random(n, &mut rng).to_dense();
            let t = min_trace_hungarian(&q).value;
            c.record(t.abs(), || format!("permutation n={n}: {t}"));
        }
    }
    c.finish()
}

/// A doubly stochastic matrix vanishing on the diagonal of a random permutation.
fn zero_diagonal_sample(n: usize, rng: &mut SampleRng) -> DoublyStochasticMatrix {
    let tau = PermutationMatrix::random(n, rng);
    let k = rng.random_range(1..=2 * n);
    let mut data = vec![0.0; n * n];
    let weights: Vec<f64> = (0..k).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in weights {
        let q = loop {
            let q = PermutationMatrix::random(n, rng);
            if q.sigma().iter().zip(tau.sigma()).all(|(a, b)| a != b) {
                break q;
            }
        };
        for (i, &j) in q.sigma().iter().enumerate() {
            data[i * n + j] += w / total;
        }
    }
    DoublyStochasticMatrix::with_default_tol(SquareMatrix::new(n, data).expect("finite"))
        .expect("convex combination of permutations")
}

fn zero_diagonal_gives_zero(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("zero_diagonal_gives_zero", 0.0);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=10);
        let d = zero_diagonal_sample(n, &mut rng);
        let t = min_trace_hungarian(&d).value;
        c.record(t.abs(), || format!("n={n} tr_min={t}"));
    }
    c.finish()
}

fn min_trace_below_one_off_center(seed: u64, trials: usize) -> CaseResult {
    // strict: tr_min(D) < 1 whenever D is away from J_n
    let mut c = Check::new("min_trace_below_one_off_center", -1e-12);
    let mut rng = case_rng(seed, c.name);
    let mut done = 0;
    while done < trials {
        let n = rng.random_range(2..=10);
        let Some(d) = c.record_result(sample_mixed_with(n, &mut rng)) else {
            break;
        };
        if frobenius_norm(&d.sub(&jn(n)).expect("same dimension")) < 0.1 {
            continue;
        }
        done += 1;
        let t = min_trace_hungarian(&d).value;
        c.record(t - 1.0, || format!("n={n} tr_min={t}"));
    }
    c.finish()
}

fn shift_covariance(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("shift_covariance", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(1..=10);
        let a = random_matrix_with(n, -10.0, 10.0, &mut rng);
        let shift: f64 = rng.random_range(-5.0..5.0);
        let shifted = a
            .add(&SquareMatrix::ones(n).scale(shift))
            .expect("same dimension");
        let lhs = min_trace_hungarian(&shifted).value;
        let rhs = min_trace_hungarian(&a).value + shift * n as f64;
        c.record((lhs - rhs).abs() / (1.0 + shift.abs() * n as f64), || {
            format!("n={n} c={shift}")
        });
    }
    c.finish()
}

fn min_trace_from_radius_roundtrip(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("min_trace_from_radius_roundtrip", 1e-8);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(1..=8);
        let Some(d) = c.record_result(sample_mixed_with(n, &mut rng)) else {
            continue;
        };
        let via_radius = min_trace_from_radius(&d);
        let Some(b) = c.record_result(min_trace_bruteforce(&d)) else {
            continue;
        };
        c.record((via_radius - b.value).abs(), || format!("n={n}"));
    }
    c.finish()
}

// ---- radius ----

fn closed_form_vs_enumeration(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("closed_form_vs_enumeration", 1e-8);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=7);
        let a = random_matrix_with(n, -2.0, 2.0, &mut rng);
        let closed = bounding_ball_radius_s2(&a);
        let Some(en) = c.record_result(bounding_ball_radius_enum(
            &a,
            SchattenExponent::TWO,
            Search::Exhaustive,
        )) else {
            continue;
        };
        let witness_dist =
            frobenius_norm(&a.sub_permutation(&closed.witness).expect("same dimension"));
        let err = (closed.radius - en.radius)
            .abs()
            .max((witness_dist - closed.radius).abs());
        c.record(err, || format!("n={n}"));
    }
    c.finish()
}

fn radius_sandwich(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("radius_sandwich", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(1..=12);
        let Some(d) = c.record_result(sample_mixed_with(n, &mut rng)) else {
            continue;
        };
        let r = bounding_ball_radius_s2(&d).radius;
        let b = radius_bounds_s2(&d);
        let r2 = r * r;
        let err = (b.lo - r)
            .max(r - b.hi)
            .max(b.crude_lo_sq - r2)
            .max(r2 - b.crude_hi_sq);
        c.record(err, || format!("n={n} r={r} lo={} hi={}", b.lo, b.hi));
    }
    c.finish()
}

fn ratio_convergence(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("ratio_convergence", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(1..=12);
        let Some(d) = c.record_result(sample_mixed_with(n, &mut rng)) else {
            continue;
        };
        let nf = n as f64;
        let r = bounding_ball_radius_s2(&d).radius;
        let f2 = frobenius_norm(&d).powi(2);
        // |r^2 / (|D|^2 + n - 1) - 1| <= 1 / (|D|^2 + n - 1) <= 1 / n
        let m = f2 + nf - 1.0;
        let dev = (r * r / m - 1.0).abs();
        // and r^2 / (|D|^2 + n) lies in [1 - 2 / (|D|^2 + n), 1]
        let ratio = r * r / (f2 + nf);
        let err = (dev - 1.0 / m)
            .max(dev - 1.0 / nf)
            .max(1.0 - 2.0 / (f2 + nf) - ratio)
            .max(ratio - 1.0);
        c.record(err, || format!("n={n} dev={dev}"));
    }
    c.finish()
}

fn radius_extremes(seed: u64, _trials: usize) -> CaseResult {
    let mut c = Check::new("radius_extremes", 1e-12);
    let mut rng = case_rng(seed, c.name);
    for n in 2..=12 {
        let nf = n as f64;
        let r = bounding_ball_radius_s2(jn(n).as_matrix()).radius;
        c.record((r - (nf - 1.0).sqrt()).abs(), || format!("J_{n}"));
        let q = PermutationMatrix::random(n, &mut rng).to_dense();
        let r = bounding_ball_radius_s2(&q).radius;
        c.record((r - (2.0 * nf).sqrt()).abs(), || {
            format!("permutation n={n}")
        });
    }
    c.finish()
}

fn permutation_averaging(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("permutation_averaging", 1e-10);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=7);
        let a = random_matrix_with(n, -3.0, 3.0, &mut rng);
        let p = exp(rng.random_range(1.0..5.0));
        let j = jn(n);
        let jaj = j
            .matmul(&a)
            .and_then(|m| m.matmul(&j))
            .expect("same dimension");
        let alpha = a.total() / n as f64;
        let lhs = schatten_norm(
            &jaj.sub(&SquareMatrix::identity(n)).expect("same dimension"),
            p,
        );
        let Some(lhs) = c.record_result(lhs) else {
            continue;
        };
        let Some(rhs) = c.record_result(alpha_line_norm(alpha, n, p)) else {
            continue;
        };
        c.record((lhs - rhs).abs() / (1.0 + rhs), || {
            format!("n={n} {p:?} alpha={alpha}")
        });
    }
    c.finish()
}

// ---- Chebyshev ----

fn chebyshev_radius_by_enumeration(_seed: u64, _trials: usize) -> CaseResult {
    let mut c = Check::new("chebyshev_radius_by_enumeration", 1e-9);
    for n in 2..=7 {
        for p in GRID_P {
            let e = exp(p);
            let r = bounding_ball_radius_enum(jn(n).as_matrix(), e, Search::Exhaustive);
            let Some(r) = c.record_result(r) else {
                continue;
            };
            let Some(cheb) = c.record_result(chebyshev_radius(n, e)) else {
                continue;
            };
            c.record((r.radius - cheb.radius).abs(), || format!("n={n} p={p}"));
        }
    }
    c.finish()
}

fn equidistance_of_jn(_seed: u64, _trials: usize) -> CaseResult {
    let mut c = Check::new("equidistance_of_jn", 1e-10);
    for n in 2..=7 {
        for p in GRID_P {
            let rep = equidistance_check(jn(n).as_matrix(), exp(p), 1e-10, Search::Exhaustive);
            if let Some(rep) = c.record_result(rep) {
                c.record(rep.max_dev, || format!("n={n} p={p}"));
            }
        }
    }
    c.finish()
}

fn alpha_line_minimum(_seed: u64, _trials: usize) -> CaseResult {
    let mut c = Check::new("alpha_line_minimum", 1e-10);
    for n in 2..=7 {
        for p in GRID_P {
            let e = exp(p);
            let Some(min) = c.record_result(alpha_line_norm(1.0, n, e)) else {
                continue;
            };
            for k in 0..=160 {
                let alpha = -3.0 + 0.05 * k as f64;
                let Some(v) = c.record_result(alpha_line_norm(alpha, n, e)) else {
                    continue;
                };
                c.record(min - v, || format!("n={n} p={p} alpha={alpha}"));
                if k % 20 == 0 {
                    let m = jn(n)
                        .scale(alpha)
                        .sub(&SquareMatrix::identity(n))
                        .expect("same dimension");
                    if let Some(s) = c.record_result(schatten_norm(&m, e)) {
                        c.record((s - v).abs(), || format!("svd n={n} p={p} alpha={alpha}"));
                    }
                }
            }
        }
    }
    c.finish()
}

fn uniqueness_probe(seed: u64, trials: usize) -> CaseResult {
    // margin must be strictly positive
    let mut c = Check::new("uniqueness_probe", 0.0);
    for n in [3, 4, 5] {
        for p in [1.0, 2.0] {
            let rep = center_uniqueness_probe(n, exp(p), trials, seed ^ (n as u64 * 31 + p as u64));
            if let Some(rep) = c.record_result(rep) {
                if rep.trials > 0 {
                    c.record(-rep.min_margin, || {
                        format!("n={n} p={p}: {} falsifiers", rep.falsifiers.len())
                    });
                }
            }
        }
    }
    if c.worst == 0.0 {
        // a zero margin is a tie, not a strict increase
        c.failures += 1;
    }
    c.finish()
}

// ---- decomposition and sampling ----

fn decomposition_soundness(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("decomposition_soundness", 1e-8);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(2..=12);
        let Some(d) = c.record_result(sample_mixed_with(n, &mut rng)) else {
            continue;
        };
        let Some(dec) = c.record_result(birkhoff_decompose(&d)) else {
            continue;
        };
        let recon = frobenius_norm(&dec.reconstruct().sub(&d).expect("same dimension"));
        let wsum = (dec.weight_sum() - 1.0).abs();
        let bad_weight = dec
            .terms
            .iter()
            .any(|t| !(t.weight > 0.0 && t.weight <= 1.0));
        let too_many = dec.len() > BirkhoffDecomposition::max_terms(n);
        let err = recon
            .max(wsum * 10.0) // weight sum tolerance is 1e-9
            .max(if bad_weight || too_many {
                f64::INFINITY
            } else {
                0.0
            });
        c.record(err, || {
            format!("n={n} terms={} recon={recon} wsum_dev={wsum}", dec.len())
        });
    }
    c.finish()
}

fn average_of_all_permutations(_seed: u64, _trials: usize) -> CaseResult {
    let mut c = Check::new("average_of_all_permutations", 1e-12);
    for n in 1..=7 {
        let avg = average_all_permutations(n).and_then(|m| m.max_abs_diff(&jn(n)));
        if let Some(e) = c.record_result(avg) {
            c.record(e, || format!("n={n}"));
        }
    }
    c.finish()
}

fn khoury_generalized_and_fixed(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("khoury_generalized_and_fixed", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials {
        let n = rng.random_range(1..=10);
        let b = random_matrix_with(n, -5.0, 5.0, &mut rng);
        let g = khoury_projection(&b);
        let sums = (0..n)
            .map(|i| (g.row_sum(i) - 1.0).abs().max((g.col_sum(i) - 1.0).abs()))
            .fold(0.0, f64::max);
        c.record(sums, || format!("sums n={n}"));
        let Some(d) = c.record_result(sample_mixed_with(n, &mut rng)) else {
            continue;
        };
        let fixed = khoury_projection(&d)
            .max_abs_diff(&d)
            .expect("same dimension");
        // fixed-point tolerance is 1e-10
        c.record(fixed * 10.0, || format!("fixed point n={n}"));
    }
    c.finish()
}

fn khoury_minimality(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("khoury_minimality", 1e-9);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials.min(50) {
        let n = rng.random_range(1..=4);
        let b = random_matrix_with(n, -3.0, 3.0, &mut rng);
        let best = frobenius_norm(&b.sub(&khoury_projection(&b)).expect("same dimension"));
        let mut worst: f64 = f64::NEG_INFINITY;
        for _ in 0..1000 {
            let g = khoury_projection(&random_matrix_with(n, -3.0, 3.0, &mut rng));
            let other = frobenius_norm(&b.sub(&g).expect("same dimension"));
            worst = worst.max(best - other);
        }
        c.record(worst, || format!("n={n}"));
    }
    c.finish()
}

fn sampler_determinism(seed: u64, trials: usize) -> CaseResult {
    let mut c = Check::new("sampler_determinism", 0.0);
    let mut rng = case_rng(seed, c.name);
    for _ in 0..trials.min(20) {
        let n = rng.random_range(1..=8);
        let s: u64 = rng.random();
        let k = rng.random_range(1..=5);
        let pairs = [
            (sample_convex(n, k, s), sample_convex(n, k, s)),
            (
                sample_sinkhorn(n, s, 10_000, 1e-12),
                sample_sinkhorn(n, s, 10_000, 1e-12),
            ),
        ];
        for (x, y) in pairs {
            let (Some(x), Some(y)) = (c.record_result(x), c.record_result(y)) else {
                continue;
            };
            let same = x
                .as_slice()
                .iter()
                .zip(y.as_slice())
                .all(|(a, b)| a.to_bits() == b.to_bits());
            c.record(if same { 0.0 } else { 1.0 }, || format!("n={n} seed={s}"));
        }
    }
    c.finish()
}

fn convex_sampler_concentrates(seed: u64, _trials: usize) -> CaseResult {
    let mut c = Check::new("convex_sampler_concentrates", 0.05);
    let mut rng = case_rng(seed, c.name);
    let Some(d) = c.record_result(sample_convex_with(3, 1000, &mut rng)) else {
        return c.finish();
    };
    let dev = d.max_abs_diff(&jn(3)).expect("same dimension");
    c.record(dev, || "n=3 k=1000".into());
    c.finish()
}
