//! Acceptance criteria. Each test prints one line:
//!
//! ```text
//! [criterion NN] PASS|FAIL <title>: <measured values and tolerances>
//! ```
//!
//! Run with `cargo test -p birkhoff --test acceptance -- --nocapture --test-threads=1`
//! to see every line in order.

mod common;

use birkhoff::birkhoff::{random_matrix_with, rng_from_seed, sample_mixed_with, SampleRng};
use birkhoff::geometry::Search;
use birkhoff::{
    average_all_permutations, birkhoff_decompose, bounding_ball_radius_enum,
    bounding_ball_radius_s2, center_uniqueness_probe, equidistance_check, frobenius_norm, jn,
    min_trace_bruteforce, min_trace_hungarian, radius_bounds_s2, schatten_norm, von_neumann_gap,
    BirkhoffDecomposition, DoublyStochasticMatrix, PermutationMatrix, SchattenExponent,
    SquareMatrix,
};
use common::{radius_oracle, to_na};
use nalgebra::DMatrix;
use rand::Rng;

const GRID_P: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 5.0];

fn report(id: u32, title: &str, ok: bool, detail: String) {
    println!(
        "[criterion {id:02}] {} {title}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} failed: {detail}");
}

fn exp(p: f64) -> SchattenExponent {
    SchattenExponent::new(p).unwrap()
}

fn samples(seed: u64, count: usize, n_lo: usize, n_hi: usize) -> Vec<DoublyStochasticMatrix> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(n_lo..=n_hi);
            sample_mixed_with(n, &mut rng).unwrap()
        })
        .collect()
}

#[test]
fn criterion_01_closed_form_radius_matches_enumeration() {
    let mut rng = rng_from_seed(101);
    let mut worst: f64 = 0.0;
    for t in 0..200 {
        let n = 2 + t % 6;
        let a = random_matrix_with(n, -2.0, 2.0, &mut rng);
        let closed = bounding_ball_radius_s2(&a).radius;
        let (oracle, _) = radius_oracle(&a, 2.0);
        worst = worst.max((closed - oracle).abs());
    }
    report(
        1,
        "closed-form Frobenius radius vs exhaustive maximum",
        worst <= 1e-8,
        format!("200 matrices, n in 2..=7, max |closed - exhaustive| = {worst:.3e} (tol 1e-8)"),
    );
}

#[test]
fn criterion_02_chebyshev_radius_values() {
    let mut worst_lib: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    for n in 2..=7 {
        for p in GRID_P {
            let want = ((n - 1) as f64).powf(1.0 / p);
            let lib = bounding_ball_radius_enum(&jn(n), exp(p), Search::Exhaustive).unwrap();
            let (oracle, _) = radius_oracle(&jn(n), p);
            worst_lib = worst_lib.max((lib.radius - want).abs());
            worst_oracle = worst_oracle.max((oracle - want).abs());
        }
    }
    let worst = worst_lib.max(worst_oracle);
    report(
        2,
        "max_P |J_n - P|_p = (n-1)^(1/p)",
        worst <= 1e-9,
        format!(
            "n in 2..=7, p in {GRID_P:?}: max error {worst_lib:.3e} (library), {worst_oracle:.3e} (reference SVD), tol 1e-9"
        ),
    );
}

#[test]
fn criterion_03_equidistance() {
    let mut worst_lib: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    for n in 2..=7 {
        for p in GRID_P {
            let rep = equidistance_check(&jn(n), exp(p), 1e-10, Search::Exhaustive).unwrap();
            worst_lib = worst_lib.max(rep.max - rep.min);
            let (_, d) = radius_oracle(&jn(n), p);
            let spread = d.iter().copied().fold(f64::NEG_INFINITY, f64::max)
                - d.iter().copied().fold(f64::INFINITY, f64::min);
            worst_oracle = worst_oracle.max(spread);
        }
    }
    let worst = worst_lib.max(worst_oracle);
    report(
        3,
        "every permutation is equidistant from J_n",
        worst <= 1e-10,
        format!(
            "max spread {worst_lib:.3e} (library), {worst_oracle:.3e} (reference SVD), tol 1e-10"
        ),
    );
}

#[test]
fn criterion_04_minimal_trace() {
    let mut rng = rng_from_seed(104);
    let mut worst_cost: f64 = 0.0;
    for t in 0..200 {
        let n = 2 + t % 7;
        let a = random_matrix_with(n, -10.0, 10.0, &mut rng);
        let h = min_trace_hungarian(&a).value;
        let b = min_trace_bruteforce(&a).unwrap().value;
        let o = common::min_trace_oracle(&a);
        worst_cost = worst_cost.max((h - b).abs()).max((h - o).abs());
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for d in samples(204, 500, 2, 12) {
        let t = min_trace_hungarian(&d).value;
        lo = lo.min(t);
        hi = hi.max(t);
    }
    let jn_exact = (1..=12).all(|n| min_trace_hungarian(&jn(n)).value == 1.0);
    let perm_zero = (2..=12).all(|n| {
        (0..10).all(|_| {
            min_trace_hungarian(&PermutationMatrix::random(n, &mut rng).to_dense()).value == 0.0
        })
    });
    let ok = worst_cost <= 1e-9 && lo >= -1e-9 && hi <= 1.0 + 1e-9 && jn_exact && perm_zero;
    report(
        4,
        "Hungarian vs brute force, range of tr_min on the polytope",
        ok,
        format!(
            "200 cost matrices n in 2..=8: max diff {worst_cost:.3e} (tol 1e-9); \
             500 samples: tr_min in [{lo:.6}, {hi:.6}] (need [-1e-9, 1+1e-9]); \
             tr_min(J_n) == 1 for n<=12: {jn_exact}; tr_min(P) == 0: {perm_zero}"
        ),
    );
}

#[test]
fn criterion_05_norm_range_and_extremizers() {
    let mut worst_range = f64::NEG_INFINITY;
    for d in samples(105, 500, 2, 12) {
        let n = d.dim() as f64;
        for p in [1.0, 1.5, 2.0, 3.0] {
            let v = schatten_norm(&d, exp(p)).unwrap();
            worst_range = worst_range.max(1.0 - v).max(v - n.powf(1.0 / p));
        }
    }
    let mut rng = rng_from_seed(205);
    let mut worst_ext: f64 = 0.0;
    for n in 1..=12 {
        for p in GRID_P {
            let j = schatten_norm(&jn(n), exp(p)).unwrap();
            let q =
                schatten_norm(&PermutationMatrix::random(n, &mut rng).to_dense(), exp(p)).unwrap();
            worst_ext = worst_ext
                .max((j - 1.0).abs())
                .max((q - (n as f64).powf(1.0 / p)).abs());
        }
    }
    report(
        5,
        "1 <= |D|_p <= n^(1/p), attained at J_n and permutations",
        worst_range <= 1e-9 && worst_ext <= 1e-10,
        format!(
            "500 samples x p in [1, 1.5, 2, 3]: worst excursion {worst_range:.3e} (tol 1e-9); \
             extremizers max error {worst_ext:.3e} (tol 1e-10)"
        ),
    );
}

#[test]
fn criterion_06_radius_sandwich_and_ratio() {
    let mut sandwich_bad = 0;
    let mut crude_bad = 0;
    let mut ratio_bad = 0;
    let mut worst_ratio_excess = f64::NEG_INFINITY;
    let all = samples(106, 500, 2, 12);
    for d in &all {
        let n = d.dim() as f64;
        let r = bounding_ball_radius_s2(d).radius;
        let b = radius_bounds_s2(d);
        if r < b.lo - 1e-9 || r > b.hi + 1e-9 {
            sandwich_bad += 1;
        }
        if r * r < n - 1.0 - 1e-9 || r * r > 2.0 * n + 1e-9 {
            crude_bad += 1;
        }
        let f2 = frobenius_norm(d).powi(2);
        let excess = (r * r / (f2 + n) - 1.0).abs() - (1.0 / n + 1e-9);
        worst_ratio_excess = worst_ratio_excess.max(excess);
        if excess > 0.0 {
            ratio_bad += 1;
        }
    }
    report(
        6,
        "lo <= r <= hi, crude bounds, |r^2/(|D|^2+n) - 1| <= 1/n",
        sandwich_bad == 0 && crude_bad == 0 && ratio_bad == 0,
        format!(
            "{} samples: sandwich violations {sandwich_bad}, crude-bound violations {crude_bad}, \
             ratio violations {ratio_bad} (worst excess over 1/n + 1e-9: {worst_ratio_excess:.3e})",
            all.len()
        ),
    );
}

#[test]
fn criterion_07_uniqueness_probe() {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in [3, 4, 5] {
        for p in [1.0, 2.0] {
            let rep = center_uniqueness_probe(n, exp(p), 100, 700 + n as u64).unwrap();
            ok &= rep.falsifiers.is_empty() && rep.min_margin > 0.0 && rep.trials > 0;
            lines.push(format!(
                "n={n} p={p}: {} candidates, min margin {:.3e}, {} falsifiers",
                rep.trials,
                rep.min_margin,
                rep.falsifiers.len()
            ));
        }
    }
    report(7, "no center beats J_n", ok, lines.join("; "));
}

#[test]
fn criterion_08_birkhoff_decomposition() {
    let (mut worst_rec, mut worst_w): (f64, f64) = (0.0, 0.0);
    let mut over_count = 0;
    for d in samples(108, 200, 2, 12) {
        let dec = birkhoff_decompose(&d).unwrap();
        let rec = common::frob_oracle(&(to_na(&dec.reconstruct()) - to_na(&d)));
        worst_rec = worst_rec.max(rec);
        worst_w = worst_w.max((dec.terms.iter().map(|t| t.weight).sum::<f64>() - 1.0).abs());
        if dec.len() > BirkhoffDecomposition::max_terms(d.dim()) {
            over_count += 1;
        }
    }
    let mut worst_avg: f64 = 0.0;
    for n in 1..=6 {
        let avg = average_all_permutations(n).unwrap();
        worst_avg = worst_avg.max(avg.max_abs_diff(&jn(n)).unwrap());
    }
    report(
        8,
        "decomposition soundness and the permutation average",
        worst_rec <= 1e-8 && worst_w <= 1e-9 && over_count == 0 && worst_avg <= 1e-12,
        format!(
            "200 samples: reconstruction {worst_rec:.3e} (tol 1e-8), weight sum {worst_w:.3e} (tol 1e-9), \
             over n^2-2n+2 terms: {over_count}; average vs J_n for n<=6: {worst_avg:.3e} (tol 1e-12)"
        ),
    );
}

#[test]
fn criterion_09_schatten_properties() {
    let mut rng = rng_from_seed(109);
    let (mut mono, mut perm, mut sub) = (f64::NEG_INFINITY, 0.0f64, f64::NEG_INFINITY);
    for _ in 0..500 {
        let n = rng.random_range(2..=6);
        let a = random_matrix_with(n, -3.0, 3.0, &mut rng);
        let b = random_matrix_with(n, -3.0, 3.0, &mut rng);
        let (x, y): (f64, f64) = (rng.random_range(1.0..8.0), rng.random_range(1.0..8.0));
        let (p, q) = (exp(x.min(y)), exp(x.max(y)));
        mono = mono.max(schatten_norm(&a, q).unwrap() - schatten_norm(&a, p).unwrap());

        let l = PermutationMatrix::random(n, &mut rng);
        let r = PermutationMatrix::random(n, &mut rng);
        let pa = a.permute_rows(&l).unwrap().permute_cols(&r).unwrap();
        perm = perm.max((schatten_norm(&pa, p).unwrap() - schatten_norm(&a, p).unwrap()).abs());

        let ab = a.matmul(&b).unwrap();
        sub = sub.max(
            schatten_norm(&ab, p).unwrap()
                - schatten_norm(&a, p).unwrap() * schatten_norm(&b, p).unwrap(),
        );
    }
    report(
        9,
        "monotone in p, permutation invariant, submultiplicative",
        mono <= 1e-9 && perm <= 1e-9 && sub <= 1e-9,
        format!(
            "500 pairs: max(|A|_q - |A|_p) = {mono:.3e}, max invariance error {perm:.3e}, \
             max(|AB| - |A||B|) = {sub:.3e} (tol 1e-9 each)"
        ),
    );
}

#[test]
fn criterion_10_min_trace_from_radius() {
    let mut worst: f64 = 0.0;
    for d in samples(110, 100, 1, 8) {
        let n = d.dim() as f64;
        let r = bounding_ball_radius_s2(&d).radius;
        let f2 = common::frob_oracle(&to_na(&d)).powi(2);
        let recovered = (f2 + n - r * r) / 2.0;
        worst = worst.max((recovered - min_trace_hungarian(&d).value).abs());
    }
    report(
        10,
        "(|D|^2 + n - r^2) / 2 recovers tr_min",
        worst <= 1e-8,
        format!("100 samples, n <= 8: max error {worst:.3e} (tol 1e-8)"),
    );
}

fn random_orthogonal(n: usize, rng: &mut SampleRng) -> DMatrix<f64> {
    let m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    m.qr().q()
}

fn from_na(m: &DMatrix<f64>) -> SquareMatrix {
    SquareMatrix::from_fn(m.nrows(), |i, j| m[(i, j)])
}

#[test]
fn criterion_11_von_neumann_gap() {
    let mut rng = rng_from_seed(111);
    let mut most_negative = f64::INFINITY;
    for _ in 0..500 {
        let n = rng.random_range(1..=7);
        let b = random_matrix_with(n, -5.0, 5.0, &mut rng);
        let c = random_matrix_with(n, -5.0, 5.0, &mut rng);
        most_negative = most_negative.min(von_neumann_gap(&b, &c).unwrap());
    }
    let mut worst_psd: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(1..=7);
        let q = random_orthogonal(n, &mut rng);
        let mut lam: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..3.0)).collect();
        let mut mu: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..3.0)).collect();
        lam.sort_by(|x, y| y.total_cmp(x));
        mu.sort_by(|x, y| y.total_cmp(x));
        let b = &q * DMatrix::from_diagonal(&lam.into()) * q.transpose();
        let c = &q * DMatrix::from_diagonal(&mu.into()) * q.transpose();
        let gap = von_neumann_gap(&from_na(&b), &from_na(&c)).unwrap();
        worst_psd = worst_psd.max(gap.abs());
    }
    report(
        11,
        "von Neumann gap nonnegative, zero for aligned PSD pairs",
        most_negative >= -1e-9 && worst_psd <= 1e-9,
        format!(
            "500 random pairs: min gap {most_negative:.3e} (need >= -1e-9); \
             100 aligned PSD pairs: max |gap| {worst_psd:.3e} (tol 1e-9)"
        ),
    );
}

#[test]
fn criterion_12_cli_end_to_end() {
    let golden = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let data = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let d = |f: &str| data.join(f).display().to_string();
    let run = |args: &[&str]| {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_birkhoff"))
            .args(args)
            .output()
            .unwrap();
        (out.status.code(), String::from_utf8(out.stdout).unwrap())
    };

    let (verify_code, verify_out) =
        run(&["verify", "--suite", "all", "--seed", "7", "--trials", "100"]);
    let cases = [
        (
            vec!["norm".to_string(), d("jn3.csv"), "--p".into(), "2".into()],
            "norm_jn3_p2.json",
        ),
        (
            vec!["mintrace".into(), d("asym3.csv")],
            "mintrace_asym3.json",
        ),
        (
            vec!["radius".into(), d("jn3.csv"), "--p".into(), "2".into()],
            "radius_jn3_p2.json",
        ),
        (
            vec![
                "radius".into(),
                d("jn3.csv"),
                "--p".into(),
                "1".into(),
                "--enum".into(),
            ],
            "radius_jn3_p1_enum.json",
        ),
        (
            vec![
                "chebyshev".into(),
                "--n".into(),
                "4".into(),
                "--p".into(),
                "1".into(),
            ],
            "chebyshev_n4_p1.json",
        ),
        (
            vec!["decompose".into(), d("mixed3.json")],
            "decompose_mixed3.json",
        ),
        (
            ["sample", "--n", "3", "--method", "sinkhorn", "--seed", "1"]
                .map(String::from)
                .to_vec(),
            "sample_n3_sinkhorn_seed1.csv",
        ),
    ];
    let mut mismatched = Vec::new();
    for (args, file) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out) = run(&args);
        if code != Some(0) || out != std::fs::read_to_string(golden.join(file)).unwrap() {
            mismatched.push(*file);
        }
    }
    let verify_golden =
        verify_out == std::fs::read_to_string(golden.join("verify_all_seed7.json")).unwrap();
    if !verify_golden {
        mismatched.push("verify_all_seed7.json");
    }
    report(
        12,
        "verify exits 0 and every command matches its golden output",
        verify_code == Some(0) && mismatched.is_empty(),
        format!(
            "verify --suite all --seed 7 --trials 100 exit code {verify_code:?}; \
             {} golden files, mismatched: {mismatched:?}",
            cases.len() + 1
        ),
    );
}
