//! Acceptance run: one pass/fail line per criterion.

use complex_cf::algorithms::{choose, piece_at, spec, AlgorithmId};
use complex_cf::arith::{
    convergents, eval_cf, norm_gap_holds, norm_gap_hypothesis, DigitSeq, GaussianInt, ProjRational,
};
use complex_cf::dynamics::{compute_j_table, image_set, refine_partition, verify_building, BuildParams};
use complex_cf::natural_ext::{
    check_system, coverage, declared_l, escape_time, perturbed_nearest_even_l, verify_bijectivity,
    BijectivityParams, ExtPoint, SimParams,
};
use complex_cf::real_ab::{example_l, example_pieces, simulate_ab, ABParams};
use complex_cf::arith::ExtendedComplex;
use complex_cf::regions::{ae_equal, sample_region, HalfSpace, Membership, Rect, Region, Verdict};
use complex_cf::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const WITH_L: [AlgorithmId; 3] = [AlgorithmId::NearestEven, AlgorithmId::Diamond, AlgorithmId::Disk];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(t: Instant, limit: Duration) -> (bool, Duration) {
    let e = t.elapsed();
    (e < limit, e)
}

fn gi(re: i64, im: i64) -> GaussianInt {
    GaussianInt::new(re, im)
}

fn same(a: &ProjRational, b: &ProjRational) -> bool {
    match (a, b) {
        (ProjRational::Infinity, ProjRational::Infinity) => true,
        (ProjRational::Finite(x), ProjRational::Finite(y)) => x.sub(y).is_zero(),
        _ => false,
    }
}

fn convergent_oracle() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mismatches = 0;
    let mut compared = 0;
    for _ in 0..1000 {
        let len = rng.random_range(1..=10);
        let digits: Vec<GaussianInt> = (0..len)
            .map(|_| loop {
                let a = gi(rng.random_range(-20..=20), rng.random_range(-20..=20));
                if a.norm() >= 4 {
                    break a;
                }
            })
            .collect();
        let seq = DigitSeq::from_slice(&digits).unwrap();
        for (k, c) in convergents(&seq).iter().enumerate() {
            let value = match &c.value {
                Some(v) => ProjRational::Finite(v.clone()),
                None => ProjRational::Infinity,
            };
            compared += 1;
            if !same(&value, &eval_cf(&seq.prefix(k + 1))) {
                mismatches += 1;
            }
        }
    }
    let (fast, e) = within(t, Duration::from_secs(5));
    outcome(
        mismatches == 0 && fast,
        format!("1000 strings, {compared} convergents, {mismatches} mismatches, {e:.2?} (limit 5s)"),
    )
}

/// `|u| - |v| > C/|u|` with `C = k/2`, in integers:
/// `2N(u) - k > 0` and `(2N(u) - k)^2 > 4 N(u) N(v)`.
fn gap_exact(nu: i64, nv: i64, k: i64) -> bool {
    let lhs = 2 * nu - k;
    lhs > 0 && (lhs as i128).pow(2) > 4 * nu as i128 * nv as i128
}

/// `|u| > |v| > (C + 1)√2` with `C = k/2`: `N(u) > N(v)` and `2N(v) > (k + 2)^2`.
fn hypothesis_exact(nu: i64, nv: i64, k: i64) -> bool {
    nu > nv && 2 * nv > (k + 2) * (k + 2)
}

fn norm_gap_brute_force() -> Outcome {
    let t = Instant::now();
    let ball: Vec<GaussianInt> = (-40..=40i64)
        .flat_map(|re| (-40..=40i64).map(move |im| gi(re, im)))
        .filter(|g| g.norm() <= 1600)
        .collect();
    let mut per_c = Vec::new();
    let mut counterexamples = 0u64;
    let mut disagreements = 0u64;
    let mut smallest: Option<(i64, GaussianInt, GaussianInt, f64)> = None;
    for k in 0..=10i64 {
        let c = k as f64 / 2.0;
        let mut here = 0u64;
        for &u in &ball {
            for &v in &ball {
                let (nu, nv) = (u.norm(), v.norm());
                let hyp = hypothesis_exact(nu, nv, k);
                if hyp != norm_gap_hypothesis(u, v, c) {
                    disagreements += 1;
                }
                if !hyp {
                    continue;
                }
                let holds = gap_exact(nu, nv, k);
                if holds != norm_gap_holds(u, v, c) {
                    disagreements += 1;
                }
                if !holds {
                    here += 1;
                    if smallest.is_none_or(|(n, ..)| nu < n) {
                        smallest = Some((nu, u, v, c));
                    }
                }
            }
        }
        counterexamples += here;
        per_c.push(format!("C={c}:{here}"));
    }
    let witness = match smallest {
        Some((_, u, v, c)) => format!(
            "; smallest u={u} v={v} C={c}: |u|-|v|={:.4} <= C/|u|={:.4}",
            u.abs() - v.abs(),
            c / u.abs()
        ),
        None => String::new(),
    };
    let (fast, e) = within(t, Duration::from_secs(60));
    outcome(
        counterexamples == 0 && disagreements == 0 && fast,
        format!(
            "{} points, counterexamples {} ({}){witness}; {disagreements} float/exact disagreements, {e:.2?} (limit 60s)",
            ball.len(),
            counterexamples,
            per_c.join(" ")
        ),
    )
}

fn choice_contract() -> Outcome {
    let mut violations = 0;
    let mut parts = Vec::new();
    for (n, alg) in AlgorithmId::ALL.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + n as u64);
        let mut bad = 0;
        for _ in 0..100_000 {
            let z = C64::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0));
            let a = choose(alg, z);
            let r = z - a.to_c64();
            let parity_ok = match alg {
                AlgorithmId::NearestEven | AlgorithmId::Disk => a.is_even(),
                AlgorithmId::NearestOdd => !a.is_even(),
                _ => true,
            };
            if r.norm() > 1.0 + 1e-12 || spec(alg).k.classify(r, 1e-9) == Verdict::Out || !parity_ok {
                bad += 1;
            }
        }
        violations += bad;
        parts.push(format!("{alg}={bad}"));
    }
    outcome(
        violations == 0,
        format!("1e5 points per algorithm, violations: {}", parts.join(" ")),
    )
}

fn finite_building() -> Outcome {
    let t = Instant::now();
    let params = BuildParams::default();
    let expected = [12, 8, 12, 12, 5, 10];
    let mut ok = true;
    let mut parts = Vec::new();
    for (alg, n) in AlgorithmId::ALL.into_iter().zip(expected) {
        let s = Instant::now();
        let pieces = spec(alg).partition.len();
        match verify_building(alg, &params) {
            Ok(r) => {
                let mismatches: usize = r.pieces.iter().map(|p| p.comparison.mismatches).sum();
                ok &= r.passed() && pieces == n;
                parts.push(format!(
                    "{alg}: {pieces} pieces {} mismatches={mismatches} {:.1?}",
                    if r.passed() { "pass" } else { "FAIL" },
                    s.elapsed()
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{alg}: {e}"));
            }
        }
    }
    let (fast, e) = within(t, Duration::from_secs(600));
    outcome(
        ok && fast,
        format!("1e6 samples, eps 1e-9; {}; total {e:.1?} (limit 10min)", parts.join("; ")),
    )
}

fn nearest_even_j_table() -> Outcome {
    let expected = |a: GaussianInt| -> Vec<usize> {
        match (a.re, a.im) {
            (0, 0) => vec![],
            (1, 1) => vec![2, 3, 4, 5, 6],
            (-1, 1) => vec![1, 2, 3, 4, 8],
            (-1, -1) => vec![1, 2, 6, 7, 8],
            (1, -1) => vec![4, 5, 6, 7, 8],
            _ => (1..=8).collect(),
        }
    };
    let table = match compute_j_table(AlgorithmId::NearestEven, 4.0) {
        Ok(t) => t,
        Err(e) => return outcome(false, e.to_string()),
    };
    let digits: Vec<GaussianInt> = (-4..=4i64)
        .flat_map(|re| (-4..=4i64).map(move |im| gi(re, im)))
        .filter(|a| a.is_even() && a.norm() <= 16)
        .collect();
    let mut wrong = Vec::new();
    for &a in &digits {
        let found: Option<Vec<usize>> = table.get(a).map(|e| e.pieces.iter().map(|j| j + 1).collect());
        if found.as_deref() != Some(&expected(a)[..]) {
            wrong.push(format!("{a}: {found:?}"));
        }
    }
    let extra = table.entries.len() != digits.len();
    outcome(
        wrong.is_empty() && !extra,
        format!(
            "{} digits |a| <= 4, {} entries, mismatches: [{}]",
            digits.len(),
            table.entries.len(),
            wrong.join(", ")
        ),
    )
}

fn bijectivity_systems() -> Outcome {
    let params = BijectivityParams::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for alg in WITH_L {
        let t = Instant::now();
        match verify_bijectivity(alg, &params) {
            Ok(r) => {
                let mismatches: usize = r.pieces.iter().map(|p| p.mismatches).sum();
                ok &= r.passed();
                parts.push(format!(
                    "{alg} {} mismatches={mismatches} {:.1?}",
                    if r.passed() { "pass" } else { "FAIL" },
                    t.elapsed()
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{alg}: {e}"));
            }
        }
    }
    let control = check_system(AlgorithmId::NearestEven, &perturbed_nearest_even_l(), &params);
    let control_fails = matches!(&control, Ok(r) if !r.passed());
    parts.push(format!(
        "perturbed control {}",
        if control_fails { "fails as required" } else { "did NOT fail" }
    ));
    outcome(ok && control_fails, format!("1e6 samples per piece; {}", parts.join("; ")))
}

fn attractor_containment() -> Outcome {
    let p = SimParams {
        n_points: 100_000,
        n_iters: 200,
        burn_in: 50,
        seed: 0,
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for alg in WITH_L {
        let ls = declared_l(alg).unwrap();
        let r = coverage(alg, &ls, &p, 0.05, 1e-9);
        let points: usize = r.points.iter().sum();
        let inside: usize = r.inside.iter().sum();
        let contained = inside as f64 / points.max(1) as f64;
        let worst_piece = (0..ls.len()).map(|i| r.containment(i)).fold(1.0, f64::min);
        let worst_cover = (0..ls.len()).map(|i| r.coverage(i)).fold(1.0, f64::min);
        ok &= contained >= 0.999 && worst_piece >= 0.999 && worst_cover >= 0.95;
        parts.push(format!(
            "{alg}: contained {contained:.5} (worst piece {worst_piece:.5}), min cells hit {worst_cover:.4}"
        ));
    }
    outcome(ok, format!("1e5 points, 200 iterations, burn-in 50; {}", parts.join("; ")))
}

fn real_calibration() -> Outcome {
    let sim = SimParams {
        n_points: 66_667,
        n_iters: 200,
        burn_in: 50,
        seed: 0,
    };
    let h = simulate_ab(&ABParams::example(), &example_pieces(), &sim);
    let mut worst: f64 = 0.0;
    for (i, l) in example_l().iter().enumerate() {
        let target = l.s_image().bounded().unwrap();
        worst = worst.max(h.hulls[i].distance(target));
    }
    outcome(
        worst < 1e-2 && h.stats.emitted >= 10_000_000,
        format!(
            "{} samples, max endpoint distance in S-coordinates {worst:.2e} (tolerance 1e-2)",
            h.stats.emitted
        ),
    )
}

fn escape() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, alg) in AlgorithmId::ALL.into_iter().enumerate() {
        let zs = sample_region(&spec(alg).k, Rect::square(1.0), 1000, 200 + n as u64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(300 + n as u64);
        let mut disk_point = || loop {
            let v = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            if v.norm() < 1.0 && v.norm() > 0.0 {
                break v;
            }
        };
        let (mut literal, mut strict, mut longest) = (0, 0, 0);
        for &z in &zs {
            // w ∈ S(𝔻).
            let w = -1.0 / disk_point();
            if let Some(k) = escape_time(alg, ExtPoint::new(z, ExtendedComplex::Finite(w)), 10_000).steps() {
                literal += 1;
                longest = longest.max(k);
            }
            // The harder start w ∈ 𝔻.
            let w = disk_point();
            if let Some(k) = escape_time(alg, ExtPoint::new(z, ExtendedComplex::Finite(w)), 10_000).steps() {
                strict += 1;
                longest = longest.max(k);
            }
        }
        ok &= literal == zs.len() && strict == zs.len();
        parts.push(format!("{alg} {literal}/{0} and {strict}/{0} (max n {longest})", zs.len()));
    }
    outcome(ok, format!("w in S(D) and w in D, n <= 1e4; {}", parts.join("; ")))
}

fn partition_refinement() -> Outcome {
    let alg = AlgorithmId::NearestInteger;
    let published = &spec(alg).partition;
    let r = match refine_partition(alg, 20, 8.0) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut used = vec![false; published.len()];
    let mut matched = 0;
    for (k, p) in r.pieces.iter().enumerate() {
        let Some(w) = p.interior_witness() else { continue };
        let Some(j) = piece_at(published, w, 1e-9) else { continue };
        if !used[j] && ae_equal(p, &published[j], Rect::square(0.75), 100_000, 1e-9, k as u64).passed() {
            used[j] = true;
            matched += 1;
        }
    }
    let k = spec(alg).k.clone();
    let stage0 = image_set(alg, r.stages[0].digit, &k).unwrap();
    let expected = k.intersect(&Region::half_space(HalfSpace::outside(C64::new(-1.0, 0.0), 1.0)));
    let first = ae_equal(&stage0, &expected, Rect::square(0.75), 100_000, 1e-9, 99);
    outcome(
        r.complete && r.pieces.len() == 12 && matched == 12 && first.passed(),
        format!(
            "{} stages, {} pieces, {matched}/12 matched up to relabeling, stage 0 digit {} vs |z+1| >= 1: {} mismatches",
            r.stages.len(),
            r.pieces.len(),
            r.stages[0].digit,
            first.mismatches
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("convergents equal the evaluated fraction", convergent_oracle),
        ("norm gap brute force", norm_gap_brute_force),
        ("choice function contract", choice_contract),
        ("finite building property", finite_building),
        ("nearest even J table", nearest_even_j_table),
        ("bijectivity systems", bijectivity_systems),
        ("attractor containment and coverage", attractor_containment),
        ("real (a, b) calibration", real_calibration),
        ("escape from the unit disk", escape),
        ("partition refinement", partition_refinement),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != n + 1) {
            continue;
        }
        let t = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {} [{:.1?}]",
            n + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed()
        );
    }
    println!("acceptance: {} failed", failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
