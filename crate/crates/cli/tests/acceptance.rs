//! Acceptance gate: one test per criterion, each printing a single
//! `acceptance NN ... : pass|FAIL` line (visible with `--nocapture`).
//!
//! Run with `cargo test -p trinomial-fields-cli --test acceptance`.

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trinomial_fields::arith::{prime_window, squarefree_kernel};
use trinomial_fields::charsums::composite_sum_with_crt;
use trinomial_fields::charsums::CharSumSpec;
use trinomial_fields::polyfield::{
    is_irreducible_over_q, is_irreducible_over_q_exhaustive,
};
use trinomial_fields::sieve::{
    progression_box, q_exact, sieve_detect, t_exact, t_sieve_filtered, BoxRegion, SievePlan,
};
use trinomial_fields::trinomial::{
    disc_unit_general, discriminant, discriminant_resultant, poly_discriminant, Trinomial,
};
use trinomial_fields::verify;

fn gate(name: &str, detail: &str, ok: bool) {
    println!("acceptance {name}: {} ({detail})", if ok { "pass" } else { "FAIL" });
    assert!(ok, "acceptance {name} failed: {detail}");
}

#[test]
fn a01_discriminant_closed_form_matches_resultant() {
    let mut cases = 0u64;
    for n in 2..=9u32 {
        for a in -12i128..=12 {
            for b in -12i128..=12 {
                let tri = Trinomial::new(n, a, b).unwrap();
                assert_eq!(
                    discriminant(&tri),
                    discriminant_resultant(&tri),
                    "n={n} a={a} b={b}"
                );
                cases += 1;
            }
        }
    }
    gate("01 closed form vs resultant", &format!("{cases} cases, n <= 9, |a|,|b| <= 12"), true);
}

#[test]
fn a02_sign_free_specialization_for_n_1_mod_4() {
    let mut cases = 0u64;
    for n in [5u32, 9, 13] {
        for a in -20i128..=20 {
            for b in -20i128..=20 {
                let tri = Trinomial::new(n, a, b).unwrap();
                let dab = (n as i128 - 1).pow(n - 1) * a.pow(n)
                    + (n as i128).pow(n) * b.pow(n - 1);
                assert_eq!(discriminant(&tri), dab, "n={n} a={a} b={b}");
                cases += 1;
            }
        }
    }
    gate("02 n=1 mod 4 specialization", &format!("{cases} cases, n in {{5,9,13}}"), true);
}

#[test]
fn a03_special_value_formula_matches_general_discriminant() {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut cases = 0u64;
    for n in 2..=7u32 {
        for m in 1..n {
            if gcd(n, m) != 1 {
                continue;
            }
            let mut coeffs = vec![0i128; n as usize + 1];
            coeffs[0] = 1;
            coeffs[(n - m) as usize] = 1;
            coeffs[n as usize] = 1;
            assert_eq!(
                disc_unit_general(n, m).unwrap(),
                poly_discriminant(&coeffs),
                "n={n} m={m}"
            );
            cases += 1;
        }
    }
    gate(
        "03 special-value formula",
        &format!("{cases} coprime pairs, 1 <= m < n <= 7"),
        true,
    );
}

#[test]
fn a04_detector_never_rejects_squares() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f1e1);
    let windows: Vec<_> = [10.0, 50.0, 100.0]
        .iter()
        .map(|&z| prime_window(z).unwrap())
        .collect();
    let mut detected = 0u64;
    let total = 10_000u64;
    for _ in 0..total {
        let r: i128 = rng.gen_range(1..=1_000_000);
        let w = &windows[rng.gen_range(0..windows.len())];
        if sieve_detect(r * r, w).unwrap() {
            detected += 1;
        }
    }
    gate(
        "04 square detection",
        &format!("{detected}/{total} random squares detected, z in {{10,50,100}}"),
        detected == total,
    );
}

#[test]
fn a05_composite_sums_factor_through_crt() {
    let pool = [3u64, 5, 7, 11, 13];
    let mut worst = 0.0f64;
    let mut cases = 0u64;
    for (i, &l1) in pool.iter().enumerate() {
        for &l2 in &pool[i + 1..] {
            for lam in 0..3i64 {
                for mu in 0..3i64 {
                    let spec = CharSumSpec::new(5, l1 * l2, lam, mu).unwrap();
                    // composite_sum_with_crt errors out beyond 1e-6·m by itself
                    let (direct, crt) = composite_sum_with_crt(&spec).unwrap();
                    worst = worst.max((direct.value - crt).norm());
                    cases += 1;
                }
            }
        }
    }
    gate(
        "05 CRT factorization",
        &format!("{cases} cases, worst |direct - crt| = {worst:.3e}"),
        true,
    );
}

#[test]
fn a06_gauss_magnitude_and_parity() {
    let mag = verify::gauss_magnitude(199).unwrap();
    let par = verify::gauss_parity(199).unwrap();
    gate(
        "06 Gauss sums",
        &format!(
            "magnitude max dev {:.3e} over {} primes; parity max off-axis {:.3e}",
            mag.max_ratio, mag.cases, par.max_ratio
        ),
        mag.pass && par.pass,
    );
}

#[test]
fn a07_untwisted_complete_sum_budget() {
    for n in [5u32, 9] {
        let r = verify::lemma1(n, 300).unwrap();
        gate(
            "07 untwisted sum budget",
            &format!(
                "n={n}: max |S|/l = {:.6} over {} primes (budget {})",
                r.max_ratio, r.cases, r.budget
            ),
            r.pass,
        );
    }
}

#[test]
fn a08_twisted_complete_sum_budget() {
    let r = verify::lemma2(5, 200).unwrap();
    gate(
        "08 twisted sum budget",
        &format!(
            "n=5: max |S|/l = {:.6} over {} cases (budget {}), worst {}",
            r.max_ratio, r.cases, r.budget, r.worst_case
        ),
        r.pass,
    );
}

#[test]
fn a09_irreducible_count_budget() {
    let r = verify::lemma5(5, 101).unwrap();
    gate(
        "09 irreducible count budget",
        &format!(
            "n=5: max |count - p^2/5| / p^1.5 = {:.6} over {} primes (budget {})",
            r.max_ratio, r.cases, r.budget
        ),
        r.pass,
    );
}

/// Independent pair-count oracle: Δ = s·r² iff the integer square root of
/// Δ/s reconstructs Δ exactly.
fn t_oracle(n: u32, region: &BoxRegion, s: i128) -> u64 {
    let mut count = 0;
    for a in region.a_lattice() {
        for b in region.b_lattice() {
            let tri = Trinomial::new(n, a as i128, b as i128).unwrap();
            let d = discriminant(&tri);
            if d == 0 || d % s != 0 || d.signum() != s.signum() {
                continue;
            }
            let q = d / s;
            let mut r = (q as f64).sqrt() as i128;
            while r * r > q {
                r -= 1;
            }
            while (r + 1) * (r + 1) <= q {
                r += 1;
            }
            if r >= 1 && s * r * r == d {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn a10_pair_counts_match_oracle_and_sieve() {
    let bx = BoxRegion::new(1.0, 49.0, 1.0, 49.0).unwrap();
    let plan = SievePlan::for_box(&bx).unwrap();
    for s in [1i128, 5, 69] {
        let exact = t_exact(5, &bx, s).unwrap();
        let oracle = t_oracle(5, &bx, s);
        let sieved = t_sieve_filtered(5, &bx, s, &plan).unwrap();
        gate(
            "10 pair counting",
            &format!(
                "s={s}: exact={exact}, oracle={oracle}, sieve={} (pruned {:.1}%)",
                sieved.count,
                100.0 * sieved.pruning_ratio()
            ),
            exact == oracle && sieved.count == exact,
        );
    }
}

#[test]
fn a11_irreducibility_decisions() {
    let reducible = Trinomial::new(5, 1, 1).unwrap(); // (t²+t+1) divides it
    let irreducible = Trinomial::new(5, -1, -1).unwrap();
    let known_ok =
        !is_irreducible_over_q(&reducible) && is_irreducible_over_q(&irreducible);

    let mut tiered_vs_exhaustive = true;
    let mut cases = 0u64;
    for n in 2..=6u32 {
        for a in -6i128..=6 {
            for b in -6i128..=6 {
                let tri = Trinomial::new(n, a, b).unwrap();
                if is_irreducible_over_q(&tri) != is_irreducible_over_q_exhaustive(&tri) {
                    tiered_vs_exhaustive = false;
                }
                cases += 1;
            }
        }
    }

    let bx = BoxRegion::new(0.0, 100.0, 0.0, 100.0).unwrap();
    let (anchor, set_a, set_b) = progression_box(5, &bx).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x000a_11ce);
    let mut progression_ok = true;
    for _ in 0..100 {
        let a = set_a[rng.gen_range(0..set_a.len())];
        let b = set_b[rng.gen_range(0..set_b.len())];
        let tri = Trinomial::new(5, a as i128, b as i128).unwrap();
        if !is_irreducible_over_q(&tri) {
            progression_ok = false;
        }
    }
    gate(
        "11 irreducibility",
        &format!(
            "known examples ok={known_ok}; tiered vs exhaustive over {cases} cases \
             ok={tiered_vs_exhaustive}; 100 progression samples (p0={}) ok={progression_ok}",
            anchor.p0
        ),
        known_ok && tiered_vs_exhaustive && progression_ok,
    );
}

#[test]
fn a12_field_count_lower_bound_and_growth() {
    let xs = [1_000i128, 10_000, 100_000, 1_000_000];
    let mut pts = Vec::new();
    for &x in &xs {
        let r = q_exact(5, x).unwrap();
        for &k in &r.kernels {
            assert!(k != 0 && k != 1 && squarefree_kernel(k).kernel == k);
        }
        pts.push((x, r.count));
    }
    let at_x6 = pts.last().unwrap().1;
    // least-squares slope of log(count) against log(X), counts > 0 only
    let logs: Vec<(f64, f64)> = pts
        .iter()
        .filter(|&&(_, c)| c > 0)
        .map(|&(x, c)| ((x as f64).ln(), (c as f64).ln()))
        .collect();
    let n = logs.len() as f64;
    let (sx, sy): (f64, f64) = logs.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (sxx, sxy): (f64, f64) =
        logs.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x * x, b + x * y));
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    gate(
        "12 field count lower bound",
        &format!(
            "counts {:?} at X in {xs:?}; fitted growth exponent {slope:.3} \
             (reference exponent 9/20 = 0.45)",
            pts.iter().map(|&(_, c)| c).collect::<Vec<_>>()
        ),
        at_x6 >= 1,
    );
}

fn run_binary(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_trifields"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "trifields {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn a13_outputs_are_thread_count_independent() {
    let jobs: [&[&str]; 3] = [
        &["count-fields", "5", "--box", "1", "25", "1", "25"],
        &["count-fields", "5", "--box", "1", "25", "1", "25", "--list"],
        &["qcount", "5", "200000", "--list"],
    ];
    let mut ok = true;
    for args in jobs {
        let base = run_binary(&[args, ["--threads", "1"].as_slice()].concat());
        for t in ["2", "8"] {
            let other = run_binary(&[args, ["--threads", t].as_slice()].concat());
            if other != base {
                ok = false;
            }
        }
    }
    gate(
        "13 determinism across thread counts",
        "count-fields and qcount byte-identical at --threads 1/2/8",
        ok,
    );
}
