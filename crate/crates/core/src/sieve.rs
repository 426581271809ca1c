//! The square-sieve detector and the exact counting functions over integer
//! boxes.
//!
//! A perfect square `k` satisfies `Σ_{ℓ∈L_z} (k/ℓ) >= #L_z - ω(k)` for any
//! window of primes `L_z = [z, 2z]`, so the inequality is a one-sided filter:
//! it never rejects a square, and every detector hit is confirmed by an exact
//! square-free-kernel computation before it is counted.
//!
//! All counts enumerate lattice rows independently and merge in row order,
//! so they are deterministic and shard-count independent. Pairs with `Δ = 0`
//! are excluded throughout: for `T_n` any square-free `s` would match `r = 0`,
//! and `Δ = 0` already implies reducibility for the field counts. Kernel
//! `s = 1` is excluded from field counts because `Q(√Δ) = Q` is not quadratic.

use std::collections::BTreeSet;

use crate::arith::{
    self, jacobi, kronecker_two, prime_window, squarefree_kernel, PrimeWindow,
};
use crate::par::map_ordered;
use crate::polyfield::{self, IrreducibleAnchor};
use crate::trinomial::{discriminant, Trinomial};
use crate::{Error, Result};

/// The integer rectangle `[C, C+A] × [D, D+B]`; corners may be negative and
/// extents below 1 are allowed (the lattice is then possibly empty).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxRegion {
    pub c_start: f64,
    pub a_extent: f64,
    pub d_start: f64,
    pub b_extent: f64,
}

impl BoxRegion {
    pub fn new(c_start: f64, a_extent: f64, d_start: f64, b_extent: f64) -> Result<Self> {
        for v in [c_start, a_extent, d_start, b_extent] {
            if !v.is_finite() {
                return Err(Error::InvalidArgument("box bounds must be finite".into()));
            }
        }
        if a_extent < 0.0 || b_extent < 0.0 {
            return Err(Error::InvalidArgument("box extents must be nonnegative".into()));
        }
        Ok(BoxRegion { c_start, a_extent, d_start, b_extent })
    }

    /// Integer `a` values of the lattice, ascending (possibly empty).
    pub fn a_lattice(&self) -> Vec<i64> {
        lattice(self.c_start, self.a_extent)
    }

    /// Integer `b` values of the lattice, ascending (possibly empty).
    pub fn b_lattice(&self) -> Vec<i64> {
        lattice(self.d_start, self.b_extent)
    }
}

fn lattice(start: f64, extent: f64) -> Vec<i64> {
    let lo = start.ceil() as i64;
    let hi = (start + extent).floor() as i64;
    (lo..=hi).collect()
}

/// Detector state for a box scan: the window `L_z` and an ω budget that must
/// dominate every ω(Δ) the scan meets (validated post-scan, see
/// [`TSieveOutcome::max_omega`]).
#[derive(Debug, Clone)]
pub struct SievePlan {
    pub z: f64,
    pub window: PrimeWindow,
    pub omega_budget: u32,
}

impl SievePlan {
    pub fn new(z: f64, omega_budget: u32) -> Result<Self> {
        Ok(SievePlan { z, window: prime_window(z)?, omega_budget })
    }

    /// The balanced window choice `z = (AB)^{1/3}`, clamped to the smallest
    /// legal window.
    pub fn for_box(region: &BoxRegion) -> Result<Self> {
        let a = region.a_extent.max(1.0);
        let b = region.b_extent.max(1.0);
        let z = (a * b).powf(1.0 / 3.0).max(2.0);
        SievePlan::new(z, 64)
    }

    /// A plan whose window is deliberately empty, for exercising the exact
    /// fallback path.
    pub fn degenerate(z: f64) -> Self {
        SievePlan { z, window: PrimeWindow { z, primes: vec![] }, omega_budget: 64 }
    }
}

/// Detector internals for one value: the character sum over the window, the
/// exact ω, and the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveDetection {
    pub jacobi_sum: i64,
    pub omega: u32,
    pub window_size: u32,
    pub detected: bool,
}

/// Evaluates `Σ_{ℓ∈window} (k/ℓ) >= #window - ω(k)`.
///
/// Never false for a perfect square; may be true for non-squares.
pub fn sieve_detect_stats(k: i128, window: &PrimeWindow) -> Result<SieveDetection> {
    if k == 0 {
        return Err(Error::InvalidArgument("sieve_detect needs k != 0".into()));
    }
    if window.is_empty() {
        return Err(Error::InvalidArgument("sieve_detect needs a nonempty window".into()));
    }
    let om = arith::omega(k)?;
    let sum: i64 = window
        .primes
        .iter()
        .map(|&l| {
            if l == 2 {
                kronecker_two(k) as i64
            } else {
                jacobi(k, l as i128).expect("window primes are odd >= 3") as i64
            }
        })
        .sum();
    let size = window.len() as i64;
    Ok(SieveDetection {
        jacobi_sum: sum,
        omega: om,
        window_size: size as u32,
        detected: sum >= size - om as i64,
    })
}

/// The square-sieve verdict alone; see [`sieve_detect_stats`].
pub fn sieve_detect(k: i128, window: &PrimeWindow) -> Result<bool> {
    Ok(sieve_detect_stats(k, window)?.detected)
}

fn validate_degree(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("degree must be >= 2, got {n}")));
    }
    Ok(())
}

fn validate_kernel_arg(s: i128) -> Result<()> {
    if s == 0 {
        return Err(Error::InvalidArgument("kernel s must be nonzero".into()));
    }
    if squarefree_kernel(s).root != 1 {
        return Err(Error::InvalidArgument(format!("kernel s = {s} is not square-free")));
    }
    Ok(())
}

fn disc_at(n: u32, a: i64, b: i64) -> i128 {
    discriminant(&Trinomial { degree: n, linear_coeff: a as i128, constant_coeff: b as i128 })
}

/// Exact `T_n(A,B,C,D;s)`: pairs in the box with `Δ_n(a,b) = s·r²`, `Δ ≠ 0`.
pub fn t_exact(n: u32, region: &BoxRegion, s: i128) -> Result<u64> {
    validate_degree(n)?;
    validate_kernel_arg(s)?;
    let bs = region.b_lattice();
    let rows = map_ordered(region.a_lattice(), |a| {
        bs.iter()
            .filter(|&&b| {
                let d = disc_at(n, a, b);
                d != 0 && squarefree_kernel(d).kernel == s
            })
            .count() as u64
    });
    Ok(rows.into_iter().sum())
}

/// Statistics from a sieve-filtered scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TSieveOutcome {
    /// Pairs confirmed by the exact kernel check; always equals `t_exact`.
    pub count: u64,
    /// Pairs with `Δ ≠ 0` that were examined.
    pub scanned: u64,
    /// Pairs that passed the detector and went on to exact confirmation.
    pub detector_passed: u64,
    /// Largest ω(s·Δ) met during the scan, for validating the plan's budget.
    pub max_omega: u32,
    /// True when the window was empty and the scan fell back to the exact path.
    pub fell_back_exact: bool,
}

impl TSieveOutcome {
    /// Fraction of scanned pairs the detector pruned away.
    pub fn pruning_ratio(&self) -> f64 {
        if self.scanned == 0 {
            0.0
        } else {
            1.0 - self.detector_passed as f64 / self.scanned as f64
        }
    }
}

/// `T_n` with the square-sieve detector as a pre-filter. Every detector hit
/// is confirmed exactly, so the count always equals [`t_exact`]. An empty
/// window falls back to the exact path (flagged in the outcome).
pub fn t_sieve_filtered(
    n: u32,
    region: &BoxRegion,
    s: i128,
    plan: &SievePlan,
) -> Result<TSieveOutcome> {
    validate_degree(n)?;
    validate_kernel_arg(s)?;
    if plan.window.is_empty() {
        let bs = region.b_lattice();
        let scanned: u64 = map_ordered(region.a_lattice(), |a| {
            bs.iter().filter(|&&b| disc_at(n, a, b) != 0).count() as u64
        })
        .into_iter()
        .sum();
        let count = t_exact(n, region, s)?;
        return Ok(TSieveOutcome {
            count,
            scanned,
            detector_passed: scanned,
            max_omega: 0,
            fell_back_exact: true,
        });
    }
    let window = &plan.window;
    let bs = region.b_lattice();
    let rows = map_ordered(region.a_lattice(), |a| {
        let mut row = TSieveOutcome {
            count: 0,
            scanned: 0,
            detector_passed: 0,
            max_omega: 0,
            fell_back_exact: false,
        };
        for &b in &bs {
            let d = disc_at(n, a, b);
            if d == 0 {
                continue;
            }
            row.scanned += 1;
            let k = s.checked_mul(d).expect("i128 overflow in s·Δ");
            let det = sieve_detect_stats(k, window).expect("k != 0, window nonempty");
            row.max_omega = row.max_omega.max(det.omega);
            if det.detected {
                row.detector_passed += 1;
                if squarefree_kernel(d).kernel == s {
                    row.count += 1;
                }
            }
        }
        row
    });
    let mut total = TSieveOutcome {
        count: 0,
        scanned: 0,
        detector_passed: 0,
        max_omega: 0,
        fell_back_exact: false,
    };
    for row in rows {
        total.count += row.count;
        total.scanned += row.scanned;
        total.detector_passed += row.detector_passed;
        total.max_omega = total.max_omega.max(row.max_omega);
    }
    Ok(total)
}

/// Exact `S_n(A,B,C,D)`: number of distinct quadratic fields `Q(√Δ_n(a,b))`
/// over irreducible trinomials in the box. Distinct fields correspond to
/// distinct square-free kernels; kernels 0 and 1 are excluded.
pub fn s_exact(n: u32, region: &BoxRegion) -> Result<u64> {
    Ok(field_kernels(n, region)?.len() as u64)
}

/// The kernel set behind [`s_exact`], sorted ascending.
pub fn field_kernels(n: u32, region: &BoxRegion) -> Result<Vec<i128>> {
    validate_degree(n)?;
    let bs = region.b_lattice();
    let rows = map_ordered(region.a_lattice(), |a| {
        let mut kernels = Vec::new();
        for &b in &bs {
            let d = disc_at(n, a, b);
            if d == 0 {
                continue;
            }
            let kernel = squarefree_kernel(d).kernel;
            if kernel == 1 {
                continue;
            }
            let tri =
                Trinomial { degree: n, linear_coeff: a as i128, constant_coeff: b as i128 };
            if polyfield::is_irreducible_over_q(&tri) {
                kernels.push(kernel);
            }
        }
        kernels
    });
    let mut set = BTreeSet::new();
    for row in rows {
        set.extend(row);
    }
    Ok(set.into_iter().collect())
}

/// Result of the `Q_n(X)` lower-bound enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExactReport {
    /// Distinct quadratic fields found: a certified lower bound for `Q_n(X)`.
    pub count: u64,
    /// The kernels witnessing the count, ascending.
    pub kernels: Vec<i128>,
    pub a_max: i64,
    pub b_max: i64,
}

/// Certified lower bound for `Q_n(X)`: distinct kernels of `Δ_n(a,b)` over
/// the signed rectangle `|a| <= a_max`, `|b| <= b_max` covering every pair
/// whose discriminant terms individually stay below `2X`, filtered by
/// `|Δ| <= X`, irreducibility, and kernel ∉ {0, 1}.
///
/// Pairs outside the rectangle can reach `|Δ| <= X` only through cancellation
/// between the two terms; that region is unbounded, so the full `Q_n(X)` is
/// not finitely enumerable here and the result is reported as a lower bound.
pub fn q_exact(n: u32, x: i128) -> Result<QExactReport> {
    validate_degree(n)?;
    if n % 4 != 1 {
        return Err(Error::UnsupportedDegree(format!(
            "q_exact needs n ≡ 1 (mod 4), got {n}"
        )));
    }
    if x < 1 {
        return Err(Error::InvalidArgument(format!("q_exact needs X >= 1, got {x}")));
    }
    let c_a = (n as i128 - 1).pow(n - 1);
    let c_b = (n as i128).pow(n);
    let grow = |coeff: i128, exp: u32| -> i64 {
        let mut m = 0i64;
        while coeff
            .checked_mul(((m + 1) as i128).pow(exp))
            .is_some_and(|v| v <= 2 * x)
        {
            m += 1;
        }
        m
    };
    let a_max = grow(c_a, n);
    let b_max = grow(c_b, n - 1);
    let bs: Vec<i64> = (-b_max..=b_max).collect();
    let rows = map_ordered((-a_max..=a_max).collect::<Vec<i64>>(), |a| {
        let mut kernels = Vec::new();
        for &b in &bs {
            let d = disc_at(n, a, b);
            if d == 0 || d.abs() > x {
                continue;
            }
            let kernel = squarefree_kernel(d).kernel;
            if kernel == 1 {
                continue;
            }
            let tri =
                Trinomial { degree: n, linear_coeff: a as i128, constant_coeff: b as i128 };
            if polyfield::is_irreducible_over_q(&tri) {
                kernels.push(kernel);
            }
        }
        kernels
    });
    let mut set = BTreeSet::new();
    for row in rows {
        set.extend(row);
    }
    let kernels: Vec<i128> = set.into_iter().collect();
    Ok(QExactReport { count: kernels.len() as u64, kernels, a_max, b_max })
}

/// The arithmetic-progression sets `𝒜 = {a ∈ box : a ≡ α₀ (mod p₀)}` and
/// `ℬ = {b ∈ box : b ≡ β₀ (mod p₀)}`; every pair from `𝒜 × ℬ` is
/// irreducible over `Q` because its reduction mod `p₀` is irreducible.
pub fn progression_box(n: u32, region: &BoxRegion) -> Result<(IrreducibleAnchor, Vec<i64>, Vec<i64>)> {
    validate_degree(n)?;
    let anchor = polyfield::find_p0(n)?;
    let p0 = anchor.p0 as i64;
    let set_a: Vec<i64> = region
        .a_lattice()
        .into_iter()
        .filter(|a| a.rem_euclid(p0) == anchor.alpha0 as i64)
        .collect();
    let set_b: Vec<i64> = region
        .b_lattice()
        .into_iter()
        .filter(|b| b.rem_euclid(p0) == anchor.beta0 as i64)
        .collect();
    Ok((anchor, set_a, set_b))
}
