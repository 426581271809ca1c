//! Polynomials over prime fields, irreducibility tests and exact counts of
//! irreducible trinomials.
//!
//! Irreducibility over `F_p` is Rabin's test: `t^{p^n} ≡ t (mod f)` together
//! with `gcd(t^{p^{n/q}} - t, f) = 1` for every prime `q | n`.
//!
//! Irreducibility over `Q` is decided exactly in tiers: an irreducible
//! reduction modulo one of the first 25 primes certifies irreducibility;
//! otherwise factor-degree patterns modulo primes not dividing the
//! discriminant prune the feasible factor degrees; whatever survives is
//! settled by an exhaustive search for a monic integer factor with
//! coefficients inside a Mignotte-style bound.

use std::collections::BTreeSet;

use crate::arith::{self, is_prime, powmod_u64};
use crate::par::map_ordered;
use crate::trinomial::{self, Trinomial};
use crate::{Error, Result};

const FIRST_25_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97,
];

/// How many squarefree reductions feed the factor-degree intersection before
/// falling through to the exact search.
const PATTERN_PRIMES: usize = 8;

/// Dense polynomial over `F_p`, coefficients stored least-significant first
/// and normalized (no leading zeros; the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    /// Builds from coefficients given most-significant first; residues are
    /// reduced mod `p`.
    pub fn new(modulus: u64, coeffs_high_first: &[u64]) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidArgument(format!("modulus must be >= 2, got {modulus}")));
        }
        let mut coeffs: Vec<u64> =
            coeffs_high_first.iter().rev().map(|&c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(ModPoly { modulus, coeffs })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Coefficients, most-significant first; empty for the zero polynomial.
    pub fn coefficients(&self) -> Vec<u64> {
        self.coeffs.iter().rev().copied().collect()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    fn zero(p: u64) -> Self {
        ModPoly { modulus: p, coeffs: vec![] }
    }

    fn x(p: u64) -> Self {
        ModPoly { modulus: p, coeffs: vec![0, 1 % p] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn normalize(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    fn sub(&self, other: &Self) -> Self {
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + p - b) % p;
        }
        ModPoly { modulus: p, coeffs: out }.normalize()
    }

    fn mul(&self, other: &Self) -> Self {
        let p = self.modulus as u128;
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        ModPoly { modulus: self.modulus, coeffs: out.into_iter().map(|c| c as u64).collect() }
            .normalize()
    }

    /// Quotient and remainder; `divisor` must be nonzero with an invertible
    /// leading coefficient (always true for prime moduli).
    fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.modulus;
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd && self.coeffs.len() < divisor.coeffs.len() {
            return (Self::zero(p), self.clone());
        }
        let lead_inv = powmod_u64(*divisor.coeffs.last().unwrap(), p - 2, p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let lead = *rem.last().unwrap();
            let shift = rem.len() - 1 - dd;
            if lead != 0 {
                let q = (lead as u128 * lead_inv as u128 % p as u128) as u64;
                quot[shift] = q;
                for (i, &dc) in divisor.coeffs.iter().enumerate() {
                    let sub = (q as u128 * dc as u128 % p as u128) as u64;
                    rem[shift + i] = (rem[shift + i] + p - sub) % p;
                }
            }
            rem.pop();
        }
        (
            ModPoly { modulus: p, coeffs: quot }.normalize(),
            ModPoly { modulus: p, coeffs: rem }.normalize(),
        )
    }

    fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    fn make_monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&1) => self.clone(),
            Some(&lead) => {
                let p = self.modulus;
                let inv = powmod_u64(lead, p - 2, p) as u128;
                ModPoly {
                    modulus: p,
                    coeffs: self.coeffs.iter().map(|&c| (c as u128 * inv % p as u128) as u64).collect(),
                }
            }
        }
    }

    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// `self^exp mod f` by repeated squaring.
    fn pow_rem(&self, mut exp: u64, f: &Self) -> Self {
        let mut base = self.rem(f);
        let mut acc = ModPoly { modulus: self.modulus, coeffs: vec![1 % self.modulus] };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(f);
            }
            base = base.mul(&base).rem(f);
            exp >>= 1;
        }
        acc
    }
}

fn trinomial_mod_p(n: u32, a: i128, b: i128, p: u64) -> ModPoly {
    let mut coeffs = vec![0u64; n as usize + 1];
    coeffs[0] = 1 % p;
    coeffs[n as usize - 1] = a.rem_euclid(p as i128) as u64;
    coeffs[n as usize] = b.rem_euclid(p as i128) as u64;
    ModPoly::new(p, &coeffs).expect("valid modulus")
}

fn prime_divisors(n: u32) -> Vec<u32> {
    arith::factor(n as i128)
        .expect("n >= 2")
        .into_iter()
        .map(|(p, _)| p as u32)
        .collect()
}

/// Rabin's irreducibility test for a monic `f` of degree >= 1 over `F_p`.
fn rabin_irreducible(f: &ModPoly) -> bool {
    let n = f.degree().expect("nonzero") as u32;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let p = f.modulus();
    let x = ModPoly::x(p);
    let checkpoints: BTreeSet<u32> = prime_divisors(n).iter().map(|q| n / q).collect();
    let mut frob = x.rem(f); // t^{p^k} mod f, starting at k = 0
    for k in 1..=n {
        frob = frob.pow_rem(p, f);
        if checkpoints.contains(&k) {
            let g = f.gcd(&frob.sub(&x));
            if g.degree() != Some(0) {
                return false;
            }
        }
    }
    frob == x.rem(f)
}

/// True iff `t^n + (a mod p)·t + (b mod p)` is irreducible over `F_p`.
///
/// The reduction may collapse the trinomial shape (`a ≡ 0` or `b ≡ 0`); the
/// answer is for the reduced polynomial as written.
pub fn is_irreducible_mod_p(n: u32, a: i128, b: i128, p: u64) -> Result<bool> {
    if !is_prime(p as u128) {
        return Err(Error::InvalidArgument(format!("modulus {p} is not prime")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("degree must be >= 2, got {n}")));
    }
    Ok(rabin_irreducible(&trinomial_mod_p(n, a, b, p)))
}

/// Multiset of irreducible-factor degrees of a squarefree monic `f` over
/// `F_p`, by distinct-degree factorization.
fn factor_degree_pattern(f: &ModPoly) -> Vec<usize> {
    let p = f.modulus();
    let x = ModPoly::x(p);
    let mut g = f.make_monic();
    let mut w = x.rem(&g);
    let mut degs = Vec::new();
    let mut d = 0usize;
    while let Some(dg) = g.degree() {
        if dg == 0 {
            break;
        }
        d += 1;
        if 2 * d > dg {
            degs.push(dg);
            break;
        }
        w = w.pow_rem(p, &g);
        let h = g.gcd(&w.sub(&x));
        if let Some(dh) = h.degree() {
            if dh > 0 {
                for _ in 0..dh / d {
                    degs.push(d);
                }
                g = g.divrem(&h).0;
                w = w.rem(&g);
            }
        }
    }
    degs
}

/// Degrees a proper monic factor could have, as subset sums of the pattern.
fn proper_factor_degrees(pattern: &[usize], n: usize) -> BTreeSet<usize> {
    let mut reachable = vec![false; n + 1];
    reachable[0] = true;
    for &d in pattern {
        for s in (0..=n - d).rev() {
            if reachable[s] {
                reachable[s + d] = true;
            }
        }
    }
    (1..n).filter(|&d| reachable[d]).collect()
}

fn signed_divisors(b: i128) -> Vec<i128> {
    let mut divs = vec![1i128];
    for (p, e) in arith::factor(b).expect("b != 0") {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &d in &divs {
            let mut pe = 1i128;
            for _ in 0..=e {
                next.push(d.checked_mul(pe).expect("divisor overflow"));
                pe = pe.checked_mul(p as i128).unwrap_or(i128::MAX);
            }
        }
        divs = next;
    }
    let mut out = Vec::with_capacity(divs.len() * 2);
    for d in divs {
        out.push(d);
        out.push(-d);
    }
    out.sort_unstable_by_key(|d| (d.unsigned_abs(), d < &0));
    out
}

/// Evaluates `t^n + a·t + b` at `t`; `None` means an intermediate overflowed,
/// which already certifies a nonzero value at desk scale.
fn eval_trinomial(n: u32, a: i128, b: i128, t: i128) -> Option<i128> {
    let tn = t.checked_pow(n)?;
    tn.checked_add(a.checked_mul(t)?)?.checked_add(b)
}

/// Remainder-is-zero test for division of `f` by a monic `g` over `Z`
/// (both most-significant first). Overflow means `g` is not a factor of a
/// desk-scale `f`.
fn divides_exactly(f: &[i128], g: &[i128]) -> bool {
    let mut rem = f.to_vec();
    while rem.len() >= g.len() {
        let lead = rem[0];
        if lead != 0 {
            for j in 1..g.len() {
                let Some(prod) = lead.checked_mul(g[j]) else { return false };
                let Some(diff) = rem[j].checked_sub(prod) else { return false };
                rem[j] = diff;
            }
        }
        rem.remove(0);
    }
    rem.iter().all(|&c| c == 0)
}

/// Exhaustive search for a monic integer factor of `t^n + a·t + b` with one
/// of the given degrees. Constant terms divide `b`; interior coefficients
/// are bounded by `2^d (1 + max|coeff|)`; evaluations at ±1 prune fast.
fn has_integer_factor(n: u32, a: i128, b: i128, degrees: &[usize]) -> bool {
    debug_assert!(b != 0);
    let f: Vec<i128> = Trinomial { degree: n, linear_coeff: a, constant_coeff: b }.coefficients();
    let f_at_1 = 1 + a + b;
    let f_at_m1 = if n.is_multiple_of(2) { 1 - a + b } else { -1 - a + b };
    let divisors = signed_divisors(b);
    for &d in degrees {
        if d < 2 {
            continue; // linear factors are the rational roots, checked earlier
        }
        let bound = (1i128 << d) * (1 + a.abs().max(b.abs()).max(1));
        let mut mid = vec![-bound; d - 1];
        'outer: loop {
            for &g0 in &divisors {
                if g0.abs() > bound {
                    continue;
                }
                let mid_sum: i128 = mid.iter().sum();
                let g_at_1 = 1 + mid_sum + g0;
                if f_at_1 != 0 && (g_at_1 == 0 || f_at_1 % g_at_1 != 0) {
                    continue;
                }
                let mut g_at_m1 = if d % 2 == 0 { 1 } else { -1 };
                for (i, &c) in mid.iter().enumerate() {
                    // coefficient of t^{d-1-i}, evaluated at -1
                    let e = d - 1 - i;
                    g_at_m1 += if e % 2 == 0 { c } else { -c };
                }
                g_at_m1 += g0;
                if f_at_m1 != 0 && (g_at_m1 == 0 || f_at_m1 % g_at_m1 != 0) {
                    continue;
                }
                let mut g = Vec::with_capacity(d + 1);
                g.push(1);
                g.extend_from_slice(&mid);
                g.push(g0);
                if divides_exactly(&f, &g) {
                    return true;
                }
            }
            // odometer over the interior coefficients
            for slot in (0..mid.len()).rev() {
                if mid[slot] < bound {
                    mid[slot] += 1;
                    continue 'outer;
                }
                mid[slot] = -bound;
            }
            break;
        }
    }
    false
}

/// Exact irreducibility of `t^n + a·t + b` over `Q`.
pub fn is_irreducible_over_q(tri: &Trinomial) -> bool {
    let (n, a, b) = (tri.degree, tri.linear_coeff, tri.constant_coeff);
    if b == 0 {
        return false; // t divides
    }
    let disc = trinomial::discriminant(tri);
    if disc == 0 {
        return false; // repeated root
    }
    // rational roots are integers dividing the constant term
    for d in signed_divisors(b) {
        if eval_trinomial(n, a, b, d) == Some(0) {
            return false;
        }
    }
    if n <= 3 {
        return true;
    }
    // tier 1: an irreducible reduction certifies irreducibility
    for &p in &FIRST_25_PRIMES {
        if is_irreducible_mod_p(n, a, b, p).expect("valid p, n") {
            return true;
        }
    }
    // tier 2: intersect feasible factor degrees across squarefree reductions
    let mut feasible: Option<BTreeSet<usize>> = None;
    let mut used = 0;
    for &p in &FIRST_25_PRIMES {
        if disc % (p as i128) == 0 {
            continue;
        }
        let pattern = factor_degree_pattern(&trinomial_mod_p(n, a, b, p));
        let sums = proper_factor_degrees(&pattern, n as usize);
        let next = match feasible {
            None => sums,
            Some(prev) => prev.intersection(&sums).copied().collect(),
        };
        if next.is_empty() {
            return true;
        }
        feasible = Some(next);
        used += 1;
        if used >= PATTERN_PRIMES {
            break;
        }
    }
    // tier 3: exact search over the surviving degrees
    let degrees: Vec<usize> = match feasible {
        Some(set) => set.into_iter().filter(|&d| 2 * d <= n as usize).collect(),
        None => (1..=n as usize / 2).collect(),
    };
    !has_integer_factor(n, a, b, &degrees)
}

/// Exact tier-3 verdict on its own, for cross-checking the tiered path.
pub fn is_irreducible_over_q_exhaustive(tri: &Trinomial) -> bool {
    let (n, a, b) = (tri.degree, tri.linear_coeff, tri.constant_coeff);
    if b == 0 || trinomial::discriminant(tri) == 0 {
        return false;
    }
    for d in signed_divisors(b) {
        if eval_trinomial(n, a, b, d) == Some(0) {
            return false;
        }
    }
    let degrees: Vec<usize> = (2..=n as usize / 2).collect();
    !has_integer_factor(n, a, b, &degrees)
}

/// A prime with a witness of an irreducible trinomial over `F_{p0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrreducibleAnchor {
    pub p0: u64,
    pub alpha0: u64,
    pub beta0: u64,
    degree: u32,
}

impl IrreducibleAnchor {
    /// Re-verifies the witness on construction.
    pub fn new(degree: u32, p0: u64, alpha0: u64, beta0: u64) -> Result<Self> {
        if !is_irreducible_mod_p(degree, alpha0 as i128, beta0 as i128, p0)? {
            return Err(Error::InvalidArgument(format!(
                "t^{degree} + {alpha0} t + {beta0} is not irreducible over F_{p0}"
            )));
        }
        Ok(IrreducibleAnchor { p0, alpha0, beta0, degree })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

pub const DEFAULT_P0_CAP: u64 = 10_000;

/// Smallest prime `p0` admitting an irreducible `t^n + α t + β` over
/// `F_{p0}`, with the lexicographically smallest `(α, β)` witness.
pub fn find_p0(n: u32) -> Result<IrreducibleAnchor> {
    find_p0_capped(n, DEFAULT_P0_CAP)
}

/// As [`find_p0`] with an explicit prime cap; exhausting the cap is an
/// explicit error, never a silent fallback.
pub fn find_p0_capped(n: u32, cap: u64) -> Result<IrreducibleAnchor> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("degree must be >= 2, got {n}")));
    }
    let mut p = 2u64;
    while p <= cap {
        for alpha in 0..p {
            for beta in 0..p {
                if is_irreducible_mod_p(n, alpha as i128, beta as i128, p)? {
                    return IrreducibleAnchor::new(n, p, alpha, beta);
                }
            }
        }
        p = (p + 1..).find(|&q| is_prime(q as u128)).expect("next prime");
    }
    Err(Error::NotFound(format!(
        "no prime p <= {cap} admits an irreducible trinomial of degree {n}"
    )))
}

/// Exact number of pairs `(α, β) ∈ F_p²` with `t^n + α t + β` irreducible.
/// Sharded by `α`; the count is independent of the shard layout.
pub fn cohen_count(n: u32, p: u64) -> Result<u64> {
    if !is_prime(p as u128) {
        return Err(Error::InvalidArgument(format!("modulus {p} is not prime")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("degree must be >= 2, got {n}")));
    }
    let rows = map_ordered((0..p).collect::<Vec<u64>>(), |alpha| {
        (0..p)
            .filter(|&beta| rabin_irreducible(&trinomial_mod_p(n, alpha as i128, beta as i128, p)))
            .count() as u64
    });
    Ok(rows.into_iter().sum())
}
