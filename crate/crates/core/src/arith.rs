//! Exact integer primitives: Jacobi symbols, factorization, square-free
//! kernels and prime windows.
//!
//! Factorization is trial division against a shared prime table followed by
//! Brent-cycle Pollard rho with Miller-Rabin certification, which covers the
//! desk-scale discriminants this crate produces with a wide margin.
//! Cryptographic-size inputs are a non-goal.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Largest prime kept in the shared trial-division table.
const TRIAL_LIMIT: u64 = 1_000_000;

/// Sieving a window past this point would need too much transient memory.
const WINDOW_LIMIT: u64 = 100_000_000;

fn sieve_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut q = p * p;
        while q <= n {
            composite[q] = true;
            q += p;
        }
    }
    primes
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve_to(TRIAL_LIMIT))
}

/// Jacobi symbol `(w/m)` for odd `m >= 3`.
///
/// Zero exactly when `gcd(w, m) > 1`; completely multiplicative in both
/// arguments.
pub fn jacobi(w: i128, m: i128) -> Result<i32> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "jacobi modulus must be odd and >= 3, got {m}"
        )));
    }
    let mut a = w.rem_euclid(m);
    let mut m = m;
    let mut t = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(m % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            t = -t;
        }
        a = a.rem_euclid(m);
    }
    Ok(if m == 1 { t } else { 0 })
}

/// Kronecker symbol `(k/2)`, used only so sieve windows may contain 2.
pub(crate) fn kronecker_two(k: i128) -> i32 {
    if k % 2 == 0 {
        0
    } else if matches!(k.rem_euclid(8), 1 | 7) {
        1
    } else {
        -1
    }
}

fn addmod(a: u128, b: u128, m: u128) -> u128 {
    // a, b < m; avoids overflow near u128::MAX
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

pub(crate) fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        (a % m) * (b % m) % m
    } else {
        let mut acc = 0u128;
        let mut a = a % m;
        let mut b = b % m;
        while b > 0 {
            if b & 1 == 1 {
                acc = addmod(acc, a, m);
            }
            a = addmod(a, a, m);
            b >>= 1;
        }
        acc
    }
}

pub(crate) fn powmod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `base^exp mod m` entirely in 64-bit residues.
pub(crate) fn powmod_u64(base: u64, exp: u64, m: u64) -> u64 {
    powmod(base as u128, exp as u128, m as u128) as u64
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn miller_rabin(n: u128, base: u128) -> bool {
    let a = base % n;
    if a == 0 {
        return true;
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let mut x = powmod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mulmod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic below 3.3·10²⁴ (12-base Miller-Rabin); larger inputs get
/// eight extra bases, far past anything the desk-scale callers produce.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    const BASES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    const EXTRA: [u128; 8] = [41, 43, 47, 53, 59, 61, 67, 71];
    if !BASES.iter().all(|&b| miller_rabin(n, b)) {
        return false;
    }
    if n >= 3_317_044_064_679_887_385_961_981 {
        return EXTRA.iter().all(|&b| miller_rabin(n, b));
    }
    true
}

fn pollard_rho(n: u128) -> u128 {
    // n odd, composite, no factor below TRIAL_LIMIT
    let mut c = 1u128;
    loop {
        let step = |x: u128| addmod(mulmod(x, x, n), c, n);
        let mut x = 2u128;
        let mut y = 2u128;
        let mut d = 1u128;
        while d == 1 {
            x = step(x);
            y = step(step(y));
            d = gcd_u128(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of `|k|` as ascending `(prime, exponent)` pairs.
pub fn factor(k: i128) -> Result<Vec<(u128, u32)>> {
    if k == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut n = k.unsigned_abs();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for &p in small_primes() {
        let p = p as u128;
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        if n <= (TRIAL_LIMIT as u128) * (TRIAL_LIMIT as u128) || is_prime(n) {
            // trial division already certified everything below sqrt(n)
            out.push((n, 1));
        } else {
            let mut rest: BTreeMap<u128, u32> = BTreeMap::new();
            let mut stack = vec![n];
            while let Some(v) = stack.pop() {
                if is_prime(v) {
                    *rest.entry(v).or_insert(0) += 1;
                } else {
                    let d = pollard_rho(v);
                    stack.push(d);
                    stack.push(v / d);
                }
            }
            // all remaining factors exceed every trial prime already pushed
            out.extend(rest);
        }
    }
    Ok(out)
}

/// Number of distinct prime divisors of `|k|`; `omega(±1) = 0`.
pub fn omega(k: i128) -> Result<u32> {
    Ok(factor(k)?.len() as u32)
}

/// `Δ = s·r²` with `s` square-free; `Δ = 0` maps to the degenerate marker
/// `(kernel, root) = (0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub value: i128,
    pub kernel: i128,
    pub root: i128,
}

impl SquarefreeDecomposition {
    pub fn is_degenerate(&self) -> bool {
        self.value == 0
    }
}

/// Splits `k` into square-free kernel and square root part,
/// with `sign(kernel) = sign(k)`.
pub fn squarefree_kernel(k: i128) -> SquarefreeDecomposition {
    if k == 0 {
        return SquarefreeDecomposition { value: 0, kernel: 0, root: 0 };
    }
    let mut kernel: i128 = 1;
    let mut root: i128 = 1;
    for (p, e) in factor(k).expect("nonzero") {
        let p = p as i128;
        if e % 2 == 1 {
            kernel *= p;
        }
        root *= p.pow(e / 2);
    }
    if k < 0 {
        kernel = -kernel;
    }
    SquarefreeDecomposition { value: k, kernel, root }
}

/// The primes in the closed interval `[z, 2z]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeWindow {
    pub z: f64,
    pub primes: Vec<u64>,
}

impl PrimeWindow {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// All primes in `[z, 2z]`, ascending. By Bertrand's postulate the window is
/// never empty for `z >= 2`.
pub fn prime_window(z: f64) -> Result<PrimeWindow> {
    if !z.is_finite() || z < 2.0 {
        return Err(Error::InvalidArgument(format!("prime window needs z >= 2, got {z}")));
    }
    let hi = (2.0 * z).floor() as u64;
    if hi > WINDOW_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "prime window [{z}, {}] exceeds the sieve limit {WINDOW_LIMIT}",
            2.0 * z
        )));
    }
    let lo = z.ceil() as u64;
    let primes = sieve_to(hi).into_iter().filter(|&p| p >= lo).collect();
    Ok(PrimeWindow { z, primes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(1, 3).unwrap(), 1);
        assert_eq!(jacobi(3, 9).unwrap(), 0);
        // (2/15) = (2/3)(2/5) = (-1)(-1) = 1
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert!(jacobi(2, 4).is_err());
        assert!(jacobi(2, 1).is_err());
        assert!(jacobi(2, -7).is_err());
    }

    /// Legendre symbol by exhaustive quadratic-residue tabulation.
    fn legendre_table(p: u64) -> Vec<i32> {
        let mut tab = vec![-1i32; p as usize];
        tab[0] = 0;
        for x in 1..p {
            tab[(x * x % p) as usize] = 1;
        }
        tab
    }

    #[test]
    fn jacobi_matches_legendre_product_definition() {
        // (w/m) = prod (w/p)^e over the factorization of m, for every odd m
        let mut m = 3i128;
        while m <= 10_000 {
            let fac = factor(m).unwrap();
            let tables: Vec<(u64, u32, Vec<i32>)> = fac
                .iter()
                .map(|&(p, e)| (p as u64, e, legendre_table(p as u64)))
                .collect();
            for w in 0..m {
                let mut expect = 1i32;
                for (p, e, tab) in &tables {
                    let l = tab[(w as u64 % p) as usize];
                    if l == 0 {
                        expect = 0;
                        break;
                    }
                    if e % 2 == 1 {
                        expect *= l;
                    }
                }
                assert_eq!(jacobi(w, m).unwrap(), expect, "w={w} m={m}");
            }
            m += 2;
        }
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(12).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(factor(-7).unwrap(), vec![(7, 1)]);
        // 3381 = 3 · 7² · 23, confirmed by multiplying back below
        assert_eq!(factor(3381).unwrap(), vec![(3, 1), (7, 2), (23, 1)]);
        assert!(factor(0).is_err());
        assert_eq!(factor(1).unwrap(), vec![]);
    }

    #[test]
    fn factor_product_reconstructs_input() {
        for k in [2i128, 97, 1024, 3381, 1_000_003, 999_999_999_989, 2_147_483_647 * 65_537] {
            let prod: i128 = factor(k)
                .unwrap()
                .iter()
                .map(|&(p, e)| (p as i128).pow(e))
                .product();
            assert_eq!(prod, k);
        }
    }

    #[test]
    fn factor_splits_large_semiprime() {
        // both factors above the trial-division limit
        let a: i128 = 1_000_003;
        let b: i128 = 1_000_033;
        assert_eq!(factor(a * b).unwrap(), vec![(a as u128, 1), (b as u128, 1)]);
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(1).unwrap(), 0);
        assert_eq!(omega(-1).unwrap(), 0);
        assert_eq!(omega(12).unwrap(), 2);
        assert_eq!(omega(30).unwrap(), 3);
        assert!(omega(0).is_err());
    }

    #[test]
    fn omega_log2_bound_sampled() {
        for k in 2i128..5000 {
            let w = omega(k).unwrap() as f64;
            assert!(w <= (k as f64).log2(), "omega({k}) too large");
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(squarefree_kernel(1), SquarefreeDecomposition { value: 1, kernel: 1, root: 1 });
        // exhaustive check of r <= sqrt(12) gives s=3, r=2
        assert_eq!(squarefree_kernel(12), SquarefreeDecomposition { value: 12, kernel: 3, root: 2 });
        assert_eq!(
            squarefree_kernel(-50),
            SquarefreeDecomposition { value: -50, kernel: -2, root: 5 }
        );
        assert!(squarefree_kernel(0).is_degenerate());
    }

    #[test]
    fn kernel_identity_over_full_range() {
        for k in -1_000_000i128..=1_000_000 {
            let d = squarefree_kernel(k);
            assert_eq!(d.kernel * d.root * d.root, k, "k={k}");
        }
    }

    #[test]
    fn kernel_is_squarefree_on_refactoring() {
        for k in [-123_456i128, 360, 3381, 982_081, 1 << 40] {
            let d = squarefree_kernel(k);
            assert!(factor(d.kernel).unwrap().iter().all(|&(_, e)| e == 1), "k={k}");
        }
    }

    #[test]
    fn prime_window_examples() {
        assert_eq!(prime_window(3.0).unwrap().primes, vec![3, 5]);
        assert_eq!(prime_window(10.0).unwrap().primes, vec![11, 13, 17, 19]);
        assert_eq!(prime_window(2.0).unwrap().primes, vec![2, 3]);
        assert!(prime_window(1.9).is_err());
    }

    #[test]
    fn prime_window_complete_and_sorted() {
        for z in [2.0, 5.5, 17.0, 100.0, 997.0] {
            let w = prime_window(z).unwrap();
            assert!(w.primes.windows(2).all(|p| p[0] < p[1]));
            for p in (z.ceil() as u64)..=((2.0 * z).floor() as u64) {
                assert_eq!(w.primes.contains(&p), is_prime(p as u128), "z={z} p={p}");
            }
        }
    }
}
