//! Discriminants of `t^n + a·t + b`.
//!
//! The closed form carries the full sign factor `(-1)^{n(n-1)/2}` so it is
//! valid for every `n >= 2`, not only `n ≡ 1 (mod 4)` where it reduces to
//! `(n-1)^{n-1} a^n + n^n b^{n-1}`. An independent Sylvester-resultant oracle
//! with fraction-free (Bareiss) elimination cross-checks it bit-exactly.
//!
//! All arithmetic is checked `i128`; overflow panics rather than wrapping.
//! Desk-scale inputs (`n <= 13`, coefficients a few dozen) stay far inside
//! the range.

use std::fmt;

use crate::{Error, Result};

/// The polynomial `t^n + a·t + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trinomial {
    pub degree: u32,
    pub linear_coeff: i128,
    pub constant_coeff: i128,
}

impl Trinomial {
    pub fn new(degree: u32, linear_coeff: i128, constant_coeff: i128) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidArgument(format!(
                "trinomial degree must be >= 2, got {degree}"
            )));
        }
        Ok(Trinomial { degree, linear_coeff, constant_coeff })
    }

    /// Integer coefficients, most-significant first.
    pub fn coefficients(&self) -> Vec<i128> {
        let n = self.degree as usize;
        let mut c = vec![0i128; n + 1];
        c[0] = 1;
        c[n - 1] = self.linear_coeff;
        c[n] = self.constant_coeff;
        c
    }
}

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub numerator: i128,
    pub denominator: i128,
}

impl Rational {
    pub fn new(numerator: i128, denominator: i128) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let sign = if denominator < 0 { -1 } else { 1 };
        let g = gcd(numerator.unsigned_abs(), denominator.unsigned_abs()) as i128;
        Ok(Rational {
            numerator: sign * numerator / g,
            denominator: denominator.abs() / g,
        })
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if a == 0 {
        1
    } else {
        a
    }
}

fn ipow(base: i128, exp: u32) -> i128 {
    base.checked_pow(exp).expect("i128 overflow in discriminant arithmetic")
}

fn checked_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("i128 overflow in discriminant arithmetic")
}

/// `(-1)^{n(n-1)/2}`.
fn disc_sign(n: u32) -> i128 {
    if (n as u64 * (n as u64 - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Discriminant of `t^n + a·t + b` by the closed form
/// `(-1)^{n(n-1)/2} (n^n b^{n-1} + (-1)^{n-1} (n-1)^{n-1} a^n)`.
pub fn discriminant(tri: &Trinomial) -> i128 {
    let n = tri.degree;
    let term_b = checked_mul(ipow(n as i128, n), ipow(tri.constant_coeff, n - 1));
    let term_a = checked_mul(ipow(n as i128 - 1, n - 1), ipow(tri.linear_coeff, n));
    let sign_a = if n % 2 == 1 { 1 } else { -1 };
    checked_mul(
        disc_sign(n),
        term_b.checked_add(checked_mul(sign_a, term_a)).expect("i128 overflow"),
    )
}

/// Exponent constant `κ_n = 1/n + 1/(n-1)` in lowest terms.
pub fn kappa(n: u32) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("kappa needs n >= 2, got {n}")));
    }
    let n = n as i128;
    Rational::new(2 * n - 1, n * (n - 1))
}

/// Discriminant of `t^n + t^m + 1` from the special-value formula
/// `(-1)^{n(n-1)/2} (n^n - (-1)^n m^m (n-m)^{n-m})`.
///
/// The formula requires `gcd(n, m) = 1`; for `gcd(n, m) = d > 1` the
/// resultant acquires an extra `d`-th-power structure and the simple closed
/// form no longer applies (e.g. it gives 240 instead of 144 at `n=4, m=2`).
pub fn disc_unit_general(n: u32, m: u32) -> Result<i128> {
    if m < 1 || n <= m {
        return Err(Error::InvalidArgument(format!(
            "disc_unit_general needs n > m >= 1, got n={n}, m={m}"
        )));
    }
    if gcd(n as u128, m as u128) != 1 {
        return Err(Error::InvalidArgument(format!(
            "disc_unit_general needs gcd(n, m) = 1, got n={n}, m={m}"
        )));
    }
    let sign_n = if n.is_multiple_of(2) { 1 } else { -1 };
    let inner = ipow(n as i128, n)
        .checked_sub(checked_mul(
            sign_n,
            checked_mul(ipow(m as i128, m), ipow((n - m) as i128, n - m)),
        ))
        .expect("i128 overflow");
    Ok(checked_mul(disc_sign(n), inner))
}

/// Exact determinant by fraction-free Bareiss elimination.
fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = checked_mul(a[k][k], a[i][j])
                    .checked_sub(checked_mul(a[i][k], a[k][j]))
                    .expect("i128 overflow in Bareiss elimination");
                a[i][j] = num / prev; // exact by the Bareiss identity
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Resultant of two integer polynomials given most-significant first,
/// as the Sylvester-matrix determinant.
pub fn resultant(f: &[i128], g: &[i128]) -> i128 {
    assert!(!f.is_empty() && f[0] != 0, "f must have a nonzero leading coefficient");
    assert!(!g.is_empty() && g[0] != 0, "g must have a nonzero leading coefficient");
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 {
        return ipow(f[0], n as u32);
    }
    if n == 0 {
        return ipow(g[0], m as u32);
    }
    let size = m + n;
    let mut s = vec![vec![0i128; size]; size];
    for (row, srow) in s.iter_mut().take(n).enumerate() {
        srow[row..row + m + 1].copy_from_slice(f);
    }
    for (i, srow) in s.iter_mut().skip(n).enumerate() {
        srow[i..i + n + 1].copy_from_slice(g);
    }
    bareiss_det(s)
}

/// Discriminant of a monic integer polynomial (most-significant first)
/// as `(-1)^{deg(deg-1)/2} · Res(f, f')`.
pub fn poly_discriminant(coeffs: &[i128]) -> i128 {
    assert!(coeffs.len() >= 2 && coeffs[0] == 1, "expected a monic polynomial of degree >= 1");
    let n = coeffs.len() - 1;
    let deriv: Vec<i128> = coeffs[..n]
        .iter()
        .enumerate()
        .map(|(i, &c)| checked_mul((n - i) as i128, c))
        .collect();
    checked_mul(disc_sign(n as u32), resultant(coeffs, &deriv))
}

/// Independent oracle for [`discriminant`]: exact Sylvester determinant of
/// `Res(f, f')` with the same sign convention.
pub fn discriminant_resultant(tri: &Trinomial) -> i128 {
    poly_discriminant(&tri.coefficients())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(discriminant(&Trinomial::new(3, 0, 0).unwrap()), 0);
        // 4^4 + 5^5 = 256 + 3125 = 3381
        assert_eq!(discriminant(&Trinomial::new(5, 1, 1).unwrap()), 3381);
        // classical a² - 4b
        assert_eq!(discriminant(&Trinomial::new(2, 3, 1).unwrap()), 5);
        assert!(Trinomial::new(1, 1, 1).is_err());
    }

    #[test]
    fn resultant_oracle_examples() {
        // t² - 1: disc = a² - 4b = 4
        assert_eq!(discriminant_resultant(&Trinomial::new(2, 0, -1).unwrap()), 4);
        // t³ + t + 1: -4a³ - 27b² = -31
        assert_eq!(discriminant_resultant(&Trinomial::new(3, 1, 1).unwrap()), -31);
        assert_eq!(discriminant_resultant(&Trinomial::new(5, 1, 1).unwrap()), 3381);
    }

    #[test]
    fn closed_form_matches_resultant_exhaustively() {
        for n in 2..=7u32 {
            for a in -8i128..=8 {
                for b in -8i128..=8 {
                    let tri = Trinomial::new(n, a, b).unwrap();
                    assert_eq!(
                        discriminant(&tri),
                        discriminant_resultant(&tri),
                        "n={n} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn eq_dab_specialization_for_n_1_mod_4() {
        for n in [5u32, 9, 13] {
            for a in -6i128..=6 {
                for b in -6i128..=6 {
                    let tri = Trinomial::new(n, a, b).unwrap();
                    let dab = ipow(n as i128 - 1, n - 1) * ipow(a, n)
                        + ipow(n as i128, n) * ipow(b, n - 1);
                    assert_eq!(discriminant(&tri), dab);
                }
            }
        }
    }

    #[test]
    fn disc_unit_general_examples() {
        assert_eq!(disc_unit_general(2, 1).unwrap(), -3);
        assert_eq!(disc_unit_general(3, 1).unwrap(), -31);
        // 5^5 + 2² · 3³ = 3125 + 108
        assert_eq!(disc_unit_general(5, 2).unwrap(), 3233);
        assert!(disc_unit_general(3, 3).is_err());
        assert!(disc_unit_general(3, 0).is_err());
    }

    #[test]
    fn disc_unit_matches_resultant_at_m_1() {
        for n in 2..=9u32 {
            let tri = Trinomial::new(n, 1, 1).unwrap();
            assert_eq!(disc_unit_general(n, 1).unwrap(), discriminant_resultant(&tri));
        }
    }

    #[test]
    fn disc_unit_matches_resultant_general_m() {
        for n in 3..=8u32 {
            for m in 2..n {
                if gcd(n as u128, m as u128) != 1 {
                    assert!(disc_unit_general(n, m).is_err(), "n={n} m={m}");
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
            }
        }
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(5).unwrap().to_string(), "9/20");
        assert_eq!(kappa(2).unwrap().to_string(), "3/2");
        assert_eq!(kappa(9).unwrap().to_string(), "17/72");
        assert!(kappa(1).is_err());
    }

    #[test]
    fn rational_reduces() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!((r.numerator, r.denominator), (-3, 2));
    }
}
