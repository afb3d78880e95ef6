//! Truncated formal power series over exact rationals, and the generating
//! functions for simple permutations, block-wise simple permutations and
//! claw-of-claws posets.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `Σ_{k=0}^{order} coeffs[k] x^k + O(x^{order+1})`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Series {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs a truncation order");
        Series { coeffs }
    }

    pub fn from_integers<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        Series::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    /// `F(x) = Σ_{n>=1} n! x^n`.
    pub fn factorials(order: usize) -> Self {
        let mut s = Series::zero(order);
        let mut f = BigInt::one();
        for n in 1..=order {
            f *= n;
            s.coeffs[n] = BigRational::from_integer(f.clone());
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order());
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `1 / self`; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::input(
                "reciprocal of a series with zero constant term",
            ));
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -acc * &inv0;
        }
        Ok(Series { coeffs: out })
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut result = Series::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self / x`; the truncation order drops by one.
    pub fn div_x(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::input("division by x needs a zero constant term"));
        }
        if self.order() == 0 {
            return Err(Error::input("division by x of an order-0 series"));
        }
        Ok(Series {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `self(g(x))`, Horner style; `g` must have zero constant term.
    pub fn compose(&self, g: &Series) -> Result<Series> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::input(
                "composition with a series whose constant term is nonzero",
            ));
        }
        let order = self.order().min(g.order());
        let g = g.truncate(order);
        let mut acc = Series::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = &acc * &g;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(x)) = x`, solved one degree at
    /// a time.
    pub fn revert(&self) -> Result<Series> {
        let n = self.order();
        if n < 1 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::input(
                "reversion needs a zero constant term and a nonzero linear term",
            ));
        }
        let f1_inv = self.coeffs[1].recip();
        // powers[k][m] = [x^m] g^k, filled column by column
        let mut powers = vec![vec![BigRational::zero(); n + 1]; n + 1];
        powers[0][0] = BigRational::one();
        let mut g = vec![BigRational::zero(); n + 1];
        g[1] = f1_inv.clone();
        powers[1][1] = f1_inv;
        for m in 2..=n {
            for k in 2..=m {
                let mut acc = BigRational::zero();
                for j in 1..=m - k + 1 {
                    if !g[j].is_zero() && !powers[k - 1][m - j].is_zero() {
                        acc += &g[j] * &powers[k - 1][m - j];
                    }
                }
                powers[k][m] = acc;
            }
            let mut rest = BigRational::zero();
            for k in 2..=m {
                if !self.coeffs[k].is_zero() {
                    rest += &self.coeffs[k] * &powers[k][m];
                }
            }
            g[m] = -rest * self.coeffs[1].recip();
            powers[1][m] = g[m].clone();
        }
        Ok(Series { coeffs: g })
    }

    /// The series `x` to this truncation order.
    pub fn is_identity(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| if k == 1 { c.is_one() } else { c.is_zero() })
    }

    /// Coefficients as integers; fails if any is fractional.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::internal(format!(
                        "coefficient of x^{k} is {c}, not an integer"
                    )))
                }
            })
            .collect()
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Reversion by Lagrange inversion: `[x^n] g = (1/n) [x^{n-1}] (x / f)^n`.
/// Independent of [`Series::revert`]; the two are cross-checked in tests.
pub fn lagrange_revert(f: &Series) -> Result<Series> {
    let order = f.order();
    if order < 1 || !f.coeff(0).is_zero() || f.coeff(1).is_zero() {
        return Err(Error::input(
            "reversion needs a zero constant term and a nonzero linear term",
        ));
    }
    let h = f.div_x()?.reciprocal()?;
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut h_pow = Series::one(h.order());
    for n in 1..=order {
        h_pow = &h_pow * &h;
        coeffs[n] = h_pow.coeff(n - 1) / rat(n as i64);
    }
    Ok(Series::from_coeffs(coeffs))
}

/// `F^{-1}(t)`, whose coefficients are the Comtet numbers `1, -2, 2, -4, ...`.
pub fn comtet_series(order: usize) -> Result<Series> {
    Series::factorials(order).revert()
}

/// `2t^2 / (1 + t)`.
fn two_t2_over_1pt(order: usize) -> Series {
    let mut num = Series::zero(order);
    if order >= 2 {
        num.coeffs[2] = rat(2);
    }
    let mut den = Series::one(order);
    if order >= 1 {
        den.coeffs[1] = BigRational::one();
    }
    &num * &den.reciprocal().expect("1 + t is invertible")
}

/// `S(t) = t - 2t^2/(1+t) - F^{-1}(t)`: simple permutations of order >= 4.
pub fn simple_gf(order: usize) -> Result<Series> {
    let finv = comtet_series(order)?;
    Ok(&(&Series::x(order) - &two_t2_over_1pt(order)) - &finv)
}

/// `s_0..s_order` indexed by degree. Degrees below 4 come out as zero; the
/// identity says nothing about them.
pub fn simple_gf_coeffs(order: usize) -> Result<Vec<BigInt>> {
    simple_gf(order)?.integer_coeffs()
}

/// `W^{-1}(t) = F^{-1}(t) + 2t^2/(1+t)`.
pub fn blockwise_inverse_gf(order: usize) -> Result<Series> {
    Ok(&comtet_series(order)? + &two_t2_over_1pt(order))
}

pub fn blockwise_gf(order: usize) -> Result<Series> {
    blockwise_inverse_gf(order)?.revert()
}

/// `w_0..w_order` by reverting `W^{-1}`.
pub fn blockwise_gf_coeffs(order: usize) -> Result<Vec<BigInt>> {
    blockwise_gf(order)?.integer_coeffs()
}

/// `w_0..w_order` by Lagrange inversion of `W^{-1}`.
pub fn blockwise_gf_coeffs_lagrange(order: usize) -> Result<Vec<BigInt>> {
    lagrange_revert(&blockwise_inverse_gf(order)?)?.integer_coeffs()
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Number of claw-of-claws plane trees with `n >= 4` leaves:
/// `(1/n) Σ_{i=1}^{⌊(n-1)/3⌋} C(n+i-1, i) C(n-2i-2, i-1)`.
pub fn claw_count_formula(n: usize) -> Result<BigInt> {
    if n < 4 {
        return Err(Error::input(format!(
            "claw count formula needs n >= 4, got {n}"
        )));
    }
    let n_i = n as i64;
    let sum: BigInt = (1..=(n_i - 1) / 3)
        .map(|i| binomial(n_i + i - 1, i) * binomial(n_i - 2 * i - 2, i - 1))
        .sum();
    let n_big = BigInt::from(n);
    if !(&sum % &n_big).is_zero() {
        return Err(Error::internal(format!("{sum} is not divisible by {n}")));
    }
    Ok(sum / n_big)
}

/// `C(z) = z + C(z)^4 / (1 - C(z))`, iterated until the truncation is fixed.
pub fn claw_gf(order: usize) -> Series {
    let z = Series::x(order);
    let mut c = z.clone();
    loop {
        let one_minus = &Series::one(order) - &c;
        let next = &z + &(&c.pow(4) * &one_minus.reciprocal().expect("constant term 1"));
        if next == c {
            return c;
        }
        c = next;
    }
}

/// `c_0..c_order` indexed by number of leaves.
pub fn claw_gf_coeffs(order: usize) -> Result<Vec<BigInt>> {
    claw_gf(order).integer_coeffs()
}

/// True iff every coefficient is nonnegative.
pub fn all_nonnegative(coeffs: &[BigInt]) -> bool {
    coeffs.iter().all(|c| !c.is_negative())
}
