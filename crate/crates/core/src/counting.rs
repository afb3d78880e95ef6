//! Counting block-wise simple and simple permutations: exhaustive search,
//! the composition recursion, and the ratio table.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::enumeration::{self, PermClass};
use crate::error::{Error, Result};

/// An ordered list of positive parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Composition(pub Vec<usize>);

/// Compositions of `n` into exactly `l` parts, lexicographically.
pub struct Compositions {
    n: usize,
    next: Option<Vec<usize>>,
}

pub fn compositions(n: usize, l: usize) -> Result<Compositions> {
    if l == 0 || l > n {
        return Err(Error::input(format!(
            "cannot split {n} into {l} positive parts"
        )));
    }
    let mut first = vec![1; l];
    first[l - 1] = n - l + 1;
    Ok(Compositions {
        n,
        next: Some(first),
    })
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.next.take()?;
        let l = cur.len();
        // bump the rightmost part (other than the last) whose tail can spare a unit
        let mut tail = cur[l - 1];
        let mut succ = None;
        for i in (0..l - 1).rev() {
            if tail > l - 1 - i {
                let mut s = cur.clone();
                s[i] += 1;
                for part in &mut s[i + 1..l - 1] {
                    *part = 1;
                }
                let used: usize = s[..l - 1].iter().sum();
                s[l - 1] = self.n - used;
                succ = Some(s);
                break;
            }
            tail += cur[i];
        }
        self.next = succ;
        Some(Composition(cur))
    }
}

/// `|Simp_n|` with lengths 1 and 2 counted as simple.
pub fn count_simple_bruteforce(n: usize, cap: usize) -> Result<BigInt> {
    enumeration::count(n, PermClass::Simple, cap).map(BigInt::from)
}

/// `|W_n|` by exhaustive search with the interval predicate.
pub fn count_blockwise_bruteforce(n: usize, cap: usize) -> Result<BigInt> {
    enumeration::count(n, PermClass::Blockwise, cap).map(BigInt::from)
}

/// `Σ_{λ ∈ Comp(n,l)} w_{λ1} ⋯ w_{λl}` by walking every composition.
pub fn composition_sum(n: usize, l: usize, w: &[BigInt]) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for Composition(parts) in compositions(n, l)? {
        let mut prod = BigInt::one();
        for &part in &parts {
            prod *= &w[part];
            if prod.is_zero() {
                break;
            }
        }
        total += prod;
    }
    Ok(total)
}

/// `w_0..w_n` from `w_n = Σ_{l=4}^{n} s_l Σ_{λ∈Comp(n,l)} Π w_{λi}` with
/// `w_1 = 1`, `w_2 = w_3 = 0`. `simple` must hold `s_l` for `4 <= l <= n`.
///
/// The inner sums are `[x^m] W(x)^l`, kept in a table and extended one
/// degree at a time; parts never exceed `m - 3`, so each `w_m` only needs
/// earlier values.
pub fn blockwise_recursion_table(
    n: usize,
    simple: &BTreeMap<usize, BigInt>,
) -> Result<Vec<BigInt>> {
    for l in 4..=n {
        if !simple.contains_key(&l) {
            return Err(Error::input(format!("missing s_{l} for the recursion")));
        }
    }
    let mut w = vec![BigInt::zero(); n + 1];
    if n >= 1 {
        w[1] = BigInt::one();
    }
    // powers[l][m] = Σ over compositions of m into l parts of Π w
    let mut powers = vec![vec![BigInt::zero(); n + 1]; n + 1];
    powers[0][0] = BigInt::one();
    if n >= 1 {
        powers[1][1] = BigInt::one();
    }
    for m in 2..=n {
        for l in 2..=m {
            let mut acc = BigInt::zero();
            for j in 1..=m - l + 1 {
                if !w[j].is_zero() && !powers[l - 1][m - j].is_zero() {
                    acc += &w[j] * &powers[l - 1][m - j];
                }
            }
            powers[l][m] = acc;
        }
        if m >= 4 {
            let mut wm = BigInt::zero();
            for l in 4..=m {
                wm += &simple[&l] * &powers[l][m];
            }
            w[m] = wm;
        }
        powers[1][m] = w[m].clone();
    }
    Ok(w)
}

pub fn count_blockwise_recursion(n: usize, simple: &BTreeMap<usize, BigInt>) -> Result<BigInt> {
    Ok(blockwise_recursion_table(n, simple)?.swap_remove(n))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Bruteforce,
    Recursion,
    Series,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bruteforce => "bruteforce",
            Method::Recursion => "recursion",
            Method::Series => "series",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountRow {
    pub n: usize,
    pub w: BigInt,
    pub s: BigInt,
}

/// `(n, w_n, s_n)` rows from one method.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountTable {
    pub method: Method,
    pub rows: Vec<CountRow>,
}

impl CountTable {
    /// Rows for `lo..=hi`. The recursion takes its `s_l` from the series
    /// identity; brute force counts both columns directly.
    pub fn compute(method: Method, lo: usize, hi: usize, cap: usize) -> Result<CountTable> {
        if lo == 0 || lo > hi {
            return Err(Error::input(format!("bad range {lo}..{hi}")));
        }
        let rows = match method {
            Method::Bruteforce => (lo..=hi)
                .map(|n| {
                    Ok(CountRow {
                        n,
                        w: count_blockwise_bruteforce(n, cap)?,
                        s: count_simple_bruteforce(n, cap)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            Method::Recursion => {
                let s = crate::series::simple_gf_coeffs(hi.max(1))?;
                let map: BTreeMap<usize, BigInt> = s.iter().cloned().enumerate().collect();
                let w = blockwise_recursion_table(hi, &map)?;
                (lo..=hi)
                    .map(|n| CountRow {
                        n,
                        w: w[n].clone(),
                        s: s[n].clone(),
                    })
                    .collect()
            }
            Method::Series => {
                let s = crate::series::simple_gf_coeffs(hi.max(1))?;
                let w = crate::series::blockwise_gf_coeffs(hi.max(1))?;
                (lo..=hi)
                    .map(|n| CountRow {
                        n,
                        w: w[n].clone(),
                        s: s[n].clone(),
                    })
                    .collect()
            }
        };
        Ok(CountTable { method, rows })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,w_n,s_n\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.n, r.w, r.s));
        }
        out
    }

    /// Coefficient arrays as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "method": self.method.to_string(),
            "n": self.rows.iter().map(|r| r.n).collect::<Vec<_>>(),
            "w_n": self.rows.iter().map(|r| r.w.to_string()).collect::<Vec<_>>(),
            "s_n": self.rows.iter().map(|r| r.s.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// `R_n = |W_n minus Simp_n| / n!`, which is `(w_n - s_n) / n!` from `n = 4` on
/// and zero below.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatioRow {
    pub n: usize,
    pub exact: BigRational,
    /// `numerator/n!` before reduction, e.g. `16/5040`.
    pub unreduced: String,
    pub decimal: String,
}

/// Block-wise simple permutations of length `n` that are not simple.
fn non_simple_blockwise(n: usize, s: &BigInt, w: &BigInt) -> BigInt {
    if n < 4 {
        BigInt::zero()
    } else {
        w - s
    }
}

/// `w` and `s` are indexed by `n` and must reach `n_max`.
pub fn ratio_table(n_max: usize, s: &[BigInt], w: &[BigInt]) -> Result<Vec<RatioRow>> {
    if s.len() <= n_max || w.len() <= n_max {
        return Err(Error::input(format!("counts do not reach n = {n_max}")));
    }
    let mut fact = BigInt::one();
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        fact *= n;
        let num = non_simple_blockwise(n, &s[n], &w[n]);
        let exact = BigRational::new(num.clone(), fact.clone());
        rows.push(RatioRow {
            n,
            unreduced: format!("{num}/{fact}"),
            decimal: format_significant(&exact, 6),
            exact,
        });
    }
    Ok(rows)
}

/// The ratio as `numerator/n!` without reducing (e.g. `16/5040`).
pub fn ratio_unreduced(n: usize, s: &BigInt, w: &BigInt) -> String {
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    format!("{}/{}", non_simple_blockwise(n, s, w), fact)
}

pub fn ratio_csv(rows: &[RatioRow]) -> String {
    let mut out = String::from("n,R_n_exact,R_n_decimal\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.n, r.unreduced, r.decimal));
    }
    out
}

/// Decimal rendering rounded half-up to `sig` significant figures, trailing
/// zeros dropped.
pub fn format_significant(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let x = x.abs();
    let ten = BigRational::from_integer(BigInt::from(10));
    // scale x into [10^(sig-1), 10^sig)
    let lower = BigRational::from_integer(num_traits::pow(BigInt::from(10), sig - 1));
    let upper = &lower * &ten;
    let mut scaled = x.clone();
    let mut exp: i64 = 0; // x = scaled * 10^(-exp)
    while scaled < lower {
        scaled = &scaled * &ten;
        exp += 1;
    }
    while scaled >= upper {
        scaled = &scaled / &ten;
        exp -= 1;
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut digits = (scaled + half).floor().to_integer();
    if digits >= *upper.numer() {
        digits /= 10;
        exp -= 1;
    }
    let mut ds = digits.to_string();
    // now x ≈ ds * 10^(-exp)
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp <= 0 {
        ds.push_str(&"0".repeat((-exp) as usize));
        out.push_str(&ds);
        return out;
    }
    let exp = exp as usize;
    let (int_part, frac_part) = if ds.len() > exp {
        let split = ds.len() - exp;
        (ds[..split].to_string(), ds[split..].to_string())
    } else {
        (
            "0".to_string(),
            format!("{}{}", "0".repeat(exp - ds.len()), ds),
        )
    };
    let frac_part = frac_part.trim_end_matches('0');
    out.push_str(&int_part);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    fn known_simple() -> BTreeMap<usize, BigInt> {
        [
            (4, 2u64),
            (5, 6),
            (6, 46),
            (7, 338),
            (8, 2926),
            (9, 28146),
            (10, 298526),
            (11, 3454434),
            (12, 43286526),
        ]
        .into_iter()
        .map(|(l, s)| (l, big(s)))
        .collect()
    }

    #[test]
    fn composition_examples() {
        let c: Vec<_> = compositions(4, 4).unwrap().collect();
        assert_eq!(c, vec![Composition(vec![1, 1, 1, 1])]);
        assert_eq!(compositions(7, 4).unwrap().count(), 20);
        let c: Vec<Vec<usize>> = compositions(5, 2).unwrap().map(|c| c.0).collect();
        assert_eq!(c, vec![vec![1, 4], vec![2, 3], vec![3, 2], vec![4, 1]]);
        assert!(compositions(3, 4).is_err());
        assert!(compositions(3, 0).is_err());
    }

    #[test]
    fn composition_counts_and_order() {
        for n in 1..=12 {
            for l in 1..=n {
                let all: Vec<Vec<usize>> = compositions(n, l).unwrap().map(|c| c.0).collect();
                assert_eq!(all.len() as u64, binomial(n as u64 - 1, l as u64 - 1));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all
                    .iter()
                    .all(|c| c.len() == l && c.iter().sum::<usize>() == n));
            }
        }
    }

    #[test]
    fn recursion_examples() {
        let s = known_simple();
        assert_eq!(count_blockwise_recursion(7, &s).unwrap(), big(354));
        assert_eq!(count_blockwise_recursion(8, &s).unwrap(), big(3034));
        assert_eq!(count_blockwise_recursion(12, &s).unwrap(), big(44471970));
        let mut missing = s.clone();
        missing.remove(&6);
        assert!(count_blockwise_recursion(8, &missing).is_err());
    }

    #[test]
    fn recursion_table_matches_explicit_composition_walk() {
        let s = known_simple();
        let w = blockwise_recursion_table(12, &s).unwrap();
        assert_eq!(&w[..4], &[big(0), big(1), big(0), big(0)]);
        for n in 4..=12 {
            let mut explicit = BigInt::zero();
            for l in 4..=n {
                explicit += &s[&l] * composition_sum(n, l, &w).unwrap();
            }
            assert_eq!(explicit, w[n], "n={n}");
        }
    }

    #[test]
    fn parts_two_and_three_contribute_nothing() {
        let s = known_simple();
        let w = blockwise_recursion_table(12, &s).unwrap();
        for n in 4..=12 {
            for l in 4..=n {
                let restricted: BigInt = compositions(n, l)
                    .unwrap()
                    .filter(|c| c.0.iter().all(|&p| p != 2 && p != 3))
                    .map(|c| c.0.iter().map(|&p| w[p].clone()).product::<BigInt>())
                    .sum();
                assert_eq!(restricted, composition_sum(n, l, &w).unwrap());
            }
        }
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(count_simple_bruteforce(6, 10).unwrap(), big(46));
        assert_eq!(count_simple_bruteforce(7, 10).unwrap(), big(338));
        assert_eq!(count_simple_bruteforce(3, 10).unwrap(), big(0));
        assert_eq!(count_blockwise_bruteforce(7, 10).unwrap(), big(354));
        assert_eq!(count_blockwise_bruteforce(8, 10).unwrap(), big(3034));
        assert_eq!(count_blockwise_bruteforce(2, 10).unwrap(), big(0));
        assert!(count_blockwise_bruteforce(11, 10).is_err());
    }

    #[test]
    fn small_orders_agree_with_simple_counts() {
        for n in 4..=6 {
            assert_eq!(
                count_simple_bruteforce(n, 10).unwrap(),
                count_blockwise_bruteforce(n, 10).unwrap()
            );
        }
    }

    #[test]
    fn ratio_examples() {
        let s: Vec<BigInt> = [0u64, 1, 2, 0, 2, 6, 46, 338, 2926].map(big).to_vec();
        let w: Vec<BigInt> = [0u64, 1, 0, 0, 2, 6, 46, 354, 3034].map(big).to_vec();
        let rows = ratio_table(8, &s, &w).unwrap();
        assert_eq!(rows[3].exact, BigRational::zero());
        assert_eq!(rows[3].decimal, "0");
        assert_eq!(rows[6].exact, BigRational::new(big(16), big(5040)));
        assert_eq!(rows[6].decimal, "0.0031746");
        assert_eq!(rows[6].unreduced, "16/5040");
        assert_eq!(rows[1].exact, BigRational::zero());
        assert!(ratio_csv(&rows).starts_with("n,R_n_exact,R_n_decimal\n1,0/1,0\n"));
        assert_eq!(rows[7].decimal, "0.00267857");
        assert_eq!(ratio_unreduced(8, &s[8], &w[8]), "108/40320");
        assert!(ratio_table(9, &s, &w).is_err());
    }

    #[test]
    fn significant_figures() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(format_significant(&r(1, 3), 6), "0.333333");
        assert_eq!(format_significant(&r(2, 3), 6), "0.666667");
        assert_eq!(format_significant(&r(1234567, 1), 6), "1234570");
        assert_eq!(format_significant(&r(-5, 4), 6), "-1.25");
        assert_eq!(format_significant(&r(9999995, 10_000_000), 6), "1");
        assert_eq!(format_significant(&r(10648, 3628800), 6), "0.0029343");
    }

    #[test]
    fn table_emitters() {
        let t = CountTable::compute(Method::Recursion, 4, 5, 10).unwrap();
        assert_eq!(t.to_csv(), "n,w_n,s_n\n4,2,2\n5,6,6\n");
        let j = t.to_json();
        assert_eq!(j["w_n"], json!(["2", "6"]));
        assert_eq!(j["method"], "recursion");
        assert!(CountTable::compute(Method::Series, 5, 4, 10).is_err());
        let one = CountTable::compute(Method::Series, 1, 1, 10).unwrap();
        assert_eq!(one.rows[0].w, big(1));
    }
}
