//! Two-sided Eulerian polynomials `Σ s^des t^ides` over sets of
//! permutations, palindromicity, and expansion in the gamma bases
//! `(st)^i (s+t)^j (1+st)^(d-j-2i)` and `q^j (1+q)^(d-2j)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Polynomial in `s, t` with integer coefficients; zero terms are never
/// stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn one() -> Self {
        BivarPoly::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(i: usize, j: usize, c: BigInt) -> Self {
        let mut p = BivarPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), BigInt)>) -> Self {
        let mut p = BivarPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: BigInt) {
        let e = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, e: usize) -> BivarPoly {
        (0..e).fold(BivarPoly::one(), |acc, _| &acc * self)
    }

    /// Sum of all coefficients.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `{"i,j": "c"}`.
    pub fn to_json(&self) -> Value {
        let m: Map<String, Value> = self
            .terms
            .iter()
            .map(|((i, j), c)| (format!("{i},{j}"), Value::String(c.to_string())))
            .collect();
        Value::Object(m)
    }
}

impl std::ops::Add for &BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl std::ops::Mul for &BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term(a + c, b + d, x * y);
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            let mut mag = c.abs().to_string();
            if c.is_negative() {
                f.write_str(if first { "-" } else { " - " })?;
            } else if !first {
                f.write_str(" + ")?;
            }
            if mag == "1" && i + j > 0 {
                mag.clear();
            }
            f.write_str(&mag)?;
            for (v, e) in [("s", i), ("t", j)] {
                match e {
                    0 => {}
                    1 => f.write_str(v)?,
                    _ => write!(f, "{v}^{e}")?,
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Tally of `(des, ides)` over `perms`, which must share one length.
pub fn two_sided_poly(perms: &[Permutation]) -> Result<BivarPoly> {
    if let Some(first) = perms.first() {
        let n = first.len();
        if let Some(p) = perms.iter().find(|p| p.len() != n) {
            return Err(Error::input(format!(
                "mixed lengths: {first} has length {n}, {p} has length {}",
                p.len()
            )));
        }
    }
    let tally = perms
        .par_iter()
        .fold(HashMap::new, |mut m: HashMap<(usize, usize), u64>, p| {
            *m.entry((p.des(), p.ides())).or_default() += 1;
            m
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(BivarPoly::from_terms(
        tally
            .into_iter()
            .map(|((i, j), c)| ((i, j), BigInt::from(c))),
    ))
}

/// `c(i,j) = c(j,i)` and `c(i,j) = c(d-i, d-j)`.
pub fn is_palindromic(poly: &BivarPoly, d: usize) -> bool {
    poly.terms.iter().all(|(&(i, j), c)| {
        i <= d && j <= d && poly.coeff(j, i) == *c && poly.coeff(d - i, d - j) == *c
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaExpansion {
    pub darga: usize,
    /// Nonzero coefficients only.
    pub gammas: BTreeMap<(usize, usize), BigInt>,
}

impl GammaExpansion {
    pub fn gamma(&self, i: usize, j: usize) -> BigInt {
        self.gammas.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.gammas.values().all(|g| !g.is_negative())
    }

    pub fn reconstruct(&self) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(i, j), g) in &self.gammas {
            let term = &gamma_basis(self.darga, i, j) * &BivarPoly::monomial(0, 0, g.clone());
            out = &out + &term;
        }
        out
    }

    /// `{"darga": d, "gammas": {"i,j": "g"}}`.
    pub fn to_json(&self) -> Value {
        let g: Map<String, Value> = self
            .gammas
            .iter()
            .map(|((i, j), c)| (format!("{i},{j}"), Value::String(c.to_string())))
            .collect();
        json!({ "darga": self.darga, "gammas": g })
    }
}

impl fmt::Display for GammaExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gammas.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .gammas
            .iter()
            .map(|(&(i, j), g)| format!("{g}*(st)^{i}(s+t)^{j}(1+st)^{}", self.darga - j - 2 * i))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `(st)^i (s+t)^j (1+st)^(d-j-2i)`.
pub fn gamma_basis(d: usize, i: usize, j: usize) -> BivarPoly {
    let one = BigInt::one();
    let st = BivarPoly::monomial(1, 1, one.clone());
    let s_plus_t = BivarPoly::from_terms([((1, 0), one.clone()), ((0, 1), one.clone())]);
    let one_plus_st = BivarPoly::from_terms([((0, 0), one.clone()), ((1, 1), one)]);
    let p = &st.pow(i) * &s_plus_t.pow(j);
    &p * &one_plus_st.pow(d - j - 2 * i)
}

pub fn gamma_expand(poly: &BivarPoly, d: usize) -> Result<GammaExpansion> {
    if !is_palindromic(poly, d) {
        return Err(Error::input(format!(
            "{poly} is not palindromic of darga {d}"
        )));
    }
    let index: Vec<(usize, usize)> = (0..=d / 2)
        .flat_map(|i| (0..=d - 2 * i).map(move |j| (i, j)))
        .collect();
    let columns: Vec<BTreeMap<(usize, usize), BigInt>> = index
        .iter()
        .map(|&(i, j)| gamma_basis(d, i, j).terms)
        .collect();
    let solution = solve_exact(&columns, &poly.terms)?;
    let gammas = index
        .into_iter()
        .zip(solution)
        .filter(|(_, g)| !g.is_zero())
        .collect();
    let out = GammaExpansion { darga: d, gammas };
    if out.reconstruct() != *poly {
        return Err(Error::internal(
            "gamma expansion does not reconstruct its input",
        ));
    }
    Ok(out)
}

/// Coefficients `γ_j` of `Σ γ_j q^j (1+q)^(d-2j)`, for `poly[k]` the
/// coefficient of `q^k`.
pub fn gamma_expand_univariate(poly: &[BigInt], d: usize) -> Result<Vec<BigInt>> {
    let c = |k: usize| poly.get(k).cloned().unwrap_or_default();
    let palindromic = poly
        .iter()
        .enumerate()
        .all(|(k, x)| x.is_zero() || (k <= d && *x == c(d - k)));
    if !palindromic {
        return Err(Error::input(format!(
            "coefficients {poly:?} are not palindromic of darga {d}"
        )));
    }
    let columns: Vec<BTreeMap<usize, BigInt>> = (0..=d / 2)
        .map(|j| {
            (0..=d - 2 * j)
                .map(|k| (j + k, binomial(d - 2 * j, k)))
                .collect()
        })
        .collect();
    let target: BTreeMap<usize, BigInt> = poly
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect();
    solve_exact(&columns, &target)
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Unique solution `x` of `Σ x_c · columns[c] = target`, keyed by monomial.
/// A rank deficit, an inconsistent system or a fractional solution is an
/// internal error.
fn solve_exact<K: Ord + Clone + fmt::Debug>(
    columns: &[BTreeMap<K, BigInt>],
    target: &BTreeMap<K, BigInt>,
) -> Result<Vec<BigInt>> {
    let keys: BTreeSet<K> = columns
        .iter()
        .flat_map(|c| c.keys().cloned())
        .chain(target.keys().cloned())
        .collect();
    let ncols = columns.len();
    let rat = |x: Option<&BigInt>| BigRational::from_integer(x.cloned().unwrap_or_default());
    let mut rows: Vec<Vec<BigRational>> = keys
        .iter()
        .map(|k| {
            columns
                .iter()
                .map(|c| rat(c.get(k)))
                .chain(std::iter::once(rat(target.get(k))))
                .collect()
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return Err(Error::internal(format!(
                "gamma basis is singular at column {col}"
            )));
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = &*x - &factor * p;
            }
        }
        pivot_row += 1;
    }
    if rows[ncols..].iter().any(|row| !row[ncols].is_zero()) {
        return Err(Error::internal(
            "target lies outside the span of the gamma basis",
        ));
    }
    rows[..ncols]
        .iter()
        .map(|row| {
            let x = &row[ncols];
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::internal(format!(
                    "non-integral gamma coefficient {x}"
                )))
            }
        })
        .collect()
}

/// Expansion of the two-sided polynomial of `perms`, and whether every
/// coefficient is nonnegative.
pub fn check_gamma_positive(perms: &[Permutation], d: usize) -> Result<(bool, GammaExpansion)> {
    let g = gamma_expand(&two_sided_poly(perms)?, d)?;
    Ok((g.is_nonnegative(), g))
}

/// `{α[β_1, ..., β_k] : α ∈ A, β_i ∈ B_i}`, sorted and deduplicated.
pub fn inflation_set(a: &[Permutation], bs: &[Vec<Permutation>]) -> Result<Vec<Permutation>> {
    let mut choices: Vec<Vec<Permutation>> = vec![Vec::new()];
    for b in bs {
        let mut next = Vec::with_capacity(choices.len() * b.len());
        for prefix in &choices {
            for beta in b {
                let mut c = prefix.clone();
                c.push(beta.clone());
                next.push(c);
            }
        }
        choices = next;
    }
    let mut out = BTreeSet::new();
    for alpha in a {
        for blocks in &choices {
            out.insert(alpha.inflate(blocks)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// Compares the tally over `A[B_1, ..., B_k]` with the product of the
/// tallies of `A` and each `B_i`.
pub fn product_law_check(a: &[Permutation], bs: &[Vec<Permutation>]) -> Result<bool> {
    for b in bs {
        if let Some(first) = b.first() {
            if b.iter().any(|p| p.len() != first.len()) {
                return Err(Error::input("each block set must have a single length"));
            }
        }
    }
    let direct = two_sided_poly(&inflation_set(a, bs)?)?;
    let mut product = two_sided_poly(a)?;
    for b in bs {
        product = &product * &two_sided_poly(b)?;
    }
    Ok(direct == product)
}

/// `des` and `ides` of `α[β_1, ..., β_k]` equal those of `α` plus those of
/// the blocks.
pub fn inflation_is_additive(alpha: &Permutation, blocks: &[Permutation]) -> Result<bool> {
    let sigma = alpha.inflate(blocks)?;
    let des: usize = alpha.des() + blocks.iter().map(Permutation::des).sum::<usize>();
    let ides: usize = alpha.ides() + blocks.iter().map(Permutation::ides).sum::<usize>();
    Ok(sigma.des() == des && sigma.ides() == ides)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate, PermClass};
    use crate::perm::AllPermutations;

    fn perms(xs: &[&str]) -> Vec<Permutation> {
        xs.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn poly(terms: &[((usize, usize), i64)]) -> BivarPoly {
        BivarPoly::from_terms(terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    fn gammas(terms: &[((usize, usize), i64)]) -> BTreeMap<(usize, usize), BigInt> {
        terms.iter().map(|&(k, c)| (k, BigInt::from(c))).collect()
    }

    #[test]
    fn simp4_and_identity() {
        let a = two_sided_poly(&perms(&["2413", "3142"])).unwrap();
        assert_eq!(a, poly(&[((2, 1), 1), ((1, 2), 1)]));
        assert_eq!(a.to_string(), "st^2 + s^2t");
        assert!(is_palindromic(&a, 3));
        let g = gamma_expand(&a, 3).unwrap();
        assert_eq!(g.gammas, gammas(&[((1, 1), 1)]));
        assert_eq!(
            two_sided_poly(&perms(&["12345"])).unwrap(),
            BivarPoly::one()
        );
        assert!(two_sided_poly(&perms(&["12", "123"])).is_err());
        assert!(two_sided_poly(&[]).unwrap().is_zero());
    }

    #[test]
    fn simp6_expansion() {
        let simp6 = enumerate(6, PermClass::Simple, 10).unwrap();
        let (pos, g) = check_gamma_positive(&simp6, 5).unwrap();
        assert!(pos);
        assert_eq!(g.gammas, gammas(&[((1, 2), 1), ((2, 0), 5), ((2, 1), 14)]));
        assert_eq!(g.to_json()["gammas"]["2,1"], "14");
    }

    #[test]
    fn palindromicity_examples() {
        assert!(is_palindromic(&BivarPoly::zero(), 7));
        assert!(!is_palindromic(&poly(&[((1, 0), 1)]), 1));
        assert!(gamma_expand(&poly(&[((1, 0), 1)]), 1).is_err());
        let z = gamma_expand(&BivarPoly::zero(), 4).unwrap();
        assert!(z.gammas.is_empty());
        assert!(z.reconstruct().is_zero());
    }

    #[test]
    fn univariate_examples() {
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(
            gamma_expand_univariate(&v(&[1, 4, 1]), 2).unwrap(),
            v(&[1, 2])
        );
        assert_eq!(gamma_expand_univariate(&v(&[1]), 0).unwrap(), v(&[1]));
        assert_eq!(gamma_expand_univariate(&v(&[1, 1]), 1).unwrap(), v(&[1]));
        assert_eq!(
            gamma_expand_univariate(&v(&[1, 11, 11, 1]), 3).unwrap(),
            v(&[1, 8])
        );
        assert!(gamma_expand_univariate(&v(&[1, 2]), 1).is_err());
    }

    #[test]
    fn full_symmetric_group_is_gamma_positive() {
        for n in 1..=7 {
            let all: Vec<Permutation> = AllPermutations::new(n).collect();
            let (pos, g) = check_gamma_positive(&all, n - 1).unwrap();
            assert!(pos, "n={n}");
            assert_eq!(gamma_expand(&g.reconstruct(), n - 1).unwrap(), g);
        }
    }

    #[test]
    fn inverse_and_reverse_transport() {
        let w7 = enumerate(7, PermClass::Blockwise, 10).unwrap();
        let a = two_sided_poly(&w7).unwrap();
        let inv: Vec<_> = w7.iter().map(Permutation::inverse).collect();
        assert_eq!(two_sided_poly(&inv).unwrap(), a);
        let rev: Vec<_> = w7.iter().map(Permutation::reverse).collect();
        let reflected = BivarPoly::from_terms(
            a.terms()
                .iter()
                .map(|(&(i, j), c)| ((6 - i, 6 - j), c.clone())),
        );
        assert_eq!(two_sided_poly(&rev).unwrap(), reflected);
        assert!(check_gamma_positive(&w7, 6).unwrap().0);
    }

    #[test]
    fn product_law_examples() {
        let simp4 = perms(&["2413", "3142"]);
        let one = perms(&["1"]);
        assert!(product_law_check(&perms(&["2413"]), &vec![one.clone(); 4]).unwrap());
        let bs = vec![simp4.clone(), one.clone(), one.clone(), one];
        assert_eq!(inflation_set(&simp4, &bs).unwrap().len(), 4);
        assert!(product_law_check(&simp4, &bs).unwrap());
        let s3: Vec<Permutation> = AllPermutations::new(3).collect();
        let bs = vec![s3.clone(), perms(&["1"]), perms(&["12", "21"]), s3];
        assert!(product_law_check(&simp4, &bs).unwrap());
        assert!(inflation_is_additive(
            &"2413".parse().unwrap(),
            &bs.iter().map(|b| b[0].clone()).collect::<Vec<_>>()
        )
        .unwrap());
    }
}
