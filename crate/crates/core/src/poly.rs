//! Exact polynomials over the integers.
//!
//! [`IntPoly`] is univariate in `t`; [`BiPoly`] is bivariate and is used both
//! for joint (x, y) statistic distributions and for (t, q) polynomials.
//! γ-expansion over the basis `t^k (1+t)^(n-2k)` lives here, together with the
//! q-analogue basis `t^k q^(k(k+1)/2) ∏_{i=k+1}^{n-1-k} (1 + t q^i)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse univariate polynomial with arbitrary-precision coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: impl Into<BigInt>, degree: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c.into());
        p
    }

    /// `coeffs[i]` is the coefficient of `t^i`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        let mut p = Self::zero();
        for (d, c) in coeffs.iter().enumerate() {
            p.add_term(d as u32, c.clone().into());
        }
        p
    }

    /// `(1 + t)^m`.
    pub fn one_plus_t_pow(m: u32) -> Self {
        let mut p = Self::zero();
        let mut c = BigInt::one();
        for i in 0..=m {
            p.add_term(i, c.clone());
            c = c * (m - i) / (i + 1);
        }
        p
    }

    pub fn add_term(&mut self, degree: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(degree).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, degree: u32) -> BigInt {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut last = self.degree().unwrap_or(0);
        for (d, c) in self.coeffs.iter().rev() {
            for _ in *d..last {
                acc *= t;
            }
            acc += c;
            last = *d;
        }
        for _ in 0..last {
            acc *= t;
        }
        acc
    }

    pub fn shift(&self, by: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (d + by, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (d, v) in &self.coeffs {
            out.add_term(*d, v * c);
        }
        out
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Checks `a_{r+i} = a_{s-i}` and returns `r + s`, twice the center.
    pub fn is_palindromic(&self) -> Result<u32> {
        let (Some(r), Some(s)) = (self.low_degree(), self.degree()) else {
            return Err(Error::ZeroPolynomial);
        };
        for i in 0..=(s - r) / 2 {
            let (lo, hi) = (self.coeff(r + i), self.coeff(s - i));
            if lo != hi {
                return Err(Error::NotPalindromic {
                    low: r + i,
                    high: s - i,
                    low_coeff: lo.to_string(),
                    high_coeff: hi.to_string(),
                });
            }
        }
        Ok(r + s)
    }

    /// Rise-then-fall over the support range, internal zeros included.
    pub fn is_unimodal(&self) -> bool {
        let (Some(r), Some(s)) = (self.low_degree(), self.degree()) else {
            return true;
        };
        let mut falling = false;
        for d in r..s {
            let (a, b) = (self.coeff(d), self.coeff(d + 1));
            if b < a {
                falling = true;
            } else if b > a && falling {
                return false;
            }
        }
        true
    }

    pub fn gamma_expand(&self) -> Result<GammaVector> {
        GammaVector::expand(self)
    }
}

/// Joins monomials as `1+4*t-t^2`, dropping unit coefficients and exponents.
fn render_terms<'a>(terms: impl Iterator<Item = (&'a BigInt, Vec<(&'a str, u32)>)>) -> String {
    let mut out = String::new();
    for (c, vars) in terms {
        let vars: Vec<String> = vars
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let neg = c.is_negative();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        if vars.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&vars.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for IntPoly {
    /// Lowest degree first, e.g. `1+4*t+4*t^2+t^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.coeffs.iter().map(|(d, c)| (c, vec![("t", *d)]))))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, -c);
        }
        out
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &rhs.coeffs {
                *acc.entry(da + db).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        IntPoly { coeffs: acc }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.scale(&BigInt::from(-1))
    }
}

/// γ-coefficients of a palindromic polynomial:
/// `p(t) = Σ_{k=low}^{⌊center2/2⌋} γ_k t^k (1+t)^(center2 - 2k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaVector {
    /// Twice the center of symmetry.
    pub center2: u32,
    /// Index of the first stored coefficient.
    pub low: u32,
    /// `gammas[i]` is `γ_{low + i}`.
    #[serde(with = "decimal_vec")]
    pub gammas: Vec<BigInt>,
}

impl GammaVector {
    pub fn new(center2: u32, low: u32, gammas: Vec<BigInt>) -> Self {
        Self { center2, low, gammas }
    }

    pub fn get(&self, k: u32) -> BigInt {
        k.checked_sub(self.low)
            .and_then(|i| self.gammas.get(i as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// Peel from the lowest degree upwards. Negative γ_k are kept; positivity
    /// is a separate verdict.
    pub fn expand(p: &IntPoly) -> Result<Self> {
        let center2 = p.is_palindromic()?;
        let low = p.low_degree().unwrap_or(0);
        let mut rem = p.clone();
        let mut gammas = Vec::new();
        for k in low..=center2 / 2 {
            let g = rem.coeff(k);
            if !g.is_zero() {
                let basis = IntPoly::one_plus_t_pow(center2 - 2 * k).shift(k);
                rem = &rem - &basis.scale(&g);
            }
            gammas.push(g);
        }
        debug_assert!(rem.is_zero(), "palindromic peel left a remainder");
        if !rem.is_zero() {
            return Err(Error::InvalidArgument(format!("γ peel left remainder {rem}")));
        }
        Ok(Self { center2, low, gammas })
    }

    pub fn contract(&self) -> IntPoly {
        let mut out = IntPoly::zero();
        for (i, g) in self.gammas.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let k = self.low + i as u32;
            let basis = IntPoly::one_plus_t_pow(self.center2 - 2 * k).shift(k);
            out = &out + &basis.scale(g);
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.gammas.iter().all(|g| !g.is_negative())
    }

    /// `(k, γ_k)` pairs with γ_k < 0.
    pub fn negatives(&self) -> Vec<(u32, BigInt)> {
        self.gammas
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_negative())
            .map(|(i, g)| (self.low + i as u32, g.clone()))
            .collect()
    }
}

impl fmt::Display for GammaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gammas.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Sparse bivariate polynomial with arbitrary-precision coefficients.
///
/// The two variables are positional; callers pick names when rendering
/// (`x, y` for statistic pairs, `t, q` for the (des, maj) polynomial).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

pub type QTPoly = BiPoly;

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c.into());
        p
    }

    /// Builds from `(c, i, j)` triples with small coefficients.
    pub fn from_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut p = Self::zero();
        for &(c, i, j) in terms {
            p.add_term(i, j, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((i, j)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for ((i, j), v) in &self.coeffs {
            out.add_term(*i, *j, v * c);
        }
        out
    }

    /// Multiplies by `c · x^di · y^dj`.
    pub fn mul_monomial(&self, c: i64, di: u32, dj: u32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let c = BigInt::from(c);
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|((i, j), v)| ((i + di, j + dj), v * &c))
                .collect(),
        }
    }

    pub fn eval_at_ones(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Sets the second variable to `value`, leaving a polynomial in the first.
    pub fn specialize_second(&self, value: i64) -> IntPoly {
        let v = BigInt::from(value);
        let mut out = IntPoly::zero();
        for ((i, j), c) in &self.coeffs {
            out.add_term(*i, c * num_traits::pow(v.clone(), *j as usize));
        }
        out
    }

    /// Sets the first variable to `value`, leaving a polynomial in the second.
    pub fn specialize_first(&self, value: i64) -> IntPoly {
        let v = BigInt::from(value);
        let mut out = IntPoly::zero();
        for ((i, j), c) in &self.coeffs {
            out.add_term(*j, c * num_traits::pow(v.clone(), *i as usize));
        }
        out
    }

    /// Coefficient of `first^i` as a polynomial in the second variable.
    pub fn first_slice(&self, i: u32) -> IntPoly {
        let mut out = IntPoly::zero();
        for ((a, b), c) in self.coeffs.range((i, 0)..=(i, u32::MAX)) {
            debug_assert_eq!(*a, i);
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn first_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, _)| *i).max()
    }

    pub fn render(&self, first: &str, second: &str) -> String {
        render_terms(
            self.coeffs
                .iter()
                .map(|((i, j), c)| (c, vec![(first, *i), (second, *j)])),
        )
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x", "y"))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.coeffs {
            out.add_term(*i, *j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.coeffs {
            out.add_term(*i, *j, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut acc: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for ((ia, ja), ca) in &self.coeffs {
            for ((ib, jb), cb) in &rhs.coeffs {
                *acc.entry((ia + ib, ja + jb)).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BiPoly { coeffs: acc }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.mul_monomial(-1, 0, 0)
    }
}

/// Result of expanding a (t, q) polynomial in the basis
/// `t^k q^(k(k+1)/2) ∏_{i=k+1}^{n-1-k} (1 + t q^i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilksExpansion {
    pub n: u32,
    /// `gammas[k]` is `γ_{n,k}(q)` as a polynomial in q.
    pub gammas: Vec<IntPoly>,
    pub nonnegative: bool,
}

/// `t^k q^(k(k+1)/2) ∏_{i=k+1}^{n-1-k} (1 + t q^i)` with t first, q second.
pub fn dilks_basis(n: u32, k: u32) -> QTPoly {
    let mut b = QTPoly::monomial(1, k, k * (k + 1) / 2);
    let top = (n as i64) - 1 - k as i64;
    for i in (k + 1) as i64..=top {
        let factor = QTPoly::from_terms(&[(1, 0, 0), (1, 1, i as u32)]);
        b = &b * &factor;
    }
    b
}

/// Triangular peel in t-degree. `p` has t as its first variable, q as second.
pub fn dilks_expand(p: &QTPoly, n: u32) -> Result<DilksExpansion> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut rem = p.clone();
    let mut gammas = Vec::new();
    for k in 0..=(n - 1) / 2 {
        let slice = rem.first_slice(k);
        let shift = k * (k + 1) / 2;
        if let Some(low) = slice.low_degree() {
            if low < shift {
                return Err(Error::NotDilksExpandable {
                    k,
                    reason: format!("[t^{k}] has q^{low} below q^{shift}"),
                });
            }
        }
        let gamma = IntPoly {
            coeffs: slice.terms().map(|(d, c)| (d - shift, c.clone())).collect(),
        };
        if !gamma.is_zero() {
            let mut g2 = QTPoly::zero();
            for (d, c) in gamma.terms() {
                g2.add_term(0, d, c.clone());
            }
            rem = &rem - &(&g2 * &dilks_basis(n, k));
        }
        gammas.push(gamma);
    }
    if !rem.is_zero() {
        let k = rem.first_degree().unwrap_or(0);
        return Err(Error::NotDilksExpandable {
            k,
            reason: format!("nonzero remainder {}", rem.render("t", "q")),
        });
    }
    let nonnegative = gammas.iter().all(IntPoly::has_nonnegative_coeffs);
    Ok(DilksExpansion { n, gammas, nonnegative })
}

pub(crate) mod decimal_vec {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ring_ops() {
        assert_eq!(&p(&[1, 1]) + &p(&[0, 1]), p(&[1, 2]));
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1]), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 4, 4, 1]).eval_at_one(), BigInt::from(10));
        assert_eq!(p(&[1, 2, 3]).eval(&BigInt::from(2)), BigInt::from(17));
        assert_eq!(p(&[0, 0, 1]).eval(&BigInt::from(3)), BigInt::from(9));
        assert!((&p(&[1, 2]) - &p(&[1, 2])).is_zero());
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[1, 4, 4, 1]).to_string(), "1+4*t+4*t^2+t^3");
        assert_eq!(p(&[0, 1, -1]).to_string(), "t-t^2");
        assert_eq!(p(&[-2, 0, 3]).to_string(), "-2+3*t^2");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn palindromic_centers() {
        assert_eq!(p(&[1, 4, 4, 1]).is_palindromic().unwrap(), 3);
        assert_eq!(p(&[0, 1, 1, 1]).is_palindromic().unwrap(), 4);
        match p(&[1, 2]).is_palindromic() {
            Err(Error::NotPalindromic { low: 0, high: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(IntPoly::zero().is_palindromic(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn gamma_expand_examples() {
        let g = p(&[1, 4, 4, 1]).gamma_expand().unwrap();
        assert_eq!((g.center2, g.low, g.gammas.clone()), (3, 0, big(&[1, 1])));

        let g = p(&[0, 1, 1, 1]).gamma_expand().unwrap();
        assert_eq!((g.center2, g.low, g.gammas.clone()), (4, 1, big(&[1, -1])));
        assert!(!g.is_nonnegative());
        assert_eq!(g.negatives(), vec![(2, BigInt::from(-1))]);

        let g = p(&[1, 11, 11, 1]).gamma_expand().unwrap();
        assert_eq!(g.gammas, big(&[1, 8]));

        assert!(p(&[1, 2]).gamma_expand().is_err());
    }

    #[test]
    fn gamma_contract_examples() {
        assert_eq!(GammaVector::new(3, 0, big(&[1, 1])).contract(), p(&[1, 4, 4, 1]));
        assert_eq!(GammaVector::new(4, 1, big(&[1, -1])).contract(), p(&[0, 1, 1, 1]));
        for n in 1..8u32 {
            assert_eq!(
                GammaVector::new(n - 1, 0, big(&[1])).contract(),
                IntPoly::one_plus_t_pow(n - 1)
            );
        }
    }

    #[test]
    fn unimodality() {
        assert!(p(&[1, 4, 4, 1]).is_unimodal());
        assert!(!p(&[1, 2, 1, 2, 1]).is_unimodal());
        assert!(p(&[5]).is_unimodal());
        assert!(p(&[0, 1, 3, 3, 1]).is_unimodal());
    }

    #[test]
    fn dilks_small_cases() {
        let e = dilks_expand(&QTPoly::one(), 1).unwrap();
        assert_eq!(e.gammas, vec![IntPoly::one()]);
        assert!(e.nonnegative);

        let p2 = QTPoly::from_terms(&[(1, 0, 0), (1, 1, 1)]);
        let e = dilks_expand(&p2, 2).unwrap();
        assert_eq!(e.gammas, vec![IntPoly::one()]);

        let p3 = QTPoly::from_terms(&[(1, 0, 0), (1, 1, 1), (1, 1, 2), (1, 2, 3)]);
        let e = dilks_expand(&p3, 3).unwrap();
        assert_eq!(e.gammas, vec![IntPoly::one(), IntPoly::zero()]);
        assert!(e.nonnegative);
    }

    #[test]
    fn dilks_rejects_non_expandable() {
        // [t^1] = q^0 is not divisible by q^1.
        let bad = QTPoly::monomial(1, 1, 0);
        assert!(matches!(
            dilks_expand(&bad, 3),
            Err(Error::NotDilksExpandable { k: 1, .. })
        ));
        let bad = QTPoly::from_terms(&[(1, 0, 0), (1, 1, 1), (1, 1, 2), (1, 2, 3), (1, 1, 0)]);
        assert!(dilks_expand(&bad, 4).is_err());
    }

    #[test]
    fn bipoly_basics() {
        let a = BiPoly::from_terms(&[(1, 0, 0), (1, 1, 1)]);
        let sq = &a * &a;
        assert_eq!(sq, BiPoly::from_terms(&[(1, 0, 0), (2, 1, 1), (1, 2, 2)]));
        assert_eq!(sq.eval_at_ones(), BigInt::from(4));
        assert_eq!(sq.specialize_second(0), IntPoly::one());
        assert_eq!(sq.specialize_second(1), p(&[1, 2, 1]));
        assert_eq!(sq.first_slice(1), IntPoly::monomial(2, 1));
        assert_eq!(a.render("t", "q"), "1+t*q");
    }

    fn gamma_strategy() -> impl Strategy<Value = GammaVector> {
        (1u32..14, 0u32..3)
            .prop_flat_map(|(center2, low)| {
                let low = low.min(center2 / 2);
                let len = (center2 / 2 - low + 1) as usize;
                (Just(center2), Just(low), prop::collection::vec(-50i64..50, len))
            })
            .prop_filter("leading γ nonzero", |(_, _, g)| g[0] != 0)
            .prop_map(|(c, l, g)| GammaVector::new(c, l, big(&g)))
    }

    proptest! {
        #[test]
        fn expand_inverts_contract(g in gamma_strategy()) {
            let poly = g.contract();
            let back = poly.gamma_expand().unwrap();
            prop_assert_eq!(back.contract(), poly);
            prop_assert_eq!(back, g);
        }

        #[test]
        fn gamma_positive_implies_unimodal(g in gamma_strategy()) {
            let g = GammaVector::new(
                g.center2,
                g.low,
                g.gammas.iter().map(|x| x.abs()).collect(),
            );
            prop_assert!(g.contract().is_unimodal());
        }
    }
}
