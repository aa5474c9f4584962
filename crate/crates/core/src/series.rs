//! Power series in `z` truncated at a fixed order, with exact coefficients in
//! `Z[x, y]`, and fixed-point solvers for the functional equations of the
//! `(des, dd)` generating functions of `S_n(2413, 3142)` and `S_n(3412, 3421)`.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{joint_distribution, ClassSpec, EnumLimits, Statistic};
use crate::poly::BiPoly;

/// `Σ_{n=0}^{N} c_n z^n` with `c_n ∈ Z[x, y]`; terms past `z^N` are dropped
/// by every operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BiPoly>,
}

/// `x`, `y` as polynomials.
pub fn x() -> BiPoly {
    BiPoly::monomial(1, 1, 0)
}

pub fn y() -> BiPoly {
    BiPoly::monomial(1, 0, 1)
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BiPoly::zero(); order + 1],
        }
    }

    pub fn constant(c: BiPoly, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BiPoly::one(), order)
    }

    /// `c z^d`, or zero when `d` exceeds the order.
    pub fn monomial(c: BiPoly, d: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if d <= order {
            s.coeffs[d] = c;
        }
        s
    }

    pub fn z(order: usize) -> Self {
        Self::monomial(BiPoly::one(), 1, order)
    }

    /// Pads or truncates `coeffs` (indexed by z-degree) to the order.
    pub fn from_coeffs(mut coeffs: Vec<BiPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, BiPoly::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[z^n]`, zero past the order.
    pub fn coeff(&self, n: usize) -> BiPoly {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BiPoly::is_zero)
    }

    /// Lowest z-degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&BiPoly, &BiPoly) -> BiPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Cauchy product; output orders are computed in parallel.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = (0..=self.order())
            .into_par_iter()
            .map(|n| {
                let mut acc = BiPoly::zero();
                for i in 0..=n {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[n - i]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BiPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `c x^i y^j z^d`.
    pub fn mul_term(&self, c: i64, i: u32, j: u32, d: usize) -> Self {
        let mut out = Self::zero(self.order());
        for n in d..=self.order() {
            out.coeffs[n] = self.coeffs[n - d].mul_monomial(c, i, j);
        }
        out
    }

    /// `self / divisor`, where `[z^0]` of the divisor is the constant `±1`.
    pub fn divide_unit(&self, divisor: &Self) -> Result<Self> {
        self.check_order(divisor)?;
        let d0 = &divisor.coeffs[0];
        let sign = if *d0 == BiPoly::one() {
            BigInt::one()
        } else if *d0 == -&BiPoly::one() {
            -BigInt::one()
        } else {
            return Err(Error::NonUnitDivisor);
        };
        let mut q: Vec<BiPoly> = Vec::with_capacity(self.coeffs.len());
        for n in 0..=self.order() {
            let mut r = self.coeffs[n].clone();
            for i in 1..=n {
                let (d, qi) = (&divisor.coeffs[i], &q[n - i]);
                if !d.is_zero() && !qi.is_zero() {
                    r = &r - &(d * qi);
                }
            }
            q.push(r.scale(&sign));
        }
        Ok(Self { coeffs: q })
    }

    /// Substitutes `y = v`.
    pub fn specialize_y(&self, v: i64) -> Vec<crate::poly::IntPoly> {
        self.coeffs.iter().map(|c| c.specialize_second(v)).collect()
    }

    /// Coefficient dump: one `n x-deg y-deg value` line per nonzero term.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            for ((i, j), v) in c.terms() {
                let _ = writeln!(out, "{n} {i} {j} {v}");
            }
        }
        out
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*z^{n}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

pub fn ts_add(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    a.add(b)
}

pub fn ts_mul(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    a.mul(b)
}

pub fn ts_divide_unit(a: &TruncSeries, d: &TruncSeries) -> Result<TruncSeries> {
    a.divide_unit(d)
}

/// First coefficient where two series differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesDifference {
    pub z_degree: usize,
    pub x_degree: u32,
    pub y_degree: u32,
    pub left: String,
    pub right: String,
}

impl fmt::Display for SeriesDifference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[z^{} x^{} y^{}]: {} vs {}",
            self.z_degree, self.x_degree, self.y_degree, self.left, self.right
        )
    }
}

/// `Ok(None)` when equal, otherwise the lowest differing coefficient.
pub fn series_equal(a: &TruncSeries, b: &TruncSeries) -> Result<Option<SeriesDifference>> {
    a.check_order(b)?;
    for (n, (ca, cb)) in a.coeffs.iter().zip(&b.coeffs).enumerate() {
        if ca == cb {
            continue;
        }
        let diff = ca - cb;
        let ((i, j), _) = diff.terms().next().expect("unequal polynomials differ somewhere");
        return Ok(Some(SeriesDifference {
            z_degree: n,
            x_degree: i,
            y_degree: j,
            left: ca.coeff(i, j).to_string(),
            right: cb.coeff(i, j).to_string(),
        }));
    }
    Ok(None)
}

/// Right-hand sides of a system `X = F(X)`.
type Rhs<'a> = dyn Fn(&[TruncSeries]) -> Result<Vec<TruncSeries>> + Sync + 'a;

/// Iterates `X ← F(X)` from zero `steps` times, keeping every iterate.
pub fn iterate(order: usize, vars: usize, rhs: &Rhs<'_>, steps: usize) -> Result<Vec<Vec<TruncSeries>>> {
    let mut cur = vec![TruncSeries::zero(order); vars];
    let mut history = Vec::with_capacity(steps);
    for _ in 0..steps {
        cur = rhs(&cur)?;
        history.push(cur.clone());
    }
    Ok(history)
}

/// Solves `X = F(X)` z-adically and checks that every residual vanishes.
fn solve(system: &'static str, names: &[&'static str], order: usize, rhs: &Rhs<'_>) -> Result<Vec<TruncSeries>> {
    if order == 0 {
        return Err(Error::InvalidArgument("series order must be at least 1".into()));
    }
    let sol = iterate(order, names.len(), rhs, order + 1)?
        .pop()
        .expect("at least one step");
    let image = rhs(&sol)?;
    for ((name, lhs), rhs) in names.iter().zip(&sol).zip(&image) {
        if let Some(d) = series_equal(lhs, rhs)? {
            return Err(Error::NonzeroResidual {
                system,
                equation: name,
                order: d.z_degree,
            });
        }
    }
    Ok(sol)
}

/// `xz · U · V · (2 + F1 + xR1) / (1 - xR1F1)`, the block term shared by the
/// three equations of the first system.
fn block_term(u: &TruncSeries, v: &TruncSeries, f1: &TruncSeries, r1: &TruncSeries) -> Result<TruncSeries> {
    let n = u.order();
    let xr1 = r1.scale(&x());
    let num = TruncSeries::constant(BiPoly::from_terms(&[(2, 0, 0)]), n)
        .add(f1)?
        .add(&xr1)?;
    let den = TruncSeries::one(n).sub(&xr1.mul(f1)?)?;
    let q = num.divide_unit(&den)?;
    Ok(u.mul(v)?.mul(&q)?.mul_term(1, 1, 0, 1))
}

fn s1_rhs(v: &[TruncSeries]) -> Result<Vec<TruncSeries>> {
    let (s1, f1, r1) = (&v[0], &v[1], &v[2]);
    let n = s1.order();
    let z = TruncSeries::z(n);
    // S1 = z + (z + xyz)S1 + xz S1^2 Q
    let s = z
        .add(&s1.mul_term(1, 0, 0, 1))?
        .add(&s1.mul_term(1, 1, 1, 1))?
        .add(&block_term(s1, s1, f1, r1)?)?;
    // F1 = z + xzS1 + zF1 + xz F1 S1 Q
    let f = z
        .add(&s1.mul_term(1, 1, 0, 1))?
        .add(&f1.mul_term(1, 0, 0, 1))?
        .add(&block_term(f1, s1, f1, r1)?)?;
    // R1 = yz + zS1 + xyzR1 + xz R1 S1 Q
    let r = TruncSeries::monomial(y(), 1, n)
        .add(&s1.mul_term(1, 0, 0, 1))?
        .add(&r1.mul_term(1, 1, 1, 1))?
        .add(&block_term(r1, s1, f1, r1)?)?;
    Ok(vec![s, f, r])
}

fn cubic_rhs(v: &[TruncSeries]) -> Result<Vec<TruncSeries>> {
    let s = &v[0];
    let n = s.order();
    let s2 = s.mul(s)?;
    // xS^3 + xzS^2 + (z + xyz)S + z
    let out = s2
        .mul(s)?
        .scale(&x())
        .add(&s2.mul_term(1, 1, 0, 1))?
        .add(&s.mul_term(1, 0, 0, 1))?
        .add(&s.mul_term(1, 1, 1, 1))?
        .add(&TruncSeries::z(n))?;
    Ok(vec![out])
}

fn s2_rhs(v: &[TruncSeries]) -> Result<Vec<TruncSeries>> {
    let (s2, t2) = (&v[0], &v[1]);
    let n = s2.order();
    let z = TruncSeries::z(n);
    let xt2 = t2.scale(&x());
    // S2 = z + zS2 + (xy - x)zS2 + xT2S2
    let s = z
        .add(&s2.mul_term(1, 0, 0, 1))?
        .add(&s2.mul_term(1, 1, 1, 1))?
        .sub(&s2.mul_term(1, 1, 0, 1))?
        .add(&xt2.mul(s2)?)?;
    // T2 = z + (x - xy)z^2 + zS2 + (xyz - 2xz + z)T2 + xT2^2
    let t = z
        .add(&TruncSeries::monomial(
            BiPoly::from_terms(&[(1, 1, 0), (-1, 1, 1)]),
            2,
            n,
        ))?
        .add(&s2.mul_term(1, 0, 0, 1))?
        .add(&t2.mul_term(1, 1, 1, 1))?
        .sub(&t2.mul_term(2, 1, 0, 1))?
        .add(&t2.mul_term(1, 0, 0, 1))?
        .add(&xt2.mul(t2)?)?;
    Ok(vec![s, t])
}

pub fn s1_system_rhs() -> &'static Rhs<'static> {
    &s1_rhs
}

pub fn s1_cubic_rhs() -> &'static Rhs<'static> {
    &cubic_rhs
}

pub fn s2_system_rhs() -> &'static Rhs<'static> {
    &s2_rhs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S1System {
    pub s1: TruncSeries,
    pub f1: TruncSeries,
    pub r1: TruncSeries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2System {
    pub s2: TruncSeries,
    pub t2: TruncSeries,
}

/// Joint solve of the three-equation system for `S1`, `F1`, `R1`.
pub fn solve_s1_system(order: usize) -> Result<S1System> {
    let mut v = solve("S1 system", &["S1", "F1", "R1"], order, &s1_rhs)?;
    let r1 = v.pop().unwrap();
    let f1 = v.pop().unwrap();
    let s1 = v.pop().unwrap();
    Ok(S1System { s1, f1, r1 })
}

/// Solve of the single cubic equation for `S1`.
pub fn solve_s1_cubic(order: usize) -> Result<TruncSeries> {
    Ok(solve("S1 cubic", &["S1"], order, &cubic_rhs)?.pop().unwrap())
}

/// Joint solve for `S2` and `T2`; checks `S2 = z + …`, `T2 = z + 2z^2 + …`.
pub fn solve_s2_system(order: usize) -> Result<S2System> {
    let mut v = solve("S2 system", &["S2", "T2"], order, &s2_rhs)?;
    let t2 = v.pop().unwrap();
    let s2 = v.pop().unwrap();
    let expect = |s: &TruncSeries, n: usize, c: i64, what: &str| -> Result<()> {
        if n <= s.order() && s.coeff(n) != BiPoly::from_terms(&[(c, 0, 0)]) {
            return Err(Error::InvalidArgument(format!(
                "initial condition [z^{n}]{what} = {c} fails"
            )));
        }
        Ok(())
    };
    expect(&s2, 1, 1, "S2")?;
    expect(&t2, 1, 1, "T2")?;
    expect(&t2, 2, 2, "T2")?;
    Ok(S2System { s2, t2 })
}

/// Residuals of the two rational relations tying `F1`, `R1` to `S1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalRelations {
    /// First z-degree where `F1(1 + xyS1) - (S1 + xS1^2)` is nonzero.
    pub f1_residual_at: Option<usize>,
    /// First z-degree where `R1(1 + S1) - (yS1 + S1^2)` is nonzero.
    pub r1_residual_at: Option<usize>,
}

impl RationalRelations {
    pub fn holds(&self) -> bool {
        self.f1_residual_at.is_none() && self.r1_residual_at.is_none()
    }
}

pub fn check_rational_relations(sys: &S1System) -> Result<RationalRelations> {
    let (s1, f1, r1) = (&sys.s1, &sys.f1, &sys.r1);
    let n = s1.order();
    let one = TruncSeries::one(n);
    let s1sq = s1.mul(s1)?;
    let f_res = f1
        .mul(&one.add(&s1.scale(&(&x() * &y())))?)?
        .sub(&s1.add(&s1sq.scale(&x()))?)?;
    let r_res = r1.mul(&one.add(s1)?)?.sub(&s1.scale(&y()).add(&s1sq)?)?;
    Ok(RationalRelations {
        f1_residual_at: f_res.valuation(),
        r1_residual_at: r_res.valuation(),
    })
}

/// `Σ_{n=1}^{N} z^n Σ_{π ∈ class_n} x^{s1(π)} y^{s2(π)}` by enumeration.
pub fn class_series(
    class: &ClassSpec,
    first: Statistic,
    second: Statistic,
    order: usize,
    limits: &EnumLimits,
) -> Result<TruncSeries> {
    let mut coeffs = vec![BiPoly::zero()];
    for n in 1..=order {
        coeffs.push(joint_distribution(n, class, &[first, second], limits)?);
    }
    Ok(TruncSeries::from_coeffs(coeffs, order))
}

/// The two classes whose `(des, dd)` series coincide.
pub fn separable_class() -> ClassSpec {
    ClassSpec::avoiding(&["2413", "3142"]).expect("valid patterns")
}

pub fn second_class() -> ClassSpec {
    ClassSpec::avoiding(&["3412", "3421"]).expect("valid patterns")
}

/// Outcome of solving both systems and comparing them, plus every residual.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub order: usize,
    pub difference: Option<SeriesDifference>,
    pub cubic_matches_system: bool,
    pub rational_relations: RationalRelations,
    /// Always `z^n`-weighted: the only reading consistent with `T2 = z + 2z^2 + …`.
    pub t2_weighting: &'static str,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.difference.is_none() && self.cubic_matches_system && self.rational_relations.holds()
    }
}

/// Solves all five equations (residuals are checked by the solvers), the cubic
/// and both rational relations, then compares `S1` with `S2`.
pub fn cross_check(order: usize) -> Result<(CrossCheck, S1System, S2System)> {
    let (s1sys, (s2sys, cubic)) = rayon::join(
        || solve_s1_system(order),
        || rayon::join(|| solve_s2_system(order), || solve_s1_cubic(order)),
    );
    let (s1sys, s2sys, cubic) = (s1sys?, s2sys?, cubic?);
    let report = CrossCheck {
        order,
        difference: series_equal(&s1sys.s1, &s2sys.s2)?,
        cubic_matches_system: cubic == s1sys.s1,
        rational_relations: check_rational_relations(&s1sys)?,
        t2_weighting: "z^n",
    };
    Ok((report, s1sys, s2sys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Permutation, Statistic};

    fn p(terms: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_terms(terms)
    }

    #[test]
    fn ring_basics() {
        let z = TruncSeries::z(4);
        assert_eq!(z.mul(&z).unwrap(), TruncSeries::monomial(BiPoly::one(), 2, 4));
        let one = TruncSeries::one(3);
        let a = one.add(&TruncSeries::z(3)).unwrap();
        let b = one.sub(&TruncSeries::z(3)).unwrap();
        let expected = one.sub(&TruncSeries::monomial(BiPoly::one(), 2, 3)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
        assert!(matches!(a.add(&TruncSeries::z(4)), Err(Error::OrderMismatch(3, 4))));
        assert_eq!(TruncSeries::monomial(BiPoly::one(), 5, 3), TruncSeries::zero(3));
    }

    #[test]
    fn unit_division() {
        let n = 6;
        let num = TruncSeries::from_coeffs(vec![BiPoly::zero(), p(&[(1, 0, 0)]), p(&[(1, 1, 0)])], n);
        let den = TruncSeries::one(n).add(&TruncSeries::z(n)).unwrap();
        let q = num.divide_unit(&den).unwrap();
        assert_eq!(q.coeff(1), BiPoly::one());
        assert_eq!(q.coeff(2), p(&[(1, 1, 0), (-1, 0, 0)]));
        assert_eq!(q.mul(&den).unwrap(), num);

        let neg = TruncSeries::one(n).scale(&p(&[(-1, 0, 0)]));
        assert_eq!(num.divide_unit(&neg).unwrap().mul(&neg).unwrap(), num);
        let two = TruncSeries::one(n).scale(&p(&[(2, 0, 0)]));
        assert!(matches!(num.divide_unit(&two), Err(Error::NonUnitDivisor)));
        let xs = TruncSeries::constant(x(), n);
        assert!(matches!(num.divide_unit(&xs), Err(Error::NonUnitDivisor)));
    }

    #[test]
    fn s1_low_orders() {
        let sys = solve_s1_system(4).unwrap();
        assert_eq!(sys.s1.coeff(0), BiPoly::zero());
        assert_eq!(sys.s1.coeff(1), BiPoly::one());
        assert_eq!(sys.s1.coeff(2), p(&[(1, 0, 0), (1, 1, 1)]));
        assert_eq!(sys.s1.coeff(3), p(&[(1, 0, 0), (2, 1, 0), (2, 1, 1), (1, 2, 2)]));
        assert_eq!(sys.f1.coeff(2), p(&[(1, 0, 0), (1, 1, 0)]));
        let cubic = solve_s1_cubic(4).unwrap();
        assert_eq!(cubic, sys.s1);
        assert_eq!(solve_s1_cubic(1).unwrap().coeff(1), BiPoly::one());
    }

    #[test]
    fn s1_at_ones_gives_large_schroeder_numbers() {
        let s1 = solve_s1_cubic(8).unwrap();
        let got: Vec<BigInt> = (1..=8).map(|n| s1.coeff(n).eval_at_ones()).collect();
        let want: Vec<BigInt> = [1, 2, 6, 22, 90, 394, 1806, 8558].map(BigInt::from).to_vec();
        assert_eq!(got, want);
    }

    #[test]
    fn s2_initial_conditions() {
        let sys = solve_s2_system(5).unwrap();
        assert_eq!(sys.s2.coeff(1), BiPoly::one());
        assert_eq!(sys.t2.coeff(1), BiPoly::one());
        assert_eq!(sys.t2.coeff(2), p(&[(2, 0, 0)]));
        assert!(matches!(solve_s2_system(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn rational_relations_hold() {
        let r = check_rational_relations(&solve_s1_system(7).unwrap()).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn perturbed_solution_leaves_a_residual() {
        let mut sys = solve_s1_system(5).unwrap();
        sys.f1 = sys.f1.add(&TruncSeries::monomial(BiPoly::one(), 3, 5)).unwrap();
        assert_eq!(check_rational_relations(&sys).unwrap().f1_residual_at, Some(3));
    }

    #[test]
    fn iterates_stabilize_prefix_by_prefix() {
        let order = 7;
        for (rhs, vars) in [(s1_system_rhs(), 3), (s1_cubic_rhs(), 1), (s2_system_rhs(), 2)] {
            let hist = iterate(order, vars, rhs, order + 1).unwrap();
            let fixed = hist.last().unwrap();
            for (m, it) in hist.iter().enumerate() {
                for (a, b) in it.iter().zip(fixed) {
                    for d in 0..=m.min(order) {
                        assert_eq!(a.coeff(d), b.coeff(d), "iterate {m}, z^{d}");
                    }
                }
            }
        }
    }

    #[test]
    fn series_equal_pinpoints_first_difference() {
        let sys = solve_s1_system(4).unwrap();
        assert_eq!(series_equal(&sys.s1, &sys.s1).unwrap(), None);
        let d = series_equal(&sys.s1, &sys.f1).unwrap().unwrap();
        assert_eq!((d.z_degree, d.x_degree, d.y_degree), (2, 1, 0));
        assert_eq!((d.left.as_str(), d.right.as_str()), ("0", "1"));
    }

    #[test]
    fn brute_force_matches_solutions() {
        let order = 7;
        let lim = EnumLimits::default();
        let sys1 = solve_s1_system(order).unwrap();
        let sys2 = solve_s2_system(order).unwrap();
        let sep = separable_class();
        let other = second_class();
        use Statistic::*;
        assert_eq!(class_series(&sep, Des, Dd, order, &lim).unwrap(), sys1.s1);
        assert_eq!(class_series(&sep, Des, Dd0, order, &lim).unwrap(), sys1.f1);
        assert_eq!(class_series(&sep, Des, DdInf, order, &lim).unwrap(), sys1.r1);
        assert_eq!(class_series(&other, Des, Dd, order, &lim).unwrap(), sys2.s2);
        assert_eq!(class_series(&other, DesP, DdP, order, &lim).unwrap(), sys2.t2);
    }

    #[test]
    fn cross_check_small_order() {
        let (r, _, s2) = cross_check(8).unwrap();
        assert!(r.passed(), "{r:?}");
        // y = 0 keeps only members without double descents.
        let dd_free = s2.s2.specialize_y(0);
        assert_eq!(Permutation::parse("213").unwrap().stats().dd, 1);
        assert_eq!(dd_free[3], crate::poly::IntPoly::from_coeffs(&[1, 2]));
    }

    #[test]
    fn dump_format() {
        let s = TruncSeries::from_coeffs(vec![BiPoly::zero(), p(&[(1, 0, 0)]), p(&[(1, 0, 0), (1, 1, 1)])], 2);
        assert_eq!(s.dump(), "1 0 0 1\n2 0 0 1\n2 1 1 1\n");
    }
}
