//! Exact rational functions in two variables q and T (T stands for q^{−s}).
//!
//! Canonical form: numerator and denominator coprime in ℤ[q, T], jointly
//! content-free over ℤ, and the denominator's leading coefficient (highest
//! T-degree, then highest q-degree) positive. Two equal functions therefore
//! have identical representations.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{BiPoly, UPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: BiPoly,
    den: BiPoly,
}

impl RatFun {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: BiPoly, den: BiPoly) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"));
        if den.lc().lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun { num: BiPoly::zero(), den: BiPoly::one() }
    }

    pub fn one() -> Self {
        RatFun { num: BiPoly::one(), den: BiPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        RatFun::from_poly(BiPoly::monomial(c.into(), 0, 0))
    }

    pub fn from_poly(p: BiPoly) -> Self {
        RatFun { num: p, den: BiPoly::one() }
    }

    /// c·q^a·T^b; `a` may be negative.
    pub fn monomial(c: i64, a: i64, b: usize) -> Self {
        if a >= 0 {
            RatFun::reduced(BiPoly::monomial(c.into(), a as usize, b), BiPoly::one())
        } else {
            RatFun::reduced(BiPoly::monomial(c.into(), 0, b), BiPoly::monomial(BigInt::one(), (-a) as usize, 0))
        }
    }

    pub fn q() -> Self {
        RatFun::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        RatFun::monomial(1, 0, 1)
    }

    pub fn numer(&self) -> &BiPoly {
        &self.num
    }

    pub fn denom(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// True if T does not occur.
    pub fn is_t_free(&self) -> bool {
        self.num.t_degree() <= 0 && self.den.t_degree() <= 0
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.den == other.den {
            return RatFun::reduced(self.num.add(&other.num), self.den.clone());
        }
        RatFun::reduced(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        // cross-cancel first; inputs are reduced so the product then is too
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFun::reduced(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<RatFun> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = RatFun::one();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Evaluates at (q₀, T₀); `None` where the denominator vanishes.
    pub fn eval(&self, q: &BigRational, t: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(q, t);
        (!d.is_zero()).then(|| self.num.eval(q, t) / d)
    }

    /// Sets T = t₀ for an integer t₀, leaving a function of q.
    pub fn eval_t(&self, t: i64) -> Result<RatFun> {
        let t = BigInt::from(t);
        RatFun::new(BiPoly::constant(self.num.eval_t(&t)), BiPoly::constant(self.den.eval_t(&t)))
    }

    /// The substitution q ↦ q^α, T ↦ q^β·T^γ (α ≥ 1, β any sign, γ ≥ 0).
    pub fn substitute(&self, alpha: usize, beta: i64, gamma: usize) -> Result<RatFun> {
        let shift = -self
            .num
            .min_substituted_q_exponent(alpha, beta)
            .min(self.den.min_substituted_q_exponent(alpha, beta))
            .min(0);
        RatFun::new(self.num.substitute(alpha, beta, gamma, shift), self.den.substitute(alpha, beta, gamma, shift))
    }

    /// Coefficients of T^0 … T^order of the expansion around T = 0; each is
    /// a function of q alone.
    pub fn series_in_t(&self, order: usize) -> Result<Vec<RatFun>> {
        let den = self.den.t_coeffs();
        let d0 = den.first().filter(|c| !c.is_zero()).ok_or(Error::NonUnitDenominator)?;
        let d0 = RatFun::from_upoly(d0.clone());
        let num = self.num.t_coeffs();
        let coeff_of = |cs: &[UPoly], k: usize| cs.get(k).cloned().map(RatFun::from_upoly).unwrap_or_else(RatFun::zero);
        let mut out: Vec<RatFun> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut acc = coeff_of(num, m);
            for k in 1..=m.min(den.len().saturating_sub(1)) {
                acc = acc.sub(&coeff_of(den, k).mul(&out[m - k]));
            }
            out.push(acc.div(&d0)?);
        }
        Ok(out)
    }

    fn from_upoly(p: UPoly) -> RatFun {
        RatFun::from_poly(BiPoly::constant(p))
    }

    /// Reads a T-free function as c·q^k, if it is one.
    pub fn as_q_monomial(&self) -> Option<(BigRational, i64)> {
        if !self.is_t_free() {
            return None;
        }
        let single = |p: &BiPoly| -> Option<(BigInt, i64)> {
            let coeffs = p.t_coeffs().first()?.coeffs();
            let mut it = coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
            let (k, c) = it.next()?;
            it.next().is_none().then(|| (c.clone(), k as i64))
        };
        let (cn, kn) = single(&self.num)?;
        let (cd, kd) = single(&self.den)?;
        Some((BigRational::new(cn, cd), kn - kd))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == BiPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q_inv() -> RatFun {
        RatFun::monomial(1, -1, 0)
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn geometric_series() {
        // (1 − q⁻¹)/(1 − q⁻¹T)
        let one = RatFun::one();
        let f = one.sub(&q_inv()).div(&one.sub(&q_inv().mul(&RatFun::t()))).unwrap();
        let series = f.series_in_t(2).unwrap();
        let c0 = one.sub(&q_inv());
        assert_eq!(series[0], c0);
        assert_eq!(series[1], c0.mul(&q_inv()));
        assert_eq!(series[2], c0.mul(&q_inv()).mul(&q_inv()));
    }

    #[test]
    fn self_quotient_and_difference_of_squares() {
        let f = RatFun::from_poly(BiPoly::from_terms(&[(2, 0, 3), (0, 1, -1)]))
            .div(&RatFun::from_poly(BiPoly::from_terms(&[(1, 1, 1), (0, 0, 5)])))
            .unwrap();
        assert!(f.div(&f).unwrap().is_one());
        let one = RatFun::one();
        let t = RatFun::t();
        let t2 = t.mul(&t);
        assert_eq!(one.sub(&t).mul(&one.add(&t)), one.sub(&t2));
    }

    #[test]
    fn errors() {
        assert_eq!(RatFun::one().div(&RatFun::zero()).unwrap_err(), Error::DivisionByZero);
        let f = RatFun::one().div(&RatFun::t()).unwrap();
        assert_eq!(f.series_in_t(2).unwrap_err(), Error::NonUnitDenominator);
    }

    #[test]
    fn canonical_sign_and_content() {
        let a = RatFun::new(BiPoly::from_terms(&[(1, 0, -2)]), BiPoly::from_terms(&[(0, 1, -4)])).unwrap();
        let b = RatFun::new(BiPoly::from_terms(&[(1, 0, 1)]), BiPoly::from_terms(&[(0, 1, 2)])).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_string(), "(q) / (2*T)");
    }

    #[test]
    fn substitution() {
        // (q − 1)/(q − T) with q ↦ q², T ↦ q⁻²T²  →  (q² − 1)/(q² − q⁻²T²)
        let f = RatFun::new(BiPoly::from_terms(&[(1, 0, 1), (0, 0, -1)]), BiPoly::from_terms(&[(1, 0, 1), (0, 1, -1)]))
            .unwrap();
        let g = f.substitute(2, -2, 2).unwrap();
        let q2 = RatFun::monomial(1, 2, 0);
        let expected = q2.sub(&RatFun::one()).div(&q2.sub(&RatFun::monomial(1, -2, 2))).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn q_monomials() {
        let m = RatFun::monomial(3, -4, 0);
        assert_eq!(m.as_q_monomial(), Some((r(3, 1), -4)));
        assert_eq!(RatFun::q().add(&RatFun::one()).as_q_monomial(), None);
        assert_eq!(RatFun::t().as_q_monomial(), None);
    }

    fn small_poly() -> impl Strategy<Value = BiPoly> {
        proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3), 1..4).prop_map(|terms| BiPoly::from_terms(&terms))
    }

    fn small_ratfun() -> impl Strategy<Value = RatFun> {
        (small_poly(), small_poly())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFun::new(n, d).unwrap())
    }

    const POINTS: [(i64, i64, i64, i64); 6] =
        [(2, 1, 1, 3), (3, 2, -1, 2), (5, 1, 2, 7), (-7, 3, 1, 1), (11, 4, -3, 5), (13, 1, 5, 2)];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn arithmetic_agrees_with_evaluation(f in small_ratfun(), g in small_ratfun()) {
            let sum = f.add(&g);
            let prod = f.mul(&g);
            let quot = f.div(&g).ok();
            for (qn, qd, tn, td) in POINTS {
                let (q0, t0) = (r(qn, qd), r(tn, td));
                let (Some(fv), Some(gv)) = (f.eval(&q0, &t0), g.eval(&q0, &t0)) else { continue };
                if let Some(v) = sum.eval(&q0, &t0) { prop_assert_eq!(v, &fv + &gv); }
                if let Some(v) = prod.eval(&q0, &t0) { prop_assert_eq!(v, &fv * &gv); }
                if let (Some(qf), false) = (&quot, gv.is_zero()) {
                    if let Some(v) = qf.eval(&q0, &t0) { prop_assert_eq!(v, &fv / &gv); }
                }
            }
        }

        #[test]
        fn canonical_form_is_unique(f in small_ratfun(), g in small_ratfun()) {
            // f·g/g == f exactly, as data
            if !g.is_zero() {
                prop_assert_eq!(f.mul(&g).div(&g).unwrap(), f.clone());
            }
            prop_assert_eq!(f.add(&g).sub(&g), f);
        }
    }
}
