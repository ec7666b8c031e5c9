//! Dense polynomials in ℤ[q] and ℤ[q][T] with exact division and gcd by
//! primitive pseudo-remainder sequences.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial in q with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<BigInt>);

impl UPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: BigInt) -> Self {
        UPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UPoly::constant(BigInt::one())
    }

    /// c·q^k
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lc(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let zero = BigInt::zero();
        UPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> UPoly {
        UPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Multiplication by q^k.
    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        UPoly(v)
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        UPoly(self.0.iter().map(|x| x / &c).collect())
    }

    /// Exact quotient, or `None` if `d` does not divide `self` in ℤ[q].
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.0.clone();
        let dl = d.0.len();
        let dlc = d.lc();
        let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(&dlc);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in d.0.iter().enumerate() {
                rem[k + i] -= &qk * c;
            }
            quot[k] = qk;
        }
        rem.iter().all(Zero::is_zero).then(|| UPoly::new(quot))
    }

    /// lc(d)^(deg a − deg d + 1)·a mod d.
    fn pseudo_rem(&self, d: &UPoly) -> UPoly {
        let mut rem = self.clone();
        let dlc = d.lc();
        while !rem.is_zero() && rem.degree() >= d.degree() {
            let shift = (rem.degree() - d.degree()) as usize;
            let lc = rem.lc();
            rem = rem.scale(&dlc).sub(&d.scale(&lc).shift(shift));
        }
        rem
    }

    /// Greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.primitive_with_content();
        }
        if other.is_zero() {
            return self.primitive_with_content();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.degree() == 0 {
                return UPoly::constant(c);
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.primitive().scale(&c);
            }
            a = b;
            b = r.primitive();
        }
    }

    fn primitive_with_content(&self) -> UPoly {
        if self.lc().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// q ↦ q^k
    pub fn compose_power(&self, k: usize) -> UPoly {
        let mut out = vec![BigInt::zero(); (self.0.len().max(1) - 1) * k + 1];
        for (i, c) in self.0.iter().enumerate() {
            out[i * k] = c.clone();
        }
        UPoly::new(out)
    }
}

/// A polynomial in T with coefficients in ℤ[q], lowest T-degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly(Vec<UPoly>);

impl BiPoly {
    pub fn new(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(UPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly(coeffs)
    }

    pub fn zero() -> Self {
        BiPoly(Vec::new())
    }

    pub fn one() -> Self {
        BiPoly(vec![UPoly::one()])
    }

    pub fn constant(c: UPoly) -> Self {
        BiPoly::new(vec![c])
    }

    /// c·q^a·T^b
    pub fn monomial(c: BigInt, a: usize, b: usize) -> Self {
        let mut v = vec![UPoly::zero(); b + 1];
        v[b] = UPoly::monomial(c, a);
        BiPoly::new(v)
    }

    /// Builds from (q-exponent, T-exponent, coefficient) triples.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        terms.iter().fold(BiPoly::zero(), |acc, &(a, b, c)| acc.add(&BiPoly::monomial(c.into(), a, b)))
    }

    /// Coefficients of T^0, T^1, …
    pub fn t_coeffs(&self) -> &[UPoly] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn t_degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    /// Lowest q-degree across all terms (0 for the zero polynomial).
    pub fn min_q_degree(&self) -> usize {
        self.0.iter().flat_map(|c| c.coeffs().iter().position(|x| !x.is_zero())).min().unwrap_or(0)
    }

    pub fn lc(&self) -> UPoly {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.0.len().max(other.0.len());
        let zero = UPoly::zero();
        BiPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&zero).add(other.0.get(i).unwrap_or(&zero))).collect())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly(self.0.iter().map(UPoly::neg).collect())
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![UPoly::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(out)
    }

    pub fn scale(&self, c: &UPoly) -> BiPoly {
        BiPoly::new(self.0.iter().map(|x| x.mul(c)).collect())
    }

    /// Multiplication by T^k.
    pub fn shift_t(&self, k: usize) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut v = vec![UPoly::zero(); k];
        v.extend(self.0.iter().cloned());
        BiPoly(v)
    }

    /// Multiplication by q^k.
    pub fn shift_q(&self, k: usize) -> BiPoly {
        BiPoly(self.0.iter().map(|c| c.shift(k)).collect())
    }

    /// gcd in ℤ[q] of the T-coefficients, with positive leading coefficient.
    pub fn content(&self) -> UPoly {
        self.0.iter().fold(UPoly::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut c = self.content();
        if self.lc().lc().is_negative() {
            c = c.neg();
        }
        self.div_by_upoly(&c).expect("content divides every coefficient")
    }

    fn div_by_upoly(&self, c: &UPoly) -> Option<BiPoly> {
        self.0.iter().map(|x| x.div_exact(c)).collect::<Option<Vec<_>>>().map(BiPoly::new)
    }

    /// Exact quotient in ℤ[q][T], or `None`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        if self.t_degree() < d.t_degree() {
            return None;
        }
        let dl = d.0.len();
        let dlc = d.lc();
        let mut rem = self.0.clone();
        let mut quot = vec![UPoly::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            let qk = top.div_exact(&dlc)?;
            for (i, c) in d.0.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&qk.mul(c));
            }
            quot[k] = qk;
        }
        rem.iter().all(UPoly::is_zero).then(|| BiPoly::new(quot))
    }

    fn pseudo_rem(&self, d: &BiPoly) -> BiPoly {
        let mut rem = self.clone();
        let dlc = d.lc();
        while !rem.is_zero() && rem.t_degree() >= d.t_degree() {
            let shift = (rem.t_degree() - d.t_degree()) as usize;
            let lc = rem.lc();
            rem = rem.scale(&dlc).sub(&d.scale(&lc).shift_t(shift));
        }
        rem
    }

    /// Greatest common divisor, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.t_degree() < b.t_degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.t_degree() == 0 {
                // b is a nonzero element of ℤ[q] with content one in T
                return BiPoly::constant(c);
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.primitive().scale(&c);
            }
            a = b;
            b = r.primitive();
        }
    }

    fn normalized_sign(&self) -> BiPoly {
        if self.lc().lc().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn eval(&self, q: &BigRational, t: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c.eval(q))
    }

    /// Sets T to a value, leaving a polynomial in q. Only integral T values
    /// keep the result in ℤ[q].
    pub fn eval_t(&self, t: &BigInt) -> UPoly {
        self.0.iter().rev().fold(UPoly::zero(), |acc, c| acc.scale(t).add(c))
    }

    /// Applies q^a·T^b ↦ q^{αa + βb + shift}·T^{γb}. The caller picks
    /// `shift` so every resulting exponent is nonnegative.
    pub fn substitute(&self, alpha: usize, beta: i64, gamma: usize, shift: i64) -> BiPoly {
        let mut out = BiPoly::zero();
        for (b, coeff) in self.0.iter().enumerate() {
            for (a, c) in coeff.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let qe = (alpha * a) as i64 + beta * b as i64 + shift;
                assert!(qe >= 0, "negative q exponent after substitution");
                out = out.add(&BiPoly::monomial(c.clone(), qe as usize, gamma * b));
            }
        }
        out
    }

    /// Smallest value of αa + βb over the support.
    pub fn min_substituted_q_exponent(&self, alpha: usize, beta: i64) -> i64 {
        let mut min = i64::MAX;
        for (b, coeff) in self.0.iter().enumerate() {
            for (a, c) in coeff.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    min = min.min((alpha * a) as i64 + beta * b as i64);
                }
            }
        }
        if min == i64::MAX {
            0
        } else {
            min
        }
    }
}

impl fmt::Display for BiPoly {
    /// Terms in decreasing T-degree, then decreasing q-degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, coeff) in self.0.iter().enumerate().rev() {
            for (a, c) in coeff.coeffs().iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let mag = c.abs();
                if first {
                    if c.is_negative() {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
                }
                first = false;
                let mut vars = Vec::new();
                match a {
                    0 => {}
                    1 => vars.push("q".to_string()),
                    _ => vars.push(format!("q^{a}")),
                }
                match b {
                    0 => {}
                    1 => vars.push("T".to_string()),
                    _ => vars.push(format!("T^{b}")),
                }
                if vars.is_empty() {
                    write!(f, "{mag}")?;
                } else if mag.is_one() {
                    write!(f, "{}", vars.join("*"))?;
                } else {
                    write!(f, "{mag}*{}", vars.join("*"))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| x.into()).collect())
    }

    #[test]
    fn upoly_gcd() {
        // (q−1)(q+2) and (q−1)(q−3)
        let a = up(&[-1, 1]).mul(&up(&[2, 1]));
        let b = up(&[-1, 1]).mul(&up(&[-3, 1]));
        assert_eq!(a.gcd(&b), up(&[-1, 1]));
        // integer content
        assert_eq!(up(&[6, 12]).gcd(&up(&[4, 8])), up(&[2, 4]));
        assert_eq!(up(&[3]).gcd(&up(&[-1, 1])), up(&[1]));
        assert_eq!(up(&[1, 1]).gcd(&up(&[-1, 1])), up(&[1]));
        assert_eq!(UPoly::zero().gcd(&up(&[-2, -4])), up(&[2, 4]));
    }

    #[test]
    fn upoly_div_exact() {
        let a = up(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&up(&[1, 1])), Some(up(&[-1, 1])));
        assert_eq!(a.div_exact(&up(&[2, 1])), None);
        assert_eq!(up(&[2, 4]).div_exact(&up(&[2])), Some(up(&[1, 2])));
        assert_eq!(up(&[3, 4]).div_exact(&up(&[2])), None);
    }

    #[test]
    fn bipoly_gcd_common_factor() {
        // (q − T)(q + T) and (q − T)·T
        let f = BiPoly::from_terms(&[(1, 0, 1), (0, 1, -1)]);
        let g = BiPoly::from_terms(&[(1, 0, 1), (0, 1, 1)]);
        let t = BiPoly::from_terms(&[(0, 1, 1)]);
        let gcd = f.mul(&g).gcd(&f.mul(&t));
        // normalized: positive leading coefficient in T
        assert_eq!(gcd, f.neg());
        assert_eq!(g.gcd(&t), BiPoly::one());
    }

    #[test]
    fn bipoly_gcd_with_q_content() {
        // q(q−1)·(1 − T) and (q−1)·T·(1 − T)
        let a = BiPoly::from_terms(&[(2, 0, 1), (1, 0, -1)]).mul(&BiPoly::from_terms(&[(0, 0, 1), (0, 1, -1)]));
        let b = BiPoly::from_terms(&[(1, 1, 1), (0, 1, -1)]).mul(&BiPoly::from_terms(&[(0, 0, 1), (0, 1, -1)]));
        let g = a.gcd(&b);
        let expected = BiPoly::from_terms(&[(1, 0, 1), (0, 0, -1)]).mul(&BiPoly::from_terms(&[(0, 0, -1), (0, 1, 1)]));
        assert_eq!(g, expected);
        assert!(a.div_exact(&g).is_some() && b.div_exact(&g).is_some());
    }

    #[test]
    fn display() {
        let f = BiPoly::from_terms(&[(2, 0, 1), (0, 1, -1), (0, 0, 3), (1, 2, -2)]);
        assert_eq!(f.to_string(), "-2*q*T^2 - T + q^2 + 3");
        assert_eq!(BiPoly::zero().to_string(), "0");
    }
}
