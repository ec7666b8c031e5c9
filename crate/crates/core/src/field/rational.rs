use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde_json::{json, Value};

use super::{Field, FieldDescriptor, QuadraticField};
use crate::error::{Error, Result};

/// The field ℚ.
#[derive(Clone, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn rank(&self, rows: Vec<Vec<BigRational>>) -> usize {
        let int_rows = rows
            .into_iter()
            .map(|row| {
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.into_iter().map(|x| (x * &lcm).to_integer()).collect()
            })
            .collect();
        bareiss_rank(int_rows)
    }
}

/// Rank of an integer matrix by fraction-free elimination. Every
/// intermediate entry is a minor of the input, so the divisions are exact.
pub(crate) fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..ncols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// ℚ(√τ) with σ(a + b√τ) = a − b√τ.
#[derive(Clone, Debug)]
pub struct RationalQuadratic {
    tau: i64,
    tau_q: BigRational,
    base: Rationals,
}

/// a + b·√τ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadElem {
    pub fn new(a: i64, b: i64) -> Self {
        QuadElem { a: BigRational::from_integer(a.into()), b: BigRational::from_integer(b.into()) }
    }
}

impl RationalQuadratic {
    pub fn new(tau: i64) -> Result<Self> {
        if tau >= 0 && tau.sqrt() * tau.sqrt() == tau {
            return Err(Error::RadicandIsSquare(tau.to_string()));
        }
        Ok(RationalQuadratic { tau, tau_q: BigRational::from_integer(tau.into()), base: Rationals })
    }

    pub fn tau(&self) -> i64 {
        self.tau
    }
}

impl Field for RationalQuadratic {
    type Elem = QuadElem;

    fn zero(&self) -> QuadElem {
        QuadElem::new(0, 0)
    }
    fn one(&self) -> QuadElem {
        QuadElem::new(1, 0)
    }
    fn from_i64(&self, v: i64) -> QuadElem {
        QuadElem::new(v, 0)
    }
    fn add(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem { a: &x.a + &y.a, b: &x.b + &y.b }
    }
    fn sub(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem { a: &x.a - &y.a, b: &x.b - &y.b }
    }
    fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        if x.b.is_zero() && y.b.is_zero() {
            return QuadElem { a: &x.a * &y.a, b: BigRational::zero() };
        }
        QuadElem { a: &x.a * &y.a + &self.tau_q * &x.b * &y.b, b: &x.a * &y.b + &x.b * &y.a }
    }
    fn neg(&self, x: &QuadElem) -> QuadElem {
        QuadElem { a: -&x.a, b: -&x.b }
    }
    fn inv(&self, x: &QuadElem) -> Option<QuadElem> {
        let n = self.norm(x);
        if n.is_zero() {
            return None;
        }
        Some(QuadElem { a: &x.a / &n, b: -&x.b / &n })
    }
    fn is_zero(&self, x: &QuadElem) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }
}

impl QuadraticField for RationalQuadratic {
    type Base = Rationals;

    fn base(&self) -> &Rationals {
        &self.base
    }
    fn sigma(&self, x: &QuadElem) -> QuadElem {
        QuadElem { a: x.a.clone(), b: -&x.b }
    }
    fn norm(&self, x: &QuadElem) -> BigRational {
        &x.a * &x.a - &self.tau_q * &x.b * &x.b
    }
    fn embed(&self, a: &BigRational) -> QuadElem {
        QuadElem { a: a.clone(), b: BigRational::zero() }
    }
    fn coords(&self, x: &QuadElem) -> [BigRational; 2] {
        [x.a.clone(), x.b.clone()]
    }
    fn from_coords(&self, a: &BigRational, b: &BigRational) -> QuadElem {
        QuadElem { a: a.clone(), b: b.clone() }
    }
    fn theta(&self) -> QuadElem {
        QuadElem::new(0, 1)
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational { tau: self.tau }
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u32) -> QuadElem {
        let bound = i64::from(bound.max(1));
        QuadElem::new(rng.gen_range(1..=bound), rng.gen_range(1..=bound))
    }
    fn sample_base_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let v: i64 = rng.gen_range(1..=50);
        let v = if rng.gen_bool(0.5) { -v } else { v };
        BigRational::new(v.into(), rng.gen_range(1i64..=7).into())
    }
    fn elem_to_json(&self, x: &QuadElem) -> Value {
        json!({ "a": rational_to_json(&x.a), "b": rational_to_json(&x.b) })
    }
    fn elem_from_json(&self, v: &Value) -> Result<QuadElem> {
        match v {
            Value::Object(map) => {
                let get = |key: &str| map.get(key).map(rational_from_json).unwrap_or(Ok(BigRational::zero()));
                Ok(QuadElem { a: get("a")?, b: get("b")? })
            }
            other => Ok(QuadElem { a: rational_from_json(other)?, b: BigRational::zero() }),
        }
    }
}

/// Integers become JSON numbers, everything else a "p/q" string.
pub fn rational_to_json(x: &BigRational) -> Value {
    if x.is_integer() {
        if let Some(v) = x.numer().to_i64() {
            return json!(v);
        }
    }
    Value::String(x.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| Error::Invalid(format!("non-integer number {n}; use a \"p/q\" string"))),
        Value::String(s) => {
            let (num, den) = s.split_once('/').unwrap_or((s.as_str(), "1"));
            let num: BigInt = num.trim().parse().map_err(|_| Error::Invalid(format!("bad rational {s}")))?;
            let den: BigInt = den.trim().parse().map_err(|_| Error::Invalid(format!("bad rational {s}")))?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(num, den))
        }
        other => Err(Error::Invalid(format!("expected rational, got {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sigma_and_norm() {
        let k = RationalQuadratic::new(2).unwrap();
        assert_eq!(k.sigma(&k.one()), k.one());
        assert_eq!(k.sigma(&QuadElem::new(3, 2)), QuadElem::new(3, -2));
        // a² − τb²
        assert_eq!(k.norm(&QuadElem::new(3, 2)), q(1, 1));
        assert_eq!(k.norm(&QuadElem::new(5, 7)), q(25 - 98, 1));
    }

    #[test]
    fn square_radicands_rejected() {
        for tau in [0, 1, 4, 9, 144] {
            assert!(matches!(RationalQuadratic::new(tau), Err(Error::RadicandIsSquare(_))));
        }
        for tau in [-1, 2, 3, 5, -4] {
            assert!(RationalQuadratic::new(tau).is_ok());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let k = RationalQuadratic::new(3).unwrap();
        let x = QuadElem { a: q(2, 3), b: q(-5, 7) };
        let y = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &y), k.one());
        assert!(k.inv(&k.zero()).is_none());
    }

    #[test]
    fn bareiss_matches_small_cases() {
        let m = |rows: &[&[i64]]| rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        assert_eq!(bareiss_rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(m(&[&[0, 0, 3], &[0, 2, 1], &[5, 0, 0]])), 3);
        assert_eq!(bareiss_rank(m(&[&[0, 1, 1], &[0, 2, 2], &[0, 0, 0]])), 1);
        assert_eq!(bareiss_rank(m(&[&[1, 1, 1], &[1, 2, 3], &[1, 3, 5]])), 2);
    }

    #[test]
    fn rational_rank_agrees_with_gauss() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let rows: Vec<Vec<BigRational>> =
                (0..5).map(|_| (0..6).map(|_| q(rng.gen_range(-2..=2), rng.gen_range(1..=3))).collect()).collect();
            assert_eq!(Rationals.rank(rows.clone()), crate::linalg::gauss_rank(&Rationals, rows));
        }
    }

    #[test]
    fn json_roundtrip() {
        let k = RationalQuadratic::new(2).unwrap();
        let x = QuadElem { a: q(1, 2), b: q(-3, 1) };
        let v = k.elem_to_json(&x);
        assert_eq!(v, json!({"a": "1/2", "b": -3}));
        assert_eq!(k.elem_from_json(&v).unwrap(), x);
    }
}
