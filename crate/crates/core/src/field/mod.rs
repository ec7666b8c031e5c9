//! Exact arithmetic for the base field F, the quadratic extension E/F with
//! its Galois involution σ, and bivariate rational functions in (q, T).
//!
//! Fields are context objects in the style of ring descriptors: elements are
//! plain values and every operation goes through `&self`. This lets the
//! finite model share its log/exp tables between all elements.

mod finite;
pub mod poly;
pub mod ratfun;
mod rational;

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use finite::{FiniteBase, FiniteQuadratic, GfTables};
pub use ratfun::RatFun;
pub use rational::{QuadElem, RationalQuadratic, Rationals};

/// A field given by a context object. Constructors take `&self` because
/// elements only make sense relative to their context.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Send + Sync + Debug {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Rank of a dense row-major matrix. Fields with cheaper exact
    /// strategies (fraction-free elimination over ℤ) override this.
    fn rank(&self, rows: Vec<Vec<Self::Elem>>) -> usize {
        crate::linalg::gauss_rank(self, rows)
    }
}

/// A quadratic extension E of a base field F with the nontrivial
/// automorphism σ. E is an F-vector space with basis (1, θ).
#[allow(clippy::wrong_self_convention)]
pub trait QuadraticField: Field {
    type Base: Field;

    fn base(&self) -> &Self::Base;
    fn sigma(&self, x: &Self::Elem) -> Self::Elem;
    fn embed(&self, a: &<Self::Base as Field>::Elem) -> Self::Elem;
    /// Coordinates (a, b) with x = a + b·θ.
    fn coords(&self, x: &Self::Elem) -> [<Self::Base as Field>::Elem; 2];
    fn from_coords(&self, a: &<Self::Base as Field>::Elem, b: &<Self::Base as Field>::Elem) -> Self::Elem;
    /// The F-basis element θ (√τ in the rational model).
    fn theta(&self) -> Self::Elem;
    fn descriptor(&self) -> FieldDescriptor;
    /// Draws an element for genericity sampling. The rational model uses
    /// a + b·√τ with a, b ∈ {1, …, bound}; the finite model is uniform.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u32) -> Self::Elem;
    /// Draws a nonzero element of F for scaling tests.
    fn sample_base_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> <Self::Base as Field>::Elem;
    fn elem_to_json(&self, x: &Self::Elem) -> serde_json::Value;
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Self::Elem>;

    /// x·σ(x), returned as a base-field element.
    fn norm(&self, x: &Self::Elem) -> <Self::Base as Field>::Elem {
        let n = self.mul(x, &self.sigma(x));
        let [a, b] = self.coords(&n);
        debug_assert!(self.base().is_zero(&b));
        a
    }

    /// Finite enumeration of all elements, if the field is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Order q of the base field, if finite.
    fn base_order(&self) -> Option<u64> {
        None
    }
}

/// Serialized form of a quadratic extension model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Rational { tau: i64 },
    Finite { p: u64, e: u32 },
}

impl Default for FieldDescriptor {
    fn default() -> Self {
        FieldDescriptor::Rational { tau: 2 }
    }
}

/// A concrete E/F instance, either ℚ(√τ)/ℚ or F_{q²}/F_q.
#[derive(Clone, Debug)]
pub enum ExtensionModel {
    Rational(RationalQuadratic),
    Finite(FiniteQuadratic),
}

impl ExtensionModel {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            ExtensionModel::Rational(k) => k.descriptor(),
            ExtensionModel::Finite(k) => k.descriptor(),
        }
    }
}

/// Builds the model named by `spec`.
pub fn make_extension(spec: &FieldDescriptor) -> Result<ExtensionModel> {
    match *spec {
        FieldDescriptor::Rational { tau } => Ok(ExtensionModel::Rational(RationalQuadratic::new(tau)?)),
        FieldDescriptor::Finite { p, e } => Ok(ExtensionModel::Finite(FiniteQuadratic::new(p, e)?)),
    }
}

/// Runs `$body` with `$k` bound to the concrete field of `$model`.
#[macro_export]
macro_rules! with_model {
    ($model:expr, |$k:ident| $body:expr) => {
        match $model {
            $crate::field::ExtensionModel::Rational($k) => $body,
            $crate::field::ExtensionModel::Finite($k) => $body,
        }
    };
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power q = p^e; `None` if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut e = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_json_shape() {
        let r: FieldDescriptor = serde_json::from_str(r#"{"kind":"rational","tau":2}"#).unwrap();
        assert_eq!(r, FieldDescriptor::Rational { tau: 2 });
        let f: FieldDescriptor = serde_json::from_str(r#"{"kind":"finite","p":3,"e":1}"#).unwrap();
        assert_eq!(f, FieldDescriptor::Finite { p: 3, e: 1 });
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"kind":"finite","p":3,"e":1}"#);
    }

    #[test]
    fn make_extension_errors() {
        assert_eq!(
            make_extension(&FieldDescriptor::Rational { tau: 4 }).unwrap_err(),
            Error::RadicandIsSquare("4".into())
        );
        assert_eq!(make_extension(&FieldDescriptor::Finite { p: 4, e: 1 }).unwrap_err(), Error::NotPrime(4));
        assert!(make_extension(&FieldDescriptor::Rational { tau: 2 }).is_ok());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(101), Some((101, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
