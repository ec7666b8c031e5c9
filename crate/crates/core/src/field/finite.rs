use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use super::{is_prime, Field, FieldDescriptor, QuadraticField};
use crate::error::{Error, Result};

/// Largest supported |E| = q².
const MAX_FIELD_SIZE: u64 = 1 << 22;

/// Log/exp tables for F_{p^m}, m = 2e. An element is encoded by the integer
/// Σ c_i p^i of its coordinates in the power basis of F_p[x]/(f), with f the
/// first primitive polynomial in lexicographic order of coefficients.
#[derive(Debug)]
pub struct GfTables {
    p: u32,
    e: u32,
    m: u32,
    q: u64,
    size: u32,
    /// Monic modulus, low coefficients c_0 … c_{m−1}.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GfTables {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::Invalid("extension degree e must be ≥ 1".into()));
        }
        let m = 2 * e;
        let size =
            p.checked_pow(m).filter(|&s| s <= MAX_FIELD_SIZE).ok_or(Error::FieldTooLarge(p.saturating_pow(m)))?;
        let (p32, size32) = (p as u32, size as u32);
        let q = p.pow(e);

        for candidate in 1..size32 {
            let modulus = digits(candidate, p32, m);
            if modulus[0] == 0 {
                continue;
            }
            if let Some(exp) = powers_of_x(&modulus, p32, size32) {
                let mut log = vec![0u32; size as usize];
                for (k, &v) in exp.iter().enumerate() {
                    log[v as usize] = k as u32;
                }
                return Ok(GfTables { p: p32, e, m, q, size: size32, modulus, exp, log });
            }
        }
        unreachable!("a primitive polynomial of every degree exists")
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    /// Order of the base field F_q.
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Order of the extension F_{q²}.
    pub fn size(&self) -> u32 {
        self.size
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn order(&self) -> u64 {
        u64::from(self.size) - 1
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (u64::from(self.log[a as usize]) + u64::from(self.log[b as usize])) % self.order();
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let k = (self.order() - u64::from(self.log[a as usize])) % self.order();
        Some(self.exp[k as usize])
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let l = (u128::from(self.log[a as usize]) * u128::from(k)) % u128::from(self.order());
        self.exp[l as usize]
    }

    /// Frobenius x ↦ x^q, the generator of Gal(F_{q²}/F_q).
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.q)
    }

    /// Image of the integer k under ℤ → F_p ⊂ F_{q²}.
    pub fn from_i64(&self, k: i64) -> u32 {
        k.rem_euclid(i64::from(self.p)) as u32
    }

    /// The primitive element x of the power basis.
    pub fn generator(&self) -> u32 {
        self.exp[1]
    }
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn encode(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Successive powers x^0, x^1, … modulo `modulus` when x is primitive.
fn powers_of_x(modulus: &[u32], p: u32, size: u32) -> Option<Vec<u32>> {
    let m = modulus.len();
    let order = (size - 1) as usize;
    let mut cur = vec![0u32; m];
    cur[0] = 1;
    let mut out = Vec::with_capacity(order);
    for k in 0..order {
        let code = encode(&cur, p);
        if k > 0 && code == 1 {
            return None;
        }
        out.push(code);
        // multiply by x: x^m = −Σ c_i x^i
        let top = cur[m - 1];
        for i in (1..m).rev() {
            cur[i] = (cur[i - 1] + (p - (top * modulus[i]) % p)) % p;
        }
        cur[0] = (p - (top * modulus[0]) % p) % p;
    }
    (encode(&cur, p) == 1).then_some(out)
}

/// The subfield F_q ⊂ F_{q²}, sharing the extension's tables. Elements are
/// encoded exactly as in the extension.
#[derive(Clone, Debug)]
pub struct FiniteBase {
    tables: Arc<GfTables>,
}

impl Field for FiniteBase {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.tables.from_i64(v)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.tables.add(*a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.tables.add(*a, self.tables.neg(*b))
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.tables.mul(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.tables.neg(*a)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        self.tables.inv(*a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
}

/// F_{q²}/F_q with σ the q-Frobenius.
#[derive(Clone, Debug)]
pub struct FiniteQuadratic {
    tables: Arc<GfTables>,
    base: FiniteBase,
    theta: u32,
    /// 1/(θ − σ(θ)), used to read off coordinates.
    coord_scale: u32,
}

impl FiniteQuadratic {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        let tables = Arc::new(GfTables::new(p, e)?);
        let theta = tables.generator();
        let diff = tables.add(theta, tables.neg(tables.frobenius(theta)));
        let coord_scale = tables.inv(diff).expect("primitive element is not in the base field");
        Ok(FiniteQuadratic { base: FiniteBase { tables: tables.clone() }, tables, theta, coord_scale })
    }

    pub fn tables(&self) -> &GfTables {
        &self.tables
    }

    /// Elements of the base field F_q.
    pub fn base_elements(&self) -> Vec<u32> {
        (0..self.tables.size()).filter(|&x| self.tables.frobenius(x) == x).collect()
    }
}

impl Field for FiniteQuadratic {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.tables.from_i64(v)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.tables.add(*a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.tables.add(*a, self.tables.neg(*b))
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.tables.mul(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.tables.neg(*a)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        self.tables.inv(*a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
}

impl QuadraticField for FiniteQuadratic {
    type Base = FiniteBase;

    fn base(&self) -> &FiniteBase {
        &self.base
    }
    fn sigma(&self, x: &u32) -> u32 {
        self.tables.frobenius(*x)
    }
    fn embed(&self, a: &u32) -> u32 {
        *a
    }
    fn coords(&self, x: &u32) -> [u32; 2] {
        let t = &self.tables;
        let b = t.mul(t.add(*x, t.neg(t.frobenius(*x))), self.coord_scale);
        let a = t.add(*x, t.neg(t.mul(b, self.theta)));
        [a, b]
    }
    fn from_coords(&self, a: &u32, b: &u32) -> u32 {
        self.tables.add(*a, self.tables.mul(*b, self.theta))
    }
    fn theta(&self) -> u32 {
        self.theta
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Finite { p: u64::from(self.tables.p()), e: self.tables.e() }
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _bound: u32) -> u32 {
        rng.gen_range(0..self.tables.size())
    }
    fn sample_base_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        // g^{k(q+1)} runs over F_q^×
        let k = rng.gen_range(0..self.tables.q() - 1);
        self.tables.pow(self.tables.generator(), k * (self.tables.q() + 1))
    }
    fn elem_to_json(&self, x: &u32) -> Value {
        json!(x)
    }
    fn elem_from_json(&self, v: &Value) -> Result<u32> {
        v.as_u64()
            .filter(|&x| x < u64::from(self.tables.size()))
            .map(|x| x as u32)
            .ok_or_else(|| Error::Invalid(format!("expected element index below {}, got {v}", self.tables.size())))
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.tables.size()).collect())
    }
    fn base_order(&self) -> Option<u64> {
        Some(self.tables.q())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_frobenius_fixes_exactly_f3() {
        let k = FiniteQuadratic::new(3, 1).unwrap();
        assert_eq!(k.tables().size(), 9);
        let fixed: Vec<u32> = (0..9).filter(|&x| k.sigma(&x) == x).collect();
        // exactly the prime field {0, 1, 2}
        assert_eq!(fixed, vec![0, 1, 2]);
        for x in 0..9 {
            assert_eq!(k.tables().pow(x, 3), k.sigma(&x));
            assert_eq!(k.sigma(&k.sigma(&x)), x);
        }
    }

    #[test]
    fn norm_is_onto_base_units() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)] {
            let k = FiniteQuadratic::new(p, e).unwrap();
            let q = k.tables().q();
            let mut image: Vec<u32> = (1..k.tables().size()).map(|x| k.norm(&x)).collect();
            image.sort_unstable();
            image.dedup();
            assert_eq!(image.len() as u64, q - 1, "p={p} e={e}");
            assert!(image.iter().all(|&y| k.sigma(&y) == y));
        }
    }

    #[test]
    fn generator_norm_has_order_two_in_f3() {
        let k = FiniteQuadratic::new(3, 1).unwrap();
        let g = k.tables().generator();
        let n = k.norm(&g);
        assert_eq!(n, k.tables().pow(g, 4));
        assert_ne!(n, 1);
        assert_eq!(k.tables().mul(n, n), 1);
    }

    #[test]
    fn field_axioms_exhaustive_f16() {
        let k = FiniteQuadratic::new(2, 2).unwrap();
        let n = k.tables().size();
        assert_eq!(n, 16);
        assert_eq!(k.base_elements().len(), 4);
        for a in 0..n {
            assert_eq!(k.add(&a, &k.neg(&a)), 0);
            if a != 0 {
                assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), 1);
            }
            for b in 0..n {
                assert_eq!(k.sigma(&k.mul(&a, &b)), k.mul(&k.sigma(&a), &k.sigma(&b)));
                assert_eq!(k.sigma(&k.add(&a, &b)), k.add(&k.sigma(&a), &k.sigma(&b)));
                for c in [1, 3, 7] {
                    let lhs = k.mul(&a, &k.add(&b, &c));
                    assert_eq!(lhs, k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
                }
            }
        }
    }

    #[test]
    fn coordinates_roundtrip() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (3, 2)] {
            let k = FiniteQuadratic::new(p, e).unwrap();
            let base = k.base_elements();
            for x in 0..k.tables().size() {
                let [a, b] = k.coords(&x);
                assert!(base.contains(&a) && base.contains(&b));
                assert_eq!(k.from_coords(&a, &b), x);
            }
        }
    }

    #[test]
    fn rejects_composite_p() {
        assert_eq!(FiniteQuadratic::new(6, 1).unwrap_err(), Error::NotPrime(6));
        assert!(matches!(FiniteQuadratic::new(2, 40), Err(Error::FieldTooLarge(_))));
    }
}
