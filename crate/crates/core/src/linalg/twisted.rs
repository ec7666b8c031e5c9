//! σ-linear endomorphisms of E^n.
//!
//! Convention: the matrix Y over E stands for the map v ↦ Y·σ(v), with σ
//! applied entrywise. Composition of two such maps is v ↦ Y₁·σ(Y₂)·v, so the
//! k-th power has matrix P_k = Y·σ(Y)·Y·σ(Y)⋯ (k alternating factors) and
//! acts as v ↦ P_k·σ^k(v). The group GL_n(E) acts by h·Y·σ(h)⁻¹ and its Lie
//! algebra by [Z, Y] = Z·Y − Y·σ(Z).

use super::{identity, inverse, is_zero_matrix, mat_mul, mat_sigma, mat_sub, rank, FLinearSystem, Matrix};
use crate::error::{Error, Result};
use crate::field::{Field, QuadraticField};

/// A σ-linear map of E^n, stored by its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedEndo<T> {
    matrix: Matrix<T>,
}

impl<T: Clone> TwistedEndo<T> {
    pub fn new(matrix: Matrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch(format!("{}x{} is not square", matrix.rows(), matrix.cols())));
        }
        Ok(TwistedEndo { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }
}

impl<T: Clone> From<TwistedEndo<T>> for Matrix<T> {
    fn from(y: TwistedEndo<T>) -> Self {
        y.matrix
    }
}

/// Matrix of the k-th power: P_0 = I, P_{k+1} = Y·σ(P_k).
pub fn twisted_power<K: QuadraticField>(k: &K, y: &TwistedEndo<K::Elem>, power: usize) -> Matrix<K::Elem> {
    let mut p = identity(k, y.dim());
    for _ in 0..power {
        p = mat_mul(k, y.matrix(), &mat_sigma(k, &p));
    }
    p
}

/// E-ranks of P_0, P_1, …, P_{2n}.
pub fn twisted_rank_sequence<K: QuadraticField>(k: &K, y: &TwistedEndo<K::Elem>) -> Vec<usize> {
    let n = y.dim();
    let mut p = identity(k, n);
    let mut ranks = vec![n];
    for _ in 0..2 * n {
        p = mat_mul(k, y.matrix(), &mat_sigma(k, &p));
        let r = rank(k, &p);
        ranks.push(r);
        if r == 0 {
            // all higher powers vanish too
            ranks.resize(2 * n + 1, 0);
            break;
        }
    }
    ranks
}

/// h·Y·σ(h)⁻¹.
pub fn sigma_conjugate<K: QuadraticField>(
    k: &K,
    h: &Matrix<K::Elem>,
    y: &TwistedEndo<K::Elem>,
) -> Result<TwistedEndo<K::Elem>> {
    if h.rows() != y.dim() || !h.is_square() {
        return Err(Error::ShapeMismatch("conjugating matrix has the wrong size".into()));
    }
    let sigma_h_inv = inverse(k, &mat_sigma(k, h))?;
    TwistedEndo::new(mat_mul(k, &mat_mul(k, h, y.matrix()), &sigma_h_inv))
}

/// [Z, Y] = Z·Y − Y·σ(Z).
pub fn twisted_bracket<K: QuadraticField>(
    k: &K,
    z: &Matrix<K::Elem>,
    y: &TwistedEndo<K::Elem>,
) -> Result<Matrix<K::Elem>> {
    if z.rows() != y.dim() || z.cols() != y.dim() {
        return Err(Error::ShapeMismatch("bracket operands differ in size".into()));
    }
    Ok(mat_sub(k, &mat_mul(k, z, y.matrix()), &mat_mul(k, y.matrix(), &mat_sigma(k, z))))
}

/// Y·σ(Y) nilpotent, tested as P_{2n} = 0.
pub fn is_nilpotent<K: QuadraticField>(k: &K, y: &TwistedEndo<K::Elem>) -> bool {
    is_zero_matrix(k, &twisted_power(k, y, 2 * y.dim()))
}

/// A set of matrix positions (row, col) in an n×n matrix; describes block
/// subspaces such as 𝔭, 𝔫, 𝔰_N or 𝔲_X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryMask {
    n: usize,
    bits: Vec<bool>,
}

impl EntryMask {
    pub fn empty(n: usize) -> Self {
        EntryMask { n, bits: vec![false; n * n] }
    }

    pub fn full(n: usize) -> Self {
        EntryMask { n, bits: vec![true; n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        EntryMask { n, bits: (0..n * n).map(|i| f(i / n, i % n)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.n + c]
    }

    pub fn insert(&mut self, r: usize, c: usize) {
        self.bits[r * self.n + c] = true;
    }

    /// Positions in row-major order.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        (0..self.n * self.n).filter(|&i| self.bits[i]).map(|i| (i / self.n, i % self.n)).collect()
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Each E-entry contributes two F-dimensions.
    pub fn dim_f(&self) -> usize {
        2 * self.count()
    }

    pub fn union(&self, other: &EntryMask) -> EntryMask {
        assert_eq!(self.n, other.n);
        EntryMask { n: self.n, bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect() }
    }

    pub fn is_disjoint(&self, other: &EntryMask) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| !(*a && *b))
    }

    pub fn is_subset(&self, other: &EntryMask) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| !*a || *b)
    }

    /// True if every nonzero entry of `m` lies in the mask.
    pub fn supports<K: Field>(&self, k: &K, m: &Matrix<K::Elem>) -> bool {
        m.entries().all(|(r, c, x)| k.is_zero(x) || self.contains(r, c))
    }
}

/// The F-linear map Z ↦ [Z, Y] from the E-matrices supported on `domain`
/// into gl_n(E) ≅ F^{2n²}. Domain coordinates run over the positions of
/// `domain` in row-major order, each with the F-basis (1, θ) of E;
/// codomain coordinates are (entry, {1, θ}) in row-major order.
pub fn bracket_system<K: QuadraticField>(
    k: &K,
    y: &TwistedEndo<K::Elem>,
    domain: &EntryMask,
) -> FLinearSystem<K::Base> {
    let n = y.dim();
    assert_eq!(domain.n(), n, "mask size differs from the endomorphism");
    let base = k.base();
    let positions = domain.positions();
    let mut columns: Vec<Vec<<K::Base as Field>::Elem>> = Vec::with_capacity(2 * positions.len());
    let betas = [k.one(), k.theta()];
    for &(a, b) in &positions {
        for beta in &betas {
            // Z = β·E_ab:  Z·Y puts β·Y[b, :] in row a; Y·σ(Z) puts Y[:, a]·σ(β) in column b
            let mut image: Vec<K::Elem> = vec![k.zero(); n * n];
            let sb = k.sigma(beta);
            for l in 0..n {
                let v = y.matrix().get(b, l);
                if !k.is_zero(v) {
                    image[a * n + l] = k.add(&image[a * n + l], &k.mul(beta, v));
                }
            }
            for m in 0..n {
                let v = y.matrix().get(m, a);
                if !k.is_zero(v) {
                    image[m * n + b] = k.sub(&image[m * n + b], &k.mul(v, &sb));
                }
            }
            columns.push(image.iter().flat_map(|x| k.coords(x)).collect());
        }
    }
    FLinearSystem::from_columns(base.clone(), 2 * n * n, columns)
}
