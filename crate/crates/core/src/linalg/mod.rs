//! Dense matrices over a field context, σ-linear maps and F-linear systems.

mod system;
mod twisted;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, QuadraticField};

pub use system::{kernel_dim_f, FLinearSystem};
pub use twisted::{
    bracket_system, is_nilpotent, sigma_conjugate, twisted_bracket, twisted_power, twisted_rank_sequence, EntryMask,
    TwistedEndo,
};

/// Row-major dense matrix. Arithmetic needs a field context and lives in
/// free functions below.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data.iter().enumerate().map(move |(i, v)| (i / self.cols, i % self.cols, v))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

pub fn zeros<K: Field>(k: &K, rows: usize, cols: usize) -> Matrix<K::Elem> {
    Matrix::filled(rows, cols, k.zero())
}

pub fn identity<K: Field>(k: &K, n: usize) -> Matrix<K::Elem> {
    Matrix::from_fn(n, n, |r, c| if r == c { k.one() } else { k.zero() })
}

pub fn mat_mul<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in product");
    let mut out = zeros(k, a.rows, b.cols);
    for i in 0..a.rows {
        for l in 0..a.cols {
            let x = a.get(i, l);
            if k.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(l, j);
                if k.is_zero(y) {
                    continue;
                }
                let idx = i * out.cols + j;
                out.data[idx] = k.add(&out.data[idx], &k.mul(x, y));
            }
        }
    }
    out
}

pub fn mat_add<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| k.add(x, y)).collect() }
}

pub fn mat_sub<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| k.sub(x, y)).collect() }
}

pub fn mat_scale<K: Field>(k: &K, c: &K::Elem, a: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    a.map(|x| k.mul(c, x))
}

/// Entrywise σ.
pub fn mat_sigma<K: QuadraticField>(k: &K, a: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    a.map(|x| k.sigma(x))
}

pub fn is_zero_matrix<K: Field>(k: &K, a: &Matrix<K::Elem>) -> bool {
    a.data.iter().all(|x| k.is_zero(x))
}

pub fn rank<K: Field>(k: &K, a: &Matrix<K::Elem>) -> usize {
    k.rank(a.to_rows())
}

/// Gauss–Jordan inverse.
pub fn inverse<K: Field>(k: &K, a: &Matrix<K::Elem>) -> Result<Matrix<K::Elem>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} is not square", a.rows, a.cols)));
    }
    let n = a.rows;
    let mut m: Vec<Vec<K::Elem>> = a.to_rows();
    let mut inv: Vec<Vec<K::Elem>> = identity(k, n).to_rows();
    for col in 0..n {
        let p = (col..n).find(|&i| !k.is_zero(&m[i][col])).ok_or(Error::SingularMatrix)?;
        m.swap(col, p);
        inv.swap(col, p);
        let s = k.inv(&m[col][col]).expect("pivot is nonzero");
        for j in 0..n {
            m[col][j] = k.mul(&s, &m[col][j]);
            inv[col][j] = k.mul(&s, &inv[col][j]);
        }
        for i in 0..n {
            if i == col || k.is_zero(&m[i][col]) {
                continue;
            }
            let f = m[i][col].clone();
            for j in 0..n {
                m[i][j] = k.sub(&m[i][j], &k.mul(&f, &m[col][j]));
                inv[i][j] = k.sub(&inv[i][j], &k.mul(&f, &inv[col][j]));
            }
        }
    }
    Matrix::from_rows(inv)
}

/// Plain Gaussian elimination; the default `Field::rank`.
pub fn gauss_rank<K: Field>(k: &K, mut m: Vec<Vec<K::Elem>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !k.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(rank, p);
        let s = k.inv(&m[rank][col]).expect("pivot is nonzero");
        let pivot_row: Vec<K::Elem> = m[rank].iter().map(|x| k.mul(&s, x)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            if k.is_zero(&row[col]) {
                continue;
            }
            let f = row[col].clone();
            for j in col..ncols {
                row[j] = k.sub(&row[j], &k.mul(&f, &pivot_row[j]));
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// JSON array-of-arrays.
pub fn matrix_to_json<K: QuadraticField>(k: &K, a: &Matrix<K::Elem>) -> Value {
    Value::Array((0..a.rows).map(|r| Value::Array(a.row(r).iter().map(|x| k.elem_to_json(x)).collect())).collect())
}

pub fn matrix_from_json<K: QuadraticField>(k: &K, v: &Value) -> Result<Matrix<K::Elem>> {
    let rows = v.as_array().ok_or_else(|| Error::Invalid("matrix must be an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Invalid("matrix row must be an array".into()))?
                .iter()
                .map(|x| k.elem_from_json(x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteQuadratic, QuadElem, RationalQuadratic};

    #[test]
    fn inverse_roundtrip_rational() {
        let k = RationalQuadratic::new(2).unwrap();
        let a = Matrix::from_rows(vec![
            vec![QuadElem::new(1, 1), QuadElem::new(2, 0)],
            vec![QuadElem::new(0, 3), QuadElem::new(1, -1)],
        ])
        .unwrap();
        let inv = inverse(&k, &a).unwrap();
        assert_eq!(mat_mul(&k, &a, &inv), identity(&k, 2));
        let singular = Matrix::from_rows(vec![vec![k.one(), k.one()], vec![k.one(), k.one()]]).unwrap();
        assert_eq!(inverse(&k, &singular).unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn rank_over_finite_field() {
        let k = FiniteQuadratic::new(3, 1).unwrap();
        let g = k.theta();
        let a = Matrix::from_rows(vec![vec![1, g], vec![g, k.mul(&g, &g)]]).unwrap();
        assert_eq!(rank(&k, &a), 1);
        assert_eq!(rank(&k, &identity(&k, 3)), 3);
        assert_eq!(rank(&k, &zeros(&k, 2, 3)), 0);
    }

    #[test]
    fn json_matrix_roundtrip() {
        let k = RationalQuadratic::new(2).unwrap();
        let v = serde_json::json!([[{"a": 1, "b": 0}, {"a": 0, "b": 1}], [0, "1/2"]]);
        let m = matrix_from_json(&k, &v).unwrap();
        assert_eq!(m.get(0, 1), &QuadElem::new(0, 1));
        assert_eq!(matrix_from_json(&k, &matrix_to_json(&k, &m)).unwrap(), m);
    }
}
