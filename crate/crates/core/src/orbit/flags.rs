use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{springer_dim_e, standard_representative, JordanType};
use crate::field::{Field, FiniteQuadratic, QuadraticField};
use crate::linalg::TwistedEndo;

/// Point count of the fixed-flag variety of a representative over the
/// residue field F_{q²}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagCount {
    #[serde(rename = "type")]
    pub jordan_type: JordanType,
    pub q: u64,
    pub count: u64,
    /// The d with (q²)^d ≤ count < (q²)^{d+1}.
    pub degree_e: usize,
    pub springer_dim_e: usize,
}

impl FlagCount {
    pub fn degree_matches(&self) -> bool {
        self.degree_e == self.springer_dim_e
    }
}

type Subspace = Vec<Vec<u32>>;

/// Reduced row echelon form with zero rows dropped; equal spans give equal output.
fn rref(k: &FiniteQuadratic, mut rows: Subspace) -> Subspace {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !k.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let s = k.inv(&rows[rank][col]).expect("nonzero pivot");
        rows[rank] = rows[rank].iter().map(|x| k.mul(&s, x)).collect();
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !k.is_zero(&row[col]) {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

fn contains(k: &FiniteQuadratic, space: &Subspace, v: &[u32]) -> bool {
    let mut rows = space.clone();
    rows.push(v.to_vec());
    rref(k, rows).len() == space.len()
}

/// Image of v under the σ-linear map.
fn apply(k: &FiniteQuadratic, y: &TwistedEndo<u32>, v: &[u32]) -> Vec<u32> {
    let n = y.dim();
    (0..n).map(|r| (0..n).fold(k.zero(), |acc, c| k.add(&acc, &k.mul(y.matrix().get(r, c), &k.sigma(&v[c]))))).collect()
}

fn count_from(k: &FiniteQuadratic, y: &TwistedEndo<u32>, vectors: &[Vec<u32>], space: &Subspace) -> u64 {
    if space.len() == y.dim() {
        return 1;
    }
    let mut next: BTreeSet<Subspace> = BTreeSet::new();
    for v in vectors.iter().filter(|v| !contains(k, space, v)) {
        let mut rows = space.clone();
        rows.push(v.clone());
        next.insert(rref(k, rows));
    }
    next.iter()
        .filter(|w| w.iter().all(|b| contains(k, w, &apply(k, y, b))))
        .map(|w| count_from(k, y, vectors, w))
        .sum()
}

/// Counts complete flags 0 ⊂ V_1 ⊂ … ⊂ V_n of F_{q²}^n with Y·V_i ⊂ V_i
/// for the standard representative Y of `t`. Brute force; intended for n ≤ 3.
pub fn stable_flag_count(k: &FiniteQuadratic, t: &JordanType) -> FlagCount {
    let n = t.n();
    let y = standard_representative(k, t);
    let elements = k.elements().expect("finite model");
    let mut vectors: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..n {
        vectors = vectors
            .into_iter()
            .flat_map(|v| {
                elements.iter().map(move |&e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    let count = count_from(k, &y, &vectors, &Vec::new());
    let size = k.tables().size() as u64;
    let mut degree_e = 0;
    while size.pow(degree_e as u32 + 1) <= count {
        degree_e += 1;
    }
    FlagCount { jordan_type: t.clone(), q: k.tables().q(), count, degree_e, springer_dim_e: springer_dim_e(t) }
}
