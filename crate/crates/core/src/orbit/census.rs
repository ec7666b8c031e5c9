use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{jordan_type_of, standard_representative, JordanType};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FiniteQuadratic, QuadraticField};
use crate::linalg::{inverse, mat_mul, mat_sigma, Matrix, TwistedEndo};

/// Matrices per rayon work item.
const CHUNK: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    #[serde(rename = "type")]
    pub jordan_type: JordanType,
    pub count: u64,
    /// Order of the stabilizer of the standard representative in GL_n(F_{q²}).
    pub centralizer_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub q: u64,
    pub field: FieldDescriptor,
    pub matrices: u64,
    pub nilpotent: u64,
    pub gl_order: u64,
    pub entries: Vec<CensusEntry>,
}

impl CensusReport {
    /// Every class size times its stabilizer order equals |GL_n|.
    pub fn orbit_stabilizer_holds(&self) -> bool {
        self.entries.iter().all(|e| e.count as u128 * e.centralizer_order as u128 == self.gl_order as u128)
    }

    pub fn nonzero_classes(&self) -> usize {
        self.entries.iter().filter(|e| e.count > 0 && !e.jordan_type.is_zero_orbit()).count()
    }
}

/// Estimated class sizes from uniform sampling, used when the exhaustive
/// loop exceeds the budget.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledCensus {
    pub n: usize,
    pub q: u64,
    pub samples: u64,
    pub seed: u64,
    pub hits: BTreeMap<String, u64>,
    pub estimated_counts: BTreeMap<String, f64>,
}

/// |GL_n(F_Q)| = Π_{i<n} (Q^n − Q^i).
pub fn gl_order(field_size: u64, n: usize) -> u128 {
    let big = (field_size as u128).pow(n as u32);
    (0..n as u32).map(|i| big - (field_size as u128).pow(i)).product()
}

fn matrix_count(size: u64, n: usize) -> u128 {
    (size as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX)
}

fn decode(elements: &[u32], n: usize, mut index: u64) -> Matrix<u32> {
    let base = elements.len() as u64;
    Matrix::from_fn(n, n, |_, _| {
        let e = elements[(index % base) as usize];
        index /= base;
        e
    })
}

/// Exhaustive census of nilpotent Y ∈ gl_n(F_{q²}) by Jordan type. The
/// loop visits (q²)^{n²} matrices and fails with `BudgetExceeded` beyond
/// `budget`; use [`orbit_census_sampled`] then.
pub fn orbit_census(k: &FiniteQuadratic, n: usize, budget: u64) -> Result<CensusReport> {
    let size = k.tables().size() as u64;
    let required = matrix_count(size, n);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget: budget as u128 });
    }
    let total = required as u64;
    let elements = k.elements().expect("finite model lists its elements");

    let counts = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut local: BTreeMap<JordanType, u64> = BTreeMap::new();
            for idx in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                let y = TwistedEndo::new(decode(&elements, n, idx)).expect("square");
                if let Ok(t) = jordan_type_of(k, &y) {
                    *local.entry(t).or_default() += 1;
                }
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (t, c) in b {
                *a.entry(t).or_default() += c;
            }
            a
        });

    let gl = gl_order(size, n);
    let entries: Vec<CensusEntry> = super::enumerate_orbits(n)
        .into_iter()
        .map(|t| {
            let centralizer_order = stabilizer_order(k, &elements, &t, total);
            CensusEntry { count: counts.get(&t).copied().unwrap_or(0), jordan_type: t, centralizer_order }
        })
        .collect();
    Ok(CensusReport {
        n,
        q: k.tables().q(),
        field: k.descriptor(),
        matrices: total,
        nilpotent: counts.values().sum(),
        gl_order: gl as u64,
        entries,
    })
}

/// Number of invertible h with h·X = X·σ(h), found by exhaustive search.
fn stabilizer_order(k: &FiniteQuadratic, elements: &[u32], t: &JordanType, total: u64) -> u64 {
    let n = t.n();
    let x = standard_representative(k, t);
    (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let h = decode(elements, n, idx);
            mat_mul(k, &h, x.matrix()) == mat_mul(k, x.matrix(), &mat_sigma(k, &h)) && inverse(k, &h).is_ok()
        })
        .count() as u64
}

/// Monte Carlo census: `samples` uniform matrices drawn from a seeded stream.
pub fn orbit_census_sampled(k: &FiniteQuadratic, n: usize, samples: u64, seed: u64) -> SampledCensus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits: BTreeMap<JordanType, u64> = BTreeMap::new();
    for _ in 0..samples {
        let y = Matrix::from_fn(n, n, |_, _| k.sample(&mut rng, 0));
        if let Ok(t) = jordan_type_of(k, &TwistedEndo::new(y).expect("square")) {
            *hits.entry(t).or_default() += 1;
        }
    }
    let scale = matrix_count(k.tables().size() as u64, n) as f64 / samples.max(1) as f64;
    SampledCensus {
        n,
        q: k.tables().q(),
        samples,
        seed,
        estimated_counts: hits.iter().map(|(t, &c)| (t.to_string(), c as f64 * scale)).collect(),
        hits: hits.into_iter().map(|(t, c)| (t.to_string(), c)).collect(),
    }
}
