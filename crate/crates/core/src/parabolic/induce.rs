use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{rank_data, ParabolicShape};
use crate::error::{Error, Result};
use crate::field::QuadraticField;
use crate::linalg::{mat_add, Matrix, TwistedEndo};
use crate::orbit::{centralizer_dim_oracle, jordan_type_of, orbit_dimension, standard_representative, JordanType};

/// Sampling parameters for induction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InduceConfig {
    pub seed: u64,
    /// Samples drawn before giving up.
    pub max_attempts: usize,
    /// Coefficient pool {1, …, bound} for the rational model.
    pub bound: u32,
}

impl Default for InduceConfig {
    fn default() -> Self {
        InduceConfig { seed: 0, max_attempts: 32, bound: 101 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Induction {
    pub induced_type: JordanType,
    /// Samples drawn, including the certified one.
    pub attempts: usize,
    /// Always true: only samples passing the rank criterion are returned.
    pub certified: bool,
}

/// The Richardson prediction: the dual of the sorted composition.
pub fn richardson_type(composition: &[usize]) -> JordanType {
    JordanType::new(composition.to_vec()).dual()
}

fn levi_representative<K: QuadraticField>(
    k: &K,
    p: &ParabolicShape,
    types: &[JordanType],
) -> Result<TwistedEndo<K::Elem>> {
    if types.len() != p.composition().len() {
        return Err(Error::BadComposition(format!(
            "{} block types for {} Levi blocks",
            types.len(),
            p.composition().len()
        )));
    }
    for (t, &size) in types.iter().zip(p.composition()) {
        if t.n() != size {
            return Err(Error::BadComposition(format!("type {t} does not partition the block size {size}")));
        }
    }
    let blocks: Vec<Matrix<K::Elem>> = types.iter().map(|t| standard_representative(k, t).into_matrix()).collect();
    TwistedEndo::new(p.block_diagonal(k.zero(), &blocks)?)
}

fn sample_n<K: QuadraticField>(k: &K, p: &ParabolicShape, rng: &mut ChaCha8Rng, bound: u32) -> TwistedEndo<K::Elem> {
    let n = p.n();
    let mut y = Matrix::filled(n, n, k.zero());
    for (r, c) in p.n_mask().positions() {
        y.set(r, c, k.sample(rng, bound));
    }
    TwistedEndo::new(y).expect("square")
}

/// Induces the orbit of X = ⊕ (block representatives) from the Levi of `p`:
/// samples Y ∈ 𝔰_N until the rank criterion certifies X + Y, then returns
/// its Jordan type.
pub fn induce_orbit<K: QuadraticField>(
    k: &K,
    p: &ParabolicShape,
    types: &[JordanType],
    config: &InduceConfig,
) -> Result<Induction> {
    let x = levi_representative(k, p, types)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for attempt in 1..=config.max_attempts {
        let y = sample_n(k, p, &mut rng, config.bound);
        if rank_data(k, p, &x, &y)?.holds() {
            let xy = TwistedEndo::new(mat_add(k, x.matrix(), y.matrix()))?;
            return Ok(Induction { induced_type: jordan_type_of(k, &xy)?, attempts: attempt, certified: true });
        }
    }
    Err(Error::GenericityFailure { attempts: config.max_attempts })
}

/// Outcome of repeated certified sampling for one (P, block types) case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PorbReport {
    pub composition: Vec<usize>,
    pub block_types: Vec<JordanType>,
    pub trials: usize,
    /// Samples that passed the rank criterion.
    pub certified_trials: usize,
    /// Samples rejected by the rank criterion.
    pub uncertified_trials: usize,
    /// Certified samples violating a check below.
    pub failures: usize,
    /// The common type of certified samples, if they agree.
    pub induced_type: Option<JordanType>,
    pub constant_type: bool,
    /// Certified samples with dim [𝔭, X+Y] = dim [𝔪, X] + dim 𝔰_N.
    pub tangent_dim_checks: usize,
    /// Certified samples whose full centralizer dimension matches the
    /// formula for their Jordan type.
    pub centralizer_checks: usize,
    pub passed: bool,
}

/// Samples `trials` elements X + Y and checks that the certified ones share
/// one Jordan type and the tangent-dimension equality.
pub fn verify_porb<K: QuadraticField>(
    k: &K,
    p: &ParabolicShape,
    types: &[JordanType],
    trials: usize,
    seed: u64,
    bound: u32,
) -> Result<PorbReport> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let x = levi_representative(k, p, types)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PorbReport {
        composition: p.composition().to_vec(),
        block_types: types.to_vec(),
        trials,
        certified_trials: 0,
        uncertified_trials: 0,
        failures: 0,
        induced_type: None,
        constant_type: true,
        tangent_dim_checks: 0,
        centralizer_checks: 0,
        passed: false,
    };
    for _ in 0..trials {
        let y = sample_n(k, p, &mut rng, bound);
        let data = rank_data(k, p, &x, &y)?;
        if !data.holds() {
            report.uncertified_trials += 1;
            continue;
        }
        report.certified_trials += 1;
        let xy = TwistedEndo::new(mat_add(k, x.matrix(), y.matrix()))?;
        let t = jordan_type_of(k, &xy)?;
        let mut ok = true;
        if data.rank_p == data.rank_m + data.dim_s_n {
            report.tangent_dim_checks += 1;
        } else {
            ok = false;
        }
        if centralizer_dim_oracle(k, &xy) == orbit_dimension(&t).centralizer_dim_f {
            report.centralizer_checks += 1;
        } else {
            ok = false;
        }
        match &report.induced_type {
            None => report.induced_type = Some(t),
            Some(prev) if *prev != t => {
                report.constant_type = false;
                ok = false;
            }
            Some(_) => {}
        }
        if !ok {
            report.failures += 1;
        }
    }
    report.passed = report.failures == 0
        && report.constant_type
        && report.tangent_dim_checks == report.certified_trials
        && report.centralizer_checks == report.certified_trials;
    Ok(report)
}
