//! Verification suites. Each suite sweeps its cases in parallel and reports
//! them in canonical order, so a fixed configuration gives identical output.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{make_extension, prime_power, FieldDescriptor, FiniteQuadratic};
use crate::orbit::{
    centralizer_dim_oracle, check_dim_hy, compositions, enumerate_orbits, orbit_census, orbit_dimension,
    stable_flag_count, standard_representative, JordanType,
};
use crate::parabolic::{
    adapted_parabolic, induce_orbit, n_x_dim_oracle, richardson_type, standard_parabolic, verify_porb, InduceConfig,
};
use crate::with_model;
use crate::zeta::{homogeneity_sides, igusa_oracle, scaling_check};

pub const SCHEMA: &str = "tworb/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    Centralizer,
    Identity,
    UX,
    DimHY,
    Porb,
    Richardson,
    Igusa,
    Scaling,
    Census,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Centralizer,
        Suite::Identity,
        Suite::UX,
        Suite::DimHY,
        Suite::Porb,
        Suite::Richardson,
        Suite::Igusa,
        Suite::Scaling,
        Suite::Census,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Centralizer => "centralizer",
            Suite::Identity => "identity",
            Suite::UX => "uX",
            Suite::DimHY => "dimHY",
            Suite::Porb => "porb",
            Suite::Richardson => "richardson",
            Suite::Igusa => "igusa",
            Suite::Scaling => "scaling",
            Suite::Census => "census",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

/// Parameters shared by the suites; each suite reads the ones it needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub field: FieldDescriptor,
    pub n_max: usize,
    pub n: usize,
    /// Residue size for the finite-field suites (census, flag counts).
    pub q: u64,
    pub seed: u64,
    pub trials: usize,
    pub reruns: usize,
    pub series_order: usize,
    pub budget: u64,
    /// Largest scaling power k for the scaling suite.
    pub k_max: usize,
    /// Coefficient pool bound for rational sampling.
    pub bound: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            field: FieldDescriptor::default(),
            n_max: 4,
            n: 2,
            q: 2,
            seed: 0,
            trials: 20,
            reruns: 5,
            series_order: 3,
            budget: 1 << 24,
            k_max: 3,
            bound: 101,
        }
    }
}

impl VerifyConfig {
    pub fn finite_model(&self) -> Result<FiniteQuadratic> {
        let (p, e) =
            prime_power(self.q).ok_or_else(|| Error::Invalid(format!("q = {} is not a prime power", self.q)))?;
        FiniteQuadratic::new(p, e)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: String,
    pub pass: bool,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub suite: String,
    pub config: Value,
    pub cases: Vec<CaseResult>,
    pub passed_cases: usize,
    pub failed_cases: usize,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: Suite, config: Value, cases: Vec<CaseResult>) -> Self {
        let failed = cases.iter().filter(|c| !c.pass).count();
        SuiteReport {
            schema: SCHEMA.into(),
            suite: suite.name().into(),
            config,
            passed_cases: cases.len() - failed,
            failed_cases: failed,
            passed: failed == 0 && !cases.is_empty(),
            cases,
        }
    }
}

/// Seed for case `index`, mixed so neighbouring cases are unrelated.
pub fn case_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn types_up_to(n_max: usize) -> Vec<JordanType> {
    (0..=n_max).flat_map(enumerate_orbits).collect()
}

fn case(case: String, pass: bool, details: Value) -> CaseResult {
    CaseResult { case, pass, details }
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<SuiteReport> {
    let cases = match suite {
        Suite::Centralizer => centralizer_cases(config)?,
        Suite::Identity => identity_cases(config),
        Suite::UX => ux_cases(config)?,
        Suite::DimHY => dim_hy_cases(config)?,
        Suite::Porb => porb_cases(config)?,
        Suite::Richardson => richardson_cases(config)?,
        Suite::Igusa => igusa_cases(config)?,
        Suite::Scaling => scaling_cases(config)?,
        Suite::Census => census_cases(config)?,
    };
    Ok(SuiteReport::new(suite, suite_config(suite, config), cases))
}

fn suite_config(suite: Suite, c: &VerifyConfig) -> Value {
    match suite {
        Suite::Centralizer | Suite::UX => json!({"field": c.field, "n_max": c.n_max}),
        Suite::Identity | Suite::Scaling => json!({"n_max": c.n_max, "k_max": c.k_max}),
        Suite::DimHY => json!({"n_max": c.n_max, "q": c.q}),
        Suite::Porb => json!({"field": c.field, "n_max": c.n_max, "trials": c.trials, "seed": c.seed}),
        Suite::Richardson => json!({"field": c.field, "n_max": c.n_max, "reruns": c.reruns, "seed": c.seed}),
        Suite::Igusa => json!({"d_max": 2, "primes": [2, 3], "series_order": c.series_order, "budget": c.budget}),
        Suite::Census => json!({"n": c.n, "q": c.q, "budget": c.budget}),
    }
}

fn centralizer_cases(c: &VerifyConfig) -> Result<Vec<CaseResult>> {
    let model = make_extension(&c.field)?;
    Ok(with_model!(&model, |k| {
        types_up_to(c.n_max)
            .par_iter()
            .map(|t| {
                let oracle = centralizer_dim_oracle(k, &standard_representative(k, t));
                let formula = orbit_dimension(t).centralizer_dim_f;
                case(t.to_string(), oracle == formula, json!({"oracle": oracle, "formula": formula}))
            })
            .collect()
    }))
}

fn identity_cases(c: &VerifyConfig) -> Vec<CaseResult> {
    types_up_to(c.n_max)
        .par_iter()
        .map(|t| {
            let sides = homogeneity_sides(t);
            case(t.to_string(), sides.hold(), serde_json::to_value(&sides).expect("plain struct"))
        })
        .collect()
}

fn ux_cases(c: &VerifyConfig) -> Result<Vec<CaseResult>> {
    let model = make_extension(&c.field)?;
    Ok(with_model!(&model, |k| {
        types_up_to(c.n_max)
            .par_iter()
            .map(|t| {
                let a = adapted_parabolic(t);
                let centralizer_in_n = n_x_dim_oracle(k, t);
                let (n_dim, u_dim) = (a.n_mask().dim_f(), a.u_dim_f());
                case(
                    t.to_string(),
                    u_dim + centralizer_in_n == n_dim,
                    json!({"dim_n": n_dim, "dim_u": u_dim, "dim_n_x": centralizer_in_n}),
                )
            })
            .collect()
    }))
}

fn dim_hy_cases(c: &VerifyConfig) -> Result<Vec<CaseResult>> {
    let mut cases: Vec<CaseResult> = types_up_to(c.n_max)
        .par_iter()
        .map(|t| {
            let inv = orbit_dimension(t);
            case(
                t.to_string(),
                check_dim_hy(t),
                json!({"centralizer_dim_f": inv.centralizer_dim_f, "springer_dim_f": inv.springer_dim_f, "torus_dim_f": 2 * t.n()}),
            )
        })
        .collect();
    let k = c.finite_model()?;
    let flags: Vec<CaseResult> = (1..=c.n_max.min(3))
        .flat_map(enumerate_orbits)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|t| {
            let fc = stable_flag_count(&k, t);
            case(format!("flags {t} q={}", c.q), fc.degree_matches(), serde_json::to_value(&fc).expect("plain struct"))
        })
        .collect();
    cases.extend(flags);
    Ok(cases)
}

/// Every composition of n ≤ n_max with every choice of block types.
fn levi_cases(n_max: usize) -> Vec<(Vec<usize>, Vec<JordanType>)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for comp in compositions(n) {
            let mut choices: Vec<Vec<JordanType>> = vec![Vec::new()];
            for &part in &comp {
                choices = choices
                    .into_iter()
                    .flat_map(|prefix| {
                        enumerate_orbits(part).into_iter().map(move |t| {
                            let mut v = prefix.clone();
                            v.push(t);
                            v
                        })
                    })
                    .collect();
            }
            out.extend(choices.into_iter().map(|types| (comp.clone(), types)));
        }
    }
    out
}

fn levi_label(comp: &[usize], types: &[JordanType]) -> String {
    let types: Vec<String> = types.iter().map(ToString::to_string).collect();
    format!("levi {comp:?} types {}", types.join(";"))
}

fn porb_cases(c: &VerifyConfig) -> Result<Vec<CaseResult>> {
    let model = make_extension(&c.field)?;
    let cases = levi_cases(c.n_max);
    with_model!(&model, |k| {
        cases
            .par_iter()
            .enumerate()
            .map(|(idx, (comp, types))| {
                let p = standard_parabolic(comp)?;
                let report = verify_porb(k, &p, types, c.trials, case_seed(c.seed, idx as u64), c.bound)?;
                let pass = report.passed && report.certified_trials > 0;
                Ok(case(levi_label(comp, types), pass, serde_json::to_value(&report).expect("plain struct")))
            })
            .collect()
    })
}

fn richardson_cases(c: &VerifyConfig) -> Result<Vec<CaseResult>> {
    let model = make_extension(&c.field)?;
    let comps: Vec<Vec<usize>> = (1..=c.n_max).flat_map(compositions).collect();
    with_model!(&model, |k| {
        comps
            .par_iter()
            .enumerate()
            .map(|(idx, comp)| {
                let p = standard_parabolic(comp)?;
                let types: Vec<JordanType> = comp.iter().map(|&s| JordanType::zero(s)).collect();
                let expected = richardson_type(comp);
                let mut runs = Vec::new();
                for rerun in 0..c.reruns {
                    let seed = case_seed(case_seed(c.seed, idx as u64), rerun as u64 + 1);
                    let config = InduceConfig { seed, bound: c.bound, ..InduceConfig::default() };
                    runs.push(match induce_orbit(k, &p, &types, &config) {
                        Ok(ind) => json!({"seed": seed, "type": ind.induced_type, "attempts": ind.attempts, "certified": ind.certified}),
                        Err(e) => json!({"seed": seed, "error": e.to_string()}),
                    });
                }
                let pass = c.reruns > 0
                    && runs.iter().all(|r| r["certified"] == json!(true) && r["type"] == json!(expected));
                Ok(case(format!("levi {comp:?}"), pass, json!({"expected": expected, "runs": runs})))
            })
            .collect()
    })
}

fn igusa_cases(c: &VerifyConfig) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for d in 0..=2 {
        for p in [2u64, 3] {
            let cmp = igusa_oracle(d, p, c.series_order, c.budget as u128)?;
            cases.push(case(format!("d={d} p={p}"), cmp.matches, serde_json::to_value(&cmp).expect("plain struct")));
        }
    }
    Ok(cases)
}

fn scaling_cases(c: &VerifyConfig) -> Result<Vec<CaseResult>> {
    let pairs: Vec<(JordanType, usize)> =
        types_up_to(c.n_max).into_iter().flat_map(|t| (1..=c.k_max).map(move |k| (t.clone(), k))).collect();
    pairs
        .par_iter()
        .map(|(t, k)| {
            let check = scaling_check(t, *k)?;
            Ok(case(format!("{t} k={k}"), check.holds(), serde_json::to_value(&check).expect("plain struct")))
        })
        .collect()
}

fn census_cases(c: &VerifyConfig) -> Result<Vec<CaseResult>> {
    let k = c.finite_model()?;
    let report = orbit_census(&k, c.n, c.budget)?;
    let mut cases: Vec<CaseResult> = report
        .entries
        .iter()
        .map(|e| {
            let product = e.count as u128 * e.centralizer_order as u128;
            case(
                format!("class {}", e.jordan_type),
                e.count > 0 && product == report.gl_order as u128,
                json!({"count": e.count, "centralizer_order": e.centralizer_order, "product": product as u64, "gl_order": report.gl_order}),
            )
        })
        .collect();
    let nonempty = report.entries.iter().filter(|e| e.count > 0).count();
    let expected = enumerate_orbits(c.n).len();
    cases.push(case(
        "class count".into(),
        nonempty == expected && report.entries.iter().any(|e| e.jordan_type.is_zero_orbit() && e.count == 1),
        json!({"nonempty_classes": nonempty, "nonzero_classes": report.nonzero_classes(), "partitions": expected, "nilpotent": report.nilpotent, "matrices": report.matrices}),
    ));
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("UX".parse::<Suite>().unwrap(), Suite::UX);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let config = VerifyConfig { n_max: 3, trials: 4, reruns: 2, ..VerifyConfig::default() };
        for s in Suite::ALL {
            let r = run_suite(s, &config).unwrap();
            assert!(r.passed, "{s}: {:?}", r.cases.iter().find(|c| !c.pass));
            assert_eq!(r.schema, SCHEMA);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let config = VerifyConfig { n_max: 3, trials: 3, seed: 99, ..VerifyConfig::default() };
        let a = serde_json::to_string(&run_suite(Suite::Porb, &config).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::Porb, &config).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn levi_case_count() {
        // n = 2: (2) with 2 types, (1,1) with 1.
        assert_eq!(levi_cases(2).len(), 1 + 3);
    }

    #[test]
    fn census_suite_reports_classes() {
        let r = run_suite(Suite::Census, &VerifyConfig { n: 2, q: 3, ..VerifyConfig::default() }).unwrap();
        assert!(r.passed);
        assert_eq!(r.cases.len(), 3);
        assert_eq!(r.cases[2].details["nonempty_classes"], 2);
    }

    #[test]
    fn bad_q_is_an_error() {
        let r = run_suite(Suite::Census, &VerifyConfig { q: 6, ..VerifyConfig::default() });
        assert!(r.is_err());
    }
}
