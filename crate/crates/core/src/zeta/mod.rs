//! Exponent bookkeeping of the zeta integrand and exact local monomial
//! models of its unramified factors.
//!
//! The local model fixes T = q^{−s} with q the residue size of F_v; the
//! block variables A_{i,j} live over E, whose residue field has q² elements.
//! Only the exponent structure is modelled: K-integration and the global
//! integral are out of scope, and the integrand on each block is the
//! characteristic function of the integral matrices.

mod shell;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{QuadraticField, RatFun};
use crate::linalg::Matrix;
use crate::orbit::{orbit_dimension, BasisLayout, JordanType};
use crate::parabolic::adapted_parabolic;

pub use shell::{shell_counts, ShellCounts};

/// One block pair (i, j) of δ(A, s) = Π |det A_{i,j}|^{e + (j−i)s}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentEntry {
    pub i: usize,
    pub j: usize,
    /// Size d_j of the square block A_{i,j}.
    pub d: usize,
    /// e = d_i + … + d_j.
    pub e: usize,
    pub s_coeff: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentTable {
    #[serde(rename = "type")]
    pub jordan_type: JordanType,
    pub table: Vec<ExponentEntry>,
    pub half_dim: usize,
    pub c: usize,
    pub u_dim_f: usize,
}

/// Entries for 1 ≤ i < j ≤ r with d_j ≥ 1, ordered by i then j.
pub fn exponent_table(t: &JordanType) -> ExponentTable {
    let r = t.r();
    let mut table = Vec::new();
    for i in 1..=r {
        for j in i + 1..=r {
            let d = t.d(j);
            if d > 0 {
                table.push(ExponentEntry { i, j, d, e: (i..=j).map(|l| t.d(l)).sum(), s_coeff: j - i });
            }
        }
    }
    let inv = orbit_dimension(t);
    ExponentTable {
        jordan_type: t.clone(),
        table,
        half_dim: inv.half_dim,
        c: inv.c_exponent,
        u_dim_f: adapted_parabolic(t).u_dim_f(),
    }
}

/// Both sides of the two homogeneity identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneitySides {
    /// 2·Σ d_j(d_i + … + d_j) + dim_F 𝔲_X.
    pub constant_lhs: usize,
    /// dim(𝒪)/2.
    pub constant_rhs: usize,
    /// 2·Σ d_j(j − i).
    pub s_lhs: usize,
    /// c = Σ j(j − 1)d_j.
    pub s_rhs: usize,
}

impl HomogeneitySides {
    pub fn hold(&self) -> bool {
        self.constant_lhs == self.constant_rhs && self.s_lhs == self.s_rhs
    }
}

pub fn homogeneity_sides(t: &JordanType) -> HomogeneitySides {
    let table = exponent_table(t);
    HomogeneitySides {
        constant_lhs: 2 * table.table.iter().map(|x| x.d * x.e).sum::<usize>() + table.u_dim_f,
        constant_rhs: table.half_dim,
        s_lhs: 2 * table.table.iter().map(|x| x.d * x.s_coeff).sum::<usize>(),
        s_rhs: table.c,
    }
}

pub fn homogeneity_identity_check(t: &JordanType) -> bool {
    homogeneity_sides(t).hold()
}

/// Keys (i, j) of the blocks A_{i,j} that Δ_A needs.
pub fn delta_block_keys(t: &JordanType) -> Vec<(usize, usize)> {
    exponent_table(t).table.iter().map(|x| (x.i, x.j)).collect()
}

/// Δ_A: the block A_{i,j} maps V_j^{i+1} to V_j^i, so the band above the
/// diagonal carries Δ_i(A) = diag(A_{i,r}, …, A_{i,i+1}).
pub fn delta_matrix<K: QuadraticField>(
    k: &K,
    t: &JordanType,
    blocks: &BTreeMap<(usize, usize), Matrix<K::Elem>>,
) -> Result<Matrix<K::Elem>> {
    let keys = delta_block_keys(t);
    if blocks.len() != keys.len() || keys.iter().any(|key| !blocks.contains_key(key)) {
        return Err(Error::ShapeMismatch(format!("expected blocks {keys:?}")));
    }
    let layout = BasisLayout::new(t);
    let mut m = Matrix::filled(layout.n(), layout.n(), k.zero());
    for (&(i, j), a) in blocks {
        let d = t.d(j);
        if a.rows() != d || a.cols() != d {
            return Err(Error::ShapeMismatch(format!("A_({i},{j}) must be {d}x{d}")));
        }
        let target = layout.block(i, j).expect("i < j block exists");
        let source = layout.block(i + 1, j).expect("i + 1 ≤ j block exists");
        for (r, c, v) in a.entries() {
            m.set(target.offset + r, source.offset + c, v.clone());
        }
    }
    Ok(m)
}

/// Where a factor comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockProvenance {
    pub i: usize,
    pub j: usize,
    pub d: usize,
    pub e: usize,
    pub s_coeff: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalZetaFactor {
    pub function: RatFun,
    /// Pairs (a, b) for the denominator factors 1 − q^{−a}T^b.
    pub denominators: Vec<(usize, usize)>,
    pub provenance: Option<BlockProvenance>,
}

impl LocalZetaFactor {
    pub fn to_json(&self) -> Value {
        json!({
            "num": self.function.numer().to_string(),
            "den": self.function.denom().to_string(),
            "denominators": self.denominators,
            "provenance": self.provenance,
        })
    }
}

/// ∫ |det A|^s dA over d×d integral matrices of a local field with residue
/// size q, additive Haar measure of total mass 1:
/// Π_{l=1}^{d} (1 − q^{−l}) / (1 − q^{−l}T).
pub fn igusa_matrix_factor(d: usize) -> LocalZetaFactor {
    let mut f = RatFun::one();
    for l in 1..=d as i64 {
        let num = RatFun::one().sub(&RatFun::monomial(1, -l, 0));
        let den = RatFun::one().sub(&RatFun::monomial(1, -l, 1));
        f = f.mul(&num.div(&den).expect("nonzero denominator"));
    }
    LocalZetaFactor { function: f, denominators: (1..=d).map(|l| (l, 1)).collect(), provenance: None }
}

/// The block integral ∫ |det A|^{e+(j−i)s} d^×A over d×d integral matrices
/// of E, with d^×A = dA / |det A|^d: the Igusa factor for q_E = q² at
/// T_E = q^{2d−2e}·T^{2(j−i)}.
fn block_factor(x: &ExponentEntry) -> LocalZetaFactor {
    let base = igusa_matrix_factor(x.d);
    let beta = 2 * x.d as i64 - 2 * x.e as i64;
    let gamma = 2 * x.s_coeff;
    let function = base.function.substitute(2, beta, gamma).expect("substitution keeps a nonzero denominator");
    let denominators = (1..=x.d).map(|l| (2 * l + 2 * (x.e - x.d), gamma)).collect();
    LocalZetaFactor {
        function,
        denominators,
        provenance: Some(BlockProvenance { i: x.i, j: x.j, d: x.d, e: x.e, s_coeff: x.s_coeff }),
    }
}

/// Product of the block factors of the exponent table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalZetaModel {
    pub table: ExponentTable,
    pub factors: Vec<LocalZetaFactor>,
    pub function: RatFun,
}

impl LocalZetaModel {
    pub fn to_json(&self, series_order: usize) -> Result<Value> {
        let series: Vec<String> = self.function.series_in_t(series_order)?.iter().map(ToString::to_string).collect();
        Ok(json!({
            "type": self.table.jordan_type,
            "table": self.table.table.iter().map(|x| json!({"i": x.i, "j": x.j, "e": x.e, "s_coeff": x.s_coeff})).collect::<Vec<_>>(),
            "half_dim": self.table.half_dim,
            "c": self.table.c,
            "u_dim_f": self.table.u_dim_f,
            "local_factor": {"num": self.function.numer().to_string(), "den": self.function.denom().to_string()},
            "factors": self.factors.iter().map(LocalZetaFactor::to_json).collect::<Vec<_>>(),
            "series": series,
            "scope": "local monomial model; K-integration and global integral not computed",
        }))
    }
}

pub fn local_zeta_model(t: &JordanType) -> LocalZetaModel {
    let table = exponent_table(t);
    let factors: Vec<LocalZetaFactor> = table.table.iter().map(block_factor).collect();
    let function = factors.iter().fold(RatFun::one(), |acc, f| acc.mul(&f.function));
    LocalZetaModel { table, factors, function }
}

/// The model with every lattice scaled by ϖ^k: each block ranges over
/// ϖ^k·M_d(O_E) and 𝔲_X over ϖ^k times its lattice.
///
/// Substituting A = ϖ^k B leaves d^×A invariant and multiplies |det A| by
/// q_E^{−kd}, so a block contributes (q^{−2e}·T^{2(j−i)})^{kd}; the 𝔲_X
/// lattice loses volume q^{−k·dim_F 𝔲_X}.
pub fn local_zeta_model_scaled(t: &JordanType, k: usize) -> RatFun {
    let model = local_zeta_model(t);
    let mut f = RatFun::monomial(1, -((k * model.table.u_dim_f) as i64), 0);
    for (x, factor) in model.table.table.iter().zip(&model.factors) {
        let det_char = RatFun::monomial(1, -2 * (x.e as i64), 2 * x.s_coeff);
        let scaled = factor.function.mul(&det_char.pow((k * x.d) as i64).expect("nonzero"));
        f = f.mul(&scaled);
    }
    f
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingCheck {
    #[serde(rename = "type")]
    pub jordan_type: JordanType,
    pub k: usize,
    /// scaled / original, printed.
    pub ratio: String,
    /// q^{−k·half_dim}·T^{k·c}, printed.
    pub expected: String,
    pub symbolic: bool,
    /// The ratio at T = 1 equals q^{−k·half_dim}.
    pub at_t_one: bool,
}

impl ScalingCheck {
    pub fn holds(&self) -> bool {
        self.symbolic && self.at_t_one
    }
}

pub fn scaling_check(t: &JordanType, k: usize) -> Result<ScalingCheck> {
    if k == 0 {
        return Err(Error::Invalid("scaling exponent k must be at least 1".into()));
    }
    let original = local_zeta_model(t).function;
    let ratio = local_zeta_model_scaled(t, k).div(&original)?;
    let inv = orbit_dimension(t);
    let expected = RatFun::monomial(1, -((k * inv.half_dim) as i64), k * inv.c_exponent);
    let at_one = RatFun::monomial(1, -((k * inv.half_dim) as i64), 0);
    Ok(ScalingCheck {
        jordan_type: t.clone(),
        k,
        symbolic: ratio == expected,
        at_t_one: ratio.eval_t(1)? == at_one,
        ratio: ratio.to_string(),
        expected: expected.to_string(),
    })
}

/// Scaling the lattice by ϖ^k multiplies the model by q^{−k(half_dim + c·s)}.
pub fn scaling_exponent_check(t: &JordanType, k: usize) -> bool {
    scaling_check(t, k).map(|c| c.holds()).unwrap_or(false)
}

/// Series coefficients of the Igusa factor at q = p against the shell counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IgusaComparison {
    pub d: usize,
    pub p: u64,
    pub order: usize,
    pub series: Vec<String>,
    pub shells: Vec<String>,
    pub matches: bool,
}

/// Compares T⁰…T^order of `igusa_matrix_factor(d)` at q = p with the
/// exhaustive count modulo p^{order+1}.
pub fn igusa_oracle(d: usize, p: u64, order: usize, budget: u128) -> Result<IgusaComparison> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let shells = shell_counts(p, order as u32 + 1, d, budget)?;
    let series = igusa_matrix_factor(d).function.series_in_t(order)?;
    let q = BigRational::from_integer(BigInt::from(p));
    let values: Vec<BigRational> = series
        .iter()
        .map(|c| c.eval(&q, &BigRational::from_integer(BigInt::from(0))).ok_or(Error::DivisionByZero))
        .collect::<Result<_>>()?;
    let measures: Vec<BigRational> = (0..=order).map(|m| shells.measure(m)).collect();
    Ok(IgusaComparison {
        d,
        p,
        order,
        matches: values == measures,
        series: values.iter().map(ToString::to_string).collect(),
        shells: measures.iter().map(ToString::to_string).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FiniteQuadratic, QuadElem, RationalQuadratic};
    use crate::orbit::{enumerate_orbits, standard_representative};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn jt(parts: &[usize]) -> JordanType {
        JordanType::new(parts.to_vec())
    }

    fn entries(t: &ExponentTable) -> Vec<(usize, usize, usize, usize)> {
        t.table.iter().map(|x| (x.i, x.j, x.e, x.s_coeff)).collect()
    }

    #[test]
    fn exponent_table_examples() {
        let two = exponent_table(&jt(&[2]));
        assert_eq!(entries(&two), vec![(1, 2, 1, 1)]);
        assert_eq!((two.half_dim, two.c), (2, 2));
        let two_one = exponent_table(&jt(&[2, 1]));
        assert_eq!(entries(&two_one), vec![(1, 2, 2, 1)]);
        assert_eq!((two_one.half_dim, two_one.c), (4, 2));
        let zero = exponent_table(&jt(&[1, 1, 1]));
        assert!(zero.table.is_empty());
        assert_eq!((zero.half_dim, zero.c), (0, 0));
        assert_eq!(entries(&exponent_table(&jt(&[3, 1]))), vec![(1, 3, 2, 2), (2, 3, 1, 1)]);
    }

    #[test]
    fn homogeneity_examples() {
        let s = homogeneity_sides(&jt(&[2]));
        assert_eq!((s.constant_lhs, s.constant_rhs, s.s_lhs, s.s_rhs), (2, 2, 2, 2));
        let s = homogeneity_sides(&jt(&[3, 1]));
        assert_eq!((s.constant_lhs, s.constant_rhs, s.s_lhs, s.s_rhs), (10, 10, 6, 6));
        assert!(homogeneity_identity_check(&jt(&[1, 1, 1, 1])));
    }

    #[test]
    fn homogeneity_sweep() {
        for n in 0..=12 {
            for t in enumerate_orbits(n) {
                assert!(homogeneity_identity_check(&t), "{t}");
            }
        }
    }

    #[test]
    fn delta_examples() {
        let k = RationalQuadratic::new(2).unwrap();
        let a = QuadElem::new(3, -1);
        let blocks = BTreeMap::from([((1, 2), Matrix::filled(1, 1, a.clone()))]);
        let m = delta_matrix(&k, &jt(&[2]), &blocks).unwrap();
        assert_eq!(m.to_rows(), vec![vec![k.zero(), a], vec![k.zero(), k.zero()]]);
        let empty = delta_matrix(&k, &jt(&[1, 1]), &BTreeMap::new()).unwrap();
        assert_eq!(empty, crate::linalg::zeros(&k, 2, 2));
        assert!(matches!(delta_matrix(&k, &jt(&[2]), &BTreeMap::new()), Err(Error::ShapeMismatch(_))));
        let wrong = BTreeMap::from([((1, 2), Matrix::filled(2, 2, k.one()))]);
        assert!(matches!(delta_matrix(&k, &jt(&[2]), &wrong), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn delta_of_identities_is_the_representative() {
        let k = FiniteQuadratic::new(3, 1).unwrap();
        for n in 0..=8 {
            for t in enumerate_orbits(n) {
                let blocks: BTreeMap<_, _> = delta_block_keys(&t)
                    .into_iter()
                    .map(|(i, j)| ((i, j), crate::linalg::identity(&k, t.d(j))))
                    .collect();
                let delta = delta_matrix(&k, &t, &blocks).unwrap();
                assert_eq!(&delta, standard_representative(&k, &t).matrix(), "{t}");
            }
        }
    }

    #[test]
    fn igusa_small() {
        assert!(igusa_matrix_factor(0).function.is_one());
        let one = igusa_matrix_factor(1).function;
        // (1 − q⁻¹)/(1 − q⁻¹T) = (q − 1)/(q − T)
        let expected = RatFun::q().sub(&RatFun::one()).div(&RatFun::q().sub(&RatFun::t())).unwrap();
        assert_eq!(one, expected);
        assert_eq!(igusa_matrix_factor(3).denominators, vec![(1, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn igusa_matches_shells() {
        for d in 0..=2 {
            for p in [2, 3] {
                let cmp = igusa_oracle(d, p, 3, 1 << 24).unwrap();
                assert!(cmp.matches, "{cmp:?}");
            }
        }
        // the d = 2, p = 2 shell measures, frozen from the residue count
        let cmp = igusa_oracle(2, 2, 3, 1 << 24).unwrap();
        assert_eq!(cmp.shells, vec!["3/8", "9/32", "21/128", "45/512"]);
    }

    #[test]
    fn igusa_series_is_a_subprobability() {
        let q = BigRational::from_integer(BigInt::from(5));
        for d in 0..=4 {
            let series = igusa_matrix_factor(d).function.series_in_t(8).unwrap();
            let mut total = BigRational::from_integer(BigInt::from(0));
            for c in &series {
                let v = c.eval(&q, &BigRational::from_integer(BigInt::from(0))).unwrap();
                assert!(v >= BigRational::from_integer(BigInt::from(0)));
                total += v;
                assert!(total <= BigRational::from_integer(BigInt::from(1)));
            }
        }
    }

    #[test]
    fn local_model_examples() {
        assert!(local_zeta_model(&jt(&[1, 1, 1])).function.is_one());
        let two = local_zeta_model(&jt(&[2]));
        assert_eq!(two.factors.len(), 1);
        let p = two.factors[0].provenance.unwrap();
        assert_eq!((p.e, p.s_coeff), (1, 1));
        // d = e = 1: (1 − q⁻²)/(1 − q⁻²T²)
        let expected = RatFun::one()
            .sub(&RatFun::monomial(1, -2, 0))
            .div(&RatFun::one().sub(&RatFun::monomial(1, -2, 2)))
            .unwrap();
        assert_eq!(two.function, expected);
        assert_eq!(two.factors[0].denominators, vec![(2, 2)]);
        let p = local_zeta_model(&jt(&[2, 1])).factors[0].provenance.unwrap();
        assert_eq!((p.e, p.s_coeff), (2, 1));
    }

    #[test]
    fn constant_term_is_unit_volume() {
        // T⁰ coefficient: measure of GL_d(O_E) inside M_d(O_E), one factor per block.
        let model = local_zeta_model(&jt(&[2, 2]));
        let c0 = &model.function.series_in_t(0).unwrap()[0];
        let unit = RatFun::one().sub(&RatFun::monomial(1, -2, 0)).mul(&RatFun::one().sub(&RatFun::monomial(1, -4, 0)));
        assert_eq!(c0, &unit);
    }

    #[test]
    fn scaling_examples() {
        let c = scaling_check(&jt(&[2]), 1).unwrap();
        assert!(c.holds());
        assert_eq!(c.expected, RatFun::monomial(1, -2, 2).to_string());
        let c = scaling_check(&jt(&[3, 1]), 2).unwrap();
        assert!(c.holds());
        assert_eq!(c.expected, RatFun::monomial(1, -20, 12).to_string());
        assert!(scaling_exponent_check(&jt(&[1, 1]), 3));
        assert!(scaling_check(&jt(&[2]), 0).is_err());
    }

    #[test]
    fn scaling_sweep_small() {
        for n in 0..=4 {
            for t in enumerate_orbits(n) {
                for k in 1..=3 {
                    assert!(scaling_exponent_check(&t, k), "{t} k={k}");
                }
            }
        }
    }

    #[test]
    fn model_json_shape() {
        let v = local_zeta_model(&jt(&[2])).to_json(2).unwrap();
        assert_eq!(v["type"], json!([2]));
        assert_eq!(v["table"], json!([{"i": 1, "j": 2, "e": 1, "s_coeff": 1}]));
        assert_eq!(v["series"].as_array().unwrap().len(), 3);
    }

    proptest! {
        #[test]
        fn table_totals_agree(n in 0usize..=12, pick in any::<prop::sample::Index>()) {
            let all = enumerate_orbits(n);
            let t = pick.get(&all);
            let table = exponent_table(t);
            let inv = orbit_dimension(t);
            prop_assert_eq!(table.half_dim, inv.half_dim);
            prop_assert_eq!(table.c, inv.c_exponent);
            prop_assert_eq!(2 * table.table.iter().map(|x| x.d * x.s_coeff).sum::<usize>(), inv.c_exponent);
        }
    }
}
