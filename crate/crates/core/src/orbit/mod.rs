//! Nilpotent σ-conjugacy classes: Jordan types, standard representatives,
//! dimension formulas and their linear-algebra oracles.

mod census;
mod flags;
mod jordan;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::QuadraticField;
use crate::linalg::{bracket_system, is_nilpotent, twisted_rank_sequence, EntryMask, Matrix, TwistedEndo};

pub use census::{gl_order, orbit_census, orbit_census_sampled, CensusEntry, CensusReport, SampledCensus};
pub use flags::{stable_flag_count, FlagCount};
pub use jordan::{compositions, enumerate_orbits, JordanType};

/// Position of the basis block V_j^i (1 ≤ i ≤ j ≤ r, d_j ≥ 1) inside E^n.
///
/// Blocks are ordered by i ascending, then j descending; block (i, j) holds
/// the vectors e^i_{1,j}, …, e^i_{d_j,j}. The representative of a type maps
/// e^i_{k,j} to e^{i−1}_{k,j} and kills e^1_{k,j}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisLayout {
    blocks: Vec<LayoutBlock>,
    n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayoutBlock {
    pub i: usize,
    pub j: usize,
    pub offset: usize,
    pub size: usize,
}

impl BasisLayout {
    pub fn new(t: &JordanType) -> Self {
        let r = t.r();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for i in 1..=r {
            for j in (i..=r).rev() {
                let size = t.d(j);
                if size > 0 {
                    blocks.push(LayoutBlock { i, j, offset, size });
                    offset += size;
                }
            }
        }
        BasisLayout { blocks, n: offset }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[LayoutBlock] {
        &self.blocks
    }

    pub fn block(&self, i: usize, j: usize) -> Option<&LayoutBlock> {
        self.blocks.iter().find(|b| b.i == i && b.j == j)
    }

    /// Index into `blocks()` of the block containing basis vector `v`.
    pub fn block_of(&self, v: usize) -> usize {
        self.blocks.iter().position(|b| v >= b.offset && v < b.offset + b.size).expect("index inside E^n")
    }

    /// Entry mask of all (target, source) pairs for which `pred(target, source)` holds.
    pub fn mask(&self, pred: impl Fn(&LayoutBlock, &LayoutBlock) -> bool) -> EntryMask {
        let owner: Vec<usize> = (0..self.n).map(|v| self.block_of(v)).collect();
        EntryMask::from_fn(self.n, |row, col| pred(&self.blocks[owner[row]], &self.blocks[owner[col]]))
    }
}

/// The representative of `t` in the ordered basis of [`BasisLayout`].
pub fn standard_representative<K: QuadraticField>(k: &K, t: &JordanType) -> TwistedEndo<K::Elem> {
    let layout = BasisLayout::new(t);
    let mut m = Matrix::filled(layout.n(), layout.n(), k.zero());
    for b in layout.blocks().iter().filter(|b| b.i >= 2) {
        let target = layout.block(b.i - 1, b.j).expect("chains are unbroken");
        for s in 0..b.size {
            m.set(target.offset + s, b.offset + s, k.one());
        }
    }
    TwistedEndo::new(m).expect("square by construction")
}

/// Jordan type read off the rank sequence of the twisted powers.
pub fn jordan_type_of<K: QuadraticField>(k: &K, y: &TwistedEndo<K::Elem>) -> Result<JordanType> {
    if !is_nilpotent(k, y) {
        return Err(Error::NotNilpotent);
    }
    JordanType::from_rank_sequence(&twisted_rank_sequence(k, y))
}

/// F-dimension of {Z : Z·Y = Y·σ(Z)}, by row reduction of the 2n²-variable system.
pub fn centralizer_dim_oracle<K: QuadraticField>(k: &K, y: &TwistedEndo<K::Elem>) -> usize {
    bracket_system(k, y, &EntryMask::full(y.dim())).kernel_dim()
}

/// Dimension data of a nilpotent class. All values are F-dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInvariants {
    #[serde(rename = "type")]
    pub jordan_type: JordanType,
    pub dim_orbit_f: usize,
    pub half_dim: usize,
    pub centralizer_dim_f: usize,
    pub c_exponent: usize,
    pub springer_dim_f: usize,
}

/// Σ_{j,j'} d_j d_{j'} min(j, j'), the E-dimension of the centralizer.
pub fn centralizer_dim_e(t: &JordanType) -> usize {
    let parts = t.parts();
    parts.iter().flat_map(|&a| parts.iter().map(move |&b| a.min(b))).sum()
}

/// Σ_k C(λ'_k, 2), the E-dimension of the Springer fibre.
pub fn springer_dim_e(t: &JordanType) -> usize {
    t.dual().parts().iter().map(|&l| l * l.saturating_sub(1) / 2).sum()
}

/// The E-to-F conversion point: every E-dimension passes through here.
pub const fn f_dim(e_dim: usize) -> usize {
    2 * e_dim
}

pub fn orbit_dimension(t: &JordanType) -> OrbitInvariants {
    let n = t.n();
    let centralizer = f_dim(centralizer_dim_e(t));
    let dim_orbit = f_dim(n * n) - centralizer;
    OrbitInvariants {
        jordan_type: t.clone(),
        dim_orbit_f: dim_orbit,
        half_dim: dim_orbit / 2,
        centralizer_dim_f: centralizer,
        c_exponent: t.parts().iter().map(|&j| j * (j - 1)).sum(),
        springer_dim_f: f_dim(springer_dim_e(t)),
    }
}

/// dim H_Y = 2·dim ℬ_Y + dim T, with dim_F T = 2n.
pub fn check_dim_hy(t: &JordanType) -> bool {
    let inv = orbit_dimension(t);
    inv.centralizer_dim_f == 2 * inv.springer_dim_f + f_dim(t.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FiniteQuadratic, QuadElem, RationalQuadratic};
    use crate::linalg::{identity, inverse, sigma_conjugate, zeros};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn jt(parts: &[usize]) -> JordanType {
        JordanType::new(parts.to_vec())
    }

    #[test]
    fn representative_examples() {
        let k = RationalQuadratic::new(2).unwrap();
        let x = standard_representative(&k, &jt(&[2]));
        assert_eq!(x.matrix().to_rows(), vec![vec![k.zero(), k.one()], vec![k.zero(), k.zero()]]);
        assert_eq!(standard_representative(&k, &jt(&[1, 1])).into_matrix(), zeros(&k, 2, 2));
        let x = standard_representative(&k, &jt(&[2, 1]));
        let ones: Vec<(usize, usize)> =
            x.matrix().entries().filter(|(_, _, v)| **v == k.one()).map(|(r, c, _)| (r, c)).collect();
        assert_eq!(ones, vec![(0, 2)]);
        assert_eq!(jordan_type_of(&k, &x).unwrap(), jt(&[2, 1]));
    }

    #[test]
    fn layout_order() {
        let layout = BasisLayout::new(&jt(&[3, 1]));
        let ij: Vec<(usize, usize)> = layout.blocks().iter().map(|b| (b.i, b.j)).collect();
        assert_eq!(ij, vec![(1, 3), (1, 1), (2, 3), (3, 3)]);
        assert_eq!(layout.n(), 4);
        assert_eq!(BasisLayout::new(&jt(&[])).n(), 0);
    }

    #[test]
    fn jordan_type_examples() {
        let k = RationalQuadratic::new(2).unwrap();
        let zero = TwistedEndo::new(zeros(&k, 3, 3)).unwrap();
        assert_eq!(jordan_type_of(&k, &zero).unwrap(), jt(&[1, 1, 1]));
        let generic = TwistedEndo::new(Matrix::from_fn(3, 3, |r, c| {
            if c > r {
                QuadElem::new(r as i64 + 2, c as i64 - 3)
            } else {
                k.zero()
            }
        }))
        .unwrap();
        assert_eq!(jordan_type_of(&k, &generic).unwrap(), jt(&[3]));
        let id = TwistedEndo::new(identity(&k, 2)).unwrap();
        assert_eq!(jordan_type_of(&k, &id).unwrap_err(), Error::NotNilpotent);
    }

    #[test]
    fn representative_roundtrip_up_to_eight() {
        let k = RationalQuadratic::new(3).unwrap();
        let f = FiniteQuadratic::new(2, 1).unwrap();
        for n in 0..=8 {
            for t in enumerate_orbits(n) {
                assert_eq!(jordan_type_of(&k, &standard_representative(&k, &t)).unwrap(), t);
                assert_eq!(jordan_type_of(&f, &standard_representative(&f, &t)).unwrap(), t);
            }
        }
    }

    #[test]
    fn centralizer_oracle_examples() {
        let k = RationalQuadratic::new(2).unwrap();
        assert_eq!(centralizer_dim_oracle(&k, &TwistedEndo::new(zeros(&k, 3, 3)).unwrap()), 18);
        assert_eq!(centralizer_dim_oracle(&k, &standard_representative(&k, &jt(&[2]))), 4);
        assert_eq!(centralizer_dim_oracle(&k, &standard_representative(&k, &jt(&[2, 1]))), 10);
        // Not nilpotent: the identity commutes with Z iff Z = σ(Z), an F-form of gl_2.
        assert_eq!(centralizer_dim_oracle(&k, &TwistedEndo::new(identity(&k, 2)).unwrap()), 4);
    }

    #[test]
    fn centralizer_formula_small() {
        let k = RationalQuadratic::new(2).unwrap();
        let f = FiniteQuadratic::new(3, 1).unwrap();
        for n in 0..=4 {
            for t in enumerate_orbits(n) {
                let expected = orbit_dimension(&t).centralizer_dim_f;
                assert_eq!(centralizer_dim_oracle(&k, &standard_representative(&k, &t)), expected, "{t}");
                assert_eq!(centralizer_dim_oracle(&f, &standard_representative(&f, &t)), expected, "{t}");
            }
        }
    }

    #[test]
    fn orbit_dimension_examples() {
        let zero = orbit_dimension(&jt(&[1, 1, 1]));
        assert_eq!((zero.dim_orbit_f, zero.c_exponent), (0, 0));
        let two = orbit_dimension(&jt(&[2]));
        assert_eq!((two.dim_orbit_f, two.half_dim, two.c_exponent, two.centralizer_dim_f), (4, 2, 2, 4));
        let three_one = orbit_dimension(&jt(&[3, 1]));
        assert_eq!(
            (three_one.dim_orbit_f, three_one.half_dim, three_one.c_exponent, three_one.centralizer_dim_f),
            (20, 10, 6, 12)
        );
        assert_eq!(orbit_dimension(&jt(&[1, 1])).springer_dim_f, 2);
        assert_eq!(orbit_dimension(&jt(&[2])).springer_dim_f, 0);
    }

    #[test]
    fn dim_hy_examples_and_sweep() {
        assert!(check_dim_hy(&jt(&[2])));
        assert!(check_dim_hy(&jt(&[1, 1])));
        assert!(check_dim_hy(&jt(&[2, 1])));
        for n in 0..=12 {
            assert!(enumerate_orbits(n).iter().all(check_dim_hy), "n = {n}");
        }
    }

    #[test]
    fn invariants_serialize() {
        let v = serde_json::to_value(orbit_dimension(&jt(&[2]))).unwrap();
        assert_eq!(v["type"], serde_json::json!([2]));
        assert_eq!(v["dim_orbit_f"], 4);
    }

    fn random_invertible(k: &RationalQuadratic, rng: &mut ChaCha8Rng, n: usize) -> Matrix<QuadElem> {
        loop {
            let h = Matrix::from_fn(n, n, |_, _| k.sample(rng, 9));
            if inverse(k, &h).is_ok() {
                return h;
            }
        }
    }

    #[test]
    fn type_is_conjugation_invariant() {
        let k = RationalQuadratic::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            for t in enumerate_orbits(n) {
                let x = standard_representative(&k, &t);
                for _ in 0..5 {
                    let h = random_invertible(&k, &mut rng, n);
                    let y = sigma_conjugate(&k, &h, &x).unwrap();
                    assert_eq!(jordan_type_of(&k, &y).unwrap(), t);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn dimensions_are_consistent(n in 0usize..=12, pick in any::<prop::sample::Index>()) {
            let all = enumerate_orbits(n);
            let t = pick.get(&all);
            let inv = orbit_dimension(t);
            prop_assert_eq!(inv.dim_orbit_f % 2, 0);
            prop_assert_eq!(inv.dim_orbit_f + inv.centralizer_dim_f, 2 * n * n);
            prop_assert_eq!(centralizer_dim_e(t), t.dual().parts().iter().map(|l| l * l).sum::<usize>());
            prop_assert!(check_dim_hy(t));
        }
    }
}
