//! Standard and X-adapted parabolics, the rank criterion for induced orbits
//! and induction by certified sampling.

mod induce;

use crate::error::{Error, Result};
use crate::field::QuadraticField;
use crate::linalg::{bracket_system, mat_add, EntryMask, Matrix, TwistedEndo};
use crate::orbit::{BasisLayout, JordanType, LayoutBlock};

pub use induce::{induce_orbit, richardson_type, verify_porb, InduceConfig, Induction, PorbReport};

/// Parabolic stabilizing the standard flag with block sizes `composition`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicShape {
    composition: Vec<usize>,
    m: EntryMask,
    n_up: EntryMask,
    n_down: EntryMask,
}

impl ParabolicShape {
    pub fn composition(&self) -> &[usize] {
        &self.composition
    }

    pub fn n(&self) -> usize {
        self.composition.iter().sum()
    }

    /// 𝔰_M, the block diagonal.
    pub fn m_mask(&self) -> &EntryMask {
        &self.m
    }

    /// 𝔰_N, blocks above the diagonal.
    pub fn n_mask(&self) -> &EntryMask {
        &self.n_up
    }

    /// 𝔰_{N̄}, blocks below the diagonal.
    pub fn nbar_mask(&self) -> &EntryMask {
        &self.n_down
    }

    /// 𝔭 = 𝔪 ⊕ 𝔫.
    pub fn p_mask(&self) -> EntryMask {
        self.m.union(&self.n_up)
    }

    /// Block diagonal matrix from one square block per part.
    pub fn block_diagonal<T: Clone>(&self, zero: T, blocks: &[Matrix<T>]) -> Result<Matrix<T>> {
        if blocks.len() != self.composition.len()
            || blocks.iter().zip(&self.composition).any(|(b, &s)| b.rows() != s || b.cols() != s)
        {
            return Err(Error::ShapeMismatch("blocks do not match the composition".into()));
        }
        let mut m = Matrix::filled(self.n(), self.n(), zero);
        let mut offset = 0;
        for b in blocks {
            for (r, c, v) in b.entries() {
                m.set(offset + r, offset + c, v.clone());
            }
            offset += b.rows();
        }
        Ok(m)
    }
}

pub fn standard_parabolic(composition: &[usize]) -> Result<ParabolicShape> {
    if composition.contains(&0) {
        return Err(Error::BadComposition(format!("{composition:?} has a zero part")));
    }
    let owner: Vec<usize> =
        composition.iter().enumerate().flat_map(|(b, &size)| std::iter::repeat_n(b, size)).collect();
    let n = owner.len();
    Ok(ParabolicShape {
        composition: composition.to_vec(),
        m: EntryMask::from_fn(n, |r, c| owner[r] == owner[c]),
        n_up: EntryMask::from_fn(n, |r, c| owner[r] < owner[c]),
        n_down: EntryMask::from_fn(n, |r, c| owner[r] > owner[c]),
    })
}

/// Like [`standard_parabolic`], also checking that the parts sum to `n`.
pub fn standard_parabolic_of(n: usize, composition: &[usize]) -> Result<ParabolicShape> {
    let total: usize = composition.iter().sum();
    if total != n {
        return Err(Error::BadComposition(format!("{composition:?} does not sum to {n}")));
    }
    standard_parabolic(composition)
}

/// The parabolic attached to a Jordan type through its basis layout.
///
/// Entry masks are indexed (target, source). 𝔫 maps block (i, j) to
/// (i', j') when i > i', or i = i' and j < j'; 𝔲_X keeps the maps from
/// blocks with i ≥ 2 to blocks with i' < i − 1, or i' = i − 1 and j' > j.
#[derive(Clone, Debug)]
pub struct AdaptedParabolic {
    jordan_type: JordanType,
    layout: BasisLayout,
    m: EntryMask,
    n: EntryMask,
    u: EntryMask,
}

fn in_n(target: &LayoutBlock, source: &LayoutBlock) -> bool {
    source.i > target.i || (source.i == target.i && source.j < target.j)
}

fn in_u(target: &LayoutBlock, source: &LayoutBlock) -> bool {
    source.i >= 2 && (source.i - 1 > target.i || (source.i == target.i + 1 && source.j < target.j))
}

impl AdaptedParabolic {
    pub fn new(t: &JordanType) -> Self {
        let layout = BasisLayout::new(t);
        AdaptedParabolic {
            jordan_type: t.clone(),
            m: layout.mask(|a, b| a.i == b.i && a.j == b.j),
            n: layout.mask(in_n),
            u: layout.mask(in_u),
            layout,
        }
    }

    pub fn jordan_type(&self) -> &JordanType {
        &self.jordan_type
    }

    pub fn layout(&self) -> &BasisLayout {
        &self.layout
    }

    pub fn m_mask(&self) -> &EntryMask {
        &self.m
    }

    pub fn n_mask(&self) -> &EntryMask {
        &self.n
    }

    pub fn u_mask(&self) -> &EntryMask {
        &self.u
    }

    pub fn u_dim_f(&self) -> usize {
        self.u.dim_f()
    }

    /// dim_F 𝔲_X summed block by block: 2·d_j·d_{j'} over qualifying pairs.
    pub fn u_dim_by_blocks(&self) -> usize {
        let blocks = self.layout.blocks();
        blocks.iter().flat_map(|s| blocks.iter().filter(move |t| in_u(t, s)).map(move |t| 2 * s.size * t.size)).sum()
    }

    /// The standard parabolic with the layout block sizes as composition.
    pub fn shape(&self) -> ParabolicShape {
        let sizes: Vec<usize> = self.layout.blocks().iter().map(|b| b.size).collect();
        standard_parabolic(&sizes).expect("layout blocks are nonempty")
    }

    /// Embeds (g_j) ∈ Π_j GL_{d_j}(E) into M by putting σ^{j−i}(g_j) in
    /// block (i, j). `gs[j − 1]` is g_j and must be d_j × d_j.
    pub fn embed_mx<K: QuadraticField>(&self, k: &K, gs: &[Matrix<K::Elem>]) -> Result<Matrix<K::Elem>> {
        let t = &self.jordan_type;
        if gs.len() != t.r() || gs.iter().enumerate().any(|(idx, g)| g.rows() != t.d(idx + 1) || !g.is_square()) {
            return Err(Error::ShapeMismatch("M_X needs one d_j × d_j matrix per j".into()));
        }
        let mut m = Matrix::filled(self.layout.n(), self.layout.n(), k.zero());
        for b in self.layout.blocks() {
            let mut g = gs[b.j - 1].clone();
            for _ in 0..(b.j - b.i) % 2 {
                g = g.map(|x| k.sigma(x));
            }
            for (r, c, v) in g.entries() {
                m.set(b.offset + r, b.offset + c, v.clone());
            }
        }
        Ok(m)
    }
}

pub fn adapted_parabolic(t: &JordanType) -> AdaptedParabolic {
    AdaptedParabolic::new(t)
}

/// F-dimension of {Z ∈ 𝔫 : [Z, X] = 0} for the standard representative X.
pub fn n_x_dim_oracle<K: QuadraticField>(k: &K, t: &JordanType) -> usize {
    let x = crate::orbit::standard_representative(k, t);
    bracket_system(k, &x, AdaptedParabolic::new(t).n_mask()).kernel_dim()
}

/// The ranks entering the induction criterion.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RankData {
    /// rank_F of Z ∈ 𝔭 ↦ [Z, X + Y].
    pub rank_p: usize,
    /// rank_F of Z ∈ 𝔪 ↦ [Z, X], the tangent space of the M-orbit of X.
    pub rank_m: usize,
    pub dim_s_n: usize,
}

impl RankData {
    pub fn holds(&self) -> bool {
        self.rank_p == self.rank_m + self.dim_s_n
    }
}

pub fn rank_data<K: QuadraticField>(
    k: &K,
    p: &ParabolicShape,
    x: &TwistedEndo<K::Elem>,
    y: &TwistedEndo<K::Elem>,
) -> Result<RankData> {
    if x.dim() != p.n() || y.dim() != p.n() {
        return Err(Error::ShapeMismatch("operands differ from the parabolic size".into()));
    }
    if !p.m_mask().supports(k, x.matrix()) {
        return Err(Error::SupportViolation("X has entries outside s_M".into()));
    }
    if !p.n_mask().supports(k, y.matrix()) {
        return Err(Error::SupportViolation("Y has entries outside s_N".into()));
    }
    let xy = TwistedEndo::new(mat_add(k, x.matrix(), y.matrix()))?;
    Ok(RankData {
        rank_p: bracket_system(k, &xy, &p.p_mask()).rank(),
        rank_m: bracket_system(k, x, p.m_mask()).rank(),
        dim_s_n: p.n_mask().dim_f(),
    })
}

/// True iff [𝔭, X + Y] has the dimension of [𝔪, X] ⊕ 𝔰_N.
pub fn rank_criterion<K: QuadraticField>(
    k: &K,
    p: &ParabolicShape,
    x: &TwistedEndo<K::Elem>,
    y: &TwistedEndo<K::Elem>,
) -> Result<bool> {
    rank_data(k, p, x, y).map(|d| d.holds())
}
