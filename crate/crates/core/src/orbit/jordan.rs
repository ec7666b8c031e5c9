use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of n recording the block sizes of a nilpotent σ-linear map.
/// Parts are kept in decreasing order; d_j is the number of parts equal to j.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct JordanType {
    parts: Vec<usize>,
}

impl JordanType {
    /// Builds a type from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        JordanType { parts }
    }

    /// From multiplicities d_1, d_2, … (index 0 holds d_1).
    pub fn from_multiplicities(d: &[usize]) -> Self {
        let mut parts = Vec::new();
        for (idx, &m) in d.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(idx + 1, m));
        }
        JordanType { parts }
    }

    /// The zero orbit (1, …, 1).
    pub fn zero(n: usize) -> Self {
        JordanType { parts: vec![1; n] }
    }

    /// The regular orbit (n).
    pub fn regular(n: usize) -> Self {
        JordanType::new(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Largest block size r (0 for the empty type).
    pub fn r(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// d_j, the number of blocks of size j.
    pub fn d(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&p| p == j).count()
    }

    /// The conjugate partition λ'.
    pub fn dual(&self) -> JordanType {
        let r = self.r();
        JordanType { parts: (1..=r).map(|k| self.parts.iter().filter(|&&p| p >= k).count()).collect() }
    }

    pub fn is_zero_orbit(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// Reads the rank sequence of P_0, P_1, …: the number of blocks of size
    /// ≥ k is rank(P_{k−1}) − rank(P_k).
    pub fn from_rank_sequence(ranks: &[usize]) -> Result<Self> {
        if ranks.last().copied().unwrap_or(0) != 0 {
            return Err(Error::NotNilpotent);
        }
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut parts = Vec::new();
        for (k, &count) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            if count < next {
                return Err(Error::Invalid(format!("rank sequence {ranks:?} is not concave")));
            }
            parts.extend(std::iter::repeat_n(k + 1, count - next));
        }
        Ok(JordanType::new(parts))
    }
}

impl TryFrom<Vec<usize>> for JordanType {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        Ok(JordanType::new(parts))
    }
}

impl From<JordanType> for Vec<usize> {
    fn from(t: JordanType) -> Self {
        t.parts
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for JordanType {
    type Err = Error;

    /// Accepts "3,1", "(3,1)" or "[3,1]"; the empty string is the empty type.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if inner.trim().is_empty() {
            return Ok(JordanType::new(Vec::new()));
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad partition part {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        JordanType::try_from(parts)
    }
}

/// All partitions of n, each once, in descending lexicographic order of
/// their part lists: (n), (n−1,1), …, (1,…,1).
pub fn enumerate_orbits(n: usize) -> Vec<JordanType> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<JordanType>) {
        if remaining == 0 {
            out.push(JordanType { parts: prefix.clone() });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All compositions of n (ordered sequences of positive parts), in
/// lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in 1..=remaining {
            prefix.push(part);
            rec(remaining - part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}
