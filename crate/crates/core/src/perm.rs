//! Permutations in one-line notation, dimension sequences and the block
//! bookkeeping shared by all three real forms.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation { n, word });
            }
            seen[v] = true;
        }
        if n == 0 {
            return Err(Error::InvalidPermutation { n, word });
        }
        Ok(Permutation(word))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    pub fn into_word(self) -> Vec<usize> {
        self.0
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// 1-based position of value `v`.
    pub fn position(&self, v: usize) -> usize {
        self.0.iter().position(|&x| x == v).expect("value in range") + 1
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn inversion_length(&self) -> usize {
        inversion_length(self)
    }

    /// Space-separated text, the interchange form used in JSON.
    pub fn spaced(&self) -> String {
        join(&self.0, " ")
    }

    /// Block-grouped rendering such as `(24)(6)(78)(5)(13)`.
    pub fn grouped(&self, d: &DimensionSequence) -> String {
        let sep = if self.n() <= 9 { "" } else { " " };
        let mut out = String::new();
        let mut start = 0;
        for &part in d.parts() {
            out.push('(');
            out.push_str(&join(&self.0[start..start + part], sep));
            out.push(')');
            start += part;
        }
        out
    }

    /// Every permutation of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        use itertools::Itertools;
        (1..=n).permutations(n).map(Permutation)
    }
}

fn join(values: &[usize], sep: &str) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for Permutation {
    /// Concatenated digits for n ≤ 9, space-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() <= 9 { "" } else { " " };
        f.write_str(&join(&self.0, sep))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts "2 4 3 1", "2,4,3,1", "(2 4)(3 1)" and unseparated digit
    /// strings such as "2431" or "(24)(31)" (one digit per letter).
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .map(|c| if matches!(c, '(' | ')' | ',' | '|') { ' ' } else { c })
            .collect();
        let tokens: Vec<&str> = cleaned.split_whitespace().collect();
        let separated = s.chars().any(|c| c.is_whitespace() || c == ',');
        let word: Vec<usize> = if !separated {
            cleaned
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    c.to_digit(10)
                        .map(|v| v as usize)
                        .ok_or_else(|| Error::Parse(format!("bad permutation entry {c:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad permutation entry {t:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.spaced())
    }
}

impl<'de> serde::Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Ordered block sizes `d_1..d_s` of a parabolic subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DimensionSequence(Vec<usize>);

impl TryFrom<Vec<usize>> for DimensionSequence {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        DimensionSequence::new(parts)
    }
}

impl From<DimensionSequence> for Vec<usize> {
    fn from(d: DimensionSequence) -> Self {
        d.0
    }
}

impl DimensionSequence {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidDimensionSequence(parts));
        }
        Ok(DimensionSequence(parts))
    }

    /// The complete-flag sequence `(1,…,1)`.
    pub fn ones(n: usize) -> Self {
        DimensionSequence(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Cumulative dimensions δ_1 < … < δ_s = n.
    pub fn prefix_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &d| {
                *acc += d;
                Some(*acc)
            })
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.0.iter().all(|&d| d == 1)
    }

    pub fn reversed(&self) -> Self {
        DimensionSequence(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for DimensionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0, ","))
    }
}

impl FromStr for DimensionSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad dimension entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DimensionSequence::new(parts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryKind {
    SymmetricD,
    SymmetricE,
    Asymmetric,
}

/// Palindromic structure of a dimension sequence: `(core, core reversed)` for
/// the d-type, `(core, e', core reversed)` for the e-type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryClassification {
    pub kind: SymmetryKind,
    /// Half-sequence d_1..d_s; the full sequence when asymmetric.
    pub core: Vec<usize>,
    pub middle: Option<usize>,
}

impl SymmetryClassification {
    pub fn reconstruct(&self) -> Vec<usize> {
        match self.kind {
            SymmetryKind::Asymmetric => self.core.clone(),
            _ => {
                let mut parts = self.core.clone();
                parts.extend(self.middle);
                parts.extend(self.core.iter().rev());
                parts
            }
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.kind != SymmetryKind::Asymmetric
    }

    /// e' as a number, zero for the d-type.
    pub fn middle_size(&self) -> usize {
        self.middle.unwrap_or(0)
    }
}

pub fn inversion_length(w: &Permutation) -> usize {
    let word = w.word();
    let mut count = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                count += 1;
            }
        }
    }
    count
}

fn check_lengths(w: &Permutation, d: &DimensionSequence) -> Result<()> {
    if w.n() != d.n() {
        return Err(Error::LengthMismatch { word: w.n(), dims: d.n() });
    }
    Ok(())
}

/// Values of `w` in each block of positions, in position order.
pub fn blocks(w: &Permutation, d: &DimensionSequence) -> Result<Vec<Vec<usize>>> {
    check_lengths(w, d)?;
    let mut out = Vec::with_capacity(d.len());
    let mut start = 0;
    for &part in d.parts() {
        out.push(w.word()[start..start + part].to_vec());
        start += part;
    }
    Ok(out)
}

pub fn minimal_coset_representative(w: &Permutation, d: &DimensionSequence) -> Result<Permutation> {
    let word = blocks(w, d)?
        .into_iter()
        .flat_map(|mut b| {
            b.sort_unstable();
            b
        })
        .collect();
    Ok(Permutation(word))
}

pub fn is_minimal_representative(w: &Permutation, d: &DimensionSequence) -> Result<bool> {
    Ok(blocks(w, d)?.iter().all(|b| b.windows(2).all(|p| p[0] < p[1])))
}

pub(crate) fn require_minimal(w: &Permutation, d: &DimensionSequence) -> Result<()> {
    if !is_minimal_representative(w, d)? {
        return Err(Error::NotMinimalRepresentative(w.grouped(d)));
    }
    Ok(())
}

pub fn schubert_cell_dimension(w: &Permutation, d: &DimensionSequence) -> Result<usize> {
    Ok(minimal_coset_representative(w, d)?.inversion_length())
}

pub fn flag_manifold_dimension(d: &DimensionSequence) -> usize {
    let parts = d.parts();
    let mut dim = 0;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            dim += parts[i] * parts[j];
        }
    }
    dim
}

pub fn classify_symmetry(d: &DimensionSequence) -> SymmetryClassification {
    let parts = d.parts();
    let s = parts.len();
    let palindrome = parts.iter().eq(parts.iter().rev());
    if !palindrome {
        return SymmetryClassification {
            kind: SymmetryKind::Asymmetric,
            core: parts.to_vec(),
            middle: None,
        };
    }
    let core = parts[..s / 2].to_vec();
    if s % 2 == 0 {
        SymmetryClassification { kind: SymmetryKind::SymmetricD, core, middle: None }
    } else {
        SymmetryClassification {
            kind: SymmetryKind::SymmetricE,
            core,
            middle: Some(parts[s / 2]),
        }
    }
}

/// n!! in the convention (n−1)(n−3)…1 used for the SL(n,ℝ) count.
pub fn double_factorial_count(n: usize) -> u128 {
    let mut acc: u128 = 1;
    let mut k = n.saturating_sub(1);
    while k > 1 {
        acc *= k as u128;
        k = k.saturating_sub(2);
    }
    acc
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
