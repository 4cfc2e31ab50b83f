//! SL(n,ℝ): Schubert varieties of complementary dimension meeting the base
//! cycle of an open orbit, for complete flags, measurable partial flags
//! (symmetric dimension sequences) and non-measurable ones.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{orientation_class, FlagMatrix, GaussianRational, Orientation};
use crate::perm::{
    blocks, classify_symmetry, require_minimal, DimensionSequence, Permutation, SymmetryClassification,
};

/// w = k_1 … k_m [l_*] l_m … l_1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlSplit {
    pub k: Vec<usize>,
    pub l: Vec<usize>,
    pub middle: Option<usize>,
}

impl KlSplit {
    pub fn of(w: &Permutation) -> Self {
        let word = w.word();
        let n = word.len();
        let m = n / 2;
        KlSplit {
            k: word[..m].to_vec(),
            l: (0..m).map(|i| word[n - 1 - i]).collect(),
            middle: (n % 2 == 1).then(|| word[m]),
        }
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut word = self.k.clone();
        word.extend(self.middle);
        word.extend(self.l.iter().rev());
        Permutation::new(word).expect("split of a permutation")
    }
}

pub fn spacing_check(w: &Permutation) -> bool {
    let s = KlSplit::of(w);
    s.k.iter().zip(&s.l).all(|(k, l)| l < k)
}

/// l_i immediately precedes k_i in {1..n} minus the earlier pairs, for each i.
pub fn double_box_check(w: &Permutation) -> bool {
    let s = KlSplit::of(w);
    let mut residual: Vec<usize> = (1..=w.n()).collect();
    for (&k, &l) in s.k.iter().zip(&s.l) {
        if !adjacent_in(&residual, l, k) {
            return false;
        }
        residual.retain(|&x| x != k && x != l);
    }
    true
}

/// `l` sits immediately before `k` in the ordered list.
fn adjacent_in(residual: &[usize], l: usize, k: usize) -> bool {
    residual.windows(2).any(|p| p[0] == l && p[1] == k)
}

/// All ways to pick `count` disjoint adjacent pairs (l, k) from `residual`,
/// in lexicographic order of the chosen positions.
pub(crate) fn adjacent_pair_choices(residual: &[usize], count: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(residual: &[usize], from: usize, count: usize, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if count == 0 {
            out.push(acc.clone());
            return;
        }
        for i in from..residual.len().saturating_sub(1) {
            acc.push((residual[i], residual[i + 1]));
            go(residual, i + 2, count - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(residual, 0, count, &mut Vec::new(), &mut out);
    out
}

/// Immediate-predecessor construction over all choices, sorted.
pub fn enumerate_gb(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if n == 1 {
        return Ok(Vec::new());
    }
    let mut out = enumerate_measurable(&DimensionSequence::ones(n))?;
    out.sort();
    Ok(out)
}

/// m² for n = 2m, m² + m for n = 2m + 1.
pub fn complementary_length_gb(n: usize) -> usize {
    let m = n / 2;
    if n % 2 == 0 {
        m * m
    } else {
        m * m + m
    }
}

pub fn cycle_dimension_gb(n: usize) -> usize {
    let m = n / 2;
    if n % 2 == 0 {
        m * m - m
    } else {
        m * m
    }
}

/// A point of S_w ∩ C_0, tagged with the orientation class of its middle
/// subspace when n is even.
#[derive(Clone, Debug)]
pub struct IntersectionPoint {
    pub flag: FlagMatrix,
    pub orientation: Option<Orientation>,
}

/// All 2^m flags spanned cumulatively by (±i)e_{l_j} + e_{k_j} (j = 1..m),
/// then e_{l_*}, then e_{l_m}, …, e_{l_1}. For even n they split evenly
/// between the two orientation classes.
pub fn intersection_points_gb(w: &Permutation) -> Result<Vec<IntersectionPoint>> {
    if !double_box_check(w) {
        return Err(Error::Precondition(format!("{w} does not satisfy the double box contraction")));
    }
    let n = w.n();
    let s = KlSplit::of(w);
    let m = s.k.len();
    let unit = |i: usize| {
        let mut v = vec![GaussianRational::zero(); n];
        v[i - 1] = GaussianRational::one();
        v
    };
    let mut points = Vec::with_capacity(1 << m);
    for pattern in 0u64..(1u64 << m) {
        let mut columns = Vec::with_capacity(n);
        for j in 0..m {
            let mut v = unit(s.k[j]);
            let sign = if pattern >> (m - 1 - j) & 1 == 0 { 1 } else { -1 };
            v[s.l[j] - 1] = GaussianRational::from_parts(0, 1, sign, 1);
            columns.push(v);
        }
        if let Some(l) = s.middle {
            columns.push(unit(l));
        }
        for j in (0..m).rev() {
            columns.push(unit(s.l[j]));
        }
        let flag = FlagMatrix::complete(columns)?;
        let orientation = orientation_class(&flag);
        points.push(IntersectionPoint { flag, orientation });
    }
    Ok(points)
}

/// Theorem-level point count for complete flags: 2^m (odd n), 2^{m−1} per
/// orientation class (even n).
pub fn intersection_count_gb(n: usize) -> u128 {
    let m = n / 2;
    if n % 2 == 1 {
        1 << m
    } else {
        1 << m.saturating_sub(1)
    }
}

/// Block pairs (B_j, B̃_j) and the middle block of a minimal representative
/// for a symmetric dimension sequence; every block sorted increasingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPairs {
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
    pub middle: Vec<usize>,
}

pub(crate) fn symmetric(d: &DimensionSequence) -> Result<SymmetryClassification> {
    let c = classify_symmetry(d);
    if !c.is_symmetric() {
        return Err(Error::AsymmetricDimensionSequence(d.parts().to_vec()));
    }
    Ok(c)
}

impl BlockPairs {
    pub fn of(w: &Permutation, d: &DimensionSequence) -> Result<Self> {
        let c = symmetric(d)?;
        require_minimal(w, d)?;
        let bl = blocks(w, d)?;
        let s = c.core.len();
        let pairs = (0..s).map(|j| (bl[j].clone(), bl[bl.len() - 1 - j].clone())).collect();
        let middle = if c.middle.is_some() { bl[s].clone() } else { Vec::new() };
        Ok(BlockPairs { pairs, middle })
    }
}

/// For each block pair, B̃_j can be matched to B_j with every l below its k.
/// Greedy: the largest k takes the largest unused smaller l.
pub fn generalized_spacing_check(w: &Permutation, d: &DimensionSequence) -> Result<bool> {
    let bp = BlockPairs::of(w, d)?;
    Ok(bp.pairs.iter().all(|(ks, ls)| {
        let mut free: Vec<usize> = ls.clone();
        for &k in ks.iter().rev() {
            match free.iter().rposition(|&l| l < k) {
                Some(idx) => {
                    free.remove(idx);
                }
                None => return false,
            }
        }
        true
    }))
}

/// Block pair j takes d_j disjoint pairs (l, k), each l the immediate
/// predecessor of its k in the residual after removing earlier block pairs.
pub fn generalized_double_box_check(w: &Permutation, d: &DimensionSequence) -> Result<bool> {
    let bp = BlockPairs::of(w, d)?;
    let mut residual: Vec<usize> = (1..=w.n()).collect();
    for (ks, ls) in &bp.pairs {
        // a matching by consecutive pairs is necessarily positional
        if !ks.iter().zip(ls).all(|(&k, &l)| adjacent_in(&residual, l, k)) {
            return Ok(false);
        }
        residual.retain(|x| !ks.contains(x) && !ls.contains(x));
    }
    Ok(true)
}

/// Rotation of the sorted middle block that turns it into valid
/// immediate-predecessor pairs around l_*.
/// Even e': l'_{e'/2+1}…l'_{e'} l'_1…l'_{e'/2}; odd e': the same split after
/// (e'+1)/2 elements.
fn rotate_middle(middle: &[usize]) -> Vec<usize> {
    let split = middle.len().div_ceil(2);
    let mut out = middle[split..].to_vec();
    out.extend_from_slice(&middle[..split]);
    out
}

/// ŵ: every B̃_j reversed and the middle block rotated; a complete-flag word
/// satisfying the double box contraction.
pub fn canonical_rearrangement(w: &Permutation, d: &DimensionSequence) -> Result<Permutation> {
    if !generalized_double_box_check(w, d)? {
        return Err(Error::Precondition(format!(
            "{} does not satisfy the generalized double box contraction",
            w.grouped(d)
        )));
    }
    let bp = BlockPairs::of(w, d)?;
    Ok(assemble(&bp, rotate_middle(&bp.middle), true))
}

/// B_1 … B_s M B̃_s … B̃_1, with each B̃ reversed when asked.
pub(crate) fn assemble(bp: &BlockPairs, middle: Vec<usize>, reverse_tilde: bool) -> Permutation {
    let mut word: Vec<usize> = bp.pairs.iter().flat_map(|(ks, _)| ks.iter().copied()).collect();
    word.extend(middle);
    for (_, ls) in bp.pairs.iter().rev() {
        if reverse_tilde {
            word.extend(ls.iter().rev());
        } else {
            word.extend(ls.iter());
        }
    }
    Permutation::new(word).expect("blocks partition 1..n")
}

/// Σ d_i(d_i−1)/2 plus (e'/2)² (even e') or (e'−1)(e'+1)/4 (odd e').
pub fn rearrangement_length_drop(d: &DimensionSequence) -> Result<usize> {
    let c = symmetric(d)?;
    let e = c.middle_size();
    let middle = if e % 2 == 0 { (e / 2) * (e / 2) } else { (e - 1) * (e + 1) / 4 };
    Ok(c.core.iter().map(|&x| x * (x - 1) / 2).sum::<usize>() + middle)
}

/// Minimal representatives built by the generalized immediate-predecessor
/// construction, sorted.
pub fn enumerate_measurable(d: &DimensionSequence) -> Result<Vec<Permutation>> {
    let c = symmetric(d)?;
    let n = d.n();
    let residual: Vec<usize> = (1..=n).collect();
    let core = c.core.clone();
    let has_middle = c.middle.is_some();
    let first = match core.first() {
        Some(&d1) => adjacent_pair_choices(&residual, d1),
        None => vec![Vec::new()],
    };
    let mut out: Vec<Permutation> = first
        .into_par_iter()
        .flat_map_iter(|choice| {
            let mut acc = Vec::new();
            let mut chosen = vec![choice.clone()];
            extend_measurable(&residual, &core, has_middle, &mut chosen, &mut acc);
            acc
        })
        .collect();
    out.sort();
    Ok(out)
}

fn extend_measurable(
    full: &[usize],
    core: &[usize],
    has_middle: bool,
    chosen: &mut Vec<Vec<(usize, usize)>>,
    out: &mut Vec<Permutation>,
) {
    let used: Vec<usize> = chosen.iter().flatten().flat_map(|&(l, k)| [l, k]).collect();
    let residual: Vec<usize> = full.iter().copied().filter(|x| !used.contains(x)).collect();
    if chosen.len() == core.len() {
        debug_assert!(has_middle || residual.is_empty());
        let pairs = chosen
            .iter()
            .map(|c| (c.iter().map(|p| p.1).collect(), c.iter().map(|p| p.0).collect()))
            .collect();
        out.push(assemble(&BlockPairs { pairs, middle: Vec::new() }, residual, false));
        return;
    }
    for choice in adjacent_pair_choices(&residual, core[chosen.len()]) {
        chosen.push(choice);
        extend_measurable(full, core, has_middle, chosen, out);
        chosen.pop();
    }
}

/// Verbatim case table: 2^{Σd_i} (e-type, n odd), 2^{m−1} (d-type, n = 2m),
/// 2^{Σd_i−1} (e-type, n even). A sequence with no block pairs (d = (n))
/// is a point and counts 1.
pub fn intersection_count_measurable(d: &DimensionSequence) -> Result<u128> {
    let c = symmetric(d)?;
    let n = d.n();
    let sum: usize = c.core.iter().sum();
    if sum == 0 {
        return Ok(1);
    }
    Ok(match (c.middle.is_some(), n % 2 == 1) {
        (true, true) => 1 << sum,
        (false, _) => 1 << (n / 2 - 1),
        (true, false) => 1 << (sum - 1),
    })
}

/// Intersection points of S_w for measurable d: the points of ŵ projected to
/// type d, with duplicates removed.
pub fn intersection_points_measurable(w: &Permutation, d: &DimensionSequence) -> Result<Vec<IntersectionPoint>> {
    let hat = canonical_rearrangement(w, d)?;
    project_points(&intersection_points_gb(&hat)?, d)
}

pub(crate) fn project_points(points: &[IntersectionPoint], d: &DimensionSequence) -> Result<Vec<IntersectionPoint>> {
    let mut out: Vec<IntersectionPoint> = Vec::new();
    let mut keys = Vec::new();
    for pt in points {
        let flag = pt.flag.project_to(d)?;
        let key = flag.canonical_form();
        if keys.contains(&key) {
            continue;
        }
        keys.push(key);
        let orientation = orientation_class(&flag);
        out.push(IntersectionPoint { flag, orientation });
    }
    Ok(out)
}

/// Common refinement of an asymmetric sequence and its reverse, with the
/// grouping that merges it back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurableModel {
    pub f: DimensionSequence,
    pub dhat: DimensionSequence,
    pub t: Vec<usize>,
    pub delta: Vec<usize>,
}

impl MeasurableModel {
    /// Block-index groups of dhat, one per part of f.
    pub fn groups(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.t
            .iter()
            .map(|&t| {
                let r = start..start + t;
                start += t;
                r
            })
            .collect()
    }

    /// Σ over merged groups of Σ_{h<g} d̂_h d̂_g: the length lost by merging.
    pub fn dimension_drop(&self) -> usize {
        let parts = self.dhat.parts();
        self.groups()
            .into_iter()
            .map(|g| {
                let mut acc = 0;
                for h in g.clone() {
                    for k in h + 1..g.end {
                        acc += parts[h] * parts[k];
                    }
                }
                acc
            })
            .sum()
    }

    /// Minimal representative for f obtained by merging each group's blocks.
    pub fn project(&self, what: &Permutation) -> Result<Permutation> {
        crate::perm::minimal_coset_representative(what, &self.f)
    }
}

pub fn measurable_model(f: &DimensionSequence) -> MeasurableModel {
    let n = f.n();
    let mut cuts: Vec<usize> = f.prefix_sums();
    cuts.extend(f.reversed().prefix_sums());
    cuts.sort_unstable();
    cuts.dedup();
    let mut parts = Vec::with_capacity(cuts.len());
    let mut prev = 0;
    for &c in &cuts {
        parts.push(c - prev);
        prev = c;
    }
    debug_assert_eq!(prev, n);
    let mut t = Vec::new();
    let mut count = 0;
    let f_cuts = f.prefix_sums();
    for &c in &cuts {
        count += 1;
        if f_cuts.contains(&c) {
            t.push(count);
            count = 0;
        }
    }
    let delta = t
        .iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    MeasurableModel {
        f: f.clone(),
        dhat: DimensionSequence::new(parts).expect("positive parts"),
        t,
        delta,
    }
}

/// Inside every merged group, each block lies entirely above the next one:
/// last(B_{i+1}) < first(B_i).
pub fn strictly_decreasing_blocks_check(what: &Permutation, model: &MeasurableModel) -> Result<bool> {
    if model.t.iter().sum::<usize>() != model.dhat.len() {
        return Err(Error::Precondition("grouping does not cover the refined sequence".into()));
    }
    require_minimal(what, &model.dhat)?;
    let bl = blocks(what, &model.dhat)?;
    Ok(model.groups().into_iter().all(|g| {
        (g.start..g.end.saturating_sub(1)).all(|i| bl[i + 1].last() < bl[i].first())
    }))
}

/// Pairs (w, ŵ) for non-measurable f: ŵ ranges over the measurable model's
/// enumeration filtered by the strictly-decreasing-blocks criterion, w is its
/// merge. Sorted by w.
pub fn enumerate_nonmeasurable_with_lifts(f: &DimensionSequence) -> Result<Vec<(Permutation, Permutation)>> {
    nonmeasurable_pipeline(f, enumerate_measurable)
}

pub(crate) fn nonmeasurable_pipeline(
    f: &DimensionSequence,
    measurable: impl Fn(&DimensionSequence) -> Result<Vec<Permutation>>,
) -> Result<Vec<(Permutation, Permutation)>> {
    let model = measurable_model(f);
    let mut out = Vec::new();
    for what in measurable(&model.dhat)? {
        if strictly_decreasing_blocks_check(&what, &model)? {
            out.push((model.project(&what)?, what));
        }
    }
    out.sort();
    Ok(out)
}

pub fn enumerate_nonmeasurable(f: &DimensionSequence) -> Result<Vec<Permutation>> {
    Ok(enumerate_nonmeasurable_with_lifts(f)?.into_iter().map(|(w, _)| w).collect())
}

/// Points of S_w for non-measurable f, carried over from the lifted variety
/// in the measurable model.
pub fn intersection_points_nonmeasurable(what: &Permutation, model: &MeasurableModel) -> Result<Vec<IntersectionPoint>> {
    let pts = intersection_points_measurable(what, &model.dhat)?;
    project_points(&pts, &model.f)
}
