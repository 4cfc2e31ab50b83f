//! SL(m,ℍ) acting on flags of ℂ^{2m}: the quaternionic spacing and strictly
//! pairing conditions, the bijection with Σ_m, the single intersection point,
//! and the block versions for partial flags.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::geometry::{quaternion_j, FlagMatrix};
use crate::perm::{DimensionSequence, Permutation};
use crate::slnr::{assemble, nonmeasurable_pipeline, symmetric, BlockPairs, KlSplit};

fn even(w: &Permutation) -> Result<()> {
    if w.n() % 2 != 0 {
        return Err(Error::OddDimension(w.n()));
    }
    Ok(())
}

/// l < k, or k odd with l = k + 1.
fn spaced_pair(k: usize, l: usize) -> bool {
    l < k || (k % 2 == 1 && l == k + 1)
}

fn strict_pair(k: usize, l: usize) -> bool {
    k % 2 == 1 && l == k + 1
}

pub fn spacing_check_h(w: &Permutation) -> Result<bool> {
    even(w)?;
    let s = KlSplit::of(w);
    Ok(s.k.iter().zip(&s.l).all(|(&k, &l)| spaced_pair(k, l)))
}

pub fn strictly_pairing_check_h(w: &Permutation) -> Result<bool> {
    even(w)?;
    let s = KlSplit::of(w);
    Ok(s.k.iter().zip(&s.l).all(|(&k, &l)| strict_pair(k, l)))
}

/// k_i = 2s_i − 1, l_i = k_i + 1: w = k_1 … k_m l_m … l_1.
pub fn sigma_m_to_w(s: &Permutation) -> Permutation {
    let k: Vec<usize> = s.word().iter().map(|&x| 2 * x - 1).collect();
    let l: Vec<usize> = k.iter().map(|&x| x + 1).collect();
    KlSplit { k, l, middle: None }.to_permutation()
}

/// Inverse of [`sigma_m_to_w`] on the first half: s_i = (k_i + 1)/2.
pub fn w_to_sigma_m(w: &Permutation) -> Result<Permutation> {
    even(w)?;
    let word = w.word()[..w.n() / 2].iter().map(|&k| k.div_ceil(2)).collect();
    Permutation::new(word)
}

pub fn enumerate_gb_h(m: usize) -> Result<Vec<Permutation>> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let mut out: Vec<Permutation> = Permutation::all(m).map(|s| sigma_m_to_w(&s)).collect();
    out.sort();
    Ok(out)
}

pub fn complementary_length_gb_h(m: usize) -> usize {
    m * m - m
}

pub fn cycle_dimension_gb_h(m: usize) -> usize {
    m * m
}

/// The flag of (e_{s_1}, …, e_{s_m}, j(e_{s_m}), …, j(e_{s_1})).
pub fn intersection_point_h(w: &Permutation) -> Result<FlagMatrix> {
    if !strictly_pairing_check_h(w)? {
        return Err(Error::Precondition(format!("{w} does not satisfy the strictly pairing condition")));
    }
    let n = w.n();
    let s = w_to_sigma_m(w)?;
    let unit = |i: usize| FlagMatrix::coordinate(n, &[i], vec![1]).map(|f| f.columns()[0].clone());
    let mut columns = Vec::with_capacity(n);
    for &si in s.word() {
        columns.push(unit(si)?);
    }
    for &si in s.word().iter().rev() {
        columns.push(quaternion_j(&unit(si)?));
    }
    FlagMatrix::complete(columns)
}

/// Every block pair admits a matching of B̃_j to B_j by the quaternionic
/// spacing rule (bipartite matching, augmenting paths).
pub fn generalized_spacing_check_h(w: &Permutation, d: &DimensionSequence) -> Result<bool> {
    even(w)?;
    let bp = BlockPairs::of(w, d)?;
    Ok(bp.pairs.iter().all(|(ks, ls)| perfect_matching(ks, ls, spaced_pair)))
}

fn perfect_matching(ks: &[usize], ls: &[usize], allowed: fn(usize, usize) -> bool) -> bool {
    fn augment(
        k: usize,
        ks: &[usize],
        ls: &[usize],
        allowed: fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for (j, &l) in ls.iter().enumerate() {
            if seen[j] || !allowed(ks[k], l) {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|other| augment(other, ks, ls, allowed, seen, owner)) {
                owner[j] = Some(k);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; ls.len()];
    (0..ks.len()).all(|k| augment(k, ks, ls, allowed, &mut vec![false; ls.len()], &mut owner))
}

/// Positional pairing inside each block pair: k odd, l = k + 1.
pub fn generalized_strictly_pairing_check_h(w: &Permutation, d: &DimensionSequence) -> Result<bool> {
    even(w)?;
    let bp = BlockPairs::of(w, d)?;
    Ok(bp
        .pairs
        .iter()
        .all(|(ks, ls)| ks.iter().zip(ls).all(|(&k, &l)| strict_pair(k, l))))
}

/// Block pair j takes d_j of the remaining pairs {2a−1, 2a}; the middle
/// block is whatever is left. Sorted.
pub fn enumerate_measurable_h(d: &DimensionSequence) -> Result<Vec<Permutation>> {
    let c = symmetric(d)?;
    let n = d.n();
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_h(&(1..=n / 2).collect::<Vec<_>>(), &c.core, &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

fn extend_h(free: &[usize], core: &[usize], chosen: &mut Vec<Vec<usize>>, out: &mut Vec<Permutation>) {
    if chosen.len() == core.len() {
        let pairs = chosen
            .iter()
            .map(|c| (c.iter().map(|&a| 2 * a - 1).collect(), c.iter().map(|&a| 2 * a).collect()))
            .collect();
        let middle = free.iter().flat_map(|&a| [2 * a - 1, 2 * a]).collect();
        out.push(assemble(&BlockPairs { pairs, middle: Vec::new() }, middle, false));
        return;
    }
    for pick in free.iter().copied().combinations(core[chosen.len()]) {
        let rest: Vec<usize> = free.iter().copied().filter(|a| !pick.contains(a)).collect();
        chosen.push(pick);
        extend_h(&rest, core, chosen, out);
        chosen.pop();
    }
}

/// ŵ: each B̃_j reversed; middle k'_1 … k'_{e'} becomes
/// k'_1 k'_3 … k'_{e'−1} k'_{e'} … k'_4 k'_2.
pub fn canonical_rearrangement_h(w: &Permutation, d: &DimensionSequence) -> Result<Permutation> {
    if !generalized_strictly_pairing_check_h(w, d)? {
        return Err(Error::Precondition(format!(
            "{} does not satisfy the generalized strictly pairing condition",
            w.grouped(d)
        )));
    }
    let bp = BlockPairs::of(w, d)?;
    let mut middle: Vec<usize> = bp.middle.iter().step_by(2).copied().collect();
    middle.extend(bp.middle.iter().skip(1).step_by(2).rev());
    Ok(assemble(&bp, middle, true))
}

/// Σ d_i(d_i−1)/2 + (e'/2)² − e'/2.
pub fn rearrangement_length_drop_h(d: &DimensionSequence) -> Result<usize> {
    let c = symmetric(d)?;
    let half = c.middle_size() / 2;
    Ok(c.core.iter().map(|&x| x * (x - 1) / 2).sum::<usize>() + half * half - half)
}

/// Words s ∈ Σ_m increasing inside consecutive blocks of lengths
/// (d_1, …, d_s, e'/2).
pub fn increasing_block_words(d: &DimensionSequence) -> Result<Vec<Permutation>> {
    let c = symmetric(d)?;
    let mut lengths = c.core.clone();
    if c.middle_size() > 0 {
        lengths.push(c.middle_size() / 2);
    }
    let m = d.n() / 2;
    Ok(Permutation::all(m)
        .filter(|s| {
            let mut start = 0;
            lengths.iter().all(|&len| {
                let ok = s.word()[start..start + len].windows(2).all(|p| p[0] < p[1]);
                start += len;
                ok
            })
        })
        .collect())
}

/// The single point of S_w for measurable d: the point of ŵ projected.
pub fn intersection_point_measurable_h(w: &Permutation, d: &DimensionSequence) -> Result<FlagMatrix> {
    intersection_point_h(&canonical_rearrangement_h(w, d)?)?.project_to(d)
}

pub fn enumerate_nonmeasurable_h_with_lifts(f: &DimensionSequence) -> Result<Vec<(Permutation, Permutation)>> {
    nonmeasurable_pipeline(f, enumerate_measurable_h)
}

pub fn enumerate_nonmeasurable_h(f: &DimensionSequence) -> Result<Vec<Permutation>> {
    Ok(enumerate_nonmeasurable_h_with_lifts(f)?.into_iter().map(|(w, _)| w).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn d(s: &str) -> DimensionSequence {
        s.parse().unwrap()
    }

    #[test]
    fn quaternionic_spacing_examples() {
        assert!(spacing_check_h(&p("325614")).unwrap());
        assert!(spacing_check_h(&p("315624")).unwrap());
        assert!(!spacing_check_h(&p("1234")).unwrap());
        assert!(spacing_check_h(&p("123")).is_err());
    }

    #[test]
    fn strict_pairing_examples() {
        assert!(strictly_pairing_check_h(&p("315624")).unwrap());
        assert!(!strictly_pairing_check_h(&p("325614")).unwrap());
        assert!(strictly_pairing_check_h(&p("13578642")).unwrap());
    }

    #[test]
    fn sigma_bijection() {
        assert_eq!(sigma_m_to_w(&p("1234")), p("13578642"));
        assert_eq!(sigma_m_to_w(&p("1")), p("12"));
        for s in Permutation::all(5) {
            assert_eq!(w_to_sigma_m(&sigma_m_to_w(&s)).unwrap(), s);
        }
    }

    #[test]
    fn generalized_examples() {
        assert!(generalized_spacing_check_h(&p("1324"), &d("2,2")).unwrap());
        assert!(!generalized_spacing_check_h(&p("1234"), &d("2,2")).unwrap());
        assert!(generalized_strictly_pairing_check_h(&p("1324"), &d("2,2")).unwrap());
        assert!(!generalized_strictly_pairing_check_h(&p("1234"), &d("2,2")).unwrap());
    }

    #[test]
    fn matching_needs_augmenting_paths() {
        // greedy pairing k=1 with l=2 first would strand k=3; the matching
        // (1,2), (3,0→ none) must be found by reassignment
        assert!(perfect_matching(&[1, 3], &[2, 1], spaced_pair));
        assert!(!perfect_matching(&[1, 2], &[3, 4], spaced_pair));
    }

    #[test]
    fn middle_rearrangement() {
        let w = p("1234");
        assert_eq!(canonical_rearrangement_h(&w, &d("4")).unwrap(), p("1342"));
        assert_eq!(rearrangement_length_drop_h(&d("4")).unwrap(), 2);
        assert_eq!(rearrangement_length_drop_h(&d("2")).unwrap(), 0);
    }

    #[test]
    fn corollary_block_words() {
        let a = increasing_block_words(&d("2,1,1,2")).unwrap();
        assert_eq!(a.len(), 3);
        assert!(a.contains(&p("132")));
    }
}
