//! Oracle cross-checks: each combinatorial answer is compared with the exact
//! geometry, and every failure carries a witness.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    in_base_cycle_su, in_open_orbit_su, is_isotropic_flag, is_nondegenerate_flag, is_tau_generic,
    quaternion_iwasawa_reference, sample_until, schubert_cell_membership, standard_reference,
    su_iwasawa_reference, Conjugation, FlagMatrix, FormSpec, Orientation,
};
use crate::homology::RealForm;
use crate::perm::{classify_symmetry, double_factorial_count, factorial, DimensionSequence, Permutation};
use crate::supq::{self, OrbitDescriptor};
use crate::{slmh, slnr};

/// Deliberate corruption of the combinatorial predicate, to show that the
/// suite catches it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// The open-orbit predicate answers the opposite.
    NegatePredicate,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Cell samples tried before escalating.
    pub samples: u64,
    /// Samples tried before a missing open-orbit point counts as a failure.
    pub escalated_samples: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, samples: 20, escalated_samples: 100, fault: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    #[serde(flatten)]
    pub form: RealForm,
    pub dims: DimensionSequence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, cases: usize, witness: Option<String>) -> CheckOutcome {
    CheckOutcome { name: name.to_string(), cases, passed: witness.is_none(), witness }
}

fn equality<T: PartialEq + std::fmt::Debug>(name: &str, got: T, expected: T) -> CheckOutcome {
    let witness = (got != expected).then(|| format!("got {got:?}, expected {expected:?}"));
    check(name, 1, witness)
}

/// Runs `test` on every item in parallel; the witness is the first failure
/// in input order.
fn for_all<T: Sync>(name: &str, items: &[T], test: impl Fn(&T) -> Option<String> + Sync) -> CheckOutcome {
    let failures: Vec<Option<String>> = items.par_iter().map(&test).collect();
    check(name, items.len(), failures.into_iter().flatten().next())
}

/// Minimal representatives for d with the given length, lexicographic.
fn words_of_length(d: &DimensionSequence, length: usize) -> Vec<Permutation> {
    let all: Vec<Permutation> = Permutation::all(d.n()).collect();
    all.into_par_iter()
        .filter(|w| {
            w.inversion_length() == length
                && crate::perm::is_minimal_representative(w, d).unwrap_or(false)
        })
        .collect()
}

fn set_equality(name: &str, got: &[Permutation], filtered: &[Permutation]) -> CheckOutcome {
    let a: BTreeSet<&Permutation> = got.iter().collect();
    let b: BTreeSet<&Permutation> = filtered.iter().collect();
    let witness = a
        .symmetric_difference(&b)
        .next()
        .map(|w| format!("{w} is {}", if a.contains(w) { "enumerated but rejected" } else { "accepted but not enumerated" }));
    check(name, a.len().max(b.len()), witness)
}

/// Predicate ⇔ "some cell sample lies in an open orbit". A true predicate
/// without a generic sample is retried with the escalated sample budget.
fn open_orbit_equivalence(
    name: &str,
    words: &[Permutation],
    opts: &VerifyOptions,
    reference: &FlagMatrix,
    predicate: impl Fn(&Permutation) -> bool + Sync,
    generic: impl Fn(&FlagMatrix) -> bool + Sync,
) -> CheckOutcome {
    for_all(name, words, |w| {
        let predicted = predicate(w) != (opts.fault == Some(Fault::NegatePredicate));
        let seeds = |count: u64| opts.seed..opts.seed + count;
        let mut found = sample_until(w, reference, seeds(opts.samples), &generic).is_some();
        if predicted && !found {
            found = sample_until(w, reference, seeds(opts.escalated_samples), &generic).is_some();
        }
        (predicted != found).then(|| {
            format!(
                "{w}: predicate says {predicted}, sampling {} an open-orbit point",
                if found { "found" } else { "did not find" }
            )
        })
    })
}

/// Checks for SL(n,ℝ) with flag type d.
pub fn verify_slnr(n: usize, d: &DimensionSequence, opts: &VerifyOptions) -> Result<VerifyReport> {
    if d.n() != n {
        return Err(Error::LengthMismatch { word: n, dims: d.n() });
    }
    let reference = standard_reference(n);
    let real_form = FormSpec::Symmetric { n };
    let mut checks = Vec::new();
    let point_ok = |w: &Permutation, flag: &FlagMatrix| -> Option<String> {
        if !schubert_cell_membership(flag, w, &reference) {
            Some(format!("{w}: a point lies outside the cell"))
        } else if !is_isotropic_flag(flag, real_form) {
            Some(format!("{w}: a point is not isotropic"))
        } else if !is_tau_generic(flag, Conjugation::Real) {
            Some(format!("{w}: a point is not τ-generic"))
        } else {
            None
        }
    };

    if d.is_complete() {
        let words = slnr::enumerate_gb(n)?;
        let length = slnr::complementary_length_gb(n);
        checks.push(equality("count n!!", words.len() as u128, double_factorial_count(n)));
        checks.push(for_all("length", &words, |w| {
            (w.inversion_length() != length).then(|| format!("{w} has length {}", w.inversion_length()))
        }));
        let candidates = words_of_length(d, length);
        let filtered: Vec<Permutation> =
            candidates.iter().filter(|w| slnr::double_box_check(w)).cloned().collect();
        checks.push(set_equality("enumeration = double box filter", &words, &filtered));
        let expected = slnr::intersection_count_gb(n) as usize;
        checks.push(for_all("intersection points", &words, |w| {
            let points = match slnr::intersection_points_gb(w) {
                Ok(p) => p,
                Err(e) => return Some(e.to_string()),
            };
            for pt in &points {
                if let Some(bad) = point_ok(w, &pt.flag) {
                    return Some(bad);
                }
            }
            if points.iter().enumerate().any(|(i, a)| points[..i].iter().any(|b| a.flag.same_flag(&b.flag))) {
                return Some(format!("{w}: repeated point"));
            }
            let mut per_class: BTreeMap<Option<Orientation>, usize> = BTreeMap::new();
            for pt in &points {
                *per_class.entry(pt.orientation).or_default() += 1;
            }
            let bad = per_class.values().any(|&c| c != expected)
                || (n % 2 == 0 && per_class.len() != 2)
                || (n % 2 == 1 && per_class.len() != 1);
            bad.then(|| format!("{w}: points per orientation class {per_class:?}, expected {expected}"))
        }));
        checks.push(open_orbit_equivalence(
            "spacing ⇔ open orbit (complementary length)",
            &candidates,
            opts,
            &reference,
            slnr::spacing_check,
            |f| is_tau_generic(f, Conjugation::Real),
        ));
    } else if classify_symmetry(d).is_symmetric() {
        let words = slnr::enumerate_measurable(d)?;
        let length = slnr::complementary_length_gb(n) - slnr::rearrangement_length_drop(d)?;
        checks.push(for_all("length", &words, |w| {
            (w.inversion_length() != length).then(|| format!("{w} has length {}", w.inversion_length()))
        }));
        let candidates = words_of_length(d, length);
        let filtered: Vec<Permutation> = candidates
            .iter()
            .filter(|w| slnr::generalized_double_box_check(w, d).unwrap_or(false))
            .cloned()
            .collect();
        checks.push(set_equality("enumeration = generalized double box filter", &words, &filtered));
        checks.push(for_all("intersection points", &words, |w| {
            let points = match slnr::intersection_points_measurable(w, d) {
                Ok(p) => p,
                Err(e) => return Some(e.to_string()),
            };
            if points.is_empty() {
                return Some(format!("{w}: no points"));
            }
            points.iter().find_map(|pt| point_ok(w, &pt.flag))
        }));
        checks.push(open_orbit_equivalence(
            "generalized spacing ⇔ open orbit (complementary length)",
            &candidates,
            opts,
            &reference,
            |w| slnr::generalized_spacing_check(w, d).unwrap_or(false),
            |f| is_tau_generic(&f.project_to(d).expect("dims"), Conjugation::Real),
        ));
    } else {
        let model = slnr::measurable_model(d);
        let lifts = slnr::enumerate_nonmeasurable_with_lifts(d)?;
        checks.push(for_all("intersection points", &lifts, |(w, what)| {
            let points = match slnr::intersection_points_nonmeasurable(what, &model) {
                Ok(p) => p,
                Err(e) => return Some(e.to_string()),
            };
            if points.is_empty() {
                return Some(format!("{w}: no points"));
            }
            points.iter().find_map(|pt| point_ok(w, &pt.flag))
        }));
        checks.push(for_all("lift merges to the word", &lifts, |(w, what)| {
            (model.project(what).ok().as_ref() != Some(w)).then(|| format!("{what} does not merge to {w}"))
        }));
    }
    Ok(report(RealForm::Slnr { n }, d, None, opts, checks))
}

/// Checks for SL(m,ℍ) on flags of ℂ^{2m} with flag type d.
pub fn verify_slmh(m: usize, d: &DimensionSequence, opts: &VerifyOptions) -> Result<VerifyReport> {
    let n = 2 * m;
    if d.n() != n {
        return Err(Error::LengthMismatch { word: n, dims: d.n() });
    }
    let reference = quaternion_iwasawa_reference(m);
    let form = FormSpec::Symplectic { m };
    let mut checks = Vec::new();
    let point_ok = |w: &Permutation, flag: &FlagMatrix| -> Option<String> {
        if !schubert_cell_membership(flag, w, &reference) {
            Some(format!("{w}: the point lies outside the cell"))
        } else if !is_isotropic_flag(flag, form) {
            Some(format!("{w}: the point is not isotropic"))
        } else if !is_tau_generic(flag, Conjugation::Quaternion) {
            Some(format!("{w}: the point is not j-generic"))
        } else {
            None
        }
    };

    if d.is_complete() {
        let words = slmh::enumerate_gb_h(m)?;
        let length = slmh::complementary_length_gb_h(m);
        checks.push(equality("count m!", words.len() as u128, factorial(m)));
        checks.push(for_all("length", &words, |w| {
            (w.inversion_length() != length).then(|| format!("{w} has length {}", w.inversion_length()))
        }));
        let candidates = words_of_length(d, length);
        let filtered: Vec<Permutation> = candidates
            .iter()
            .filter(|w| slmh::strictly_pairing_check_h(w).unwrap_or(false))
            .cloned()
            .collect();
        checks.push(set_equality("enumeration = strictly pairing filter", &words, &filtered));
        checks.push(for_all("intersection point", &words, |w| match slmh::intersection_point_h(w) {
            Ok(flag) => point_ok(w, &flag),
            Err(e) => Some(e.to_string()),
        }));
        checks.push(open_orbit_equivalence(
            "quaternionic spacing ⇔ open orbit (complementary length)",
            &candidates,
            opts,
            &reference,
            |w| slmh::spacing_check_h(w).unwrap_or(false),
            |f| is_tau_generic(f, Conjugation::Quaternion),
        ));
    } else if classify_symmetry(d).is_symmetric() {
        let words = slmh::enumerate_measurable_h(d)?;
        let length = slmh::complementary_length_gb_h(m) - slmh::rearrangement_length_drop_h(d)?;
        checks.push(for_all("length", &words, |w| {
            (w.inversion_length() != length).then(|| format!("{w} has length {}", w.inversion_length()))
        }));
        let candidates = words_of_length(d, length);
        let filtered: Vec<Permutation> = candidates
            .iter()
            .filter(|w| slmh::generalized_strictly_pairing_check_h(w, d).unwrap_or(false))
            .cloned()
            .collect();
        checks.push(set_equality("enumeration = generalized strictly pairing filter", &words, &filtered));
        checks.push(for_all("intersection point", &words, |w| {
            match slmh::intersection_point_measurable_h(w, d) {
                Ok(flag) => point_ok(w, &flag),
                Err(e) => Some(e.to_string()),
            }
        }));
        checks.push(open_orbit_equivalence(
            "generalized quaternionic spacing ⇔ open orbit (complementary length)",
            &candidates,
            opts,
            &reference,
            |w| slmh::generalized_spacing_check_h(w, d).unwrap_or(false),
            |f| is_tau_generic(&f.project_to(d).expect("dims"), Conjugation::Quaternion),
        ));
    } else {
        let lifts = slmh::enumerate_nonmeasurable_h_with_lifts(d)?;
        let model = slnr::measurable_model(d);
        checks.push(for_all("intersection point", &lifts, |(w, what)| {
            match slmh::intersection_point_measurable_h(what, &model.dhat).and_then(|f| f.project_to(d)) {
                Ok(flag) => point_ok(w, &flag),
                Err(e) => Some(e.to_string()),
            }
        }));
    }
    Ok(report(RealForm::Slmh { m }, d, None, opts, checks))
}

/// Checks for SU(p,q): complete flags when `orbit` is `None`, otherwise the
/// block algorithm for that orbit.
pub fn verify_supq(p: usize, q: usize, orbit: Option<&OrbitDescriptor>, opts: &VerifyOptions) -> Result<VerifyReport> {
    if q == 0 || q > p {
        return Err(Error::Precondition(format!("SU({p},{q}) needs p ≥ q ≥ 1")));
    }
    let n = p + q;
    let reference = su_iwasawa_reference(p, q);
    let mut checks = Vec::new();

    if let Some(desc) = orbit {
        let d = desc.dims();
        let hits = supq::enumerate_for_orbit_gp(desc)?;
        let length = supq::complementary_dimension_su(desc);
        checks.push(for_all("length", &hits, |h| {
            (h.w.inversion_length() != length).then(|| format!("{} has length {}", h.w, h.w.inversion_length()))
        }));
        checks.push(for_all("intersection point", &hits, |h| {
            let flag = h.flag();
            if !schubert_cell_membership(&flag, &h.w, &reference) {
                Some(format!("{}: the point lies outside the cell", h.w))
            } else if !in_base_cycle_su(&flag, p, q, &desc.a, &desc.b) {
                Some(format!("{}: the point is not in the base cycle", h.w))
            } else if !in_open_orbit_su(&flag, p, q, &desc.a, &desc.b) {
                Some(format!("{}: the point is not in the open orbit", h.w))
            } else {
                None
            }
        }));
        let lifted = supq::canonical_lifting(desc);
        let lifted_words: BTreeSet<Permutation> =
            supq::enumerate_for_orbit(&lifted)?.into_iter().map(|h| h.w).collect();
        let drop: usize = desc.a.iter().zip(&desc.b).map(|(a, b)| a * b).sum();
        checks.push(for_all("canonical rearrangement lifts", &hits, |h| {
            let hat = match supq::canonical_rearrangement_su(&h.w, desc) {
                Ok(x) => x,
                Err(e) => return Some(e.to_string()),
            };
            if hat.inversion_length() != h.w.inversion_length() + drop {
                Some(format!("{}: rearrangement {hat} changes length by the wrong amount", h.w))
            } else if !lifted_words.contains(&hat) {
                Some(format!("{}: rearrangement {hat} is not a variety of the lifted orbit {lifted}", h.w))
            } else {
                None
            }
        }));
        return Ok(report(RealForm::Supq { p, q }, &d, Some(supq::sign_sequence_of(desc).to_string()), opts, checks));
    }

    let d = DimensionSequence::ones(n);
    let words = supq::enumerate_i_pq(p, q)?;
    checks.push(equality("count m_q", words.len() as u128, supq::m_q(p, q)));
    checks.push(for_all("length", &words, |w| {
        (w.inversion_length() != p * q).then(|| format!("{w} has length {}", w.inversion_length()))
    }));
    let candidates = words_of_length(&d, p * q);
    let filtered: Vec<Permutation> = candidates
        .iter()
        .filter(|w| supq::strictly_pairing_check_su(w, p, q).unwrap_or(false))
        .cloned()
        .collect();
    checks.push(set_equality("enumeration = strictly pairing filter", &words, &filtered));
    checks.push(for_all("T_w: 2^q points in distinct orbits", &words, |w| {
        let points = match supq::t_w(w, p, q) {
            Ok(x) => x,
            Err(e) => return Some(e.to_string()),
        };
        let orbits: BTreeSet<_> = points.iter().map(|pt| pt.orbit.clone()).collect();
        if points.len() != 1 << q || orbits.len() != points.len() {
            return Some(format!("{w}: {} points in {} orbits", points.len(), orbits.len()));
        }
        points.iter().find_map(|pt| {
            let flag = pt.flag();
            let desc = OrbitDescriptor::from_sign_sequence(&pt.orbit).ok()?;
            if !schubert_cell_membership(&flag, w, &reference) {
                Some(format!("{w}: {} lies outside the cell", pt.point))
            } else if !in_base_cycle_su(&flag, p, q, &desc.a, &desc.b) {
                Some(format!("{w}: {} is not in the base cycle of {}", pt.point, pt.orbit))
            } else if !in_open_orbit_su(&flag, p, q, &desc.a, &desc.b) {
                Some(format!("{w}: {} is not in the orbit {}", pt.point, pt.orbit))
            } else {
                None
            }
        })
    }));

    let orbits = supq::all_sign_sequences(p, q);
    let per_orbit: Vec<Vec<supq::OrbitIntersection>> = orbits
        .par_iter()
        .map(|a| supq::enumerate_for_orbit(a).expect("valid orbit"))
        .collect();
    let total: usize = per_orbit.iter().map(Vec::len).sum();
    checks.push(equality("double counting Σ_α = 2^q·m_q", total as u128, (1u128 << q) * supq::m_q(p, q)));
    let point_sets: BTreeSet<BTreeSet<&Permutation>> =
        per_orbit.iter().map(|hits| hits.iter().map(|h| &h.point).collect()).collect();
    checks.push(check(
        "orbit ↦ point set injective",
        orbits.len(),
        (point_sets.len() != orbits.len()).then(|| format!("{} orbits share {} point sets", orbits.len(), point_sets.len())),
    ));
    let pairs: Vec<(&supq::SignSequence, &supq::OrbitIntersection)> =
        orbits.iter().zip(&per_orbit).flat_map(|(a, hits)| hits.iter().map(move |h| (a, h))).collect();
    checks.push(for_all("per-orbit points", &pairs, |(alpha, h)| {
        let desc = OrbitDescriptor::from_sign_sequence(alpha).ok()?;
        let flag = h.flag();
        if !words.contains(&h.w) {
            Some(format!("{alpha}: {} is not strictly pairing", h.w))
        } else if !schubert_cell_membership(&flag, &h.w, &reference) {
            Some(format!("{alpha}: {} lies outside the cell of {}", h.point, h.w))
        } else if !in_base_cycle_su(&flag, p, q, &desc.a, &desc.b) {
            Some(format!("{alpha}: {} is not in the base cycle", h.point))
        } else if !supq::perm_w(&h.w, p, q).map(|s| s.contains(&h.point)).unwrap_or(false) {
            Some(format!("{alpha}: {} is not in T_w for {}", h.point, h.w))
        } else {
            None
        }
    }));
    checks.push(open_orbit_equivalence(
        "pairing ⇔ open orbit (complementary length)",
        &candidates,
        opts,
        &reference,
        |w| supq::pairing_check(w, p, q).unwrap_or(false),
        |f| is_nondegenerate_flag(f, p, q),
    ));
    Ok(report(RealForm::Supq { p, q }, &d, None, opts, checks))
}

fn report(
    form: RealForm,
    d: &DimensionSequence,
    orbit: Option<String>,
    opts: &VerifyOptions,
    checks: Vec<CheckOutcome>,
) -> VerifyReport {
    VerifyReport { form, dims: d.clone(), orbit, seed: opts.seed, fault: opts.fault, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions::default();
        for n in 2..=4 {
            let r = verify_slnr(n, &DimensionSequence::ones(n), &opts).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = verify_slmh(2, &DimensionSequence::ones(4), &opts).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = verify_supq(2, 1, None, &opts).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn injected_fault_is_caught_with_a_witness() {
        let opts = VerifyOptions { fault: Some(Fault::NegatePredicate), ..Default::default() };
        let r = verify_slnr(3, &DimensionSequence::ones(3), &opts).unwrap();
        assert!(!r.passed());
        let bad = r.checks.iter().find(|c| !c.passed).unwrap();
        assert!(bad.witness.as_ref().unwrap().contains("predicate says"));
    }

    #[test]
    fn reports_are_seed_stable() {
        let opts = VerifyOptions { seed: 7, ..Default::default() };
        let a = verify_supq(2, 1, None, &opts).unwrap();
        let b = verify_supq(2, 1, None, &opts).unwrap();
        assert_eq!(a, b);
    }
}
