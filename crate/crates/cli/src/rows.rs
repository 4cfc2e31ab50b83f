//! Row types shared by the JSON and CSV encodings. Flags travel as their
//! JSON encoding inside a string so both formats carry identical rows.

use anyhow::Result;
use flagslice::geometry::{FlagMatrix, Orientation};
use flagslice::homology::{HomologyExpansion, RealForm};
use flagslice::perm::{classify_symmetry, double_factorial_count, factorial};
use flagslice::slnr::{self, IntersectionPoint};
use flagslice::supq::{self, SignSequence};
use flagslice::{slmh, Permutation};
use rayon::prelude::*;
use serde::Serialize;

use crate::Resolved;

pub(crate) trait Table {
    fn json(&self) -> Result<Vec<u8>>;
    fn csv(&self) -> Result<Vec<u8>>;
}

impl<T: Serialize> Table for Vec<T> {
    fn json(&self) -> Result<Vec<u8>> {
        let mut buf = serde_json::to_vec_pretty(self)?;
        buf.push(b'\n');
        Ok(buf)
    }

    fn csv(&self) -> Result<Vec<u8>> {
        csv_of(self)
    }
}

pub(crate) fn csv_of<T: Serialize>(rows: &[T]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(w.into_inner()?)
}

#[derive(Serialize)]
pub(crate) struct EnumerateRow {
    index: usize,
    word: Permutation,
    display: String,
    length: usize,
    /// Lifted word in the measurable model (non-measurable types only).
    lift: Option<Permutation>,
}

#[derive(Serialize)]
pub(crate) struct PointRow {
    word: Permutation,
    point: usize,
    orbit: Option<SignSequence>,
    orientation: Option<&'static str>,
    flag: String,
}

#[derive(Serialize)]
pub(crate) struct CountRow {
    count: u128,
}

#[derive(Serialize)]
pub(crate) struct HomologyRow {
    coefficient: u128,
    class: Permutation,
}

fn display(w: &Permutation, r: &Resolved) -> String {
    if r.dims.is_complete() {
        w.to_string()
    } else {
        w.grouped(&r.dims)
    }
}

/// Words with their measurable-model lifts where applicable.
fn words(r: &Resolved) -> flagslice::Result<Vec<(Permutation, Option<Permutation>)>> {
    let d = &r.dims;
    let symmetric = classify_symmetry(d).is_symmetric();
    let plain = |v: Vec<Permutation>| v.into_iter().map(|w| (w, None)).collect();
    let lifted = |v: Vec<(Permutation, Permutation)>| v.into_iter().map(|(w, h)| (w, Some(h))).collect();
    Ok(match r.form {
        RealForm::Slnr { n } if d.is_complete() => plain(slnr::enumerate_gb(n)?),
        RealForm::Slnr { .. } if symmetric => plain(slnr::enumerate_measurable(d)?),
        RealForm::Slnr { .. } => lifted(slnr::enumerate_nonmeasurable_with_lifts(d)?),
        RealForm::Slmh { m } if d.is_complete() => plain(slmh::enumerate_gb_h(m)?),
        RealForm::Slmh { .. } if symmetric => plain(slmh::enumerate_measurable_h(d)?),
        RealForm::Slmh { .. } => lifted(slmh::enumerate_nonmeasurable_h_with_lifts(d)?),
        RealForm::Supq { p, q } => match &r.orbit {
            None => plain(supq::enumerate_i_pq(p, q)?),
            Some(o) => plain(supq::enumerate_for_orbit_gp(o)?.into_iter().map(|h| h.w).collect()),
        },
    })
}

pub(crate) fn enumerate(r: &Resolved) -> flagslice::Result<Vec<EnumerateRow>> {
    Ok(words(r)?
        .into_iter()
        .enumerate()
        .map(|(index, (w, lift))| EnumerateRow {
            index,
            display: display(&w, r),
            length: w.inversion_length(),
            word: w,
            lift,
        })
        .collect())
}

fn orientation(o: Option<Orientation>) -> Option<&'static str> {
    o.map(|o| match o {
        Orientation::Positive => "positive",
        Orientation::Negative => "negative",
    })
}

fn flag_json(f: &FlagMatrix) -> String {
    serde_json::to_string(f).expect("flags serialize")
}

pub(crate) fn points(r: &Resolved) -> flagslice::Result<Vec<PointRow>> {
    let d = &r.dims;
    let real = |w: &Permutation, pts: Vec<IntersectionPoint>| -> Vec<PointRow> {
        pts.into_iter()
            .enumerate()
            .map(|(i, pt)| PointRow {
                word: w.clone(),
                point: i,
                orbit: None,
                orientation: orientation(pt.orientation),
                flag: flag_json(&pt.flag),
            })
            .collect()
    };
    let single = |w: &Permutation, flag: FlagMatrix, orbit: Option<SignSequence>| PointRow {
        word: w.clone(),
        point: 0,
        orbit,
        orientation: None,
        flag: flag_json(&flag),
    };
    if let (RealForm::Supq { .. }, Some(o)) = (r.form, &r.orbit) {
        let alpha = supq::sign_sequence_of(o);
        return Ok(supq::enumerate_for_orbit_gp(o)?
            .into_par_iter()
            .map(|h| single(&h.w, h.flag(), Some(alpha.clone())))
            .collect());
    }
    let words = words(r)?;
    let model = slnr::measurable_model(d);
    let per_word: Vec<flagslice::Result<Vec<PointRow>>> = words
        .par_iter()
        .map(|(w, lift)| -> flagslice::Result<Vec<PointRow>> {
            Ok(match (r.form, lift) {
                (RealForm::Slnr { .. }, None) if d.is_complete() => real(w, slnr::intersection_points_gb(w)?),
                (RealForm::Slnr { .. }, None) => real(w, slnr::intersection_points_measurable(w, d)?),
                (RealForm::Slnr { .. }, Some(h)) => real(w, slnr::intersection_points_nonmeasurable(h, &model)?),
                (RealForm::Slmh { .. }, None) if d.is_complete() => vec![single(w, slmh::intersection_point_h(w)?, None)],
                (RealForm::Slmh { .. }, None) => vec![single(w, slmh::intersection_point_measurable_h(w, d)?, None)],
                (RealForm::Slmh { .. }, Some(h)) => {
                    let flag = slmh::intersection_point_measurable_h(h, &model.dhat)?.project_to(d)?;
                    vec![single(w, flag, None)]
                }
                (RealForm::Supq { p, q }, _) => supq::t_w(w, p, q)?
                    .into_iter()
                    .enumerate()
                    .map(|(i, pt)| PointRow {
                        word: w.clone(),
                        point: i,
                        orbit: Some(pt.orbit.clone()),
                        orientation: None,
                        flag: flag_json(&pt.flag()),
                    })
                    .collect(),
            })
        })
        .collect();
    let mut out = Vec::new();
    for rows in per_word {
        out.extend(rows?);
    }
    Ok(out)
}

pub(crate) fn count(r: &Resolved) -> flagslice::Result<Vec<CountRow>> {
    let count = match (r.form, &r.orbit) {
        (RealForm::Slnr { n }, _) if r.dims.is_complete() && n >= 2 => double_factorial_count(n),
        (RealForm::Slmh { m }, _) if r.dims.is_complete() => factorial(m),
        (RealForm::Supq { p, q }, None) => supq::m_q(p, q),
        _ => words(r)?.len() as u128,
    };
    Ok(vec![CountRow { count }])
}

pub(crate) fn homology_rows(e: &HomologyExpansion) -> Vec<HomologyRow> {
    e.classes
        .iter()
        .map(|w| HomologyRow { coefficient: e.coefficient, class: w.clone() })
        .collect()
}

#[derive(Serialize)]
pub(crate) struct CheckRow<'a> {
    name: &'a str,
    cases: usize,
    passed: bool,
    witness: Option<&'a str>,
}

pub(crate) fn check_rows(checks: &[flagslice::verify::CheckOutcome]) -> Vec<CheckRow<'_>> {
    checks
        .iter()
        .map(|c| CheckRow { name: &c.name, cases: c.cases, passed: c.passed, witness: c.witness.as_deref() })
        .collect()
}
