//! Homology classes of base cycles as coefficient · Σ Schubert classes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{classify_symmetry, DimensionSequence, Permutation};
use crate::supq::{enumerate_for_orbit_gp, enumerate_i_pq, sign_sequence_of, OrbitDescriptor};
use crate::{slmh, slnr};

/// The real form together with its size parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum RealForm {
    Slnr { n: usize },
    /// SL(m,ℍ) acting on flags of ℂ^{2m}.
    Slmh { m: usize },
    Supq { p: usize, q: usize },
}

impl RealForm {
    pub fn n(&self) -> usize {
        match *self {
            RealForm::Slnr { n } => n,
            RealForm::Slmh { m } => 2 * m,
            RealForm::Supq { p, q } => p + q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionContext {
    #[serde(flatten)]
    pub form: RealForm,
    pub dims: DimensionSequence,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyExpansion {
    pub coefficient: u128,
    pub classes: Vec<Permutation>,
    pub context: ExpansionContext,
}

/// [C_0] for the given form and flag type. SU(p,q) needs the orbit.
pub fn base_cycle_class(
    form: RealForm,
    d: &DimensionSequence,
    orbit: Option<&OrbitDescriptor>,
) -> Result<HomologyExpansion> {
    if d.n() != form.n() {
        return Err(Error::LengthMismatch { word: form.n(), dims: d.n() });
    }
    let (coefficient, classes, label) = match form {
        RealForm::Slnr { .. } => {
            if classify_symmetry(d).is_symmetric() {
                (slnr::intersection_count_measurable(d)?, slnr::enumerate_measurable(d)?, None)
            } else {
                let model = slnr::measurable_model(d);
                (
                    slnr::intersection_count_measurable(&model.dhat)?,
                    slnr::enumerate_nonmeasurable(d)?,
                    None,
                )
            }
        }
        RealForm::Slmh { .. } => {
            let classes = if classify_symmetry(d).is_symmetric() {
                slmh::enumerate_measurable_h(d)?
            } else {
                slmh::enumerate_nonmeasurable_h(d)?
            };
            (1, classes, None)
        }
        RealForm::Supq { p, q } => {
            let desc = orbit.ok_or_else(|| Error::InvalidOrbit("SU(p,q) base cycles need an orbit".into()))?;
            if (desc.p, desc.q) != (p, q) || desc.dims() != *d {
                return Err(Error::InvalidOrbit(format!(
                    "orbit {} does not belong to SU({p},{q}) with dims {d}",
                    sign_sequence_of(desc)
                )));
            }
            let classes = enumerate_for_orbit_gp(desc)?.into_iter().map(|h| h.w).collect();
            (1, classes, Some(sign_sequence_of(desc).to_string()))
        }
    };
    Ok(HomologyExpansion {
        coefficient,
        classes,
        context: ExpansionContext { form, dims: d.clone(), orbit: label },
    })
}

/// [𝒞] = 2^q Σ_{S ∈ ℐ_{p,q}} [S].
pub fn total_cycle_class_su(p: usize, q: usize) -> Result<HomologyExpansion> {
    Ok(HomologyExpansion {
        coefficient: 1 << q,
        classes: enumerate_i_pq(p, q)?,
        context: ExpansionContext {
            form: RealForm::Supq { p, q },
            dims: DimensionSequence::ones(p + q),
            orbit: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::double_factorial_count;

    #[test]
    fn real_complete_flags() {
        let e = base_cycle_class(RealForm::Slnr { n: 5 }, &DimensionSequence::ones(5), None).unwrap();
        assert_eq!(e.coefficient, 4);
        assert_eq!(e.classes.len() as u128, double_factorial_count(5));
        let e = base_cycle_class(RealForm::Slnr { n: 6 }, &DimensionSequence::ones(6), None).unwrap();
        assert_eq!(e.coefficient, 4);
        assert_eq!(e.classes.len(), 15);
    }

    #[test]
    fn quaternionic_coefficient_is_one() {
        let e = base_cycle_class(RealForm::Slmh { m: 3 }, &DimensionSequence::ones(6), None).unwrap();
        assert_eq!(e.coefficient, 1);
        assert_eq!(e.classes.len(), 6);
    }

    #[test]
    fn total_cycle() {
        let e = total_cycle_class_su(3, 2).unwrap();
        assert_eq!((e.coefficient, e.classes.len()), (4, 8));
        let e = total_cycle_class_su(4, 2).unwrap();
        assert_eq!((e.coefficient, e.classes.len()), (4, 15));
        let e = total_cycle_class_su(3, 0).unwrap();
        assert_eq!((e.coefficient, e.classes.len()), (1, 1));
    }

    #[test]
    fn su_needs_matching_orbit() {
        let d = DimensionSequence::ones(5);
        assert!(base_cycle_class(RealForm::Supq { p: 3, q: 2 }, &d, None).is_err());
        let desc = OrbitDescriptor::from_sign_sequence(&"+-+-+".parse().unwrap()).unwrap();
        let e = base_cycle_class(RealForm::Supq { p: 3, q: 2 }, &d, Some(&desc)).unwrap();
        assert_eq!(e.coefficient, 1);
        assert_eq!(e.context.orbit.as_deref(), Some("+-+-+"));
    }

    #[test]
    fn json_shape() {
        let e = total_cycle_class_su(2, 1).unwrap();
        let v: serde_json::Value = serde_json::to_value(&e).unwrap();
        assert_eq!(v["coefficient"], 2);
        assert_eq!(v["classes"][0], "2 3 1");
        assert_eq!(v["context"]["form"], "supq");
        assert_eq!(v["context"]["p"], 2);
        let back: HomologyExpansion = serde_json::from_value(v).unwrap();
        assert_eq!(back, e);
    }
}
