//! Flags as full-rank column matrices with cumulative dimensions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::perm::{DimensionSequence, Permutation};

#[derive(Clone, Debug)]
pub struct FlagMatrix {
    n: usize,
    columns: Vec<Vec<GaussianRational>>,
    dims: Vec<usize>,
}

impl FlagMatrix {
    pub fn new(n: usize, columns: Vec<Vec<GaussianRational>>, dims: Vec<usize>) -> Result<Self> {
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidFlag(format!("columns must have length {n}")));
        }
        if dims.is_empty()
            || dims.windows(2).any(|w| w[0] >= w[1])
            || dims[0] == 0
            || *dims.last().unwrap() != columns.len()
        {
            return Err(Error::InvalidFlag(format!(
                "dims {dims:?} must increase strictly up to the column count {}",
                columns.len()
            )));
        }
        if Matrix::from_columns(n, &columns).rank() != columns.len() {
            return Err(Error::InvalidFlag("columns are linearly dependent".into()));
        }
        Ok(FlagMatrix { n, columns, dims })
    }

    /// Complete flag spanned cumulatively by `columns` (n of them).
    pub fn complete(columns: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = columns.len();
        FlagMatrix::new(n, columns, (1..=n).collect())
    }

    /// Flag spanned by the standard basis vectors `e_{indices[0]}, …` (1-based).
    pub fn coordinate(n: usize, indices: &[usize], dims: Vec<usize>) -> Result<Self> {
        FlagMatrix::new(n, indices.iter().map(|&i| unit(n, i)).collect(), dims)
    }

    /// Coordinate flag of a permutation: V_i = ⟨e_{w(1)},…,e_{w(i)}⟩.
    pub fn of_permutation(w: &Permutation) -> Self {
        FlagMatrix::coordinate(w.n(), w.word(), (1..=w.n()).collect()).expect("unit vectors")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn columns(&self) -> &[Vec<GaussianRational>] {
        &self.columns
    }

    pub fn is_complete(&self) -> bool {
        self.dims.len() == self.n
    }

    /// Basis matrix of the subspace of dimension `k` (first k columns).
    pub fn subspace(&self, k: usize) -> Matrix {
        Matrix::from_columns(self.n, &self.columns[..k])
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(self.n, &self.columns)
    }

    /// Forgets all subspaces except those of the given dimensions.
    pub fn project(&self, dims: &[usize]) -> Result<Self> {
        if dims.iter().any(|d| !self.dims.contains(d)) {
            return Err(Error::InvalidFlag(format!(
                "cannot project dims {:?} onto {dims:?}",
                self.dims
            )));
        }
        let k = *dims.last().unwrap_or(&0);
        FlagMatrix::new(self.n, self.columns[..k].to_vec(), dims.to_vec())
    }

    pub fn project_to(&self, d: &DimensionSequence) -> Result<Self> {
        self.project(&d.prefix_sums())
    }

    /// Canonical key: reduced row echelon form of each subspace's basis
    /// (as rows), so equal flags have equal keys.
    pub fn canonical_form(&self) -> Vec<Matrix> {
        self.dims
            .iter()
            .map(|&k| self.subspace(k).transpose().rref())
            .collect()
    }

    pub fn same_flag(&self, other: &FlagMatrix) -> bool {
        self.n == other.n && self.dims == other.dims && self.canonical_form() == other.canonical_form()
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); n];
    v[i - 1] = GaussianRational::one();
    v
}

/// JSON integer that falls back to a decimal string beyond 64 bits.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn of(v: &BigInt) -> Self {
        v.to_i64().map_or_else(|| JsonInt::Big(v.to_string()), JsonInt::Small)
    }

    fn value(&self) -> std::result::Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FlagJson {
    n: usize,
    dims: Vec<usize>,
    columns: Vec<Vec<[JsonInt; 4]>>,
}

impl Serialize for FlagMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|z| {
                        [
                            JsonInt::of(z.re.numer()),
                            JsonInt::of(z.re.denom()),
                            JsonInt::of(z.im.numer()),
                            JsonInt::of(z.im.denom()),
                        ]
                    })
                    .collect()
            })
            .collect();
        FlagJson { n: self.n, dims: self.dims.clone(), columns }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FlagMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FlagJson::deserialize(d)?;
        let mut columns = Vec::with_capacity(raw.columns.len());
        for col in &raw.columns {
            let mut out = Vec::with_capacity(col.len());
            for [a, b, c, e] in col {
                let (a, b, c, e) = (
                    a.value().map_err(D::Error::custom)?,
                    b.value().map_err(D::Error::custom)?,
                    c.value().map_err(D::Error::custom)?,
                    e.value().map_err(D::Error::custom)?,
                );
                if b == BigInt::from(0) || e == BigInt::from(0) {
                    return Err(D::Error::custom("zero denominator"));
                }
                out.push(GaussianRational::new(BigRational::new(a, b), BigRational::new(c, e)));
            }
            columns.push(out);
        }
        FlagMatrix::new(raw.n, columns, raw.dims).map_err(D::Error::custom)
    }
}
