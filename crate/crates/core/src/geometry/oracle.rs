//! Membership tests for open orbits, base cycles and Schubert cells, all by
//! exact rank computations.

use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::flag::{unit, FlagMatrix};
use super::gaussian::GaussianRational;
use super::matrix::{rational_determinant, sign_of, Matrix};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormSpec {
    /// b(v,w) = vᵗw on ℂⁿ.
    Symmetric { n: usize },
    /// ω(v,w) = vᵗJw on ℂ^{2m}, J = [[0, I], [−I, 0]].
    Symplectic { m: usize },
    /// h(v,w) = −Σ_{i≤q} v_i w̄_i + Σ_{i>q} v_i w̄_i.
    Hermitian { p: usize, q: usize },
}

impl FormSpec {
    pub fn n(&self) -> usize {
        match *self {
            FormSpec::Symmetric { n } => n,
            FormSpec::Symplectic { m } => 2 * m,
            FormSpec::Hermitian { p, q } => p + q,
        }
    }

    pub fn gram(&self) -> Matrix {
        match *self {
            FormSpec::Symmetric { n } => Matrix::identity(n),
            FormSpec::Symplectic { m } => j_matrix(m),
            FormSpec::Hermitian { p, q } => hermitian_gram(p, q),
        }
    }

    /// Matrix of pairings (form(u_a, v_b)) between two bases; for the
    /// Hermitian form the conjugate-transposed version, which has the same rank.
    pub fn pairing(&self, u: &Matrix, v: &Matrix) -> Matrix {
        let g = self.gram();
        match self {
            FormSpec::Hermitian { .. } => u.adjoint().mul(&g).mul(v),
            _ => u.transpose().mul(&g).mul(v),
        }
    }

    /// Value form(x, y) on two vectors.
    pub fn evaluate(&self, x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
        let n = self.n();
        let g = self.gram();
        let mut acc = GaussianRational::zero();
        for i in 0..n {
            for j in 0..n {
                let gij = g.get(i, j);
                if gij.is_zero() {
                    continue;
                }
                let yj = match self {
                    FormSpec::Hermitian { .. } => y[j].conj(),
                    _ => y[j].clone(),
                };
                acc = &acc + &(&(&x[i] * gij) * &yj);
            }
        }
        acc
    }
}

fn j_matrix(m: usize) -> Matrix {
    let n = 2 * m;
    let mut j = Matrix::zeros(n, n);
    for i in 0..m {
        j.set(i, m + i, GaussianRational::one());
        j.set(m + i, i, GaussianRational::from_int(-1));
    }
    j
}

fn hermitian_gram(p: usize, q: usize) -> Matrix {
    let n = p + q;
    let mut h = Matrix::zeros(n, n);
    for i in 0..n {
        h.set(i, i, GaussianRational::from_int(if i < q { -1 } else { 1 }));
    }
    h
}

/// The antilinear map whose fixed-point structure defines the real form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugation {
    /// τ(v) = v̄.
    Real,
    /// j(v) = J v̄ on ℂ^{2m}.
    Quaternion,
}

impl Conjugation {
    pub fn apply(&self, basis: &Matrix) -> Matrix {
        match self {
            Conjugation::Real => basis.conj(),
            Conjugation::Quaternion => {
                assert!(basis.rows() % 2 == 0, "quaternionic structure needs even n");
                j_matrix(basis.rows() / 2).mul(&basis.conj())
            }
        }
    }
}

/// j(e_i) = −e_{m+i}, j(e_{m+i}) = e_i, extended antilinearly.
pub fn quaternion_j(v: &[GaussianRational]) -> Vec<GaussianRational> {
    let basis = Matrix::from_columns(v.len(), &[v.to_vec()]);
    Conjugation::Quaternion.apply(&basis).column(0)
}

/// dim(V_i ∩ c(V_j)) = max(0, δ_i+δ_j−n) for every pair of flag members.
pub fn is_tau_generic(flag: &FlagMatrix, conj: Conjugation) -> bool {
    let n = flag.n();
    let images: Vec<Matrix> = flag.dims().iter().map(|&k| conj.apply(&flag.subspace(k))).collect();
    for &a in flag.dims() {
        let va = flag.subspace(a);
        for (idx, &b) in flag.dims().iter().enumerate() {
            if va.hcat(&images[idx]).rank() != n.min(a + b) {
                return false;
            }
        }
    }
    true
}

/// dim(V_i ∩ V_j^⊥) = min(δ_i, n−δ_j) for every pair of flag members.
pub fn is_isotropic_flag(flag: &FlagMatrix, form: FormSpec) -> bool {
    let n = flag.n();
    assert_eq!(n, form.n(), "form and flag live in different dimensions");
    for &a in flag.dims() {
        let va = flag.subspace(a);
        for &b in flag.dims() {
            let vb = flag.subspace(b);
            let meet = a - form.pairing(&vb, &va).rank();
            if meet != a.min(n - b) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub neg: usize,
    pub pos: usize,
    pub null: usize,
}

/// Inertia of h restricted to the span of `basis`, by Hermitian congruence
/// diagonalization of the Gram matrix.
pub fn signature(basis: &Matrix, p: usize, q: usize) -> Signature {
    let g = FormSpec::Hermitian { p, q }.pairing(basis, basis);
    let k = g.rows();
    let mut m: Vec<Vec<GaussianRational>> = (0..k).map(|i| (0..k).map(|j| g.get(i, j).clone()).collect()).collect();
    let mut sig = Signature { neg: 0, pos: 0, null: 0 };
    for idx in 0..k {
        if m[idx][idx].is_zero() {
            if let Some(j) = (idx + 1..k).find(|&j| !m[j][j].is_zero()) {
                swap_basis(&mut m, idx, j);
            } else if let Some(j) = (idx + 1..k).find(|&j| !m[idx][j].is_zero()) {
                let c = m[idx][j].conj();
                add_multiple(&mut m, idx, j, &c);
            }
        }
        let pivot = m[idx][idx].clone();
        if pivot.is_zero() {
            sig.null += 1;
            continue;
        }
        debug_assert!(pivot.is_real());
        if pivot.re.is_positive() {
            sig.pos += 1;
        } else {
            sig.neg += 1;
        }
        for j in idx + 1..k {
            if m[idx][j].is_zero() {
                continue;
            }
            let c = -&(&m[idx][j] / &pivot);
            add_multiple(&mut m, j, idx, &c);
        }
    }
    sig
}

fn swap_basis(m: &mut [Vec<GaussianRational>], a: usize, b: usize) {
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Replace basis vector `t` by `v_t + c·v_s` in the Gram matrix.
fn add_multiple(m: &mut [Vec<GaussianRational>], t: usize, s: usize, c: &GaussianRational) {
    let k = m.len();
    for row in m.iter_mut() {
        let v = &row[t] + &(c * &row[s]);
        row[t] = v;
    }
    let cbar = c.conj();
    for j in 0..k {
        let v = &m[t][j] + &(&cbar * &m[s][j]);
        m[t][j] = v;
    }
}

/// Every flag member has the prescribed nondegenerate signature
/// (negative, positive) = (Σ_{j≤i} a_j, Σ_{j≤i} b_j).
pub fn in_open_orbit_su(flag: &FlagMatrix, p: usize, q: usize, a: &[usize], b: &[usize]) -> bool {
    if flag.dims().len() != a.len() || a.len() != b.len() {
        return false;
    }
    let (mut na, mut nb) = (0, 0);
    for (i, &k) in flag.dims().iter().enumerate() {
        na += a[i];
        nb += b[i];
        if na + nb != k || signature(&flag.subspace(k), p, q) != (Signature { neg: na, pos: nb, null: 0 }) {
            return false;
        }
    }
    true
}

/// dim(V_i ∩ E⁻) = Σ a and dim(V_i ∩ E⁺) = Σ b, with E⁻ = ⟨e_1..e_q⟩ and
/// E⁺ = ⟨e_{q+1}..e_n⟩.
pub fn in_base_cycle_su(flag: &FlagMatrix, p: usize, q: usize, a: &[usize], b: &[usize]) -> bool {
    let n = p + q;
    if flag.n() != n || flag.dims().len() != a.len() || a.len() != b.len() {
        return false;
    }
    let e_minus = Matrix::from_columns(n, &(1..=q).map(|i| unit(n, i)).collect::<Vec<_>>());
    let e_plus = Matrix::from_columns(n, &(q + 1..=n).map(|i| unit(n, i)).collect::<Vec<_>>());
    let (mut na, mut nb) = (0, 0);
    for (i, &k) in flag.dims().iter().enumerate() {
        na += a[i];
        nb += b[i];
        let v = flag.subspace(k);
        let meet_minus = k + q - v.hcat(&e_minus).rank();
        let meet_plus = k + p - v.hcat(&e_plus).rank();
        if meet_minus != na || meet_plus != nb {
            return false;
        }
    }
    true
}

/// V_i ⊂ V_i^⊥ for i ≤ q and V_{p+i} = V_{q−i}^⊥ for 1 ≤ i ≤ q (complete flags).
pub fn is_maximally_isotropic(flag: &FlagMatrix, p: usize, q: usize) -> bool {
    let n = p + q;
    if flag.n() != n || !flag.is_complete() {
        return false;
    }
    let h = FormSpec::Hermitian { p, q };
    for i in 1..=q {
        let v = flag.subspace(i);
        if !h.pairing(&v, &v).is_zero() {
            return false;
        }
    }
    for i in 1..=q {
        if q - i == 0 {
            continue;
        }
        let small = flag.subspace(q - i);
        let big = flag.subspace(p + i);
        if !h.pairing(&small, &big).is_zero() {
            return false;
        }
    }
    true
}

/// Rank pattern dim(V_i ∩ F_j) = #{k ≤ δ_i : w(k) ≤ j} against the complete
/// reference flag F.
pub fn schubert_cell_membership(flag: &FlagMatrix, w: &Permutation, reference: &FlagMatrix) -> bool {
    let n = flag.n();
    if w.n() != n || reference.n() != n || !reference.is_complete() {
        return false;
    }
    let refs: Vec<Matrix> = (1..=n).map(|j| reference.subspace(j)).collect();
    for &k in flag.dims() {
        let v = flag.subspace(k);
        for j in 1..=n {
            let expected = w.word()[..k].iter().filter(|&&x| x <= j).count();
            let meet = k + j - v.hcat(&refs[j - 1]).rank();
            if meet != expected {
                return false;
            }
        }
    }
    true
}

/// Point of the cell of `w`: column i is r_{w(i)} plus random multiples of
/// r_r for every r < w(i) with w⁻¹(r) > i, in the reference basis r.
pub fn random_cell_sample(w: &Permutation, reference: &FlagMatrix, seed: u64) -> FlagMatrix {
    let n = w.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inv = w.inverse();
    let basis = reference.columns();
    let mut columns = Vec::with_capacity(n);
    for i in 1..=n {
        let wi = w.at(i);
        let mut col = basis[wi - 1].clone();
        for r in 1..wi {
            if inv.at(r) > i {
                let alpha = random_gaussian(&mut rng);
                for (x, b) in col.iter_mut().zip(&basis[r - 1]) {
                    *x = &*x + &(&alpha * b);
                }
            }
        }
        columns.push(col);
    }
    FlagMatrix::complete(columns).expect("cell samples have full rank")
}

fn random_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    let mut part = || {
        let num: i64 = rng.gen_range(-100..=100);
        let den: i64 = rng.gen_range(1..=100);
        BigRational::new(num.into(), den.into())
    };
    let re = part();
    let im = part();
    GaussianRational::new(re, im)
}

/// The standard reference flag ⟨e_1⟩ ⊂ ⟨e_1,e_2⟩ ⊂ ….
pub fn standard_reference(n: usize) -> FlagMatrix {
    FlagMatrix::of_permutation(&Permutation::identity(n))
}

/// (e_1, j(e_1), e_2, j(e_2), …, e_m, j(e_m)) with j(e_i) = −e_{m+i}.
pub fn quaternion_iwasawa_reference(m: usize) -> FlagMatrix {
    let n = 2 * m;
    let mut columns = Vec::with_capacity(n);
    for s in 1..=m {
        let e = unit(n, s);
        columns.push(e.clone());
        columns.push(quaternion_j(&e));
    }
    FlagMatrix::complete(columns).expect("basis")
}

/// (e_1+e_{2q}, …, e_q+e_{q+1}, e_{2q+1}, …, e_n, e_q−e_{q+1}, …, e_1−e_{2q}).
pub fn su_iwasawa_reference(p: usize, q: usize) -> FlagMatrix {
    let n = p + q;
    let add = |a: usize, b: usize, sign: i64| -> Vec<GaussianRational> {
        let mut v = unit(n, a);
        v[b - 1] = GaussianRational::from_int(sign);
        v
    };
    let mut columns = Vec::with_capacity(n);
    for i in 1..=q {
        columns.push(add(i, 2 * q - i + 1, 1));
    }
    for j in 2 * q + 1..=n {
        columns.push(unit(n, j));
    }
    for i in (1..=q).rev() {
        columns.push(add(i, 2 * q - i + 1, -1));
    }
    FlagMatrix::complete(columns).expect("basis")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Negative,
    Positive,
}

/// For n = 2m with V_m τ-generic: the sign of det[Re v_1, Im v_1, …,
/// Re v_m, Im v_m] for any basis of V_m. `None` if m is not a flag
/// dimension or V_m meets its conjugate.
pub fn orientation_class(flag: &FlagMatrix) -> Option<Orientation> {
    let n = flag.n();
    if n % 2 != 0 || !flag.dims().contains(&(n / 2)) {
        return None;
    }
    let m = n / 2;
    let mut real_cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for col in &flag.columns()[..m] {
        real_cols.push(col.iter().map(|z| z.re.clone()).collect());
        real_cols.push(col.iter().map(|z| z.im.clone()).collect());
    }
    let rows: Vec<Vec<BigRational>> = (0..n).map(|i| real_cols.iter().map(|c| c[i].clone()).collect()).collect();
    match sign_of(&rational_determinant(&rows)) {
        1 => Some(Orientation::Positive),
        -1 => Some(Orientation::Negative),
        _ => None,
    }
}

/// Repeated cell sampling: true as soon as one sample satisfies `accept`.
pub fn sample_until(
    w: &Permutation,
    reference: &FlagMatrix,
    seeds: std::ops::Range<u64>,
    accept: impl Fn(&FlagMatrix) -> bool,
) -> Option<(u64, FlagMatrix)> {
    for seed in seeds {
        let f = random_cell_sample(w, reference, seed);
        if accept(&f) {
            return Some((seed, f));
        }
    }
    None
}

/// Nondegenerate prefixes everywhere, i.e. some open SU(p,q)-orbit.
pub fn is_nondegenerate_flag(flag: &FlagMatrix, p: usize, q: usize) -> bool {
    flag.dims().iter().all(|&k| signature(&flag.subspace(k), p, q).null == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, 1, im, 1)
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn tau_genericity_examples() {
        let f = FlagMatrix::complete(vec![vec![g(0, 1), g(1, 0)], vec![g(1, 0), g(0, 0)]]).unwrap();
        assert!(is_tau_generic(&f, Conjugation::Real));
        assert!(!is_tau_generic(&standard_reference(2), Conjugation::Real));
    }

    #[test]
    fn isotropy_examples() {
        let f = FlagMatrix::complete(vec![vec![g(0, 1), g(1, 0)], vec![g(1, 0), g(0, 0)]]).unwrap();
        assert!(is_isotropic_flag(&f, FormSpec::Symmetric { n: 2 }));
        assert!(!is_isotropic_flag(&standard_reference(2), FormSpec::Symmetric { n: 2 }));
        let e1 = unit(2, 1);
        let f = FlagMatrix::complete(vec![e1.clone(), quaternion_j(&e1)]).unwrap();
        assert!(is_isotropic_flag(&f, FormSpec::Symplectic { m: 1 }));
    }

    #[test]
    fn j_on_coordinates() {
        let n = 6;
        assert_eq!(quaternion_j(&unit(n, 2)), unit(n, 5).iter().map(|z| -z).collect::<Vec<_>>());
        assert_eq!(quaternion_j(&unit(n, 5)), unit(n, 2));
        let v: Vec<_> = (0..4).map(|k| g(k, 1 - k)).collect();
        let jj: Vec<_> = quaternion_j(&quaternion_j(&v));
        assert_eq!(jj, v.iter().map(|z| -z).collect::<Vec<_>>());
    }

    #[test]
    fn signature_examples() {
        let n = 3;
        let e1 = Matrix::from_columns(n, &[unit(n, 1)]);
        assert_eq!(signature(&e1, 2, 1), Signature { neg: 1, pos: 0, null: 0 });
        let mut v = unit(n, 1);
        v[1] = GaussianRational::one();
        assert_eq!(signature(&Matrix::from_columns(n, &[v]), 2, 1), Signature { neg: 0, pos: 0, null: 1 });
        assert_eq!(signature(&Matrix::identity(5), 3, 2), Signature { neg: 2, pos: 3, null: 0 });
    }

    #[test]
    fn signature_of_hyperbolic_plane() {
        // span(e_1+e_2, e_1−e_2) in SU(1,1): zero diagonal, nonzero off-diagonal
        let a = vec![g(1, 0), g(1, 0)];
        let b = vec![g(1, 0), g(-1, 0)];
        let s = signature(&Matrix::from_columns(2, &[a, b]), 1, 1);
        assert_eq!(s, Signature { neg: 1, pos: 1, null: 0 });
    }

    #[test]
    fn iwasawa_flag_is_maximally_isotropic() {
        for (pp, qq) in [(2, 1), (2, 2), (3, 2), (4, 2)] {
            assert!(is_maximally_isotropic(&su_iwasawa_reference(pp, qq), pp, qq));
            assert!(!is_maximally_isotropic(&standard_reference(pp + qq), pp, qq));
            let f = su_iwasawa_reference(pp, qq);
            for i in 1..=qq {
                assert_eq!(signature(&f.subspace(i), pp, qq), Signature { neg: 0, pos: 0, null: i });
            }
        }
    }

    #[test]
    fn samples_lie_in_their_cells() {
        for w in Permutation::all(4) {
            let reference = quaternion_iwasawa_reference(2);
            let f = random_cell_sample(&w, &reference, 3);
            assert!(schubert_cell_membership(&f, &w, &reference));
            let f = random_cell_sample(&w, &standard_reference(4), 5);
            assert!(schubert_cell_membership(&f, &w, &standard_reference(4)));
        }
        assert!(schubert_cell_membership(&FlagMatrix::of_permutation(&p("2431")), &p("2431"), &standard_reference(4)));
        assert!(!schubert_cell_membership(&FlagMatrix::of_permutation(&p("2431")), &p("2413"), &standard_reference(4)));
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let w = p("3412");
        let a = random_cell_sample(&w, &standard_reference(4), 11);
        let b = random_cell_sample(&w, &standard_reference(4), 11);
        assert_eq!(a.columns(), b.columns());
    }

    #[test]
    fn form_symmetries() {
        let x: Vec<_> = (0..4).map(|k| g(k - 1, 2 * k)).collect();
        let y: Vec<_> = (0..4).map(|k| g(3 - k, k)).collect();
        let b = FormSpec::Symmetric { n: 4 };
        assert_eq!(b.evaluate(&x, &y), b.evaluate(&y, &x));
        let w = FormSpec::Symplectic { m: 2 };
        assert_eq!(w.evaluate(&x, &y), -w.evaluate(&y, &x));
        let h = FormSpec::Hermitian { p: 2, q: 2 };
        assert_eq!(h.evaluate(&x, &y), h.evaluate(&y, &x).conj());
    }

    #[test]
    fn orientation_flips_with_a_sign() {
        let f = |s: i64| {
            FlagMatrix::complete(vec![vec![g(0, s), g(1, 0)], vec![g(1, 0), g(0, 0)]]).unwrap()
        };
        assert_ne!(orientation_class(&f(1)), orientation_class(&f(-1)));
        assert!(orientation_class(&f(1)).is_some());
        assert_eq!(orientation_class(&standard_reference(2)), None);
    }
}
