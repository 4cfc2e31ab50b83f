use flagslice::geometry::{signature, FormSpec, GaussianRational, Matrix};
use flagslice::perm::{
    classify_symmetry, flag_manifold_dimension, is_minimal_representative, minimal_coset_representative,
};
use flagslice::{slmh, slnr, supq, DimensionSequence, Permutation};
use proptest::prelude::*;

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

fn permutation_of(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|w| Permutation::new(w).unwrap())
}

/// A permutation together with a dimension sequence summing to its size.
fn word_and_dims(max_n: usize) -> impl Strategy<Value = (Permutation, DimensionSequence)> {
    permutation(max_n).prop_flat_map(|w| {
        let n = w.n();
        proptest::collection::vec(any::<bool>(), n - 1).prop_map(move |cuts| {
            let mut parts = vec![1];
            for cut in cuts {
                if cut {
                    parts.push(1);
                } else {
                    *parts.last_mut().unwrap() += 1;
                }
            }
            (w.clone(), DimensionSequence::new(parts).unwrap())
        })
    })
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

fn vector(n: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    proptest::collection::vec(gaussian(), n)
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r).prop_map(|rows| Matrix::from_ints(&rows))
    })
}

fn brute_inversions(w: &Permutation) -> usize {
    let v = w.word();
    (0..v.len()).flat_map(|i| (i + 1..v.len()).map(move |j| (i, j))).filter(|&(i, j)| v[i] > v[j]).count()
}

proptest! {
    #[test]
    fn length_is_bounded_by_the_longest_word(w in permutation(9)) {
        let n = w.n();
        let l = w.inversion_length();
        prop_assert_eq!(l, brute_inversions(&w));
        prop_assert!(l <= n * (n - 1) / 2);
        let decreasing = w.word().windows(2).all(|p| p[0] > p[1]);
        prop_assert_eq!(l == n * (n - 1) / 2, decreasing);
    }

    #[test]
    fn inverse_has_the_same_length(w in permutation(9)) {
        prop_assert_eq!(w.inverse().inversion_length(), w.inversion_length());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn display_round_trips(w in permutation(12)) {
        let shown = w.to_string();
        prop_assert_eq!(shown.contains(' '), w.n() > 9);
        prop_assert_eq!(shown.parse::<Permutation>().unwrap(), w.clone());
        prop_assert_eq!(w.spaced().parse::<Permutation>().unwrap(), w);
    }

    #[test]
    fn coset_representative_is_idempotent_and_shortest((w, d) in word_and_dims(8)) {
        let r = minimal_coset_representative(&w, &d).unwrap();
        prop_assert!(r.inversion_length() <= w.inversion_length());
        prop_assert_eq!(minimal_coset_representative(&r, &d).unwrap(), r.clone());
        prop_assert!(is_minimal_representative(&r, &d).unwrap());
        prop_assert!(r.inversion_length() <= flag_manifold_dimension(&d));
    }

    #[test]
    fn symmetry_classification_reconstructs((_, d) in word_and_dims(9)) {
        prop_assert_eq!(classify_symmetry(&d).reconstruct(), d.parts().to_vec());
    }

    #[test]
    fn double_box_implies_spacing(w in permutation(8)) {
        if slnr::double_box_check(&w) {
            prop_assert!(slnr::spacing_check(&w));
        }
    }

    #[test]
    fn strictly_pairing_implies_spacing_quaternionic(w in permutation_of(8)) {
        if slmh::strictly_pairing_check_h(&w).unwrap() {
            prop_assert!(slmh::spacing_check_h(&w).unwrap());
        }
    }

    #[test]
    fn strictly_pairing_implies_pairing(w in permutation(8), q in 1usize..=4) {
        let n = w.n();
        prop_assume!(2 * q <= n);
        let p = n - q;
        if supq::strictly_pairing_check_su(&w, p, q).unwrap() {
            prop_assert!(supq::pairing_check(&w, p, q).unwrap());
        }
    }

    #[test]
    fn rank_is_invariant_under_row_and_column_operations(m in small_matrix(), c in -4i64..=4, i in 0usize..4, j in 0usize..4) {
        let r = m.rank();
        prop_assert!(r <= m.rows().min(m.cols()));
        prop_assert_eq!(m.transpose().rank(), r);
        let (rows, cols) = (m.rows(), m.cols());
        // add c · row i to row j (i ≠ j) via a unipotent left factor
        if rows > 1 {
            let (a, b) = (i % rows, (i + 1 + j) % rows);
            prop_assume!(a != b);
            let mut e = Matrix::identity(rows);
            e.set(b, a, GaussianRational::from_int(c));
            prop_assert_eq!(e.mul(&m).rank(), r);
        }
        if cols > 1 {
            let (a, b) = (j % cols, (j + 1 + i) % cols);
            prop_assume!(a != b);
            let mut e = Matrix::identity(cols);
            e.set(a, b, GaussianRational::from_int(c));
            prop_assert_eq!(m.mul(&e).rank(), r);
        }
    }

    #[test]
    fn form_symmetries(x in vector(4), y in vector(4)) {
        let b = FormSpec::Symmetric { n: 4 };
        prop_assert_eq!(b.evaluate(&x, &y), b.evaluate(&y, &x));
        let w = FormSpec::Symplectic { m: 2 };
        prop_assert_eq!(w.evaluate(&x, &y), -w.evaluate(&y, &x));
        let h = FormSpec::Hermitian { p: 3, q: 1 };
        prop_assert_eq!(h.evaluate(&x, &y), h.evaluate(&y, &x).conj());
        prop_assert!(h.evaluate(&x, &x).is_real());
    }

    #[test]
    fn signature_counts_add_up(cols in proptest::collection::vec(vector(5), 1..=5), q in 1usize..=2) {
        let p = 5 - q;
        let basis = Matrix::from_columns(5, &cols);
        let s = signature(&basis, p, q);
        prop_assert_eq!(s.neg + s.pos + s.null, basis.rank());
        prop_assert!(s.neg <= q && s.pos <= p);
    }
}

#[test]
fn full_space_signature() {
    for (p, q) in [(2, 1), (3, 2), (4, 4), (5, 0)] {
        let s = signature(&Matrix::identity(p + q), p, q);
        assert_eq!((s.neg, s.pos, s.null), (q, p, 0));
    }
}

#[test]
fn manifold_dimension_is_the_longest_representative() {
    for n in 1..=7 {
        for mask in 0u32..(1 << (n - 1)) {
            let mut parts = vec![1];
            for bit in 0..n - 1 {
                if mask & (1 << bit) != 0 {
                    parts.push(1);
                } else {
                    *parts.last_mut().unwrap() += 1;
                }
            }
            let d = DimensionSequence::new(parts).unwrap();
            let longest = Permutation::all(n)
                .filter(|w| is_minimal_representative(w, &d).unwrap())
                .map(|w| w.inversion_length())
                .max()
                .unwrap();
            assert_eq!(longest, flag_manifold_dimension(&d), "{d}");
        }
    }
}
