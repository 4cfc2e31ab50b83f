//! Worked examples and reference lists.

use std::collections::BTreeSet;

use flagslice::homology::{base_cycle_class, total_cycle_class_su, RealForm};
use flagslice::perm::minimal_coset_representative;
use flagslice::supq::{self, OrbitDescriptor};
use flagslice::{slmh, slnr, DimensionSequence, Permutation};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn d(s: &str) -> DimensionSequence {
    s.parse().unwrap()
}

fn set(words: &[&str]) -> BTreeSet<Permutation> {
    words.iter().map(|s| p(s)).collect()
}

/// Block notation "(57)(2)(38)(1)(46)" or "(5(61)2)34" → one-line word.
fn unbracket(s: &str) -> Permutation {
    p(&s.chars().filter(char::is_ascii_digit).collect::<String>())
}

pub const QUATERNIONIC_N8: [&str; 24] = [
    "13578642", "13756842", "15378462", "15734862", "17356482", "17534682",
    "31578624", "31756824", "35178264", "35712864", "37156284", "37512684",
    "51378426", "51734826", "53178246", "53712846", "57134286", "57312486",
    "71356428", "71534628", "73156248", "73512648", "75134268", "75312468",
];

#[test]
fn quaternionic_list_n8() {
    let got: BTreeSet<Permutation> = slmh::enumerate_gb_h(4).unwrap().into_iter().collect();
    assert_eq!(got, set(&QUATERNIONIC_N8));
}

#[test]
fn unitary_lists() {
    let su32: Vec<Permutation> =
        ["(51)(42)3", "(51)3(42)", "3(51)(42)", "(42)(51)3", "(42)3(51)", "3(42)(51)", "(4(51)2)3", "3(4(51)2)"]
            .iter()
            .map(|s| unbracket(s))
            .collect();
    let got: BTreeSet<Permutation> = supq::enumerate_i_pq(3, 2).unwrap().into_iter().collect();
    assert_eq!(got, su32.into_iter().collect());

    let su42: BTreeSet<Permutation> = [
        "(61)(52)34", "(61)3(52)4", "3(61)(52)4", "(61)34(52)", "3(61)4(52)", "34(61)(52)", "(52)(61)34",
        "(52)3(61)4", "3(52)(61)4", "(52)34(61)", "3(52)4(61)", "34(52)(61)", "(5(61)2)34", "3(5(61)2)4",
        "34(5(61)2)",
    ]
    .iter()
    .map(|s| unbracket(s))
    .collect();
    assert_eq!(su42.len(), 15);
    let got: BTreeSet<Permutation> = supq::enumerate_i_pq(4, 2).unwrap().into_iter().collect();
    assert_eq!(got, su42);
    assert!(supq::strictly_pairing_check_su(&p("561234"), 4, 2).unwrap());
    assert!(!supq::strictly_pairing_check_su(&unbracket("4(5(61)2)3"), 4, 2).unwrap());
}

#[test]
fn perm_w_of_615234() {
    let got: BTreeSet<Permutation> = supq::perm_w(&p("615234"), 4, 2).unwrap().into_iter().collect();
    assert_eq!(got, set(&["413256", "143256", "412356", "142356"]));
}

#[test]
fn grassmannian_orbit() {
    let desc = OrbitDescriptor::new(7, 4, vec![3, 1], vec![2, 5]).unwrap();
    assert_eq!(supq::sign_sequence_of(&desc).to_string(), "(---++)(-+++++)");
    let got: Vec<String> = supq::enumerate_for_orbit_gp(&desc).unwrap().iter().map(|h| h.w.spaced()).collect();
    assert_eq!(got, ["1 2 8 10 11 3 4 5 6 7 9", "1 3 8 9 11 2 4 5 6 7 10", "2 3 8 9 10 1 4 5 6 7 11"]);
}

#[test]
fn measurable_model_of_2_4_3() {
    let m = slnr::measurable_model(&d("2,4,3"));
    assert_eq!(m.dhat, d("2,1,3,1,2"));
    assert_eq!(m.t, vec![1, 2, 2]);
    assert_eq!(m.delta, vec![1, 3, 5]);
    assert_eq!(m.dimension_drop(), 1 * 3 + 1 * 2);
}

#[test]
fn projective_spaces() {
    // P_5: five candidates in the model, only (2)(3456)(1) is strictly decreasing
    let model = slnr::measurable_model(&d("1,5"));
    assert_eq!(model.dhat, d("1,4,1"));
    let candidates = slnr::enumerate_measurable(&model.dhat).unwrap();
    assert_eq!(
        candidates.iter().cloned().collect::<BTreeSet<_>>(),
        set(&["234561", "314562", "412563", "512364", "612345"])
    );
    for n in 2..=8 {
        let mut word = vec![2, 1];
        word.extend(3..=n + 1);
        let expected = Permutation::new(word).unwrap();
        assert_eq!(slnr::enumerate_nonmeasurable(&d(&format!("1,{n}"))).unwrap(), vec![expected]);
    }
}

/// The 36-word reference list for (2,1,2,1,2), with "(21)" in the row
/// (35)(8)(21)(7)(24) read as (16): as listed it repeats 2 and omits 6.
pub const MODEL_21212: [&str; 36] = [
    "(24)(6)(78)(5)(13)", "(24)(7)(58)(6)(13)", "(24)(8)(56)(7)(13)", "(25)(6)(78)(3)(14)",
    "(25)(7)(38)(6)(14)", "(25)(8)(36)(7)(14)", "(26)(4)(78)(3)(15)", "(26)(7)(38)(4)(15)",
    "(26)(8)(34)(7)(15)", "(27)(4)(58)(3)(16)", "(27)(5)(38)(4)(16)", "(27)(8)(34)(5)(16)",
    "(28)(4)(56)(3)(17)", "(28)(5)(36)(4)(17)", "(28)(6)(34)(5)(17)", "(35)(6)(78)(1)(24)",
    "(35)(7)(18)(6)(24)", "(35)(8)(16)(7)(24)", "(36)(4)(78)(1)(25)", "(36)(7)(18)(4)(25)",
    "(36)(8)(14)(7)(25)", "(37)(4)(58)(1)(26)", "(37)(5)(18)(4)(26)", "(37)(8)(14)(5)(26)",
    "(38)(4)(56)(1)(27)", "(38)(5)(16)(4)(27)", "(38)(6)(14)(5)(27)", "(57)(2)(38)(1)(46)",
    "(57)(3)(18)(2)(46)", "(57)(8)(12)(3)(46)", "(58)(2)(36)(1)(47)", "(58)(3)(16)(2)(47)",
    "(58)(6)(12)(3)(47)", "(68)(2)(34)(1)(57)", "(68)(3)(14)(2)(57)", "(68)(4)(12)(3)(57)",
];

/// Every listed word is enumerated; the enumeration has nine more, all
/// with first block {4,6}, {4,7} or {4,8}, which the list omits.
#[test]
fn model_list_is_contained_in_the_enumeration() {
    let dims = d("2,1,2,1,2");
    let listed: BTreeSet<Permutation> = MODEL_21212.iter().map(|s| unbracket(s)).collect();
    assert_eq!(listed.len(), 36);
    let got: BTreeSet<Permutation> = slnr::enumerate_measurable(&dims).unwrap().into_iter().collect();
    assert!(listed.is_subset(&got));
    let extra: Vec<&Permutation> = got.difference(&listed).collect();
    assert_eq!(extra.len(), 9);
    for w in extra {
        assert_eq!(w.at(1), 4, "{}", w.grouped(&dims));
        assert!(slnr::generalized_double_box_check(w, &dims).unwrap());
    }
}

/// The three varieties quoted for (3,3,2) are produced; the full
/// construction yields three more from lifts the list omits.
#[test]
fn three_three_two() {
    let got: BTreeSet<Permutation> = slnr::enumerate_nonmeasurable(&d("3,3,2")).unwrap().into_iter().collect();
    let quoted = set(&["25713846", "25813647", "26813457"]);
    assert!(quoted.is_subset(&got));
    assert_eq!(got.difference(&quoted).cloned().collect::<BTreeSet<_>>(), set(&["24617835", "24715836", "24815637"]));
    for (w, what) in slnr::enumerate_nonmeasurable_with_lifts(&d("3,3,2")).unwrap() {
        assert_eq!(minimal_coset_representative(&what, &d("3,3,2")).unwrap(), w);
    }
    // the three quoted lifts
    let model = slnr::measurable_model(&d("3,3,2"));
    for lift in ["(57)(2)(38)(1)(46)", "(58)(2)(36)(1)(47)", "(68)(2)(34)(1)(57)"] {
        assert!(slnr::strictly_decreasing_blocks_check(&unbracket(lift), &model).unwrap(), "{lift}");
    }
}

#[test]
fn boundary_orbits() {
    let hits = supq::enumerate_for_orbit(&"++++--".parse().unwrap()).unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!((hits[0].w.clone(), hits[0].point.clone()), (p("345612"), p("563412")));
}

#[test]
fn counting_examples() {
    assert_eq!(slnr::enumerate_gb(10).unwrap().len(), 945);
    assert_eq!(slmh::enumerate_gb_h(5).unwrap().len(), 120);
    assert_eq!(supq::m_q(5, 3), 105);
    assert_eq!(supq::enumerate_i_pq(5, 3).unwrap().len(), 105);
}

#[test]
fn homology_examples() {
    let e = base_cycle_class(RealForm::Slnr { n: 5 }, &DimensionSequence::ones(5), None).unwrap();
    assert_eq!((e.coefficient, e.classes.len()), (4, 8));
    let e = total_cycle_class_su(3, 2).unwrap();
    assert_eq!((e.coefficient, e.classes.len()), (4, 8));
    let e = total_cycle_class_su(4, 2).unwrap();
    assert_eq!((e.coefficient, e.classes.len()), (4, 15));
    let v = serde_json::to_value(base_cycle_class(RealForm::Slnr { n: 4 }, &DimensionSequence::ones(4), None).unwrap()).unwrap();
    assert_eq!(v["classes"], serde_json::json!(["2 4 3 1", "3 4 1 2", "4 2 1 3"]));
}

#[test]
fn double_counting_through_homology() {
    for (pp, q) in [(2, 1), (2, 2), (3, 2), (4, 2)] {
        let total: usize = supq::all_sign_sequences(pp, q)
            .iter()
            .map(|a| {
                let desc = OrbitDescriptor::from_sign_sequence(a).unwrap();
                base_cycle_class(RealForm::Supq { p: pp, q }, &desc.dims(), Some(&desc)).unwrap().classes.len()
            })
            .sum();
        assert_eq!(total as u128, (1 << q) * supq::m_q(pp, q));
    }
}
