use bskein_core::canon::canonical_key;
use bskein_core::moves::{random_diagram, random_move_walk};
use bskein_core::oracle::uniqueness_check;
use bskein_core::series::{check_l_skein, f_of, l_of};
use bskein_core::warping::{enumerate_bases, enumerate_bases_permuted};
use bskein_core::{Diagram, Engine, Oracle, Orientation};
use proptest::prelude::*;

fn orientations(r: usize) -> impl Iterator<Item = Orientation> {
    (0..1u32 << r).map(move |m| Orientation((0..r).map(|i| m >> i & 1 == 1).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn skein_relations_hold(seed in any::<u64>()) {
        let d = random_diagram(seed, 6);
        let e = Engine::new();
        for p in 0..d.c() {
            let rep = e.skein_check(&d, p).unwrap();
            prop_assert!(rep.holds(), "{:?}", rep.first_mismatch());
            prop_assert!(check_l_skein(&e, &d, p).unwrap());
        }
    }

    #[test]
    fn oracle_and_cache_agree(seed in any::<u64>()) {
        let d = random_diagram(seed, 6);
        let plain = Engine::new();
        prop_assert!(uniqueness_check(&plain, &Oracle::new(), &d).unwrap());
        prop_assert_eq!(plain.alpha_table(&d).unwrap(), Engine::new().memoized().alpha_table(&d).unwrap());
    }

    #[test]
    fn support_is_bounded(seed in any::<u64>()) {
        let d = random_diagram(seed, 7);
        let t = Engine::new().memoized().alpha_table(&d).unwrap();
        if let Some((lo, hi)) = t.support_bounds() {
            prop_assert!(lo >= 0);
            prop_assert!(hi < (d.c() + d.r()) as i64);
        }
    }

    #[test]
    fn base_choice_is_irrelevant(seed in any::<u64>()) {
        let d = random_diagram(seed, 4);
        let e = Engine::new();
        let reference = e.alpha_table(&d).unwrap();
        for a in enumerate_bases(&d).into_iter().chain(enumerate_bases_permuted(&d)) {
            prop_assert_eq!(&e.alpha_table_with_base(&d, &a).unwrap(), &reference);
        }
    }

    #[test]
    fn mirror_inverts_y(seed in any::<u64>()) {
        let d = random_diagram(seed, 6);
        let e = Engine::new().memoized();
        let m = d.mirror();
        for o in orientations(d.r()) {
            prop_assert_eq!(f_of(&e, &m, &o).unwrap(), f_of(&e, &d, &o).unwrap().subst_y_inverse());
        }
    }

    #[test]
    fn pd_and_json_round_trip(seed in any::<u64>()) {
        let d = random_diagram(seed, 8);
        let back = Diagram::parse_pd(&d.to_pd()).unwrap();
        prop_assert_eq!(canonical_key(&back), canonical_key(&d));
        prop_assert_eq!(canonical_key(&Diagram::from_json(&d.to_json()).unwrap()), canonical_key(&d));
    }

    #[test]
    fn moves_keep_diagrams_valid(seed in any::<u64>(), steps in 0usize..60) {
        let start = random_diagram(seed, 4);
        let (end, trace) = random_move_walk(&start, steps, seed ^ 0x5eed, 9);
        prop_assert!(end.c() <= 9);
        prop_assert!(end.euler_ok());
        prop_assert_eq!(end.r(), start.r());
        prop_assert_eq!(trace.replay(&start).unwrap(), end);
    }
}

#[test]
fn figure_eight_is_amphichiral() {
    let d = Diagram::parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
    let e = Engine::new();
    let f = f_of(&e, &d, &Orientation::canonical(1)).unwrap();
    assert_eq!(f.subst_y_inverse(), f);
    let l = l_of(&e, &d).unwrap();
    assert_eq!(l, l_of(&e, &d.mirror()).unwrap());
}
