mod common;

use proptest::prelude::*;
use skeinlab::corpus::{self, TableEntry};
use skeinlab::kauffman::{framed_kauffman, normalize_f};
use skeinlab::rudolph::rudolph_invariant;
use skeinlab::skein::homfly;
use skeinlab::{BiLaurent, Diagram, AX, VZ};

fn small(max: usize) -> Vec<TableEntry> {
    corpus::builtin().into_iter().filter(|e| e.crossing_count() <= max).collect()
}

fn mono(vars: skeinlab::Vars, c: i64, e1: i32, e2: i32) -> BiLaurent {
    BiLaurent::from_terms(vars, [(c, e1, e2)])
}

#[test]
fn writhe_splits_into_self_writhe_and_linking() {
    for e in corpus::builtin() {
        let d = e.diagram().unwrap();
        assert_eq!(d.writhe(), d.self_writhe() + 2 * d.total_linking(), "{}", e.name);
    }
}

#[test]
fn skein_relations_hold_at_every_crossing() {
    let z = mono(VZ, 1, 0, 1);
    let x = mono(AX, 1, 0, 1);
    for e in small(6) {
        let d = e.diagram().unwrap();
        for i in 0..d.crossing_count() {
            let sw = d.switch_crossing(i);
            let (plus, minus) = if d.crossings()[i].sign() > 0 { (&d, &sw) } else { (&sw, &d) };
            let lhs = mono(VZ, 1, -1, 0) * homfly(plus).unwrap() - mono(VZ, 1, 1, 0) * homfly(minus).unwrap();
            assert_eq!(lhs, z.clone() * homfly(&d.smooth_oriented(i)).unwrap(), "{} at {i}", e.name);
            let four = framed_kauffman(&d).unwrap() + framed_kauffman(&sw).unwrap();
            let smoothings = framed_kauffman(&d.smooth_crossing(i, skeinlab::diagram::Smoothing::Ab)).unwrap()
                + framed_kauffman(&d.smooth_crossing(i, skeinlab::diagram::Smoothing::Ad)).unwrap();
            assert_eq!(four, x.clone() * smoothings, "{} at {i}", e.name);
        }
    }
}

#[test]
fn mirror_symmetries_against_the_oracle() {
    for e in small(7) {
        let d = e.diagram().unwrap();
        // reflecting the plane reverses the cyclic order of each crossing
        let flipped: Vec<[u32; 4]> = e.pd.iter().map(|&[a, b, c, d]| [a, d, c, b]).collect();
        let signs: Option<Vec<i32>> = e.signs.as_ref().map(|s| s.iter().map(|x| -x).collect());
        let m = common::link(&flipped, signs.as_deref(), e.loops);
        let p = homfly(&d).unwrap().subst_monomial(&mono(VZ, 1, -1, 0), &mono(VZ, -1, 0, 1)).unwrap();
        assert_eq!(common::from_lib(&p), common::homfly(&m), "P of mirror {}", e.name);
        let l = framed_kauffman(&d).unwrap().subst_monomial(&mono(AX, 1, -1, 0), &mono(AX, 1, 0, 1)).unwrap();
        assert_eq!(common::from_lib(&l), common::kauffman(&m), "L of mirror {}", e.name);
        assert_eq!(homfly(&d.mirror()).unwrap(), p, "library mirror of {}", e.name);
    }
}

fn entry_strategy(max: usize) -> impl Strategy<Value = TableEntry> {
    let table = small(max);
    (0..table.len()).prop_map(move |i| table[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn split_unions_multiply(a in entry_strategy(4), b in entry_strategy(4)) {
        let (da, db) = (a.diagram().unwrap(), b.diagram().unwrap());
        prop_assume!(da.component_count() + db.component_count() <= 4);
        let u = da.disjoint_union(&db);
        prop_assert_eq!(homfly(&u).unwrap(), homfly(&da).unwrap() * homfly(&db).unwrap());
        prop_assert_eq!(normalize_f(&u).unwrap(), normalize_f(&da).unwrap() * normalize_f(&db).unwrap());
        prop_assert_eq!(
            rudolph_invariant(&u).unwrap(),
            rudolph_invariant(&da).unwrap() * rudolph_invariant(&db).unwrap()
        );
    }

    #[test]
    fn rudolph_ignores_curls(e in entry_strategy(4), site in 0u32..64, negative in any::<bool>()) {
        let d = e.diagram().unwrap();
        prop_assume!(d.arc_count() > 0);
        let mut curl = Diagram::parse_pd("X[1,2,2,1]").unwrap();
        if negative {
            curl = curl.mirror();
        }
        let k = d.connected_sum(Some(site % d.arc_count() as u32), &curl, Some(0)).unwrap();
        prop_assert_eq!(k.crossing_count(), d.crossing_count() + 1);
        prop_assert_eq!(rudolph_invariant(&k).unwrap(), rudolph_invariant(&d).unwrap());
    }

    #[test]
    fn canonical_code_ignores_labels(e in entry_strategy(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut labels: Vec<u32> = e.pd.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let mut image = labels.clone();
        image.shuffle(&mut rng);
        let relabel = |l: u32| image[labels.binary_search(&l).unwrap()] + 100;
        let mut order: Vec<usize> = (0..e.pd.len()).collect();
        order.shuffle(&mut rng);
        let pd: Vec<[u32; 4]> = order.iter().map(|&i| e.pd[i].map(relabel)).collect();
        let signs: Option<Vec<Option<i32>>> = e.signs.as_ref().map(|s| order.iter().map(|&i| Some(s[i])).collect());
        let d2 = Diagram::from_pd(&pd, signs.as_deref(), e.loops).unwrap();
        prop_assert_eq!(d2.canonical_code(), e.diagram().unwrap().canonical_code());
    }
}

#[test]
fn lowest_z_power_is_minus_the_component_count() {
    for e in small(8) {
        let d = e.diagram().unwrap();
        let low = homfly(&d).unwrap().min_deg("z").unwrap().finite().unwrap();
        assert_eq!(low, -(d.component_count() as i32), "{}", e.name);
    }
}

#[test]
fn composite_kauffman_relation() {
    let delta = skeinlab::poly::delta_f();
    for (name, a, b) in [("granny", "3_1", "3_1"), ("3_1#4_1", "3_1", "4_1")] {
        let lhs = delta.clone() * normalize_f(&corpus::diagram(name)).unwrap();
        let rhs = normalize_f(&corpus::diagram(a)).unwrap() * normalize_f(&corpus::diagram(b)).unwrap();
        assert_eq!(lhs, rhs, "{name}");
    }
    let t = corpus::diagram("3_1");
    let square = normalize_f(&corpus::diagram("square")).unwrap();
    assert_eq!(delta * square, normalize_f(&t).unwrap() * normalize_f(&t.mirror()).unwrap());
}
