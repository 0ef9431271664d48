use duplicial::nerve::{
    all_coreflectors, coreflector_from_witness, decide, duplicial_on_nerve, find_coreflective_groupoid, FiniteCategory,
    Nerve,
};
use duplicial::setlaws::all_monoids;
use duplicial::simplicial::Level;
use proptest::prelude::*;

/// Transitive closure of a random relation on `n` points.
fn preorder(n: usize, bits: &[bool]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    let mut k = 0;
    for (a, row) in r.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            if a != b {
                *cell = bits[k % bits.len()];
                k += 1;
            }
        }
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                if r[a][m] && r[m][b] && a != b {
                    r[a][b] = true;
                }
            }
        }
    }
    r
}

fn random_category() -> impl Strategy<Value = FiniteCategory> {
    let monoids = all_monoids(3);
    prop_oneof![
        (1usize..=3, prop::collection::vec(any::<bool>(), 6)).prop_map(|(n, bits)| {
            let r = preorder(n, &bits);
            FiniteCategory::poset(n, move |a, b| r[a][b])
        }),
        prop::sample::select(monoids).prop_map(|m| {
            let names = ["1", "a", "b"];
            // put the identity first
            let e = m.identity;
            let order: Vec<usize> = std::iter::once(e).chain((0..3).filter(|&x| x != e)).collect();
            let pos = |x: usize| order.iter().position(|&y| y == x).unwrap();
            FiniteCategory::monoid(&names, |a, b| pos(m.table[order[a]][order[b]]))
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witness_iff_coreflector(c in random_category()) {
        let w = find_coreflective_groupoid(&c);
        let all = all_coreflectors(&c, 4);
        prop_assert_eq!(w.is_some(), !all.is_empty());
        for t in &all {
            let x = duplicial_on_nerve(&c, t, 3).unwrap();
            prop_assert!(x.check_structure(Level::Duplicial).is_ok());
        }
        if let Some(w) = w {
            let t = coreflector_from_witness(&c, &w).unwrap();
            prop_assert!(t.check(&c).is_ok());
        }
    }

    #[test]
    fn cyclic_iff_groupoid(c in random_category()) {
        let v = decide(&c, 3);
        prop_assert!(v.report.is_ok(), "{}", v.report);
        prop_assert_eq!(v.cyclic, c.is_groupoid());
        let nerve = Nerve::new(&c, 3);
        prop_assert!(nerve.linearize(&c).check().is_ok());
    }
}

#[test]
fn catalog_has_every_shape() {
    let cat = FiniteCategory::catalog();
    assert!(cat.len() >= 8);
    let groupoids = cat.iter().filter(|(_, c)| c.is_groupoid()).count();
    assert!(groupoids >= 3 && groupoids < cat.len());
    for (name, c) in &cat {
        assert!(c.num_morphisms() <= 8, "{name}");
        let v = decide(c, 4);
        assert!(v.report.is_ok(), "{name}");
        assert_eq!(v.witness.is_some(), !all_coreflectors(c, 1).is_empty(), "{name}");
    }
}
