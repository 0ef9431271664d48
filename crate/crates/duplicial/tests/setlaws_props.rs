use duplicial::setlaws::{
    all_monoids, check_laws, kleisli_compose, list_color_entwined, lplus_term_count, lplus_theta, monoid_colorings,
    powerset_color_entwined, sup_preserving_colorings, FiniteMonoid, Kind, LawName, LawParams, MixedLaw, Semigroup,
    SetError, Structure, Val,
};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = Val> {
    prop::collection::vec(0u32..3, 1..4).prop_map(|v| Val::List(v.into_iter().map(Val::Atom).collect()))
}

fn word_of_words() -> impl Strategy<Value = Val> {
    prop::collection::vec(word(), 1..5).prop_map(Val::List)
}

fn reader_monoid() -> impl Strategy<Value = FiniteMonoid> {
    let mut ms = all_monoids(2);
    ms.extend(all_monoids(1));
    prop::sample::select(ms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lplus_term_count_formula(v in word_of_words()) {
        let out = lplus_theta(&v);
        let Val::List(items) = &out else { unreachable!() };
        let total: usize = items.iter().map(|l| match l { Val::List(x) => x.len(), _ => 0 }).sum();
        prop_assert_eq!(total, lplus_term_count(&v));
    }

    #[test]
    fn reader_laws_for_any_small_monoid(m in reader_monoid(), law in 3usize..8) {
        let name = LawName::SEVEN[law.min(6)];
        let p = LawParams { monoid: m, ..LawParams::default() };
        let r = MixedLaw::new(name, &p).check(2).unwrap();
        prop_assert!(r.is_ok(), "{}", r.report);
    }

    #[test]
    fn color_laws_for_any_palette(colors in 1u32..4, law in 0usize..3) {
        let p = LawParams { colors, ..LawParams::default() };
        match MixedLaw::new(LawName::SEVEN[law], &p).check(2) {
            Ok(r) => prop_assert!(r.is_ok(), "{}", r.report),
            Err(SetError::TooLarge { .. }) => prop_assert!(law == 0 && colors > 2),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn kleisli_is_associative(fs in prop::collection::vec(prop::collection::btree_set(0u32..3, 0..3), 9)) {
        let s = Structure::Powerset;
        let arrow = |k: usize| {
            let table = fs[3 * k..3 * k + 3].to_vec();
            move |x: &Val| match x {
                Val::Atom(a) => Val::Set(table[*a as usize].iter().map(|&b| Val::Atom(b)).collect()),
                _ => unreachable!(),
            }
        };
        let (f, g, h) = (arrow(0), arrow(1), arrow(2));
        let gf = kleisli_compose(&s, &f, &g);
        let hg = kleisli_compose(&s, &g, &h);
        let left = kleisli_compose(&s, &gf, &h);
        let right = kleisli_compose(&s, &f, &hg);
        for a in 0..3 {
            prop_assert_eq!(left(&Val::Atom(a)), right(&Val::Atom(a)));
        }
    }
}

#[test]
fn monad_comonad_catalog() {
    for s in [
        Structure::Powerset,
        Structure::List { bound: 3 },
        Structure::Filter,
        Structure::Ultrafilter,
        Structure::Distribution { grid: 3 },
    ] {
        assert!(check_laws(&s, Kind::Monad, 2).unwrap().is_ok(), "{}", s.name());
    }
    for (_, m) in FiniteMonoid::catalog() {
        assert!(check_laws(&Structure::Reader(m), Kind::Comonad, 2).unwrap().is_ok());
    }
}

#[test]
fn powerset_entwined_are_sup_lattices() {
    for n in 0..=3 {
        assert_eq!(powerset_color_entwined(n, 2), sup_preserving_colorings(n, 2));
    }
}

#[test]
fn list_entwined_are_colored_monoids() {
    for n in 0..=3 {
        assert_eq!(list_color_entwined(n, 2, 3), monoid_colorings(n, 2), "carrier {n}");
    }
}

#[test]
fn w_semigroup_and_machine() {
    for sg in Semigroup::all(2) {
        for w in [vec![0], vec![1, 0], vec![0, 1, 1]] {
            let e = sg.machine_expansion(&w);
            assert_eq!(e.len(), w.len());
            assert_eq!(*e.last().unwrap(), *w.last().unwrap());
        }
    }
}
