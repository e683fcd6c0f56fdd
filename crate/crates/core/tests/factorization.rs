use std::sync::OnceLock;

use arbor::forest::ForestMap;
use arbor::gamma::PointedMap;
use arbor::segal::{window_maps, Window};
use proptest::prelude::*;

fn pointed() -> impl Strategy<Value = PointedMap> {
    (0usize..=5, 0usize..=5).prop_flat_map(|(n, m)| {
        prop::collection::vec(0..=m, n).prop_map(move |rest| {
            let mut table = vec![0];
            table.extend(rest);
            PointedMap::new(m, table).unwrap()
        })
    })
}

fn composable_pointed() -> impl Strategy<Value = (PointedMap, PointedMap)> {
    (pointed(), 0usize..=5).prop_flat_map(|(f, k)| {
        let m = f.tgt();
        prop::collection::vec(0..=k, m).prop_map(move |rest| {
            let mut table = vec![0];
            table.extend(rest);
            (f.clone(), PointedMap::new(k, table).unwrap())
        })
    })
}

fn maps() -> &'static [ForestMap] {
    static M: OnceLock<Vec<ForestMap>> = OnceLock::new();
    M.get_or_init(|| window_maps(&Window::new(2, 2)))
}

fn forest_map() -> impl Strategy<Value = ForestMap> {
    any::<prop::sample::Index>().prop_map(|k| maps()[k.index(maps().len())].clone())
}

/// A map out of the target of `m`, chosen by `k`.
fn next(m: &ForestMap, k: prop::sample::Index) -> ForestMap {
    let out: Vec<&ForestMap> = maps().iter().filter(|g| g.src() == m.tgt()).collect();
    out[k.index(out.len())].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gamma_factorization_recomposes(f in pointed()) {
        let (inert, active) = f.factorize();
        prop_assert!(inert.classify().inert);
        prop_assert!(active.classify().active);
        prop_assert_eq!(inert.then(&active).unwrap(), f);
    }

    #[test]
    fn gamma_classes_compose((f, g) in composable_pointed()) {
        let h = f.then(&g).unwrap().classify();
        let (cf, cg) = (f.classify(), g.classify());
        prop_assert!(!(cf.inert && cg.inert) || h.inert);
        prop_assert!(!(cf.active && cg.active) || h.active);
        prop_assert!(!(cf.semi_inert && cg.semi_inert) || h.semi_inert);
    }

    #[test]
    fn forest_factorization_recomposes(m in forest_map()) {
        let (active, inert) = m.factorize().unwrap();
        let (ca, ci) = (active.classify().unwrap(), inert.classify().unwrap());
        prop_assert!(ca.active && ci.inert);
        prop_assert_eq!(active.then(&inert).unwrap(), m.clone());
        // factoring a part again returns it with an identity
        let (a2, i2) = active.factorize().unwrap();
        prop_assert!(i2.is_identity());
        prop_assert_eq!(a2, active);
    }

    #[test]
    fn forest_composition_is_associative(
        f in forest_map(),
        picks in (any::<prop::sample::Index>(), any::<prop::sample::Index>()),
    ) {
        // identities always leave a way out
        let g = next(&f, picks.0);
        let h = next(&g, picks.1);
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert!(left.in_plus());
        prop_assert_eq!(left, right);
    }
}
