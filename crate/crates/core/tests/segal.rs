use std::sync::OnceLock;

use arbor::forest::Forest;
use arbor::operad;
use arbor::segal::{
    check_segal, check_segal_on, forests_touching, validate_functoriality, window_maps, Corrupted, Corruption, Nerve,
    Presheaf, Tabulated, Window,
};
use proptest::prelude::*;

const W: Window = Window { max_height: 2, max_width: 2, max_total: None };

fn nonempty(x: &Nerve) -> Vec<(Forest, usize)> {
    W.forests().into_iter().map(|f| (f.clone(), x.value(&f).unwrap())).filter(|(_, n)| *n > 0).collect()
}

type Inhabited = Vec<(Forest, usize)>;

fn nerves() -> &'static [(Nerve, Inhabited)] {
    static N: OnceLock<Vec<(Nerve, Inhabited)>> = OnceLock::new();
    N.get_or_init(|| {
        ["com", "ass"]
            .into_iter()
            .map(|name| {
                let x = Nerve::new(operad::fixture(name).unwrap(), W).unwrap();
                let values = nonempty(&x);
                (x, values)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn single_point_corruptions_are_caught(
        which in 0usize..2,
        at in any::<prop::sample::Index>(),
        element in any::<prop::sample::Index>(),
        remove in any::<bool>(),
    ) {
        let (x, values) = &nerves()[which];
        let (f, n) = &values[at.index(values.len())];
        let e = element.index(*n);
        let kind = if remove { Corruption::Remove(e) } else { Corruption::Duplicate(e) };
        let bad = Corrupted::new(x, f.clone(), kind);
        let report = check_segal_on(&bad, &forests_touching(&W, f));
        prop_assert!(!report.passed(), "{:?} at {:?} went unnoticed", kind, f.sizes());
    }
}

#[test]
fn fixtures_pass_every_decomposition() {
    for name in ["com", "ass", "free-binary", "two-colour"] {
        let x = Nerve::new(operad::fixture(name).unwrap(), W).unwrap();
        let r = check_segal(&x);
        assert!(r.passed(), "{name}: {:?}", r.first_witness());
        assert!(!r.vacuous);
    }
}

#[test]
fn tabulated_copy_is_functorial_and_segal() {
    let w = Window::new(1, 2);
    let x = Nerve::new(operad::ass(2), w).unwrap();
    let t = Tabulated::from_presheaf(&x, w).unwrap();
    validate_functoriality(&t, &window_maps(&w)).unwrap();
    assert_eq!(check_segal(&t), {
        let mut r = check_segal(&x);
        r.presheaf = t.name();
        r
    });
}
