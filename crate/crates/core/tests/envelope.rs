use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use arbor::envelope::{
    brute_force_classes, check_envelope_segal, cocartesian_lift, verify_cocartesian, ColourWord, EnvOperad,
    EnvelopeColimit, LiftWindow, SliceConfig, SliceMode,
};
use arbor::forest::{Forest, ForestMap};
use arbor::kernel::FinSetMap;
use arbor::operad;
use arbor::segal::{window_maps, Corrupted, Corruption, Nerve, Presheaf, Terminal, Window};
use proptest::prelude::*;

fn targets() -> Vec<Forest> {
    vec![Forest::eta(), Forest::edge_forest(2), Forest::corolla(0), Forest::corolla(1), Forest::corolla(2)]
}

fn mode() -> impl Strategy<Value = SliceMode> {
    prop_oneof![Just(SliceMode::Plus), Just(SliceMode::Iso), Just(SliceMode::Pre)]
}

/// The two partitions of the elements within the cap must agree.
fn same_partition(x: &dyn Presheaf, t: &Forest, config: SliceConfig) -> Result<(), TestCaseError> {
    let colim = EnvelopeColimit::compute(x, t, config).unwrap();
    let brute = brute_force_classes(x, t, config).unwrap();
    let mut forward: HashMap<usize, usize> = HashMap::new();
    let mut backward: HashMap<usize, usize> = HashMap::new();
    for (obj, e) in colim.elements() {
        let (c, b) = (colim.class_of(obj, e), brute[obj][e]);
        prop_assert_eq!(*forward.entry(c).or_insert(b), b);
        prop_assert_eq!(*backward.entry(b).or_insert(c), c);
    }
    let distinct: HashSet<_> = forward.values().collect();
    prop_assert_eq!(distinct.len(), colim.classes());
    Ok(())
}

fn word(colours: usize) -> impl Strategy<Value = ColourWord> {
    prop::collection::vec(prop::collection::vec(0..colours, 0..=2), 0..=3).prop_map(ColourWord::new)
}

fn partition(k: usize, max: usize) -> impl Strategy<Value = FinSetMap> {
    (1..=max).prop_flat_map(move |m| prop::collection::vec(0..m, k).prop_map(move |t| FinSetMap::new(m, t).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn colimit_matches_brute_force(
        fixture in prop::sample::select(vec!["com", "ass", "two-colour"]),
        t in prop::sample::select(targets()),
        plus in any::<bool>(),
        cap in 2usize..=3,
        exclude_empty in any::<bool>(),
    ) {
        // nerves transport along plus-maps only
        let x = Nerve::new(operad::fixture(fixture).unwrap(), Window::new(2, 3)).unwrap();
        let mode = if plus { SliceMode::Plus } else { SliceMode::Iso };
        same_partition(&x, &t, SliceConfig::new(cap, mode, exclude_empty))?;
    }

    #[test]
    fn terminal_colimit_matches_brute_force(
        t in prop::sample::select(targets()),
        mode in mode(),
        cap in 2usize..=3,
        exclude_empty in any::<bool>(),
    ) {
        same_partition(&Terminal::new(Window::new(2, 3)), &t, SliceConfig::new(cap, mode, exclude_empty))?;
    }

    #[test]
    fn lifts_preserve_content(c in word(2), seed in any::<prop::sample::Index>()) {
        let two = operad::two_colour(4);
        let env = EnvOperad::new(&two);
        let k = c.arity();
        let phis = FinSetMap::all(k, 3);
        let phi = &phis[seed.index(phis.len())];
        let lift = cocartesian_lift(&env, &c, phi).unwrap();
        prop_assert_eq!(lift.source.content(), lift.target.content());
        prop_assert_eq!(lift.target.arity(), phi.tgt_size());
        prop_assert!(env.is_grouped(&lift.morphism));
    }

    #[test]
    fn composites_of_lifts_are_cocartesian(
        (c, phi, psi) in word(1).prop_flat_map(|c| {
            let k = c.arity();
            (Just(c), partition(k, 3))
        }).prop_flat_map(|(c, phi)| {
            let m = phi.tgt_size();
            (Just(c), Just(phi), partition(m, 2))
        })
    ) {
        let com = operad::com(4);
        let env = EnvOperad::new(&com);
        let first = cocartesian_lift(&env, &c, &phi).unwrap();
        let second = cocartesian_lift(&env, &first.target, &psi).unwrap();
        let morphism = env.compose_grouped(&first.morphism, &second.morphism).unwrap();
        let composite = arbor::envelope::CocartLift {
            source: c.clone(),
            target: second.target.clone(),
            partition: phi.then(&psi).unwrap(),
            morphism,
        };
        let report = verify_cocartesian(&env, &composite, LiftWindow { max_groups: 2, max_letters: 3 }).unwrap();
        prop_assert!(report.passed, "{:?}", report.witness);
    }
}

fn window_pairs() -> &'static [(ForestMap, ForestMap)] {
    static P: OnceLock<Vec<(ForestMap, ForestMap)>> = OnceLock::new();
    P.get_or_init(|| {
        let maps = window_maps(&Window::new(2, 2));
        let mut pairs = Vec::new();
        for f in &maps {
            for g in maps.iter().filter(|g| g.src() == f.tgt()) {
                pairs.push((f.clone(), g.clone()));
            }
        }
        pairs
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn nerve_transport_is_functorial(
        fixture in prop::sample::select(vec!["com", "ass", "free-binary", "two-colour"]),
        pick in any::<prop::sample::Index>(),
    ) {
        let x = Nerve::new(operad::fixture(fixture).unwrap(), Window::new(2, 2)).unwrap();
        let (f, g) = &window_pairs()[pick.index(window_pairs().len())];
        let gf = f.then(g).unwrap();
        for e in 0..x.value(g.tgt()).unwrap() {
            let stepwise = x.transport(f, x.transport(g, e).unwrap()).unwrap();
            prop_assert_eq!(stepwise, x.transport(&gf, e).unwrap());
        }
    }
}

#[test]
fn envelope_of_terminal_is_segal_given_room_above_the_cap() {
    let t = Terminal::new(Window::new(2, 4));
    let config = SliceConfig::new(2, SliceMode::Plus, true);
    // zigzags through objects above the cap are needed at [2, 2]
    let cut = check_envelope_segal(&t, Window::new(1, 2), config);
    assert_eq!(cut.first_witness().map(|w| w.forest.sizes().to_vec()), Some(vec![2, 2]));
    assert!(check_envelope_segal(&t, Window::new(1, 2), config.with_lookahead(2)).passed());
}

#[test]
fn envelope_of_a_corrupted_nerve_is_not_segal() {
    let x = Nerve::new(operad::com(3), Window::new(2, 3)).unwrap();
    let bad = Corrupted::new(&x, Forest::corolla(2), Corruption::Duplicate(0));
    let r = check_envelope_segal(&bad, Window::new(1, 2), SliceConfig::new(2, SliceMode::Iso, true));
    assert!(!r.passed());
}
