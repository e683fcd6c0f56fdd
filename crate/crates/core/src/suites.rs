//! Exhaustive property suites over bounded windows. Each returns a
//! [`SuiteReport`] naming the first failing case; the CLI's `verify`
//! command and the acceptance tests both run these.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::envelope::{
    check_envelope_segal, check_inner_limit, check_triangles, cocartesian_lift, env_corolla, envelope_value,
    grouped_words, verify_cocartesian, EnvOperad, LiftWindow, Slice, SliceConfig, SliceMode,
};
use crate::forest::{
    automorphism_count, canonical_code, canonical_form, corolla_count, enumerate_trees, level_tree_oracle, plus_maps,
    underlying_gamma_forest, Forest, ForestMap, Pattern,
};
use crate::gamma::{enumerate_gamma_maps, lambda, rho, PointedMap};
use crate::kernel::FinSetMap;
use crate::operad::{self, Operad};
use crate::segal::{check_segal, check_segal_on, forests_touching, Corrupted, Corruption, Nerve, Presheaf, Window};
use crate::simplex::SimplexMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub passed: bool,
    pub failure: Option<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        Self { suite: suite.into(), checked: 0, passed: true, failure: None, notes: Vec::new() }
    }

    /// Counts one check; the first failure is kept.
    pub fn check(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.failure = Some(failure());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report in, keeping the first failure.
    pub fn absorb(&mut self, other: SuiteReport) {
        self.checked += other.checked;
        if !other.passed && self.passed {
            self.passed = false;
            self.failure = other.failure.map(|f| format!("{}: {f}", other.suite));
        }
        self.notes.extend(other.notes.into_iter().map(|n| format!("{}: {n}", other.suite)));
    }
}

fn all_gamma(n: usize, m: usize) -> Vec<PointedMap> {
    enumerate_gamma_maps(n, m, |_| true).expect("within the enumeration bound")
}

/// Inert maps `⟨n⟩ -> ⟨1⟩` and active maps `⟨1⟩ -> ⟨n⟩` for `n <= max_n`.
pub fn inert_active_counts(max_n: usize) -> SuiteReport {
    let mut r = SuiteReport::new("inert-active-counts");
    for n in 1..=max_n {
        let inert: Vec<_> = all_gamma(n, 1).into_iter().filter(|p| p.classify().inert).collect();
        r.check(inert.len() == n, || format!("{} inert maps <{n}> -> <1>", inert.len()));
        let active: Vec<_> = all_gamma(1, n).into_iter().filter(|p| p.classify().active).collect();
        r.check(active.len() == n, || format!("{} active maps <1> -> <{n}>", active.len()));
        for a in &active {
            r.check(a.classify().semi_inert, || format!("{a:?} is not semi-inert"));
        }
        for i in 1..=n {
            let (rh, la) = (rho(n, i).expect("in range"), lambda(n, i).expect("in range"));
            r.check(inert.contains(&rh) && active.contains(&la), || format!("rho/lambda {i} of <{n}> misclassified"));
            let back = la.then(&rh).expect("composable");
            r.check(back == PointedMap::identity(1), || format!("rho_{i} . lambda_{i} = {back:?} on <{n}>"));
        }
    }
    r
}

/// The inert–active factorization on `Γ^op` up to `⟨max⟩`: recomposition,
/// uniqueness up to unique isomorphism by searching every middle object,
/// closure under composition and unique lifting of inert against active.
pub fn gamma_factorization(max: usize) -> SuiteReport {
    let mut r = SuiteReport::new("factorization-gamma");
    let sizes = 0..=max;
    let mut homs: BTreeMap<(usize, usize), Vec<PointedMap>> = BTreeMap::new();
    for n in sizes.clone() {
        for m in sizes.clone() {
            homs.insert((n, m), all_gamma(n, m));
        }
    }
    let of = |n: usize, m: usize, inert: bool| -> Vec<&PointedMap> {
        homs[&(n, m)].iter().filter(|p| if inert { p.classify().inert } else { p.classify().active }).collect()
    };
    let isos = |k: usize| of(k, k, true).into_iter().filter(|p| p.classify().active).collect::<Vec<_>>();

    for ((n, m), maps) in &homs {
        for f in maps {
            let (i, a) = f.factorize();
            r.check(i.classify().inert && a.classify().active, || format!("{f:?} splits into {i:?}, {a:?}"));
            r.check(i.then(&a).as_ref() == Ok(f), || format!("{i:?} then {a:?} is not {f:?}"));
            let mut found = 0;
            for k in sizes.clone() {
                for i2 in of(*n, k, true) {
                    for a2 in of(k, *m, false) {
                        if i2.then(a2).as_ref() != Ok(f) {
                            continue;
                        }
                        found += 1;
                        let comparisons = if k == i.tgt() {
                            isos(k)
                                .into_iter()
                                .filter(|s| i.then(s).as_ref() == Ok(i2) && s.then(a2).as_ref() == Ok(&a))
                                .count()
                        } else {
                            0
                        };
                        r.check(comparisons == 1, || {
                            format!("{f:?}: factorization through <{k}> has {comparisons} comparison isomorphisms")
                        });
                    }
                }
            }
            r.check(found >= 1, || format!("{f:?}: search found no factorization"));
        }
    }

    for a in sizes.clone() {
        for b in sizes.clone() {
            for c in sizes.clone() {
                for inert in [true, false] {
                    for f in of(a, b, inert) {
                        for g in of(b, c, inert) {
                            let h = f.then(g).expect("composable").classify();
                            let ok = if inert { h.inert } else { h.active };
                            r.check(ok, || format!("{f:?} then {g:?} leaves its class"));
                        }
                    }
                }
            }
        }
    }

    // Squares i ; v = u ; p with i inert and p active. An inert map hits
    // every non-basepoint element exactly once, so v is fixed by the other
    // three; the lifts d with i ; d = u and d ; p = v are counted one
    // element of the middle target at a time.
    for (a_size, b_size) in homs.keys().copied() {
        for i in of(a_size, b_size, true) {
            for c_size in sizes.clone() {
                for d_size in sizes.clone() {
                    for p in of(c_size, d_size, false) {
                        for u in &homs[&(a_size, c_size)] {
                            let mut v = vec![0; b_size + 1];
                            for x in (1..=a_size).filter(|&x| i.apply(x) != 0) {
                                v[i.apply(x)] = p.apply(u.apply(x));
                            }
                            let v = PointedMap::new(d_size, v).expect("pointed");
                            if i.then(&v) != u.then(p) {
                                continue;
                            }
                            let lifts: usize = (1..=b_size)
                                .map(|b| {
                                    (0..=c_size)
                                        .filter(|&c| {
                                            p.apply(c) == v.apply(b)
                                                && (1..=a_size).all(|x| i.apply(x) != b || u.apply(x) == c)
                                        })
                                        .count()
                                })
                                .product();
                            r.check(lifts == 1, || format!("square {i:?}, {p:?}, {u:?} has {lifts} lifts"));
                        }
                    }
                }
            }
        }
    }
    r
}

/// Canonical representatives of the isomorphism classes of forests in a
/// window, and every plus-map between them, numbered.
pub struct ForestWindow {
    pub forests: Vec<Forest>,
    pub maps: Vec<ForestMap>,
    ends: Vec<(usize, usize)>,
    homs: Vec<Vec<Vec<usize>>>,
    out: Vec<Vec<usize>>,
    /// Position of each map in `out` of its source.
    out_pos: Vec<usize>,
    inert: Vec<bool>,
    active: Vec<bool>,
}

impl ForestWindow {
    pub fn new(max_height: usize, max_width: usize) -> Self {
        let mut reps = BTreeMap::new();
        for f in Window::new(max_height, max_width).forests() {
            reps.entry((f.length(), canonical_code(&f))).or_insert_with(|| canonical_form(&f));
        }
        let forests: Vec<Forest> = reps.into_values().collect();
        let n = forests.len();
        let (mut maps, mut ends) = (Vec::new(), Vec::new());
        let mut homs = vec![vec![Vec::new(); n]; n];
        let mut out = vec![Vec::new(); n];
        let mut out_pos = Vec::new();
        for (s, a) in forests.iter().enumerate() {
            for (t, b) in forests.iter().enumerate() {
                for m in plus_maps(a, b) {
                    homs[s][t].push(maps.len());
                    out_pos.push(out[s].len());
                    out[s].push(maps.len());
                    ends.push((s, t));
                    maps.push(m);
                }
            }
        }
        let inert = maps.iter().map(is_inert).collect();
        let active = maps.iter().map(is_active).collect();
        Self { forests, maps, ends, homs, out, out_pos, inert, active }
    }

    pub fn homs(&self, s: usize, t: usize) -> impl Iterator<Item = &ForestMap> + '_ {
        self.homs[s][t].iter().map(|&k| &self.maps[k])
    }

    pub fn map_count(&self) -> usize {
        self.maps.len()
    }

    /// `table[f][j]` is the number of `f ; out[tgt f][j]`.
    fn composition_table(&self) -> Vec<Vec<usize>> {
        let index: HashMap<&ForestMap, usize> = self.maps.iter().enumerate().map(|(k, m)| (m, k)).collect();
        self.maps
            .iter()
            .enumerate()
            .map(|(f, m)| {
                self.out[self.ends[f].1].iter().map(|&g| index[&m.then(&self.maps[g]).expect("composable")]).collect()
            })
            .collect()
    }
}

fn is_inert(m: &ForestMap) -> bool {
    m.classify().map(|c| c.inert).unwrap_or(false)
}

fn is_active(m: &ForestMap) -> bool {
    m.classify().map(|c| c.active).unwrap_or(false)
}

fn is_iso(m: &ForestMap) -> bool {
    m.phi().classify().inert && m.phi().src() == m.phi().tgt() && m.components().iter().all(FinSetMap::is_bijective)
}

fn sizes(m: &ForestMap) -> String {
    format!("{:?} -> {:?} over {:?}", m.src().sizes(), m.tgt().sizes(), m.phi().table())
}

/// The factorization on the plus construction of `Γ^op`, over the
/// isomorphism classes of a window (every property checked is invariant
/// under isomorphism of the ends).
pub fn forest_factorization(max_height: usize, max_width: usize) -> SuiteReport {
    let mut r = SuiteReport::new("factorization-forests");
    let w = ForestWindow::new(max_height, max_width);
    let n = w.forests.len();
    r.note(format!("{n} isomorphism classes, {} plus-maps", w.map_count()));
    let comp = w.composition_table();
    let then = |f: usize, g: usize| comp[f][w.out_pos[g]];

    for (id, m) in w.maps.iter().enumerate() {
        let (s, t) = w.ends[id];
        let (a, i) = match m.factorize() {
            Ok(p) => p,
            Err(e) => {
                r.check(false, || format!("{}: {e}", sizes(m)));
                continue;
            }
        };
        r.check(is_active(&a) && is_inert(&i), || format!("{}: parts are not active/inert", sizes(m)));
        r.check(a.then(&i).as_ref() == Ok(m), || format!("{}: parts do not recompose", sizes(m)));
        let middle = a.tgt();
        let mut found = 0;
        for k in 0..n {
            let actives: Vec<usize> = w.homs[s][k].iter().copied().filter(|&x| w.active[x]).collect();
            if actives.is_empty() {
                continue;
            }
            let candidate = &w.forests[k];
            let isos: Vec<ForestMap> = if candidate.sizes() == middle.sizes() {
                plus_maps(middle, candidate).into_iter().filter(is_iso).collect()
            } else {
                Vec::new()
            };
            for &i2 in w.homs[k][t].iter().filter(|&&x| w.inert[x]) {
                for &a2 in &actives {
                    if then(a2, i2) != id {
                        continue;
                    }
                    found += 1;
                    let comparisons = isos
                        .iter()
                        .filter(|sg| a.then(sg).as_ref() == Ok(&w.maps[a2]) && sg.then(&w.maps[i2]).as_ref() == Ok(&i))
                        .count();
                    r.check(comparisons == 1, || {
                        format!(
                            "{}: factorization through {:?} has {comparisons} comparisons",
                            sizes(m),
                            candidate.sizes()
                        )
                    });
                }
            }
        }
        r.check(found >= 1, || format!("{}: no factorization through a representative", sizes(m)));
    }

    for f in 0..w.maps.len() {
        for &g in &w.out[w.ends[f].1] {
            let both_inert = w.inert[f] && w.inert[g];
            let both_active = w.active[f] && w.active[g];
            if both_inert || both_active {
                let h = then(f, g);
                r.check((!both_inert || w.inert[h]) && (!both_active || w.active[h]), || {
                    format!("{} then {} leaves its class", sizes(&w.maps[f]), sizes(&w.maps[g]))
                });
            }
        }
    }

    // Squares a ; v = u ; i with a active and i inert, joined on the
    // composite one source at a time; lifts d : B -> C counted by search.
    for src in 0..n {
        let mut left: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for &a in w.out[src].iter().filter(|&&a| w.active[a]) {
            for &v in &w.out[w.ends[a].1] {
                left.entry(then(a, v)).or_default().push((a, v));
            }
        }
        for &u in &w.out[src] {
            let c = w.ends[u].1;
            for &i in w.out[c].iter().filter(|&&i| w.inert[i]) {
                let Some(squares) = left.get(&then(u, i)) else { continue };
                for &(a, v) in squares {
                    let b = w.ends[a].1;
                    let lifts = w.homs[b][c].iter().filter(|&&d| then(a, d) == u && then(d, i) == v).count();
                    r.check(lifts == 1, || {
                        format!("square {} / {} has {lifts} lifts", sizes(&w.maps[a]), sizes(&w.maps[i]))
                    });
                }
            }
        }
    }
    r
}

/// `|Aut(𝔠_n)| = n!`, counted as invertible plus-maps.
pub fn corolla_automorphisms(max_n: usize) -> SuiteReport {
    let mut r = SuiteReport::new("corolla-automorphisms");
    for n in 0..=max_n {
        let c = Forest::corolla(n);
        let autos = plus_maps(&c, &c).into_iter().filter(is_iso).count();
        let factorial: usize = (1..=n).product();
        r.check(autos == factorial, || format!("Aut(c_{n}) has {autos} elements"));
        r.check(automorphism_count(&c) == factorial as u128, || format!("automorphism_count(c_{n}) disagrees"));
    }
    r
}

/// Misodendric Γ-trees against the level-tree oracle, and vertex counts
/// against inert corolla inclusions (each vertex of arity `k` is hit by
/// `k!` inert maps out of `𝔠_k`).
pub fn tree_oracle(max_height: usize, max_width: usize) -> SuiteReport {
    let mut r = SuiteReport::new("oracle");
    let listing = match enumerate_trees(Pattern::Gamma, max_height, max_width) {
        Ok(l) => l,
        Err(e) => {
            r.check(false, || e.to_string());
            return r;
        }
    };
    let oracle = level_tree_oracle(max_height, max_width);
    r.check(listing.count_by_height() == oracle.count_by_height, || {
        format!("counts by height {:?} vs oracle {:?}", listing.count_by_height(), oracle.count_by_height)
    });
    let codes: std::collections::BTreeSet<String> = listing.codes.iter().cloned().collect();
    r.check(codes == oracle.codes, || {
        let missing: Vec<_> = oracle.codes.difference(&codes).take(3).collect();
        let extra: Vec<_> = codes.difference(&oracle.codes).take(3).collect();
        format!("codes differ: missing {missing:?}, extra {extra:?}")
    });
    r.note(format!("{} trees, by height {:?}", listing.trees.len(), oracle.count_by_height));
    for t in &listing.trees {
        let mut vertices = 0;
        for k in 0..=max_width {
            let inclusions = plus_maps(&Forest::corolla(k), t).into_iter().filter(is_inert).count();
            let factorial: usize = (1..=k).product();
            vertices += inclusions / factorial;
        }
        r.check(corolla_count(t) == vertices, || {
            format!("{:?}: corolla_count {} vs {vertices} inert corollas", t.sizes(), corolla_count(t))
        });
    }
    r
}

/// The underlying pointed maps of simplex maps (on `[n]`, `n <= max_n`)
/// and of forest maps (on the window) keep inert and active maps.
pub fn pattern_preservation(max_n: usize, max_height: usize, max_width: usize) -> SuiteReport {
    let mut r = SuiteReport::new("pattern-preservation");
    for n in 0..=max_n {
        for m in 0..=max_n {
            for phi in SimplexMap::all(n, m) {
                let (d, g) = (phi.classify(), phi.underlying_gamma().classify());
                r.check((!d.inert || g.inert) && (!d.active || g.active), || {
                    format!("{:?}: {d:?} but underlying {g:?}", phi.table())
                });
            }
        }
    }
    let w = ForestWindow::new(max_height, max_width);
    for (k, m) in w.maps.iter().enumerate() {
        let g = underlying_gamma_forest(m).classify();
        r.check((!w.inert[k] || g.inert) && (!w.active[k] || g.active), || format!("{}: underlying {g:?}", sizes(m)));
    }
    r
}

pub const SEGAL_FIXTURES: [&str; 4] = ["com", "ass", "free-binary", "two-colour"];

/// Nerves of the Segal fixtures pass; every single-point corruption of the
/// Com and Ass nerves at a representative forest fails a check reading it.
pub fn segal_suite(window: Window) -> SuiteReport {
    let mut r = SuiteReport::new("segal");
    for name in SEGAL_FIXTURES {
        let x = match Nerve::new(operad::fixture(name).expect("fixture"), window) {
            Ok(x) => x,
            Err(e) => {
                r.check(false, || format!("{name}: {e}"));
                continue;
            }
        };
        let report = check_segal(&x);
        r.check(report.passed(), || format!("{name}: {:?}", report.first_witness()));
        r.check(!report.vacuous, || format!("{name}: vacuous window"));
    }
    let mut reps = BTreeMap::new();
    for f in window.forests() {
        reps.entry((f.length(), canonical_code(&f))).or_insert(f);
    }
    for name in ["com", "ass"] {
        let x = Nerve::new(operad::fixture(name).expect("fixture"), window).expect("checked above");
        let mut corruptions = 0;
        for f in reps.values() {
            let touching = forests_touching(&window, f);
            let size = x.value(f).expect("in window");
            for e in 0..size {
                for kind in [Corruption::Remove(e), Corruption::Duplicate(e)] {
                    corruptions += 1;
                    let bad = Corrupted::new(&x, f.clone(), kind);
                    let report = check_segal_on(&bad, &touching);
                    r.check(!report.passed(), || format!("{name}: corruption {kind:?} at {:?} passes", f.sizes()));
                }
            }
        }
        r.note(format!("{name}: {corruptions} corruptions"));
    }
    r
}

fn nerve(o: Operad, window: Window) -> Result<Nerve, String> {
    let name = o.name().to_string();
    Nerve::new(o, window).map_err(|e| format!("{name}: {e}"))
}

/// Corolla formula surjectivity (every cap up to `max_cap`) and the inner
/// limit for every fixture, and the counts of `Env(Com)(η)` at cap 3.
pub fn envelope_suite(config: SliceConfig, max_cap: usize) -> SuiteReport {
    let mut r = SuiteReport::new("envelope");
    for name in operad::FIXTURE_NAMES {
        let x = match nerve(operad::fixture(name).expect("fixture"), Window::new(2, operad::FIXTURE_MAX_ARITY)) {
            Ok(x) => x,
            Err(e) => {
                r.check(false, || e);
                continue;
            }
        };
        for (cap, n) in (1..=max_cap).flat_map(|cap| (0..=2).map(move |n| (cap, n))) {
            match env_corolla(&x, n, config.with_cap(cap)) {
                Ok(c) => {
                    r.check(c.surjective, || {
                        format!(
                            "{name}: raw coproduct at c_{n}, cap {cap} (size {}) misses classes; hits {:?}, {} unmapped",
                            c.raw_coproduct, c.class_hits, c.unmapped
                        )
                    });
                    r.check(c.value.inner_limit.agrees, || {
                        format!("{name}: inner limit at c_{n}: {:?}", c.value.inner_limit.witness)
                    });
                }
                Err(e) => r.check(false, || format!("{name}: c_{n}: {e}")),
            }
        }
        for t in [Forest::eta(), Forest::edge_forest(2)] {
            match Slice::new(&t, config).and_then(|s| check_inner_limit(&x, &s)) {
                Ok(l) => r.check(l.agrees, || format!("{name}: inner limit at {:?}: {:?}", t.sizes(), l.witness)),
                Err(e) => r.check(false, || format!("{name}: {e}")),
            }
        }
    }
    let com = match nerve(operad::com(4), Window::new(2, 4)) {
        Ok(x) => x,
        Err(e) => {
            r.check(false, || e);
            return r;
        }
    };
    let at_eta = |cfg: SliceConfig| envelope_value(&com, &Forest::eta(), cfg);
    match at_eta(config.with_cap(3)) {
        Ok(v) => {
            r.check(v.class_count() == 3 && v.stabilized, || {
                format!(
                    "Env(Com)(eta) at cap 3 ({:?}): {} classes, stabilized {}, next cap {:?}",
                    v.mode,
                    v.class_count(),
                    v.stabilized,
                    v.next_cap_classes
                )
            });
        }
        Err(e) => r.check(false, || e.to_string()),
    }
    match at_eta(SliceConfig { exclude_empty: false, ..config.with_cap(3) }) {
        Ok(v) => r.check(v.class_count() == 1, || format!("Env(Com)(eta) with empty: {} classes", v.class_count())),
        Err(e) => r.check(false, || e.to_string()),
    }
    if config.mode == SliceMode::Plus {
        if let Ok(v) = at_eta(SliceConfig { mode: SliceMode::Iso, ..config.with_cap(3) }) {
            r.note(format!(
                "iso-only slice: Env(Com)(eta) has {} classes at cap 3 ({} at cap 4)",
                v.class_count(),
                v.next_cap_classes.map_or("?".into(), |c| c.to_string())
            ));
        }
    }
    r
}

/// `check_envelope_segal` on the nerves of `operads` (Com and Ass in the
/// acceptance run).
pub fn envelope_segal_suite(operads: &[Operad], window: Window, config: SliceConfig) -> SuiteReport {
    let mut r = SuiteReport::new("envelope-segal");
    for o in operads {
        let name = o.name().to_string();
        let x = match nerve(o.clone(), Window::new(window.max_height, o.max_arity())) {
            Ok(x) => x,
            Err(e) => {
                r.check(false, || e);
                continue;
            }
        };
        let report = check_envelope_segal(&x, window, config);
        r.check(report.passed(), || match report.first_witness() {
            Some(w) => format!("{name}: {:?} check at {:?}: {}", w.kind, w.forest.sizes(), w.detail),
            None => format!("{name}: failed without a witness"),
        });
    }
    r
}

/// Every lift of a Com word along a partition is cocartesian, and lifts
/// compose along composable partitions.
pub fn lift_suite(window: LiftWindow, composite_window: LiftWindow) -> SuiteReport {
    let mut r = SuiteReport::new("cocartesian-lifts");
    let com = operad::com(window.max_letters.max(composite_window.max_letters).max(1));
    let env = EnvOperad::new(&com);
    let mut lifts = 0;
    for c in grouped_words(1, window) {
        for phi in FinSetMap::all(c.arity(), window.max_groups) {
            lifts += 1;
            match cocartesian_lift(&env, &c, &phi).and_then(|l| {
                r.check(l.source.content() == l.target.content(), || {
                    format!("{c:?} along {:?} changes content", phi.table())
                });
                verify_cocartesian(&env, &l, window)
            }) {
                Ok(rep) => r.check(rep.passed, || format!("{c:?} along {:?}: {:?}", phi.table(), rep.witness)),
                Err(e) => r.check(false, || e.to_string()),
            }
        }
    }
    r.note(format!("{lifts} lifts verified"));
    // Lifts are unique up to unique isomorphism: the composite must factor
    // through the direct lift by exactly one invertible map over the
    // identity (often, but not always, the identity itself).
    let (mut composites, mut reordered) = (0, 0);
    for c in grouped_words(1, composite_window) {
        for phi in FinSetMap::all(c.arity(), composite_window.max_groups) {
            for psi in FinSetMap::all(phi.tgt_size(), composite_window.max_groups) {
                composites += 1;
                let composite = phi.then(&psi).expect("composable");
                let outcome = (|| {
                    let first = cocartesian_lift(&env, &c, &phi)?;
                    let second = cocartesian_lift(&env, &first.target, &psi)?;
                    let direct = cocartesian_lift(&env, &c, &composite)?;
                    let both = env.compose_grouped(&first.morphism, &second.morphism)?;
                    let id = FinSetMap::identity(psi.tgt_size());
                    let mut comparisons = Vec::new();
                    for g in env.grouped_homs(&direct.target, &both.tgt, &id) {
                        let invertible = g
                            .components
                            .iter()
                            .all(|k| k.lambda.is_bijective() && k.ops.iter().all(|&o| env.operad().arity(o) == 1));
                        if invertible && env.compose_grouped(&direct.morphism, &g)? == both {
                            comparisons.push(both == direct.morphism);
                        }
                    }
                    Ok::<_, crate::envelope::EnvelopeError>(comparisons)
                })();
                match outcome {
                    Ok(found) => {
                        reordered += usize::from(found == [false]);
                        r.check(found.len() == 1, || {
                            format!(
                                "{c:?}: lifts along {:?} then {:?} meet the composite lift through {} comparisons",
                                phi.table(),
                                psi.table(),
                                found.len()
                            )
                        })
                    }
                    Err(e) => r.check(false, || e.to_string()),
                }
            }
        }
    }
    r.note(format!("{composites} composites, {reordered} equal to the direct lift only after a permutation"));
    r
}

/// Triangle identities on the nerves of `operads` (Com and free-monoid in
/// the acceptance run).
pub fn adjunction_suite(operads: &[Operad], window: Window, config: SliceConfig) -> SuiteReport {
    let mut r = SuiteReport::new("adjunction");
    for o in operads {
        let name = o.name().to_string();
        let x = match nerve(o.clone(), Window::new(window.max_height, o.max_arity())) {
            Ok(x) => x,
            Err(e) => {
                r.check(false, || e);
                continue;
            }
        };
        match check_triangles(&x, window, config) {
            Ok(t) => {
                r.check(t.passed(), || {
                    format!(
                        "{name}: unit-counit {:?}, flatten {:?}, counit ill-defined at {}, missing products {}",
                        t.unit_counit.witness, t.flatten.witness, t.counit_ill_defined, t.missing_products
                    )
                });
            }
            Err(e) => r.check(false, || format!("{name}: {e}")),
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_gamma_factorization() {
        let r = gamma_factorization(2);
        assert!(r.passed, "{r:?}");
        assert!(r.checked > 100);
    }

    #[test]
    fn small_forest_factorization() {
        let r = forest_factorization(1, 2);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn failures_are_kept_in_order() {
        let mut r = SuiteReport::new("x");
        r.check(true, || unreachable!());
        r.check(false, || "first".into());
        r.check(false, || "second".into());
        assert_eq!((r.checked, r.passed, r.failure.as_deref()), (3, false, Some("first")));
    }
}
