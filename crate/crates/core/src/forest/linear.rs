//! Linearisability: every object has an essentially unique active arrow to a
//! ♭-elementary object (or none), checked on a finite window of the active
//! subcategory.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use super::{enumerate_trees, plus_maps, Forest, ForestError, ForestMap, Pattern};
use crate::kernel::{Arrow, FinCategory, FinSetMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearisabilityReport {
    pub ok: bool,
    pub objects: usize,
    pub arrows: usize,
    /// Object and the two active arrows to elementaries that are not related
    /// by exactly one isomorphism.
    pub witness: Option<(String, usize, usize)>,
}

/// `cat` is the active subcategory with a total composition table;
/// `elementary[x]` marks the ♭-elementary objects.
pub fn check_linearisable<O: std::fmt::Debug, A>(
    cat: &FinCategory<O, A>,
    elementary: &[bool],
) -> LinearisabilityReport {
    let arrows = cat.arrows();
    let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, a) in arrows.iter().enumerate() {
        between.entry((a.src, a.tgt)).or_default().push(i);
    }
    let is_iso =
        |u: usize| {
            let a = &arrows[u];
            between.get(&(a.tgt, a.src)).into_iter().flatten().any(|&v| {
                cat.compose(u, v) == Some(cat.identity(a.src)) && cat.compose(v, u) == Some(cat.identity(a.tgt))
            })
        };
    let mut witness = None;
    'objects: for x in 0..cat.objects().len() {
        let lifts: Vec<usize> =
            (0..arrows.len()).filter(|&a| arrows[a].src == x && elementary[arrows[a].tgt]).collect();
        for &a in &lifts {
            for &b in &lifts {
                let connecting = between
                    .get(&(arrows[a].tgt, arrows[b].tgt))
                    .into_iter()
                    .flatten()
                    .filter(|&&u| cat.compose(a, u) == Some(b) && is_iso(u))
                    .count();
                if connecting != 1 {
                    witness = Some((format!("{:?}", cat.objects()[x]), a, b));
                    break 'objects;
                }
            }
        }
    }
    LinearisabilityReport { ok: witness.is_none(), objects: cat.objects().len(), arrows: arrows.len(), witness }
}

/// Closes a list of arrows (including identities) under a composition
/// function into a [`FinCategory`].
fn build<O, K: Clone + Eq + Hash>(
    objects: Vec<O>,
    arrows: Vec<(usize, usize, K)>,
    identity: impl Fn(usize) -> K,
    compose: impl Fn(&K, &K) -> K,
) -> FinCategory<O, K> {
    let index: HashMap<(usize, usize, K), usize> =
        arrows.iter().cloned().enumerate().map(|(i, (s, t, k))| ((s, t, k), i)).collect();
    let mut outgoing: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, a) in arrows.iter().enumerate() {
        outgoing.entry(a.0).or_default().push(i);
    }
    let mut composition = HashMap::new();
    for (f, (s, t, kf)) in arrows.iter().enumerate() {
        for &g in outgoing.get(t).into_iter().flatten() {
            let (_, u, kg) = &arrows[g];
            let h = index[&(*s, *u, compose(kf, kg))];
            composition.insert((f, g), h);
        }
    }
    let identities = (0..objects.len()).map(|x| index[&(x, x, identity(x))]).collect();
    let arrows = arrows.into_iter().map(|(src, tgt, payload)| Arrow { src, tgt, payload }).collect();
    FinCategory::new(objects, arrows, composition, identities).expect("closed under composition")
}

/// Active arrows of `Γ^op` among `⟨0⟩, …, ⟨max_n⟩` (functions between the
/// non-basepoint parts), with `⟨1⟩` elementary. With `corrupted`, a second
/// elementary copy of `⟨1⟩` is added that receives the same arrows but is
/// not isomorphic to it, so lifts stop being unique.
pub fn gamma_active_window(max_n: usize, corrupted: bool) -> (FinCategory<String, FinSetMap>, Vec<bool>) {
    let mut objects: Vec<String> = (0..=max_n).map(|n| format!("<{n}>")).collect();
    let mut sizes: Vec<usize> = (0..=max_n).collect();
    if corrupted {
        objects.push("<1>'".into());
        sizes.push(1);
    }
    let copy = corrupted.then_some(max_n + 1);
    let mut arrows = Vec::new();
    for s in 0..objects.len() {
        for t in 0..objects.len() {
            if Some(s) == copy && t != s {
                continue;
            }
            for f in FinSetMap::all(sizes[s], sizes[t]) {
                if Some(s) == copy && !f.is_bijective() {
                    continue;
                }
                arrows.push((s, t, f));
            }
        }
    }
    let elementary = sizes.iter().map(|&s| s == 1).collect();
    let cat = build(objects, arrows, |x| FinSetMap::identity(sizes[x]), |f, g| f.then(g).expect("composable"));
    (cat, elementary)
}

/// Active arrows of the opposite of the plus construction of `Γ^op` among
/// tree isomorphism classes in the window; corollas are elementary. An
/// arrow `B -> A` is an active plus-map `A -> B`.
pub fn plus_active_window(
    max_height: usize,
    max_width: usize,
) -> Result<(FinCategory<Forest, ForestMap>, Vec<bool>), ForestError> {
    let trees = enumerate_trees(Pattern::Gamma, max_height, max_width)?.trees;
    let mut arrows = Vec::new();
    for (a, ta) in trees.iter().enumerate() {
        for (b, tb) in trees.iter().enumerate() {
            for m in plus_maps(ta, tb) {
                if m.classify().map(|c| c.active).unwrap_or(false) {
                    arrows.push((b, a, m));
                }
            }
        }
    }
    let elementary = trees.iter().map(|t| t.length() == 1).collect();
    let ids: Vec<ForestMap> = trees.iter().map(ForestMap::identity).collect();
    let cat = build(trees, arrows, |x| ids[x].clone(), |p1, p2| p2.then(p1).expect("composable"));
    Ok((cat, elementary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_is_linearisable() {
        let (cat, el) = gamma_active_window(3, false);
        cat.check_laws(true).unwrap();
        assert!(check_linearisable(&cat, &el).ok);
    }

    #[test]
    fn corrupted_gamma_fails() {
        let (cat, el) = gamma_active_window(3, true);
        cat.check_laws(true).unwrap();
        let r = check_linearisable(&cat, &el);
        assert!(!r.ok);
        assert!(r.witness.is_some());
    }

    #[test]
    fn plus_window_is_linearisable() {
        let (cat, el) = plus_active_window(2, 2).unwrap();
        cat.check_laws(true).unwrap();
        assert!(check_linearisable(&cat, &el).ok);
    }
}
