//! Set-valued presheaves on windows of forests and the level, root and
//! shrub decompositions.
//!
//! Every check compares `X(F)` with a product or matching-family set built
//! from inert restrictions of `F`; it passes when that comparison map is a
//! bijection. Elements of `X(F)` are the indices `0..X(F)`.

mod nerve;
mod presheaves;

pub use nerve::{Labelling, Nerve};
pub use presheaves::{
    validate_functoriality, window_maps, Corrupted, Corruption, FunctorialityWitness, Representable, Tabulated,
    Terminal,
};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::{all_forests, validate_forest_map, Forest, ForestMap};
use crate::kernel::{limit_over_cone, Arrow, FinCategory, FinSetMap, KernelError, SetDiagram};
use crate::operad::OperadError;
use crate::simplex::SimplexMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SegalError {
    #[error("forest outside the window: {0}")]
    OutsideWindow(String),
    #[error("transport undefined: {0}")]
    UndefinedTransport(String),
    #[error("element {element} of {forest} has no image after corruption")]
    Dangling { forest: String, element: usize },
    #[error("window width {width} exceeds the operad's arity bound {bound}")]
    ArityBound { width: usize, bound: usize },
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Forests of length `<= max_height` with every level of size
/// `<= max_width` and, optionally, total size `<= max_total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub max_height: usize,
    pub max_width: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_total: Option<usize>,
}

impl Window {
    pub fn new(max_height: usize, max_width: usize) -> Self {
        Self { max_height, max_width, max_total: None }
    }

    pub fn with_total(self, max_total: usize) -> Self {
        Self { max_total: Some(max_total), ..self }
    }

    pub fn contains(&self, f: &Forest) -> bool {
        f.length() <= self.max_height
            && f.max_width() <= self.max_width
            && self.max_total.is_none_or(|t| f.total_size() <= t)
    }

    /// Every labelled forest in the window. Restrictions and fibres of a
    /// forest are no larger than it, so the list is closed under both.
    pub fn forests(&self) -> Vec<Forest> {
        let mut all = all_forests(self.max_height, self.max_width, self.max_total.unwrap_or(usize::MAX));
        all.retain(|f| self.contains(f));
        all
    }
}

/// A presheaf on the plus category: `transport(m, x)` for `m : A -> B`
/// sends `x ∈ X(B)` to an element of `X(A)`.
pub trait Presheaf: Sync {
    fn name(&self) -> String;

    fn window(&self) -> Window;

    fn value(&self, f: &Forest) -> Result<usize, SegalError>;

    fn transport(&self, m: &ForestMap, x: usize) -> Result<usize, SegalError>;

    /// Human-readable description of an element.
    fn describe(&self, _f: &Forest, x: usize) -> String {
        format!("#{x}")
    }

    fn transport_table(&self, m: &ForestMap) -> Result<FinSetMap, SegalError> {
        let n = self.value(m.src())?;
        let table = (0..self.value(m.tgt())?).map(|x| self.transport(m, x)).collect::<Result<Vec<_>, _>>()?;
        Ok(FinSetMap::with_sizes(table.len(), n, table)?)
    }
}

/// Which decomposition a check belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Level,
    Root,
    Shrub,
}

/// Why a comparison map is not a bijection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: CheckKind,
    pub forest: Forest,
    pub detail: String,
}

/// Outcome of one decomposition over the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub checked: usize,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl CheckSummary {
    fn new() -> Self {
        Self { checked: 0, passed: true, witness: None }
    }

    fn record(&mut self, outcome: Result<(), Witness>) {
        self.checked += 1;
        if let Err(w) = outcome {
            if self.passed {
                self.passed = false;
                self.witness = Some(w);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegalReport {
    pub presheaf: String,
    pub window: Window,
    pub level: CheckSummary,
    pub root: CheckSummary,
    pub shrub: CheckSummary,
    /// The window holds no forest of positive size.
    pub vacuous: bool,
    /// Checks only quantify over forests inside the window.
    pub note: String,
}

impl SegalReport {
    pub fn passed(&self) -> bool {
        self.level.passed && self.root.passed && self.shrub.passed
    }

    pub fn first_witness(&self) -> Option<&Witness> {
        self.level.witness.as_ref().or(self.root.witness.as_ref()).or(self.shrub.witness.as_ref())
    }
}

/// Compares `x ↦ image(x)` with a target of known size: the map must be
/// injective and hit every target point.
fn bijection_onto<K: std::hash::Hash + Eq + std::fmt::Debug>(
    kind: CheckKind,
    f: &Forest,
    source: usize,
    target_size: Option<usize>,
    mut image: impl FnMut(usize) -> Result<K, SegalError>,
    in_target: impl Fn(&K) -> bool,
) -> Result<(), Witness> {
    let witness = |detail: String| Witness { kind, forest: f.clone(), detail };
    let mut seen: HashMap<K, usize> = HashMap::new();
    for x in 0..source {
        let k = image(x).map_err(|e| witness(format!("comparison undefined at element {x}: {e}")))?;
        if !in_target(&k) {
            return Err(witness(format!("element {x} maps to {k:?}, outside the target")));
        }
        if let Some(y) = seen.insert(k, x) {
            return Err(witness(format!("elements {y} and {x} have the same image")));
        }
    }
    match target_size {
        Some(t) if t != source => Err(witness(format!("{source} elements against a target of {t}"))),
        _ => Ok(()),
    }
}

fn value_or_witness(x: &dyn Presheaf, kind: CheckKind, f: &Forest) -> Result<usize, Witness> {
    x.value(f).map_err(|e| Witness { kind, forest: f.clone(), detail: e.to_string() })
}

/// The inert inclusion of the edge `i` into `([0], ⟨k⟩)`.
pub fn edge_inclusion(f: &Forest, i: usize) -> ForestMap {
    validate_forest_map(
        &Forest::eta(),
        f,
        SimplexMap::identity(0),
        vec![FinSetMap::new(f.size(0), vec![i]).expect("edge in range")],
    )
    .expect("edge inclusion is natural")
}

/// The inert inclusion of the corolla at vertex `v` of a length-1 forest.
pub fn vertex_inclusion(f: &Forest, v: usize) -> ForestMap {
    let fib = f.fiber(1, v);
    let c = Forest::corolla(fib.len());
    validate_forest_map(
        &c,
        f,
        SimplexMap::identity(1),
        vec![
            FinSetMap::new(f.size(0), fib).expect("fibre in range"),
            FinSetMap::new(f.size(1), vec![v]).expect("vertex"),
        ],
    )
    .expect("vertex inclusion is natural")
}

/// Level decomposition: `X(F)` against the matching families of the
/// length-1 restrictions `L_k` over the edge forests `E_k`.
pub fn check_level(x: &dyn Presheaf, f: &Forest) -> Result<(), Witness> {
    let n = f.length();
    if n < 2 {
        return Ok(());
    }
    let kind = CheckKind::Level;
    let err = |detail: String| Witness { kind, forest: f.clone(), detail };
    let layers: Vec<ForestMap> =
        (0..n).map(|k| ForestMap::cartesian_lift(f, &SimplexMap::interval(1, k, n).expect("in range"))).collect();
    // objects L_0, E_1, L_1, …, E_{n-1}, L_{n-1}; arrows from each L to its end edges
    let mut values = Vec::new();
    let mut arrows = Vec::new();
    let mut transports = Vec::new();
    for (k, l) in layers.iter().enumerate() {
        values.push(value_or_witness(x, kind, l.src())?);
        if k + 1 < n {
            let e = ForestMap::cartesian_lift(l.src(), &SimplexMap::new(1, vec![1]).expect("vertex"));
            values.push(value_or_witness(x, kind, e.src())?);
        }
    }
    for k in 0..n {
        let l_obj = 2 * k;
        for (end, e_obj) in [(0usize, l_obj.checked_sub(1)), (1, (k + 1 < n).then_some(l_obj + 1))] {
            let Some(e_obj) = e_obj else { continue };
            let e = ForestMap::cartesian_lift(layers[k].src(), &SimplexMap::new(1, vec![end]).expect("vertex"));
            let t = x.transport_table(&e).map_err(|e| err(e.to_string()))?;
            arrows.push(Arrow { src: l_obj, tgt: e_obj, payload: () });
            transports.push(t);
        }
    }
    let objects = values.len();
    let mut all_arrows: Vec<Arrow<()>> = (0..objects).map(|o| Arrow { src: o, tgt: o, payload: () }).collect();
    let mut all_transports: Vec<FinSetMap> = values.iter().map(|&v| FinSetMap::identity(v)).collect();
    let mut composition = HashMap::new();
    for o in 0..objects {
        composition.insert((o, o), o);
    }
    for (a, t) in arrows.into_iter().zip(transports) {
        let idx = all_arrows.len();
        composition.insert((a.src, idx), idx);
        composition.insert((idx, a.tgt), idx);
        all_arrows.push(a);
        all_transports.push(t);
    }
    let shape = FinCategory::new((0..objects).collect::<Vec<_>>(), all_arrows, composition, (0..objects).collect())
        .map_err(|e| err(e.to_string()))?;
    let diagram = SetDiagram::new(shape, values, all_transports).map_err(|e| err(e.to_string()))?;
    let families = limit_over_cone(&diagram).map_err(|e| err(e.to_string()))?;
    let family_set: std::collections::HashSet<Vec<usize>> = families.iter().cloned().collect();
    let source = value_or_witness(x, kind, f)?;
    bijection_onto(
        kind,
        f,
        source,
        Some(families.len()),
        |e| {
            let mut fam = Vec::with_capacity(2 * n - 1);
            for (k, l) in layers.iter().enumerate() {
                let y = x.transport(l, e)?;
                fam.push(y);
                if k + 1 < n {
                    let edge = ForestMap::cartesian_lift(l.src(), &SimplexMap::new(1, vec![1]).expect("vertex"));
                    fam.push(x.transport(&edge, y)?);
                }
            }
            Ok(fam)
        },
        |fam| family_set.contains(fam),
    )
}

fn checked_power(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

/// Root decomposition: `X([0], ⟨k⟩)` against `X(η)^k` via the edge
/// inclusions.
pub fn check_root(x: &dyn Presheaf, f: &Forest) -> Result<(), Witness> {
    if f.length() != 0 {
        return Ok(());
    }
    let kind = CheckKind::Root;
    let k = f.size(0);
    // the empty product needs no factor
    let eta = if k == 0 { 0 } else { value_or_witness(x, kind, &Forest::eta())? };
    let incl: Vec<ForestMap> = (0..k).map(|i| edge_inclusion(f, i)).collect();
    let source = value_or_witness(x, kind, f)?;
    bijection_onto(
        kind,
        f,
        source,
        Some(checked_power(eta, k).unwrap_or(usize::MAX)),
        |e| incl.iter().map(|m| x.transport(m, e)).collect::<Result<Vec<_>, _>>(),
        |v| v.iter().all(|&y| y < eta),
    )
}

/// Shrub decomposition: `X([1], O_0 -> O_1)` against the product of the
/// corolla values at each vertex.
pub fn check_shrub(x: &dyn Presheaf, f: &Forest) -> Result<(), Witness> {
    if f.length() != 1 {
        return Ok(());
    }
    let kind = CheckKind::Shrub;
    let incl: Vec<ForestMap> = (0..f.size(1)).map(|v| vertex_inclusion(f, v)).collect();
    let sizes = incl.iter().map(|m| value_or_witness(x, kind, m.src())).collect::<Result<Vec<_>, _>>()?;
    let target = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).unwrap_or(usize::MAX);
    let source = value_or_witness(x, kind, f)?;
    bijection_onto(
        kind,
        f,
        source,
        Some(target),
        |e| incl.iter().map(|m| x.transport(m, e)).collect::<Result<Vec<_>, _>>(),
        |v| v.iter().zip(&sizes).all(|(&y, &s)| y < s),
    )
}

/// Runs the three decompositions on every forest of `forests`.
pub fn check_segal_on(x: &dyn Presheaf, forests: &[Forest]) -> SegalReport {
    let mut level = CheckSummary::new();
    let mut root = CheckSummary::new();
    let mut shrub = CheckSummary::new();
    for f in forests {
        match f.length() {
            0 => root.record(check_root(x, f)),
            1 => shrub.record(check_shrub(x, f)),
            _ => level.record(check_level(x, f)),
        }
    }
    SegalReport {
        presheaf: x.name(),
        window: x.window(),
        vacuous: forests.iter().all(|f| f.total_size() == 0),
        level,
        root,
        shrub,
        note: "checks quantify only over forests inside the window".into(),
    }
}

/// All three decompositions over the presheaf's whole window.
pub fn check_segal(x: &dyn Presheaf) -> SegalReport {
    check_segal_on(x, &x.window().forests())
}

/// The decompositions at misodendric forests (trees) of the window only.
pub fn check_segal_trees(x: &dyn Presheaf) -> SegalReport {
    let trees: Vec<Forest> = x.window().forests().into_iter().filter(Forest::is_misodendric).collect();
    check_segal_on(x, &trees)
}

/// The same checks split across `jobs` threads; the report is identical to
/// the sequential one.
pub fn check_segal_parallel(x: &dyn Presheaf, jobs: usize) -> SegalReport {
    let forests = x.window().forests();
    if jobs <= 1 || forests.len() < 2 {
        return check_segal_on(x, &forests);
    }
    let chunk = forests.len().div_ceil(jobs);
    let parts: Vec<SegalReport> = std::thread::scope(|s| {
        let handles: Vec<_> = forests.chunks(chunk).map(|c| s.spawn(move || check_segal_on(x, c))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let merge = |pick: fn(&SegalReport) -> &CheckSummary| {
        let mut out = CheckSummary::new();
        for p in &parts {
            let c = pick(p);
            out.checked += c.checked;
            if out.passed && !c.passed {
                out.passed = false;
                out.witness = c.witness.clone();
            }
        }
        out
    };
    SegalReport {
        presheaf: x.name(),
        window: x.window(),
        vacuous: forests.iter().all(|f| f.total_size() == 0),
        level: merge(|r| &r.level),
        root: merge(|r| &r.root),
        shrub: merge(|r| &r.shrub),
        note: "checks quantify only over forests inside the window".into(),
    }
}

/// Forests whose checks read the value at `f`: `f` itself, every forest
/// of length 0 when `f` is an edge forest, every length-1 forest when `f`
/// has length 1, and every length-2 forest restricting to `f`.
pub fn forests_touching(window: &Window, f: &Forest) -> Vec<Forest> {
    let all = window.forests();
    all.into_iter()
        .filter(|g| {
            if g == f {
                return true;
            }
            match (f.length(), g.length()) {
                (0, 0) | (1, 1) => true,
                (l, n) if n >= 2 && l <= 1 => {
                    (0..=n - l).any(|k| g.restrict(&SimplexMap::interval(l, k, n).expect("in range")) == *f)
                }
                _ => false,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad;

    #[test]
    fn window_membership() {
        let w = Window::new(1, 2);
        assert!(w.contains(&Forest::corolla(2)));
        assert!(!w.contains(&Forest::corolla(3)));
        assert!(!w.with_total(2).contains(&Forest::corolla(2)));
    }

    #[test]
    fn ass_nerve_level_example() {
        let x = Nerve::new(operad::ass(3), Window::new(2, 3)).unwrap();
        let t = Forest::new(vec![FinSetMap::new(2, vec![0, 0, 1]).unwrap(), FinSetMap::new(1, vec![0, 0]).unwrap()])
            .unwrap();
        assert_eq!(x.value(&t).unwrap(), 4);
        check_level(&x, &t).unwrap();
        let shrub = Forest::new(vec![FinSetMap::new(2, vec![0, 0, 1]).unwrap()]).unwrap();
        assert_eq!(x.value(&shrub).unwrap(), 2);
        check_shrub(&x, &shrub).unwrap();
    }

    #[test]
    fn com_and_terminal_pass() {
        let w = Window::new(2, 2);
        assert!(check_segal(&Nerve::new(operad::com(4), w).unwrap()).passed());
        assert!(check_segal(&Terminal::new(w)).passed());
    }

    #[test]
    fn root_corruption_is_caught() {
        let w = Window::new(1, 2);
        let base = Nerve::new(operad::two_colour(4), w).unwrap();
        let bad = Corrupted::new(&base, Forest::edge_forest(2), Corruption::Duplicate(0));
        let r = check_segal(&bad);
        assert!(!r.root.passed);
        assert_eq!(r.root.witness.as_ref().unwrap().forest, Forest::edge_forest(2));
    }

    #[test]
    fn parallel_report_matches() {
        let x = Nerve::new(operad::ass(4), Window::new(2, 2)).unwrap();
        assert_eq!(check_segal(&x), check_segal_parallel(&x, 3));
    }
}
