//! Level forests: chains of functions `O_0 -> O_1 -> … -> O_n`.
//!
//! Active arrows of pointed finite sets are functions between their
//! non-basepoint parts, so a forest over pointed finite sets is stored as
//! the level sizes and the functions between consecutive levels. Level `n`
//! holds the roots, level `0` the leaves; an element of level `i >= 1` is a
//! vertex whose inputs are its fibre in level `i - 1`.
//!
//! A [`ForestMap`] `(φ, f)` goes from `([m], O)` to `([n], P)` with
//! `f_i : O_i -> P_{φ(i)}`. It always commutes with the chains; it lies in
//! the plus subcategory when every component is injective and every
//! naturality square is a pullback.

mod dot;
mod linear;
mod tree;

pub use dot::forest_to_dot;
pub use linear::{check_linearisable, gamma_active_window, plus_active_window, LinearisabilityReport};
pub use tree::{
    automorphism_count, canonical_code, canonical_form, corolla_count, enumerate_trees, level_tree_oracle,
    underlying_gamma_forest, vertex_index, vertices, OracleResult, TreeListing,
};
pub(crate) use tree::{canonical_positions, relabel};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gamma::PointedMap;
use crate::kernel::{is_cartesian_square, pullback_finset, FinSetMap};
use crate::simplex::SimplexMap;

/// Default enumeration bounds.
pub const DEFAULT_MAX_HEIGHT: usize = 3;
pub const DEFAULT_MAX_WIDTH: usize = 4;
/// Hard limits for the enumerators.
pub const MAX_HEIGHT: usize = 4;
pub const MAX_WIDTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("chain arrow {index} is not active")]
    NonActive { index: usize },
    #[error("chain arrow {index} has source {found}, expected {expected}")]
    NotComposable { index: usize, found: usize, expected: usize },
    #[error("forest of length 0 needs an explicit size")]
    MissingSize,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("naturality fails between levels {level} and {next} at element {element}")]
    NotNatural { level: usize, next: usize, element: usize },
    #[error("map is not in the plus subcategory: {0}")]
    NotPlus(PlusWitness),
    #[error("enumeration bound exceeded: height {height}, width {width}")]
    BoundExceeded { height: usize, width: usize },
    #[error("forest is not over the terminal pattern")]
    NotTerminal,
}

/// Why a natural transformation fails to be a plus-map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PlusWitness {
    /// Component `level` sends two elements to `target`.
    NotSemiInert { level: usize, target: usize },
    /// The naturality square between `level` and `level + 1` is not a pullback.
    NotCartesian { level: usize },
}

impl std::fmt::Display for PlusWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlusWitness::NotSemiInert { level, target } => {
                write!(f, "component {level} has two elements over {target}")
            }
            PlusWitness::NotCartesian { level } => {
                write!(f, "square between levels {level} and {} is not cartesian", level + 1)
            }
        }
    }
}

/// Base pattern of the plus construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    /// Pointed finite sets; forests are level forests.
    Gamma,
    /// The one-object pattern sitting over `⟨1⟩`; forests are simplices.
    Terminal,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest {
    sizes: Vec<usize>,
    chain: Vec<FinSetMap>,
}

#[derive(Serialize, Deserialize)]
struct RawForest {
    length: usize,
    chain: Vec<FinSetMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
}

impl Serialize for Forest {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawForest {
            length: self.length(),
            chain: self.chain.clone(),
            size: (self.length() == 0).then(|| self.sizes[0]),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Forest {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawForest::deserialize(d)?;
        if raw.chain.len() != raw.length {
            return Err(serde::de::Error::custom(format!(
                "length {} but {} chain arrows",
                raw.length,
                raw.chain.len()
            )));
        }
        let forest = if raw.length == 0 {
            Forest::edge_forest(raw.size.ok_or_else(|| serde::de::Error::custom(ForestError::MissingSize))?)
        } else {
            Forest::new(raw.chain).map_err(serde::de::Error::custom)?
        };
        if let Some(size) = raw.size {
            if size != forest.sizes[0] {
                return Err(serde::de::Error::custom("size disagrees with the chain"));
            }
        }
        Ok(forest)
    }
}

impl Forest {
    /// Forest from a non-empty composable chain of functions.
    pub fn new(chain: Vec<FinSetMap>) -> Result<Self, ForestError> {
        let first = chain.first().ok_or(ForestError::MissingSize)?;
        let mut sizes = vec![first.src_size()];
        for (index, f) in chain.iter().enumerate() {
            let expected = *sizes.last().expect("non-empty");
            if f.src_size() != expected {
                return Err(ForestError::NotComposable { index, found: f.src_size(), expected });
            }
            sizes.push(f.tgt_size());
        }
        Ok(Self { sizes, chain })
    }

    /// Forest from a chain of pointed maps, all of which must be active.
    pub fn from_pointed(base: usize, chain: &[PointedMap]) -> Result<Self, ForestError> {
        if chain.is_empty() {
            return Ok(Self::edge_forest(base));
        }
        let functions = chain
            .iter()
            .enumerate()
            .map(|(index, p)| p.to_function().map_err(|_| ForestError::NonActive { index }))
            .collect::<Result<Vec<_>, _>>()?;
        if functions[0].src_size() != base {
            return Err(ForestError::NotComposable { index: 0, found: functions[0].src_size(), expected: base });
        }
        Self::new(functions)
    }

    /// `([0], ⟨k⟩)`: `k` parallel edges.
    pub fn edge_forest(k: usize) -> Self {
        Self { sizes: vec![k], chain: Vec::new() }
    }

    /// The edge `η`.
    pub fn eta() -> Self {
        Self::edge_forest(1)
    }

    /// The corolla with `n` leaves.
    pub fn corolla(n: usize) -> Self {
        Self::new(vec![FinSetMap::to_point(n)]).expect("single arrow")
    }

    /// `([n], ⟨1⟩ -> … -> ⟨1⟩)`, the object `[n]` of the plus construction
    /// of the terminal pattern.
    pub fn linear(n: usize) -> Self {
        Self { sizes: vec![1; n + 1], chain: vec![FinSetMap::identity(1); n] }
    }

    pub fn length(&self) -> usize {
        self.chain.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, level: usize) -> usize {
        self.sizes[level]
    }

    pub fn chain(&self) -> &[FinSetMap] {
        &self.chain
    }

    /// Total number of edges.
    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Last level is a single root.
    pub fn is_misodendric(&self) -> bool {
        self.sizes[self.length()] == 1
    }

    pub fn is_terminal_pattern(&self) -> bool {
        self.sizes.iter().all(|&s| s == 1)
    }

    pub fn max_width(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    /// Composite of the chain from level `a` to level `b >= a`.
    pub fn between(&self, a: usize, b: usize) -> FinSetMap {
        let mut f = FinSetMap::identity(self.sizes[a]);
        for k in a..b {
            f = f.then(&self.chain[k]).expect("chain is composable");
        }
        f
    }

    /// Sorted inputs of vertex `v` at level `level >= 1`.
    pub fn fiber(&self, level: usize, v: usize) -> Vec<usize> {
        self.chain[level - 1].fiber(v)
    }

    /// `([m], P ∘ φ)`: the chain restricted along `φ : [m] -> [n]`.
    pub fn restrict(&self, phi: &SimplexMap) -> Forest {
        assert_eq!(phi.tgt(), self.length(), "restriction along a map into the wrong length");
        let sizes = phi.table().iter().map(|&j| self.sizes[j]).collect();
        let chain = (0..phi.src()).map(|i| self.between(phi.apply(i), phi.apply(i + 1))).collect();
        Forest { sizes, chain }
    }

    /// The forest with pointed chain arrows, for display.
    pub fn pointed_chain(&self) -> Vec<PointedMap> {
        self.chain.iter().map(PointedMap::from_function).collect()
    }
}

/// A natural transformation `(φ, f)` between forests.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForestMap {
    src: Forest,
    tgt: Forest,
    phi: SimplexMap,
    components: Vec<FinSetMap>,
    plus_witness: Option<PlusWitness>,
}

#[derive(Serialize, Deserialize)]
struct RawForestMap {
    src: Forest,
    tgt: Forest,
    phi: SimplexMap,
    components: Vec<FinSetMap>,
}

impl Serialize for ForestMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawForestMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            phi: self.phi.clone(),
            components: self.components.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ForestMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawForestMap::deserialize(d)?;
        validate_forest_map(&raw.src, &raw.tgt, raw.phi, raw.components).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestClass {
    pub inert: bool,
    pub active: bool,
}

/// Checks naturality and the plus conditions. Shape problems and failures
/// of naturality are errors; a natural transformation that is not a
/// plus-map is returned with its witness recorded.
pub fn validate_forest_map(
    src: &Forest,
    tgt: &Forest,
    phi: SimplexMap,
    components: Vec<FinSetMap>,
) -> Result<ForestMap, ForestError> {
    if phi.src() != src.length() || phi.tgt() != tgt.length() {
        return Err(ForestError::ShapeMismatch(format!(
            "φ : [{}] -> [{}] between forests of lengths {} and {}",
            phi.src(),
            phi.tgt(),
            src.length(),
            tgt.length()
        )));
    }
    if components.len() != src.length() + 1 {
        return Err(ForestError::ShapeMismatch(format!(
            "{} components for a forest of length {}",
            components.len(),
            src.length()
        )));
    }
    for (i, f) in components.iter().enumerate() {
        if f.src_size() != src.size(i) || f.tgt_size() != tgt.size(phi.apply(i)) {
            return Err(ForestError::ShapeMismatch(format!("component {i} has the wrong shape")));
        }
    }
    let mut squares = Vec::with_capacity(src.length());
    for i in 0..src.length() {
        let right = tgt.between(phi.apply(i), phi.apply(i + 1));
        for e in 0..src.size(i) {
            if right.apply(components[i].apply(e)) != components[i + 1].apply(src.chain[i].apply(e)) {
                return Err(ForestError::NotNatural { level: i, next: i + 1, element: e });
            }
        }
        squares.push(right);
    }
    let mut plus_witness = None;
    'check: for (level, f) in components.iter().enumerate() {
        for (target, &k) in f.fiber_sizes().iter().enumerate() {
            if k > 1 {
                plus_witness = Some(PlusWitness::NotSemiInert { level, target });
                break 'check;
            }
        }
    }
    if plus_witness.is_none() {
        for (i, right) in squares.iter().enumerate() {
            let cartesian = is_cartesian_square(&components[i], &components[i + 1], &src.chain[i], right)
                .expect("square commutes by naturality");
            if !cartesian {
                plus_witness = Some(PlusWitness::NotCartesian { level: i });
                break;
            }
        }
    }
    Ok(ForestMap { src: src.clone(), tgt: tgt.clone(), phi, components, plus_witness })
}

impl ForestMap {
    /// Validated plus-map, rejecting anything outside the plus subcategory.
    pub fn plus(src: &Forest, tgt: &Forest, phi: SimplexMap, components: Vec<FinSetMap>) -> Result<Self, ForestError> {
        let m = validate_forest_map(src, tgt, phi, components)?;
        match &m.plus_witness {
            None => Ok(m),
            Some(w) => Err(ForestError::NotPlus(w.clone())),
        }
    }

    pub fn identity(f: &Forest) -> Self {
        ForestMap {
            src: f.clone(),
            tgt: f.clone(),
            phi: SimplexMap::identity(f.length()),
            components: f.sizes.iter().map(|&s| FinSetMap::identity(s)).collect(),
            plus_witness: None,
        }
    }

    /// The cartesian lift `(φ, id) : ([m], P ∘ φ) -> ([n], P)`.
    pub fn cartesian_lift(tgt: &Forest, phi: &SimplexMap) -> Self {
        let src = tgt.restrict(phi);
        let components = src.sizes.iter().map(|&s| FinSetMap::identity(s)).collect();
        ForestMap { src, tgt: tgt.clone(), phi: phi.clone(), components, plus_witness: None }
    }

    pub fn src(&self) -> &Forest {
        &self.src
    }

    pub fn tgt(&self) -> &Forest {
        &self.tgt
    }

    pub fn phi(&self) -> &SimplexMap {
        &self.phi
    }

    pub fn components(&self) -> &[FinSetMap] {
        &self.components
    }

    pub fn component(&self, level: usize) -> &FinSetMap {
        &self.components[level]
    }

    pub fn in_pre(&self) -> bool {
        true
    }

    pub fn in_plus(&self) -> bool {
        self.plus_witness.is_none()
    }

    pub fn plus_witness(&self) -> Option<&PlusWitness> {
        self.plus_witness.as_ref()
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && *self == ForestMap::identity(&self.src)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ForestMap) -> Result<ForestMap, ForestError> {
        if self.tgt != other.src {
            return Err(ForestError::ShapeMismatch("maps are not composable".into()));
        }
        let phi = self.phi.then(&other.phi).expect("lengths agree");
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(i, f)| f.then(&other.components[self.phi.apply(i)]).expect("shapes agree"))
            .collect();
        let plus_witness = if self.in_plus() && other.in_plus() {
            None
        } else {
            return validate_forest_map(&self.src, &other.tgt, phi, components);
        };
        Ok(ForestMap { src: self.src.clone(), tgt: other.tgt.clone(), phi, components, plus_witness })
    }

    pub fn classify(&self) -> Result<ForestClass, ForestError> {
        if let Some(w) = &self.plus_witness {
            return Err(ForestError::NotPlus(w.clone()));
        }
        let delta = self.phi.classify();
        Ok(ForestClass {
            inert: delta.inert,
            active: delta.active && self.components.iter().all(FinSetMap::is_bijective),
        })
    }

    /// Splits a plus-map as `inert ∘ active` (first the active part).
    ///
    /// With `φ = ι ∘ α` in `Δ`, the middle forest is the restriction of the
    /// target along `ι`, pulled back along the top component; the active part
    /// has bijective components onto it and the inert part projects away.
    pub fn factorize(&self) -> Result<(ForestMap, ForestMap), ForestError> {
        if let Some(w) = &self.plus_witness {
            return Err(ForestError::NotPlus(w.clone()));
        }
        let (alpha, iota) = self.phi.factorize();
        let k = alpha.tgt();
        let lo = iota.apply(0);
        let m = self.src.length();
        let top = &self.components[m];
        let pullbacks: Vec<_> =
            (0..=k).map(|j| pullback_finset(&self.tgt.between(lo + j, lo + k), top).expect("common target")).collect();
        let mut chain = Vec::with_capacity(k);
        for j in 0..k {
            let next = &pullbacks[j + 1];
            let step = &self.tgt.chain[lo + j];
            let table = pullbacks[j]
                .apex
                .iter()
                .map(|&(p, o)| next.apex.binary_search(&(step.apply(p), o)).expect("image lies in the next pullback"))
                .collect();
            chain.push(FinSetMap::new(next.apex.len(), table).expect("in range"));
        }
        let middle =
            if k == 0 { Forest::edge_forest(pullbacks[0].apex.len()) } else { Forest::new(chain).expect("composable") };
        let inert_components = pullbacks.iter().map(|pb| pb.left.clone()).collect();
        let inert = ForestMap::plus(&middle, &self.tgt, iota, inert_components)?;
        let to_top: Vec<FinSetMap> = (0..=m).map(|i| self.src.between(i, m)).collect();
        let active_components = (0..=m)
            .map(|i| {
                let pb = &pullbacks[alpha.apply(i)];
                let table = (0..self.src.size(i))
                    .map(|e| {
                        pb.apex
                            .binary_search(&(self.components[i].apply(e), to_top[i].apply(e)))
                            .expect("element lies in the pullback")
                    })
                    .collect();
                FinSetMap::new(pb.apex.len(), table).expect("in range")
            })
            .collect();
        let active = ForestMap::plus(&self.src, &middle, alpha, active_components)?;
        Ok((active, inert))
    }
}

/// Classification of a plus-map (errors outside the plus subcategory).
pub fn classify_forest_map(m: &ForestMap) -> Result<ForestClass, ForestError> {
    m.classify()
}

/// Factorization `(active, inert)` with `m = inert ∘ active`.
pub fn factorize_forest_map(m: &ForestMap) -> Result<(ForestMap, ForestMap), ForestError> {
    m.factorize()
}

/// Validates a chain of pointed maps as a forest.
pub fn make_forest(base: usize, chain: &[PointedMap]) -> Result<Forest, ForestError> {
    Forest::from_pointed(base, chain)
}

/// All plus-maps `src -> tgt`, in a deterministic order.
pub fn plus_maps(src: &Forest, tgt: &Forest) -> Vec<ForestMap> {
    let mut out = Vec::new();
    for phi in SimplexMap::all(src.length(), tgt.length()) {
        plus_maps_over(src, tgt, &phi, &mut out);
    }
    out
}

/// Plus-maps `src -> tgt` lying over a fixed `φ`.
pub fn plus_maps_over(src: &Forest, tgt: &Forest, phi: &SimplexMap, out: &mut Vec<ForestMap>) {
    let m = src.length();
    let top = m;
    for f_top in FinSetMap::injections(src.size(top), tgt.size(phi.apply(top))) {
        let mut comps: Vec<Option<FinSetMap>> = vec![None; m + 1];
        comps[top] = Some(f_top);
        extend_down(src, tgt, phi, top, &mut comps, out);
    }
}

/// Chooses the component at `level - 1` given the one at `level`: each
/// fibre of the source chain must be carried bijectively onto the fibre of
/// the target chain over the image point.
fn extend_down(
    src: &Forest,
    tgt: &Forest,
    phi: &SimplexMap,
    level: usize,
    comps: &mut Vec<Option<FinSetMap>>,
    out: &mut Vec<ForestMap>,
) {
    if level == 0 {
        let components = comps.iter().map(|c| c.clone().expect("all levels filled")).collect();
        let map = ForestMap { src: src.clone(), tgt: tgt.clone(), phi: phi.clone(), components, plus_witness: None };
        debug_assert!(validate_forest_map(src, tgt, phi.clone(), map.components.clone())
            .map(|m| m.in_plus())
            .unwrap_or(false));
        out.push(map);
        return;
    }
    let lower = level - 1;
    let right = tgt.between(phi.apply(lower), phi.apply(level));
    let upper = comps[level].clone().expect("filled");
    let n_lower = src.size(lower);
    // for each upper element: its source fibre and the target fibre it must biject onto
    let mut blocks = Vec::new();
    for e in 0..src.size(level) {
        let s_fib = src.chain[lower].fiber(e);
        let t_fib = right.fiber(upper.apply(e));
        if s_fib.len() != t_fib.len() {
            return;
        }
        blocks.push((s_fib, t_fib));
    }
    let tgt_size = tgt.size(phi.apply(lower));
    let mut choices = vec![vec![usize::MAX; n_lower]];
    for (s, t) in &blocks {
        let perms = FinSetMap::permutations(s.len());
        let mut next = Vec::with_capacity(choices.len() * perms.len());
        for partial in &choices {
            for perm in &perms {
                let mut table = partial.clone();
                for (k, &x) in s.iter().enumerate() {
                    table[x] = t[perm.apply(k)];
                }
                next.push(table);
            }
        }
        choices = next;
    }
    for t in choices {
        comps[lower] = Some(FinSetMap::new(tgt_size, t).expect("in range"));
        extend_down(src, tgt, phi, lower, comps, out);
    }
    comps[lower] = None;
}

/// All natural transformations `src -> tgt` over a fixed `φ` (the
/// pre-category), optionally constrained level-wise by `allowed`.
pub fn pre_maps_over(src: &Forest, tgt: &Forest, phi: &SimplexMap) -> Vec<ForestMap> {
    let m = src.length();
    let mut out = Vec::new();
    for f_top in FinSetMap::all(src.size(m), tgt.size(phi.apply(m))) {
        let mut comps: Vec<FinSetMap> = vec![FinSetMap::identity(0); m + 1];
        comps[m] = f_top;
        pre_extend(src, tgt, phi, m, &mut comps, &mut out);
    }
    out
}

fn pre_extend(
    src: &Forest,
    tgt: &Forest,
    phi: &SimplexMap,
    level: usize,
    comps: &mut Vec<FinSetMap>,
    out: &mut Vec<ForestMap>,
) {
    if level == 0 {
        out.push(validate_forest_map(src, tgt, phi.clone(), comps.clone()).expect("natural by construction"));
        return;
    }
    let lower = level - 1;
    let right = tgt.between(phi.apply(lower), phi.apply(level));
    let options: Vec<Vec<usize>> =
        (0..src.size(lower)).map(|e| right.fiber(comps[level].apply(src.chain[lower].apply(e)))).collect();
    let tgt_size = tgt.size(phi.apply(lower));
    let mut idx = vec![0usize; options.len()];
    if options.iter().any(Vec::is_empty) {
        return;
    }
    loop {
        let table = idx.iter().zip(&options).map(|(&i, o)| o[i]).collect();
        comps[lower] = FinSetMap::new(tgt_size, table).expect("in range");
        pre_extend(src, tgt, phi, lower, comps, out);
        let mut pos = options.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// All labelled forests with length `<= max_height`, every level of size
/// `<= max_width` and total size `<= max_total`, ordered by length, sizes,
/// then chain tables.
pub fn all_forests(max_height: usize, max_width: usize, max_total: usize) -> Vec<Forest> {
    let mut out = Vec::new();
    for n in 0..=max_height {
        forests_of_length(n, max_width, max_total, &mut out);
    }
    out
}

/// Labelled forests of exactly length `n` within the bounds.
pub fn forests_of_length(n: usize, max_width: usize, max_total: usize, out: &mut Vec<Forest>) {
    let mut sizes = Vec::with_capacity(n + 1);
    fn sizes_rec(n: usize, w: usize, total: usize, sizes: &mut Vec<usize>, out: &mut Vec<Forest>) {
        if sizes.len() == n + 1 {
            if n == 0 {
                out.push(Forest::edge_forest(sizes[0]));
                return;
            }
            let mut chain = Vec::with_capacity(n);
            chains_rec(sizes, &mut chain, out);
            return;
        }
        let used: usize = sizes.iter().sum();
        for s in 0..=w {
            if used + s > total {
                break;
            }
            sizes.push(s);
            sizes_rec(n, w, total, sizes, out);
            sizes.pop();
        }
    }
    fn chains_rec(sizes: &[usize], chain: &mut Vec<FinSetMap>, out: &mut Vec<Forest>) {
        let k = chain.len();
        if k + 1 == sizes.len() {
            out.push(Forest { sizes: sizes.to_vec(), chain: chain.clone() });
            return;
        }
        for f in FinSetMap::all(sizes[k], sizes[k + 1]) {
            chain.push(f);
            chains_rec(sizes, chain, out);
            chain.pop();
        }
    }
    sizes_rec(n, max_width, max_total, &mut sizes, out);
}
