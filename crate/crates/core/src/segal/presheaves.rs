//! Terminal, representable, tabulated and corrupted presheaves, and the
//! functoriality check.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::{Presheaf, SegalError, Window};
use crate::forest::{plus_maps, Forest, ForestMap};
use crate::kernel::FinSetMap;

/// The constant one-point presheaf.
#[derive(Debug, Clone)]
pub struct Terminal {
    window: Window,
}

impl Terminal {
    pub fn new(window: Window) -> Self {
        Self { window }
    }
}

impl Presheaf for Terminal {
    fn name(&self) -> String {
        "terminal".into()
    }

    fn window(&self) -> Window {
        self.window
    }

    fn value(&self, f: &Forest) -> Result<usize, SegalError> {
        if !self.window.contains(f) {
            return Err(SegalError::OutsideWindow(format!("{f:?}")));
        }
        Ok(1)
    }

    fn transport(&self, _m: &ForestMap, _x: usize) -> Result<usize, SegalError> {
        Ok(0)
    }
}

type MapListing = Arc<(Vec<ForestMap>, HashMap<ForestMap, usize>)>;

/// `F ↦ Hom(F, T)` in the plus category, restricted to a window.
#[derive(Debug)]
pub struct Representable {
    object: Forest,
    window: Window,
    cache: RwLock<HashMap<Forest, MapListing>>,
}

impl Representable {
    pub fn new(object: Forest, window: Window) -> Self {
        Self { object, window, cache: RwLock::new(HashMap::new()) }
    }

    fn listing(&self, f: &Forest) -> Result<MapListing, SegalError> {
        if !self.window.contains(f) {
            return Err(SegalError::OutsideWindow(format!("{f:?}")));
        }
        if let Some(l) = self.cache.read().expect("cache lock").get(f) {
            return Ok(l.clone());
        }
        let maps = plus_maps(f, &self.object);
        let index = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let l = Arc::new((maps, index));
        self.cache.write().expect("cache lock").insert(f.clone(), l.clone());
        Ok(l)
    }
}

impl Presheaf for Representable {
    fn name(&self) -> String {
        format!("representable({:?})", self.object.sizes())
    }

    fn window(&self) -> Window {
        self.window
    }

    fn value(&self, f: &Forest) -> Result<usize, SegalError> {
        Ok(self.listing(f)?.0.len())
    }

    fn transport(&self, m: &ForestMap, x: usize) -> Result<usize, SegalError> {
        let g = &self.listing(m.tgt())?.0[x];
        let composite = m.then(g).map_err(|e| SegalError::UndefinedTransport(e.to_string()))?;
        self.listing(m.src())?
            .1
            .get(&composite)
            .copied()
            .ok_or_else(|| SegalError::UndefinedTransport("composite is not listed".into()))
    }
}

/// All plus-maps between forests of the window.
pub fn window_maps(window: &Window) -> Vec<ForestMap> {
    let forests = window.forests();
    let mut out = Vec::new();
    for a in &forests {
        for b in &forests {
            out.extend(plus_maps(a, b));
        }
    }
    out
}

/// Explicit values and transport tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tabulated {
    name: String,
    window: Window,
    values: BTreeMap<Forest, usize>,
    transports: HashMap<ForestMap, FinSetMap>,
}

#[derive(Serialize, Deserialize)]
struct ValueEntry {
    forest: Forest,
    size: usize,
}

#[derive(Serialize, Deserialize)]
struct TransportEntry {
    map: ForestMap,
    table: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawTabulated {
    name: String,
    window: Window,
    values: Vec<ValueEntry>,
    transports: Vec<TransportEntry>,
}

impl Serialize for Tabulated {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut transports: Vec<TransportEntry> =
            self.transports.iter().map(|(m, t)| TransportEntry { map: m.clone(), table: t.table().to_vec() }).collect();
        transports.sort_by(|a, b| {
            (a.map.src(), a.map.tgt(), a.map.phi(), a.map.components()).cmp(&(
                b.map.src(),
                b.map.tgt(),
                b.map.phi(),
                b.map.components(),
            ))
        });
        RawTabulated {
            name: self.name.clone(),
            window: self.window,
            values: self.values.iter().map(|(f, &size)| ValueEntry { forest: f.clone(), size }).collect(),
            transports,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tabulated {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawTabulated::deserialize(d)?;
        let values: BTreeMap<Forest, usize> = raw.values.into_iter().map(|v| (v.forest, v.size)).collect();
        let mut transports = HashMap::new();
        for t in raw.transports {
            let size = |f: &Forest| {
                values
                    .get(f)
                    .copied()
                    .ok_or_else(|| serde::de::Error::custom("transport names a forest without a value"))
            };
            let (n, m) = (size(t.map.tgt())?, size(t.map.src())?);
            let table = FinSetMap::with_sizes(n, m, t.table).map_err(serde::de::Error::custom)?;
            transports.insert(t.map, table);
        }
        Ok(Tabulated { name: raw.name, window: raw.window, values, transports })
    }
}

impl Tabulated {
    pub fn new(name: &str, window: Window) -> Self {
        Self { name: name.into(), window, values: BTreeMap::new(), transports: HashMap::new() }
    }

    /// Tabulates `x` on every forest and plus-map of `window`.
    pub fn from_presheaf(x: &dyn Presheaf, window: Window) -> Result<Self, SegalError> {
        let mut t = Tabulated::new(&x.name(), window);
        for f in window.forests() {
            t.values.insert(f.clone(), x.value(&f)?);
        }
        for m in window_maps(&window) {
            let table = x.transport_table(&m)?;
            t.transports.insert(m, table);
        }
        Ok(t)
    }

    pub fn set_value(&mut self, f: Forest, size: usize) {
        self.values.insert(f, size);
    }

    pub fn set_transport(&mut self, m: ForestMap, table: FinSetMap) {
        self.transports.insert(m, table);
    }

    /// Maps with a recorded table, in a deterministic order.
    pub fn maps(&self) -> Vec<ForestMap> {
        let mut maps: Vec<ForestMap> = self.transports.keys().cloned().collect();
        maps.sort_by(|a, b| {
            (a.src(), a.tgt(), a.phi(), a.components()).cmp(&(b.src(), b.tgt(), b.phi(), b.components()))
        });
        maps
    }

    pub fn table(&self, m: &ForestMap) -> Option<&FinSetMap> {
        self.transports.get(m)
    }
}

impl Presheaf for Tabulated {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn window(&self) -> Window {
        self.window
    }

    fn value(&self, f: &Forest) -> Result<usize, SegalError> {
        self.values.get(f).copied().ok_or_else(|| SegalError::OutsideWindow(format!("{f:?}")))
    }

    fn transport(&self, m: &ForestMap, x: usize) -> Result<usize, SegalError> {
        match self.transports.get(m) {
            Some(t) if x < t.src_size() => Ok(t.apply(x)),
            Some(_) => Err(SegalError::UndefinedTransport(format!("element {x} out of range"))),
            None if m.is_identity() => Ok(x),
            None => Err(SegalError::UndefinedTransport("no table for this map".into())),
        }
    }
}

/// A single-point change to one value set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Corruption {
    /// Drop element `e`.
    Remove(usize),
    /// Add a new last element behaving like element `e`.
    Duplicate(usize),
}

/// `base` with one value set corrupted. Transports landing on a removed
/// element are undefined.
pub struct Corrupted<'a> {
    base: &'a dyn Presheaf,
    forest: Forest,
    kind: Corruption,
}

impl<'a> Corrupted<'a> {
    pub fn new(base: &'a dyn Presheaf, forest: Forest, kind: Corruption) -> Self {
        Self { base, forest, kind }
    }

    fn to_base(&self, f: &Forest, x: usize) -> Result<usize, SegalError> {
        if *f != self.forest {
            return Ok(x);
        }
        let n = self.base.value(f)?;
        Ok(match self.kind {
            Corruption::Remove(e) => x + usize::from(x >= e),
            Corruption::Duplicate(e) if x == n => e,
            Corruption::Duplicate(_) => x,
        })
    }

    fn base_to_corrupted(&self, f: &Forest, x: usize) -> Result<usize, SegalError> {
        if *f != self.forest {
            return Ok(x);
        }
        match self.kind {
            Corruption::Remove(e) if x == e => Err(SegalError::Dangling { forest: format!("{f:?}"), element: e }),
            Corruption::Remove(e) => Ok(x - usize::from(x > e)),
            Corruption::Duplicate(_) => Ok(x),
        }
    }
}

impl Presheaf for Corrupted<'_> {
    fn name(&self) -> String {
        format!("{} corrupted at {:?} ({:?})", self.base.name(), self.forest.sizes(), self.kind)
    }

    fn window(&self) -> Window {
        self.base.window()
    }

    fn value(&self, f: &Forest) -> Result<usize, SegalError> {
        let n = self.base.value(f)?;
        if *f != self.forest {
            return Ok(n);
        }
        Ok(match self.kind {
            Corruption::Remove(_) => n.saturating_sub(1),
            Corruption::Duplicate(_) => n + 1,
        })
    }

    fn transport(&self, m: &ForestMap, x: usize) -> Result<usize, SegalError> {
        let y = self.base.transport(m, self.to_base(m.tgt(), x)?)?;
        self.base_to_corrupted(m.src(), y)
    }
}

/// Two composable maps whose transports do not compose, or a map whose
/// table has the wrong shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorialityWitness {
    pub first: ForestMap,
    pub second: Option<ForestMap>,
    pub element: Option<usize>,
    pub detail: String,
}

/// Checks identities and every composable pair among `maps` (which should
/// be closed under composition).
pub fn validate_functoriality(x: &dyn Presheaf, maps: &[ForestMap]) -> Result<(), FunctorialityWitness> {
    let witness = |first: &ForestMap, second: Option<&ForestMap>, element, detail: String| FunctorialityWitness {
        first: first.clone(),
        second: second.cloned(),
        element,
        detail,
    };
    let mut tables = HashMap::new();
    for m in maps {
        let t = x.transport_table(m).map_err(|e| witness(m, None, None, e.to_string()))?;
        if m.is_identity() && t != FinSetMap::identity(t.src_size()) {
            return Err(witness(m, None, None, "identity is not sent to the identity".into()));
        }
        tables.insert(m, t);
    }
    let mut by_src: HashMap<&Forest, Vec<&ForestMap>> = HashMap::new();
    for m in maps {
        by_src.entry(m.src()).or_default().push(m);
    }
    for f in maps {
        for g in by_src.get(f.tgt()).into_iter().flatten() {
            let gf = f.then(g).expect("composable");
            let direct = match tables.get(&gf) {
                Some(t) => t.clone(),
                None => x.transport_table(&gf).map_err(|e| witness(f, Some(g), None, e.to_string()))?,
            };
            let (tf, tg) = (&tables[f], &tables[*g]);
            for e in 0..direct.src_size() {
                if tf.apply(tg.apply(e)) != direct.apply(e) {
                    return Err(witness(f, Some(g), Some(e), "transport of the composite differs".into()));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad;
    use crate::segal::{check_segal, check_segal_trees, Nerve};

    #[test]
    fn nerve_is_functorial() {
        let w = Window::new(1, 2);
        let maps = window_maps(&w);
        let x = Nerve::new(operad::ass(3), w).unwrap();
        validate_functoriality(&x, &maps).unwrap();
    }

    #[test]
    fn representable_passes_segal() {
        let t = Forest::new(vec![FinSetMap::new(2, vec![0, 0, 1]).unwrap(), FinSetMap::new(1, vec![0, 0]).unwrap()])
            .unwrap();
        let x = Representable::new(t, Window::new(2, 3));
        let r = check_segal_trees(&x);
        assert!(r.passed(), "{:?}", r.first_witness());
        // on forests a map must put all components on one level, so the
        // empty forest already has one element per level
        let r = check_segal(&x);
        assert!(!r.root.passed);
        assert_eq!(r.root.witness.unwrap().forest, Forest::edge_forest(0));
    }

    #[test]
    fn tabulated_roundtrip() {
        let w = Window::new(1, 1);
        let x = Nerve::new(operad::com(2), w).unwrap();
        let t = Tabulated::from_presheaf(&x, w).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: Tabulated = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(check_segal(&back).passed());
    }

    #[test]
    fn corrupted_value_sizes() {
        let w = Window::new(1, 2);
        let x = Nerve::new(operad::ass(2), w).unwrap();
        let c2 = Forest::corolla(2);
        assert_eq!(Corrupted::new(&x, c2.clone(), Corruption::Remove(0)).value(&c2).unwrap(), 1);
        assert_eq!(Corrupted::new(&x, c2.clone(), Corruption::Duplicate(1)).value(&c2).unwrap(), 3);
    }
}
