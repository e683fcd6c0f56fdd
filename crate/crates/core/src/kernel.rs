//! Finite sets, finite categories and set-valued diagrams.
//!
//! Everything here is addressed by dense indices: a finite set is `0..n`,
//! objects and arrows of a [`FinCategory`] are positions in its vectors.
//! Payloads are carried along but never inspected.

use std::collections::HashMap;
use std::sync::OnceLock;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Above this many composable pairs, diagram functoriality is checked on
/// first use instead of at construction.
pub const EAGER_VALIDATION_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("table entry {index} = {value} is out of range for a target of size {tgt_size}")]
    OutOfRange { index: usize, value: usize, tgt_size: usize },
    #[error("table has length {len}, expected {src_size}")]
    BadLength { len: usize, src_size: usize },
    #[error("maps are not composable: target size {left} vs source size {right}")]
    NotComposable { left: usize, right: usize },
    #[error("maps do not share a target: {left} vs {right}")]
    TargetMismatch { left: usize, right: usize },
    #[error("square does not commute at element {element}")]
    NonCommuting { element: usize },
    #[error("arrow {arrow} has endpoint {endpoint} outside the {objects} objects")]
    BadArrow { arrow: usize, endpoint: usize, objects: usize },
    #[error("composition law fails: {0}")]
    CompositionLaw(String),
    #[error("transport of arrow {arrow} has shape {found:?}, expected {expected:?}")]
    TransportShape { arrow: usize, found: (usize, usize), expected: (usize, usize) },
    #[error("diagram is not functorial: transport({second} after {first}) differs from the composite of transports")]
    NotFunctorial { first: usize, second: usize },
    #[error("diagram is not functorial: transport of identity arrow {arrow} is not the identity")]
    IdentityNotPreserved { arrow: usize },
}

/// A function `{0..src_size} -> {0..tgt_size}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinSetMap {
    src_size: usize,
    tgt_size: usize,
    table: Vec<usize>,
}

impl FinSetMap {
    pub fn new(tgt_size: usize, table: Vec<usize>) -> Result<Self, KernelError> {
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= tgt_size) {
            return Err(KernelError::OutOfRange { index, value, tgt_size });
        }
        Ok(Self { src_size: table.len(), tgt_size, table })
    }

    /// Builds a map checking the table against an explicit source size too.
    pub fn with_sizes(src_size: usize, tgt_size: usize, table: Vec<usize>) -> Result<Self, KernelError> {
        if table.len() != src_size {
            return Err(KernelError::BadLength { len: table.len(), src_size });
        }
        Self::new(tgt_size, table)
    }

    pub fn identity(n: usize) -> Self {
        Self { src_size: n, tgt_size: n, table: (0..n).collect() }
    }

    /// The unique map out of the empty set.
    pub fn empty(tgt_size: usize) -> Self {
        Self { src_size: 0, tgt_size, table: Vec::new() }
    }

    /// The unique map to a one-element set.
    pub fn to_point(src_size: usize) -> Self {
        Self { src_size, tgt_size: 1, table: vec![0; src_size] }
    }

    pub fn src_size(&self) -> usize {
        self.src_size
    }

    pub fn tgt_size(&self) -> usize {
        self.tgt_size
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinSetMap) -> Result<FinSetMap, KernelError> {
        if self.tgt_size != other.src_size {
            return Err(KernelError::NotComposable { left: self.tgt_size, right: other.src_size });
        }
        Ok(FinSetMap {
            src_size: self.src_size,
            tgt_size: other.tgt_size,
            table: self.table.iter().map(|&x| other.table[x]).collect(),
        })
    }

    /// Sorted preimage of `y`.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.src_size).filter(|&x| self.table[x] == y).collect()
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.tgt_size];
        for &y in &self.table {
            sizes[y] += 1;
        }
        sizes
    }

    pub fn is_injective(&self) -> bool {
        self.fiber_sizes().iter().all(|&k| k <= 1)
    }

    pub fn is_surjective(&self) -> bool {
        self.fiber_sizes().iter().all(|&k| k >= 1)
    }

    pub fn is_bijective(&self) -> bool {
        self.src_size == self.tgt_size && self.is_injective()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<FinSetMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.src_size];
        for (x, &y) in self.table.iter().enumerate() {
            table[y] = x;
        }
        Some(FinSetMap { src_size: self.src_size, tgt_size: self.tgt_size, table })
    }

    /// All maps `n -> m` in lexicographic order of their tables.
    pub fn all(n: usize, m: usize) -> Vec<FinSetMap> {
        let mut out = Vec::new();
        let mut table = vec![0; n];
        if n > 0 && m == 0 {
            return out;
        }
        loop {
            out.push(FinSetMap { src_size: n, tgt_size: m, table: table.clone() });
            // odometer, last digit fastest
            let mut pos = n;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                table[pos] += 1;
                if table[pos] < m {
                    break;
                }
                table[pos] = 0;
            }
        }
    }

    /// All injections `n -> m` in lexicographic order.
    pub fn injections(n: usize, m: usize) -> Vec<FinSetMap> {
        let mut out = Vec::new();
        let mut table = Vec::with_capacity(n);
        let mut used = vec![false; m];
        fn rec(n: usize, m: usize, table: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<FinSetMap>) {
            if table.len() == n {
                out.push(FinSetMap { src_size: n, tgt_size: m, table: table.clone() });
                return;
            }
            for y in 0..m {
                if !used[y] {
                    used[y] = true;
                    table.push(y);
                    rec(n, m, table, used, out);
                    table.pop();
                    used[y] = false;
                }
            }
        }
        rec(n, m, &mut table, &mut used, &mut out);
        out
    }

    /// All bijections `n -> n`.
    pub fn permutations(n: usize) -> Vec<FinSetMap> {
        Self::injections(n, n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow<A> {
    pub src: usize,
    pub tgt: usize,
    pub payload: A,
}

/// A finite category with a (possibly partial) composition table.
///
/// `composition[(f, g)] = h` records `h = g ∘ f` (first `f`, then `g`).
/// Categories built from generators may leave most of the table empty;
/// the laws are only checked where entries exist.
#[derive(Debug, Clone)]
pub struct FinCategory<O, A> {
    objects: Vec<O>,
    arrows: Vec<Arrow<A>>,
    composition: HashMap<(usize, usize), usize>,
    identities: Vec<usize>,
}

impl<O, A> FinCategory<O, A> {
    pub fn new(
        objects: Vec<O>,
        arrows: Vec<Arrow<A>>,
        composition: HashMap<(usize, usize), usize>,
        identities: Vec<usize>,
    ) -> Result<Self, KernelError> {
        let n = objects.len();
        for (i, a) in arrows.iter().enumerate() {
            for endpoint in [a.src, a.tgt] {
                if endpoint >= n {
                    return Err(KernelError::BadArrow { arrow: i, endpoint, objects: n });
                }
            }
        }
        if identities.len() != n {
            return Err(KernelError::CompositionLaw(format!("{} identities for {} objects", identities.len(), n)));
        }
        for (x, &id) in identities.iter().enumerate() {
            match arrows.get(id) {
                Some(a) if a.src == x && a.tgt == x => {}
                _ => return Err(KernelError::CompositionLaw(format!("identity of object {x} is not a loop at {x}"))),
            }
        }
        for (&(f, g), &h) in &composition {
            let (af, ag, ah) = match (arrows.get(f), arrows.get(g), arrows.get(h)) {
                (Some(af), Some(ag), Some(ah)) => (af, ag, ah),
                _ => return Err(KernelError::CompositionLaw(format!("entry ({f},{g})->{h} names a missing arrow"))),
            };
            if af.tgt != ag.src {
                return Err(KernelError::CompositionLaw(format!("entry ({f},{g}) is not composable")));
            }
            if ah.src != af.src || ah.tgt != ag.tgt {
                return Err(KernelError::CompositionLaw(format!("composite of ({f},{g}) has wrong endpoints")));
            }
        }
        Ok(Self { objects, arrows, composition, identities })
    }

    /// A category with only the listed objects and identity arrows.
    pub fn discrete(objects: Vec<O>) -> Self
    where
        A: Default,
    {
        let n = objects.len();
        let arrows = (0..n).map(|x| Arrow { src: x, tgt: x, payload: A::default() }).collect();
        let composition = (0..n).map(|x| ((x, x), x)).collect();
        Self { objects, arrows, composition, identities: (0..n).collect() }
    }

    pub fn objects(&self) -> &[O] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow<A>] {
        &self.arrows
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, arrow: usize) -> bool {
        let a = &self.arrows[arrow];
        a.src == a.tgt && self.identities[a.src] == arrow
    }

    /// `g ∘ f` when recorded.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }

    pub fn composition_table(&self) -> &HashMap<(usize, usize), usize> {
        &self.composition
    }

    /// Number of pairs `(f, g)` with `tgt f = src g`, whether recorded or not.
    pub fn composable_pair_count(&self) -> usize {
        let mut out_deg = vec![0usize; self.objects.len()];
        let mut in_deg = vec![0usize; self.objects.len()];
        for a in &self.arrows {
            out_deg[a.src] += 1;
            in_deg[a.tgt] += 1;
        }
        in_deg.iter().zip(&out_deg).map(|(i, o)| i * o).sum()
    }

    /// Checks unitality and associativity wherever the table is defined,
    /// and that every composable pair has a recorded composite when
    /// `require_total` is set.
    pub fn check_laws(&self, require_total: bool) -> Result<(), KernelError> {
        for (f, a) in self.arrows.iter().enumerate() {
            let left = self.compose(self.identities[a.src], f);
            let right = self.compose(f, self.identities[a.tgt]);
            if (require_total || left.is_some()) && left != Some(f) {
                return Err(KernelError::CompositionLaw(format!("id ∘ {f} != {f}")));
            }
            if (require_total || right.is_some()) && right != Some(f) {
                return Err(KernelError::CompositionLaw(format!("{f} ∘ id != {f}")));
            }
        }
        if require_total {
            for (f, af) in self.arrows.iter().enumerate() {
                for (g, ag) in self.arrows.iter().enumerate() {
                    if af.tgt == ag.src && self.compose(f, g).is_none() {
                        return Err(KernelError::CompositionLaw(format!("missing composite of ({f},{g})")));
                    }
                }
            }
        }
        for (&(f, g), &fg) in &self.composition {
            for (h, ah) in self.arrows.iter().enumerate() {
                if ah.src != self.arrows[g].tgt {
                    continue;
                }
                let lhs = self.compose(fg, h);
                let rhs = self.compose(g, h).and_then(|gh| self.compose(f, gh));
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    if l != r {
                        return Err(KernelError::CompositionLaw(format!(
                            "({h}∘{g})∘{f} = {r} but {h}∘({g}∘{f}) = {l}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Connected components of the underlying undirected graph, numbered
    /// in order of their smallest object.
    pub fn connected_components(&self) -> Vec<usize> {
        let n = self.objects.len();
        let mut uf = UnionFind::<usize>::new(n);
        for a in &self.arrows {
            uf.union(a.src, a.tgt);
        }
        let mut label = HashMap::new();
        (0..n)
            .map(|x| {
                let root = uf.find(x);
                let next = label.len();
                *label.entry(root).or_insert(next)
            })
            .collect()
    }

    pub fn map_payloads<B>(self, f: impl Fn(A) -> B) -> FinCategory<O, B> {
        FinCategory {
            objects: self.objects,
            arrows: self.arrows.into_iter().map(|a| Arrow { src: a.src, tgt: a.tgt, payload: f(a.payload) }).collect(),
            composition: self.composition,
            identities: self.identities,
        }
    }
}

/// A functor from a finite category to finite sets.
#[derive(Debug)]
pub struct SetDiagram<O, A> {
    shape: FinCategory<O, A>,
    values: Vec<usize>,
    transport: Vec<FinSetMap>,
    validated: OnceLock<Result<(), KernelError>>,
}

impl<O, A> SetDiagram<O, A> {
    /// Builds a diagram, validating shapes of all transports and, for small
    /// shapes, functoriality on every recorded composite.
    pub fn new(shape: FinCategory<O, A>, values: Vec<usize>, transport: Vec<FinSetMap>) -> Result<Self, KernelError> {
        if values.len() != shape.objects.len() || transport.len() != shape.arrows.len() {
            return Err(KernelError::CompositionLaw(format!(
                "diagram has {} values and {} transports for {} objects and {} arrows",
                values.len(),
                transport.len(),
                shape.objects.len(),
                shape.arrows.len()
            )));
        }
        for (i, (a, t)) in shape.arrows.iter().zip(&transport).enumerate() {
            let expected = (values[a.src], values[a.tgt]);
            let found = (t.src_size, t.tgt_size);
            if found != expected {
                return Err(KernelError::TransportShape { arrow: i, found, expected });
            }
        }
        let diagram = Self { shape, values, transport, validated: OnceLock::new() };
        if diagram.shape.composition.len() <= EAGER_VALIDATION_LIMIT {
            diagram.validate()?;
        }
        Ok(diagram)
    }

    /// Functoriality check, computed once.
    pub fn validate(&self) -> Result<(), KernelError> {
        self.validated.get_or_init(|| self.check_functorial()).clone()
    }

    fn check_functorial(&self) -> Result<(), KernelError> {
        for (x, &id) in self.shape.identities.iter().enumerate() {
            if self.transport[id] != FinSetMap::identity(self.values[x]) {
                return Err(KernelError::IdentityNotPreserved { arrow: id });
            }
        }
        let mut pairs: Vec<_> = self.shape.composition.iter().collect();
        pairs.sort();
        for (&(f, g), &h) in pairs {
            let composite = self.transport[f].then(&self.transport[g])?;
            if composite != self.transport[h] {
                return Err(KernelError::NotFunctorial { first: f, second: g });
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &FinCategory<O, A> {
        &self.shape
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn transport(&self, arrow: usize) -> &FinSetMap {
        &self.transport[arrow]
    }
}

/// Result of [`colimit_set`]: `assign[x][e]` is the class of element `e`
/// of the value at object `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colimit {
    pub classes: usize,
    pub assign: Vec<Vec<usize>>,
}

impl Colimit {
    /// Number of elements in each class.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.classes];
        for c in self.assign.iter().flatten() {
            sizes[*c] += 1;
        }
        sizes
    }
}

/// Set-level colimit: the disjoint union of all values modulo
/// `x ~ transport(f)(x)`. Classes are numbered by first appearance.
pub fn colimit_set<O, A>(d: &SetDiagram<O, A>) -> Result<Colimit, KernelError> {
    d.validate()?;
    let offsets: Vec<usize> = d
        .values
        .iter()
        .scan(0, |acc, &v| {
            let o = *acc;
            *acc += v;
            Some(o)
        })
        .collect();
    let total: usize = d.values.iter().sum();
    let mut uf = UnionFind::<usize>::new(total);
    for (a, t) in d.shape.arrows.iter().zip(&d.transport) {
        for (e, &img) in t.table.iter().enumerate() {
            uf.union(offsets[a.src] + e, offsets[a.tgt] + img);
        }
    }
    let mut label = HashMap::new();
    let assign = d
        .values
        .iter()
        .enumerate()
        .map(|(x, &v)| {
            (0..v)
                .map(|e| {
                    let root = uf.find(offsets[x] + e);
                    let next = label.len();
                    *label.entry(root).or_insert(next)
                })
                .collect()
        })
        .collect();
    Ok(Colimit { classes: label.len(), assign })
}

/// Set-level limit: all matching families, one element per object,
/// compatible with every transport. Families are listed in lexicographic
/// order.
pub fn limit_over_cone<O, A>(d: &SetDiagram<O, A>) -> Result<Vec<Vec<usize>>, KernelError> {
    d.validate()?;
    let n = d.values.len();
    // arrows grouped by the later of their two endpoints so that each one is
    // checked as soon as both ends are assigned
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, a) in d.shape.arrows.iter().enumerate() {
        checks[a.src.max(a.tgt)].push(i);
    }
    let mut out = Vec::new();
    let mut family = Vec::with_capacity(n);
    fn rec<O, A>(d: &SetDiagram<O, A>, checks: &[Vec<usize>], family: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let x = family.len();
        if x == d.values.len() {
            out.push(family.clone());
            return;
        }
        for e in 0..d.values[x] {
            family.push(e);
            let ok = checks[x].iter().all(|&i| {
                let a = &d.shape.arrows[i];
                d.transport[i].table[family[a.src]] == family[a.tgt]
            });
            if ok {
                rec(d, checks, family, out);
            }
            family.pop();
        }
    }
    rec(d, &checks, &mut family, &mut out);
    Ok(out)
}

/// Fibre product of two maps with a common target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    /// Pairs `(a, b)` with `f(a) = g(b)`, in lexicographic order.
    pub apex: Vec<(usize, usize)>,
    pub left: FinSetMap,
    pub right: FinSetMap,
}

pub fn pullback_finset(f: &FinSetMap, g: &FinSetMap) -> Result<Pullback, KernelError> {
    if f.tgt_size != g.tgt_size {
        return Err(KernelError::TargetMismatch { left: f.tgt_size, right: g.tgt_size });
    }
    let apex: Vec<(usize, usize)> = (0..f.src_size)
        .flat_map(|a| (0..g.src_size).filter(move |&b| f.table[a] == g.table[b]).map(move |b| (a, b)))
        .collect();
    let left = FinSetMap { src_size: apex.len(), tgt_size: f.src_size, table: apex.iter().map(|p| p.0).collect() };
    let right = FinSetMap { src_size: apex.len(), tgt_size: g.src_size, table: apex.iter().map(|p| p.1).collect() };
    Ok(Pullback { apex, left, right })
}

/// Whether the commuting square
///
/// ```text
/// A --top--> B
/// |          |
/// left     right
/// v          v
/// C -bottom-> D
/// ```
///
/// is a pullback, i.e. `A -> C ×_D B` is a bijection.
pub fn is_cartesian_square(
    top: &FinSetMap,
    bottom: &FinSetMap,
    left: &FinSetMap,
    right: &FinSetMap,
) -> Result<bool, KernelError> {
    if top.src_size != left.src_size
        || top.tgt_size != right.src_size
        || left.tgt_size != bottom.src_size
        || bottom.tgt_size != right.tgt_size
    {
        return Err(KernelError::NotComposable { left: top.src_size, right: left.src_size });
    }
    for a in 0..top.src_size {
        if right.table[top.table[a]] != bottom.table[left.table[a]] {
            return Err(KernelError::NonCommuting { element: a });
        }
    }
    let pb = pullback_finset(bottom, right)?;
    if pb.apex.len() != top.src_size {
        return Ok(false);
    }
    let mut hit = vec![false; pb.apex.len()];
    for a in 0..top.src_size {
        let pair = (left.table[a], top.table[a]);
        // apex is sorted, so binary search locates the pair
        match pb.apex.binary_search(&pair) {
            Ok(i) if !hit[i] => hit[i] = true,
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(tgt: usize, t: &[usize]) -> FinSetMap {
        FinSetMap::new(tgt, t.to_vec()).unwrap()
    }

    /// Shape with objects `0..n` and the listed non-identity arrows, no
    /// non-trivial composites (valid when no two arrows are composable).
    fn shape(n: usize, edges: &[(usize, usize)]) -> FinCategory<(), ()> {
        let mut arrows: Vec<Arrow<()>> = (0..n).map(|x| Arrow { src: x, tgt: x, payload: () }).collect();
        let mut comp: HashMap<(usize, usize), usize> = HashMap::new();
        for x in 0..n {
            comp.insert((x, x), x);
        }
        for &(s, t) in edges {
            let i = arrows.len();
            arrows.push(Arrow { src: s, tgt: t, payload: () });
            comp.insert((s, i), i);
            comp.insert((i, t), i);
        }
        FinCategory::new(vec![(); n], arrows, comp, (0..n).collect()).unwrap()
    }

    fn diagram(n: usize, edges: &[(usize, usize)], values: &[usize], maps: &[FinSetMap]) -> SetDiagram<(), ()> {
        let mut transport: Vec<FinSetMap> = values.iter().map(|&v| FinSetMap::identity(v)).collect();
        transport.extend(maps.iter().cloned());
        SetDiagram::new(shape(n, edges), values.to_vec(), transport).unwrap()
    }

    #[test]
    fn out_of_range_table_rejected() {
        assert_eq!(FinSetMap::new(2, vec![0, 2]), Err(KernelError::OutOfRange { index: 1, value: 2, tgt_size: 2 }));
    }

    #[test]
    fn colimit_connected_terminal_values() {
        let d = diagram(3, &[(0, 1), (2, 1)], &[1, 1, 1], &[map(1, &[0]), map(1, &[0])]);
        assert_eq!(colimit_set(&d).unwrap().classes, 1);
    }

    #[test]
    fn colimit_discrete_is_disjoint_union() {
        let d = diagram(3, &[], &[1, 2, 3], &[]);
        assert_eq!(colimit_set(&d).unwrap().classes, 6);
    }

    #[test]
    fn colimit_two_elements_to_one() {
        let d = diagram(2, &[(0, 1)], &[2, 1], &[map(1, &[0, 0])]);
        let c = colimit_set(&d).unwrap();
        assert_eq!(c.classes, 1);
        assert_eq!(c.assign, vec![vec![0, 0], vec![0]]);
    }

    #[test]
    fn limit_discrete_is_product() {
        let d = diagram(2, &[], &[2, 3], &[]);
        assert_eq!(limit_over_cone(&d).unwrap().len(), 6);
    }

    #[test]
    fn limit_cospan_over_point() {
        let d = diagram(3, &[(0, 2), (1, 2)], &[2, 2, 1], &[map(1, &[0, 0]), map(1, &[0, 0])]);
        assert_eq!(limit_over_cone(&d).unwrap().len(), 4);
    }

    #[test]
    fn limit_cospan_matching_pairs() {
        let d = diagram(3, &[(0, 2), (1, 2)], &[2, 1, 2], &[map(2, &[0, 1]), map(2, &[0])]);
        assert_eq!(limit_over_cone(&d).unwrap(), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn pullback_examples() {
        let id3 = FinSetMap::identity(3);
        assert_eq!(pullback_finset(&id3, &id3).unwrap().apex.len(), 3);
        let pb = pullback_finset(&FinSetMap::to_point(2), &FinSetMap::to_point(3)).unwrap();
        assert_eq!(pb.apex.len(), 6);
        let pb = pullback_finset(&FinSetMap::identity(2), &map(2, &[0])).unwrap();
        assert_eq!(pb.apex, vec![(0, 0)]);
        assert_eq!(
            pullback_finset(&FinSetMap::identity(2), &FinSetMap::identity(3)),
            Err(KernelError::TargetMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn cartesian_square_examples() {
        let id = FinSetMap::identity(2);
        assert!(is_cartesian_square(&id, &id, &id, &id).unwrap());
        // empty corner against a pullback of size 2
        let bottom = FinSetMap::to_point(2);
        let right = FinSetMap::identity(1);
        assert!(!is_cartesian_square(&FinSetMap::empty(1), &bottom, &FinSetMap::empty(2), &right).unwrap());
        let pb = pullback_finset(&bottom, &right).unwrap();
        assert!(is_cartesian_square(&pb.right, &bottom, &pb.left, &right).unwrap());
    }

    #[test]
    fn non_commuting_square_reports_element() {
        let top = map(2, &[0, 1]);
        let right = map(2, &[0, 1]);
        let left = map(2, &[0, 1]);
        let bottom = map(2, &[1, 0]);
        assert_eq!(is_cartesian_square(&top, &bottom, &left, &right), Err(KernelError::NonCommuting { element: 0 }));
    }

    #[test]
    fn non_functorial_diagram_rejected() {
        // a -> b -> c with a recorded composite a -> c whose transport disagrees
        let mut arrows: Vec<Arrow<()>> = (0..3).map(|x| Arrow { src: x, tgt: x, payload: () }).collect();
        arrows.push(Arrow { src: 0, tgt: 1, payload: () });
        arrows.push(Arrow { src: 1, tgt: 2, payload: () });
        arrows.push(Arrow { src: 0, tgt: 2, payload: () });
        let mut comp = HashMap::new();
        for x in 0..3 {
            comp.insert((x, x), x);
        }
        for (i, s, t) in [(3, 0, 1), (4, 1, 2), (5, 0, 2)] {
            comp.insert((s, i), i);
            comp.insert((i, t), i);
        }
        comp.insert((3, 4), 5);
        let cat = FinCategory::new(vec![(); 3], arrows, comp, vec![0, 1, 2]).unwrap();
        cat.check_laws(true).unwrap();
        let t = vec![
            FinSetMap::identity(2),
            FinSetMap::identity(2),
            FinSetMap::identity(2),
            map(2, &[1, 0]),
            map(2, &[1, 0]),
            map(2, &[1, 0]),
        ];
        let err = SetDiagram::new(cat, vec![2, 2, 2], t).unwrap_err();
        assert_eq!(err, KernelError::NotFunctorial { first: 3, second: 4 });
    }

    #[test]
    fn enumerations_have_expected_sizes() {
        assert_eq!(FinSetMap::all(3, 2).len(), 8);
        assert_eq!(FinSetMap::all(0, 0).len(), 1);
        assert_eq!(FinSetMap::all(2, 0).len(), 0);
        assert_eq!(FinSetMap::injections(2, 3).len(), 6);
        assert_eq!(FinSetMap::permutations(4).len(), 24);
    }
}
