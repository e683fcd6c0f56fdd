//! The nerve of a finite operad: a colour on every edge and an operation
//! on every vertex, inputs read in increasing order of the fibre.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{Presheaf, SegalError, Window};
use crate::forest::{Forest, ForestMap};
use crate::operad::Operad;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labelling {
    /// `colours[i][e]` for every edge.
    pub colours: Vec<Vec<usize>>,
    /// `ops[i - 1][v]` for every vertex `v` of level `i >= 1`.
    pub ops: Vec<Vec<usize>>,
}

#[derive(Debug)]
struct Value {
    elements: Vec<Labelling>,
    index: HashMap<Labelling, usize>,
}

#[derive(Debug)]
pub struct Nerve {
    operad: Operad,
    window: Window,
    cache: RwLock<HashMap<Forest, Arc<Value>>>,
}

impl Nerve {
    pub fn new(operad: Operad, window: Window) -> Result<Self, SegalError> {
        if window.max_width > operad.max_arity() {
            return Err(SegalError::ArityBound { width: window.max_width, bound: operad.max_arity() });
        }
        Ok(Self { operad, window, cache: RwLock::new(HashMap::new()) })
    }

    pub fn operad(&self) -> &Operad {
        &self.operad
    }

    fn entry(&self, f: &Forest) -> Result<Arc<Value>, SegalError> {
        if !self.window.contains(f) {
            return Err(SegalError::OutsideWindow(format!("{f:?}")));
        }
        if let Some(v) = self.cache.read().expect("cache lock").get(f) {
            return Ok(v.clone());
        }
        let elements = self.enumerate(f);
        let index = elements.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let v = Arc::new(Value { elements, index });
        self.cache.write().expect("cache lock").insert(f.clone(), v.clone());
        Ok(v)
    }

    pub fn element(&self, f: &Forest, x: usize) -> Result<Labelling, SegalError> {
        Ok(self.entry(f)?.elements[x].clone())
    }

    pub fn index_of(&self, f: &Forest, l: &Labelling) -> Result<usize, SegalError> {
        self.entry(f)?
            .index
            .get(l)
            .copied()
            .ok_or_else(|| SegalError::UndefinedTransport(format!("labelling {l:?} is not an element")))
    }

    /// Labellings chosen top-down: root colours, then at each vertex an
    /// operation whose output matches, which fixes the colours below it.
    fn enumerate(&self, f: &Forest) -> Vec<Labelling> {
        let n = f.length();
        let k = self.operad.colours().len();
        let mut out = Vec::new();
        let vertices: Vec<(usize, usize)> =
            (1..=n).rev().flat_map(|level| (0..f.size(level)).map(move |v| (level, v))).collect();
        let fibres: Vec<Vec<usize>> = vertices.iter().map(|&(l, v)| f.fiber(l, v)).collect();
        let mut current = Labelling {
            colours: f.sizes().iter().map(|&s| vec![usize::MAX; s]).collect(),
            ops: (1..=n).map(|l| vec![usize::MAX; f.size(l)]).collect(),
        };
        let roots = f.size(n);
        if k == 0 && roots > 0 {
            return out;
        }
        let mut root_colours = vec![0; roots];
        loop {
            current.colours[n].copy_from_slice(&root_colours);
            self.choose(&vertices, &fibres, 0, &mut current, &mut out);
            // next root colouring
            let mut pos = roots;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                root_colours[pos] += 1;
                if root_colours[pos] < k {
                    break;
                }
                root_colours[pos] = 0;
            }
        }
    }

    fn choose(
        &self,
        vertices: &[(usize, usize)],
        fibres: &[Vec<usize>],
        at: usize,
        current: &mut Labelling,
        out: &mut Vec<Labelling>,
    ) {
        if at == vertices.len() {
            out.push(current.clone());
            return;
        }
        let (level, v) = vertices[at];
        let colour = current.colours[level][v];
        for &o in self.operad.ops_with(colour, fibres[at].len()) {
            current.ops[level - 1][v] = o;
            for (j, &e) in fibres[at].iter().enumerate() {
                current.colours[level - 1][e] = self.operad.op(o).inputs[j];
            }
            self.choose(vertices, fibres, at + 1, current, out);
        }
    }

    /// The operation obtained by composing the vertices of `b` between
    /// levels `lo` and `hi` above edge `e` of level `hi`, and its leaves in
    /// input order.
    fn grafted(
        &self,
        b: &Forest,
        y: &Labelling,
        hi: usize,
        e: usize,
        lo: usize,
    ) -> Result<(usize, Vec<usize>), SegalError> {
        if hi == lo {
            return Ok((self.operad.unit(y.colours[hi][e]), vec![e]));
        }
        let o = y.ops[hi - 1][e];
        let children =
            b.fiber(hi, e).into_iter().map(|c| self.grafted(b, y, hi - 1, c, lo)).collect::<Result<Vec<_>, _>>()?;
        let inner: Vec<usize> = children.iter().map(|(p, _)| *p).collect();
        let r = self.operad.graft(o, &inner).ok_or_else(|| {
            SegalError::UndefinedTransport(format!(
                "grafting into {} exceeds the recorded composites",
                self.operad.op(o).id
            ))
        })?;
        Ok((r, children.into_iter().flat_map(|(_, l)| l).collect()))
    }

    /// Transport of a labelling of the target along a plus-map.
    pub fn transport_labelling(&self, m: &ForestMap, y: &Labelling) -> Result<Labelling, SegalError> {
        let (a, b, phi) = (m.src(), m.tgt(), m.phi());
        let colours = (0..=a.length())
            .map(|i| (0..a.size(i)).map(|e| y.colours[phi.apply(i)][m.component(i).apply(e)]).collect())
            .collect();
        let mut ops = Vec::with_capacity(a.length());
        for i in 1..=a.length() {
            let mut row = Vec::with_capacity(a.size(i));
            for v in 0..a.size(i) {
                let (r, leaves) = self.grafted(b, y, phi.apply(i), m.component(i).apply(v), phi.apply(i - 1))?;
                let position: HashMap<usize, usize> = leaves.iter().enumerate().map(|(s, &l)| (l, s)).collect();
                let perm = a
                    .fiber(i, v)
                    .into_iter()
                    .map(|e| position.get(&m.component(i - 1).apply(e)).copied())
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| SegalError::UndefinedTransport("map is not cartesian".into()))?;
                if perm.len() != leaves.len() {
                    return Err(SegalError::UndefinedTransport("map is not cartesian".into()));
                }
                let acted = self
                    .operad
                    .act(r, &perm)
                    .ok_or_else(|| SegalError::UndefinedTransport(format!("action on {}", self.operad.op(r).id)))?;
                row.push(acted);
            }
            ops.push(row);
        }
        Ok(Labelling { colours, ops })
    }
}

impl Presheaf for Nerve {
    fn name(&self) -> String {
        format!("nerve({})", self.operad.name())
    }

    fn window(&self) -> Window {
        self.window
    }

    fn value(&self, f: &Forest) -> Result<usize, SegalError> {
        Ok(self.entry(f)?.elements.len())
    }

    fn transport(&self, m: &ForestMap, x: usize) -> Result<usize, SegalError> {
        if !m.in_plus() {
            return Err(SegalError::UndefinedTransport("map is not a plus-map".into()));
        }
        let y = self.element(m.tgt(), x)?;
        let l = self.transport_labelling(m, &y)?;
        self.index_of(m.src(), &l)
    }

    fn describe(&self, f: &Forest, x: usize) -> String {
        match self.element(f, x) {
            Ok(l) => {
                let colours: Vec<Vec<&str>> = l
                    .colours
                    .iter()
                    .map(|row| row.iter().map(|&c| self.operad.colours()[c].as_str()).collect())
                    .collect();
                let ops: Vec<Vec<&str>> =
                    l.ops.iter().map(|row| row.iter().map(|&o| self.operad.op(o).id.as_str()).collect()).collect();
                format!("colours {colours:?} ops {ops:?}")
            }
            Err(e) => e.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::plus_maps;
    use crate::kernel::FinSetMap;
    use crate::operad;

    #[test]
    fn com_values_are_singletons() {
        let x = Nerve::new(operad::com(3), Window::new(2, 3)).unwrap();
        for f in Window::new(2, 2).forests() {
            assert_eq!(x.value(&f).unwrap(), 1);
        }
    }

    #[test]
    fn ass_corolla_values() {
        let x = Nerve::new(operad::ass(4), Window::new(1, 4)).unwrap();
        for n in 0..=4 {
            assert_eq!(x.value(&Forest::corolla(n)).unwrap(), (1..=n).product::<usize>().max(1));
        }
    }

    #[test]
    fn width_above_arity_is_rejected() {
        assert!(Nerve::new(operad::com(2), Window::new(1, 3)).is_err());
    }

    #[test]
    fn transport_along_active_map_composes() {
        // c_3 -> ([2], 3 -> 2 -> 1): the composite of the two levels
        let x = Nerve::new(operad::ass(3), Window::new(2, 3)).unwrap();
        let t = Forest::new(vec![FinSetMap::new(2, vec![0, 0, 1]).unwrap(), FinSetMap::new(1, vec![0, 0]).unwrap()])
            .unwrap();
        let maps = plus_maps(&Forest::corolla(3), &t);
        let active: Vec<_> = maps.iter().filter(|m| m.classify().unwrap().active).collect();
        assert_eq!(active.len(), 6);
        // every labelling of t composes to some ordering; for a fixed map the
        // four labellings give four distinct orderings
        for m in active {
            let images: std::collections::BTreeSet<usize> = (0..4).map(|y| x.transport(m, y).unwrap()).collect();
            assert_eq!(images.len(), 4);
        }
    }
}
