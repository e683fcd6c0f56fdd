//! Slice objects `B ⤳ T` up to isomorphism, enumerated directly in
//! canonical form, and the morphisms that generate each slice category.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::EnvelopeError;
use crate::forest::{
    canonical_positions, plus_maps_over, pre_maps_over, relabel, validate_forest_map, Forest, ForestMap,
};
use crate::kernel::{Arrow, FinCategory, FinSetMap};
use crate::simplex::SimplexMap;

/// Which morphisms of componentwise-active forests the slice keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceMode {
    /// Every natural transformation over the identity of `[n]`.
    Pre,
    /// Plus-maps only (injective, equifibred).
    Plus,
    /// Isomorphisms only.
    Iso,
}

impl SliceMode {
    pub fn from_strict(strict: bool) -> Self {
        if strict {
            SliceMode::Plus
        } else {
            SliceMode::Pre
        }
    }

    pub fn strict(self) -> bool {
        self != SliceMode::Pre
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SliceConfig {
    /// Bound on every level of `B`.
    pub cap: usize,
    pub mode: SliceMode,
    /// Drop objects with an empty fibre over some edge of the target.
    pub exclude_empty: bool,
    /// Extra room above `cap` for the zigzags of the colimit; only
    /// classes met by objects within `cap` are kept.
    #[serde(default)]
    pub lookahead: usize,
}

impl Default for SliceConfig {
    fn default() -> Self {
        Self { cap: 3, mode: SliceMode::Plus, exclude_empty: true, lookahead: 0 }
    }
}

impl SliceConfig {
    pub fn new(cap: usize, mode: SliceMode, exclude_empty: bool) -> Self {
        Self { cap, mode, exclude_empty, lookahead: 0 }
    }

    pub fn with_lookahead(self, lookahead: usize) -> Self {
        Self { lookahead, ..self }
    }

    /// The cap the colimit is computed at.
    pub fn reach(&self) -> usize {
        self.cap + self.lookahead
    }

    pub(crate) fn within(&self, s: &SliceObject) -> bool {
        s.forest.sizes().iter().all(|&k| k <= self.cap)
    }

    pub fn with_cap(self, cap: usize) -> Self {
        Self { cap, ..self }
    }
}

/// A forest `B` with componentwise active arrows `over[i] : B_i -> T_i`
/// commuting with the chains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SliceObject {
    pub forest: Forest,
    pub over: Vec<FinSetMap>,
}

impl SliceObject {
    pub fn new(forest: Forest, over: Vec<FinSetMap>, target: &Forest) -> Result<Self, EnvelopeError> {
        let bad = || EnvelopeError::NotOver(format!("{forest:?} with {over:?}"));
        if forest.length() != target.length() || over.len() != forest.length() + 1 {
            return Err(bad());
        }
        for (i, p) in over.iter().enumerate() {
            if p.src_size() != forest.size(i) || p.tgt_size() != target.size(i) {
                return Err(bad());
            }
        }
        for i in 0..forest.length() {
            for e in 0..forest.size(i) {
                if over[i + 1].apply(forest.chain()[i].apply(e)) != target.chain()[i].apply(over[i].apply(e)) {
                    return Err(bad());
                }
            }
        }
        Ok(Self { forest, over })
    }

    /// `T ⤳ T` by identities.
    pub fn identity(t: &Forest) -> Self {
        Self { forest: t.clone(), over: t.sizes().iter().map(|&s| FinSetMap::identity(s)).collect() }
    }

    pub fn length(&self) -> usize {
        self.forest.length()
    }

    /// Every edge of the target has a non-empty fibre.
    pub fn covers(&self) -> bool {
        self.over.iter().all(FinSetMap::is_surjective)
    }

    /// The same forest over `T'` through `q : T -> T'` componentwise.
    pub fn push_along(&self, q: &[FinSetMap]) -> SliceObject {
        let over = self.over.iter().zip(q).map(|(p, q)| p.then(q).expect("levels agree")).collect();
        SliceObject { forest: self.forest.clone(), over }
    }

    /// Whether a map of forests over the identity commutes with the arrows
    /// to the target.
    pub fn is_over(&self, m: &ForestMap, other: &SliceObject) -> bool {
        (0..=self.length()).all(|i| {
            (0..self.forest.size(i)).all(|e| other.over[i].apply(m.component(i).apply(e)) == self.over[i].apply(e))
        })
    }
}

/// Codes of every element, recording the target edge each element lies
/// over: `[p]` for a leaf, `[p` + sorted input codes + `]` above.
fn decorated_codes(s: &SliceObject) -> Vec<Vec<String>> {
    let f = &s.forest;
    let mut codes = vec![(0..f.size(0)).map(|e| format!("[{}]", s.over[0].apply(e))).collect::<Vec<_>>()];
    for level in 1..=f.length() {
        let below = &codes[level - 1];
        let mut kids: Vec<Vec<&str>> = vec![Vec::new(); f.size(level)];
        for (e, &p) in f.chain()[level - 1].table().iter().enumerate() {
            kids[p].push(&below[e]);
        }
        let row = kids
            .into_iter()
            .enumerate()
            .map(|(v, mut k)| {
                k.sort_unstable();
                format!("[{}{}]", s.over[level].apply(v), k.concat())
            })
            .collect();
        codes.push(row);
    }
    codes
}

fn key_of(codes: &[Vec<String>]) -> String {
    let mut roots = codes.last().cloned().unwrap_or_default();
    roots.sort_unstable();
    format!("{}:{}", codes.len() - 1, roots.join(","))
}

/// The canonical representative and, per level, the position of every
/// old element in it.
pub fn canonicalize(s: &SliceObject) -> (SliceObject, Vec<Vec<usize>>) {
    let codes = decorated_codes(s);
    let positions = canonical_positions(&s.forest, &codes);
    let forest = relabel(&s.forest, &positions);
    let over = s
        .over
        .iter()
        .zip(&positions)
        .map(|(p, pos)| {
            let mut table = vec![0; p.src_size()];
            for (old, &new) in pos.iter().enumerate() {
                table[new] = p.apply(old);
            }
            FinSetMap::with_sizes(p.src_size(), p.tgt_size(), table).expect("permuted arrow")
        })
        .collect();
    (SliceObject { forest, over }, positions)
}

fn invert(pos: &[Vec<usize>]) -> Vec<Vec<usize>> {
    pos.iter()
        .map(|row| {
            let mut inv = vec![0; row.len()];
            for (old, &new) in row.iter().enumerate() {
                inv[new] = old;
            }
            inv
        })
        .collect()
}

/// The isomorphism `src -> tgt` sending element `e` of level `i` to
/// `pos[i][e]`.
fn iso_map(src: &Forest, tgt: &Forest, pos: &[Vec<usize>]) -> ForestMap {
    let comps =
        pos.iter().map(|row| FinSetMap::with_sizes(row.len(), row.len(), row.clone()).expect("permutation")).collect();
    ForestMap::plus(src, tgt, SimplexMap::identity(src.length()), comps).expect("relabelling is an isomorphism")
}

/// The sub-object on the kept elements (closed under the chain) and its
/// inclusion.
pub(crate) fn restrict_to(s: &SliceObject, keep: &[Vec<bool>]) -> (SliceObject, ForestMap) {
    let n = s.length();
    let rank: Vec<Vec<Option<usize>>> = keep
        .iter()
        .map(|row| {
            let mut next = 0;
            row.iter()
                .map(|&k| {
                    k.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let kept: Vec<Vec<usize>> =
        keep.iter().map(|row| row.iter().enumerate().filter(|(_, &k)| k).map(|(e, _)| e).collect()).collect();
    let forest = if n == 0 {
        Forest::edge_forest(kept[0].len())
    } else {
        let chain = (0..n)
            .map(|i| {
                let table = kept[i]
                    .iter()
                    .map(|&e| {
                        rank[i + 1][s.forest.chain()[i].apply(e)].expect("kept elements are closed under the chain")
                    })
                    .collect();
                FinSetMap::new(kept[i + 1].len(), table).expect("in range")
            })
            .collect();
        Forest::new(chain).expect("composable")
    };
    let over = kept
        .iter()
        .zip(&s.over)
        .map(|(k, p)| {
            FinSetMap::with_sizes(k.len(), p.tgt_size(), k.iter().map(|&e| p.apply(e)).collect()).expect("in range")
        })
        .collect();
    let comps = kept
        .iter()
        .enumerate()
        .map(|(i, k)| FinSetMap::with_sizes(k.len(), s.forest.size(i), k.clone()).expect("in range"))
        .collect();
    let incl = validate_forest_map(&forest, &s.forest, SimplexMap::identity(n), comps).expect("inclusion is natural");
    (SliceObject { forest, over }, incl)
}

/// The component of `s` above root `r`, with its inclusion.
pub(crate) fn root_component(s: &SliceObject, r: usize) -> (SliceObject, ForestMap) {
    let n = s.length();
    let keep: Vec<Vec<bool>> =
        (0..=n).map(|i| (0..s.forest.size(i)).map(|e| s.forest.between(i, n).apply(e) == r).collect()).collect();
    restrict_to(s, &keep)
}

/// A decorated tree of some height in the direct enumeration.
struct DTree {
    label: usize,
    children: Vec<usize>,
    profile: Vec<usize>,
    code: String,
}

/// Non-decreasing sequences from `cands` whose summed profiles stay within
/// `cap` at every level.
fn multisets(cands: &[usize], profiles: &[Vec<usize>], width: usize, cap: usize) -> Vec<Vec<usize>> {
    fn go(
        cands: &[usize],
        profiles: &[Vec<usize>],
        cap: usize,
        start: usize,
        seq: &mut Vec<usize>,
        totals: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(seq.clone());
        for k in start..cands.len() {
            let p = &profiles[cands[k]];
            if totals.iter().zip(p).all(|(a, b)| a + b <= cap) {
                totals.iter_mut().zip(p).for_each(|(a, b)| *a += b);
                seq.push(cands[k]);
                go(cands, profiles, cap, k, seq, totals, out);
                seq.pop();
                totals.iter_mut().zip(p).for_each(|(a, b)| *a -= b);
            }
        }
    }
    let mut out = Vec::new();
    go(cands, profiles, cap, 0, &mut Vec::new(), &mut vec![0; width], &mut out);
    out
}

/// Canonical representatives of all slice objects over `t` whose levels
/// have at most `cap` elements.
fn representatives(t: &Forest, cap: usize) -> Vec<SliceObject> {
    let n = t.length();
    let mut levels: Vec<Vec<DTree>> = Vec::with_capacity(n + 1);
    let mut leaves: Vec<DTree> = (0..t.size(0))
        .map(|e| DTree { label: e, children: Vec::new(), profile: vec![1], code: format!("[{e}]") })
        .collect();
    leaves.sort_by(|a, b| a.code.cmp(&b.code));
    levels.push(leaves);
    for h in 1..=n {
        let below = &levels[h - 1];
        let profiles: Vec<Vec<usize>> = below.iter().map(|d| d.profile.clone()).collect();
        let mut row = Vec::new();
        for v in 0..t.size(h) {
            let cands: Vec<usize> = (0..below.len()).filter(|&i| t.chain()[h - 1].apply(below[i].label) == v).collect();
            for seq in multisets(&cands, &profiles, h, cap) {
                let mut profile = vec![0; h + 1];
                for &c in &seq {
                    profile.iter_mut().zip(&below[c].profile).for_each(|(a, b)| *a += b);
                }
                profile[h] = 1;
                let code = format!("[{v}{}]", seq.iter().map(|&c| below[c].code.as_str()).collect::<String>());
                row.push(DTree { label: v, children: seq, profile, code });
            }
        }
        row.sort_by(|a, b| a.code.cmp(&b.code));
        levels.push(row);
    }
    let top = &levels[n];
    let profiles: Vec<Vec<usize>> = top.iter().map(|d| d.profile.clone()).collect();
    let all: Vec<usize> = (0..top.len()).collect();
    multisets(&all, &profiles, n + 1, cap)
        .into_iter()
        .map(|roots| {
            let mut elems: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
            let mut tables: Vec<Vec<usize>> = vec![Vec::new(); n];
            elems[n] = roots;
            for h in (0..n).rev() {
                let (lower, upper) = elems.split_at_mut(h + 1);
                for (pos, &ti) in upper[0].iter().enumerate() {
                    for &c in &levels[h + 1][ti].children {
                        lower[h].push(c);
                        tables[h].push(pos);
                    }
                }
            }
            let forest = if n == 0 {
                Forest::edge_forest(elems[0].len())
            } else {
                Forest::new(
                    tables
                        .into_iter()
                        .enumerate()
                        .map(|(h, table)| FinSetMap::new(elems[h + 1].len(), table).expect("in range"))
                        .collect(),
                )
                .expect("composable")
            };
            let over = elems
                .iter()
                .enumerate()
                .map(|(h, row)| {
                    FinSetMap::with_sizes(row.len(), t.size(h), row.iter().map(|&ti| levels[h][ti].label).collect())
                        .expect("labels in range")
                })
                .collect();
            SliceObject { forest, over }
        })
        .collect()
}

/// A morphism `objects[src] -> objects[tgt]` of the slice.
#[derive(Debug, Clone)]
pub struct Generator {
    pub src: usize,
    pub tgt: usize,
    pub map: ForestMap,
}

/// The skeleton of the slice over a target within a cap.
#[derive(Debug, Clone)]
pub struct Slice {
    target: Forest,
    config: SliceConfig,
    objects: Vec<SliceObject>,
    index: HashMap<String, usize>,
}

impl Slice {
    pub fn new(target: &Forest, config: SliceConfig) -> Result<Self, EnvelopeError> {
        if let Some((level, &size)) = target.sizes().iter().enumerate().find(|(_, &s)| s > config.cap) {
            return Err(EnvelopeError::CapTooSmall { cap: config.cap, level, size });
        }
        let objects: Vec<SliceObject> = representatives(target, config.reach())
            .into_iter()
            .filter(|s| !config.exclude_empty || s.covers())
            .collect();
        let index = objects.iter().enumerate().map(|(i, s)| (key_of(&decorated_codes(s)), i)).collect();
        Ok(Self { target: target.clone(), config, objects, index })
    }

    pub fn target(&self) -> &Forest {
        &self.target
    }

    pub fn config(&self) -> SliceConfig {
        self.config
    }

    pub fn objects(&self) -> &[SliceObject] {
        &self.objects
    }

    /// The representative isomorphic to `s` and an isomorphism from it to
    /// `s`, when `s` lies in the slice.
    pub fn locate(&self, s: &SliceObject) -> Option<(usize, ForestMap)> {
        let codes = decorated_codes(s);
        let idx = *self.index.get(&key_of(&codes))?;
        let positions = canonical_positions(&s.forest, &codes);
        Some((idx, iso_map(&self.objects[idx].forest, &s.forest, &invert(&positions))))
    }

    /// Swaps of adjacent identical siblings; they generate every
    /// automorphism of a canonical representative.
    fn automorphisms(&self, x: usize) -> Vec<ForestMap> {
        let s = &self.objects[x];
        let f = &s.forest;
        let n = f.length();
        let codes = decorated_codes(s);
        let mut out = Vec::new();
        for i in 0..=n {
            for a in 0..f.size(i).saturating_sub(1) {
                let b = a + 1;
                let siblings = i == n || f.chain()[i].apply(a) == f.chain()[i].apply(b);
                if !siblings || codes[i][a] != codes[i][b] {
                    continue;
                }
                let pos: Vec<Vec<usize>> = (0..=n)
                    .map(|j| {
                        let mut row: Vec<usize> = (0..f.size(j)).collect();
                        if j <= i {
                            let up = f.between(j, i);
                            let da = up.fiber(a);
                            let db = up.fiber(b);
                            for (&p, &q) in da.iter().zip(&db) {
                                row[p] = q;
                                row[q] = p;
                            }
                        }
                        row
                    })
                    .collect();
                out.push(iso_map(f, f, &pos));
            }
        }
        out
    }

    /// `objects[x]` with some elements removed, as a generator into `x`.
    fn deletion(&self, x: usize, keep: &[Vec<bool>]) -> Option<Generator> {
        let (sub, incl) = restrict_to(&self.objects[x], keep);
        let (idx, iso) = self.locate(&sub)?;
        Some(Generator { src: idx, tgt: x, map: iso.then(&incl).expect("composable") })
    }

    /// `objects[x]` with elements `a < b` of one level identified.
    fn merge(&self, x: usize, level: usize, a: usize, b: usize) -> Option<Generator> {
        let s = &self.objects[x];
        let f = &s.forest;
        let n = f.length();
        let squash = |e: usize| {
            if e == b {
                a
            } else if e > b {
                e - 1
            } else {
                e
            }
        };
        let q = FinSetMap::new(f.size(level) - 1, (0..f.size(level)).map(squash).collect()).ok()?;
        let chain: Vec<FinSetMap> = (0..n)
            .map(|i| {
                let c = &f.chain()[i];
                if i + 1 == level {
                    c.then(&q).expect("shapes agree")
                } else if i == level {
                    let mut table = vec![0; f.size(level) - 1];
                    for e in 0..f.size(level) {
                        table[squash(e)] = c.apply(e);
                    }
                    FinSetMap::new(c.tgt_size(), table).expect("in range")
                } else {
                    c.clone()
                }
            })
            .collect();
        let forest = if n == 0 { Forest::edge_forest(f.size(0) - 1) } else { Forest::new(chain).ok()? };
        let mut over = s.over.clone();
        let mut table = vec![0; f.size(level) - 1];
        for e in 0..f.size(level) {
            table[squash(e)] = s.over[level].apply(e);
        }
        over[level] = FinSetMap::with_sizes(table.len(), s.over[level].tgt_size(), table).ok()?;
        let quotient = SliceObject { forest, over };
        let comps = (0..=n).map(|i| if i == level { q.clone() } else { FinSetMap::identity(f.size(i)) }).collect();
        let m = validate_forest_map(f, &quotient.forest, SimplexMap::identity(n), comps).ok()?;
        let (idx, iso) = self.locate(&quotient)?;
        let back = iso_map(&quotient.forest, &self.objects[idx].forest, &invert(&iso_positions(&iso)));
        Some(Generator { src: x, tgt: idx, map: m.then(&back).expect("composable") })
    }

    /// Morphisms generating the slice category under composition.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for x in 0..self.objects.len() {
            for m in self.automorphisms(x) {
                out.push(Generator { src: x, tgt: x, map: m });
            }
            let s = &self.objects[x];
            let f = &s.forest;
            let n = f.length();
            match self.config.mode {
                SliceMode::Iso => {}
                SliceMode::Plus => {
                    for r in 0..f.size(n) {
                        let keep: Vec<Vec<bool>> =
                            (0..=n).map(|i| (0..f.size(i)).map(|e| f.between(i, n).apply(e) != r).collect()).collect();
                        out.extend(self.deletion(x, &keep));
                    }
                }
                SliceMode::Pre => {
                    for i in 0..=n {
                        for e in 0..f.size(i) {
                            if i > 0 && !f.fiber(i, e).is_empty() {
                                continue;
                            }
                            let keep: Vec<Vec<bool>> =
                                (0..=n).map(|j| (0..f.size(j)).map(|u| j != i || u != e).collect()).collect();
                            out.extend(self.deletion(x, &keep));
                        }
                        for a in 0..f.size(i) {
                            for b in a + 1..f.size(i) {
                                let same_parent = i == n || f.chain()[i].apply(a) == f.chain()[i].apply(b);
                                if same_parent && s.over[i].apply(a) == s.over[i].apply(b) {
                                    out.extend(self.merge(x, i, a, b));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// The full skeletal slice category: every morphism between
    /// representatives allowed by the mode.
    pub fn category(&self) -> Result<FinCategory<SliceObject, ForestMap>, EnvelopeError> {
        let n = self.target.length();
        let id = SimplexMap::identity(n);
        let mut arrows: Vec<(usize, usize, ForestMap)> = Vec::new();
        for (a, sa) in self.objects.iter().enumerate() {
            for (b, sb) in self.objects.iter().enumerate() {
                let candidates = match self.config.mode {
                    SliceMode::Pre => pre_maps_over(&sa.forest, &sb.forest, &id),
                    SliceMode::Plus | SliceMode::Iso => {
                        let mut out = Vec::new();
                        plus_maps_over(&sa.forest, &sb.forest, &id, &mut out);
                        out
                    }
                };
                for m in candidates {
                    let iso_ok =
                        self.config.mode != SliceMode::Iso || m.components().iter().all(FinSetMap::is_bijective);
                    if iso_ok && sa.is_over(&m, sb) {
                        arrows.push((a, b, m));
                    }
                }
            }
        }
        let index: HashMap<(usize, usize, ForestMap), usize> =
            arrows.iter().cloned().enumerate().map(|(i, (s, t, m))| ((s, t, m), i)).collect();
        let mut outgoing: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            outgoing.entry(a.0).or_default().push(i);
        }
        let mut composition = HashMap::new();
        for (f, (s, t, mf)) in arrows.iter().enumerate() {
            for &g in outgoing.get(t).into_iter().flatten() {
                let (_, u, mg) = &arrows[g];
                let h = mf.then(mg).map_err(|e| EnvelopeError::NotOver(e.to_string()))?;
                let h = index.get(&(*s, *u, h)).ok_or_else(|| EnvelopeError::NotOver("composite missing".into()))?;
                composition.insert((f, g), *h);
            }
        }
        let identities =
            self.objects.iter().enumerate().map(|(x, s)| index[&(x, x, ForestMap::identity(&s.forest))]).collect();
        let arrows = arrows.into_iter().map(|(src, tgt, payload)| Arrow { src, tgt, payload }).collect();
        FinCategory::new(self.objects.clone(), arrows, composition, identities)
            .map_err(|e| EnvelopeError::NotOver(e.to_string()))
    }
}

fn iso_positions(m: &ForestMap) -> Vec<Vec<usize>> {
    m.components().iter().map(|c| c.table().to_vec()).collect()
}

/// `B ×_T T'` along a plus-map `m : T' -> T`, with its projection to `B`.
pub fn pullback(s: &SliceObject, m: &ForestMap) -> (SliceObject, ForestMap) {
    let (tp, phi) = (m.src(), m.phi());
    let n = tp.length();
    // elements of level i: (b, t') with over(b) = m_i(t')
    let mut elems: Vec<Vec<(usize, usize)>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let j = phi.apply(i);
        let back: HashMap<usize, usize> = (0..tp.size(i)).map(|t| (m.component(i).apply(t), t)).collect();
        elems.push((0..s.forest.size(j)).filter_map(|b| back.get(&s.over[j].apply(b)).map(|&t| (b, t))).collect());
    }
    let forest = if n == 0 {
        Forest::edge_forest(elems[0].len())
    } else {
        let chain = (0..n)
            .map(|i| {
                let up = s.forest.between(phi.apply(i), phi.apply(i + 1));
                let pos: HashMap<(usize, usize), usize> =
                    elems[i + 1].iter().enumerate().map(|(k, &p)| (p, k)).collect();
                let table = elems[i].iter().map(|&(b, t)| pos[&(up.apply(b), tp.chain()[i].apply(t))]).collect();
                FinSetMap::new(elems[i + 1].len(), table).expect("in range")
            })
            .collect();
        Forest::new(chain).expect("composable")
    };
    let over = elems
        .iter()
        .enumerate()
        .map(|(i, row)| {
            FinSetMap::with_sizes(row.len(), tp.size(i), row.iter().map(|&(_, t)| t).collect()).expect("in range")
        })
        .collect();
    let comps = elems
        .iter()
        .enumerate()
        .map(|(i, row)| {
            FinSetMap::with_sizes(row.len(), s.forest.size(phi.apply(i)), row.iter().map(|&(b, _)| b).collect())
                .expect("in range")
        })
        .collect();
    let q =
        ForestMap::plus(&forest, &s.forest, phi.clone(), comps).expect("the projection of a pullback is a plus-map");
    (SliceObject { forest, over }, q)
}
