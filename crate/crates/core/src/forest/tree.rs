//! Isomorphism classes of level trees, automorphisms and vertex bookkeeping.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Forest, ForestError, ForestMap, Pattern, MAX_HEIGHT, MAX_WIDTH};
use crate::gamma::PointedMap;
use crate::kernel::FinSetMap;

/// Nested-parenthesis code of every element, level by level. A leaf edge is
/// `|`; an edge above a vertex is `(` followed by the sorted codes of its
/// inputs and `)`.
fn element_codes(f: &Forest) -> Vec<Vec<String>> {
    let mut codes = vec![vec!["|".to_string(); f.size(0)]];
    for level in 1..=f.length() {
        let below = &codes[level - 1];
        let mut kids: Vec<Vec<&str>> = vec![Vec::new(); f.size(level)];
        for (e, &p) in f.chain()[level - 1].table().iter().enumerate() {
            kids[p].push(&below[e]);
        }
        let row = kids
            .into_iter()
            .map(|mut k| {
                k.sort_unstable();
                format!("({})", k.concat())
            })
            .collect();
        codes.push(row);
    }
    codes
}

/// Code determining a forest up to isomorphism (level-preserving
/// relabelling of every level).
pub fn canonical_code(f: &Forest) -> String {
    let codes = element_codes(f);
    let mut roots = codes[f.length()].clone();
    roots.sort_unstable();
    format!("{}:{}", f.length(), roots.join(","))
}

/// The representative of the isomorphism class of `f`: roots ordered by
/// code, then every level ordered by (parent position, code).
pub fn canonical_form(f: &Forest) -> Forest {
    relabel(f, &canonical_positions(f, &element_codes(f)))
}

/// `positions[level][old]` is the index of `old` in the order that sorts
/// roots by code and every lower level by (parent position, code).
pub(crate) fn canonical_positions(f: &Forest, codes: &[Vec<String>]) -> Vec<Vec<usize>> {
    let n = f.length();
    let invert = |row: &[usize]| {
        let mut pos = vec![0; row.len()];
        for (new, &old) in row.iter().enumerate() {
            pos[old] = new;
        }
        pos
    };
    let mut positions: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut top: Vec<usize> = (0..f.size(n)).collect();
    top.sort_by(|&a, &b| codes[n][a].cmp(&codes[n][b]));
    positions[n] = invert(&top);
    for level in (0..n).rev() {
        let above = &positions[level + 1];
        let step = &f.chain()[level];
        let mut row: Vec<usize> = (0..f.size(level)).collect();
        row.sort_by(|&a, &b| (above[step.apply(a)], &codes[level][a]).cmp(&(above[step.apply(b)], &codes[level][b])));
        positions[level] = invert(&row);
    }
    positions
}

/// The forest obtained by renaming element `e` of each level to
/// `positions[level][e]`.
pub(crate) fn relabel(f: &Forest, positions: &[Vec<usize>]) -> Forest {
    if f.length() == 0 {
        return f.clone();
    }
    let chain = (0..f.length())
        .map(|level| {
            let mut table = vec![0; f.size(level)];
            for (old, &p) in f.chain()[level].table().iter().enumerate() {
                table[positions[level][old]] = positions[level + 1][p];
            }
            FinSetMap::new(f.size(level + 1), table).expect("relabelling stays in range")
        })
        .collect();
    Forest::new(chain).expect("relabelling keeps the chain composable")
}

/// Order of the automorphism group: at every vertex (and among the roots)
/// identical sub-forests may be permuted freely.
pub fn automorphism_count(f: &Forest) -> u128 {
    let codes = element_codes(f);
    let mut total: u128 = 1;
    let mut multiplicities = |group: Vec<&String>| {
        let mut counts: BTreeMap<&String, u128> = BTreeMap::new();
        for c in group {
            *counts.entry(c).or_default() += 1;
        }
        for k in counts.into_values() {
            total *= (1..=k).product::<u128>();
        }
    };
    multiplicities(codes[f.length()].iter().collect());
    for level in 1..=f.length() {
        for v in 0..f.size(level) {
            multiplicities(f.fiber(level, v).into_iter().map(|e| &codes[level - 1][e]).collect());
        }
    }
    total
}

/// Number of vertices, i.e. of corollas.
pub fn corolla_count(f: &Forest) -> usize {
    f.sizes()[1..].iter().sum()
}

/// Vertices `(level, element)` with `level >= 1`, numbered from 1 in this order.
pub fn vertices(f: &Forest) -> Vec<(usize, usize)> {
    (1..=f.length()).flat_map(|level| (0..f.size(level)).map(move |e| (level, e))).collect()
}

/// The 1-based index of a vertex in [`vertices`] order.
pub fn vertex_index(f: &Forest, level: usize, element: usize) -> usize {
    f.sizes()[1..level].iter().sum::<usize>() + element + 1
}

/// The pointed map on vertex sets underlying a forest map `m : A -> B`, read
/// as an arrow `B -> A` of the opposite category: a vertex of `B` goes to
/// the vertex of `A` whose image subtree contains it, or to the basepoint.
pub fn underlying_gamma_forest(m: &ForestMap) -> PointedMap {
    let (a, b) = (m.src(), m.tgt());
    let phi = m.phi();
    let mut table = vec![0; corolla_count(b) + 1];
    for i in 1..=a.length() {
        let (lo, hi) = (phi.apply(i - 1), phi.apply(i));
        for v in 0..a.size(i) {
            let image = m.component(i).apply(v);
            for level in lo + 1..=hi {
                let up = b.between(level, hi);
                for u in 0..b.size(level) {
                    if up.apply(u) == image {
                        table[vertex_index(b, level, u)] = vertex_index(a, i, v);
                    }
                }
            }
        }
    }
    PointedMap::new(corolla_count(a), table).expect("vertex indices are in range")
}

/// Isomorphism classes of trees together with their codes.
#[derive(Debug, Clone, Serialize)]
pub struct TreeListing {
    pub pattern: Pattern,
    pub max_height: usize,
    pub max_width: usize,
    pub trees: Vec<Forest>,
    pub codes: Vec<String>,
}

impl TreeListing {
    pub fn count_by_height(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_height + 1];
        for t in &self.trees {
            counts[t.length()] += 1;
        }
        counts
    }
}

/// Isomorphism classes of trees of length `<= max_height` with every level
/// of size `<= max_width`, one canonical representative each, sorted by
/// length then code.
pub fn enumerate_trees(pattern: Pattern, max_height: usize, max_width: usize) -> Result<TreeListing, ForestError> {
    if max_height > MAX_HEIGHT || max_width > MAX_WIDTH {
        return Err(ForestError::BoundExceeded { height: max_height, width: max_width });
    }
    let trees: Vec<Forest> = match pattern {
        Pattern::Terminal => (0..=max_height).filter(|_| max_width >= 1).map(Forest::linear).collect(),
        Pattern::Gamma => {
            // Grow downwards: a tree of length l + 1 is isomorphic to one
            // whose top l levels are a representative of length l.
            let mut trees = Vec::new();
            let mut layer: Vec<Forest> = if max_width == 0 { Vec::new() } else { vec![Forest::edge_forest(1)] };
            for _ in 0..max_height {
                let mut next = BTreeMap::new();
                for t in &layer {
                    for s in 0..=max_width {
                        for f in FinSetMap::all(s, t.size(0)) {
                            let chain = std::iter::once(f).chain(t.chain().iter().cloned()).collect();
                            let g = Forest::new(chain).expect("prepending keeps the chain composable");
                            next.entry(canonical_code(&g)).or_insert_with(|| canonical_form(&g));
                        }
                    }
                }
                trees.append(&mut layer);
                layer = next.into_values().collect();
            }
            trees.append(&mut layer);
            trees
        }
    };
    let codes = trees.iter().map(canonical_code).collect();
    Ok(TreeListing { pattern, max_height, max_width, trees, codes })
}

/// Result of the independent tree count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub codes: BTreeSet<String>,
    pub count_by_height: Vec<usize>,
}

/// Counts level trees by recursion on height: a tree of height `h >= 1` is
/// a root with a multiset of trees of height `h - 1`, kept when the summed
/// level sizes stay within the width.
pub fn level_tree_oracle(max_height: usize, max_width: usize) -> OracleResult {
    // (code of the root edge, level sizes from the root down)
    if max_width == 0 {
        return OracleResult { codes: BTreeSet::new(), count_by_height: vec![0; max_height + 1] };
    }
    let mut by_height: Vec<Vec<(String, Vec<usize>)>> = vec![vec![("|".to_string(), vec![1])]];
    for h in 1..=max_height {
        let prev = &by_height[h - 1];
        let mut sorted = prev.clone();
        sorted.sort();
        let mut made = Vec::new();
        let mut chosen = Vec::new();
        multisets(&sorted, 0, &mut chosen, &vec![0; h], max_width, &mut made);
        by_height.push(made);
    }
    let mut codes = BTreeSet::new();
    let mut count_by_height = Vec::new();
    for (h, trees) in by_height.iter().enumerate() {
        count_by_height.push(trees.len());
        for (c, _) in trees {
            codes.insert(format!("{h}:{c}"));
        }
    }
    OracleResult { codes, count_by_height }
}

fn multisets(
    pool: &[(String, Vec<usize>)],
    from: usize,
    chosen: &mut Vec<usize>,
    profile: &[usize],
    width: usize,
    out: &mut Vec<(String, Vec<usize>)>,
) {
    let code = format!("({})", chosen.iter().map(|&i| pool[i].0.as_str()).collect::<String>());
    let mut full = vec![1];
    full.extend(profile.iter().copied());
    out.push((code, full));
    for i in from..pool.len() {
        let next: Vec<usize> = profile.iter().zip(&pool[i].1).map(|(a, b)| a + b).collect();
        if next.iter().all(|&s| s <= width) {
            chosen.push(i);
            multisets(pool, i, chosen, &next, width, out);
            chosen.pop();
        }
    }
}
