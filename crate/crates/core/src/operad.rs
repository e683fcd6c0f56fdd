//! Finite coloured symmetric operads given extensionally, with exhaustive
//! law checking and the built-in fixtures.
//!
//! Conventions: `o ∘_k p` plugs `p` into input slot `k` of `o`, its inputs
//! taking slots `k..k + |p|` and later slots shifting up. Input slot `j` of
//! `o·σ` is input slot `σ(j)` of `o`, so `(o·σ)·τ = o·(σ∘τ)`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default arity bound of the fixtures.
pub const FIXTURE_MAX_ARITY: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("unknown colour {0:?}")]
    UnknownColour(String),
    #[error("unknown operation {0:?}")]
    UnknownOp(String),
    #[error("duplicate operation id {0:?}")]
    DuplicateOp(String),
    #[error("operation {id:?} listed under arity {listed} but has {actual} inputs")]
    ArityMismatch { id: String, listed: usize, actual: usize },
    #[error("malformed entry: {0}")]
    Malformed(String),
    #[error("missing unit for colour {0:?}")]
    MissingUnit(String),
    #[error("unit law fails for {0:?}")]
    Unit(String),
    #[error("composite ({outer:?} o_{slot} {inner:?}) is missing or ill-typed")]
    Composite { outer: String, slot: usize, inner: String },
    #[error("sequential associativity fails for ({0:?}, {1:?}, {2:?})")]
    SequentialAssociativity(String, String, String),
    #[error("parallel associativity fails for ({0:?}, {1:?}, {2:?})")]
    ParallelAssociativity(String, String, String),
    #[error("symmetric action fails at {op:?} with {perm:?}")]
    Action { op: String, perm: Vec<usize> },
    #[error("equivariance fails for ({outer:?}, {inner:?}) with {perm:?}")]
    Equivariance { outer: String, inner: String, perm: Vec<usize> },
    #[error("arity {arity} exceeds the operad's bound {bound}")]
    ArityBound { arity: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpSpec {
    pub inputs: Vec<String>,
    pub output: String,
    pub id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaEntry {
    pub outer: String,
    pub slot: usize,
    pub inner: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaEntry {
    pub op: String,
    pub perm: Vec<usize>,
    pub result: String,
}

/// The JSON form of an operad.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperadSpec {
    pub colors: Vec<String>,
    pub ops: BTreeMap<String, Vec<OpSpec>>,
    pub units: BTreeMap<String, String>,
    pub gamma: Vec<GammaEntry>,
    pub sigma: Vec<SigmaEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Op {
    pub id: String,
    pub inputs: Vec<usize>,
    pub output: usize,
}

/// A validated operad with interned colours and operations.
#[derive(Debug, Clone)]
pub struct Operad {
    name: String,
    colours: Vec<String>,
    ops: Vec<Op>,
    units: Vec<usize>,
    max_arity: usize,
    by_signature: HashMap<(usize, usize), Vec<usize>>,
    compose: HashMap<(usize, usize, usize), usize>,
    act: HashMap<(usize, Vec<usize>), usize>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    crate::kernel::FinSetMap::permutations(n).into_iter().map(|p| p.table().to_vec()).collect()
}

/// `σ ∘ τ` (first `τ`).
fn after(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&t| sigma[t]).collect()
}

/// The permutation realising `(o·σ) ∘_k p = (o ∘_{σ(k)} p)·σ'` for `|p| = a`.
fn outer_block(sigma: &[usize], k: usize, a: usize) -> Vec<usize> {
    let n = sigma.len();
    let shift = |s: usize| if s < sigma[k] { s } else { s + a - 1 };
    let mut out = Vec::with_capacity(n + a - 1);
    for j in 0..k {
        out.push(shift(sigma[j]));
    }
    for t in 0..a {
        out.push(sigma[k] + t);
    }
    for j in k + 1..n {
        out.push(shift(sigma[j]));
    }
    out
}

/// The permutation realising `o ∘_k (p·τ) = (o ∘_k p)·τ'` for `|o| = n`.
fn inner_block(n: usize, k: usize, tau: &[usize]) -> Vec<usize> {
    let a = tau.len();
    let mut out: Vec<usize> = (0..k).collect();
    out.extend(tau.iter().map(|&t| k + t));
    out.extend(k + a..n + a - 1);
    out
}

impl Operad {
    /// Interns a spec and validates all laws within its arity bound.
    pub fn from_spec(name: &str, spec: &OperadSpec) -> Result<Self, OperadError> {
        let operad = Self::intern(name, spec)?;
        operad.validate()?;
        Ok(operad)
    }

    fn intern(name: &str, spec: &OperadSpec) -> Result<Self, OperadError> {
        let colour_index: HashMap<&str, usize> = spec.colors.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
        let colour = |c: &str| colour_index.get(c).copied().ok_or_else(|| OperadError::UnknownColour(c.to_string()));
        let mut ops = Vec::new();
        let mut op_index: HashMap<String, usize> = HashMap::new();
        let mut max_arity = 0;
        for (arity, list) in &spec.ops {
            let listed: usize = arity.parse().map_err(|_| OperadError::Malformed(format!("arity key {arity:?}")))?;
            max_arity = max_arity.max(listed);
            for o in list {
                if o.inputs.len() != listed {
                    return Err(OperadError::ArityMismatch { id: o.id.clone(), listed, actual: o.inputs.len() });
                }
                let inputs = o.inputs.iter().map(|c| colour(c)).collect::<Result<Vec<_>, _>>()?;
                let output = colour(&o.output)?;
                if op_index.insert(o.id.clone(), ops.len()).is_some() {
                    return Err(OperadError::DuplicateOp(o.id.clone()));
                }
                ops.push(Op { id: o.id.clone(), inputs, output });
            }
        }
        let op = |id: &str| op_index.get(id).copied().ok_or_else(|| OperadError::UnknownOp(id.to_string()));
        let mut units = Vec::with_capacity(spec.colors.len());
        for c in &spec.colors {
            let id = spec.units.get(c).ok_or_else(|| OperadError::MissingUnit(c.clone()))?;
            units.push(op(id)?);
        }
        let mut compose = HashMap::new();
        for g in &spec.gamma {
            compose.insert((op(&g.outer)?, g.slot, op(&g.inner)?), op(&g.result)?);
        }
        let mut act = HashMap::new();
        for s in &spec.sigma {
            act.insert((op(&s.op)?, s.perm.clone()), op(&s.result)?);
        }
        let mut by_signature: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, o) in ops.iter().enumerate() {
            by_signature.entry((o.output, o.inputs.len())).or_default().push(i);
        }
        Ok(Operad {
            name: name.to_string(),
            colours: spec.colors.clone(),
            ops,
            units,
            max_arity,
            by_signature,
            compose,
            act,
        })
    }

    pub fn to_spec(&self) -> OperadSpec {
        let mut ops: BTreeMap<String, Vec<OpSpec>> = BTreeMap::new();
        for o in &self.ops {
            ops.entry(o.inputs.len().to_string()).or_default().push(OpSpec {
                inputs: o.inputs.iter().map(|&c| self.colours[c].clone()).collect(),
                output: self.colours[o.output].clone(),
                id: o.id.clone(),
            });
        }
        let units = self.colours.iter().zip(&self.units).map(|(c, &u)| (c.clone(), self.ops[u].id.clone())).collect();
        let mut gamma: Vec<GammaEntry> = self
            .compose
            .iter()
            .map(|(&(o, slot, p), &r)| GammaEntry {
                outer: self.ops[o].id.clone(),
                slot,
                inner: self.ops[p].id.clone(),
                result: self.ops[r].id.clone(),
            })
            .collect();
        gamma.sort_by(|a, b| (&a.outer, a.slot, &a.inner).cmp(&(&b.outer, b.slot, &b.inner)));
        let mut sigma: Vec<SigmaEntry> = self
            .act
            .iter()
            .map(|((o, perm), &r)| SigmaEntry {
                op: self.ops[*o].id.clone(),
                perm: perm.clone(),
                result: self.ops[r].id.clone(),
            })
            .collect();
        sigma.sort_by(|a, b| (&a.op, &a.perm).cmp(&(&b.op, &b.perm)));
        OperadSpec { colors: self.colours.clone(), ops, units, gamma, sigma }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn colours(&self) -> &[String] {
        &self.colours
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn op(&self, i: usize) -> &Op {
        &self.ops[i]
    }

    pub fn arity(&self, i: usize) -> usize {
        self.ops[i].inputs.len()
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn unit(&self, colour: usize) -> usize {
        self.units[colour]
    }

    pub fn op_by_id(&self, id: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.id == id)
    }

    /// Operations with the given output colour and arity.
    pub fn ops_with(&self, output: usize, arity: usize) -> &[usize] {
        self.by_signature.get(&(output, arity)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `o ∘_k p`, when recorded.
    pub fn compose(&self, o: usize, k: usize, p: usize) -> Option<usize> {
        self.compose.get(&(o, k, p)).copied()
    }

    /// `γ(o; p_0, …, p_{k-1})`: every `p_j` plugged into slot `j`. Nullary
    /// operations go in first, from the right, so that intermediate arities
    /// never exceed the final one.
    pub fn graft(&self, o: usize, inner: &[usize]) -> Option<usize> {
        if inner.len() != self.arity(o) {
            return None;
        }
        let mut r = o;
        for (k, &p) in inner.iter().enumerate().rev() {
            if self.arity(p) == 0 {
                r = self.compose(r, k, p)?;
            }
        }
        let mut slot = 0;
        let mut slots = Vec::with_capacity(inner.len());
        for &p in inner {
            slots.push(slot);
            if self.arity(p) > 0 {
                slot += 1;
            }
        }
        for (k, &p) in inner.iter().enumerate().rev() {
            if self.arity(p) > 0 {
                r = self.compose(r, slots[k], p)?;
            }
        }
        Some(r)
    }

    /// `o·σ`, when recorded (the identity always acts trivially).
    pub fn act(&self, o: usize, perm: &[usize]) -> Option<usize> {
        if perm.iter().enumerate().all(|(i, &p)| i == p) && perm.len() == self.arity(o) {
            return Some(o);
        }
        self.act.get(&(o, perm.to_vec())).copied()
    }

    /// Checks units, both associativity laws, the action and equivariance
    /// for every configuration whose arities stay within the bound.
    pub fn validate(&self) -> Result<(), OperadError> {
        let bound = self.max_arity;
        let id = |i: usize| self.ops[i].id.clone();
        let composite = |o: usize, k: usize, p: usize| {
            let r =
                self.compose(o, k, p).ok_or_else(|| OperadError::Composite { outer: id(o), slot: k, inner: id(p) })?;
            let (oo, po, ro) = (&self.ops[o], &self.ops[p], &self.ops[r]);
            let mut expected = oo.inputs[..k].to_vec();
            expected.extend(&po.inputs);
            expected.extend(&oo.inputs[k + 1..]);
            if ro.inputs != expected || ro.output != oo.output {
                return Err(OperadError::Composite { outer: id(o), slot: k, inner: id(p) });
            }
            Ok(r)
        };
        let composable = |o: usize, k: usize, p: usize| {
            k < self.arity(o)
                && self.ops[o].inputs[k] == self.ops[p].output
                && self.arity(o) + self.arity(p) - 1 <= bound
        };
        for (c, &u) in self.units.iter().enumerate() {
            let uo = &self.ops[u];
            if uo.inputs != [c] || uo.output != c {
                return Err(OperadError::Unit(id(u)));
            }
        }
        for o in 0..self.ops.len() {
            if composite(self.units[self.ops[o].output], 0, o)? != o {
                return Err(OperadError::Unit(id(o)));
            }
            for (k, &c) in self.ops[o].inputs.iter().enumerate() {
                if composite(o, k, self.units[c])? != o {
                    return Err(OperadError::Unit(id(o)));
                }
            }
        }
        // every composable pair within the bound must be recorded
        let by_output: HashMap<usize, Vec<usize>> = (0..self.ops.len()).fold(HashMap::new(), |mut m, p| {
            m.entry(self.ops[p].output).or_default().push(p);
            m
        });
        let feeding = |c: usize| by_output.get(&c).map(Vec::as_slice).unwrap_or(&[]);
        for o in 0..self.ops.len() {
            for k in 0..self.arity(o) {
                for &p in feeding(self.ops[o].inputs[k]) {
                    if !composable(o, k, p) {
                        continue;
                    }
                    let op_ = composite(o, k, p)?;
                    let a = self.arity(p);
                    // sequential: (o ∘_k p) ∘_{k+j} q = o ∘_k (p ∘_j q)
                    for j in 0..a {
                        for &q in feeding(self.ops[p].inputs[j]) {
                            if !composable(op_, k + j, q) {
                                continue;
                            }
                            let lhs = composite(op_, k + j, q)?;
                            let rhs = composite(o, k, composite(p, j, q)?)?;
                            if lhs != rhs {
                                return Err(OperadError::SequentialAssociativity(id(o), id(p), id(q)));
                            }
                        }
                    }
                    // parallel: (o ∘_k p) ∘_{l+a-1} q = (o ∘_l q) ∘_k p for k < l
                    for l in k + 1..self.arity(o) {
                        for &q in feeding(self.ops[o].inputs[l]) {
                            if !composable(op_, l + a - 1, q) || !composable(o, l, q) {
                                continue;
                            }
                            let lhs = composite(op_, l + a - 1, q)?;
                            let rhs = composite(composite(o, l, q)?, k, p)?;
                            if lhs != rhs {
                                return Err(OperadError::ParallelAssociativity(id(o), id(p), id(q)));
                            }
                        }
                    }
                }
            }
        }
        let perms: Vec<Vec<Vec<usize>>> = (0..=bound).map(permutations).collect();
        let acted = |o: usize, s: &[usize]| {
            let r = self.act(o, s).ok_or_else(|| OperadError::Action { op: id(o), perm: s.to_vec() })?;
            let expected: Vec<usize> = s.iter().map(|&j| self.ops[o].inputs[j]).collect();
            if self.ops[r].inputs != expected || self.ops[r].output != self.ops[o].output {
                return Err(OperadError::Action { op: id(o), perm: s.to_vec() });
            }
            Ok(r)
        };
        for o in 0..self.ops.len() {
            let n = self.arity(o);
            for s in &perms[n] {
                let os = acted(o, s)?;
                for t in &perms[n] {
                    if acted(os, t)? != acted(o, &after(s, t))? {
                        return Err(OperadError::Action { op: id(o), perm: s.clone() });
                    }
                }
                // (o·σ) ∘_k p = (o ∘_{σ(k)} p)·σ'
                for k in 0..n {
                    for &p in feeding(self.ops[os].inputs[k]) {
                        if !composable(os, k, p) {
                            continue;
                        }
                        let lhs = composite(os, k, p)?;
                        let rhs = acted(composite(o, s[k], p)?, &outer_block(s, k, self.arity(p)))?;
                        if lhs != rhs {
                            return Err(OperadError::Equivariance { outer: id(o), inner: id(p), perm: s.clone() });
                        }
                    }
                }
            }
            // o ∘_k (p·τ) = (o ∘_k p)·τ'
            for k in 0..n {
                for &p in feeding(self.ops[o].inputs[k]) {
                    if !composable(o, k, p) {
                        continue;
                    }
                    let a = self.arity(p);
                    for t in &perms[a] {
                        let lhs = composite(o, k, acted(p, t)?)?;
                        let rhs = acted(composite(o, k, p)?, &inner_block(n, k, t))?;
                        if lhs != rhs {
                            return Err(OperadError::Equivariance { outer: id(o), inner: id(p), perm: t.clone() });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds an operad from a term model: ops listed with their signatures,
/// composition and action computed on ids.
fn build(
    name: &str,
    colours: Vec<String>,
    ops: Vec<Op>,
    unit: impl Fn(usize) -> String,
    compose: impl Fn(&Op, usize, &Op) -> String,
    act: impl Fn(&Op, &[usize]) -> String,
    max_arity: usize,
) -> Operad {
    let index: HashMap<String, usize> = ops.iter().enumerate().map(|(i, o)| (o.id.clone(), i)).collect();
    let mut by_signature: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, o) in ops.iter().enumerate() {
        by_signature.entry((o.output, o.inputs.len())).or_default().push(i);
    }
    let units = (0..colours.len()).map(|c| index[&unit(c)]).collect();
    let mut comp = HashMap::new();
    let mut acts = HashMap::new();
    for (i, o) in ops.iter().enumerate() {
        for (k, &c) in o.inputs.iter().enumerate() {
            for (j, p) in ops.iter().enumerate() {
                if p.output == c && o.inputs.len() + p.inputs.len() - 1 <= max_arity {
                    comp.insert((i, k, j), index[&compose(o, k, p)]);
                }
            }
        }
        for s in permutations(o.inputs.len()) {
            if s.iter().enumerate().any(|(a, &b)| a != b) {
                acts.insert((i, s.clone()), index[&act(o, &s)]);
            }
        }
    }
    Operad { name: name.to_string(), colours, ops, units, max_arity, by_signature, compose: comp, act: acts }
}

/// One colour, one operation of each arity.
pub fn com(max_arity: usize) -> Operad {
    let ops = (0..=max_arity).map(|n| Op { id: format!("m{n}"), inputs: vec![0; n], output: 0 }).collect();
    build(
        "com",
        vec!["x".into()],
        ops,
        |_| "m1".into(),
        |o, _, p| format!("m{}", o.inputs.len() + p.inputs.len() - 1),
        |o, _| o.id.clone(),
        max_arity,
    )
}

fn word_id(w: &[usize]) -> String {
    format!("w{}", w.iter().map(|d| d.to_string()).collect::<String>())
}

fn parse_word(id: &str) -> Vec<usize> {
    id[1..].bytes().map(|b| (b - b'0') as usize).collect()
}

/// One colour; arity-`n` operations are the orderings of the inputs,
/// written as the word listing slots in multiplication order.
pub fn ass(max_arity: usize) -> Operad {
    let mut ops = Vec::new();
    for n in 0..=max_arity {
        for p in permutations(n) {
            ops.push(Op { id: word_id(&p), inputs: vec![0; n], output: 0 });
        }
    }
    build(
        "ass",
        vec!["x".into()],
        ops,
        |_| "w0".into(),
        |o, k, p| {
            let (w, v) = (parse_word(&o.id), parse_word(&p.id));
            let a = v.len();
            let mut out = Vec::new();
            for &x in &w {
                match x.cmp(&k) {
                    std::cmp::Ordering::Less => out.push(x),
                    std::cmp::Ordering::Equal => out.extend(v.iter().map(|&y| y + k)),
                    std::cmp::Ordering::Greater => out.push(x + a - 1),
                }
            }
            word_id(&out)
        },
        |o, s| {
            let mut inv = vec![0; s.len()];
            for (j, &x) in s.iter().enumerate() {
                inv[x] = j;
            }
            word_id(&parse_word(&o.id).iter().map(|&x| inv[x]).collect::<Vec<_>>())
        },
        max_arity,
    )
}

/// Leaf-labelled unordered binary trees, as normalised strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Term {
    Leaf(usize),
    Node(Box<Term>, Box<Term>),
}

impl Term {
    fn node(a: Term, b: Term) -> Term {
        if a <= b {
            Term::Node(Box::new(a), Box::new(b))
        } else {
            Term::Node(Box::new(b), Box::new(a))
        }
    }

    fn render(&self) -> String {
        match self {
            Term::Leaf(i) => i.to_string(),
            Term::Node(a, b) => format!("({} {})", a.render(), b.render()),
        }
    }

    fn parse(s: &str) -> Term {
        fn go(b: &[u8], pos: &mut usize) -> Term {
            if b[*pos] == b'(' {
                *pos += 1;
                let l = go(b, pos);
                *pos += 1; // space
                let r = go(b, pos);
                *pos += 1; // ')'
                Term::node(l, r)
            } else {
                let v = (b[*pos] - b'0') as usize;
                *pos += 1;
                Term::Leaf(v)
            }
        }
        go(s.as_bytes(), &mut 0)
    }

    fn relabel(&self, f: &dyn Fn(usize) -> Term) -> Term {
        match self {
            Term::Leaf(i) => f(*i),
            Term::Node(a, b) => Term::node(a.relabel(f), b.relabel(f)),
        }
    }
}

fn binary_terms(leaves: &[usize]) -> Vec<Term> {
    if leaves.len() == 1 {
        return vec![Term::Leaf(leaves[0])];
    }
    // split off the block containing the first leaf to avoid double counting
    let rest = &leaves[1..];
    let mut out = Vec::new();
    for mask in 0..(1u32 << rest.len()) - 1 {
        let mut left = vec![leaves[0]];
        let mut right = Vec::new();
        for (i, &x) in rest.iter().enumerate() {
            if mask & (1 << i) != 0 {
                left.push(x);
            } else {
                right.push(x);
            }
        }
        for l in binary_terms(&left) {
            for r in binary_terms(&right) {
                out.push(Term::node(l.clone(), r));
            }
        }
    }
    out
}

/// The free symmetric operad on one commutative binary operation,
/// truncated at `max_arity`; there are no nullary operations.
pub fn free_binary(max_arity: usize) -> Operad {
    let mut ops = Vec::new();
    for n in 1..=max_arity {
        let leaves: Vec<usize> = (0..n).collect();
        let mut terms = binary_terms(&leaves);
        terms.sort();
        for t in terms {
            ops.push(Op { id: t.render(), inputs: vec![0; n], output: 0 });
        }
    }
    build(
        "free-binary",
        vec!["x".into()],
        ops,
        |_| "0".into(),
        |o, k, p| {
            let (t, u) = (Term::parse(&o.id), Term::parse(&p.id));
            let a = p.inputs.len();
            t.relabel(&|i| match i.cmp(&k) {
                std::cmp::Ordering::Less => Term::Leaf(i),
                std::cmp::Ordering::Equal => u.relabel(&|j| Term::Leaf(j + k)),
                std::cmp::Ordering::Greater => Term::Leaf(i + a - 1),
            })
            .render()
        },
        |o, s| {
            let mut inv = vec![0; s.len()];
            for (j, &x) in s.iter().enumerate() {
                inv[x] = j;
            }
            Term::parse(&o.id).relabel(&|i| Term::Leaf(inv[i])).render()
        },
        max_arity,
    )
}

fn signature_id(colours: &[String], inputs: &[usize], output: usize) -> String {
    format!("[{}]>{}", inputs.iter().map(|&c| colours[c].as_str()).collect::<Vec<_>>().join(","), colours[output])
}

/// Thin operad: at most one operation per signature, present when `admit`
/// accepts it. Composition and action are forced.
fn thin(name: &str, colours: Vec<String>, admit: impl Fn(&[usize], usize) -> bool, max_arity: usize) -> Operad {
    let k = colours.len();
    let mut ops = Vec::new();
    for n in 0..=max_arity {
        let mut inputs = vec![0; n];
        loop {
            for out in 0..k {
                if admit(&inputs, out) {
                    ops.push(Op { id: signature_id(&colours, &inputs, out), inputs: inputs.clone(), output: out });
                }
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                inputs[pos] += 1;
                if inputs[pos] < k {
                    break;
                }
                inputs[pos] = 0;
            }
            if inputs.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    let names = colours.clone();
    let names2 = colours.clone();
    let names3 = colours.clone();
    build(
        name,
        colours,
        ops,
        move |c| signature_id(&names, &[c], c),
        move |o, slot, p| {
            let mut inputs = o.inputs[..slot].to_vec();
            inputs.extend(&p.inputs);
            inputs.extend(&o.inputs[slot + 1..]);
            signature_id(&names2, &inputs, o.output)
        },
        move |o, s| signature_id(&names3, &s.iter().map(|&j| o.inputs[j]).collect::<Vec<_>>(), o.output),
        max_arity,
    )
}

/// Colours `x < y`; one operation per signature whose output is at least
/// every input (an empty input list has maximum `x`).
pub fn two_colour(max_arity: usize) -> Operad {
    thin("two-colour", vec!["x".into(), "y".into()], |ins, out| ins.iter().all(|&c| c <= out), max_arity)
}

/// The name of the empty word.
pub const EMPTY_WORD: &str = "1";

/// Multisets over `alphabet` letters of size at most `max_len`, written as
/// sorted words; the empty multiset is [`EMPTY_WORD`].
pub fn multiset_words(alphabet: usize, max_len: usize) -> Vec<String> {
    let letters: Vec<char> = (0..alphabet).map(|i| (b'a' + i as u8) as char).collect();
    let mut out = vec![EMPTY_WORD.to_string()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            let start = w.chars().last().map(|c| (c as u8 - b'a') as usize).unwrap_or(0);
            for &l in &letters[start..] {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Sorted concatenation of colour words.
pub fn word_product<'a>(words: impl IntoIterator<Item = &'a str>) -> String {
    let mut letters: Vec<char> = words.into_iter().flat_map(str::chars).filter(|&c| c != '1').collect();
    letters.sort_unstable();
    if letters.is_empty() {
        EMPTY_WORD.to_string()
    } else {
        letters.into_iter().collect()
    }
}

/// The free commutative monoid on `alphabet` letters, truncated at words of
/// length `max_len`, as a thin operad: an operation exists exactly when the
/// inputs multiply to the output. The empty word is the unit colour.
pub fn free_monoid(alphabet: usize, max_len: usize, max_arity: usize) -> Operad {
    let colours = multiset_words(alphabet, max_len);
    let names = colours.clone();
    thin(
        "free-monoid",
        colours,
        move |ins, out| word_product(ins.iter().map(|&c| names[c].as_str())) == names[out],
        max_arity,
    )
}

/// The fixture with the given name.
pub fn fixture(name: &str) -> Option<Operad> {
    Some(match name {
        "com" => com(FIXTURE_MAX_ARITY),
        "ass" => ass(FIXTURE_MAX_ARITY),
        "free-binary" => free_binary(FIXTURE_MAX_ARITY),
        "two-colour" => two_colour(FIXTURE_MAX_ARITY),
        "free-monoid" => free_monoid(3, 3, 3),
        _ => return None,
    })
}

pub const FIXTURE_NAMES: [&str; 5] = ["com", "ass", "free-binary", "two-colour", "free-monoid"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for name in FIXTURE_NAMES {
            let o = fixture(name).unwrap();
            o.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn fixture_sizes() {
        let counts =
            |o: &Operad| (0..=4).map(|n| o.ops().iter().filter(|p| p.inputs.len() == n).count()).collect::<Vec<_>>();
        assert_eq!(counts(&com(4)), vec![1; 5]);
        assert_eq!(counts(&ass(4)), vec![1, 1, 2, 6, 24]);
        assert_eq!(counts(&free_binary(4)), vec![0, 1, 1, 3, 15]);
        // arity 1: x>x, x>y, y>y
        assert_eq!(counts(&two_colour(4))[..2], [2, 3]);
    }

    #[test]
    fn ass_composition_by_hand() {
        let o = ass(4);
        let w = |s: &str| o.op_by_id(s).unwrap();
        // (x1 x0) o_0 (y0 y1) = x1 y0 y1, with x1 now in slot 2
        assert_eq!(o.compose(w("w10"), 0, w("w01")), Some(w("w201")));
        assert_eq!(o.compose(w("w10"), 1, w("w01")), Some(w("w120")));
        // swapping the inputs of x0 x1 gives x1 x0
        assert_eq!(o.act(w("w01"), &[1, 0]), Some(w("w10")));
    }

    #[test]
    fn spec_roundtrip_and_rejection() {
        let o = ass(3);
        let spec = o.to_spec();
        let json = serde_json::to_string(&spec).unwrap();
        let back: OperadSpec = serde_json::from_str(&json).unwrap();
        Operad::from_spec("ass", &back).unwrap();
        // break associativity by rewiring one composite
        let mut bad = spec.clone();
        let e = bad.gamma.iter_mut().find(|g| g.outer == "w01" && g.slot == 0 && g.inner == "w10").unwrap();
        e.result = "w012".into();
        assert!(Operad::from_spec("bad", &bad).is_err());
    }

    #[test]
    fn broken_associativity_reports_triple() {
        let mut spec = ass(4).to_spec();
        let e = spec.gamma.iter_mut().find(|g| g.outer == "w01" && g.slot == 0 && g.inner == "w01").unwrap();
        e.result = "w102".into();
        let err = Operad::from_spec("bad", &spec).unwrap_err();
        assert!(
            matches!(
                err,
                OperadError::SequentialAssociativity(..)
                    | OperadError::ParallelAssociativity(..)
                    | OperadError::Equivariance { .. }
            ),
            "{err}"
        );
    }
}
