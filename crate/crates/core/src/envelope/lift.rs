//! The envelope category of an operad and its regrouping lifts.
//!
//! Objects of `Env(O)` are colour words; a morphism `c -> d` is a function
//! `λ` between positions together with an operation `O(c_{λ⁻¹(j)}; d_j)`
//! for every output, inputs read in increasing order. A grouped word is a
//! family of words indexed by `k̄`, and a grouped morphism over `ψ : k̄ -> l̄`
//! sends the concatenation of the groups in each fibre to a target group.

use std::collections::HashMap;

use serde::Serialize;

use super::EnvelopeError;
use crate::kernel::FinSetMap;
use crate::operad::Operad;

/// A word of colour words, one group per element of `k̄`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ColourWord {
    pub groups: Vec<Vec<usize>>,
}

impl ColourWord {
    pub fn new(groups: Vec<Vec<usize>>) -> Self {
        Self { groups }
    }

    /// One letter per group.
    pub fn letters(colours: &[usize]) -> Self {
        Self { groups: colours.iter().map(|&c| vec![c]).collect() }
    }

    pub fn arity(&self) -> usize {
        self.groups.len()
    }

    pub fn flat(&self) -> Vec<usize> {
        self.groups.concat()
    }

    /// Sorted content, forgetting the grouping.
    pub fn content(&self) -> Vec<usize> {
        let mut c = self.flat();
        c.sort_unstable();
        c
    }

    /// Groups in a fibre of `psi`, concatenated in increasing order.
    pub fn fibre_word(&self, psi: &FinSetMap, j: usize) -> Vec<usize> {
        psi.fiber(j).into_iter().flat_map(|i| self.groups[i].iter().copied()).collect()
    }

    /// `φ_!C`: the groups regrouped along `φ`.
    pub fn regroup(&self, phi: &FinSetMap) -> Self {
        Self { groups: (0..phi.tgt_size()).map(|j| self.fibre_word(phi, j)).collect() }
    }
}

/// A morphism of `Env(O)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EnvMorphism {
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub lambda: FinSetMap,
    pub ops: Vec<usize>,
}

/// A morphism of grouped words over `psi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupedMorphism {
    pub src: ColourWord,
    pub tgt: ColourWord,
    pub psi: FinSetMap,
    /// `components[j] : src.fibre_word(psi, j) -> tgt.groups[j]`.
    pub components: Vec<EnvMorphism>,
}

/// `Env(O)` as a category, with the grouped morphisms of its underlying
/// operad over finite sets.
#[derive(Debug, Clone, Copy)]
pub struct EnvOperad<'a> {
    operad: &'a Operad,
}

impl<'a> EnvOperad<'a> {
    pub fn new(operad: &'a Operad) -> Self {
        Self { operad }
    }

    pub fn operad(&self) -> &'a Operad {
        self.operad
    }

    fn op_with_inputs(&self, inputs: &[usize], output: usize) -> impl Iterator<Item = usize> + '_ {
        let inputs = inputs.to_vec();
        self.operad.ops_with(output, inputs.len()).iter().copied().filter(move |&o| self.operad.op(o).inputs == inputs)
    }

    pub fn is_morphism(&self, f: &EnvMorphism) -> bool {
        f.lambda.src_size() == f.src.len()
            && f.lambda.tgt_size() == f.tgt.len()
            && f.ops.len() == f.tgt.len()
            && f.ops.iter().enumerate().all(|(j, &o)| {
                let op = self.operad.op(o);
                op.output == f.tgt[j] && op.inputs == f.lambda.fiber(j).iter().map(|&i| f.src[i]).collect::<Vec<_>>()
            })
    }

    /// Every morphism `src -> tgt`.
    pub fn homs(&self, src: &[usize], tgt: &[usize]) -> Vec<EnvMorphism> {
        let mut out = Vec::new();
        for lambda in FinSetMap::all(src.len(), tgt.len()) {
            let choices: Vec<Vec<usize>> = (0..tgt.len())
                .map(|j| {
                    let ins: Vec<usize> = lambda.fiber(j).iter().map(|&i| src[i]).collect();
                    self.op_with_inputs(&ins, tgt[j]).collect()
                })
                .collect();
            for ops in product(&choices) {
                out.push(EnvMorphism { src: src.to_vec(), tgt: tgt.to_vec(), lambda: lambda.clone(), ops });
            }
        }
        out
    }

    pub fn identity(&self, word: &[usize]) -> EnvMorphism {
        EnvMorphism {
            src: word.to_vec(),
            tgt: word.to_vec(),
            lambda: FinSetMap::identity(word.len()),
            ops: word.iter().map(|&c| self.operad.unit(c)).collect(),
        }
    }

    /// The symmetry moving position `i` of `src` to `sigma(i)`.
    pub fn permutation(&self, src: &[usize], sigma: &FinSetMap) -> EnvMorphism {
        let mut tgt = vec![0; src.len()];
        for (i, &c) in src.iter().enumerate() {
            tgt[sigma.apply(i)] = c;
        }
        let ops = tgt.iter().map(|&c| self.operad.unit(c)).collect();
        EnvMorphism { src: src.to_vec(), tgt, lambda: sigma.clone(), ops }
    }

    /// `g ∘ f`: the operations of `f` grafted into those of `g`, inputs
    /// put back in increasing order.
    pub fn compose(&self, f: &EnvMorphism, g: &EnvMorphism) -> Result<EnvMorphism, EnvelopeError> {
        if f.tgt != g.src {
            return Err(EnvelopeError::Grouping(format!("{:?} does not match {:?}", f.tgt, g.src)));
        }
        let nu = f.lambda.then(&g.lambda).map_err(|e| EnvelopeError::Grouping(e.to_string()))?;
        let mut ops = Vec::with_capacity(g.tgt.len());
        for (k, &outer) in g.ops.iter().enumerate() {
            let middle = g.lambda.fiber(k);
            let inner: Vec<usize> = middle.iter().map(|&j| f.ops[j]).collect();
            let leaves: Vec<usize> = middle.iter().flat_map(|&j| f.lambda.fiber(j)).collect();
            let r = self.operad.graft(outer, &inner).ok_or_else(|| self.composite_error(outer, &inner))?;
            let position: HashMap<usize, usize> = leaves.iter().enumerate().map(|(s, &l)| (l, s)).collect();
            let perm: Vec<usize> = nu.fiber(k).iter().map(|i| position[i]).collect();
            ops.push(self.operad.act(r, &perm).ok_or_else(|| self.composite_error(r, &perm))?);
        }
        Ok(EnvMorphism { src: f.src.clone(), tgt: g.tgt.clone(), lambda: nu, ops })
    }

    fn composite_error(&self, o: usize, with: &[usize]) -> EnvelopeError {
        EnvelopeError::NotMonoidal(format!("{} with {with:?} leaves the recorded operations", self.operad.op(o).id))
    }

    /// `f ⊗ g` by juxtaposition.
    pub fn tensor(&self, f: &EnvMorphism, g: &EnvMorphism) -> EnvMorphism {
        let (n, m) = (f.tgt.len(), g.tgt.len());
        let mut table = f.lambda.table().to_vec();
        table.extend(g.lambda.table().iter().map(|&j| j + n));
        EnvMorphism {
            src: [f.src.as_slice(), &g.src].concat(),
            tgt: [f.tgt.as_slice(), &g.tgt].concat(),
            lambda: FinSetMap::new(n + m, table).expect("in range"),
            ops: [f.ops.as_slice(), &g.ops].concat(),
        }
    }

    pub fn is_grouped(&self, f: &GroupedMorphism) -> bool {
        f.psi.src_size() == f.src.arity()
            && f.psi.tgt_size() == f.tgt.arity()
            && f.components.len() == f.tgt.arity()
            && f.components
                .iter()
                .enumerate()
                .all(|(j, c)| c.src == f.src.fibre_word(&f.psi, j) && c.tgt == f.tgt.groups[j] && self.is_morphism(c))
    }

    /// Every grouped morphism `src -> tgt` over `psi`.
    pub fn grouped_homs(&self, src: &ColourWord, tgt: &ColourWord, psi: &FinSetMap) -> Vec<GroupedMorphism> {
        let choices: Vec<Vec<EnvMorphism>> =
            (0..tgt.arity()).map(|j| self.homs(&src.fibre_word(psi, j), &tgt.groups[j])).collect();
        let indices: Vec<Vec<usize>> = choices.iter().map(|c| (0..c.len()).collect()).collect();
        product(&indices)
            .into_iter()
            .map(|pick| GroupedMorphism {
                src: src.clone(),
                tgt: tgt.clone(),
                psi: psi.clone(),
                components: pick.iter().enumerate().map(|(j, &p)| choices[j][p].clone()).collect(),
            })
            .collect()
    }

    /// `g ∘ f` over `χ ∘ ψ`: the components of `f` over each fibre of `χ`
    /// juxtaposed, then those of `g`, after moving the letters into the
    /// order of the composite's fibres.
    pub fn compose_grouped(&self, f: &GroupedMorphism, g: &GroupedMorphism) -> Result<GroupedMorphism, EnvelopeError> {
        if f.tgt != g.src {
            return Err(EnvelopeError::Grouping(format!("{:?} does not match {:?}", f.tgt, g.src)));
        }
        let psi = f.psi.then(&g.psi).map_err(|e| EnvelopeError::Grouping(e.to_string()))?;
        let mut components = Vec::with_capacity(g.tgt.arity());
        for (k, gk) in g.components.iter().enumerate() {
            let middle = g.psi.fiber(k);
            // letters (group, position) in the composite's order and in the juxtaposed order
            let wanted: Vec<(usize, usize)> =
                psi.fiber(k).into_iter().flat_map(|i| (0..f.src.groups[i].len()).map(move |p| (i, p))).collect();
            let juxtaposed: Vec<(usize, usize)> = middle
                .iter()
                .flat_map(|&j| f.psi.fiber(j))
                .flat_map(|i| (0..f.src.groups[i].len()).map(move |p| (i, p)))
                .collect();
            let position: HashMap<(usize, usize), usize> =
                juxtaposed.iter().enumerate().map(|(s, &l)| (l, s)).collect();
            let sigma =
                FinSetMap::new(wanted.len(), wanted.iter().map(|l| position[l]).collect()).expect("same letters");
            let reorder = self.permutation(&f.src.fibre_word(&psi, k), &sigma);
            let mut inner = self.identity(&[]);
            for &j in &middle {
                inner = self.tensor(&inner, &f.components[j]);
            }
            components.push(self.compose(&self.compose(&reorder, &inner)?, gk)?);
        }
        Ok(GroupedMorphism { src: f.src.clone(), tgt: g.tgt.clone(), psi, components })
    }
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| c.iter().map(move |x| [prefix.clone(), vec![x.clone()]].concat()))
            .collect();
    }
    out
}

/// The fold `k̄ -> 1̄`.
pub fn fold(k: usize) -> FinSetMap {
    FinSetMap::to_point(k)
}

/// A lift of a grouped word along a partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocartLift {
    pub source: ColourWord,
    pub target: ColourWord,
    pub partition: FinSetMap,
    pub morphism: GroupedMorphism,
}

/// The regrouping of `c` along `phi`, with identities on the content.
pub fn cocartesian_lift(env: &EnvOperad, c: &ColourWord, phi: &FinSetMap) -> Result<CocartLift, EnvelopeError> {
    if phi.src_size() != c.arity() {
        return Err(EnvelopeError::Grouping(format!("{} groups over a partition of {}", c.arity(), phi.src_size())));
    }
    let target = c.regroup(phi);
    let components = target.groups.iter().map(|w| env.identity(w)).collect();
    let morphism = GroupedMorphism { src: c.clone(), tgt: target.clone(), psi: phi.clone(), components };
    Ok(CocartLift { source: c.clone(), target, partition: phi.clone(), morphism })
}

/// Bounds on the grouped words quantified over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LiftWindow {
    pub max_groups: usize,
    pub max_letters: usize,
}

/// Grouped words with at most `max_groups` groups and `max_letters`
/// letters in total.
pub fn grouped_words(colours: usize, window: LiftWindow) -> Vec<ColourWord> {
    fn go(
        colours: usize,
        groups_left: usize,
        letters_left: usize,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<ColourWord>,
    ) {
        out.push(ColourWord::new(cur.clone()));
        if groups_left == 0 {
            return;
        }
        for len in 0..=letters_left {
            for word in words(colours, len) {
                cur.push(word);
                go(colours, groups_left - 1, letters_left - len, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(colours, window.max_groups, window.max_letters, &mut Vec::new(), &mut out);
    out
}

fn words(colours: usize, len: usize) -> Vec<Vec<usize>> {
    product(&vec![(0..colours).collect::<Vec<_>>(); len])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocartReport {
    pub targets: usize,
    pub morphisms: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

/// For every grouped word `D` in the window, every `χ` out of the lift's
/// target and every `f : C -> D` over `χ ∘ φ`, exactly one `g` over `χ`
/// has `g ∘ lift = f`.
pub fn verify_cocartesian(
    env: &EnvOperad,
    lift: &CocartLift,
    window: LiftWindow,
) -> Result<CocartReport, EnvelopeError> {
    let mut report = CocartReport { targets: 0, morphisms: 0, passed: true, witness: None };
    let m = &lift.morphism;
    if m.src != lift.source || m.tgt != lift.target || m.psi != lift.partition || !env.is_grouped(m) {
        report.passed = false;
        report.witness = Some(format!(
            "{:?} is not a morphism {:?} -> {:?} over the partition",
            m.components, lift.source, lift.target
        ));
        return Ok(report);
    }
    for d in grouped_words(env.operad().colours().len(), window) {
        report.targets += 1;
        for chi in FinSetMap::all(lift.target.arity(), d.arity()) {
            let psi = lift.partition.then(&chi).expect("composable");
            let mut hits: HashMap<GroupedMorphism, usize> = HashMap::new();
            for g in env.grouped_homs(&lift.target, &d, &chi) {
                *hits.entry(env.compose_grouped(m, &g)?).or_default() += 1;
            }
            for f in env.grouped_homs(&lift.source, &d, &psi) {
                report.morphisms += 1;
                let n = hits.get(&f).copied().unwrap_or(0);
                if n != 1 {
                    report.passed = false;
                    report.witness = Some(format!(
                        "{f:?} over {:?} has {n} factorisations through the lift over {:?}",
                        psi.table(),
                        chi.table()
                    ));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// The tensor of words: the target of the fold lift, checked to be
/// cocartesian on the window.
pub fn tensor_words(env: &EnvOperad, words: &[Vec<usize>], window: LiftWindow) -> Result<Vec<usize>, EnvelopeError> {
    if words.len() == 1 {
        return Ok(words[0].clone());
    }
    let lift = cocartesian_lift(env, &ColourWord::new(words.to_vec()), &fold(words.len()))?;
    let report = verify_cocartesian(env, &lift, window)?;
    if !report.passed {
        return Err(EnvelopeError::NotMonoidal(report.witness.unwrap_or_default()));
    }
    Ok(lift.target.groups[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad;

    const SMALL: LiftWindow = LiftWindow { max_groups: 2, max_letters: 3 };

    #[test]
    fn fold_concatenates_groups() {
        let com = operad::com(3);
        let env = EnvOperad::new(&com);
        let c = ColourWord::new(vec![vec![0, 0], vec![0]]);
        let lift = cocartesian_lift(&env, &c, &fold(2)).unwrap();
        assert_eq!(lift.target, ColourWord::new(vec![vec![0, 0, 0]]));
        assert_eq!(lift.source.content(), lift.target.content());
    }

    #[test]
    fn swap_exchanges_groups() {
        let com = operad::com(3);
        let env = EnvOperad::new(&com);
        let c = ColourWord::new(vec![vec![0, 0], vec![0]]);
        let swap = FinSetMap::new(2, vec![1, 0]).unwrap();
        assert_eq!(cocartesian_lift(&env, &c, &swap).unwrap().target.groups, vec![vec![0], vec![0, 0]]);
    }

    #[test]
    fn com_homs_are_functions() {
        let com = operad::com(3);
        let env = EnvOperad::new(&com);
        assert_eq!(env.homs(&[0, 0, 0], &[0, 0]).len(), 8);
        assert_eq!(env.homs(&[], &[0, 0]).len(), 1);
    }

    #[test]
    fn composition_is_associative_in_ass() {
        let ass = operad::ass(3);
        let env = EnvOperad::new(&ass);
        let (a, b, c, d) = (vec![0; 3], vec![0; 2], vec![0; 2], vec![0]);
        for f in env.homs(&a, &b) {
            for g in env.homs(&b, &c) {
                let gf = env.compose(&f, &g).unwrap();
                assert!(env.is_morphism(&gf));
                for h in env.homs(&c, &d) {
                    assert_eq!(env.compose(&gf, &h).unwrap(), env.compose(&f, &env.compose(&g, &h).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn ass_lifts_are_cocartesian() {
        let ass = operad::ass(3);
        let env = EnvOperad::new(&ass);
        let c = ColourWord::new(vec![vec![0], vec![0, 0]]);
        let lift = cocartesian_lift(&env, &c, &fold(2)).unwrap();
        assert!(verify_cocartesian(&env, &lift, SMALL).unwrap().passed);
    }

    #[test]
    fn nullary_insertion_is_not_cocartesian() {
        let com = operad::com(3);
        let env = EnvOperad::new(&com);
        let c = ColourWord::new(vec![vec![0]]);
        let mut lift = cocartesian_lift(&env, &c, &FinSetMap::identity(1)).unwrap();
        let insert = env.homs(&[0], &[0, 0]).into_iter().find(|f| f.lambda.table() == [0]).unwrap();
        lift.target = ColourWord::new(vec![vec![0, 0]]);
        lift.morphism.tgt = lift.target.clone();
        lift.morphism.components = vec![insert];
        let report = verify_cocartesian(&env, &lift, SMALL).unwrap();
        assert!(!report.passed);
        assert!(report.witness.is_some());
    }

    #[test]
    fn tensor_of_unit_letters() {
        let com = operad::com(3);
        let env = EnvOperad::new(&com);
        assert_eq!(tensor_words(&env, &[vec![0], vec![0], vec![0]], SMALL).unwrap(), vec![0, 0, 0]);
    }
}
