//! Unit, counit and the triangle identities for nerves of thin monoidal
//! operads.

use serde::Serialize;

use super::{Envelope, EnvelopeColimit, EnvelopeError, SliceConfig, SliceObject};
use crate::forest::Forest;
use crate::kernel::FinSetMap;
use crate::operad::Operad;
use crate::segal::{Labelling, Nerve, Presheaf, Window};

/// The colour `d` carrying an operation `t ∈ O(cs; d)` through which
/// every operation out of `cs` factors uniquely by a unary one.
pub fn tensor_colours(operad: &Operad, cs: &[usize]) -> Result<usize, EnvelopeError> {
    if cs.len() == 1 {
        return Ok(cs[0]);
    }
    let names = || cs.iter().map(|&c| operad.colours()[c].clone()).collect::<Vec<_>>();
    if cs.len() > operad.max_arity() {
        return Err(EnvelopeError::MissingProduct(names()));
    }
    let k = operad.colours().len();
    let out_of = |d: usize| -> Vec<usize> {
        operad.ops_with(d, cs.len()).iter().copied().filter(|&o| operad.op(o).inputs == cs).collect()
    };
    let all: Vec<(usize, usize)> = (0..k).flat_map(|e| out_of(e).into_iter().map(move |s| (e, s))).collect();
    if all.is_empty() {
        return Err(EnvelopeError::MissingProduct(names()));
    }
    for &(d, t) in &all {
        let universal = all.iter().all(|&(e, s)| {
            operad
                .ops_with(e, 1)
                .iter()
                .filter(|&&u| operad.op(u).inputs[0] == d && operad.graft(u, &[t]) == Some(s))
                .count()
                == 1
        });
        if universal {
            return Ok(d);
        }
    }
    Err(EnvelopeError::NotMonoidal(format!("no universal operation out of {:?}", names())))
}

/// `η_T : X(T) -> Env(X)(T)`, sending `x` to its class at `T ⤳ T`.
pub fn unit_map(x: &dyn Presheaf, t: &Forest, config: SliceConfig) -> Result<FinSetMap, EnvelopeError> {
    let colim = EnvelopeColimit::compute(x, t, config)?;
    unit_on(x, &colim, t)
}

fn unit_on(x: &dyn Presheaf, colim: &EnvelopeColimit, t: &Forest) -> Result<FinSetMap, EnvelopeError> {
    let id = SliceObject::identity(t);
    let table = (0..x.value(t)?).map(|e| colim.class_at(x, &id, e)).collect::<Result<Vec<_>, _>>()?;
    Ok(FinSetMap::with_sizes(table.len(), colim.classes(), table).expect("classes in range"))
}

/// The element of `V(T)` obtained by tensoring the colours over every edge
/// of `T` and taking the operation of the resulting signature at every
/// vertex.
pub fn counit_element(v: &Nerve, t: &Forest, s: &SliceObject, e: usize) -> Result<usize, EnvelopeError> {
    let operad = v.operad();
    let l = v.element(&s.forest, e)?;
    let colours = (0..=t.length())
        .map(|i| {
            (0..t.size(i))
                .map(|u| {
                    let fibre: Vec<usize> = s.over[i].fiber(u).iter().map(|&b| l.colours[i][b]).collect();
                    tensor_of(operad, &fibre)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    let ops = (1..=t.length())
        .map(|i| {
            (0..t.size(i))
                .map(|u| {
                    let ins: Vec<usize> = t.fiber(i, u).iter().map(|&c| colours[i - 1][c]).collect();
                    operad
                        .ops_with(colours[i][u], ins.len())
                        .iter()
                        .copied()
                        .find(|&o| operad.op(o).inputs == ins)
                        .ok_or_else(|| {
                            EnvelopeError::MissingProduct(ins.iter().map(|&c| operad.colours()[c].clone()).collect())
                        })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    Ok(v.index_of(t, &Labelling { colours, ops })?)
}

/// The tensor of a possibly empty family; the empty tensor is the colour
/// of the nullary operation's unique target.
fn tensor_of(operad: &Operad, cs: &[usize]) -> Result<usize, EnvelopeError> {
    if cs.is_empty() {
        let targets: Vec<usize> = (0..operad.colours().len()).filter(|&d| !operad.ops_with(d, 0).is_empty()).collect();
        return match targets.as_slice() {
            [] => Err(EnvelopeError::MissingProduct(Vec::new())),
            _ => tensor_colours_nullary(operad, &targets),
        };
    }
    tensor_colours(operad, cs)
}

fn tensor_colours_nullary(operad: &Operad, targets: &[usize]) -> Result<usize, EnvelopeError> {
    // the unit colour maps uniquely to every other target of a constant
    targets
        .iter()
        .copied()
        .find(|&d| {
            targets.iter().all(|&e| operad.ops_with(e, 1).iter().filter(|&&u| operad.op(u).inputs[0] == d).count() == 1)
        })
        .ok_or_else(|| EnvelopeError::NotMonoidal("no unit colour".into()))
}

/// `ε_T : Env(V)(T) -> V(T)` per class, with the classes where it is not
/// well defined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounitTable {
    pub values: Vec<Option<usize>>,
    pub ill_defined: usize,
    pub missing_products: usize,
    pub witness: Option<String>,
}

pub fn counit(v: &Nerve, t: &Forest, config: SliceConfig) -> Result<CounitTable, EnvelopeError> {
    let colim = EnvelopeColimit::compute(v, t, config)?;
    counit_on(v, &colim, t)
}

fn counit_on(v: &Nerve, colim: &EnvelopeColimit, t: &Forest) -> Result<CounitTable, EnvelopeError> {
    let mut seen: Vec<Option<usize>> = vec![None; colim.classes()];
    let mut bad = vec![false; colim.classes()];
    let mut table = CounitTable { values: Vec::new(), ill_defined: 0, missing_products: 0, witness: None };
    for (obj, e) in colim.elements() {
        let c = colim.class_of(obj, e);
        let s = &colim.slice().objects()[obj];
        match counit_element(v, t, s, e) {
            Ok(y) => match seen[c] {
                None if !bad[c] => seen[c] = Some(y),
                Some(z) if z != y => {
                    bad[c] = true;
                    table.witness.get_or_insert_with(|| {
                        format!(
                            "class {c} of {t:?} sends {} to {} and another element to {}",
                            v.describe(&s.forest, e),
                            v.describe(t, y),
                            v.describe(t, z)
                        )
                    });
                }
                _ => {}
            },
            Err(EnvelopeError::MissingProduct(_)) => {
                table.missing_products += 1;
                bad[c] = true;
            }
            Err(err) => return Err(err),
        }
    }
    table.ill_defined = bad.iter().filter(|&&b| b).count();
    table.values = seen.into_iter().zip(&bad).map(|(y, &b)| if b { None } else { y }).collect();
    Ok(table)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TriangleSummary {
    pub checked: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

impl TriangleSummary {
    fn fail(&mut self, w: impl FnOnce() -> String) {
        self.failures += 1;
        if self.witness.is_none() {
            self.witness = Some(w());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub fixture: String,
    pub window: Window,
    pub config: SliceConfig,
    pub forests: usize,
    /// `V -> Env(V) -> V` is the identity.
    pub unit_counit: TriangleSummary,
    /// `Env(X) -> Env(Env(X)) -> Env(X)` is the identity.
    pub flatten: TriangleSummary,
    pub counit_ill_defined: usize,
    pub missing_products: usize,
}

impl TriangleReport {
    pub fn passed(&self) -> bool {
        self.unit_counit.failures == 0 && self.flatten.failures == 0
    }
}

/// Both triangle identities, elementwise on every forest of the window.
///
/// The second one reads `Env(η)` followed by the counit of `Env(X)`, which
/// flattens a class of a class: `[(R ⤳ T), η_R(x)]` must come back to
/// `[(R' ⤳ R ⤳ T), x']` for every representative `(R' ⤳ R, x')` of
/// `η_R(x)`.
pub fn check_triangles(v: &Nerve, window: Window, config: SliceConfig) -> Result<TriangleReport, EnvelopeError> {
    let inner = Envelope::new(v, Window::new(window.max_height, config.cap), config);
    let mut report = TriangleReport {
        fixture: v.name(),
        window,
        config,
        forests: 0,
        unit_counit: TriangleSummary::default(),
        flatten: TriangleSummary::default(),
        counit_ill_defined: 0,
        missing_products: 0,
    };
    for t in window.forests() {
        if t.sizes().iter().any(|&s| s > config.cap) {
            continue;
        }
        report.forests += 1;
        let colim = inner.colimit(&t)?;
        let unit = unit_on(v, &colim, &t)?;
        let eps = counit_on(v, &colim, &t)?;
        report.counit_ill_defined += eps.ill_defined;
        report.missing_products += eps.missing_products;
        for e in 0..unit.src_size() {
            report.unit_counit.checked += 1;
            let c = unit.apply(e);
            if eps.values[c] != Some(e) {
                report.unit_counit.fail(|| {
                    format!(
                        "{} on {t:?} returns {:?}{}",
                        v.describe(&t, e),
                        eps.values[c].map(|y| v.describe(&t, y)),
                        eps.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default()
                    )
                });
            }
        }
        for (obj, e) in colim.elements() {
            let s = &colim.slice().objects()[obj];
            let here = colim.class_of(obj, e);
            let below = inner.colimit(&s.forest)?;
            let xi = below.class_at(v, &SliceObject::identity(&s.forest), e)?;
            for (obj2, e2) in below.elements().filter(|&(o, x)| below.class_of(o, x) == xi) {
                report.flatten.checked += 1;
                let r2 = below.slice().objects()[obj2].push_along(&s.over);
                let back = colim.class_at(v, &r2, e2)?;
                if back != here {
                    report.flatten.fail(|| {
                        format!(
                            "{} over {:?} flattens through {:?} to class {back}, not {here}",
                            v.describe(&s.forest, e),
                            t,
                            r2.forest
                        )
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::SliceMode;
    use crate::operad;

    #[test]
    fn free_monoid_tensor_multiplies_words() {
        let o = operad::free_monoid(3, 3, 3);
        let c = |w: &str| o.colours().iter().position(|x| x == w).unwrap();
        assert_eq!(tensor_colours(&o, &[c("ab"), c("c")]).unwrap(), c("abc"));
        assert_eq!(tensor_colours(&o, &[c("b")]).unwrap(), c("b"));
        assert!(matches!(tensor_colours(&o, &[c("ab"), c("bc")]), Err(EnvelopeError::MissingProduct(_))));
    }

    #[test]
    fn counit_regroups_then_multiplies() {
        // (ab)(c) over a single edge
        let o = operad::free_monoid(3, 3, 3);
        let v = Nerve::new(o, Window::new(0, 3)).unwrap();
        let c = |w: &str| v.operad().colours().iter().position(|x| x == w).unwrap();
        let t = Forest::eta();
        let s = SliceObject::new(Forest::edge_forest(2), vec![FinSetMap::to_point(2)], &t).unwrap();
        let l = Labelling { colours: vec![vec![c("ab"), c("c")]], ops: vec![] };
        let e = v.index_of(&s.forest, &l).unwrap();
        let y = counit_element(&v, &t, &s, e).unwrap();
        assert_eq!(v.element(&t, y).unwrap().colours, vec![vec![c("abc")]]);
    }

    #[test]
    fn com_triangles_hold() {
        let v = Nerve::new(operad::com(2), Window::new(1, 2)).unwrap();
        let report = check_triangles(&v, Window::new(1, 2), SliceConfig::new(2, SliceMode::Plus, true)).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.unit_counit.checked > 0 && report.flatten.checked > 0);
    }

    #[test]
    fn iso_mode_triangles_for_the_free_monoid() {
        let v = Nerve::new(operad::free_monoid(2, 2, 2), Window::new(1, 2)).unwrap();
        let report = check_triangles(&v, Window::new(1, 2), SliceConfig::new(2, SliceMode::Iso, true)).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn plus_mode_counit_is_ill_defined_for_the_free_monoid() {
        let v = Nerve::new(operad::free_monoid(2, 2, 2), Window::new(0, 2)).unwrap();
        let table = counit(&v, &Forest::eta(), SliceConfig::new(2, SliceMode::Plus, true)).unwrap();
        assert!(table.ill_defined > 0);
        assert!(table.witness.is_some());
    }

    #[test]
    fn unit_of_the_terminal_presheaf() {
        let x = crate::segal::Terminal::new(Window::new(1, 2));
        let u = unit_map(&x, &Forest::corolla(2), SliceConfig::new(2, SliceMode::Plus, true)).unwrap();
        assert_eq!(u.src_size(), 1);
    }
}
