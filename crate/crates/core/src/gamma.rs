//! Pointed finite sets `⟨n⟩ = {0, 1, …, n}` with basepoint `0`.
//!
//! Arrows of the pattern are taken to be pointed maps themselves; there is
//! no separate opposite category to keep track of. An arrow is *inert* when
//! every non-basepoint target has exactly one preimage, *active* when only
//! the basepoint goes to the basepoint, and *semi-inert* when every
//! non-basepoint target has at most one preimage.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::FinSetMap;

/// Largest `⟨n⟩` the enumerators will visit.
pub const MAX_ENUMERATION_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("table has length {len}, expected {expected}")]
    BadLength { len: usize, expected: usize },
    #[error("basepoint is sent to {0}, not to 0")]
    BasepointMoved(usize),
    #[error("entry {index} = {value} exceeds target ⟨{tgt}⟩")]
    OutOfRange { index: usize, value: usize, tgt: usize },
    #[error("index {i} is not in 1..={n}")]
    IndexOutOfRange { n: usize, i: usize },
    #[error("enumeration bound exceeded: ⟨{n}⟩ -> ⟨{m}⟩ with bound {bound}")]
    BoundExceeded { n: usize, m: usize, bound: usize },
    #[error("maps are not composable: ⟨{0}⟩ vs ⟨{1}⟩")]
    NotComposable(usize, usize),
    #[error("map is not active")]
    NotActive,
}

/// Which objects count as elementary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Elementaries {
    /// Only `⟨1⟩`.
    Flat,
    /// `⟨0⟩` and `⟨1⟩`.
    Natural,
}

impl Elementaries {
    pub fn contains(self, n: usize) -> bool {
        match self {
            Elementaries::Flat => n == 1,
            Elementaries::Natural => n <= 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPointedMap")]
pub struct PointedMap {
    src: usize,
    tgt: usize,
    table: Vec<usize>,
}

#[derive(Deserialize)]
struct RawPointedMap {
    src: usize,
    tgt: usize,
    table: Vec<usize>,
}

impl TryFrom<RawPointedMap> for PointedMap {
    type Error = GammaError;

    fn try_from(raw: RawPointedMap) -> Result<Self, GammaError> {
        let map = PointedMap::new(raw.tgt, raw.table)?;
        if map.src != raw.src {
            return Err(GammaError::BadLength { len: raw.src + 1, expected: map.src + 1 });
        }
        Ok(map)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaClass {
    pub inert: bool,
    pub active: bool,
    pub semi_inert: bool,
}

impl PointedMap {
    /// `table` lists the images of `0..=src`; `table[0]` must be `0`.
    pub fn new(tgt: usize, table: Vec<usize>) -> Result<Self, GammaError> {
        if table.is_empty() {
            return Err(GammaError::BadLength { len: 0, expected: 1 });
        }
        if table[0] != 0 {
            return Err(GammaError::BasepointMoved(table[0]));
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v > tgt) {
            return Err(GammaError::OutOfRange { index, value, tgt });
        }
        Ok(Self { src: table.len() - 1, tgt, table })
    }

    pub fn identity(n: usize) -> Self {
        Self { src: n, tgt: n, table: (0..=n).collect() }
    }

    /// The active map whose non-basepoint part is `f` (shifted by one).
    pub fn from_function(f: &FinSetMap) -> Self {
        let mut table = Vec::with_capacity(f.src_size() + 1);
        table.push(0);
        table.extend(f.table().iter().map(|&y| y + 1));
        Self { src: f.src_size(), tgt: f.tgt_size(), table }
    }

    /// Non-basepoint part of an active map.
    pub fn to_function(&self) -> Result<FinSetMap, GammaError> {
        if !self.classify().active {
            return Err(GammaError::NotActive);
        }
        Ok(FinSetMap::new(self.tgt, self.table[1..].iter().map(|&y| y - 1).collect())
            .expect("active table is in range"))
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PointedMap) -> Result<PointedMap, GammaError> {
        if self.tgt != other.src {
            return Err(GammaError::NotComposable(self.tgt, other.src));
        }
        Ok(PointedMap { src: self.src, tgt: other.tgt, table: self.table.iter().map(|&x| other.table[x]).collect() })
    }

    fn preimage_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.tgt + 1];
        for &y in &self.table[1..] {
            counts[y] += 1;
        }
        counts
    }

    pub fn classify(&self) -> GammaClass {
        let counts = self.preimage_counts();
        GammaClass {
            inert: counts[1..].iter().all(|&c| c == 1),
            active: counts[0] == 0,
            semi_inert: counts[1..].iter().all(|&c| c <= 1),
        }
    }

    /// Splits `self = active ∘ inert`. The inert part collapses the kernel
    /// and keeps the surviving elements in their original order.
    pub fn factorize(&self) -> (PointedMap, PointedMap) {
        let mut inert = vec![0; self.src + 1];
        let mut active = vec![0];
        for x in 1..=self.src {
            if self.table[x] != 0 {
                active.push(self.table[x]);
                inert[x] = active.len() - 1;
            }
        }
        let k = active.len() - 1;
        (PointedMap { src: self.src, tgt: k, table: inert }, PointedMap { src: k, tgt: self.tgt, table: active })
    }
}

/// `ρ_i : ⟨n⟩ -> ⟨1⟩`, sending `i` to `1` and everything else to the basepoint.
pub fn rho(n: usize, i: usize) -> Result<PointedMap, GammaError> {
    if i == 0 || i > n {
        return Err(GammaError::IndexOutOfRange { n, i });
    }
    let table = (0..=n).map(|x| usize::from(x == i)).collect();
    Ok(PointedMap { src: n, tgt: 1, table })
}

/// `λ_i : ⟨1⟩ -> ⟨n⟩`, sending `1` to `i`.
pub fn lambda(n: usize, i: usize) -> Result<PointedMap, GammaError> {
    if i == 0 || i > n {
        return Err(GammaError::IndexOutOfRange { n, i });
    }
    Ok(PointedMap { src: 1, tgt: n, table: vec![0, i] })
}

/// All pointed maps `⟨n⟩ -> ⟨m⟩` whose class satisfies `filter`, in
/// lexicographic order of their tables.
pub fn enumerate_gamma_maps(
    n: usize,
    m: usize,
    filter: impl Fn(&GammaClass) -> bool,
) -> Result<Vec<PointedMap>, GammaError> {
    if n > MAX_ENUMERATION_SIZE || m > MAX_ENUMERATION_SIZE {
        return Err(GammaError::BoundExceeded { n, m, bound: MAX_ENUMERATION_SIZE });
    }
    Ok(FinSetMap::all(n, m + 1)
        .into_iter()
        .map(|f| {
            let mut table = vec![0];
            table.extend_from_slice(f.table());
            PointedMap { src: n, tgt: m, table }
        })
        .filter(|p| filter(&p.classify()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(tgt: usize, t: &[usize]) -> PointedMap {
        PointedMap::new(tgt, t.to_vec()).unwrap()
    }

    #[test]
    fn classify_examples() {
        let r = rho(2, 2).unwrap();
        assert_eq!(r.table(), &[0, 0, 1]);
        assert_eq!(r.classify(), GammaClass { inert: true, active: false, semi_inert: true });
        assert_eq!(PointedMap::identity(3).classify(), GammaClass { inert: true, active: true, semi_inert: true });
        let fold = pm(1, &[0, 1, 1]);
        assert_eq!(fold.classify(), GammaClass { inert: false, active: true, semi_inert: false });
    }

    #[test]
    fn basepoint_must_be_fixed() {
        assert_eq!(PointedMap::new(1, vec![1, 0]), Err(GammaError::BasepointMoved(1)));
        assert!(serde_json::from_str::<PointedMap>(r#"{"src":1,"tgt":1,"table":[1,1]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = pm(2, &[0, 2, 0, 1]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"src":3,"tgt":2,"table":[0,2,0,1]}"#);
        assert_eq!(serde_json::from_str::<PointedMap>(&s).unwrap(), f);
    }

    #[test]
    fn factorize_examples() {
        let active = pm(2, &[0, 2, 1, 2]);
        let (i, a) = active.factorize();
        assert_eq!(i, PointedMap::identity(3));
        assert_eq!(a, active);

        let inert = rho(3, 2).unwrap();
        let (i, a) = inert.factorize();
        assert_eq!(i, inert);
        assert_eq!(a, PointedMap::identity(1));

        let f = pm(1, &[0, 1, 1, 0]);
        let (i, a) = f.factorize();
        assert_eq!(i, pm(2, &[0, 1, 2, 0]));
        assert_eq!(a, pm(1, &[0, 1, 1]));
        assert_eq!(i.then(&a).unwrap(), f);
    }

    #[test]
    fn rho_and_lambda() {
        assert_eq!(rho(1, 1).unwrap(), PointedMap::identity(1));
        assert_eq!(rho(3, 2).unwrap().table(), &[0, 0, 1, 0]);
        assert_eq!(lambda(1, 1).unwrap(), PointedMap::identity(1));
        let l = lambda(2, 2).unwrap();
        assert_eq!(l.classify(), GammaClass { inert: false, active: true, semi_inert: true });
        assert_eq!(rho(2, 3), Err(GammaError::IndexOutOfRange { n: 2, i: 3 }));
        assert_eq!(lambda(0, 1), Err(GammaError::IndexOutOfRange { n: 0, i: 1 }));
        for n in 1..=5 {
            for i in 1..=n {
                let c = lambda(n, i).unwrap().then(&rho(n, i).unwrap()).unwrap();
                assert_eq!(c, PointedMap::identity(1));
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let inert = enumerate_gamma_maps(2, 1, |c| c.inert).unwrap();
        assert_eq!(inert, vec![rho(2, 2).unwrap(), rho(2, 1).unwrap()]);
        for m in 0..4 {
            assert_eq!(enumerate_gamma_maps(0, m, |_| true).unwrap().len(), 1);
        }
        assert_eq!(enumerate_gamma_maps(2, 2, |c| c.active).unwrap().len(), 4);
        assert!(matches!(enumerate_gamma_maps(9, 1, |_| true), Err(GammaError::BoundExceeded { .. })));
        // brute-force count of inert maps ⟨4⟩ -> ⟨1⟩ over all 5^4 tables
        let all = enumerate_gamma_maps(4, 1, |_| true).unwrap();
        assert_eq!(all.len(), 16);
        let brute = FinSetMap::all(4, 5)
            .into_iter()
            .filter(|f| f.table().iter().all(|&y| y <= 1) && f.table().iter().filter(|&&y| y == 1).count() == 1)
            .count();
        assert_eq!(brute, 4);
        let rhos: std::collections::HashSet<_> = (1..=4).map(|i| rho(4, i).unwrap()).collect();
        assert_eq!(rhos.len(), brute);
    }

    #[test]
    fn function_round_trip() {
        let f = FinSetMap::new(2, vec![1, 0, 1]).unwrap();
        let p = PointedMap::from_function(&f);
        assert_eq!(p.table(), &[0, 2, 1, 2]);
        assert_eq!(p.to_function().unwrap(), f);
        assert_eq!(rho(2, 1).unwrap().to_function(), Err(GammaError::NotActive));
    }
}
