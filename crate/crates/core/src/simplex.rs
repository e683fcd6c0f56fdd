//! Monotone maps `[n] -> [m]` and the pattern `Δ^op`.
//!
//! A [`SimplexMap`] always stores the map on the `Δ` side; the `op` tag
//! only records whether it is meant as an arrow of `Δ^op`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gamma::{rho, PointedMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("table is empty")]
    Empty,
    #[error("table is not monotone at position {0}")]
    NotMonotone(usize),
    #[error("entry {index} = {value} exceeds [{tgt}]")]
    OutOfRange { index: usize, value: usize, tgt: usize },
    #[error("maps are not composable: [{0}] vs [{1}]")]
    NotComposable(usize, usize),
    #[error("source length {declared} does not match table of length {len}")]
    BadLength { declared: usize, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSimplexMap")]
pub struct SimplexMap {
    src: usize,
    tgt: usize,
    table: Vec<usize>,
    #[serde(default)]
    op: bool,
}

#[derive(Deserialize)]
struct RawSimplexMap {
    src: usize,
    tgt: usize,
    table: Vec<usize>,
    #[serde(default)]
    op: bool,
}

impl TryFrom<RawSimplexMap> for SimplexMap {
    type Error = SimplexError;

    fn try_from(raw: RawSimplexMap) -> Result<Self, SimplexError> {
        let mut map = SimplexMap::new(raw.tgt, raw.table)?;
        if map.src != raw.src {
            return Err(SimplexError::BadLength { declared: raw.src, len: map.src + 1 });
        }
        map.op = raw.op;
        Ok(map)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaClass {
    pub inert: bool,
    pub active: bool,
}

impl SimplexMap {
    pub fn new(tgt: usize, table: Vec<usize>) -> Result<Self, SimplexError> {
        if table.is_empty() {
            return Err(SimplexError::Empty);
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v > tgt) {
            return Err(SimplexError::OutOfRange { index, value, tgt });
        }
        if let Some(i) = (1..table.len()).find(|&i| table[i] < table[i - 1]) {
            return Err(SimplexError::NotMonotone(i));
        }
        Ok(Self { src: table.len() - 1, tgt, table, op: false })
    }

    pub fn identity(n: usize) -> Self {
        Self { src: n, tgt: n, table: (0..=n).collect(), op: false }
    }

    /// Inclusion of the interval `{start, …, start + len}` into `[tgt]`.
    pub fn interval(len: usize, start: usize, tgt: usize) -> Result<Self, SimplexError> {
        Self::new(tgt, (start..=start + len).collect())
    }

    /// The same underlying map, tagged as an arrow of `Δ^op`.
    pub fn opposite(&self) -> Self {
        Self { op: !self.op, ..self.clone() }
    }

    pub fn is_op(&self) -> bool {
        self.op
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

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// `other ∘ self` as maps in `Δ`.
    pub fn then(&self, other: &SimplexMap) -> Result<SimplexMap, SimplexError> {
        if self.tgt != other.src {
            return Err(SimplexError::NotComposable(self.tgt, other.src));
        }
        Ok(SimplexMap {
            src: self.src,
            tgt: other.tgt,
            table: self.table.iter().map(|&i| other.table[i]).collect(),
            op: self.op,
        })
    }

    pub fn classify(&self) -> DeltaClass {
        DeltaClass {
            active: self.table[0] == 0 && self.table[self.src] == self.tgt,
            inert: self.table.windows(2).all(|w| w[1] == w[0] + 1),
        }
    }

    /// `self = inert ∘ active`: the active part renormalises the range onto
    /// `[φ(n) - φ(0)]`, the inert part includes that interval back.
    pub fn factorize(&self) -> (SimplexMap, SimplexMap) {
        let lo = self.table[0];
        let k = self.table[self.src] - lo;
        let active =
            SimplexMap { src: self.src, tgt: k, table: self.table.iter().map(|&x| x - lo).collect(), op: self.op };
        let inert = SimplexMap { src: k, tgt: self.tgt, table: (lo..=lo + k).collect(), op: self.op };
        (active, inert)
    }

    /// `f(s + 1) <= f(s) + 1` for every `s`.
    pub fn is_cellular(&self) -> bool {
        self.table.windows(2).all(|w| w[1] <= w[0] + 1)
    }

    /// The pointed map `⟨m⟩ -> ⟨n⟩` underlying this map read as an arrow
    /// `[m] -> [n]` of `Δ^op`: `i ↦ j` when `φ(j-1) < i <= φ(j)`.
    pub fn underlying_gamma(&self) -> PointedMap {
        let mut table = vec![0; self.tgt + 1];
        for j in 1..=self.src {
            for i in self.table[j - 1] + 1..=self.table[j] {
                table[i] = j;
            }
        }
        PointedMap::new(self.src, table).expect("underlying table is pointed and in range")
    }

    /// All monotone maps `[n] -> [m]` in lexicographic order.
    pub fn all(n: usize, m: usize) -> Vec<SimplexMap> {
        let mut out = Vec::new();
        let mut table = Vec::with_capacity(n + 1);
        fn rec(n: usize, m: usize, lo: usize, table: &mut Vec<usize>, out: &mut Vec<SimplexMap>) {
            if table.len() == n + 1 {
                out.push(SimplexMap { src: n, tgt: m, table: table.clone(), op: false });
                return;
            }
            for v in lo..=m {
                table.push(v);
                rec(n, m, v, table, out);
                table.pop();
            }
        }
        rec(n, m, 0, &mut table, &mut out);
        out
    }
}

/// Inert arrows `[n] -> [1]` of `Δ^op` (interval inclusions `[1] -> [n]`
/// in `Δ`) together with their images under the underlying functor. The
/// pattern is enrichable at `[n]` exactly when these are `n` arrows whose
/// images are the `ρ_i`.
pub fn elementary_coslice(n: usize) -> Vec<(SimplexMap, PointedMap)> {
    SimplexMap::all(1, n)
        .into_iter()
        .filter(|phi| phi.classify().inert)
        .map(|phi| {
            let g = phi.underlying_gamma();
            (phi.opposite(), g)
        })
        .collect()
}

pub fn check_enrichable(n: usize) -> bool {
    let coslice = elementary_coslice(n);
    let mut images: Vec<PointedMap> = coslice.into_iter().map(|(_, g)| g).collect();
    images.sort();
    let mut expected: Vec<PointedMap> = (1..=n).map(|i| rho(n, i).expect("i in range")).collect();
    expected.sort();
    images == expected
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(tgt: usize, t: &[usize]) -> SimplexMap {
        SimplexMap::new(tgt, t.to_vec()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(sm(2, &[0, 1]).classify(), DeltaClass { inert: true, active: false });
        assert_eq!(sm(2, &[0, 2]).classify(), DeltaClass { inert: false, active: true });
        assert_eq!(SimplexMap::identity(3).classify(), DeltaClass { inert: true, active: true });
    }

    #[test]
    fn rejects_non_monotone() {
        assert_eq!(SimplexMap::new(2, vec![1, 0]), Err(SimplexError::NotMonotone(1)));
    }

    #[test]
    fn factorize_examples() {
        let inert = sm(3, &[1, 2]);
        assert_eq!(inert.factorize(), (SimplexMap::identity(1), inert.clone()));
        let active = sm(2, &[0, 0, 2]);
        assert_eq!(active.factorize(), (active.clone(), SimplexMap::identity(2)));
        let (a, i) = sm(3, &[1, 2]).factorize();
        assert_eq!(a, SimplexMap::identity(1));
        assert_eq!(i, sm(3, &[1, 2]));
        assert_eq!(a.then(&i).unwrap(), sm(3, &[1, 2]));
        let phi = sm(4, &[1, 1, 3]);
        let (a, i) = phi.factorize();
        assert!(a.classify().active && i.classify().inert);
        assert_eq!(a.then(&i).unwrap(), phi);
    }

    #[test]
    fn underlying_gamma_examples() {
        assert_eq!(sm(2, &[0, 2]).underlying_gamma().table(), &[0, 1, 1]);
        assert_eq!(SimplexMap::identity(3).underlying_gamma(), PointedMap::identity(3));
        let g = sm(2, &[1]).underlying_gamma();
        assert_eq!((g.src(), g.tgt(), g.table()), (2, 0, &[0, 0, 0][..]));
    }

    #[test]
    fn json_carries_direction() {
        let phi = sm(2, &[0, 2]).opposite();
        let s = serde_json::to_string(&phi).unwrap();
        assert_eq!(s, r#"{"src":1,"tgt":2,"table":[0,2],"op":true}"#);
        assert_eq!(serde_json::from_str::<SimplexMap>(&s).unwrap(), phi);
        assert!(serde_json::from_str::<SimplexMap>(r#"{"src":1,"tgt":2,"table":[2,0]}"#).is_err());
    }

    #[test]
    fn enrichable_small() {
        for n in 0..=5 {
            assert_eq!(elementary_coslice(n).len(), n);
            assert!(check_enrichable(n));
        }
    }

    #[test]
    fn monotone_counts() {
        // binomial(n + m + 1, n + 1)
        assert_eq!(SimplexMap::all(1, 2).len(), 6);
        assert_eq!(SimplexMap::all(2, 2).len(), 10);
        assert_eq!(SimplexMap::all(0, 3).len(), 4);
    }
}
