//! One-particle indices, canonical basis tuples and the symmetry-constrained
//! index sets `K_G(nu, D)` together with the torus slices `E(nu, D)`.
//!
//! A basis tuple is a multiset of one-particle indices. It is stored sorted
//! under the derived total order of [`OneParticleIndex`], which compares the
//! components `(n, l, m, f)` lexicographically (absent components omitted).
//! Tuples themselves are ordered first by length and then lexicographically;
//! that is the order in which decompositions are scanned.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Symmetry group governing the invariance constraints and degree formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// Torus / plain angles, indices `m`.
    T,
    /// Planar rotations with a radial basis, indices `(n, m)`.
    SO2,
    /// Rotations and inversion in 3D, indices `(n, l, m)`.
    O3,
    /// O(3) with one extra invariant scalar feature, indices `(n, l, m, f)`.
    O3F,
}

impl Group {
    pub const ALL: [Group; 4] = [Group::T, Group::SO2, Group::O3, Group::O3F];

    /// Number of integer components per one-particle index.
    pub fn arity(self) -> usize {
        match self {
            Group::T => 1,
            Group::SO2 => 2,
            Group::O3 => 3,
            Group::O3F => 4,
        }
    }

    fn checks_parity(self) -> bool {
        matches!(self, Group::O3 | Group::O3F)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::T => "T",
            Group::SO2 => "SO2",
            Group::O3 => "O3",
            Group::O3F => "O3F",
        })
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(Group::T),
            "SO2" => Ok(Group::SO2),
            "O3" => Ok(Group::O3),
            "O3F" => Ok(Group::O3F),
            other => Err(Error::InvalidArgument(format!(
                "unknown group {other:?} (expected T, SO2, O3 or O3F)"
            ))),
        }
    }
}

/// Label of a single one-particle basis function.
///
/// Variant order and field order define the total order used for canonical
/// tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OneParticleIndex {
    T { m: i32 },
    SO2 { n: u32, m: i32 },
    O3 { n: u32, l: u32, m: i32 },
    O3F { n: u32, l: u32, m: i32, f: u32 },
}

impl OneParticleIndex {
    pub fn group(&self) -> Group {
        match self {
            OneParticleIndex::T { .. } => Group::T,
            OneParticleIndex::SO2 { .. } => Group::SO2,
            OneParticleIndex::O3 { .. } => Group::O3,
            OneParticleIndex::O3F { .. } => Group::O3F,
        }
    }

    pub fn m(&self) -> i32 {
        match *self {
            OneParticleIndex::T { m }
            | OneParticleIndex::SO2 { m, .. }
            | OneParticleIndex::O3 { m, .. }
            | OneParticleIndex::O3F { m, .. } => m,
        }
    }

    /// Angular degree `l`; zero for the planar groups.
    pub fn l(&self) -> u32 {
        match *self {
            OneParticleIndex::O3 { l, .. } | OneParticleIndex::O3F { l, .. } => l,
            _ => 0,
        }
    }

    /// Polynomial degree of the one-particle function.
    pub fn degree(&self) -> u32 {
        match *self {
            OneParticleIndex::T { m } => m.unsigned_abs(),
            OneParticleIndex::SO2 { n, m } => n + m.unsigned_abs(),
            OneParticleIndex::O3 { n, l, .. } => n + l,
            OneParticleIndex::O3F { n, l, f, .. } => n + l + f,
        }
    }

    /// The element with `m` negated.
    pub fn conjugate(&self) -> Self {
        let mut out = *self;
        match &mut out {
            OneParticleIndex::T { m }
            | OneParticleIndex::SO2 { m, .. }
            | OneParticleIndex::O3 { m, .. }
            | OneParticleIndex::O3F { m, .. } => *m = -*m,
        }
        out
    }

    /// Components in file order: `m`, `n,m`, `n,l,m` or `n,l,m,f`.
    pub fn components(&self) -> Vec<i64> {
        match *self {
            OneParticleIndex::T { m } => vec![m as i64],
            OneParticleIndex::SO2 { n, m } => vec![n as i64, m as i64],
            OneParticleIndex::O3 { n, l, m } => vec![n as i64, l as i64, m as i64],
            OneParticleIndex::O3F { n, l, m, f } => {
                vec![n as i64, l as i64, m as i64, f as i64]
            }
        }
    }

    /// Builds an index from its components, validating signs and `|m| <= l`.
    pub fn from_components(group: Group, c: &[i64]) -> Result<Self> {
        if c.len() != group.arity() {
            return Err(Error::InvalidArgument(format!(
                "{group} index needs {} components, got {}",
                group.arity(),
                c.len()
            )));
        }
        let unsigned = |x: i64, name: &str| -> Result<u32> {
            u32::try_from(x)
                .map_err(|_| Error::InvalidArgument(format!("{name} must be non-negative, got {x}")))
        };
        let signed = |x: i64| -> Result<i32> {
            i32::try_from(x).map_err(|_| Error::InvalidArgument(format!("m out of range: {x}")))
        };
        let idx = match group {
            Group::T => OneParticleIndex::T { m: signed(c[0])? },
            Group::SO2 => OneParticleIndex::SO2 { n: unsigned(c[0], "n")?, m: signed(c[1])? },
            Group::O3 => OneParticleIndex::O3 {
                n: unsigned(c[0], "n")?,
                l: unsigned(c[1], "l")?,
                m: signed(c[2])?,
            },
            Group::O3F => OneParticleIndex::O3F {
                n: unsigned(c[0], "n")?,
                l: unsigned(c[1], "l")?,
                m: signed(c[2])?,
                f: unsigned(c[3], "f")?,
            },
        };
        if group.checks_parity() && idx.m().unsigned_abs() > idx.l() {
            return Err(Error::InvalidArgument(format!("|m| > l in {idx}")));
        }
        Ok(idx)
    }
}

impl fmt::Display for OneParticleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OneParticleIndex::T { m } => write!(f, "{m}"),
            OneParticleIndex::SO2 { n, m } => write!(f, "({n},{m})"),
            OneParticleIndex::O3 { n, l, m } => write!(f, "({n},{l},{m})"),
            OneParticleIndex::O3F { n, l, m, f: ff } => write!(f, "({n},{l},{m},{ff})"),
        }
    }
}

/// Canonical multiset of one-particle indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BasisTuple(Vec<OneParticleIndex>);

impl BasisTuple {
    /// Sorts the elements into canonical order.
    pub fn new(mut elements: Vec<OneParticleIndex>) -> Self {
        elements.sort_unstable();
        BasisTuple(elements)
    }

    pub fn single(index: OneParticleIndex) -> Self {
        BasisTuple(vec![index])
    }

    /// Convenience constructor for torus tuples.
    pub fn torus(ms: &[i32]) -> Self {
        Self::new(ms.iter().map(|&m| OneParticleIndex::T { m }).collect())
    }

    /// Correlation order.
    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn elements(&self) -> &[OneParticleIndex] {
        &self.0
    }

    pub fn into_elements(self) -> Vec<OneParticleIndex> {
        self.0
    }

    /// Multiset union of two tuples.
    pub fn union(&self, other: &BasisTuple) -> BasisTuple {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        BasisTuple::new(v)
    }

    /// The tuple with every `m` negated.
    pub fn conjugate(&self) -> BasisTuple {
        BasisTuple::new(self.0.iter().map(|e| e.conjugate()).collect())
    }

    pub fn m_sum(&self) -> i64 {
        self.0.iter().map(|e| e.m() as i64).sum()
    }

    pub fn l_sum(&self) -> u64 {
        self.0.iter().map(|e| e.l() as u64).sum()
    }

    /// Flat comma-separated components, as used by the graph file format.
    pub fn to_flat_string(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.0.iter().flat_map(|e| e.components()).enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&c.to_string());
        }
        out
    }

    /// Parses the flat comma-separated form for the given group.
    pub fn parse_flat(group: Group, s: &str) -> Result<Self> {
        let comps = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad tuple component {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if comps.len() % group.arity() != 0 {
            return Err(Error::InvalidArgument(format!(
                "{} components is not a multiple of {}",
                comps.len(),
                group.arity()
            )));
        }
        let elements = comps
            .chunks(group.arity())
            .map(|c| OneParticleIndex::from_components(group, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(BasisTuple::new(elements))
    }
}

impl Ord for BasisTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BasisTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

/// Which p-norm of the per-element degrees bounds the index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Norm {
    L1,
    L2,
    Max,
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::L1 => "1",
            Norm::L2 => "2",
            Norm::Max => "inf",
        })
    }
}

impl FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Norm::L1),
            "2" => Ok(Norm::L2),
            "inf" => Ok(Norm::Max),
            other => Err(Error::InvalidArgument(format!(
                "unknown p {other:?} (expected 1, 2 or inf)"
            ))),
        }
    }
}

impl Norm {
    /// Exact monotone surrogate of the norm: the sum for p=1, the sum of
    /// squares for p=2 and the maximum for p=inf.
    pub fn key<I: IntoIterator<Item = u32>>(self, degrees: I) -> u64 {
        let it = degrees.into_iter().map(u64::from);
        match self {
            Norm::L1 => it.sum(),
            Norm::L2 => it.map(|d| d * d).sum(),
            Norm::Max => it.max().unwrap_or(0),
        }
    }

    fn combine(self, acc: u64, degree: u32) -> u64 {
        let d = u64::from(degree);
        match self {
            Norm::L1 => acc + d,
            Norm::L2 => acc + d * d,
            Norm::Max => acc.max(d),
        }
    }

    fn cap(self, max_degree: u32) -> u64 {
        let d = u64::from(max_degree);
        match self {
            Norm::L2 => d * d,
            _ => d,
        }
    }
}

/// Degree notion `||k||_p <= D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegreeSpec {
    pub norm: Norm,
    pub max_degree: u32,
}

impl DegreeSpec {
    pub fn new(norm: Norm, max_degree: u32) -> Self {
        DegreeSpec { norm, max_degree }
    }

    pub fn total(max_degree: u32) -> Self {
        Self::new(Norm::L1, max_degree)
    }

    /// `D` mapped into the space of [`Norm::key`].
    pub fn cap(&self) -> u64 {
        self.norm.cap(self.max_degree)
    }

    pub fn admits(&self, tuple: &BasisTuple) -> bool {
        degree_key(tuple, self.norm) <= self.cap()
    }
}

/// `||k||_p` of the per-element degrees. Exact for p=1 and p=inf.
pub fn degree(tuple: &BasisTuple, norm: Norm) -> f64 {
    let key = degree_key(tuple, norm);
    match norm {
        Norm::L2 => (key as f64).sqrt(),
        _ => key as f64,
    }
}

/// Exact integer surrogate of [`degree`]; see [`Norm::key`].
pub fn degree_key(tuple: &BasisTuple, norm: Norm) -> u64 {
    norm.key(tuple.elements().iter().map(|e| e.degree()))
}

/// `sum m = 0`, plus `sum l` even for the O(3) groups.
pub fn satisfies_constraints(tuple: &BasisTuple, group: Group) -> bool {
    tuple.m_sum() == 0 && (!group.checks_parity() || tuple.l_sum() % 2 == 0)
}

/// All one-particle indices of element degree `<= max_degree`, ascending.
pub fn one_particle_indices(group: Group, max_degree: u32) -> Vec<OneParticleIndex> {
    let d = max_degree as i64;
    let mut out = Vec::new();
    match group {
        Group::T => {
            for m in -d..=d {
                out.push(OneParticleIndex::T { m: m as i32 });
            }
        }
        Group::SO2 => {
            for n in 0..=d {
                let r = d - n;
                for m in -r..=r {
                    out.push(OneParticleIndex::SO2 { n: n as u32, m: m as i32 });
                }
            }
        }
        Group::O3 => {
            for n in 0..=d {
                for l in 0..=(d - n) {
                    for m in -l..=l {
                        out.push(OneParticleIndex::O3 { n: n as u32, l: l as u32, m: m as i32 });
                    }
                }
            }
        }
        Group::O3F => {
            for n in 0..=d {
                for l in 0..=(d - n) {
                    for m in -l..=l {
                        for f in 0..=(d - n - l) {
                            out.push(OneParticleIndex::O3F {
                                n: n as u32,
                                l: l as u32,
                                m: m as i32,
                                f: f as u32,
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Recursive canonical-order generator with degree-budget pruning.
struct Enumerator {
    norm: Norm,
    cap: u64,
    max_degree: u32,
    parity: bool,
    exact: bool,
    nu: usize,
    indices: Vec<OneParticleIndex>,
    degrees: Vec<u32>,
    by_m: HashMap<i64, Vec<usize>>,
}

impl Enumerator {
    fn new(
        group: Group,
        nu: usize,
        spec: DegreeSpec,
        exact: bool,
        keep: impl Fn(&OneParticleIndex) -> bool,
    ) -> Self {
        let indices: Vec<_> = one_particle_indices(group, spec.max_degree)
            .into_iter()
            .filter(keep)
            .collect();
        let degrees = indices.iter().map(|e| e.degree()).collect();
        let mut by_m: HashMap<i64, Vec<usize>> = HashMap::new();
        for (pos, e) in indices.iter().enumerate() {
            by_m.entry(e.m() as i64).or_default().push(pos);
        }
        Enumerator {
            norm: spec.norm,
            cap: spec.cap(),
            max_degree: spec.max_degree,
            parity: group.checks_parity(),
            exact,
            nu,
            indices,
            degrees,
            by_m,
        }
    }

    /// Whether `|m_sum|` can still be cancelled by `remaining` more elements.
    fn can_balance(&self, m_sum: i64, key: u64, remaining: usize) -> bool {
        let need = m_sum.unsigned_abs();
        let r = remaining as u64;
        match self.norm {
            Norm::L1 => need <= self.cap - key,
            Norm::L2 => need * need <= r * (self.cap - key),
            Norm::Max => need <= r * u64::from(self.max_degree),
        }
    }

    fn run(&self) -> Vec<BasisTuple> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(self.nu);
        self.recurse(0, 0, 0, 0, &mut stack, &mut out);
        out
    }

    fn recurse(
        &self,
        start: usize,
        key: u64,
        m_sum: i64,
        l_sum: u64,
        stack: &mut Vec<usize>,
        out: &mut Vec<BasisTuple>,
    ) {
        let depth = stack.len();
        if depth + 1 == self.nu {
            let Some(candidates) = self.by_m.get(&(-m_sum)) else {
                return;
            };
            let from = candidates.partition_point(|&p| p < start);
            for &pos in &candidates[from..] {
                let k = self.norm.combine(key, self.degrees[pos]);
                if k > self.cap || (self.exact && k != self.cap) {
                    continue;
                }
                let e = &self.indices[pos];
                if self.parity && (l_sum + u64::from(e.l())) % 2 != 0 {
                    continue;
                }
                let mut elements: Vec<_> = stack.iter().map(|&p| self.indices[p]).collect();
                elements.push(*e);
                out.push(BasisTuple(elements));
            }
            return;
        }
        let remaining = self.nu - depth - 1;
        for pos in start..self.indices.len() {
            let k = self.norm.combine(key, self.degrees[pos]);
            if k > self.cap {
                continue;
            }
            let e = &self.indices[pos];
            let ms = m_sum + e.m() as i64;
            if !self.can_balance(ms, k, remaining) {
                continue;
            }
            stack.push(pos);
            self.recurse(pos, k, ms, l_sum + u64::from(e.l()), stack, out);
            stack.pop();
        }
    }
}

/// `K_G(nu, D)`: canonical tuples of order exactly `nu` with `||k||_p <= D`
/// satisfying the group constraints, in canonical order.
pub fn enumerate_k(group: Group, nu: usize, spec: DegreeSpec) -> Result<Vec<BasisTuple>> {
    if nu == 0 {
        return Err(Error::InvalidArgument("correlation order must be at least 1".into()));
    }
    Ok(Enumerator::new(group, nu, spec, false, |_| true).run())
}

/// `E(nu, D)`: torus tuples of order `nu` with `sum m = 0`, `sum |m| = D`
/// exactly and no zero entries.
pub fn enumerate_e_slice(nu: usize, max_degree: u32) -> Vec<BasisTuple> {
    if nu == 0 {
        return Vec::new();
    }
    Enumerator::new(Group::T, nu, DegreeSpec::total(max_degree), true, |e| e.m() != 0).run()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o3(n: u32, l: u32, m: i32) -> OneParticleIndex {
        OneParticleIndex::O3 { n, l, m }
    }

    #[test]
    fn degree_examples() {
        let t = BasisTuple::torus(&[1, 1, -2]);
        assert_eq!(degree(&t, Norm::L1), 4.0);
        assert_eq!(degree(&t, Norm::Max), 2.0);
        assert!((degree(&t, Norm::L2) - 6f64.sqrt()).abs() < 1e-15);
        let k = BasisTuple::new(vec![o3(0, 2, -1), o3(1, 2, 1)]);
        assert_eq!(degree(&k, Norm::L1), 5.0);
    }

    #[test]
    fn constraint_examples() {
        assert!(satisfies_constraints(&BasisTuple::torus(&[1, 0, -1]), Group::T));
        assert!(!satisfies_constraints(&BasisTuple::torus(&[1, 1, -1]), Group::T));
        let k = BasisTuple::new(vec![o3(0, 1, 0), o3(0, 1, 0)]);
        assert!(satisfies_constraints(&k, Group::O3));
        let odd = BasisTuple::new(vec![o3(0, 1, 0), o3(0, 2, 0)]);
        assert!(!satisfies_constraints(&odd, Group::O3));
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let a = BasisTuple::torus(&[2, -1, 0, -1]);
        let b = BasisTuple::torus(&[-1, 0, 2, -1]);
        assert_eq!(a, b);
        assert_eq!(a.elements().iter().map(|e| e.m()).collect::<Vec<_>>(), vec![-1, -1, 0, 2]);
    }

    #[test]
    fn tuple_order_is_length_first() {
        assert!(BasisTuple::torus(&[5]) < BasisTuple::torus(&[-1, 1]));
        assert!(BasisTuple::torus(&[-2, 2]) < BasisTuple::torus(&[-1, 1]));
    }

    #[test]
    fn small_sets() {
        let k = enumerate_k(Group::T, 2, DegreeSpec::total(4)).unwrap();
        assert_eq!(
            k,
            vec![BasisTuple::torus(&[-2, 2]), BasisTuple::torus(&[-1, 1]), BasisTuple::torus(&[0, 0])]
        );
        let k = enumerate_k(Group::T, 3, DegreeSpec::total(1)).unwrap();
        assert_eq!(k, vec![BasisTuple::torus(&[0, 0, 0])]);
        assert!(matches!(
            enumerate_k(Group::T, 0, DegreeSpec::total(3)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn o3_single_particle_targets_follow_constraints() {
        let k = enumerate_k(Group::O3, 1, DegreeSpec::total(2)).unwrap();
        assert_eq!(k, vec![
            BasisTuple::single(o3(0, 0, 0)),
            BasisTuple::single(o3(0, 2, 0)),
            BasisTuple::single(o3(1, 0, 0)),
            BasisTuple::single(o3(2, 0, 0)),
        ]);
    }

    #[test]
    fn slices() {
        assert!(enumerate_e_slice(2, 5).is_empty());
        assert_eq!(enumerate_e_slice(2, 4), vec![BasisTuple::torus(&[-2, 2])]);
        assert!(enumerate_e_slice(0, 4).is_empty());
    }

    #[test]
    fn flat_round_trip() {
        let k = BasisTuple::new(vec![o3(0, 2, -1), o3(1, 2, 1)]);
        let s = k.to_flat_string();
        assert_eq!(s, "0,2,-1,1,2,1");
        assert_eq!(BasisTuple::parse_flat(Group::O3, &s).unwrap(), k);
        assert!(BasisTuple::parse_flat(Group::O3, "0,1,2").is_err());
        assert!(BasisTuple::parse_flat(Group::O3, "0,1").is_err());
    }

    #[test]
    fn seed_counts() {
        assert_eq!(one_particle_indices(Group::T, 2).len(), 5);
        assert_eq!(one_particle_indices(Group::O3, 1).len(), 5);
        assert_eq!(one_particle_indices(Group::SO2, 1).len(), 4);
    }
}
