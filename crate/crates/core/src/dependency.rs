//! Dependent / independent classification of basis tuples.
//!
//! A tuple is dependent when it is the multiset union of two nonempty tuples
//! that both satisfy the group constraints. No degree cap applies to the
//! parts. Order-1 tuples are independent by convention.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::indexsets::{enumerate_k, satisfies_constraints, BasisTuple, DegreeSpec, Group};

/// Unordered split of a tuple into two nonempty parts, `left <= right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub left: BasisTuple,
    pub right: BasisTuple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dependence {
    Dependent,
    Independent,
}

/// Distinct elements with multiplicities; the canonical tuple is sorted so
/// runs are contiguous.
fn runs(tuple: &BasisTuple) -> Vec<(usize, usize)> {
    let e = tuple.elements();
    let mut out = Vec::new();
    let mut i = 0;
    while i < e.len() {
        let mut j = i + 1;
        while j < e.len() && e[j] == e[i] {
            j += 1;
        }
        out.push((i, j - i));
        i = j;
    }
    out
}

/// Advances a mixed-radix counter; returns false after the last state.
fn bump(counter: &mut [usize], limits: &[(usize, usize)]) -> bool {
    for (c, &(_, cap)) in counter.iter_mut().zip(limits) {
        if *c < cap {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

/// Every proper split `(left, right)` with `left <= right`, sorted by left.
pub fn all_splits(tuple: &BasisTuple) -> Vec<Decomposition> {
    let e = tuple.elements();
    let r = runs(tuple);
    let total = e.len();
    let mut counter = vec![0usize; r.len()];
    let mut out = Vec::new();
    while bump(&mut counter, &r) {
        let size: usize = counter.iter().sum();
        if size == total {
            continue;
        }
        let mut left = Vec::with_capacity(size);
        let mut right = Vec::with_capacity(total - size);
        for (&c, &(start, len)) in counter.iter().zip(&r) {
            left.extend_from_slice(&e[start..start + c]);
            right.extend_from_slice(&e[start + c..start + len]);
        }
        let (left, right) = (BasisTuple::new(left), BasisTuple::new(right));
        if left <= right {
            out.push(Decomposition { left, right });
        }
    }
    out.sort_by(|a, b| a.left.cmp(&b.left));
    out
}

fn check_invariant(tuple: &BasisTuple, group: Group) -> Result<()> {
    if satisfies_constraints(tuple, group) {
        Ok(())
    } else {
        Err(Error::ConstraintViolation { tuple: tuple.to_string(), group: group.to_string() })
    }
}

/// All splits whose two parts both satisfy the group constraints.
pub fn invariant_decompositions(tuple: &BasisTuple, group: Group) -> Result<Vec<Decomposition>> {
    check_invariant(tuple, group)?;
    Ok(all_splits(tuple)
        .into_iter()
        .filter(|d| satisfies_constraints(&d.left, group) && satisfies_constraints(&d.right, group))
        .collect())
}

/// Dependent iff an invariant split exists. Stops at the first one found.
pub fn classify(tuple: &BasisTuple, group: Group) -> Result<Dependence> {
    check_invariant(tuple, group)?;
    Ok(classify_unchecked(tuple))
}

/// Classification for a tuple already known to be invariant. The whole tuple
/// has `sum m = 0` and even `sum l`, so a split is invariant iff its left
/// part is.
pub(crate) fn classify_unchecked(tuple: &BasisTuple) -> Dependence {
    let e = tuple.elements();
    let r = runs(tuple);
    let mut counter = vec![0usize; r.len()];
    while bump(&mut counter, &r) {
        let mut size = 0;
        let mut m_sum = 0i64;
        let mut l_sum = 0u64;
        for (&c, &(start, _)) in counter.iter().zip(&r) {
            size += c;
            m_sum += c as i64 * e[start].m() as i64;
            l_sum += c as u64 * u64::from(e[start].l());
        }
        if size < e.len() && m_sum == 0 && l_sum % 2 == 0 {
            return Dependence::Dependent;
        }
    }
    Dependence::Independent
}

/// Exhaustive reference classifier: tries every one of the `2^nu - 2`
/// position subsets and checks both parts with the full constraint
/// predicate.
pub fn brute_force_classify(tuple: &BasisTuple, group: Group) -> Dependence {
    let e = tuple.elements();
    let nu = e.len();
    if nu < 2 {
        return Dependence::Independent;
    }
    for mask in 1u64..(1u64 << nu) - 1 {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, x) in e.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a.push(*x);
            } else {
                b.push(*x);
            }
        }
        if satisfies_constraints(&BasisTuple::new(a), group)
            && satisfies_constraints(&BasisTuple::new(b), group)
        {
            return Dependence::Dependent;
        }
    }
    Dependence::Independent
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SetCounts {
    pub total: usize,
    pub dependent: usize,
    pub independent: usize,
}

/// Sizes of `K_G(nu, D)`, `D_G(nu, D)` and `I_G(nu, D)`.
pub fn count_sets(group: Group, nu: usize, spec: DegreeSpec) -> Result<SetCounts> {
    let k = enumerate_k(group, nu, spec)?;
    let dependent = k
        .par_iter()
        .filter(|t| classify_unchecked(t) == Dependence::Dependent)
        .count();
    Ok(SetCounts { total: k.len(), dependent, independent: k.len() - dependent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indexsets::{Norm, OneParticleIndex};

    fn t(ms: &[i32]) -> BasisTuple {
        BasisTuple::torus(ms)
    }

    #[test]
    fn classic_examples() {
        let d = invariant_decompositions(&t(&[1, 0, -1]), Group::T).unwrap();
        assert_eq!(d, vec![Decomposition { left: t(&[0]), right: t(&[-1, 1]) }]);
        assert!(invariant_decompositions(&t(&[1, 1, -2]), Group::T).unwrap().is_empty());

        let d = invariant_decompositions(&t(&[-3, -2, -1, 1, 2, 3]), Group::T).unwrap();
        assert!(d.contains(&Decomposition { left: t(&[-3, 3]), right: t(&[-2, -1, 1, 2]) }));
        assert!(d.contains(&Decomposition { left: t(&[-2, 2]), right: t(&[-3, -1, 1, 3]) }));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&t(&[1, 0, -1]), Group::T).unwrap(), Dependence::Dependent);
        assert_eq!(classify(&t(&[1, 1, -2]), Group::T).unwrap(), Dependence::Independent);
        for nu in 2..7 {
            assert_eq!(classify(&t(&vec![0; nu]), Group::T).unwrap(), Dependence::Dependent);
        }
        assert_eq!(classify(&t(&[0]), Group::T).unwrap(), Dependence::Independent);
        assert!(matches!(
            classify(&t(&[1, 1, -1]), Group::T),
            Err(Error::ConstraintViolation { .. })
        ));
    }

    #[test]
    fn parity_matters_for_o3() {
        let o = |n, l, m| OneParticleIndex::O3 { n, l, m };
        // l = 1,1,1,1 with m summing to zero in pairs: split into two l-even pairs
        let k = BasisTuple::new(vec![o(0, 1, -1), o(0, 1, 1), o(0, 1, 0), o(0, 1, 0)]);
        assert_eq!(classify(&k, Group::O3).unwrap(), Dependence::Dependent);
        // (0,2,0) on its own is invariant
        let k = BasisTuple::new(vec![o(0, 1, 0), o(0, 1, 0), o(0, 2, 0)]);
        assert_eq!(classify(&k, Group::O3).unwrap(), Dependence::Dependent);
        let k = BasisTuple::new(vec![o(0, 1, -1), o(0, 1, 0), o(0, 2, 1)]);
        assert_eq!(classify(&k, Group::O3).unwrap(), Dependence::Independent);
    }

    #[test]
    fn splits_are_unique_and_canonical() {
        let k = t(&[0, 0, 0, 0]);
        let s = all_splits(&k);
        assert_eq!(s.len(), 2); // [0]|[0,0,0] and [0,0]|[0,0]
        let k = t(&[-2, -1, 1, 2]);
        let s = all_splits(&k);
        assert_eq!(s.len(), 7); // (2^4 - 2) / 2
        for d in &s {
            assert!(d.left <= d.right);
            assert_eq!(d.left.union(&d.right), k);
        }
        assert!(s.windows(2).all(|w| w[0].left <= w[1].left));
    }

    #[test]
    fn counts_small() {
        let c = count_sets(Group::T, 2, DegreeSpec::total(4)).unwrap();
        assert_eq!(c, SetCounts { total: 3, dependent: 1, independent: 2 });
        let c = count_sets(Group::T, 3, DegreeSpec::total(1)).unwrap();
        assert_eq!(c, SetCounts { total: 1, dependent: 1, independent: 0 });
        let c = count_sets(Group::T, 3, DegreeSpec::new(Norm::Max, 1)).unwrap();
        assert_eq!(c.total, c.dependent + c.independent);
    }
}
