//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the enumeration or classification code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use acegraph::{BasisTuple, Group, Norm, OneParticleIndex};

/// Every one-particle label of element degree `<= d`, generated straight
/// from the component ranges.
pub fn labels(group: Group, d: u32) -> Vec<OneParticleIndex> {
    let d = d as i32;
    let mut out = Vec::new();
    match group {
        Group::T => {
            for m in -d..=d {
                out.push(OneParticleIndex::T { m });
            }
        }
        Group::SO2 => {
            for n in 0..=d {
                for m in -(d - n)..=(d - n) {
                    out.push(OneParticleIndex::SO2 { n: n as u32, m });
                }
            }
        }
        Group::O3 | Group::O3F => {
            for n in 0..=d {
                for l in 0..=(d - n) {
                    for m in -l..=l {
                        if group == Group::O3 {
                            out.push(OneParticleIndex::O3 { n: n as u32, l: l as u32, m });
                        } else {
                            for f in 0..=(d - n - l) {
                                out.push(OneParticleIndex::O3F { n: n as u32, l: l as u32, m, f: f as u32 });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn label_degree(k: &OneParticleIndex) -> u64 {
    match *k {
        OneParticleIndex::T { m } => m.unsigned_abs() as u64,
        OneParticleIndex::SO2 { n, m } => n as u64 + m.unsigned_abs() as u64,
        OneParticleIndex::O3 { n, l, .. } => (n + l) as u64,
        OneParticleIndex::O3F { n, l, f, .. } => (n + l + f) as u64,
    }
}

pub fn label_m(k: &OneParticleIndex) -> i64 {
    match *k {
        OneParticleIndex::T { m }
        | OneParticleIndex::SO2 { m, .. }
        | OneParticleIndex::O3 { m, .. }
        | OneParticleIndex::O3F { m, .. } => m as i64,
    }
}

pub fn label_l(k: &OneParticleIndex) -> u64 {
    match *k {
        OneParticleIndex::O3 { l, .. } | OneParticleIndex::O3F { l, .. } => l as u64,
        _ => 0,
    }
}

pub fn invariant(ks: &[OneParticleIndex], group: Group) -> bool {
    let m: i64 = ks.iter().map(label_m).sum();
    let l: u64 = ks.iter().map(label_l).sum();
    m == 0 && (matches!(group, Group::T | Group::SO2) || l % 2 == 0)
}

/// `||degrees||_p <= d`, in integers.
pub fn within(ks: &[OneParticleIndex], norm: Norm, d: u32) -> bool {
    let d = d as u64;
    let degs = ks.iter().map(label_degree);
    match norm {
        Norm::L1 => degs.sum::<u64>() <= d,
        Norm::L2 => degs.map(|x| x * x).sum::<u64>() <= d * d,
        Norm::Max => degs.max().unwrap_or(0) <= d,
    }
}

/// Canonical tuples of order `nu`, built from every non-decreasing
/// sequence of label positions and filtered afterwards.
pub fn brute_k(group: Group, nu: usize, norm: Norm, d: u32) -> BTreeSet<BasisTuple> {
    let all = labels(group, d);
    let mut out = BTreeSet::new();
    let mut pos = vec![0usize; nu];
    if all.is_empty() || nu == 0 {
        return out;
    }
    loop {
        let ks: Vec<_> = pos.iter().map(|&i| all[i]).collect();
        if invariant(&ks, group) && within(&ks, norm, d) {
            out.insert(BasisTuple::new(ks));
        }
        // next non-decreasing sequence
        let mut i = nu;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pos[i] + 1 < all.len() {
                let v = pos[i] + 1;
                for p in &mut pos[i..] {
                    *p = v;
                }
                break;
            }
        }
    }
}

/// Torus tuples of order `nu` as sorted integer vectors, by scanning the
/// full cube `[-d, d]^nu`.
pub fn brute_torus_cube(nu: usize, d: i32, keep: impl Fn(&[i32]) -> bool) -> BTreeSet<Vec<i32>> {
    let mut out = BTreeSet::new();
    let mut m = vec![-d; nu];
    loop {
        if keep(&m) {
            let mut s = m.clone();
            s.sort_unstable();
            out.insert(s);
        }
        let mut i = 0;
        loop {
            if i == nu {
                return out;
            }
            if m[i] < d {
                m[i] += 1;
                break;
            }
            m[i] = -d;
            i += 1;
        }
    }
}

pub fn as_ints(t: &BasisTuple) -> Vec<i32> {
    t.elements().iter().map(|k| label_m(k) as i32).collect()
}
