//! Exact integer-partition counts and the combinatorial identities used to
//! cross-check the graph construction.
//!
//! `pi(k, n)` is the number of partitions of `n` into exactly `k` positive
//! parts. It is tabulated by the recurrence
//! `pi(k, n) = pi(k - 1, n - 1) + pi(k, n - k)` over arbitrary-precision
//! integers, with `pi(0, 0) = 1` (the empty partition) and `pi(0, n) = 0`
//! for `n > 0`. The table is cached for the lifetime of the process.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact count `pi(k, n)`.
pub type PartitionCount = BigUint;

/// Rows of `pi(k, .)`; row `k` may be shorter or longer than its neighbours.
#[derive(Default)]
struct Table {
    rows: Vec<Vec<BigUint>>,
}

impl Table {
    fn get(&self, k: usize, n: usize) -> Option<&BigUint> {
        self.rows.get(k).and_then(|r| r.get(n))
    }

    /// Extends rows `0..=k` to cover `n`.
    fn ensure(&mut self, k: usize, n: usize) {
        while self.rows.len() <= k {
            self.rows.push(Vec::new());
        }
        for j in 0..=k {
            let (lower, upper) = self.rows.split_at_mut(j);
            let row = &mut upper[0];
            for m in row.len()..=n {
                let v = if j == 0 {
                    if m == 0 { BigUint::one() } else { BigUint::zero() }
                } else if m < j {
                    BigUint::zero()
                } else {
                    &lower[j - 1][m - 1] + &row[m - j]
                };
                row.push(v);
            }
        }
    }
}

fn table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(Table::default()))
}

/// Number of partitions of `n` into exactly `k` positive parts.
pub fn pi(k: usize, n: usize) -> PartitionCount {
    if k > n {
        return BigUint::zero();
    }
    if let Some(v) = table().read().expect("partition table lock").get(k, n) {
        return v.clone();
    }
    let mut t = table().write().expect("partition table lock");
    t.ensure(k, n);
    t.rows[k][n].clone()
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        binomial(BigUint::from(n), BigUint::from(k))
    }
}

/// Lower and upper bound on `pi(k, n)` for `k, n >= 1`:
/// `C(n-1, k-1) / k!` and `(n + k(k-1)/2)^(k-1) / (k! (k-1)!)`.
pub fn pi_bounds(k: usize, n: usize) -> (BigRational, BigRational) {
    assert!(k >= 1 && n >= 1, "pi_bounds needs k, n >= 1");
    let kf = factorial(k);
    let lower = BigRational::new(binom(n - 1, k - 1).into(), kf.clone().into());
    let base = BigUint::from(n + k * (k - 1) / 2);
    let upper = BigRational::new(
        base.pow((k - 1) as u32).into(),
        (kf * factorial(k - 1)).into(),
    );
    (lower, upper)
}

/// Catalan number `C(2j, j) / (j + 1)`.
pub fn catalan(j: usize) -> PartitionCount {
    binom(2 * j, j) / BigUint::from(j + 1)
}

/// Checks `sum_k C(nu,k)^2 k (nu-k) = nu^2 C(2nu-2, nu-2)` exactly.
pub fn slice_identity_check(nu: usize) -> bool {
    assert!(nu >= 2, "identity is stated for nu >= 2");
    let lhs = (0..=nu).fold(BigUint::zero(), |acc, k| {
        let c = binom(nu, k);
        acc + &c * &c * BigUint::from(k * (nu - k))
    });
    let rhs = BigUint::from(nu * nu) * binom(2 * nu - 2, nu - 2);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    /// Independent count: non-increasing sequences of `k` positive parts.
    fn brute(k: usize, n: usize, max_part: usize) -> u64 {
        if k == 0 {
            return u64::from(n == 0);
        }
        (1..=max_part.min(n)).map(|p| brute(k - 1, n - p, p)).sum()
    }

    #[test]
    fn examples() {
        assert_eq!(pi(2, 4), BigUint::from(2u32));
        for n in 1..20 {
            assert_eq!(pi(1, n), BigUint::one());
        }
        assert_eq!(pi(5, 3), BigUint::zero());
        assert_eq!(pi(0, 0), BigUint::one());
        assert_eq!(pi(0, 7), BigUint::zero());
        assert_eq!(pi(3, 9), BigUint::from(7u32));
    }

    #[test]
    fn matches_enumeration() {
        for n in 0..=30 {
            for k in 0..=n {
                assert_eq!(pi(k, n).to_u64().unwrap(), brute(k, n, n), "pi({k},{n})");
            }
        }
    }

    #[test]
    fn bounds_examples() {
        let (lo, hi) = pi_bounds(2, 4);
        assert_eq!(lo, BigRational::new(3.into(), 2.into()));
        assert_eq!(hi, BigRational::new(5.into(), 2.into()));
        let (lo, hi) = pi_bounds(1, 7);
        assert_eq!(lo, BigRational::one());
        assert_eq!(hi, BigRational::one());
        let (lo, hi) = pi_bounds(3, 9);
        let p = BigRational::from_integer(7.into());
        assert!(lo <= p && p <= hi);
    }

    #[test]
    fn catalan_values() {
        // recurrence C_{n+1} = sum C_i C_{n-i}
        let mut c = vec![BigUint::one()];
        for n in 0..15 {
            let next = (0..=n).fold(BigUint::zero(), |acc, i| acc + &c[i] * &c[n - i]);
            c.push(next);
        }
        for (j, v) in c.iter().enumerate() {
            assert_eq!(&catalan(j), v);
        }
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(5), BigUint::from(42u32));
        // the form (1/(nu-1)) C(2nu-2, nu-2) at j = nu - 1
        for nu in 2..12usize {
            assert_eq!(catalan(nu - 1), binom(2 * nu - 2, nu - 2) / BigUint::from(nu - 1));
        }
    }

    /// Dyck words of length 2j, counted by walking all +/- sequences.
    fn ballot(j: usize) -> u64 {
        (0u32..1 << (2 * j))
            .filter(|bits| {
                let mut h = 0i32;
                for i in 0..2 * j {
                    h += if bits >> i & 1 == 1 { 1 } else { -1 };
                    if h < 0 {
                        return false;
                    }
                }
                h == 0
            })
            .count() as u64
    }

    #[test]
    fn catalan_matches_ballot_sequences() {
        for j in 0..=8 {
            assert_eq!(catalan(j).to_u64().unwrap(), ballot(j), "C_{j}");
        }
    }

    #[test]
    fn slice_identity_small() {
        assert!(slice_identity_check(2));
        assert!(slice_identity_check(3));
        assert!(slice_identity_check(10));
    }
}
