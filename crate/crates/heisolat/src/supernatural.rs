//! Supernatural numbers (formal products of primes with multiplicities in
//! N ∪ {∞}) and "off-rational" subgroups of the real line: increasing unions
//! of cyclic groups `d_1·Z ⊆ d_2·Z ⊆ ...`, canonically presented as a scale
//! times a localization `Z[1/p : p ∈ S]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

/// A supernatural number: a map from primes to multiplicities.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Supernatural {
    pub factors: BTreeMap<u64, Multiplicity>,
}

impl Supernatural {
    pub fn one() -> Self {
        Supernatural::default()
    }

    pub fn from_primes_infinite(primes: impl IntoIterator<Item = u64>) -> Self {
        Supernatural {
            factors: primes
                .into_iter()
                .map(|p| (p, Multiplicity::Infinite))
                .collect(),
        }
    }

    pub fn infinite_primes(&self) -> BTreeSet<u64> {
        self.factors
            .iter()
            .filter(|(_, m)| **m == Multiplicity::Infinite)
            .map(|(p, _)| *p)
            .collect()
    }

    /// Fold all finite multiplicities into an integer factor, leaving only
    /// infinite primes.  Returns the integer factor.
    pub fn fold_finite(&mut self) -> BigInt {
        let mut factor = BigInt::one();
        self.factors.retain(|p, m| match m {
            Multiplicity::Infinite => true,
            Multiplicity::Finite(e) => {
                factor *= BigInt::from(*p).pow(*e);
                false
            }
        });
        factor
    }
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, m)| match m {
                Multiplicity::Finite(e) => format!("{p}^{e}"),
                Multiplicity::Infinite => format!("{p}^inf"),
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

pub fn prime_factors(n: &BigInt) -> Vec<(u64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((u64::try_from(&p).expect("small prime"), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((u64::try_from(&n).expect("prime fits u64 for supported inputs"), 1));
    }
    out
}

/// A subgroup of the real line of the form `base · Z[1/p : p ∈ S]` where
/// `base` is a positive scalar and `S` a set of primes with infinite
/// multiplicity.  This is the canonical form of an increasing union
/// `∪ d_j·Z` of cyclic groups.  Unions given only by a finite chain (no tail
/// rule) are exact as finite unions but carry `exhaustive = false` so
/// comparisons can report depth-bounded verdicts.
#[derive(Clone, Debug)]
pub struct LineGroup {
    pub base: Scalar,
    pub sup: Supernatural,
    /// True when the union is known in full (canonical tail rule); false for
    /// a depth-bounded prefix chain.
    pub exhaustive: bool,
    /// The generating chain, kept for reports.
    pub chain: Vec<Scalar>,
}

impl LineGroup {
    /// Canonicalize the union `∪ d_j·Z` of an increasing chain
    /// (`d_j / d_{j+1} ∈ N` for all j), optionally continued forever by
    /// dividing by the integer `tail_divisor ≥ 2` at each further step.
    pub fn from_union(ds: &[Scalar], tail_divisor: Option<u64>) -> Result<LineGroup> {
        if ds.is_empty() {
            return Err(Error::domain("empty chain"));
        }
        for d in ds {
            if !d.is_positive() {
                return Err(Error::domain("chain entries must be positive"));
            }
        }
        for w in ds.windows(2) {
            let ratio = &w[0] / &w[1];
            if !ratio.is_integer() {
                return Err(Error::domain(format!(
                    "not a divisibility chain: {} / {} is not an integer",
                    w[0], w[1]
                )));
            }
        }
        let last = ds.last().unwrap().clone();
        match tail_divisor {
            None => Ok(LineGroup {
                base: last,
                sup: Supernatural::one(),
                exhaustive: false,
                chain: ds.to_vec(),
            }),
            Some(z) => {
                if z < 2 {
                    return Err(Error::domain("tail divisor must be at least 2"));
                }
                let zfac = prime_factors(&BigInt::from(z));
                let primes: BTreeSet<u64> = zfac.iter().map(|(p, _)| *p).collect();
                // Strip the powers of the tail primes out of `base` so the
                // canonical pair is unique.
                let base = strip_primes(&last, &primes);
                Ok(LineGroup {
                    base,
                    sup: Supernatural::from_primes_infinite(primes),
                    exhaustive: true,
                    chain: ds.to_vec(),
                })
            }
        }
    }

    pub fn single(d: Scalar) -> Result<LineGroup> {
        LineGroup::from_union(&[d], None)
    }

    /// Exact membership of a scalar in the group (uses the canonical form
    /// for exhaustive groups, the last chain entry otherwise — which is the
    /// entire finite union either way).
    pub fn contains(&self, x: &Scalar) -> bool {
        if x.is_zero() {
            return true;
        }
        let q = x / &self.base;
        let Some(q) = q.to_rational() else {
            return false;
        };
        if !self.exhaustive {
            return q.is_integer();
        }
        // q ∈ Z[1/S]: denominator's primes must all lie in S.
        let s = self.sup.infinite_primes();
        prime_factors(q.denom()).iter().all(|(p, _)| s.contains(p))
    }

    /// Exact inclusion self ⊆ other, when both sides are decidable.
    /// `None` means undecidable at this presentation (non-exhaustive other
    /// with elements beyond its chain).
    pub fn subset_of(&self, other: &LineGroup) -> Option<bool> {
        // Every generator of self must be in other.  For exhaustive self it
        // suffices to check base/p^k membership symbolically.
        if !self.exhaustive {
            let all_in = self.chain.iter().all(|d| other.contains(d));
            if all_in {
                return Some(true);
            }
            // A chain element outside an exhaustive other is a definitive no;
            // outside a non-exhaustive other it is only "not yet".
            if other.exhaustive {
                return Some(false);
            }
            return None;
        }
        // self = base·Z[1/S]; need base ∈ other and S ⊆ S(other) (with
        // other exhaustive).
        if !other.exhaustive {
            return None;
        }
        let s_self = self.sup.infinite_primes();
        let s_other = other.sup.infinite_primes();
        if !s_self.is_subset(&s_other) {
            return Some(false);
        }
        Some(other.contains(&self.base))
    }

    /// A witness element of self not in other (for NotEqual verdicts).
    pub fn witness_not_in(&self, other: &LineGroup) -> Option<Scalar> {
        for d in &self.chain {
            if !other.contains(d) {
                return Some(d.clone());
            }
        }
        if self.exhaustive {
            if !other.contains(&self.base) {
                return Some(self.base.clone());
            }
            let s_other = if other.exhaustive {
                other.sup.infinite_primes()
            } else {
                BTreeSet::new()
            };
            for p in self.sup.infinite_primes() {
                if !s_other.contains(&p) {
                    // base / p^k escapes other for large k; find one.
                    let mut x = self.base.clone();
                    let pinv = Scalar::from_int(p as i64).inverse().unwrap();
                    for _ in 0..64 {
                        x = &x * &pinv;
                        if !other.contains(&x) {
                            return Some(x);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn describe(&self) -> String {
        if self.sup.factors.is_empty() {
            format!("{}*Z{}", self.base, if self.exhaustive { "" } else { " (at depth)" })
        } else {
            let primes: Vec<String> = self
                .sup
                .infinite_primes()
                .iter()
                .map(|p| p.to_string())
                .collect();
            format!("{}*Z[1/{}]", self.base, primes.join(", 1/"))
        }
    }
}

/// Divide out every power of each listed prime from the rational content of
/// `x` (for `a + b√d` the content is `gcd(numerators) / lcm(denominators)`).
fn strip_primes(x: &Scalar, primes: &BTreeSet<u64>) -> Scalar {
    let (num, den) = scalar_content(x);
    let mut out = x.clone();
    for &p in primes {
        let pb = BigInt::from(p);
        let v = int_valuation(&num, &pb) as i64 - int_valuation(&den, &pb) as i64;
        let ps = Scalar::from_int(p as i64);
        for _ in 0..v.abs() {
            out = if v > 0 { &out / &ps } else { &out * &ps };
        }
    }
    out
}

/// Rational content of a scalar as a (numerator, denominator) pair of
/// positive integers: `gcd(numerators) / lcm(denominators)` of its rational
/// and radical parts.
fn scalar_content(x: &Scalar) -> (BigInt, BigInt) {
    let a = x.rational_part();
    let b = x.radical_part();
    let den = a.denom().lcm(b.denom());
    let na = a.numer() * (&den / a.denom());
    let nb = b.numer() * (&den / b.denom());
    (na.gcd(&nb), den)
}

fn int_valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_without_tail_is_last_entry() {
        let ds = [Scalar::from_int(6), Scalar::from_int(3), Scalar::from_int(1)];
        let g = LineGroup::from_union(&ds, None).unwrap();
        assert_eq!(g.base, Scalar::from_int(1));
        assert!(g.sup.factors.is_empty());
        assert!(!g.exhaustive);
        assert!(g.contains(&Scalar::from_int(5)));
        assert!(!g.contains(&Scalar::ratio(1, 2)));
    }

    #[test]
    fn union_with_tail_two_gives_dyadics() {
        // ds = (1, 1/2, 1/4), tail divisor 2 -> Z[1/2]
        let ds = [
            Scalar::from_int(1),
            Scalar::ratio(1, 2),
            Scalar::ratio(1, 4),
        ];
        let g = LineGroup::from_union(&ds, Some(2)).unwrap();
        assert_eq!(g.base, Scalar::from_int(1));
        assert_eq!(g.sup.infinite_primes().into_iter().collect::<Vec<_>>(), vec![2]);
        assert!(g.contains(&Scalar::ratio(5, 256)));
        assert!(!g.contains(&Scalar::ratio(1, 3)));
    }

    #[test]
    fn non_divisibility_chain_rejected() {
        let ds = [Scalar::from_int(2), Scalar::ratio(3, 1)];
        assert!(LineGroup::from_union(&ds, None).is_err());
    }

    #[test]
    fn inclusion_and_witness() {
        let dyadic = LineGroup::from_union(
            &[Scalar::from_int(1), Scalar::ratio(1, 2)],
            Some(2),
        )
        .unwrap();
        let hexadic = LineGroup::from_union(
            &[Scalar::from_int(1), Scalar::ratio(1, 6)],
            Some(6),
        )
        .unwrap();
        assert_eq!(dyadic.subset_of(&hexadic), Some(true));
        assert_eq!(hexadic.subset_of(&dyadic), Some(false));
        let w = hexadic.witness_not_in(&dyadic).unwrap();
        assert!(hexadic.contains(&w) && !dyadic.contains(&w));
    }

    #[test]
    fn irrational_scale_membership() {
        let r2 = Scalar::quad_ratio(0, 1, 1, 1, 2);
        let g = LineGroup::from_union(&[r2.clone()], None).unwrap();
        assert!(g.contains(&(&r2 + &r2)));
        assert!(!g.contains(&Scalar::one()));
    }
}
