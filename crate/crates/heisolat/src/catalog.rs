//! A catalog of named tower families used by the runnable examples, the
//! command-line `--name` lookup, the regression corpus, and the test suite.
//! Each constructor documents the qualitative behavior that makes the
//! family interesting.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::{IntMatrix2, Mat2};
use crate::scalar::Scalar;
use crate::tower::Tower;

fn diag_lattice(d1: BigInt, d2: BigInt, r1: Scalar, r2: Scalar, xi: Scalar) -> Lattice {
    Lattice::new(
        Mat2::new([
            [Scalar::from_bigint(d1), Scalar::zero()],
            [Scalar::zero(), Scalar::from_bigint(d2)],
        ]),
        r1,
        r2,
        xi,
    )
    .expect("valid catalog lattice")
}

/// Level `j` has plane basis `diag(1, j!)` and central gauge `j!`.  The
/// horizontal subgroup `{a(n)}` survives every level, yet the tower is free
/// because the central gauges grow without bound.  Factorial growth is not
/// self-similar, so the family is a depth-bounded prefix.
pub fn factorial_tower(depth: u32) -> Result<Tower> {
    if depth == 0 {
        return Err(Error::domain("depth must be positive"));
    }
    let mut levels = Vec::new();
    let mut fact = BigInt::one();
    for j in 1..=depth as u64 {
        fact *= BigInt::from(j);
        levels.push(diag_lattice(
            BigInt::one(),
            fact.clone(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::from_bigint(fact.clone()),
        ));
    }
    Tower::new(levels, None)
}

/// The doubling-product sequence `k_1 = 1, k_{n+1} = k_n(k_n + 1)`:
/// 1, 2, 6, 42, 1806, ...
fn doubling_sequence(depth: u32) -> Vec<BigInt> {
    let mut ks = vec![BigInt::one()];
    while ks.len() < depth as usize {
        let k = ks.last().expect("nonempty");
        ks.push(k * (k + 1));
    }
    ks
}

/// Level `n` has basis `diag(1, k_n^2)`, offsets `(k_n, 0)` and gauge
/// `k_n^2` along the doubling-product sequence.  The plane direction
/// `(1, 0)` lies in every plane projection — the intersection of the plane
/// projections is a full line — while the center still shrinks to nothing.
pub fn line_persistent_tower(depth: u32) -> Result<Tower> {
    if depth == 0 {
        return Err(Error::domain("depth must be positive"));
    }
    let levels = doubling_sequence(depth)
        .into_iter()
        .map(|k| {
            let k2 = &k * &k;
            diag_lattice(
                BigInt::one(),
                k2.clone(),
                Scalar::from_bigint(k),
                Scalar::zero(),
                Scalar::from_bigint(k2),
            )
        })
        .collect();
    Tower::new(levels, None)
}

/// Level `n` has basis `k_n·I`, zero offsets and gauge `k_n` along the
/// doubling-product sequence; every level is normal in the integer
/// Heisenberg group.
pub fn scaled_tower(depth: u32) -> Result<Tower> {
    if depth == 0 {
        return Err(Error::domain("depth must be positive"));
    }
    let levels = doubling_sequence(depth)
        .into_iter()
        .map(|k| {
            diag_lattice(
                k.clone(),
                k.clone(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::from_bigint(k),
            )
        })
        .collect();
    Tower::new(levels, None)
}

/// The twisted companion of [`scaled_tower`]: same bases and gauges but
/// first offset 1 at every level.  Each level is conjugate to the
/// corresponding scaled level by `b(1/k_n)`, so the two towers share all
/// limit invariants, yet no single group element conjugates one tower onto
/// the other.
pub fn scaled_twisted_tower(depth: u32) -> Result<Tower> {
    if depth == 0 {
        return Err(Error::domain("depth must be positive"));
    }
    let levels = doubling_sequence(depth)
        .into_iter()
        .map(|k| {
            diag_lattice(
                k.clone(),
                k.clone(),
                Scalar::one(),
                Scalar::zero(),
                Scalar::from_bigint(k),
            )
        })
        .collect();
    Tower::new(levels, None)
}

/// Level `j` has basis `q_j·I` with `q_j` the product of the first `j - 1`
/// primes (`q_1 = 1`), and central gauge 1 at every level.  The plane
/// projections shrink at every step while the center never moves, so the
/// tower is as non-free as possible.
pub fn primorial_tower(depth: u32) -> Result<Tower> {
    if depth == 0 {
        return Err(Error::domain("depth must be positive"));
    }
    let mut levels = Vec::new();
    let mut q = BigInt::one();
    let mut p = 1u64;
    for j in 1..=depth {
        if j > 1 {
            p = next_prime(p);
            q *= BigInt::from(p);
        }
        levels.push(diag_lattice(
            q.clone(),
            q.clone(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::one(),
        ));
    }
    Tower::new(levels, None)
}

fn next_prime(after: u64) -> u64 {
    let mut n = after + 1;
    loop {
        if n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0) {
            return n;
        }
        n += 1;
    }
}

/// The integer Heisenberg group continued forever by the tail rule
/// `(2·I, 2)`: level `m` has basis `2^{m-1}·I`, gauge `2^{m-1}` and
/// `k = 2^{m-1}`.  Every limit question about this tower is decided
/// exactly.
pub fn dyadic_tail_tower() -> Tower {
    Tower::new(
        vec![Lattice::h3z()],
        Some((IntMatrix2::new([[2, 0], [0, 2]]), 2)),
    )
    .expect("valid")
}

/// The integer Heisenberg group continued by the shear-and-stretch tail
/// `([[1, 1], [0, 2]], z)`.  The direction `(1, 0)` is fixed by the tail
/// step, so a full plane line survives to the limit even though the plane
/// projections keep shrinking.
pub fn shear_tail_tower(z: u64) -> Result<Tower> {
    Tower::new(
        vec![Lattice::h3z()],
        Some((IntMatrix2::new([[1, 1], [0, 2]]), z)),
    )
}

/// The constant tower at the integer Heisenberg group.
pub fn constant_tower() -> Tower {
    Tower::constant(Lattice::h3z())
}

/// Names understood by [`by_name`].
pub const TOWER_NAMES: &[&str] = &[
    "factorial",
    "line-persistent",
    "scaled",
    "scaled-twisted",
    "primorial",
    "dyadic-tail",
    "shear-tail",
    "constant",
];

/// Look up a catalog tower by name; `depth` bounds the prefix for the
/// depth-bounded families and is ignored by the tail-ruled ones.
pub fn by_name(name: &str, depth: u32) -> Result<Tower> {
    match name {
        "factorial" => factorial_tower(depth),
        "line-persistent" => line_persistent_tower(depth),
        "scaled" => scaled_tower(depth),
        "scaled-twisted" => scaled_twisted_tower(depth),
        "primorial" => primorial_tower(depth),
        "dyadic-tail" => Ok(dyadic_tail_tower()),
        "shear-tail" => shear_tail_tower(2),
        "constant" => Ok(constant_tower()),
        other => Err(Error::format(format!(
            "unknown tower name {other:?}; known names: {}",
            TOWER_NAMES.join(", ")
        ))),
    }
}
