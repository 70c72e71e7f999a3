//! The real Heisenberg group in exact coordinates, its automorphisms, and
//! the labels of its unitary irreducible representations.
//!
//! An element is written `g = c(t3) b(t2) a(t1)` where `a`, `b` are the two
//! horizontal one-parameter subgroups and `c` is the center.  In these
//! coordinates
//!
//! ```text
//! (t1, t2, t3) * (s1, s2, s3) = (t1+s1, t2+s2, t3+s3 + t1*s2)
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::scalar::Scalar;

/// `c(t3) b(t2) a(t1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement {
    pub t1: Scalar,
    pub t2: Scalar,
    pub t3: Scalar,
}

/// The standard symplectic pairing `<u, v> = u1*v2 - u2*v1`.
pub fn pairing(u: &[Scalar; 2], v: &[Scalar; 2]) -> Scalar {
    &(&u[0] * &v[1]) - &(&u[1] * &v[0])
}

impl GroupElement {
    pub fn new(t1: Scalar, t2: Scalar, t3: Scalar) -> Self {
        GroupElement { t1, t2, t3 }
    }

    pub fn identity() -> Self {
        GroupElement::new(Scalar::zero(), Scalar::zero(), Scalar::zero())
    }

    pub fn a(t: Scalar) -> Self {
        GroupElement::new(t, Scalar::zero(), Scalar::zero())
    }

    pub fn b(t: Scalar) -> Self {
        GroupElement::new(Scalar::zero(), t, Scalar::zero())
    }

    pub fn c(t: Scalar) -> Self {
        GroupElement::new(Scalar::zero(), Scalar::zero(), t)
    }

    pub fn is_identity(&self) -> bool {
        self.t1.is_zero() && self.t2.is_zero() && self.t3.is_zero()
    }

    pub fn is_central(&self) -> bool {
        self.t1.is_zero() && self.t2.is_zero()
    }

    /// Projection to the abelianization plane.
    pub fn p(&self) -> [Scalar; 2] {
        [self.t1.clone(), self.t2.clone()]
    }

    pub fn multiply(&self, other: &GroupElement) -> GroupElement {
        GroupElement::new(
            &self.t1 + &other.t1,
            &self.t2 + &other.t2,
            &(&self.t3 + &other.t3) + &(&self.t1 * &other.t2),
        )
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement::new(
            -&self.t1,
            -&self.t2,
            &(-&self.t3) + &(&self.t1 * &self.t2),
        )
    }

    /// `self^n` by the closed formula
    /// `(n t1, n t2, n t3 + n(n-1)/2 · t1 t2)`.
    pub fn power(&self, n: &BigInt) -> GroupElement {
        let ns = Scalar::from_bigint(n.clone());
        let half_binom = Scalar::from_bigint(n * (n - 1)) / Scalar::from_int(2);
        GroupElement::new(
            &ns * &self.t1,
            &ns * &self.t2,
            &(&ns * &self.t3) + &(&half_binom * &(&self.t1 * &self.t2)),
        )
    }

    pub fn power_i64(&self, n: i64) -> GroupElement {
        self.power(&BigInt::from(n))
    }

    /// `[g, h] = g h g^{-1} h^{-1} = c(<p(g), p(h)>)`.
    pub fn commutator(&self, other: &GroupElement) -> GroupElement {
        GroupElement::c(pairing(&self.p(), &other.p()))
    }

    pub fn conjugate_by(&self, h: &GroupElement) -> GroupElement {
        h.multiply(self).multiply(&h.inverse())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c({}) b({}) a({})", self.t3, self.t2, self.t1)
    }
}

/// An automorphism of the Heisenberg group fixing the center setwise.  It is
/// determined by an invertible matrix `A = [[x1, y1], [x2, y2]]` acting on
/// the abelianization plane (so `p ∘ θ = A ∘ p`) together with two central
/// twist parameters `xi`, `eta`:
///
/// ```text
/// θ(a(t)) = c(x1·x2·t²/2 + xi·t)  b(x2·t) a(x1·t)
/// θ(b(t)) = c(y1·y2·t²/2 + eta·t) b(y2·t) a(y1·t)
/// θ(c(t)) = c(det(A)·t)
/// ```
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Automorphism {
    pub matrix: Mat2,
    pub xi: Scalar,
    pub eta: Scalar,
}

impl Automorphism {
    pub fn new(matrix: Mat2, xi: Scalar, eta: Scalar) -> Result<Self> {
        if matrix.det().is_zero() {
            return Err(Error::domain("automorphism matrix must be invertible"));
        }
        Ok(Automorphism { matrix, xi, eta })
    }

    pub fn identity() -> Self {
        Automorphism {
            matrix: Mat2::identity(),
            xi: Scalar::zero(),
            eta: Scalar::zero(),
        }
    }

    /// The inner automorphism `g ↦ h g h^{-1}`: identity matrix, twists
    /// `(-t2, t1)` for `p(h) = (t1, t2)`.
    pub fn inner(h: &GroupElement) -> Self {
        Automorphism {
            matrix: Mat2::identity(),
            xi: -&h.t2,
            eta: h.t1.clone(),
        }
    }

    /// The central scaling factor: `θ(c(t)) = c(tau · t)` with
    /// `tau = det(A)`.
    pub fn tau(&self) -> Scalar {
        self.matrix.det()
    }

    fn apply_a(&self, t: &Scalar) -> GroupElement {
        let x1 = &self.matrix.e[0][0];
        let x2 = &self.matrix.e[1][0];
        let half = Scalar::ratio(1, 2);
        let central = &(&(&(x1 * x2) * &half) * &(t * t)) + &(&self.xi * t);
        GroupElement::c(central)
            .multiply(&GroupElement::b(x2 * t))
            .multiply(&GroupElement::a(x1 * t))
    }

    fn apply_b(&self, t: &Scalar) -> GroupElement {
        let y1 = &self.matrix.e[0][1];
        let y2 = &self.matrix.e[1][1];
        let half = Scalar::ratio(1, 2);
        let central = &(&(&(y1 * y2) * &half) * &(t * t)) + &(&self.eta * t);
        GroupElement::c(central)
            .multiply(&GroupElement::b(y2 * t))
            .multiply(&GroupElement::a(y1 * t))
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        GroupElement::c(&self.tau() * &g.t3)
            .multiply(&self.apply_b(&g.t2))
            .multiply(&self.apply_a(&g.t1))
    }

    /// Composition `self ∘ other`.  The matrix composes as a product; the
    /// twist parameters are recovered by evaluating the composite on the
    /// standard generators `a(1)` and `b(1)`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let matrix = self.matrix.mul(&other.matrix);
        let half = Scalar::ratio(1, 2);
        let image_a = self.apply(&other.apply(&GroupElement::a(Scalar::one())));
        let image_b = self.apply(&other.apply(&GroupElement::b(Scalar::one())));
        let xi = &image_a.t3 - &(&(&matrix.e[0][0] * &matrix.e[1][0]) * &half);
        let eta = &image_b.t3 - &(&(&matrix.e[0][1] * &matrix.e[1][1]) * &half);
        Automorphism { matrix, xi, eta }
    }

    pub fn inverse(&self) -> Automorphism {
        let inv = self.matrix.inverse().expect("invertible by construction");
        // If phi has matrix inv and twists (u, v) then (self ∘ phi) = id
        // forces the central parts of self(phi(a(1))) and self(phi(b(1)))
        // to vanish.  Compute with zero twists first, then correct: a twist
        // u on phi contributes tau(self)·u to the central part of the
        // composite image of a(1).
        let probe = Automorphism {
            matrix: inv.clone(),
            xi: Scalar::zero(),
            eta: Scalar::zero(),
        };
        let tau_inv = self.tau().inverse().expect("nonzero");
        let comp_a = self.apply(&probe.apply(&GroupElement::a(Scalar::one())));
        let comp_b = self.apply(&probe.apply(&GroupElement::b(Scalar::one())));
        Automorphism {
            matrix: inv,
            xi: -&(&comp_a.t3 * &tau_inv),
            eta: -&(&comp_b.t3 * &tau_inv),
        }
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "theta(matrix = {}, xi = {}, eta = {})",
            self.matrix, self.xi, self.eta
        )
    }
}

/// Label of an irreducible unitary representation of the group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Irrep {
    /// One-dimensional: a character of the abelianization, labelled by a
    /// frequency vector `(alpha, beta)`.
    OneDim(Scalar, Scalar),
    /// Infinite-dimensional: labelled by the nonzero central frequency.
    InfDim(Scalar),
}

impl Irrep {
    pub fn one_dim(alpha: Scalar, beta: Scalar) -> Self {
        Irrep::OneDim(alpha, beta)
    }

    pub fn inf_dim(gamma: Scalar) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::domain(
                "infinite-dimensional representations have nonzero central frequency",
            ));
        }
        Ok(Irrep::InfDim(gamma))
    }

    /// Precomposition with an automorphism, up to unitary equivalence:
    /// characters pull back through the plane action, the
    /// infinite-dimensional class only sees the central scaling.
    pub fn precompose(&self, theta: &Automorphism) -> Irrep {
        match self {
            Irrep::OneDim(alpha, beta) => {
                let at = theta.matrix.transpose();
                let w = at.mul_vec(&[alpha.clone(), beta.clone()]);
                Irrep::OneDim(w[0].clone(), w[1].clone())
            }
            Irrep::InfDim(gamma) => Irrep::InfDim(gamma * &theta.tau()),
        }
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irrep::OneDim(a, b) => write!(f, "pi({}, {})", a, b),
            Irrep::InfDim(g) => write!(f, "pi[{}]", g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn g(t1: i64, t2: i64, t3: i64) -> GroupElement {
        GroupElement::new(s(t1), s(t2), s(t3))
    }

    #[test]
    fn group_law_and_inverse() {
        let x = g(1, 2, 3);
        let y = g(4, 5, 6);
        let xy = x.multiply(&y);
        assert_eq!(xy, g(5, 7, 3 + 6 + 1 * 5));
        assert!(x.multiply(&x.inverse()).is_identity());
        assert!(x.inverse().multiply(&x).is_identity());
        // associativity spot check
        let z = g(-2, 7, 1);
        assert_eq!(
            x.multiply(&y).multiply(&z),
            x.multiply(&y.multiply(&z))
        );
    }

    #[test]
    fn commutator_of_horizontal_generators_is_central() {
        let a = GroupElement::a(s(3));
        let b = GroupElement::b(s(5));
        assert_eq!(a.commutator(&b), GroupElement::c(s(15)));
        assert_eq!(b.commutator(&a), GroupElement::c(s(-15)));
        // matches the word a b a^{-1} b^{-1}
        let word = a
            .multiply(&b)
            .multiply(&a.inverse())
            .multiply(&b.inverse());
        assert_eq!(word, GroupElement::c(s(15)));
    }

    #[test]
    fn power_formula_matches_repeated_multiplication() {
        let x = g(2, 3, 1);
        let mut acc = GroupElement::identity();
        for n in 0..=7 {
            assert_eq!(x.power_i64(n), acc, "power {n}");
            acc = acc.multiply(&x);
        }
        assert_eq!(x.power_i64(-3), x.inverse().power_i64(3));
    }

    #[test]
    fn flip_automorphism() {
        // Swap the two horizontal directions: matrix [[0,1],[1,0]], no twist.
        let flip = Automorphism::new(Mat2::from_i64([[0, 1], [1, 0]]), s(0), s(0)).unwrap();
        assert_eq!(flip.tau(), s(-1));
        assert_eq!(flip.apply(&GroupElement::a(s(1))), GroupElement::b(s(1)));
        assert_eq!(flip.apply(&GroupElement::b(s(1))), GroupElement::a(s(1)));
        assert_eq!(flip.apply(&g(1, 2, 3)), g(2, 1, -1));
        // involution
        let twice = flip.compose(&flip);
        for e in [g(1, 0, 0), g(0, 1, 0), g(3, -2, 5)] {
            assert_eq!(twice.apply(&e), e);
        }
    }

    #[test]
    fn automorphisms_are_homomorphisms() {
        let theta = Automorphism::new(
            Mat2::from_i64([[2, 1], [1, 1]]),
            Scalar::ratio(1, 2),
            s(-3),
        )
        .unwrap();
        let xs = [g(1, 2, 3), g(-1, 0, 2), g(4, -5, 0)];
        for x in &xs {
            for y in &xs {
                assert_eq!(
                    theta.apply(&x.multiply(y)),
                    theta.apply(x).multiply(&theta.apply(y))
                );
            }
        }
        // p ∘ θ = A ∘ p
        for x in &xs {
            let img = theta.apply(x);
            assert_eq!(img.p(), theta.matrix.mul_vec(&x.p()));
        }
        // center scales by det
        assert_eq!(
            theta.apply(&GroupElement::c(s(7))),
            GroupElement::c(&theta.tau() * &s(7))
        );
    }

    #[test]
    fn inner_automorphism_is_conjugation() {
        let h = g(3, -2, 5);
        let theta = Automorphism::inner(&h);
        for x in [g(1, 2, 3), g(0, 1, 0), g(-4, 7, 2)] {
            assert_eq!(theta.apply(&x), x.conjugate_by(&h));
        }
    }

    #[test]
    fn compose_and_inverse_are_exact() {
        let t1 = Automorphism::new(
            Mat2::from_i64([[2, 1], [1, 1]]),
            Scalar::ratio(1, 3),
            s(2),
        )
        .unwrap();
        let t2 = Automorphism::new(
            Mat2::from_i64([[0, 1], [1, 0]]),
            s(1),
            Scalar::ratio(-1, 2),
        )
        .unwrap();
        let comp = t1.compose(&t2);
        for x in [g(1, 0, 0), g(0, 1, 0), g(2, 3, -1), g(-5, 1, 4)] {
            assert_eq!(comp.apply(&x), t1.apply(&t2.apply(&x)));
        }
        let inv = t1.inverse();
        for x in [g(1, 0, 0), g(0, 1, 0), g(2, 3, -1)] {
            assert_eq!(inv.apply(&t1.apply(&x)), x);
            assert_eq!(t1.apply(&inv.apply(&x)), x);
        }
    }

    #[test]
    fn irrep_pullback() {
        let theta = Automorphism::new(
            Mat2::from_i64([[2, 1], [1, 1]]),
            s(0),
            s(0),
        )
        .unwrap();
        // characters: (alpha, beta) -> (x1 a + x2 b, y1 a + y2 b) = A^T (a,b)
        let chi = Irrep::one_dim(s(1), s(0));
        assert_eq!(chi.precompose(&theta), Irrep::one_dim(s(2), s(1)));
        let pi = Irrep::inf_dim(Scalar::ratio(1, 2)).unwrap();
        assert_eq!(
            pi.precompose(&theta),
            Irrep::inf_dim(Scalar::ratio(1, 2)).unwrap()
        );
    }
}
