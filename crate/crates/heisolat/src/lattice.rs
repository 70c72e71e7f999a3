//! Lattices in the real Heisenberg group: representation by a plane basis,
//! central offsets, and a central gauge; invariants, normal form, conjugacy,
//! and constructive sublattice operations.
//!
//! A lattice is stored as
//!
//! * `basis` — an invertible 2x2 scalar matrix `B` whose columns `v1`, `v2`
//!   generate the projection `p(Γ)` to the plane,
//! * `r1`, `r2` — central offsets: the generators are
//!   `g_i = c(r_i) b(v_i2) a(v_i1)`,
//! * `xi` — the positive generator of `Γ ∩ center`.
//!
//! The validator enforces that `k = |det B| / xi` is a positive integer (the
//! index of the commutator subgroup inside the center); offsets are reduced
//! modulo `xi` so equal lattices have equal canonical data up to a change of
//! plane basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::heis::{pairing, Automorphism, GroupElement};
use crate::matrix::{smith_normal_form, IntMatrix2, Mat2, PlaneLattice};
use crate::scalar::{rational_gcd_all, Scalar};

#[derive(Clone, Debug)]
pub struct Lattice {
    basis: Mat2,
    r: [Scalar; 2],
    xi: Scalar,
}

impl Lattice {
    pub fn new(basis: Mat2, r1: Scalar, r2: Scalar, xi: Scalar) -> Result<Self> {
        if basis.det().is_zero() {
            return Err(Error::domain("lattice plane basis must be invertible"));
        }
        if !xi.is_positive() {
            return Err(Error::domain("central gauge xi must be positive"));
        }
        let k = &basis.det().abs() / &xi;
        if !k.is_integer() || !k.is_positive() {
            return Err(Error::domain(format!(
                "|det B| / xi = {k} must be a positive integer"
            )));
        }
        Ok(Lattice {
            r: [r1.rem_euclid(&xi), r2.rem_euclid(&xi)],
            basis,
            xi,
        })
    }

    /// The integer Heisenberg group.
    pub fn h3z() -> Self {
        Lattice::new(
            Mat2::identity(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::one(),
        )
        .expect("valid")
    }

    /// The canonical lattice `{c(n/k) b(m) a(l)}`.
    pub fn canonical(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("canonical parameter must be positive"));
        }
        Lattice::new(
            Mat2::identity(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::ratio(1, k as i64),
        )
    }

    pub fn basis(&self) -> &Mat2 {
        &self.basis
    }

    pub fn xi(&self) -> &Scalar {
        &self.xi
    }

    pub fn offsets(&self) -> &[Scalar; 2] {
        &self.r
    }

    /// `k = |det B| / xi`, a positive integer.
    pub fn k(&self) -> BigInt {
        (&self.basis.det().abs() / &self.xi)
            .to_integer()
            .expect("validated at construction")
    }

    pub fn p_lattice(&self) -> PlaneLattice {
        PlaneLattice::new(self.basis.clone()).expect("invertible")
    }

    pub fn dual_lattice(&self) -> PlaneLattice {
        self.p_lattice().dual()
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let v = self.basis.column(i);
        GroupElement::c(self.r[i].clone())
            .multiply(&GroupElement::b(v[1].clone()))
            .multiply(&GroupElement::a(v[0].clone()))
    }

    /// Central coordinate of the word `g1^{n1} g2^{n2}`.
    pub fn central_of_word(&self, n: &[BigInt; 2]) -> Scalar {
        self.generator(0)
            .power(&n[0])
            .multiply(&self.generator(1).power(&n[1]))
            .t3
    }

    /// The unique element of the form `word(n) · c(xi·Z)` over the plane
    /// vector `B·n` whose central coordinate lies in `[0, xi)`; used when a
    /// concrete coset representative is needed.
    pub fn word(&self, n: &[BigInt; 2]) -> GroupElement {
        self.generator(0)
            .power(&n[0])
            .multiply(&self.generator(1).power(&n[1]))
    }

    pub fn contains_element(&self, g: &GroupElement) -> bool {
        let coords = self.p_lattice().coordinates(&g.p());
        let (Some(n1), Some(n2)) = (coords[0].to_integer(), coords[1].to_integer()) else {
            return false;
        };
        let defect = &g.t3 - &self.central_of_word(&[n1, n2]);
        defect.is_integer_multiple_of(&self.xi)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        self.contains_element(&other.generator(0))
            && self.contains_element(&other.generator(1))
            && self.contains_element(&GroupElement::c(other.xi.clone()))
    }

    pub fn equal(&self, other: &Lattice) -> bool {
        self.contains_lattice(other) && other.contains_lattice(self)
    }

    /// Index of `other` inside `self` when `other ⊆ self`.
    pub fn index_of_sublattice(&self, other: &Lattice) -> Result<BigInt> {
        if !self.contains_lattice(other) {
            return Err(Error::domain("not a sublattice"));
        }
        let plane = self.p_lattice().index_of_sublattice(&other.p_lattice())?;
        let central = (&other.xi / &self.xi)
            .to_integer()
            .ok_or_else(|| Error::domain("central gauges incompatible"))?;
        Ok(plane * central)
    }

    /// Conjugation `h · Γ · h^{-1}`: same plane basis and gauge, offsets
    /// shifted by the symplectic pairing with `p(h)`.
    pub fn conjugate_by(&self, h: &GroupElement) -> Lattice {
        let ph = h.p();
        let r1 = &self.r[0] + &pairing(&ph, &self.basis.column(0));
        let r2 = &self.r[1] + &pairing(&ph, &self.basis.column(1));
        Lattice::new(self.basis.clone(), r1, r2, self.xi.clone()).expect("same invariants")
    }

    /// Image of the lattice under an automorphism.
    pub fn automorphism_image(&self, theta: &Automorphism) -> Lattice {
        let basis = theta.matrix.mul(&self.basis);
        let xi = &theta.tau().abs() * &self.xi;
        let g1 = theta.apply(&self.generator(0));
        let g2 = theta.apply(&self.generator(1));
        Lattice::new(basis, g1.t3, g2.t3, xi).expect("automorphisms preserve validity")
    }

    /// Normal form: an automorphism carrying this lattice onto the canonical
    /// lattice with the same `k`.  First straighten the plane basis with
    /// `θ_{B^{-1},0,0}`, then kill the residual offsets of the unit-vector
    /// lifts with an inner automorphism.
    pub fn normal_form(&self) -> (BigInt, Automorphism) {
        let straighten = Automorphism::new(
            self.basis.inverse().expect("invertible"),
            Scalar::zero(),
            Scalar::zero(),
        )
        .expect("invertible");
        let mid = self.automorphism_image(&straighten);
        // mid has basis I; its offsets are the residual central twists.
        let twist = Automorphism::new(
            Mat2::identity(),
            -&mid.r[0],
            -&mid.r[1],
        )
        .expect("invertible");
        let theta = twist.compose(&straighten);
        debug_assert!(self
            .automorphism_image(&theta)
            .equal(&Lattice::new(
                Mat2::identity(),
                Scalar::zero(),
                Scalar::zero(),
                mid.xi.clone()
            )
            .expect("valid")));
        (self.k(), theta)
    }

    /// Lattices are automorphic iff their `k` invariants agree.
    pub fn automorphic_test(&self, other: &Lattice) -> bool {
        self.k() == other.k()
    }

    /// Conjugacy: equal `k` and equal plane lattices.  On success returns a
    /// witness `h` with `conjugate_by(h, self) = other`.
    pub fn conjugacy_test(&self, other: &Lattice) -> Option<GroupElement> {
        if self.k() != other.k() || !self.p_lattice().same_lattice(&other.p_lattice()) {
            return None;
        }
        debug_assert_eq!(self.xi, other.xi);
        // Express other's offsets over self's basis columns.
        let mut delta = [Scalar::zero(), Scalar::zero()];
        for i in 0..2 {
            let v = self.basis.column(i);
            let coords = other.p_lattice().coordinates(&v);
            let n = [
                coords[0].to_integer().expect("same plane lattice"),
                coords[1].to_integer().expect("same plane lattice"),
            ];
            delta[i] = &other.central_of_word(&n) - &self.r[i];
        }
        // Solve <y, v_i> = delta_i for y = p(h):
        // the matrix of the map y ↦ (<y,v1>, <y,v2>) is
        // [[v12, -v11], [v22, -v21]], determinant det B.
        let v1 = self.basis.column(0);
        let v2 = self.basis.column(1);
        let m = Mat2::new([
            [v1[1].clone(), -&v1[0]],
            [v2[1].clone(), -&v2[0]],
        ]);
        let y = m.inverse().expect("det B nonzero").mul_vec(&delta);
        let h = GroupElement::b(y[1].clone()).multiply(&GroupElement::a(y[0].clone()));
        let image = self.conjugate_by(&h);
        debug_assert!(image.equal(other));
        if image.equal(other) {
            Some(h)
        } else {
            None
        }
    }

    /// Interpolation: given `lambda ⊆ self` and a target gauge `xi` with
    /// `xi/ξ_self ∈ N`, `ξ_lambda/xi ∈ N`, `|det B_self|/xi ∈ N`, produce a
    /// lattice `Θ` with `self ⊇ Θ ⊇ lambda`, `p(Θ) = p(self)` and gauge
    /// `xi`.  Constructed in normal-form coordinates: the group generated by
    /// the straightened `lambda` together with the canonical lattice whose
    /// center is `xi·Z` (in those coordinates), pulled back.
    pub fn interpolate(&self, lambda: &Lattice, xi: &Scalar) -> Result<Lattice> {
        if !self.contains_lattice(lambda) {
            return Err(Error::domain("interpolation requires lambda inside gamma"));
        }
        for (name, q) in [
            ("xi/xi_gamma", xi / &self.xi),
            ("xi_lambda/xi", &lambda.xi / xi),
            ("|det B|/xi", &self.basis.det().abs() / xi),
        ] {
            if !q.is_integer() || !q.is_positive() {
                return Err(Error::domain(format!(
                    "interpolation divisibility fails: {name} = {q} is not a positive integer"
                )));
            }
        }
        let (_, theta) = self.normal_form();
        let lam_hat = lambda.automorphism_image(&theta);
        let xi_hat = &theta.tau().abs() * xi;
        // The generated group's center gauge is the gcd of the canonical
        // gauge with the central data contributed by lam_hat: its own gauge
        // and the residual offsets of its generators relative to the
        // zero-offset canonical lifts over the same plane vectors.  (All
        // symplectic pairings of integer vectors are integers, which lie in
        // xi_hat·Z because |det B|/xi ∈ N.)
        let mut central_gens = vec![
            xi_hat
                .to_rational()
                .ok_or_else(|| Error::unsupported("interpolation needs a rational gauge in normal coordinates"))?,
            (&lam_hat.xi)
                .to_rational()
                .ok_or_else(|| Error::unsupported("interpolation needs rational data in normal coordinates"))?,
        ];
        for i in 0..2 {
            let resid = &lam_hat.r[i];
            central_gens.push(resid.to_rational().ok_or_else(|| {
                Error::unsupported("interpolation needs rational offsets in normal coordinates")
            })?);
        }
        let gauge = Scalar::from_rational(rational_gcd_all(&central_gens));
        if gauge != xi_hat {
            return Err(Error::domain(format!(
                "interpolation unsatisfiable: generated center gauge {gauge} is finer than requested {xi_hat}"
            )));
        }
        let theta_hat = Lattice::new(
            Mat2::identity(),
            Scalar::zero(),
            Scalar::zero(),
            xi_hat,
        )?;
        let result = theta_hat.automorphism_image(&theta.inverse());
        debug_assert!(self.contains_lattice(&result) && result.contains_lattice(lambda));
        Ok(result)
    }

    /// The sublattice generated by `g1' = g1^{P11} g2^{P21}`,
    /// `g2' = g1^{P12} g2^{P22}` and `c(z·xi)`.  Requires `det P ≠ 0` and
    /// `z | |det P|` so the new `k` stays integral.
    pub fn extend(&self, p: &IntMatrix2, z: u64) -> Result<Lattice> {
        let det = p.det();
        if det.is_zero() {
            return Err(Error::domain("extension matrix must be invertible"));
        }
        if z == 0 || !(det.abs() % BigInt::from(z)).is_zero() {
            return Err(Error::domain(format!(
                "extension step z = {z} must divide |det P| = {}",
                det.abs()
            )));
        }
        self.sublattice_unchecked(p, z)
    }

    /// Same construction as [`Lattice::extend`] under the weaker condition
    /// that the resulting `k` is integral (`z | k·|det P|`); used internally
    /// when rebuilding towers from invariant data.
    pub(crate) fn sublattice_weak(&self, p: &IntMatrix2, z: u64) -> Result<Lattice> {
        let det = p.det();
        if det.is_zero() {
            return Err(Error::domain("extension matrix must be invertible"));
        }
        if z == 0 || !((self.k() * det.abs()) % BigInt::from(z)).is_zero() {
            return Err(Error::domain(format!(
                "step z = {z} incompatible with k·|det P| = {}",
                self.k() * det.abs()
            )));
        }
        self.sublattice_unchecked(p, z)
    }

    fn sublattice_unchecked(&self, p: &IntMatrix2, z: u64) -> Result<Lattice> {
        let basis = self.basis.mul_int(p);
        let xi = &Scalar::from_int(z as i64) * &self.xi;
        let col = |j: usize| [p.e[0][j].clone(), p.e[1][j].clone()];
        let r1 = self.central_of_word(&col(0));
        let r2 = self.central_of_word(&col(1));
        let out = Lattice::new(basis, r1, r2, xi)?;
        debug_assert!(self.contains_lattice(&out));
        Ok(out)
    }

    /// The intersection of all `ambient`-conjugates of `self`
    /// (the normal cover of `self` relative to `ambient`): the elements
    /// `(v, t)` of `self` whose plane part satisfies
    /// `<p(γ), v> ∈ xi·Z` for both generators `γ` of `ambient`.
    pub fn conjugate_intersection(ambient: &Lattice, gamma: &Lattice) -> Result<Lattice> {
        if !ambient.contains_lattice(gamma) {
            return Err(Error::domain(
                "conjugate intersection requires gamma inside ambient",
            ));
        }
        // Row i of L: n ↦ <u_i, B·n> where u_i are ambient's plane columns.
        let b = &gamma.basis;
        let mut rows = Vec::new();
        for i in 0..2 {
            let u = ambient.basis.column(i);
            // <u, Bn> = u1·(Bn)2 - u2·(Bn)1 = (u1·B21 - u2·B11)·n1 + (u1·B22 - u2·B12)·n2
            rows.push([
                &(&u[0] * &b.e[1][0]) - &(&u[1] * &b.e[0][0]),
                &(&u[0] * &b.e[1][1]) - &(&u[1] * &b.e[0][1]),
            ]);
        }
        // Congruence <u_i, Bn> ∈ xi·Z  ⇔  (L/xi)·n ∈ Z².
        let xi_inv = gamma.xi.inverse().expect("positive");
        let mut m = [[Scalar::zero(), Scalar::zero()], [Scalar::zero(), Scalar::zero()]];
        for i in 0..2 {
            for j in 0..2 {
                let entry = &rows[i][j] * &xi_inv;
                if !entry.is_rational() {
                    return Err(Error::unsupported(
                        "conjugate intersection with irrational congruence data",
                    ));
                }
                m[i][j] = entry;
            }
        }
        // Common denominator q; solve N·n ≡ 0 (mod q) via Smith normal form.
        let mut q = BigInt::one();
        for row in &m {
            for x in row {
                q = q.lcm(x.to_rational().expect("rational").denom());
            }
        }
        let n_mat: Vec<Vec<BigInt>> = m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x.to_rational().expect("rational")
                            * num_rational::BigRational::from_integer(q.clone());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let (_, d, r_mat) = smith_normal_form(&n_mat);
        // n = R·m with d_i·m_i ≡ 0 (mod q): m_i ∈ (q / gcd(d_i, q))·Z.
        let mut k_cols = IntMatrix2::identity();
        for i in 0..2 {
            let di = &d[i][i];
            let step = &q / di.gcd(&q);
            for j in 0..2 {
                k_cols.e[j][i] = &r_mat[j][i] * &step;
            }
        }
        let result = gamma.sublattice_weak(&k_cols, 1)?;
        debug_assert!(gamma.contains_lattice(&result));
        Ok(result)
    }

    /// Is `self` normalized by conjugation with `h`?
    pub fn normalized_by(&self, h: &GroupElement) -> bool {
        self.conjugate_by(h).equal(self)
    }
}

impl std::fmt::Display for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Lattice(B = {}, offsets = ({}, {}), xi = {})",
            self.basis, self.r[0], self.r[1], self.xi
        )
    }
}
