//! Exact 2x2 matrices over [`Scalar`], integer matrices, Smith normal form,
//! and rank-2 plane lattices with exact membership / sum / intersection.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A 2x2 integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix2 {
    pub e: [[BigInt; 2]; 2],
}

impl IntMatrix2 {
    pub fn new(e: [[i64; 2]; 2]) -> Self {
        IntMatrix2 {
            e: [
                [BigInt::from(e[0][0]), BigInt::from(e[0][1])],
                [BigInt::from(e[1][0]), BigInt::from(e[1][1])],
            ],
        }
    }

    pub fn identity() -> Self {
        IntMatrix2::new([[1, 0], [0, 1]])
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix2::identity()
    }

    pub fn det(&self) -> BigInt {
        &self.e[0][0] * &self.e[1][1] - &self.e[0][1] * &self.e[1][0]
    }

    pub fn mul(&self, other: &IntMatrix2) -> IntMatrix2 {
        let mut out = IntMatrix2::new([[0, 0], [0, 0]]);
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] =
                    &self.e[i][0] * &other.e[0][j] + &self.e[i][1] * &other.e[1][j];
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix2 {
        IntMatrix2 {
            e: [
                [self.e[0][0].clone(), self.e[1][0].clone()],
                [self.e[0][1].clone(), self.e[1][1].clone()],
            ],
        }
    }

    /// adj(M) with M * adj(M) = det(M) * I.
    pub fn adjugate(&self) -> IntMatrix2 {
        IntMatrix2 {
            e: [
                [self.e[1][1].clone(), -self.e[0][1].clone()],
                [-self.e[1][0].clone(), self.e[0][0].clone()],
            ],
        }
    }

    pub fn mul_vec(&self, v: &[BigInt; 2]) -> [BigInt; 2] {
        [
            &self.e[0][0] * &v[0] + &self.e[0][1] * &v[1],
            &self.e[1][0] * &v[0] + &self.e[1][1] * &v[1],
        ]
    }

    pub fn pow(&self, n: u32) -> IntMatrix2 {
        let mut out = IntMatrix2::identity();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn to_mat2(&self) -> Mat2 {
        Mat2::new([
            [
                Scalar::from_bigint(self.e[0][0].clone()),
                Scalar::from_bigint(self.e[0][1].clone()),
            ],
            [
                Scalar::from_bigint(self.e[1][0].clone()),
                Scalar::from_bigint(self.e[1][1].clone()),
            ],
        ])
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

/// A 2x2 matrix over [`Scalar`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2 {
    pub e: [[Scalar; 2]; 2],
}

impl Mat2 {
    pub fn new(e: [[Scalar; 2]; 2]) -> Self {
        Mat2 { e }
    }

    pub fn identity() -> Self {
        Mat2::from_i64([[1, 0], [0, 1]])
    }

    pub fn from_i64(e: [[i64; 2]; 2]) -> Self {
        Mat2::new([
            [Scalar::from_int(e[0][0]), Scalar::from_int(e[0][1])],
            [Scalar::from_int(e[1][0]), Scalar::from_int(e[1][1])],
        ])
    }

    pub fn diagonal(a: Scalar, b: Scalar) -> Self {
        Mat2::new([
            [a, Scalar::zero()],
            [Scalar::zero(), b],
        ])
    }

    pub fn det(&self) -> Scalar {
        &(&self.e[0][0] * &self.e[1][1]) - &(&self.e[0][1] * &self.e[1][0])
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new([
            [self.e[0][0].clone(), self.e[1][0].clone()],
            [self.e[0][1].clone(), self.e[1][1].clone()],
        ])
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::from_i64([[0, 0], [0, 0]]);
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = &(&self.e[i][0] * &other.e[0][j])
                    + &(&self.e[i][1] * &other.e[1][j]);
            }
        }
        out
    }

    pub fn mul_int(&self, other: &IntMatrix2) -> Mat2 {
        self.mul(&other.to_mat2())
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        let inv = det.inverse()?;
        Some(Mat2::new([
            [&self.e[1][1] * &inv, -&(&self.e[0][1] * &inv)],
            [-&(&self.e[1][0] * &inv), &self.e[0][0] * &inv],
        ]))
    }

    pub fn mul_vec(&self, v: &[Scalar; 2]) -> [Scalar; 2] {
        [
            &(&self.e[0][0] * &v[0]) + &(&self.e[0][1] * &v[1]),
            &(&self.e[1][0] * &v[0]) + &(&self.e[1][1] * &v[1]),
        ]
    }

    pub fn scale(&self, s: &Scalar) -> Mat2 {
        Mat2::new([
            [&self.e[0][0] * s, &self.e[0][1] * s],
            [&self.e[1][0] * s, &self.e[1][1] * s],
        ])
    }

    pub fn column(&self, j: usize) -> [Scalar; 2] {
        [self.e[0][j].clone(), self.e[1][j].clone()]
    }

    pub fn is_integral(&self) -> bool {
        self.e.iter().flatten().all(|x| x.is_integer())
    }

    /// All entries rational (no sqrt part)?
    pub fn is_rational(&self) -> bool {
        self.e.iter().flatten().all(|x| x.is_rational())
    }

    /// Is this an integer matrix with determinant +-1?
    pub fn is_unimodular(&self) -> bool {
        self.is_integral() && self.det().abs() == Scalar::one()
    }

    pub fn to_int(&self) -> Option<IntMatrix2> {
        let mut out = IntMatrix2::new([[0, 0], [0, 0]]);
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][j].to_integer()?;
            }
        }
        Some(out)
    }

    /// Factor the matrix as `scale * R` with `R` rational, where `scale` is
    /// the first nonzero entry.  Fails when entries are not all scalar
    /// multiples of one common (possibly irrational) scale.
    pub fn scalar_rational_split(&self) -> Result<(Scalar, Mat2)> {
        let scale = self
            .e
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .cloned()
            .ok_or_else(|| Error::domain("zero matrix has no scale"))?;
        let inv = scale.inverse().expect("nonzero");
        let r = self.scale(&inv);
        if r.is_rational() {
            Ok((scale, r))
        } else {
            Err(Error::unsupported(
                "matrix is not a scalar multiple of a rational matrix",
            ))
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

/// Smith normal form of a square integer matrix `m` (any rank):
/// returns `(l, d, r)` with `l * m * r = d`, `l` and `r` unimodular, and `d`
/// diagonal with `d[0][0] | d[1][1] | ...`, diagonal entries nonnegative.
pub fn smith_normal_form(
    m: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut d: Vec<Vec<BigInt>> = m.to_vec();
    let mut l = eye(n);
    let mut r = eye(n);

    for t in 0..n {
        loop {
            // Find a pivot with smallest nonzero absolute value in the
            // trailing submatrix and move it to (t, t).
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !d[i][j].is_zero()
                        && pivot
                            .map(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                            .unwrap_or(true)
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // trailing block all zero
                return (l, d, r);
            };
            if pi != t {
                d.swap(pi, t);
                l.swap(pi, t);
            }
            if pj != t {
                for row in d.iter_mut() {
                    row.swap(pj, t);
                }
                for row in r.iter_mut() {
                    row.swap(pj, t);
                }
            }
            // Eliminate column t below the pivot and row t right of it.
            let mut clean = true;
            for i in (t + 1)..n {
                if !d[i][t].is_zero() {
                    let q = div_round(&d[i][t], &d[t][t]);
                    row_sub(&mut d, i, t, &q);
                    row_sub(&mut l, i, t, &q);
                    if !d[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in (t + 1)..n {
                if !d[t][j].is_zero() {
                    let q = div_round(&d[t][j], &d[t][t]);
                    col_sub(&mut d, j, t, &q);
                    col_sub(&mut r, j, t, &q);
                    if !d[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the pivot into the trailing block.
            let mut fixed = true;
            'outer: for i in (t + 1)..n {
                for j in (t + 1)..n {
                    if !(&d[i][j] % &d[t][t]).is_zero() {
                        // Add row i to row t so the remainder shows up in row t.
                        let one = BigInt::from(-1);
                        row_sub(&mut d, t, i, &one);
                        row_sub(&mut l, t, i, &one);
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    // Normalize signs on the diagonal.
    for t in 0..n {
        if d[t][t].is_negative() {
            for j in 0..n {
                let v = -d[j][t].clone();
                d[j][t] = v;
                let v = -r[j][t].clone();
                r[j][t] = v;
            }
        }
    }
    (l, d, r)
}

fn eye(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Rounded division minimizing the remainder.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    // Adjust so |a - q*b| <= |b|/2 when possible (not required for
    // correctness, only convergence speed).
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// row_i -= q * row_t
fn row_sub(m: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let row_t = m[t].clone();
    for (x, y) in m[i].iter_mut().zip(row_t.iter()) {
        *x -= q * y;
    }
}

/// col_j -= q * col_t
fn col_sub(m: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let v = &row[j] - q * &row[t];
        row[j] = v;
    }
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for (k, bk) in b.iter().enumerate() {
                out[i][j] += &a[i][k] * &bk[j];
            }
        }
    }
    out
}

pub fn mat_det(m: &[Vec<BigInt>]) -> BigInt {
    // Fraction-free Gaussian elimination (Bareiss) — fine for the small
    // matrices used here.
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Column-style Hermite reduction: given generating columns (each a pair of
/// big rationals times a common denominator handled by the caller as
/// integers), produce a 2x2 integer basis of the lattice they generate.
/// Returns `None` when the columns span rank < 2.
pub fn column_basis(cols: &[[BigInt; 2]]) -> Option<IntMatrix2> {
    // Work with column vectors; reduce to two columns by repeated gcd steps.
    let mut v: Vec<[BigInt; 2]> = cols
        .iter()
        .filter(|c| !(c[0].is_zero() && c[1].is_zero()))
        .cloned()
        .collect();
    if v.is_empty() {
        return None;
    }
    // First, make all but one column have zero first coordinate using the
    // extended gcd on first coordinates.
    loop {
        // Find two columns with nonzero first coordinate.
        let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i][0].is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let (i, j) = (nz[0], nz[1]);
        // Reduce column j by column i (or vice versa) via Euclid.
        if v[i][0].abs() <= v[j][0].abs() {
            let q = div_round(&v[j][0].clone(), &v[i][0].clone());
            v[j][0] = &v[j][0] - &q * &v[i][0];
            v[j][1] = &v[j][1] - &q * &v[i][1];
        } else {
            let q = div_round(&v[i][0].clone(), &v[j][0].clone());
            v[i][0] = &v[i][0] - &q * &v[j][0];
            v[i][1] = &v[i][1] - &q * &v[j][1];
        }
        v.retain(|c| !(c[0].is_zero() && c[1].is_zero()));
    }
    let first = v.iter().position(|c| !c[0].is_zero());
    // gcd the second coordinates of the columns with zero first coordinate.
    let mut second = BigInt::zero();
    for (i, c) in v.iter().enumerate() {
        if Some(i) != first {
            second = second.gcd(&c[1]);
        }
    }
    let first = first?;
    if second.is_zero() {
        return None; // rank 1
    }
    let mut b0 = v[first].clone();
    // Reduce b0's second coordinate modulo `second` for a tidy basis.
    let q = b0[1].div_floor(&second);
    b0[1] -= q * &second;
    Some(IntMatrix2 {
        e: [
            [b0[0].clone(), BigInt::zero()],
            [b0[1].clone(), second],
        ],
    })
}

/// A rank-2 lattice in the plane, given by an invertible basis matrix whose
/// columns generate it.
#[derive(Clone, Debug)]
pub struct PlaneLattice {
    basis: Mat2,
}

impl PlaneLattice {
    pub fn new(basis: Mat2) -> Result<Self> {
        if basis.det().is_zero() {
            return Err(Error::domain("plane lattice basis must be invertible"));
        }
        Ok(PlaneLattice { basis })
    }

    pub fn standard() -> Self {
        PlaneLattice {
            basis: Mat2::identity(),
        }
    }

    pub fn basis(&self) -> &Mat2 {
        &self.basis
    }

    pub fn det(&self) -> Scalar {
        self.basis.det()
    }

    /// Coordinates of `v` with respect to the basis.
    pub fn coordinates(&self, v: &[Scalar; 2]) -> [Scalar; 2] {
        self.basis
            .inverse()
            .expect("invertible by construction")
            .mul_vec(v)
    }

    pub fn contains(&self, v: &[Scalar; 2]) -> bool {
        let c = self.coordinates(v);
        c[0].is_integer() && c[1].is_integer()
    }

    pub fn contains_lattice(&self, other: &PlaneLattice) -> bool {
        let t = self
            .basis
            .inverse()
            .expect("invertible")
            .mul(&other.basis);
        t.is_integral()
    }

    /// Same subgroup of the plane?  True iff the basis change matrix is
    /// integral with determinant +-1.
    pub fn same_lattice(&self, other: &PlaneLattice) -> bool {
        let t = self
            .basis
            .inverse()
            .expect("invertible")
            .mul(&other.basis);
        t.is_unimodular()
    }

    /// The dual lattice `{w : <w, v> in Z for all v}` with respect to the
    /// standard inner product: basis `(B^T)^{-1}`.
    pub fn dual(&self) -> PlaneLattice {
        PlaneLattice {
            basis: self
                .basis
                .transpose()
                .inverse()
                .expect("invertible"),
        }
    }

    /// Index `[self : other]` when `other` is a finite-index sublattice.
    pub fn index_of_sublattice(&self, other: &PlaneLattice) -> Result<BigInt> {
        if !self.contains_lattice(other) {
            return Err(Error::domain("not a sublattice"));
        }
        let t = self
            .basis
            .inverse()
            .expect("invertible")
            .mul(&other.basis);
        Ok(t.det().abs().to_integer().expect("integral change of basis"))
    }

    /// Factor the basis as a common scale times a rational lattice.
    pub fn scale_split(&self) -> Result<(Scalar, PlaneLattice)> {
        let (scale, r) = self.basis.scalar_rational_split()?;
        Ok((scale, PlaneLattice::new(r)?))
    }

    /// Sum of two plane lattices.  Supported when the two are commensurable:
    /// both scalar multiples of rational lattices with a rational ratio of
    /// scales.  Otherwise the sum is not discrete and an error is returned.
    pub fn sum(&self, other: &PlaneLattice) -> Result<PlaneLattice> {
        let (s1, r1) = self.scale_split()?;
        let (s2, r2) = other.scale_split()?;
        let ratio = &s2 / &s1;
        if !ratio.is_rational() {
            return Err(Error::unsupported(
                "sum of incommensurable plane lattices is not a lattice",
            ));
        }
        // Everything lives in s1 * (rational plane): collect four columns.
        let r2_scaled = r2.basis().scale(&ratio);
        let cols_mat = [r1.basis().clone(), r2_scaled];
        // Common denominator of all entries.
        let mut den = BigInt::one();
        for m in &cols_mat {
            for x in m.e.iter().flatten() {
                let q = x.to_rational().expect("rational by construction");
                den = den.lcm(q.denom());
            }
        }
        let mut cols: Vec<[BigInt; 2]> = Vec::new();
        for m in &cols_mat {
            for j in 0..2 {
                let c = m.column(j);
                cols.push([
                    scaled_int(&c[0], &den),
                    scaled_int(&c[1], &den),
                ]);
            }
        }
        let b = column_basis(&cols).ok_or_else(|| Error::domain("sum is not rank 2"))?;
        let scale = &s1 / &Scalar::from_bigint(den);
        PlaneLattice::new(b.to_mat2().scale(&scale))
    }

    /// Intersection.  Returns `None` for the trivial intersection `{0}`
    /// (incommensurable scales); errors only on unsupported shapes.
    pub fn intersection(&self, other: &PlaneLattice) -> Result<Option<PlaneLattice>> {
        let (s1, _) = self.scale_split()?;
        let (s2, _) = other.scale_split()?;
        if !(&s2 / &s1).is_rational() {
            return Ok(None);
        }
        // dual of (dual + dual)
        let d = self.dual().sum(&other.dual())?;
        Ok(Some(d.dual()))
    }
}

fn scaled_int(x: &Scalar, den: &BigInt) -> BigInt {
    let q = x.to_rational().expect("rational entry");
    let scaled = q * BigRational::from_integer(den.clone());
    debug_assert!(scaled.is_integer());
    scaled.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn to_big(m: [[i64; 3]; 3]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&x| big(x)).collect())
            .collect()
    }

    #[test]
    fn snf_diagonalizes_with_divisibility() {
        let m = to_big([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]);
        let (l, d, r) = smith_normal_form(&m);
        // l * m * r == d
        assert_eq!(mat_mul(&mat_mul(&l, &m), &r), d);
        assert_eq!(mat_det(&l).abs(), big(1));
        assert_eq!(mat_det(&r).abs(), big(1));
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(d[i][j].is_zero());
                }
            }
        }
        assert!(!d[0][0].is_negative());
        for i in 0..2 {
            if !d[i + 1][i + 1].is_zero() {
                assert!((&d[i + 1][i + 1] % &d[i][i]).is_zero());
            }
        }
        // |det| preserved up to sign
        assert_eq!(mat_det(&d).abs(), mat_det(&m).abs());
    }

    #[test]
    fn snf_handles_singular_matrices() {
        let m = to_big([[1, 2, 3], [2, 4, 6], [0, 0, 0]]);
        let (l, d, r) = smith_normal_form(&m);
        assert_eq!(mat_mul(&mat_mul(&l, &m), &r), d);
        assert!(d[1][1].is_zero() && d[2][2].is_zero());
    }

    #[test]
    fn plane_lattice_membership_and_dual() {
        let l = PlaneLattice::new(Mat2::from_i64([[2, 1], [0, 3]])).unwrap();
        assert!(l.contains(&[Scalar::from_int(2), Scalar::from_int(0)]));
        assert!(l.contains(&[Scalar::from_int(3), Scalar::from_int(3)]));
        assert!(!l.contains(&[Scalar::from_int(1), Scalar::from_int(0)]));
        // dual of dual is the original
        assert!(l.dual().dual().same_lattice(&l));
        // <dual, primal> integral
        let d = l.dual();
        for i in 0..2 {
            for j in 0..2 {
                let dot = &(&d.basis().column(i)[0] * &l.basis().column(j)[0])
                    + &(&d.basis().column(i)[1] * &l.basis().column(j)[1]);
                assert!(dot.is_integer());
            }
        }
    }

    #[test]
    fn sum_and_intersection_of_rational_lattices() {
        // 2Z^2 + 3Z^2 = Z^2 ; 2Z^2 /\ 3Z^2 = 6Z^2
        let a = PlaneLattice::new(Mat2::from_i64([[2, 0], [0, 2]])).unwrap();
        let b = PlaneLattice::new(Mat2::from_i64([[3, 0], [0, 3]])).unwrap();
        let s = a.sum(&b).unwrap();
        assert!(s.same_lattice(&PlaneLattice::standard()));
        let i = a.intersection(&b).unwrap().unwrap();
        assert!(i.same_lattice(
            &PlaneLattice::new(Mat2::from_i64([[6, 0], [0, 6]])).unwrap()
        ));
    }

    #[test]
    fn intersection_of_incommensurable_scales_is_trivial() {
        let a = PlaneLattice::standard();
        let r2 = Scalar::quad_ratio(0, 1, 1, 1, 2);
        let b = PlaneLattice::new(Mat2::identity().scale(&r2)).unwrap();
        assert!(a.intersection(&b).unwrap().is_none());
    }

    #[test]
    fn index_of_sublattice_is_det_ratio() {
        let a = PlaneLattice::standard();
        let b = PlaneLattice::new(Mat2::from_i64([[2, 1], [0, 3]])).unwrap();
        assert_eq!(a.index_of_sublattice(&b).unwrap(), big(6));
    }

    #[test]
    fn column_basis_spans_generators() {
        let cols = vec![
            [big(4), big(0)],
            [big(6), big(2)],
            [big(0), big(10)],
        ];
        let b = column_basis(&cols).unwrap();
        let lat = PlaneLattice::new(b.to_mat2()).unwrap();
        for c in &cols {
            assert!(lat.contains(&[
                Scalar::from_bigint(c[0].clone()),
                Scalar::from_bigint(c[1].clone())
            ]));
        }
        // determinant = index of the generated lattice in Z^2 must divide
        // any pairwise 2x2 determinant of generators (here gcd of dets = 8... just check det | 8)
        let det = b.det().abs();
        assert_eq!(big(8) % det, big(0));
    }
}
