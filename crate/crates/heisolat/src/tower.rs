//! Nested decreasing sequences of Heisenberg lattices ("towers"), the data
//! of a Heisenberg odometer: validation, level materialization, limit
//! invariants (a plane group and a line group of frequencies), freeness,
//! normal covers, and reconstruction of a tower from its invariants.
//!
//! A tower is a nonempty finite list of nested lattices (the *prefix*),
//! optionally continued forever by a *tail rule* `(P, z)`: each further
//! level is generated by the words of the previous level's generators with
//! exponents from the columns of `P`, together with `c(z·xi)`.  Operations
//! whose answer depends on the infinite limit return depth-qualified
//! verdicts when the tower has no tail rule; with a tail rule most limit
//! questions become finite-state and are decided exactly.

use std::collections::HashSet;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::heis::GroupElement;
use crate::lattice::Lattice;
use crate::matrix::{IntMatrix2, Mat2, PlaneLattice};
use crate::scalar::Scalar;
use crate::supernatural::LineGroup;

/// Three-valued answer of a limit question.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Yes => write!(f, "yes"),
            Answer::No => write!(f, "no"),
            Answer::Unknown => write!(f, "unknown"),
        }
    }
}

/// A verdict with an optional depth qualifier and a human-readable note
/// (witness, certificate, or explanation).
#[derive(Clone, Debug)]
pub struct Verdict {
    pub answer: Answer,
    /// `None` means the verdict is exact (holds for the full infinite
    /// tower); `Some(d)` qualifies it as verified through depth `d` only.
    pub at_depth: Option<u32>,
    pub note: String,
}

impl Verdict {
    pub fn yes(note: impl Into<String>) -> Self {
        Verdict {
            answer: Answer::Yes,
            at_depth: None,
            note: note.into(),
        }
    }

    pub fn yes_at(depth: u32, note: impl Into<String>) -> Self {
        Verdict {
            answer: Answer::Yes,
            at_depth: Some(depth),
            note: note.into(),
        }
    }

    pub fn no(note: impl Into<String>) -> Self {
        Verdict {
            answer: Answer::No,
            at_depth: None,
            note: note.into(),
        }
    }

    pub fn no_at(depth: u32, note: impl Into<String>) -> Self {
        Verdict {
            answer: Answer::No,
            at_depth: Some(depth),
            note: note.into(),
        }
    }

    pub fn unknown_at(depth: u32, note: impl Into<String>) -> Self {
        Verdict {
            answer: Answer::Unknown,
            at_depth: Some(depth),
            note: note.into(),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }

    pub fn is_unknown(&self) -> bool {
        self.answer == Answer::Unknown
    }

    pub fn is_exact(&self) -> bool {
        self.at_depth.is_none()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.at_depth {
            None => write!(f, "{} (exact): {}", self.answer, self.note),
            Some(d) => write!(f, "{} (through depth {d}): {}", self.answer, self.note),
        }
    }
}

/// Result of comparing two (possibly infinitely presented) groups.
#[derive(Clone, Debug)]
pub enum Compare {
    Equal { certificate: String, exact: bool },
    NotEqual { witness: String },
    UnknownAtDepth { depth: u32, note: String },
}

impl Compare {
    pub fn is_equal(&self) -> bool {
        matches!(self, Compare::Equal { .. })
    }

    pub fn is_not_equal(&self) -> bool {
        matches!(self, Compare::NotEqual { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Compare::UnknownAtDepth { .. })
    }
}

impl fmt::Display for Compare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Compare::Equal { certificate, exact } => write!(
                f,
                "equal ({}): {certificate}",
                if *exact { "exact" } else { "at depth" }
            ),
            Compare::NotEqual { witness } => write!(f, "not equal: {witness}"),
            Compare::UnknownAtDepth { depth, note } => {
                write!(f, "unknown through depth {depth}: {note}")
            }
        }
    }
}

/// Membership of a vector in an increasing union of plane lattices.
#[derive(Clone, Debug)]
pub enum Membership {
    In { level: u32 },
    NotIn { note: String },
    UnknownAtDepth(u32),
}

impl Membership {
    pub fn is_in(&self) -> bool {
        matches!(self, Membership::In { .. })
    }

    pub fn is_not_in(&self) -> bool {
        matches!(self, Membership::NotIn { .. })
    }
}

/// An increasing union of rank-2 plane lattices, optionally continued
/// forever by an integral tail step: if the primal projections evolve by
/// the integer matrix `P`, their duals evolve by `(P^T)^{-1}` — that is the
/// co-rule applied beyond the stored chain.
///
/// With a tail step membership is decidable exactly: the coordinates of a
/// candidate vector evolve by the integer matrix `P^T` modulo a fixed
/// denominator, a finite state space, so cycle detection settles the
/// question.  Without one the union is known only through the stored depth.
#[derive(Clone, Debug)]
pub struct PlaneGroup {
    levels: Vec<PlaneLattice>,
    tail_step: Option<IntMatrix2>,
}

impl PlaneGroup {
    pub fn new(levels: Vec<PlaneLattice>, tail_step: Option<IntMatrix2>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::domain("plane group needs at least one level"));
        }
        for (j, w) in levels.windows(2).enumerate() {
            if !w[1].contains_lattice(&w[0]) {
                return Err(Error::domain(format!(
                    "plane chain not increasing at step {} -> {}",
                    j + 1,
                    j + 2
                )));
            }
        }
        if let Some(p) = &tail_step {
            let det = p.det();
            if det.is_zero() {
                return Err(Error::domain("plane tail step must be invertible"));
            }
            if det.abs() == BigInt::one() && !p.is_identity() {
                return Err(Error::domain(
                    "a unimodular plane tail step must be the identity (constant continuation)",
                ));
            }
        }
        Ok(PlaneGroup { levels, tail_step })
    }

    pub fn from_level(level: PlaneLattice, tail_step: Option<IntMatrix2>) -> Result<Self> {
        PlaneGroup::new(vec![level], tail_step)
    }

    pub fn levels(&self) -> &[PlaneLattice] {
        &self.levels
    }

    pub fn tail_step(&self) -> Option<&IntMatrix2> {
        self.tail_step.as_ref()
    }

    /// Is the full union known (tail step present)?
    pub fn exhaustive(&self) -> bool {
        self.tail_step.is_some()
    }

    fn corule(&self) -> Option<Mat2> {
        self.tail_step
            .as_ref()
            .map(|p| p.transpose().to_mat2().inverse().expect("invertible"))
    }

    /// The chain materialized through `n` levels (capped at the stored depth
    /// when there is no tail step).
    pub fn materialized(&self, n: usize) -> Vec<PlaneLattice> {
        let mut out = self.levels.clone();
        if let Some(co) = self.corule() {
            while out.len() < n {
                let next = out.last().expect("nonempty").basis().mul(&co);
                out.push(PlaneLattice::new(next).expect("invertible"));
            }
        }
        out
    }

    /// Level `j` (1-based), materialized through the tail step as needed.
    pub fn level(&self, j: usize) -> Result<PlaneLattice> {
        if j == 0 {
            return Err(Error::domain("levels are numbered from 1"));
        }
        if j <= self.levels.len() {
            return Ok(self.levels[j - 1].clone());
        }
        if self.tail_step.is_none() {
            return Err(Error::domain(
                "level beyond the stored chain with no tail step",
            ));
        }
        Ok(self.materialized(j).pop().expect("materialized"))
    }

    /// Exact membership of a plane vector in the union.
    pub fn contains(&self, v: &[Scalar; 2]) -> Membership {
        for (j, lvl) in self.levels.iter().enumerate() {
            if lvl.contains(v) {
                return Membership::In {
                    level: (j + 1) as u32,
                };
            }
        }
        let n = self.levels.len() as u32;
        let Some(p) = &self.tail_step else {
            return Membership::UnknownAtDepth(n);
        };
        if p.is_identity() {
            return Membership::NotIn {
                note: "the chain is constant beyond its last level".into(),
            };
        }
        let w = self.levels.last().expect("nonempty").coordinates(v);
        let (Some(w0), Some(w1)) = (w[0].to_rational(), w[1].to_rational()) else {
            return Membership::NotIn {
                note: "coordinates stay irrational under the integral tail step".into(),
            };
        };
        let q = w0.denom().lcm(w1.denom());
        let pt = p.transpose();
        let mut state = [
            (w0.numer() * (&q / w0.denom())).mod_floor(&q),
            (w1.numer() * (&q / w1.denom())).mod_floor(&q),
        ];
        let mut seen: HashSet<(BigInt, BigInt)> = HashSet::new();
        let mut m = 0u32;
        loop {
            if state[0].is_zero() && state[1].is_zero() {
                return Membership::In { level: n + m };
            }
            if !seen.insert((state[0].clone(), state[1].clone())) {
                return Membership::NotIn {
                    note: format!(
                        "coordinate residues cycle without reaching zero (modulus {q})"
                    ),
                };
            }
            let next = pt.mul_vec(&state);
            state = [next[0].mod_floor(&q), next[1].mod_floor(&q)];
            m += 1;
        }
    }

    /// The line group generated by the absolute covolumes `|det|` of the
    /// levels; it always contains the frequency line group of any tower
    /// realizing this plane group.
    pub fn tau(&self) -> Result<LineGroup> {
        let chain: Vec<Scalar> = self.levels.iter().map(|l| l.det().abs()).collect();
        match &self.tail_step {
            None => LineGroup::from_union(&chain, None),
            Some(p) if p.is_identity() => {
                let mut g = LineGroup::from_union(&chain, None)?;
                g.exhaustive = true;
                Ok(g)
            }
            Some(p) => {
                let z = u64::try_from(&p.det().abs())
                    .map_err(|_| Error::unsupported("tail determinant too large"))?;
                LineGroup::from_union(&chain, Some(z))
            }
        }
    }

    /// Compare two unions through the given depth.  A definite separating
    /// vector yields `NotEqual`; matching cofinal subsequences with
    /// compatible tail steps yield an exact `Equal` certificate; two
    /// depth-bounded chains generating the same deepest level are `Equal`
    /// at depth.
    pub fn compare(&self, other: &PlaneGroup, depth: u32) -> Compare {
        let d = (depth as usize)
            .max(self.levels.len())
            .max(other.levels.len());
        let xs = self.materialized(d);
        let ys = other.materialized(d);
        for lat in &xs {
            for j in 0..2 {
                let col = lat.basis().column(j);
                if let Membership::NotIn { .. } = other.contains(&col) {
                    return Compare::NotEqual {
                        witness: format!(
                            "({}, {}) lies in the first group only",
                            col[0], col[1]
                        ),
                    };
                }
            }
        }
        for lat in &ys {
            for j in 0..2 {
                let col = lat.basis().column(j);
                if let Membership::NotIn { .. } = self.contains(&col) {
                    return Compare::NotEqual {
                        witness: format!(
                            "({}, {}) lies in the second group only",
                            col[0], col[1]
                        ),
                    };
                }
            }
        }
        match (&self.tail_step, &other.tail_step) {
            (Some(p), Some(q)) => {
                // The tail applies from the last stored level, so alignment
                // candidates must sit at or beyond it on both sides.
                let a0 = self.levels.len() - 1;
                let b0 = other.levels.len() - 1;
                for t in 1..=8u32 {
                    for u in 1..=8u32 {
                        if p.pow(t) != q.pow(u) {
                            continue;
                        }
                        for (a, la) in xs.iter().enumerate().skip(a0) {
                            for (b, lb) in ys.iter().enumerate().skip(b0) {
                                if la.same_lattice(lb) {
                                    return Compare::Equal {
                                        certificate: format!(
                                            "level {} of the first chain equals level {} of the second, and the tail steps agree after {} and {} applications respectively",
                                            a + 1, b + 1, t, u
                                        ),
                                        exact: true,
                                    };
                                }
                            }
                        }
                    }
                }
                Compare::UnknownAtDepth {
                    depth: d as u32,
                    note: "mutual inclusion holds through the inspected depth but no alignment certificate was found".into(),
                }
            }
            (None, None) => {
                if xs.last().unwrap().same_lattice(ys.last().unwrap()) {
                    Compare::Equal {
                        certificate: format!(
                            "the chains generate the same subgroup through depth {d}"
                        ),
                        exact: false,
                    }
                } else {
                    Compare::UnknownAtDepth {
                        depth: d as u32,
                        note: "no separating vector found; the deepest levels differ and neither chain has a tail step".into(),
                    }
                }
            }
            _ => Compare::UnknownAtDepth {
                depth: d as u32,
                note: "one chain has a tail step and the other is depth-bounded; no separating vector found".into(),
            },
        }
    }

    pub fn describe(&self) -> String {
        let last = self.levels.last().expect("nonempty");
        match &self.tail_step {
            None => format!(
                "union of {} plane lattices, deepest basis {} (depth-bounded)",
                self.levels.len(),
                last.basis()
            ),
            Some(p) if p.is_identity() => {
                format!("plane lattice with basis {} (constant)", last.basis())
            }
            Some(p) => format!(
                "increasing union from basis {} under the dual of the tail step {}",
                last.basis(),
                p
            ),
        }
    }
}

/// Compare two line groups (mutual inclusion of their canonical forms).
pub fn compare_line_groups(a: &LineGroup, b: &LineGroup) -> Compare {
    match (a.subset_of(b), b.subset_of(a)) {
        (Some(true), Some(true)) => Compare::Equal {
            certificate: format!("mutual inclusion: {} = {}", a.describe(), b.describe()),
            exact: a.exhaustive && b.exhaustive,
        },
        (Some(false), _) => Compare::NotEqual {
            witness: a
                .witness_not_in(b)
                .map(|x| format!("{x} lies in the first group only"))
                .unwrap_or_else(|| "inclusion fails".into()),
        },
        (_, Some(false)) => Compare::NotEqual {
            witness: b
                .witness_not_in(a)
                .map(|x| format!("{x} lies in the second group only"))
                .unwrap_or_else(|| "inclusion fails".into()),
        },
        _ => Compare::UnknownAtDepth {
            depth: a.chain.len().max(b.chain.len()) as u32,
            note: "inclusion undecided at this presentation".into(),
        },
    }
}

/// The intersection of all level centers.
#[derive(Clone, Debug)]
pub struct CenterReport {
    /// `None` means the intersection is trivial; `Some(xi)` means it is the
    /// cyclic group generated by `c(xi)`.
    pub generator: Option<Scalar>,
    /// Exact for the infinite tower, or only through the prefix depth.
    pub exact: bool,
}

/// A decreasing tower of lattices with an optional self-similar tail rule.
#[derive(Debug)]
pub struct Tower {
    prefix: Vec<Lattice>,
    tail: Option<(IntMatrix2, u64)>,
    cache: Mutex<Vec<Lattice>>,
}

impl Clone for Tower {
    fn clone(&self) -> Self {
        Tower {
            prefix: self.prefix.clone(),
            tail: self.tail.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl Tower {
    pub fn new(prefix: Vec<Lattice>, tail: Option<(IntMatrix2, u64)>) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::domain("tower needs at least one level"));
        }
        for (j, w) in prefix.windows(2).enumerate() {
            if !w[0].contains_lattice(&w[1]) {
                return Err(Error::domain(format!(
                    "tower levels not nested at step {} -> {}",
                    j + 1,
                    j + 2
                )));
            }
        }
        if let Some((p, z)) = &tail {
            let det = p.det();
            if det.is_zero() {
                return Err(Error::domain("tail matrix must be invertible"));
            }
            if det.abs() == BigInt::one() && !(p.is_identity() && *z == 1) {
                return Err(Error::domain(
                    "a unimodular tail must be the constant rule (identity matrix, step 1)",
                ));
            }
            if *z == 0 || !(det.abs() % BigInt::from(*z)).is_zero() {
                return Err(Error::domain(format!(
                    "tail step z = {z} must divide |det P| = {}",
                    det.abs()
                )));
            }
            // One trial application validates the rule against the last level.
            prefix.last().expect("nonempty").extend(p, *z)?;
        }
        Ok(Tower {
            prefix,
            tail,
            cache: Mutex::new(Vec::new()),
        })
    }

    /// The constant tower repeating one lattice forever.
    pub fn constant(level: Lattice) -> Tower {
        Tower::new(vec![level], Some((IntMatrix2::identity(), 1))).expect("valid")
    }

    pub fn prefix(&self) -> &[Lattice] {
        &self.prefix
    }

    pub fn prefix_len(&self) -> u32 {
        self.prefix.len() as u32
    }

    pub fn tail(&self) -> Option<&(IntMatrix2, u64)> {
        self.tail.as_ref()
    }

    pub fn has_tail(&self) -> bool {
        self.tail.is_some()
    }

    pub fn is_eventually_constant(&self) -> bool {
        matches!(&self.tail, Some((p, _)) if p.is_identity())
    }

    /// Level `j` (1-based); materialized through the tail rule and memoized.
    pub fn level(&self, j: u32) -> Result<Lattice> {
        let j = j as usize;
        if j == 0 {
            return Err(Error::domain("levels are numbered from 1"));
        }
        if j <= self.prefix.len() {
            return Ok(self.prefix[j - 1].clone());
        }
        let Some((p, z)) = &self.tail else {
            return Err(Error::domain(format!(
                "level {j} is beyond the prefix and the tower has no tail rule"
            )));
        };
        let mut cache = self.cache.lock().expect("cache lock");
        while cache.len() < j - self.prefix.len() {
            let prev = cache.last().unwrap_or_else(|| self.prefix.last().expect("nonempty"));
            let next = prev.extend(p, *z)?;
            cache.push(next);
        }
        Ok(cache[j - self.prefix.len() - 1].clone())
    }

    /// The two limit invariants: the increasing union of the dual plane
    /// projections, and the increasing union of the inverse central gauges.
    pub fn invariant_groups(&self) -> Result<(PlaneGroup, LineGroup)> {
        let l = self.prefix.len();
        let depth = if self.tail.is_some() { l + 2 } else { l };
        let mut duals = Vec::with_capacity(depth);
        let mut xi_chain = Vec::with_capacity(depth);
        for j in 1..=depth {
            let lat = self.level(j as u32)?;
            duals.push(lat.dual_lattice());
            xi_chain.push(lat.xi().inverse().expect("positive gauge"));
        }
        let plane = PlaneGroup::new(duals, self.tail.as_ref().map(|(p, _)| p.clone()))?;
        let line = match &self.tail {
            None => LineGroup::from_union(&xi_chain, None)?,
            Some((_, 1)) => {
                // Constant gauge forever: the finite union is the whole union.
                let mut g = LineGroup::from_union(&xi_chain, None)?;
                g.exhaustive = true;
                g
            }
            Some((_, z)) => LineGroup::from_union(&xi_chain, Some(*z))?,
        };
        Ok((plane, line))
    }

    /// Does the plane projection shrink infinitely often?
    pub fn is_non_degenerate(&self) -> Verdict {
        match &self.tail {
            Some((p, _)) if !p.is_identity() => Verdict::yes(format!(
                "tail step has |det| = {} >= 2, so the plane projections shrink forever",
                p.det().abs()
            )),
            Some(_) => Verdict::no("constant tail: the plane projections stabilize"),
            None => {
                let l = self.prefix.len();
                let last_change = (1..l)
                    .rev()
                    .find(|&j| {
                        !self.prefix[j]
                            .p_lattice()
                            .same_lattice(&self.prefix[j - 1].p_lattice())
                    })
                    .map(|j| j + 1);
                Verdict::unknown_at(
                    l as u32,
                    match last_change {
                        Some(j) => format!(
                            "plane projection last changed at level {j}; no tail rule to decide the limit"
                        ),
                        None => "plane projection constant through the prefix; no tail rule"
                            .to_string(),
                    },
                )
            }
        }
    }

    /// The intersection of all level centers, `∩ xi_j·Z`.
    pub fn center_intersection(&self) -> Result<CenterReport> {
        let last = self.level(self.prefix_len())?;
        Ok(match &self.tail {
            Some((_, z)) if *z >= 2 => CenterReport {
                generator: None,
                exact: true,
            },
            Some(_) => CenterReport {
                generator: Some(last.xi().clone()),
                exact: true,
            },
            None => CenterReport {
                generator: Some(last.xi().clone()),
                exact: false,
            },
        })
    }

    /// Freeness of the odometer: equivalent to the center meeting the
    /// intersection of all levels trivially.
    pub fn is_free(&self) -> Result<Verdict> {
        let report = self.center_intersection()?;
        if report.exact {
            return Ok(match report.generator {
                None => Verdict::yes(
                    "the central gauges grow without bound, so the center meets the intersection trivially",
                ),
                Some(xi) => Verdict::no(format!(
                    "the intersection of all levels contains the central subgroup generated by c({xi})"
                )),
            });
        }
        let l = self.prefix.len();
        let strictly_increasing = l >= 2
            && self
                .prefix
                .windows(2)
                .all(|w| w[1].xi() > w[0].xi());
        let all_equal = self.prefix.windows(2).all(|w| w[1].xi() == w[0].xi());
        Ok(if strictly_increasing {
            Verdict::yes_at(
                l as u32,
                "central gauge strictly increases at every materialized step",
            )
        } else if l >= 2 && all_equal {
            Verdict::no_at(
                l as u32,
                format!(
                    "central gauge stays {} through the prefix, so c({}) persists at every materialized level",
                    self.prefix[0].xi(),
                    self.prefix[0].xi()
                ),
            )
        } else {
            Verdict::unknown_at(
                l as u32,
                "central gauge neither strictly increases nor stays constant through the prefix",
            )
        })
    }

    /// Is `g` a member of every level?
    pub fn is_in_all_levels(&self, g: &GroupElement) -> Result<Verdict> {
        let l = self.prefix_len();
        for j in 1..=l {
            if !self.level(j)?.contains_element(g) {
                return Ok(Verdict::no(format!("not a member of level {j}")));
            }
        }
        let Some((p, z)) = self.tail.clone() else {
            return Ok(Verdict::yes_at(
                l,
                "member of every materialized level; no tail rule",
            ));
        };
        if p.is_identity() {
            return Ok(Verdict::yes(
                "member of the last level; the tower is constant from there",
            ));
        }
        let last = self.level(l)?;
        if g.is_central() {
            if g.t3.is_zero() {
                return Ok(Verdict::yes("the identity lies in every subgroup"));
            }
            if z == 1 {
                return Ok(Verdict::yes(format!(
                    "central gauge stays {} forever and the element is a multiple of it",
                    last.xi()
                )));
            }
            let zs = Scalar::from_int(z as i64);
            let mut xi = last.xi().clone();
            for m in 1..=4096u32 {
                xi = &xi * &zs;
                if !g.t3.is_integer_multiple_of(&xi) {
                    return Ok(Verdict::no(format!(
                        "central part {} leaves the central gauge at level {}",
                        g.t3,
                        l + m
                    )));
                }
            }
            return Ok(Verdict::unknown_at(
                l + 4096,
                "central divisibility not settled within the inspected window",
            ));
        }
        // Non-central: plane coordinates at the last prefix level must stay
        // integral under P^{-1} forever; for |det P| >= 2 the persistent
        // directions form at most one line, spanned by a unit-eigenvalue
        // eigenvector of P.
        let coords = last.p_lattice().coordinates(&g.p());
        let x = [
            coords[0].to_integer().expect("member of the last level"),
            coords[1].to_integer().expect("member of the last level"),
        ];
        let eigen = unit_eigenvector(&p);
        let on_line = eigen
            .as_ref()
            .map(|(v, _)| (&x[0] * &v[1] - &x[1] * &v[0]).is_zero())
            .unwrap_or(false);
        if !on_line {
            let pinv = p.to_mat2().inverse().expect("invertible");
            let mut y = [
                Scalar::from_bigint(x[0].clone()),
                Scalar::from_bigint(x[1].clone()),
            ];
            for m in 1..=10_000u32 {
                y = pinv.mul_vec(&y);
                if !(y[0].is_integer() && y[1].is_integer()) {
                    return Ok(Verdict::no(format!(
                        "plane part leaves the projection lattice at level {}",
                        l + m
                    )));
                }
            }
            return Ok(Verdict::unknown_at(
                l + 10_000,
                "plane coordinates stayed integral through a long window without a persistence certificate",
            ));
        }
        if z == 1 {
            // On the persistent plane line, with a constant central gauge:
            // the canonical words over the same plane vector at consecutive
            // levels differ by a central element of the previous level, so
            // the central defect changes by multiples of the gauge and
            // membership at the last level propagates to every level.
            return Ok(Verdict::yes(
                "plane part lies on the persistent line and the central gauge is constant",
            ));
        }
        const WINDOW: u32 = 32;
        for m in 1..=WINDOW {
            if !self.level(l + m)?.contains_element(g) {
                return Ok(Verdict::no(format!("fails at level {}", l + m)));
            }
        }
        Ok(Verdict::unknown_at(
            l + WINDOW,
            "member of every level through the inspected window; the central digit sequence here has no finite certificate",
        ))
    }

    /// Does the intersection of all plane projections contain a nonzero
    /// vector?
    pub fn p_intersection_nontrivial(&self) -> Result<Verdict> {
        let l = self.prefix_len();
        let last = self.level(l)?;
        match &self.tail {
            None => {
                let col = last.basis().column(0);
                Ok(Verdict::yes_at(
                    l,
                    format!(
                        "({}, {}) lies in every materialized plane projection",
                        col[0], col[1]
                    ),
                ))
            }
            Some((p, _)) if p.is_identity() => Ok(Verdict::yes(
                "the plane projection is constant from the last level",
            )),
            Some((p, _)) => match unit_eigenvector(p) {
                Some((v, lambda)) => {
                    let w = last.basis().mul_vec(&[
                        Scalar::from_bigint(v[0].clone()),
                        Scalar::from_bigint(v[1].clone()),
                    ]);
                    Ok(Verdict::yes(format!(
                        "({}, {}) spans a line preserved by the tail step (eigenvalue {lambda})",
                        w[0], w[1]
                    )))
                }
                None => Ok(Verdict::no(
                    "the tail step has no unit-eigenvalue direction, so every nonzero vector eventually leaves",
                )),
            },
        }
    }

    /// The levelwise normal cover relative to the first level: level `j`
    /// becomes the intersection of all its conjugates by elements of level 1.
    ///
    /// A tail rule is kept when every prefix level is already normal and
    /// `P/z` is an integer matrix: then normality propagates level by level
    /// (the symplectic pairings against the ambient generators pick up a
    /// factor divisible by `z` at each step).  Otherwise the result is
    /// truncated to a depth-bounded prefix with a few extra levels covered.
    pub fn normal_cover(&self) -> Result<Tower> {
        let base = self.level(1)?;
        let l = self.prefix.len();
        let mut covered = Vec::with_capacity(l);
        let mut all_normal = true;
        for j in 1..=l {
            let lvl = self.level(j as u32)?;
            let cov = Lattice::conjugate_intersection(&base, &lvl)?;
            if !cov.equal(&lvl) {
                all_normal = false;
            }
            covered.push(cov);
        }
        match &self.tail {
            None => Tower::new(covered, None),
            Some((p, z)) => {
                if p.is_identity() {
                    return Tower::new(covered, Some((p.clone(), *z)));
                }
                let zb = BigInt::from(*z);
                let propagates = p.e.iter().flatten().all(|x| (x % &zb).is_zero());
                if all_normal && propagates {
                    Tower::new(self.prefix.clone(), Some((p.clone(), *z)))
                } else {
                    for m in 1..=4u32 {
                        let lvl = self.level(l as u32 + m)?;
                        covered.push(Lattice::conjugate_intersection(&base, &lvl)?);
                    }
                    Tower::new(covered, None)
                }
            }
        }
    }
}

/// A primitive integer eigenvector of `p` with eigenvalue `+1` or `-1`,
/// if one exists.  For `|det p| >= 2` at most one such line exists; it is
/// exactly the set of plane directions that survive every application of
/// the tail rule.
fn unit_eigenvector(p: &IntMatrix2) -> Option<([BigInt; 2], i64)> {
    for lambda in [1i64, -1] {
        let lb = BigInt::from(lambda);
        let m = [
            [&p.e[0][0] - &lb, p.e[0][1].clone()],
            [p.e[1][0].clone(), &p.e[1][1] - &lb],
        ];
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if !det.is_zero() {
            continue;
        }
        let v = if !m[0][0].is_zero() || !m[0][1].is_zero() {
            [m[0][1].clone(), -m[0][0].clone()]
        } else if !m[1][0].is_zero() || !m[1][1].is_zero() {
            [m[1][1].clone(), -m[1][0].clone()]
        } else {
            // p is lambda times the identity
            [BigInt::one(), BigInt::zero()]
        };
        let g = v[0].gcd(&v[1]);
        return Some(([&v[0] / &g, &v[1] / &g], lambda));
    }
    None
}

/// Build a tower realizing the given invariant pair, when possible: the
/// line group must be contained in the covolume group of the plane group.
/// The levels interleave the two chains so the requested central gauge
/// always divides the covolume of the chosen plane projection; each level
/// is generated as a sublattice of the previous one, which pins the plane
/// basis and gauge exactly (the offsets are whatever the generating words
/// produce — the invariants do not see them).
pub fn construct_from_invariants(s: &PlaneGroup, xi: &LineGroup, depth: u32) -> Result<Tower> {
    let tau = s.tau()?;
    if xi.subset_of(&tau) == Some(false) {
        let w = xi
            .witness_not_in(&tau)
            .map(|x| x.to_string())
            .unwrap_or_else(|| "?".into());
        return Err(Error::domain(format!(
            "invariants unsatisfiable: {w} lies in the requested line group but not in the covolume group {} of the plane group",
            tau.describe()
        )));
    }
    let z0 = xi
        .sup
        .infinite_primes()
        .iter()
        .try_fold(1u64, |acc, p| acc.checked_mul(*p))
        .ok_or_else(|| Error::resource("line-group prime support too large"))?;
    let mut ds = xi.chain.clone();
    if ds.is_empty() {
        ds.push(xi.base.clone());
    }
    if xi.exhaustive && z0 > 1 {
        let zs = Scalar::from_int(z0 as i64);
        while ds.len() < depth as usize {
            let next = ds.last().expect("nonempty") / &zs;
            ds.push(next);
        }
    }
    let n = ds.len();
    let s_cap = if s.exhaustive() {
        n + 64
    } else {
        s.levels().len()
    };
    let primal: Vec<PlaneLattice> = s.materialized(s_cap).iter().map(|d| d.dual()).collect();
    let mut levels: Vec<Lattice> = Vec::with_capacity(n);
    let mut l = 0usize;
    for (j, d) in ds.iter().enumerate() {
        let zeta = d
            .inverse()
            .ok_or_else(|| Error::domain("line chain entries must be nonzero"))?
            .abs();
        loop {
            if l >= primal.len() {
                return Err(Error::domain(format!(
                    "cannot realize central gauge {zeta} at the available plane depth"
                )));
            }
            let q = &primal[l].det().abs() / &zeta;
            if q.is_integer() && q.is_positive() {
                break;
            }
            l += 1;
        }
        if j + 1 == n && !s.exhaustive() {
            // Consume the whole depth-bounded plane chain so the roundtrip
            // reproduces it; covolumes only grow down the chain, so the
            // divisibility just established is preserved.
            l = primal.len() - 1;
        }
        let basis = primal[l].basis().clone();
        if levels.is_empty() {
            levels.push(Lattice::new(basis, Scalar::zero(), Scalar::zero(), zeta)?);
        } else {
            let prev = levels.last().expect("nonempty").clone();
            let step = prev
                .basis()
                .inverse()
                .expect("invertible")
                .mul(&basis);
            let q_mat = step
                .to_int()
                .ok_or_else(|| Error::domain("plane chain is not nested integrally"))?;
            let zstep = (&zeta / prev.xi())
                .to_integer()
                .ok_or_else(|| Error::domain("central gauges not nested"))?;
            let zstep = u64::try_from(&zstep)
                .map_err(|_| Error::resource("central gauge step too large"))?;
            levels.push(prev.sublattice_weak(&q_mat, zstep)?);
        }
    }
    let tail = match (s.tail_step(), xi.exhaustive) {
        (Some(p), true) => {
            if p.is_identity() && z0 == 1 {
                Some((IntMatrix2::identity(), 1))
            } else if p.is_identity() {
                return Err(Error::domain(
                    "a constant plane group cannot carry an unbounded line group",
                ));
            } else {
                if !(p.det().abs() % BigInt::from(z0)).is_zero() {
                    return Err(Error::domain(
                        "line-group prime support does not divide the plane tail determinant",
                    ));
                }
                Some((p.clone(), z0))
            }
        }
        _ => None,
    };
    Tower::new(levels, tail)
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({} prefix levels", self.prefix.len())?;
        match &self.tail {
            None => write!(f, ", no tail)"),
            Some((p, z)) => write!(f, ", tail P = {p}, z = {z})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sr(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn validation_rejects_bad_towers() {
        // not nested
        let bad = Tower::new(
            vec![
                Lattice::new(Mat2::from_i64([[2, 0], [0, 2]]), s(0), s(0), s(2)).unwrap(),
                Lattice::h3z(),
            ],
            None,
        );
        assert!(bad.is_err());
        // unimodular non-identity tail
        let bad = Tower::new(
            vec![Lattice::h3z()],
            Some((IntMatrix2::new([[1, 1], [0, 1]]), 1)),
        );
        assert!(bad.is_err());
        // z does not divide det P
        let bad = Tower::new(
            vec![Lattice::h3z()],
            Some((IntMatrix2::new([[2, 0], [0, 1]]), 4)),
        );
        assert!(bad.is_err());
        // constant rule is fine
        assert!(Tower::new(vec![Lattice::h3z()], Some((IntMatrix2::identity(), 1))).is_ok());
    }

    #[test]
    fn levels_materialize_and_nest() {
        let t = catalog::dyadic_tail_tower();
        let l2 = t.level(2).unwrap();
        assert_eq!(l2.xi(), &s(2));
        assert_eq!(l2.k(), BigInt::from(2));
        let l5 = t.level(5).unwrap();
        assert_eq!(l5.xi(), &s(16));
        for j in 1..5 {
            assert!(t.level(j).unwrap().contains_lattice(&t.level(j + 1).unwrap()));
        }
        // beyond a prefix with no tail: error
        let p = catalog::factorial_tower(3).unwrap();
        assert!(p.level(3).is_ok());
        assert!(p.level(4).is_err());
    }

    #[test]
    fn factorial_tower_invariants() {
        let t = catalog::factorial_tower(5).unwrap();
        let (plane, line) = t.invariant_groups().unwrap();
        assert!(!plane.exhaustive());
        assert!(!line.exhaustive);
        assert_eq!(line.chain.len(), 5);
        assert_eq!(line.chain[2], sr(1, 6));
        // freeness: gauges strictly increase after level 1? 1!, 2!, ... yes
        let free = t.is_free().unwrap();
        assert!(free.is_yes() && !free.is_exact());
        // a(1) survives every materialized level; c(1) dies at level 2
        let yes = t.is_in_all_levels(&GroupElement::a(s(1))).unwrap();
        assert!(yes.is_yes());
        let no = t.is_in_all_levels(&GroupElement::c(s(1))).unwrap();
        assert!(no.is_no() && no.is_exact());
        assert!(no.note.contains("level 2"));
        // identity is everywhere
        assert!(t.is_in_all_levels(&GroupElement::identity()).unwrap().is_yes());
    }

    #[test]
    fn line_persistent_tower_properties() {
        let t = catalog::line_persistent_tower(5).unwrap();
        let v = t.p_intersection_nontrivial().unwrap();
        assert!(v.is_yes());
        assert!(v.note.contains("(1, 0)"));
        // the lifted generator c(k_n)a(1) of each level is a member of all
        // shallower levels
        for n in 1..=5u32 {
            let g = t.level(n).unwrap().generator(0);
            for j in 1..=n {
                assert!(t.level(j).unwrap().contains_element(&g));
            }
        }
        // normal cover has plane parts diag(k^2, k^2)
        let cover = t.normal_cover().unwrap();
        let ks = [1i64, 2, 6, 42];
        for (j, k) in ks.iter().enumerate() {
            let k2 = k * k;
            let expect = PlaneLattice::new(Mat2::from_i64([[k2, 0], [0, k2]])).unwrap();
            assert!(
                cover.level(j as u32 + 1).unwrap().p_lattice().same_lattice(&expect),
                "cover level {} plane part",
                j + 1
            );
        }
    }

    #[test]
    fn primorial_tower_is_not_free() {
        let t = catalog::primorial_tower(5).unwrap();
        let free = t.is_free().unwrap();
        assert!(free.is_no() && !free.is_exact());
        let center = t.center_intersection().unwrap();
        assert_eq!(center.generator, Some(s(1)));
        let (plane, line) = t.invariant_groups().unwrap();
        // xi-group is Z at every level
        assert!(line.chain.iter().all(|d| d == &s(1)));
        // covolume group contains the xi-group
        let tau = plane.tau().unwrap();
        assert_eq!(line.subset_of(&tau), Some(true));
    }

    #[test]
    fn dyadic_tail_tower_is_free_and_thin() {
        let t = catalog::dyadic_tail_tower();
        assert!(t.is_non_degenerate().is_yes());
        let free = t.is_free().unwrap();
        assert!(free.is_yes() && free.is_exact());
        assert!(t.center_intersection().unwrap().generator.is_none());
        // no plane vector survives: 2I has no unit eigenvalue
        let p = t.p_intersection_nontrivial().unwrap();
        assert!(p.is_no() && p.is_exact());
        // a(1) leaves at level 2
        let v = t.is_in_all_levels(&GroupElement::a(s(1))).unwrap();
        assert!(v.is_no() && v.is_exact());
        // nonzero central elements leave eventually
        let v = t.is_in_all_levels(&GroupElement::c(s(8))).unwrap();
        assert!(v.is_no() && v.is_exact());
        assert!(t
            .is_in_all_levels(&GroupElement::identity())
            .unwrap()
            .is_yes());
    }

    #[test]
    fn shear_tail_preserves_a_line() {
        // P = [[1,1],[0,2]] fixes (1,0)
        let t = catalog::shear_tail_tower(2).unwrap();
        let p = t.p_intersection_nontrivial().unwrap();
        assert!(p.is_yes() && p.is_exact());
        assert!(p.note.contains("(1, 0)"));
        // a(1): on the persistent line; with growing gauge the verdict is a
        // window-bounded unknown (membership holds at every inspected level)
        let v = t.is_in_all_levels(&GroupElement::a(s(1))).unwrap();
        assert!(v.is_unknown());
        // with constant gauge (z = 1) the same membership is exact
        let t1 = catalog::shear_tail_tower(1).unwrap();
        let v = t1.is_in_all_levels(&GroupElement::a(s(1))).unwrap();
        assert!(v.is_yes() && v.is_exact());
        // b(1) is off the line and leaves
        let v = t1.is_in_all_levels(&GroupElement::b(s(1))).unwrap();
        assert!(v.is_no() && v.is_exact());
    }

    #[test]
    fn constant_tower_verdicts() {
        let t = catalog::constant_tower();
        assert!(t.is_non_degenerate().is_no());
        let free = t.is_free().unwrap();
        assert!(free.is_no() && free.is_exact());
        assert_eq!(t.center_intersection().unwrap().generator, Some(s(1)));
        assert!(t
            .is_in_all_levels(&GroupElement::new(s(3), s(-1), s(2)))
            .unwrap()
            .is_yes());
        assert!(t
            .is_in_all_levels(&GroupElement::a(sr(1, 2)))
            .unwrap()
            .is_no());
        assert!(t.p_intersection_nontrivial().unwrap().is_yes());
        // cover of a normal constant tower is itself
        let cover = t.normal_cover().unwrap();
        assert!(cover.level(3).unwrap().equal(&t.level(3).unwrap()));
    }

    #[test]
    fn plane_group_membership_with_tail() {
        let t = catalog::dyadic_tail_tower();
        let (plane, _) = t.invariant_groups().unwrap();
        // duals are 2^{-m} Z^2: (1/8, 3/8) enters at a finite level
        let m = plane.contains(&[sr(1, 8), sr(3, 8)]);
        assert!(m.is_in());
        // (1/3, 0) never enters
        let m = plane.contains(&[sr(1, 3), s(0)]);
        assert!(m.is_not_in());
        // irrational vectors never enter
        let r2 = Scalar::quad_ratio(0, 1, 1, 1, 2);
        assert!(plane.contains(&[r2, s(0)]).is_not_in());
    }

    #[test]
    fn tau_of_dyadic_duals() {
        let t = catalog::dyadic_tail_tower();
        let (plane, line) = t.invariant_groups().unwrap();
        let tau = plane.tau().unwrap();
        assert!(tau.exhaustive);
        assert_eq!(
            tau.sup.infinite_primes().into_iter().collect::<Vec<_>>(),
            vec![2]
        );
        assert!(tau.contains(&sr(1, 1024)));
        assert!(!tau.contains(&sr(1, 3)));
        // the frequency line group sits inside the covolume group
        assert_eq!(line.subset_of(&tau), Some(true));
    }

    #[test]
    fn compare_plane_groups() {
        let dyadic = catalog::dyadic_tail_tower().invariant_groups().unwrap().0;
        // triadic counterpart
        let triadic = Tower::new(
            vec![Lattice::h3z()],
            Some((IntMatrix2::new([[3, 0], [0, 3]]), 3)),
        )
        .unwrap()
        .invariant_groups()
        .unwrap()
        .0;
        match dyadic.compare(&triadic, 6) {
            Compare::NotEqual { witness } => assert!(witness.contains("1/2")),
            other => panic!("expected NotEqual, got {other}"),
        }
        // reflexivity with a certificate
        assert!(dyadic.compare(&dyadic, 6).is_equal());
        // two depth-bounded chains with the same levels
        let a = catalog::scaled_tower(4).unwrap().invariant_groups().unwrap().0;
        let b = catalog::scaled_twisted_tower(4)
            .unwrap()
            .invariant_groups()
            .unwrap()
            .0;
        match a.compare(&b, 4) {
            Compare::Equal { exact, .. } => assert!(!exact),
            other => panic!("expected depth Equal, got {other}"),
        }
    }

    #[test]
    fn compare_line_groups_cases() {
        let dyadic = LineGroup::from_union(&[s(1), sr(1, 2)], Some(2)).unwrap();
        let dyadic2 = LineGroup::from_union(&[s(1), sr(1, 2), sr(1, 4)], Some(2)).unwrap();
        assert!(compare_line_groups(&dyadic, &dyadic2).is_equal());
        let triadic = LineGroup::from_union(&[s(1), sr(1, 3)], Some(3)).unwrap();
        assert!(compare_line_groups(&dyadic, &triadic).is_not_equal());
        let chain = LineGroup::from_union(&[s(1), sr(1, 2)], None).unwrap();
        // a finite chain inside the dyadics: inclusion holds one way only
        assert!(matches!(
            compare_line_groups(&chain, &dyadic),
            Compare::UnknownAtDepth { .. }
        ));
    }

    #[test]
    fn normal_cover_keeps_certified_tails() {
        // levels are normal and P/z = I is integral: the tail survives
        let t = catalog::dyadic_tail_tower();
        let cover = t.normal_cover().unwrap();
        assert!(cover.has_tail());
        for j in 1..=4 {
            assert!(cover.level(j).unwrap().equal(&t.level(j).unwrap()));
        }
        // non-normal levels: the cover truncates to a depth-bounded prefix
        let skew = Tower::new(
            vec![Lattice::h3z()],
            Some((IntMatrix2::new([[1, 0], [0, 4]]), 2)),
        )
        .unwrap();
        let cover = skew.normal_cover().unwrap();
        assert!(!cover.has_tail());
        // every covered level is normal under the ambient generators
        for j in 1..=cover.prefix_len() {
            let lvl = cover.level(j).unwrap();
            assert!(lvl.normalized_by(&GroupElement::a(s(1))));
            assert!(lvl.normalized_by(&GroupElement::b(s(1))));
        }
    }

    #[test]
    fn construct_from_invariants_roundtrip() {
        // tail-ruled pair
        let t = catalog::dyadic_tail_tower();
        let (s_grp, xi_grp) = t.invariant_groups().unwrap();
        let rebuilt = construct_from_invariants(&s_grp, &xi_grp, 6).unwrap();
        let (s2, xi2) = rebuilt.invariant_groups().unwrap();
        assert!(s_grp.compare(&s2, 8).is_equal());
        match compare_line_groups(&xi_grp, &xi2) {
            Compare::Equal { exact, .. } => assert!(exact),
            other => panic!("expected exact Equal, got {other}"),
        }
        // depth-bounded pair
        let t = catalog::scaled_tower(4).unwrap();
        let (s_grp, xi_grp) = t.invariant_groups().unwrap();
        let rebuilt = construct_from_invariants(&s_grp, &xi_grp, 4).unwrap();
        let (s2, xi2) = rebuilt.invariant_groups().unwrap();
        assert!(s_grp.compare(&s2, 6).is_equal());
        assert!(compare_line_groups(&xi_grp, &xi2).is_equal());
        // constant pair gives the constant tower
        let (s_grp, xi_grp) = catalog::constant_tower().invariant_groups().unwrap();
        let rebuilt = construct_from_invariants(&s_grp, &xi_grp, 3).unwrap();
        assert!(rebuilt.is_eventually_constant());
        assert!(rebuilt.level(1).unwrap().equal(&Lattice::h3z()));
    }

    #[test]
    fn construct_from_invariants_rejects_unsatisfiable() {
        let (s_grp, _) = catalog::dyadic_tail_tower().invariant_groups().unwrap();
        let triadic = LineGroup::from_union(&[s(1), sr(1, 3)], Some(3)).unwrap();
        let err = construct_from_invariants(&s_grp, &triadic, 4).unwrap_err();
        assert!(err.to_string().contains("unsatisfiable"));
    }
}
