//! Koopman spectral decompositions of Heisenberg nilsystems: the spectrum
//! of the translation action of a single lattice quotient, the spectrum of
//! an odometer built from a tower, isospectrality and f-isomorphism
//! decisions, tensor products of irreducible classes, and the spectral
//! analysis of product systems.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::heis::Irrep;
use crate::lattice::Lattice;
use crate::matrix::IntMatrix2;
use crate::scalar::Scalar;
use crate::supernatural::LineGroup;
use crate::tower::{compare_line_groups, Compare, PlaneGroup, Tower, Verdict};

/// How multiplicities of the infinite-dimensional components scale with the
/// central frequency.
#[derive(Clone, Debug)]
pub enum MultiplicityLaw {
    /// Every present infinite-dimensional class appears with infinite
    /// multiplicity.
    InfiniteAll,
    /// The class with central frequency `gamma` appears `|gamma| * c` times.
    Linear { coefficient: Scalar },
}

impl fmt::Display for MultiplicityLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplicityLaw::InfiniteAll => write!(f, "infinite for every class"),
            MultiplicityLaw::Linear { coefficient } => {
                write!(f, "|gamma| * {coefficient} for frequency gamma")
            }
        }
    }
}

/// The decomposition of a Koopman representation into irreducible classes.
///
/// `one_dim` is the group of plane frequencies `(alpha, beta)` whose
/// character appears (each with multiplicity one; it always contains
/// `(0, 0)`, the constants).  `inf_dim` is the group of central frequencies
/// `gamma` whose infinite-dimensional class appears, understood with `0`
/// removed.  `level_coefficients` is the audit trail behind an
/// `InfiniteAll` law: the per-level linear coefficients, which grow without
/// bound.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub one_dim: PlaneGroup,
    pub inf_dim: LineGroup,
    pub multiplicity_law: MultiplicityLaw,
    /// `None` when the report describes the full system exactly; `Some(d)`
    /// when it is only certified through depth `d` of a tower.
    pub at_depth: Option<u32>,
    pub level_coefficients: Vec<Scalar>,
    pub notes: Vec<String>,
}

impl SpectrumReport {
    pub fn is_exact(&self) -> bool {
        self.at_depth.is_none()
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "one-dimensional part: {}", self.one_dim.describe())?;
        writeln!(
            f,
            "infinite-dimensional part: {} minus 0",
            self.inf_dim.describe()
        )?;
        write!(f, "multiplicity: {}", self.multiplicity_law)?;
        if let Some(d) = self.at_depth {
            write!(f, " (through depth {d})")?;
        }
        for n in &self.notes {
            write!(f, "\nnote: {n}")?;
        }
        Ok(())
    }
}

/// A `LineGroup` representing exactly `d * Z`, marked as fully known.
fn full_line(d: Scalar) -> Result<LineGroup> {
    let mut line = LineGroup::single(d)?;
    line.exhaustive = true;
    Ok(line)
}

/// The Koopman spectrum of the translation action on the quotient of the
/// group by a single lattice: characters for every dual plane frequency,
/// and for each nonzero `gamma = n / xi` the infinite-dimensional class
/// with multiplicity `|n| * k = |gamma| * |det B|`.
pub fn transitive_spectrum(gamma: &Lattice) -> Result<SpectrumReport> {
    let one_dim = PlaneGroup::new(vec![gamma.dual_lattice()], Some(IntMatrix2::identity()))?;
    let xi_inv = gamma
        .xi()
        .inverse()
        .expect("lattice gauge is nonzero");
    let inf_dim = full_line(xi_inv)?;
    let coefficient = gamma.basis().det().abs();
    Ok(SpectrumReport {
        one_dim,
        inf_dim,
        multiplicity_law: MultiplicityLaw::Linear {
            coefficient: coefficient.clone(),
        },
        at_depth: None,
        level_coefficients: vec![coefficient],
        notes: Vec::new(),
    })
}

/// Brute-force count of the coadjoint orbits carrying a fixed nonzero
/// central frequency: the integers act on the affine line
/// `{(k n, m) : m in Z}` by `m -> m - t * n * k`, and the orbit count is
/// the number of residues in one fundamental window.  Always equals
/// `|n| * k`, which the spectral multiplicity formula predicts; this
/// routine computes it by honest enumeration so the formula can be tested
/// against it.
pub fn orbit_count_oracle(k: u64, n: i64) -> Result<u64> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    if n == 0 {
        return Err(Error::domain("n must be nonzero"));
    }
    let step = (n.unsigned_abs() as i128) * (k as i128);
    let mut reps: HashSet<i128> = HashSet::new();
    // Enumerate several windows' worth of points and reduce each to its
    // orbit representative.
    for m in -step * 2..step * 2 {
        reps.insert(m.rem_euclid(step));
    }
    Ok(reps.len() as u64)
}

/// The Koopman spectrum of the odometer defined by a tower.
///
/// When the tower is non-degenerate (central gauges grow without bound) the
/// spectrum is the pair of limit invariant groups and every
/// infinite-dimensional class present appears infinitely often.  When the
/// tower is eventually constant the odometer factors through a single
/// quotient and the transitive formula applies.  For a depth-bounded prefix
/// whose degeneracy is undecided, the report is qualified by the depth.
pub fn odometer_spectrum(tower: &Tower) -> Result<SpectrumReport> {
    let (one_dim, inf_dim) = tower.invariant_groups()?;
    let degeneracy = tower.is_non_degenerate();
    let coefficients: Vec<Scalar> = {
        let mut out = Vec::new();
        let depth = one_dim.levels().len() as u32;
        for j in 1..=depth.min(tower.prefix_len() as u32 + 2) {
            out.push(tower.level(j)?.basis().det().abs());
        }
        out
    };
    if degeneracy.is_no() {
        // Eventually constant: the transitive spectrum of the limit level.
        let limit = tower.level(tower.prefix_len() as u32)?;
        let mut report = transitive_spectrum(&limit)?;
        report
            .notes
            .push("eventually constant tower: spectrum of the limit quotient".into());
        return Ok(report);
    }
    let depth = tower.prefix_len() as u32;
    let mut notes = Vec::new();
    let at_depth;
    let multiplicity_law;
    if degeneracy.is_yes() {
        at_depth = None;
        multiplicity_law = MultiplicityLaw::InfiniteAll;
        notes.push(
            "per-level linear coefficients grow without bound; see the audit trail".into(),
        );
    } else {
        // Degeneracy undecided at this depth: report the materialized
        // invariants, with the law inferred from the stored levels.
        at_depth = Some(depth);
        let gauges_move = tower
            .prefix()
            .windows(2)
            .any(|w| w[0].xi() != w[1].xi());
        if gauges_move {
            multiplicity_law = MultiplicityLaw::InfiniteAll;
            notes.push("gauges still growing at the stored depth".into());
        } else {
            multiplicity_law = MultiplicityLaw::Linear {
                coefficient: tower.prefix().last().expect("nonempty").basis().det().abs(),
            };
            notes.push("gauges constant through the stored depth".into());
        }
    }
    Ok(SpectrumReport {
        one_dim,
        inf_dim,
        multiplicity_law,
        at_depth,
        level_coefficients: coefficients,
        notes,
    })
}

/// Two single-lattice quotients have unitarily equivalent Koopman
/// representations exactly when the plane projections and the central
/// gauges agree — which is also exactly when the lattices are conjugate.
pub fn transitive_isospectral(gamma: &Lattice, gamma2: &Lattice) -> bool {
    gamma.p_lattice().same_lattice(&gamma2.p_lattice()) && gamma.xi() == gamma2.xi()
}

/// Decide whether two towers define f-isomorphic odometers by comparing
/// both limit invariant groups.  `Equal` also certifies unitary equivalence
/// of the Koopman representations; it does *not* imply the odometers are
/// isomorphic (conjugate levels can share all invariants while no single
/// group element aligns the towers).
pub fn f_isomorphic(t: &Tower, t2: &Tower, depth: u32) -> Result<Compare> {
    let (s1, xi1) = t.invariant_groups()?;
    let (s2, xi2) = t2.invariant_groups()?;
    let plane = s1.compare(&s2, depth);
    if let Compare::NotEqual { witness } = plane {
        return Ok(Compare::NotEqual {
            witness: format!("plane frequency groups differ: {witness}"),
        });
    }
    let line = compare_line_groups(&xi1, &xi2);
    if let Compare::NotEqual { witness } = line {
        return Ok(Compare::NotEqual {
            witness: format!("central frequency groups differ: {witness}"),
        });
    }
    match (plane, line) {
        (
            Compare::Equal {
                certificate: c1,
                exact: e1,
            },
            Compare::Equal {
                certificate: c2,
                exact: e2,
            },
        ) => Ok(Compare::Equal {
            certificate: format!(
                "both invariant groups agree (plane: {c1}; line: {c2}); the odometers are \
                 f-isomorphic with unitarily equivalent Koopman representations, which does \
                 not imply they are isomorphic"
            ),
            exact: e1 && e2,
        }),
        (Compare::UnknownAtDepth { depth, note }, _)
        | (_, Compare::UnknownAtDepth { depth, note }) => {
            Ok(Compare::UnknownAtDepth { depth, note })
        }
        _ => unreachable!("NotEqual handled above"),
    }
}

/// Decomposition of a tensor product of two irreducible classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorDecomposition {
    /// A single irreducible class.
    Single(Irrep),
    /// Countably many copies of one infinite-dimensional class.
    CountablyMany(Irrep),
    /// The continuous integral of all characters over the plane (the
    /// product of an infinite-dimensional class with its inverse frequency);
    /// a tagged marker, not a measure object.
    PlaneIntegral,
}

impl fmt::Display for TensorDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorDecomposition::Single(r) => write!(f, "{r}"),
            TensorDecomposition::CountablyMany(r) => write!(f, "countably many copies of {r}"),
            TensorDecomposition::PlaneIntegral => {
                write!(f, "integral of all plane characters")
            }
        }
    }
}

/// Tensor product of two irreducible classes.
pub fn tensor_product(r: &Irrep, r2: &Irrep) -> TensorDecomposition {
    match (r, r2) {
        (Irrep::OneDim(a, b), Irrep::OneDim(a2, b2)) => {
            TensorDecomposition::Single(Irrep::OneDim(a + a2, b + b2))
        }
        (Irrep::InfDim(g), Irrep::InfDim(g2)) => {
            let sum = g + g2;
            if sum.is_zero() {
                TensorDecomposition::PlaneIntegral
            } else {
                TensorDecomposition::CountablyMany(Irrep::InfDim(sum))
            }
        }
        (Irrep::InfDim(g), Irrep::OneDim(..)) | (Irrep::OneDim(..), Irrep::InfDim(g)) => {
            TensorDecomposition::Single(Irrep::InfDim(g.clone()))
        }
    }
}

/// Spectral analysis of the product of two odometers.
#[derive(Clone, Debug)]
pub struct ProductReport {
    pub ergodic: Verdict,
    pub discrete_spectrum: Verdict,
    /// Present when the product is ergodic with discrete spectrum: the
    /// one-dimensional part is the sum of the two plane frequency groups and
    /// the infinite-dimensional part the sum of the two central frequency
    /// groups, every class with infinite multiplicity.
    pub decomposition: Option<String>,
    pub note: String,
}

impl fmt::Display for ProductReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ergodic: {}", self.ergodic)?;
        writeln!(f, "discrete spectrum: {}", self.discrete_spectrum)?;
        if let Some(d) = &self.decomposition {
            writeln!(f, "decomposition: {d}")?;
        }
        write!(f, "note: {}", self.note)
    }
}

/// Whether two commensurability-scale values force a nontrivial
/// intersection of the groups they scale (rational ratio) or a trivial one
/// (irrational ratio).  `None` when a scale could not be split off.
fn rational_ratio(s1: &Scalar, s2: &Scalar) -> bool {
    (s2 / s1).is_rational()
}

/// Analyze the product of the odometers of two towers: ergodicity is
/// equivalent to the two plane frequency groups meeting only in `0`, and
/// the product has discrete spectrum when additionally the central
/// frequency groups meet only in `0`.  Every level of a frequency group is
/// commensurable with its first level, so both questions reduce to an exact
/// rationality test on the ratio of commensurability scales.  A product of
/// two ergodic odometer factors is never itself an odometer.
pub fn product_analysis(t: &Tower, t2: &Tower, depth: u32) -> Result<ProductReport> {
    let (s1, xi1) = t.invariant_groups()?;
    let (s2, xi2) = t2.invariant_groups()?;
    let never = "an ergodic product of two Heisenberg odometers has discrete spectrum only \
                 when both frequency intersections are trivial, and even then it is never \
                 isomorphic to any Heisenberg odometer"
        .to_string();

    let split1 = s1.levels()[0].scale_split();
    let split2 = s2.levels()[0].scale_split();
    let ergodic = match (&split1, &split2) {
        (Ok((a, _)), Ok((b, _))) => {
            if rational_ratio(a, b) {
                let common = s1.levels()[0]
                    .intersection(&s2.levels()[0])?
                    .expect("commensurable lattices intersect");
                let w = common.basis().column(0);
                Verdict::no(format!(
                    "plane frequency groups share ({}, {})",
                    w[0], w[1]
                ))
            } else {
                Verdict::yes(format!(
                    "plane commensurability scales {a} and {b} have irrational ratio, so the \
                     frequency groups meet only in 0"
                ))
            }
        }
        _ => Verdict::unknown_at(
            depth,
            "a plane frequency group is not a scalar multiple of a rational lattice; \
             intersection triviality is undecided at this presentation",
        ),
    };

    let discrete_spectrum = if ergodic.is_no() {
        Verdict::no("the product is not even ergodic".to_string())
    } else if ergodic.is_unknown() {
        Verdict::unknown_at(depth, "ergodicity undecided")
    } else if rational_ratio(&xi1.base, &xi2.base) {
        Verdict::no(format!(
            "central frequency groups share a nonzero multiple of {}",
            xi1.base
        ))
    } else {
        Verdict::yes(format!(
            "central scales {} and {} have irrational ratio",
            xi1.base, xi2.base
        ))
    };

    let decomposition = if ergodic.is_yes() && discrete_spectrum.is_yes() {
        Some(format!(
            "characters over the sum of the plane groups [{}] + [{}]; infinite-dimensional \
             classes over the sum of the central groups [{}] + [{}], each with infinite \
             multiplicity",
            s1.describe(),
            s2.describe(),
            xi1.describe(),
            xi2.describe()
        ))
    } else {
        None
    };

    Ok(ProductReport {
        ergodic,
        discrete_spectrum,
        decomposition,
        note: never,
    })
}
