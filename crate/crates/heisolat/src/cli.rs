//! Command-line surface: loads JSON session documents, runs the library
//! operations, and renders deterministic reports.
//!
//! Exit codes: `0` success / positive verdict, `1` negative verdict
//! (not conjugate, not equal, not free, not found), `2` undecided at the
//! requested depth, `64` format error, `65` domain error.  The default
//! depth is 8, overridable by `--depth` or the `HEISOLAT_DEPTH`
//! environment variable (the flag wins).

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::doc::{Document, LatticeDoc, ScalarRepr, Session, TowerDoc};
use crate::error::{Error, Result};
use crate::heis::GroupElement;
use crate::joining::{
    classify_selfjoining_tower, classify_selfjoining_transitive, joining_koopman_spectrum,
    JoiningClass, JoiningLimit,
};
use crate::lattice::Lattice;
use crate::quotient::{dual_tower_report, factor_level_search, FactorSearch, FiniteQuotient};
use crate::report::{render, Format};
use crate::scalar::Scalar;
use crate::spectra::{f_isomorphic, odometer_spectrum, MultiplicityLaw, SpectrumReport};
use crate::tower::{Answer, Compare, Verdict};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "heisolat",
    about = "Exact computations with lattices and odometers in the real Heisenberg group",
    disable_help_subcommand = true
)]
struct Cli {
    /// Depth bound for operations on infinitely presented objects.
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Override the session scalar field with the quadratic field of this
    /// radicand.
    #[arg(long, global = true)]
    field: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on a single lattice.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Operations on towers of nested lattices.
    Tower {
        #[command(subcommand)]
        cmd: TowerCmd,
    },
    /// Self-joining classification and spectra.
    Joining {
        #[command(subcommand)]
        cmd: JoiningCmd,
    },
    /// Finite quotients by normal lattices.
    Quotient {
        #[command(subcommand)]
        cmd: QuotientCmd,
    },
    /// Run the golden regression corpus.
    Regress {
        /// Directory holding `*.case.json` files.
        #[arg(default_value = "corpus")]
        dir: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Invariants of a lattice.
    Info {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Canonical representative and the automorphism reaching it.
    NormalForm {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Decide conjugacy of two lattices and exhibit a conjugator.
    Conjugate {
        file_a: PathBuf,
        file_b: Option<PathBuf>,
        #[arg(long = "name")]
        names: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum TowerCmd {
    /// Validate nesting and the tail rule.
    Validate {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Limit invariant groups, covolume group, and degeneracy.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Koopman spectrum of the odometer.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Freeness of the odometer, with the gauge chain trace.
    Free {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Levelwise normal cover.
    NormalCover {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Compare the limit invariants of two towers (f-isomorphism).
    Compare {
        file_a: PathBuf,
        file_b: Option<PathBuf>,
        #[arg(long = "name")]
        names: Vec<String>,
    },
    /// Rebuild a tower from its limit invariants and check the round trip.
    Construct {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum JoiningCmd {
    /// Classify an ergodic self-joining by its plane offset data.
    Classify {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Koopman spectrum of an aperiodic self-joining system.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum QuotientCmd {
    /// Order, classes, center, commutator, abelianization.
    Info {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Irreducible representation dimensions.
    Dims {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Levelwise dual data of a tower of normal lattices.
    DualTower {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Search for a tower level inside a candidate factor lattice.
    FactorSearch {
        file: PathBuf,
        /// Tower name.
        #[arg(long)]
        name: Option<String>,
        /// Candidate lattice name.
        #[arg(long)]
        sigma: Option<String>,
    },
}

/// Entry point for the binary: parses `std::env::args`, prints the report
/// to stdout (errors to stderr), and returns the exit code.
pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(CliFailure::Usage { text, code }) => {
            if code == 0 {
                print!("{text}");
            } else {
                eprint!("{text}");
            }
            code
        }
        Err(CliFailure::Library(e)) => {
            eprintln!("{e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Format(_) => 64,
        _ => 65,
    }
}

/// A failed invocation: either a usage problem surfaced by the argument
/// parser or a library error.
pub enum CliFailure {
    Usage { text: String, code: i32 },
    Library(Error),
}

impl From<Error> for CliFailure {
    fn from(e: Error) -> Self {
        CliFailure::Library(e)
    }
}

/// Run one invocation (arguments without the binary name); returns the
/// rendered report and the exit code.
pub fn run(args: &[String]) -> std::result::Result<(String, i32), CliFailure> {
    let mut argv = vec!["heisolat".to_string()];
    argv.extend(args.iter().cloned());
    let cli = Cli::try_parse_from(&argv).map_err(|e| {
        let code = match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
            _ => 64,
        };
        CliFailure::Usage {
            text: e.render().to_string(),
            code,
        }
    })?;
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let depth = effective_depth(cli.depth);
    let (value, code) = dispatch(&cli.command, depth, cli.field)?;
    Ok((render(&value, format), code))
}

fn effective_depth(flag: Option<u32>) -> u32 {
    flag.or_else(|| {
        std::env::var("HEISOLAT_DEPTH")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(8)
}

fn load_doc(path: &Path, field_override: Option<u64>) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::format(format!("cannot read {}: {e}", path.display())))?;
    let mut doc = Document::parse_str(&text)?;
    if let Some(d) = field_override {
        doc.session = Session::quadratic(d);
    }
    doc.field()?;
    Ok(doc)
}

/// Resolve two named objects for a binary command: either two files (each
/// contributing one object) or one file with two `--name` values.
fn pair_sources(
    file_a: &Path,
    file_b: &Option<PathBuf>,
    names: &[String],
    field: Option<u64>,
) -> Result<[(Document, Option<String>); 2]> {
    if names.len() > 2 {
        return Err(Error::format("at most two --name values are accepted"));
    }
    let doc_a = load_doc(file_a, field)?;
    match file_b {
        Some(b) => {
            let doc_b = load_doc(b, field)?;
            Ok([
                (doc_a, names.first().cloned()),
                (doc_b, names.get(1).cloned()),
            ])
        }
        None => {
            if names.len() != 2 {
                return Err(Error::format(
                    "with a single file, give two --name values (or pass two files)",
                ));
            }
            Ok([
                (doc_a.clone(), Some(names[0].clone())),
                (doc_a, Some(names[1].clone())),
            ])
        }
    }
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "answer": v.answer.to_string(),
        "exact": v.is_exact(),
        "through_depth": v.at_depth,
        "note": v.note,
    })
}

fn verdict_exit(v: &Verdict) -> i32 {
    match v.answer {
        Answer::Yes => 0,
        Answer::No => 1,
        Answer::Unknown => 2,
    }
}

fn compare_json(c: &Compare) -> (Value, i32) {
    match c {
        Compare::Equal { certificate, exact } => (
            json!({"result": "equal", "exact": exact, "certificate": certificate}),
            0,
        ),
        Compare::NotEqual { witness } => {
            (json!({"result": "not-equal", "witness": witness}), 1)
        }
        Compare::UnknownAtDepth { depth, note } => (
            json!({"result": "unknown", "through_depth": depth, "note": note}),
            2,
        ),
    }
}

fn spectrum_json(rep: &SpectrumReport) -> Value {
    json!({
        "one_dim": rep.one_dim.describe(),
        "inf_dim": format!("{} minus 0", rep.inf_dim.describe()),
        "multiplicity": match &rep.multiplicity_law {
            MultiplicityLaw::InfiniteAll => "infinite for every class".to_string(),
            MultiplicityLaw::Linear { coefficient } => {
                format!("|gamma| * {coefficient}")
            }
        },
        "through_depth": rep.at_depth,
        "level_coefficients": rep
            .level_coefficients
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>(),
        "notes": rep.notes,
    })
}

fn lattice_json(name: &str, l: &Lattice) -> Value {
    let ambient = Lattice::h3z();
    json!({
        "name": name,
        "definition": serde_json::to_value(LatticeDoc::from_lattice(l)).expect("serializable"),
        "xi": l.xi().to_string(),
        "k": l.k().to_string(),
        "plane_covolume": l.basis().det().abs().to_string(),
        "in_integer_group": ambient.contains_lattice(l),
        "normal_in_integer_group": l.normalized_by(&GroupElement::a(Scalar::one()))
            && l.normalized_by(&GroupElement::b(Scalar::one())),
    })
}

fn joining_class_json(c: &JoiningClass) -> Value {
    match c {
        JoiningClass::AperiodicFull => json!({"class": "aperiodic"}),
        JoiningClass::Periodic { q, offset } => json!({
            "class": "periodic",
            "graphs": q,
            "offset": offset.to_string(),
        }),
    }
}

fn parse_offsets(
    doc: &Document,
    reprs: &[[ScalarRepr; 2]],
) -> Result<Vec<[Scalar; 2]>> {
    let field = doc.field()?;
    reprs
        .iter()
        .map(|[a, b]| Ok([a.to_scalar(field)?, b.to_scalar(field)?]))
        .collect()
}

fn dispatch(cmd: &Command, depth: u32, field: Option<u64>) -> Result<(Value, i32)> {
    match cmd {
        Command::Lattice { cmd } => lattice_cmd(cmd, field),
        Command::Tower { cmd } => tower_cmd(cmd, depth, field),
        Command::Joining { cmd } => joining_cmd(cmd, field),
        Command::Quotient { cmd } => quotient_cmd(cmd, depth, field),
        Command::Regress { dir } => regress(dir),
    }
}

fn lattice_cmd(cmd: &LatticeCmd, field: Option<u64>) -> Result<(Value, i32)> {
    match cmd {
        LatticeCmd::Info { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, l) = doc.lattice(name.as_deref())?;
            Ok((lattice_json(&n, &l), 0))
        }
        LatticeCmd::NormalForm { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, l) = doc.lattice(name.as_deref())?;
            let (k, theta) = l.normal_form();
            Ok((
                json!({
                    "name": n,
                    "canonical_parameter": k.to_string(),
                    "automorphism": theta.to_string(),
                }),
                0,
            ))
        }
        LatticeCmd::Conjugate {
            file_a,
            file_b,
            names,
        } => {
            let [(doc_a, na), (doc_b, nb)] = pair_sources(file_a, file_b, names, field)?;
            let (name_a, a) = doc_a.lattice(na.as_deref())?;
            let (name_b, b) = doc_b.lattice(nb.as_deref())?;
            match a.conjugacy_test(&b) {
                Some(h) => Ok((
                    json!({
                        "pair": [name_a, name_b],
                        "conjugate": true,
                        "witness": h.to_string(),
                    }),
                    0,
                )),
                None => Ok((
                    json!({
                        "pair": [name_a, name_b],
                        "conjugate": false,
                        "automorphic": a.automorphic_test(&b),
                    }),
                    1,
                )),
            }
        }
    }
}

fn tower_cmd(cmd: &TowerCmd, depth: u32, field: Option<u64>) -> Result<(Value, i32)> {
    match cmd {
        TowerCmd::Validate { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, t) = doc.tower(name.as_deref(), depth)?;
            let gauges: Vec<String> =
                t.prefix().iter().map(|l| l.xi().to_string()).collect();
            Ok((
                json!({
                    "name": n,
                    "valid": true,
                    "stored_levels": t.prefix_len(),
                    "has_tail": t.has_tail(),
                    "gauges": gauges,
                }),
                0,
            ))
        }
        TowerCmd::Invariants { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, t) = doc.tower(name.as_deref(), depth)?;
            let (plane, line) = t.invariant_groups()?;
            let tau = plane.tau()?;
            let center = t.center_intersection()?;
            Ok((
                json!({
                    "name": n,
                    "plane_group": plane.describe(),
                    "line_group": line.describe(),
                    "covolume_group": tau.describe(),
                    "exhaustive": plane.exhaustive(),
                    "non_degenerate": verdict_json(&t.is_non_degenerate()),
                    "center_generator": center.generator.map(|g| g.to_string()),
                }),
                0,
            ))
        }
        TowerCmd::Spectrum { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, t) = doc.tower(name.as_deref(), depth)?;
            let rep = odometer_spectrum(&t)?;
            let mut v = spectrum_json(&rep);
            v["name"] = json!(n);
            Ok((v, 0))
        }
        TowerCmd::Free { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, t) = doc.tower(name.as_deref(), depth)?;
            let v = t.is_free()?;
            let gauges: Vec<String> =
                t.prefix().iter().map(|l| l.xi().to_string()).collect();
            Ok((
                json!({
                    "name": n,
                    "free": verdict_json(&v),
                    "gauge_chain": gauges,
                }),
                verdict_exit(&v),
            ))
        }
        TowerCmd::NormalCover { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, t) = doc.tower(name.as_deref(), depth)?;
            let cover = t.normal_cover()?;
            Ok((
                json!({
                    "name": n,
                    "cover": serde_json::to_value(TowerDoc::from_tower(&cover))
                        .expect("serializable"),
                    "stored_levels": cover.prefix_len(),
                    "has_tail": cover.has_tail(),
                }),
                0,
            ))
        }
        TowerCmd::Compare {
            file_a,
            file_b,
            names,
        } => {
            let [(doc_a, na), (doc_b, nb)] = pair_sources(file_a, file_b, names, field)?;
            let (name_a, a) = doc_a.tower(na.as_deref(), depth)?;
            let (name_b, b) = doc_b.tower(nb.as_deref(), depth)?;
            let (v, code) = compare_json(&f_isomorphic(&a, &b, depth)?);
            let mut out = json!({"pair": [name_a, name_b]});
            out["comparison"] = v;
            Ok((out, code))
        }
        TowerCmd::Construct { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, t) = doc.tower(name.as_deref(), depth)?;
            let (plane, line) = t.invariant_groups()?;
            let rebuilt = crate::tower::construct_from_invariants(&plane, &line, depth)?;
            let (plane2, line2) = rebuilt.invariant_groups()?;
            let (plane_cmp, _) = compare_json(&plane.compare(&plane2, depth));
            let (line_cmp, _) =
                compare_json(&crate::tower::compare_line_groups(&line, &line2));
            Ok((
                json!({
                    "name": n,
                    "constructed": serde_json::to_value(TowerDoc::from_tower(&rebuilt))
                        .expect("serializable"),
                    "plane_roundtrip": plane_cmp,
                    "line_roundtrip": line_cmp,
                }),
                0,
            ))
        }
    }
}

fn joining_cmd(cmd: &JoiningCmd, field: Option<u64>) -> Result<(Value, i32)> {
    match cmd {
        JoiningCmd::Classify { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, jd) = doc.joining(name.as_deref())?;
            let ds = parse_offsets(&doc, &jd.d)?;
            match &jd.tower {
                Some(tower_name) => {
                    let (_, t) = doc.tower(Some(tower_name), ds.len() as u32)?;
                    let report = classify_selfjoining_tower(&t, &ds)?;
                    let levels: Vec<Value> =
                        report.levels.iter().map(joining_class_json).collect();
                    let limit = match &report.limit {
                        JoiningLimit::AperiodicFull => json!({"class": "aperiodic"}),
                        JoiningLimit::PeriodicTower(qs) => {
                            json!({"class": "periodic", "graph_counts": qs})
                        }
                    };
                    Ok((
                        json!({
                            "name": n,
                            "levels": levels,
                            "limit": limit,
                            "note": report.note,
                        }),
                        0,
                    ))
                }
                None => {
                    if ds.len() != 1 {
                        return Err(Error::format(
                            "several offsets given but no tower named; set \"tower\"",
                        ));
                    }
                    let class = classify_selfjoining_transitive(&ds[0], jd.k)?;
                    let mut v = joining_class_json(&class);
                    v["name"] = json!(n);
                    Ok((v, 0))
                }
            }
        }
        JoiningCmd::Spectrum { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, jd) = doc.joining(name.as_deref())?;
            let ds = parse_offsets(&doc, &jd.d)?;
            if ds.len() != 1 {
                return Err(Error::format("the joining spectrum takes one offset pair"));
            }
            let spec = joining_koopman_spectrum(&ds[0], jd.k)?;
            Ok((
                json!({
                    "name": n,
                    "one_dim_generators": spec
                        .one_dim_generators
                        .iter()
                        .map(|g| format!("({}, {})", g[0], g[1]))
                        .collect::<Vec<_>>(),
                    "off_rational": spec.off_rational,
                    "certificate": spec.certificate,
                    "inf_dim": format!("{} minus 0", spec.inf_dim.describe()),
                    "multiplicity": "infinite for every class",
                    "note": spec.note,
                }),
                0,
            ))
        }
    }
}

fn quotient_cmd(cmd: &QuotientCmd, depth: u32, field: Option<u64>) -> Result<(Value, i32)> {
    match cmd {
        QuotientCmd::Info { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, l) = doc.lattice(name.as_deref())?;
            let q = FiniteQuotient::build(&l)?;
            let data = q.class_data();
            Ok((
                json!({
                    "name": n,
                    "order": q.order(),
                    "classes": data.classes,
                    "center_order": data.center_order,
                    "commutator_order": data.commutator_order,
                    "abelianization_order": data.abelianization_order,
                }),
                0,
            ))
        }
        QuotientCmd::Dims { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, l) = doc.lattice(name.as_deref())?;
            let q = FiniteQuotient::build(&l)?;
            Ok((
                json!({
                    "name": n,
                    "order": q.order(),
                    "dimensions": q.irrep_dimensions(),
                }),
                0,
            ))
        }
        QuotientCmd::DualTower { file, name } => {
            let doc = load_doc(file, field)?;
            let (n, t) = doc.tower(name.as_deref(), depth)?;
            let report = dual_tower_report(&t, depth)?;
            let levels: Vec<Value> = report
                .levels
                .iter()
                .map(|l| {
                    json!({
                        "order": l.order,
                        "classes": l.classes,
                        "dimensions": l.dims,
                    })
                })
                .collect();
            Ok((json!({"name": n, "levels": levels}), 0))
        }
        QuotientCmd::FactorSearch { file, name, sigma } => {
            let doc = load_doc(file, field)?;
            let (tn, t) = doc.tower(name.as_deref(), depth)?;
            let (sn, s) = doc.lattice(sigma.as_deref())?;
            match factor_level_search(&t, &s, depth)? {
                FactorSearch::Found { level } => Ok((
                    json!({
                        "tower": tn,
                        "candidate": sn,
                        "found": true,
                        "level": level,
                    }),
                    0,
                )),
                FactorSearch::NotFound { depth, witnesses } => Ok((
                    json!({
                        "tower": tn,
                        "candidate": sn,
                        "found": false,
                        "through_depth": depth,
                        "witnesses": witnesses
                            .iter()
                            .map(|(j, w)| format!("level {j}: {w}"))
                            .collect::<Vec<_>>(),
                    }),
                    1,
                )),
            }
        }
    }
}

#[derive(serde::Deserialize)]
struct RegressCase {
    args: Vec<String>,
    expected_exit: i32,
    expected_output: String,
}

fn first_divergence(expected: &str, got: &str) -> String {
    for (i, (e, g)) in expected.lines().zip(got.lines()).enumerate() {
        if e != g {
            return format!("line {}: expected {e:?}, got {g:?}", i + 1);
        }
    }
    format!(
        "expected {} lines, got {}",
        expected.lines().count(),
        got.lines().count()
    )
}

fn regress(dir: &Path) -> Result<(Value, i32)> {
    let mut cases: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::format(format!("cannot read corpus {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.ends_with(".case.json"))
        })
        .collect();
    cases.sort();
    if cases.is_empty() {
        return Err(Error::format(format!(
            "no *.case.json files in {}",
            dir.display()
        )));
    }
    let mut lines = Vec::new();
    let mut failures = 0usize;
    for case_path in &cases {
        let name = case_path
            .file_name()
            .and_then(|n| n.to_str())
            .expect("utf-8 path")
            .trim_end_matches(".case.json")
            .to_string();
        let case_dir = case_path.parent().expect("file has a directory");
        let text = std::fs::read_to_string(case_path)
            .map_err(|e| Error::format(format!("cannot read {}: {e}", case_path.display())))?;
        let case: RegressCase = serde_json::from_str(&text)
            .map_err(|e| Error::format(format!("bad case {}: {e}", case_path.display())))?;
        let args: Vec<String> = case
            .args
            .iter()
            .map(|a| a.replace("$dir", &case_dir.to_string_lossy()))
            .collect();
        let golden_path = case_dir.join(&case.expected_output);
        let expected = std::fs::read_to_string(&golden_path).map_err(|e| {
            Error::format(format!("cannot read {}: {e}", golden_path.display()))
        })?;
        let outcome = match run(&args) {
            Ok((got, code)) => {
                if code != case.expected_exit {
                    Some(format!(
                        "exit {code}, expected {}",
                        case.expected_exit
                    ))
                } else if got != expected {
                    Some(first_divergence(&expected, &got))
                } else {
                    None
                }
            }
            Err(CliFailure::Usage { code, .. }) => {
                Some(format!("usage failure (exit {code})"))
            }
            Err(CliFailure::Library(e)) => {
                let code = exit_code_for(&e);
                if code == case.expected_exit {
                    // errors print to stderr; an expected error case has an
                    // empty golden
                    if expected.is_empty() {
                        None
                    } else {
                        Some(format!("error {e}, but a golden output was expected"))
                    }
                } else {
                    Some(format!("error {e} (exit {code}, expected {})", case.expected_exit))
                }
            }
        };
        match outcome {
            None => lines.push(format!("ok {name}")),
            Some(why) => {
                failures += 1;
                lines.push(format!("FAIL {name}: {why}"));
            }
        }
    }
    lines.push(format!(
        "{} passed, {} failed, {} total",
        cases.len() - failures,
        failures,
        cases.len()
    ));
    Ok((
        json!({"results": lines}),
        if failures == 0 { 0 } else { 1 },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus_dir() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
    }

    fn s(args: &[&str]) -> Vec<String> {
        args.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn regress_corpus_passes() {
        let dir = corpus_dir();
        let (out, code) = run(&s(&["regress", dir.to_str().unwrap()]))
            .unwrap_or_else(|_| panic!("regress failed to run"));
        assert_eq!(code, 0, "corpus diverged:\n{out}");
        assert!(out.contains("0 failed"));
    }

    #[test]
    fn usage_and_error_exit_codes() {
        match run(&s(&["no-such-command"])) {
            Err(CliFailure::Usage { code, .. }) => assert_eq!(code, 64),
            _ => panic!("expected a usage failure"),
        }
        match run(&s(&["--help"])) {
            Err(CliFailure::Usage { code, .. }) => assert_eq!(code, 0),
            _ => panic!("expected help"),
        }
        let broken = corpus_dir().join("broken.json");
        match run(&s(&["lattice", "info", broken.to_str().unwrap()])) {
            Err(CliFailure::Library(e)) => assert_eq!(exit_code_for(&e), 65),
            _ => panic!("expected a domain error"),
        }
        match run(&s(&["lattice", "info", "/nonexistent.json"])) {
            Err(CliFailure::Library(e)) => assert_eq!(exit_code_for(&e), 64),
            _ => panic!("expected a format error"),
        }
    }

    #[test]
    fn negative_verdicts_exit_one() {
        let lat = corpus_dir().join("lattices.json");
        let (_, code) = run(&s(&[
            "lattice",
            "conjugate",
            lat.to_str().unwrap(),
            "--name",
            "gamma",
            "--name",
            "mod2",
        ]))
        .unwrap_or_else(|_| panic!("conjugate should run"));
        assert_eq!(code, 1);
    }
}
