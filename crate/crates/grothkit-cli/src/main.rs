//! Command-line front end: compute family polynomials, expand them in the
//! quasisymmetric bases, enumerate the combinatorial objects behind them,
//! apply the algebra maps, and run the identity/conjecture checks.
//!
//! Exit status: 0 on success (and when every non-conjecture check passes),
//! 1 when a check fails or a computation cannot be carried out, 2 on usage
//! errors. `GROTHKIT_THREADS` caps the worker-thread count.

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grothkit::comps::Composition;
use grothkit::harness::{self, BoundsOverride};
use grothkit::posets::{named_poset, LabeledPoset};
use grothkit::ppart;
use grothkit::qsym::{self, BasisExpansion, BasisTag};
use grothkit::ring::TruncPoly;
use grothkit::shapes;

#[derive(Parser)]
#[command(
    name = "grothkit",
    version,
    about = "Exact arithmetic for K-theoretic (quasi)symmetric functions"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Emit LaTeX instead of text (where supported).
    #[arg(long, global = true, conflicts_with = "json")]
    latex: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a family member as a truncated polynomial.
    Compute {
        /// One of M, L, K, Kbar, G, GP, GQ, GS.
        family: String,
        /// Composition "2,1" for bases; partition shape "5,4,2/2,1" for
        /// G/GP/GQ/GS. The empty string is the empty index.
        shape: String,
        /// Number of variables (default: same as --deg).
        #[arg(long)]
        n: Option<usize>,
        /// Total-degree truncation (default: index size + 3).
        #[arg(long)]
        deg: Option<u32>,
        /// Assert that the family lives on shifted diagrams.
        #[arg(long)]
        shifted: bool,
    },
    /// Expand a family member in a basis.
    Expand {
        family: String,
        shape: String,
        /// Target basis: M, L, K, Kbar, GP, GQ, or GS.
        #[arg(long)]
        basis: String,
        /// Kept index size; expansion happens at n = deg = this value
        /// (default: index size + 3).
        #[arg(long)]
        max_size: Option<u32>,
    },
    /// List the combinatorial objects a family counts.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateCmd,
    },
    /// Run one registered check, or all of them.
    Verify {
        /// A check id, or "all". Use "list" to see the registry.
        check: String,
        /// Composition/partition size bound.
        #[arg(long)]
        size: Option<u32>,
        /// Largest allowed part in operator scans.
        #[arg(long)]
        part_bound: Option<u32>,
        /// Poset vertex-count bound.
        #[arg(long)]
        poset_size: Option<usize>,
        /// Number of variables.
        #[arg(long)]
        n: Option<usize>,
        /// Total-degree truncation.
        #[arg(long)]
        deg: Option<u32>,
        /// Truncation for formal operator variables.
        #[arg(long)]
        formal_deg: Option<u32>,
    },
    /// Apply an algebra map to a basis element.
    Apply {
        /// One of omega, psi, rho, antipode, theta.
        map: String,
        /// Source basis: L or K (antipode and theta: L only).
        basis: String,
        /// Composition index, e.g. "2,1".
        index: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        deg: Option<u32>,
    },
}

#[derive(Subcommand)]
enum EnumerateCmd {
    /// Order-preserving set-valued assignments of a labeled poset.
    Svp {
        #[command(flatten)]
        poset: PosetArg,
        /// Alphabet size.
        #[arg(long)]
        n: u32,
        /// Cap on the total number of letters used.
        #[arg(long)]
        max_total: usize,
        #[arg(long)]
        count: bool,
    },
    /// Enriched assignments over the marked alphabet.
    Esvp {
        #[command(flatten)]
        poset: PosetArg,
        /// Valley vertices restricted to unprimed letters, e.g. "0,2".
        #[arg(long, default_value = "")]
        valleys: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_total: usize,
        #[arg(long)]
        count: bool,
    },
    /// Standard set-valued tableaux of a (skew) shape.
    Tableaux {
        /// Shape such as "3,2/1".
        #[arg(long)]
        shape: String,
        #[arg(long)]
        shifted: bool,
        /// Cap on the number of entries.
        #[arg(long)]
        max_entries: usize,
        #[arg(long)]
        count: bool,
    },
    /// Linear multiextensions (words visiting every vertex, repeats allowed).
    Multiext {
        #[command(flatten)]
        poset: PosetArg,
        /// Cap on the word length.
        #[arg(long)]
        maxlen: usize,
        #[arg(long)]
        count: bool,
    },
}

#[derive(Args)]
struct PosetArg {
    /// A named poset (chain3, antichain2, dchain2, vee, wedge, diamond) or
    /// @file.json with {"m":…,"relations":[[a,b],…],"labels":[…]}.
    #[arg(long)]
    poset: String,
}

enum CliError {
    /// Bad arguments; exits 2.
    Usage(String),
    /// A computation or check failed; exits 1.
    Failed(String),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn main() -> ExitCode {
    if let Some(raw) = std::env::var_os("GROTHKIT_THREADS") {
        let parsed = raw.to_str().and_then(|s| s.parse::<usize>().ok());
        match parsed {
            Some(k) if k >= 1 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global()
                    .expect("thread pool is built once, before any parallel work");
            }
            _ => {
                eprintln!("error: GROTHKIT_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    let style = if cli.json {
        Style::Json
    } else if cli.latex {
        Style::Latex
    } else {
        Style::Text
    };
    match run(cli.cmd, style) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Style {
    Text,
    Json,
    Latex,
}

fn run(cmd: Cmd, style: Style) -> Result<ExitCode, CliError> {
    match cmd {
        Cmd::Compute {
            family,
            shape,
            n,
            deg,
            shifted,
        } => {
            let f = parse_family(&family)?;
            check_shifted_flag(f, shifted)?;
            let index = parse_index(f, &shape)?;
            let size: u32 = index_size(&index);
            let deg = deg.unwrap_or(size + 3);
            let n = n.unwrap_or(deg as usize);
            let poly = compute_family(f, &index, n, deg)?;
            print_poly(&poly, style);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Expand {
            family,
            shape,
            basis,
            max_size,
        } => {
            let f = parse_family(&family)?;
            let index = parse_index(f, &shape)?;
            let tag = parse_basis(&basis)?;
            let size = max_size.unwrap_or_else(|| index_size(&index) + 3);
            let poly = compute_family(f, &index, size as usize, size)?;
            let e = qsym::expand_in_basis(&poly, tag)
                .map_err(|e| CliError::Failed(format!("expansion failed: {e}")))?;
            print_expansion(&e, style);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Enumerate { what } => run_enumerate(what, style),
        Cmd::Verify {
            check,
            size,
            part_bound,
            poset_size,
            n,
            deg,
            formal_deg,
        } => {
            let overrides = BoundsOverride {
                poset_size,
                size,
                part_bound,
                n_vars: n,
                max_deg: deg,
                formal_deg,
            };
            run_verify(&check, &overrides, style)
        }
        Cmd::Apply {
            map,
            basis,
            index,
            n,
            deg,
        } => {
            let tag = parse_basis(&basis)?;
            if !matches!(tag, BasisTag::L | BasisTag::K) {
                return usage("apply works on basis L or K");
            }
            let parts = parse_parts(&index)?;
            if !valid_composition_index(tag, &parts) {
                return usage(format!("{index:?} is not a valid {basis} index"));
            }
            if matches!(map.as_str(), "theta" | "antipode") && tag != BasisTag::L {
                return usage(format!("{map} is defined on basis L only"));
            }
            let size: u32 = parts.iter().sum();
            let deg = deg.unwrap_or(size + 3);
            let n = n.unwrap_or(deg as usize);
            let e = BasisExpansion::single(tag, parts, deg);
            let failed = |e: qsym::QsymError| CliError::Failed(e.to_string());
            match map.as_str() {
                "theta" => {
                    let out = qsym::theta(&e).map_err(failed)?;
                    print_expansion(&out, style);
                }
                "omega" => print_poly(&qsym::omega(&e, n, deg).map_err(failed)?, style),
                "psi" => print_poly(&qsym::psi(&e, n, deg).map_err(failed)?, style),
                "rho" => print_poly(&qsym::rho(&e, n, deg).map_err(failed)?, style),
                "antipode" => print_poly(&qsym::antipode(&e, n, deg).map_err(failed)?, style),
                other => {
                    return usage(format!(
                        "unknown map '{other}' (expected omega, psi, rho, antipode, or theta)"
                    ))
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

// ---------------------------------------------------------------------------
// Families and indices

#[derive(Clone, Copy, PartialEq)]
enum Family {
    Basis(BasisTag),
    G,
}

fn parse_family(name: &str) -> Result<Family, CliError> {
    match name {
        "M" => Ok(Family::Basis(BasisTag::M)),
        "L" => Ok(Family::Basis(BasisTag::L)),
        "K" => Ok(Family::Basis(BasisTag::K)),
        "Kbar" => Ok(Family::Basis(BasisTag::Kbar)),
        "GP" => Ok(Family::Basis(BasisTag::GP)),
        "GQ" => Ok(Family::Basis(BasisTag::GQ)),
        "GS" => Ok(Family::Basis(BasisTag::GS)),
        "G" => Ok(Family::G),
        other => usage(format!(
            "unknown family '{other}' (expected M, L, K, Kbar, G, GP, GQ, or GS)"
        )),
    }
}

fn parse_basis(name: &str) -> Result<BasisTag, CliError> {
    match name {
        "M" => Ok(BasisTag::M),
        "L" => Ok(BasisTag::L),
        "K" => Ok(BasisTag::K),
        "Kbar" => Ok(BasisTag::Kbar),
        "GP" => Ok(BasisTag::GP),
        "GQ" => Ok(BasisTag::GQ),
        "GS" => Ok(BasisTag::GS),
        other => usage(format!(
            "unknown basis '{other}' (expected M, L, K, Kbar, GP, GQ, or GS)"
        )),
    }
}

fn check_shifted_flag(f: Family, shifted: bool) -> Result<(), CliError> {
    if !shifted {
        return Ok(());
    }
    match f {
        Family::Basis(BasisTag::GP | BasisTag::GQ | BasisTag::GS) => Ok(()),
        Family::G => usage("--shifted contradicts family G (use GP, GQ, or GS)"),
        Family::Basis(_) => usage("--shifted only applies to GP, GQ, or GS"),
    }
}

/// Either a composition (bases) or an outer/inner shape pair (families).
enum Index {
    Comp(Vec<u32>),
    Shape(Vec<u32>, Vec<u32>),
}

fn index_size(index: &Index) -> u32 {
    match index {
        Index::Comp(parts) => parts.iter().sum(),
        Index::Shape(outer, inner) => outer.iter().sum::<u32>() - inner.iter().sum::<u32>(),
    }
}

fn parse_parts(s: &str) -> Result<Vec<u32>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("bad part '{p}' in '{s}'")))
        })
        .collect()
}

fn valid_composition_index(tag: BasisTag, parts: &[u32]) -> bool {
    if parts.iter().any(|&p| p == 0) {
        return false;
    }
    match tag {
        BasisTag::M | BasisTag::L => true,
        BasisTag::K | BasisTag::Kbar => Composition::new(parts.to_vec()).is_peak(),
        _ => false,
    }
}

fn parse_index(f: Family, shape: &str) -> Result<Index, CliError> {
    match f {
        Family::Basis(tag @ (BasisTag::M | BasisTag::L | BasisTag::K | BasisTag::Kbar)) => {
            let parts = parse_parts(shape)?;
            if !valid_composition_index(tag, &parts) {
                let need = match tag {
                    BasisTag::M | BasisTag::L => "a composition of positive parts",
                    _ => "a peak composition (every part before the last at least 2)",
                };
                return usage(format!("'{shape}' is not {need}"));
            }
            Ok(Index::Comp(parts))
        }
        _ => {
            let (outer, inner) = shapes::parse_shape(shape)
                .map_err(|e| CliError::Usage(format!("bad shape '{shape}': {e}")))?;
            Ok(Index::Shape(outer, inner))
        }
    }
}

fn compute_family(f: Family, index: &Index, n: usize, deg: u32) -> Result<TruncPoly, CliError> {
    let failed = |e: shapes::ShapeError| CliError::Usage(e.to_string());
    match (f, index) {
        (Family::Basis(BasisTag::M), Index::Comp(p)) => {
            Ok(qsym::monomial_M(&Composition::new(p.clone()), n, deg))
        }
        (Family::Basis(BasisTag::L), Index::Comp(p)) => Ok(qsym::multifundamental_L(
            &Composition::new(p.clone()),
            n,
            deg,
        )),
        (Family::Basis(BasisTag::K), Index::Comp(p)) => {
            Ok(qsym::multipeak_K(&Composition::new(p.clone()), n, deg))
        }
        (Family::Basis(BasisTag::Kbar), Index::Comp(p)) => {
            Ok(qsym::multipeak_Kbar(&Composition::new(p.clone()), n, deg))
        }
        (Family::Basis(BasisTag::GP), Index::Shape(outer, inner)) => {
            shapes::grothendieck_GP(outer, inner, n, deg).map_err(failed)
        }
        (Family::Basis(BasisTag::GQ), Index::Shape(outer, inner)) => {
            shapes::grothendieck_GQ(outer, inner, n, deg).map_err(failed)
        }
        (Family::Basis(BasisTag::GS), Index::Shape(outer, inner)) => {
            shapes::grothendieck_GS(outer, inner, n, deg).map_err(failed)
        }
        (Family::G, Index::Shape(outer, inner)) => {
            shapes::grothendieck_G(outer, inner, n, deg).map_err(failed)
        }
        _ => unreachable!("parse_index pairs each family with its index kind"),
    }
}

// ---------------------------------------------------------------------------
// Enumeration

fn load_poset(arg: &PosetArg) -> Result<LabeledPoset, CliError> {
    if let Some(path) = arg.poset.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{path} is not JSON: {e}")))?;
        return LabeledPoset::from_json(&value)
            .map_err(|e| CliError::Usage(format!("{path}: {e}")));
    }
    named_poset(&arg.poset).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown poset '{}' (try chain3, antichain2, dchain2, vee, wedge, diamond, or @file.json)",
            arg.poset
        ))
    })
}

/// Prints one line to stdout, exiting quietly with the conventional
/// SIGPIPE status when the reading end has gone away (e.g. `| head`).
fn say(line: impl std::fmt::Display) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(141);
    }
}

fn emit_listing(items: Vec<String>, count: bool, style: Style) {
    if style == Style::Json {
        let v = if count {
            serde_json::json!({ "count": items.len() })
        } else {
            serde_json::json!({ "count": items.len(), "items": items })
        };
        say(v);
    } else if count {
        say(items.len());
    } else {
        for item in &items {
            say(item);
        }
    }
}

fn run_enumerate(what: EnumerateCmd, style: Style) -> Result<ExitCode, CliError> {
    match what {
        EnumerateCmd::Svp {
            poset,
            n,
            max_total,
            count,
        } => {
            let p = load_poset(&poset)?;
            let items: Vec<String> = ppart::enumerate_svp(&p, n, max_total)
                .iter()
                .map(|sets| ppart::render_assignment(sets, false))
                .collect();
            emit_listing(items, count, style);
            Ok(ExitCode::SUCCESS)
        }
        EnumerateCmd::Esvp {
            poset,
            valleys,
            n,
            max_total,
            count,
        } => {
            let p = load_poset(&poset)?;
            let v_set: BTreeSet<usize> = parse_parts(&valleys)?
                .into_iter()
                .map(|v| v as usize)
                .collect();
            let assignments = ppart::enumerate_esvp(&p, &v_set, n, max_total)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let items: Vec<String> = assignments
                .iter()
                .map(|sets| ppart::render_assignment(sets, true))
                .collect();
            emit_listing(items, count, style);
            Ok(ExitCode::SUCCESS)
        }
        EnumerateCmd::Tableaux {
            shape,
            shifted,
            max_entries,
            count,
        } => {
            let (outer, inner) = shapes::parse_shape(&shape)
                .map_err(|e| CliError::Usage(format!("bad shape '{shape}': {e}")))?;
            let ts = shapes::standard_set_tableaux(&outer, &inner, shifted, max_entries)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let items: Vec<String> = ts.iter().map(|t| t.to_text()).collect();
            emit_listing(items, count, style);
            Ok(ExitCode::SUCCESS)
        }
        EnumerateCmd::Multiext {
            poset,
            maxlen,
            count,
        } => {
            let p = load_poset(&poset)?;
            let items: Vec<String> = p
                .linear_multiextensions(maxlen)
                .iter()
                .map(|w| {
                    w.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            emit_listing(items, count, style);
            Ok(ExitCode::SUCCESS)
        }
    }
}

// ---------------------------------------------------------------------------
// Verification

fn run_verify(check: &str, overrides: &BoundsOverride, style: Style) -> Result<ExitCode, CliError> {
    if check == "list" {
        for id in harness::check_ids() {
            let spec = harness::check_spec(id).expect("registered");
            say(format!("{id}: {}", spec.summary));
        }
        return Ok(ExitCode::SUCCESS);
    }
    let reports = if check == "all" {
        harness::run_all(overrides)
    } else {
        match harness::run_check(check, overrides) {
            Some(r) => vec![r],
            None => {
                return usage(format!(
                    "unknown check '{check}'; valid ids:\n  {}",
                    harness::check_ids().join("\n  ")
                ))
            }
        }
    };
    let ok = reports.iter().all(|r| r.exit_ok());
    if style == Style::Json {
        let v: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
        say(serde_json::Value::Array(v));
    } else {
        for r in &reports {
            say(r.line());
        }
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

// ---------------------------------------------------------------------------
// Output

fn print_poly(poly: &TruncPoly, style: Style) {
    match style {
        Style::Text => say(poly.to_text()),
        Style::Latex => say(poly.to_latex()),
        Style::Json => say(poly.to_json()),
    }
}

fn print_expansion(e: &BasisExpansion, style: Style) {
    match style {
        Style::Text => say(e.to_text()),
        Style::Latex => say(e.to_latex()),
        Style::Json => say(e.to_json()),
    }
}
