//! Command implementations for the `lefdisc` binary.
//!
//! Every command produces a [`Report`]: the echoed inputs, a structured
//! result payload, and the list of violations. Exit code 0 means the
//! command ran and found no violation, 1 means a mathematical check failed,
//! 2 means the input was malformed. Output is fully deterministic; the
//! machine format (`--format json`) mirrors the text output bit-exactly
//! run over run.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use lefdisc_core::catalog;
use lefdisc_core::exactmath::{LinearForm, Multiplicity, Rational};
use lefdisc_core::gca::{self, CohomologyRing, RingError};
use lefdisc_core::geometry::{
    self, cross_check, fiber_locus_check, length_bound, predicted_support, strata_check,
    ContractionRecord,
};
use lefdisc_core::lefschetz::{
    check_lefschetz_at, full_discriminant, is_l_supported, search_l_supported, Discriminant,
};

#[derive(Debug, Parser)]
#[command(
    name = "lefdisc",
    about = "Exact Lefschetz discriminants of Poincare duality algebras",
    version
)]
pub struct Cli {
    /// Output format for the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every ring axiom of a ring file.
    Validate { ring: PathBuf },
    /// Betti numbers and level layout of a ring file.
    Info { ring: PathBuf },
    /// Compute discriminants.
    Disc {
        ring: PathBuf,
        /// Single level to compute.
        #[arg(long, conflicts_with = "all")]
        k: Option<u32>,
        /// Compute every level 1..=n.
        #[arg(long)]
        all: bool,
    },
    /// Test the Lefschetz condition at a rational class.
    Check {
        ring: PathBuf,
        /// Comma-separated rational coordinates, e.g. `1,-2/3`.
        #[arg(long)]
        eta: String,
    },
    /// Support of one candidate homology class.
    Ray {
        ring: PathBuf,
        /// Comma-separated rational coefficients of the form.
        #[arg(long)]
        alpha: String,
    },
    /// Enumerate all supported primitive forms up to a height bound.
    Search {
        ring: PathBuf,
        #[arg(long)]
        height: u32,
    },
    /// Check contraction inequalities on pure integer data.
    Geom {
        #[arg(long)]
        n: u32,
        #[arg(long = "dim-s")]
        dim_s: u32,
        #[arg(long = "dim-phi-s")]
        dim_phi_s: u32,
        #[arg(long)]
        length: Option<u32>,
        /// Strata as `k:dim` pairs, e.g. `2:0,3:1`.
        #[arg(long)]
        strata: Option<String>,
    },
    /// Compare a contraction's predicted support with the discriminants.
    Cross {
        ring: PathBuf,
        #[arg(long)]
        ray: String,
        #[arg(long)]
        n: u32,
        #[arg(long = "dim-s")]
        dim_s: u32,
        #[arg(long = "dim-phi-s")]
        dim_phi_s: u32,
        #[arg(long)]
        length: Option<u32>,
    },
    /// List or emit the built-in example rings.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Print every catalog key.
    List,
    /// Write the ring document of one catalog entry.
    Emit {
        key: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Malformed input: unreadable file, unparsable document or argument.
/// Always exits with code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for InputError {}

/// The canonical machine-readable outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub violations: Vec<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

struct Outcome {
    text: String,
    results: Value,
    violations: Vec<String>,
}

/// Run a parsed invocation. `Ok` carries the report and the rendered text;
/// `Err` is a malformed-input failure (exit 2).
pub fn execute(cli: &Cli) -> Result<(Report, String), InputError> {
    let (command, inputs, outcome) = match &cli.command {
        Command::Validate { ring } => ("validate", path_inputs(ring), cmd_validate(ring)?),
        Command::Info { ring } => ("info", path_inputs(ring), cmd_info(ring)?),
        Command::Disc { ring, k, all } => {
            let mut inputs = path_inputs(ring);
            if let Some(k) = k {
                inputs.insert("k".into(), k.to_string());
            }
            inputs.insert("all".into(), all.to_string());
            ("disc", inputs, cmd_disc(ring, *k, *all)?)
        }
        Command::Check { ring, eta } => {
            let mut inputs = path_inputs(ring);
            inputs.insert("eta".into(), eta.clone());
            ("check", inputs, cmd_check(ring, eta)?)
        }
        Command::Ray { ring, alpha } => {
            let mut inputs = path_inputs(ring);
            inputs.insert("alpha".into(), alpha.clone());
            ("ray", inputs, cmd_ray(ring, alpha)?)
        }
        Command::Search { ring, height } => {
            let mut inputs = path_inputs(ring);
            inputs.insert("height".into(), height.to_string());
            ("search", inputs, cmd_search(ring, *height)?)
        }
        Command::Geom {
            n,
            dim_s,
            dim_phi_s,
            length,
            strata,
        } => {
            let mut inputs = BTreeMap::new();
            inputs.insert("n".into(), n.to_string());
            inputs.insert("dim_s".into(), dim_s.to_string());
            inputs.insert("dim_phi_s".into(), dim_phi_s.to_string());
            if let Some(l) = length {
                inputs.insert("length".into(), l.to_string());
            }
            if let Some(s) = strata {
                inputs.insert("strata".into(), s.clone());
            }
            (
                "geom",
                inputs,
                cmd_geom(*n, *dim_s, *dim_phi_s, *length, strata.as_deref())?,
            )
        }
        Command::Cross {
            ring,
            ray,
            n,
            dim_s,
            dim_phi_s,
            length,
        } => {
            let mut inputs = path_inputs(ring);
            inputs.insert("ray".into(), ray.clone());
            inputs.insert("n".into(), n.to_string());
            inputs.insert("dim_s".into(), dim_s.to_string());
            inputs.insert("dim_phi_s".into(), dim_phi_s.to_string());
            if let Some(l) = length {
                inputs.insert("length".into(), l.to_string());
            }
            (
                "cross",
                inputs,
                cmd_cross(ring, ray, *n, *dim_s, *dim_phi_s, *length)?,
            )
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => ("catalog list", BTreeMap::new(), cmd_catalog_list()),
            CatalogAction::Emit { key, output } => {
                let mut inputs = BTreeMap::new();
                inputs.insert("key".into(), key.clone());
                inputs.insert("output".into(), output.display().to_string());
                ("catalog emit", inputs, cmd_catalog_emit(key, output)?)
            }
        },
    };
    let report = Report {
        command: command.to_string(),
        inputs,
        results: outcome.results,
        violations: outcome.violations,
    };
    Ok((report, outcome.text))
}

/// Parse, execute, and print. Returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok((report, text)) => {
            match cli.format {
                Format::Text => print!("{text}"),
                Format::Json => print!("{}", report.to_json()),
            }
            report.exit_code()
        }
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn path_inputs(path: &Path) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("ring".into(), path.display().to_string());
    m
}

fn read_file(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

/// Load a ring for a computation command. Parse and schema problems are
/// malformed input; axiom violations surface as a report with exit 1.
enum Loaded {
    Ring(CohomologyRing),
    Invalid(Outcome),
}

fn load_for_command(path: &Path) -> Result<Loaded, InputError> {
    let content = read_file(path)?;
    match gca::load_ring(&content) {
        Ok(ring) => Ok(Loaded::Ring(ring)),
        Err(RingError::Validation(v)) => {
            let violations: Vec<String> = v.violations.iter().map(|x| x.to_string()).collect();
            let mut text = String::from("ring fails validation:\n");
            for violation in &violations {
                let _ = writeln!(text, "  - {violation}");
            }
            Ok(Loaded::Invalid(Outcome {
                text,
                results: json!({ "valid": false }),
                violations,
            }))
        }
        Err(e) => Err(InputError(e.to_string())),
    }
}

fn parse_rationals(input: &str) -> Result<Vec<Rational>, InputError> {
    input
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<Rational>()
                .map_err(|_| InputError(format!("cannot parse rational '{tok}'")))
        })
        .collect()
}

fn rational_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn form_text(form: &LinearForm) -> String {
    form.to_string()
}

fn cmd_validate(path: &Path) -> Result<Outcome, InputError> {
    match load_for_command(path)? {
        Loaded::Invalid(outcome) => Ok(outcome),
        Loaded::Ring(ring) => Ok(Outcome {
            text: format!(
                "ring '{}' is valid (n = {}, betti {:?})\n",
                ring.name(),
                ring.complex_dim(),
                ring.betti_vector()
            ),
            results: json!({
                "valid": true,
                "name": ring.name(),
                "complex_dim": ring.complex_dim(),
                "betti": ring.betti_vector(),
            }),
            violations: Vec::new(),
        }),
    }
}

fn cmd_info(path: &Path) -> Result<Outcome, InputError> {
    let ring = match load_for_command(path)? {
        Loaded::Invalid(outcome) => return Ok(outcome),
        Loaded::Ring(ring) => ring,
    };
    let n = ring.complex_dim();
    let mut text = format!(
        "ring '{}': n = {}, betti {:?}, rho = {}\n",
        ring.name(),
        n,
        ring.betti_vector(),
        ring.rho()
    );
    let mut levels = Vec::new();
    for k in 1..=n {
        let b = ring.betti(n - k);
        let parity = if (n - k) % 2 == 0 {
            "symmetric"
        } else {
            "skew"
        };
        let _ = writeln!(
            text,
            "level k={k}: pairing on degree {} ({} x {}, {})",
            n - k,
            b,
            b,
            parity
        );
        levels.push(json!({
            "k": k,
            "space_degree": n - k,
            "space_dim": b,
            "symmetry": parity,
        }));
    }
    Ok(Outcome {
        text,
        results: json!({
            "name": ring.name(),
            "complex_dim": n,
            "betti": ring.betti_vector(),
            "rho": ring.rho(),
            "levels": levels,
        }),
        violations: Vec::new(),
    })
}

fn disc_line(d: &Discriminant) -> String {
    if d.is_vacuous() {
        format!("δ_{} = 1 (vacuous)\n", d.k)
    } else if d.is_zero {
        format!("δ_{} = 0 (void)\n", d.k)
    } else {
        let mut line = format!(
            "δ_{} = {} (degree {} = {}*{})\n",
            d.k,
            d.delta,
            d.delta.degree().unwrap_or(0),
            d.k,
            d.space_dim
        );
        if let Some(pf) = &d.pfaffian_part {
            let _ = writeln!(line, "  pfaffian_{} = {}", d.k, pf);
        }
        line
    }
}

fn disc_json(d: &Discriminant) -> Value {
    json!({
        "k": d.k,
        "space_dim": d.space_dim,
        "delta": d.delta.to_string(),
        "degree": d.delta.degree(),
        "expected_degree": d.expected_degree,
        "vacuous": d.is_vacuous(),
        "void": d.is_zero,
        "pfaffian": d.pfaffian_part.as_ref().map(|p| p.to_string()),
    })
}

fn cmd_disc(path: &Path, k: Option<u32>, all: bool) -> Result<Outcome, InputError> {
    let ring = match load_for_command(path)? {
        Loaded::Invalid(outcome) => return Ok(outcome),
        Loaded::Ring(ring) => ring,
    };
    let discs: Vec<Discriminant> = match (k, all) {
        (Some(k), false) => {
            let disc = lefdisc_core::lefschetz::discriminant(&ring, k)
                .map_err(|e| InputError(e.to_string()))?;
            vec![disc]
        }
        (None, _) => full_discriminant(&ring),
        (Some(_), true) => unreachable!("clap forbids --k with --all"),
    };
    let mut text = String::new();
    for d in &discs {
        text.push_str(&disc_line(d));
    }
    Ok(Outcome {
        text,
        results: json!({
            "ring": ring.name(),
            "levels": discs.iter().map(disc_json).collect::<Vec<_>>(),
        }),
        violations: Vec::new(),
    })
}

fn cmd_check(path: &Path, eta: &str) -> Result<Outcome, InputError> {
    let ring = match load_for_command(path)? {
        Loaded::Invalid(outcome) => return Ok(outcome),
        Loaded::Ring(ring) => ring,
    };
    let point = parse_rationals(eta)?;
    let verdict = check_lefschetz_at(&ring, &point).map_err(|e| InputError(e.to_string()))?;
    let mut text = String::new();
    let mut violations = Vec::new();
    let mut levels = Vec::new();
    for level in &verdict.levels {
        if level.vacuous {
            let _ = writeln!(text, "k={}: pass (vacuous)", level.k);
        } else if level.pass {
            let _ = writeln!(
                text,
                "k={}: pass (rank {} of {})",
                level.k, level.rank, level.space_dim
            );
        } else {
            let _ = writeln!(
                text,
                "k={}: FAIL (rank {} of {})",
                level.k, level.rank, level.space_dim
            );
            violations.push(format!(
                "level {} degenerates: rank {} < {}",
                level.k, level.rank, level.space_dim
            ));
        }
        levels.push(json!({
            "k": level.k,
            "vacuous": level.vacuous,
            "rank": level.rank,
            "space_dim": level.space_dim,
            "pass": level.pass,
        }));
    }
    let _ = writeln!(
        text,
        "Lefschetz condition {} at eta = ({})",
        if verdict.all_pass { "holds" } else { "fails" },
        eta
    );
    Ok(Outcome {
        text,
        results: json!({
            "ring": ring.name(),
            "eta": rational_strings(&point),
            "levels": levels,
            "all_pass": verdict.all_pass,
        }),
        violations,
    })
}

fn ray_json(ray: &lefdisc_core::RayForm) -> Value {
    json!({
        "form": rational_strings(ray.form.coeffs()),
        "support": ray
            .support
            .iter()
            .map(|(k, m)| json!({ "k": k, "multiplicity": m }))
            .collect::<Vec<_>>(),
        "void_levels": ray.void_levels,
    })
}

fn cmd_ray(path: &Path, alpha: &str) -> Result<Outcome, InputError> {
    let ring = match load_for_command(path)? {
        Loaded::Invalid(outcome) => return Ok(outcome),
        Loaded::Ring(ring) => ring,
    };
    let coeffs = parse_rationals(alpha)?;
    let form = LinearForm::new(coeffs);
    let ray = is_l_supported(&ring, &form).map_err(|e| InputError(e.to_string()))?;
    let mut text = format!("alpha = {} (primitive form)\n", form_text(&ray.form));
    if ray.support.is_empty() {
        text.push_str("L-negligible: divides no discriminant\n");
    } else {
        for (k, m) in &ray.support {
            let _ = writeln!(text, "type {k}, multiplicity {m}");
        }
    }
    for k in &ray.void_levels {
        let _ = writeln!(text, "level {k} is void (zero discriminant)");
    }
    Ok(Outcome {
        text,
        results: json!({ "ring": ring.name(), "ray": ray_json(&ray) }),
        violations: Vec::new(),
    })
}

fn cmd_search(path: &Path, height: u32) -> Result<Outcome, InputError> {
    let ring = match load_for_command(path)? {
        Loaded::Invalid(outcome) => return Ok(outcome),
        Loaded::Ring(ring) => ring,
    };
    let report = search_l_supported(&ring, height);
    let mut text = String::new();
    for ray in &report.rays {
        let support = ray
            .support
            .iter()
            .map(|(k, m)| format!("(type {k}, multiplicity {m})"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(text, "{} {}", form_text(&ray.form), support);
    }
    let _ = writeln!(
        text,
        "{} supported form(s) up to height {height}",
        report.rays.len()
    );
    for k in &report.void_levels {
        let _ = writeln!(text, "level {k} is void (zero discriminant)");
    }
    Ok(Outcome {
        text,
        results: json!({
            "ring": ring.name(),
            "height": height,
            "rays": report.rays.iter().map(ray_json).collect::<Vec<_>>(),
            "void_levels": report.void_levels,
        }),
        violations: Vec::new(),
    })
}

fn parse_strata(input: &str) -> Result<Vec<(u32, u32)>, InputError> {
    input
        .split(',')
        .map(|pair| {
            let (k, z) = pair
                .split_once(':')
                .ok_or_else(|| InputError(format!("stratum '{pair}' is not k:dim")))?;
            let k = k
                .trim()
                .parse()
                .map_err(|_| InputError(format!("bad stratum level '{k}'")))?;
            let z = z
                .trim()
                .parse()
                .map_err(|_| InputError(format!("bad stratum dimension '{z}'")))?;
            Ok((k, z))
        })
        .collect()
}

fn cmd_geom(
    n: u32,
    dim_s: u32,
    dim_phi_s: u32,
    length: Option<u32>,
    strata: Option<&str>,
) -> Result<Outcome, InputError> {
    let mut record = ContractionRecord::new(n, dim_s, dim_phi_s);
    if let Some(l) = length {
        record = record.with_length(l);
    }
    if let Some(s) = strata {
        record = record.with_strata(parse_strata(s)?);
    }
    record.validate().map_err(|e| InputError(e.to_string()))?;

    let mut text = String::new();
    let mut violations = Vec::new();

    let prediction = predicted_support(&record).map_err(|e| InputError(e.to_string()))?;
    match prediction {
        Some((k, m)) => {
            let _ = writeln!(
                text,
                "prediction: L-supported of type {k}, multiplicity >= {m}"
            );
        }
        None => {
            let _ = writeln!(text, "prediction: none (2*dim S - dim phi(S) <= n)");
        }
    }

    let mut fiber_ok = None;
    if record.length.is_some() {
        let ok = fiber_locus_check(&record).map_err(|e| InputError(e.to_string()))?;
        fiber_ok = Some(ok);
        let _ = writeln!(
            text,
            "fiber-locus inequality: {}",
            if ok { "ok" } else { "violation" }
        );
        if !ok {
            violations.push("fiber-locus inequality fails".into());
        }
    }

    let mut strata_results = Vec::new();
    if record.strata.is_some() {
        for (k, z, ok) in strata_check(&record).map_err(|e| InputError(e.to_string()))? {
            let _ = writeln!(
                text,
                "stratum Z_{k} (dim {z}): {}",
                if ok { "ok" } else { "violation" }
            );
            if !ok {
                violations.push(format!("stratum Z_{k} of dimension {z} exceeds the bound"));
            }
            strata_results.push(json!({ "k": k, "dim": z, "ok": ok }));
        }
    }

    Ok(Outcome {
        text,
        results: json!({
            "prediction": prediction.map(|(k, m)| json!({ "k": k, "m_lower": m })),
            "fiber_locus_ok": fiber_ok,
            "strata": strata_results,
        }),
        violations,
    })
}

fn cmd_cross(
    path: &Path,
    ray: &str,
    n: u32,
    dim_s: u32,
    dim_phi_s: u32,
    length: Option<u32>,
) -> Result<Outcome, InputError> {
    let ring = match load_for_command(path)? {
        Loaded::Invalid(outcome) => return Ok(outcome),
        Loaded::Ring(ring) => ring,
    };
    let coeffs = parse_rationals(ray)?;
    let mut record = ContractionRecord::new(n, dim_s, dim_phi_s).with_ray(LinearForm::new(coeffs));
    if let Some(l) = length {
        record = record.with_length(l);
    }
    let report = cross_check(&ring, &record).map_err(|e| match e {
        geometry::Error::InvalidRecord(_) | geometry::Error::MissingRay => {
            InputError(e.to_string())
        }
        other => InputError(other.to_string()),
    })?;

    let mut text = String::new();
    let mut violations = Vec::new();
    match report.prediction {
        Some((k, m)) => {
            let _ = writeln!(text, "prediction: type {k}, multiplicity >= {m}");
            let observed = report.observed.expect("prediction implies an observation");
            let _ = writeln!(text, "observed multiplicity at k={k}: {observed}");
            if report.ok {
                let _ = writeln!(text, "cross-check: ok");
            } else {
                let _ = writeln!(text, "cross-check: violation");
                violations.push(format!(
                    "observed multiplicity {observed} at level {k} is below the predicted {m}"
                ));
            }
        }
        None => {
            let _ = writeln!(text, "prediction: none; observed support is informational");
            let _ = writeln!(text, "cross-check: ok");
        }
    }
    if report.support.is_empty() {
        let _ = writeln!(text, "support: empty (L-negligible)");
    } else {
        for (k, m) in &report.support {
            let _ = writeln!(text, "support: type {k}, multiplicity {m}");
        }
    }

    let mut length_ok = None;
    if record.length.is_some() {
        if let Some(Multiplicity::Finite(observed)) = report.observed {
            let ok = length_bound(&record, observed).map_err(|e| InputError(e.to_string()))?;
            length_ok = Some(ok);
            let _ = writeln!(
                text,
                "length bound m >= l - 1: {}",
                if ok { "ok" } else { "violation" }
            );
            if !ok {
                violations.push("observed multiplicity is below length - 1".into());
            }
        }
    }

    Ok(Outcome {
        text,
        results: json!({
            "ring": ring.name(),
            "prediction": report.prediction.map(|(k, m)| json!({ "k": k, "m_lower": m })),
            "observed": report.observed.map(|m| m.to_string()),
            "support": report
                .support
                .iter()
                .map(|(k, m)| json!({ "k": k, "multiplicity": m }))
                .collect::<Vec<_>>(),
            "length_bound_ok": length_ok,
            "ok": report.ok,
        }),
        violations,
    })
}

fn cmd_catalog_list() -> Outcome {
    let mut text = String::new();
    let mut entries = Vec::new();
    for entry in catalog::all() {
        let _ = writeln!(
            text,
            "{:<8} {} (n = {}, betti {:?})",
            entry.key,
            entry.ring.name(),
            entry.ring.complex_dim(),
            entry.ring.betti_vector()
        );
        entries.push(json!({
            "key": entry.key,
            "name": entry.ring.name(),
            "complex_dim": entry.ring.complex_dim(),
            "betti": entry.ring.betti_vector(),
        }));
    }
    Outcome {
        text,
        results: json!({ "entries": entries }),
        violations: Vec::new(),
    }
}

fn cmd_catalog_emit(key: &str, output: &Path) -> Result<Outcome, InputError> {
    let entry =
        catalog::get(key).ok_or_else(|| InputError(format!("unknown catalog key '{key}'")))?;
    let document = gca::emit_ring(&entry.ring);
    std::fs::write(output, &document)
        .map_err(|e| InputError(format!("cannot write {}: {e}", output.display())))?;
    Ok(Outcome {
        text: format!("wrote '{}' to {}\n", entry.ring.name(), output.display()),
        results: json!({ "key": key, "output": output.display().to_string() }),
        violations: Vec::new(),
    })
}
