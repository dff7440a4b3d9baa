//! Command-line front end. Every command renders to a `String` so the output
//! can be tested without spawning a process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::catalog::{verify_matrix_claims, Family, GroupSpec, Params};
use crate::descent::{descent_report, fixed_and_pairs, twisted_parameter_action, FieldTag};
use crate::tori::torus_classification;
use crate::twisted::{a_max, twisted_involutions, ReachabilityGraph};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "orbitdescent", version, about = "Orbit parameters of symmetric subgroups on flag schemes over Z[1/2]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
}

impl GroupArgs {
    pub fn params(&self) -> Params {
        Params { n: self.n, p: self.p, q: self.q }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classes of θ-stable maximal tori.
    ClassifyTori {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Orbit parameters with their fields of definition.
    Orbits {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Twisted involutions I, the Springer image I' and a_max.
    Twisted {
        #[command(flatten)]
        group: GroupArgs,
        /// Print the reachability graph in DOT format.
        #[arg(long)]
        graph: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Re-check the matrix claims of the catalog entry.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Dump the catalog entry as JSON.
    Spec {
        #[command(flatten)]
        group: GroupArgs,
    },
}

/// Rendered output and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: i32, msg: String) -> Self {
        Outcome { stdout: String::new(), stderr: msg, code }
    }
}

fn error_outcome(e: Error) -> Outcome {
    let code = match e {
        Error::MissingWkData(_) | Error::MissingGaloisData(_) => EXIT_UNSUPPORTED,
        _ => EXIT_INVALID,
    };
    let hint = if code == EXIT_UNSUPPORTED { " (see the `twisted` command)" } else { "" };
    Outcome::fail(code, format!("error: {e}{hint}\n"))
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::ClassifyTori { group, format } => with_spec(group, |s| classify_tori(s, *format)),
        Command::Orbits { group, format } => with_spec(group, |s| orbits(s, *format)),
        Command::Twisted { group, graph, format } => with_spec(group, |s| twisted(s, *graph, *format)),
        Command::Verify { group, format } => with_spec(group, |s| verify(s, *format)),
        Command::Spec { group } => with_spec(group, |s| Ok(Outcome::ok(to_json(s)))),
    }
}

fn with_spec(group: &GroupArgs, f: impl FnOnce(&GroupSpec) -> crate::Result<Outcome>) -> Outcome {
    match GroupSpec::build(group.family, group.params()).and_then(|s| f(&s)) {
        Ok(o) => o,
        Err(e) => error_outcome(e),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn header(spec: &GroupSpec) -> String {
    format!("# {} (family {}, {})\n", spec.label(), spec.family(), params_text(spec.params()))
}

fn params_text(p: Params) -> String {
    let parts: Vec<String> = [("n", p.n), ("p", p.p), ("q", p.q)]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| format!("{k}={v}")))
        .collect();
    parts.join(", ")
}

// ---- classify-tori

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusRow {
    pub class: usize,
    pub involution: String,
    pub minus_dimension: usize,
    pub class_size: usize,
    pub catalog_torus: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToriOutput {
    pub family: Family,
    pub params: Params,
    pub label: String,
    pub classes: Vec<TorusRow>,
}

pub fn tori_output(spec: &GroupSpec) -> crate::Result<ToriOutput> {
    let classes = torus_classification(spec.lattice())?;
    let theta = spec.theta_w();
    let rows = classes
        .iter()
        .enumerate()
        .map(|(k, c)| TorusRow {
            class: k,
            involution: c.involution_rep.to_string(),
            minus_dimension: c.minus_dimension,
            class_size: c.class_members.len(),
            catalog_torus: spec
                .tori()
                .iter()
                .find(|t| spec.lattice().split_rank(&(t.twist_class * theta)) == c.minus_dimension)
                .map(|t| t.label.clone()),
        })
        .collect();
    Ok(ToriOutput { family: spec.family(), params: spec.params(), label: spec.label().into(), classes: rows })
}

fn classify_tori(spec: &GroupSpec, format: Format) -> crate::Result<Outcome> {
    let out = tori_output(spec)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&out),
        Format::Dot => return Ok(Outcome::fail(EXIT_INVALID, "error: dot output is only available for `twisted`\n".into())),
        Format::Table => {
            let mut s = header(spec);
            let _ = writeln!(s, "{:<6} {:<28} {:>9} {:>6}  torus", "class", "involution", "minus-dim", "size");
            for r in &out.classes {
                let _ = writeln!(
                    s,
                    "{:<6} {:<28} {:>9} {:>6}  {}",
                    r.class,
                    r.involution,
                    r.minus_dimension,
                    r.class_size,
                    r.catalog_torus.as_deref().unwrap_or("-")
                );
            }
            let _ = writeln!(s, "{} classes", out.classes.len());
            s
        }
    }))
}

// ---- orbits

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub torus_class: Option<usize>,
    pub representative: String,
    pub springer_value: String,
    pub field_of_definition: FieldTag,
    pub partner: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    /// Parameters over `Z[1/2, i]`.
    pub parameters: usize,
    /// Orbits over `Z[1/2]`, i.e. fixed parameters plus Galois pairs.
    pub orbits: usize,
    pub over_base: usize,
    pub galois_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsOutput {
    pub family: Family,
    pub params: Params,
    pub label: String,
    pub picture: String,
    pub galois_rules: Vec<String>,
    pub records: Vec<OutputRecord>,
    pub counts: Counts,
}

pub fn orbits_output(spec: &GroupSpec) -> crate::Result<OrbitsOutput> {
    if !spec.has_wk_data() {
        return Err(Error::MissingWkData(spec.family().to_string()));
    }
    let r = descent_report(spec)?;
    let records: Vec<OutputRecord> = r
        .entries
        .iter()
        .map(|e| OutputRecord {
            torus_class: e.torus_index,
            representative: e.representative.to_string(),
            springer_value: e.springer_value.to_string(),
            field_of_definition: e.field,
            partner: e.partner.map(|p| p.to_string()),
        })
        .collect();
    let counts = Counts {
        parameters: records.len(),
        orbits: r.fixed_count() + r.pair_count(),
        over_base: r.fixed_count(),
        galois_pairs: r.pair_count(),
    };
    Ok(OrbitsOutput {
        family: spec.family(),
        params: spec.params(),
        label: spec.label().into(),
        picture: r.picture.into(),
        galois_rules: r.rules,
        records,
        counts,
    })
}

fn summary_line(c: &Counts) -> String {
    format!(
        "{} parameters: {} fixed over Z[1/2] + {} Galois pair(s) over Z[1/2,i]; {} orbits over Z[1/2]",
        c.parameters, c.over_base, c.galois_pairs, c.orbits
    )
}

fn orbits(spec: &GroupSpec, format: Format) -> crate::Result<Outcome> {
    if format == Format::Dot {
        return Ok(Outcome::ok(ReachabilityGraph::build(spec.context())?.to_dot()));
    }
    let out = orbits_output(spec)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&out),
        _ => {
            let mut s = header(spec);
            for rule in &out.galois_rules {
                let _ = writeln!(s, "# galois {rule}");
            }
            let _ = writeln!(s, "{:<6} {:<24} {:<24} {:<14} partner", "torus", "representative", "springer", "field");
            for r in &out.records {
                let _ = writeln!(
                    s,
                    "{:<6} {:<24} {:<24} {:<14} {}",
                    r.torus_class.map_or("-".into(), |i| i.to_string()),
                    r.representative,
                    r.springer_value,
                    r.field_of_definition,
                    r.partner.as_deref().unwrap_or("-")
                );
            }
            let _ = writeln!(s, "summary: {}", summary_line(&out.counts));
            s
        }
    }))
}

// ---- twisted

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedRecord {
    pub element: String,
    pub field_of_definition: FieldTag,
    pub partner: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedOutput {
    pub family: Family,
    pub params: Params,
    pub label: String,
    pub w0: String,
    pub a_max: String,
    pub twisted_involutions: Vec<String>,
    pub image: Vec<TwistedRecord>,
    pub galois_rule: String,
    pub counts: Counts,
}

pub fn twisted_output(spec: &GroupSpec) -> crate::Result<TwistedOutput> {
    let all = twisted_involutions(spec.context())?;
    let action = twisted_parameter_action(spec)?;
    let (fixed, pairs) = fixed_and_pairs(&action)?;
    let image = action
        .domain()
        .iter()
        .map(|x| {
            let partner = pairs.iter().find_map(|&(a, b)| {
                if a == *x {
                    Some(b)
                } else if b == *x {
                    Some(a)
                } else {
                    None
                }
            });
            TwistedRecord {
                element: x.to_string(),
                field_of_definition: if partner.is_some() { FieldTag::Pair } else { FieldTag::Base },
                partner: partner.map(|p| p.to_string()),
            }
        })
        .collect::<Vec<_>>();
    let counts = Counts {
        parameters: image.len(),
        orbits: fixed.len() + pairs.len(),
        over_base: fixed.len(),
        galois_pairs: pairs.len(),
    };
    Ok(TwistedOutput {
        family: spec.family(),
        params: spec.params(),
        label: spec.label().into(),
        w0: spec.weyl().longest_element().to_string(),
        a_max: a_max(spec)?.to_string(),
        twisted_involutions: all.iter().map(|w| w.to_string()).collect(),
        image,
        galois_rule: action.rule().to_string(),
        counts,
    })
}

fn twisted(spec: &GroupSpec, graph: bool, format: Format) -> crate::Result<Outcome> {
    if graph || format == Format::Dot {
        return Ok(Outcome::ok(ReachabilityGraph::build(spec.context())?.to_dot()));
    }
    let out = twisted_output(spec)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&out),
        _ => {
            let mut s = header(spec);
            let _ = writeln!(s, "w0 = {}", out.w0);
            let _ = writeln!(s, "a_max = {}", out.a_max);
            let _ = writeln!(s, "|I| = {}", out.twisted_involutions.len());
            let _ = writeln!(s, "I = {{{}}}", out.twisted_involutions.join(", "));
            let _ = writeln!(s, "|I'| = {}", out.image.len());
            let _ = writeln!(s, "I' = {{{}}}", out.image.iter().map(|r| r.element.as_str()).collect::<Vec<_>>().join(", "));
            let _ = writeln!(s, "# galois {}", out.galois_rule);
            for r in &out.image {
                let _ = writeln!(s, "{:<28} {:<14} {}", r.element, r.field_of_definition, r.partner.as_deref().unwrap_or("-"));
            }
            let _ = writeln!(s, "summary: {}", summary_line(&out.counts));
            s
        }
    }))
}

// ---- verify

fn verify(spec: &GroupSpec, format: Format) -> crate::Result<Outcome> {
    let report = verify_matrix_claims(spec);
    let stdout = match format {
        Format::Json => to_json(&report),
        _ => {
            let mut s = header(spec);
            for l in &report.lines {
                let mark = if l.passed { "PASS" } else { "FAIL" };
                if l.detail.is_empty() {
                    let _ = writeln!(s, "{mark}  {}", l.name);
                } else {
                    let _ = writeln!(s, "{mark}  {}  [{}]", l.name, l.detail);
                }
            }
            let _ = writeln!(s, "{} claims, {} failed", report.lines.len(), report.failures());
            s
        }
    };
    let code = if report.all_passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(Outcome { stdout, stderr: String::new(), code })
}
