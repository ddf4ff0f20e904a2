//! `grlab`: classify finite graded rings and verify the transfer theorems.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grlab_core::classify::{classify_ring, Property};
use grlab_core::verify::{catalog_entries, verify, CaseResult, Instances, Report, Status, TheoremId, VerifyOptions};
use grlab_core::GradedRing;
use serde::Serialize;

/// Like `print!`, but a closed stdout (e.g. piped into `head`) is not an error.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

/// Rows shown in text output before the witness table is cut off.
const PREVIEW_ROWS: usize = 12;

#[derive(Parser)]
#[command(name = "grlab", version, about = "Finite graded rings: NR-clean classification and theorem verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one graded ring from a spec file.
    Classify {
        spec: PathBuf,
        #[arg(long)]
        ring: String,
        /// nr-clean, u-nil-clean, nil-good or all
        #[arg(long, default_value = "all")]
        property: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify one theorem (or `all`) on a spec file or the built-in catalog.
    Verify {
        theorem: String,
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the built-in catalog with orders, supports and verdicts.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Full verification report for every theorem.
    Report {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        source: Source,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// Ring spec file (.grs); defaults to the catalog.
    #[arg(long, conflicts_with = "catalog")]
    spec: Option<PathBuf>,
    #[arg(long)]
    catalog: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    Spec(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("grlab: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Spec(m)) => {
            eprintln!("grlab: spec error: {m}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Instances, Failure> {
    if path.extension().and_then(|e| e.to_str()) != Some("grs") {
        return Err(Failure::Usage(format!("{}: spec files use the .grs extension", path.display())));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Instances::from_text(&text).map_err(|e| Failure::Spec(format!("{}:{e}", path.display())))
}

fn source(s: &Source) -> Result<Instances, Failure> {
    match &s.spec {
        Some(p) => load(p),
        None => Instances::catalog().map_err(|e| Failure::Spec(format!("catalog: {e}"))),
    }
}

fn exit_code(report: &Report) -> u8 {
    u8::from(report.has_failures())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Classify { spec, ring, property, format } => {
            let inst = load(&spec)?;
            let subject = inst
                .subject(&ring)
                .ok_or_else(|| Failure::Spec(format!("no graded ring named `{ring}` in {}", spec.display())))?;
            let props: Vec<Property> = if property.eq_ignore_ascii_case("all") {
                Property::ALL.to_vec()
            } else {
                vec![property.parse().map_err(Failure::Usage)?]
            };
            let out = classify(&subject.ring, &ring, &props, inst.spec_sha256.clone());
            match format {
                Format::Json => out!("{}\n", serde_json::to_string_pretty(&out).expect("serializes")),
                Format::Text => out!("{}", out.to_text()),
            }
            Ok(exit_code(&out.report))
        }
        Command::Verify { theorem, source: src, format } => {
            let ids: Vec<TheoremId> = if theorem.eq_ignore_ascii_case("all") {
                TheoremId::ALL.to_vec()
            } else {
                vec![theorem.parse().map_err(Failure::Usage)?]
            };
            let inst = source(&src)?;
            let report = verify(&ids, &inst, &VerifyOptions::default());
            emit(&report, format, None)?;
            Ok(exit_code(&report))
        }
        Command::Catalog { format } => {
            let inst = Instances::catalog().map_err(|e| Failure::Spec(format!("catalog: {e}")))?;
            let entries = catalog_entries(&inst);
            match format {
                Format::Json => out!("{}\n", serde_json::to_string_pretty(&entries).expect("serializes")),
                Format::Text => {
                    out!("{:<12} {:>6} {:>3}  {:<14} {:<8} {:<11} {}\n", "name", "order", "|G|", "support", "nr-clean", "u-nil-clean", "nil-good");
                    for e in &entries {
                        out!(
                            "{:<12} {:>6} {:>3}  {:<14} {:<8} {:<11} {}\n",
                            e.name,
                            e.order,
                            e.group_order,
                            format!("{{{}}}", e.support.join(",")),
                            yes(e.nr_clean),
                            yes(e.u_nil_clean),
                            yes(e.nil_good)
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Report { format, source: src, out } => {
            let inst = source(&src)?;
            let report = verify(&TheoremId::ALL, &inst, &VerifyOptions::default());
            emit(&report, format, out.as_deref())?;
            Ok(exit_code(&report))
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn emit(report: &Report, format: Format, out: Option<&Path>) -> Result<(), Failure> {
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct WitnessRow {
    property: Property,
    element: String,
    degree: String,
    regular_part: String,
    nilpotent_part: String,
    regularity_witness: String,
    unit_factor: Option<(String, String)>,
}

#[derive(Serialize)]
struct ClassifyOutput {
    #[serde(flatten)]
    report: Report,
    witnesses: Vec<WitnessRow>,
}

impl ClassifyOutput {
    fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.report.cases {
            out.push_str(&format!("{:<12} {:<5} {}\n", c.id, c.status.as_str(), c.detail));
        }
        if !self.witnesses.is_empty() {
            out.push_str("\nproperty     element              = regular              + nilpotent            (regularity witness)\n");
            for w in self.witnesses.iter().take(PREVIEW_ROWS) {
                out.push_str(&format!(
                    "{:<12} {:<20} = {:<20} + {:<20} ({})\n",
                    w.property.name(),
                    w.element,
                    w.regular_part,
                    w.nilpotent_part,
                    w.regularity_witness
                ));
            }
            if self.witnesses.len() > PREVIEW_ROWS {
                out.push_str(&format!(
                    "... {} more rows (use --format json for the full table)\n",
                    self.witnesses.len() - PREVIEW_ROWS
                ));
            }
        }
        out
    }
}

fn classify(r: &GradedRing, name: &str, props: &[Property], digest: String) -> ClassifyOutput {
    let ring = r.ring();
    let mut cases = Vec::new();
    let mut witnesses = Vec::new();
    for &p in props {
        let start = Instant::now();
        let v = classify_ring(r, p);
        let detail = match v.refuter {
            None => format!("{name} (order {}) is graded {p}; {} homogeneous witnesses", r.order(), v.witnesses.len()),
            Some(x) => {
                let deg = r.degree(x).map(|g| r.label(g).to_string()).unwrap_or_default();
                format!("{name} is not graded {p}: refuter {} (index {}, degree {deg})", ring.render(x), x.0)
            }
        };
        cases.push(CaseResult {
            id: format!("classify:{p}"),
            instance: name.to_string(),
            status: if v.holds { Status::Pass } else { Status::Fail },
            detail,
            millis: start.elapsed().as_millis() as u64,
        });
        witnesses.extend(v.witnesses.values().map(|w| WitnessRow {
            property: p,
            element: ring.render(w.element),
            degree: r.label(w.degree).to_string(),
            regular_part: ring.render(w.regular_part),
            nilpotent_part: ring.render(w.nilpotent_part),
            regularity_witness: ring.render(w.regularity_witness),
            unit_factor: w.unit_factor.map(|(f, u)| (ring.render(f), ring.render(u))),
        }));
    }
    ClassifyOutput { report: Report::new(digest, cases), witnesses }
}
