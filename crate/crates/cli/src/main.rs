use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncchar::io::{self, Document};
use ncchar::linalg::format_rational;
use ncchar::random::{random_invertible, seeded};
use ncchar::{chi_via_qdet, first_difference, minimize, qdet_phi_report, reconstruct, LinRep, TruncSeries, Word};

#[derive(Parser, Debug)]
#[command(name = "ncchar", version, about = "Exact characteristic series of free-algebra and P_mu modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Truncation order (maximum word length) for series output.
    #[arg(long, global = true, default_value_t = 8)]
    order: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for commands that draw random changes of basis.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic series of a free-algebra module.
    Chi { module: PathBuf },
    /// Characteristic series of a P_mu-module.
    Phi { module: PathBuf },
    /// Compare two realizations or modules; exit 1 when the series differ.
    Equal { left: PathBuf, right: PathBuf },
    /// Minimal realization of the same series.
    Minimize { rep: PathBuf },
    /// The module spanned by the derivatives of a series, with its generator.
    Reconstruct { rep: PathBuf },
    /// Compare the characteristic series with its quasideterminant formula.
    QdetCheck { module: PathBuf },
    /// Series attached to an Alexander polynomial, given as "1,-1,1" or a file.
    Alexander { delta: String },
    /// Word-by-word comparison of the quasideterminant sum with phi.
    #[command(name = "prop43-report")]
    QdetPhiReport { module: PathBuf },
}

/// A finished report and the exit code it carries.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse_document(&text).with_context(|| format!("parsing {}", path.display()))
}

fn series_lines(s: &TruncSeries) -> String {
    let mut out = String::new();
    for (w, c) in s.terms() {
        writeln!(out, "{}\t{}", w, format_rational(c)).unwrap();
    }
    out
}

fn series_value(s: &TruncSeries) -> Value {
    serde_json::from_str(&io::series_to_json(s)).expect("series documents are valid JSON")
}

fn render_series(s: &TruncSeries, format: Format) -> String {
    match format {
        Format::Text => series_lines(s),
        Format::Json => io::series_to_json(s) + "\n",
    }
}

fn word_value(w: &Word) -> Value {
    json!(w.letters().iter().map(|a| a + 1).collect::<Vec<_>>())
}

fn as_rep(doc: Document, path: &Path) -> Result<LinRep> {
    Ok(match doc {
        Document::LinRep(r) => r,
        Document::FreeModule(m) => m.chi_rep(),
        Document::PmuModule(a) => a.phi_rep()?,
        other => bail!("{}: expected a linrep or module, found {}", path.display(), other.kind()),
    })
}

fn cmd_chi(cli: &Cli, path: &Path) -> Result<Outcome> {
    let Document::FreeModule(m) = read_document(path)? else {
        bail!("{}: expected a free_module file", path.display());
    };
    Ok(Outcome::ok(render_series(&m.chi_rep().expand(cli.order), cli.format)))
}

fn cmd_phi(cli: &Cli, path: &Path) -> Result<Outcome> {
    let Document::PmuModule(a) = read_document(path)? else {
        bail!("{}: expected a pmu_module file", path.display());
    };
    let phi = a.phi_rep()?;
    Ok(Outcome::ok(render_series(&phi.expand(cli.order), cli.format)))
}

fn cmd_equal(cli: &Cli, left: &Path, right: &Path) -> Result<Outcome> {
    let a = as_rep(read_document(left)?, left)?;
    let b = as_rep(read_document(right)?, right)?;
    let diff = first_difference(&a, &b)?;
    let code = u8::from(diff.is_some());
    let text = match (&diff, cli.format) {
        (None, Format::Text) => "equal\n".to_string(),
        (Some(w), Format::Text) => format!(
            "different\nfirst difference at {}: {} vs {}\n",
            w,
            format_rational(&a.coeff(w)?),
            format_rational(&b.coeff(w)?)
        ),
        (None, Format::Json) => format!("{:#}\n", json!({ "equal": true, "first_difference": null })),
        (Some(w), Format::Json) => format!(
            "{:#}\n",
            json!({
                "equal": false,
                "first_difference": word_value(w),
                "left": format_rational(&a.coeff(w)?),
                "right": format_rational(&b.coeff(w)?),
            })
        ),
    };
    Ok(Outcome { text, code })
}

fn read_rep(path: &Path) -> Result<LinRep> {
    let doc = read_document(path)?;
    as_rep(doc, path)
}

fn cmd_minimize(path: &Path) -> Result<Outcome> {
    let r = read_rep(path)?;
    Ok(Outcome::ok(io::linrep_to_json(&minimize(&r)) + "\n"))
}

fn cmd_reconstruct(cli: &Cli, path: &Path) -> Result<Outcome> {
    let rec = reconstruct(&read_rep(path)?);
    let vector = |v: &[ncchar::Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
    let text = match cli.format {
        Format::Text => format!(
            "dim\t{}\ngenerator\t{}\ncounit\t{}\n{}\n",
            rec.module.dim(),
            vector(&rec.generator).join(" "),
            vector(&rec.counit).join(" "),
            io::free_module_to_json(&rec.module)
        ),
        Format::Json => {
            let module: Value = serde_json::from_str(&io::free_module_to_json(&rec.module))?;
            format!(
                "{:#}\n",
                json!({
                    "module": module,
                    "generator": vector(&rec.generator),
                    "counit": vector(&rec.counit),
                })
            )
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_qdet_check(cli: &Cli, path: &Path) -> Result<Outcome> {
    let Document::FreeModule(m) = read_document(path)? else {
        bail!("{}: expected a free_module file", path.display());
    };
    let chi = m.chi_rep().expand(cli.order);
    let via = chi_via_qdet(&m, cli.order)?;
    let p = random_invertible(&mut seeded(cli.seed), m.dim(), 3);
    let conj = chi_via_qdet(&m.conjugate(&p)?, cli.order)?;
    let mut words: Vec<&Word> = chi.terms().chain(via.terms()).chain(conj.terms()).map(|(w, _)| w).collect();
    words.sort();
    words.dedup();
    let pass = chi == via && via == conj;
    let verdict = if pass { "PASS" } else { "FAIL" };
    let text = match cli.format {
        Format::Text => {
            let mut out = String::from("word\tchi\tqdet\tqdet_conjugated\n");
            for w in words {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    w,
                    format_rational(&chi.coeff(w)),
                    format_rational(&via.coeff(w)),
                    format_rational(&conj.coeff(w))
                )?;
            }
            writeln!(out, "{verdict}")?;
            out
        }
        Format::Json => format!(
            "{:#}\n",
            json!({
                "chi": series_value(&chi),
                "qdet": series_value(&via),
                "qdet_conjugated": series_value(&conj),
                "result": verdict,
            })
        ),
    };
    Ok(Outcome { text, code: if pass { 0 } else { 1 } })
}

fn read_alexander(arg: &str) -> Result<ncchar::AlexanderPoly> {
    let path = Path::new(arg);
    if path.is_file() {
        return match read_document(path)? {
            Document::Alexander(p) => Ok(p),
            other => bail!("{arg}: expected an Alexander polynomial, found {}", other.kind()),
        };
    }
    io::parse_coefficient_list(arg).with_context(|| format!("parsing coefficient list {arg:?}"))
}

fn cmd_alexander(cli: &Cli, arg: &str) -> Result<Outcome> {
    let delta = read_alexander(arg)?;
    let (chi, phi) = ncchar::alexander_invariants(&delta)?;
    let (chi, phi) = (chi.expand(cli.order), phi.expand(cli.order));
    let text = match cli.format {
        Format::Text => format!("chi\n{}phi\n{}", series_lines(&chi), series_lines(&phi)),
        Format::Json => format!("{:#}\n", json!({ "chi": series_value(&chi), "phi": series_value(&phi) })),
    };
    Ok(Outcome::ok(text))
}

fn cmd_qdet_phi_report(cli: &Cli, path: &Path) -> Result<Outcome> {
    let Document::PmuModule(a) = read_document(path)? else {
        bail!("{}: expected a pmu_module file", path.display());
    };
    let report = qdet_phi_report(&a, cli.order)?;
    let text = match cli.format {
        Format::Text => format!("{report}\n"),
        Format::Json => {
            let rows: Vec<Value> = report
                .rows()
                .iter()
                .map(|(w, q, p, d)| {
                    json!({
                        "word": word_value(w),
                        "qdet_sum": format_rational(q),
                        "phi": format_rational(p),
                        "difference": format_rational(d),
                    })
                })
                .collect();
            format!("{:#}\n", json!({ "rows": rows, "match": report.matches() }))
        }
    };
    Ok(Outcome::ok(text))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Chi { module } => cmd_chi(cli, module),
        Command::Phi { module } => cmd_phi(cli, module),
        Command::Equal { left, right } => cmd_equal(cli, left, right),
        Command::Minimize { rep } => cmd_minimize(rep),
        Command::Reconstruct { rep } => cmd_reconstruct(cli, rep),
        Command::QdetCheck { module } => cmd_qdet_check(cli, module),
        Command::Alexander { delta } => cmd_alexander(cli, delta),
        Command::QdetPhiReport { module } => cmd_qdet_phi_report(cli, module),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|o| {
        match &cli.output {
            Some(path) => std::fs::write(path, &o.text).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{}", o.text),
        }
        Ok(o.code)
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
