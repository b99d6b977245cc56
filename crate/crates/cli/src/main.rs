use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use latticelab::atlas::{
    self, arrows, check_implications, hunt_questions, scan_lemmas, structural_checks, ArrowColor,
};
use latticelab::format::{self, CoverList};
use latticelab::properties::{classify, ClassificationRecord, ClassifyOptions, Verdict};
use latticelab::shellability::{
    el_search, is_el_labeling, lm_labeling, ElVerdict, LexMode, SearchOutcome,
};
use latticelab::{
    ideal_lattice, perspectivity_witness_recursive, perspectivity_witness_scan, properties,
    FinitePoset, Lattice, DEFAULT_EL_BUDGET, DEFAULT_IDEAL_CAP,
};
use serde_json::json;

const BUDGET_VAR: &str = "LATTICELAB_EL_BUDGET";

#[derive(Parser)]
#[command(
    name = "latticelab",
    version,
    about = "Analyse finite lattices and build a classified atlas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a lattice and print all witnesses.
    Check {
        file: String,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        el: ElOpts,
    },
    /// Perspectivity witness for the cover (A, B), from both searches.
    Witness {
        file: String,
        a: usize,
        b: usize,
        #[arg(long)]
        json: bool,
    },
    /// Left-modular chain and its induced edge labeling.
    Label {
        file: String,
        #[command(flatten)]
        out: Output,
    },
    /// Search for an EL-labeling.
    El {
        file: String,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        el: ElOpts,
    },
    /// Lattice of order ideals of a poset, as a cover list.
    Ideals {
        file: String,
        #[command(flatten)]
        out: Output,
        #[arg(long, default_value_t = DEFAULT_IDEAL_CAP)]
        cap: usize,
    },
    /// Dual lattice, as a cover list.
    Dual {
        file: String,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate and classify all lattices up to a size.
    Atlas {
        #[arg(long)]
        max_n: usize,
        /// JSONL file; existing entries are kept and not recomputed.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the CSV summary here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        el: ElOpts,
    },
    /// Check the implication grid against an atlas file.
    Implications {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Re-classify every entry and compare with the stored record.
        #[arg(long)]
        recheck: bool,
    },
    /// List candidates for the open questions in an atlas file.
    Hunt {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long)]
    json: bool,
    /// Write a Hasse diagram (covers drawn upward) to this path, `-` for stdout.
    #[arg(long, value_name = "PATH")]
    dot: Option<String>,
}

#[derive(Args)]
struct ElOpts {
    /// EL search node budget; defaults to $LATTICELAB_EL_BUDGET or 10^7.
    #[arg(long)]
    budget: Option<u64>,
    /// Require the increasing chain to be strictly smaller than every other.
    #[arg(long)]
    strict_lex: bool,
}

impl ElOpts {
    fn options(&self) -> anyhow::Result<ClassifyOptions> {
        let budget = match self.budget {
            Some(b) => b,
            None => match std::env::var(BUDGET_VAR) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .with_context(|| format!("{BUDGET_VAR}={v:?} is not a number"))?,
                Err(_) => DEFAULT_EL_BUDGET,
            },
        };
        Ok(ClassifyOptions {
            el_budget: Some(budget),
            lex_mode: if self.strict_lex {
                LexMode::Strict
            } else {
                LexMode::Weak
            },
        })
    }
}

/// Why a command failed: bad input, or a result contradicting a theorem.
enum Failure {
    Usage(anyhow::Error),
    Violation(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<latticelab::Error> for Failure {
    fn from(e: latticelab::Error) -> Self {
        Failure::Usage(e.into())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Violation(dump)) => {
            print!("{dump}");
            eprintln!("error: result contradicts a proven implication");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(file: &str) -> anyhow::Result<CoverList> {
    let text = if file == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        fs::read_to_string(file).with_context(|| format!("reading {file}"))?
    };
    format::parse(&text).with_context(|| format!("parsing {file}"))
}

fn read_lattice(file: &str) -> anyhow::Result<Lattice> {
    read_input(file)?
        .to_lattice()
        .with_context(|| format!("{file} is not a lattice"))
}

fn read_poset(file: &str) -> anyhow::Result<FinitePoset> {
    read_input(file)?
        .to_poset()
        .with_context(|| format!("{file} is not a poset"))
}

fn emit_dot(out: &Output, p: &FinitePoset, text: &mut String) -> anyhow::Result<()> {
    match out.dot.as_deref() {
        None => {}
        Some("-") => text.push_str(&format::write_dot(p, "L")),
        Some(path) => {
            fs::write(path, format::write_dot(p, "L")).with_context(|| format!("writing {path}"))?
        }
    }
    Ok(())
}

fn json_line(v: serde_json::Value) -> String {
    format!("{v}\n")
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { file, out, el } => {
            let l = read_lattice(&file)?;
            let record = classify(&l, &el.options()?);
            let violations = theorem_violations(&l, &record);
            let mut text = if out.json {
                json_line(serde_json::to_value(&record).expect("record serializes"))
            } else {
                record_table(&record)
            };
            emit_dot(&out, l.poset(), &mut text)?;
            if violations.is_empty() {
                Ok(text)
            } else {
                Err(Failure::Violation(format!("{text}{}", violations.join(""))))
            }
        }
        Command::Witness { file, a, b, json } => {
            let l = read_lattice(&file)?;
            let scan = perspectivity_witness_scan(&l, (a, b))?;
            let rec = perspectivity_witness_recursive(&l, (a, b))?;
            Ok(if json {
                json_line(json!({
                    "cover": [a, b],
                    "scan": {"j": scan.j, "j_star": scan.j_star},
                    "recursive": {"j": rec.j, "j_star": rec.j_star},
                }))
            } else {
                format!(
                    "cover ({a}, {b})\nscan:      j = {} (lower cover {})\nrecursive: j = {} (lower cover {})\n",
                    scan.j, scan.j_star, rec.j, rec.j_star
                )
            })
        }
        Command::Label { file, out } => {
            let l = read_lattice(&file)?;
            let mut text = match properties::left_modular_chain(&l) {
                None if out.json => json_line(json!({"chain": null, "labeling": null})),
                None => "no left-modular chain\n".to_string(),
                Some(chain) => {
                    let lab = lm_labeling(&l, &chain)?;
                    if !is_el_labeling(&l, &lab, LexMode::Weak)?.is_el() {
                        return Err(Failure::Violation(format!(
                            "left-modular labeling is not EL\nchain: {:?}\n{}",
                            chain.elements(),
                            lab.to_text(&l)
                        )));
                    }
                    if out.json {
                        json_line(json!({"chain": chain.elements(), "labeling": lab}))
                    } else {
                        format!(
                            "left-modular chain: {}\n{}",
                            join_ids(chain.elements()),
                            lab.to_text(&l)
                        )
                    }
                }
            };
            emit_dot(&out, l.poset(), &mut text)?;
            Ok(text)
        }
        Command::El { file, out, el } => {
            let l = read_lattice(&file)?;
            let opts = el.options()?;
            let budget = opts
                .el_budget
                .expect("budget always set on the command line");
            let r = el_search(&l, budget, opts.lex_mode);
            let mut text = match &r.outcome {
                SearchOutcome::Shellable(lab) => {
                    if is_el_labeling(&l, lab, opts.lex_mode)? != ElVerdict::IsEl {
                        return Err(Failure::Violation(format!(
                            "search returned a labeling that fails verification\n{}",
                            lab.to_text(&l)
                        )));
                    }
                    if out.json {
                        json_line(
                            json!({"outcome": "shellable", "nodes": r.nodes, "labeling": lab}),
                        )
                    } else {
                        format!("EL-shellable ({} nodes)\n{}", r.nodes, lab.to_text(&l))
                    }
                }
                SearchOutcome::NotShellable if out.json => {
                    json_line(json!({"outcome": "not_shellable", "nodes": r.nodes}))
                }
                SearchOutcome::NotShellable => format!(
                    "not EL-shellable: exhaustive search over all label orders failed ({} nodes)\n",
                    r.nodes
                ),
                SearchOutcome::Unknown { budget } if out.json => {
                    json_line(json!({"outcome": "unknown", "nodes": r.nodes, "budget": budget}))
                }
                SearchOutcome::Unknown { budget } => {
                    format!("unknown: budget of {budget} nodes exhausted\n")
                }
            };
            emit_dot(&out, l.poset(), &mut text)?;
            Ok(text)
        }
        Command::Ideals { file, out, cap } => {
            let p = read_poset(&file)?;
            let il = ideal_lattice(&p, cap)?;
            Ok(lattice_output(&il.lattice, &out)?)
        }
        Command::Dual { file, out } => {
            let l = read_lattice(&file)?;
            Ok(lattice_output(&l.dual(), &out)?)
        }
        Command::Atlas {
            max_n,
            out,
            csv,
            el,
        } => {
            let opts = el.options()?;
            let entries = match &out {
                Some(path) => {
                    let added = atlas::extend_atlas_file(path, max_n, &opts)?;
                    eprintln!("{added} new entries written to {}", path.display());
                    atlas::read_atlas(path)?.entries
                }
                None => {
                    let mut entries = Vec::new();
                    atlas::build_atlas_with(max_n, &opts, &Default::default(), |e| {
                        entries.push(e.clone());
                        Ok(())
                    })?;
                    entries
                }
            };
            if let Some(path) = &csv {
                fs::write(path, atlas::summary_csv(&entries))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if out.is_some() {
                Ok(format!(
                    "{} lattices with at most {max_n} elements\n",
                    entries.len()
                ))
            } else {
                let header = atlas::AtlasHeader {
                    schema: atlas::ATLAS_SCHEMA,
                    max_n,
                    el_budget: opts.el_budget,
                    lex_mode: opts.lex_mode,
                };
                let mut text = json_line(serde_json::to_value(&header).expect("header serializes"));
                for e in &entries {
                    text.push_str(&e.to_json());
                    text.push('\n');
                }
                Ok(text)
            }
        }
        Command::Implications {
            path,
            json,
            recheck,
        } => {
            let a = load_atlas(&path)?;
            let report = check_implications(&a.entries, &a.header.options(), recheck);
            let text = if json {
                json_line(serde_json::to_value(&report).expect("report serializes"))
            } else {
                report.to_table()
            };
            if report.green_ok() {
                Ok(text)
            } else {
                Err(Failure::Violation(text))
            }
        }
        Command::Hunt { path, json } => {
            let a = load_atlas(&path)?;
            let report = hunt_questions(&a.entries, &a.header.options());
            let text = if json {
                json_line(serde_json::to_value(&report).expect("report serializes"))
            } else {
                report.to_table()
            };
            if report.all_reverified() {
                Ok(text)
            } else {
                Err(Failure::Violation(text))
            }
        }
    }
}

fn load_atlas(path: &Path) -> anyhow::Result<atlas::Atlas> {
    atlas::read_atlas(path).with_context(|| format!("reading atlas {}", path.display()))
}

fn lattice_output(l: &Lattice, out: &Output) -> anyhow::Result<String> {
    let mut text = if out.json {
        format!("{}\n", format::write_json(l.poset()))
    } else {
        format::write_text(l.poset())
    };
    emit_dot(out, l.poset(), &mut text)?;
    Ok(text)
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

fn record_table(r: &ClassificationRecord) -> String {
    let mut out = String::new();
    let names = [
        "distributive",
        "join_semidistributive",
        "meet_semidistributive",
        "semidistributive",
        "join_extremal",
        "extremal",
        "left_modular",
        "el_shellable",
    ];
    for (name, (_, v)) in names.iter().zip(r.flags()) {
        let _ = writeln!(out, "{name:<24}{}", verdict_str(v));
    }
    let c = &r.counts;
    let _ = writeln!(
        out,
        "{:<24}{}\n{:<24}{}\n{:<24}{}",
        "length",
        c.length,
        "join_irreducibles",
        c.join_irreducibles,
        "meet_irreducibles",
        c.meet_irreducibles
    );
    let w = &r.witnesses;
    let triple = |name: &str, v: &Option<properties::Violation>, out: &mut String| {
        if let Some(v) = v {
            let _ = writeln!(
                out,
                "{name:<24}({})",
                join_ids(&v.elements).replace(' ', ", ")
            );
        }
    };
    triple("distributive fails at", &w.distributive, &mut out);
    triple("jsd fails at", &w.join_semidistributive, &mut out);
    triple("msd fails at (dual)", &w.meet_semidistributive, &mut out);
    if let Some(c) = &w.left_modular_chain {
        let _ = writeln!(out, "{:<24}{}", "left-modular chain", join_ids(c));
    }
    if let Some(cert) = &w.el_certificate {
        let _ = writeln!(out, "EL certificate (a b label):");
        for ((a, b), x) in cert.iter() {
            let _ = writeln!(out, "  {a} {b} {x}");
        }
    } else if r.el_shellable == Verdict::No {
        let _ = writeln!(
            out,
            "EL: exhaustive search found no labeling ({} nodes)",
            r.el_nodes
        );
    }
    out
}

/// Green arrows of the implication grid and structural statements that fail
/// on this lattice. Always empty unless something is wrong.
fn theorem_violations(l: &Lattice, r: &ClassificationRecord) -> Vec<String> {
    let mut out = Vec::new();
    for a in arrows() {
        if a.color == ArrowColor::Green && a.from.verdict(r).is_yes() && a.to.verdict(r).is_no() {
            out.push(format!("violated: {}\n", a.id()));
        }
    }
    for ((name, _), ok) in structural_checks().iter().zip(scan_lemmas(l)) {
        if ok == Some(false) {
            out.push(format!("violated: {name}\n"));
        }
    }
    out
}
