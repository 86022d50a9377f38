use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gdp_core::positivity::{is_ample, search_with, AmpleVerdict, SearchOptions};
use gdp_core::rational::to_pq;
use gdp_core::report::{render_records, render_table, report, search_catalog};
use gdp_core::riemann_roch::chi_omega1;
use gdp_core::surface::{builtin_fixtures, parse_catalog_unvalidated, validate, SurfaceModel};
use gdp_core::toric::{classify_fan, Fan2D};
use gdp_core::{Surface, SurfaceError, WeilClass};

#[derive(Parser)]
#[command(
    name = "gdp",
    version,
    about = "Exact Riemann–Roch and Bott vanishing checks on Gorenstein del Pezzo surfaces"
)]
struct Cli {
    /// Catalog file; the shipped catalog when absent
    #[arg(long, global = true, env = "GDP_CATALOG")]
    catalog: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Check one surface, or `all`
    Validate { surface: String },
    /// Euler characteristic of Ω^[1](D) with every intermediate term
    Chi {
        surface: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        coeffs: Vec<i64>,
    },
    /// Numerical pullback of D to the minimal resolution
    Lift {
        surface: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        coeffs: Vec<i64>,
    },
    /// Ampleness certificate
    Ample {
        surface: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        coeffs: Vec<i64>,
    },
    /// Ample divisors with negative χ(Ω^[1](D)) in the box ‖a‖_∞ ≤ bound
    Search {
        surface: String,
        #[arg(long)]
        bound: u32,
        /// Examine at most this many candidates
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Singularities of a complete fan, rays as "x,y;x,y;..."
    FanSings {
        #[arg(long, allow_hyphen_values = true)]
        rays: String,
    },
    /// Classification summary of the catalog
    Report {
        /// Search bound used for entries with a full curve configuration
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
}

enum Failure {
    Refused(String),
    Parse(String),
}

impl Failure {
    fn refused(e: impl Display) -> Self {
        Failure::Refused(e.to_string())
    }

    fn parse(e: impl Display) -> Self {
        Failure::Parse(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn load_models(path: Option<&PathBuf>) -> Result<Vec<SurfaceModel>, Failure> {
    match path {
        None => Ok(builtin_fixtures()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::refused(format!("cannot read {}: {e}", path.display())))?;
            parse_catalog_unvalidated(&text).map_err(Failure::parse)
        }
    }
}

fn find<'a>(models: &'a [SurfaceModel], name: &str) -> Result<&'a SurfaceModel, Failure> {
    models
        .iter()
        .find(|m| m.name == name)
        .ok_or_else(|| Failure::refused(format!("no surface named {name:?} in the catalog")))
}

fn open_surface(models: &[SurfaceModel], name: &str) -> Result<Surface, Failure> {
    Surface::new(find(models, name)?.clone()).map_err(Failure::refused)
}

fn divisor(surface: &Surface, coeffs: &[i64]) -> Result<WeilClass, Failure> {
    surface.weil(coeffs).map_err(|e| match e {
        SurfaceError::WrongLength { .. } => Failure::parse(format!("--coeffs: {e}")),
        other => Failure::refused(other),
    })
}

fn print_pairs(format: Format, pairs: &[(String, String)]) {
    for (key, value) in pairs {
        match format {
            Format::Table => println!("{key} = {value}"),
            Format::Records => println!("{}", json!({ "key": key, "value": value })),
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let models = load_models(cli.catalog.as_ref())?;
    let format = cli.format;
    match cli.command {
        Command::Validate { surface } => {
            let targets: Vec<&SurfaceModel> = if surface == "all" {
                models.iter().collect()
            } else {
                vec![find(&models, &surface)?]
            };
            let mut invalid = 0;
            for model in targets {
                let report = validate(model);
                if !report.is_valid() {
                    invalid += 1;
                }
                match format {
                    Format::Table if report.is_valid() => println!("{}: valid", model.name),
                    Format::Table => println!("{}: invalid: {report}", model.name),
                    Format::Records => {
                        let violations: Vec<String> =
                            report.violations.iter().map(ToString::to_string).collect();
                        println!(
                            "{}",
                            json!({ "surface": model.name, "valid": report.is_valid(), "violations": violations })
                        );
                    }
                }
            }
            if invalid > 0 {
                return Err(Failure::refused(format!("{invalid} invalid surface(s)")));
            }
        }
        Command::Chi { surface, coeffs } => {
            let surface = open_surface(&models, &surface)?;
            let d = divisor(&surface, &coeffs)?;
            print_pairs(format, &chi_omega1(&surface, &d).to_record(&surface));
        }
        Command::Lift { surface, coeffs } => {
            let surface = open_surface(&models, &surface)?;
            let d = divisor(&surface, &coeffs)?;
            let breakdown = chi_omega1(&surface, &d);
            let mut pairs = vec![("divisor".to_string(), d.to_string())];
            for (p, c) in breakdown.pullback.coefficients().iter().enumerate() {
                pairs.push((format!("C{}", surface.curve_id(p).0), to_pq(c)));
            }
            print_pairs(format, &pairs);
        }
        Command::Ample { surface, coeffs } => {
            let surface = open_surface(&models, &surface)?;
            let d = divisor(&surface, &coeffs)?;
            let cert = is_ample(&surface, &d).map_err(Failure::refused)?;
            if cert.verdict == AmpleVerdict::Unsupported {
                return Err(Failure::refused(format!(
                    "{}: positivity needs both (-1)- and (-2)-curves",
                    surface.name()
                )));
            }
            let mut pairs: Vec<(String, String)> = cert
                .gram_values
                .iter()
                .map(|(id, v)| (format!("gram.C{}", id.0), to_pq(v)))
                .collect();
            pairs.push(("ample".to_string(), cert.is_ample().to_string()));
            print_pairs(format, &pairs);
        }
        Command::Search {
            surface,
            bound,
            budget,
        } => {
            let surface = open_surface(&models, &surface)?;
            if surface.model().unsupported_for_positivity() {
                return Err(Failure::refused(format!(
                    "{}: positivity needs both (-1)- and (-2)-curves",
                    surface.name()
                )));
            }
            let mut options = SearchOptions::new(bound);
            options.budget = budget;
            let outcome = search_with(&surface, &options).map_err(Failure::refused)?;
            if outcome.witnesses.is_empty() {
                println!("no witnesses");
            }
            for w in &outcome.witnesses {
                match format {
                    Format::Table => println!("{}", w.describe()),
                    Format::Records => println!("{}", w.to_json()),
                }
            }
            eprintln!(
                "examined {} of {} candidates{}",
                outcome.examined,
                outcome.total,
                if outcome.complete {
                    ""
                } else {
                    " (budget reached, search incomplete)"
                }
            );
        }
        Command::FanSings { rays } => {
            let fan: Fan2D = rays.parse().map_err(Failure::parse)?;
            let cones = classify_fan(&fan);
            match format {
                Format::Table => {
                    if let Some(bad) = cones.iter().find(|c| !c.gorenstein) {
                        return Err(Failure::refused(format!(
                            "cone {:?}-{:?} is {}",
                            bad.cone.0,
                            bad.cone.1,
                            bad.label()
                        )));
                    }
                    let mut labels: Vec<_> = cones.iter().filter_map(|c| c.ade_type()).collect();
                    labels.sort();
                    let text: Vec<String> = labels.iter().map(ToString::to_string).collect();
                    println!(
                        "{}",
                        if text.is_empty() {
                            "smooth".to_string()
                        } else {
                            text.join(" ")
                        }
                    );
                }
                Format::Records => {
                    for c in &cones {
                        println!(
                            "{}",
                            json!({
                                "cone": [c.cone.0, c.cone.1],
                                "order": c.order,
                                "gorenstein": c.gorenstein,
                                "label": c.label(),
                            })
                        );
                    }
                }
            }
        }
        Command::Report { bound } => {
            for model in &models {
                let report = validate(model);
                if !report.is_valid() {
                    return Err(Failure::refused(format!("{}: {report}", model.name)));
                }
            }
            let witnesses = search_catalog(&models, bound).map_err(Failure::refused)?;
            let verdicts = report(&models, &witnesses).map_err(Failure::refused)?;
            match format {
                Format::Table => print!("{}", render_table(&verdicts)),
                Format::Records => print!("{}", render_records(&verdicts)),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Refused(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
