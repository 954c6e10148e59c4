use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use linkoid::canonical::{self, Variant};
use linkoid::closures::{self, ClosureSpec, Orientation, Position, Style};
use linkoid::codec::{parse_lkd, report_json, serialize_lkd};
use linkoid::corpus::{gen_gn, random_linkoid};
use linkoid::moves::{random_walk, skein_triple};
use linkoid::statesum::{mock_alexander, potential, potential_matrix};
use linkoid::{Diagram, LaurentPoly1};

#[derive(Parser)]
#[command(name = "linkoid", version, about = "Mock Alexander polynomials of knotoids and linkoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Component counts, obstructions, genus and faces.
    Info { file: PathBuf },
    /// Potential in W and B.
    Potential {
        file: PathBuf,
        /// Print the potential matrix instead.
        #[arg(long)]
        matrix: bool,
        /// Print the JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Mock Alexander polynomial.
    Map { file: PathBuf },
    /// Shadow or mirror closure of some knotoidal components.
    Close {
        file: PathBuf,
        /// Comma-separated component indices or endpoint names.
        #[arg(long, value_delimiter = ',', required = true)]
        components: Vec<String>,
        #[arg(long, value_enum, default_value = "shadow")]
        style: StyleArg,
        #[arg(long, value_enum, default_value = "under")]
        pos: PosArg,
        #[arg(long, value_enum, default_value = "par")]
        orient: OrientArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Theta-closure of some knotoidal components.
    Theta {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        components: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Choice-free polynomial of an unstarred linkoid.
    Canonical {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "under")]
        variant: VariantArg,
    },
    /// Skein triple at a crossing and the residual of the skein relation.
    Skein {
        file: PathBuf,
        /// Crossing name.
        #[arg(long)]
        crossing: String,
    },
    /// Random Reidemeister walk; fails if the mock Alexander polynomial changes.
    Fuzz {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        moves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compares tail- and head-starred potentials of random knotoids.
    ScanConjecture {
        #[arg(long, default_value_t = 8)]
        crossings: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate diagrams.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Skein-module generator with `n` turns around the tail.
    Gn { n: usize },
    /// Seeded random connected linkoid.
    Random {
        #[arg(long, default_value_t = 1)]
        knotoidal: usize,
        #[arg(long, default_value_t = 0)]
        loops: usize,
        #[arg(long, default_value_t = 10)]
        mutations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Shadow,
    Mirror,
}

#[derive(Clone, Copy, ValueEnum)]
enum PosArg {
    Under,
    Over,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientArg {
    Par,
    Anti,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Under,
    Over,
    Theta,
}

type Outcome = Result<String, String>;

fn load(path: &Path) -> Result<Diagram, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_lkd(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Resolves a component given by strand index or by the name of one of its endpoints.
fn component(d: &Diagram, key: &str) -> Result<usize, String> {
    if let Ok(i) = key.parse::<usize>() {
        return Ok(i);
    }
    let v = d.node_by_name(key).ok_or_else(|| format!("no node named {key}"))?;
    let c = d.components();
    (0..c.strands.len())
        .find(|&i| c.strands[i].start == Some(v) || c.strands[i].end == Some(v))
        .ok_or_else(|| format!("{key} is not an endpoint"))
}

fn components(d: &Diagram, keys: &[String]) -> Result<Vec<usize>, String> {
    keys.iter().map(|k| component(d, k)).collect()
}

fn emit(d: &Diagram, output: Option<&Path>) -> Outcome {
    let text = serialize_lkd(d);
    match output {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display()))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn info(d: &Diagram) -> Outcome {
    let c = d.components();
    let omega = d.obstruction().map_err(fail)?;
    let mut out = format!("kappa={} ell={} omega={} genus={}\n", c.kappa, c.ell, omega, d.genus());
    out.push_str(&format!(
        "omega_star={} omega_g={} crossings={} faces={}\n",
        d.obstruction_starred().map_err(fail)?,
        d.obstruction_generalized().map_err(fail)?,
        d.crossing_count(),
        d.faces().len()
    ));
    Ok(out)
}

fn matrix(d: &Diagram) -> Outcome {
    let m = potential_matrix(d).map_err(fail)?;
    let mut out = format!("rows={} cols={}\n", m.rows.len(), m.cols.len());
    for (i, r) in m.rows.iter().enumerate() {
        let cells: Vec<String> = m.entries[i].iter().map(|e| e.to_string()).collect();
        out.push_str(&format!("{}: {}\n", d.node(*r).name, cells.join(" | ")));
    }
    Ok(out)
}

fn skein(d: &Diagram, name: &str) -> Outcome {
    let c = d
        .node_by_name(name)
        .filter(|v| d.node(*v).kind.is_crossing())
        .ok_or_else(|| format!("no crossing named {name}"))?;
    let t = skein_triple(d, c).map_err(fail)?;
    let plus = mock_alexander(&t.plus).map_err(fail)?;
    let minus = mock_alexander(&t.minus).map_err(fail)?;
    let zero = mock_alexander(&t.zero).map_err(fail)?;
    let w = LaurentPoly1::w() - LaurentPoly1::monomial(1.into(), -1);
    let residual = &plus - &minus - &w * &zero;
    Ok(format!("plus {plus}\nminus {minus}\nzero {zero}\nresidual {residual}\n"))
}

fn fuzz(d: &Diagram, moves: usize, seed: u64) -> Outcome {
    let before = mock_alexander(d).map_err(fail)?;
    let (end, applied) = random_walk(d, moves, seed);
    let after = mock_alexander(&end).map_err(fail)?;
    if after != before {
        return Err(format!("invariance violated after {applied} moves: {before} became {after}\n{}", serialize_lkd(&end)));
    }
    Ok(format!("ok moves={applied} crossings={} map {before}\n", end.crossing_count()))
}

fn scan(crossings: usize, count: usize, seed: u64) -> Outcome {
    let mut corpus = Vec::with_capacity(count);
    let mut s = seed;
    let mut tries = 0;
    while corpus.len() < count {
        let k = random_linkoid(1, 0, (s % (2 * crossings as u64 + 1)) as usize, s);
        s = s.wrapping_add(1);
        tries += 1;
        if k.crossing_count() <= crossings {
            corpus.push(k);
        } else if tries > 100 * (count + 1) {
            return Err("could not generate enough knotoids under the crossing bound".into());
        }
    }
    Ok(canonical::conjecture_scan(&corpus).map_err(fail)?.render())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Info { file } => info(&load(&file)?),
        Command::Potential { file, matrix: true, .. } => matrix(&load(&file)?),
        Command::Potential { file, json: true, .. } => Ok(report_json(&load(&file)?).map_err(fail)? + "\n"),
        Command::Potential { file, .. } => Ok(format!("{}\n", potential(&load(&file)?).map_err(fail)?)),
        Command::Map { file } => Ok(format!("{}\n", mock_alexander(&load(&file)?).map_err(fail)?)),
        Command::Close { file, components: keys, style, pos, orient, output } => {
            let d = load(&file)?;
            let style = match style {
                StyleArg::Shadow => Style::Shadow,
                StyleArg::Mirror => Style::Mirror,
            };
            let pos = match pos {
                PosArg::Under => Position::Under,
                PosArg::Over => Position::Over,
            };
            let orient = match orient {
                OrientArg::Par => Orientation::Parallel,
                OrientArg::Anti => Orientation::Antiparallel,
            };
            let spec = ClosureSpec::new(components(&d, &keys)?, style, pos, orient);
            emit(&closures::close(&d, &spec).map_err(fail)?, output.as_deref())
        }
        Command::Theta { file, components: keys, output } => {
            let d = load(&file)?;
            let set = components(&d, &keys)?.into_iter().collect();
            emit(&closures::theta_closure(&d, &set).map_err(fail)?, output.as_deref())
        }
        Command::Canonical { file, variant } => {
            let v = match variant {
                VariantArg::Under => Variant::Under,
                VariantArg::Over => Variant::Over,
                VariantArg::Theta => Variant::Theta,
            };
            Ok(format!("{}\n", canonical::nabla_canonical(&load(&file)?, v).map_err(fail)?))
        }
        Command::Skein { file, crossing } => skein(&load(&file)?, &crossing),
        Command::Fuzz { file, moves, seed } => fuzz(&load(&file)?, moves, seed),
        Command::ScanConjecture { crossings, count, seed } => scan(crossings, count, seed),
        Command::Gen { what: Gen::Gn { n } } => Ok(serialize_lkd(&gen_gn(n))),
        Command::Gen { what: Gen::Random { knotoidal, loops, mutations, seed } } => {
            if knotoidal + loops == 0 {
                return Err("need at least one component".into());
            }
            Ok(serialize_lkd(&random_linkoid(knotoidal, loops, mutations, seed)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use linkoid::diagram::NodeKind;

    #[test]
    fn components_by_name_or_index() {
        let d = random_linkoid(2, 0, 0, 1);
        let t = d.nodes().iter().find(|n| n.kind == NodeKind::Tail).unwrap().name.clone();
        let i = component(&d, &t).unwrap();
        assert_eq!(component(&d, &i.to_string()).unwrap(), i);
        assert!(component(&d, "nope").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
