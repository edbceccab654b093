use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use partplan::decider::{decide, Answer};
use partplan::drawing::ConvexDrawing;
use partplan::generate::{generate, random_subset, GeneratorKind, K5Variant, Kuratowski, WiringDiagram};
use partplan::graph::{EdgeSubset, Graph};
use partplan::io::{emit_report, parse_document, parse_report, verify_report, DecisionReport, InstanceDocument};
use partplan::oracle::{oracle_decide, OracleError};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "partplan", version, about = "Decide whether a graph has a drawing in which chosen edges are crossing-free")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance. Exit status 0 for YES, 1 for NO, 2 on error.
    Decide {
        instance: PathBuf,
        /// Starting convex drawing as a comma-separated cyclic vertex order.
        #[arg(long)]
        order: Option<String>,
        /// Write a JSON report with stats and certificate.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exhaustive search on small instances. Exit 3 when the instance is too large.
    Oracle { instance: PathBuf },
    /// Re-check a report against its instance. Exit 0 if the answer holds.
    Verify { instance: PathBuf, report: PathBuf },
    /// Write a generated instance as JSON.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Compare the decider with the oracle on random small instances.
    Crosscheck {
        /// Largest vertex count.
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the decider on one random instance.
    Bench {
        #[arg(long, default_value_t = 40)]
        n: usize,
        #[arg(long, default_value_t = 150)]
        m: usize,
        #[arg(long, default_value_t = 40)]
        f: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        f: usize,
    },
    K5 {
        #[arg(long, value_enum, default_value_t = K5Arg::Full)]
        variant: K5Arg,
    },
    Kuratowski {
        #[arg(value_enum)]
        which: KuratowskiArg,
    },
    SpanningTree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
    },
    /// From a wiring diagram `k; i1 i2 ...`, or a random one with `--lines`.
    Arrangement {
        #[arg(long, conflicts_with = "lines")]
        wiring: Option<String>,
        #[arg(long)]
        lines: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum K5Arg {
    Full,
    MinusOne,
    MinusTwo,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum KuratowskiArg {
    K5,
    K33,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn read_instance(path: &Path) -> Result<(Graph, EdgeSubset), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc = parse_document(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    doc.to_instance().map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn answer_code(a: Answer) -> u8 {
    if a.is_yes() {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Decide { instance, order, report } => {
            let (g, f) = read_instance(&instance)?;
            let drawing = order
                .map(|s| {
                    let order = s
                        .split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad vertex `{t}` in --order")))
                        .collect::<Result<Vec<_>, _>>()?;
                    ConvexDrawing::new(g.vertex_count(), order).map_err(|e| e.to_string())
                })
                .transpose()?;
            let d = decide(&g, &f, drawing.as_ref()).map_err(|e| e.to_string())?;
            println!("{}", d.answer);
            println!(
                "equations={} variables={} rank={} elapsed_ms={:.3}",
                d.stats.num_equations,
                d.stats.num_variables_used,
                d.stats.rank,
                d.stats.elapsed.as_secs_f64() * 1e3
            );
            if let Some(path) = report {
                write_output(Some(&path), &emit_report(&DecisionReport::new(&g, &f, &d)))?;
            }
            Ok(answer_code(d.answer))
        }
        Command::Oracle { instance } => {
            let (g, f) = read_instance(&instance)?;
            match oracle_decide(&g, &f) {
                Ok(outcome) => {
                    println!("{}", outcome.answer);
                    Ok(answer_code(outcome.answer))
                }
                Err(e @ (OracleError::SizeGuard { .. } | OracleError::ComponentTooLarge { .. })) => {
                    eprintln!("{e}");
                    Ok(EXIT_GUARD)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Verify { instance, report } => {
            let (g, f) = read_instance(&instance)?;
            let text = fs::read_to_string(&report).map_err(|e| format!("{}: {e}", report.display()))?;
            let r = parse_report(&text).map_err(|e| format!("{}: {e}", report.display()))?;
            if verify_report(&g, &f, &r).map_err(|e| e.to_string())? {
                println!("ok: {} confirmed", r.answer);
                Ok(0)
            } else {
                println!("rejected: {} does not hold", r.answer);
                Ok(1)
            }
        }
        Command::Gen { kind, seed, out } => {
            let kind = match kind {
                GenKind::Random { n, m, f } => GeneratorKind::Random { n, m, f },
                GenKind::K5 { variant } => GeneratorKind::K5Family(match variant {
                    K5Arg::Full => K5Variant::Full,
                    K5Arg::MinusOne => K5Variant::MinusOneEdge,
                    K5Arg::MinusTwo => K5Variant::MinusTwoDisjoint,
                    K5Arg::Star => K5Variant::SpanningStar,
                }),
                GenKind::Kuratowski { which } => GeneratorKind::Kuratowski(match which {
                    KuratowskiArg::K5 => Kuratowski::K5,
                    KuratowskiArg::K33 => Kuratowski::K33,
                }),
                GenKind::SpanningTree { n, extra } => GeneratorKind::SpanningTree { n, extra },
                GenKind::Arrangement { wiring, lines } => {
                    let w = match (wiring, lines) {
                        (Some(s), _) => s.parse::<WiringDiagram>().map_err(|e| e.to_string())?,
                        (None, Some(k)) => WiringDiagram::random(k, &mut ChaCha8Rng::seed_from_u64(seed)),
                        (None, None) => return Err("arrangement needs --wiring or --lines".into()),
                    };
                    GeneratorKind::Arrangement(w)
                }
            };
            let (g, f) = generate(&kind, seed).map_err(|e| e.to_string())?;
            let mut doc = InstanceDocument::from_instance(&g, &f);
            doc.generator = Some(kind.name().to_string());
            doc.seed = Some(seed);
            if let GeneratorKind::Arrangement(w) = &kind {
                doc.name = Some(w.to_string());
            }
            write_output(out.as_deref(), &doc.to_text())?;
            Ok(0)
        }
        Command::Crosscheck { n, trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut agree, mut skipped, mut disagree) = (0usize, 0usize, 0usize);
            for trial in 0..trials {
                let nv = rng.gen_range(1..=n.max(1));
                let max_m = (nv * (nv - 1) / 2).min(12);
                let m = rng.gen_range(0..=max_m);
                let (g, _) = generate(&GeneratorKind::Random { n: nv, m, f: 0 }, rng.gen()).map_err(|e| e.to_string())?;
                let f = random_subset(m, &mut rng);
                let fast = decide(&g, &f, None).map_err(|e| e.to_string())?.answer;
                match oracle_decide(&g, &f) {
                    Ok(o) if o.answer == fast => agree += 1,
                    Ok(o) => {
                        disagree += 1;
                        eprintln!("trial {trial}: decider {fast}, oracle {}", o.answer);
                        eprint!("{}", InstanceDocument::from_instance(&g, &f).to_text());
                    }
                    Err(OracleError::SizeGuard { .. } | OracleError::ComponentTooLarge { .. }) => skipped += 1,
                    Err(e) => return Err(e.to_string()),
                }
            }
            println!("agree={agree} disagree={disagree} skipped={skipped}");
            Ok(if disagree == 0 { 0 } else { 1 })
        }
        Command::Bench { n, m, f, seed } => {
            let (g, fs) = generate(&GeneratorKind::Random { n, m, f }, seed).map_err(|e| e.to_string())?;
            let d = decide(&g, &fs, None).map_err(|e| e.to_string())?;
            println!(
                "n={n} m={m} f={f} answer={} equations={} variables={} nominal={} rank={} elapsed_ms={:.3}",
                d.answer,
                d.stats.num_equations,
                d.stats.num_variables_used,
                d.stats.num_variables_nominal,
                d.stats.rank,
                d.stats.elapsed.as_secs_f64() * 1e3
            );
            Ok(0)
        }
    }
}
