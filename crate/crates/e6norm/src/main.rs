//! Command-line interface: torus and normalizer queries, complement
//! decisions, and the batch verification suite.

use clap::{Parser, Subcommand};
use e6norm::liealg::Gen;
use e6norm::report::{exit_code, run_suite, RunConfig};
use e6norm::split::{decide_complement, obstruction_check, verify_complement, verify_lift, Mode};
use e6norm::torusnorm::{enumerate_torus, torus_structure, TwistData};
use e6norm::E6;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "e6norm",
    version,
    about = "Exact torus-normalizer arithmetic for E6(q)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump the root table, extraspecial pairs, and structure constants as JSON
    Roots {
        /// write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weyl-group queries
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Evaluate a word in the extended Weyl group: tokens like "n3 n2 h4"
    Tits {
        #[arg(long)]
        word: String,
    },
    /// Torus order and structure for one class at one q
    Torus {
        #[arg(long)]
        class: u8,
        #[arg(long)]
        q: u64,
        /// include the invariant factors (always computed; kept for
        /// interface stability)
        #[arg(long)]
        structure: bool,
        /// enumerate the torus and report the element count
        #[arg(long)]
        enumerate: bool,
    },
    /// Decide whether the torus has a complement in its normalizer
    DecideSplit {
        #[arg(long)]
        class: u8,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        adjoint: bool,
    },
    /// Verify the recorded explicit complements for the split classes
    VerifyComplements {
        #[arg(long)]
        q: Option<u64>,
    },
    /// Verify minimal-order lifts for all classes
    VerifyLifts {
        #[arg(long)]
        q: Option<u64>,
    },
    /// Check the classical obstruction subsystems of the non-split classes
    Obstructions {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        adjoint: bool,
    },
    /// Run the full verification suite and emit a JSON report
    RunSuite {
        /// JSON config file; flags below override its fields
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "q")]
        qs: Vec<u64>,
        #[arg(long = "class")]
        classes: Vec<u8>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// include wall-clock timings (makes the report non-reproducible)
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Conjugacy class of a word of reflections, e.g. "3,1"
    Classify { word: String },
    /// The 25-row class table as JSON
    Classes,
}

fn parse_root_word(s: &str) -> Result<Vec<u8>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u8>()
                .map_err(|_| format!("bad root index {t:?}"))
                .and_then(|i| {
                    if (1..=36).contains(&i) {
                        Ok(i)
                    } else {
                        Err(format!("root index {i} out of 1..36"))
                    }
                })
        })
        .collect()
}

fn parse_tits_word(s: &str) -> Result<Vec<Gen>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (kind, idx) = t.split_at(1);
            let i: u8 = idx.parse().map_err(|_| format!("bad token {t:?}"))?;
            if !(1..=36).contains(&i) {
                return Err(format!("root index {i} out of 1..36"));
            }
            match kind {
                "n" | "N" => Ok(Gen::N(i)),
                "h" | "H" => Ok(Gen::H(i)),
                _ => Err(format!("token {t:?} must start with n or h")),
            }
        })
        .collect()
}

fn emit(value: &serde_json::Value, out: Option<&PathBuf>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| e.to_string()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let ctx = E6::get();
    match cli.cmd {
        Cmd::Roots { out } => {
            let dump = e6norm::rootsys::dump(&ctx.roots, &ctx.consts);
            emit(
                &serde_json::to_value(&dump).map_err(|e| e.to_string())?,
                out.as_ref(),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Weyl { cmd } => match cmd {
            WeylCmd::Classify { word } => {
                let word = parse_root_word(&word)?;
                let elem = ctx.weyl.id_of(&ctx.roots.word_matrix(&word));
                let (class, conj) = ctx.weyl.classify(elem);
                emit(
                    &serde_json::json!({
                        "word": word,
                        "class": class,
                        "order": ctx.weyl.order(elem),
                        "conjugator_word": ctx.weyl.word(conj),
                    }),
                    None,
                )?;
                Ok(ExitCode::SUCCESS)
            }
            WeylCmd::Classes => {
                emit(
                    &serde_json::to_value(&ctx.weyl.classes).map_err(|e| e.to_string())?,
                    None,
                )?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Cmd::Tits { word } => {
            let tokens = parse_tits_word(&word)?;
            let t = ctx.tits.word(&tokens);
            let image = ctx.tits.weyl_image(&ctx.weyl, &t);
            let h = ctx.tits.h_part(&ctx.weyl, &t);
            emit(
                &serde_json::json!({
                    "weyl_word": ctx.weyl.word(image),
                    "h_part": h,
                    "order": t.order(),
                }),
                None,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Torus {
            class,
            q,
            structure: _,
            enumerate,
        } => {
            check_class_q(class, q)?;
            let st = torus_structure(ctx, class, q);
            let mut value = serde_json::json!({
                "class": st.class,
                "q": st.q,
                "order": st.order.to_string(),
                "invariant_factors":
                    st.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "ambient_k": st.ambient_k,
            });
            if enumerate {
                if st.order > 1_000_000 {
                    return Err(format!(
                        "torus of order {} exceeds the enumeration cap",
                        st.order
                    ));
                }
                let tw = TwistData::new(ctx, class, q, &[]);
                let all = enumerate_torus(&tw.amb, &st);
                value["enumerated"] = serde_json::json!(all.len());
            }
            emit(&value, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::DecideSplit { class, q, adjoint } => {
            check_class_q(class, q)?;
            let mode = if adjoint { Mode::Adjoint } else { Mode::Sc };
            let d = decide_complement(ctx, class, q, mode);
            emit(&serde_json::to_value(&d).map_err(|e| e.to_string())?, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::VerifyComplements { q } => {
            let qs = q.map(|q| vec![q]).unwrap_or_else(|| vec![3, 5]);
            let mut all = Vec::new();
            for q in qs {
                check_class_q(1, q)?;
                if q % 2 == 0 {
                    return Err("explicit complements are recorded for odd q".into());
                }
                for class in 1..=25u8 {
                    if e6norm::report::expected_split(ctx, class, q) {
                        all.push(
                            serde_json::to_value(&verify_complement(ctx, class, q))
                                .map_err(|e| e.to_string())?,
                        );
                    }
                }
            }
            emit(&serde_json::Value::Array(all), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::VerifyLifts { q } => {
            let qs = q.map(|q| vec![q]).unwrap_or_else(|| vec![2, 3, 4, 5]);
            let mut all = Vec::new();
            for q in qs {
                check_class_q(1, q)?;
                for class in 1..=25u8 {
                    all.push(
                        serde_json::to_value(&verify_lift(ctx, class, q))
                            .map_err(|e| e.to_string())?,
                    );
                }
            }
            emit(&serde_json::Value::Array(all), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Obstructions { q, adjoint } => {
            check_class_q(1, q)?;
            if q % 2 == 0 {
                return Err("the obstruction subsystems concern odd q".into());
            }
            let mode = if adjoint { Mode::Adjoint } else { Mode::Sc };
            let mut all = Vec::new();
            for class in [1u8, 2, 3, 5, 7, 8, 11, 14, 16] {
                all.push(
                    serde_json::to_value(&obstruction_check(ctx, class, q, mode))
                        .map_err(|e| e.to_string())?,
                );
            }
            emit(&serde_json::Value::Array(all), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::RunSuite {
            config,
            qs,
            classes,
            output,
            timings,
        } => {
            let mut cfg: RunConfig = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| format!("reading {}: {e}", path.display()))?;
                    serde_json::from_str(&text).map_err(|e| e.to_string())?
                }
                None => RunConfig::default(),
            };
            if !qs.is_empty() {
                cfg.qs = qs;
            }
            if !classes.is_empty() {
                cfg.classes = classes;
            }
            if timings {
                cfg.timings = true;
            }
            cfg.validate()?;
            let report = run_suite(ctx, &cfg);
            eprintln!(
                "{} scenarios: {} passed, {} failed, {} skipped",
                report.summary.total,
                report.summary.passed,
                report.summary.failed,
                report.summary.skipped
            );
            emit(
                &serde_json::to_value(&report).map_err(|e| e.to_string())?,
                output.as_ref(),
            )?;
            Ok(ExitCode::from(exit_code(&report) as u8))
        }
    }
}

fn check_class_q(class: u8, q: u64) -> Result<(), String> {
    if !(1..=25).contains(&class) {
        return Err(format!("class {class} out of range 1..25"));
    }
    if e6norm::torusnorm::prime_power(q).is_none() {
        return Err(format!("q = {q} is not a prime power"));
    }
    Ok(())
}
