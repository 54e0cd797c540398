//! Command-line interface for parenthesized-braid computations.
//!
//! Exit codes: 0 for any computed answer (including negative ones), 1 for
//! partiality or resource exhaustion, 2 for unparseable input.

use std::cmp::Ordering;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use parenbraid::artin::{aut_apply, FWord};
use parenbraid::ld::{enumerate_special, SpecialMode, DEFAULT_SPECIAL_CAP};
use parenbraid::normal::{decompose_positive, fraction_form, is_pure};
use parenbraid::ordering::cmp;
use parenbraid::render::{render_diagram, RenderFormat};
use parenbraid::reversing::{
    cube_condition, default_budget, left_reverse, right_reverse, word_problem, CubeOutcome,
    RightOutcome, Side,
};
use parenbraid::trees::act_tree;
use parenbraid::{Error, Letter, Tree, Word};

#[derive(Parser)]
#[command(name = "parenbraid", version, about = "Algebra of parenthesized braids")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Svg,
    Ascii,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Bracket,
    Circ,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether two words represent the same element.
    Eq { w1: String, w2: String },
    /// Compare two words in the canonical left-invariant order.
    Cmp { w1: String, w2: String },
    /// Print the fraction, splitting and special normal forms as JSON.
    Nf { w: String },
    /// Reverse a word into a quotient of positive words.
    Reverse {
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        w: String,
    },
    /// Apply a word to a tree of positions.
    Act {
        #[arg(long)]
        tree: String,
        w: String,
    },
    /// Apply the free-group automorphism of a word.
    Aut {
        w: String,
        /// Free-group word to act on, e.g. "x(1)" or "x(1) x(2,1)^-1".
        #[arg(long)]
        on: String,
    },
    /// Render the strand diagram of a word drawn on a tree.
    Draw {
        #[arg(long)]
        tree: String,
        w: String,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: FormatArg,
    },
    /// Check the cube condition on all positive letter triples up to an
    /// index bound.
    Cube {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        max_index: u32,
    },
    /// Decide whether a word induces the trivial rearrangement.
    Pure { w: String },
    /// List the special elements generated by expressions of bounded depth.
    Special {
        /// Expression depth (number of leaves).
        #[arg(long = "enumerate")]
        depth: usize,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
        /// Raise the refusal threshold for large depths.
        #[arg(long)]
        cap: Option<usize>,
    },
}

fn parse_word(s: &str) -> Result<Word, Error> {
    s.parse()
}

fn parse_tree(s: &str) -> Result<Tree, Error> {
    s.parse()
}

/// Writes via a sibling temp file and rename, so the target never holds a
/// partial render.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}

fn word_json(w: &Word) -> serde_json::Value {
    serde_json::Value::String(w.to_string())
}

fn words_json(ws: &[Word]) -> serde_json::Value {
    serde_json::Value::Array(ws.iter().map(word_json).collect())
}

fn nf_json(w: &Word) -> Result<serde_json::Value, Error> {
    let fr = fraction_form(w);
    let part = |name: &str, side: &Word, split: &parenbraid::normal::ZsPair| -> Result<serde_json::Value, Error> {
        let dec = decompose_positive(side)?;
        Ok(serde_json::json!({
            "word": side.to_string(),
            "annotation": format!("{name} of input = {name}_braid . {name}_thompson"),
            "braid": split.braid.to_string(),
            "thompson": split.thompson.to_string(),
            "special": {
                "factors": words_json(&dec.factors),
                "braids": words_json(&dec.braids),
                "thompsons": words_json(&dec.thompsons),
                "annotation": "each list multiplies back under k-fold shifts",
            },
        }))
    };
    Ok(serde_json::json!({
        "schema": 1,
        "input": w.to_string(),
        "identity": "input = num^-1 . den",
        "num": part("num", &fr.num, &fr.num_split)?,
        "den": part("den", &fr.den, &fr.den_split)?,
    }))
}

fn positive_letters(max_index: u32) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in 1..=max_index {
        out.push(Letter::sigma(i));
        out.push(Letter::a(i));
    }
    out
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Eq { w1, w2 } => {
            let (w1, w2) = (parse_word(&w1)?, parse_word(&w2)?);
            println!("{}", if word_problem(&w1, &w2) { "equal" } else { "not equal" });
        }
        Cmd::Cmp { w1, w2 } => {
            let (w1, w2) = (parse_word(&w1)?, parse_word(&w2)?);
            let c = cmp(&w1, &w2)?;
            println!(
                "{}",
                match c.outcome {
                    Ordering::Less => "<",
                    Ordering::Equal => "=",
                    Ordering::Greater => ">",
                }
            );
            if let Some(cert) = c.certificate {
                println!("certificate: {cert}");
            }
        }
        Cmd::Nf { w } => {
            let w = parse_word(&w)?;
            println!("{}", serde_json::to_string_pretty(&nf_json(&w)?).unwrap());
        }
        Cmd::Reverse { side, w } => {
            let w = parse_word(&w)?;
            match side {
                SideArg::Left => {
                    let r = left_reverse(&w);
                    println!("input = u^-1 v");
                    println!("u = {}", r.u);
                    println!("v = {}", r.v);
                    println!("steps = {}", r.trace.steps.len());
                }
                SideArg::Right => {
                    let r = right_reverse(&w, default_budget());
                    match r.outcome {
                        RightOutcome::Done { v, u } => {
                            println!("input = v u^-1");
                            println!("v = {v}");
                            println!("u = {u}");
                            println!("steps = {}", r.trace.steps.len());
                        }
                        RightOutcome::Stuck { pos, x, y } => {
                            println!(
                                "stuck: {x}^-1 {y} at position {pos} admits no common right multiple"
                            );
                        }
                        RightOutcome::BudgetExceeded { steps } => {
                            return Err(Error::BudgetExceeded { budget: steps });
                        }
                    }
                }
            }
        }
        Cmd::Act { tree, w } => {
            let (t, w) = (parse_tree(&tree)?, parse_word(&w)?);
            println!("{}", act_tree(&t, &w)?);
        }
        Cmd::Aut { w, on } => {
            let w = parse_word(&w)?;
            let u: FWord = on.parse()?;
            println!("{}", aut_apply(&w, &u));
        }
        Cmd::Draw { tree, w, output, format } => {
            let (t, w) = (parse_tree(&tree)?, parse_word(&w)?);
            let format = match format {
                FormatArg::Svg => RenderFormat::Svg,
                FormatArg::Ascii => RenderFormat::Ascii,
            };
            let bytes = render_diagram(&t, &w, format)?;
            write_atomic(&output, &bytes)
                .map_err(|e| Error::Domain(format!("writing {}: {e}", output.display())))?;
        }
        Cmd::Cube { side, max_index } => {
            let letters = positive_letters(max_index);
            let budget = default_budget();
            let mut holds = 0u64;
            let mut fails = Vec::new();
            let mut stuck = Vec::new();
            for &x in &letters {
                for &y in &letters {
                    for &z in &letters {
                        match cube_condition(side.into(), x, y, z, budget) {
                            CubeOutcome::Holds => holds += 1,
                            CubeOutcome::Fails => fails.push((x, y, z)),
                            CubeOutcome::Indeterminate { .. } => stuck.push((x, y, z)),
                        }
                    }
                }
            }
            for (x, y, z) in &fails {
                println!("fails: {x} {y} {z}");
            }
            println!("{holds} of {} triples hold", letters.len().pow(3));
            if let Some(&(x, y, z)) = stuck.first() {
                return Err(Error::BudgetExceeded { budget })
                    .map_err(|e| Error::Domain(format!("{e} on triple {x} {y} {z}")));
            }
        }
        Cmd::Pure { w } => {
            let w = parse_word(&w)?;
            println!("{}", if is_pure(&w) { "pure" } else { "not pure" });
        }
        Cmd::Special { depth, mode, cap } => {
            let mode = match mode {
                ModeArg::Bracket => SpecialMode::Bracket,
                ModeArg::Circ => SpecialMode::Circ,
                ModeArg::Both => SpecialMode::Both,
            };
            let words = enumerate_special(depth, mode, cap.unwrap_or(DEFAULT_SPECIAL_CAP))?;
            println!("{} special elements at depth {depth}", words.len());
            for w in words {
                println!("{w}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Parse(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
