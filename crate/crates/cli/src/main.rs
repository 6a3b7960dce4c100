use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use figcode::format::{parse_code, parse_pcp, parse_witness, serialize_code, serialize_witness};
use figcode::oracle::find_violations;
use figcode::{pcp, render, Code, Exec, Kind, Mode, Options, Verdict, Witness};

// Output goes through these so that a closed pipe ends the process quietly.
macro_rules! say_raw {
    ($($t:tt)*) => {{
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "figcode", version, about = "Decipherability checks for directed figure codes")]
struct Cli {
    /// Run searches on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ud,
    Msd,
    Sd,
    Nd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Plain,
    Merge,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the geometry class of a code.
    Classify { file: PathBuf },
    /// Decide one decipherability kind.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "plain")]
        mode: ModeArg,
        /// Longest factor sequence tried by the bounded fallback search.
        #[arg(long, default_value_t = 6)]
        bound: usize,
        /// Give up after exploring this many states.
        #[arg(long, default_value_t = 500_000)]
        max_states: usize,
        /// Write the witness here when the verdict is NotCode.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// List all pairs of distinct factor sequences up to a length with equal catenations.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "plain")]
        mode: ModeArg,
    },
    /// Encode a PCP instance as a figure code.
    PcpEncode {
        pcp: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Turn a PCP solution into a witness over the encoded code.
    PcpWitness {
        pcp: PathBuf,
        /// 1-based pair indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        solution: Vec<usize>,
        /// Witness file; printed to stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the encoded code here.
        #[arg(long)]
        code_out: Option<PathBuf>,
    },
    /// Draw a code, one figure or a witness as SVG (`.svg`) or ASCII (anything else).
    Render {
        file: PathBuf,
        #[arg(long, conflicts_with = "witness")]
        figure: Option<String>,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Re-validate a witness file against a code.
    #[command(hide = true)]
    VerifyWitness { code: PathBuf, witness: PathBuf },
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_code(path: &Path) -> anyhow::Result<Code> {
    parse_code(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_witness(path: &Path, code: &Code) -> anyhow::Result<(Mode, Witness)> {
    let (mode, left, right) = parse_witness(&read(path)?, code).with_context(|| format!("{}", path.display()))?;
    let figs = code.normalized();
    let w = Witness::from_sequences(&figs, left, right, mode, code.table_for(mode)?)?;
    Ok((mode, w))
}

fn names(code: &Code, seq: &[usize]) -> String {
    seq.iter().map(|&i| code.name(i)).collect::<Vec<_>>().join(" ")
}

fn print_witness(code: &Code, w: &Witness) {
    say!("witness: {} | {}", names(code, &w.left), names(code, &w.right));
    say_raw!("{}", render::ascii(&w.result, code.alphabet()));
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match cli.cmd {
        Cmd::Classify { file } => {
            let code = load_code(&file)?;
            say!("{}", code.geometry());
            Ok(0)
        }
        Cmd::Check { file, kind, mode, bound, max_states, witness_out } => {
            let code = load_code(&file)?;
            let kind = match kind {
                KindArg::Ud => Kind::Ud,
                KindArg::Msd => Kind::Msd,
                KindArg::Sd => Kind::Sd,
                KindArg::Nd => Kind::Nd,
            };
            let mode = mode.into();
            let opts = Options { max_states, oracle_len: bound, exec };
            let report = figcode::check(&code, kind, mode, &opts)?;
            say!("{report}");
            Ok(match &report.verdict {
                Verdict::IsCode => 0,
                Verdict::NotCode(w) => {
                    print_witness(&code, w);
                    if let Some(out) = witness_out {
                        write(&out, &serialize_witness(w, &code, mode))?;
                    }
                    1
                }
                Verdict::Inconclusive(_) => 2,
            })
        }
        Cmd::Oracle { file, max_len, mode } => {
            let code = load_code(&file)?;
            let mode = mode.into();
            let found = find_violations(&code.normalized(), mode, code.table_for(mode)?, max_len, exec)?;
            say!("{} pair(s) of distinct factor sequences of length <= {max_len} with equal catenations", found.len());
            for w in &found {
                let kinds: Vec<&str> = w.violated().iter().map(|k| k.name()).collect();
                say!("{} | {}  violates {}", names(&code, &w.left), names(&code, &w.right), kinds.join(" "));
            }
            Ok(0)
        }
        Cmd::PcpEncode { pcp, output } => {
            let inst = parse_pcp(&read(&pcp)?).with_context(|| format!("{}", pcp.display()))?;
            let code = pcp::encode(&inst)?;
            write(&output, &serialize_code(&code))?;
            say!("{} figures, hook depth {}", code.len(), inst.h());
            Ok(0)
        }
        Cmd::PcpWitness { pcp, solution, output, code_out } => {
            let inst = parse_pcp(&read(&pcp)?).with_context(|| format!("{}", pcp.display()))?;
            let (code, w) = pcp::witness_from_solution(&inst, &solution)?;
            let text = serialize_witness(&w, &code, Mode::Plain);
            match output {
                Some(out) => {
                    write(&out, &text)?;
                    say!("witness: {} | {}", names(&code, &w.left), names(&code, &w.right));
                }
                None => say_raw!("{text}"),
            }
            if let Some(out) = code_out {
                write(&out, &serialize_code(&code))?;
            }
            Ok(0)
        }
        Cmd::Render { file, figure, witness, output } => {
            let code = load_code(&file)?;
            let svg = output.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg"));
            let a = code.alphabet();
            let text = if let Some(wf) = witness {
                let (mode, w) = load_witness(&wf, &code)?;
                let figs = code.normalized();
                if svg {
                    render::svg_witness(&w, &figs, a, mode, code.table_for(mode)?)?
                } else {
                    render::ascii_witness(&w, &figs, code.names(), a)
                }
            } else if let Some(name) = figure {
                let i = code.index_of(&name).ok_or_else(|| anyhow!("no figure named {name:?}"))?;
                let f = &code.figures()[i];
                if svg {
                    render::svg(f, a)
                } else {
                    render::ascii(f, a)
                }
            } else if svg {
                let all: Vec<(&str, &figcode::Figure)> =
                    code.names().iter().map(String::as_str).zip(code.figures()).collect();
                render::svg_gallery(&all, a)
            } else {
                let mut s = String::new();
                for (n, f) in code.names().iter().zip(code.figures()) {
                    s.push_str(&format!("{n}:\n{}\n", render::ascii(f, a)));
                }
                s
            };
            write(&output, &text)?;
            Ok(0)
        }
        Cmd::VerifyWitness { code, witness } => {
            let code = load_code(&code)?;
            match load_witness(&witness, &code) {
                Ok((_, w)) => {
                    say!("valid witness: {} | {}", names(&code, &w.left), names(&code, &w.right));
                    Ok(0)
                }
                Err(e) if e.downcast_ref::<figcode::Error>().is_some_and(|e| !matches!(e, figcode::Error::Parse { .. })) => {
                    say!("invalid witness: {e}");
                    Ok(1)
                }
                Err(e) => bail!(e),
            }
        }
    }
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Plain => Mode::Plain,
            ModeArg::Merge => Mode::Merge,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // help and version are not errors
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
