//! `mlgray`: generate, verify and benchmark the middle levels Gray code.
//!
//! All logic sits behind [`run`] so tests can drive it with in-memory streams.

use std::hint::black_box;
use std::io::{BufWriter, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use middle_levels::bitwords::BitWord;
use middle_levels::hamcycle::{vertex_count, Flips, HamCycle};
use middle_levels::verify::{run_suite, DeskScale};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BAD_START: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mlgray", version, about = "Middle levels Gray code generator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print vertices of the Hamilton cycle.
    Gen(GenArgs),
    /// Run the exhaustive checks for small n.
    Verify(VerifyArgs),
    /// Time the generator with output discarded.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// First vertex, 2n+1 bits of weight n or n+1 [default: 1^n 0^(n+1)]
    #[arg(long)]
    pub start: Option<String>,
    /// Number of vertices to emit [default: one full cycle]
    #[arg(long)]
    pub count: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Bits)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = FlipsArg::On)]
    pub flips: FlipsArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "max-n", default_value_t = 6)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value_t = FlipsArg::On)]
    pub flips: FlipsArg,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long)]
    pub start: Option<String>,
    #[arg(long, default_value_t = 10_000_000)]
    pub count: u64,
    #[arg(long, value_enum, default_value_t = FlipsArg::On)]
    pub flips: FlipsArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One vertex per line.
    Bits,
    /// Start vertex, then one flipped position per line.
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlipsArg {
    On,
    Off,
}

impl From<FlipsArg> for Flips {
    fn from(f: FlipsArg) -> Self {
        match f {
            FlipsArg::On => Flips::On,
            FlipsArg::Off => Flips::Off,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(&args, out, err),
        Command::Verify(args) => cmd_verify(&args, out, err),
        Command::Bench(args) => cmd_bench(&args, out, err),
    };
    match result {
        Ok(code) => code,
        // a closed pipe downstream just ends the stream
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "mlgray: {e}");
            EXIT_USAGE
        }
    }
}

fn start_state(
    n: usize,
    start: Option<&str>,
    flips: Flips,
    err: &mut dyn Write,
) -> Result<HamCycle, i32> {
    let start = match start {
        None => BitWord::ones_then_zeros(n, n + 1),
        Some(text) => match text.parse::<BitWord>() {
            Ok(w) => w,
            Err(e) => {
                let _ = writeln!(err, "mlgray: invalid start vertex: {e}");
                return Err(EXIT_BAD_START);
            }
        },
    };
    HamCycle::with_flips(n, &start, flips).map_err(|e| {
        let _ = writeln!(err, "mlgray: invalid start vertex: {e}");
        EXIT_BAD_START
    })
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let n = args.n as usize;
    let mut state = match start_state(n, args.start.as_deref(), args.flips.into(), err) {
        Ok(s) => s,
        Err(code) => return Ok(code),
    };
    let count = args
        .count
        .unwrap_or_else(|| vertex_count(n).unwrap_or(u64::MAX));
    if count == 0 {
        return Ok(EXIT_OK);
    }
    let mut out = BufWriter::with_capacity(1 << 16, out);
    let mut line = Vec::with_capacity(2 * n + 2);
    let mut write_vertex = |out: &mut BufWriter<&mut dyn Write>, v: &BitWord| {
        line.clear();
        line.extend(v.bits().iter().map(|&b| b'0' + b));
        line.push(b'\n');
        out.write_all(&line)
    };
    write_vertex(&mut out, state.current())?;
    match args.format {
        Format::Bits => {
            for _ in 1..count {
                state.step();
                write_vertex(&mut out, state.current())?;
            }
        }
        Format::Delta => {
            for _ in 1..count {
                writeln!(out, "{}", state.step())?;
            }
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(
    args: &VerifyArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let scale = DeskScale::default();
    let limit = scale.full_graph.max(scale.aux_graph).max(scale.c6);
    if args.max_n == 0 || args.max_n > limit {
        writeln!(err, "mlgray: --max-n must be in 1..={limit}")?;
        return Ok(EXIT_USAGE);
    }
    let report = match run_suite(&scale, args.max_n, args.flips.into()) {
        Ok(r) => r,
        Err(e) => {
            writeln!(err, "mlgray: {e}")?;
            return Ok(EXIT_VERIFY_FAILED);
        }
    };
    write!(out, "{report}")?;
    out.flush()?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

pub fn cmd_bench(
    args: &BenchArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let n = args.n as usize;
    let mut state = match start_state(n, args.start.as_deref(), args.flips.into(), err) {
        Ok(s) => s,
        Err(code) => return Ok(code),
    };
    let count = args.count.max(1);
    let began = Instant::now();
    let mut acc = 0usize;
    for _ in 1..count {
        acc = acc.wrapping_add(state.step());
    }
    black_box(acc);
    let elapsed = began.elapsed().as_secs_f64();
    let ns = elapsed * 1e9 / count as f64;
    let rate = if elapsed > 0.0 {
        count as f64 / elapsed
    } else {
        f64::INFINITY
    };
    writeln!(
        out,
        "n={n} vertices={count} elapsed={elapsed:.3}s ns/vertex={ns:.2} vertices/s={rate:.0}"
    )?;
    Ok(EXIT_OK)
}
