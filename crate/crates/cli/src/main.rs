//! Command-line front end: encoding, channel simulation, decoding, and
//! reports for composition-substitution codes.
//!
//! Exit codes: 0 success, 2 input or parameter error, 3 decode failure,
//! 4 certification failure. All randomness flows from `--seed` through a
//! named generator recorded in output headers, so identical invocations
//! produce identical bytes.

mod format;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use compec_core::catalan::{CatalanCode, CatalanError};
use compec_core::codec::{self, CodecParams, DecodeError};
use compec_core::composition::{
    apply_errors, composition_multiset, multiset_distance, BitString, Composition,
    CompositionMultiset, ErrorPattern, Substitution,
};
use compec_core::oracle::certify_code;
use compec_core::polybiv::verify_identity;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use format::{
    parse_bit_line, parse_multiset, parse_pattern, serialize_bits, serialize_multiset,
    serialize_pattern,
};

const PRNG_ID: &str = "chacha12/rand_chacha-0.3";

/// Codebook size cap for exhaustive enumeration and search.
const ENUM_CAP: usize = 1 << 17;

#[derive(Parser)]
#[command(
    name = "compec",
    version,
    about = "Error-correcting codes over substring composition multisets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// The full algebraic construction; the length must fit its redundancy.
    Codec,
    /// The short framed code, decoded by exhaustive codebook search.
    Catalan,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Codec => "codec",
            Mode::Catalan => "catalan",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Encode information bits into a codeword and its multiset.
    Encode {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Mode::Codec)]
        mode: Mode,
        /// Information bits: a single line of 0/1.
        #[arg(long = "in")]
        input: PathBuf,
        /// Codeword string output.
        #[arg(long)]
        out: PathBuf,
        /// Composition multiset output.
        #[arg(long)]
        multiset_out: Option<PathBuf>,
    },
    /// Apply composition substitutions to a multiset.
    Corrupt {
        /// Multiset to corrupt.
        #[arg(long = "in")]
        input: PathBuf,
        /// Corrupted multiset output.
        #[arg(long)]
        out: PathBuf,
        /// Either `random:<count>` or a pattern file path.
        #[arg(long)]
        errors: String,
        /// Seed for `random:<count>`.
        #[arg(long)]
        seed: Option<u64>,
        /// Where to write the generated pattern; stdout when omitted.
        #[arg(long)]
        pattern_out: Option<PathBuf>,
    },
    /// Decode a multiset back to information bits.
    Decode {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Mode::Codec)]
        mode: Mode,
        /// Received multiset.
        #[arg(long = "in")]
        input: PathBuf,
        /// Information bits output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Corrected multiset output.
        #[arg(long)]
        corrected_out: Option<PathBuf>,
    },
    /// Seeded encode -> corrupt -> decode campaign with a summary table.
    Roundtrip {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Mode::Codec)]
        mode: Mode,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Summary table output; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the prefix-multiset identity for a string.
    Identity {
        /// String file: a single line of 0/1.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Certify a codebook's pairwise composition distance.
    Certify {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Mode::Catalan)]
        mode: Mode,
        /// Explicit codebook, one string per line; enumerated when omitted.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Redundancy accounting for a parameter pair.
    Report {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// Table output; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Decode(String),
    Certify(String),
}

impl Failure {
    fn exit(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Decode(_) => 3,
            Failure::Certify(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Decode(m) | Failure::Certify(m) => m,
        }
    }
}

fn input_err(msg: impl ToString) -> Failure {
    Failure::Input(msg.to_string())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build_codec(n: usize, t: usize) -> Result<CodecParams, Failure> {
    if t == 0 {
        return Err(input_err("t must be positive"));
    }
    CodecParams::new(n, t).map_err(input_err)
}

fn build_catalan(n: usize, t: usize) -> Result<CatalanCode, Failure> {
    if t == 0 {
        return Err(input_err("t must be positive"));
    }
    CatalanCode::new(n, t).map_err(input_err)
}

/// One substitution that changes the multiset: a present composition
/// replaced by a different one of the same length.
fn random_substitution(rng: &mut ChaCha12Rng, c: &CompositionMultiset) -> Substitution {
    loop {
        let l = rng.gen_range(1..=c.n());
        let comps: Vec<(Composition, u32)> = c.class(l).collect();
        if comps.is_empty() {
            continue;
        }
        let from = comps[rng.gen_range(0..comps.len())].0;
        let ones = rng.gen_range(0..=l as u32);
        if ones != from.ones {
            return Substitution { from, to: Composition::new(l as u32 - ones, ones) };
        }
    }
}

fn corrupt_multiset(
    rng: &mut ChaCha12Rng,
    c: &CompositionMultiset,
    count: usize,
) -> (CompositionMultiset, ErrorPattern) {
    let mut cur = c.clone();
    let mut subs = Vec::with_capacity(count);
    for _ in 0..count {
        let sub = random_substitution(rng, &cur);
        cur = apply_errors(&cur, &ErrorPattern(vec![sub]))
            .expect("substitution drawn from the current multiset");
        subs.push(sub);
    }
    (cur, ErrorPattern(subs))
}

/// Per-class pairing of what decoding removed against what it added, as
/// substitution lines `l z:w -> z':w'`; unpaired residue (possible only on
/// inputs with inconsistent class sizes) is listed with +/- markers.
fn correction_lines(received: &CompositionMultiset, corrected: &CompositionMultiset) -> String {
    let mut out = String::new();
    for l in 1..=received.n() {
        let mut extra: Vec<Composition> = Vec::new();
        let mut missing: Vec<Composition> = Vec::new();
        let mut seen: Vec<(Composition, i64)> = Vec::new();
        for (comp, count) in received.class(l) {
            seen.push((comp, count as i64));
        }
        for (comp, count) in corrected.class(l) {
            match seen.iter_mut().find(|(c, _)| *c == comp) {
                Some((_, delta)) => *delta -= count as i64,
                None => seen.push((comp, -(count as i64))),
            }
        }
        for (comp, delta) in seen {
            for _ in 0..delta.abs() {
                if delta > 0 {
                    extra.push(comp);
                } else {
                    missing.push(comp);
                }
            }
        }
        let pairs = extra.len().min(missing.len());
        for i in 0..pairs {
            out.push_str(&format!(
                "{l} {}:{} -> {}:{}\n",
                extra[i].zeros, extra[i].ones, missing[i].zeros, missing[i].ones
            ));
        }
        for comp in extra.iter().skip(pairs) {
            out.push_str(&format!("{l} -{}:{}\n", comp.zeros, comp.ones));
        }
        for comp in missing.iter().skip(pairs) {
            out.push_str(&format!("{l} +{}:{}\n", comp.zeros, comp.ones));
        }
    }
    out
}

fn decode_any(
    mode: Mode,
    n: usize,
    t: usize,
    received: &CompositionMultiset,
) -> Result<(Vec<u8>, BitString, CompositionMultiset), Failure> {
    match mode {
        Mode::Codec => {
            let params = build_codec(n, t)?;
            match codec::decode(&params, received) {
                Ok((info, cw, corrected)) => Ok((info, cw.into_string(), corrected)),
                Err(DecodeError::InvalidInput) => {
                    Err(input_err("multiset is not a well-formed received word"))
                }
                Err(e) => Err(Failure::Decode(e.to_string())),
            }
        }
        Mode::Catalan => {
            let code = build_catalan(n, t)?;
            let info = match code.decode(received, ENUM_CAP) {
                Ok(info) => info,
                Err(CatalanError::WrongBlockLength) => {
                    return Err(input_err("multiset length does not match --n"))
                }
                Err(CatalanError::CodebookTooLarge) => {
                    return Err(input_err(format!(
                        "codebook exceeds the search cap of {ENUM_CAP}; use shorter blocks"
                    )))
                }
                Err(e) => return Err(Failure::Decode(e.to_string())),
            };
            let cw = code.encode(&info).expect("decoded bits fit the code");
            let corrected = composition_multiset(&cw);
            Ok((info, cw, corrected))
        }
    }
}

fn cmd_encode(
    n: usize,
    t: usize,
    mode: Mode,
    input: &Path,
    out: &Path,
    multiset_out: Option<&PathBuf>,
) -> Result<(), Failure> {
    let info = parse_bit_line(&read_text(input)?).map_err(input_err)?;
    let cw = match mode {
        Mode::Codec => {
            let params = build_codec(n, t)?;
            if info.len() != params.info_len() {
                return Err(input_err(format!(
                    "expected {} information bits, found {}",
                    params.info_len(),
                    info.len()
                )));
            }
            codec::encode(&params, info.bits())
                .map_err(input_err)?
                .into_string()
        }
        Mode::Catalan => {
            let code = build_catalan(n, t)?;
            if info.len() != code.info_bits() {
                return Err(input_err(format!(
                    "expected {} information bits, found {}",
                    code.info_bits(),
                    info.len()
                )));
            }
            code.encode(info.bits()).map_err(input_err)?
        }
    };
    write_text(out, &serialize_bits(cw.bits()))?;
    if let Some(path) = multiset_out {
        write_text(path, &serialize_multiset(&composition_multiset(&cw)))?;
    }
    Ok(())
}

fn cmd_corrupt(
    input: &Path,
    out: &Path,
    errors: &str,
    seed: Option<u64>,
    pattern_out: Option<&PathBuf>,
) -> Result<(), Failure> {
    let clean = parse_multiset(&read_text(input)?).map_err(Failure::Input)?;
    match errors.strip_prefix("random:") {
        Some(count_str) => {
            let count: usize = count_str
                .parse()
                .map_err(|e| input_err(format!("bad count in --errors {errors:?}: {e}")))?;
            let seed =
                seed.ok_or_else(|| input_err("--seed is required with --errors random:<count>"))?;
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let (noisy, pattern) = corrupt_multiset(&mut rng, &clean, count);
            write_text(out, &serialize_multiset(&noisy))?;
            let text = format!("# prng={PRNG_ID} seed={seed}\n{}", serialize_pattern(&pattern));
            emit(pattern_out, &text)
        }
        None => {
            let pattern = parse_pattern(&read_text(Path::new(errors))?).map_err(Failure::Input)?;
            let noisy = apply_errors(&clean, &pattern).map_err(input_err)?;
            write_text(out, &serialize_multiset(&noisy))?;
            if let Some(path) = pattern_out {
                write_text(path, &serialize_pattern(&pattern))?;
            }
            Ok(())
        }
    }
}

fn cmd_decode(
    n: usize,
    t: usize,
    mode: Mode,
    input: &Path,
    out: Option<&PathBuf>,
    corrected_out: Option<&PathBuf>,
) -> Result<(), Failure> {
    let received = parse_multiset(&read_text(input)?).map_err(Failure::Input)?;
    if received.n() != n {
        return Err(input_err(format!(
            "multiset length {} does not match --n {n}",
            received.n()
        )));
    }
    let (info, _cw, corrected) = decode_any(mode, n, t, &received)?;
    let corrections = multiset_distance(&received, &corrected)
        .expect("corrected multiset shares the received length");
    println!("corrections: {corrections}");
    print!("{}", correction_lines(&received, &corrected));
    if let Some(path) = out {
        write_text(path, &serialize_bits(&info))?;
    }
    if let Some(path) = corrected_out {
        write_text(path, &serialize_multiset(&corrected))?;
    }
    Ok(())
}

fn cmd_roundtrip(
    n: usize,
    t: usize,
    mode: Mode,
    trials: usize,
    seed: u64,
    out: Option<&PathBuf>,
) -> Result<(), Failure> {
    // Build upfront so parameter problems exit before any trial runs.
    enum Coder {
        Codec(CodecParams),
        Catalan(CatalanCode),
    }
    let coder = match mode {
        Mode::Codec => Coder::Codec(build_codec(n, t)?),
        Mode::Catalan => {
            let code = build_catalan(n, t)?;
            if code.enumerate(ENUM_CAP).is_none() {
                return Err(input_err(format!(
                    "codebook exceeds the search cap of {ENUM_CAP}; use shorter blocks"
                )));
            }
            Coder::Catalan(code)
        }
    };
    let info_len = match &coder {
        Coder::Codec(params) => params.info_len(),
        Coder::Catalan(code) => code.info_bits(),
    };
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut successes = 0usize;
    let mut spent = Duration::ZERO;
    for _ in 0..trials {
        let info: Vec<u8> = (0..info_len).map(|_| rng.gen_range(0..2u8)).collect();
        let cw = match &coder {
            Coder::Codec(params) => codec::encode(params, &info)
                .expect("info length matches the code")
                .into_string(),
            Coder::Catalan(code) => code.encode(&info).expect("info length matches the code"),
        };
        let clean = composition_multiset(&cw);
        let errors = rng.gen_range(0..=t);
        let (noisy, _) = corrupt_multiset(&mut rng, &clean, errors);
        let start = Instant::now();
        let ok = match &coder {
            Coder::Codec(params) => match codec::decode(params, &noisy) {
                Ok((info_hat, cw_hat, corrected)) => {
                    info_hat == info && cw_hat.string() == &cw && corrected == clean
                }
                Err(_) => false,
            },
            Coder::Catalan(code) => match code.decode(&noisy, ENUM_CAP) {
                Ok(info_hat) => info_hat == info,
                Err(_) => false,
            },
        };
        spent += start.elapsed();
        successes += ok as usize;
    }
    let rate = if trials == 0 { 1.0 } else { successes as f64 / trials as f64 };
    let mean_ms = if trials == 0 { 0.0 } else { spent.as_secs_f64() * 1000.0 / trials as f64 };
    let table = format!(
        "# prng={PRNG_ID} seed={seed} mode={} n={n} t={t}\n\
         trials\tsuccesses\tsuccess_rate\tmean_decode_ms\n\
         {trials}\t{successes}\t{rate:.3}\t{mean_ms:.2}\n",
        mode.name()
    );
    emit(out, &table)
}

fn cmd_identity(input: &Path) -> Result<(), Failure> {
    let s = parse_bit_line(&read_text(input)?).map_err(input_err)?;
    if verify_identity(&s) {
        println!("PASS: prefix-multiset identity holds for the {}-bit string", s.len());
        Ok(())
    } else {
        println!("FAIL: prefix-multiset identity violated for the {}-bit string", s.len());
        Err(Failure::Certify("identity check failed".into()))
    }
}

fn cmd_certify(
    n: Option<usize>,
    t: usize,
    mode: Mode,
    input: Option<&PathBuf>,
) -> Result<(), Failure> {
    let book: Vec<BitString> = match input {
        Some(path) => {
            let text = read_text(path)?;
            let mut book = Vec::new();
            for line in text.lines().map(str::trim) {
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                book.push(parse_bit_line(line).map_err(input_err)?);
            }
            if book.is_empty() {
                return Err(input_err("codebook file holds no strings"));
            }
            if book.iter().any(|s| s.len() != book[0].len()) {
                return Err(input_err("codebook strings must share one length"));
            }
            book
        }
        None => match mode {
            Mode::Catalan => {
                let n = n.ok_or_else(|| input_err("--n is required without --in"))?;
                let code = build_catalan(n, t)?;
                code.enumerate(ENUM_CAP)
                    .ok_or_else(|| input_err("codebook too large to enumerate"))?
            }
            Mode::Codec => {
                return Err(input_err(
                    "full-construction codebooks are not enumerable; pass --in <codebook>",
                ))
            }
        },
    };
    let cert = certify_code(&book, t);
    println!("codebook size: {}", book.len());
    println!("{cert}");
    if cert.ok {
        Ok(())
    } else {
        Err(Failure::Certify("codebook failed distance certification".into()))
    }
}

fn cmd_report(n: usize, t: usize, out: Option<&PathBuf>) -> Result<(), Failure> {
    if t == 0 || n < 2 {
        return Err(input_err("need t >= 1 and n >= 2"));
    }
    let r = codec::redundancy_report(n, t);
    let table = format!(
        "n\tt\tq\tpayload_bits\tr_hat\tinfo_bits\tredundancy_bits\tfeasible\t\
         variant_redundancy\tbound_redundancy\n\
         {}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.1}\t{:.1}\n",
        r.n,
        r.t,
        r.q,
        r.payload_bits,
        r.r_hat,
        r.info_bits,
        r.redundancy_bits,
        r.feasible,
        r.variant_redundancy,
        r.bound_redundancy
    );
    emit(out, &table)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Encode { n, t, mode, input, out, multiset_out } => {
            cmd_encode(n, t, mode, &input, &out, multiset_out.as_ref())
        }
        Command::Corrupt { input, out, errors, seed, pattern_out } => {
            cmd_corrupt(&input, &out, &errors, seed, pattern_out.as_ref())
        }
        Command::Decode { n, t, mode, input, out, corrected_out } => {
            cmd_decode(n, t, mode, &input, out.as_ref(), corrected_out.as_ref())
        }
        Command::Roundtrip { n, t, mode, trials, seed, out } => {
            cmd_roundtrip(n, t, mode, trials, seed, out.as_ref())
        }
        Command::Identity { input } => cmd_identity(&input),
        Command::Certify { n, t, mode, input } => cmd_certify(n, t, mode, input.as_ref()),
        Command::Report { n, t, out } => cmd_report(n, t, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit())
        }
    }
}
