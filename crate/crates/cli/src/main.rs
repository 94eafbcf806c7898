//! Command-line front end: decoding, FER sweeps, error-pattern sweeps,
//! trapping-set analysis, selection, and FAID table utilities.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use faid::faid::{
    emit_faid, is_lt_representable, lt_representation, nlt_certificate, parse_faid, tables, ClosedFormMap,
    FaidDecoder, MessageAlphabet, VnMap, DEFAULT_MAX_ITERATIONS,
};
use faid::fixtures;
use faid::graph::{parse_alist, Code};
use faid::harness::{
    exhaustive_weight_t, sample_weight_t, simulate_fer, with_workers, BscChannel, FerPoint, DEFAULT_PATTERN_BUDGET,
};
use faid::reference::{BpConfig, ReferenceDecoder, DEFAULT_LLR_CLIP};
use faid::selection::{select, Candidate, SelectionConfig};
use faid::space::{count_class_a, enumerate_class_a};
use faid::ts::{critical_number, ncnv_with_budget, parse_ts, TsTopology, DEFAULT_NCNV_BUDGET, DEFAULT_NI};
use faid::BitDecoder;

#[derive(Parser)]
#[command(name = "faid", version, about = "Finite alphabet iterative decoders for LDPC codes on the BSC")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecoderKind {
    Faid,
    Bp,
    Minsum,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosedForm {
    /// 5-level NLT map with weighted cancellation of opposite inputs.
    FiveLevelNlt,
    /// 7-level LT map.
    SevenLevelLt,
}

#[derive(clap::Args)]
struct DecoderArgs {
    /// Parity-check matrix in alist format (defaults to the (155,64) Tanner code).
    #[arg(long)]
    code: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "faid")]
    decoder: DecoderKind,
    /// FAID table file (defaults to the shipped 7-level table one).
    #[arg(long)]
    faid: Option<PathBuf>,
    /// Crossover probability assumed by BP and min-sum.
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    #[arg(long = "max-iter", default_value_t = DEFAULT_MAX_ITERATIONS)]
    max_iter: usize,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decode one received word given as a string of 0/1 characters.
    Decode {
        #[command(flatten)]
        dec: DecoderArgs,
        #[arg(long)]
        word: String,
    },
    /// Monte-Carlo FER at each crossover probability.
    Fer {
        #[command(flatten)]
        dec: DecoderArgs,
        /// Comma-separated crossover probabilities.
        #[arg(long = "alphas", value_delimiter = ',', required = true)]
        alphas: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        frames: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long = "stop-at")]
        stop_at: Option<u64>,
        /// BP and min-sum assume --alpha instead of the simulated crossover.
        #[arg(long = "fixed-alpha")]
        fixed_alpha: bool,
        #[arg(long, value_enum, default_value = "csv")]
        out: OutFormat,
    },
    /// Decode every error pattern of weight t.
    Guarantee {
        #[command(flatten)]
        dec: DecoderArgs,
        #[arg(long)]
        t: usize,
        /// Lift the pattern budget (same as FAID_LONG_RUN=1).
        #[arg(long = "long-run", env = "FAID_LONG_RUN", value_parser = clap::builder::FalseyValueParser::new())]
        long_run: bool,
    },
    /// Sample weight-t error patterns and report failures.
    Hunt {
        #[command(flatten)]
        dec: DecoderArgs,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Noisy critical number vector of a FAID on one topology.
    Ncnv {
        #[arg(long)]
        faid: Option<PathBuf>,
        /// Topology file (defaults to the shipped T(6,2)).
        #[arg(long)]
        ts: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NI)]
        ni: usize,
        #[arg(long, default_value_t = DEFAULT_NCNV_BUDGET)]
        budget: u128,
        #[arg(long, value_enum, default_value = "json")]
        out: OutFormat,
    },
    /// Rank candidate FAIDs against good and bad reference sets.
    Select {
        /// Topology files (defaults to the shipped T(6,2)).
        #[arg(long, num_args = 1..)]
        lambda: Vec<PathBuf>,
        /// Good reference FAIDs. Defaults to tables one and two, or to the
        /// closed-form 5-level NLT decoder when 5-level maps are enumerated.
        #[arg(long, num_args = 1..)]
        fg: Vec<PathBuf>,
        #[arg(long, num_args = 1..)]
        fb: Vec<PathBuf>,
        /// Candidate FAID files. Without them, class-A maps are enumerated.
        #[arg(long, num_args = 1..)]
        candidates: Vec<PathBuf>,
        /// Alphabet size of enumerated candidates.
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// First enumeration index considered.
        #[arg(long, default_value_t = 0)]
        start: usize,
        /// Number of enumerated candidates considered.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        #[arg(long, default_value_t = DEFAULT_NI)]
        ni: usize,
        /// Also write the domination matrix as CSV here.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long = "allow-large", env = "FAID_LONG_RUN", value_parser = clap::builder::FalseyValueParser::new())]
        allow_large: bool,
    },
    /// List class-A maps, one per line: index then the row-major -C table.
    Enumerate {
        #[arg(long)]
        levels: usize,
        /// Write each map as `<index>.faid` into this directory instead.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long = "allow-large", env = "FAID_LONG_RUN", value_parser = clap::builder::FalseyValueParser::new())]
        allow_large: bool,
    },
    /// Number of class-A maps for an alphabet size.
    Count {
        #[arg(long)]
        levels: usize,
    },
    /// Property checks and the LT/NLT report for a FAID file.
    Validate {
        #[arg(long)]
        faid: Option<PathBuf>,
        #[arg(long)]
        ts: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NI)]
        ni: usize,
    },
    /// Materialize a closed-form map as a FAID table file.
    Convert {
        #[arg(long, value_enum)]
        closed: ClosedForm,
        #[arg(long, default_value_t = 1.0)]
        l1: f64,
        /// Channel magnitude (7-level map only; the 5-level map fixes C = L1).
        #[arg(long, default_value_t = 1.5)]
        c: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_code(path: Option<&PathBuf>) -> Result<Code> {
    match path {
        None => Ok(fixtures::tanner_code()),
        Some(p) => {
            let name = p.file_stem().map_or("code".into(), |s| s.to_string_lossy().into_owned());
            Ok(parse_alist(&read(p)?, &name)?)
        }
    }
}

fn load_faid(path: Option<&PathBuf>, max_iter: usize) -> Result<FaidDecoder> {
    match path {
        None => Ok(FaidDecoder::from_map(tables::table_one(), max_iter)?),
        Some(p) => {
            let file = parse_faid(&read(p)?).with_context(|| format!("parsing {}", p.display()))?;
            Ok(FaidDecoder::new(file.alphabet, file.map, max_iter)?)
        }
    }
}

fn load_ts(path: Option<&PathBuf>) -> Result<TsTopology> {
    match path {
        None => Ok(fixtures::t6_2()),
        Some(p) => {
            let name = p.file_stem().map_or("ts".into(), |s| s.to_string_lossy().into_owned());
            Ok(parse_ts(&read(p)?, &name)?)
        }
    }
}

fn build_decoder(args: &DecoderArgs, alpha: f64) -> Result<Box<dyn BitDecoder>> {
    Ok(match args.decoder {
        DecoderKind::Faid => Box::new(load_faid(args.faid.as_ref(), args.max_iter)?),
        DecoderKind::Bp => Box::new(ReferenceDecoder::sum_product(BpConfig::new(
            alpha,
            args.max_iter,
            DEFAULT_LLR_CLIP,
        )?)),
        DecoderKind::Minsum => Box::new(ReferenceDecoder::min_sum(BpConfig::new(
            alpha,
            args.max_iter,
            DEFAULT_LLR_CLIP,
        )?)),
    })
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn parse_word(word: &str) -> Result<Vec<u8>> {
    word.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => bail!("received word may only contain 0 and 1, found {other:?}"),
        })
        .collect()
}

fn faid_label(path: &Path) -> String {
    path.file_stem().map_or("faid".into(), |s| s.to_string_lossy().into_owned())
}

fn reference_set(paths: &[PathBuf], default: Vec<(String, FaidDecoder)>, ni: usize) -> Result<Vec<Candidate>> {
    if paths.is_empty() {
        return Ok(default
            .into_iter()
            .enumerate()
            .map(|(index, (id, decoder))| Candidate { index, id, decoder })
            .collect());
    }
    paths
        .iter()
        .enumerate()
        .map(|(index, p)| {
            Ok(Candidate {
                index,
                id: faid_label(p),
                decoder: load_faid(Some(p), ni)?,
            })
        })
        .collect()
}

fn table_levels(map: &VnMap) -> String {
    map.table().iter().map(|m| m.level().to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct ValidateReport {
    levels: usize,
    kind: &'static str,
    symmetric: bool,
    lexicographically_ordered: bool,
    class_a: bool,
    nlt_certificate: faid::faid::NltCertificate,
    lt_representable: bool,
    lt_binding: Option<faid::faid::LtBinding>,
    critical_number: Option<String>,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Decode { dec, word } => {
            let code = load_code(dec.code.as_ref())?;
            let decoder = build_decoder(&dec, dec.alpha)?;
            let out = decoder.decode_word(&code.graph, &parse_word(&word)?)?;
            let bits: String = out.bits.iter().map(|b| char::from(b'0' + b)).collect();
            print_json(&serde_json::json!({
                "bits": bits,
                "converged": out.converged,
                "iterations": out.iterations,
            }))?;
        }
        Command::Fer {
            dec,
            alphas,
            frames,
            seed,
            stop_at,
            fixed_alpha,
            out,
        } => {
            let code = load_code(dec.code.as_ref())?;
            let mut points = Vec::new();
            for alpha in alphas {
                let decoder = build_decoder(&dec, if fixed_alpha { dec.alpha } else { alpha })?;
                let channel = BscChannel::new(alpha, seed)?;
                let point =
                    with_workers(dec.workers, || simulate_fer(decoder.as_ref(), &code, &channel, frames, stop_at))??;
                points.push(point);
            }
            match out {
                OutFormat::Csv => {
                    println!("{}", FerPoint::CSV_HEADER);
                    points.iter().for_each(|p| println!("{}", p.csv_row()));
                }
                OutFormat::Json => print_json(&points)?,
            }
        }
        Command::Guarantee { dec, t, long_run } => {
            let code = load_code(dec.code.as_ref())?;
            let decoder = build_decoder(&dec, dec.alpha)?;
            let budget = if long_run { u128::MAX } else { DEFAULT_PATTERN_BUDGET };
            let report = with_workers(dec.workers, || exhaustive_weight_t(decoder.as_ref(), &code, t, budget))??;
            print_json(&report)?;
        }
        Command::Hunt { dec, t, samples, seed } => {
            let code = load_code(dec.code.as_ref())?;
            let decoder = build_decoder(&dec, dec.alpha)?;
            let report = with_workers(dec.workers, || sample_weight_t(decoder.as_ref(), &code, t, samples, seed))??;
            print_json(&report)?;
        }
        Command::Ncnv {
            faid,
            ts,
            ni,
            budget,
            out,
        } => {
            let decoder = load_faid(faid.as_ref(), DEFAULT_MAX_ITERATIONS)?;
            let ts = load_ts(ts.as_ref())?;
            let mut v = ncnv_with_budget(&decoder, &ts, ni, budget)?;
            if let Some(p) = &faid {
                v.decoder = faid_label(p);
            }
            match out {
                OutFormat::Csv => print!("{}", v.to_csv()),
                OutFormat::Json => println!("{}", v.to_json()),
            }
        }
        Command::Select {
            lambda,
            fg,
            fb,
            candidates,
            levels,
            start,
            count,
            tau,
            ni,
            matrix,
            allow_large,
        } => {
            let lambda = if lambda.is_empty() {
                vec![fixtures::t6_2()]
            } else {
                lambda.iter().map(|p| load_ts(Some(p))).collect::<Result<_>>()?
            };
            let n = DEFAULT_MAX_ITERATIONS;
            let default_good = match (fg.is_empty(), candidates.is_empty(), levels) {
                (false, _, _) => Vec::new(),
                (true, false, _) | (true, true, 7) => vec![
                    ("table-one".into(), FaidDecoder::from_map(tables::table_one(), n)?),
                    ("table-two".into(), FaidDecoder::from_map(tables::table_two(), n)?),
                ],
                (true, true, 5) => {
                    let nlt = ClosedFormMap::five_level_nlt_from(1.0)?;
                    vec![("five-level-nlt".into(), FaidDecoder::new(nlt.alphabet().clone(), nlt.materialize(), n)?)]
                }
                (true, true, _) => bail!("no default good set for {levels}-level candidates; pass --fg"),
            };
            let good = reference_set(&fg, default_good, n)?;
            let bad = reference_set(&fb, Vec::new(), DEFAULT_MAX_ITERATIONS)?;
            let pool = if candidates.is_empty() {
                enumerate_class_a(levels, allow_large)?
                    .enumerate()
                    .skip(start)
                    .take(count.unwrap_or(usize::MAX))
                    .map(|(index, map)| {
                        Ok(Candidate {
                            index,
                            id: format!("class-a-{levels}-{index}"),
                            decoder: FaidDecoder::from_map(map, DEFAULT_MAX_ITERATIONS)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            } else {
                reference_set(&candidates, Vec::new(), DEFAULT_MAX_ITERATIONS)?
            };
            let config = SelectionConfig {
                tau,
                n_i: ni,
                ..SelectionConfig::default()
            };
            let report = select(&pool, &lambda, &good, &bad, &config)?;
            if let Some(path) = matrix {
                fs::write(&path, report.matrix_csv()).with_context(|| format!("writing {}", path.display()))?;
            }
            println!("{}", report.to_json());
        }
        Command::Enumerate {
            levels,
            dir,
            start,
            count,
            allow_large,
        } => {
            if let Some(d) = &dir {
                fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
            }
            let alphabet = MessageAlphabet::with_defaults((levels / 2) as u8);
            for (index, map) in enumerate_class_a(levels, allow_large)?
                .enumerate()
                .skip(start)
                .take(count.unwrap_or(usize::MAX))
            {
                match &dir {
                    Some(d) => {
                        let path = d.join(format!("{index}.faid"));
                        fs::write(&path, emit_faid(&map, &alphabet))
                            .with_context(|| format!("writing {}", path.display()))?;
                    }
                    None => println!("{index} {}", table_levels(&map)),
                }
            }
        }
        Command::Count { levels } => println!("{}", count_class_a(levels)?),
        Command::Validate { faid, ts, ni } => {
            let (map, alphabet) = match &faid {
                None => (tables::table_one(), MessageAlphabet::with_defaults(3)),
                Some(p) => {
                    let f = parse_faid(&read(p)?)?;
                    (f.map, f.alphabet)
                }
            };
            let critical = if map.is_class_a() {
                let decoder = FaidDecoder::new(alphabet, map.clone(), DEFAULT_MAX_ITERATIONS)?;
                let ts = load_ts(ts.as_ref())?;
                Some(critical_number(&decoder, &ts, ni)?.number.to_string())
            } else {
                None
            };
            print_json(&ValidateReport {
                levels: map.size(),
                kind: map.kind_name(),
                symmetric: map.validate_symmetry(),
                lexicographically_ordered: map.validate_lex_order(),
                class_a: map.is_class_a(),
                nlt_certificate: nlt_certificate(&map),
                lt_representable: is_lt_representable(&map),
                lt_binding: lt_representation(&map),
                critical_number: critical,
            })?;
        }
        Command::Convert { closed, l1, c, output } => {
            let form = match closed {
                ClosedForm::FiveLevelNlt => ClosedFormMap::five_level_nlt_from(l1)?,
                ClosedForm::SevenLevelLt => ClosedFormMap::seven_level_lt_from(l1, c)?,
            };
            let text = emit_faid(&form.materialize(), form.alphabet());
            match output {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run(Cli::parse())
}
