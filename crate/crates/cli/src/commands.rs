use std::io::{self, Write};
use std::time::Duration;

use logical_match::bench::{self, BenchConfig};
use logical_match::fixtures::{self, TABLE4_FASTA, TABLE4_TEXT_LOCUS};
use logical_match::io::{extract_region, parse_fasta_str, write_fasta, SequenceRecord};
use logical_match::{count, count_verified, score, Error, PositionIndex, Prepared, ScoreReport};
use rayon::prelude::*;
use serde_json::json;

use crate::render::{micros, write_report, MatrixReport, MatrixRow};
use crate::source::{self, Encoder};
use crate::{
    BenchArgs, CliError, CompareArgs, EngineArgs, FetchArgs, Format, IndexArgs, MatrixArgs,
};

fn io_err(e: io::Error) -> CliError {
    CliError::Data(Error::Io(e.to_string()))
}

fn run_count(
    engine: &EngineArgs,
    text: &Prepared,
    pattern: &Prepared,
) -> Result<ScoreReport, Error> {
    let counts = if engine.verify {
        count_verified(text, pattern)?
    } else {
        count(engine.engine, text, pattern)?
    };
    Ok(score(&counts))
}

fn resolve(
    seq: Option<&str>,
    file: Option<&std::path::Path>,
    locus: Option<&str>,
    fetch: Option<&str>,
    allow_network: bool,
    what: &str,
) -> Result<SequenceRecord, CliError> {
    match (seq, file, fetch) {
        (Some(s), None, None) => source::inline(what, s),
        (None, Some(path), None) => source::select(source::read_fasta_file(path)?, locus, what),
        (None, None, Some(l)) => source::fetch(l, allow_network, None),
        (None, None, None) => Err(CliError::Usage(format!(
            "no {what} given; use --{what}-seq, --{what} or --{what}-fetch"
        ))),
        _ => Err(CliError::Usage(format!("give exactly one {what} source"))),
    }
}

pub fn compare(args: &CompareArgs) -> Result<(), CliError> {
    let encoder = Encoder::new(&args.encoding)?;
    let text = resolve(
        args.text_seq.as_deref(),
        args.text.as_deref(),
        args.text_locus.as_deref(),
        args.text_fetch.as_deref(),
        args.allow_network,
        "text",
    )?;
    let pattern = resolve(
        args.pattern_seq.as_deref(),
        args.pattern.as_deref(),
        args.pattern_locus.as_deref(),
        args.pattern_fetch.as_deref(),
        args.allow_network,
        "pattern",
    )?;
    let text_p = Prepared::new(encoder.encode(&text, args.regions.text())?);
    let pattern_p = Prepared::new(encoder.encode(&pattern, args.regions.pattern())?);
    let report = run_count(&args.engine, &text_p, &pattern_p)?;
    write_report(
        io::stdout().lock(),
        &report,
        (&text.locus, &pattern.locus),
        args.output.format,
        args.output.precision,
    )
    .map_err(io_err)
}

pub fn matrix(args: &MatrixArgs) -> Result<(), CliError> {
    let encoder = Encoder::new(&args.encoding)?;
    let (text, patterns) = if args.table4 {
        let records = parse_fasta_str(TABLE4_FASTA)?;
        let text = source::select(records.clone(), Some(TABLE4_TEXT_LOCUS), "text")?;
        (text, records)
    } else {
        let text_records = match (&args.text_seq, &args.text) {
            (Some(s), None) => vec![source::inline("text", s)?],
            (None, Some(path)) => source::read_fasta_file(path)?,
            _ => {
                return Err(CliError::Usage(
                    "give --text-seq, --text or --table4".into(),
                ))
            }
        };
        let patterns = match &args.patterns {
            Some(path) => source::read_fasta_file(path)?,
            None if args.text.is_some() => text_records.clone(),
            None => {
                return Err(CliError::Usage(
                    "--patterns is required with --text-seq".into(),
                ))
            }
        };
        let text = match &args.text_locus {
            Some(l) => source::select(text_records, Some(l), "text")?,
            None => text_records
                .into_iter()
                .next()
                .expect("at least one record"),
        };
        (text, patterns)
    };

    let text_p = Prepared::new(encoder.encode(&text, args.regions.text())?);
    let pattern_region = args.regions.pattern();
    let outcomes: Vec<Result<ScoreReport, Error>> = patterns
        .par_iter()
        .map(|rec| {
            let pattern_p = Prepared::new(encoder.encode(rec, pattern_region)?);
            run_count(&args.engine, &text_p, &pattern_p)
        })
        .collect();

    let mut rows = Vec::with_capacity(patterns.len());
    let mut failures = 0;
    for (rec, outcome) in patterns.iter().zip(outcomes) {
        let outcome = match outcome {
            Ok(report) => Ok(report),
            Err(e @ Error::EngineDisagreement(_)) => return Err(e.into()),
            Err(e) if args.keep_going => {
                failures += 1;
                eprintln!("logmatch: {}: {e}", rec.locus);
                Err(e.to_string())
            }
            Err(e) => {
                eprintln!("logmatch: pattern {}", rec.locus);
                return Err(e.into());
            }
        };
        rows.push(MatrixRow {
            locus: rec.locus.clone(),
            outcome,
            published: args
                .table4
                .then(|| fixtures::published(&rec.locus).copied())
                .flatten(),
        });
    }
    let mut report = MatrixReport {
        text_locus: text.locus.clone(),
        text_len: text_p.len(),
        rows,
        with_published: args.table4,
    };
    if args.rank {
        report.rank();
    }
    report
        .write(
            io::stdout().lock(),
            args.output.format,
            args.output.precision,
        )
        .map_err(io_err)?;
    if failures > 0 {
        return Err(CliError::RowsFailed(failures));
    }
    Ok(())
}

pub fn index(args: &IndexArgs) -> Result<(), CliError> {
    let encoder = Encoder::new(&args.encoding)?;
    let record = match (&args.seq, &args.input) {
        (Some(s), None) => source::inline("seq", s)?,
        (None, Some(path)) => source::select(
            source::read_fasta_file(path)?,
            args.locus.as_deref(),
            "input",
        )?,
        _ => return Err(CliError::Usage("give --seq or --input".into())),
    };
    let seq = encoder.encode(&record, args.region)?;
    let idx = PositionIndex::build(&seq);
    let mut out = io::stdout().lock();
    match args.format {
        Format::Json => {
            let alphabet = idx.alphabet();
            let postings: serde_json::Map<String, serde_json::Value> = alphabet
                .symbols()
                .iter()
                .zip(idx.postings())
                .map(|(s, p)| (s.to_string(), json!(p)))
                .collect();
            let codes: serde_json::Map<String, serde_json::Value> = alphabet
                .symbols()
                .iter()
                .zip(alphabet.codes())
                .map(|(s, c)| (s.to_string(), json!(c.to_string())))
                .collect();
            let doc = json!({
                "locus": record.locus,
                "length": idx.len(),
                "codes": codes,
                "postings": postings,
            });
            serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| io_err(e.into()))?;
            writeln!(out).map_err(io_err)
        }
        Format::Text | Format::Csv => {
            write!(out, "{}\n{}", idx.posting_sets(), idx.table()).map_err(io_err)
        }
    }
}

pub fn bench(args: &BenchArgs) -> Result<(), CliError> {
    let config = BenchConfig {
        engines: args.engines.clone(),
        sizes: args.sizes.clone(),
        repetitions: args.repetitions,
        seed: args.seed,
        substitution_rate: args.rate,
        min_sample: Duration::from_micros(args.min_sample_us),
    };
    let results = bench::run(&config)?;
    let mut out = io::stdout().lock();
    let verdicts: Vec<_> = results
        .iter()
        .map(|res| {
            let build: Vec<_> = res.timings.iter().map(|t| (t.n, t.build)).collect();
            let total: Vec<_> = res.timings.iter().map(|t| (t.n, t.total())).collect();
            (res.engine, bench::scaling(&build), bench::scaling(&total))
        })
        .collect();

    match args.format {
        Format::Json => {
            let doc = json!({
                "results": results,
                "scaling": verdicts.iter().map(|(e, b, t)| json!({
                    "engine": e, "build": b, "total": t,
                })).collect::<Vec<_>>(),
            });
            serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| io_err(e.into()))?;
            writeln!(out).map_err(io_err)?;
        }
        Format::Csv | Format::Text => {
            let sep = if args.format == Format::Csv {
                ","
            } else {
                "\t"
            };
            let header = [
                "engine",
                "n",
                "m",
                "build_us",
                "count_us",
                "total_us",
                "positions_per_s",
                "r",
            ];
            writeln!(out, "{}", header.join(sep)).map_err(io_err)?;
            for res in &results {
                for t in &res.timings {
                    let row = [
                        res.engine.to_string(),
                        t.n.to_string(),
                        t.m.to_string(),
                        micros(t.build, 3),
                        micros(t.count, 3),
                        micros(t.total(), 3),
                        format!("{:.0}", t.throughput()),
                        t.r.to_string(),
                    ];
                    writeln!(out, "{}", row.join(sep)).map_err(io_err)?;
                }
            }
        }
    }
    // verdicts go to stderr so stdout stays machine-readable
    for (engine, build, total) in &verdicts {
        for (phase, steps) in [("build", build), ("build+count", total)] {
            for s in steps {
                eprintln!(
                    "scaling {engine} {phase} {}->{}: size x{:.2}, time x{:.2} ({})",
                    s.from,
                    s.to,
                    s.size_ratio,
                    s.time_ratio,
                    if s.is_linear() {
                        "linear"
                    } else {
                        "NOT linear"
                    }
                );
            }
        }
    }
    Ok(())
}

pub fn fetch(args: &FetchArgs) -> Result<(), CliError> {
    let mut record = source::fetch(&args.locus, args.allow_network, args.endpoint.as_deref())?;
    if let Some(region) = args.region {
        let cut = extract_region(&record, &region)?.to_string();
        record.description = format!("{} region={region}", record.description)
            .trim()
            .to_string();
        record.residues = cut;
    }
    write_fasta(io::stdout().lock(), &[record], 60)?;
    Ok(())
}
