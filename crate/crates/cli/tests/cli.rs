use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn logmatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logmatch"))
        .args(args)
        .env_remove("LOGMATCH_ENDPOINT")
        .output()
        .expect("run logmatch")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

#[test]
fn compare_worked_example() {
    let out = logmatch(&[
        "compare",
        "--text-seq",
        "ATCAAGATCA",
        "--pattern-seq",
        "AAGAGGCTCA",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("score        2.0000"), "{text}");
    assert!(text.contains("mu_match     0.6000"));
    assert!(text.contains("mu_mismatch  0.4000"));
    assert!(text.contains("r=6 s_P=4 s_T=4"));

    let out = logmatch(&[
        "compare",
        "--text-seq",
        "ATCAAGATCA",
        "--pattern-seq",
        "AAGAGGCTCA",
        "--format",
        "json",
    ]);
    let v = json(&out);
    assert_eq!(v["score"], 2.0);
    assert_eq!(v["mu_match"], 0.6);
    assert_eq!(v["mu_mismatch"], 0.4);
    assert_eq!(v["match_percent"], 60.0);
    assert_eq!(
        (v["r"].as_u64(), v["m"].as_u64(), v["n"].as_u64()),
        (Some(6), Some(10), Some(10))
    );
}

#[test]
fn compare_every_engine_and_verify() {
    for engine in ["postings", "bitplanes", "naive"] {
        let out = logmatch(&[
            "compare",
            "--text-seq",
            "01010010",
            "--pattern-seq",
            "0100",
            "--alphabet",
            "01",
            "--engine",
            engine,
            "--verify",
            "--format",
            "csv",
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        assert_eq!(
            stdout(&out),
            "locus,score,mu_match,mu_mismatch,match_percent,r,m,n\npattern,1.0000,0.7500,0.2500,37.5000,3,4,8\n"
        );
    }
}

#[test]
fn compare_identical_is_full_score() {
    let s = "cgacctctggacaggccact";
    let out = logmatch(&[
        "compare",
        "--text-seq",
        s,
        "--pattern-seq",
        s,
        "--format",
        "json",
    ]);
    let v = json(&out);
    assert_eq!(v["score"], 20.0);
    assert_eq!(v["match_percent"], 100.0);
}

#[test]
fn compare_exact_fraction_shown() {
    let out = logmatch(&[
        "compare",
        "--text-seq",
        "01010010",
        "--pattern-seq",
        "0100100",
        "--alphabet",
        "01",
    ]);
    let text = stdout(&out);
    assert!(text.contains("score        0.5714"), "{text}");
    assert!(text.contains("score_exact  4/7"));
}

#[test]
fn compare_pattern_longer_than_text() {
    let out = logmatch(&["compare", "--text-seq", "ACG", "--pattern-seq", "ACGTA"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("pattern length 5 exceeds text length 3"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&logmatch(&["compare", "--text-seq", "ACG"])), 2);
    assert_eq!(
        code(&logmatch(&[
            "compare",
            "--text-seq",
            "A",
            "--pattern-seq",
            "A",
            "--engine",
            "kmp"
        ])),
        2
    );
    assert_eq!(code(&logmatch(&["compare", "--bogus"])), 2);
    assert_eq!(
        code(&logmatch(&[
            "compare",
            "--text-seq",
            "A",
            "--pattern-seq",
            "A",
            "--region",
            "9-3"
        ])),
        2
    );
    assert_eq!(code(&logmatch(&["nonsense"])), 2);
    assert_eq!(code(&logmatch(&["matrix"])), 2);
    assert_eq!(code(&logmatch(&["index"])), 2);
}

#[test]
fn foreign_symbols() {
    let out = logmatch(&["compare", "--text-seq", "ATXG", "--pattern-seq", "AT"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("'X' at position 3"));
    let out = logmatch(&[
        "compare",
        "--text-seq",
        "ATXG",
        "--pattern-seq",
        "ATG",
        "--on-invalid",
        "skip",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["r"], 3);
    assert!(stderr(&out).contains("dropped 1"));
}

#[test]
fn bad_alphabet_is_data_error() {
    let out = logmatch(&[
        "compare",
        "--text-seq",
        "A",
        "--pattern-seq",
        "A",
        "--alphabet",
        "AA",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn compare_from_fasta_with_regions() {
    let dir = tempfile::tempdir().unwrap();
    let texts = write_temp(&dir, "t.fa", ">T1 first\nGGGGATCAAG\nATCAGGGG\n>T2\nAAAA\n");
    let pats = write_temp(&dir, "p.fa", ">P1\nAAGAGGCTCA\n");
    let out = logmatch(&[
        "compare",
        "--text",
        texts.to_str().unwrap(),
        "--text-locus",
        "T1",
        "--text-region",
        "5-14",
        "--pattern",
        pats.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["score"], 2.0);

    // two records and no locus
    let out = logmatch(&[
        "compare",
        "--text",
        texts.to_str().unwrap(),
        "--pattern",
        pats.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);

    let out = logmatch(&[
        "compare",
        "--text",
        texts.to_str().unwrap(),
        "--text-locus",
        "NOPE",
        "--pattern-seq",
        "A",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn fasta_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_logmatch"))
        .args([
            "compare",
            "--text",
            "-",
            "--pattern-seq",
            "AAGAGGCTCA",
            "--format",
            "json",
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b">T\nATCAAGATCA\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["score"], 2.0);
}

#[test]
fn malformed_fasta_and_region_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(&dir, "bad.fa", "ACGT\n>X\nAC\n");
    let out = logmatch(&[
        "compare",
        "--text",
        bad.to_str().unwrap(),
        "--pattern-seq",
        "A",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("malformed FASTA"));

    let empty_body = write_temp(&dir, "empty.fa", ">X\n>Y\nAC\n");
    assert_eq!(
        code(&logmatch(&[
            "index",
            "--input",
            empty_body.to_str().unwrap(),
            "--locus",
            "Y"
        ])),
        3
    );

    let short = write_temp(&dir, "short.fa", ">S\nACGTACGTAC\n");
    let out = logmatch(&[
        "index",
        "--input",
        short.to_str().unwrap(),
        "--region",
        "5-20",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("outside record of length 10"));

    let missing = dir.path().join("missing.fa");
    assert_eq!(
        code(&logmatch(&["index", "--input", missing.to_str().unwrap()])),
        3
    );
}

#[test]
fn index_output() {
    let out = logmatch(&["index", "--seq", "AAAA"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.starts_with("A 1000(1,2,3,4)\nT 0100()\nG 0010()\nC 0001()\n"),
        "{text}"
    );
    assert!(text.contains("pos\tA\tT\tG\tC\n1\t1\t0\t0\t0\n"));

    let out = logmatch(&["index", "--seq", "ATCAAGATCA", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["postings"]["A"], serde_json::json!([1, 4, 5, 7, 10]));
    assert_eq!(v["postings"]["T"], serde_json::json!([2, 8]));
    assert_eq!(v["postings"]["G"], serde_json::json!([6]));
    assert_eq!(v["postings"]["C"], serde_json::json!([3, 9]));
    assert_eq!(v["codes"]["G"], "0010");
}

#[test]
fn index_empty_region_exits_3() {
    let out = logmatch(&[
        "index",
        "--seq",
        "ACGTNNNN",
        "--region",
        "5-8",
        "--on-invalid",
        "skip",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("empty"));
}

#[test]
fn matrix_table4() {
    let out = logmatch(&["matrix", "--table4", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0]["locus"], "ACU90045");
    assert_eq!(rows[0]["score"], 20.0);
    assert_eq!(rows[0]["match_percent"], 100.0);
    assert_eq!(rows[0]["score_agrees"], true);
    assert_eq!(rows[2]["locus"], "HSU90049");
    assert_eq!(rows[2]["r"], 13);
    assert_eq!(rows[2]["published"]["r"], 7);
    assert_eq!(rows[2]["published"]["score"], -6);
    assert_eq!(rows[2]["score_agrees"], false);

    let text = stdout(&logmatch(&["matrix", "--table4"]));
    assert_eq!(text.matches("differs from published").count(), 6);
}

#[test]
fn matrix_renderings_agree_and_are_deterministic() {
    let args = ["matrix", "--table4", "--precision", "3"];
    let csv_out = logmatch(&[&args[..], &["--format", "csv"]].concat());
    let again = logmatch(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(csv_out.stdout, again.stdout);
    let json_v = json(&logmatch(&[&args[..], &["--format", "json"]].concat()));
    let text = stdout(&logmatch(&[&args[..], &["--format", "text"]].concat()));

    let csv = stdout(&csv_out);
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(
        &header[..8],
        [
            "locus",
            "score",
            "mu_match",
            "mu_mismatch",
            "match_percent",
            "r",
            "m",
            "n"
        ]
    );
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        let row = &json_v["rows"][i];
        assert_eq!(row["locus"], fields[0]);
        for (k, key) in header.iter().enumerate().take(8).skip(1) {
            assert_eq!(
                row[key].as_f64().unwrap(),
                fields[k].parse::<f64>().unwrap(),
                "{key}"
            );
        }
        let text_line = text.lines().nth(i + 2).unwrap();
        let cells: Vec<&str> = text_line.split_whitespace().collect();
        assert_eq!(&cells[..8], &fields[..8]);
    }
}

#[test]
fn matrix_self_only() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "one.fa", ">ONLY\nGATTACAGATTACA\n");
    let out = logmatch(&["matrix", "--text", f.to_str().unwrap(), "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["rows"][0]["score"], 14.0);
}

#[test]
fn matrix_keep_going() {
    let dir = tempfile::tempdir().unwrap();
    let pats = write_temp(&dir, "p.fa", ">OK\nACGT\n>LONG\nACGTACGTACGT\n>OK2\nAC\n");
    let args = [
        "matrix",
        "--text-seq",
        "ACGTA",
        "--patterns",
        pats.to_str().unwrap(),
        "--format",
        "csv",
    ];
    let out = logmatch(&args);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());

    let out = logmatch(&[&args[..], &["--keep-going"]].concat());
    assert_eq!(code(&out), 3);
    let csv = stdout(&out);
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.contains("\nLONG,,,,,,,\n"), "{csv}");
    assert!(stderr(&out).contains("LONG: pattern length 12 exceeds text length 5"));
}

#[test]
fn bench_contract() {
    assert_eq!(code(&logmatch(&["bench", "--repetitions", "1"])), 2);
    assert_eq!(code(&logmatch(&["bench", "--sizes", "200,100"])), 2);
    let out = logmatch(&[
        "bench",
        "--sizes",
        "500,1000",
        "--repetitions",
        "3",
        "--min-sample-us",
        "100",
        "--engines",
        "postings,naive",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let csv = stdout(&out);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "engine,n,m,build_us,count_us,total_us,positions_per_s,r"
    );
    assert_eq!(lines.len(), 5);
    // same seed, same data: both engines report the same r per size
    let r_of = |i: usize| lines[i].rsplit(',').next().unwrap().to_string();
    assert_eq!(r_of(1), r_of(3));
    assert_eq!(r_of(2), r_of(4));
    assert!(stderr(&out).contains("scaling postings build 500->1000"));
}

/// Serves `>LOCUS` FASTA for ACU90045 under `/records/ACU90045`, 404 otherwise.
fn mock_server() -> String {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    std::thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request_line = String::new();
            reader.read_line(&mut request_line).unwrap();
            loop {
                let mut header = String::new();
                if reader.read_line(&mut header).unwrap() == 0 || header == "\r\n" {
                    break;
                }
            }
            let path = request_line.split_whitespace().nth(1).unwrap_or("");
            let (status, body) = if path == "/records/ACU90045" {
                ("200 OK", ">ACU90045 mock record\ncgacctctgg\nacaggccact\n")
            } else {
                ("404 Not Found", "")
            };
            let _ = write!(
                stream,
                "HTTP/1.1 {status}\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
        }
    });
    format!("http://{addr}/records/{{locus}}")
}

#[test]
fn fetch_requires_network_flag() {
    let out = logmatch(&["fetch", "ACU90045"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("network access is disabled"));
    let out = logmatch(&["compare", "--text-fetch", "ACU90045", "--pattern-seq", "A"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn fetch_from_mock_server() {
    let endpoint = mock_server();
    let out = logmatch(&[
        "fetch",
        "ACU90045",
        "--allow-network",
        "--endpoint",
        &endpoint,
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        ">ACU90045 mock record\ncgacctctggacaggccact\n"
    );

    let out = logmatch(&[
        "fetch",
        "ACU90045",
        "--allow-network",
        "--endpoint",
        &endpoint,
        "--region",
        "1-5",
    ]);
    assert_eq!(stdout(&out), ">ACU90045 mock record region=1-5\ncgacc\n");

    let out = logmatch(&["fetch", "XYZ", "--allow-network", "--endpoint", &endpoint]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("not found"));

    // endpoint from the environment, used by compare --text-fetch
    let out = Command::new(env!("CARGO_BIN_EXE_logmatch"))
        .args([
            "compare",
            "--text-fetch",
            "ACU90045",
            "--pattern-seq",
            "cgacctctggacaggccact",
            "--allow-network",
            "--format",
            "json",
        ])
        .env("LOGMATCH_ENDPOINT", &endpoint)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["score"], 20.0);
}

#[test]
fn matrix_rank_against_oracle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let bases = ['A', 'C', 'G', 'T'];
    let text: String = (0..60).map(|_| bases[rng.random_range(0..4)]).collect();
    let mut fasta = String::new();
    let mut expected: Vec<(String, f64)> = Vec::new();
    for i in 0..12 {
        let m = rng.random_range(30..=60);
        let pattern: String = text
            .chars()
            .take(m)
            .map(|c| {
                if rng.random_bool(0.5) {
                    bases[(bases.iter().position(|&b| b == c).unwrap() + 1) % 4]
                } else {
                    c
                }
            })
            .collect();
        // direct positional count and two-term score, independent of the library
        let r = text
            .chars()
            .zip(pattern.chars())
            .filter(|(a, b)| a == b)
            .count() as f64;
        let (m, n) = (m as f64, 60.0);
        let s = r * (r / m) - (n - r) * ((m - r) / m);
        let locus = format!("P{i:02}");
        fasta.push_str(&format!(">{locus}\n{pattern}\n"));
        expected.push((locus, s));
    }
    // duplicate the first pattern to exercise the stable tie-break
    let dup = fasta.lines().nth(1).unwrap().to_string();
    fasta.push_str(&format!(">DUP\n{dup}\n"));
    expected.push(("DUP".into(), expected[0].1));
    expected.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());

    let dir = tempfile::tempdir().unwrap();
    let pats = write_temp(&dir, "p.fa", &fasta);
    let out = logmatch(&[
        "matrix",
        "--text-seq",
        &text,
        "--patterns",
        pats.to_str().unwrap(),
        "--rank",
        "--format",
        "json",
        "--precision",
        "9",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), expected.len());
    for (row, (locus, s)) in rows.iter().zip(&expected) {
        assert_eq!(row["locus"], locus.as_str());
        assert!((row["score"].as_f64().unwrap() - s).abs() < 1e-9);
    }
    let p00 = rows.iter().position(|r| r["locus"] == "P00").unwrap();
    assert_eq!(rows[p00 + 1]["locus"], "DUP");
}
