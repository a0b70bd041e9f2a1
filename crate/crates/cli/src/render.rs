use std::io::Write;

use logical_match::fixtures::PublishedRow;
use logical_match::score::{fixed, Rounded};
use logical_match::{Rational, ScoreReport};
use serde_json::{json, Map, Value};

use crate::Format;

pub struct MatrixRow {
    pub locus: String,
    pub outcome: Result<ScoreReport, String>,
    pub published: Option<PublishedRow>,
}

impl MatrixRow {
    fn score(&self) -> Option<Rational> {
        self.outcome.as_ref().ok().map(ScoreReport::score)
    }

    /// Whether recomputed score and match count equal the published ones.
    fn agreement(&self, n: usize) -> Option<(bool, bool)> {
        let (report, published) = (self.outcome.as_ref().ok()?, self.published?);
        Some((
            report.score() == Rational::from_integer(published.score as i128),
            report.counts().r() == published.implied_matches(n),
        ))
    }
}

pub struct MatrixReport {
    pub text_locus: String,
    pub text_len: usize,
    pub rows: Vec<MatrixRow>,
    pub with_published: bool,
}

impl MatrixReport {
    /// Stable sort by descending score; failed rows go last.
    pub fn rank(&mut self) {
        self.rows.sort_by(|a, b| match (a.score(), b.score()) {
            (Some(x), Some(y)) => y.cmp(&x),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        });
    }

    pub fn write<W: Write>(&self, out: W, format: Format, precision: usize) -> std::io::Result<()> {
        match format {
            Format::Text => self.write_text(out, precision),
            Format::Csv => self.write_csv(out, precision),
            Format::Json => {
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, &self.to_json(precision))?;
                writeln!(out)
            }
        }
    }

    fn header(&self) -> Vec<&'static str> {
        let mut cols = vec!["locus"];
        cols.extend(Rounded::CSV_COLUMNS);
        if self.with_published {
            cols.extend([
                "published_score",
                "published_match_percent",
                "published_r",
                "score_agrees",
                "r_agrees",
            ]);
        }
        cols
    }

    fn fields(&self, row: &MatrixRow, precision: usize) -> Vec<String> {
        let mut fields = vec![row.locus.clone()];
        match &row.outcome {
            Ok(report) => fields.extend(report.rounded(precision).csv_fields()),
            Err(_) => fields.extend(std::iter::repeat_n(
                String::new(),
                Rounded::CSV_COLUMNS.len(),
            )),
        }
        if self.with_published {
            match row.published {
                Some(p) => fields.extend([
                    p.score.to_string(),
                    p.match_percent.to_string(),
                    p.implied_matches(self.text_len).to_string(),
                ]),
                None => fields.extend(std::iter::repeat_n(String::new(), 3)),
            }
            match row.agreement(self.text_len) {
                Some((s, r)) => fields.extend([s.to_string(), r.to_string()]),
                None => fields.extend(std::iter::repeat_n(String::new(), 2)),
            }
        }
        fields
    }

    fn write_csv<W: Write>(&self, out: W, precision: usize) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header())?;
        for row in &self.rows {
            w.write_record(self.fields(row, precision))?;
        }
        w.flush()
    }

    fn write_text<W: Write>(&self, mut out: W, precision: usize) -> std::io::Result<()> {
        writeln!(out, "text: {} (n={})", self.text_locus, self.text_len)?;
        let header = self.header();
        let table: Vec<Vec<String>> =
            std::iter::once(header.iter().map(|h| h.to_string()).collect())
                .chain(self.rows.iter().map(|row| self.fields(row, precision)))
                .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        for (line, row) in table.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            write!(out, "{}", cells.join("  ").trim_end())?;
            if line > 0 {
                let data_row = &self.rows[line - 1];
                if let Err(e) = &data_row.outcome {
                    write!(out, "  error: {e}")?;
                } else if let Some((s, r)) = data_row.agreement(self.text_len) {
                    if !(s && r) {
                        write!(out, "  <- differs from published")?;
                    }
                }
            }
            writeln!(out)?;
        }
        Ok(())
    }

    fn to_json(&self, precision: usize) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                obj.insert("locus".into(), json!(row.locus));
                match &row.outcome {
                    Ok(report) => {
                        if let Value::Object(fields) = json!(report.rounded(precision)) {
                            obj.extend(fields);
                        }
                    }
                    Err(e) => {
                        obj.insert("error".into(), json!(e));
                    }
                }
                if let Some(p) = row.published {
                    obj.insert(
                        "published".into(),
                        json!({
                            "score": p.score,
                            "match_percent": p.match_percent,
                            "r": p.implied_matches(self.text_len),
                        }),
                    );
                    if let Some((s, r)) = row.agreement(self.text_len) {
                        obj.insert("score_agrees".into(), json!(s));
                        obj.insert("r_agrees".into(), json!(r));
                    }
                }
                Value::Object(obj)
            })
            .collect();
        json!({
            "text_locus": self.text_locus,
            "n": self.text_len,
            "rows": rows,
        })
    }
}

/// Single-comparison rendering.
pub fn write_report<W: Write>(
    mut out: W,
    report: &ScoreReport,
    labels: (&str, &str),
    format: Format,
    precision: usize,
) -> std::io::Result<()> {
    let rounded = report.rounded(precision);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &rounded)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["locus"];
            header.extend(Rounded::CSV_COLUMNS);
            w.write_record(header)?;
            let mut fields = vec![labels.1.to_string()];
            fields.extend(rounded.csv_fields());
            w.write_record(fields)?;
            w.flush()
        }
        Format::Text => {
            let c = report.counts();
            let [score, mu_match, mu_mismatch, percent] = rounded.fixed_values();
            writeln!(out, "text         {} (n={})", labels.0, c.n())?;
            writeln!(out, "pattern      {} (m={})", labels.1, c.m())?;
            writeln!(
                out,
                "matches      r={} s_P={} s_T={}",
                c.r(),
                c.pattern_mismatches(),
                c.text_mismatches()
            )?;
            writeln!(out, "mu_match     {mu_match}")?;
            writeln!(out, "mu_mismatch  {mu_mismatch}")?;
            writeln!(out, "score        {score}")?;
            writeln!(out, "match        {percent}%")?;
            let exact = report.score();
            if !exact.is_integer() {
                writeln!(out, "score_exact  {}/{}", exact.numer(), exact.denom())?;
            }
            Ok(())
        }
    }
}

/// Duration in microseconds.
pub fn micros(d: std::time::Duration, precision: usize) -> String {
    fixed(d.as_secs_f64() * 1e6, precision)
}
