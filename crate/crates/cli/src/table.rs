//! `table`: value grids as text, CSV or JSON.

use std::process::ExitCode;

use clap::ValueEnum;
use eulersum_core::euler::{g2_closed, GSpec};
use eulersum_core::identities::zetastar_head_eval;
use eulersum_core::{Evaluator, MultiIndex, PrecisionConfig, ValueWithError};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::range::ValueRange;
use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    /// zeta*(r+2, {2}^n) by series and by the assembled evaluation.
    ZetastarHead,
    /// G_2(p, q) closed forms.
    G2,
    /// G_{n+2}(p, q) by the defining series and by compositions.
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Debug, Default)]
pub struct TableArgs {
    pub r: Option<ValueRange>,
    pub n: Option<ValueRange>,
    pub p: Option<ValueRange>,
    pub q: Option<ValueRange>,
    pub max: Option<u32>,
}

const HEAD_MAX_R: u32 = 2;
const HEAD_MAX_N: u32 = 3;
const G2_MAX: u32 = 8;

/// Column names and rows of cell strings.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

struct Row<'a>(&'a [&'static str], &'a [String]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Table {
    fn render(&self, format: Format) -> Result<String, Failure> {
        let fail = |e: String| Failure::Runtime(e);
        Ok(match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)
                    .map_err(|e| fail(e.to_string()))?;
                for row in &self.rows {
                    w.write_record(row).map_err(|e| fail(e.to_string()))?;
                }
                String::from_utf8(w.into_inner().map_err(|e| fail(e.to_string()))?)
                    .map_err(|e| fail(e.to_string()))?
            }
            Format::Json => {
                let rows: Vec<Row> = self.rows.iter().map(|r| Row(&self.columns, r)).collect();
                serde_json::to_string_pretty(&rows).map_err(|e| fail(e.to_string()))? + "\n"
            }
            Format::Text => {
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|i| {
                        self.rows
                            .iter()
                            .map(|r| r[i].len())
                            .chain([self.columns[i].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(self.columns.clone());
                for r in &self.rows {
                    out += &line(r.iter().map(String::as_str).collect());
                }
                out
            }
        })
    }
}

fn range_or(
    r: &Option<ValueRange>,
    default: std::ops::RangeInclusive<u32>,
    limit: u32,
    name: &str,
) -> Result<Vec<u32>, Failure> {
    let values = r
        .as_ref()
        .map_or_else(|| default.collect(), |v| v.values().to_vec());
    match values.iter().find(|&&v| v > limit) {
        Some(v) => Err(Failure::Usage(format!("--{name} {v} outside 0..{limit}"))),
        None => Ok(values),
    }
}

fn cells(v: &ValueWithError, digits: u32) -> [String; 2] {
    [v.value_string(digits), v.err_string()]
}

fn reject(args: &TableArgs, name: &str, allowed: &[&str]) -> Result<(), Failure> {
    let given = [
        ("r", args.r.is_some()),
        ("n", args.n.is_some()),
        ("p", args.p.is_some()),
        ("q", args.q.is_some()),
        ("max", args.max.is_some()),
    ];
    match given
        .iter()
        .find(|(flag, set)| *set && !allowed.contains(flag))
    {
        Some((flag, _)) => Err(Failure::Usage(format!("table {name} takes no --{flag}"))),
        None => Ok(()),
    }
}

pub fn build(name: TableName, args: &TableArgs, cfg: &PrecisionConfig) -> Result<Table, Failure> {
    let ev = Evaluator::new(*cfg)?;
    let d = cfg.digits;
    match name {
        TableName::ZetastarHead => {
            reject(args, "zetastar-head", &["r", "n"])?;
            let rs = range_or(&args.r, 0..=2, HEAD_MAX_R, "r")?;
            let ns = range_or(&args.n, 0..=2, HEAD_MAX_N, "n")?;
            let mut rows = Vec::new();
            for &r in &rs {
                for &n in &ns {
                    let index =
                        MultiIndex::new(vec![r + 2])?.then(&MultiIndex::repeated(2, n as usize));
                    let series = ev.mzsv(&index)?;
                    let assembled = zetastar_head_eval(r, n, cfg)?;
                    let mut row = vec![r.to_string(), n.to_string(), index.to_string()];
                    row.extend(cells(&series, d));
                    row.extend(cells(&assembled, d));
                    rows.push(row);
                }
            }
            Ok(Table {
                columns: vec![
                    "r",
                    "n",
                    "index",
                    "value",
                    "err",
                    "assembled",
                    "assembled_err",
                ],
                rows,
            })
        }
        TableName::G2 => {
            reject(args, "g2", &["max"])?;
            let max = args.max.unwrap_or(4);
            if max > G2_MAX {
                return Err(Failure::Usage(format!("--max {max} outside 0..{G2_MAX}")));
            }
            let mut rows = Vec::new();
            for total in 0..=max {
                for p in 0..=total {
                    let q = total - p;
                    let closed = g2_closed(p, q);
                    let value = closed.evaluate(&ev)?;
                    let series = ev.g_direct(GSpec::new(0, p, q))?;
                    let mut row = vec![p.to_string(), q.to_string(), closed.to_string()];
                    row.extend(cells(&value, d));
                    row.extend(cells(&series, d));
                    rows.push(row);
                }
            }
            Ok(Table {
                columns: vec![
                    "p",
                    "q",
                    "closed_form",
                    "value",
                    "err",
                    "series",
                    "series_err",
                ],
                rows,
            })
        }
        TableName::G => {
            reject(args, "g", &["n", "p", "q"])?;
            let limit = eulersum_core::engine::MAX_WEIGHT;
            let ns = range_or(&args.n, 0..=2, limit, "n")?;
            let ps = range_or(&args.p, 0..=2, limit, "p")?;
            let qs = range_or(&args.q, 0..=2, limit, "q")?;
            let mut rows = Vec::new();
            for &n in &ns {
                for &p in &ps {
                    for &q in &qs {
                        let spec = GSpec::new(n, p, q);
                        let direct = ev.g_direct(spec)?;
                        let comp = ev.g_compositions(spec)?;
                        let mut row = vec![
                            n.to_string(),
                            p.to_string(),
                            q.to_string(),
                            spec.weight().to_string(),
                        ];
                        row.extend(cells(&direct, d));
                        row.extend(cells(&comp, d));
                        rows.push(row);
                    }
                }
            }
            Ok(Table {
                columns: vec![
                    "n",
                    "p",
                    "q",
                    "weight",
                    "direct",
                    "direct_err",
                    "compositions",
                    "compositions_err",
                ],
                rows,
            })
        }
    }
}

pub fn run(
    name: TableName,
    args: &TableArgs,
    format: Format,
    cfg: &PrecisionConfig,
) -> Result<ExitCode, Failure> {
    let table = build(name, args, cfg)?;
    crate::write_stdout(&table.render(format)?);
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        Table {
            columns: vec!["a", "index"],
            rows: vec![
                vec!["1".into(), "(2,2)".into()],
                vec!["10".into(), "(3)".into()],
            ],
        }
    }

    #[test]
    fn csv_quotes_commas() {
        let s = sample().render(Format::Csv).ok().unwrap();
        assert_eq!(s, "a,index\n1,\"(2,2)\"\n10,(3)\n");
    }

    #[test]
    fn json_keeps_column_order() {
        let s = sample().render(Format::Json).ok().unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v[1]["index"], "(3)");
        assert!(s.find("\"a\"").unwrap() < s.find("\"index\"").unwrap());
    }

    #[test]
    fn text_aligns_columns() {
        let s = sample().render(Format::Text).ok().unwrap();
        assert_eq!(s, "a   index\n1   (2,2)\n10  (3)\n");
    }
}
