//! Text, CSV and JSON rendering of cost reports.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cost::{
    adp_report, area_overhead, area_reduction, adp_reduction, formula_row, printed_discrepancy, printed_row, Arch,
    CostError, CostReport, CostRow, GateCostTable, Hundredths, Source, PRINTED_MS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub archs: Vec<Arch>,
    pub ms: Vec<usize>,
    /// Degree of the timing/ADP table.
    pub timing_m: usize,
    pub strict_nand3: bool,
    /// Only the published row/column sets, with published figures for the
    /// rows that cannot be derived.
    pub published_rows: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            archs: Arch::PUBLISHED_ORDER.to_vec(),
            ms: PRINTED_MS.to_vec(),
            timing_m: 163,
            strict_nand3: false,
            published_rows: false,
        }
    }
}

const TRANSISTOR_ORDER: [Arch; 6] = [Arch::Ref22, Arch::Ref8, Arch::Ref33, Arch::Ref25, Arch::Ref29, Arch::Proposed];

/// Rows of the timing/ADP table, in display order.
fn timing_rows(opts: &ReportOptions, costs: &GateCostTable) -> Result<Vec<CostRow>, CostError> {
    let m = opts.timing_m;
    let mut rows = Vec::new();
    for &arch in &opts.archs {
        let printed = printed_discrepancy(arch).then(|| printed_row(arch, m)).flatten();
        if opts.published_rows {
            rows.push(match printed {
                Some(p) => p,
                None => formula_row(arch, m, costs, opts.strict_nand3)?,
            });
        } else {
            rows.push(formula_row(arch, m, costs, opts.strict_nand3)?);
            rows.extend(printed);
        }
    }
    Ok(rows)
}

fn transistor_cells(arch: Arch, opts: &ReportOptions, costs: &GateCostTable) -> Result<Vec<(u64, Option<u64>)>, CostError> {
    let printed = arch.printed();
    opts.ms
        .iter()
        .map(|&m| {
            let formula = formula_row(arch, m, costs, opts.strict_nand3)?.transistors;
            let pub_value = PRINTED_MS.iter().position(|&pm| pm == m).map(|i| printed.transistors_by_m[i]);
            Ok((formula, pub_value.filter(|_| printed_discrepancy(arch))))
        })
        .collect()
}

fn dash_if_not_positive(v: Option<Hundredths>, published_rows: bool) -> String {
    match v {
        Some(h) if !published_rows || h.is_positive() => h.to_string(),
        _ => "-".to_string(),
    }
}

pub fn render(opts: &ReportOptions, costs: &GateCostTable, format: Format) -> Result<String, CostError> {
    match format {
        Format::Text => render_text(opts, costs),
        Format::Csv => render_csv(opts, costs),
        Format::Json => render_json(opts, costs),
    }
}

fn pad_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, cell)| if c == 0 { format!("{cell:<w$}", w = widths[c]) } else { format!("{cell:>w$}", w = widths[c]) })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn render_text(opts: &ReportOptions, costs: &GateCostTable) -> Result<String, CostError> {
    let mut out = String::new();
    let pricing = if opts.strict_nand3 { "NAND3 at its own price" } else { "all NANDs at the 2-input price" };
    let _ = writeln!(out, "Total transistor count ({pricing})");

    let mut table = vec![std::iter::once("Multiplier".to_string())
        .chain(opts.ms.iter().map(|m| format!("m = {m}")))
        .collect::<Vec<_>>()];
    let order: Vec<Arch> = TRANSISTOR_ORDER.into_iter().filter(|a| opts.archs.contains(a)).collect();
    let mut any_flag = false;
    for arch in order {
        let cells = transistor_cells(arch, opts, costs)?;
        let flagged = cells.iter().any(|(_, p)| p.is_some());
        any_flag |= flagged;
        if opts.published_rows {
            let mut row = vec![arch.label().to_string()];
            row.extend(cells.iter().map(|(f, p)| p.unwrap_or(*f).to_string()));
            table.push(row);
        } else {
            let mut row = vec![format!("{}{}", arch.label(), if flagged { " !" } else { "" })];
            row.extend(cells.iter().map(|(f, _)| f.to_string()));
            table.push(row);
            if flagged {
                let mut row = vec!["  published".to_string()];
                row.extend(cells.iter().map(|(_, p)| p.map_or("-".into(), |v| v.to_string())));
                table.push(row);
            }
        }
    }
    out.push_str(&pad_table(&table));
    out.push('\n');

    let m = opts.timing_m;
    let proposed = formula_row(Arch::Proposed, m, costs, opts.strict_nand3)?;
    let _ = writeln!(out, "Timing and area-delay product at m = {m}");
    let mut header = vec!["Multiplier"];
    if !opts.published_rows {
        header.push("Source");
    }
    header.extend([
        "Critical path (ns)",
        "Latency (cycles)",
        "Delay (ns)",
        "#Transistors",
        "ADP (x10^5)",
        "Reduction in area",
        "Reduction in ADP",
    ]);
    let mut table = vec![header.into_iter().map(String::from).collect::<Vec<_>>()];
    for row in timing_rows(opts, costs)? {
        let mut cells = vec![row.arch.label().to_string()];
        if !opts.published_rows {
            let flag = if printed_discrepancy(row.arch) { " !" } else { "" };
            let src = match row.source {
                Source::Formula => "formula",
                Source::Printed => "published",
            };
            cells.push(format!("{src}{flag}"));
        }
        let is_proposed = row.arch == Arch::Proposed;
        cells.extend([
            row.critical_path.display_ns(),
            row.latency_cycles.to_string(),
            row.total_delay.display_ns(),
            row.transistors.to_string(),
            row.adp_display(),
            if is_proposed { "-".into() } else { dash_if_not_positive(area_reduction(&proposed, &row), opts.published_rows) },
            if is_proposed { "-".into() } else { dash_if_not_positive(adp_reduction(&proposed, &row), opts.published_rows) },
        ]);
        table.push(cells);
    }
    out.push_str(&pad_table(&table));

    if !opts.published_rows {
        if opts.archs.contains(&Arch::Ref29) {
            let r29 = formula_row(Arch::Ref29, m, costs, opts.strict_nand3)?;
            if let Some(o) = area_overhead(&proposed, &r29) {
                let _ = writeln!(out, "\nProposed area overhead vs [29]: {o}%");
            }
        }
        if any_flag {
            let _ = writeln!(
                out,
                "! published figures for this architecture cannot be derived from its gate-count formula; both are shown"
            );
            let _ = writeln!(out, "  ([33] appears as [39] in the published transistor table)");
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct CsvRecord {
    table: &'static str,
    arch: &'static str,
    source: &'static str,
    m: usize,
    transistors: u64,
    critical_path_ns: String,
    latency_cycles: String,
    delay_ns: String,
    adp_e5: String,
    area_reduction_pct: String,
    adp_reduction_pct: String,
    discrepancy: bool,
}

fn render_csv(opts: &ReportOptions, costs: &GateCostTable) -> Result<String, CostError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let blank = String::new;
    let order: Vec<Arch> = TRANSISTOR_ORDER.into_iter().filter(|a| opts.archs.contains(a)).collect();
    for arch in order {
        let cells = transistor_cells(arch, opts, costs)?;
        for (&m, (f, p)) in opts.ms.iter().zip(cells) {
            let mut emit = |source: &'static str, transistors: u64| {
                w.serialize(CsvRecord {
                    table: "transistors",
                    arch: arch.id(),
                    source,
                    m,
                    transistors,
                    critical_path_ns: blank(),
                    latency_cycles: blank(),
                    delay_ns: blank(),
                    adp_e5: blank(),
                    area_reduction_pct: blank(),
                    adp_reduction_pct: blank(),
                    discrepancy: p.is_some(),
                })
                .expect("in-memory csv");
            };
            match (opts.published_rows, p) {
                (true, Some(p)) => emit("published", p),
                (true, None) => emit("formula", f),
                (false, p) => {
                    emit("formula", f);
                    if let Some(p) = p {
                        emit("published", p);
                    }
                }
            }
        }
    }
    let proposed = formula_row(Arch::Proposed, opts.timing_m, costs, opts.strict_nand3)?;
    for row in timing_rows(opts, costs)? {
        let is_proposed = row.arch == Arch::Proposed;
        w.serialize(CsvRecord {
            table: "timing",
            arch: row.arch.id(),
            source: match row.source {
                Source::Formula => "formula",
                Source::Printed => "published",
            },
            m: row.m,
            transistors: row.transistors,
            critical_path_ns: row.critical_path.display_ns(),
            latency_cycles: row.latency_cycles.to_string(),
            delay_ns: row.total_delay.display_ns(),
            adp_e5: row.adp_display(),
            area_reduction_pct: if is_proposed { blank() } else { area_reduction(&proposed, &row).map_or(blank(), |h| h.to_string()) },
            adp_reduction_pct: if is_proposed { blank() } else { adp_reduction(&proposed, &row).map_or(blank(), |h| h.to_string()) },
            discrepancy: printed_discrepancy(row.arch),
        })
        .expect("in-memory csv");
    }
    let bytes = w.into_inner().expect("in-memory csv");
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn render_json(opts: &ReportOptions, costs: &GateCostTable) -> Result<String, CostError> {
    let mut ms = opts.ms.clone();
    if !ms.contains(&opts.timing_m) {
        ms.push(opts.timing_m);
    }
    let mut report: CostReport = adp_report(&opts.archs, &ms, costs, opts.strict_nand3)?;
    if opts.published_rows {
        let keep_printed: Vec<Arch> = opts.archs.iter().copied().filter(|&a| printed_discrepancy(a)).collect();
        report.entries.retain(|e| match e.row.source {
            Source::Printed => true,
            Source::Formula => !(keep_printed.contains(&e.row.arch) && e.row.m == 163),
        });
    }
    Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
}
