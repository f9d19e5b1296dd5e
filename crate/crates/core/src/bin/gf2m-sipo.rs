use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use gf2m_sipo::cost::{verify_against_netlist, Arch, GateCostTable};
use gf2m_sipo::field::{gf16_poly, mul_reference, FieldElement, IrreduciblePoly, NistField};
use gf2m_sipo::netlist::{build_netlist, Netlist};
use gf2m_sipo::report::{self, ReportOptions};
use gf2m_sipo::serial::{mul_serial, TraceRecord};
use gf2m_sipo::sim::{simulate_many, simulate_trace};

/// Bit-serial GF(2^m) multiplier: algorithm, gate netlist and cost model.
#[derive(Parser)]
#[command(name = "gf2m-sipo", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// NIST field: b163, b233, b283, b409, b571 (or `all` for verify/netlist --census)
    #[arg(long, global = true, conflicts_with_all = ["m", "poly"])]
    nist: Option<String>,
    /// Field degree, used with --poly
    #[arg(long, global = true, requires = "poly")]
    m: Option<usize>,
    /// Reduction vector f(x) - x^m in hex, used with --m
    #[arg(long, global = true, requires = "m")]
    poly: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Seed for random verification
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Reference,
    Serial,
    SerialNand,
    Gate,
    /// Run every engine and require agreement
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two elements
    Mul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = Engine::Serial)]
        engine: Engine,
    },
    /// Print the per-cycle register trace of a multiplication
    Trace {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = Engine::Serial)]
        engine: Engine,
    },
    /// Emit the gate-level netlist
    Netlist {
        /// Print only the gate census
        #[arg(long)]
        census: bool,
        /// Also print the census after constant folding (diagnostic)
        #[arg(long, requires = "census")]
        folded: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run equivalence and structural checks
    Verify {
        /// All 256 GF(2^4) pairs across every engine
        #[arg(long)]
        exhaustive_m4: bool,
        /// N random pairs in the selected field(s)
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        /// Gate census, transistor and timing consistency of built netlists
        #[arg(long)]
        structural: bool,
        /// Check a netlist document from disk
        #[arg(long, value_name = "PATH")]
        check_file: Option<PathBuf>,
    },
    /// Transistor, timing and area-delay comparison tables
    Report {
        /// Price 3-input NANDs at their own transistor cost
        #[arg(long)]
        strict_nand3: bool,
        /// Restrict output to the published row/column sets
        #[arg(long = "paper-rows")]
        published_rows: bool,
        /// Degree for the timing/ADP table
        #[arg(long, default_value_t = 163)]
        timing_m: usize,
        /// Comma-separated architectures (proposed, ref29, ref25, ref8, ref22, ref33)
        #[arg(long, value_delimiter = ',')]
        archs: Option<Vec<String>>,
        /// Comma-separated degrees for the transistor table
        #[arg(long, value_delimiter = ',')]
        ms: Option<Vec<usize>>,
        /// JSON cost table overriding the default gate costs
        #[arg(long, value_name = "PATH")]
        costs: Option<PathBuf>,
    },
}

/// Argument error: reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

struct Field {
    label: String,
    poly: IrreduciblePoly,
}

impl Global {
    /// Fields named by the selector; `all` expands to the NIST catalog.
    fn fields(&self) -> Result<Vec<Field>> {
        if let Some(id) = &self.nist {
            if id.eq_ignore_ascii_case("all") {
                return Ok(NistField::ALL.iter().map(|&f| Field { label: f.name().into(), poly: f.poly() }).collect());
            }
            let f: NistField = id.parse().map_err(|e| usage(format!("--nist: {e}")))?;
            return Ok(vec![Field { label: f.name().into(), poly: f.poly() }]);
        }
        if let (Some(m), Some(poly)) = (self.m, &self.poly) {
            let f = IrreduciblePoly::from_hex(m, poly).map_err(|e| usage(format!("--poly: {e}")))?;
            return Ok(vec![Field { label: format!("GF(2^{m})"), poly: f }]);
        }
        Ok(Vec::new())
    }

    fn single_field(&self) -> Result<Field> {
        let mut fields = self.fields()?;
        match fields.len() {
            1 => Ok(fields.remove(0)),
            0 => Err(usage("a field is required: pass --nist <id> or --m <degree> --poly <hex>")),
            _ => Err(usage("--nist: this command needs a single field, not `all`")),
        }
    }
}

fn parse_operand(flag: &str, m: usize, text: &str) -> Result<FieldElement> {
    FieldElement::from_hex(m, text).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn emit(out: &str) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(out.as_bytes())?;
    if !out.ends_with('\n') {
        stdout.write_all(b"\n")?;
    }
    Ok(())
}

fn product(engine: Engine, a: &FieldElement, b: &FieldElement, f: &IrreduciblePoly) -> Result<FieldElement> {
    Ok(match engine {
        Engine::Reference => mul_reference(a, b, f)?,
        Engine::Serial => mul_serial(a, b, f, false)?.0,
        Engine::SerialNand => mul_serial(a, b, f, true)?.0,
        Engine::Gate => {
            let nl = build_netlist(f.m(), f)?;
            simulate_many(&nl, &[(a.clone(), b.clone())])?.remove(0)
        }
        Engine::All => {
            let results = [Engine::Reference, Engine::Serial, Engine::SerialNand, Engine::Gate]
                .map(|e| product(e, a, b, f));
            let results: Vec<FieldElement> = results.into_iter().collect::<Result<_>>()?;
            if results.windows(2).any(|w| w[0] != w[1]) {
                let shown: Vec<String> = results.iter().map(|r| r.to_hex()).collect();
                eprintln!("engines disagree: reference/serial/serial-nand/gate = {}", shown.join(" / "));
                return Err(anyhow!(CheckFailedError));
            }
            results[0].clone()
        }
    })
}

/// A check that ran and found a disagreement: exit code 1.
#[derive(Debug)]
struct CheckFailedError;

impl std::fmt::Display for CheckFailedError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("check failed")
    }
}

impl std::error::Error for CheckFailedError {}

fn cmd_mul(g: &Global, a: &str, b: &str, engine: Engine) -> Result<()> {
    let field = g.single_field()?;
    let m = field.poly.m();
    let (a, b) = (parse_operand("a", m, a)?, parse_operand("b", m, b)?);
    let p = product(engine, &a, &b, &field.poly)?;
    match g.format {
        OutputFormat::Json => emit(&serde_json::to_string_pretty(&serde_json::json!({
            "field": field.label, "m": m, "a": a, "b": b, "product": p,
        }))?),
        _ => emit(&p.to_hex()),
    }
}

fn trace_records(engine: Engine, a: &FieldElement, b: &FieldElement, f: &IrreduciblePoly) -> Result<Vec<TraceRecord>> {
    Ok(match engine {
        Engine::Serial | Engine::Reference => mul_serial(a, b, f, false)?.1,
        Engine::SerialNand => mul_serial(a, b, f, true)?.1,
        Engine::Gate => simulate_trace(&build_netlist(f.m(), f)?, a, b)?.1,
        Engine::All => {
            let serial = mul_serial(a, b, f, false)?.1;
            let nand = mul_serial(a, b, f, true)?.1;
            let gate = simulate_trace(&build_netlist(f.m(), f)?, a, b)?.1;
            if serial != nand || serial != gate {
                eprintln!("traces disagree between engines");
                return Err(anyhow!(CheckFailedError));
            }
            serial
        }
    })
}

fn cmd_trace(g: &Global, a: &str, b: &str, engine: Engine) -> Result<()> {
    let field = g.single_field()?;
    let m = field.poly.m();
    let (a, b) = (parse_operand("a", m, a)?, parse_operand("b", m, b)?);
    let trace = trace_records(engine, &a, &b, &field.poly)?;
    let out = match g.format {
        OutputFormat::Text => trace.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
        OutputFormat::Json => serde_json::to_string_pretty(&trace)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &trace {
                w.serialize(r)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    emit(&out)
}

#[derive(Serialize)]
struct CensusLine<'a> {
    field: &'a str,
    m: usize,
    and2: usize,
    nand: usize,
    nand3: usize,
    nand2: usize,
    dff: usize,
    xor_xnor: usize,
    mux: usize,
}

fn cmd_netlist(g: &Global, census: bool, folded: bool, output: Option<PathBuf>) -> Result<()> {
    let fields = g.fields()?;
    if fields.is_empty() {
        return Err(usage("a field is required: pass --nist <id> or --m <degree> --poly <hex>"));
    }
    if !census && fields.len() != 1 {
        return Err(usage("--nist: exporting a netlist needs a single field"));
    }
    let out = if census {
        let mut lines = Vec::new();
        for field in &fields {
            let nl = build_netlist(field.poly.m(), &field.poly)?;
            let c = nl.census();
            lines.push((field.label.clone(), nl.m(), c, folded.then(|| nl.folded_census())));
        }
        match g.format {
            OutputFormat::Text => lines
                .iter()
                .map(|(label, m, c, f)| {
                    let mut s = format!("{label} (m = {m}): {c}");
                    if let Some(f) = f {
                        s.push_str(&format!("\n  constant-folded (not the nominal count): {f}"));
                    }
                    s
                })
                .collect::<Vec<_>>()
                .join("\n"),
            _ => {
                let rows: Vec<CensusLine> = lines
                    .iter()
                    .map(|(label, m, c, _)| CensusLine {
                        field: label,
                        m: *m,
                        and2: c.and2,
                        nand: c.nand(),
                        nand3: c.nand3,
                        nand2: c.nand2,
                        dff: c.dff,
                        xor_xnor: c.xor_xnor(),
                        mux: c.mux21,
                    })
                    .collect();
                if g.format == OutputFormat::Json {
                    serde_json::to_string_pretty(&rows)?
                } else {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &rows {
                        w.serialize(r)?;
                    }
                    String::from_utf8(w.into_inner()?)?
                }
            }
        }
    } else {
        let field = &fields[0];
        build_netlist(field.poly.m(), &field.poly)?.to_json()
    };
    match output {
        Some(path) => {
            let mut text = out;
            text.push('\n');
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => emit(&out),
    }
}

struct Tally {
    failed: bool,
}

impl Tally {
    fn line(&mut self, name: &str, passed: usize, total: usize) {
        let ok = passed == total;
        self.failed |= !ok;
        println!("{name}: {passed}/{total} {}", if ok { "pass" } else { "FAIL" });
    }
}

/// Checks every engine against the reference on `pairs`; prints the first
/// counterexample and returns the number of agreeing pairs.
fn check_pairs(label: &str, f: &IrreduciblePoly, nl: &Netlist, pairs: &[(FieldElement, FieldElement)]) -> Result<usize> {
    let gate = simulate_many(nl, pairs)?;
    let mut passed = 0;
    let mut reported = false;
    for ((a, b), g) in pairs.iter().zip(gate) {
        let r = mul_reference(a, b, f)?;
        let (s, st) = mul_serial(a, b, f, false)?;
        let (n, nt) = mul_serial(a, b, f, true)?;
        if r == s && s == n && n == g && st == nt {
            passed += 1;
        } else if !reported {
            reported = true;
            eprintln!(
                "{label}: counterexample a={a} b={b}: reference={r} serial={s} serial-nand={n} gate={g}{}",
                if st != nt { " (NAND-form trace differs)" } else { "" }
            );
        }
    }
    Ok(passed)
}

fn cmd_verify(g: &Global, exhaustive_m4: bool, random: Option<usize>, structural: bool, check_file: Option<PathBuf>) -> Result<()> {
    let none_selected = !exhaustive_m4 && random.is_none() && !structural && check_file.is_none();
    let (exhaustive_m4, structural) = if none_selected { (true, true) } else { (exhaustive_m4, structural) };
    let mut tally = Tally { failed: false };
    let costs = GateCostTable::default();

    if exhaustive_m4 {
        let f = gf16_poly();
        let nl = build_netlist(4, &f)?;
        let pairs: Vec<_> = (0..16u64)
            .flat_map(|a| (0..16u64).map(move |b| (a, b)))
            .map(|(a, b)| (FieldElement::from_u64(4, a).unwrap(), FieldElement::from_u64(4, b).unwrap()))
            .collect();
        let passed = check_pairs("exhaustive-m4", &f, &nl, &pairs)?;
        tally.line("exhaustive-m4", passed, pairs.len());
    }

    if let Some(n) = random {
        let fields = g.fields()?;
        if fields.is_empty() {
            return Err(usage("--random: a field is required (--nist <id|all> or --m/--poly)"));
        }
        let seed = g.seed.unwrap_or_else(rand::random);
        eprintln!("seed: {seed}");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for field in &fields {
            let m = field.poly.m();
            let nl = build_netlist(m, &field.poly)?;
            let pairs: Vec<_> =
                (0..n).map(|_| (FieldElement::random(m, &mut rng), FieldElement::random(m, &mut rng))).collect();
            let label = format!("random {}", field.label);
            let passed = check_pairs(&label, &field.poly, &nl, &pairs)?;
            tally.line(&label, passed, n);
        }
    }

    if structural {
        let mut fields = g.fields()?;
        if fields.is_empty() {
            fields = NistField::ALL.iter().map(|&f| Field { label: f.name().into(), poly: f.poly() }).collect();
        }
        let mut passed = 0;
        for field in &fields {
            let nl = build_netlist(field.poly.m(), &field.poly)?;
            match verify_against_netlist(&nl, &costs) {
                Ok(c) => {
                    passed += 1;
                    eprintln!(
                        "{}: {} | {} transistors ({} strict) | critical path {} ns",
                        field.label, c.census, c.transistors_uniform, c.transistors_strict, c.critical_path
                    );
                }
                Err(e) => eprintln!("{}: {e}", field.label),
            }
        }
        tally.line("structural", passed, fields.len());
    }

    if let Some(path) = check_file {
        let ok = check_netlist_file(&path, &costs, g.seed)?;
        tally.line(&format!("check-file {}", path.display()), ok as usize, 1);
    }

    if tally.failed {
        Err(anyhow!(CheckFailedError))
    } else {
        Ok(())
    }
}

fn check_netlist_file(path: &PathBuf, costs: &GateCostTable, seed: Option<u64>) -> Result<bool> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let nl = match Netlist::from_json(&text) {
        Ok(nl) => nl,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return Ok(false);
        }
    };
    if let Err(e) = verify_against_netlist(&nl, costs) {
        eprintln!("{}: {e}", path.display());
        return Ok(false);
    }
    let f = match nl.reduction_poly() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return Ok(false);
        }
    };
    let m = nl.m();
    let pairs: Vec<_> = if m <= 6 {
        (0..1u64 << m)
            .flat_map(|a| (0..1u64 << m).map(move |b| (a, b)))
            .map(|(a, b)| (FieldElement::from_u64(m, a).unwrap(), FieldElement::from_u64(m, b).unwrap()))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
        (0..256).map(|_| (FieldElement::random(m, &mut rng), FieldElement::random(m, &mut rng))).collect()
    };
    let gate = simulate_many(&nl, &pairs)?;
    for ((a, b), p) in pairs.iter().zip(gate) {
        let r = mul_reference(a, b, &f)?;
        if p != r {
            eprintln!("{}: counterexample a={a} b={b}: gate={p} reference={r}", path.display());
            return Ok(false);
        }
    }
    Ok(true)
}

fn cmd_report(
    g: &Global,
    strict_nand3: bool,
    published_rows: bool,
    timing_m: usize,
    archs: Option<Vec<String>>,
    ms: Option<Vec<usize>>,
    costs: Option<PathBuf>,
) -> Result<()> {
    let costs = match costs {
        Some(path) => {
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            GateCostTable::from_json(&text).map_err(|e| usage(format!("--costs: {e}")))?
        }
        None => GateCostTable::default(),
    };
    let mut opts = ReportOptions { strict_nand3, published_rows, timing_m, ..ReportOptions::default() };
    if let Some(list) = archs {
        opts.archs = list
            .iter()
            .map(|s| s.parse::<Arch>().map_err(|e| usage(format!("--archs: {e}"))))
            .collect::<Result<_>>()?;
    }
    if let Some(ms) = ms {
        if let Some(bad) = ms.iter().find(|&&m| m < 2) {
            bail!(usage(format!("--ms: degree {bad} is below 2")));
        }
        opts.ms = ms;
    }
    let format = match g.format {
        OutputFormat::Text => report::Format::Text,
        OutputFormat::Csv => report::Format::Csv,
        OutputFormat::Json => report::Format::Json,
    };
    emit(&report::render(&opts, &costs, format).map_err(|e| usage(e.to_string()))?)
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    match cli.command {
        Command::Mul { a, b, engine } => cmd_mul(g, &a, &b, engine),
        Command::Trace { a, b, engine } => cmd_trace(g, &a, &b, engine),
        Command::Netlist { census, folded, output } => cmd_netlist(g, census, folded, output),
        Command::Verify { exhaustive_m4, random, structural, check_file } => {
            cmd_verify(g, exhaustive_m4, random, structural, check_file)
        }
        Command::Report { strict_nand3, published_rows, timing_m, archs, ms, costs } => {
            cmd_report(g, strict_nand3, published_rows, timing_m, archs, ms, costs)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<CheckFailedError>() => ExitCode::from(1),
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
