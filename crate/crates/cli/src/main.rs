use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use burnside_core::class::{class_of_with_witness, DEFAULT_WITNESS};
use burnside_core::ledger::{ledger, Ledger, LedgerEntry, MapSpec, ToricMap};
use burnside_core::presentation::build_presentation;
use burnside_core::scenario::{scenario_dp6, scenario_lsh, ConeWeights, LshLabels};
use burnside_core::toric::{parse_fan, parse_word, Embedding, Fan2D, MoveWord};
use burnside_core::verify::{run, VerifyKind};
use burnside_core::Int;

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "burnside", version, about = "Equivariant Burnside invariants of toric surfaces and birational maps")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Presentation of the rational sector for C_N and its Smith normal form.
    Quotient {
        #[arg(long = "N")]
        n: u64,
        /// Largest accepted N.
        #[arg(long, default_value_t = 60)]
        bound: u64,
    },
    /// Class of a toric surface with a torsion-translation action.
    Class {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long = "N")]
        n: u64,
        /// Translation vector as `p,q`.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        embed: (i64, i64),
        #[arg(long, default_value = DEFAULT_WITNESS)]
        witness: String,
    },
    /// Divisor ledger of a toric birational map with c, C_G and C_orb.
    Cg {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        embed: (i64, i64),
    },
    /// Randomized property checks.
    Verify {
        #[arg(value_parser = parse_kind)]
        kind: VerifyKind,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Worked examples.
    Scenario {
        #[command(subcommand)]
        which: Scenario,
    },
}

#[derive(Subcommand)]
enum Scenario {
    /// Cremona involution through the degree-six del Pezzo surface.
    Dp6 {
        #[arg(long = "N")]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Scripted C5 automorphism of P3 through a quadric threefold.
    Lsh {
        /// Give C and J2(C), and the two rational divisors, equal labels.
        #[arg(long)]
        identify: bool,
    },
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("expected p,q, found {s:?}"))?;
    let p = p.trim().parse().map_err(|_| format!("bad integer {p:?}"))?;
    let q = q.trim().parse().map_err(|_| format!("bad integer {q:?}"))?;
    Ok((p, q))
}

fn parse_kind(s: &str) -> Result<VerifyKind, String> {
    s.parse().map_err(|e: burnside_core::Error| e.to_string())
}

/// A failed command: message for standard error and exit code.
struct Failure {
    code: u8,
    msg: String,
}

fn input_err(msg: impl ToString) -> Failure {
    Failure {
        code: EXIT_INPUT,
        msg: msg.to_string(),
    }
}

type CmdResult = Result<String, Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load_fan(path: &Path) -> Result<Fan2D, Failure> {
    parse_fan(&read_file(path)?).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load_word(path: &Path) -> Result<MoveWord, Failure> {
    parse_word(&read_file(path)?).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn cmd_quotient(n: u64, bound: u64, format: Format) -> CmdResult {
    if n < 2 || n > bound {
        return Err(input_err(format!("N = {n} is outside 2..={bound}")));
    }
    let p = build_presentation::<Int>(n).map_err(input_err)?;
    let report = p.report();
    if format == Format::Json {
        return Ok(pretty(&report));
    }
    let mut out = String::new();
    writeln!(out, "group: C{n}").unwrap();
    writeln!(out, "generators ({}):", report.generators.len()).unwrap();
    for g in &report.generators {
        writeln!(out, "  {g}").unwrap();
    }
    writeln!(out, "relations: {}", report.relations.len()).unwrap();
    let factors: Vec<String> = report.invariant_factors.iter().map(ToString::to_string).collect();
    writeln!(out, "invariant factors: [{}]", factors.join(", ")).unwrap();
    writeln!(out, "free rank: {}", report.free_rank).unwrap();
    write!(out, "sector group: {}", report.group).unwrap();
    Ok(out)
}

fn cmd_class(fan: &Path, n: u64, (p, q): (i64, i64), witness: &str, format: Format) -> CmdResult {
    let f = load_fan(fan)?;
    let e = Embedding::new(n, p, q).map_err(input_err)?;
    let class = class_of_with_witness(&f, &e, witness).map_err(input_err)?;
    if format == Format::Json {
        return Ok(pretty(&json!({
            "fan": f,
            "embedding": e,
            "class": class,
            "display": class.to_string(),
        })));
    }
    let mut out = format!("fan: {f}\nembedding: {e}\nsymbols:\n");
    for (s, c) in class.iter() {
        writeln!(out, "  {c:+} {s}").unwrap();
    }
    write!(out, "class: {class}").unwrap();
    Ok(out)
}

fn entry_line(e: &LedgerEntry) -> String {
    let side = match e.side {
        burnside_core::ledger::Side::Forward => "contracted by φ",
        burnside_core::ledger::Side::Backward => "contracted by φ⁻¹",
    };
    match (&e.equivariant, &e.orbifold) {
        (Some(eq), Some(orb)) => format!("{} ({side}): {}, {eq}, {orb}", e.divisor, e.birational),
        _ => format!("{} ({side}): {}, excluded: nontrivial generic stabilizer", e.divisor, e.birational),
    }
}

fn ledger_text(l: &Ledger, out: &mut String) {
    writeln!(out, "ledger:").unwrap();
    if l.entries.is_empty() {
        writeln!(out, "  (empty)").unwrap();
    }
    for e in &l.entries {
        writeln!(out, "  {}", entry_line(e)).unwrap();
    }
    writeln!(out, "c = {}", l.classical()).unwrap();
    writeln!(out, "C_G = {}", l.equivariant()).unwrap();
    write!(out, "C_orb = {}", l.orbifold()).unwrap();
}

fn cmd_cg(fan: &Path, word: &Path, n: u64, (p, q): (i64, i64), format: Format) -> CmdResult {
    let f = load_fan(fan)?;
    let w = load_word(word)?;
    let e = Embedding::new(n, p, q).map_err(input_err)?;
    let m = ToricMap::new(f, w, e).map_err(input_err)?;
    let target = m.target();
    let l = ledger(&MapSpec::Toric(m.clone())).map_err(input_err)?;
    if format == Format::Json {
        return Ok(pretty(&json!({
            "source": m.source,
            "target": target,
            "word": m.word,
            "embedding": e,
            "ledger": l.entries,
            "c": l.classical(),
            "c_g": l.equivariant(),
            "c_orb": l.orbifold(),
        })));
    }
    let mut out = format!("source: {}\ntarget: {target}\nword: {}\nembedding: {e}\n", m.source, m.word);
    ledger_text(&l, &mut out);
    Ok(out)
}

fn cmd_verify(kind: VerifyKind, trials: usize, seed: u64, format: Format) -> CmdResult {
    if trials == 0 {
        return Err(input_err("--trials must be at least 1"));
    }
    let r = run(kind, trials, seed);
    let out = match format {
        Format::Json => pretty(&r),
        Format::Text => r.to_string(),
    };
    if r.all_passed() {
        Ok(out)
    } else {
        Err(Failure {
            code: EXIT_VIOLATION,
            msg: out,
        })
    }
}

fn weights_text(title: &str, table: &[ConeWeights], out: &mut String) {
    writeln!(out, "{title}:").unwrap();
    for w in table {
        writeln!(out, "  cone {} {}: ({}, {})", w.rays.0, w.rays.1, w.weights.0, w.weights.1).unwrap();
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_dp6(n: u64, a: i64, b: i64, format: Format) -> CmdResult {
    let r = scenario_dp6(n, a, b).map_err(input_err)?;
    if format == Format::Json {
        return Ok(pretty(&r));
    }
    let mut out = format!("embedding: {}\nword: {}\n", r.embedding, r.word);
    writeln!(out, "fan before: {}\nfan after: {}", r.fan_before, r.fan_after).unwrap();
    weights_text("weights before", &r.weights_before, &mut out);
    weights_text("weights after", &r.weights_after, &mut out);
    writeln!(out, "weight patterns: {}", pass(r.weights_match_pattern)).unwrap();
    writeln!(out, "class before: {}\nclass after: {}", r.class_before, r.class_after).unwrap();
    writeln!(out, "relabel check (g -> g^-1 maps after to before): {}", pass(r.relabel_check)).unwrap();
    writeln!(out, "c = {}\nC_G = {}\nC_orb = {}", r.c, r.c_g, r.c_orb).unwrap();
    Ok(out.trim_end().to_string())
}

fn cmd_lsh(identify: bool, format: Format) -> CmdResult {
    let labels = if identify {
        LshLabels::identified()
    } else {
        LshLabels::default()
    };
    let r = scenario_lsh(&labels);
    if format == Format::Json {
        return Ok(pretty(&r));
    }
    let mut out = format!("group: C{}\nledger:\n", r.group_order);
    for e in &r.ledger {
        writeln!(out, "  {}", entry_line(e)).unwrap();
    }
    writeln!(out, "c = {}\nC_G = {}\nC_orb = {}", r.c, r.c_g, r.c_orb).unwrap();
    write!(out, "C_G nonzero: {}", r.c_g_nonzero).unwrap();
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = cli.format;
    let result = match cli.command {
        Command::Quotient { n, bound } => cmd_quotient(n, bound, f),
        Command::Class { fan, n, embed, witness } => cmd_class(&fan, n, embed, &witness, f),
        Command::Cg { fan, word, n, embed } => cmd_cg(&fan, &word, n, embed, f),
        Command::Verify { kind, trials, seed } => cmd_verify(kind, trials, seed, f),
        Command::Scenario { which } => match which {
            Scenario::Dp6 { n, a, b } => cmd_dp6(n, a, b, f),
            Scenario::Lsh { identify } => cmd_lsh(identify, f),
        },
    };
    match result {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure { code, msg }) => {
            if code == EXIT_VIOLATION {
                println!("{msg}");
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
