//! `sgbound`: command-line front end for `subgroup-bounds`.
//!
//! [`run`] parses arguments, computes a [`Report`] and renders it as text or
//! JSON. Text is rendered from the report alone, so parsing the JSON back and
//! calling [`Report::render_text`] reproduces the text output exactly.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use subgroup_bounds::bounds::{
    achievable_exponent, assemble, bound_at, bounds_over_primes, minkowski_bound, minkowski_exponent,
    schur_exponent, BoundExponent, BoundKind, BoundValue,
};
use subgroup_bounds::cyclo::{invariants, CycloInvariants, FieldDescriptor};
use subgroup_bounds::exact_arith::primes::primes_up_to;
use subgroup_bounds::exact_arith::{euler_phi, is_prime, BigRational, FactoredInteger};
use subgroup_bounds::mass::{mass, mass_denominator, mass_denominator_exponent};
use subgroup_bounds::oracle::{enumerate_gl2_count, enumerate_gl2_sylow, schur_witness, wreath_witness};
use subgroup_bounds::verify::{self, Check};
use subgroup_bounds::{Error, RootSystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sgbound", version, about = "Bounds on finite subgroups of reductive groups")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug)]
enum Ell {
    All,
    One(u64),
}

impl FromStr for Ell {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(Ell::All);
        }
        s.parse().map(Ell::One).map_err(|_| format!("expected a prime or `all`, got {s:?}"))
    }
}

fn parse_root(s: &str) -> Result<RootSystem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_field(s: &str) -> Result<FieldDescriptor, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    S,
    M,
    Torus,
    Achievable,
    Corank,
}

impl From<KindArg> for BoundKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::S => BoundKind::S,
            KindArg::M => BoundKind::M,
            KindArg::Torus => BoundKind::Torus,
            KindArg::Achievable => BoundKind::Achievable,
            KindArg::Corank => BoundKind::Corank,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WitnessKind {
    Wreath,
    Schur,
    Gl2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableName {
    Minkowski8,
    E8,
    F4mass,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minkowski's bound for finite subgroups of GL_n(Q).
    Minkowski {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "all")]
        ell: Ell,
    },
    /// Schur's bound for GL_n over a field.
    Schur {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        ell: u64,
        #[arg(long, value_parser = parse_field)]
        field: FieldDescriptor,
    },
    /// Cyclotomic invariants (t, m, type) of a field at ℓ.
    Invariants {
        #[arg(long, value_parser = parse_field)]
        field: FieldDescriptor,
        #[arg(long)]
        ell: u64,
    },
    /// S-, M-, torus, achievable or corank bound.
    Bound {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_parser = parse_root)]
        root: RootSystem,
        #[arg(long, value_parser = parse_field)]
        field: FieldDescriptor,
        #[arg(long)]
        ell: Ell,
    },
    /// Mass Π ζ(1 - d_i)/2 and its denominator.
    Mass {
        #[arg(long, value_parser = parse_root)]
        root: RootSystem,
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Witness groups: wreath products, Schur's groups, GL_2 enumeration.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        /// n for wreath, N for schur.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        ell: u64,
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldDescriptor>,
        /// The prime p for gl2.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Run the property batteries.
    Verify {
        #[arg(long)]
        suite: Option<String>,
    },
    /// Reproduce a reference table.
    Table {
        #[arg(long, value_enum)]
        name: TableName,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub ell: u64,
    pub bound: BoundValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "snake_case")]
pub enum Report {
    Exponent { label: String, value: u64 },
    Factored { label: String, value: FactoredInteger },
    Invariants { invariants: CycloInvariants },
    Bound { kind: BoundKind, ell: u64, bound: BoundValue, note: Option<String> },
    Achievable { ell: u64, value: u64, optimal: bool },
    BoundTable { kind: BoundKind, entries: Vec<PrimeEntry>, product: FactoredInteger },
    Mass { root: RootSystem, mass: String, denominator: FactoredInteger, at_ell: Option<MassAtEll> },
    Wreath { order: FactoredInteger, ell: u64, v: u64 },
    SchurWitness { n: u64, v_a: u64, v_a1: u64 },
    Gl2 { p: u64, ell: u64, count: String, v: u64 },
    Verify { checks: Vec<Check> },
    Table { rows: Vec<Vec<String>>, footer: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassAtEll {
    pub ell: u64,
    pub mass_exponent: u64,
    pub m_bound_exponent: u64,
}

fn factored_text(f: &FactoredInteger) -> String {
    let value = f.value().to_string();
    let shown = f.to_string();
    if value == shown {
        value
    } else {
        format!("{value} = {shown}")
    }
}

/// Left-aligned columns separated by two spaces.
fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < row.len() {
                line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

impl Report {
    pub fn render_text(&self) -> String {
        match self {
            Report::Exponent { label, value } => format!("{label} = {value}\n"),
            Report::Factored { label, value } if label.is_empty() => format!("{}\n", factored_text(value)),
            Report::Factored { label, value } => format!("{label} = {}\n", factored_text(value)),
            Report::Invariants { invariants } => format!("{invariants}\n"),
            Report::Bound { bound, note, .. } => match note {
                Some(n) => format!("{} ({n})\n", bound.value),
                None => format!("{} ({:?})\n", bound.value, bound.source),
            },
            Report::Achievable { value, optimal, .. } => {
                let tag = if *optimal { "optimal" } else { "not optimal" };
                format!("{value} (achievable, {tag})\n")
            }
            Report::BoundTable { entries, product, .. } => {
                let mut rows = vec![vec!["ℓ".to_string(), "exponent".to_string()]];
                rows.extend(entries.iter().map(|e| vec![e.ell.to_string(), e.bound.value.to_string()]));
                format!("{}\n{}", factored_text(product), align(&rows))
            }
            Report::Mass { root, mass, denominator, at_ell } => {
                let mut s = format!("mass({root}) = {mass}\ndenominator = {}\n", factored_text(denominator));
                if let Some(a) = at_ell {
                    let _ = writeln!(
                        s,
                        "v_{}(denominator) = {}, M-bound over Q = {}",
                        a.ell, a.mass_exponent, a.m_bound_exponent
                    );
                }
                s
            }
            Report::Wreath { order, ell, v } => format!("order = {}\nv_{ell} = {v}\n", factored_text(order)),
            Report::SchurWitness { n, v_a, v_a1 } => format!("N = {n}\nv(A_N) = {v_a}\nv(A_N^1) = {v_a1}\n"),
            Report::Gl2 { p, ell, count, v } => format!("|GL_2(F_{p})| = {count} (enumerated)\nv_{ell} = {v}\n"),
            Report::Verify { checks } => {
                let rows: Vec<Vec<String>> = checks
                    .iter()
                    .map(|c| {
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        vec![status.into(), format!("{}/{}", c.suite, c.name), c.detail.clone()]
                    })
                    .collect();
                let failed = checks.iter().filter(|c| !c.passed).count();
                format!("{}{} passed, {failed} failed\n", align(&rows), checks.len() - failed)
            }
            Report::Table { rows, footer } => {
                let mut s = align(rows);
                for line in footer {
                    s.push_str(line);
                    s.push('\n');
                }
                s
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Report::Verify { checks } if checks.iter().any(|c| !c.passed) => EXIT_VERIFY,
            _ => EXIT_OK,
        }
    }
}

fn infinite_note(kind: BoundKind, root: &RootSystem, inv: &CycloInvariants) -> String {
    let t = inv.t();
    match kind {
        BoundKind::M => format!("M: m = ∞ and a({t}) = {} ≥ 1", root.a_t(t)),
        _ => {
            let source = if kind == BoundKind::S { "S" } else { "Torus" };
            format!("{source}: m = ∞ and [{}/φ({t})] = {} ≥ 1", root.rank(), root.rank() as u64 / euler_phi(t))
        }
    }
}

fn single_bound(kind: BoundKind, root: &RootSystem, inv: &CycloInvariants) -> subgroup_bounds::Result<Report> {
    let ell = inv.ell();
    if kind == BoundKind::Achievable {
        let a = achievable_exponent(root, inv)?;
        return Ok(Report::Achievable { ell, value: a.value, optimal: a.optimal });
    }
    let bound = bound_at(kind, root, inv)?;
    let note = (bound.value == BoundExponent::Infinite).then(|| infinite_note(kind, root, inv));
    Ok(Report::Bound { kind, ell, bound, note })
}

fn minkowski8_table() -> Report {
    let mut rows = vec![vec!["n".to_string(), "M(n)".to_string(), "factored".to_string()]];
    for n in 1..=8 {
        let m = minkowski_bound(n);
        rows.push(vec![n.to_string(), m.value().to_string(), m.to_string()]);
    }
    Report::Table { rows, footer: vec![] }
}

fn e8_table() -> subgroup_bounds::Result<Report> {
    let root = RootSystem::E8;
    let mut rows = vec![vec!["ℓ".to_string(), "M".to_string(), "S".to_string()]];
    let (mut m_entries, mut s_entries) = (Vec::new(), Vec::new());
    for ell in primes_up_to(31) {
        let inv = invariants(&FieldDescriptor::Rationals, ell)?;
        let m = bound_at(BoundKind::M, &root, &inv)?;
        let s = bound_at(BoundKind::S, &root, &inv)?;
        if m.value == BoundExponent::Finite(0) && s.value == BoundExponent::Finite(0) {
            continue;
        }
        rows.push(vec![ell.to_string(), m.value.to_string(), s.value.to_string()]);
        m_entries.push((ell, m));
        s_entries.push((ell, s));
    }
    let nonzero = |v: Vec<(u64, BoundValue)>| {
        v.into_iter().filter(|(_, b)| b.value != BoundExponent::Finite(0)).collect::<Vec<_>>()
    };
    let m_total = assemble(&nonzero(m_entries))?;
    let s_total = assemble(&nonzero(s_entries))?;
    let footer = vec![
        format!("M   = {}", factored_text(&m_total)),
        format!("M_S = {}", factored_text(&s_total)),
        match s_total.checked_div(&m_total) {
            Some(q) => format!("M_S / M = {q}"),
            None => "M_S / M is not an integer".to_string(),
        },
        "note: the S-exponent at ℓ = 11 is 2 (known discrepancy: M_S is sometimes quoted without 11^2)".to_string(),
    ];
    Ok(Report::Table { rows, footer })
}

fn f4_mass_table() -> subgroup_bounds::Result<Report> {
    let m = mass(&RootSystem::F4)?;
    let den = mass_denominator(&RootSystem::F4)?;
    let first = FactoredInteger::from_pairs([(2, 15), (3, 6), (5, 2), (7, 1)])?;
    let second = FactoredInteger::from_pairs([(2, 12), (3, 5), (7, 2), (13, 1)])?;
    let rows = vec![
        vec!["mass(F4)".to_string(), format!("{}/({den})", m.numer())],
        vec!["class 1".to_string(), format!("1/({first})")],
        vec!["class 2".to_string(), format!("1/({second})")],
    ];
    let sum = BigRational::new(1.into(), first.value().into())
        + BigRational::new(1.into(), second.value().into());
    let verdict = if sum == m { "holds" } else { "FAILS" };
    Ok(Report::Table { rows, footer: vec![format!("class 1 + class 2 = mass(F4): {verdict}")] })
}

fn compute(command: Command) -> subgroup_bounds::Result<Report> {
    Ok(match command {
        Command::Minkowski { n, ell } => {
            if n == 0 {
                return Err(Error::Domain("n must be at least 1".into()));
            }
            match ell {
                Ell::All => Report::Factored { label: String::new(), value: minkowski_bound(n) },
                Ell::One(ell) => {
                    if !is_prime(ell) {
                        return Err(Error::Domain(format!("{ell} is not prime")));
                    }
                    Report::Exponent { label: format!("M({n}, {ell})"), value: minkowski_exponent(n, ell) }
                }
            }
        }
        Command::Schur { n, ell, field } => {
            let inv = invariants(&field, ell)?;
            Report::Exponent { label: format!("M_k({n}, {ell})"), value: schur_exponent(n, &inv)? }
        }
        Command::Invariants { field, ell } => Report::Invariants { invariants: invariants(&field, ell)? },
        Command::Bound { kind, root, field, ell } => {
            let kind = BoundKind::from(kind);
            match ell {
                Ell::One(ell) => single_bound(kind, &root, &invariants(&field, ell)?)?,
                Ell::All => {
                    let listed = bounds_over_primes(kind, &root, &field)?;
                    let product = assemble(&listed)?;
                    let entries = listed.into_iter().map(|(ell, bound)| PrimeEntry { ell, bound }).collect();
                    Report::BoundTable { kind, entries, product }
                }
            }
        }
        Command::Mass { root, ell } => {
            let m = mass(&root)?;
            let at_ell = match ell {
                Some(ell) => {
                    let (mass_exponent, m_bound_exponent) = mass_denominator_exponent(&root, ell)?;
                    Some(MassAtEll { ell, mass_exponent, m_bound_exponent })
                }
                None => None,
            };
            Report::Mass { root, mass: m.to_string(), denominator: mass_denominator(&root)?, at_ell }
        }
        Command::Witness { kind, n, ell, field, p } => match kind {
            WitnessKind::Wreath => {
                let n = n.ok_or_else(|| Error::Domain("wreath needs --n".into()))?;
                let (order, v) = wreath_witness(n, ell)?;
                Report::Wreath { order, ell, v }
            }
            WitnessKind::Schur => {
                let n = n.ok_or_else(|| Error::Domain("schur needs --n".into()))?;
                let field = field.ok_or_else(|| Error::Domain("schur needs --field".into()))?;
                let (v_a, v_a1) = schur_witness(n, &invariants(&field, ell)?)?;
                Report::SchurWitness { n, v_a, v_a1 }
            }
            WitnessKind::Gl2 => {
                let p = p.ok_or_else(|| Error::Domain("gl2 needs --p".into()))?;
                let v = enumerate_gl2_sylow(p, ell)?;
                Report::Gl2 { p, ell, count: enumerate_gl2_count(p)?.to_string(), v }
            }
        },
        Command::Verify { suite } => {
            let checks = match suite {
                Some(s) => verify::run_suite(&s)?,
                None => verify::run_all(),
            };
            Report::Verify { checks }
        }
        Command::Table { name } => match name {
            TableName::Minkowski8 => minkowski8_table(),
            TableName::E8 => e8_table()?,
            TableName::F4mass => f4_mass_table()?,
        },
    })
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match compute(cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
            } else {
                report.render_text()
            };
            Outcome { code: report.exit_code(), stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = match e {
                Error::Parse(_) => EXIT_USAGE,
                _ => EXIT_DOMAIN,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}
