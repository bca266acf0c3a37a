use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use symcube::congruence::{render_table, scan_congruences, ScanOptions};
use symcube::eigensys::{
    classicality_guaranteed, classify_sym3, slope, stabilizations, sym3_lift, sym3_lift_spherical, twist,
    DirichletCharacter, Eigensystem, QuarticRoot, Sym3Classification,
};
use symcube::json::{character_from_json, eigensystem_to_json, eigensystems_from_json, rational_to_json};
use symcube::levels::sym3_level;
use symcube::scalar::{format_rational, PAdicContext};
use symcube::suite::{oracle_suite, Fault};
use symcube::weights::{classical_point, hodge_tate_weights, iota, Weight};

use crate::{Cli, Command, Format};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Compute(symcube::Error),
    /// The oracle suite ran but an identity failed; the report is already written.
    SuiteFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Compute(e) if e.is_validation() => 1,
            CliError::Compute(_) | CliError::SuiteFailed(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => f.write_str(m),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::SuiteFailed(name) => write!(f, "oracle identity `{name}` failed"),
        }
    }
}

impl From<symcube::Error> for CliError {
    fn from(e: symcube::Error) -> Self {
        CliError::Compute(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Parsed input file plus whether it held a single object.
struct Input {
    systems: Vec<Eigensystem>,
    single: bool,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: invalid JSON: {e}", path.display())))
}

fn read_systems(path: &Path) -> Result<Input> {
    let v = read_json(path)?;
    let single = !v.is_array();
    let systems = eigensystems_from_json(&v).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    Ok(Input { systems, single })
}

fn context(p: u64, cli: &Cli) -> Result<PAdicContext> {
    Ok(PAdicContext::any_prime(p)?.with_cap(cli.precision))
}

fn label(e: &Eigensystem, i: usize) -> String {
    e.id.clone().unwrap_or_else(|| format!("[{i}]"))
}

fn systems_json(systems: &[Eigensystem], single: bool) -> Value {
    if single && systems.len() == 1 {
        eigensystem_to_json(&systems[0])
    } else {
        Value::Array(systems.iter().map(eigensystem_to_json).collect())
    }
}

fn systems_table(systems: &[Eigensystem]) -> String {
    let mut rows = vec![["id", "group", "p", "level", "weight", "values at p"].map(String::from).to_vec()];
    for (i, e) in systems.iter().enumerate() {
        let at_p = e
            .iwahori_p
            .as_ref()
            .map_or("-".to_string(), |v| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "));
        rows.push(vec![label(e, i), e.group.to_string(), e.p.to_string(), e.tame_level.to_string(), e.weight.to_string(), at_p]);
    }
    render_table(&rows)
}

fn emit(cli: &Cli, json: Value, table: impl FnOnce() -> String) -> Result<()> {
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Table => table(),
    };
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_character(arg: &str) -> Result<DirichletCharacter> {
    if arg == "trivial" {
        return Ok(DirichletCharacter::trivial());
    }
    if let Some(q) = arg.strip_prefix("legendre:") {
        let q: u64 = q.parse().map_err(|_| CliError::Validation(format!("bad modulus in --character {arg}")))?;
        return DirichletCharacter::legendre(q).map_err(|e| CliError::Validation(e.to_string()));
    }
    if let Some(path) = arg.strip_prefix("file:") {
        let v = read_json(Path::new(path))?;
        return character_from_json(&v, "").map_err(|e| CliError::Validation(format!("{path}: {e}")));
    }
    Err(CliError::Validation(format!("unknown character `{arg}` (expected trivial, legendre:<q> or file:<path>)")))
}

fn roots_json(roots: &[QuarticRoot]) -> Value {
    Value::Array(
        roots
            .iter()
            .map(|r| match r {
                QuarticRoot::Rational { t, d } => json!({"T": rational_to_json(t), "D": rational_to_json(d)}),
                QuarticRoot::CubicExt { a, p, c } => {
                    json!({"T^3": rational_to_json(a), "TD": rational_to_json(p), "D^3": rational_to_json(c)})
                }
            })
            .collect(),
    )
}

fn classification_summary(c: &Sym3Classification) -> String {
    match c {
        Sym3Classification::NotSym3 { witness } => format!("not-sym3, witness {witness}"),
        Sym3Classification::Candidate { branches: Some(b), .. } => {
            let b: Vec<String> = b.iter().map(u8::to_string).collect();
            format!("sym3-candidate, branch {{{}}}", b.join(","))
        }
        Sym3Classification::Candidate { branches: None, .. } => "sym3-candidate".into(),
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Lift { input, branch } => {
            let inp = read_systems(input)?;
            let out = inp
                .systems
                .iter()
                .map(|f| {
                    let mut x = match branch {
                        Some(b) => sym3_lift(f, *b)?,
                        None => sym3_lift_spherical(f)?,
                    };
                    x.id = f.id.as_ref().map(|id| format!("sym3({id})"));
                    Ok(x)
                })
                .collect::<symcube::Result<Vec<_>>>()?;
            emit(cli, systems_json(&out, inp.single), || systems_table(&out))
        }
        Command::Stabilize { input } => {
            let inp = read_systems(input)?;
            let mut out = Vec::new();
            for f in &inp.systems {
                out.extend(stabilizations(f, &context(f.p, cli)?)?);
            }
            emit(cli, systems_json(&out, false), || systems_table(&out))
        }
        Command::Slope { input } => {
            let inp = read_systems(input)?;
            let mut items = Vec::new();
            let mut rows = vec![["id", "group", "slope", "classical"].map(String::from).to_vec()];
            for (i, f) in inp.systems.iter().enumerate() {
                let ctx = context(f.p, cli)?;
                let s = slope(f, &ctx)?;
                let classical = match f.group {
                    symcube::hecke::Group::GSp4 => Some(classicality_guaranteed(f, &ctx)?),
                    symcube::hecke::Group::GL2 => None,
                };
                rows.push(vec![label(f, i), f.group.to_string(), s.to_string(), classical.map_or("-".into(), |c| c.to_string())]);
                items.push(json!({"id": label(f, i), "group": f.group.to_string(), "slope": s.to_string(), "classicality_guaranteed": classical}));
            }
            emit(cli, Value::Array(items), || render_table(&rows))
        }
        Command::Classify { input, primes, allow_cubic_ext } => {
            let inp = read_systems(input)?;
            let mut items = Vec::new();
            let mut lines = String::new();
            for (i, f) in inp.systems.iter().enumerate() {
                let c = classify_sym3(f, primes, *allow_cubic_ext)?;
                let summary = classification_summary(&c);
                lines.push_str(&format!("{}: {summary}\n", label(f, i)));
                let detail = match &c {
                    Sym3Classification::NotSym3 { witness } => json!({"witness": witness}),
                    Sym3Classification::Candidate { roots, cube_root_ambiguous, branches } => {
                        let roots: serde_json::Map<String, Value> = roots.iter().map(|(l, r)| (l.to_string(), roots_json(r))).collect();
                        json!({"roots": roots, "cube_root_ambiguous": cube_root_ambiguous, "branches": branches})
                    }
                };
                items.push(json!({"id": label(f, i), "report": summary, "candidate": c.is_candidate(), "detail": detail}));
            }
            emit(cli, Value::Array(items), || lines)
        }
        Command::Twist { input, character } => {
            let eta = parse_character(character)?;
            let inp = read_systems(input)?;
            let out = inp.systems.iter().map(|f| twist(f, &eta)).collect::<symcube::Result<Vec<_>>>()?;
            emit(cli, systems_json(&out, inp.single), || systems_table(&out))
        }
        Command::Level { n } => {
            if *n == 0 {
                return Err(CliError::Validation("level must be positive".into()));
            }
            let l = sym3_level(*n);
            emit(cli, json!(l), || format!("{l}\n"))
        }
        Command::Weights { k, p } => {
            let ctx = context(*p, cli)?;
            let w = Weight::GL2(*k);
            let lifted = w.sym3().ok_or_else(|| CliError::Validation(format!("weight {k} has no symmetric cube")))?;
            let (t1, t2) = iota(&classical_point(*k, &ctx), &ctx);
            let json = json!({
                "weight": w.to_string(),
                "hodge_tate": hodge_tate_weights(&w),
                "sym3_weight": lifted.to_string(),
                "sym3_hodge_tate": hodge_tate_weights(&lifted),
                "point": rational_to_json(&classical_point(*k, &ctx)),
                "image": [rational_to_json(&t1), rational_to_json(&t2)],
            });
            let ht = |v: Vec<i64>| v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
            let rows = vec![
                vec!["weight".into(), w.to_string()],
                vec!["hodge-tate".into(), ht(hodge_tate_weights(&w))],
                vec!["sym3 weight".into(), lifted.to_string()],
                vec!["sym3 hodge-tate".into(), ht(hodge_tate_weights(&lifted))],
                vec!["point".into(), format_rational(&classical_point(*k, &ctx))],
                vec!["image".into(), format!("({}, {})", format_rational(&t1), format_rational(&t2))],
            ];
            emit(cli, json, || render_table(&rows))
        }
        Command::Congruences { gsp4, gl2, primes, max_depth, jobs } => {
            let big = read_systems(gsp4)?.systems;
            let small = read_systems(gl2)?.systems;
            let Some(p) = big.iter().chain(&small).map(|e| e.p).next() else {
                return Err(CliError::Validation("no eigensystems to scan".into()));
            };
            if let Some(e) = big.iter().chain(&small).find(|e| e.p != p) {
                return Err(CliError::Validation(format!("mixed primes: {} and {p}", e.p)));
            }
            let opts = ScanOptions { primes: primes.clone(), max_depth: *max_depth, jobs: *jobs };
            let report = scan_congruences(&big, &small, &opts, &context(p, cli)?)?;
            emit(cli, report.to_json(), || report.to_table())
        }
        Command::OracleSuite { seed, trials, inject_fault } => {
            let report = oracle_suite(*seed, *trials as usize, Fault { flip_transfer_sign: *inject_fault });
            emit(cli, report.to_json(), || report.to_string())?;
            match report.first_failure() {
                Some(c) => Err(CliError::SuiteFailed(c.name.to_string())),
                None => Ok(()),
            }
        }
    }
}
