//! Congruences between GSp₄ eigensystems and symmetric cube lifts, valuewise modulo p^n over a
//! finite set of primes.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::eigensys::{classify_sym3, scalar_cbrt, sym3_lift, sym3_lift_spherical, Eigensystem, QuarticRoot, Sym3Classification};
use crate::error::{Error, Result};
use crate::hecke::Group;
use crate::json::rational_to_json;
use crate::scalar::{PAdicContext, Rational, Scalar, Valuation};

/// GL₂ data recovered from a point of the symmetric cube locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sym3Match {
    /// ℓ ↦ (a_ℓ, c_ℓ), the first rational solution at each prime.
    pub pairs: BTreeMap<u64, (Rational, Rational)>,
    /// Some prime had no rational solution or more than one.
    pub cube_root_ambiguous: bool,
    pub branch: Option<u8>,
    /// GL₂ values (t₀, t₁) at p, when the branch is determined.
    pub iwahori: Option<[Scalar; 2]>,
}

/// Inverts the symmetric cube on a single GSp₄ system.
pub fn match_lift(x: &Eigensystem, primes: &[u64], allow_cubic_ext: bool) -> Result<Sym3Match> {
    let (roots, mut ambiguous, branches) = match classify_sym3(x, primes, allow_cubic_ext)? {
        Sym3Classification::NotSym3 { witness } => return Err(Error::NotSym3 { prime: witness }),
        Sym3Classification::Candidate { roots, cube_root_ambiguous, branches } => (roots, cube_root_ambiguous, branches),
    };
    let mut pairs = BTreeMap::new();
    for (ell, rs) in &roots {
        let rational: Vec<(Rational, Rational)> = rs.iter().filter_map(|r| r.gl2_pair(*ell)).collect();
        ambiguous |= rational.len() != 1 || rs.iter().any(|r| matches!(r, QuarticRoot::CubicExt { .. }));
        if let Some(first) = rational.into_iter().next() {
            pairs.insert(*ell, first);
        }
    }
    let (branch, iwahori) = match branches.as_deref() {
        None | Some([]) => (None, None),
        Some([b]) => {
            let u = x.iwahori()?;
            let t0 = scalar_cbrt(&u[0]).ok_or_else(|| Error::InvalidInput("U0 has no rational cube root".into()))?;
            let alpha = match b {
                1 => u[1].checked_div(&t0)?.checked_div(&u[2])?,
                2 => u[2].checked_mul(&t0.pow(2)?)?.checked_div(&u[1])?,
                _ => u[2].checked_div(&t0)?,
            };
            (Some(*b), Some([t0, alpha]))
        }
        Some(many) => return Err(Error::AmbiguousBranch(many.to_vec())),
    };
    Ok(Sym3Match { pairs, cube_root_ambiguous: ambiguous, branch, iwahori })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOptions {
    pub primes: Vec<u64>,
    pub max_depth: u32,
    /// Worker threads for the entry loop; `None` uses the global pool.
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    ExactSym3 { matched: String, branches: Vec<u8> },
    Congruent { matched: String, branch: Option<u8>, depth: u32, witness_primes: Vec<u64> },
    NotCongruent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub id: String,
    pub verdict: Verdict,
}

impl EntryReport {
    pub fn depth(&self, max_depth: u32) -> u32 {
        match &self.verdict {
            Verdict::ExactSym3 { .. } => max_depth,
            Verdict::Congruent { depth, .. } => *depth,
            Verdict::NotCongruent => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub p: u64,
    pub primes: Vec<u64>,
    pub max_depth: u32,
    pub entries: Vec<EntryReport>,
}

fn entry_id(e: &Eigensystem, prefix: &str, i: usize) -> String {
    e.id.clone().unwrap_or_else(|| format!("{prefix}[{i}]"))
}

/// Values compared at each tested prime, keyed by prime; p carries the torus values.
fn tested_values(e: &Eigensystem, primes: &[u64], with_p: bool) -> Result<Vec<(u64, Vec<Scalar>)>> {
    let mut out = Vec::new();
    for &ell in primes {
        out.push((ell, e.spherical_at(ell)?.to_vec()));
    }
    if with_p {
        out.push((e.p, e.iwahori()?.to_vec()));
    }
    Ok(out)
}

/// Branch, values including p, values without p.
type LiftValues = (Option<u8>, Vec<(u64, Vec<Scalar>)>, Vec<(u64, Vec<Scalar>)>);

fn check_integral(vals: &[(u64, Vec<Scalar>)], id: &str, ctx: &PAdicContext) -> Result<()> {
    for (_, vs) in vals {
        for v in vs {
            if v.valuation(ctx)? < Valuation::int(0) {
                return Err(Error::NonIntegralValue { entry: id.to_string() });
            }
        }
    }
    Ok(())
}

struct Comparison {
    exact: bool,
    depth: u32,
    witnesses: Vec<u64>,
}

fn compare(x: &[(u64, Vec<Scalar>)], y: &[(u64, Vec<Scalar>)], max_depth: u32, ctx: &PAdicContext) -> Result<Comparison> {
    let mut exact = true;
    let mut per_prime = Vec::new();
    for ((ell, xs), (_, ys)) in x.iter().zip(y) {
        let mut d = max_depth;
        for (a, b) in xs.iter().zip(ys) {
            let v = match a.checked_sub(b) {
                Ok(diff) if diff.is_zero() => continue,
                Ok(diff) => diff.valuation(ctx)?,
                Err(Error::FieldMismatch) => Valuation::int(0),
                Err(e) => return Err(e),
            };
            exact = false;
            let floor = v.finite().map_or(max_depth as i64, |r| r.floor().to_integer().to_i64().unwrap_or(i64::MAX));
            d = d.min(floor.clamp(0, max_depth as i64) as u32);
        }
        per_prime.push((*ell, d));
    }
    let depth = per_prime.iter().map(|x| x.1).min().unwrap_or(max_depth);
    let witnesses = if exact { Vec::new() } else { per_prime.iter().filter(|x| x.1 == depth).map(|x| x.0).collect() };
    Ok(Comparison { exact, depth, witnesses })
}

/// One lift per branch when the GL₂ entry carries values at p, otherwise the spherical lift alone.
fn candidate_lifts(f: &Eigensystem) -> Result<Vec<(Option<u8>, Eigensystem)>> {
    if f.iwahori_p.is_some() {
        (1..=4u8).map(|b| Ok((Some(b), sym3_lift(f, b)?))).collect()
    } else {
        Ok(vec![(None, sym3_lift_spherical(f)?)])
    }
}

fn scan_entry(
    x: &Eigensystem,
    id: &str,
    lifts: &[(String, Vec<LiftValues>)],
    opts: &ScanOptions,
    ctx: &PAdicContext,
) -> Result<Verdict> {
    let with_p = x.iwahori_p.is_some();
    let xv = tested_values(x, &opts.primes, with_p)?;
    check_integral(&xv, id, ctx)?;
    // (exact, depth), first maximum wins
    let mut best: Option<(bool, u32, usize, Option<u8>, Vec<u64>)> = None;
    let mut exact_branches: BTreeMap<usize, Vec<u8>> = BTreeMap::new();
    for (j, (_, cands)) in lifts.iter().enumerate() {
        for (branch, with, without) in cands {
            let branch = if with_p { *branch } else { None };
            let yv = if branch.is_some() { with } else { without };
            let xs: Vec<(u64, Vec<Scalar>)> = if with_p && branch.is_none() { xv[..xv.len() - 1].to_vec() } else { xv.clone() };
            let c = compare(&xs, yv, opts.max_depth, ctx)?;
            if c.exact {
                exact_branches.entry(j).or_default().extend(branch);
            }
            let better = match &best {
                None => true,
                Some((e, d, ..)) => (c.exact, c.depth) > (*e, *d),
            };
            if better {
                best = Some((c.exact, c.depth, j, branch, c.witnesses));
            }
        }
    }
    Ok(match best {
        Some((true, _, j, _, _)) => Verdict::ExactSym3 { matched: lifts[j].0.clone(), branches: exact_branches.remove(&j).unwrap_or_default() },
        Some((false, d, j, branch, witness_primes)) if d > 0 => {
            Verdict::Congruent { matched: lifts[j].0.clone(), branch, depth: d, witness_primes }
        }
        _ => Verdict::NotCongruent,
    })
}

/// Best valuewise congruence of every GSp₄ entry with a symmetric cube lift of some GL₂ entry.
pub fn scan_congruences(gsp4: &[Eigensystem], gl2: &[Eigensystem], opts: &ScanOptions, ctx: &PAdicContext) -> Result<CongruenceReport> {
    for e in gsp4.iter().chain(gl2) {
        if e.p != ctx.p() {
            return Err(Error::InvalidInput(format!("entry at p = {} in a scan at p = {}", e.p, ctx.p())));
        }
    }
    if let Some(e) = gsp4.iter().find(|e| e.group != Group::GSp4) {
        return Err(Error::GroupMismatch { expected: "GSp4".into(), found: e.group.to_string() });
    }
    let mut lifts = Vec::with_capacity(gl2.len());
    for (j, f) in gl2.iter().enumerate() {
        let id = entry_id(f, "gl2", j);
        let mut cands = Vec::new();
        for (branch, l) in candidate_lifts(f)? {
            let without = tested_values(&l, &opts.primes, false)?;
            let with = if branch.is_some() { tested_values(&l, &opts.primes, true)? } else { without.clone() };
            check_integral(&with, &id, ctx)?;
            cands.push((branch, with, without));
        }
        lifts.push((id, cands));
    }
    let run = || -> Result<Vec<EntryReport>> {
        gsp4.par_iter()
            .enumerate()
            .map(|(i, x)| {
                let id = entry_id(x, "gsp4", i);
                let verdict = scan_entry(x, &id, &lifts, opts, ctx)?;
                Ok(EntryReport { id, verdict })
            })
            .collect()
    };
    let entries = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    Ok(CongruenceReport { p: ctx.p(), primes: opts.primes.clone(), max_depth: opts.max_depth, entries })
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::ExactSym3 { .. } => "exact-sym3",
            Verdict::Congruent { .. } => "congruent-to-sym3",
            Verdict::NotCongruent => "not-congruent",
        }
    }
}

impl CongruenceReport {
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| match &e.verdict {
                Verdict::ExactSym3 { matched, branches } => {
                    json!({"id": e.id, "verdict": e.verdict.label(), "match": matched, "branches": branches, "depth": self.max_depth})
                }
                Verdict::Congruent { matched, branch, depth, witness_primes } => json!({
                    "id": e.id, "verdict": e.verdict.label(), "match": matched, "branch": branch,
                    "depth": depth, "witness_primes": witness_primes,
                }),
                Verdict::NotCongruent => json!({"id": e.id, "verdict": e.verdict.label(), "depth": 0}),
            })
            .collect();
        json!({"p": self.p, "primes": self.primes, "max_depth": self.max_depth, "entries": entries})
    }

    pub fn to_table(&self) -> String {
        let mut rows = vec![["id", "verdict", "match", "branch", "depth", "witnesses"].map(String::from).to_vec()];
        for e in &self.entries {
            let (m, b, w) = match &e.verdict {
                Verdict::ExactSym3 { matched, branches } => (matched.clone(), join(branches), String::new()),
                Verdict::Congruent { matched, branch, witness_primes, .. } => {
                    (matched.clone(), branch.map_or("-".into(), |b| b.to_string()), join(witness_primes))
                }
                Verdict::NotCongruent => ("-".into(), "-".into(), String::new()),
            };
            rows.push(vec![e.id.clone(), e.verdict.label().into(), m, b, e.depth(self.max_depth).to_string(), w]);
        }
        render_table(&rows)
    }
}

impl Sym3Match {
    pub fn to_json(&self) -> Value {
        let pairs: serde_json::Map<String, Value> = self
            .pairs
            .iter()
            .map(|(l, (a, c))| (l.to_string(), json!([rational_to_json(a), rational_to_json(c)])))
            .collect();
        json!({
            "pairs": pairs,
            "cube_root_ambiguous": self.cube_root_ambiguous,
            "branch": self.branch,
            "iwahori_p": self.iwahori.as_ref().map(|t| t.iter().map(crate::json::scalar_to_json).collect::<Vec<_>>()),
        })
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Left-aligned columns separated by two spaces.
pub fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
