//! Batch replay over moduli, lengths and attacker families, with
//! deterministically merged reports.

use std::thread;

use serde::Serialize;

use super::bbs_chain::{bbs_game_chain_with, end_to_end_bbs};
use super::gm_chain::{end_to_end_gm, gm_game_chain_with};
use super::mutation::{Mutation, ProofChain};
use super::{check_chain, StepReport};
use crate::error::{Error, Result};
use crate::games::family::{gm_family, unpred_family};
use crate::numth::{BlumModulus, Residue, SemiprimeModulus};

/// Selects attackers by name. `default` (or an empty list) keeps every
/// attacker; `random` keeps the generated `random-NN` ones. A GM pair is
/// kept when its full name, chooser name or guesser name is listed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyFilter {
    names: Option<Vec<String>>,
}

impl FamilyFilter {
    pub fn all() -> Self {
        FamilyFilter { names: None }
    }

    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.iter().any(|n| n == "default" || n == "all") {
            return Self::all();
        }
        FamilyFilter { names: Some(names) }
    }

    pub fn keeps(&self, name: &str) -> bool {
        let Some(names) = &self.names else {
            return true;
        };
        let parts: Vec<&str> = std::iter::once(name).chain(name.split('/')).collect();
        names.iter().any(|n| {
            parts
                .iter()
                .any(|p| p == n || (n == "random" && p.starts_with("random-")))
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub runs: Vec<StepReport>,
    pub summary: Summary,
}

impl ReplayReport {
    fn from_runs(mut runs: Vec<StepReport>) -> Self {
        runs.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let passed = runs.iter().filter(|r| r.equal).count();
        let summary = Summary {
            total: runs.len(),
            passed,
            failed: runs.len() - passed,
        };
        ReplayReport { runs, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &StepReport> {
        self.runs.iter().filter(|r| !r.equal)
    }
}

#[derive(Debug, Clone)]
pub struct BbsReplay {
    pub moduli: Vec<BlumModulus>,
    pub lengths: Vec<usize>,
    pub seed: u64,
    pub random: usize,
    pub family: FamilyFilter,
    pub mutation: Option<Mutation>,
}

#[derive(Debug, Clone)]
pub struct GmReplay {
    /// Each modulus with its public `y`.
    pub keys: Vec<(SemiprimeModulus, Residue)>,
    pub seed: u64,
    pub random: usize,
    pub family: FamilyFilter,
    pub mutation: Option<Mutation>,
}

fn check_mutation(mutation: Option<Mutation>, chain: ProofChain) -> Result<()> {
    match mutation {
        Some(k) if k.chain() != chain => Err(Error::Config(format!("mutation {k} belongs to the other proof"))),
        _ => Ok(()),
    }
}

/// Runs `job` on every item, spread over the available cores, and
/// concatenates the results.
fn run_parallel<T, F>(items: &[T], job: F) -> Result<Vec<StepReport>>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<StepReport>> + Sync,
{
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let job = &job;
                s.spawn(move || -> Result<Vec<StepReport>> {
                    let mut out = Vec::new();
                    for item in part {
                        out.extend(job(item)?);
                    }
                    Ok(out)
                })
            })
            .collect();
        let mut runs = Vec::new();
        for h in handles {
            runs.extend(h.join().expect("replay worker panicked")?);
        }
        Ok(runs)
    })
}

/// Full BBS chain plus the end-to-end advantage check for every modulus,
/// length and selected attacker.
pub fn replay_bbs(cfg: &BbsReplay) -> Result<ReplayReport> {
    check_mutation(cfg.mutation, ProofChain::Bbs)?;
    let mut jobs = Vec::new();
    for m in &cfg.moduli {
        for &len in &cfg.lengths {
            for a in unpred_family(m, len, cfg.seed, cfg.random) {
                if cfg.family.keeps(a.name()) {
                    jobs.push((m, len, a));
                }
            }
        }
    }
    if jobs.is_empty() {
        return Err(Error::Config("no attacker, modulus and length selected".into()));
    }
    let runs = run_parallel(&jobs, |(m, len, a)| {
        let chain = bbs_game_chain_with(m, *len, a, cfg.mutation);
        let mut reports = check_chain(&chain, m.n(), Some(*len), a.name());
        reports.push(end_to_end_bbs(m, *len, a).report(m.n(), *len, a.name()));
        Ok(reports)
    })?;
    Ok(ReplayReport::from_runs(runs))
}

/// Four-case GM chain plus the end-to-end check for every key and
/// selected attacker pair.
pub fn replay_gm(cfg: &GmReplay) -> Result<ReplayReport> {
    check_mutation(cfg.mutation, ProofChain::Gm)?;
    let mut jobs = Vec::new();
    for (m, y) in &cfg.keys {
        for pair in gm_family(m, cfg.seed, cfg.random) {
            if cfg.family.keeps(&pair.name()) {
                jobs.push((m, *y, pair));
            }
        }
    }
    if jobs.is_empty() {
        return Err(Error::Config("no attacker pair and modulus selected".into()));
    }
    let runs = run_parallel(&jobs, |(m, y, pair)| {
        let name = pair.name();
        let chain = gm_game_chain_with(m, *y, pair, cfg.mutation)?;
        let mut reports = check_chain(&chain, m.n(), None, &name);
        reports.push(end_to_end_gm(m, *y, pair)?.report(m.n(), &name));
        Ok(reports)
    })?;
    Ok(ReplayReport::from_runs(runs))
}
