use std::fmt;
use std::fs;
use std::io::{self, Write};

use gamehop::numth::{check_facts, BlumModulus, SemiprimeModulus};
use gamehop::primitives::{self, Bitstring};
use gamehop::proofreplay::{
    replay_bbs as run_bbs, replay_gm as run_gm, BbsReplay, FamilyFilter, GmReplay, ReplayReport,
};
use gamehop::Residue;
use serde::Serialize;

use crate::{BbsArgs, FactsArgs, GmArgs, Moduli, Output, ReplayBbsArgs, ReplayGmArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(gamehop::Error),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<gamehop::Error> for CliError {
    fn from(e: gamehop::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CmdResult = Result<bool, CliError>;

fn pairs(m: &Moduli) -> Result<Vec<(u64, u64)>, CliError> {
    if m.p.len() != m.q.len() {
        return Err(CliError::Usage(format!(
            "got {} values for --p but {} for --q",
            m.p.len(),
            m.q.len()
        )));
    }
    Ok(m.p.iter().copied().zip(m.q.iter().copied()).collect())
}

fn emit<T: Serialize>(out: &Output, report: &T) -> Result<(), CliError> {
    let mut json = serde_json::to_string_pretty(report).expect("reports serialize");
    json.push('\n');
    match &out.output {
        Some(path) => fs::write(path, json)?,
        None => io::stdout().lock().write_all(json.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct FactsReport {
    checks: Vec<gamehop::numth::FactCheck>,
    summary: FactsSummary,
}

#[derive(Serialize)]
struct FactsSummary {
    total: usize,
    passed: usize,
    failed: usize,
    not_applicable: usize,
}

pub fn facts(a: FactsArgs) -> CmdResult {
    let moduli = pairs(&a.moduli)?
        .into_iter()
        .map(|(p, q)| SemiprimeModulus::new(p, q))
        .collect::<Result<Vec<_>, _>>()?;
    let checks: Vec<_> = moduli.iter().flat_map(check_facts).collect();
    let passed = checks.iter().filter(|c| c.passed()).count();
    let failed = checks.iter().filter(|c| c.failed()).count();
    let summary = FactsSummary {
        total: checks.len(),
        passed,
        failed,
        not_applicable: checks.len() - passed - failed,
    };
    eprintln!(
        "facts: {} passed, {} failed, {} not applicable",
        summary.passed, summary.failed, summary.not_applicable
    );
    for c in checks.iter().filter(|c| c.failed()) {
        eprintln!("  FAIL Fact {} at n = {}", c.fact.label(), c.modulus);
    }
    emit(&a.output, &FactsReport { checks, summary })?;
    Ok(failed == 0)
}

fn finish_replay(name: &str, out: &Output, report: &ReplayReport) -> CmdResult {
    let s = report.summary;
    eprintln!("{name}: {} checks, {} passed, {} failed", s.total, s.passed, s.failed);
    for f in report.failures().take(10) {
        let why = f
            .counterexample
            .as_ref()
            .map(|c| format!(" at {}: {} vs {}", c.value, c.left, c.right))
            .unwrap_or_default();
        eprintln!("  FAIL {} n = {} {}{why}", f.step_id, f.modulus, f.attacker_id);
    }
    if s.failed > 10 {
        eprintln!("  ... {} more", s.failed - 10);
    }
    emit(out, report)?;
    Ok(report.all_passed())
}

pub fn replay_bbs(a: ReplayBbsArgs) -> CmdResult {
    let moduli = pairs(&a.moduli)?
        .into_iter()
        .map(|(p, q)| BlumModulus::new(p, q))
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = BbsReplay {
        moduli,
        lengths: a.len,
        seed: a.family.seed,
        random: a.family.random,
        family: FamilyFilter::from_names(a.family.family),
        mutation: a.family.mutate,
    };
    finish_replay("replay-bbs", &a.output, &run_bbs(&cfg)?)
}

fn resolve_y(m: &SemiprimeModulus, y: Option<u64>) -> Result<Residue, CliError> {
    Ok(match y {
        Some(y) => primitives::public_key(m, y)?.y,
        None => primitives::default_y(m),
    })
}

pub fn replay_gm(a: ReplayGmArgs) -> CmdResult {
    let mut keys = Vec::new();
    for (p, q) in pairs(&a.moduli)? {
        let m = SemiprimeModulus::new(p, q)?;
        let y = resolve_y(&m, a.y)?;
        keys.push((m, y));
    }
    let cfg = GmReplay {
        keys,
        seed: a.family.seed,
        random: a.family.random,
        family: FamilyFilter::from_names(a.family.family),
        mutation: a.family.mutate,
    };
    finish_replay("replay-gm", &a.output, &run_gm(&cfg)?)
}

fn generate(a: &BbsArgs) -> Result<(BlumModulus, Bitstring), CliError> {
    let m = BlumModulus::new(a.p, a.q)?;
    let seed = Residue::reduce(a.seed, m.n())?;
    let bits = primitives::bbs(a.len, seed, &m).map_err(|e| match e {
        gamehop::Error::NotAUnit { n, .. } => gamehop::Error::NotAUnit { x: a.seed, n },
        e => e,
    })?;
    Ok((m, bits))
}

#[derive(Serialize)]
struct BbsReport {
    n: u64,
    seed: u64,
    len: usize,
    bits: Bitstring,
}

pub fn bbs(a: BbsArgs) -> CmdResult {
    let (m, bits) = generate(&a)?;
    eprintln!("bbs: n = {} seed = {} -> {bits}", m.n(), a.seed);
    emit(
        &a.output,
        &BbsReport {
            n: m.n(),
            seed: a.seed,
            len: a.len,
            bits,
        },
    )?;
    Ok(true)
}

#[derive(Serialize)]
struct StatsReport {
    n: u64,
    seed: u64,
    len: usize,
    zeros: usize,
    ones: usize,
    bits: Bitstring,
}

pub fn stats(a: BbsArgs) -> CmdResult {
    let (m, bits) = generate(&a)?;
    eprintln!("stats: {} zeros, {} ones", bits.zeros(), bits.ones());
    emit(
        &a.output,
        &StatsReport {
            n: m.n(),
            seed: a.seed,
            len: a.len,
            zeros: bits.zeros(),
            ones: bits.ones(),
            bits,
        },
    )?;
    Ok(true)
}

#[derive(Serialize)]
struct GmReport {
    n: u64,
    y: Residue,
    message: Bitstring,
    x: Vec<Residue>,
    ciphertexts: Vec<Residue>,
    decrypted: Bitstring,
    round_trip: bool,
}

pub fn gm(a: GmArgs) -> CmdResult {
    let m = SemiprimeModulus::new(a.p, a.q)?;
    let y = resolve_y(&m, a.y)?;
    let (pk, sk) = primitives::gm_keygen(a.p, a.q, y.value())?;
    let message: Bitstring = match (&a.bits, a.bit) {
        (Some(s), _) => s.parse().map_err(|e| CliError::Usage(format!("--bits: {e}")))?,
        (None, Some(b)) => Bitstring::new(vec![b == 1]),
        (None, None) => return Err(CliError::Usage("one of --bit or --bits is required".into())),
    };
    let xs: Vec<Residue> = if a.x.is_empty() {
        let units = m.units();
        (0..message.len())
            .map(|i| units[((a.seed as u128 + i as u128) % units.len() as u128) as usize])
            .collect()
    } else {
        if a.x.len() != message.len() {
            return Err(CliError::Usage(format!(
                "{} message bits but {} values for --x",
                message.len(),
                a.x.len()
            )));
        }
        a.x.iter().map(|&x| Residue::new(x, m.n())).collect::<Result<_, _>>()?
    };
    let ciphertexts = primitives::gm_encrypt_bits(&pk, &message, &xs)?;
    let decrypted = primitives::gm_decrypt_bits(&sk, &ciphertexts)?;
    let round_trip = decrypted == message;
    eprintln!(
        "gm: n = {} y = {} message {message} -> {:?} -> {decrypted}{}",
        m.n(),
        y,
        ciphertexts.iter().map(|c| c.value()).collect::<Vec<_>>(),
        if round_trip { "" } else { " (round trip FAILED)" }
    );
    emit(
        &a.output,
        &GmReport {
            n: m.n(),
            y,
            message,
            x: xs,
            ciphertexts,
            decrypted,
            round_trip,
        },
    )?;
    Ok(round_trip)
}
