//! The eight residuosity facts the two security reductions rely on, each
//! checked by exhaustive enumeration over a concrete modulus.
//!
//! Facts I-IV hold for every product of two distinct odd primes; V-VIII need
//! a Blum modulus and are reported as not applicable otherwise.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{parity, BlumModulus, Residue, SemiprimeModulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fact {
    /// Squaring `Z_n^* -> QR_n` is surjective and four-to-one.
    SquaringFourToOne,
    /// `x -> y*x` maps `QR_n` bijectively onto `QNR_n(+1)`.
    ShiftByNonResidue,
    /// `|QR_n| = |QNR_n(+1)|`.
    EqualHalves,
    /// `Z_n^*(+1)` is the disjoint union of `QR_n` and `QNR_n(+1)`.
    JacobiSplit,
    /// Squaring permutes `QR_n`.
    SquaringPermutesQr,
    /// Squaring `Z_n^*(+1) -> QR_n` is surjective and two-to-one.
    SquaringTwoToOne,
    /// `sqrt(x^2) = x` on `QR_n`.
    SqrtOfSquare,
    /// On `Z_n^*(+1)`, `x` is a residue iff `parity(x) = parity(sqrt(x^2))`.
    ParityWitness,
}

impl Fact {
    pub const ALL: [Fact; 8] = [
        Fact::SquaringFourToOne,
        Fact::ShiftByNonResidue,
        Fact::EqualHalves,
        Fact::JacobiSplit,
        Fact::SquaringPermutesQr,
        Fact::SquaringTwoToOne,
        Fact::SqrtOfSquare,
        Fact::ParityWitness,
    ];

    /// Roman numeral used in reports.
    pub fn label(self) -> &'static str {
        match self {
            Fact::SquaringFourToOne => "I",
            Fact::ShiftByNonResidue => "II",
            Fact::EqualHalves => "III",
            Fact::JacobiSplit => "IV",
            Fact::SquaringPermutesQr => "V",
            Fact::SquaringTwoToOne => "VI",
            Fact::SqrtOfSquare => "VII",
            Fact::ParityWitness => "VIII",
        }
    }

    pub fn needs_blum(self) -> bool {
        matches!(
            self,
            Fact::SquaringPermutesQr | Fact::SquaringTwoToOne | Fact::SqrtOfSquare | Fact::ParityWitness
        )
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Fact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactStatus {
    Pass,
    Fail(String),
    NotApplicable,
}

/// One fact at one modulus. Serializes as
/// `{fact, modulus, pass, counterexample?}` with `pass = null` when the fact
/// does not apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactCheck {
    pub fact: Fact,
    pub modulus: u64,
    pub status: FactStatus,
}

impl FactCheck {
    pub fn passed(&self) -> bool {
        self.status == FactStatus::Pass
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, FactStatus::Fail(_))
    }
}

impl Serialize for FactCheck {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let cx = match &self.status {
            FactStatus::Fail(c) => Some(c),
            _ => None,
        };
        let mut s = serializer.serialize_struct("FactCheck", 3 + cx.is_some() as usize)?;
        s.serialize_field("fact", &self.fact)?;
        s.serialize_field("modulus", &self.modulus)?;
        let pass = match self.status {
            FactStatus::Pass => Some(true),
            FactStatus::Fail(_) => Some(false),
            FactStatus::NotApplicable => None,
        };
        s.serialize_field("pass", &pass)?;
        if let Some(c) = cx {
            s.serialize_field("counterexample", c)?;
        }
        s.end()
    }
}

type Outcome = Result<(), String>;

/// Runs all eight facts against `m`.
pub fn check_facts(m: &SemiprimeModulus) -> Vec<FactCheck> {
    let blum = BlumModulus::try_from(m.clone()).ok();
    Fact::ALL
        .iter()
        .map(|&fact| {
            let outcome = match (fact.needs_blum(), &blum) {
                (true, None) => None,
                (true, Some(b)) => Some(check_blum_fact(fact, b)),
                (false, _) => Some(check_semiprime_fact(fact, m)),
            };
            let status = match outcome {
                None => FactStatus::NotApplicable,
                Some(Ok(())) => FactStatus::Pass,
                Some(Err(c)) => FactStatus::Fail(c),
            };
            FactCheck {
                fact,
                modulus: m.n(),
                status,
            }
        })
        .collect()
}

fn check_semiprime_fact(fact: Fact, m: &SemiprimeModulus) -> Outcome {
    match fact {
        Fact::SquaringFourToOne => squaring_n_to_one(m.units(), m.qr(), 4),
        Fact::ShiftByNonResidue => shift_by_nonresidue(m),
        Fact::EqualHalves => equal_halves(m),
        Fact::JacobiSplit => jacobi_split(m),
        _ => unreachable!("{fact} needs a Blum modulus"),
    }
}

fn check_blum_fact(fact: Fact, m: &BlumModulus) -> Outcome {
    match fact {
        Fact::SquaringPermutesQr => squaring_n_to_one(m.qr(), m.qr(), 1),
        Fact::SquaringTwoToOne => squaring_n_to_one(m.units_plus1(), m.qr(), 2),
        Fact::SqrtOfSquare => sqrt_of_square(m),
        Fact::ParityWitness => parity_witness(m),
        other => check_semiprime_fact(other, m),
    }
}

/// Squaring maps `domain` onto `image`, hitting each element exactly `k` times.
fn squaring_n_to_one(domain: &[Residue], image: &[Residue], k: usize) -> Outcome {
    let mut hits: BTreeMap<Residue, usize> = image.iter().map(|&x| (x, 0)).collect();
    for &u in domain {
        let s = u.square();
        match hits.get_mut(&s) {
            Some(c) => *c += 1,
            None => return Err(format!("{u}^2 = {s} falls outside the target set")),
        }
    }
    match hits.iter().find(|(_, &c)| c != k) {
        Some((x, c)) => Err(format!("{x} has {c} preimages, expected {k}")),
        None => Ok(()),
    }
}

fn shift_by_nonresidue(m: &SemiprimeModulus) -> Outcome {
    for &y in m.qnr_plus1() {
        let mut image: Vec<Residue> = m.qr().iter().map(|&x| y * x).collect();
        image.sort();
        if image.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("y = {y}: x -> y*x is not injective on QR"));
        }
        if image != m.qnr_plus1() {
            return Err(format!("y = {y}: y * QR differs from QNR(+1)"));
        }
    }
    Ok(())
}

fn equal_halves(m: &SemiprimeModulus) -> Outcome {
    let (a, b) = (m.qr().len(), m.qnr_plus1().len());
    if a == b {
        Ok(())
    } else {
        Err(format!("|QR| = {a}, |QNR(+1)| = {b}"))
    }
}

fn jacobi_split(m: &SemiprimeModulus) -> Outcome {
    // QR membership is re-derived from Legendre symbols here, independent of
    // the squaring enumeration that built the tables.
    for &u in m.units() {
        let by_squares = m.qr().binary_search(&u).is_ok();
        if by_squares != m.qr_unchecked(u) {
            return Err(format!("{u}: squaring and Legendre residuosity disagree"));
        }
    }
    if let Some(x) = m.qr().iter().find(|x| m.qnr_plus1().binary_search(x).is_ok()) {
        return Err(format!("{x} is in both QR and QNR(+1)"));
    }
    let mut union: Vec<Residue> = m.qr().iter().chain(m.qnr_plus1()).copied().collect();
    union.sort();
    if union != m.units_plus1() {
        return Err("QR + QNR(+1) differs from Z*(+1)".to_string());
    }
    Ok(())
}

fn sqrt_of_square(m: &BlumModulus) -> Outcome {
    for &x in m.qr() {
        match m.principal_sqrt(x.square()) {
            Ok(r) if r == x => {}
            Ok(r) => return Err(format!("sqrt({x}^2) = {r}")),
            Err(e) => return Err(format!("sqrt({x}^2): {e}")),
        }
    }
    Ok(())
}

fn parity_witness(m: &BlumModulus) -> Outcome {
    for &x in m.units_plus1() {
        let r = m.principal_sqrt(x.square()).map_err(|e| format!("sqrt({x}^2): {e}"))?;
        let same = parity(x) == parity(r);
        if same != m.qr_unchecked(x) {
            return Err(format!("x = {x}, sqrt(x^2) = {r}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pass_on_small_blum_moduli() {
        for (p, q) in [(3, 7), (3, 11)] {
            let m = SemiprimeModulus::new(p, q).unwrap();
            let report = check_facts(&m);
            assert_eq!(report.len(), 8);
            assert!(report.iter().all(FactCheck::passed), "{report:?}");
        }
    }

    #[test]
    fn blum_facts_not_applicable_at_15() {
        let m = SemiprimeModulus::new(3, 5).unwrap();
        let report = check_facts(&m);
        for c in &report {
            if c.fact.needs_blum() {
                assert_eq!(c.status, FactStatus::NotApplicable);
            } else {
                assert!(c.passed(), "{c:?}");
            }
        }
    }

    #[test]
    fn squaring_count_reports_counterexample() {
        let m = SemiprimeModulus::new(3, 7).unwrap();
        // Squaring is four-to-one, so asking for two-to-one must fail.
        let err = squaring_n_to_one(m.units(), m.qr(), 2).unwrap_err();
        assert!(err.contains("preimages"), "{err}");
        let err = squaring_n_to_one(m.units(), &m.qr()[..2], 4).unwrap_err();
        assert!(err.contains("outside"), "{err}");
    }

    #[test]
    fn json_shape() {
        let m = SemiprimeModulus::new(3, 5).unwrap();
        let report = check_facts(&m);
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v[0]["fact"], "I");
        assert_eq!(v[0]["modulus"], 15);
        assert_eq!(v[0]["pass"], true);
        assert!(v[0].get("counterexample").is_none());
        assert!(v[4]["pass"].is_null());
        let failed = FactCheck {
            fact: Fact::EqualHalves,
            modulus: 21,
            status: FactStatus::Fail("sizes".into()),
        };
        let v = serde_json::to_value(&failed).unwrap();
        assert_eq!(v["pass"], false);
        assert_eq!(v["counterexample"], "sizes");
    }
}
