//! The Blum-Blum-Shub bit generator and the Goldwasser-Micali scheme.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::numth::{self, parity, BlumModulus, Residue, SemiprimeModulus};

/// A finite bit sequence, `true` = 1. Rendered as `'0'`/`'1'` characters with
/// the first bit leftmost.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bitstring(Vec<bool>);

impl Bitstring {
    pub fn new(bits: Vec<bool>) -> Self {
        Bitstring(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<bool> {
        self.0.first().copied()
    }

    /// Everything after the first bit.
    pub fn tail(&self) -> Bitstring {
        Bitstring(self.0.iter().skip(1).copied().collect())
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }
}

impl From<Vec<bool>> for Bitstring {
    fn from(bits: Vec<bool>) -> Self {
        Bitstring(bits)
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bitstrings contain only '0' and '1', found {0:?}")]
pub struct ParseBitstringError(char);

impl FromStr for Bitstring {
    type Err = ParseBitstringError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ParseBitstringError(other)),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Bitstring)
    }
}

impl Serialize for Bitstring {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bitstring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `len` output bits from seed `seed`: the generator state starts at `seed^2`.
pub fn bbs(len: usize, seed: Residue, m: &BlumModulus) -> Result<Bitstring> {
    let seed = m.check(seed)?;
    if !seed.is_unit() {
        return Err(Error::NotAUnit {
            x: seed.value(),
            n: m.n(),
        });
    }
    Ok(bbs_rec_unchecked(len, seed.square()))
}

/// `len` bits starting from state `x`: emit `parity(x)`, continue from `x^2`.
pub fn bbs_rec(len: usize, x: Residue, m: &BlumModulus) -> Result<Bitstring> {
    let x = m.check(x)?;
    if !m.is_qr(x).unwrap_or(false) {
        return Err(Error::NotQuadraticResidue { x: x.value(), n: m.n() });
    }
    Ok(bbs_rec_unchecked(len, x))
}

/// The generator walk without the residuosity precondition.
pub(crate) fn bbs_rec_unchecked(len: usize, mut x: Residue) -> Bitstring {
    let mut bits = Vec::with_capacity(len);
    for _ in 0..len {
        bits.push(parity(x));
        x = x.square();
    }
    Bitstring(bits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GmPublicKey {
    pub n: u64,
    pub y: Residue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GmSecretKey {
    pub p: u64,
    pub q: u64,
}

/// Packs `(p, q, y)` into a key pair; `y` must lie in `QNR_{pq}(+1)`.
pub fn gm_keygen(p: u64, q: u64, y: u64) -> Result<(GmPublicKey, GmSecretKey)> {
    let m = SemiprimeModulus::new(p, q)?;
    let pk = public_key(&m, y)?;
    Ok((pk, GmSecretKey { p, q }))
}

/// The public key `(n, y)` for a modulus, validating `y`.
pub fn public_key(m: &SemiprimeModulus, y: u64) -> Result<GmPublicKey> {
    let invalid = Error::InvalidY { y, n: m.n() };
    let y = Residue::new(y, m.n()).map_err(|_| invalid.clone())?;
    if m.qnr_plus1().binary_search(&y).is_err() {
        return Err(invalid);
    }
    Ok(GmPublicKey { n: m.n(), y })
}

/// Smallest element of `QNR_n(+1)`, the default `y`.
pub fn default_y(m: &SemiprimeModulus) -> Residue {
    // nonempty: |QNR_n(+1)| = |QR_n| >= 1
    m.qnr_plus1()[0]
}

fn check_unit(pk: &GmPublicKey, x: Residue) -> Result<Residue> {
    if x.modulus() != pk.n {
        return Err(Error::OutOfRange {
            value: x.value(),
            n: pk.n,
        });
    }
    if !x.is_unit() {
        return Err(Error::NotAUnit { x: x.value(), n: pk.n });
    }
    Ok(x)
}

/// `y * x^2` for bit 1, `x^2` for bit 0.
pub fn gm_encrypt_core(pk: &GmPublicKey, bit: bool, x: Residue) -> Result<Residue> {
    let x = check_unit(pk, x)?;
    Ok(encrypt_unchecked(pk, bit, x))
}

pub(crate) fn encrypt_unchecked(pk: &GmPublicKey, bit: bool, x: Residue) -> Residue {
    let sq = x.square();
    if bit {
        pk.y * sq
    } else {
        sq
    }
}

/// Ciphertext distribution for `bit` with `x` uniform over `Z_n^*`.
pub fn gm_encrypt_dist(pk: &GmPublicKey, bit: bool) -> Result<Dist<Residue>> {
    let units = numth::units(pk.n)?;
    Ok(Dist::uniform(units)?.map(|&x| encrypt_unchecked(pk, bit, x)))
}

/// Bit 0 iff the Legendre symbol of `c` modulo `p` is +1.
pub fn gm_decrypt(sk: &GmSecretKey, c: Residue) -> Result<bool> {
    let n = sk.p * sk.q;
    if c.modulus() != n {
        return Err(Error::OutOfRange { value: c.value(), n });
    }
    if !c.is_unit() {
        return Err(Error::NotAUnit { x: c.value(), n });
    }
    Ok(numth::legendre(c.value() as i64, sk.p)? != 1)
}

/// Bitwise encryption of a message, one independent `x` per bit.
pub fn gm_encrypt_bits(pk: &GmPublicKey, bits: &Bitstring, xs: &[Residue]) -> Result<Vec<Residue>> {
    assert_eq!(bits.len(), xs.len(), "one randomizer per message bit");
    bits.bits()
        .iter()
        .zip(xs)
        .map(|(&b, &x)| gm_encrypt_core(pk, b, x))
        .collect()
}

pub fn gm_decrypt_bits(sk: &GmSecretKey, cs: &[Residue]) -> Result<Bitstring> {
    cs.iter()
        .map(|&c| gm_decrypt(sk, c))
        .collect::<Result<Vec<_>>>()
        .map(Bitstring)
}
