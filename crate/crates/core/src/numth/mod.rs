//! Modular arithmetic and quadratic residuosity over small semiprimes.
//!
//! All residue sets are built by exhaustive enumeration when a modulus is
//! constructed. Residuosity of a single element is decided independently
//! through Legendre symbols of the two prime factors, so the two routes can
//! be cross-checked (see [`facts`]).

pub mod facts;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use facts::{check_facts, Fact, FactCheck, FactStatus};

/// Largest modulus for which residue tables are enumerated.
pub const MAX_MODULUS: u64 = 1 << 24;

/// An element of `Z_n`, stored as its representative in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        if value >= modulus {
            return Err(Error::OutOfRange { value, n: modulus });
        }
        Ok(Residue { value, modulus })
    }

    /// `value mod modulus`.
    pub fn reduce(value: u64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Residue {
            value: value % modulus,
            modulus,
        })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn square(self) -> Residue {
        self * self
    }

    pub fn is_unit(self) -> bool {
        self.value.gcd(&self.modulus) == 1
    }

    fn require_unit(self) -> Result<Self> {
        if self.is_unit() {
            Ok(self)
        } else {
            Err(Error::NotAUnit {
                x: self.value,
                n: self.modulus,
            })
        }
    }
}

impl std::ops::Mul for Residue {
    type Output = Residue;

    fn mul(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

/// `n - x`.
impl std::ops::Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        Residue {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for Residue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.value)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic trial division.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m < 4 {
        return true;
    }
    if m.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `Z_n^*` in ascending order.
pub fn units(n: u64) -> Result<Vec<Residue>> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    if n > MAX_MODULUS {
        return Err(Error::ModulusTooLarge(n));
    }
    Ok((1..n)
        .filter(|x| x.gcd(&n) == 1)
        .map(|value| Residue { value, modulus: n })
        .collect())
}

/// Euler's criterion without the primality check.
fn euler_criterion(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    match pow_mod(a, (p - 1) / 2, p) {
        1 => 1,
        r if r == p - 1 => -1,
        r => unreachable!("Euler criterion gave {r} modulo prime {p}"),
    }
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(euler_criterion(a, p))
}

/// Jacobi symbol `(a/n)` for odd `n`, by binary quadratic reciprocity.
/// Returns 0 when `gcd(a, n) > 1`.
pub fn jacobi(a: i64, n: u64) -> Result<i8> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenModulus(n));
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// Residue tables for one modulus, built once by enumeration.
#[derive(Debug)]
struct Tables {
    units: Vec<Residue>,
    qr: Vec<Residue>,
    qnr_plus1: Vec<Residue>,
    units_plus1: Vec<Residue>,
}

impl Tables {
    fn build(n: u64) -> Result<Self> {
        let units = units(n)?;
        let mut qr: Vec<Residue> = units.iter().map(|u| u.square()).collect();
        qr.sort();
        qr.dedup();
        let units_plus1: Vec<Residue> = units
            .iter()
            .copied()
            .filter(|u| jacobi(u.value as i64, n) == Ok(1))
            .collect();
        let qnr_plus1 = units_plus1
            .iter()
            .copied()
            .filter(|u| qr.binary_search(u).is_err())
            .collect();
        Ok(Tables {
            units,
            qr,
            qnr_plus1,
            units_plus1,
        })
    }
}

/// `n = p * q` for distinct odd primes `p`, `q`.
#[derive(Debug, Clone)]
pub struct SemiprimeModulus {
    p: u64,
    q: u64,
    n: u64,
    tables: Arc<Tables>,
}

impl SemiprimeModulus {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == q || p == 2 || q == 2 || !is_prime(p) || !is_prime(q) {
            return Err(Error::InvalidPrimes { p, q });
        }
        let n = p.checked_mul(q).ok_or(Error::ModulusTooLarge(u64::MAX))?;
        if n > MAX_MODULUS {
            return Err(Error::ModulusTooLarge(n));
        }
        Ok(SemiprimeModulus {
            p,
            q,
            n,
            tables: Arc::new(Tables::build(n)?),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Both factors are 3 mod 4.
    pub fn is_blum(&self) -> bool {
        self.p % 4 == 3 && self.q % 4 == 3
    }

    /// `value mod n` as a residue.
    pub fn residue(&self, value: u64) -> Residue {
        Residue {
            value: value % self.n,
            modulus: self.n,
        }
    }

    /// `Z_n^*`.
    pub fn units(&self) -> &[Residue] {
        &self.tables.units
    }

    /// `QR_n`, the image of squaring on `Z_n^*`.
    pub fn qr(&self) -> &[Residue] {
        &self.tables.qr
    }

    /// `QNR_n(+1)`: Jacobi symbol 1 but not a square.
    pub fn qnr_plus1(&self) -> &[Residue] {
        &self.tables.qnr_plus1
    }

    /// `Z_n^*(+1)`: units with Jacobi symbol 1.
    pub fn units_plus1(&self) -> &[Residue] {
        &self.tables.units_plus1
    }

    /// Checks that `x` is a residue modulo this `n`.
    pub fn check(&self, x: Residue) -> Result<Residue> {
        if x.modulus != self.n {
            return Err(Error::OutOfRange {
                value: x.value,
                n: self.n,
            });
        }
        Ok(x)
    }

    /// Quadratic residuosity through the factorization: both Legendre
    /// symbols are +1.
    pub fn is_qr(&self, x: Residue) -> Result<bool> {
        let x = self.check(x)?.require_unit()?;
        Ok(self.qr_unchecked(x))
    }

    pub(crate) fn qr_unchecked(&self, x: Residue) -> bool {
        let v = x.value as i64;
        euler_criterion(v, self.p) == 1 && euler_criterion(v, self.q) == 1
    }
}

impl PartialEq for SemiprimeModulus {
    fn eq(&self, other: &Self) -> bool {
        (self.p, self.q) == (other.p, other.q)
    }
}

impl Eq for SemiprimeModulus {}

impl fmt::Display for SemiprimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} * {}", self.n, self.p, self.q)
    }
}

/// A semiprime whose factors are both 3 mod 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlumModulus(SemiprimeModulus);

impl BlumModulus {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        SemiprimeModulus::new(p, q)?.try_into()
    }

    pub fn semiprime(&self) -> &SemiprimeModulus {
        &self.0
    }

    /// The unique square root of `x` lying in `QR_n`.
    ///
    /// Roots modulo each prime come from the `(p + 1) / 4` exponent; the four
    /// CRT combinations are then filtered by residuosity.
    pub fn principal_sqrt(&self, x: Residue) -> Result<Residue> {
        let x = self.check(x)?;
        if !x.is_unit() || !self.qr_unchecked(x) {
            return Err(Error::NotQuadraticResidue {
                x: x.value,
                n: self.n(),
            });
        }
        let (p, q) = (self.p(), self.q());
        let rp = pow_mod(x.value % p, (p + 1) / 4, p);
        let rq = pow_mod(x.value % q, (q + 1) / 4, q);
        let mut principal = None;
        let mut count = 0;
        for sp in [rp, p - rp] {
            for sq in [rq, q - rq] {
                let r = self.residue(crt(sp, p, sq, q));
                debug_assert_eq!(r.square(), x);
                if self.qr_unchecked(r) {
                    count += 1;
                    principal = Some(r);
                }
            }
        }
        match (count, principal) {
            (1, Some(r)) => Ok(r),
            _ => Err(Error::NonUniqueRoot {
                x: x.value,
                n: self.n(),
                roots: count,
            }),
        }
    }
}

impl TryFrom<SemiprimeModulus> for BlumModulus {
    type Error = Error;

    fn try_from(m: SemiprimeModulus) -> Result<Self> {
        if m.is_blum() {
            Ok(BlumModulus(m))
        } else {
            Err(Error::NotBlum { p: m.p, q: m.q })
        }
    }
}

impl std::ops::Deref for BlumModulus {
    type Target = SemiprimeModulus;

    fn deref(&self) -> &SemiprimeModulus {
        &self.0
    }
}

impl fmt::Display for BlumModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The `r mod p*q` with `r = a (mod p)` and `r = b (mod q)`.
fn crt(a: u64, p: u64, b: u64, q: u64) -> u64 {
    let n = p as i128 * q as i128;
    let g = (p as i128).extended_gcd(&(q as i128));
    debug_assert_eq!(g.gcd, 1);
    // p * x + q * y = 1
    let r = a as i128 * q as i128 * g.y + b as i128 * p as i128 * g.x;
    r.rem_euclid(n) as u64
}

/// Low bit of the canonical representative.
pub fn parity(x: Residue) -> bool {
    x.value & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(rs: &[Residue]) -> Vec<u64> {
        rs.iter().map(|r| r.value()).collect()
    }

    #[test]
    fn primality() {
        assert!(is_prime(7));
        assert!(!is_prime(21));
        assert!(is_prime(47));
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(49));
    }

    #[test]
    fn unit_groups() {
        assert_eq!(
            values(&units(21).unwrap()),
            vec![1, 2, 4, 5, 8, 10, 11, 13, 16, 17, 19, 20]
        );
        assert_eq!(units(15).unwrap().len(), 8);
        assert_eq!(values(&units(3).unwrap()), vec![1, 2]);
        assert!(units(1).is_err());
    }

    #[test]
    fn legendre_symbols() {
        assert_eq!(legendre(2, 7), Ok(1));
        assert_eq!(legendre(2, 3), Ok(-1));
        assert_eq!(legendre(7, 7), Ok(0));
        assert_eq!(legendre(-1, 7), Ok(-1));
        assert_eq!(legendre(3, 2), Err(Error::NotOddPrime(2)));
        assert_eq!(legendre(3, 9), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn jacobi_symbols() {
        assert_eq!(jacobi(1, 21), Ok(1));
        assert_eq!(jacobi(2, 21), Ok(-1));
        assert_eq!(jacobi(5, 21), Ok(1));
        assert_eq!(jacobi(7, 21), Ok(0));
        assert_eq!(jacobi(3, 1), Ok(1));
        assert_eq!(jacobi(3, 10), Err(Error::EvenModulus(10)));
    }

    #[test]
    fn jacobi_is_product_of_legendre() {
        for (p, q) in [(3, 5), (3, 7), (3, 11), (5, 7), (7, 11), (7, 19), (11, 13)] {
            let n = p * q;
            for a in -(n as i64)..(2 * n as i64) {
                let expected = legendre(a, p).unwrap() * legendre(a, q).unwrap();
                assert_eq!(jacobi(a, n).unwrap(), expected, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn residue_sets_mod_21() {
        let m = SemiprimeModulus::new(3, 7).unwrap();
        assert_eq!(values(m.qr()), vec![1, 4, 16]);
        assert_eq!(values(m.qnr_plus1()), vec![5, 17, 20]);
        assert_eq!(values(m.units_plus1()), vec![1, 4, 5, 16, 17, 20]);
        let m15 = SemiprimeModulus::new(3, 5).unwrap();
        assert_eq!(values(m15.qr()), vec![1, 4]);
        assert_eq!(m15.qr().len(), m15.qnr_plus1().len());
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(SemiprimeModulus::new(3, 3), Err(Error::InvalidPrimes { p: 3, q: 3 }));
        assert_eq!(SemiprimeModulus::new(4, 7), Err(Error::InvalidPrimes { p: 4, q: 7 }));
        assert_eq!(SemiprimeModulus::new(2, 7), Err(Error::InvalidPrimes { p: 2, q: 7 }));
        assert_eq!(BlumModulus::new(3, 5), Err(Error::NotBlum { p: 3, q: 5 }));
        assert!(BlumModulus::new(7, 19).is_ok());
    }

    #[test]
    fn qr_oracle() {
        let m = SemiprimeModulus::new(3, 7).unwrap();
        assert_eq!(m.is_qr(m.residue(16)), Ok(true));
        assert_eq!(m.is_qr(m.residue(5)), Ok(false));
        assert_eq!(m.is_qr(m.residue(1)), Ok(true));
        assert_eq!(m.is_qr(m.residue(7)), Err(Error::NotAUnit { x: 7, n: 21 }));
        let other = Residue::new(4, 33).unwrap();
        assert!(m.is_qr(other).is_err());
    }

    #[test]
    fn principal_roots_mod_21() {
        let m = BlumModulus::new(3, 7).unwrap();
        assert_eq!(m.principal_sqrt(m.residue(4)).unwrap().value(), 16);
        assert_eq!(m.principal_sqrt(m.residue(16)).unwrap().value(), 4);
        assert_eq!(m.principal_sqrt(m.residue(1)).unwrap().value(), 1);
        assert_eq!(
            m.principal_sqrt(m.residue(5)),
            Err(Error::NotQuadraticResidue { x: 5, n: 21 })
        );
    }

    #[test]
    fn parity_of_representative() {
        assert!(!parity(Residue::new(4, 21).unwrap()));
        assert!(parity(Residue::new(17, 21).unwrap()));
        assert!(!parity(Residue::new(16, 21).unwrap()));
    }

    #[test]
    fn crt_recombines() {
        for a in 0..7 {
            for b in 0..11 {
                let r = crt(a, 7, b, 11);
                assert_eq!((r % 7, r % 11), (a, b));
            }
        }
    }
}
