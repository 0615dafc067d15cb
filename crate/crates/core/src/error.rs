use crate::dist::DistError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("Jacobi symbol needs an odd modulus, got {0}")]
    EvenModulus(u64),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("modulus {0} exceeds the enumeration limit {limit}", limit = crate::numth::MAX_MODULUS)]
    ModulusTooLarge(u64),
    #[error("p = {p}, q = {q} must be distinct odd primes")]
    InvalidPrimes { p: u64, q: u64 },
    #[error("p = {p}, q = {q} is not a Blum pair (both primes must be 3 mod 4)")]
    NotBlum { p: u64, q: u64 },
    #[error("{x} is not a unit modulo {n}")]
    NotAUnit { x: u64, n: u64 },
    #[error("{x} is not a quadratic residue modulo {n}")]
    NotQuadraticResidue { x: u64, n: u64 },
    #[error("{x} has {roots} square roots in QR_{n}, expected exactly one")]
    NonUniqueRoot { x: u64, n: u64, roots: usize },
    #[error("{value} is out of range for modulus {n}")]
    OutOfRange { value: u64, n: u64 },
    #[error("y = {y} is not in QNR_{n}(+1)")]
    InvalidY { y: u64, n: u64 },
    #[error("message pair ({0}, {1}) has no QRA reduction; equal messages need none")]
    UnsupportedCase(u8, u8),
    #[error("message chooser {0:?} is not deterministic on this public key")]
    NondeterministicChooser(String),
    #[error("invalid replay configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Dist(#[from] DistError),
}
