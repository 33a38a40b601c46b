//! Exact polynomial algebra over ℚ: real-root counting, irreducibility
//! evidence, cyclotomic polynomials and the `S_p` Galois criterion.

mod cyclotomic;
mod galois;
mod irreducible;
mod modp;
mod poly;
mod sturm;

pub use cyclotomic::cyclotomic;
pub use galois::{sp_criterion, GaloisCertificate, GaloisKind};
pub use irreducible::{
    eisenstein, irreducible_over_q, rational_roots, Certificate, IrreducibilityVerdict, Status,
    EISENSTEIN_PRIME_BOUND, PATTERN_MIN_PRIMES, SCAN_PRIME_BOUND,
};
pub use modp::{factor_degree_scan, factor_degrees_mod_p, primes_up_to};
pub use poly::QPoly;
pub use sturm::{isolate_real_roots, sturm_count, width_for, Bound, RootCount, RootIsolation, SturmChain};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("polynomial parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial has non-integer coefficients")]
    NonIntegerCoefficients,
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },
}
