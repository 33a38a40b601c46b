//! The `S_p` criterion: an irreducible polynomial of prime degree `p` with
//! exactly `p − 2` real roots has Galois group `S_p` (complex conjugation is
//! a transposition, and a `p`-cycle exists because `p` divides the order).

use serde::Serialize;

use super::irreducible::{irreducible_over_q, IrreducibilityVerdict, Status};
use super::modp::is_prime;
use super::sturm::{sturm_count, Bound};
use super::QPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GaloisKind {
    SymmetricSp,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisCertificate {
    pub kind: GaloisKind,
    pub p: Option<usize>,
    /// `S_p` is solvable exactly for `p ≤ 4`.
    pub solvable: Option<bool>,
    pub real_roots: Option<usize>,
    pub irreducibility: Option<IrreducibilityVerdict>,
}

impl GaloisCertificate {
    fn not_applicable(real_roots: Option<usize>, irreducibility: Option<IrreducibilityVerdict>) -> Self {
        GaloisCertificate { kind: GaloisKind::NotApplicable, p: None, solvable: None, real_roots, irreducibility }
    }
}

/// Applies the criterion. `NotApplicable` means the hypotheses were not all
/// verified; it says nothing about the actual group.
pub fn sp_criterion(f: &QPoly) -> GaloisCertificate {
    let Some(p) = f.degree() else {
        return GaloisCertificate::not_applicable(None, None);
    };
    if !is_prime(p as u64) {
        return GaloisCertificate::not_applicable(None, None);
    }
    let real = sturm_count(f, &Bound::NegInf, &Bound::PosInf).ok().map(|c| c.count);
    let verdict = irreducible_over_q(f);
    if verdict.status != Status::Irreducible || real != Some(p - 2) {
        return GaloisCertificate::not_applicable(real, Some(verdict));
    }
    GaloisCertificate {
        kind: GaloisKind::SymmetricSp,
        p: Some(p),
        solvable: Some(p < 5),
        real_roots: real,
        irreducibility: Some(verdict),
    }
}
