//! The tau-function as a Schur Q-expansion with Pfaffian coefficients.
//!
//! `τ = Σ_{μ strict} (-1)^{⌈l(μ)/2⌉} Pf(a_{μ_i,μ_j}) Q_μ(t/2)`, with a part 0
//! appended when `l(μ)` is odd. The [`fermion`] submodule recomputes the same
//! coefficients from the Bogoliubov state `e^A|0⟩` by Wick's theorem.

pub mod fermion;

use rayon::prelude::*;

use crate::affine::{AffineCoordinates, CoordTable};
use crate::partitions::{strict_partitions_up_to, StrictPartition};
use crate::ring::{pfaffian, sign, AntisymMatrix, Scalar};
use crate::schurq::{q_strict, TPoly};

pub use fermion::{oracle_coeff, pair_vev_conjugated, pair_vev_expanded, vev, FermionWord};

/// Coefficient of `Q_μ(t/2)` in `τ`.
pub fn tau_coeff(provider: &dyn AffineCoordinates, mu: &StrictPartition) -> Scalar {
    let parts = mu.padded_parts();
    let b = provider.beta_order();
    let m = AntisymMatrix::from_upper(parts.len(), Scalar::one(b), |i, j| {
        provider.a(parts[i], parts[j])
    });
    let pf = pfaffian(&m).expect("padded to even dimension");
    pf.scale(&sign(mu.len().div_ceil(2) as i64))
}

/// `τ(t)` truncated at weight `W`.
pub fn tau_expand(provider: &dyn AffineCoordinates, weight: u32) -> TPoly {
    let b = provider.beta_order();
    let table = CoordTable::new(provider, weight);
    let terms: Vec<TPoly> = strict_partitions_up_to(weight)
        .par_iter()
        .map(|mu| {
            let c = tau_coeff(&table, mu);
            if c.is_zero() {
                TPoly::zero(weight, b)
            } else {
                q_strict(mu, weight, b).scale(&c)
            }
        })
        .collect();
    terms
        .iter()
        .fold(TPoly::zero(weight, b), |acc, t| acc.add(t))
}
