//! Checks that tie independent pipelines together.

use bkp_core::affine::{AtPOne, SpinHurwitz};
use bkp_core::npoint::{connected_npoint, hurwitz_connected, Variant};
use bkp_core::partitions::{odd_partitions, OddPartition};
use bkp_core::ring::{int, Scalar};
use bkp_core::schurq::{TMonomial, TPoly};
use bkp_core::tau::tau_expand;

/// `log τ` for `τ` with constant term 1, truncated at `τ`'s weight.
fn log_tau(tau: &TPoly) -> TPoly {
    let w = tau.weight_cutoff();
    let b = tau.beta_order();
    let x = tau.sub(&TPoly::one(w, b));
    let mut out = TPoly::zero(w, b);
    let mut power = x.clone();
    for k in 1..=w {
        let c = if k % 2 == 1 { int(1) } else { int(-1) } / int(k as i64);
        out = out.add(&power.scale_rat(&c));
        power = power.mul(&x);
    }
    out
}

fn monomial_of(mu: &OddPartition) -> TMonomial {
    mu.multiplicities()
        .iter()
        .fold(TMonomial::one(), |m, &(part, k)| {
            m.mul(&TMonomial::var_pow(part, k))
        })
}

#[test]
fn hurwitz_matches_log_tau() {
    let (r, b, w) = (2, 3, 7);
    let a = SpinHurwitz::new(r, b).unwrap();
    let logt = log_tau(&tau_expand(&AtPOne(&a), w));
    for weight in 1..=w {
        for mu in odd_partitions(weight) {
            let prod: i64 = mu.parts().iter().map(|&p| p as i64).product();
            let want = logt.coeff(&monomial_of(&mu)).scale(&(int(1) / int(prod)));
            let got = hurwitz_connected(&a, &mu, weight).unwrap();
            assert_eq!(got, want, "mu = {mu}");
        }
    }
}

#[test]
fn npoint_matches_log_tau_derivatives() {
    // Coefficient of z_1^{-i} z_2^{-j} is ∂_{t_i}∂_{t_j} log τ at 0.
    let a = SpinHurwitz::new(2, 2).unwrap();
    let logt = log_tau(&tau_expand(&AtPOne(&a), 6));
    let s = connected_npoint(&a, 2, 6, Variant::Full).unwrap();
    for i in [1u32, 3, 5] {
        for j in [1u32, 3, 5] {
            if i + j > 6 {
                continue;
            }
            let m = TMonomial::var_pow(i, 1).mul(&TMonomial::var_pow(j, 1));
            let mult = if i == j { int(2) } else { int(1) };
            let want: Scalar = logt.coeff(&m).scale(&mult);
            assert_eq!(s.coeff(&[-(i as i32), -(j as i32)]), want, "i={i} j={j}");
        }
    }
}
