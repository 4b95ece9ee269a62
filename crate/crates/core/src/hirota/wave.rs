//! The wave function `w_B(t; z) = e^{ξ(t,z)} τ(t - 2[z^{-1}]) / τ(t)` and its
//! relation to the basis `Φ_k`.
//!
//! Along `t = (x, 0, 0, …)` the numerator is
//! `Σ_μ c_μ Q_μ(t/2)|_{t_1 = x - 2/z, t_k = -2/(k z^k)}`, a polynomial in `x`
//! and `u = z^{-1}` that is homogeneous of degree `|μ|`. Truncating at
//! `x`-degree `K` and `u`-degree `I` keeps `[x^k] w_B` exact on `[-I+k, k]`.

use rayon::prelude::*;

use crate::affine::{phi_basis, AffineCoordinates, CoordTable};
use crate::partitions::strict_partitions_up_to;
use crate::report::{Failure, Report};
use crate::ring::{factorial, sign, LaurentZ, Rat, Scalar};
use crate::schurq::{q_shifted_principal, specialize_principal, TMonomial};
use crate::tau::{tau_coeff, tau_expand};
use crate::{Error, Result};

/// `w_B(0; z) = τ(-2[z^{-1}])` from the Schur Q-expansion, on `[-depth, 0]`.
pub fn wave_principal(provider: &dyn AffineCoordinates, depth: u32) -> LaurentZ {
    let b = provider.beta_order();
    let table = CoordTable::new(provider, depth);
    let parts: Vec<LaurentZ> = strict_partitions_up_to(depth)
        .par_iter()
        .filter_map(|mu| {
            let c = tau_coeff(&table, mu);
            if c.is_zero() {
                None
            } else {
                Some(specialize_principal(mu, depth, b).scale(&c))
            }
        })
        .collect();
    parts.iter().fold(
        LaurentZ::zero(-(depth as i64), 0, b).expect("nonempty"),
        |acc, s| acc.add(s),
    )
}

/// `z^k + a_{k,0} + Σ_{i=1}^{depth} 2(-1)^i a_{k,i} z^{-i}` on `[-depth, k]`.
pub fn raw_basis(provider: &dyn AffineCoordinates, k: u32, depth: u32) -> LaurentZ {
    let b = provider.beta_order();
    let mut s = LaurentZ::zero(-(depth as i64), k as i64, b).expect("nonempty");
    s.set_coeff(k as i64, Scalar::one(b)).expect("inside");
    let c0 = s.coeff(0).expect("inside");
    s.set_coeff(0, &c0 + &provider.a(k, 0)).expect("inside");
    for i in 1..=depth {
        let c = provider
            .a(k, i)
            .scale(&(sign(i as i64) * Rat::from_integer(2.into())));
        s.set_coeff(-(i as i64), c).expect("inside");
    }
    s
}

/// `∂_{t_1}^k w_B(t; z)|_{t=0}` for `k ≤ kmax`, entry `k` exact on
/// `[-depth+k, k]`. The denominator `τ(x, 0, …)` is read from `τ` up to
/// weight `weight ≥ kmax`.
pub fn wave_derivatives(
    provider: &dyn AffineCoordinates,
    kmax: u32,
    depth: u32,
    weight: u32,
) -> Result<Vec<LaurentZ>> {
    if weight < kmax {
        return Err(Error::InsufficientWindow(format!(
            "weight {weight} is below kmax {kmax}"
        )));
    }
    let b = provider.beta_order();
    let (kx, iu) = (kmax as usize, depth as usize);
    let table = CoordTable::new(provider, kmax + depth);
    let zero_grid = || vec![vec![Scalar::zero(b); iu + 1]; kx + 1];

    // Numerator N[j][i]: coefficient of x^j u^i.
    let grids: Vec<Vec<Vec<Scalar>>> = strict_partitions_up_to(kmax + depth)
        .par_iter()
        .filter_map(|mu| {
            let c = tau_coeff(&table, mu);
            if c.is_zero() {
                return None;
            }
            let q = q_shifted_principal(mu, kmax, depth);
            let mut g = zero_grid();
            for (&(x, u), v) in q.terms() {
                g[x as usize][u as usize] = c.scale(v);
            }
            Some(g)
        })
        .collect();
    let mut num = zero_grid();
    for g in &grids {
        for j in 0..=kx {
            for i in 0..=iu {
                if !g[j][i].is_zero() {
                    num[j][i] += &g[j][i];
                }
            }
        }
    }

    // Denominator D(x) = τ(x, 0, …) and its inverse as a series in x.
    let tau = tau_expand(provider, weight);
    let den: Vec<Scalar> = (0..=kmax)
        .map(|j| tau.coeff(&TMonomial::var_pow(1, j)))
        .collect();
    let mut inv = vec![Scalar::zero(b); kx + 1];
    inv[0] = Scalar::one(b);
    for n in 1..=kx {
        let mut acc = Scalar::zero(b);
        for j in 1..=n {
            acc += &(&den[j] * &inv[n - j]);
        }
        inv[n] = -acc;
    }

    // M = N / D.
    let mut m = zero_grid();
    for j in 0..=kx {
        for a in 0..=j {
            for i in 0..=iu {
                if !num[a][i].is_zero() {
                    m[j][i] += &(&num[a][i] * &inv[j - a]);
                }
            }
        }
    }

    // k!·[x^k] e^{xz} M(x, z^{-1}).
    let mut out = Vec::with_capacity(kx + 1);
    for k in 0..=kmax as i64 {
        let lo = -(depth as i64) + k;
        let mut s = LaurentZ::zero(lo, k, b).expect("nonempty");
        for a in 0..=k {
            let f = Rat::new(factorial(k as u64), factorial(a as u64));
            for i in 0..=depth as i64 {
                let d = a - i;
                if d < lo {
                    continue;
                }
                let v = &m[(k - a) as usize][i as usize];
                if v.is_zero() {
                    continue;
                }
                let cur = s.coeff(d).expect("inside");
                s.set_coeff(d, &cur + &v.scale(&f)).expect("inside");
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// Expansion of one `∂_{t_1}^k w_B(0; z)` in a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanResult {
    pub k: u32,
    pub basis: &'static str,
    /// `coefficients[j]` multiplies the `j`-th basis vector.
    pub coefficients: Vec<Scalar>,
    pub residual: LaurentZ,
    /// Degrees on which the residual was required to vanish.
    pub checked: (i64, i64),
}

fn solve(k: u32, target: &LaurentZ, basis: &[LaurentZ], name: &'static str) -> SpanResult {
    let mut res = target.clone();
    let mut coeffs = vec![Scalar::zero(target.beta_order()); k as usize + 1];
    for j in (0..=k).rev() {
        let c = res.coeff(j as i64).expect("inside");
        res = res.sub(&basis[j as usize].scale(&c));
        coeffs[j as usize] = c;
    }
    SpanResult {
        k,
        basis: name,
        coefficients: coeffs,
        checked: (res.lo(), k as i64),
        residual: res,
    }
}

/// Writes each `∂_{t_1}^k w_B(0; z)`, `k ≤ kmax`, in the basis `Φ_0..Φ_k`
/// (and in the unmodified basis) by a triangular solve on the degrees
/// `k, …, 0`, then requires the residual to vanish on `[-depth+k, k]` and the
/// `Φ_k`-coefficient to be 1.
pub fn span_check(
    provider: &dyn AffineCoordinates,
    kmax: u32,
    depth: u32,
    weight: u32,
) -> Result<(Report, Vec<SpanResult>)> {
    let derivs = wave_derivatives(provider, kmax, depth, weight)?;
    let b = provider.beta_order();
    let phis: Vec<LaurentZ> = (0..=kmax).map(|k| phi_basis(provider, k, depth)).collect();
    let raws: Vec<LaurentZ> = (0..=kmax).map(|k| raw_basis(provider, k, depth)).collect();
    let mut report = Report::new("span")
        .param("provider", provider.label())
        .param("kmax", kmax)
        .param("depth", depth)
        .param("weight", weight)
        .param("beta_order", b);
    let mut results = Vec::new();
    for (k, w) in derivs.iter().enumerate() {
        let k = k as u32;
        for (basis, name) in [(&phis, "Phi"), (&raws, "raw")] {
            let r = solve(k, w, basis, name);
            let check = format!("d^{k} w_B(0) in span {name}_0..{name}_{k}");
            let zero = LaurentZ::zero(r.checked.0, r.checked.1, b).expect("nonempty");
            report.compare(
                &check,
                r.checked.0,
                r.checked.1,
                r.residual.compare_on(&zero, r.checked.0..=r.checked.1),
            );
            if r.coefficients[k as usize] != Scalar::one(b) {
                report.fail(Failure {
                    check: format!("leading coefficient of d^{k} w_B(0) in {name}"),
                    location: format!("{name}_{k}"),
                    left: Some(r.coefficients[k as usize].to_json()),
                    right: Some(Scalar::one(b).to_json()),
                });
            }
            results.push(r);
        }
    }
    Ok((report, results))
}

/// `wave_principal = Φ_0` on `[-depth, 0]`, then [`span_check`].
pub fn wave_suite(
    provider: &dyn AffineCoordinates,
    kmax: u32,
    depth: u32,
    weight: u32,
) -> Result<Report> {
    let w0 = wave_principal(provider, depth);
    let phi0 = phi_basis(provider, 0, depth);
    let (span, _) = span_check(provider, kmax, depth, weight)?;
    let lo = -(depth as i64);
    let mut report = Report::new("wave")
        .param("provider", provider.label())
        .param("kmax", kmax)
        .param("depth", depth)
        .param("weight", weight)
        .param("beta_order", provider.beta_order());
    report.compare("w_B(0) = Phi_0", lo, 0, w0.compare_on(&phi0, lo..=0));
    for c in span.checked_ranges {
        report.checked_ranges.push(c);
    }
    if let Some(f) = span.first_failure {
        report.fail(f);
    }
    Ok(report)
}
