//! The BKP Hirota bilinear identity on truncated data, and the wave-function
//! checks in [`wave`].
//!
//! `Res_z z^{-1} e^{ξ(t-s,z)} τ(t - 2[z^{-1}]) τ(s + 2[z^{-1}]) = τ(t) τ(s)`
//! with `ξ(t,z) = Σ_{k odd} t_k z^k` and `[z^{-1}] = (1/z, 1/(3z^3), …)`.
//!
//! Only `z`-degrees in `[-W, W]` reach a `(t, s)`-monomial of joint weight
//! `≤ W`: a term of `e^ξ` of `z`-degree `d` has weight `d`, and a term of a
//! shifted `τ` of `z`-degree `-d` comes from a `τ`-monomial of weight `d`
//! more than its remaining `t`-weight.

pub mod wave;

use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;

use crate::affine::AffineCoordinates;
use crate::partitions::odd_partitions;
use crate::report::{Failure, Report};
use crate::ring::{factorial, Rat, Scalar};
use crate::schurq::{TMonomial, TPoly};
use crate::tau::tau_expand;
use crate::{Error, Result};

pub use wave::{span_check, wave_principal, SpanResult};

/// A polynomial in `t_1, t_3, …` and `s_1, s_3, …` of joint weight at most
/// the cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSPoly {
    cutoff: u32,
    beta_order: u32,
    terms: BTreeMap<(TMonomial, TMonomial), Scalar>,
}

impl TSPoly {
    pub fn zero(cutoff: u32, beta_order: u32) -> Self {
        TSPoly {
            cutoff,
            beta_order,
            terms: BTreeMap::new(),
        }
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: TMonomial, s: TMonomial, c: Scalar) {
        if c.is_zero() || t.weight() + s.weight() > self.cutoff {
            return;
        }
        let c = c.truncate(self.beta_order);
        let key = (t, s);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(key, c);
                }
            }
        }
    }

    pub fn coeff(&self, t: &TMonomial, s: &TMonomial) -> Scalar {
        self.terms
            .get(&(t.clone(), s.clone()))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.beta_order))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(TMonomial, TMonomial), &Scalar)> {
        self.terms.iter()
    }

    /// `a(t)·b(s)`.
    pub fn tensor(a: &TPoly, b: &TPoly, cutoff: u32) -> Self {
        let mut out = TSPoly::zero(cutoff, a.beta_order().min(b.beta_order()));
        for (ma, ca) in a.terms() {
            if ma.weight() > cutoff {
                continue;
            }
            for (mb, cb) in b.terms() {
                out.add_term(ma.clone(), mb.clone(), ca * cb);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = TSPoly::zero(
            self.cutoff.min(other.cutoff),
            self.beta_order.min(other.beta_order),
        );
        for ((t, s), c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(t.clone(), s.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_upto(other, self.cutoff.min(other.cutoff))
    }

    /// Product truncated at joint weight `cutoff`.
    pub fn mul_upto(&self, other: &Self, cutoff: u32) -> Self {
        let mut out = TSPoly::zero(cutoff, self.beta_order.min(other.beta_order));
        for ((ta, sa), ca) in &self.terms {
            let wa = ta.weight() + sa.weight();
            for ((tb, sb), cb) in &other.terms {
                if wa + tb.weight() + sb.weight() > out.cutoff {
                    continue;
                }
                out.add_term(ta.mul(tb), sa.mul(sb), ca * cb);
            }
        }
        out
    }
}

fn binomial(n: u32, k: u32) -> Rat {
    Rat::new(
        factorial(n as u64),
        factorial(k as u64) * factorial((n - k) as u64),
    )
}

/// `τ(t + c[z^{-1}])` as `out[d]` = coefficient of `z^{-d}`, for `d ≤` the
/// weight of `tau`; `out[d]` is exact up to `t`-weight `W - d`.
pub fn shift_tpoly(tau: &TPoly, c: &Rat) -> Vec<TPoly> {
    let w = tau.weight_cutoff();
    let b = tau.beta_order();
    let mut out: Vec<TPoly> = (0..=w).map(|d| TPoly::zero(w - d, b)).collect();
    for (m, coeff) in tau.terms() {
        // Expand Π_k (t_k + c/(k z^k))^{e_k} factor by factor.
        let mut partial: Vec<(TMonomial, u32, Rat)> = vec![(TMonomial::one(), 0, Rat::one())];
        for (k, e) in m.factors() {
            let step = c / Rat::from_integer(k.into());
            let mut next = Vec::new();
            for (pm, pd, pc) in &partial {
                for j in 0..=e {
                    let f = binomial(e, j) * num_traits::pow(step.clone(), j as usize);
                    next.push((pm.mul(&TMonomial::var_pow(k, e - j)), pd + k * j, pc * f));
                }
            }
            partial = next;
        }
        for (pm, d, pc) in partial {
            out[d as usize].add_term(pm, coeff.scale(&pc));
        }
    }
    out
}

/// Sign of the shift in `τ(t ± 2[z^{-1}])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftSign {
    Plus,
    Minus,
}

/// `τ(t ± 2[z^{-1}])` for `τ` truncated at weight `W`: entry `d` is the
/// coefficient of `z^{-d}`, a polynomial exact up to `t`-weight `W - d`.
pub fn shift_tau(provider: &dyn AffineCoordinates, weight: u32, sign: ShiftSign) -> Vec<TPoly> {
    let tau = tau_expand(provider, weight);
    let c = match sign {
        ShiftSign::Plus => Rat::from_integer(2.into()),
        ShiftSign::Minus => Rat::from_integer((-2).into()),
    };
    shift_tpoly(&tau, &c)
}

/// The `z^d` coefficient of `exp(ξ(t - s, z))`.
pub fn exp_xi_part(d: u32, beta_order: u32) -> TSPoly {
    let mut out = TSPoly::zero(d, beta_order);
    for lam in odd_partitions(d) {
        // Π_k (t_k - s_k)^{m_k} / m_k!
        let mut partial: Vec<(TMonomial, TMonomial, Rat)> =
            vec![(TMonomial::one(), TMonomial::one(), Rat::one())];
        for (k, m) in lam.multiplicities() {
            let inv = Rat::new(1.into(), factorial(m as u64));
            let mut next = Vec::new();
            for (pt, ps, pc) in &partial {
                for j in 0..=m {
                    let sgn = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
                    next.push((
                        pt.mul(&TMonomial::var_pow(k, m - j)),
                        ps.mul(&TMonomial::var_pow(k, j)),
                        pc * binomial(m, j) * &inv * sgn,
                    ));
                }
            }
            partial = next;
        }
        for (t, s, c) in partial {
            out.add_term(t, s, Scalar::constant(c, beta_order));
        }
    }
    out
}

/// Both sides of the Hirota identity up to joint weight `W`:
/// `(residue, τ(t)τ(s))`.
pub fn hirota_sides(tau: &TPoly) -> (TSPoly, TSPoly) {
    let w = tau.weight_cutoff();
    let b = tau.beta_order();
    let minus = shift_tpoly(tau, &Rat::from_integer((-2).into()));
    let plus = shift_tpoly(tau, &Rat::from_integer(2.into()));
    let pairs: Vec<(u32, u32)> = (0..=w)
        .flat_map(|d2| (0..=w - d2).map(move |d3| (d2, d3)))
        .collect();
    let parts: Vec<TSPoly> = pairs
        .par_iter()
        .map(|&(d2, d3)| {
            let e = exp_xi_part(d2 + d3, b);
            let ts = TSPoly::tensor(&minus[d2 as usize], &plus[d3 as usize], w);
            e.mul_upto(&ts, w)
        })
        .collect();
    let lhs = parts.iter().fold(TSPoly::zero(w, b), |acc, p| acc.add(p));
    let rhs = TSPoly::tensor(tau, tau, w);
    (lhs, rhs)
}

fn ts_label(t: &TMonomial, s: &TMonomial) -> String {
    let show = |m: &TMonomial, v: char| -> String {
        let f: Vec<String> = m
            .factors()
            .map(|(k, e)| {
                if e == 1 {
                    format!("{v}{k}")
                } else {
                    format!("{v}{k}^{e}")
                }
            })
            .collect();
        f.join("*")
    };
    let (a, b) = (show(t, 't'), show(s, 's'));
    match (a.is_empty(), b.is_empty()) {
        (true, true) => "1".into(),
        (false, true) => a,
        (true, false) => b,
        (false, false) => format!("{a}*{b}"),
    }
}

/// Compares two `(t, s)`-polynomials coefficientwise into `report`.
pub fn compare_ts(report: &mut Report, check: &str, lhs: &TSPoly, rhs: &TSPoly) {
    let keys: std::collections::BTreeSet<&(TMonomial, TMonomial)> =
        lhs.terms.keys().chain(rhs.terms.keys()).collect();
    for (t, s) in keys {
        let (a, b) = (lhs.coeff(t, s), rhs.coeff(t, s));
        if !(&a - &b).is_zero() {
            report.fail(Failure {
                check: check.to_string(),
                location: ts_label(t, s),
                left: Some(a.to_json()),
                right: Some(b.to_json()),
            });
            return;
        }
    }
}

/// Checks the Hirota identity for `τ` built from `provider`, to joint
/// weight `W` and the provider's β-order. Needs `depth ≥ W`.
pub fn hirota_check(provider: &dyn AffineCoordinates, weight: u32, depth: u32) -> Result<Report> {
    if depth < weight {
        return Err(Error::InsufficientWindow(format!(
            "depth {depth} is below the weight {weight}"
        )));
    }
    let tau = tau_expand(provider, weight);
    let (lhs, rhs) = hirota_sides(&tau);
    let mut report = Report::new("hirota")
        .param("provider", provider.label())
        .param("weight", weight)
        .param("beta_order", provider.beta_order())
        .param("depth", depth);
    compare_ts(&mut report, "residue = tau(t) tau(s)", &lhs, &rhs);
    if report.passed() {
        report.checked("residue = tau(t) tau(s)", "joint weight", 0, weight as i64);
        report.checked("integrand z-degrees", "z", -(weight as i64), weight as i64);
    }
    Ok(report)
}
