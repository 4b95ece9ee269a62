//! Connected n-point functions of `log τ` and connected spin Hurwitz numbers.
//!
//! Everything here works at `p = 1`: providers are wrapped in [`AtPOne`] on
//! entry. The `p`-grading of Hurwitz data is `p^{|μ|}` and is not tracked.
//!
//! Truncation: every factor of the cycle products has total degree `≤ 0`,
//! and the `A`-part of a factor has all exponents in `[-D, 0]`. A monomial
//! of total degree `≥ -D` therefore only receives contributions from terms
//! with exponents in `[-D, D]`, so series built with bound `D` are exact on
//! all monomials with negative exponents and total degree `≥ -D`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{AffineCoordinates, AtPOne, CoordTable};
use crate::partitions::{odd_partitions, rh_genus, sym_factor, OddPartition};
use crate::ring::{f_exp, factorial, rat, sign, MultiLaurent, Rat, Scalar};
use crate::{Error, Result};

/// Largest `n` accepted by [`connected_npoint`].
pub const DEFAULT_MAX_N: usize = 5;

/// An `n`-cycle written as the sequence `(σ(1), …, σ(n))` with `σ(1) = 1`
/// (0-based here, so the sequence starts with 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclePermutation {
    order: Vec<usize>,
}

impl CyclePermutation {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `σ(i+1)` with `σ(n+1) = σ(1)`.
    pub fn next(&self, i: usize) -> usize {
        self.order[(i + 1) % self.order.len()]
    }

    /// All `(n-1)!` cycles on `n` letters.
    pub fn all(n: usize) -> Vec<CyclePermutation> {
        if n == 0 {
            return vec![];
        }
        let mut out = Vec::new();
        let mut rest: Vec<usize> = (1..n).collect();
        permute(&mut rest, 0, &mut |p| {
            let mut order = vec![0];
            order.extend_from_slice(p);
            out.push(CyclePermutation { order });
        });
        out.sort_by(|a, b| a.order.cmp(&b.order));
        out
    }
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Which form of the cycle sum to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Signed sum over `ε_2, …, ε_n ∈ {±1}`.
    Full,
    /// `ε = 1` throughout, times `-2^{n-1}`, odd part only.
    Simplified,
}

fn p_one_table(provider: &dyn AffineCoordinates, d: u32) -> CoordTable {
    CoordTable::new(&AtPOne(provider), d)
}

/// `A(w, z)` with exponents in `[-D, 0]`; variable 0 is `w`.
pub fn series_a(provider: &dyn AffineCoordinates, d: u32) -> MultiLaurent {
    let a = p_one_table(provider, d);
    let b = a.beta_order();
    let di = d as i32;
    let mut s = MultiLaurent::zero(2, di, b);
    for n in 1..=di {
        for m in 1..=di {
            let c = a.get(n as u32, m as u32).scale(&sign((n + m + 1) as i64));
            s.add_term(vec![-n, -m], c);
        }
        let h = a.get(n as u32, 0).scale(&(sign(n as i64) * rat(1, 2)));
        s.add_term(vec![-n, 0], -&h);
        s.add_term(vec![0, -n], h);
    }
    s
}

/// `Â(w, z) = A(w, z) - 1/4 - ½ Σ_{i=1}^{D} (-1)^i w^{-i} z^i`.
pub fn series_ahat(provider: &dyn AffineCoordinates, d: u32) -> MultiLaurent {
    let mut s = series_a(provider, d);
    let b = s.beta_order();
    s.add_term(vec![0, 0], Scalar::constant(rat(-1, 4), b));
    for i in 1..=d as i32 {
        s.add_term(
            vec![-i, i],
            Scalar::constant(-sign(i as i64) * rat(1, 2), b),
        );
    }
    s
}

/// `A(-z, z)`, a one-variable series on `[-D, 0]`.
pub fn series_a_diagonal(provider: &dyn AffineCoordinates, d: u32) -> MultiLaurent {
    let a = series_a(provider, d);
    let mut out = MultiLaurent::zero(1, d as i32, a.beta_order());
    for (e, c) in a.terms() {
        let c = if e[0] % 2 == 0 { c.clone() } else { -c };
        out.add_term(vec![e[0] + e[1]], c);
    }
    out
}

/// `Σ_{n odd} (n/2) z_1^{-n} z_2^n` for `n ≤ D`.
pub fn n2_correction(d: u32, beta_order: u32) -> MultiLaurent {
    let mut s = MultiLaurent::zero(2, d as i32, beta_order);
    for n in (1..=d as i32).step_by(2) {
        s.add_term(vec![-n, n], Scalar::constant(rat(n as i64, 2), beta_order));
    }
    s
}

/// `ξ(ε_a z_a, -ε_b z_b)` as a series in `nvars` variables.
fn xi_factor(
    ahat: &MultiLaurent,
    nvars: usize,
    a: usize,
    b: usize,
    ea: i32,
    eb: i32,
) -> MultiLaurent {
    if a < b {
        // Â(ε_a z_a, -ε_b z_b)
        let mut s = ahat.clone();
        if ea < 0 {
            s = s.negate_var(0);
        }
        if eb > 0 {
            s = s.negate_var(1);
        }
        s.embed(nvars, &[a, b])
    } else {
        // -Â(-ε_b z_b, ε_a z_a)
        let mut s = ahat.clone();
        if eb > 0 {
            s = s.negate_var(0);
        }
        if ea < 0 {
            s = s.negate_var(1);
        }
        s.embed(nvars, &[b, a]).scale_rat(&rat(-1, 1))
    }
}

fn cycle_product(
    ahat: &MultiLaurent,
    sigma: &CyclePermutation,
    eps: &[i32],
    d: u32,
) -> MultiLaurent {
    let n = sigma.len();
    let keep = |e: &[i32]| e.iter().sum::<i32>() >= -(d as i32);
    let mut acc = MultiLaurent::one(n, d as i32, ahat.beta_order());
    for i in 0..n {
        let (a, b) = (sigma.order()[i], sigma.next(i));
        let f = xi_factor(ahat, n, a, b, eps[a], eps[b]);
        acc = acc.mul_filtered(&f, keep);
    }
    acc
}

/// Restriction to monomials with every exponent negative and total degree
/// `≥ -D`, the range on which a bound-`D` series is exact.
pub fn extractable(s: &MultiLaurent, d: u32) -> MultiLaurent {
    s.filter(|e| e.iter().all(|&x| x < 0) && e.iter().sum::<i32>() >= -(d as i32))
}

/// The connected `n`-point series `Σ ∂^n log τ/∂t_{i_1}⋯∂t_{i_n}|_0 Π z_j^{-i_j}`,
/// exact on [`extractable`] monomials. `n ≤` [`DEFAULT_MAX_N`].
pub fn connected_npoint(
    provider: &dyn AffineCoordinates,
    n: usize,
    d: u32,
    variant: Variant,
) -> Result<MultiLaurent> {
    connected_npoint_up_to(provider, n, d, variant, DEFAULT_MAX_N)
}

/// [`connected_npoint`] with a caller-chosen limit on `n`.
pub fn connected_npoint_up_to(
    provider: &dyn AffineCoordinates,
    n: usize,
    d: u32,
    variant: Variant,
    max_n: usize,
) -> Result<MultiLaurent> {
    if n == 0 {
        return Err(Error::Unsupported("n-point functions need n >= 1".into()));
    }
    if n > max_n {
        return Err(Error::Unsupported(format!(
            "n = {n} exceeds the n-point limit {max_n}"
        )));
    }
    if (d as usize) < n {
        return Err(Error::InsufficientWindow(format!(
            "bound {d} has no extractable monomials for n = {n}"
        )));
    }
    if n == 1 {
        return Ok(series_a_diagonal(provider, d));
    }
    let ahat = series_ahat(provider, d);
    let b = ahat.beta_order();
    let cycles = CyclePermutation::all(n);
    let sum = match variant {
        Variant::Full => {
            let signs: Vec<Vec<i32>> = (0..1u32 << (n - 1))
                .map(|mask| {
                    let mut e = vec![1];
                    e.extend((0..n - 1).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }));
                    e
                })
                .collect();
            let jobs: Vec<(&CyclePermutation, &Vec<i32>)> = cycles
                .iter()
                .flat_map(|c| signs.iter().map(move |e| (c, e)))
                .collect();
            let parts: Vec<MultiLaurent> = jobs
                .par_iter()
                .map(|(c, eps)| {
                    let prod: i32 = eps.iter().product();
                    cycle_product(&ahat, c, eps, d).scale_rat(&Rat::from_integer((-prod).into()))
                })
                .collect();
            parts
                .iter()
                .fold(MultiLaurent::zero(n, d as i32, b), |a, p| a.add(p))
        }
        Variant::Simplified => {
            let ones = vec![1; n];
            let parts: Vec<MultiLaurent> = cycles
                .par_iter()
                .map(|c| cycle_product(&ahat, c, &ones, d))
                .collect();
            let total = parts
                .iter()
                .fold(MultiLaurent::zero(n, d as i32, b), |a, p| a.add(p));
            total
                .odd_part()
                .scale_rat(&-Rat::from_integer(num_traits::pow(2.into(), n - 1)))
        }
    };
    if n == 2 {
        Ok(sum.add(&n2_correction(d, b).scale_rat(&rat(-1, 1))))
    } else {
        Ok(sum)
    }
}

/// `Σ_{n-cycles σ} Π_i ξ(z_{σ(i)}, -z_{σ(i+1)})` at the single monomial
/// `Π z_j^{target_j}`, by a transfer-matrix pass along each cycle.
fn cycle_sum_coefficient(ahat: &MultiLaurent, target: &[i32]) -> Scalar {
    let n = target.len();
    let b = ahat.beta_order();
    // ξ(z_a, -z_b) as (exponent of z_a, exponent of z_b, coefficient).
    let lt: Vec<(i32, i32, Scalar)> = ahat
        .terms()
        .map(|(e, c)| (e[0], e[1], if e[1] % 2 == 0 { c.clone() } else { -c }))
        .collect();
    let gt: Vec<(i32, i32, Scalar)> = ahat
        .terms()
        .map(|(e, c)| (e[1], e[0], if e[0] % 2 == 0 { -c } else { c.clone() }))
        .collect();
    let cycles = CyclePermutation::all(n);
    let parts: Vec<Scalar> = cycles
        .par_iter()
        .map(|sigma| {
            let o = sigma.order();
            let factor = |i: usize| if o[i] < sigma.next(i) { &lt } else { &gt };
            // state: (exponent of z_{σ(1)}, exponent of the open variable)
            let mut states: BTreeMap<(i32, i32), Scalar> = BTreeMap::new();
            for (x, y, c) in factor(0) {
                let e = states.entry((*x, *y)).or_insert_with(|| Scalar::zero(b));
                *e += c;
            }
            // Every factor has total degree ≤ 0, so a partial product whose
            // degree is already below the target's can be dropped.
            let floor: i32 = target.iter().sum();
            let mut done = 0;
            for i in 1..n {
                let closing = i == n - 1;
                done += target[o[i]];
                let mut next: BTreeMap<(i32, i32), Scalar> = BTreeMap::new();
                for ((first, open), c) in &states {
                    for (x, y, f) in factor(i) {
                        if open + x != target[o[i]] {
                            continue;
                        }
                        let key = if closing {
                            if first + y != target[o[0]] {
                                continue;
                            }
                            (target[o[0]], 0)
                        } else {
                            if done + first + y < floor {
                                continue;
                            }
                            (*first, *y)
                        };
                        let e = next.entry(key).or_insert_with(|| Scalar::zero(b));
                        *e += &(c * f);
                    }
                }
                states = next;
            }
            states.into_values().fold(Scalar::zero(b), |a, c| &a + &c)
        })
        .collect();
    parts.iter().fold(Scalar::zero(b), |a, c| &a + c)
}

/// Connected spin Hurwitz generating series `H°_μ(β)` from the cycle sum,
/// using the series bound `D ≥ |μ|`.
pub fn hurwitz_connected(
    provider: &dyn AffineCoordinates,
    mu: &OddPartition,
    d: u32,
) -> Result<Scalar> {
    let w = mu.weight();
    if mu.is_empty() {
        return Err(Error::Unsupported("H° needs a nonempty partition".into()));
    }
    if d < w {
        return Err(Error::InsufficientWindow(format!(
            "bound {d} is below |mu| = {w}"
        )));
    }
    let zmu = sym_factor(mu);
    let n = mu.len();
    if n == 1 {
        let s = series_a_diagonal(provider, d);
        return Ok(s
            .coeff(&[-(w as i32)])
            .scale(&(Rat::from_integer(1.into()) / zmu)));
    }
    let ahat = series_ahat(provider, d);
    let target: Vec<i32> = mu.parts().iter().map(|&p| -(p as i32)).collect();
    let coeff = cycle_sum_coefficient(&ahat, &target);
    let factor = -Rat::from_integer(num_traits::pow(2.into(), n - 1)) / zmu;
    Ok(coeff.scale(&factor))
}

/// `H°_μ` for the spin Hurwitz provider with parameter `r`.
pub fn hurwitz_spin(mu: &OddPartition, r: u32, beta_order: u32) -> Result<Scalar> {
    let a = crate::affine::SpinHurwitz::new(r, beta_order)?;
    hurwitz_connected(&a, mu, mu.weight())
}

/// The closed form
/// `H°_(n) = (1/n) Σ_{k=0}^{n} (-1)^{k+1} (2k-n) e^{f(k)+f(n-k)} / (4n·k!(n-k)!)`.
pub fn hurwitz_single(n: u32, r: u32, beta_order: u32) -> Result<Scalar> {
    if n.is_multiple_of(2) {
        return Err(Error::NotOdd(n));
    }
    let nn = n as i64;
    let mut out = Scalar::zero(beta_order);
    for k in 0..=nn {
        let denom =
            Rat::from_integer(factorial(k as u64) * factorial((nn - k) as u64) * (4 * nn * nn));
        let c = sign(k + 1) * Rat::from_integer((2 * k - nn).into()) / denom;
        let e = &f_exp(k, r, beta_order) * &f_exp(nn - k, r, beta_order);
        out += &e.scale(&c);
    }
    Ok(out)
}

/// One row of the Hurwitz table: the `β^b` coefficient of `H°_μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzRow {
    pub mu: String,
    pub b: u32,
    pub g: Option<u32>,
    pub coefficient: String,
    #[serde(skip)]
    pub value: Rat,
}

/// Nonzero `β^b` coefficients of `H°_μ` for all odd `μ` with `|μ| ≤ max_weight`
/// and `b ≤ beta_order`, ordered by weight, then lexicographically
/// decreasing `μ`, then `b`.
pub fn hurwitz_table(r: u32, beta_order: u32, max_weight: u32) -> Result<Vec<HurwitzRow>> {
    let a = crate::affine::SpinHurwitz::new(r, beta_order)?;
    let mus: Vec<OddPartition> = (1..=max_weight).flat_map(odd_partitions).collect();
    let values: Vec<Result<Scalar>> = mus
        .par_iter()
        .map(|mu| hurwitz_connected(&a, mu, mu.weight()))
        .collect();
    let mut rows = Vec::new();
    for (mu, h) in mus.iter().zip(values) {
        let h = h?;
        for b in 0..=beta_order {
            let c = h.coeff(0, b);
            if c == Rat::from_integer(0.into()) {
                continue;
            }
            rows.push(HurwitzRow {
                mu: mu.to_string(),
                b,
                g: rh_genus(mu, b, r),
                coefficient: format!("{}/{}", c.numer(), c.denom()),
                value: c,
            });
        }
    }
    Ok(rows)
}
