//! Neutral fermions and a brute-force Wick oracle for `τ`'s coefficients.
//!
//! Conventions: `φ_m φ_n + φ_n φ_m = (-1)^m δ_{m+n,0}`, `φ_i|0⟩ = 0` for
//! `i < 0`, `⟨0|φ_i = 0` for `i > 0`, `⟨0|φ_0|0⟩ = 0`. The only nonzero pair
//! values are `⟨φ_{-k} φ_k⟩ = (-1)^k` (`k > 0`) and `⟨φ_0 φ_0⟩ = 1/2`.
//!
//! `A = Σ_{n,m≥0} a_{n,m} φ_m φ_n`. The coefficient of `Q_μ(t/2)` is read off
//! by pairing `e^A|0⟩` with `⟨0|φ_{-μ_l}⋯φ_{-μ_1}` (preceded by `φ_0` when
//! `l(μ)` is odd) and dividing by that bra's value on the basis vector of `μ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::affine::AffineCoordinates;
use crate::partitions::StrictPartition;
use crate::ring::{factorial, rat, sign, Rat, Scalar};
use crate::{Error, Result};

/// Product `φ_{i_1} φ_{i_2} ⋯` of neutral fermions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FermionWord {
    pub indices: Vec<i64>,
}

impl FermionWord {
    pub fn new(indices: Vec<i64>) -> Self {
        FermionWord { indices }
    }
}

/// `⟨0|φ_i φ_j|0⟩`.
pub fn pair_value(i: i64, j: i64) -> Rat {
    if i < 0 && j == -i {
        sign(i)
    } else if i == 0 && j == 0 {
        rat(1, 2)
    } else {
        Rat::zero()
    }
}

/// `⟨0|word|0⟩` by Wick's theorem, expanding along the first letter.
pub fn vev(word: &FermionWord) -> Rat {
    if word.indices.len() % 2 == 1 {
        return Rat::zero();
    }
    wick(&word.indices)
}

fn wick(w: &[i64]) -> Rat {
    if w.is_empty() {
        return Rat::one();
    }
    let first = w[0];
    // A positive index on the far left is annihilated by ⟨0|.
    if first > 0 {
        return Rat::zero();
    }
    let mut acc = Rat::zero();
    let mut rest = Vec::with_capacity(w.len() - 2);
    for q in 1..w.len() {
        let pv = pair_value(first, w[q]);
        if pv.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend_from_slice(&w[1..q]);
        rest.extend_from_slice(&w[q + 1..]);
        let sub = wick(&rest);
        if sub.is_zero() {
            continue;
        }
        // Moving w[q] next to w[0] costs q - 1 transpositions.
        if (q - 1) % 2 == 0 {
            acc += pv * sub;
        } else {
            acc -= pv * sub;
        }
    }
    acc
}

/// One term `a_{n,m} φ_m φ_n` of `A`.
struct ATerm {
    m: i64,
    n: i64,
    coeff: Scalar,
}

/// Terms of `A` whose creators can reach a nonzero pairing with `bra`.
fn relevant_terms(provider: &dyn AffineCoordinates, bra: &[i64]) -> Vec<ATerm> {
    let mut idx: Vec<i64> = vec![0];
    for &i in bra {
        if i < 0 && !idx.contains(&-i) {
            idx.push(-i);
        }
    }
    let mut terms = Vec::new();
    for &n in &idx {
        for &m in &idx {
            let c = provider.a(n as u32, m as u32);
            if !c.is_zero() {
                terms.push(ATerm { m, n, coeff: c });
            }
        }
    }
    terms
}

/// `⟨0| bra · Σ_{k≤order} A^k/k! |0⟩`, by enumerating every word of `A^k`.
pub fn expand_vev(provider: &dyn AffineCoordinates, bra: &[i64], order: u32) -> Scalar {
    let b = provider.beta_order();
    let terms = relevant_terms(provider, bra);
    let mut total = Scalar::zero(b);
    for k in 0..=order {
        let mut acc = Scalar::zero(b);
        let mut word = bra.to_vec();
        let mut counts: BTreeMap<i64, u32> = BTreeMap::new();
        dfs(&terms, k, &mut word, &mut counts, &Scalar::one(b), &mut acc);
        total += &acc.scale(&Rat::new(1.into(), factorial(k as u64)));
    }
    total
}

fn dfs(
    terms: &[ATerm],
    left: u32,
    word: &mut Vec<i64>,
    counts: &mut BTreeMap<i64, u32>,
    coeff: &Scalar,
    acc: &mut Scalar,
) {
    if left == 0 {
        let v = wick(word);
        if !v.is_zero() {
            *acc += &coeff.scale(&v);
        }
        return;
    }
    for t in terms {
        // Each positive creator needs its own annihilator in the bra.
        let bump = |c: &mut BTreeMap<i64, u32>, i: i64| {
            if i > 0 {
                *c.entry(i).or_insert(0) += 1;
            }
        };
        let mut next = counts.clone();
        bump(&mut next, t.m);
        bump(&mut next, t.n);
        if next.values().any(|&c| c > 1) {
            continue;
        }
        word.push(t.m);
        word.push(t.n);
        let c = coeff * &t.coeff;
        dfs(terms, left - 1, word, &mut next, &c, acc);
        word.pop();
        word.pop();
    }
}

/// Coefficient of `Q_μ(t/2)` in `τ` from the fermionic definition, expanding
/// `e^A` to order `order`.
///
/// Orders `≥ ⌈l(μ)/2⌉` are exact; higher orders only add terms that cancel.
pub fn oracle_coeff(
    provider: &dyn AffineCoordinates,
    mu: &StrictPartition,
    order: u32,
) -> Result<Scalar> {
    let l = mu.len();
    let required = l.div_ceil(2) as u32;
    if order < required {
        return Err(Error::InsufficientOrder {
            required: required as usize,
            given: order as usize,
        });
    }
    let mut bra: Vec<i64> = Vec::with_capacity(l + 1);
    if l % 2 == 1 {
        bra.push(0);
    }
    bra.extend(mu.parts().iter().rev().map(|&p| -(p as i64)));
    let raw = expand_vev(provider, &bra, order);
    // The bra pairs with φ_{μ_1}⋯φ_{μ_l}|α(μ)⟩ to (-1)^{|μ|} (even l) or
    // (-1)^{|μ|}/√2 (odd l), and that vector maps to 2^{-l/2} Q_μ(t/2).
    let norm = sign(mu.weight() as i64) / Rat::from_integer(num_traits::pow(2.into(), l / 2));
    Ok(raw.scale(&norm))
}

/// Default expansion order for [`oracle_coeff`]: one past the exact bound.
pub fn default_order(mu: &StrictPartition) -> u32 {
    mu.len().div_ceil(2) as u32 + 1
}

/// `e^{-A} φ_i e^A` as a finite combination `{index: coefficient}`, keeping
/// creators `φ_m` with `m ≤ mmax`.
pub fn conjugated(provider: &dyn AffineCoordinates, i: i64, mmax: u32) -> BTreeMap<i64, Scalar> {
    let b = provider.beta_order();
    let mut out = BTreeMap::new();
    out.insert(i, Scalar::one(b));
    if i <= 0 {
        let k = (-i) as u32;
        let two = Rat::from_integer(2.into()) * sign(i);
        for m in 0..=mmax {
            let c = &(&provider.a(k, 0) * &provider.a(0, m)) - &provider.a(k, m);
            let c = c.scale(&two);
            if !c.is_zero() {
                let e = out.entry(m as i64).or_insert_with(|| Scalar::zero(b));
                *e += &c;
            }
        }
    }
    out
}

/// `⟨0|φ_i φ_j e^A|0⟩` from the conjugation formula: since `⟨0|A = 0`, it
/// equals the pair value of `e^{-A}φ_i e^A` and `e^{-A}φ_j e^A`.
pub fn pair_vev_conjugated(provider: &dyn AffineCoordinates, i: i64, j: i64) -> Scalar {
    let b = provider.beta_order();
    let mmax = i.unsigned_abs().max(j.unsigned_abs()) as u32;
    let x = conjugated(provider, i, mmax);
    let y = conjugated(provider, j, mmax);
    let mut acc = Scalar::zero(b);
    for (p, cp) in &x {
        for (q, cq) in &y {
            let v = pair_value(*p, *q);
            if !v.is_zero() {
                acc += &(cp * cq).scale(&v);
            }
        }
    }
    acc
}

/// `⟨0|φ_i φ_j e^A|0⟩` by expanding `e^A` to order 3.
pub fn pair_vev_expanded(provider: &dyn AffineCoordinates, i: i64, j: i64) -> Scalar {
    expand_vev(provider, &[i, j], 3)
}
