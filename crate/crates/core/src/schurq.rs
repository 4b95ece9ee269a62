//! Schur Q-functions in the `Q_μ(t/2)` normalization.
//!
//! The one-row functions are fixed by `Σ_n Q_(n)(t/2) z^n = exp(Σ_{k odd} t_k z^k)`.
//! Two-row functions come from
//! `Q_(m,n) = q_m q_n + 2 Σ_{i=1}^{n} (-1)^i q_{m+i} q_{n-i}` and general ones
//! from the Pfaffian of the two-row matrix, padding odd lengths with a part 0
//! (`Q_(m,0) = q_m`).
//!
//! The construction is generic in the ring holding the one-row values, so the
//! same code yields `Q_μ` as a polynomial in the times ([`q_strict`]) and its
//! value under the shifted principal specialization ([`q_shifted_principal`]).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::partitions::{odd_partitions, StrictPartition};
use crate::ring::{
    factorial, pfaffian, rat, sign, AntisymMatrix, LaurentZ, Rat, Ring, Scalar, ScalarJson,
};

/// Monomial `Π t_{2i+1}^{e_i}` stored as the exponent vector `e` without
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TMonomial(Vec<u32>);

impl TMonomial {
    pub fn one() -> Self {
        TMonomial(Vec::new())
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        TMonomial(exps)
    }

    /// `t_k^e` for odd `k`.
    pub fn var_pow(k: u32, e: u32) -> Self {
        assert!(k % 2 == 1, "only odd times exist");
        let mut v = vec![0; (k as usize - 1) / 2 + 1];
        v[(k as usize - 1) / 2] = e;
        Self::from_exponents(v)
    }

    /// Exponent of `t_k`.
    pub fn exponent(&self, k: u32) -> u32 {
        if k.is_multiple_of(2) {
            return 0;
        }
        self.0.get((k as usize - 1) / 2).copied().unwrap_or(0)
    }

    /// `(k, e)` for every `t_k^e` with `e > 0`.
    pub fn factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| (2 * i as u32 + 1, *e))
    }

    /// Weighted degree, `t_k` having weight `k`.
    pub fn weight(&self) -> u32 {
        self.factors().map(|(k, e)| k * e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
            .collect();
        TMonomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for TMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors()
            .map(|(k, e)| {
                if e == 1 {
                    format!("t{k}")
                } else {
                    format!("t{k}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Polynomial in `t_1, t_3, t_5, …` truncated at weighted degree `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly {
    weight_cutoff: u32,
    beta_order: u32,
    terms: BTreeMap<TMonomial, Scalar>,
}

/// One term of a serialized [`TPoly`].
#[derive(Clone, Debug, Serialize)]
pub struct TermEntry {
    pub monomial: String,
    pub weight: u32,
    pub coeff: ScalarJson,
}

impl TPoly {
    pub fn zero(weight_cutoff: u32, beta_order: u32) -> Self {
        TPoly {
            weight_cutoff,
            beta_order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(weight_cutoff: u32, beta_order: u32) -> Self {
        Self::constant(Scalar::one(beta_order), weight_cutoff)
    }

    pub fn constant(c: Scalar, weight_cutoff: u32) -> Self {
        let mut p = Self::zero(weight_cutoff, c.beta_order());
        p.add_term(TMonomial::one(), c);
        p
    }

    pub fn weight_cutoff(&self) -> u32 {
        self.weight_cutoff
    }

    pub fn beta_order(&self) -> u32 {
        self.beta_order
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·m`; dropped when `m` is above the weight cutoff.
    pub fn add_term(&mut self, m: TMonomial, c: Scalar) {
        if m.weight() > self.weight_cutoff || c.is_zero() {
            return;
        }
        let c = c.truncate(self.beta_order);
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(m, c);
                }
            }
        }
    }

    pub fn coeff(&self, m: &TMonomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.beta_order))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TMonomial, &Scalar)> {
        self.terms.iter()
    }

    /// Terms sorted by weight, then by exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&TMonomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (a.0.weight(), a.0).cmp(&(b.0.weight(), b.0)));
        v
    }

    pub fn to_entries(&self) -> Vec<TermEntry> {
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| TermEntry {
                monomial: m.to_string(),
                weight: m.weight(),
                coeff: c.to_json(),
            })
            .collect()
    }

    fn combine(&self, other: &Self) -> Self {
        Self::zero(
            self.weight_cutoff.min(other.weight_cutoff),
            self.beta_order.min(other.beta_order),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.combine(other);
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -&*v;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.combine(other);
        for (ma, ca) in &self.terms {
            let wa = ma.weight();
            for (mb, cb) in &other.terms {
                if wa + mb.weight() > out.weight_cutoff {
                    continue;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.weight_cutoff, self.beta_order.min(c.beta_order()));
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.weight_cutoff, self.beta_order);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.scale(c));
        }
        out
    }

    /// Evaluation at `t = (p, 0, 0, …)`.
    pub fn eval_delta(&self) -> Scalar {
        let mut out = Scalar::zero(self.beta_order);
        for (m, c) in &self.terms {
            if m.0.len() <= 1 {
                out += &c.mul_p_pow(m.exponent(1));
            }
        }
        out
    }

    /// Evaluation at `t_k = -2/(k z^k)`, as a series known on `[-depth, 0]`.
    pub fn eval_principal(&self, depth: i64) -> LaurentZ {
        let mut out = LaurentZ::zero(-depth, 0, self.beta_order).expect("depth >= 0");
        for (m, c) in &self.terms {
            let w = m.weight() as i64;
            if w > depth {
                continue;
            }
            let mut factor = Rat::one();
            for (k, e) in m.factors() {
                for _ in 0..e {
                    factor *= rat(-2, k as i64);
                }
            }
            let cur = out.coeff(-w).expect("inside window");
            out.set_coeff(-w, &cur + &c.scale(&factor))
                .expect("inside window");
        }
        out
    }
}

impl Ring for TPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.weight_cutoff, self.beta_order)
    }
    fn one_like(&self) -> Self {
        Self::one(self.weight_cutoff, self.beta_order)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &Rat) -> Self {
        self.scale_rat(c)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| format!("({c})*{m}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Q_(n)(t/2)`, the `z^n` coefficient of `exp(Σ_{k odd} t_k z^k)`.
///
/// Equal to `Σ Π_k t_k^{m_k}/m_k!` over partitions of `n` into odd parts with
/// multiplicities `m_k`. Zero when `n` exceeds the cutoff.
pub fn q_onerow(n: u32, weight_cutoff: u32, beta_order: u32) -> TPoly {
    let mut out = TPoly::zero(weight_cutoff, beta_order);
    if n > weight_cutoff {
        return out;
    }
    for lambda in odd_partitions(n) {
        let mut denom = num_bigint::BigInt::one();
        let mut exps = Vec::new();
        for (k, m) in lambda.multiplicities() {
            denom *= factorial(m as u64);
            let idx = (k as usize - 1) / 2;
            if exps.len() <= idx {
                exps.resize(idx + 1, 0);
            }
            exps[idx] = m;
        }
        let c = Rat::new(num_bigint::BigInt::one(), denom);
        out.add_term(
            TMonomial::from_exponents(exps),
            Scalar::constant(c, beta_order),
        );
    }
    out
}

/// `Q_(m,n)` from one-row values, valid for any `m, n ≥ 0`.
pub fn two_row<T: Ring>(m: u32, n: u32, q: &impl Fn(u32) -> T) -> T {
    let mut acc = q(m).times(&q(n));
    for i in 1..=n {
        let term = q(m + i)
            .times(&q(n - i))
            .scaled(&(sign(i as i64) * Rat::from_integer(2.into())));
        acc = acc.plus(&term);
    }
    acc
}

/// `Q_μ` from one-row values `q(n)` (with `q(0)` the unit), through the
/// two-row recursion and the Pfaffian.
pub fn q_from_onerow<T: Ring>(mu: &StrictPartition, unit: &T, q: &impl Fn(u32) -> T) -> T {
    match mu.parts() {
        [] => unit.clone(),
        [m] => q(*m),
        [m, n] => two_row(*m, *n, q),
        _ => {
            let parts = mu.padded_parts();
            let mat = AntisymMatrix::from_upper(parts.len(), unit.clone(), |i, j| {
                two_row(parts[i], parts[j], q)
            });
            pfaffian(&mat).expect("padded to even dimension")
        }
    }
}

fn memo_onerow<T: Ring>(max: u32, f: impl Fn(u32) -> T) -> Vec<T> {
    (0..=max).map(f).collect()
}

/// `Q_μ(t/2)` as a polynomial in the times, truncated at weight `W`.
pub fn q_strict(mu: &StrictPartition, weight_cutoff: u32, beta_order: u32) -> TPoly {
    let max = 2 * mu.parts().first().copied().unwrap_or(0);
    let table = memo_onerow(max, |n| q_onerow(n, weight_cutoff, beta_order));
    let unit = TPoly::one(weight_cutoff, beta_order);
    q_from_onerow(mu, &unit, &|n| table[n as usize].clone())
}

/// `Q_μ(δ_{k,1} p / 2)`, i.e. `Q_μ(t/2)` at `t = (p, 0, 0, …)`, in closed form:
/// `p^{|μ|} / Π μ_i! · Π_{i<j} (μ_i - μ_j)/(μ_i + μ_j)`.
pub fn specialize_delta(mu: &StrictPartition, beta_order: u32) -> Scalar {
    let parts = mu.parts();
    let mut c = Rat::one();
    for &m in parts {
        c /= Rat::from_integer(factorial(m as u64));
    }
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            c *= rat(
                parts[i] as i64 - parts[j] as i64,
                parts[i] as i64 + parts[j] as i64,
            );
        }
    }
    Scalar::monomial(c, mu.weight(), 0, beta_order)
}

/// Polynomial in `x` and `u = z^{-1}` with rational coefficients, truncated
/// at `x`-degree `xmax` and `u`-degree `umax`.
///
/// Holds values of Schur Q-functions under the shifted principal
/// specialization `t_1 = x - 2/z`, `t_k = -2/(k z^k)` (`k ≥ 3`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XUPoly {
    xmax: u32,
    umax: u32,
    terms: BTreeMap<(u32, u32), Rat>,
}

impl XUPoly {
    pub fn zero(xmax: u32, umax: u32) -> Self {
        XUPoly {
            xmax,
            umax,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(xmax: u32, umax: u32) -> Self {
        let mut p = Self::zero(xmax, umax);
        p.add_term(0, 0, Rat::one());
        p
    }

    pub fn xmax(&self) -> u32 {
        self.xmax
    }

    pub fn umax(&self) -> u32 {
        self.umax
    }

    pub fn add_term(&mut self, xe: u32, ue: u32, c: Rat) {
        if xe > self.xmax || ue > self.umax || c.is_zero() {
            return;
        }
        let e = self.terms.entry((xe, ue)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(xe, ue));
        }
    }

    /// Coefficient of `x^xe u^ue`.
    pub fn coeff(&self, xe: u32, ue: u32) -> Rat {
        self.terms.get(&(xe, ue)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    fn binary(&self, other: &Self) -> Self {
        Self::zero(self.xmax.min(other.xmax), self.umax.min(other.umax))
    }
}

impl Ring for XUPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.xmax, self.umax)
    }
    fn one_like(&self) -> Self {
        Self::one(self.xmax, self.umax)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.binary(other);
        for ((x, u), c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(*x, *u, c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = self.binary(other);
        for ((xa, ua), ca) in &self.terms {
            for ((xb, ub), cb) in &other.terms {
                out.add_term(xa + xb, ua + ub, ca * cb);
            }
        }
        out
    }
    fn negated(&self) -> Self {
        self.scaled(&-Rat::one())
    }
    fn scaled(&self, c: &Rat) -> Self {
        let mut out = self.zero_like();
        for ((x, u), v) in &self.terms {
            out.add_term(*x, *u, v * c);
        }
        out
    }
}

/// One-row value under `t_1 = x - 2/z`, `t_k = -2/(k z^k)`.
///
/// `exp(x w)·(1 - w/z)/(1 + w/z)` has `w^n` coefficient
/// `Σ_j x^j/j! · c_{n-j} z^{-(n-j)}` with `c_0 = 1`, `c_i = 2(-1)^i`.
pub fn onerow_shifted_principal(n: u32, xmax: u32, umax: u32) -> XUPoly {
    let mut out = XUPoly::zero(xmax, umax);
    for j in 0..=n {
        let i = n - j;
        let c = if i == 0 {
            Rat::one()
        } else {
            sign(i as i64) * Rat::from_integer(2.into())
        };
        out.add_term(j, i, c / Rat::from_integer(factorial(j as u64)));
    }
    out
}

/// `Q_μ(t/2)` at `t_1 = x - 2/z`, `t_k = -2/(k z^k)`.
pub fn q_shifted_principal(mu: &StrictPartition, xmax: u32, umax: u32) -> XUPoly {
    let max = 2 * mu.parts().first().copied().unwrap_or(0);
    let table = memo_onerow(max, |n| onerow_shifted_principal(n, xmax, umax));
    q_from_onerow(mu, &XUPoly::one(xmax, umax), &|n| table[n as usize].clone())
}

/// `Q_μ(t/2)` at `t_k = -2/(k z^k)`, known on `[-depth, 0]`.
///
/// Fed through the same recursion as [`q_strict`] with `q_0 ↦ 1` and
/// `q_n ↦ 2(-1)^n z^{-n}`.
pub fn specialize_principal(mu: &StrictPartition, depth: u32, beta_order: u32) -> LaurentZ {
    let v = q_shifted_principal(mu, 0, depth);
    let coeffs = (0..=depth)
        .rev()
        .map(|i| Scalar::constant(v.coeff(0, i), beta_order))
        .collect();
    LaurentZ::from_coeffs(-(depth as i64), coeffs, beta_order).expect("nonempty window")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::strict_partitions_up_to;
    use crate::ring::int;

    fn sp(v: &[u32]) -> StrictPartition {
        StrictPartition::new(v.to_vec()).unwrap()
    }

    fn t(k: u32, e: u32) -> TMonomial {
        TMonomial::var_pow(k, e)
    }

    fn c(r: Rat) -> Scalar {
        Scalar::constant(r, 0)
    }

    #[test]
    fn onerow_small() {
        assert_eq!(q_onerow(0, 5, 0), TPoly::one(5, 0));
        let q1 = q_onerow(1, 5, 0);
        assert_eq!(q1.len(), 1);
        assert_eq!(q1.coeff(&t(1, 1)), c(int(1)));
        let q3 = q_onerow(3, 5, 0);
        assert_eq!(q3.len(), 2);
        assert_eq!(q3.coeff(&t(1, 3)), c(rat(1, 6)));
        assert_eq!(q3.coeff(&t(3, 1)), c(int(1)));
        assert!(q_onerow(6, 5, 0).is_empty());
    }

    #[test]
    fn generating_function() {
        // exp(Σ t_k z^k) = Π_k Σ_m t_k^m z^{km}/m!, multiplied out in z.
        let w = 9;
        let mut gen: Vec<TPoly> = (0..=w).map(|_| TPoly::zero(w, 0)).collect();
        gen[0] = TPoly::one(w, 0);
        for k in (1..=w).step_by(2) {
            let mut next: Vec<TPoly> = (0..=w).map(|_| TPoly::zero(w, 0)).collect();
            for (deg, poly) in gen.iter().enumerate() {
                let mut m = 0;
                while deg as u32 + k * m <= w {
                    let f = Rat::new(1.into(), factorial(m as u64));
                    let mut mono = TPoly::zero(w, 0);
                    mono.add_term(t(k, m), c(f));
                    let idx = deg + (k * m) as usize;
                    next[idx] = next[idx].add(&poly.mul(&mono));
                    m += 1;
                }
            }
            gen = next;
        }
        for n in 0..=w {
            assert_eq!(gen[n as usize], q_onerow(n, w, 0), "n = {n}");
        }
    }

    #[test]
    fn two_row_21() {
        let q = q_strict(&sp(&[2, 1]), 6, 0);
        let mut want = TPoly::zero(6, 0);
        want.add_term(t(1, 3), c(rat(1, 6)));
        want.add_term(t(3, 1), c(int(-2)));
        assert_eq!(q, want);
        assert_eq!(q.eval_delta(), Scalar::monomial(rat(1, 6), 3, 0, 0));
    }

    #[test]
    fn empty_is_one() {
        assert_eq!(q_strict(&StrictPartition::empty(), 4, 2), TPoly::one(4, 2));
        assert_eq!(
            specialize_delta(&StrictPartition::empty(), 1),
            Scalar::one(1)
        );
        let s = specialize_principal(&StrictPartition::empty(), 4, 0);
        assert_eq!(s.coeff(0), Some(Scalar::one(0)));
        assert_eq!(s.coeff(-1), Some(Scalar::zero(0)));
    }

    #[test]
    fn delta_closed_form_examples() {
        assert_eq!(
            specialize_delta(&sp(&[4]), 0),
            Scalar::monomial(rat(1, 24), 4, 0, 0)
        );
        assert_eq!(
            specialize_delta(&sp(&[2, 1]), 0),
            Scalar::monomial(rat(1, 6), 3, 0, 0)
        );
    }

    #[test]
    fn delta_matches_polynomial() {
        for mu in strict_partitions_up_to(10) {
            let q = q_strict(&mu, mu.weight(), 0);
            assert_eq!(q.eval_delta(), specialize_delta(&mu, 0), "mu = {mu}");
        }
    }

    #[test]
    fn principal_examples() {
        let s1 = specialize_principal(&sp(&[1]), 5, 0);
        assert_eq!(s1.coeff(-1), Some(c(int(-2))));
        assert_eq!(s1.coeff(0), Some(c(int(0))));
        let s21 = specialize_principal(&sp(&[2, 1]), 5, 0);
        assert!(s21.iter_desc().all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn principal_matches_polynomial() {
        let depth = 8;
        for mu in strict_partitions_up_to(8) {
            let via_recursion = specialize_principal(&mu, depth, 0);
            let via_poly = q_strict(&mu, depth, 0).eval_principal(depth as i64);
            assert_eq!(
                via_recursion.compare_on(&via_poly, -(depth as i64)..=0),
                Ok(()),
                "mu = {mu}"
            );
        }
    }

    #[test]
    fn two_row_antisymmetry() {
        let w = 12;
        let table: Vec<TPoly> = (0..=w).map(|n| q_onerow(n, w, 0)).collect();
        let q = |n: u32| table[n as usize].clone();
        for m in 1..=6 {
            for n in 1..m {
                let a = two_row(m, n, &q);
                let b = two_row(n, m, &q);
                assert!(a.add(&b).is_empty(), "({m},{n})");
            }
        }
    }

    #[test]
    fn shifted_principal_at_x_zero_is_principal() {
        for mu in strict_partitions_up_to(7) {
            let v = q_shifted_principal(&mu, 3, 9);
            let p = specialize_principal(&mu, 9, 0);
            for i in 0..=9u32 {
                assert_eq!(
                    Some(c(v.coeff(0, i))),
                    p.coeff(-(i as i64)),
                    "mu = {mu}, i = {i}"
                );
            }
        }
    }

    #[test]
    fn shifted_principal_u_zero_is_delta() {
        // At u = 0 only t_1 = x survives.
        for mu in strict_partitions_up_to(7) {
            let v = q_shifted_principal(&mu, 8, 8);
            let d = specialize_delta(&mu, 0);
            assert_eq!(
                v.coeff(mu.weight(), 0),
                d.coeff(mu.weight(), 0),
                "mu = {mu}"
            );
        }
    }

    #[test]
    fn monomial_display() {
        assert_eq!(t(1, 3).mul(&t(3, 1)).to_string(), "t1^3*t3");
        assert_eq!(TMonomial::one().to_string(), "1");
        assert_eq!(t(5, 2).weight(), 10);
    }
}
