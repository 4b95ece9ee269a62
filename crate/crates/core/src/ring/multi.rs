use std::collections::BTreeMap;

use super::{Rat, Scalar};

/// Truncated Laurent series in `nvars` variables with every exponent in
/// `[-bound, bound]`.
///
/// Products drop terms leaving the box, so callers must choose `bound` large
/// enough for the coefficients they read (see `npoint` for the bound used
/// there).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiLaurent {
    nvars: usize,
    bound: i32,
    beta_order: u32,
    terms: BTreeMap<Vec<i32>, Scalar>,
}

impl MultiLaurent {
    pub fn zero(nvars: usize, bound: i32, beta_order: u32) -> Self {
        MultiLaurent {
            nvars,
            bound,
            beta_order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, bound: i32, beta_order: u32) -> Self {
        let mut s = Self::zero(nvars, bound, beta_order);
        s.add_term(vec![0; nvars], Scalar::one(beta_order));
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> i32 {
        self.bound
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

    pub fn in_box(&self, exps: &[i32]) -> bool {
        exps.iter().all(|e| e.abs() <= self.bound)
    }

    /// Adds `c·Π z_i^{exps_i}`; silently dropped outside the box.
    pub fn add_term(&mut self, exps: Vec<i32>, c: Scalar) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() || !self.in_box(&exps) {
            return;
        }
        let c = c.truncate(self.beta_order);
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(exps, c);
                }
            }
        }
    }

    pub fn coeff(&self, exps: &[i32]) -> Scalar {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.beta_order))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        out.bound = self.bound.min(other.bound);
        out.beta_order = self.beta_order.min(other.beta_order);
        out.terms = BTreeMap::new();
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.nvars, self.bound, self.beta_order.min(c.beta_order()));
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.nvars, self.bound, self.beta_order);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.scale(c));
        }
        out
    }

    /// Product, keeping only terms for which `keep` holds (and which lie in
    /// the box).
    pub fn mul_filtered(&self, other: &Self, keep: impl Fn(&[i32]) -> bool) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(
            self.nvars,
            self.bound.min(other.bound),
            self.beta_order.min(other.beta_order),
        );
        let mut buf = vec![0; self.nvars];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for i in 0..self.nvars {
                    buf[i] = ea[i] + eb[i];
                }
                if !out.in_box(&buf) || !keep(&buf) {
                    continue;
                }
                out.add_term(buf.clone(), ca * cb);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_filtered(other, |_| true)
    }

    /// Substitutes `z_i -> -z_i`.
    pub fn negate_var(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.bound, self.beta_order);
        for (e, c) in &self.terms {
            if e[i] % 2 == 0 {
                out.add_term(e.clone(), c.clone());
            } else {
                out.add_term(e.clone(), -c);
            }
        }
        out
    }

    /// Terms odd in every variable.
    pub fn odd_part(&self) -> Self {
        self.filter(|e| e.iter().all(|x| x % 2 != 0))
    }

    pub fn filter(&self, keep: impl Fn(&[i32]) -> bool) -> Self {
        let mut out = Self::zero(self.nvars, self.bound, self.beta_order);
        for (e, c) in &self.terms {
            if keep(e) {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Re-embeds into `nvars` variables: variable `i` of `self` becomes
    /// variable `map[i]` of the result.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(nvars, self.bound, self.beta_order);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] += x;
            }
            out.add_term(ne, c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn product_drops_out_of_box() {
        let mut a = MultiLaurent::zero(2, 2, 0);
        a.add_term(vec![-2, 1], Scalar::one(0));
        let b = a.clone();
        let p = a.mul(&b);
        assert!(p.is_empty());
        let mut c = MultiLaurent::zero(2, 4, 0);
        c.add_term(vec![-2, 1], Scalar::one(0));
        assert_eq!(c.mul(&c).coeff(&[-4, 2]), Scalar::one(0));
    }

    #[test]
    fn negate_and_odd_part() {
        let mut a = MultiLaurent::zero(2, 3, 0);
        a.add_term(vec![-1, -1], Scalar::constant(int(2), 0));
        a.add_term(vec![-2, -1], Scalar::constant(int(3), 0));
        let n = a.negate_var(0);
        assert_eq!(n.coeff(&[-1, -1]), Scalar::constant(int(-2), 0));
        assert_eq!(n.coeff(&[-2, -1]), Scalar::constant(int(3), 0));
        let o = a.odd_part();
        assert_eq!(o.len(), 1);
        assert_eq!(o.odd_part(), o);
    }

    #[test]
    fn embed_swaps() {
        let mut a = MultiLaurent::zero(2, 3, 0);
        a.add_term(vec![-1, 2], Scalar::one(0));
        let e = a.embed(3, &[2, 0]);
        assert_eq!(e.coeff(&[2, 0, -1]), Scalar::one(0));
    }
}
