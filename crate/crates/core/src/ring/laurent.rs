use std::ops::RangeInclusive;

use serde::Serialize;

use super::{Rat, Scalar};
use crate::{Error, Result};

/// Truncated Laurent series in `z` with [`Scalar`] coefficients.
///
/// Represents an element of `C[z] ⊕ z^{-1}C[[z^{-1}]]` known exactly on the
/// window `[lo, hi]`:
/// * coefficients of degree `> hi` are zero,
/// * coefficients of degree `< lo` are unknown.
///
/// Every operation computes the window on which its result is still exact;
/// nothing below `lo` is ever read as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentZ {
    lo: i64,
    hi: i64,
    coeffs: Vec<Scalar>,
    beta_order: u32,
}

/// A coefficient that differs between two series, as reported by
/// [`LaurentZ::compare_on`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffMismatch {
    pub degree: i64,
    pub left: Option<Scalar>,
    pub right: Option<Scalar>,
}

impl LaurentZ {
    /// The zero series known on `[lo, hi]`.
    pub fn zero(lo: i64, hi: i64, beta_order: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        Ok(LaurentZ {
            lo,
            hi,
            coeffs: vec![Scalar::zero(beta_order); (hi - lo + 1) as usize],
            beta_order,
        })
    }

    /// `c·z^k`, known on `[lo, max(k, lo)]`.
    pub fn monomial(k: i64, c: Scalar, lo: i64) -> Self {
        let order = c.beta_order();
        let hi = k.max(lo);
        let mut s = Self::zero(lo, hi, order).expect("lo <= hi");
        if k >= lo {
            s.coeffs[(k - lo) as usize] = c;
        }
        s
    }

    /// Builds from coefficients listed from degree `lo` upwards.
    pub fn from_coeffs(lo: i64, coeffs: Vec<Scalar>, beta_order: u32) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyWindow { lo, hi: lo - 1 });
        }
        let hi = lo + coeffs.len() as i64 - 1;
        let coeffs = coeffs.into_iter().map(|c| c.truncate(beta_order)).collect();
        Ok(LaurentZ {
            lo,
            hi,
            coeffs,
            beta_order,
        })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn beta_order(&self) -> u32 {
        self.beta_order
    }

    pub fn window(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }

    /// Coefficient of `z^d`; `None` when `d` is below the known window.
    pub fn coeff(&self, d: i64) -> Option<Scalar> {
        if d < self.lo {
            None
        } else if d > self.hi {
            Some(Scalar::zero(self.beta_order))
        } else {
            Some(self.coeffs[(d - self.lo) as usize].clone())
        }
    }

    fn coeff_ref(&self, d: i64) -> &Scalar {
        &self.coeffs[(d - self.lo) as usize]
    }

    pub fn set_coeff(&mut self, d: i64, c: Scalar) -> Result<()> {
        if d < self.lo || d > self.hi {
            return Err(Error::OutsideWindow {
                degree: d,
                lo: self.lo,
                hi: self.hi,
            });
        }
        let idx = (d - self.lo) as usize;
        self.coeffs[idx] = c.truncate(self.beta_order);
        Ok(())
    }

    /// Highest degree with a nonzero coefficient, if any.
    pub fn top(&self) -> Option<i64> {
        (self.lo..=self.hi)
            .rev()
            .find(|&d| !self.coeff_ref(d).is_zero())
    }

    /// `top()`, or `lo - 1` when the series vanishes on its window.
    fn effective_top(&self) -> i64 {
        self.top().unwrap_or(self.lo - 1)
    }

    /// Forgets everything below `lo`. Raising the floor is always honest.
    pub fn restrict_below(&self, lo: i64) -> Result<Self> {
        if lo <= self.lo {
            return Ok(self.clone());
        }
        if lo > self.hi {
            return Err(Error::EmptyWindow { lo, hi: self.hi });
        }
        Ok(LaurentZ {
            lo,
            hi: self.hi,
            coeffs: self.coeffs[(lo - self.lo) as usize..].to_vec(),
            beta_order: self.beta_order,
        })
    }

    /// Multiplication by `z^m`: both window bounds shift by `m`.
    pub fn shift(&self, m: i64) -> Self {
        LaurentZ {
            lo: self.lo + m,
            hi: self.hi + m,
            coeffs: self.coeffs.clone(),
            beta_order: self.beta_order,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let order = self.beta_order.min(c.beta_order());
        LaurentZ {
            lo: self.lo,
            hi: self.hi,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            beta_order: order,
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        LaurentZ {
            lo: self.lo,
            hi: self.hi,
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
            beta_order: self.beta_order,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale_rat(&-Rat::from_integer(1.into()))
    }

    /// Sum; known where both summands are known.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.max(other.hi);
        let order = self.beta_order.min(other.beta_order);
        let coeffs = (lo..=hi)
            .map(|d| {
                let a = self.coeff(d).expect("d >= lo");
                let b = other.coeff(d).expect("d >= lo");
                if subtract { &a - &b } else { &a + &b }.truncate(order)
            })
            .collect();
        LaurentZ {
            lo,
            hi,
            coeffs,
            beta_order: order,
        }
    }

    /// Product on the honest window.
    ///
    /// Degree `d` of the product is exact iff no unknown coefficient of one
    /// factor meets a possibly nonzero coefficient of the other, which gives
    /// `lo = max(a.lo + top(b), b.lo + top(a))` with `top` the highest
    /// nonzero degree (or `lo - 1` for a vanishing factor).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let lo = (self.lo + other.effective_top()).max(other.lo + self.effective_top());
        let hi = self.hi + other.hi;
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        let order = self.beta_order.min(other.beta_order);
        let mut out = Self::zero(lo, hi, order)?;
        for i in self.lo..=self.hi {
            let a = self.coeff_ref(i);
            if a.is_zero() {
                continue;
            }
            for j in other.lo..=other.hi {
                let d = i + j;
                if d < lo {
                    continue;
                }
                let b = other.coeff_ref(j);
                if b.is_zero() {
                    continue;
                }
                let idx = (d - lo) as usize;
                out.coeffs[idx] += &(a * b);
            }
        }
        Ok(out)
    }

    /// `d/dz`: window `[lo, hi] -> [lo - 1, hi - 1]`.
    pub fn derivative(&self) -> Self {
        let coeffs = (self.lo..=self.hi)
            .map(|k| self.coeff_ref(k).scale(&Rat::from_integer(k.into())))
            .collect();
        LaurentZ {
            lo: self.lo - 1,
            hi: self.hi - 1,
            coeffs,
            beta_order: self.beta_order,
        }
    }

    /// Applies a diagonal operator `z^k ↦ m(k)·z^k`; the window is preserved.
    pub fn map_diagonal(&self, multiplier: impl Fn(i64) -> Scalar) -> Self {
        let coeffs: Vec<Scalar> = (self.lo..=self.hi)
            .map(|k| {
                let c = self.coeff_ref(k);
                if c.is_zero() {
                    c.clone()
                } else {
                    c * &multiplier(k)
                }
            })
            .collect();
        let order = coeffs
            .iter()
            .map(Scalar::beta_order)
            .min()
            .unwrap_or(self.beta_order)
            .min(self.beta_order);
        LaurentZ {
            lo: self.lo,
            hi: self.hi,
            coeffs: coeffs.into_iter().map(|c| c.truncate(order)).collect(),
            beta_order: order,
        }
    }

    /// Compares coefficients on `range`, returning the first mismatch.
    /// A degree unknown on either side counts as a mismatch.
    pub fn compare_on(
        &self,
        other: &Self,
        range: RangeInclusive<i64>,
    ) -> std::result::Result<(), CoeffMismatch> {
        for d in range {
            let a = self.coeff(d);
            let b = other.coeff(d);
            let same = match (&a, &b) {
                (Some(x), Some(y)) => (x - y).is_zero(),
                _ => false,
            };
            if !same {
                return Err(CoeffMismatch {
                    degree: d,
                    left: a,
                    right: b,
                });
            }
        }
        Ok(())
    }

    /// Coefficients on the window as `(degree, coefficient)` pairs, highest
    /// degree first.
    pub fn iter_desc(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        (self.lo..=self.hi)
            .rev()
            .map(move |d| (d, self.coeff_ref(d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;
    use proptest::prelude::*;

    fn c(n: i64) -> Scalar {
        Scalar::constant(int(n), 0)
    }

    fn dense(lo: i64, hi: i64, f: impl Fn(i64) -> i64) -> LaurentZ {
        LaurentZ::from_coeffs(lo, (lo..=hi).map(|d| c(f(d))).collect(), 0).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = dense(-5, 5, |d| if d == 1 || d == 0 { 1 } else { 0 });
        let b = dense(-5, 5, |d| match d {
            1 => 1,
            0 => -1,
            _ => 0,
        });
        let p = a.mul(&b).unwrap();
        assert!(p.lo() <= -4 && p.hi() >= 4);
        for d in -4..=4 {
            let want = match d {
                2 => 1,
                0 => -1,
                _ => 0,
            };
            assert_eq!(p.coeff(d).unwrap(), c(want), "degree {d}");
        }
    }

    #[test]
    fn monomial_shift() {
        let a = dense(-5, 3, |d| d);
        let s = a.shift(-2);
        assert_eq!((s.lo(), s.hi()), (-7, 1));
        let m = LaurentZ::monomial(-2, c(1), -100);
        let p = a.mul(&m).unwrap();
        assert_eq!((p.lo(), p.hi()), (-7, 1));
        for d in -7..=1 {
            assert_eq!(p.coeff(d), s.coeff(d));
        }
    }

    #[test]
    fn telescoping_geometric() {
        let geo = dense(-10, 0, |_| 1);
        let one_minus = dense(-10, 0, |d| match d {
            0 => 1,
            -1 => -1,
            _ => 0,
        });
        let p = geo.mul(&one_minus).unwrap();
        assert!(p.lo() <= -9);
        for d in -9..=0 {
            assert_eq!(p.coeff(d).unwrap(), c(if d == 0 { 1 } else { 0 }));
        }
    }

    #[test]
    fn unknown_below_window() {
        let a = dense(-3, 0, |_| 1);
        assert_eq!(a.coeff(-4), None);
        assert_eq!(a.coeff(7), Some(c(0)));
    }

    #[test]
    fn derivative_window() {
        let a = dense(-3, 2, |d| d + 10);
        let da = a.derivative();
        assert_eq!((da.lo(), da.hi()), (-4, 1));
        assert_eq!(da.coeff(1).unwrap(), c(2 * 12));
        assert_eq!(da.coeff(-4).unwrap(), c(-3 * 7));
    }

    fn arb_series() -> impl Strategy<Value = (i64, Vec<i64>)> {
        (-6i64..3, prop::collection::vec(-4i64..5, 1..8))
    }

    proptest! {
        // On the declared window, the truncated product agrees with the full
        // convolution of the same series extended by arbitrary values below
        // their windows.
        #[test]
        fn window_honesty(
            (alo, acs) in arb_series(),
            (blo, bcs) in arb_series(),
            junk_a in prop::collection::vec(-9i64..9, 12),
            junk_b in prop::collection::vec(-9i64..9, 12),
        ) {
            let a = LaurentZ::from_coeffs(alo, acs.iter().map(|&x| c(x)).collect(), 0).unwrap();
            let b = LaurentZ::from_coeffs(blo, bcs.iter().map(|&x| c(x)).collect(), 0).unwrap();
            let p = a.mul(&b).unwrap();
            let full = |s: &LaurentZ, junk: &[i64], d: i64| -> i64 {
                if d > s.hi() { 0 }
                else if d >= s.lo() { s.coeff(d).unwrap().as_constant().unwrap().to_integer().try_into().unwrap() }
                else { junk[((s.lo() - d - 1) as usize) % junk.len()] }
            };
            for d in p.lo()..=p.hi() {
                let mut acc = 0i64;
                for i in (a.lo() - 12)..=a.hi() {
                    let j = d - i;
                    if j < b.lo() - 12 || j > b.hi() { continue; }
                    acc += full(&a, &junk_a, i) * full(&b, &junk_b, j);
                }
                prop_assert_eq!(p.coeff(d).unwrap(), c(acc), "degree {}", d);
            }
        }
    }
}
