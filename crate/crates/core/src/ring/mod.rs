//! Exact coefficient arithmetic.
//!
//! Everything downstream is built on [`Scalar`], a polynomial in the formal
//! variable `p` (kept exactly) and `β` (truncated at a chosen order), with
//! arbitrary-precision rational coefficients. Series types wrap vectors or maps
//! of scalars.

mod laurent;
mod multi;
mod pfaffian;
mod scalar;

pub use laurent::{CoeffMismatch, LaurentZ};
pub use multi::MultiLaurent;
pub use pfaffian::{pfaffian, AntisymMatrix};
pub use scalar::{Scalar, ScalarJson, TermJson};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rat = num_rational::BigRational;

/// Commutative ring operations needed by generic algorithms (the Pfaffian,
/// the Schur Q recursion).
///
/// Elements carry their own truncation data, so the neutral elements are
/// produced from an existing value rather than from nothing.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &Rat) -> Self;
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Rat) -> Self {
        self * c
    }
}

/// `n / d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(-1)^k` as a rational.
pub fn sign(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Truncation of `exp(β·x)` to β-order `beta_order`, for rational `x`.
pub fn exp_trunc(x: &Rat, beta_order: u32) -> Scalar {
    let mut out = Scalar::zero(beta_order);
    let mut term = Rat::one();
    for j in 0..=beta_order {
        if j > 0 {
            term = term * x / int(j as i64);
        }
        out.add_term(0, j, term.clone());
    }
    out
}

/// The completed-cycle weight `k^{r+1}/(r+1)`, i.e. `f(k)/β`.
pub fn completed_cycle_weight(k: i64, r: u32) -> Rat {
    let kb = BigInt::from(k);
    Rat::new(num_traits::pow(kb, (r + 1) as usize), BigInt::from(r + 1))
}

/// `exp(β·k^{r+1}/(r+1))` truncated at β-order `beta_order`.
///
/// `r` is even, so the exponent is odd in `k` and `f_exp(-k)·f_exp(k) = 1`.
pub fn f_exp(k: i64, r: u32, beta_order: u32) -> Scalar {
    exp_trunc(&completed_cycle_weight(k, r), beta_order)
}

/// `exp(f(a) - f(b))` truncated.
pub fn f_exp_diff(a: i64, b: i64, r: u32, beta_order: u32) -> Scalar {
    let x = completed_cycle_weight(a, r) - completed_cycle_weight(b, r);
    exp_trunc(&x, beta_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_exp_at_zero_is_one() {
        assert_eq!(f_exp(0, 2, 5), Scalar::one(5));
    }

    #[test]
    fn f_exp_one_r2_b2() {
        // exp(β/3) = 1 + β/3 + β²/18 + ...
        let mut want = Scalar::one(2);
        want.add_term(0, 1, rat(1, 3));
        want.add_term(0, 2, rat(1, 18));
        assert_eq!(f_exp(1, 2, 2), want);
    }

    #[test]
    fn f_exp_is_odd() {
        for r in [2, 4, 6] {
            for k in 0..6 {
                let prod = &f_exp(k, r, 5) * &f_exp(-k, r, 5);
                assert_eq!(prod, Scalar::one(5), "k={k} r={r}");
            }
        }
    }

    #[test]
    fn exp_additivity() {
        let xs = [rat(1, 3), rat(-7, 2), rat(5, 4), int(0), int(9)];
        for x in &xs {
            for y in &xs {
                let lhs = &exp_trunc(x, 6) * &exp_trunc(y, 6);
                assert_eq!(lhs, exp_trunc(&(x + y), 6));
            }
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
