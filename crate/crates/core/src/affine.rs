//! Affine coordinates `a_{n,m}` of a BKP tau-function.
//!
//! Everything downstream reads coordinates through [`AffineCoordinates`], so
//! tau expansions, n-point functions and the wave-function checks work for any
//! provider. Two families are implemented:
//!
//! * [`SpinHurwitz`], the closed form for spin Hurwitz numbers with completed
//!   `(r+1)`-cycles;
//! * [`DiagonalF`], the general family `e^{f(m)+f(n)}` with `f(m) = β·g(m)` for a
//!   rational weight `g`. The spin case is `g(m) = m^{r+1}/(r+1)`.
//!
//! `p` stays symbolic; [`AtPOne`] substitutes `p = 1`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::ring::{
    completed_cycle_weight, exp_trunc, f_exp, factorial, rat, sign, LaurentZ, Rat, Scalar,
};
use crate::{Error, Result};

/// Antisymmetric coordinates `a_{n,m}`, `n, m ≥ 0`.
pub trait AffineCoordinates: Send + Sync {
    fn a(&self, n: u32, m: u32) -> Scalar;

    fn beta_order(&self) -> u32;

    /// Short human-readable description, used in reports.
    fn label(&self) -> String;
}

impl<T: AffineCoordinates + ?Sized> AffineCoordinates for &T {
    fn a(&self, n: u32, m: u32) -> Scalar {
        (**self).a(n, m)
    }
    fn beta_order(&self) -> u32 {
        (**self).beta_order()
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

impl<T: AffineCoordinates + ?Sized> AffineCoordinates for Box<T> {
    fn a(&self, n: u32, m: u32) -> Scalar {
        (**self).a(n, m)
    }
    fn beta_order(&self) -> u32 {
        (**self).beta_order()
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

/// `p^k / k!` as a rational coefficient times `p^k`.
fn p_over_fact(k: u32, beta_order: u32) -> Scalar {
    Scalar::monomial(Rat::new(1.into(), factorial(k as u64)), k, 0, beta_order)
}

/// Shared shape of every diagonal-f family, given the two exponentials.
fn diagonal_shape(
    n: u32,
    m: u32,
    e_n: impl Fn() -> Scalar,
    e_m: impl Fn() -> Scalar,
    b: u32,
) -> Scalar {
    match (n, m) {
        (0, 0) => Scalar::zero(b),
        (0, m) => &p_over_fact(m, b).scale(&rat(1, 2)) * &e_m(),
        (n, 0) => -(&p_over_fact(n, b).scale(&rat(1, 2)) * &e_n()),
        (n, m) => {
            let c = rat(m as i64 - n as i64, 4 * (m as i64 + n as i64));
            let base = (&p_over_fact(n, b) * &p_over_fact(m, b)).scale(&c);
            &(&base * &e_n()) * &e_m()
        }
    }
}

/// Closed-form spin Hurwitz coordinates:
/// `a_{0,n} = p^n/(2·n!)·e^{f(n)}` and
/// `a_{n,m} = p^{m+n}/(4·m!·n!)·(m-n)/(m+n)·e^{f(m)+f(n)}` for `n, m > 0`,
/// with `f(m) = β m^{r+1}/(r+1)`.
pub fn a_spin(n: u32, m: u32, r: u32, beta_order: u32) -> Scalar {
    diagonal_shape(
        n,
        m,
        || f_exp(n as i64, r, beta_order),
        || f_exp(m as i64, r, beta_order),
        beta_order,
    )
}

/// The diagonal-f coordinates for `f(m) = β·weight(m)`.
pub fn a_diagonal_f(n: u32, m: u32, weight: &dyn Fn(i64) -> Rat, beta_order: u32) -> Scalar {
    diagonal_shape(
        n,
        m,
        || exp_trunc(&weight(n as i64), beta_order),
        || exp_trunc(&weight(m as i64), beta_order),
        beta_order,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpinHurwitz {
    pub r: u32,
    pub beta_order: u32,
}

impl SpinHurwitz {
    pub fn new(r: u32, beta_order: u32) -> Result<Self> {
        if r == 0 || !r.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "r must be even and positive (got {r})"
            )));
        }
        Ok(SpinHurwitz { r, beta_order })
    }
}

impl AffineCoordinates for SpinHurwitz {
    fn a(&self, n: u32, m: u32) -> Scalar {
        a_spin(n, m, self.r, self.beta_order)
    }
    fn beta_order(&self) -> u32 {
        self.beta_order
    }
    fn label(&self) -> String {
        format!("spin-hurwitz(r={}, B={})", self.r, self.beta_order)
    }
}

/// Diagonal-f family with `f(m) = β·weight(m)`.
#[derive(Clone)]
pub struct DiagonalF {
    weight: Arc<dyn Fn(i64) -> Rat + Send + Sync>,
    beta_order: u32,
    name: String,
}

impl DiagonalF {
    pub fn new(
        name: impl Into<String>,
        beta_order: u32,
        weight: impl Fn(i64) -> Rat + Send + Sync + 'static,
    ) -> Self {
        DiagonalF {
            weight: Arc::new(weight),
            beta_order,
            name: name.into(),
        }
    }

    /// `f ≡ 0`.
    pub fn trivial(beta_order: u32) -> Self {
        Self::new("f=0", beta_order, |_| Rat::from_integer(0.into()))
    }

    /// `f(m) = β m^{r+1}/(r+1)`, the spin Hurwitz weight.
    pub fn completed_cycles(r: u32, beta_order: u32) -> Self {
        Self::new(
            format!("f=beta*m^{}/{}", r + 1, r + 1),
            beta_order,
            move |m| completed_cycle_weight(m, r),
        )
    }
}

impl fmt::Debug for DiagonalF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiagonalF")
            .field("name", &self.name)
            .field("beta_order", &self.beta_order)
            .finish()
    }
}

impl AffineCoordinates for DiagonalF {
    fn a(&self, n: u32, m: u32) -> Scalar {
        a_diagonal_f(n, m, &*self.weight, self.beta_order)
    }
    fn beta_order(&self) -> u32 {
        self.beta_order
    }
    fn label(&self) -> String {
        format!("diagonal({}, B={})", self.name, self.beta_order)
    }
}

/// A provider with `p = 1` substituted.
#[derive(Clone, Debug)]
pub struct AtPOne<P>(pub P);

impl<P: AffineCoordinates> AffineCoordinates for AtPOne<P> {
    fn a(&self, n: u32, m: u32) -> Scalar {
        self.0.a(n, m).at_p_one()
    }
    fn beta_order(&self) -> u32 {
        self.0.beta_order()
    }
    fn label(&self) -> String {
        format!("{} at p=1", self.0.label())
    }
}

/// Precomputed `a_{n,m}` for `n, m ≤ nmax`.
#[derive(Clone, Debug)]
pub struct CoordTable {
    nmax: u32,
    beta_order: u32,
    label: String,
    values: Vec<Scalar>,
}

impl CoordTable {
    pub fn new(provider: &dyn AffineCoordinates, nmax: u32) -> Self {
        let size = nmax as usize + 1;
        let mut values = vec![Scalar::zero(provider.beta_order()); size * size];
        for n in 0..=nmax {
            for m in (n + 1)..=nmax {
                let v = provider.a(n, m);
                values[m as usize * size + n as usize] = -&v;
                values[n as usize * size + m as usize] = v;
            }
        }
        CoordTable {
            nmax,
            beta_order: provider.beta_order(),
            label: provider.label(),
            values,
        }
    }

    pub fn nmax(&self) -> u32 {
        self.nmax
    }

    pub fn get(&self, n: u32, m: u32) -> &Scalar {
        assert!(
            n <= self.nmax && m <= self.nmax,
            "coordinate ({n},{m}) outside table of size {}",
            self.nmax
        );
        &self.values[n as usize * (self.nmax as usize + 1) + m as usize]
    }

    /// Rows of the table, `rows[n][m] = a_{n,m}`.
    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..=self.nmax)
            .map(|n| (0..=self.nmax).map(|m| self.get(n, m).clone()).collect())
            .collect()
    }
}

impl AffineCoordinates for CoordTable {
    fn a(&self, n: u32, m: u32) -> Scalar {
        self.get(n, m).clone()
    }
    fn beta_order(&self) -> u32 {
        self.beta_order
    }
    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Modified coordinates `ã_{n,m} = a_{n,m} - a_{n,0} a_{0,m}`.
pub fn modified(provider: &dyn AffineCoordinates, n: u32, m: u32) -> Scalar {
    &provider.a(n, m) - &(&provider.a(n, 0) * &provider.a(0, m))
}

/// `Φ_k = z^k + Σ_{i=1}^{depth} 2(-1)^i ã_{k,i} z^{-i}`, known on `[-depth, k]`.
pub fn phi_basis(provider: &dyn AffineCoordinates, k: u32, depth: u32) -> LaurentZ {
    let b = provider.beta_order();
    let lo = -(depth as i64);
    let mut phi = LaurentZ::zero(lo, k as i64, b).expect("lo <= k");
    phi.set_coeff(k as i64, Scalar::one(b))
        .expect("inside window");
    let two = Rat::from_integer(2.into());
    for i in 1..=depth {
        let c = modified(provider, k, i).scale(&(sign(i as i64) * &two));
        phi.set_coeff(-(i as i64), c).expect("inside window");
    }
    phi
}

/// The closed form of `Φ_k`'s `z^{-i}` coefficient for spin Hurwitz
/// coordinates: `2(-1)^i p^{k+i}/(4·k!·i!) · 2i/(i+k) · e^{f(k)+f(i)}`.
pub fn phi_spin_coefficient(k: u32, i: u32, r: u32, beta_order: u32) -> Scalar {
    let c = sign(i as i64) * rat(2 * 2 * i as i64, 4 * (i as i64 + k as i64))
        / Rat::from_integer(factorial(k as u64) * factorial(i as u64));
    let base = Scalar::monomial(c, k + i, 0, beta_order);
    &(&base * &f_exp(k as i64, r, beta_order)) * &f_exp(i as i64, r, beta_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn spin_examples() {
        let b = 3;
        assert!(a_spin(0, 0, 2, b).is_zero());
        let want01 = &Scalar::monomial(rat(1, 2), 1, 0, b) * &f_exp(1, 2, b);
        assert_eq!(a_spin(0, 1, 2, b), want01);
        let want12 = &(&Scalar::monomial(rat(1, 24), 3, 0, b) * &f_exp(1, 2, b)) * &f_exp(2, 2, b);
        assert_eq!(a_spin(1, 2, 2, b), want12);
        assert_eq!(a_spin(1, 0, 2, b), -&want01);
    }

    #[test]
    fn trivial_f() {
        let f0 = DiagonalF::trivial(2);
        for n in 1..6u32 {
            assert_eq!(f0.a(0, n), p_over_fact(n, 2).scale(&rat(1, 2)));
            assert!(f0.a(n, n).is_zero());
        }
    }

    #[test]
    fn antisymmetry() {
        let spin = SpinHurwitz::new(2, 2).unwrap();
        let f0 = DiagonalF::trivial(2);
        for n in 0..=12 {
            for m in 0..=12 {
                assert!((&spin.a(n, m) + &spin.a(m, n)).is_zero(), "spin ({n},{m})");
                assert!((&f0.a(n, m) + &f0.a(m, n)).is_zero(), "f0 ({n},{m})");
            }
        }
    }

    #[test]
    fn diagonal_family_contains_spin() {
        for r in [2, 4] {
            let spin = SpinHurwitz::new(r, 3).unwrap();
            let diag = DiagonalF::completed_cycles(r, 3);
            for n in 0..=12 {
                for m in 0..=(12 - n) {
                    assert_eq!(spin.a(n, m), diag.a(n, m), "r={r} ({n},{m})");
                }
            }
        }
    }

    #[test]
    fn modified_constraints() {
        let providers: Vec<Box<dyn AffineCoordinates>> = vec![
            Box::new(SpinHurwitz::new(2, 2).unwrap()),
            Box::new(DiagonalF::trivial(2)),
            Box::new(DiagonalF::new("g=m/3", 2, |m| rat(m, 3))),
        ];
        for p in &providers {
            for n in 0..=12 {
                for m in 0..=12 {
                    let lhs = &modified(p.as_ref(), n, m) + &modified(p.as_ref(), m, n);
                    let rhs =
                        (&modified(p.as_ref(), n, 0) * &modified(p.as_ref(), 0, m)).scale(&int(-2));
                    assert_eq!(lhs, rhs, "{} ({n},{m})", p.label());
                }
            }
        }
    }

    #[test]
    fn modified_edges() {
        let spin = SpinHurwitz::new(2, 3).unwrap();
        for n in 0..8 {
            assert_eq!(modified(&spin, 0, n), spin.a(0, n));
            assert_eq!(modified(&spin, n, 0), spin.a(n, 0));
        }
        let want = &spin.a(1, 2) - &(&spin.a(1, 0) * &spin.a(0, 2));
        assert_eq!(modified(&spin, 1, 2), want);
    }

    #[test]
    fn phi_examples() {
        let spin = SpinHurwitz::new(2, 3).unwrap();
        let phi0 = phi_basis(&spin, 0, 6);
        assert_eq!(phi0.window(), -6..=0);
        assert_eq!(phi0.coeff(0), Some(Scalar::one(3)));
        let want = -(&Scalar::monomial(int(1), 1, 0, 3) * &f_exp(1, 2, 3));
        assert_eq!(phi0.coeff(-1), Some(want));
    }

    #[test]
    fn phi_matches_closed_form() {
        for r in [2, 4] {
            let spin = SpinHurwitz::new(r, 3).unwrap();
            for k in 0..=6 {
                let phi = phi_basis(&spin, k, 10);
                assert_eq!(phi.window(), -10..=(k as i64));
                for i in 1..=10 {
                    assert_eq!(
                        phi.coeff(-(i as i64)),
                        Some(phi_spin_coefficient(k, i, r, 3)),
                        "r={r} k={k} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn table_and_p_one() {
        let spin = SpinHurwitz::new(2, 2).unwrap();
        let t = CoordTable::new(&spin, 5);
        for n in 0..=5 {
            for m in 0..=5 {
                assert_eq!(t.a(n, m), spin.a(n, m));
            }
        }
        let one = AtPOne(spin);
        assert_eq!(one.a(0, 1), f_exp(1, 2, 2).scale(&rat(1, 2)));
    }

    #[test]
    fn odd_r_rejected() {
        assert!(SpinHurwitz::new(3, 2).is_err());
        assert!(SpinHurwitz::new(0, 2).is_err());
    }
}
