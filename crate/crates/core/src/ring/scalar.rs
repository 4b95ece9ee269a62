use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rat;

/// Exact bivariate polynomial in `p` (untruncated) and `β` (truncated at
/// `beta_order`) with rational coefficients.
///
/// Keys are `(p_exponent, beta_exponent)`. Zero coefficients are never
/// stored, and no key has `beta_exponent > beta_order`. Binary operations on
/// scalars of different orders truncate to the smaller order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<(u32, u32), Rat>,
    beta_order: u32,
}

impl Scalar {
    pub fn zero(beta_order: u32) -> Self {
        Scalar {
            terms: BTreeMap::new(),
            beta_order,
        }
    }

    pub fn one(beta_order: u32) -> Self {
        Self::constant(Rat::one(), beta_order)
    }

    pub fn constant(c: Rat, beta_order: u32) -> Self {
        let mut s = Self::zero(beta_order);
        s.add_term(0, 0, c);
        s
    }

    /// `c · p^p_exp · β^beta_exp` (zero if `beta_exp` exceeds the order).
    pub fn monomial(c: Rat, p_exp: u32, beta_exp: u32, beta_order: u32) -> Self {
        let mut s = Self::zero(beta_order);
        s.add_term(p_exp, beta_exp, c);
        s
    }

    pub fn beta_order(&self) -> u32 {
        self.beta_order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `((p_exp, beta_exp), coefficient)` in increasing key order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p_exp: u32, beta_exp: u32) -> Rat {
        self.terms
            .get(&(p_exp, beta_exp))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Adds `c · p^p_exp β^beta_exp` in place, dropping β-orders beyond the
    /// truncation and removing cancelled terms.
    pub fn add_term(&mut self, p_exp: u32, beta_exp: u32, c: Rat) {
        if beta_exp > self.beta_order || c.is_zero() {
            return;
        }
        let key = (p_exp, beta_exp);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Lowers the β truncation order.
    pub fn truncate(&self, beta_order: u32) -> Self {
        let order = beta_order.min(self.beta_order);
        Scalar {
            terms: self
                .terms
                .iter()
                .filter(|((_, b), _)| *b <= order)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            beta_order: order,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.beta_order);
        }
        Scalar {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
            beta_order: self.beta_order,
        }
    }

    /// Multiplies by `p^e`.
    pub fn mul_p_pow(&self, e: u32) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|((pe, be), v)| ((pe + e, *be), v.clone()))
                .collect(),
            beta_order: self.beta_order,
        }
    }

    /// Substitutes `p = 1`.
    pub fn at_p_one(&self) -> Self {
        let mut out = Self::zero(self.beta_order);
        for ((_, b), v) in &self.terms {
            out.add_term(0, *b, v.clone());
        }
        out
    }

    /// Coefficient of `β^b` as a polynomial in `p`, i.e. `(p_exp, coeff)` pairs.
    pub fn beta_coeff(&self, b: u32) -> Vec<(u32, Rat)> {
        self.terms
            .iter()
            .filter(|((_, be), _)| *be == b)
            .map(|((pe, _), v)| (*pe, v.clone()))
            .collect()
    }

    /// If this scalar does not involve `p` or `β`, its constant value.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.beta_order);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn to_json(&self) -> ScalarJson {
        ScalarJson {
            terms: self
                .terms
                .iter()
                .map(|((pe, be), v)| TermJson {
                    p: *pe,
                    beta: *be,
                    num: v.numer().to_string(),
                    den: v.denom().to_string(),
                })
                .collect(),
            beta_order: self.beta_order,
        }
    }

    pub fn from_json(j: &ScalarJson) -> Result<Self, crate::Error> {
        let mut s = Self::zero(j.beta_order);
        for t in &j.terms {
            let num: BigInt = t
                .num
                .parse()
                .map_err(|_| crate::Error::Parse(format!("bad numerator {:?}", t.num)))?;
            let den: BigInt = t
                .den
                .parse()
                .map_err(|_| crate::Error::Parse(format!("bad denominator {:?}", t.den)))?;
            if den.is_zero() {
                return Err(crate::Error::Parse("zero denominator".into()));
            }
            s.add_term(t.p, t.beta, Rat::new(num, den));
        }
        Ok(s)
    }
}

/// Wire form of a [`Scalar`]. Rationals are decimal strings so no precision
/// is lost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub terms: Vec<TermJson>,
    pub beta_order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub p: u32,
    pub beta: u32,
    pub num: String,
    pub den: String,
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let j = ScalarJson::deserialize(deserializer)?;
        Scalar::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.truncate(rhs.beta_order);
        for ((pe, be), v) in &rhs.terms {
            out.add_term(*pe, *be, v.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.truncate(rhs.beta_order);
        for ((pe, be), v) in &rhs.terms {
            out.add_term(*pe, *be, -v.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        let order = self.beta_order.min(rhs.beta_order);
        let mut out = Scalar::zero(order);
        for ((pa, ba), va) in &self.terms {
            if *ba > order {
                continue;
            }
            for ((pb, bb), vb) in &rhs.terms {
                if ba + bb > order {
                    continue;
                }
                out.add_term(pa + pb, ba + bb, va * vb);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
            beta_order: self.beta_order,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.beta_order < self.beta_order {
            *self = self.truncate(rhs.beta_order);
        }
        for ((pe, be), v) in &rhs.terms {
            self.add_term(*pe, *be, v.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if rhs.beta_order < self.beta_order {
            *self = self.truncate(rhs.beta_order);
        }
        for ((pe, be), v) in &rhs.terms {
            self.add_term(*pe, *be, -v.clone());
        }
    }
}

impl super::Ring for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero(self.beta_order)
    }
    fn one_like(&self) -> Self {
        Scalar::one(self.beta_order)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
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
        self.scale(c)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((pe, be), v)) in self.terms.iter().enumerate() {
            let neg = v.is_negative();
            let mag = v.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut parts = Vec::new();
            if !mag.is_one() || (*pe == 0 && *be == 0) {
                parts.push(mag.to_string());
            }
            match pe {
                0 => {}
                1 => parts.push("p".into()),
                _ => parts.push(format!("p^{pe}")),
            }
            match be {
                0 => {}
                1 => parts.push("beta".into()),
                _ => parts.push(format!("beta^{be}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};
    use proptest::prelude::*;

    fn arb_scalar(order: u32) -> impl Strategy<Value = Scalar> {
        prop::collection::vec((0u32..4, 0u32..6, -20i64..20, 1i64..7), 0..6).prop_map(
            move |terms| {
                let mut s = Scalar::zero(order);
                for (pe, be, n, d) in terms {
                    s.add_term(pe, be, rat(n, d));
                }
                s
            },
        )
    }

    proptest! {
        #[test]
        fn distributive(a in arb_scalar(4), b in arb_scalar(4), c in arb_scalar(4)) {
            let lhs = &a * &(&b + &c);
            let rhs = &(&a * &b) + &(&a * &c);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn commutative_and_associative(a in arb_scalar(4), b in arb_scalar(4), c in arb_scalar(4)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn json_roundtrip(a in arb_scalar(3)) {
            let text = serde_json::to_string(&a).unwrap();
            let back: Scalar = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, a);
        }
    }

    #[test]
    fn truncation_discards_high_beta() {
        let b = Scalar::monomial(int(1), 0, 1, 2);
        let b3 = &(&b * &b) * &b;
        assert!(b3.is_zero());
        assert_eq!(b3.beta_order(), 2);
    }

    #[test]
    fn no_stored_zeros() {
        let mut s = Scalar::one(3);
        s.add_term(0, 0, int(-1));
        assert!(s.is_zero());
        assert_eq!(s.len(), 0);
    }

    #[test]
    fn mixed_orders_truncate_to_min() {
        let mut a = Scalar::one(4);
        a.add_term(0, 4, int(1));
        let b = Scalar::one(2);
        let s = &a + &b;
        assert_eq!(s.beta_order(), 2);
        assert_eq!(s, Scalar::constant(int(2), 2));
    }

    #[test]
    fn json_shape() {
        let s = Scalar::monomial(rat(-3, 4), 2, 1, 3);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"terms":[{"p":2,"beta":1,"num":"-3","den":"4"}],"beta_order":3})
        );
    }

    #[test]
    fn display() {
        let mut s = Scalar::monomial(rat(1, 2), 1, 0, 2);
        s.add_term(0, 2, rat(-1, 3));
        assert_eq!(s.to_string(), "-1/3*beta^2 + 1/2*p");
        assert_eq!(Scalar::one(0).to_string(), "1");
    }
}
