use super::{Ring, Scalar};
use crate::{Error, Result};

/// Antisymmetric `dim × dim` matrix over a ring `T`.
///
/// Only the strict upper triangle is supplied; the diagonal is zero and the
/// lower triangle is its negation. `unit` fixes the truncation data of the
/// ring's `1` (the Pfaffian of the empty matrix).
#[derive(Clone, Debug)]
pub struct AntisymMatrix<T = Scalar> {
    dim: usize,
    entries: Vec<T>,
    unit: T,
}

impl<T: Ring> AntisymMatrix<T> {
    pub fn from_upper(dim: usize, unit: T, mut upper: impl FnMut(usize, usize) -> T) -> Self {
        let zero = unit.zero_like();
        let mut entries = vec![zero; dim * dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let v = upper(i, j);
                entries[j * dim + i] = v.negated();
                entries[i * dim + j] = v;
            }
        }
        AntisymMatrix { dim, entries, unit }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn unit(&self) -> &T {
        &self.unit
    }
}

/// Pfaffian by expansion along the first row:
/// `Pf(M) = Σ_{j≥2} (-1)^j m_{1j} Pf(M without rows/columns 1, j)`.
///
/// Division-free, so it works over any commutative ring. Intended for the
/// small dimensions (≤ 10 or so) that occur here.
pub fn pfaffian<T: Ring>(m: &AntisymMatrix<T>) -> Result<T> {
    if !m.dim.is_multiple_of(2) {
        return Err(Error::OddDimension(m.dim));
    }
    let idx: Vec<usize> = (0..m.dim).collect();
    Ok(pf_rec(m, &idx))
}

fn pf_rec<T: Ring>(m: &AntisymMatrix<T>, idx: &[usize]) -> T {
    if idx.is_empty() {
        return m.unit.clone();
    }
    let first = idx[0];
    let mut acc = m.unit.zero_like();
    let mut rest = Vec::with_capacity(idx.len() - 2);
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let entry = m.get(first, j);
        if entry.vanishes() {
            continue;
        }
        rest.clear();
        rest.extend(idx[1..].iter().copied().filter(|&k| k != j));
        let sub = pf_rec(m, &rest);
        if sub.vanishes() {
            continue;
        }
        let term = entry.times(&sub);
        // pos is 0-based, so pos = 1 is the j = 2 term with sign +.
        acc = if pos % 2 == 1 {
            acc.plus(&term)
        } else {
            acc.minus(&term)
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, Rat};

    fn sym(name: u32) -> Scalar {
        // Distinct p-powers stand in for independent symbols.
        Scalar::monomial(int(1), name, 0, 0)
    }

    #[test]
    fn two_by_two() {
        let a = sym(1);
        let m = AntisymMatrix::from_upper(2, Scalar::one(0), |_, _| a.clone());
        assert_eq!(pfaffian(&m).unwrap(), a);
    }

    #[test]
    fn four_by_four() {
        // Use integers so the expected value is checkable by hand.
        let vals = [[0, 2, 3, 5], [0, 0, 7, 11], [0, 0, 0, 13], [0, 0, 0, 0]];
        let m = AntisymMatrix::from_upper(4, Rat::from_integer(1.into()), |i, j| int(vals[i][j]));
        // a12 a34 - a13 a24 + a14 a23
        let want = int(2 * 13 - 3 * 11 + 5 * 7);
        assert_eq!(pfaffian(&m).unwrap(), want);
    }

    #[test]
    fn four_by_four_symbolic() {
        let e = |i: usize, j: usize| [[0, 1, 2, 4], [0, 0, 8, 16], [0, 0, 0, 32], [0; 4]][i][j];
        let m = AntisymMatrix::from_upper(4, Scalar::one(0), |i, j| sym(e(i, j)));
        let want = &(&(&sym(1) * &sym(32)) - &(&sym(2) * &sym(16))) + &(&sym(4) * &sym(8));
        assert_eq!(pfaffian(&m).unwrap(), want);
    }

    #[test]
    fn empty_is_one() {
        let m = AntisymMatrix::from_upper(0, Scalar::one(3), |_, _| unreachable!());
        assert_eq!(pfaffian(&m).unwrap(), Scalar::one(3));
    }

    #[test]
    fn odd_dimension_errors() {
        let m = AntisymMatrix::from_upper(3, Scalar::one(0), |_, _| Scalar::one(0));
        let err = pfaffian(&m).unwrap_err();
        assert_eq!(err.to_string(), "pfaffian requires even dimension (got 3)");
    }
}
