//! The operators `E_l`, `P = E_1 ∂_z - p E_2 z^{-2}` and `Q = E_{-1} z` on
//! truncated Laurent series, and the checks that `P`, `Q` act on the spin
//! Hurwitz basis `Φ_k` as Kac-Schwarz operators with `[P, Q] = 1`.
//!
//! `E_l` is used only through its diagonal action `z^k ↦ e^{f(k+l)-f(k)} z^k`
//! with `f(k) = β k^{r+1}/(r+1)`.

use rayon::prelude::*;

use crate::affine::{phi_basis, SpinHurwitz};
use crate::report::Report;
use crate::ring::{f_exp, f_exp_diff, factorial, CoeffMismatch, LaurentZ, Rat, Scalar};
use crate::{Error, Result};

/// `E_l`: `z^k ↦ f_exp(k+l)·f_exp(-k)·z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagOperator {
    pub l: i64,
    pub r: u32,
    pub beta_order: u32,
}

impl DiagOperator {
    pub fn new(l: i64, r: u32, beta_order: u32) -> Self {
        DiagOperator { l, r, beta_order }
    }

    pub fn multiplier(&self, k: i64) -> Scalar {
        &f_exp(k + self.l, self.r, self.beta_order) * &f_exp(-k, self.r, self.beta_order)
    }

    pub fn apply(&self, s: &LaurentZ) -> LaurentZ {
        s.map_diagonal(|k| self.multiplier(k))
    }
}

/// One step of a pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitive {
    Diag(DiagOperator),
    Derivative,
    /// Multiplication by `z^m`.
    MulZ(i64),
    Scale(Scalar),
}

impl Primitive {
    fn apply(&self, s: &LaurentZ) -> LaurentZ {
        match self {
            Primitive::Diag(e) => e.apply(s),
            Primitive::Derivative => s.derivative(),
            Primitive::MulZ(m) => s.shift(*m),
            Primitive::Scale(c) => s.scale(c),
        }
    }
}

/// A sum of pipelines; each pipeline applies its steps first to last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentOperator {
    pipelines: Vec<Vec<Primitive>>,
}

impl LaurentOperator {
    pub fn pipeline(steps: Vec<Primitive>) -> Self {
        LaurentOperator {
            pipelines: vec![steps],
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut pipelines = self.pipelines.clone();
        pipelines.extend(other.pipelines.iter().cloned());
        LaurentOperator { pipelines }
    }

    pub fn minus(&self, other: &Self, beta_order: u32) -> Self {
        let neg = Primitive::Scale(Scalar::constant(-Rat::from_integer(1.into()), beta_order));
        let mut pipelines = self.pipelines.clone();
        for p in &other.pipelines {
            let mut p = p.clone();
            p.push(neg.clone());
            pipelines.push(p);
        }
        LaurentOperator { pipelines }
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Self) -> Self {
        let mut pipelines = Vec::new();
        for outer in &self.pipelines {
            for inner in &other.pipelines {
                let mut p = inner.clone();
                p.extend(outer.iter().cloned());
                pipelines.push(p);
            }
        }
        LaurentOperator { pipelines }
    }

    /// Applies the operator; the result is exact on the intersection of the
    /// pipelines' windows.
    pub fn apply(&self, s: &LaurentZ) -> LaurentZ {
        let mut out: Option<LaurentZ> = None;
        for p in &self.pipelines {
            let v = p.iter().fold(s.clone(), |acc, step| step.apply(&acc));
            out = Some(match out {
                None => v,
                Some(o) => o.add(&v),
            });
        }
        out.expect("operator has at least one pipeline")
    }
}

/// `P = E_1 ∂_z - p E_2 z^{-2}`.
pub fn operator_p(r: u32, beta_order: u32) -> LaurentOperator {
    let first = LaurentOperator::pipeline(vec![
        Primitive::Derivative,
        Primitive::Diag(DiagOperator::new(1, r, beta_order)),
    ]);
    let second = LaurentOperator::pipeline(vec![
        Primitive::MulZ(-2),
        Primitive::Diag(DiagOperator::new(2, r, beta_order)),
        Primitive::Scale(Scalar::monomial(
            Rat::from_integer(1.into()),
            1,
            0,
            beta_order,
        )),
    ]);
    first.minus(&second, beta_order)
}

/// `Q = E_{-1} z`.
pub fn operator_q(r: u32, beta_order: u32) -> LaurentOperator {
    LaurentOperator::pipeline(vec![
        Primitive::MulZ(1),
        Primitive::Diag(DiagOperator::new(-1, r, beta_order)),
    ])
}

pub fn apply_e(l: i64, s: &LaurentZ, r: u32, beta_order: u32) -> LaurentZ {
    DiagOperator::new(l, r, beta_order).apply(s)
}

/// `P(s)`, exact on `[lo - 1, hi - 1]`.
pub fn apply_p(s: &LaurentZ, r: u32, beta_order: u32) -> LaurentZ {
    operator_p(r, beta_order).apply(s)
}

/// `Q(s)`, exact on `[lo + 1, hi + 1]`.
pub fn apply_q(s: &LaurentZ, r: u32, beta_order: u32) -> LaurentZ {
    operator_q(r, beta_order).apply(s)
}

/// Width of the window kept below `z^k` in the commutator checks.
const COMMUTATOR_MARGIN: i64 = 4;

struct Check {
    name: String,
    lo: i64,
    hi: i64,
    outcome: std::result::Result<(), CoeffMismatch>,
}

fn check(name: String, lhs: &LaurentZ, rhs: &LaurentZ, lo: i64, hi: i64) -> Check {
    Check {
        outcome: lhs.compare_on(rhs, lo..=hi),
        name,
        lo,
        hi,
    }
}

/// Verifies, for the spin Hurwitz coordinates with parameter `r`:
///
/// * `P(Φ_0) = 0` on `[-I+2, 0]`;
/// * `P(Φ_k) = k e^{f(k)-f(k-1)} Φ_{k-1} - p e^{f(k)-f(k-2)} Φ_{k-2}` on
///   `[-I+2, k-1]` for `1 ≤ k ≤ kmax`;
/// * `Q(Φ_k) = e^{f(k)-f(k+1)} Φ_{k+1} - p^{k+1} e^{f(k)}/(k+1)! Φ_0` on
///   `[-I+1, k+1]` for `0 ≤ k ≤ kmax`;
/// * `PQ(z^k) = (k+1)z^k - p e^{f(k)-f(k-1)} z^{k-1}` and
///   `(PQ - QP)(z^k) = z^k` on `[k-4, k]` for `|k| ≤ kmax`.
///
/// `Φ_k` comes from the affine coordinates, the right-hand sides and the
/// operators from `f` directly.
pub fn verify_theorem(r: u32, beta_order: u32, kmax: u32, depth: u32) -> Result<Report> {
    if depth < kmax + 4 {
        return Err(Error::InsufficientWindow(format!(
            "depth {depth} is below kmax + 4 = {}",
            kmax + 4
        )));
    }
    let provider = SpinHurwitz::new(r, beta_order)?;
    let b = beta_order;
    let ii = depth as i64;
    let kk = kmax as i64;
    let phis: Vec<LaurentZ> = (0..=kmax + 1)
        .into_par_iter()
        .map(|k| phi_basis(&provider, k, depth))
        .collect();
    let phi = |k: i64| -> LaurentZ {
        if k < 0 {
            LaurentZ::zero(-ii, 0, b).expect("nonempty")
        } else {
            phis[k as usize].clone()
        }
    };
    let p_op = operator_p(r, b);
    let q_op = operator_q(r, b);
    let p = Scalar::monomial(Rat::from_integer(1.into()), 1, 0, b);
    let fd = |x: i64, y: i64| f_exp_diff(x, y, r, b);

    let mut jobs: Vec<Box<dyn Fn() -> Check + Send + Sync>> = Vec::new();
    {
        let (p_op, phi0) = (p_op.clone(), phi(0));
        jobs.push(Box::new(move || {
            let zero = LaurentZ::zero(-ii, 0, b).expect("nonempty");
            check("P(Phi_0) = 0".into(), &p_op.apply(&phi0), &zero, -ii + 2, 0)
        }));
    }
    for k in 1..=kk {
        let (p_op, p) = (p_op.clone(), p.clone());
        let (pk, pk1, pk2) = (phi(k), phi(k - 1), phi(k - 2));
        let (m1, m2) = (fd(k, k - 1), fd(k, k - 2));
        jobs.push(Box::new(move || {
            let rhs = pk1
                .scale(&m1.scale(&Rat::from_integer(k.into())))
                .sub(&pk2.scale(&(&p * &m2)));
            check(
                format!("P(Phi_{k})"),
                &p_op.apply(&pk),
                &rhs,
                -ii + 2,
                k - 1,
            )
        }));
    }
    for k in 0..=kk {
        let q_op = q_op.clone();
        let (pk, pk1, p0) = (phi(k), phi(k + 1), phi(0));
        let m = fd(k, k + 1);
        let c = f_exp(k, r, b)
            .mul_p_pow(k as u32 + 1)
            .scale(&Rat::new(1.into(), factorial(k as u64 + 1)));
        jobs.push(Box::new(move || {
            let rhs = pk1.scale(&m).sub(&p0.scale(&c));
            check(
                format!("Q(Phi_{k})"),
                &q_op.apply(&pk),
                &rhs,
                -ii + 1,
                k + 1,
            )
        }));
    }
    let pq = p_op.after(&q_op);
    let qp = q_op.after(&p_op);
    let comm = pq.minus(&qp, b);
    for k in -kk..=kk {
        let (pq, comm, p) = (pq.clone(), comm.clone(), p.clone());
        let m = fd(k, k - 1);
        jobs.push(Box::new(move || {
            let lo = k - COMMUTATOR_MARGIN;
            let zk = LaurentZ::monomial(k, Scalar::one(b), lo);
            let want_pq = zk
                .scale_rat(&Rat::from_integer((k + 1).into()))
                .sub(&LaurentZ::monomial(k - 1, &p * &m, lo));
            let c = check(format!("PQ(z^{k})"), &pq.apply(&zk), &want_pq, lo, k);
            if c.outcome.is_err() {
                return c;
            }
            check(format!("[P,Q](z^{k})"), &comm.apply(&zk), &zk, lo, k)
        }));
    }
    let checks: Vec<Check> = jobs.par_iter().map(|j| j()).collect();

    let mut report = Report::new("ks")
        .param("r", r)
        .param("beta_order", beta_order)
        .param("kmax", kmax)
        .param("depth", depth);
    for c in checks {
        report.compare(&c.name, c.lo, c.hi, c.outcome);
    }
    Ok(report)
}
