//! Ladder and Lie-algebra operators acting on coefficient vectors.
//!
//! Every operator here is banded: it maps `e_n` to a short combination of
//! `e_{n+d}` for a few offsets `d`. On a length-`N` vector, contributions
//! that would land outside `[0, N)` are dropped. Algebraic identities only
//! hold away from that truncation edge, so [`commutator_residual`] checks
//! them on interior indices only.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::quadrature::{QuadKind, QuadRule};
use crate::spectral::{synthesize_laguerre, Basis, CoeffVec};

type Coefficient = Arc<dyn Fn(usize) -> Complex64 + Send + Sync>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// `e_n -> coefficient(n) e_{n + offset}`.
#[derive(Clone)]
pub struct Band {
    offset: isize,
    coefficient: Coefficient,
}

impl Band {
    pub fn offset(&self) -> isize {
        self.offset
    }

    pub fn coefficient(&self, n: usize) -> Complex64 {
        (self.coefficient)(n)
    }
}

/// A named sum of bands.
#[derive(Clone)]
pub struct BandedOp {
    name: String,
    bands: Vec<Band>,
}

impl fmt::Debug for BandedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let offsets: Vec<isize> = self.bands.iter().map(|b| b.offset).collect();
        f.debug_struct("BandedOp")
            .field("name", &self.name)
            .field("offsets", &offsets)
            .finish()
    }
}

impl BandedOp {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            bands: Vec::new(),
        }
    }

    pub fn with_band<F>(mut self, offset: isize, coefficient: F) -> Self
    where
        F: Fn(usize) -> Complex64 + Send + Sync + 'static,
    {
        self.bands.push(Band {
            offset,
            coefficient: Arc::new(coefficient),
        });
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    /// Largest `|offset|` over all bands.
    pub fn reach(&self) -> usize {
        self.bands.iter().map(|b| b.offset.unsigned_abs()).max().unwrap_or(0)
    }

    /// `factor * self`.
    pub fn scaled(self, factor: Complex64) -> Self {
        let name = format!("({factor})*{}", self.name);
        let bands = self
            .bands
            .into_iter()
            .map(|b| {
                let inner = b.coefficient;
                Band {
                    offset: b.offset,
                    coefficient: Arc::new(move |n| factor * inner(n)),
                }
            })
            .collect();
        Self { name, bands }
    }

    /// `self + other`.
    pub fn plus(mut self, other: BandedOp) -> Self {
        self.name = format!("{}+{}", self.name, other.name);
        self.bands.extend(other.bands);
        self
    }

    /// Applies the operator to a raw coefficient slice of length `N`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let len = v.len() as isize;
        let mut out = vec![ZERO; v.len()];
        for band in &self.bands {
            for (n, &x) in v.iter().enumerate() {
                if x == ZERO {
                    continue;
                }
                let target = n as isize + band.offset;
                if (0..len).contains(&target) {
                    out[target as usize] += band.coefficient(n) * x;
                }
            }
        }
        out
    }

    pub fn identity() -> Self {
        Self::new("I").with_band(0, |_| re(1.0))
    }

    /// `a e_n = sqrt(n) e_{n-1}`.
    pub fn annihilation() -> Self {
        Self::new("a").with_band(-1, |n| re((n as f64).sqrt()))
    }

    /// `a+ e_n = sqrt(n+1) e_{n+1}`.
    pub fn creation() -> Self {
        Self::new("a+").with_band(1, |n| re((n as f64 + 1.0).sqrt()))
    }

    /// `N = a+ a`, eigenvalue `n`.
    pub fn number() -> Self {
        Self::new("N").with_band(0, |n| re(n as f64))
    }

    /// `X = (a + a+) / sqrt(2)`.
    pub fn position() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new("X")
            .with_band(-1, move |n| re(s * (n as f64).sqrt()))
            .with_band(1, move |n| re(s * (n as f64 + 1.0).sqrt()))
    }

    /// `P = (a - a+) / (i sqrt(2))`.
    pub fn momentum() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new("P")
            .with_band(-1, move |n| Complex64::new(0.0, -s * (n as f64).sqrt()))
            .with_band(1, move |n| Complex64::new(0.0, s * (n as f64 + 1.0).sqrt()))
    }

    /// `Q e_{kq+r} = q e_{kq+r}`.
    pub fn quotient(k: usize) -> Self {
        Self::new(format!("Q[{k}]")).with_band(0, move |n| re((n / k) as f64))
    }

    /// `R e_{kq+r} = r e_{kq+r}`.
    pub fn remainder(k: usize) -> Self {
        Self::new(format!("R[{k}]")).with_band(0, move |n| re((n % k) as f64))
    }

    /// Orthogonal projector onto the indices `n = r (mod k)`.
    pub fn subspace_identity(k: usize, r: usize) -> Self {
        Self::new(format!("I[{k},{r}]"))
            .with_band(0, move |n| re(if n % k == r { 1.0 } else { 0.0 }))
    }

    /// `A+_{k,r} e_{kq+r} = sqrt(q+1) e_{k(q+1)+r}`, zero on other indices.
    pub fn subspace_raise(k: usize, r: usize) -> Self {
        Self::new(format!("A+[{k},{r}]")).with_band(k as isize, move |n| {
            if n % k == r {
                re(((n / k) as f64 + 1.0).sqrt())
            } else {
                ZERO
            }
        })
    }

    /// `A_{k,r} e_{kq+r} = sqrt(q) e_{k(q-1)+r}`, zero on other indices.
    pub fn subspace_lower(k: usize, r: usize) -> Self {
        Self::new(format!("A[{k},{r}]")).with_band(-(k as isize), move |n| {
            if n % k == r {
                re(((n / k) as f64).sqrt())
            } else {
                ZERO
            }
        })
    }

    /// `J+ M_n = sqrt((n+1)(n+alpha+1)) M_{n+1}`.
    pub fn su11_raise(alpha: f64) -> Self {
        Self::new("J+").with_band(1, move |n| {
            let nf = n as f64;
            re(((nf + 1.0) * (nf + alpha + 1.0)).sqrt())
        })
    }

    /// `J- M_n = sqrt(n(n+alpha)) M_{n-1}`.
    pub fn su11_lower(alpha: f64) -> Self {
        Self::new("J-").with_band(-1, move |n| {
            let nf = n as f64;
            re((nf * (nf + alpha)).sqrt())
        })
    }

    /// `J3 = N + (alpha+1)/2`.
    pub fn su11_diag(alpha: f64) -> Self {
        Self::new("J3").with_band(0, move |n| re(n as f64 + 0.5 * (alpha + 1.0)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscillatorOp {
    A,
    Adag,
    Num,
    X,
    P,
    Id,
}

impl OscillatorOp {
    pub fn banded(self) -> BandedOp {
        match self {
            OscillatorOp::A => BandedOp::annihilation(),
            OscillatorOp::Adag => BandedOp::creation(),
            OscillatorOp::Num => BandedOp::number(),
            OscillatorOp::X => BandedOp::position(),
            OscillatorOp::P => BandedOp::momentum(),
            OscillatorOp::Id => BandedOp::identity(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderDirection {
    Raise,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su11Op {
    Jplus,
    Jminus,
    J3,
}

/// Flat index `n = k q + r` split into quotient and remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QrLabel {
    pub k: usize,
    pub q: usize,
    pub r: usize,
}

impl QrLabel {
    pub fn index(&self) -> usize {
        self.k * self.q + self.r
    }
}

pub fn qr_split(k: usize, n: usize) -> Result<QrLabel> {
    if k == 0 {
        return Err(domain("subspace modulus k must be at least 1"));
    }
    Ok(QrLabel { k, q: n / k, r: n % k })
}

fn check_subspace(k: usize, r: usize) -> Result<()> {
    if k == 0 {
        return Err(domain("subspace modulus k must be at least 1"));
    }
    if r >= k {
        return Err(domain(format!("subspace remainder r={r} must be < k={k}")));
    }
    Ok(())
}

fn apply_to(op: &BandedOp, c: &CoeffVec) -> CoeffVec {
    CoeffVec::new(c.basis(), op.apply(c.values()))
}

pub fn oscillator_apply(op: OscillatorOp, c: &CoeffVec) -> Result<CoeffVec> {
    c.expect_hermite()?;
    Ok(apply_to(&op.banded(), c))
}

/// `A+_{k,r}` or `A_{k,r}` applied to a Hermite coefficient vector.
pub fn subspace_ladder_apply(
    k: usize,
    r: usize,
    dir: LadderDirection,
    c: &CoeffVec,
) -> Result<CoeffVec> {
    check_subspace(k, r)?;
    c.expect_hermite()?;
    let op = match dir {
        LadderDirection::Raise => BandedOp::subspace_raise(k, r),
        LadderDirection::Lower => BandedOp::subspace_lower(k, r),
    };
    Ok(apply_to(&op, c))
}

pub fn su11_apply(op: Su11Op, c: &CoeffVec) -> Result<CoeffVec> {
    let alpha = c.laguerre_alpha()?;
    let banded = match op {
        Su11Op::Jplus => BandedOp::su11_raise(alpha),
        Su11Op::Jminus => BandedOp::su11_lower(alpha),
        Su11Op::J3 => BandedOp::su11_diag(alpha),
    };
    Ok(apply_to(&banded, c))
}

/// `C c = J3^2 c - (J+ J- c + J- J+ c) / 2`, by composition.
pub fn casimir_su11(alpha: f64, c: &CoeffVec) -> Result<CoeffVec> {
    if !(alpha > -1.0) {
        return Err(domain(format!("su(1,1) parameter must satisfy alpha > -1, got {alpha}")));
    }
    c.expect_basis(Basis::Laguerre { alpha })?;
    let j3 = |v: &CoeffVec| su11_apply(Su11Op::J3, v);
    let jp = |v: &CoeffVec| su11_apply(Su11Op::Jplus, v);
    let jm = |v: &CoeffVec| su11_apply(Su11Op::Jminus, v);
    let j3j3 = j3(&j3(c)?)?;
    let jpjm = jp(&jm(c)?)?;
    let jmjp = jm(&jp(c)?)?;
    let values = j3j3
        .values()
        .iter()
        .zip(jpjm.values())
        .zip(jmjp.values())
        .map(|((a, b), d)| a - 0.5 * (b + d))
        .collect();
    Ok(CoeffVec::new(c.basis(), values))
}

/// Residual of a commutation relation on the interior rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorResidual {
    /// `max_n || (AB - BA - E) e_n ||`.
    pub absolute: f64,
    /// Same maximum with each row divided by `max(1, ||AB e_n||, ||BA e_n||)`.
    ///
    /// The absolute figure bottoms out at one ulp of the largest product
    /// `||AB e_n||` (about `1.8e-12` for `J+ J-` at `N = 96`), so identities are
    /// judged on this scaled value.
    pub relative: f64,
}

/// Checks `[A, B] = E` on the interior indices `n < size - margin`.
///
/// `margin` must cover the reach of both compositions, otherwise truncation
/// could leak into the tested rows and the call fails with
/// [`Error::Contract`] naming the first index that would be affected.
pub fn commutator_residual(
    a: &BandedOp,
    b: &BandedOp,
    expected: &BandedOp,
    size: usize,
    margin: usize,
) -> Result<CommutatorResidual> {
    let reach = (a.reach() + b.reach()).max(expected.reach());
    if margin < reach || margin >= size {
        return Err(Error::Contract {
            margin,
            reach,
            boundary_index: size.saturating_sub(margin),
        });
    }
    let norm = |v: &[Complex64]| v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let mut absolute = 0.0f64;
    let mut relative = 0.0f64;
    for n in 0..size - margin {
        let mut e = vec![ZERO; size];
        e[n] = re(1.0);
        let ab = a.apply(&b.apply(&e));
        let ba = b.apply(&a.apply(&e));
        let ex = expected.apply(&e);
        let diff: Vec<Complex64> = ab
            .iter()
            .zip(&ba)
            .zip(&ex)
            .map(|((x, y), z)| x - y - z)
            .collect();
        let row = norm(&diff);
        let scale = norm(&ab).max(norm(&ba)).max(1.0);
        absolute = absolute.max(row);
        relative = relative.max(row / scale);
    }
    Ok(CommutatorResidual { absolute, relative })
}

/// One commutation relation `[lhs, rhs] = expected`.
#[derive(Debug, Clone)]
pub struct Relation {
    pub label: String,
    pub lhs: BandedOp,
    pub rhs: BandedOp,
    pub expected: BandedOp,
}

impl Relation {
    fn new(label: &str, lhs: BandedOp, rhs: BandedOp, expected: BandedOp) -> Self {
        Self {
            label: label.to_string(),
            lhs,
            rhs,
            expected,
        }
    }

    pub fn residual(&self, size: usize) -> Result<CommutatorResidual> {
        let margin = (self.lhs.reach() + self.rhs.reach()).max(self.expected.reach());
        commutator_residual(&self.lhs, &self.rhs, &self.expected, size, margin)
    }
}

/// Oscillator relations plus `[X, P] = i`.
pub fn oscillator_relations() -> Vec<Relation> {
    vec![
        Relation::new("[a,a+]=I", BandedOp::annihilation(), BandedOp::creation(), BandedOp::identity()),
        Relation::new(
            "[N,a]=-a",
            BandedOp::number(),
            BandedOp::annihilation(),
            BandedOp::annihilation().scaled(re(-1.0)),
        ),
        Relation::new("[N,a+]=a+", BandedOp::number(), BandedOp::creation(), BandedOp::creation()),
        Relation::new(
            "[X,P]=iI",
            BandedOp::position(),
            BandedOp::momentum(),
            BandedOp::identity().scaled(Complex64::new(0.0, 1.0)),
        ),
    ]
}

/// The `io_{k,r}(2)` relations for one subspace label.
pub fn subspace_relations(k: usize, r: usize) -> Result<Vec<Relation>> {
    check_subspace(k, r)?;
    Ok(vec![
        Relation::new(
            &format!("[Q,A+_{{{k},{r}}}]=A+"),
            BandedOp::quotient(k),
            BandedOp::subspace_raise(k, r),
            BandedOp::subspace_raise(k, r),
        ),
        Relation::new(
            &format!("[Q,A_{{{k},{r}}}]=-A"),
            BandedOp::quotient(k),
            BandedOp::subspace_lower(k, r),
            BandedOp::subspace_lower(k, r).scaled(re(-1.0)),
        ),
        Relation::new(
            &format!("[A_{{{k},{r}}},A+]=I_{{{k},{r}}}"),
            BandedOp::subspace_lower(k, r),
            BandedOp::subspace_raise(k, r),
            BandedOp::subspace_identity(k, r),
        ),
    ])
}

/// The `su(1,1)` relations for Laguerre parameter `alpha`.
pub fn su11_relations(alpha: f64) -> Vec<Relation> {
    vec![
        Relation::new(
            "[J3,J+]=J+",
            BandedOp::su11_diag(alpha),
            BandedOp::su11_raise(alpha),
            BandedOp::su11_raise(alpha),
        ),
        Relation::new(
            "[J3,J-]=-J-",
            BandedOp::su11_diag(alpha),
            BandedOp::su11_lower(alpha),
            BandedOp::su11_lower(alpha).scaled(re(-1.0)),
        ),
        Relation::new(
            "[J+,J-]=-2J3",
            BandedOp::su11_raise(alpha),
            BandedOp::su11_lower(alpha),
            BandedOp::su11_diag(alpha).scaled(re(-2.0)),
        ),
    ]
}

/// `Y = -(J+ + J-) + 2N + (alpha+1) I` as a banded operator.
pub fn y_operator(alpha: f64) -> BandedOp {
    BandedOp::su11_raise(alpha)
        .plus(BandedOp::su11_lower(alpha))
        .scaled(re(-1.0))
        .plus(BandedOp::new("2N+(a+1)I").with_band(0, move |n| re(2.0 * n as f64 + alpha + 1.0)))
}

/// L2 distance, on the nodes of `rule`, between the synthesis of `Y c` and
/// `y` times the synthesis of `c`.
pub fn y_operator_check(alpha: f64, c: &CoeffVec, rule: &QuadRule) -> Result<f64> {
    c.expect_basis(Basis::Laguerre { alpha })?;
    match rule.kind() {
        QuadKind::GaussLaguerre { alpha: a } if a == alpha => {}
        other => {
            return Err(Error::RuleMismatch(format!(
                "Y-operator check with alpha={alpha} got rule {other:?}"
            )))
        }
    }
    let yc = apply_to(&y_operator(alpha), c);
    let lhs = synthesize_laguerre(&yc, rule.nodes())?;
    let base = synthesize_laguerre(c, rule.nodes())?;
    let sq: f64 = rule
        .iter()
        .zip(lhs.iter().zip(&base))
        .map(|((y, w), (l, b))| w * (l - b * y).norm_sqr())
        .sum();
    Ok(sq.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_laguerre;

    fn herm(values: &[f64]) -> CoeffVec {
        CoeffVec::from_real(Basis::Hermite, values)
    }

    fn assert_vec_close(got: &CoeffVec, expected: &[Complex64], tol: f64) {
        assert_eq!(got.len(), expected.len());
        for (n, (g, e)) in got.values().iter().zip(expected).enumerate() {
            assert!((g - e).norm() <= tol, "index {n}: {g} vs {e}");
        }
    }

    fn unit(len: usize, idx: usize, scale: f64) -> Vec<Complex64> {
        let mut v = vec![ZERO; len];
        v[idx] = re(scale);
        v
    }

    #[test]
    fn oscillator_examples() {
        let e0 = CoeffVec::unit(Basis::Hermite, 4, 0);
        assert_vec_close(&oscillator_apply(OscillatorOp::Adag, &e0).unwrap(), &unit(4, 1, 1.0), 0.0);
        assert_vec_close(&oscillator_apply(OscillatorOp::A, &e0).unwrap(), &[ZERO; 4], 0.0);
        let ones = herm(&[1.0, 1.0, 1.0]);
        assert_vec_close(
            &oscillator_apply(OscillatorOp::Num, &ones).unwrap(),
            &[re(0.0), re(1.0), re(2.0)],
            0.0,
        );
        let lag = CoeffVec::zeros(Basis::Laguerre { alpha: 0.5 }, 3);
        assert!(oscillator_apply(OscillatorOp::A, &lag).is_err());
    }

    #[test]
    fn qr_split_examples() {
        assert_eq!(qr_split(4, 11).unwrap(), QrLabel { k: 4, q: 2, r: 3 });
        assert_eq!(qr_split(1, 7).unwrap(), QrLabel { k: 1, q: 7, r: 0 });
        assert_eq!(qr_split(3, 0).unwrap(), QrLabel { k: 3, q: 0, r: 0 });
        assert!(qr_split(0, 5).is_err());
        for n in 0..50 {
            assert_eq!(qr_split(7, n).unwrap().index(), n);
        }
    }

    #[test]
    fn subspace_ladder_examples() {
        let e1 = CoeffVec::unit(Basis::Hermite, 8, 1);
        let up = subspace_ladder_apply(2, 1, LadderDirection::Raise, &e1).unwrap();
        assert_vec_close(&up, &unit(8, 3, 1.0), 0.0);
        let down = subspace_ladder_apply(2, 1, LadderDirection::Lower, &e1).unwrap();
        assert_vec_close(&down, &[ZERO; 8], 0.0);
        let e3 = CoeffVec::unit(Basis::Hermite, 8, 3);
        let up = subspace_ladder_apply(3, 0, LadderDirection::Raise, &e3).unwrap();
        assert_vec_close(&up, &unit(8, 6, 2f64.sqrt()), 1e-15);
        assert!(subspace_ladder_apply(3, 3, LadderDirection::Raise, &e3).is_err());
        // index outside the subspace is annihilated
        let e4 = CoeffVec::unit(Basis::Hermite, 8, 4);
        let up = subspace_ladder_apply(3, 0, LadderDirection::Raise, &e4).unwrap();
        assert_vec_close(&up, &[ZERO; 8], 0.0);
    }

    #[test]
    fn su11_examples() {
        let e0 = CoeffVec::unit(Basis::Laguerre { alpha: 0.5 }, 4, 0);
        let up = su11_apply(Su11Op::Jplus, &e0).unwrap();
        assert_vec_close(&up, &unit(4, 1, 1.5f64.sqrt()), 1e-15);
        assert!((1.5f64.sqrt() - 1.224_744_9).abs() < 1e-7);
        let down = su11_apply(Su11Op::Jminus, &e0).unwrap();
        assert_vec_close(&down, &[ZERO; 4], 0.0);
        let diag = su11_apply(Su11Op::J3, &e0).unwrap();
        assert_vec_close(&diag, &unit(4, 0, 0.75), 0.0);
        assert!(su11_apply(Su11Op::J3, &CoeffVec::zeros(Basis::Hermite, 2)).is_err());
    }

    #[test]
    fn casimir_examples() {
        let alpha = 0.5;
        let c = CoeffVec::from_real(Basis::Laguerre { alpha }, &[0.3, -1.2, 0.7, 2.0, 0.0, 0.0]);
        let out = casimir_su11(alpha, &c).unwrap();
        for n in 0..5 {
            assert!((out.values()[n] - (-0.1875) * c.values()[n]).norm() < 1e-12);
        }
        let e0 = CoeffVec::unit(Basis::Laguerre { alpha: 1.0 }, 4, 0);
        let out = casimir_su11(1.0, &e0).unwrap();
        assert!(out.values()[0].norm() < 1e-12);
        let e2 = CoeffVec::unit(Basis::Laguerre { alpha: -0.5 }, 5, 2);
        let out = casimir_su11(-0.5, &e2).unwrap();
        assert_vec_close(&out, &unit(5, 2, -0.1875), 1e-12);
        assert!(casimir_su11(0.5, &e2).is_err());
    }

    #[test]
    fn commutator_examples() {
        let r = commutator_residual(
            &BandedOp::annihilation(),
            &BandedOp::creation(),
            &BandedOp::identity(),
            64,
            2,
        )
        .unwrap();
        assert!(r.relative < 1e-14, "{r:?}");
        assert!(r.absolute < 1e-13, "{r:?}");
        let r = commutator_residual(
            &BandedOp::su11_raise(0.5),
            &BandedOp::su11_lower(0.5),
            &BandedOp::su11_diag(0.5).scaled(re(-2.0)),
            64,
            2,
        )
        .unwrap();
        assert!(r.relative < 1e-12, "{r:?}");
        let r = commutator_residual(
            &BandedOp::quotient(3),
            &BandedOp::subspace_raise(3, 1),
            &BandedOp::subspace_raise(3, 1),
            90,
            6,
        )
        .unwrap();
        assert!(r.relative < 1e-12, "{r:?}");
    }

    #[test]
    fn commutator_margin_contract() {
        let err = commutator_residual(
            &BandedOp::annihilation(),
            &BandedOp::creation(),
            &BandedOp::identity(),
            64,
            1,
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::Contract {
                margin: 1,
                reach: 2,
                boundary_index: 63
            }
        );
        // without the margin the boundary row really does fail
        let a = BandedOp::annihilation();
        let ad = BandedOp::creation();
        let mut e = vec![ZERO; 8];
        e[7] = re(1.0);
        let comm: Vec<Complex64> = a
            .apply(&ad.apply(&e))
            .iter()
            .zip(ad.apply(&a.apply(&e)))
            .map(|(x, y)| x - y)
            .collect();
        assert!((comm[7] - re(1.0)).norm() > 0.5);
    }

    #[test]
    fn all_relations_hold_on_interior() {
        let mut relations = oscillator_relations();
        for k in 1..=4 {
            for r in 0..k {
                relations.extend(subspace_relations(k, r).unwrap());
            }
        }
        for alpha in [-0.5, 0.0, 0.5, 2.0] {
            relations.extend(su11_relations(alpha));
        }
        for rel in &relations {
            let r = rel.residual(96).unwrap();
            assert!(r.relative < 1e-12, "{}: {r:?}", rel.label);
            assert!(r.absolute < 1e-11, "{}: {r:?}", rel.label);
        }
    }

    #[test]
    fn subspace_adjointness() {
        let len = 40;
        let c: Vec<Complex64> = (0..len)
            .map(|n| Complex64::new((n as f64 * 0.37).sin(), (n as f64 * 0.11).cos()))
            .collect();
        let d: Vec<Complex64> = (0..len)
            .map(|n| Complex64::new((n as f64 * 0.53).cos(), -(n as f64 * 0.29).sin()))
            .collect();
        let inner = |u: &[Complex64], v: &[Complex64]| -> Complex64 {
            u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
        };
        for (k, r) in [(1, 0), (2, 1), (3, 2), (5, 0)] {
            // keep support away from the top edge
            let mut cc = c.clone();
            let mut dd = d.clone();
            for n in len - 2 * k..len {
                cc[n] = ZERO;
                dd[n] = ZERO;
            }
            let lhs = inner(&BandedOp::subspace_raise(k, r).apply(&cc), &dd);
            let rhs = inner(&cc, &BandedOp::subspace_lower(k, r).apply(&dd));
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn subspace_closure() {
        let len = 60;
        for (k, r) in [(2, 0), (3, 1), (4, 3)] {
            let c: Vec<Complex64> = (0..len)
                .map(|n| if n % k == r { re(1.0 + n as f64) } else { ZERO })
                .collect();
            for op in [BandedOp::subspace_raise(k, r), BandedOp::subspace_lower(k, r)] {
                let out = op.apply(&c);
                for (n, v) in out.iter().enumerate() {
                    if n % k != r {
                        assert_eq!(*v, ZERO);
                    }
                }
            }
        }
    }

    /// `A+_{k,r} = (a+)^k sqrt(N+k-r) / sqrt(k prod_j (N+j))` on `H_{k,r}`.
    #[test]
    fn ratio_formula_matches_action_form() {
        let len = 40;
        for k in 1..=3 {
            for r in 0..k {
                for n in (r..=30).step_by(k) {
                    let nf = n as f64;
                    let prod: f64 = (1..=k).map(|j| nf + j as f64).product();
                    let scale = (nf + (k - r) as f64).sqrt() / (k as f64 * prod).sqrt();
                    let mut v = unit(len, n, scale);
                    for _ in 0..k {
                        v = BandedOp::creation().apply(&v);
                    }
                    let action = BandedOp::subspace_raise(k, r).apply(&unit(len, n, 1.0));
                    for (x, y) in v.iter().zip(&action) {
                        assert!((x - y).norm() < 1e-12, "k={k} r={r} n={n}");
                    }
                    // lowering: A_{k,r} = scale(N) a^k, scale evaluated after lowering
                    if n >= k {
                        let mut w = unit(len, n, 1.0);
                        for _ in 0..k {
                            w = BandedOp::annihilation().apply(&w);
                        }
                        let m = (n - k) as f64;
                        let prod: f64 = (1..=k).map(|j| m + j as f64).product();
                        let s = (m + (k - r) as f64).sqrt() / (k as f64 * prod).sqrt();
                        let action = BandedOp::subspace_lower(k, r).apply(&unit(len, n, 1.0));
                        for (x, y) in w.iter().zip(&action) {
                            assert!((x * s - y).norm() < 1e-12, "lower k={k} r={r} n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn y_operator_examples() {
        let rule = gauss_laguerre(64, 0.5).unwrap();
        let e0 = CoeffVec::unit(Basis::Laguerre { alpha: 0.5 }, 8, 0);
        assert!(y_operator_check(0.5, &e0, &rule).unwrap() < 1e-10);

        let rule = gauss_laguerre(64, -0.5).unwrap();
        let c = CoeffVec::from_real(Basis::Laguerre { alpha: -0.5 }, &[0.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        assert!(y_operator_check(-0.5, &c, &rule).unwrap() < 1e-9);
        let z = CoeffVec::zeros(Basis::Laguerre { alpha: -0.5 }, 6);
        assert_eq!(y_operator_check(-0.5, &z, &rule).unwrap(), 0.0);
        assert!(y_operator_check(0.5, &z, &rule).is_err());
    }
}
