//! Weak and strong interval extensions of a semiring.
//!
//! An interval `[lo, hi]` (with `lo ⪯ hi`) is the order interval
//! `{t | lo ⪯ t ⪯ hi}`. Operations act bound-wise,
//! `x ⋆ y = [x̲ ⋆ y̲, x̄ ⋆ ȳ]`, which is the least interval containing the
//! set `{x ⋆ y}` because ⊕ and ⊙ are monotone. Unlike classical interval
//! arithmetic, the result is again a semiring: distributivity survives.
//!
//! The strong extension keeps only intervals with `𝟎 ≺ lo`, plus `[𝟎, 𝟎]`.
//! It needs an entire base to be closed under ⊙, and in exchange inherits
//! cancellation and stabilization from the base.
//!
//! Interval matrices are `Matrix<IntervalExt<S>>`; [`split`] and [`merge`]
//! realize the isomorphism with intervals of matrices `[A̲, A̅]`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::{Flags, Leq, Semiring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Weak,
    Strong,
}

impl Mode {
    pub fn key(self) -> &'static str {
        match self {
            Mode::Weak => "weak",
            Mode::Strong => "strong",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(Mode::Weak),
            "strong" => Ok(Mode::Strong),
            _ => Err(Error::Malformed(format!("unknown interval mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Interval<E> {
    lo: E,
    hi: E,
}

impl<E> Interval<E> {
    pub fn lo(&self) -> &E {
        &self.lo
    }

    pub fn hi(&self) -> &E {
        &self.hi
    }

    pub fn into_bounds(self) -> (E, E) {
        (self.lo, self.hi)
    }
}

/// The interval extension `I(S)` (weak) or `Ī(S)` (strong) of a base semiring.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalExt<S> {
    base: S,
    mode: Mode,
}

pub type IntervalMatrix<S> = Matrix<IntervalExt<S>>;

impl<S: Semiring> IntervalExt<S> {
    pub fn weak(base: S) -> Self {
        IntervalExt {
            base,
            mode: Mode::Weak,
        }
    }

    /// Fails unless the base is entire; otherwise `[x̲ ⊙ y̲, …]` could have a
    /// zero lower bound and leave the strong extension.
    pub fn strong(base: S) -> Result<Self> {
        if !base.flags().entire {
            return Err(base.missing("entire"));
        }
        Ok(IntervalExt {
            base,
            mode: Mode::Strong,
        })
    }

    pub fn new(base: S, mode: Mode) -> Result<Self> {
        match mode {
            Mode::Weak => Ok(Self::weak(base)),
            Mode::Strong => Self::strong(base),
        }
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Validated constructor.
    pub fn interval(&self, lo: S::Elem, hi: S::Elem) -> Result<Interval<S::Elem>> {
        let iv = Interval { lo, hi };
        self.validate(&iv)?;
        Ok(iv)
    }

    pub fn validate(&self, iv: &Interval<S::Elem>) -> Result<()> {
        let b = &self.base;
        if !b.leq(&iv.lo, &iv.hi).holds() {
            return Err(Error::InvalidBounds {
                lo: b.describe(&iv.lo),
                hi: b.describe(&iv.hi),
            });
        }
        if self.mode == Mode::Strong && b.is_zero(&iv.lo) && !b.is_zero(&iv.hi) {
            return Err(Error::StrongViolation {
                lo: b.describe(&iv.lo),
                hi: b.describe(&iv.hi),
            });
        }
        Ok(())
    }

    /// The embedding `x ↦ [x, x]`.
    pub fn point(&self, x: S::Elem) -> Interval<S::Elem> {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn contains(&self, iv: &Interval<S::Elem>, x: &S::Elem) -> bool {
        self.base.leq(&iv.lo, x).holds() && self.base.leq(x, &iv.hi).holds()
    }

    /// `x ⊂ y iff y̲ ⪯ x̲ ⪯ x̄ ⪯ ȳ`.
    pub fn subset(&self, x: &Interval<S::Elem>, y: &Interval<S::Elem>) -> bool {
        self.base.leq(&y.lo, &x.lo).holds() && self.base.leq(&x.hi, &y.hi).holds()
    }

    /// Containment up to a relative tolerance on the bounds; used to compare
    /// non-idempotent floating results.
    pub fn contains_approx(&self, iv: &Interval<S::Elem>, x: &S::Elem, rel_tol: f64) -> bool {
        let b = &self.base;
        (b.leq(&iv.lo, x).holds() || b.approx_eq(&iv.lo, x, rel_tol))
            && (b.leq(x, &iv.hi).holds() || b.approx_eq(x, &iv.hi, rel_tol))
    }
}

impl<S: Semiring> Semiring for IntervalExt<S> {
    type Elem = Interval<S::Elem>;

    fn name(&self) -> String {
        format!("{}-interval({})", self.mode.key(), self.base.name())
    }

    fn zero(&self) -> Self::Elem {
        self.point(self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        self.point(self.base.one())
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        Interval {
            lo: self.base.add(&x.lo, &y.lo),
            hi: self.base.add(&x.hi, &y.hi),
        }
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        Interval {
            lo: self.base.mul(&x.lo, &y.lo),
            hi: self.base.mul(&x.hi, &y.hi),
        }
    }

    fn flags(&self) -> Flags {
        let b = self.base.flags();
        let strong = self.mode == Mode::Strong;
        Flags {
            idempotent: b.idempotent,
            commutative: b.commutative,
            entire: b.entire,
            cancellative: strong && b.cancellative,
            algebraically_closed: b.algebraically_closed && b.freshman_dream,
            stabilizing: strong && b.stabilizing,
            has_top: b.has_top,
            freshman_dream: b.freshman_dream,
            linearly_ordered: false,
        }
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> Leq {
        match (self.base.leq(&x.lo, &y.lo), self.base.leq(&x.hi, &y.hi)) {
            (Leq::Holds, Leq::Holds) => Leq::Holds,
            (Leq::Incomparable, _) | (_, Leq::Incomparable) => Leq::Incomparable,
            (Leq::Fails, Leq::Fails) => Leq::Fails,
            (Leq::Fails, Leq::Holds) if x.hi == y.hi => Leq::Fails,
            (Leq::Holds, Leq::Fails) if x.lo == y.lo => Leq::Fails,
            _ => Leq::Incomparable,
        }
    }

    /// Bound-wise: `[x̲*, x̄*]`, an interval because closure is monotone.
    fn closure(&self, x: &Self::Elem) -> Result<Self::Elem> {
        Ok(Interval {
            lo: self.base.closure(&x.lo)?,
            hi: self.base.closure(&x.hi)?,
        })
    }

    /// `[z̲, z̲ ⊕ z̄]` with `z̲ⁿ = y̲`, `z̄ⁿ = ȳ`; the upper root is lifted so the
    /// result is a valid interval, which the freshman-dream law permits.
    fn nth_root(&self, y: &Self::Elem, n: usize) -> Result<Self::Elem> {
        let f = self.base.flags();
        if !f.algebraically_closed {
            return Err(self.missing("algebraically_closed"));
        }
        if !f.freshman_dream {
            return Err(self.missing("freshman_dream"));
        }
        let lo = self.base.nth_root(&y.lo, n)?;
        let hi = self.base.nth_root(&y.hi, n)?;
        let hi = self.base.add(&lo, &hi);
        Ok(Interval { lo, hi })
    }

    fn top(&self) -> Option<Self::Elem> {
        self.base.top().map(|t| self.point(t))
    }

    fn approx_eq(&self, x: &Self::Elem, y: &Self::Elem, rel_tol: f64) -> bool {
        self.base.approx_eq(&x.lo, &y.lo, rel_tol) && self.base.approx_eq(&x.hi, &y.hi, rel_tol)
    }

    fn describe(&self, x: &Self::Elem) -> String {
        format!("[{}, {}]", self.base.describe(&x.lo), self.base.describe(&x.hi))
    }
}

/// Lower and upper matrices of an interval matrix.
pub fn split<S: Semiring>(m: &IntervalMatrix<S>) -> (Matrix<S>, Matrix<S>) {
    let base = m.semiring().base().clone();
    (
        m.map(base.clone(), |iv| iv.lo.clone()),
        m.map(base, |iv| iv.hi.clone()),
    )
}

/// Interval matrix `[A̲, A̅]`; requires `A̲ ⪯ A̅` elementwise (and the strong
/// constraint per entry in strong mode).
pub fn merge<S: Semiring>(
    ext: IntervalExt<S>,
    lower: &Matrix<S>,
    upper: &Matrix<S>,
) -> Result<IntervalMatrix<S>> {
    if lower.rows() != upper.rows() || lower.cols() != upper.cols() {
        return Err(Error::DimensionMismatch {
            op: "merge",
            left_rows: lower.rows(),
            left_cols: lower.cols(),
            right_rows: upper.rows(),
            right_cols: upper.cols(),
        });
    }
    let data = lower
        .data()
        .iter()
        .zip(upper.data())
        .map(|(lo, hi)| ext.interval(lo.clone(), hi.clone()))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(ext, lower.rows(), lower.cols(), data)
}

/// `[A, A]`.
pub fn degenerate<S: Semiring>(ext: IntervalExt<S>, m: &Matrix<S>) -> IntervalMatrix<S> {
    let e = ext.clone();
    m.map(ext, |x| e.point(x.clone()))
}
