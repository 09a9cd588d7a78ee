//! The semiring contract and its concrete instances.
//!
//! A [`Semiring`] is a value (a "profile") that knows how to combine elements:
//! `add` (⊕), `mul` (⊙), the neutral elements, the order, and the partial
//! operations `closure` (x* = 𝟏 ⊕ x ⊕ x² ⊕ …) and `nth_root`. Capability
//! flags describe which structural properties an instance is known to have;
//! algorithms consult them instead of trying to decide them.
//!
//! [`Profile`] ships the six scalar instances (max-plus, min-plus, max-min,
//! Boolean, max-plus with a top element, nonnegative reals). [`Product`] is
//! the coordinate-wise direct product, the smallest example of a semiring
//! that is only partially ordered. [`Counting`] wraps any instance and counts
//! semiring operations.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Outcome of an order query `x ⪯ y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leq {
    Holds,
    /// The elements are comparable and `y ≺ x`.
    Fails,
    Incomparable,
}

impl Leq {
    pub fn holds(self) -> bool {
        self == Leq::Holds
    }
}

/// Declared structural properties of a semiring instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub idempotent: bool,
    pub commutative: bool,
    pub entire: bool,
    pub cancellative: bool,
    pub algebraically_closed: bool,
    pub stabilizing: bool,
    pub has_top: bool,
    /// `(x ⊕ y)^n = x^n ⊕ y^n` for all x, y, n.
    pub freshman_dream: bool,
    pub linearly_ordered: bool,
}

pub trait Semiring: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn flags(&self) -> Flags;

    /// Canonical order `x ⪯ y iff x ⊕ y = y`. Instances that are not
    /// idempotent must override this with their declared order.
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> Leq {
        let s = self.add(x, y);
        if s == *y {
            Leq::Holds
        } else if s == *x {
            Leq::Fails
        } else {
            Leq::Incomparable
        }
    }

    fn closure(&self, x: &Self::Elem) -> Result<Self::Elem> {
        Err(Error::ClosureUndefined {
            semiring: self.name(),
            element: self.describe(x),
        })
    }

    fn nth_root(&self, _y: &Self::Elem, _n: usize) -> Result<Self::Elem> {
        Err(self.missing("algebraically_closed"))
    }

    /// Multiplicative inverse of a nonzero element (semifields only).
    fn inverse(&self, _x: &Self::Elem) -> Result<Self::Elem> {
        Err(self.missing("semifield"))
    }

    fn top(&self) -> Option<Self::Elem> {
        None
    }

    /// Equality up to a relative tolerance on real parts. Exact by default.
    fn approx_eq(&self, x: &Self::Elem, y: &Self::Elem, _rel_tol: f64) -> bool {
        x == y
    }

    fn describe(&self, x: &Self::Elem) -> String {
        format!("{x:?}")
    }

    fn missing(&self, capability: &'static str) -> Error {
        Error::CapabilityMissing {
            semiring: self.name(),
            capability,
        }
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }

    /// `x ≺ y`.
    fn lt(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.leq(x, y).holds() && x != y
    }

    /// Least upper bound of two comparable elements. Coincides with ⊕ in the
    /// idempotent case; for positive semirings it selects the larger one.
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        if self.flags().idempotent {
            return self.add(x, y);
        }
        match self.leq(x, y) {
            Leq::Holds => y.clone(),
            _ => x.clone(),
        }
    }

    /// `x^n`, with `x^0 = 𝟏`.
    fn pow(&self, x: &Self::Elem, n: usize) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Tagged scalar value. Infinities are tags, never IEEE sentinels in
/// arithmetic, so `∞ ⊙ 𝟎 = 𝟎` holds by case analysis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Element {
    NegInf,
    PosInf,
    Finite(f64),
    Bool(bool),
}

impl Element {
    /// Position on the extended real line; used for comparisons only.
    pub fn key(&self) -> f64 {
        match *self {
            Element::NegInf => f64::NEG_INFINITY,
            Element::PosInf => f64::INFINITY,
            Element::Finite(v) => v,
            Element::Bool(b) => f64::from(u8::from(b)),
        }
    }

    pub fn as_finite(&self) -> Option<f64> {
        match *self {
            Element::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl From<f64> for Element {
    fn from(v: f64) -> Self {
        if v == f64::NEG_INFINITY {
            Element::NegInf
        } else if v == f64::INFINITY {
            Element::PosInf
        } else {
            Element::Finite(v)
        }
    }
}

impl From<bool> for Element {
    fn from(b: bool) -> Self {
        Element::Bool(b)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Element::NegInf => f.write_str("-inf"),
            Element::PosInf => f.write_str("inf"),
            Element::Finite(v) => write!(f, "{v}"),
            Element::Bool(b) => f.write_str(if b { "1" } else { "0" }),
        }
    }
}

/// The scalar semiring instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// ℝ ∪ {−∞}, ⊕ = max, ⊙ = +.
    MaxPlus,
    /// ℝ ∪ {+∞}, ⊕ = min, ⊙ = +.
    MinPlus,
    /// ℝ ∪ {±∞}, ⊕ = max, ⊙ = min.
    MaxMin,
    Boolean,
    /// Max-plus with a greatest element ∞ and `∞ ⊙ 𝟎 = 𝟎`.
    MaxPlusHat,
    /// Nonnegative reals with ordinary arithmetic; positive, not idempotent.
    NonNegReal,
}

impl Profile {
    pub const ALL: [Profile; 6] = [
        Profile::MaxPlus,
        Profile::MinPlus,
        Profile::MaxMin,
        Profile::Boolean,
        Profile::MaxPlusHat,
        Profile::NonNegReal,
    ];

    pub fn key(&self) -> &'static str {
        match self {
            Profile::MaxPlus => "max-plus",
            Profile::MinPlus => "min-plus",
            Profile::MaxMin => "max-min",
            Profile::Boolean => "boolean",
            Profile::MaxPlusHat => "max-plus-hat",
            Profile::NonNegReal => "nonneg-real",
        }
    }

    pub fn finite(&self, v: f64) -> Element {
        Element::Finite(v)
    }

    pub fn validate(&self, x: &Element) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidElement {
                semiring: self.key().to_string(),
                reason: format!("{x}: {reason}"),
            })
        };
        match (self, x) {
            (_, Element::Finite(v)) if !v.is_finite() => bad("not a finite real"),
            (Profile::Boolean, Element::Bool(_)) => Ok(()),
            (Profile::Boolean, _) | (_, Element::Bool(_)) => bad("wrong element domain"),
            (Profile::MaxPlus, Element::PosInf) => bad("+inf is not an element of max-plus"),
            (Profile::MinPlus, Element::NegInf) => bad("-inf is not an element of min-plus"),
            (Profile::NonNegReal, Element::Finite(v)) if *v < 0.0 => bad("negative"),
            (Profile::NonNegReal, Element::NegInf | Element::PosInf) => bad("infinite"),
            _ => Ok(()),
        }
    }

    /// Parses the text encoding: `-inf`, `inf`, decimal literals, and
    /// `0`/`1` (or `false`/`true`) for Boolean.
    pub fn parse(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        let x = if *self == Profile::Boolean {
            match t {
                "0" | "false" => Element::Bool(false),
                "1" | "true" => Element::Bool(true),
                _ => {
                    return Err(Error::InvalidElement {
                        semiring: self.key().to_string(),
                        reason: format!("{t:?} is not 0 or 1"),
                    })
                }
            }
        } else {
            match t {
                "-inf" | "-infinity" => Element::NegInf,
                "inf" | "+inf" | "infinity" => Element::PosInf,
                _ => {
                    let v: f64 = t.parse().map_err(|_| Error::InvalidElement {
                        semiring: self.key().to_string(),
                        reason: format!("{t:?} is not a number"),
                    })?;
                    Element::from(v)
                }
            }
        };
        self.validate(&x)?;
        Ok(x)
    }

    fn max(x: &Element, y: &Element) -> Element {
        if y.key() > x.key() {
            *y
        } else {
            *x
        }
    }

    fn min(x: &Element, y: &Element) -> Element {
        if y.key() < x.key() {
            *y
        } else {
            *x
        }
    }

    fn real_root(v: f64, n: usize) -> f64 {
        match n {
            1 => v,
            2 => v.sqrt(),
            3 => v.cbrt(),
            _ => v.powf(1.0 / n as f64),
        }
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Profile::ALL
            .into_iter()
            .find(|p| p.key() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown semiring key {s:?}")))
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Builds a profile from its key.
pub fn make_instance(key: &str) -> Result<Profile> {
    key.parse()
}

impl Semiring for Profile {
    type Elem = Element;

    fn name(&self) -> String {
        self.key().to_string()
    }

    fn zero(&self) -> Element {
        match self {
            Profile::MaxPlus | Profile::MaxMin | Profile::MaxPlusHat => Element::NegInf,
            Profile::MinPlus => Element::PosInf,
            Profile::Boolean => Element::Bool(false),
            Profile::NonNegReal => Element::Finite(0.0),
        }
    }

    fn one(&self) -> Element {
        match self {
            Profile::MaxPlus | Profile::MinPlus | Profile::MaxPlusHat => Element::Finite(0.0),
            Profile::MaxMin => Element::PosInf,
            Profile::Boolean => Element::Bool(true),
            Profile::NonNegReal => Element::Finite(1.0),
        }
    }

    fn add(&self, x: &Element, y: &Element) -> Element {
        match self {
            Profile::MaxPlus | Profile::MaxMin | Profile::MaxPlusHat => Profile::max(x, y),
            Profile::MinPlus => Profile::min(x, y),
            Profile::Boolean => match (x, y) {
                (Element::Bool(a), Element::Bool(b)) => Element::Bool(*a || *b),
                _ => unreachable!("non-Boolean element in Boolean semiring"),
            },
            Profile::NonNegReal => Element::Finite(x.key() + y.key()),
        }
    }

    fn mul(&self, x: &Element, y: &Element) -> Element {
        use Element::*;
        match self {
            Profile::MaxPlus => match (x, y) {
                (NegInf, _) | (_, NegInf) => NegInf,
                _ => Finite(x.key() + y.key()),
            },
            Profile::MinPlus => match (x, y) {
                (PosInf, _) | (_, PosInf) => PosInf,
                _ => Finite(x.key() + y.key()),
            },
            Profile::MaxMin => Profile::min(x, y),
            Profile::MaxPlusHat => match (x, y) {
                (NegInf, _) | (_, NegInf) => NegInf,
                (PosInf, _) | (_, PosInf) => PosInf,
                _ => Finite(x.key() + y.key()),
            },
            Profile::Boolean => match (x, y) {
                (Bool(a), Bool(b)) => Bool(*a && *b),
                _ => unreachable!("non-Boolean element in Boolean semiring"),
            },
            Profile::NonNegReal => Finite(x.key() * y.key()),
        }
    }

    fn flags(&self) -> Flags {
        let tropical = Flags {
            idempotent: true,
            commutative: true,
            entire: true,
            cancellative: true,
            algebraically_closed: true,
            stabilizing: true,
            has_top: false,
            freshman_dream: true,
            linearly_ordered: true,
        };
        match self {
            Profile::MaxPlus | Profile::MinPlus => tropical,
            Profile::MaxMin | Profile::MaxPlusHat => Flags {
                cancellative: false,
                has_top: true,
                ..tropical
            },
            Profile::Boolean => Flags {
                has_top: true,
                ..tropical
            },
            Profile::NonNegReal => Flags {
                idempotent: false,
                commutative: true,
                entire: true,
                cancellative: true,
                algebraically_closed: true,
                stabilizing: false,
                has_top: false,
                freshman_dream: false,
                linearly_ordered: true,
            },
        }
    }

    fn leq(&self, x: &Element, y: &Element) -> Leq {
        let holds = match self {
            Profile::MinPlus => x.key() >= y.key(),
            _ => x.key() <= y.key(),
        };
        if holds {
            Leq::Holds
        } else {
            Leq::Fails
        }
    }

    fn closure(&self, x: &Element) -> Result<Element> {
        let undefined = || Error::ClosureUndefined {
            semiring: self.name(),
            element: x.to_string(),
        };
        match self {
            Profile::MaxPlus | Profile::MinPlus => {
                if self.leq(x, &self.one()).holds() {
                    Ok(self.one())
                } else {
                    Err(undefined())
                }
            }
            Profile::MaxPlusHat => {
                if self.leq(x, &self.one()).holds() {
                    Ok(self.one())
                } else {
                    Ok(Element::PosInf)
                }
            }
            Profile::MaxMin | Profile::Boolean => Ok(self.one()),
            Profile::NonNegReal => {
                let v = x.key();
                if v < 1.0 {
                    Ok(Element::Finite(1.0 / (1.0 - v)))
                } else {
                    Err(undefined())
                }
            }
        }
    }

    fn nth_root(&self, y: &Element, n: usize) -> Result<Element> {
        if n == 0 {
            return Err(Error::RootUndefined {
                semiring: self.name(),
                element: y.to_string(),
                n,
            });
        }
        Ok(match (self, y) {
            (Profile::MaxMin | Profile::Boolean, _) => *y,
            (_, Element::Finite(v)) if *self == Profile::NonNegReal => {
                Element::Finite(Profile::real_root(*v, n))
            }
            (_, Element::Finite(v)) => Element::Finite(v / n as f64),
            _ => *y,
        })
    }

    fn inverse(&self, x: &Element) -> Result<Element> {
        let not_invertible = || Error::InvalidElement {
            semiring: self.name(),
            reason: format!("{x} is not invertible"),
        };
        match (self, x) {
            (Profile::MaxPlus | Profile::MinPlus, Element::Finite(v)) => Ok(Element::Finite(-v)),
            (Profile::NonNegReal, Element::Finite(v)) if *v > 0.0 => Ok(Element::Finite(1.0 / v)),
            (Profile::Boolean, Element::Bool(true)) => Ok(*x),
            (Profile::MaxMin | Profile::MaxPlusHat, _) => Err(self.missing("semifield")),
            _ => Err(not_invertible()),
        }
    }

    fn top(&self) -> Option<Element> {
        match self {
            Profile::MaxMin | Profile::MaxPlusHat => Some(Element::PosInf),
            Profile::Boolean => Some(Element::Bool(true)),
            _ => None,
        }
    }

    fn approx_eq(&self, x: &Element, y: &Element, rel_tol: f64) -> bool {
        match (x, y) {
            (Element::Finite(a), Element::Finite(b)) => {
                (a - b).abs() <= rel_tol * a.abs().max(b.abs()).max(1.0)
            }
            _ => x == y,
        }
    }

    fn describe(&self, x: &Element) -> String {
        x.to_string()
    }
}

/// Coordinate-wise direct product `S₁ × S₂`. Only partially ordered, and
/// not entire: `(𝟎, 𝟏) ⊙ (𝟏, 𝟎) = (𝟎, 𝟎)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Product<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: Semiring, B: Semiring> Product<A, B> {
    pub fn new(left: A, right: B) -> Self {
        Product { left, right }
    }
}

impl<A: Semiring, B: Semiring> Semiring for Product<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn name(&self) -> String {
        format!("({})x({})", self.left.name(), self.right.name())
    }

    fn zero(&self) -> Self::Elem {
        (self.left.zero(), self.right.zero())
    }

    fn one(&self) -> Self::Elem {
        (self.left.one(), self.right.one())
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.left.add(&x.0, &y.0), self.right.add(&x.1, &y.1))
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.left.mul(&x.0, &y.0), self.right.mul(&x.1, &y.1))
    }

    fn flags(&self) -> Flags {
        let (l, r) = (self.left.flags(), self.right.flags());
        Flags {
            idempotent: l.idempotent && r.idempotent,
            commutative: l.commutative && r.commutative,
            entire: false,
            cancellative: false,
            algebraically_closed: l.algebraically_closed && r.algebraically_closed,
            stabilizing: l.stabilizing && r.stabilizing,
            has_top: l.has_top && r.has_top,
            freshman_dream: l.freshman_dream && r.freshman_dream,
            linearly_ordered: false,
        }
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> Leq {
        match (self.left.leq(&x.0, &y.0), self.right.leq(&x.1, &y.1)) {
            (Leq::Holds, Leq::Holds) => Leq::Holds,
            (Leq::Incomparable, _) | (_, Leq::Incomparable) => Leq::Incomparable,
            (Leq::Fails, Leq::Fails) => Leq::Fails,
            // y ⪯ x in one coordinate only when the other coordinates agree.
            (Leq::Fails, Leq::Holds) if x.1 == y.1 => Leq::Fails,
            (Leq::Holds, Leq::Fails) if x.0 == y.0 => Leq::Fails,
            _ => Leq::Incomparable,
        }
    }

    fn closure(&self, x: &Self::Elem) -> Result<Self::Elem> {
        Ok((self.left.closure(&x.0)?, self.right.closure(&x.1)?))
    }

    fn nth_root(&self, y: &Self::Elem, n: usize) -> Result<Self::Elem> {
        Ok((self.left.nth_root(&y.0, n)?, self.right.nth_root(&y.1, n)?))
    }

    fn top(&self) -> Option<Self::Elem> {
        Some((self.left.top()?, self.right.top()?))
    }

    fn approx_eq(&self, x: &Self::Elem, y: &Self::Elem, rel_tol: f64) -> bool {
        self.left.approx_eq(&x.0, &y.0, rel_tol) && self.right.approx_eq(&x.1, &y.1, rel_tol)
    }
}

/// Wraps a semiring and counts ⊕, ⊙ and scalar-closure evaluations.
/// Clones share the counter.
#[derive(Clone, Debug)]
pub struct Counting<S> {
    inner: S,
    ops: Arc<AtomicU64>,
}

impl<S: Semiring> Counting<S> {
    pub fn new(inner: S) -> Self {
        Counting {
            inner,
            ops: Arc::new(AtomicU64::new(0)),
        }
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    pub fn count(&self) -> u64 {
        self.ops.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.ops.store(0, Ordering::Relaxed);
    }

    fn tick(&self) {
        self.ops.fetch_add(1, Ordering::Relaxed);
    }
}

impl<S: Semiring> Semiring for Counting<S> {
    type Elem = S::Elem;

    fn name(&self) -> String {
        self.inner.name()
    }

    fn zero(&self) -> S::Elem {
        self.inner.zero()
    }

    fn one(&self) -> S::Elem {
        self.inner.one()
    }

    fn add(&self, x: &S::Elem, y: &S::Elem) -> S::Elem {
        self.tick();
        self.inner.add(x, y)
    }

    fn mul(&self, x: &S::Elem, y: &S::Elem) -> S::Elem {
        self.tick();
        self.inner.mul(x, y)
    }

    fn flags(&self) -> Flags {
        self.inner.flags()
    }

    fn leq(&self, x: &S::Elem, y: &S::Elem) -> Leq {
        self.inner.leq(x, y)
    }

    fn closure(&self, x: &S::Elem) -> Result<S::Elem> {
        self.tick();
        self.inner.closure(x)
    }

    fn nth_root(&self, y: &S::Elem, n: usize) -> Result<S::Elem> {
        self.inner.nth_root(y, n)
    }

    fn inverse(&self, x: &S::Elem) -> Result<S::Elem> {
        self.inner.inverse(x)
    }

    fn top(&self) -> Option<S::Elem> {
        self.inner.top()
    }

    fn approx_eq(&self, x: &S::Elem, y: &S::Elem, rel_tol: f64) -> bool {
        self.inner.approx_eq(x, y, rel_tol)
    }

    fn describe(&self, x: &S::Elem) -> String {
        self.inner.describe(x)
    }
}
