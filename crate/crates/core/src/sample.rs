//! Random elements, intervals and matrices for law checks and sampling oracles.

use rand::Rng;

use crate::interval::{Interval, IntervalExt, Mode};
use crate::matrix::Matrix;
use crate::semiring::{Element, Profile, Semiring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// Finite values on a dyadic grid; sums and products of a few such values
    /// are exact in binary floating point.
    Lattice,
    Continuous,
}

fn finite<R: Rng + ?Sized>(p: Profile, rng: &mut R, sampling: Sampling) -> f64 {
    match (p, sampling) {
        (Profile::NonNegReal, Sampling::Lattice) => f64::from(rng.gen_range(0..=32)) / 8.0,
        (Profile::NonNegReal, Sampling::Continuous) => rng.gen_range(0.0..4.0),
        (_, Sampling::Lattice) => f64::from(rng.gen_range(-100..=100)) / 4.0,
        (_, Sampling::Continuous) => rng.gen_range(-100.0..100.0),
    }
}

/// A random element: mostly finite, with 𝟎, 𝟏 and the top element (when
/// there is one) mixed in.
pub fn element<R: Rng + ?Sized>(p: Profile, rng: &mut R, sampling: Sampling) -> Element {
    if p == Profile::Boolean {
        return Element::Bool(rng.gen_bool(0.5));
    }
    let roll: f64 = rng.gen();
    if roll < 0.1 {
        p.zero()
    } else if roll < 0.15 {
        p.one()
    } else if roll < 0.2 && p.top().is_some() {
        p.top().expect("checked")
    } else {
        Element::Finite(finite(p, rng, sampling))
    }
}

/// A random nonzero element.
pub fn nonzero<R: Rng + ?Sized>(p: Profile, rng: &mut R, sampling: Sampling) -> Element {
    loop {
        let x = element(p, rng, sampling);
        if !p.is_zero(&x) {
            return x;
        }
    }
}

/// A random valid interval of the extension.
pub fn interval<R: Rng + ?Sized>(
    ext: &IntervalExt<Profile>,
    rng: &mut R,
    sampling: Sampling,
) -> Interval<Element> {
    let p = *ext.base();
    loop {
        let lo = element(p, rng, sampling);
        let hi = p.add(&lo, &element(p, rng, sampling));
        if ext.mode() == Mode::Strong && p.is_zero(&lo) && !p.is_zero(&hi) {
            if rng.gen_bool(0.5) {
                return ext.zero();
            }
            continue;
        }
        return ext.interval(lo, hi).expect("lo ⪯ lo ⊕ w");
    }
}

/// A random element of the interval `[lo, hi]`: either bound, or for two
/// finite bounds an affine blend on the real scale. Zero and infinite bounds
/// are taken as they are.
pub fn between<R: Rng + ?Sized>(lo: &Element, hi: &Element, rng: &mut R) -> Element {
    match rng.gen_range(0..3) {
        0 => *lo,
        1 => *hi,
        _ => match (lo, hi) {
            (Element::Finite(a), Element::Finite(b)) => {
                let t: f64 = rng.gen();
                let v = a + t * (b - a);
                Element::Finite(v.clamp(a.min(*b), a.max(*b)))
            }
            _ => {
                if rng.gen_bool(0.5) {
                    *lo
                } else {
                    *hi
                }
            }
        },
    }
}

/// A point matrix `A` with `A̲ ⪯ A ⪯ A̅`, drawn entry by entry.
pub fn matrix_between<R: Rng + ?Sized>(
    lower: &Matrix<Profile>,
    upper: &Matrix<Profile>,
    rng: &mut R,
) -> Matrix<Profile> {
    let data = lower
        .data()
        .iter()
        .zip(upper.data())
        .map(|(lo, hi)| between(lo, hi, rng))
        .collect();
    Matrix::new(*lower.semiring(), lower.rows(), lower.cols(), data).expect("same shape")
}
