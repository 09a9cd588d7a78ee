//! Independent oracles and generators shared by the integration tests.
//!
//! The oracles work from definitions only: path sums by walk enumeration,
//! cycle means by enumerating elementary cycles, reachability by search.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;

use semiring_core::{Element, IntervalExt, IntervalMatrix, Matrix, Mode, Profile, Semiring};

pub const NI: f64 = f64::NEG_INFINITY;
pub const PI: f64 = f64::INFINITY;

pub fn f(v: f64) -> Element {
    Element::Finite(v)
}

/// ⊕ over all walks from `i` to `j` with at most `max_len` arcs of the
/// left-to-right ⊙-product of their arc weights.
pub fn path_sum<S: Semiring>(a: &Matrix<S>, i: usize, j: usize, max_len: usize) -> S::Elem {
    fn walk<S: Semiring>(a: &Matrix<S>, at: usize, to: usize, left: usize, acc: &S::Elem, total: &mut S::Elem) {
        let sr = a.semiring();
        if at == to {
            *total = sr.add(total, acc);
        }
        if left == 0 {
            return;
        }
        for next in 0..a.cols() {
            let w = a.get(at, next);
            if !sr.is_zero(w) {
                walk(a, next, to, left - 1, &sr.mul(acc, w), total);
            }
        }
    }
    let sr = a.semiring();
    let mut total = sr.zero();
    walk(a, i, j, max_len, &sr.one(), &mut total);
    total
}

/// All elementary cycles of the support digraph, each listed once starting
/// from its smallest node.
pub fn elementary_cycles<S: Semiring>(a: &Matrix<S>) -> Vec<Vec<usize>> {
    fn extend<S: Semiring>(a: &Matrix<S>, start: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let at = *path.last().expect("nonempty");
        for next in start..a.cols() {
            if a.semiring().is_zero(a.get(at, next)) {
                continue;
            }
            if next == start {
                out.push(path.clone());
            } else if !path.contains(&next) {
                path.push(next);
                extend(a, start, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..a.rows() {
        extend(a, s, &mut vec![s], &mut out);
    }
    out
}

/// Real weight of a cycle given as its node list.
pub fn cycle_weight(a: &Matrix<Profile>, cycle: &[usize]) -> f64 {
    (0..cycle.len())
        .map(|k| a.get(cycle[k], cycle[(k + 1) % cycle.len()]).key())
        .sum()
}

/// Maximum cycle mean for max-plus-like instances, minimum for min-plus.
pub fn extreme_cycle_mean(a: &Matrix<Profile>) -> Option<f64> {
    let means = elementary_cycles(a)
        .into_iter()
        .map(|c| cycle_weight(a, &c) / c.len() as f64);
    match a.semiring() {
        Profile::MinPlus => means.reduce(f64::min),
        _ => means.reduce(f64::max),
    }
}

/// Reflexive-transitive reachability by depth-first search.
pub fn reachability<S: Semiring>(a: &Matrix<S>) -> Vec<Vec<bool>> {
    let n = a.rows();
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if !seen[v] && !a.semiring().is_zero(a.get(u, v)) {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Quarter-integer in [-10, 10]; sums and differences of such values are exact.
pub fn lattice<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    f64::from(rng.gen_range(-40..=40)) / 4.0
}

/// Random entry with the given probability of being 𝟎; finite values on the
/// quarter lattice (eighths in [0, 0.9] for ℝ₊).
pub fn random_entry<R: Rng + ?Sized>(p: Profile, density: f64, rng: &mut R) -> Element {
    if !rng.gen_bool(density) {
        return p.zero();
    }
    match p {
        Profile::Boolean => Element::Bool(true),
        Profile::NonNegReal => f(f64::from(rng.gen_range(1..=7)) / 8.0),
        _ => f(lattice(rng)),
    }
}

pub fn random_matrix<R: Rng + ?Sized>(p: Profile, rows: usize, cols: usize, density: f64, rng: &mut R) -> Matrix<Profile> {
    Matrix::from_fn(p, rows, cols, |_, _| random_entry(p, density, rng))
}

/// Shifts all finite entries by the integer that brings the extreme cycle
/// mean to at most 𝟏, keeping lattice values exact. Instances whose
/// elements are all below 𝟏 are returned unchanged.
pub fn make_semi_definite(a: Matrix<Profile>) -> Matrix<Profile> {
    let p = *a.semiring();
    let shift = match (p, extreme_cycle_mean(&a)) {
        (Profile::MaxPlus | Profile::MaxPlusHat, Some(m)) if m > 0.0 => -m.ceil(),
        (Profile::MinPlus, Some(m)) if m < 0.0 => (-m).ceil(),
        _ => return a,
    };
    a.map(p, |x| match x {
        Element::Finite(v) => f(v + shift),
        other => *other,
    })
}

pub fn random_semi_definite<R: Rng + ?Sized>(p: Profile, n: usize, density: f64, rng: &mut R) -> Matrix<Profile> {
    make_semi_definite(random_matrix(p, n, n, density, rng))
}

/// A matrix entrywise below `upper`: each entry is 𝟎, the upper entry, or a
/// random element below it. In strong mode zero lower bounds only occur
/// under zero upper bounds.
pub fn lower_below<R: Rng + ?Sized>(upper: &Matrix<Profile>, mode: Mode, rng: &mut R) -> Matrix<Profile> {
    let p = *upper.semiring();
    let data = upper
        .data()
        .iter()
        .map(|hi| {
            let lo = match rng.gen_range(0..4) {
                0 => p.zero(),
                1 => *hi,
                _ => {
                    let x = random_entry(p, 1.0, rng);
                    if p.leq(&x, hi).holds() {
                        x
                    } else {
                        *hi
                    }
                }
            };
            if mode == Mode::Strong && p.is_zero(&lo) {
                *hi
            } else {
                lo
            }
        })
        .collect();
    Matrix::new(p, upper.rows(), upper.cols(), data).expect("same shape")
}

/// Interval system `(𝐀, 𝐁)` with a semi-definite upper matrix, `A` n×n and
/// `B` n×s.
pub fn random_interval_system<R: Rng + ?Sized>(
    p: Profile,
    mode: Mode,
    n: usize,
    s: usize,
    rng: &mut R,
) -> (IntervalMatrix<Profile>, IntervalMatrix<Profile>) {
    let ext = IntervalExt::new(p, mode).expect("entire base");
    let a_hi = random_semi_definite(p, n, 0.6, rng);
    let b_hi = random_matrix(p, n, s, 0.7, rng);
    let a_lo = lower_below(&a_hi, mode, rng);
    let b_lo = lower_below(&b_hi, mode, rng);
    (
        semiring_core::merge(ext.clone(), &a_lo, &a_hi).expect("ordered"),
        semiring_core::merge(ext, &b_lo, &b_hi).expect("ordered"),
    )
}

/// Strategy for lattice elements of an instance, with 𝟎, 𝟏 and the top mixed in.
pub fn element(p: Profile) -> BoxedStrategy<Element> {
    match p {
        Profile::Boolean => any::<bool>().prop_map(Element::Bool).boxed(),
        Profile::NonNegReal => prop_oneof![
            1 => Just(f(0.0)),
            1 => Just(f(1.0)),
            8 => (0u32..=32).prop_map(|k| f(f64::from(k) / 8.0)),
        ]
        .boxed(),
        _ => {
            let finite = (-400i32..=400).prop_map(|k| f(f64::from(k) / 4.0));
            match p.top() {
                Some(top) => prop_oneof![1 => Just(p.zero()), 1 => Just(p.one()), 1 => Just(top), 8 => finite].boxed(),
                None => prop_oneof![1 => Just(p.zero()), 1 => Just(p.one()), 8 => finite].boxed(),
            }
        }
    }
}

pub fn profile() -> impl Strategy<Value = Profile> {
    prop::sample::select(Profile::ALL.to_vec())
}

pub fn idempotent_profile() -> impl Strategy<Value = Profile> {
    prop::sample::select(
        Profile::ALL
            .into_iter()
            .filter(|p| p.flags().idempotent)
            .collect::<Vec<_>>(),
    )
}

pub fn matrix(p: Profile, rows: usize, cols: usize) -> BoxedStrategy<Matrix<Profile>> {
    prop::collection::vec(element(p), rows * cols)
        .prop_map(move |data| Matrix::new(p, rows, cols, data).expect("shape"))
        .boxed()
}

/// Strategy for a valid interval of the extension.
pub fn interval(ext: IntervalExt<Profile>) -> BoxedStrategy<semiring_core::Interval<Element>> {
    let p = *ext.base();
    (element(p), element(p))
        .prop_map(move |(a, b)| {
            let hi = p.add(&a, &b);
            let lo = if ext.mode() == Mode::Strong && p.is_zero(&a) { hi } else { a };
            ext.interval(lo, hi).expect("valid interval")
        })
        .boxed()
}
