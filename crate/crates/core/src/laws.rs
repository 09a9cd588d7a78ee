//! Randomized law checks for any [`Semiring`] implementation.
//!
//! Used by the `check` subcommand and by the test suites. Results of ⊕ in
//! idempotent instances are selections and are compared exactly; anything
//! involving ⊙ (or ⊕ in a non-idempotent instance) is compared with the
//! instance's `approx_eq` at the given relative tolerance.

use std::collections::BTreeMap;

use rand::Rng;

use crate::semiring::{Leq, Semiring};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawOutcome {
    pub checked: usize,
    pub failed: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub semiring: String,
    pub cases: usize,
    pub laws: BTreeMap<&'static str, LawOutcome>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.laws.values().all(|o| o.failed == 0)
    }

    pub fn failed_laws(&self) -> Vec<&'static str> {
        self.laws
            .iter()
            .filter(|(_, o)| o.failed > 0)
            .map(|(k, _)| *k)
            .collect()
    }

    pub fn outcome(&self, law: &str) -> Option<&LawOutcome> {
        self.laws.get(law)
    }
}

type Laws = BTreeMap<&'static str, LawOutcome>;

fn record(laws: &mut Laws, law: &'static str, ok: bool, witness: impl FnOnce() -> String) {
    let entry = laws.entry(law).or_default();
    entry.checked += 1;
    if !ok {
        entry.failed += 1;
        if entry.counterexample.is_none() {
            entry.counterexample = Some(witness());
        }
    }
}

struct Recorder<'a, S: Semiring> {
    sr: &'a S,
    tol: f64,
    exact_add: bool,
}

impl<S: Semiring> Recorder<'_, S> {
    fn same(&self, x: &S::Elem, y: &S::Elem) -> bool {
        x == y || self.sr.approx_eq(x, y, self.tol)
    }

    fn same_sum(&self, x: &S::Elem, y: &S::Elem) -> bool {
        if self.exact_add {
            x == y
        } else {
            self.same(x, y)
        }
    }

    fn below(&self, x: &S::Elem, y: &S::Elem) -> bool {
        self.sr.leq(x, y).holds() || self.same(x, y)
    }

    fn show(&self, xs: &[&S::Elem]) -> String {
        xs.iter()
            .map(|x| self.sr.describe(x))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Checks the semiring axioms and every flagged property on `cases` random
/// triples drawn by `sample`.
pub fn check_semiring<S, R, F>(sr: &S, cases: usize, rng: &mut R, mut sample: F, tol: f64) -> LawReport
where
    S: Semiring,
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> S::Elem,
{
    let flags = sr.flags();
    let rec = Recorder {
        sr,
        tol,
        exact_add: flags.idempotent,
    };
    let mut laws = Laws::new();
    let zero = sr.zero();
    let one = sr.one();

    for _ in 0..cases {
        let x = sample(rng);
        let y = sample(rng);
        let z = sample(rng);
        let show = |r: &Recorder<S>| r.show(&[&x, &y, &z]);

        let l = sr.add(&sr.add(&x, &y), &z);
        let r = sr.add(&x, &sr.add(&y, &z));
        let ok = rec.same_sum(&l, &r);
        record(&mut laws, "add_associative", ok, || show(&rec));

        let ok = rec.same_sum(&sr.add(&x, &y), &sr.add(&y, &x));
        record(&mut laws, "add_commutative", ok, || show(&rec));

        let l = sr.mul(&sr.mul(&x, &y), &z);
        let r = sr.mul(&x, &sr.mul(&y, &z));
        let ok = rec.same(&l, &r);
        record(&mut laws, "mul_associative", ok, || show(&rec));

        if flags.commutative {
            let ok = rec.same(&sr.mul(&x, &y), &sr.mul(&y, &x));
            record(&mut laws, "mul_commutative", ok, || show(&rec));
        }

        let l = sr.mul(&x, &sr.add(&y, &z));
        let r = sr.add(&sr.mul(&x, &y), &sr.mul(&x, &z));
        let ok = rec.same(&l, &r);
        record(&mut laws, "left_distributive", ok, || show(&rec));

        let l = sr.mul(&sr.add(&x, &y), &z);
        let r = sr.add(&sr.mul(&x, &z), &sr.mul(&y, &z));
        let ok = rec.same(&l, &r);
        record(&mut laws, "right_distributive", ok, || show(&rec));

        let ok = sr.add(&x, &zero) == x && sr.add(&zero, &x) == x;
        record(&mut laws, "zero_neutral", ok, || show(&rec));

        let ok = sr.mul(&x, &one) == x && sr.mul(&one, &x) == x;
        record(&mut laws, "one_neutral", ok, || show(&rec));

        let ok = sr.is_zero(&sr.mul(&x, &zero)) && sr.is_zero(&sr.mul(&zero, &x));
        record(&mut laws, "zero_absorbs", ok, || show(&rec));

        let ok = sr.leq(&zero, &x).holds();
        record(&mut laws, "zero_least", ok, || show(&rec));

        if flags.idempotent {
            let ok = sr.add(&x, &x) == x;
            record(&mut laws, "add_idempotent", ok, || show(&rec));

            let canonical = sr.add(&x, &y) == y;
            let ok = sr.leq(&x, &y).holds() == canonical;
            record(&mut laws, "order_canonical", ok, || show(&rec));
        }

        // y' = x ⊕ y dominates x in any positive semiring.
        let up = sr.add(&x, &y);
        let ok = rec.below(&x, &up);
        record(&mut laws, "order_below_sum", ok, || show(&rec));
        let ok = rec.below(&sr.add(&x, &z), &sr.add(&up, &z))
            && rec.below(&sr.add(&z, &x), &sr.add(&z, &up))
            && rec.below(&sr.mul(&x, &z), &sr.mul(&up, &z))
            && rec.below(&sr.mul(&z, &x), &sr.mul(&z, &up));
        record(&mut laws, "order_monotone", ok, || show(&rec));

        if flags.freshman_dream {
            let n = rng.gen_range(1..=8);
            let l = sr.pow(&sr.add(&x, &y), n);
            let r = sr.add(&sr.pow(&x, n), &sr.pow(&y, n));
            let ok = rec.same(&l, &r);
            record(&mut laws, "freshman_dream", ok, || format!("{} at n = {n}", show(&rec)));
        }

        if flags.cancellative && !sr.is_zero(&z) {
            for other in [&y, &up] {
                let premise = sr.mul(&x, &z) == sr.mul(other, &z) || sr.mul(&z, &x) == sr.mul(&z, other);
                let ok = !premise || x == *other;
                record(&mut laws, "cancellative", ok, || rec.show(&[&x, other, &z]));
            }
        }

        if let Ok(cx) = sr.closure(&x) {
            let rhs = sr.add(&one, &sr.mul(&x, &cx));
            let ok = rec.same(&cx, &rhs);
            record(&mut laws, "closure_fixed_point", ok, || show(&rec));
            if let Ok(cu) = sr.closure(&up) {
                let ok = rec.below(&cx, &cu);
                record(&mut laws, "closure_monotone", ok, || show(&rec));
            }
        }

        if flags.algebraically_closed {
            let n = rng.gen_range(1..=8);
            match sr.nth_root(&x, n) {
                Ok(root) => {
                    let ok = rec.same(&sr.pow(&root, n), &x);
                    record(&mut laws, "nth_root_roundtrip", ok, || format!("{} at n = {n}", show(&rec)));
                }
                Err(e) => record(&mut laws, "nth_root_roundtrip", false, || format!("{}: {e}", show(&rec))),
            }
        }

        if !flags.linearly_ordered {
            continue;
        }
        let ok = sr.leq(&x, &y) != Leq::Incomparable;
        record(&mut laws, "linear_order", ok, || show(&rec));
    }

    LawReport {
        semiring: sr.name(),
        cases,
        laws,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{IntervalExt, Mode};
    use crate::sample::{self, Sampling};
    use crate::semiring::{Element, Product, Profile};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_instances_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in Profile::ALL {
            let report = check_semiring(&p, 300, &mut rng, |r| sample::element(p, r, Sampling::Continuous), 1e-12);
            assert!(report.passed(), "{p}: {:?}", report.failed_laws());
            assert!(report.outcome("add_associative").unwrap().checked == 300);
        }
    }

    #[test]
    fn interval_extensions_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for p in Profile::ALL {
            for mode in [Mode::Weak, Mode::Strong] {
                let ext = IntervalExt::new(p, mode).unwrap();
                let report = check_semiring(&ext, 300, &mut rng, |r| sample::interval(&ext, r, Sampling::Lattice), 1e-12);
                assert!(report.passed(), "{}: {:?}", ext.name(), report);
            }
        }
    }

    #[test]
    fn product_is_partially_ordered() {
        let sr = Product::new(Profile::MaxPlus, Profile::MaxPlus);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let report = check_semiring(
            &sr,
            200,
            &mut rng,
            |r| {
                (
                    sample::element(Profile::MaxPlus, r, Sampling::Lattice),
                    sample::element(Profile::MaxPlus, r, Sampling::Lattice),
                )
            },
            1e-12,
        );
        assert!(report.passed(), "{report:?}");
        assert!(report.outcome("linear_order").is_none());
    }

    /// A deliberately broken instance: ⊕ = + on ℝ_max elements is not idempotent.
    #[derive(Clone, Debug)]
    struct Broken;

    impl Semiring for Broken {
        type Elem = Element;
        fn name(&self) -> String {
            "broken".into()
        }
        fn zero(&self) -> Element {
            Element::NegInf
        }
        fn one(&self) -> Element {
            Element::Finite(0.0)
        }
        fn add(&self, x: &Element, y: &Element) -> Element {
            Profile::MaxPlus.mul(x, y)
        }
        fn mul(&self, x: &Element, y: &Element) -> Element {
            Profile::MaxPlus.mul(x, y)
        }
        fn flags(&self) -> crate::semiring::Flags {
            crate::semiring::Flags {
                idempotent: true,
                ..Default::default()
            }
        }
    }

    #[test]
    fn detects_violations() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let report = check_semiring(&Broken, 100, &mut rng, |r| Element::Finite(f64::from(r.gen_range(1..5))), 0.0);
        assert!(!report.passed());
        let failed = report.failed_laws();
        assert!(failed.contains(&"add_idempotent"));
        assert!(failed.contains(&"zero_neutral"));
        assert!(report.outcome("add_idempotent").unwrap().counterexample.is_some());
    }
}
