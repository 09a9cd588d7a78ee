//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p semiring-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semiring_core::bellman::{iterate, sample_united_check, solve_interval, spectral_criterion};
use semiring_core::graph::{best_profit, matrix_to_graph, max_width_paths, shortest_paths, Horizon};
use semiring_core::laws::check_semiring;
use semiring_core::sample::{self, Sampling};
use semiring_core::{
    merge, Counting, Element, IntervalExt, IntervalMatrix, Matrix, Mode, Profile, Semiring,
};

type Outcome = (bool, String);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Law suite on every instance, 1000 continuous triples each.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut failed = Vec::new();
    let mut checks = 0;
    for p in Profile::ALL {
        let report = check_semiring(&p, 1000, &mut r, |r| sample::element(p, r, Sampling::Continuous), 1e-12);
        checks += report.laws.values().map(|o| o.checked).sum::<usize>();
        for law in report.failed_laws() {
            failed.push(format!("{p}:{law}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = failed.is_empty() && secs < 5.0;
    (ok, format!("{checks} law checks on 6 instances in {secs:.2}s, violations {failed:?}"))
}

/// Carré truncation: A^(n-1) sum equals A^(n+2) sum and the closure.
fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let mut bad = 0;
    for i in 0..200 {
        let p = if i % 2 == 0 { Profile::MaxPlus } else { Profile::MinPlus };
        let n = r.gen_range(2..=6);
        let a = random_semi_definite(p, n, 0.7, &mut r);
        let short = a.power_sum(n - 1).unwrap();
        if short != a.power_sum(n + 2).unwrap() || a.closure().ok() != Some(short) {
            bad += 1;
        }
    }
    (bad == 0, format!("200 semi-definite matrices, {bad} mismatches"))
}

/// Path problems against walk enumeration.
fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut bad = Vec::new();
    let mut cases = 0;
    for example in ["shortest", "width", "profit", "reachability"] {
        for _ in 0..100 {
            let n = r.gen_range(1..=4);
            let p = match example {
                "shortest" => Profile::MinPlus,
                "width" => Profile::MaxMin,
                "profit" => Profile::MaxPlus,
                _ => Profile::Boolean,
            };
            let a = random_semi_definite(p, n, 0.5, &mut r);
            let g = matrix_to_graph(&a).unwrap();
            let expect = |i: usize, j: usize| path_sum(&a, i, j, n - 1);
            let ok = match example {
                "shortest" | "width" => {
                    let got = if p == Profile::MinPlus { shortest_paths(&g) } else { max_width_paths(&g) }.unwrap();
                    (0..n).all(|i| (0..n).all(|j| got.get(i, j) == &expect(i, j)))
                }
                "profit" => {
                    let b = random_matrix(p, n, 1, 0.8, &mut r);
                    let got = best_profit(&g, &b, Horizon::Unbounded).unwrap();
                    (0..n).all(|i| {
                        let want = (0..n).fold(p.zero(), |acc, j| p.add(&acc, &p.mul(&expect(i, j), b.get(j, 0))));
                        got.get(i, 0) == &want
                    })
                }
                _ => {
                    let got = a.closure().unwrap();
                    let reach = reachability(&a);
                    (0..n).all(|i| {
                        (0..n).all(|j| got.get(i, j) == &expect(i, j) && got.get(i, j) == &Element::Bool(reach[i][j]))
                    })
                }
            };
            cases += 1;
            if !ok {
                bad.push(example);
            }
        }
    }
    (bad.is_empty(), format!("{cases} graphs with n <= 4, mismatches {bad:?}"))
}

/// Interval distributivity and associativity, exact on the lattice.
fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut bad = Vec::new();
    let mut triples = 0;
    for p in Profile::ALL {
        for mode in [Mode::Weak, Mode::Strong] {
            let e = IntervalExt::new(p, mode).unwrap();
            for _ in 0..1000 {
                let [x, y, z] = [0; 3].map(|_| sample::interval(&e, &mut r, Sampling::Lattice));
                let laws = [
                    e.mul(&x, &e.add(&y, &z)) == e.add(&e.mul(&x, &y), &e.mul(&x, &z)),
                    e.mul(&e.add(&x, &y), &z) == e.add(&e.mul(&x, &z), &e.mul(&y, &z)),
                    e.mul(&e.mul(&x, &y), &z) == e.mul(&x, &e.mul(&y, &z)),
                    e.add(&e.add(&x, &y), &z) == e.add(&x, &e.add(&y, &z)),
                ];
                triples += 1;
                if laws.contains(&false) {
                    bad.push(format!("{p}/{}", mode.key()));
                }
            }
        }
    }
    bad.dedup();
    (bad.is_empty(), format!("{triples} interval triples, failing extensions {bad:?}"))
}

/// Bound sharpness and containment on sampled point problems.
fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut r = rng(5);
    let profiles = [Profile::MaxPlus, Profile::MinPlus, Profile::MaxMin, Profile::Boolean, Profile::MaxPlusHat];
    let mut bad = Vec::new();
    for i in 0..50 {
        let p = profiles[i % profiles.len()];
        let mode = if i % 2 == 0 { Mode::Weak } else { Mode::Strong };
        let n = r.gen_range(1..=5);
        let s = r.gen_range(1..=2);
        let (a, b) = random_interval_system(p, mode, n, s, &mut r);
        let report = sample_united_check(&a, &b, 1000, 500 + i as u64).unwrap();
        if !report.is_sharp() {
            bad.push(i);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 60.0;
    (ok, format!("50 systems x 1000 samples in {secs:.2}s, failing systems {bad:?}"))
}

/// Operation count of the interval solver grows at most cubically.
fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let sizes = [4usize, 8, 16, 32, 64];
    let mut counts = Vec::new();
    for &n in &sizes {
        let base = Counting::new(Profile::MaxPlus);
        let ext = IntervalExt::weak(base.clone());
        let hi = Matrix::from_fn(base.clone(), n, n, |_, _| f(-r.gen_range(1.0..10.0)));
        let lo = hi.map(base.clone(), |x| f(x.key() - 1.0));
        let b_hi = Matrix::from_fn(base.clone(), n, 1, |_, _| f(r.gen_range(-10.0..10.0)));
        let b_lo = b_hi.map(base.clone(), |x| f(x.key() - 1.0));
        let a = merge(ext.clone(), &lo, &hi).unwrap();
        let b = merge(ext, &b_lo, &b_hi).unwrap();
        base.reset();
        solve_interval(&a, &b).unwrap();
        counts.push(base.count() as f64);
    }
    let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|c| c.ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = cov / var;
    (slope <= 3.2, format!("fitted exponent {slope:.3} from counts {counts:?}"))
}

fn interval_zeros(a: &IntervalMatrix<Profile>, b: &IntervalMatrix<Profile>) -> IntervalMatrix<Profile> {
    Matrix::zeros(a.semiring().clone(), b.rows(), b.cols())
}

/// Iteration stabilizes within n steps under the spectral criterion and
/// grows without bound when it fails.
fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let mut slow = 0;
    let mut wrong = 0;
    for i in 0..100 {
        let p = if i % 2 == 0 { Profile::MaxPlus } else { Profile::MinPlus };
        let mode = if i % 4 < 2 { Mode::Weak } else { Mode::Strong };
        let n = r.gen_range(1..=6);
        let s = r.gen_range(1..=2);
        let (a, b) = random_interval_system(p, mode, n, s, &mut r);
        if !spectral_criterion(&a).unwrap() {
            slow += 1;
        }
        let trace = iterate(&a, &b, &interval_zeros(&a, &b), None).unwrap();
        match trace.stabilized_at {
            Some(k) if k <= n => {}
            _ => slow += 1,
        }
        if trace.fixed_point().ok() != Some(&solve_interval(&a, &b).unwrap()) {
            wrong += 1;
        }
    }
    let mut bounded = 0;
    for _ in 0..20 {
        let p = Profile::MaxPlus;
        let n = r.gen_range(1..=5);
        let (mut a, mut b) = random_interval_system(p, Mode::Weak, n, 1, &mut r);
        let e = a.semiring().clone();
        let v = r.gen_range(0..n);
        let loop_hi = p.add(a.get(v, v).hi(), &f(1.0));
        a.set(v, v, e.interval(*a.get(v, v).lo(), loop_hi).unwrap());
        let b_hi = p.add(b.get(v, 0).hi(), &f(0.0));
        b.set(v, 0, e.interval(*b.get(v, 0).lo(), b_hi).unwrap());
        let trace = iterate(&a, &b, &interval_zeros(&a, &b), None).unwrap();
        let steps = 2 * n + 2;
        let increasing = trace.iterates.len() == steps + 1
            && trace.iterates.windows(2).all(|w| w[0].leq(&w[1]) && w[0] != w[1]);
        if spectral_criterion(&a).unwrap() || trace.converged || !increasing {
            bounded += 1;
        }
    }
    let ok = slow == 0 && wrong == 0 && bounded == 0;
    (
        ok,
        format!("100 stable systems ({slow} slow, {wrong} wrong fixed points), 20 divergent ({bounded} not strictly increasing)"),
    )
}

/// Irreducible max-plus matrix: a Hamiltonian cycle plus random arcs.
fn irreducible<R: Rng>(n: usize, r: &mut R, entry: &mut dyn FnMut(&mut R) -> f64) -> Matrix<Profile> {
    let mut a = Matrix::from_fn(Profile::MaxPlus, n, n, |_, _| {
        if r.gen_bool(0.4) {
            f(entry(r))
        } else {
            Element::NegInf
        }
    });
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    for k in 0..n {
        a.set(order[k], order[(k + 1) % n], f(entry(r)));
    }
    a
}

/// Eigenvalue equals the maximum cycle mean; the eigenvector is exact.
fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut value_bad = 0;
    let mut vector_bad = 0;
    for i in 0..200 {
        let n = r.gen_range(1..=8);
        // Multiples of lcm(1..=8) keep every cycle mean an integer.
        let exact = i < 100;
        let a = if exact {
            irreducible(n, &mut r, &mut |r| f64::from(r.gen_range(-10..=10)) * 840.0)
        } else {
            irreducible(n, &mut r, &mut |r| r.gen_range(-50.0..50.0))
        };
        let want = extreme_cycle_mean(&a).unwrap();
        let res = a.eigenvalue().unwrap();
        if (res.eigenvalue.key() - want).abs() > 1e-12 * want.abs().max(1.0) {
            value_bad += 1;
        }
        if exact {
            let ok = res.eigenvector.as_ref().is_some_and(|v| {
                !v.is_zero() && a.mul(v).unwrap() == v.scalar_mul(&res.eigenvalue)
            });
            if !ok {
                vector_bad += 1;
            }
        }
    }
    (
        value_bad == 0 && vector_bad == 0,
        format!("200 irreducible matrices, {value_bad} eigenvalue mismatches, {vector_bad} inexact eigenvectors"),
    )
}

/// Nonnegative real interval systems, checked to 1e-9.
fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let p = Profile::NonNegReal;
    let ext = IntervalExt::weak(p);
    let mut bad = Vec::new();
    for i in 0..30 {
        let n = r.gen_range(1..=5);
        let s = r.gen_range(1..=2);
        let mut hi = Matrix::from_fn(p, n, n, |_, _| f(r.gen_range(0.0..=0.9)));
        for row in 0..n {
            let sum: f64 = hi.row(row).iter().map(Element::key).sum();
            if sum > 0.9 {
                for c in 0..n {
                    let v = hi.get(row, c).key() * 0.9 / sum;
                    hi.set(row, c, f(v));
                }
            }
        }
        let lo = Matrix::from_fn(p, n, n, |i, j| f(hi.get(i, j).key() * r.gen_range(0.0..=1.0)));
        let b_hi = Matrix::from_fn(p, n, s, |_, _| f(r.gen_range(0.0..=0.9)));
        let b_lo = Matrix::from_fn(p, n, s, |i, j| f(b_hi.get(i, j).key() * r.gen_range(0.0..=1.0)));
        let a = merge(ext.clone(), &lo, &hi).unwrap();
        let b = merge(ext.clone(), &b_lo, &b_hi).unwrap();
        let report = sample_united_check(&a, &b, 500, 900 + i as u64).unwrap();
        if !report.is_sharp() {
            bad.push(i);
        }
    }
    (bad.is_empty(), format!("30 systems x 500 samples, failing systems {bad:?}"))
}

/// Strong max-plus intervals cancel; the weak extension does not.
fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let strong = IntervalExt::strong(Profile::MaxPlus).unwrap();
    let mut premises = 0;
    let mut violations = 0;
    let mut triples = 0;
    while triples < 1000 {
        let [x, y, z] = [0; 3].map(|_| sample::interval(&strong, &mut r, Sampling::Lattice));
        if strong.is_zero(&z) {
            continue;
        }
        triples += 1;
        for other in [y.clone(), strong.add(&x, &y)] {
            if strong.mul(&x, &z) == strong.mul(&other, &z) {
                premises += 1;
                if x != other {
                    violations += 1;
                }
            }
        }
    }
    let weak = IntervalExt::weak(Profile::MaxPlus);
    let x = weak.interval(f(1.0), f(2.0)).unwrap();
    let y = weak.interval(f(0.0), f(2.0)).unwrap();
    let z = weak.interval(Element::NegInf, f(0.0)).unwrap();
    let weak_fails = weak.mul(&x, &z) == weak.mul(&y, &z) && x != y;
    (
        violations == 0 && premises > 0 && weak_fails,
        format!(
            "{triples} strong triples, premise held {premises} times, {violations} violations; weak counterexample {}",
            if weak_fails { "confirmed" } else { "missing" }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("semiring laws on all instances", criterion_1),
        ("closure truncation at n-1", criterion_2),
        ("path problems match walk enumeration", criterion_3),
        ("interval extension laws", criterion_4),
        ("interval solution is sharp", criterion_5),
        ("cubic operation count", criterion_6),
        ("iteration under the spectral criterion", criterion_7),
        ("eigenvalue and eigenvector", criterion_8),
        ("nonnegative real interval systems", criterion_9),
        ("strong cancellation", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run();
        if !ok {
            failures += 1;
        }
        println!("{} criterion {}: {name} ({detail})", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
