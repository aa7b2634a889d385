use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use projsum::densities::*;
use projsum::spectra::Interval;

fn lp(p: f64, q: f64) -> LimitParams {
    LimitParams::new(p, q).unwrap()
}

#[test]
fn support_examples() {
    let (i1, i2) = support_sum(lp(0.5, 0.5));
    assert!((i1.lo - 1.0).abs() < 1e-15 && (i1.hi - 2.0).abs() < 1e-15);
    assert!(i2.lo.abs() < 1e-15 && (i2.hi - 1.0).abs() < 1e-15);
    let (i1, _) = support_sum(lp(0.25, 0.25));
    assert!((i1.lo - 1.0).abs() < 1e-15 && (i1.hi - 1.0 - 3f64.sqrt() / 2.0).abs() < 1e-15);
    assert!((i1.hi - 1.0 - lp(0.25, 0.25).mu()).abs() < 1e-15);
    let (i1, i2) = support_sum(lp(0.2, 0.5));
    assert!((i1.lo - 1.31623).abs() < 1e-5 && (i1.hi - 1.94868).abs() < 1e-5);
    assert!((i2.lo - (2.0 - i1.hi)).abs() < 1e-15);
}

#[test]
fn density_examples() {
    let want = 1.0 / (PI * 0.75f64.sqrt());
    assert!((want - 0.36755).abs() < 1e-5);
    assert!((limit_density_sum(lp(0.5, 0.5), 1.5).unwrap() - want).abs() < 1e-14);
    assert!((limit_density_sum(lp(0.5, 0.5), 0.5).unwrap() - want).abs() < 1e-14);
    assert_eq!(limit_density_sum(lp(0.2, 0.5), 1.1).unwrap(), 0.0);
    for x in [0.0, 1.0, 2.0] {
        assert!(limit_density_sum(lp(0.3, 0.4), x).is_err());
    }
}

#[test]
fn atom_examples() {
    let close = |got: Vec<(f64, f64)>, want: &[(f64, f64)]| {
        got.len() == want.len()
            && got
                .iter()
                .zip(want)
                .all(|(g, w)| (g.0 - w.0).abs() < 1e-15 && (g.1 - w.1).abs() < 1e-12)
    };
    assert!(close(atoms_sum(lp(0.3, 0.5)), &[(1.0, 0.2), (0.0, 0.2)]));
    assert!(atoms_sum(lp(0.5, 0.5)).is_empty());
    assert!(close(atoms_sum(lp(0.4, 0.7)), &[(1.0, 0.3), (2.0, 0.1)]));
}

#[test]
fn masses_sum_to_one() {
    for (p, q) in [(0.5, 0.5), (0.3, 0.5), (0.25, 0.25), (0.4, 0.7), (0.3, 0.4)] {
        let shape = LimitShape::sum(lp(p, q));
        let m = shape.total_mass(DEFAULT_TOL).unwrap();
        assert!((m - 1.0).abs() <= 1e-6, "({p},{q}): {m}");
    }
    for (s, t) in [(0.0, 0.0), (2.0, 3.0), (1.0, 0.0), (0.5, 4.0)] {
        let m = LimitShape::jacobi(s, t).unwrap().total_mass(DEFAULT_TOL).unwrap();
        assert!((m - 1.0).abs() <= 1e-6, "({s},{t}): {m}");
    }
}

#[test]
fn densities_are_nonnegative_and_symmetric() {
    for (p, q) in [(0.3, 0.5), (0.1, 0.2), (0.4, 0.7)] {
        let l = lp(p, q);
        let (i1, _) = support_sum(l);
        for k in 1..200 {
            let u = i1.lo - 1.0 + (i1.hi - i1.lo) * k as f64 / 200.0;
            let up = limit_density_sum(l, 1.0 + u).unwrap();
            let down = limit_density_sum(l, 1.0 - u).unwrap();
            assert!(up >= 0.0);
            assert!((up - down).abs() <= 1e-12 * up.max(1.0), "({p},{q}) at u={u}");
        }
    }
}

#[test]
fn arcsine_pushes_forward() {
    let l = lp(0.5, 0.5);
    for k in 0..50 {
        let x = 0.02 + 1.96 * k as f64 / 49.0;
        if (x - 1.0).abs() < 1e-9 {
            continue;
        }
        let t = (x - 1.0).powi(2);
        let jac = limit_density_jacobi(0.0, 0.0, t).unwrap();
        assert!((jac - 1.0 / (PI * (t * (1.0 - t)).sqrt())).abs() <= 1e-10);
        // each t has two preimages; |dt/dx| = 2|x − 1|
        let pushed = 0.5 * jac * 2.0 * (x - 1.0).abs();
        assert!((pushed - limit_density_sum(l, x).unwrap()).abs() <= 1e-8, "x={x}");
    }
}

#[test]
fn jacobi_support_corrects_printed_half_width() {
    let iv = support_jacobi(0.0, 0.0).unwrap();
    assert_eq!((iv.lo, iv.hi), (0.0, 1.0));
    // the printed half-width lacks the factor 2 and gives [1/4, 3/4] here
    let printed = |s: f64, t: f64| ((1.0 + s) * (1.0 + t) * (1.0 + s + t)).sqrt() / (2.0 + s + t).powi(2);
    let c0 = 0.5;
    println!(
        "s=t=0: printed d support [{}, {}], corrected [{}, {}]",
        c0 - printed(0.0, 0.0),
        c0 + printed(0.0, 0.0),
        iv.lo,
        iv.hi
    );
    assert!((printed(0.0, 0.0) - 0.25).abs() < 1e-15);
    // s = a/p, t = b/p; (p, q) = (1/7, 3/7) gives s = 2, t = 3
    let (i1, _) = support_sum(lp(1.0 / 7.0, 3.0 / 7.0));
    let iv = support_jacobi(2.0, 3.0).unwrap();
    assert!((iv.lo - (i1.lo - 1.0).powi(2)).abs() <= 1e-12);
    assert!((iv.hi - (i1.hi - 1.0).powi(2)).abs() <= 1e-12);
    let printed_hi = 0.5 * (1.0 + (4.0 - 9.0) / 49.0) + printed(2.0, 3.0);
    println!("s=2, t=3: printed upper edge {printed_hi:.6}, corrected {:.6}", iv.hi);
}

#[test]
fn johnstone_edge_is_upper_support_edge() {
    assert!((johnstone_edge(0.0, 0.0) - 1.0).abs() < 1e-15);
    assert!((johnstone_edge(1.0, 2.0) - support_jacobi(1.0, 2.0).unwrap().hi).abs() <= 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let (s, t) = (5.0 * rng.random::<f64>(), 5.0 * rng.random::<f64>());
        let hi = support_jacobi(s, t).unwrap().hi;
        assert!((johnstone_edge(s, t) - hi).abs() <= 1e-12, "({s},{t})");
    }
    let mut prev = 1.0;
    for k in 1..40 {
        let e = johnstone_edge(0.0, k as f64);
        assert!(e < prev);
        prev = e;
    }
    assert!(prev < 0.1);
}

#[test]
fn integrate_examples() {
    let unit = Interval::closed(0.0, 1.0).unwrap();
    assert!((integrate(|_| 1.0, &unit, 1e-12).unwrap() - 1.0).abs() < 1e-14);
    let arcsine = integrate(|x| 1.0 / (PI * (x * (1.0 - x)).sqrt()), &unit, 1e-10).unwrap();
    assert!((arcsine - 1.0).abs() <= 1e-8);
    let sq = integrate(|x| x * x, &Interval::closed(0.0, 2.0).unwrap(), 1e-12).unwrap();
    assert!((sq - 8.0 / 3.0).abs() < 1e-12);
}

#[test]
fn limit_params_identity_and_swap() {
    let l = lp(0.3, 0.5);
    assert!((l.c() - (1.0 + l.a().powi(2) - l.b().powi(2)) / 2.0).abs() <= 1e-14);
    let swapped = lp(0.5, 0.3);
    assert_eq!((swapped.p(), swapped.q()), (0.3, 0.5));
    assert!(LimitParams::new(0.0, 0.5).is_err());
    assert!(LimitParams::new(0.5, 1.0).is_err());
}
