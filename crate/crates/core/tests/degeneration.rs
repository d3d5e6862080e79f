mod support;

use alcove_core::degeneration::{
    run_degeneration, vertical_tangents, Backend, BivariatePoly, CurveFamily, SolverOptions, TangentPoint,
};
use alcove_core::harmonic::generate;
use alcove_core::random::random_tangent_lines;
use alcove_core::ProjLine;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::matching::{hungarian, matched_distance};
use support::tangents::{self, Poly};

fn oracle_poly(f: &BivariatePoly) -> Poly {
    Poly::new(f.degree(), f.terms())
}

fn c_dist(a: &(Complex64, Complex64), b: &(Complex64, Complex64)) -> f64 {
    (a.0 - b.0).norm().hypot((a.1 - b.1).norm())
}

fn points(t: &[TangentPoint]) -> Vec<(Complex64, Complex64)> {
    t.iter().map(|p| (p.x, p.y)).collect()
}

fn tangent_family(n: usize, seed: u64) -> CurveFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lines: Vec<[f64; 3]> = random_tangent_lines(n, 0.5, &mut rng).iter().map(ProjLine::to_f64).collect();
    CurveFamily::new(lines, seed).unwrap()
}

#[test]
fn derivatives_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let terms: Vec<(usize, usize, f64)> = (0..=4)
        .flat_map(|i| (0..=4 - i).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, rng.gen_range(-1.0..1.0)))
        .collect();
    let f = BivariatePoly::from_terms(&terms);
    let (fx, fy) = (f.dx(), f.dy());
    let h = 1e-6;
    for &(x, y) in &[(0.3, -0.7), (1.2, 0.4), (-0.9, 1.1)] {
        let num_x = (f.eval(x + h, y) - f.eval(x - h, y)) / (2.0 * h);
        let num_y = (f.eval(x, y + h) - f.eval(x, y - h)) / (2.0 * h);
        assert!((num_x - fx.eval(x, y)).abs() <= 1e-6 * (1.0 + fx.eval(x, y).abs()));
        assert!((num_y - fy.eval(x, y)).abs() <= 1e-6 * (1.0 + fy.eval(x, y).abs()));
    }
}

#[test]
fn elliptic_curve_tangents() {
    // y² = x³ - x: f_x = 1 - 3x² vanishes at x = ±1/√3, two y each.
    let f = BivariatePoly::from_terms(&[(0, 2, 1.0), (3, 0, -1.0), (1, 0, 1.0)]);
    let r = 1.0 / 3f64.sqrt();
    let y2 = |x: f64| x * x * x - x;
    let want = [
        (Complex64::new(-r, 0.0), Complex64::new(y2(-r).sqrt(), 0.0)),
        (Complex64::new(-r, 0.0), Complex64::new(-y2(-r).sqrt(), 0.0)),
        (Complex64::new(r, 0.0), Complex64::new(0.0, (-y2(r)).sqrt())),
        (Complex64::new(r, 0.0), Complex64::new(0.0, -(-y2(r)).sqrt())),
    ];
    for backend in [Backend::Resultant, Backend::Homotopy] {
        let opts = SolverOptions { backend, ..SolverOptions::default() };
        let got = points(&vertical_tangents(&f, &opts).unwrap());
        assert_eq!(got.len(), 4);
        assert!(matched_distance(&got, &want, c_dist) < 1e-10, "{backend:?}");
    }
}

#[test]
fn hungarian_finds_the_cheap_assignment() {
    let cost = vec![vec![4.0, 1.0, 3.0], vec![2.0, 0.0, 5.0], vec![3.0, 2.0, 2.0]];
    let a = hungarian(&cost);
    let total: f64 = a.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
    assert_eq!(total, 5.0);
}

#[test]
fn oracle_agrees_with_both_backends() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for n in 2..=4 {
        for seed in 0..4u64 {
            let s: f64 = 10f64.powf(rng.gen_range(-2.0..-0.3));
            let f = tangent_family(n, seed).member(s);
            let want = tangents::vertical_tangents(&oracle_poly(&f));
            assert_eq!(want.len(), n * (n - 1), "oracle n={n} seed={seed} s={s}");
            for backend in [Backend::Resultant, Backend::Homotopy] {
                let opts = SolverOptions { backend, ..SolverOptions::default() };
                let got = points(&vertical_tangents(&f, &opts).unwrap());
                assert_eq!(got.len(), want.len());
                let d = matched_distance(&got, &want, c_dist);
                assert!(d < 1e-6, "n={n} seed={seed} s={s} {backend:?}: {d}");
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 12);
}

#[test]
fn residuals_are_small() {
    let f = tangent_family(4, 1).member(1e-3);
    let t = vertical_tangents(&f, &SolverOptions::default()).unwrap();
    assert_eq!(t.len(), 12);
    let o = oracle_poly(&f);
    let fx = o.dx();
    for p in &t {
        assert!(p.residual <= 1e-8);
        let size = o.size(p.x, p.y);
        assert!(o.eval(p.x, p.y).norm() / size <= 1e-8 && fx.eval(p.x, p.y).norm() / size <= 1e-8);
    }
}

#[test]
fn triangle_of_the_regular_polygon_settles() {
    let family = CurveFamily::new(generate(3).unwrap().lines, 0).unwrap();
    let report = run_degeneration(&family, &[1e-2, 1e-3, 1e-4], None, &SolverOptions::default()).unwrap();
    assert!(report.pass, "{:?}", report.settled_from);
    for r in &report.reports {
        assert_eq!(r.tangents.len(), 6);
        assert!(r.clusters.iter().all(|c| c.count == 2));
    }
}

#[test]
fn homotopy_backend_clusters_the_same_way() {
    let family = tangent_family(4, 1);
    let opts = SolverOptions { backend: Backend::Homotopy, ..SolverOptions::default() };
    let a = run_degeneration(&family, &[1e-3, 1e-4], None, &opts).unwrap();
    let b = run_degeneration(&family, &[1e-3, 1e-4], None, &SolverOptions::default()).unwrap();
    for (ra, rb) in a.reports.iter().zip(&b.reports) {
        assert_eq!(ra.clusters, rb.clusters);
        let d = matched_distance(&points(&ra.tangents), &points(&rb.tangents), c_dist);
        assert!(d < 1e-6, "{d}");
    }
}
