use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};
use num_complex::Complex64;
use proptest::prelude::*;

use curved_lattice::cli::output::{format_float, parse_sweep_csv, round_sig, sweep_csv};
use curved_lattice::cli::recipes::recipe;
use curved_lattice::cli::sweep::run_sweep;
use curved_lattice::collective::{
    assign_tracks, build_matrix, eigen_decomposition, eigenvalues, spectrum, ComplexMatrix,
};
use curved_lattice::greens::{green_plane, green_sphere_open};
use curved_lattice::oracle::{circulant_eigenvalues, CirculantRow};
use curved_lattice::specfun::{
    legendre_p, legendre_p_prime, legendre_q, legendre_q_prime, Degree,
};
use curved_lattice::surface::{
    distance_matrix, effective_wavenumber, ring_on_plane, ring_on_sphere, EmitterArray,
    OpticalParams, Point, SurfaceDescriptor,
};

fn matched_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

fn optics(frac: f64) -> OpticalParams {
    OpticalParams::with_perp_fraction(1.0, frac).unwrap()
}

fn complex_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
        ComplexMatrix::from_fn(n, |i, j| {
            let (re, im) = v[i * n + j];
            Complex64::new(re, im)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wronskian(nu in 0.0f64..8.0, x in -0.85f64..0.9) {
        let d = Degree::new(nu).unwrap();
        let w = legendre_p(d, x).unwrap() * legendre_q_prime(d, x).unwrap()
            - legendre_p_prime(d, x).unwrap() * legendre_q(d, x).unwrap();
        prop_assert!((w * (1.0 - x * x) - 1.0).abs() < 1e-8, "W = {w}");
    }

    #[test]
    fn legendre_ode(nu in 0.0f64..6.0, x in -0.7f64..0.8) {
        let d = Degree::new(nu).unwrap();
        let h = 1e-5;
        for f in [legendre_p, legendre_q] {
            let (fm, f0, fp) = (f(d, x - h).unwrap(), f(d, x).unwrap(), f(d, x + h).unwrap());
            let d2 = (fp - 2.0 * f0 + fm) / (h * h);
            let d1 = (fp - fm) / (2.0 * h);
            let r = (1.0 - x * x) * d2 - 2.0 * x * d1 + nu * (nu + 1.0) * f0;
            let scale = f0.abs() + (1.0 - x * x) * d2.abs() + nu * (nu + 1.0) * f0.abs();
            prop_assert!(r.abs() < 1e-4 * scale, "residual {r}");
        }
    }

    #[test]
    fn near_integer_degree_is_continuous(n in 0u32..8, x in -0.8f64..0.95, eps in -1e-7f64..1e-7) {
        let exact = legendre_p(Degree::new(n as f64).unwrap(), x).unwrap();
        let near = legendre_p(Degree::new((n as f64 + eps).max(0.0)).unwrap(), x).unwrap();
        prop_assert!((exact - near).abs() < 1e-5);
    }

    #[test]
    fn plane_green_depends_on_kr_only(k in 0.5f64..10.0, r in 0.05f64..3.0, s in 0.5f64..2.0) {
        // G(r; k) = G(r s; k / s)
        let a = green_plane(r, k).unwrap();
        let b = green_plane(r * s, k / s).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn k_eff_monotone(frac in 0.0f64..0.85, r in 1.0f64..50.0) {
        let s = SurfaceDescriptor::sphere(r).unwrap();
        let s2 = SurfaceDescriptor::sphere(r * 1.1).unwrap();
        let k = effective_wavenumber(&optics(frac), &s).unwrap();
        prop_assert!(effective_wavenumber(&optics(frac + 0.05), &s).unwrap() < k);
        prop_assert!(effective_wavenumber(&optics(frac), &s2).unwrap() > k);
    }

    #[test]
    fn distance_matrix_symmetric(n in 2usize..14, a in 0.05f64..1.0, r in 2.0f64..20.0) {
        for array in [ring_on_plane(n, a).unwrap(), ring_on_sphere(n, a.min(0.3 * r), r).unwrap()] {
            let d = distance_matrix(&array);
            for i in 0..n {
                prop_assert_eq!(d.get(i, i), 0.0);
                for j in 0..n {
                    prop_assert_eq!(d.get(i, j), d.get(j, i));
                }
            }
        }
        let adjacent = distance_matrix(&ring_on_sphere(n, a.min(0.3 * r), r).unwrap()).get(0, 1);
        prop_assert!((adjacent - a.min(0.3 * r)).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_match_reference_schur(m in (2usize..10).prop_flat_map(complex_matrix)) {
        let n = m.dim();
        let reference = DMatrix::from_fn(n, n, |i, j| {
            let c = m.get(i, j);
            Complex::new(c.re, c.im)
        });
        let want: Vec<Complex64> = nalgebra::Schur::new(reference)
            .eigenvalues()
            .unwrap()
            .iter()
            .map(|c| Complex64::new(c.re, c.im))
            .collect();
        let got = eigenvalues(&m).unwrap();
        prop_assert!(matched_distance(&got, &want) < 1e-9 * m.frobenius_norm());
    }

    #[test]
    fn eigenpair_residuals(m in (2usize..16).prop_flat_map(complex_matrix)) {
        let (vals, vecs) = eigen_decomposition(&m).unwrap();
        let norm = m.frobenius_norm();
        for (l, v) in vals.iter().zip(&vecs) {
            let mv = m.mul_vec(v);
            let r: f64 = mv.iter().zip(v).map(|(a, b)| (a - l * b).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(r <= 1e-10 * norm, "residual {r:e}");
        }
    }

    #[test]
    fn trace_conservation(n in 2usize..13, a in 0.05f64..1.2, frac in 0.0f64..0.95) {
        let m = build_matrix(&ring_on_plane(n, a).unwrap(), &optics(frac)).unwrap();
        let total: f64 = eigenvalues(m.matrix()).unwrap().iter().map(|l| 2.0 * l.im).sum();
        prop_assert!((total - n as f64).abs() < 1e-8 * n as f64);
    }

    #[test]
    fn circulant_equivalence(n in 2usize..17, a in 0.05f64..0.4, r in 1.5f64..6.0, frac in 0.0f64..0.9) {
        for array in [ring_on_plane(n, a).unwrap(), ring_on_sphere(n, a, r).unwrap()] {
            let m = build_matrix(&array, &optics(frac)).unwrap();
            let dft = circulant_eigenvalues(&CirculantRow::new(m.first_row()).unwrap());
            let got = eigenvalues(m.matrix()).unwrap();
            let scale = dft.iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(matched_distance(&got, &dft) < 1e-8 * scale);
        }
    }

    #[test]
    fn permutation_invariance(
        pts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..9),
        seed in any::<u64>(),
    ) {
        let points: Vec<Point> = pts.iter().enumerate()
            .map(|(i, &(x, y))| Point::Plane([x + 3.0 * i as f64, y]))
            .collect();
        let n = points.len();
        let array = EmitterArray::new(SurfaceDescriptor::plane(), points).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (i as u64).wrapping_mul(seed | 1).rotate_left(17));
        let shuffled = array.permuted(&order).unwrap();
        let o = optics(0.5);
        let a = eigenvalues(build_matrix(&array, &o).unwrap().matrix()).unwrap();
        let b = eigenvalues(build_matrix(&shuffled, &o).unwrap().matrix()).unwrap();
        prop_assert!(matched_distance(&a, &b) < 1e-10);
    }

    #[test]
    fn spectra_continuous_in_parameters(a in 0.1f64..1.0, frac in 0.0f64..0.9) {
        let s1 = spectrum(&ring_on_plane(8, a).unwrap(), &optics(frac)).unwrap();
        let s2 = spectrum(&ring_on_plane(8, a + 1e-6).unwrap(), &optics(frac)).unwrap();
        let s3 = spectrum(&ring_on_plane(8, a).unwrap(), &optics(frac + 1e-6)).unwrap();
        prop_assert!(matched_distance(&s1.eigenvalues(), &s2.eigenvalues()) < 1e-4);
        prop_assert!(matched_distance(&s1.eigenvalues(), &s3.eigenvalues()) < 1e-4);
    }

    #[test]
    fn track_ids_form_permutations(
        prev in prop::collection::vec((-2.0f64..2.0, 0.0f64..2.0), 1..10),
        jitter in prop::collection::vec((-0.1f64..0.1, -0.1f64..0.1), 10),
    ) {
        let p: Vec<Complex64> = prev.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        let next: Vec<Complex64> = p.iter().rev().zip(&jitter)
            .map(|(z, &(a, b))| z + Complex64::new(a, b))
            .collect();
        let mut ids = assign_tracks(&p, &next);
        ids.sort_unstable();
        prop_assert_eq!(ids, (0..p.len()).collect::<Vec<_>>());
    }

    #[test]
    fn float_format_round_trips(x in prop::num::f64::NORMAL, p in 1usize..=17) {
        let s = format_float(x, p);
        prop_assert_eq!(s.parse::<f64>().unwrap(), round_sig(x, p));
    }
}

#[test]
fn open_sphere_diverges_toward_antipode() {
    let k = 5.0;
    let mut prev = 0.0;
    for deg in [120.0f64, 140.0, 150.0, 155.0, 159.0] {
        let g = green_sphere_open(deg * PI / 180.0, 1.0, k).unwrap().norm();
        assert!(g > prev, "|G| at {deg}° = {g}");
        prev = g;
    }
}

#[test]
fn csv_round_trip() {
    let mut cfg = recipe("fig4c").unwrap();
    cfg.sweep.as_mut().unwrap().steps = 12;
    let result = run_sweep(&cfg, 2).unwrap();
    for precision in [6, 12, 17] {
        let text = sweep_csv(&result, cfg.notes.as_deref(), precision);
        let parsed = parse_sweep_csv(&text).unwrap();
        assert_eq!(parsed.len(), result.rows.len());
        for (a, b) in parsed.iter().zip(&result.rows) {
            assert_eq!(a.param, round_sig(b.param, precision));
            match (&a.outcome, &b.outcome) {
                (Ok(ma), Ok(mb)) => {
                    assert_eq!(ma.len(), mb.len());
                    for (x, y) in ma.iter().zip(mb) {
                        assert_eq!((x.mode, x.track_id), (y.mode, y.track_id));
                        assert_eq!(x.shift, round_sig(y.shift, precision));
                        assert_eq!(x.gamma, round_sig(y.gamma, precision));
                    }
                }
                (Err(ea), Err(eb)) => assert_eq!(ea, eb),
                _ => panic!("row kind changed at param {}", b.param),
            }
        }
    }
}
