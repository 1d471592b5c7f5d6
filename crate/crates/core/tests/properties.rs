use std::f64::consts::PI;

use proptest::prelude::*;
use twistor_holonomy::density::SphereGrid;
use twistor_holonomy::holonomy::{close_group, orbit, Catalog, DEFAULT_CAP, DEFAULT_TOL};
use twistor_holonomy::linalg::{Matrix, Vector};
use twistor_holonomy::poly::{minimal_poly_zeta, numeric_zeta};
use twistor_holonomy::rotation::{build_pair, trace_product_exact, trace_product_numeric, CosPhi, Triplet};
use twistor_holonomy::transport::{lambda_plus_action, so4_exp, so4_log, Skew4};
use twistor_holonomy::{Angle, Error, Mq, Rational};

fn mq_strategy() -> impl Strategy<Value = Mq> {
    prop::collection::vec((-9i64..=9, 1i64..=6), 8).prop_map(|c| {
        let coeffs: [Rational; 8] = std::array::from_fn(|i| Rational::new(c[i].0.into(), c[i].1.into()));
        Mq::from_coefficients(coeffs)
    })
}

/// Rational multiples of π in (0, π] whose cosine lies in the field.
fn angle_strategy() -> impl Strategy<Value = Angle> {
    prop_oneof![Just(1i64), Just(2), Just(3), Just(4), Just(5), Just(6)]
        .prop_flat_map(|d| (1..=d).prop_map(move |n| Angle::pi_frac(n, d)))
}

fn cos_phi_strategy() -> impl Strategy<Value = CosPhi> {
    prop_oneof![
        Just(CosPhi::zero()),
        (1i64..=8, 9i64..=12).prop_map(|(n, d)| CosPhi::sqrt_rational(n, d).unwrap()),
        (1i64..=8, 9i64..=12).prop_map(|(n, d)| CosPhi::rational(n, d).unwrap()),
    ]
}

fn skew_strategy(scale: f64) -> impl Strategy<Value = Skew4<f64>> {
    prop::array::uniform6(-scale..scale).prop_map(|u| {
        let mut m = Matrix::zeros();
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            m[(i, j)] = u[k];
            m[(j, i)] = -u[k];
        }
        Skew4(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_operations(a in mq_strategy(), b in mq_strategy(), c in mq_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!(((&a * &b).to_f64() - a.to_f64() * b.to_f64()).abs() < 1e-9 * (1.0 + (a.to_f64() * b.to_f64()).abs()));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Mq::one());
        } else {
            prop_assert_eq!(a.inv(), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn exact_trace_matches_numeric(x in angle_strategy(), y in angle_strategy(), phi in cos_phi_strategy()) {
        let t = Triplet::exact(x, y, phi).unwrap();
        match trace_product_exact(&t) {
            Ok(tr) => prop_assert!((tr.to_f64() - trace_product_numeric(&t)).abs() < 1e-12),
            Err(e) => prop_assert!(e.is_domain(), "{e}"),
        }
    }

    #[test]
    fn zeta_is_a_root_of_its_minimal_polynomial(x in angle_strategy(), y in angle_strategy(), phi in cos_phi_strategy()) {
        let t = Triplet::exact(x, y, phi).unwrap();
        if let Ok(tr) = trace_product_exact(&t) {
            if let Ok(f) = minimal_poly_zeta(&tr) {
                prop_assert!(f.is_monic() && f.is_palindromic());
                prop_assert!(f.eval_complex(numeric_zeta(tr.to_f64())).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn log_inverts_exp(p in skew_strategy(0.12)) {
        // Entries below 0.12 keep both rotation angles under pi/2.
        let m = so4_exp(&p.scale(-2.0 * PI));
        let q = so4_log(&m).unwrap();
        prop_assert!(q.0.max_abs_diff(&p.0) < 1e-11);
    }

    #[test]
    fn exp_round_trip_any_size(p in skew_strategy(3.0)) {
        let m = so4_exp(&p);
        prop_assert!(m.0.orthogonality_error() < 1e-13);
        let back = so4_exp(&so4_log(&m).unwrap().scale(-2.0 * PI));
        prop_assert!(back.0.max_abs_diff(&m.0) < 1e-10);
    }

    #[test]
    fn lambda_plus_lands_in_so3(p in skew_strategy(3.0), q in skew_strategy(3.0)) {
        let (m, n) = (so4_exp(&p), so4_exp(&q));
        let r = lambda_plus_action(&(m * n));
        prop_assert!(r.is_rotation(1e-12));
        prop_assert!((r.0.det() - 1.0).abs() < 1e-12);
        let rhs = lambda_plus_action(&m).compose(&lambda_plus_action(&n));
        prop_assert!(r.0.max_abs_diff(&rhs.0) < 1e-12);
    }

    #[test]
    fn grid_cells_in_range(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0, res in 1.0f64..45.0) {
        let g = SphereGrid::new(res);
        prop_assert!(g.cell_of(&Vector([x, y, z])) < g.cells_total());
    }
}

#[test]
fn orbit_sizes_divide_group_orders() {
    let cat = Catalog::shipped();
    for e in &cat.entries {
        let g = close_group(&build_pair::<f64>(&e.triplet).generators(), DEFAULT_CAP, DEFAULT_TOL);
        let n = g.order().unwrap();
        for i in 0..3 {
            let o = orbit(&g, &Vector::basis(i)).unwrap();
            assert_eq!(n % o.len(), 0, "{} p{}", e.id, i + 1);
        }
    }
}
