//! Extension curves against closed forms, symbolic derivatives of y^β K_β
//! and finite differences of the sampled curves.

mod common;

use std::sync::Arc;

use common::{shift_jet, symbolic_psi_jet};
use fracext::extension::{
    commutation_check, conormal_trace, default_curve_grid, derivative_at_origin, derivative_curve, extend,
    extend_negative, geometric_grid, holder_slope, mode_ode_residual, nonexpansive_check, ode_residual,
    recurrence_check, taylor_expand, taylor_remainder, trace0, ConormalMethod, OdeScheme, RecurrenceScheme,
    RemainderMethod,
};
use fracext::special::FracParams;
use fracext::spectral::{ModalVector, Spectrum};
use fracext::Error;
use proptest::prelude::*;

fn spectrum(values: &[f64]) -> Arc<Spectrum> {
    Spectrum::new(values.to_vec(), "test").unwrap().shared()
}

fn vector(values: &[f64], coeffs: &[f64]) -> ModalVector {
    ModalVector::new(spectrum(values), coeffs.to_vec()).unwrap()
}

#[test]
fn closed_form_modes() {
    let grid = geometric_grid(1e-3, 20.0, 40).unwrap();
    let c = extend(&vector(&[1.0], &[1.0]), 0.5, &grid).unwrap();
    for (i, y) in grid.iter().enumerate() {
        assert!((c.mode(0)[i] - (-y).exp()).abs() <= 1e-13 * (-y).exp());
    }
    // ψ_{3/2}(y) = (1 + y) e^{−y}
    let c = extend(&vector(&[4.0], &[2.0]), 1.5, &grid).unwrap();
    for (i, y) in grid.iter().enumerate() {
        let want = 2.0 * (1.0 + 2.0 * y) * (-2.0 * y).exp();
        assert!((c.mode(0)[i] - want).abs() <= 1e-13 * want);
    }
    let zero = extend(&vector(&[1.0, 4.0], &[0.0, 0.0]), 0.7, &grid).unwrap();
    assert!(zero.values().iter().flatten().all(|v| *v == 0.0));
}

#[test]
fn kernel_mode_is_carried_as_constant() {
    let grid = [0.1, 1.0, 3.0];
    let c = extend(&vector(&[0.0, 1.0], &[1.0, 1.0]), 0.5, &grid).unwrap();
    assert_eq!(c.mode(0), &[1.0, 1.0, 1.0]);
    for (i, y) in grid.iter().enumerate() {
        assert!((c.mode(1)[i] - (-y).exp()).abs() < 1e-15);
    }
}

#[test]
fn negative_order_routes_through_inverse_power() {
    let grid = [0.0, 0.25, 1.0];
    let c = extend_negative(&vector(&[4.0], &[2.0]), 0.5, &grid).unwrap();
    for (i, y) in grid.iter().enumerate() {
        assert!((c.mode(0)[i] - (-2.0 * y).exp()).abs() < 1e-15);
    }
    assert_eq!(c.column(0).coeffs(), &[1.0]);
    let zeta = vector(&[1.0, 4.0, 9.0], &[1.0, -2.0, 0.5]);
    let a = extend_negative(&zeta, 1.3, &grid).unwrap();
    let b = extend(&zeta.apply_power(-1.3).unwrap(), 1.3, &grid).unwrap();
    assert_eq!(a.values(), b.values());
    let k = vector(&[0.0, 1.0], &[1.0, 0.0]);
    assert!(matches!(extend_negative(&k, 0.5, &grid), Err(Error::KernelMode { .. })));
}

#[test]
fn dirichlet_trace_by_extrapolation() {
    let u = vector(&[1.0, 4.0, 9.0], &[1.0, -0.5, 2.0]);
    for &s in &[0.3, 0.75, 1.5, 2.5] {
        let grid = default_curve_grid(u.spectrum(), 200).unwrap();
        let t = trace0(&extend(&u, s, &grid).unwrap()).unwrap();
        for (a, b) in t.coeffs().iter().zip(u.coeffs()) {
            assert!((a - b).abs() <= 1e-8 * b.abs(), "s={s}: {a} vs {b}");
        }
    }
    let one = vector(&[1.0], &[1.0]);
    let c = extend(&one, 0.3, &[2.5e-5, 5e-5, 1e-4]).unwrap();
    assert!((trace0(&c).unwrap().coeffs()[0] - 1.0).abs() < 1e-6);
    let zero = extend(&vector(&[1.0], &[0.0]), 0.3, &[2.5e-5, 5e-5, 1e-4]).unwrap();
    assert_eq!(trace0(&zero).unwrap().coeffs(), &[0.0]);
}

#[test]
fn conormal_trace_hand_limits() {
    let t = conormal_trace(&vector(&[4.0], &[1.0]), 0.5, ConormalMethod::ClosedForm).unwrap();
    assert!((t.coeffs()[0] + 2.0).abs() < 1e-6);
    // (𝔻_0+1)ψ_{3/2} = 2ψ_{1/2}, whose derivative at 0 is −2
    let one = vector(&[1.0], &[1.0]);
    let a = conormal_trace(&one, 1.5, ConormalMethod::ClosedForm).unwrap();
    let b = conormal_trace(&one, 1.5, ConormalMethod::FiniteDifference).unwrap();
    assert!((a.coeffs()[0] + 2.0).abs() < 1e-6 && (b.coeffs()[0] + 2.0).abs() < 1e-6);
}

#[test]
fn conormal_trace_matches_fractional_power() {
    let u = vector(&[1.0, 4.0], &[1.0, 1.0]);
    for &s in &[0.3, 0.5, 1.5, 2.5] {
        let d = FracParams::new(s).unwrap().d_s();
        let got = conormal_trace(&u, s, ConormalMethod::ClosedForm).unwrap();
        let want = u.apply_power(s).unwrap();
        for (a, b) in got.coeffs().iter().zip(want.coeffs()) {
            assert!((a + d * b).abs() <= 1e-4 * d * b.abs(), "s={s}");
        }
    }
}

#[test]
fn first_derivative_half_order() {
    let grid = [0.0, 0.5, 1.0, 2.0];
    let d = derivative_curve(&vector(&[1.0], &[1.0]), 0.5, 1, &grid).unwrap();
    assert_eq!(d.mode(0)[0], 0.0);
    for (i, y) in grid.iter().enumerate().skip(1) {
        assert!((d.mode(0)[i] + (-y).exp()).abs() < 1e-15);
    }
}

#[test]
fn derivatives_against_symbolic_calculus() {
    let u = vector(&[0.5, 2.0, 7.0], &[1.0, -1.0, 0.3]);
    let grid = [0.3, 0.9, 2.0, 4.5];
    for s in [0.75f64, 1.5, 2.5, 3.3] {
        let kmax = (2.0 * s).floor() as usize;
        for k in 1..=kmax {
            let d = derivative_curve(&u, s, k, &grid).unwrap();
            for (j, (&lambda, &c)) in u.spectrum().eigenvalues().iter().zip(u.coeffs()).enumerate() {
                let r = lambda.sqrt();
                for (i, &y) in grid.iter().enumerate() {
                    let want = c * r.powi(k as i32) * symbolic_psi_jet(s, r * y, k)[k];
                    let got = d.mode(j)[i];
                    assert!((got - want).abs() <= 1e-9 * want.abs().max(1e-3 * c.abs()), "s={s} k={k}");
                }
            }
        }
    }
}

#[test]
fn first_derivative_against_finite_differences() {
    let u = vector(&[1.0, 3.0], &[1.0, 2.0]);
    let ys: Vec<f64> = (0..11).map(|i| 0.5 + 0.25 * i as f64).collect();
    for &s in &[0.75, 1.5, 2.5] {
        let d = derivative_curve(&u, s, 1, &ys).unwrap();
        let h = 1e-3;
        for (i, &y) in ys.iter().enumerate() {
            let pts = [y - 2.0 * h, y - h, y + h, y + 2.0 * h];
            let c = extend(&u, s, &pts).unwrap();
            for j in 0..2 {
                let f = c.mode(j);
                let fd = (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h);
                let got = d.mode(j)[i];
                assert!((got - fd).abs() <= 1e-5 * got.abs(), "s={s} y={y}");
            }
        }
    }
}

#[test]
fn second_derivative_at_origin() {
    // κ_{2.5,1} λ u = −λu/3
    let u = vector(&[1.0, 4.0], &[1.0, 2.0]);
    let d = derivative_at_origin(&u, 2.5, 2).unwrap();
    assert!((d.coeffs()[0] + 1.0 / 3.0).abs() < 1e-15);
    assert!((d.coeffs()[1] + 8.0 / 3.0).abs() < 1e-14);
    let odd = derivative_at_origin(&u, 2.5, 3).unwrap();
    assert!(odd.coeffs().iter().all(|v| *v == 0.0));
    // odd-order columns tend to 0 as y → 0
    let near = derivative_curve(&u, 2.5, 1, &[1e-6]).unwrap();
    assert!(near.mode(1)[0].abs() < 1e-4);
}

#[test]
fn taylor_series_of_closed_forms() {
    let one = vector(&[1.0], &[1.0]);
    // (1+y)e^{−y} = 1 − y²/2 + y³/3 − ...
    let t = taylor_expand(&one, 1.5, 1).unwrap();
    assert_eq!(t[0].coeffs(), &[1.0]);
    assert_eq!(t[1].coeffs(), &[-0.5]);
    // (1+y+y²/3)e^{−y} = 1 − y²/6 + y⁴/24 − ...
    let t = taylor_expand(&one, 2.5, 2).unwrap();
    assert!((t[1].coeffs()[0] + 1.0 / 6.0).abs() < 1e-16);
    assert!((t[2].coeffs()[0] - 1.0 / 24.0).abs() < 1e-16);
    assert!(taylor_expand(&one, 0.5, 1).is_err());
    assert!(taylor_expand(&one, 1.5, 2).is_err());
}

#[test]
fn taylor_remainder_ratio_decreases() {
    let one = vector(&[1.0], &[1.0]);
    let mut last = f64::INFINITY;
    for n in 4..=12 {
        let y = 0.5f64.powi(n);
        let r = taylor_remainder(&one, 2.5, 2, y, RemainderMethod::Integral).unwrap().coeffs()[0];
        let ratio = r.abs() / y.powi(4);
        assert!(ratio < last, "n={n}: {ratio} >= {last}");
        last = ratio;
    }
    // remainder of (1+y)e^{−y} after 1 − y²/2 is y³/3 + O(y⁴)
    let y = 1e-3;
    let r = taylor_remainder(&one, 1.5, 1, y, RemainderMethod::Integral).unwrap().coeffs()[0];
    assert!((r / y.powi(3) - 1.0 / 3.0).abs() < 1e-3);
    let direct = taylor_remainder(&one, 1.5, 1, 0.5, RemainderMethod::Direct).unwrap().coeffs()[0];
    let integral = taylor_remainder(&one, 1.5, 1, 0.5, RemainderMethod::Integral).unwrap().coeffs()[0];
    assert!((direct - integral).abs() < 1e-13);
}

#[test]
fn ode_residual_vanishes() {
    for &s in &[0.5, 1.5] {
        for &y in &[0.2, 0.7, 2.0, 5.0] {
            assert!(mode_ode_residual(s, 1.0, y, OdeScheme::Analytic).unwrap().abs() <= 1e-12);
        }
    }
    let u = vector(&[1.0, 4.0], &[1.0, 1.0]);
    let norm = u.sobolev_norm(0.0).unwrap();
    for &s in &[0.25, 0.75, 1.5, 2.5, 3.5] {
        for y in geometric_grid(0.2, 5.0, 9).unwrap() {
            assert!(ode_residual(&u, s, y, OdeScheme::Collapsed).unwrap() <= 1e-4 * norm);
        }
    }
    let zero = vector(&[1.0, 4.0], &[0.0, 0.0]);
    assert_eq!(ode_residual(&zero, 2.5, 1.0, OdeScheme::Collapsed).unwrap(), 0.0);
    // fully numerical cross-check where its noise allows
    for &s in &[0.3, 1.5] {
        assert!(mode_ode_residual(s, 1.0, 1.0, OdeScheme::Nested).unwrap().abs() < 1e-5);
    }
}

#[test]
fn recurrence_against_symbolic_powers() {
    for &s in &[1.5, 2.5, 3.7] {
        let p = FracParams::new(s).unwrap();
        for m in 1..=p.floor() {
            for y in geometric_grid(0.1, 10.0, 7).unwrap() {
                let mut jet = symbolic_psi_jet(s, y, 2 * m);
                for _ in 0..m {
                    jet = shift_jet(&jet, y, p.b(), 1.0);
                }
                let want = p.recurrence_ratio(m).unwrap() * fracext::special::psi(s - m as f64, y).unwrap();
                assert!((jet[0] - want).abs() <= 1e-9 * want.abs(), "s={s} m={m} y={y}");
                let r = recurrence_check(s, m, y, RecurrenceScheme::Stepwise, 1e-5).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }
    // nested differences stay usable for two levels
    let r = recurrence_check(2.5, 2, 1.0, RecurrenceScheme::Nested, 1e-5).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn holder_slope_small_order() {
    let one = vector(&[1.0], &[1.0]);
    let ys = geometric_grid(1e-4, 1e-2, 9).unwrap();
    let slope = holder_slope(&one, 0.3, &ys).unwrap();
    assert!((slope - 0.6).abs() <= 0.05, "slope={slope}");
}

#[test]
fn curve_exports() {
    let c = extend(&vector(&[1.0, 4.0], &[1.0, 1.0]), 0.5, &[0.5, 1.0]).unwrap();
    let csv = c.to_csv();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("# s=5.0000000000000000e-1, b="));
    assert_eq!(lines.next().unwrap(), "y,mode_1,mode_2");
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(row[0], 0.5);
    assert!((row[1] - (-0.5f64).exp()).abs() < 1e-14);
    let json: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
    assert_eq!(json["grid"][1], 1.0);
    assert_eq!(json["values"][1][0].as_f64().unwrap(), c.mode(1)[0]);
}

fn case() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..8).prop_flat_map(|n| {
        (
            prop::collection::vec(0.05f64..50.0, n),
            prop::collection::vec(-3.0f64..3.0, n),
        )
    })
}

fn non_integer() -> impl Strategy<Value = f64> {
    (0.05f64..3.95).prop_filter("non-integer", |s| (s - s.round()).abs() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn columns_are_nonexpansive((eigs, coeffs) in case(), s in non_integer()) {
        let u = vector(&eigs, &coeffs);
        let grid = default_curve_grid(u.spectrum(), 60).unwrap();
        let curve = extend(&u, s, &grid).unwrap();
        for sigma in [-1.0, 0.0, 1.0, s] {
            let r = nonexpansive_check(&curve, sigma, 1e-12).unwrap();
            prop_assert!(r.pass, "{:?}", r);
        }
    }

    #[test]
    fn powers_commute_with_extension((eigs, coeffs) in case(), s in non_integer(), sigma in -1.5f64..1.5) {
        let u = vector(&eigs, &coeffs);
        let grid = default_curve_grid(u.spectrum(), 40).unwrap();
        let r = commutation_check(&u, s, sigma, &grid, 1e-13).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn modes_decay_along_grid(lambda in 0.05f64..50.0, s in non_integer()) {
        let u = vector(&[lambda], &[1.0]);
        let grid = geometric_grid(1e-3 / lambda.sqrt(), 30.0 / lambda.sqrt(), 50).unwrap();
        let c = extend(&u, s, &grid).unwrap();
        for w in c.mode(0).windows(2) {
            prop_assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn derivative_bound_is_grid_stable(s in non_integer(), lambda in 0.1f64..20.0) {
        let kmax = (2.0 * s).floor() as usize;
        prop_assume!(kmax >= 1);
        let u = vector(&[lambda], &[1.0]);
        let coarse = geometric_grid(1e-2, 20.0, 40).unwrap();
        let fine = geometric_grid(1e-2, 20.0, 79).unwrap();
        for k in 1..=kmax {
            let sup = |g: &[f64]| {
                let d = derivative_curve(&u, s, k, g).unwrap();
                d.mode(0).iter().fold(0.0f64, |m, v| m.max(v.abs())) / lambda.powf(0.5 * k as f64)
            };
            let (a, b) = (sup(&coarse), sup(&fine));
            prop_assert!(a.is_finite() && b.is_finite());
            prop_assert!(b >= a * (1.0 - 1e-12) && b <= 1.5 * a + 1e-12);
        }
    }
}
