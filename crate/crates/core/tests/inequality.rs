use proptest::prelude::*;

use huygens_bessel::inequality::{
    find_violation, huygens_i_weighted, huygens_j_weighted, huygens_theorem1, huygens_theorem2, internal_h,
    internal_k, origin_limit, ratio_f, ratio_g, ratio_g_excess, turan_i, turan_j, HuygensWeights, MONOTONE_TOL,
};
use huygens_bessel::oracle::oracle_eval;
use huygens_bessel::{eval_i, first_zero, Family, Order, Scaling};

const NU_GRID: [f64; 7] = [-0.9, -0.5, -0.25, 0.0, 0.5, 1.0, 2.0];

fn ord(nu: f64) -> Order {
    Order::new(nu).unwrap()
}

fn j1(nu: f64) -> f64 {
    first_zero(&ord(nu), 1e-14).unwrap().location
}

/// 20 points in (0, 0.999·j).
fn j_grid(nu: f64) -> Vec<f64> {
    let j = j1(nu);
    (1..=20).map(|k| 0.999 * j * k as f64 / 20.0).collect()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
}

fn oracle(family: Family, nu: f64, x: f64) -> f64 {
    oracle_eval(family, &ord(nu), x, 50).unwrap().to_f64()
}

#[test]
fn turan_j_positive_on_grid() {
    for nu in NU_GRID {
        for x in j_grid(nu) {
            assert!(turan_j(&ord(nu), x).unwrap().satisfied, "nu={nu} x={x}");
            assert!(turan_j(&ord(nu), -x).unwrap().satisfied);
        }
    }
}

#[test]
fn turan_i_positive_on_log_grid() {
    for nu in NU_GRID {
        for x in log_grid(0.01, 100.0, 41) {
            assert!(turan_i(&ord(nu), x).unwrap().satisfied, "nu={nu} x={x}");
        }
    }
}

#[test]
fn turan_i_minus_half_specialization() {
    // cosh x (x cosh x − sinh x) < x sinh² x, i.e. sinh 2x > 2x
    for x in log_grid(0.05, 20.0, 60) {
        let (s, c) = (x.sinh(), x.cosh());
        let margin = turan_i(&ord(-0.5), x).unwrap().margin;
        let elementary = 3.0 * (x * s * s - c * (x * c - s)) / x.powi(3);
        assert!(((margin - elementary) / elementary).abs() < 1e-9, "x={x}");
        assert!(margin > 0.0);
    }
}

#[test]
fn cosh_form_without_x_fails_for_small_argument() {
    // cosh x (cosh x − x sinh x) < sinh² x reduces to 1 < x sinh x cosh x,
    // which only agrees with the Turán specialization at x = 1
    let x: f64 = 0.5;
    assert!(x.cosh() * (x.cosh() - x * x.sinh()) > x.sinh().powi(2));
    assert!(turan_i(&ord(-0.5), x).unwrap().satisfied);
}

#[test]
fn theorem1_positive_on_hypothesis_grid() {
    for nu in [-0.9, -0.75, -0.5, -0.25, -0.1, 0.0] {
        for x in j_grid(nu) {
            let c = huygens_theorem1(&ord(nu), x).unwrap();
            assert!(c.satisfied && c.within_hypothesis, "nu={nu} x={x}");
        }
    }
}

#[test]
fn theorem1_against_oracle() {
    let nu = -0.25;
    let x = 0.9 * j1(nu);
    let (a, b) = (oracle(Family::J, nu, x), oracle(Family::J, nu + 1.0, x));
    let c = origin_limit(&ord(nu));
    let expected = 1.0 - (1.0 - c) * a - c * a / b;
    let got = huygens_theorem1(&ord(nu), x).unwrap().margin;
    assert!(got > 0.0);
    assert!(((got - expected) / expected).abs() < 1e-10);
}

#[test]
fn theorem2_positive_on_grid() {
    for nu in [-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0] {
        for x in log_grid(1e-3, 100.0, 50) {
            assert!(huygens_theorem2(&ord(nu), x).unwrap().satisfied, "nu={nu} x={x}");
        }
    }
}

#[test]
fn weighted_i_example_against_oracle() {
    let (_, right) = huygens_i_weighted(&ord(0.0), HuygensWeights::new(0.5, 1.0), 2.0).unwrap();
    let expected = 1.0 - oracle(Family::I, 1.0, 2.0) / oracle(Family::I, 0.0, 2.0);
    assert!((right.margin - expected).abs() < 1e-15);
}

#[test]
fn ratio_f_nondecreasing() {
    for nu in [-0.9, -0.75, -0.5, -0.25, 0.0] {
        let j = j1(nu);
        let limit = origin_limit(&ord(nu));
        let mut prev = limit;
        for k in 1..200 {
            let f = ratio_f(&ord(nu), j * k as f64 / 200.0).unwrap();
            assert!(f - prev >= -MONOTONE_TOL, "nu={nu} k={k}");
            assert!(f >= limit - 1e-9);
            prev = f;
        }
    }
}

#[test]
fn ratio_g_nonincreasing_and_bounded() {
    for nu in NU_GRID {
        let limit = origin_limit(&ord(nu));
        let mut prev = limit;
        for k in 1..=200 {
            let x = 0.25 * k as f64;
            let g = ratio_g(&ord(nu), x).unwrap();
            assert!(prev - g >= -MONOTONE_TOL, "nu={nu} x={x}");
            assert!(g > 1.0 - 1e-12 && g < limit + 1e-9);
            prev = g;
        }
    }
}

#[test]
fn ratio_g_excess_tail_strictly_decreasing() {
    for nu in [-0.5, 0.0, 0.5, 2.0] {
        let tail: Vec<f64> = (0..20).map(|k| ratio_g_excess(&ord(nu), 40.0 + 8.0 * k as f64).unwrap()).collect();
        assert!(tail.windows(2).all(|w| w[1] < w[0]), "nu={nu}: {tail:?}");
        assert!(ratio_g(&ord(nu), 200.0).unwrap() - 1.0 < 1e-2);
    }
}

#[test]
fn auxiliary_functions() {
    for nu in NU_GRID {
        for x in j_grid(nu) {
            assert!(internal_h(&ord(nu), x).unwrap() <= 0.0, "h nu={nu} x={x}");
        }
        let mut prev = internal_k(&ord(nu), 0.0).unwrap();
        for k in 1..=200 {
            let v = internal_k(&ord(nu), 0.25 * k as f64).unwrap();
            assert!(v <= 0.0 && v - prev >= -MONOTONE_TOL, "k nu={nu} k={k}");
            prev = v;
        }
    }
}

#[test]
fn modified_ordering_in_nu() {
    for nu in NU_GRID {
        for x in log_grid(0.01, 100.0, 30) {
            let a = eval_i(&ord(nu), x, 1e-12, Scaling::ExpScaled).unwrap().value;
            let b = eval_i(&ord(nu + 1.0), x, 1e-12, Scaling::ExpScaled).unwrap().value;
            assert!(b <= a, "nu={nu} x={x}");
        }
    }
}

#[test]
fn sharpness_j() {
    for nu in [-0.5, 0.0, 0.5] {
        let o = ord(nu);
        let sharp = HuygensWeights::sharp_j(&o);
        assert!(find_violation(Family::J, &o, sharp).unwrap().is_none(), "nu={nu}");
        let v = find_violation(Family::J, &o, sharp.offset(-1e-3, 0.0)).unwrap();
        assert!(v.is_some_and(|c| c.name.ends_with("left")), "nu={nu}");
        let v = find_violation(Family::J, &o, sharp.offset(0.0, 1e-3)).unwrap();
        assert!(v.is_some_and(|c| c.name.ends_with("right")), "nu={nu}");
    }
}

#[test]
fn sharpness_i() {
    for nu in [-0.5, 0.0, 0.5] {
        let o = ord(nu);
        let sharp = HuygensWeights::sharp_i(&o);
        assert!(find_violation(Family::I, &o, sharp).unwrap().is_none(), "nu={nu}");
        let v = find_violation(Family::I, &o, sharp.offset(1e-3, 0.0)).unwrap();
        assert!(v.is_some_and(|c| c.name.contains("left")), "nu={nu}");
        let v = find_violation(Family::I, &o, sharp.offset(0.0, -1e-3)).unwrap();
        assert!(v.is_some_and(|c| c.name.contains("right")), "nu={nu}");
    }
}

proptest! {
    #[test]
    fn weighted_j_holds_inside_thresholds(nu in -0.99f64..0.0, frac in 0.001f64..0.999, dp in 0.0f64..0.5, dq in -1.0f64..0.0) {
        let o = ord(nu);
        let x = frac * j1(nu);
        let w = HuygensWeights::sharp_j(&o).offset(dp, dq);
        let (l, r) = huygens_j_weighted(&o, w, x).unwrap();
        prop_assert!(l.satisfied && r.satisfied);
    }

    #[test]
    fn weighted_i_holds_inside_thresholds(nu in -0.99f64..5.0, x in 0.01f64..300.0, dp in -0.5f64..0.0, dq in 0.0f64..1.0) {
        let o = ord(nu);
        let w = HuygensWeights::sharp_i(&o).offset(dp, dq);
        let (l, r) = huygens_i_weighted(&o, w, x).unwrap();
        prop_assert!(l.satisfied && r.satisfied);
    }

    #[test]
    fn turan_i_on_reals(nu in -0.99f64..3.0, x in -100.0f64..100.0) {
        prop_assume!(x != 0.0);
        prop_assert!(turan_i(&ord(nu), x).unwrap().satisfied);
    }

    #[test]
    fn theorem2_everywhere(nu in -0.99f64..3.0, x in 1e-3f64..300.0) {
        prop_assert!(huygens_theorem2(&ord(nu), x).unwrap().satisfied);
    }
}
