mod common;

use common::*;
use proptest::prelude::*;
use qrobust::stats::kendall_tau;
use rand::Rng;

fn pair(max_len: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2..max_len).prop_flat_map(|n| {
        (
            prop::collection::vec(-5i32..5, n).prop_map(|v| v.into_iter().map(f64::from).collect()),
            prop::collection::vec(-100.0..100.0f64, n),
        )
    })
}

proptest! {
    #[test]
    fn antisymmetric((x, y) in pair(40)) {
        prop_assert_eq!(kendall_tau(&x, &y).unwrap(), kendall_tau(&y, &x).unwrap());
    }

    #[test]
    fn invariant_under_increasing_maps((x, y) in pair(40)) {
        let base = kendall_tau(&x, &y).unwrap();
        let cubed: Vec<f64> = x.iter().map(|v| v.powi(3)).collect();
        let exped: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        prop_assert_eq!(kendall_tau(&cubed, &y).unwrap(), base);
        prop_assert_eq!(kendall_tau(&exped, &y).unwrap(), base);
    }

    #[test]
    fn negation_flips_sign((y, x) in pair(40)) {
        // continuous x has no ties
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        let a = kendall_tau(&x, &y).unwrap();
        let b = kendall_tau(&neg, &y).unwrap();
        prop_assert_eq!(a.map(|t| -t), b);
    }
}

#[test]
fn matches_brute_force_on_integer_sequences() {
    let mut r = rng(20);
    for k in 0..50 {
        let n = r.gen_range(2..60);
        let spread = if k % 5 == 0 { 3 } else { 50 };
        let x: Vec<i64> = (0..n).map(|_| r.gen_range(0..spread)).collect();
        let y: Vec<i64> = (0..n).map(|_| r.gen_range(0..spread)).collect();
        let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        let yf: Vec<f64> = y.iter().map(|&v| v as f64).collect();
        assert_eq!(kendall_tau(&xf, &yf).unwrap(), kendall_brute_force(&x, &y), "case {k}");
    }
}

#[test]
fn rejects_bad_input() {
    assert!(kendall_tau(&[1.0], &[1.0]).is_err());
    assert!(kendall_tau(&[1.0, 2.0], &[1.0]).is_err());
    assert!(kendall_tau(&[1.0, f64::NAN], &[1.0, 2.0]).is_err());
}
