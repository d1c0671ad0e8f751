//! The fast codec paths must agree with the naive O(n^2) reference on
//! random small instances: bitwise on the integer rank counts, within
//! 1e-12 after the final division.

mod common;

use common::{naive_codec_conditional, naive_codec_unconditional, random_instance};
use lagsel::dependence::{codec_conditional, codec_unconditional, Points};
use lagsel::error::Error;

#[test]
fn unconditional_matches_naive_reference() {
    let mut checked = 0;
    for seed in 0..700u64 {
        let inst = random_instance(seed);
        let z = Points::from_rows(&inst.z_rows).unwrap();
        let fast = codec_unconditional(&inst.y, &z, seed);
        match naive_codec_unconditional(&inst.y, &inst.z_rows) {
            Some((num, den)) => {
                let fast = fast.unwrap();
                assert_eq!(fast.numerator, num as f64, "seed {seed}");
                assert_eq!(fast.denominator, den as f64, "seed {seed}");
                assert!((fast.value - num as f64 / den as f64).abs() <= 1e-12);
                checked += 1;
            }
            None => assert!(matches!(fast, Err(Error::DegenerateResponse))),
        }
    }
    assert!(checked >= 500, "only {checked} non-degenerate instances");
}

#[test]
fn conditional_matches_naive_reference() {
    let mut checked = 0;
    for seed in 0..700u64 {
        let inst = random_instance(seed);
        let z = Points::from_rows(&inst.z_rows).unwrap();
        let x = Points::from_rows(&inst.x_rows).unwrap();
        let fast = codec_conditional(&inst.y, &z, &x, seed);
        match naive_codec_conditional(&inst.y, &inst.z_rows, &inst.x_rows) {
            Some((num, den)) => {
                let fast = fast.unwrap();
                assert_eq!(fast.numerator, num as f64, "seed {seed}");
                assert_eq!(fast.denominator, den as f64, "seed {seed}");
                assert!((fast.value - num as f64 / den as f64).abs() <= 1e-12);
                checked += 1;
            }
            None => assert!(matches!(fast, Err(Error::DegenerateConditioning))),
        }
    }
    assert!(checked >= 500, "only {checked} non-degenerate instances");
}
