//! The rank-based dependence estimates on synthetic relationships.
//!
//! Run with: cargo run --release --example xi_and_codec

use lagsel::dependence::{codec_conditional, codec_unconditional, xi_coefficient, Points};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let n = 2000;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
    let noise: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();

    let linear: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
    let sine: Vec<f64> = x.iter().map(|v| (2.0 * v).sin()).collect();
    let noisy_sine: Vec<f64> = x
        .iter()
        .zip(&noise)
        .map(|(v, e)| (2.0 * v).sin() + 0.3 * e)
        .collect();
    let independent: Vec<f64> = noise.clone();

    println!("xi(x, y): 0 under independence, 1 - 3/(n+1) under exact dependence\n");
    println!("{:<22} {:>10} {:>10}", "relationship", "xi(x,y)", "xi(y,x)");
    for (name, y) in [
        ("linear", &linear),
        ("sine (non-monotone)", &sine),
        ("noisy sine", &noisy_sine),
        ("independent noise", &independent),
    ] {
        let fwd = xi_coefficient(&x, y, 1).unwrap().value;
        let rev = xi_coefficient(y, &x, 1).unwrap().value;
        println!("{name:<22} {fwd:>10.4} {rev:>10.4}");
    }
    println!("\nnote the asymmetry: y = sin(2x) determines y from x, not x from y\n");

    // codec: dependence of y on z, optionally given a conditioning set
    let z = Points::from_columns(&[&x]).unwrap();
    let uncond = codec_unconditional(&sine, &z, 2).unwrap();
    println!("codec(sine | driven by x):            {:.4}", uncond.value);

    // conditioning on x leaves independent noise nothing to explain
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let zw = Points::from_columns(&[&w]).unwrap();
    let cond = codec_conditional(&noisy_sine, &zw, &z, 3).unwrap();
    println!("codec(noisy sine on noise w, given x): {:.4}", cond.value);
}
