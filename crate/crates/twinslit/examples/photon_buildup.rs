//! The pattern assembling itself one photon at a time.
//!
//! Each detection is a single draw from the double-slit probability density.
//! A handful of arrivals looks like noise; thousands of them trace the
//! fringes. The histogram below redraws at three exposure lengths from the
//! same stream, so the early arrivals are a prefix of the late ones.

use twinslit::pattern::{double_slit_density, PatternParams};
use twinslit::sim::rng::Stream;
use twinslit::sim::build_sampler;
use twinslit::units::MM;

const BINS: usize = 72;
const ROWS: usize = 10;

fn draw(hist: &[u64], caption: &str) {
    let max = *hist.iter().max().unwrap() as f64;
    println!("{caption}");
    for r in (0..ROWS).rev() {
        let row: String = hist
            .iter()
            .map(|&c| {
                let level = c as f64 / max * ROWS as f64;
                if level >= r as f64 + 0.5 { '#' } else { ' ' }
            })
            .collect();
        println!("  |{row}|");
    }
    println!("  +{}+", "-".repeat(BINS));
    println!();
}

fn main() {
    let p = PatternParams::default();
    let half = 12.5 * MM;
    let sampler = build_sampler(|x| double_slit_density(x, &p), (-half, half), 8192)
        .expect("density is finite and positive somewhere");

    let mut rng = Stream::new(2024, 0, 0);
    let mut hist = [0u64; BINS];
    let mut drawn = 0u64;
    for &stop in &[300u64, 3_000, 60_000] {
        while drawn < stop {
            let x = sampler.sample(&mut rng);
            let b = ((x + half) / (2.0 * half) * BINS as f64) as usize;
            hist[b.min(BINS - 1)] += 1;
            drawn += 1;
        }
        draw(&hist, &format!("after {drawn} photons"));
    }
    println!("same stream throughout: the first exposures are prefixes of the last");
}
