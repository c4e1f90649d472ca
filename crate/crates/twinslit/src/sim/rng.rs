//! Deterministic, splittable random streams.
//!
//! Every draw in a simulation comes from a stream keyed by (seed, point
//! index, channel). Streams never share state, so points can be generated in
//! any order, or skipped, and still produce bit-identical counts.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: a bijective avalanche mix on u64.
fn mix(mut h: u64) -> u64 {
    h ^= h >> 30;
    h = h.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    h ^= h >> 27;
    h = h.wrapping_mul(0x94D0_49BB_1331_11EB);
    h ^ (h >> 31)
}

/// xoshiro256** seeded from a (seed, index, channel) key via SplitMix64.
#[derive(Debug, Clone)]
pub struct Stream {
    s: [u64; 4],
}

impl Stream {
    pub fn new(seed: u64, index: u64, channel: u32) -> Self {
        let mut k = mix(seed ^ GOLDEN);
        k = mix(k.wrapping_add(GOLDEN.wrapping_mul(index.wrapping_add(1))));
        k = mix(k ^ GOLDEN.wrapping_mul(u64::from(channel).wrapping_add(0x1000)));
        // expand the key into the xoshiro state with a SplitMix64 sequence
        let mut state = k;
        let mut s = [0u64; 4];
        for word in &mut s {
            state = state.wrapping_add(GOLDEN);
            *word = mix(state);
        }
        if s == [0, 0, 0, 0] {
            s[0] = GOLDEN;
        }
        Stream { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform f64 in [0, 1) with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }
}

/// Poisson draw with the given mean.
///
/// Below mean 10 this inverts the CDF by sequential search, which is exact.
/// Above it uses Hormann's transformed-rejection method (PTRS), a rejection
/// sampler whose acceptance test is exact as well, so no normal approximation
/// enters at any mean.
pub fn poisson(rng: &mut Stream, mean: f64) -> u64 {
    debug_assert!(mean.is_finite() && mean >= 0.0, "poisson mean {mean}");
    if mean <= 0.0 {
        0
    } else if mean < 10.0 {
        poisson_inversion(rng, mean)
    } else {
        poisson_ptrs(rng, mean)
    }
}

fn poisson_inversion(rng: &mut Stream, mean: f64) -> u64 {
    let u = rng.uniform();
    let mut p = (-mean).exp();
    let mut cum = p;
    let mut k = 0u64;
    while u > cum {
        k += 1;
        p *= mean / k as f64;
        cum += p;
        // u can sit in the far tail; stop once the term underflows
        if p < 1e-300 && k as f64 > mean {
            break;
        }
    }
    k
}

fn poisson_ptrs(rng: &mut Stream, mean: f64) -> u64 {
    let b = 0.931 + 2.53 * mean.sqrt();
    let a = -0.059 + 0.024_83 * b;
    let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    let v_r = 0.9277 - 3.6224 / (b - 2.0);
    let ln_mu = mean.ln();
    loop {
        let u = rng.uniform() - 0.5;
        let v = rng.uniform();
        let us = 0.5 - u.abs();
        let k = ((2.0 * a / us + b) * u + mean + 0.43).floor();
        if us >= 0.07 && v <= v_r {
            return k as u64;
        }
        if k < 0.0 || (us < 0.013 && v > us) {
            continue;
        }
        let accept = (v * inv_alpha / (a / (us * us) + b)).ln()
            <= k * ln_mu - mean - crate::stats::ln_factorial(k as u64);
        if accept {
            return k as u64;
        }
    }
}
