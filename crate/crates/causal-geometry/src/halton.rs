//! Deterministic low-discrepancy sampling (Halton sequences).

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// `i`-th element of the van der Corput sequence in the given base,
/// in (0, 1).
pub fn van_der_corput(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    i += 1; // skip the zero
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// `i`-th Halton point in `dim` dimensions, components in (0,1).
pub fn halton(i: u64, dim: usize) -> Vec<f64> {
    (0..dim).map(|d| van_der_corput(i, PRIMES[d])).collect()
}

/// `i`-th Halton point mapped to `[-1,1]^dim` and rejected to the unit
/// ball; returns the accepted point together with how many raw indices
/// were consumed (callers keep a running cursor so the sequence stays
/// deterministic).
pub fn halton_in_ball(start: u64, dim: usize) -> (Vec<f64>, u64) {
    let mut i = start;
    loop {
        let p: Vec<f64> = halton(i, dim).into_iter().map(|u| 2.0 * u - 1.0).collect();
        let r2: f64 = p.iter().map(|c| c * c).sum();
        if r2 <= 1.0 {
            return (p, i + 1);
        }
        i += 1;
    }
}
