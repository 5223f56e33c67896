use num_complex::Complex64;

// B_{2k} / (2k)! for k = 1..=6.
const BERNOULLI_OVER_FACTORIAL: [f64; 6] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
];

pub(super) fn terms_for(s: Complex64) -> usize {
    let n = (2.0 * s.im.abs()).ceil() + s.re.abs().ceil();
    (n as usize).max(20)
}

/// `(s - 1) zeta(s)` by Euler–Maclaurin summation; finite at `s = 1`, where
/// it equals 1. Valid (as an analytic continuation) for `Re s > -13`.
pub(super) fn pole_removed(s: Complex64) -> Complex64 {
    pole_removed_with(s, terms_for(s))
}

pub(super) fn pole_removed_with(s: Complex64, n_terms: usize) -> Complex64 {
    let mut head = Complex64::new(0.0, 0.0);
    for n in 1..n_terms {
        head += (-s * (n as f64).ln()).exp();
    }
    let big_n = n_terms as f64;
    let ln_n = big_n.ln();
    let n_pow = (-s * ln_n).exp();
    let mut tail = 0.5 * n_pow;

    // s (s+1) ... (s+2k-2) N^{-s-2k+1}
    let mut rising = s;
    let mut power = n_pow / big_n;
    let inv_n_sq = 1.0 / (big_n * big_n);
    for (k, &c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        tail += c * rising * power;
        let j = 2.0 * (k as f64 + 1.0);
        rising *= (s + (j - 1.0)) * (s + j);
        power *= inv_n_sq;
    }
    (s - 1.0) * (head + tail) + n_pow * big_n
}
