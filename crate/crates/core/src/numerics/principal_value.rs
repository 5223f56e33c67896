use num_complex::Complex64;

use super::quadrature::{integrate_adaptive_with, QuadOptions};
use super::{NumericsError, Result};

/// Cauchy principal value of `int_a^b f(x) / (x - c) dx`.
///
/// The interval is split into the largest window symmetric about `c`, where
/// nodes are paired as `(f(c + u) - f(c - u)) / u` so the odd part cancels
/// exactly, plus a regular remainder on whichever side is longer.
pub fn principal_value_integral<F, T>(mut f: F, c: f64, a: f64, b: f64, tol: f64) -> Result<Complex64>
where
    F: FnMut(f64) -> T,
    T: Into<Complex64>,
{
    if !(a < c && c < b) {
        return Err(NumericsError::SingularityOutside { c, a, b });
    }
    let opts = QuadOptions::absolute(0.5 * tol);
    let half = (c - a).min(b - c);
    let paired = integrate_adaptive_with(
        |u: f64| -> Complex64 {
            let plus: Complex64 = f(c + u).into();
            let minus: Complex64 = f(c - u).into();
            (plus - minus) / u
        },
        0.0,
        half,
        &opts,
    )?;

    let mut total = paired.value;
    if b - c > half {
        let rest = integrate_adaptive_with(
            |x: f64| -> Complex64 { f(x).into() / (x - c) },
            c + half,
            b,
            &opts,
        )?;
        total += rest.value;
    } else if c - a > half {
        let rest = integrate_adaptive_with(
            |x: f64| -> Complex64 { f(x).into() / (x - c) },
            a,
            c - half,
            &opts,
        )?;
        total += rest.value;
    }
    Ok(total)
}

/// Principal value of `int g(x) / (x - c) dx` over the span of sampled data.
///
/// Uses the subtraction `int (g(x) - g(c)) / (x - c) dx + g(c) ln((b - c)/(c - a))`;
/// the regular part is integrated by the trapezoid rule on the nodes, and
/// `g(c)` comes from a local cubic so that `c` need not be a node.
pub fn principal_value_sampled(grid: &[f64], values: &[Complex64], c: f64) -> Result<Complex64> {
    let n = grid.len();
    if n < 4 || values.len() != n {
        return Err(NumericsError::InvalidArgument(format!(
            "need at least 4 samples with matching values (grid {}, values {})",
            n,
            values.len()
        )));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(NumericsError::InvalidArgument("grid must be strictly increasing".into()));
    }
    let (a, b) = (grid[0], grid[n - 1]);
    if !(a < c && c < b) {
        return Err(NumericsError::SingularityOutside { c, a, b });
    }

    // Four-point stencil around c, or a centred five-point one when c is a
    // node (so that mirrored grids give mirrored results).
    let upper = grid.partition_point(|&x| x <= c);
    let on_node = upper >= 3 && upper + 2 <= n && (grid[upper - 1] - c).abs() <= 1e-12 * (b - a);
    let stencil = if on_node {
        upper - 3..upper + 2
    } else {
        let upper = upper.clamp(2, n - 2);
        upper - 2..upper + 2
    };
    let (gc, dgc) = lagrange_value_and_slope(&grid[stencil.clone()], &values[stencil.clone()], c);

    let integrand = |j: usize| -> Complex64 {
        let dx = grid[j] - c;
        if stencil.contains(&j) && dx.abs() <= 1e-12 * (b - a) {
            dgc
        } else {
            (values[j] - gc) / dx
        }
    };

    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev = integrand(0);
    for j in 1..n {
        let cur = integrand(j);
        sum += (prev + cur) * (0.5 * (grid[j] - grid[j - 1]));
        prev = cur;
    }
    Ok(sum + gc * ((b - c) / (c - a)).ln())
}

fn lagrange_value_and_slope(xs: &[f64], ys: &[Complex64], x: f64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut slope = Complex64::new(0.0, 0.0);
    for i in 0..xs.len() {
        let mut denom = 1.0;
        for (m, &xm) in xs.iter().enumerate() {
            if m != i {
                denom *= xs[i] - xm;
            }
        }
        let mut basis = 1.0;
        for (m, &xm) in xs.iter().enumerate() {
            if m != i {
                basis *= x - xm;
            }
        }
        // derivative of prod_{m != i} (x - x_m)
        let mut dbasis = 0.0;
        for p in 0..xs.len() {
            if p == i {
                continue;
            }
            let mut term = 1.0;
            for (m, &xm) in xs.iter().enumerate() {
                if m != i && m != p {
                    term *= x - xm;
                }
            }
            dbasis += term;
        }
        value += ys[i] * (basis / denom);
        slope += ys[i] * (dbasis / denom);
    }
    (value, slope)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_kernel_vanishes() {
        let v = principal_value_integral(|_x: f64| 1.0, 0.0, -1.0, 1.0, 1e-12).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn removable_singularity() {
        let v = principal_value_integral(|x: f64| x, 0.0, -1.0, 1.0, 1e-12).unwrap();
        assert!((v.re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn exponential_against_symmetric_grid() {
        // Oracle: midpoint rule on a grid symmetric about 0, so the singular
        // nodes pair up as in the definition of the principal value.
        let m = 2_000_000usize;
        let h = 4.0 / m as f64;
        let mut oracle = 0.0;
        for j in 0..m {
            let x = -2.0 + (j as f64 + 0.5) * h;
            oracle += x.exp() / x * h;
        }
        let v = principal_value_integral(|x: f64| x.exp(), 0.0, -2.0, 2.0, 1e-12).unwrap();
        assert!((v.re - oracle).abs() < 1e-6, "{} vs {}", v.re, oracle);
        // 2 Shi(2)
        assert!((v.re - 5.003_134_866_709_952).abs() < 1e-10);
    }

    #[test]
    fn asymmetric_interval() {
        // PV int_{-1}^{3} dx/(x-0) = ln 3.
        let v = principal_value_integral(|_x: f64| 1.0, 0.0, -1.0, 3.0, 1e-12).unwrap();
        assert!((v.re - 3f64.ln()).abs() < 1e-12);
        let v = principal_value_integral(|_x: f64| 1.0, 0.0, -3.0, 1.0, 1e-12).unwrap();
        assert!((v.re + 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn singularity_outside_is_domain_error() {
        assert!(matches!(
            principal_value_integral(|x: f64| x, 2.0, -1.0, 1.0, 1e-10),
            Err(NumericsError::SingularityOutside { .. })
        ));
        assert!(matches!(
            principal_value_integral(|x: f64| x, -1.0, -1.0, 1.0, 1e-10),
            Err(NumericsError::SingularityOutside { .. })
        ));
    }

    #[test]
    fn sampled_matches_continuous() {
        let grid: Vec<f64> = (0..=2000).map(|j| -2.0 + 4.0 * j as f64 / 2000.0).collect();
        let values: Vec<Complex64> = grid.iter().map(|&x| Complex64::new(x.exp(), 0.0)).collect();
        for c in [0.0, 0.3, -1.234_567, 1.9] {
            let sampled = principal_value_sampled(&grid, &values, c).unwrap();
            let direct = principal_value_integral(|x: f64| x.exp(), c, -2.0, 2.0, 1e-12).unwrap();
            assert!((sampled - direct).norm() < 1e-5, "c = {c}: {sampled} vs {direct}");
        }
    }

    #[test]
    fn sampled_rejects_bad_input() {
        let grid = [0.0, 1.0, 2.0, 3.0];
        let values = [Complex64::new(1.0, 0.0); 4];
        assert!(principal_value_sampled(&grid, &values, 3.0).is_err());
        assert!(principal_value_sampled(&grid[..3], &values[..3], 1.0).is_err());
        let bad = [0.0, 2.0, 1.0, 3.0];
        assert!(principal_value_sampled(&bad, &values, 1.5).is_err());
    }
}
