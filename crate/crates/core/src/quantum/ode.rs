//! Dormand–Prince 5(4) for a complex second-order linear equation written
//! as a first-order system.

use num_complex::Complex64;

pub(super) type State = [Complex64; 2];

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub(super) struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

pub(super) enum StepFailure {
    /// The step size collapsed at this abscissa.
    Underflow(f64),
    /// More than the allowed number of steps.
    Budget(f64),
}

/// Integrate `u'' = q(x) u` from `x0` to `x1` (either direction), calling
/// `record` after every accepted step.
pub(super) fn integrate<Q, R>(
    q: Q,
    x0: f64,
    mut state: State,
    x1: f64,
    tol: Tolerances,
    max_steps: usize,
    mut record: R,
) -> Result<State, StepFailure>
where
    Q: Fn(f64) -> Complex64,
    R: FnMut(f64, &State),
{
    let rhs = |x: f64, s: &State| -> State { [s[1], q(x) * s[0]] };
    let dir = (x1 - x0).signum();
    let span = (x1 - x0).abs();
    let mut x = x0;
    let mut h = dir * (span / 100.0).min(0.1 * x0.abs().max(x1.abs()).max(1e-3));
    let mut k = [[Complex64::new(0.0, 0.0); 2]; 7];
    k[0] = rhs(x, &state);
    let mut steps = 0usize;
    while (x1 - x) * dir > 0.0 {
        if steps >= max_steps {
            return Err(StepFailure::Budget(x));
        }
        steps += 1;
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        for stage in 1..7 {
            let mut tmp = state;
            for (j, a) in A[stage].iter().enumerate().take(stage) {
                if *a != 0.0 {
                    tmp[0] += k[j][0] * (h * a);
                    tmp[1] += k[j][1] * (h * a);
                }
            }
            k[stage] = rhs(x + C[stage] * h, &tmp);
        }
        let mut next = state;
        let mut err = 0.0f64;
        for c in 0..2 {
            let mut e = Complex64::new(0.0, 0.0);
            for j in 0..7 {
                next[c] += k[j][c] * (h * B5[j]);
                e += k[j][c] * (h * (B5[j] - B4[j]));
            }
            let scale = tol.abs + tol.rel * state[c].norm().max(next[c].norm());
            err = err.max(e.norm() / scale);
        }
        if err <= 1.0 {
            x = if (x + h - x1) * dir >= 0.0 { x1 } else { x + h };
            state = next;
            k[0] = k[6];
            record(x, &state);
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h.abs() < 1e-13 * x.abs().max(1e-300) {
            return Err(StepFailure::Underflow(x));
        }
    }
    Ok(state)
}
