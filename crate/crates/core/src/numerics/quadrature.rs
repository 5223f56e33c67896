use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::Serialize;

use super::{NumericsError, Result};

/// Default cap on integrand evaluations for a single integral.
pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

// 15-point Kronrod abscissae on [-1, 1] (positive half, descending) with the
// embedded 7-point Gauss rule on the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Value, error estimate and cost of a numerical integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Stopping rule for the adaptive integrators.
///
/// Subdivision stops once the summed error estimate drops below
/// `max(abs_tol, rel_tol * |I|)` or reaches the rounding floor of the rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evaluations: usize,
}

impl QuadOptions {
    pub fn absolute(tol: f64) -> Self {
        Self { abs_tol: tol, rel_tol: 0.0, max_evaluations: DEFAULT_MAX_EVALUATIONS }
    }

    pub fn relative(rel_tol: f64, abs_tol: f64) -> Self {
        Self { abs_tol, rel_tol, max_evaluations: DEFAULT_MAX_EVALUATIONS }
    }

    pub fn with_budget(mut self, max_evaluations: usize) -> Self {
        self.max_evaluations = max_evaluations;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0) || (self.abs_tol == 0.0 && self.rel_tol == 0.0)
        {
            return Err(NumericsError::InvalidArgument(format!(
                "tolerances must be non-negative and not both zero (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_evaluations < 15 {
            return Err(NumericsError::InvalidArgument("evaluation budget below one rule".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs_value: f64,
}

struct HeapEntry {
    error: f64,
    index: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.index.cmp(&self.index))
    }
}

fn kronrod_segment<F, T>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> T,
    T: Into<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<Complex64> {
        let v: Complex64 = f(x).into();
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(NumericsError::NonFinite(x))
        }
    };

    let mut values = [Complex64::new(0.0, 0.0); 15];
    values[7] = eval(center)?;
    for j in 0..7 {
        let dx = half * XGK[j];
        values[j] = eval(center - dx)?;
        values[14 - j] = eval(center + dx)?;
    }

    let mut kronrod = values[7] * WGK[7];
    let mut gauss = values[7] * WG[3];
    let mut abs_sum = values[7].norm() * WGK[7];
    for j in 0..7 {
        let pair = values[j] + values[14 - j];
        kronrod += pair * WGK[j];
        abs_sum += (values[j].norm() + values[14 - j].norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = (values[7] - mean).norm() * WGK[7];
    for j in 0..7 {
        asc += ((values[j] - mean).norm() + (values[14 - j] - mean).norm()) * WGK[j];
    }

    let scale = half.abs();
    let value = kronrod * half;
    let abs_value = abs_sum * scale;
    let asc = asc * scale;
    let mut error = ((kronrod - gauss) * half).norm();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    error = error.max(50.0 * f64::EPSILON * abs_value);
    Ok(Segment { a, b, value, error, abs_value })
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]` to absolute
/// tolerance `tol`.
pub fn integrate_adaptive<F, T>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> T,
    T: Into<Complex64>,
{
    integrate_adaptive_with(f, a, b, &QuadOptions::absolute(tol))
}

pub fn integrate_adaptive_with<F, T>(
    mut f: F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> T,
    T: Into<Complex64>,
{
    opts.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(NumericsError::InvalidArgument(format!("non-finite limits [{a}, {b}]")));
    }
    if b < a {
        let r = integrate_adaptive_with(f, b, a, opts)?;
        return Ok(QuadratureResult { value: -r.value, ..r });
    }

    let first = kronrod_segment(&mut f, a, b)?;
    let mut evaluations = 15;
    let mut segments = vec![first];
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry { error: first.error, index: 0 });
    let mut total = first.value;
    let mut total_error = first.error;
    let mut total_abs = first.abs_value;

    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.norm());
        if total_error <= target || total_error <= 100.0 * f64::EPSILON * total_abs {
            break;
        }
        if evaluations + 30 > opts.max_evaluations {
            let best = assemble(&segments, evaluations);
            return Err(NumericsError::BudgetExhausted { best });
        }
        let Some(worst) = heap.pop() else { break };
        let seg = segments[worst.index];
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Interval cannot be split further in floating point; keep its
            // estimate and continue with the rest.
            continue;
        }
        let left = kronrod_segment(&mut f, seg.a, mid)?;
        let right = kronrod_segment(&mut f, mid, seg.b)?;
        evaluations += 30;

        total += left.value + right.value - seg.value;
        total_error += left.error + right.error - seg.error;
        total_abs += left.abs_value + right.abs_value - seg.abs_value;

        segments[worst.index] = left;
        heap.push(HeapEntry { error: left.error, index: worst.index });
        segments.push(right);
        heap.push(HeapEntry { error: right.error, index: segments.len() - 1 });
    }

    Ok(assemble(&segments, evaluations))
}

// Sum in left-endpoint order so the result does not depend on the order in
// which subintervals were refined.
fn assemble(segments: &[Segment], evaluations: usize) -> QuadratureResult {
    let mut ordered: Vec<&Segment> = segments.iter().collect();
    ordered.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for s in ordered {
        value += s.value;
        error += s.error;
    }
    QuadratureResult { value, error_estimate: error, evaluations }
}

/// Integral of `f` over `[a, inf)` through the map `x = a + t / (1 - t)`.
///
/// The integrand must decay at least exponentially; a tail probe over
/// geometrically growing windows rejects integrands that do not.
pub fn integrate_semi_infinite<F, T>(f: F, a: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> T,
    T: Into<Complex64>,
{
    integrate_semi_infinite_with(f, a, &QuadOptions::absolute(tol))
}

pub fn integrate_semi_infinite_with<F, T>(
    mut f: F,
    a: f64,
    opts: &QuadOptions,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> T,
    T: Into<Complex64>,
{
    opts.validate()?;
    if !a.is_finite() {
        return Err(NumericsError::InvalidArgument(format!("non-finite lower limit {a}")));
    }

    // Tail probe: integral of |f| over [a + 2^j, a + 2^(j+1)].
    let mut probe_evals = 0;
    let mut tails = Vec::with_capacity(4);
    for j in [6, 10, 14, 18] {
        let lo = a + f64::powi(2.0, j);
        let hi = a + f64::powi(2.0, j + 1);
        let seg = kronrod_segment(&mut f, lo, hi)?;
        probe_evals += 15;
        tails.push(seg.abs_value);
    }
    let floor = opts.abs_tol.max(f64::MIN_POSITIVE);
    for w in tails.windows(2) {
        if w[1] > floor && w[1] >= 0.5 * w[0] {
            return Err(NumericsError::Divergent(w[0], w[1]));
        }
    }

    let mut mapped = |t: f64| -> Complex64 {
        let one_minus = 1.0 - t;
        let x = a + t / one_minus;
        if !x.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        let v: Complex64 = f(x).into();
        if v == Complex64::new(0.0, 0.0) {
            v
        } else {
            v / (one_minus * one_minus)
        }
    };
    let mut r = integrate_adaptive_with(&mut mapped, 0.0, 1.0, opts).map_err(|e| match e {
        NumericsError::BudgetExhausted { mut best } => {
            best.evaluations += probe_evals;
            NumericsError::BudgetExhausted { best }
        }
        NumericsError::NonFinite(t) => NumericsError::NonFinite(a + t / (1.0 - t)),
        other => other,
    })?;
    r.evaluations += probe_evals;
    Ok(r)
}
