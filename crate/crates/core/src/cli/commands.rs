use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{
    CorrespondenceArgs, HadamardArgs, JostVerifyArgs, KhuriArgs, KmomentArgs, Model, Report, ReportEnvelope,
    RoundtripArgs, SmatrixEvalArgs, SmatrixScanArgs, Table, ZerosArgs,
};
use crate::dispersion::{roundtrip_residual, BlaschkeSpec, Branch, RationalModel, RealLineSamples};
use crate::hadamard::{convergence_profile, fit_xi_constants, truncation_estimate, ZeroCatalog};
use crate::quantum::{
    asymptotic_residual, fit_moment_coefficient, k_moment_closed_form, khuri_reality_check, verify_jost_solution,
    MOMENT_COEFFICIENT,
};
use crate::scattering::{check_jost_zero, coupling_at_zero, jost_plus, s_matrix, SMatrixValue, ScatteringError};
use crate::zeros::{find_zeros, verify_scan};
use crate::zeta::ComplexArgument;
use crate::Result;

fn envelope<A: Serialize>(command: &str, args: &A, results: Value, diagnostics: Vec<String>) -> ReportEnvelope {
    let parameters = match serde_json::to_value(args) {
        Ok(Value::Object(map)) => map.into_iter().collect(),
        _ => Default::default(),
    };
    ReportEnvelope {
        command: command.to_string(),
        parameters,
        results,
        diagnostics,
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: None,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn cells<const N: usize>(values: [String; N]) -> Vec<String> {
    values.to_vec()
}

pub(super) fn zeros(a: &ZerosArgs) -> Result<Report> {
    let zeros = find_zeros(a.t_min, a.t_max, a.step, a.tol)?;
    let verdict = verify_scan(a.t_min, a.t_max, &zeros)?;
    let mut diagnostics = Vec::new();
    if !verdict.consistent {
        diagnostics.push(format!(
            "line scan found {} zeros but the argument principle counts {}",
            verdict.line_count, verdict.rectangle_count
        ));
    }
    let results = json!({
        "count": zeros.len(),
        "zeros": zeros,
        "cross_check": {
            "line_count": verdict.line_count,
            "rectangle_count": verdict.rectangle_count,
            "contour": verdict.contour,
            "verdict": if verdict.consistent { "consistent" } else { "inconsistent" },
        },
    });
    let table = Table {
        header: vec!["index", "ordinate", "abs_zeta", "log_abs_xi", "slope"],
        rows: zeros
            .iter()
            .map(|z| {
                cells([
                    z.index.to_string(),
                    z.ordinate.to_string(),
                    z.abs_zeta.to_string(),
                    z.log_abs_xi.to_string(),
                    z.slope.to_string(),
                ])
            })
            .collect(),
    };
    Ok(Report { envelope: envelope("zeros", a, results, diagnostics), table, verified: verdict.consistent })
}

fn describe(v: &SMatrixValue) -> Value {
    let value = if v.pole_flag { None } else { Some(v.value.value()) };
    json!({
        "value": value,
        "log_modulus": v.value.log_modulus(),
        "phase": v.value.phase(),
        "pole_flag": v.pole_flag,
        "zero_flag": v.zero_flag,
    })
}

pub(super) fn smatrix_eval(a: &SmatrixEvalArgs) -> Result<Report> {
    let s = ComplexArgument::new(a.re, a.im)?;
    let sm = s_matrix(s)?;
    let fp = jost_plus(s)?;
    let mut diagnostics = Vec::new();
    if sm.pole_flag {
        diagnostics.push(format!("S has a pole at s = {s}: xi(-2s) vanishes"));
    }
    if sm.zero_flag {
        diagnostics.push(format!("S vanishes at s = {s}: xi(2s) vanishes"));
    }
    let results = json!({ "s": s, "s_matrix": describe(&sm), "jost_plus": describe(&fp) });
    let v = sm.value.value();
    let table = Table {
        header: vec!["s_re", "s_im", "s_matrix_re", "s_matrix_im", "log_modulus", "phase", "pole_flag", "zero_flag"],
        rows: vec![cells([
            a.re.to_string(),
            a.im.to_string(),
            v.re.to_string(),
            v.im.to_string(),
            sm.value.log_modulus().to_string(),
            sm.value.phase().to_string(),
            sm.pole_flag.to_string(),
            sm.zero_flag.to_string(),
        ])],
    };
    Ok(Report { envelope: envelope("smatrix eval", a, results, diagnostics), table, verified: true })
}

#[derive(Serialize)]
struct ScanPoint {
    tau: f64,
    deviation: f64,
}

pub(super) fn smatrix_scan(a: &SmatrixScanArgs) -> Result<Report> {
    if !(a.tau_max >= 0.0 && a.step > 0.0 && a.tau_max.is_finite()) {
        return Err(ScatteringError::Domain(format!("need tau_max >= 0 and step > 0, got {} and {}", a.tau_max, a.step)).into());
    }
    let count = (a.tau_max / a.step + 1e-9).floor() as usize + 1;
    let series: Vec<ScanPoint> = (0..count)
        .into_par_iter()
        .map(|i| {
            let tau = i as f64 * a.step;
            let s = ComplexArgument::new(0.0, tau)?;
            Ok(ScanPoint { tau, deviation: (s_matrix(s)?.value.modulus() - 1.0).abs() })
        })
        .collect::<Result<_>>()?;
    let worst = series.iter().max_by(|x, y| x.deviation.total_cmp(&y.deviation)).expect("non-empty scan");
    let passed = worst.deviation < a.tolerance;
    let results = json!({
        "max_deviation": worst.deviation,
        "at_tau": worst.tau,
        "tolerance": a.tolerance,
        "passed": passed,
        "series": series,
    });
    let table = Table {
        header: vec!["tau", "deviation"],
        rows: series.iter().map(|p| cells([p.tau.to_string(), p.deviation.to_string()])).collect(),
    };
    Ok(Report { envelope: envelope("smatrix scan", a, results, Vec::new()), table, verified: passed })
}

pub(super) fn smatrix_correspondence(a: &CorrespondenceArgs) -> Result<Report> {
    let catalog = ZeroCatalog::compute(a.num_zeros)?;
    let rows: Vec<Value> = catalog
        .ordinates()
        .par_iter()
        .enumerate()
        .map(|(i, &t)| {
            let check = check_jost_zero(t)?;
            let coupling = coupling_at_zero(t)?;
            let coupling_ok = coupling.lambda.im == 0.0 && coupling.lambda.re < -0.25;
            Ok(json!({
                "index": i + 1,
                "t_n": t,
                "s": check.s,
                "modulus": check.modulus,
                "winding": check.winding,
                "lambda": coupling.lambda,
                "coupling_real_attractive": coupling_ok,
                "passed": check.passed && coupling_ok,
            }))
        })
        .collect::<std::result::Result<_, ScatteringError>>()?;
    let passes = rows.iter().filter(|r| r["passed"] == Value::Bool(true)).count();
    let verified = passes == rows.len();
    let table = Table {
        header: vec!["index", "t_n", "modulus", "winding", "lambda", "passed"],
        rows: rows
            .iter()
            .map(|r| {
                cells([
                    r["index"].to_string(),
                    r["t_n"].to_string(),
                    r["modulus"].to_string(),
                    r["winding"].to_string(),
                    r["lambda"][0].to_string(),
                    r["passed"].to_string(),
                ])
            })
            .collect(),
    };
    let diagnostics = if verified { Vec::new() } else { vec![format!("{} of {} zeros failed", rows.len() - passes, rows.len())] };
    let results = json!({ "passes": passes, "total": rows.len(), "zeros": rows });
    Ok(Report { envelope: envelope("smatrix correspondence", a, results, diagnostics), table, verified })
}

pub(super) fn jost_verify(a: &JostVerifyArgs) -> Result<Report> {
    let lambda = Complex64::new(a.lambda, a.lambda_im);
    let v = verify_jost_solution(lambda, a.k, a.y_min, a.y_max, a.points)?;
    let far: Vec<Value> = [1.0, 2.0, 4.0, 8.0]
        .iter()
        .map(|m| {
            let y = m * a.y_max;
            Ok(json!({ "y": y, "residual": asymptotic_residual(a.k, v.nu, y)? }))
        })
        .collect::<std::result::Result<_, crate::quantum::QuantumError>>()?;
    let passed = v.max_relative_error < a.tolerance;
    let table = Table {
        header: vec!["y", "ode_re", "ode_im", "analytic_re", "analytic_im", "relative_error"],
        rows: v
            .points
            .iter()
            .map(|p| {
                cells([
                    p.y.to_string(),
                    p.ode.re.to_string(),
                    p.ode.im.to_string(),
                    p.analytic.re.to_string(),
                    p.analytic.im.to_string(),
                    p.relative_error.to_string(),
                ])
            })
            .collect(),
    };
    let results = json!({
        "max_relative_error": v.max_relative_error,
        "tolerance": a.tolerance,
        "passed": passed,
        "verification": v,
        "asymptotic_residuals": far,
    });
    Ok(Report { envelope: envelope("quantum jost-verify", a, results, Vec::new()), table, verified: passed })
}

pub(super) fn kmoment(a: &KmomentArgs) -> Result<Report> {
    let nu = Complex64::new(a.nu, a.nu_im);
    let fit = fit_moment_coefficient(nu)?;
    let standard = k_moment_closed_form(nu, MOMENT_COEFFICIENT)?;
    let quoted = k_moment_closed_form(nu, fit.quoted_coefficient)?;
    let mut diagnostics = Vec::new();
    if fit.discrepancy {
        diagnostics.push(format!(
            "quadrature fits coefficient {} of pi nu / sin(pi nu); the quoted {} is off by a factor {}",
            fit.fitted_coefficient.re,
            fit.quoted_coefficient,
            fit.fitted_coefficient.re / fit.quoted_coefficient
        ));
    }
    let verified = (fit.fitted_coefficient - MOMENT_COEFFICIENT).norm() < 1e-6;
    let results = json!({
        "nu": nu,
        "integral": fit.integral,
        "fitted_coefficient": fit.fitted_coefficient,
        "quoted_coefficient": fit.quoted_coefficient,
        "closed_form_fitted": standard,
        "closed_form_quoted": quoted,
        "flag": if fit.discrepancy { "discrepancy" } else { "agreement" },
    });
    let table = Table {
        header: vec!["nu_re", "nu_im", "integral_re", "integral_im", "error_estimate", "fitted_coefficient", "quoted_coefficient", "flag"],
        rows: vec![cells([
            nu.re.to_string(),
            nu.im.to_string(),
            fit.integral.value.re.to_string(),
            fit.integral.value.im.to_string(),
            fit.integral.error_estimate.to_string(),
            fit.fitted_coefficient.re.to_string(),
            fit.quoted_coefficient.to_string(),
            (if fit.discrepancy { "discrepancy" } else { "agreement" }).to_string(),
        ])],
    };
    Ok(Report { envelope: envelope("quantum kmoment", a, results, diagnostics), table, verified })
}

pub(super) fn khuri(a: &KhuriArgs) -> Result<Report> {
    let check = khuri_reality_check(Complex64::new(a.lambda, a.lambda_im), a.tau)?;
    let mut diagnostics = Vec::new();
    if !check.converged {
        diagnostics.push(format!(
            "normalization integral stopped at its budget (estimate {:e} +/- {:e}); the residual only needs it finite",
            check.normalization, check.normalization_error
        ));
    }
    let table = Table {
        header: vec!["lambda_re", "lambda_im", "tau", "normalization", "residual", "converged"],
        rows: vec![cells([
            a.lambda.to_string(),
            a.lambda_im.to_string(),
            a.tau.to_string(),
            check.normalization.to_string(),
            check.residual.to_string(),
            check.converged.to_string(),
        ])],
    };
    let verified = check.residual.is_finite();
    Ok(Report { envelope: envelope("quantum khuri", a, to_value(&check), diagnostics), table, verified })
}

pub(super) fn hadamard(a: &HadamardArgs) -> Result<Report> {
    let z = Complex64::new(a.at, a.at_im);
    let mut n_list = a.n_list.clone();
    if n_list.is_empty() {
        n_list = [10, 50, a.num_zeros].into_iter().filter(|&n| n <= a.num_zeros).collect();
        n_list.dedup();
    }
    let params = fit_xi_constants()?;
    let catalog = ZeroCatalog::compute(a.num_zeros)?;
    let profile = convergence_profile(&params, &catalog, z, &n_list)?;
    let decreasing = profile.windows(2).all(|w| w[1].residual < w[0].residual);
    let top = n_list.iter().copied().max().unwrap_or(0);
    let estimate = if top > 0 { Some(truncation_estimate(&catalog, z, top)?) } else { None };
    let mut diagnostics = Vec::new();
    if !decreasing {
        diagnostics.push("residual is not strictly decreasing in N".to_string());
    }
    let results = json!({
        "params": params,
        "exp_a": params.a.exp(),
        "z": z,
        "profile": profile,
        "strictly_decreasing": decreasing,
        "truncation_estimate": estimate,
    });
    let table = Table {
        header: vec!["n", "value_re", "value_im", "residual"],
        rows: profile
            .iter()
            .map(|p| cells([p.n.to_string(), p.value.re.to_string(), p.value.im.to_string(), p.residual.to_string()]))
            .collect(),
    };
    Ok(Report { envelope: envelope("hadamard", a, results, diagnostics), table, verified: decreasing })
}

pub(super) fn roundtrip(a: &RoundtripArgs) -> Result<Report> {
    let spec = if a.bound_states.is_empty() { BlaschkeSpec::none() } else { BlaschkeSpec::new(a.bound_states.clone())? };
    let samples = match a.model {
        Model::Unit => RealLineSamples::from_fn(a.half_width, a.nodes, |k| {
            let pm = crate::dispersion::blaschke_product(&spec, k, Branch::Minus);
            pm * pm
        })?,
        Model::Rational => RationalModel { a: a.a, b: a.b }.samples(&spec, a.half_width, a.nodes)?,
    };
    let residual = roundtrip_residual(&samples, &spec)?;
    let tolerance = a.tolerance.unwrap_or(match a.model {
        Model::Unit => 1e-12,
        Model::Rational => 1e-3,
    });
    let passed = residual < tolerance;
    let results = json!({ "residual": residual, "tolerance": tolerance, "passed": passed });
    let table = Table {
        header: vec!["model", "half_width", "nodes", "bound_states", "residual"],
        rows: vec![cells([
            to_value(&a.model).as_str().unwrap_or_default().to_string(),
            a.half_width.to_string(),
            a.nodes.to_string(),
            spec.count().to_string(),
            residual.to_string(),
        ])],
    };
    Ok(Report { envelope: envelope("dispersion roundtrip", a, results, Vec::new()), table, verified: passed })
}
