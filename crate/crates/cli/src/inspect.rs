//! Single-point and selection-rule reports.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use frobenius_core::frame::FrameResiduals;
use frobenius_core::gwcomb::{run_selection, GwError, OrbifoldP1, SelectionBounds, SelectionReport};
use frobenius_core::rotation::{rotation_data_with, RotationError};
use frobenius_core::{
    g2_assemble, g2_from_rotation, FamilyResiduals, FrameOptions, FrobeniusModel, G2Coefficients, G2Error, Gauge, JetPoint, Point, QDoubleSum, Square,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectionRun {
    pub orbifold: String,
    pub bounds: SelectionBounds,
    pub report: SelectionReport,
    pub passed: bool,
}

pub fn selection_report(orders: [u32; 3], bounds: &SelectionBounds) -> Result<SelectionRun, GwError> {
    let x = OrbifoldP1::new(orders)?;
    let report = run_selection(&x, bounds)?;
    Ok(SelectionRun {
        orbifold: x.to_string(),
        bounds: *bounds,
        passed: report.passed(),
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub model: String,
    pub point: Vec<Complex64>,
    pub u: Vec<Complex64>,
    pub g: Vec<Complex64>,
    pub h: Vec<Complex64>,
    /// Column `i` is the idempotent `𝓔_i` in flat coordinates.
    pub idempotents: Square<Complex64>,
    pub gauge: Gauge,
    pub residuals: FrameResiduals,
    pub r: Square<Complex64>,
    pub gamma: Square<Complex64>,
    pub v: Square<Complex64>,
    pub theta: Square<Complex64>,
    pub omega: Square<Complex64>,
    pub big_h: Vec<Complex64>,
}

pub fn frame_report(model: &FrobeniusModel, point: &[Complex64], delta: f64) -> Result<FrameReport, RotationError> {
    let p = Point::new(point.to_vec());
    let rd = rotation_data_with(model, &p, &FrameOptions { delta })?;
    let residuals = rd.frame.residuals(model, &p);
    let f = rd.frame;
    Ok(FrameReport {
        model: model.name().to_string(),
        point: point.to_vec(),
        u: f.u,
        g: f.g,
        h: f.h,
        idempotents: f.idempotents,
        gauge: f.gauge,
        residuals,
        r: rd.r,
        gamma: rd.gamma,
        v: rd.v,
        theta: rd.theta,
        omega: rd.omega,
        big_h: rd.big_h,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub model: String,
    pub point: Vec<Complex64>,
    pub q_double_sum: QDoubleSum,
    pub families: FamilyResiduals,
    pub coefficients: G2Coefficients,
    pub jet: Option<JetPoint>,
    /// `G⁽²⁾` at the jet, with the relative size of the result.
    pub value: Option<Complex64>,
    pub value_relative: Option<f64>,
}

/// Coefficients at a point; assembled into `G⁽²⁾` when `ux` is given (`uxx` defaults to zero).
pub fn eval_g2(
    model: &FrobeniusModel,
    point: &[Complex64],
    q_double_sum: QDoubleSum,
    ux: Option<Vec<Complex64>>,
    uxx: Option<Vec<Complex64>>,
    delta: f64,
) -> Result<EvalReport, G2Error> {
    let p = Point::new(point.to_vec());
    let rd = rotation_data_with(model, &p, &FrameOptions { delta })?;
    let coefficients = g2_from_rotation(&rd, q_double_sum);
    let jet = ux.map(|ux| JetPoint {
        uxx: uxx.unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); ux.len()]),
        ux,
    });
    let assembled = jet.as_ref().map(|j| g2_assemble(&coefficients, j)).transpose()?;
    Ok(EvalReport {
        model: model.name().to_string(),
        point: point.to_vec(),
        q_double_sum,
        families: coefficients.families(),
        coefficients,
        jet,
        value: assembled.map(|s| s.value),
        value_relative: assembled.map(|s| s.relative()),
    })
}
