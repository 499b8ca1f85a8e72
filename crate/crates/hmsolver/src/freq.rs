use num_complex::Complex;
use serde::Serialize;

use crate::error::SolverError;

const NOISE_FLOOR: f64 = 1e-12;

/// Least-squares phase-slope measurement of a complex mode trace.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FreqMeasurement {
    /// Magnitude of the fitted phase slope.
    pub omega: f64,
    /// Signed slope (positive = counterclockwise rotation).
    pub slope: f64,
    /// Root-mean-square phase residual of the fit, in radians.
    pub phase_rms: f64,
    /// Oscillation periods spanned by the trace.
    pub periods: f64,
}

/// Unwrap the phase of a complex mode trace and fit a straight line
/// through it. Requires a mean amplitude above the noise floor and at
/// least three full periods.
pub fn measure_frequency(trace: &[(f64, Complex<f64>)]) -> Result<FreqMeasurement, SolverError> {
    let amplitude = trace.iter().map(|(_, z)| z.norm()).fold(0.0f64, f64::max);
    if amplitude < NOISE_FLOOR {
        return Err(SolverError::AmplitudeBelowNoiseFloor { amplitude, floor: NOISE_FLOOR });
    }
    if trace.len() < 4 {
        return Err(SolverError::TooFewPeriods { periods: 0.0 });
    }

    let mut phases = Vec::with_capacity(trace.len());
    let mut times = Vec::with_capacity(trace.len());
    let mut prev = trace[0].1.arg();
    let mut offset = 0.0f64;
    for (t, z) in trace {
        let raw = z.arg();
        let mut delta = raw - prev;
        while delta > std::f64::consts::PI {
            delta -= 2.0 * std::f64::consts::PI;
        }
        while delta < -std::f64::consts::PI {
            delta += 2.0 * std::f64::consts::PI;
        }
        offset += delta;
        prev = raw;
        phases.push(offset);
        times.push(*t);
    }

    let span = phases.last().unwrap() - phases.first().unwrap();
    let periods = span.abs() / (2.0 * std::f64::consts::PI);
    if periods < 3.0 {
        return Err(SolverError::TooFewPeriods { periods });
    }

    // Ordinary least squares phi = a + slope * t.
    let n = times.len() as f64;
    let mean_t = times.iter().sum::<f64>() / n;
    let mean_p = phases.iter().sum::<f64>() / n;
    let mut stt = 0.0;
    let mut stp = 0.0;
    for (t, p) in times.iter().zip(phases.iter()) {
        stt += (t - mean_t) * (t - mean_t);
        stp += (t - mean_t) * (p - mean_p);
    }
    let slope = stp / stt;
    let intercept = mean_p - slope * mean_t;
    let mut ss_res = 0.0;
    for (t, p) in times.iter().zip(phases.iter()) {
        let fit = intercept + slope * t;
        ss_res += (p - fit) * (p - fit);
    }
    let phase_rms = (ss_res / n).sqrt();

    Ok(FreqMeasurement { omega: slope.abs(), slope, phase_rms, periods })
}
