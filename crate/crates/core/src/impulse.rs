//! Impulse-process baseline: simulation, spectral stability and an aggregate
//! per-vertex score.
//!
//! Impulses travel along edge direction:
//! `v_j(t+1) = v_j(t) + sum_i w_ij p_i(t)`, `p(t+1) = v(t+1) - v(t)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::eigen;
use crate::error::{Error, Result};
use crate::influence::rank_descending;
use crate::map::CognitiveMap;

/// Eigenvalues with modulus at or below this count as zero.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-9;
/// Relative pairwise distance under which two eigenvalues are "equal".
pub const DISTINCT_EIGENVALUE_TOL: f64 = 1e-6;
/// Slack on the unit-modulus bound.
pub const UNIT_BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationOptions {
    pub max_steps: usize,
    /// Converged once `max_j |p_j(t)| < eps`.
    pub eps: f64,
}

impl SimulationOptions {
    pub const DEFAULT_EPS: f64 = 1e-6;

    /// `eps = 1e-6`, `max_steps = 1000 n` capped at `10^5`.
    pub fn for_map(map: &CognitiveMap) -> Self {
        Self {
            max_steps: (1000 * map.n()).clamp(1, 100_000),
            eps: Self::DEFAULT_EPS,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_steps == 0 {
            return Err(Error::InvalidArgument(
                "max_steps must be at least 1".into(),
            ));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "eps must be positive and finite, got {}",
                self.eps
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImpulseTrace {
    /// `values[t]` is `v(t)` for `t = 0 ..= T`.
    pub values: Vec<Vec<f64>>,
    /// `impulses[t]` is `p(t)`; `impulses[0]` is the initial impulse.
    pub impulses: Vec<Vec<f64>>,
    pub converged: bool,
    pub steps_to_converge: Option<usize>,
}

impl ImpulseTrace {
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn final_values(&self) -> &[f64] {
        &self.values[self.values.len() - 1]
    }

    /// `v(T) - v(0)`.
    pub fn cumulative_change(&self) -> Vec<f64> {
        self.final_values()
            .iter()
            .zip(&self.values[0])
            .map(|(a, b)| a - b)
            .collect()
    }

    pub fn max_abs_impulse(&self) -> f64 {
        self.impulses
            .iter()
            .flatten()
            .fold(0.0, |m: f64, p| m.max(p.abs()))
    }

    /// CSV with columns `t, v_1..v_n, p_1..p_n`.
    pub fn to_csv(&self) -> String {
        let n = self.values[0].len();
        let mut out = String::from("t");
        for j in 1..=n {
            out.push_str(&format!(",v_{j}"));
        }
        for j in 1..=n {
            out.push_str(&format!(",p_{j}"));
        }
        out.push('\n');
        for (t, (v, p)) in self.values.iter().zip(&self.impulses).enumerate() {
            out.push_str(&t.to_string());
            for x in v.iter().chain(p) {
                out.push(',');
                out.push_str(&crate::map::format_weight(*x));
            }
            out.push('\n');
        }
        out
    }
}

/// Runs the impulse process from `p0`, `v0` until the impulses fall below
/// `eps` or `max_steps` steps have run.
pub fn simulate(
    map: &CognitiveMap,
    p0: &[f64],
    v0: &[f64],
    opts: SimulationOptions,
) -> Result<ImpulseTrace> {
    let n = map.n();
    if p0.len() != n || v0.len() != n {
        return Err(Error::InvalidArgument(format!(
            "initial vectors must have length {n} (got {} and {})",
            p0.len(),
            v0.len()
        )));
    }
    if p0.iter().chain(v0).any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(
            "initial vectors must be finite".into(),
        ));
    }
    opts.validate()?;

    let mut values = vec![v0.to_vec()];
    let mut impulses = vec![p0.to_vec()];
    let mut steps_to_converge = None;
    for step in 1..=opts.max_steps {
        let v = &values[step - 1];
        let p = &impulses[step - 1];
        let mut next = v.clone();
        for (i, &pi) in p.iter().enumerate() {
            if pi == 0.0 {
                continue;
            }
            for (j, &w) in map.row(i).iter().enumerate() {
                next[j] += w * pi;
            }
        }
        if next.iter().any(|x| !x.is_finite()) {
            return Err(Error::Divergence { step });
        }
        let delta: Vec<f64> = next.iter().zip(v).map(|(a, b)| a - b).collect();
        let settled = delta.iter().all(|d| d.abs() < opts.eps);
        values.push(next);
        impulses.push(delta);
        if settled {
            steps_to_converge = Some(step);
            break;
        }
    }
    Ok(ImpulseTrace {
        values,
        impulses,
        converged: steps_to_converge.is_some(),
        steps_to_converge,
    })
}

/// Unit impulse at `source`, everything else zero.
pub fn unit_impulse(n: usize, source: usize) -> Vec<f64> {
    let mut p = vec![0.0; n];
    p[source] = 1.0;
    p
}

/// Eigenvalues of `W`, sorted by descending modulus.
pub fn characteristic_constants(map: &CognitiveMap) -> Result<Vec<Complex64>> {
    eigen::eigenvalues(map.n(), map.row_major())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityVerdict {
    /// All eigenvalues as `[re, im]`, descending modulus.
    #[serde(serialize_with = "serialize_complex")]
    pub eigenvalues: Vec<Complex64>,
    /// Moduli of the nonzero eigenvalues, descending.
    pub magnitudes: Vec<f64>,
    pub all_distinct: bool,
    pub all_within_unit: bool,
    pub stable: bool,
}

fn serialize_complex<S: serde::Serializer>(values: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|z| [z.re, z.im]))
}

impl StabilityVerdict {
    pub fn spectral_radius(&self) -> f64 {
        self.magnitudes.first().copied().unwrap_or(0.0)
    }
}

/// Impulse stable iff the nonzero eigenvalues are pairwise distinct and all
/// lie in the closed unit disc.
pub fn stability_check(map: &CognitiveMap) -> Result<StabilityVerdict> {
    let eigenvalues = characteristic_constants(map)?;
    let nonzero: Vec<Complex64> = eigenvalues
        .iter()
        .copied()
        .filter(|z| z.norm() > ZERO_EIGENVALUE_TOL)
        .collect();
    let magnitudes: Vec<f64> = nonzero.iter().map(|z| z.norm()).collect();
    let radius = magnitudes.first().copied().unwrap_or(0.0);
    let separation = DISTINCT_EIGENVALUE_TOL * radius.max(1.0);
    let all_distinct = nonzero.iter().enumerate().all(|(a, za)| {
        nonzero[a + 1..]
            .iter()
            .all(|zb| (za - zb).norm() > separation)
    });
    let all_within_unit = magnitudes.iter().all(|m| *m <= 1.0 + UNIT_BOUND_TOL);
    Ok(StabilityVerdict {
        eigenvalues,
        magnitudes,
        all_distinct,
        all_within_unit,
        stable: all_distinct && all_within_unit,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImpulseReport {
    pub scores: Vec<f64>,
    /// 0-based, highest first, ties by ascending index.
    pub ranking: Vec<usize>,
    /// Steps each unit-impulse run needed to settle.
    pub steps: Vec<usize>,
}

/// Aggregate impulse influence of each vertex: a unit impulse at `i` from
/// `v0 = 0`, scored as `sum_{j != i} |v_j(inf) - v_j(0)|`.
///
/// Refuses unstable maps with [`Error::Unstable`].
pub fn impulse_general_influence(
    map: &CognitiveMap,
    opts: SimulationOptions,
) -> Result<ImpulseReport> {
    let verdict = stability_check(map)?;
    if !verdict.stable {
        return Err(Error::Unstable(Box::new(verdict)));
    }
    let n = map.n();
    let zeros = vec![0.0; n];
    let mut scores = Vec::with_capacity(n);
    let mut steps = Vec::with_capacity(n);
    for source in 0..n {
        let trace = simulate(map, &unit_impulse(n, source), &zeros, opts)?;
        if !trace.converged {
            return Err(Error::NotConverged {
                steps: opts.max_steps,
            });
        }
        let change = trace.cumulative_change();
        let score = change
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != source)
            .map(|(_, d)| d.abs())
            .sum();
        scores.push(score);
        steps.push(trace.steps());
    }
    let ranking = rank_descending(&scores);
    Ok(ImpulseReport {
        scores,
        ranking,
        steps,
    })
}
