//! Accumulated mutual influence.
//!
//! For each simple path `q_0 .. q_{m-1}` from `i` to `j` two running values
//! are folded along the edges:
//!
//! ```text
//! z(t+1) = (1 + sign(z(t)) * alpha(|z(t) / mu|)) * w(q_t, q_{t+1})   t = 0 .. m-2, z(0) = 0
//! z~(r+1) = same recurrence                                          r = 1 .. m-2, z~(1) = 0
//! ```
//!
//! The path's partial influence is `z(m-1) - z~(m-1)`: the accumulation
//! with the source minus the accumulation without it. `z_ij` sums the
//! partial influences over all simple paths and is zero for unreachable
//! pairs.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::CognitiveMap;
use crate::paths::{enumerate_with_budget, PathBudget, PathSet, SimplePath};

/// Damping coefficient `alpha(x) = 1 - e^(-2x)`, the exponential CDF with
/// rate 2. Lies in `[0, 1)` for every `x >= 0`.
pub fn alpha(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "damping argument must be nonnegative, got {x}"
        )));
    }
    Ok(damping(x))
}

#[inline]
fn damping(x: f64) -> f64 {
    -(-2.0 * x).exp_m1()
}

/// Sign with `sign(0) = 0`, so the first step of either recurrence copies
/// the edge weight.
#[inline]
fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn accumulate(weights: impl Iterator<Item = f64>, mu: f64) -> f64 {
    weights.fold(0.0, |z, w| (1.0 + sign(z) * damping((z / mu).abs())) * w)
}

fn check_mu(mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "normalisation constant must be positive, got {mu}"
        )))
    }
}

/// Final value of the full recurrence along `path`.
pub fn accumulate_full(path: &SimplePath, map: &CognitiveMap, mu: f64) -> Result<f64> {
    check_mu(mu)?;
    Ok(accumulate(path.edge_weights(map), mu))
}

/// Final value of the recurrence that starts after the source vertex.
/// Zero for a single-edge path.
pub fn accumulate_truncated(path: &SimplePath, map: &CognitiveMap, mu: f64) -> Result<f64> {
    check_mu(mu)?;
    Ok(accumulate(path.edge_weights(map).skip(1), mu))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathInfluence {
    pub path: SimplePath,
    pub full: f64,
    pub truncated: f64,
    pub partial: f64,
}

pub fn path_influence(path: &SimplePath, map: &CognitiveMap, mu: f64) -> Result<PathInfluence> {
    let full = accumulate_full(path, map, mu)?;
    let truncated = accumulate_truncated(path, map, mu)?;
    Ok(PathInfluence {
        path: path.clone(),
        full,
        truncated,
        partial: full - truncated,
    })
}

/// Sum of partial influences over `paths`, added in path order.
pub fn pair_influence(map: &CognitiveMap, paths: &PathSet, mu: f64) -> Result<f64> {
    if paths.is_empty() {
        return Ok(0.0);
    }
    check_mu(mu)?;
    Ok(paths
        .paths
        .iter()
        .map(|p| accumulate(p.edge_weights(map), mu) - accumulate(p.edge_weights(map).skip(1), mu))
        .sum())
}

/// Per-path breakdown of `z_ij`, in canonical path order.
pub fn pair_breakdown(
    map: &CognitiveMap,
    source: usize,
    target: usize,
    budget: PathBudget,
) -> Result<Vec<PathInfluence>> {
    let paths = complete_paths(map, source, target, budget)?;
    let mu = map.max_abs_weight().value();
    paths
        .paths
        .iter()
        .map(|p| path_influence(p, map, mu))
        .collect()
}

fn complete_paths(
    map: &CognitiveMap,
    source: usize,
    target: usize,
    budget: PathBudget,
) -> Result<PathSet> {
    let paths = enumerate_with_budget(map, source, target, budget)?;
    if paths.depth_limited {
        return Err(Error::PathLength {
            from: source,
            to: target,
            max_len: budget.max_len.unwrap_or(map.n()),
        });
    }
    Ok(paths)
}

/// Square matrix of accumulated pairwise influences, zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceMatrix {
    n: usize,
    values: Vec<f64>,
}

impl InfluenceMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            values: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquare {
                    row: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            values.extend(row);
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.n.max(1))
    }

    pub fn row_major(&self) -> &[f64] {
        &self.values
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }
}

impl Serialize for InfluenceMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.rows())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InfluenceOptions {
    pub budget: PathBudget,
    /// Worker threads for the pair loop; 0 and 1 both run sequentially.
    pub threads: usize,
}

impl Default for InfluenceOptions {
    fn default() -> Self {
        Self {
            budget: PathBudget::default(),
            threads: 1,
        }
    }
}

pub fn influence_matrix(map: &CognitiveMap) -> Result<InfluenceMatrix> {
    influence_matrix_with(map, &InfluenceOptions::default())
}

/// Computes `Z` for every ordered pair, skipping pairs the reachability
/// closure rules out.
///
/// Pairs are independent. With `threads > 1` they are spread over a rayon
/// pool, each pair still summing its paths in canonical order, so the result
/// is bitwise identical to the sequential run. On error the first failing
/// pair in row-major order is reported.
pub fn influence_matrix_with(
    map: &CognitiveMap,
    opts: &InfluenceOptions,
) -> Result<InfluenceMatrix> {
    opts.budget.validate()?;
    let n = map.n();
    let mu = map.max_abs_weight().value();
    if mu == 0.0 {
        return Ok(InfluenceMatrix::zeros(n));
    }
    let reach = map.reachability();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && reach.is_reachable(i, j))
        .collect();

    let compute = |&(i, j): &(usize, usize)| -> Result<f64> {
        let paths = complete_paths(map, i, j, opts.budget)?;
        pair_influence(map, &paths, mu)
    };

    let results: Vec<Result<f64>> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start thread pool: {e}")))?;
        pool.install(|| pairs.par_iter().map(compute).collect())
    } else {
        pairs.iter().map(compute).collect()
    };

    let mut z = InfluenceMatrix::zeros(n);
    for ((i, j), value) in pairs.into_iter().zip(results) {
        z.values[i * n + j] = value?;
    }
    Ok(z)
}

/// Per-vertex scores with a descending ranking.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfluenceReport {
    pub scores: Vec<f64>,
    /// 0-based vertex indices, highest score first, ties by ascending index.
    pub ranking: Vec<usize>,
}

/// `Inf_am^i = sum_j |z_ij|`.
pub fn general_influence(z: &InfluenceMatrix) -> InfluenceReport {
    let scores: Vec<f64> = z
        .rows()
        .take(z.n())
        .map(|r| r.iter().map(|v| v.abs()).sum())
        .collect();
    let ranking = rank_descending(&scores);
    InfluenceReport { scores, ranking }
}

/// Indices sorted by descending score; equal scores keep ascending order.
pub fn rank_descending(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Negative,
    Positive,
}

/// Sign of the partial influence of a two-edge chain `i -w1-> k -w2-> j`.
///
/// The partial influence is `alpha(|w1| / mu) * sign(w1) * w2`, so the chain
/// is positive exactly when both edges share a sign. A positive-then-negative
/// chain comes out negative.
pub fn two_edge_sign(w1: f64, w2: f64) -> Result<Sign> {
    if w1 == 0.0 || w2 == 0.0 || !w1.is_finite() || !w2.is_finite() {
        return Err(Error::InvalidArgument(
            "two-edge sign needs nonzero finite weights".into(),
        ));
    }
    Ok(if sign(w1) * w2 > 0.0 {
        Sign::Positive
    } else {
        Sign::Negative
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m07() -> CognitiveMap {
        CognitiveMap::new(vec![
            vec![0.0, 1.0, -1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, -1.0],
            vec![1.0, 0.0, 0.0, 0.0],
        ])
        .unwrap()
    }

    fn m04() -> CognitiveMap {
        CognitiveMap::new(vec![
            vec![0.0, 0.391, -0.121, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, -1.0],
            vec![1.0, 0.0, 0.0, 0.0],
        ])
        .unwrap()
    }

    fn path(v: &[usize], map: &CognitiveMap) -> SimplePath {
        SimplePath::new(v.iter().map(|x| x - 1).collect(), map).unwrap()
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(0.0).unwrap(), 0.0);
        assert!((alpha(1.0).unwrap() - (1.0 - (-2.0f64).exp())).abs() < 1e-15);
        assert!((alpha(1.0).unwrap() - 0.864_664_716_763_387_3).abs() < 1e-15);
        let a10 = alpha(10.0).unwrap();
        assert!(a10 < 1.0 && a10 > 0.999_999_997);
        assert!(alpha(-1e-9).is_err());
        assert!(alpha(f64::NAN).is_err());
    }

    #[test]
    fn recurrences_on_matrix_7() {
        let map = m07();
        let p = path(&[1, 2, 4], &map);
        let one_plus_alpha1 = 1.0 + (1.0 - (-2.0f64).exp());
        assert!((accumulate_full(&p, &map, 1.0).unwrap() - one_plus_alpha1).abs() < 1e-15);
        assert_eq!(accumulate_truncated(&p, &map, 1.0).unwrap(), 1.0);

        let p = path(&[2, 4, 1, 3], &map);
        let full = accumulate_full(&p, &map, 1.0).unwrap();
        let expected = -(1.0 + (1.0 - (-2.0 * one_plus_alpha1).exp()));
        assert!((full - expected).abs() < 1e-15);
        assert!((full + 1.976_0).abs() < 1e-4);
        let trunc = accumulate_truncated(&p, &map, 1.0).unwrap();
        assert!((trunc + one_plus_alpha1).abs() < 1e-15);
        assert!((full - trunc + 0.111).abs() < 5e-4);

        let single = path(&[1, 3], &map);
        assert_eq!(accumulate_full(&single, &map, 1.0).unwrap(), -1.0);
        assert_eq!(accumulate_truncated(&single, &map, 1.0).unwrap(), 0.0);
        assert!(accumulate_full(&single, &map, 0.0).is_err());
        assert!(accumulate_truncated(&single, &map, -1.0).is_err());
    }

    #[test]
    fn pair_influence_examples() {
        let map = m07();
        let paths = crate::paths::enumerate_simple_paths(&map, 0, 3).unwrap();
        let z = pair_influence(&map, &paths, 1.0).unwrap();
        assert!((z - 1.729).abs() < 5e-4, "{z}");

        let map = m04();
        let paths = crate::paths::enumerate_simple_paths(&map, 0, 3).unwrap();
        let parts = pair_breakdown(&map, 0, 3, PathBudget::default()).unwrap();
        assert!((parts[0].partial - 0.5423).abs() < 5e-4);
        assert!((parts[1].partial - 0.2147).abs() < 5e-4);
        let z = pair_influence(&map, &paths, 1.0).unwrap();
        assert!((z - 0.757).abs() < 5e-4);
    }

    #[test]
    fn zero_map_gives_zero_matrix() {
        let map = CognitiveMap::new(vec![vec![0.0; 3]; 3]).unwrap();
        let z = influence_matrix(&map).unwrap();
        assert!(z.row_major().iter().all(|v| *v == 0.0));
        let report = general_influence(&z);
        assert_eq!(report.scores, vec![0.0; 3]);
        assert_eq!(report.ranking, vec![0, 1, 2]);
    }

    #[test]
    fn length_limit_is_an_error_for_z() {
        let opts = InfluenceOptions {
            budget: PathBudget {
                max_paths: 100,
                max_len: Some(1),
            },
            threads: 1,
        };
        assert!(matches!(
            influence_matrix_with(&m07(), &opts),
            Err(Error::PathLength { .. })
        ));
    }

    #[test]
    fn two_edge_signs() {
        assert_eq!(two_edge_sign(-1.0, -1.0).unwrap(), Sign::Positive);
        assert_eq!(two_edge_sign(0.5, 2.0).unwrap(), Sign::Positive);
        assert_eq!(two_edge_sign(-0.3, 0.2).unwrap(), Sign::Negative);
        assert_eq!(two_edge_sign(0.3, -0.2).unwrap(), Sign::Negative);
        assert!(two_edge_sign(0.0, 1.0).is_err());
        assert!(two_edge_sign(1.0, 0.0).is_err());
    }

    #[test]
    fn ranking_ties_by_index() {
        assert_eq!(rank_descending(&[1.0, 3.0, 3.0, 0.5]), vec![1, 2, 0, 3]);
    }
}
