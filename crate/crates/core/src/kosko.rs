//! Kosko's fuzzy min-max influence: the weakest edge bounds a path, the
//! strongest path bounds the pair.

use serde::Serialize;

use crate::error::Result;
use crate::map::CognitiveMap;
use crate::paths::{enumerate_with_budget, PathBudget, SimplePath};

/// How edge weights enter the min/max.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// Raw signed weights.
    #[default]
    Signed,
    /// `|w|`, for signed maps where only the strength matters.
    Magnitude,
}

impl WeightMode {
    fn apply(self, w: f64) -> f64 {
        match self {
            WeightMode::Signed => w,
            WeightMode::Magnitude => w.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KoskoInfluence {
    pub source: usize,
    pub target: usize,
    pub mode: WeightMode,
    /// `(path, I_p)` in canonical path order.
    pub per_path: Vec<(SimplePath, f64)>,
    /// `T = max I_p`; `None` when no path exists.
    pub total: Option<f64>,
}

/// `I_p = min` over the path's edge weights.
pub fn path_indirect_influence(path: &SimplePath, map: &CognitiveMap, mode: WeightMode) -> f64 {
    path.edge_weights(map)
        .map(|w| mode.apply(w))
        .fold(f64::INFINITY, f64::min)
}

/// `T(i, j) = max` of `I_p` over every simple path `i -> j`.
pub fn total_influence(
    map: &CognitiveMap,
    source: usize,
    target: usize,
    mode: WeightMode,
    budget: PathBudget,
) -> Result<KoskoInfluence> {
    let paths = enumerate_with_budget(map, source, target, budget)?;
    let per_path: Vec<(SimplePath, f64)> = paths
        .paths
        .into_iter()
        .map(|p| {
            let ip = path_indirect_influence(&p, map, mode);
            (p, ip)
        })
        .collect();
    let total = per_path.iter().map(|(_, ip)| *ip).reduce(f64::max);
    Ok(KoskoInfluence {
        source,
        target,
        mode,
        per_path,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m04() -> CognitiveMap {
        CognitiveMap::new(vec![
            vec![0.0, 0.391, -0.121, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, -1.0],
            vec![1.0, 0.0, 0.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn matrix_4_pair_1_4() {
        let map = m04();
        let via2 = SimplePath::new(vec![0, 1, 3], &map).unwrap();
        let via3 = SimplePath::new(vec![0, 2, 3], &map).unwrap();
        assert_eq!(
            path_indirect_influence(&via2, &map, WeightMode::Signed),
            0.391
        );
        assert_eq!(
            path_indirect_influence(&via3, &map, WeightMode::Signed),
            -1.0
        );
        let single = SimplePath::new(vec![0, 2], &map).unwrap();
        assert_eq!(
            path_indirect_influence(&single, &map, WeightMode::Signed),
            -0.121
        );

        let k = total_influence(&map, 0, 3, WeightMode::Signed, PathBudget::default()).unwrap();
        assert_eq!(k.per_path.len(), 2);
        assert_eq!(k.total, Some(0.391));

        let k = total_influence(&map, 0, 3, WeightMode::Magnitude, PathBudget::default()).unwrap();
        assert_eq!(k.per_path[1].1, 0.121);
        assert_eq!(k.total, Some(0.391));
    }

    #[test]
    fn unreachable_pair_has_no_total() {
        let map = CognitiveMap::new(vec![
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 2.0, 8.0],
            vec![-3.0, 9.0, 0.0, 5.0],
            vec![2.0, 0.0, -1.0, 0.0],
        ])
        .unwrap();
        let k = total_influence(&map, 0, 1, WeightMode::Signed, PathBudget::default()).unwrap();
        assert!(k.per_path.is_empty());
        assert_eq!(k.total, None);
    }

    #[test]
    fn single_path_pair_in_matrix_7() {
        let map = CognitiveMap::new(vec![
            vec![0.0, 1.0, -1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, -1.0],
            vec![1.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        let k = total_influence(&map, 1, 0, WeightMode::Signed, PathBudget::default()).unwrap();
        assert_eq!(k.per_path.len(), 1);
        assert_eq!(k.per_path[0].0.vertices(), &[1, 3, 0]);
        assert_eq!(k.total, Some(1.0));
    }
}
