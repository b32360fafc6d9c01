//! Enumeration of simple directed paths between an ordered vertex pair.
//!
//! Depth-first search forward from the source with a visited set. Successors
//! are visited in ascending index order, which emits paths in lexicographic
//! order of their vertex sequences. No path passes through the target.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::CognitiveMap;

/// Repetition-free vertex sequence `q_0 .. q_{m-1}` with `m >= 2`, each
/// consecutive pair joined by a nonzero edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SimplePath(Vec<usize>);

impl SimplePath {
    /// Checks the path invariants against `map`.
    pub fn new(vertices: Vec<usize>, map: &CognitiveMap) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidArgument(
                "a path needs at least two vertices".into(),
            ));
        }
        let mut seen = vec![false; map.n()];
        for &v in &vertices {
            map.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument(format!(
                    "vertex {} repeats in path",
                    v + 1
                )));
            }
        }
        for pair in vertices.windows(2) {
            if map.weight(pair[0], pair[1]) == 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "no edge {} -> {}",
                    pair[0] + 1,
                    pair[1] + 1
                )));
            }
        }
        Ok(Self(vertices))
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.len() >= 2);
        Self(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn source(&self) -> usize {
        self.0[0]
    }

    pub fn target(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn edge_count(&self) -> usize {
        self.0.len() - 1
    }

    /// Consecutive `(from, to)` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|p| (p[0], p[1]))
    }

    pub fn edge_weights<'a>(&'a self, map: &'a CognitiveMap) -> impl Iterator<Item = f64> + 'a {
        self.edges().map(|(a, b)| map.weight(a, b))
    }

    /// True when the path is simple and every step is an edge of `map`.
    pub fn is_valid_in(&self, map: &CognitiveMap) -> bool {
        SimplePath::new(self.0.clone(), map).is_ok()
    }
}

/// All simple paths for one ordered pair, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSet {
    pub source: usize,
    pub target: usize,
    pub paths: Vec<SimplePath>,
    /// Set when `max_len` cut off at least one unexplored branch; the set may
    /// then be missing longer paths.
    pub depth_limited: bool,
}

impl PathSet {
    pub fn count(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Guards for the exponential blow-up of path enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathBudget {
    /// Enumeration aborts once more than this many paths are found.
    pub max_paths: usize,
    /// Longest path kept, in edges. `None` means `n`, which never binds.
    pub max_len: Option<usize>,
}

impl PathBudget {
    pub const DEFAULT_MAX_PATHS: usize = 1_000_000;

    pub fn validate(&self) -> Result<()> {
        if self.max_paths == 0 {
            return Err(Error::InvalidArgument("max_paths must be positive".into()));
        }
        if self.max_len == Some(0) {
            return Err(Error::InvalidArgument("max_len must be positive".into()));
        }
        Ok(())
    }
}

impl Default for PathBudget {
    fn default() -> Self {
        Self {
            max_paths: Self::DEFAULT_MAX_PATHS,
            max_len: None,
        }
    }
}

/// Every simple path `source -> target` under the default budget.
pub fn enumerate_simple_paths(map: &CognitiveMap, source: usize, target: usize) -> Result<PathSet> {
    enumerate_with_budget(map, source, target, PathBudget::default())
}

/// As [`enumerate_simple_paths`], failing with [`Error::PathBudget`] once the
/// path count exceeds `budget.max_paths`.
pub fn enumerate_with_budget(
    map: &CognitiveMap,
    source: usize,
    target: usize,
    budget: PathBudget,
) -> Result<PathSet> {
    map.check_vertex(source)?;
    map.check_vertex(target)?;
    if source == target {
        return Err(Error::SameVertex(source));
    }
    budget.validate()?;

    let mut search = Search {
        map,
        target,
        max_paths: budget.max_paths,
        max_len: budget.max_len.unwrap_or(map.n()),
        visited: vec![false; map.n()],
        stack: vec![source],
        paths: Vec::new(),
        depth_limited: false,
    };
    search.visited[source] = true;
    if !search.extend(source) {
        return Err(Error::PathBudget {
            from: source,
            to: target,
            found: search.paths.len(),
            limit: budget.max_paths,
        });
    }
    Ok(PathSet {
        source,
        target,
        paths: search.paths,
        depth_limited: search.depth_limited,
    })
}

struct Search<'a> {
    map: &'a CognitiveMap,
    target: usize,
    max_paths: usize,
    max_len: usize,
    visited: Vec<bool>,
    stack: Vec<usize>,
    paths: Vec<SimplePath>,
    depth_limited: bool,
}

impl Search<'_> {
    /// Returns false when the path budget is exhausted.
    fn extend(&mut self, current: usize) -> bool {
        let depth = self.stack.len() - 1;
        for next in self.map.successors(current) {
            if self.visited[next] {
                continue;
            }
            if depth + 1 > self.max_len {
                self.depth_limited = true;
                return true;
            }
            if next == self.target {
                self.stack.push(next);
                self.paths
                    .push(SimplePath::from_vertices_unchecked(self.stack.clone()));
                self.stack.pop();
                if self.paths.len() > self.max_paths {
                    return false;
                }
                continue;
            }
            self.visited[next] = true;
            self.stack.push(next);
            let ok = self.extend(next);
            self.stack.pop();
            self.visited[next] = false;
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Number of simple paths between two fixed distinct vertices of the
/// complete digraph on `n` vertices: `sum_{k=0}^{n-2} (n-2)! / (n-2-k)!`.
pub fn count_paths_complete(n: usize) -> Result<u128> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "complete graph path count needs n >= 2, got {n}"
        )));
    }
    // k intermediate vertices chosen in order from the n - 2 others.
    let others = (n - 2) as u128;
    let mut total: u128 = 0;
    let mut arrangements: u128 = 1;
    for k in 0..=others {
        total = total
            .checked_add(arrangements)
            .ok_or_else(|| Error::InvalidArgument(format!("path count overflows for n = {n}")))?;
        arrangements = arrangements.saturating_mul(others - k);
    }
    Ok(total)
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

    fn complete(n: usize) -> CognitiveMap {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect();
        CognitiveMap::new(rows).unwrap()
    }

    fn verts(set: &PathSet) -> Vec<Vec<usize>> {
        set.paths
            .iter()
            .map(|p| p.vertices().iter().map(|v| v + 1).collect())
            .collect()
    }

    #[test]
    fn matrix_7_pairs() {
        let map = m07();
        assert_eq!(
            verts(&enumerate_simple_paths(&map, 0, 3).unwrap()),
            vec![vec![1, 2, 4], vec![1, 3, 4]]
        );
        assert_eq!(
            verts(&enumerate_simple_paths(&map, 0, 1).unwrap()),
            vec![vec![1, 2]]
        );
        assert_eq!(
            verts(&enumerate_simple_paths(&map, 1, 2).unwrap()),
            vec![vec![2, 4, 1, 3]]
        );
    }

    #[test]
    fn no_outgoing_edges() {
        let map = CognitiveMap::new(vec![
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 2.0, 8.0],
            vec![-3.0, 9.0, 0.0, 5.0],
            vec![2.0, 0.0, -1.0, 0.0],
        ])
        .unwrap();
        for j in 1..4 {
            assert!(enumerate_simple_paths(&map, 0, j).unwrap().is_empty());
        }
    }

    #[test]
    fn argument_errors() {
        let map = m07();
        assert!(matches!(
            enumerate_simple_paths(&map, 2, 2),
            Err(Error::SameVertex(2))
        ));
        assert!(matches!(
            enumerate_simple_paths(&map, 0, 4),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        ));
        let zero = PathBudget {
            max_paths: 0,
            max_len: None,
        };
        assert!(enumerate_with_budget(&map, 0, 3, zero).is_err());
    }

    #[test]
    fn budgets() {
        let map = m07();
        let budget = PathBudget {
            max_paths: 10,
            max_len: Some(10),
        };
        let set = enumerate_with_budget(&map, 0, 3, budget).unwrap();
        assert_eq!(set.count(), 2);
        assert!(!set.depth_limited);

        let k8 = complete(8);
        let tight = PathBudget {
            max_paths: 100,
            max_len: None,
        };
        match enumerate_with_budget(&k8, 0, 7, tight) {
            Err(Error::PathBudget { found, limit, .. }) => {
                assert_eq!(limit, 100);
                assert_eq!(found, 101);
            }
            other => panic!("expected budget error, got {other:?}"),
        }

        let direct_only = PathBudget {
            max_paths: 10,
            max_len: Some(1),
        };
        let set = enumerate_with_budget(&map, 0, 1, direct_only).unwrap();
        assert_eq!(verts(&set), vec![vec![1, 2]]);
        let set = enumerate_with_budget(&map, 0, 3, direct_only).unwrap();
        assert!(set.is_empty());
        assert!(set.depth_limited);
    }

    #[test]
    fn complete_graph_counts() {
        assert_eq!(count_paths_complete(2).unwrap(), 1);
        assert_eq!(count_paths_complete(3).unwrap(), 2);
        assert_eq!(count_paths_complete(4).unwrap(), 5);
        assert_eq!(count_paths_complete(6).unwrap(), 65);
        assert_eq!(count_paths_complete(8).unwrap(), 1957);
        assert!(count_paths_complete(1).is_err());
        assert!(count_paths_complete(0).is_err());
        for n in 2..=7 {
            let set = enumerate_simple_paths(&complete(n), 0, n - 1).unwrap();
            assert_eq!(set.count() as u128, count_paths_complete(n).unwrap());
        }
    }

    #[test]
    fn path_validation() {
        let map = m07();
        assert!(SimplePath::new(vec![0, 1, 3], &map).is_ok());
        assert!(SimplePath::new(vec![0], &map).is_err());
        assert!(SimplePath::new(vec![0, 3], &map).is_err());
        assert!(SimplePath::new(vec![0, 1, 3, 0, 1], &map).is_err());
        assert!(SimplePath::new(vec![0, 9], &map).is_err());
        let p = SimplePath::new(vec![1, 3, 0, 2], &map).unwrap();
        assert_eq!(p.edge_count(), 3);
        assert_eq!(
            p.edge_weights(&map).collect::<Vec<_>>(),
            vec![1.0, 1.0, -1.0]
        );
    }
}
