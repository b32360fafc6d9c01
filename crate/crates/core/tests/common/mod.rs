#![allow(dead_code)]

use std::path::PathBuf;

use cogmap::{CognitiveMap, LoadOptions};
use rand::rngs::StdRng;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(id: u32) -> CognitiveMap {
    let path = fixture_path(&format!("m{id:02}.csv"));
    cogmap::map::load_map_file(&path, LoadOptions::default()).unwrap()
}

fn read_csv(name: &str) -> csv::Reader<std::fs::File> {
    csv::ReaderBuilder::new()
        .has_headers(!name.ends_with("_influence"))
        .from_path(fixture_path(&format!("golden/{name}.csv")))
        .unwrap()
}

pub fn golden_matrix(name: &str) -> Vec<Vec<f64>> {
    read_csv(name)
        .records()
        .map(|r| {
            r.unwrap()
                .iter()
                .map(|c| c.trim().parse().unwrap())
                .collect()
        })
        .collect()
}

/// Column headers after `vertex`, then `(vertex, values)` rows in printed
/// order. Vertices are 1-based as printed.
pub fn golden_table(name: &str) -> (Vec<String>, Vec<(usize, Vec<f64>)>) {
    let mut rdr = read_csv(name);
    let headers = rdr
        .headers()
        .unwrap()
        .iter()
        .skip(1)
        .map(str::to_owned)
        .collect();
    let rows = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            let v = r[0].parse().unwrap();
            (v, r.iter().skip(1).map(|c| c.parse().unwrap()).collect())
        })
        .collect();
    (headers, rows)
}

/// Signed digraph with each off-diagonal edge present with probability
/// `density`, weights uniform in [-1, 1] and nonzero.
pub fn random_map(rng: &mut StdRng, n: usize, density: f64) -> CognitiveMap {
    let mut rows = vec![vec![0.0; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, w) in row.iter_mut().enumerate() {
            if i != j && rng.gen_bool(density) {
                let mut x = 0.0;
                while x == 0.0 {
                    x = rng.gen_range(-1.0..=1.0);
                }
                *w = x;
            }
        }
    }
    CognitiveMap::new(rows).unwrap()
}

pub mod oracle {
    use cogmap::CognitiveMap;
    use nalgebra::{Complex, DMatrix, DVector};

    fn next_permutation(v: &mut [usize]) -> bool {
        if v.len() < 2 {
            return false;
        }
        let mut i = v.len() - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = v.len() - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    /// Every ordering of every subset of the intermediate vertices, kept
    /// when all consecutive edges exist. Sorted lexicographically.
    pub fn simple_paths(map: &CognitiveMap, s: usize, t: usize) -> Vec<Vec<usize>> {
        let n = map.n();
        let inner: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << inner.len()) {
            let mut perm: Vec<usize> = inner
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &v)| v)
                .collect();
            loop {
                let mut walk = vec![s];
                walk.extend_from_slice(&perm);
                walk.push(t);
                if walk.windows(2).all(|e| map.weight(e[0], e[1]) != 0.0) {
                    out.push(walk);
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        out.sort();
        out
    }

    fn run(weights: &[f64], mu: f64) -> f64 {
        let mut z = 0.0_f64;
        for &w in weights {
            let boost = (1.0 - (-2.0 * (z / mu).abs()).exp()) * z.signum();
            let boost = if z == 0.0 { 0.0 } else { boost };
            z = (1.0 + boost) * w;
        }
        z
    }

    /// Full accumulation minus the accumulation that starts one edge later.
    pub fn path_partial(weights: &[f64], mu: f64) -> f64 {
        run(weights, mu) - run(&weights[1..], mu)
    }

    pub fn influence(map: &CognitiveMap) -> Vec<Vec<f64>> {
        let n = map.n();
        let mu = map.row_major().iter().fold(0.0_f64, |m, w| m.max(w.abs()));
        let mut z = vec![vec![0.0; n]; n];
        if mu == 0.0 {
            return z;
        }
        for (s, row) in z.iter_mut().enumerate() {
            for (t, cell) in row.iter_mut().enumerate() {
                if s == t {
                    continue;
                }
                *cell = simple_paths(map, s, t)
                    .iter()
                    .map(|p| {
                        let ws: Vec<f64> = p.windows(2).map(|e| map.weight(e[0], e[1])).collect();
                        path_partial(&ws, mu)
                    })
                    .sum();
            }
        }
        z
    }

    /// Converged `v(inf) - v(0)` for a unit impulse at `source`:
    /// `(I - W^T)^-1 e_s - e_s`.
    pub fn neumann_change(map: &CognitiveMap, source: usize) -> Vec<f64> {
        let n = map.n();
        let w = DMatrix::from_row_slice(n, n, map.row_major());
        let a = DMatrix::identity(n, n) - w.transpose();
        let mut e = DVector::zeros(n);
        e[source] = 1.0;
        let x = a.lu().solve(&e).expect("I - W^T is singular");
        (x - e).iter().copied().collect()
    }

    /// Smallest singular value of `W - lambda I`.
    pub fn shifted_min_singular_value(map: &CognitiveMap, lambda: Complex<f64>) -> f64 {
        let n = map.n();
        let a = DMatrix::from_fn(n, n, |i, j| {
            let w = Complex::new(map.weight(i, j), 0.0);
            if i == j {
                w - lambda
            } else {
                w
            }
        });
        a.svd(false, false).singular_values.min()
    }
}
