//! Eigenvalues of small dense real nonsymmetric matrices.
//!
//! Balancing, Householder reduction to upper Hessenberg form, then the
//! Francis double-shift QR iteration with deflation. Eigenvectors are not
//! formed.

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Dense row-major square matrix used as QR workspace.
struct Dense {
    n: usize,
    a: Vec<f64>,
}

impl Dense {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.a[i * self.n + j]
    }
}

/// All `n` eigenvalues of the row-major `n x n` matrix, sorted by
/// descending modulus (ties: real part, then imaginary part, descending).
pub fn eigenvalues(n: usize, row_major: &[f64]) -> Result<Vec<Complex64>> {
    assert_eq!(row_major.len(), n * n, "matrix size mismatch");
    if n == 0 {
        return Ok(Vec::new());
    }
    if row_major.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "matrix has non-finite entries".into(),
        ));
    }
    let mut m = Dense {
        n,
        a: row_major.to_vec(),
    };
    balance(&mut m);
    hessenberg(&mut m);
    let mut values = hessenberg_qr(&mut m)?;
    values.sort_by(|x, y| {
        y.norm()
            .total_cmp(&x.norm())
            .then(y.re.total_cmp(&x.re))
            .then(y.im.total_cmp(&x.im))
    });
    Ok(values)
}

/// Diagonal similarity scaling by powers of two so row and column norms
/// are comparable. Leaves the spectrum unchanged.
fn balance(m: &mut Dense) {
    const RADIX: f64 = 2.0;
    let n = m.n;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += m.at(j, i).abs();
                    r += m.at(i, j).abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    *m.at_mut(i, j) *= g;
                }
                for j in 0..n {
                    *m.at_mut(j, i) *= f;
                }
            }
        }
    }
}

/// Orthogonal reduction to upper Hessenberg form, `H = Q^T A Q`.
fn hessenberg(m: &mut Dense) {
    let n = m.n;
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let norm = (k + 1..n).map(|i| m.at(i, k).powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = m.at(k + 1, k);
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in 0..n {
            v[i] = if i > k { m.at(i, k) } else { 0.0 };
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = v[k + 1..].iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // A <- (I - 2vv^T/|v|^2) A (I - 2vv^T/|v|^2)
        for j in 0..n {
            let dot: f64 = (k + 1..n).map(|i| v[i] * m.at(i, j)).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k + 1..n {
                *m.at_mut(i, j) -= f * v[i];
            }
        }
        for i in 0..n {
            let dot: f64 = (k + 1..n).map(|j| m.at(i, j) * v[j]).sum();
            let f = 2.0 * dot / vnorm2;
            for j in k + 1..n {
                *m.at_mut(i, j) -= f * v[j];
            }
        }
        *m.at_mut(k + 1, k) = alpha;
        for i in k + 2..n {
            *m.at_mut(i, k) = 0.0;
        }
    }
}

#[inline]
fn copysign(magnitude: f64, sign_of: f64) -> f64 {
    if sign_of >= 0.0 {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (destroyed).
fn hessenberg_qr(h: &mut Dense) -> Result<Vec<Complex64>> {
    let n = h.n;
    let eps = f64::EPSILON;
    let mut out = vec![Complex64::new(0.0, 0.0); n];

    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += h.at(i, j).abs();
        }
    }

    // Active block is rows/cols l..=nn; `nn` is signed so it can run past 0.
    let mut nn = n as isize - 1;
    let mut shift_total = 0.0;
    while nn >= 0 {
        let mut its = 0;
        loop {
            let top = nn as usize;
            // Look for a negligible subdiagonal element to split at.
            let mut l = top;
            while l > 0 {
                let mut s = h.at(l - 1, l - 1).abs() + h.at(l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if h.at(l, l - 1).abs() <= eps * s {
                    *h.at_mut(l, l - 1) = 0.0;
                    break;
                }
                l -= 1;
            }

            let mut x = h.at(top, top);
            if l == top {
                out[top] = Complex64::new(x + shift_total, 0.0);
                nn -= 1;
                break;
            }
            let mut y = h.at(top - 1, top - 1);
            let mut w = h.at(top, top - 1) * h.at(top - 1, top);
            if l == top - 1 {
                // 2x2 block: solve its characteristic quadratic.
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += shift_total;
                if q >= 0.0 {
                    let z = p + copysign(z, p);
                    out[top - 1] = Complex64::new(x + z, 0.0);
                    out[top] = Complex64::new(if z != 0.0 { x - w / z } else { x + z }, 0.0);
                } else {
                    out[top - 1] = Complex64::new(x + p, z);
                    out[top] = Complex64::new(x + p, -z);
                }
                nn -= 2;
                break;
            }

            if its == MAX_SWEEPS_PER_EIGENVALUE {
                return Err(Error::EigenNoConvergence {
                    iterations: its,
                    index: top,
                });
            }
            if its > 0 && its % 10 == 0 {
                // Exceptional shift to break cycles.
                shift_total += x;
                for i in 0..=top {
                    *h.at_mut(i, i) -= x;
                }
                let s = h.at(top, top - 1).abs() + h.at(top - 1, top - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // Find two consecutive small subdiagonal elements.
            let mut m = top - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = h.at(m, m);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / h.at(m + 1, m) + h.at(m, m + 1);
                q = h.at(m + 1, m + 1) - z - rr - ss;
                r = h.at(m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = h.at(m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (h.at(m - 1, m - 1).abs() + z.abs() + h.at(m + 1, m + 1).abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m..top - 1 {
                *h.at_mut(i + 2, i) = 0.0;
                if i != m {
                    *h.at_mut(i + 2, i - 1) = 0.0;
                }
            }

            // Double QR step on rows l..=top, columns m..=top.
            for k in m..top {
                if k != m {
                    p = h.at(k, k - 1);
                    q = h.at(k + 1, k - 1);
                    r = if k + 1 != top {
                        h.at(k + 2, k - 1)
                    } else {
                        0.0
                    };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = copysign((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        *h.at_mut(k, k - 1) = -h.at(k, k - 1);
                    }
                } else {
                    *h.at_mut(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=top {
                    let mut pp = h.at(k, j) + q * h.at(k + 1, j);
                    if k + 1 != top {
                        pp += r * h.at(k + 2, j);
                        *h.at_mut(k + 2, j) -= pp * z;
                    }
                    *h.at_mut(k + 1, j) -= pp * y;
                    *h.at_mut(k, j) -= pp * x;
                }
                let mmin = top.min(k + 3);
                for i in l..=mmin {
                    let mut pp = x * h.at(i, k) + y * h.at(i, k + 1);
                    if k + 1 != top {
                        pp += z * h.at(i, k + 2);
                        *h.at_mut(i, k + 2) -= pp * r;
                    }
                    *h.at_mut(i, k + 1) -= pp * q;
                    *h.at_mut(i, k) -= pp;
                }
            }
        }
    }
    Ok(out)
}
