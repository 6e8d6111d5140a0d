//! Eigenvalues of real symmetric band matrices.
//!
//! The band is reduced to tridiagonal form with Givens rotations, chasing each
//! bulge off the end of the matrix, and the tridiagonal matrix is diagonalized
//! with the implicit QL algorithm. Memory and time scale as `n * kd` and
//! `n^2 * kd`.

use nalgebra::DMatrix;

use crate::error::{DickeError, Result};

/// Real symmetric matrix with half-bandwidth `kd`, lower triangle stored by columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricBand {
    n: usize,
    kd: usize,
    data: Vec<f64>,
}

impl SymmetricBand {
    pub fn zeros(n: usize, kd: usize) -> Self {
        Self {
            n,
            kd,
            data: vec![0.0; n * (kd + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.kd
    }

    #[inline]
    fn idx(&self, r: usize, c: usize) -> usize {
        c * (self.kd + 1) + (r - c)
    }

    /// Element `(r, c)`; zero outside the band.
    pub fn get(&self, r: usize, c: usize) -> f64 {
        let (r, c) = if r >= c { (r, c) } else { (c, r) };
        if r - c > self.kd || r >= self.n {
            0.0
        } else {
            self.data[self.idx(r, c)]
        }
    }

    /// Set elements `(r, c)` and `(c, r)`. Panics outside the band.
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        let (r, c) = if r >= c { (r, c) } else { (c, r) };
        assert!(r < self.n && r - c <= self.kd, "({r}, {c}) lies outside the band");
        let i = self.idx(r, c);
        self.data[i] = v;
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |r, c| self.get(r, c))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let (mut d, mut e) = self.tridiagonalize();
        tridiagonal_eigenvalues(&mut d, &mut e)?;
        d.sort_by(f64::total_cmp);
        Ok(d)
    }

    /// Diagonal and sub-diagonal of an orthogonally similar tridiagonal matrix.
    pub fn tridiagonalize(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        if self.kd <= 1 || n <= 2 {
            let d = (0..n).map(|i| self.get(i, i)).collect();
            let e = (0..n).map(|i| if i + 1 < n { self.get(i + 1, i) } else { 0.0 }).collect();
            return (d, e);
        }
        let mut w = Work::from_band(self);
        for k in (2..=self.kd).rev() {
            for j0 in 0..n {
                let (mut col, mut r) = (j0, j0 + k);
                while r < n {
                    let x = w.get(r, col);
                    if x == 0.0 {
                        break;
                    }
                    let p = r - 1;
                    let y = w.get(p, col);
                    let h = y.hypot(x);
                    w.rotate(p, y / h, x / h);
                    w.set(r, col, 0.0);
                    w.set(p, col, h);
                    col = p;
                    r += k;
                }
            }
        }
        let d = (0..n).map(|i| w.get(i, i)).collect();
        let e = (0..n).map(|i| if i + 1 < n { w.get(i + 1, i) } else { 0.0 }).collect();
        (d, e)
    }
}

/// Band storage with one extra diagonal for the bulge.
struct Work {
    n: usize,
    w: usize,
    data: Vec<f64>,
}

impl Work {
    fn from_band(b: &SymmetricBand) -> Self {
        let w = b.kd + 1;
        let mut data = vec![0.0; b.n * (w + 1)];
        for c in 0..b.n {
            for d in 0..=b.kd.min(b.n - 1 - c) {
                data[c * (w + 1) + d] = b.data[c * (b.kd + 1) + d];
            }
        }
        Self { n: b.n, w, data }
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> f64 {
        self.data[c * (self.w + 1) + (r - c)]
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[c * (self.w + 1) + (r - c)] = v;
    }

    /// Similarity transform with the rotation `[[c, s], [-s, c]]` acting on rows
    /// and columns `p` and `p + 1`.
    fn rotate(&mut self, p: usize, c: f64, s: f64) {
        let q = p + 1;
        let w = self.w;
        let stride = w + 1;
        let lo = q.saturating_sub(w);
        for i in lo..p {
            let ip = i * stride + (p - i);
            let iq = ip + 1;
            let (a, b) = (self.data[ip], self.data[iq]);
            self.data[ip] = c * a + s * b;
            self.data[iq] = -s * a + c * b;
        }
        let hi = self.n.min(p + w + 1);
        let pp = p * stride;
        let qq = q * stride;
        for i in q + 1..hi {
            let ip = pp + (i - p);
            let iq = qq + (i - q);
            let (a, b) = (self.data[ip], self.data[iq]);
            self.data[ip] = c * a + s * b;
            self.data[iq] = -s * a + c * b;
        }
        let app = self.data[pp];
        let aqq = self.data[qq];
        let aqp = self.data[pp + 1];
        self.data[pp] = c * c * app + 2.0 * c * s * aqp + s * s * aqq;
        self.data[qq] = s * s * app - 2.0 * c * s * aqp + c * c * aqq;
        self.data[pp + 1] = c * s * (aqq - app) + (c * c - s * s) * aqp;
    }
}

/// Implicit QL iteration on a symmetric tridiagonal matrix with diagonal `d` and
/// couplings `e[i]` between `i` and `i + 1`. Eigenvalues overwrite `d`.
pub fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 200 {
                return Err(DickeError::NoConvergence(format!("QL stalled at index {l}")));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
