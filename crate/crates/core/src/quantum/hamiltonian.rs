use super::band::SymmetricBand;
use crate::error::{DickeError, Result};
use crate::model::ModelParams;
use crate::spin::Pseudospin;

/// Largest Hilbert-space dimension the oracle accepts.
pub const MAX_DIMENSION: usize = 60_000;

/// Product basis `|n> (x) |j, m>` with `n <= n_max`, ordered boson-major:
/// index `n (2j + 1) + (m + j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockBasis {
    pub j: Pseudospin,
    pub n_max: usize,
}

impl FockBasis {
    pub fn multiplet(&self) -> usize {
        self.j.multiplet_size()
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) * self.multiplet()
    }

    /// Index of `|n, m>` where `mi = m + j`.
    pub fn index(&self, n: usize, mi: usize) -> usize {
        n * self.multiplet() + mi
    }

    /// Eigenvalue (0 or 1) of the parity `(-1)^(n + m + j)`.
    pub fn parity(&self, n: usize, mi: usize) -> usize {
        (n + mi) % 2
    }
}

pub fn sector_dimension(j: Pseudospin, n_max: usize) -> usize {
    FockBasis { j, n_max }.dim()
}

/// Nonzero matrix elements `(row, col, value)` with `row >= col`.
fn elements(p: &ModelParams, basis: &FockBasis) -> Vec<(usize, usize, f64)> {
    let jv = basis.j.value();
    let jj = jv * (jv + 1.0);
    let g = p.gamma / (p.n_atoms as f64).sqrt();
    let size = basis.multiplet();
    let mut out = Vec::with_capacity(basis.dim() * 3);
    for n in 0..=basis.n_max {
        for mi in 0..size {
            let m = mi as f64 - jv;
            let i = basis.index(n, mi);
            out.push((i, i, p.omega * n as f64 + p.omega0 * m));
            if n == 0 {
                continue;
            }
            let sn = (n as f64).sqrt();
            // a J+ : |n, m> -> |n-1, m+1>, with its conjugate a^dag J-
            if mi + 1 < size {
                let v = g * sn * (jj - m * (m + 1.0)).sqrt();
                out.push((i, basis.index(n - 1, mi + 1), v));
            }
            // delta a J- : |n, m> -> |n-1, m-1>, with its conjugate delta a^dag J+
            if mi > 0 && p.delta != 0.0 {
                let v = g * p.delta * sn * (jj - m * (m - 1.0)).sqrt();
                out.push((i, basis.index(n - 1, mi - 1), v));
            }
        }
    }
    out
}

fn check(p: &ModelParams, j: Pseudospin, n_max: usize) -> Result<FockBasis> {
    p.validate()?;
    j.check_allowed(p.n_atoms)?;
    let basis = FockBasis { j, n_max };
    let dim = n_max
        .checked_add(1)
        .and_then(|x| x.checked_mul(j.multiplet_size()))
        .unwrap_or(usize::MAX);
    if dim > MAX_DIMENSION {
        return Err(DickeError::Dimension {
            dim,
            limit: MAX_DIMENSION,
        });
    }
    Ok(basis)
}

fn assemble(dim: usize, entries: &[(usize, usize, f64)]) -> SymmetricBand {
    let kd = entries.iter().map(|&(r, c, _)| r - c).max().unwrap_or(0);
    let mut h = SymmetricBand::zeros(dim, kd);
    for &(r, c, v) in entries {
        h.set(r, c, h.get(r, c) + v);
    }
    h
}

/// Hamiltonian of sector `j` in the truncated product basis.
pub fn build_hamiltonian(p: &ModelParams, j: Pseudospin, n_max: usize) -> Result<SymmetricBand> {
    let basis = check(p, j, n_max)?;
    Ok(assemble(basis.dim(), &elements(p, &basis)))
}

/// The Hamiltonian split into its two parity blocks (even, odd), each in
/// ascending product-basis order.
pub fn parity_blocks(p: &ModelParams, j: Pseudospin, n_max: usize) -> Result<[SymmetricBand; 2]> {
    let basis = check(p, j, n_max)?;
    let size = basis.multiplet();
    let mut local = vec![0usize; basis.dim()];
    let mut parity = vec![0usize; basis.dim()];
    let mut counts = [0usize; 2];
    for n in 0..=n_max {
        for mi in 0..size {
            let i = basis.index(n, mi);
            let s = basis.parity(n, mi);
            parity[i] = s;
            local[i] = counts[s];
            counts[s] += 1;
        }
    }
    let mut split: [Vec<(usize, usize, f64)>; 2] = [Vec::new(), Vec::new()];
    for (r, c, v) in elements(p, &basis) {
        debug_assert_eq!(parity[r], parity[c]);
        split[parity[r]].push((local[r], local[c], v));
    }
    Ok([assemble(counts[0], &split[0]), assemble(counts[1], &split[1])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn spin_matrices(j: Pseudospin) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
        // J_x, K = i J_y (real antisymmetric), J_z in the basis m = -j..j
        let s = j.multiplet_size();
        let jv = j.value();
        let mut jp = DMatrix::zeros(s, s);
        for mi in 0..s - 1 {
            let m = mi as f64 - jv;
            jp[(mi + 1, mi)] = (jv * (jv + 1.0) - m * (m + 1.0)).sqrt();
        }
        let jm = jp.transpose();
        let jx = (&jp + &jm) * 0.5;
        let k = (&jp - &jm) * 0.5;
        let jz = DMatrix::from_fn(s, s, |r, c| if r == c { r as f64 - jv } else { 0.0 });
        (jx, k, jz)
    }

    #[test]
    fn matches_quadrature_form() {
        // H = w a'a + w0 Jz + g/sqrt(N) [(1+d)(a+a')Jx - i(1-d)(a'-a)Jy], with Jy = -i K
        let p = ModelParams::new(1.1, 0.9, 1.3, 0.35, 6).unwrap();
        let j = Pseudospin::from_twice(4);
        let n_max = 7;
        let nb = n_max + 1;
        let mut a = DMatrix::zeros(nb, nb);
        for n in 1..nb {
            a[(n - 1, n)] = (n as f64).sqrt();
        }
        let ad = a.transpose();
        let num = &ad * &a;
        let (jx, k, jz) = spin_matrices(j);
        let eye_b = DMatrix::<f64>::identity(nb, nb);
        let eye_s = DMatrix::<f64>::identity(j.multiplet_size(), j.multiplet_size());
        let g = p.gamma / (p.n_atoms as f64).sqrt();
        let h = num.kronecker(&eye_s) * p.omega
            + eye_b.kronecker(&jz) * p.omega0
            + (&a + &ad).kronecker(&jx) * (g * (1.0 + p.delta))
            - (&ad - &a).kronecker(&k) * (g * (1.0 - p.delta));
        let ours = build_hamiltonian(&p, j, n_max).unwrap().to_dense();
        assert!((h - ours).amax() < 1e-13);
    }

    #[test]
    fn blocks_cover_basis() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.5, 8).unwrap();
        let j = Pseudospin::from_twice(8);
        let [even, odd] = parity_blocks(&p, j, 10).unwrap();
        assert_eq!(even.dim() + odd.dim(), sector_dimension(j, 10));
        let full = build_hamiltonian(&p, j, 10).unwrap();
        assert!(even.bandwidth() < full.bandwidth());
    }

    #[test]
    fn dimension_limit() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.5, 100).unwrap();
        assert!(matches!(
            build_hamiltonian(&p, Pseudospin::from_twice(100), 10_000),
            Err(DickeError::Dimension { .. })
        ));
    }
}
