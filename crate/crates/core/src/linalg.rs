//! Cyclic Jacobi eigensolver for dense symmetric and Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

/// Ascending eigenvalues; `vectors[k]` is the unit eigenvector of `values[k]`.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    /// max_k ‖M v_k − λ_k v_k‖ / ‖v_k‖ against the input matrix.
    pub residual: f64,
}

pub fn jacobi_eigen(m: &Matrix) -> Result<Eigen> {
    let n = m.n;
    let mut a = m.clone();
    let mut v = Matrix::zeros(n);
    for i in 0..n {
        v.set(i, i, 1.0);
    }
    let scale = m.frobenius().max(1.0);
    let mut sweeps = 0;
    loop {
        let off = a.off_norm();
        if off <= JACOBI_TOL * scale {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|k| (a.get(k, k), (0..n).map(|i| v.get(i, k)).collect()))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let residual = pairs
        .iter()
        .map(|(l, x)| {
            let mx = m.mul_vec(x);
            let r: f64 = mx.iter().zip(x).map(|(a, b)| (a - l * b).powi(2)).sum::<f64>().sqrt();
            let nx: f64 = x.iter().map(|b| b * b).sum::<f64>().sqrt();
            r / nx
        })
        .fold(0.0, f64::max);
    let (values, vectors) = pairs.into_iter().unzip();
    Ok(Eigen {
        values,
        vectors,
        residual,
    })
}

/// Eigenvalues of a Hermitian matrix (row-major), via the real embedding
/// [[Re, −Im], [Im, Re]] whose spectrum repeats each eigenvalue twice.
pub fn hermitian_eigenvalues(n: usize, h: &[Complex64]) -> Result<(Vec<f64>, f64)> {
    let mut m = Matrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = h[i * n + j];
            m.set(i, j, z.re);
            m.set(i + n, j + n, z.re);
            m.set(i, j + n, -z.im);
            m.set(i + n, j, z.im);
        }
    }
    let e = jacobi_eigen(&m)?;
    let values = e.values.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect();
    Ok((values, e.residual))
}
