//! Dense complex LU factorization with partial (row) pivoting.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// `P A = L U`, packed in one matrix.
#[derive(Debug, Clone)]
pub struct ComplexLu {
    lu: DMatrix<Complex64>,
    perm: Vec<usize>,
    norm1: f64,
}

/// Factorization stopped on a pivot smaller than the singularity threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularPivot {
    pub column: usize,
    pub magnitude: f64,
}

fn norm1(a: &DMatrix<Complex64>) -> f64 {
    a.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

impl ComplexLu {
    /// Factors `a`; a pivot below `rel_tol * ||a||_1` is reported as
    /// singular.
    pub fn factor(a: &DMatrix<Complex64>, rel_tol: f64) -> Result<Self, SingularPivot> {
        assert!(a.is_square(), "LU needs a square matrix");
        let n = a.nrows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let norm1 = norm1(a);
        let floor = rel_tol * norm1;

        for k in 0..n {
            let (p, magnitude) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(magnitude > floor) {
                return Err(SingularPivot { column: k, magnitude });
            }
            if p != k {
                lu.swap_rows(p, k);
                perm.swap(p, k);
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor.norm() == 0.0 {
                    continue;
                }
                for j in (k + 1)..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= factor * u;
                }
            }
        }
        Ok(ComplexLu { lu, perm, norm1 })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn solve(&self, b: &DVector<Complex64>) -> DVector<Complex64> {
        let n = self.dim();
        let mut x = DVector::from_fn(n, |i, _| b[self.perm[i]]);
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let u = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= u * xj;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    /// 1-norm condition number `||A||_1 ||A^-1||_1`, with the inverse norm
    /// taken column by column from unit solves. Exact, and cheap at the
    /// sizes handled here.
    pub fn condition_1(&self) -> f64 {
        let n = self.dim();
        let mut inv_norm: f64 = 0.0;
        for j in 0..n {
            let mut e = DVector::zeros(n);
            e[j] = Complex64::new(1.0, 0.0);
            let col = self.solve(&e);
            inv_norm = inv_norm.max(col.iter().map(|z| z.norm()).sum());
        }
        self.norm1 * inv_norm
    }
}
