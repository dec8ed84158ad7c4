use super::CMatrix;
use crate::error::{Error, Result};
use crate::C64;

/// Lower-triangular `G` with positive real diagonal such that `A = G G*`.
pub fn cholesky(a: &CMatrix) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let scale = a.max_abs().max(1.0);
    let defect = a.hermitian_defect();
    if defect > super::eigen::HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { deviation: defect });
    }
    let mut g = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= g[(j, k)].norm_sqr();
        }
        if d <= super::eigen::PD_TOL * scale {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: d });
        }
        let djj = d.sqrt();
        g[(j, j)] = C64::new(djj, 0.0);
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= g[(i, k)] * g[(j, k)].conj();
            }
            g[(i, j)] = s / djj;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_reconstruct() {
        let a = CMatrix::from_rows(&[
            vec![C64::new(4.0, 0.0), C64::new(1.0, 1.0)],
            vec![C64::new(1.0, -1.0), C64::new(3.0, 0.0)],
        ]);
        let g = cholesky(&a).unwrap();
        assert!((&g * &g.adjoint()).max_abs_diff(&a) < 1e-14);
        assert_eq!(g[(0, 1)], C64::new(0.0, 0.0));
    }

    #[test]
    fn rejects_singular() {
        let a = CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(cholesky(&a).is_err());
    }
}
