use crate::linalg::matrix::Matrix;
use crate::scalar::Scalar;

/// Whether the symmetric matrix `a + shift·I` is positive definite, decided
/// by attempting a Cholesky factorisation (fails on the first nonpositive pivot).
pub fn is_positive_definite<T: Scalar>(a: &Matrix<T>, shift: T) -> bool {
    assert!(a.is_square());
    let m = a.rows();
    let mut l = Matrix::zeros(m, m);
    for j in 0..m {
        let mut d = a[(j, j)] + shift;
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d.is_nan() || d <= T::zero() {
            return false;
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..m {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    true
}
