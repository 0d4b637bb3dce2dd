use super::Ring;

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Every intermediate division is exact in any integral domain, so this
/// works unchanged over rationals, tower elements and polynomial rings.
pub fn bareiss_det<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].times(&m[k][k]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = num.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.negate()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, Rational};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_det(mat(&[&[2]])), int(2));
        assert_eq!(bareiss_det(mat(&[&[1, 2], &[3, 4]])), int(-2));
        assert_eq!(bareiss_det(mat(&[&[0, 1], &[1, 0]])), int(-1));
        // needs a row swap at the first pivot
        assert_eq!(bareiss_det(mat(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])), int(2));
        assert_eq!(bareiss_det(mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 5]])), int(0));
    }
}
