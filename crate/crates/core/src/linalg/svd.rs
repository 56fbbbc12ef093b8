use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 30;
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;

/// Singular values of a dense matrix by one-sided (Hestenes) Jacobi.
///
/// `columns[j]` holds column `j`. The matrix is first reduced by Householder
/// QR with column pivoting; Jacobi then runs on the rows of `R`, which are
/// much closer to orthogonal than the original columns. Column pairs are
/// rotated until every pair is orthogonal to [`OFF_DIAGONAL_TOLERANCE`]
/// relative to the product of their norms; the singular values are then the
/// column norms. Returned in descending order.
///
/// Rounding leaves noise of order `8 n eps ||A||_F` in every column. The
/// reduction stops once the trailing block falls below that noise (its
/// singular values are reported as zero), and a pair also counts as
/// orthogonal once `|<a_p, a_q>|` is below the noise times the larger column
/// norm. Singular values are therefore accurate to about `8 n eps ||A||_F`
/// absolutely.
pub fn singular_values(columns: Vec<Vec<f64>>) -> Result<Vec<f64>> {
    let n = columns.len();
    let frobenius = columns.iter().map(|c| dot(c, c)).sum::<f64>().sqrt();
    let noise = 8.0 * n.max(1) as f64 * f64::EPSILON * frobenius;
    let mut rows = pivoted_r_rows(columns, noise);
    jacobi(&mut rows, noise)?;

    let mut values: Vec<f64> = rows.iter().map(|c| dot(c, c).sqrt()).collect();
    values.resize(n, 0.0);
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Rows of the triangular factor of `A P = Q R`, stopping at the first
/// pivot column whose remaining norm is below `noise`.
fn pivoted_r_rows(mut cols: Vec<Vec<f64>>, noise: f64) -> Vec<Vec<f64>> {
    let n = cols.len();
    let m = cols.first().map_or(0, Vec::len);
    let mut rank = 0;
    for k in 0..n.min(m) {
        let (p, best) = (k..n)
            .map(|j| (j, dot(&cols[j][k..], &cols[j][k..])))
            .fold((k, -1.0), |a, b| if b.1 > a.1 { b } else { a });
        if best.sqrt() <= noise {
            break;
        }
        cols.swap(k, p);
        let norm = best.sqrt();
        let alpha = if cols[k][k] > 0.0 { -norm } else { norm };
        let mut v = cols[k][k..].to_vec();
        v[0] -= alpha;
        let vv = dot(&v, &v);
        cols[k][k] = alpha;
        cols[k][k + 1..].iter_mut().for_each(|x| *x = 0.0);
        if vv > 0.0 {
            for col in cols.iter_mut().skip(k + 1) {
                let f = 2.0 * dot(&v, &col[k..]) / vv;
                for (x, vi) in col[k..].iter_mut().zip(&v) {
                    *x -= f * vi;
                }
            }
        }
        rank = k + 1;
    }
    (0..rank)
        .map(|k| (0..n).map(|j| if j >= k { cols[j][k] } else { 0.0 }).collect())
        .collect()
}

fn jacobi(columns: &mut [Vec<f64>], noise: f64) -> Result<()> {
    let n = columns.len();
    let mut norms: Vec<f64> = columns.iter().map(|c| dot(c, c)).collect();
    let floor = noise * noise;

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = norms[p];
                let beta = norms[q];
                if alpha <= floor || beta <= floor {
                    continue;
                }
                let gamma = dot(&columns[p], &columns[q]);
                let (ra, rb) = (alpha.sqrt(), beta.sqrt());
                if gamma.abs() <= OFF_DIAGONAL_TOLERANCE * ra * rb || gamma.abs() <= noise * ra.max(rb) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;

                let (left, right) = columns.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for (a, b) in cp.iter_mut().zip(cq.iter_mut()) {
                    let x = *a;
                    let y = *b;
                    *a = c * x - s * y;
                    *b = s * x + c * y;
                }
                norms[p] = dot(cp, cp);
                norms[q] = dot(cq, cq);
            }
        }
        converged = !rotated;
    }
    if converged {
        Ok(())
    } else {
        Err(Error::SvdNotConverged(MAX_SWEEPS))
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
