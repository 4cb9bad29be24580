//! Dense eigenvalue kernels: Householder reduction to Hessenberg form, the
//! implicitly shifted double-shift QR iteration, cyclic Jacobi sweeps for
//! symmetric matrices, and shifted inverse iteration for eigenvector
//! recovery.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Hard cap on the order accepted by the dense eigensolver.
pub const EIG_DIM_GUARD: usize = 2000;

/// Reduces a square matrix to upper Hessenberg form by Householder
/// similarity transforms. Only the Hessenberg part of the result is
/// meaningful.
fn hessenberg_in_place(h: &mut DenseMatrix) {
    let n = h.rows();
    for k in 1..n.saturating_sub(1) {
        // Householder vector annihilating column k-1 below row k
        let mut scale = 0.0f64;
        for i in k..n {
            scale += h.at(i, k - 1).abs();
        }
        if scale == 0.0 {
            continue;
        }
        let mut sigma = 0.0;
        let mut v = vec![0.0; n];
        for i in k..n {
            v[i] = h.at(i, k - 1) / scale;
            sigma += v[i] * v[i];
        }
        let mut alpha = sigma.sqrt();
        if v[k] > 0.0 {
            alpha = -alpha;
        }
        let beta = sigma - v[k] * alpha;
        if beta == 0.0 {
            continue;
        }
        v[k] -= alpha;

        // apply I - vvᵀ/beta from the left: H ← H - v (vᵀH)/beta
        for j in (k - 1)..n {
            let mut dot = 0.0;
            for i in k..n {
                dot += v[i] * h.at(i, j);
            }
            let f = dot / beta;
            for i in k..n {
                *h.at_mut(i, j) -= f * v[i];
            }
        }
        // and from the right: H ← H - (H v) vᵀ/beta
        for i in 0..n {
            let mut dot = 0.0;
            for j in k..n {
                dot += h.at(i, j) * v[j];
            }
            let f = dot / beta;
            for j in k..n {
                *h.at_mut(i, j) -= f * v[j];
            }
        }
        *h.at_mut(k, k - 1) = alpha * scale;
        for i in (k + 1)..n {
            *h.at_mut(i, k - 1) = 0.0;
        }
    }
}

#[inline]
fn sign_of(magnitude: f64, sign_source: f64) -> f64 {
    if sign_source >= 0.0 {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// All eigenvalues of a real square matrix via Hessenberg reduction followed
/// by the double-shift QR iteration with 2x2 block extraction.
pub fn dense_eigenvalues(m: &DenseMatrix) -> Result<Vec<Complex64>> {
    if m.rows() != m.cols() {
        return Err(Error::InvalidDimension(format!(
            "eigenvalues of {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() > EIG_DIM_GUARD {
        return Err(Error::ResourceLimit(format!(
            "eigensolver guard: order {} exceeds {EIG_DIM_GUARD}",
            m.rows()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = m.clone();
    hessenberg_in_place(&mut h);
    hessenberg_qr(&mut h)
}

/// Double-shift QR on an upper Hessenberg matrix (destroys the input).
fn hessenberg_qr(h: &mut DenseMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut eigs = vec![Complex64::new(0.0, 0.0); n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += h.at(i, j).abs();
        }
    }
    if anorm == 0.0 {
        return Ok(eigs);
    }

    let sweep_budget = 30 * n;
    let mut sweeps = 0usize;
    let mut t = 0.0f64;
    let mut nn = n as isize - 1;
    'deflate: while nn >= 0 {
        let mut its = 0usize;
        loop {
            // search for a negligible subdiagonal entry
            let mut l = nn;
            while l >= 1 {
                let (lu, llu) = (l as usize, (l - 1) as usize);
                let mut s = h.at(llu, llu).abs() + h.at(lu, lu).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if h.at(lu, llu).abs() <= f64::EPSILON * s {
                    *h.at_mut(lu, llu) = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = h.at(nn as usize, nn as usize);
            if l == nn {
                eigs[nn as usize] = Complex64::new(x + t, 0.0);
                nn -= 1;
                continue 'deflate;
            }
            let mut y = h.at((nn - 1) as usize, (nn - 1) as usize);
            let mut w = h.at(nn as usize, (nn - 1) as usize) * h.at((nn - 1) as usize, nn as usize);
            if l == nn - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign_of(z, p);
                    let first = x + z;
                    let second = if z != 0.0 { x - w / z } else { first };
                    eigs[(nn - 1) as usize] = Complex64::new(first, 0.0);
                    eigs[nn as usize] = Complex64::new(second, 0.0);
                } else {
                    eigs[(nn - 1) as usize] = Complex64::new(x + p, z);
                    eigs[nn as usize] = Complex64::new(x + p, -z);
                }
                nn -= 2;
                continue 'deflate;
            }

            if sweeps >= sweep_budget {
                return Err(Error::EigensolverFailure(format!(
                    "no deflation after {sweep_budget} QR sweeps"
                )));
            }
            if its == 10 || its == 20 {
                // exceptional shift to break symmetric stalls
                t += x;
                for i in 0..=(nn as usize) {
                    *h.at_mut(i, i) -= x;
                }
                let s = h.at(nn as usize, (nn - 1) as usize).abs()
                    + h.at((nn - 1) as usize, (nn - 2) as usize).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            sweeps += 1;

            // find two consecutive small subdiagonals to start the step
            let mut mstart = nn - 2;
            let (mut p, mut q, mut r) = (0.0f64, 0.0f64, 0.0f64);
            while mstart >= l {
                let mu = mstart as usize;
                let z = h.at(mu, mu);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / h.at(mu + 1, mu) + h.at(mu, mu + 1);
                q = h.at(mu + 1, mu + 1) - z - rr - ss;
                r = h.at(mu + 2, mu + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if mstart == l {
                    break;
                }
                let u = h.at(mu, mu - 1).abs() * (q.abs() + r.abs());
                let v =
                    p.abs() * (h.at(mu - 1, mu - 1).abs() + z.abs() + h.at(mu + 1, mu + 1).abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                mstart -= 1;
            }
            for i in (mstart + 2)..=nn {
                *h.at_mut(i as usize, (i - 2) as usize) = 0.0;
            }
            for i in (mstart + 3)..=nn {
                *h.at_mut(i as usize, (i - 3) as usize) = 0.0;
            }

            // double QR step over rows l..=nn, columns mstart..=nn
            for k in mstart..=(nn - 1) {
                let ku = k as usize;
                if k != mstart {
                    p = h.at(ku, ku - 1);
                    q = h.at(ku + 1, ku - 1);
                    r = if k != nn - 1 { h.at(ku + 2, ku - 1) } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign_of((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == mstart {
                    if l != mstart {
                        let v = h.at(ku, ku - 1);
                        *h.at_mut(ku, ku - 1) = -v;
                    }
                } else {
                    *h.at_mut(ku, ku - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in ku..=(nn as usize) {
                    let mut pj = h.at(ku, j) + q * h.at(ku + 1, j);
                    if k != nn - 1 {
                        pj += r * h.at(ku + 2, j);
                        *h.at_mut(ku + 2, j) -= pj * z;
                    }
                    *h.at_mut(ku + 1, j) -= pj * y;
                    *h.at_mut(ku, j) -= pj * x;
                }
                let mmin = (nn as usize).min(ku + 3);
                for i in (l as usize)..=mmin {
                    let mut pi = x * h.at(i, ku) + y * h.at(i, ku + 1);
                    if k != nn - 1 {
                        pi += z * h.at(i, ku + 2);
                        *h.at_mut(i, ku + 2) -= pi * r;
                    }
                    *h.at_mut(i, ku + 1) -= pi * q;
                    *h.at_mut(i, ku) -= pi;
                }
            }
        }
    }
    Ok(eigs)
}

/// Extreme eigenvalues of a symmetric matrix via cyclic Jacobi sweeps.
/// Iterates until the off-diagonal Frobenius norm falls below 1e-12 relative
/// to the matrix norm.
pub fn symmetric_extremes(m: &DenseMatrix) -> Result<(f64, f64)> {
    if m.rows() != m.cols() {
        return Err(Error::InvalidDimension(format!(
            "symmetric_extremes of {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.asymmetry() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "matrix asymmetry {:.2e} exceeds 1e-12",
            m.asymmetry()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Err(Error::InvalidDimension("symmetric_extremes of empty matrix".into()));
    }
    let mut a = m.clone();
    // symmetrize exactly so rotations preserve symmetry
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (a.at(i, j) + a.at(j, i));
            *a.at_mut(i, j) = avg;
            *a.at_mut(j, i) = avg;
        }
    }
    let fro: f64 = (0..n)
        .map(|i| a.row_slice(i).iter().map(|v| v * v).sum::<f64>())
        .sum::<f64>()
        .sqrt();
    let target = 1e-12 * fro.max(1.0);

    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += 2.0 * a.at(i, j) * a.at(i, j);
            }
        }
        if off.sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.at(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                let tval = sign_of(1.0, theta) / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (tval * tval + 1.0).sqrt();
                let s = tval * c;
                for k in 0..n {
                    let akp = a.at(k, p);
                    let akq = a.at(k, q);
                    *a.at_mut(k, p) = c * akp - s * akq;
                    *a.at_mut(k, q) = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a.at(p, k);
                    let aqk = a.at(q, k);
                    *a.at_mut(p, k) = c * apk - s * aqk;
                    *a.at_mut(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    let mut lo = a.at(0, 0);
    let mut hi = a.at(0, 0);
    for i in 1..n {
        lo = lo.min(a.at(i, i));
        hi = hi.max(a.at(i, i));
    }
    Ok((lo, hi))
}

/// Dense complex LU with partial pivoting, used by the inverse iteration.
struct ComplexLu {
    n: usize,
    lu: Vec<Complex64>,
    pivots: Vec<usize>,
}

impl ComplexLu {
    fn factor(n: usize, mut data: Vec<Complex64>) -> Result<Self> {
        let mut pivots = Vec::with_capacity(n);
        for k in 0..n {
            let mut piv = k;
            let mut best = data[k * n + k].norm();
            for i in (k + 1)..n {
                let cand = data[i * n + k].norm();
                if cand > best {
                    best = cand;
                    piv = i;
                }
            }
            if best == 0.0 {
                return Err(Error::SingularMatrix("shifted matrix is singular".into()));
            }
            pivots.push(piv);
            if piv != k {
                for j in 0..n {
                    data.swap(k * n + j, piv * n + j);
                }
            }
            let inv = data[k * n + k].inv();
            for i in (k + 1)..n {
                let factor = data[i * n + k] * inv;
                data[i * n + k] = factor;
                if factor.norm() == 0.0 {
                    continue;
                }
                for j in (k + 1)..n {
                    let upd = factor * data[k * n + j];
                    data[i * n + j] -= upd;
                }
            }
        }
        Ok(Self { n, lu: data, pivots })
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x = b.to_vec();
        for (k, &piv) in self.pivots.iter().enumerate() {
            x.swap(k, piv);
        }
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        x
    }
}

fn complex_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvector for a known eigenvalue by shifted inverse iteration. The shift
/// is jittered off the exact eigenvalue so the factorization stays regular.
pub fn inverse_iteration(m: &DenseMatrix, lambda: Complex64) -> Result<Vec<Complex64>> {
    let n = m.rows();
    if n != m.cols() {
        return Err(Error::InvalidDimension("inverse iteration on non-square matrix".into()));
    }
    let scale = m.norm_max().max(1.0);
    let mut jitter = 1e-10 * (lambda.norm() + 1.0);
    // deterministic start vector with no special structure
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut v: Vec<Complex64> = (0..n).map(|_| Complex64::new(next(), next())).collect();
    let nv = complex_norm(&v);
    for z in v.iter_mut() {
        *z /= nv;
    }

    for _attempt in 0..4 {
        let shift = lambda + Complex64::new(jitter, 0.0);
        let data: Vec<Complex64> = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut z = Complex64::new(m.at(i, j), 0.0);
                if i == j {
                    z -= shift;
                }
                z
            })
            .collect();
        let lu = match ComplexLu::factor(n, data) {
            Ok(f) => f,
            Err(_) => {
                jitter *= 97.0;
                continue;
            }
        };
        let mut w = v.clone();
        for _ in 0..6 {
            w = lu.solve(&w);
            let norm = complex_norm(&w);
            if !norm.is_finite() || norm == 0.0 {
                break;
            }
            for z in w.iter_mut() {
                *z /= norm;
            }
            // residual ||Mv - lambda v||
            let mut res = 0.0;
            for i in 0..n {
                let mut acc = -lambda * w[i];
                for j in 0..n {
                    acc += m.at(i, j) * w[j];
                }
                res += acc.norm_sqr();
            }
            if res.sqrt() <= 1e-10 * scale {
                return Ok(w);
            }
        }
        v = w;
        jitter *= 97.0;
    }
    Err(Error::EigensolverFailure(format!(
        "inverse iteration did not isolate the eigenvector for {lambda}"
    )))
}
