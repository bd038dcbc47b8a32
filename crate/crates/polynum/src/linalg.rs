//! Small exact linear algebra over `Rat`.
//!
//! Everything here runs on tiny matrices (ambient dimension at most a
//! hand count), so plain rational Gaussian elimination is the right
//! tool; no pivot-size tricks are needed for exactness.

use crate::rat::Rat;
use num::{One, Zero};

/// Row-reduces `m` in place and returns its rank.
pub fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for c2 in c..cols {
                    let s = m[r][c2].clone() * f.clone();
                    m[i][c2] -= s;
                }
            }
        }
        r += 1;
    }
    r
}

/// Affine dimension of a point set (-1 for the empty set).
pub fn affine_dim(points: &[Vec<Rat>]) -> i32 {
    if points.is_empty() {
        return -1;
    }
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| sub(p, &points[0]))
        .collect();
    rank(diffs) as i32
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Determinant by rational elimination ( small matrices only).
pub fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut result = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(c, p);
            result = -result;
        }
        result *= m[c][c].clone();
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone() * inv.clone();
                for c2 in c..n {
                    let s = m[c][c2].clone() * f.clone();
                    m[i][c2] -= s;
                }
            }
        }
    }
    result
}

/// Solves the square system `a * x = b` by exact Gauss-Jordan elimination.
/// Returns None when the matrix is singular.
pub fn solve_square(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), n);
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        let inv = a[c][c].recip();
        for v in a[c][c..].iter_mut() {
            *v *= inv;
        }
        b[c] *= inv;
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for c2 in c..n {
                    let s = a[c][c2].clone() * f.clone();
                    a[i][c2] -= s;
                }
                let s = b[c].clone() * f;
                b[i] -= s;
            }
        }
    }
    Some(b)
}

/// An exact coordinate frame for the affine hull of a point set.
///
/// `origin` is one of the points; `basis` spans the hull's direction
/// space. `coords` re-expresses an ambient point in the frame, erroring
/// (None) when the point is outside the hull.
pub struct AffineFrame {
    pub origin: Vec<Rat>,
    pub basis: Vec<Vec<Rat>>,
}

impl AffineFrame {
    pub fn for_points(points: &[Vec<Rat>]) -> AffineFrame {
        assert!(!points.is_empty(), "frame needs at least one point");
        let origin = points[0].clone();
        let mut basis: Vec<Vec<Rat>> = Vec::new();
        for p in &points[1..] {
            let d = sub(p, &origin);
            let mut m: Vec<Vec<Rat>> = basis.clone();
            m.push(d.clone());
            if rank(m) > basis.len() {
                basis.push(d);
            }
        }
        AffineFrame { origin, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Jacobian scale of the frame: |det| of the basis when it is square
    /// (the hull is full-dimensional), 1 otherwise. Frame-relative volumes
    /// times this scale give ambient volumes in the square case; lower
    /// dimensional hulls keep the frame-relative normalization, which is
    /// the one rational volumes live in.
    pub fn scale(&self) -> Rat {
        if !self.basis.is_empty() && self.basis.len() == self.origin.len() {
            let d = det(self.basis.clone());
            if d < Rat::zero() {
                -d
            } else {
                d
            }
        } else {
            Rat::one()
        }
    }

    /// Solves `sum_i x_i basis_i = p - origin` exactly.
    pub fn coords(&self, p: &[Rat]) -> Option<Vec<Rat>> {
        let t = sub(p, &self.origin);
        let k = self.basis.len();
        let m = t.len();
        // Augmented system: columns are basis vectors, last column is t.
        let mut aug: Vec<Vec<Rat>> = (0..m)
            .map(|row| {
                let mut r: Vec<Rat> = self.basis.iter().map(|b| b[row].clone()).collect();
                r.push(t[row].clone());
                r
            })
            .collect();
        let mut x = vec![Rat::zero(); k];
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..k {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
                continue;
            };
            aug.swap(r, p);
            let inv = aug[r][c].recip();
            for v in aug[r].iter_mut() {
                *v *= inv.clone();
            }
            for i in 0..m {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for c2 in c..=k {
                        let s = aug[r][c2].clone() * f.clone();
                        aug[i][c2] -= s;
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        // Basis vectors are independent, so every column is a pivot.
        debug_assert_eq!(pivots.len(), k);
        for &(row, col) in &pivots {
            x[col] = aug[row][k].clone();
        }
        // Rows below the pivots must vanish, else p is outside the hull.
        for row in aug.iter().skip(r) {
            if !row[k].is_zero() {
                return None;
            }
        }
        Some(x)
    }
}

/// A hyperplane `normal . x = offset` inside a d-dimensional space,
/// spanned by d affinely independent points. Returns None when the
/// points are dependent.
pub fn hyperplane_through(points: &[Vec<Rat>]) -> Option<(Vec<Rat>, Rat)> {
    let d = points[0].len();
    assert_eq!(points.len(), d, "need exactly d points in d-space");
    if d == 0 {
        return None;
    }
    // Solve for the null vector of the (d-1) x d difference matrix.
    let diffs: Vec<Vec<Rat>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    let normal = null_vector(&diffs, d)?;
    let offset = dot(&normal, &points[0]);
    Some((normal, offset))
}

/// A nonzero vector orthogonal to every row of `rows` (each of width
/// `width`), when the rows have rank `width - 1`.
fn null_vector(rows: &[Vec<Rat>], width: usize) -> Option<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    let mut pivot_col = vec![usize::MAX; nrows];
    let mut r = 0;
    for c in 0..width {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= inv.clone();
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for c2 in c..width {
                    let s = m[r][c2].clone() * f.clone();
                    m[i][c2] -= s;
                }
            }
        }
        pivot_col[r] = c;
        r += 1;
    }
    if r != width - 1 {
        return None;
    }
    let pivots: Vec<usize> = pivot_col[..r].to_vec();
    let free = (0..width).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rat::zero(); width];
    x[free] = Rat::one();
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = -m[row][free].clone();
    }
    Some(x)
}

/// Volume of the simplex spanned by `d+1` points of affine dimension d,
/// measured inside the given frame. Zero signals degeneracy.
pub fn simplex_volume_in_frame(frame: &AffineFrame, points: &[Vec<Rat>]) -> Rat {
    let d = frame.dim();
    assert_eq!(points.len(), d + 1);
    let local: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| frame.coords(p).expect("simplex vertex outside hull"))
        .collect();
    let m: Vec<Vec<Rat>> = local[1..].iter().map(|p| sub(p, &local[0])).collect();
    let mut v = det(m);
    if v < Rat::zero() {
        v = -v;
    }
    let mut fact = Rat::one();
    for i in 1..=d as i128 {
        fact *= Rat::from_integer(i);
    }
    v / fact
}
