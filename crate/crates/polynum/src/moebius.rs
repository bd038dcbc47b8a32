//! Moebius function of the face poset of a simplicial complex, augmented
//! with a top element for the complex's underlying space. On such posets
//! the values follow a sign pattern: mu(F1, F2) = (-1)^(rank difference),
//! except that mu(F1, top) vanishes when F1 lies on the boundary of the
//! underlying space. The same facial data telescopes the polytope number:
//! summing the interior counts of the apex-avoiding subcomplex gives the
//! layer P(n) - P(n-1), which is how the signed decomposition arises.

use std::collections::BTreeSet;

use crate::decompose::decompose_t2;
use crate::lattice::{is_subset, Polytope};
use crate::numbers::{simplex_number, NumberContext};
use crate::triangulate::{complex_faces, meets_interior, PointedTriangulation};

/// Face poset of a simplicial complex plus a synthetic top element.
/// Faces are sorted by (dimension, vertex ids), a linear extension of
/// inclusion; the top element sits at index `faces.len()`.
pub struct FacePoset {
    pub faces: Vec<Vec<u32>>,
    /// Dimension of the complex (largest face dimension).
    pub dim: i32,
}

impl FacePoset {
    /// Builds the poset from the nonempty faces of a complex. The list
    /// must be closed under taking nonempty subsets.
    pub fn new(mut faces: Vec<Vec<u32>>) -> FacePoset {
        for f in &mut faces {
            f.sort_unstable();
        }
        faces.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
        faces.dedup();
        let present: BTreeSet<&[u32]> = faces.iter().map(|f| f.as_slice()).collect();
        for f in &faces {
            assert!(!f.is_empty(), "faces must be nonempty");
            for drop in 0..f.len() {
                if f.len() > 1 {
                    let sub: Vec<u32> = f
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    assert!(present.contains(sub.as_slice()), "complex is not closed");
                }
            }
        }
        let dim = faces.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1);
        FacePoset { faces, dim }
    }

    /// Number of poset elements, including the top.
    pub fn len(&self) -> usize {
        self.faces.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn top(&self) -> usize {
        self.faces.len()
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        if x == y || y == self.top() {
            return true;
        }
        if x == self.top() {
            return false;
        }
        is_subset(&self.faces[x], &self.faces[y])
    }

    /// rank of a face is its dimension; the top ranks one above the
    /// complex.
    pub fn rank(&self, x: usize) -> i32 {
        if x == self.top() {
            self.dim + 1
        } else {
            self.faces[x].len() as i32 - 1
        }
    }

    /// Full Moebius matrix by the defining recursion
    /// mu(x,x) = 1, mu(x,y) = -sum over x <= z < y of mu(x,z).
    /// Incomparable pairs hold 0. Index order is a linear extension, so
    /// every z < y is already computed when y is reached.
    pub fn moebius(&self) -> Vec<Vec<i128>> {
        let m = self.len();
        let mut mu = vec![vec![0i128; m]; m];
        for x in 0..m {
            mu[x][x] = 1;
            for y in x + 1..m {
                if !self.le(x, y) {
                    continue;
                }
                let mut s = 0i128;
                for z in x..y {
                    if self.le(x, z) && self.le(z, y) {
                        s += mu[x][z];
                    }
                }
                mu[x][y] = -s;
            }
        }
        mu
    }

    /// Marks the faces lying on the boundary of the underlying space:
    /// those contained in a free ridge, a (dim-1)-face of exactly one
    /// maximal cell. Requires a pure complex.
    pub fn boundary_mask(&self) -> Vec<bool> {
        let d = self.dim;
        if d <= 0 {
            return vec![false; self.faces.len()];
        }
        let mut free_ridges: Vec<&Vec<u32>> = Vec::new();
        for (i, f) in self.faces.iter().enumerate() {
            if f.len() as i32 - 1 != d - 1 {
                continue;
            }
            let owners = self
                .faces
                .iter()
                .filter(|g| g.len() as i32 - 1 == d && is_subset(f, g))
                .count();
            assert!(owners >= 1, "complex is not pure");
            assert!(owners <= 2, "ridge shared by more than two cells");
            if owners == 1 {
                free_ridges.push(&self.faces[i]);
            }
        }
        self.faces
            .iter()
            .map(|f| free_ridges.iter().any(|r| is_subset(f, r)))
            .collect()
    }
}

/// Verifies the sign/zero pattern of the Moebius function against the
/// recursion: mu(F1, top) = 0 exactly for boundary faces F1, and every
/// other comparable pair gives (-1)^(rank difference). Returns one line
/// per violation.
pub fn pattern_violations(poset: &FacePoset) -> Vec<String> {
    let mu = poset.moebius();
    let boundary = poset.boundary_mask();
    let top = poset.top();
    let mut violations = Vec::new();
    for x in 0..poset.len() {
        for y in x..poset.len() {
            if !poset.le(x, y) {
                continue;
            }
            let expected = if y == top && x != top && boundary[x] {
                0
            } else {
                let diff = (poset.rank(y) - poset.rank(x)) as u32;
                if diff % 2 == 0 {
                    1
                } else {
                    -1
                }
            };
            if mu[x][y] != expected {
                let name = |i: usize| {
                    if i == top {
                        "|C|".to_string()
                    } else {
                        format!("{:?}", poset.faces[i])
                    }
                };
                violations.push(format!(
                    "mu({}, {}) = {}, expected {}",
                    name(x),
                    name(y),
                    mu[x][y],
                    expected
                ));
            }
        }
    }
    violations
}

/// Faces of the triangulation complex that avoid the global apex; this is
/// the subcomplex swept by each new layer S_P(n) minus S_P(n-1).
pub fn apex_avoiding_subcomplex(
    p: &Polytope,
    t: &PointedTriangulation,
) -> Vec<Vec<u32>> {
    let apex = t.apexes.of(p.top_id());
    complex_faces(t)
        .into_iter()
        .filter(|f| !f.contains(&apex))
        .collect()
}

/// Faces of the triangulation complex lying in the polytope's boundary;
/// a sphere-like complex with empty boundary of its own.
pub fn boundary_subcomplex(p: &Polytope, t: &PointedTriangulation) -> Vec<Vec<u32>> {
    complex_faces(t)
        .into_iter()
        .filter(|f| !meets_interior(p, f))
        .collect()
}

/// Report of the combined Moebius checks on one polytope's triangulation.
#[derive(Debug)]
pub struct MoebiusReport {
    /// Sign-pattern violations over the full complex poset.
    pub full_complex: Vec<String>,
    /// Sign-pattern violations over the boundary subcomplex poset.
    pub boundary_complex: Vec<String>,
    /// Violations of the telescoping identities tying the apex-avoiding
    /// subcomplex to the polytope numbers.
    pub telescoping: Vec<String>,
    pub pairs_checked: usize,
}

impl MoebiusReport {
    pub fn ok(&self) -> bool {
        self.full_complex.is_empty()
            && self.boundary_complex.is_empty()
            && self.telescoping.is_empty()
    }
}

/// Runs all Moebius-related checks for one polytope: the sign pattern on
/// the full and boundary complexes, the layer identity
/// P(n) - P(n-1) = sum of interior counts over the apex-avoiding
/// subcomplex, and its closed form through the signed coefficients
/// C(n) = sum (-1)^(d-1-k) b_{k+1} alpha^k(n) with partial sums giving
/// P(n), for n up to n_max.
pub fn moebius_check(p: &Polytope, t: &PointedTriangulation, n_max: u32) -> MoebiusReport {
    let full = FacePoset::new(complex_faces(t));
    let full_complex = pattern_violations(&full);
    let mut pairs_checked = full.len() * full.len();

    let boundary_faces = boundary_subcomplex(p, t);
    let boundary_complex = if boundary_faces.is_empty() {
        Vec::new()
    } else {
        let poset = FacePoset::new(boundary_faces);
        pairs_checked += poset.len() * poset.len();
        pattern_violations(&poset)
    };

    let mut telescoping = Vec::new();
    let d = p.dim;
    let mut ctx = NumberContext::with_apexes(p, t.apexes.clone());
    let sub = apex_avoiding_subcomplex(p, t);
    let mut count_by_dim = vec![0i128; d.max(1) as usize];
    for f in &sub {
        count_by_dim[f.len() - 1] += 1;
    }
    for n in 2..=n_max {
        let lhs = ctx.number(n) - ctx.number(n - 1);
        let rhs: i128 = count_by_dim
            .iter()
            .enumerate()
            .map(|(k, &c)| c * simplex_number(k as u32, n as i128 - k as i128 - 1))
            .sum();
        if lhs != rhs {
            telescoping.push(format!(
                "layer count at n = {n}: P(n)-P(n-1) = {lhs}, subcomplex sum = {rhs}"
            ));
        }
    }
    if d >= 1 {
        let b = decompose_t2(p, t).coeffs;
        let layer_form = |n: i128| -> i128 {
            (0..d as usize)
                .map(|k| {
                    let s = if (d as usize - 1 - k) % 2 == 0 { 1 } else { -1 };
                    s * b[k] * simplex_number(k as u32, n)
                })
                .sum()
        };
        let mut partial = 0i128;
        for n in 1..=n_max {
            partial += layer_form(n as i128);
            if partial != ctx.number(n) {
                telescoping.push(format!(
                    "partial sums at n = {n}: sum of C(i) = {partial}, P(n) = {}",
                    ctx.number(n)
                ));
            }
        }
    }

    MoebiusReport {
        full_complex,
        boundary_complex,
        telescoping,
        pairs_checked,
    }
}
