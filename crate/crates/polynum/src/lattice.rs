//! Face lattices of convex polytopes, built compositionally.
//!
//! A `Polytope` stores exact vertex coordinates plus the full face
//! lattice as vertex-id sets graded by dimension, with the empty face
//! carried explicitly at dimension -1. Constructors build the lattice
//! combinatorially; the general hull computation lives in `hull` and is
//! used only as a test oracle.

use crate::linalg;
use crate::rat::{rat, ratio, Rat};
use crate::{Error, Result};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// One face: its sorted vertex ids, its dimension, and the ids of its
/// codimension-1 subfaces. The empty face has dim -1 and no vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertex_ids: Vec<u32>,
    pub dim: i32,
    pub facets: Vec<u32>,
}

/// A polytope with its full face lattice. Faces are sorted by
/// (dimension, vertex ids), so id 0 is the empty face and the last id is
/// the polytope itself.
#[derive(Debug, Clone)]
pub struct Polytope {
    pub ambient_dim: usize,
    pub dim: i32,
    pub coords: Vec<Vec<Rat>>,
    pub faces: Vec<Face>,
}

/// Sorted-slice subset test.
pub fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Fixed-width bitsets over vertex ids, used for fast subset tests.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertSet {
    words: Vec<u64>,
}

impl VertSet {
    pub fn from_ids(ids: &[u32], nverts: usize) -> VertSet {
        let mut words = vec![0u64; nverts.div_ceil(64).max(1)];
        for &v in ids {
            words[(v / 64) as usize] |= 1 << (v % 64);
        }
        VertSet { words }
    }

    pub fn contains_all(&self, other: &VertSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == *b)
    }

    pub fn contains(&self, v: u32) -> bool {
        self.words[(v / 64) as usize] & (1 << (v % 64)) != 0
    }
}

impl Polytope {
    pub fn empty_id(&self) -> u32 {
        0
    }

    pub fn top_id(&self) -> u32 {
        (self.faces.len() - 1) as u32
    }

    pub fn face(&self, id: u32) -> &Face {
        &self.faces[id as usize]
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    /// Ids of all nonempty faces, in lattice order.
    pub fn nonempty_face_ids(&self) -> impl Iterator<Item = u32> {
        1..=self.top_id()
    }

    pub fn faces_of_dim(&self, k: i32) -> Vec<u32> {
        self.nonempty_face_ids()
            .filter(|&f| self.face(f).dim == k)
            .collect()
    }

    /// Face counts by dimension 0..=d; the top face contributes 1 in
    /// position d.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; (self.dim.max(0) as usize) + 1];
        for id in self.nonempty_face_ids() {
            f[self.face(id).dim as usize] += 1;
        }
        f
    }

    pub fn face_contains_vertex(&self, face: u32, v: u32) -> bool {
        self.face(face).vertex_ids.binary_search(&v).is_ok()
    }

    /// Bitsets for every face, indexed by face id.
    pub fn face_bitsets(&self) -> Vec<VertSet> {
        self.faces
            .iter()
            .map(|f| VertSet::from_ids(&f.vertex_ids, self.vertex_count()))
            .collect()
    }

    /// The smallest face containing the given vertex set, if any.
    pub fn carrier(&self, verts: &[u32]) -> Option<u32> {
        let mut best: Option<u32> = None;
        for id in self.nonempty_face_ids() {
            let f = self.face(id);
            if is_subset(verts, &f.vertex_ids)
                && best.is_none_or(|b| f.dim < self.face(b).dim)
            {
                best = Some(id);
            }
        }
        best
    }

    /// Coordinates of the listed vertices, in the given order.
    pub fn points(&self, ids: &[u32]) -> Vec<Vec<Rat>> {
        ids.iter().map(|&v| self.coords[v as usize].clone()).collect()
    }

    /// Vertex barycenter, exact.
    pub fn barycenter(&self) -> Vec<Rat> {
        let n = self.coords.len() as i128;
        let mut b = vec![Rat::zero(); self.ambient_dim];
        for p in &self.coords {
            for (acc, x) in b.iter_mut().zip(p) {
                *acc += x.clone();
            }
        }
        for acc in b.iter_mut() {
            *acc *= ratio(1, n);
        }
        b
    }
}

/// Builds a `Polytope` from coordinates and face vertex sets. Sets are
/// deduplicated; the empty face is added; dimensions come from exact
/// affine rank; incidence links each face to its codimension-1 subfaces.
pub fn assemble(ambient_dim: usize, coords: Vec<Vec<Rat>>, sets: Vec<Vec<u32>>) -> Polytope {
    let nverts = coords.len();
    assert!(nverts > 0, "a polytope needs at least one vertex");
    for c in &coords {
        assert_eq!(c.len(), ambient_dim, "coordinate width mismatch");
    }
    {
        let mut seen = BTreeSet::new();
        for c in &coords {
            assert!(seen.insert(c.clone()), "duplicate vertex coordinates");
        }
    }

    let mut unique: BTreeSet<Vec<u32>> = BTreeSet::new();
    unique.insert(Vec::new());
    for mut s in sets {
        s.sort_unstable();
        s.dedup();
        assert!(s.iter().all(|&v| (v as usize) < nverts), "face cites unknown vertex");
        unique.insert(s);
    }
    let full: Vec<u32> = (0..nverts as u32).collect();
    assert!(unique.contains(&full), "missing top face");

    let mut graded: Vec<(i32, Vec<u32>)> = unique
        .into_iter()
        .map(|s| {
            let dim = if s.is_empty() {
                -1
            } else {
                let pts: Vec<Vec<Rat>> =
                    s.iter().map(|&v| coords[v as usize].clone()).collect();
                linalg::affine_dim(&pts)
            };
            (dim, s)
        })
        .collect();
    graded.sort();

    let dim = graded.last().unwrap().0;
    let nfaces = graded.len();
    let bitsets: Vec<VertSet> = graded
        .iter()
        .map(|(_, s)| VertSet::from_ids(s, nverts))
        .collect();

    // Vertex coverage: every vertex must be a face of dimension 0.
    let mut vertex_faces = 0usize;
    for (d, s) in &graded {
        if *d == 0 {
            assert_eq!(s.len(), 1, "0-face with several distinct vertices");
            vertex_faces += 1;
        }
    }
    assert_eq!(vertex_faces, nverts, "some vertex has no 0-face");

    // Incidence: group ids by dimension and test subsets across
    // consecutive grades.
    let mut by_dim: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
    for (id, (d, _)) in graded.iter().enumerate() {
        by_dim.entry(*d).or_default().push(id as u32);
    }
    let mut facets: Vec<Vec<u32>> = vec![Vec::new(); nfaces];
    for (&d, ids) in &by_dim {
        if d == -1 {
            continue;
        }
        let below = by_dim.get(&(d - 1)).map(Vec::as_slice).unwrap_or(&[]);
        for &f in ids {
            for &g in below {
                if bitsets[f as usize].contains_all(&bitsets[g as usize]) {
                    facets[f as usize].push(g);
                }
            }
        }
    }

    let faces: Vec<Face> = graded
        .into_iter()
        .zip(facets)
        .map(|((dim, vertex_ids), facets)| Face {
            vertex_ids,
            dim,
            facets,
        })
        .collect();

    Polytope {
        ambient_dim,
        dim,
        coords,
        faces,
    }
}

/// Structural checks: grading, meet-closure, the Euler relation, and
/// incidence consistency. Intended for tests and verification suites,
/// not hot paths.
pub fn check_lattice(p: &Polytope) -> Result<()> {
    let err = |m: String| Err(Error::Inconsistent(m));
    if p.faces.is_empty() || p.face(0).dim != -1 {
        return err("missing empty face".into());
    }
    if p.face(p.top_id()).vertex_ids.len() != p.vertex_count() {
        return err("top face does not cite every vertex".into());
    }
    // Dimensions are affine dimensions and the grading is sorted.
    let mut prev = -1;
    for id in 0..p.faces.len() as u32 {
        let f = p.face(id);
        if f.dim < prev {
            return err("faces not sorted by dimension".into());
        }
        prev = f.dim;
        let pts: Vec<Vec<Rat>> = f
            .vertex_ids
            .iter()
            .map(|&v| p.coords[v as usize].clone())
            .collect();
        if linalg::affine_dim(&pts) != f.dim {
            return err(format!("face {id} has wrong dimension"));
        }
    }
    // Meet closure: pairwise intersections are faces.
    let sets: BTreeSet<&[u32]> = p.faces.iter().map(|f| f.vertex_ids.as_slice()).collect();
    for a in &p.faces {
        for b in &p.faces {
            let meet: Vec<u32> = a
                .vertex_ids
                .iter()
                .copied()
                .filter(|v| b.vertex_ids.binary_search(v).is_ok())
                .collect();
            if !sets.contains(meet.as_slice()) {
                return err(format!(
                    "intersection {meet:?} of two faces is not a face"
                ));
            }
        }
    }
    // Euler relation over proper faces (trivial for dim <= 0).
    if p.dim >= 1 {
        let f = p.f_vector();
        let mut sum: i64 = 0;
        for (k, &count) in f.iter().enumerate().take(p.dim as usize) {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            sum += sign * count as i64;
        }
        let expect = 1 + if (p.dim - 1) % 2 == 0 { 1 } else { -1 };
        if sum != expect {
            return err(format!("Euler relation fails: {sum} vs {expect}"));
        }
    }
    // Incidence lists hold exactly the codimension-1 subfaces.
    for id in 0..p.faces.len() as u32 {
        let f = p.face(id);
        for &g in &f.facets {
            let gf = p.face(g);
            if gf.dim != f.dim - 1 || !is_subset(&gf.vertex_ids, &f.vertex_ids) {
                return err(format!("bad facet link {g} under face {id}"));
            }
        }
        let count = p
            .faces
            .iter()
            .filter(|g| g.dim == f.dim - 1 && is_subset(&g.vertex_ids, &f.vertex_ids))
            .count();
        if count != f.facets.len() {
            return err(format!("face {id} misses a facet link"));
        }
    }
    Ok(())
}

fn unit_vec(ambient: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); ambient];
    v[i] = rat(1);
    v
}

/// Standard simplex on e_1..e_{d+1} with every vertex subset a face.
pub fn make_simplex(d: u32) -> Result<Polytope> {
    if d > 16 {
        return Err(Error::OutOfRange(format!("simplex dimension {d} too large")));
    }
    let n = (d + 1) as usize;
    let coords: Vec<Vec<Rat>> = (0..n).map(|i| unit_vec(n, i)).collect();
    let mut sets = Vec::with_capacity(1 << n);
    for mask in 1u32..(1 << n) {
        sets.push((0..n as u32).filter(|i| mask >> i & 1 == 1).collect());
    }
    Ok(assemble(n, coords, sets))
}

/// Cross polytope on +-e_1..+-e_d; a vertex subset is a face exactly
/// when it holds no antipodal pair.
pub fn make_cross(d: u32) -> Result<Polytope> {
    if d == 0 {
        return Err(Error::OutOfRange("cross polytope needs d >= 1".into()));
    }
    if d > 10 {
        return Err(Error::OutOfRange(format!("cross dimension {d} too large")));
    }
    let du = d as usize;
    let mut coords = Vec::with_capacity(2 * du);
    for i in 0..du {
        coords.push(unit_vec(du, i));
        let mut neg = unit_vec(du, i);
        neg[i] = rat(-1);
        coords.push(neg);
    }
    // Vertex ids: +e_i is 2i, -e_i is 2i+1.
    let mut sets: Vec<Vec<u32>> = Vec::new();
    for axes in 1u32..(1 << d) {
        let chosen: Vec<u32> = (0..d).filter(|i| axes >> i & 1 == 1).collect();
        let k = chosen.len();
        for signs in 0u32..(1 << k) {
            sets.push(
                chosen
                    .iter()
                    .enumerate()
                    .map(|(j, &i)| 2 * i + (signs >> j & 1))
                    .collect(),
            );
        }
    }
    sets.push((0..2 * d).collect());
    Ok(assemble(du, coords, sets))
}

/// Cube on {0,1}^d; faces fix a coordinate subset to constants. These
/// coordinates are affinely equivalent to the symmetric {-1,1}^d cube
/// and give the same lattice and the same polytope numbers.
pub fn make_cube(d: u32) -> Result<Polytope> {
    if d > 10 {
        return Err(Error::OutOfRange(format!("cube dimension {d} too large")));
    }
    let du = d as usize;
    let coords: Vec<Vec<Rat>> = (0..1u32 << d)
        .map(|m| (0..du).map(|j| rat((m >> j & 1) as i128)).collect())
        .collect();
    let mut sets: Vec<Vec<u32>> = Vec::new();
    for fixed in 0u32..(1 << d) {
        let mut vals = fixed;
        loop {
            // vals runs over all submasks of fixed.
            sets.push(
                (0..1u32 << d)
                    .filter(|m| m & fixed == vals)
                    .collect(),
            );
            if vals == 0 {
                break;
            }
            vals = (vals - 1) & fixed;
        }
    }
    Ok(assemble(du, coords, sets))
}

/// Hypersimplex: convex hull of the 0/1 vectors in R^d with exactly k
/// ones. Faces arise by pinning index sets to 0 and 1; a pattern is
/// nonempty exactly when |I1| <= k and |I0| <= d-k.
pub fn make_hypersimplex(d: u32, k: u32) -> Result<Polytope> {
    if d < 2 || k == 0 || k >= d {
        return Err(Error::OutOfRange(format!(
            "hypersimplex needs d >= 2 and 1 <= k <= d-1, got d={d} k={k}"
        )));
    }
    if d > 12 {
        return Err(Error::OutOfRange(format!("hypersimplex d={d} too large")));
    }
    let du = d as usize;
    let masks: Vec<u32> = (0..1u32 << d).filter(|m| m.count_ones() == k).collect();
    let coords: Vec<Vec<Rat>> = masks
        .iter()
        .map(|m| (0..du).map(|j| rat((m >> j & 1) as i128)).collect())
        .collect();
    let id_of = |m: u32| masks.binary_search(&m).unwrap() as u32;
    let mut sets: Vec<Vec<u32>> = Vec::new();
    for fixed in 0u32..(1 << d) {
        let mut ones = fixed;
        loop {
            let zeros = fixed & !ones;
            if ones.count_ones() <= k && zeros.count_ones() <= d - k {
                sets.push(
                    masks
                        .iter()
                        .filter(|&&m| m & fixed == ones)
                        .map(|&m| id_of(m))
                        .collect(),
                );
            }
            if ones == 0 {
                break;
            }
            ones = (ones - 1) & fixed;
        }
    }
    Ok(assemble(du, coords, sets))
}

/// Pyramid: base at height 0, one new apex at height 1. Faces are the
/// base's faces plus their cones over the apex.
pub fn pyramid(p: &Polytope) -> Polytope {
    let ambient = p.ambient_dim + 1;
    let mut coords: Vec<Vec<Rat>> = p
        .coords
        .iter()
        .map(|c| {
            let mut v = c.clone();
            v.push(Rat::zero());
            v
        })
        .collect();
    let mut apex = vec![Rat::zero(); ambient];
    apex[ambient - 1] = rat(1);
    coords.push(apex);
    let apex_id = p.vertex_count() as u32;

    let mut sets: Vec<Vec<u32>> = vec![vec![apex_id]];
    for id in p.nonempty_face_ids() {
        let base = p.face(id).vertex_ids.clone();
        let mut coned = base.clone();
        coned.push(apex_id);
        sets.push(base);
        sets.push(coned);
    }
    assemble(ambient, coords, sets)
}

/// Bipyramid: two apexes over the barycenter at heights +-1. Faces are
/// the proper faces of the base plus their pyramids over each apex; the
/// base itself is not a face. The barycenter must be interior, which
/// holds for every constructor family here.
pub fn bipyramid(p: &Polytope) -> Polytope {
    let ambient = p.ambient_dim + 1;
    if p.dim == 0 {
        // The lone base vertex lands inside the new segment.
        let mut lo = p.coords[0].clone();
        let mut hi = p.coords[0].clone();
        lo.push(rat(-1));
        hi.push(rat(1));
        return assemble(ambient, vec![lo, hi], vec![vec![0], vec![1], vec![0, 1]]);
    }
    let bary = p.barycenter();
    let mut coords: Vec<Vec<Rat>> = p
        .coords
        .iter()
        .map(|c| {
            let mut v = c.clone();
            v.push(Rat::zero());
            v
        })
        .collect();
    for sign in [1i128, -1] {
        let mut a = bary.clone();
        a.push(rat(sign));
        coords.push(a);
    }
    let top_apex = p.vertex_count() as u32;
    let bot_apex = top_apex + 1;

    let mut sets: Vec<Vec<u32>> = vec![vec![top_apex], vec![bot_apex]];
    for id in p.nonempty_face_ids() {
        if id == p.top_id() {
            continue;
        }
        let base = p.face(id).vertex_ids.clone();
        for apex in [top_apex, bot_apex] {
            let mut coned = base.clone();
            coned.push(apex);
            sets.push(coned);
        }
        sets.push(base);
    }
    sets.push((0..bot_apex + 1).collect());
    assemble(ambient, coords, sets)
}

/// Product polytope; nonempty faces are exactly the products of
/// nonempty faces.
pub fn product(p: &Polytope, q: &Polytope) -> Polytope {
    let ambient = p.ambient_dim + q.ambient_dim;
    let qn = q.vertex_count() as u32;
    let mut coords = Vec::with_capacity(p.vertex_count() * q.vertex_count());
    for a in &p.coords {
        for b in &q.coords {
            let mut v = a.clone();
            v.extend(b.iter().cloned());
            coords.push(v);
        }
    }
    let mut sets = Vec::new();
    for fp in p.nonempty_face_ids() {
        for fq in q.nonempty_face_ids() {
            let mut s = Vec::new();
            for &i in &p.face(fp).vertex_ids {
                for &j in &q.face(fq).vertex_ids {
                    s.push(i * qn + j);
                }
            }
            sets.push(s);
        }
    }
    assemble(ambient, coords, sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_f_vectors() {
        let p = make_simplex(3).unwrap();
        assert_eq!(p.dim, 3);
        assert_eq!(p.ambient_dim, 4);
        assert_eq!(p.f_vector(), vec![4, 6, 4, 1]);
        check_lattice(&p).unwrap();
        let pt = make_simplex(0).unwrap();
        assert_eq!(pt.dim, 0);
        assert_eq!(pt.f_vector(), vec![1]);
    }

    #[test]
    fn cross_f_vectors() {
        let p = make_cross(3).unwrap();
        assert_eq!(p.f_vector(), vec![6, 12, 8, 1]);
        check_lattice(&p).unwrap();
        let p4 = make_cross(4).unwrap();
        assert_eq!(p4.f_vector(), vec![8, 24, 32, 16, 1]);
    }

    #[test]
    fn cube_f_vectors() {
        let p = make_cube(3).unwrap();
        assert_eq!(p.f_vector(), vec![8, 12, 6, 1]);
        check_lattice(&p).unwrap();
        assert_eq!(make_cube(0).unwrap().dim, 0);
        assert_eq!(make_cube(1).unwrap().f_vector(), vec![2, 1]);
    }

    #[test]
    fn hypersimplex_octahedron() {
        // d=4, k=2 is a regular octahedron sitting in R^4.
        let p = make_hypersimplex(4, 2).unwrap();
        assert_eq!(p.dim, 3);
        assert_eq!(p.f_vector(), vec![6, 12, 8, 1]);
        check_lattice(&p).unwrap();
        assert!(make_hypersimplex(3, 3).is_err());
        assert!(make_hypersimplex(1, 1).is_err());
    }

    #[test]
    fn hypersimplex_extremes_are_simplexlike() {
        // k=1 gives the standard simplex (as a hull of unit vectors).
        let p = make_hypersimplex(4, 1).unwrap();
        assert_eq!(p.dim, 3);
        assert_eq!(p.f_vector(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn pyramid_and_bipyramid_shapes() {
        let sq = make_cube(2).unwrap();
        let pyr = pyramid(&sq);
        assert_eq!(pyr.f_vector(), vec![5, 8, 5, 1]);
        check_lattice(&pyr).unwrap();

        let bip = bipyramid(&sq);
        assert_eq!(bip.f_vector(), vec![6, 12, 8, 1]);
        check_lattice(&bip).unwrap();

        // bipyramid over a point degenerates to a segment.
        let seg = bipyramid(&make_simplex(0).unwrap());
        assert_eq!(seg.dim, 1);
        assert_eq!(seg.f_vector(), vec![2, 1]);

        // bipyramid over a segment is a square (4 vertices, 4 edges).
        let sq2 = bipyramid(&make_simplex(1).unwrap());
        assert_eq!(sq2.f_vector(), vec![4, 4, 1]);
    }

    #[test]
    fn bipyramid_of_cross_is_next_cross() {
        let b3 = make_cross(3).unwrap();
        let b4 = bipyramid(&b3);
        assert_eq!(b4.f_vector(), make_cross(4).unwrap().f_vector());
        check_lattice(&b4).unwrap();
    }

    #[test]
    fn product_prism() {
        let prism = product(&make_simplex(2).unwrap(), &make_simplex(1).unwrap());
        assert_eq!(prism.dim, 3);
        assert_eq!(prism.f_vector(), vec![6, 9, 5, 1]);
        check_lattice(&prism).unwrap();

        // Product of segments is a cube.
        let seg = make_cube(1).unwrap();
        let sq = product(&seg, &seg);
        assert_eq!(sq.f_vector(), vec![4, 4, 1]);
        let c3 = product(&sq, &seg);
        assert_eq!(c3.f_vector(), vec![8, 12, 6, 1]);
    }

    #[test]
    fn carrier_finds_smallest_face() {
        let sq = make_cube(2).unwrap();
        // Vertices 0 and 1 differ in coordinate 0 only, so their
        // carrier is the edge fixing coordinate 1 to zero.
        let c = sq.carrier(&[0, 1]).unwrap();
        assert_eq!(sq.face(c).dim, 1);
        // 0 and 3 are diagonal; the carrier is the square itself.
        let c = sq.carrier(&[0, 3]).unwrap();
        assert_eq!(c, sq.top_id());
    }

    #[test]
    fn subset_helper() {
        assert!(is_subset(&[], &[1, 2]));
        assert!(is_subset(&[2], &[1, 2, 3]));
        assert!(!is_subset(&[0], &[1, 2]));
        assert!(!is_subset(&[1, 4], &[1, 2, 3]));
    }
}
