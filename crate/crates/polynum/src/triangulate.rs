//! Pointed triangulations driven by a generic linear functional.
//!
//! Every nonempty face F gets an apex: the vertex minimizing the functional
//! over F. The maximal simplexes are spanned by the apexes along maximal
//! face chains F_1 ⊋ F_2 ⊋ ... where each apex leaves the chain at the next
//! step. Dimensions drop by exactly one along such a chain, so a d-face
//! contributes simplexes of d + 1 affinely independent apexes.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::lattice::{is_subset, Polytope};
use crate::linalg::{affine_dim, simplex_volume_in_frame, AffineFrame};
use crate::rat::{rat, Rat};
use crate::{Error, Result};

/// Linear functional with a symbolic lexicographic tie break.
///
/// Points compare by (c.x, x). This is the exact limit of the perturbed
/// functional c + (t, t^2, ..., t^m) as t -> 0+, so on any finite vertex set
/// it behaves like a linear functional in general position: distinct points
/// never tie.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericFunctional {
    coeffs: Vec<Rat>,
}

impl GenericFunctional {
    pub fn new(coeffs: Vec<Rat>) -> GenericFunctional {
        GenericFunctional { coeffs }
    }

    /// Default functional c_i = i + 1 over the ambient coordinates.
    pub fn index(ambient_dim: usize) -> GenericFunctional {
        GenericFunctional {
            coeffs: (0..ambient_dim).map(|i| rat(i as i128 + 1)).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn value(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.coeffs.len(), "functional arity mismatch");
        self.coeffs
            .iter()
            .zip(point)
            .map(|(c, x)| *c * *x)
            .fold(rat(0), |a, b| a + b)
    }

    pub fn cmp_points(&self, u: &[Rat], v: &[Rat]) -> Ordering {
        self.value(u).cmp(&self.value(v)).then_with(|| u.cmp(v))
    }

    /// The vertex among `ids` minimizing the functional. Unique by the tie
    /// break, so this is a valid apex choice for any face.
    pub fn min_vertex(&self, p: &Polytope, ids: &[u32]) -> u32 {
        assert!(!ids.is_empty(), "min_vertex needs a nonempty vertex set");
        let mut best = ids[0];
        for &v in &ids[1..] {
            if self.cmp_points(&p.coords[v as usize], &p.coords[best as usize])
                == Ordering::Less
            {
                best = v;
            }
        }
        best
    }

    /// Rank of every vertex in the functional's strict total order
    /// (0 = smallest).
    pub fn vertex_ranks(&self, p: &Polytope) -> Vec<usize> {
        let mut order: Vec<u32> = (0..p.vertex_count() as u32).collect();
        order.sort_by(|&a, &b| {
            self.cmp_points(&p.coords[a as usize], &p.coords[b as usize])
        });
        let mut rank = vec![0usize; order.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v as usize] = r;
        }
        rank
    }
}

const NO_APEX: u32 = u32::MAX;

/// Apex of every nonempty face, indexed by face id. The empty face holds a
/// sentinel.
#[derive(Clone, Debug)]
pub struct ApexAssignment {
    pub apex: Vec<u32>,
}

impl ApexAssignment {
    pub fn of(&self, face_id: u32) -> u32 {
        let a = self.apex[face_id as usize];
        assert_ne!(a, NO_APEX, "empty face has no apex");
        a
    }
}

/// Assigns each nonempty face its functional-minimal vertex. Agreement on
/// intersections holds automatically: if both apexes lie in F1 ∩ F2 they
/// are both the minimum of F1 ∩ F2.
pub fn assign_apexes(p: &Polytope, f: &GenericFunctional) -> ApexAssignment {
    let mut apex = vec![NO_APEX; p.faces.len()];
    for id in p.nonempty_face_ids() {
        apex[id as usize] = f.min_vertex(p, &p.face(id).vertex_ids);
    }
    ApexAssignment { apex }
}

/// Maximal simplexes of a pointed triangulation, as sorted vertex id sets.
#[derive(Clone, Debug)]
pub struct PointedTriangulation {
    pub dim: i32,
    pub apexes: ApexAssignment,
    pub simplexes: Vec<Vec<u32>>,
}

/// Builds the pointed triangulation induced by the functional.
pub fn build_triangulation(
    p: &Polytope,
    f: &GenericFunctional,
) -> Result<PointedTriangulation> {
    let apexes = assign_apexes(p, f);
    let simplexes = chain_simplexes(p, &apexes, p.top_id())?;
    Ok(PointedTriangulation {
        dim: p.dim,
        apexes,
        simplexes,
    })
}

/// All chain simplexes of the face `root`: one per maximal chain of faces
/// below `root` whose apexes leave the chain at every step. Sorted, distinct.
pub fn chain_simplexes(
    p: &Polytope,
    apexes: &ApexAssignment,
    root: u32,
) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut chain = Vec::new();
    descend(p, apexes, root, &mut chain, &mut out)?;
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort();
    for w in out.windows(2) {
        assert_ne!(w[0], w[1], "chains map to distinct simplexes");
    }
    Ok(out)
}

fn descend(
    p: &Polytope,
    apexes: &ApexAssignment,
    face_id: u32,
    chain: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) -> Result<()> {
    let v = apexes.of(face_id);
    chain.push(v);
    let face = p.face(face_id);
    if face.dim == 0 {
        let pts = p.points(chain);
        if affine_dim(&pts) as usize != chain.len() - 1 {
            chain.pop();
            return Err(Error::DegenerateChain(format!(
                "apexes {:?} are affinely dependent",
                chain
            )));
        }
        out.push(chain.clone());
    } else {
        for &g in &face.facets {
            if !p.face_contains_vertex(g, v) {
                descend(p, apexes, g, chain, out)?;
            }
        }
    }
    chain.pop();
    Ok(())
}

/// Triangulation induced on a face: its own chain simplexes under the same
/// apex assignment.
pub fn sub_triangulation(
    p: &Polytope,
    t: &PointedTriangulation,
    face_id: u32,
) -> Result<Vec<Vec<u32>>> {
    chain_simplexes(p, &t.apexes, face_id)
}

/// Every nonempty simplex of the complex: all nonempty subsets of maximal
/// simplex vertex sets, each listed once, ordered by (size, ids).
pub fn complex_faces(t: &PointedTriangulation) -> Vec<Vec<u32>> {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    for s in &t.simplexes {
        let n = s.len();
        assert!(n <= 32, "simplex too large for subset masks");
        for mask in 1u64..(1u64 << n) {
            let sub: Vec<u32> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| s[i])
                .collect();
            seen.insert(sub);
        }
    }
    let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Face counts of the simplicial complex by dimension, indices 0..=dim.
pub fn complex_f_vector(t: &PointedTriangulation) -> Vec<u64> {
    let mut f = vec![0u64; (t.dim.max(0) as usize) + 1];
    for s in complex_faces(t) {
        f[s.len() - 1] += 1;
    }
    f
}

/// Whether a complex simplex meets the interior of the polytope. Its
/// carrier is the smallest face containing its vertices, so it meets the
/// interior exactly when no facet contains the whole vertex set.
pub fn meets_interior(p: &Polytope, verts: &[u32]) -> bool {
    let top = p.face(p.top_id());
    top.facets
        .iter()
        .all(|&fac| !is_subset(verts, &p.face(fac).vertex_ids))
}

/// Checks the pointed triangulation conditions, plus that the induced
/// complex on every face is a pure covering triangulation of that face.
/// The first violation is reported with a witness.
pub fn validate_pointed(p: &Polytope, t: &PointedTriangulation) -> Result<()> {
    let d = p.dim;
    if t.simplexes.is_empty() {
        return Err(Error::Inconsistent("no maximal simplexes".into()));
    }
    for s in &t.simplexes {
        if s.len() as i32 != d + 1 {
            return Err(Error::Inconsistent(format!(
                "simplex {:?} does not have {} vertices",
                s,
                d + 1
            )));
        }
        if affine_dim(&p.points(s)) != d {
            return Err(Error::Inconsistent(format!(
                "simplex {:?} is affinely degenerate",
                s
            )));
        }
    }

    let bitsets = p.face_bitsets();
    for id in p.nonempty_face_ids() {
        let face = p.face(id);
        let vf = t.apexes.of(id);
        if !p.face_contains_vertex(id, vf) {
            return Err(Error::Inconsistent(format!(
                "apex {} is not a vertex of face {}",
                vf, id
            )));
        }

        // Maximal simplexes induced on this face.
        let mut pieces: BTreeSet<Vec<u32>> = BTreeSet::new();
        for s in &t.simplexes {
            let cut: Vec<u32> = s
                .iter()
                .copied()
                .filter(|&v| bitsets[id as usize].contains(v))
                .collect();
            if !cut.is_empty() {
                pieces.insert(cut);
            }
        }
        let pieces: Vec<Vec<u32>> = pieces
            .iter()
            .filter(|a| {
                !pieces
                    .iter()
                    .any(|b| b.len() > a.len() && is_subset(a, b))
            })
            .cloned()
            .collect();

        for piece in &pieces {
            if piece.len() as i32 != face.dim + 1 {
                return Err(Error::Inconsistent(format!(
                    "induced complex on face {} is not pure: piece {:?}",
                    id, piece
                )));
            }
            if !piece.contains(&vf) {
                return Err(Error::Inconsistent(format!(
                    "condition 1: simplex {:?} of face {} misses apex {}",
                    piece, id, vf
                )));
            }
        }

        // Covering: exact volumes of the pieces sum to the face volume.
        if face.dim > 0 {
            let frame = AffineFrame::for_points(&p.points(&face.vertex_ids));
            let total = pieces
                .iter()
                .map(|piece| simplex_volume_in_frame(&frame, &p.points(piece)))
                .fold(rat(0), |a, b| a + b)
                * frame.scale();
            let expect = crate::hull::volume_by_pyramids(p, id);
            if total != expect {
                return Err(Error::Inconsistent(format!(
                    "face {} covered with volume {} of {}",
                    id, total, expect
                )));
            }
        } else if pieces.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "vertex face {} induced {} pieces",
                id,
                pieces.len()
            )));
        }

        for &w in &face.vertex_ids {
            if w != vf && !pieces.iter().any(|s| s.contains(&vf) && s.contains(&w)) {
                return Err(Error::Inconsistent(format!(
                    "condition 3: edge [{}, {}] missing from face {}",
                    vf, w, id
                )));
            }
        }
    }

    let ids: Vec<u32> = p.nonempty_face_ids().collect();
    for (i, &f1) in ids.iter().enumerate() {
        for &f2 in &ids[i + 1..] {
            let v1 = t.apexes.of(f1);
            let v2 = t.apexes.of(f2);
            if v1 != v2
                && bitsets[f1 as usize].contains(v2)
                && bitsets[f2 as usize].contains(v1)
            {
                return Err(Error::Inconsistent(format!(
                    "condition 2: faces {} and {} share apexes {} and {}",
                    f1, f2, v1, v2
                )));
            }
        }
    }
    Ok(())
}
