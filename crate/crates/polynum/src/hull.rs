//! Brute-force convex hull face enumeration, used as an independent
//! oracle against the combinatorial constructors.
//!
//! Every candidate supporting hyperplane through an affinely
//! independent point subset is tested for one-sidedness; contact sets of
//! one-sided hyperplanes are facets, and the rest of the lattice is the
//! meet-closure of the facet sets. Exponential, so inputs are capped.

use crate::lattice::{assemble, Polytope};
use crate::linalg::{self, AffineFrame};
use crate::rat::Rat;
use crate::{Error, Result};
use num::{One, Signed, Zero};
use std::collections::BTreeSet;

const MAX_ORACLE_VERTS: usize = 14;
const MAX_ORACLE_DIM: i32 = 5;

/// Computes the full face lattice of conv(coords) from scratch.
/// Points must be pairwise distinct and in convex position.
pub fn brute_force_faces(ambient_dim: usize, coords: Vec<Vec<Rat>>) -> Result<Polytope> {
    let n = coords.len();
    if n == 0 {
        return Err(Error::OracleInput("no points".into()));
    }
    if n > MAX_ORACLE_VERTS {
        return Err(Error::OracleInput(format!(
            "{n} points exceed the oracle cap of {MAX_ORACLE_VERTS}"
        )));
    }
    let d = linalg::affine_dim(&coords);
    if d > MAX_ORACLE_DIM {
        return Err(Error::OracleInput(format!(
            "affine dimension {d} exceeds the oracle cap of {MAX_ORACLE_DIM}"
        )));
    }
    if d == 0 {
        return Ok(assemble(ambient_dim, coords, vec![vec![0]]));
    }

    // Work in local coordinates of the affine hull so hyperplanes there
    // are honest supporting hyperplanes even for non-full-dimensional
    // input.
    let frame = AffineFrame::for_points(&coords);
    let local: Vec<Vec<Rat>> = coords
        .iter()
        .map(|p| {
            frame
                .coords(p)
                .ok_or_else(|| Error::OracleInput("point outside its own affine hull".into()))
        })
        .collect::<Result<_>>()?;

    let du = d as usize;
    let mut facet_sets: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut subset = vec![0usize; du];
    enumerate_subsets(n, du, 0, 0, &mut subset, &mut |chosen| {
        let pts: Vec<Vec<Rat>> = chosen.iter().map(|&i| local[i].clone()).collect();
        let Some((normal, offset)) = linalg::hyperplane_through(&pts) else {
            return;
        };
        let mut pos = false;
        let mut neg = false;
        let mut contact: Vec<u32> = Vec::new();
        for (i, p) in local.iter().enumerate() {
            let side = linalg::dot(&normal, p) - offset.clone();
            if side.is_zero() {
                contact.push(i as u32);
            } else if side.is_positive() {
                pos = true;
            } else {
                neg = true;
            }
            if pos && neg {
                return;
            }
        }
        facet_sets.insert(contact);
    });

    // Meet-closure of the facets yields every proper face.
    let mut sets: BTreeSet<Vec<u32>> = facet_sets.clone();
    let mut frontier: Vec<Vec<u32>> = sets.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for f in &facet_sets {
            let meet: Vec<u32> = s
                .iter()
                .copied()
                .filter(|v| f.binary_search(v).is_ok())
                .collect();
            if !meet.is_empty() && !sets.contains(&meet) {
                sets.insert(meet.clone());
                frontier.push(meet);
            }
        }
    }
    for v in 0..n as u32 {
        if !sets.contains(&vec![v]) {
            return Err(Error::OracleInput(format!(
                "point {v} is not a vertex of the hull"
            )));
        }
    }
    sets.insert((0..n as u32).collect());
    Ok(assemble(ambient_dim, coords, sets.into_iter().collect()))
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    start: usize,
    depth: usize,
    buf: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        visit(buf);
        return;
    }
    for i in start..n {
        buf[depth] = i;
        enumerate_subsets(n, k, i + 1, depth + 1, buf, visit);
    }
}

/// Exact volume of a face, computed by recursively coning each face over
/// its least vertex. Full-dimensional faces get the ambient volume;
/// lower-dimensional ones are measured in their own vertex frame, where
/// the value stays rational. Needs only the face lattice and coordinates,
/// so it applies to oracle output too.
pub fn volume_by_pyramids(p: &Polytope, face_id: u32) -> Rat {
    let face = p.face(face_id);
    assert!(face.dim >= 0, "volume of the empty face");
    if face.dim == 0 {
        return Rat::one();
    }
    let pts: Vec<Vec<Rat>> = face
        .vertex_ids
        .iter()
        .map(|&v| p.coords[v as usize].clone())
        .collect();
    let frame = AffineFrame::for_points(&pts);
    let simplexes = triangulate_by_cones(p, face_id);
    let mut total = Rat::zero();
    for s in simplexes {
        let verts: Vec<Vec<Rat>> = s.iter().map(|&v| p.coords[v as usize].clone()).collect();
        total += linalg::simplex_volume_in_frame(&frame, &verts);
    }
    total * frame.scale()
}

/// Triangulates a face by repeatedly coning over its least vertex id.
/// Returns vertex-id lists, each of length dim+1.
pub fn triangulate_by_cones(p: &Polytope, face_id: u32) -> Vec<Vec<u32>> {
    let face = p.face(face_id);
    if face.vertex_ids.len() as i32 == face.dim + 1 {
        return vec![face.vertex_ids.clone()];
    }
    let v = face.vertex_ids[0];
    let mut out = Vec::new();
    for &g in &face.facets {
        if p.face_contains_vertex(g, v) {
            continue;
        }
        for mut s in triangulate_by_cones(p, g) {
            s.push(v);
            s.sort_unstable();
            out.push(s);
        }
    }
    out
}

/// True when two polytopes have identical vertex coordinates and
/// identical face lattices (as vertex-id sets).
pub fn lattices_equal(a: &Polytope, b: &Polytope) -> bool {
    if a.coords != b.coords || a.dim != b.dim {
        return false;
    }
    let fa: BTreeSet<&[u32]> = a.faces.iter().map(|f| f.vertex_ids.as_slice()).collect();
    let fb: BTreeSet<&[u32]> = b.faces.iter().map(|f| f.vertex_ids.as_slice()).collect();
    fa == fb
}
