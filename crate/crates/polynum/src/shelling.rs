//! Shellings of pointed triangulations.
//!
//! The maximal simplexes all share the top apex, so two of them can only
//! meet in a facet that contains it, and shelling them is equivalent to
//! shelling the opposite boundary simplexes. A valid shelling step glues
//! the new simplex along l of its facets with 1 <= l <= d - 1; the vector
//! a_i = #{steps with l = i} (with a_0 = 1 for the seed simplex) is
//! independent of the shelling order and gives the first decomposition of
//! the polytope number against top-dimensional simplex numbers.

use std::collections::BTreeSet;
use std::collections::HashMap;

use crate::budget::Budget;
use crate::lattice::Polytope;
use crate::triangulate::{GenericFunctional, PointedTriangulation};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ShellingOrder {
    /// Indices into the triangulation's simplex list, in shelling order.
    pub order: Vec<usize>,
    /// Number of previously covered facets each simplex glues along;
    /// the seed entry is 0.
    pub l_counts: Vec<usize>,
}

/// Coefficients a_0..a_{d-1}: a_0 = 1, a_i = #{j : l_j = i}.
pub fn attach_vector(sh: &ShellingOrder, d: i32) -> Vec<i128> {
    let len = (d.max(1)) as usize;
    let mut a = vec![0i128; len];
    a[0] = 1;
    for &l in sh.l_counts.iter().skip(1) {
        a[l] += 1;
    }
    a
}

/// Grows a shelling greedily (functional-ranked priority), backtracking
/// when stuck. Each step must glue along at least one and at most d - 1
/// covered facets, and the glued region must be exactly a union of facets.
pub fn shell(
    p: &Polytope,
    t: &PointedTriangulation,
    f: &GenericFunctional,
    budget: &Budget,
) -> Result<ShellingOrder> {
    let n = t.simplexes.len();
    assert!(n > 0, "cannot shell an empty triangulation");
    let d = t.dim.max(0) as usize;
    let verts_per = d + 1;

    if n == 1 {
        return Ok(ShellingOrder {
            order: vec![0],
            l_counts: vec![0],
        });
    }

    // Priority: sum of functional ranks, then the vertex tuple.
    let rank = f.vertex_ranks(p);
    let priority: Vec<(usize, &[u32])> = t
        .simplexes
        .iter()
        .map(|s| {
            (
                s.iter().map(|&v| rank[v as usize]).sum::<usize>(),
                s.as_slice(),
            )
        })
        .collect();

    // adj[s][k] = the simplex sharing the facet of s opposite position k.
    let mut facet_map: HashMap<Vec<u32>, Vec<(u32, u8)>> = HashMap::new();
    for (si, s) in t.simplexes.iter().enumerate() {
        for k in 0..verts_per {
            let mut key = s.clone();
            key.remove(k);
            facet_map.entry(key).or_default().push((si as u32, k as u8));
        }
    }
    let mut adj: Vec<Vec<Option<(u32, u8)>>> = vec![vec![None; verts_per]; n];
    for owners in facet_map.values() {
        assert!(
            owners.len() <= 2,
            "facet shared by more than two simplexes"
        );
        if let [(s1, k1), (s2, k2)] = owners[..] {
            adj[s1 as usize][k1 as usize] = Some((s2, k2));
            adj[s2 as usize][k2 as usize] = Some((s1, k1));
        }
    }

    let max_l = if d >= 2 { d - 1 } else { d };
    let words = n.div_ceil(64);
    let mut used = vec![false; n];
    let mut masks = vec![0u64; n];
    let mut used_with = vec![vec![0u64; words]; p.vertex_count()];
    let mut active: BTreeSet<u32> = BTreeSet::new();
    let mut meter = budget.shelling_meter();

    // Covered facets of an unused candidate, as dropped positions.
    let covered = |masks: &[u64], si: usize| -> Vec<usize> {
        (0..verts_per).filter(|&k| masks[si] >> k & 1 == 1).collect()
    };
    let is_valid = |masks: &[u64], used_with: &[Vec<u64>], si: usize| -> bool {
        let c = covered(masks, si);
        if c.is_empty() || c.len() > max_l {
            return false;
        }
        // No used simplex may contain every vertex of C, else the glued
        // region would exceed the covered facets.
        let s = &t.simplexes[si];
        let mut inter = used_with[s[c[0]] as usize].clone();
        for &k in &c[1..] {
            let mut any = false;
            for (w, uw) in inter.iter_mut().zip(&used_with[s[k] as usize]) {
                *w &= uw;
                any |= *w != 0;
            }
            if !any {
                return true;
            }
        }
        inter.iter().all(|&w| w == 0)
    };

    // Valid candidates at the current state, best priority first.
    let candidates = |masks: &[u64],
                      used: &[bool],
                      used_with: &[Vec<u64>],
                      active: &BTreeSet<u32>,
                      depth: usize|
     -> Vec<usize> {
        let mut list: Vec<usize> = if depth == 0 {
            (0..n).collect()
        } else {
            active
                .iter()
                .map(|&s| s as usize)
                .filter(|&s| !used[s] && is_valid(masks, used_with, s))
                .collect()
        };
        list.sort_by_key(|&s| priority[s]);
        list
    };

    // DFS with recomputed candidate lists: the stack stores only the rank
    // of the choice taken at each depth, so memory stays linear.
    let mut stack: Vec<usize> = Vec::new();
    let mut order: Vec<usize> = Vec::new();
    let mut l_counts: Vec<usize> = Vec::new();
    let mut resume = 0usize;

    loop {
        let depth = order.len();
        if depth == n {
            return Ok(ShellingOrder { order, l_counts });
        }
        let cands = candidates(&masks, &used, &used_with, &active, depth);
        if resume < cands.len() {
            let si = cands[resume];
            meter.tick(1)?;
            l_counts.push(covered(&masks, si).len());
            used[si] = true;
            active.remove(&(si as u32));
            for &v in &t.simplexes[si] {
                used_with[v as usize][si / 64] |= 1 << (si % 64);
            }
            for k in 0..verts_per {
                if let Some((o, ok)) = adj[si][k] {
                    let o = o as usize;
                    if !used[o] {
                        masks[o] |= 1 << ok;
                        active.insert(o as u32);
                    }
                }
            }
            stack.push(resume);
            order.push(si);
            resume = 0;
        } else {
            // Exhausted this depth; undo the previous choice.
            let Some(prev_rank) = stack.pop() else {
                return Err(Error::SearchExhausted(format!(
                    "no shelling within the step constraints for {} simplexes",
                    n
                )));
            };
            let si = order.pop().expect("order parallels stack");
            l_counts.pop();
            for k in 0..verts_per {
                if let Some((o, ok)) = adj[si][k] {
                    let o = o as usize;
                    if !used[o] {
                        masks[o] &= !(1u64 << ok);
                        if masks[o] == 0 {
                            active.remove(&(o as u32));
                        }
                    }
                }
            }
            for &v in &t.simplexes[si] {
                used_with[v as usize][si / 64] &= !(1u64 << (si % 64));
            }
            used[si] = false;
            if masks[si] != 0 {
                active.insert(si as u32);
            }
            resume = prev_rank + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_cross, make_cube, make_simplex, product};
    use crate::triangulate::build_triangulation;

    fn shelled(p: &Polytope) -> (PointedTriangulation, ShellingOrder) {
        let f = GenericFunctional::index(p.ambient_dim);
        let t = build_triangulation(p, &f).unwrap();
        let sh = shell(p, &t, &f, &Budget::default()).unwrap();
        (t, sh)
    }

    fn attach(p: &Polytope) -> Vec<i128> {
        let (t, sh) = shelled(p);
        assert_eq!(sh.order.len(), t.simplexes.len());
        assert_eq!(sh.l_counts[0], 0);
        attach_vector(&sh, t.dim)
    }

    #[test]
    fn single_simplex_families() {
        assert_eq!(attach(&make_simplex(1).unwrap()), vec![1]);
        assert_eq!(attach(&make_simplex(3).unwrap()), vec![1, 0, 0]);
        assert_eq!(attach(&make_cube(0).unwrap()), vec![1]);
    }

    #[test]
    fn cube_attach_vectors_are_eulerian() {
        assert_eq!(attach(&make_cube(2).unwrap()), vec![1, 1]);
        assert_eq!(attach(&make_cube(3).unwrap()), vec![1, 4, 1]);
        assert_eq!(attach(&make_cube(4).unwrap()), vec![1, 11, 11, 1]);
    }

    #[test]
    fn cross_attach_vectors_are_binomial() {
        assert_eq!(attach(&make_cross(3).unwrap()), vec![1, 2, 1]);
        assert_eq!(attach(&make_cross(4).unwrap()), vec![1, 3, 3, 1]);
    }

    #[test]
    fn prism_attach_vector() {
        let prism = product(&make_simplex(2).unwrap(), &make_simplex(1).unwrap());
        assert_eq!(attach(&prism), vec![1, 2, 0]);
    }

    #[test]
    fn attach_vector_is_order_independent() {
        let cube = make_cube(3).unwrap();
        let f1 = GenericFunctional::index(3);
        let f2 = GenericFunctional::new(vec![
            crate::rat::rat(-7),
            crate::rat::rat(3),
            crate::rat::rat(-1),
        ]);
        let t1 = build_triangulation(&cube, &f1).unwrap();
        let t2 = build_triangulation(&cube, &f2).unwrap();
        let s1 = shell(&cube, &t1, &f1, &Budget::default()).unwrap();
        let s2 = shell(&cube, &t2, &f2, &Budget::default()).unwrap();
        assert_eq!(attach_vector(&s1, 3), attach_vector(&s2, 3));
        assert_ne!(t1.simplexes, t2.simplexes);
    }

    #[test]
    fn deterministic_order() {
        let cube = make_cube(3).unwrap();
        let f = GenericFunctional::index(3);
        let t = build_triangulation(&cube, &f).unwrap();
        let a = shell(&cube, &t, &f, &Budget::default()).unwrap();
        let b = shell(&cube, &t, &f, &Budget::default()).unwrap();
        assert_eq!(a.order, b.order);
        assert_eq!(a.l_counts, b.l_counts);
    }

    #[test]
    fn budget_trips() {
        let cube = make_cube(3).unwrap();
        let f = GenericFunctional::index(3);
        let t = build_triangulation(&cube, &f).unwrap();
        let tiny = Budget {
            max_points: 1000,
            max_shelling_expansions: 2,
        };
        let err = shell(&cube, &t, &f, &tiny).unwrap_err();
        assert!(matches!(err, Error::Budget(_)), "{err}");
    }
}
