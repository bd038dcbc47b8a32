//! Polytope numbers three ways: a face recurrence, a vertex description,
//! and a geometric description over the pointed triangulation.
//!
//! The recurrence peels one layer: P(n) = P(n - 1) plus the interior
//! counts, at n, of every face avoiding the top apex. Interior numbers
//! subtract every proper face's interior from the total. Base cases:
//! vertices count 0, 1, 1, ...; higher faces start P(0) = 0, P(1) = 1 and
//! have empty interiors at n <= 1.

use std::collections::{BTreeSet, HashMap};

use crate::budget::Budget;
use crate::identities::binomial;
use crate::lattice::Polytope;
use crate::rat::{rat, Rat};
use crate::triangulate::{
    complex_faces, meets_interior, ApexAssignment, GenericFunctional,
    PointedTriangulation,
};
use crate::{Error, Result};

/// alpha^d(n) as a count: C(n - 1 + d, d) for n >= 1, else 0.
pub fn simplex_number(d: u32, n: i128) -> i128 {
    if n <= 0 {
        0
    } else {
        binomial(n - 1 + d as i128, d as i128)
    }
}

/// Memoized face recurrence over one polytope.
pub struct NumberContext<'a> {
    p: &'a Polytope,
    apexes: ApexAssignment,
    subfaces: Vec<Vec<u32>>,
    poly: HashMap<(u32, u32), i128>,
    interior: HashMap<(u32, u32), i128>,
}

/// Proper nonempty subfaces of every face, by vertex set inclusion.
fn subface_lists(p: &Polytope) -> Vec<Vec<u32>> {
    let bits = p.face_bitsets();
    let mut out = vec![Vec::new(); p.faces.len()];
    for f in p.nonempty_face_ids() {
        for g in p.nonempty_face_ids() {
            if g != f && bits[f as usize].contains_all(&bits[g as usize]) {
                out[f as usize].push(g);
            }
        }
    }
    out
}

impl<'a> NumberContext<'a> {
    pub fn new(p: &'a Polytope, f: &GenericFunctional) -> NumberContext<'a> {
        NumberContext::with_apexes(p, crate::triangulate::assign_apexes(p, f))
    }

    pub fn with_apexes(p: &'a Polytope, apexes: ApexAssignment) -> NumberContext<'a> {
        NumberContext {
            p,
            apexes,
            subfaces: subface_lists(p),
            poly: HashMap::new(),
            interior: HashMap::new(),
        }
    }

    pub fn polytope(&self) -> &Polytope {
        self.p
    }

    pub fn apexes(&self) -> &ApexAssignment {
        &self.apexes
    }

    pub fn poly_number(&mut self, face: u32, n: u32) -> i128 {
        if let Some(&v) = self.poly.get(&(face, n)) {
            return v;
        }
        let dim = self.p.face(face).dim;
        assert!(dim >= 0, "numbers of the empty face");
        let v = if dim == 0 || n <= 1 {
            i128::from(n >= 1)
        } else {
            let apex = self.apexes.of(face);
            let mut acc = self.poly_number(face, n - 1);
            for g in self.subfaces[face as usize].clone() {
                if !self.p.face_contains_vertex(g, apex) {
                    acc += self.interior_number(g, n);
                }
            }
            acc
        };
        self.poly.insert((face, n), v);
        v
    }

    pub fn interior_number(&mut self, face: u32, n: u32) -> i128 {
        if let Some(&v) = self.interior.get(&(face, n)) {
            return v;
        }
        let dim = self.p.face(face).dim;
        assert!(dim >= 0, "numbers of the empty face");
        let v = if dim == 0 {
            i128::from(n >= 1)
        } else if n <= 1 {
            0
        } else {
            let mut acc = self.poly_number(face, n);
            for g in self.subfaces[face as usize].clone() {
                acc -= self.interior_number(g, n);
            }
            acc
        };
        self.interior.insert((face, n), v);
        v
    }

    pub fn number(&mut self, n: u32) -> i128 {
        self.poly_number(self.p.top_id(), n)
    }

    pub fn interior(&mut self, n: u32) -> i128 {
        self.interior_number(self.p.top_id(), n)
    }

    /// P(0..=n_max), or the interior variant.
    pub fn sequence(&mut self, n_max: u32, interior: bool) -> Vec<i128> {
        (0..=n_max)
            .map(|n| {
                if interior {
                    self.interior(n)
                } else {
                    self.number(n)
                }
            })
            .collect()
    }
}

fn add_scaled(acc: &mut [Rat], point: &[Rat], w: i128) {
    for (a, x) in acc.iter_mut().zip(point) {
        *a += *x * rat(w);
    }
}

/// Weighted vertex sums over one simplex: all nonnegative integer weight
/// vectors of total n - 1 applied to the vertices.
fn simplex_grid(
    p: &Polytope,
    verts: &[u32],
    n: u32,
    out: &mut BTreeSet<Vec<Rat>>,
    meter: &mut crate::budget::Meter,
) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    let total = n - 1;
    let dim = p.ambient_dim;
    let mut acc = vec![rat(0); dim];
    fn rec(
        p: &Polytope,
        verts: &[u32],
        left: i128,
        i: usize,
        acc: &mut Vec<Rat>,
        out: &mut BTreeSet<Vec<Rat>>,
        meter: &mut crate::budget::Meter,
    ) -> Result<()> {
        if i + 1 == verts.len() {
            let mut point = acc.clone();
            add_scaled(&mut point, &p.coords[verts[i] as usize], left);
            meter.tick(1)?;
            out.insert(point);
            return Ok(());
        }
        for w in 0..=left {
            let mut next = acc.clone();
            add_scaled(&mut next, &p.coords[verts[i] as usize], w);
            rec(p, verts, left - w, i + 1, &mut next, out, meter)?;
        }
        Ok(())
    }
    rec(p, verts, total as i128, 0, &mut acc, out, meter)
}

/// Point sets of the geometric description: (all points, interior points).
///
/// The full set is the union of the maximal simplex grids; the boundary is
/// the union of the grids of codimension-1 complex simplexes that lie in a
/// facet of P.
pub fn geometric_sets(
    p: &Polytope,
    t: &PointedTriangulation,
    n: u32,
    budget: &Budget,
) -> Result<(BTreeSet<Vec<Rat>>, BTreeSet<Vec<Rat>>)> {
    let mut meter = budget.points_meter();
    let mut all = BTreeSet::new();
    for s in &t.simplexes {
        simplex_grid(p, s, n, &mut all, &mut meter)?;
    }
    let mut boundary = BTreeSet::new();
    if t.dim >= 1 {
        for tau in complex_faces(t) {
            if tau.len() as i32 == t.dim && !meets_interior(p, &tau) {
                simplex_grid(p, &tau, n, &mut boundary, &mut meter)?;
            }
        }
    }
    let inner: BTreeSet<Vec<Rat>> = all.difference(&boundary).cloned().collect();
    Ok((all, inner))
}

/// Point sets of the vertex description: (all points, interior points).
///
/// A point is a sum over a weakly decreasing chain of n - 1 nonempty
/// faces of their apexes. Chains factor into a strictly decreasing face
/// chain plus positive multiplicities, which is how they are enumerated.
/// Interior points are the ones no proper face's chains reach.
pub fn vertex_description_sets(
    p: &Polytope,
    apexes: &ApexAssignment,
    n: u32,
    budget: &Budget,
) -> Result<(BTreeSet<Vec<Rat>>, BTreeSet<Vec<Rat>>)> {
    let mut meter = budget.points_meter();
    let subfaces = subface_lists(p);
    let nfaces = p.faces.len();
    // starts[f] = points of chains whose largest face is exactly f.
    let mut starts: Vec<BTreeSet<Vec<Rat>>> = vec![BTreeSet::new(); nfaces];
    if n >= 1 {
        let steps = (n - 1) as i128;
        for f in p.nonempty_face_ids() {
            if steps == 0 {
                // Empty chain: the zero point, reached from every face.
                starts[f as usize].insert(vec![rat(0); p.ambient_dim]);
                continue;
            }
            let mut acc = vec![rat(0); p.ambient_dim];
            chain_rec(
                p, apexes, &subfaces, f, steps, &mut acc,
                &mut starts[f as usize], &mut meter,
            )?;
        }
    }
    let top = p.top_id();
    let mut all: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut proper: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for f in p.nonempty_face_ids() {
        all.extend(starts[f as usize].iter().cloned());
        if f != top {
            proper.extend(starts[f as usize].iter().cloned());
        }
    }
    let inner: BTreeSet<Vec<Rat>> = all.difference(&proper).cloned().collect();
    Ok((all, inner))
}

/// Spends `left` steps on `face` (at least one) and recurses into proper
/// subfaces with the remainder.
fn chain_rec(
    p: &Polytope,
    apexes: &ApexAssignment,
    subfaces: &[Vec<u32>],
    face: u32,
    left: i128,
    acc: &mut Vec<Rat>,
    out: &mut BTreeSet<Vec<Rat>>,
    meter: &mut crate::budget::Meter,
) -> Result<()> {
    let apex = apexes.of(face);
    for m in 1..=left {
        let mut here = acc.clone();
        add_scaled(&mut here, &p.coords[apex as usize], m);
        if m == left {
            meter.tick(1)?;
            out.insert(here);
        } else {
            for &g in &subfaces[face as usize] {
                chain_rec(p, apexes, subfaces, g, left - m, &mut here, out, meter)?;
            }
        }
    }
    Ok(())
}

/// Exact polynomial in n, ascending coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialForm {
    pub coeffs: Vec<Rat>,
}

impl PolynomialForm {
    pub fn eval(&self, n: i128) -> Rat {
        let x = rat(n);
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + *c;
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != rat(0))
            .unwrap_or(0)
    }
}

/// Interpolates the degree-d polynomial through P(1), ..., P(d + 1) and
/// verifies it against P(d + 2), ..., P(d + 4). Polytope numbers agree
/// with a degree-d polynomial for every n >= 1 (not at n = 0 in general).
pub fn interpolate_polynomial(ctx: &mut NumberContext) -> Result<PolynomialForm> {
    let top = ctx.polytope().top_id();
    let d = ctx.polytope().dim.max(0) as usize;
    let xs: Vec<i128> = (1..=d as i128 + 1).collect();
    let ys: Vec<i128> = xs.iter().map(|&x| ctx.poly_number(top, x as u32)).collect();

    let mut coeffs = vec![rat(0); d + 1];
    for i in 0..xs.len() {
        // Lagrange basis polynomial for node i, accumulated exactly.
        let mut basis = vec![rat(0); d + 1];
        basis[0] = rat(1);
        let mut deg = 0;
        let mut denom = rat(1);
        for j in 0..xs.len() {
            if i == j {
                continue;
            }
            denom *= rat(xs[i] - xs[j]);
            // basis *= (x - xs[j])
            for k in (0..=deg).rev() {
                let b = basis[k];
                basis[k + 1] += b;
                basis[k] = -b * rat(xs[j]);
            }
            deg += 1;
        }
        let w = rat(ys[i]) / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += *b * w;
        }
    }
    let form = PolynomialForm { coeffs };
    for m in d as i128 + 2..=d as i128 + 4 {
        let expect = ctx.poly_number(top, m as u32);
        if form.eval(m) != rat(expect) {
            return Err(Error::Inconsistent(format!(
                "interpolated polynomial misses P({m}) = {expect}"
            )));
        }
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{
        make_cross, make_cube, make_hypersimplex, make_simplex, product, pyramid,
    };
    use crate::rat::ratio;
    use crate::triangulate::build_triangulation;

    fn ctx(p: &Polytope) -> NumberContext<'_> {
        NumberContext::new(p, &GenericFunctional::index(p.ambient_dim))
    }

    #[test]
    fn simplex_closed_form() {
        for d in 0..=4u32 {
            let p = make_simplex(d.max(1)).unwrap();
            let mut c = ctx(&p);
            if d >= 1 {
                for n in 0..=10u32 {
                    assert_eq!(c.number(n), simplex_number(d, n as i128), "d={d} n={n}");
                }
            }
        }
        assert_eq!(simplex_number(3, 4), 20);
        assert_eq!(simplex_number(0, 7), 1);
    }

    #[test]
    fn cube_numbers_are_powers() {
        for d in 2..=4u32 {
            let p = make_cube(d).unwrap();
            let mut c = ctx(&p);
            for n in 0..=6u32 {
                assert_eq!(c.number(n), (n as i128).pow(d));
            }
        }
    }

    #[test]
    fn cross_numbers() {
        let p = make_cross(3).unwrap();
        let mut c = ctx(&p);
        assert_eq!(c.sequence(5, false), vec![0, 1, 6, 19, 44, 85]);

        let p = make_cross(4).unwrap();
        let mut c = ctx(&p);
        for n in 1..=5i128 {
            assert_eq!(c.number(n as u32), n * n * (n * n + 2) / 3);
        }
    }

    #[test]
    fn square_pyramid_numbers() {
        let p = pyramid(&make_cube(2).unwrap());
        let mut c = ctx(&p);
        assert_eq!(c.sequence(5, false), vec![0, 1, 5, 14, 30, 55]);
    }

    #[test]
    fn interiors() {
        let p = make_cube(3).unwrap();
        let mut c = ctx(&p);
        for n in 2..=6i128 {
            assert_eq!(c.interior(n as u32), (n - 2).max(0).pow(3));
        }
        for d in 1..=3u32 {
            let p = make_simplex(d).unwrap();
            let mut c = ctx(&p);
            for n in 0..=8u32 {
                assert_eq!(
                    c.interior(n),
                    simplex_number(d, n as i128 - d as i128 - 1),
                    "d={d} n={n}"
                );
            }
        }
    }

    #[test]
    fn disjoint_union_identity() {
        for p in [
            make_cube(3).unwrap(),
            make_cross(3).unwrap(),
            pyramid(&make_cube(2).unwrap()),
        ] {
            let mut c = ctx(&p);
            let ids: Vec<u32> = p.nonempty_face_ids().collect();
            for n in [0u32, 2, 3, 4, 5, 6] {
                let total = c.number(n);
                let sum: i128 = ids.iter().map(|&f| c.interior_number(f, n)).sum();
                assert_eq!(total, sum, "n={n}");
            }
            // At n = 1 every face contributes its single point, so the sum
            // counts vertices instead.
            let sum1: i128 = ids.iter().map(|&f| c.interior_number(f, 1)).sum();
            assert_eq!(sum1, p.vertex_count() as i128);
        }
    }

    #[test]
    fn apex_choice_does_not_change_numbers() {
        let p = make_cross(3).unwrap();
        let mut a = NumberContext::new(&p, &GenericFunctional::index(3));
        let mut b = NumberContext::new(
            &p,
            &GenericFunctional::new(vec![rat(-5), rat(2), rat(1)]),
        );
        for n in 0..=7u32 {
            assert_eq!(a.number(n), b.number(n));
            assert_eq!(a.interior(n), b.interior(n));
        }
    }

    #[test]
    fn three_descriptions_agree() {
        let seg = make_simplex(1).unwrap();
        let prism = product(&make_simplex(2).unwrap(), &seg);
        for p in [make_cube(3).unwrap(), make_cross(3).unwrap(), prism] {
            let f = GenericFunctional::index(p.ambient_dim);
            let t = build_triangulation(&p, &f).unwrap();
            let mut c = NumberContext::new(&p, &f);
            let budget = Budget::default();
            for n in 0..=5u32 {
                let (geo, geo_in) = geometric_sets(&p, &t, n, &budget).unwrap();
                let (vtx, vtx_in) =
                    vertex_description_sets(&p, &t.apexes, n, &budget).unwrap();
                assert_eq!(geo, vtx, "point sets at n={n}");
                assert_eq!(geo_in, vtx_in, "interior sets at n={n}");
                assert_eq!(c.number(n), geo.len() as i128, "count at n={n}");
                assert_eq!(c.interior(n), geo_in.len() as i128);
            }
        }
    }

    #[test]
    fn hypersimplex_matches_dilated_lattice_count() {
        let p = make_hypersimplex(4, 2).unwrap();
        let mut c = ctx(&p);
        for n in 1..=6u32 {
            let m = n as i128 - 1;
            let mut count = 0i128;
            for x0 in 0..=m {
                for x1 in 0..=m {
                    for x2 in 0..=m {
                        let x3 = 2 * m - x0 - x1 - x2;
                        if (0..=m).contains(&x3) {
                            count += 1;
                        }
                    }
                }
            }
            assert_eq!(c.number(n), count, "n={n}");
        }
    }

    #[test]
    fn product_numbers_multiply() {
        let a = make_cube(2).unwrap();
        let b = make_simplex(2).unwrap();
        let prod = product(&a, &b);
        let mut ca = ctx(&a);
        let mut cb = ctx(&b);
        let mut cp = ctx(&prod);
        for n in 0..=6u32 {
            assert_eq!(cp.number(n), ca.number(n) * cb.number(n));
            assert_eq!(cp.interior(n), ca.interior(n) * cb.interior(n));
        }
    }

    #[test]
    fn interpolation() {
        let p = make_cube(3).unwrap();
        let form = interpolate_polynomial(&mut ctx(&p)).unwrap();
        assert_eq!(form.coeffs, vec![rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(form.degree(), 3);

        let p = make_cross(3).unwrap();
        let form = interpolate_polynomial(&mut ctx(&p)).unwrap();
        assert_eq!(
            form.coeffs,
            vec![rat(0), ratio(1, 3), rat(0), ratio(2, 3)]
        );
    }

    #[test]
    fn budget_trips_on_enumeration() {
        let p = make_cube(3).unwrap();
        let f = GenericFunctional::index(3);
        let t = build_triangulation(&p, &f).unwrap();
        let tiny = Budget {
            max_points: 3,
            max_shelling_expansions: 100,
        };
        assert!(matches!(
            geometric_sets(&p, &t, 4, &tiny),
            Err(Error::Budget(_))
        ));
        assert!(matches!(
            vertex_description_sets(&p, &t.apexes, 4, &tiny),
            Err(Error::Budget(_))
        ));
    }
}
