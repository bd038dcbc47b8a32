//! Rewrites a polytope number sequence as an integer combination of shifted
//! simplex numbers, in five standard shapes:
//!
//! 1   P(n) = Σ a_i α^d(n−i), i = 0..d−1, from a shelling of the triangulation
//! 2   P(n) = Σ (−1)^{d−i} b_i α^i(n), i = 1..d
//! 3-1 P(n) = Σ c_k α^k(n−k), k = 0..d
//! 3-2 P(n) = Σ α^k(n − f(σ)) over apex simplexes σ, grouped by (k, f)
//! 4   P(n) = Σ d_k α^k(n−(k+1)), k = 0..d, over the whole complex
//!
//! Each coefficient vector can be extracted two ways: by counting simplexes
//! of the pointed triangulation, or by solving against known values of P.
//! Both paths are exact and must agree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::budget::Budget;
use crate::identities::{binomial, factorial};
use crate::lattice::{is_subset, Polytope};
use crate::linalg::solve_square;
use crate::numbers::NumberContext;
use crate::rat::{is_integer, rat};
use crate::shelling::{attach_vector, shell};
use crate::triangulate::{
    complex_f_vector, complex_faces, meets_interior, GenericFunctional, PointedTriangulation,
};
use crate::{Error, Result};

/// The degree-k polynomial agreeing with the simplex number C(n-1+k, k) for
/// n >= 1, evaluated at any integer argument. Unlike the count it can be
/// nonzero for n <= 0; shifted decomposition terms rely on those values.
pub fn simplex_polynomial(k: u32, n: i128) -> i128 {
    let mut num = 1i128;
    for t in 0..k as i128 {
        num = num
            .checked_mul(n - 1 + k as i128 - t)
            .expect("simplex polynomial overflow");
    }
    // product of k consecutive integers, so the division is exact
    debug_assert_eq!(num % factorial(k), 0);
    num / factorial(k)
}

fn sign(k: u32) -> i128 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Which of the five decomposition shapes a form is in. The numbering
/// matches the CLI's --theorem values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremTag {
    T1,
    T2,
    T31,
    T32,
    T4,
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremTag::T1 => "1",
            TheoremTag::T2 => "2",
            TheoremTag::T31 => "3-1",
            TheoremTag::T32 => "3-2",
            TheoremTag::T4 => "4",
        };
        f.write_str(s)
    }
}

impl FromStr for TheoremTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremTag> {
        match s {
            "1" => Ok(TheoremTag::T1),
            "2" => Ok(TheoremTag::T2),
            "3-1" => Ok(TheoremTag::T31),
            "3-2" => Ok(TheoremTag::T32),
            "4" => Ok(TheoremTag::T4),
            _ => Err(Error::Parse(format!(
                "unknown theorem tag {s:?} (expected 1, 2, 3-1, 3-2, or 4)"
            ))),
        }
    }
}

/// One summand: coeff * alpha^dim(n - shift). The sign convention of the
/// theorem is already folded into coeff.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub dim: u32,
    pub shift: u32,
    pub coeff: i128,
}

/// A polytope number written as an integer combination of shifted simplex
/// numbers. `coeffs` is the theorem's canonical vector (unsigned counts);
/// `terms` is the fully materialized sum used for evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionForm {
    pub theorem: TheoremTag,
    /// Dimension of the decomposed polytope.
    pub dim: i32,
    /// Canonical coefficient vector. Indexing: theorem 1 is a_0..a_{d-1},
    /// theorem 2 is b_1..b_d, theorems 3-1 and 4 are indexed 0..d, and
    /// theorem 3-2 stores the simplex count per dimension 0..d.
    pub coeffs: Vec<i128>,
    pub terms: Vec<Term>,
}

impl DecompositionForm {
    /// Evaluates the form. P(0) = 0 by convention; the polynomial terms do
    /// not all vanish there (theorem 4 in particular), hence the guard.
    pub fn eval(&self, n: i128) -> i128 {
        if n == 0 {
            return 0;
        }
        self.terms
            .iter()
            .map(|t| t.coeff * simplex_polynomial(t.dim, n - t.shift as i128))
            .sum()
    }

    /// Human-readable description of how coefficient index i maps to a
    /// shifted simplex number, for output metadata.
    pub fn shift_rule(&self) -> &'static str {
        match self.theorem {
            TheoremTag::T1 => "a_i * alpha^d(n-i), i = 0..d-1",
            TheoremTag::T2 => "(-1)^(d-i) * b_i * alpha^i(n), i = 1..d",
            TheoremTag::T31 => "c_k * alpha^k(n-k), k = 0..d",
            TheoremTag::T32 => "alpha^k(n-f) per apex simplex, f = facets in the previous layer",
            TheoremTag::T4 => "d_k * alpha^k(n-(k+1)), k = 0..d",
        }
    }

    fn from_t1_coeffs(dim: i32, a: Vec<i128>) -> DecompositionForm {
        let d = dim.max(0) as u32;
        let terms = a
            .iter()
            .enumerate()
            .map(|(i, &c)| Term {
                dim: d,
                shift: i as u32,
                coeff: c,
            })
            .collect();
        DecompositionForm {
            theorem: TheoremTag::T1,
            dim,
            coeffs: a,
            terms,
        }
    }

    fn from_t2_coeffs(dim: i32, b: Vec<i128>) -> DecompositionForm {
        let terms = b
            .iter()
            .enumerate()
            .map(|(idx, &c)| {
                let i = idx as u32 + 1;
                Term {
                    dim: i,
                    shift: 0,
                    coeff: c * sign(dim as u32 - i),
                }
            })
            .collect();
        DecompositionForm {
            theorem: TheoremTag::T2,
            dim,
            coeffs: b,
            terms,
        }
    }

    fn from_t31_coeffs(dim: i32, c: Vec<i128>) -> DecompositionForm {
        let terms = c
            .iter()
            .enumerate()
            .map(|(k, &coeff)| Term {
                dim: k as u32,
                shift: k as u32,
                coeff,
            })
            .collect();
        DecompositionForm {
            theorem: TheoremTag::T31,
            dim,
            coeffs: c,
            terms,
        }
    }
}

/// Theorem-1 coefficients from the attach counts of a shelling.
pub fn decompose_t1_shelling(
    p: &Polytope,
    t: &PointedTriangulation,
    f: &GenericFunctional,
    budget: &Budget,
) -> Result<DecompositionForm> {
    let sh = shell(p, t, f, budget)?;
    let a = attach_vector(&sh, t.dim);
    Ok(DecompositionForm::from_t1_coeffs(t.dim, a))
}

/// Theorem-1 coefficients solved from P(1)..P(d) with the closed-form
/// inverse a_i = Σ_j (-1)^j C(d+1, j) P(i+1-j).
pub fn decompose_t1_solve(ctx: &mut NumberContext) -> DecompositionForm {
    let d = ctx.polytope().dim;
    debug_assert!(d >= 0);
    let len = d.max(1) as usize;
    let mut a = vec![0i128; len];
    for (i, slot) in a.iter_mut().enumerate() {
        let mut s = 0i128;
        for j in 0..=i {
            s += sign(j as u32)
                * binomial(d as i128 + 1, j as i128)
                * ctx.number((i + 1 - j) as u32);
        }
        *slot = s;
    }
    DecompositionForm::from_t1_coeffs(d, a)
}

/// Theorem-2 coefficients by counting: b_i is the number of i-simplexes of
/// the complex that contain the global apex and meet the interior.
pub fn decompose_t2(p: &Polytope, t: &PointedTriangulation) -> DecompositionForm {
    let d = t.dim;
    assert!(d >= 1, "the signed decomposition needs dimension >= 1");
    let apex = t.apexes.of(p.top_id());
    let mut b = vec![0i128; d as usize];
    for sigma in complex_faces(t) {
        let k = sigma.len() - 1;
        if k >= 1 && sigma.contains(&apex) && meets_interior(p, &sigma) {
            b[k - 1] += 1;
        }
    }
    DecompositionForm::from_t2_coeffs(d, b)
}

/// Theorem-2 coefficients solved from P(1)..P(d) by exact elimination on
/// the system Σ_i (-1)^{d-i} b_i C(n-1+i, i) = P(n), n = 1..d.
pub fn decompose_t2_solve(ctx: &mut NumberContext) -> DecompositionForm {
    let d = ctx.polytope().dim;
    assert!(d >= 1, "the signed decomposition needs dimension >= 1");
    let dd = d as usize;
    let mut m = Vec::with_capacity(dd);
    let mut rhs = Vec::with_capacity(dd);
    for n in 1..=dd {
        let row = (1..=dd)
            .map(|i| {
                rat(sign((dd - i) as u32) * binomial((n - 1 + i) as i128, i as i128))
            })
            .collect();
        m.push(row);
        rhs.push(rat(ctx.number(n as u32)));
    }
    let x = solve_square(m, rhs).expect("the simplex-number system is nonsingular");
    let b = x
        .iter()
        .map(|v| {
            assert!(is_integer(v), "signed coefficients must be integers");
            v.to_integer()
        })
        .collect();
    DecompositionForm::from_t2_coeffs(d, b)
}

/// Theorem-3-1 coefficients by counting: c_k is the number of k-simplexes
/// of the complex containing the global apex (no interior condition).
pub fn decompose_t31(p: &Polytope, t: &PointedTriangulation) -> DecompositionForm {
    let d = t.dim;
    let apex = t.apexes.of(p.top_id());
    let mut c = vec![0i128; d as usize + 1];
    for sigma in complex_faces(t) {
        if sigma.contains(&apex) {
            c[sigma.len() - 1] += 1;
        }
    }
    DecompositionForm::from_t31_coeffs(d, c)
}

/// Theorem-3-1 coefficients solved from P(1)..P(d+1) via the signed Pascal
/// inverse c_i = Σ_{j<=i} (-1)^{i-j} C(i, j) P(j+1).
pub fn decompose_t31_solve(ctx: &mut NumberContext) -> DecompositionForm {
    let d = ctx.polytope().dim;
    debug_assert!(d >= 0);
    let mut c = vec![0i128; d as usize + 1];
    for (i, slot) in c.iter_mut().enumerate() {
        let mut s = 0i128;
        for j in 0..=i {
            s += sign((i - j) as u32)
                * binomial(i as i128, j as i128)
                * ctx.number(j as u32 + 1);
        }
        *slot = s;
    }
    DecompositionForm::from_t31_coeffs(d, c)
}

/// Theorem-3-2 form: one term alpha^k(n-f) per member of a shielded
/// family of apex simplexes, where f counts the member's facets that are
/// themselves in the family.
///
/// The family seeds with the apex vertex and every interior-meeting apex
/// simplex, then closes under pairwise intersection and under connector
/// insertion: when a member sits strictly inside another with no member
/// facet between them, the facet dropping the largest outside vertex is
/// added. Closure makes the cut grids tile the point grid exactly (each
/// point's minimal covering member is unique), so the form evaluates to
/// the polytope number for every polytope; on the standard families the
/// closure adds nothing and the coefficients are the interior layer
/// counts. Terms with equal (k, f) merge.
pub fn decompose_t32(p: &Polytope, t: &PointedTriangulation) -> DecompositionForm {
    let d = t.dim;
    let apex = t.apexes.of(p.top_id());
    let mut fam: BTreeSet<Vec<u32>> = BTreeSet::new();
    fam.insert(vec![apex]);
    for sigma in complex_faces(t) {
        if sigma.len() >= 2 && sigma.contains(&apex) && meets_interior(p, &sigma) {
            fam.insert(sigma);
        }
    }
    loop {
        let members: Vec<Vec<u32>> = fam.iter().cloned().collect();
        let mut additions: BTreeSet<Vec<u32>> = BTreeSet::new();
        for (i, a) in members.iter().enumerate() {
            for b in members[i + 1..].iter() {
                // members share the apex, so intersections stay nonempty
                let g: Vec<u32> = a.iter().copied().filter(|v| b.contains(v)).collect();
                if !fam.contains(&g) {
                    additions.insert(g);
                }
            }
        }
        for a in &members {
            let facet_without = |w: u32| -> Vec<u32> {
                a.iter().copied().filter(|&v| v != w).collect()
            };
            for b in &members {
                if b.len() >= a.len() || !is_subset(b, a) {
                    continue;
                }
                let shielded = a
                    .iter()
                    .any(|&w| !b.contains(&w) && fam.contains(&facet_without(w)));
                if !shielded {
                    let w = a
                        .iter()
                        .copied()
                        .filter(|w| !b.contains(w))
                        .max()
                        .expect("proper subset leaves a vertex to drop");
                    additions.insert(facet_without(w));
                }
            }
        }
        if additions.is_empty() {
            break;
        }
        fam.extend(additions);
    }
    let mut grouped: BTreeMap<(u32, u32), i128> = BTreeMap::new();
    let mut coeffs = vec![0i128; d as usize + 1];
    for a in &fam {
        let k = a.len() - 1;
        coeffs[k] += 1;
        let mut f = 0u32;
        if k >= 1 {
            for drop in 0..a.len() {
                let mut facet = a.clone();
                facet.remove(drop);
                if fam.contains(&facet) {
                    f += 1;
                }
            }
        }
        *grouped.entry((k as u32, f)).or_insert(0) += 1;
    }
    let terms = grouped
        .into_iter()
        .map(|((dim, shift), coeff)| Term { dim, shift, coeff })
        .collect();
    DecompositionForm {
        theorem: TheoremTag::T32,
        dim: d,
        coeffs,
        terms,
    }
}

/// Theorem-4 coefficients: the f-vector of the whole triangulation complex,
/// with every k-simplex contributing its interior count alpha^k(n-(k+1)).
pub fn decompose_t4(t: &PointedTriangulation) -> DecompositionForm {
    let d = t.dim;
    let coeffs: Vec<i128> = complex_f_vector(t).iter().map(|&x| x as i128).collect();
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(k, &coeff)| Term {
            dim: k as u32,
            shift: k as u32 + 1,
            coeff,
        })
        .collect();
    DecompositionForm {
        theorem: TheoremTag::T4,
        dim: d,
        coeffs,
        terms,
    }
}

/// Re-expresses any form in theorem-1 shape. Each alpha^k(n-s) term expands
/// through alpha^k(m) = Σ_j (-1)^j C(d-k, j) alpha^d(m-j); shifts past d-1
/// are then eliminated with the order-(d+1) difference relation
/// Σ_j (-1)^j C(d+1, j) alpha^d(n-m-j) = 0, which leaves the unique
/// representation over shifts 0..d-1.
pub fn convert_to_t1(form: &DecompositionForm) -> DecompositionForm {
    let d = form.dim;
    if d <= 0 {
        return DecompositionForm::from_t1_coeffs(d, vec![1]);
    }
    let dd = d as usize;
    let mut a = vec![0i128; 2 * dd + 3];
    for t in &form.terms {
        let up = dd - t.dim as usize;
        for j in 0..=up {
            a[t.shift as usize + j] += t.coeff * sign(j as u32) * binomial(up as i128, j as i128);
        }
    }
    for top in (dd + 1..a.len()).rev() {
        if a[top] == 0 {
            continue;
        }
        let base = top - (dd + 1);
        let lambda = a[top] * sign(d as u32);
        for j in 0..=dd + 1 {
            a[base + j] += lambda * sign(j as u32) * binomial(d as i128 + 1, j as i128);
        }
        debug_assert_eq!(a[top], 0);
    }
    assert_eq!(a[dd], 0, "form does not reduce to shifts 0..d-1");
    a.truncate(dd);
    DecompositionForm::from_t1_coeffs(d, a)
}
