//! Acceptance gate: twelve end-to-end criteria, one test function each,
//! so the harness prints one pass/fail line per criterion. Everything is
//! exact integer or rational arithmetic; there are no tolerances.

use polynum::budget::Budget;
use polynum::decompose::{
    decompose_t1_shelling, decompose_t1_solve, decompose_t2, decompose_t2_solve, decompose_t31,
    decompose_t31_solve, decompose_t32, decompose_t4,
};
use polynum::hull::{brute_force_faces, lattices_equal};
use polynum::identities::{
    binomial, eulerian_row, factorial, generalized_eulerian_row, macmahon_box, narayana,
    plane_partition_oracle, stirling2, worpitzky_check, young_poly_coeffs, young_tableaux_count,
};
use polynum::moebius::moebius_check;
use polynum::numbers::{geometric_sets, simplex_number, vertex_description_sets};
use polynum::triangulate::build_triangulation;
use polynum::{GenericFunctional, NumberContext, PointedTriangulation, Polytope, PolytopeExpr};

fn built(expr: &str) -> (Polytope, GenericFunctional, PointedTriangulation) {
    let parsed: PolytopeExpr = expr.parse().expect(expr);
    let p = parsed.build().expect(expr);
    let f = GenericFunctional::index(p.ambient_dim);
    let t = build_triangulation(&p, &f).expect(expr);
    (p, f, t)
}

/// P(n) for the d-simplex is the binomial coefficient C(n-1+d, d).
#[test]
fn criterion_01_simplex_numbers_match_the_closed_form() {
    for d in 0..=8u32 {
        let (p, f, _) = built(&format!("simplex:{d}"));
        let mut ctx = NumberContext::new(&p, &f);
        for n in 0..=30u32 {
            assert_eq!(
                ctx.number(n),
                simplex_number(d, n as i128),
                "simplex:{d} at n = {n}"
            );
        }
    }
}

/// The square's numbers are the perfect squares.
#[test]
fn criterion_02_square_numbers_are_the_perfect_squares() {
    let (p, f, _) = built("cube:2");
    let mut ctx = NumberContext::new(&p, &f);
    assert_eq!(ctx.sequence(4, false), vec![0, 1, 4, 9, 16]);
}

/// Zoo used by the agreement criteria: dimension at most 4, covering
/// every constructor and combinator.
const ZOO: &[&str] = &[
    "simplex:1",
    "simplex:2",
    "simplex:3",
    "simplex:4",
    "cross:1",
    "cross:2",
    "cross:3",
    "cross:4",
    "cube:1",
    "cube:2",
    "cube:3",
    "cube:4",
    "hypersimplex:2,1",
    "hypersimplex:3,1",
    "hypersimplex:3,2",
    "hypersimplex:4,1",
    "hypersimplex:4,2",
    "hypersimplex:4,3",
    "hypersimplex:5,1",
    "hypersimplex:5,2",
    "hypersimplex:5,3",
    "hypersimplex:5,4",
    "pyr(cube:2)",
    "pyr(cross:2)",
    "pyr(cube:3)",
    "bipyr(simplex:2)",
    "bipyr(cube:2)",
    "bipyr(cube:3)",
    "prod(simplex:1,simplex:2)",
    "prod(simplex:2,simplex:2)",
    "prod(cube:2,simplex:1)",
    "prod(cross:2,simplex:1)",
    "prod(simplex:1,simplex:1,simplex:2)",
];

/// Recurrence, geometric point enumeration, and vertex-description
/// enumeration agree, for totals and interiors alike.
#[test]
fn criterion_03_three_descriptions_agree_with_interiors() {
    let budget = Budget::default();
    for expr in ZOO {
        let (p, _, t) = built(expr);
        let mut ctx = NumberContext::with_apexes(&p, t.apexes.clone());
        for n in 0..=8u32 {
            let (geo_all, geo_in) = geometric_sets(&p, &t, n, &budget).expect(expr);
            let (vtx_all, vtx_in) =
                vertex_description_sets(&p, &t.apexes, n, &budget).expect(expr);
            assert_eq!(geo_all, vtx_all, "{expr} point sets at n = {n}");
            assert_eq!(geo_in, vtx_in, "{expr} interior sets at n = {n}");
            assert_eq!(
                ctx.number(n),
                geo_all.len() as i128,
                "{expr} total at n = {n}"
            );
            assert_eq!(
                ctx.interior(n),
                geo_in.len() as i128,
                "{expr} interior at n = {n}"
            );
        }
    }
}

/// Shelling glue counts give the top-simplex decomposition: binomial
/// rows for cross-polytopes, Eulerian rows for cubes, descent counts of
/// multiset permutations for products of simplexes; and the counted
/// coefficients match the linear-solve extraction.
#[test]
fn criterion_04_shelling_coefficients_match_descent_statistics() {
    let budget = Budget::default();

    for d in 1..=6u32 {
        let (p, f, t) = built(&format!("cross:{d}"));
        let form = decompose_t1_shelling(&p, &t, &f, &budget).expect("shellable");
        let want: Vec<i128> = (0..d as i128).map(|i| binomial(d as i128 - 1, i)).collect();
        assert_eq!(form.coeffs, want, "cross:{d}");
        let mut ctx = NumberContext::with_apexes(&p, t.apexes.clone());
        assert_eq!(decompose_t1_solve(&mut ctx).coeffs, want, "cross:{d} solve");
    }

    for d in 1..=6u32 {
        let (p, f, t) = built(&format!("cube:{d}"));
        let form = decompose_t1_shelling(&p, &t, &f, &budget).expect("shellable");
        assert_eq!(form.coeffs, eulerian_row(d), "cube:{d}");
        let mut ctx = NumberContext::with_apexes(&p, t.apexes.clone());
        assert_eq!(
            decompose_t1_solve(&mut ctx).coeffs,
            eulerian_row(d),
            "cube:{d} solve"
        );
    }

    let factor_lists: &[&[u32]] = &[
        &[1, 1],
        &[2, 1],
        &[2, 2],
        &[3, 1],
        &[3, 2],
        &[3, 3],
        &[4, 2],
        &[4, 3],
        &[4, 4],
        &[5, 2],
        &[5, 3],
        &[6, 2],
        &[1, 1, 1],
        &[2, 1, 1],
        &[2, 2, 2],
        &[3, 2, 1],
        &[3, 3, 2],
        &[2, 2, 1, 1],
    ];
    for &d_list in factor_lists {
        let expr = format!(
            "prod({})",
            d_list
                .iter()
                .map(|d| format!("simplex:{d}"))
                .collect::<Vec<_>>()
                .join(",")
        );
        let (p, f, t) = built(&expr);
        let form = decompose_t1_shelling(&p, &t, &f, &budget).expect("shellable");
        let want = generalized_eulerian_row(d_list).expect("row");
        assert_eq!(form.coeffs, want, "{expr}");
        let mut ctx = NumberContext::with_apexes(&p, t.apexes.clone());
        assert_eq!(decompose_t1_solve(&mut ctx).coeffs, want, "{expr} solve");
    }
}

/// n^d expands against binomials with Eulerian coefficients.
#[test]
fn criterion_05_worpitzky_expansion_of_powers() {
    for d in 1..=6u32 {
        for n in 0..=20u32 {
            assert!(worpitzky_check(d, n).expect("in range").ok(), "d={d} n={n}");
        }
    }
}

/// Every decomposition form evaluates back to the polytope numbers, and
/// the alternating-sum coefficients obey the closed forms for cubes and
/// cross-polytopes.
#[test]
fn criterion_06_decomposition_forms_evaluate_back() {
    for expr in ZOO {
        let (p, _, t) = built(expr);
        let mut ctx = NumberContext::with_apexes(&p, t.apexes.clone());
        let forms = [
            decompose_t2(&p, &t),
            decompose_t31(&p, &t),
            decompose_t32(&p, &t),
            decompose_t4(&t),
        ];
        let hi = 2 * p.dim.max(0) as u32 + 2;
        for form in &forms {
            for n in 0..=hi {
                assert_eq!(
                    form.eval(n as i128),
                    ctx.poly_number(p.top_id(), n),
                    "{expr} theorem {} at n = {n}",
                    form.theorem
                );
            }
        }
        let solved = [
            decompose_t2_solve(&mut ctx),
            decompose_t31_solve(&mut ctx),
        ];
        assert_eq!(solved[0].coeffs, forms[0].coeffs, "{expr} alternating sum");
        assert_eq!(solved[1].coeffs, forms[1].coeffs, "{expr} layered sum");
    }

    for d in 1..=6u32 {
        let (p, _, t) = built(&format!("cross:{d}"));
        let b = decompose_t2(&p, &t).coeffs;
        for r in 1..=d as usize {
            let want = binomial(d as i128 - 1, r as i128 - 1) * (1i128 << (r - 1));
            assert_eq!(b[r - 1], want, "cross:{d} b_{r}");
        }
        let (p, _, t) = built(&format!("cube:{d}"));
        let b = decompose_t2(&p, &t).coeffs;
        for r in 1..=d as usize {
            let want = factorial(r as u32) * stirling2(d, r as u32).expect("in range");
            assert_eq!(b[r - 1], want, "cube:{d} b_{r}");
        }
    }
}

/// Polytope numbers are multiplicative over products, interiors included.
#[test]
fn criterion_07_product_polytopes_multiply() {
    let pairs = [
        ("simplex:1", "simplex:2"),
        ("simplex:2", "simplex:2"),
        ("simplex:2", "simplex:3"),
        ("cube:2", "simplex:1"),
        ("cube:2", "cube:2"),
        ("cube:2", "cross:3"),
        ("cross:2", "simplex:2"),
        ("cross:3", "simplex:1"),
        ("hypersimplex:4,2", "simplex:1"),
    ];
    for (a, b) in pairs {
        let (pa, fa, _) = built(a);
        let (pb, fb, _) = built(b);
        let (pp, fp, _) = built(&format!("prod({a},{b})"));
        assert!(pp.dim <= 5);
        let mut ca = NumberContext::new(&pa, &fa);
        let mut cb = NumberContext::new(&pb, &fb);
        let mut cp = NumberContext::new(&pp, &fp);
        for n in 0..=10u32 {
            assert_eq!(cp.number(n), ca.number(n) * cb.number(n), "{a} x {b} at {n}");
            assert_eq!(
                cp.interior(n),
                ca.interior(n) * cb.interior(n),
                "{a} x {b} interior at {n}"
            );
        }
    }
}

/// Hypersimplex numbers count lattice points of the dilates.
#[test]
fn criterion_08_hypersimplex_numbers_count_lattice_points() {
    let budget = Budget::default();
    for d in 2..=5u32 {
        for k in 1..d {
            let (p, _, t) = built(&format!("hypersimplex:{d},{k}"));
            let mut ctx = NumberContext::with_apexes(&p, t.apexes.clone());
            for n in 0..=8u32 {
                let (all, _) = geometric_sets(&p, &t, n, &budget).expect("within budget");
                assert_eq!(
                    ctx.number(n),
                    all.len() as i128,
                    "hypersimplex:{d},{k} at n = {n}"
                );
            }
        }
    }
}

/// Counts ballot words over {1,2} with d1 ones and d2 twos, every prefix
/// weakly ahead on ones; the classical ballot-number formula.
fn ballot_count(d1: u32, d2: u32) -> i128 {
    let (a, b) = (d1 as i128, d2 as i128);
    if d2 == 0 {
        1
    } else {
        binomial(a + b, b) - binomial(a + b, b - 1)
    }
}

/// Box-counting formula against brute force, ballot descent rows against
/// the ballot numbers, and Narayana rows on the diagonal.
#[test]
fn criterion_09_plane_partitions_and_ballot_descents() {
    for a in 1..=9u32 {
        for b in 1..=9 / a {
            for c in 0..=6u32 {
                assert_eq!(
                    macmahon_box(a, b, c),
                    plane_partition_oracle(a, b, c).expect("within oracle bounds"),
                    "box {a} x {b} x {c}"
                );
            }
        }
    }

    for d1 in 0..=12u32 {
        for d2 in 0..=d1.min(12 - d1) {
            let row = polynum::identities::ballot_path_coeffs(d1, d2).expect("sizes ok");
            assert_eq!(
                row.total(),
                ballot_count(d1, d2),
                "ballot total for ({d1},{d2})"
            );
        }
    }

    for d in 1..=6u32 {
        let row = polynum::identities::ballot_path_coeffs(d, d).expect("sizes ok");
        let want: Vec<i128> = (1..=d)
            .map(|k| narayana(d, k).expect("in range"))
            .collect();
        assert_eq!(row.trimmed(), want, "diagonal d = {d}");
    }
}

/// Standard Young tableau counts of the l x m rectangle by direct
/// lattice-path dynamic programming, plus the descent distribution by
/// brute enumeration of ballot words.
fn syt_count_by_dp(l: u32, m: u32) -> i128 {
    fn go(
        state: &mut Vec<u32>,
        m: u32,
        memo: &mut std::collections::HashMap<Vec<u32>, i128>,
    ) -> i128 {
        if state.iter().all(|&c| c == m) {
            return 1;
        }
        if let Some(&v) = memo.get(state) {
            return v;
        }
        let mut total = 0;
        for i in 0..state.len() {
            let can_grow = state[i] < m && (i == 0 || state[i - 1] > state[i]);
            if can_grow {
                state[i] += 1;
                total += go(state, m, memo);
                state[i] -= 1;
            }
        }
        memo.insert(state.clone(), total);
        total
    }
    go(&mut vec![0; l as usize], m, &mut Default::default())
}

fn ballot_descent_row(l: u32, m: u32) -> Vec<i128> {
    fn go(word: &mut Vec<u32>, counts: &mut [u32], m: u32, row: &mut Vec<i128>) {
        if counts.iter().all(|&c| c == m) {
            let descents = word.windows(2).filter(|w| w[0] > w[1]).count();
            if row.len() <= descents {
                row.resize(descents + 1, 0);
            }
            row[descents] += 1;
            return;
        }
        for v in 0..counts.len() {
            let ballot_ok = counts[v] < m && (v == 0 || counts[v - 1] > counts[v]);
            if ballot_ok {
                counts[v] += 1;
                word.push(v as u32);
                go(word, counts, m, row);
                word.pop();
                counts[v] -= 1;
            }
        }
    }
    let mut row = Vec::new();
    go(
        &mut Vec::new(),
        &mut vec![0; l as usize],
        m,
        &mut row,
    );
    row
}

#[test]
fn criterion_10_rectangular_tableau_counts_and_descents() {
    for l in 1..=12u32 {
        for m in 1..=12 / l {
            assert_eq!(
                young_tableaux_count(l, m),
                syt_count_by_dp(l, m),
                "count for {l} x {m}"
            );
        }
    }
    for l in 1..=9u32 {
        for m in 1..=9 / l {
            let got = young_poly_coeffs(l, m).expect("sizes ok");
            let want = ballot_descent_row(l, m);
            // The closed-form row may carry trailing zeros.
            assert_eq!(got.counts[..want.len()], want[..], "row for {l} x {m}");
            assert!(
                got.counts[want.len()..].iter().all(|&c| c == 0),
                "trailing entries for {l} x {m}"
            );
        }
    }
}

/// Moebius numbers of the triangulation posets follow the boundary sign
/// pattern, and the implied telescoping sums reproduce the numbers.
#[test]
fn criterion_11_moebius_pattern_and_telescoping() {
    for expr in ["simplex:3", "cube:2", "cube:3", "cross:3"] {
        let (p, _, t) = built(expr);
        let report = moebius_check(&p, &t, 8);
        assert!(report.ok(), "{expr}: {report:?}");
        assert!(report.pairs_checked > 0, "{expr} checked nothing");
    }
}

/// Constructed face lattices match the brute-force hull oracle.
#[test]
fn criterion_12_constructors_match_the_hull_oracle() {
    let small = [
        "simplex:1",
        "simplex:2",
        "simplex:3",
        "simplex:4",
        "cross:1",
        "cross:2",
        "cross:3",
        "cross:4",
        "cube:1",
        "cube:2",
        "cube:3",
        "hypersimplex:4,1",
        "hypersimplex:4,2",
        "hypersimplex:4,3",
        "hypersimplex:5,2",
        "hypersimplex:5,3",
        "pyr(cube:2)",
        "pyr(cross:3)",
        "bipyr(simplex:3)",
        "bipyr(cube:2)",
        "bipyr(cube:3)",
        "prod(simplex:1,simplex:2)",
        "prod(cube:2,simplex:1)",
        "prod(simplex:1,simplex:3)",
        "prod(simplex:2,simplex:2)",
    ];
    for expr in small {
        let (p, _, _) = built(expr);
        assert!(p.coords.len() <= 14, "{expr} exceeds the oracle cap");
        let oracle = brute_force_faces(p.ambient_dim, p.coords.clone()).expect(expr);
        assert!(lattices_equal(&p, &oracle), "{expr} lattice differs");
    }
}
