//! Classical combinatorics used to cross-check decompositions: Eulerian
//! and multiset Eulerian numbers, Stirling numbers, Narayana numbers,
//! MacMahon's box-counting formula for plane partitions, and the descent
//! statistics of lattice paths, ballot paths, and rectangular standard
//! Young tableaux. Every closed form here is paired with a brute-force
//! enumeration at small sizes.

use crate::rat::Rat;
use crate::{Error, Result};

pub fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        // Exact at every step: acc * (n - i) is divisible by i + 1 after
        // the running product of i + 1 consecutive integers.
        acc = acc.checked_mul(n - i).expect("binomial overflow") / (i + 1);
    }
    acc
}

pub fn factorial(n: u32) -> i128 {
    (1..=n as i128).product()
}

/// Multinomial coefficient (sum a_i)! / prod a_i!.
pub fn multinomial(parts: &[u32]) -> i128 {
    let mut acc: i128 = 1;
    let mut total: i128 = 0;
    for &a in parts {
        total += a as i128;
        acc = acc
            .checked_mul(binomial(total, a as i128))
            .expect("multinomial overflow");
    }
    acc
}

/// Outcome of a two-sided identity check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub label: String,
    pub lhs: i128,
    pub rhs: i128,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Row d of the Eulerian triangle, entries indexed by descent count
/// 0..=d-1.
pub fn eulerian_row(d: u32) -> Vec<i128> {
    assert!(d >= 1);
    let mut row = vec![1i128];
    for dd in 2..=d as i128 {
        let mut next = vec![0i128; dd as usize];
        for (i, &v) in row.iter().enumerate() {
            let i = i as i128;
            next[i as usize] += (i + 1) * v;
            next[i as usize + 1] += (dd - 1 - i) * v;
        }
        row = next;
    }
    row
}

/// Number of permutations of a d-set with exactly i descents.
pub fn eulerian(d: u32, i: u32) -> Result<i128> {
    if d < 1 || i >= d {
        return Err(Error::OutOfRange(format!(
            "eulerian needs 0 <= i < d, got d = {d}, i = {i}"
        )));
    }
    Ok(eulerian_row(d)[i as usize])
}

/// Descent distribution of the permutations of the multiset
/// {1^{d_1}, ..., l^{d_l}}, indexed 0..=d-1 with d the total size.
/// Letters are absorbed largest first; inserting c copies of a new
/// smallest letter into a word of length L with k descents lands in the
/// k old descent gaps or the front without cost, while each of the
/// remaining L - k gaps charges one new descent, giving the transition
/// weight C(L-k, j) * C(c+k, k+j) to k + j descents.
pub fn generalized_eulerian_row(d_list: &[u32]) -> Result<Vec<i128>> {
    if d_list.is_empty() || d_list.iter().any(|&m| m == 0) {
        return Err(Error::OutOfRange(
            "multiset needs at least one letter, all multiplicities positive".into(),
        ));
    }
    let mut len = d_list[d_list.len() - 1] as i128;
    let mut row = vec![1i128];
    for &c in d_list.iter().rev().skip(1) {
        let c = c as i128;
        let mut next = vec![0i128; row.len() + c as usize];
        for (k, &v) in row.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let k = k as i128;
            for j in 0..=c.min(len - k) {
                let ways = binomial(len - k, j)
                    .checked_mul(binomial(c + k, k + j))
                    .expect("insertion count overflow");
                next[(k + j) as usize] += v.checked_mul(ways).expect("row overflow");
            }
        }
        row = next;
        len += c;
    }
    row.resize(len as usize, 0);
    Ok(row)
}

/// One entry of the multiset descent distribution; 0 beyond the row.
pub fn generalized_eulerian(d_list: &[u32], i: u32) -> Result<i128> {
    let row = generalized_eulerian_row(d_list)?;
    Ok(row.get(i as usize).copied().unwrap_or(0))
}

/// Stirling number of the second kind: partitions of a d-set into r
/// nonempty blocks.
pub fn stirling2(d: u32, r: u32) -> Result<i128> {
    if r > d {
        return Err(Error::OutOfRange(format!(
            "stirling2 needs r <= d, got d = {d}, r = {r}"
        )));
    }
    let mut row = vec![1i128];
    for _ in 0..d {
        let mut next = vec![0i128; row.len() + 1];
        for (j, &v) in row.iter().enumerate() {
            next[j] += j as i128 * v;
            next[j + 1] += v;
        }
        row = next;
    }
    Ok(row[r as usize])
}

/// Checks r! S(d,r) = sum_i <d,i> C(i, d-r): surjections onto an ordered
/// r-set against permutations with at least d-r descents.
pub fn stirling_descent_check(d: u32, r: u32) -> Result<CheckReport> {
    if d < 1 || r < 1 || r > d {
        return Err(Error::OutOfRange(format!(
            "descent identity needs 1 <= r <= d, got d = {d}, r = {r}"
        )));
    }
    let lhs = factorial(r)
        .checked_mul(stirling2(d, r)?)
        .expect("surjection count overflow");
    let rhs = eulerian_row(d)
        .iter()
        .enumerate()
        .map(|(i, &e)| e * binomial(i as i128, d as i128 - r as i128))
        .sum();
    Ok(CheckReport {
        label: format!("r! S(d,r) as descent sum, d = {d}, r = {r}"),
        lhs,
        rhs,
    })
}

/// Checks the Worpitzky expansion sum_i <d,i> C(n-i-1+d, d) = n^d.
pub fn worpitzky_check(d: u32, n: u32) -> Result<CheckReport> {
    if d < 1 {
        return Err(Error::OutOfRange("worpitzky needs d >= 1".into()));
    }
    let n = n as i128;
    let lhs = eulerian_row(d)
        .iter()
        .enumerate()
        .map(|(i, &e)| e * binomial(n - i as i128 - 1 + d as i128, d as i128))
        .sum();
    let rhs = (0..d).fold(1i128, |acc, _| acc.checked_mul(n).expect("power overflow"));
    Ok(CheckReport {
        label: format!("Worpitzky at d = {d}, n = {n}"),
        lhs,
        rhs,
    })
}

/// Narayana number N(d1, k) = C(d1,k) C(d1,k-1) / d1.
pub fn narayana(d1: u32, k: u32) -> Result<i128> {
    if d1 < 1 || k < 1 || k > d1 {
        return Err(Error::OutOfRange(format!(
            "narayana needs 1 <= k <= d1, got d1 = {d1}, k = {k}"
        )));
    }
    let prod = binomial(d1 as i128, k as i128)
        .checked_mul(binomial(d1 as i128, k as i128 - 1))
        .expect("narayana overflow");
    debug_assert_eq!(prod % d1 as i128, 0);
    Ok(prod / d1 as i128)
}

/// MacMahon's product for the number of plane partitions inside an
/// a x b x c box, evaluated exactly in rationals and asserted integral.
pub fn macmahon_box(a: u32, b: u32, c: u32) -> i128 {
    let mut acc = Rat::from_integer(1);
    for i in 1..=a as i128 {
        for j in 1..=b as i128 {
            for k in 1..=c as i128 {
                acc *= Rat::new(i + j + k - 1, i + j + k - 2);
            }
        }
    }
    assert!(acc.is_integer(), "box product must be integral");
    acc.to_integer()
}

/// Brute-force count of plane partitions in an a x b x c box: b x a
/// arrays, weakly decreasing along rows and columns, entries in [0, c].
pub fn plane_partition_oracle(a: u32, b: u32, c: u32) -> Result<i128> {
    if a * b > 9 || c > 6 {
        return Err(Error::OracleInput(format!(
            "plane partition oracle capped at a*b <= 9, c <= 6, got {a}x{b} with entries <= {c}"
        )));
    }
    let (rows, cols) = (b as usize, a as usize);
    if rows == 0 || cols == 0 {
        return Ok(1);
    }
    fn fill(grid: &mut Vec<Vec<i128>>, r: usize, s: usize, c: i128) -> i128 {
        let (rows, cols) = (grid.len(), grid[0].len());
        if r == rows {
            return 1;
        }
        let (nr, ns) = if s + 1 == cols { (r + 1, 0) } else { (r, s + 1) };
        let mut cap = c;
        if r > 0 {
            cap = cap.min(grid[r - 1][s]);
        }
        if s > 0 {
            cap = cap.min(grid[r][s - 1]);
        }
        let mut total = 0;
        for v in 0..=cap {
            grid[r][s] = v;
            total += fill(grid, nr, ns, c);
        }
        total
    }
    let mut grid = vec![vec![0i128; cols]; rows];
    Ok(fill(&mut grid, 0, 0, c as i128))
}

/// Counts arrays with `rows` rows and one column per bound: rows weakly
/// decreasing left to right, columns weakly decreasing top to bottom,
/// and column j bounded by bounds[j]. With all bounds equal this is the
/// box count; unequal bounds cut the box by the per-column caps.
pub fn column_bounded_partitions(rows: u32, bounds: &[u32]) -> i128 {
    assert!(
        bounds.windows(2).all(|w| w[0] >= w[1]),
        "column bounds must be weakly decreasing"
    );
    if bounds.is_empty() {
        return 1;
    }
    // all valid single rows, in some fixed order
    let mut states: Vec<Vec<u32>> = Vec::new();
    fn gen(states: &mut Vec<Vec<u32>>, bounds: &[u32], row: &mut Vec<u32>) {
        if row.len() == bounds.len() {
            states.push(row.clone());
            return;
        }
        let j = row.len();
        let cap = bounds[j].min(*row.last().unwrap_or(&bounds[j]));
        for v in 0..=cap {
            row.push(v);
            gen(states, bounds, row);
            row.pop();
        }
    }
    gen(&mut states, bounds, &mut Vec::new());
    let dominates = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x >= y);
    let mut chains = vec![1i128; states.len()];
    for _ in 1..rows {
        let next: Vec<i128> = states
            .iter()
            .map(|low| {
                states
                    .iter()
                    .zip(&chains)
                    .filter(|(high, _)| dominates(high, low))
                    .map(|(_, &c)| c)
                    .sum()
            })
            .collect();
        chains = next;
    }
    if rows == 0 {
        1
    } else {
        chains.iter().sum()
    }
}

/// Descent distribution of a path family, indexed by descent count
/// starting at 0. The vector keeps its full nominal length; trailing
/// zeros are data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentVector {
    pub counts: Vec<i128>,
}

impl DescentVector {
    pub fn total(&self) -> i128 {
        self.counts.iter().sum()
    }

    /// Counts with trailing zeros stripped; at least one entry remains.
    pub fn trimmed(&self) -> &[i128] {
        let last = self.counts.iter().rposition(|&c| c != 0).unwrap_or(0);
        &self.counts[..=last]
    }
}

/// Words admitted by `enumerate_descents`: all multiset permutations, or
/// only those whose letter counts stay weakly decreasing in every prefix
/// (ballot words).
#[derive(Clone, Copy, PartialEq, Eq)]
enum WordClass {
    All,
    Ballot,
}

/// Descent counts of multiset permutations of {1^{m_1}, ..., l^{m_l}},
/// by direct recursion. A descent is a position followed by a strictly
/// smaller letter.
fn enumerate_descents(mult: &[u32], class: WordClass) -> Vec<i128> {
    let d: u32 = mult.iter().sum();
    let mut out = vec![0i128; (d as usize).max(1)];
    if d == 0 {
        out[0] = 1;
        return out;
    }
    fn rec(
        remaining: &mut [u32],
        used: &mut [u32],
        last: usize,
        desc: usize,
        left: u32,
        class: WordClass,
        out: &mut [i128],
    ) {
        if left == 0 {
            out[desc] += 1;
            return;
        }
        for v in 0..remaining.len() {
            if remaining[v] == 0 {
                continue;
            }
            if class == WordClass::Ballot && v > 0 && used[v] + 1 > used[v - 1] {
                continue;
            }
            remaining[v] -= 1;
            used[v] += 1;
            let new_desc = desc + usize::from(last != usize::MAX && last > v);
            rec(remaining, used, v, new_desc, left - 1, class, out);
            remaining[v] += 1;
            used[v] -= 1;
        }
    }
    let mut remaining = mult.to_vec();
    let mut used = vec![0u32; mult.len()];
    rec(
        &mut remaining,
        &mut used,
        usize::MAX,
        0,
        d,
        class,
        &mut out,
    );
    out
}

/// Word-count cap below which coefficient functions run the brute-force
/// enumeration alongside their closed forms.
const ENUMERATION_WORD_CAP: i128 = 2_000_000;

/// Descent distribution of all monotone lattice paths from the origin to
/// (d_1, ..., d_l), computed three ways and cross-asserted: the signed
/// binomial closed form a_i = sum_j (-1)^j C(d+1,j) prod_k C(i-j+d_k, d_k),
/// the insertion recurrence, and (at small sizes) direct enumeration.
pub fn lattice_path_coeffs(d_list: &[u32]) -> Result<DescentVector> {
    let row = generalized_eulerian_row(d_list)?;
    let d: u32 = d_list.iter().sum();
    let mut closed = vec![0i128; d as usize];
    for (i, slot) in closed.iter_mut().enumerate() {
        let i = i as i128;
        for j in 0..=i {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let mut prod = binomial(d as i128 + 1, j);
            for &dk in d_list {
                prod = prod
                    .checked_mul(binomial(i - j + dk as i128, dk as i128))
                    .expect("path count overflow");
            }
            *slot += sign * prod;
        }
    }
    assert_eq!(closed, row, "closed form disagrees with insertion recurrence");
    if multinomial(d_list) <= ENUMERATION_WORD_CAP {
        assert_eq!(
            closed,
            enumerate_descents(d_list, WordClass::All),
            "closed form disagrees with enumeration"
        );
    }
    Ok(DescentVector { counts: closed })
}

/// Descent distribution of ballot paths from (0,0) to (d1, d2): monotone
/// paths staying weakly below the diagonal, x1 >= x2 at every step. The
/// closed form replaces the box count with the column-bounded count,
/// which carries the per-column caps d1 and d2; with d1 = d2 the entries
/// are the Narayana numbers N(d1, i+1).
pub fn ballot_path_coeffs(d1: u32, d2: u32) -> Result<DescentVector> {
    if d1 < d2 {
        return Err(Error::OutOfRange(format!(
            "ballot paths need d1 >= d2, got d1 = {d1}, d2 = {d2}"
        )));
    }
    let d = d1 + d2;
    let mut closed = vec![0i128; (d as usize).max(1)];
    if d == 0 {
        closed[0] = 1;
        return Ok(DescentVector { counts: closed });
    }
    for (i, slot) in closed.iter_mut().enumerate() {
        let i = i as i128;
        for j in 0..=i {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let ways = binomial(d as i128 + 1, j)
                .checked_mul(column_bounded_partitions((i - j) as u32, &[d1, d2]))
                .expect("ballot count overflow");
            *slot += sign * ways;
        }
    }
    if d <= 14 {
        assert_eq!(
            closed,
            enumerate_descents(&[d1, d2], WordClass::Ballot),
            "closed form disagrees with ballot enumeration"
        );
    }
    if d1 == d2 && d1 >= 1 {
        for (i, &c) in closed.iter().enumerate() {
            let expected = if (i as u32) < d1 {
                narayana(d1, i as u32 + 1)?
            } else {
                0
            };
            assert_eq!(c, expected, "diagonal ballot entry is not Narayana");
        }
    }
    Ok(DescentVector { counts: closed })
}

/// Number of standard fillings of an l x m rectangle (entries [l*m],
/// strictly monotone rows and columns), by the hook length product
/// (l*m)! prod_{i<l} i! / (m+i)!.
pub fn young_tableaux_count(l: u32, m: u32) -> i128 {
    assert!(l >= 1 && m >= 1);
    let mut acc = Rat::from_integer(factorial(l * m));
    for i in 0..l as i128 {
        for t in i + 1..=m as i128 + i {
            acc *= Rat::new(1, t);
        }
    }
    assert!(acc.is_integer(), "hook product must be integral");
    acc.to_integer()
}

/// Descent distribution of l x m rectangular standard Young tableaux,
/// encoded as ballot words over l row labels with m copies each; the
/// closed form a_i = sum_j (-1)^j C(lm+1, j) box(i-j, l, m) comes from
/// inverting the staircase decomposition against the box counts. The
/// total is asserted against the hook length count.
pub fn young_poly_coeffs(l: u32, m: u32) -> Result<DescentVector> {
    if l < 1 || m < 1 {
        return Err(Error::OutOfRange(format!(
            "tableau shape needs l, m >= 1, got l = {l}, m = {m}"
        )));
    }
    let d = l * m;
    let mut closed = vec![0i128; d as usize];
    for (i, slot) in closed.iter_mut().enumerate() {
        let i = i as i128;
        for j in 0..=i {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let ways = binomial(d as i128 + 1, j)
                .checked_mul(macmahon_box((i - j) as u32, l, m))
                .expect("tableau count overflow");
            *slot += sign * ways;
        }
    }
    let vec = DescentVector { counts: closed };
    assert_eq!(vec.total(), young_tableaux_count(l, m));
    if multinomial(&vec![m; l as usize]) <= ENUMERATION_WORD_CAP {
        assert_eq!(
            vec.counts,
            enumerate_descents(&vec![m; l as usize], WordClass::Ballot),
            "closed form disagrees with tableau enumeration"
        );
    }
    Ok(vec)
}
