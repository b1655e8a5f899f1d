//! Torus fixed points of based quasiflag spaces and their adjacency.

use std::fmt;

use serde::Serialize;

use crate::error::{usage, Result};

/// Multidegree `(d_1, …, d_{n-1})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DegreeVector(Vec<i32>);

impl DegreeVector {
    pub fn new(d: Vec<i32>) -> Result<Self> {
        if d.iter().any(|&x| x < 0) {
            return Err(usage(format!("negative degree entry in {d:?}")));
        }
        Ok(DegreeVector(d))
    }

    pub fn zero(n: usize) -> Self {
        DegreeVector(vec![0; n - 1])
    }

    /// `n`, one more than the number of entries.
    pub fn rank(&self) -> usize {
        self.0.len() + 1
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    /// `d_i` for `1 ≤ i ≤ n-1`, and `0` for `i = 0` or `i ≥ n`.
    pub fn get(&self, i: usize) -> i32 {
        if i == 0 || i > self.0.len() {
            0
        } else {
            self.0[i - 1]
        }
    }

    pub fn total(&self) -> i32 {
        self.0.iter().sum()
    }

    /// `d ± e_i`, or `None` when an entry would go negative.
    pub fn shifted(&self, i: usize, delta: i32) -> Option<Self> {
        let mut d = self.0.clone();
        let slot = d.get_mut(i.checked_sub(1)?)?;
        *slot += delta;
        (*slot >= 0).then_some(DegreeVector(d))
    }

    pub fn in_box(&self, bound: i32) -> bool {
        self.0.iter().all(|&x| x <= bound)
    }

    /// All degrees with every entry in `0..=bound`, in lexicographic order.
    pub fn all_in_box(n: usize, bound: i32) -> Vec<Self> {
        let mut out = vec![Vec::new()];
        for _ in 1..n {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i32>| {
                    (0..=bound).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(DegreeVector).collect()
    }

    /// All degrees with `Σ d_i ≤ total`, in lexicographic order.
    pub fn all_up_to_total(n: usize, total: i32) -> Vec<Self> {
        let mut all = Self::all_in_box(n, total);
        all.retain(|d| d.total() <= total);
        all
    }
}

impl fmt::Debug for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Triangular array `d_{ij}`, `1 ≤ j ≤ i ≤ n-1`, with `d_{i+1,j} ≤ d_{ij}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FixedPoint {
    n: usize,
    rows: Vec<Vec<i32>>,
}

impl FixedPoint {
    pub fn new(n: usize, rows: Vec<Vec<i32>>) -> Result<Self> {
        if n < 2 {
            return Err(usage("rank must be at least 2"));
        }
        if rows.len() != n - 1 || rows.iter().enumerate().any(|(k, r)| r.len() != k + 1) {
            return Err(usage(format!("rows {rows:?} are not triangular of rank {n}")));
        }
        let p = FixedPoint { n, rows };
        if !p.is_valid() {
            return Err(usage(format!("{p:?} violates column monotonicity or positivity")));
        }
        Ok(p)
    }

    /// The point with all entries zero.
    pub fn zero(n: usize) -> Self {
        FixedPoint {
            n,
            rows: (1..n).map(|i| vec![0; i]).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i32>] {
        &self.rows
    }

    /// `d_{ij}` with `d_{0,j} = d_{n,j} = 0` and zero off the triangle.
    pub fn get(&self, i: usize, j: usize) -> i32 {
        if i == 0 || i >= self.n || j == 0 || j > i {
            0
        } else {
            self.rows[i - 1][j - 1]
        }
    }

    pub fn row_sum(&self, i: usize) -> i32 {
        if i == 0 || i >= self.n {
            0
        } else {
            self.rows[i - 1].iter().sum()
        }
    }

    pub fn degree(&self) -> DegreeVector {
        DegreeVector(self.rows.iter().map(|r| r.iter().sum()).collect())
    }

    fn is_valid(&self) -> bool {
        for i in 1..self.n {
            for j in 1..=i {
                let x = self.get(i, j);
                if x < 0 || (j < i && x > self.get(i - 1, j)) {
                    return false;
                }
            }
        }
        true
    }

    fn bumped(&self, i: usize, j: usize, delta: i32) -> Option<Self> {
        let mut p = self.clone();
        p.rows[i - 1][j - 1] += delta;
        p.is_valid().then_some(p)
    }

    /// Points `p'` with `d'_{ij} = d_{ij} + 1` for some column `j`.
    pub fn raise(&self, i: usize) -> Vec<(FixedPoint, usize)> {
        if i == 0 || i >= self.n {
            return Vec::new();
        }
        (1..=i)
            .filter_map(|j| self.bumped(i, j, 1).map(|p| (p, j)))
            .collect()
    }

    /// Points `p'` with `d'_{ij} = d_{ij} - 1` for some column `j`.
    pub fn lower(&self, i: usize) -> Vec<(FixedPoint, usize)> {
        if i == 0 || i >= self.n {
            return Vec::new();
        }
        (1..=i)
            .filter_map(|j| self.bumped(i, j, -1).map(|p| (p, j)))
            .collect()
    }

    /// `(i, j)` when `other` is this point with `d_{ij}` raised by one.
    pub fn raised_entry(&self, other: &FixedPoint) -> Option<(usize, usize)> {
        if self.n != other.n {
            return None;
        }
        let mut hit = None;
        for i in 1..self.n {
            for j in 1..=i {
                match other.get(i, j) - self.get(i, j) {
                    0 => {}
                    1 if hit.is_none() => hit = Some((i, j)),
                    _ => return None,
                }
            }
        }
        hit
    }
}

impl fmt::Debug for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", rows.join(";"))
    }
}

/// All fixed points of degree `d`, in lexicographic order of their rows.
pub fn enumerate(n: usize, d: &DegreeVector) -> Result<Vec<FixedPoint>> {
    if n < 2 {
        return Err(usage("rank must be at least 2"));
    }
    if d.rank() != n {
        return Err(usage(format!("degree {d:?} does not have {} entries", n - 1)));
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<i32>> = Vec::with_capacity(n - 1);
    extend_rows(n, d, &mut rows, &mut out);
    Ok(out)
}

fn extend_rows(n: usize, d: &DegreeVector, rows: &mut Vec<Vec<i32>>, out: &mut Vec<FixedPoint>) {
    let i = rows.len() + 1;
    if i == n {
        out.push(FixedPoint {
            n,
            rows: rows.clone(),
        });
        return;
    }
    let caps: Vec<Option<i32>> = (1..=i)
        .map(|j| rows.last().filter(|_| j < i).map(|r| r[j - 1]))
        .collect();
    let mut row = Vec::with_capacity(i);
    fill_row(&caps, d.get(i), &mut row, &mut |r| {
        rows.push(r.to_vec());
        extend_rows(n, d, rows, out);
        rows.pop();
    });
}

/// Compositions of `remaining` into `caps.len()` parts bounded by `caps`.
fn fill_row(caps: &[Option<i32>], remaining: i32, row: &mut Vec<i32>, emit: &mut dyn FnMut(&[i32])) {
    let k = row.len();
    if k == caps.len() {
        if remaining == 0 {
            emit(row);
        }
        return;
    }
    let hi = caps[k].map_or(remaining, |c| c.min(remaining));
    for x in 0..=hi {
        row.push(x);
        fill_row(caps, remaining - x, row, emit);
        row.pop();
    }
}

/// Multiset of positive roots `α_j + … + α_i`, stored as `((j, i), mult)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct KostantPartition {
    pub parts: Vec<((usize, usize), u32)>,
}

impl KostantPartition {
    /// Coefficients of `α_1..α_{n-1}` in the weighted root sum.
    pub fn weight(&self, n: usize) -> Vec<i32> {
        let mut w = vec![0; n - 1];
        for &((j, i), m) in &self.parts {
            for slot in &mut w[j - 1..i] {
                *slot += m as i32;
            }
        }
        w
    }
}

fn positive_roots(n: usize) -> Vec<(usize, usize)> {
    let mut roots = Vec::new();
    for j in 1..n {
        for i in j..n {
            roots.push((j, i));
        }
    }
    roots
}

/// All Kostant partitions of `Σ d_i α_i`.
pub fn kostant_partitions(n: usize, d: &DegreeVector) -> Vec<KostantPartition> {
    let roots = positive_roots(n);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    split_roots(&roots, d.entries().to_vec(), &mut chosen, &mut out);
    out
}

fn split_roots(
    roots: &[(usize, usize)],
    remaining: Vec<i32>,
    chosen: &mut Vec<((usize, usize), u32)>,
    out: &mut Vec<KostantPartition>,
) {
    let Some((&(j, i), rest)) = roots.split_first() else {
        if remaining.iter().all(|&x| x == 0) {
            out.push(KostantPartition {
                parts: chosen.clone(),
            });
        }
        return;
    };
    let mut rem = remaining;
    let mut m = 0u32;
    loop {
        if m > 0 {
            chosen.push(((j, i), m));
        }
        split_roots(rest, rem.clone(), chosen, out);
        if m > 0 {
            chosen.pop();
        }
        if rem[j - 1..i].contains(&0) {
            break;
        }
        for slot in &mut rem[j - 1..i] {
            *slot -= 1;
        }
        m += 1;
    }
}

/// Number of Kostant partitions of `Σ d_i α_i`.
pub fn kostant_count(n: usize, d: &DegreeVector) -> usize {
    kostant_partitions(n, d).len()
}
