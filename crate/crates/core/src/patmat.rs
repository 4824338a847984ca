//! Binary matrices `M(s,t)`, forbidden-submatrix containment and the
//! combinatorial statistics of moment-curve complexes built from them.
//!
//! Matrices are sparse: each row is a strictly increasing list of 1-based
//! column indices.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::arith::{ArithError, BigNat, Evaluator};

/// Default cap on the side length `tC(s,t)` of a built matrix.
pub const DEFAULT_SIZE_CAP: u64 = 65_536;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PatError {
    #[error("size cap: M({s},{t}) has side {side}, limit {cap}")]
    SizeCap { s: u64, t: u64, side: String, cap: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<u32>>,
}

/// Horizontal block height and vertical block starts (1-based columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    pub t: usize,
    pub vstarts: Vec<u32>,
}

impl BinaryMatrix {
    /// Builds a matrix, checking that rows are strictly increasing and in range.
    pub fn new(nrows: usize, ncols: usize, rows: Vec<Vec<u32>>) -> Result<Self, PatError> {
        if rows.len() != nrows {
            return Err(PatError::Precondition(format!(
                "expected {nrows} rows, got {}",
                rows.len()
            )));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.windows(2).any(|w| w[0] >= w[1]) {
                return Err(PatError::Precondition(format!("row {} is not strictly increasing", i + 1)));
            }
            if r.iter().any(|&c| c == 0 || c as usize > ncols) {
                return Err(PatError::Precondition(format!("row {} has a column out of range", i + 1)));
            }
        }
        Ok(BinaryMatrix { nrows, ncols, rows })
    }

    /// From a dense 0/1 array.
    pub fn from_dense(d: &[&[u8]]) -> Self {
        let ncols = d.first().map_or(0, |r| r.len());
        let rows = d
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(j, _)| j as u32 + 1)
                    .collect()
            })
            .collect();
        BinaryMatrix { nrows: d.len(), ncols, rows }
    }

    pub fn get(&self, i: usize, j: u32) -> bool {
        self.rows[i].binary_search(&j).is_ok()
    }

    pub fn weight(&self) -> u64 {
        self.rows.iter().map(|r| r.len() as u64).sum()
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut rows = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for &c in r {
                rows[c as usize - 1].push(i as u32 + 1);
            }
        }
        BinaryMatrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    /// Drops rows with fewer than `k` ones.
    pub fn delete_thin_rows(&self, k: usize) -> BinaryMatrix {
        let rows: Vec<_> = self.rows.iter().filter(|r| r.len() >= k).cloned().collect();
        BinaryMatrix { nrows: rows.len(), ncols: self.ncols, rows }
    }

    /// Serializes in the text format: `nrows ncols`, then one line per row.
    pub fn to_text(&self, blocks: Option<&BlockStructure>) -> String {
        let mut out = format!("{} {}\n", self.nrows, self.ncols);
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        if let Some(b) = blocks {
            let _ = write!(out, "blocks {}:", b.t);
            for c in &b.vstarts {
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format written by [`BinaryMatrix::to_text`].
    pub fn from_text(text: &str) -> Result<(BinaryMatrix, Option<BlockStructure>), PatError> {
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or("");
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|x| x.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| PatError::Parse { line: 1, msg: e.to_string() })?;
        if dims.len() != 2 {
            return Err(PatError::Parse { line: 1, msg: "expected `nrows ncols`".into() });
        }
        let (nrows, ncols) = (dims[0], dims[1]);
        let mut rows = Vec::with_capacity(nrows);
        let mut blocks = None;
        for (i, line) in lines.enumerate() {
            let lineno = i + 2;
            if rows.len() == nrows {
                let l = line.trim();
                if l.is_empty() {
                    continue;
                }
                let rest = l.strip_prefix("blocks").ok_or_else(|| PatError::Parse {
                    line: lineno,
                    msg: "unexpected trailing content".into(),
                })?;
                let (t, cs) = rest.split_once(':').ok_or_else(|| PatError::Parse {
                    line: lineno,
                    msg: "expected `blocks t: c1 c2 ...`".into(),
                })?;
                let t = t.trim().parse().map_err(|_| PatError::Parse {
                    line: lineno,
                    msg: "bad block height".into(),
                })?;
                let vstarts = cs
                    .split_whitespace()
                    .map(|x| x.parse::<u32>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| PatError::Parse { line: lineno, msg: e.to_string() })?;
                blocks = Some(BlockStructure { t, vstarts });
                continue;
            }
            let r = line
                .split_whitespace()
                .map(|x| x.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| PatError::Parse { line: lineno, msg: e.to_string() })?;
            rows.push(r);
        }
        if rows.len() != nrows {
            return Err(PatError::Parse {
                line: rows.len() + 2,
                msg: format!("expected {nrows} rows, found {}", rows.len()),
            });
        }
        Ok((BinaryMatrix::new(nrows, ncols, rows)?, blocks))
    }
}

/// The named patterns used throughout.
pub mod patterns {
    use super::BinaryMatrix;

    pub fn n() -> BinaryMatrix {
        BinaryMatrix::from_dense(&[&[0, 1, 0, 1], &[1, 0, 1, 0]])
    }
    pub fn n_prime() -> BinaryMatrix {
        BinaryMatrix::from_dense(&[&[1, 0, 1], &[1, 1, 0]])
    }
    pub fn ones24() -> BinaryMatrix {
        BinaryMatrix::from_dense(&[&[1, 1, 1, 1], &[1, 1, 1, 1]])
    }
    pub fn alt25a() -> BinaryMatrix {
        BinaryMatrix::from_dense(&[&[1, 0, 1, 0, 1], &[0, 1, 0, 1, 0]])
    }
    pub fn alt25b() -> BinaryMatrix {
        BinaryMatrix::from_dense(&[&[0, 1, 0, 1, 0], &[1, 0, 1, 0, 1]])
    }

    /// Looks a pattern up by its CLI name.
    pub fn by_name(name: &str) -> Option<BinaryMatrix> {
        Some(match name {
            "N" => n(),
            "Np" => n_prime(),
            "ones24" => ones24(),
            "alt25a" => alt25a(),
            "alt25b" => alt25b(),
            _ => return None,
        })
    }
}

/// Side length `tC(s,t)`.
pub fn side(ev: &mut Evaluator, s: u64, t: u64) -> Result<BigNat, PatError> {
    Ok(ev.c_fn(s, t)? * t)
}

/// Builds `M(s,t)` and its block structure.
pub fn build_m(
    ev: &mut Evaluator,
    s: u64,
    t: u64,
    cap: u64,
) -> Result<(BinaryMatrix, BlockStructure), PatError> {
    if s == 0 || t == 0 {
        return Err(PatError::Precondition("s and t must be positive".into()));
    }
    let n = side(ev, s, t)?;
    if n > BigNat::from(cap) {
        return Err(PatError::SizeCap { s, t, side: n.to_string(), cap });
    }
    Ok(build_m_rec(ev, s, t as usize)?)
}

fn build_m_rec(ev: &mut Evaluator, s: u64, t: usize) -> Result<(BinaryMatrix, BlockStructure), ArithError> {
    if s == 1 {
        let m = BinaryMatrix { nrows: t, ncols: t, rows: vec![vec![1]; t] };
        return Ok((m, BlockStructure { t, vstarts: vec![1] }));
    }
    if t == 1 {
        let m = BinaryMatrix { nrows: 2, ncols: 2, rows: vec![vec![1], vec![2]] };
        return Ok((m, BlockStructure { t: 1, vstarts: vec![1, 2] }));
    }
    let (p, pb) = build_m_rec(ev, s, t - 1)?;
    step_m(ev, s, &p, &pb)
}

/// `M(s,t+1)` from `M(s,t)` and its block structure, for `s ≥ 2`.
pub fn extend_m(
    ev: &mut Evaluator,
    s: u64,
    prev: &(BinaryMatrix, BlockStructure),
    cap: u64,
) -> Result<(BinaryMatrix, BlockStructure), PatError> {
    let t = prev.1.t as u64 + 1;
    if s < 2 {
        return build_m(ev, s, t, cap);
    }
    let n = side(ev, s, t)?;
    if n > BigNat::from(cap) {
        return Err(PatError::SizeCap { s, t, side: n.to_string(), cap });
    }
    Ok(step_m(ev, s, &prev.0, &prev.1)?)
}

fn step_m(
    ev: &mut Evaluator,
    s: u64,
    p: &BinaryMatrix,
    pb: &BlockStructure,
) -> Result<(BinaryMatrix, BlockStructure), ArithError> {
    let t = pb.t + 1;
    let c_prev = pb.vstarts.len();
    let (q, qb) = build_m_rec(ev, s - 1, c_prev)?;
    let copies = qb.vstarts.len();
    debug_assert_eq!(q.nrows, copies * c_prev);

    // Column layout: copy j of P, then vertical block V_j of Q, for j = 1..copies.
    let pw = p.ncols as u32;
    let mut q_map = vec![0u32; q.ncols + 1];
    let mut copy_off = Vec::with_capacity(copies);
    let mut col = 0u32;
    for j in 0..copies {
        copy_off.push(col);
        col += pw;
        let lo = qb.vstarts[j];
        let hi = if j + 1 < copies { qb.vstarts[j + 1] } else { q.ncols as u32 + 1 };
        for c in lo..hi {
            col += 1;
            q_map[c as usize] = col;
        }
    }
    let ncols = col as usize;

    let h = t - 1;
    let mut rows = Vec::with_capacity(ncols);
    let mut vstarts = Vec::with_capacity(copies * c_prev);
    for (j, &off) in copy_off.iter().enumerate() {
        for i in 0..c_prev {
            let lead = pb.vstarts[i] + off;
            vstarts.push(lead);
            for r in &p.rows[i * h..(i + 1) * h] {
                rows.push(r.iter().map(|&c| c + off).collect());
            }
            let mut extra = vec![lead];
            extra.extend(q.rows[j * c_prev + i].iter().map(|&c| q_map[c as usize]));
            rows.push(extra);
        }
    }
    let m = BinaryMatrix { nrows: rows.len(), ncols, rows };
    Ok((m, BlockStructure { t, vstarts }))
}

/// Number of ones.
pub fn weight(m: &BinaryMatrix) -> BigNat {
    BigNat::from(m.weight())
}

/// The weight predicted by the recursion, without building the matrix.
pub fn weight_formula(ev: &mut Evaluator, s: u64, t: u64) -> Result<BigNat, ArithError> {
    if s == 1 {
        return Ok(BigNat::from(t));
    }
    if t == 1 {
        return Ok(BigNat::from(2u32));
    }
    let c_prev = ev.c_fn(s, t - 1)?;
    let copies = ev.c_big(s - 1, &c_prev)?;
    let c = ev.c_fn(s, t)?;
    let inner = weight_formula(ev, s, t - 1)?;
    let cp = num_traits::ToPrimitive::to_u64(&c_prev).ok_or_else(|| ArithError::InvalidArgument("C(s,t-1) too large".into()))?;
    let q = weight_formula(ev, s - 1, cp)?;
    Ok(c + copies * inner + q)
}

/// Checks the leading-one block invariants of a built matrix.
pub fn verify_blocks(m: &BinaryMatrix, bs: &BlockStructure, ev: &mut Evaluator, s: u64, t: u64) -> bool {
    let Ok(c) = ev.c_fn(s, t) else { return false };
    if bs.t != t as usize || BigNat::from(bs.vstarts.len()) != c {
        return false;
    }
    if bs.vstarts.first() != Some(&1) || bs.vstarts.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    if m.nrows != bs.t * bs.vstarts.len() || m.ncols != m.nrows {
        return false;
    }
    m.rows
        .iter()
        .enumerate()
        .all(|(i, r)| r.first() == Some(&bs.vstarts[i / bs.t]))
}

/// Last matrix column used by the leftmost matching, if any.
fn greedy_pair(top: &[u32], bottom: &[u32], need: &[(bool, bool)]) -> Option<u32> {
    let (mut i, mut k) = (0usize, 0usize);
    let mut last = 0u32;
    for &(nt, nb) in need {
        match (nt, nb) {
            (true, true) => loop {
                // Next column > last present in both rows.
                while i < top.len() && top[i] <= last {
                    i += 1;
                }
                while k < bottom.len() && bottom[k] <= last {
                    k += 1;
                }
                if i == top.len() || k == bottom.len() {
                    return None;
                }
                if top[i] == bottom[k] {
                    last = top[i];
                    break;
                }
                last = top[i].max(bottom[k]) - 1;
            },
            (true, false) => {
                while i < top.len() && top[i] <= last {
                    i += 1;
                }
                if i == top.len() {
                    return None;
                }
                last = top[i];
            }
            (false, true) => {
                while k < bottom.len() && bottom[k] <= last {
                    k += 1;
                }
                if k == bottom.len() {
                    return None;
                }
                last = bottom[k];
            }
            (false, false) => last += 1,
        }
    }
    Some(last)
}

/// Whether rows and columns of `m` can be deleted (and ones demoted) to obtain `p`.
pub fn contains(m: &BinaryMatrix, p: &BinaryMatrix) -> bool {
    assert!(p.weight() > 0, "pattern must be nonempty");
    if p.nrows > m.nrows || p.ncols > m.ncols {
        return false;
    }
    if *p == patterns::n() {
        return contains_n(m);
    }
    if *p == patterns::n_prime() {
        return contains_n_prime(m);
    }
    if *p == patterns::ones24() {
        return contains_ones(m, 4);
    }
    contains_generic(m, p)
}

/// Containment without any pattern-specific fast path.
pub fn contains_generic(m: &BinaryMatrix, p: &BinaryMatrix) -> bool {
    if p.nrows > m.nrows || p.ncols > m.ncols {
        return false;
    }
    if p.nrows == 2 {
        let need: Vec<(bool, bool)> = (1..=p.ncols as u32).map(|j| (p.get(0, j), p.get(1, j))).collect();
        let wt = p.rows[0].len();
        let wb = p.rows[1].len();
        for a in 0..m.nrows {
            if m.rows[a].len() < wt {
                continue;
            }
            for b in a + 1..m.nrows {
                if m.rows[b].len() < wb {
                    continue;
                }
                if greedy_pair(&m.rows[a], &m.rows[b], &need).is_some_and(|last| last as usize <= m.ncols) {
                    return true;
                }
            }
        }
        return false;
    }
    backtrack(m, p)
}

fn backtrack(m: &BinaryMatrix, p: &BinaryMatrix) -> bool {
    // Choose rows in order; then the columns greedily per column of the pattern.
    fn cols_match(m: &BinaryMatrix, p: &BinaryMatrix, rows: &[usize]) -> bool {
        let mut c = 0u32;
        for j in 1..=p.ncols as u32 {
            loop {
                c += 1;
                if c as usize > m.ncols {
                    return false;
                }
                if (0..p.nrows).all(|i| !p.get(i, j) || m.get(rows[i], c)) {
                    break;
                }
            }
        }
        true
    }
    fn rec(m: &BinaryMatrix, p: &BinaryMatrix, rows: &mut Vec<usize>, start: usize) -> bool {
        if rows.len() == p.nrows {
            return cols_match(m, p, rows);
        }
        let i = rows.len();
        for r in start..m.nrows {
            if m.nrows - r < p.nrows - i {
                break;
            }
            if m.rows[r].len() < p.rows[i].len() {
                continue;
            }
            rows.push(r);
            if rec(m, p, rows, r + 1) {
                return true;
            }
            rows.pop();
        }
        false
    }
    rec(m, p, &mut Vec::new(), 0)
}

/// Max-segment tree over columns `1..=n`.
struct MaxTree {
    n: usize,
    v: Vec<u32>,
}

impl MaxTree {
    fn new(n: usize) -> Self {
        MaxTree { n: n.max(1), v: vec![0; 2 * n.max(1)] }
    }
    fn raise(&mut self, col: u32, val: u32) {
        let mut i = col as usize - 1 + self.n;
        while i >= 1 {
            if self.v[i] >= val {
                break;
            }
            self.v[i] = val;
            i /= 2;
        }
    }
    /// Max over columns in the open interval `(lo, hi)`.
    fn max_open(&self, lo: u32, hi: u32) -> u32 {
        if hi <= lo + 1 {
            return 0;
        }
        let (mut l, mut r) = (lo as usize + self.n, hi as usize - 1 + self.n);
        let mut best = 0;
        while l < r {
            if l & 1 == 1 {
                best = best.max(self.v[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = best.max(self.v[r]);
            }
            l /= 2;
            r /= 2;
        }
        best
    }
}

/// `N`: rows `r1 < r2`, columns `y1 < x1 < y2 < x2` with `x*` in `r1`, `y*` in `r2`.
/// Taking `y1 = min r2` and `x2 = max r1` is optimal, so one sweep with a
/// range-max over "largest column of an earlier row through this column" decides it.
fn contains_n(m: &BinaryMatrix) -> bool {
    let mut tree = MaxTree::new(m.ncols);
    for r in &m.rows {
        if let Some(&y1) = r.first() {
            for &y2 in &r[1..] {
                if tree.max_open(y1, y2) > y2 {
                    return true;
                }
            }
            let top = *r.last().unwrap();
            for &c in r {
                tree.raise(c, top);
            }
        }
    }
    false
}

/// `N′`: rows `r1 < r2`, columns `x < y < z` with `x, z` in `r1` and `x, y` in `r2`.
fn contains_n_prime(m: &BinaryMatrix) -> bool {
    let mut best = vec![0u32; m.ncols + 1];
    for r in &m.rows {
        for w in r.windows(2) {
            if best[w[0] as usize] > w[1] {
                return true;
            }
        }
        if let Some(&top) = r.last() {
            for &c in r {
                best[c as usize] = best[c as usize].max(top);
            }
        }
    }
    false
}

/// The `2 × k` all-ones matrix: two rows sharing `k` columns.
fn contains_ones(m: &BinaryMatrix, k: usize) -> bool {
    fn subsets(r: &[u32], k: usize, cur: &mut Vec<u32>, out: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if cur.len() == k {
            return out(cur);
        }
        for (i, &c) in r.iter().enumerate() {
            if r.len() - i < k - cur.len() {
                break;
            }
            cur.push(c);
            if subsets(&r[i + 1..], k, cur, out) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for r in &m.rows {
        let mut mine = Vec::new();
        let hit = subsets(r, k, &mut Vec::new(), &mut |s| {
            if seen.contains(s) {
                return true;
            }
            mine.push(s.to_vec());
            false
        });
        if hit {
            return true;
        }
        seen.extend(mine);
    }
    false
}

/// Whether some chain `t_1 < … < t_{d+2}` alternates between `a` and `b`.
pub fn interleaves(a: &[i64], b: &[i64], d: usize) -> bool {
    let need = d + 2;
    let chain = |first: &[i64], second: &[i64]| {
        let (mut i, mut j, mut len, mut last) = (0usize, 0usize, 0usize, i64::MIN);
        loop {
            let src = if len % 2 == 0 { first } else { second };
            let idx = if len % 2 == 0 { &mut i } else { &mut j };
            while *idx < src.len() && src[*idx] <= last {
                *idx += 1;
            }
            if *idx == src.len() {
                return len;
            }
            last = src[*idx];
            len += 1;
            if len >= need {
                return len;
            }
        }
    };
    chain(a, b) >= need || chain(b, a) >= need
}

/// Whether the matrix meets the moment-curve polytopality criterion:
/// no `2×4` all-ones and neither alternating `2×5` pattern.
pub fn validate_moment_matrix(m: &BinaryMatrix) -> Result<bool, PatError> {
    check_moment_pre(m)?;
    Ok(!contains(m, &patterns::ones24())
        && !contains(m, &patterns::alt25a())
        && !contains(m, &patterns::alt25b()))
}

fn check_moment_pre(m: &BinaryMatrix) -> Result<(), PatError> {
    if let Some(i) = m.rows.iter().position(|r| r.len() < 4) {
        return Err(PatError::Precondition(format!("row {} has fewer than four ones", i + 1)));
    }
    let mut seen = HashSet::new();
    for (i, r) in m.rows.iter().enumerate() {
        if !seen.insert(r) {
            return Err(PatError::Precondition(format!("row {} repeats an earlier row", i + 1)));
        }
    }
    Ok(())
}

/// Statistics of a valid moment matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MomentStats {
    pub f0: u64,
    pub f3: u64,
    pub f03: u64,
}

/// `(f0, f3, f03)`: nonempty columns, rows, ones.
pub fn moment_stats(m: &BinaryMatrix) -> Result<MomentStats, PatError> {
    if !validate_moment_matrix(m)? {
        return Err(PatError::Precondition("matrix fails the polytopality criterion".into()));
    }
    let cols: HashSet<u32> = m.rows.iter().flatten().copied().collect();
    Ok(MomentStats { f0: cols.len() as u64, f3: m.nrows as u64, f03: m.weight() })
}

/// One facet of a moment-curve complex: the parameters of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentFacet {
    pub params: Vec<i64>,
}

/// Facets of the moment complex of `m`, one per row.
pub fn moment_facets(m: &BinaryMatrix) -> Vec<MomentFacet> {
    m.rows
        .iter()
        .map(|r| MomentFacet { params: r.iter().map(|&c| c as i64).collect() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(m: &BinaryMatrix) -> Vec<(usize, u32)> {
        m.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&c| (i + 1, c)))
            .collect()
    }

    #[test]
    fn m22_matches_table() {
        let mut ev = Evaluator::default();
        let (m, b) = build_m(&mut ev, 2, 2, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(ones(&m), vec![(1, 1), (2, 1), (2, 3), (3, 2), (4, 2), (4, 3)]);
        assert!(verify_blocks(&m, &b, &mut ev, 2, 2));
        let bad = BlockStructure { t: 2, vstarts: vec![1, 3] };
        assert!(!verify_blocks(&m, &bad, &mut ev, 2, 2));
    }

    #[test]
    fn base_cases() {
        let mut ev = Evaluator::default();
        let (m, _) = build_m(&mut ev, 1, 3, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(m.rows, vec![vec![1]; 3]);
        let (m, b) = build_m(&mut ev, 3, 1, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(m.rows, vec![vec![1], vec![2]]);
        assert!(verify_blocks(&m, &b, &mut ev, 3, 1));
        assert_eq!(weight(&build_m(&mut ev, 1, 9, DEFAULT_SIZE_CAP).unwrap().0), BigNat::from(9u32));
        assert_eq!(weight(&build_m(&mut ev, 4, 1, DEFAULT_SIZE_CAP).unwrap().0), BigNat::from(2u32));
    }

    #[test]
    fn size_cap() {
        let mut ev = Evaluator::default();
        assert!(matches!(build_m(&mut ev, 3, 13, DEFAULT_SIZE_CAP), Err(PatError::SizeCap { .. })));
    }

    #[test]
    fn containment_examples() {
        let n = patterns::n();
        assert!(contains(&n, &n));
        let m = BinaryMatrix::from_dense(&[&[1, 1, 0, 1], &[1, 0, 1, 0]]);
        assert!(contains(&m, &n));
        assert!(contains_generic(&m, &n));
        let mut ev = Evaluator::default();
        let (m23, _) = build_m(&mut ev, 2, 3, DEFAULT_SIZE_CAP).unwrap();
        assert!(!contains(&m23, &n));
        assert!(!contains(&m23, &patterns::n_prime()));
    }

    #[test]
    fn interleave_examples() {
        assert!(interleaves(&[1, 3, 5], &[2, 4], 3));
        assert!(!interleaves(&[1, 2, 3, 4], &[1, 2, 3, 4], 3));
        assert!(!interleaves(&[1, 3, 5], &[2, 4], 4));
    }

    #[test]
    fn moment_examples() {
        let dup = BinaryMatrix::from_dense(&[&[1, 1, 1, 1], &[1, 1, 1, 1]]);
        assert!(validate_moment_matrix(&dup).is_err());
        let twin = BinaryMatrix::from_dense(&[&[1, 1, 1, 1, 0], &[1, 1, 1, 1, 1]]);
        assert_eq!(validate_moment_matrix(&twin), Ok(false));
        let single = BinaryMatrix::from_dense(&[&[1, 1, 1, 1]]);
        assert_eq!(validate_moment_matrix(&single), Ok(true));
        assert_eq!(moment_stats(&single).unwrap(), MomentStats { f0: 4, f3: 1, f03: 4 });
        let mut ev = Evaluator::default();
        let (m15, _) = build_m(&mut ev, 1, 5, DEFAULT_SIZE_CAP).unwrap();
        assert!(moment_stats(&m15).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let mut ev = Evaluator::default();
        let (m, b) = build_m(&mut ev, 3, 2, DEFAULT_SIZE_CAP).unwrap();
        let txt = m.to_text(Some(&b));
        let (m2, b2) = BinaryMatrix::from_text(&txt).unwrap();
        assert_eq!(m, m2);
        assert_eq!(Some(b), b2);
    }
}
