//! Exact 4-dimensional convex hulls, their face lattices, and face-poset isomorphism.
//!
//! Hulls are brute force over 4-subsets. Points are scaled to a common
//! denominator first so that all side tests are integer determinants.

use crate::build::build_s;
use crate::cw::{CwBuilder, CwComplex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use thiserror::Error;

/// The shipped point set realizing `S(1,2)`.
pub const S12_POINTS: &str = include_str!("../data/s12_points.txt");

/// Largest input accepted by [`hull4`].
pub const MAX_POINTS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error("point set spans only a {0}-dimensional affine subspace")]
    Degenerate(usize),
    #[error("too many points: {0} > {MAX_POINTS}")]
    TooManyPoints(usize),
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("no realization found within the search budget")]
    SearchBudgetExhausted,
    #[error("t must lie in 2..=8, got {0}")]
    OutOfRange(u64),
    #[error("construction failed: {0}")]
    Build(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint4(pub [BigRational; 4]);

impl RationalPoint4 {
    pub fn from_ints(c: [(i64, i64); 4]) -> Self {
        RationalPoint4(c.map(|(p, q)| BigRational::new(p.into(), q.into())))
    }
}

impl std::fmt::Display for RationalPoint4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// One point per line, four `p/q` (or integer) tokens; `#` starts a comment.
pub fn parse_points(text: &str) -> Result<Vec<RationalPoint4>, RealizeError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |reason: String| RealizeError::Parse { line: i + 1, reason };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(err(format!("expected 4 coordinates, found {}", toks.len())));
        }
        let mut c: Vec<BigRational> = Vec::with_capacity(4);
        for t in toks {
            let (p, q) = t.split_once('/').unwrap_or((t, "1"));
            let p: BigInt = p.parse().map_err(|_| err(format!("bad numerator in {t:?}")))?;
            let q: BigInt = q.parse().map_err(|_| err(format!("bad denominator in {t:?}")))?;
            if q.is_zero() {
                return Err(err(format!("zero denominator in {t:?}")));
            }
            c.push(BigRational::new(p, q));
        }
        out.push(RationalPoint4([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]));
    }
    Ok(out)
}

pub fn s12_points() -> Vec<RationalPoint4> {
    parse_points(S12_POINTS).expect("shipped point file parses")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet4 {
    /// Indices into the input points, sorted; exactly the tight set.
    pub verts: Vec<usize>,
    /// `normal · x ≤ offset` for every input point.
    pub normal: [BigRational; 4],
    pub offset: BigRational,
}

#[derive(Clone, Debug)]
pub struct Polytope4 {
    pub points: Vec<RationalPoint4>,
    /// Sorted by vertex list.
    pub facets: Vec<Facet4>,
}

impl Polytope4 {
    /// Input indices lying on some facet.
    pub fn vertex_indices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.facets.iter().flat_map(|f| f.verts.iter().copied()).collect();
        s.into_iter().collect()
    }

    /// `<0` inside, `0` on, `>0` beyond, for each facet.
    pub fn sides(&self, p: &RationalPoint4) -> Vec<Ordering> {
        self.facets
            .iter()
            .map(|f| {
                let v: BigRational = (0..4).map(|i| &f.normal[i] * &p.0[i]).sum();
                v.cmp(&f.offset)
            })
            .collect()
    }
}

type IPoint = [BigInt; 4];

fn common_denominator(points: &[RationalPoint4]) -> BigInt {
    let mut l = BigInt::one();
    for p in points {
        for c in &p.0 {
            l = l.lcm(c.denom());
        }
    }
    l
}

fn scale_to_integers(points: &[RationalPoint4]) -> Vec<IPoint> {
    let l = common_denominator(points);
    points
        .iter()
        .map(|p| p.0.clone().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()))
        .collect()
}

fn sub(a: &IPoint, b: &IPoint) -> IPoint {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2], &a[3] - &b[3]]
}

fn dot(a: &IPoint, b: &IPoint) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2] + &a[3] * &b[3]
}

fn det3(m: [[&BigInt; 3]; 3]) -> BigInt {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Vector orthogonal to three vectors in R^4 (zero iff they are dependent).
fn normal_of(d: [&IPoint; 3]) -> IPoint {
    let col = |skip: usize| -> [usize; 3] {
        let mut c = [0; 3];
        let mut k = 0;
        for j in 0..4 {
            if j != skip {
                c[k] = j;
                k += 1;
            }
        }
        c
    };
    let mut n: IPoint = Default::default();
    for (j, nj) in n.iter_mut().enumerate() {
        let c = col(j);
        let m = [0, 1, 2].map(|r| [&d[r][c[0]], &d[r][c[1]], &d[r][c[2]]]);
        let v = det3(m);
        *nj = if j % 2 == 0 { v } else { -v };
    }
    let g = n.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in n.iter_mut() {
            *x = &*x / &g;
        }
    }
    n
}

/// Affine dimension of a set of points.
fn affine_dim(pts: &[&IPoint]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let mut rows: Vec<Vec<BigRational>> = pts[1..]
        .iter()
        .map(|p| sub(p, pts[0]).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..4 {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, piv);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[rank][col];
                for c in col..4 {
                    let v = &f * &rows[rank][c];
                    rows[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Convex hull of at most [`MAX_POINTS`] points spanning R^4.
pub fn hull4(points: &[RationalPoint4]) -> Result<Polytope4, RealizeError> {
    let n = points.len();
    if n > MAX_POINTS {
        return Err(RealizeError::TooManyPoints(n));
    }
    let ip = scale_to_integers(points);
    let refs: Vec<&IPoint> = ip.iter().collect();
    let d = affine_dim(&refs);
    if d < 4 {
        return Err(RealizeError::Degenerate(d));
    }
    let l = common_denominator(points);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut facets = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let db = sub(&ip[b], &ip[a]);
            for c in b + 1..n {
                let dc = sub(&ip[c], &ip[a]);
                for e in c + 1..n {
                    let de = sub(&ip[e], &ip[a]);
                    let mut nv = normal_of([&db, &dc, &de]);
                    if nv.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let off = dot(&nv, &ip[a]);
                    let vals: Vec<BigInt> = ip.iter().map(|p| dot(&nv, p) - &off).collect();
                    let pos = vals.iter().any(|v| v.is_positive());
                    let neg = vals.iter().any(|v| v.is_negative());
                    if pos && neg {
                        continue;
                    }
                    let tight: Vec<usize> = (0..n).filter(|&i| vals[i].is_zero()).collect();
                    if !seen.insert(tight.clone()) {
                        continue;
                    }
                    if pos {
                        for x in nv.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    let off = dot(&nv, &ip[a]);
                    // back to the original coordinates: n·(Lp) ≤ off
                    facets.push(Facet4 {
                        verts: tight,
                        normal: nv.map(|x| BigRational::from_integer(x * &l)),
                        offset: BigRational::from_integer(off),
                    });
                }
            }
        }
    }
    facets.sort_by(|x, y| x.verts.cmp(&y.verts));
    Ok(Polytope4 { points: points.to_vec(), facets })
}

/// The boundary complex, with 0-face `i` for the `i`-th entry of the returned index list.
pub fn face_lattice_with_vertices(p: &Polytope4) -> (CwComplex, Vec<usize>) {
    let ip = scale_to_integers(&p.points);
    let verts = p.vertex_indices();
    let local: HashMap<usize, u32> = verts.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let fsets: Vec<Vec<u32>> = p
        .facets
        .iter()
        .map(|f| f.verts.iter().map(|v| local[v]).collect())
        .collect();
    let mut all: BTreeSet<Vec<u32>> = fsets.iter().cloned().collect();
    let mut work: Vec<Vec<u32>> = fsets.clone();
    while let Some(s) = work.pop() {
        for f in &fsets {
            let i: Vec<u32> = s.iter().copied().filter(|v| f.binary_search(v).is_ok()).collect();
            if !i.is_empty() && all.insert(i.clone()) {
                work.push(i);
            }
        }
    }
    let mut faces: Vec<(usize, Vec<u32>)> = all
        .into_iter()
        .map(|s| {
            let pts: Vec<&IPoint> = s.iter().map(|&v| &ip[verts[v as usize]]).collect();
            (affine_dim(&pts), s)
        })
        .collect();
    faces.sort();
    let mut b = CwBuilder::new();
    for _ in 0..verts.len() {
        b.add_vertex();
    }
    let mut id_of: HashMap<Vec<u32>, u32> = (0..verts.len() as u32).map(|v| (vec![v], v)).collect();
    let mut by_dim: Vec<Vec<&Vec<u32>>> = vec![Vec::new(); 4];
    for (d, s) in &faces {
        by_dim[*d].push(s);
    }
    for d in 1..4 {
        for s in &by_dim[d] {
            let bd: Vec<u32> = if d == 1 {
                s.to_vec()
            } else {
                by_dim[d - 1]
                    .iter()
                    .filter(|g| g.iter().all(|v| s.binary_search(v).is_ok()))
                    .map(|g| id_of[*g])
                    .collect()
            };
            let id = b.add_face(d as u8, &bd);
            id_of.insert((*s).clone(), id);
        }
    }
    (b.finish(), verts)
}

pub fn face_lattice(p: &Polytope4) -> CwComplex {
    face_lattice_with_vertices(p).0
}

// ---------------------------------------------------------------------------
// isomorphism

/// Per-vertex signature: number of faces of each dimension containing it.
fn signatures(x: &CwComplex) -> Vec<[u32; 4]> {
    let mut sig = vec![[0u32; 4]; x.len()];
    for f in 0..x.len() as u32 {
        let d = x.dim_of(f) as usize;
        for &v in x.vertices(f) {
            sig[v as usize][d] += 1;
        }
    }
    sig
}

/// A dimension- and boundary-preserving bijection `a → b`, indexed by face id of `a`.
pub fn iso_map(a: &CwComplex, b: &CwComplex) -> Option<Vec<u32>> {
    if a.f_vector() != b.f_vector() || a.len() != b.len() {
        return None;
    }
    let sa = signatures(a);
    let sb = signatures(b);
    let va: Vec<u32> = a.ids_of_dim(0).collect();
    let vb: Vec<u32> = b.ids_of_dim(0).collect();
    let mut ma: Vec<[u32; 4]> = va.iter().map(|&v| sa[v as usize]).collect();
    let mut mb: Vec<[u32; 4]> = vb.iter().map(|&v| sb[v as usize]).collect();
    ma.sort_unstable();
    mb.sort_unstable();
    if ma != mb {
        return None;
    }
    let index_b = b.vertex_set_index();
    // neighbours along edges
    let adj = |x: &CwComplex| -> HashMap<u32, Vec<u32>> {
        let mut m: HashMap<u32, Vec<u32>> = HashMap::new();
        for e in x.ids_of_dim(1) {
            let v = x.vertices(e);
            m.entry(v[0]).or_default().push(v[1]);
            m.entry(v[1]).or_default().push(v[0]);
        }
        m
    };
    let adj_a = adj(a);
    let adj_b = adj(b);
    // BFS order so that each vertex after the first has an assigned neighbour
    let mut order: Vec<u32> = Vec::with_capacity(va.len());
    let mut placed: HashSet<u32> = HashSet::new();
    for &s in &va {
        if placed.insert(s) {
            order.push(s);
            let mut k = order.len() - 1;
            while k < order.len() {
                let u = order[k];
                for &w in adj_a.get(&u).map(|v| v.as_slice()).unwrap_or(&[]) {
                    if placed.insert(w) {
                        order.push(w);
                    }
                }
                k += 1;
            }
        }
    }
    let rank: HashMap<u32, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // faces of a, grouped by the position at which all their vertices are assigned
    let mut complete_at: Vec<Vec<u32>> = vec![Vec::new(); order.len()];
    for f in 0..a.len() as u32 {
        if a.dim_of(f) == 0 {
            continue;
        }
        let last = a.vertices(f).iter().map(|v| rank[v]).max().unwrap();
        complete_at[last].push(f);
    }
    let mut map = vec![u32::MAX; a.len()];
    let mut used = vec![false; b.len()];
    let mut buf: Vec<u32> = Vec::new();

    fn consistent(
        a: &CwComplex,
        b: &CwComplex,
        index_b: &HashMap<&[u32], u32>,
        faces: &[u32],
        map: &[u32],
        buf: &mut Vec<u32>,
    ) -> bool {
        faces.iter().all(|&f| {
            buf.clear();
            buf.extend(a.vertices(f).iter().map(|&v| map[v as usize]));
            buf.sort_unstable();
            matches!(index_b.get(&buf[..]), Some(&g) if b.dim_of(g) == a.dim_of(f))
        })
    }

    let n = order.len();
    let mut cand: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut next: Vec<usize> = vec![0; n];
    let mut depth = 0usize;
    let candidates_for = |depth: usize, map: &[u32], used: &[bool]| -> Vec<u32> {
        let v = order[depth];
        let anchor = adj_a
            .get(&v)
            .and_then(|ns| ns.iter().copied().find(|w| rank[w] < depth));
        let pool: Vec<u32> = match anchor {
            Some(u) => adj_b.get(&map[u as usize]).cloned().unwrap_or_default(),
            None => vb.clone(),
        };
        pool.into_iter().filter(|&w| !used[w as usize] && sb[w as usize] == sa[v as usize]).collect()
    };
    cand[0] = candidates_for(0, &map, &used);
    loop {
        if next[depth] >= cand[depth].len() {
            if depth == 0 {
                return None;
            }
            depth -= 1;
            let v = order[depth];
            used[map[v as usize] as usize] = false;
            map[v as usize] = u32::MAX;
            continue;
        }
        let w = cand[depth][next[depth]];
        next[depth] += 1;
        let v = order[depth];
        map[v as usize] = w;
        if !consistent(a, b, &index_b, &complete_at[depth], &map, &mut buf) {
            map[v as usize] = u32::MAX;
            continue;
        }
        used[w as usize] = true;
        if depth + 1 == n {
            if let Some(full) = finish_map(a, b, &index_b, &map) {
                return Some(full);
            }
            used[w as usize] = false;
            map[v as usize] = u32::MAX;
            continue;
        }
        depth += 1;
        cand[depth] = candidates_for(depth, &map, &used);
        next[depth] = 0;
    }
}

/// Extend a vertex bijection to all faces and check it preserves boundaries.
fn finish_map(a: &CwComplex, b: &CwComplex, index_b: &HashMap<&[u32], u32>, vmap: &[u32]) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; a.len()];
    let mut hit = vec![false; b.len()];
    let mut buf = Vec::new();
    for f in 0..a.len() as u32 {
        buf.clear();
        buf.extend(a.vertices(f).iter().map(|&v| vmap[v as usize]));
        buf.sort_unstable();
        let g = *index_b.get(&buf[..])?;
        if b.dim_of(g) != a.dim_of(f) || std::mem::replace(&mut hit[g as usize], true) {
            return None;
        }
        map[f as usize] = g;
    }
    for f in 0..a.len() as u32 {
        let mut x: Vec<u32> = a.boundary(f).iter().map(|&g| map[g as usize]).collect();
        let mut y: Vec<u32> = b.boundary(map[f as usize]).to_vec();
        x.sort_unstable();
        y.sort_unstable();
        if x != y {
            return None;
        }
    }
    Some(map)
}

pub fn iso_check(a: &CwComplex, b: &CwComplex) -> bool {
    iso_map(a, b).is_some()
}

// ---------------------------------------------------------------------------
// beyond placements for S(1,t)

/// Dyadic step sizes tried per new vertex.
pub const DEFAULT_BUDGET: u32 = 64;

fn s12_labels(points: &[RationalPoint4]) -> (usize, usize, usize, usize) {
    let find = |c: [(i64, i64); 4]| {
        let p = RationalPoint4::from_ints(c);
        points.iter().position(|q| *q == p).expect("labelled point present")
    };
    let v = find([(-4, 5), (-3, 5), (1, 1), (12, 1)]);
    let a = find([(-1, 1), (0, 1), (4, 3), (0, 1)]);
    let w = find([(4, 5), (3, 5), (1, 3), (3, 5)]);
    let x = find([(-5, 13), (12, 13), (8, 13), (16, 13)]);
    (v, a, w, x)
}

fn centroid(ps: &[&RationalPoint4]) -> RationalPoint4 {
    let n = BigRational::from_integer((ps.len() as i64).into());
    RationalPoint4([0, 1, 2, 3].map(|i| ps.iter().map(|p| p.0[i].clone()).sum::<BigRational>() / &n))
}

/// A point beyond exactly the facets containing the triangle `tri`, or `None`.
fn beyond_point(p: &Polytope4, tri: [usize; 3], budget: u32) -> Option<RationalPoint4> {
    let c = centroid(&tri.map(|i| &p.points[i]));
    let vs = p.vertex_indices();
    let all: Vec<&RationalPoint4> = vs.iter().map(|&i| &p.points[i]).collect();
    let o = centroid(&all);
    let dir: [BigRational; 4] = [0, 1, 2, 3].map(|i| &c.0[i] - &o.0[i]);
    let through: Vec<bool> = p.facets.iter().map(|f| tri.iter().all(|v| f.verts.contains(v))).collect();
    if !through.iter().any(|&b| b) {
        return None;
    }
    let mut lam = BigRational::one();
    for _ in 0..budget {
        let q = RationalPoint4([0, 1, 2, 3].map(|i| &c.0[i] + &lam * &dir[i]));
        let sides = p.sides(&q);
        let ok = sides
            .iter()
            .zip(&through)
            .all(|(s, &t)| if t { *s == Ordering::Greater } else { *s == Ordering::Less });
        if ok {
            return Some(q);
        }
        lam /= BigRational::from_integer(2.into());
    }
    None
}

/// A polytope whose boundary is isomorphic to the built `S(1,t)`.
pub fn realize_s1t(t: u64, budget: u32) -> Result<Polytope4, RealizeError> {
    if !(2..=8).contains(&t) {
        return Err(RealizeError::OutOfRange(t));
    }
    let mut pts = s12_points();
    let (v, a, mut w, mut x) = s12_labels(&pts);
    let mut p = hull4(&pts)?;
    for _ in 3..=t {
        let nw = beyond_point(&p, [a, v, w], budget).ok_or(RealizeError::SearchBudgetExhausted)?;
        pts.push(nw);
        w = pts.len() - 1;
        p = hull4(&pts)?;
        let nx = beyond_point(&p, [a, v, x], budget).ok_or(RealizeError::SearchBudgetExhausted)?;
        pts.push(nx);
        x = pts.len() - 1;
        p = hull4(&pts)?;
    }
    let target = build_s(1, t).map_err(|e| RealizeError::Build(e.to_string()))?;
    if !iso_check(&face_lattice(&p), &target.complex) {
        return Err(RealizeError::SearchBudgetExhausted);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw;

    fn pt(c: [i64; 4]) -> RationalPoint4 {
        RationalPoint4::from_ints(c.map(|x| (x, 1)))
    }

    fn simplex_points() -> Vec<RationalPoint4> {
        vec![pt([0, 0, 0, 0]), pt([1, 0, 0, 0]), pt([0, 1, 0, 0]), pt([0, 0, 1, 0]), pt([0, 0, 0, 1])]
    }

    #[test]
    fn simplex_hull() {
        let p = hull4(&simplex_points()).unwrap();
        assert_eq!(p.facets.len(), 5);
        let x = face_lattice(&p);
        assert_eq!(x.f_vector(), [5, 10, 10, 5]);
        x.validate().unwrap();
        let mut q = simplex_points();
        q.push(RationalPoint4::from_ints([(1, 10), (1, 10), (1, 10), (1, 10)]));
        let p = hull4(&q).unwrap();
        assert_eq!(p.facets.len(), 5);
        assert!(p.facets.iter().all(|f| !f.verts.contains(&5)));
    }

    #[test]
    fn degenerate_input() {
        let q = vec![pt([0, 0, 0, 0]), pt([1, 0, 0, 0]), pt([0, 1, 0, 0]), pt([0, 0, 1, 0]), pt([1, 1, 1, 0])];
        assert_eq!(hull4(&q).unwrap_err(), RealizeError::Degenerate(3));
    }

    #[test]
    fn product_of_squares() {
        let mut q = Vec::new();
        for a in [0, 1] {
            for b in [0, 1] {
                for c in [0, 1] {
                    for d in [0, 1] {
                        q.push(pt([a, b, c, d]));
                    }
                }
            }
        }
        let x = face_lattice(&hull4(&q).unwrap());
        assert_eq!(x.f_vector(), [16, 32, 24, 8]);
        x.strong_regularity().unwrap();
    }

    #[test]
    fn relabelled_simplex_is_isomorphic() {
        let x = face_lattice(&hull4(&simplex_points()).unwrap());
        let mut q = simplex_points();
        q.rotate_left(2);
        let y = face_lattice(&hull4(&q).unwrap());
        assert!(iso_check(&x, &y));
    }

    #[test]
    fn s12_points_lie_over_the_circle() {
        let p = s12_points();
        assert_eq!(p.len(), 11);
        assert_eq!(p[0], RationalPoint4::from_ints([(0, 1), (-1, 1), (0, 1), (0, 1)]));
        assert_eq!(p[10], RationalPoint4::from_ints([(-4, 5), (-3, 5), (1, 1), (12, 1)]));
        for q in &p {
            assert_eq!(&q.0[0] * &q.0[0] + &q.0[1] * &q.0[1], BigRational::one());
        }
    }

    #[test]
    fn shipped_points_realize_s12() {
        let p = hull4(&s12_points()).unwrap();
        assert_eq!(p.facets.len(), 20);
        let x = face_lattice(&p);
        assert_eq!(x.f_vector(), [11, 35, 44, 20]);
        x.strong_regularity().unwrap();
        let s = build_s(1, 2).unwrap();
        assert!(iso_check(&x, &s.complex));
        let simplex = face_lattice(&hull4(&simplex_points()).unwrap());
        assert!(!iso_check(&simplex, &s.complex));
        for v in x.ids_of_dim(0) {
            assert!(cw::is_2_sphere(&cw::vertex_figure(&x, v)));
        }
    }

    #[test]
    fn hull_is_order_independent() {
        let mut q = s12_points();
        let p = hull4(&q).unwrap();
        let sets = |p: &Polytope4, perm: &[usize]| -> BTreeSet<Vec<usize>> {
            p.facets
                .iter()
                .map(|f| {
                    let mut v: Vec<usize> = f.verts.iter().map(|&i| perm[i]).collect();
                    v.sort_unstable();
                    v
                })
                .collect()
        };
        let id: Vec<usize> = (0..q.len()).collect();
        q.reverse();
        let rev: Vec<usize> = (0..q.len()).rev().collect();
        let p2 = hull4(&q).unwrap();
        assert_eq!(sets(&p, &id), sets(&p2, &rev));
    }

    #[test]
    fn perturbed_point_breaks_isomorphism() {
        let mut p = s12_points();
        p[0].0[1] = BigRational::one();
        let x = face_lattice(&hull4(&p).unwrap());
        // same f-vector, different poset
        assert_eq!(x.f_vector(), [11, 35, 44, 20]);
        assert!(!iso_check(&x, &build_s(1, 2).unwrap().complex));
    }

    #[test]
    fn s13_by_beyond_placement() {
        let p = realize_s1t(3, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.points.len(), 13);
        assert_eq!(face_lattice(&p).f_vector(), [13, 45, 60, 28]);
        assert_eq!(realize_s1t(2, DEFAULT_BUDGET).unwrap().points, s12_points());
        assert_eq!(realize_s1t(9, DEFAULT_BUDGET).unwrap_err(), RealizeError::OutOfRange(9));
    }
}
