//! The balls `X(s,t)` and the spheres `S(s,t)`.
//!
//! Construction happens on a mutable polygon soup ([`Ball`]): every 2-face is a
//! vertex cycle, every facet a list of 2-faces split into a top and a bottom
//! side, and the profile is the counterclockwise vertex order seen from above.
//! Only at the end is the ball frozen into a [`CwComplex`] whose face ids are
//! assigned deterministically (vertices, then edges by first use, then 2-faces,
//! then facets, each in construction order).

use crate::arith::{ArithError, Evaluator, GuardConfig};
use crate::cw::{self, CwBuilder, CwComplex, Subcomplex, NONE};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("X({s},{t}) is outside the buildable range")]
    SizeCap { s: u64, t: u64 },
    #[error("invariant violation ({label}): {detail}")]
    InvariantViolation { label: String, detail: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn violation(label: &str, detail: impl Into<String>) -> BuildError {
    BuildError::InvariantViolation { label: label.to_string(), detail: detail.into() }
}

/// `(s,t)` pairs accepted at the top level.
pub fn within_cap(s: u64, t: u64) -> bool {
    match (s, t) {
        (_, 0) | (0, _) => false,
        (1..=3, 1) => true,
        (1, t) => t <= 4096,
        (2, t) => t <= 12,
        (3, 2) => true,
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tooth {
    pub a: u32,
    pub tip: u32,
    pub a2: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetSides {
    pub facet: u32,
    pub top: Vec<u32>,
    pub bottom: Vec<u32>,
}

/// Everything about a ball beyond its face poset. Ids are face ids of the complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallMeta {
    pub s: u64,
    pub t: u64,
    pub hub: u32,
    /// Counterclockwise, starting at the hub.
    pub profile: Vec<u32>,
    /// Counterclockwise, hub first.
    pub roots: Vec<u32>,
    pub fillets: Vec<Vec<u32>>,
    /// Ordered by the first root.
    pub teeth: Vec<Tooth>,
    pub root_triangles: Vec<u32>,
    pub facet_sides: Vec<FacetSides>,
    pub boundary_top: Vec<u32>,
    pub boundary_bottom: Vec<u32>,
    /// Facets from lowest to highest.
    pub stacking: Vec<u32>,
}

pub struct BallComplex {
    pub complex: CwComplex,
    pub meta: BallMeta,
}

pub struct SphereComplex {
    pub complex: CwComplex,
    pub apex: u32,
    pub meta: BallMeta,
    /// `(boundary 2-face of the ball, pyramid over it)`, sorted.
    pub pyramids: Vec<(u32, u32)>,
}

impl SphereComplex {
    /// Reassemble a sphere read back from disk; pyramids are recovered from the apex star.
    pub fn from_parts(complex: CwComplex, apex: u32, meta: BallMeta) -> Result<Self, BuildError> {
        if apex as usize >= complex.len() || complex.dim_of(apex) != 0 {
            return Err(BuildError::InvalidArgument(format!("apex {apex} is not a vertex")));
        }
        let mut pyramids = Vec::new();
        for f in complex.ids_of_dim(2) {
            if complex.has_vertex(f, apex) {
                continue;
            }
            if let Some(&p) = complex.cofaces(f).iter().find(|&&p| complex.has_vertex(p, apex)) {
                pyramids.push((f, p));
            }
        }
        Ok(SphereComplex { complex, apex, meta, pyramids })
    }

    pub fn pyramid_over(&self, f: u32) -> Option<u32> {
        self.pyramids.binary_search_by_key(&f, |p| p.0).ok().map(|k| self.pyramids[k].1)
    }
}

// ---------------------------------------------------------------------------
// mutable construction state

#[derive(Clone)]
struct Poly {
    cyc: Vec<u32>,
    facets: [u32; 2],
    alive: bool,
}

impl Poly {
    fn nfacets(&self) -> usize {
        self.facets.iter().filter(|&&f| f != NONE).count()
    }
}

#[derive(Clone, Default)]
struct Facet {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

#[derive(Clone, Default)]
struct Ball {
    s: u64,
    t: u64,
    nverts: u32,
    polys: Vec<Poly>,
    edges: HashMap<(u32, u32), Vec<u32>>,
    facets: Vec<Facet>,
    profile: Vec<u32>,
    hub: u32,
    roots: Vec<u32>,
    teeth: Vec<Tooth>,
    fillets: Vec<Vec<u32>>,
    order: Vec<u32>,
}

fn ek(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Ball {
    fn vertex(&mut self) -> u32 {
        self.nverts += 1;
        self.nverts - 1
    }

    fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.contains_key(&ek(a, b))
    }

    fn add_poly(&mut self, cyc: Vec<u32>) -> u32 {
        let id = self.polys.len() as u32;
        for i in 0..cyc.len() {
            let e = ek(cyc[i], cyc[(i + 1) % cyc.len()]);
            self.edges.entry(e).or_default().push(id);
        }
        self.polys.push(Poly { cyc, facets: [NONE; 2], alive: true });
        id
    }

    fn kill_poly(&mut self, id: u32) {
        let cyc = std::mem::take(&mut self.polys[id as usize].cyc);
        for i in 0..cyc.len() {
            let e = ek(cyc[i], cyc[(i + 1) % cyc.len()]);
            if let Some(v) = self.edges.get_mut(&e) {
                v.retain(|&p| p != id);
                if v.is_empty() {
                    self.edges.remove(&e);
                }
            }
        }
        self.polys[id as usize].cyc = cyc;
        self.polys[id as usize].alive = false;
    }

    fn polys_on(&self, a: u32, b: u32) -> &[u32] {
        self.edges.get(&ek(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn tri(&self, a: u32, b: u32, c: u32) -> Option<u32> {
        self.polys_on(a, b).iter().copied().find(|&p| {
            let cy = &self.polys[p as usize].cyc;
            cy.len() == 3 && cy.contains(&c)
        })
    }

    fn need_tri(&self, a: u32, b: u32, c: u32, label: &str) -> Result<u32, BuildError> {
        self.tri(a, b, c).ok_or_else(|| violation(label, format!("missing triangle {a} {b} {c}")))
    }

    fn add_facet(&mut self, top: Vec<u32>, bottom: Vec<u32>) -> Result<u32, BuildError> {
        let id = self.facets.len() as u32;
        for &p in top.iter().chain(&bottom) {
            let slot = &mut self.polys[p as usize].facets;
            if slot[0] == NONE {
                slot[0] = id;
            } else if slot[1] == NONE {
                slot[1] = id;
            } else {
                return Err(violation("a", format!("2-face {p} would lie in three facets")));
            }
        }
        self.facets.push(Facet { top, bottom });
        Ok(id)
    }

    /// The unique facet containing a boundary 2-face.
    fn boundary_facet(&self, p: u32, label: &str) -> Result<u32, BuildError> {
        let pl = &self.polys[p as usize];
        if pl.nfacets() != 1 {
            return Err(violation(label, format!("2-face {p} is not on the boundary of exactly one facet")));
        }
        Ok(pl.facets[0])
    }

    /// Replace 2-face `old` of facet `f` with new faces on each side.
    fn replace_in_facet(&mut self, f: u32, old: u32, top: &[u32], bottom: &[u32]) {
        let fc = &mut self.facets[f as usize];
        fc.top.retain(|&p| p != old);
        fc.bottom.retain(|&p| p != old);
        fc.top.extend_from_slice(top);
        fc.bottom.extend_from_slice(bottom);
        for &p in top.iter().chain(bottom) {
            let slot = &mut self.polys[p as usize].facets;
            if slot[0] == NONE {
                slot[0] = f;
            } else {
                slot[1] = f;
            }
        }
    }

    /// Insert vertex `m` into edge `uw` in every polygon containing it.
    fn subdivide(&mut self, u: u32, w: u32, m: u32) {
        let ps = self.edges.remove(&ek(u, w)).unwrap_or_default();
        for &p in &ps {
            let cyc = &mut self.polys[p as usize].cyc;
            let n = cyc.len();
            let i = (0..n)
                .find(|&i| ek(cyc[i], cyc[(i + 1) % n]) == ek(u, w))
                .expect("edge listed for polygon");
            cyc.insert(i + 1, m);
        }
        self.edges.entry(ek(u, m)).or_default().extend_from_slice(&ps);
        self.edges.entry(ek(m, w)).or_default().extend_from_slice(&ps);
    }

    fn pos_map(&self) -> HashMap<u32, usize> {
        self.profile.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }
}

// ---------------------------------------------------------------------------
// base cases

/// `X(s,1)`: a fan of `2^s+1` root triangles with a tooth on every root pair.
fn base_t1(s: u64) -> Ball {
    let n = (1u32 << s) + 2;
    let mut x = Ball { s, t: 1, ..Default::default() };
    let hub = x.vertex();
    let mut roots = vec![hub];
    let mut profile = vec![hub];
    let mut tips = Vec::new();
    for i in 0..n {
        let r = x.vertex();
        roots.push(r);
        profile.push(r);
        if i + 1 < n {
            let b = x.vertex();
            tips.push(b);
            profile.push(b);
        }
    }
    for i in 1..n as usize {
        x.add_poly(vec![hub, roots[i], roots[i + 1]]);
    }
    for i in 1..n as usize {
        x.add_poly(vec![roots[i], tips[i - 1], roots[i + 1]]);
        x.teeth.push(Tooth { a: roots[i], tip: tips[i - 1], a2: roots[i + 1] });
    }
    x.fillets = (2..n as usize).map(|i| vec![roots[i]]).collect();
    x.hub = hub;
    x.roots = roots;
    x.profile = profile;
    x
}

/// `X(1,t)` for `t ≥ 2`.
fn base_s1(t: u64) -> Result<Ball, BuildError> {
    let m = (t - 1) as usize;
    let mut x = Ball { s: 1, t, ..Default::default() };
    let a: Vec<u32> = (0..5).map(|_| x.vertex()).collect();
    let (a1, a2, a3, a4, a5) = (a[0], a[1], a[2], a[3], a[4]);
    let b2 = x.vertex();
    let b3 = x.vertex();
    let b4 = x.vertex();
    let c: Vec<u32> = (0..m).map(|_| x.vertex()).collect();
    let cp: Vec<u32> = (0..m).map(|_| x.vertex()).collect();
    let mut profile = vec![a1, a2, b2];
    profile.extend_from_slice(&c);
    profile.extend_from_slice(&[a3, b3]);
    profile.extend_from_slice(&cp);
    profile.extend_from_slice(&[a4, b4, a5]);
    x.profile = profile;
    let cl = c[m - 1];
    let cpl = cp[m - 1];

    let t_ = |x: &mut Ball, p: u32, q: u32, r: u32| -> u32 { x.tri(p, q, r).unwrap_or_else(|| x.add_poly(vec![p, q, r])) };
    // facet listing: (top, bottom) of each
    let add = |x: &mut Ball, top: &[[u32; 3]], bottom: &[[u32; 3]]| -> Result<u32, BuildError> {
        let tp: Vec<u32> = top.iter().map(|v| t_(x, v[0], v[1], v[2])).collect();
        let bt: Vec<u32> = bottom.iter().map(|v| t_(x, v[0], v[1], v[2])).collect();
        x.add_facet(tp, bt)
    };
    let gray = add(&mut x, &[[a1, a2, a5], [a2, a3, a5], [a3, a4, a5]], &[[a1, a2, a3], [a1, a3, a4], [a1, a4, a5]])?;
    let blue = add(&mut x, &[[a2, b2, a5], [b2, cl, a5], [cl, a3, a5]], &[[a2, b2, a3], [b2, cl, a3], [a2, a3, a5]])?;
    let pink = add(
        &mut x,
        &[[cl, a3, b3], [cl, b3, a5], [b3, cpl, a5], [cpl, a4, a5]],
        &[[cl, a3, a5], [a3, a4, a5], [a3, b3, a4], [b3, cpl, a4]],
    )?;
    let yellow = add(&mut x, &[[cpl, a4, b4], [cpl, b4, a5]], &[[cpl, a4, a5], [a4, b4, a5]])?;
    let mut extra: Vec<[u32; 4]> = Vec::new();
    for i in 0..m.saturating_sub(1) {
        let (ci, cj, qi, qj) = (c[i], c[i + 1], cp[i], cp[i + 1]);
        let f1 = add(&mut x, &[[b2, ci, a5], [ci, cj, a5]], &[[b2, ci, cj], [b2, cj, a5]])?;
        let f2 = add(&mut x, &[[ci, cj, b3], [ci, b3, a5]], &[[ci, cj, a5], [cj, b3, a5]])?;
        let f3 = add(&mut x, &[[b3, qi, a5], [qi, qj, a5]], &[[b3, qi, qj], [b3, qj, a5]])?;
        let f4 = add(&mut x, &[[qi, qj, b4], [qi, b4, a5]], &[[qi, qj, a5], [qj, b4, a5]])?;
        extra.push([f1, f2, f3, f4]);
    }
    // stacking: each family is stacked from the fillet end inwards
    x.order = vec![gray, blue, pink, yellow];
    for fs in extra.iter().rev() {
        x.order.extend_from_slice(fs);
    }
    x.hub = a1;
    x.roots = a.clone();
    x.teeth = vec![
        Tooth { a: a2, tip: b2, a2: a3 },
        Tooth { a: a3, tip: b3, a2: a4 },
        Tooth { a: a4, tip: b4, a2: a5 },
    ];
    let mut f1 = c.clone();
    f1.push(a3);
    let mut f2 = cp.clone();
    f2.push(a4);
    x.fillets = vec![f1, f2];
    Ok(x)
}

// ---------------------------------------------------------------------------
// recursion

struct FilletWork {
    /// Replacement for the reflected run `c_K, …, c_1` of the profile.
    segment: Vec<u32>,
    c_last: u32,
}

fn build_rec(ev: &mut Evaluator, s: u64, t: u64) -> Result<Ball, BuildError> {
    if t == 1 {
        return Ok(base_t1(s));
    }
    if s == 1 {
        return base_s1(t);
    }
    let kp_big = ev.kprime_fn(s, t - 1)?;
    let kp = kp_big
        .to_u64()
        .filter(|&k| k < u32::MAX as u64 / 4)
        .ok_or(BuildError::SizeCap { s, t })?;
    let base = build_rec(ev, s - 1, kp)?;
    let copy = build_rec(ev, s, t - 1)?;
    if copy.roots.len() as u64 != kp {
        return Err(violation("counts", format!("copy X({s},{}) has {} roots, expected {kp}", t - 1, copy.roots.len())));
    }
    recurse(base, &copy, s, t)
}

fn recurse(mut x: Ball, copy: &Ball, s: u64, t: u64) -> Result<Ball, BuildError> {
    let k = copy.roots.len();
    let o = x.hub;
    let orig_profile = x.profile.clone();
    let pos = x.pos_map();
    let plen = orig_profile.len();
    let old_teeth: Vec<Tooth> = x.teeth.iter().map(|t| Tooth { a: t.a2, tip: t.tip, a2: t.a }).collect();
    let mut removed_teeth: HashSet<(u32, u32)> = HashSet::new();
    let mut new_teeth: Vec<Tooth> = Vec::new();
    let mut root_set: HashSet<u32> = x.roots.iter().copied().collect();
    let mut front: Vec<u32> = Vec::new();
    let mut back: Vec<u32> = Vec::new();
    let mut works: Vec<FilletWork> = Vec::new();
    let mut new_fillets: Vec<Vec<u32>> = Vec::new();
    let fillets = std::mem::take(&mut x.fillets);

    for fl in &fillets {
        if fl.len() != k {
            return Err(violation("e", format!("fillet of length {} where {k} expected", fl.len())));
        }
        let c = fl;
        let ck = c[k - 1];
        // Step 1, read in the unreflected orientation
        let bp = orig_profile[pos[&c[0]] - 1];
        let b = orig_profile[(pos[&ck] + 1) % plen];
        let a = orig_profile[pos[&bp] - 1];
        let tooth = x.need_tri(ck, bp, a, "d")?;
        let root_tri = x.need_tri(o, ck, a, "c")?;
        let mut top_tris = Vec::with_capacity(k - 1);
        let mut ys = Vec::with_capacity(k - 1);
        for i in 0..k - 1 {
            let p = x.need_tri(b, c[i + 1], c[i], "e")?;
            ys.push(x.boundary_facet(p, "e")?);
            top_tris.push(p);
        }
        // Step 2
        if x.has_edge(o, bp) {
            return Err(violation("f", "hub already adjacent to a tip"));
        }
        let p1 = x.add_poly(vec![o, bp, a]);
        let p2 = x.add_poly(vec![o, ck, bp]);
        let f2 = x.add_facet(vec![root_tri, tooth], vec![p1, p2])?;
        // Step 3
        let mut top3 = Vec::with_capacity(k);
        for j in 0..k - 1 {
            top3.push(x.need_tri(bp, c[j + 1], c[j], "e")?);
            if j + 1 < k && x.has_edge(o, c[j]) {
                return Err(violation("e", "hub already adjacent to an inner fillet vertex"));
            }
        }
        top3.push(p2);
        let mut bot3 = vec![x.add_poly(vec![o, c[0], bp])];
        for j in 0..k - 1 {
            bot3.push(x.add_poly(vec![o, c[j + 1], c[j]]));
        }
        let f3 = x.add_facet(top3, bot3)?;
        front.push(f2);
        front.push(f3);
        // Step 4
        let alpha: Vec<u32> = (0..k - 1).map(|_| x.vertex()).collect();
        let beta: Vec<u32> = (0..k - 2).map(|_| x.vertex()).collect();
        for i in 0..k - 1 {
            let expect = if i == 0 { 2 } else { 3 };
            if x.polys_on(b, c[i]).len() != expect {
                return Err(violation("e", format!("edge from tip to fillet vertex {i} lies in {} ridges", x.polys_on(b, c[i]).len())));
            }
            x.subdivide(b, c[i], alpha[i]);
        }
        for i in 0..k - 1 {
            let p = top_tris[i];
            x.kill_poly(p);
            if i + 1 < k - 1 {
                let t1 = x.add_poly(vec![b, alpha[i + 1], alpha[i]]);
                let t2 = x.add_poly(vec![alpha[i + 1], beta[i], alpha[i]]);
                let t3 = x.add_poly(vec![alpha[i + 1], c[i + 1], beta[i]]);
                let u1 = x.add_poly(vec![c[i + 1], beta[i], c[i]]);
                let u2 = x.add_poly(vec![beta[i], alpha[i], c[i]]);
                x.replace_in_facet(ys[i], p, &[t1, t2, t3], &[u1, u2]);
            } else {
                let t1 = x.add_poly(vec![b, c[i + 1], alpha[i]]);
                let u1 = x.add_poly(vec![c[i + 1], alpha[i], c[i]]);
                x.replace_in_facet(ys[i], p, &[t1], &[u1]);
            }
        }
        removed_teeth.insert((ck, a));
        for i in 0..k - 2 {
            new_teeth.push(Tooth { a: c[i + 1], tip: beta[i], a2: c[i] });
        }
        new_teeth.push(Tooth { a: ck, tip: alpha[k - 2], a2: c[k - 2] });
        root_set.insert(bp);
        for &ci in &c[..k - 1] {
            root_set.insert(ci);
        }
        // Step 5
        let glued = attach_copy(&mut x, copy, b, &alpha, &beta, c)?;
        back.extend_from_slice(&glued.order);
        new_fillets.extend(glued.fillets);
        let mut seg = vec![ck, alpha[k - 2]];
        for kk in (1..=k - 2).rev() {
            // between alpha_{kk+1} and alpha_kk
            seg.push(c[kk]);
            let between = &glued.between[kk - 1];
            if between.is_empty() {
                seg.push(beta[kk - 1]);
            } else {
                if between[0] != beta[kk - 1] {
                    return Err(violation("d", "copy tooth tip not adjacent to its first root"));
                }
                seg.extend_from_slice(between);
            }
            seg.push(alpha[kk - 1]);
        }
        seg.push(c[0]);
        works.push(FilletWork { segment: seg, c_last: ck });
    }

    // new profile: reflect, then splice
    let mut refl = vec![o];
    refl.extend(orig_profile[1..].iter().rev());
    let by_last: HashMap<u32, usize> = works.iter().enumerate().map(|(i, w)| (w.c_last, i)).collect();
    let mut profile = Vec::with_capacity(x.nverts as usize);
    let mut i = 0;
    while i < refl.len() {
        let v = refl[i];
        if let Some(&w) = by_last.get(&v) {
            profile.extend_from_slice(&works[w].segment);
            i += k;
        } else {
            profile.push(v);
            i += 1;
        }
    }
    if profile.len() != x.nverts as usize {
        return Err(violation("b", format!("profile has {} of {} vertices", profile.len(), x.nverts)));
    }
    x.profile = profile;

    // surviving teeth of the reflected base
    let pos = x.pos_map();
    let mut teeth: Vec<Tooth> = new_teeth;
    let mut touched: HashSet<u32> = HashSet::new();
    for tt in old_teeth {
        if removed_teeth.contains(&(tt.a, tt.a2)) {
            continue;
        }
        let (pa, pb, pa2) = (pos[&tt.a], pos[&tt.tip], pos[&tt.a2]);
        if pb == pa + 1 && pa2 == pb + 1 {
            teeth.push(tt);
            continue;
        }
        if pa2 != pb + 1 {
            return Err(violation("d", format!("tooth tip {} not adjacent to {}", tt.tip, tt.a2)));
        }
        let d = x.profile[pa + 1];
        let t1 = x.need_tri(tt.a, tt.tip, tt.a2, "d")?;
        let t2 = x.need_tri(tt.a, d, tt.tip, "d")?;
        let f = x.boundary_facet(t1, "d")?;
        if x.boundary_facet(t2, "d")? != f
            || !x.facets[f as usize].bottom.contains(&t1)
            || !x.facets[f as usize].bottom.contains(&t2)
        {
            return Err(violation("d", "tooth pair not on the bottom of a common facet"));
        }
        let mut on_edge: Vec<u32> = x.polys_on(tt.a, tt.tip).to_vec();
        on_edge.sort_unstable();
        let mut pair = vec![t1, t2];
        pair.sort_unstable();
        if on_edge != pair || x.has_edge(tt.a2, d) {
            return Err(violation("d", "tooth flip would not be a local move"));
        }
        if !touched.insert(t1) || !touched.insert(t2) {
            return Err(violation("d", "a 2-face was modified twice by the tooth pass"));
        }
        x.kill_poly(t1);
        x.kill_poly(t2);
        let n1 = x.add_poly(vec![tt.a, d, tt.a2]);
        let n2 = x.add_poly(vec![d, tt.tip, tt.a2]);
        let fc = &mut x.facets[f as usize];
        fc.bottom.retain(|&p| p != t1 && p != t2);
        x.replace_in_facet(f, NONE, &[], &[n1, n2]);
        teeth.push(Tooth { a: tt.a, tip: d, a2: tt.a2 });
    }

    x.roots = x.profile.iter().copied().filter(|v| root_set.contains(v)).collect();
    let ridx: HashMap<u32, usize> = x.roots.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    teeth.sort_by_key(|t| ridx.get(&t.a).copied().unwrap_or(usize::MAX));
    x.teeth = teeth;
    x.fillets = new_fillets;
    front.reverse();
    front.extend_from_slice(&x.order);
    front.extend_from_slice(&back);
    x.order = front;
    x.s = s;
    x.t = t;
    Ok(x)
}

struct Glued {
    order: Vec<u32>,
    fillets: Vec<Vec<u32>>,
    /// For k = 1..K−2 (index k−1): images of the copy's profile vertices strictly
    /// between the roots mapped to `alpha_{k+1}` and `alpha_k`.
    between: Vec<Vec<u32>>,
}

/// Step 5: glue a copy of `X(s,t−1)` onto the top triangles over one fillet.
fn attach_copy(x: &mut Ball, cp: &Ball, b: u32, alpha: &[u32], beta: &[u32], c: &[u32]) -> Result<Glued, BuildError> {
    let k = cp.roots.len();
    let mut vmap = vec![NONE; cp.nverts as usize];
    vmap[cp.hub as usize] = b;
    // orientation-preserving: the copy's r-th non-hub root goes to alpha_{K−r}
    for r in 1..k {
        vmap[cp.roots[r] as usize] = alpha[k - r - 1];
    }
    let cridx: HashMap<u32, usize> = cp.roots.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut d_polys: HashSet<u32> = HashSet::new();
    let mut pmap: HashMap<u32, u32> = HashMap::new();
    for r in 1..k - 1 {
        let p = cp.need_tri(cp.hub, cp.roots[r], cp.roots[r + 1], "c")?;
        let q = x.need_tri(b, alpha[k - r - 1], alpha[k - r - 2], "step5")?;
        d_polys.insert(p);
        pmap.insert(p, q);
    }
    for tt in &cp.teeth {
        let r = cridx[&tt.a];
        if cridx.get(&tt.a2) != Some(&(r + 1)) {
            return Err(violation("d", "copy tooth between non-consecutive roots"));
        }
        let kk = k - r - 1; // alpha_{kk+1}, beta_kk, alpha_kk (1-based)
        vmap[tt.tip as usize] = beta[kk - 1];
        let p = cp.need_tri(tt.a, tt.tip, tt.a2, "d")?;
        let q = x.need_tri(alpha[kk], beta[kk - 1], alpha[kk - 1], "step5")?;
        d_polys.insert(p);
        pmap.insert(p, q);
    }
    // f(D) against the closed form with R = K' − 2 − #teeth
    let dv = k + cp.teeth.len();
    let mut dedges: HashSet<(u32, u32)> = HashSet::new();
    for &p in &d_polys {
        let cy = &cp.polys[p as usize].cyc;
        for i in 0..cy.len() {
            dedges.insert(ek(cy[i], cy[(i + 1) % cy.len()]));
        }
    }
    let r_val = k as i64 - 2 - cp.teeth.len() as i64;
    let kk = k as i64;
    if dv as i64 != 2 * kk - r_val - 2
        || dedges.len() as i64 != 4 * kk - 2 * r_val - 7
        || d_polys.len() as i64 != 2 * kk - r_val - 4
    {
        return Err(violation("step5", "attachment disc has the wrong f-vector"));
    }
    // non-disc edges between glued vertices must be new
    for (pi, p) in cp.polys.iter().enumerate() {
        if !p.alive || d_polys.contains(&(pi as u32)) {
            continue;
        }
        for i in 0..p.cyc.len() {
            let (u, w) = (p.cyc[i], p.cyc[(i + 1) % p.cyc.len()]);
            let (mu, mw) = (vmap[u as usize], vmap[w as usize]);
            if mu != NONE && mw != NONE && !dedges.contains(&ek(u, w)) && x.has_edge(mu, mw) {
                return Err(violation("strong-regularity", "copy edge collides with an existing edge"));
            }
        }
    }
    for v in 0..cp.nverts as usize {
        if vmap[v] == NONE {
            vmap[v] = x.vertex();
        }
    }
    for (pi, p) in cp.polys.iter().enumerate() {
        if !p.alive || d_polys.contains(&(pi as u32)) {
            continue;
        }
        let cyc: Vec<u32> = p.cyc.iter().map(|&v| vmap[v as usize]).collect();
        let q = x.add_poly(cyc);
        pmap.insert(pi as u32, q);
    }
    let mut fmap = Vec::with_capacity(cp.facets.len());
    for f in &cp.facets {
        let top = f.top.iter().map(|p| pmap[p]).collect();
        let bottom = f.bottom.iter().map(|p| pmap[p]).collect();
        fmap.push(x.add_facet(top, bottom)?);
    }
    let order = cp.order.iter().map(|&f| fmap[f as usize]).collect();
    let mut fillets = Vec::with_capacity(cp.fillets.len());
    for fl in &cp.fillets {
        let last = *fl.last().unwrap();
        let r = *cridx.get(&last).ok_or_else(|| violation("e", "fillet does not end at a root"))?;
        // mapped to alpha_{K−r}; append c_{K−r}
        let mut nf: Vec<u32> = fl.iter().map(|&v| vmap[v as usize]).collect();
        nf.push(c[k - r - 1]);
        fillets.push(nf);
    }
    let mut between = vec![Vec::new(); k.saturating_sub(2)];
    let mut cur: Option<usize> = None;
    for &v in &cp.profile[1..] {
        if let Some(&r) = cridx.get(&v) {
            cur = Some(r);
        } else if let Some(r) = cur {
            if r + 1 >= k {
                return Err(violation("c", "vertices after the last root of the copy"));
            }
            between[k - r - 2].push(vmap[v as usize]);
        } else {
            return Err(violation("c", "vertices between the hub and first root of the copy"));
        }
    }
    Ok(Glued { order, fillets, between })
}

// ---------------------------------------------------------------------------
// freezing

fn freeze(x: &Ball) -> Result<BallComplex, BuildError> {
    let mut b = CwBuilder::new();
    for _ in 0..x.nverts {
        b.add_vertex();
    }
    let mut edge_id: HashMap<(u32, u32), u32> = HashMap::with_capacity(x.edges.len());
    for p in x.polys.iter().filter(|p| p.alive) {
        for i in 0..p.cyc.len() {
            let e = ek(p.cyc[i], p.cyc[(i + 1) % p.cyc.len()]);
            if !edge_id.contains_key(&e) {
                let id = b.add_face(1, &[e.0, e.1]);
                edge_id.insert(e, id);
            }
        }
    }
    let mut poly_id = vec![NONE; x.polys.len()];
    let mut bd = Vec::new();
    for (pi, p) in x.polys.iter().enumerate() {
        if !p.alive {
            continue;
        }
        bd.clear();
        for i in 0..p.cyc.len() {
            bd.push(edge_id[&ek(p.cyc[i], p.cyc[(i + 1) % p.cyc.len()])]);
        }
        poly_id[pi] = b.add_face(2, &bd);
    }
    let mut facet_sides = Vec::with_capacity(x.facets.len());
    for f in &x.facets {
        bd.clear();
        let top: Vec<u32> = f.top.iter().map(|&p| poly_id[p as usize]).collect();
        let bottom: Vec<u32> = f.bottom.iter().map(|&p| poly_id[p as usize]).collect();
        if top.iter().chain(&bottom).any(|&p| p == NONE) {
            return Err(violation("a", "facet refers to a deleted 2-face"));
        }
        bd.extend_from_slice(&top);
        bd.extend_from_slice(&bottom);
        let id = b.add_face(3, &bd);
        facet_sides.push(FacetSides { facet: id, top, bottom });
    }
    let complex = b.finish();
    let mut boundary_top = Vec::new();
    let mut boundary_bottom = Vec::new();
    for (pi, p) in x.polys.iter().enumerate() {
        if !p.alive {
            continue;
        }
        let id = poly_id[pi];
        match p.nfacets() {
            0 => {
                boundary_top.push(id);
                boundary_bottom.push(id);
            }
            1 => {
                let f = &x.facets[p.facets[0] as usize];
                if f.top.contains(&(pi as u32)) {
                    boundary_top.push(id);
                } else {
                    boundary_bottom.push(id);
                }
            }
            _ => {}
        }
    }
    let mut root_triangles = Vec::new();
    for i in 1..x.roots.len().saturating_sub(1) {
        let p = x.need_tri(x.hub, x.roots[i], x.roots[i + 1], "c")?;
        root_triangles.push(poly_id[p as usize]);
    }
    let meta = BallMeta {
        s: x.s,
        t: x.t,
        hub: x.hub,
        profile: x.profile.clone(),
        roots: x.roots.clone(),
        fillets: x.fillets.clone(),
        teeth: x.teeth.clone(),
        root_triangles,
        boundary_top,
        boundary_bottom,
        stacking: x.order.iter().map(|&f| facet_sides[f as usize].facet).collect(),
        facet_sides,
    };
    Ok(BallComplex { complex, meta })
}

/// `X(s,1)`.
pub fn build_x_base_t1(s: u64) -> Result<BallComplex, BuildError> {
    if !within_cap(s, 1) {
        return Err(BuildError::SizeCap { s, t: 1 });
    }
    freeze(&base_t1(s))
}

/// `X(1,t)`, `t ≥ 2`.
pub fn build_x_base_s1(t: u64) -> Result<BallComplex, BuildError> {
    if t < 2 {
        return Err(BuildError::InvalidArgument("X(1,t) base case needs t ≥ 2".into()));
    }
    if !within_cap(1, t) {
        return Err(BuildError::SizeCap { s: 1, t });
    }
    freeze(&base_s1(t)?)
}

pub fn build_x(s: u64, t: u64) -> Result<BallComplex, BuildError> {
    if s == 0 || t == 0 {
        return Err(BuildError::InvalidArgument("s and t must be positive".into()));
    }
    if !within_cap(s, t) {
        return Err(BuildError::SizeCap { s, t });
    }
    let mut ev = Evaluator::new(GuardConfig::default());
    let x = build_rec(&mut ev, s, t)?;
    freeze(&x)
}

/// Cone over the boundary of `X(s,t)`.
pub fn build_s(s: u64, t: u64) -> Result<SphereComplex, BuildError> {
    if t < 2 {
        return Err(BuildError::InvalidArgument("S(s,t) needs t ≥ 2".into()));
    }
    let ball = build_x(s, t)?;
    Ok(sphere_from_ball(ball))
}

pub fn sphere_from_ball(ball: BallComplex) -> SphereComplex {
    let BallComplex { complex, meta } = ball;
    let cone = {
        let w = cw::boundary_subcomplex(&complex);
        cw::cone(&complex, &w)
    };
    drop(complex);
    let pyramids = cone
        .pairs
        .iter()
        .copied()
        .filter(|&(f, _)| cone.complex.dim_of(f) == 2)
        .collect();
    SphereComplex { complex: cone.complex, apex: cone.apex, meta, pyramids }
}

// ---------------------------------------------------------------------------
// JSON

impl BallMeta {
    pub fn to_json(&self, kind: &str, apex: Option<u32>) -> serde_json::Value {
        let facet_sides: serde_json::Map<String, serde_json::Value> = self
            .facet_sides
            .iter()
            .map(|fs| (fs.facet.to_string(), serde_json::json!({"top": fs.top, "bottom": fs.bottom})))
            .collect();
        serde_json::json!({
            "kind": kind,
            "s": self.s,
            "t": self.t,
            "hub": self.hub,
            "apex": apex,
            "profile": self.profile,
            "roots": self.roots,
            "fillets": self.fillets,
            "teeth": self.teeth,
            "root_triangles": self.root_triangles,
            "facet_sides": facet_sides,
            "boundary_sides": {"top": self.boundary_top, "bottom": self.boundary_bottom},
            "stacking": self.stacking,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<BallMeta, BuildError> {
        let bad = |what: &str| BuildError::InvalidArgument(format!("meta: missing or malformed {what}"));
        let get = |k: &str| v.get(k).ok_or_else(|| bad(k));
        let num = |k: &str| get(k).and_then(|x| x.as_u64().ok_or_else(|| bad(k)));
        let ids = |x: &serde_json::Value, k: &str| -> Result<Vec<u32>, BuildError> {
            serde_json::from_value(x.clone()).map_err(|_| bad(k))
        };
        let mut facet_sides: Vec<FacetSides> = Vec::new();
        let fsv = get("facet_sides")?.as_object().ok_or_else(|| bad("facet_sides"))?;
        for (key, val) in fsv {
            let facet: u32 = key.parse().map_err(|_| bad("facet_sides"))?;
            facet_sides.push(FacetSides {
                facet,
                top: ids(val.get("top").ok_or_else(|| bad("facet_sides"))?, "facet_sides")?,
                bottom: ids(val.get("bottom").ok_or_else(|| bad("facet_sides"))?, "facet_sides")?,
            });
        }
        facet_sides.sort_by_key(|f| f.facet);
        let bs = get("boundary_sides")?;
        Ok(BallMeta {
            s: num("s")?,
            t: num("t")?,
            hub: num("hub")? as u32,
            profile: ids(get("profile")?, "profile")?,
            roots: ids(get("roots")?, "roots")?,
            fillets: serde_json::from_value(get("fillets")?.clone()).map_err(|_| bad("fillets"))?,
            teeth: serde_json::from_value(get("teeth")?.clone()).map_err(|_| bad("teeth"))?,
            root_triangles: ids(get("root_triangles")?, "root_triangles")?,
            facet_sides,
            boundary_top: ids(bs.get("top").ok_or_else(|| bad("boundary_sides"))?, "boundary_sides")?,
            boundary_bottom: ids(bs.get("bottom").ok_or_else(|| bad("boundary_sides"))?, "boundary_sides")?,
            stacking: match v.get("stacking") {
                Some(x) => ids(x, "stacking")?,
                None => Vec::new(),
            },
        })
    }
}

// ---------------------------------------------------------------------------
// property checks

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyItem {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub items: Vec<PropertyItem>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn get(&self, label: &str) -> Option<&PropertyItem> {
        self.items.iter().find(|i| i.label == label)
    }
}

/// Check properties (a)–(f) plus the counting identities.
pub fn verify_properties(x: &BallComplex) -> PropertyReport {
    let mut items = Vec::new();
    let mut push = |label: &str, r: Result<(), String>| {
        items.push(PropertyItem {
            label: label.to_string(),
            pass: r.is_ok(),
            detail: r.err().unwrap_or_default(),
        })
    };
    let ctx = Ctx::new(x);
    push("counts", ctx.counts());
    push("a", ctx.prop_a());
    push("b", ctx.prop_b());
    push("c", ctx.prop_c());
    push("d", ctx.prop_d());
    push("e", ctx.prop_e());
    push("f", ctx.prop_f());
    PropertyReport { items }
}

struct Ctx<'a> {
    x: &'a CwComplex,
    m: &'a BallMeta,
    pos: HashMap<u32, usize>,
    top: HashSet<u32>,
    bottom: HashSet<u32>,
    index: HashMap<&'a [u32], u32>,
}

impl<'a> Ctx<'a> {
    fn new(b: &'a BallComplex) -> Self {
        Ctx {
            x: &b.complex,
            m: &b.meta,
            pos: b.meta.profile.iter().enumerate().map(|(i, &v)| (v, i)).collect(),
            top: b.meta.boundary_top.iter().copied().collect(),
            bottom: b.meta.boundary_bottom.iter().copied().collect(),
            index: b.complex.vertex_set_index(),
        }
    }

    fn tri(&self, a: u32, b: u32, c: u32) -> Option<u32> {
        let mut v = [a, b, c];
        v.sort_unstable();
        self.index.get(&v[..]).copied().filter(|&f| self.x.dim_of(f) == 2)
    }

    fn pos_of(&self, v: u32) -> Result<usize, String> {
        self.pos.get(&v).copied().ok_or_else(|| format!("vertex {v} not on the profile"))
    }

    fn counts(&self) -> Result<(), String> {
        let mut ev = Evaluator::new(GuardConfig::default());
        let (s, t) = (self.m.s, self.m.t);
        let k = ev.k_fn(s, t).map_err(|e| e.to_string())?;
        let kp = ev.kprime_fn(s, t).map_err(|e| e.to_string())?;
        let r = ev.r_fn(s, t).map_err(|e| e.to_string())?;
        let nf = self.m.fillets.len() as u64;
        let nr = self.m.roots.len() as u64;
        let nrt = self.m.root_triangles.len() as u64;
        let nt = self.m.teeth.len() as u64;
        if k != nf.into() {
            return Err(format!("{nf} fillets, K = {k}"));
        }
        if kp != nr.into() {
            return Err(format!("{nr} roots, K' = {kp}"));
        }
        if nrt < nt || r != (nrt - nt).into() {
            return Err(format!("{nrt} root triangles and {nt} teeth, R = {r}"));
        }
        if let Some(f) = self.m.fillets.iter().find(|f| f.len() as u64 != t) {
            return Err(format!("fillet of length {}", f.len()));
        }
        Ok(())
    }

    fn prop_a(&self) -> Result<(), String> {
        self.x.validate().map_err(|e| e.to_string())?;
        if self.m.t == 1 {
            return if cw::is_closed_disc(self.x) { Ok(()) } else { Err("X(s,1) is not a disc".into()) };
        }
        if self.x.euler_char() != 1 {
            return Err(format!("Euler characteristic {}", self.x.euler_char()));
        }
        let bd = cw::boundary_subcomplex(self.x);
        if !bd.is_2_sphere() {
            return Err("boundary is not a 2-sphere".into());
        }
        let nv = self.x.ids_of_dim(0).count();
        if bd.faces_of_dim(0).len() != nv {
            return Err("some vertex is interior".into());
        }
        for v in self.x.ids_of_dim(0) {
            let fig = cw::vertex_figure(self.x, v);
            if !cw::is_closed_disc(&fig) {
                return Err(format!("vertex figure at {v} is not a disc"));
            }
        }
        Ok(())
    }

    /// Cyclic sequence `cyc` runs along the profile, in one direction or the other.
    fn follows_profile(&self, cyc: &[u32]) -> Result<bool, String> {
        let n = cyc.len();
        if n <= 3 {
            return Ok(true);
        }
        let ps: Vec<usize> = cyc.iter().map(|&v| self.pos_of(v)).collect::<Result<_, _>>()?;
        let desc = (0..n).filter(|&i| ps[i] > ps[(i + 1) % n]).count();
        let asc = (0..n).filter(|&i| ps[i] < ps[(i + 1) % n]).count();
        Ok(desc == 1 || asc == 1)
    }

    /// The cyclic vertex order of a 2-face, walked along its boundary edges.
    fn cycle_of(&self, f: u32) -> Vec<u32> {
        boundary_walk(self.x, self.x.boundary(f))
    }

    fn prop_b(&self) -> Result<(), String> {
        for f in self.x.ids_of_dim(2) {
            if !self.follows_profile(&self.cycle_of(f))? {
                return Err(format!("2-face {f} does not follow the profile"));
            }
        }
        for fs in &self.m.facet_sides {
            for (side, set) in [("top", &fs.top), ("bottom", &fs.bottom)] {
                if let Some(why) = cw::disc_failure(self.x, set) {
                    return Err(format!("{side} of facet {}: {why}", fs.facet));
                }
            }
            let et = boundary_edges(self.x, &fs.top);
            let eb = boundary_edges(self.x, &fs.bottom);
            if et != eb {
                return Err(format!("top and bottom of facet {} meet along different cycles", fs.facet));
            }
            let cyc = boundary_walk(self.x, &et);
            if cyc.len() != self.x.vertices(fs.facet).len() || !self.follows_profile(&cyc)? {
                return Err(format!("facet {} does not project onto the hull of its vertices", fs.facet));
            }
        }
        if self.m.t > 1 {
            let ring: Vec<u32> = {
                let p = &self.m.profile;
                let mut e = Vec::with_capacity(p.len());
                for i in 0..p.len() {
                    let mut vs = [p[i], p[(i + 1) % p.len()]];
                    vs.sort_unstable();
                    match self.index.get(&vs[..]) {
                        Some(&id) => e.push(id),
                        None => return Err(format!("profile edge {:?} missing", vs)),
                    }
                }
                e.sort_unstable();
                e
            };
            for (side, set) in [("top", &self.m.boundary_top), ("bottom", &self.m.boundary_bottom)] {
                if let Some(why) = cw::disc_failure(self.x, set) {
                    return Err(format!("{side} of the boundary: {why}"));
                }
                if boundary_edges(self.x, set) != ring {
                    return Err(format!("{side} of the boundary is not bounded by the profile"));
                }
            }
        }
        Ok(())
    }

    fn prop_c(&self) -> Result<(), String> {
        let r = &self.m.roots;
        let p = &self.m.profile;
        if r.first() != Some(&self.m.hub) || p.first() != Some(&self.m.hub) {
            return Err("hub does not lead the roots and the profile".into());
        }
        if r.len() < 3 || p[1] != r[1] || p[p.len() - 1] != r[r.len() - 1] {
            return Err("last root, hub and first root are not consecutive".into());
        }
        let mut last = 0;
        for &v in &r[1..] {
            let q = self.pos_of(v)?;
            if q <= last {
                return Err("roots out of profile order".into());
            }
            last = q;
        }
        for i in 1..r.len() - 1 {
            let Some(f) = self.tri(self.m.hub, r[i], r[i + 1]) else {
                return Err(format!("root triangle {i} missing"));
            };
            if !self.bottom.contains(&f) {
                return Err(format!("root triangle {i} not on the bottom"));
            }
            if self.m.root_triangles.get(i - 1) != Some(&f) {
                return Err(format!("root triangle {i} not recorded"));
            }
        }
        Ok(())
    }

    fn prop_d(&self) -> Result<(), String> {
        let r = &self.m.roots;
        let by_a: HashMap<u32, &Tooth> = self.m.teeth.iter().map(|t| (t.a, t)).collect();
        if by_a.len() != self.m.teeth.len() {
            return Err("two teeth share a first root".into());
        }
        let mut used = 0;
        for i in 1..r.len() - 1 {
            let (a, a2) = (r[i], r[i + 1]);
            let (pa, pa2) = (self.pos_of(a)?, self.pos_of(a2)?);
            match by_a.get(&a) {
                None => {
                    if pa2 != pa + 1 {
                        return Err(format!("roots {a},{a2} neither adjacent nor joined by a tooth"));
                    }
                }
                Some(t) => {
                    used += 1;
                    if t.a2 != a2 {
                        return Err(format!("tooth at {a} ends at {} not {a2}", t.a2));
                    }
                    let Some(tooth) = self.tri(a, t.tip, a2) else {
                        return Err(format!("tooth {a} {} {a2} missing", t.tip));
                    };
                    if !self.bottom.contains(&tooth) {
                        return Err(format!("tooth at {a} not on the bottom"));
                    }
                    let pb = self.pos_of(t.tip)?;
                    if pb != pa + 1 || pa2 <= pb {
                        return Err(format!("tooth at {a}: tip not next to its first root"));
                    }
                    if pa2 == pb + 1 {
                        continue;
                    }
                    let d = self.m.profile[pa2 - 1];
                    let Some(other) = self.tri(t.tip, d, a2) else {
                        return Err(format!("tooth at {a}: no companion triangle"));
                    };
                    if !self.bottom.contains(&other) {
                        return Err(format!("tooth at {a}: companion not on the bottom"));
                    }
                    let fa: HashSet<u32> = facets_of(self.x, tooth).into_iter().collect();
                    if !facets_of(self.x, other).iter().any(|f| fa.contains(f)) {
                        return Err(format!("tooth at {a}: companion in another facet"));
                    }
                    if self.shares_ridge(a, d) {
                        return Err(format!("tooth at {a}: a and d share a ridge"));
                    }
                }
            }
        }
        if used != self.m.teeth.len() {
            return Err("teeth recorded between non-consecutive roots".into());
        }
        Ok(())
    }

    fn shares_ridge(&self, u: u32, w: u32) -> bool {
        self.x
            .star(u)
            .into_iter()
            .any(|f| self.x.dim_of(f) == 2 && self.x.has_vertex(f, w))
    }

    fn facet_vertex_sets_containing(&self, v: u32) -> Vec<u32> {
        self.x.star(v).into_iter().filter(|&f| self.x.dim_of(f) == 3).collect()
    }

    fn prop_e(&self) -> Result<(), String> {
        let p = &self.m.profile;
        let n = p.len();
        let roots: HashSet<u32> = self.m.roots.iter().copied().collect();
        let by_a: HashMap<u32, &Tooth> = self.m.teeth.iter().map(|t| (t.a, t)).collect();
        let by_a2: HashMap<u32, &Tooth> = self.m.teeth.iter().map(|t| (t.a2, t)).collect();
        for (fi, fl) in self.m.fillets.iter().enumerate() {
            let t = fl.len();
            let err = |m: &str| Err(format!("fillet {fi}: {m}"));
            let ct = fl[t - 1];
            if !roots.contains(&ct) {
                return err("last vertex is not a root");
            }
            let p0 = self.pos_of(fl[0])?;
            for (j, &v) in fl.iter().enumerate() {
                if self.pos_of(v)? != p0 + j {
                    return err("vertices not consecutive on the profile");
                }
            }
            if p0 == 0 || p0 + t >= n {
                return err("runs off the profile");
            }
            let bl = p[p0 - 1];
            let br = p[p0 + t];
            let (Some(tl), Some(tr)) = (by_a2.get(&ct), by_a.get(&ct)) else {
                return err("last vertex not in two teeth");
            };
            if tl.tip != bl || tr.tip != br {
                return err("neighbours are not the tips of the two teeth at its root");
            }
            let mut fillet_top = HashSet::new();
            for j in 0..t - 1 {
                match self.tri(bl, fl[j], fl[j + 1]) {
                    Some(f) if self.bottom.contains(&f) => {}
                    _ => return err("lower fan triangle missing from the bottom"),
                }
                match self.tri(br, fl[j], fl[j + 1]) {
                    Some(f) if self.top.contains(&f) => {
                        fillet_top.insert(f);
                    }
                    _ => return err("upper fan triangle missing from the top"),
                }
            }
            for &cj in fl {
                let mut vs = [br, cj];
                vs.sort_unstable();
                let Some(&e) = self.index.get(&vs[..]) else {
                    return err("tip edge missing");
                };
                let others: Vec<u32> = self.x.cofaces(e).iter().copied().filter(|f| !fillet_top.contains(f)).collect();
                if others.len() != 1 {
                    return err("tip edge in the wrong number of outside ridges");
                }
                let vs = self.x.vertices(others[0]);
                if vs.len() != 3 {
                    return err("outside ridge of a tip edge is not a triangle");
                }
                let z = vs.iter().copied().find(|&z| z != br && z != cj).unwrap();
                if !(z == self.m.hub || self.pos_of(z)? > self.pos_of(br)?) {
                    return err("outside ridge lies clockwise of the tip");
                }
            }
            let stars: Vec<HashSet<u32>> =
                fl.iter().map(|&v| self.facet_vertex_sets_containing(v).into_iter().collect()).collect();
            for j in 0..t {
                for l in j + 2..t {
                    if stars[j].iter().any(|f| stars[l].contains(f)) {
                        return err("nonconsecutive vertices share a facet");
                    }
                }
            }
        }
        Ok(())
    }

    fn prop_f(&self) -> Result<(), String> {
        let roots: HashSet<u32> = self.m.roots.iter().copied().collect();
        for f in self.facet_vertex_sets_containing(self.m.hub) {
            if let Some(&v) = self.x.vertices(f).iter().find(|v| !roots.contains(v)) {
                return Err(format!("hub shares facet {f} with non-root {v}"));
            }
        }
        Ok(())
    }
}

fn facets_of(x: &CwComplex, f: u32) -> Vec<u32> {
    x.cofaces(f).to_vec()
}

/// Edges lying in exactly one of the given 2-faces, sorted.
fn boundary_edges(x: &CwComplex, faces2: &[u32]) -> Vec<u32> {
    let mut count: HashMap<u32, u32> = HashMap::new();
    for &f in faces2 {
        for &e in x.boundary(f) {
            *count.entry(e).or_default() += 1;
        }
    }
    let mut v: Vec<u32> = count.into_iter().filter(|&(_, c)| c == 1).map(|(e, _)| e).collect();
    v.sort_unstable();
    v
}

/// Walk a set of edges forming one cycle; returns its vertices in order.
fn boundary_walk(x: &CwComplex, edges: &[u32]) -> Vec<u32> {
    if edges.is_empty() {
        return Vec::new();
    }
    let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
    for &e in edges {
        let v = x.vertices(e);
        adj.entry(v[0]).or_default().push(v[1]);
        adj.entry(v[1]).or_default().push(v[0]);
    }
    let start = x.vertices(edges[0])[0];
    let mut out = vec![start];
    let mut prev = NONE;
    let mut cur = start;
    loop {
        let nbrs = &adj[&cur];
        let next = nbrs.iter().copied().find(|&w| w != prev);
        let Some(next) = next else { break };
        if next == start {
            break;
        }
        if out.contains(&next) || out.len() > edges.len() {
            break;
        }
        out.push(next);
        prev = cur;
        cur = next;
    }
    out
}

/// Sanity view used by tests: the boundary of `X` as a subcomplex.
pub fn boundary_of(x: &BallComplex) -> Subcomplex<'_> {
    cw::boundary_subcomplex(&x.complex)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(x: &CwComplex) -> [u64; 4] {
        x.f_vector()
    }

    #[test]
    fn base_cases() {
        assert_eq!(f(&build_x(1, 2).unwrap().complex), [10, 25, 20, 4]);
        assert_eq!(f(&build_x(1, 3).unwrap().complex), [12, 33, 30, 8]);
        for s in 1..=3u64 {
            let x = build_x(s, 1).unwrap();
            let p = 1u64 << s;
            assert_eq!(f(&x.complex), [2 * p + 4, 4 * p + 5, 2 * p + 2, 0]);
            assert!(verify_properties(&x).all_pass(), "{:?}", verify_properties(&x));
        }
    }

    #[test]
    fn small_balls_have_all_properties() {
        for (s, t) in [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3)] {
            let x = build_x(s, t).unwrap();
            let r = verify_properties(&x);
            assert!(r.all_pass(), "X({s},{t}): {r:?}");
        }
    }

    #[test]
    fn x22_counts() {
        let x = build_x(2, 2).unwrap();
        assert_eq!(x.complex.f_vector()[3], 28);
        assert_eq!(x.meta.fillets.len(), 8);
        assert_eq!(x.meta.roots.len(), 19);
        assert_eq!(x.meta.stacking.len(), 28);
    }

    #[test]
    fn sphere_f_vectors() {
        let mut ev = Evaluator::default();
        for (s, t) in [(1, 2), (1, 7), (2, 2), (2, 3)] {
            let sp = build_s(s, t).unwrap();
            let fv = ev.f_vec(s, t).unwrap();
            let got = sp.complex.f_vector();
            for i in 0..4 {
                assert_eq!(fv.as_array()[i], &got[i].into(), "S({s},{t})");
            }
            assert!(cw::is_2_sphere(&cw::vertex_figure(&sp.complex, sp.apex)));
        }
    }

    #[test]
    fn corrupted_tooth_is_caught() {
        let mut x = build_x(1, 3).unwrap();
        x.meta.teeth[0].tip = x.meta.hub;
        let r = verify_properties(&x);
        assert!(!r.get("d").unwrap().pass);
    }

    #[test]
    fn caps() {
        assert!(matches!(build_x(2, 13), Err(BuildError::SizeCap { .. })));
        assert!(matches!(build_x(4, 2), Err(BuildError::SizeCap { .. })));
        assert!(matches!(build_x(0, 2), Err(BuildError::InvalidArgument(_))));
    }

    #[test]
    fn meta_json_roundtrip() {
        let x = build_x(1, 3).unwrap();
        let v = x.meta.to_json("X", None);
        assert_eq!(BallMeta::from_json(&v).unwrap(), x.meta);
    }
}
