//! Shellings and dual shellings of the spheres, and their verification.
//!
//! Positions in certificates are 1-based, as in a shelling `(T_1, …, T_m)`.

use crate::build::{BallComplex, SphereComplex};
use crate::cw::{self, CwComplex, NONE};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShellingError {
    #[error("stacking violated at position {index} (facet {facet}): {reason}")]
    StackingViolation { index: usize, facet: u32, reason: String },
    #[error("seed is not a closed disc: {0}")]
    BadSeed(String),
    #[error("order is not a permutation: {0}")]
    NotPermutation(String),
    #[error("no shelling completion found within the search budget")]
    Stuck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub index: usize,
    /// Faces in the intersection with the earlier facets.
    pub intersection_size: usize,
    pub disc: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub index: usize,
    pub id: u32,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellingCertificate {
    pub order: Vec<u32>,
    pub steps: Vec<StepRecord>,
    pub verified: bool,
    pub failure: Option<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualStepRecord {
    pub index: usize,
    pub star_union: bool,
    pub open_disc: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualShellingCertificate {
    pub order: Vec<u32>,
    pub steps: Vec<DualStepRecord>,
    pub verified: bool,
    pub failure: Option<Failure>,
}

// ---------------------------------------------------------------------------
// stacking

/// Facets of `X(s,t)` from lowest to highest.
pub fn stacking_order(x: &BallComplex) -> Vec<u32> {
    x.meta.stacking.clone()
}

/// Every facet meets the union of the earlier ones inside the closure of its bottom side.
pub fn check_stacking(x: &BallComplex, order: &[u32]) -> Result<(), ShellingError> {
    let c = &x.complex;
    let nf = c.ids_of_dim(3).count();
    check_permutation(c, order, 3)?;
    if order.len() != nf {
        return Err(ShellingError::NotPermutation(format!("{} of {nf} facets", order.len())));
    }
    let bottom: HashMap<u32, &Vec<u32>> = x.meta.facet_sides.iter().map(|f| (f.facet, &f.bottom)).collect();
    let mut covered = vec![false; c.len()];
    let mut allowed = vec![false; c.len()];
    for (i, &f) in order.iter().enumerate() {
        let bot = bottom
            .get(&f)
            .ok_or_else(|| ShellingError::NotPermutation(format!("facet {f} has no recorded sides")))?;
        let bclos = c.closure(bot);
        for &g in &bclos {
            allowed[g as usize] = true;
        }
        let clos = c.closure(&[f]);
        let bad = clos.iter().copied().find(|&g| covered[g as usize] && !allowed[g as usize]);
        for &g in &bclos {
            allowed[g as usize] = false;
        }
        if let Some(g) = bad {
            return Err(ShellingError::StackingViolation {
                index: i + 1,
                facet: f,
                reason: format!("face {g} is shared with a lower facet but not on the bottom"),
            });
        }
        for &g in &clos {
            covered[g as usize] = true;
        }
    }
    Ok(())
}

fn check_permutation(c: &CwComplex, order: &[u32], dim: u8) -> Result<(), ShellingError> {
    let mut seen = vec![false; c.len()];
    for &f in order {
        if f as usize >= c.len() || c.dim_of(f) != dim {
            return Err(ShellingError::NotPermutation(format!("{f} is not a {dim}-face")));
        }
        if std::mem::replace(&mut seen[f as usize], true) {
            return Err(ShellingError::NotPermutation(format!("{f} repeated")));
        }
    }
    let total = c.ids_of_dim(dim).count();
    if order.len() != total {
        return Err(ShellingError::NotPermutation(format!("{} of {total} faces listed", order.len())));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 2-spheres

const BACKTRACK_BUDGET: usize = 200_000;

struct Disc2<'a> {
    x: &'a CwComplex,
    in_u: Vec<bool>,
    /// Number of faces in `U` at each vertex.
    vdeg: Vec<u32>,
    placed: usize,
    total: usize,
}

impl<'a> Disc2<'a> {
    fn new(x: &'a CwComplex) -> Self {
        Disc2 { x, in_u: vec![false; x.len()], vdeg: vec![0; x.len()], placed: 0, total: x.ids_of_dim(2).count() }
    }

    fn other_face(&self, e: u32, f: u32) -> u32 {
        self.x.cofaces(e).iter().copied().find(|&g| g != f).unwrap_or(NONE)
    }

    /// `f` meets `U` in a nonempty path of edges (or closes the sphere).
    fn can_add(&self, f: u32) -> bool {
        if self.placed == 0 {
            return true;
        }
        let bd = self.x.boundary(f);
        let mut marked_deg: HashMap<u32, u32> = HashMap::with_capacity(bd.len());
        let mut k = 0;
        for &e in bd {
            let g = self.other_face(e, f);
            if g != NONE && self.in_u[g as usize] {
                k += 1;
                for &v in self.x.vertices(e) {
                    *marked_deg.entry(v).or_default() += 1;
                }
            }
        }
        if k == 0 {
            return false;
        }
        if k == bd.len() {
            return self.placed + 1 == self.total;
        }
        if marked_deg.values().filter(|&&d| d == 1).count() != 2 {
            return false;
        }
        self.x
            .vertices(f)
            .iter()
            .all(|v| (self.vdeg[*v as usize] > 0) == marked_deg.contains_key(v))
    }

    fn set(&mut self, f: u32, on: bool) {
        self.in_u[f as usize] = on;
        for &v in self.x.vertices(f) {
            if on {
                self.vdeg[v as usize] += 1;
            } else {
                self.vdeg[v as usize] -= 1;
            }
        }
        if on {
            self.placed += 1;
        } else {
            self.placed -= 1;
        }
    }

    fn edge_neighbours(&self, f: u32) -> impl Iterator<Item = u32> + '_ {
        self.x.boundary(f).iter().map(move |&e| self.other_face(e, f)).filter(|&g| g != NONE)
    }
}

/// Shell a 2-sphere, starting with a shelling of the seed disc.
pub fn shell_2_sphere(s2: &CwComplex, seed: &[u32]) -> Result<Vec<u32>, ShellingError> {
    let mut seed: Vec<u32> = seed.to_vec();
    seed.sort_unstable();
    seed.dedup();
    if seed.iter().any(|&f| f as usize >= s2.len() || s2.dim_of(f) != 2) {
        return Err(ShellingError::BadSeed("seed contains a non-facet".into()));
    }
    if seed.len() > 1 {
        if let Some(why) = cw::disc_failure(s2, &seed) {
            return Err(ShellingError::BadSeed(why));
        }
    }
    let mut d = Disc2::new(s2);
    let mut order = Vec::with_capacity(d.total);
    let all: Vec<u32> = s2.ids_of_dim(2).collect();
    let start = if seed.is_empty() { all.first().copied() } else { seed.first().copied() };
    let Some(start) = start else { return Ok(order) };
    let mut in_seed = vec![false; s2.len()];
    for &f in &seed {
        in_seed[f as usize] = true;
    }
    // seed phase, then everything
    d.set(start, true);
    order.push(start);
    let limit = seed.len().max(1);
    for phase in 0..2 {
        let allowed = |f: u32| phase == 1 || in_seed[f as usize];
        let target = if phase == 0 { limit } else { d.total };
        if !greedy(&mut d, &mut order, target, &allowed) && !backtrack(&mut d, &mut order, target, &allowed) {
            return Err(ShellingError::Stuck);
        }
    }
    Ok(order)
}

/// Lowest-id valid frontier face first. Returns whether `target` faces were placed.
fn greedy(d: &mut Disc2, order: &mut Vec<u32>, target: usize, allowed: &dyn Fn(u32) -> bool) -> bool {
    let mut ready: BTreeSet<u32> = BTreeSet::new();
    for &f in order.iter() {
        for g in d.edge_neighbours(f) {
            if !d.in_u[g as usize] && allowed(g) {
                ready.insert(g);
            }
        }
    }
    while d.placed < target {
        let Some(f) = ready.pop_first() else { return false };
        if d.in_u[f as usize] || !d.can_add(f) {
            // only an edge-neighbour being added can make it valid again
            continue;
        }
        d.set(f, true);
        order.push(f);
        let nb: Vec<u32> = d.edge_neighbours(f).collect();
        for g in nb {
            if !d.in_u[g as usize] && allowed(g) {
                ready.insert(g);
            }
        }
    }
    true
}

/// Depth-first search over valid extensions, bounded by a step budget.
fn backtrack(d: &mut Disc2, order: &mut Vec<u32>, target: usize, allowed: &dyn Fn(u32) -> bool) -> bool {
    // searches onward from the current prefix
    let base = order.len();
    let mut budget = BACKTRACK_BUDGET;
    fn candidates(d: &Disc2, order: &[u32], allowed: &dyn Fn(u32) -> bool) -> Vec<u32> {
        let mut c: BTreeSet<u32> = BTreeSet::new();
        for &f in order {
            for g in d.edge_neighbours(f) {
                if !d.in_u[g as usize] && allowed(g) && d.can_add(g) {
                    c.insert(g);
                }
            }
        }
        c.into_iter().collect()
    }
    let mut stack: Vec<(Vec<u32>, usize)> = vec![(candidates(d, order, allowed), 0)];
    while let Some((cands, next)) = stack.last_mut() {
        if d.placed >= target {
            return true;
        }
        if budget == 0 {
            break;
        }
        budget -= 1;
        if *next < cands.len() {
            let f = cands[*next];
            *next += 1;
            d.set(f, true);
            order.push(f);
            let c = candidates(d, order, allowed);
            stack.push((c, 0));
        } else {
            stack.pop();
            if order.len() > base {
                let f = order.pop().unwrap();
                d.set(f, false);
            } else {
                break;
            }
        }
    }
    if d.placed >= target {
        return true;
    }
    while order.len() > base {
        let f = order.pop().unwrap();
        d.set(f, false);
    }
    false
}

// ---------------------------------------------------------------------------
// 3-spheres

/// Bottom cone facets, the stacking order of the ball, then the other cone facets.
pub fn shelling_order(sph: &SphereComplex) -> Result<Vec<u32>, ShellingError> {
    let (fig, origin) = cw::vertex_figure_with_origin(&sph.complex, sph.apex);
    let local: HashMap<u32, u32> = origin.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect();
    let mut seed = Vec::with_capacity(sph.meta.boundary_bottom.len());
    for &b in &sph.meta.boundary_bottom {
        let p = sph
            .pyramid_over(b)
            .ok_or_else(|| ShellingError::BadSeed(format!("no pyramid over bottom face {b}")))?;
        seed.push(local[&p]);
    }
    let fig_order = shell_2_sphere(&fig, &seed)?;
    let k = seed.len();
    let mut order: Vec<u32> = fig_order[..k].iter().map(|&f| origin[f as usize]).collect();
    order.extend_from_slice(&sph.meta.stacking);
    order.extend(fig_order[k..].iter().map(|&f| origin[f as usize]));
    Ok(order)
}

/// Check a facet order of a 3-sphere against the closed-disc criterion.
pub fn verify_shelling(x: &CwComplex, order: &[u32]) -> ShellingCertificate {
    let mut cert = ShellingCertificate { order: order.to_vec(), steps: Vec::new(), verified: false, failure: None };
    if let Err(e) = check_permutation(x, order, 3) {
        cert.failure = Some(Failure { index: 0, id: NONE, reason: e.to_string() });
        return cert;
    }
    let m = order.len();
    let mut earlier = vec![false; x.len()];
    let mut covered = vec![false; x.len()];
    let mut in_a = vec![false; x.len()];
    for (i, &f) in order.iter().enumerate() {
        let index = i + 1;
        let clos = x.closure(&[f]);
        if index >= 2 && index < m {
            let a: Vec<u32> = clos.iter().copied().filter(|&g| x.dim_of(g) == 2 && covered[g as usize]).collect();
            let aclos = x.closure(&a);
            for &g in &aclos {
                in_a[g as usize] = true;
            }
            let impure = clos.iter().copied().find(|&g| covered[g as usize] && !in_a[g as usize]);
            let size = clos.iter().filter(|&&g| covered[g as usize]).count();
            for &g in &aclos {
                in_a[g as usize] = false;
            }
            let reason = match impure {
                Some(g) => Some(format!("not pure: face {g} of dimension {} meets earlier facets alone", x.dim_of(g))),
                None => cw::disc_failure(x, &a),
            };
            cert.steps.push(StepRecord { index, intersection_size: size, disc: reason.is_none() });
            if let Some(reason) = reason {
                cert.failure = Some(Failure { index, id: f, reason });
                return cert;
            }
        }
        earlier[f as usize] = true;
        for &g in &clos {
            covered[g as usize] = true;
        }
    }
    cert.verified = true;
    cert
}

// ---------------------------------------------------------------------------
// dual shellings

/// Profile order from the hub, apex last.
pub fn dual_shelling_order(sph: &SphereComplex) -> Vec<u32> {
    let mut v = sph.meta.profile.clone();
    v.push(sph.apex);
    v
}

/// Check a vertex order against the star-union and open-disc conditions.
pub fn verify_dual_shelling(x: &CwComplex, order: &[u32]) -> DualShellingCertificate {
    let mut cert = DualShellingCertificate { order: order.to_vec(), steps: Vec::new(), verified: false, failure: None };
    if let Err(e) = check_permutation(x, order, 0) {
        cert.failure = Some(Failure { index: 0, id: NONE, reason: e.to_string() });
        return cert;
    }
    let n = order.len();
    let mut rank = vec![usize::MAX; x.len()];
    for (i, &v) in order.iter().enumerate() {
        rank[v as usize] = i;
    }
    for i in 1..n.saturating_sub(1) {
        let v = order[i];
        let (fig, origin) = cw::vertex_figure_with_origin(x, v);
        let earlier_vertex = |w: u32| rank[w as usize] < i;
        let marked: Vec<bool> = origin.iter().map(|&z| x.vertices(z).iter().any(|&w| earlier_vertex(w))).collect();
        // figure vertices are the edges at v; its marked vertices lead to earlier vertices
        let star_union = (0..fig.len() as u32).all(|j| {
            !marked[j as usize]
                || fig.vertices(j).iter().any(|&u| {
                    let e = origin[u as usize];
                    x.vertices(e).iter().any(|&w| w != v && earlier_vertex(w))
                })
        });
        let open_disc = star_union && cw::is_open_disc_star_union(&fig, &|j| marked[j as usize]);
        cert.steps.push(DualStepRecord { index: i + 1, star_union, open_disc });
        if !star_union || !open_disc {
            let reason = if !star_union {
                "marked faces are not a union of vertex stars".to_string()
            } else {
                "marked faces do not form an open disc".to_string()
            };
            cert.failure = Some(Failure { index: i + 1, id: v, reason });
            return cert;
        }
    }
    cert.verified = true;
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_s, build_x};

    fn simplex4_boundary() -> CwComplex {
        let facets: Vec<Vec<u32>> = (0..5u32).map(|k| (0..5u32).filter(|&v| v != k).collect()).collect();
        cw::from_simplices(5, &facets)
    }

    fn cube_boundary() -> CwComplex {
        let q = vec![
            vec![0, 1, 3, 2],
            vec![4, 6, 7, 5],
            vec![0, 4, 5, 1],
            vec![2, 3, 7, 6],
            vec![0, 2, 6, 4],
            vec![1, 5, 7, 3],
        ];
        cw::from_polygons(8, &q)
    }

    #[test]
    fn small_2_spheres() {
        let t = cw::from_simplices(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        for f in t.ids_of_dim(2) {
            assert_eq!(shell_2_sphere(&t, &[f]).unwrap().len(), 4);
        }
        let c = cube_boundary();
        let f = c.ids_of_dim(2).next().unwrap();
        let o = shell_2_sphere(&c, &[f]).unwrap();
        assert_eq!(o.len(), 6);
        for k in 1..6 {
            assert!(cw::is_closed_disc_faces(&c, &o[..k]));
        }
    }

    #[test]
    fn simplex_boundary_any_order() {
        let x = simplex4_boundary();
        let mut f: Vec<u32> = x.ids_of_dim(3).collect();
        assert!(verify_shelling(&x, &f).verified);
        f.reverse();
        f.swap(1, 3);
        assert!(verify_shelling(&x, &f).verified);
        let mut v: Vec<u32> = x.ids_of_dim(0).collect();
        v.swap(0, 4);
        assert!(verify_dual_shelling(&x, &v).verified);
    }

    #[test]
    fn stacking_of_small_balls() {
        assert!(stacking_order(&build_x(1, 1).unwrap()).is_empty());
        for (s, t) in [(1, 2), (1, 4), (2, 2), (2, 3)] {
            let x = build_x(s, t).unwrap();
            let o = stacking_order(&x);
            check_stacking(&x, &o).unwrap();
            if (s, t) == (2, 2) {
                assert_eq!(o.len(), 28);
            }
        }
    }

    #[test]
    fn stacking_violation_is_reported() {
        let x = build_x(1, 2).unwrap();
        let mut o = stacking_order(&x);
        o.reverse();
        assert!(matches!(check_stacking(&x, &o), Err(ShellingError::StackingViolation { .. })));
    }

    #[test]
    fn s12_shelling_and_controls() {
        let sp = build_s(1, 2).unwrap();
        let o = shelling_order(&sp).unwrap();
        assert_eq!(o.len(), 20);
        let c = verify_shelling(&sp.complex, &o);
        assert!(c.verified, "{:?}", c.failure);
        let mut r = o.clone();
        r.reverse();
        assert!(verify_shelling(&sp.complex, &r).verified);
        // a top cone facet pulled to the front
        let tops: Vec<u32> = sp.meta.boundary_top.iter().map(|&f| sp.pyramid_over(f).unwrap()).collect();
        let far = *o.iter().rev().find(|f| tops.contains(f)).unwrap();
        let mut bad: Vec<u32> = o.iter().copied().filter(|&f| f != far).collect();
        bad.insert(1, far);
        let c = verify_shelling(&sp.complex, &bad);
        assert!(!c.verified);
        assert_eq!(c.failure.unwrap().index, 2);

        let d = dual_shelling_order(&sp);
        assert_eq!(d.len(), 11);
        assert_eq!(d[0], sp.meta.hub);
        assert_eq!(d[10], sp.apex);
        assert!(verify_dual_shelling(&sp.complex, &d).verified);
    }

    #[test]
    fn shelling_lengths() {
        assert_eq!(shelling_order(&build_s(1, 3).unwrap()).unwrap().len(), 28);
        let sp = build_s(2, 2).unwrap();
        let o = shelling_order(&sp).unwrap();
        assert_eq!(o.len(), 106);
        assert!(verify_shelling(&sp.complex, &o).verified);
        assert_eq!(dual_shelling_order(&sp).len(), 43);
        assert!(verify_dual_shelling(&sp.complex, &dual_shelling_order(&sp)).verified);
    }
}
