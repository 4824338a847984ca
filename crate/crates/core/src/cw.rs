//! Regular CW complexes stored as graded face posets.
//!
//! A face is a record `(dim, vertices, boundary)`. Vertices are themselves
//! 0-faces, and the id of a vertex is the id of its 0-face, so the vertex
//! list of a 0-face is `[id]`. Storage is flat (CSR) so that complexes with a
//! few million faces stay compact; cofaces are derived once on `finish`.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::{Read, Write};
use thiserror::Error;

/// Sentinel for "no face".
pub const NONE: u32 = u32::MAX;

/// Complexes above this many faces get a sampled strong-regularity check by default.
pub const FULL_CHECK_LIMIT: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CwError {
    #[error("face {face}: {reason}")]
    Invalid { face: u32, reason: String },
    #[error("faces {a} and {b} do not intersect in a single common face")]
    NotStronglyRegular { a: u32, b: u32 },
    #[error("format: {0}")]
    Format(String),
}

/// One face record, as exchanged in `cw-poset/1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: u32,
    pub dim: u8,
    pub vertices: Vec<u32>,
    pub boundary: Vec<u32>,
}

#[derive(Clone, Debug, Default)]
pub struct CwComplex {
    dims: Vec<u8>,
    vert_off: Vec<u32>,
    vert: Vec<u32>,
    bnd_off: Vec<u32>,
    bnd: Vec<u32>,
    cob_off: Vec<u32>,
    cob: Vec<u32>,
}

/// Incremental writer for a [`CwComplex`]. Faces get dense ids in insertion order.
#[derive(Default)]
pub struct CwBuilder {
    c: CwComplex,
    scratch: Vec<u32>,
}

impl CwBuilder {
    pub fn new() -> Self {
        let mut c = CwComplex::default();
        c.vert_off.push(0);
        c.bnd_off.push(0);
        CwBuilder { c, scratch: Vec::new() }
    }

    pub fn with_capacity(faces: usize, incidences: usize) -> Self {
        let mut b = Self::new();
        b.c.dims.reserve(faces);
        b.c.vert_off.reserve(faces + 1);
        b.c.bnd_off.reserve(faces + 1);
        b.c.vert.reserve(incidences);
        b.c.bnd.reserve(incidences);
        b
    }

    pub fn len(&self) -> usize {
        self.c.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.dims.is_empty()
    }

    pub fn add_vertex(&mut self) -> u32 {
        let id = self.len() as u32;
        self.push(0, &[id], &[]);
        id
    }

    /// Add a face of dimension `dim ≥ 1` whose vertex set is the union of its boundary.
    /// Boundary ids must already exist.
    pub fn add_face(&mut self, dim: u8, boundary: &[u32]) -> u32 {
        let mut vs = std::mem::take(&mut self.scratch);
        vs.clear();
        for &b in boundary {
            vs.extend_from_slice(self.c.vertices(b));
        }
        vs.sort_unstable();
        vs.dedup();
        let id = self.len() as u32;
        self.push(dim, &vs, boundary);
        self.scratch = vs;
        id
    }

    /// Add a face with explicit data; nothing is checked until [`CwComplex::validate`].
    pub fn add_raw(&mut self, dim: u8, vertices: &[u32], boundary: &[u32]) -> u32 {
        let id = self.len() as u32;
        self.push(dim, vertices, boundary);
        id
    }

    fn push(&mut self, dim: u8, vs: &[u32], bnd: &[u32]) {
        self.c.dims.push(dim);
        self.c.vert.extend_from_slice(vs);
        self.c.vert_off.push(u32::try_from(self.c.vert.len()).expect("incidence overflow"));
        self.c.bnd.extend_from_slice(bnd);
        self.c.bnd_off.push(u32::try_from(self.c.bnd.len()).expect("incidence overflow"));
    }

    pub fn vertices(&self, id: u32) -> &[u32] {
        self.c.vertices(id)
    }

    pub fn finish(self) -> CwComplex {
        let mut c = self.c;
        c.build_cofaces();
        c
    }
}

impl CwComplex {
    fn build_cofaces(&mut self) {
        let n = self.dims.len();
        let mut deg = vec![0u32; n + 1];
        for &b in &self.bnd {
            if (b as usize) < n {
                deg[b as usize + 1] += 1;
            }
        }
        for i in 0..n {
            deg[i + 1] += deg[i];
        }
        let mut fill = deg.clone();
        let mut cob = vec![0u32; deg[n] as usize];
        for f in 0..n {
            for &b in self.boundary(f as u32) {
                if (b as usize) < n {
                    cob[fill[b as usize] as usize] = f as u32;
                    fill[b as usize] += 1;
                }
            }
        }
        self.cob_off = deg;
        self.cob = cob;
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Top dimension, or -1 for the empty complex.
    pub fn dim(&self) -> i32 {
        self.dims.iter().map(|&d| d as i32).max().unwrap_or(-1)
    }

    pub fn dim_of(&self, id: u32) -> u8 {
        self.dims[id as usize]
    }

    pub fn vertices(&self, id: u32) -> &[u32] {
        let i = id as usize;
        &self.vert[self.vert_off[i] as usize..self.vert_off[i + 1] as usize]
    }

    pub fn boundary(&self, id: u32) -> &[u32] {
        let i = id as usize;
        &self.bnd[self.bnd_off[i] as usize..self.bnd_off[i + 1] as usize]
    }

    pub fn cofaces(&self, id: u32) -> &[u32] {
        let i = id as usize;
        &self.cob[self.cob_off[i] as usize..self.cob_off[i + 1] as usize]
    }

    pub fn face(&self, id: u32) -> Face {
        Face {
            id,
            dim: self.dim_of(id),
            vertices: self.vertices(id).to_vec(),
            boundary: self.boundary(id).to_vec(),
        }
    }

    pub fn ids_of_dim(&self, k: u8) -> impl Iterator<Item = u32> + '_ {
        self.dims
            .iter()
            .enumerate()
            .filter(move |(_, &d)| d == k)
            .map(|(i, _)| i as u32)
    }

    pub fn f_vector(&self) -> [u64; 4] {
        let mut f = [0u64; 4];
        for &d in &self.dims {
            if (d as usize) < 4 {
                f[d as usize] += 1;
            }
        }
        f
    }

    pub fn euler_char(&self) -> i64 {
        self.dims.iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// True when `v` is a vertex of face `f`.
    pub fn has_vertex(&self, f: u32, v: u32) -> bool {
        self.vertices(f).binary_search(&v).is_ok()
    }

    /// Check every structural invariant; returns the first violation.
    pub fn validate(&self) -> Result<(), CwError> {
        let n = self.len() as u32;
        let bad = |face: u32, reason: &str| Err(CwError::Invalid { face, reason: reason.to_string() });
        let mut scratch: Vec<u32> = Vec::new();
        for f in 0..n {
            let d = self.dim_of(f);
            let vs = self.vertices(f);
            if d > 3 {
                return bad(f, "dimension above 3");
            }
            if vs.windows(2).any(|w| w[0] >= w[1]) {
                return bad(f, "vertex list not strictly sorted");
            }
            if vs.len() < d as usize + 1 {
                return bad(f, "too few vertices for its dimension");
            }
            if vs.iter().any(|&v| v >= n || self.dim_of(v) != 0) {
                return bad(f, "vertex list names a non-vertex");
            }
            let bd = self.boundary(f);
            if d == 0 {
                if !bd.is_empty() || vs != [f] {
                    return bad(f, "malformed vertex");
                }
                continue;
            }
            if bd.is_empty() {
                return bad(f, "empty boundary");
            }
            scratch.clear();
            for &b in bd {
                if b >= n {
                    return bad(f, "boundary id out of range");
                }
                if self.dim_of(b) + 1 != d {
                    return bad(f, "boundary face of wrong dimension");
                }
                scratch.extend_from_slice(self.vertices(b));
            }
            let mut sb = bd.to_vec();
            sb.sort_unstable();
            if sb.windows(2).any(|w| w[0] == w[1]) {
                return bad(f, "repeated boundary entry");
            }
            scratch.sort_unstable();
            scratch.dedup();
            if scratch != vs {
                return bad(f, "vertex set differs from the union of its boundary");
            }
            match d {
                1 if bd.len() != 2 => return bad(f, "edge without two endpoints"),
                2 if !self.is_polygon(f) => return bad(f, "boundary of a 2-face is not a cycle"),
                3 if !is_2_sphere_faces(self, bd) => {
                    return bad(f, "boundary of a 3-face is not a 2-sphere")
                }
                _ => {}
            }
        }
        let mut order: Vec<u32> = (0..n).collect();
        order.sort_unstable_by(|&a, &b| self.vertices(a).cmp(self.vertices(b)));
        for w in order.windows(2) {
            if self.vertices(w[0]) == self.vertices(w[1]) {
                return Err(CwError::Invalid {
                    face: w[0].max(w[1]),
                    reason: format!("shares its vertex set with face {}", w[0].min(w[1])),
                });
            }
        }
        Ok(())
    }

    fn is_polygon(&self, f: u32) -> bool {
        let bd = self.boundary(f);
        let vs = self.vertices(f);
        if bd.len() != vs.len() || bd.len() < 3 {
            return false;
        }
        let mut deg: HashMap<u32, u32> = HashMap::new();
        for &e in bd {
            for &v in self.vertices(e) {
                *deg.entry(v).or_default() += 1;
            }
        }
        if deg.values().any(|&d| d != 2) {
            return false;
        }
        // walk the cycle from the first edge
        let start = self.vertices(bd[0])[0];
        let mut prev_edge = bd[0];
        let mut cur = self.vertices(bd[0])[1];
        let mut steps = 1;
        while cur != start {
            let next = bd
                .iter()
                .copied()
                .find(|&e| e != prev_edge && self.vertices(e).contains(&cur));
            let Some(e) = next else { return false };
            let ev = self.vertices(e);
            cur = if ev[0] == cur { ev[1] } else { ev[0] };
            prev_edge = e;
            steps += 1;
            if steps > bd.len() {
                return false;
            }
        }
        steps == bd.len()
    }

    /// Face id lookup by exact vertex set.
    pub fn vertex_set_index(&self) -> HashMap<&[u32], u32> {
        let mut m = HashMap::with_capacity(self.len());
        for f in 0..self.len() as u32 {
            m.insert(self.vertices(f), f);
        }
        m
    }

    /// Downward closure of `gens`, sorted.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<u32> = gens.to_vec();
        let mut out = Vec::new();
        while let Some(f) = stack.pop() {
            if seen.insert(f) {
                out.push(f);
                stack.extend_from_slice(self.boundary(f));
            }
        }
        out.sort_unstable();
        out
    }

    /// Faces containing vertex `v` (including `v`), sorted.
    pub fn star(&self, v: u32) -> Vec<u32> {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![v];
        let mut out = Vec::new();
        while let Some(f) = stack.pop() {
            if seen.insert(f) {
                out.push(f);
                stack.extend_from_slice(self.cofaces(f));
            }
        }
        out.sort_unstable();
        out
    }

    /// Full pairwise check when the complex is small, sampled otherwise.
    pub fn strong_regularity(&self) -> Result<(), CwError> {
        if self.len() <= FULL_CHECK_LIMIT {
            self.check_strong_regularity(RegularityMode::Full)
        } else {
            self.check_strong_regularity(RegularityMode::Sampled { stride: 97, per_face: 64 })
        }
    }

    /// For every pair of faces sharing a vertex, the common subfaces must have a
    /// unique maximum whose vertex set is the vertex-set intersection.
    pub fn check_strong_regularity(&self, mode: RegularityMode) -> Result<(), CwError> {
        let n = self.len();
        let index = self.vertex_set_index();
        let mut vstar: Vec<Vec<u32>> = vec![Vec::new(); n];
        for f in 0..n as u32 {
            for &v in self.vertices(f) {
                vstar[v as usize].push(f);
            }
        }
        let full = matches!(mode, RegularityMode::Full);
        let closures: Vec<Vec<u32>> = if full {
            (0..n as u32).map(|f| self.closure(&[f])).collect()
        } else {
            Vec::new()
        };
        let clo = |f: u32| -> std::borrow::Cow<'_, [u32]> {
            if full {
                std::borrow::Cow::Borrowed(closures[f as usize].as_slice())
            } else {
                std::borrow::Cow::Owned(self.closure(&[f]))
            }
        };
        let (stride, per_face) = match mode {
            RegularityMode::Full => (1usize, usize::MAX),
            RegularityMode::Sampled { stride, per_face } => (stride.max(1), per_face.max(1)),
        };
        let mut stamp = vec![u32::MAX; n];
        let mut partners: Vec<u32> = Vec::new();
        let mut inter: Vec<u32> = Vec::new();
        for p in (0..n as u32).step_by(stride) {
            partners.clear();
            for &v in self.vertices(p) {
                for &q in &vstar[v as usize] {
                    if q > p && stamp[q as usize] != p {
                        stamp[q as usize] = p;
                        partners.push(q);
                    }
                }
            }
            let step = if partners.len() > per_face { partners.len() / per_face } else { 1 };
            let cp = clo(p);
            for &q in partners.iter().step_by(step) {
                inter.clear();
                sorted_intersection(self.vertices(p), self.vertices(q), &mut inter);
                let fail = Err(CwError::NotStronglyRegular { a: p, b: q });
                let Some(&g) = index.get(inter.as_slice()) else { return fail };
                let cq = clo(q);
                if cp.binary_search(&g).is_err() || cq.binary_search(&g).is_err() {
                    return fail;
                }
                let mut common = Vec::new();
                sorted_intersection(&cp, &cq, &mut common);
                if common.len() != clo(g).len() {
                    return fail;
                }
            }
        }
        Ok(())
    }

    /// Serialize as `cw-poset/1`, streaming face by face.
    pub fn write_json<W: Write>(&self, mut w: W, meta: &serde_json::Value) -> std::io::Result<()> {
        write!(w, "{{\"schema\":\"cw-poset/1\",\"dim\":{},\"faces\":[", self.dim())?;
        for f in 0..self.len() as u32 {
            if f > 0 {
                w.write_all(b",")?;
            }
            serde_json::to_writer(&mut w, &self.face(f))?;
        }
        w.write_all(b"],\"meta\":")?;
        serde_json::to_writer(&mut w, meta)?;
        w.write_all(b"}\n")?;
        Ok(())
    }

    /// Parse `cw-poset/1`. Returns the complex and the `meta` object.
    pub fn read_json<R: Read>(r: R) -> Result<(CwComplex, serde_json::Value), CwError> {
        #[derive(Deserialize)]
        struct Doc {
            schema: String,
            #[allow(dead_code)]
            dim: i32,
            faces: Vec<Face>,
            #[serde(default)]
            meta: serde_json::Value,
        }
        let doc: Doc = serde_json::from_reader(std::io::BufReader::new(r))
            .map_err(|e| CwError::Format(e.to_string()))?;
        if doc.schema != "cw-poset/1" {
            return Err(CwError::Format(format!("unknown schema {}", doc.schema)));
        }
        let mut b = CwBuilder::new();
        for (i, f) in doc.faces.iter().enumerate() {
            if f.id as usize != i {
                return Err(CwError::Format(format!("face ids must be dense from 0 (saw {} at {i})", f.id)));
            }
            b.add_raw(f.dim, &f.vertices, &f.boundary);
        }
        let c = b.finish();
        c.validate()?;
        Ok((c, doc.meta))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularityMode {
    Full,
    /// Check faces with id divisible by `stride`, against at most about `per_face` partners each.
    Sampled { stride: usize, per_face: usize },
}

pub(crate) fn sorted_intersection(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// A downward-closed set of faces of a parent complex.
#[derive(Clone, Debug)]
pub struct Subcomplex<'a> {
    pub parent: &'a CwComplex,
    /// Sorted face ids.
    pub face_ids: Vec<u32>,
}

impl<'a> Subcomplex<'a> {
    /// The closure of `gens` in `parent`.
    pub fn closure_of(parent: &'a CwComplex, gens: &[u32]) -> Self {
        Subcomplex { parent, face_ids: parent.closure(gens) }
    }

    pub fn is_closed(&self) -> bool {
        self.face_ids
            .iter()
            .all(|&f| self.parent.boundary(f).iter().all(|b| self.face_ids.binary_search(b).is_ok()))
    }

    pub fn euler_char(&self) -> i64 {
        self.face_ids
            .iter()
            .map(|&f| if self.parent.dim_of(f) % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn faces_of_dim(&self, k: u8) -> Vec<u32> {
        self.face_ids.iter().copied().filter(|&f| self.parent.dim_of(f) == k).collect()
    }

    pub fn f_vector(&self) -> [u64; 4] {
        let mut f = [0u64; 4];
        for &id in &self.face_ids {
            f[self.parent.dim_of(id) as usize] += 1;
        }
        f
    }

    /// Pure 2-dimensional: no 3-faces, at least one 2-face, every face under some 2-face.
    pub fn is_pure_2(&self) -> bool {
        let twos = self.faces_of_dim(2);
        if twos.is_empty() || !self.faces_of_dim(3).is_empty() {
            return false;
        }
        self.parent.closure(&twos).len() == self.face_ids.len()
    }

    pub fn is_closed_disc(&self) -> bool {
        self.is_closed() && self.is_pure_2() && is_closed_disc_faces(self.parent, &self.faces_of_dim(2))
    }

    pub fn is_2_sphere(&self) -> bool {
        self.is_closed() && self.is_pure_2() && is_2_sphere_faces(self.parent, &self.faces_of_dim(2))
    }
}

/// Closure of the 2-faces incident to exactly one 3-face.
pub fn boundary_subcomplex(x: &CwComplex) -> Subcomplex<'_> {
    let gens: Vec<u32> = x
        .ids_of_dim(2)
        .filter(|&f| x.cofaces(f).iter().filter(|&&c| x.dim_of(c) == 3).count() == 1)
        .collect();
    Subcomplex::closure_of(x, &gens)
}

/// Why a set of 2-faces failed to be a disc or sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceFailure {
    None,
    Empty,
    EdgeInTooManyFaces,
    BadVertexLink,
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceReport {
    pub kind: SurfaceFailure,
    pub euler: i64,
    /// No edge lies in a single face.
    pub closed: bool,
    /// Boundary edges form exactly one cycle.
    pub one_boundary_cycle: bool,
}

/// Local analysis of the 2-complex that is the closure of `faces2`.
/// `Ok` is never returned; the report is in the `Err` for uniformity of the callers.
fn surface_check(x: &CwComplex, faces2: &[u32]) -> Result<(), SurfaceReport> {
    let mut rep = SurfaceReport { kind: SurfaceFailure::None, euler: 0, closed: false, one_boundary_cycle: false };
    if faces2.is_empty() {
        rep.kind = SurfaceFailure::Empty;
        return Err(rep);
    }
    // local edge table
    let mut eidx: HashMap<u32, usize> = HashMap::with_capacity(faces2.len() * 2);
    let mut edges: Vec<u32> = Vec::new();
    let mut use_count: Vec<u32> = Vec::new();
    for &f in faces2 {
        for &e in x.boundary(f) {
            let k = *eidx.entry(e).or_insert_with(|| {
                edges.push(e);
                use_count.push(0);
                edges.len() - 1
            });
            use_count[k] += 1;
        }
    }
    let mut vidx: HashMap<u32, usize> = HashMap::with_capacity(edges.len());
    for &e in &edges {
        for &v in x.vertices(e) {
            let l = vidx.len();
            vidx.entry(v).or_insert(l);
        }
    }
    rep.euler = vidx.len() as i64 - edges.len() as i64 + faces2.len() as i64;
    if use_count.iter().any(|&c| c > 2) {
        rep.kind = SurfaceFailure::EdgeInTooManyFaces;
        return Err(rep);
    }
    // vertex connectivity through edges
    let mut uf = UnionFind::new(vidx.len());
    for &e in &edges {
        let ev = x.vertices(e);
        uf.union(vidx[&ev[0]], vidx[&ev[1]]);
    }
    let root0 = uf.find(0);
    let connected = (0..vidx.len()).all(|i| uf.find(i) == root0);
    // links: nodes are (vertex, edge) incidences, joined by faces
    let mut inc: HashMap<(u32, u32), usize> = HashMap::with_capacity(edges.len() * 2);
    for &e in &edges {
        for &v in x.vertices(e) {
            let l = inc.len();
            inc.insert((v, e), l);
        }
    }
    let mut luf = UnionFind::new(inc.len());
    for &f in faces2 {
        let bd = x.boundary(f);
        for &v in x.vertices(f) {
            let at: Vec<u32> = bd.iter().copied().filter(|&e| x.has_vertex(e, v)).collect();
            if at.len() != 2 {
                rep.kind = SurfaceFailure::BadVertexLink;
                return Err(rep);
            }
            luf.union(inc[&(v, at[0])], inc[&(v, at[1])]);
        }
    }
    let mut comp_of_vertex: HashMap<u32, usize> = HashMap::with_capacity(vidx.len());
    for (&(v, _), &node) in &inc {
        let r = luf.find(node);
        match comp_of_vertex.get(&v) {
            None => {
                comp_of_vertex.insert(v, r);
            }
            Some(&r0) if r0 != r => {
                rep.kind = SurfaceFailure::BadVertexLink;
                return Err(rep);
            }
            _ => {}
        }
    }
    if !connected {
        rep.kind = SurfaceFailure::Disconnected;
        return Err(rep);
    }
    // boundary edges
    let bedges: Vec<u32> = edges.iter().zip(&use_count).filter(|(_, &c)| c == 1).map(|(&e, _)| e).collect();
    rep.closed = bedges.is_empty();
    if !rep.closed {
        let mut deg: HashMap<u32, u32> = HashMap::new();
        let mut buf = UnionFind::new(vidx.len());
        for &e in &bedges {
            let ev = x.vertices(e);
            *deg.entry(ev[0]).or_default() += 1;
            *deg.entry(ev[1]).or_default() += 1;
            buf.union(vidx[&ev[0]], vidx[&ev[1]]);
        }
        let r = buf.find(vidx[&x.vertices(bedges[0])[0]]);
        rep.one_boundary_cycle = deg.values().all(|&d| d == 2) && deg.keys().all(|v| buf.find(vidx[v]) == r);
    }
    Err(rep)
}

/// Reasons a candidate disc is rejected, for certificates.
pub fn disc_failure(x: &CwComplex, faces2: &[u32]) -> Option<String> {
    let rep = surface_check(x, faces2).unwrap_err();
    match rep.kind {
        SurfaceFailure::Empty => Some("empty".into()),
        SurfaceFailure::EdgeInTooManyFaces => Some("edge in more than two faces".into()),
        SurfaceFailure::BadVertexLink => Some("vertex link is not a path or cycle".into()),
        SurfaceFailure::Disconnected => Some("disconnected".into()),
        SurfaceFailure::None => {
            if rep.euler != 1 {
                Some(format!("Euler characteristic {} instead of 1", rep.euler))
            } else if rep.closed || !rep.one_boundary_cycle {
                Some("boundary is not a single cycle".into())
            } else {
                None
            }
        }
    }
}

/// The closure of `faces2` is a closed disc.
pub fn is_closed_disc_faces(x: &CwComplex, faces2: &[u32]) -> bool {
    disc_failure(x, faces2).is_none()
}

/// The closure of `faces2` is a 2-sphere.
pub fn is_2_sphere_faces(x: &CwComplex, faces2: &[u32]) -> bool {
    let rep = surface_check(x, faces2).unwrap_err();
    rep.kind == SurfaceFailure::None && rep.closed && rep.euler == 2
}

/// Whole-complex disc test (pure 2-dimensional required).
pub fn is_closed_disc(x: &CwComplex) -> bool {
    let all: Vec<u32> = (0..x.len() as u32).collect();
    Subcomplex { parent: x, face_ids: all }.is_closed_disc()
}

/// Whole-complex 2-sphere test.
pub fn is_2_sphere(x: &CwComplex) -> bool {
    let all: Vec<u32> = (0..x.len() as u32).collect();
    Subcomplex { parent: x, face_ids: all }.is_2_sphere()
}

/// For a 2-sphere `s2` and an upward-closed marked set, decide whether the union
/// of the relative interiors of the marked faces is an open disc: marked set
/// nonempty, proper, connected, with connected nonempty complement.
pub fn is_open_disc_star_union(s2: &CwComplex, marked: &dyn Fn(u32) -> bool) -> bool {
    let n = s2.len();
    let m: Vec<bool> = (0..n as u32).map(marked).collect();
    let count = m.iter().filter(|&&b| b).count();
    if count == 0 || count == n {
        return false;
    }
    region_connected(s2, &m, true) && region_connected(s2, &m, false)
}

/// Connectivity of the faces with `m[f] == want`, adjacency by incidence.
pub(crate) fn region_connected(x: &CwComplex, m: &[bool], want: bool) -> bool {
    let n = x.len();
    let start = match (0..n).find(|&i| m[i] == want) {
        Some(s) => s,
        None => return false,
    };
    let mut seen = vec![false; n];
    let mut stack = vec![start as u32];
    seen[start] = true;
    let mut reached = 1usize;
    while let Some(f) = stack.pop() {
        for &g in x.boundary(f).iter().chain(x.cofaces(f)) {
            if m[g as usize] == want && !seen[g as usize] {
                seen[g as usize] = true;
                reached += 1;
                stack.push(g);
            }
        }
    }
    reached == m.iter().filter(|&&b| b == want).count()
}

/// Vertex figure `x/v`: one (k−1)-face per k-face containing `v`.
pub fn vertex_figure(x: &CwComplex, v: u32) -> CwComplex {
    vertex_figure_with_origin(x, v).0
}

/// As [`vertex_figure`], also returning for each figure face the face of `x` it came from.
pub fn vertex_figure_with_origin(x: &CwComplex, v: u32) -> (CwComplex, Vec<u32>) {
    let mut star = x.star(v);
    star.retain(|&f| f != v);
    star.sort_by_key(|&f| (x.dim_of(f), f));
    let local: HashMap<u32, u32> = star.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect();
    let mut b = CwBuilder::with_capacity(star.len(), star.len() * 4);
    let mut bd = Vec::new();
    for &f in &star {
        if x.dim_of(f) == 1 {
            b.add_vertex();
        } else {
            bd.clear();
            bd.extend(x.boundary(f).iter().filter_map(|g| local.get(g).copied()));
            b.add_face(x.dim_of(f) - 1, &bd);
        }
    }
    (b.finish(), star)
}

/// Result of [`cone`].
pub struct Cone {
    pub complex: CwComplex,
    pub apex: u32,
    /// `(base face, pyramidal face)` pairs sorted by base face.
    pub pairs: Vec<(u32, u32)>,
}

impl Cone {
    pub fn cone_of(&self, base_face: u32) -> Option<u32> {
        self.pairs
            .binary_search_by_key(&base_face, |p| p.0)
            .ok()
            .map(|k| self.pairs[k].1)
    }
}

/// Cone over the subcomplex `w` of `x` at a new vertex (id `x.len()`).
/// Pyramidal faces are appended in order of (dimension, base id).
pub fn cone(x: &CwComplex, w: &Subcomplex<'_>) -> Cone {
    let n = x.len();
    let extra: usize = w.face_ids.iter().map(|&f| x.boundary(f).len() + x.vertices(f).len() + 2).sum();
    let mut b = CwBuilder::with_capacity(n + 1 + w.face_ids.len(), x.vert.len() + x.bnd.len() + extra);
    for f in 0..n as u32 {
        b.add_raw(x.dim_of(f), x.vertices(f), x.boundary(f));
    }
    let apex = b.add_vertex();
    let mut base: Vec<u32> = w.face_ids.clone();
    base.sort_by_key(|&f| (x.dim_of(f), f));
    let mut cone_id = vec![NONE; n];
    let mut bd = Vec::new();
    for &f in &base {
        bd.clear();
        bd.push(f);
        if x.dim_of(f) == 0 {
            bd.push(apex);
        } else {
            // boundary faces have lower dimension, so they were coned already
            for &g in x.boundary(f) {
                let c = cone_id[g as usize];
                assert!(c != NONE, "cone: subcomplex not closed at face {g}");
                bd.push(c);
            }
        }
        cone_id[f as usize] = b.add_face(x.dim_of(f) + 1, &bd);
    }
    let mut pairs: Vec<(u32, u32)> = base.iter().map(|&f| (f, cone_id[f as usize])).collect();
    pairs.sort_unstable();
    Cone { complex: b.finish(), apex, pairs }
}

pub(crate) struct UnionFind {
    p: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { p: (0..n).collect() }
    }
    pub fn find(&mut self, mut a: usize) -> usize {
        while self.p[a] != a {
            self.p[a] = self.p[self.p[a]];
            a = self.p[a];
        }
        a
    }
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.p[ra] = rb;
        }
    }
}

/// Simplicial complex generated by `facets` (vertex labels `0..nverts`).
/// Vertex label `i` becomes face id `i`; faces are added by dimension.
pub fn from_simplices(nverts: u32, facets: &[Vec<u32>]) -> CwComplex {
    let mut by_dim: Vec<std::collections::BTreeSet<Vec<u32>>> = vec![Default::default(); 4];
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        let k = f.len();
        for mask in 1u32..(1 << k) {
            let sub: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            by_dim[sub.len() - 1].insert(sub);
        }
    }
    let mut b = CwBuilder::new();
    for _ in 0..nverts {
        b.add_vertex();
    }
    let mut id: HashMap<Vec<u32>, u32> = (0..nverts).map(|v| (vec![v], v)).collect();
    for (d, set) in by_dim.iter().enumerate().skip(1) {
        for s in set {
            let bd: Vec<u32> = (0..s.len())
                .map(|skip| {
                    let t: Vec<u32> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                    id[&t]
                })
                .collect();
            let f = b.add_face(d as u8, &bd);
            id.insert(s.clone(), f);
        }
    }
    b.finish()
}

/// 2-complex from polygons given as vertex cycles on labels `0..nverts`.
pub fn from_polygons(nverts: u32, polys: &[Vec<u32>]) -> CwComplex {
    let mut b = CwBuilder::new();
    for _ in 0..nverts {
        b.add_vertex();
    }
    let mut edge: HashMap<(u32, u32), u32> = HashMap::new();
    let mut ordered = Vec::new();
    for p in polys {
        for i in 0..p.len() {
            let (u, w) = (p[i], p[(i + 1) % p.len()]);
            let key = (u.min(w), u.max(w));
            if !edge.contains_key(&key) {
                ordered.push(key);
                let e = b.add_face(1, &[key.0, key.1]);
                edge.insert(key, e);
            }
        }
    }
    for p in polys {
        let bd: Vec<u32> = (0..p.len())
            .map(|i| {
                let (u, w) = (p[i], p[(i + 1) % p.len()]);
                edge[&(u.min(w), u.max(w))]
            })
            .collect();
        b.add_face(2, &bd);
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tet_boundary() -> CwComplex {
        from_simplices(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
    }

    fn simplex4_boundary() -> CwComplex {
        let fs: Vec<Vec<u32>> = (0..5u32).map(|skip| (0..5).filter(|&v| v != skip).collect()).collect();
        from_simplices(5, &fs)
    }

    #[test]
    fn simplex_boundaries() {
        let t = tet_boundary();
        t.validate().unwrap();
        t.strong_regularity().unwrap();
        assert_eq!(t.euler_char(), 2);
        assert!(is_2_sphere(&t));
        assert!(!is_closed_disc(&t));
        let s = simplex4_boundary();
        s.validate().unwrap();
        assert_eq!(s.f_vector(), [5, 10, 10, 5]);
        assert_eq!(s.euler_char(), 0);
        for v in 0..5 {
            let fig = vertex_figure(&s, v);
            assert_eq!(fig.f_vector(), [4, 6, 4, 0]);
            assert!(is_2_sphere(&fig));
        }
    }

    #[test]
    fn closure_violation_detected() {
        let mut b = CwBuilder::new();
        for _ in 0..3 {
            b.add_vertex();
        }
        let e0 = b.add_face(1, &[0, 1]);
        let e1 = b.add_face(1, &[1, 2]);
        b.add_face(1, &[0, 2]);
        // triangle that omits edge 02 from its boundary, but claims all three vertices
        b.add_raw(2, &[0, 1, 2], &[e0, e1]);
        assert!(b.finish().validate().is_err());
    }

    #[test]
    fn vertex_determined_detected() {
        // two triangles on the same three vertices (a digon-free "pillow")
        let c = from_polygons(3, &[vec![0, 1, 2], vec![0, 1, 2]]);
        assert!(matches!(c.validate(), Err(CwError::Invalid { .. })));
    }

    #[test]
    fn glued_along_two_edges_is_not_strongly_regular() {
        // quadrilaterals 0-1-2-3 and 0-1-2-4 share edges 01 and 12 but meet in no single face
        let c = from_polygons(5, &[vec![0, 1, 2, 3], vec![0, 1, 2, 4]]);
        c.validate().unwrap();
        assert!(matches!(
            c.check_strong_regularity(RegularityMode::Full),
            Err(CwError::NotStronglyRegular { .. })
        ));
    }

    #[test]
    fn tetrahedron_boundary_subcomplex() {
        let t = from_simplices(4, &[vec![0, 1, 2, 3]]);
        let b = boundary_subcomplex(&t);
        assert_eq!(b.f_vector(), [4, 6, 4, 0]);
        assert!(b.is_2_sphere());
        assert!(boundary_subcomplex(&simplex4_boundary()).face_ids.is_empty());
    }

    #[test]
    fn pyramid_apex_figure_is_square() {
        let c = from_polygons(5, &[vec![0, 1, 2, 3], vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4]]);
        assert!(is_2_sphere(&c));
        let fig = vertex_figure(&c, 4);
        assert_eq!(fig.f_vector(), [4, 4, 0, 0]);
    }

    #[test]
    fn cones() {
        let tri = from_polygons(3, &[vec![0, 1, 2]]);
        let whole: Vec<u32> = (0..tri.len() as u32).collect();
        let bd = Subcomplex::closure_of(&tri, &tri.ids_of_dim(1).collect::<Vec<_>>());
        let c = cone(&tri, &bd);
        assert_eq!(c.complex.f_vector(), [4, 6, 4, 0]);
        assert!(is_2_sphere(&c.complex));
        c.complex.strong_regularity().unwrap();
        let empty = Subcomplex { parent: &tri, face_ids: vec![] };
        let c0 = cone(&tri, &empty);
        assert_eq!(c0.complex.f_vector(), [4, 3, 1, 0]);
        let _ = whole;
    }

    #[test]
    fn discs() {
        assert!(is_closed_disc(&from_polygons(3, &[vec![0, 1, 2]])));
        // annulus: square ring of 8 triangles on an inner and outer square
        let ann = from_polygons(
            8,
            &[
                vec![0, 1, 5],
                vec![0, 5, 4],
                vec![1, 2, 6],
                vec![1, 6, 5],
                vec![2, 3, 7],
                vec![2, 7, 6],
                vec![3, 0, 4],
                vec![3, 4, 7],
            ],
        );
        assert!(!is_closed_disc(&ann));
        assert_eq!(ann.euler_char(), 0);
        let bowtie = from_polygons(5, &[vec![0, 1, 2], vec![0, 3, 4]]);
        assert!(!is_closed_disc(&bowtie));
    }

    #[test]
    fn open_disc_star_unions() {
        let t = tet_boundary();
        let star0 = |f: u32| t.has_vertex(f, 0);
        assert!(is_open_disc_star_union(&t, &star0));
        // octahedron: vertices 0..6 with antipodes (0,1),(2,3),(4,5)
        let o = from_simplices(
            6,
            &[
                vec![0, 2, 4],
                vec![0, 4, 3],
                vec![0, 3, 5],
                vec![0, 5, 2],
                vec![1, 2, 4],
                vec![1, 4, 3],
                vec![1, 3, 5],
                vec![1, 5, 2],
            ],
        );
        assert!(is_2_sphere(&o));
        let two = |f: u32| o.has_vertex(f, 0) || o.has_vertex(f, 1);
        assert!(!is_open_disc_star_union(&o, &two));
        let all = |f: u32| o.dim_of(f) > 0 || f < 6;
        assert!(!is_open_disc_star_union(&o, &all));
    }

    #[test]
    fn json_roundtrip() {
        let s = simplex4_boundary();
        let mut buf = Vec::new();
        s.write_json(&mut buf, &serde_json::json!({"kind": "test"})).unwrap();
        let (t, meta) = CwComplex::read_json(buf.as_slice()).unwrap();
        assert_eq!(meta["kind"], "test");
        assert_eq!(t.len(), s.len());
        for f in 0..s.len() as u32 {
            assert_eq!(t.face(f), s.face(f));
        }
    }
}
