//! Canonical forms for small uniform hypergraphs.
//!
//! Each connected component is canonized by individualization and
//! refinement: vertices are colored by an iterated incidence signature, ties
//! are broken by individualizing one vertex of the first non-singleton cell,
//! and the lexicographically smallest relabeled edge list over all leaves of
//! the search tree wins. Automorphisms found along the way (including twin
//! transpositions) prune equivalent branches. Components are then ordered by
//! their own codes and concatenated, isolated vertices last.

use std::fmt;
use std::str::FromStr;

use super::{Edge, UniformHypergraph, VertexId};
use crate::error::{Error, Result};

pub const CANON_MAX_VERTICES: usize = 16;

/// Isomorphism-invariant encoding: `[r, n, m_hi, m_lo, edge vertices...]`
/// with edges relabeled canonically and sorted. Orders first by uniformity,
/// then vertex count, then edge count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn r(&self) -> usize {
        self.0[0] as usize
    }

    pub fn n(&self) -> usize {
        self.0[1] as usize
    }

    pub fn num_edges(&self) -> usize {
        ((self.0[2] as usize) << 8) | self.0[3] as usize
    }

    /// The canonically labeled representative.
    pub fn to_hypergraph(&self) -> UniformHypergraph {
        let r = self.r();
        let edges = self.0[4..]
            .chunks(r)
            .map(|c| Edge::new(c.iter().map(|&v| v as usize).collect::<Vec<_>>()))
            .collect();
        UniformHypergraph::from_edges(r, self.n(), edges)
    }
}

impl fmt::Display for CanonicalForm {
    /// `r2n4:01,03,12,23`, one hex digit per vertex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}n{}:", self.r(), self.n())?;
        for (i, chunk) in self.0[4..].chunks(self.r().max(1)).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            for &v in chunk {
                write!(f, "{v:x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for CanonicalForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Validation(format!("malformed canonical form {s:?}"));
        let rest = s.strip_prefix('r').ok_or_else(bad)?;
        let (r, rest) = rest.split_once('n').ok_or_else(bad)?;
        let (n, edges) = rest.split_once(':').ok_or_else(bad)?;
        let r: usize = r.parse().map_err(|_| bad())?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let mut raw = Vec::new();
        if !edges.is_empty() {
            for e in edges.split(',') {
                let verts = e
                    .chars()
                    .map(|c| c.to_digit(16).map(|d| d as usize))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(bad)?;
                raw.push(verts);
            }
        }
        let h = UniformHypergraph::new(r, n, raw)?;
        let form = canonical_form(&h)?;
        if form.to_string() != s {
            return Err(Error::Validation(format!("{s:?} is not in canonical form")));
        }
        Ok(form)
    }
}

pub fn canonical_form(h: &UniformHypergraph) -> Result<CanonicalForm> {
    canonical_labeling(h).map(|(f, _)| f)
}

/// Canonical form plus the labeling `perm[v] = canonical label of v`.
pub fn canonical_labeling(h: &UniformHypergraph) -> Result<(CanonicalForm, Vec<VertexId>)> {
    if h.n() > CANON_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count for canonical form",
            got: h.n(),
            cap: CANON_MAX_VERTICES,
        });
    }
    let mut comps: Vec<(Vec<Vec<usize>>, Vec<VertexId>)> = Vec::new();
    let mut isolated = Vec::new();
    for members in h.components() {
        if members.len() == 1 && h.incident(members[0]).is_empty() {
            isolated.push(members[0]);
            continue;
        }
        let local = Component::new(h, &members);
        let (code, labeling) = local.canonize();
        let mut order = vec![0; members.len()];
        for (i, &lab) in labeling.iter().enumerate() {
            order[lab] = members[i];
        }
        comps.push((code, order));
    }
    comps.sort_by(|a, b| (a.1.len(), &a.0).cmp(&(b.1.len(), &b.0)));

    let mut perm = vec![0; h.n()];
    let mut next = 0;
    for (_, order) in &comps {
        for &v in order {
            perm[v] = next;
            next += 1;
        }
    }
    for &v in &isolated {
        perm[v] = next;
        next += 1;
    }
    let mut edges: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|e| {
            let mut v: Vec<usize> = e.iter().map(|x| perm[x]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    edges.sort_unstable();
    let m = edges.len();
    let mut bytes = Vec::with_capacity(4 + m * h.r());
    bytes.push(h.r() as u8);
    bytes.push(h.n() as u8);
    bytes.push((m >> 8) as u8);
    bytes.push((m & 0xff) as u8);
    for e in edges {
        bytes.extend(e.into_iter().map(|v| v as u8));
    }
    Ok((CanonicalForm(bytes), perm))
}

struct Component {
    n: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

struct Leaf {
    code: Vec<Vec<usize>>,
    labeling: Vec<usize>,
    inverse: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    comp: &'a Component,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl Component {
    fn new(h: &UniformHypergraph, members: &[VertexId]) -> Self {
        let mut local = vec![usize::MAX; h.n()];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for e in h.edges() {
            if local[e.vertices()[0]] != usize::MAX {
                edges.push(e.iter().map(|v| local[v]).collect::<Vec<_>>());
            }
        }
        let mut incidence = vec![Vec::new(); members.len()];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Component {
            n: members.len(),
            edges,
            incidence,
        }
    }

    fn canonize(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut search = Search {
            comp: self,
            first: None,
            best: None,
            automorphisms: Vec::new(),
        };
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.incidence[u] == self.incidence[v] {
                    let mut t: Vec<usize> = (0..self.n).collect();
                    t.swap(u, v);
                    search.automorphisms.push(t);
                }
            }
        }
        let cells = vec![(0..self.n).collect::<Vec<_>>()];
        search.descend(cells, &mut Vec::new());
        let best = search.best.expect("search visits at least one leaf");
        (best.code, best.labeling)
    }

    /// Splits cells by incidence signature until stable.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        let mut color = vec![0usize; self.n];
        loop {
            for (ci, cell) in cells.iter().enumerate() {
                for &v in cell {
                    color[v] = ci;
                }
            }
            let signature = |v: usize| -> Vec<Vec<usize>> {
                let mut sig: Vec<Vec<usize>> = self.incidence[v]
                    .iter()
                    .map(|&ei| {
                        let mut c: Vec<usize> = self.edges[ei]
                            .iter()
                            .filter(|&&w| w != v)
                            .map(|&w| color[w])
                            .collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                sig.sort_unstable();
                sig
            };
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<Vec<usize>>, usize)> =
                    cell.iter().map(|&v| (signature(v), v)).collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return;
            }
            *cells = next;
        }
    }
}

impl Search<'_> {
    /// Returns `Some(level)` when the whole subtree below `level` is known to
    /// be equivalent to one already explored.
    fn descend(&mut self, mut cells: Vec<Vec<usize>>, path: &mut Vec<usize>) -> Option<usize> {
        self.comp.refine(&mut cells);
        if cells.len() == self.comp.n {
            return self.leaf(&cells, path);
        }
        let target = cells
            .iter()
            .position(|c| c.len() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        let mut tried: Vec<usize> = Vec::new();
        let candidates = cells[target].clone();
        for &w in &candidates {
            if !tried.is_empty() && self.same_orbit(&tried, w, path) {
                continue;
            }
            tried.push(w);
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![w]);
                    child.push(cell.iter().copied().filter(|&v| v != w).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            path.push(w);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < path.len() {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[Vec<usize>], path: &[usize]) -> Option<usize> {
        let n = self.comp.n;
        let mut labeling = vec![0; n];
        let mut inverse = vec![0; n];
        for (i, cell) in cells.iter().enumerate() {
            labeling[cell[0]] = i;
            inverse[i] = cell[0];
        }
        let mut code: Vec<Vec<usize>> = self
            .comp
            .edges
            .iter()
            .map(|e| {
                let mut v: Vec<usize> = e.iter().map(|&x| labeling[x]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        code.sort_unstable();
        let leaf = Leaf {
            code,
            labeling,
            inverse,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                code: leaf.code.clone(),
                labeling: leaf.labeling.clone(),
                inverse: leaf.inverse.clone(),
                path: leaf.path.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        if leaf.code == first.code {
            let gamma = (0..n).map(|v| first.inverse[leaf.labeling[v]]).collect();
            let level = first
                .path
                .iter()
                .zip(&leaf.path)
                .position(|(a, b)| a != b)
                .unwrap_or(0);
            self.automorphisms.push(gamma);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best set with first");
        match leaf.code.cmp(&best.code) {
            std::cmp::Ordering::Less => self.best = Some(leaf),
            std::cmp::Ordering::Equal => {
                let gamma = (0..n).map(|v| best.inverse[leaf.labeling[v]]).collect();
                self.automorphisms.push(gamma);
            }
            std::cmp::Ordering::Greater => {}
        }
        None
    }

    /// Orbit test under the automorphisms found so far that fix `path`
    /// pointwise.
    fn same_orbit(&self, tried: &[usize], w: usize, path: &[usize]) -> bool {
        let n = self.comp.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.automorphisms {
            if path.iter().any(|&v| g[v] != v) {
                continue;
            }
            for v in 0..n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g[v]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, w);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }
}
