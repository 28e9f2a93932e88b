//! Pure 2-complexes on `Z_n` built from difference cycles.

use std::collections::{BTreeMap, BTreeSet};

use crate::cyclic::{difference_class, DifferenceCycle, Modulus, Triangle};
use crate::error::{Error, Result};

pub type Edge = [u32; 2];

/// A pure 2-dimensional complex on a subset of `Z_n`.
///
/// Built either from a set of difference cycles (`build`) or, for connected
/// components and test fixtures, from an explicit triangle set, in which case
/// `cycles` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoComplex {
    n: Modulus,
    cycles: Vec<DifferenceCycle>,
    triangles: BTreeSet<Triangle>,
    edges: BTreeMap<Edge, Vec<Triangle>>,
    vertices: BTreeSet<u32>,
}

impl TwoComplex {
    /// Union of the orbits of `cycles`. Insertion order is irrelevant.
    pub fn build(n: Modulus, cycles: &[DifferenceCycle]) -> Result<Self> {
        let mut sorted = Vec::with_capacity(cycles.len());
        for dc in cycles {
            if dc.modulus() != n {
                return Err(Error::ModulusMismatch {
                    expected: n.get(),
                    found: dc.modulus().get(),
                });
            }
            sorted.push(*dc);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCycle(w[0]));
        }
        let triangles = sorted.iter().flat_map(|d| d.expand()).collect();
        let mut c = Self::from_triangles(n, triangles);
        c.cycles = sorted;
        Ok(c)
    }

    pub fn from_triangles(n: Modulus, triangles: BTreeSet<Triangle>) -> Self {
        let mut edges: BTreeMap<Edge, Vec<Triangle>> = BTreeMap::new();
        let mut vertices = BTreeSet::new();
        for t in &triangles {
            vertices.extend(t.vertices());
            for e in t.edges() {
                edges.entry(e).or_default().push(*t);
            }
        }
        TwoComplex {
            n,
            cycles: Vec::new(),
            triangles,
            edges,
            vertices,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.n
    }

    pub fn cycles(&self) -> &[DifferenceCycle] {
        &self.cycles
    }

    pub fn triangles(&self) -> &BTreeSet<Triangle> {
        &self.triangles
    }

    pub fn edges(&self) -> &BTreeMap<Edge, Vec<Triangle>> {
        &self.edges
    }

    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn edge_degree(&self, e: &Edge) -> usize {
        self.edges.get(e).map_or(0, Vec::len)
    }

    /// `min(y - x, n - (y - x))` for the edge `{x, y}`.
    pub fn edge_class(&self, e: &Edge) -> u32 {
        difference_class(e[1] - e[0], self.n.get())
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// The link graph of `v`.
    pub fn link(&self, v: u32) -> Result<VertexLink> {
        if !self.vertices.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut edges = Vec::new();
        for t in self.triangles.iter().filter(|t| t.contains(v)) {
            let mut rest = t.vertices().into_iter().filter(|&x| x != v);
            let x = rest.next().expect("triangle has three vertices");
            let y = rest.next().expect("triangle has three vertices");
            edges.push([x, y]);
        }
        edges.sort_unstable();
        let vertices = edges.iter().flatten().copied().collect();
        Ok(VertexLink {
            vertex: v,
            vertices,
            edges,
        })
    }

    /// Connected components under shared vertices, sorted by least vertex.
    pub fn components(&self) -> Vec<TwoComplex> {
        let idx: BTreeMap<u32, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..idx.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for t in &self.triangles {
            let [a, b, c] = t.vertices().map(|v| idx[&v]);
            for other in [b, c] {
                let (ra, ro) = (find(&mut parent, a), find(&mut parent, other));
                if ra != ro {
                    parent[ra.max(ro)] = ra.min(ro);
                }
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<Triangle>> = BTreeMap::new();
        for t in &self.triangles {
            let root = find(&mut parent, idx[&t.vertices()[0]]);
            groups.entry(root).or_default().insert(*t);
        }
        groups
            .into_values()
            .map(|ts| TwoComplex::from_triangles(self.n, ts))
            .collect()
    }

    /// The complex relabeled by `i -> i + by (mod n)`.
    pub fn shifted(&self, by: u32) -> TwoComplex {
        let ts = self.triangles.iter().map(|t| t.shifted(by, self.n)).collect();
        let mut c = TwoComplex::from_triangles(self.n, ts);
        c.cycles = self.cycles.clone();
        c
    }
}

/// Link of a vertex: one edge `{x, y}` per triangle `{v, x, y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLink {
    pub vertex: u32,
    pub vertices: BTreeSet<u32>,
    pub edges: Vec<Edge>,
}

impl VertexLink {
    pub fn degree(&self, x: u32) -> usize {
        self.edges.iter().filter(|e| e.contains(&x)).count()
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for e in self.edges.iter().filter(|e| e.contains(&x)) {
                let y = if e[0] == x { e[1] } else { e[0] };
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// A single closed cycle through every link vertex.
    pub fn is_cycle(&self) -> bool {
        self.vertices.len() >= 3
            && self.edges.len() == self.vertices.len()
            && self.vertices.iter().all(|&x| self.degree(x) == 2)
            && self.is_connected()
    }

    /// A single simple path; returns its endpoints.
    pub fn path_endpoints(&self) -> Option<[u32; 2]> {
        if self.edges.is_empty() || self.edges.len() + 1 != self.vertices.len() || !self.is_connected() {
            return None;
        }
        let ends: Vec<u32> = self.vertices.iter().copied().filter(|&x| self.degree(x) == 1).collect();
        if ends.len() != 2 || self.vertices.iter().any(|&x| self.degree(x) > 2) {
            return None;
        }
        Some([ends[0], ends[1]])
    }
}
