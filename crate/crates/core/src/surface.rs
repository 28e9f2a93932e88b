//! Surface recognition for pure 2-complexes.
//!
//! A complex is a surface when every edge lies in at most two triangles and
//! every vertex link is a single cycle (interior vertex) or a single path whose
//! ends are the two boundary neighbours of the vertex. For surfaces we compute
//! `χ = V - E + F`, orientability by propagating a triangle orientation across
//! interior edges, and the number of boundary circles; the pair
//! `(χ, orientable, boundary)` then names the surface.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Edge, TwoComplex};
use crate::cyclic::Triangle;
use crate::error::{Error, Result};
use crate::skeleton::SkeletonSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Classification {
    Sphere,
    Torus,
    KleinBottle,
    ProjectivePlane,
    MoebiusStrip,
    Annulus,
    Disk,
    Other {
        euler_characteristic: i64,
        orientable: Option<bool>,
        boundary_components: usize,
    },
}

impl Classification {
    /// Name of a compact surface from its invariants.
    pub fn from_invariants(chi: i64, orientable: bool, boundary: usize) -> Classification {
        use Classification::*;
        match (boundary, orientable, chi) {
            (0, true, 2) => Sphere,
            (0, true, 0) => Torus,
            (0, false, 1) => ProjectivePlane,
            (0, false, 0) => KleinBottle,
            (1, true, 1) => Disk,
            (2, true, 0) => Annulus,
            (1, false, 0) => MoebiusStrip,
            _ => Other {
                euler_characteristic: chi,
                orientable: Some(orientable),
                boundary_components: boundary,
            },
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Classification::*;
        match self {
            Sphere => f.write_str("Sphere"),
            Torus => f.write_str("Torus"),
            KleinBottle => f.write_str("KleinBottle"),
            ProjectivePlane => f.write_str("ProjectivePlane"),
            MoebiusStrip => f.write_str("MoebiusStrip"),
            Annulus => f.write_str("Annulus"),
            Disk => f.write_str("Disk"),
            Other {
                euler_characteristic,
                orientable,
                boundary_components,
            } => {
                let o = match orientable {
                    Some(true) => "orientable",
                    Some(false) => "nonorientable",
                    None => "not a surface",
                };
                write!(
                    f,
                    "Other(chi={}, {}, boundary={})",
                    euler_characteristic, o, boundary_components
                )
            }
        }
    }
}

/// Verification record for one connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub is_pseudomanifold: bool,
    pub is_closed: bool,
    pub links_ok: bool,
    pub euler_characteristic: i64,
    /// `None` when the component is not a surface.
    pub orientable: Option<bool>,
    pub boundary_components: usize,
    /// Orientable genus `(2 - χ - b) / 2` or cross-cap number `2 - χ - b`.
    pub genus: Option<u32>,
    pub classification: Classification,
}

impl ComponentRecord {
    pub fn is_surface(&self) -> bool {
        self.is_pseudomanifold && self.links_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceCertificate {
    pub components: Vec<ComponentRecord>,
    /// Difference classes of edges lying in exactly one triangle.
    pub open_edge_classes: Vec<u32>,
    /// Difference classes of edges lying in three or more triangles.
    pub singular_edge_classes: Vec<u32>,
}

impl SurfaceCertificate {
    pub fn is_surface(&self) -> bool {
        self.components.iter().all(ComponentRecord::is_surface)
    }

    pub fn is_closed(&self) -> bool {
        self.components.iter().all(|c| c.is_closed)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().map(|c| c.euler_characteristic).sum()
    }

    pub fn classifications(&self) -> Vec<Classification> {
        self.components.iter().map(|c| c.classification).collect()
    }

    /// `Torus`, or `5 x MoebiusStrip`, or `Sphere + Torus`.
    pub fn summary(&self) -> String {
        let mut counts: BTreeMap<Classification, usize> = BTreeMap::new();
        for c in &self.components {
            *counts.entry(c.classification).or_default() += 1;
        }
        counts
            .iter()
            .map(|(class, &count)| {
                if count == 1 {
                    class.to_string()
                } else {
                    format!("{} x {}", count, class)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Certifies each connected component of `c`.
pub fn certify(c: &TwoComplex) -> Result<SurfaceCertificate> {
    if c.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let classes_with = |pred: fn(usize) -> bool| -> Vec<u32> {
        c.edges()
            .iter()
            .filter(|(_, ts)| pred(ts.len()))
            .map(|(e, _)| c.edge_class(e))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    };
    Ok(SurfaceCertificate {
        components: c.components().iter().map(certify_component).collect(),
        open_edge_classes: classes_with(|d| d == 1),
        singular_edge_classes: classes_with(|d| d > 2),
    })
}

fn certify_component(c: &TwoComplex) -> ComponentRecord {
    let is_pseudomanifold = c.edges().values().all(|ts| ts.len() <= 2);
    let is_closed = c.edges().values().all(|ts| ts.len() == 2);
    let links_ok = is_pseudomanifold && c.vertices().iter().all(|&v| link_ok(c, v));
    let chi = c.euler_characteristic();
    let boundary = boundary_graph_components(c);
    let surface = is_pseudomanifold && links_ok;
    let orientable = surface.then(|| propagate_orientation(c));
    let (genus, classification) = match orientable {
        Some(o) => {
            let excess = 2 - chi - boundary as i64;
            let g = if o { excess / 2 } else { excess };
            (u32::try_from(g).ok(), Classification::from_invariants(chi, o, boundary))
        }
        None => (
            None,
            Classification::Other {
                euler_characteristic: chi,
                orientable: None,
                boundary_components: boundary,
            },
        ),
    };
    ComponentRecord {
        vertices: c.vertices().len(),
        edges: c.edges().len(),
        triangles: c.triangles().len(),
        is_pseudomanifold,
        is_closed,
        links_ok,
        euler_characteristic: chi,
        orientable,
        boundary_components: boundary,
        genus,
        classification,
    }
}

fn link_ok(c: &TwoComplex, v: u32) -> bool {
    let link = match c.link(v) {
        Ok(l) => l,
        Err(_) => return false,
    };
    let boundary_nbrs: Vec<u32> = link
        .vertices
        .iter()
        .copied()
        .filter(|&x| c.edge_degree(&sorted_edge(v, x)) == 1)
        .collect();
    match boundary_nbrs.len() {
        0 => link.is_cycle(),
        2 => link.path_endpoints() == Some([boundary_nbrs[0], boundary_nbrs[1]]),
        _ => false,
    }
}

fn sorted_edge(x: u32, y: u32) -> Edge {
    if x < y {
        [x, y]
    } else {
        [y, x]
    }
}

/// Sign of edge `e` inside `t` when `t = [x, y, z]` is traversed `x -> y -> z -> x`.
fn edge_sign(t: &Triangle, e: &Edge) -> i8 {
    let [x, _, z] = t.vertices();
    if *e == [x, z] {
        -1
    } else {
        1
    }
}

/// Breadth-first orientation propagation across interior edges.
///
/// Two triangles sharing an edge must traverse it in opposite directions;
/// a contradiction means the component is nonorientable.
fn propagate_orientation(c: &TwoComplex) -> bool {
    let mut orientation: BTreeMap<Triangle, i8> = BTreeMap::new();
    for &seed in c.triangles() {
        if orientation.contains_key(&seed) {
            continue;
        }
        orientation.insert(seed, 1);
        let mut queue = VecDeque::from([seed]);
        while let Some(t) = queue.pop_front() {
            let eps = orientation[&t];
            for e in t.edges() {
                let incident = &c.edges()[&e];
                if incident.len() != 2 {
                    continue;
                }
                let u = if incident[0] == t { incident[1] } else { incident[0] };
                let want = -eps * edge_sign(&t, &e) * edge_sign(&u, &e);
                match orientation.get(&u) {
                    Some(&have) if have != want => return false,
                    Some(_) => {}
                    None => {
                        orientation.insert(u, want);
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    true
}

fn boundary_graph_components(c: &TwoComplex) -> usize {
    let open: Vec<Edge> = c
        .edges()
        .iter()
        .filter(|(_, ts)| ts.len() == 1)
        .map(|(e, _)| *e)
        .collect();
    let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for [x, y] in &open {
        adj.entry(*x).or_default().push(*y);
        adj.entry(*y).or_default().push(*x);
    }
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for &start in adj.keys() {
        if !seen.insert(start) {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adj[&x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// The edges lying in exactly one triangle, walked into closed vertex cycles.
///
/// Each cycle starts at its least vertex and continues to the smaller of its
/// two neighbours.
pub fn boundary_cycles(c: &TwoComplex) -> Result<Vec<Vec<u32>>> {
    if let Some((e, ts)) = c.edges().iter().find(|(_, ts)| ts.len() > 2) {
        return Err(Error::NotPseudomanifold(e[0], e[1], ts.len()));
    }
    let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (e, _) in c.edges().iter().filter(|(_, ts)| ts.len() == 1) {
        adj.entry(e[0]).or_default().push(e[1]);
        adj.entry(e[1]).or_default().push(e[0]);
    }
    if let Some((&v, nbrs)) = adj.iter().find(|(_, n)| n.len() != 2) {
        return Err(Error::IrregularBoundary {
            vertex: v,
            degree: nbrs.len(),
        });
    }
    let mut seen = BTreeSet::new();
    let mut cycles = Vec::new();
    for &start in adj.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        seen.insert(start);
        let mut prev = start;
        let mut cur = *adj[&start].iter().min().expect("degree two");
        while cur != start {
            seen.insert(cur);
            cycle.push(cur);
            let next = adj[&cur].iter().copied().find(|&x| x != prev).expect("degree two");
            prev = cur;
            cur = next;
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// True when every triangle of `c` is a face of the skeleton.
pub fn is_subcomplex_of_skeleton(c: &TwoComplex, spec: &SkeletonSpec) -> Result<bool> {
    if c.modulus() != spec.modulus() {
        return Err(Error::ModulusMismatch {
            expected: spec.modulus().get(),
            found: c.modulus().get(),
        });
    }
    Ok(c.triangles().iter().all(|t| spec.contains_triangle(t)))
}
