//! Partitions of a skeleton's triangles into certified, shift-invariant blocks.
//!
//! Closed forms:
//!
//! * chiral cycles pair with their mirror, `{(a : b : c), (a : c : b)}`;
//! * on the simplex (`k = 1, 5 mod 6`) each achiral cycle `(a : a : k - 2a)` is
//!   its own block;
//! * on `β^k` the achiral cycle `(a : a : 2k - 2a)` has its once-covered edge
//!   class `2a` matched by `(k - a : k - a : 2a)`, so the pair
//!   `B_a` is closed (`1 <= a < k/2`; for `a = k/3` the partner is the short
//!   orbit `(2k/3 : 2k/3 : 2k/3)`).
//!
//! Every block is certified and attested, never trusted. When the closed form
//! fails the acceptance policy, an exact-cover search over the skeleton's
//! cycles is tried before giving up.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::TwoComplex;
use crate::cyclic::{difference_class, DifferenceCycle, Modulus, Triangle};
use crate::error::{Error, Result};
use crate::skeleton::{SkeletonKind, SkeletonSpec};
use crate::surface::{certify, is_subcomplex_of_skeleton, Classification, SurfaceCertificate};
use crate::symmetry::{attest, SymmetryAttestation};

/// Largest cycle list `search_partition` will explore.
pub const SEARCH_LIMIT: usize = 64;

/// Which surface classes every connected component of a block may have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Policy {
    /// Sphere or torus.
    #[serde(rename = "genus-le-1")]
    GenusAtMostOne,
    /// Closed with `χ >= 0`: sphere, torus, projective plane, Klein bottle.
    #[serde(rename = "chi-nonneg")]
    NonnegativeEuler,
    /// Torus or Möbius strip.
    #[serde(rename = "tori-moebius")]
    ToriAndMoebiusStrips,
}

impl Policy {
    pub fn allowed(self) -> &'static [Classification] {
        use Classification::*;
        match self {
            Policy::GenusAtMostOne => &[Sphere, Torus],
            Policy::NonnegativeEuler => &[Sphere, Torus, ProjectivePlane, KleinBottle],
            Policy::ToriAndMoebiusStrips => &[Torus, MoebiusStrip],
        }
    }

    pub fn accepts(self, cert: &SurfaceCertificate) -> bool {
        !cert.components.is_empty()
            && cert
                .components
                .iter()
                .all(|c| self.allowed().contains(&c.classification))
    }

    /// Upper bound on the triangles of an acceptable block on `Z_n`.
    ///
    /// Each allowed class has `χ >= 0`, and any pure 2-complex with edges of
    /// degree at most two has `E >= 3F/2`, so `0 <= χ <= V - F/2 <= n - F/2`.
    pub fn max_block_triangles(self, n: Modulus) -> usize {
        2 * n.get() as usize
    }

    pub fn default_for(kind: SkeletonKind) -> Policy {
        match kind {
            SkeletonKind::CrossPolytope => Policy::GenusAtMostOne,
            SkeletonKind::Simplex => Policy::ToriAndMoebiusStrips,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Policy::GenusAtMostOne => "genus-le-1",
            Policy::NonnegativeEuler => "chi-nonneg",
            Policy::ToriAndMoebiusStrips => "tori-moebius",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Policy::GenusAtMostOne,
            Policy::NonnegativeEuler,
            Policy::ToriAndMoebiusStrips,
        ]
        .into_iter()
        .find(|p| p.name() == s)
        .ok_or_else(|| Error::Parse(format!("unknown policy `{}`", s)))
    }
}

/// How a partition was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Search,
    Verified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionBlock {
    pub cycles: Vec<DifferenceCycle>,
    pub complex: TwoComplex,
    pub certificate: SurfaceCertificate,
    pub symmetry: SymmetryAttestation,
}

impl PartitionBlock {
    pub fn new(n: Modulus, cycles: &[DifferenceCycle]) -> Result<Self> {
        let complex = TwoComplex::build(n, cycles)?;
        let certificate = certify(&complex)?;
        let symmetry = attest(&complex);
        Ok(PartitionBlock {
            cycles: complex.cycles().to_vec(),
            complex,
            certificate,
            symmetry,
        })
    }

    pub fn triangle_count(&self) -> usize {
        self.complex.triangles().len()
    }
}

/// Triangle-level evidence that the blocks tile the skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub skeleton_triangles: u64,
    /// Sum of block sizes, counted with multiplicity.
    pub covered_triangles: u64,
    pub disjoint: bool,
    /// Union of the blocks equals the skeleton's triangle set.
    pub complete: bool,
}

impl Coverage {
    pub fn holds(&self) -> bool {
        self.disjoint && self.complete && self.covered_triangles == self.skeleton_triangles
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub spec: SkeletonSpec,
    pub policy: Policy,
    pub method: Method,
    pub blocks: Vec<PartitionBlock>,
    pub coverage: Coverage,
}

impl Partition {
    pub fn triangle_count(&self) -> usize {
        self.blocks.iter().map(PartitionBlock::triangle_count).sum()
    }

    /// Block count per block summary (`Torus`, `3 x Sphere`, ...).
    pub fn blocks_by_class(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for b in &self.blocks {
            *out.entry(b.certificate.summary()).or_default() += 1;
        }
        out
    }

    pub fn cycle_lists(&self) -> Vec<Vec<DifferenceCycle>> {
        self.blocks.iter().map(|b| b.cycles.clone()).collect()
    }
}

/// Why a proposed partition was refused. Block numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    EmptyBlock {
        block: usize,
    },
    SkeletonViolation {
        block: usize,
        cycle: DifferenceCycle,
    },
    CoverageOverlap {
        cycle: DifferenceCycle,
        blocks: [usize; 2],
    },
    CoverageGap {
        missing: Vec<DifferenceCycle>,
    },
    CertificationFailure {
        block: usize,
        policy: Policy,
        classes: Vec<Classification>,
        open_edge_classes: Vec<u32>,
        singular_edge_classes: Vec<u32>,
    },
    AsymmetricBlock {
        block: usize,
    },
}

impl Rejection {
    pub fn kind(&self) -> &'static str {
        match self {
            Rejection::EmptyBlock { .. } => "empty-block",
            Rejection::SkeletonViolation { .. } => "skeleton-violation",
            Rejection::CoverageOverlap { .. } => "coverage-overlap",
            Rejection::CoverageGap { .. } => "coverage-gap",
            Rejection::CertificationFailure { .. } => "certification-failure",
            Rejection::AsymmetricBlock { .. } => "asymmetric-block",
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::EmptyBlock { block } => write!(f, "block {} is empty", block),
            Rejection::SkeletonViolation { block, cycle } => write!(
                f,
                "skeleton-violation: block {} contains {}, whose triangles contain antipodal pairs",
                block, cycle
            ),
            Rejection::CoverageOverlap { cycle, blocks } => {
                write!(
                    f,
                    "coverage-overlap: {} appears in blocks {} and {}",
                    cycle, blocks[0], blocks[1]
                )
            }
            Rejection::CoverageGap { missing } => {
                write!(f, "coverage-gap: no block contains {}", join(missing))
            }
            Rejection::CertificationFailure {
                block,
                policy,
                classes,
                open_edge_classes,
                singular_edge_classes,
            } => {
                write!(
                    f,
                    "certification-failure: block {} has components [{}], not allowed by policy {}",
                    block,
                    join(classes),
                    policy
                )?;
                if !open_edge_classes.is_empty() {
                    write!(
                        f,
                        "; block {} not closed (degree-1 edges of difference class {})",
                        block,
                        join(open_edge_classes)
                    )?;
                }
                if !singular_edge_classes.is_empty() {
                    write!(
                        f,
                        "; edges of difference class {} lie in more than two triangles",
                        join(singular_edge_classes)
                    )?;
                }
                Ok(())
            }
            Rejection::AsymmetricBlock { block } => {
                write!(f, "block {} is not invariant under the cyclic shift", block)
            }
        }
    }
}

impl std::error::Error for Rejection {}

fn certification_failure(block: usize, policy: Policy, cert: &SurfaceCertificate) -> Rejection {
    Rejection::CertificationFailure {
        block,
        policy,
        classes: cert.classifications(),
        open_edge_classes: cert.open_edge_classes.clone(),
        singular_edge_classes: cert.singular_edge_classes.clone(),
    }
}

/// Compares the union of the blocks with the skeleton's triangle set.
pub fn prove_coverage(spec: &SkeletonSpec, blocks: &[PartitionBlock]) -> Coverage {
    let skeleton: BTreeSet<Triangle> = spec.triangles().into_iter().collect();
    let mut union = BTreeSet::new();
    let mut covered = 0u64;
    for b in blocks {
        covered += b.triangle_count() as u64;
        union.extend(b.complex.triangles().iter().copied());
    }
    Coverage {
        skeleton_triangles: skeleton.len() as u64,
        covered_triangles: covered,
        disjoint: covered == union.len() as u64,
        complete: union == skeleton,
    }
}

fn sort_groups(groups: &mut [Vec<DifferenceCycle>]) {
    for g in groups.iter_mut() {
        g.sort_unstable();
    }
    groups.sort();
}

/// Mirror pairs plus the matched achiral pairs `B_a` for `β^k`.
pub fn cross_grouping(k: u32) -> Vec<Vec<DifferenceCycle>> {
    let n = Modulus::new(2 * k).expect("k >= 3");
    let mut groups: Vec<Vec<DifferenceCycle>> = crate::skeleton::cross_cycles(k)
        .into_iter()
        .filter(|d| !d.is_achiral() && *d < d.mirror())
        .map(|d| vec![d, d.mirror()])
        .collect();
    for a in (1..k).take_while(|a| 2 * a < k) {
        let first = DifferenceCycle::normalize(a, a, 2 * k - 2 * a, n).expect("gaps sum to 2k");
        let partner = DifferenceCycle::normalize(k - a, k - a, 2 * a, n).expect("gaps sum to 2k");
        groups.push(vec![first, partner]);
    }
    sort_groups(&mut groups);
    groups
}

/// Mirror pairs plus achiral singletons for the simplex on `Z_k`.
pub fn simplex_grouping(k: u32) -> Vec<Vec<DifferenceCycle>> {
    let mut groups: Vec<Vec<DifferenceCycle>> = crate::skeleton::simplex_cycles(k)
        .into_iter()
        .filter_map(|d| {
            if d.is_achiral() {
                Some(vec![d])
            } else if d < d.mirror() {
                Some(vec![d, d.mirror()])
            } else {
                None
            }
        })
        .collect();
    sort_groups(&mut groups);
    groups
}

fn build_blocks(n: Modulus, groups: &[Vec<DifferenceCycle>]) -> Result<Vec<PartitionBlock>> {
    groups.par_iter().map(|g| PartitionBlock::new(n, g)).collect()
}

fn assemble(spec: SkeletonSpec, policy: Policy, method: Method, mut blocks: Vec<PartitionBlock>) -> Result<Partition> {
    blocks.sort_by(|a, b| a.cycles.cmp(&b.cycles));
    let coverage = prove_coverage(&spec, &blocks);
    if !coverage.holds() {
        return Err(Error::ConstructionFailure(format!(
            "blocks cover {} of {} triangles (disjoint: {}, complete: {})",
            coverage.covered_triangles, coverage.skeleton_triangles, coverage.disjoint, coverage.complete
        )));
    }
    Ok(Partition {
        spec,
        policy,
        method,
        blocks,
        coverage,
    })
}

fn describe_failures(blocks: &[(PartitionBlock, bool)]) -> String {
    let bad: Vec<String> = blocks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(b, _)| format!("{{{}}} is {}", join(&b.cycles), b.certificate.summary()))
        .collect();
    format!("closed form rejected {} block(s): {}", bad.len(), bad.join("; "))
}

fn fallback(spec: SkeletonSpec, policy: Policy, closed_form: String) -> Result<Partition> {
    match search_partition(&spec, policy) {
        Ok(p) => Ok(p),
        Err(e) => Err(Error::ConstructionFailure(format!(
            "{}; search fallback: {}",
            closed_form, e
        ))),
    }
}

/// Tori from mirror pairs and Möbius strips from achiral cycles, for `k = 1, 5 mod 6`.
pub fn simplex_partition(k: u32) -> Result<Partition> {
    if k < 5 || !matches!(k % 6, 1 | 5) {
        return Err(Error::IneligibleK(k));
    }
    let spec = SkeletonSpec::simplex(k)?;
    let policy = Policy::ToriAndMoebiusStrips;
    let blocks = build_blocks(spec.modulus(), &simplex_grouping(k))?;
    let checked: Vec<(PartitionBlock, bool)> = blocks
        .into_iter()
        .map(|b| {
            let want = if b.cycles.len() == 2 {
                Classification::Torus
            } else {
                Classification::MoebiusStrip
            };
            let ok = b.certificate.classifications().iter().all(|&c| c == want);
            (b, ok)
        })
        .collect();
    if checked.iter().all(|(_, ok)| *ok) {
        return assemble(
            spec,
            policy,
            Method::ClosedForm,
            checked.into_iter().map(|(b, _)| b).collect(),
        );
    }
    fallback(spec, policy, describe_failures(&checked))
}

/// Closed-form decomposition of the 2-skeleton of `β^k`, falling back to search.
pub fn cross_partition(k: u32, policy: Policy) -> Result<Partition> {
    let spec = SkeletonSpec::cross(k)?;
    let blocks = build_blocks(spec.modulus(), &cross_grouping(k))?;
    let checked: Vec<(PartitionBlock, bool)> = blocks
        .into_iter()
        .map(|b| {
            let ok = policy.accepts(&b.certificate);
            (b, ok)
        })
        .collect();
    if checked.iter().all(|(_, ok)| *ok) {
        return assemble(
            spec,
            policy,
            Method::ClosedForm,
            checked.into_iter().map(|(b, _)| b).collect(),
        );
    }
    fallback(spec, policy, describe_failures(&checked))
}

/// Per-edge degree a cycle contributes to each edge difference class.
///
/// Complexes here are unions of `Z_n` orbits, so all edges of one class have
/// the same degree; pseudomanifold and closedness checks reduce to these
/// class profiles.
fn class_profile(d: &DifferenceCycle) -> Vec<(u32, u8)> {
    let n = d.modulus().get();
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for g in d.gaps() {
        *counts.entry(difference_class(g, n)).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(class, slots)| {
            let class_size = if 2 * class == n { n / 2 } else { n } as usize;
            (class, (slots * d.orbit_size() / class_size) as u8)
        })
        .collect()
}

struct Searcher {
    n: Modulus,
    policy: Policy,
    cycles: Vec<DifferenceCycle>,
    profiles: Vec<Vec<(u32, u8)>>,
    max_triangles: usize,
    accepted: HashMap<Vec<usize>, bool>,
}

impl Searcher {
    fn accepts(&mut self, block: &[usize]) -> bool {
        if let Some(&ok) = self.accepted.get(block) {
            return ok;
        }
        let cycles: Vec<DifferenceCycle> = block.iter().map(|&i| self.cycles[i]).collect();
        let ok = PartitionBlock::new(self.n, &cycles)
            .map(|b| self.policy.accepts(&b.certificate))
            .unwrap_or(false);
        self.accepted.insert(block.to_vec(), ok);
        ok
    }

    /// Blocks containing `first` drawn from `available`, smallest first, then
    /// lexicographic.
    fn candidates(&mut self, first: usize, available: &[bool]) -> Vec<Vec<usize>> {
        let mut found = Vec::new();
        let mut visited = HashSet::new();
        let mut degrees = BTreeMap::new();
        self.grow(vec![first], &mut degrees, available, &mut visited, &mut found);
        found.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
    }

    fn grow(
        &mut self,
        block: Vec<usize>,
        degrees: &mut BTreeMap<u32, u8>,
        available: &[bool],
        visited: &mut HashSet<Vec<usize>>,
        found: &mut Vec<Vec<usize>>,
    ) {
        let mut key = block.clone();
        key.sort_unstable();
        let size: usize = key.iter().map(|&i| self.cycles[i].orbit_size()).sum();
        if size > self.max_triangles || !visited.insert(key.clone()) {
            return;
        }
        let last = *block.last().expect("nonempty");
        for &(class, deg) in &self.profiles[last] {
            *degrees.entry(class).or_default() += deg;
        }
        let undo = |degrees: &mut BTreeMap<u32, u8>, profile: &[(u32, u8)]| {
            for &(class, deg) in profile {
                *degrees.get_mut(&class).expect("added above") -= deg;
            }
        };
        if degrees.values().any(|&d| d > 2) {
            undo(degrees, &self.profiles[last].clone());
            return;
        }
        if self.accepts(&key) {
            found.push(key.clone());
        }
        let deficient: BTreeSet<u32> = degrees.iter().filter(|(_, &d)| d == 1).map(|(&c, _)| c).collect();
        if !deficient.is_empty() {
            for j in 0..self.cycles.len() {
                if !available[j] || key.binary_search(&j).is_ok() {
                    continue;
                }
                if !self.profiles[j].iter().any(|(c, _)| deficient.contains(c)) {
                    continue;
                }
                let mut next = block.clone();
                next.push(j);
                self.grow(next, degrees, available, visited, found);
            }
        }
        undo(degrees, &self.profiles[last].clone());
    }

    fn solve(&mut self, available: &mut Vec<bool>, chosen: &mut Vec<Vec<usize>>) -> bool {
        let Some(first) = available.iter().position(|&a| a) else {
            return true;
        };
        for cand in self.candidates(first, available) {
            for &i in &cand {
                available[i] = false;
            }
            chosen.push(cand.clone());
            if self.solve(available, chosen) {
                return true;
            }
            chosen.pop();
            for &i in &cand {
                available[i] = true;
            }
        }
        false
    }
}

/// Exact-cover backtracking over groupings of the skeleton's cycles.
///
/// The least uncovered cycle is placed first; its candidate blocks are grown
/// one cycle at a time only while some edge class is covered once, and never
/// past degree two. Candidates are tried smallest first, then
/// lexicographically, so the result is the lexicographically first solution
/// in that order.
pub fn search_partition(spec: &SkeletonSpec, policy: Policy) -> Result<Partition> {
    let cycles = spec.cycles();
    if cycles.len() > SEARCH_LIMIT {
        return Err(Error::SearchGuard {
            cycles: cycles.len(),
            limit: SEARCH_LIMIT,
        });
    }
    let mut searcher = Searcher {
        n: spec.modulus(),
        policy,
        profiles: cycles.iter().map(class_profile).collect(),
        max_triangles: policy.max_block_triangles(spec.modulus()),
        cycles,
        accepted: HashMap::new(),
    };
    let mut available = vec![true; searcher.cycles.len()];
    // A cycle with no admissible block at all makes the instance infeasible.
    for i in 0..available.len() {
        if searcher.candidates(i, &available).is_empty() {
            return Err(Error::NoPartitionFound);
        }
    }
    let mut chosen = Vec::new();
    if !searcher.solve(&mut available, &mut chosen) {
        return Err(Error::NoPartitionFound);
    }
    let groups: Vec<Vec<DifferenceCycle>> = chosen
        .iter()
        .map(|b| b.iter().map(|&i| searcher.cycles[i]).collect())
        .collect();
    let blocks = build_blocks(spec.modulus(), &groups)?;
    assemble(*spec, policy, Method::Search, blocks)
}

/// Rebuilds, certifies and coverage-checks an externally supplied partition.
///
/// Block certification is checked before coverage gaps, so a lone open block
/// is reported with its open edge classes rather than as a gap.
pub fn verify_partition(spec: &SkeletonSpec, policy: Policy, blocks: &[Vec<DifferenceCycle>]) -> Result<Partition> {
    let n = spec.modulus();
    let reject = |r: Rejection| Err(Error::Rejected(r));
    for block in blocks {
        if let Some(d) = block.iter().find(|d| d.modulus() != n) {
            return Err(Error::ModulusMismatch {
                expected: n.get(),
                found: d.modulus().get(),
            });
        }
    }
    for (i, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return reject(Rejection::EmptyBlock { block: i + 1 });
        }
        if let Some(d) = block.iter().find(|d| !spec.contains_cycle(d)) {
            return reject(Rejection::SkeletonViolation {
                block: i + 1,
                cycle: *d,
            });
        }
    }
    let mut owner: BTreeMap<DifferenceCycle, usize> = BTreeMap::new();
    for (i, block) in blocks.iter().enumerate() {
        for d in block {
            if let Some(&prev) = owner.get(d) {
                return reject(Rejection::CoverageOverlap {
                    cycle: *d,
                    blocks: [prev, i + 1],
                });
            }
            owner.insert(*d, i + 1);
        }
    }
    let built = build_blocks(n, blocks)?;
    for (i, b) in built.iter().enumerate() {
        if !policy.accepts(&b.certificate) {
            return reject(certification_failure(i + 1, policy, &b.certificate));
        }
        if !b.symmetry.shift_invariant || !is_subcomplex_of_skeleton(&b.complex, spec)? {
            return reject(Rejection::AsymmetricBlock { block: i + 1 });
        }
    }
    let missing: Vec<DifferenceCycle> = spec.cycles().into_iter().filter(|d| !owner.contains_key(d)).collect();
    if !missing.is_empty() {
        return reject(Rejection::CoverageGap { missing });
    }
    assemble(*spec, policy, Method::Verified, built)
}
