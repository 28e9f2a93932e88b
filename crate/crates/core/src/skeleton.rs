//! Triangle sets of the cross polytope and the simplex.
//!
//! Vertex labeling of the cross polytope `β^k`: vertices are `Z_{2k}` and the
//! antipodal (non-adjacent) pairs are `{i, i + k}`. The shift `i -> i + 1`
//! sends `{i, i + k}` to `{i + 1, i + 1 + k}`, so it is an automorphism. The
//! `(k - 1)`-simplex uses `Z_k` and every 3-subset is a face.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclic::{enumerate_all, DifferenceCycle, Modulus, Triangle};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SkeletonKind {
    #[serde(rename = "cross")]
    CrossPolytope,
    Simplex,
}

impl fmt::Display for SkeletonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkeletonKind::CrossPolytope => "cross",
            SkeletonKind::Simplex => "simplex",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkeletonSpec {
    kind: SkeletonKind,
    k: u32,
}

impl SkeletonSpec {
    pub fn new(kind: SkeletonKind, k: u32) -> Result<Self> {
        let min = match kind {
            SkeletonKind::CrossPolytope => 3,
            SkeletonKind::Simplex => 4,
        };
        if k < min {
            return Err(Error::InvalidSkeleton(format!(
                "{} skeleton needs k >= {}, got {}",
                kind, min, k
            )));
        }
        if k > 1 << 20 {
            return Err(Error::InvalidSkeleton(format!("k = {} is too large", k)));
        }
        Ok(SkeletonSpec { kind, k })
    }

    pub fn cross(k: u32) -> Result<Self> {
        Self::new(SkeletonKind::CrossPolytope, k)
    }

    pub fn simplex(k: u32) -> Result<Self> {
        Self::new(SkeletonKind::Simplex, k)
    }

    pub fn kind(&self) -> SkeletonKind {
        self.kind
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> Modulus {
        let n = match self.kind {
            SkeletonKind::CrossPolytope => 2 * self.k,
            SkeletonKind::Simplex => self.k,
        };
        Modulus::new(n).expect("validated in constructor")
    }

    /// `k = 1, 5 (mod 6)`, which the simplex decomposition requires.
    pub fn simplex_eligible(&self) -> bool {
        self.kind == SkeletonKind::Simplex && self.k >= 5 && matches!(self.k % 6, 1 | 5)
    }

    /// The canonical difference cycles whose triangles lie in the skeleton.
    pub fn cycles(&self) -> Vec<DifferenceCycle> {
        match self.kind {
            SkeletonKind::CrossPolytope => cross_cycles(self.k),
            SkeletonKind::Simplex => simplex_cycles(self.k),
        }
    }

    pub fn contains_triangle(&self, t: &Triangle) -> bool {
        let n = self.modulus().get();
        if t.vertices().iter().any(|&v| v >= n) {
            return false;
        }
        match self.kind {
            SkeletonKind::Simplex => true,
            SkeletonKind::CrossPolytope => {
                let [x, y, z] = t.vertices();
                [y - x, z - x, z - y].iter().all(|&d| d != self.k)
            }
        }
    }

    pub fn contains_cycle(&self, dc: &DifferenceCycle) -> bool {
        dc.modulus() == self.modulus()
            && match self.kind {
                SkeletonKind::Simplex => true,
                SkeletonKind::CrossPolytope => !dc.has_gap(self.k),
            }
    }

    /// Every triangle of the skeleton, listed directly from 3-subsets.
    pub fn triangles(&self) -> Vec<Triangle> {
        let n = self.modulus().get();
        let mut out = Vec::with_capacity(triangle_count(self) as usize);
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    let t = Triangle::from_sorted([x, y, z]);
                    if self.contains_triangle(&t) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    /// One-line statement of the vertex labeling used in reports.
    pub fn labeling(&self) -> String {
        match self.kind {
            SkeletonKind::CrossPolytope => vertex_labeling_convention(self.k),
            SkeletonKind::Simplex => format!(
                "vertices 0..{} of the {}-simplex; shift i -> i+1 (mod {})",
                self.k - 1,
                self.k - 1,
                self.k
            ),
        }
    }
}

impl fmt::Display for SkeletonSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SkeletonKind::CrossPolytope => write!(f, "cross polytope beta^{}", self.k),
            SkeletonKind::Simplex => write!(f, "simplex Delta^{}", self.k - 1),
        }
    }
}

/// The antipodal pairs `{i, i + k}` of `β^k`, `i = 0..k`.
pub fn antipodal_pairs(k: u32) -> Vec<[u32; 2]> {
    (0..k).map(|i| [i, i + k]).collect()
}

pub fn vertex_labeling_convention(k: u32) -> String {
    format!(
        "vertices 0..{} of beta^{}; antipodal pairs {{i, i+{}}}; shift i -> i+1 (mod {})",
        2 * k - 1,
        k,
        k,
        2 * k
    )
}

/// Difference cycles mod `2k` with no gap equal to `k`.
///
/// A gap of `k` is exactly an antipodal pair, so these are the orbits of
/// triangles of `β^k`.
pub fn cross_cycles(k: u32) -> Vec<DifferenceCycle> {
    let n = Modulus::new(2 * k).expect("k >= 2");
    enumerate_all(n).into_iter().filter(|d| !d.has_gap(k)).collect()
}

pub fn simplex_cycles(k: u32) -> Vec<DifferenceCycle> {
    enumerate_all(Modulus::new(k).expect("k >= 3"))
}

/// `C(2k, 3) - k(2k - 2)` for `β^k`, `C(k, 3)` for the simplex.
pub fn triangle_count(spec: &SkeletonSpec) -> u64 {
    let k = spec.k() as u64;
    let choose3 = |n: u64| n * (n - 1) * (n - 2) / 6;
    match spec.kind() {
        SkeletonKind::CrossPolytope => choose3(2 * k) - k * (2 * k - 2),
        SkeletonKind::Simplex => choose3(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaps(v: &[DifferenceCycle]) -> Vec<[u32; 3]> {
        v.iter().map(|d| d.gaps()).collect()
    }

    #[test]
    fn labeling_pairs() {
        assert_eq!(antipodal_pairs(3), vec![[0, 3], [1, 4], [2, 5]]);
        assert_eq!(antipodal_pairs(4), vec![[0, 4], [1, 5], [2, 6], [3, 7]]);
        for k in 3..=25 {
            let n = 2 * k;
            let pairs = antipodal_pairs(k);
            for [x, y] in pairs {
                let shifted = [(x + 1) % n, (y + 1) % n];
                assert_eq!((shifted[1] + n - shifted[0]) % n, k);
            }
        }
        assert!(vertex_labeling_convention(3).contains("{i, i+3}"));
    }

    #[test]
    fn cross_cycle_examples() {
        assert_eq!(gaps(&cross_cycles(3)), vec![[1, 1, 4], [2, 2, 2]]);
        assert_eq!(gaps(&cross_cycles(4)), vec![[1, 1, 6], [1, 2, 5], [1, 5, 2], [2, 3, 3]]);
        let total: usize = cross_cycles(3).iter().map(|d| d.orbit_size()).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn simplex_cycle_examples() {
        assert_eq!(simplex_cycles(7).len(), 5);
        assert_eq!(gaps(&simplex_cycles(5)), vec![[1, 1, 3], [1, 2, 2]]);
        let total: usize = simplex_cycles(7).iter().map(|d| d.orbit_size()).sum();
        assert_eq!(total, 35);
    }

    #[test]
    fn triangle_count_examples() {
        assert_eq!(triangle_count(&SkeletonSpec::cross(3).unwrap()), 8);
        assert_eq!(triangle_count(&SkeletonSpec::cross(4).unwrap()), 32);
        assert_eq!(triangle_count(&SkeletonSpec::simplex(7).unwrap()), 35);
    }

    #[test]
    fn spec_validation() {
        assert!(SkeletonSpec::cross(2).is_err());
        assert!(SkeletonSpec::simplex(3).is_err());
        assert!(SkeletonSpec::simplex(4).is_ok());
        assert!(!SkeletonSpec::simplex(6).unwrap().simplex_eligible());
        assert!(SkeletonSpec::simplex(5).unwrap().simplex_eligible());
        assert!(SkeletonSpec::simplex(7).unwrap().simplex_eligible());
        assert!(!SkeletonSpec::simplex(9).unwrap().simplex_eligible());
        assert!(SkeletonSpec::simplex(11).unwrap().simplex_eligible());
        assert_eq!(SkeletonSpec::cross(5).unwrap().modulus().get(), 10);
    }

    #[test]
    fn counts_agree_with_brute_force() {
        for k in 3..=25u32 {
            let spec = SkeletonSpec::cross(k).unwrap();
            let n = 2 * k;
            let mut brute = 0u64;
            for x in 0..n {
                for y in x + 1..n {
                    for z in y + 1..n {
                        let anti = |p: u32, q: u32| (q - p) == k;
                        if !anti(x, y) && !anti(x, z) && !anti(y, z) {
                            brute += 1;
                        }
                    }
                }
            }
            assert_eq!(triangle_count(&spec), brute, "k = {}", k);
            assert_eq!(spec.triangles().len() as u64, brute);
            let orbit_sum: usize = cross_cycles(k).iter().map(|d| d.orbit_size()).sum();
            assert_eq!(orbit_sum as u64, brute);
        }
    }

    #[test]
    fn cross_cycles_avoid_antipodes() {
        for k in 3..=25u32 {
            let spec = SkeletonSpec::cross(k).unwrap();
            let cycles = cross_cycles(k);
            for d in &cycles {
                assert!(!d.has_gap(k));
                for t in d.expand() {
                    assert!(spec.contains_triangle(&t));
                }
            }
            for t in spec.triangles() {
                let d = DifferenceCycle::classify(&t, spec.modulus());
                assert_eq!(cycles.iter().filter(|c| **c == d).count(), 1);
            }
        }
    }
}
