//! Difference cycles over `Z_n`.
//!
//! A difference cycle `(a : b : c)` with `a + b + c = n` is the orbit of the
//! triangle `{0, a, a + b}` under the shift `i -> i + 1 (mod n)`. The gap
//! triple is only defined up to cyclic rotation; we store the
//! lexicographically least rotation. Reflection is *not* quotiented out:
//! `(a : b : c)` and its mirror `(a : c : b)` are different orbits unless two
//! gaps coincide.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The order of the cyclic group acting on the vertex labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Modulus(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Modulus::new(n)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A triangle on `Z_n`, vertices sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle([u32; 3]);

impl Triangle {
    /// Builds a triangle from three distinct residues mod `n`.
    pub fn new(vertices: [u32; 3], n: Modulus) -> Result<Self> {
        let mut v = vertices;
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] || v[2] >= n.get() {
            return Err(Error::InvalidSkeleton(format!(
                "{:?} is not a triangle on Z_{}",
                vertices, n
            )));
        }
        Ok(Triangle(v))
    }

    pub(crate) fn from_sorted(v: [u32; 3]) -> Self {
        debug_assert!(v[0] < v[1] && v[1] < v[2]);
        Triangle(v)
    }

    pub fn vertices(&self) -> [u32; 3] {
        self.0
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.contains(&v)
    }

    /// The three edges as sorted pairs.
    pub fn edges(&self) -> [[u32; 2]; 3] {
        let [x, y, z] = self.0;
        [[x, y], [x, z], [y, z]]
    }

    /// Image under `i -> i + by (mod n)`.
    pub fn shifted(&self, by: u32, n: Modulus) -> Triangle {
        let n = n.get();
        let by = by % n;
        let mut v = self.0.map(|x| (x + by) % n);
        v.sort_unstable();
        Triangle(v)
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.0;
        write!(f, "{{{}, {}, {}}}", x, y, z)
    }
}

/// A `Z_n`-orbit of triangles, stored as its canonical gap triple.
///
/// Ordering is by modulus, then lexicographically by the canonical gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DifferenceCycle {
    n: u32,
    gaps: [u32; 3],
}

impl DifferenceCycle {
    /// Canonical difference cycle for the gap triple `(a, b, c)`.
    pub fn normalize(a: u32, b: u32, c: u32, n: Modulus) -> Result<Self> {
        let invalid = Error::InvalidGaps { a, b, c, n: n.get() };
        if a == 0 || b == 0 || c == 0 {
            return Err(invalid);
        }
        match a.checked_add(b).and_then(|s| s.checked_add(c)) {
            Some(s) if s == n.get() => {}
            _ => return Err(invalid),
        }
        let gaps = [[a, b, c], [b, c, a], [c, a, b]]
            .into_iter()
            .min()
            .expect("three rotations");
        Ok(DifferenceCycle { n: n.get(), gaps })
    }

    pub fn modulus(&self) -> Modulus {
        Modulus(self.n)
    }

    pub fn gaps(&self) -> [u32; 3] {
        self.gaps
    }

    /// `true` when `a = b = c`; the orbit then has only `n / 3` triangles.
    pub fn is_short_orbit(&self) -> bool {
        self.gaps[0] == self.gaps[1] && self.gaps[1] == self.gaps[2]
    }

    pub fn orbit_size(&self) -> usize {
        if self.is_short_orbit() {
            self.n as usize / 3
        } else {
            self.n as usize
        }
    }

    /// The reflected cycle `(a : c : b)`.
    pub fn mirror(&self) -> DifferenceCycle {
        let [a, b, c] = self.gaps;
        DifferenceCycle::normalize(a, c, b, self.modulus()).expect("mirror of a valid cycle")
    }

    pub fn is_achiral(&self) -> bool {
        self.mirror() == *self
    }

    /// All triangles `{i, i + a, i + a + b}` for `i` in `Z_n`, sorted.
    pub fn expand(&self) -> Vec<Triangle> {
        let n = self.n;
        let [a, b, _] = self.gaps;
        let mut out: Vec<Triangle> = (0..n)
            .map(|i| {
                let mut v = [i, (i + a) % n, (i + a + b) % n];
                v.sort_unstable();
                Triangle(v)
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The difference cycle containing `t`.
    pub fn classify(t: &Triangle, n: Modulus) -> DifferenceCycle {
        let [x, y, z] = t.0;
        DifferenceCycle::normalize(y - x, z - y, n.get() - z + x, n)
            .expect("sorted distinct residues give positive gaps")
    }

    /// Edge difference classes `min(g, n - g)` of the three gaps, in gap order.
    pub fn edge_classes(&self) -> [u32; 3] {
        self.gaps.map(|g| difference_class(g, self.n))
    }

    /// True when some gap equals `d`.
    pub fn has_gap(&self, d: u32) -> bool {
        self.gaps.contains(&d)
    }
}

/// `min(d, n - d)` for `d` in `1..n`.
pub fn difference_class(d: u32, n: u32) -> u32 {
    let d = d % n;
    d.min(n - d)
}

/// Every canonical difference cycle mod `n`, sorted.
pub fn enumerate_all(n: Modulus) -> Vec<DifferenceCycle> {
    let m = n.get();
    let mut out = Vec::new();
    for a in 1..m {
        for b in 1..(m - a) {
            let c = m - a - b;
            // Canonical iff (a, b, c) is its own least rotation.
            if [a, b, c] <= [b, c, a] && [a, b, c] <= [c, a, b] {
                out.push(DifferenceCycle { n: m, gaps: [a, b, c] });
            }
        }
    }
    out
}

impl fmt::Display for DifferenceCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.gaps;
        write!(f, "({} : {} : {})", a, b, c)
    }
}

/// Parses `(a : b : c)`; whitespace is optional and the modulus is `a + b + c`.
impl FromStr for DifferenceCycle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a difference cycle like `(1 : 2 : 4)`, got `{}`", s));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let parts: Vec<u32> = inner
            .split(':')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let [a, b, c] = <[u32; 3]>::try_from(parts).map_err(|_| bad())?;
        let n = a.checked_add(b).and_then(|s| s.checked_add(c)).ok_or_else(bad)?;
        let n = Modulus::new(n).map_err(|e| Error::Parse(format!("`{}`: {}", s, e)))?;
        DifferenceCycle::normalize(a, b, c, n)
    }
}

impl Serialize for DifferenceCycle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DifferenceCycle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
