//! Explicit check of the cyclic `Z_n` action on a complex.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::TwoComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryAttestation {
    /// `i -> i + 1` maps the triangle set onto itself.
    pub shift_invariant: bool,
    /// The group generated by the shift is transitive on the vertex set.
    pub vertex_transitive: bool,
    pub vertex_set_full: bool,
    pub order: u32,
}

/// Relabels every triangle by `i -> i + 1` and compares sets; the cycle list
/// the complex was built from is not consulted.
pub fn attest(c: &TwoComplex) -> SymmetryAttestation {
    let n = c.modulus();
    let shift_invariant = c.triangles().iter().all(|t| c.triangles().contains(&t.shifted(1, n)));
    let vertex_set_full = c.vertices().len() == n.get() as usize;
    let vertex_transitive = shift_invariant
        && match c.vertices().iter().next() {
            Some(&v0) => {
                let orbit: BTreeSet<u32> = (0..n.get()).map(|s| (v0 + s) % n.get()).collect();
                orbit == *c.vertices()
            }
            None => false,
        };
    SymmetryAttestation {
        shift_invariant,
        vertex_transitive,
        vertex_set_full,
        order: n.get(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{enumerate_all, DifferenceCycle, Modulus, Triangle};

    fn m(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn dc(a: u32, b: u32, c: u32) -> DifferenceCycle {
        DifferenceCycle::normalize(a, b, c, m(a + b + c)).unwrap()
    }

    /// Invariance under every shift, not just the generator.
    fn invariant_under_all_shifts(c: &TwoComplex) -> bool {
        (0..c.modulus().get()).all(|s| c.shifted(s).triangles() == c.triangles())
    }

    #[test]
    fn examples() {
        let oct = TwoComplex::build(m(6), &[dc(1, 1, 4), dc(2, 2, 2)]).unwrap();
        let a = attest(&oct);
        assert!(a.shift_invariant && a.vertex_set_full && a.vertex_transitive);
        assert_eq!(a.order, 6);

        let strip = TwoComplex::build(m(7), &[dc(1, 1, 5)]).unwrap();
        let a = attest(&strip);
        assert!(a.shift_invariant && a.vertex_set_full && a.vertex_transitive);
        assert_eq!(a.order, 7);

        let single = TwoComplex::from_triangles(m(6), [Triangle::new([0, 1, 2], m(6)).unwrap()].into());
        let a = attest(&single);
        assert!(!a.shift_invariant);
        assert!(!a.vertex_transitive);
        assert!(!a.vertex_set_full);
    }

    #[test]
    fn agrees_with_all_shifts_oracle() {
        for n in 3..=20u32 {
            let cycles = enumerate_all(m(n));
            for d in &cycles {
                let c = TwoComplex::build(m(n), &[*d]).unwrap();
                let a = attest(&c);
                assert_eq!(a.shift_invariant, invariant_under_all_shifts(&c));
                assert!(a.shift_invariant && a.vertex_transitive);
                // drop one triangle: no longer invariant
                let mut ts = c.triangles().clone();
                let first = *ts.iter().next().unwrap();
                ts.remove(&first);
                if !ts.is_empty() {
                    let broken = TwoComplex::from_triangles(m(n), ts);
                    assert_eq!(attest(&broken).shift_invariant, invariant_under_all_shifts(&broken));
                    assert!(!attest(&broken).shift_invariant);
                }
            }
        }
    }
}
