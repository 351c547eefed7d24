//! Enumeration of all elements up to a given length.

use std::collections::HashSet;

use crate::affine::{AffineWeylGroup, Element};

/// Every element with `length <= max_len` whose length-zero part lies in the
/// given window, sorted by length and then by value.
pub fn enumerate_elements(g: &AffineWeylGroup, max_len: usize, omega_window: usize) -> Vec<Element> {
    let mut layer: Vec<Element> = g.omega_elements(omega_window);
    layer.sort();
    layer.dedup();
    let mut out = layer.clone();
    let n = g.simple_affine_reflections().len();
    for len in 1..=max_len {
        let mut next: HashSet<Element> = HashSet::new();
        for x in &layer {
            for s in 0..n {
                let y = g.simple_element(s).mul(x);
                if g.length(&y) == len {
                    next.insert(y);
                }
            }
        }
        let mut v: Vec<Element> = next.into_iter().collect();
        v.sort();
        out.extend(v.iter().cloned());
        layer = v;
    }
    out
}

/// Elements of the affine Weyl group proper (trivial length-zero part) up to `max_len`.
pub fn enumerate_affine(g: &AffineWeylGroup, max_len: usize) -> Vec<Element> {
    let mut layer = vec![g.identity()];
    let mut out = layer.clone();
    let n = g.simple_affine_reflections().len();
    for len in 1..=max_len {
        let mut next: HashSet<Element> = HashSet::new();
        for x in &layer {
            for s in 0..n {
                let y = g.simple_element(s).mul(x);
                if g.length(&y) == len {
                    next.insert(y);
                }
            }
        }
        let mut v: Vec<Element> = next.into_iter().collect();
        v.sort();
        out.extend(v.iter().cloned());
        layer = v;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let sl2 = AffineWeylGroup::from_key("SL2").unwrap();
        assert_eq!(enumerate_elements(&sl2, 0, 0).len(), 1);
        assert_eq!(enumerate_elements(&sl2, 1, 0).len(), 3);
        // infinite dihedral group: two elements of each positive length
        assert_eq!(enumerate_elements(&sl2, 5, 0).len(), 11);
        let pgl2 = AffineWeylGroup::from_key("PGL2").unwrap();
        assert_eq!(enumerate_elements(&pgl2, 3, 0).len(), 14);
        let gl2 = AffineWeylGroup::from_key("GL2").unwrap();
        assert_eq!(enumerate_elements(&gl2, 1, 1).len(), 9);
        // affine A2: 1, 3, 6, 9 elements of length 0..3
        let sl3 = AffineWeylGroup::from_key("SL3").unwrap();
        assert_eq!(enumerate_elements(&sl3, 3, 0).len(), 19);
    }

    #[test]
    fn no_duplicates() {
        let g = AffineWeylGroup::from_key("G2-sc").unwrap();
        let all = enumerate_elements(&g, 6, 0);
        let set: HashSet<&Element> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.windows(2).all(|w| g.length(&w[0]) <= g.length(&w[1])));
    }
}
