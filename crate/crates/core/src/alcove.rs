//! Levi data `M_v`, the `>=_alpha` comparison of alcoves, P-alcoves and
//! relative length.

use std::collections::{BTreeMap, HashSet};

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::affine::{simple_affine_reflections_of, AffineWeylGroup, Element, SimpleReflection};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::newton::rational_matrix;
use crate::root_datum::BasedRootDatum;
use crate::{fraction_string, IntMatrix, RatVector, Rational};

/// A rational cocharacter with its zero set `Phi_v` and positive set `Phi_{v,+}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VDatum {
    pub v: RatVector,
    pub zero: Vec<usize>,
    pub plus: Vec<usize>,
}

impl VDatum {
    pub fn new(datum: &BasedRootDatum, v: RatVector) -> Self {
        let (zero, plus) = split_roots(datum, &v);
        Self { v, zero, plus }
    }

    pub fn pair(&self) -> (&[usize], &[usize]) {
        (&self.zero, &self.plus)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "v": self.v.iter().map(fraction_string).collect::<Vec<_>>(),
            "zero": self.zero,
            "plus": self.plus,
        })
    }
}

/// One parabolic pair `(Phi_v, Phi_{v,+})` together with a point realising it.
#[derive(Clone, Debug)]
pub struct ParabolicPair {
    pub zero: Vec<usize>,
    pub plus: Vec<usize>,
    pub point: RatVector,
}

pub fn split_roots(datum: &BasedRootDatum, v: &[Rational]) -> (Vec<usize>, Vec<usize>) {
    let mut zero = Vec::new();
    let mut plus = Vec::new();
    for i in 0..datum.num_roots() {
        let p = datum.pair(i, v);
        if p.is_zero() {
            zero.push(i);
        } else if p.is_positive() {
            plus.push(i);
        }
    }
    (zero, plus)
}

pub fn zero_roots(datum: &BasedRootDatum, v: &[Rational]) -> Vec<usize> {
    split_roots(datum, v).0
}

/// `Phi ∩ span(set) == set`.
pub fn is_levi_subset(datum: &BasedRootDatum, set: &[usize]) -> bool {
    if set.iter().any(|&i| i >= datum.num_roots()) {
        return false;
    }
    let members: HashSet<usize> = set.iter().copied().collect();
    let rows: Vec<RatVector> = set.iter().map(|&i| linalg::to_rational(datum.root(i))).collect();
    let base = if rows.is_empty() {
        0
    } else {
        linalg::rank(&Matrix::from_rows(&rows))
    };
    (0..datum.num_roots()).all(|i| {
        let mut ext = rows.clone();
        ext.push(linalg::to_rational(datum.root(i)));
        let in_span = linalg::rank(&Matrix::from_rows(&ext)) == base;
        in_span == members.contains(&i)
    })
}

/// Every parabolic pair arising from a point of `V`, with the point `u(v_J)`.
pub fn parabolic_pairs(g: &AffineWeylGroup) -> &[ParabolicPair] {
    g.parabolic_pairs.get_or_init(|| {
        let d = g.datum();
        let k = d.simple_indices().len();
        let mut seen: BTreeMap<(Vec<usize>, Vec<usize>), RatVector> = BTreeMap::new();
        for mask in 0u32..(1 << k) {
            let values: Vec<Rational> = (0..k)
                .map(|i| Rational::from_integer(i64::from((mask >> i) & 1 == 0)))
                .collect();
            let vj = d.simple_dual_vector(&values);
            for u in g.finite_weyl_group() {
                let p = u.apply_rational(&vj);
                seen.entry(split_roots(d, &p)).or_insert(p);
            }
        }
        seen.into_iter()
            .map(|((zero, plus), point)| ParabolicPair { zero, plus, point })
            .collect()
    })
}

/// Points realising each facet whose zero set is exactly `set`.
pub fn facet_points(g: &AffineWeylGroup, set: &[usize]) -> Vec<RatVector> {
    parabolic_pairs(g)
        .iter()
        .filter(|p| p.zero == set)
        .map(|p| p.point.clone())
        .collect()
}

pub fn linear_orbit_average(l: &IntMatrix, v: &[Rational]) -> RatVector {
    let lr = rational_matrix(l);
    let mut acc = vec![Rational::zero(); v.len()];
    let mut cur = v.to_vec();
    let mut n = 0i64;
    loop {
        acc = linalg::add(&acc, &cur);
        n += 1;
        cur = lr.apply(&cur);
        if cur == v {
            break;
        }
    }
    linalg::scale(&Rational::new(1, n), &acc)
}

fn inverse_of(l: &IntMatrix) -> IntMatrix {
    linalg::integer_inverse(l).expect("unimodular")
}

/// `xDelta >=_alpha yDelta`.
pub fn alcove_ge(g: &AffineWeylGroup, x: &Element, y: &Element, root: usize) -> bool {
    g.m_alpha(x, root) >= g.m_alpha(y, root)
}

/// Whether the pair of `vd` is stable under the linear part of `x sigma`.
pub fn pair_is_stable(g: &AffineWeylGroup, x: &Element, vd: &VDatum) -> bool {
    let l = g.twisted_linear_part(x);
    let lr = rational_matrix(&l);
    if lr.apply(&vd.v) == vd.v {
        return true;
    }
    let inv = inverse_of(&l);
    let d = g.datum();
    d.preserves(&inv, &vd.zero) && d.preserves(&inv, &vd.plus)
}

/// `x sigma` fixes (a point realising the pair of) `v`, and `x Delta >=_alpha Delta`
/// for every `alpha` in `Phi_{v,+}`.
pub fn is_p_alcove(g: &AffineWeylGroup, x: &Element, vd: &VDatum) -> bool {
    if !pair_is_stable(g, x, vd) {
        return false;
    }
    let m = g.m_all(x);
    let d = g.datum();
    // m_alpha(Delta) is -1 on positive roots and 0 on negative ones
    vd.plus
        .iter()
        .all(|&i| m[i] >= if d.is_positive(i) { -1 } else { 0 })
}

/// Separation count inside the `Phi_v` arrangement.
pub fn relative_length(g: &AffineWeylGroup, x: &Element, vd: &VDatum) -> Result<usize> {
    relative_length_on(g, x, &vd.zero)
}

/// Relative length with respect to a closed symmetric root subset preserved by `x sigma`.
pub fn relative_length_on(g: &AffineWeylGroup, x: &Element, zero: &[usize]) -> Result<usize> {
    let l = g.twisted_linear_part(x);
    if !g.datum().preserves(&inverse_of(&l), zero) {
        return Err(Error::Precondition(
            "linear part of x sigma does not preserve Phi_v".into(),
        ));
    }
    let m = g.m_all(x);
    let d = g.datum();
    Ok(zero
        .iter()
        .filter(|&&i| d.is_positive(i))
        .map(|&i| (m[i] + 1).unsigned_abs() as usize)
        .sum())
}

pub fn is_p_fundamental(g: &AffineWeylGroup, x: &Element, vd: &VDatum) -> bool {
    is_p_alcove(g, x, vd) && relative_length(g, x, vd) == Ok(0)
}

/// One representative per stable parabolic pair, fixed by the linear part of `x sigma`.
pub fn stable_v_data(g: &AffineWeylGroup, x: &Element) -> Vec<VDatum> {
    let l = g.twisted_linear_part(x);
    let inv = inverse_of(&l);
    let d = g.datum();
    parabolic_pairs(g)
        .iter()
        .filter(|p| d.preserves(&inv, &p.zero) && d.preserves(&inv, &p.plus))
        .map(|p| VDatum {
            v: linear_orbit_average(&l, &p.point),
            zero: p.zero.clone(),
            plus: p.plus.clone(),
        })
        .collect()
}

pub fn find_p_alcove_witness(
    g: &AffineWeylGroup,
    x: &Element,
    levi: Option<&[usize]>,
) -> Option<VDatum> {
    stable_v_data(g, x).into_iter().find(|vd| {
        levi.map_or(true, |l| vd.zero.iter().all(|i| l.contains(i))) && is_p_alcove(g, x, vd)
    })
}

/// The Levi subsystem `Phi_v` with its positive roots and relative simple affine reflections.
#[derive(Clone, Debug)]
pub struct LeviDatum {
    pub roots: Vec<usize>,
    pub positive: Vec<usize>,
    pub simple_affine: Vec<SimpleReflection>,
}

impl LeviDatum {
    pub fn new(g: &AffineWeylGroup, roots: &[usize]) -> Self {
        let d = g.datum();
        let mut roots = roots.to_vec();
        roots.sort_unstable();
        let positive = roots.iter().copied().filter(|&i| d.is_positive(i)).collect();
        let simple_affine = simple_affine_reflections_of(d, &roots);
        Self {
            roots,
            positive,
            simple_affine,
        }
    }

    pub fn of_vector(g: &AffineWeylGroup, v: &[Rational]) -> Self {
        Self::new(g, &zero_roots(g.datum(), v))
    }

    /// Positions of the finite relative simple reflections `S_v`.
    pub fn finite_positions(&self) -> Vec<usize> {
        (0..self.simple_affine.len())
            .filter(|&i| self.simple_affine[i].is_finite())
            .collect()
    }

    pub fn length(&self, g: &AffineWeylGroup, x: &Element) -> usize {
        let m = g.m_all(x);
        self.positive.iter().map(|&i| (m[i] + 1).unsigned_abs() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn gl2() -> AffineWeylGroup {
        AffineWeylGroup::from_key("GL2").unwrap()
    }

    #[test]
    fn ge_examples() {
        let g = gl2();
        let a = g.datum().simple_indices()[0];
        let id = g.identity();
        assert!(alcove_ge(&g, &id, &id, a));
        assert!(alcove_ge(&g, &Element::translation(vec![1, 0]), &id, a));
        assert!(!alcove_ge(&g, &Element::translation(vec![0, 1]), &id, a));
    }

    #[test]
    fn p_alcove_examples() {
        let g = gl2();
        let d = g.datum();
        let v = VDatum::new(d, vec![q(1), q(0)]);
        assert!(is_p_alcove(&g, &Element::translation(vec![1, 0]), &v));
        assert!(!is_p_alcove(&g, &Element::translation(vec![0, 1]), &v));
        let zero = VDatum::new(d, vec![q(0), q(0)]);
        assert!(is_p_alcove(&g, g.simple_element(0), &zero));
        assert!(is_p_fundamental(&g, &Element::translation(vec![1, 0]), &v));
    }

    #[test]
    fn relative_length_examples() {
        let g = gl2();
        let d = g.datum();
        let s = g.simple_element(0).clone();
        let zero = VDatum::new(d, vec![q(0), q(0)]);
        assert_eq!(relative_length(&g, &s, &zero), Ok(1));
        let tau = Element::translation(vec![0, 1]).mul(&s);
        let half = VDatum::new(d, vec![Rational::new(1, 2), Rational::new(1, 2)]);
        assert_eq!(relative_length(&g, &tau, &half), Ok(0));
        let reg = VDatum::new(d, vec![q(1), q(0)]);
        assert_eq!(relative_length(&g, &Element::translation(vec![2, 0]), &reg), Ok(0));
        assert!(relative_length(&g, &s, &reg).is_ok());
        let g3 = AffineWeylGroup::from_key("GL3").unwrap();
        let v = VDatum::new(g3.datum(), vec![q(1), q(0), q(0)]);
        assert!(relative_length(&g3, g3.simple_element(0), &v).is_err());
    }

    #[test]
    fn stable_pairs_gl2() {
        let g = gl2();
        assert_eq!(stable_v_data(&g, &g.identity()).len(), 3);
        let s = g.simple_element(0).clone();
        let st = stable_v_data(&g, &s);
        assert_eq!(st.len(), 1);
        assert_eq!(st[0].zero.len(), 2);
        assert!(find_p_alcove_witness(&g, &s, Some(&[])).is_none());
        let w = find_p_alcove_witness(&g, &Element::translation(vec![1, 0]), Some(&[])).unwrap();
        assert!(w.zero.is_empty());
    }

    #[test]
    fn parabolic_pair_counts() {
        // sum over J of |W / W_J|
        for (key, n) in [("GL2", 3), ("SL3", 13), ("Sp4-sc", 17), ("G2-sc", 25)] {
            let g = AffineWeylGroup::from_key(key).unwrap();
            assert_eq!(parabolic_pairs(&g).len(), n, "{key}");
        }
    }

    #[test]
    fn levi_subsets() {
        let g = AffineWeylGroup::from_key("SL3").unwrap();
        let d = g.datum();
        let a = d.simple_indices()[0];
        assert!(is_levi_subset(d, &[a, d.negative_of(a)]));
        assert!(!is_levi_subset(d, &[a]));
        let all: Vec<usize> = (0..d.num_roots()).collect();
        assert!(is_levi_subset(d, &all));
        assert!(is_levi_subset(d, &[]));
    }
}
