//! Deligne-Lusztig reduction: non-length-increasing twisted conjugation by
//! simple reflections, minimal length elements and straight decompositions.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::affine::{parabolic_elements, parabolic_is_finite, AffineWeylGroup, Element};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::newton::{dominant_newton_point, is_straight, newton_point, newton_vector};
use crate::smith::QuotientClass;
use crate::{RatVector, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Preserving,
    Dropping,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    /// Position in `S^a`.
    pub s: usize,
    pub from: Element,
    pub to: Element,
    pub kind: StepKind,
}

/// Which simple reflections drive the reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generators {
    Affine,
    Finite,
}

fn generator_positions(g: &AffineWeylGroup, gens: Generators) -> Vec<usize> {
    match gens {
        Generators::Affine => (0..g.simple_affine_reflections().len()).collect(),
        Generators::Finite => g.finite_simple_positions(),
    }
}

/// Everything reachable from `x` by `->_sigma` steps, with parent pointers.
#[derive(Clone, Debug)]
pub struct Reachable {
    pub start: Element,
    pub parent: HashMap<Element, Option<(Element, usize)>>,
    pub lengths: HashMap<Element, usize>,
}

impl Reachable {
    fn explore(g: &AffineWeylGroup, x: &Element, gens: Generators, preserving_only: bool) -> Self {
        let positions = generator_positions(g, gens);
        let mut parent = HashMap::from([(x.clone(), None)]);
        let mut lengths = HashMap::from([(x.clone(), g.length(x))]);
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(cur) = queue.pop_front() {
            let lc = lengths[&cur];
            for &s in &positions {
                let next = g.sigma_conjugate_simple(&cur, s);
                if parent.contains_key(&next) {
                    continue;
                }
                let ln = g.length(&next);
                if ln > lc || (preserving_only && ln < lc) {
                    continue;
                }
                parent.insert(next.clone(), Some((cur.clone(), s)));
                lengths.insert(next.clone(), ln);
                queue.push_back(next);
            }
        }
        Self {
            start: x.clone(),
            parent,
            lengths,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.parent.keys()
    }

    pub fn contains(&self, y: &Element) -> bool {
        self.parent.contains_key(y)
    }

    pub fn min_length(&self) -> usize {
        self.lengths.values().copied().min().unwrap_or(0)
    }

    /// Steps from the start to `y`.
    pub fn path_to(&self, g: &AffineWeylGroup, y: &Element) -> Vec<ReductionStep> {
        let mut steps = Vec::new();
        let mut cur = y.clone();
        while let Some(Some((prev, s))) = self.parent.get(&cur) {
            let kind = if g.length(prev) == g.length(&cur) {
                StepKind::Preserving
            } else {
                StepKind::Dropping
            };
            steps.push(ReductionStep {
                s: *s,
                from: prev.clone(),
                to: cur.clone(),
                kind,
            });
            cur = prev.clone();
        }
        steps.reverse();
        steps
    }
}

pub fn reachable(g: &AffineWeylGroup, x: &Element, gens: Generators) -> Reachable {
    Reachable::explore(g, x, gens, false)
}

/// The `~_sigma` class of `x` under length-preserving steps.
pub fn preserving_class(g: &AffineWeylGroup, x: &Element, gens: Generators) -> Reachable {
    Reachable::explore(g, x, gens, true)
}

/// Minimal-length elements reached from `x`, sorted, each with its path.
pub fn reduce_to_minimal(
    g: &AffineWeylGroup,
    x: &Element,
    gens: Generators,
) -> Vec<(Element, Vec<ReductionStep>)> {
    let r = reachable(g, x, gens);
    let m = r.min_length();
    let mut mins: Vec<Element> = r
        .lengths
        .iter()
        .filter(|(_, &l)| l == m)
        .map(|(e, _)| e.clone())
        .collect();
    mins.sort();
    mins.into_iter()
        .map(|e| {
            let p = r.path_to(g, &e);
            (e, p)
        })
        .collect()
}

pub fn approx_equiv(g: &AffineWeylGroup, x: &Element, y: &Element) -> bool {
    g.length(x) == g.length(y) && preserving_class(g, x, Generators::Affine).contains(y)
}

#[derive(Clone, Debug)]
pub struct ReductionCertificate {
    pub path: Vec<ReductionStep>,
    pub w_prime: Element,
    pub x: Element,
    /// Positions in `S^a`.
    pub j: Vec<usize>,
    pub u: Element,
    /// `None` when `V_{w'}` misses the closed base alcove, otherwise whether
    /// the intersection contains a regular point.
    pub regular_point: Option<bool>,
}

impl ReductionCertificate {
    pub fn to_json(&self, g: &AffineWeylGroup) -> Value {
        let e = |x: &Element| crate::expr::to_json(g, x);
        json!({
            "path": self.path.iter().map(|s| json!({
                "s": g.literal_index(s.s),
                "from": e(&s.from),
                "to": e(&s.to),
                "kind": match s.kind { StepKind::Preserving => "length-preserving", StepKind::Dropping => "length-dropping" },
            })).collect::<Vec<_>>(),
            "w_prime": e(&self.w_prime),
            "x": e(&self.x),
            "J": self.j.iter().map(|&i| g.literal_index(i)).collect::<Vec<_>>(),
            "u": e(&self.u),
            "regular_point": self.regular_point,
        })
    }
}

/// Subsets of `0..n` by increasing size, lexicographic within a size.
pub fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..(1 << n))
        .map(|m| (0..n).filter(|&i| (m >> i) & 1 == 1).collect())
        .collect();
    all.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

fn conjugates_set(g: &AffineWeylGroup, x: &Element, from: &[usize], to: &[usize]) -> bool {
    // x s x^{-1} for s in `from` is exactly the set `to`
    let xi = x.inverse();
    let img: BTreeSet<Element> = from
        .iter()
        .map(|&s| x.mul(g.simple_element(s)).mul(&xi))
        .collect();
    let target: BTreeSet<Element> = to.iter().map(|&s| g.simple_element(s).clone()).collect();
    img == target
}

/// Minimal length representative of `w W_K`.
pub fn min_right_coset_rep(g: &AffineWeylGroup, w: &Element, k: &[usize]) -> Element {
    let mut cur = w.clone();
    let mut len = g.length(&cur);
    'outer: loop {
        for &s in k {
            let n = cur.mul(g.simple_element(s));
            let l = g.length(&n);
            if l < len {
                cur = n;
                len = l;
                continue 'outer;
            }
        }
        return cur;
    }
}

pub fn straight_decomposition(g: &AffineWeylGroup, x: &Element) -> Result<ReductionCertificate> {
    let n = g.simple_affine_reflections().len();
    let subsets = subsets_by_size(n);
    let mut mins = reduce_to_minimal(g, x, Generators::Affine);
    // the input itself first when it is already minimal
    if let Some(k) = mins.iter().position(|(e, _)| e == x) {
        mins[..=k].rotate_right(1);
    }
    for (wp, path) in mins {
        for j in &subsets {
            if !parabolic_is_finite(g.simple_affine_reflections(), j) {
                continue;
            }
            let sj: Vec<usize> = j.iter().map(|&s| g.sigma_simple(s)).collect();
            let xc = min_right_coset_rep(g, &wp, &sj);
            let left_min = j
                .iter()
                .all(|&s| g.length(&g.simple_element(s).mul(&xc)) > g.length(&xc));
            if !left_min || !conjugates_set(g, &xc, &sj, j) || !is_straight(g, &xc) {
                continue;
            }
            let u = xc.inverse().mul(&wp);
            return Ok(ReductionCertificate {
                path,
                regular_point: regular_point_in_closure(g, &wp),
                w_prime: wp,
                x: xc,
                j: j.clone(),
                u,
            });
        }
    }
    Err(Error::CertificateExhausted(crate::expr::format_element(g, x)))
}

/// Check every invariant of a certificate; returns the failed ones.
pub fn certificate_violations(
    g: &AffineWeylGroup,
    start: &Element,
    c: &ReductionCertificate,
) -> Vec<&'static str> {
    let mut bad = Vec::new();
    let mut cur = start.clone();
    for st in &c.path {
        if st.from != cur || g.sigma_conjugate_simple(&st.from, st.s) != st.to {
            bad.push("path");
        }
        if g.length(&st.to) > g.length(&st.from) {
            bad.push("path-length");
        }
        cur = st.to.clone();
    }
    if cur != c.w_prime {
        bad.push("path-end");
    }
    if c.x.mul(&c.u) != c.w_prime {
        bad.push("w'=xu");
    }
    if !is_straight(g, &c.x) {
        bad.push("x straight");
    }
    if !parabolic_is_finite(g.simple_affine_reflections(), &c.j) {
        bad.push("W_J finite");
    }
    let sj: Vec<usize> = c.j.iter().map(|&s| g.sigma_simple(s)).collect();
    if !conjugates_set(g, &c.x, &sj, &c.j) {
        bad.push("x sigma(J) x^-1 = J");
    }
    let gens: Vec<Element> = sj.iter().map(|&s| g.simple_element(s).clone()).collect();
    let in_wj = parabolic_elements(&gens, g.rank(), 100_000).is_some_and(|els| els.contains(&c.u));
    if !in_wj {
        bad.push("u in W_sigma(J)");
    }
    if !g.bruhat_leq(&c.x, &c.w_prime) {
        bad.push("w' >= x");
    }
    if newton_vector(g, &c.w_prime) != newton_vector(g, &c.x) {
        bad.push("nu_w' = nu_x");
    }
    bad
}

/// Vertices of `{ c : lo <= A c + b <= hi }` modulo the kernel of `A`.
fn polytope_vertices(a: &Matrix<Rational>, b: &[Rational], lo: &[Rational], hi: &[Rational]) -> Vec<RatVector> {
    let m = a.rows();
    let k = a.cols();
    let feasible = |c: &[Rational]| -> bool {
        let val = linalg::add(&a.apply(c), b);
        val.iter().zip(lo).zip(hi).all(|((v, l), h)| v >= l && v <= h)
    };
    if k == 0 || m == 0 {
        let z = vec![Rational::zero(); k];
        return if feasible(&z) { vec![z] } else { Vec::new() };
    }
    let r = linalg::rank(a);
    if r == 0 {
        let z = vec![Rational::zero(); k];
        return if feasible(&z) { vec![z] } else { Vec::new() };
    }
    let mut out: Vec<RatVector> = Vec::new();
    let rows = a.to_rows();
    // choose r constraint rows, each tight at its lower or upper bound
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let sub: Vec<RatVector> = idx.iter().map(|&i| rows[i].clone()).collect();
        let sm = Matrix::from_rows(&sub);
        if linalg::rank(&sm) == r {
            for mask in 0u32..(1 << r) {
                let rhs: Vec<Rational> = idx
                    .iter()
                    .enumerate()
                    .map(|(t, &i)| if (mask >> t) & 1 == 1 { hi[i] - b[i] } else { lo[i] - b[i] })
                    .collect();
                if let Some(sol) = linalg::solve(&sm, &rhs) {
                    if feasible(&sol.particular) && !out.contains(&sol.particular) {
                        out.push(sol.particular);
                    }
                }
            }
        }
        // next combination
        let mut t = r;
        loop {
            if t == 0 {
                return out;
            }
            t -= 1;
            if idx[t] < m - r + t {
                idx[t] += 1;
                for u in t + 1..r {
                    idx[u] = idx[u - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Whether `V_w` meets the closed base alcove, and if so whether the
/// intersection avoids every root hyperplane not containing `V_w`.
pub fn regular_point_in_closure(g: &AffineWeylGroup, w: &Element) -> Option<bool> {
    let nd = newton_point(g, w);
    let d = g.datum();
    let pos: Vec<usize> = d.positive_indices().collect();
    let k = nd.directions.len();
    let a = Matrix::from_rows(
        &pos.iter()
            .map(|&i| (0..k).map(|t| d.pair(i, &nd.directions[t])).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    let b: Vec<Rational> = pos.iter().map(|&i| d.pair(i, &nd.base)).collect();
    let lo = vec![Rational::from_integer(-1); pos.len()];
    let hi = vec![Rational::zero(); pos.len()];
    let a = if k == 0 { Matrix::zeros(pos.len(), 0) } else { a };
    let verts = polytope_vertices(&a, &b, &lo, &hi);
    if verts.is_empty() {
        return None;
    }
    let values: Vec<Vec<Rational>> = verts
        .iter()
        .map(|c| linalg::add(&a.apply(c), &b))
        .collect();
    let regular = (0..pos.len()).all(|r| {
        let constant = (0..k).all(|t| a[(r, t)].is_zero());
        if constant {
            return true;
        }
        [Rational::zero(), Rational::from_integer(-1)]
            .iter()
            .all(|wall| !values.iter().all(|v| v[r] == *wall))
    });
    Some(regular)
}

fn omega_conjugates(g: &AffineWeylGroup, omegas: &[Element], x: &Element) -> Vec<Element> {
    let mut out = Vec::with_capacity(2 * omegas.len());
    for w in omegas {
        out.push(g.sigma_conjugate(w, x));
        out.push(g.sigma_conjugate(&w.inverse(), x));
    }
    out
}

/// Closure of `x` under `s x sigma(s)` and `omega^{-1} x sigma(omega)` within `length <= cap`.
pub fn conjugation_closure(
    g: &AffineWeylGroup,
    x: &Element,
    omegas: &[Element],
    cap: usize,
) -> HashSet<Element> {
    let mut seen = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    let n = g.simple_affine_reflections().len();
    while let Some(cur) = queue.pop_front() {
        let mut next: Vec<Element> = (0..n).map(|s| g.sigma_conjugate_simple(&cur, s)).collect();
        next.extend(omega_conjugates(g, omegas, &cur));
        for y in next {
            if !seen.contains(&y) && g.length(&y) <= cap {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen
}

#[derive(Clone, Debug)]
pub struct StraightClass {
    pub representative: Element,
    pub members: Vec<Element>,
    pub nu_bar: RatVector,
    pub kappa: QuotientClass,
}

/// Groups the given straight elements by conjugation reachability within `length <= cap`.
pub fn group_straight(
    g: &AffineWeylGroup,
    straight: &[Element],
    omegas: &[Element],
    cap: usize,
) -> Vec<StraightClass> {
    let index: HashMap<&Element, usize> = straight.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut comp = vec![usize::MAX; straight.len()];
    let mut classes = Vec::new();
    for i in 0..straight.len() {
        if comp[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let closure = conjugation_closure(g, &straight[i], omegas, cap);
        let mut members: Vec<Element> = Vec::new();
        for e in &closure {
            if let Some(&j) = index.get(e) {
                if comp[j] == usize::MAX {
                    comp[j] = c;
                    members.push(e.clone());
                }
            }
        }
        members.sort_by(|a, b| g.length(a).cmp(&g.length(b)).then_with(|| a.cmp(b)));
        classes.push(StraightClass {
            representative: members[0].clone(),
            nu_bar: dominant_newton_point(g, &members[0]),
            kappa: g.kottwitz_point(&members[0]),
            members,
        });
    }
    classes
}

pub fn straight_class_reps(
    g: &AffineWeylGroup,
    elements: &[Element],
    omegas: &[Element],
    cap: usize,
) -> Vec<StraightClass> {
    let straight: Vec<Element> = elements
        .par_iter()
        .filter(|x| is_straight(g, x))
        .cloned()
        .collect();
    group_straight(g, &straight, omegas, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(k: &str) -> AffineWeylGroup {
        AffineWeylGroup::from_key(k).unwrap()
    }

    #[test]
    fn minimal_examples() {
        let gl2 = grp("GL2");
        let s = gl2.simple_element(0).clone();
        let m = reduce_to_minimal(&gl2, &s, Generators::Affine);
        assert_eq!(gl2.length(&m[0].0), 1);
        let sl2 = grp("SL2");
        let (s1, s0) = (sl2.simple_element(0).clone(), sl2.simple_element(1).clone());
        let x = s0.mul(&s1).mul(&s0);
        let m = reduce_to_minimal(&sl2, &x, Generators::Affine);
        assert_eq!(sl2.length(&m[0].0), 1);
        assert!(m.iter().all(|(e, p)| p.last().map_or(e == &x, |st| &st.to == e)));
    }

    #[test]
    fn decomposition_examples() {
        let gl2 = grp("GL2");
        let s = gl2.simple_element(0).clone();
        let c = straight_decomposition(&gl2, &s).unwrap();
        assert!(c.x.is_identity());
        assert_eq!(c.j, vec![0]);
        assert_eq!(c.u, s);
        assert!(certificate_violations(&gl2, &s, &c).is_empty());
        let t = Element::translation(vec![1, 0]);
        let c = straight_decomposition(&gl2, &t).unwrap();
        assert_eq!(c.x, t);
        assert!(c.j.is_empty());
        let sl2 = grp("SL2");
        let s0 = sl2.simple_element(1).clone();
        let c = straight_decomposition(&sl2, &s0).unwrap();
        assert!(c.x.is_identity());
        assert_eq!(c.j, vec![1]);
    }

    #[test]
    fn equivalence_examples() {
        let gl2 = grp("GL2");
        assert!(approx_equiv(&gl2, &Element::translation(vec![1, 0]), &Element::translation(vec![0, 1])));
        let sl2 = grp("SL2");
        assert!(!approx_equiv(&sl2, sl2.simple_element(0), sl2.simple_element(1)));
        assert!(approx_equiv(&sl2, sl2.simple_element(0), sl2.simple_element(0)));
    }

    #[test]
    fn regular_point_examples() {
        let gl2 = grp("GL2");
        // V for the identity is all of V; the base alcove interior is regular
        assert_eq!(regular_point_in_closure(&gl2, &gl2.identity()), Some(true));
        // t^(2,0) moves by (2,0): V is everything again
        assert_eq!(regular_point_in_closure(&gl2, &Element::translation(vec![2, 0])), Some(true));
        // walls containing V itself do not count
        assert_eq!(regular_point_in_closure(&gl2, gl2.simple_element(0)), Some(true));
    }

    #[test]
    fn subsets_order() {
        let s = subsets_by_size(3);
        assert_eq!(s[0], Vec::<usize>::new());
        assert_eq!(s[1], vec![0]);
        assert_eq!(s[4], vec![0, 1]);
        assert_eq!(s.len(), 8);
    }
}
