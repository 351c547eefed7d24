//! The extended affine Weyl group `X_* x| W` of a based root datum with a
//! Frobenius twist.
//!
//! Lengths are measured from the anti-dominant base alcove
//! `{ -1 < <alpha, v> < 0 : alpha > 0 }`. For `x = t^lambda w` the alcove
//! `x Delta` lies in the strip `m_alpha < <alpha, .> < m_alpha + 1` with
//! `m_alpha = <alpha, lambda> - [w^{-1} alpha > 0]`, which gives the length as
//! `sum |m_alpha + 1|` over positive roots.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, dot};
use crate::root_datum::{BasedRootDatum, DiagramAutomorphism, WeylElement};
use crate::smith::{LatticeQuotient, QuotientClass};
use crate::{IntVector, RatVector, Rational};

/// `t^lambda w`, acting on `V` by `v -> w(v) + lambda`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    t: IntVector,
    w: WeylElement,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{:?}{:?}", self.t, self.w)
    }
}

impl Element {
    pub fn new(t: IntVector, w: WeylElement) -> Self {
        assert_eq!(t.len(), w.matrix().rows());
        Self { t, w }
    }

    pub fn identity(rank: usize) -> Self {
        Self {
            t: vec![0; rank],
            w: WeylElement::identity(rank),
        }
    }

    pub fn translation(t: IntVector) -> Self {
        let r = t.len();
        Self {
            t,
            w: WeylElement::identity(r),
        }
    }

    pub fn from_weyl(w: WeylElement) -> Self {
        Self {
            t: vec![0; w.matrix().rows()],
            w,
        }
    }

    pub fn rank(&self) -> usize {
        self.t.len()
    }

    pub fn translation_part(&self) -> &IntVector {
        &self.t
    }

    pub fn finite_part(&self) -> &WeylElement {
        &self.w
    }

    pub fn is_identity(&self) -> bool {
        linalg::is_zero(&self.t) && self.w.is_identity()
    }

    /// `(t^a u)(t^b v) = t^{a + u b} (u v)`.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            t: linalg::add(&self.t, &self.w.apply(&other.t)),
            w: self.w.mul(&other.w),
        }
    }

    /// `(t^a u)^{-1} = t^{-u^{-1} a} u^{-1}`.
    pub fn inverse(&self) -> Self {
        let wi = self.w.inverse();
        Self {
            t: linalg::neg(&wi.apply(&self.t)),
            w: wi,
        }
    }

    pub fn apply(&self, v: &[Rational]) -> RatVector {
        linalg::add(&self.w.apply_rational(v), &linalg::to_rational(&self.t))
    }
}

/// The affine function `v -> <alpha, v> + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: usize,
    pub level: i64,
}

impl AffineRoot {
    /// Positive on the base alcove, where positive roots take values in `(-1, 0)`.
    pub fn is_positive(&self, datum: &BasedRootDatum) -> bool {
        if datum.is_positive(self.root) {
            self.level >= 1
        } else {
            self.level >= 0
        }
    }

    pub fn negate(&self, datum: &BasedRootDatum) -> Self {
        Self {
            root: datum.negative_of(self.root),
            level: -self.level,
        }
    }

    /// `x(a) = a o x^{-1}`: for `x = t^lambda w`, `w alpha + (k - <w alpha, lambda>)`.
    pub fn act(&self, datum: &BasedRootDatum, x: &Element) -> Self {
        let w_inv = x.w.inverse();
        let img = datum.map_root(w_inv.matrix(), self.root).expect("W permutes roots");
        Self {
            root: img,
            level: self.level - dot(datum.root(img), &x.t),
        }
    }

    pub fn act_sigma(&self, datum: &BasedRootDatum, sigma: &DiagramAutomorphism) -> Self {
        Self {
            root: sigma.apply_root(datum, self.root),
            level: self.level,
        }
    }

    pub fn value(&self, datum: &BasedRootDatum, v: &[Rational]) -> Rational {
        datum.pair(self.root, v) + Rational::from_integer(self.level)
    }
}

/// A simple affine reflection of a (possibly Levi) root subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleReflection {
    pub element: Element,
    /// Gradient of the wall; the wall is `<alpha, v> = -level`.
    pub root: usize,
    pub level: i64,
    pub component: usize,
}

impl SimpleReflection {
    pub fn is_finite(&self) -> bool {
        self.level == 0
    }

    /// The simple affine root `a` with `s = s_a`.
    pub fn affine_root(&self) -> AffineRoot {
        AffineRoot {
            root: self.root,
            level: self.level,
        }
    }
}

/// Reflection in the hyperplane `<alpha, v> + k = 0`: `t^{-k alpha^vee} s_alpha`.
pub fn affine_reflection(datum: &BasedRootDatum, root: usize, level: i64) -> Element {
    Element {
        t: linalg::scale(&(-level), datum.coroot(root)),
        w: WeylElement(datum.reflection_matrix(root)),
    }
}

/// Simple affine reflections of the subsystem `roots` (closed, symmetric),
/// with positive system `roots ∩ Phi^+`: finite simples first in root order,
/// then one affine reflection per irreducible component.
pub fn simple_affine_reflections_of(datum: &BasedRootDatum, roots: &[usize]) -> Vec<SimpleReflection> {
    let set: HashSet<usize> = roots.iter().copied().collect();
    let mut pos: Vec<usize> = roots.iter().copied().filter(|&i| datum.is_positive(i)).collect();
    pos.sort_unstable();
    let simple: Vec<usize> = pos
        .iter()
        .copied()
        .filter(|&i| {
            !pos.iter().any(|&j| {
                datum
                    .root_index(&linalg::sub(datum.root(i), datum.root(j)))
                    .is_some_and(|k| set.contains(&k) && datum.is_positive(k))
            })
        })
        .collect();
    // components of the subsystem
    let mut comp = vec![usize::MAX; simple.len()];
    let mut n_comp = 0;
    for s in 0..simple.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = n_comp;
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for b in 0..simple.len() {
                if comp[b] == usize::MAX && dot(datum.root(simple[a]), datum.coroot(simple[b])) != 0 {
                    comp[b] = n_comp;
                    stack.push(b);
                }
            }
        }
        n_comp += 1;
    }
    let mut out: Vec<SimpleReflection> = simple
        .iter()
        .zip(&comp)
        .map(|(&i, &c)| SimpleReflection {
            element: affine_reflection(datum, i, 0),
            root: i,
            level: 0,
            component: c,
        })
        .collect();
    for c in 0..n_comp {
        let members: Vec<usize> = simple
            .iter()
            .zip(&comp)
            .filter(|(_, &k)| k == c)
            .map(|(&i, _)| i)
            .collect();
        // highest root of the component: maximal height among positive roots
        // not orthogonal-separated from the component
        let in_comp = |r: usize| -> bool {
            // r lies in the span of the component's simple roots iff it pairs
            // trivially with simple coroots of every other component
            simple
                .iter()
                .zip(&comp)
                .filter(|(_, &k)| k != c)
                .all(|(&s, _)| dot(datum.root(r), datum.coroot(s)) == 0)
                && members.iter().any(|&s| dot(datum.root(r), datum.coroot(s)) != 0)
        };
        let theta = pos
            .iter()
            .copied()
            .filter(|&r| in_comp(r))
            .max_by_key(|&r| (datum.height(r), std::cmp::Reverse(r)))
            .expect("component has a positive root");
        // the wall <theta, v> = -1, i.e. affine root -theta + 1 ... expressed with gradient theta:
        // s_{theta + 1}(v) = v - (<theta, v> + 1) theta^vee
        out.push(SimpleReflection {
            element: affine_reflection(datum, theta, 1),
            root: theta,
            level: 1,
            component: c,
        });
    }
    out
}

/// Whether the parabolic subgroup generated by `subset` (positions in `refl`) is finite.
pub fn parabolic_is_finite(refl: &[SimpleReflection], subset: &[usize]) -> bool {
    let comps: HashSet<usize> = refl.iter().map(|s| s.component).collect();
    comps.into_iter().all(|c| {
        refl.iter()
            .enumerate()
            .filter(|(_, s)| s.component == c)
            .any(|(i, _)| !subset.contains(&i))
    })
}

/// All elements of a finite parabolic subgroup.
pub fn parabolic_elements(generators: &[Element], rank: usize, cap: usize) -> Option<Vec<Element>> {
    let id = Element::identity(rank);
    let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        for g in generators {
            let n = out[k].mul(g);
            if seen.insert(n.clone()) {
                if out.len() >= cap {
                    return None;
                }
                out.push(n);
            }
        }
        k += 1;
    }
    Some(out)
}

/// `x = s_{letters[0]} ... s_{letters[k-1]} * omega` with `letters` indexing `S^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    pub omega: Element,
    pub letters: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    Smallest,
    Largest,
}

/// Extended affine Weyl group with Frobenius: the context every operation runs in.
#[derive(Debug)]
pub struct AffineWeylGroup {
    key: String,
    datum: BasedRootDatum,
    sigma: DiagramAutomorphism,
    simple: Vec<SimpleReflection>,
    sigma_on_simple: Vec<usize>,
    omega_quotient: LatticeQuotient,
    kottwitz_quotient: LatticeQuotient,
    weyl: OnceLock<Vec<WeylElement>>,
    pub(crate) parabolic_pairs: OnceLock<Vec<crate::alcove::ParabolicPair>>,
}

impl AffineWeylGroup {
    pub fn new(datum: BasedRootDatum, sigma: DiagramAutomorphism) -> Result<Self> {
        Self::with_key(datum.label().to_string(), datum, sigma)
    }

    pub fn from_key(key: &str) -> Result<Self> {
        let (d, s) = crate::build_root_datum(key)?;
        Self::with_key(key.to_string(), d, s)
    }

    pub fn with_key(key: String, datum: BasedRootDatum, sigma: DiagramAutomorphism) -> Result<Self> {
        if sigma.matrix().rows() != datum.rank() {
            return Err(Error::DatumMismatch);
        }
        let all: Vec<usize> = (0..datum.num_roots()).collect();
        let simple = simple_affine_reflections_of(&datum, &all);
        let sig = |e: &Element| Element {
            t: sigma.apply_vector(&e.t),
            w: sigma.apply_weyl(&e.w),
        };
        let sigma_on_simple = simple
            .iter()
            .map(|s| {
                let img = sig(&s.element);
                simple
                    .iter()
                    .position(|t| t.element == img)
                    .ok_or_else(|| Error::InvalidAutomorphism("does not preserve S^a".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let simple_coroots: Vec<IntVector> = datum
            .simple_indices()
            .iter()
            .map(|&i| datum.coroot(i).clone())
            .collect();
        let omega_quotient = LatticeQuotient::new(datum.rank(), &simple_coroots);
        let mut rel = simple_coroots;
        for j in 0..datum.rank() {
            let mut e = vec![0; datum.rank()];
            e[j] = 1;
            rel.push(linalg::sub(&e, &sigma.apply_vector(&e)));
        }
        let kottwitz_quotient = LatticeQuotient::new(datum.rank(), &rel);
        Ok(Self {
            key,
            datum,
            sigma,
            simple,
            sigma_on_simple,
            omega_quotient,
            kottwitz_quotient,
            weyl: OnceLock::new(),
            parabolic_pairs: OnceLock::new(),
        })
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.datum
    }

    pub fn sigma(&self) -> &DiagramAutomorphism {
        &self.sigma
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.rank())
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if x.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::DatumMismatch)
        }
    }

    pub fn finite_weyl_group(&self) -> &[WeylElement] {
        self.weyl.get_or_init(|| self.datum.weyl_group())
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.mul(y))
    }

    pub fn invert(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(x.inverse())
    }

    pub fn apply_sigma(&self, x: &Element) -> Element {
        Element {
            t: self.sigma.apply_vector(&x.t),
            w: self.sigma.apply_weyl(&x.w),
        }
    }

    pub fn apply_sigma_inverse(&self, x: &Element) -> Element {
        Element {
            t: self.sigma.inverse_matrix().apply(&x.t),
            w: self.sigma.apply_weyl_inverse(&x.w),
        }
    }

    /// `g^{-1} x sigma(g)`.
    pub fn sigma_conjugate(&self, g: &Element, x: &Element) -> Element {
        g.inverse().mul(x).mul(&self.apply_sigma(g))
    }

    /// `x sigma(x) ... sigma^{n-1}(x)`, i.e. `(x sigma)^n sigma^{-n}`.
    pub fn twisted_power(&self, x: &Element, n: usize) -> Element {
        let mut acc = self.identity();
        let mut cur = x.clone();
        for _ in 0..n {
            acc = acc.mul(&cur);
            cur = self.apply_sigma(&cur);
        }
        acc
    }

    /// Linear part of `x sigma` on `V`.
    pub fn twisted_linear_part(&self, x: &Element) -> crate::IntMatrix {
        x.w.matrix().mul(self.sigma.matrix())
    }

    /// `m_alpha(x Delta)` for every root (positive and negative).
    pub fn m_all(&self, x: &Element) -> Vec<i64> {
        let u = x.w.apply(self.datum.two_rho_coroot());
        (0..self.datum.num_roots())
            .map(|i| {
                dot(self.datum.root(i), &x.t) - i64::from(self.datum.inverse_image_positive(&u, i))
            })
            .collect()
    }

    /// `m_alpha(x Delta)` for the positive roots, as `(root index, value)`.
    pub fn m_vector(&self, x: &Element) -> Vec<(usize, i64)> {
        let u = x.w.apply(self.datum.two_rho_coroot());
        self.datum
            .positive_indices()
            .map(|i| {
                let m = dot(self.datum.root(i), &x.t)
                    - i64::from(self.datum.inverse_image_positive(&u, i));
                (i, m)
            })
            .collect()
    }

    pub fn m_alpha(&self, x: &Element, root: usize) -> i64 {
        let u = x.w.apply(self.datum.two_rho_coroot());
        dot(self.datum.root(root), &x.t) - i64::from(self.datum.inverse_image_positive(&u, root))
    }

    /// Number of affine root hyperplanes separating `Delta` from `x Delta`.
    pub fn length(&self, x: &Element) -> usize {
        let u = x.w.apply(self.datum.two_rho_coroot());
        self.datum
            .positive_indices()
            .map(|i| {
                let m = dot(self.datum.root(i), &x.t)
                    - i64::from(self.datum.inverse_image_positive(&u, i));
                (m + 1).unsigned_abs() as usize
            })
            .sum()
    }

    pub fn simple_affine_reflections(&self) -> &[SimpleReflection] {
        &self.simple
    }

    pub fn simple_element(&self, i: usize) -> &Element {
        &self.simple[i].element
    }

    /// Index `j` with `sigma(s_i) = s_j`.
    pub fn sigma_simple(&self, i: usize) -> usize {
        self.sigma_on_simple[i]
    }

    pub fn finite_simple_positions(&self) -> Vec<usize> {
        (0..self.simple.len()).filter(|&i| self.simple[i].is_finite()).collect()
    }

    /// Literal index used by the element grammar: finite simples `1..=k`,
    /// the first affine reflection `0`, further ones `k+1, k+2, ...`.
    pub fn literal_index(&self, pos: usize) -> usize {
        let k = self.datum.simple_indices().len();
        if pos < k {
            pos + 1
        } else if pos == k {
            0
        } else {
            pos
        }
    }

    pub fn position_of_literal(&self, idx: usize) -> Option<usize> {
        let k = self.datum.simple_indices().len();
        let pos = match idx {
            0 => k,
            i if i <= k => i - 1,
            i => i,
        };
        (pos < self.simple.len()).then_some(pos)
    }

    pub fn reduced_word(&self, x: &Element) -> ReducedWord {
        self.reduced_word_with(x, TieBreak::Smallest)
    }

    /// Greedy left descent; the residue is the length-zero part.
    pub fn reduced_word_with(&self, x: &Element, policy: TieBreak) -> ReducedWord {
        let mut cur = x.clone();
        let mut len = self.length(&cur);
        let mut letters = Vec::with_capacity(len);
        while len > 0 {
            let order: Box<dyn Iterator<Item = usize>> = match policy {
                TieBreak::Smallest => Box::new(0..self.simple.len()),
                TieBreak::Largest => Box::new((0..self.simple.len()).rev()),
            };
            let mut found = false;
            for i in order {
                let next = self.simple[i].element.mul(&cur);
                let l = self.length(&next);
                if l < len {
                    letters.push(i);
                    cur = next;
                    len = l;
                    found = true;
                    break;
                }
            }
            assert!(found, "element of positive length without a left descent");
        }
        ReducedWord {
            omega: cur,
            letters,
        }
    }

    pub fn word_product(&self, word: &ReducedWord) -> Element {
        word.letters
            .iter()
            .rev()
            .fold(word.omega.clone(), |acc, &i| self.simple[i].element.mul(&acc))
    }

    pub fn omega_part(&self, x: &Element) -> Element {
        self.reduced_word(x).omega
    }

    /// `X_* / Q^vee`, isomorphic to `Omega`.
    pub fn omega_quotient(&self) -> &LatticeQuotient {
        &self.omega_quotient
    }

    fn omega_of_class(&self, class: &[i64]) -> Element {
        self.omega_part(&Element::translation(self.omega_quotient.lift(class)))
    }

    /// One length-zero element per generator of `Omega`.
    pub fn omega_generators(&self) -> Vec<Element> {
        let m = self.omega_quotient.moduli().len();
        (0..m)
            .map(|i| {
                let mut c = vec![0; m];
                c[i] = 1;
                self.omega_of_class(&c)
            })
            .collect()
    }

    /// All of `Omega` when finite; otherwise the window with free coordinates in `[-bound, bound]`.
    pub fn omega_elements(&self, bound: usize) -> Vec<Element> {
        let moduli = self.omega_quotient.moduli().to_vec();
        let b = bound as i64;
        let ranges: Vec<(i64, i64)> = moduli
            .iter()
            .map(|&m| if m == 0 { (-b, b) } else { (0, m - 1) })
            .collect();
        let mut out = Vec::new();
        let mut c: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            out.push(self.omega_of_class(&c));
            let mut k = 0;
            while k < c.len() {
                c[k] += 1;
                if c[k] > ranges[k].1 {
                    c[k] = ranges[k].0;
                    k += 1;
                } else {
                    break;
                }
            }
            if k == c.len() {
                break;
            }
        }
        out
    }

    pub fn omega_is_finite(&self) -> bool {
        self.omega_quotient.is_finite()
    }

    /// Image of `x` in the `sigma`-coinvariants of `Omega`.
    pub fn kottwitz_point(&self, x: &Element) -> QuotientClass {
        self.kottwitz_quotient.class_of(&x.t)
    }

    pub fn kottwitz_quotient(&self) -> &LatticeQuotient {
        &self.kottwitz_quotient
    }

    /// Class of `x` in `X_*/Q^vee`, i.e. its `Omega`-component.
    pub fn omega_class(&self, x: &Element) -> QuotientClass {
        self.omega_quotient.class_of(&x.t)
    }

    /// Bruhat order via the lifting property along left descents of `y`.
    pub fn bruhat_leq(&self, x: &Element, y: &Element) -> bool {
        let mut x = x.clone();
        let mut y = y.clone();
        let mut lx = self.length(&x);
        let mut ly = self.length(&y);
        loop {
            if lx > ly {
                return false;
            }
            if ly == 0 {
                return x == y;
            }
            let (s, sy) = self
                .simple
                .iter()
                .find_map(|s| {
                    let sy = s.element.mul(&y);
                    (self.length(&sy) < ly).then(|| (s.element.clone(), sy))
                })
                .expect("positive length has a descent");
            let sx = s.mul(&x);
            let lsx = self.length(&sx);
            if lsx < lx {
                x = sx;
                lx = lsx;
            }
            y = sy;
            ly -= 1;
        }
    }

    /// `{ z : z <= y }`, built from `L(y) = L(sy) ∪ s L(sy)` for a left descent `s`.
    pub fn bruhat_lower_set(&self, y: &Element) -> Vec<Element> {
        let word = self.reduced_word(y);
        let mut set: HashSet<Element> = HashSet::from([word.omega.clone()]);
        for &i in word.letters.iter().rev() {
            let s = &self.simple[i].element;
            let shifted: Vec<Element> = set.iter().map(|z| s.mul(z)).collect();
            set.extend(shifted);
        }
        let mut out: Vec<Element> = set.into_iter().collect();
        out.sort_by_cached_key(|z| (self.length(z), z.clone()));
        out
    }

    pub fn bruhat_lt(&self, x: &Element, y: &Element) -> bool {
        x != y && self.bruhat_leq(x, y)
    }

    /// `s x sigma(s)` for `s` in `S^a` (by position).
    pub fn sigma_conjugate_simple(&self, x: &Element, s: usize) -> Element {
        let e = &self.simple[s].element;
        e.mul(x).mul(&self.simple[self.sigma_on_simple[s]].element)
    }

    pub fn two_rho_pairing(&self, v: &[Rational]) -> Rational {
        dot(&linalg::to_rational(self.datum.two_rho()), v)
    }

    /// Interior point `-rho^vee / h` of `Delta`, `h` one more than the largest height.
    pub fn base_alcove_point(&self) -> RatVector {
        let h = self
            .datum
            .positive_indices()
            .map(|i| self.datum.height(i))
            .max()
            .unwrap_or(0)
            + 1;
        let two_rho = linalg::to_rational(self.datum.two_rho_coroot());
        linalg::scale(&Rational::new(-1, 2 * h), &two_rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(key: &str) -> AffineWeylGroup {
        AffineWeylGroup::from_key(key).unwrap()
    }

    fn s(g: &AffineWeylGroup, pos: usize) -> Element {
        g.simple_element(pos).clone()
    }

    #[test]
    fn translations_commute_and_conjugate() {
        let g = grp("GL2");
        let a = Element::translation(vec![1, 0]);
        let b = Element::translation(vec![0, 1]);
        assert_eq!(a.mul(&b), Element::translation(vec![1, 1]));
        let sw = s(&g, 0);
        assert_eq!(sw.mul(&a).mul(&sw.inverse()), b);
        assert!(a.mul(&a.inverse()).is_identity());
    }

    #[test]
    fn m_vector_examples() {
        let g = grp("GL2");
        let sw = s(&g, 0);
        assert!(g.m_vector(&g.identity()).iter().all(|&(_, m)| m == -1));
        let tau = Element::translation(vec![0, 1]).mul(&sw);
        assert_eq!(g.m_vector(&tau)[0].1, -1);
        let x = Element::translation(vec![1, 0]).mul(&sw);
        assert_eq!(g.m_vector(&x)[0].1, 1);
    }

    #[test]
    fn length_examples() {
        let g = grp("GL2");
        let sw = s(&g, 0);
        assert_eq!(g.length(&Element::translation(vec![0, 1]).mul(&sw)), 0);
        assert_eq!(g.length(&Element::translation(vec![1, 0])), 1);
        assert_eq!(g.length(&Element::translation(vec![3, 0])), 3);
        let sl2 = grp("SL2");
        let s0 = sl2.simple_element(1).clone();
        assert_eq!(s0, Element::translation(vec![-1]).mul(sl2.simple_element(0)));
        assert_eq!(sl2.length(&s0), 1);
    }

    #[test]
    fn simple_reflections_have_length_one() {
        for key in ["SL2", "GL3", "Sp4-sc", "G2-sc", "SL4@2", "PGL3"] {
            let g = grp(key);
            for r in g.simple_affine_reflections() {
                assert_eq!(g.length(&r.element), 1, "{key}");
            }
        }
        assert_eq!(grp("GL3").simple_affine_reflections().len(), 3);
        assert_eq!(grp("SL2").simple_affine_reflections().len(), 2);
    }

    #[test]
    fn reduced_word_examples() {
        let sl2 = grp("SL2");
        let t = Element::translation(vec![-1]);
        let w = sl2.reduced_word(&t);
        assert_eq!(w.letters.len(), 2);
        assert!(w.omega.is_identity());
        assert_eq!(sl2.word_product(&w), t);
        let gl2 = grp("GL2");
        let c = Element::translation(vec![1, 1]);
        let w = gl2.reduced_word(&c);
        assert!(w.letters.is_empty());
        assert_eq!(w.omega, c);
    }

    #[test]
    fn omega_examples() {
        assert_eq!(grp("SL2").omega_elements(0).len(), 1);
        let pgl2 = grp("PGL2");
        let om = pgl2.omega_elements(0);
        assert_eq!(om.len(), 2);
        assert!(om.iter().all(|x| pgl2.length(x) == 0));
        assert_eq!(grp("G2-sc").omega_elements(0).len(), 1);
        assert_eq!(grp("PGL4").omega_elements(0).len(), 4);
        let gl2 = grp("GL2");
        let gens = gl2.omega_generators();
        let tau = Element::translation(vec![0, 1]).mul(gl2.simple_element(0));
        assert_eq!(gens, vec![tau.clone()]);
        assert_eq!(tau.mul(&tau), Element::translation(vec![1, 1]));
    }

    #[test]
    fn bruhat_examples() {
        let sl2 = grp("SL2");
        let s1 = s(&sl2, 0);
        let s0 = s(&sl2, 1);
        assert!(sl2.bruhat_leq(&s1, &s1));
        assert!(!sl2.bruhat_leq(&s1, &s0));
        assert!(sl2.bruhat_leq(&sl2.identity(), &s0));
        let y = s0.mul(&s1).mul(&s0);
        assert!(sl2.bruhat_leq(&s1, &y));
    }

    #[test]
    fn kottwitz_examples() {
        let g = grp("GL2");
        let tau = Element::translation(vec![0, 1]).mul(g.simple_element(0));
        assert_eq!(g.kottwitz_point(&Element::translation(vec![1, 0])).coords, vec![1]);
        assert_eq!(g.kottwitz_point(&tau).coords, vec![1]);
        assert!(g.kottwitz_point(&g.identity()).is_zero());
    }

    #[test]
    fn sigma_permutes_simple_affine_reflections() {
        let g = grp("SL3@2");
        let sig: Vec<usize> = (0..3).map(|i| g.sigma_simple(i)).collect();
        assert_eq!(sig, vec![1, 0, 2]);
        let x = s(&g, 0).mul(&s(&g, 2));
        assert_eq!(g.apply_sigma(&g.apply_sigma(&x)), x);
    }

    #[test]
    fn sigma_conjugation_example() {
        let sl2 = grp("SL2");
        let s0 = s(&sl2, 1);
        let y = sl2.sigma_conjugate_simple(&s0, 0);
        assert_eq!(sl2.length(&y), 3);
        let gl2 = grp("GL2");
        let t = Element::translation(vec![1, 0]);
        assert_eq!(gl2.sigma_conjugate_simple(&t, 0), Element::translation(vec![0, 1]));
    }
}
