//! Decision procedures for fundamental, K-fundamental and G(L)-fundamental
//! elements, and the minuscule double coset check.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde_json::{json, Value};

use crate::affine::{parabolic_elements, parabolic_is_finite, AffineWeylGroup, Element};
use crate::alcove::{
    is_p_alcove, is_p_fundamental, relative_length_on, stable_v_data, LeviDatum, VDatum,
};
use crate::error::{Error, Result};
use crate::expr::format_element;
use crate::linalg;
use crate::newton::{dominant_newton_point, is_straight, newton_vector};
use crate::reduction::{
    conjugation_closure, preserving_class, straight_decomposition, subsets_by_size, Generators,
};
use crate::root_datum::{DiagramAutomorphism, WeylElement};
use crate::{fraction_string, IntMatrix, RatVector};

/// A P-fundamental pair for `element`, an element of the `~_sigma` class
/// of the queried one.
#[derive(Clone, Debug)]
pub struct Witness {
    pub element: Element,
    pub vdatum: VDatum,
    /// Whether `vdatum` was carried back to the queried element and verified there.
    pub on_input: bool,
}

#[derive(Clone, Debug)]
pub struct FundamentalReport {
    pub straight: bool,
    pub witness: Option<Witness>,
}

fn p_fundamental_pair(g: &AffineWeylGroup, x: &Element) -> Option<VDatum> {
    stable_v_data(g, x)
        .into_iter()
        .find(|vd| is_p_fundamental(g, x, vd))
}

/// Straightness together with a P-fundamental witness search over the `~_sigma` class.
pub fn is_fundamental(g: &AffineWeylGroup, x: &Element) -> FundamentalReport {
    let straight = is_straight(g, x);
    if let Some(vd) = p_fundamental_pair(g, x) {
        return FundamentalReport {
            straight,
            witness: Some(Witness {
                element: x.clone(),
                vdatum: vd,
                on_input: true,
            }),
        };
    }
    let class = preserving_class(g, x, Generators::Affine);
    let mut members: Vec<&Element> = class.elements().collect();
    members.sort();
    let mut fallback = None;
    for y in members {
        let Some(vd) = p_fundamental_pair(g, y) else {
            continue;
        };
        // carry v back along the path: x_i = s x_{i+1} sigma(s) is a P_{s v}-alcove
        let mut v = vd.v.clone();
        for step in class.path_to(g, y).iter().rev() {
            v = g.simple_element(step.s).finite_part().apply_rational(&v);
        }
        let back = VDatum::new(g.datum(), v);
        if is_p_fundamental(g, x, &back) {
            return FundamentalReport {
                straight,
                witness: Some(Witness {
                    element: x.clone(),
                    vdatum: back,
                    on_input: true,
                }),
            };
        }
        fallback.get_or_insert(Witness {
            element: y.clone(),
            vdatum: vd,
            on_input: false,
        });
    }
    FundamentalReport {
        straight,
        witness: fallback,
    }
}

/// The `y` with `x sigma ∈ y sigma W^a_nu` and `length_nu(y sigma) = 0`.
pub fn x_part(g: &AffineWeylGroup, x: &Element) -> Element {
    let nu = newton_vector(g, x);
    let levi = LeviDatum::of_vector(g, &nu);
    let twisted: Vec<Element> = levi
        .simple_affine
        .iter()
        .map(|r| g.apply_sigma(&r.element))
        .collect();
    let rel = |y: &Element| relative_length_on(g, y, &levi.roots).expect("x sigma fixes nu");
    let mut y = x.clone();
    let mut cur = rel(&y);
    'outer: while cur > 0 {
        for r in &twisted {
            let c = y.mul(r);
            let l = rel(&c);
            if l < cur {
                y = c;
                cur = l;
                continue 'outer;
            }
        }
        unreachable!("positive relative length without a descent");
    }
    y
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `J ⊆ S_nu`.
    K,
    /// `J ⊆ S^a_nu` with `W_J` finite.
    GL,
}

/// Data certifying the factorization criterion.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub y: Element,
    /// Positions in the relative simple affine reflections of `Phi_nu`.
    pub j: Vec<usize>,
    pub u: Element,
}

/// `y = x_part(x)` straight, `x sigma ∈ y sigma W_J`, `y sigma(J) y^{-1} = J`,
/// and `length(x) = length(y) + length_nu(x sigma)`.
pub fn factorization_criterion(g: &AffineWeylGroup, x: &Element, variant: Variant) -> Option<Factorization> {
    let nu = newton_vector(g, x);
    let levi = LeviDatum::of_vector(g, &nu);
    let y = x_part(g, x);
    if !is_straight(g, &y) {
        return None;
    }
    let lnu = relative_length_on(g, x, &levi.roots).expect("x sigma fixes nu");
    if g.length(x) != g.length(&y) + lnu {
        return None;
    }
    let u = g.apply_sigma_inverse(&y.inverse().mul(x));
    let allowed: Vec<usize> = match variant {
        Variant::K => levi.finite_positions(),
        Variant::GL => (0..levi.simple_affine.len()).collect(),
    };
    let yi = y.inverse();
    for sub in subsets_by_size(allowed.len()) {
        let j: Vec<usize> = sub.iter().map(|&i| allowed[i]).collect();
        if !parabolic_is_finite(&levi.simple_affine, &j) {
            continue;
        }
        let gens: Vec<Element> = j.iter().map(|&i| levi.simple_affine[i].element.clone()).collect();
        let set: BTreeSet<&Element> = gens.iter().collect();
        let img: Vec<Element> = gens.iter().map(|s| y.mul(&g.apply_sigma(s)).mul(&yi)).collect();
        let imgset: BTreeSet<&Element> = img.iter().collect();
        if imgset != set {
            continue;
        }
        let Some(wj) = parabolic_elements(&gens, g.rank(), 200_000) else {
            continue;
        };
        if wj.contains(&u) {
            return Some(Factorization { y, j, u });
        }
    }
    None
}

/// Outcome of the Levi criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeviOutcome {
    /// `Phi_nu = Phi`: the criterion is empty and the factorization criterion is used.
    Delegated(bool),
    NotPAlcove,
    Levi(bool),
}

impl LeviOutcome {
    pub fn holds(&self) -> bool {
        match self {
            LeviOutcome::Delegated(b) | LeviOutcome::Levi(b) => *b,
            LeviOutcome::NotPAlcove => false,
        }
    }
}

/// Write the linear part `L` of `x sigma` as `w_M tau` with `w_M ∈ W_M` and
/// `tau` preserving the positive roots of `zero`.
fn factor_linear_part(g: &AffineWeylGroup, l: &IntMatrix, zero: &[usize]) -> (WeylElement, IntMatrix) {
    let d = g.datum();
    let levi = LeviDatum::new(g, zero);
    let simple: Vec<usize> = levi.finite_positions().iter().map(|&i| levi.simple_affine[i].root).collect();
    let mut w = WeylElement::identity(g.rank());
    let mut tau = l.clone();
    'outer: loop {
        for &gamma in &simple {
            // gamma ∈ tau(Phi_M^-) iff tau^{-1}(gamma) < 0
            let pre = d.map_root(&tau, gamma).expect("tau permutes Phi_M");
            if !d.is_positive(pre) {
                let s = WeylElement(d.reflection_matrix(gamma));
                tau = s.matrix().mul(&tau);
                w = w.mul(&s);
                continue 'outer;
            }
        }
        return (w, tau);
    }
}

fn levi_group(g: &AffineWeylGroup, x: &Element, zero: &[usize]) -> Result<(AffineWeylGroup, Element)> {
    let l = g.twisted_linear_part(x);
    let (w_m, tau) = factor_linear_part(g, &l, zero);
    let md = g.datum().levi(zero)?;
    let sigma = DiagramAutomorphism::new(&md, tau)?;
    let gm = AffineWeylGroup::with_key(format!("{}[levi]", g.key()), md, sigma)?;
    Ok((gm, Element::new(x.translation_part().clone(), w_m)))
}

pub fn levi_criterion(g: &AffineWeylGroup, x: &Element, variant: Variant) -> Result<LeviOutcome> {
    let nu = newton_vector(g, x);
    let vd = VDatum::new(g.datum(), nu);
    if vd.zero.len() == g.datum().num_roots() {
        return Ok(LeviOutcome::Delegated(factorization_criterion(g, x, variant).is_some()));
    }
    if !is_p_alcove(g, x, &vd) {
        return Ok(LeviOutcome::NotPAlcove);
    }
    let (gm, xm) = levi_group(g, x, &vd.zero)?;
    Ok(LeviOutcome::Levi(factorization_criterion(&gm, &xm, variant).is_some()))
}

fn decide(g: &AffineWeylGroup, x: &Element, variant: Variant) -> Result<bool> {
    let b = factorization_criterion(g, x, variant).is_some();
    let c = levi_criterion(g, x, variant)?;
    if b != c.holds() {
        return Err(Error::CriteriaDisagree(format!(
            "{} ({:?}: b={b}, c={c:?})",
            format_element(g, x),
            variant
        )));
    }
    Ok(b)
}

pub fn is_k_fundamental(g: &AffineWeylGroup, x: &Element) -> Result<bool> {
    decide(g, x, Variant::K)
}

pub fn is_gl_fundamental(g: &AffineWeylGroup, x: &Element) -> Result<bool> {
    decide(g, x, Variant::GL)
}

/// Everything `eval` reports about one element.
#[derive(Clone, Debug)]
pub struct Classification {
    pub literal: String,
    pub length: usize,
    pub nu_bar: RatVector,
    pub kappa: String,
    pub straight: bool,
    pub k_fundamental: bool,
    pub gl_fundamental: bool,
    pub witness: Option<VDatum>,
}

pub const CSV_HEADER: &str = "literal,length,nu_bar,kappa,straight,k_fundamental,gl_fundamental,witness";

impl Classification {
    pub fn to_json(&self) -> Value {
        json!({
            "literal": self.literal,
            "length": self.length,
            "nu_bar": self.nu_bar.iter().map(fraction_string).collect::<Vec<_>>(),
            "kappa": self.kappa,
            "straight": self.straight,
            "k_fundamental": self.k_fundamental,
            "gl_fundamental": self.gl_fundamental,
            "witness": self.witness.as_ref().map(|w| w.to_json()),
        })
    }

    pub fn csv_row(&self) -> String {
        let nu: Vec<String> = self.nu_bar.iter().map(fraction_string).collect();
        let wit = self
            .witness
            .as_ref()
            .map(|w| w.v.iter().map(fraction_string).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.literal,
            self.length,
            nu.join(" "),
            self.kappa,
            self.straight,
            self.k_fundamental,
            self.gl_fundamental,
            wit
        )
    }
}

pub fn classify(g: &AffineWeylGroup, x: &Element) -> Result<Classification> {
    let f = is_fundamental(g, x);
    Ok(Classification {
        literal: format_element(g, x),
        length: g.length(x),
        nu_bar: dominant_newton_point(g, x),
        kappa: g.kottwitz_point(x).to_string(),
        straight: f.straight,
        k_fundamental: is_k_fundamental(g, x)?,
        gl_fundamental: is_gl_fundamental(g, x)?,
        witness: f.witness.filter(|w| w.on_input).map(|w| w.vdatum),
    })
}

#[derive(Clone, Debug)]
pub struct MinusculeRow {
    pub element: Element,
    pub straight_rep: Element,
    pub witness: Option<Element>,
    pub bruhat_ok: bool,
}

#[derive(Clone, Debug)]
pub struct MinusculeReport {
    pub rows: Vec<MinusculeRow>,
}

impl MinusculeReport {
    pub fn all_succeed(&self) -> bool {
        self.rows.iter().all(|r| r.bruhat_ok)
    }

    pub fn to_json(&self, g: &AffineWeylGroup) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "element": format_element(g, &r.element),
                    "straight_rep": format_element(g, &r.straight_rep),
                    "witness": r.witness.as_ref().map(|y| format_element(g, y)),
                    "bruhat_ok": r.bruhat_ok,
                })
            })
            .collect();
        json!({
            "rows": rows,
            "total": self.rows.len(),
            "succeeded": self.rows.iter().filter(|r| r.bruhat_ok).count(),
        })
    }
}

pub fn is_minuscule(g: &AffineWeylGroup, mu: &[i64]) -> bool {
    let d = g.datum();
    (0..d.num_roots()).all(|i| linalg::dot(d.root(i), mu).abs() <= 1)
}

/// `W t^mu W` as `{ t^lambda w : lambda ∈ W mu, w ∈ W }`.
pub fn double_coset(g: &AffineWeylGroup, mu: &[i64]) -> Vec<Element> {
    let w = g.finite_weyl_group();
    let orbit: BTreeSet<Vec<i64>> = w.iter().map(|u| u.apply(mu)).collect();
    let mut out: Vec<Element> = orbit
        .iter()
        .flat_map(|l| w.iter().map(move |u| Element::new(l.clone(), u.clone())))
        .collect();
    out.sort();
    out
}

pub fn minuscule_report(g: &AffineWeylGroup, mu: &[i64], slack: usize) -> Result<MinusculeReport> {
    if mu.len() != g.rank() {
        return Err(Error::DatumMismatch);
    }
    if !is_minuscule(g, mu) {
        return Err(Error::NotMinuscule(format!("{mu:?}")));
    }
    let mut closures: HashMap<Element, HashSet<Element>> = HashMap::new();
    let mut rows = Vec::new();
    for w in double_coset(g, mu) {
        let cert = straight_decomposition(g, &w)?;
        let x = cert.x;
        let cap = g.length(&w) + slack;
        let closure = closures
            .entry(x.clone())
            .or_insert_with(|| conjugation_closure(g, &x, &[], cap));
        let nu = dominant_newton_point(g, &x);
        let kappa = g.kottwitz_point(&x);
        let witness = g.bruhat_lower_set(&w).into_iter().find(|y| {
            closure.contains(y)
                && is_straight(g, y)
                && dominant_newton_point(g, y) == nu
                && g.kottwitz_point(y) == kappa
        });
        let bruhat_ok = witness.as_ref().is_some_and(|y| g.bruhat_leq(y, &w));
        rows.push(MinusculeRow {
            element: w,
            straight_rep: x,
            witness,
            bruhat_ok,
        });
    }
    Ok(MinusculeReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;

    fn grp(k: &str) -> AffineWeylGroup {
        AffineWeylGroup::from_key(k).unwrap()
    }

    #[test]
    fn fundamental_examples() {
        let g = grp("GL2");
        let tau = parse_element(&g, "tau").unwrap();
        let r = is_fundamental(&g, &tau);
        assert!(r.straight && r.witness.is_some());
        let r = is_fundamental(&g, g.simple_element(0));
        assert!(!r.straight && r.witness.is_none());
        let t = Element::translation(vec![1, 0]);
        let r = is_fundamental(&g, &t);
        assert!(r.straight);
        assert!(r.witness.unwrap().vdatum.zero.is_empty());
    }

    #[test]
    fn x_part_examples() {
        let g = grp("GL2");
        assert!(x_part(&g, g.simple_element(0)).is_identity());
        let t = Element::translation(vec![1, 0]);
        assert_eq!(x_part(&g, &t), t);
        let s = grp("SL2");
        assert!(x_part(&s, s.simple_element(1)).is_identity());
    }

    #[test]
    fn k_versus_gl_split() {
        let g = grp("SL2");
        let s = g.simple_element(0).clone();
        let s0 = g.simple_element(1).clone();
        assert!(!is_k_fundamental(&g, &s0).unwrap());
        assert!(is_gl_fundamental(&g, &s0).unwrap());
        assert!(is_k_fundamental(&g, &s).unwrap());
        assert!(!is_fundamental(&g, &s).straight);
        let gl2 = grp("GL2");
        assert!(is_k_fundamental(&gl2, gl2.simple_element(0)).unwrap());
    }

    #[test]
    fn minuscule_gl2() {
        let g = grp("GL2");
        assert_eq!(double_coset(&g, &[1, 0]).len(), 4);
        let r = minuscule_report(&g, &[1, 0], 2).unwrap();
        assert!(r.all_succeed());
        assert!(matches!(minuscule_report(&g, &[2, 0], 2), Err(Error::NotMinuscule(_))));
        let z = minuscule_report(&g, &[0, 0], 2).unwrap();
        assert_eq!(z.rows.len(), 2);
        assert!(z.all_succeed());
    }
}
