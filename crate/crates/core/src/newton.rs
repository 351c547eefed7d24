//! Newton point, the affine subspace `V_w` and straightness.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::affine::{AffineWeylGroup, Element};
use crate::error::{Error, Result};
use crate::linalg::{self, dot, Matrix};
use crate::root_datum::dominant_representative;
use crate::smith::QuotientClass;
use crate::{fraction_string, RatMatrix, RatVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonDatum {
    pub nu: RatVector,
    pub nu_dom: RatVector,
    pub period: usize,
    pub kappa: QuotientClass,
    /// `V_w = base + span(directions)`.
    pub base: RatVector,
    pub directions: Vec<RatVector>,
}

fn rat_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fraction_string(x))).collect())
}

impl NewtonDatum {
    pub fn to_json(&self) -> Value {
        json!({
            "nu": rat_json(&self.nu),
            "nu_dom": rat_json(&self.nu_dom),
            "period": self.period,
            "kappa": { "moduli": self.kappa.moduli, "coords": self.kappa.coords },
            "v_space": {
                "base": rat_json(&self.base),
                "directions": self.directions.iter().map(|d| rat_json(d)).collect::<Vec<_>>(),
            },
        })
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        let diff = linalg::sub(p, &self.base);
        if self.directions.is_empty() {
            return linalg::is_zero(&diff);
        }
        let a = Matrix::from_cols(&self.directions);
        linalg::solve(&a, &diff).is_some()
    }
}

pub(crate) fn rational_matrix(m: &crate::IntMatrix) -> RatMatrix {
    m.map(|&x| Rational::from_integer(x))
}

/// Order of the linear part of `x sigma`.
pub fn period(g: &AffineWeylGroup, x: &Element) -> usize {
    g.twisted_linear_part(x)
        .order(10_000)
        .expect("linear part of finite order")
}

/// `nu = (1/n) sum_{i<n} L^i lambda` with `L` the linear part of `x sigma`.
pub fn newton_vector(g: &AffineWeylGroup, x: &Element) -> RatVector {
    let l = g.twisted_linear_part(x);
    let n = l.order(10_000).expect("finite order");
    let mut acc = vec![0i64; g.rank()];
    let mut cur = x.translation_part().clone();
    for _ in 0..n {
        acc = linalg::add(&acc, &cur);
        cur = l.apply(&cur);
    }
    linalg::scale(&Rational::new(1, n as i64), &linalg::to_rational(&acc))
}

pub fn newton_point(g: &AffineWeylGroup, x: &Element) -> NewtonDatum {
    let l = g.twisted_linear_part(x);
    let n = l.order(10_000).expect("finite order");
    let nu = newton_vector(g, x);
    let (nu_dom, _) = dominant_representative(g.datum(), &nu);
    let lr = rational_matrix(&l);
    let a = lr.sub(&RatMatrix::identity(g.rank()));
    let rhs = linalg::sub(&nu, &linalg::to_rational(x.translation_part()));
    let sol = linalg::solve(&a, &rhs).expect("V_w is nonempty");
    NewtonDatum {
        nu,
        nu_dom,
        period: n,
        kappa: g.kottwitz_point(x),
        base: sol.particular,
        directions: sol.directions,
    }
}

pub fn dominant_newton_point(g: &AffineWeylGroup, x: &Element) -> RatVector {
    dominant_representative(g.datum(), &newton_vector(g, x)).0
}

/// `x sigma` acting on `V`.
pub fn twisted_action(g: &AffineWeylGroup, x: &Element, v: &[Rational]) -> RatVector {
    x.apply(&g.sigma().apply_rational(v))
}

/// Average of the `x sigma`-orbit of `v` over one period; lies in `V_w`.
pub fn orbit_average(g: &AffineWeylGroup, x: &Element, v: &[Rational]) -> RatVector {
    let n = period(g, x);
    let mut acc = vec![Rational::zero(); g.rank()];
    let mut cur = v.to_vec();
    for _ in 0..n {
        acc = linalg::add(&acc, &cur);
        cur = twisted_action(g, x, &cur);
    }
    linalg::scale(&Rational::new(1, n as i64), &acc)
}

pub fn two_rho_of(g: &AffineWeylGroup, v: &[Rational]) -> Rational {
    dot(&linalg::to_rational(g.datum().two_rho()), v)
}

pub fn is_straight(g: &AffineWeylGroup, x: &Element) -> bool {
    Rational::from_integer(g.length(x) as i64) == two_rho_of(g, &dominant_newton_point(g, x))
}

/// Whether some `x sigma`-linear-fixed cocharacter has centraliser root system exactly `levi`.
pub fn l_permissible(g: &AffineWeylGroup, x: &Element, levi: &[usize]) -> Result<bool> {
    let d = g.datum();
    if !crate::alcove::is_levi_subset(d, levi) {
        return Err(Error::NotLevi);
    }
    let l = g.twisted_linear_part(x);
    let mut set: Vec<usize> = levi.to_vec();
    set.sort_unstable();
    set.dedup();
    Ok(crate::alcove::facet_points(g, &set)
        .into_iter()
        .any(|v| {
            let avg = crate::alcove::linear_orbit_average(&l, &v);
            crate::alcove::zero_roots(d, &avg) == set
        }))
}

/// `|length((x sigma)^N sigma^{-N}) - N <2 rho, nu_bar>|`.
pub fn power_defect(g: &AffineWeylGroup, x: &Element, n: usize) -> Rational {
    let p = g.twisted_power(x, n);
    let lhs = Rational::from_integer(g.length(&p) as i64);
    let rhs = two_rho_of(g, &dominant_newton_point(g, x)) * Rational::from_integer(n as i64);
    let d = lhs - rhs;
    if d < Rational::zero() {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn translation_newton_point() {
        let g = AffineWeylGroup::from_key("GL3").unwrap();
        let x = Element::translation(vec![2, -1, 0]);
        let nd = newton_point(&g, &x);
        assert_eq!(nd.period, 1);
        assert_eq!(nd.nu, vec![q(2, 1), q(-1, 1), q(0, 1)]);
        assert_eq!(nd.nu_dom, vec![q(2, 1), q(0, 1), q(-1, 1)]);
        assert_eq!(nd.directions.len(), 3);
    }

    #[test]
    fn gl2_tau() {
        let g = AffineWeylGroup::from_key("GL2").unwrap();
        let tau = Element::translation(vec![0, 1]).mul(g.simple_element(0));
        let nd = newton_point(&g, &tau);
        assert_eq!(nd.period, 2);
        assert_eq!(nd.nu, vec![q(1, 2), q(1, 2)]);
        assert!(is_straight(&g, &tau));
        assert!(!is_straight(&g, g.simple_element(0)));
        assert!(is_straight(&g, &Element::translation(vec![1, 0])));
    }

    #[test]
    fn v_space_is_stable() {
        let g = AffineWeylGroup::from_key("SL3@2").unwrap();
        let x = g.simple_element(0).mul(g.simple_element(2));
        let nd = newton_point(&g, &x);
        let img = twisted_action(&g, &x, &nd.base);
        assert_eq!(img, linalg::add(&nd.base, &nd.nu));
        let v = vec![q(1, 3), q(-2, 7)];
        assert!(nd.contains(&orbit_average(&g, &x, &v)));
    }

    #[test]
    fn permissible_examples() {
        let g = AffineWeylGroup::from_key("GL2").unwrap();
        let all: Vec<usize> = (0..g.datum().num_roots()).collect();
        let s = g.simple_element(0).clone();
        assert!(l_permissible(&g, &s, &all).unwrap());
        assert!(!l_permissible(&g, &s, &[]).unwrap());
        assert!(l_permissible(&g, &Element::translation(vec![1, 0]), &[]).unwrap());
    }

    #[test]
    fn json_uses_fraction_strings() {
        let g = AffineWeylGroup::from_key("GL2").unwrap();
        let tau = Element::translation(vec![0, 1]).mul(g.simple_element(0));
        let j = newton_point(&g, &tau).to_json();
        assert_eq!(j["nu"][0], "1/2");
    }
}
