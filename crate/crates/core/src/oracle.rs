//! Brute-force baselines. Nothing here calls the length, Bruhat or reduction
//! code it is meant to check.

use std::collections::{HashSet, VecDeque};

use num_traits::Zero;

use crate::affine::{AffineRoot, AffineWeylGroup, Element};
use crate::error::{Error, Result};
use crate::linalg;
use crate::root_datum::WeylElement;
use crate::{RatVector, Rational};

/// Largest `length(y)` accepted by [`bruhat_oracle`].
pub const BRUHAT_GUARD: usize = 14;

/// `-rho^vee / H` with `H` one more than the largest root height.
pub fn interior_point(g: &AffineWeylGroup) -> RatVector {
    let d = g.datum();
    let mut two_rho = vec![0i64; d.rank()];
    for i in 0..d.num_roots() {
        if d.is_positive(i) {
            two_rho = linalg::add(&two_rho, d.coroot(i));
        }
    }
    let rho = linalg::scale(&Rational::new(1, 2), &linalg::to_rational(&two_rho));
    let h = (0..d.num_roots())
        .map(|i| d.pair(i, &rho))
        .max()
        .unwrap_or_else(Rational::zero)
        + Rational::from_integer(1);
    linalg::scale(&(-Rational::from_integer(1) / h), &rho)
}

fn act(x: &Element, p: &[Rational]) -> RatVector {
    let w = x.finite_part().matrix();
    let mut out = linalg::to_rational(x.translation_part());
    for (r, slot) in out.iter_mut().enumerate() {
        for (c, pc) in p.iter().enumerate() {
            *slot += Rational::from_integer(w[(r, c)]) * pc;
        }
    }
    out
}

/// Integers strictly between `<alpha, p0>` and `<alpha, x p0>`, summed over positive roots.
pub fn length_oracle(g: &AffineWeylGroup, x: &Element) -> usize {
    let d = g.datum();
    let p0 = interior_point(g);
    let p1 = act(x, &p0);
    (0..d.num_roots())
        .filter(|&i| d.is_positive(i))
        .map(|i| {
            let a = d.pair(i, &p0).floor().to_integer();
            let b = d.pair(i, &p1).floor().to_integer();
            (b - a).unsigned_abs() as usize
        })
        .sum()
}

/// `floor(<alpha, x p0>)` for every root, which is `m_alpha(x Delta)`.
pub fn sampled_m_vector(g: &AffineWeylGroup, x: &Element) -> Vec<i64> {
    let d = g.datum();
    let p1 = act(x, &interior_point(g));
    (0..d.num_roots()).map(|i| d.pair(i, &p1).floor().to_integer()).collect()
}

fn positive_on_base(d: &crate::BasedRootDatum, a: &AffineRoot) -> bool {
    // alpha + k > 0 on Delta, where every positive root takes values in (-1, 0)
    if d.is_positive(a.root) {
        a.level >= 1
    } else {
        a.level >= 0
    }
}

/// Affine roots `a` with `|level| <= window`, positive on the base alcove and
/// negative on its image under `x`.
pub fn inversion_count(g: &AffineWeylGroup, x: &Element, window: i64) -> usize {
    let all: Vec<usize> = (0..g.datum().num_roots()).collect();
    relative_inversion_count(g, x, &all, window)
}

/// As [`inversion_count`], restricted to gradients in `zero`.
pub fn relative_inversion_count(g: &AffineWeylGroup, x: &Element, zero: &[usize], window: i64) -> usize {
    let d = g.datum();
    let xi = x.inverse();
    let mut n = 0;
    for &root in zero {
        for level in -window..=window {
            let a = AffineRoot { root, level };
            if positive_on_base(d, &a) && !positive_on_base(d, &a.act(d, &xi)) {
                n += 1;
            }
        }
    }
    n
}

fn left_descent_word(g: &AffineWeylGroup, x: &Element) -> (Vec<usize>, Element) {
    let mut cur = x.clone();
    let mut len = length_oracle(g, &cur);
    let mut word = Vec::new();
    while len > 0 {
        let (i, next, l) = g
            .simple_affine_reflections()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let n = s.element.mul(&cur);
                let l = length_oracle(g, &n);
                (i, n, l)
            })
            .find(|(_, _, l)| *l < len)
            .expect("descent exists");
        word.push(i);
        cur = next;
        len = l;
    }
    (word, cur)
}

/// Subword scan over one reduced word of `y`.
pub fn bruhat_oracle(g: &AffineWeylGroup, x: &Element, y: &Element) -> Result<bool> {
    let (word, omega) = left_descent_word(g, y);
    if word.len() > BRUHAT_GUARD {
        return Err(Error::CostGuard(format!(
            "length {} exceeds {BRUHAT_GUARD}",
            word.len()
        )));
    }
    let k = word.len();
    for mask in 0u32..(1 << k) {
        let mut p = omega.clone();
        for t in (0..k).rev() {
            if (mask >> t) & 1 == 1 {
                p = g.simple_element(word[t]).mul(&p);
            }
        }
        if &p == x {
            return Ok(true);
        }
    }
    Ok(false)
}

fn sigma_of(g: &AffineWeylGroup, x: &Element) -> Element {
    let s = g.sigma().matrix();
    let si = linalg::integer_inverse(s).expect("unimodular");
    Element::new(
        s.apply(x.translation_part()),
        WeylElement(s.mul(x.finite_part().matrix()).mul(&si)),
    )
}

/// Closure of `{x}` under every `s g sigma(s)` and `omega^{±1}`-twisted conjugation,
/// restricted to `length <= cap`.
pub fn class_bfs_oracle(g: &AffineWeylGroup, x: &Element, omegas: &[Element], cap: usize) -> HashSet<Element> {
    let mut conj: Vec<Element> = g
        .simple_affine_reflections()
        .iter()
        .map(|s| s.element.clone())
        .collect();
    for w in omegas {
        conj.push(w.clone());
        conj.push(w.inverse());
    }
    let mut seen = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(cur) = queue.pop_front() {
        for c in &conj {
            let y = c.inverse().mul(&cur).mul(&sigma_of(g, c));
            if !seen.contains(&y) && length_oracle(g, &y) <= cap {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `length((x sigma)^N sigma^{-N}) / N`.
pub fn newton_limit_oracle(g: &AffineWeylGroup, x: &Element, n: usize) -> Rational {
    let mut acc = Element::identity(g.rank());
    let mut cur = x.clone();
    for _ in 0..n {
        acc = acc.mul(&cur);
        cur = sigma_of(g, &cur);
    }
    Rational::new(length_oracle(g, &acc) as i64, n as i64)
}

/// Orbit-average Newton vector using the `n`-fold power, `n` any multiple of the period.
pub fn newton_vector_oracle(g: &AffineWeylGroup, x: &Element) -> RatVector {
    // (x sigma)^N sigma^{-N} is a translation once N kills both linear parts
    let mut n = 1usize;
    let mut acc = x.clone();
    let mut cur = sigma_of(g, x);
    let so = g.sigma().order();
    loop {
        if acc.finite_part().is_identity() && n % so == 0 {
            break;
        }
        acc = acc.mul(&cur);
        cur = sigma_of(g, &cur);
        n += 1;
    }
    linalg::scale(&Rational::new(1, n as i64), &linalg::to_rational(acc.translation_part()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let gl2 = AffineWeylGroup::from_key("GL2").unwrap();
        assert_eq!(length_oracle(&gl2, &gl2.identity()), 0);
        let tau = Element::translation(vec![0, 1]).mul(gl2.simple_element(0));
        assert_eq!(length_oracle(&gl2, &tau), 0);
        let sl2 = AffineWeylGroup::from_key("SL2").unwrap();
        assert_eq!(length_oracle(&sl2, sl2.simple_element(1)), 1);
        assert_eq!(newton_limit_oracle(&gl2, gl2.simple_element(0), 2), Rational::zero());
        assert_eq!(newton_limit_oracle(&gl2, &tau, 2), Rational::zero());
    }

    #[test]
    fn bruhat_oracle_examples() {
        let sl2 = AffineWeylGroup::from_key("SL2").unwrap();
        let s = sl2.simple_element(0).clone();
        let s0 = sl2.simple_element(1).clone();
        let y = s0.mul(&s).mul(&s0);
        assert_eq!(bruhat_oracle(&sl2, &s, &y), Ok(true));
        assert_eq!(bruhat_oracle(&sl2, &y, &s), Ok(false));
        assert_eq!(bruhat_oracle(&sl2, &y, &y), Ok(true));
        let long = Element::translation(vec![-8]);
        assert!(matches!(bruhat_oracle(&sl2, &s, &long), Err(Error::CostGuard(_))));
    }

    #[test]
    fn class_oracle_examples() {
        let gl2 = AffineWeylGroup::from_key("GL2").unwrap();
        let t = Element::translation(vec![1, 0]);
        let c = class_bfs_oracle(&gl2, &t, &[], 1);
        assert_eq!(c.len(), 2);
        assert!(c.contains(&Element::translation(vec![0, 1])));
        let sl2 = AffineWeylGroup::from_key("SL2").unwrap();
        let c = class_bfs_oracle(&sl2, sl2.simple_element(0), &[], 3);
        assert!(c.iter().all(|e| length_oracle(&sl2, e) >= 1));
    }

    #[test]
    fn newton_oracle_twisted() {
        let g = AffineWeylGroup::from_key("SL3@2").unwrap();
        let x = g.simple_element(0).mul(g.simple_element(2));
        assert_eq!(newton_vector_oracle(&g, &x), crate::newton::newton_vector(&g, &x));
    }
}
