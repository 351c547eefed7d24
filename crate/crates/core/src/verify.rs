//! Property suites over enumerated elements. Each suite returns a report with
//! one entry per property and the counterexamples found.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::affine::{affine_reflection, AffineRoot, AffineWeylGroup, Element, TieBreak};
use crate::alcove::{
    is_p_alcove, parabolic_pairs, relative_length_on, stable_v_data, VDatum,
};
use crate::classifier::{
    factorization_criterion, levi_criterion, is_fundamental, is_gl_fundamental, is_k_fundamental, is_minuscule,
    minuscule_report, x_part, Variant,
};
use crate::enumerate::enumerate_elements;
use crate::error::{Error, Result};
use crate::expr::format_element;
use crate::linalg;
use crate::newton::{
    dominant_newton_point, is_straight, newton_point, newton_vector, orbit_average, power_defect,
    two_rho_of,
};
use crate::oracle;
use crate::reduction::{
    certificate_violations, conjugation_closure, group_straight, preserving_class, reachable,
    reduce_to_minimal, straight_decomposition, Generators,
};
use crate::{vector_string, Rational};

pub const SUITES: [&str; 8] = [
    "fund-equivalence",
    "min-certificates",
    "kf-criteria",
    "straight-classes",
    "minuscule",
    "reduction-steps",
    "oracles",
    "newton-bound",
];

/// Stored counterexamples per property.
const MAX_EXAMPLES: usize = 10;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_len: usize,
    /// Reduction-step checks are repeated on random elements up to this length.
    pub sample_len: Option<usize>,
    pub samples: usize,
    pub omega_window: usize,
    /// Extra length allowed in conjugation searches.
    pub slack: usize,
    pub seed: u64,
    pub mu: Vec<Vec<i64>>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_len: 6,
            sample_len: None,
            samples: 1000,
            omega_window: 1,
            slack: 2,
            seed: 0x5eed,
            mu: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub count: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub datum: String,
    pub max_len: usize,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "datum": self.datum,
            "max_len": self.max_len,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "count": c.count,
                "counterexamples": c.counterexamples,
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }

    pub fn csv_rows(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{},{},{},{},{},{}",
                    self.suite,
                    self.datum,
                    c.name,
                    c.passed,
                    c.count,
                    c.counterexamples.join(" | ").replace(',', ";")
                )
            })
            .collect()
    }
}

pub const REPORT_CSV_HEADER: &str = "suite,datum,check,passed,count,counterexamples";

/// Accumulates one property: how many instances were tested and which failed.
struct Tally {
    name: String,
    count: usize,
    failures: usize,
    examples: Vec<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            count: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    fn merge(&mut self, outcomes: Vec<(bool, String)>) {
        for (ok, d) in outcomes {
            self.record(ok, || d);
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            passed: self.failures == 0,
            count: self.count,
            counterexamples: self.examples,
        }
    }
}

fn lit(g: &AffineWeylGroup, x: &Element) -> String {
    format_element(g, x)
}

/// Runs `f` on each element in parallel and returns outcomes in input order.
fn par_check<T, F>(items: &[T], f: F) -> Vec<(bool, String)>
where
    T: Sync,
    F: Fn(&T) -> Vec<(bool, String)> + Sync,
{
    items.par_iter().map(|x| f(x)).collect::<Vec<_>>().into_iter().flatten().collect()
}

pub fn random_element(g: &AffineWeylGroup, rng: &mut StdRng, max_len: usize, omega_window: usize) -> Element {
    let omegas = g.omega_elements(omega_window);
    let mut x = omegas[rng.gen_range(0..omegas.len())].clone();
    let n = g.simple_affine_reflections().len();
    let target = rng.gen_range(0..=max_len);
    let mut len = 0;
    let mut tries = 0;
    while len < target && tries < 8 * max_len + 8 {
        let y = g.simple_element(rng.gen_range(0..n)).mul(&x);
        let l = g.length(&y);
        if l == len + 1 {
            x = y;
            len = l;
        }
        tries += 1;
    }
    x
}

fn random_group_element(g: &AffineWeylGroup, rng: &mut StdRng, max_len: usize, omega_window: usize) -> Element {
    let n = g.simple_affine_reflections().len();
    let k = rng.gen_range(0..=max_len);
    let omegas = g.omega_elements(omega_window);
    let mut x = omegas[rng.gen_range(0..omegas.len())].clone();
    for _ in 0..k {
        x = x.mul(g.simple_element(rng.gen_range(0..n)));
    }
    x
}

fn sampled_elements(g: &AffineWeylGroup, cfg: &VerifyConfig) -> Vec<Element> {
    match cfg.sample_len {
        Some(l) if l > cfg.max_len => {
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0xa11ce);
            let mut v: Vec<Element> = (0..cfg.samples.min(300))
                .map(|_| random_element(g, &mut rng, l, cfg.omega_window))
                .filter(|x| g.length(x) > cfg.max_len)
                .collect();
            v.sort();
            v.dedup();
            v
        }
        _ => Vec::new(),
    }
}

pub fn run_suite(name: &str, g: &AffineWeylGroup, cfg: &VerifyConfig) -> Result<Report> {
    let elements = enumerate_elements(g, cfg.max_len, cfg.omega_window);
    let (checks, notes) = match name {
        "fund-equivalence" => fund_equivalence(g, &elements),
        "min-certificates" => min_certificates(g, &elements),
        "kf-criteria" => kf_criteria(g, &elements),
        "straight-classes" => straight_classes(g, &elements, cfg),
        "minuscule" => minuscule(g, cfg)?,
        "reduction-steps" => {
            let mut all = elements.clone();
            all.extend(sampled_elements(g, cfg));
            reduction_steps(g, &all, cfg)
        }
        "oracles" => oracles(g, &elements, cfg),
        "newton-bound" => newton_bound(g, &elements, cfg),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(Report {
        suite: name.to_string(),
        datum: g.key().to_string(),
        max_len: cfg.max_len,
        checks,
        notes,
    })
}

type SuiteOutput = (Vec<CheckResult>, Vec<String>);

fn fund_equivalence(g: &AffineWeylGroup, elements: &[Element]) -> SuiteOutput {
    let results: Vec<(bool, bool, bool)> = elements
        .par_iter()
        .map(|x| {
            let r = is_fundamental(g, x);
            let on_input = r.witness.as_ref().is_some_and(|w| w.on_input);
            (r.straight, r.witness.is_some(), on_input)
        })
        .collect();
    let mut t = Tally::new("witness-iff-straight");
    let mut on_input = 0;
    for (x, &(s, w, o)) in elements.iter().zip(&results) {
        t.record(s == w, || format!("{} straight={s} witness={w}", lit(g, x)));
        on_input += usize::from(o);
    }
    let straight = results.iter().filter(|r| r.0).count();
    let notes = vec![format!(
        "{straight} straight elements; {on_input} witnessed on the element itself"
    )];
    (vec![t.finish()], notes)
}

fn min_certificates(g: &AffineWeylGroup, elements: &[Element]) -> SuiteOutput {
    let outcomes: Vec<(bool, String, Option<Option<bool>>)> = elements
        .par_iter()
        .map(|x| match straight_decomposition(g, x) {
            Ok(c) => {
                let bad = certificate_violations(g, x, &c);
                (bad.is_empty(), format!("{}: {}", lit(g, x), bad.join(", ")), Some(c.regular_point))
            }
            Err(e) => (false, format!("{}: {e}", lit(g, x)), None),
        })
        .collect();
    let mut t = Tally::new("certificate-invariants");
    let (mut regular, mut irregular, mut missing) = (0, 0, 0);
    for (ok, d, reg) in outcomes {
        match reg {
            Some(Some(true)) => regular += 1,
            Some(Some(false)) => irregular += 1,
            Some(None) => missing += 1,
            None => {}
        }
        t.record(ok, || d);
    }

    let paths = par_check(elements, |x| {
        let inv = |e: &Element| (dominant_newton_point(g, e), g.kottwitz_point(e));
        let here = inv(x);
        let mut out = Vec::new();
        for (m, path) in reduce_to_minimal(g, x, Generators::Affine) {
            let steps_ok = path.iter().all(|st| inv(&st.from) == here && inv(&st.to) == here);
            out.push((steps_ok, format!("path {} -> {}", lit(g, x), lit(g, &m))));
            let fund = factorization_criterion(g, &m, Variant::GL).is_some();
            out.push((fund, format!("minimal {} from {}", lit(g, &m), lit(g, x))));
        }
        out
    });
    let mut t_path = Tally::new("paths-preserve-invariants");
    let mut t_min = Tally::new("minimal-elements-gl-fundamental");
    for (i, (ok, d)) in paths.into_iter().enumerate() {
        if i % 2 == 0 {
            t_path.record(ok, || d);
        } else {
            t_min.record(ok, || d);
        }
    }
    let notes = vec![format!(
        "V_w' meets the closed base alcove in a regular point for {regular} certificates, \
         only in wall points for {irregular}, not at all for {missing}"
    )];
    (vec![t.finish(), t_path.finish(), t_min.finish()], notes)
}

fn kf_criteria(g: &AffineWeylGroup, elements: &[Element]) -> SuiteOutput {
    let per: Vec<Vec<(usize, bool, String)>> = elements
        .par_iter()
        .map(|x| {
            let l = lit(g, x);
            let mut out = Vec::new();
            let k = is_k_fundamental(g, x);
            let gl = is_gl_fundamental(g, x);
            out.push((0, k.is_ok(), format!("{l}: {:?}", k.as_ref().err())));
            out.push((1, gl.is_ok(), format!("{l}: {:?}", gl.as_ref().err())));
            let y = x_part(g, x);
            let nu = newton_vector(g, x);
            let zero = crate::alcove::zero_roots(g.datum(), &nu);
            let lnu = relative_length_on(g, x, &zero).unwrap_or(usize::MAX);
            let ok = g.length(x) >= g.length(&y) + lnu;
            out.push((2, ok, format!("{l}: {} < {} + {lnu}", g.length(x), g.length(&y))));
            if let (Ok(k), Ok(gl)) = (&k, &gl) {
                out.push((3, !*k || *gl, format!("{l}: K but not G(L)")));
                if is_straight(g, x) {
                    out.push((4, *k && *gl, format!("{l}: straight but k={k} gl={gl}")));
                }
            }
            out
        })
        .collect();
    let names = [
        "criteria-agree-K",
        "criteria-agree-GL",
        "length-inequality",
        "K-implies-GL",
        "straight-implies-both",
    ];
    let mut tallies: Vec<Tally> = names.iter().map(|n| Tally::new(n)).collect();
    let (mut kc, mut glc) = (0, 0);
    for (x, v) in elements.iter().zip(per) {
        for (i, ok, d) in v {
            tallies[i].record(ok, || d);
        }
        if factorization_criterion(g, x, Variant::K).is_some() {
            kc += 1;
        }
        if factorization_criterion(g, x, Variant::GL).is_some() {
            glc += 1;
        }
    }
    let notes = vec![format!("{kc} K-fundamental, {glc} G(L)-fundamental of {}", elements.len())];
    (tallies.into_iter().map(Tally::finish).collect(), notes)
}

fn straight_classes(g: &AffineWeylGroup, elements: &[Element], cfg: &VerifyConfig) -> SuiteOutput {
    let straight: Vec<Element> = elements.iter().filter(|x| is_straight(g, x)).cloned().collect();
    let omegas = if g.omega_is_finite() {
        g.omega_elements(0)
    } else {
        g.omega_generators()
    };
    let cap = cfg.max_len + cfg.slack;
    let classes = group_straight(g, &straight, &omegas, cap);
    let mut within = Tally::new("invariants-constant-on-groups");
    let mut across = Tally::new("distinct-groups-distinct-invariants");
    let mut by_inv: BTreeMap<(Vec<Rational>, Vec<i64>), Vec<usize>> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        for m in &c.members {
            let ok = dominant_newton_point(g, m) == c.nu_bar && g.kottwitz_point(m) == c.kappa;
            within.record(ok, || format!("{} vs {}", lit(g, m), lit(g, &c.representative)));
        }
        by_inv
            .entry((c.nu_bar.clone(), c.kappa.coords.clone()))
            .or_default()
            .push(i);
    }
    for ((nu, kappa), ids) in &by_inv {
        across.record(ids.len() == 1, || {
            let reps: Vec<String> = ids.iter().map(|&i| lit(g, &classes[i].representative)).collect();
            format!(
                "nu={} kappa={kappa:?} split into {} groups at cap {cap}: {}",
                vector_string(nu),
                ids.len(),
                reps.join(" ")
            )
        });
    }
    let notes = vec![format!(
        "{} straight elements in {} groups, conjugation cap {cap}",
        straight.len(),
        classes.len()
    )];
    (vec![within.finish(), across.finish()], notes)
}

/// Dominant minuscule cocharacters with coordinates in `{-1, 0, 1}`.
pub fn default_minuscule(g: &AffineWeylGroup) -> Vec<Vec<i64>> {
    let r = g.rank();
    let mut out = Vec::new();
    let total = 3usize.pow(r as u32);
    for code in 0..total {
        let mut c = code;
        let mu: Vec<i64> = (0..r)
            .map(|_| {
                let v = (c % 3) as i64 - 1;
                c /= 3;
                v
            })
            .collect();
        if is_minuscule(g, &mu) && g.datum().is_dominant(&linalg::to_rational(&mu)) {
            out.push(mu);
        }
    }
    out.sort();
    out
}

fn minuscule(g: &AffineWeylGroup, cfg: &VerifyConfig) -> Result<SuiteOutput> {
    let mus = if cfg.mu.is_empty() {
        default_minuscule(g)
    } else {
        cfg.mu.clone()
    };
    let mut t = Tally::new("dominates-straight-conjugate");
    let mut notes = Vec::new();
    for mu in &mus {
        let rep = minuscule_report(g, mu, cfg.slack)?;
        notes.push(format!(
            "mu={mu:?}: {}/{} rows succeed",
            rep.rows.iter().filter(|r| r.bruhat_ok).count(),
            rep.rows.len()
        ));
        for row in &rep.rows {
            t.record(row.bruhat_ok, || format!("mu={mu:?}: {}", lit(g, &row.element)));
        }
    }
    Ok((vec![t.finish()], notes))
}

fn reflections_fixing(g: &AffineWeylGroup, v: &[Rational], window: i64) -> Vec<Element> {
    let d = g.datum();
    let mut out = Vec::new();
    for i in d.positive_indices() {
        if d.pair(i, v) == Rational::from_integer(0) {
            for k in -window..=window {
                out.push(affine_reflection(d, i, k));
            }
        }
    }
    out
}

fn reduction_steps(g: &AffineWeylGroup, elements: &[Element], cfg: &VerifyConfig) -> SuiteOutput {
    let d = g.datum();
    let n = g.simple_affine_reflections().len();
    let window = 3;

    let length = par_check(elements, |x| {
        let mut out = Vec::new();
        for vd in stable_v_data(g, x) {
            let here = is_p_alcove(g, x, &vd);
            for s in reflections_fixing(g, &vd.v, window) {
                let sx = s.mul(x);
                if g.length(&sx) == g.length(x) + 1 {
                    let there = is_p_alcove(g, &sx, &vd);
                    out.push((here == there, format!("{} v={}", lit(g, x), vector_string(&vd.v))));
                }
            }
        }
        out
    });

    let (fa, fb): (Vec<_>, Vec<_>) = elements
        .par_iter()
        .map(|x| {
            let mut a = Vec::new();
            let mut b = Vec::new();
            let lx = g.length(x);
            for vd in stable_v_data(g, x).into_iter().filter(|vd| is_p_alcove(g, x, vd)) {
                for s in 0..n {
                    let y = g.sigma_conjugate_simple(x, s);
                    let ly = g.length(&y);
                    let sbar = g.simple_element(s).finite_part();
                    let desc = || format!("{} s{} v={}", lit(g, x), g.literal_index(s), vector_string(&vd.v));
                    if ly == lx {
                        let moved = VDatum::new(d, sbar.apply_rational(&vd.v));
                        a.push((is_p_alcove(g, &y, &moved), desc()));
                    } else if ly < lx {
                        let fixed = sbar.apply_rational(&vd.v) == vd.v;
                        let xs = x.mul(&g.apply_sigma(g.simple_element(s)));
                        let ok = fixed && is_p_alcove(g, &y, &vd) && is_p_alcove(g, &xs, &vd);
                        b.push((ok, desc()));
                    }
                }
            }
            (a, b)
        })
        .unzip();

    // the pair points themselves exercise every facet
    let points: Vec<Vec<Rational>> = parabolic_pairs(g).iter().map(|p| p.point.clone()).collect();
    let p0 = oracle::interior_point(g);
    let change = par_check(&points, |v| {
        let mut out = Vec::new();
        let vd = VDatum::new(d, v.clone());
        for s in 0..n {
            let sx = g.simple_element(s);
            let sv = sx.finite_part().apply_rational(v);
            if &sv == v {
                continue;
            }
            let target = VDatum::new(d, sv.clone());
            let mut ok = true;
            for &root in vd.zero.iter() {
                for level in -window..=window {
                    let a = AffineRoot { root, level };
                    if a.is_positive(d) {
                        let img = a.act(d, sx);
                        ok &= img.is_positive(d) && target.zero.contains(&img.root);
                    }
                }
            }
            // s(p0) lies in the alcove of Phi_{s v}
            let q = sx.apply(&p0);
            ok &= target.zero.iter().filter(|&&b| d.is_positive(b)).all(|&b| {
                let val = d.pair(b, &q);
                val > Rational::from_integer(-1) && val < Rational::from_integer(0)
            });
            out.push((ok, format!("v={} s{}", vector_string(v), g.literal_index(s))));
        }
        out
    });

    let gl_fund: Vec<bool> = elements
        .par_iter()
        .map(|x| factorization_criterion(g, x, Variant::GL).is_some())
        .collect();
    let k_fund: Vec<bool> = elements
        .par_iter()
        .map(|x| factorization_criterion(g, x, Variant::K).is_some())
        .collect();
    let idx: Vec<usize> = (0..elements.len()).collect();
    let red = par_check(&idx, |&i| {
        let x = &elements[i];
        let mut out = Vec::new();
        if !gl_fund[i] {
            return out;
        }
        let lx = g.length(x);
        let nu = newton_vector(g, x);
        for s in 0..n {
            let y = g.sigma_conjugate_simple(x, s);
            if g.length(&y) < lx {
                let sbar = g.simple_element(s).finite_part();
                let xs = x.mul(&g.apply_sigma(g.simple_element(s)));
                let nxs = newton_vector(g, &xs);
                let ok = sbar.apply_rational(&nu) == nu && sbar.apply_rational(&nxs) == nxs;
                out.push((ok, format!("{} s{}", lit(g, x), g.literal_index(s))));
            }
        }
        out
    });

    let closure = par_check(&idx, |&i| {
        let x = &elements[i];
        let mut out = Vec::new();
        let lx = g.length(x);
        for (fund, variant, positions) in [
            (gl_fund[i], Variant::GL, (0..n).collect::<Vec<_>>()),
            (k_fund[i], Variant::K, g.finite_simple_positions()),
        ] {
            if !fund {
                continue;
            }
            for &s in &positions {
                let y = g.sigma_conjugate_simple(x, s);
                let ly = g.length(&y);
                let desc = || format!("{} s{} {variant:?}", lit(g, x), g.literal_index(s));
                if ly == lx {
                    out.push((factorization_criterion(g, &y, variant).is_some(), desc()));
                } else if ly < lx {
                    let xs = x.mul(&g.apply_sigma(g.simple_element(s)));
                    let ok = factorization_criterion(g, &y, variant).is_some() && factorization_criterion(g, &xs, variant).is_some();
                    out.push((ok, desc()));
                }
            }
        }
        out
    });

    let weyl: Vec<Element> = g
        .finite_weyl_group()
        .iter()
        .map(|w| Element::from_weyl(w.clone()))
        .collect();
    let finite = g.finite_simple_positions();
    let support_normalized = par_check(elements, |x| {
        let mut out = Vec::new();
        let lx = g.length(x);
        if finite.iter().any(|&s| g.length(&g.simple_element(s).mul(x)) < lx) {
            return out;
        }
        for w in &weyl {
            if w.mul(x) != x.mul(&g.apply_sigma(w)) {
                continue;
            }
            let mut supp: Vec<usize> = w.finite_part().reduced_word(d);
            supp.sort_unstable();
            supp.dedup();
            let sig: Vec<usize> = supp.iter().map(|&s| g.sigma_simple(s)).collect();
            let xi = x.inverse();
            let img: HashSet<Element> = sig
                .iter()
                .map(|&s| x.mul(g.simple_element(s)).mul(&xi))
                .collect();
            let j: HashSet<Element> = supp.iter().map(|&s| g.simple_element(s).clone()).collect();
            out.push((img == j, format!("{} w={}", lit(g, x), lit(g, w))));
        }
        out
    });

    let bruhat = bruhat_straight_below(g, elements, cfg);

    let mut checks = Vec::new();
    for (name, outcomes) in [
        ("alcove-wall-step", length),
        ("alcove-equal-length-conjugation", fa.into_iter().flatten().collect()),
        ("alcove-length-descent", fb.into_iter().flatten().collect()),
        ("facet-change", change),
        ("descent-fixes-newton", red),
        ("descent-preserves-fundamental", closure),
        ("support-normalized", support_normalized),
        ("bruhat-straight-below", bruhat),
    ] {
        let mut t = Tally::new(name);
        t.merge(outcomes);
        checks.push(t.finish());
    }
    (checks, Vec::new())
}

fn bruhat_straight_below(g: &AffineWeylGroup, elements: &[Element], cfg: &VerifyConfig) -> Vec<(bool, String)> {
    par_check(elements, |w| {
        let mut out = Vec::new();
        let lw = g.length(w);
        let lower: HashSet<Element> = g.bruhat_lower_set(w).into_iter().collect();
        let class = preserving_class(g, w, Generators::Affine);
        let mut done: HashSet<Element> = HashSet::new();
        let mut members: Vec<&Element> = class.elements().collect();
        members.sort();
        for wp in members {
            for x in g.bruhat_lower_set(wp) {
                if !done.insert(x.clone()) {
                    continue;
                }
                if lower.contains(&x) {
                    out.push((true, String::new()));
                    continue;
                }
                let lx = g.length(&x);
                let conj = conjugation_closure(g, &x, &[], lw + cfg.slack);
                let ok = conj.iter().any(|y| g.length(y) <= lx && lower.contains(y));
                out.push((ok, format!("w={} w'={} x={}", lit(g, w), lit(g, wp), lit(g, &x))));
            }
        }
        out
    })
}

fn oracles(g: &AffineWeylGroup, elements: &[Element], cfg: &VerifyConfig) -> SuiteOutput {
    let d = g.datum();
    let window = (cfg.max_len as i64) + 2;
    let basic = par_check(elements, |x| {
        let l = g.length(x);
        let m = g.m_all(x);
        let word = g.reduced_word(x);
        let alt = g.reduced_word_with(x, TieBreak::Largest);
        vec![
            (l == oracle::length_oracle(g, x), format!("length {}", lit(g, x))),
            (m == oracle::sampled_m_vector(g, x), format!("m-vector {}", lit(g, x))),
            (l == oracle::inversion_count(g, x, window), format!("inversions {}", lit(g, x))),
            (
                word.letters.len() == l && g.word_product(&word) == *x && g.word_product(&alt) == *x,
                format!("reduced word {}", lit(g, x)),
            ),
            (
                newton_vector(g, x) == oracle::newton_vector_oracle(g, x),
                format!("newton {}", lit(g, x)),
            ),
        ]
    });
    let mut tallies: Vec<Tally> = ["length", "m-vector-sampling", "inversion-count", "reduced-word", "newton-vector"]
        .iter()
        .map(|n| Tally::new(n))
        .collect();
    for (i, o) in basic.into_iter().enumerate() {
        tallies[i % 5].record(o.0, || o.1);
    }

    let rel = par_check(elements, |x| {
        stable_v_data(g, x)
            .into_iter()
            .map(|vd| {
                let a = relative_length_on(g, x, &vd.zero).ok();
                let b = oracle::relative_inversion_count(g, x, &vd.zero, window);
                (a == Some(b), format!("{} v={}", lit(g, x), vector_string(&vd.v)))
            })
            .collect()
    });
    let mut t_rel = Tally::new("relative-length");
    t_rel.merge(rel);

    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let pool: Vec<&Element> = elements
        .iter()
        .filter(|e| g.length(e) <= oracle::BRUHAT_GUARD)
        .collect();
    let pairs: Vec<(Element, Element)> = (0..cfg.samples)
        .map(|k| {
            let y = pool[rng.gen_range(0..pool.len())].clone();
            // half the pairs drawn below y so that both answers occur
            let x = if k % 2 == 0 {
                let lower = g.bruhat_lower_set(&y);
                lower[rng.gen_range(0..lower.len())].clone()
            } else {
                pool[rng.gen_range(0..pool.len())].clone()
            };
            (x, y)
        })
        .collect();
    let br = par_check(&pairs, |(x, y)| {
        let a = g.bruhat_leq(x, y);
        let b = oracle::bruhat_oracle(g, x, y);
        let c = g.bruhat_lower_set(y).contains(x);
        vec![(b == Ok(a) && a == c, format!("{} <= {}", lit(g, x), lit(g, y)))]
    });
    let mut t_br = Tally::new("bruhat");
    t_br.merge(br);

    let omegas = if g.omega_is_finite() {
        g.omega_elements(0)
    } else {
        g.omega_generators()
    };
    let reach = par_check(elements, |x| {
        let r = reachable(g, x, Generators::Affine);
        let cap = g.length(x);
        let o = oracle::class_bfs_oracle(g, x, &omegas, cap);
        let ok = r.elements().all(|e| o.contains(e));
        vec![(ok, lit(g, x))]
    });
    let mut t_reach = Tally::new("reachability-in-class-oracle");
    t_reach.merge(reach);

    let mut checks: Vec<CheckResult> = tallies.into_iter().map(Tally::finish).collect();
    checks.push(t_rel.finish());
    checks.push(t_br.finish());
    checks.push(t_reach.finish());
    let _ = d;
    (checks, Vec::new())
}

fn newton_bound(g: &AffineWeylGroup, elements: &[Element], cfg: &VerifyConfig) -> SuiteOutput {
    let outcomes = par_check(elements, |x| {
        let l = Rational::from_integer(g.length(x) as i64);
        let nu_bar = dominant_newton_point(g, x);
        let lower = two_rho_of(g, &nu_bar);
        let mut out = vec![(l >= lower, format!("bound {}", lit(g, x)))];
        let straight = l == lower;
        let period = newton_point(g, x).period;
        let mut add = true;
        let mut bounded = true;
        for n in 1..=12usize {
            let defect = power_defect(g, x, n);
            if straight && defect != Rational::from_integer(0) {
                add = false;
            }
            // a translation at multiples of the period, at most r excess steps otherwise
            if defect > (l - lower) * Rational::from_integer((n % period) as i64) {
                bounded = false;
            }
        }
        out.push((add, format!("additivity {}", lit(g, x))));
        out.push((bounded, format!("defect {}", lit(g, x))));
        if straight {
            let per = newton_point(g, x).period;
            let lim = oracle::newton_limit_oracle(g, x, per * g.sigma().order());
            out.push((lim == l, format!("limit {}", lit(g, x))));
        } else {
            out.push((true, String::new()));
        }
        let nd = newton_point(g, x);
        let mut rng = StdRng::seed_from_u64(cfg.seed ^ (g.length(x) as u64));
        let mut vs = true;
        for _ in 0..20 {
            let v: Vec<Rational> = (0..g.rank())
                .map(|_| Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=7)))
                .collect();
            vs &= nd.contains(&orbit_average(g, x, &v));
        }
        let img = crate::newton::twisted_action(g, x, &nd.base);
        vs &= img == linalg::add(&nd.base, &nd.nu);
        out.push((vs, format!("v-space {}", lit(g, x))));
        out
    });
    let names = ["lower-bound", "straight-additivity", "defect-bounded", "limit-oracle", "v-space"];
    let mut tallies: Vec<Tally> = names.iter().map(|n| Tally::new(n)).collect();
    for (i, o) in outcomes.into_iter().enumerate() {
        tallies[i % 5].record(o.0, || o.1);
    }

    // invariance of (nu_bar, kappa) under random sigma-conjugation
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0xc0de);
    let mut inv = Tally::new("conjugation-invariance");
    let sample: Vec<&Element> = elements.iter().take(400).collect();
    let gs: Vec<Element> = (0..50)
        .map(|_| random_group_element(g, &mut rng, 8, cfg.omega_window))
        .collect();
    let res = par_check(&sample, |x| {
        let nb = dominant_newton_point(g, x);
        let k = g.kottwitz_point(x);
        gs.iter()
            .map(|h| {
                let y = g.sigma_conjugate(h, x);
                (
                    dominant_newton_point(g, &y) == nb && g.kottwitz_point(&y) == k,
                    format!("{} by {}", lit(g, x), lit(g, h)),
                )
            })
            .collect()
    });
    inv.merge(res);
    let mut checks: Vec<CheckResult> = tallies.into_iter().map(Tally::finish).collect();
    checks.push(inv.finish());
    (checks, Vec::new())
}

/// Levi criterion outcome counts, for reports.
pub fn levi_criterion_summary(g: &AffineWeylGroup, elements: &[Element]) -> HashMap<&'static str, usize> {
    let mut m = HashMap::new();
    for x in elements {
        let key = match levi_criterion(g, x, Variant::GL) {
            Ok(crate::classifier::LeviOutcome::Delegated(_)) => "delegated",
            Ok(crate::classifier::LeviOutcome::NotPAlcove) => "not-p-alcove",
            Ok(crate::classifier::LeviOutcome::Levi(_)) => "levi",
            Err(_) => "error",
        };
        *m.entry(key).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        let g = AffineWeylGroup::from_key("SL2").unwrap();
        assert_eq!(
            run_suite("nope", &g, &VerifyConfig::default()),
            Err(Error::UnknownSuite("nope".into()))
        );
    }

    #[test]
    fn small_suites_pass() {
        let g = AffineWeylGroup::from_key("SL2").unwrap();
        let cfg = VerifyConfig {
            max_len: 4,
            samples: 50,
            ..VerifyConfig::default()
        };
        for s in SUITES {
            let r = run_suite(s, &g, &cfg).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.to_json());
        }
    }

    #[test]
    fn default_minuscule_gl2() {
        let g = AffineWeylGroup::from_key("GL2").unwrap();
        let mus = default_minuscule(&g);
        assert!(mus.contains(&vec![1, 0]));
        assert!(mus.contains(&vec![0, 0]));
        assert!(!mus.contains(&vec![0, 1]));
    }
}
