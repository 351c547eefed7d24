//! Based root data over a fixed cocharacter lattice `X_* = Z^r`.
//!
//! Roots are stored as integer row vectors in the basis dual to the lattice
//! basis, coroots as integer column vectors in the lattice basis, so the
//! pairing is the ordinary dot product. The Weyl group acts on cocharacters
//! by integer matrices and on characters by `alpha -> alpha . w^{-1}`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, dot, integer_inverse, to_rational, Matrix};
use crate::{IntMatrix, IntVector, RatMatrix, RatVector, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// `X_*` is the coroot lattice.
    SimplyConnected,
    /// `X_*` is the coweight lattice.
    Adjoint,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n)
            | CartanType::B(n)
            | CartanType::C(n)
            | CartanType::D(n)
            | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Cartan matrix `A[i][j] = <alpha_i, alpha_j^vee>`, Bourbaki numbering.
    pub fn cartan_matrix(self) -> Result<Vec<Vec<i64>>> {
        let n = self.rank();
        let valid = match self {
            CartanType::A(n) => n >= 1,
            CartanType::B(n) | CartanType::C(n) => n >= 2,
            CartanType::D(n) => n >= 3,
            CartanType::E(n) => (6..=8).contains(&n),
            _ => true,
        };
        if !valid {
            return Err(Error::UnknownKey(format!("{self:?}")));
        }
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self {
            CartanType::A(n) => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            CartanType::B(n) => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                // alpha_n short
                link(n - 2, n - 1, -2, -1);
            }
            CartanType::C(n) => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                // alpha_n long
                link(n - 2, n - 1, -1, -2);
            }
            CartanType::D(n) => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            CartanType::E(n) => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            CartanType::F4 => {
                link(0, 1, -1, -1);
                link(1, 2, -2, -1);
                link(2, 3, -1, -1);
            }
            CartanType::G2 => link(0, 1, -1, -3),
        }
        Ok(a)
    }

    /// Order of the Weyl group from the product of the degrees.
    pub fn weyl_order(self) -> u64 {
        let fact = |n: u64| (1..=n).product::<u64>();
        match self {
            CartanType::A(n) => fact(n as u64 + 1),
            CartanType::B(n) | CartanType::C(n) => (1u64 << n) * fact(n as u64),
            CartanType::D(n) => (1u64 << (n - 1)) * fact(n as u64),
            CartanType::E(6) => 51_840,
            CartanType::E(7) => 2_903_040,
            CartanType::E(8) => 696_729_600,
            CartanType::E(_) => 0,
            CartanType::F4 => 1152,
            CartanType::G2 => 12,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasedRootDatum {
    label: String,
    rank: usize,
    roots: Vec<IntVector>,
    coroots: Vec<IntVector>,
    simple: Vec<usize>,
    gram: RatMatrix,
    #[serde(skip)]
    derived: Derived,
}

#[derive(Clone, Debug, Default)]
struct Derived {
    positive: Vec<bool>,
    heights: Vec<i64>,
    index: HashMap<IntVector, usize>,
    component: Vec<usize>,
    n_components: usize,
    two_rho_coroot: IntVector,
    two_rho: IntVector,
}

impl PartialEq for BasedRootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.roots == other.roots
            && self.coroots == other.coroots
            && self.simple == other.simple
    }
}

impl BasedRootDatum {
    /// Build and validate a datum from explicit data.
    pub fn from_parts(
        label: impl Into<String>,
        rank: usize,
        roots: Vec<IntVector>,
        coroots: Vec<IntVector>,
        simple: Vec<usize>,
        gram: RatMatrix,
    ) -> Result<Self> {
        let mut d = Self {
            label: label.into(),
            rank,
            roots,
            coroots,
            simple,
            gram,
            derived: Derived::default(),
        };
        d.derive()?;
        d.validate()?;
        Ok(d)
    }

    fn derive(&mut self) -> Result<()> {
        let bad = |m: &str| Error::InvalidDatum(m.to_string());
        if self.roots.len() != self.coroots.len() {
            return Err(bad("roots and coroots differ in number"));
        }
        if self
            .roots
            .iter()
            .chain(&self.coroots)
            .any(|v| v.len() != self.rank)
        {
            return Err(bad("vector length differs from rank"));
        }
        if self.gram.rows() != self.rank || self.gram.cols() != self.rank {
            return Err(bad("inner product has wrong shape"));
        }
        let mut index = HashMap::new();
        for (i, r) in self.roots.iter().enumerate() {
            if index.insert(r.clone(), i).is_some() {
                return Err(bad("repeated root"));
            }
        }
        if self.simple.iter().any(|&i| i >= self.roots.len()) {
            return Err(bad("simple index out of range"));
        }
        // coefficients in the simple roots
        let cols: Vec<RatVector> = self
            .simple
            .iter()
            .map(|&i| to_rational(&self.roots[i]))
            .collect();
        let mut positive = Vec::with_capacity(self.roots.len());
        let mut heights = Vec::with_capacity(self.roots.len());
        if !self.roots.is_empty() {
            if cols.is_empty() {
                return Err(bad("nonempty root system without simple roots"));
            }
            let basis = Matrix::from_cols(&cols);
            if linalg::rank(&basis) != cols.len() {
                return Err(bad("simple roots are linearly dependent"));
            }
            for r in &self.roots {
                let sol = linalg::solve(&basis, &to_rational(r))
                    .ok_or_else(|| bad("root outside the span of the simple roots"))?;
                let c = sol.particular;
                if !c.iter().all(|x| x.is_integer()) {
                    return Err(bad("root is not an integral combination of simple roots"));
                }
                let pos = c.iter().all(|x| !x.is_negative());
                let neg = c.iter().all(|x| !x.is_positive());
                if !pos && !neg {
                    return Err(bad("root with mixed-sign simple coefficients"));
                }
                positive.push(pos);
                heights.push(c.iter().map(|x| x.to_integer()).sum());
            }
        }
        // irreducible components: connected components of the non-orthogonality graph
        let n = self.roots.len();
        let mut component = vec![usize::MAX; n];
        let mut n_components = 0;
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            component[start] = n_components;
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if component[j] == usize::MAX && dot(&self.roots[i], &self.coroots[j]) != 0 {
                        component[j] = n_components;
                        queue.push_back(j);
                    }
                }
            }
            n_components += 1;
        }
        let mut two_rho_coroot = vec![0; self.rank];
        let mut two_rho = vec![0; self.rank];
        for i in 0..n {
            if positive[i] {
                two_rho_coroot = linalg::add(&two_rho_coroot, &self.coroots[i]);
                two_rho = linalg::add(&two_rho, &self.roots[i]);
            }
        }
        self.derived = Derived {
            positive,
            heights,
            index,
            component,
            n_components,
            two_rho_coroot,
            two_rho,
        };
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Error::InvalidDatum(m);
        for i in 0..self.roots.len() {
            if dot(&self.roots[i], &self.coroots[i]) != 2 {
                return Err(bad(format!("<alpha, alpha^vee> != 2 for root {i}")));
            }
            if self.root_index(&linalg::neg(&self.roots[i])).is_none() {
                return Err(bad(format!("negative of root {i} missing")));
            }
        }
        for i in 0..self.roots.len() {
            for j in 0..self.roots.len() {
                let img = self.reflect_root(i, j);
                match self.root_index(&img) {
                    Some(k) => {
                        let co = linalg::sub(
                            &self.coroots[j],
                            &linalg::scale(&dot(&self.roots[i], &self.coroots[j]), &self.coroots[i]),
                        );
                        if co != self.coroots[k] {
                            return Err(bad(format!("coroot closure fails at ({i},{j})")));
                        }
                    }
                    None => return Err(bad(format!("reflection closure fails at ({i},{j})"))),
                }
            }
        }
        // sign of simple roots
        if self.simple.iter().any(|&i| !self.derived.positive[i]) {
            return Err(bad("simple root not positive".into()));
        }
        self.validate_gram()
    }

    fn validate_gram(&self) -> Result<()> {
        let bad = |m: String| Error::InvalidDatum(m);
        let g = &self.gram;
        if *g != g.transpose() {
            return Err(bad("inner product not symmetric".into()));
        }
        for i in 0..self.roots.len() {
            let s = self.reflection_matrix(i).map(|&x| Rational::from_integer(x));
            let moved = s.transpose().mul(g).mul(&s);
            if moved != *g {
                return Err(bad(format!("inner product not invariant under s_{i}")));
            }
        }
        let ip = |u: &[i64], v: &[i64]| -> Rational {
            dot(&g.apply(&to_rational(v)), &to_rational(u))
        };
        for a in 0..self.roots.len() {
            let aa = ip(&self.coroots[a], &self.coroots[a]);
            if !aa.is_positive() {
                return Err(bad("coroot with non-positive norm".into()));
            }
            for b in 0..self.roots.len() {
                let lhs = Rational::from_integer(dot(&self.roots[a], &self.coroots[b]));
                let rhs = Rational::from_integer(2) * ip(&self.coroots[a], &self.coroots[b]) / aa;
                if lhs != rhs {
                    return Err(bad(format!("pairing/inner product relation fails at ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    /// Split or semisimple datum of the given Cartan type.
    pub fn from_cartan(ty: CartanType, lattice: Lattice, label: impl Into<String>) -> Result<Self> {
        let a = ty.cartan_matrix()?;
        let n = ty.rank();
        // roots in simple-root coordinates paired with coroots in simple-coroot coordinates
        let mut pairs: Vec<(IntVector, IntVector)> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e.clone(), e)
            })
            .collect();
        let mut seen: HashSet<IntVector> = pairs.iter().map(|p| p.0.clone()).collect();
        let mut k = 0;
        while k < pairs.len() {
            let (c, d) = pairs[k].clone();
            for i in 0..n {
                let ci: i64 = (0..n).map(|j| c[j] * a[j][i]).sum();
                let di: i64 = (0..n).map(|j| a[i][j] * d[j]).sum();
                let mut c2 = c.clone();
                c2[i] -= ci;
                let mut d2 = d.clone();
                d2[i] -= di;
                if seen.insert(c2.clone()) {
                    pairs.push((c2, d2));
                }
            }
            k += 1;
        }
        // positive roots first in height order, simple roots leading
        pairs.sort_by_key(|(c, _)| {
            let h: i64 = c.iter().sum();
            (h < 0, h.abs(), c.iter().map(|x| -x).collect::<Vec<_>>())
        });
        let (roots, coroots): (Vec<IntVector>, Vec<IntVector>) = pairs
            .iter()
            .map(|(c, d)| match lattice {
                Lattice::SimplyConnected => {
                    let r = (0..n).map(|j| (0..n).map(|i| c[i] * a[i][j]).sum()).collect();
                    (r, d.clone())
                }
                Lattice::Adjoint => {
                    let co = (0..n).map(|i| (0..n).map(|j| a[i][j] * d[j]).sum()).collect();
                    (c.clone(), co)
                }
            })
            .unzip();
        let simple: Vec<usize> = (0..n).collect();
        let gram = killing_form(n, &roots, &coroots);
        Self::from_parts(label, n, roots, coroots, simple, gram)
    }

    /// `GL_n` with `X_* = Z^n` and roots `e_i - e_j`.
    pub fn general_linear(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnknownKey("GL0".into()));
        }
        let e = |i: usize, j: usize| {
            let mut v = vec![0; n];
            v[i] += 1;
            v[j] -= 1;
            v
        };
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    pairs.push((i, j));
                }
            }
        }
        pairs.sort_by_key(|&(i, j)| {
            let h = j as i64 - i as i64;
            (h < 0, h.abs(), i)
        });
        let roots: Vec<IntVector> = pairs.iter().map(|&(i, j)| e(i, j)).collect();
        let simple = (0..n - 1).collect();
        Self::from_parts(
            format!("GL{n}"),
            n,
            roots.clone(),
            roots,
            simple,
            RatMatrix::identity(n),
        )
    }

    /// Direct product of two data on `X_*(a) + X_*(b)`.
    pub fn product(a: &Self, b: &Self) -> Result<Self> {
        let r = a.rank + b.rank;
        let pad = |v: &IntVector, left: bool| -> IntVector {
            let mut out = vec![0; r];
            let off = if left { 0 } else { a.rank };
            out[off..off + v.len()].copy_from_slice(v);
            out
        };
        let mut roots: Vec<IntVector> = a.roots.iter().map(|v| pad(v, true)).collect();
        roots.extend(b.roots.iter().map(|v| pad(v, false)));
        let mut coroots: Vec<IntVector> = a.coroots.iter().map(|v| pad(v, true)).collect();
        coroots.extend(b.coroots.iter().map(|v| pad(v, false)));
        let mut simple = a.simple.clone();
        simple.extend(b.simple.iter().map(|&i| i + a.roots.len()));
        let mut gram = RatMatrix::zeros(r, r);
        for i in 0..a.rank {
            for j in 0..a.rank {
                gram[(i, j)] = a.gram[(i, j)];
            }
        }
        for i in 0..b.rank {
            for j in 0..b.rank {
                gram[(a.rank + i, a.rank + j)] = b.gram[(i, j)];
            }
        }
        Self::from_parts(format!("{}x{}", a.label, b.label), r, roots, coroots, simple, gram)
    }

    /// The Levi subdatum on the given roots (closed, symmetric), same lattice.
    pub fn levi(&self, roots: &[usize]) -> Result<Self> {
        let set: HashSet<usize> = roots.iter().copied().collect();
        for &i in roots {
            if !set.contains(&self.negative_of(i)) {
                return Err(Error::NotLevi);
            }
            for &j in roots {
                if !set.contains(&self.root_index(&self.reflect_root(i, j)).unwrap()) {
                    return Err(Error::NotLevi);
                }
            }
        }
        let mut sorted: Vec<usize> = roots.to_vec();
        sorted.sort_unstable();
        let pos: Vec<usize> = sorted.iter().copied().filter(|&i| self.is_positive(i)).collect();
        let simple: Vec<usize> = pos
            .iter()
            .copied()
            .filter(|&i| {
                !pos.iter().any(|&j| {
                    let rest = linalg::sub(&self.roots[i], &self.roots[j]);
                    self.root_index(&rest).is_some_and(|k| set.contains(&k) && self.is_positive(k))
                })
            })
            .collect();
        let local: HashMap<usize, usize> = sorted.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let d = Self::from_parts(
            format!("{}[levi]", self.label),
            self.rank,
            sorted.iter().map(|&i| self.roots[i].clone()).collect(),
            sorted.iter().map(|&i| self.coroots[i].clone()).collect(),
            simple.iter().map(|i| local[i]).collect(),
            self.gram.clone(),
        )?;
        // Levi of Levi type must reproduce the positivity of the ambient system
        if sorted
            .iter()
            .enumerate()
            .any(|(k, &i)| d.is_positive(k) != self.is_positive(i))
        {
            return Err(Error::NotLevi);
        }
        Ok(d)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[IntVector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &IntVector {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &IntVector {
        &self.coroots[i]
    }

    pub fn coroots(&self) -> &[IntVector] {
        &self.coroots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.derived.positive[i]
    }

    pub fn positive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.derived.positive[i])
    }

    /// Height in simple roots, negative for negative roots.
    pub fn height(&self, i: usize) -> i64 {
        self.derived.heights[i]
    }

    pub fn component(&self, i: usize) -> usize {
        self.derived.component[i]
    }

    pub fn num_components(&self) -> usize {
        self.derived.n_components
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.derived.index.get(v).copied()
    }

    pub fn negative_of(&self, i: usize) -> usize {
        self.root_index(&linalg::neg(&self.roots[i])).expect("root system is symmetric")
    }

    /// Sum of positive coroots; strictly positive on every positive root.
    pub fn two_rho_coroot(&self) -> &IntVector {
        &self.derived.two_rho_coroot
    }

    /// Sum of positive roots.
    pub fn two_rho(&self) -> &IntVector {
        &self.derived.two_rho
    }

    /// `<alpha_i, v>` for a rational cocharacter.
    pub fn pair(&self, i: usize, v: &[Rational]) -> Rational {
        dot(&to_rational(&self.roots[i]), v)
    }

    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        dot(u, &self.gram.apply(v))
    }

    /// `s_alpha` as a matrix on cocharacters: `v - <alpha, v> alpha^vee`.
    pub fn reflection_matrix(&self, i: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(self.rank);
        for r in 0..self.rank {
            for c in 0..self.rank {
                m[(r, c)] -= self.coroots[i][r] * self.roots[i][c];
            }
        }
        m
    }

    /// `s_{alpha_i}(alpha_j)` as a character vector.
    fn reflect_root(&self, i: usize, j: usize) -> IntVector {
        let k = dot(&self.roots[j], &self.coroots[i]);
        linalg::sub(&self.roots[j], &linalg::scale(&k, &self.roots[i]))
    }

    /// Image of root `i` under a linear map `A` given by its inverse: `alpha . A^{-1}`.
    pub fn map_root(&self, inverse: &IntMatrix, i: usize) -> Option<usize> {
        self.root_index(&inverse.apply_left(&self.roots[i]))
    }

    /// Whether the linear map with this inverse permutes `roots` (as a set).
    pub fn preserves(&self, inverse: &IntMatrix, roots: &[usize]) -> bool {
        let set: HashSet<usize> = roots.iter().copied().collect();
        roots
            .iter()
            .all(|&i| self.map_root(inverse, i).is_some_and(|j| set.contains(&j)))
    }

    /// Positive-root sign of `w^{-1} alpha_i`, computed as the sign of `<alpha_i, w(2 rho^vee)>`.
    pub fn inverse_image_positive(&self, w_two_rho: &[i64], i: usize) -> bool {
        dot(&self.roots[i], w_two_rho) > 0
    }

    /// Solution of `<alpha_s, v> = b_s` for the simple roots, zero on free directions.
    pub fn simple_dual_vector(&self, values: &[Rational]) -> RatVector {
        let rows: Vec<RatVector> = self.simple.iter().map(|&i| to_rational(&self.roots[i])).collect();
        if rows.is_empty() {
            return vec![Rational::zero(); self.rank];
        }
        let a = Matrix::from_rows(&rows);
        linalg::solve(&a, values)
            .expect("simple roots are independent")
            .particular
    }

    pub fn is_dominant(&self, v: &[Rational]) -> bool {
        self.simple.iter().all(|&i| !self.pair(i, v).is_negative())
    }

    /// Finite Weyl group by breadth-first search over simple reflections.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        let gens: Vec<WeylElement> = self
            .simple
            .iter()
            .map(|&i| WeylElement(self.reflection_matrix(i)))
            .collect();
        let id = WeylElement::identity(self.rank);
        let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            let w = out[k].clone();
            for g in &gens {
                let n = g.mul(&w);
                if seen.insert(n.clone()) {
                    out.push(n);
                }
            }
            k += 1;
        }
        out
    }

    pub fn to_json(&self, sigma: &DiagramAutomorphism) -> serde_json::Value {
        let pairing: Vec<Vec<i64>> = self
            .simple
            .iter()
            .map(|&i| self.simple.iter().map(|&j| dot(&self.roots[i], &self.coroots[j])).collect())
            .collect();
        serde_json::json!({
            "label": self.label,
            "rank": self.rank,
            "basis": (0..self.rank).map(|i| format!("e{}", i + 1)).collect::<Vec<_>>(),
            "roots": self.roots,
            "coroots": self.coroots,
            "simple": self.simple,
            "pairing": pairing,
            "inner_product": self.gram.to_rows().iter()
                .map(|r| r.iter().map(crate::fraction_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "sigma": sigma.matrix().to_rows(),
        })
    }

    /// Read a datum file in the format produced by [`BasedRootDatum::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<(Self, DiagramAutomorphism)> {
        let bad = |m: &str| Error::InvalidDatum(m.to_string());
        let get = |k: &str| value.get(k).ok_or_else(|| bad(&format!("missing field `{k}`")));
        let ints = |v: &serde_json::Value| -> Result<Vec<Vec<i64>>> {
            serde_json::from_value(v.clone()).map_err(|e| bad(&e.to_string()))
        };
        let label = get("label")?.as_str().unwrap_or("custom").to_string();
        let rank = get("rank")?.as_u64().ok_or_else(|| bad("rank"))? as usize;
        let roots = ints(get("roots")?)?;
        let coroots = ints(get("coroots")?)?;
        let simple: Vec<usize> =
            serde_json::from_value(get("simple")?.clone()).map_err(|e| bad(&e.to_string()))?;
        let gram = match value.get("inner_product") {
            Some(v) => {
                let rows: Vec<Vec<String>> =
                    serde_json::from_value(v.clone()).map_err(|e| bad(&e.to_string()))?;
                let parsed: Result<Vec<RatVector>> = rows
                    .iter()
                    .map(|r| r.iter().map(|s| crate::parse_fraction(s)).collect())
                    .collect();
                Matrix::from_rows(&parsed?)
            }
            None => killing_form(rank, &roots, &coroots),
        };
        let datum = Self::from_parts(label, rank, roots, coroots, simple, gram)?;
        let sigma = match value.get("sigma") {
            Some(v) => DiagramAutomorphism::new(&datum, Matrix::from_rows(&ints(v)?))?,
            None => DiagramAutomorphism::identity(&datum),
        };
        Ok((datum, sigma))
    }
}

/// `B(u,v) = sum_alpha <alpha,u><alpha,v>` rescaled per component so the
/// shortest coroots have squared length 2.
fn killing_form(rank: usize, roots: &[IntVector], coroots: &[IntVector]) -> RatMatrix {
    let mut g = RatMatrix::zeros(rank, rank);
    for r in roots {
        for i in 0..rank {
            for j in 0..rank {
                g[(i, j)] += Rational::from_integer(r[i] * r[j]);
            }
        }
    }
    let min = coroots
        .iter()
        .map(|c| dot(&g.apply(&to_rational(c)), &to_rational(c)))
        .filter(|x| x.is_positive())
        .fold(None::<Rational>, |m, x| Some(m.map_or(x, |m| if x < m { x } else { m })));
    match min {
        Some(m) => g.map(|x| *x * Rational::from_integer(2) / m),
        None => RatMatrix::identity(rank),
    }
}

/// A finite Weyl group element as an integer matrix on cocharacters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement(pub IntMatrix);

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.0)
    }
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        Self(IntMatrix::identity(rank))
    }

    pub fn simple_reflection(datum: &BasedRootDatum, k: usize) -> Self {
        Self(datum.reflection_matrix(datum.simple[k]))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> Self {
        Self(integer_inverse(&self.0).expect("Weyl elements are unimodular"))
    }

    pub fn apply(&self, v: &[i64]) -> IntVector {
        self.0.apply(v)
    }

    pub fn apply_rational(&self, v: &[Rational]) -> RatVector {
        self.0.map(|&x| Rational::from_integer(x)).apply(v)
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, datum: &BasedRootDatum) -> usize {
        let inv = self.inverse();
        let u = inv.apply(datum.two_rho_coroot());
        datum
            .positive_indices()
            .filter(|&i| !datum.inverse_image_positive(&u, i))
            .count()
    }

    /// Reduced word over simple-root positions `0..k` (left-to-right product).
    pub fn reduced_word(&self, datum: &BasedRootDatum) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = self.clone();
        'outer: loop {
            let u = w.apply(datum.two_rho_coroot());
            for (k, &i) in datum.simple.iter().enumerate() {
                // s_i w < w iff w^{-1} alpha_i < 0
                if dot(&datum.roots[i], &u) < 0 {
                    word.push(k);
                    w = WeylElement::simple_reflection(datum, k).mul(&w);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    pub fn from_word(datum: &BasedRootDatum, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(datum.rank), |acc, &k| {
            acc.mul(&Self::simple_reflection(datum, k))
        })
    }
}

/// Linear automorphism of `X_*` permuting the simple roots (the Frobenius).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramAutomorphism {
    matrix: IntMatrix,
    inverse: IntMatrix,
    order: usize,
    simple_permutation: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(datum: &BasedRootDatum) -> Self {
        Self {
            matrix: IntMatrix::identity(datum.rank),
            inverse: IntMatrix::identity(datum.rank),
            order: 1,
            simple_permutation: (0..datum.simple.len()).collect(),
        }
    }

    pub fn new(datum: &BasedRootDatum, matrix: IntMatrix) -> Result<Self> {
        let bad = |m: &str| Error::InvalidAutomorphism(m.to_string());
        if matrix.rows() != datum.rank || matrix.cols() != datum.rank {
            return Err(bad("wrong shape"));
        }
        let inverse = integer_inverse(&matrix).ok_or_else(|| bad("not unimodular"))?;
        let order = matrix.order(10_000).ok_or_else(|| bad("infinite or large order"))?;
        let mut simple_permutation = Vec::new();
        for &s in &datum.simple {
            let img = datum.map_root(&inverse, s).ok_or_else(|| bad("does not permute roots"))?;
            let k = datum
                .simple
                .iter()
                .position(|&t| t == img)
                .ok_or_else(|| bad("does not preserve simple roots"))?;
            simple_permutation.push(k);
        }
        for i in 0..datum.num_roots() {
            let j = datum.map_root(&inverse, i).ok_or_else(|| bad("does not permute roots"))?;
            if matrix.apply(&datum.coroots[i]) != datum.coroots[j] {
                return Err(bad("root/coroot correspondence not preserved"));
            }
        }
        let g = matrix.map(|&x| Rational::from_integer(x));
        if g.transpose().mul(&datum.gram).mul(&g) != datum.gram {
            return Err(bad("inner product not preserved"));
        }
        Ok(Self {
            matrix,
            inverse,
            order,
            simple_permutation,
        })
    }

    /// Permutation of lattice basis vectors.
    pub fn from_basis_permutation(datum: &BasedRootDatum, perm: &[usize]) -> Result<Self> {
        let n = datum.rank;
        let mut m = IntMatrix::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            m[(p, i)] = 1;
        }
        Self::new(datum, m)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &IntMatrix {
        &self.inverse
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn simple_permutation(&self) -> &[usize] {
        &self.simple_permutation
    }

    pub fn apply_vector(&self, v: &[i64]) -> IntVector {
        self.matrix.apply(v)
    }

    pub fn apply_rational(&self, v: &[Rational]) -> RatVector {
        self.matrix.map(|&x| Rational::from_integer(x)).apply(v)
    }

    pub fn apply_root(&self, datum: &BasedRootDatum, i: usize) -> usize {
        datum.map_root(&self.inverse, i).expect("validated on construction")
    }

    /// `sigma w sigma^{-1}`.
    pub fn apply_weyl(&self, w: &WeylElement) -> WeylElement {
        WeylElement(self.matrix.mul(&w.0).mul(&self.inverse))
    }

    pub fn apply_weyl_inverse(&self, w: &WeylElement) -> WeylElement {
        WeylElement(self.inverse.mul(&w.0).mul(&self.matrix))
    }
}

/// Dominant point of the `W`-orbit of `v` and some `w` with `w(v) = v_dom`.
pub fn dominant_representative(datum: &BasedRootDatum, v: &[Rational]) -> (RatVector, WeylElement) {
    let mut cur = v.to_vec();
    let mut w = WeylElement::identity(datum.rank);
    'outer: loop {
        for (k, &i) in datum.simple.iter().enumerate() {
            if datum.pair(i, &cur).is_negative() {
                let s = WeylElement::simple_reflection(datum, k);
                cur = s.apply_rational(&cur);
                w = s.mul(&w);
                continue 'outer;
            }
        }
        return (cur, w);
    }
}

/// Catalogue lookup: `GL{n}`, `SL{n}`, `PGL{n}`, `Sp{2n}-sc/-ad`,
/// `SO{2n+1}-sc/-ad`, `SO{2n}-sc/-ad`, `G2[-sc|-ad]`, `F4`, `E{6,7,8}-sc/-ad`,
/// optionally suffixed `@2` / `@3` for a twisted Frobenius.
pub fn build_root_datum(key: &str) -> Result<(BasedRootDatum, DiagramAutomorphism)> {
    let unknown = || Error::UnknownKey(key.to_string());
    let (base, twist) = match key.split_once('@') {
        Some((b, t)) => (b, t.parse::<usize>().map_err(|_| unknown())?),
        None => (key, 1),
    };
    let (name, lattice) = match base.rsplit_once('-') {
        Some((n, "sc")) => (n, Some(Lattice::SimplyConnected)),
        Some((n, "ad")) => (n, Some(Lattice::Adjoint)),
        Some(_) => return Err(unknown()),
        None => (base, None),
    };
    let number = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)
            .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|s| s.parse().ok())
    };
    let incompatible = |m: &str| Error::IncompatibleLattice(format!("{key}: {m}"));

    if let Some(n) = number("GL") {
        if lattice.is_some() {
            return Err(incompatible("GL_n has a fixed lattice"));
        }
        let d = BasedRootDatum::general_linear(n)?;
        let sigma = match twist {
            1 => DiagramAutomorphism::identity(&d),
            2 if n >= 2 => {
                // v -> -(v_n, ..., v_1)
                let mut m = IntMatrix::zeros(n, n);
                for i in 0..n {
                    m[(i, n - 1 - i)] = -1;
                }
                DiagramAutomorphism::new(&d, m)?
            }
            _ => return Err(incompatible("unsupported twist")),
        };
        return Ok((d, sigma));
    }

    let (ty, lat) = if let Some(n) = number("SL") {
        if lattice.is_some() {
            return Err(incompatible("SL_n is simply connected"));
        }
        (CartanType::A(n.checked_sub(1).ok_or_else(unknown)?), Lattice::SimplyConnected)
    } else if let Some(n) = number("PGL") {
        if lattice.is_some() {
            return Err(incompatible("PGL_n is adjoint"));
        }
        (CartanType::A(n.checked_sub(1).ok_or_else(unknown)?), Lattice::Adjoint)
    } else if let Some(n) = number("Sp") {
        if n % 2 != 0 {
            return Err(unknown());
        }
        (CartanType::C(n / 2), lattice.ok_or_else(|| incompatible("lattice suffix required"))?)
    } else if let Some(n) = number("SO") {
        let lat = lattice.ok_or_else(|| incompatible("lattice suffix required"))?;
        if n % 2 == 1 {
            (CartanType::B(n / 2), lat)
        } else {
            (CartanType::D(n / 2), lat)
        }
    } else if name == "G2" {
        (CartanType::G2, Lattice::SimplyConnected)
    } else if name == "F4" {
        (CartanType::F4, Lattice::SimplyConnected)
    } else if let Some(n) = number("E") {
        (CartanType::E(n), lattice.unwrap_or(Lattice::SimplyConnected))
    } else {
        return Err(unknown());
    };
    let datum = BasedRootDatum::from_cartan(ty, lat, base)?;
    let perm: Option<Vec<usize>> = match (ty, twist) {
        (_, 1) => None,
        (CartanType::A(n), 2) if n >= 2 => Some((0..n).rev().collect()),
        (CartanType::D(n), 2) => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            Some(p)
        }
        (CartanType::D(4), 3) => Some(vec![2, 1, 3, 0]),
        (CartanType::E(6), 2) => Some(vec![5, 1, 4, 3, 2, 0]),
        _ => return Err(incompatible("no diagram automorphism of that order")),
    };
    let sigma = match perm {
        None => DiagramAutomorphism::identity(&datum),
        Some(p) => {
            let s = DiagramAutomorphism::from_basis_permutation(&datum, &p)?;
            if s.order() != twist {
                return Err(incompatible("twist order mismatch"));
            }
            s
        }
    };
    let datum = if twist > 1 {
        let mut d = datum;
        d.label = key.to_string();
        d
    } else {
        datum
    };
    Ok((datum, sigma))
}

/// Cartan type and lattice for a catalogue key, for cross-checks.
pub fn catalogue_type(key: &str) -> Option<CartanType> {
    let base = key.split('@').next()?;
    let name = base.trim_end_matches("-sc").trim_end_matches("-ad");
    let num = |p: &str| name.strip_prefix(p).and_then(|s| s.parse::<usize>().ok());
    if let Some(n) = num("PGL").or_else(|| num("SL")) {
        return Some(CartanType::A(n - 1));
    }
    if name.starts_with("GL") {
        return num("GL").map(|n| CartanType::A(n.saturating_sub(1)));
    }
    if let Some(n) = num("Sp") {
        return Some(CartanType::C(n / 2));
    }
    if let Some(n) = num("SO") {
        return Some(if n % 2 == 1 { CartanType::B(n / 2) } else { CartanType::D(n / 2) });
    }
    match name {
        "G2" => Some(CartanType::G2),
        "F4" => Some(CartanType::F4),
        _ => num("E").map(CartanType::E),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn gl2_has_two_roots() {
        let (d, s) = build_root_datum("GL2").unwrap();
        assert_eq!(d.num_roots(), 2);
        assert_eq!(d.rank(), 2);
        assert!(d.roots().contains(&vec![1, -1]));
        assert!(s.is_identity());
    }

    #[test]
    fn sl2_and_g2_root_counts() {
        let (sl2, _) = build_root_datum("SL2").unwrap();
        assert_eq!((sl2.rank(), sl2.num_roots()), (1, 2));
        assert_eq!(sl2.coroot(0), &vec![1]);
        let (g2, _) = build_root_datum("G2-sc").unwrap();
        assert_eq!(g2.num_roots(), 12);
    }

    #[test]
    fn weyl_orders_match_degree_products() {
        for key in ["SL3", "PGL4", "Sp4-sc", "SO5-ad", "SO8-sc", "G2-sc", "Sp6-ad", "F4"] {
            let (d, _) = build_root_datum(key).unwrap();
            let ty = catalogue_type(key).unwrap();
            assert_eq!(d.weyl_group().len() as u64, ty.weyl_order(), "{key}");
        }
    }

    #[test]
    fn unknown_and_incompatible_keys() {
        assert!(matches!(build_root_datum("Q7"), Err(Error::UnknownKey(_))));
        assert!(matches!(build_root_datum("SL3-ad"), Err(Error::IncompatibleLattice(_))));
        assert!(matches!(build_root_datum("Sp4-sc@2"), Err(Error::IncompatibleLattice(_))));
        assert!(matches!(build_root_datum("SO10-sc@3"), Err(Error::IncompatibleLattice(_))));
    }

    #[test]
    fn twisted_a2_swaps_simple_roots() {
        let (d, s) = build_root_datum("SL3@2").unwrap();
        assert_eq!(s.order(), 2);
        let a1 = d.simple_indices()[0];
        let a2 = d.simple_indices()[1];
        assert_eq!(s.apply_root(&d, a1), a2);
        assert_eq!(s.simple_permutation(), &[1, 0]);
    }

    #[test]
    fn triality_has_order_three() {
        let (_, s) = build_root_datum("SO8-sc@3").unwrap();
        assert_eq!(s.order(), 3);
        assert!(s.matrix().pow(3).is_identity());
    }

    #[test]
    fn dominant_representative_examples() {
        let (gl2, _) = build_root_datum("GL2").unwrap();
        let (v, w) = dominant_representative(&gl2, &[q(0), q(1)]);
        assert_eq!(v, vec![q(1), q(0)]);
        assert_eq!(w.length(&gl2), 1);
        let (z, w0) = dominant_representative(&gl2, &[q(0), q(0)]);
        assert_eq!(z, vec![q(0), q(0)]);
        assert!(w0.is_identity());
        let (gl3, _) = build_root_datum("GL3").unwrap();
        let (v, w) = dominant_representative(&gl3, &[q(0), q(1), q(0)]);
        assert_eq!(v, vec![q(1), q(0), q(0)]);
        assert_eq!(w.apply_rational(&[q(0), q(1), q(0)]), v);
    }

    #[test]
    fn two_rho_pairs_to_two_on_simple_coroots_simply_laced() {
        for key in ["SL4", "PGL3", "SO8-ad", "GL3"] {
            let (d, _) = build_root_datum(key).unwrap();
            for &i in d.simple_indices() {
                assert_eq!(dot(d.two_rho(), d.coroot(i)), 2, "{key}");
            }
        }
    }

    #[test]
    fn levi_rejects_non_closed_subsets() {
        let (d, _) = build_root_datum("G2-sc").unwrap();
        let pos: Vec<usize> = d.positive_indices().take(2).collect();
        let mut subset = pos.clone();
        subset.extend(pos.iter().map(|&i| d.negative_of(i)));
        assert_eq!(d.levi(&subset).unwrap_err(), Error::NotLevi);
    }

    #[test]
    fn product_combines_components() {
        let (a, _) = build_root_datum("SL2").unwrap();
        let (b, _) = build_root_datum("GL2").unwrap();
        let p = BasedRootDatum::product(&a, &b).unwrap();
        assert_eq!(p.num_roots(), 4);
        assert_eq!(p.num_components(), 2);
        assert_eq!(p.weyl_group().len(), 4);
    }

    #[test]
    fn json_roundtrip() {
        let (d, s) = build_root_datum("SL4@2").unwrap();
        let (d2, s2) = BasedRootDatum::from_json(&d.to_json(&s)).unwrap();
        assert_eq!(d, d2);
        assert_eq!(s, s2);
    }
}
