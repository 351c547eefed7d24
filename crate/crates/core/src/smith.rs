//! Smith normal form over the integers, used for lattice quotients
//! `Z^r / (column span)`.

use crate::linalg::{integer_inverse, Matrix};
use serde::{Deserialize, Serialize};

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal with `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: Matrix<i64>,
    pub diagonal: Vec<i64>,
}

pub fn smith_normal_form(a: &Matrix<i64>) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::<i64>::identity(m);

    let swap_rows = |x: &mut Matrix<i64>, i: usize, j: usize| {
        for c in 0..x.cols() {
            let t = x[(i, c)];
            x[(i, c)] = x[(j, c)];
            x[(j, c)] = t;
        }
    };
    let swap_cols = |x: &mut Matrix<i64>, i: usize, j: usize| {
        for r in 0..x.rows() {
            let t = x[(r, i)];
            x[(r, i)] = x[(r, j)];
            x[(r, j)] = t;
        }
    };
    // row_i += f * row_j
    let add_row = |x: &mut Matrix<i64>, i: usize, j: usize, f: i64| {
        for c in 0..x.cols() {
            x[(i, c)] += f * x[(j, c)];
        }
    };
    let add_col = |x: &mut Matrix<i64>, i: usize, j: usize, f: i64| {
        for r in 0..x.rows() {
            x[(r, i)] += f * x[(r, j)];
        }
    };

    for t in 0..m.min(n) {
        // pivot: smallest nonzero absolute value in the remaining block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[(i, j)] != 0
                        && best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            swap_rows(&mut d, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut d, t, pj);

            let p = d[(t, t)];
            let mut clean = true;
            for i in t + 1..m {
                let q = d[(i, t)].div_euclid(p);
                if q != 0 {
                    add_row(&mut d, i, t, -q);
                    add_row(&mut u, i, t, -q);
                }
                if d[(i, t)] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_euclid(p);
                if q != 0 {
                    add_col(&mut d, j, t, -q);
                }
                if d[(t, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the rest of the block
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| d[(i, j)] % p != 0);
            match bad {
                Some((i, _)) => {
                    add_row(&mut d, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            for c in 0..n {
                d[(t, c)] = -d[(t, c)];
            }
            for c in 0..m {
                u[(t, c)] = -u[(t, c)];
            }
        }
    }
    let diagonal = (0..m).map(|i| if i < n { d[(i, i)] } else { 0 }).collect();
    SmithForm { left: u, diagonal }
}

/// A finitely generated abelian group `Z^r / R` with a canonical coordinate map.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    coords: Matrix<i64>,
    lift: Matrix<i64>,
    moduli: Vec<i64>,
}

/// Element of a [`LatticeQuotient`]: one coordinate per nontrivial cyclic factor.
/// Modulus `0` denotes a free factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientClass {
    pub moduli: Vec<i64>,
    pub coords: Vec<i64>,
}

impl QuotientClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl std::fmt::Display for QuotientClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(c, m)| if *m == 0 { c.to_string() } else { format!("{c} mod {m}") })
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl LatticeQuotient {
    /// Quotient of `Z^r` by the span of the given relation vectors.
    pub fn new(rank: usize, relations: &[Vec<i64>]) -> Self {
        let rel = if relations.is_empty() {
            Matrix::zeros(rank, 1)
        } else {
            Matrix::from_cols(relations)
        };
        let snf = smith_normal_form(&rel);
        let mut left = snf.left.clone();
        let mut kept = Vec::new();
        for (i, &d) in snf.diagonal.iter().enumerate() {
            if d == 1 {
                continue;
            }
            if d == 0 {
                let flip = left.row(i).iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
                if flip {
                    for c in 0..rank {
                        left[(i, c)] = -left[(i, c)];
                    }
                }
            }
            kept.push(i);
        }
        let inv = integer_inverse(&left).expect("smith transform is unimodular");
        let rows: Vec<Vec<i64>> = kept.iter().map(|&i| left.row(i).to_vec()).collect();
        let cols: Vec<Vec<i64>> = kept.iter().map(|&i| inv.col(i)).collect();
        let (coords, lift) = if kept.is_empty() {
            (Matrix::zeros(0, rank), Matrix::zeros(rank, 0))
        } else {
            (Matrix::from_rows(&rows), Matrix::from_cols(&cols))
        };
        Self {
            coords,
            lift,
            moduli: kept.iter().map(|&i| snf.diagonal[i]).collect(),
        }
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|&m| m != 0)
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        self.is_finite()
            .then(|| self.moduli.iter().map(|&m| m as u64).product())
    }

    pub fn class_of(&self, v: &[i64]) -> QuotientClass {
        let coords = (0..self.moduli.len())
            .map(|i| {
                let c: i64 = self.coords.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
                let m = self.moduli[i];
                if m == 0 {
                    c
                } else {
                    c.rem_euclid(m)
                }
            })
            .collect();
        QuotientClass {
            moduli: self.moduli.clone(),
            coords,
        }
    }

    /// A lattice vector whose class has the given coordinates.
    pub fn lift(&self, class: &[i64]) -> Vec<i64> {
        assert_eq!(class.len(), self.moduli.len());
        if class.is_empty() {
            return vec![0; self.lift.rows()];
        }
        self.lift.apply(class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_is_diagonal_and_divisible() {
        let a = Matrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
    }

    #[test]
    fn quotient_of_gl2_by_coroot() {
        let q = LatticeQuotient::new(2, &[vec![1, -1]]);
        assert_eq!(q.moduli(), &[0]);
        assert_eq!(q.class_of(&[1, 0]).coords, vec![1]);
        assert_eq!(q.class_of(&[3, 4]).coords, vec![7]);
    }

    #[test]
    fn quotient_of_sl2_coweights() {
        // X_* = Z omega, Q = 2Z
        let q = LatticeQuotient::new(1, &[vec![2]]);
        assert_eq!(q.order(), Some(2));
        assert_eq!(q.class_of(&[3]).coords, vec![1]);
        let l = q.lift(&[1]);
        assert_eq!(q.class_of(&l).coords, vec![1]);
    }
}
