//! Dense box of coefficients `c[i][j]` for `p^i q^j`, `0 <= i <= pmax`,
//! `0 <= j <= qmax`. Used as the inner loop for products, inverses,
//! logarithms and exponentials of power series; one-variable series use a
//! single row.
//!
//! Monomials outside the box form an ideal, so every operation here is
//! exact modulo that ideal.

use num_traits::Zero;

use super::Coef;

#[derive(Debug, Clone)]
pub(crate) struct Grid {
    pub pmax: usize,
    pub qmax: usize,
    pub data: Vec<Coef>,
}

impl Grid {
    pub fn zeros(pmax: usize, qmax: usize) -> Self {
        Grid {
            pmax,
            qmax,
            data: vec![Coef::zero(); (pmax + 1) * (qmax + 1)],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.qmax + 1) + j
    }

    pub fn get(&self, i: usize, j: usize) -> &Coef {
        &self.data[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Coef) {
        let k = self.idx(i, j);
        self.data[k] = c;
    }

    pub fn add_to(&mut self, i: usize, j: usize, c: &Coef) {
        let k = self.idx(i, j);
        self.data[k] += c;
    }

    /// Lexicographic weight `i * (qmax + 1) + j`; a positive additive grading
    /// on nonzero exponents inside the box.
    #[inline]
    fn weight(&self, i: usize, j: usize) -> usize {
        self.idx(i, j)
    }

    fn nonzero(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..=self.pmax {
            for j in 0..=self.qmax {
                if !self.get(i, j).is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Grid) -> Grid {
        debug_assert_eq!((self.pmax, self.qmax), (other.pmax, other.qmax));
        let mut out = Grid::zeros(self.pmax, self.qmax);
        let b = other.nonzero();
        for (i1, j1) in self.nonzero() {
            let a = self.get(i1, j1);
            for &(i2, j2) in &b {
                let (i, j) = (i1 + i2, j1 + j2);
                if i <= self.pmax && j <= self.qmax {
                    let t = a * other.get(i2, j2);
                    out.add_to(i, j, &t);
                }
            }
        }
        out
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Grid {
        let c0 = self.get(0, 0).clone();
        assert!(!c0.is_zero(), "inverse of a series with zero constant term");
        let inv0 = c0.recip();
        let support: Vec<_> = self.nonzero().into_iter().filter(|&e| e != (0, 0)).collect();
        let mut out = Grid::zeros(self.pmax, self.qmax);
        out.set(0, 0, inv0.clone());
        for i in 0..=self.pmax {
            for j in 0..=self.qmax {
                if (i, j) == (0, 0) {
                    continue;
                }
                let mut acc = Coef::zero();
                for &(bi, bj) in &support {
                    if bi <= i && bj <= j {
                        let prev = out.get(i - bi, j - bj);
                        if !prev.is_zero() {
                            acc += self.get(bi, bj) * prev;
                        }
                    }
                }
                out.set(i, j, -(acc * &inv0));
            }
        }
        out
    }

    /// `log f` for `f` with constant term 1, via `f * theta(log f) = theta(f)`
    /// where `theta` multiplies the coefficient at `(i, j)` by its weight.
    pub fn log1(&self) -> Grid {
        let support: Vec<_> = self.nonzero().into_iter().filter(|&e| e != (0, 0)).collect();
        let mut theta_log = Grid::zeros(self.pmax, self.qmax);
        let mut out = Grid::zeros(self.pmax, self.qmax);
        for i in 0..=self.pmax {
            for j in 0..=self.qmax {
                if (i, j) == (0, 0) {
                    continue;
                }
                let w = self.weight(i, j);
                let mut acc = self.get(i, j) * Coef::from_integer(w.into());
                for &(bi, bj) in &support {
                    if bi <= i && bj <= j && (bi, bj) != (i, j) {
                        let prev = theta_log.get(i - bi, j - bj);
                        if !prev.is_zero() {
                            acc -= self.get(bi, bj) * prev;
                        }
                    }
                }
                out.set(i, j, &acc / Coef::from_integer(w.into()));
                theta_log.set(i, j, acc);
            }
        }
        out
    }

    /// `exp g` for `g` with constant term 0, via `theta(exp g) = exp(g) * theta(g)`.
    pub fn exp0(&self) -> Grid {
        let support: Vec<_> = self
            .nonzero()
            .into_iter()
            .filter(|&e| e != (0, 0))
            .map(|(i, j)| {
                let w = Coef::from_integer(self.weight(i, j).into());
                (i, j, self.get(i, j) * w)
            })
            .collect();
        let mut out = Grid::zeros(self.pmax, self.qmax);
        out.set(0, 0, Coef::from_integer(1.into()));
        for i in 0..=self.pmax {
            for j in 0..=self.qmax {
                if (i, j) == (0, 0) {
                    continue;
                }
                let mut acc = Coef::zero();
                for (bi, bj, wg) in &support {
                    if *bi <= i && *bj <= j {
                        let prev = out.get(i - bi, j - bj);
                        if !prev.is_zero() {
                            acc += wg * prev;
                        }
                    }
                }
                let w = self.weight(i, j);
                out.set(i, j, acc / Coef::from_integer(w.into()));
            }
        }
        out
    }
}
