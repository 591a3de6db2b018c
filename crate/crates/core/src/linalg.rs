//! Exact row reduction over the rationals.

use num_traits::Zero;

use crate::series::Coef;

/// Incremental row echelon form: rows are added one at a time and kept
/// reduced against the pivots seen so far.
#[derive(Debug, Clone, Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, Vec<Coef>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` and keeps it if it is independent. Returns whether the
    /// rank grew.
    pub fn insert(&mut self, mut v: Vec<Coef>) -> bool {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone() / &row[*pivot];
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

pub(crate) fn rank(rows: impl IntoIterator<Item = Vec<Coef>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::coef;

    fn row(v: &[i64]) -> Vec<Coef> {
        v.iter().map(|&x| coef(x)).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(vec![row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(rank(vec![row(&[1, 2, 3]), row(&[0, 1, 1]), row(&[1, 3, 4])]), 2);
        assert_eq!(rank(vec![row(&[0, 0])]), 0);
        assert_eq!(rank(Vec::<Vec<Coef>>::new()), 0);
    }
}
