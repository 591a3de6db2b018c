use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::{DegreeBound, Degree, GradedDimTable};
use crate::series::{coef, Coef};

/// Generators `e_0, …, e_{r-1}`, with `deg e_i` the `i`-th unit vector.
/// Each letter may be flagged as isotropic (index in `J`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorAlphabet {
    names: Vec<String>,
    in_j: Vec<bool>,
}

impl GeneratorAlphabet {
    pub fn new(rank: usize) -> Self {
        GeneratorAlphabet {
            names: (1..=rank).map(|i| format!("e{i}")).collect(),
            in_j: vec![false; rank],
        }
    }

    pub fn with_isotropic(in_j: Vec<bool>) -> Self {
        let mut a = Self::new(in_j.len());
        a.in_j = in_j;
        a
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_isotropic(&self, i: usize) -> bool {
        self.in_j[i]
    }

    pub fn degree_of(&self, word: &[u8]) -> Degree {
        let mut d = vec![0; self.rank()];
        for &x in word {
            d[x as usize] += 1;
        }
        d
    }
}

/// Whether `w` is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// All Lyndon words of length `1..=maxlen` over `letters` letters, in
/// lexicographic order (Duval's generation algorithm).
pub fn lyndon_words(letters: usize, maxlen: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if letters == 0 || maxlen == 0 {
        return out;
    }
    let top = (letters - 1) as u8;
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < maxlen {
            let x = w[w.len() - m];
            w.push(x);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(x) => *x += 1,
            None => break,
        }
    }
    out
}

/// Free Lie algebra dimensions: the number of Lyndon words of each
/// multidegree inside `bound`.
pub fn lyndon_dims(alpha: &GeneratorAlphabet, bound: &DegreeBound) -> GradedDimTable {
    let mut t = GradedDimTable::new(alpha.rank());
    for w in lyndon_words(alpha.rank(), bound.max_total() as usize) {
        let d = alpha.degree_of(&w);
        if bound.contains(&d) {
            t.add(d, &BigInt::one());
        }
    }
    t
}

/// An element of the free Lie algebra, stored through its image in the
/// free associative algebra (word -> integer coefficient), where the
/// bracket is `[a, b] = ab - ba`. The embedding is faithful, so equality
/// and linear independence can be decided on words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BracketElement {
    terms: BTreeMap<Vec<u8>, i64>,
}

impl BracketElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn letter(i: u8) -> Self {
        BracketElement {
            terms: BTreeMap::from([(vec![i], 1)]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &i64)> {
        self.terms.iter()
    }

    fn add_word(&mut self, w: Vec<u8>, c: i64) {
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                if c != 0 {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_word(w, ca * cb);
            }
        }
        out
    }

    pub fn bracket(&self, other: &Self) -> Self {
        &self.product(other) - &other.product(self)
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        BracketElement {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Coordinates against a fixed word list.
    pub(crate) fn coordinates(&self, index: &BTreeMap<Vec<u8>, usize>) -> Vec<Coef> {
        let mut v = vec![coef(0); index.len()];
        for (w, c) in &self.terms {
            v[index[w]] = coef(*c);
        }
        v
    }
}

impl Add for &BracketElement {
    type Output = BracketElement;
    fn add(self, rhs: &BracketElement) -> BracketElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_word(w.clone(), *c);
        }
        out
    }
}

impl Neg for &BracketElement {
    type Output = BracketElement;
    fn neg(self) -> BracketElement {
        self.scale(-1)
    }
}

impl Sub for &BracketElement {
    type Output = BracketElement;
    fn sub(self, rhs: &BracketElement) -> BracketElement {
        self + &(-rhs)
    }
}

/// Standard bracketing of a Lyndon word: split `w = uv` with `v` the
/// longest proper Lyndon suffix and bracket the two halves recursively.
pub fn standard_bracket(w: &[u8]) -> BracketElement {
    assert!(is_lyndon(w), "standard bracketing needs a Lyndon word");
    if w.len() == 1 {
        return BracketElement::letter(w[0]);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).unwrap();
    standard_bracket(&w[..split]).bracket(&standard_bracket(&w[split..]))
}
