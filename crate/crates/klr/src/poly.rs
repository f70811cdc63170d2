//! Commutative polynomials in the dots `y_1, ..., y_m` with exponent-vector monomials.

use crate::field::Field;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

/// Exponent vector; index `r - 1` holds the power of `y_r`.
pub type Mono = Vec<u8>;

pub fn mono_degree(a: &[u8]) -> usize {
    a.iter().map(|&x| x as usize).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<F: Field> {
    m: usize,
    terms: BTreeMap<Mono, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(m: usize) -> Self {
        Poly { m, terms: BTreeMap::new() }
    }

    pub fn one(m: usize) -> Self {
        Self::monomial(vec![0; m], F::one())
    }

    pub fn monomial(a: Mono, c: F) -> Self {
        let mut p = Poly::zero(a.len());
        p.add_term(a, c);
        p
    }

    /// `y_r`, 1-based.
    pub fn var(m: usize, r: usize) -> Self {
        let mut a = vec![0; m];
        a[r - 1] = 1;
        Self::monomial(a, F::one())
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Mono, F> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Mono, F> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Mono, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (a, &c) in &o.terms {
            r.add_term(a.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-F::one()))
    }

    pub fn scale(&self, c: F) -> Self {
        let mut r = Poly::zero(self.m);
        for (a, &v) in &self.terms {
            r.add_term(a.clone(), v * c);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Poly::zero(self.m);
        for (a, &c) in &self.terms {
            for (b, &d) in &o.terms {
                let ab: Mono = a.iter().zip(b).map(|(x, y)| x + y).collect();
                r.add_term(ab, c * d);
            }
        }
        r
    }

    /// `y_r · f`.
    pub fn mul_var(&self, r: usize) -> Self {
        let mut out = BTreeMap::new();
        for (a, &c) in &self.terms {
            let mut b = a.clone();
            b[r - 1] += 1;
            out.insert(b, c);
        }
        Poly { m: self.m, terms: out }
    }

    /// `s_r f`: exchanges `y_r` and `y_{r+1}`.
    pub fn swap(&self, r: usize) -> Self {
        let mut out = BTreeMap::new();
        for (a, &c) in &self.terms {
            let mut b = a.clone();
            b.swap(r - 1, r);
            out.insert(b, c);
        }
        Poly { m: self.m, terms: out }
    }

    /// Demazure operator `(f - s_r f) / (y_r - y_{r+1})`.
    pub fn demazure(&self, r: usize) -> Self {
        let mut out = Poly::zero(self.m);
        for (a, &c) in &self.terms {
            for (b, s) in demazure_mono(a, r) {
                out.add_term(b, if s { c } else { -c });
            }
        }
        out
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|a| mono_degree(a)).max()
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<usize, Poly<F>> {
        let mut out: BTreeMap<usize, Poly<F>> = BTreeMap::new();
        for (a, &c) in &self.terms {
            out.entry(mono_degree(a)).or_insert_with(|| Poly::zero(self.m)).add_term(a.clone(), c);
        }
        out
    }

    /// Evaluates as a polynomial with the given monomial substitution table.
    pub fn map_monomials(&self, mut f: impl FnMut(&Mono) -> Poly<F>) -> Poly<F> {
        let mut out = Poly::zero(self.m);
        for (a, &c) in &self.terms {
            out = out.add(&f(a).scale(c));
        }
        out
    }
}

/// Demazure operator on one monomial; the flag is the sign of each output monomial.
pub fn demazure_mono(a: &[u8], r: usize) -> Vec<(Mono, bool)> {
    let (x, y) = (a[r - 1], a[r]);
    let mut out = Vec::new();
    if x > y {
        for i in 0..(x - y) {
            let mut b = a.to_vec();
            b[r - 1] = x - 1 - i;
            b[r] = y + i;
            out.push((b, true));
        }
    } else if x < y {
        for i in 0..(y - x) {
            let mut b = a.to_vec();
            b[r - 1] = x + i;
            b[r] = y - 1 - i;
            out.push((b, false));
        }
    }
    out
}

/// `L_r = -y_1` for `r = 1` and `y_{r-1} - y_r` otherwise.
pub fn l_poly<F: Field>(m: usize, r: usize) -> Poly<F> {
    if r == 1 {
        Poly::var(m, 1).scale(-F::one())
    } else {
        Poly::var(m, r - 1).sub(&Poly::var(m, r))
    }
}

/// All monomials of each degree `0..=max_deg` in `m` variables, with dense indices.
#[derive(Debug, Clone)]
pub struct MonoBasis {
    m: usize,
    by_degree: Vec<Vec<Mono>>,
    index: HashMap<Mono, u32>,
}

impl MonoBasis {
    pub fn new(m: usize, max_deg: usize) -> Self {
        let mut by_degree = vec![vec![vec![0u8; m]]];
        for d in 1..=max_deg {
            let mut next = Vec::new();
            gen(m, d, 0, &mut vec![0u8; m], &mut next);
            next.sort();
            by_degree.push(next);
        }
        let mut index = HashMap::new();
        for layer in &by_degree {
            for (k, a) in layer.iter().enumerate() {
                index.insert(a.clone(), k as u32);
            }
        }
        MonoBasis { m, by_degree, index }
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn layer(&self, d: usize) -> &[Mono] {
        &self.by_degree[d]
    }

    /// Index within its degree layer; ascending index is ascending lexicographic order.
    pub fn index(&self, a: &[u8]) -> u32 {
        self.index[a]
    }
}

fn gen(m: usize, left: usize, pos: usize, cur: &mut Vec<u8>, out: &mut Vec<Mono>) {
    if pos == m - 1 {
        cur[pos] = left as u8;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for x in 0..=left {
        cur[pos] = x as u8;
        gen(m, left - x, pos + 1, cur, out);
    }
    cur[pos] = 0;
}
