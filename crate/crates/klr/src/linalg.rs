//! Sparse row echelon spaces over a prime field.
//!
//! Rows are sorted `(column, value)` lists; the pivot of a row is its largest column
//! and is normalized to 1.

use crate::field::Field;
use std::collections::{BTreeMap, HashMap};

pub type SVec<F> = Vec<(u32, F)>;

/// Sorts and merges `(column, value)` pairs, dropping zeros.
pub fn collect_svec<F: Field>(mut pairs: Vec<(u32, F)>) -> SVec<F> {
    pairs.sort_unstable_by_key(|p| p.0);
    let mut out: SVec<F> = Vec::with_capacity(pairs.len());
    for (c, v) in pairs {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|p| !p.1.is_zero());
    out
}

/// `a + k·b`.
pub fn axpy<F: Field>(a: &SVec<F>, k: F, b: &SVec<F>) -> SVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = k * b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1 + k * b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_svec<F: Field>(a: &SVec<F>, k: F) -> SVec<F> {
    if k.is_zero() {
        return Vec::new();
    }
    a.iter().map(|&(c, v)| (c, v * k)).collect()
}

/// A subspace of `F^ncols` in echelon form keyed by pivot.
#[derive(Debug, Clone)]
pub struct EchelonSpace<F: Field> {
    ncols: usize,
    full: bool,
    rows: HashMap<u32, SVec<F>>,
}

impl<F: Field> EchelonSpace<F> {
    pub fn new(ncols: usize) -> Self {
        EchelonSpace { ncols, full: false, rows: HashMap::new() }
    }

    pub fn full(ncols: usize) -> Self {
        let mut s = Self::new(ncols);
        s.set_full();
        s
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_full(&self) -> bool {
        self.full || self.rows.len() == self.ncols
    }

    /// Marks the space as everything; rows become the unit vectors.
    pub fn set_full(&mut self) {
        self.full = true;
        self.rows = (0..self.ncols as u32).map(|c| (c, vec![(c, F::one())])).collect();
    }

    pub fn dim(&self) -> usize {
        if self.full {
            self.ncols
        } else {
            self.rows.len()
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &SVec<F>> {
        self.rows.values()
    }

    /// Rows ordered by pivot, for deterministic iteration.
    pub fn sorted_rows(&self) -> Vec<&SVec<F>> {
        let mut keys: Vec<&u32> = self.rows.keys().collect();
        keys.sort();
        keys.into_iter().map(|k| &self.rows[k]).collect()
    }

    /// Remainder of `v` after eliminating leading pivots; zero iff `v` is in the span.
    pub fn reduce(&self, mut v: SVec<F>) -> SVec<F> {
        if self.full {
            return Vec::new();
        }
        while let Some(&(c, x)) = v.last() {
            match self.rows.get(&c) {
                Some(row) => v = axpy(&v, -x, row),
                None => break,
            }
        }
        v
    }

    /// Like [`reduce`](Self::reduce) but also records the multiples of each pivot row used.
    pub fn reduce_tracking(&self, mut v: SVec<F>, used: &mut Vec<(u32, F)>) -> SVec<F> {
        while let Some(&(c, x)) = v.last() {
            match self.rows.get(&c) {
                Some(row) => {
                    used.push((c, x));
                    v = axpy(&v, -x, row)
                }
                None => break,
            }
        }
        v
    }

    /// Inserts `v`; returns the new normalized row if it enlarged the space.
    pub fn insert(&mut self, v: SVec<F>) -> Option<SVec<F>> {
        if self.is_full() {
            return None;
        }
        let r = self.reduce(v);
        let &(c, x) = r.last()?;
        let r = scale_svec(&r, x.inv().expect("nonzero pivot"));
        self.rows.insert(c, r.clone());
        if self.rows.len() == self.ncols {
            self.full = true;
        }
        Some(r)
    }

    pub fn contains(&self, v: &SVec<F>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn pivots(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Fully reduced row echelon form: every pivot column appears in exactly one row.
    pub fn rref(&self) -> BTreeMap<u32, SVec<F>> {
        let mut out: BTreeMap<u32, SVec<F>> = BTreeMap::new();
        for p in self.pivots() {
            let mut row = self.rows[&p].clone();
            loop {
                let hit = row.iter().rev().find(|&&(c, _)| c != p && out.contains_key(&c)).copied();
                match hit {
                    Some((c, x)) => row = axpy(&row, -x, &out[&c]),
                    None => break,
                }
            }
            out.insert(p, row);
        }
        out
    }
}

/// Basis of `span(a) ∩ b`, given as combinations of the rows `a`.
pub fn intersect<F: Field>(a: &[SVec<F>], b: &EchelonSpace<F>) -> Vec<SVec<F>> {
    if b.is_full() {
        return a.to_vec();
    }
    // Echelon of residues, each tagged with the combination of `a` producing it.
    let mut ech: HashMap<u32, (SVec<F>, SVec<F>)> = HashMap::new();
    let mut out = Vec::new();
    for (k, v) in a.iter().enumerate() {
        let mut res = b.reduce(v.clone());
        let mut combo: SVec<F> = vec![(k as u32, F::one())];
        while let Some(&(c, x)) = res.last() {
            match ech.get(&c) {
                Some((r, cb)) => {
                    res = axpy(&res, -x, r);
                    combo = axpy(&combo, -x, cb);
                }
                None => break,
            }
        }
        match res.last() {
            Some(&(c, x)) => {
                let inv = x.inv().expect("nonzero pivot");
                ech.insert(c, (scale_svec(&res, inv), scale_svec(&combo, inv)));
            }
            None => {
                let mut w: SVec<F> = Vec::new();
                for &(j, x) in &combo {
                    w = axpy(&w, x, &a[j as usize]);
                }
                if !w.is_empty() {
                    out.push(w);
                }
            }
        }
    }
    out
}
