//! The abstract commutative algebra on grid generators with one square relation per
//! generator, in its `Y`-form and its `L`-form, carried on squarefree monomials.
//!
//! Generators are indexed by rank: `(r,j) ↦ (r-1)(l-1) + j`. Every relation is
//! homogeneous of degree 2, so reduction preserves total degree.

use crate::GtError;
use blobgt_blocks::{BlockData, GridPoint};
use blobgt_klr::Field;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

/// Grid point of the abstract algebra.
pub type GTIndex = GridPoint;

/// Exponent vector over the `n` generators.
pub type Exps = Vec<u8>;

/// Subset of generators as a bitmask; bit `a` is generator of rank `a`.
pub type SquarefreeMonomial = u64;

/// Polynomial with arbitrary exponents, used for relation right sides.
pub type GTPoly<F> = BTreeMap<Exps, F>;

/// Element in the squarefree basis.
pub type GTElement<F> = BTreeMap<SquarefreeMonomial, F>;

const MAX_GENERATORS: usize = 24;
const MAX_DEPTH: usize = 2_000;

/// Rank bookkeeping for a `k × (l-1)` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridShape {
    pub k: usize,
    pub l: usize,
}

impl GridShape {
    pub fn new(k: usize, l: usize) -> Self {
        GridShape { k, l }
    }

    pub fn of(bd: &BlockData) -> Self {
        GridShape { k: bd.k, l: bd.l }
    }

    pub fn n(&self) -> usize {
        self.k * (self.l - 1)
    }

    pub fn rank(&self, p: GTIndex) -> usize {
        (p.r - 1) * (self.l - 1) + p.j
    }

    pub fn point(&self, a: usize) -> GTIndex {
        GridPoint::new(a / (self.l - 1) + 1, a % (self.l - 1))
    }

    /// Rank of the grid point immediately before `a`.
    pub fn prev(&self, a: usize) -> Option<usize> {
        a.checked_sub(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Y,
    L,
}

/// Generators and the expansion of each generator's square.
#[derive(Debug)]
pub struct GTPresentation<F: Field> {
    pub variant: Variant,
    pub shape: GridShape,
    pub squares: Vec<GTPoly<F>>,
    memo: Mutex<HashMap<Exps, GTElement<F>>>,
}

impl<F: Field> Clone for GTPresentation<F> {
    fn clone(&self) -> Self {
        Self::from_squares(self.variant, self.shape, self.squares.clone())
    }
}

fn unit(n: usize, a: usize) -> Exps {
    let mut e = vec![0; n];
    e[a] = 1;
    e
}

fn add_term<F: Field>(p: &mut GTPoly<F>, e: Exps, c: F) {
    if c.is_zero() {
        return;
    }
    let v = p.entry(e.clone()).or_insert_with(F::zero);
    *v += c;
    if v.is_zero() {
        p.remove(&e);
    }
}

/// Product of two general polynomials.
pub fn poly_mul<F: Field>(a: &GTPoly<F>, b: &GTPoly<F>) -> GTPoly<F> {
    let mut out = GTPoly::new();
    for (ea, &ca) in a {
        for (eb, &cb) in b {
            let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_term(&mut out, e, ca * cb);
        }
    }
    out
}

pub fn poly_add<F: Field>(a: &GTPoly<F>, b: &GTPoly<F>, k: F) -> GTPoly<F> {
    let mut out = a.clone();
    for (e, &c) in b {
        add_term(&mut out, e.clone(), k * c);
    }
    out
}

pub fn generator<F: Field>(n: usize, a: usize) -> GTPoly<F> {
    GTPoly::from([(unit(n, a), F::one())])
}

/// `𝒴_prev - 𝒴_a`, and `-𝒴_0` at the first point.
pub fn l_in_y<F: Field>(shape: GridShape, a: usize) -> GTPoly<F> {
    let n = shape.n();
    let neg = generator::<F>(n, a).into_iter().map(|(e, c)| (e, -c)).collect();
    match shape.prev(a) {
        None => neg,
        Some(b) => poly_add(&generator(n, b), &neg, F::one()),
    }
}

/// `𝒴_a = -Σ_{b ≤ a} 𝕃_b`.
pub fn y_in_l<F: Field>(shape: GridShape, a: usize) -> GTPoly<F> {
    let n = shape.n();
    (0..=a).fold(GTPoly::new(), |acc, b| poly_add(&acc, &generator(n, b), -F::one()))
}

pub fn mask_to_exps(n: usize, m: SquarefreeMonomial) -> Exps {
    (0..n).map(|a| ((m >> a) & 1) as u8).collect()
}

pub fn element_to_poly<F: Field>(n: usize, x: &GTElement<F>) -> GTPoly<F> {
    x.iter().map(|(&m, &c)| (mask_to_exps(n, m), c)).collect()
}

/// `Y`-form: `Y_(1,0)² = 0`, `Y_(1,j)² = Y_(1,j-1)Y_(1,j)` and for `r > 1`
/// `Y_(r,j)² = Y_prev Y_(r,j) - Σ_{s<r} ℒ_(s,j)ℒ_(r,j)`.
pub fn build_y_presentation<F: Field>(shape: GridShape) -> Result<GTPresentation<F>, GtError> {
    check_shape(shape)?;
    let n = shape.n();
    let squares = (0..n)
        .map(|a| {
            let p = shape.point(a);
            let y = generator::<F>(n, a);
            let mut rhs = match shape.prev(a) {
                None => GTPoly::new(),
                Some(b) => poly_mul(&generator(n, b), &y),
            };
            for s in 1..p.r {
                let ls = l_in_y(shape, shape.rank(GridPoint::new(s, p.j)));
                rhs = poly_add(&rhs, &poly_mul(&ls, &l_in_y(shape, a)), -F::one());
            }
            rhs
        })
        .collect();
    Ok(GTPresentation::from_squares(Variant::Y, shape, squares))
}

/// `L`-form: `𝕃_(1,0)² = 0` and `𝕃_(r,j)² = Σ_{m_(s,t) < m_(r,j)} C_(s,t) 𝕃_(s,t)𝕃_(r,j)` with
/// `C_(s,t) = -2` when `t = j` and `-1` otherwise.
pub fn build_l_presentation<F: Field>(shape: GridShape) -> Result<GTPresentation<F>, GtError> {
    check_shape(shape)?;
    let n = shape.n();
    let squares = (0..n)
        .map(|a| {
            let j = shape.point(a).j;
            let la = generator::<F>(n, a);
            (0..a).fold(GTPoly::new(), |acc, b| {
                let c = if shape.point(b).j == j { -F::from_i64(2) } else { -F::one() };
                poly_add(&acc, &poly_mul(&generator(n, b), &la), c)
            })
        })
        .collect();
    Ok(GTPresentation::from_squares(Variant::L, shape, squares))
}

fn check_shape(shape: GridShape) -> Result<(), GtError> {
    if shape.l < 2 || shape.k == 0 {
        return Err(GtError::BadShape(shape.k, shape.l));
    }
    if shape.n() > MAX_GENERATORS {
        return Err(GtError::TooManyGenerators(shape.n(), MAX_GENERATORS));
    }
    Ok(())
}

impl<F: Field> GTPresentation<F> {
    pub fn from_squares(variant: Variant, shape: GridShape, squares: Vec<GTPoly<F>>) -> Self {
        GTPresentation { variant, shape, squares, memo: Mutex::new(HashMap::new()) }
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    /// Squarefree normal form, rewriting the smallest generator whose exponent is at least 2.
    pub fn reduce(&self, x: &GTPoly<F>) -> Result<GTElement<F>, GtError> {
        let mut out = GTElement::new();
        for (e, &c) in x {
            for (m, v) in self.reduce_exps(e, 0)? {
                let t = out.entry(m).or_insert_with(F::zero);
                *t += c * v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    fn reduce_exps(&self, e: &Exps, depth: usize) -> Result<GTElement<F>, GtError> {
        if let Some(a) = e.iter().position(|&x| x >= 2) {
            if depth > MAX_DEPTH {
                return Err(GtError::ReductionDiverged);
            }
            if let Some(hit) = self.memo.lock().unwrap().get(e) {
                return Ok(hit.clone());
            }
            let mut base = e.clone();
            base[a] -= 2;
            let mut out = GTElement::new();
            for (u, &c) in &self.squares[a] {
                let next: Exps = base.iter().zip(u).map(|(x, y)| x + y).collect();
                for (m, v) in self.reduce_exps(&next, depth + 1)? {
                    *out.entry(m).or_insert_with(F::zero) += c * v;
                }
            }
            out.retain(|_, v| !v.is_zero());
            self.memo.lock().unwrap().insert(e.clone(), out.clone());
            Ok(out)
        } else {
            let m = e.iter().enumerate().fold(0u64, |acc, (a, &x)| acc | ((x as u64) << a));
            Ok(GTElement::from([(m, F::one())]))
        }
    }

    /// Product of two basis monomials, reduced.
    pub fn mul_monomials(&self, a: SquarefreeMonomial, b: SquarefreeMonomial) -> Result<GTElement<F>, GtError> {
        let n = self.n();
        let e: Exps = (0..n).map(|i| (((a >> i) & 1) + ((b >> i) & 1)) as u8).collect();
        self.reduce_exps(&e, 0)
    }

    pub fn mul(&self, x: &GTElement<F>, y: &GTElement<F>) -> Result<GTElement<F>, GtError> {
        let mut out = GTElement::new();
        for (&a, &ca) in x {
            for (&b, &cb) in y {
                for (m, v) in self.mul_monomials(a, b)? {
                    *out.entry(m).or_insert_with(F::zero) += ca * cb * v;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// `2^n`, after checking that the squarefree product is commutative and associative.
    ///
    /// Associativity against each generator suffices: if `g(bc) = (gb)c` for every generator
    /// `g`, induction on the length of `a` gives `a(bc) = (ab)c`.
    pub fn dim_abstract(&self) -> Result<usize, GtError> {
        let n = self.n();
        let size = 1u64 << n;
        for g in 0..n {
            let gm = 1u64 << g;
            for b in 0..size {
                let gb = self.mul_monomials(gm, b)?;
                if gb != self.mul_monomials(b, gm)? {
                    return Err(GtError::CommutativityFailure(gm, b));
                }
                for c in 0..size {
                    let bc = self.mul_monomials(b, c)?;
                    let left = self.mul(&GTElement::from([(gm, F::one())]), &bc)?;
                    let right = self.mul(&gb, &GTElement::from([(c, F::one())]))?;
                    if left != right {
                        return Err(GtError::AssociativityFailure(gm, b, c));
                    }
                }
            }
        }
        Ok(1usize << n)
    }

    /// Full triple check `(ab)c = a(bc)` on the given monomials.
    pub fn associative_on(
        &self,
        a: SquarefreeMonomial,
        b: SquarefreeMonomial,
        c: SquarefreeMonomial,
    ) -> Result<bool, GtError> {
        let one = |m| GTElement::from([(m, F::one())]);
        let left = self.mul(&self.mul_monomials(a, b)?, &one(c))?;
        let right = self.mul(&one(a), &self.mul_monomials(b, c)?)?;
        Ok(left == right)
    }

    /// Substitutes `images[a]` for generator `a` in `x` and reduces in `self`.
    pub fn substitute(&self, x: &GTPoly<F>, images: &[GTPoly<F>]) -> Result<GTElement<F>, GtError> {
        let n = self.n();
        let mut acc = GTPoly::new();
        for (e, &c) in x {
            let mut term = GTPoly::from([(vec![0u8; n], c)]);
            for (a, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = element_to_poly(n, &self.reduce(&poly_mul(&term, &images[a]))?);
                }
            }
            acc = poly_add(&acc, &term, F::one());
        }
        self.reduce(&acc)
    }

    /// True when every relation of `self`, under `images`, reduces to zero in `target`.
    pub fn relations_hold_in(&self, target: &GTPresentation<F>, images: &[GTPoly<F>]) -> Result<bool, GtError> {
        let n = self.n();
        for a in 0..n {
            let mut lhs = GTPoly::new();
            add_term(
                &mut lhs,
                {
                    let mut e = vec![0; n];
                    e[a] = 2;
                    e
                },
                F::one(),
            );
            let rel = poly_add(&lhs, &self.squares[a], -F::one());
            if !target.substitute(&rel, images)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Both directions of the change of variables between the `Y`- and `L`-forms.
pub fn presentations_isomorphic<F: Field>(y: &GTPresentation<F>, l: &GTPresentation<F>) -> Result<bool, GtError> {
    let shape = y.shape;
    if l.shape != shape {
        return Ok(false);
    }
    let n = shape.n();
    let l_images: Vec<GTPoly<F>> = (0..n).map(|a| l_in_y(shape, a)).collect();
    let y_images: Vec<GTPoly<F>> = (0..n).map(|a| y_in_l(shape, a)).collect();
    Ok(l.relations_hold_in(y, &l_images)? && y.relations_hold_in(l, &y_images)?)
}

/// `P·F(P)` where `F(P)` is the complementary monomial.
pub fn complement_product<F: Field>(p: &GTPresentation<F>, m: SquarefreeMonomial) -> Result<GTElement<F>, GtError> {
    let full = (1u64 << p.n()) - 1;
    p.mul_monomials(m, full & !m)
}
