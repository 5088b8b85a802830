//! Exact linear algebra inside G(n): spans, subalgebra closure, centralizers,
//! and certification of maximal commutativity.
//!
//! Vectors are sparse [`Element`]s and coordinates are basis monomials
//! ordered by mask. Every [`Subspace`] is kept in reduced echelon form where
//! the pivot of a basis vector is its smallest monomial, scaled to 1.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::{self, Display};
use core::ops::Bound;

use crate::exterior::{AlgebraContext, AlgebraError, Element, Monomial};
use crate::field::Field;

/// Largest rank accepted by [`span`].
pub const SPAN_RANK_LIMIT: u32 = 12;
/// Largest rank accepted by closure and centralizer computations.
pub const CENTRALIZER_RANK_LIMIT: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralizerError {
    Algebra(AlgebraError),
    RankTooLarge { n: u32, limit: u32 },
    /// Basis vectors `i` and `j` of the input do not commute.
    NotCommutative { i: usize, j: usize },
    /// The product of basis vectors `i` and `j` leaves the input.
    NotClosed { i: usize, j: usize },
}

impl From<AlgebraError> for CentralizerError {
    fn from(e: AlgebraError) -> Self {
        CentralizerError::Algebra(e)
    }
}

impl Display for CentralizerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralizerError::Algebra(e) => Display::fmt(e, f),
            CentralizerError::RankTooLarge { n, limit } => {
                write!(f, "rank {n} exceeds the linear-algebra limit {limit}")
            }
            CentralizerError::NotCommutative { i, j } => {
                write!(f, "basis vectors {i} and {j} do not commute")
            }
            CentralizerError::NotClosed { i, j } => {
                write!(f, "product of basis vectors {i} and {j} leaves the subspace")
            }
        }
    }
}

fn guard(n: u32, limit: u32) -> Result<(), CentralizerError> {
    if n > limit {
        Err(CentralizerError::RankTooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Reduced echelon basis under construction, keyed by pivot monomial.
#[derive(Clone, Debug)]
struct Echelon<F: Field> {
    rows: BTreeMap<Monomial, Element<F>>,
}

impl<F: Field> Echelon<F> {
    fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    fn reduce(&self, ctx: &AlgebraContext<F>, mut v: Element<F>) -> Element<F> {
        let field = ctx.field();
        let mut cursor = Bound::Unbounded;
        // Subtracting a row only touches monomials above its pivot, so a
        // single ascending sweep suffices.
        loop {
            let hit = v
                .support()
                .filter(|m| match cursor {
                    Bound::Excluded(c) => *m > c,
                    _ => true,
                })
                .find(|m| self.rows.contains_key(m));
            let Some(m) = hit else { break };
            let c = field.neg(v.coeff(m).expect("pivot in support"));
            ctx.axpy(&mut v, &c, &self.rows[&m]);
            cursor = Bound::Excluded(m);
        }
        v
    }

    /// Adds `v` to the span. Returns the reduced remainder when `v` was
    /// independent of the rows so far.
    fn insert(&mut self, ctx: &AlgebraContext<F>, v: Element<F>) -> Option<Element<F>> {
        let field = ctx.field();
        let r = self.reduce(ctx, v);
        let (pivot, lead) = r.leading()?;
        let inv = field.inv(lead).expect("nonzero leading coefficient");
        let r = ctx.scale(&r, &inv);
        for row in self.rows.values_mut() {
            if let Some(c) = row.coeff(pivot) {
                let c = field.neg(c);
                ctx.axpy(row, &c, &r);
            }
        }
        self.rows.insert(pivot, r.clone());
        Some(r)
    }

    fn into_subspace(self, ctx: &AlgebraContext<F>) -> Subspace<F> {
        Subspace {
            ctx: ctx.clone(),
            basis: self.rows.into_values().collect(),
        }
    }
}

/// Linear subspace of G(n) with a canonical reduced echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    ctx: AlgebraContext<F>,
    basis: Vec<Element<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn ctx(&self) -> &AlgebraContext<F> {
        &self.ctx
    }

    /// Basis sorted by ascending pivot monomial.
    pub fn basis(&self) -> &[Element<F>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.basis
            .iter()
            .map(|b| b.leading().expect("basis vectors are nonzero").0)
    }

    fn echelon(&self) -> Echelon<F> {
        Echelon {
            rows: self.pivots().zip(self.basis.iter().cloned()).collect(),
        }
    }

    pub fn contains(&self, v: &Element<F>) -> Result<bool, CentralizerError> {
        self.ctx.check(v)?;
        Ok(self.echelon().reduce(&self.ctx, v.clone()).is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> Result<bool, CentralizerError> {
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First pair of basis vectors that fails to commute.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate().skip(i + 1) {
                if !self.ctx.commutator_unchecked(a, b).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First pair of basis vectors whose product leaves the subspace.
    pub fn unclosed_pair(&self) -> Option<(usize, usize)> {
        let ech = self.echelon();
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let p = self.ctx.mul_unchecked(a, b);
                if !ech.reduce(&self.ctx, p).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Linear span of `elems`.
pub fn span<F: Field>(
    elems: &[Element<F>],
    ctx: &AlgebraContext<F>,
) -> Result<Subspace<F>, CentralizerError> {
    guard(ctx.n(), SPAN_RANK_LIMIT)?;
    let mut ech = Echelon::new();
    for e in elems {
        ctx.check(e)?;
        ech.insert(ctx, e.clone());
    }
    Ok(ech.into_subspace(ctx))
}

/// Smallest subalgebra containing `gens` (and 1 when `include_unit` is set).
pub fn subalgebra_closure<F: Field>(
    gens: &[Element<F>],
    ctx: &AlgebraContext<F>,
    include_unit: bool,
) -> Result<Subspace<F>, CentralizerError> {
    guard(ctx.n(), CENTRALIZER_RANK_LIMIT)?;
    let mut ech = Echelon::new();
    // Independent vectors as they were admitted; their span is the current
    // subspace, so only products involving a new vector need checking.
    let mut added: Vec<Element<F>> = Vec::new();
    let unit = include_unit.then(|| ctx.one());
    for g in gens.iter().chain(unit.iter()) {
        ctx.check(g)?;
        if let Some(r) = ech.insert(ctx, g.clone()) {
            added.push(r);
        }
    }
    let mut done = 0;
    while done < added.len() {
        let frontier = added.len();
        for j in done..frontier {
            for i in 0..frontier {
                for (a, b) in [(i, j), (j, i)] {
                    let p = ctx.mul_unchecked(&added[a], &added[b]);
                    if let Some(r) = ech.insert(ctx, p) {
                        added.push(r);
                    }
                }
            }
        }
        done = frontier;
    }
    Ok(ech.into_subspace(ctx))
}

/// Kernel of `v -> [v, b]` restricted to the span of `candidates`, which
/// must be linearly independent.
fn commutant_step<F: Field>(
    ctx: &AlgebraContext<F>,
    candidates: Vec<Element<F>>,
    b: &Element<F>,
) -> Vec<Element<F>> {
    let field = ctx.field();
    // pivot of image -> (normalized image, matching source combination)
    let mut pivots: BTreeMap<Monomial, (Element<F>, Element<F>)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for v in candidates {
        let mut img = ctx.commutator_unchecked(&v, b);
        let mut src = v;
        loop {
            let Some((m, c)) = img.leading() else {
                kernel.push(src);
                break;
            };
            match pivots.get(&m) {
                Some((pi, ps)) => {
                    let c = field.neg(c);
                    ctx.axpy(&mut img, &c, pi);
                    ctx.axpy(&mut src, &c, ps);
                }
                None => {
                    let inv = field.inv(c).expect("nonzero leading coefficient");
                    pivots.insert(m, (ctx.scale(&img, &inv), ctx.scale(&src, &inv)));
                    break;
                }
            }
        }
    }
    kernel
}

/// All `v` in G(n) commuting with every element of `sub`.
pub fn centralizer_of<F: Field>(sub: &Subspace<F>) -> Result<Subspace<F>, CentralizerError> {
    let ctx = sub.ctx();
    guard(ctx.n(), CENTRALIZER_RANK_LIMIT)?;
    let mut candidates: Vec<Element<F>> = ctx.basis().map(|m| ctx.monomial(m)).collect();
    for b in sub.basis() {
        candidates = commutant_step(ctx, candidates, b);
    }
    span(&candidates, ctx)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Maximality<F: Field> {
    Maximal,
    /// `witness` commutes with the whole subalgebra but lies outside it. It
    /// is the centralizer basis vector with the highest pivot among those
    /// outside the subalgebra.
    NotMaximal { witness: Element<F> },
}

impl<F: Field> Maximality<F> {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Maximality::Maximal)
    }
}

/// A commutative subalgebra is maximal exactly when it is its own
/// centralizer.
pub fn is_maximal_commutative<F: Field>(
    sub: &Subspace<F>,
) -> Result<Maximality<F>, CentralizerError> {
    guard(sub.ctx().n(), CENTRALIZER_RANK_LIMIT)?;
    if let Some((i, j)) = sub.noncommuting_pair() {
        return Err(CentralizerError::NotCommutative { i, j });
    }
    if let Some((i, j)) = sub.unclosed_pair() {
        return Err(CentralizerError::NotClosed { i, j });
    }
    let cent = centralizer_of(sub)?;
    if cent.dim() == sub.dim() {
        return Ok(Maximality::Maximal);
    }
    for v in cent.basis().iter().rev() {
        if !sub.contains(v)? {
            return Ok(Maximality::NotMaximal { witness: v.clone() });
        }
    }
    unreachable!("centralizer strictly larger but contained in the subalgebra")
}
