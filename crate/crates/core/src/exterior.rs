//! Grassmann algebra G(n) with bitmask monomials.
//!
//! Generators `x_1, ..., x_n` anticommute, so `x_i x_i = 0` whenever the
//! characteristic is not two. A basis monomial `x_S` is stored as the mask of
//! `S` (bit `i - 1` set when `x_i` is a factor), with its generators written
//! in increasing index order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::{self, Display};
use core::ops::Mul;

use crate::field::Field;

/// Largest rank for which elements can be built.
pub const MAX_RANK: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    RankOutOfRange(u32),
    CharacteristicTwo,
    /// Operand built for a different rank than the context.
    ContextMismatch { expected: u32, found: u32 },
    MaskOutOfRange { mask: u32, n: u32 },
}

impl Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::RankOutOfRange(n) => {
                write!(f, "rank {n} outside supported range 1..={MAX_RANK}")
            }
            AlgebraError::CharacteristicTwo => {
                write!(f, "the Grassmann algebra needs a field of characteristic other than 2")
            }
            AlgebraError::ContextMismatch { expected, found } => {
                write!(f, "operand lives in G({found}) but the context is G({expected})")
            }
            AlgebraError::MaskOutOfRange { mask, n } => {
                write!(f, "monomial mask {mask} does not fit in G({n})")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(count: u32) -> Sign {
        if count % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Basis monomial `x_S` of G(n).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub const fn from_mask(mask: u32) -> Self {
        Monomial(mask)
    }

    /// The generator `x_i`, counting from 1.
    pub fn generator(i: u32) -> Self {
        assert!((1..=MAX_RANK).contains(&i), "generator index {i} out of range");
        Monomial(1 << (i - 1))
    }

    /// Product of the listed generators, given by 1-based index.
    pub fn from_indices(indices: &[u32]) -> Self {
        indices
            .iter()
            .fold(Monomial::ONE, |m, &i| Monomial(m.0 | Monomial::generator(i).0))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_even(self) -> bool {
        self.0.count_ones() % 2 == 0
    }

    pub fn fits(self, n: u32) -> bool {
        (self.0 as u64) < (1u64 << n)
    }

    /// 1-based generator indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        core::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                Some(i + 1)
            }
        })
    }

    /// `x_S * x_T`. `None` when the supports overlap, since then a repeated
    /// generator squares to zero.
    pub fn mul(self, rhs: Monomial) -> Option<(Sign, Monomial)> {
        if self.0 & rhs.0 != 0 {
            return None;
        }
        Some((
            Sign::from_parity(crossings(self.0, rhs.0)),
            Monomial(self.0 | rhs.0),
        ))
    }
}

/// Pairs `(i in a, j in b)` with `i > j`: the transpositions needed to merge
/// the two increasing generator words.
fn crossings(a: u32, b: u32) -> u32 {
    let mut rest = a;
    let mut count = 0;
    while rest != 0 {
        let i = rest.trailing_zeros();
        count += (b as u64 & ((1u64 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    count
}

impl Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for i in self.indices() {
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

/// Element of G(n) in canonical sparse form: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<F: Field> {
    n: u32,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> Element<F> {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &F::Elem)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Option<&F::Elem> {
        self.terms.get(&m)
    }

    /// Smallest monomial with a nonzero coefficient.
    pub fn leading(&self) -> Option<(Monomial, &F::Elem)> {
        self.terms.iter().next().map(|(m, c)| (*m, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    fn filtered(&self, keep: impl Fn(Monomial) -> bool) -> Self {
        Element {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn even_part(&self) -> Self {
        self.filtered(Monomial::is_even)
    }

    pub fn odd_part(&self) -> Self {
        self.filtered(|m| !m.is_even())
    }
}

impl<F: Field> Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let coeff = alloc::format!("{c}");
            match (coeff.as_str(), m.mask()) {
                ("1", _) => write!(f, "{m}")?,
                (_, 0) => write!(f, "{coeff}")?,
                _ => write!(f, "{coeff}*{m}")?,
            }
        }
        Ok(())
    }
}

/// Rank and scalar field of a Grassmann algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraContext<F: Field> {
    n: u32,
    field: F,
}

impl<F: Field> AlgebraContext<F> {
    pub fn new(n: u32, field: F) -> Result<Self, AlgebraError> {
        if !(1..=MAX_RANK).contains(&n) {
            return Err(AlgebraError::RankOutOfRange(n));
        }
        if field.characteristic() == 2 {
            return Err(AlgebraError::CharacteristicTwo);
        }
        Ok(AlgebraContext { n, field })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `2^n`.
    pub fn dim(&self) -> usize {
        1usize << self.n
    }

    pub fn check_monomial(&self, m: Monomial) -> Result<Monomial, AlgebraError> {
        if m.fits(self.n) {
            Ok(m)
        } else {
            Err(AlgebraError::MaskOutOfRange {
                mask: m.mask(),
                n: self.n,
            })
        }
    }

    pub fn check(&self, a: &Element<F>) -> Result<(), AlgebraError> {
        if a.n == self.n {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch {
                expected: self.n,
                found: a.n,
            })
        }
    }

    pub fn mul_monomials(&self, a: Monomial, b: Monomial) -> Option<(Sign, Monomial)> {
        debug_assert!(a.fits(self.n) && b.fits(self.n));
        a.mul(b)
    }

    /// All `2^n` basis monomials in ascending mask order.
    pub fn basis(&self) -> impl Iterator<Item = Monomial> {
        (0..(1u32 << self.n)).map(Monomial)
    }

    /// The `2^(n-1)` even-degree monomials, ascending.
    pub fn even_part_basis(&self) -> Vec<Monomial> {
        self.basis().filter(|m| m.is_even()).collect()
    }

    pub fn zero(&self) -> Element<F> {
        Element {
            n: self.n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Element<F> {
        self.monomial(Monomial::ONE)
    }

    pub fn monomial(&self, m: Monomial) -> Element<F> {
        self.term(m, self.field.one())
    }

    /// `c * x_m`; panics if `m` does not fit in G(n).
    pub fn term(&self, m: Monomial, c: F::Elem) -> Element<F> {
        assert!(m.fits(self.n), "monomial {m} does not fit in G({})", self.n);
        let mut e = self.zero();
        if !self.field.is_zero(&c) {
            e.terms.insert(m, c);
        }
        e
    }

    /// `x_i`, counting from 1.
    pub fn generator(&self, i: u32) -> Element<F> {
        self.monomial(Monomial::generator(i))
    }

    /// Sum of terms, merging repeated monomials and dropping zeros.
    pub fn element<I>(&self, terms: I) -> Result<Element<F>, AlgebraError>
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut e = self.zero();
        for (m, c) in terms {
            self.check_monomial(m)?;
            self.add_term(&mut e, m, &c);
        }
        Ok(e)
    }

    pub(crate) fn add_term(&self, acc: &mut Element<F>, m: Monomial, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match acc.terms.get_mut(&m) {
            Some(existing) => {
                let sum = self.field.add(existing, c);
                if self.field.is_zero(&sum) {
                    acc.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                acc.terms.insert(m, c.clone());
            }
        }
    }

    /// `acc += c * x`.
    pub(crate) fn axpy(&self, acc: &mut Element<F>, c: &F::Elem, x: &Element<F>) {
        for (m, xc) in &x.terms {
            let t = self.field.mul(c, xc);
            self.add_term(acc, *m, &t);
        }
    }

    pub fn add(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = a.clone();
        self.axpy(&mut out, &self.field.one(), b);
        Ok(out)
    }

    pub fn sub(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = a.clone();
        self.axpy(&mut out, &self.field.from_i64(-1), b);
        Ok(out)
    }

    pub fn scale(&self, a: &Element<F>, c: &F::Elem) -> Element<F> {
        let mut out = self.zero();
        out.n = a.n;
        self.axpy(&mut out, c, a);
        out
    }

    pub(crate) fn mul_unchecked(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        let mut out = self.zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((sign, m)) = ma.mul(*mb) {
                    let c = self.field.mul(ca, cb);
                    let c = match sign {
                        Sign::Plus => c,
                        Sign::Minus => self.field.neg(&c),
                    };
                    self.add_term(&mut out, m, &c);
                }
            }
        }
        out
    }

    pub fn multiply(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    /// `ab - ba`.
    pub fn commutator(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.commutator_unchecked(a, b))
    }

    pub(crate) fn commutator_unchecked(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        let mut out = self.mul_unchecked(a, b);
        let ba = self.mul_unchecked(b, a);
        self.axpy(&mut out, &self.field.from_i64(-1), &ba);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use alloc::vec;

    /// Bubble-sorts the generator word of `a` followed by `b`, counting
    /// swaps. `None` if a generator repeats.
    fn word_sort_sign(a: Monomial, b: Monomial) -> Option<(Sign, Monomial)> {
        let mut word: Vec<u32> = a.indices().chain(b.indices()).collect();
        let mut swaps = 0;
        for i in 0..word.len() {
            for j in 0..word.len() - 1 - i {
                if word[j] > word[j + 1] {
                    word.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        if word.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Sign::from_parity(swaps), Monomial::from_indices(&word)))
    }

    fn q(n: u32) -> AlgebraContext<Rationals> {
        AlgebraContext::new(n, Rationals).unwrap()
    }

    #[test]
    fn monomial_examples() {
        let x = Monomial::generator;
        assert_eq!(x(1).mul(x(2)), Some((Sign::Plus, Monomial::from_mask(0b11))));
        assert_eq!(x(2).mul(x(1)), Some((Sign::Minus, Monomial::from_mask(0b11))));
        assert_eq!(x(1).mul(x(1)), None);
        let x13 = Monomial::from_indices(&[1, 3]);
        let x24 = Monomial::from_indices(&[2, 4]);
        assert_eq!(x13.mul(x24), word_sort_sign(x13, x24));
        assert_eq!(x13.mul(x24), Some((Sign::Minus, Monomial::from_mask(0b1111))));
    }

    #[test]
    fn sign_matches_word_sort_exhaustively() {
        for n in 1..=5u32 {
            for a in 0..1u32 << n {
                for b in 0..1u32 << n {
                    let (a, b) = (Monomial(a), Monomial(b));
                    assert_eq!(a.mul(b), word_sort_sign(a, b), "{a} * {b}");
                }
            }
        }
    }

    #[test]
    fn anticommutation_grading() {
        for n in 1..=5u32 {
            for a in 0..1u32 << n {
                for b in 0..1u32 << n {
                    let (a, b) = (Monomial(a), Monomial(b));
                    match (a.mul(b), b.mul(a)) {
                        (Some((s, m)), Some((t, m2))) => {
                            assert_eq!(m, m2);
                            let graded = Sign::from_parity(a.degree() * b.degree());
                            assert_eq!(s, graded * t);
                        }
                        (None, None) => assert_ne!(a.mask() & b.mask(), 0),
                        _ => panic!("asymmetric vanishing for {a}, {b}"),
                    }
                }
            }
        }
    }

    #[test]
    fn element_products() {
        let ctx = q(4);
        let one = ctx.one();
        let x1 = ctx.generator(1);
        let a = ctx.add(&one, &x1).unwrap();
        let b = ctx.sub(&one, &x1).unwrap();
        assert_eq!(ctx.multiply(&a, &b).unwrap(), one);

        let x12 = ctx.monomial(Monomial::from_indices(&[1, 2]));
        let s = ctx.add(&ctx.generator(3), &ctx.generator(4)).unwrap();
        let expected = ctx
            .element([
                (Monomial::from_indices(&[1, 2, 3]), Rationals.one()),
                (Monomial::from_indices(&[1, 2, 4]), Rationals.one()),
            ])
            .unwrap();
        assert_eq!(ctx.multiply(&x12, &s).unwrap(), expected);

        let x1x2 = ctx.add(&x1, &ctx.generator(2)).unwrap();
        assert!(ctx.multiply(&x1x2, &x1x2).unwrap().is_zero());
    }

    #[test]
    fn commutator_examples() {
        let ctx = q(5);
        let c = ctx.commutator(&ctx.generator(1), &ctx.generator(2)).unwrap();
        let x12 = Monomial::from_indices(&[1, 2]);
        assert_eq!(c, ctx.term(x12, Rationals.from_i64(2)));
        for m in ctx.basis() {
            let e = ctx.monomial(m);
            assert!(ctx.commutator(&ctx.monomial(x12), &e).unwrap().is_zero());
            assert!(ctx.commutator(&e, &e).unwrap().is_zero());
        }
    }

    #[test]
    fn mixed_context_rejected() {
        let a = q(3).generator(1);
        let b = q(4).generator(1);
        assert_eq!(
            q(3).multiply(&a, &b),
            Err(AlgebraError::ContextMismatch { expected: 3, found: 4 })
        );
        assert!(q(4).commutator(&a, &b).is_err());
    }

    #[test]
    fn context_guards() {
        assert_eq!(AlgebraContext::new(0, Rationals), Err(AlgebraError::RankOutOfRange(0)));
        assert_eq!(AlgebraContext::new(31, Rationals), Err(AlgebraError::RankOutOfRange(31)));
        assert!(AlgebraContext::new(30, PrimeField::gf3()).is_ok());
        assert_eq!(
            q(2).element([(Monomial::from_mask(4), Rationals.one())]),
            Err(AlgebraError::MaskOutOfRange { mask: 4, n: 2 })
        );
    }

    #[test]
    fn even_basis_and_dimension() {
        assert_eq!(q(1).even_part_basis(), vec![Monomial::ONE]);
        assert_eq!(q(2).even_part_basis(), vec![Monomial::ONE, Monomial(0b11)]);
        assert_eq!(q(4).even_part_basis().len(), 8);
        for n in 1..=10 {
            let ctx = q(n);
            let all: alloc::collections::BTreeSet<_> = ctx.basis().collect();
            assert_eq!(all.len(), 1 << n);
            let even = ctx.even_part_basis();
            assert_eq!(even.len(), 1 << (n - 1));
            assert!(even.iter().all(|m| m.is_even()));
            assert!(even.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn display() {
        let ctx = q(3);
        let e = ctx
            .element([
                (Monomial::ONE, Rationals.from_i64(1)),
                (Monomial::from_indices(&[1, 3]), Rationals.from_i64(-2)),
            ])
            .unwrap();
        assert_eq!(alloc::format!("{e}"), "1 + -2*x1x3");
        assert_eq!(alloc::format!("{}", ctx.zero()), "0");
    }
}
