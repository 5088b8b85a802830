//! Intersecting families of odd-size subsets of `[n]` and their subalgebras.
//!
//! Two odd-degree monomials of G(n) commute exactly when their supports
//! meet: overlapping supports give zero both ways round, and disjoint odd
//! blocks anticommute. Even monomials are central. So an odd family `F`
//! spans, together with the even part, a commutative subspace iff `F` is
//! intersecting.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt::{self, Display};

use crate::centralizer::{span, CentralizerError, Subspace};
use crate::exterior::{AlgebraContext, Monomial, MAX_RANK};
use crate::field::Field;
use crate::lattice::SubsetReach;

/// Largest ground set for the table-backed checks.
pub const FAST_RANK_LIMIT: u32 = 26;
/// Largest ground set for exhaustive enumeration.
pub const ENUMERATE_RANK_LIMIT: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyError {
    RankOutOfRange(u32),
    EvenMember(u32),
    MaskOutOfRange { mask: u32, n: u32 },
    DuplicateMember(u32),
    /// Two disjoint members.
    NotIntersecting(u32, u32),
    TooLarge { n: u32, limit: u32 },
    ContextMismatch { family: u32, ctx: u32 },
    Centralizer(CentralizerError),
}

impl From<CentralizerError> for FamilyError {
    fn from(e: CentralizerError) -> Self {
        FamilyError::Centralizer(e)
    }
}

impl Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::RankOutOfRange(n) => {
                write!(f, "ground set size {n} outside 1..={MAX_RANK}")
            }
            FamilyError::EvenMember(m) => write!(f, "member {m} has even size"),
            FamilyError::MaskOutOfRange { mask, n } => {
                write!(f, "member {mask} is not a subset of [{n}]")
            }
            FamilyError::DuplicateMember(m) => write!(f, "member {m} listed twice"),
            FamilyError::NotIntersecting(a, b) => {
                write!(f, "members {a} and {b} are disjoint")
            }
            FamilyError::TooLarge { n, limit } => {
                write!(f, "ground set size {n} exceeds the limit {limit} for this operation")
            }
            FamilyError::ContextMismatch { family, ctx } => {
                write!(f, "family over [{family}] used with G({ctx})")
            }
            FamilyError::Centralizer(e) => Display::fmt(e, f),
        }
    }
}

/// Outcome of a yes/no check, carrying a witness on "no".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check<W> {
    Yes,
    No(W),
}

impl<W> Check<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Check::Yes)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Yes => None,
            Check::No(w) => Some(w),
        }
    }
}

/// Set of odd-size subsets of `[n]`, stored as masks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddFamily {
    n: u32,
    members: BTreeSet<u32>,
}

impl OddFamily {
    pub fn empty(n: u32) -> Result<Self, FamilyError> {
        if !(1..=MAX_RANK).contains(&n) {
            return Err(FamilyError::RankOutOfRange(n));
        }
        Ok(OddFamily {
            n,
            members: BTreeSet::new(),
        })
    }

    pub fn new(n: u32, members: impl IntoIterator<Item = u32>) -> Result<Self, FamilyError> {
        let mut fam = OddFamily::empty(n)?;
        for m in members {
            if !fam.insert(m)? {
                return Err(FamilyError::DuplicateMember(m));
            }
        }
        Ok(fam)
    }

    /// Adds `mask`; `Ok(false)` if it was already present.
    pub fn insert(&mut self, mask: u32) -> Result<bool, FamilyError> {
        if (mask as u64) >> self.n != 0 {
            return Err(FamilyError::MaskOutOfRange { mask, n: self.n });
        }
        if mask.count_ones() % 2 == 0 {
            return Err(FamilyError::EvenMember(mask));
        }
        Ok(self.members.insert(mask))
    }

    /// All odd subsets of `[n]` containing `element` (1-based).
    pub fn star(n: u32, element: u32) -> Result<Self, FamilyError> {
        let mut fam = OddFamily::empty(n)?;
        assert!((1..=n).contains(&element), "star centre outside [n]");
        let bit = 1u32 << (element - 1);
        fam.members = odd_masks(n).filter(|m| m & bit != 0).collect();
        Ok(fam)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.members.contains(&mask)
    }

    /// Members in ascending mask order.
    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subfamily_of(&self, other: &OddFamily) -> bool {
        self.n == other.n && self.members.is_subset(&other.members)
    }

    /// `2^(n-1) + |F|`, the dimension of the matching subalgebra.
    pub fn subalgebra_dim(&self) -> u64 {
        (1u64 << (self.n - 1)) + self.len() as u64
    }
}

/// `3 * 2^(n-2)`, the dimension every maximal commutative subalgebra has for
/// even `n`.
pub fn even_rank_dimension(n: u32) -> u64 {
    assert!(n >= 2);
    3 << (n - 2)
}

/// Odd masks of `[n]`, ascending.
pub fn odd_masks(n: u32) -> impl Iterator<Item = u32> {
    (1..(1u64 << n) as u32).filter(|m| m.count_ones() % 2 == 1)
}

/// Combinatorial commutation rule for basis monomials of G(n).
pub fn monomials_commute(a: Monomial, b: Monomial) -> bool {
    a.is_even() || b.is_even() || a.mask() & b.mask() != 0
}

fn first_disjoint_pair(f: &OddFamily) -> Option<(u32, u32)> {
    let members: Vec<u32> = f.members().collect();
    let len = members.len() as u64;
    let full = ((1u64 << f.n) - 1) as u32;
    if f.n <= FAST_RANK_LIMIT && len * len > (f.n as u64) << f.n {
        let reach = SubsetReach::new(f.n, members.iter().copied());
        let a = *members.iter().find(|&&s| reach.reaches(full & !s))?;
        let b = *members.iter().find(|&&t| t & a == 0)?;
        return Some((a.min(b), a.max(b)));
    }
    for (i, &a) in members.iter().enumerate() {
        if let Some(&b) = members[i + 1..].iter().find(|&&b| a & b == 0) {
            return Some((a, b));
        }
    }
    None
}

/// Every two members meet. The witness is a disjoint pair.
pub fn is_intersecting(f: &OddFamily) -> Check<(u32, u32)> {
    match first_disjoint_pair(f) {
        None => Check::Yes,
        Some(pair) => Check::No(pair),
    }
}

fn require_intersecting(f: &OddFamily) -> Result<(), FamilyError> {
    match first_disjoint_pair(f) {
        None => Ok(()),
        Some((a, b)) => Err(FamilyError::NotIntersecting(a, b)),
    }
}

/// Scans every odd mask against every member. The witness is the smallest
/// addable mask.
pub fn is_maximal_family_naive(f: &OddFamily) -> Result<Check<u32>, FamilyError> {
    require_intersecting(f)?;
    let addable =
        odd_masks(f.n).find(|&t| !f.contains(t) && f.members().all(|s| s & t != 0));
    Ok(addable.map_or(Check::Yes, Check::No))
}

/// Same verdict and witness as [`is_maximal_family_naive`], using one
/// subset-reachability table: `T` meets every member iff no member fits
/// inside the complement of `T`.
pub fn is_maximal_family_fast(f: &OddFamily) -> Result<Check<u32>, FamilyError> {
    if f.n > FAST_RANK_LIMIT {
        return Err(FamilyError::TooLarge {
            n: f.n,
            limit: FAST_RANK_LIMIT,
        });
    }
    require_intersecting(f)?;
    let reach = SubsetReach::new(f.n, f.members());
    let full = ((1u64 << f.n) - 1) as u32;
    let addable = odd_masks(f.n).find(|&t| !f.contains(t) && !reach.reaches(full & !t));
    Ok(addable.map_or(Check::Yes, Check::No))
}

/// Greedy completion to a maximal intersecting family, admitting addable
/// masks in ascending order.
pub fn complete_family(f: &OddFamily) -> Result<OddFamily, FamilyError> {
    if f.n > FAST_RANK_LIMIT {
        return Err(FamilyError::TooLarge {
            n: f.n,
            limit: FAST_RANK_LIMIT,
        });
    }
    require_intersecting(f)?;
    let mut out = f.clone();
    // A mask rejected once stays rejected: members are only ever added.
    for t in odd_masks(f.n) {
        if !out.contains(t) && out.members().all(|s| s & t != 0) {
            out.members.insert(t);
        }
    }
    Ok(out)
}

/// All maximal intersecting odd families over `[n]`, ordered by their
/// membership vector over the ascending list of odd masks.
pub fn enumerate_maximal_families(n: u32) -> Result<Vec<OddFamily>, FamilyError> {
    if !(1..=ENUMERATE_RANK_LIMIT).contains(&n) {
        return Err(FamilyError::TooLarge {
            n,
            limit: ENUMERATE_RANK_LIMIT,
        });
    }
    let odd: Vec<u32> = odd_masks(n).collect();
    // disjoint_from[i]: indices of odd masks disjoint from odd[i]
    let disjoint_from: Vec<u32> = odd
        .iter()
        .map(|&a| {
            odd.iter()
                .enumerate()
                .filter(|(_, &b)| a & b == 0)
                .fold(0, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let mut out = Vec::new();
    for sel in 0..1u32 << odd.len() {
        let chosen = (0..odd.len()).filter(|&i| sel >> i & 1 == 1);
        if chosen.clone().any(|i| disjoint_from[i] & sel != 0) {
            continue;
        }
        let maximal = (0..odd.len())
            .filter(|&j| sel >> j & 1 == 0)
            .all(|j| disjoint_from[j] & sel != 0);
        if maximal {
            out.push(OddFamily {
                n,
                members: chosen.map(|i| odd[i]).collect(),
            });
        }
    }
    Ok(out)
}

/// Span of the even part of G(n) together with `x_S` for every member `S`.
///
/// This is a commutative subspace exactly when `f` is intersecting, and a
/// subalgebra when `f` is also closed under odd supersets, as maximal
/// families are.
pub fn family_to_subalgebra<F: Field>(
    f: &OddFamily,
    ctx: &AlgebraContext<F>,
) -> Result<Subspace<F>, FamilyError> {
    if f.n != ctx.n() {
        return Err(FamilyError::ContextMismatch {
            family: f.n,
            ctx: ctx.n(),
        });
    }
    let gens: Vec<_> = ctx
        .even_part_basis()
        .into_iter()
        .chain(f.members().map(Monomial::from_mask))
        .map(|m| ctx.monomial(m))
        .collect();
    Ok(span(&gens, ctx)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::is_maximal_commutative;
    use crate::field::Rationals;
    use alloc::vec;

    fn set(elems: &[u32]) -> u32 {
        elems.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    fn fam(n: u32, sets: &[&[u32]]) -> OddFamily {
        OddFamily::new(n, sets.iter().map(|s| set(s))).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(OddFamily::new(3, [3]), Err(FamilyError::EvenMember(3)));
        assert_eq!(OddFamily::new(3, [1, 1]), Err(FamilyError::DuplicateMember(1)));
        assert_eq!(
            OddFamily::new(3, [8]),
            Err(FamilyError::MaskOutOfRange { mask: 8, n: 3 })
        );
        assert_eq!(OddFamily::empty(0), Err(FamilyError::RankOutOfRange(0)));
    }

    #[test]
    fn intersecting_examples() {
        assert!(is_intersecting(&fam(3, &[&[1], &[1, 2, 3]])).is_yes());
        assert_eq!(is_intersecting(&fam(3, &[&[1], &[2]])), Check::No((1, 2)));
    }

    #[test]
    fn large_layers_intersect() {
        // odd sizes 11..=17 in a 17-set: 11 + 11 > 17
        let f = OddFamily::new(17, odd_masks(17).filter(|m| m.count_ones() >= 11)).unwrap();
        assert_eq!(f.len(), 14893);
        assert!(is_intersecting(&f).is_yes());
        let mut g = f.clone();
        g.insert(1).unwrap();
        let (a, b) = *is_intersecting(&g).witness().unwrap();
        assert_eq!(a & b, 0);
        assert!(g.contains(a) && g.contains(b));
    }

    #[test]
    fn maximality_examples() {
        let cases = [
            (fam(3, &[&[1, 2, 3]]), Check::No(set(&[1]))),
            (fam(3, &[&[1], &[1, 2, 3]]), Check::Yes),
            (fam(4, &[&[1], &[1, 2, 3], &[1, 2, 4], &[1, 3, 4]]), Check::Yes),
            (OddFamily::empty(3).unwrap(), Check::No(1)),
        ];
        for (f, expected) in cases {
            assert_eq!(is_maximal_family_naive(&f).unwrap(), expected);
            assert_eq!(is_maximal_family_fast(&f).unwrap(), expected);
        }
        let star = OddFamily::star(10, 1).unwrap();
        assert_eq!(is_maximal_family_fast(&star).unwrap(), Check::Yes);
        assert_eq!(is_maximal_family_naive(&star).unwrap(), Check::Yes);
    }

    #[test]
    fn maximality_requires_intersecting() {
        let f = fam(3, &[&[1], &[2]]);
        assert_eq!(is_maximal_family_naive(&f), Err(FamilyError::NotIntersecting(1, 2)));
        assert_eq!(is_maximal_family_fast(&f), Err(FamilyError::NotIntersecting(1, 2)));
        assert!(complete_family(&f).is_err());
        let big = OddFamily::empty(27).unwrap();
        assert_eq!(
            is_maximal_family_fast(&big),
            Err(FamilyError::TooLarge { n: 27, limit: 26 })
        );
    }

    #[test]
    fn completion_examples() {
        let done = complete_family(&OddFamily::empty(3).unwrap()).unwrap();
        assert_eq!(done, fam(3, &[&[1], &[1, 2, 3]]));
        assert_eq!(complete_family(&done).unwrap(), done);
        let c = complete_family(&fam(4, &[&[1, 2, 3]])).unwrap();
        assert_eq!(c.len(), 4);
        assert!(is_maximal_family_naive(&c).unwrap().is_yes());
        assert!(enumerate_maximal_families(4).unwrap().contains(&c));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_maximal_families(1).unwrap(), vec![fam(1, &[&[1]])]);
        assert_eq!(
            enumerate_maximal_families(3).unwrap(),
            vec![
                fam(3, &[&[1], &[1, 2, 3]]),
                fam(3, &[&[2], &[1, 2, 3]]),
                fam(3, &[&[3], &[1, 2, 3]]),
            ]
        );
        let four = enumerate_maximal_families(4).unwrap();
        assert_eq!(four.len(), 5);
        assert!(four.iter().all(|f| f.len() == 4));
        assert!(enumerate_maximal_families(6).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=4 {
            let odd: Vec<u32> = odd_masks(n).collect();
            let mut brute = Vec::new();
            for sel in 0..1u32 << odd.len() {
                let f = OddFamily::new(
                    n,
                    (0..odd.len()).filter(|&i| sel >> i & 1 == 1).map(|i| odd[i]),
                )
                .unwrap();
                if is_intersecting(&f).is_yes() && is_maximal_family_naive(&f).unwrap().is_yes() {
                    brute.push(f);
                }
            }
            assert_eq!(enumerate_maximal_families(n).unwrap(), brute);
        }
    }

    #[test]
    fn commutation_rule_matches_algebra() {
        for n in 1..=5 {
            let ctx = AlgebraContext::new(n, Rationals).unwrap();
            for a in ctx.basis() {
                for b in ctx.basis() {
                    let c = ctx.commutator(&ctx.monomial(a), &ctx.monomial(b)).unwrap();
                    assert_eq!(monomials_commute(a, b), c.is_zero(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn subalgebra_examples() {
        let ctx3 = AlgebraContext::new(3, Rationals).unwrap();
        let f = fam(3, &[&[1], &[1, 2, 3]]);
        let a = family_to_subalgebra(&f, &ctx3).unwrap();
        assert_eq!(a.dim(), 6);
        assert!(is_maximal_commutative(&a).unwrap().is_maximal());

        let ctx4 = AlgebraContext::new(4, Rationals).unwrap();
        let star = OddFamily::star(4, 1).unwrap();
        let a = family_to_subalgebra(&star, &ctx4).unwrap();
        assert_eq!(a.dim() as u64, even_rank_dimension(4));

        let empty = OddFamily::empty(4).unwrap();
        assert_eq!(family_to_subalgebra(&empty, &ctx4).unwrap().dim(), 8);
        assert_eq!(
            family_to_subalgebra(&f, &ctx4),
            Err(FamilyError::ContextMismatch { family: 3, ctx: 4 })
        );
    }

    #[test]
    fn stars_are_maximal() {
        for n in 1..=12 {
            for centre in [1, n] {
                let star = OddFamily::star(n, centre).unwrap();
                let expected = if n == 1 { 1 } else { 1 << (n - 2) };
                assert_eq!(star.len(), expected);
                assert!(is_maximal_family_fast(&star).unwrap().is_yes());
            }
        }
    }
}
