//! Exact arithmetic in the integral group ring Z[H] of a finitely
//! generated abelian group, with the conjugation involution, the
//! augmentation, and the projection to Z[H/Tors].
//!
//! Elements are stored as finitely supported maps from group elements to
//! nonzero coefficients, in the canonical lexicographic term order, so
//! equality, hashing and printing are deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::homology::{AbelianGroup, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElt {
    group: AbelianGroup,
    terms: BTreeMap<GroupElement, BigInt>,
}

impl GroupRingElt {
    pub fn zero(group: AbelianGroup) -> Self {
        GroupRingElt { group, terms: BTreeMap::new() }
    }

    pub fn one(group: AbelianGroup) -> Self {
        let zero = group.zero();
        GroupRingElt::monomial(group, zero, BigInt::one())
    }

    /// `coeff * [elt]`
    pub fn monomial(group: AbelianGroup, elt: GroupElement, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(elt, coeff);
        }
        GroupRingElt { group, terms }
    }

    pub fn from_terms<I>(group: AbelianGroup, iter: I) -> Self
    where
        I: IntoIterator<Item = (GroupElement, BigInt)>,
    {
        let mut out = GroupRingElt::zero(group);
        for (h, c) in iter {
            out.add_term(h, c);
        }
        out
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, h: &GroupElement) -> BigInt {
        self.terms.get(h).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Term with the lex-largest group element, if any.
    pub fn leading_term(&self) -> Option<(&GroupElement, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, h: GroupElement, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(h) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &GroupRingElt) -> GroupRingElt {
        assert_eq!(self.group, other.group, "group mismatch in ring addition");
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.add_term(h.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> GroupRingElt {
        GroupRingElt {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(h, c)| (h.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &GroupRingElt) -> GroupRingElt {
        self.add(&other.neg())
    }

    /// Convolution product: bilinear extension of addition in the group.
    pub fn mul(&self, other: &GroupRingElt) -> GroupRingElt {
        assert_eq!(self.group, other.group, "group mismatch in ring product");
        let mut out = GroupRingElt::zero(self.group.clone());
        for (h1, c1) in &self.terms {
            for (h2, c2) in &other.terms {
                out.add_term(self.group.add(h1, h2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> GroupRingElt {
        if c.is_zero() {
            return GroupRingElt::zero(self.group.clone());
        }
        GroupRingElt {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(h, v)| (h.clone(), c * v)).collect(),
        }
    }

    /// Multiply by the single term `coeff * [h]`.
    pub fn mul_monomial(&self, h: &GroupElement, coeff: &BigInt) -> GroupRingElt {
        if coeff.is_zero() {
            return GroupRingElt::zero(self.group.clone());
        }
        GroupRingElt {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (self.group.add(k, h), coeff * v))
                .collect(),
        }
    }

    /// The involution induced by h |-> -h. Realizes conjugation of
    /// Spin^c structures at the group-ring level.
    pub fn conjugate(&self) -> GroupRingElt {
        GroupRingElt {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(h, c)| (self.group.neg(h), c.clone()))
                .collect(),
        }
    }

    /// Sum of all coefficients; evaluation at the trivial character.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Image in Z[H/Tors]: torsion residues dropped, colliding terms summed.
    pub fn project_free(&self) -> GroupRingElt {
        let free = self.group.free_quotient();
        let mut out = GroupRingElt::zero(free.clone());
        for (h, c) in &self.terms {
            let elt = free.element(h.free_part().to_vec(), Vec::new());
            out.add_term(elt, c.clone());
        }
        out
    }

    /// If `self = sign * [h] * other` for some sign and group element,
    /// return the pair, choosing the lexicographically least `h` that
    /// works; otherwise `None`.
    pub fn equal_up_to_unit(&self, other: &GroupRingElt) -> Option<(i8, GroupElement)> {
        assert_eq!(self.group, other.group, "group mismatch in unit comparison");
        if self.is_zero() && other.is_zero() {
            return Some((1, self.group.zero()));
        }
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        // any valid shift maps some term of `other` onto some term of
        // `self`, so the differences of supports exhaust the candidates
        let mut candidates: Vec<GroupElement> = Vec::new();
        for ha in self.terms.keys() {
            for hb in other.terms.keys() {
                candidates.push(self.group.sub(ha, hb));
            }
        }
        candidates.sort();
        candidates.dedup();
        for h in candidates {
            let shifted = other.mul_monomial(&h, &BigInt::one());
            if shifted == *self {
                return Some((1, h));
            }
            if shifted.neg() == *self {
                return Some((-1, h));
            }
        }
        None
    }

    /// Per-coordinate minimum and maximum of the free exponents over the
    /// support. `None` for the zero element.
    pub fn free_bounding_box(&self) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        let rank = self.group.rank();
        let mut iter = self.terms.keys();
        let first = iter.next()?;
        let mut lo = first.free_part().to_vec();
        let mut hi = lo.clone();
        for h in iter {
            for (k, e) in h.free_part().iter().enumerate() {
                if *e < lo[k] {
                    lo[k] = e.clone();
                }
                if *e > hi[k] {
                    hi[k] = e.clone();
                }
            }
        }
        debug_assert_eq!(lo.len(), rank);
        Some((lo, hi))
    }
}

/// Renders as a signed sum of monomials, `1 - t1 + t1^-1*t2`, with torsion
/// coordinates tagged `g1^1`. This format is part of the CLI contract.
impl fmt::Display for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (h, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (k, e) in h.free_part().iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if e.is_one() {
                    factors.push(format!("t{}", k + 1));
                } else {
                    factors.push(format!("t{}^{}", k + 1, e));
                }
            }
            for (k, r) in h.torsion_part().iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                factors.push(format!("g{}^{}", k + 1, r));
            }
            if factors.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> AbelianGroup {
        AbelianGroup::free(1)
    }

    fn t_pow(g: &AbelianGroup, k: i64) -> GroupElement {
        g.element(vec![BigInt::from(k)], Vec::new())
    }

    /// coefficient list -> sum c_i [t^{e_i}]
    fn poly(g: &AbelianGroup, terms: &[(i64, i64)]) -> GroupRingElt {
        GroupRingElt::from_terms(
            g.clone(),
            terms
                .iter()
                .map(|&(e, c)| (t_pow(g, e), BigInt::from(c))),
        )
    }

    #[test]
    fn additive_inverse_cancels() {
        let g = z();
        let h = t_pow(&g, 3);
        let a = GroupRingElt::monomial(g.clone(), h.clone(), BigInt::one());
        let b = GroupRingElt::monomial(g.clone(), h, BigInt::from(-1));
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn scalar_terms_merge() {
        let g = z();
        let a = poly(&g, &[(0, 2)]);
        let b = poly(&g, &[(0, 3)]);
        assert_eq!(a.add(&b), poly(&g, &[(0, 5)]));
    }

    #[test]
    fn telescoping_product() {
        let g = z();
        let a = poly(&g, &[(0, 1), (1, -1)]); // 1 - t
        let b = poly(&g, &[(0, 1), (1, 1), (2, 1)]); // 1 + t + t^2
        assert_eq!(a.mul(&b), poly(&g, &[(0, 1), (3, -1)]));
    }

    #[test]
    fn inverse_elements_multiply_to_one() {
        let g = z();
        let a = GroupRingElt::monomial(g.clone(), t_pow(&g, 5), BigInt::one());
        let b = GroupRingElt::monomial(g.clone(), t_pow(&g, -5), BigInt::one());
        assert_eq!(a.mul(&b), GroupRingElt::one(g));
    }

    #[test]
    fn torsion_squares_to_identity() {
        let g = AbelianGroup::new(0, vec![BigInt::from(2)]);
        let elt = g.torsion_generator(0);
        let a = GroupRingElt::monomial(g.clone(), elt, BigInt::one());
        assert_eq!(a.mul(&a), GroupRingElt::one(g));
    }

    #[test]
    fn conjugate_is_involution_and_fixes_symmetric() {
        let g = z();
        let a = poly(&g, &[(0, 1), (1, 2), (-1, 2)]);
        assert_eq!(a.conjugate(), a);
        let b = poly(&g, &[(0, 7), (2, -3), (5, 1)]);
        assert_eq!(b.conjugate().conjugate(), b);
        let h = t_pow(&g, 4);
        let m = GroupRingElt::monomial(g.clone(), h, BigInt::one());
        assert_eq!(m.conjugate(), GroupRingElt::monomial(g.clone(), t_pow(&g, -4), BigInt::one()));
    }

    #[test]
    fn augmentation_values() {
        let g = z();
        assert_eq!(GroupRingElt::zero(g.clone()).augment(), BigInt::zero());
        assert_eq!(poly(&g, &[(0, 1), (1, -1)]).augment(), BigInt::zero());
        // trefoil Alexander polynomial: t - 1 + t^-1
        assert_eq!(poly(&g, &[(1, 1), (0, -1), (-1, 1)]).augment(), BigInt::one());
    }

    #[test]
    fn projection_collides_torsion_translates() {
        let g = AbelianGroup::new(1, vec![BigInt::from(2)]);
        let t_plus_g = g.element(vec![BigInt::one()], vec![BigInt::one()]);
        let t = g.element(vec![BigInt::one()], vec![BigInt::zero()]);
        let a = GroupRingElt::from_terms(
            g.clone(),
            [(t_plus_g, BigInt::one()), (t, BigInt::one())],
        );
        let free = AbelianGroup::free(1);
        let expected = GroupRingElt::monomial(
            free.clone(),
            free.element(vec![BigInt::one()], Vec::new()),
            BigInt::from(2),
        );
        assert_eq!(a.project_free(), expected);
    }

    #[test]
    fn projection_sums_full_torsion_orbit() {
        let g = AbelianGroup::new(0, vec![BigInt::from(3)]);
        let a = GroupRingElt::from_terms(
            g.clone(),
            (0..3).map(|r| {
                (
                    g.element(Vec::new(), vec![BigInt::from(r)]),
                    BigInt::one(),
                )
            }),
        );
        let trivial = AbelianGroup::free(0);
        assert_eq!(
            a.project_free(),
            GroupRingElt::monomial(trivial.clone(), trivial.zero(), BigInt::from(3))
        );
    }

    #[test]
    fn projection_fixes_torsion_free_input() {
        let g = z();
        let a = poly(&g, &[(0, 1), (2, -4)]);
        assert_eq!(a.project_free(), a);
    }

    #[test]
    fn unit_comparison_detects_sign_flip() {
        let g = z();
        let a = poly(&g, &[(1, 1), (0, -1), (-1, 1)]);
        let b = a.neg();
        assert_eq!(a.equal_up_to_unit(&b), Some((-1, g.zero())));
    }

    #[test]
    fn unit_comparison_picks_least_shift() {
        let g = z();
        let a = poly(&g, &[(0, 1), (1, -1)]); // 1 - t
        let b = poly(&g, &[(0, -1), (1, 1)]); // t - 1
        // only (-1, 0) satisfies a = sign*[h]*b here
        assert_eq!(a.equal_up_to_unit(&b), Some((-1, g.zero())));
        // a genuine translate: t^3*(1 - t)
        let c = poly(&g, &[(3, 1), (4, -1)]);
        assert_eq!(c.equal_up_to_unit(&a), Some((1, t_pow(&g, 3))));
    }

    #[test]
    fn unit_comparison_rejects_inequivalent() {
        let g = z();
        let a = poly(&g, &[(0, 1)]);
        let b = poly(&g, &[(0, 2)]);
        assert_eq!(a.equal_up_to_unit(&b), None);
    }

    #[test]
    fn rendering_matches_contract() {
        let g2 = AbelianGroup::free(2);
        let one = GroupRingElt::one(g2.clone());
        let t1 = GroupRingElt::monomial(
            g2.clone(),
            g2.element(vec![BigInt::one(), BigInt::zero()], Vec::new()),
            BigInt::from(-1),
        );
        let mixed = GroupRingElt::monomial(
            g2.clone(),
            g2.element(vec![BigInt::from(-1), BigInt::one()], Vec::new()),
            BigInt::one(),
        );
        let s = one.add(&t1).add(&mixed);
        assert_eq!(s.to_string(), "t1^-1*t2 + 1 - t1");

        let gt = AbelianGroup::new(0, vec![BigInt::from(4)]);
        let tagged = GroupRingElt::monomial(
            gt.clone(),
            gt.element(Vec::new(), vec![BigInt::one()]),
            BigInt::one(),
        );
        assert_eq!(tagged.to_string(), "g1^1");
        assert_eq!(GroupRingElt::zero(z()).to_string(), "0");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_group() -> impl Strategy<Value = AbelianGroup> {
            prop_oneof![
                (1usize..=3).prop_map(AbelianGroup::free),
                (1usize..=2, prop::sample::select(vec![2i64, 3, 4])).prop_map(|(r, d)| {
                    AbelianGroup::new(r, vec![BigInt::from(d)])
                }),
            ]
        }

        fn arb_elt(group: AbelianGroup) -> impl Strategy<Value = GroupRingElt> {
            let rank = group.rank();
            let tors = group.invariant_factors().to_vec();
            prop::collection::vec(
                (
                    prop::collection::vec(-3i64..=3, rank),
                    prop::collection::vec(0i64..=4, tors.len()),
                    -5i64..=5,
                ),
                0..5,
            )
            .prop_map(move |terms| {
                GroupRingElt::from_terms(
                    group.clone(),
                    terms.into_iter().map(|(free, torsion, c)| {
                        (
                            group.element(
                                free.into_iter().map(BigInt::from).collect(),
                                torsion.into_iter().map(BigInt::from).collect(),
                            ),
                            BigInt::from(c),
                        )
                    }),
                )
            })
        }

        fn arb_triple() -> impl Strategy<Value = (GroupRingElt, GroupRingElt, GroupRingElt)> {
            arb_group().prop_flat_map(|g| {
                (arb_elt(g.clone()), arb_elt(g.clone()), arb_elt(g))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(500))]

            #[test]
            fn ring_axioms((a, b, c) in arb_triple()) {
                prop_assert_eq!(a.add(&b), b.add(&a));
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            }

            #[test]
            fn augment_is_ring_morphism((a, b, _c) in arb_triple()) {
                prop_assert_eq!(a.mul(&b).augment(), a.augment() * b.augment());
                prop_assert_eq!(a.add(&b).augment(), a.augment() + b.augment());
            }

            #[test]
            fn projection_is_ring_morphism((a, b, _c) in arb_triple()) {
                prop_assert_eq!(a.mul(&b).project_free(), a.project_free().mul(&b.project_free()));
                prop_assert_eq!(a.add(&b).project_free(), a.project_free().add(&b.project_free()));
                prop_assert_eq!(a.conjugate().project_free(), a.project_free().conjugate());
            }
        }
    }
}
