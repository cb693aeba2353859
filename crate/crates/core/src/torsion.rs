//! Determinant minors of the boundary matrix, projection to the
//! torsion-free group ring, multivariate Laurent gcd, and the
//! symmetrized, normalized Alexander polynomial.
//!
//! The gcd of the projected (g-1)x(g-1) minors is the Alexander
//! polynomial, defined up to units +-[h]. Symmetrization picks the
//! representative whose support is centered at the origin and fixed by
//! conjugation when one exists; with b1 = 1 the sign is pinned by
//! requiring the augmentation to equal the torsion order.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group_ring::GroupRingElt;
use crate::homology::{AbelianGroup, GroupElement};
use crate::presentation::BoundaryMatrix;

/// An element of Z[Z^rank]: a group-ring element over a torsion-free
/// group. For rank 1 the coefficient of `T^k` is the weight at exponent k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly(GroupRingElt);

impl LaurentPoly {
    pub fn new(inner: GroupRingElt) -> Self {
        assert!(
            inner.group().is_torsion_free(),
            "Laurent polynomials live over a torsion-free group"
        );
        LaurentPoly(inner)
    }

    pub fn zero(rank: usize) -> Self {
        LaurentPoly(GroupRingElt::zero(AbelianGroup::free(rank)))
    }

    pub fn one(rank: usize) -> Self {
        LaurentPoly(GroupRingElt::one(AbelianGroup::free(rank)))
    }

    pub fn rank(&self) -> usize {
        self.0.group().rank()
    }

    pub fn as_group_ring(&self) -> &GroupRingElt {
        &self.0
    }

    pub fn into_group_ring(self) -> GroupRingElt {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `true` for the units +-[h]: single term with coefficient +-1.
    pub fn is_unit(&self) -> bool {
        self.0.support_len() == 1 && self.0.terms().next().unwrap().1.abs().is_one()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        LaurentPoly(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        LaurentPoly(self.0.sub(&other.0))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        LaurentPoly(self.0.mul(&other.0))
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly(self.0.neg())
    }

    pub fn conjugate(&self) -> LaurentPoly {
        LaurentPoly(self.0.conjugate())
    }

    pub fn augment(&self) -> BigInt {
        self.0.augment()
    }

    pub fn equal_up_to_unit(&self, other: &LaurentPoly) -> Option<(i8, GroupElement)> {
        self.0.equal_up_to_unit(&other.0)
    }

    /// Rank-1 view: map from exponent to coefficient.
    pub fn univariate_coefficients(&self) -> BTreeMap<i64, BigInt> {
        assert_eq!(self.rank(), 1, "univariate view requires rank 1");
        self.0
            .terms()
            .map(|(h, c)| (big_to_i64(&h.free_part()[0]), c.clone()))
            .collect()
    }

    pub fn from_univariate(coeffs: BTreeMap<i64, BigInt>) -> LaurentPoly {
        let group = AbelianGroup::free(1);
        LaurentPoly(GroupRingElt::from_terms(
            group.clone(),
            coeffs
                .into_iter()
                .map(|(e, c)| (group.element(vec![BigInt::from(e)], Vec::new()), c)),
        ))
    }

    /// Largest absolute exponent (rank 1). Zero polynomial has degree 0.
    pub fn degree(&self) -> i64 {
        assert_eq!(self.rank(), 1);
        self.univariate_coefficients()
            .keys()
            .map(|e| e.abs())
            .max()
            .unwrap_or(0)
    }

    /// Canonical representative of the unit orbit: minimum exponent zero
    /// in every coordinate and positive leading (lex-largest) coefficient.
    pub fn canonical_unit_form(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let group = self.0.group().clone();
        let (lo, _) = self.0.free_bounding_box().unwrap();
        let shift = group.element(lo.iter().map(|e| -e).collect(), Vec::new());
        let shifted = self.0.mul_monomial(&shift, &BigInt::one());
        let leading_negative = shifted
            .leading_term()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        if leading_negative {
            LaurentPoly(shifted.neg())
        } else {
            LaurentPoly(shifted)
        }
    }
}

fn big_to_i64(e: &BigInt) -> i64 {
    i64::try_from(e).expect("exponent out of supported range")
}

// ---------------------------------------------------------------------------
// Internal sparse multivariate polynomials with non-negative exponents,
// used for division and gcd. Laurent elements are shifted into this shape
// and shifted back, which only moves them within their unit orbit.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl MPoly {
    fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    fn constant(nvars: usize, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        MPoly { nvars, terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn mul_term(&self, e: &[i64], c: &BigInt) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            let ee: Vec<i64> = e1.iter().zip(e).map(|(a, b)| a + b).collect();
            out.add_term(ee, c1 * c);
        }
        out
    }

    fn leading(&self) -> Option<(&Vec<i64>, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` when `other` does not divide `self`.
    fn divide_exact(&self, other: &MPoly) -> Option<MPoly> {
        if other.is_zero() {
            return self.is_zero().then(|| MPoly::zero(self.nvars));
        }
        let (eb, cb) = other.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((er, cr)) = r.leading() {
            let e: Vec<i64> = er.iter().zip(&eb).map(|(a, b)| a - b).collect();
            if e.iter().any(|&x| x < 0) {
                return None;
            }
            let (quot, rem) = cr.div_rem(&cb);
            if !rem.is_zero() {
                return None;
            }
            q.add_term(e.clone(), quot.clone());
            r = r.sub(&other.mul_term(&e, &quot));
        }
        Some(q)
    }

    /// View in the last variable: degree -> coefficient in the remaining
    /// variables.
    fn univariate_view(&self) -> BTreeMap<i64, MPoly> {
        assert!(self.nvars >= 1);
        let mut out: BTreeMap<i64, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let deg = e[self.nvars - 1];
            let rest = e[..self.nvars - 1].to_vec();
            out.entry(deg)
                .or_insert_with(|| MPoly::zero(self.nvars - 1))
                .add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn from_univariate(nvars: usize, coeffs: &BTreeMap<i64, MPoly>) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (deg, p) in coeffs {
            for (e, c) in &p.terms {
                let mut ee = e.clone();
                ee.push(*deg);
                out.add_term(ee, c.clone());
            }
        }
        out
    }

    /// Flip the sign so the lex-leading coefficient is positive.
    fn normalize_sign(self) -> MPoly {
        if self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            MPoly {
                nvars: self.nvars,
                terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
            }
        } else {
            self
        }
    }
}

/// Primitive-part pseudo-remainder gcd. No modular or interpolation
/// acceleration: inputs here are desk scale and exactness is the point.
fn mpoly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if a.nvars == 0 {
        let ca = a.terms.values().next().unwrap();
        let cb = b.terms.values().next().unwrap();
        return MPoly::constant(0, ca.gcd(cb));
    }

    let nvars = a.nvars;
    let ua = a.univariate_view();
    let ub = b.univariate_view();

    // strip powers of the main variable; they rejoin at the end
    let va = *ua.keys().next().unwrap();
    let vb = *ub.keys().next().unwrap();
    let shift = |u: BTreeMap<i64, MPoly>, v: i64| -> BTreeMap<i64, MPoly> {
        u.into_iter().map(|(d, p)| (d - v, p)).collect()
    };
    let ua = shift(ua, va);
    let ub = shift(ub, vb);
    let common_valuation = va.min(vb);

    let content = |u: &BTreeMap<i64, MPoly>| -> MPoly {
        let mut acc = MPoly::zero(nvars - 1);
        for p in u.values() {
            acc = mpoly_gcd(&acc, p);
            if acc.terms.len() == 1 {
                if let Some((e, c)) = acc.leading() {
                    if e.iter().all(|&x| x == 0) && c.abs().is_one() {
                        break;
                    }
                }
            }
        }
        acc
    };
    let divide_coeffs = |u: &BTreeMap<i64, MPoly>, d: &MPoly| -> BTreeMap<i64, MPoly> {
        u.iter()
            .map(|(deg, p)| {
                (
                    *deg,
                    p.divide_exact(d).expect("content must divide every coefficient"),
                )
            })
            .collect()
    };

    let cont_a = content(&ua);
    let cont_b = content(&ub);
    let mut p = divide_coeffs(&ua, &cont_a);
    let mut q = divide_coeffs(&ub, &cont_b);
    if deg_of(&p) < deg_of(&q) {
        std::mem::swap(&mut p, &mut q);
    }

    // Euclid on primitive parts
    loop {
        if q.is_empty() {
            break;
        }
        let r = pseudo_remainder(&p, &q);
        p = q;
        q = match r {
            None => BTreeMap::new(),
            Some(r) => {
                let c = content(&r);
                if c.is_zero() {
                    BTreeMap::new()
                } else {
                    divide_coeffs(&r, &c)
                }
            }
        };
    }

    let cont_gcd = mpoly_gcd(&cont_a, &cont_b);
    let mut result_u: BTreeMap<i64, MPoly> = p
        .iter()
        .map(|(deg, poly)| (*deg + common_valuation, poly.mul(&cont_gcd)))
        .collect();
    result_u.retain(|_, poly| !poly.is_zero());
    MPoly::from_univariate(nvars, &result_u).normalize_sign()
}

fn deg_of(u: &BTreeMap<i64, MPoly>) -> i64 {
    u.keys().next_back().copied().unwrap_or(-1)
}

/// Pseudo-remainder of `a` by `b` in the main variable: repeatedly scale
/// by the leading coefficient of `b` and cancel the top term. Returns
/// `None` for a zero remainder.
fn pseudo_remainder(
    a: &BTreeMap<i64, MPoly>,
    b: &BTreeMap<i64, MPoly>,
) -> Option<BTreeMap<i64, MPoly>> {
    let db = deg_of(b);
    let lcb = b.get(&db).unwrap().clone();
    let mut r = a.clone();
    loop {
        let dr = deg_of(&r);
        if r.is_empty() || dr < db {
            break;
        }
        let lcr = r.get(&dr).unwrap().clone();
        // r = lcb * r - lcr * y^(dr-db) * b
        let mut next: BTreeMap<i64, MPoly> = BTreeMap::new();
        for (d, p) in &r {
            next.insert(*d, p.mul(&lcb));
        }
        for (d, p) in b {
            let dd = d + dr - db;
            let sub = p.mul(&lcr);
            let entry = next.remove(&dd).unwrap_or_else(|| MPoly::zero(sub.nvars));
            let diff = entry.sub(&sub);
            if !diff.is_zero() {
                next.insert(dd, diff);
            }
        }
        next.retain(|_, p| !p.is_zero());
        debug_assert!(deg_of(&next) < dr);
        r = next;
    }
    if r.is_empty() {
        None
    } else {
        Some(r)
    }
}

fn laurent_to_mpoly(p: &LaurentPoly) -> (MPoly, Vec<BigInt>) {
    let rank = p.rank();
    match p.as_group_ring().free_bounding_box() {
        None => (MPoly::zero(rank), vec![BigInt::zero(); rank]),
        Some((lo, _)) => {
            let mut out = MPoly::zero(rank);
            for (h, c) in p.as_group_ring().terms() {
                let e: Vec<i64> = h
                    .free_part()
                    .iter()
                    .zip(&lo)
                    .map(|(x, l)| big_to_i64(&(x - l)))
                    .collect();
                out.add_term(e, c.clone());
            }
            (out, lo)
        }
    }
}

fn mpoly_to_laurent(p: &MPoly, shift: &[BigInt]) -> LaurentPoly {
    let group = AbelianGroup::free(p.nvars);
    LaurentPoly::new(GroupRingElt::from_terms(
        group.clone(),
        p.terms.iter().map(|(e, c)| {
            let free: Vec<BigInt> = e
                .iter()
                .zip(shift)
                .map(|(x, s)| BigInt::from(*x) + s)
                .collect();
            (group.element(free, Vec::new()), c.clone())
        }),
    ))
}

/// Greatest common divisor in the Laurent ring, canonical up to unit:
/// the result has minimum exponent zero in each variable and a positive
/// leading coefficient. `gcd(0, 0) = 0` and `gcd(a, 0) = a` up to unit.
pub fn laurent_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(a.rank(), b.rank(), "rank mismatch in Laurent gcd");
    if a.is_zero() {
        return b.canonical_unit_form();
    }
    if b.is_zero() {
        return a.canonical_unit_form();
    }
    let (ma, _) = laurent_to_mpoly(a);
    let (mb, _) = laurent_to_mpoly(b);
    let g = mpoly_gcd(&ma, &mb);
    mpoly_to_laurent(&g, &vec![BigInt::zero(); a.rank()]).canonical_unit_form()
}

/// Exact division in the Laurent ring: `Some(q)` with `a = q * b`, or
/// `None` when `b` does not divide `a`.
pub fn laurent_exact_div(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    assert_eq!(a.rank(), b.rank(), "rank mismatch in Laurent division");
    if b.is_zero() {
        return a.is_zero().then(|| LaurentPoly::zero(a.rank()));
    }
    if a.is_zero() {
        return Some(LaurentPoly::zero(a.rank()));
    }
    let (ma, lo_a) = laurent_to_mpoly(a);
    let (mb, lo_b) = laurent_to_mpoly(b);
    let q = ma.divide_exact(&mb)?;
    let shift: Vec<BigInt> = lo_a.iter().zip(&lo_b).map(|(x, y)| x - y).collect();
    Some(mpoly_to_laurent(&q, &shift))
}

// ---------------------------------------------------------------------------
// Determinants over the group ring
// ---------------------------------------------------------------------------

/// Determinant of the square group-ring matrix selected by `rows` and the
/// column bitmask, by cofactor expansion along the first row, memoized on
/// the column subset.
fn det_memo(
    entries: &[Vec<GroupRingElt>],
    group: &AbelianGroup,
    rows: &[usize],
    colmask: u64,
    memo: &mut HashMap<u64, GroupRingElt>,
) -> GroupRingElt {
    if colmask == 0 {
        return GroupRingElt::one(group.clone());
    }
    if let Some(hit) = memo.get(&colmask) {
        return hit.clone();
    }
    let k = rows.len() - (colmask.count_ones() as usize);
    let row = rows[k];
    let mut acc = GroupRingElt::zero(group.clone());
    let mut sign = BigInt::one();
    for c in 0..64u64 {
        if colmask & (1 << c) == 0 {
            continue;
        }
        let e = &entries[row][c as usize];
        if !e.is_zero() {
            let sub = det_memo(entries, group, rows, colmask & !(1 << c), memo);
            acc = acc.add(&e.mul(&sub).scale(&sign));
        }
        sign = -sign;
    }
    memo.insert(colmask, acc.clone());
    acc
}

/// Determinant of the minor of `m` with row `i` and column `j` deleted
/// (0-based). The empty determinant is 1.
pub fn minor_det(m: &BoundaryMatrix, i: usize, j: usize) -> Result<GroupRingElt> {
    let g = m.genus();
    if i >= g || j >= g {
        return Err(Error::MinorIndex { row: i, col: j, size: g });
    }
    let rows: Vec<usize> = (0..g).filter(|&r| r != i).collect();
    let mut colmask: u64 = 0;
    for c in 0..g {
        if c != j {
            colmask |= 1 << c;
        }
    }
    let mut memo = HashMap::new();
    Ok(det_memo(m.rows(), m.group(), &rows, colmask, &mut memo))
}

/// Determinant of the full boundary matrix. Projects to zero over the
/// torsion-free quotient whenever b1 >= 1, by the fundamental identity.
pub fn det_full(m: &BoundaryMatrix) -> GroupRingElt {
    let g = m.genus();
    let rows: Vec<usize> = (0..g).collect();
    let colmask = if g == 64 { u64::MAX } else { (1u64 << g) - 1 };
    let mut memo = HashMap::new();
    det_memo(m.rows(), m.group(), &rows, colmask, &mut memo)
}

/// All g*g minors, projected to the torsion-free group ring.
pub fn all_projected_minors(m: &BoundaryMatrix) -> Result<Vec<Vec<LaurentPoly>>> {
    let g = m.genus();
    (0..g)
        .map(|i| {
            (0..g)
                .map(|j| Ok(LaurentPoly::new(minor_det(m, i, j)?.project_free())))
                .collect()
        })
        .collect()
}

/// Gcd of all projected minors, in canonical unit form, before any
/// symmetrization or sign normalization.
pub fn minor_gcd(m: &BoundaryMatrix) -> Result<LaurentPoly> {
    let minors = all_projected_minors(m)?;
    Ok(grid_gcd(&minors))
}

/// Fold [`laurent_gcd`] over a minor grid in row-major order.
pub fn grid_gcd(minors: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let rank = minors[0][0].rank();
    let mut acc = LaurentPoly::zero(rank);
    for row in minors {
        for p in row {
            acc = laurent_gcd(&acc, p);
            if acc.is_unit() {
                return acc;
            }
        }
    }
    acc
}

/// Sign `(-1)^{g(g-1)/2}` relating determinant minors of a genus-g
/// boundary matrix to oriented intersection counts in the symmetric
/// product. Carried as metadata; it never changes an up-to-unit output.
pub fn symmetric_product_sign(genus: usize) -> i8 {
    if (genus * (genus - 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The symmetrized, normalized Alexander polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderResult {
    /// Chosen representative of the gcd, symmetrized when possible.
    pub polynomial: LaurentPoly,
    /// With b1 > 1 the overall sign is not determined by the presentation.
    pub sign_ambiguous: bool,
    /// Whether a conjugation-symmetric representative exists and was chosen.
    pub translation_pinned: bool,
    /// Order of the torsion subgroup of H_1.
    pub tors_order: BigInt,
}

impl AlexanderResult {
    /// Symmetric coefficient a_k (rank 1): coefficient of T^k, equal to
    /// that of T^-k when pinned.
    pub fn coefficient(&self, k: i64) -> BigInt {
        self.polynomial
            .univariate_coefficients()
            .get(&k)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Compute the Alexander polynomial of a boundary matrix: the gcd of all
/// projected minors, translated to be conjugation-symmetric when possible
/// and, for b1 = 1, sign-normalized so that A(1) equals the torsion order.
///
/// Errors with [`Error::NormalizationFailure`] if b1 = 1 and |A(1)| is
/// not the torsion order, which signals that the input does not present a
/// closed 3-manifold.
pub fn alexander(m: &BoundaryMatrix) -> Result<AlexanderResult> {
    let raw = minor_gcd(m)?;
    alexander_from_gcd(&raw, m.group())
}

/// Symmetrization and normalization step, split out so suites can reuse
/// it on an already-computed gcd.
pub fn alexander_from_gcd(raw: &LaurentPoly, group: &AbelianGroup) -> Result<AlexanderResult> {
    let b1 = group.rank();
    let tors = group.torsion_order();
    let (mut poly, translation_pinned) = symmetrize(raw);
    let sign_ambiguous;
    if b1 == 1 {
        let aug = poly.augment();
        if aug.abs() != tors {
            return Err(Error::NormalizationFailure {
                augmentation: aug.abs(),
                torsion_order: tors,
            });
        }
        if aug.is_negative() {
            poly = poly.neg();
        }
        sign_ambiguous = false;
    } else {
        sign_ambiguous = true;
    }
    Ok(AlexanderResult {
        polynomial: poly,
        sign_ambiguous,
        translation_pinned,
        tors_order: tors,
    })
}

/// Translate the support to be centered at the origin when the bounding
/// box allows it, and accept only if the result is fixed by conjugation.
fn symmetrize(p: &LaurentPoly) -> (LaurentPoly, bool) {
    if p.is_zero() {
        return (p.clone(), true);
    }
    let gr = p.as_group_ring();
    let (lo, hi) = gr.free_bounding_box().unwrap();
    let two = BigInt::from(2);
    if lo.iter().zip(&hi).any(|(l, h)| !((l + h) % &two).is_zero()) {
        // odd bounding box: no representative symmetric about the origin
        return (p.canonical_unit_form(), false);
    }
    let group = gr.group().clone();
    let shift = group.element(
        lo.iter().zip(&hi).map(|(l, h)| -((l + h) / &two)).collect(),
        Vec::new(),
    );
    let centered = LaurentPoly::new(gr.mul_monomial(&shift, &BigInt::one()));
    if centered == centered.conjugate() {
        (centered, true)
    } else {
        (p.canonical_unit_form(), false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{boundary_matrix, parse_presentation, BalancedPresentation};

    fn uni(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_univariate(
            terms.iter().map(|&(e, c)| (e, BigInt::from(c))).collect(),
        )
    }

    fn three_torus_matrix() -> BoundaryMatrix {
        let text = "genus: 3\nrelators:\n  x1 x2 x1^-1 x2^-1\n  x2 x3 x2^-1 x3^-1\n  x3 x1 x3^-1 x1^-1\n";
        boundary_matrix(&parse_presentation(text).unwrap()).unwrap()
    }

    fn s1_x_s2_matrix() -> BoundaryMatrix {
        boundary_matrix(&BalancedPresentation::new(1, vec![Vec::new()]).unwrap()).unwrap()
    }

    #[test]
    fn empty_minor_is_one() {
        let m = s1_x_s2_matrix();
        let d = minor_det(&m, 0, 0).unwrap();
        assert_eq!(d, GroupRingElt::one(m.group().clone()));
    }

    #[test]
    fn minor_out_of_range() {
        let m = s1_x_s2_matrix();
        assert!(matches!(minor_det(&m, 0, 1), Err(Error::MinorIndex { .. })));
    }

    #[test]
    fn three_torus_minors_match_hand_computation() {
        let m = three_torus_matrix();
        let g = m.group().clone();
        let gen = |k: usize| GroupRingElt::monomial(g.clone(), g.free_generator(k), BigInt::one());
        let one = GroupRingElt::one(g.clone());
        let (x, y, z) = (gen(0), gen(1), gen(2));
        // delta_{1,1} = (1-z)(1-x), delta_{1,2} = -(y-1)(z-1)
        assert_eq!(
            minor_det(&m, 0, 0).unwrap(),
            one.sub(&z).mul(&one.sub(&x))
        );
        assert_eq!(
            minor_det(&m, 0, 1).unwrap(),
            y.sub(&one).mul(&z.sub(&one)).neg()
        );
    }

    #[test]
    fn full_determinants_vanish() {
        assert!(det_full(&s1_x_s2_matrix()).is_zero());
        assert!(det_full(&three_torus_matrix()).is_zero());
    }

    #[test]
    fn projected_full_determinant_vanishes_on_random_presentations() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5150);
        let mut seen = 0;
        while seen < 30 {
            let p = crate::presentation::random_presentation_with(&mut rng, 3, 6);
            let Ok(m) = boundary_matrix(&p) else { continue };
            seen += 1;
            assert!(det_full(&m).project_free().is_zero(), "det fails to project to zero for {p}");
        }
    }

    #[test]
    fn gcd_univariate_example() {
        // gcd(1 - t^2, 1 - t^3) = 1 - t up to unit
        let a = uni(&[(0, 1), (2, -1)]);
        let b = uni(&[(0, 1), (3, -1)]);
        let g = laurent_gcd(&a, &b);
        assert!(g.equal_up_to_unit(&uni(&[(0, 1), (1, -1)])).is_some(), "got {}", g.as_group_ring());
    }

    #[test]
    fn gcd_with_zero() {
        let p = uni(&[(2, 3), (5, -7)]);
        let zero = LaurentPoly::zero(1);
        assert!(laurent_gcd(&p, &zero).equal_up_to_unit(&p).is_some());
        assert!(laurent_gcd(&zero, &p).equal_up_to_unit(&p).is_some());
        assert!(laurent_gcd(&zero, &zero).is_zero());
    }

    fn tri(terms: &[([i64; 3], i64)]) -> LaurentPoly {
        let g = AbelianGroup::free(3);
        LaurentPoly::new(GroupRingElt::from_terms(
            g.clone(),
            terms.iter().map(|&(e, c)| {
                (
                    g.element(e.iter().map(|&x| BigInt::from(x)).collect(), Vec::new()),
                    BigInt::from(c),
                )
            }),
        ))
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        // gcd((1-x)(1-z), (1-y)(1-z)) = 1 - z up to unit
        let one = tri(&[([0, 0, 0], 1)]);
        let x = tri(&[([1, 0, 0], 1)]);
        let y = tri(&[([0, 1, 0], 1)]);
        let z = tri(&[([0, 0, 1], 1)]);
        let a = one.sub(&x).mul(&one.sub(&z));
        let b = one.sub(&y).mul(&one.sub(&z));
        let g = laurent_gcd(&a, &b);
        assert!(g.equal_up_to_unit(&one.sub(&z)).is_some(), "got {}", g.as_group_ring());
        // verified independently: the gcd divides both inputs exactly
        assert!(laurent_exact_div(&a, &g).is_some());
        assert!(laurent_exact_div(&b, &g).is_some());
    }

    #[test]
    fn exact_division_detects_failure() {
        let a = uni(&[(0, 1), (1, 1)]);
        let b = uni(&[(0, 1), (1, -1)]);
        assert!(laurent_exact_div(&a, &b).is_none());
        let prod = a.mul(&b);
        let q = laurent_exact_div(&prod, &b).unwrap();
        assert_eq!(q, a);
        // Laurent shifts divide cleanly
        let shifted = uni(&[(-3, 1), (-2, 1)]);
        let q = laurent_exact_div(&shifted, &a).unwrap();
        assert_eq!(q, uni(&[(-3, 1)]));
        // division by zero only succeeds for zero
        assert!(laurent_exact_div(&a, &LaurentPoly::zero(1)).is_none());
        assert!(laurent_exact_div(&LaurentPoly::zero(1), &LaurentPoly::zero(1)).is_some());
    }

    #[test]
    fn alexander_s1_x_s2() {
        let m = s1_x_s2_matrix();
        let a = alexander(&m).unwrap();
        assert_eq!(a.polynomial, LaurentPoly::one(1));
        assert!(a.translation_pinned);
        assert!(!a.sign_ambiguous);
        assert_eq!(a.tors_order, BigInt::one());
        assert_eq!(a.polynomial.augment(), BigInt::one());
    }

    #[test]
    fn alexander_three_torus_is_unit() {
        let m = three_torus_matrix();
        let a = alexander(&m).unwrap();
        assert!(a.sign_ambiguous);
        assert!(a.translation_pinned);
        assert!(a.polynomial.is_unit());
        assert!(a.polynomial.equal_up_to_unit(&LaurentPoly::one(3)).is_some());
    }

    #[test]
    fn alexander_connected_sum_is_zero() {
        let p = BalancedPresentation::new(2, vec![Vec::new(), Vec::new()]).unwrap();
        let m = boundary_matrix(&p).unwrap();
        let minors = all_projected_minors(&m).unwrap();
        for row in &minors {
            for e in row {
                assert!(e.is_zero());
            }
        }
        let a = alexander(&m).unwrap();
        assert!(a.polynomial.is_zero());
        assert!(a.translation_pinned);
    }

    #[test]
    fn normalization_failure_is_reported() {
        // <x, y | x^2 y^2, empty>: H = Z + Z/2 but A(1) does not match
        let text = "genus: 2\nrelators:\n  x1 x1 x2 x2\n  -\n";
        let m = boundary_matrix(&parse_presentation(text).unwrap()).unwrap();
        assert_eq!(m.group().rank(), 1);
        match alexander(&m) {
            Err(Error::NormalizationFailure { .. }) => {}
            other => panic!("expected normalization failure, got {other:?}"),
        }
    }

    #[test]
    fn unit_row_scaling_shifts_minors_uniformly() {
        let m = three_torus_matrix();
        let h = m.group().free_generator(0);
        // multiply row 1 by [h]: every minor not using row 1 is scaled
        let mut rows: Vec<Vec<GroupRingElt>> = m.rows().to_vec();
        for e in &mut rows[1] {
            *e = e.mul_monomial(&h, &BigInt::one());
        }
        let scaled = BoundaryMatrix::from_parts(
            m.group().clone(),
            m.generator_images().to_vec(),
            rows,
        );
        for j in 0..3 {
            let before = minor_det(&m, 0, j).unwrap();
            let after = minor_det(&scaled, 0, j).unwrap();
            assert_eq!(after, before.mul_monomial(&h, &BigInt::one()));
        }
        // and the alexander gcd is unchanged up to unit
        let a = minor_gcd(&m).unwrap();
        let b = minor_gcd(&scaled).unwrap();
        assert!(a.equal_up_to_unit(&b).is_some());
    }

    #[test]
    fn symmetrize_reports_odd_box() {
        let p = uni(&[(0, 1), (1, 1)]); // no symmetric translate
        let (out, pinned) = symmetrize(&p);
        assert!(!pinned);
        assert!(out.equal_up_to_unit(&p).is_some());
        let q = uni(&[(0, 2), (1, -1), (-1, -1)]);
        let (out, pinned) = symmetrize(&q);
        assert!(pinned);
        assert_eq!(out, q);
        // symmetric box but mismatched coefficients
        let r = uni(&[(1, 2), (-1, 3)]);
        let (_, pinned) = symmetrize(&r);
        assert!(!pinned);
    }

    #[test]
    fn sign_metadata() {
        assert_eq!(symmetric_product_sign(1), 1);
        assert_eq!(symmetric_product_sign(2), -1);
        assert_eq!(symmetric_product_sign(3), -1);
        assert_eq!(symmetric_product_sign(4), 1);
        assert_eq!(symmetric_product_sign(5), 1);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_uni() -> impl Strategy<Value = LaurentPoly> {
            prop::collection::btree_map(-4i64..=4, -6i64..=6, 0..5).prop_map(|m| {
                LaurentPoly::from_univariate(
                    m.into_iter()
                        .filter(|(_, c)| *c != 0)
                        .map(|(e, c)| (e, BigInt::from(c)))
                        .collect(),
                )
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn gcd_divides_both(a in arb_uni(), b in arb_uni()) {
                let g = laurent_gcd(&a, &b);
                if !g.is_zero() {
                    prop_assert!(laurent_exact_div(&a, &g).is_some());
                    prop_assert!(laurent_exact_div(&b, &g).is_some());
                }
            }

            #[test]
            fn gcd_absorbs_products(a in arb_uni(), b in arb_uni(), c in arb_uni()) {
                // gcd(ac, bc) is divisible by c * gcd(a, b)
                if !c.is_zero() {
                    let g = laurent_gcd(&a.mul(&c), &b.mul(&c));
                    let expected = laurent_gcd(&a, &b).mul(&c);
                    if !g.is_zero() {
                        prop_assert!(laurent_exact_div(&g, &expected).is_some());
                        prop_assert!(laurent_exact_div(&expected, &g).is_some());
                    }
                }
            }

            #[test]
            fn exact_div_inverts_mul(a in arb_uni(), b in arb_uni()) {
                if !b.is_zero() {
                    let prod = a.mul(&b);
                    let q = laurent_exact_div(&prod, &b);
                    prop_assert_eq!(q, Some(a));
                }
            }
        }
    }
}
