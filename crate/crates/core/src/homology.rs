//! Exact integer-matrix normal forms and first homology of a balanced
//! presentation.
//!
//! Everything here is arbitrary precision: Smith normal form pivots can
//! grow far beyond machine words even for small inputs, and silent
//! overflow would corrupt every invariant downstream.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry grid does not match shape");
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        IntMatrix::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.at(k, j);
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                // pivot search within the column
                let swap = (k + 1..n).find(|&r| !m[r * n + k].is_zero());
                match swap {
                    Some(r) => {
                        for j in 0..n {
                            m.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = &num / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        sign * m[n * n - 1].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let add = c * self.at(src, j);
            *self.at_mut(dst, j) += add;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let add = c * self.at(i, src);
            *self.at_mut(i, dst) += add;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.at(r, j).clone();
            *self.at_mut(r, j) = v;
        }
    }
}

/// Result of a Smith normal form computation: `u * m * v = d` with `u`,
/// `v` unimodular and `d` diagonal, non-negative, divisibility-ordered.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Diagonal entries of `d`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.at(i, i).clone())
            .collect()
    }
}

/// Smith normal form over Z. Total on any shape; the returned diagonal is
/// canonical (entries non-negative and each dividing the next), while the
/// transforms `u` and `v` depend on pivoting and are not unique.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    let mut k = 0;
    while k < steps {
        // smallest nonzero entry of the trailing submatrix becomes the pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !d.at(i, j).is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => d.at(i, j).abs() < d.at(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        // clear row and column k; restart whenever a remainder survives,
        // since it is strictly smaller than the current pivot
        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if d.at(i, k).is_zero() {
                    continue;
                }
                let q = -(d.at(i, k) / d.at(k, k));
                d.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                if !d.at(i, k).is_zero() {
                    d.swap_rows(k, i);
                    u.swap_rows(k, i);
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if d.at(k, j).is_zero() {
                    continue;
                }
                let q = -(d.at(k, j) / d.at(k, k));
                d.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                if !d.at(k, j).is_zero() {
                    d.swap_cols(k, j);
                    v.swap_cols(k, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block for the
            // divisibility chain to come out right
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(d.at(i, j) % d.at(k, k)).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    d.add_row_multiple(k, i, &BigInt::one());
                    u.add_row_multiple(k, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.at(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    SmithNormalForm { u, d, v }
}

/// Finitely generated abelian group `Z^rank + Z/d1 + ... + Z/dk` with
/// `d1 | d2 | ...` and every `di >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(rank: usize, invariant_factors: Vec<BigInt>) -> Self {
        let two = BigInt::from(2);
        for w in invariant_factors.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "invariant factors must form a divisibility chain"
            );
        }
        assert!(
            invariant_factors.iter().all(|d| *d >= two),
            "invariant factors must be at least 2"
        );
        AbelianGroup { rank, invariant_factors }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, invariant_factors: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// The quotient by the torsion subgroup.
    pub fn free_quotient(&self) -> AbelianGroup {
        AbelianGroup::free(self.rank)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.rank],
            torsion: vec![BigInt::zero(); self.invariant_factors.len()],
        }
    }

    pub fn free_generator(&self, i: usize) -> GroupElement {
        assert!(i < self.rank);
        let mut e = self.zero();
        e.free[i] = BigInt::one();
        e
    }

    pub fn torsion_generator(&self, i: usize) -> GroupElement {
        assert!(i < self.invariant_factors.len());
        let mut e = self.zero();
        e.torsion[i] = BigInt::one();
        e
    }

    /// Build an element, reducing torsion residues into `[0, di)`.
    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> GroupElement {
        assert_eq!(free.len(), self.rank, "free part has wrong length");
        assert_eq!(
            torsion.len(),
            self.invariant_factors.len(),
            "torsion part has wrong length"
        );
        let torsion = torsion
            .into_iter()
            .zip(&self.invariant_factors)
            .map(|(r, d)| r.mod_floor(d))
            .collect();
        GroupElement { free, torsion }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.check(a);
        self.check(b);
        let free = a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect();
        let torsion = a
            .torsion
            .iter()
            .zip(&b.torsion)
            .zip(&self.invariant_factors)
            .map(|((x, y), d)| (x + y).mod_floor(d))
            .collect();
        GroupElement { free, torsion }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.check(a);
        let free = a.free.iter().map(|x| -x).collect();
        let torsion = a
            .torsion
            .iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| (-x).mod_floor(d))
            .collect();
        GroupElement { free, torsion }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// Scalar multiple `n * a`.
    pub fn scale(&self, n: &BigInt, a: &GroupElement) -> GroupElement {
        self.check(a);
        let free = a.free.iter().map(|x| n * x).collect();
        let torsion = a
            .torsion
            .iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| (n * x).mod_floor(d))
            .collect();
        GroupElement { free, torsion }
    }

    fn check(&self, e: &GroupElement) {
        assert_eq!(e.free.len(), self.rank, "element does not belong to group");
        assert_eq!(
            e.torsion.len(),
            self.invariant_factors.len(),
            "element does not belong to group"
        );
    }
}

/// Element of an [`AbelianGroup`], stored as free coordinates plus one
/// reduced residue per invariant factor. Ordering is lexicographic on
/// (free, torsion), which fixes the canonical term order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl GroupElement {
    pub fn free_part(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }
}

/// Cokernel of an integer matrix whose columns are the relations, together
/// with the images of the standard generators.
#[derive(Debug, Clone)]
pub struct Cokernel {
    pub group: AbelianGroup,
    pub images: Vec<GroupElement>,
}

/// Cokernel of a square relation matrix (columns are relations): returns
/// `H = Z^g / col(M)` and the image of each of the `g` generators.
///
/// Generators pinned by a unit entry are eliminated first, in a fixed
/// row-major scan; Smith normal form is only applied to what is left.
/// That keeps the generator images stable when a presentation is extended
/// by a cancelling handle pair, so stabilization acts on the boundary
/// matrix literally as a unit block.
///
/// Fails with [`Error::UnsupportedInput`] when the quotient is finite
/// (b1 = 0): the invariants downstream require positive first Betti number.
pub fn cokernel(m: &IntMatrix) -> Result<Cokernel> {
    assert_eq!(m.rows(), m.cols(), "relation matrix of a balanced presentation is square");
    let g = m.rows();

    // expr[r] = expression of original generator r in the surviving ones
    let mut expr = vec![vec![BigInt::zero(); g]; g];
    for (r, row) in expr.iter_mut().enumerate() {
        row[r] = BigInt::one();
    }
    let mut work = m.clone();
    let mut gen_alive = vec![true; g];
    let mut rel_alive = vec![true; g];

    // Tietze elimination of unit pivots, rescanning from the top left
    loop {
        let mut found = None;
        'scan: for i in 0..g {
            if !gen_alive[i] {
                continue;
            }
            for j in 0..g {
                if !rel_alive[j] {
                    continue;
                }
                let e = work.at(i, j);
                if e.abs().is_one() {
                    found = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((pi, pj)) = found else { break };
        let s = work.at(pi, pj).clone(); // +-1
        // relation pj says: x_pi = -s * sum_{k != pi} work[k][pj] x_k
        let combo: Vec<(usize, BigInt)> = (0..g)
            .filter(|&k| k != pi && gen_alive[k])
            .map(|k| (k, -&s * work.at(k, pj)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        // substitute into the remaining relations
        for j in 0..g {
            if !rel_alive[j] || j == pj {
                continue;
            }
            let coeff = work.at(pi, j).clone();
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in &combo {
                let add = &coeff * c;
                *work.at_mut(*k, j) += add;
            }
            *work.at_mut(pi, j) = BigInt::zero();
        }
        // substitute into the generator expressions
        for row in expr.iter_mut() {
            let coeff = row[pi].clone();
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in &combo {
                row[*k] += &coeff * c;
            }
            row[pi] = BigInt::zero();
        }
        gen_alive[pi] = false;
        rel_alive[pj] = false;
    }

    let gens: Vec<usize> = (0..g).filter(|&i| gen_alive[i]).collect();
    let rels: Vec<usize> = (0..g).filter(|&j| rel_alive[j]).collect();
    let n = gens.len();
    debug_assert_eq!(n, rels.len());

    let mut reduced = IntMatrix::zeros(n, n);
    for (a, &i) in gens.iter().enumerate() {
        for (b, &j) in rels.iter().enumerate() {
            *reduced.at_mut(a, b) = work.at(i, j).clone();
        }
    }

    let snf = smith_normal_form(&reduced);
    let diag = snf.diagonal();
    let one = BigInt::one();
    let torsion_idx: Vec<usize> = (0..n).filter(|&i| diag[i] > one).collect();
    let free_idx: Vec<usize> = (0..n).filter(|&i| diag[i].is_zero()).collect();
    let rank = free_idx.len();
    if rank == 0 {
        return Err(Error::UnsupportedInput(format!(
            "first homology is finite (b1 = 0, torsion order {})",
            diag.iter().product::<BigInt>().abs()
        )));
    }
    let factors: Vec<BigInt> = torsion_idx.iter().map(|&i| diag[i].clone()).collect();
    let group = AbelianGroup::new(rank, factors);

    // image of surviving generator a: coordinates U * e_a, split by diag type
    let surviving_image = |a: usize| -> GroupElement {
        let free = free_idx.iter().map(|&r| snf.u.at(r, a).clone()).collect();
        let torsion = torsion_idx.iter().map(|&r| snf.u.at(r, a).clone()).collect();
        group.element(free, torsion)
    };
    let survivors: Vec<GroupElement> = (0..n).map(surviving_image).collect();

    let images = (0..g)
        .map(|r| {
            let mut acc = group.zero();
            for (a, &i) in gens.iter().enumerate() {
                let c = &expr[r][i];
                if !c.is_zero() {
                    acc = group.add(&acc, &group.scale(c, &survivors[a]));
                }
            }
            acc
        })
        .collect();

    Ok(Cokernel { group, images })
}
