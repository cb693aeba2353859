//! Balanced group presentations coming from Heegaard splittings, their
//! abelianized Fox-derivative boundary matrices, and the combinatorial
//! moves (stabilization, handle slides) used by the invariance suites.
//!
//! A genus-g splitting gives a CW structure with one 0-cell, g 1-cells
//! and g 2-cells; the attaching word of the i-th 2-cell is relator i.
//! Lifting to the maximal abelian cover turns the cellular boundary into
//! a g-by-g matrix over Z[H], whose (i, j) entry is the abelianized Fox
//! derivative of relator i with respect to generator j.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group_ring::GroupRingElt;
use crate::homology::{cokernel, AbelianGroup, GroupElement, IntMatrix};

/// One letter of a relator word: a generator index (0-based) and an
/// exponent restricted to +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

pub type Word = Vec<Letter>;

/// A presentation with as many relators as generators. Words are kept as
/// written; free reduction never changes a Fox derivative, so it is not
/// applied on ingestion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedPresentation {
    genus: usize,
    relators: Vec<Word>,
}

impl BalancedPresentation {
    pub fn new(genus: usize, relators: Vec<Word>) -> Result<Self> {
        if relators.len() != genus {
            return Err(Error::Unbalanced { genus, relators: relators.len() });
        }
        for w in &relators {
            for l in w {
                if l.gen >= genus {
                    return Err(Error::GeneratorOutOfRange {
                        index: l.gen + 1,
                        genus,
                        line: 0,
                        col: 0,
                    });
                }
            }
        }
        Ok(BalancedPresentation { genus, relators })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Exponent-sum matrix: entry (i, j) is the total exponent of
    /// generator j in relator i. This is the boundary map after applying
    /// the augmentation Z[H] -> Z.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let g = self.genus;
        let mut m = IntMatrix::zeros(g, g);
        for (i, w) in self.relators.iter().enumerate() {
            for l in w {
                let delta = if l.inverse { -1 } else { 1 };
                *m.at_mut(i, l.gen) += BigInt::from(delta);
            }
        }
        m
    }

    /// Add a cancelling handle pair: one new generator and the relator
    /// consisting of that generator alone. The boundary matrix of the
    /// result is the old one with a unit block adjoined.
    pub fn stabilize(&self) -> BalancedPresentation {
        let mut relators = self.relators.clone();
        relators.push(vec![Letter { gen: self.genus, inverse: false }]);
        BalancedPresentation { genus: self.genus + 1, relators }
    }
}

/// Presentation file format:
///
/// ```text
/// genus: <g>
/// relators:
///   x1 x2 x1^-1 x2^-1
///   -
/// ```
///
/// One line per relator, tokens `x<k>` or `x<k>^-1`, a lone `-` for the
/// empty word. Lines starting with `#` are comments.
impl fmt::Display for BalancedPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus: {}", self.genus)?;
        writeln!(f, "relators:")?;
        for w in &self.relators {
            if w.is_empty() {
                writeln!(f, "  -")?;
            } else {
                let tokens: Vec<String> = w
                    .iter()
                    .map(|l| {
                        if l.inverse {
                            format!("x{}^-1", l.gen + 1)
                        } else {
                            format!("x{}", l.gen + 1)
                        }
                    })
                    .collect();
                writeln!(f, "  {}", tokens.join(" "))?;
            }
        }
        Ok(())
    }
}

fn parse_err(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, col, message: message.into() }
}

/// Parse the presentation file format. Errors carry 1-based line and
/// column positions.
pub fn parse_presentation(text: &str) -> Result<BalancedPresentation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });

    let (lineno, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty input, expected `genus: <g>`"))?;
    let header_t = header.trim();
    let genus: usize = match header_t.strip_prefix("genus:") {
        Some(rest) => rest.trim().parse().map_err(|_| {
            parse_err(lineno, header.find(':').map_or(1, |c| c + 2), "invalid genus value")
        })?,
        None => return Err(parse_err(lineno, 1, "expected `genus: <g>`")),
    };
    if genus == 0 {
        return Err(parse_err(lineno, 1, "genus must be at least 1"));
    }

    let (lineno, relhdr) = lines
        .next()
        .ok_or_else(|| parse_err(lineno, 1, "missing `relators:` section"))?;
    if relhdr.trim() != "relators:" {
        return Err(parse_err(lineno, 1, "expected `relators:`"));
    }

    let mut relators: Vec<Word> = Vec::new();
    let mut last_line = lineno;
    for (lineno, line) in lines {
        last_line = lineno;
        if relators.len() == genus {
            return Err(Error::Unbalanced { genus, relators: relators.len() + 1 });
        }
        let trimmed = line.trim();
        if trimmed == "-" {
            relators.push(Vec::new());
            continue;
        }
        let mut word = Vec::new();
        let mut col = 1;
        for raw in line.split_whitespace() {
            // recover the column of this token for error reporting
            col = line[col - 1..]
                .find(raw)
                .map(|p| p + col)
                .unwrap_or(col);
            let (body, inverse) = match raw.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (raw, false),
            };
            let idx: usize = body
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| {
                    parse_err(lineno, col, format!("invalid token `{raw}`, expected x<k> or x<k>^-1"))
                })?;
            if idx == 0 || idx > genus {
                return Err(Error::GeneratorOutOfRange { index: idx, genus, line: lineno, col });
            }
            word.push(Letter { gen: idx - 1, inverse });
            col += raw.len();
        }
        relators.push(word);
    }
    if relators.len() != genus {
        return Err(parse_err(
            last_line,
            1,
            format!("expected {} relator lines, found {}", genus, relators.len()),
        ));
    }
    BalancedPresentation::new(genus, relators)
}

/// Abelianized Fox derivative of a word with respect to generator `j`,
/// where `images` assigns each generator its class in `group`.
///
/// Satisfies `D_j(empty) = 0`, `D_j(x_k w) = delta_jk + [t_k] D_j(w)` and
/// `D_j(x_k^-1 w) = -delta_jk [t_k]^-1 + [t_k]^-1 D_j(w)`.
pub fn fox_derivative_abelian(
    word: &Word,
    j: usize,
    group: &AbelianGroup,
    images: &[GroupElement],
) -> GroupRingElt {
    let mut out = GroupRingElt::zero(group.clone());
    let mut prefix = group.zero();
    for l in word {
        let t = &images[l.gen];
        if l.inverse {
            let next = group.sub(&prefix, t);
            if l.gen == j {
                out = out.add(&GroupRingElt::monomial(
                    group.clone(),
                    next.clone(),
                    BigInt::from(-1),
                ));
            }
            prefix = next;
        } else {
            if l.gen == j {
                out = out.add(&GroupRingElt::monomial(
                    group.clone(),
                    prefix.clone(),
                    BigInt::one(),
                ));
            }
            prefix = group.add(&prefix, t);
        }
    }
    out
}

/// Image of a whole word in the abelianization.
pub fn word_image(word: &Word, group: &AbelianGroup, images: &[GroupElement]) -> GroupElement {
    let mut acc = group.zero();
    for l in word {
        if l.inverse {
            acc = group.sub(&acc, &images[l.gen]);
        } else {
            acc = group.add(&acc, &images[l.gen]);
        }
    }
    acc
}

/// The H-equivariant boundary map of the maximal abelian cover as a
/// g-by-g matrix over Z[H], plus the generator images defining H.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    group: AbelianGroup,
    generator_images: Vec<GroupElement>,
    entries: Vec<Vec<GroupRingElt>>,
}

impl BoundaryMatrix {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn genus(&self) -> usize {
        self.entries.len()
    }

    pub fn generator_images(&self) -> &[GroupElement] {
        &self.generator_images
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElt {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<GroupRingElt>] {
        &self.entries
    }

    /// Construct directly from parts. Used by tests and by the move
    /// operations; `boundary_matrix` is the entry point for presentations.
    pub fn from_parts(
        group: AbelianGroup,
        generator_images: Vec<GroupElement>,
        entries: Vec<Vec<GroupRingElt>>,
    ) -> Self {
        let g = entries.len();
        assert!(entries.iter().all(|r| r.len() == g), "boundary matrix must be square");
        assert_eq!(generator_images.len(), g);
        BoundaryMatrix { group, generator_images, entries }
    }

    /// Residue of the Fox fundamental identity for row `i`:
    /// sum_j entry(i,j) * ([t_j] - 1). Zero exactly when the row comes
    /// from a relator of the presentation.
    pub fn fundamental_identity_residue(&self, i: usize) -> GroupRingElt {
        let g = self.genus();
        let mut acc = GroupRingElt::zero(self.group.clone());
        for j in 0..g {
            let tj = GroupRingElt::monomial(
                self.group.clone(),
                self.generator_images[j].clone(),
                BigInt::one(),
            );
            let factor = tj.sub(&GroupRingElt::one(self.group.clone()));
            acc = acc.add(&self.entries[i][j].mul(&factor));
        }
        acc
    }

    /// row_i += sign * [h] * row_j, the chain-level effect of sliding
    /// beta-handle i over beta-handle j.
    pub fn handle_slide_rows(
        &self,
        i: usize,
        j: usize,
        sign: i8,
        h: &GroupElement,
    ) -> Result<BoundaryMatrix> {
        if i == j {
            return Err(Error::InvalidSlide(i));
        }
        let g = self.genus();
        assert!(i < g && j < g, "slide index out of range");
        let coeff = BigInt::from(sign as i64);
        let mut out = self.clone();
        for c in 0..g {
            let shifted = self.entries[j][c].mul_monomial(h, &coeff);
            out.entries[i][c] = self.entries[i][c].add(&shifted);
        }
        Ok(out)
    }

    /// col_i += sign * [h] * col_j, the alpha-curve counterpart. Applied
    /// at the matrix level only: the generator images are left untouched,
    /// so the fundamental identity is not expected to survive this move,
    /// while the gcd of the projected minors does (up to unit).
    pub fn handle_slide_cols(
        &self,
        i: usize,
        j: usize,
        sign: i8,
        h: &GroupElement,
    ) -> Result<BoundaryMatrix> {
        if i == j {
            return Err(Error::InvalidSlide(i));
        }
        let g = self.genus();
        assert!(i < g && j < g, "slide index out of range");
        let coeff = BigInt::from(sign as i64);
        let mut out = self.clone();
        for r in 0..g {
            let shifted = self.entries[r][j].mul_monomial(h, &coeff);
            out.entries[r][i] = self.entries[r][i].add(&shifted);
        }
        Ok(out)
    }
}

/// Compute the boundary matrix of the maximal abelian cover for a
/// balanced presentation: entry (i, j) is the abelianized Fox derivative
/// of relator i with respect to generator j, over H = H_1 as computed by
/// [`cokernel`] of the exponent matrix.
pub fn boundary_matrix(p: &BalancedPresentation) -> Result<BoundaryMatrix> {
    let relations = p.exponent_matrix().transpose();
    let ck = cokernel(&relations)?;
    let g = p.genus();
    let entries = (0..g)
        .map(|i| {
            (0..g)
                .map(|j| fox_derivative_abelian(&p.relators()[i], j, &ck.group, &ck.images))
                .collect()
        })
        .collect();
    Ok(BoundaryMatrix {
        group: ck.group,
        generator_images: ck.images,
        entries,
    })
}

/// Deterministic random presentation for the property suites: `g`
/// relators of length up to `max_len`, reproducible from the seed.
pub fn random_presentation(g: usize, max_len: usize, seed: u64) -> BalancedPresentation {
    assert!(g >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_presentation_with(&mut rng, g, max_len)
}

/// Same as [`random_presentation`] but drawing from a caller-owned RNG,
/// so suites can generate many presentations from one stream.
pub fn random_presentation_with<R: Rng>(rng: &mut R, g: usize, max_len: usize) -> BalancedPresentation {
    let relators = (0..g)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            (0..len)
                .map(|_| Letter {
                    gen: rng.gen_range(0..g),
                    inverse: rng.gen_bool(0.5),
                })
                .collect()
        })
        .collect();
    BalancedPresentation { genus: g, relators }
}
