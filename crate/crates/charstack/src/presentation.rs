//! Finitely presented groups and their representations.
//!
//! Words are freely reduced sequences of signed letters; letter `i > 0` is
//! the `i`-th generator and `-i` its inverse. The text form writes
//! generator `1..=26` as `a..=z` and an inverse as the uppercase letter,
//! so the genus-one surface relator reads `abAB`.
//!
//! A [`Representation`] sends generators to group elements with each
//! relator landing on the identity, and carries the free differential
//! calculus of its words through the adjoint action: [`Representation::fox_row`]
//! is the block row of Fox derivatives, and the fundamental identity
//! `fox_row(w) * defect_stack() = defect(w)` is what makes the tangent
//! complexes downstream square to zero.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::lie::{GroupElement, LieContext};
use crate::linalg::{Q, QMatrix};
use crate::{Error, Result};

/// A freely reduced word in a free group with numbered generators.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    /// Build from signed letters, reducing `x x^-1` cancellations.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Result<Word> {
        let mut reduced: Vec<i32> = Vec::new();
        for l in letters {
            if l == 0 {
                return Err(Error::InvalidWord("letter 0 has no meaning".into()));
            }
            if reduced.last() == Some(&-l) {
                reduced.pop();
            } else {
                reduced.push(l);
            }
        }
        Ok(Word { letters: reduced })
    }

    pub fn identity() -> Word {
        Word { letters: Vec::new() }
    }

    /// Parse `"a b A B"` or the compact `"abAB"`; case selects the sign.
    pub fn parse(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            for c in token.chars() {
                if c.is_ascii_lowercase() {
                    letters.push((c as i32) - ('a' as i32) + 1);
                } else if c.is_ascii_uppercase() {
                    letters.push(-((c as i32) - ('A' as i32) + 1));
                } else {
                    return Err(Error::InvalidWord(format!(
                        "cannot read {c:?} as a generator letter"
                    )));
                }
            }
        }
        Word::new(letters)
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, or 0 for the empty word.
    pub fn max_letter(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(other.letters.iter()).copied())
            .expect("letters of reduced words are nonzero")
    }

    /// `a b a^-1 b^-1` for two single generators.
    pub fn commutator(a: i32, b: i32) -> Result<Word> {
        Word::new([a, b, -a, -b])
    }

    /// The canonical closed-surface relator `[x1,x2][x3,x4]...` on `2g`
    /// generators.
    pub fn surface_relator(genus: usize) -> Word {
        let mut letters = Vec::with_capacity(4 * genus);
        for i in 0..genus {
            let a = (2 * i + 1) as i32;
            let b = (2 * i + 2) as i32;
            letters.extend([a, b, -a, -b]);
        }
        Word { letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.letters {
            let idx = l.unsigned_abs();
            if idx > 26 {
                write!(f, "{}x{}{}", if l < 0 { "-" } else { "" }, idx, " ")?;
            } else {
                let base = if l > 0 { b'a' } else { b'A' };
                write!(f, "{}", (base + (idx as u8 - 1)) as char)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Word::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Generators, relators and a chosen tuple of boundary words.
///
/// Boundary words are not relations; they mark the free homotopy classes of
/// boundary circles for the constructions that need them (restriction maps,
/// relative complexes, symplectic leaves).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Word>,
    #[serde(default)]
    boundary_words: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<GroupPresentation> {
        GroupPresentation::with_boundary(generators, relators, Vec::new())
    }

    pub fn with_boundary(
        generators: usize,
        relators: Vec<Word>,
        boundary_words: Vec<Word>,
    ) -> Result<GroupPresentation> {
        for w in relators.iter().chain(boundary_words.iter()) {
            if w.max_letter() > generators {
                return Err(Error::InvalidPresentation(format!(
                    "word {w} uses a generator beyond the declared {generators}"
                )));
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
            boundary_words,
        })
    }

    /// Free group on `n` generators.
    pub fn free(n: usize) -> GroupPresentation {
        GroupPresentation {
            generators: n,
            relators: Vec::new(),
            boundary_words: Vec::new(),
        }
    }

    /// Fundamental group of the closed orientable surface of the given
    /// genus, in the canonical one-relator form.
    pub fn closed_surface(genus: usize) -> Result<GroupPresentation> {
        if genus == 0 {
            return Err(Error::InvalidPresentation(
                "genus zero has the trivial group; use an explicit presentation".into(),
            ));
        }
        GroupPresentation::new(2 * genus, vec![Word::surface_relator(genus)])
    }

    /// Free group on `2g + b - 1` generators with the `b` boundary words of
    /// a genus-`g` surface with `b > 0` boundary circles: the first `b - 1`
    /// are free generators, the last is the word closing up the canonical
    /// relator.
    pub fn surface_with_boundary(genus: usize, boundary: usize) -> Result<GroupPresentation> {
        if boundary == 0 {
            return Err(Error::InvalidPresentation(
                "use closed_surface when there is no boundary".into(),
            ));
        }
        let gens = 2 * genus + boundary - 1;
        let mut words: Vec<Word> = (1..boundary)
            .map(|i| Word::new([(2 * genus + i) as i32]).expect("single letters are nonzero"))
            .collect();
        // Last boundary word closes the relation
        // [x1,x2]...[x_{2g-1},x_{2g}] c_1 ... c_b = 1.
        let mut closing = Word::surface_relator(genus);
        for w in &words {
            closing = closing.concat(w);
        }
        words.push(closing.inverse());
        GroupPresentation::with_boundary(gens, Vec::new(), words)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn boundary_words(&self) -> &[Word] {
        &self.boundary_words
    }

    /// Genus if this is exactly the canonical closed-surface presentation.
    pub fn closed_surface_genus(&self) -> Option<usize> {
        if self.generators == 0 || self.generators % 2 != 0 {
            return None;
        }
        if self.relators.len() != 1 || !self.boundary_words.is_empty() {
            return None;
        }
        let genus = self.generators / 2;
        (self.relators[0] == Word::surface_relator(genus)).then_some(genus)
    }
}

/// A homomorphism from a presented group into SL or GL, recorded by the
/// generator images. Relators are checked on construction.
#[derive(Clone, Debug)]
pub struct Representation {
    presentation: GroupPresentation,
    ctx: Arc<LieContext>,
    images: Vec<GroupElement>,
    inverses: Vec<GroupElement>,
    ad: Vec<QMatrix>,
    ad_inv: Vec<QMatrix>,
}

impl Representation {
    pub fn new(
        presentation: GroupPresentation,
        images: Vec<GroupElement>,
    ) -> Result<Representation> {
        if images.len() != presentation.generators() {
            return Err(Error::InvalidPresentation(format!(
                "{} generator images supplied for {} generators",
                images.len(),
                presentation.generators()
            )));
        }
        let ctx = match images.first() {
            Some(g) => g.context().clone(),
            None => {
                return Err(Error::InvalidPresentation(
                    "a representation needs at least one generator".into(),
                ))
            }
        };
        for g in &images {
            if g.context() != &ctx {
                return Err(Error::ContextMismatch);
            }
        }
        let inverses: Vec<GroupElement> = images.iter().map(|g| g.inverse()).collect();
        let ad: Vec<QMatrix> = images.iter().map(|g| g.adjoint()).collect();
        let ad_inv: Vec<QMatrix> = inverses.iter().map(|g| g.adjoint()).collect();
        let rep = Representation {
            presentation,
            ctx,
            images,
            inverses,
            ad,
            ad_inv,
        };
        for (index, r) in rep.presentation.relators().iter().enumerate() {
            if !rep.evaluate(r).is_identity() {
                return Err(Error::RelatorViolated { index });
            }
        }
        Ok(rep)
    }

    /// Every generator to the identity.
    pub fn trivial(presentation: GroupPresentation, ctx: &Arc<LieContext>) -> Result<Representation> {
        let images = (0..presentation.generators())
            .map(|_| GroupElement::identity(ctx))
            .collect();
        Representation::new(presentation, images)
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn context(&self) -> &Arc<LieContext> {
        &self.ctx
    }

    pub fn generator_image(&self, i: usize) -> &GroupElement {
        &self.images[i]
    }

    pub fn generator_images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn evaluate(&self, word: &Word) -> GroupElement {
        let mut acc = GroupElement::identity(&self.ctx);
        for &l in word.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let factor = if l > 0 { &self.images[i] } else { &self.inverses[i] };
            acc = acc.mul(factor).expect("same context by construction");
        }
        acc
    }

    /// Cached adjoint matrix of one generator image.
    pub fn generator_adjoint(&self, i: usize) -> &QMatrix {
        &self.ad[i]
    }

    /// Cached adjoint matrix of one generator's inverse.
    pub fn generator_adjoint_inv(&self, i: usize) -> &QMatrix {
        &self.ad_inv[i]
    }

    /// Value on `word` of the crossed homomorphism with the given values on
    /// generators (`u` is the stacked coordinate vector, one block of
    /// `dim` entries per generator). Same linear map as
    /// `fox_row(word) * u`, computed by one scan.
    pub fn cocycle_value(&self, word: &Word, u: &[Q]) -> Vec<Q> {
        let m = self.ctx.dim();
        debug_assert_eq!(u.len(), m * self.presentation.generators());
        let mut val = vec![Q::zero(); m];
        let mut prefix = QMatrix::identity(m);
        for &l in word.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let block = &u[i * m..(i + 1) * m];
            if l > 0 {
                let move_by = prefix.mul_vec(block);
                for (acc, t) in val.iter_mut().zip(move_by) {
                    *acc += t;
                }
                prefix = prefix.mul(&self.ad[i]);
            } else {
                prefix = prefix.mul(&self.ad_inv[i]);
                let move_by = prefix.mul_vec(block);
                for (acc, t) in val.iter_mut().zip(move_by) {
                    *acc -= t;
                }
            }
        }
        val
    }

    /// Adjoint matrix of the image of a word; a product of cached generator
    /// adjoints since the adjoint action is multiplicative.
    pub fn ad_of_word(&self, word: &Word) -> QMatrix {
        let mut acc = QMatrix::identity(self.ctx.dim());
        for &l in word.letters() {
            let i = l.unsigned_abs() as usize - 1;
            acc = acc.mul(if l > 0 { &self.ad[i] } else { &self.ad_inv[i] });
        }
        acc
    }

    /// Block row `[D_1 w | ... | D_p w]` of Fox derivatives pushed through
    /// the adjoint representation; each block is `dim x dim`.
    ///
    /// Scanning left to right with `P` the adjoint of the prefix already
    /// consumed: a positive letter `i` contributes `+P` to block `i` before
    /// extending the prefix, a negative letter extends the prefix by the
    /// inverse first and then contributes `-P`.
    pub fn fox_row(&self, word: &Word) -> QMatrix {
        let m = self.ctx.dim();
        let p = self.presentation.generators();
        let mut blocks: Vec<QMatrix> = (0..p).map(|_| QMatrix::zeros(m, m)).collect();
        let mut prefix = QMatrix::identity(m);
        for &l in word.letters() {
            let i = l.unsigned_abs() as usize - 1;
            if l > 0 {
                blocks[i] = blocks[i].add(&prefix);
                prefix = prefix.mul(&self.ad[i]);
            } else {
                prefix = prefix.mul(&self.ad_inv[i]);
                blocks[i] = blocks[i].sub(&prefix);
            }
        }
        let refs: Vec<&QMatrix> = blocks.iter().collect();
        QMatrix::block(&[refs])
    }

    /// Fox rows of several words stacked vertically.
    pub fn fox_jacobian(&self, words: &[Word]) -> QMatrix {
        let m = self.ctx.dim();
        let p = self.presentation.generators();
        if words.is_empty() {
            return QMatrix::zeros(0, p * m);
        }
        let rows: Vec<QMatrix> = words.iter().map(|w| self.fox_row(w)).collect();
        let mut acc = rows[0].clone();
        for r in &rows[1..] {
            acc = acc.vstack(r);
        }
        acc
    }

    /// The defects `Id - Ad` of the generator images stacked vertically:
    /// the coboundary from the algebra into cochains on generators.
    pub fn defect_stack(&self) -> QMatrix {
        let m = self.ctx.dim();
        let p = self.presentation.generators();
        let mut acc = QMatrix::zeros(0, m);
        for i in 0..p {
            let defect = QMatrix::identity(m).sub(&self.ad[i]);
            acc = if acc.rows() == 0 { defect } else { acc.vstack(&defect) };
        }
        if p == 0 {
            QMatrix::zeros(0, m)
        } else {
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieContext;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn words_parse_reduce_and_display() {
        let w = Word::parse("a b A B").unwrap();
        assert_eq!(w.letters(), &[1, 2, -1, -2]);
        assert_eq!(w.to_string(), "abAB");
        assert_eq!(Word::parse("abAB").unwrap(), w);
        assert!(Word::parse("aA").unwrap().is_empty());
        assert_eq!(Word::parse("abBA").unwrap(), Word::identity());
        assert_eq!(Word::parse("aab").unwrap().letters(), &[1, 1, 2]);
        assert_eq!(Word::identity().to_string(), "1");
        assert!(Word::parse("a3").is_err());
    }

    #[test]
    fn inverse_and_concat_satisfy_group_laws() {
        let w = Word::parse("abA").unwrap();
        assert_eq!(w.inverse().to_string(), "aBA");
        assert!(w.concat(&w.inverse()).is_empty());
        let u = Word::parse("ba").unwrap();
        assert_eq!(w.concat(&u), Word::parse("abAba").unwrap());
    }

    #[test]
    fn surface_relators_are_recognized_exactly() {
        assert_eq!(Word::surface_relator(1).to_string(), "abAB");
        assert_eq!(Word::surface_relator(2).to_string(), "abABcdCD");
        let p = GroupPresentation::closed_surface(2).unwrap();
        assert_eq!(p.closed_surface_genus(), Some(2));
        assert_eq!(p.generators(), 4);
        // A different one-relator presentation on four generators is not a
        // canonical surface.
        let q =
            GroupPresentation::new(4, vec![Word::parse("abcd").unwrap()]).unwrap();
        assert_eq!(q.closed_surface_genus(), None);
        assert_eq!(GroupPresentation::free(2).closed_surface_genus(), None);
    }

    #[test]
    fn surface_with_boundary_words_multiply_to_the_relator() {
        // One boundary circle on a genus-1 surface: the single boundary word
        // is the commutator.
        let p = GroupPresentation::surface_with_boundary(1, 1).unwrap();
        assert_eq!(p.generators(), 2);
        assert!(p.relators().is_empty());
        assert_eq!(p.boundary_words().len(), 1);
        assert_eq!(p.boundary_words()[0], Word::surface_relator(1).inverse());

        // Pair of pants: genus 0, three boundary circles, free of rank 2.
        let pants = GroupPresentation::surface_with_boundary(0, 3).unwrap();
        assert_eq!(pants.generators(), 2);
        let b = pants.boundary_words();
        assert_eq!(b.len(), 3);
        // The relation that would close the surface: R c1 c2 c3 = 1.
        let mut total = Word::surface_relator(0);
        for w in b {
            total = total.concat(w);
        }
        assert!(total.is_empty(), "got {total}");
        // Same closing identity on a genus-2 surface with two circles.
        let two = GroupPresentation::surface_with_boundary(2, 2).unwrap();
        let mut total = Word::surface_relator(2);
        for w in two.boundary_words() {
            total = total.concat(w);
        }
        assert!(total.is_empty(), "got {total}");
    }

    #[test]
    fn presentation_rejects_out_of_range_letters() {
        let err = GroupPresentation::new(1, vec![Word::parse("ab").unwrap()]);
        assert!(matches!(err, Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn representation_checks_relators() {
        let ctx = LieContext::sl(2).unwrap();
        let pres = GroupPresentation::closed_surface(1).unwrap();
        // Non-commuting images violate the commutator relator.
        let a = GroupElement::parse(&ctx, "1 1; 0 1").unwrap();
        let b = GroupElement::parse(&ctx, "0 1; -1 0").unwrap();
        let err = Representation::new(pres.clone(), vec![a.clone(), b]);
        assert!(matches!(err, Err(Error::RelatorViolated { index: 0 })));
        // Commuting images satisfy it.
        let d = GroupElement::parse(&ctx, "2 0; 0 1/2").unwrap();
        let d2 = GroupElement::parse(&ctx, "4 0; 0 1/4").unwrap();
        assert!(Representation::new(pres, vec![d, d2]).is_ok());
        assert!(Representation::new(GroupPresentation::free(1), vec![a]).is_ok());
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let ctx = LieContext::sl(2).unwrap();
        let a = GroupElement::parse(&ctx, "1 1; 0 1").unwrap();
        let b = GroupElement::parse(&ctx, "1 0; 1 1").unwrap();
        let rep = Representation::new(GroupPresentation::free(2), vec![a.clone(), b.clone()]).unwrap();
        let w = Word::parse("abA").unwrap();
        let expect = a.mul(&b).unwrap().mul(&a.inverse()).unwrap();
        assert_eq!(rep.evaluate(&w).matrix(), expect.matrix());
        assert!(rep.evaluate(&Word::identity()).is_identity());
        assert_eq!(rep.ad_of_word(&w), expect.adjoint());
    }

    fn random_word(rng: &mut ChaCha8Rng, gens: usize, len: usize) -> Word {
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..=gens as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        Word::new(letters).unwrap()
    }

    fn random_rep(rng: &mut ChaCha8Rng, ctx: &Arc<LieContext>, gens: usize) -> Representation {
        let n = ctx.n();
        let images: Vec<GroupElement> = (0..gens)
            .map(|_| {
                let mut m = QMatrix::identity(n);
                for _ in 0..3 {
                    let i = rng.gen_range(0..n);
                    let mut j = rng.gen_range(0..n);
                    if i == j {
                        j = (j + 1) % n;
                    }
                    let mut s = QMatrix::identity(n);
                    s[(i, j)] = crate::linalg::q(rng.gen_range(-2i64..=2), 1);
                    m = m.mul(&s);
                }
                GroupElement::new(ctx, m).unwrap()
            })
            .collect();
        Representation::new(GroupPresentation::free(gens), images).unwrap()
    }

    #[test]
    fn fox_rows_of_single_letters() {
        let ctx = LieContext::sl(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rep = random_rep(&mut rng, &ctx, 2);
        let m = ctx.dim();
        let row_a = rep.fox_row(&Word::parse("a").unwrap());
        let mut expect = QMatrix::identity(m).hstack(&QMatrix::zeros(m, m));
        assert_eq!(row_a, expect);
        let row_inv = rep.fox_row(&Word::parse("A").unwrap());
        expect = rep
            .ad_of_word(&Word::parse("A").unwrap())
            .neg()
            .hstack(&QMatrix::zeros(m, m));
        assert_eq!(row_inv, expect);
    }

    #[test]
    fn fox_satisfies_the_product_rule_and_fundamental_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ctx in [LieContext::sl(2).unwrap(), LieContext::sl(3).unwrap()] {
            let rep = random_rep(&mut rng, &ctx, 3);
            let stack = rep.defect_stack();
            let m = ctx.dim();
            for _ in 0..6 {
                let u = random_word(&mut rng, 3, 5);
                let v = random_word(&mut rng, 3, 5);
                // Product rule: D(uv) = D(u) + Ad(u) D(v).
                let lhs = rep.fox_row(&u.concat(&v));
                let rhs = rep.fox_row(&u).add(&rep.ad_of_word(&u).mul(&rep.fox_row(&v)));
                assert_eq!(lhs, rhs);
                // Fundamental identity: the Fox row applied to the stacked
                // generator defects recovers the defect of the word.
                let w = u.concat(&v);
                let defect_w = QMatrix::identity(m).sub(&rep.ad_of_word(&w));
                assert_eq!(rep.fox_row(&w).mul(&stack), defect_w);
            }
        }
    }

    #[test]
    fn trivial_representation_abelianizes_fox_rows() {
        let ctx = LieContext::sl(2).unwrap();
        let rep =
            Representation::trivial(GroupPresentation::free(2), &ctx).unwrap();
        let m = ctx.dim();
        // At the identity every prefix adjoint is 1, so each block counts
        // the signed occurrences of its generator.
        let row = rep.fox_row(&Word::parse("abaB").unwrap());
        let two = QMatrix::identity(m).scale(&crate::linalg::q_int(2));
        let zero = QMatrix::zeros(m, m);
        assert_eq!(row, two.hstack(&zero));
    }

    #[test]
    fn word_serde_uses_the_text_form() {
        let w = Word::parse("abAB").unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, "\"abAB\"");
        let back: Word = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }
}
