//! Moduli of local systems on surfaces: tangent complexes, duality
//! pairings, the boundary restriction, and symplectic-leaf models.
//!
//! Every construction here is a finite complex of exact rational vector
//! spaces attached to a representation of a presented group. Degrees are
//! arranged so that degree `n` of a tangent complex matches group cohomology
//! `H^(n+1)`: degree -1 holds infinitesimal automorphisms, degree 0 holds
//! first-order deformations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::complex::{ChainMap, CochainComplex};
use crate::lie::{GroupElement, LieContext};
use crate::linalg::{Q, QMatrix};
use crate::presentation::{Representation, Word};
use crate::{Error, Result};

/// Tangent complex of the moduli of representations at `rep`:
/// `g -> g^p -> g^q` in degrees -1, 0, 1, with the stacked generator
/// defects followed by the Fox Jacobian of the relators. For a free
/// presentation the complex stops at degree 0.
pub fn tangent_complex(rep: &Representation) -> Result<CochainComplex> {
    let m = rep.context().dim();
    let p = rep.presentation().generators();
    let relators = rep.presentation().relators();
    let stack = rep.defect_stack();
    if relators.is_empty() {
        CochainComplex::new(-1, vec![m, p * m], vec![stack])
    } else {
        let jac = rep.fox_jacobian(relators);
        CochainComplex::new(
            -1,
            vec![m, p * m, relators.len() * m],
            vec![stack, jac],
        )
    }
}

/// Tangent complex of the moduli of local systems on the `m`-sphere.
///
/// The circle (`m = 1`) carries an optional monodromy and yields
/// `g -> g` with the monodromy defect. Higher spheres are simply
/// connected: the algebra sits in degrees -1 and `m - 1` with zero
/// differentials, and a nontrivial monodromy is rejected.
pub fn sphere_tangent(
    ctx: &Arc<LieContext>,
    m: usize,
    monodromy: Option<&GroupElement>,
) -> Result<CochainComplex> {
    if m == 0 {
        return Err(Error::SphereDimension);
    }
    if let Some(g) = monodromy {
        if g.context() != ctx {
            return Err(Error::ContextMismatch);
        }
    }
    let d = ctx.dim();
    if m == 1 {
        let defect = match monodromy {
            Some(g) => g.defect(),
            None => QMatrix::zeros(d, d),
        };
        return CochainComplex::new(-1, vec![d, d], vec![defect]);
    }
    if let Some(g) = monodromy {
        if !g.is_identity() {
            return Err(Error::InvalidElement(
                "spheres of dimension at least two are simply connected and admit no monodromy"
                    .into(),
            ));
        }
    }
    let mut dims = vec![0usize; m + 1];
    dims[0] = d;
    dims[m] = d;
    let diffs = (0..m)
        .map(|k| QMatrix::zeros(dims[k + 1], dims[k]))
        .collect();
    CochainComplex::new(-1, dims, diffs)
}

/// Monodromies of the boundary words.
pub fn boundary_monodromies(rep: &Representation) -> Vec<GroupElement> {
    rep.presentation()
        .boundary_words()
        .iter()
        .map(|w| rep.evaluate(w))
        .collect()
}

fn circle_sum(rep: &Representation) -> Result<CochainComplex> {
    let mus = boundary_monodromies(rep);
    let m = rep.context().dim();
    let mut acc: Option<CochainComplex> = None;
    for mu in &mus {
        let circle = CochainComplex::new(-1, vec![m, m], vec![mu.defect()])?;
        acc = Some(match acc {
            Some(c) => c.direct_sum(&circle),
            None => circle,
        });
    }
    acc.ok_or(Error::NoBoundary)
}

/// Restriction from the tangent complex of the surface to the sum of the
/// boundary circle complexes. Degree -1 repeats an algebra element on each
/// circle; degree 0 is the Fox Jacobian of the boundary words. The squares
/// commute by the fundamental identity of the free differential calculus.
pub fn restriction_map(rep: &Representation) -> Result<ChainMap> {
    let words = rep.presentation().boundary_words();
    if words.is_empty() {
        return Err(Error::NoBoundary);
    }
    let m = rep.context().dim();
    let source = tangent_complex(rep)?;
    let target = circle_sum(rep)?;
    let mut repeat = QMatrix::identity(m);
    for _ in 1..words.len() {
        repeat = repeat.vstack(&QMatrix::identity(m));
    }
    let jac = rep.fox_jacobian(words);
    let comps: BTreeMap<i64, QMatrix> = [(-1, repeat), (0, jac)].into_iter().collect();
    ChainMap::new(source, target, comps)
}

/// Relative tangent complex of the surface modulo its boundary, in degrees
/// 0 through 2: the homotopy fiber of [`restriction_map`] shifted so the
/// duality `dim H^i = dim H^(1-i)(tangent)` reads off directly.
pub fn relative_complex(rep: &Representation) -> Result<CochainComplex> {
    let r = restriction_map(rep)?.fiber().shift(-1);
    if r.lo() != 0 {
        return Err(Error::Internal(
            "relative complex must start in degree 0".into(),
        ));
    }
    Ok(r)
}

/// `v(l)` for a single signed letter `l`, from stacked generator values.
fn letter_value(rep: &Representation, l: i32, v: &[Q]) -> Vec<Q> {
    let m = rep.context().dim();
    let i = l.unsigned_abs() as usize - 1;
    let block = &v[i * m..(i + 1) * m];
    if l > 0 {
        block.to_vec()
    } else {
        rep.generator_adjoint_inv(i)
            .mul_vec(block)
            .into_iter()
            .map(|x| -x)
            .collect()
    }
}

/// The staircase sum over one word:
/// `sum_k < u(prefix_k), Ad(prefix_k) v(letter_(k+1)) >`.
///
/// This is the evaluation of the cup product of two crossed homomorphisms
/// on the 2-chain that fills the word, scanned in a single pass.
fn staircase_sum(rep: &Representation, word: &Word, u: &[Q], v: &[Q]) -> Q {
    let ctx = rep.context();
    let m = ctx.dim();
    let letters = word.letters();
    let mut total = Q::zero();
    if letters.len() < 2 {
        return total;
    }
    let mut val_u = vec![Q::zero(); m];
    let mut prefix = QMatrix::identity(m);
    for k in 0..letters.len() - 1 {
        let l = letters[k];
        let i = l.unsigned_abs() as usize - 1;
        let block = &u[i * m..(i + 1) * m];
        if l > 0 {
            for (a, b) in val_u.iter_mut().zip(prefix.mul_vec(block)) {
                *a += b;
            }
            prefix = prefix.mul(rep.generator_adjoint(i));
        } else {
            prefix = prefix.mul(rep.generator_adjoint_inv(i));
            for (a, b) in val_u.iter_mut().zip(prefix.mul_vec(block)) {
                *a -= b;
            }
        }
        let vl = letter_value(rep, letters[k + 1], v);
        total += ctx.pair(&val_u, &prefix.mul_vec(&vl));
    }
    total
}

/// The symplectic product of two degree-0 cochains of the tangent complex
/// of a closed surface: the staircase sum over the canonical relator plus
/// one trace-form correction per generator. Antisymmetric and independent
/// of representatives exactly when both arguments are cocycles.
pub fn goldman_product(rep: &Representation, u: &[Q], v: &[Q]) -> Result<Q> {
    let pres = rep.presentation();
    let genus = pres.closed_surface_genus().ok_or_else(|| {
        Error::NotSurfacePresentation(
            "the symplectic pairing needs the canonical closed-surface presentation".into(),
        )
    })?;
    let ctx = rep.context();
    let m = ctx.dim();
    let p = 2 * genus;
    if u.len() != p * m || v.len() != p * m {
        return Err(Error::DimMismatch(format!(
            "cochains must have {} entries, got {} and {}",
            p * m,
            u.len(),
            v.len()
        )));
    }
    let relator = &pres.relators()[0];
    let mut total = staircase_sum(rep, relator, u, v);
    // Each generator crosses its own inverse once in the canonical relator:
    // one pairing correction per handle side.
    for x in 0..p {
        total += ctx.pair(&u[x * m..(x + 1) * m], &v[x * m..(x + 1) * m]);
    }
    Ok(total)
}

/// The symplectic form on first cohomology of a closed surface.
#[derive(Clone, Debug, Serialize)]
pub struct GoldmanReport {
    /// Matrix of the form in the canonical cohomology basis of degree 0 of
    /// the tangent complex.
    pub matrix: QMatrix,
    pub dim: usize,
    pub nondegenerate: bool,
}

/// Compute the symplectic form on the canonical basis of `H^0` of the
/// tangent complex of a closed surface.
pub fn goldman_pairing(rep: &Representation) -> Result<GoldmanReport> {
    let t = tangent_complex(rep)?;
    let basis = t.cohomology_basis(0);
    let h = basis.cols();
    let mut matrix = QMatrix::zeros(h, h);
    let cols: Vec<Vec<Q>> = (0..h).map(|j| basis.column(j)).collect();
    for i in 0..h {
        for j in 0..h {
            matrix[(i, j)] = goldman_product(rep, &cols[i], &cols[j])?;
        }
    }
    if !crate::linalg::is_antisymmetric(&matrix) {
        return Err(Error::Internal(
            "symplectic pairing of cocycles must be antisymmetric".into(),
        ));
    }
    let nondegenerate = matrix.rank() == h;
    Ok(GoldmanReport {
        matrix,
        dim: h,
        nondegenerate,
    })
}

/// Signed-occurrence balance of the boundary words: for each generator the
/// number of positive uses, required to match the negative ones. The shared
/// count is the number of pairing corrections in [`lefschetz_product`].
fn boundary_pair_counts(rep: &Representation) -> Result<Vec<usize>> {
    let p = rep.presentation().generators();
    let mut pos = vec![0usize; p];
    let mut neg = vec![0usize; p];
    for w in rep.presentation().boundary_words() {
        for &l in w.letters() {
            let i = l.unsigned_abs() as usize - 1;
            if l > 0 {
                pos[i] += 1;
            } else {
                neg[i] += 1;
            }
        }
    }
    for i in 0..p {
        if pos[i] != neg[i] {
            return Err(Error::NotSurfacePresentation(format!(
                "generator {} appears {} times against {} inverses across the boundary words; \
                 boundary words of a surface cross each band once in each direction",
                i + 1,
                pos[i],
                neg[i]
            )));
        }
    }
    Ok(pos)
}

/// Duality pairing between a degree-0 cocycle `alpha` of the tangent
/// complex and a degree-1 cocycle `(a, b)` of the relative complex:
/// staircase sums over the boundary words, pairing corrections counted by
/// the letter balance, minus one boundary correction
/// `< alpha(w_i), Ad(mu_i) b_i >` per circle.
pub fn lefschetz_product(rep: &Representation, alpha: &[Q], rel: &[Q]) -> Result<Q> {
    let ctx = rep.context();
    let m = ctx.dim();
    let p = rep.presentation().generators();
    let words = rep.presentation().boundary_words();
    if words.is_empty() {
        return Err(Error::NoBoundary);
    }
    let b = words.len();
    if alpha.len() != p * m || rel.len() != p * m + b * m {
        return Err(Error::DimMismatch(format!(
            "expected cochains of sizes {} and {}, got {} and {}",
            p * m,
            p * m + b * m,
            alpha.len(),
            rel.len()
        )));
    }
    let counts = boundary_pair_counts(rep)?;
    let a = &rel[..p * m];
    let mut total = Q::zero();
    for w in words {
        total += staircase_sum(rep, w, alpha, a);
    }
    for (x, &count) in counts.iter().enumerate() {
        if count > 0 {
            let c = Q::from_integer((count as i64).into());
            total += ctx.pair(&alpha[x * m..(x + 1) * m], &a[x * m..(x + 1) * m]) * c;
        }
    }
    for (i, w) in words.iter().enumerate() {
        let alpha_w = rep.cocycle_value(w, alpha);
        let mu_ad = rep.ad_of_word(w);
        let b_i = &rel[p * m + i * m..p * m + (i + 1) * m];
        total -= ctx.pair(&alpha_w, &mu_ad.mul_vec(b_i));
    }
    Ok(total)
}

/// The Poisson structure on first cohomology for a surface with boundary.
#[derive(Clone, Debug, Serialize)]
pub struct BivectorReport {
    /// Matrix of the bivector on the dual of the canonical `H^0` basis of
    /// the tangent complex; always antisymmetric.
    pub bivector: QMatrix,
    /// Rank of the bivector: the dimension of the symplectic leaf.
    pub rank: usize,
    /// The duality pairing between the absolute and relative bases that was
    /// inverted along the way.
    pub pairing: QMatrix,
    pub h_absolute: usize,
    pub h_relative: usize,
}

/// Invert the duality pairing against the relative complex and push through
/// the projection to get the Poisson bivector in the canonical basis.
pub fn poisson_bivector(rep: &Representation) -> Result<BivectorReport> {
    let ctx = rep.context();
    let m = ctx.dim();
    let p = rep.presentation().generators();
    boundary_pair_counts(rep)?;
    let t = tangent_complex(rep)?;
    let r = relative_complex(rep)?;
    let basis_t = t.cohomology_basis(0);
    let basis_r = r.cohomology_basis(1);
    let h = basis_t.cols();
    if basis_r.cols() != h {
        return Err(Error::DegeneratePairing(format!(
            "absolute and relative cohomologies have different ranks {} and {}",
            h,
            basis_r.cols()
        )));
    }
    let alphas: Vec<Vec<Q>> = (0..h).map(|j| basis_t.column(j)).collect();
    let rels: Vec<Vec<Q>> = (0..h).map(|j| basis_r.column(j)).collect();
    let mut pairing = QMatrix::zeros(h, h);
    for i in 0..h {
        for j in 0..h {
            pairing[(i, j)] = lefschetz_product(rep, &alphas[i], &rels[j])?;
        }
    }
    let inv = pairing.inverse().ok_or_else(|| {
        Error::DegeneratePairing("the absolute/relative duality pairing is singular".into())
    })?;
    // Projection of each relative class to the absolute complex.
    let mut proj_cols = Vec::with_capacity(h);
    for rel in &rels {
        proj_cols.push(t.class_in_basis(0, &rel[..p * m])?);
    }
    let proj = QMatrix::from_columns(h, proj_cols);
    let bivector = proj.mul(&inv).transpose();
    if !crate::linalg::is_antisymmetric(&bivector) {
        return Err(Error::Internal(
            "the Poisson bivector must be antisymmetric".into(),
        ));
    }
    let rank = bivector.rank();
    Ok(BivectorReport {
        bivector,
        rank,
        pairing,
        h_absolute: h,
        h_relative: h,
    })
}

/// Where one boundary monodromy is pinned: a conjugacy class representative
/// with an optional explicit conjugator `c` satisfying
/// `c * class_rep * c^-1 = monodromy`.
#[derive(Clone, Debug)]
pub struct LeafTarget {
    pub class_rep: GroupElement,
    pub conjugator: Option<GroupElement>,
}

impl LeafTarget {
    pub fn at(class_rep: GroupElement) -> LeafTarget {
        LeafTarget {
            class_rep,
            conjugator: None,
        }
    }

    pub fn conjugated(class_rep: GroupElement, conjugator: GroupElement) -> LeafTarget {
        LeafTarget {
            class_rep,
            conjugator: Some(conjugator),
        }
    }
}

/// Tangent data of the symplectic leaf through `rep`: representations whose
/// boundary monodromies stay in the fixed conjugacy classes.
#[derive(Clone, Debug, Serialize)]
pub struct LeafReport {
    pub complex: CochainComplex,
    /// dims of H^-1, H^0, H^1.
    pub h_dims: [usize; 3],
    /// The symplectic sanity marks: `H^-1 = H^1` and `H^0` even.
    pub duality_ok: bool,
    pub monodromies: Vec<QMatrix>,
}

/// Homotopy fiber of the difference between boundary restriction and the
/// conjugation action on the pinned classes: the centralizer of each
/// monodromy enters in degree -1.
pub fn leaf_tangent(rep: &Representation, targets: &[LeafTarget]) -> Result<LeafReport> {
    let words = rep.presentation().boundary_words();
    if words.is_empty() {
        return Err(Error::NoBoundary);
    }
    if targets.len() != words.len() {
        return Err(Error::DimMismatch(format!(
            "{} targets supplied for {} boundary circles",
            targets.len(),
            words.len()
        )));
    }
    let ctx = rep.context();
    let m = ctx.dim();
    let mus = boundary_monodromies(rep);
    for (index, target) in targets.iter().enumerate() {
        if target.class_rep.context() != ctx {
            return Err(Error::ContextMismatch);
        }
        let conjugated = match &target.conjugator {
            None => target.class_rep.clone(),
            Some(c) => {
                if c.context() != ctx {
                    return Err(Error::ContextMismatch);
                }
                c.mul(&target.class_rep)?.mul(&c.inverse())?
            }
        };
        if conjugated.matrix() != mus[index].matrix() {
            return Err(Error::BoundaryClassMismatch { index });
        }
    }

    let mut source = tangent_complex(rep)?;
    let centralizer_bases: Vec<QMatrix> = mus
        .iter()
        .map(|mu| mu.centralizer().basis().clone())
        .collect();
    for basis in &centralizer_bases {
        source = source.direct_sum(&CochainComplex::concentrated(-1, basis.cols()));
    }
    let target = circle_sum(rep)?;

    // Degree -1: repeat the algebra element on every circle, minus the
    // block-diagonal inclusion of the pinned centralizers.
    let b = words.len();
    let mut rows: Vec<Vec<QMatrix>> = Vec::with_capacity(b);
    for i in 0..b {
        let mut row = Vec::with_capacity(b + 1);
        row.push(QMatrix::identity(m));
        for (j, basis) in centralizer_bases.iter().enumerate() {
            if i == j {
                row.push(basis.neg());
            } else {
                row.push(QMatrix::zeros(m, basis.cols()));
            }
        }
        rows.push(row);
    }
    let row_refs: Vec<Vec<&QMatrix>> = rows.iter().map(|r| r.iter().collect()).collect();
    let deg_minus_one = QMatrix::block(&row_refs);
    let jac = rep.fox_jacobian(words);
    let comps: BTreeMap<i64, QMatrix> =
        [(-1, deg_minus_one), (0, jac)].into_iter().collect();
    let map = ChainMap::new(source, target, comps)?;
    let complex = map.fiber();
    let h_dims = [
        complex.cohomology_dim(-1),
        complex.cohomology_dim(0),
        complex.cohomology_dim(1),
    ];
    let duality_ok = h_dims[0] == h_dims[2] && h_dims[1] % 2 == 0;
    Ok(LeafReport {
        complex,
        h_dims,
        duality_ok,
        monodromies: mus.iter().map(|g| g.matrix().clone()).collect(),
    })
}

/// [`leaf_tangent`] with the classes pinned at the monodromies themselves.
pub fn leaf_tangent_at_monodromies(rep: &Representation) -> Result<LeafReport> {
    let targets: Vec<LeafTarget> = boundary_monodromies(rep)
        .into_iter()
        .map(LeafTarget::at)
        .collect();
    leaf_tangent(rep, &targets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieContext;
    use crate::presentation::GroupPresentation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sl2() -> Arc<LieContext> {
        LieContext::sl(2).unwrap()
    }

    fn el(ctx: &Arc<LieContext>, s: &str) -> GroupElement {
        GroupElement::parse(ctx, s).unwrap()
    }

    fn punctured_torus() -> GroupPresentation {
        GroupPresentation::with_boundary(2, vec![], vec![Word::parse("abAB").unwrap()]).unwrap()
    }

    fn pants() -> GroupPresentation {
        GroupPresentation::with_boundary(
            2,
            vec![],
            vec![
                Word::parse("a").unwrap(),
                Word::parse("b").unwrap(),
                Word::parse("BA").unwrap(),
            ],
        )
        .unwrap()
    }

    /// diag(2, 1/2) and the quarter rotation: a representation of the free
    /// group with boundary monodromy diag(4, 1/4) on the punctured torus.
    fn diag_rot_rep() -> Representation {
        let ctx = sl2();
        Representation::new(
            punctured_torus(),
            vec![el(&ctx, "2 0; 0 1/2"), el(&ctx, "0 1; -1 0")],
        )
        .unwrap()
    }

    fn random_coeffs(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
        (0..n)
            .map(|_| crate::linalg::q(rng.gen_range(-3i64..=3), rng.gen_range(1..=2)))
            .collect()
    }

    #[test]
    fn tangent_complex_of_a_free_group_stops_at_degree_zero() {
        let rep = diag_rot_rep();
        let t = tangent_complex(&rep).unwrap();
        assert_eq!(t.degrees(), -1..=0);
        assert_eq!(t.dims(), &[3, 6]);
        // Euler characteristic: dim g times the Euler characteristic of the
        // wedge of two circles, with the degree shift flipping the sign.
        assert_eq!(t.euler_char(), 3);
        // Joint centralizer of the two images is trivial here.
        assert_eq!(t.cohomology_dim(-1), 0);
        assert_eq!(t.cohomology_dim(0), 3);
    }

    #[test]
    fn tangent_complex_of_a_closed_surface_has_three_terms() {
        let ctx = sl2();
        let pres = GroupPresentation::closed_surface(1).unwrap();
        let rep = Representation::new(
            pres,
            vec![el(&ctx, "2 0; 0 1/2"), el(&ctx, "3 0; 0 1/3")],
        )
        .unwrap();
        let t = tangent_complex(&rep).unwrap();
        assert_eq!(t.degrees(), -1..=1);
        assert_eq!(t.dims(), &[3, 6, 3]);
        assert_eq!(t.euler_char(), 0);
        let h: Vec<usize> = (-1..=1).map(|n| t.cohomology_dim(n)).collect();
        assert_eq!(h, vec![1, 2, 1]);
    }

    #[test]
    fn sphere_complexes_by_dimension() {
        let ctx = sl2();
        assert!(matches!(
            sphere_tangent(&ctx, 0, None),
            Err(Error::SphereDimension)
        ));
        let circle = sphere_tangent(&ctx, 1, None).unwrap();
        assert_eq!(circle.dims(), &[3, 3]);
        assert_eq!(circle.cohomology_dim(-1), 3);
        assert_eq!(circle.cohomology_dim(0), 3);

        let d = el(&ctx, "2 0; 0 1/2");
        let twisted = sphere_tangent(&ctx, 1, Some(&d)).unwrap();
        assert_eq!(twisted.cohomology_dim(-1), 1);
        assert_eq!(twisted.cohomology_dim(0), 1);

        let two = sphere_tangent(&ctx, 2, None).unwrap();
        assert_eq!(two.degrees(), -1..=1);
        assert_eq!(two.dims(), &[3, 0, 3]);
        let five = sphere_tangent(&ctx, 5, None).unwrap();
        assert_eq!(five.degrees(), -1..=4);
        assert_eq!(five.dim(-1), 3);
        assert_eq!(five.dim(4), 3);
        assert_eq!(five.dim(1), 0);

        assert!(sphere_tangent(&ctx, 2, Some(&GroupElement::identity(&ctx))).is_ok());
        assert!(matches!(
            sphere_tangent(&ctx, 2, Some(&d)),
            Err(Error::InvalidElement(_))
        ));
    }

    #[test]
    fn restriction_squares_commute_and_monodromy_is_the_boundary_word() {
        let rep = diag_rot_rep();
        let map = restriction_map(&rep).unwrap();
        assert_eq!(map.target().dims(), &[3, 3]);
        let mus = boundary_monodromies(&rep);
        assert_eq!(mus.len(), 1);
        assert_eq!(mus[0].matrix(), &QMatrix::parse("4 0; 0 1/4").unwrap());
        // No boundary words: error.
        let ctx = sl2();
        let free = Representation::new(
            GroupPresentation::free(1),
            vec![el(&ctx, "2 0; 0 1/2")],
        )
        .unwrap();
        assert!(matches!(restriction_map(&free), Err(Error::NoBoundary)));
    }

    #[test]
    fn relative_complex_sits_in_degrees_zero_through_two() {
        let rep = diag_rot_rep();
        let r = relative_complex(&rep).unwrap();
        assert_eq!(r.degrees(), 0..=2);
        assert_eq!(r.dims(), &[3, 9, 3]);
    }

    #[test]
    fn relative_and_absolute_cohomology_are_dual_dimensions() {
        let ctx = sl2();
        let reps = [
            diag_rot_rep(),
            Representation::trivial(punctured_torus(), &ctx).unwrap(),
            Representation::new(
                punctured_torus(),
                vec![el(&ctx, "2 0; 0 1/2"), el(&ctx, "1 1; 0 1")],
            )
            .unwrap(),
            Representation::trivial(pants(), &ctx).unwrap(),
        ];
        for rep in &reps {
            let t = tangent_complex(rep).unwrap();
            let r = relative_complex(rep).unwrap();
            for i in 0..=2i64 {
                assert_eq!(
                    r.cohomology_dim(i),
                    t.cohomology_dim(1 - i),
                    "degree {i}"
                );
            }
        }
    }

    #[test]
    fn symplectic_form_at_the_trivial_point_is_the_standard_block() {
        let ctx = sl2();
        let pres = GroupPresentation::closed_surface(1).unwrap();
        let rep = Representation::trivial(pres, &ctx).unwrap();
        let report = goldman_pairing(&rep).unwrap();
        assert_eq!(report.dim, 6);
        assert!(report.nondegenerate);
        let t = ctx.trace_form().clone();
        let tn = t.neg();
        let z = QMatrix::zeros(3, 3);
        let expected = QMatrix::block(&[vec![&z, &t], vec![&tn, &z]]);
        assert_eq!(report.matrix, expected);
    }

    #[test]
    fn genus_two_trivial_point_pairs_handles_independently() {
        let ctx = sl2();
        let pres = GroupPresentation::closed_surface(2).unwrap();
        let rep = Representation::trivial(pres, &ctx).unwrap();
        let report = goldman_pairing(&rep).unwrap();
        assert_eq!(report.dim, 12);
        assert!(report.nondegenerate);
        let t = ctx.trace_form().clone();
        let tn = t.neg();
        let z = QMatrix::zeros(3, 3);
        let expected = QMatrix::block(&[
            vec![&z, &t, &z, &z],
            vec![&tn, &z, &z, &z],
            vec![&z, &z, &z, &t],
            vec![&z, &z, &tn, &z],
        ]);
        assert_eq!(report.matrix, expected);
    }

    #[test]
    fn symplectic_form_is_nondegenerate_at_a_diagonal_point() {
        let ctx = sl2();
        let pres = GroupPresentation::closed_surface(1).unwrap();
        let rep = Representation::new(
            pres,
            vec![el(&ctx, "2 0; 0 1/2"), el(&ctx, "3 0; 0 1/3")],
        )
        .unwrap();
        let report = goldman_pairing(&rep).unwrap();
        assert_eq!(report.dim, 2);
        assert!(report.nondegenerate);
    }

    #[test]
    fn symplectic_product_is_antisymmetric_and_descends_to_classes() {
        let ctx = sl2();
        let pres = GroupPresentation::closed_surface(1).unwrap();
        let rep = Representation::new(
            pres,
            vec![el(&ctx, "2 0; 0 1/2"), el(&ctx, "3 0; 0 1/3")],
        )
        .unwrap();
        let t = tangent_complex(&rep).unwrap();
        let cocycles = t.cocycles(0);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..6 {
            let u = cocycles.basis().mul_vec(&random_coeffs(&mut rng, cocycles.dim()));
            let v = cocycles.basis().mul_vec(&random_coeffs(&mut rng, cocycles.dim()));
            let uv = goldman_product(&rep, &u, &v).unwrap();
            let vu = goldman_product(&rep, &v, &u).unwrap();
            assert_eq!(uv, -vu.clone());
            // Shifting by a coboundary leaves the product unchanged.
            let z = random_coeffs(&mut rng, 3);
            let shift = t.diff(-1).mul_vec(&z);
            let shifted: Vec<Q> = u.iter().zip(&shift).map(|(a, b)| a + b).collect();
            assert_eq!(goldman_product(&rep, &shifted, &v).unwrap(), uv);
        }
    }

    #[test]
    fn symplectic_pairing_rejects_other_presentations() {
        let rep = diag_rot_rep();
        assert!(matches!(
            goldman_pairing(&rep),
            Err(Error::NotSurfacePresentation(_))
        ));
    }

    #[test]
    fn duality_product_descends_to_classes_on_both_sides() {
        let ctx = sl2();
        let rep = Representation::new(
            punctured_torus(),
            vec![el(&ctx, "2 0; 0 1/2"), el(&ctx, "1 1; 0 1")],
        )
        .unwrap();
        let t = tangent_complex(&rep).unwrap();
        let r = relative_complex(&rep).unwrap();
        let rel_cocycles = r.cocycles(1);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..6 {
            let alpha = random_coeffs(&mut rng, 6);
            let xi = rel_cocycles
                .basis()
                .mul_vec(&random_coeffs(&mut rng, rel_cocycles.dim()));
            let base = lefschetz_product(&rep, &alpha, &xi).unwrap();
            // Relative side: shift by the image of the degree-0 differential.
            let z = random_coeffs(&mut rng, 3);
            let shift = r.diff(0).mul_vec(&z);
            let xi2: Vec<Q> = xi.iter().zip(&shift).map(|(a, b)| a + b).collect();
            assert_eq!(lefschetz_product(&rep, &alpha, &xi2).unwrap(), base);
            // Absolute side: a coboundary pairs to zero.
            let z2 = random_coeffs(&mut rng, 3);
            let cob = t.diff(-1).mul_vec(&z2);
            assert!(lefschetz_product(&rep, &cob, &xi).unwrap().is_zero());
        }
    }

    #[test]
    fn duality_product_is_antisymmetric_through_the_projection() {
        let ctx = sl2();
        let rep = Representation::new(
            punctured_torus(),
            vec![el(&ctx, "2 0; 0 1/2"), el(&ctx, "1 1; 0 1")],
        )
        .unwrap();
        let r = relative_complex(&rep).unwrap();
        let rel_cocycles = r.cocycles(1);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..6 {
            let xi = rel_cocycles
                .basis()
                .mul_vec(&random_coeffs(&mut rng, rel_cocycles.dim()));
            let eta = rel_cocycles
                .basis()
                .mul_vec(&random_coeffs(&mut rng, rel_cocycles.dim()));
            let lhs = lefschetz_product(&rep, &xi[..6], &eta).unwrap();
            let rhs = lefschetz_product(&rep, &eta[..6], &xi).unwrap();
            assert_eq!(lhs, -rhs);
        }
    }

    #[test]
    fn bivector_at_the_trivial_punctured_torus_point_has_full_rank() {
        let ctx = sl2();
        let rep = Representation::trivial(punctured_torus(), &ctx).unwrap();
        let report = poisson_bivector(&rep).unwrap();
        assert_eq!(report.h_absolute, 6);
        assert_eq!(report.rank, 6);
        // The pairing at the trivial point reduces to the closed-surface
        // block form, so its inverse transposed is the bivector.
        let t = ctx.trace_form().clone();
        let tn = t.neg();
        let z = QMatrix::zeros(3, 3);
        let expected_pairing = QMatrix::block(&[vec![&z, &t], vec![&tn, &z]]);
        assert_eq!(report.pairing, expected_pairing);
    }

    #[test]
    fn bivector_vanishes_at_the_trivial_pants_point() {
        let ctx = sl2();
        let rep = Representation::trivial(pants(), &ctx).unwrap();
        let report = poisson_bivector(&rep).unwrap();
        assert_eq!(report.h_absolute, 6);
        assert_eq!(report.rank, 0);
        assert_eq!(report.bivector, QMatrix::zeros(6, 6));
    }

    #[test]
    fn bivector_rank_matches_the_leaf_dimension() {
        let ctx = sl2();
        let rep = Representation::new(
            punctured_torus(),
            vec![el(&ctx, "2 0; 0 1/2"), el(&ctx, "1 1; 0 1")],
        )
        .unwrap();
        let report = poisson_bivector(&rep).unwrap();
        assert_eq!(report.h_absolute, 3);
        assert_eq!(report.rank, 2);
        let leaf = leaf_tangent_at_monodromies(&rep).unwrap();
        assert_eq!(leaf.h_dims[1], report.rank);
    }

    #[test]
    fn unbalanced_boundary_letters_are_rejected() {
        let ctx = sl2();
        let pres = GroupPresentation::with_boundary(
            2,
            vec![],
            vec![Word::parse("ab").unwrap()],
        )
        .unwrap();
        let rep = Representation::trivial(pres, &ctx).unwrap();
        assert!(matches!(
            poisson_bivector(&rep),
            Err(Error::NotSurfacePresentation(_))
        ));
    }

    #[test]
    fn leaf_tangent_at_a_twisted_point_is_a_surface_group_worth_of_moduli() {
        let rep = diag_rot_rep();
        let leaf = leaf_tangent_at_monodromies(&rep).unwrap();
        assert_eq!(leaf.complex.degrees(), -1..=1);
        assert_eq!(leaf.complex.dims(), &[4, 9, 3]);
        assert_eq!(leaf.h_dims, [0, 2, 0]);
        assert!(leaf.duality_ok);
        assert_eq!(leaf.monodromies[0], QMatrix::parse("4 0; 0 1/4").unwrap());
    }

    #[test]
    fn leaf_tangent_at_the_trivial_point_carries_the_full_centralizer() {
        let ctx = sl2();
        let rep = Representation::trivial(punctured_torus(), &ctx).unwrap();
        let leaf = leaf_tangent_at_monodromies(&rep).unwrap();
        assert_eq!(leaf.complex.dims(), &[6, 9, 3]);
        assert_eq!(leaf.h_dims, [3, 6, 3]);
        assert!(leaf.duality_ok);
    }

    #[test]
    fn leaf_targets_accept_a_conjugate_class_representative() {
        let ctx = sl2();
        let rep = diag_rot_rep();
        let swapped = el(&ctx, "1/4 0; 0 4");
        // Without a conjugator the swapped representative is not literally
        // the monodromy.
        let err = leaf_tangent(&rep, &[LeafTarget::at(swapped.clone())]);
        assert!(matches!(
            err,
            Err(Error::BoundaryClassMismatch { index: 0 })
        ));
        // The quarter rotation conjugates it onto the monodromy.
        let rot = el(&ctx, "0 1; -1 0");
        let leaf =
            leaf_tangent(&rep, &[LeafTarget::conjugated(swapped, rot)]).unwrap();
        assert_eq!(leaf.h_dims, [0, 2, 0]);
        // A conjugator that misses the class is rejected too.
        let bad = el(&ctx, "1 1; 0 1");
        let err = leaf_tangent(
            &rep,
            &[LeafTarget::conjugated(el(&ctx, "1/4 0; 0 4"), bad)],
        );
        assert!(matches!(
            err,
            Err(Error::BoundaryClassMismatch { index: 0 })
        ));
    }

    #[test]
    fn leaf_target_count_must_match_the_boundary() {
        let rep = diag_rot_rep();
        assert!(matches!(
            leaf_tangent(&rep, &[]),
            Err(Error::DimMismatch(_))
        ));
    }
}
