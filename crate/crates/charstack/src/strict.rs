//! Strictness of a commuting pair of group elements.
//!
//! For a commuting pair `(g1, g2)` put `u = Id - Ad(g1)` and
//! `v = Id - Ad(g2)` on the Lie algebra. The pair is *strict* when the
//! image of `v` restricted to `ker u` is all of `im(v) ∩ ker(u)`. The
//! condition controls whether the two conjugation-invariant "sheets"
//! through the pair meet each other cleanly inside the commuting variety,
//! and it admits three equivalent formulations which this module computes
//! independently:
//!
//! 1. [`is_strict_direct`] — the subspace identity above, raw linear
//!    algebra.
//! 2. [`is_strict_complex`] — vanishing of the middle cohomology of the
//!    intersection tangent complex built in
//!    [`intersection_tangent_complex`].
//! 3. [`is_strict_phi`] — injectivity of a comparison map `phi` from the
//!    two one-sided cokernels into the middle cohomology of the Koszul
//!    complex of `(u, v)`.
//!
//! Agreement of the three is a theorem; [`classify_pair`] recomputes all
//! three and treats disagreement as an internal error.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{ChainMap, CochainComplex};
use crate::lie::{koszul_z2, GroupElement, GroupKind, LieContext};
use crate::linalg::{q, Q, QMatrix};
use crate::{Error, Result};

fn checked_defects(g1: &GroupElement, g2: &GroupElement) -> Result<(QMatrix, QMatrix)> {
    if g1.context() != g2.context() {
        return Err(Error::ContextMismatch);
    }
    if !g1.commutes_with(g2)? {
        return Err(Error::NotCommutingPair);
    }
    Ok((g1.defect(), g2.defect()))
}

/// Strictness by the direct subspace comparison:
/// `im(v|ker u) = im(v) ∩ ker(u)`.
pub fn is_strict_direct(g1: &GroupElement, g2: &GroupElement) -> Result<bool> {
    let (u, v) = checked_defects(g1, g2)?;
    let ker_u = u.kernel();
    let restricted = v.restrict_to(&ker_u)?.image();
    let cap = v.image().intersect(&ker_u)?;
    Ok(restricted == cap)
}

/// The tangent complex of the derived intersection of the two conjugation
/// sheets through the pair, in degrees [-1, 2].
///
/// Built as the homotopy fiber of the sum-of-inclusions map
/// `T_A (+) T_B -> T_M`, where `T_M` is the Koszul complex of `(u, v)`,
/// `T_A = (ker v -u|-> ker v)` in degrees (-1, 0) is the tangent complex of
/// the conjugation quotient of the centralizer of `g2` at `g1`, and `T_B`
/// symmetrically with the roles swapped.
pub fn intersection_tangent_complex(
    g1: &GroupElement,
    g2: &GroupElement,
) -> Result<CochainComplex> {
    let (u, v) = checked_defects(g1, g2)?;
    let t_m = koszul_z2(&u, &v)?;
    let (t_a, basis_a) = centralizer_quotient_complex(&u, &v)?;
    let (t_b, basis_b) = centralizer_quotient_complex(&v, &u)?;
    let source = t_a.direct_sum(&t_b);

    // Degree -1: include each centralizer into g and add.
    // Degree 0: include them into the two summands of g (+) g.
    let m = u.rows();
    let incl = basis_a.hstack(&basis_b);
    let za = QMatrix::zeros(m, basis_b.cols());
    let zb = QMatrix::zeros(m, basis_a.cols());
    let incl2 = QMatrix::block(&[vec![&basis_a, &za], vec![&zb, &basis_b]]);
    let comps: BTreeMap<i64, QMatrix> = [(-1, incl), (0, incl2)].into_iter().collect();
    let map = ChainMap::new(source, t_m, comps)?;
    let t = map.fiber();

    // Sanity pins that are theorems for this construction.
    if t.degrees() != (-1..=2) {
        return Err(Error::Internal("intersection complex degree range".into()));
    }
    let joint = u.kernel().intersect(&v.kernel())?.dim();
    if t.cohomology_dim(-1) != joint {
        return Err(Error::Internal(
            "H^-1 of the intersection complex must be the joint centralizer".into(),
        ));
    }
    let span = u.image().sum(&v.image())?.dim();
    if t.cohomology_dim(2) != m - span {
        return Err(Error::Internal(
            "H^2 of the intersection complex must be the joint cokernel".into(),
        ));
    }
    Ok(t)
}

/// `(ker w) -op|-> (ker w)` in degrees (-1, 0) together with the inclusion
/// of `ker w` into the ambient algebra. `op` must preserve `ker w`, which
/// holds whenever op and w commute.
fn centralizer_quotient_complex(
    op: &QMatrix,
    w: &QMatrix,
) -> Result<(CochainComplex, QMatrix)> {
    let ker = w.kernel();
    let basis = ker.basis().clone();
    let image_in_ker = op.mul(&basis);
    let restricted = basis
        .solve(&image_in_ker)
        .ok_or_else(|| Error::Internal("operator does not preserve the centralizer".into()))?;
    let cx = CochainComplex::new(-1, vec![ker.dim(), ker.dim()], vec![restricted])?;
    Ok((cx, basis))
}

/// Strictness read off the intersection tangent complex: `H^0 = 0`.
/// Verifies the shifted-duality fact `H^0 = 0 iff H^1 = 0` and reports an
/// internal error if the two disagree.
pub fn is_strict_complex(g1: &GroupElement, g2: &GroupElement) -> Result<bool> {
    let t = intersection_tangent_complex(g1, g2)?;
    let h0 = t.cohomology_dim(0);
    let h1 = t.cohomology_dim(1);
    if (h0 == 0) != (h1 == 0) {
        return Err(Error::Internal(format!(
            "middle cohomology of the intersection complex must vanish in both degrees or neither, got ({h0}, {h1})"
        )));
    }
    Ok(h0 == 0)
}

/// The comparison map whose injectivity decides strictness, together with
/// the dimension bookkeeping around it.
#[derive(Clone, Debug)]
pub struct PhiMap {
    /// Matrix from `coker(v|ker u) (+) coker(u|ker v)` to the middle Koszul
    /// cohomology, in the canonical bases.
    pub matrix: QMatrix,
    pub domain_dims: (usize, usize),
    pub codomain_dim: usize,
    pub kernel_dim: usize,
    pub injective: bool,
}

/// Build `phi`: a class `c` in `coker(v|ker u)` maps to the Koszul class of
/// `(0, -c)`, and `c'` in `coker(u|ker v)` to the class of `(c', 0)`.
pub fn phi_map(g1: &GroupElement, g2: &GroupElement) -> Result<PhiMap> {
    let (u, v) = checked_defects(g1, g2)?;
    let m = u.rows();
    let koszul = koszul_z2(&u, &v)?;

    let dom_a = one_sided_cokernel(&v, &u)?; // coker(v|ker u), vectors in g
    let dom_b = one_sided_cokernel(&u, &v)?; // coker(u|ker v)
    let mut cols = Vec::new();
    for c in 0..dom_a.cols() {
        // (0, -c) in g (+) g
        let mut vec2 = vec![Q::zero(); 2 * m];
        for r in 0..m {
            vec2[m + r] = -dom_a[(r, c)].clone();
        }
        cols.push(koszul.class_in_basis(0, &vec2)?);
    }
    for c in 0..dom_b.cols() {
        // (c', 0)
        let mut vec2 = vec![Q::zero(); 2 * m];
        for r in 0..m {
            vec2[r] = dom_b[(r, c)].clone();
        }
        cols.push(koszul.class_in_basis(0, &vec2)?);
    }
    let codomain_dim = koszul.cohomology_dim(0);
    let matrix = QMatrix::from_columns(codomain_dim, cols);
    let rank = matrix.rank();
    let domain = matrix.cols();
    Ok(PhiMap {
        domain_dims: (dom_a.cols(), dom_b.cols()),
        codomain_dim,
        kernel_dim: domain - rank,
        injective: rank == domain,
        matrix,
    })
}

/// Representatives in `g` of a basis of `coker(op | ker w)`: express `op`
/// on `ker w`, complement its image canonically, map back through the
/// echelon basis of `ker w`.
fn one_sided_cokernel(op: &QMatrix, w: &QMatrix) -> Result<QMatrix> {
    let ker = w.kernel();
    let basis = ker.basis();
    let image_in_ker = op.mul(basis);
    let restricted = basis
        .solve(&image_in_ker)
        .ok_or_else(|| Error::Internal("operator does not preserve the centralizer".into()))?;
    let complement = restricted.image().standard_complement();
    Ok(basis.mul(complement.basis()))
}

/// Strictness via injectivity of [`phi_map`].
pub fn is_strict_phi(g1: &GroupElement, g2: &GroupElement) -> Result<bool> {
    Ok(phi_map(g1, g2)?.injective)
}

/// Everything worth reporting about one pair. For a non-commuting pair the
/// strictness entries stay `None` and only the elementwise flags are
/// populated.
#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub commuting: bool,
    pub semisimple: (bool, bool),
    pub unipotent: (bool, bool),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_direct: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_complex: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_phi: Option<bool>,
    /// dims of H^-1 .. H^2 of the intersection tangent complex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_dims: Option<[usize; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub joint_centralizer_dim: Option<usize>,
}

impl PairReport {
    pub fn strict(&self) -> Option<bool> {
        self.strict_direct
    }
}

/// Run every check on a pair. The three strictness criteria and the two
/// duality identities on `h_dims` are recomputed from scratch and verified
/// against each other; any mismatch is an `Error::Internal`.
pub fn classify_pair(g1: &GroupElement, g2: &GroupElement) -> Result<PairReport> {
    if g1.context() != g2.context() {
        return Err(Error::ContextMismatch);
    }
    let commuting = g1.commutes_with(g2)?;
    let semisimple = (g1.is_semisimple(), g2.is_semisimple());
    let unipotent = (g1.is_unipotent(), g2.is_unipotent());
    if !commuting {
        return Ok(PairReport {
            commuting,
            semisimple,
            unipotent,
            strict_direct: None,
            strict_complex: None,
            strict_phi: None,
            h_dims: None,
            joint_centralizer_dim: None,
        });
    }
    let direct = is_strict_direct(g1, g2)?;
    let by_complex = is_strict_complex(g1, g2)?;
    let phi = phi_map(g1, g2)?;
    if direct != by_complex || direct != phi.injective {
        return Err(Error::Internal(format!(
            "strictness criteria disagree: direct={direct} complex={by_complex} phi={}",
            phi.injective
        )));
    }
    let t = intersection_tangent_complex(g1, g2)?;
    let h: Vec<usize> = (-1..=2).map(|n| t.cohomology_dim(n)).collect();
    let h_dims = [h[0], h[1], h[2], h[3]];
    if h_dims[0] != h_dims[3] || h_dims[1] != h_dims[2] {
        return Err(Error::Internal(format!(
            "shifted-duality dimension identity failed: {h_dims:?}"
        )));
    }
    if h_dims[1] != phi.kernel_dim {
        return Err(Error::Internal(
            "dim H^0 must equal dim ker(phi) by the five-term sequence".into(),
        ));
    }
    let joint = g1
        .defect()
        .kernel()
        .intersect(&g2.defect().kernel())?
        .dim();
    Ok(PairReport {
        commuting,
        semisimple,
        unipotent,
        strict_direct: Some(direct),
        strict_complex: Some(by_complex),
        strict_phi: Some(phi.injective),
        h_dims: Some(h_dims),
        joint_centralizer_dim: Some(joint),
    })
}

/// Local model of the symplectic leaf through a strict double point: the
/// mapping cone of the joint centralizer, included anti-diagonally into
/// degree -1 of the intersection tangent complex.
///
/// Lives in degrees [-2, 2]. The inclusion is injective, so `H^-2 = 0`, and
/// strictness makes the middle degrees -1..1 acyclic, leaving only the
/// joint cokernel in degree 2. Rejects non-strict pairs, reporting all
/// three criteria in the error.
pub fn double_point_leaf_model(
    g1: &GroupElement,
    g2: &GroupElement,
) -> Result<CochainComplex> {
    let direct = is_strict_direct(g1, g2)?;
    let complex = is_strict_complex(g1, g2)?;
    let phi = is_strict_phi(g1, g2)?;
    if !direct {
        return Err(Error::NonStrictPair {
            direct,
            complex,
            phi,
        });
    }
    let (u, v) = checked_defects(g1, g2)?;
    let t = intersection_tangent_complex(g1, g2)?;
    let ker_u = u.kernel();
    let ker_v = v.kernel();
    let joint = ker_u.intersect(&ker_v)?;
    let source = CochainComplex::concentrated(-1, joint.dim());
    // Coordinates of the joint centralizer inside each one-sided
    // centralizer; the opposite signs make the summed inclusion into the
    // ambient algebra cancel, which is the chain-map condition.
    let in_v = ker_v
        .basis()
        .solve(joint.basis())
        .ok_or_else(|| Error::Internal("joint centralizer must sit inside ker v".into()))?;
    let in_u = ker_u
        .basis()
        .solve(joint.basis())
        .ok_or_else(|| Error::Internal("joint centralizer must sit inside ker u".into()))?;
    let comp = in_v.vstack(&in_u.neg());
    let comps: BTreeMap<i64, QMatrix> = [(-1, comp)].into_iter().collect();
    let map = ChainMap::new(source, t, comps)?;
    let cone = map.cone();
    for n in -2..=1 {
        if cone.cohomology_dim(n) != 0 {
            return Err(Error::Internal(format!(
                "double-point model of a strict pair must be acyclic in degree {n}"
            )));
        }
    }
    Ok(cone)
}

// ---- seeded commuting-pair generators -------------------------------------

/// Families of commuting pairs used by the scan command and the test
/// battery. Every sample commutes by construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairFamily {
    /// Two rational diagonal matrices.
    Diagonal,
    /// `g2` is a polynomial in `g1` (conjugated into general position).
    PolynomialIn,
    /// Shears in two disjoint 2x2 blocks, conjugated; needs n >= 4.
    BlockSl2,
    /// `(g, g)` for a nontrivial unipotent `g`; never strict.
    UnipotentDiagonalPair,
}

impl PairFamily {
    pub const ALL: [PairFamily; 4] = [
        PairFamily::Diagonal,
        PairFamily::PolynomialIn,
        PairFamily::BlockSl2,
        PairFamily::UnipotentDiagonalPair,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PairFamily::Diagonal => "diagonal",
            PairFamily::PolynomialIn => "polynomial_in",
            PairFamily::BlockSl2 => "block_sl2",
            PairFamily::UnipotentDiagonalPair => "unipotent_diagonal_pair",
        }
    }
}

impl std::str::FromStr for PairFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PairFamily::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnsupportedFamily(format!("unknown family {s:?}")))
    }
}

fn rand_nonzero_q(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let n = rng.gen_range(-3i64..=3);
        if n != 0 {
            return q(n, rng.gen_range(1..=3));
        }
    }
}

fn rand_q_any(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(-3i64..=3), rng.gen_range(1..=3))
}

/// A short random product of elementary shears: always determinant one.
fn random_shear_product(ctx: &Arc<LieContext>, rng: &mut ChaCha8Rng) -> GroupElement {
    let n = ctx.n();
    let mut m = QMatrix::identity(n);
    for _ in 0..4 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if j == i {
            j = (j + 1) % n;
        }
        let mut s = QMatrix::identity(n);
        s[(i, j)] = rand_q_any(rng);
        m = m.mul(&s);
    }
    GroupElement::new(ctx, m).expect("shear products have determinant one")
}

/// Draw one commuting pair from the family. Deterministic in the rng state.
pub fn sample_commuting_pair(
    ctx: &Arc<LieContext>,
    family: PairFamily,
    rng: &mut ChaCha8Rng,
) -> Result<(GroupElement, GroupElement)> {
    let n = ctx.n();
    match family {
        PairFamily::Diagonal => {
            let mut d1 = QMatrix::zeros(n, n);
            let mut d2 = QMatrix::zeros(n, n);
            for i in 0..n {
                d1[(i, i)] = rand_nonzero_q(rng);
                d2[(i, i)] = rand_nonzero_q(rng);
            }
            if ctx.kind() == GroupKind::SL {
                // Fix the last entry so the determinant is one.
                let fix = |d: &mut QMatrix| {
                    let mut prod = Q::from_integer(1.into());
                    for i in 0..n - 1 {
                        prod *= d[(i, i)].clone();
                    }
                    d[(n - 1, n - 1)] = prod.recip();
                };
                fix(&mut d1);
                fix(&mut d2);
            }
            Ok((
                GroupElement::new(ctx, d1)?,
                GroupElement::new(ctx, d2)?,
            ))
        }
        PairFamily::PolynomialIn => match ctx.kind() {
            GroupKind::SL => {
                // Unipotent base: g1 = I + N with N strictly upper; then any
                // polynomial with p(1) = 1 keeps the determinant at one.
                let mut nil = QMatrix::zeros(n, n);
                for i in 0..n {
                    for j in (i + 1)..n {
                        nil[(i, j)] = rand_q_any(rng);
                    }
                }
                let mut g1m = QMatrix::identity(n).add(&nil);
                // p(t) = 1 + sum a_k (t-1)^k, so p(g1) = I + sum a_k N^k.
                let mut g2m = QMatrix::identity(n);
                let mut power = QMatrix::identity(n);
                for _ in 1..n {
                    power = power.mul(&nil);
                    g2m = g2m.add(&power.scale(&rand_q_any(rng)));
                }
                let c = random_shear_product(ctx, rng);
                g1m = c.matrix().mul(&g1m).mul(&c.inverse().matrix().clone());
                g2m = c.matrix().mul(&g2m).mul(&c.inverse().matrix().clone());
                Ok((
                    GroupElement::new(ctx, g1m)?,
                    GroupElement::new(ctx, g2m)?,
                ))
            }
            GroupKind::GL => {
                // Any invertible g1 and an invertible polynomial in it.
                loop {
                    let g1m = QMatrix::from_fn(n, n, |_, _| rand_q_any(rng));
                    if g1m.det().is_zero() {
                        continue;
                    }
                    let mut g2m = QMatrix::zeros(n, n);
                    let mut power = QMatrix::identity(n);
                    for _ in 0..n {
                        g2m = g2m.add(&power.scale(&rand_q_any(rng)));
                        power = power.mul(&g1m);
                    }
                    if g2m.det().is_zero() {
                        continue;
                    }
                    return Ok((
                        GroupElement::new(ctx, g1m)?,
                        GroupElement::new(ctx, g2m)?,
                    ));
                }
            }
        },
        PairFamily::BlockSl2 => {
            if n < 4 {
                return Err(Error::UnsupportedFamily(format!(
                    "block_sl2 needs n >= 4, context has n = {n}"
                )));
            }
            let mut g1m = QMatrix::identity(n);
            let mut g2m = QMatrix::identity(n);
            g1m[(0, 1)] = rand_nonzero_q(rng);
            g2m[(n - 2, n - 1)] = rand_nonzero_q(rng);
            let c = random_shear_product(ctx, rng);
            let conj = |m: &QMatrix| c.matrix().mul(m).mul(&c.inverse().matrix().clone());
            Ok((
                GroupElement::new(ctx, conj(&g1m))?,
                GroupElement::new(ctx, conj(&g2m))?,
            ))
        }
        PairFamily::UnipotentDiagonalPair => {
            let mut nil = QMatrix::zeros(n, n);
            loop {
                let mut any = false;
                for i in 0..n {
                    for j in (i + 1)..n {
                        nil[(i, j)] = rand_q_any(rng);
                        any = any || !nil[(i, j)].is_zero();
                    }
                }
                if any {
                    break;
                }
            }
            let g = GroupElement::new(ctx, QMatrix::identity(n).add(&nil))?;
            Ok((g.clone(), g))
        }
    }
}

/// Aggregate statistics of classifying `count` seeded pairs of one family.
#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub family: PairFamily,
    pub group: String,
    pub count: usize,
    pub seed: u64,
    pub strict_count: usize,
    pub non_strict_count: usize,
    /// Pairs on which the three criteria returned the same verdict. This is
    /// expected to equal `count` always; it is measured, not assumed.
    pub criteria_agreement_count: usize,
    pub all_criteria_agree: bool,
}

/// Classify a seeded batch of pairs from one family and summarize.
pub fn strict_scan(
    ctx: &Arc<LieContext>,
    family: PairFamily,
    count: usize,
    seed: u64,
) -> Result<ScanSummary> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut strict_count = 0;
    let mut agreement = 0;
    for _ in 0..count {
        let (g1, g2) = sample_commuting_pair(ctx, family, &mut rng)?;
        let a = is_strict_direct(&g1, &g2)?;
        let b = is_strict_complex(&g1, &g2)?;
        let c = is_strict_phi(&g1, &g2)?;
        if a == b && b == c {
            agreement += 1;
        }
        if a {
            strict_count += 1;
        }
    }
    Ok(ScanSummary {
        family,
        group: format!("{}({})", ctx.kind(), ctx.n()),
        count,
        seed,
        strict_count,
        non_strict_count: count - strict_count,
        criteria_agreement_count: agreement,
        all_criteria_agree: agreement == count,
    })
}
