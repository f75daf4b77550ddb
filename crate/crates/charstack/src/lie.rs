//! Matrix groups over Q and their Lie algebras.
//!
//! A [`LieContext`] fixes the group (SL(n) or GL(n), or a custom subalgebra
//! of n x n matrices), an ordered basis of the Lie algebra, and the trace
//! form `tr(XY)` on that basis. Group elements carry a shared reference to
//! their context; mixing contexts is an error, never undefined behaviour.
//!
//! For sl(2) the basis order is `(e, h, f)` with `e` strictly upper
//! triangular; for general sl(n) the order is: strictly upper elementary
//! matrices row-major, then the diagonal differences `E_kk - E_(k+1)(k+1)`,
//! then strictly lower elementary matrices row-major. gl(n) uses all
//! elementary matrices row-major.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::CochainComplex;
use crate::linalg::{Q, QMatrix, Subspace};
use crate::{Error, Result};

/// Which determinant constraint group elements must satisfy.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GroupKind {
    /// Determinant exactly one.
    SL,
    /// Any nonzero determinant.
    GL,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::SL => write!(f, "SL"),
            GroupKind::GL => write!(f, "GL"),
        }
    }
}

/// Group + Lie algebra data shared by every element and every complex we
/// build: matrix size, algebra basis, trace form, and the linear solver
/// that expresses an algebra element in basis coordinates.
pub struct LieContext {
    kind: GroupKind,
    n: usize,
    basis: Vec<QMatrix>,
    form: QMatrix,
    form_inv: QMatrix,
    /// n^2 x dim matrix whose columns are the vectorized basis elements.
    flat: QMatrix,
    /// Left inverse of `flat`; coordinates = left_inv * vec(X).
    left_inv: QMatrix,
}

impl PartialEq for LieContext {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.n == other.n && self.basis == other.basis
    }
}

impl Eq for LieContext {}

impl fmt::Debug for LieContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieContext({}({}), dim {})", self.kind, self.n, self.dim())
    }
}

impl LieContext {
    /// sl(n): trace-zero matrices with the documented basis order.
    pub fn sl(n: usize) -> Result<Arc<LieContext>> {
        if n < 2 {
            return Err(Error::InvalidContext("SL needs n >= 2".into()));
        }
        let mut basis = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                basis.push(elementary(n, i, j));
            }
        }
        for k in 0..n - 1 {
            let mut h = QMatrix::zeros(n, n);
            h[(k, k)] = Q::one();
            h[(k + 1, k + 1)] = -Q::one();
            basis.push(h);
        }
        for i in 0..n {
            for j in 0..i {
                basis.push(elementary(n, i, j));
            }
        }
        LieContext::custom(GroupKind::SL, n, basis)
    }

    /// gl(n): all matrices, elementary basis row-major.
    pub fn gl(n: usize) -> Result<Arc<LieContext>> {
        if n < 1 {
            return Err(Error::InvalidContext("GL needs n >= 1".into()));
        }
        let mut basis = Vec::new();
        for i in 0..n {
            for j in 0..n {
                basis.push(elementary(n, i, j));
            }
        }
        LieContext::custom(GroupKind::GL, n, basis)
    }

    /// Build a context from a user-supplied basis, so other subalgebras
    /// (symplectic, orthogonal, ...) can be injected. The trace form is
    /// computed from the basis and must be nondegenerate; for kind SL the
    /// basis must consist of trace-zero matrices.
    pub fn custom(kind: GroupKind, n: usize, basis: Vec<QMatrix>) -> Result<Arc<LieContext>> {
        if basis.is_empty() {
            return Err(Error::InvalidContext("empty basis".into()));
        }
        for (i, b) in basis.iter().enumerate() {
            if b.rows() != n || b.cols() != n {
                return Err(Error::InvalidContext(format!(
                    "basis element {i} is {}x{}, expected {n}x{n}",
                    b.rows(),
                    b.cols()
                )));
            }
            if kind == GroupKind::SL && !b.trace().is_zero() {
                return Err(Error::InvalidContext(format!(
                    "basis element {i} has nonzero trace in an SL context"
                )));
            }
        }
        let dim = basis.len();
        let flat = QMatrix::from_columns(n * n, basis.iter().map(QMatrix::vectorize).collect());
        if flat.rank() != dim {
            return Err(Error::InvalidContext("basis is linearly dependent".into()));
        }
        // Left inverse via the (invertible) Gram matrix of the columns.
        let gram = flat.transpose().mul(&flat);
        let gram_inv = gram
            .inverse()
            .ok_or_else(|| Error::Internal("Gram matrix of independent columns".into()))?;
        let left_inv = gram_inv.mul(&flat.transpose());
        let form = QMatrix::from_fn(dim, dim, |i, j| basis[i].mul(&basis[j]).trace());
        let form_inv = form.inverse().ok_or_else(|| {
            Error::InvalidContext("trace form is degenerate on this basis".into())
        })?;
        Ok(Arc::new(LieContext {
            kind,
            n,
            basis,
            form,
            form_inv,
            flat,
            left_inv,
        }))
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// Matrix size n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the Lie algebra.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QMatrix] {
        &self.basis
    }

    /// Gram matrix of the trace form `tr(XY)` in the fixed basis.
    /// Symmetric and invertible by construction.
    pub fn trace_form(&self) -> &QMatrix {
        &self.form
    }

    pub fn trace_form_inv(&self) -> &QMatrix {
        &self.form_inv
    }

    /// Coordinates of an n x n matrix lying in the algebra.
    /// Panics if the matrix is outside the span: every caller feeds it
    /// conjugates of basis elements, which stay inside by invariance.
    pub fn coordinates(&self, x: &QMatrix) -> Vec<Q> {
        assert_eq!((x.rows(), x.cols()), (self.n, self.n), "coordinate shape");
        let v = x.vectorize();
        let coords = self.left_inv.mul_vec(&v);
        debug_assert_eq!(
            self.flat.mul_vec(&coords),
            v,
            "matrix lies outside the algebra spanned by the basis"
        );
        coords
    }

    /// Reconstruct an algebra element from coordinates.
    pub fn from_coordinates(&self, coords: &[Q]) -> QMatrix {
        assert_eq!(coords.len(), self.dim(), "coordinate length");
        let mut acc = QMatrix::zeros(self.n, self.n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// Trace pairing of two coordinate vectors.
    pub fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        let fy = self.form.mul_vec(y);
        x.iter()
            .zip(&fy)
            .map(|(a, b)| a * b)
            .fold(Q::zero(), |acc, t| acc + t)
    }
}

fn elementary(n: usize, i: usize, j: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    m[(i, j)] = Q::one();
    m
}

/// An element of the chosen matrix group.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    ctx: Arc<LieContext>,
    mat: QMatrix,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement in {:?} {:?}", self.ctx, self.mat)
    }
}

impl GroupElement {
    /// Validates the shape and the determinant constraint of the context.
    pub fn new(ctx: &Arc<LieContext>, mat: QMatrix) -> Result<GroupElement> {
        if mat.rows() != ctx.n() || mat.cols() != ctx.n() {
            return Err(Error::InvalidElement(format!(
                "matrix is {}x{}, context needs {}x{}",
                mat.rows(),
                mat.cols(),
                ctx.n(),
                ctx.n()
            )));
        }
        let det = mat.det();
        match ctx.kind() {
            GroupKind::SL if !det.is_one() => {
                return Err(Error::InvalidElement(format!(
                    "determinant {det} != 1 in an SL context"
                )))
            }
            GroupKind::GL if det.is_zero() => {
                return Err(Error::InvalidElement("singular matrix".into()))
            }
            _ => {}
        }
        Ok(GroupElement {
            ctx: Arc::clone(ctx),
            mat,
        })
    }

    /// Parse from a `"a b; c d"` style literal.
    pub fn parse(ctx: &Arc<LieContext>, s: &str) -> Result<GroupElement> {
        GroupElement::new(ctx, QMatrix::parse(s)?)
    }

    pub fn identity(ctx: &Arc<LieContext>) -> GroupElement {
        GroupElement {
            ctx: Arc::clone(ctx),
            mat: QMatrix::identity(ctx.n()),
        }
    }

    pub fn context(&self) -> &Arc<LieContext> {
        &self.ctx
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.mat
    }

    pub fn is_identity(&self) -> bool {
        self.mat == QMatrix::identity(self.ctx.n())
    }

    fn check_ctx(&self, other: &GroupElement) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_ctx(other)?;
        Ok(GroupElement {
            ctx: Arc::clone(&self.ctx),
            mat: self.mat.mul(&other.mat),
        })
    }

    pub fn inverse(&self) -> GroupElement {
        let inv = self
            .mat
            .inverse()
            .expect("group elements are invertible by construction");
        GroupElement {
            ctx: Arc::clone(&self.ctx),
            mat: inv,
        }
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        GroupElement {
            ctx: Arc::clone(&self.ctx),
            mat: base.mat.pow(k.unsigned_abs() as u32),
        }
    }

    /// `g self g^-1`.
    pub fn conjugate_by(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check_ctx(g)?;
        Ok(GroupElement {
            ctx: Arc::clone(&self.ctx),
            mat: g.mat.mul(&self.mat).mul(&g.inverse().mat),
        })
    }

    pub fn commutes_with(&self, other: &GroupElement) -> Result<bool> {
        self.check_ctx(other)?;
        Ok(self.mat.mul(&other.mat) == other.mat.mul(&self.mat))
    }

    /// Matrix of `X -> g X g^-1` on the Lie algebra, in basis coordinates.
    pub fn adjoint(&self) -> QMatrix {
        let inv = self.inverse();
        let dim = self.ctx.dim();
        let mut cols = Vec::with_capacity(dim);
        for b in self.ctx.basis() {
            let conj = self.mat.mul(b).mul(&inv.mat);
            cols.push(self.ctx.coordinates(&conj));
        }
        QMatrix::from_columns(dim, cols)
    }

    /// `Id - adjoint`: the operator whose kernel is the centralizer Lie
    /// algebra of this element.
    pub fn defect(&self) -> QMatrix {
        QMatrix::identity(self.ctx.dim()).sub(&self.adjoint())
    }

    /// Centralizer subalgebra = kernel of the defect.
    pub fn centralizer(&self) -> Subspace {
        self.defect().kernel()
    }

    /// Diagonalizable over an algebraic closure, decided exactly over Q:
    /// the squarefree part of the characteristic polynomial must kill the
    /// matrix.
    pub fn is_semisimple(&self) -> bool {
        let p = char_poly(&self.mat);
        let dp = poly_derivative(&p);
        let g = poly_gcd(&p, &dp);
        let (r, rem) = poly_div(&p, &g);
        debug_assert!(rem.iter().all(Zero::is_zero), "gcd divides");
        poly_eval_matrix(&r, &self.mat).is_zero()
    }

    /// `(g - 1)^n = 0`.
    pub fn is_unipotent(&self) -> bool {
        let n = self.ctx.n();
        self.mat
            .sub(&QMatrix::identity(n))
            .pow(n as u32)
            .is_zero()
    }
}

// ---- polynomial helpers (dense, over Q, private) -------------------------

/// Characteristic polynomial by the Faddeev-LeVerrier recurrence,
/// coefficients from highest degree down: `[1, c_1, ..., c_n]`.
fn char_poly(a: &QMatrix) -> Vec<Q> {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![Q::one()];
    let mut m = QMatrix::identity(n); // M_1
    for k in 1..=n {
        let am = a.mul(&m);
        let c = -am.trace() / Q::from_integer((k as i64).into());
        coeffs.push(c.clone());
        if k < n {
            // M_(k+1) = A M_k + c_k I
            m = am;
            for i in 0..n {
                m[(i, i)] += c.clone();
            }
        }
    }
    coeffs
}

fn poly_degree(p: &[Q]) -> Option<usize> {
    // Coefficients are highest-first; degree = len-1 minus leading zeros.
    let lead = p.iter().position(|c| !c.is_zero())?;
    Some(p.len() - 1 - lead)
}

fn poly_trim(p: &[Q]) -> Vec<Q> {
    match p.iter().position(|c| !c.is_zero()) {
        Some(i) => p[i..].to_vec(),
        None => vec![Q::zero()],
    }
}

fn poly_derivative(p: &[Q]) -> Vec<Q> {
    let d = p.len() - 1;
    if d == 0 {
        return vec![Q::zero()];
    }
    p[..d]
        .iter()
        .enumerate()
        .map(|(i, c)| c * Q::from_integer(((d - i) as i64).into()))
        .collect()
}

/// Quotient and remainder of dense division, highest-first coefficients.
fn poly_div(num: &[Q], den: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let den = poly_trim(den);
    let dd = den.len() - 1;
    assert!(!den[0].is_zero(), "division by zero polynomial");
    let mut rem = poly_trim(num);
    if rem.len() - 1 < dd {
        return (vec![Q::zero()], rem);
    }
    let dq = rem.len() - 1 - dd;
    let mut quo = vec![Q::zero(); dq + 1];
    for i in 0..=dq {
        let c = &rem[i] / &den[0];
        quo[i] = c.clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=dd {
            let delta = &den[j] * &c;
            rem[i + j] -= delta;
        }
    }
    (quo, poly_trim(&rem[dq + 1..].to_vec()))
}

/// Monic gcd by the Euclidean algorithm.
fn poly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut a = poly_trim(a);
    let mut b = poly_trim(b);
    while poly_degree(&b).is_some() && !(b.len() == 1 && b[0].is_zero()) {
        let (_, r) = poly_div(&a, &b);
        a = b;
        b = r;
        if b.len() == 1 && b[0].is_zero() {
            break;
        }
    }
    let lead = a[0].clone();
    if lead.is_zero() {
        return vec![Q::one()];
    }
    a.iter().map(|c| c / &lead).collect()
}

fn poly_eval_matrix(p: &[Q], a: &QMatrix) -> QMatrix {
    let n = a.rows();
    let mut acc = QMatrix::zeros(n, n);
    for c in p {
        acc = a.mul(&acc);
        if !c.is_zero() {
            for i in 0..n {
                acc[(i, i)] += c.clone();
            }
        }
    }
    acc
}

// ---- two-operator Koszul complex -----------------------------------------

/// The complex `g -> g (+) g -> g` in degrees (-1, 0, 1) attached to a pair
/// of commuting operators: `d(z) = (u z, v z)` and `d(a, b) = v a - u b`.
/// Models the shifted cochains of a two-torus with the two commuting
/// monodromies acting through `u = Id - Ad` style operators.
pub fn koszul_z2(u: &QMatrix, v: &QMatrix) -> Result<CochainComplex> {
    if !u.is_square() || !v.is_square() || u.rows() != v.rows() {
        return Err(Error::DimMismatch(format!(
            "koszul operators must be square of equal size, got {}x{} and {}x{}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    if u.mul(v) != v.mul(u) {
        return Err(Error::NotCommuting);
    }
    let m = u.rows();
    let d_in = u.vstack(v);
    let d_out = v.hstack(&u.neg());
    CochainComplex::new(-1, vec![m, 2 * m, m], vec![d_in, d_out])
}

/// Cohomology of a single-operator circle complex `g -> g`:
/// kernel in degree -1 and a canonical complement of the image in degree 0.
pub struct CircleCohomology {
    pub h0: Subspace,
    pub h1_complement: Subspace,
}

impl CircleCohomology {
    pub fn dims(&self) -> (usize, usize) {
        (self.h0.dim(), self.h1_complement.dim())
    }
}

/// `H^0 = ker u` with its echelon basis, `H^1 = coker u` represented by the
/// canonical standard-vector complement of the image.
pub fn z_cohomology(u: &QMatrix) -> Result<CircleCohomology> {
    if !u.is_square() {
        return Err(Error::DimMismatch("z_cohomology needs a square operator".into()));
    }
    Ok(CircleCohomology {
        h0: u.kernel(),
        h1_complement: u.image().standard_complement(),
    })
}
