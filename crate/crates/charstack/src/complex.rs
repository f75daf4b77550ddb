//! Bounded cochain complexes of finite-dimensional rational vector spaces.
//!
//! A complex stores its degree range `[lo, hi]`, the dimension in each
//! degree, and the differentials `d^n : C^n -> C^(n+1)` as matrices of shape
//! `dim(n+1) x dim(n)`. `d . d = 0` is validated at construction. The degree
//! range is part of the data: equal complexes must occupy equal ranges.
//!
//! Conventions used by every operation here:
//!
//! * `shift(k)` moves content of degree `n` to degree `n - k` and scales the
//!   differentials by `(-1)^k`.
//! * `dual` transposes the differentials and negates degrees.
//! * `cone(f)^n = src^(n+1) (+) tgt^n` with `d(a, b) = (-d a, f(a) + d b)`.
//! * `fiber(f)^n = src^n (+) tgt^(n-1)`; it is the cone shifted so that the
//!   source appears in its own degrees.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeMap;

use crate::linalg::{extending_columns, QMatrix, Subspace};
use crate::{Error, Result};

/// A bounded complex over Q. Degrees run over `lo ..= hi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CochainComplex {
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[i]` is the differential out of degree `lo + i`; there are
    /// `dims.len() - 1` of them.
    diffs: Vec<QMatrix>,
}

impl CochainComplex {
    /// Validates shapes and `d . d = 0`.
    pub fn new(lo: i64, dims: Vec<usize>, diffs: Vec<QMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidComplex("empty degree range".into()));
        }
        if diffs.len() + 1 != dims.len() {
            return Err(Error::InvalidComplex(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(Error::InvalidComplex(format!(
                    "differential out of degree {} must be {}x{}, got {}x{}",
                    lo + i as i64,
                    dims[i + 1],
                    dims[i],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            if !diffs[i + 1].mul(&diffs[i]).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "d^2 != 0 leaving degree {}",
                    lo + i as i64
                )));
            }
        }
        Ok(CochainComplex { lo, dims, diffs })
    }

    /// Complex concentrated in a single degree with zero differential.
    pub fn concentrated(degree: i64, dim: usize) -> Self {
        CochainComplex {
            lo: degree,
            dims: vec![dim],
            diffs: vec![],
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    /// Dimension in degree `n`; zero outside the stored range.
    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The differential out of degree `n`, materialized as a zero matrix of
    /// the right shape when `n` falls outside the stored range.
    pub fn diff(&self, n: i64) -> QMatrix {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            QMatrix::zeros(self.dim(n + 1), self.dim(n))
        }
    }

    /// Alternating sum of dimensions, signs by degree parity.
    pub fn euler_char(&self) -> i64 {
        self.degrees()
            .map(|n| {
                let s = if n.rem_euclid(2) == 0 { 1 } else { -1 };
                s * self.dim(n) as i64
            })
            .sum()
    }

    /// Cocycles in degree `n` (kernel of the outgoing differential).
    pub fn cocycles(&self, n: i64) -> Subspace {
        if n < self.lo || n > self.hi() {
            return Subspace::zero(0);
        }
        self.diff(n).kernel()
    }

    /// Coboundaries in degree `n` (image of the incoming differential).
    pub fn coboundaries(&self, n: i64) -> Subspace {
        if n < self.lo || n > self.hi() {
            return Subspace::zero(0);
        }
        self.diff(n - 1).image()
    }

    /// dim H^n computed from ranks.
    pub fn cohomology_dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            return 0;
        }
        self.dim(n) - self.diff(n).rank() - self.diff(n - 1).rank()
    }

    /// `(degree, dim H^degree)` over the stored range.
    pub fn cohomology_dims(&self) -> Vec<(i64, usize)> {
        self.degrees().map(|n| (n, self.cohomology_dim(n))).collect()
    }

    /// A canonical matrix of representing cocycles for H^n: the columns are
    /// cocycles whose classes form a basis. Chosen greedily from the echelon
    /// basis of the cocycle space against the coboundaries, so the result is
    /// deterministic.
    pub fn cohomology_basis(&self, n: i64) -> QMatrix {
        let z = self.cocycles(n);
        let b = self.coboundaries(n);
        let chosen = extending_columns(b.basis(), z.basis());
        z.basis().select_columns(&chosen)
    }

    /// Coordinates of the class of `v` (a cocycle in degree `n`) in the
    /// basis produced by [`cohomology_basis`]. Errors if `v` is not a
    /// cocycle.
    ///
    /// [`cohomology_basis`]: CochainComplex::cohomology_basis
    pub fn class_in_basis(&self, n: i64, v: &[crate::linalg::Q]) -> Result<Vec<crate::linalg::Q>> {
        if v.len() != self.dim(n) {
            return Err(Error::DimMismatch(format!(
                "degree {} has dim {}, vector has {}",
                n,
                self.dim(n),
                v.len()
            )));
        }
        if !self.diff(n).mul_vec(v).iter().all(num_traits::Zero::is_zero) {
            return Err(Error::InvalidComplex(format!(
                "vector is not a cocycle in degree {n}"
            )));
        }
        let b = self.coboundaries(n);
        let h = self.cohomology_basis(n);
        let solver = b.basis().hstack(&h);
        let rhs = QMatrix::from_columns(v.len(), vec![v.to_vec()]);
        let sol = solver
            .solve(&rhs)
            .ok_or_else(|| Error::Internal("cocycle not in coboundaries + basis span".into()))?;
        Ok((b.dim()..b.dim() + h.cols()).map(|i| sol[(i, 0)].clone()).collect())
    }

    /// Shift: content of degree `n` moves to degree `n - k`; differentials
    /// pick up the sign `(-1)^k`.
    pub fn shift(&self, k: i64) -> CochainComplex {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let diffs = self
            .diffs
            .iter()
            .map(|d| if sign == 1 { d.clone() } else { d.neg() })
            .collect();
        CochainComplex {
            lo: self.lo - k,
            dims: self.dims.clone(),
            diffs,
        }
    }

    /// Degreewise linear dual: transposed differentials, negated degrees.
    pub fn dual(&self) -> CochainComplex {
        let lo = -self.hi();
        let dims: Vec<usize> = self.dims.iter().rev().cloned().collect();
        // Differential out of dual degree n is the transpose of the
        // differential into original degree -n.
        let mut diffs = Vec::new();
        for i in 0..self.diffs.len() {
            diffs.push(self.diffs[self.diffs.len() - 1 - i].transpose());
        }
        CochainComplex { lo, dims, diffs }
    }

    /// Degreewise direct sum over the union of the two ranges.
    pub fn direct_sum(&self, other: &CochainComplex) -> CochainComplex {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let dims: Vec<usize> = (lo..=hi).map(|n| self.dim(n) + other.dim(n)).collect();
        let mut diffs = Vec::new();
        for n in lo..hi {
            let a = self.diff(n);
            let b = other.diff(n);
            let z_top = QMatrix::zeros(a.rows(), b.cols());
            let z_bot = QMatrix::zeros(b.rows(), a.cols());
            diffs.push(QMatrix::block(&[vec![&a, &z_top], vec![&z_bot, &b]]));
        }
        CochainComplex { lo, dims, diffs }
    }
}

impl Serialize for CochainComplex {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("CochainComplex", 3)?;
        st.serialize_field("degrees", &[self.lo(), self.hi()])?;
        st.serialize_field("dims", &self.dims)?;
        st.serialize_field("differentials", &self.diffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CochainComplex {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            degrees: [i64; 2],
            dims: Vec<usize>,
            differentials: Vec<QMatrix>,
        }
        let raw = Raw::deserialize(de)?;
        if raw.degrees[1] - raw.degrees[0] + 1 != raw.dims.len() as i64 {
            return Err(serde::de::Error::custom("degree range and dims disagree"));
        }
        CochainComplex::new(raw.degrees[0], raw.dims, raw.differentials)
            .map_err(serde::de::Error::custom)
    }
}

/// A degreewise linear map of complexes commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    comps: BTreeMap<i64, QMatrix>,
}

impl ChainMap {
    /// Components may be supplied for any subset of degrees; missing ones
    /// are zero. Shapes and the commuting squares are validated.
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        comps: BTreeMap<i64, QMatrix>,
    ) -> Result<Self> {
        for (&n, m) in &comps {
            if m.rows() != target.dim(n) || m.cols() != source.dim(n) {
                return Err(Error::NotChainMap(format!(
                    "component at degree {} must be {}x{}, got {}x{}",
                    n,
                    target.dim(n),
                    source.dim(n),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let map = ChainMap { source, target, comps };
        let lo = map.source.lo().min(map.target.lo()) - 1;
        let hi = map.source.hi().max(map.target.hi());
        for n in lo..=hi {
            let left = map.target.diff(n).mul(&map.component(n));
            let right = map.component(n + 1).mul(&map.source.diff(n));
            if left != right {
                return Err(Error::NotChainMap(format!(
                    "square at degree {n} does not commute"
                )));
            }
        }
        Ok(map)
    }

    /// The zero chain map.
    pub fn zero(source: CochainComplex, target: CochainComplex) -> Self {
        ChainMap {
            source,
            target,
            comps: BTreeMap::new(),
        }
    }

    /// The identity on `c`.
    pub fn identity(c: &CochainComplex) -> Self {
        let comps = c
            .degrees()
            .map(|n| (n, QMatrix::identity(c.dim(n))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            comps,
        }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    /// Component in degree `n`, materialized as zeros when absent.
    pub fn component(&self, n: i64) -> QMatrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.target.dim(n), self.source.dim(n)))
    }

    /// Mapping cone: `cone^n = src^(n+1) (+) tgt^n`,
    /// `d(a, b) = (-d_src a, f(a) + d_tgt b)`.
    pub fn cone(&self) -> CochainComplex {
        let lo = (self.source.lo() - 1).min(self.target.lo());
        let hi = (self.source.hi() - 1).max(self.target.hi());
        let dims: Vec<usize> = (lo..=hi)
            .map(|n| self.source.dim(n + 1) + self.target.dim(n))
            .collect();
        let mut diffs = Vec::new();
        for n in lo..hi {
            let a = self.source.diff(n + 1).neg();
            let f = self.component(n + 1);
            let d = self.target.diff(n);
            let z = QMatrix::zeros(a.rows(), d.cols());
            diffs.push(QMatrix::block(&[vec![&a, &z], vec![&f, &d]]));
        }
        CochainComplex { lo, dims, diffs }
    }

    /// Homotopy fiber: the cone placed so that the source keeps its own
    /// degrees, `fiber^n = src^n (+) tgt^(n-1)`.
    pub fn fiber(&self) -> CochainComplex {
        self.cone().shift(-1)
    }

    /// Matrix of the induced map `H^n(source) -> H^n(target)` in the
    /// canonical cohomology bases.
    pub fn induced_on_cohomology(&self, n: i64) -> Result<QMatrix> {
        let src_h = self.source.cohomology_basis(n);
        let tgt_dim = self.target.cohomology_dim(n);
        let f = self.component(n);
        let mut cols = Vec::new();
        for c in 0..src_h.cols() {
            let v = f.mul_vec(&src_h.column(c));
            cols.push(self.target.class_in_basis(n, &v)?);
        }
        Ok(QMatrix::from_columns(tgt_dim, cols))
    }

    /// True iff the induced map on cohomology is an isomorphism in every
    /// degree of the union range.
    pub fn is_quasi_iso(&self) -> Result<bool> {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        for n in lo..=hi {
            let hs = self.source.cohomology_dim(n);
            let ht = self.target.cohomology_dim(n);
            if hs != ht {
                return Ok(false);
            }
            if hs == 0 {
                continue;
            }
            if self.induced_on_cohomology(n)?.rank() != hs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
