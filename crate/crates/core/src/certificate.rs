//! The 8x8 homogeneous system behind Case 2, solved over exact rationals.
//!
//! Columns are `a0, b0, c0, d0, Sa, Sb, Sc, Sd`: the lonely queen's four
//! line intercepts followed by the intercept sums of each slope's defined
//! lines. Rows 1-4 are the top coefficients of `f1..f4` (up to a sign),
//! rows 5-8 are the geometric identities every Case 2 placement satisfies.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::board::Placement;
use crate::nullstellensatz::{omega, Case2Data, PolyError};
use crate::solver::Case2Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("k must be at least 1")]
    BadK,
    #[error("rows have inconsistent lengths")]
    Ragged,
    #[error("vector has length {got}, matrix has {expected} columns")]
    Dimension { expected: usize, got: usize },
    #[error("not a Case 2 placement: {0}")]
    NotCase2(Case2Violation),
    #[error(transparent)]
    Poly(PolyError),
}

impl From<PolyError> for CertificateError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::NotCase2(v) => CertificateError::NotCase2(v),
            e => CertificateError::Poly(e),
        }
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, CertificateError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(CertificateError::Ragged);
        }
        Ok(RationalMatrix { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self, CertificateError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>, CertificateError> {
        if v.len() != self.cols {
            return Err(CertificateError::Dimension { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref_with_pivots(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> RationalMatrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Kernel basis, one vector per free column in column order, each
    /// scaled so its first nonzero entry is 1.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref_with_pivots();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[free] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, free);
                }
                let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("free column is nonzero");
                v.iter().map(|x| x / &lead).collect()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:>width$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.to_rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

/// Which version of the second coefficient row to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CoefficientSystem {
    /// Row 2 as printed: `w/2` on both diagonal sums.
    #[default]
    Printed,
    /// Row 2 with `-w/2` on `Sc`, matching the true `f2` coefficient.
    Exact,
}

/// The 8x8 matrix with `w = (-1)^k C(2k,k)`.
pub fn build_a(k: usize) -> Result<RationalMatrix, CertificateError> {
    build_a_with(k, CoefficientSystem::Printed)
}

pub fn build_a_with(k: usize, system: CoefficientSystem) -> Result<RationalMatrix, CertificateError> {
    if k == 0 {
        return Err(CertificateError::BadK);
    }
    let w = BigRational::from_integer(omega(k));
    let h = &w / rat(2);
    let z = BigRational::zero;
    let one = || rat(1);
    let m1 = || rat(-1);
    let row2_gamma = match system {
        CoefficientSystem::Printed => h.clone(),
        CoefficientSystem::Exact => -h.clone(),
    };
    RationalMatrix::from_rows(vec![
        vec![w.clone(), z(), z(), z(), w.clone(), z(), h.clone(), h.clone()],
        vec![z(), w.clone(), z(), z(), z(), w.clone(), row2_gamma, h.clone()],
        vec![z(), z(), w.clone(), z(), w.clone(), -w.clone(), w.clone(), z()],
        vec![z(), z(), z(), w.clone(), w.clone(), w.clone(), z(), w.clone()],
        vec![one(), m1(), m1(), z(), z(), z(), z(), z()],
        vec![one(), one(), z(), m1(), z(), z(), z(), z()],
        vec![z(), z(), z(), z(), one(), m1(), m1(), z()],
        vec![z(), z(), z(), z(), one(), one(), z(), m1()],
    ])
}

pub fn rref(m: &RationalMatrix) -> RationalMatrix {
    m.rref()
}

pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<BigRational>> {
    m.nullspace()
}

/// The printed kernel vector `[1, 1, 0, 2, -1/2, -1/2, 0, -1]`.
pub fn printed_null_vector() -> Vec<BigRational> {
    let half = || BigRational::new(BigInt::from(-1), BigInt::from(2));
    vec![rat(1), rat(1), rat(0), rat(2), half(), half(), rat(0), rat(-1)]
}

/// `(a0, b0, c0, d0, Sa, Sb, Sc, Sd)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTwoVector(pub [BigRational; 8]);

impl CaseTwoVector {
    pub const LABELS: [&'static str; 8] =
        ["alpha0", "beta0", "gamma0", "delta0", "sum_alpha", "sum_beta", "sum_gamma", "sum_delta"];

    pub fn from_integers(v: [i64; 8]) -> Self {
        CaseTwoVector(v.map(rat))
    }

    pub fn from_data(d: &Case2Data) -> Self {
        let [sa, sb, sc, sd] = d.intercepts.sums();
        let l = d.lonely;
        Self::from_integers([l.alpha0, l.beta0, l.gamma0, l.delta0, sa, sb, sc, sd])
    }

    pub fn entries(&self) -> &[BigRational; 8] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Serialize for CaseTwoVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: serde_json::Map<String, serde_json::Value> = Self::LABELS
            .iter()
            .zip(&self.0)
            .map(|(l, v)| (l.to_string(), serde_json::Value::String(v.to_string())))
            .collect();
        m.serialize(s)
    }
}

pub fn extract_case2_vector(p: &Placement) -> Result<CaseTwoVector, CertificateError> {
    Ok(CaseTwoVector::from_data(&Case2Data::from_placement(p)?))
}

/// Rows are 1-based, in matrix order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    InNullSpace,
    ViolatesCoefficientEq(usize),
    ViolatesGeometricEq(usize),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::InNullSpace => f.write_str("in null space"),
            Classification::ViolatesCoefficientEq(i) => write!(f, "violates coefficient equation {i}"),
            Classification::ViolatesGeometricEq(i) => write!(f, "violates geometric equation {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub class: Classification,
    pub residuals: Vec<BigRational>,
    /// Every nonzero row of `A v`, 1-based.
    pub violated_rows: Vec<usize>,
}

/// Classifies against the exact system.
pub fn classify(v: &CaseTwoVector, k: usize) -> Result<Classification, CertificateError> {
    Ok(classify_report(v, k, CoefficientSystem::Exact)?.class)
}

pub fn classify_report(v: &CaseTwoVector, k: usize, system: CoefficientSystem) -> Result<ClassReport, CertificateError> {
    let residuals = build_a_with(k, system)?.mul_vec(&v.0)?;
    let violated_rows: Vec<usize> = residuals.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(|(i, _)| i + 1).collect();
    let class = match violated_rows.first() {
        None => Classification::InNullSpace,
        Some(&i) if i <= 4 => Classification::ViolatesCoefficientEq(i),
        Some(&i) => Classification::ViolatesGeometricEq(i),
    };
    Ok(ClassReport { class, residuals, violated_rows })
}

/// Integer value of an exact rational, if it is one.
pub fn as_integer(v: &BigRational) -> Option<BigInt> {
    v.is_integer().then(|| v.to_integer())
}

pub fn is_negative(v: &BigRational) -> bool {
    v.is_negative()
}
