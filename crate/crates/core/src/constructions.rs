//! Nested octagon placements on boards of size `8k+1`.
//!
//! Each seed `(x, y)` with `0 < y < x <= 4k` contributes its full dihedral
//! orbit `(±x, ±y), (±y, ±x)`; a lonely queen sits at the center.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::board::{BoardError, Placement, Square};
use crate::certificate::{extract_case2_vector, CaseTwoVector};
use crate::solver::{enumerate_case2_candidates, SolverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("board size {0} is not of the form 8k+1")]
    Unsupported(usize),
    #[error("expected {expected} seeds, got {got}")]
    SeedCount { expected: usize, got: usize },
    #[error("seed ({x}, {y}) does not satisfy 0 < y < x <= {bound}")]
    SeedRange { x: i64, y: i64, bound: i64 },
    #[error("seed coordinates are not pairwise distinct")]
    RepeatedValue,
    #[error("two seeds have the same ratio y/x")]
    RepeatedRatio,
    #[error("two seed orbits share a diagonal")]
    DiagonalClash,
    #[error("orbit of ({x}, {y}) has fewer than 8 squares")]
    DegenerateOrbit { x: i64, y: i64 },
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// `k` seeds for the `(8k+1)`-board, centered coordinates, sorted by `(y, x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SeedSet {
    seeds: Vec<(i64, i64)>,
}

impl SeedSet {
    pub fn new(n: usize, mut seeds: Vec<(i64, i64)>) -> Result<Self, ConstructionError> {
        let k = k_of(n)?;
        if seeds.len() != k {
            return Err(ConstructionError::SeedCount { expected: k, got: seeds.len() });
        }
        let bound = 4 * k as i64;
        for &(x, y) in &seeds {
            if !(0 < y && y < x && x <= bound) {
                return Err(ConstructionError::SeedRange { x, y, bound });
            }
        }
        let values: BTreeSet<i64> = seeds.iter().flat_map(|&(x, y)| [x, y]).collect();
        if values.len() != 2 * k {
            return Err(ConstructionError::RepeatedValue);
        }
        for (i, &(x1, y1)) in seeds.iter().enumerate() {
            for &(x2, y2) in &seeds[i + 1..] {
                if y1 * x2 == y2 * x1 {
                    return Err(ConstructionError::RepeatedRatio);
                }
            }
        }
        let diagonals: BTreeSet<i64> = seeds.iter().flat_map(|&(x, y)| [x - y, x + y]).collect();
        if diagonals.len() != 2 * k {
            return Err(ConstructionError::DiagonalClash);
        }
        seeds.sort_by_key(|&(x, y)| (y, x));
        Ok(SeedSet { seeds })
    }

    pub fn seeds(&self) -> &[(i64, i64)] {
        &self.seeds
    }

    pub fn k(&self) -> usize {
        self.seeds.len()
    }
}

fn k_of(n: usize) -> Result<usize, ConstructionError> {
    if n < 9 || n % 8 != 1 {
        return Err(ConstructionError::Unsupported(n));
    }
    Ok((n - 1) / 8)
}

/// Every valid seed set for the `n`-board, in lexicographic order of the
/// `(y, x)`-sorted seed lists.
pub fn enumerate_seeds(n: usize) -> Result<Vec<SeedSet>, ConstructionError> {
    let k = k_of(n)?;
    let bound = 4 * k as i64;
    let mut singles: Vec<(i64, i64)> = (1..=bound).flat_map(|y| (y + 1..=bound).map(move |x| (x, y))).collect();
    singles.sort_by_key(|&(x, y)| (y, x));
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    combos(&singles, 0, k, &mut chosen, &mut |c| {
        if let Ok(s) = SeedSet::new(n, c.to_vec()) {
            out.push(s);
        }
    });
    Ok(out)
}

fn combos(items: &[(i64, i64)], from: usize, left: usize, chosen: &mut Vec<(i64, i64)>, f: &mut impl FnMut(&[(i64, i64)])) {
    if left == 0 {
        f(chosen);
        return;
    }
    for i in from..items.len() {
        chosen.push(items[i]);
        combos(items, i + 1, left - 1, chosen, f);
        chosen.pop();
    }
}

pub fn orbit(x: i64, y: i64) -> BTreeSet<(i64, i64)> {
    [(x, y), (y, x)]
        .into_iter()
        .flat_map(|(a, b)| [(a, b), (-a, b), (a, -b), (-a, -b)])
        .collect()
}

pub fn octagon_placement(seeds: &SeedSet, n: usize) -> Result<Placement, ConstructionError> {
    if k_of(n)? != seeds.k() {
        return Err(ConstructionError::SeedCount { expected: k_of(n)?, got: seeds.k() });
    }
    let mut coords = vec![(0, 0)];
    for &(x, y) in &seeds.seeds {
        let o = orbit(x, y);
        if o.len() != 8 {
            return Err(ConstructionError::DegenerateOrbit { x, y });
        }
        coords.extend(o);
    }
    Ok(Placement::from_centered(n, &coords)?)
}

/// One quantity of the Case 2 vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quantity {
    pub name: &'static str,
    pub value: String,
    pub zero: bool,
}

/// Result of checking a placement against the null-vector equations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub n: usize,
    pub quantities: Vec<Quantity>,
    pub structural_error: Option<String>,
    pub pass: bool,
}

impl CertificateReport {
    fn from_vector(n: usize, v: &CaseTwoVector) -> Self {
        let quantities: Vec<Quantity> = CaseTwoVector::LABELS
            .iter()
            .zip(v.entries())
            .map(|(&name, value)| Quantity { name, value: value.to_string(), zero: num_traits::Zero::is_zero(value) })
            .collect();
        let pass = quantities.iter().all(|q| q.zero);
        CertificateReport { n, quantities, structural_error: None, pass }
    }
}

/// PASS iff the placement has Case 2 shape and all eight quantities vanish.
pub fn validate_null_a(p: &Placement) -> CertificateReport {
    match extract_case2_vector(p) {
        Ok(v) => CertificateReport::from_vector(p.n(), &v),
        Err(e) => {
            CertificateReport { n: p.n(), quantities: Vec::new(), structural_error: Some(e.to_string()), pass: false }
        }
    }
}

/// Case 2 placements on boards `8k+5` whose vector is zero. Only sizes the
/// Case 2 enumerator supports can be searched; an empty result means none
/// exist at that size.
pub fn search_zero_vector(n: usize) -> Result<Vec<Placement>, ConstructionError> {
    if n % 8 != 5 {
        return Err(ConstructionError::Unsupported(n));
    }
    Ok(enumerate_case2_candidates(n, false)?
        .into_iter()
        .filter(|p| extract_case2_vector(p).is_ok_and(|v| v.is_zero()))
        .collect())
}

/// Addable squares of a placement, for marking construction boards.
pub fn crosses(p: &Placement) -> Result<Vec<Square>, ConstructionError> {
    Ok(p.addable_squares()?.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Dihedral;
    use crate::fixtures;

    #[test]
    fn nine_has_six_seeds() {
        let seeds = enumerate_seeds(9).unwrap();
        let flat: Vec<(i64, i64)> = seeds.iter().map(|s| s.seeds()[0]).collect();
        assert_eq!(flat, vec![(2, 1), (3, 1), (4, 1), (3, 2), (4, 2), (4, 3)]);
        assert_eq!(enumerate_seeds(5), Err(ConstructionError::Unsupported(5)));
    }

    #[test]
    fn seventeen_seed_conditions() {
        let seeds = enumerate_seeds(17).unwrap();
        assert!(!seeds.is_empty());
        for s in &seeds {
            let [(x1, y1), (x2, y2)] = [s.seeds()[0], s.seeds()[1]];
            assert_eq!(BTreeSet::from([x1, y1, x2, y2]).len(), 4);
            assert_ne!(y1 * x2, y2 * x1);
        }
        assert_eq!(SeedSet::new(17, vec![(3, 1), (4, 2)]), Err(ConstructionError::DiagonalClash));
        assert_eq!(SeedSet::new(17, vec![(2, 1), (4, 2)]), Err(ConstructionError::RepeatedValue));
        assert_eq!(SeedSet::new(17, vec![(6, 2), (3, 1)]), Err(ConstructionError::RepeatedRatio));
    }

    #[test]
    fn seed_four_one_is_figure_three() {
        let s = SeedSet::new(9, vec![(4, 1)]).unwrap();
        assert_eq!(octagon_placement(&s, 9).unwrap(), fixtures::figure3());
        let s = SeedSet::new(9, vec![(2, 1)]).unwrap();
        let p = octagon_placement(&s, 9).unwrap();
        let mut expected = vec![(0, 0)];
        expected.extend([(2, 1), (-2, 1), (2, -1), (-2, -1), (1, 2), (-1, 2), (1, -2), (-1, -2)]);
        assert_eq!(p, Placement::from_centered(9, &expected).unwrap());
        assert_eq!(SeedSet::new(9, vec![(5, 1)]), Err(ConstructionError::SeedRange { x: 5, y: 1, bound: 4 }));
    }

    #[test]
    fn octagon_properties() {
        for n in [9, 17] {
            for s in enumerate_seeds(n).unwrap().into_iter().take(40) {
                let p = octagon_placement(&s, n).unwrap();
                assert_eq!(p.len(), n);
                assert!(!p.has_three_in_line());
                for g in Dihedral::ALL {
                    assert_eq!(p.transform(g), p);
                }
                let center = Square::from_centered(0, 0, n).unwrap();
                assert_eq!(p.lonely_queens(), BTreeSet::from([center]));
                let per = (p.len() - 1) / 2;
                assert_eq!(p.defined_lines_per_slope(), [per; 4]);
                let report = validate_null_a(&p);
                assert!(report.pass, "{report:?}");
                assert!(!p.is_good());
            }
        }
    }

    #[test]
    fn figure_three_report() {
        let r = validate_null_a(&fixtures::figure3());
        assert!(r.pass);
        assert_eq!(r.quantities.len(), 8);
        assert!(r.quantities.iter().all(|q| q.value == "0"));
        let bad = validate_null_a(&fixtures::figure2());
        assert!(!bad.pass);
        assert!(bad.structural_error.is_some());
    }

    #[test]
    fn crosses_of_figure_three() {
        let marks: Vec<String> = crosses(&fixtures::figure3()).unwrap().iter().map(Square::algebraic).collect();
        let mut expected: Vec<String> = fixtures::FIGURE3_CROSSES.iter().map(|s| s.to_string()).collect();
        expected.sort_by_key(|s| Square::parse_algebraic(s).unwrap());
        assert_eq!(marks, expected);
    }

    #[test]
    fn eight_k_five_search() {
        assert!(search_zero_vector(5).unwrap().is_empty());
        assert_eq!(search_zero_vector(9), Err(ConstructionError::Unsupported(9)));
    }
}
