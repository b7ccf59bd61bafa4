//! Products of linear forms in `(x, y)` and their exact coefficients.
//!
//! Every covering argument on the centered board reduces to a product of
//! queen-line equations. This module builds those products, extracts single
//! coefficients with a bidegree-truncated dynamic program, evaluates the
//! closed-form top coefficients, and scans grids for non-vanishing points.
//! All arithmetic is arbitrary precision.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{BoardError, Line, Placement, Slope, Square};
use crate::solver::{case2_violation, Case2Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("linear factor has no variable part")]
    ZeroForm,
    #[error("{what}: expected {expected} constants, got {got}")]
    LengthMismatch { what: &'static str, expected: usize, got: usize },
    #[error("k must be at least 1")]
    BadK,
    #[error("intercept lists have different lengths")]
    RaggedIntercepts,
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error("not a Case 2 placement: {0}")]
    NotCase2(#[from] Case2Violation),
    #[error("board size {0} is not of the form 4k+1")]
    NotFourKPlusOne(usize),
    #[error("{count} lines of slope {slope}, at most {max} fit")]
    TooManyLines { slope: Slope, count: usize, max: usize },
    #[error("{lonely} lonely queens but {given} slopes supplied")]
    LonelySlopes { lonely: usize, given: usize },
    #[error("grid coordinate set does not sum to zero")]
    NotZeroSum,
    #[error("grid coordinate set has repeated values")]
    RepeatedGridValue,
}

/// `cx*x + cy*y + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearFactor {
    pub cx: i64,
    pub cy: i64,
    pub c0: i64,
}

impl LinearFactor {
    pub fn new(cx: i64, cy: i64, c0: i64) -> Result<Self, PolyError> {
        if cx == 0 && cy == 0 {
            return Err(PolyError::ZeroForm);
        }
        Ok(LinearFactor { cx, cy, c0 })
    }

    /// `x - a`, `y - b`, `x - y - c` or `x + y - d` for a centered intercept.
    pub fn for_slope(slope: Slope, intercept: i64) -> Self {
        let (cx, cy) = match slope {
            Slope::Vertical => (1, 0),
            Slope::Horizontal => (0, 1),
            Slope::DiagPlus => (1, -1),
            Slope::DiagMinus => (1, 1),
        };
        LinearFactor { cx, cy, c0: -intercept }
    }

    pub fn from_line(line: Line, n: usize) -> Result<Self, BoardError> {
        Ok(LinearFactor::for_slope(line.slope, line.centered_intercept(n)?))
    }

    pub fn eval(&self, x: i64, y: i64) -> i128 {
        self.cx as i128 * x as i128 + self.cy as i128 * y as i128 + self.c0 as i128
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, v) in [(self.cx, "x"), (self.cy, "y")] {
            match c {
                0 => {}
                1 => parts.push(format!("+{v}")),
                -1 => parts.push(format!("-{v}")),
                c => parts.push(format!("{c:+}{v}")),
            }
        }
        if self.c0 != 0 {
            parts.push(format!("{:+}", self.c0));
        }
        let s = parts.concat();
        write!(f, "({})", s.strip_prefix('+').unwrap_or(&s))
    }
}

/// A product of linear factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorProduct {
    factors: Vec<LinearFactor>,
}

impl FactorProduct {
    pub fn new(factors: Vec<LinearFactor>) -> Self {
        FactorProduct { factors }
    }

    pub fn factors(&self) -> &[LinearFactor] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn push(&mut self, f: LinearFactor) {
        self.factors.push(f);
    }

    /// Product of the equations of board lines (centered frame).
    pub fn from_lines<'a>(lines: impl IntoIterator<Item = &'a Line>, n: usize) -> Result<Self, BoardError> {
        lines.into_iter().map(|&l| LinearFactor::from_line(l, n)).collect::<Result<Vec<_>, _>>().map(Self::new)
    }

    /// Coefficient of `x^a y^b`; zero when `a + b` exceeds the degree.
    ///
    /// Multiplies factors one at a time into a table truncated at bidegree
    /// `(a, b)`; higher terms can never come back down.
    pub fn coeff(&self, a: usize, b: usize) -> BigInt {
        if a + b > self.degree() {
            return BigInt::zero();
        }
        let w = b + 1;
        let mut table = vec![BigInt::zero(); (a + 1) * w];
        table[0] = BigInt::one();
        for f in &self.factors {
            let (cx, cy, c0) = (BigInt::from(f.cx), BigInt::from(f.cy), BigInt::from(f.c0));
            for i in (0..=a).rev() {
                for j in (0..=b).rev() {
                    let mut v = &table[i * w + j] * &c0;
                    if i > 0 && f.cx != 0 {
                        v += &table[(i - 1) * w + j] * &cx;
                    }
                    if j > 0 && f.cy != 0 {
                        v += &table[i * w + j - 1] * &cy;
                    }
                    table[i * w + j] = v;
                }
            }
        }
        table.swap_remove(a * w + b)
    }

    pub fn eval(&self, x: i64, y: i64) -> BigInt {
        let mut acc = BigInt::one();
        for f in &self.factors {
            let v = f.eval(x, y);
            if v == 0 {
                return BigInt::zero();
            }
            acc *= BigInt::from(v);
        }
        acc
    }

    /// True when the product is zero on every square of the centered board.
    pub fn vanishes_on_board(&self, n: usize) -> Result<bool, BoardError> {
        for i in 0..n * n {
            let (x, y) = Square::from_index(i, n).centered(n)?;
            if !self.eval(x, y).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for FactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(-1)^k * C(2k, k)`, the top coefficient of the Case 1 product.
pub fn omega(k: usize) -> BigInt {
    let c = binomial(2 * k as u64, k as u64);
    if k % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Intercept constants grouped by slope, centered frame.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intercepts {
    pub alphas: Vec<i64>,
    pub betas: Vec<i64>,
    pub gammas: Vec<i64>,
    pub deltas: Vec<i64>,
}

impl Intercepts {
    pub fn new(alphas: Vec<i64>, betas: Vec<i64>, gammas: Vec<i64>, deltas: Vec<i64>) -> Self {
        Intercepts { alphas, betas, gammas, deltas }
    }

    pub fn sums(&self) -> [i64; 4] {
        [&self.alphas, &self.betas, &self.gammas, &self.deltas].map(|v| v.iter().sum())
    }

    fn by_slope(&self) -> [(Slope, &Vec<i64>); 4] {
        [
            (Slope::Vertical, &self.alphas),
            (Slope::Horizontal, &self.betas),
            (Slope::DiagPlus, &self.gammas),
            (Slope::DiagMinus, &self.deltas),
        ]
    }

    /// `k` from lists that must all have length `2k`.
    fn uniform_k(&self) -> Result<usize, PolyError> {
        let len = self.alphas.len();
        if [&self.betas, &self.gammas, &self.deltas].iter().any(|v| v.len() != len) {
            return Err(PolyError::RaggedIntercepts);
        }
        if len == 0 || len % 2 == 1 {
            return Err(PolyError::LengthMismatch { what: "intercepts per slope", expected: 2 * (len / 2).max(1), got: len });
        }
        Ok(len / 2)
    }

    fn factors(&self) -> Vec<LinearFactor> {
        self.by_slope()
            .iter()
            .flat_map(|&(slope, values)| values.iter().map(move |&v| LinearFactor::for_slope(slope, v)))
            .collect()
    }
}

/// `f = prod (x - a_j)(y - b_j)(x - y - c_j)(x + y - d_j)` over `2k` constants
/// per slope, factors in slope blocks.
pub fn build_case1(intercepts: &Intercepts) -> Result<FactorProduct, PolyError> {
    intercepts.uniform_k()?;
    Ok(FactorProduct::new(intercepts.factors()))
}

/// The four Case 2 products, indexed by the slope of the line through the lonely queen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case2Poly {
    /// Vertical line through the lonely queen.
    F1,
    /// Horizontal.
    F2,
    /// Slope +1.
    F3,
    /// Slope -1.
    F4,
}

impl Case2Poly {
    pub const ALL: [Case2Poly; 4] = [Case2Poly::F1, Case2Poly::F2, Case2Poly::F3, Case2Poly::F4];

    pub fn lonely_slope(self) -> Slope {
        match self {
            Case2Poly::F1 => Slope::Vertical,
            Case2Poly::F2 => Slope::Horizontal,
            Case2Poly::F3 => Slope::DiagPlus,
            Case2Poly::F4 => Slope::DiagMinus,
        }
    }

    pub fn for_slope(slope: Slope) -> Self {
        Case2Poly::ALL[slope.index()]
    }

    pub fn name(self) -> &'static str {
        ["f1", "f2", "f3", "f4"][self as usize]
    }
}

/// Intercepts of the four lines through the lonely queen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LonelyConstants {
    pub alpha0: i64,
    pub beta0: i64,
    pub gamma0: i64,
    pub delta0: i64,
}

impl LonelyConstants {
    /// Constants for a queen at centered `(x, y)`: `gamma0 = x - y`, `delta0 = x + y`.
    pub fn at(x: i64, y: i64) -> Self {
        LonelyConstants { alpha0: x, beta0: y, gamma0: x - y, delta0: x + y }
    }

    fn for_poly(&self, which: Case2Poly) -> i64 {
        match which {
            Case2Poly::F1 => self.alpha0,
            Case2Poly::F2 => self.beta0,
            Case2Poly::F3 => self.gamma0,
            Case2Poly::F4 => self.delta0,
        }
    }
}

/// Lonely-line factor first, then the `2k` lines of each slope.
pub fn build_case2(which: Case2Poly, lonely: LonelyConstants, intercepts: &Intercepts) -> Result<FactorProduct, PolyError> {
    intercepts.uniform_k()?;
    let mut factors = vec![LinearFactor::for_slope(which.lonely_slope(), lonely.for_poly(which))];
    factors.extend(intercepts.factors());
    Ok(FactorProduct::new(factors))
}

/// Closed form of the `x^{4k} y^{4k}` coefficient of the Case 2 product.
///
/// With `w = (-1)^k C(2k,k)` and `w/2 = (-1)^k C(2k-1,k-1)`:
///
/// ```text
/// f1: -( w(a0 + Sa) + w/2 (Sc + Sd) )
/// f2: -( w(b0 + Sb) + w/2 (Sd - Sc) )
/// f3: -( w(Sa - Sb + c0 + Sc) )
/// f4: -( w(Sa + Sb + d0 + Sd) )
/// ```
///
/// `sums` is `[Sa, Sb, Sc, Sd]` over the `2k` defined lines of each slope.
/// The lonely term enters only through the slope of its own line.
pub fn closed_form_case2(which: Case2Poly, k: usize, lonely: LonelyConstants, sums: [i64; 4]) -> Result<BigInt, PolyError> {
    if k == 0 {
        return Err(PolyError::BadK);
    }
    let w = omega(k);
    let half_w: BigInt = &w / 2;
    let [sa, sb, sc, sd] = sums.map(BigInt::from);
    let value = match which {
        Case2Poly::F1 => &w * (BigInt::from(lonely.alpha0) + &sa) + &half_w * (&sc + &sd),
        Case2Poly::F2 => &w * (BigInt::from(lonely.beta0) + &sb) + &half_w * (&sd - &sc),
        Case2Poly::F3 => &w * (&sa - &sb + BigInt::from(lonely.gamma0) + &sc),
        Case2Poly::F4 => &w * (&sa + &sb + BigInt::from(lonely.delta0) + &sd),
    };
    Ok(-value)
}

/// Products for boards `n = 4k + 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FourKThree {
    /// `2k + 2` rows and columns, `2k` lines of each diagonal slope.
    G,
    /// `2k + 1` lines of every slope.
    H,
}

/// Builds `g` or `h`; `k` is inferred from the diagonal list length.
pub fn build_4k3(variant: FourKThree, intercepts: &Intercepts) -> Result<FactorProduct, PolyError> {
    let diag = intercepts.gammas.len();
    if intercepts.deltas.len() != diag {
        return Err(PolyError::RaggedIntercepts);
    }
    let (axis, k) = match variant {
        FourKThree::G => {
            if diag == 0 || diag % 2 == 1 {
                return Err(PolyError::LengthMismatch { what: "diagonal intercepts of g", expected: 2 * (diag / 2).max(1), got: diag });
            }
            (diag + 2, diag / 2)
        }
        FourKThree::H => {
            if diag < 3 || diag % 2 == 0 {
                return Err(PolyError::LengthMismatch { what: "intercepts of h", expected: 2 * (diag / 2).max(1) + 1, got: diag });
            }
            (diag, (diag - 1) / 2)
        }
    };
    let _ = k;
    for (what, v) in [("vertical intercepts", &intercepts.alphas), ("horizontal intercepts", &intercepts.betas)] {
        if v.len() != axis {
            return Err(PolyError::LengthMismatch { what, expected: axis, got: v.len() });
        }
    }
    Ok(FactorProduct::new(intercepts.factors()))
}

/// A product set `S1 x S2` of integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub s1: Vec<i64>,
    pub s2: Vec<i64>,
}

impl Grid {
    pub fn new(s1: Vec<i64>, s2: Vec<i64>) -> Result<Self, PolyError> {
        for s in [&s1, &s2] {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s.len() {
                return Err(PolyError::RepeatedGridValue);
            }
        }
        Ok(Grid { s1, s2 })
    }

    /// `{-m, ..., m}^2`.
    pub fn centered(m: i64) -> Self {
        let s: Vec<i64> = (-m..=m).collect();
        Grid { s1: s.clone(), s2: s }
    }

    pub fn is_zero_sum(&self) -> bool {
        self.s1.iter().sum::<i64>() == 0 && self.s2.iter().sum::<i64>() == 0
    }
}

/// A grid whose coordinate sets each sum to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSumGrid(Grid);

impl ZeroSumGrid {
    pub fn new(s1: Vec<i64>, s2: Vec<i64>) -> Result<Self, PolyError> {
        let grid = Grid::new(s1, s2)?;
        if !grid.is_zero_sum() {
            return Err(PolyError::NotZeroSum);
        }
        Ok(ZeroSumGrid(grid))
    }

    pub fn centered(m: i64) -> Self {
        ZeroSumGrid(Grid::centered(m))
    }

    pub fn grid(&self) -> &Grid {
        &self.0
    }
}

impl AsRef<Grid> for ZeroSumGrid {
    fn as_ref(&self) -> &Grid {
        &self.0
    }
}

impl AsRef<Grid> for Grid {
    fn as_ref(&self) -> &Grid {
        self
    }
}

/// First grid point (row-major over `S1 x S2`) where the product is nonzero.
pub fn find_nonvanishing(fp: &FactorProduct, grid: impl AsRef<Grid>) -> Option<(i64, i64)> {
    let grid = grid.as_ref();
    grid.s1
        .iter()
        .flat_map(|&x| grid.s2.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| fp.factors.iter().all(|f| f.eval(x, y) != 0))
}

/// Lonely constants and defined-line intercepts of a Case 2 placement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Data {
    pub k: usize,
    pub lonely_square: (i64, i64),
    pub lonely: LonelyConstants,
    pub intercepts: Intercepts,
}

impl Case2Data {
    pub fn from_placement(p: &Placement) -> Result<Self, PolyError> {
        if let Some(v) = case2_violation(p) {
            return Err(PolyError::NotCase2(v));
        }
        let n = p.n();
        let lonely = *p.lonely_queens().iter().next().expect("Case 2 has one lonely queen");
        let (x, y) = lonely.centered(n)?;
        let intercepts = intercepts_of(&p.defined_lines().into_iter().collect::<Vec<_>>(), n)?;
        Ok(Case2Data { k: (n - 1) / 4, lonely_square: (x, y), lonely: LonelyConstants::at(x, y), intercepts })
    }

    pub fn product(&self, which: Case2Poly) -> FactorProduct {
        build_case2(which, self.lonely, &self.intercepts).expect("Case 2 intercept lists are uniform")
    }

    pub fn closed_form(&self, which: Case2Poly) -> BigInt {
        closed_form_case2(which, self.k, self.lonely, self.intercepts.sums()).expect("k >= 1")
    }
}

fn intercepts_of(lines: &[Line], n: usize) -> Result<Intercepts, BoardError> {
    let mut out = Intercepts::default();
    for line in lines {
        let v = line.centered_intercept(n)?;
        match line.slope {
            Slope::Vertical => out.alphas.push(v),
            Slope::Horizontal => out.betas.push(v),
            Slope::DiagPlus => out.gammas.push(v),
            Slope::DiagMinus => out.deltas.push(v),
        }
    }
    Ok(out)
}

/// The Case 1 product for a placement on the `(4k+1)`-board, with the
/// lines through the lonely queens assigned the given slopes (one per lonely
/// queen, row-major queen order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case1Data {
    pub k: usize,
    pub defined: Intercepts,
    pub lonely: Intercepts,
    pub filler: Intercepts,
}

impl Case1Data {
    pub fn from_placement(p: &Placement, lonely_slopes: &[Slope]) -> Result<Self, PolyError> {
        let n = p.n();
        if n % 4 != 1 {
            return Err(PolyError::NotFourKPlusOne(n));
        }
        let k = (n - 1) / 4;
        let lonely_queens = p.lonely_queens();
        if lonely_queens.len() != lonely_slopes.len() {
            return Err(PolyError::LonelySlopes { lonely: lonely_queens.len(), given: lonely_slopes.len() });
        }
        let defined_lines: Vec<Line> = p.defined_lines().into_iter().collect();
        let defined = intercepts_of(&defined_lines, n)?;
        let lonely_lines: Vec<Line> =
            lonely_queens.iter().zip(lonely_slopes).map(|(&s, &slope)| Line::through(slope, s)).collect();
        let lonely = intercepts_of(&lonely_lines, n)?;

        let mut filler = Intercepts::default();
        let h = 2 * k as i64;
        let slopes = [
            (Slope::Vertical, defined.alphas.len() + lonely.alphas.len(), h + 1),
            (Slope::Horizontal, defined.betas.len() + lonely.betas.len(), h + 1),
            (Slope::DiagPlus, defined.gammas.len() + lonely.gammas.len(), 2 * h + 1),
            (Slope::DiagMinus, defined.deltas.len() + lonely.deltas.len(), 2 * h + 1),
        ];
        for (slope, count, first_off_board) in slopes {
            if count > 2 * k {
                return Err(PolyError::TooManyLines { slope, count, max: 2 * k });
            }
            // extra lines sit just off the board; their zeros are irrelevant
            let extra: Vec<i64> = (0..(2 * k - count) as i64).map(|i| first_off_board + i).collect();
            match slope {
                Slope::Vertical => filler.alphas = extra,
                Slope::Horizontal => filler.betas = extra,
                Slope::DiagPlus => filler.gammas = extra,
                Slope::DiagMinus => filler.deltas = extra,
            }
        }
        Ok(Case1Data { k, defined, lonely, filler })
    }

    pub fn intercepts(&self) -> Intercepts {
        let join = |a: &Vec<i64>, b: &Vec<i64>, c: &Vec<i64>| a.iter().chain(b).chain(c).copied().collect();
        Intercepts {
            alphas: join(&self.defined.alphas, &self.lonely.alphas, &self.filler.alphas),
            betas: join(&self.defined.betas, &self.lonely.betas, &self.filler.betas),
            gammas: join(&self.defined.gammas, &self.lonely.gammas, &self.filler.gammas),
            deltas: join(&self.defined.deltas, &self.lonely.deltas, &self.filler.deltas),
        }
    }

    pub fn product(&self) -> FactorProduct {
        build_case1(&self.intercepts()).expect("Case 1 lists have 2k entries each")
    }
}

/// Default slopes for lonely-queen lines: each goes to the currently least
/// used slope family (ties in `v, h, d+, d-` order).
pub fn balanced_lonely_slopes(p: &Placement) -> Vec<Slope> {
    let mut per = p.defined_lines_per_slope();
    p.lonely_queens()
        .iter()
        .map(|_| {
            let slope = Slope::ALL.into_iter().min_by_key(|s| (per[s.index()], s.index())).unwrap();
            per[slope.index()] += 1;
            slope
        })
        .collect()
}

pub fn is_nonzero(v: &BigInt) -> bool {
    !v.is_zero()
}

pub fn sign(v: &BigInt) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}
