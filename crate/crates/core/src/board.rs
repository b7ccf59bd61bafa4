//! Board geometry, queen lines and the placement verifier.
//!
//! Squares are stored 0-based as `(col, row)` for every board size. The
//! centered view `(x, y) = (col - (n-1)/2, row - (n-1)/2)` is available for
//! odd `n` only; all of the polynomial and linear-algebra certificates work in
//! that frame because it turns the board into a zero-sum grid.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardError {
    #[error("board size must be at least 1")]
    EmptyBoard,
    #[error("square ({col}, {row}) is off the {n}x{n} board")]
    OffBoard { col: i64, row: i64, n: usize },
    #[error("centered coordinates are undefined for even n = {0}")]
    EvenBoard(usize),
    #[error("square ({col}, {row}) holds more than one queen")]
    DuplicateQueen { col: usize, row: usize },
    #[error("placement already has three queens on a line")]
    ThreeInLine,
    #[error("bad algebraic square {0:?}")]
    BadAlgebraic(String),
    #[error("dihedral element {0:?} is not one of the eight symmetries")]
    BadDihedral(String),
    #[error("invalid placement JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, BoardError>;

/// A square of the `n x n` board in 0-based `(col, row)` coordinates.
///
/// Ordering is row-major: `(0,0) < (1,0) < ... < (0,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Square {
    pub col: usize,
    pub row: usize,
}

impl Ord for Square {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.row, self.col).cmp(&(other.row, other.col))
    }
}

impl PartialOrd for Square {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn half(n: usize) -> Result<i64> {
    if n % 2 == 0 {
        Err(BoardError::EvenBoard(n))
    } else {
        Ok(((n - 1) / 2) as i64)
    }
}

impl Square {
    pub const fn new(col: usize, row: usize) -> Self {
        Square { col, row }
    }

    /// Builds a square from signed 0-based coordinates, checking the board.
    pub fn checked(col: i64, row: i64, n: usize) -> Result<Self> {
        if col < 0 || row < 0 || col >= n as i64 || row >= n as i64 {
            return Err(BoardError::OffBoard { col, row, n });
        }
        Ok(Square::new(col as usize, row as usize))
    }

    pub fn from_centered(x: i64, y: i64, n: usize) -> Result<Self> {
        let h = half(n)?;
        Square::checked(x + h, y + h, n).map_err(|_| BoardError::OffBoard { col: x, row: y, n })
    }

    /// The centered `(x, y)` view; only defined for odd `n`.
    pub fn centered(&self, n: usize) -> Result<(i64, i64)> {
        let h = half(n)?;
        Ok((self.col as i64 - h, self.row as i64 - h))
    }

    pub fn on_board(&self, n: usize) -> bool {
        self.col < n && self.row < n
    }

    /// Row-major index `row * n + col`.
    pub fn index(&self, n: usize) -> usize {
        self.row * n + self.col
    }

    pub fn from_index(idx: usize, n: usize) -> Self {
        Square::new(idx % n, idx / n)
    }

    /// Parses chessboard notation such as `"e5"` or `"Qe5"`: file `a` is
    /// column 0 and rank 1 is row 0.
    pub fn parse_algebraic(text: &str) -> Result<Self> {
        let bad = || BoardError::BadAlgebraic(text.to_string());
        let body = text.trim();
        let body = body.strip_prefix('Q').unwrap_or(body);
        let mut chars = body.chars();
        let file = chars.next().ok_or_else(bad)?;
        if !file.is_ascii_lowercase() {
            return Err(bad());
        }
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        if rank == 0 {
            return Err(bad());
        }
        Ok(Square::new((file as u8 - b'a') as usize, rank - 1))
    }

    pub fn algebraic(&self) -> String {
        format!("{}{}", (b'a' + self.col as u8) as char, self.row + 1)
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.col, self.row)
    }
}

/// The four queen-line families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Slope {
    /// Slope infinity: `x = a`.
    Vertical,
    /// Slope 0: `y = b`.
    Horizontal,
    /// Slope +1: `x - y = c`.
    DiagPlus,
    /// Slope -1: `x + y = d`.
    DiagMinus,
}

impl Slope {
    pub const ALL: [Slope; 4] = [Slope::Vertical, Slope::Horizontal, Slope::DiagPlus, Slope::DiagMinus];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Slope::Vertical => "v",
            Slope::Horizontal => "h",
            Slope::DiagPlus => "d+",
            Slope::DiagMinus => "d-",
        }
    }
}

impl FromStr for Slope {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "v" | "vertical" | "inf" => Ok(Slope::Vertical),
            "h" | "horizontal" | "0" => Ok(Slope::Horizontal),
            "d+" | "+1" | "diag-plus" => Ok(Slope::DiagPlus),
            "d-" | "-1" | "diag-minus" => Ok(Slope::DiagMinus),
            _ => Err(format!("unknown slope {s:?} (expected v, h, d+ or d-)")),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// A queen line. The intercept is stored in the 0-based frame:
/// `col = a`, `row = b`, `col - row = c`, `col + row = d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Line {
    pub slope: Slope,
    pub intercept: i64,
}

impl Line {
    pub const fn new(slope: Slope, intercept: i64) -> Self {
        Line { slope, intercept }
    }

    /// The line of the given slope through `s`.
    pub fn through(slope: Slope, s: Square) -> Self {
        let (c, r) = (s.col as i64, s.row as i64);
        let intercept = match slope {
            Slope::Vertical => c,
            Slope::Horizontal => r,
            Slope::DiagPlus => c - r,
            Slope::DiagMinus => c + r,
        };
        Line::new(slope, intercept)
    }

    pub fn covers(&self, s: Square) -> bool {
        Line::through(self.slope, s).intercept == self.intercept
    }

    /// Intercept in the centered frame (odd `n` only).
    pub fn centered_intercept(&self, n: usize) -> Result<i64> {
        let h = half(n)?;
        Ok(match self.slope {
            Slope::Vertical | Slope::Horizontal => self.intercept - h,
            Slope::DiagPlus => self.intercept,
            Slope::DiagMinus => self.intercept - 2 * h,
        })
    }

    pub fn from_centered(slope: Slope, intercept: i64, n: usize) -> Result<Self> {
        let h = half(n)?;
        let zero_based = match slope {
            Slope::Vertical | Slope::Horizontal => intercept + h,
            Slope::DiagPlus => intercept,
            Slope::DiagMinus => intercept + 2 * h,
        };
        Ok(Line::new(slope, zero_based))
    }

    /// Board squares on this line, row-major.
    pub fn squares(&self, n: usize) -> Vec<Square> {
        (0..n * n)
            .map(|i| Square::from_index(i, n))
            .filter(|&s| self.covers(s))
            .collect()
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.slope {
            Slope::Vertical => write!(f, "col={}", self.intercept),
            Slope::Horizontal => write!(f, "row={}", self.intercept),
            Slope::DiagPlus => write!(f, "col-row={}", self.intercept),
            Slope::DiagMinus => write!(f, "col+row={}", self.intercept),
        }
    }
}

/// The four lines through `s`, in [`Slope::ALL`] order.
pub fn lines_through(s: Square, n: usize) -> Result<[Line; 4]> {
    if !s.on_board(n) {
        return Err(BoardError::OffBoard { col: s.col as i64, row: s.row as i64, n });
    }
    Ok(Slope::ALL.map(|slope| Line::through(slope, s)))
}

/// The eight symmetries of the square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dihedral {
    Identity,
    /// Quarter turn counter-clockwise.
    Rot90,
    Rot180,
    Rot270,
    /// Mirror left-right.
    FlipHorizontal,
    /// Mirror top-bottom.
    FlipVertical,
    /// Reflection in the line `col = row`.
    Transpose,
    /// Reflection in the line `col + row = n - 1`.
    AntiTranspose,
}

impl Dihedral {
    pub const ALL: [Dihedral; 8] = [
        Dihedral::Identity,
        Dihedral::Rot90,
        Dihedral::Rot180,
        Dihedral::Rot270,
        Dihedral::FlipHorizontal,
        Dihedral::FlipVertical,
        Dihedral::Transpose,
        Dihedral::AntiTranspose,
    ];

    pub fn apply(self, s: Square, n: usize) -> Square {
        let m = n - 1;
        let (c, r) = (s.col, s.row);
        let (c2, r2) = match self {
            Dihedral::Identity => (c, r),
            Dihedral::Rot90 => (m - r, c),
            Dihedral::Rot180 => (m - c, m - r),
            Dihedral::Rot270 => (r, m - c),
            Dihedral::FlipHorizontal => (m - c, r),
            Dihedral::FlipVertical => (c, m - r),
            Dihedral::Transpose => (r, c),
            Dihedral::AntiTranspose => (m - r, m - c),
        };
        Square::new(c2, r2)
    }
}

impl FromStr for Dihedral {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "id" | "identity" => Dihedral::Identity,
            "r90" | "rot90" => Dihedral::Rot90,
            "r180" | "rot180" => Dihedral::Rot180,
            "r270" | "rot270" => Dihedral::Rot270,
            "fh" | "flip-horizontal" => Dihedral::FlipHorizontal,
            "fv" | "flip-vertical" => Dihedral::FlipVertical,
            "t" | "transpose" => Dihedral::Transpose,
            "at" | "anti-transpose" => Dihedral::AntiTranspose,
            other => return Err(BoardError::BadDihedral(other.to_string())),
        })
    }
}

/// Per-line queen counts, one dense array per slope family.
#[derive(Clone, Debug)]
pub(crate) struct LineCounts {
    n: usize,
    counts: [Vec<u32>; 4],
}

impl LineCounts {
    pub(crate) fn new(n: usize) -> Self {
        let diag = 2 * n - 1;
        LineCounts { n, counts: [vec![0; n], vec![0; n], vec![0; diag], vec![0; diag]] }
    }

    fn slot(&self, line: Line) -> usize {
        match line.slope {
            Slope::DiagPlus => (line.intercept + self.n as i64 - 1) as usize,
            _ => line.intercept as usize,
        }
    }

    pub(crate) fn add(&mut self, s: Square) {
        for slope in Slope::ALL {
            let line = Line::through(slope, s);
            let slot = self.slot(line);
            self.counts[slope.index()][slot] += 1;
        }
    }

    pub(crate) fn get(&self, line: Line) -> u32 {
        self.counts[line.slope.index()][self.slot(line)]
    }

    /// Largest count among the lines through `s`.
    pub(crate) fn max_through(&self, s: Square) -> u32 {
        Slope::ALL.iter().map(|&slope| self.get(Line::through(slope, s))).max().unwrap_or(0)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = (Line, u32)> + '_ {
        let n = self.n as i64;
        Slope::ALL.into_iter().flat_map(move |slope| {
            self.counts[slope.index()].iter().enumerate().map(move |(slot, &c)| {
                let intercept = match slope {
                    Slope::DiagPlus => slot as i64 - n + 1,
                    _ => slot as i64,
                };
                (Line::new(slope, intercept), c)
            })
        })
    }
}

/// A set of queens on an `n x n` board.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Placement {
    n: usize,
    queens: BTreeSet<Square>,
}

impl Placement {
    pub fn new(n: usize, queens: impl IntoIterator<Item = Square>) -> Result<Self> {
        if n == 0 {
            return Err(BoardError::EmptyBoard);
        }
        let mut set = BTreeSet::new();
        for s in queens {
            if !s.on_board(n) {
                return Err(BoardError::OffBoard { col: s.col as i64, row: s.row as i64, n });
            }
            if !set.insert(s) {
                return Err(BoardError::DuplicateQueen { col: s.col, row: s.row });
            }
        }
        Ok(Placement { n, queens: set })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Placement::new(n, [])
    }

    pub fn from_centered(n: usize, coords: &[(i64, i64)]) -> Result<Self> {
        let squares = coords
            .iter()
            .map(|&(x, y)| Square::from_centered(x, y, n))
            .collect::<Result<Vec<_>>>()?;
        Placement::new(n, squares)
    }

    pub fn from_algebraic<S: AsRef<str>>(n: usize, pieces: &[S]) -> Result<Self> {
        let squares = pieces
            .iter()
            .map(|p| Square::parse_algebraic(p.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Placement::new(n, squares)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn queens(&self) -> &BTreeSet<Square> {
        &self.queens
    }

    pub fn len(&self) -> usize {
        self.queens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queens.is_empty()
    }

    pub fn contains(&self, s: Square) -> bool {
        self.queens.contains(&s)
    }

    /// Centered coordinates of every queen (odd `n` only).
    pub fn centered(&self) -> Result<Vec<(i64, i64)>> {
        self.queens.iter().map(|s| s.centered(self.n)).collect()
    }

    pub(crate) fn line_counts(&self) -> LineCounts {
        let mut counts = LineCounts::new(self.n);
        for &s in &self.queens {
            counts.add(s);
        }
        counts
    }

    /// Number of queens on every line that holds at least one.
    pub fn line_occupancy(&self) -> BTreeMap<Line, usize> {
        self.line_counts().iter().filter(|&(_, c)| c > 0).map(|(l, c)| (l, c as usize)).collect()
    }

    /// Lines covering at least two queens.
    pub fn defined_lines(&self) -> BTreeSet<Line> {
        self.line_counts().iter().filter(|&(_, c)| c >= 2).map(|(l, _)| l).collect()
    }

    /// Defined-line counts in [`Slope::ALL`] order.
    pub fn defined_lines_per_slope(&self) -> [usize; 4] {
        let mut per = [0; 4];
        for line in self.defined_lines() {
            per[line.slope.index()] += 1;
        }
        per
    }

    pub fn has_three_in_line(&self) -> bool {
        self.line_counts().iter().any(|(_, c)| c >= 3)
    }

    /// Empty squares that can take a queen without creating three in a line.
    pub fn addable_squares(&self) -> Result<BTreeSet<Square>> {
        let counts = self.line_counts();
        if counts.iter().any(|(_, c)| c >= 3) {
            return Err(BoardError::ThreeInLine);
        }
        Ok((0..self.n * self.n)
            .map(|i| Square::from_index(i, self.n))
            .filter(|s| !self.queens.contains(s) && counts.max_through(*s) < 2)
            .collect())
    }

    pub fn is_maximal(&self) -> bool {
        matches!(self.addable_squares(), Ok(a) if a.is_empty())
    }

    /// No three in a line, and no queen can be added without creating three.
    pub fn is_good(&self) -> bool {
        self.is_maximal()
    }

    /// Queens on no defined line.
    pub fn lonely_queens(&self) -> BTreeSet<Square> {
        let counts = self.line_counts();
        self.queens.iter().copied().filter(|&s| counts.max_through(s) == 1).collect()
    }

    /// Squares not covered by any defined line of slope 0 or infinity.
    pub fn region_u(&self) -> Result<RegionU> {
        let h = half(self.n)?;
        let defined = self.defined_lines();
        let blocked = |slope, v| defined.contains(&Line::new(slope, v));
        let squares: BTreeSet<Square> = (0..self.n * self.n)
            .map(|i| Square::from_index(i, self.n))
            .filter(|s| !blocked(Slope::Vertical, s.col as i64) && !blocked(Slope::Horizontal, s.row as i64))
            .collect();
        let bounds = if squares.is_empty() {
            None
        } else {
            let cols = squares.iter().map(|s| s.col as i64 - h);
            let rows = squares.iter().map(|s| s.row as i64 - h);
            Some(RegionBounds {
                a: cols.clone().min().unwrap(),
                b: cols.max().unwrap(),
                a_prime: rows.clone().min().unwrap(),
                b_prime: rows.max().unwrap(),
            })
        };
        let perimeter = match bounds {
            None => BTreeSet::new(),
            Some(b) => squares
                .iter()
                .copied()
                .filter(|s| {
                    let (x, y) = (s.col as i64 - h, s.row as i64 - h);
                    x == b.a || x == b.b || y == b.a_prime || y == b.b_prime
                })
                .collect(),
        };
        Ok(RegionU { squares, bounds, perimeter })
    }

    pub fn transform(&self, g: Dihedral) -> Placement {
        Placement { n: self.n, queens: self.queens.iter().map(|&s| g.apply(s, self.n)).collect() }
    }

    /// The least image under the eight symmetries, comparing sorted queen lists.
    pub fn canonical(&self) -> Placement {
        Dihedral::ALL
            .iter()
            .map(|&g| self.transform(g))
            .min_by(|a, b| a.queens.iter().cmp(b.queens.iter()))
            .unwrap()
    }

    /// Text board, top rank first: `Q` queen, `x` addable square, `.` otherwise.
    /// Placements that already have three in a line get no `x` marks.
    pub fn render_ascii(&self) -> String {
        let addable = self.addable_squares().unwrap_or_default();
        let mut out = String::with_capacity(self.n * (self.n + 1));
        for row in (0..self.n).rev() {
            for col in 0..self.n {
                let s = Square::new(col, row);
                out.push(if self.queens.contains(&s) {
                    'Q'
                } else if addable.contains(&s) {
                    'x'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }

    pub fn to_file(&self, frame: Frame) -> Result<PlacementFile> {
        let queens = match frame {
            Frame::ZeroBased => self.queens.iter().map(|s| [s.col as i64, s.row as i64]).collect(),
            Frame::Centered => self.centered()?.into_iter().map(|(x, y)| [x, y]).collect(),
        };
        Ok(PlacementFile { n: self.n, coords: frame, queens })
    }

    /// JSON in the zero-based frame.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file(Frame::ZeroBased).expect("zero-based frame is total"))
            .expect("placement serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PlacementFile = serde_json::from_str(text).map_err(|e| BoardError::Json(e.to_string()))?;
        file.into_placement()
    }
}

/// Coordinate frame used by the JSON placement format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    #[serde(rename = "zero-based")]
    ZeroBased,
    #[serde(rename = "centered")]
    Centered,
}

/// `{"n": 9, "coords": "zero-based", "queens": [[col, row], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementFile {
    pub n: usize,
    #[serde(default = "default_frame")]
    pub coords: Frame,
    pub queens: Vec<[i64; 2]>,
}

fn default_frame() -> Frame {
    Frame::ZeroBased
}

impl PlacementFile {
    pub fn into_placement(self) -> Result<Placement> {
        if self.n == 0 {
            return Err(BoardError::EmptyBoard);
        }
        let squares = self
            .queens
            .iter()
            .map(|&[a, b]| match self.coords {
                Frame::ZeroBased => Square::checked(a, b, self.n),
                Frame::Centered => Square::from_centered(a, b, self.n),
            })
            .collect::<Result<Vec<_>>>()?;
        Placement::new(self.n, squares)
    }
}

/// Extremal nonempty column/row indices of U, centered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionBounds {
    pub a: i64,
    pub b: i64,
    pub a_prime: i64,
    pub b_prime: i64,
}

/// Squares left uncovered by the defined rows and columns of a placement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionU {
    pub squares: BTreeSet<Square>,
    /// `None` when U is empty.
    pub bounds: Option<RegionBounds>,
    /// `C_a ∪ C_b ∪ R_a' ∪ R_b'`.
    pub perimeter: BTreeSet<Square>,
}

impl RegionU {
    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// Centered indices of the nonempty columns.
    pub fn nonempty_columns(&self, n: usize) -> BTreeSet<i64> {
        let h = ((n - 1) / 2) as i64;
        self.squares.iter().map(|s| s.col as i64 - h).collect()
    }

    pub fn nonempty_rows(&self, n: usize) -> BTreeSet<i64> {
        let h = ((n - 1) / 2) as i64;
        self.squares.iter().map(|s| s.row as i64 - h).collect()
    }
}
