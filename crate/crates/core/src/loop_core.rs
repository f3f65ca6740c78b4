//! Cayley-table loops.
//!
//! A [`LoopTable`] of order `n` has elements `0..n`, with `0` the identity.
//! Both division tables are built once at validation time so `ldiv` and
//! `rdiv` are table lookups, the same as `mul`.
//!
//! Permutations act on the right: `x.then(a).then(b)` reads as `x(ab)`, so
//! `a.then(&b)` first applies `a` and then `b`.

use std::fmt;
use std::fs;
use std::path::Path;

use thiserror::Error;

/// An element of a finite loop, given by its index.
pub type Elem = usize;

/// Which line of a Cayley table an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(Elem),
    Column(Elem),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(r) => write!(f, "row {r}"),
            Line::Column(c) => write!(f, "column {c}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LoopError {
    #[error("empty table")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    OutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("{line} repeats symbol {symbol}")]
    NotLatin { line: Line, symbol: Elem },
    #[error("row 0 and column 0 must be the identity permutation")]
    NoIdentity,
    #[error("no element acts as a two-sided identity")]
    NoIdentityElement,
    #[error("element {0} has different left and right inverses")]
    NotTwoSided(Elem),
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("{path}: line {line}: {message}")]
    Format { path: String, line: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

/// A bijection on `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    images: Vec<Elem>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<Elem>) -> Result<Self, LoopError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(LoopError::NotPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from images already known to be a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<Elem>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Permutation) -> Self {
        assert_eq!(self.len(), next.len(), "composing permutations of different degree");
        Permutation { images: self.images.iter().map(|&v| next.images[v]).collect() }
    }

    /// Conjugation by an involution `j`: the map `j self j`.
    pub fn conjugate(&self, j: &Permutation) -> Self {
        j.then(self).then(j)
    }
}

impl fmt::Display for Permutation {
    /// One-line notation, e.g. `[0 2 1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A finite loop given by its Cayley table, identity at index 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LoopTable {
    order: usize,
    mul: Vec<Elem>,
    ldiv: Vec<Elem>,
    rdiv: Vec<Elem>,
    inverses: Vec<Option<Elem>>,
}

impl LoopTable {
    /// Validates a raw table: square, in range, Latin, with identity row and
    /// column at index 0.
    pub fn validate(raw: &[Vec<Elem>]) -> Result<Self, LoopError> {
        let n = raw.len();
        if n == 0 {
            return Err(LoopError::Empty);
        }
        for (row, r) in raw.iter().enumerate() {
            if r.len() != n {
                return Err(LoopError::NotSquare { row, len: r.len(), expected: n });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(LoopError::OutOfRange { row, col, value, order: n });
                }
            }
        }
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = raw[i][j];
                if std::mem::replace(&mut row_seen[r], true) {
                    return Err(LoopError::NotLatin { line: Line::Row(i), symbol: r });
                }
                let c = raw[j][i];
                if std::mem::replace(&mut col_seen[c], true) {
                    return Err(LoopError::NotLatin { line: Line::Column(i), symbol: c });
                }
            }
        }
        if (0..n).any(|i| raw[0][i] != i || raw[i][0] != i) {
            return Err(LoopError::NoIdentity);
        }
        Ok(Self::build(n, raw.iter().flatten().copied().collect()))
    }

    /// Builds from a flat row-major table known to be a normalized Latin square.
    pub(crate) fn from_flat_unchecked(n: usize, mul: Vec<Elem>) -> Self {
        debug_assert_eq!(mul.len(), n * n);
        Self::build(n, mul)
    }

    fn build(n: usize, mul: Vec<Elem>) -> Self {
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = mul[a * n + b];
                // a * b = p  =>  a \ p = b  and  p / b = a
                ldiv[a * n + p] = b;
                rdiv[p * n + b] = a;
            }
        }
        let inverses = (0..n)
            .map(|a| {
                let right = ldiv[a * n];
                let left = rdiv[a];
                (left == right).then_some(right)
            })
            .collect();
        LoopTable { order: n, mul, ldiv, rdiv, inverses }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    /// `a \ b`: the unique `x` with `a * x = b`.
    #[inline]
    pub fn ldiv(&self, a: Elem, b: Elem) -> Elem {
        self.ldiv[a * self.order + b]
    }

    /// `a / b`: the unique `y` with `y * b = a`.
    #[inline]
    pub fn rdiv(&self, a: Elem, b: Elem) -> Elem {
        self.rdiv[a * self.order + b]
    }

    /// Two-sided inverse of `a`, if its left and right inverses agree.
    pub fn inverse(&self, a: Elem) -> Result<Elem, LoopError> {
        self.inverses[a].ok_or(LoopError::NotTwoSided(a))
    }

    pub fn has_two_sided_inverses(&self) -> bool {
        self.inverses.iter().all(Option::is_some)
    }

    /// First element lacking a two-sided inverse.
    pub fn first_one_sided(&self) -> Option<Elem> {
        self.inverses.iter().position(Option::is_none)
    }

    /// The inversion map `J`.
    pub fn inversion(&self) -> Result<Permutation, LoopError> {
        let images = (0..self.order).map(|a| self.inverse(a)).collect::<Result<Vec<_>, _>>()?;
        Ok(Permutation::from_images_unchecked(images))
    }

    /// `L_x : y -> xy`.
    pub fn left_translation(&self, x: Elem) -> Permutation {
        Permutation::from_images_unchecked(self.row(x).to_vec())
    }

    /// `R_x : y -> yx`.
    pub fn right_translation(&self, x: Elem) -> Permutation {
        Permutation::from_images_unchecked((0..self.order).map(|y| self.mul(y, x)).collect())
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.mul[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.order).map(<[Elem]>::to_vec).collect()
    }

    /// Row-major flattened multiplication table.
    pub fn flat(&self) -> &[Elem] {
        &self.mul
    }

    pub fn is_automorphism(&self, sigma: &Permutation) -> bool {
        let n = self.order;
        sigma.len() == n
            && (0..n).all(|x| (0..n).all(|y| sigma.apply(self.mul(x, y)) == self.mul(sigma.apply(x), sigma.apply(y))))
    }

    /// Renders in the Cayley-table text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.mul.chunks(self.order) {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the Cayley-table text format. `origin` names the source in errors.
    pub fn parse_text(text: &str, origin: &str) -> Result<Self, LoopError> {
        let format_err = |line: usize, message: String| LoopError::Format { path: origin.to_string(), line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or_else(|| format_err(1, "missing order line".into()))?;
        let n: usize =
            header.parse().map_err(|_| format_err(header_line, format!("expected order, found {header:?}")))?;
        if n == 0 {
            return Err(format_err(header_line, "order must be positive".into()));
        }

        let mut raw = Vec::with_capacity(n);
        let mut last_line = header_line;
        for (lineno, line) in lines {
            if raw.len() == n {
                return Err(format_err(lineno, "unexpected extra row".into()));
            }
            let row = line
                .split_whitespace()
                .map(|tok| tok.parse::<usize>().map_err(|_| format_err(lineno, format!("bad entry {tok:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return Err(format_err(lineno, format!("expected {n} entries, found {}", row.len())));
            }
            raw.push(row);
            last_line = lineno;
        }
        if raw.len() != n {
            return Err(format_err(last_line, format!("expected {n} rows, found {}", raw.len())));
        }
        Self::validate(&raw).map_err(|e| format_err(header_line, e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, LoopError> {
        let text = fs::read_to_string(path)
            .map_err(|e| LoopError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::parse_text(&text, &path.display().to_string())
    }

    pub fn save(&self, path: &Path) -> Result<(), LoopError> {
        fs::write(path, self.to_text())
            .map_err(|e| LoopError::Io { path: path.display().to_string(), message: e.to_string() })
    }
}

/// Relabels a quasigroup table with a two-sided identity so that the identity
/// becomes element 0, swapping it with the old element 0.
pub fn relabel_identity_first(raw: &[Vec<Elem>]) -> Result<Vec<Vec<Elem>>, LoopError> {
    let n = raw.len();
    let e = (0..n)
        .find(|&e| (0..n).all(|x| raw[e].get(x) == Some(&x) && raw.get(x).and_then(|r| r.get(e)) == Some(&x)))
        .ok_or(LoopError::NoIdentityElement)?;
    let swap = |v: Elem| {
        if v == e {
            0
        } else if v == 0 {
            e
        } else {
            v
        }
    };
    Ok((0..n).map(|i| (0..n).map(|j| swap(raw[swap(i)][swap(j)])).collect()).collect())
}
