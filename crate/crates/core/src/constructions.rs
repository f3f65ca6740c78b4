//! Loop builders and exhaustive generators.
//!
//! [`all_loops`] walks every normalized Latin square of a given order, row by
//! row, in lexicographic order of the flattened table. No isomorph rejection
//! is done, so isomorphic copies appear with every labelling. The same
//! ordering is what "the first loop of order n" refers to throughout the
//! crate's tests.

use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::identity::{check_identity, Identity, IdentityError};
use crate::loop_core::{Elem, LoopError, LoopTable};

/// Largest order [`all_loops`] will attempt.
pub const MAX_GENERATED_ORDER: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("order {0} exceeds the generator limit of {MAX_GENERATED_ORDER}")]
    OrderTooLarge(usize),
    #[error("order must be positive")]
    ZeroOrder,
    #[error(transparent)]
    Loop(#[from] LoopError),
}

/// The cyclic group `Z_n` with `x * y = x + y mod n`.
pub fn cyclic(n: usize) -> LoopTable {
    assert!(n >= 1, "cyclic group of order 0");
    let flat = (0..n).flat_map(|i| (0..n).map(move |j| (i + j) % n)).collect();
    LoopTable::from_flat_unchecked(n, flat)
}

/// `(Z_p)^k` as an iterated direct product.
pub fn elementary_abelian(p: usize, k: usize) -> LoopTable {
    (1..k).fold(cyclic(p), |acc, _| direct_product(&acc, &cyclic(p)))
}

/// Direct product with `(a, b)` encoded as `a * |L2| + b`.
pub fn direct_product(l1: &LoopTable, l2: &LoopTable) -> LoopTable {
    let (n1, n2) = (l1.order(), l2.order());
    let n = n1 * n2;
    let mut flat = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (a1, b1) = (x / n2, x % n2);
            let (a2, b2) = (y / n2, y % n2);
            flat.push(l1.mul(a1, a2) * n2 + l2.mul(b1, b2));
        }
    }
    LoopTable::from_flat_unchecked(n, flat)
}

/// Abelian groups of every order up to `max_order`, one table per
/// isomorphism type, built from cyclic factors of prime-power order.
pub fn abelian_groups_up_to(max_order: usize) -> Vec<(String, LoopTable)> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        for factors in abelian_invariants(n) {
            let name = if factors.is_empty() {
                "Z1".to_string()
            } else {
                factors.iter().map(|f| format!("Z{f}")).collect::<Vec<_>>().join("x")
            };
            let table = factors
                .iter()
                .skip(1)
                .fold(cyclic(*factors.first().unwrap_or(&1)), |acc, &f| direct_product(&acc, &cyclic(f)));
            out.push((name, table));
        }
    }
    out
}

/// Elementary-divisor decompositions of the abelian groups of order `n`.
fn abelian_invariants(n: usize) -> Vec<Vec<usize>> {
    let mut prime_parts: Vec<(usize, u32)> = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            prime_parts.push((p, e));
        }
        p += 1;
    }
    let mut results = vec![Vec::new()];
    for (p, e) in prime_parts {
        let mut next = Vec::new();
        for partition in partitions(e, e) {
            for prefix in &results {
                let mut f: Vec<usize> = prefix.clone();
                f.extend(partition.iter().map(|&k| p.pow(k)));
                next.push(f);
            }
        }
        results = next;
    }
    results
}

fn partitions(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Result of [`commutative_isotope`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isotope {
    /// Element 0 is a two-sided identity of the new operation.
    Loop(LoopTable),
    /// A Latin square without identity at 0.
    Quasigroup(Vec<Vec<Elem>>),
}

impl Isotope {
    pub fn rows(&self) -> Vec<Vec<Elem>> {
        match self {
            Isotope::Loop(l) => l.rows(),
            Isotope::Quasigroup(rows) => rows.clone(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        let rows = self.rows();
        let n = rows.len();
        (0..n).all(|x| (0..n).all(|y| rows[x][y] == rows[y][x]))
    }
}

/// The isotope `x o y = x' \ y`.
pub fn commutative_isotope(l: &LoopTable) -> Result<Isotope, LoopError> {
    let n = l.order();
    let j = l.inversion()?;
    let rows: Vec<Vec<Elem>> = (0..n).map(|x| (0..n).map(|y| l.ldiv(j.apply(x), y)).collect()).collect();
    Ok(match LoopTable::validate(&rows) {
        Ok(table) => Isotope::Loop(table),
        Err(_) => Isotope::Quasigroup(rows),
    })
}

/// Iterator over every loop of a fixed order; see [`all_loops`].
pub struct AllLoops {
    n: usize,
    table: Vec<Elem>,
    cells: Vec<(usize, usize)>,
    next_value: Vec<usize>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    depth: usize,
    floor: usize,
    started: bool,
    done: bool,
}

impl AllLoops {
    fn new(n: usize) -> Self {
        let mut table = vec![0; n * n];
        let mut row_used = vec![0u32; n];
        let mut col_used = vec![0u32; n];
        for i in 0..n {
            table[i] = i;
            table[i * n] = i;
            row_used[i] |= 1 << i;
            col_used[i] |= 1 << i;
        }
        let cells: Vec<_> = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
        let m = cells.len();
        AllLoops {
            n,
            table,
            cells,
            next_value: vec![0; m + 1],
            row_used,
            col_used,
            depth: 0,
            floor: 0,
            started: false,
            done: false,
        }
    }

    /// Restricts the walk to loops whose row 1 is `row1`.
    fn with_row1(n: usize, row1: &[Elem]) -> Self {
        let mut it = Self::new(n);
        for (j, &v) in row1.iter().enumerate().skip(1) {
            it.place(it.depth, v);
            debug_assert_eq!(it.cells[it.depth].1, j);
            it.depth += 1;
        }
        it.floor = it.depth;
        it
    }

    fn place(&mut self, cell: usize, v: usize) {
        let (i, j) = self.cells[cell];
        self.table[i * self.n + j] = v;
        self.row_used[i] |= 1 << v;
        self.col_used[j] |= 1 << v;
    }

    fn unplace(&mut self, cell: usize) {
        let (i, j) = self.cells[cell];
        let v = self.table[i * self.n + j];
        self.row_used[i] &= !(1 << v);
        self.col_used[j] &= !(1 << v);
    }

    /// Advances to the next complete square; false when exhausted.
    fn advance(&mut self) -> bool {
        let m = self.cells.len();
        if self.started {
            if self.depth == self.floor {
                return false;
            }
            self.depth -= 1;
            self.unplace(self.depth);
        }
        self.started = true;
        let full = (1u32 << self.n) - 1;
        loop {
            if self.depth == m {
                return true;
            }
            let (i, j) = self.cells[self.depth];
            let free = !(self.row_used[i] | self.col_used[j]) & full;
            let candidates = free & !((1u32 << self.next_value[self.depth]) - 1);
            if candidates != 0 {
                let v = candidates.trailing_zeros() as usize;
                self.place(self.depth, v);
                self.next_value[self.depth] = v + 1;
                self.depth += 1;
                self.next_value[self.depth] = 0;
            } else {
                self.next_value[self.depth] = 0;
                if self.depth == self.floor {
                    return false;
                }
                self.depth -= 1;
                self.unplace(self.depth);
            }
        }
    }
}

impl Iterator for AllLoops {
    type Item = LoopTable;

    fn next(&mut self) -> Option<LoopTable> {
        if self.done {
            return None;
        }
        if self.advance() {
            Some(LoopTable::from_flat_unchecked(self.n, self.table.clone()))
        } else {
            self.done = true;
            None
        }
    }
}

/// Every loop of order `n` (identity 0), in lexicographic table order.
pub fn all_loops(n: usize) -> Result<AllLoops, ConstructionError> {
    match n {
        0 => Err(ConstructionError::ZeroOrder),
        n if n > MAX_GENERATED_ORDER => Err(ConstructionError::OrderTooLarge(n)),
        n => Ok(AllLoops::new(n)),
    }
}

/// Candidate second rows: permutations with `row[0] = 1` and `row[j] != j`.
fn second_rows(n: usize) -> Vec<Vec<Elem>> {
    fn extend(n: usize, row: &mut Vec<Elem>, used: &mut [bool], out: &mut Vec<Vec<Elem>>) {
        let j = row.len();
        if j == n {
            out.push(row.clone());
            return;
        }
        for v in 0..n {
            if !used[v] && v != j {
                used[v] = true;
                row.push(v);
                extend(n, row, used, out);
                row.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut used = vec![false; n];
    used[1] = true;
    extend(n, &mut vec![1], &mut used, &mut out);
    out
}

/// Like [`all_loops`] but splits the walk by row 1 across the rayon pool and
/// applies `f` to each loop. Results come back in canonical order.
pub fn par_map_loops<T, F>(n: usize, f: F) -> Result<Vec<T>, ConstructionError>
where
    T: Send,
    F: Fn(LoopTable) -> Option<T> + Sync,
{
    let walker = all_loops(n)?;
    if n < 3 {
        return Ok(walker.filter_map(&f).collect());
    }
    let chunks: Vec<Vec<T>> =
        second_rows(n).par_iter().map(|row| AllLoops::with_row1(n, row).filter_map(&f).collect()).collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Number of loops of order `n`, counted in parallel.
pub fn count_loops(n: usize) -> Result<u64, ConstructionError> {
    all_loops(n)?;
    if n < 3 {
        return Ok(1);
    }
    Ok(second_rows(n).par_iter().map(|row| AllLoops::with_row1(n, row).count() as u64).sum())
}

/// Keeps the loops satisfying every identity. A loop without two-sided
/// inverses fails any identity that uses `'`; other errors are passed through.
pub fn filter_by<'a, I>(stream: I, ids: &'a [Identity]) -> impl Iterator<Item = Result<LoopTable, IdentityError>> + 'a
where
    I: IntoIterator<Item = LoopTable> + 'a,
{
    stream.into_iter().filter_map(move |l| {
        for id in ids {
            match check_identity(&l, id) {
                Ok(v) if v.holds() => {}
                Ok(_) | Err(IdentityError::Loop(LoopError::NotTwoSided(_))) => return None,
                Err(e) => return Some(Err(e)),
            }
        }
        Some(Ok(l))
    })
}

/// All loops of order `n` with two-sided inverses satisfying the weak
/// commutative inverse property.
pub fn wcip_loops(n: usize) -> Result<Vec<LoopTable>, ConstructionError> {
    let wcip = crate::identity::builtin("WCIP").expect("builtin");
    par_map_loops(n, |l| {
        (l.has_two_sided_inverses() && check_identity(&l, &wcip).map(|v| v.holds()).unwrap_or(false)).then_some(l)
    })
}

/// Every commutative inverse-property loop of order `n`, in canonical
/// order, found by a propagating search instead of a full walk.
///
/// For each choice of inversion map, cells are filled in row-major order and
/// each placement `xy = z` immediately forces `yx = z`, `x'z = y` and
/// `zy' = x`, closing under those rules before branching again.
pub fn commutative_ip_loops(n: usize) -> Result<Vec<LoopTable>, ConstructionError> {
    match n {
        0 => return Err(ConstructionError::ZeroOrder),
        n if n > MAX_GENERATED_ORDER => return Err(ConstructionError::OrderTooLarge(n)),
        _ => {}
    }
    let mut out = Vec::new();
    for inv in involutions_fixing_zero(n) {
        let mut search = CipSearch::new(n, inv);
        if search.seed() {
            search.run(&mut out);
        }
    }
    out.sort_by(|a, b| a.flat().cmp(b.flat()));
    Ok(out)
}

fn involutions_fixing_zero(n: usize) -> Vec<Vec<Elem>> {
    fn go(map: &mut Vec<Option<Elem>>, out: &mut Vec<Vec<Elem>>) {
        match map.iter().position(Option::is_none) {
            None => out.push(map.iter().map(|v| v.unwrap()).collect()),
            Some(i) => {
                map[i] = Some(i);
                go(map, out);
                for j in i + 1..map.len() {
                    if map[j].is_none() {
                        map[i] = Some(j);
                        map[j] = Some(i);
                        go(map, out);
                        map[j] = None;
                    }
                }
                map[i] = None;
            }
        }
    }
    let mut map = vec![None; n];
    map[0] = Some(0);
    let mut out = Vec::new();
    go(&mut map, &mut out);
    out
}

struct CipSearch {
    n: usize,
    inv: Vec<Elem>,
    table: Vec<Option<Elem>>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    trail: Vec<usize>,
}

impl CipSearch {
    fn new(n: usize, inv: Vec<Elem>) -> Self {
        CipSearch { n, inv, table: vec![None; n * n], row_used: vec![0; n], col_used: vec![0; n], trail: Vec::new() }
    }

    fn seed(&mut self) -> bool {
        for x in 0..self.n {
            if !self.assign(0, x, x) || !self.assign(x, self.inv[x], 0) {
                return false;
            }
        }
        true
    }

    fn assign(&mut self, x: Elem, y: Elem, z: Elem) -> bool {
        let mut work = vec![(x, y, z)];
        while let Some((x, y, z)) = work.pop() {
            let cell = x * self.n + y;
            match self.table[cell] {
                Some(w) if w == z => continue,
                Some(_) => return false,
                None => {}
            }
            if self.row_used[x] & (1 << z) != 0 || self.col_used[y] & (1 << z) != 0 {
                return false;
            }
            self.table[cell] = Some(z);
            self.row_used[x] |= 1 << z;
            self.col_used[y] |= 1 << z;
            self.trail.push(cell);
            work.push((y, x, z));
            work.push((self.inv[x], z, y));
            work.push((z, self.inv[y], x));
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let cell = self.trail.pop().unwrap();
            let z = self.table[cell].take().unwrap();
            self.row_used[cell / self.n] &= !(1 << z);
            self.col_used[cell % self.n] &= !(1 << z);
        }
    }

    fn run(&mut self, out: &mut Vec<LoopTable>) {
        let Some(cell) = self.table.iter().position(Option::is_none) else {
            let flat = self.table.iter().map(|v| v.unwrap()).collect();
            out.push(LoopTable::from_flat_unchecked(self.n, flat));
            return;
        };
        let (x, y) = (cell / self.n, cell % self.n);
        let free = !(self.row_used[x] | self.col_used[y]) & ((1u32 << self.n) - 1);
        for z in (0..self.n).filter(|z| free & (1 << z) != 0) {
            let mark = self.trail.len();
            if self.assign(x, y, z) {
                self.run(out);
            }
            self.undo_to(mark);
        }
    }
}

/// A random loop of order `n` by randomized row-major backtracking. The
/// distribution is not uniform.
pub fn random_loop<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LoopTable {
    assert!((1..=32).contains(&n), "random_loop supports orders 1..=32");
    fn fill<R: Rng + ?Sized>(
        n: usize,
        cell: usize,
        table: &mut [Elem],
        row_used: &mut [u64],
        col_used: &mut [u64],
        rng: &mut R,
    ) -> bool {
        let m = (n - 1) * (n - 1);
        if cell == m {
            return true;
        }
        let (i, j) = (1 + cell / (n - 1), 1 + cell % (n - 1));
        let mut values: Vec<Elem> = (0..n).filter(|&v| (row_used[i] | col_used[j]) & (1 << v) == 0).collect();
        values.shuffle(rng);
        for v in values {
            table[i * n + j] = v;
            row_used[i] |= 1 << v;
            col_used[j] |= 1 << v;
            if fill(n, cell + 1, table, row_used, col_used, rng) {
                return true;
            }
            row_used[i] &= !(1 << v);
            col_used[j] &= !(1 << v);
        }
        false
    }
    let mut table = vec![0; n * n];
    let mut row_used = vec![0u64; n];
    let mut col_used = vec![0u64; n];
    for i in 0..n {
        table[i] = i;
        table[i * n] = i;
        row_used[i] |= 1 << i;
        col_used[i] |= 1 << i;
    }
    let ok = n == 1 || fill(n, 0, &mut table, &mut row_used, &mut col_used, rng);
    assert!(ok, "a normalized Latin square always exists");
    LoopTable::from_flat_unchecked(n, table)
}

/// Principal isotope `x o y = (x / b) * (a \ y)`, a loop with identity `a*b`
/// relabelled to 0.
pub fn principal_isotope(l: &LoopTable, a: Elem, b: Elem) -> LoopTable {
    let n = l.order();
    let rows: Vec<Vec<Elem>> = (0..n).map(|x| (0..n).map(|y| l.mul(l.rdiv(x, b), l.ldiv(a, y))).collect()).collect();
    let rows = crate::loop_core::relabel_identity_first(&rows).expect("principal isotopes are loops");
    LoopTable::validate(&rows).expect("relabelled isotope validates")
}

/// Loads every `*.tbl` file under `dir`, recursively, sorted by path. Each
/// loop is identified by its path relative to `dir`.
pub fn load_catalog(dir: &Path) -> Result<Vec<(String, LoopTable)>, LoopError> {
    fn walk(dir: &Path, out: &mut Vec<PathBuf>) -> Result<(), LoopError> {
        let io = |e: std::io::Error| LoopError::Io { path: dir.display().to_string(), message: e.to_string() };
        for entry in fs::read_dir(dir).map_err(io)? {
            let path = entry.map_err(io)?.path();
            if path.is_dir() {
                walk(&path, out)?;
            } else if path.extension().is_some_and(|e| e == "tbl") {
                out.push(path);
            }
        }
        Ok(())
    }
    let mut paths = Vec::new();
    walk(dir, &mut paths)?;
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let id = p.strip_prefix(dir).unwrap_or(&p).display().to_string();
            LoopTable::load(&p).map(|l| (id, l))
        })
        .collect()
}
