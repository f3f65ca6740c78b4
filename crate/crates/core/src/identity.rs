//! A small language of loop identities.
//!
//! Terms are built from the variables `x y z u v w`, the constant `1`, the
//! binary operations `*`, `\` and `/`, and the postfix inverse `'`. A chain
//! of binary operations associates to the left, but mixing different
//! operations in one chain without parentheses is rejected: `x*y\z` could
//! mean either grouping.
//!
//! ```
//! use loopcalc::constructions::cyclic;
//! use loopcalc::identity::{check_identity, parse_identity, Verdict};
//!
//! let wcip = parse_identity("(x*y)' * y = x'").unwrap();
//! assert_eq!(check_identity(&cyclic(5), &wcip).unwrap(), Verdict::Holds);
//! ```

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::loop_core::{Elem, LoopError, LoopTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    U,
    V,
    W,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::X, Var::Y, Var::Z, Var::U, Var::V, Var::W];

    pub fn from_char(c: char) -> Option<Var> {
        Some(match c {
            'x' => Var::X,
            'y' => Var::Y,
            'z' => Var::Z,
            'u' => Var::U,
            'v' => Var::V,
            'w' => Var::W,
            _ => return None,
        })
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z', 'u', 'v', 'w'][self.index()]
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Mul,
    Ldiv,
    Rdiv,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Mul => '*',
            BinOp::Ldiv => '\\',
            BinOp::Rdiv => '/',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    One,
    Mul(Box<Term>, Box<Term>),
    Ldiv(Box<Term>, Box<Term>),
    Rdiv(Box<Term>, Box<Term>),
    Inv(Box<Term>),
}

impl Term {
    fn binary(op: BinOp, l: Term, r: Term) -> Term {
        let (l, r) = (Box::new(l), Box::new(r));
        match op {
            BinOp::Mul => Term::Mul(l, r),
            BinOp::Ldiv => Term::Ldiv(l, r),
            BinOp::Rdiv => Term::Rdiv(l, r),
        }
    }

    fn as_binary(&self) -> Option<(BinOp, &Term, &Term)> {
        match self {
            Term::Mul(l, r) => Some((BinOp::Mul, l, r)),
            Term::Ldiv(l, r) => Some((BinOp::Ldiv, l, r)),
            Term::Rdiv(l, r) => Some((BinOp::Rdiv, l, r)),
            _ => None,
        }
    }

    /// Marks every variable occurring in the term.
    fn collect_vars(&self, seen: &mut [bool; 6]) {
        match self {
            Term::Var(v) => seen[v.index()] = true,
            Term::One => {}
            Term::Inv(t) => t.collect_vars(seen),
            Term::Mul(l, r) | Term::Ldiv(l, r) | Term::Rdiv(l, r) => {
                l.collect_vars(seen);
                r.collect_vars(seen);
            }
        }
    }

    pub fn contains_inverse(&self) -> bool {
        match self {
            Term::Inv(_) => true,
            Term::Var(_) | Term::One => false,
            Term::Mul(l, r) | Term::Ldiv(l, r) | Term::Rdiv(l, r) => l.contains_inverse() || r.contains_inverse(),
        }
    }

    pub fn contains_rdiv(&self) -> bool {
        match self {
            Term::Rdiv(..) => true,
            Term::Var(_) | Term::One => false,
            Term::Inv(t) => t.contains_rdiv(),
            Term::Mul(l, r) | Term::Ldiv(l, r) => l.contains_rdiv() || r.contains_rdiv(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::One => write!(f, "1"),
            Term::Inv(t) => {
                if t.as_binary().is_some() {
                    write!(f, "({t})'")
                } else {
                    write!(f, "{t}'")
                }
            }
            _ => {
                let (op, l, r) = self.as_binary().unwrap();
                match l.as_binary() {
                    Some((lop, _, _)) if lop != op => write!(f, "({l})")?,
                    _ => write!(f, "{l}")?,
                }
                write!(f, " {} ", op.symbol())?;
                if r.as_binary().is_some() {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
        }
    }
}

/// An equation between two terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    lhs: Term,
    rhs: Term,
    vars: Vec<Var>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        let mut seen = [false; 6];
        lhs.collect_vars(&mut seen);
        rhs.collect_vars(&mut seen);
        let vars = Var::ALL.into_iter().filter(|v| seen[v.index()]).collect();
        Identity { lhs, rhs, vars }
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    /// Variables of both sides, in alphabet order `x y z u v w`.
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn contains_inverse(&self) -> bool {
        self.lhs.contains_inverse() || self.rhs.contains_inverse()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("syntax error at {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("ambiguous chain at {position}: parenthesize mixed '*', '\\', '/'")]
    MixedChainAmbiguity { position: usize },
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("variable {0} is unassigned")]
    Unassigned(Var),
    #[error("line {line}: {source}")]
    Theory {
        line: usize,
        #[source]
        source: Box<IdentityError>,
    },
    #[error(transparent)]
    Loop(#[from] LoopError),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, expected: &str) -> Result<T, IdentityError> {
        Err(IdentityError::Syntax { position: self.pos, expected: expected.to_string() })
    }

    fn term(&mut self) -> Result<Term, IdentityError> {
        let mut acc = self.postfix()?;
        let mut chain_op: Option<BinOp> = None;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'\\') => BinOp::Ldiv,
                Some(b'/') => BinOp::Rdiv,
                _ => return Ok(acc),
            };
            match chain_op {
                Some(prev) if prev != op => return Err(IdentityError::MixedChainAmbiguity { position: self.pos }),
                _ => chain_op = Some(op),
            }
            self.pos += 1;
            let rhs = self.postfix()?;
            acc = Term::binary(op, acc, rhs);
        }
    }

    fn postfix(&mut self) -> Result<Term, IdentityError> {
        let mut t = self.primary()?;
        while self.peek() == Some(b'\'') {
            self.pos += 1;
            t = Term::Inv(Box::new(t));
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, IdentityError> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some(b'(') => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(b')') {
                    return self.error("')'");
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) => match Var::from_char(c as char) {
                Some(v) => {
                    self.pos += 1;
                    Ok(Term::Var(v))
                }
                None => self.error("variable, '1' or '('"),
            },
            None => self.error("variable, '1' or '('"),
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term, IdentityError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let t = p.term()?;
    if p.peek().is_some() {
        return p.error("end of input");
    }
    Ok(t)
}

pub fn parse_identity(text: &str) -> Result<Identity, IdentityError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let lhs = p.term()?;
    if p.peek() != Some(b'=') {
        return p.error("'='");
    }
    p.pos += 1;
    let rhs = p.term()?;
    if p.peek().is_some() {
        return p.error("end of input");
    }
    Ok(Identity::new(lhs, rhs))
}

/// Parses a theory file: one identity or builtin name per line, `#` comments.
pub fn parse_theory(text: &str) -> Result<Vec<Identity>, IdentityError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(line, l)| identity_or_builtin(l).map_err(|e| IdentityError::Theory { line, source: Box::new(e) }))
        .collect()
}

/// Accepts either a builtin name (case-insensitive) or an identity string.
pub fn identity_or_builtin(text: &str) -> Result<Identity, IdentityError> {
    if text.contains('=') {
        parse_identity(text)
    } else {
        builtin(text)
    }
}

pub const BUILTIN_NAMES: [&str; 9] = ["WCIP", "WCIP2", "AIP", "RIP", "BOL", "LIP", "RIPINV", "COMM", "ASSOC"];

fn builtin_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "WCIP" => "(x * y)' * y = x'",
        "WCIP2" => "y' \\ x' = x \\ y",
        "AIP" => "(x * y)' = x' * y'",
        "RIP" => "x * y * y' = x",
        "BOL" => "x * y * z * y = x * ((y * z) * y)",
        "LIP" => "x' * (x * y) = y",
        "RIPINV" => "x * y' * y = x",
        "COMM" => "x * y = y * x",
        "ASSOC" => "x * y * z = x * (y * z)",
        _ => return None,
    })
}

/// A named identity from the fixed builtin list.
pub fn builtin(name: &str) -> Result<Identity, IdentityError> {
    let upper = name.trim().to_ascii_uppercase();
    let src = builtin_source(&upper).ok_or_else(|| IdentityError::UnknownIdentity(name.to_string()))?;
    Ok(parse_identity(src).expect("builtin identities parse"))
}

/// Variable values for evaluation, indexed by [`Var`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Assignment([Option<Elem>; 6]);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, value: Elem) -> Self {
        self.0[v.index()] = Some(value);
        self
    }

    pub fn set(&mut self, v: Var, value: Elem) {
        self.0[v.index()] = Some(value);
    }

    pub fn get(&self, v: Var) -> Option<Elem> {
        self.0[v.index()]
    }
}

pub fn eval_term(l: &LoopTable, t: &Term, assignment: &Assignment) -> Result<Elem, IdentityError> {
    Ok(match t {
        Term::Var(v) => assignment.get(*v).ok_or(IdentityError::Unassigned(*v))?,
        Term::One => 0,
        Term::Mul(a, b) => l.mul(eval_term(l, a, assignment)?, eval_term(l, b, assignment)?),
        Term::Ldiv(a, b) => l.ldiv(eval_term(l, a, assignment)?, eval_term(l, b, assignment)?),
        Term::Rdiv(a, b) => l.rdiv(eval_term(l, a, assignment)?, eval_term(l, b, assignment)?),
        Term::Inv(a) => l.inverse(eval_term(l, a, assignment)?)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The first failing assignment in lexicographic order, with the values of
    /// both sides.
    Counterexample {
        assignment: BTreeMap<Var, Elem>,
        lhs: Elem,
        rhs: Elem,
    },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "HOLDS"),
            Verdict::Counterexample { assignment, lhs, rhs } => {
                write!(f, "FAILS at")?;
                for (v, e) in assignment {
                    write!(f, " {v}={e}")?;
                }
                write!(f, " (lhs {lhs}, rhs {rhs})")
            }
        }
    }
}

/// Decides `id` on `l` by trying all `n^k` assignments, `x` most significant.
///
/// Identities using `'` are refused outright on loops without two-sided
/// inverses.
pub fn check_identity(l: &LoopTable, id: &Identity) -> Result<Verdict, IdentityError> {
    if id.contains_inverse() {
        if let Some(a) = l.first_one_sided() {
            return Err(LoopError::NotTwoSided(a).into());
        }
    }
    let n = l.order();
    let k = id.vars().len();
    let mut digits = vec![0usize; k];
    loop {
        let mut asg = Assignment::new();
        for (&v, &d) in id.vars().iter().zip(&digits) {
            asg.set(v, d);
        }
        let lhs = eval_term(l, id.lhs(), &asg)?;
        let rhs = eval_term(l, id.rhs(), &asg)?;
        if lhs != rhs {
            let assignment = id.vars().iter().copied().zip(digits.iter().copied()).collect();
            return Ok(Verdict::Counterexample { assignment, lhs, rhs });
        }
        // odometer, last variable fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(Verdict::Holds);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// True iff every identity in `ids` holds in `l`.
pub fn satisfies_all(l: &LoopTable, ids: &[Identity]) -> Result<bool, IdentityError> {
    for id in ids {
        if !check_identity(l, id)?.holds() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience for builtin checks that treat a missing two-sided inverse as
/// "does not hold".
pub fn holds_builtin(l: &LoopTable, name: &str) -> bool {
    let id = builtin(name).expect("known builtin");
    matches!(check_identity(l, &id), Ok(Verdict::Holds))
}
