//! Brute-force oracles shared by the integration tests. They use only the raw
//! multiplication rows, never the precomputed division tables.
#![allow(dead_code)]

use loopcalc::identity::{Identity, Term, Var};
use loopcalc::nuclei::NucleusKind;
use loopcalc::pseudo::PseudoPair;
use loopcalc::{Elem, LoopTable, Permutation};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<Elem>> {
    fn go(prefix: &mut Vec<Elem>, used: &mut Vec<bool>, out: &mut Vec<Vec<Elem>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub struct Naive {
    pub rows: Vec<Vec<Elem>>,
}

impl Naive {
    pub fn new(l: &LoopTable) -> Self {
        Naive { rows: l.rows() }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.rows[a][b]
    }

    /// `a \ b` by scanning row `a`.
    pub fn ldiv(&self, a: Elem, b: Elem) -> Elem {
        (0..self.n()).find(|&y| self.mul(a, y) == b).unwrap()
    }

    /// `a / b` by scanning column `b`.
    pub fn rdiv(&self, a: Elem, b: Elem) -> Elem {
        (0..self.n()).find(|&y| self.mul(y, b) == a).unwrap()
    }

    /// Two-sided inverse, if the left and right inverses agree.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        let r = self.ldiv(a, 0);
        (self.rdiv(0, a) == r).then_some(r)
    }

    /// The defining equation of each kind, checked for all `x, y`.
    pub fn is_pseudo(&self, kind: NucleusKind, s: &[Elem], c: Elem) -> bool {
        let n = self.n();
        let m = |a, b| self.mul(a, b);
        (0..n).all(|x| {
            (0..n).all(|y| match kind {
                NucleusKind::Left => m(c, s[m(x, y)]) == m(m(c, s[x]), s[y]),
                NucleusKind::Middle => s[m(x, y)] == m(self.rdiv(s[x], self.ldiv(c, 0)), self.ldiv(c, s[y])),
                NucleusKind::Right => m(s[m(x, y)], c) == m(s[x], m(s[y], c)),
            })
        })
    }

    /// Every pair of the given kind, by trying all `n!·n` candidates.
    pub fn pseudo_pairs(&self, kind: NucleusKind) -> Vec<PseudoPair> {
        let n = self.n();
        let mut out = Vec::new();
        for c in 0..n {
            for s in permutations(n) {
                if self.is_pseudo(kind, &s, c) {
                    out.push(PseudoPair { kind, sigma: Permutation::from_images(s).unwrap(), companion: c });
                }
            }
        }
        out.sort();
        out
    }

    pub fn eval(&self, t: &Term, env: &[Elem; 6]) -> Option<Elem> {
        Some(match t {
            Term::Var(v) => env[v.index()],
            Term::One => 0,
            Term::Mul(a, b) => self.mul(self.eval(a, env)?, self.eval(b, env)?),
            Term::Ldiv(a, b) => self.ldiv(self.eval(a, env)?, self.eval(b, env)?),
            Term::Rdiv(a, b) => self.rdiv(self.eval(a, env)?, self.eval(b, env)?),
            Term::Inv(a) => self.inv(self.eval(a, env)?)?,
        })
    }

    /// Whether `id` holds, trying every assignment of the variables that
    /// occur. `None` when `id` uses `'` and some element lacks a two-sided
    /// inverse.
    pub fn holds(&self, id: &Identity) -> Option<bool> {
        if id.contains_inverse() && (0..self.n()).any(|a| self.inv(a).is_none()) {
            return None;
        }
        let vars: Vec<Var> = id.vars().to_vec();
        let n = self.n();
        let total = n.pow(vars.len() as u32);
        let mut env = [0; 6];
        for mut code in 0..total {
            for v in vars.iter().rev() {
                env[v.index()] = code % n;
                code /= n;
            }
            if self.eval(id.lhs(), &env)? != self.eval(id.rhs(), &env)? {
                return Some(false);
            }
        }
        Some(true)
    }
}
