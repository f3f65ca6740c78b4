//! Left, middle and right nuclei.
//!
//! [`nucleus`] reads the associativity condition straight off the table;
//! [`nucleus_via_pseudo`] instead asks for which companions the identity map
//! is a pseudoautomorphism of the matching kind. The two must agree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::loop_core::{Elem, LoopTable, Permutation};
use crate::pseudo::is_pseudo;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NucleusKind {
    Left,
    Middle,
    Right,
}

impl NucleusKind {
    pub const ALL: [NucleusKind; 3] = [NucleusKind::Left, NucleusKind::Middle, NucleusKind::Right];

    pub fn name(self) -> &'static str {
        match self {
            NucleusKind::Left => "left",
            NucleusKind::Middle => "middle",
            NucleusKind::Right => "right",
        }
    }
}

impl fmt::Display for NucleusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for NucleusKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(NucleusKind::Left),
            "middle" | "m" => Ok(NucleusKind::Middle),
            "right" | "r" => Ok(NucleusKind::Right),
            _ => Err(format!("unknown kind {s:?} (expected left, middle or right)")),
        }
    }
}

fn is_nuclear(l: &LoopTable, kind: NucleusKind, a: Elem) -> bool {
    let n = l.order();
    (0..n).all(|x| {
        (0..n).all(|y| match kind {
            NucleusKind::Left => l.mul(l.mul(a, x), y) == l.mul(a, l.mul(x, y)),
            NucleusKind::Middle => l.mul(l.mul(x, a), y) == l.mul(x, l.mul(a, y)),
            NucleusKind::Right => l.mul(l.mul(x, y), a) == l.mul(x, l.mul(y, a)),
        })
    })
}

/// The nucleus of the given kind, sorted.
pub fn nucleus(l: &LoopTable, kind: NucleusKind) -> Vec<Elem> {
    (0..l.order()).filter(|&a| is_nuclear(l, kind, a)).collect()
}

/// Companions `c` for which the identity permutation is a pseudoautomorphism
/// of the given kind.
pub fn nucleus_via_pseudo(l: &LoopTable, kind: NucleusKind) -> Vec<Elem> {
    let id = Permutation::identity(l.order());
    (0..l.order()).filter(|&c| is_pseudo(l, kind, &id, c)).collect()
}

/// True iff `set` contains 0 and is closed under `*`, `\` and `/`.
pub fn is_subloop(l: &LoopTable, set: &[Elem]) -> bool {
    let mut member = vec![false; l.order()];
    for &a in set {
        match member.get_mut(a) {
            Some(m) => *m = true,
            None => return false,
        }
    }
    member[0]
        && set.iter().all(|&a| set.iter().all(|&b| member[l.mul(a, b)] && member[l.ldiv(a, b)] && member[l.rdiv(a, b)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{all_loops, cyclic};

    /// Triple loop written against raw rows only.
    fn oracle(rows: &[Vec<Elem>], kind: NucleusKind) -> Vec<Elem> {
        let n = rows.len();
        let m = |a: Elem, b: Elem| rows[a][b];
        (0..n)
            .filter(|&a| {
                let mut ok = true;
                for x in 0..n {
                    for y in 0..n {
                        ok &= match kind {
                            NucleusKind::Left => m(m(a, x), y) == m(a, m(x, y)),
                            NucleusKind::Middle => m(m(x, a), y) == m(x, m(a, y)),
                            NucleusKind::Right => m(m(x, y), a) == m(x, m(y, a)),
                        };
                    }
                }
                ok
            })
            .collect()
    }

    #[test]
    fn group_nuclei_are_everything() {
        let z5 = cyclic(5);
        for kind in NucleusKind::ALL {
            assert_eq!(nucleus(&z5, kind), vec![0, 1, 2, 3, 4]);
            assert_eq!(nucleus_via_pseudo(&z5, kind), vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn first_nonassociative_order_five() {
        let l = all_loops(5).unwrap().find(|l| nucleus(l, NucleusKind::Left).len() < 5).unwrap();
        let rows = l.rows();
        for kind in NucleusKind::ALL {
            assert_eq!(nucleus(&l, kind), oracle(&rows, kind));
        }
        // frozen from an independent brute-force run over the raw table
        for kind in NucleusKind::ALL {
            assert_eq!(nucleus(&l, kind), vec![0]);
        }
    }

    #[test]
    fn identity_is_always_nuclear_and_nuclei_are_subloops() {
        for n in 1..=5 {
            for l in all_loops(n).unwrap() {
                for kind in NucleusKind::ALL {
                    let nuc = nucleus(&l, kind);
                    assert_eq!(nuc.first(), Some(&0));
                    assert!(is_subloop(&l, &nuc));
                    assert_eq!(nuc, nucleus_via_pseudo(&l, kind));
                }
            }
        }
    }

    #[test]
    fn subloop_checks() {
        let z5 = cyclic(5);
        assert!(is_subloop(&z5, &[0]));
        assert!(!is_subloop(&z5, &[1]));
        assert!(!is_subloop(&z5, &[0, 1]));
        assert!(!is_subloop(&z5, &[0, 9]));
        assert!(is_subloop(&z5, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("Middle".parse::<NucleusKind>(), Ok(NucleusKind::Middle));
        assert!("sideways".parse::<NucleusKind>().is_err());
    }
}
