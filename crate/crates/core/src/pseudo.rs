//! Autotopisms and pseudoautomorphisms.
//!
//! A triple `(α, β, γ)` of permutations is an autotopism when
//! `xα · yβ = (xy)γ` for all `x, y`. Pseudoautomorphisms are permutations
//! `σ` paired with a companion `c` such that one of three shaped triples is
//! an autotopism:
//!
//! | kind   | equation                          | triple                        |
//! |--------|-----------------------------------|-------------------------------|
//! | left   | `c·(xy)σ = (c·xσ)(yσ)`            | `(σL_c, σ, σL_c)`             |
//! | middle | `(xy)σ = [(xσ)/(c\1)][c\(yσ)]`    | `(σR_{c\1}⁻¹, σL_c⁻¹, σ)`     |
//! | right  | `(xy)σ·c = (xσ)(yσ·c)`            | `(σ, σR_c, σR_c)`             |
//!
//! Every one of these equations can be solved for `(xy)σ` in terms of `xσ`
//! and `yσ`, and the same holds for general autotopisms once `1α` and `1β`
//! are fixed. [`MorphismSearch`] exploits this: it assigns images element by
//! element and closes the partial map under the forced values, backtracking
//! on the first clash.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::identity::holds_builtin;
use crate::loop_core::{Elem, LoopError, LoopTable, Permutation};
use crate::nuclei::NucleusKind;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PseudoError {
    #[error("loop does not have the weak commutative inverse property")]
    NotWCIP,
    #[error("loop does not have the right inverse property")]
    NotRIP,
    #[error("triple is not an autotopism")]
    InvalidTriple,
    #[error("({0}) does not satisfy its defining equation")]
    InvalidPair(String),
    #[error("expected a {expected} pseudoautomorphism, got {got}")]
    WrongKind { expected: NucleusKind, got: NucleusKind },
    #[error(transparent)]
    Loop(#[from] LoopError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Autotopism {
    pub alpha: Permutation,
    pub beta: Permutation,
    pub gamma: Permutation,
}

impl Autotopism {
    pub fn identity(n: usize) -> Self {
        let id = Permutation::identity(n);
        Autotopism { alpha: id.clone(), beta: id.clone(), gamma: id }
    }

    /// Componentwise `self` followed by `next`.
    pub fn compose(&self, next: &Autotopism) -> Autotopism {
        Autotopism {
            alpha: self.alpha.then(&next.alpha),
            beta: self.beta.then(&next.beta),
            gamma: self.gamma.then(&next.gamma),
        }
    }

    pub fn invert(&self) -> Autotopism {
        Autotopism { alpha: self.alpha.inverse(), beta: self.beta.inverse(), gamma: self.gamma.inverse() }
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_identity() && self.beta.is_identity() && self.gamma.is_identity()
    }
}

impl fmt::Display for Autotopism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

pub fn is_autotopism(l: &LoopTable, alpha: &Permutation, beta: &Permutation, gamma: &Permutation) -> bool {
    let n = l.order();
    if alpha.len() != n || beta.len() != n || gamma.len() != n {
        return false;
    }
    (0..n).all(|x| (0..n).all(|y| l.mul(alpha.apply(x), beta.apply(y)) == gamma.apply(l.mul(x, y))))
}

impl Autotopism {
    pub fn holds_in(&self, l: &LoopTable) -> bool {
        is_autotopism(l, &self.alpha, &self.beta, &self.gamma)
    }
}

/// A pseudoautomorphism `sigma` of the given kind with its companion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PseudoPair {
    pub kind: NucleusKind,
    pub sigma: Permutation,
    pub companion: Elem,
}

impl PartialOrd for PseudoPair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Companion first, then the images of `sigma` read as a base-n number.
impl Ord for PseudoPair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.kind, self.companion, &self.sigma).cmp(&(other.kind, other.companion, &other.sigma))
    }
}

impl fmt::Display for PseudoPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} : {}", self.kind, self.companion, self.sigma)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<Elem>::deserialize(d)?;
        Permutation::from_images(images).map_err(serde::de::Error::custom)
    }
}

/// The value `(xy)σ` forced by `xσ = u`, `yσ = v` for the given kind.
#[inline]
fn forced(l: &LoopTable, kind: NucleusKind, c: Elem, u: Elem, v: Elem) -> Elem {
    match kind {
        NucleusKind::Left => l.ldiv(c, l.mul(l.mul(c, u), v)),
        NucleusKind::Middle => l.mul(l.rdiv(u, l.ldiv(c, 0)), l.ldiv(c, v)),
        NucleusKind::Right => l.rdiv(l.mul(u, l.mul(v, c)), c),
    }
}

/// Exhaustive check of the defining equation of `kind`.
pub fn is_pseudo(l: &LoopTable, kind: NucleusKind, sigma: &Permutation, c: Elem) -> bool {
    let n = l.order();
    if sigma.len() != n || c >= n {
        return false;
    }
    (0..n).all(|x| {
        (0..n).all(|y| {
            let (xs, ys, xys) = (sigma.apply(x), sigma.apply(y), sigma.apply(l.mul(x, y)));
            match kind {
                NucleusKind::Left => l.mul(c, xys) == l.mul(l.mul(c, xs), ys),
                NucleusKind::Middle => xys == l.mul(l.rdiv(xs, l.ldiv(c, 0)), l.ldiv(c, ys)),
                NucleusKind::Right => l.mul(xys, c) == l.mul(xs, l.mul(ys, c)),
            }
        })
    })
}

impl PseudoPair {
    pub fn is_valid(&self, l: &LoopTable) -> bool {
        is_pseudo(l, self.kind, &self.sigma, self.companion)
    }
}

/// The shaped triple of `p`, without validating `p`.
fn shaped_triple(l: &LoopTable, p: &PseudoPair) -> Autotopism {
    let n = l.order();
    let (s, c) = (&p.sigma, p.companion);
    let map = |f: &dyn Fn(Elem) -> Elem| Permutation::from_images_unchecked((0..n).map(f).collect());
    match p.kind {
        NucleusKind::Left => {
            let a = map(&|x| l.mul(c, s.apply(x)));
            Autotopism { alpha: a.clone(), beta: s.clone(), gamma: a }
        }
        NucleusKind::Middle => {
            let d = l.ldiv(c, 0);
            Autotopism {
                alpha: map(&|x| l.rdiv(s.apply(x), d)),
                beta: map(&|y| l.ldiv(c, s.apply(y))),
                gamma: s.clone(),
            }
        }
        NucleusKind::Right => {
            let b = map(&|y| l.mul(s.apply(y), c));
            Autotopism { alpha: s.clone(), beta: b.clone(), gamma: b }
        }
    }
}

/// The autotopism `(σL_c, σ, σL_c)`, `(σR_{c\1}⁻¹, σL_c⁻¹, σ)` or
/// `(σ, σR_c, σR_c)` matching the kind of `p`.
pub fn as_autotopism(l: &LoopTable, p: &PseudoPair) -> Result<Autotopism, PseudoError> {
    if !p.is_valid(l) {
        return Err(PseudoError::InvalidPair(p.to_string()));
    }
    Ok(shaped_triple(l, p))
}

/// Component of a triple that fixes the identity for pairs of `kind`.
pub fn distinguished(t: &Autotopism, kind: NucleusKind) -> &Permutation {
    match kind {
        NucleusKind::Left => &t.beta,
        NucleusKind::Middle => &t.gamma,
        NucleusKind::Right => &t.alpha,
    }
}

/// Recovers the pseudo pair of `kind` from an autotopism of the matching
/// shape, or `None` if `t` does not have that shape.
pub fn decompose(l: &LoopTable, kind: NucleusKind, t: &Autotopism) -> Option<PseudoPair> {
    if !t.holds_in(l) || distinguished(t, kind).apply(0) != 0 {
        return None;
    }
    let (sigma, companion) = match kind {
        NucleusKind::Left => (t.beta.clone(), t.alpha.apply(0)),
        // β = σL_c⁻¹ sends 1 to c\1, and c = 1/(c\1).
        NucleusKind::Middle => (t.gamma.clone(), l.rdiv(0, t.beta.apply(0))),
        NucleusKind::Right => (t.alpha.clone(), t.beta.apply(0)),
    };
    let p = PseudoPair { kind, sigma, companion };
    (shaped_triple(l, &p) == *t).then_some(p)
}

/// Backtracking search for every permutation `σ` with
/// `(xy)σ = F(xσ, yσ)` for all `x, y`.
///
/// Images are decided for the smallest undecided element in increasing
/// order, so solutions come out in lexicographic order of their images.
pub struct MorphismSearch<'a, F> {
    l: &'a LoopTable,
    rule: F,
    image: Vec<Option<Elem>>,
    used: Vec<bool>,
    /// Assigned elements in assignment order; doubles as the undo trail.
    assigned: Vec<Elem>,
    processed: usize,
    frames: Vec<Frame>,
}

struct Frame {
    elem: Elem,
    next_value: Elem,
    mark: usize,
}

impl<'a, F: Fn(Elem, Elem) -> Elem> MorphismSearch<'a, F> {
    pub fn new(l: &'a LoopTable, rule: F) -> Self {
        let n = l.order();
        MorphismSearch {
            l,
            rule,
            image: vec![None; n],
            used: vec![false; n],
            assigned: Vec::with_capacity(n),
            processed: 0,
            frames: vec![Frame { elem: 0, next_value: 0, mark: 0 }],
        }
    }

    fn set(&mut self, e: Elem, v: Elem) -> bool {
        if self.used[v] {
            return false;
        }
        self.image[e] = Some(v);
        self.used[v] = true;
        self.assigned.push(e);
        true
    }

    fn undo(&mut self, mark: usize) {
        for e in self.assigned.drain(mark..) {
            let v = self.image[e].take().unwrap();
            self.used[v] = false;
        }
        self.processed = self.processed.min(mark);
    }

    /// Closes the partial map under the rule; false on a clash.
    fn propagate(&mut self) -> bool {
        while self.processed < self.assigned.len() {
            let a = self.assigned[self.processed];
            self.processed += 1;
            let ia = self.image[a].unwrap();
            let mut i = 0;
            while i < self.assigned.len() {
                let b = self.assigned[i];
                let ib = self.image[b].unwrap();
                for (x, y, u, v) in [(a, b, ia, ib), (b, a, ib, ia)] {
                    let target = self.l.mul(x, y);
                    let value = (self.rule)(u, v);
                    match self.image[target] {
                        Some(w) if w == value => {}
                        Some(_) => return false,
                        None => {
                            if !self.set(target, value) {
                                return false;
                            }
                        }
                    }
                }
                i += 1;
            }
        }
        true
    }
}

impl<F: Fn(Elem, Elem) -> Elem> Iterator for MorphismSearch<'_, F> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let n = self.l.order();
        loop {
            let frame = self.frames.last()?;
            let (elem, start, mark) = (frame.elem, frame.next_value, frame.mark);
            self.undo(mark);
            let Some(v) = (start..n).find(|&v| !self.used[v]) else {
                self.frames.pop();
                continue;
            };
            self.frames.last_mut().unwrap().next_value = v + 1;
            self.set(elem, v);
            if !self.propagate() {
                continue;
            }
            match self.image.iter().position(Option::is_none) {
                None => {
                    let images = self.image.iter().map(|v| v.unwrap()).collect();
                    return Some(Permutation::from_images_unchecked(images));
                }
                Some(e) => self.frames.push(Frame { elem: e, next_value: 0, mark: self.assigned.len() }),
            }
        }
    }
}

/// All `σ` forming a pseudo pair of `kind` with the fixed companion `c`,
/// in lexicographic order.
pub fn pseudo_with_companion(l: &LoopTable, kind: NucleusKind, c: Elem) -> impl Iterator<Item = PseudoPair> + '_ {
    MorphismSearch::new(l, move |u, v| forced(l, kind, c, u, v)).map(move |sigma| PseudoPair {
        kind,
        sigma,
        companion: c,
    })
}

/// Lazy enumeration of all pseudo pairs of `kind`, companion by companion.
pub fn pseudo_iter(l: &LoopTable, kind: NucleusKind) -> impl Iterator<Item = PseudoPair> + '_ {
    (0..l.order()).flat_map(move |c| pseudo_with_companion(l, kind, c))
}

/// Every pseudo pair of `kind`, sorted by companion and then by `σ`.
/// Companions are searched in parallel.
pub fn enumerate_pseudo(l: &LoopTable, kind: NucleusKind) -> Vec<PseudoPair> {
    let chunks: Vec<Vec<PseudoPair>> =
        (0..l.order()).into_par_iter().map(|c| pseudo_with_companion(l, kind, c).collect()).collect();
    let mut out: Vec<PseudoPair> = chunks.into_iter().flatten().collect();
    out.sort();
    out
}

/// All companions making `(kind, σ, c)` a pseudo pair.
pub fn companions(l: &LoopTable, kind: NucleusKind, sigma: &Permutation) -> Vec<Elem> {
    (0..l.order()).filter(|&c| is_pseudo(l, kind, sigma, c)).collect()
}

/// Every automorphism of `l`, in lexicographic order.
pub fn automorphisms(l: &LoopTable) -> Vec<Permutation> {
    MorphismSearch::new(l, |u, v| l.mul(u, v)).collect()
}

/// Every autotopism of `l`.
///
/// An autotopism with `1α = a` and `1β = b` satisfies
/// `(xy)γ = (xγ / b)(a \ yγ)`, so for each `(a, b)` the third component is
/// found by [`MorphismSearch`] and the other two read off from it.
pub fn autotopisms(l: &LoopTable) -> Vec<Autotopism> {
    let n = l.order();
    let pairs: Vec<(Elem, Elem)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let chunks: Vec<Vec<Autotopism>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            MorphismSearch::new(l, |u, v| l.mul(l.rdiv(u, b), l.ldiv(a, v)))
                .map(|gamma| {
                    let alpha = (0..n).map(|x| l.rdiv(gamma.apply(x), b)).collect();
                    let beta = (0..n).map(|y| l.ldiv(a, gamma.apply(y))).collect();
                    Autotopism {
                        alpha: Permutation::from_images_unchecked(alpha),
                        beta: Permutation::from_images_unchecked(beta),
                        gamma,
                    }
                })
                .collect()
        })
        .collect();
    let mut out: Vec<Autotopism> = chunks.into_iter().flatten().collect();
    out.sort();
    out
}

/// WCIP with two-sided inverses.
pub fn has_wcip(l: &LoopTable) -> bool {
    l.has_two_sided_inverses() && holds_builtin(l, "WCIP")
}

pub fn has_rip(l: &LoopTable) -> bool {
    l.has_two_sided_inverses() && holds_builtin(l, "RIP")
}

/// `(α, β, γ) ↦ (JγJ, β, JαJ)`, an autotopism again in WCIP loops.
pub fn wcip_reflect(l: &LoopTable, t: &Autotopism) -> Result<Autotopism, PseudoError> {
    if !has_wcip(l) {
        return Err(PseudoError::NotWCIP);
    }
    if !t.holds_in(l) {
        return Err(PseudoError::InvalidTriple);
    }
    let j = l.inversion()?;
    Ok(Autotopism { alpha: t.gamma.conjugate(&j), beta: t.beta.clone(), gamma: t.alpha.conjugate(&j) })
}

/// `(α, β, γ) ↦ (γ, JβJ, α)`, an autotopism again in RIP loops.
pub fn rip_reflect(l: &LoopTable, t: &Autotopism) -> Result<Autotopism, PseudoError> {
    if !has_rip(l) {
        return Err(PseudoError::NotRIP);
    }
    if !t.holds_in(l) {
        return Err(PseudoError::InvalidTriple);
    }
    let j = l.inversion()?;
    Ok(Autotopism { alpha: t.gamma.clone(), beta: t.beta.conjugate(&j), gamma: t.alpha.clone() })
}

fn expect_kind(p: &PseudoPair, kind: NucleusKind) -> Result<(), PseudoError> {
    if p.kind != kind {
        return Err(PseudoError::WrongKind { expected: kind, got: p.kind });
    }
    Ok(())
}

/// In a WCIP loop, `(middle, σ, c) ↦ (right, JσJ, c')`.
pub fn middle_to_right(l: &LoopTable, p: &PseudoPair) -> Result<PseudoPair, PseudoError> {
    expect_kind(p, NucleusKind::Middle)?;
    conjugate_pair(l, p, NucleusKind::Right)
}

/// Inverse of [`middle_to_right`], given by the same formula.
pub fn right_to_middle(l: &LoopTable, p: &PseudoPair) -> Result<PseudoPair, PseudoError> {
    expect_kind(p, NucleusKind::Right)?;
    conjugate_pair(l, p, NucleusKind::Middle)
}

fn conjugate_pair(l: &LoopTable, p: &PseudoPair, to: NucleusKind) -> Result<PseudoPair, PseudoError> {
    if !has_wcip(l) {
        return Err(PseudoError::NotWCIP);
    }
    if !p.is_valid(l) {
        return Err(PseudoError::InvalidPair(p.to_string()));
    }
    let j = l.inversion()?;
    Ok(PseudoPair { kind: to, sigma: p.sigma.conjugate(&j), companion: l.inverse(p.companion)? })
}

/// In an RIP loop a middle pair `(σ, c)` is also a right pair `(σ, c)`.
pub fn rip_middle_to_right(l: &LoopTable, p: &PseudoPair) -> Result<PseudoPair, PseudoError> {
    expect_kind(p, NucleusKind::Middle)?;
    if !has_rip(l) {
        return Err(PseudoError::NotRIP);
    }
    if !p.is_valid(l) {
        return Err(PseudoError::InvalidPair(p.to_string()));
    }
    Ok(PseudoPair { kind: NucleusKind::Right, sigma: p.sigma.clone(), companion: p.companion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{all_loops, cyclic, direct_product};
    use crate::nuclei::nucleus;

    fn perm(v: &[Elem]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn autotopism_basics_in_z5() {
        let l = cyclic(5);
        let id = Permutation::identity(5);
        let r1 = l.right_translation(1);
        assert!(is_autotopism(&l, &id, &id, &id));
        assert!(is_autotopism(&l, &r1, &id, &r1));
        assert!(!is_autotopism(&l, &r1, &r1, &r1));
    }

    #[test]
    fn compose_and_invert() {
        let l = cyclic(5);
        let t =
            Autotopism { alpha: l.right_translation(1), beta: Permutation::identity(5), gamma: l.right_translation(1) };
        assert!(t.compose(&t.invert()).is_identity());
        assert_eq!(Autotopism::identity(5).invert(), Autotopism::identity(5));
    }

    #[test]
    fn identity_with_unit_companion_is_pseudo_everywhere() {
        for l in all_loops(5).unwrap() {
            let id = Permutation::identity(5);
            for kind in NucleusKind::ALL {
                assert!(is_pseudo(&l, kind, &id, 0));
            }
        }
    }

    #[test]
    fn unit_companion_means_automorphism() {
        for l in all_loops(4).unwrap().chain(all_loops(5).unwrap().take(20)) {
            let autos = automorphisms(&l);
            for kind in NucleusKind::ALL {
                let with_unit: Vec<Permutation> =
                    enumerate_pseudo(&l, kind).into_iter().filter(|p| p.companion == 0).map(|p| p.sigma).collect();
                assert_eq!(with_unit, autos);
            }
        }
    }

    #[test]
    fn z5_counts() {
        let l = cyclic(5);
        assert!(is_pseudo(&l, NucleusKind::Right, &Permutation::identity(5), 3));
        let autos = automorphisms(&l);
        assert_eq!(autos.len(), 4);
        for kind in NucleusKind::ALL {
            let pairs = enumerate_pseudo(&l, kind);
            assert_eq!(pairs.len(), 20, "{kind}");
            for p in &pairs {
                assert!(autos.contains(&p.sigma));
            }
        }
        for s in &autos {
            assert_eq!(companions(&l, NucleusKind::Right, s), vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn left_identity_pair_gives_translation_triple() {
        let l = cyclic(4);
        let p = PseudoPair { kind: NucleusKind::Left, sigma: Permutation::identity(4), companion: 3 };
        let t = as_autotopism(&l, &p).unwrap();
        assert_eq!(t.alpha, l.left_translation(3));
        assert!(t.beta.is_identity());
        assert_eq!(t.gamma, l.left_translation(3));

        let p = PseudoPair { kind: NucleusKind::Right, sigma: Permutation::identity(4), companion: 0 };
        assert!(as_autotopism(&l, &p).unwrap().is_identity());
    }

    #[test]
    fn invalid_pair_is_rejected() {
        let l = all_loops(5).unwrap().nth(10).unwrap();
        let nuc = nucleus(&l, NucleusKind::Left);
        let outside = (0..5).find(|c| !nuc.contains(c)).unwrap();
        let p = PseudoPair { kind: NucleusKind::Left, sigma: Permutation::identity(5), companion: outside };
        assert!(matches!(as_autotopism(&l, &p), Err(PseudoError::InvalidPair(_))));
    }

    #[test]
    fn automorphisms_of_klein() {
        let k = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(automorphisms(&k).len(), 6);
        assert_eq!(automorphisms(&cyclic(4)), vec![perm(&[0, 1, 2, 3]), perm(&[0, 3, 2, 1])]);
    }

    #[test]
    fn autotopism_count_of_z5() {
        // |Atp(G)| = |G|^2 |Aut(G)| for a group.
        let atp = autotopisms(&cyclic(5));
        assert_eq!(atp.len(), 100);
        assert!(atp.iter().all(|t| t.holds_in(&cyclic(5))));
    }

    #[test]
    fn reflections_need_their_property() {
        let l = all_loops(5).unwrap().find(|l| !has_wcip(l) && !has_rip(l)).unwrap();
        let id = Autotopism::identity(5);
        assert_eq!(wcip_reflect(&l, &id), Err(PseudoError::NotWCIP));
        assert_eq!(rip_reflect(&l, &id), Err(PseudoError::NotRIP));
        let z5 = cyclic(5);
        assert_eq!(wcip_reflect(&z5, &id).unwrap(), id);
        assert_eq!(rip_reflect(&z5, &id).unwrap(), id);
        let bad = Autotopism {
            alpha: z5.right_translation(1),
            beta: z5.right_translation(1),
            gamma: z5.right_translation(1),
        };
        assert_eq!(wcip_reflect(&z5, &bad), Err(PseudoError::InvalidTriple));
    }

    #[test]
    fn middle_right_conversion_on_z5() {
        let l = cyclic(5);
        let middle = enumerate_pseudo(&l, NucleusKind::Middle);
        let mut converted: Vec<PseudoPair> = middle.iter().map(|p| middle_to_right(&l, p).unwrap()).collect();
        converted.sort();
        assert_eq!(converted, enumerate_pseudo(&l, NucleusKind::Right));
        let p = PseudoPair { kind: NucleusKind::Middle, sigma: Permutation::identity(5), companion: 2 };
        let r = middle_to_right(&l, &p).unwrap();
        assert_eq!((r.companion, r.sigma.is_identity()), (3, true));
        assert_eq!(right_to_middle(&l, &r).unwrap(), p);
        assert!(matches!(middle_to_right(&l, &r), Err(PseudoError::WrongKind { .. })));
    }

    #[test]
    fn display_format() {
        let p = PseudoPair { kind: NucleusKind::Right, sigma: perm(&[0, 2, 1]), companion: 1 };
        assert_eq!(p.to_string(), "right 1 : [0 2 1]");
    }
}
