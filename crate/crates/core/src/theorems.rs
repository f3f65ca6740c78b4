//! Executable checks of the companion theorems for WCIP loops.
//!
//! Each `verify_*` function enumerates the pseudoautomorphisms it needs from
//! scratch and returns a [`VerificationReport`]. A violated precondition is an
//! error from the individual function; [`verify`] turns it into a report
//! entry so that a corpus run never drops a loop silently.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::identity::holds_builtin;
use crate::loop_core::{Elem, LoopTable, Permutation};
use crate::nuclei::{nucleus, NucleusKind};
use crate::pseudo::{companions, enumerate_pseudo, has_wcip, PseudoPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("loop does not have the weak commutative inverse property")]
    NotWCIP,
    #[error("left nucleus is not trivial: {0:?}")]
    NucleusNotTrivial(Vec<Elem>),
    #[error("loop is not a commutative inverse property loop")]
    NotCommutativeIP,
}

/// The data behind a failed check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Permutation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub companion: Option<Elem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Elem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Elem>,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub note: String,
}

impl Witness {
    fn pair(p: &PseudoPair) -> Self {
        Witness { sigma: Some(p.sigma.clone()), companion: Some(p.companion), ..Default::default() }
    }

    fn with_xy(mut self, (x, y): (Elem, Elem)) -> Self {
        self.x = Some(x);
        self.y = Some(y);
        self
    }

    fn note(note: impl Into<String>) -> Self {
        Witness { note: note.into(), ..Default::default() }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(s) = &self.sigma {
            parts.push(format!("sigma={s}"));
        }
        if let Some(c) = self.companion {
            parts.push(format!("c={c}"));
        }
        if let Some(x) = self.x {
            parts.push(format!("x={x}"));
        }
        if let Some(y) = self.y {
            parts.push(format!("y={y}"));
        }
        if !self.note.is_empty() {
            parts.push(self.note.clone());
        }
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    Fail {
        witness: Witness,
    },
    /// The loop is outside the statement's hypotheses.
    Precondition {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

impl Check {
    fn new(name: &str, failure: Option<Witness>, detail: String) -> Self {
        let outcome = match failure {
            None => Outcome::Pass,
            Some(witness) => Outcome::Fail { witness },
        };
        Check { name: name.to_string(), outcome, detail }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub loop_id: String,
    pub checks: Vec<Check>,
}

/// One line of machine-readable output.
#[derive(Serialize)]
struct Record<'a> {
    #[serde(rename = "loop")]
    loop_id: &'a str,
    #[serde(flatten)]
    check: &'a Check,
}

impl VerificationReport {
    fn new(loop_id: &str) -> Self {
        VerificationReport { loop_id: loop_id.to_string(), checks: Vec::new() }
    }

    /// True iff no check failed. Unmet preconditions do not count as failures.
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }

    fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// `loopid check PASS|FAIL [witness]`, one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&self.loop_id);
            out.push(' ');
            out.push_str(&c.name);
            match &c.outcome {
                Outcome::Pass => out.push_str(" PASS"),
                Outcome::Fail { witness } => {
                    out.push_str(" FAIL ");
                    out.push_str(&witness.to_string());
                }
                Outcome::Precondition { reason } => {
                    out.push_str(" PRECONDITION ");
                    out.push_str(reason);
                }
            }
            out.push('\n');
        }
        out
    }

    /// JSON lines, one record per check.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            let rec = Record { loop_id: &self.loop_id, check };
            out.push_str(&serde_json::to_string(&rec).expect("report records serialize"));
            out.push('\n');
        }
        out
    }
}

fn require_wcip(l: &LoopTable) -> Result<(), TheoremError> {
    if has_wcip(l) {
        Ok(())
    } else {
        Err(TheoremError::NotWCIP)
    }
}

/// First `(x, y)` with `cx·y != c·xy`, if any.
fn left_nuclear_violation(l: &LoopTable, c: Elem) -> Option<(Elem, Elem)> {
    let n = l.order();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| l.mul(l.mul(c, x), y) != l.mul(c, l.mul(x, y)))
}

fn automorphism_violation(l: &LoopTable, sigma: &Permutation) -> Option<(Elem, Elem)> {
    let n = l.order();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| sigma.apply(l.mul(x, y)) != l.mul(sigma.apply(x), sigma.apply(y)))
}

/// Every right pseudoautomorphism companion lies in the left nucleus.
pub fn verify_main_part1(loop_id: &str, l: &LoopTable) -> Result<VerificationReport, TheoremError> {
    require_wcip(l)?;
    let pairs = enumerate_pseudo(l, NucleusKind::Right);
    let failure =
        pairs.iter().find_map(|p| left_nuclear_violation(l, p.companion).map(|xy| Witness::pair(p).with_xy(xy)));
    let mut r = VerificationReport::new(loop_id);
    r.checks.push(Check::new("main-1", failure, format!("{} right pairs", pairs.len())));
    Ok(r)
}

/// For every left pair `(σ, c)`: `c'` is a companion of `σ` and `c²` lies in
/// the left nucleus.
pub fn verify_main_part2(loop_id: &str, l: &LoopTable) -> Result<VerificationReport, TheoremError> {
    require_wcip(l)?;
    let pairs = enumerate_pseudo(l, NucleusKind::Left);
    let mut inverse_failure = None;
    let mut square_failure = None;
    for p in &pairs {
        let c_inv = l.inverse(p.companion).expect("WCIP loops have two-sided inverses");
        if inverse_failure.is_none() && !companions(l, NucleusKind::Left, &p.sigma).contains(&c_inv) {
            let mut w = Witness::pair(p);
            w.note = format!("inverse {c_inv} is not a companion");
            inverse_failure = Some(w);
        }
        let square = l.mul(p.companion, p.companion);
        if square_failure.is_none() {
            if let Some(xy) = left_nuclear_violation(l, square) {
                let mut w = Witness::pair(p).with_xy(xy);
                w.note = format!("square {square} is not left nuclear");
                square_failure = Some(w);
            }
        }
    }
    let detail = format!("{} left pairs", pairs.len());
    let mut r = VerificationReport::new(loop_id);
    r.checks.push(Check::new("main-2-inverse-companion", inverse_failure, detail.clone()));
    r.checks.push(Check::new("main-2-square-nuclear", square_failure, detail));
    Ok(r)
}

/// `y \ c = c·y'` for every right-pseudo companion `c` and every `y`.
pub fn verify_companion_identity(loop_id: &str, l: &LoopTable) -> Result<VerificationReport, TheoremError> {
    require_wcip(l)?;
    let mut cs: Vec<Elem> = enumerate_pseudo(l, NucleusKind::Right).iter().map(|p| p.companion).collect();
    cs.dedup();
    let failure = cs.iter().find_map(|&c| {
        (0..l.order()).find(|&y| l.ldiv(y, c) != l.mul(c, l.inverse(y).expect("two-sided"))).map(|y| Witness {
            companion: Some(c),
            y: Some(y),
            ..Default::default()
        })
    });
    let mut r = VerificationReport::new(loop_id);
    r.checks.push(Check::new("companion-identity", failure, format!("{} companions", cs.len())));
    Ok(r)
}

pub fn squaring_is_permutation(l: &LoopTable) -> bool {
    let mut seen = vec![false; l.order()];
    (0..l.order()).all(|x| !std::mem::replace(&mut seen[l.mul(x, x)], true))
}

/// With trivial left nucleus, right pseudoautomorphisms are automorphisms,
/// and so are left ones once squaring is a bijection.
pub fn verify_trivial_nucleus_corollary(loop_id: &str, l: &LoopTable) -> Result<VerificationReport, TheoremError> {
    require_wcip(l)?;
    let left = nucleus(l, NucleusKind::Left);
    if left != [0] {
        return Err(TheoremError::NucleusNotTrivial(left));
    }
    let all_automorphic = |kind: NucleusKind| {
        let pairs = enumerate_pseudo(l, kind);
        let failure =
            pairs.iter().find_map(|p| automorphism_violation(l, &p.sigma).map(|xy| Witness::pair(p).with_xy(xy)));
        (failure, format!("{} {kind} pairs", pairs.len()))
    };
    let mut r = VerificationReport::new(loop_id);
    let (failure, detail) = all_automorphic(NucleusKind::Right);
    r.checks.push(Check::new("trivial-nucleus-right", failure, detail));
    if squaring_is_permutation(l) {
        let (failure, detail) = all_automorphic(NucleusKind::Left);
        r.checks.push(Check::new("trivial-nucleus-left", failure, detail));
    } else {
        r.checks.push(Check::new("trivial-nucleus-left", None, "not applicable: squaring is not a permutation".into()));
    }
    Ok(r)
}

pub fn is_commutative_ip(l: &LoopTable) -> bool {
    l.has_two_sided_inverses() && ["COMM", "LIP", "RIP"].iter().all(|name| holds_builtin(l, name))
}

/// In a commutative IP loop the three nuclei coincide and every
/// pseudoautomorphism of every kind is an automorphism.
pub fn verify_commutative_ip_corollary(loop_id: &str, l: &LoopTable) -> Result<VerificationReport, TheoremError> {
    if !is_commutative_ip(l) {
        return Err(TheoremError::NotCommutativeIP);
    }
    let mut r = VerificationReport::new(loop_id);
    let [left, middle, right] = NucleusKind::ALL.map(|k| nucleus(l, k));
    let coincide =
        (left != middle || middle != right).then(|| Witness::note(format!("nuclei {left:?} {middle:?} {right:?}")));
    r.checks.push(Check::new("cip-nuclei-coincide", coincide, format!("nucleus {left:?}")));
    for kind in NucleusKind::ALL {
        let pairs = enumerate_pseudo(l, kind);
        let failure =
            pairs.iter().find_map(|p| automorphism_violation(l, &p.sigma).map(|xy| Witness::pair(p).with_xy(xy)));
        r.checks.push(Check::new(&format!("cip-{kind}-automorphic"), failure, format!("{} {kind} pairs", pairs.len())));
    }
    Ok(r)
}

/// Middle and right nuclei agree.
pub fn verify_nm_eq_nr(loop_id: &str, l: &LoopTable) -> Result<VerificationReport, TheoremError> {
    require_wcip(l)?;
    let middle = nucleus(l, NucleusKind::Middle);
    let right = nucleus(l, NucleusKind::Right);
    let failure = (middle != right).then(|| Witness::note(format!("middle {middle:?} right {right:?}")));
    let mut r = VerificationReport::new(loop_id);
    r.checks.push(Check::new("middle-eq-right-nucleus", failure, format!("{middle:?}")));
    Ok(r)
}

/// Groups of checks selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Both parts of the main theorem plus the companion identity.
    Main,
    NmEqNr,
    TrivialNucleus,
    CommutativeIp,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::Main, Theorem::NmEqNr, Theorem::TrivialNucleus, Theorem::CommutativeIp];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Main => "main",
            Theorem::NmEqNr => "nm-nr",
            Theorem::TrivialNucleus => "trivial-nucleus",
            Theorem::CommutativeIp => "cip",
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown theorem {s:?} (expected main, nm-nr, trivial-nucleus or cip)"))
    }
}

/// Runs the selected theorem checks on one loop. Precondition failures become
/// `PRECONDITION` entries.
pub fn verify(loop_id: &str, l: &LoopTable, theorems: &[Theorem]) -> VerificationReport {
    let mut report = VerificationReport::new(loop_id);
    let mut absorb = |name: &str, res: Result<VerificationReport, TheoremError>| match res {
        Ok(r) => report.extend(r),
        Err(e) => report.checks.push(Check {
            name: name.to_string(),
            outcome: Outcome::Precondition { reason: e.to_string() },
            detail: String::new(),
        }),
    };
    for t in theorems {
        match t {
            Theorem::Main => {
                absorb("main-1", verify_main_part1(loop_id, l));
                absorb("main-2", verify_main_part2(loop_id, l));
                absorb("companion-identity", verify_companion_identity(loop_id, l));
            }
            Theorem::NmEqNr => absorb("middle-eq-right-nucleus", verify_nm_eq_nr(loop_id, l)),
            Theorem::TrivialNucleus => absorb("trivial-nucleus", verify_trivial_nucleus_corollary(loop_id, l)),
            Theorem::CommutativeIp => absorb("cip", verify_commutative_ip_corollary(loop_id, l)),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{all_loops, cyclic, direct_product};

    #[test]
    fn z5_passes_main() {
        let l = cyclic(5);
        assert!(verify_main_part1("z5", &l).unwrap().passed());
        assert!(verify_main_part2("z5", &l).unwrap().passed());
        assert!(verify_companion_identity("z5", &l).unwrap().passed());
        assert!(verify_nm_eq_nr("z5", &l).unwrap().passed());
    }

    #[test]
    fn klein_passes_part2() {
        let k = direct_product(&cyclic(2), &cyclic(2));
        assert!(verify_main_part2("v4", &k).unwrap().passed());
    }

    #[test]
    fn non_wcip_is_a_precondition_error() {
        let l = all_loops(5).unwrap().find(|l| !has_wcip(l)).unwrap();
        assert_eq!(verify_main_part1("x", &l), Err(TheoremError::NotWCIP));
        assert_eq!(verify_nm_eq_nr("x", &l), Err(TheoremError::NotWCIP));
        let r = verify("x", &l, &[Theorem::Main]);
        assert!(r.passed());
        assert_eq!(r.failures().count(), 0);
        assert!(r.checks.iter().all(|c| matches!(c.outcome, Outcome::Precondition { .. })));
    }

    #[test]
    fn squaring() {
        assert!(squaring_is_permutation(&cyclic(5)));
        assert!(!squaring_is_permutation(&cyclic(2)));
        assert!(!squaring_is_permutation(&direct_product(&cyclic(2), &cyclic(2))));
    }

    #[test]
    fn group_nucleus_is_not_trivial() {
        assert_eq!(
            verify_trivial_nucleus_corollary("z5", &cyclic(5)),
            Err(TheoremError::NucleusNotTrivial(vec![0, 1, 2, 3, 4]))
        );
        // Z1 has trivial nucleus and only the identity map.
        assert!(verify_trivial_nucleus_corollary("z1", &cyclic(1)).unwrap().passed());
    }

    #[test]
    fn cip_corollary_contract() {
        assert!(verify_commutative_ip_corollary("z6", &cyclic(6)).unwrap().passed());
        let noncomm = all_loops(5).unwrap().find(|l| !holds_builtin(l, "COMM")).unwrap();
        assert_eq!(verify_commutative_ip_corollary("q", &noncomm), Err(TheoremError::NotCommutativeIP));
    }

    #[test]
    fn serialization() {
        let mut r = VerificationReport::new("demo");
        r.checks.push(Check::new("ok", None, String::new()));
        r.checks.push(Check::new(
            "bad",
            Some(Witness { companion: Some(2), x: Some(1), y: Some(3), ..Default::default() }),
            "3 pairs".into(),
        ));
        assert_eq!(r.to_text(), "demo ok PASS\ndemo bad FAIL c=2 x=1 y=3\n");
        assert_eq!(
            r.to_records(),
            "{\"loop\":\"demo\",\"name\":\"ok\",\"status\":\"PASS\"}\n\
             {\"loop\":\"demo\",\"name\":\"bad\",\"status\":\"FAIL\",\"witness\":{\"companion\":2,\"x\":1,\"y\":3},\"detail\":\"3 pairs\"}\n"
        );
    }

    #[test]
    fn reports_are_reproducible() {
        let l = all_loops(6).unwrap().find(has_wcip).unwrap();
        let all = Theorem::ALL;
        assert_eq!(verify("a", &l, &all), verify("a", &l, &all));
    }
}
