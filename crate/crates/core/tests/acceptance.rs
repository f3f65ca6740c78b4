//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use common::Naive;
use loopcalc::constructions::{
    abelian_groups_up_to, all_loops, commutative_ip_loops, commutative_isotope, load_catalog, wcip_loops, Isotope,
};
use loopcalc::identity::{builtin, holds_builtin};
use loopcalc::matrix_bruck::{check_identity_numeric, identity_inverse_residual, Tolerances, DEFAULT_SEED};
use loopcalc::nuclei::{nucleus, nucleus_via_pseudo, NucleusKind};
use loopcalc::pseudo::{
    autotopisms, enumerate_pseudo, has_rip, has_wcip, middle_to_right, right_to_middle, rip_reflect, wcip_reflect,
};
use loopcalc::theorems::{
    verify_commutative_ip_corollary, verify_companion_identity, verify_main_part1, verify_main_part2, verify_nm_eq_nr,
    VerificationReport,
};
use loopcalc::LoopTable;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Corpus {
    /// Every WCIP loop of order at most 6, tagged by order and index.
    wcip: Vec<(String, LoopTable)>,
    /// Every loop of order at most 5.
    small: Vec<LoopTable>,
}

fn build_corpus() -> Corpus {
    let wcip = (1..=6)
        .flat_map(|n| wcip_loops(n).unwrap().into_iter().enumerate().map(move |(i, l)| (format!("n{n}-{i}"), l)))
        .collect();
    let small = (1..=5).flat_map(|n| all_loops(n).unwrap()).collect();
    Corpus { wcip, small }
}

/// Runs a theorem check over the WCIP corpus and reports the first failure.
fn over_wcip(
    corpus: &Corpus,
    check: impl Fn(&str, &LoopTable) -> Result<VerificationReport, loopcalc::theorems::TheoremError>,
) -> Outcome {
    let mut checks = 0;
    for (id, l) in &corpus.wcip {
        let report = check(id, l).map_err(|e| format!("{id}: {e}"))?;
        if let Some(bad) = report.failures().next() {
            return Err(report.to_text().lines().find(|s| s.contains(&bad.name)).unwrap_or("").to_string());
        }
        checks += report.checks.len();
    }
    Ok(format!("{} WCIP loops, {checks} checks, 0 violations", corpus.wcip.len()))
}

fn criterion_1(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let out = over_wcip(c, verify_main_part1)?;
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{out} in {elapsed:.2?}"))
}

fn criterion_2(c: &Corpus) -> Outcome {
    over_wcip(c, verify_main_part2)
}

fn criterion_3(c: &Corpus) -> Outcome {
    let catalog =
        load_catalog(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog")).map_err(|e| e.to_string())?;
    let catalog: Vec<_> = catalog.into_iter().filter(|(_, l)| l.order() <= 10).take(100).collect();
    if catalog.len() < 100 {
        return Err(format!("only {} catalog loops of order <= 10", catalog.len()));
    }
    let all =
        c.small.iter().map(|l| ("exhaustive".to_string(), l)).chain(catalog.iter().map(|(id, l)| (id.clone(), l)));
    let mut count = 0;
    for (id, l) in all {
        for kind in NucleusKind::ALL {
            if nucleus(l, kind) != nucleus_via_pseudo(l, kind) {
                return Err(format!("{id}: {kind} nucleus mismatch"));
            }
        }
        count += 1;
    }
    Ok(format!("{count} loops ({} exhaustive + 100 catalog), 3 kinds each", c.small.len()))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        for l in all_loops(n).unwrap().filter(LoopTable::has_two_sided_inverses) {
            let wcip = holds_builtin(&l, "WCIP");
            let wcip2 = holds_builtin(&l, "WCIP2");
            let commutative = match commutative_isotope(&l).map_err(|e| e.to_string())? {
                iso @ Isotope::Loop(_) => iso.is_commutative(),
                Isotope::Quasigroup(_) => return Err(format!("isotope not a loop:\n{}", l.to_text())),
            };
            if wcip != wcip2 || wcip != commutative {
                return Err(format!("WCIP={wcip} WCIP2={wcip2} isotope-commutative={commutative} on\n{}", l.to_text()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} loops with two-sided inverses, 0 mismatches"))
}

fn criterion_5(c: &Corpus) -> Outcome {
    let (mut wcip_count, mut rip_count) = (0, 0);
    for l in &c.small {
        let (wcip, rip) = (has_wcip(l), has_rip(l));
        if !wcip && !rip {
            continue;
        }
        let atp = autotopisms(l);
        for t in &atp {
            if wcip {
                let r = wcip_reflect(l, t).map_err(|e| e.to_string())?;
                if !r.holds_in(l) || &wcip_reflect(l, &r).map_err(|e| e.to_string())? != t {
                    return Err(format!("wcip_reflect on {t:?}"));
                }
                wcip_count += 1;
            }
            if rip {
                let r = rip_reflect(l, t).map_err(|e| e.to_string())?;
                if !r.holds_in(l) || &rip_reflect(l, &r).map_err(|e| e.to_string())? != t {
                    return Err(format!("rip_reflect on {t:?}"));
                }
                rip_count += 1;
            }
        }
    }
    Ok(format!("{wcip_count} WCIP and {rip_count} RIP autotopism reflections, 0 violations"))
}

fn criterion_6(c: &Corpus) -> Outcome {
    let mut pairs = 0;
    for (id, l) in &c.wcip {
        let middle = enumerate_pseudo(l, NucleusKind::Middle);
        let right = enumerate_pseudo(l, NucleusKind::Right);
        if middle.len() != right.len() {
            return Err(format!("{id}: {} middle vs {} right pairs", middle.len(), right.len()));
        }
        let mut image = Vec::with_capacity(middle.len());
        for p in &middle {
            let q = middle_to_right(l, p).map_err(|e| format!("{id}: {e}"))?;
            if &right_to_middle(l, &q).map_err(|e| format!("{id}: {e}"))? != p {
                return Err(format!("{id}: round trip of {p}"));
            }
            image.push(q);
        }
        image.sort();
        if image != right {
            return Err(format!("{id}: image of middle pairs differs from right pairs"));
        }
        pairs += middle.len();
    }
    Ok(format!("{pairs} middle pairs mapped onto right pairs, round trips exact"))
}

fn criterion_7(c: &Corpus) -> Outcome {
    over_wcip(c, verify_nm_eq_nr)
}

fn criterion_8() -> Outcome {
    let mut corpus: Vec<(String, LoopTable)> = Vec::new();
    for n in 1..=8 {
        for (i, l) in commutative_ip_loops(n).map_err(|e| e.to_string())?.into_iter().enumerate() {
            corpus.push((format!("cip{n}-{i}"), l));
        }
    }
    let generated = corpus.len();
    corpus.extend(abelian_groups_up_to(12));
    let mut pairs = 0;
    for (id, l) in &corpus {
        let report = verify_commutative_ip_corollary(id, l).map_err(|e| format!("{id}: {e}"))?;
        if let Some(bad) = report.failures().next() {
            return Err(format!("{id}: {} failed", bad.name));
        }
        for kind in NucleusKind::ALL {
            for p in enumerate_pseudo(l, kind) {
                if !l.is_automorphism(&p.sigma) {
                    return Err(format!("{id}: {p} is not an automorphism"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{generated} generated + {} abelian groups, {pairs} pairs all automorphisms", corpus.len() - generated))
}

fn criterion_9(c: &Corpus) -> Outcome {
    let mut naive_time = Duration::ZERO;
    let mut pairs = 0;
    for l in &c.small {
        for kind in NucleusKind::ALL {
            let start = Instant::now();
            let expected = Naive::new(l).pseudo_pairs(kind);
            naive_time += start.elapsed();
            let got = enumerate_pseudo(l, kind);
            if got != expected {
                return Err(format!("{kind} pairs differ on\n{}", l.to_text()));
            }
            pairs += got.len();
        }
    }
    if naive_time > Duration::from_secs(300) {
        return Err(format!("naive side took {naive_time:?}"));
    }
    Ok(format!("{} loops, {pairs} pairs, naive side {naive_time:.2?}", c.small.len()))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let tol = Tolerances::default();
    let mut summary = Vec::new();
    for name in ["BOL", "AIP", "RIP", "WCIP"] {
        let id = builtin(name).map_err(|e| e.to_string())?;
        for r in check_identity_numeric(&id, 500, &[2, 3], &tol, DEFAULT_SEED).map_err(|e| e.to_string())? {
            if !(r.max_residual < 1e-8) {
                return Err(format!("{name} dim {} residual {:e}", r.dim, r.max_residual));
            }
            summary.push(r.max_residual);
        }
    }
    let assoc = builtin("ASSOC").map_err(|e| e.to_string())?;
    for r in check_identity_numeric(&assoc, 500, &[2, 3], &tol, DEFAULT_SEED).map_err(|e| e.to_string())? {
        if !(r.max_residual > 1e-3) {
            return Err(format!("ASSOC dim {} residual only {:e}", r.dim, r.max_residual));
        }
    }
    for dim in [2, 3] {
        let r = identity_inverse_residual(dim, 500, &tol, DEFAULT_SEED).map_err(|e| e.to_string())?;
        if !(r < 1e-8) {
            return Err(format!("identity/inverse residual {r:e} at dim {dim}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    let worst = summary.iter().copied().fold(0.0, f64::max);
    Ok(format!("worst Bruck residual {worst:.1e}, ASSOC > 1e-3, in {elapsed:.2?}"))
}

fn criterion_11(c: &Corpus) -> Outcome {
    over_wcip(c, verify_companion_identity)
}

fn main() {
    let corpus = build_corpus();
    let criteria: Vec<Criterion> = vec![
        ("right companions lie in the left nucleus", Box::new(|| criterion_1(&corpus))),
        ("left companions: inverse is a companion, square is left nuclear", Box::new(|| criterion_2(&corpus))),
        ("nuclei agree with pseudoautomorphism characterization", Box::new(|| criterion_3(&corpus))),
        ("WCIP <=> WCIP2 <=> commutative isotope", Box::new(criterion_4)),
        ("autotopism reflections are involutions", Box::new(|| criterion_5(&corpus))),
        ("middle and right pairs biject", Box::new(|| criterion_6(&corpus))),
        ("middle nucleus equals right nucleus", Box::new(|| criterion_7(&corpus))),
        ("commutative IP pseudoautomorphisms are automorphisms", Box::new(criterion_8)),
        ("enumeration matches naive filter", Box::new(|| criterion_9(&corpus))),
        ("matrix Bruck loop identities", Box::new(criterion_10)),
        ("companion identity y\\c = c*y'", Box::new(|| criterion_11(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
