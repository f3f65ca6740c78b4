//! Regenerates the sample catalog: `cargo run --release --example build_catalog -- catalog`.

use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use loopcalc::constructions::{
    abelian_groups_up_to, all_loops, commutative_ip_loops, cyclic, direct_product, principal_isotope, random_loop,
    wcip_loops,
};
use loopcalc::identity::holds_builtin;
use loopcalc::LoopTable;

/// Cayley table of a finite set closed under `op`, with `elems[0]` the identity.
fn table_of<T: PartialEq>(elems: &[T], op: impl Fn(&T, &T) -> T) -> LoopTable {
    let index = |t: &T| elems.iter().position(|e| e == t).expect("closed under op");
    let rows: Vec<Vec<usize>> = elems.iter().map(|a| elems.iter().map(|b| index(&op(a, b))).collect()).collect();
    LoopTable::validate(&rows).expect("group table")
}

/// The dihedral group of order `2n` as pairs `(r, s)` meaning `ρ^r σ^s`.
fn dihedral(n: usize) -> LoopTable {
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|s| (0..n).map(move |r| (r, s))).collect();
    table_of(&elems, |&(r1, s1), &(r2, s2)| {
        let r = if s1 == 0 { r1 + r2 } else { r1 + n - r2 };
        (r % n, s1 ^ s2)
    })
}

/// The quaternion group as `(sign, unit)` with units 1, i, j, k.
fn quaternion() -> LoopTable {
    const UNIT: [[(i8, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let elems: Vec<(i8, usize)> = [1i8, -1].iter().flat_map(|&s| (0..4).map(move |u| (s, u))).collect();
    table_of(&elems, |&(s1, u1), &(s2, u2)| {
        let (s, u) = UNIT[u1][u2];
        (s1 * s2 * s, u)
    })
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = std::env::args().nth(1).unwrap_or_else(|| "catalog".into());
    let root = Path::new(&root);
    let put = |sub: &str, name: &str, l: &LoopTable| -> Result<(), Box<dyn std::error::Error>> {
        let dir = root.join(sub);
        fs::create_dir_all(&dir)?;
        l.save(&dir.join(format!("{name}.tbl")))?;
        Ok(())
    };

    for (name, g) in abelian_groups_up_to(10) {
        put("groups", &name.to_lowercase(), &g)?;
    }
    put("groups", "s3", &dihedral(3))?;
    put("groups", "d8", &dihedral(4))?;
    put("groups", "d10", &dihedral(5))?;
    put("groups", "q8", &quaternion())?;

    let order5: Vec<LoopTable> = all_loops(5)?.filter(|l| !holds_builtin(l, "ASSOC")).collect();
    for (i, l) in order5.iter().step_by(5).take(10).enumerate() {
        put("order5", &format!("nonassoc-{i:02}"), l)?;
    }
    let wcip6: Vec<LoopTable> = wcip_loops(6)?.into_iter().filter(|l| !holds_builtin(l, "ASSOC")).collect();
    for (i, l) in wcip6.iter().step_by(20).take(20).enumerate() {
        put("wcip6", &format!("wcip6-{i:02}"), l)?;
    }
    for n in [7, 8] {
        for (i, l) in commutative_ip_loops(n)?.iter().step_by(60).take(5).enumerate() {
            put("cip", &format!("cip{n}-{i}"), l)?;
        }
    }
    for (i, l) in order5.iter().take(3).enumerate() {
        put("products", &format!("l5-{i}-x-z2"), &direct_product(l, &cyclic(2)))?;
    }
    put("products", "s3-x-z1", &direct_product(&dihedral(3), &cyclic(1)))?;
    for (i, l) in order5.iter().skip(1).step_by(7).take(10).enumerate() {
        let (a, b) = (1 + i % 4, 1 + (i / 2) % 4);
        put("isotopes", &format!("l5-{i:02}-a{a}-b{b}"), &principal_isotope(l, a, b))?;
    }
    for (i, l) in wcip6.iter().take(5).enumerate() {
        put("isotopes", &format!("wcip6-{i}-a2-b3"), &principal_isotope(l, 2, 3))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_615);
    for n in 6..=10 {
        for i in 0..8 {
            put("random", &format!("r{n}-{i}"), &random_loop(n, &mut rng))?;
        }
    }
    Ok(())
}
