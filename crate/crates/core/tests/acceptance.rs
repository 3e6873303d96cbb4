//! Acceptance suite: ten criteria, one PASS/FAIL line each. Runs without the
//! libtest harness so that the lines come out in order; exits non-zero on any
//! failure.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use pqbrace::brace::{check_brace_axiom, BraceLabel};
use pqbrace::group::{Elem, FiniteGroup, GroupRef};
use pqbrace::lambda_group::{
    build_lambda_group, canonical_decomposition, iso_classes, verify_op_isomorphism, LambdaGroup,
};
use pqbrace::map::GroupMap;
use pqbrace::rep::{
    brace_to_group_rep, character_of, check_brace_rep, construction_report, dihedral_rep_of_c,
    inner_product, mackey_irreps, profile_for_brace, profile_routes, CMatrix,
};
use pqbrace::{catalog, Limits, SkewBrace, Tolerances, Variant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, bound: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < bound, || {
        format!("{what} took {t:.2?}, bound {bound:.0?}")
    })
}

fn cat(p: u32, q: u32) -> Vec<SkewBrace> {
    catalog(p, q, &Limits::default()).expect("catalog")
}

/// Closure of a set under a binary operation, by breadth-first products.
fn closure(gens: &[Elem], id: Elem, mul: impl Fn(Elem, Elem) -> Elem) -> BTreeSet<Elem> {
    let mut set: BTreeSet<Elem> = [id].into();
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = mul(x, g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn criterion_1() -> Outcome {
    for (p, q) in [(5, 3), (7, 5), (3, 2), (5, 2), (7, 3), (13, 3), (11, 5)] {
        let start = Instant::now();
        let n = cat(p, q).len() as u32;
        let expected = if p % q == 1 { 2 * q + 2 } else { 1 };
        ensure(n == expected, || {
            format!("({p},{q}): {n} braces, expected {expected}")
        })?;
        within(start, Duration::from_secs(1), &format!("catalog({p},{q})"))?;
    }
    Ok("1,1,6,6,8,8,12".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let forced = Limits {
        force_exhaustive_brace: true,
        ..Limits::default()
    };
    let mut checked = 0;
    for (p, q) in [(3, 2), (5, 2), (7, 3)] {
        for b in cat(p, q) {
            let (add, circ) = (b.add(), b.circ());
            check_brace_axiom(add, circ, &forced).map_err(|e| e.to_string())?;
            // independent triple loop
            let els: Vec<Elem> = add.elements().collect();
            for &a in &els {
                for &x in &els {
                    for &y in &els {
                        let lhs = circ.mul(a, add.mul(x, y));
                        let rhs = add.mul(add.mul(circ.mul(a, x), add.inv(a)), circ.mul(a, y));
                        ensure(lhs == rhs, || format!("{} at ({p},{q}) fails", b.label()))?;
                    }
                }
            }
            checked += 1;
        }
    }
    // corrupt one entry of C's multiplicative table
    let c = cat(3, 2)
        .into_iter()
        .find(|b| b.label() == BraceLabel::C)
        .unwrap();
    let mut table = c.circ().cayley_table();
    let n = c.order();
    table[2 * n + 3] = (table[2 * n + 3] + 1) % n as u32;
    let bad = FiniteGroup::from_table("mutant", c.circ().moduli().to_vec(), table);
    ensure(check_brace_axiom(c.add(), &bad, &forced).is_err(), || {
        "corrupted table passed the axiom".into()
    })?;
    within(start, Duration::from_secs(10), "axiom checks")?;
    Ok(format!("{checked} braces exhaustive, mutation rejected"))
}

fn criterion_3() -> Outcome {
    for (p, q) in [(3, 2), (5, 2), (7, 3), (13, 3)] {
        for b in cat(p, q) {
            let add = b.add();
            let lam = |x: Elem, y: Elem| add.mul(add.inv(x), b.circ().mul(x, y));
            let mut gens = Vec::new();
            for a in add.elements() {
                for x in add.elements() {
                    gens.push(add.mul(add.mul(a, x), add.mul(add.inv(a), add.inv(x))));
                    gens.push(add.mul(a, lam(x, add.inv(a))));
                }
            }
            gens.sort();
            gens.dedup();
            let oracle = closure(&gens, add.identity(), |x, y| add.mul(x, y)).len();
            let got = b.brace_commutator().members.len();
            // B and the trivial brace on Z_pq are the trivial braces with abelian
            // additive group; D is trivial too, but its additive commutators give Z_p.
            let expected = match b.label() {
                BraceLabel::B | BraceLabel::Trivial => 1,
                _ => p as usize,
            };
            ensure(got == oracle && got == expected, || {
                format!(
                    "{} at ({p},{q}): |A'| = {got}, oracle {oracle}, expected {expected}",
                    b.label()
                )
            })?;
        }
    }
    Ok("|A'| = p for non-trivial braces and D, 1 for B".into())
}

fn lambda_commutator_oracle(lg: &LambdaGroup) -> BTreeSet<Elem> {
    let g = lg.group();
    let els: Vec<Elem> = g.elements().collect();
    let mut comms = BTreeSet::new();
    for &a in &els {
        for &b in &els {
            comms.insert(g.commutator(a, b));
        }
    }
    let gens: Vec<Elem> = comms.into_iter().collect();
    closure(&gens, g.identity(), |x, y| g.mul(x, y))
}

fn criterion_4() -> Outcome {
    let limits = Limits::default();
    let mut n = 0;
    for (p, q) in [(3, 2), (7, 3)] {
        for b in cat(p, q) {
            let label = b.label();
            let (standard, opposite, iso) =
                verify_op_isomorphism(&b, &limits).map_err(|e| e.to_string())?;
            // the map (x, y) ↦ (x·y, y), checked on every pair
            let add = b.add().clone();
            let f = GroupMap::from_fn(opposite.group(), standard.group(), |e| {
                let (x, y) = e.split(2);
                Elem::concat(add.mul(x, y), y)
            });
            ensure(f.is_bijective(), || {
                format!("{label}: (xy, y) not bijective")
            })?;
            let (src, tgt) = (opposite.group(), standard.group());
            for a in src.elements() {
                for c in src.elements() {
                    ensure(
                        f.apply(src.mul(a, c)) == tgt.mul(f.apply(a), f.apply(c)),
                        || format!("{label} at ({p},{q}): (xy, y) is not multiplicative"),
                    )?;
                }
            }
            ensure(iso.to_standard.is_isomorphism(&limits), || {
                format!("{label}: library map")
            })?;
            // Λ'_A against A' × 1 and 1 × (A,∘)'
            let one = add.identity();
            let mut gens: Vec<Elem> = b
                .brace_commutator()
                .members
                .iter()
                .map(|&a| Elem::concat(a, one))
                .collect();
            gens.extend(
                b.circ()
                    .commutator_subgroup()
                    .iter()
                    .map(|&c| Elem::concat(one, c)),
            );
            let g = standard.group();
            let generated = closure(&gens, g.identity(), |x, y| g.mul(x, y));
            ensure(generated == lambda_commutator_oracle(&standard), || {
                format!("{label} at ({p},{q}): Λ' mismatch")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} braces: Λ_op → Λ via (xy, y) and Λ' structure"))
}

fn closed_form(p: u64, q: u64, label: BraceLabel) -> BTreeMap<u64, u64> {
    use BraceLabel::*;
    let m: Vec<(u64, u64)> = match label {
        Trivial | B => vec![(1, p * p * q * q)],
        C => vec![(1, q * q), (q, p * p - 1)],
        E => vec![(1, p * q * q), (q, p * p - p)],
        F(k) if k as u64 == q => vec![(1, p * q * q), (q, p * p - p)],
        D | F(_) | G(_) => vec![
            (1, q * q),
            (q, 2 * (p - 1)),
            (q * q, (p - 1).pow(2) / (q * q)),
        ],
    };
    m.into_iter().filter(|&(_, c)| c > 0).collect()
}

fn criterion_5() -> Outcome {
    let limits = Limits::default();
    let spot: BTreeMap<(u32, u32, BraceLabel), Vec<(u64, u64)>> = [
        ((7, 3, BraceLabel::C), vec![(1, 9), (3, 48)]),
        ((7, 3, BraceLabel::D), vec![(1, 9), (3, 12), (9, 4)]),
        ((7, 3, BraceLabel::E), vec![(1, 63), (3, 42)]),
        ((5, 3, BraceLabel::Trivial), vec![(1, 225)]),
    ]
    .into();
    let mut slowest = Duration::ZERO;
    for (p, q) in [(3, 2), (5, 2), (7, 3), (13, 3), (5, 3)] {
        let start = Instant::now();
        for b in cat(p, q) {
            let got = profile_for_brace(&b, &limits).map_err(|e| e.to_string())?;
            let want = closed_form(p as u64, q as u64, b.label());
            let prof = &got.profile;
            ensure(*prof.multiplicities() == want, || {
                format!("{} at ({p},{q}): {prof} vs {want:?}", b.label())
            })?;
            ensure(prof.total() == (p * p * q * q) as u64, || {
                "Σ dim² ≠ |G|".into()
            })?;
            if let Some(s) = spot.get(&(p, q, b.label())) {
                ensure(want == s.iter().copied().collect(), || "spot value".into())?;
            }
        }
        slowest = slowest.max(start.elapsed());
        within(
            start,
            Duration::from_secs(60),
            &format!("profiles at ({p},{q})"),
        )?;
    }
    Ok(format!(
        "all closed forms match; slowest pair {slowest:.2?}"
    ))
}

fn criterion_6() -> Outcome {
    let limits = Limits::default();
    let mut n = 0;
    for (p, q) in [(3, 2), (5, 2), (7, 3)] {
        for b in cat(p, q) {
            let r = profile_routes(&b, &limits).map_err(|e| e.to_string())?;
            let Some(mackey) = &r.mackey else { continue };
            ensure(mackey == &r.counting, || {
                format!("{} mackey route", b.label())
            })?;
            if let Some(f) = &r.faithfulness {
                ensure(f == &r.counting, || {
                    format!("{} faithfulness route", b.label())
                })?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} decomposable braces agree"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let (limits, tol) = (Limits::default(), Tolerances::default());
    let mut built = 0;
    for (p, q) in [(3, 2), (7, 3)] {
        for b in cat(p, q) {
            let r = construction_report(&b, &limits, &tol).map_err(|e| e.to_string())?;
            ensure(r.homomorphism_defect <= 1e-9, || {
                format!(
                    "{}: homomorphism defect {:e}",
                    b.label(),
                    r.homomorphism_defect
                )
            })?;
            ensure(r.irreducible, || format!("{}: reducible output", b.label()))?;
            ensure(r.orthonormality_defect <= 1e-6, || {
                format!(
                    "{}: orthonormality defect {:e}",
                    b.label(),
                    r.orthonormality_defect
                )
            })?;
            ensure(r.sum_of_squares == (p * p * q * q) as u64, || {
                "Σ dim²".into()
            })?;
            built += r.irreps;
        }
    }
    within(start, Duration::from_secs(60), "construction")?;
    Ok(format!(
        "{built} irreps built and checked in {:.2?}",
        start.elapsed()
    ))
}

fn criterion_8() -> Outcome {
    let limits = Limits::default();
    for (p, q) in [(3, 2), (5, 2), (7, 3)] {
        let start = Instant::now();
        let c = iso_classes(p, q, &limits).map_err(|e| e.to_string())?;
        use BraceLabel::*;
        let mut third: BTreeSet<BraceLabel> = [D].into();
        third.extend((2..q).map(F));
        third.extend((2..=q).map(G));
        let expected: BTreeSet<BTreeSet<BraceLabel>> =
            [[B].into(), [C].into(), third, [E, F(q)].into()].into();
        let got: BTreeSet<BTreeSet<BraceLabel>> = c
            .classes
            .iter()
            .map(|k| k.members.iter().copied().collect())
            .collect();
        ensure(got == expected, || format!("({p},{q}): {got:?}"))?;
        ensure(c.representatives_distinct, || {
            "representatives share a fingerprint".into()
        })?;
        for w in c.classes.iter().flat_map(|k| &k.witnesses) {
            ensure(w.brute_force == Some(true), || {
                format!(
                    "({p},{q}) {}: brute force gave {:?}",
                    w.member, w.brute_force
                )
            })?;
        }
        within(
            start,
            Duration::from_secs(120),
            &format!("iso_classes({p},{q})"),
        )?;
    }
    Ok("4 classes at (3,2), (5,2), (7,3)".into())
}

/// The four displayed images, written out from their formulas.
fn displayed(s: u32, n: u32, m: u32) -> CMatrix {
    let w = |k: u32| Complex64::from_polar(1.0, std::f64::consts::TAU * (k % 3) as f64 / 3.0);
    let z = Complex64::new(0.0, 0.0);
    let l = s % 3;
    match (n, m) {
        (n, 0) => CMatrix::diagonal(&[w(l + n), w(2 * (l + n))]),
        (0, 1) => CMatrix::from_rows(&[vec![z, w(l)], vec![w(2 * l), z]]),
        (1, 1) => CMatrix::from_rows(&[vec![z, w(l + 1)], vec![w(2 * (l + 1)), z]]),
        (2, 1) => CMatrix::from_rows(&[vec![z, w(l + 2)], vec![w(2 * l + 1), z]]),
        _ => unreachable!(),
    }
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let limits = Limits::default();
    let c = cat(3, 2)
        .into_iter()
        .find(|b| b.label() == BraceLabel::C)
        .unwrap();
    let rep = dihedral_rep_of_c(&c).map_err(|e| e.to_string())?;
    ensure(
        check_brace_rep(&rep, 1e-9).map_err(|e| e.to_string())?,
        || "compatibility fails".into(),
    )?;
    let (lg, phi) = brace_to_group_rep(&rep, &limits, 1e-9).map_err(|e| e.to_string())?;
    for s in 0..3 {
        for t in 0..2 {
            for (n, m) in [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)] {
                let d = phi
                    .image(Elem::quad(s, t, n, m))
                    .max_diff(&displayed(s, n, m));
                ensure(d <= 1e-9, || {
                    format!("image at ({s},{t}),({n},{m}) off by {d:e}")
                })?;
            }
        }
    }
    let chi = character_of(&phi);
    let d = canonical_decomposition(&lg, &limits).map_err(|e| e.to_string())?;
    let back = d.map.inverse().ok_or("decomposition not bijective")?;
    let mut hits = 0;
    for irrep in mackey_irreps(&d.model).map_err(|e| e.to_string())? {
        let pulled = irrep.rep.pull_back(&back).map_err(|e| e.to_string())?;
        let ip = inner_product(&chi, &character_of(&pulled));
        if (ip - 1.0).norm() < 1e-6 {
            hits += 1;
        } else {
            ensure(ip.norm() < 1e-6, || format!("inner product {ip}"))?;
        }
    }
    ensure(hits == 1, || format!("equivalent to {hits} Mackey irreps"))?;
    within(start, Duration::from_secs(1), "golden test")?;
    Ok("images match, equivalent to exactly one of 12 irreps".into())
}

fn criterion_10() -> Outcome {
    let limits = Limits::default();
    for (p, q) in [(3u32, 2u32), (7, 3)] {
        for b in cat(p, q) {
            let label = b.label();
            let faithful = match label {
                BraceLabel::C | BraceLabel::E => false,
                BraceLabel::F(k) if k == q => false,
                BraceLabel::D | BraceLabel::F(_) | BraceLabel::G(_) => true,
                _ => continue,
            };
            let lg =
                build_lambda_group(&b, Variant::Standard, &limits).map_err(|e| e.to_string())?;
            let d = canonical_decomposition(&lg, &limits).map_err(|e| e.to_string())?;
            // kernel by brute force on the model: elements of Q commuting with P
            let g: &GroupRef = &d.model.group;
            let kernel = (0..q)
                .flat_map(|x| (0..q).map(move |y| Elem::quad(0, 0, x, y)))
                .filter(|&h| {
                    g.elements()
                        .filter(|e| e.get(2) == 0 && e.get(3) == 0)
                        .all(|e| g.mul(h, e) == g.mul(e, h))
                })
                .count();
            let profile = profile_for_brace(&b, &limits)
                .map_err(|e| e.to_string())?
                .profile;
            let (p64, q64) = (p as u64, q as u64);
            if faithful {
                ensure(kernel == 1, || format!("{label}: kernel {kernel}"))?;
                ensure(profile.support() == vec![1, q64, q64 * q64], || {
                    format!("{label}: cd = {:?}", profile.support())
                })?;
            } else {
                ensure(kernel == q as usize, || format!("{label}: kernel {kernel}"))?;
                let derived = lg.group().commutator_subgroup().len() as u64;
                let i = match derived {
                    d if d == p64 => 1,
                    d if d == p64 * p64 => 2,
                    d => return Err(format!("{label}: |G'| = {d} is not p or p²")),
                };
                let lin = p64.pow(2 - i) * q64 * q64;
                let want: BTreeMap<u64, u64> = [(1, lin), (q64, p64 * p64 - p64.pow(2 - i))].into();
                ensure(*profile.multiplicities() == want, || {
                    format!("{label}: {profile} vs {want:?}")
                })?;
            }
        }
    }
    Ok("kernels and closed-form counts at (3,2), (7,3)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("catalog counts", criterion_1),
        ("brace axiom and mutation", criterion_2),
        ("brace commutator orders", criterion_3),
        ("Λ_A ≅ Λ_{A^op} and Λ' structure", criterion_4),
        ("closed-form irrep profiles", criterion_5),
        ("route agreement", criterion_6),
        ("Mackey construction quality", criterion_7),
        ("isomorphism classes", criterion_8),
        ("dihedral representation of C", criterion_9),
        ("action kernels", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
