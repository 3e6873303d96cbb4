//! The self-check suite behind `pqbrace verify`: every structural and
//! representation-theoretic claim that applies at a given `(p, q)`, each recorded
//! with its expected and observed value.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::brace::{catalog, check_brace_axiom, BraceLabel, SkewBrace, Variant};
use crate::config::{Limits, Tolerances};
use crate::error::Result;
use crate::group::{Elem, FiniteGroup};
use crate::lambda_group::{
    canonical_decomposition, iso_classes, verify_commutator_structure, verify_op_isomorphism,
};
use crate::rep::matrix::{root_of_unity, CMatrix, ComplexScalar};
use crate::rep::{
    brace_to_group_rep, character_of, check_brace_rep, construction_report, dihedral_rep_of_c,
    inner_product, mackey_irreps, profile_routes, IrrepProfile,
};

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub p: u32,
    pub q: u32,
    pub seed: u64,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
    /// Wall-clock seconds per section. Kept out of the JSON so that reports are
    /// reproducible byte for byte.
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// The closed-form irrep profile of `Λ_A` for a catalog label.
pub fn theorem_profile(p: u32, q: u32, label: BraceLabel) -> IrrepProfile {
    let (p, q) = (p as u64, q as u64);
    use BraceLabel::*;
    match label {
        Trivial | B => IrrepProfile::from_counts([(1, p * p * q * q)]),
        C => IrrepProfile::from_counts([(1, q * q), (q, p * p - 1)]),
        E => IrrepProfile::from_counts([(1, p * q * q), (q, p * p - p)]),
        F(k) if k as u64 == q => IrrepProfile::from_counts([(1, p * q * q), (q, p * p - p)]),
        D | F(_) | G(_) => IrrepProfile::from_counts([
            (1, q * q),
            (q, 2 * (p - 1)),
            (q * q, (p - 1) * (p - 1) / (q * q)),
        ]),
    }
}

/// Whether the model action of `Λ_A` has a kernel of order `q`.
pub fn has_kernel(label: BraceLabel, q: u32) -> Option<bool> {
    use BraceLabel::*;
    match label {
        C | E => Some(true),
        F(k) => Some(k == q),
        D | G(_) => Some(false),
        Trivial | B => None,
    }
}

struct Recorder {
    records: Vec<CheckRecord>,
    timings: Vec<(String, f64)>,
}

impl Recorder {
    fn push(&mut self, check: impl Into<String>, expected: Value, actual: Value) {
        let pass = expected == actual;
        self.records.push(CheckRecord {
            check: check.into(),
            expected,
            actual,
            pass,
        });
    }

    fn flag(&mut self, check: impl Into<String>, ok: bool) {
        self.push(check, json!(true), json!(ok));
    }

    /// Runs a section, turning an error into a failed record.
    fn section(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<()>) {
        let start = Instant::now();
        if let Err(e) = f(self) {
            self.push(format!("{name}.error"), json!(null), json!(e.to_string()));
        }
        self.timings
            .push((name.to_string(), start.elapsed().as_secs_f64()));
    }
}

/// Runs every check that applies at `(p, q)`.
pub fn run(p: u32, q: u32, limits: &Limits, tol: &Tolerances) -> Result<VerificationReport> {
    crate::brace::check_primes(p, q)?;
    let exhaustive = Limits {
        force_exhaustive_brace: true,
        ..*limits
    };
    let braces = catalog(p, q, limits)?;
    let mut rec = Recorder {
        records: Vec::new(),
        timings: Vec::new(),
    };
    let congruent = p % q == 1;

    rec.section("catalog", |r| {
        let expected = if congruent { 2 * q + 2 } else { 1 };
        r.push("catalog.count", json!(expected), json!(braces.len()));
        Ok(())
    });

    rec.section("brace_axiom", |r| {
        for b in &braces {
            let ok = check_brace_axiom(b.add(), b.circ(), &exhaustive).is_ok();
            r.flag(format!("brace_axiom.{}", b.label()), ok);
        }
        let b = braces
            .iter()
            .find(|b| !b.is_trivial())
            .unwrap_or(&braces[0]);
        r.flag(
            "brace_axiom.mutation_detected",
            mutation_is_detected(b, &exhaustive),
        );
        Ok(())
    });

    rec.section("brace_commutator", |r| {
        for b in &braces {
            let abelian_trivial = matches!(b.label(), BraceLabel::Trivial | BraceLabel::B);
            let expected = if abelian_trivial { 1 } else { p };
            let ideal = b.brace_commutator();
            r.push(
                format!("brace_commutator.{}", b.label()),
                json!({"order": expected, "ideal": true}),
                json!({"order": ideal.members.len(), "ideal": ideal.is_ideal}),
            );
        }
        Ok(())
    });

    rec.section("lambda_group", |r| {
        for b in &braces {
            let label = b.label();
            match verify_op_isomorphism(b, limits) {
                Ok((standard, _, _)) => {
                    r.flag(format!("op_isomorphism.{label}"), true);
                    r.flag(
                        format!("lambda_commutator.{label}"),
                        verify_commutator_structure(&standard)?,
                    );
                }
                Err(e) => r.push(
                    format!("op_isomorphism.{label}"),
                    json!(true),
                    json!(e.to_string()),
                ),
            }
        }
        Ok(())
    });

    rec.section("profiles", |r| {
        for b in &braces {
            let label = b.label();
            let routes = profile_routes(b, limits)?;
            r.push(
                format!("profile.{label}"),
                json!(theorem_profile(p, q, label)),
                json!(routes.counting),
            );
            r.flag(format!("routes_agree.{label}"), routes.agree());
            r.push(
                format!("profile_total.{label}"),
                json!(p as u64 * p as u64 * q as u64 * q as u64),
                json!(routes.counting.total()),
            );
            if let Some(kernel) = has_kernel(label, q) {
                let expected_kernel = if kernel { q as usize } else { 1 };
                r.push(
                    format!("kernel.{label}"),
                    json!(expected_kernel),
                    json!(routes.kernel_order),
                );
                if kernel {
                    r.push(
                        format!("kernel_profile.{label}"),
                        json!(routes.counting),
                        json!(routes.faithfulness),
                    );
                } else {
                    let q = q as u64;
                    r.push(
                        format!("cd.{label}"),
                        json!([1, q, q * q]),
                        json!(routes.counting.support()),
                    );
                }
            }
        }
        Ok(())
    });

    rec.section("construction", |r| {
        for b in &braces {
            let report = construction_report(b, limits, tol)?;
            r.flag(format!("construction.{}", b.label()), report.pass);
        }
        Ok(())
    });

    rec.section("iso_classes", |r| {
        let classes = iso_classes(p, q, limits)?;
        let expected: BTreeSet<BTreeSet<String>> = expected_classes(p, q)
            .into_iter()
            .map(|c| c.into_iter().map(|l| l.to_string()).collect())
            .collect();
        let actual: BTreeSet<BTreeSet<String>> = classes
            .classes
            .iter()
            .map(|c| c.members.iter().map(|l| l.to_string()).collect())
            .collect();
        r.push(
            "iso_classes.count",
            json!(expected.len()),
            json!(actual.len()),
        );
        r.push("iso_classes.membership", json!(expected), json!(actual));
        r.flag(
            "iso_classes.splits_distinct",
            classes.representatives_distinct,
        );
        let unconfirmed: Vec<String> = classes
            .classes
            .iter()
            .flat_map(|c| &c.witnesses)
            .filter(|w| w.brute_force == Some(false))
            .map(|w| w.member.to_string())
            .collect();
        r.push(
            "iso_classes.merges_confirmed",
            json!([]),
            json!(unconfirmed),
        );
        Ok(())
    });

    if (p, q) == (3, 2) {
        rec.section("dihedral_rep", |r| dihedral_checks(r, &braces, limits, tol));
    }

    let pass = rec.records.iter().all(|r| r.pass);
    Ok(VerificationReport {
        p,
        q,
        seed: limits.seed,
        records: rec.records,
        pass,
        timings: rec.timings,
    })
}

/// `{B}, {C}, {D, F_γ (γ<q), G_μ}, {E, F_q}`, or the single trivial brace.
pub fn expected_classes(p: u32, q: u32) -> Vec<Vec<BraceLabel>> {
    use BraceLabel::*;
    if p % q != 1 {
        return vec![vec![Trivial]];
    }
    let mut d = vec![D];
    d.extend((2..q).map(F));
    d.extend((2..=q).map(G));
    vec![vec![B], vec![C], d, vec![E, F(q)]]
}

/// Corrupts one product in the multiplicative table and checks that the brace
/// axiom then fails.
fn mutation_is_detected(b: &SkewBrace, limits: &Limits) -> bool {
    let circ = b.circ();
    let n = circ.order();
    let mut table = circ.cayley_table();
    table[n + 1] = (table[n + 1] + 1) % n as u32;
    let corrupted = FiniteGroup::from_table("corrupted", circ.moduli().to_vec(), table);
    check_brace_axiom(b.add(), &corrupted, limits).is_err()
}

/// The images `φ((s,t),(n,m)) = β(s,t)ρ(n,m)` predicted for the dihedral
/// representation of `C` at `(3, 2)`, at `(n, m) ∈ {(n,0), (0,1), (1,1), (2,1)}`.
pub fn dihedral_golden(s: u32, n: u32, m: u32) -> Option<CMatrix> {
    let w = |k: u32| root_of_unity(3, k as i64);
    let zero = ComplexScalar::new(0.0, 0.0);
    let l = s % 3;
    let anti = |a: u32, b: u32| CMatrix::from_rows(&[vec![zero, w(a)], vec![w(b), zero]]);
    match (n, m) {
        (n, 0) => Some(CMatrix::diagonal(&[w(l + n), w(2 * (l + n))])),
        (0, 1) => Some(anti(l, 2 * l)),
        (1, 1) => Some(anti(l + 1, 2 * (l + 1))),
        (2, 1) => Some(anti(l + 2, 2 * l + 1)),
        _ => None,
    }
}

fn dihedral_checks(
    r: &mut Recorder,
    braces: &[SkewBrace],
    limits: &Limits,
    tol: &Tolerances,
) -> Result<()> {
    let c = braces
        .iter()
        .find(|b| b.label() == BraceLabel::C)
        .expect("C is in the catalog at (3, 2)");
    let rep = dihedral_rep_of_c(c)?;
    r.flag(
        "dihedral_rep.compatible",
        check_brace_rep(&rep, tol.matrix)?,
    );
    let (lg, phi) = brace_to_group_rep(&rep, limits, tol.matrix)?;
    let mut worst = 0.0f64;
    for s in 0..3 {
        for t in 0..2 {
            for (n, m) in [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)] {
                let golden = dihedral_golden(s, n, m).expect("tabulated");
                worst = worst.max(phi.image(Elem::quad(s, t, n, m)).max_diff(&golden));
            }
        }
    }
    r.flag("dihedral_rep.golden_images", worst <= tol.matrix);
    let chi = character_of(&phi);
    r.flag(
        "dihedral_rep.irreducible",
        crate::rep::is_irreducible(&chi, tol.character),
    );
    debug_assert_eq!(lg.variant(), Variant::Opposite);
    let d = canonical_decomposition(&lg, limits)?;
    let back = d
        .map
        .inverse()
        .ok_or_else(|| crate::error::Error::Internal("decomposition not bijective".into()))?;
    let mut matches = 0;
    for irrep in mackey_irreps(&d.model)? {
        let other = character_of(&irrep.rep.pull_back(&back)?);
        let ip = inner_product(&chi, &other);
        if (ip - 1.0).norm() < tol.character {
            matches += 1;
        } else if ip.norm() >= tol.character {
            return Err(crate::error::Error::Inconsistency(format!(
                "inner product {ip} is neither 0 nor 1"
            )));
        }
    }
    r.push(
        "dihedral_rep.equivalent_mackey_irreps",
        json!(1),
        json!(matches),
    );
    Ok(())
}
