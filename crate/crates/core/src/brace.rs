//! Skew left braces on the carrier `Z_p × Z_q`.
//!
//! Every brace here stores its carrier as pairs `(n, m)` with `n mod p`, `m mod q`.
//! The additive group is either `Z_p × Z_q` or `Z_p ⋊ Z_q` with
//! `(n, m) · (s, t) = (n + g^m s, m + t)`, where `g` has multiplicative order `q`
//! modulo `p`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{Action, Elem, FiniteGroup, GroupRef};
use crate::modular::{find_g, is_prime, mul_mod, PowerTable};
use crate::par;

/// Which lambda map a construction uses: `λ_a(b) = a⁻¹·(a∘b)` or
/// `λᵒᵖ_a(b) = (a∘b)·a⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    Standard,
    Opposite,
}

/// Names of the braces of order `pq`. `Trivial` is the only brace when
/// `p ≢ 1 (mod q)`; the others require `p ≡ 1 (mod q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BraceLabel {
    Trivial,
    B,
    C,
    D,
    E,
    /// `γ` with `1 < γ ≤ q`.
    F(u32),
    /// `μ` with `1 < μ ≤ q`.
    G(u32),
}

impl fmt::Display for BraceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraceLabel::Trivial => write!(f, "trivial"),
            BraceLabel::B => write!(f, "B"),
            BraceLabel::C => write!(f, "C"),
            BraceLabel::D => write!(f, "D"),
            BraceLabel::E => write!(f, "E"),
            BraceLabel::F(k) => write!(f, "F:{k}"),
            BraceLabel::G(k) => write!(f, "G:{k}"),
        }
    }
}

impl FromStr for BraceLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("unknown brace selector {s:?}"));
        match s {
            "trivial" => return Ok(BraceLabel::Trivial),
            "B" => return Ok(BraceLabel::B),
            "C" => return Ok(BraceLabel::C),
            "D" => return Ok(BraceLabel::D),
            "E" => return Ok(BraceLabel::E),
            _ => {}
        }
        let (head, tail) = s.split_once(':').ok_or_else(bad)?;
        let k: u32 = tail.parse().map_err(|_| bad())?;
        match head {
            "F" => Ok(BraceLabel::F(k)),
            "G" => Ok(BraceLabel::G(k)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for BraceLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Validates that `p > q` are primes.
pub fn check_primes(p: u32, q: u32) -> Result<()> {
    if !is_prime(p) || !is_prime(q) {
        return Err(Error::Parameter(format!("p={p} and q={q} must be prime")));
    }
    if p <= q {
        return Err(Error::Parameter(format!("need p > q, got p={p}, q={q}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BraceParams {
    pub p: u32,
    pub q: u32,
    /// Present iff `p ≡ 1 (mod q)`; the smallest residue of order `q`.
    pub g: Option<u32>,
    pub label: BraceLabel,
}

impl BraceParams {
    pub fn new(p: u32, q: u32, label: BraceLabel) -> Result<Self> {
        check_primes(p, q)?;
        let congruent = p % q == 1;
        let g = if congruent { Some(find_g(p, q)?) } else { None };
        match label {
            BraceLabel::Trivial => {}
            _ if !congruent => {
                return Err(Error::Parameter(format!(
                    "brace {label} needs p ≡ 1 (mod q); p={p}, q={q}"
                )))
            }
            BraceLabel::F(k) | BraceLabel::G(k) if k <= 1 || k > q => {
                return Err(Error::Parameter(format!(
                    "{label}: parameter must satisfy 1 < k ≤ q={q}"
                )))
            }
            _ => {}
        }
        Ok(Self { p, q, g, label })
    }

    /// Whether the additive group is `Z_p ⋊ Z_q` rather than `Z_p × Z_q`.
    pub fn semidirect_additive(&self) -> bool {
        matches!(
            self.label,
            BraceLabel::D | BraceLabel::E | BraceLabel::F(_) | BraceLabel::G(_)
        )
    }

    pub fn is_trivial_label(&self) -> bool {
        matches!(
            self.label,
            BraceLabel::Trivial | BraceLabel::B | BraceLabel::D
        )
    }
}

/// A set with two group structures satisfying `a∘(b·c) = (a∘b)·a⁻¹·(a∘c)`.
#[derive(Clone, Debug)]
pub struct SkewBrace {
    params: BraceParams,
    add: GroupRef,
    circ: GroupRef,
    opposite: bool,
}

/// Products on `Z_p × Z_q` of the form `(n, m)·(s, t) = (g^{l·t} n + g^{r·m} s, m + t)`.
/// With `g = 1` this is the direct product.
fn twisted_pair_group(name: String, pw: &PowerTable, left: i64, right: i64) -> FiniteGroup {
    let (p, q) = (pw.p(), pw.q());
    let (pm, pi) = (pw.clone(), pw.clone());
    FiniteGroup::from_fns(
        name,
        vec![p, q],
        move |a, b| {
            let (n, m) = (a.get(0), a.get(1) as i64);
            let (s, t) = (b.get(0), b.get(1) as i64);
            let x = (mul_mod(pm.pow(left * t), n, p) + mul_mod(pm.pow(right * m), s, p)) % p;
            Elem::pair(x, ((m + t) % q as i64) as u32)
        },
        move |a| {
            // t = -m, then g^{-left·m} n + g^{right·m} s = 0
            let (n, m) = (a.get(0), a.get(1) as i64);
            let s = mul_mod(pi.pow(-(left + right) * m), n, p);
            Elem::pair((p - s) % p, ((q as i64 - m) % q as i64) as u32)
        },
    )
}

fn direct_pair_group(name: String, p: u32, q: u32) -> FiniteGroup {
    twisted_pair_group(name, &PowerTable::new(1, p, q), 0, 0)
}

/// The brace with the closed-form operations of the catalog, axiom-checked.
pub fn make_brace(params: BraceParams, limits: &Limits) -> Result<SkewBrace> {
    let BraceParams { p, q, g, label } = params;
    let pw = PowerTable::new(g.unwrap_or(1), p, q);
    let tag = label.to_string();
    let add: FiniteGroup = if params.semidirect_additive() {
        twisted_pair_group(format!("({tag},·)"), &pw, 0, 1)
    } else {
        direct_pair_group(format!("({tag},·)"), p, q)
    };
    let circ_name = format!("({tag},∘)");
    let add: GroupRef = Arc::new(add);
    let circ: GroupRef = match label {
        BraceLabel::Trivial | BraceLabel::B | BraceLabel::D => add.clone(),
        BraceLabel::C => Arc::new(twisted_pair_group(circ_name, &pw, 0, 1)),
        BraceLabel::E => Arc::new(twisted_pair_group(circ_name, &pw, 1, 1)),
        BraceLabel::F(k) => Arc::new(twisted_pair_group(circ_name, &pw, 0, k as i64)),
        BraceLabel::G(k) => Arc::new(twisted_pair_group(circ_name, &pw, 1, k as i64)),
    };
    add.check_axioms(limits)?;
    if !Arc::ptr_eq(&add, &circ) {
        circ.check_axioms(limits)?;
    }
    SkewBrace::from_groups(params, add, circ, limits)
}

/// Checks `a∘(b·c) = (a∘b)·a⁻¹·(a∘c)`: on every triple when the carrier has at
/// most `exhaustive_brace_max` elements (or when forced), on seeded random triples
/// otherwise.
pub fn check_brace_axiom(add: &FiniteGroup, circ: &FiniteGroup, limits: &Limits) -> Result<()> {
    let n = add.order();
    if circ.order() != n || add.moduli() != circ.moduli() {
        return Err(Error::Parameter(
            "additive and multiplicative groups need the same carrier".into(),
        ));
    }
    let holds = |a: Elem, b: Elem, c: Elem| {
        circ.mul(a, add.mul(b, c)) == add.mul(add.mul(circ.mul(a, b), add.inv(a)), circ.mul(a, c))
    };
    if limits.force_exhaustive_brace || n <= limits.exhaustive_brace_max {
        let hit = par::find_first(n * n, |ab| {
            let a = add.element(ab / n);
            let b = add.element(ab % n);
            add.elements().find(|&c| !holds(a, b, c)).map(|c| (a, b, c))
        });
        if let Some((_, (a, b, c))) = hit {
            return Err(Error::BraceAxiom { a, b, c });
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
        for _ in 0..limits.random_brace_triples {
            let a = add.element(rng.gen_range(0..n));
            let b = add.element(rng.gen_range(0..n));
            let c = add.element(rng.gen_range(0..n));
            if !holds(a, b, c) {
                return Err(Error::BraceAxiom { a, b, c });
            }
        }
    }
    Ok(())
}

/// The brace commutator together with its ideal status.
#[derive(Clone, Debug)]
pub struct CommutatorIdeal {
    pub members: BTreeSet<Elem>,
    pub is_ideal: bool,
}

/// A lambda map of a brace, standard or opposite.
#[derive(Clone, Copy)]
pub struct LambdaMap<'a> {
    brace: &'a SkewBrace,
    variant: Variant,
}

impl LambdaMap<'_> {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    #[inline]
    pub fn apply(&self, a: Elem, b: Elem) -> Elem {
        match self.variant {
            Variant::Standard => self.brace.lambda(a, b),
            Variant::Opposite => self.brace.lambda_op(a, b),
        }
    }
}

impl SkewBrace {
    /// Wraps two groups on the same carrier after checking the brace axiom.
    pub fn from_groups(
        params: BraceParams,
        add: GroupRef,
        circ: GroupRef,
        limits: &Limits,
    ) -> Result<Self> {
        check_brace_axiom(&add, &circ, limits)?;
        Ok(Self {
            params,
            add,
            circ,
            opposite: false,
        })
    }

    pub fn params(&self) -> &BraceParams {
        &self.params
    }

    pub fn label(&self) -> BraceLabel {
        self.params.label
    }

    pub fn add(&self) -> &GroupRef {
        &self.add
    }

    pub fn circ(&self) -> &GroupRef {
        &self.circ
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.add.elements()
    }

    /// Whether `∘` coincides with `·`.
    pub fn is_trivial(&self) -> bool {
        Arc::ptr_eq(&self.add, &self.circ)
            || par::all(self.order(), |i| {
                let a = self.add.element(i);
                self.elements()
                    .all(|b| self.add.mul(a, b) == self.circ.mul(a, b))
            })
    }

    /// `λ_a(b) = a⁻¹·(a∘b)`.
    #[inline]
    pub fn lambda(&self, a: Elem, b: Elem) -> Elem {
        self.add.mul(self.add.inv(a), self.circ.mul(a, b))
    }

    /// `λᵒᵖ_a(b) = (a∘b)·a⁻¹`.
    #[inline]
    pub fn lambda_op(&self, a: Elem, b: Elem) -> Elem {
        self.add.mul(self.circ.mul(a, b), self.add.inv(a))
    }

    pub fn lambda_map(&self, variant: Variant) -> LambdaMap<'_> {
        LambdaMap {
            brace: self,
            variant,
        }
    }

    /// The lambda map as an action of `(A,∘)` on `(A,·)`, for building `Λ_A`.
    pub fn action(&self, variant: Variant) -> Action {
        let add = self.add.clone();
        let circ = self.circ.clone();
        match variant {
            Variant::Standard => Arc::new(move |a, b| add.mul(add.inv(a), circ.mul(a, b))),
            Variant::Opposite => Arc::new(move |a, b| add.mul(circ.mul(a, b), add.inv(a))),
        }
    }

    /// The opposite brace: `a ·ᵒᵖ b = b · a`, same `∘`. Re-checks the axiom.
    pub fn opposite(&self, limits: &Limits) -> Result<SkewBrace> {
        let add: GroupRef = Arc::new(self.add.opposite());
        check_brace_axiom(&add, &self.circ, limits)?;
        Ok(SkewBrace {
            params: self.params,
            add,
            circ: self.circ.clone(),
            opposite: !self.opposite,
        })
    }

    /// Additive subgroup generated by `a·b·a⁻¹·b⁻¹` and `a·λ_b(a⁻¹)`.
    pub fn brace_commutator(&self) -> CommutatorIdeal {
        let n = self.order();
        let add = &self.add;
        let gens: BTreeSet<Elem> = par::map(n, |i| {
            let a = add.element(i);
            let ai = add.inv(a);
            self.elements()
                .flat_map(|b| [add.commutator(a, b), add.mul(a, self.lambda(b, ai))])
                .collect::<BTreeSet<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
        let gens: Vec<Elem> = gens.into_iter().collect();
        let members = add
            .subgroup_generated(&gens)
            .expect("commutators lie in the carrier");
        let is_ideal = self.is_ideal(&members).unwrap_or(false);
        CommutatorIdeal { members, is_ideal }
    }

    /// Subgroup of both groups, normal in both, and invariant under every `λ_a`.
    pub fn is_ideal(&self, s: &BTreeSet<Elem>) -> Result<bool> {
        for &x in s {
            self.add.check_member(x)?;
        }
        let id = self.add.identity();
        if !s.contains(&id) {
            return Ok(false);
        }
        let closed = |g: &FiniteGroup| {
            s.iter()
                .all(|&x| s.iter().all(|&y| s.contains(&g.mul(x, y))))
        };
        if !closed(&self.add) || !closed(&self.circ) {
            return Ok(false);
        }
        let normal = |g: &FiniteGroup| {
            g.generators()
                .iter()
                .all(|&a| s.iter().all(|&x| s.contains(&g.conj(a, x))))
        };
        if !normal(&self.add) || !normal(&self.circ) {
            return Ok(false);
        }
        Ok(self
            .elements()
            .all(|a| s.iter().all(|&x| s.contains(&self.lambda(a, x)))))
    }

    /// Whether `·` and `∘` induce the same operation on cosets of the ideal, i.e.
    /// `(a·b)⁻¹·(a∘b) ∈ I` for all `a, b`.
    pub fn quotient_is_trivial(&self, ideal: &BTreeSet<Elem>) -> bool {
        par::all(self.order(), |i| {
            let a = self.add.element(i);
            self.elements().all(|b| {
                let diff = self
                    .add
                    .mul(self.add.inv(self.add.mul(a, b)), self.circ.mul(a, b));
                ideal.contains(&diff)
            })
        })
    }

    /// `Z_pq` for cyclic groups of order `pq`, `Z_p ⋊ Z_q` otherwise.
    pub fn shape(g: &FiniteGroup) -> &'static str {
        if g.is_abelian() {
            "Z_pq"
        } else {
            "Z_p ⋊ Z_q"
        }
    }
}

/// Every brace of order `pq` up to isomorphism: the trivial brace alone when
/// `p ≢ 1 (mod q)`, otherwise `B, C, D, E, F_γ (1<γ≤q), G_μ (1<μ≤q)`.
pub fn catalog(p: u32, q: u32, limits: &Limits) -> Result<Vec<SkewBrace>> {
    catalog_labels(p, q)?
        .into_iter()
        .map(|label| make_brace(BraceParams::new(p, q, label)?, limits))
        .collect()
}

pub fn catalog_labels(p: u32, q: u32) -> Result<Vec<BraceLabel>> {
    check_primes(p, q)?;
    if p % q != 1 {
        return Ok(vec![BraceLabel::Trivial]);
    }
    let mut labels = vec![BraceLabel::B, BraceLabel::C, BraceLabel::D, BraceLabel::E];
    labels.extend((2..=q).map(BraceLabel::F));
    labels.extend((2..=q).map(BraceLabel::G));
    Ok(labels)
}
