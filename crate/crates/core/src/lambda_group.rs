//! The groups `Λ_A = (A,·) ⋊_λ (A,∘)` and `Λ_{A^op} = (A,·) ⋊_{λᵒᵖ} (A,∘)`, their
//! models `(Z_p×Z_p) ⋊ (Z_q×Z_q)`, and the twist maps relating those models.
//!
//! Elements of `Λ` are 4-tuples `((n, m), (s, t))`: the first pair lives in
//! `(A,·)`, the second in `(A,∘)`. Elements of a model group are
//! `((a, b), (x, y))` with `(a, b) ∈ Z_p²` and `(x, y) ∈ Z_q²`.
//!
//! Every map produced here is checked with [`GroupMap::is_isomorphism`] before it
//! is returned.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::brace::{catalog, BraceLabel, SkewBrace, Variant};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{semidirect_product, Action, Elem, FiniteGroup, GroupRef};
use crate::iso::{brute_force_isomorphic, fingerprint};
use crate::map::GroupMap;
use crate::modular::{find_g, mul_mod, sub_mod, PowerTable};
use crate::par;

#[derive(Clone, Debug)]
pub struct LambdaGroup {
    brace: SkewBrace,
    variant: Variant,
    group: GroupRef,
}

impl LambdaGroup {
    pub fn brace(&self) -> &SkewBrace {
        &self.brace
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }
}

pub fn build_lambda_group(b: &SkewBrace, variant: Variant, limits: &Limits) -> Result<LambdaGroup> {
    let group = semidirect_product(b.add(), b.circ(), b.action(variant), limits).map_err(|e| {
        Error::Internal(format!("lambda map of {} is not an action: {e}", b.label()))
    })?;
    let suffix = match variant {
        Variant::Standard => "",
        Variant::Opposite => "^op",
    };
    let group = FiniteGroupRename::rename(group, format!("Λ_{}{suffix}", b.label()));
    Ok(LambdaGroup {
        brace: b.clone(),
        variant,
        group: Arc::new(group),
    })
}

// Keeps the semidirect law but gives the group a readable name.
struct FiniteGroupRename;

impl FiniteGroupRename {
    fn rename(g: FiniteGroup, name: String) -> FiniteGroup {
        let moduli = g.moduli().to_vec();
        let inner = Arc::new(g);
        let (m, i) = (inner.clone(), inner);
        FiniteGroup::from_fns(name, moduli, move |a, b| m.mul(a, b), move |a| i.inv(a))
    }
}

/// The pair of isomorphisms between `Λ_A` and `Λ_{A^op}`.
#[derive(Clone, Debug)]
pub struct OpIsomorphism {
    /// `Λ_{A^op} → Λ_A`, `(x, y) ↦ (x·y, y)`.
    pub to_standard: GroupMap,
    /// `Λ_A → Λ_{A^op}`, `(x, y) ↦ (x·y⁻¹, y)`.
    pub to_opposite: GroupMap,
}

/// Builds and verifies the isomorphisms between the given standard and opposite
/// lambda groups of one brace. Inverses in `y⁻¹` are taken in `(A,·)`.
pub fn op_isomorphism(
    standard: &LambdaGroup,
    opposite: &LambdaGroup,
    limits: &Limits,
) -> Result<OpIsomorphism> {
    if standard.variant != Variant::Standard || opposite.variant != Variant::Opposite {
        return Err(Error::Parameter(
            "expected a standard and an opposite Λ".into(),
        ));
    }
    let add = standard.brace.add().clone();
    let add2 = add.clone();
    let to_standard = GroupMap::from_fn(&opposite.group, &standard.group, move |e| {
        let (x, y) = e.split(2);
        Elem::concat(add.mul(x, y), y)
    });
    let to_opposite = GroupMap::from_fn(&standard.group, &opposite.group, move |e| {
        let (x, y) = e.split(2);
        Elem::concat(add2.mul(x, add2.inv(y)), y)
    });
    for (name, m) in [
        ("(x,y) ↦ (xy,y)", &to_standard),
        ("(x,y) ↦ (xy⁻¹,y)", &to_opposite),
    ] {
        if !m.is_isomorphism(limits) {
            return Err(Error::Internal(format!(
                "{name} is not an isomorphism for {}",
                standard.brace.label()
            )));
        }
    }
    Ok(OpIsomorphism {
        to_standard,
        to_opposite,
    })
}

/// Builds `Λ_A`, `Λ_{A^op}` and the verified isomorphisms between them.
pub fn verify_op_isomorphism(
    b: &SkewBrace,
    limits: &Limits,
) -> Result<(LambdaGroup, LambdaGroup, OpIsomorphism)> {
    let s = build_lambda_group(b, Variant::Standard, limits)?;
    let o = build_lambda_group(b, Variant::Opposite, limits)?;
    let iso = op_isomorphism(&s, &o, limits)?;
    Ok((s, o, iso))
}

/// Whether `Λ'_A` equals the subgroup generated by `A' × {1}` and `{1} × (A,∘)'`.
pub fn verify_commutator_structure(lg: &LambdaGroup) -> Result<bool> {
    if lg.variant != Variant::Standard {
        return Err(Error::NotApplicable(
            "commutator structure is stated for the standard Λ".into(),
        ));
    }
    let b = &lg.brace;
    let a_prime = b.brace_commutator().members;
    let circ_prime = b.circ().commutator_subgroup();
    let one = b.add().identity();
    let gens: Vec<Elem> = a_prime
        .iter()
        .map(|&a| Elem::concat(a, one))
        .chain(circ_prime.iter().map(|&c| Elem::concat(one, c)))
        .collect();
    let expected = lg.group.subgroup_generated(&gens)?;
    Ok(lg.group.commutator_subgroup() == expected)
}

/// The actions of `Z_q × Z_q` on `Z_p × Z_p` that appear as models of `Λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ActionKind {
    /// `(g^y a, g^y b)`
    Theta,
    /// `(g^x a, g^y b)`
    Psi,
    /// `(g^x a + (1 - g^x) b, b)`
    Xi,
    /// `(g^{x+(γ-1)y} a, g^{γy} b)` for `1 < γ < q`
    DeltaGamma(u32),
    /// `(g^{x-y} a, b)`
    DeltaQ,
    /// `(g^{x+(μ-1)y} a + (1-g^x) g^{(μ-1)y} b, g^{(μ-1)y} b)`
    DeltaMu(u32),
    /// `(g^{x+y} a, b)`
    Eta,
    /// `(g^{x+2y} a, g^y b)`
    Chi,
    /// `(g^{x+y} a + (1-g^x) g^y b, g^y b)`
    Beta,
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionKind::Theta => write!(f, "θ"),
            ActionKind::Psi => write!(f, "ψ"),
            ActionKind::Xi => write!(f, "ξ"),
            ActionKind::DeltaGamma(k) => write!(f, "δ_γ[γ={k}]"),
            ActionKind::DeltaQ => write!(f, "δ_q"),
            ActionKind::DeltaMu(k) => write!(f, "δ_μ[μ={k}]"),
            ActionKind::Eta => write!(f, "η"),
            ActionKind::Chi => write!(f, "χ"),
            ActionKind::Beta => write!(f, "β"),
        }
    }
}

impl Serialize for ActionKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalAction {
    kind: ActionKind,
    p: u32,
    q: u32,
    pw: PowerTable,
}

impl CanonicalAction {
    pub fn new(kind: ActionKind, p: u32, q: u32) -> Result<Self> {
        let g = find_g(p, q)?;
        Ok(Self {
            kind,
            p,
            q,
            pw: PowerTable::new(g, p, q),
        })
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Image of `(a, b) ∈ Z_p²` under the automorphism attached to `(x, y) ∈ Z_q²`.
    pub fn apply(&self, x: u32, y: u32, a: u32, b: u32) -> (u32, u32) {
        let p = self.p;
        let (x, y) = (x as i64, y as i64);
        let g = |k: i64| self.pw.pow(k);
        let lin = |k: i64, v: u32| mul_mod(g(k), v, p);
        // (1 - g^x) · g^k · b
        let shear = |k: i64| mul_mod(sub_mod(1, g(x), p), lin(k, b), p);
        match self.kind {
            ActionKind::Theta => (lin(y, a), lin(y, b)),
            ActionKind::Psi => (lin(x, a), lin(y, b)),
            ActionKind::Xi => ((lin(x, a) + shear(0)) % p, b),
            ActionKind::DeltaGamma(k) => {
                let k = k as i64;
                (lin(x + y * (k - 1), a), lin(k * y, b))
            }
            ActionKind::DeltaQ => (lin(x - y, a), b),
            ActionKind::DeltaMu(k) => {
                let s = (k as i64 - 1) * y;
                ((lin(x + s, a) + shear(s)) % p, lin(s, b))
            }
            ActionKind::Eta => (lin(x + y, a), b),
            ActionKind::Chi => (lin(x + 2 * y, a), lin(y, b)),
            ActionKind::Beta => ((lin(x + y, a) + shear(y)) % p, lin(y, b)),
        }
    }

    /// Elements of `Z_q²` acting trivially. The action is linear, so checking the
    /// two basis vectors suffices.
    pub fn kernel(&self) -> Vec<(u32, u32)> {
        let q = self.q;
        (0..q)
            .flat_map(|x| (0..q).map(move |y| (x, y)))
            .filter(|&(x, y)| self.apply(x, y, 1, 0) == (1, 0) && self.apply(x, y, 0, 1) == (0, 1))
            .collect()
    }

    pub fn as_group_action(&self) -> Action {
        let me = self.clone();
        Arc::new(move |g, h| {
            let (a, b) = me.apply(g.get(0), g.get(1), h.get(0), h.get(1));
            Elem::pair(a, b)
        })
    }

    /// `(Z_p × Z_p) ⋊ (Z_q × Z_q)` under this action.
    pub fn model(&self, limits: &Limits) -> Result<ModelGroup> {
        let pgrp: GroupRef = Arc::new(FiniteGroup::abelian(&[self.p, self.p]));
        let qgrp: GroupRef = Arc::new(FiniteGroup::abelian(&[self.q, self.q]));
        let semi = semidirect_product(&pgrp, &qgrp, self.as_group_action(), limits)?;
        let named = FiniteGroupRename::rename(semi, format!("P ⋊_{} Q", self.kind));
        Ok(ModelGroup {
            action: self.clone(),
            group: Arc::new(named),
        })
    }
}

/// A model group together with the action that defines it.
#[derive(Clone, Debug)]
pub struct ModelGroup {
    pub action: CanonicalAction,
    pub group: GroupRef,
}

/// Automorphisms of `Z_q × Z_q` used to relate model actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Twist {
    Identity,
    /// `(x + (γ-1)y, γy)`
    HGamma(u32),
    /// `(x, (μ-1)y)`
    HMu(u32),
    /// `(x + 2y, y)`
    FG2,
    /// `(x, -y)`
    FE,
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Twist::Identity => write!(f, "id"),
            Twist::HGamma(k) => write!(f, "h_γ[γ={k}]"),
            Twist::HMu(k) => write!(f, "h_μ[μ={k}]"),
            Twist::FG2 => write!(f, "(x,y)↦(x+2y,y)"),
            Twist::FE => write!(f, "(x,y)↦(x,-y)"),
        }
    }
}

impl Twist {
    pub fn apply(&self, x: u32, y: u32, q: u32) -> (u32, u32) {
        let m = |v: u64| (v % q as u64) as u32;
        let (x, y) = (x as u64, y as u64);
        match *self {
            Twist::Identity => (x as u32, y as u32),
            Twist::HGamma(k) => (m(x + (k as u64 - 1) * y), m(k as u64 * y)),
            Twist::HMu(k) => (x as u32, m((k as u64 - 1) * y)),
            Twist::FG2 => (m(x + 2 * y), y as u32),
            Twist::FE => (x as u32, m(q as u64 - y)),
        }
    }

    pub fn is_bijective(&self, q: u32) -> bool {
        let mut seen = vec![false; (q * q) as usize];
        for x in 0..q {
            for y in 0..q {
                let (a, b) = self.apply(x, y, q);
                seen[(a * q + b) as usize] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// The isomorphism `P ⋊_{action1} Q → P ⋊_{action2} Q`, `(h, g) ↦ (h, f(g))`,
/// valid when `action1_g = action2_{f(g)}` for every `g`.
pub fn twist_isomorphism(
    src: &ModelGroup,
    dst: &ModelGroup,
    f: Twist,
    limits: &Limits,
) -> Result<GroupMap> {
    let (p, q) = (src.action.p, src.action.q);
    if (p, q) != (dst.action.p, dst.action.q) {
        return Err(Error::Parameter(
            "twist between models of different orders".into(),
        ));
    }
    if !f.is_bijective(q) {
        return Err(Error::Parameter(format!(
            "{f} is not an automorphism of Z_{q}²"
        )));
    }
    for x in 0..q {
        for y in 0..q {
            let (fx, fy) = f.apply(x, y, q);
            for a in 0..p {
                for b in 0..p {
                    if src.action.apply(x, y, a, b) != dst.action.apply(fx, fy, a, b) {
                        return Err(Error::TwistMismatch {
                            g: Elem::pair(x, y),
                            h: Elem::pair(a, b),
                        });
                    }
                }
            }
        }
    }
    let map = GroupMap::from_fn(&src.group, &dst.group, move |e| {
        let (fx, fy) = f.apply(e.get(2), e.get(3), q);
        Elem::quad(e.get(0), e.get(1), fx, fy)
    });
    if !map.is_isomorphism(limits) {
        return Err(Error::Internal(format!(
            "twist {f} from {} to {} is not an isomorphism",
            src.action.kind, dst.action.kind
        )));
    }
    Ok(map)
}

/// A model group and a verified isomorphism from it onto a lambda group.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub model: ModelGroup,
    /// model → Λ
    pub map: GroupMap,
}

impl Decomposition {
    pub fn kernel_order(&self) -> usize {
        self.model.action.kernel().len()
    }
}

/// The model action that describes `Λ` for a given label and variant.
pub fn action_kind_for(label: BraceLabel, variant: Variant, q: u32) -> Result<ActionKind> {
    use BraceLabel::*;
    let kind = match (variant, label) {
        (_, C) => ActionKind::Theta,
        (Variant::Standard, D) => ActionKind::Psi,
        (Variant::Standard, E) => ActionKind::Xi,
        (Variant::Standard, F(k)) if k == q => ActionKind::DeltaQ,
        (Variant::Standard, F(k)) => ActionKind::DeltaGamma(k),
        (Variant::Standard, G(k)) => ActionKind::DeltaMu(k),
        (Variant::Opposite, E) => ActionKind::Eta,
        (Variant::Opposite, G(2)) => ActionKind::Chi,
        (_, B) | (_, Trivial) => {
            return Err(Error::NotApplicable(format!(
                "Λ_{label} is abelian; it is a direct product"
            )))
        }
        _ => {
            return Err(Error::NotApplicable(format!(
                "no model recorded for the opposite of {label}"
            )))
        }
    };
    Ok(kind)
}

/// The model `(Z_p×Z_p) ⋊ (Z_q×Z_q)` of `Λ` and the verified isomorphism onto it.
pub fn canonical_decomposition(lg: &LambdaGroup, limits: &Limits) -> Result<Decomposition> {
    let params = lg.brace.params();
    let kind = action_kind_for(params.label, lg.variant, params.q)?;
    let model = CanonicalAction::new(kind, params.p, params.q)?.model(limits)?;
    decomposition_onto(lg, &model, limits)
}

/// Like [`canonical_decomposition`] but reuses an existing model group, so the
/// resulting map composes with other maps on that model.
///
/// The map sends `((a, b), (x, y))` to `P₁^a P₂^b Q₁^x Q₂^y` with
/// `P₁ = ((1,0),(0,0))`, `P₂ = ((0,0),(1,0))`, `Q₁ = ((0,1),(0,0))`,
/// `Q₂ = ((0,0),(0,1))`.
pub fn decomposition_onto(
    lg: &LambdaGroup,
    model: &ModelGroup,
    limits: &Limits,
) -> Result<Decomposition> {
    let params = lg.brace.params();
    let expected = action_kind_for(params.label, lg.variant, params.q)?;
    if model.action.kind != expected || model.action.p != params.p || model.action.q != params.q {
        return Err(Error::Parameter(format!(
            "Λ_{} needs the {expected} model, got {}",
            params.label, model.action.kind
        )));
    }
    let lam = lg.group.clone();
    let gens = [
        Elem::quad(1, 0, 0, 0),
        Elem::quad(0, 0, 1, 0),
        Elem::quad(0, 1, 0, 0),
        Elem::quad(0, 0, 0, 1),
    ];
    let map = GroupMap::from_fn(&model.group, &lg.group, move |e| {
        gens.iter()
            .zip(e.coords())
            .fold(lam.identity(), |acc, (&s, &k)| {
                lam.mul(acc, lam.pow(s, k as u64))
            })
    });
    if !map.is_isomorphism(limits) {
        return Err(Error::Internal(format!(
            "{} model does not match {}",
            model.action.kind,
            lg.group.name()
        )));
    }
    Ok(Decomposition {
        model: model.clone(),
        map,
    })
}

/// How one member of an isomorphism class was tied to the class representative.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub member: BraceLabel,
    /// Steps of the constructive isomorphism `Λ_member → Λ_representative`.
    pub chain: Vec<String>,
    /// Whether the brute-force search independently found an isomorphism; `None`
    /// when the groups exceed the search capacity.
    pub brute_force: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoClass {
    pub representative: BraceLabel,
    pub members: Vec<BraceLabel>,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoClassification {
    pub p: u32,
    pub q: u32,
    pub classes: Vec<IsoClass>,
    /// Representatives pairwise have distinct invariant fingerprints.
    pub representatives_distinct: bool,
}

impl IsoClassification {
    pub fn class_of(&self, label: BraceLabel) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&label))
    }
}

/// Class representative for a label in the constructive classification.
fn class_root(label: BraceLabel, q: u32) -> BraceLabel {
    use BraceLabel::*;
    match label {
        F(k) if k < q => D,
        G(_) => D,
        F(_) => E,
        other => other,
    }
}

struct Chains<'a> {
    limits: &'a Limits,
    p: u32,
    q: u32,
    standard: BTreeMap<BraceLabel, LambdaGroup>,
    models: BTreeMap<ActionKind, ModelGroup>,
}

impl Chains<'_> {
    fn model(&mut self, kind: ActionKind) -> Result<ModelGroup> {
        if let Some(m) = self.models.get(&kind) {
            return Ok(m.clone());
        }
        let m = CanonicalAction::new(kind, self.p, self.q)?.model(self.limits)?;
        self.models.insert(kind, m.clone());
        Ok(m)
    }

    fn onto(&mut self, lg: &LambdaGroup, kind: ActionKind) -> Result<GroupMap> {
        let model = self.model(kind)?;
        Ok(decomposition_onto(lg, &model, self.limits)?.map)
    }

    fn twist(&mut self, from: ActionKind, to: ActionKind, f: Twist) -> Result<GroupMap> {
        let a = self.model(from)?;
        let b = self.model(to)?;
        twist_isomorphism(&a, &b, f, self.limits)
    }

    fn std(&self, label: BraceLabel) -> &LambdaGroup {
        &self.standard[&label]
    }

    fn invert(m: GroupMap) -> Result<GroupMap> {
        m.inverse()
            .ok_or_else(|| Error::Internal("decomposition map is not invertible".into()))
    }

    /// Constructive isomorphism `Λ_label → Λ_root` with a readable step list.
    fn chain(&mut self, label: BraceLabel) -> Result<(GroupMap, Vec<String>)> {
        use BraceLabel::*;
        let q = self.q;
        let lg = self.std(label).clone();
        let (map, steps) = match label {
            F(k) if k < q => {
                let dk = ActionKind::DeltaGamma(k);
                let m = Self::invert(self.onto(&lg, dk)?)?
                    .then(&self.twist(dk, ActionKind::Psi, Twist::HGamma(k))?)?
                    .then(&self.onto(&self.std(D).clone(), ActionKind::Psi)?)?;
                let steps = vec![
                    format!("Λ_{label} ≅ P ⋊_{dk} Q"),
                    format!("{dk} = ψ∘{}", Twist::HGamma(k)),
                    "P ⋊_ψ Q ≅ Λ_D".to_string(),
                ];
                (m, steps)
            }
            G(k) => {
                let dk = ActionKind::DeltaMu(k);
                let d2 = ActionKind::DeltaMu(2);
                let g2 = self.std(G(2)).clone();
                let g2op = build_lambda_group(g2.brace(), Variant::Opposite, self.limits)?;
                let op = op_isomorphism(&g2, &g2op, self.limits)?;
                let m = Self::invert(self.onto(&lg, dk)?)?
                    .then(&self.twist(dk, ActionKind::Beta, Twist::HMu(k))?)?
                    .then(&self.twist(ActionKind::Beta, d2, Twist::Identity)?)?
                    .then(&self.onto(&g2, d2)?)?
                    .then(&op.to_opposite)?
                    .then(&Self::invert(self.onto(&g2op, ActionKind::Chi)?)?)?
                    .then(&self.twist(ActionKind::Chi, ActionKind::Psi, Twist::FG2)?)?
                    .then(&self.onto(&self.std(D).clone(), ActionKind::Psi)?)?;
                let steps = vec![
                    format!("Λ_{label} ≅ P ⋊_{dk} Q"),
                    format!("{dk} = β∘{}", Twist::HMu(k)),
                    format!("β = {d2}"),
                    "P ⋊_{δ_μ[μ=2]} Q ≅ Λ_G:2".to_string(),
                    "Λ_G:2 ≅ Λ_G:2^op via (x,y) ↦ (xy⁻¹,y)".to_string(),
                    "Λ_G:2^op ≅ P ⋊_χ Q".to_string(),
                    format!("χ = ψ∘{}", Twist::FG2),
                    "P ⋊_ψ Q ≅ Λ_D".to_string(),
                ];
                (m, steps)
            }
            F(_) => {
                let e = self.std(E).clone();
                let eop = build_lambda_group(e.brace(), Variant::Opposite, self.limits)?;
                let op = op_isomorphism(&e, &eop, self.limits)?;
                let m = Self::invert(self.onto(&lg, ActionKind::DeltaQ)?)?
                    .then(&self.twist(ActionKind::DeltaQ, ActionKind::Eta, Twist::FE)?)?
                    .then(&self.onto(&eop, ActionKind::Eta)?)?
                    .then(&op.to_standard)?;
                let steps = vec![
                    format!("Λ_{label} ≅ P ⋊_δ_q Q"),
                    format!("δ_q = η∘{}", Twist::FE),
                    "P ⋊_η Q ≅ Λ_E^op".to_string(),
                    "Λ_E^op ≅ Λ_E via (x,y) ↦ (xy,y)".to_string(),
                ];
                (m, steps)
            }
            _ => (GroupMap::identity(lg.group()), vec!["identity".to_string()]),
        };
        if !map.is_isomorphism(self.limits) {
            return Err(Error::Internal(format!(
                "chain for {label} is not an isomorphism"
            )));
        }
        Ok((map, steps))
    }
}

/// Partitions the lambda groups of the catalog into isomorphism classes, by
/// explicit twist chains and, independently, by the brute-force search (or by
/// fingerprints alone above the search capacity). Disagreement is an error.
pub fn iso_classes(p: u32, q: u32, limits: &Limits) -> Result<IsoClassification> {
    let braces = catalog(p, q, limits)?;
    let groups = par::map_slice(&braces, |b| {
        build_lambda_group(b, Variant::Standard, limits)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let labels: Vec<BraceLabel> = braces.iter().map(SkewBrace::label).collect();

    // constructive partition
    let mut chains = Chains {
        limits,
        p,
        q,
        standard: labels.iter().copied().zip(groups.iter().cloned()).collect(),
        models: BTreeMap::new(),
    };
    let mut classes: Vec<IsoClass> = Vec::new();
    for &label in &labels {
        let root = class_root(label, q);
        let (map, chain) = chains.chain(label)?;
        if !Arc::ptr_eq(map.target(), chains.std(root).group()) {
            return Err(Error::Internal(format!(
                "chain for {label} ends off its root"
            )));
        }
        let witness = Witness {
            member: label,
            chain,
            brute_force: None,
        };
        match classes.iter_mut().find(|c| c.representative == root) {
            Some(c) => {
                c.members.push(label);
                c.witnesses.push(witness);
            }
            None => classes.push(IsoClass {
                representative: root,
                members: vec![label],
                witnesses: vec![witness],
            }),
        }
    }

    // oracle partition, independent of the chains
    let fps = par::map_slice(&groups, |g| fingerprint(g.group()));
    let mut oracle: Vec<Vec<usize>> = Vec::new();
    let mut confirmed: BTreeMap<BraceLabel, Option<bool>> = BTreeMap::new();
    for (i, g) in groups.iter().enumerate() {
        let mut placed = false;
        for cell in oracle.iter_mut() {
            let r = cell[0];
            if fps[r] != fps[i] {
                continue;
            }
            let verdict = match brute_force_isomorphic(g.group(), groups[r].group(), limits) {
                Ok(found) => Some(found.is_some()),
                Err(Error::Capacity { .. }) => None,
                Err(e) => return Err(e),
            };
            if verdict != Some(false) {
                cell.push(i);
                confirmed.insert(labels[i], verdict);
                placed = true;
                break;
            }
        }
        if !placed {
            confirmed.insert(labels[i], Some(true));
            oracle.push(vec![i]);
        }
    }
    let as_sets = |cells: Vec<BTreeSet<BraceLabel>>| cells.into_iter().collect::<BTreeSet<_>>();
    let constructive = as_sets(
        classes
            .iter()
            .map(|c| c.members.iter().copied().collect())
            .collect(),
    );
    let independent = as_sets(
        oracle
            .iter()
            .map(|cell| cell.iter().map(|&i| labels[i]).collect())
            .collect(),
    );
    if constructive != independent {
        return Err(Error::Inconsistency(format!(
            "twist chains give {constructive:?}, brute force gives {independent:?}"
        )));
    }
    for c in classes.iter_mut() {
        for w in c.witnesses.iter_mut() {
            w.brute_force = confirmed.get(&w.member).copied().flatten();
        }
    }
    let roots: Vec<usize> = classes
        .iter()
        .map(|c| labels.iter().position(|&l| l == c.representative).unwrap())
        .collect();
    let representatives_distinct = roots
        .iter()
        .enumerate()
        .all(|(i, &a)| roots[i + 1..].iter().all(|&b| fps[a] != fps[b]));
    Ok(IsoClassification {
        p,
        q,
        classes,
        representatives_distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{make_brace, BraceParams};

    fn brace(p: u32, q: u32, label: BraceLabel) -> SkewBrace {
        make_brace(BraceParams::new(p, q, label).unwrap(), &Limits::default()).unwrap()
    }

    fn lambda(p: u32, q: u32, label: BraceLabel) -> LambdaGroup {
        build_lambda_group(&brace(p, q, label), Variant::Standard, &Limits::default()).unwrap()
    }

    #[test]
    fn lambda_group_orders_and_commutators() {
        let b = lambda(3, 2, BraceLabel::B);
        assert_eq!(b.group().order(), 36);
        assert!(b.group().is_abelian());
        let c = lambda(3, 2, BraceLabel::C);
        assert!(!c.group().is_abelian());
        assert_eq!(c.group().commutator_subgroup().len(), 9);
        assert_eq!(
            lambda(7, 3, BraceLabel::E)
                .group()
                .commutator_subgroup()
                .len(),
            7
        );
        assert_eq!(
            lambda(3, 2, BraceLabel::E)
                .group()
                .commutator_subgroup()
                .len(),
            3
        );
        assert_eq!(
            lambda(3, 2, BraceLabel::D)
                .group()
                .commutator_subgroup()
                .len(),
            9
        );
    }

    #[test]
    fn lambda_groups_satisfy_group_axioms() {
        for b in catalog(3, 2, &Limits::default()).unwrap() {
            for v in [Variant::Standard, Variant::Opposite] {
                let lg = build_lambda_group(&b, v, &Limits::default()).unwrap();
                lg.group().check_axioms(&Limits::default()).unwrap();
            }
        }
    }

    #[test]
    fn canonical_actions_are_actions() {
        let l = Limits::default();
        for (p, q) in [(3, 2), (7, 3)] {
            let mut kinds = vec![
                ActionKind::Theta,
                ActionKind::Psi,
                ActionKind::Xi,
                ActionKind::DeltaQ,
                ActionKind::Eta,
                ActionKind::Chi,
                ActionKind::Beta,
            ];
            kinds.extend((2..q).map(ActionKind::DeltaGamma));
            kinds.extend((2..=q).map(ActionKind::DeltaMu));
            for k in kinds {
                let a = CanonicalAction::new(k, p, q).unwrap();
                for x in 0..p {
                    for y in 0..p {
                        assert_eq!(a.apply(0, 0, x, y), (x, y));
                    }
                }
                a.model(&l)
                    .unwrap_or_else(|e| panic!("{k} at ({p},{q}): {e}"));
            }
        }
    }

    #[test]
    fn kernels() {
        let (p, q) = (7, 3);
        let size = |k| CanonicalAction::new(k, p, q).unwrap().kernel().len();
        assert_eq!(size(ActionKind::Theta), 3);
        assert_eq!(size(ActionKind::Xi), 3);
        assert_eq!(size(ActionKind::DeltaQ), 3);
        assert_eq!(size(ActionKind::Psi), 1);
        assert_eq!(size(ActionKind::DeltaGamma(2)), 1);
        assert_eq!(size(ActionKind::DeltaMu(3)), 1);
    }

    #[test]
    fn decompositions_exist_for_every_nonabelian_label() {
        let l = Limits::default();
        for (p, q) in [(3, 2), (7, 3)] {
            for b in catalog(p, q, &l).unwrap() {
                let lg = build_lambda_group(&b, Variant::Standard, &l).unwrap();
                match b.label() {
                    BraceLabel::B => assert!(matches!(
                        canonical_decomposition(&lg, &l),
                        Err(Error::NotApplicable(_))
                    )),
                    _ => {
                        canonical_decomposition(&lg, &l).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn opposite_decompositions() {
        let l = Limits::default();
        for label in [BraceLabel::E, BraceLabel::G(2), BraceLabel::C] {
            let b = brace(7, 3, label);
            let lg = build_lambda_group(&b, Variant::Opposite, &l).unwrap();
            canonical_decomposition(&lg, &l).unwrap();
        }
    }

    #[test]
    fn op_isomorphism_holds_for_the_catalog() {
        let l = Limits::default();
        for b in catalog(3, 2, &l).unwrap() {
            verify_op_isomorphism(&b, &l).unwrap();
        }
        verify_op_isomorphism(&brace(7, 3, BraceLabel::G(3)), &l).unwrap();
    }

    #[test]
    fn literal_forward_map_fails_for_e() {
        // (x,y) ↦ (xy,y) read as Λ_A → Λ_{A^op}
        let l = Limits::default();
        let b = brace(3, 2, BraceLabel::E);
        let s = build_lambda_group(&b, Variant::Standard, &l).unwrap();
        let o = build_lambda_group(&b, Variant::Opposite, &l).unwrap();
        let add = b.add().clone();
        let m = GroupMap::from_fn(s.group(), o.group(), move |e| {
            let (x, y) = e.split(2);
            Elem::concat(add.mul(x, y), y)
        });
        assert!(m.is_bijective());
        assert!(!m.is_homomorphism(&l));
    }

    #[test]
    fn commutator_structure() {
        let l = Limits::default();
        for b in catalog(3, 2, &l).unwrap() {
            let lg = build_lambda_group(&b, Variant::Standard, &l).unwrap();
            assert!(verify_commutator_structure(&lg).unwrap(), "{}", b.label());
        }
        let f = lambda(3, 2, BraceLabel::F(2));
        assert_eq!(f.group().commutator_subgroup().len(), 3);
        assert!(f.brace().circ().is_abelian());
    }

    #[test]
    fn twists() {
        let l = Limits::default();
        let psi = CanonicalAction::new(ActionKind::Psi, 7, 3)
            .unwrap()
            .model(&l)
            .unwrap();
        let id = twist_isomorphism(&psi, &psi, Twist::Identity, &l).unwrap();
        assert!(psi.group.elements().all(|e| id.apply(e) == e));
        let d2 = CanonicalAction::new(ActionKind::DeltaGamma(2), 7, 3)
            .unwrap()
            .model(&l)
            .unwrap();
        twist_isomorphism(&d2, &psi, Twist::HGamma(2), &l).unwrap();
        assert!(matches!(
            twist_isomorphism(&d2, &psi, Twist::FE, &l),
            Err(Error::TwistMismatch { .. })
        ));
        let dq = CanonicalAction::new(ActionKind::DeltaQ, 3, 2)
            .unwrap()
            .model(&l)
            .unwrap();
        let eta = CanonicalAction::new(ActionKind::Eta, 3, 2)
            .unwrap()
            .model(&l)
            .unwrap();
        twist_isomorphism(&dq, &eta, Twist::FE, &l).unwrap();
        assert!(!Twist::HGamma(3).is_bijective(3));
    }

    #[test]
    fn classes_at_smallest_orders() {
        let l = Limits::default();
        let single = iso_classes(5, 3, &l).unwrap();
        assert_eq!(single.classes.len(), 1);
        let small = iso_classes(3, 2, &l).unwrap();
        assert_eq!(small.classes.len(), 4);
        assert!(small.representatives_distinct);
        use BraceLabel::*;
        let cell = |x| small.class_of(x).unwrap();
        assert_eq!(cell(D), cell(G(2)));
        assert_eq!(cell(E), cell(F(2)));
        assert_ne!(cell(B), cell(C));
        assert_ne!(cell(C), cell(D));
        assert_ne!(cell(D), cell(E));
    }
}
