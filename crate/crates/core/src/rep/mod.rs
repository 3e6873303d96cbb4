//! Complex representations of lambda groups and of braces.
//!
//! Irrep profiles are computed three ways: exactly from `[G:G']` and `k(G)`
//! ([`profile_by_counting`]), from the kernel of the model action
//! ([`faithfulness_route`]), and from the orbit data of the little-group method
//! ([`mackey::mackey_dimensions`]). [`profile_for_brace`] demands that all
//! applicable routes agree.

pub mod brace_rep;
pub mod character;
pub mod mackey;
pub mod matrix;
pub mod matrix_rep;

use std::collections::BTreeMap;

use serde::Serialize;

pub use brace_rep::{brace_to_group_rep, check_brace_rep, dihedral_rep_of_c, BraceRep};
pub use character::{character_of, inner_product, is_irreducible, Character};
pub use mackey::{mackey_dimensions, mackey_irreps, MackeyIrrep};
pub use matrix::{CMatrix, ComplexScalar};
pub use matrix_rep::MatrixRep;

use crate::brace::{BraceLabel, SkewBrace, Variant};
use crate::config::{Limits, Tolerances};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lambda_group::{build_lambda_group, canonical_decomposition, Decomposition};

/// Multiplicity of each irreducible dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrepProfile {
    classes: usize,
    #[serde(rename = "irreps")]
    multiplicities: BTreeMap<u64, u64>,
    #[serde(skip)]
    total: u64,
}

impl IrrepProfile {
    /// Zero counts are dropped.
    pub fn from_counts(counts: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut multiplicities = BTreeMap::new();
        for (d, c) in counts {
            if c > 0 {
                *multiplicities.entry(d).or_insert(0) += c;
            }
        }
        let classes = multiplicities.values().sum::<u64>() as usize;
        let total = multiplicities.iter().map(|(d, c)| c * d * d).sum();
        Self {
            classes,
            multiplicities,
            total,
        }
    }

    pub fn from_dims(dims: impl IntoIterator<Item = u64>) -> Self {
        Self::from_counts(dims.into_iter().map(|d| (d, 1)))
    }

    pub fn multiplicities(&self) -> &BTreeMap<u64, u64> {
        &self.multiplicities
    }

    pub fn count(&self, dim: u64) -> u64 {
        self.multiplicities.get(&dim).copied().unwrap_or(0)
    }

    /// `cd(G)`.
    pub fn support(&self) -> Vec<u64> {
        self.multiplicities.keys().copied().collect()
    }

    /// Number of irreducibles, which equals the number of conjugacy classes.
    pub fn classes(&self) -> usize {
        self.classes
    }

    /// `Σ count·dim²`, which equals the group order.
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl std::fmt::Display for IrrepProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (d, c)) in self.multiplicities.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}: {c}")?;
        }
        write!(f, "}}")
    }
}

/// A profile tagged with the brace it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraceProfile {
    pub p: u32,
    pub q: u32,
    pub brace: BraceLabel,
    #[serde(flatten)]
    pub profile: IrrepProfile,
}

/// `[G : G']`.
pub fn linear_count(g: &FiniteGroup) -> usize {
    g.order() / g.commutator_subgroup().len()
}

/// The unique nonnegative solution of
/// `n₁ = [G:G']`, `n₁ + n_q + n_{q²} = k(G)`, `n₁ + q²n_q + q⁴n_{q²} = |G|`.
pub fn profile_by_counting(g: &FiniteGroup, p: u32, q: u32) -> Result<IrrepProfile> {
    let (p64, q2) = (p as i64, (q as i64).pow(2));
    let order = g.order() as i64;
    if order != p64 * p64 * q2 {
        return Err(Error::Parameter(format!(
            "{} has order {order}, expected p²q² = {}",
            g.name(),
            p64 * p64 * q2
        )));
    }
    let n1 = linear_count(g) as i64;
    let k = g.class_count() as i64;
    let (r, s) = (k - n1, order - n1);
    let num = s - r * q2;
    let den = q2 * q2 - q2;
    let inconsistent = || {
        Error::Inconsistency(format!(
            "no nonnegative solution for {}: [G:G'] = {n1}, k(G) = {k}",
            g.name()
        ))
    };
    if num < 0 || num % den != 0 {
        return Err(inconsistent());
    }
    let nq2 = num / den;
    let nq = r - nq2;
    if nq < 0 {
        return Err(inconsistent());
    }
    Ok(IrrepProfile::from_counts([
        (1, n1 as u64),
        (q as u64, nq as u64),
        (q2 as u64, nq2 as u64),
    ]))
}

/// When `Q` does not act faithfully, every irreducible has dimension 1 or `q`,
/// and with `|G'| = pⁱ` there are `p^{2-i}q²` linear ones and `p² - p^{2-i}` of
/// dimension `q`. Returns `None` for a faithful action.
pub fn faithfulness_route(d: &Decomposition) -> Result<Option<IrrepProfile>> {
    let (p, q) = (d.model.action.p() as u64, d.model.action.q() as u64);
    let kernel = d.kernel_order() as u64;
    if kernel == 1 {
        return Ok(None);
    }
    if kernel != q && kernel != q * q {
        return Err(Error::Internal(format!(
            "action kernel of order {kernel} is not a subgroup order of Z_q²"
        )));
    }
    let derived = d.model.group.commutator_subgroup().len() as u64;
    let i = match derived {
        1 => 0,
        x if x == p => 1,
        x if x == p * p => 2,
        x => {
            return Err(Error::Inconsistency(format!(
                "|G'| = {x} is not a power of p = {p} up to p²"
            )))
        }
    };
    let linear = p.pow(2 - i) * q * q;
    Ok(Some(IrrepProfile::from_counts([
        (1, linear),
        (q, p * p - p.pow(2 - i)),
    ])))
}

/// The profile as seen by each route; `None` where a route does not apply.
#[derive(Clone, Debug, Serialize)]
pub struct RouteProfiles {
    pub counting: IrrepProfile,
    pub faithfulness: Option<IrrepProfile>,
    pub mackey: Option<IrrepProfile>,
    pub kernel_order: Option<usize>,
}

impl RouteProfiles {
    pub fn agree(&self) -> bool {
        [&self.faithfulness, &self.mackey]
            .into_iter()
            .flatten()
            .all(|r| r.multiplicities == self.counting.multiplicities)
    }
}

pub fn profile_routes(b: &SkewBrace, limits: &Limits) -> Result<RouteProfiles> {
    let params = b.params();
    let lg = build_lambda_group(b, Variant::Standard, limits)?;
    let counting = profile_by_counting(lg.group(), params.p, params.q)?;
    let decomposition = match canonical_decomposition(&lg, limits) {
        Ok(d) => Some(d),
        Err(Error::NotApplicable(_)) => None,
        Err(e) => return Err(e),
    };
    let (faithfulness, mackey, kernel_order) = match &decomposition {
        Some(d) => (
            faithfulness_route(d)?,
            Some(IrrepProfile::from_counts(mackey_dimensions(
                &d.model.action,
            ))),
            Some(d.kernel_order()),
        ),
        None => (None, None, None),
    };
    Ok(RouteProfiles {
        counting,
        faithfulness,
        mackey,
        kernel_order,
    })
}

/// The irrep profile of `Λ_A`, with every applicable route cross-checked.
pub fn profile_for_brace(b: &SkewBrace, limits: &Limits) -> Result<BraceProfile> {
    let routes = profile_routes(b, limits)?;
    if !routes.agree() {
        let show = |r: &Option<IrrepProfile>| r.as_ref().map_or("-".into(), |x| x.to_string());
        return Err(Error::Inconsistency(format!(
            "profiles of Λ_{} disagree: counting {}, faithfulness {}, mackey {}",
            b.label(),
            routes.counting,
            show(&routes.faithfulness),
            show(&routes.mackey)
        )));
    }
    let params = b.params();
    Ok(BraceProfile {
        p: params.p,
        q: params.q,
        brace: params.label,
        profile: routes.counting,
    })
}

/// Outcome of building every irreducible representation of `Λ_A` explicitly.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub irreps: usize,
    pub dims: BTreeMap<u64, u64>,
    pub sum_of_squares: u64,
    pub homomorphism_defect: f64,
    pub irreducible: bool,
    pub orthonormality_defect: f64,
    pub pass: bool,
}

/// Every irreducible representation of `Λ_A`: linear characters when `Λ_A` is
/// abelian, otherwise the little-group construction on the model pulled back
/// to `Λ_A`.
pub fn construct_irreps(b: &SkewBrace, limits: &Limits) -> Result<Vec<MatrixRep>> {
    let lg = build_lambda_group(b, Variant::Standard, limits)?;
    match canonical_decomposition(&lg, limits) {
        Ok(d) => {
            let back = d
                .map
                .inverse()
                .ok_or_else(|| Error::Internal("decomposition is not bijective".into()))?;
            mackey_irreps(&d.model)?
                .iter()
                .map(|m| m.rep.pull_back(&back))
                .collect()
        }
        Err(Error::NotApplicable(_)) => abelian_characters(lg.group()),
        Err(e) => Err(e),
    }
}

/// Linear characters `e ↦ Π ω_{mᵢ}^{kᵢeᵢ}` of a group whose law is
/// coordinatewise addition modulo its moduli.
pub fn abelian_characters(g: &crate::group::GroupRef) -> Result<Vec<MatrixRep>> {
    if !g.is_abelian() {
        return Err(Error::NotApplicable(format!("{} is not abelian", g.name())));
    }
    let moduli = g.moduli().to_vec();
    g.elements()
        .map(|k| {
            MatrixRep::from_fn(g, |e| {
                let z = moduli
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| matrix::root_of_unity(m, k.get(i) as i64 * e.get(i) as i64))
                    .product();
                CMatrix::scalar(z)
            })
        })
        .collect()
}

/// Builds every irrep and checks the homomorphism law, irreducibility,
/// pairwise inequivalence and `Σ dim² = |Λ_A|`.
pub fn construction_report(
    b: &SkewBrace,
    limits: &Limits,
    tol: &Tolerances,
) -> Result<ConstructionReport> {
    let reps = construct_irreps(b, limits)?;
    let homomorphism_defect = reps
        .iter()
        .map(|r| r.homomorphism_defect(limits))
        .fold(0.0, f64::max);
    let chars: Vec<Character> = reps.iter().map(character_of).collect();
    let irreducible = chars.iter().all(|c| is_irreducible(c, tol.character));
    let orthonormality_defect = character::orthonormality_defect(&chars);
    let mut dims = BTreeMap::new();
    for r in &reps {
        *dims.entry(r.dim() as u64).or_insert(0) += 1;
    }
    let sum_of_squares = dims.iter().map(|(d, c)| c * d * d).sum();
    let order = reps.first().map_or(0, |r| r.group().order() as u64);
    let pass = homomorphism_defect <= tol.matrix
        && irreducible
        && orthonormality_defect <= tol.character
        && sum_of_squares == order;
    Ok(ConstructionReport {
        irreps: reps.len(),
        dims,
        sum_of_squares,
        homomorphism_defect,
        irreducible,
        orthonormality_defect,
        pass,
    })
}
