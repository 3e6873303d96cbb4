//! Representations `(V, β, ρ)` of a brace and the group representations of
//! `Λ_{A^op}` they correspond to.

use std::sync::Arc;

use super::matrix::{root_of_unity, CMatrix, ComplexScalar};
use super::matrix_rep::MatrixRep;
use crate::brace::{BraceLabel, SkewBrace, Variant};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::lambda_group::{build_lambda_group, LambdaGroup};
use crate::par;

/// `β` represents `(A,·)`, `ρ` represents `(A,∘)`; both are assumed to be
/// verified group representations.
#[derive(Clone, Debug)]
pub struct BraceRep {
    pub brace: SkewBrace,
    pub beta: MatrixRep,
    pub rho: MatrixRep,
}

impl BraceRep {
    pub fn new(brace: &SkewBrace, beta: MatrixRep, rho: MatrixRep) -> Result<Self> {
        if !Arc::ptr_eq(beta.group(), brace.add()) || !Arc::ptr_eq(rho.group(), brace.circ()) {
            return Err(Error::Parameter(
                "β must live on (A,·) and ρ on (A,∘) of the given brace".into(),
            ));
        }
        Ok(Self {
            brace: brace.clone(),
            beta,
            rho,
        })
    }

    /// Largest entrywise deviation in `β(λᵒᵖ_a(b)) = ρ(a)β(b)ρ(a)⁻¹` over all
    /// `a, b`, with `ρ(a)⁻¹` taken as `ρ(a⁻¹)`.
    pub fn compatibility_defect(&self) -> Result<f64> {
        if self.beta.dim() != self.rho.dim() {
            return Err(Error::Shape(self.beta.dim(), self.rho.dim()));
        }
        let b = &self.brace;
        let circ = b.circ();
        let defects = par::map(b.order(), |i| {
            let a = circ.element(i);
            let ra = self.rho.image(a);
            let ra_inv = self.rho.image(circ.inv(a));
            b.elements()
                .map(|x| {
                    let lhs = self.beta.image(b.lambda_op(a, x));
                    let rhs = &(ra * self.beta.image(x)) * ra_inv;
                    lhs.max_diff(&rhs)
                })
                .fold(0.0, f64::max)
        });
        Ok(defects.into_iter().fold(0.0, f64::max))
    }
}

/// Whether the compatibility law holds within `tol` for every pair.
pub fn check_brace_rep(r: &BraceRep, tol: f64) -> Result<bool> {
    Ok(r.compatibility_defect()? <= tol)
}

/// `φ(a, b) = β(a)ρ(b)` on `Λ_{A^op} = (A,·) ⋊_{λᵒᵖ} (A,∘)`, verified as a
/// homomorphism.
pub fn brace_to_group_rep(
    r: &BraceRep,
    limits: &Limits,
    tol: f64,
) -> Result<(LambdaGroup, MatrixRep)> {
    if !check_brace_rep(r, tol)? {
        return Err(Error::Compatibility(format!(
            "(β, ρ) violates β(λᵒᵖ_a(b)) = ρ(a)β(b)ρ(a)⁻¹ for brace {}",
            r.brace.label()
        )));
    }
    let lg = build_lambda_group(&r.brace, Variant::Opposite, limits)?;
    let phi = MatrixRep::from_fn(lg.group(), |e| {
        let (a, b) = e.split(2);
        r.beta.image(a) * r.rho.image(b)
    })?;
    if !phi.is_homomorphism(limits, tol) {
        return Err(Error::Compatibility(format!(
            "β(a)ρ(b) is not a representation of {}",
            lg.group().name()
        )));
    }
    Ok((lg, phi))
}

/// The two-dimensional representation of `C` at `q = 2`:
/// `β(s, t) = diag(ω^s, ω^{-s})` and `ρ(n, m) = diag(ω^n, ω^{-n})·X^m`, where
/// `ω = e^{2πi/p}` and `X` swaps the basis vectors. At `p = 3`, `ω^{-s} = ω^{2s}`.
pub fn dihedral_rep_of_c(brace: &SkewBrace) -> Result<BraceRep> {
    let params = brace.params();
    if params.label != BraceLabel::C || params.q != 2 || brace.is_opposite() {
        return Err(Error::NotApplicable(format!(
            "the dihedral representation is defined for C with q = 2, not {} at q = {}",
            params.label, params.q
        )));
    }
    let p = params.p;
    let diag =
        |k: u32| CMatrix::diagonal(&[root_of_unity(p, k as i64), root_of_unity(p, -(k as i64))]);
    let (zero, one) = (ComplexScalar::new(0.0, 0.0), ComplexScalar::new(1.0, 0.0));
    let swap = CMatrix::from_rows(&[vec![zero, one], vec![one, zero]]);
    let beta = MatrixRep::from_fn(brace.add(), |e| diag(e.get(0)))?;
    let rho = MatrixRep::from_fn(brace.circ(), |e| {
        let d = diag(e.get(0));
        if e.get(1) == 1 {
            &d * &swap
        } else {
            d
        }
    })?;
    BraceRep::new(brace, beta, rho)
}
