//! The Hermitian tuple `(1, 1, C_m, N1 ⋊ C_m, N2 ⋊ C_m, P1, P2)` with its
//! built-in witnesses `t1^m` and `t2^m`.

use thiserror::Error;

use crate::criterion::{verify_tuple, CriterionError, CriterionReport, CriterionTuple, Witness};
use crate::funcfield::{CurveFunction, FunctionField};
use crate::groups::{self, closure_cap, GroupError, MatrixGroup};
use crate::projective::{HermitianCurve, ProjectiveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Curve(#[from] ProjectiveError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Criterion(#[from] CriterionError),
}

#[derive(Debug, Clone)]
pub struct HermitianInstance {
    pub curve: HermitianCurve,
    pub m: u64,
    pub n1: MatrixGroup,
    pub n2: MatrixGroup,
    pub h: MatrixGroup,
    pub g1: MatrixGroup,
    pub g2: MatrixGroup,
}

impl HermitianInstance {
    pub fn new(p: u64, e: u32, m: u64) -> Result<Self, InstanceError> {
        let curve = HermitianCurve::new(p, e)?;
        let h = groups::cyclic_subgroup(&curve, m)?;
        let n1 = groups::n1_subgroup(&curve);
        let n2 = groups::n2_subgroup(&curve);
        let ctx = curve.field();
        let join = |n: &MatrixGroup| {
            let gens: Vec<_> = n.generators().iter().chain(h.generators()).copied().collect();
            MatrixGroup::closure(ctx, &gens, closure_cap())
        };
        let g1 = join(&n1)?;
        let g2 = join(&n2)?;
        Ok(HermitianInstance { curve, m, n1, n2, h, g1, g2 })
    }

    pub fn q(&self) -> u64 {
        self.curve.q()
    }

    pub fn function_field(&self) -> FunctionField {
        FunctionField::new(&self.curve)
    }

    /// `t1^m`, generating `k(X)^{G1}`, pole at `P1`.
    pub fn witness1(&self) -> Witness {
        let ff = self.function_field();
        Witness { name: format!("t1^{}", self.m), function: ff.f_pow(&ff.t1(), self.m), pole_point: self.curve.p1() }
    }

    /// `t2^m`, generating `k(X)^{G2}`, pole at `P2`.
    pub fn witness2(&self) -> Witness {
        let ff = self.function_field();
        Witness { name: format!("t2^{}", self.m), function: ff.f_pow(&ff.t2(), self.m), pole_point: self.curve.p2() }
    }

    pub fn tuple(&self) -> CriterionTuple {
        let one = MatrixGroup::trivial(self.curve.field());
        CriterionTuple {
            curve: self.curve.clone(),
            n: [one.clone(), one],
            h: self.h.clone(),
            g: [self.g1.clone(), self.g2.clone()],
            p: [self.curve.p1(), self.curve.p2()],
            witnesses: [self.witness1(), self.witness2()],
            sylow: Some([self.n1.clone(), self.n2.clone()]),
        }
    }

    pub fn verify(&self) -> Result<CriterionReport, InstanceError> {
        Ok(verify_tuple(&self.tuple())?)
    }

    pub fn witness_functions(&self) -> (CurveFunction, CurveFunction) {
        (self.witness1().function, self.witness2().function)
    }
}
