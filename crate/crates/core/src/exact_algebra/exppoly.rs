use super::{Block, MultiPoly, Scalar};
use crate::arrangements::Arrangement;
use crate::AlgebraError;
use num_complex::Complex64;

/// `P(x, lambda) * e^{(x, lambda)}` with the exponential factor implicit.
///
/// Arithmetic never drops the factor; two values are equal iff their
/// polynomial parts are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpPoly {
    pub poly: MultiPoly,
}

impl ExpPoly {
    pub fn new(poly: MultiPoly) -> Self {
        ExpPoly { poly }
    }

    pub fn arity(&self) -> usize {
        self.poly.arity()
    }

    /// Numeric evaluation including the exponential factor.
    pub fn eval_complex(&self, x: &[Complex64], lambda: &[Complex64]) -> Complex64 {
        let pairing: Complex64 = x.iter().zip(lambda).map(|(a, b)| a * b).sum();
        self.poly.eval_complex(x, lambda) * pairing.exp()
    }

    /// Apply `(L - lambda^2)` to `P e^{(x,lambda)}` where `L` is the
    /// Calogero-Moser operator of the arrangement,
    /// `L = Delta - sum_alpha 2 m_alpha (alpha,x)^{-1} d_alpha`.
    ///
    /// Uses the identity
    /// `(L - lambda^2)(P e) = (Delta P + 2 (lambda, grad_x P)
    ///   - sum_alpha 2 m_alpha (alpha,x)^{-1} (d_alpha P + (alpha,lambda) P)) e`;
    /// the `lambda^2` terms cancel structurally and are never formed. Each
    /// division by `(alpha, x)` must be exact, otherwise the input was not
    /// quasi-invariant at the required order and `NonDivisible` is returned.
    pub fn apply_shifted_cm(&self, arrangement: &Arrangement) -> Result<ExpPoly, AlgebraError> {
        self.apply_shifted_cm_budgeted(arrangement, usize::MAX)
    }

    /// As [`apply_shifted_cm`](Self::apply_shifted_cm), aborting with
    /// `TermBudgetExceeded` as soon as the accumulated polynomial outgrows
    /// the monomial budget (checked per contribution, so a single
    /// application cannot silently exhaust memory).
    pub fn apply_shifted_cm_budgeted(
        &self,
        arrangement: &Arrangement,
        budget: usize,
    ) -> Result<ExpPoly, AlgebraError> {
        let n = self.arity();
        assert_eq!(n, arrangement.dim(), "arrangement dimension mismatch");
        let p = &self.poly;
        let check = |out: &MultiPoly| -> Result<(), AlgebraError> {
            if out.num_terms() > budget {
                Err(AlgebraError::TermBudgetExceeded { budget })
            } else {
                Ok(())
            }
        };

        // Delta P
        let mut out = MultiPoly::zero(n);
        for i in 0..n {
            out = out.add(&p.derivative(Block::X, i).derivative(Block::X, i))?;
        }
        // 2 (lambda, grad_x P)
        for i in 0..n {
            let term = p
                .derivative(Block::X, i)
                .mul(&MultiPoly::var(n, Block::Lambda, i))?;
            out = out.add(&term.scale(&Scalar::from_int(2)))?;
            check(&out)?;
        }
        // - sum_alpha 2 m_alpha (alpha,x)^{-1} (d_alpha P + (alpha,lambda) P)
        for v in arrangement.vectors() {
            let d_alpha = p.dir_derivative(&v.coords, Block::X)?;
            let al = MultiPoly::linear_form(n, Block::Lambda, &v.coords);
            let numerator = d_alpha.add(&al.mul(p)?)?;
            let quotient = numerator.exact_div_linear(&v.coords, Block::X)?;
            out = out.sub(&quotient.scale(&Scalar::from_int(2 * v.multiplicity as i64)))?;
            check(&out)?;
        }
        Ok(ExpPoly::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::Arrangement;

    /// Rank-one arrangement: single root `sqrt(2) e1` with multiplicity m.
    fn rank_one(m: u32) -> Arrangement {
        Arrangement::new(1, vec![(vec![Scalar::sqrt_int(2)], m)]).unwrap()
    }

    #[test]
    fn rank_one_trace() {
        // f = 2 x1^2 e^{x1 l1} -> (4 l1 x1 - 4) e^{x1 l1}
        let f = ExpPoly::new(
            MultiPoly::var(1, Block::X, 0)
                .pow(2)
                .unwrap()
                .scale(&Scalar::from_int(2)),
        );
        let out = f.apply_shifted_cm(&rank_one(1)).unwrap();
        let expect = MultiPoly::var(1, Block::X, 0)
            .mul(&MultiPoly::var(1, Block::Lambda, 0))
            .unwrap()
            .scale(&Scalar::from_int(4))
            .sub(&MultiPoly::constant(1, Scalar::from_int(4)))
            .unwrap();
        assert_eq!(out.poly, expect);
    }

    #[test]
    fn constant_is_not_divisible() {
        // f = e^{(x,lambda)}: the correction term requires dividing
        // (alpha,lambda) by (alpha,x), which fails.
        let f = ExpPoly::new(MultiPoly::one(1));
        assert!(matches!(
            f.apply_shifted_cm(&rank_one(1)),
            Err(AlgebraError::NonDivisible { .. })
        ));
    }

    #[test]
    fn empty_arrangement_free_laplacian() {
        // A empty: (L - lambda^2)(P e) = (Delta P + 2 (lambda, grad P)) e
        let empty = Arrangement::new(1, vec![]).unwrap();
        let p = MultiPoly::var(1, Block::X, 0).pow(2).unwrap();
        let out = ExpPoly::new(p).apply_shifted_cm(&empty).unwrap();
        // Delta x^2 = 2; 2 l * 2x = 4 x l
        let expect = MultiPoly::var(1, Block::X, 0)
            .mul(&MultiPoly::var(1, Block::Lambda, 0))
            .unwrap()
            .scale(&Scalar::from_int(4))
            .add(&MultiPoly::constant(1, Scalar::from_int(2)))
            .unwrap();
        assert_eq!(out.poly, expect);
    }
}
