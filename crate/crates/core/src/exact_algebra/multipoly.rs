use super::Scalar;
use crate::AlgebraError;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Which variable block an operation acts on: the `x`-block occupies
/// exponent slots `0..n`, the `lambda`-block slots `n..2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    X,
    Lambda,
}

/// Sparse multivariate polynomial in `x_1..x_n, lambda_1..lambda_n` with
/// [`Scalar`] coefficients. Exponent vectors have length `2n`; no zero
/// coefficients are stored. The `BTreeMap` keeps terms in lexicographic
/// order, which makes serialized output diff-stable.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    field_d: u32,
    terms: BTreeMap<Vec<u16>, Scalar>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly { arity, field_d: 0, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(arity);
        if !c.is_zero() {
            p.field_d = c.field_d();
            p.terms.insert(vec![0; 2 * arity], c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        MultiPoly::constant(arity, Scalar::one())
    }

    /// The monomial `v_i` in the given block.
    pub fn var(arity: usize, block: Block, i: usize) -> Self {
        assert!(i < arity, "variable index out of range");
        let mut exps = vec![0u16; 2 * arity];
        exps[slot(arity, block, i)] = 1;
        let mut p = MultiPoly::zero(arity);
        p.terms.insert(exps, Scalar::one());
        p
    }

    /// The linear form `(alpha, v)` over the given block.
    pub fn linear_form(arity: usize, block: Block, alpha: &[Scalar]) -> Self {
        assert_eq!(alpha.len(), arity, "direction length must equal arity");
        let mut p = MultiPoly::zero(arity);
        for (i, c) in alpha.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exps = vec![0u16; 2 * arity];
            exps[slot(arity, block, i)] = 1;
            p.insert_add(exps, c.clone());
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field_d(&self) -> u32 {
        self.field_d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Scalar)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&vec![0u16; 2 * self.arity])
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Total degree in the block (0 for the zero polynomial).
    pub fn degree(&self, block: Block) -> u16 {
        let n = self.arity;
        self.terms
            .keys()
            .map(|e| match block {
                Block::X => e[..n].iter().sum::<u16>(),
                Block::Lambda => e[n..].iter().sum::<u16>(),
            })
            .max()
            .unwrap_or(0)
    }

    /// The sub-polynomial of terms whose block-degree equals `deg`.
    pub fn homogeneous_part(&self, block: Block, deg: u16) -> MultiPoly {
        let n = self.arity;
        let mut out = MultiPoly::zero(n);
        for (e, c) in &self.terms {
            let d = match block {
                Block::X => e[..n].iter().sum::<u16>(),
                Block::Lambda => e[n..].iter().sum::<u16>(),
            };
            if d == deg {
                out.insert_add(e.clone(), c.clone());
            }
        }
        out
    }

    fn insert_add(&mut self, exps: Vec<u16>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        self.field_d = Scalar::join_field(self.field_d, c.field_d())
            .expect("field mismatch in polynomial term");
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn check_compat(&self, rhs: &MultiPoly) -> Result<u32, AlgebraError> {
        if self.arity != rhs.arity {
            return Err(AlgebraError::ArityMismatch(self.arity, rhs.arity));
        }
        Scalar::join_field(self.field_d, rhs.field_d)
            .ok_or(AlgebraError::FieldMismatch(self.field_d, rhs.field_d))
    }

    pub fn add(&self, rhs: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_compat(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_compat(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, rhs: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_compat(rhs)?;
        let mut out = MultiPoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let exps: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(exps, c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        if c.is_zero() {
            return out;
        }
        for (e, coeff) in &self.terms {
            out.insert_add(e.clone(), coeff.mul_ref(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<MultiPoly, AlgebraError> {
        let mut acc = MultiPoly::one(self.arity);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to a single variable.
    pub fn derivative(&self, block: Block, i: usize) -> MultiPoly {
        let s = slot(self.arity, block, i);
        let mut out = MultiPoly::zero(self.arity);
        for (e, c) in &self.terms {
            if e[s] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[s] -= 1;
            out.insert_add(exps, c.mul_ref(&Scalar::from_int(e[s] as i64)));
        }
        out
    }

    /// Directional derivative `sum_i alpha_i d/dv_i` over the block.
    pub fn dir_derivative(&self, alpha: &[Scalar], block: Block) -> Result<MultiPoly, AlgebraError> {
        if alpha.len() != self.arity {
            return Err(AlgebraError::ArityMismatch(alpha.len(), self.arity));
        }
        let mut out = MultiPoly::zero(self.arity);
        for (i, a) in alpha.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let di = self.derivative(block, i);
            out = out.add(&di.scale(a))?;
        }
        Ok(out)
    }

    /// Exact division by the linear form `(alpha, v)` over the block.
    ///
    /// Long division with respect to the pivot variable (the first one with a
    /// nonzero coefficient in `alpha`); the remainder does not involve the
    /// pivot. Divisibility fails exactly when the input is not in the ideal,
    /// which on Baker-Akhiezer data signals missing quasi-invariance.
    pub fn exact_div_linear(
        &self,
        alpha: &[Scalar],
        block: Block,
    ) -> Result<MultiPoly, AlgebraError> {
        self.div_linear_with_remainder(alpha, block).and_then(|(q, r)| {
            if r.is_zero() {
                Ok(q)
            } else {
                Err(AlgebraError::NonDivisible { remainder: Box::new(r) })
            }
        })
    }

    /// Quotient and remainder of division by `(alpha, v)`; the remainder has
    /// pivot-degree zero. `p = (alpha, v) * q + r`.
    pub fn div_linear_with_remainder(
        &self,
        alpha: &[Scalar],
        block: Block,
    ) -> Result<(MultiPoly, MultiPoly), AlgebraError> {
        if alpha.len() != self.arity {
            return Err(AlgebraError::ArityMismatch(alpha.len(), self.arity));
        }
        let pivot = alpha
            .iter()
            .position(|c| !c.is_zero())
            .expect("division by the zero linear form");
        let s = slot(self.arity, block, pivot);
        let cp_inv = alpha[pivot].inv();
        // rest = (alpha, v) - c_p v_p
        let mut rest = Vec::with_capacity(self.arity);
        for (i, c) in alpha.iter().enumerate() {
            rest.push(if i == pivot { Scalar::zero() } else { c.clone() });
        }
        let rest_poly = MultiPoly::linear_form(self.arity, block, &rest);

        let mut remainder = self.clone();
        let mut quotient = MultiPoly::zero(self.arity);
        let mut deg = remainder.terms.keys().map(|e| e[s]).max().unwrap_or(0);
        while deg >= 1 {
            // slice of pivot-degree `deg`, lowered by one and scaled
            let mut block_part = MultiPoly::zero(self.arity);
            for (e, c) in &remainder.terms {
                if e[s] == deg {
                    let mut exps = e.clone();
                    exps[s] -= 1;
                    block_part.insert_add(exps, c.mul_ref(&cp_inv));
                }
            }
            quotient = quotient.add(&block_part)?;
            // remainder -= block_part * (c_p v_p + rest); the v_p part cancels
            // the slice exactly, so only subtract block_part * rest and drop
            // the processed slice.
            remainder.terms.retain(|e, _| e[s] != deg);
            let cross = block_part.mul(&rest_poly)?;
            remainder = remainder.sub(&cross)?;
            deg = remainder.terms.keys().map(|e| e[s]).max().unwrap_or(0);
        }
        Ok((quotient, remainder))
    }

    /// Swap the `x` and `lambda` exponent blocks: `P(x, lambda) -> P(lambda, x)`.
    pub fn swap_blocks(&self) -> MultiPoly {
        let n = self.arity;
        let mut out = MultiPoly::zero(n);
        for (e, c) in &self.terms {
            let mut exps = vec![0u16; 2 * n];
            exps[..n].copy_from_slice(&e[n..]);
            exps[n..].copy_from_slice(&e[..n]);
            out.insert_add(exps, c.clone());
        }
        out
    }

    /// Numeric evaluation at complex points `(x, lambda)`.
    pub fn eval_complex(&self, x: &[Complex64], lambda: &[Complex64]) -> Complex64 {
        let n = self.arity;
        assert_eq!(x.len(), n);
        assert_eq!(lambda.len(), n);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64(), 0.0);
            for i in 0..n {
                if e[i] > 0 {
                    t *= x[i].powi(e[i] as i32);
                }
                if e[n + i] > 0 {
                    t *= lambda[i].powi(e[n + i] as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute numeric values for the lambda block, collapsing to a
    /// complex-coefficient polynomial in `x` for fast repeated evaluation.
    pub fn compile_x(&self, lambda: &[Complex64]) -> CompiledPoly {
        let n = self.arity;
        assert_eq!(lambda.len(), n);
        let mut map: BTreeMap<Vec<u16>, Complex64> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut coeff = Complex64::new(c.to_f64(), 0.0);
            for i in 0..n {
                if e[n + i] > 0 {
                    coeff *= lambda[i].powi(e[n + i] as i32);
                }
            }
            *map.entry(e[..n].to_vec()).or_insert(Complex64::new(0.0, 0.0)) += coeff;
        }
        CompiledPoly {
            terms: map.into_iter().collect(),
        }
    }
}

/// Complex-coefficient polynomial in the `x` variables, flattened for fast
/// evaluation inside quadrature loops.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(Vec<u16>, Complex64)>,
}

impl CompiledPoly {
    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = *c;
            for (i, &p) in e.iter().enumerate() {
                if p > 0 {
                    t *= x[i].powi(p as i32);
                }
            }
            acc += t;
        }
        acc
    }
}

fn slot(arity: usize, block: Block, i: usize) -> usize {
    match block {
        Block::X => i,
        Block::Lambda => arity + i,
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.arity;
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for i in 0..n {
                if e[i] > 0 {
                    write!(f, "*x{}^{}", i + 1, e[i])?;
                }
            }
            for i in 0..n {
                if e[n + i] > 0 {
                    write!(f, "*l{}^{}", i + 1, e[n + i])?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, Block::X, i)
    }

    #[test]
    fn monomial_product() {
        let x1 = x(1, 0);
        let sq = x1.mul(&x1).unwrap();
        assert_eq!(sq.degree(Block::X), 2);
        assert_eq!(sq.num_terms(), 1);
    }

    #[test]
    fn additive_identity() {
        let p = x(2, 0).mul(&x(2, 1)).unwrap();
        let z = MultiPoly::zero(2);
        assert_eq!(p.add(&z).unwrap(), p);
    }

    #[test]
    fn quadratic_field_coeffs() {
        // (1+sqrt2)*(1-sqrt2) as constant polys
        let one = Scalar::one();
        let r2 = Scalar::sqrt_int(2);
        let p = MultiPoly::constant(1, one.add_ref(&r2));
        let q = MultiPoly::constant(1, one.sub_ref(&r2));
        let prod = p.mul(&q).unwrap();
        assert_eq!(prod.constant_term(), Scalar::from_int(-1));
    }

    #[test]
    fn dir_derivative_basic() {
        // d_{(1,0)} x1^2 = 2 x1
        let p = x(2, 0).pow(2).unwrap();
        let d = p
            .dir_derivative(&[Scalar::one(), Scalar::zero()], Block::X)
            .unwrap();
        let expect = x(2, 0).scale(&Scalar::from_int(2));
        assert_eq!(d, expect);
    }

    #[test]
    fn dir_derivative_chain_rule_sqrt2() {
        // d_alpha (alpha, x)^k = k (alpha, alpha) (alpha, x)^{k-1}; alpha = sqrt2 e1, k = 3
        let alpha = vec![Scalar::sqrt_int(2)];
        let form = MultiPoly::linear_form(1, Block::X, &alpha);
        let p = form.pow(3).unwrap();
        let d = p.dir_derivative(&alpha, Block::X).unwrap();
        // 3 * 2 * (sqrt2 x)^2 = 12 x^2
        let expect = x(1, 0).pow(2).unwrap().scale(&Scalar::from_int(12));
        assert_eq!(d, expect);
    }

    #[test]
    fn dir_derivative_kernel_direction() {
        // d_{(1,1)} (x1 - x2) = 0
        let p = x(2, 0).sub(&x(2, 1)).unwrap();
        let d = p
            .dir_derivative(&[Scalar::one(), Scalar::one()], Block::X)
            .unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn exact_division() {
        // (x1^2 - x2^2) / (x1 - x2) = x1 + x2
        let p = x(2, 0).pow(2).unwrap().sub(&x(2, 1).pow(2).unwrap()).unwrap();
        let alpha = vec![Scalar::one(), Scalar::from_int(-1)];
        let q = p.exact_div_linear(&alpha, Block::X).unwrap();
        let expect = x(2, 0).add(&x(2, 1)).unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn non_divisible() {
        let p = x(2, 0);
        let alpha = vec![Scalar::zero(), Scalar::one()];
        assert!(matches!(
            p.exact_div_linear(&alpha, Block::X),
            Err(AlgebraError::NonDivisible { .. })
        ));
    }

    #[test]
    fn block_swap_symmetry() {
        let n = 2;
        let p = MultiPoly::var(n, Block::X, 0)
            .mul(&MultiPoly::var(n, Block::Lambda, 0))
            .unwrap();
        assert_eq!(p.swap_blocks(), p);
        let q = MultiPoly::var(n, Block::X, 1);
        assert_ne!(q.swap_blocks(), q);
    }
}
