use std::fmt;

use crate::error::{GeometryError, Result};
use crate::scalar::{ScalarExpr, DIM};

use super::VectorField;

/// Declared symmetry between two argument (lower) slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric(usize, usize),
    Antisymmetric(usize, usize),
}

/// Result of feeding vector fields into a tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorValue {
    Scalar(ScalarExpr),
    Vector(VectorField),
}

impl TensorValue {
    pub fn scalar(self) -> Option<ScalarExpr> {
        match self {
            TensorValue::Scalar(s) => Some(s),
            TensorValue::Vector(_) => None,
        }
    }

    pub fn vector(self) -> Option<VectorField> {
        match self {
            TensorValue::Vector(v) => Some(v),
            TensorValue::Scalar(_) => None,
        }
    }
}

/// A type-(r,s) tensor, `r ∈ {0,1}`, with components in the frame basis.
///
/// Components are addressed as `[a₁, …, a_s, d]`: the `s` argument slots
/// followed by the output index when `r = 1`. For example the curvature
/// tensor stores `R(eₐ, e_b)e_c = Σ_d R[a,b,c,d] e_d`.
#[derive(Clone, PartialEq, Eq)]
pub struct FrameTensor {
    upper: usize,
    lower: usize,
    comps: Vec<ScalarExpr>,
    symmetries: Vec<Symmetry>,
}

impl fmt::Debug for FrameTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrameTensor({},{}) {{", self.upper, self.lower)?;
        for (idx, c) in self.nonzero_components() {
            write!(f, " {idx:?}: {c};")?;
        }
        write!(f, " }}")
    }
}

/// All multi-indices of length `n` over `0..DIM`, in lexicographic order.
pub(crate) fn multi_indices(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..DIM.pow(n as u32)).map(move |mut flat| {
        let mut idx = vec![0; n];
        for k in (0..n).rev() {
            idx[k] = flat % DIM;
            flat /= DIM;
        }
        idx
    })
}

impl FrameTensor {
    pub fn from_fn(upper: usize, lower: usize, mut f: impl FnMut(&[usize]) -> ScalarExpr) -> Self {
        assert!(upper <= 1, "only (0,s) and (1,s) tensors are supported");
        let comps = multi_indices(upper + lower).map(|idx| f(&idx)).collect();
        FrameTensor {
            upper,
            lower,
            comps,
            symmetries: Vec::new(),
        }
    }

    pub fn zero(upper: usize, lower: usize) -> Self {
        FrameTensor::from_fn(upper, lower, |_| ScalarExpr::zero())
    }

    pub fn with_symmetry(mut self, s: Symmetry) -> Self {
        self.symmetries.push(s);
        self
    }

    pub fn symmetries(&self) -> &[Symmetry] {
        &self.symmetries
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.upper, self.lower)
    }

    fn flat(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.upper + self.lower, "index length mismatch");
        idx.iter().fold(0, |acc, &i| acc * DIM + i)
    }

    pub fn get(&self, idx: &[usize]) -> &ScalarExpr {
        &self.comps[self.flat(idx)]
    }

    /// Components with their multi-indices, in lexicographic order.
    pub fn components(&self) -> impl Iterator<Item = (Vec<usize>, &ScalarExpr)> {
        multi_indices(self.upper + self.lower).zip(self.comps.iter())
    }

    pub fn nonzero_components(&self) -> impl Iterator<Item = (Vec<usize>, &ScalarExpr)> {
        self.components().filter(|(_, c)| !c.is_canonical_zero())
    }

    /// `T(eₐ, …)` for frame arguments: a scalar or a vector.
    pub fn at(&self, args: &[usize]) -> TensorValue {
        assert_eq!(args.len(), self.lower);
        if self.upper == 0 {
            TensorValue::Scalar(self.get(args).clone())
        } else {
            let mut idx = args.to_vec();
            idx.push(0);
            TensorValue::Vector(VectorField(std::array::from_fn(|d| {
                *idx.last_mut().unwrap() = d;
                self.get(&idx).clone()
            })))
        }
    }

    /// Vector value `T(eₐ, …)` of a (1,s) tensor.
    pub fn vector_at(&self, args: &[usize]) -> VectorField {
        self.at(args)
            .vector()
            .expect("vector_at called on a (0,s) tensor")
    }

    /// Multilinear evaluation on vector fields.
    pub fn eval(&self, args: &[VectorField]) -> Result<TensorValue> {
        if args.len() != self.lower {
            return Err(GeometryError::ArityMismatch {
                upper: self.upper,
                lower: self.lower,
                got: args.len(),
            });
        }
        let mut out = vec![ScalarExpr::zero(); if self.upper == 1 { DIM } else { 1 }];
        for arg_idx in multi_indices(self.lower) {
            let mut coeff = ScalarExpr::one();
            for (slot, &a) in arg_idx.iter().enumerate() {
                coeff = &coeff * args[slot].component(a);
                if coeff.is_canonical_zero() {
                    break;
                }
            }
            if coeff.is_canonical_zero() {
                continue;
            }
            if self.upper == 0 {
                out[0] = &out[0] + &(&coeff * self.get(&arg_idx));
            } else {
                let mut idx = arg_idx.clone();
                idx.push(0);
                for (d, slot) in out.iter_mut().enumerate() {
                    *idx.last_mut().unwrap() = d;
                    let c = self.get(&idx);
                    if !c.is_canonical_zero() {
                        *slot = &*slot + &(&coeff * c);
                    }
                }
            }
        }
        Ok(if self.upper == 0 {
            TensorValue::Scalar(out.pop().unwrap())
        } else {
            let mut it = out.into_iter();
            TensorValue::Vector(VectorField([
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
            ]))
        })
    }

    pub fn map(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> Self {
        FrameTensor {
            upper: self.upper,
            lower: self.lower,
            comps: self.comps.iter().map(f).collect(),
            symmetries: self.symmetries.clone(),
        }
    }

    fn zip_with(&self, other: &FrameTensor, f: impl Fn(&ScalarExpr, &ScalarExpr) -> ScalarExpr) -> Self {
        assert_eq!(self.valence(), other.valence(), "valence mismatch");
        let symmetries = self
            .symmetries
            .iter()
            .filter(|s| other.symmetries.contains(s))
            .copied()
            .collect();
        FrameTensor {
            upper: self.upper,
            lower: self.lower,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| f(a, b))
                .collect(),
            symmetries,
        }
    }

    pub fn add(&self, other: &FrameTensor) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FrameTensor) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, f: &ScalarExpr) -> Self {
        self.map(|c| c * f)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarExpr::is_zero)
    }

    /// Components whose declared symmetry fails, as `(index, defect)`.
    pub fn symmetry_defects(&self) -> Vec<(Vec<usize>, ScalarExpr)> {
        let mut out = Vec::new();
        for s in &self.symmetries {
            let (a, b, sign) = match *s {
                Symmetry::Symmetric(a, b) => (a, b, false),
                Symmetry::Antisymmetric(a, b) => (a, b, true),
            };
            for (idx, c) in self.components() {
                if idx[a] >= idx[b] && !(sign && idx[a] == idx[b]) {
                    continue;
                }
                let mut swapped = idx.clone();
                swapped.swap(a, b);
                let other = self.get(&swapped);
                let defect = if sign { c + other } else { c - other };
                if !defect.is_zero() {
                    out.push((idx, defect));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_is_checked() {
        let t = FrameTensor::zero(0, 2);
        let v = VectorField::basis(0);
        assert_eq!(
            t.eval(&[v]).unwrap_err(),
            GeometryError::ArityMismatch {
                upper: 0,
                lower: 2,
                got: 1
            }
        );
    }

    #[test]
    fn multilinear_evaluation() {
        // T(eₐ, e_b) = a + 2b (0-based)
        let t = FrameTensor::from_fn(0, 2, |i| ScalarExpr::int((i[0] + 2 * i[1]) as i64));
        let x: VectorField = VectorField::new(["1".parse().unwrap(), "x".parse().unwrap(), ScalarExpr::zero()]);
        let y = VectorField::basis(2);
        // T(x, e3) = 1·T(e1,e3) + x·T(e2,e3) = 4 + 5x
        let got = t.eval(&[x, y]).unwrap().scalar().unwrap();
        assert_eq!(got, "4 + 5*x".parse().unwrap());
    }

    #[test]
    fn symmetry_defects_reported() {
        let t = FrameTensor::from_fn(0, 2, |i| ScalarExpr::int(i[0] as i64))
            .with_symmetry(Symmetry::Symmetric(0, 1));
        assert_eq!(t.symmetry_defects().len(), 3);
        let a = FrameTensor::from_fn(0, 2, |i| ScalarExpr::int(i[0] as i64 - i[1] as i64))
            .with_symmetry(Symmetry::Antisymmetric(0, 1));
        assert!(a.symmetry_defects().is_empty());
    }

    #[test]
    fn vector_valued_evaluation() {
        // identity (1,1) tensor
        let id = FrameTensor::from_fn(1, 1, |i| ScalarExpr::int((i[0] == i[1]) as i64));
        let v = VectorField::new(["x".parse().unwrap(), "2".parse().unwrap(), "exp(z)".parse().unwrap()]);
        assert_eq!(id.eval(std::slice::from_ref(&v)).unwrap().vector().unwrap(), v);
    }
}
