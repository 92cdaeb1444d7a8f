//! Tensor-product carriers.
//!
//! Every space in the crate is realized as a quotient of a finite tensor
//! product of coordinate spaces. [`Shape`] does the mixed-radix index
//! bookkeeping; [`TensorSpace`] couples a shape with the quotient that
//! imposes the ⊗_K relations and commutator relations, and knows how to
//! induce a matrix from a formula given on simple ambient tensors.

use super::matrix::{Matrix, Vector};
use super::scalar::{FieldSpec, Scalar};
use super::space::{Quotient, Subspace};

/// Mixed-radix encoding of simple tensors over factor carriers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub dims: Vec<usize>,
    strides: Vec<usize>,
    pub total: usize,
}

impl Shape {
    pub fn new(dims: Vec<usize>) -> Self {
        let mut strides = vec![0; dims.len()];
        let mut acc = 1usize;
        for (i, d) in dims.iter().enumerate().rev() {
            strides[i] = acc;
            acc = acc.checked_mul(*d).expect("tensor space too large");
        }
        Shape { dims, strides, total: acc }
    }

    pub fn encode(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        idx.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    pub fn decode(&self, mut code: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        for s in &self.strides {
            out.push(code / s);
            code %= s;
        }
        out
    }

    /// Tensor together sparse factor vectors into the ambient space.
    pub fn tensor(&self, factors: &[&Vector]) -> Vector {
        assert_eq!(factors.len(), self.dims.len());
        let mut terms: Vec<(usize, Scalar)> = vec![(0, scalar_one(factors))];
        for (slot, f) in factors.iter().enumerate() {
            assert_eq!(f.dim, self.dims[slot], "factor dim mismatch in slot {slot}");
            let mut next = Vec::with_capacity(terms.len() * f.support_len().max(1));
            for (code, c) in &terms {
                for (i, v) in f.iter() {
                    next.push((code + i * self.strides[slot], c.mul(v)));
                }
            }
            terms = next;
            if terms.is_empty() {
                break;
            }
        }
        Vector::from_entries(self.total, terms)
    }
}

fn scalar_one(factors: &[&Vector]) -> Scalar {
    for f in factors {
        if let Some((_, c)) = f.iter().next() {
            return c.field().one();
        }
    }
    FieldSpec::Q.one()
}

/// A quotient of a tensor ambient, with the machinery to induce maps.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub field: FieldSpec,
    pub shape: Shape,
    pub quot: Quotient,
}

impl TensorSpace {
    pub fn new(field: FieldSpec, dims: Vec<usize>, relations: Vec<Vector>) -> Self {
        let shape = Shape::new(dims);
        let rel = Subspace::from_vectors(shape.total, relations);
        let quot = Quotient::new(shape.total, rel, field);
        TensorSpace { field, shape, quot }
    }

    pub fn plain(field: FieldSpec, dims: Vec<usize>) -> Self {
        let shape = Shape::new(dims);
        let quot = Quotient::trivial(shape.total, field);
        TensorSpace { field, shape, quot }
    }

    pub fn dim(&self) -> usize {
        self.quot.dim
    }

    /// Class of a simple tensor of factor basis indices.
    pub fn class_of(&self, idx: &[usize]) -> Vector {
        self.quot.project(&Vector::unit(self.shape.total, self.shape.encode(idx), self.field))
    }

    /// Class of a tensor of factor vectors.
    pub fn class_of_tensor(&self, factors: &[&Vector]) -> Vector {
        self.quot.project(&self.shape.tensor(factors))
    }

    /// Induces the matrix of a map given by a formula on simple ambient
    /// tensors. The formula must produce target *carrier* vectors. When
    /// `check` is set, the formula is verified to kill every relation of the
    /// source (i.e. to be well defined on the quotient); a failure reports
    /// which relation broke.
    pub fn induce_map(
        &self,
        target_dim: usize,
        check: bool,
        f: &mut dyn FnMut(&[usize]) -> Vector,
    ) -> Result<Matrix, String> {
        let mut cache: Vec<Option<Vector>> = vec![None; self.shape.total];
        let mut eval = |code: usize, cache: &mut Vec<Option<Vector>>| -> Vector {
            if cache[code].is_none() {
                let v = f(&self.shape.decode(code));
                assert_eq!(v.dim, target_dim, "formula produced wrong target dimension");
                cache[code] = Some(v);
            }
            cache[code].clone().unwrap()
        };
        let mut apply_ambient = |v: &Vector, cache: &mut Vec<Option<Vector>>| -> Vector {
            let mut out = Vector::zero(target_dim);
            for (code, c) in v.iter() {
                let fv = eval(code, cache);
                out.axpy(c, &fv);
            }
            out
        };
        if check {
            for (i, rel) in self.quot.relations.basis().iter().enumerate() {
                let img = apply_ambient(rel, &mut cache);
                if !img.is_zero() {
                    return Err(format!(
                        "map not well defined on quotient: relation {i} maps to a nonzero class"
                    ));
                }
            }
        }
        let mut m = Matrix::zero(target_dim, self.dim());
        for j in 0..self.dim() {
            let amb = self.quot.section(&Vector::unit(self.dim(), j, self.field));
            m.set_col(j, apply_ambient(&amb, &mut cache));
        }
        Ok(m)
    }

    /// Subspace of the carrier spanned by the classes of the given ambient
    /// vectors.
    pub fn span_of_ambient(&self, gens: impl IntoIterator<Item = Vector>) -> Subspace {
        Subspace::from_vectors(
            self.dim(),
            gens.into_iter().map(|g| self.quot.project(&g)),
        )
    }
}

/// A direct sum of named components, used for total complexes and the block
/// decompositions X_n = ⊕ X_{rs}.
#[derive(Clone, Debug)]
pub struct BlockSpace<K: Clone + PartialEq> {
    pub keys: Vec<K>,
    pub dims: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl<K: Clone + PartialEq + std::fmt::Debug> BlockSpace<K> {
    pub fn new(parts: Vec<(K, usize)>) -> Self {
        let mut keys = Vec::new();
        let mut dims = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for (k, d) in parts {
            keys.push(k);
            dims.push(d);
            offsets.push(total);
            total += d;
        }
        BlockSpace { keys, dims, offsets, total }
    }

    pub fn index_of(&self, key: &K) -> Option<usize> {
        self.keys.iter().position(|k| k == key)
    }

    pub fn embed(&self, key: &K, v: &Vector) -> Vector {
        let i = self.index_of(key).unwrap_or_else(|| panic!("unknown block {key:?}"));
        assert_eq!(v.dim, self.dims[i]);
        v.shifted(self.total, self.offsets[i])
    }

    pub fn restrict(&self, key: &K, v: &Vector) -> Vector {
        let i = self.index_of(key).unwrap_or_else(|| panic!("unknown block {key:?}"));
        let mut out = Vector::zero(self.dims[i]);
        for (j, c) in v.iter() {
            if j >= self.offsets[i] && j < self.offsets[i] + self.dims[i] {
                out.add_to(j - self.offsets[i], c.clone());
            }
        }
        out
    }

    /// Assembles a block matrix from per-block maps: `blocks` yields
    /// (source key, target key, matrix).
    pub fn assemble<K2: Clone + PartialEq + std::fmt::Debug>(
        target: &BlockSpace<K2>,
        source: &BlockSpace<K>,
        blocks: &[(K, K2, Matrix)],
    ) -> Matrix {
        let mut m = Matrix::zero(target.total, source.total);
        for (sk, tk, b) in blocks {
            let si = source.index_of(sk).expect("unknown source block");
            assert_eq!(b.cols, source.dims[si], "block has wrong column count");
            for j in 0..b.cols {
                let col = target.embed(tk, b.col(j));
                let mut cur = m.col(source.offsets[si] + j).clone();
                cur = cur.add(&col);
                m.set_col(source.offsets[si] + j, cur);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_round_trip() {
        let s = Shape::new(vec![2, 3, 4]);
        assert_eq!(s.total, 24);
        for code in 0..24 {
            assert_eq!(s.encode(&s.decode(code)), code);
        }
    }

    #[test]
    fn tensor_of_units_is_unit() {
        let f = FieldSpec::Q;
        let s = Shape::new(vec![2, 2]);
        let a = Vector::unit(2, 1, f);
        let b = Vector::unit(2, 0, f);
        let t = s.tensor(&[&a, &b]);
        assert_eq!(t, Vector::unit(4, s.encode(&[1, 0]), f));
    }
}
