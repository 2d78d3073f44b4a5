//! Finite-dimensional associative unital algebras given by structure
//! constants.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Scalar};
use crate::linalg::{Matrix, Subspace};

/// Marks an algebra built as a bound path algebra. Its radical is the span of
/// the nontrivial paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverProvenance {
    /// Basis index of the trivial path at each vertex, in vertex order.
    pub vertex_idempotents: Vec<usize>,
    /// Basis indices of the nontrivial paths.
    pub arrow_ideal: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `b_i * b_j = sum_k c[i][j][k] b_k`, with an explicit unit vector.
pub struct Algebra<F: Field> {
    field: F,
    dim: usize,
    constants: Vec<F::Elem>,
    unit: Vec<F::Elem>,
    labels: Option<Vec<String>>,
    provenance: Option<QuiverProvenance>,
    left_regular: OnceLock<Vec<Matrix<F>>>,
    right_regular: OnceLock<Vec<Matrix<F>>>,
    generators: OnceLock<Vec<usize>>,
}

impl<F: Field> Clone for Algebra<F> {
    fn clone(&self) -> Self {
        Algebra {
            field: self.field.clone(),
            dim: self.dim,
            constants: self.constants.clone(),
            unit: self.unit.clone(),
            labels: self.labels.clone(),
            provenance: self.provenance.clone(),
            left_regular: OnceLock::new(),
            right_regular: OnceLock::new(),
            generators: OnceLock::new(),
        }
    }
}

impl<F: Field> PartialEq for Algebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.constants == other.constants
            && self.unit == other.unit
    }
}

impl<F: Field> Eq for Algebra<F> {}

impl<F: Field> fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field.spec())
            .field("dim", &self.dim)
            .field("labels", &self.labels)
            .field("quiver", &self.provenance.is_some())
            .finish()
    }
}

/// Violations found by [`Algebra::validate`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// Triples `(i, j, l)` with `(b_i b_j) b_l != b_i (b_j b_l)`.
    pub associativity: Vec<(usize, usize, usize)>,
    /// Basis indices with `u b_i != b_i`.
    pub left_unit: Vec<usize>,
    /// Basis indices with `b_i u != b_i`.
    pub right_unit: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.associativity.is_empty() && self.left_unit.is_empty() && self.right_unit.is_empty()
    }
}

impl<F: Field> Algebra<F> {
    /// Builds and validates an algebra; `constants[i][j][k]` is the
    /// coefficient of `b_k` in `b_i b_j`.
    pub fn new(
        field: &F,
        constants: Vec<Vec<Vec<F::Elem>>>,
        unit: Vec<F::Elem>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let a = Self::unchecked(field, constants, unit, labels)?;
        let report = a.validate();
        if !report.is_valid() {
            return Err(Error::InvalidAlgebra(describe_violations(&report)));
        }
        Ok(a)
    }

    /// Builds without checking the algebra axioms (shapes are still checked).
    pub fn unchecked(
        field: &F,
        constants: Vec<Vec<Vec<F::Elem>>>,
        unit: Vec<F::Elem>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = unit.len();
        if constants.len() != n
            || constants.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n))
        {
            return Err(Error::DimensionMismatch(format!(
                "structure constants must be {n}x{n}x{n}"
            )));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{} labels for dimension {n}",
                    l.len()
                )));
            }
        }
        let flat = constants.into_iter().flatten().flatten().collect();
        Ok(Self::from_flat(field, n, flat, unit, labels))
    }

    pub(crate) fn from_flat(
        field: &F,
        dim: usize,
        constants: Vec<F::Elem>,
        unit: Vec<F::Elem>,
        labels: Option<Vec<String>>,
    ) -> Self {
        debug_assert_eq!(constants.len(), dim * dim * dim);
        Algebra {
            field: field.clone(),
            dim,
            constants,
            unit,
            labels,
            provenance: None,
            left_regular: OnceLock::new(),
            right_regular: OnceLock::new(),
            generators: OnceLock::new(),
        }
    }

    pub(crate) fn with_provenance(mut self, p: QuiverProvenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
    pub fn quiver_provenance(&self) -> Option<&QuiverProvenance> {
        self.provenance.as_ref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("b{i}"),
        }
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Copy of the structure constants with one entry replaced.
    pub fn with_constant(&self, i: usize, j: usize, k: usize, v: F::Elem) -> Self {
        let mut c = self.constants.clone();
        c[(i * self.dim + j) * self.dim + k] = v;
        Self::from_flat(&self.field, self.dim, c, self.unit.clone(), self.labels.clone())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    /// Product of two elements given in basis coordinates.
    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![f.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let s = f.mul(xi, yj);
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.constants[base + k];
                    if !f.is_zero(c) {
                        *o = f.mul_add(o, &s, c);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, s: &F::Elem, x: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().map(|a| self.field.mul(s, a)).collect()
    }

    pub fn is_idempotent(&self, x: &[F::Elem]) -> bool {
        self.mul(x, x) == x
    }

    pub fn is_zero_element(&self, x: &[F::Elem]) -> bool {
        x.iter().all(|a| self.field.is_zero(a))
    }

    /// Checks every associativity triple and both unit laws.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let mut report = ValidationReport::default();
        let basis: Vec<_> = (0..n).map(|i| self.basis_vector(i)).collect();
        let products: Vec<Vec<Vec<F::Elem>>> = (0..n)
            .map(|i| (0..n).map(|j| self.mul(&basis[i], &basis[j])).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let left = self.mul(&products[i][j], &basis[l]);
                    let right = self.mul(&basis[i], &products[j][l]);
                    if left != right {
                        report.associativity.push((i, j, l));
                    }
                }
            }
        }
        for (i, b) in basis.iter().enumerate() {
            if self.mul(&self.unit, b) != *b {
                report.left_unit.push(i);
            }
            if self.mul(b, &self.unit) != *b {
                report.right_unit.push(i);
            }
        }
        report
    }

    /// Matrix of `y -> x y`.
    pub fn left_mult(&self, x: &[F::Elem]) -> Matrix<F> {
        let f = &self.field;
        let n = self.dim;
        let mut m = Matrix::zeros(f, n, n);
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if !f.is_zero(c) {
                        let v = f.mul_add(m.get(k, j), xi, c);
                        m.set(k, j, v);
                    }
                }
            }
        }
        m
    }

    /// Matrix of `y -> y x`.
    pub fn right_mult(&self, x: &[F::Elem]) -> Matrix<F> {
        let f = &self.field;
        let n = self.dim;
        let mut m = Matrix::zeros(f, n, n);
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = self.constant(j, i, k);
                    if !f.is_zero(c) {
                        let v = f.mul_add(m.get(k, j), xi, c);
                        m.set(k, j, v);
                    }
                }
            }
        }
        m
    }

    /// `L_i` (left) or `R_i` (right) for every basis element.
    pub fn regular_representation(&self, side: Side) -> &[Matrix<F>] {
        match side {
            Side::Left => self.left_regular.get_or_init(|| {
                (0..self.dim).map(|i| self.left_mult(&self.basis_vector(i))).collect()
            }),
            Side::Right => self.right_regular.get_or_init(|| {
                (0..self.dim).map(|i| self.right_mult(&self.basis_vector(i))).collect()
            }),
        }
    }

    /// `c_op[i][j][k] = c[j][i][k]`. Right modules over `self` are left
    /// modules over the opposite algebra.
    pub fn opposite(&self) -> Self {
        let n = self.dim;
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c.push(self.constant(j, i, k).clone());
                }
            }
        }
        Self::from_flat(&self.field, n, c, self.unit.clone(), self.labels.clone())
    }

    /// Smallest subalgebra containing the unit and `elements`.
    pub fn generated_subalgebra(&self, elements: &[Vec<F::Elem>]) -> Subspace<F> {
        let f = &self.field;
        let mut vecs = vec![self.unit.clone()];
        vecs.extend(elements.iter().cloned());
        let mut span = Subspace::from_vectors(f, self.dim, vecs);
        loop {
            let basis = span.vectors();
            let mut all = basis.clone();
            for x in &basis {
                for y in elements {
                    all.push(self.mul(x, y));
                }
            }
            let next = Subspace::from_vectors(f, self.dim, all);
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    /// Basis indices that generate the algebra: greedy pick in basis order,
    /// then drop any index the others already generate.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut chosen: Vec<usize> = Vec::new();
            let elems = |idx: &[usize]| -> Vec<Vec<F::Elem>> {
                idx.iter().map(|&i| self.basis_vector(i)).collect()
            };
            for i in 0..self.dim {
                let span = self.generated_subalgebra(&elems(&chosen));
                if span.is_full() {
                    break;
                }
                if !span.contains_vector(&self.basis_vector(i)) {
                    chosen.push(i);
                }
            }
            let mut pos = chosen.len();
            while pos > 0 {
                pos -= 1;
                let mut trial = chosen.clone();
                trial.remove(pos);
                if self.generated_subalgebra(&elems(&trial)).is_full() {
                    chosen = trial;
                }
            }
            chosen
        })
    }

    /// Whether `space` is closed under left and right multiplication.
    pub fn is_two_sided(&self, space: &Subspace<F>) -> bool {
        let reps = [
            self.regular_representation(Side::Left),
            self.regular_representation(Side::Right),
        ];
        reps.iter().all(|rep| {
            rep.iter().all(|m| {
                space
                    .vectors()
                    .iter()
                    .all(|v| space.contains_vector(&m.mul_vec(v)))
            })
        })
    }

    /// Quotient by a two-sided ideal, with the projection onto the quotient
    /// coordinates (the non-pivot columns of the ideal's basis).
    pub fn quotient_by(&self, ideal: &Subspace<F>) -> Result<(Self, Matrix<F>)> {
        if ideal.ambient() != self.dim {
            return Err(Error::DimensionMismatch("ideal ambient".into()));
        }
        if !self.is_two_sided(ideal) {
            return Err(Error::NotTwoSided);
        }
        let proj = ideal.quotient_projection();
        let free = ideal.free_columns();
        let q = free.len();
        let mut c = Vec::with_capacity(q * q * q);
        for &i in &free {
            for &j in &free {
                let prod = self.mul(&self.basis_vector(i), &self.basis_vector(j));
                c.extend(proj.mul_vec(&prod));
            }
        }
        let unit = proj.mul_vec(&self.unit);
        let labels = self
            .labels
            .as_ref()
            .map(|l| free.iter().map(|&i| l[i].clone()).collect());
        Ok((Self::from_flat(&self.field, q, c, unit, labels), proj))
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        let f = &self.field;
        let n = self.dim;
        AlgebraSpec {
            field: f.spec(),
            dim: n,
            structure_constants: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| f.to_scalar(self.constant(i, j, k))).collect())
                        .collect()
                })
                .collect(),
            unit: self.unit.iter().map(|x| f.to_scalar(x)).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_spec(field: &F, spec: &AlgebraSpec) -> Result<Self> {
        let a = Self::from_spec_unchecked(field, spec)?;
        let report = a.validate();
        if !report.is_valid() {
            return Err(Error::InvalidAlgebra(describe_violations(&report)));
        }
        Ok(a)
    }

    /// Reads a spec without checking the algebra axioms.
    pub fn from_spec_unchecked(field: &F, spec: &AlgebraSpec) -> Result<Self> {
        if spec.field != field.spec() {
            return Err(Error::InvalidField(format!(
                "spec declares {}, expected {}",
                spec.field,
                field.spec()
            )));
        }
        let n = spec.dim;
        if spec.unit.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "unit has length {}, dim is {n}",
                spec.unit.len()
            )));
        }
        let conv = |s: &Scalar| field.from_scalar(s);
        let constants = spec
            .structure_constants
            .iter()
            .map(|plane| {
                plane
                    .iter()
                    .map(|row| row.iter().map(conv).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let unit = spec.unit.iter().map(conv).collect::<Result<Vec<_>>>()?;
        Self::unchecked(field, constants, unit, spec.labels.clone())
    }
}

fn describe_violations(r: &ValidationReport) -> String {
    let mut parts = Vec::new();
    if let Some(&(i, j, l)) = r.associativity.first() {
        parts.push(format!(
            "{} associativity failures, first at (b{i} b{j}) b{l}",
            r.associativity.len()
        ));
    }
    if !r.left_unit.is_empty() {
        parts.push(format!("left unit law fails on {:?}", r.left_unit));
    }
    if !r.right_unit.is_empty() {
        parts.push(format!("right unit law fails on {:?}", r.right_unit));
    }
    parts.join("; ")
}

/// Algebra spec file: `{field, dim, structure_constants, unit, labels?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub dim: usize,
    pub structure_constants: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: AlgebraSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.field.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebra spec serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::PrimeField;

    #[test]
    fn componentwise_product_is_valid() {
        let f = PrimeField::new(2).unwrap();
        let a = catalog::product_of_fields(&f, 2);
        assert!(a.validate().is_valid());
        let bad = Algebra::unchecked(
            &f,
            vec![
                vec![vec![1, 0], vec![0, 0]],
                vec![vec![0, 0], vec![0, 1]],
            ],
            vec![1, 0],
            None,
        )
        .unwrap();
        let r = bad.validate();
        assert_eq!(r.left_unit, vec![1]);
        assert_eq!(r.right_unit, vec![1]);
    }

    #[test]
    fn lower_triangular_from_matrix_units() {
        let f = PrimeField::new(2).unwrap();
        let t2 = catalog::lower_triangular(&f, 2);
        assert!(t2.validate().is_valid());
        assert_eq!(t2.labels().unwrap(), ["E11", "E21", "E22"]);
        // E21 E11 = E21
        assert_eq!(t2.mul(&[0, 1, 0], &[1, 0, 0]), vec![0, 1, 0]);
    }

    #[test]
    fn left_regular_of_e21() {
        let f = PrimeField::new(2).unwrap();
        let t2 = catalog::lower_triangular(&f, 2);
        let l = &t2.regular_representation(Side::Left)[1];
        assert_eq!(l.column(0), vec![0, 1, 0]);
        assert_eq!(l.column(1), vec![0, 0, 0]);
        assert_eq!(l.column(2), vec![0, 0, 0]);
        assert!(t2.left_mult(t2.unit()).is_identity());
    }

    #[test]
    fn diagonal_left_regular() {
        let f = PrimeField::new(2).unwrap();
        let a = catalog::product_of_fields(&f, 2);
        let l = a.regular_representation(Side::Left);
        assert_eq!(l[0], Matrix::from_i64(&f, &[&[1, 0], &[0, 0]]));
        assert_eq!(l[1], Matrix::from_i64(&f, &[&[0, 0], &[0, 1]]));
    }

    #[test]
    fn opposite_is_an_involution() {
        let f = PrimeField::new(2).unwrap();
        let t2 = catalog::lower_triangular(&f, 2);
        assert_eq!(t2.opposite().opposite(), t2);
        let comm = catalog::product_of_fields(&f, 3);
        assert_eq!(comm.opposite(), comm);
        let op = t2.opposite();
        assert!(op.validate().is_valid());
        // In the opposite algebra E11 * E21 = E21, the upper-triangular rule.
        assert_eq!(op.mul(&[1, 0, 0], &[0, 1, 0]), vec![0, 1, 0]);
        assert_eq!(op.mul(&[0, 1, 0], &[1, 0, 0]), vec![0, 0, 0]);
        let left = op.regular_representation(Side::Left);
        let right = t2.regular_representation(Side::Right);
        assert_eq!(left, right);
    }

    #[test]
    fn quotients() {
        let f = PrimeField::new(2).unwrap();
        let t2 = catalog::lower_triangular(&f, 2);
        let (q, _) = t2.quotient_by(&Subspace::zero(&f, 3)).unwrap();
        assert_eq!(q, t2);
        let (z, _) = t2.quotient_by(&Subspace::full(&f, 3)).unwrap();
        assert_eq!(z.dim(), 0);
        let i = Subspace::from_vectors(&f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let (k, proj) = t2.quotient_by(&i).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(k.validate().is_valid());
        assert_eq!(proj.mul_vec(&[1, 0, 0]), vec![1]);
        let not_ideal = Subspace::from_vectors(&f, 3, vec![vec![1, 0, 0]]);
        assert!(matches!(t2.quotient_by(&not_ideal), Err(Error::NotTwoSided)));
    }

    #[test]
    fn generators_of_t3() {
        let f = PrimeField::new(2).unwrap();
        let t3 = catalog::lower_triangular(&f, 3);
        let g = t3.generators().to_vec();
        assert_eq!(g.len(), 4);
        let elems: Vec<_> = g.iter().map(|&i| t3.basis_vector(i)).collect();
        assert!(t3.generated_subalgebra(&elems).is_full());
    }

    #[test]
    fn spec_round_trip_is_bit_exact() {
        let f = PrimeField::new(2).unwrap();
        let t2 = catalog::lower_triangular(&f, 2);
        let text = t2.to_spec().to_json();
        let parsed = AlgebraSpec::parse(&text).unwrap();
        let rebuilt = Algebra::from_spec(&f, &parsed).unwrap();
        assert_eq!(rebuilt, t2);
        assert_eq!(rebuilt.to_spec().to_json(), text);
    }
}
