//! Finite-dimensional left modules as tuples of action matrices, and the
//! homological toolkit on top of them: Hom, subquotients, ideal actions,
//! traces, Ext^1 and the `D_sigma` membership test.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Side};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Echelon, Matrix, Subspace};

/// How a module was built. Only `Projective` is trusted as projective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance<F: Field> {
    /// `A e_1 (+) ... (+) A e_r` in this order, each summand in the RREF
    /// basis of the left ideal `A e_k`.
    Projective { summands: Vec<Vec<F::Elem>> },
    Subquotient,
    Generic,
}

/// Left module: `actions[i]` is the matrix of the i-th algebra basis element.
#[derive(Clone)]
pub struct ModuleRep<F: Field> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    actions: Vec<Matrix<F>>,
    provenance: Provenance<F>,
}

impl<F: Field> fmt::Debug for ModuleRep<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleRep")
            .field("dim", &self.dim)
            .field("provenance", &self.provenance)
            .finish()
    }
}

/// Module spec object: `{dim, actions}` with one matrix per basis element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub dim: usize,
    pub actions: Vec<Vec<Vec<Scalar>>>,
}

pub(crate) fn same_algebra<F: Field>(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Basis of the left ideal `A e`, as a subspace of `A`.
pub fn left_ideal_basis<F: Field>(a: &Algebra<F>, e: &[F::Elem]) -> Subspace<F> {
    a.right_mult(e).image()
}

impl<F: Field> ModuleRep<F> {
    /// Builds a module and checks the unit and product relations.
    pub fn new(algebra: Arc<Algebra<F>>, actions: Vec<Matrix<F>>) -> Result<Self> {
        let dim = actions.first().map_or(0, |m| m.rows());
        if actions.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                actions.len(),
                algebra.dim()
            )));
        }
        if actions.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule("action matrices must be square of one size".into()));
        }
        let m = ModuleRep { algebra, dim, actions, provenance: Provenance::Generic };
        m.check()?;
        Ok(m)
    }

    /// Verifies `rho(1) = I` and `rho_i rho_j = sum_k c_ijk rho_k`.
    pub fn check(&self) -> Result<()> {
        let f = self.field();
        let a = &self.algebra;
        if !self.act(a.unit()).is_identity() {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.actions[i].mul(&self.actions[j]);
                let mut rhs = Matrix::zeros(f, self.dim, self.dim);
                for k in 0..a.dim() {
                    let c = a.constant(i, j, k);
                    if !f.is_zero(c) {
                        rhs.add_scaled(c, &self.actions[k]);
                    }
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative at ({}, {})",
                        a.label(i),
                        a.label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn actions(&self) -> &[Matrix<F>] {
        &self.actions
    }
    pub fn provenance(&self) -> &Provenance<F> {
        &self.provenance
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn projective_summands(&self) -> Option<&[Vec<F::Elem>]> {
        match &self.provenance {
            Provenance::Projective { summands } => Some(summands),
            _ => None,
        }
    }

    pub fn with_provenance(mut self, p: Provenance<F>) -> Self {
        self.provenance = p;
        self
    }

    /// Matrix of an arbitrary algebra element.
    pub fn act(&self, x: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim, self.dim);
        for (c, a) in x.iter().zip(&self.actions) {
            if !f.is_zero(c) {
                m.add_scaled(c, a);
            }
        }
        m
    }

    /// Actions of the algebra generators only.
    pub fn generator_actions(&self) -> Vec<Matrix<F>> {
        self.algebra.generators().iter().map(|&g| self.actions[g].clone()).collect()
    }

    pub fn zero(algebra: &Arc<Algebra<F>>) -> Self {
        let f = algebra.field();
        ModuleRep {
            algebra: algebra.clone(),
            dim: 0,
            actions: vec![Matrix::zeros(f, 0, 0); algebra.dim()],
            provenance: Provenance::Projective { summands: Vec::new() },
        }
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular(algebra: &Arc<Algebra<F>>) -> Self {
        ModuleRep {
            algebra: algebra.clone(),
            dim: algebra.dim(),
            actions: algebra.regular_representation(Side::Left).to_vec(),
            provenance: Provenance::Projective { summands: vec![algebra.unit().to_vec()] },
        }
    }

    pub fn free(algebra: &Arc<Algebra<F>>, n: usize) -> Self {
        let r = Self::regular(algebra);
        Self::direct_sum_of(algebra, &vec![&r; n])
    }

    /// The left ideal `A e` for an idempotent `e`.
    pub fn summand(algebra: &Arc<Algebra<F>>, e: &[F::Elem]) -> Result<Self> {
        if e.len() != algebra.dim() {
            return Err(Error::DimensionMismatch("idempotent length".into()));
        }
        if !algebra.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        let basis = left_ideal_basis(algebra, e);
        let actions = algebra
            .regular_representation(Side::Left)
            .iter()
            .map(|l| basis.coords_matrix(&l.mul(&basis.inclusion())))
            .collect();
        Ok(ModuleRep {
            algebra: algebra.clone(),
            dim: basis.dim(),
            actions,
            provenance: Provenance::Projective { summands: vec![e.to_vec()] },
        })
    }

    /// `A e_1 (+) ... (+) A e_r`.
    pub fn projective(algebra: &Arc<Algebra<F>>, idempotents: &[Vec<F::Elem>]) -> Result<Self> {
        let parts = idempotents
            .iter()
            .map(|e| Self::summand(algebra, e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::direct_sum_of(algebra, &parts.iter().collect::<Vec<_>>()))
    }

    fn direct_sum_of(algebra: &Arc<Algebra<F>>, parts: &[&Self]) -> Self {
        let f = algebra.field();
        let dim = parts.iter().map(|p| p.dim).sum();
        let actions = (0..algebra.dim())
            .map(|i| {
                let blocks: Vec<&Matrix<F>> = parts.iter().map(|p| &p.actions[i]).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        let provenance = if parts.iter().all(|p| p.projective_summands().is_some()) {
            Provenance::Projective {
                summands: parts
                    .iter()
                    .flat_map(|p| p.projective_summands().unwrap().to_vec())
                    .collect(),
            }
        } else {
            Provenance::Generic
        };
        ModuleRep { algebra: algebra.clone(), dim, actions, provenance }
    }

    /// Direct sum, keeping projective provenance when every part has it.
    pub fn direct_sum(parts: &[&Self]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidModule("empty direct sum needs an algebra".into()));
        };
        if parts.iter().any(|p| !same_algebra(&p.algebra, &first.algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Self::direct_sum_of(&first.algebra, parts))
    }

    pub fn power(&self, n: usize) -> Self {
        Self::direct_sum_of(&self.algebra, &vec![self; n])
    }

    /// Whether a subspace is closed under the action.
    pub fn is_invariant(&self, space: &Subspace<F>) -> bool {
        let gens = self.generator_actions();
        space
            .vectors()
            .iter()
            .all(|v| gens.iter().all(|g| space.contains_vector(&g.mul_vec(v))))
    }

    /// Submodule on an invariant subspace, with its inclusion.
    pub fn submodule(&self, space: &Subspace<F>) -> Result<(Self, ModuleMap<F>)> {
        if space.ambient() != self.dim {
            return Err(Error::DimensionMismatch("subspace ambient".into()));
        }
        if !self.is_invariant(space) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let inc = space.inclusion();
        let actions = self.actions.iter().map(|a| space.coords_matrix(&a.mul(&inc))).collect();
        let sub = ModuleRep {
            algebra: self.algebra.clone(),
            dim: space.dim(),
            actions,
            provenance: Provenance::Subquotient,
        };
        let map = ModuleMap::unchecked(sub.clone(), self.clone(), inc);
        Ok((sub, map))
    }

    /// Quotient by an invariant subspace, with the projection.
    pub fn quotient(&self, space: &Subspace<F>) -> Result<(Self, ModuleMap<F>)> {
        if space.ambient() != self.dim {
            return Err(Error::DimensionMismatch("subspace ambient".into()));
        }
        if !self.is_invariant(space) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let proj = space.quotient_projection();
        let sec = space.quotient_section();
        let actions = self.actions.iter().map(|a| proj.mul(&a.mul(&sec))).collect();
        let q = ModuleRep {
            algebra: self.algebra.clone(),
            dim: proj.rows(),
            actions,
            provenance: Provenance::Subquotient,
        };
        let map = ModuleMap::unchecked(self.clone(), q.clone(), proj);
        Ok((q, map))
    }

    /// Submodule generated by some vectors.
    pub fn span_of(&self, vectors: &[Vec<F::Elem>]) -> Subspace<F> {
        crate::meataxe::spin(self.field(), self.dim, &self.generator_actions(), vectors)
    }

    /// A small generating set: standard basis vectors picked greedily.
    pub fn generating_vectors(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let gens = self.generator_actions();
        let mut chosen = Vec::new();
        let mut span = Subspace::zero(f, self.dim);
        for i in 0..self.dim {
            if span.is_full() {
                break;
            }
            let mut e = vec![f.zero(); self.dim];
            e[i] = f.one();
            if !span.contains_vector(&e) {
                chosen.push(e);
                span = crate::meataxe::spin(f, self.dim, &gens, &chosen);
            }
        }
        chosen
    }

    /// `I M` for a subspace `I` of the algebra (normally an ideal).
    pub fn ideal_times(&self, ideal: &Subspace<F>) -> Subspace<F> {
        let f = self.field();
        let mut span = Echelon::new(f, self.dim);
        for x in ideal.vectors() {
            for col in self.act(&x).columns() {
                span.insert(&col);
            }
        }
        span.to_subspace()
    }

    /// `{m : x m = 0 for all x in I}`.
    pub fn annihilator_of(&self, ideal: &Subspace<F>) -> Subspace<F> {
        let f = self.field();
        let blocks: Vec<Matrix<F>> = ideal.vectors().iter().map(|x| self.act(x)).collect();
        let refs: Vec<&Matrix<F>> = blocks.iter().collect();
        Matrix::vstack(f, self.dim, &refs).kernel()
    }

    /// `e M` as a subspace.
    pub fn corner(&self, e: &[F::Elem]) -> Subspace<F> {
        self.act(e).image()
    }

    pub fn to_spec(&self) -> ModuleSpec {
        let f = self.field();
        ModuleSpec {
            dim: self.dim,
            actions: self
                .actions
                .iter()
                .map(|m| m.to_rows().iter().map(|r| r.iter().map(|x| f.to_scalar(x)).collect()).collect())
                .collect(),
        }
    }

    pub fn from_spec(algebra: &Arc<Algebra<F>>, spec: &ModuleSpec) -> Result<Self> {
        let f = algebra.field();
        let actions = spec
            .actions
            .iter()
            .map(|rows| {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|s| f.from_scalar(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                if rows.len() != spec.dim {
                    return Err(Error::DimensionMismatch("action matrix rows".into()));
                }
                Matrix::from_rows(f, spec.dim, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        if actions.is_empty() && algebra.dim() > 0 {
            return Err(Error::InvalidModule("no action matrices".into()));
        }
        if spec.dim == 0 {
            return Ok(Self::zero(algebra).with_provenance(Provenance::Generic));
        }
        Self::new(algebra.clone(), actions)
    }
}

/// A module homomorphism; `matrix` maps source coordinates to target ones.
#[derive(Clone)]
pub struct ModuleMap<F: Field> {
    source: ModuleRep<F>,
    target: ModuleRep<F>,
    matrix: Matrix<F>,
}

impl<F: Field> fmt::Debug for ModuleMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({} -> {}, {:?})", self.source.dim, self.target.dim, self.matrix)
    }
}

/// Kernel, image and cokernel of a map with their structure maps.
#[derive(Debug, Clone)]
pub struct Subquotients<F: Field> {
    pub kernel: ModuleRep<F>,
    pub kernel_inclusion: ModuleMap<F>,
    pub image: ModuleRep<F>,
    pub image_inclusion: ModuleMap<F>,
    /// Corestriction onto the image: `f = image_inclusion . image_surjection`.
    pub image_surjection: ModuleMap<F>,
    pub cokernel: ModuleRep<F>,
    pub cokernel_projection: ModuleMap<F>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(source: ModuleRep<F>, target: ModuleRep<F>, matrix: Matrix<F>) -> Result<Self> {
        if !same_algebra(&source.algebra, &target.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        let m = Self::unchecked(source, target, matrix);
        if !m.intertwines() {
            return Err(Error::InvalidModule("matrix does not commute with the actions".into()));
        }
        Ok(m)
    }

    pub fn unchecked(source: ModuleRep<F>, target: ModuleRep<F>, matrix: Matrix<F>) -> Self {
        ModuleMap { source, target, matrix }
    }

    pub fn intertwines(&self) -> bool {
        self.source
            .algebra
            .generators()
            .iter()
            .all(|&g| self.matrix.mul(&self.source.actions[g]) == self.target.actions[g].mul(&self.matrix))
    }

    pub fn identity(m: &ModuleRep<F>) -> Self {
        Self::unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim))
    }

    pub fn zero(source: &ModuleRep<F>, target: &ModuleRep<F>) -> Self {
        Self::unchecked(
            source.clone(),
            target.clone(),
            Matrix::zeros(source.field(), target.dim, source.dim),
        )
    }

    pub fn source(&self) -> &ModuleRep<F> {
        &self.source
    }
    pub fn target(&self) -> &ModuleRep<F> {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target.dim != self.source.dim {
            return Err(Error::DimensionMismatch("composition".into()));
        }
        Ok(Self::unchecked(other.source.clone(), self.target.clone(), self.matrix.mul(&other.matrix)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = self.matrix.inverse()?;
        Some(Self::unchecked(self.target.clone(), self.source.clone(), inv))
    }

    pub fn kernel_space(&self) -> Subspace<F> {
        self.matrix.kernel()
    }

    pub fn image_space(&self) -> Subspace<F> {
        self.matrix.image()
    }

    pub fn subquotients(&self) -> Subquotients<F> {
        let (kernel, kernel_inclusion) =
            self.source.submodule(&self.kernel_space()).expect("kernel is a submodule");
        let im = self.image_space();
        let (image, image_inclusion) = self.target.submodule(&im).expect("image is a submodule");
        let surj = im.coords_matrix(&self.matrix);
        let image_surjection = Self::unchecked(self.source.clone(), image.clone(), surj);
        let (cokernel, cokernel_projection) =
            self.target.quotient(&im).expect("image is a submodule");
        Subquotients {
            kernel,
            kernel_inclusion,
            image,
            image_inclusion,
            image_surjection,
            cokernel,
            cokernel_projection,
        }
    }

    /// Map between biproducts from its blocks: `blocks[r][c]` goes from the
    /// c-th source summand to the r-th target summand.
    pub fn from_blocks(
        sources: &[&ModuleRep<F>],
        targets: &[&ModuleRep<F>],
        blocks: &[Vec<Matrix<F>>],
    ) -> Result<Self> {
        let src = ModuleRep::direct_sum(sources)?;
        let tgt = ModuleRep::direct_sum(targets)?;
        let f = src.field().clone();
        let mut m = Matrix::zeros(&f, tgt.dim, src.dim);
        let mut r0 = 0;
        for (r, t) in targets.iter().enumerate() {
            let mut c0 = 0;
            for (c, s) in sources.iter().enumerate() {
                let b = &blocks[r][c];
                if b.rows() != t.dim || b.cols() != s.dim {
                    return Err(Error::DimensionMismatch(format!("block ({r}, {c})")));
                }
                m.paste(r0, c0, b);
                c0 += s.dim;
            }
            r0 += t.dim;
        }
        Self::new(src, tgt, m)
    }
}

// ----------------------------------------------------------------------- Hom

/// Basis of `Hom(M, N)`. Uses the corner description `Hom(A e, N) = e N`
/// when `M` carries projective provenance, otherwise solves the
/// intertwining system on the algebra generators.
pub fn hom_space<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<Vec<ModuleMap<F>>> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    if m.projective_summands().is_some() {
        return Ok(hom_from_projective(m, n));
    }
    hom_space_solve(m, n)
}

/// Hom basis from the intertwining linear system, whatever the provenance.
pub fn hom_space_solve<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<Vec<ModuleMap<F>>> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim, n.dim);
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let gens = m.algebra.generators();
    let vars = dn * dm;
    let mut sys = Matrix::zeros(f, gens.len() * vars, vars);
    for (gi, &g) in gens.iter().enumerate() {
        let am = &m.actions[g];
        let an = &n.actions[g];
        for r in 0..dn {
            for c in 0..dm {
                let row = gi * vars + r * dm + c;
                // (X am)[r][c] - (an X)[r][c]
                for t in 0..dm {
                    let v = am.get(t, c);
                    if !f.is_zero(v) {
                        let idx = r * dm + t;
                        let cur = f.add(sys.get(row, idx), v);
                        sys.set(row, idx, cur);
                    }
                }
                for t in 0..dn {
                    let v = an.get(r, t);
                    if !f.is_zero(v) {
                        let idx = t * dm + c;
                        let cur = f.sub(sys.get(row, idx), v);
                        sys.set(row, idx, cur);
                    }
                }
            }
        }
    }
    Ok(sys
        .kernel()
        .vectors()
        .into_iter()
        .map(|v| {
            let rows = v.chunks(dm).map(|c| c.to_vec()).collect();
            let mat = Matrix::from_rows(f, dm, rows).expect("shape");
            ModuleMap::unchecked(m.clone(), n.clone(), mat)
        })
        .collect())
}

/// Position of each summand's generator `e_k` inside a certified projective:
/// `(offset, summand dimension, coordinates of e_k in the summand basis,
/// summand basis)`.
pub(crate) struct SummandLayout<F: Field> {
    pub offset: usize,
    pub idempotent: Vec<F::Elem>,
    pub basis: Subspace<F>,
    pub generator: Vec<F::Elem>,
}

pub(crate) fn summand_layout<F: Field>(p: &ModuleRep<F>) -> Option<Vec<SummandLayout<F>>> {
    let summands = p.projective_summands()?;
    let mut offset = 0;
    let mut out = Vec::new();
    for e in summands {
        let basis = left_ideal_basis(&p.algebra, e);
        let generator = basis.coords(e).expect("e lies in A e");
        let d = basis.dim();
        out.push(SummandLayout { offset, idempotent: e.clone(), basis, generator });
        offset += d;
    }
    Some(out)
}

/// The map `P -> N` sending the k-th generator to `values[k]` (which must
/// lie in `e_k N`).
pub(crate) fn map_from_generator_values<F: Field>(
    p: &ModuleRep<F>,
    layout: &[SummandLayout<F>],
    n: &ModuleRep<F>,
    values: &[Vec<F::Elem>],
) -> Matrix<F> {
    let f = p.field();
    let mut mat = Matrix::zeros(f, n.dim, p.dim);
    for (s, x) in layout.iter().zip(values) {
        for (j, b) in s.basis.vectors().iter().enumerate() {
            let col = n.act(b).mul_vec(x);
            for (r, v) in col.into_iter().enumerate() {
                mat.set(r, s.offset + j, v);
            }
        }
    }
    mat
}

/// Values of a map out of a certified projective on the summand generators,
/// concatenated.
pub(crate) fn generator_values<F: Field>(layout: &[SummandLayout<F>], map: &Matrix<F>) -> Vec<F::Elem> {
    let f = map.field();
    let mut out = Vec::new();
    for s in layout {
        let mut g = vec![f.zero(); map.cols()];
        for (i, v) in s.generator.iter().enumerate() {
            g[s.offset + i] = v.clone();
        }
        out.extend(map.mul_vec(&g));
    }
    out
}

fn hom_from_projective<F: Field>(p: &ModuleRep<F>, n: &ModuleRep<F>) -> Vec<ModuleMap<F>> {
    let f = p.field();
    let layout = summand_layout(p).expect("projective");
    let mut out = Vec::new();
    for (k, s) in layout.iter().enumerate() {
        for x in n.corner(&s.idempotent).vectors() {
            let mut values = vec![vec![f.zero(); n.dim]; layout.len()];
            values[k] = x;
            let mat = map_from_generator_values(p, &layout, n, &values);
            out.push(ModuleMap::unchecked(p.clone(), n.clone(), mat));
        }
    }
    out
}

pub fn hom_dim<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<usize> {
    if let Some(layout) = summand_layout(m) {
        if !same_algebra(&m.algebra, &n.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        return Ok(layout.iter().map(|s| n.corner(&s.idempotent).dim()).sum());
    }
    Ok(hom_space_solve(m, n)?.len())
}

fn vectorize<F: Field>(m: &Matrix<F>) -> Vec<F::Elem> {
    m.entries().to_vec()
}

/// Whether every map `U -> X` factors through `alpha: U -> V`, i.e.
/// `Hom(alpha, X)` is surjective.
pub fn d_alpha_membership<F: Field>(alpha: &ModuleMap<F>, x: &ModuleRep<F>) -> Result<bool> {
    let target_dim = hom_dim(&alpha.source, x)?;
    if target_dim == 0 {
        return Ok(true);
    }
    let f = x.field();
    let mut span = Echelon::new(f, x.dim * alpha.source.dim);
    for h in hom_space(&alpha.target, x)? {
        span.insert(&vectorize(&h.matrix.mul(&alpha.matrix)));
    }
    Ok(span.dim() == target_dim)
}

/// `X in D_sigma` for a map between certified projectives.
pub fn d_sigma_membership<F: Field>(sigma: &ModuleMap<F>, x: &ModuleRep<F>) -> Result<bool> {
    let (Some(src), Some(_)) = (summand_layout(&sigma.source), summand_layout(&sigma.target)) else {
        return Err(Error::NotProjective);
    };
    if !same_algebra(&sigma.source.algebra, &x.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let needed: usize = src.iter().map(|s| x.corner(&s.idempotent).dim()).sum();
    if needed == 0 {
        return Ok(true);
    }
    let f = x.field();
    let mut span = Echelon::new(f, x.dim * src.len());
    for h in hom_from_projective(&sigma.target, x) {
        span.insert(&generator_values(&src, &h.matrix.mul(&sigma.matrix)));
        if span.dim() == needed {
            return Ok(true);
        }
    }
    Ok(span.dim() == needed)
}

/// Sum of the images of all maps `S -> X`, and whether it is all of `X`.
pub fn gen_trace_membership<F: Field>(s: &ModuleRep<F>, x: &ModuleRep<F>) -> Result<(Subspace<F>, bool)> {
    let f = x.field();
    let mut span = Echelon::new(f, x.dim);
    for h in hom_space(s, x)? {
        for col in h.matrix.columns() {
            span.insert(&col);
        }
    }
    let trace = span.to_subspace();
    let full = trace.is_full();
    Ok((trace, full))
}

// ----------------------------------------------------------------------- Ext

/// A free presentation `0 -> K -> A^r -> M -> 0` on chosen generators.
#[derive(Debug, Clone)]
pub struct FreePresentation<F: Field> {
    pub module: ModuleRep<F>,
    pub generators: Vec<Vec<F::Elem>>,
    pub free: ModuleRep<F>,
    pub epi: ModuleMap<F>,
    pub kernel: ModuleRep<F>,
    pub kernel_inclusion: ModuleMap<F>,
}

impl<F: Field> FreePresentation<F> {
    pub fn new(m: &ModuleRep<F>) -> Result<Self> {
        Self::on_vectors(m, m.generating_vectors())
    }

    /// Presentation on any generating set of `m`.
    pub fn on_vectors(m: &ModuleRep<F>, generators: Vec<Vec<F::Elem>>) -> Result<Self> {
        if !m.span_of(&generators).is_full() {
            return Err(Error::InvalidModule("vectors do not generate the module".into()));
        }
        let a = m.algebra.clone();
        let free = ModuleRep::free(&a, generators.len());
        let layout = summand_layout(&free).expect("free is projective");
        let mat = map_from_generator_values(&free, &layout, m, &generators);
        let epi = ModuleMap::unchecked(free.clone(), m.clone(), mat);
        let (kernel, kernel_inclusion) = free.submodule(&epi.kernel_space())?;
        Ok(FreePresentation { module: m.clone(), generators, free, epi, kernel, kernel_inclusion })
    }
}

/// `Ext^1(M, N)` with representing cocycles `K -> N`.
#[derive(Debug, Clone)]
pub struct Ext1<F: Field> {
    pub dim: usize,
    pub presentation: FreePresentation<F>,
    pub target: ModuleRep<F>,
    pub cocycles: Vec<ModuleMap<F>>,
}

pub fn ext1<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<Ext1<F>> {
    ext1_with(FreePresentation::new(m)?, n)
}

/// `Ext^1` from a given presentation: `Hom(K, N)` modulo restrictions of
/// maps `A^r -> N`.
pub fn ext1_with<F: Field>(pres: FreePresentation<F>, n: &ModuleRep<F>) -> Result<Ext1<F>> {
    if !same_algebra(&pres.module.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let f = n.field();
    let ambient = n.dim * pres.kernel.dim;
    let mut span = Echelon::new(f, ambient);
    for h in hom_from_projective(&pres.free, n) {
        span.insert(&vectorize(&h.matrix.mul(&pres.kernel_inclusion.matrix)));
    }
    let mut cocycles = Vec::new();
    for h in hom_space_solve(&pres.kernel, n)? {
        if span.insert(&vectorize(&h.matrix)) {
            cocycles.push(h);
        }
    }
    Ok(Ext1 { dim: cocycles.len(), presentation: pres, target: n.clone(), cocycles })
}

/// An extension `0 -> N -> E -> M -> 0`.
#[derive(Debug, Clone)]
pub struct Extension<F: Field> {
    pub middle: ModuleRep<F>,
    pub inclusion: ModuleMap<F>,
    pub projection: ModuleMap<F>,
}

impl<F: Field> Ext1<F> {
    /// Pushout of the presentation along `sum coeffs[i] * cocycles[i]`.
    pub fn extension(&self, coeffs: &[F::Elem]) -> Result<Extension<F>> {
        let pres = &self.presentation;
        let n = &self.target;
        let f = n.field();
        let mut psi = Matrix::zeros(f, n.dim, pres.kernel.dim);
        for (c, h) in coeffs.iter().zip(&self.cocycles) {
            psi.add_scaled(c, &h.matrix);
        }
        let sum = ModuleRep::direct_sum(&[n, &pres.free])?;
        // relations (psi k, -iota k)
        let rel = Matrix::vstack(f, pres.kernel.dim, &[&psi, &pres.kernel_inclusion.matrix.neg()]);
        let (middle, q) = sum.quotient(&rel.image())?;
        let mut n_in = Matrix::zeros(f, sum.dim, n.dim);
        n_in.paste(0, 0, &Matrix::identity(f, n.dim));
        let inclusion = ModuleMap::unchecked(n.clone(), middle.clone(), q.matrix.mul(&n_in));
        let mut out = Matrix::zeros(f, pres.module.dim, sum.dim);
        out.paste(0, n.dim, &pres.epi.matrix);
        let sec = rel.image().quotient_section();
        let projection = ModuleMap::unchecked(middle.clone(), pres.module.clone(), out.mul(&sec));
        Ok(Extension { middle, inclusion, projection })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn t2() -> Arc<Algebra<crate::field::PrimeField>> {
        catalog::prime("t2_gf2")
    }

    // T2 basis: E11, E21, E22.
    const E11: [u32; 3] = [1, 0, 0];
    const E22: [u32; 3] = [0, 0, 1];

    fn simple(a: &Arc<Algebra<crate::field::PrimeField>>, e: &[u32]) -> ModuleRep<crate::field::PrimeField> {
        let p = ModuleRep::summand(a, e).unwrap();
        let j = Subspace::from_vectors(a.field(), a.dim(), vec![vec![0, 1, 0]]);
        let rad = p.ideal_times(&j);
        p.quotient(&rad).unwrap().0
    }

    #[test]
    fn constructors() {
        let a = t2();
        assert_eq!(ModuleRep::free(&a, 1).dim(), 3);
        assert_eq!(ModuleRep::summand(&a, &E11).unwrap().dim(), 2);
        assert_eq!(ModuleRep::summand(&a, &E22).unwrap().dim(), 1);
        assert!(matches!(ModuleRep::summand(&a, &[0, 1, 0]), Err(Error::NotIdempotent)));
        assert!(ModuleRep::regular(&a).check().is_ok());
    }

    #[test]
    fn hom_examples() {
        let a = t2();
        let s1 = simple(&a, &E11);
        let s2 = simple(&a, &E22);
        assert_eq!(hom_space(&s1, &s2).unwrap().len(), 0);
        let p1 = ModuleRep::summand(&a, &E11).unwrap();
        let p2 = ModuleRep::summand(&a, &E22).unwrap();
        assert_eq!(hom_space(&p2, &p1).unwrap().len(), 1);
        assert_eq!(hom_space_solve(&p2, &p1).unwrap().len(), 1);
        assert_eq!(hom_space(&p1, &p2).unwrap().len(), 0);
        let r = ModuleRep::regular(&a);
        for m in [&s1, &s2, &p1, &r] {
            assert_eq!(hom_space(&r, m).unwrap().len(), m.dim());
            for h in hom_space(&r, m).unwrap() {
                assert!(h.intertwines());
            }
        }
    }

    #[test]
    fn kernel_of_top_map() {
        let a = t2();
        let p1 = ModuleRep::summand(&a, &E11).unwrap();
        let s1 = simple(&a, &E11);
        let h = &hom_space(&p1, &s1).unwrap()[0];
        let sq = h.subquotients();
        assert_eq!(sq.kernel.dim(), 1);
        assert_eq!(sq.cokernel.dim(), 0);
        // the kernel is killed by E11 and fixed by E22
        assert!(sq.kernel.act(&E11).is_zero());
        assert!(sq.kernel.act(&E22).is_identity());
    }

    #[test]
    fn ideal_actions_on_regular() {
        let a = t2();
        let f = a.field();
        let i = Subspace::from_vectors(f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let r = ModuleRep::regular(&a);
        assert_eq!(r.ideal_times(&i), i);
        assert!(r.annihilator_of(&i).is_zero());
        let zero = Subspace::zero(f, 3);
        assert!(r.ideal_times(&zero).is_zero());
        assert!(r.annihilator_of(&zero).is_full());
    }

    #[test]
    fn ext_over_t2() {
        let a = t2();
        let s1 = simple(&a, &E11);
        let s2 = simple(&a, &E22);
        let d12 = ext1(&s1, &s2).unwrap().dim;
        let d21 = ext1(&s2, &s1).unwrap().dim;
        assert_eq!(d12 + d21, 1);
        assert_eq!(d12, 1);
        let e = ext1(&s1, &s2).unwrap();
        let ext = e.extension(&[1]).unwrap();
        assert_eq!(ext.middle.dim(), 2);
        assert!(ext.inclusion.intertwines() && ext.projection.intertwines());
        assert!(ext.inclusion.is_injective() && ext.projection.is_surjective());
        assert!(ext.projection.matrix().mul(ext.inclusion.matrix()).is_zero());
    }

    #[test]
    fn gen_membership() {
        let a = t2();
        let s1 = simple(&a, &E11);
        let s2 = simple(&a, &E22);
        let (trace, inside) = gen_trace_membership(&s1, &s2).unwrap();
        assert!(trace.is_zero() && !inside);
        assert!(gen_trace_membership(&s1, &s1).unwrap().1);
        assert!(gen_trace_membership(&ModuleRep::regular(&a), &s2).unwrap().1);
    }

    #[test]
    fn identity_sigma_and_zero_source() {
        let a = t2();
        let r = ModuleRep::regular(&a);
        let id = ModuleMap::identity(&r);
        let zero = ModuleMap::zero(&ModuleRep::zero(&a), &r);
        for x in [simple(&a, &E11), simple(&a, &E22), r.clone()] {
            assert!(d_sigma_membership(&id, &x).unwrap());
            assert!(d_sigma_membership(&zero, &x).unwrap());
        }
        let s = simple(&a, &E11);
        assert!(matches!(
            d_sigma_membership(&ModuleMap::identity(&s), &s),
            Err(Error::NotProjective)
        ));
    }
}
