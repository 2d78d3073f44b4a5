//! The recollement attached to `I = A e A`, with the quotient side realized
//! as modules over the corner algebra `B = e A e`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::module::{hom_dim, hom_space_solve, left_ideal_basis, same_algebra, ModuleMap, ModuleRep};
use crate::ttf::{ideal_closure, Ideal};

/// `B = e A e` on the RREF basis of the subspace `e A e`.
#[derive(Debug, Clone)]
pub struct Corner<F: Field> {
    parent: Arc<Algebra<F>>,
    e: Vec<F::Elem>,
    space: Subspace<F>,
    algebra: Arc<Algebra<F>>,
}

pub fn corner_algebra<F: Field>(a: &Arc<Algebra<F>>, e: &[F::Elem]) -> Result<Corner<F>> {
    if e.len() != a.dim() {
        return Err(Error::DimensionMismatch("idempotent length".into()));
    }
    if !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    let f = a.field();
    let proj = a.left_mult(e).mul(&a.right_mult(e));
    let space = proj.image();
    let basis = space.vectors();
    let d = basis.len();
    let mut constants = vec![vec![Vec::new(); d]; d];
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            constants[i][j] = space.coords(&a.mul(x, y)).expect("eAe is closed");
        }
    }
    let unit = space.coords(e).expect("e lies in eAe");
    let b = Arc::new(Algebra::new(f, constants, unit, None)?);
    Ok(Corner { parent: a.clone(), e: e.to_vec(), space, algebra: b })
}

impl<F: Field> Corner<F> {
    pub fn parent(&self) -> &Arc<Algebra<F>> {
        &self.parent
    }
    pub fn idempotent(&self) -> &[F::Elem] {
        &self.e
    }
    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    /// Columns are the basis of `B` in the coordinates of `A`.
    pub fn embedding(&self) -> Matrix<F> {
        self.space.inclusion()
    }
    pub fn restrict(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.space.coords(x)
    }
}

/// `j_! X = A e (x)_B X` with the projection from `A e (x)_k X`.
#[derive(Debug, Clone)]
pub struct Induced<F: Field> {
    pub module: ModuleRep<F>,
    /// `A e (x)_k X -> A e (x)_B X`; index `(i, x)` is `i * dim X + x`.
    pub projection: Matrix<F>,
    pub relations: Subspace<F>,
}

/// `j_* X = Hom_B(e A, X)`, stored on an RREF basis of vectorized maps.
#[derive(Debug, Clone)]
pub struct Coinduced<F: Field> {
    pub module: ModuleRep<F>,
    /// Row-major vectorizations of the basis maps `eA -> X`.
    pub maps: Subspace<F>,
    pub rows: usize,
    pub cols: usize,
}

impl<F: Field> Coinduced<F> {
    /// The map `eA -> X` with coordinates `c`.
    pub fn map_of(&self, c: &[F::Elem]) -> Matrix<F> {
        let f = self.maps.field();
        let v = self.maps.inclusion().mul_vec(c);
        let rows = v.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect();
        Matrix::from_rows(f, self.cols, rows).expect("shape")
    }
}

#[derive(Debug, Clone)]
pub struct Recollement<F: Field> {
    corner: Corner<F>,
    ideal: Ideal<F>,
    /// Basis of `A e` (columns in `A` coordinates).
    left: Subspace<F>,
    /// Basis of `e A`.
    right: Subspace<F>,
    /// `e A` as a left `B`-module.
    right_b: ModuleRep<F>,
}

impl<F: Field> Recollement<F> {
    pub fn new(a: &Arc<Algebra<F>>, e: &[F::Elem]) -> Result<Self> {
        let corner = corner_algebra(a, e)?;
        let ideal = ideal_closure(a, &[e.to_vec()]);
        let left = left_ideal_basis(a, e);
        let right = a.left_mult(e).image();
        let emb = corner.embedding();
        let inc = right.inclusion();
        let actions = emb
            .columns()
            .iter()
            .map(|b| right.coords_matrix(&a.left_mult(b).mul(&inc)))
            .collect();
        let right_b = ModuleRep::new(corner.algebra.clone(), actions)?;
        Ok(Recollement { corner, ideal, left, right, right_b })
    }

    pub fn corner(&self) -> &Corner<F> {
        &self.corner
    }
    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    fn check_a(&self, m: &ModuleRep<F>) -> Result<()> {
        if same_algebra(m.algebra(), &self.corner.parent) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
    fn check_b(&self, x: &ModuleRep<F>) -> Result<()> {
        if same_algebra(x.algebra(), &self.corner.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `i^* M = M / I M` with the projection.
    pub fn i_upper_star(&self, m: &ModuleRep<F>) -> Result<(ModuleRep<F>, ModuleMap<F>)> {
        self.check_a(m)?;
        m.quotient(&m.ideal_times(self.ideal.space()))
    }

    /// `i^! M = ann_M(I)` with the inclusion.
    pub fn i_shriek(&self, m: &ModuleRep<F>) -> Result<(ModuleRep<F>, ModuleMap<F>)> {
        self.check_a(m)?;
        m.submodule(&m.annihilator_of(self.ideal.space()))
    }

    /// `j^* M = e M` as a `B`-module, with `e M` as a subspace of `M`.
    pub fn j_upper_star(&self, m: &ModuleRep<F>) -> Result<(ModuleRep<F>, Subspace<F>)> {
        self.check_a(m)?;
        let em = m.corner(&self.corner.e);
        let inc = em.inclusion();
        let actions = self
            .corner
            .embedding()
            .columns()
            .iter()
            .map(|b| em.coords_matrix(&m.act(b).mul(&inc)))
            .collect();
        Ok((ModuleRep::new(self.corner.algebra.clone(), actions)?, em))
    }

    pub fn j_shriek(&self, x: &ModuleRep<F>) -> Result<Induced<F>> {
        self.check_b(x)?;
        let a = &self.corner.parent;
        let f = a.field();
        let p = self.left.dim();
        let dx = x.dim();
        let ae = self.left.vectors();
        let bs = self.corner.embedding().columns();
        let mut rels = Vec::new();
        for (i, u) in ae.iter().enumerate() {
            for (j, b) in bs.iter().enumerate() {
                let ub = self.left.coords(&a.mul(u, b)).expect("A e B lies in A e");
                let bx = &x.actions()[j];
                for xi in 0..dx {
                    let mut v = vec![f.zero(); p * dx];
                    for (l, c) in ub.iter().enumerate() {
                        v[l * dx + xi] = f.add(&v[l * dx + xi], c);
                    }
                    for y in 0..dx {
                        let c = bx.get(y, xi);
                        v[i * dx + y] = f.sub(&v[i * dx + y], c);
                    }
                    rels.push(v);
                }
            }
        }
        let relations = Subspace::from_vectors(f, p * dx, rels);
        let inc = self.left.inclusion();
        let actions = a
            .regular_representation(crate::algebra::Side::Left)
            .iter()
            .map(|l| kron_identity(&self.left.coords_matrix(&l.mul(&inc)), dx))
            .collect();
        let tensor = ModuleRep::new(a.clone(), actions)?;
        let (module, proj) = tensor.quotient(&relations)?;
        Ok(Induced { module, projection: proj.matrix().clone(), relations })
    }

    pub fn j_lower_star(&self, x: &ModuleRep<F>) -> Result<Coinduced<F>> {
        self.check_b(x)?;
        let a = &self.corner.parent;
        let f = a.field();
        let q = self.right.dim();
        let dx = x.dim();
        let homs = hom_space_solve(&self.right_b, x)?;
        let maps = Subspace::from_vectors(f, dx * q, homs.iter().map(|h| h.matrix().entries().to_vec()).collect());
        let inc = self.right.inclusion();
        let mut actions = Vec::with_capacity(a.dim());
        for i in 0..a.dim() {
            // (a phi)(y) = phi(y a)
            let ra = self.right.coords_matrix(&a.right_mult(&a.basis_vector(i)).mul(&inc));
            let cols: Vec<Vec<F::Elem>> = maps
                .vectors()
                .iter()
                .map(|v| {
                    let phi = Matrix::from_rows(f, q, v.chunks(q.max(1)).take(dx).map(|r| r.to_vec()).collect())
                        .expect("shape");
                    maps.coords(phi.mul(&ra).entries()).expect("Hom_B is an A-module")
                })
                .collect();
            actions.push(Matrix::from_columns(f, maps.dim(), &cols));
        }
        let module = ModuleRep::new(a.clone(), actions)?;
        Ok(Coinduced { module, maps, rows: dx, cols: q })
    }

    /// Counit `j_! j^* M -> M`, `a (x) m -> a m`.
    pub fn counit(&self, m: &ModuleRep<F>) -> Result<ModuleMap<F>> {
        let (jm, em) = self.j_upper_star(m)?;
        let ind = self.j_shriek(&jm)?;
        let f = m.field();
        let mut cols = Vec::new();
        for u in self.left.vectors() {
            let au = m.act(&u);
            for v in em.vectors() {
                cols.push(au.mul_vec(&v));
            }
        }
        let full = Matrix::from_columns(f, m.dim(), &cols);
        let sec = ind.relations.quotient_section();
        ModuleMap::new(ind.module, m.clone(), full.mul(&sec))
    }

    /// Unit `M -> j_* j^* M`, `m -> (y -> y m)`.
    pub fn unit(&self, m: &ModuleRep<F>) -> Result<ModuleMap<F>> {
        let (jm, em) = self.j_upper_star(m)?;
        let co = self.j_lower_star(&jm)?;
        let f = m.field();
        let ys = self.right.vectors();
        let mut cols = Vec::new();
        for c in 0..m.dim() {
            let mut v = vec![f.zero(); m.dim()];
            v[c] = f.one();
            let phi_cols: Vec<Vec<F::Elem>> =
                ys.iter().map(|y| em.coords(&m.act(y).mul_vec(&v)).expect("y m lies in e M")).collect();
            let phi = Matrix::from_columns(f, em.dim(), &phi_cols);
            cols.push(co.maps.coords(phi.entries()).expect("y -> y m is B-linear"));
        }
        ModuleMap::new(m.clone(), co.module, Matrix::from_columns(f, co.maps.dim(), &cols))
    }

    /// `X -> j^* j_! X`, `x -> e (x) x`.
    pub fn shriek_unit(&self, x: &ModuleRep<F>) -> Result<ModuleMap<F>> {
        let ind = self.j_shriek(x)?;
        let (jj, em) = self.j_upper_star(&ind.module)?;
        let f = x.field();
        let ce = self.left.coords(&self.corner.e).expect("e lies in A e");
        let dx = x.dim();
        let mut cols = Vec::new();
        for xi in 0..dx {
            let mut t = vec![f.zero(); ce.len() * dx];
            for (l, c) in ce.iter().enumerate() {
                t[l * dx + xi] = c.clone();
            }
            let v = ind.projection.mul_vec(&t);
            cols.push(em.coords(&v).expect("e (x) x lies in e j_! X"));
        }
        ModuleMap::new(x.clone(), jj, Matrix::from_columns(f, em.dim(), &cols))
    }

    /// `j^* j_* X -> X`, `phi -> phi(e)`.
    pub fn star_counit(&self, x: &ModuleRep<F>) -> Result<ModuleMap<F>> {
        let co = self.j_lower_star(x)?;
        let (jj, em) = self.j_upper_star(&co.module)?;
        let f = x.field();
        let ce = self.right.coords(&self.corner.e).expect("e lies in e A");
        let cols: Vec<Vec<F::Elem>> =
            em.vectors().iter().map(|c| co.map_of(c).mul_vec(&ce)).collect();
        ModuleMap::new(jj, x.clone(), Matrix::from_columns(f, x.dim(), &cols))
    }

    /// The two four-term sequences for `M`.
    pub fn verify_sequences(&self, m: &ModuleRep<F>) -> Result<SequenceReport> {
        let i = self.ideal.space();
        let eps = self.counit(m)?;
        let eta = self.unit(m)?;
        let im = m.ideal_times(i);
        let ann = m.annihilator_of(i);

        let (ker_e, _) = eps.source().submodule(&eps.kernel_space())?;
        let counit_image_is_im = eps.image_space() == im;
        let counit_kernel_torsion = ker_e.ideal_times(i).is_zero();

        let (coker_u, _) = eta.target().quotient(&eta.image_space())?;
        let unit_kernel_is_ann = eta.kernel_space() == ann;
        let unit_cokernel_torsion = coker_u.ideal_times(i).is_zero();

        let (jm, _) = self.j_upper_star(m)?;
        Ok(SequenceReport {
            module_dim: m.dim(),
            j_star_dim: jm.dim(),
            counit_image_is_im,
            counit_kernel_torsion,
            unit_kernel_is_ann,
            unit_cokernel_torsion,
            kernel_identity: (jm.dim() == 0) == im.is_zero(),
        })
    }

    /// Adjunction dimension identities for a pair `(X over B, M over A)`.
    pub fn adjunction_dims(&self, x: &ModuleRep<F>, m: &ModuleRep<F>) -> Result<AdjunctionReport> {
        let (jm, _) = self.j_upper_star(m)?;
        let shriek = self.j_shriek(x)?.module;
        let star = self.j_lower_star(x)?.module;
        Ok(AdjunctionReport {
            hom_shriek_m: hom_dim(&shriek, m)?,
            hom_x_jm: hom_dim(x, &jm)?,
            hom_m_star: hom_dim(m, &star)?,
            hom_jm_x: hom_dim(&jm, x)?,
        })
    }
}

fn kron_identity<F: Field>(m: &Matrix<F>, n: usize) -> Matrix<F> {
    let f = m.field();
    let mut out = Matrix::zeros(f, m.rows() * n, m.cols() * n);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if f.is_zero(v) {
                continue;
            }
            for k in 0..n {
                out.set(r * n + k, c * n + k, v.clone());
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceReport {
    pub module_dim: usize,
    pub j_star_dim: usize,
    /// `Im(j_! j^* M -> M) = I M`, so the cokernel is `i_* i^* M`.
    pub counit_image_is_im: bool,
    /// The kernel of the counit is killed by `I`.
    pub counit_kernel_torsion: bool,
    /// `Ker(M -> j_* j^* M) = ann_M(I) = i_* i^! M`.
    pub unit_kernel_is_ann: bool,
    /// The cokernel of the unit is killed by `I`.
    pub unit_cokernel_torsion: bool,
    /// `j^* M = 0` exactly when `I M = 0`.
    pub kernel_identity: bool,
}

impl SequenceReport {
    pub fn ok(&self) -> bool {
        self.counit_image_is_im
            && self.counit_kernel_torsion
            && self.unit_kernel_is_ann
            && self.unit_cokernel_torsion
            && self.kernel_identity
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjunctionReport {
    pub hom_shriek_m: usize,
    pub hom_x_jm: usize,
    pub hom_m_star: usize,
    pub hom_jm_x: usize,
}

impl AdjunctionReport {
    pub fn ok(&self) -> bool {
        self.hom_shriek_m == self.hom_x_jm && self.hom_m_star == self.hom_jm_x
    }
}
