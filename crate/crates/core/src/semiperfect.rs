//! Jacobson radical, primitive idempotents, simple tops, projective covers
//! and the cover decomposition of a second projective epimorphism.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Side};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix, Subspace};
use crate::meataxe;
use crate::module::{
    hom_space, left_ideal_basis, map_from_generator_values, summand_layout, ModuleMap, ModuleRep,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalMethod {
    /// Span of the nontrivial paths of a bound path algebra.
    ArrowIdeal,
    /// Null space of the form `(x, y) -> tr(L_xy)`, valid in characteristic
    /// zero or above the dimension.
    TraceForm,
    /// Intersection of the annihilators of the composition factors of the
    /// regular module, over any finite prime field.
    CompositionFactors,
}

#[derive(Debug, Clone)]
pub struct Radical<F: Field> {
    pub space: Subspace<F>,
    pub method: RadicalMethod,
    /// Smallest `m` with `J^m = 0`.
    pub nilpotency_index: usize,
}

/// `X Y` for subspaces of the algebra.
pub fn product_space<F: Field>(a: &Algebra<F>, x: &Subspace<F>, y: &Subspace<F>) -> Subspace<F> {
    let mut span = Echelon::new(a.field(), a.dim());
    let ys = y.vectors();
    for u in x.vectors() {
        for v in &ys {
            span.insert(&a.mul(&u, v));
            if span.is_full() {
                return span.to_subspace();
            }
        }
    }
    span.to_subspace()
}

/// Smallest `m` with `X^m = 0`, if it is at most `dim + 1`.
pub fn nilpotency_index<F: Field>(a: &Algebra<F>, x: &Subspace<F>) -> Option<usize> {
    let mut power = x.clone();
    let mut m = 1;
    while !power.is_zero() {
        power = product_space(a, &power, x);
        m += 1;
        if m > a.dim() + 1 {
            return None;
        }
    }
    Some(m)
}

fn trace_form_radical<F: Field>(a: &Algebra<F>) -> Subspace<F> {
    let f = a.field();
    let n = a.dim();
    let left = a.regular_representation(Side::Left);
    let trace = |m: &Matrix<F>| {
        let mut t = f.zero();
        for i in 0..m.rows() {
            t = f.add(&t, m.get(i, i));
        }
        t
    };
    let g = Matrix::from_fn(f, n, n, |i, j| trace(&left[i].mul(&left[j])));
    g.kernel()
}

fn composition_factor_radical<F: Field, R: Rng + ?Sized>(a: &Algebra<F>, rng: &mut R) -> Result<Subspace<F>> {
    let f = a.field();
    let n = a.dim();
    let left = a.regular_representation(Side::Left).to_vec();
    let factors = meataxe::composition_factors(f, n, &left, rng)?;
    // x is in J iff it acts as zero on every factor.
    let mut rows = Vec::new();
    for acts in &factors {
        let d = acts[0].rows();
        for r in 0..d {
            for c in 0..d {
                rows.push(acts.iter().map(|m| m.get(r, c).clone()).collect());
            }
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(f, n));
    }
    Ok(Matrix::from_rows(f, n, rows)?.kernel())
}

/// The Jacobson radical, by the first applicable method of: quiver
/// provenance, trace form, composition factors.
pub fn radical<F: Field, R: Rng + ?Sized>(a: &Algebra<F>, rng: &mut R) -> Result<Radical<F>> {
    let f = a.field();
    let (space, method) = if let Some(p) = a.quiver_provenance() {
        let vecs = p.arrow_ideal.iter().map(|&i| a.basis_vector(i)).collect();
        (Subspace::from_vectors(f, a.dim(), vecs), RadicalMethod::ArrowIdeal)
    } else {
        let ch = f.characteristic();
        if ch == 0 || ch > a.dim() as u64 {
            (trace_form_radical(a), RadicalMethod::TraceForm)
        } else if f.order().is_some() {
            (composition_factor_radical(a, rng)?, RadicalMethod::CompositionFactors)
        } else {
            return Err(Error::UnsupportedRadical(format!(
                "characteristic {ch} does not exceed dimension {}",
                a.dim()
            )));
        }
    };
    if !a.is_two_sided(&space) {
        return Err(Error::UnsupportedRadical("computed radical is not two-sided".into()));
    }
    let nilpotency_index = nilpotency_index(a, &space)
        .ok_or_else(|| Error::UnsupportedRadical("computed radical is not nilpotent".into()))?;
    Ok(Radical { space, method, nilpotency_index })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdempotentMethod {
    VertexIdempotents,
    BasisElements,
    Lifted,
}

/// The semiperfect toolkit of an algebra over a finite prime field.
#[derive(Debug, Clone)]
pub struct Semiperfect<F: Field> {
    algebra: Arc<Algebra<F>>,
    radical: Radical<F>,
    idempotents: Vec<Vec<F::Elem>>,
    method: IdempotentMethod,
    tops: Vec<ModuleRep<F>>,
    classes: Vec<usize>,
    seed: u64,
}

/// `A e / J A e`.
pub fn top_of_summand<F: Field>(a: &Arc<Algebra<F>>, j: &Subspace<F>, e: &[F::Elem]) -> Result<ModuleRep<F>> {
    let p = ModuleRep::summand(a, e)?;
    let rad = p.ideal_times(j);
    Ok(p.quotient(&rad)?.0)
}

fn is_primitive<F: Field, R: Rng + ?Sized>(
    a: &Arc<Algebra<F>>,
    j: &Subspace<F>,
    e: &[F::Elem],
    rng: &mut R,
) -> Result<bool> {
    let top = top_of_summand(a, j, e)?;
    meataxe::is_irreducible(a.field(), top.dim(), top.actions(), rng)
}

fn power<F: Field>(a: &Algebra<F>, x: &[F::Elem], mut exp: u64) -> Vec<F::Elem> {
    let mut acc = a.unit().to_vec();
    let mut base = x.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = a.mul(&acc, &base);
        }
        base = a.mul(&base, &base);
        exp >>= 1;
    }
    acc
}

/// Orthogonal basis idempotents summing to one, if any subset does.
fn basis_idempotent_subset<F: Field>(a: &Algebra<F>) -> Option<Vec<usize>> {
    let cand: Vec<usize> = (0..a.dim()).filter(|&i| a.is_idempotent(&a.basis_vector(i))).collect();
    if cand.len() > 20 {
        return None;
    }
    fn go<F: Field>(
        a: &Algebra<F>,
        cand: &[usize],
        start: usize,
        chosen: &mut Vec<usize>,
        sum: Vec<F::Elem>,
    ) -> bool {
        if sum == a.unit() {
            return true;
        }
        for k in start..cand.len() {
            let i = cand[k];
            let bi = a.basis_vector(i);
            let orth = chosen.iter().all(|&c| {
                let bc = a.basis_vector(c);
                a.is_zero_element(&a.mul(&bi, &bc)) && a.is_zero_element(&a.mul(&bc, &bi))
            });
            if !orth {
                continue;
            }
            chosen.push(i);
            if go(a, cand, k + 1, chosen, a.add(&sum, &bi)) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    go(a, &cand, 0, &mut chosen, a.zero_vector()).then_some(chosen)
}

/// Primitive orthogonal idempotents of the semisimple quotient, one simple
/// left ideal at a time.
fn semisimple_idempotents<F: Field, R: Rng + ?Sized>(b: &Algebra<F>, rng: &mut R) -> Result<Vec<Vec<F::Elem>>> {
    let f = b.field();
    let n = b.dim();
    let left = b.regular_representation(Side::Left).to_vec();
    let mut u = b.unit().to_vec();
    let mut out = Vec::new();
    while !b.is_zero_element(&u) {
        let bu = left_ideal_basis(b, &u);
        let acts = meataxe::restrict(&left, &bu);
        let l_local = meataxe::simple_submodule(f, bu.dim(), &acts, rng)?;
        let l: Vec<Vec<F::Elem>> = bu.inclusion().mul(&l_local.inclusion()).columns();
        // Find eps in L with x eps = x for all x in L.
        let d = l.len();
        let mut sys = Matrix::zeros(f, n * d, d);
        let mut rhs = Vec::with_capacity(n * d);
        for (jx, x) in l.iter().enumerate() {
            for (k, y) in l.iter().enumerate() {
                let p = b.mul(x, y);
                for (r, v) in p.into_iter().enumerate() {
                    sys.set(jx * n + r, k, v);
                }
            }
            rhs.extend(x.iter().cloned());
        }
        let c = sys
            .solve(&rhs)?
            .ok_or_else(|| Error::InvalidAlgebra("quotient by the radical is not semisimple".into()))?;
        let mut eps = vec![f.zero(); n];
        for (ck, y) in c.iter().zip(&l) {
            for (e, v) in eps.iter_mut().zip(y) {
                *e = f.mul_add(e, ck, v);
            }
        }
        let eps = b.mul(&u, &eps);
        if b.is_zero_element(&eps) {
            return Err(Error::InvalidAlgebra("zero idempotent in semisimple quotient".into()));
        }
        u = b.sub(&u, &eps);
        out.push(eps);
    }
    Ok(out)
}

fn lift_idempotents<F: Field>(
    a: &Algebra<F>,
    section: &Matrix<F>,
    quotient_idempotents: &[Vec<F::Elem>],
) -> Vec<Vec<F::Elem>> {
    let f = a.field();
    let p = f.characteristic();
    let mut exp = p;
    while exp < a.dim() as u64 {
        exp = exp.saturating_mul(p);
    }
    let mut out: Vec<Vec<F::Elem>> = Vec::new();
    let mut u = a.unit().to_vec();
    let r = quotient_idempotents.len();
    for (i, eps) in quotient_idempotents.iter().enumerate() {
        if i + 1 == r {
            out.push(u.clone());
            break;
        }
        let x = section.mul_vec(eps);
        let y = a.mul(&a.mul(&u, &x), &u);
        // (y^2 - y) is nilpotent and commutes with y, so y^(p^k) is an
        // idempotent with the same image once p^k reaches the nilpotency.
        let e = power(a, &y, exp);
        u = a.sub(&u, &e);
        out.push(e);
    }
    out
}

impl<F: Field> Semiperfect<F> {
    /// Computes the radical and a certified complete set of primitive
    /// orthogonal idempotents. The seed drives the randomized MeatAxe steps.
    pub fn new(algebra: &Arc<Algebra<F>>, seed: u64) -> Result<Self> {
        let a = algebra;
        let f = a.field();
        if f.order().is_none() {
            return Err(Error::NotPrimeField);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let radical = radical(a, &mut rng)?;
        let j = &radical.space;

        let mut found = None;
        if let Some(p) = a.quiver_provenance() {
            let es: Vec<Vec<F::Elem>> =
                p.vertex_idempotents.iter().map(|&i| a.basis_vector(i)).collect();
            if all_primitive(a, j, &es, &mut rng)? {
                found = Some((es, IdempotentMethod::VertexIdempotents));
            }
        }
        if found.is_none() {
            if let Some(idx) = basis_idempotent_subset(a) {
                let es: Vec<Vec<F::Elem>> = idx.iter().map(|&i| a.basis_vector(i)).collect();
                if all_primitive(a, j, &es, &mut rng)? {
                    found = Some((es, IdempotentMethod::BasisElements));
                }
            }
        }
        let (idempotents, method) = match found {
            Some(x) => x,
            None => {
                let (abar, _) = a.quotient_by(j)?;
                let eps = semisimple_idempotents(&abar, &mut rng)?;
                let es = lift_idempotents(a, &j.quotient_section(), &eps);
                if !all_primitive(a, j, &es, &mut rng)? {
                    return Err(Error::Inconclusive("lifted idempotent failed certification".into()));
                }
                (es, IdempotentMethod::Lifted)
            }
        };
        check_complete(a, &idempotents)?;
        let tops = idempotents
            .iter()
            .map(|e| top_of_summand(a, j, e))
            .collect::<Result<Vec<_>>>()?;
        let classes = (0..idempotents.len())
            .map(|i| {
                (0..=i)
                    .find(|&k| !tops[k].act(&idempotents[i]).is_zero())
                    .expect("e_i acts on its own top")
            })
            .collect();
        Ok(Semiperfect { algebra: a.clone(), radical, idempotents, method, tops, classes, seed })
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    pub fn radical(&self) -> &Radical<F> {
        &self.radical
    }
    pub fn idempotents(&self) -> &[Vec<F::Elem>] {
        &self.idempotents
    }
    pub fn idempotent_method(&self) -> IdempotentMethod {
        self.method
    }
    /// `top(A e_i)` for each primitive idempotent.
    pub fn simple_tops(&self) -> &[ModuleRep<F>] {
        &self.tops
    }
    /// For each idempotent, the index of the first one with an isomorphic
    /// projective.
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// One idempotent per isomorphism class of indecomposable projectives.
    pub fn class_representatives(&self) -> Vec<usize> {
        (0..self.idempotents.len()).filter(|&i| self.classes[i] == i).collect()
    }

    /// Projective cover: a direct sum of `A e_i` mapping onto `m` with
    /// kernel inside the radical of the cover.
    pub fn projective_cover(&self, m: &ModuleRep<F>) -> Result<CoverResult<F>> {
        let a = &self.algebra;
        let mut u = m.ideal_times(&self.radical.space);
        let mut chosen_e = Vec::new();
        let mut values = Vec::new();
        for r in self.class_representatives() {
            let e = &self.idempotents[r];
            loop {
                let pick = m.corner(e).vectors().into_iter().find(|v| !u.contains_vector(v));
                let Some(v) = pick else { break };
                let grown = m.span_of(&[v.clone()]);
                u = u.sum(&grown)?;
                chosen_e.push(e.clone());
                values.push(v);
            }
        }
        if !u.is_full() {
            return Err(Error::Inconclusive("cover generators do not span the module".into()));
        }
        let cover = ModuleRep::projective(a, &chosen_e)?;
        let layout = summand_layout(&cover).expect("projective");
        let mat = map_from_generator_values(&cover, &layout, m, &values);
        let map = ModuleMap::unchecked(cover.clone(), m.clone(), mat);
        let (kernel, kernel_inclusion) = cover.submodule(&map.kernel_space())?;
        Ok(CoverResult { cover, map, kernel, kernel_inclusion })
    }

    pub fn iso_test<R: Rng + ?Sized>(
        &self,
        m: &ModuleRep<F>,
        n: &ModuleRep<F>,
        rng: &mut R,
    ) -> Result<IsoVerdict<F>> {
        module_iso_test(m, n, Some(&self.tops), rng)
    }

    /// Whether a module is projective: its cover has zero kernel.
    pub fn is_projective(&self, m: &ModuleRep<F>) -> Result<bool> {
        Ok(self.projective_cover(m)?.kernel.dim() == 0)
    }
}

fn all_primitive<F: Field, R: Rng + ?Sized>(
    a: &Arc<Algebra<F>>,
    j: &Subspace<F>,
    es: &[Vec<F::Elem>],
    rng: &mut R,
) -> Result<bool> {
    for e in es {
        if !is_primitive(a, j, e, rng)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_complete<F: Field>(a: &Algebra<F>, es: &[Vec<F::Elem>]) -> Result<()> {
    let mut sum = a.zero_vector();
    for (i, e) in es.iter().enumerate() {
        if !a.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        for (k, g) in es.iter().enumerate() {
            if i != k && !a.is_zero_element(&a.mul(e, g)) {
                return Err(Error::InvalidAlgebra("idempotents are not orthogonal".into()));
            }
        }
        sum = a.add(&sum, e);
    }
    if sum != a.unit() {
        return Err(Error::InvalidAlgebra("idempotents do not sum to one".into()));
    }
    Ok(())
}

/// A projective cover `p: Q -> M` and its kernel.
#[derive(Debug, Clone)]
pub struct CoverResult<F: Field> {
    pub cover: ModuleRep<F>,
    pub map: ModuleMap<F>,
    pub kernel: ModuleRep<F>,
    pub kernel_inclusion: ModuleMap<F>,
}

/// Decomposition `Q' = Q (+) P` of a projective epimorphism `p': Q' -> M`
/// against a cover `p: Q -> M`, with `Ker p' = Ker p (+) P`.
#[derive(Debug, Clone)]
pub struct CoverDecomposition<F: Field> {
    /// `g: Q' -> Q` with `p g = p'`.
    pub to_cover: ModuleMap<F>,
    /// `s: Q -> Q'` with `g s = 1`.
    pub section: ModuleMap<F>,
    pub complement: ModuleRep<F>,
    pub complement_inclusion: ModuleMap<F>,
    /// `Q (+) P -> Q'` and its inverse.
    pub iso: ModuleMap<F>,
    pub iso_inverse: ModuleMap<F>,
    /// `Ker p (+) P -> Ker p'` and its inverse.
    pub kernel_iso: ModuleMap<F>,
    pub kernel_iso_inverse: ModuleMap<F>,
}

/// Finds a map `x` in the span of `basis` with `post . x = target`.
fn solve_factorization<F: Field>(
    basis: &[ModuleMap<F>],
    post: &Matrix<F>,
    target: &Matrix<F>,
) -> Result<Option<Matrix<F>>> {
    let f = target.field();
    let len = target.rows() * target.cols();
    if basis.is_empty() {
        return Ok(target.is_zero().then(|| {
            Matrix::zeros(f, post.cols(), target.cols())
        }));
    }
    let cols: Vec<Vec<F::Elem>> = basis.iter().map(|h| post.mul(h.matrix()).entries().to_vec()).collect();
    let sys = Matrix::from_columns(f, len, &cols);
    let Some(c) = sys.solve(target.entries())? else { return Ok(None) };
    let mut x = Matrix::zeros(f, basis[0].matrix().rows(), basis[0].matrix().cols());
    for (ci, h) in c.iter().zip(basis) {
        x.add_scaled(ci, h.matrix());
    }
    Ok(Some(x))
}

pub fn lemma21_decompose<F: Field>(
    cover: &CoverResult<F>,
    other: &ModuleMap<F>,
) -> Result<CoverDecomposition<F>> {
    let f = other.source().field().clone();
    let q = &cover.cover;
    let q2 = other.source();
    if q2.projective_summands().is_none() {
        return Err(Error::NotProjective);
    }
    if !other.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let p = cover.map.matrix();
    let p2 = other.matrix();
    let g = solve_factorization(&hom_space(q2, q)?, p, p2)?
        .ok_or_else(|| Error::Inconclusive("no lift of p' through the cover".into()))?;
    let h = solve_factorization(&hom_space(q, q2)?, p2, p)?
        .ok_or_else(|| Error::Inconclusive("no lift of the cover through p'".into()))?;
    let gh_inv = g
        .mul(&h)
        .inverse()
        .ok_or_else(|| Error::Inconclusive("g h is not invertible; p is not a cover".into()))?;
    let s = h.mul(&gh_inv);
    let ker_g = g.kernel();
    let (complement, complement_inclusion) = q2.submodule(&ker_g)?;
    let iota = complement_inclusion.matrix();

    let sum = ModuleRep::direct_sum(&[q, &complement])?;
    let phi = Matrix::hstack(&f, q2.dim(), &[&s, iota]);
    let rest = Matrix::identity(&f, q2.dim()).sub(&s.mul(&g));
    let phi_inv = Matrix::vstack(&f, q2.dim(), &[&g, &ker_g.coords_matrix(&rest)]);

    let kp = cover.kernel_inclusion.matrix();
    let ker_p2 = p2.kernel();
    let (kernel2, k2) = q2.submodule(&ker_p2)?;
    let ksum = ModuleRep::direct_sum(&[&cover.kernel, &complement])?;
    let kphi = ker_p2.coords_matrix(&Matrix::hstack(&f, q2.dim(), &[&s.mul(kp), iota]));
    let ker_p = cover.kernel_inclusion.image_space();
    let gk = g.mul(k2.matrix());
    let kphi_inv = Matrix::vstack(
        &f,
        kernel2.dim(),
        &[&ker_p.coords_matrix(&gk), &ker_g.coords_matrix(&rest.mul(k2.matrix()))],
    );

    Ok(CoverDecomposition {
        to_cover: ModuleMap::unchecked(q2.clone(), q.clone(), g),
        section: ModuleMap::unchecked(q.clone(), q2.clone(), s),
        complement,
        complement_inclusion,
        iso: ModuleMap::unchecked(sum.clone(), q2.clone(), phi),
        iso_inverse: ModuleMap::unchecked(q2.clone(), sum, phi_inv),
        kernel_iso: ModuleMap::unchecked(ksum.clone(), kernel2.clone(), kphi),
        kernel_iso_inverse: ModuleMap::unchecked(kernel2, ksum, kphi_inv),
    })
}

impl<F: Field> CoverDecomposition<F> {
    /// Re-verifies every claimed identity by multiplication.
    pub fn verify(&self, cover: &CoverResult<F>, other: &ModuleMap<F>) -> bool {
        let id = |m: &ModuleMap<F>| m.matrix().is_identity();
        let maps = [&self.iso, &self.iso_inverse, &self.kernel_iso, &self.kernel_iso_inverse];
        if !maps.iter().all(|m| m.intertwines()) {
            return false;
        }
        let round = |a: &ModuleMap<F>, b: &ModuleMap<F>| a.compose(b).map(|c| id(&c)).unwrap_or(false);
        // p' . Phi = p . pr_Q
        let q = cover.cover.dim();
        let f = other.source().field();
        let pr = Matrix::hstack(f, q, &[
            &Matrix::identity(f, q),
            &Matrix::zeros(f, q, self.complement.dim()),
        ]);
        let ladder = other.matrix().mul(self.iso.matrix()) == cover.map.matrix().mul(&pr);
        round(&self.iso, &self.iso_inverse)
            && round(&self.iso_inverse, &self.iso)
            && round(&self.kernel_iso, &self.kernel_iso_inverse)
            && round(&self.kernel_iso_inverse, &self.kernel_iso)
            && ladder
            && self.to_cover.matrix().mul(self.section.matrix()).is_identity()
    }
}

#[derive(Debug, Clone)]
pub enum IsoVerdict<F: Field> {
    Yes { forward: ModuleMap<F>, inverse: ModuleMap<F> },
    No(String),
    Inconclusive,
}

const ISO_EXHAUSTIVE_CAP: u64 = 1 << 20;
const ISO_RANDOM_TRIES: usize = 256;

/// Three-valued isomorphism test. `tops`, when given, adds the cheap
/// invariant `dim Hom(P_i, -)` via the corner dimensions `e_i M`.
pub fn module_iso_test<F: Field, R: Rng + ?Sized>(
    m: &ModuleRep<F>,
    n: &ModuleRep<F>,
    tops: Option<&[ModuleRep<F>]>,
    rng: &mut R,
) -> Result<IsoVerdict<F>> {
    if m.dim() != n.dim() {
        return Ok(IsoVerdict::No(format!("dimensions {} and {} differ", m.dim(), n.dim())));
    }
    if let Some(tops) = tops {
        for (i, s) in tops.iter().enumerate() {
            let a = crate::module::hom_dim(s, m)?;
            let b = crate::module::hom_dim(s, n)?;
            if a != b {
                return Ok(IsoVerdict::No(format!("dim Hom(S_{i}, -) is {a} versus {b}")));
            }
        }
    }
    let basis = hom_space(m, n)?;
    let f = m.field();
    let try_coeffs = |c: &[F::Elem]| -> Option<IsoVerdict<F>> {
        let mut x = Matrix::zeros(f, n.dim(), m.dim());
        for (ci, h) in c.iter().zip(&basis) {
            x.add_scaled(ci, h.matrix());
        }
        let inv = x.inverse()?;
        Some(IsoVerdict::Yes {
            forward: ModuleMap::unchecked(m.clone(), n.clone(), x),
            inverse: ModuleMap::unchecked(n.clone(), m.clone(), inv),
        })
    };
    if m.dim() == 0 {
        return Ok(try_coeffs(&[]).expect("empty matrices invert"));
    }
    if basis.is_empty() {
        return Ok(IsoVerdict::No("no nonzero homomorphisms".into()));
    }
    let h = basis.len();
    if let (Some(q), Some(elems)) = (f.order(), f.elements()) {
        if (q as f64).powi(h as i32) <= ISO_EXHAUSTIVE_CAP as f64 {
            let mut digits = vec![0usize; h];
            loop {
                let mut i = 0;
                while i < h {
                    digits[i] += 1;
                    if digits[i] < elems.len() {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == h {
                    return Ok(IsoVerdict::No("no invertible homomorphism".into()));
                }
                let c: Vec<F::Elem> = digits.iter().map(|&d| elems[d].clone()).collect();
                if let Some(v) = try_coeffs(&c) {
                    return Ok(v);
                }
            }
        }
    }
    for _ in 0..ISO_RANDOM_TRIES {
        let c: Vec<F::Elem> = (0..h).map(|_| f.random(rng)).collect();
        if let Some(v) = try_coeffs(&c) {
            return Ok(v);
        }
    }
    Ok(IsoVerdict::Inconclusive)
}

impl<F: Field> IsoVerdict<F> {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes { .. })
    }
}
