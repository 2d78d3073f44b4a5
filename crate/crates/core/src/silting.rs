//! Silting verdicts for `R/I`: projective presentations, conditions (a) and
//! (b) on `X / I X`, the `D_sigma`-preenvelope of a module, and the
//! `I T_R = 0` test that decides the third condition.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{solve_combination, Matrix, Subspace};
use crate::module::{
    d_sigma_membership, ext1_with, gen_trace_membership, FreePresentation, hom_space, map_from_generator_values,
    summand_layout, ModuleMap, ModuleRep,
};
use crate::ttf::{trace_ideal, Ideal};

/// A map `sigma: P_-1 -> P_0` between projectives, with its image
/// factorization `sigma = iota . pi`.
#[derive(Debug, Clone)]
pub struct Presentation<F: Field> {
    pub p_minus1: ModuleRep<F>,
    pub p0: ModuleRep<F>,
    pub sigma: ModuleMap<F>,
    pub image: ModuleRep<F>,
    pub pi: ModuleMap<F>,
    pub iota: ModuleMap<F>,
}

impl<F: Field> Presentation<F> {
    pub fn new(sigma: ModuleMap<F>) -> Result<Self> {
        if sigma.source().projective_summands().is_none() || sigma.target().projective_summands().is_none() {
            return Err(Error::NotProjective);
        }
        if !sigma.intertwines() {
            return Err(Error::InvalidModule("sigma is not a module map".into()));
        }
        let p_minus1 = sigma.source().clone();
        let p0 = sigma.target().clone();
        let im = sigma.image_space();
        let (image, iota) = p0.submodule(&im)?;
        let pi = ModuleMap::unchecked(p_minus1.clone(), image.clone(), im.coords_matrix(sigma.matrix()));
        Ok(Presentation { p_minus1, p0, sigma, image, pi, iota })
    }

    /// `Coker sigma` with its projection from `P_0`.
    pub fn cokernel(&self) -> Result<(ModuleRep<F>, ModuleMap<F>)> {
        self.p0.quotient(&self.sigma.image_space())
    }
}

/// The canonical presentation for an idempotent ideal with a trace witness.
#[derive(Debug, Clone)]
pub struct Canonical<F: Field> {
    /// `P^k -> R` summing a basis of `Hom(P, R)`; its image is `I`.
    pub sigma: Presentation<F>,
    /// `P^k (+) P^k (+) R -> R (+) R`, `(x, y, r) -> (sigma x, r)`, with
    /// cokernel `R/I`.
    pub rho: Presentation<F>,
}

pub fn canonical_presentation<F: Field>(ideal: &Ideal<F>, p: &ModuleRep<F>) -> Result<Canonical<F>> {
    if p.projective_summands().is_none() {
        return Err(Error::NotProjective);
    }
    if &trace_ideal(p)? != ideal {
        return Err(Error::TraceMismatch);
    }
    let a = ideal.algebra();
    let f = a.field();
    let n = a.dim();
    let regular = ModuleRep::regular(a);
    let homs = hom_space(p, &regular)?;
    let k = homs.len();
    let pk = p.power(k);
    let blocks: Vec<&Matrix<F>> = homs.iter().map(|h| h.matrix()).collect();
    let sigma_m = Matrix::hstack(f, n, &blocks);
    let sigma = Presentation::new(ModuleMap::unchecked(pk.clone(), regular.clone(), sigma_m.clone()))?;

    let src = ModuleRep::direct_sum(&[&pk, &pk, &regular])?;
    let tgt = ModuleRep::direct_sum(&[&regular, &regular])?;
    let d = pk.dim();
    let mut rho_m = Matrix::zeros(f, 2 * n, 2 * d + n);
    rho_m.paste(0, 0, &sigma_m);
    rho_m.paste(n, 2 * d, &Matrix::identity(f, n));
    let rho = Presentation::new(ModuleMap::unchecked(src, tgt, rho_m))?;
    Ok(Canonical { sigma, rho })
}

/// `X / I X` with projection and a linear section.
struct Reduced<F: Field> {
    module: ModuleRep<F>,
    projection: Matrix<F>,
    section: Matrix<F>,
}

fn reduce<F: Field>(x: &ModuleRep<F>, ideal: &Ideal<F>) -> Result<Reduced<F>> {
    let ix = x.ideal_times(ideal.space());
    let section = ix.quotient_section();
    let (module, proj) = x.quotient(&ix)?;
    Ok(Reduced { module, projection: proj.matrix().clone(), section })
}

/// Conditions (a) and (b) with their witnesses.
#[derive(Debug, Clone)]
pub struct ConditionsAb<F: Field> {
    /// `sigma` induced on `P_-1 / I P_-1 -> P_0 / I P_0`.
    pub sigma_bar: ModuleMap<F>,
    pub a: bool,
    /// A module map `r` with `r . sigma_bar = 1`.
    pub retraction: Option<ModuleMap<F>>,
    /// `pi` induced on `P_-1 / I P_-1 -> Im / I Im`.
    pub pi_bar: ModuleMap<F>,
    pub b: bool,
    pub pi_bar_inverse: Option<ModuleMap<F>>,
}

pub fn check_conditions_ab<F: Field>(pres: &Presentation<F>, ideal: &Ideal<F>) -> Result<ConditionsAb<F>> {
    if !ideal.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let f = ideal.algebra().field();
    let q1 = reduce(&pres.p_minus1, ideal)?;
    let q0 = reduce(&pres.p0, ideal)?;
    let qi = reduce(&pres.image, ideal)?;
    let sigma_bar_m = q0.projection.mul(&pres.sigma.matrix().mul(&q1.section));
    let sigma_bar = ModuleMap::unchecked(q1.module.clone(), q0.module.clone(), sigma_bar_m.clone());

    let homs = hom_space(&q0.module, &q1.module)?;
    let basis: Vec<Matrix<F>> = homs.iter().map(|h| h.matrix().mul(&sigma_bar_m)).collect();
    let id = Matrix::identity(f, q1.module.dim());
    let retraction = solve_combination(f, &basis, &id).map(|c| {
        let mut r = Matrix::zeros(f, q1.module.dim(), q0.module.dim());
        for (ci, h) in c.iter().zip(&homs) {
            r.add_scaled(ci, h.matrix());
        }
        ModuleMap::unchecked(q0.module.clone(), q1.module.clone(), r)
    });

    let pi_bar_m = qi.projection.mul(&pres.pi.matrix().mul(&q1.section));
    let pi_bar = ModuleMap::unchecked(q1.module.clone(), qi.module.clone(), pi_bar_m);
    let pi_bar_inverse = pi_bar.inverse();
    Ok(ConditionsAb {
        sigma_bar,
        a: retraction.is_some(),
        retraction,
        b: pi_bar_inverse.is_some(),
        pi_bar,
        pi_bar_inverse,
    })
}

/// The pushout of `sigma^(k)` and `(phi_1, ..., phi_k)` for maps
/// `phi_t: P_-1 -> M`.
///
/// `T` is built in closed form: writing `P_0 = Im sigma (+) W`, every class
/// in the pushout has a unique representative in `M / N (+) W^k` where
/// `N = sum_t phi_t(Ker sigma)`.
#[derive(Debug, Clone)]
pub struct Preenvelope<F: Field> {
    pub module: ModuleRep<F>,
    pub index: Vec<ModuleMap<F>>,
    pub t: ModuleRep<F>,
    pub lambda: ModuleMap<F>,
    /// `P_0^k -> T`.
    pub h: ModuleMap<F>,
    pub p0_power: ModuleRep<F>,
    pub t_in_d_sigma: bool,
    pub module_in_d_sigma: bool,
    /// Left inverse of `lambda`, found whenever `M` is in `D_sigma`.
    pub lambda_retraction: Option<ModuleMap<F>>,
    /// Whether `Ker(sigma)^k -> Ker(lambda)` is onto.
    pub kernel_map_surjective: bool,
    /// `L: P_0 -> P_-1` with `sigma L p = p - (W-part of p)`.
    lift: Matrix<F>,
}

/// Preenvelope indexed by a basis of `Hom(P_-1, M)`.
pub fn build_preenvelope<F: Field>(m: &ModuleRep<F>, pres: &Presentation<F>) -> Result<Preenvelope<F>> {
    let index = hom_space(&pres.p_minus1, m)?;
    build_preenvelope_indexed(m, pres, index)
}

/// Preenvelope over an arbitrary finite index of maps `P_-1 -> M`.
pub fn build_preenvelope_indexed<F: Field>(
    m: &ModuleRep<F>,
    pres: &Presentation<F>,
    index: Vec<ModuleMap<F>>,
) -> Result<Preenvelope<F>> {
    let a = m.algebra().clone();
    let f = a.field().clone();
    let sigma = pres.sigma.matrix();
    let n0 = pres.p0.dim();
    let k = index.len();

    let im = sigma.image();
    let w_proj = im.quotient_projection();
    let w_sec = im.quotient_section();
    let s = w_proj.rows();
    // Right inverse of sigma on its image.
    let im_basis = im.inclusion();
    let pseudo = sigma
        .solve_matrix(&im_basis)?
        .expect("image vectors lie in the image");
    let lift = pseudo.mul(&im.coords_matrix(&Matrix::identity(&f, n0).sub(&w_sec.mul(&w_proj))));

    let ker = sigma.kernel();
    let mut n_vecs = Vec::new();
    for phi in &index {
        n_vecs.extend(phi.matrix().mul(&ker.inclusion()).columns());
    }
    let n_space = m.span_of(&n_vecs);
    let n_proj = n_space.quotient_projection();
    let n_sec = n_space.quotient_section();
    let mq = n_proj.rows();
    let td = mq + k * s;

    let mut actions = Vec::with_capacity(a.dim());
    for (i, act_m) in m.actions().iter().enumerate() {
        let act0 = &pres.p0.actions()[i];
        let mut t = Matrix::zeros(&f, td, td);
        t.paste(0, 0, &n_proj.mul(&act_m.mul(&n_sec)));
        let w_part = w_proj.mul(&act0.mul(&w_sec));
        let lifted = lift.mul(&act0.mul(&w_sec));
        for (ti, phi) in index.iter().enumerate() {
            let col = mq + ti * s;
            t.paste(col, col, &w_part);
            t.paste(0, col, &n_proj.mul(&phi.matrix().mul(&lifted)));
        }
        actions.push(t);
    }
    let t_mod = ModuleRep::new(a.clone(), actions)?;

    let mut lambda_m = Matrix::zeros(&f, td, m.dim());
    lambda_m.paste(0, 0, &n_proj);
    let lambda = ModuleMap::unchecked(m.clone(), t_mod.clone(), lambda_m);

    let p0k = pres.p0.power(k);
    let mut h_m = Matrix::zeros(&f, td, k * n0);
    for (ti, phi) in index.iter().enumerate() {
        h_m.paste(0, ti * n0, &n_proj.mul(&phi.matrix().mul(&lift)));
        h_m.paste(mq + ti * s, ti * n0, &w_proj);
    }
    let h = ModuleMap::unchecked(p0k.clone(), t_mod.clone(), h_m);

    // Every relation (sigma x, -phi x) must die in T.
    debug_assert!(index.iter().enumerate().all(|(ti, phi)| {
        let hs = h.matrix().submatrix(0, td, ti * n0, n0).mul(sigma);
        hs == lambda.matrix().mul(phi.matrix())
    }));

    let t_in_d_sigma = d_sigma_membership(&pres.sigma, &t_mod)?;
    let module_in_d_sigma = d_sigma_membership(&pres.sigma, m)?;
    let lambda_retraction = if module_in_d_sigma {
        let homs = hom_space(&t_mod, m)?;
        let basis: Vec<Matrix<F>> = homs.iter().map(|r| r.matrix().mul(lambda.matrix())).collect();
        solve_combination(&f, &basis, &Matrix::identity(&f, m.dim())).map(|c| {
            let mut r = Matrix::zeros(&f, m.dim(), td);
            for (ci, x) in c.iter().zip(&homs) {
                r.add_scaled(ci, x.matrix());
            }
            ModuleMap::unchecked(t_mod.clone(), m.clone(), r)
        })
    } else {
        None
    };
    let kernel_map_surjective = lambda.kernel_space() == n_space;

    Ok(Preenvelope {
        module: m.clone(),
        index,
        t: t_mod,
        lambda,
        h,
        p0_power: p0k,
        t_in_d_sigma,
        module_in_d_sigma,
        lambda_retraction,
        kernel_map_surjective,
        lift,
    })
}

/// The maps `q': T -> M/IM`, `delta: P_0^k -> M` and
/// `delta' : P_-1^k -> I M` attached to a preenvelope.
#[derive(Debug, Clone)]
pub struct DeltaMaps<F: Field> {
    pub q_prime: Matrix<F>,
    pub delta: Matrix<F>,
    pub delta_prime: Matrix<F>,
    pub delta_prime_surjective: bool,
}

impl<F: Field> Preenvelope<F> {
    /// `None` when `M -> M/IM` does not factor through `lambda`.
    pub fn delta_maps(&self, pres: &Presentation<F>, ideal: &Ideal<F>) -> Result<Option<DeltaMaps<F>>> {
        let m = &self.module;
        let f = m.field().clone();
        let im_space = m.ideal_times(ideal.space());
        let (mbar, rho_m) = m.quotient(&im_space)?;
        let rho_sec = im_space.quotient_section();
        let homs = hom_space(&self.t, &mbar)?;
        let basis: Vec<Matrix<F>> = homs.iter().map(|q| q.matrix().mul(self.lambda.matrix())).collect();
        let Some(c) = solve_combination(&f, &basis, rho_m.matrix()) else {
            return Ok(None);
        };
        let mut q_prime = Matrix::zeros(&f, mbar.dim(), self.t.dim());
        for (ci, q) in c.iter().zip(&homs) {
            q_prime.add_scaled(ci, q.matrix());
        }
        // delta on the free generators: lift q' h(g) along M -> M/IM.
        let layout = summand_layout(&self.p0_power).expect("power of a projective");
        let target = q_prime.mul(self.h.matrix());
        let values: Vec<Vec<F::Elem>> = layout
            .iter()
            .map(|s| {
                let mut g = vec![f.zero(); self.p0_power.dim()];
                for (i, x) in s.generator.iter().enumerate() {
                    g[s.offset + i] = x.clone();
                }
                let v = rho_sec.mul_vec(&target.mul_vec(&g));
                m.act(&s.idempotent).mul_vec(&v)
            })
            .collect();
        let delta = map_from_generator_values(&self.p0_power, &layout, m, &values);

        let n0 = pres.p0.dim();
        let n1 = pres.p_minus1.dim();
        let sigma = pres.sigma.matrix();
        let mut diff = Matrix::zeros(&f, m.dim(), self.index.len() * n1);
        for (ti, phi) in self.index.iter().enumerate() {
            let block = delta.submatrix(0, m.dim(), ti * n0, n0).mul(sigma).sub(phi.matrix());
            diff.paste(0, ti * n1, &block);
        }
        if !rho_m.matrix().mul(&diff).is_zero() {
            return Err(Error::Inconclusive("delta sigma - phi leaves I M".into()));
        }
        let delta_prime = im_space.coords_matrix(&diff);
        let delta_prime_surjective = delta_prime.rank() == im_space.dim();
        Ok(Some(DeltaMaps { q_prime, delta, delta_prime, delta_prime_surjective }))
    }

    /// `L: P_0 -> P_-1`, exposed for tests.
    pub fn lift(&self) -> &Matrix<F> {
        &self.lift
    }
}

/// Outcome of the sampled Setting checks for `S = Coker sigma`:
/// `Gen(S)` must be `T_I`, and `T_I` must lie in `S^perp1`.
#[derive(Debug, Clone, Serialize)]
pub struct SettingCheck {
    pub samples: usize,
    pub failures: Vec<String>,
}

impl SettingCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_setting<F: Field>(
    pres: &Presentation<F>,
    ideal: &Ideal<F>,
    samples: &[ModuleRep<F>],
) -> Result<SettingCheck> {
    let (s, _) = pres.cokernel()?;
    let s_pres = FreePresentation::new(&s)?;
    let mut failures = Vec::new();
    for (i, x) in samples.iter().enumerate() {
        let torsion = x.ideal_times(ideal.space()).is_zero();
        let (_, in_gen) = gen_trace_membership(&s, x)?;
        if in_gen != torsion {
            failures.push(format!(
                "sample {i}: in Gen(S) is {in_gen}, but I X = 0 is {torsion}"
            ));
        } else if torsion && ext1_with(s_pres.clone(), x)?.dim != 0 {
            failures.push(format!("sample {i}: lies in Gen(S) but Ext^1(S, X) is nonzero"));
        }
    }
    Ok(SettingCheck { samples: samples.len(), failures })
}

/// The full decision for one presentation.
#[derive(Debug, Clone)]
pub struct SiltingReport<F: Field> {
    pub ideal: Ideal<F>,
    pub presentation: Presentation<F>,
    pub conditions: ConditionsAb<F>,
    pub regular_preenvelope: Preenvelope<F>,
    pub delta: Option<DeltaMaps<F>>,
    /// `I T_R` as a subspace of `T_R`.
    pub ideal_times_t: Subspace<F>,
    pub setting: SettingCheck,
    /// `None` when the Setting checks failed.
    pub silting: Option<bool>,
}

impl<F: Field> SiltingReport<F> {
    pub fn c_holds(&self) -> bool {
        self.ideal_times_t.is_zero()
    }
}

/// Computes conditions (a), (b) and the `I T_R = 0` test. A failed Setting
/// check is recorded in the report and withholds the verdict.
pub fn analyze<F: Field>(
    ideal: &Ideal<F>,
    pres: &Presentation<F>,
    samples: &[ModuleRep<F>],
) -> Result<SiltingReport<F>> {
    if !ideal.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let setting = check_setting(pres, ideal, samples)?;
    let conditions = check_conditions_ab(pres, ideal)?;
    let regular = ModuleRep::regular(ideal.algebra());
    let pre = build_preenvelope(&regular, pres)?;
    let ideal_times_t = pre.t.ideal_times(ideal.space());
    let delta = pre.delta_maps(pres, ideal)?;
    let verdict = conditions.a && conditions.b && ideal_times_t.is_zero();
    Ok(SiltingReport {
        ideal: ideal.clone(),
        presentation: pres.clone(),
        conditions,
        regular_preenvelope: pre,
        delta,
        ideal_times_t,
        silting: setting.ok().then_some(verdict),
        setting,
    })
}

/// Like [`analyze`], but a failed Setting check is an error.
pub fn silting_verdict<F: Field>(
    ideal: &Ideal<F>,
    pres: &Presentation<F>,
    samples: &[ModuleRep<F>],
) -> Result<SiltingReport<F>> {
    let report = analyze(ideal, pres, samples)?;
    if !report.setting.ok() {
        return Err(Error::SettingViolation(report.setting.failures.join("; ")));
    }
    Ok(report)
}

/// Cross-check: no nonzero sample lies in `D_sigma` and has `ann_X(I) = 0`.
pub fn no_torsion_free_in_d_sigma<F: Field>(
    pres: &Presentation<F>,
    ideal: &Ideal<F>,
    samples: &[ModuleRep<F>],
) -> Result<bool> {
    for x in samples {
        if x.dim() > 0
            && x.annihilator_of(ideal.space()).is_zero()
            && d_sigma_membership(&pres.sigma, x)?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cross-check: `trials` random maps `R -> X` (`r -> r m`) into samples in
/// `D_sigma` vanish on `I`, i.e. factor through `R -> R/I`.
pub fn maps_factor_through_quotient<F: Field, R: Rng + ?Sized>(
    pres: &Presentation<F>,
    ideal: &Ideal<F>,
    samples: &[ModuleRep<F>],
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    let mut in_d = Vec::new();
    for x in samples {
        if x.dim() > 0 && d_sigma_membership(&pres.sigma, x)? {
            in_d.push(x);
        }
    }
    if in_d.is_empty() {
        return Ok(true);
    }
    let f = ideal.algebra().field();
    for _ in 0..trials {
        let x = in_d[rng.gen_range(0..in_d.len())];
        let m: Vec<F::Elem> = (0..x.dim()).map(|_| f.random(rng)).collect();
        if ideal.space().vectors().iter().any(|i| !f_is_zero(f, &x.act(i).mul_vec(&m))) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn f_is_zero<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

/// Serializable digest of a report; matrices as exact scalars.
#[derive(Debug, Clone, Serialize)]
pub struct SiltingSummary {
    pub ideal_dim: usize,
    pub ideal_basis: Vec<Vec<Scalar>>,
    pub p_minus1_dim: usize,
    pub p0_dim: usize,
    pub image_dim: usize,
    pub cokernel_dim: usize,
    pub condition_a: bool,
    pub retraction: Option<Vec<Vec<Scalar>>>,
    pub sigma_bar: Vec<Vec<Scalar>>,
    pub condition_b: bool,
    pub pi_bar_inverse: Option<Vec<Vec<Scalar>>>,
    pub preenvelope_index: usize,
    pub preenvelope_dim: usize,
    pub preenvelope_in_d_sigma: bool,
    pub ideal_times_preenvelope_dim: usize,
    pub delta_prime_surjective: Option<bool>,
    pub kernel_map_surjective: bool,
    pub setting: SettingCheck,
    pub condition_c: bool,
    pub silting: Option<bool>,
}

impl<F: Field> SiltingReport<F> {
    pub fn summary(&self) -> SiltingSummary {
        let pres = &self.presentation;
        let pre = &self.regular_preenvelope;
        SiltingSummary {
            ideal_dim: self.ideal.dim(),
            ideal_basis: self.ideal.space().basis().to_scalars(),
            p_minus1_dim: pres.p_minus1.dim(),
            p0_dim: pres.p0.dim(),
            image_dim: pres.image.dim(),
            cokernel_dim: pres.p0.dim() - pres.image.dim(),
            condition_a: self.conditions.a,
            retraction: self.conditions.retraction.as_ref().map(|r| r.matrix().to_scalars()),
            sigma_bar: self.conditions.sigma_bar.matrix().to_scalars(),
            condition_b: self.conditions.b,
            pi_bar_inverse: self.conditions.pi_bar_inverse.as_ref().map(|r| r.matrix().to_scalars()),
            preenvelope_index: pre.index.len(),
            preenvelope_dim: pre.t.dim(),
            preenvelope_in_d_sigma: pre.t_in_d_sigma,
            ideal_times_preenvelope_dim: self.ideal_times_t.dim(),
            delta_prime_surjective: self.delta.as_ref().map(|d| d.delta_prime_surjective),
            kernel_map_surjective: pre.kernel_map_surjective,
            setting: self.setting.clone(),
            condition_c: self.c_holds(),
            silting: self.silting,
        }
    }
}
