//! Idempotent two-sided ideals, the TTF classes they determine, and traces
//! of projective modules.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Subspace};
use crate::module::{hom_space, same_algebra, ModuleMap, ModuleRep};
use crate::semiperfect::{product_space, Semiperfect};

/// A two-sided ideal, stored as an RREF subspace so equality is structural.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    algebra: Arc<Algebra<F>>,
    space: Subspace<F>,
}

impl<F: Field> PartialEq for Ideal<F> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.space == other.space
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(algebra: &Arc<Algebra<F>>, space: Subspace<F>) -> Result<Self> {
        if space.ambient() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "ideal lives in dimension {}, algebra has {}",
                space.ambient(),
                algebra.dim()
            )));
        }
        if !algebra.is_two_sided(&space) {
            return Err(Error::NotTwoSided);
        }
        Ok(Ideal { algebra: algebra.clone(), space })
    }

    pub fn zero(algebra: &Arc<Algebra<F>>) -> Self {
        Ideal { algebra: algebra.clone(), space: Subspace::zero(algebra.field(), algebra.dim()) }
    }

    pub fn whole(algebra: &Arc<Algebra<F>>) -> Self {
        Ideal { algebra: algebra.clone(), space: Subspace::full(algebra.field(), algebra.dim()) }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let space = product_space(&self.algebra, &self.space, &other.space);
        Ideal::new(&self.algebra, space)
    }

    pub fn is_idempotent(&self) -> bool {
        product_space(&self.algebra, &self.space, &self.space) == self.space
    }
}

/// Smallest two-sided ideal containing `generators`.
pub fn ideal_closure<F: Field>(a: &Arc<Algebra<F>>, generators: &[Vec<F::Elem>]) -> Ideal<F> {
    let n = a.dim();
    let mut span = Echelon::new(a.field(), n);
    let mut queue = Vec::new();
    for g in generators {
        if span.insert(g) {
            queue.push(g.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for i in 0..n {
            let b = a.basis_vector(i);
            for w in [a.mul(&b, &v), a.mul(&v, &b)] {
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
    }
    Ideal { algebra: a.clone(), space: span.to_subspace() }
}

/// `Tr(P)`: the sum of the images of a basis of `Hom(P, A)`.
pub fn trace_ideal<F: Field>(p: &ModuleRep<F>) -> Result<Ideal<F>> {
    if p.projective_summands().is_none() {
        return Err(Error::NotProjective);
    }
    let a = p.algebra();
    let regular = ModuleRep::regular(a);
    let mut span = Echelon::new(a.field(), a.dim());
    for h in hom_space(p, &regular)? {
        for col in h.matrix().columns() {
            span.insert(&col);
        }
    }
    Ideal::new(a, span.to_subspace())
}

/// A short exact sequence `sub -> m -> quotient`.
#[derive(Debug, Clone)]
pub struct Sequence<F: Field> {
    pub sub: ModuleRep<F>,
    pub inclusion: ModuleMap<F>,
    pub quotient: ModuleRep<F>,
    pub projection: ModuleMap<F>,
}

fn sequence<F: Field>(m: &ModuleRep<F>, space: &Subspace<F>) -> Result<Sequence<F>> {
    let (sub, inclusion) = m.submodule(space)?;
    let (quotient, projection) = m.quotient(space)?;
    Ok(Sequence { sub, inclusion, quotient, projection })
}

/// The TTF triple `(C, T, F)` of an idempotent ideal:
/// `C = {I M = M}`, `T = {I M = 0}`, `F = {ann_M(I) = 0}`.
#[derive(Debug, Clone)]
pub struct TtfTriple<F: Field> {
    ideal: Ideal<F>,
}

impl<F: Field> TtfTriple<F> {
    pub fn new(ideal: &Ideal<F>) -> Result<Self> {
        if !ideal.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        Ok(TtfTriple { ideal: ideal.clone() })
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    /// `I M` as a subspace of `M`.
    pub fn torsion_space(&self, m: &ModuleRep<F>) -> Subspace<F> {
        m.ideal_times(&self.ideal.space)
    }

    /// `ann_M(I)` as a subspace of `M`.
    pub fn annihilator_space(&self, m: &ModuleRep<F>) -> Subspace<F> {
        m.annihilator_of(&self.ideal.space)
    }

    pub fn in_c(&self, m: &ModuleRep<F>) -> bool {
        self.torsion_space(m).is_full()
    }
    pub fn in_t(&self, m: &ModuleRep<F>) -> bool {
        self.torsion_space(m).is_zero()
    }
    pub fn in_f(&self, m: &ModuleRep<F>) -> bool {
        self.annihilator_space(m).is_zero()
    }

    /// `I M -> M -> M / I M`, with outer terms in `C` and `T`.
    pub fn torsion_sequence(&self, m: &ModuleRep<F>) -> Result<Sequence<F>> {
        sequence(m, &self.torsion_space(m))
    }

    /// `ann_M(I) -> M -> M / ann_M(I)`, with outer terms in `T` and `F`.
    pub fn torsion_free_sequence(&self, m: &ModuleRep<F>) -> Result<Sequence<F>> {
        sequence(m, &self.annihilator_space(m))
    }

    /// The map `I M -> I N` induced by `f: M -> N`.
    pub fn radical_map(&self, f: &ModuleMap<F>) -> Result<ModuleMap<F>> {
        let src = self.torsion_sequence(f.source())?;
        let tgt = self.torsion_space(f.target());
        let (tgt_mod, _) = f.target().submodule(&tgt)?;
        let m = tgt.coords_matrix(&f.matrix().mul(src.inclusion.matrix()));
        ModuleMap::new(src.sub, tgt_mod, m)
    }

    /// The map `M / I M -> N / I N` induced by `f: M -> N`.
    pub fn coradical_map(&self, f: &ModuleMap<F>) -> Result<ModuleMap<F>> {
        let src = self.torsion_sequence(f.source())?;
        let tgt = self.torsion_sequence(f.target())?;
        let sec = self.torsion_space(f.source()).quotient_section();
        let m = tgt.projection.matrix().mul(&f.matrix().mul(&sec));
        ModuleMap::new(src.quotient, tgt.quotient, m)
    }
}

fn subset_sum<F: Field>(a: &Algebra<F>, es: &[Vec<F::Elem>], mask: usize) -> Vec<F::Elem> {
    let mut sum = a.zero_vector();
    for (i, e) in es.iter().enumerate() {
        if mask >> i & 1 == 1 {
            sum = a.add(&sum, e);
        }
    }
    sum
}

/// All idempotent two-sided ideals `A e_S A`, one per distinct ideal,
/// ordered by dimension and then by basis.
pub fn enumerate_idempotent_ideals<F: Field>(sp: &Semiperfect<F>) -> Vec<Ideal<F>> {
    let a = sp.algebra();
    // A e A depends only on which isomorphism classes occur in e.
    let reps: Vec<Vec<F::Elem>> =
        sp.class_representatives().iter().map(|&i| sp.idempotents()[i].clone()).collect();
    let mut out: Vec<Ideal<F>> = Vec::new();
    for mask in 0..1usize << reps.len() {
        let ideal = ideal_closure(a, &[subset_sum(a, &reps, mask)]);
        if !out.contains(&ideal) {
            out.push(ideal);
        }
    }
    out.sort_by(|x, y| {
        x.dim()
            .cmp(&y.dim())
            .then_with(|| x.space.pivots().cmp(y.space.pivots()))
            .then_with(|| format!("{:?}", x.space.basis().to_scalars()).cmp(&format!("{:?}", y.space.basis().to_scalars())))
    });
    out
}

/// A projective `P` with `Tr(P) = I`.
#[derive(Debug, Clone)]
pub struct TraceWitness<F: Field> {
    pub module: ModuleRep<F>,
    /// Indices into the primitive idempotents of the summands of `P`.
    pub summands: Vec<usize>,
    pub trace: Ideal<F>,
}

pub fn trace_witness<F: Field>(sp: &Semiperfect<F>, ideal: &Ideal<F>) -> Result<Option<TraceWitness<F>>> {
    if !ideal.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let a = sp.algebra();
    let es = sp.idempotents();
    let build = |idx: Vec<usize>| -> Result<TraceWitness<F>> {
        let chosen: Vec<Vec<F::Elem>> = idx.iter().map(|&i| es[i].clone()).collect();
        let module = ModuleRep::projective(a, &chosen)?;
        let trace = trace_ideal(&module)?;
        Ok(TraceWitness { module, summands: idx, trace })
    };
    // First candidate: every primitive idempotent lying in I.
    let inside: Vec<usize> =
        (0..es.len()).filter(|&i| ideal.space.contains_vector(&es[i])).collect();
    let w = build(inside)?;
    if &w.trace == ideal {
        return Ok(Some(w));
    }
    for mask in 0..1usize << es.len() {
        let w = build((0..es.len()).filter(|&i| mask >> i & 1 == 1).collect())?;
        if &w.trace == ideal {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ideal(a: &Arc<Algebra<crate::PrimeField>>, vecs: &[&[i64]]) -> Ideal<crate::PrimeField> {
        let f = a.field();
        let v = vecs.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        Ideal::new(a, Subspace::from_vectors(f, a.dim(), v)).unwrap()
    }

    #[test]
    fn closures_and_products() {
        let t2 = catalog::prime("t2_gf2");
        assert!(ideal_closure(&t2, &[]).space().is_zero());
        assert!(ideal_closure(&t2, &[t2.unit().to_vec()]).space().is_full());
        let i = ideal_closure(&t2, &[vec![0, 0, 1]]);
        assert_eq!(i, ideal(&t2, &[&[0, 1, 0], &[0, 0, 1]]));
        assert!(i.is_idempotent());
        let j = ideal(&t2, &[&[0, 1, 0]]);
        assert!(!j.is_idempotent());
        assert!(j.product(&j).unwrap().space().is_zero());
        assert!(Ideal::zero(&t2).is_idempotent());
    }

    #[test]
    fn traces() {
        let t2 = catalog::prime("t2_gf2");
        assert!(trace_ideal(&ModuleRep::regular(&t2)).unwrap().space().is_full());
        assert!(trace_ideal(&ModuleRep::zero(&t2)).unwrap().space().is_zero());
        let p2 = ModuleRep::summand(&t2, &[0, 0, 1]).unwrap();
        assert_eq!(trace_ideal(&p2).unwrap(), ideal(&t2, &[&[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn ttf_classes_on_t2() {
        let t2 = catalog::prime("t2_gf2");
        let i = ideal(&t2, &[&[0, 1, 0], &[0, 0, 1]]);
        let ttf = TtfTriple::new(&i).unwrap();
        let p1 = ModuleRep::summand(&t2, &[1, 0, 0]).unwrap();
        let p2 = ModuleRep::summand(&t2, &[0, 0, 1]).unwrap();
        assert!(ttf.in_c(&p2));
        // E22 E21 = E21, so nothing nonzero in A E11 is killed by I; the
        // nonzero piece span{E21} is I P1, not the annihilator.
        assert!(ttf.in_f(&p1));
        assert_eq!(ttf.torsion_space(&p1).dim(), 1);
        let s1 = ttf.torsion_sequence(&p1).unwrap().quotient;
        assert!(ttf.in_t(&s1));
        assert!(TtfTriple::new(&ideal(&t2, &[&[0, 1, 0]])).is_err());
    }

    #[test]
    fn enumeration_and_witnesses() {
        let t2 = catalog::prime("t2_gf2");
        let sp = Semiperfect::new(&t2, 0).unwrap();
        let ideals = enumerate_idempotent_ideals(&sp);
        assert_eq!(ideals.len(), 4);
        let mid = ideal(&t2, &[&[0, 1, 0], &[0, 0, 1]]);
        let w = trace_witness(&sp, &mid).unwrap().unwrap();
        assert_eq!(w.summands, vec![1]);
        let w = trace_witness(&sp, &Ideal::whole(&t2)).unwrap().unwrap();
        assert_eq!(w.module.dim(), 3);
        let w = trace_witness(&sp, &Ideal::zero(&t2)).unwrap().unwrap();
        assert_eq!(w.module.dim(), 0);

        let m2 = catalog::prime("m2_gf2");
        let sp = Semiperfect::new(&m2, 0).unwrap();
        assert_eq!(enumerate_idempotent_ideals(&sp).len(), 2);
        let s = catalog::prime("gf3_cubed");
        let sp = Semiperfect::new(&s, 0).unwrap();
        assert_eq!(enumerate_idempotent_ideals(&sp).len(), 8);
    }
}
