//! Irreducibility testing and submodule splitting over finite fields.
//!
//! Modules here are bare: a dimension and a list of square matrices acting
//! on column vectors. The matrices must span the image of the acting
//! algebra (a random linear combination is then a random algebra element).

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix, Subspace};

const RANDOM_TRIES: usize = 64;
const POINT_CAP: u64 = 1 << 12;
const EXHAUSTIVE_CAP: u64 = 1 << 20;

#[derive(Debug, Clone)]
pub enum Splitting<F: Field> {
    Irreducible,
    /// A nonzero proper invariant subspace.
    Proper(Subspace<F>),
}

/// Smallest invariant subspace containing `seeds`.
pub fn spin<F: Field>(field: &F, dim: usize, actions: &[Matrix<F>], seeds: &[Vec<F::Elem>]) -> Subspace<F> {
    spin_echelon(field, dim, actions, seeds).to_subspace()
}

fn spin_echelon<F: Field>(
    field: &F,
    dim: usize,
    actions: &[Matrix<F>],
    seeds: &[Vec<F::Elem>],
) -> Echelon<F> {
    let mut span = Echelon::new(field, dim);
    let mut queue: Vec<Vec<F::Elem>> = Vec::new();
    for s in seeds {
        if span.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if span.is_full() {
            break;
        }
        for a in actions {
            let w = a.mul_vec(&v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    span
}

fn spins_to_full<F: Field>(field: &F, dim: usize, actions: &[Matrix<F>], v: &[F::Elem]) -> bool {
    spin_echelon(field, dim, actions, &[v.to_vec()]).is_full()
}

/// Calls `visit` on one representative per line of the span of `basis`
/// (first nonzero coefficient 1). Stops early when `visit` returns true.
fn for_each_point<F: Field>(
    field: &F,
    basis: &[Vec<F::Elem>],
    mut visit: impl FnMut(&[F::Elem]) -> bool,
) -> bool {
    let elems = field.elements().expect("finite field");
    let k = basis.len();
    let n = basis.first().map_or(0, |b| b.len());
    for lead in 0..k {
        let tail = k - lead - 1;
        let mut digits = vec![0usize; tail];
        loop {
            let mut v = basis[lead].clone();
            for (t, &d) in digits.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let c = &elems[d];
                for (x, b) in v.iter_mut().zip(&basis[lead + 1 + t]) {
                    *x = field.mul_add(x, c, b);
                }
            }
            debug_assert_eq!(v.len(), n);
            if visit(&v) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == tail {
                    break;
                }
                digits[i] += 1;
                if digits[i] < elems.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == tail {
                break;
            }
        }
    }
    false
}

fn point_count(q: u64, k: usize) -> u64 {
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..k {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(q);
    }
    total
}

/// Norton's test with a fixed singular element `theta`: every nonzero kernel
/// vector of `theta` must spin to the whole module, and one kernel vector of
/// the transpose must spin to the whole dual.
fn norton<F: Field>(
    field: &F,
    dim: usize,
    actions: &[Matrix<F>],
    theta: &Matrix<F>,
) -> Splitting<F> {
    let kernel = theta.kernel().vectors();
    let mut proper = None;
    for_each_point(field, &kernel, |v| {
        let s = spin_echelon(field, dim, actions, &[v.to_vec()]);
        if s.is_full() {
            false
        } else {
            proper = Some(s.to_subspace());
            true
        }
    });
    if let Some(s) = proper {
        return Splitting::Proper(s);
    }
    let dual: Vec<Matrix<F>> = actions.iter().map(|a| a.transpose()).collect();
    let w = theta.transpose().kernel().vectors().remove(0);
    let span = spin(field, dim, &dual, &[w]);
    if span.is_full() {
        return Splitting::Irreducible;
    }
    // The annihilator of a proper dual submodule is a proper submodule.
    Splitting::Proper(span.basis().kernel())
}

/// Decides irreducibility, returning a proper submodule when there is one.
/// The zero module is reported as having no proper submodule.
pub fn split<F: Field, R: Rng + ?Sized>(
    field: &F,
    dim: usize,
    actions: &[Matrix<F>],
    rng: &mut R,
) -> Result<Splitting<F>> {
    let q = field.order().ok_or(Error::NotPrimeField)?;
    if dim <= 1 {
        return Ok(Splitting::Irreducible);
    }
    for _ in 0..RANDOM_TRIES {
        let mut theta = Matrix::zeros(field, dim, dim);
        for a in actions {
            theta.add_scaled(&field.random(rng), a);
        }
        let nullity = dim - theta.rank();
        if nullity == 0 || point_count(q, nullity) > POINT_CAP {
            continue;
        }
        return Ok(norton(field, dim, actions, &theta));
    }
    // Every nonzero element may be invertible (a field acting), or the
    // search was unlucky: fall back to theta = 0, i.e. spin every line.
    if point_count(q, dim) <= EXHAUSTIVE_CAP {
        return Ok(norton(field, dim, actions, &Matrix::zeros(field, dim, dim)));
    }
    Err(Error::Inconclusive(format!(
        "no singular element with small kernel found for a module of dimension {dim}"
    )))
}

pub fn is_irreducible<F: Field, R: Rng + ?Sized>(
    field: &F,
    dim: usize,
    actions: &[Matrix<F>],
    rng: &mut R,
) -> Result<bool> {
    Ok(dim > 0 && matches!(split(field, dim, actions, rng)?, Splitting::Irreducible))
}

/// Actions on an invariant subspace, in its RREF basis coordinates.
pub fn restrict<F: Field>(actions: &[Matrix<F>], sub: &Subspace<F>) -> Vec<Matrix<F>> {
    let inc = sub.inclusion();
    actions.iter().map(|a| sub.coords_matrix(&a.mul(&inc))).collect()
}

/// Actions on the quotient by an invariant subspace, in the coordinates of
/// [`Subspace::quotient_projection`].
pub fn quotient<F: Field>(actions: &[Matrix<F>], sub: &Subspace<F>) -> Vec<Matrix<F>> {
    let proj = sub.quotient_projection();
    let sec = sub.quotient_section();
    actions.iter().map(|a| proj.mul(&a.mul(&sec))).collect()
}

/// Some simple submodule, as a subspace of the module.
pub fn simple_submodule<F: Field, R: Rng + ?Sized>(
    field: &F,
    dim: usize,
    actions: &[Matrix<F>],
    rng: &mut R,
) -> Result<Subspace<F>> {
    let mut current = Subspace::full(field, dim);
    let mut acts = actions.to_vec();
    loop {
        match split(field, current.dim(), &acts, rng)? {
            Splitting::Irreducible => return Ok(current),
            Splitting::Proper(s) => {
                // s lives in current's coordinates; push it back out.
                let vecs = current.inclusion().mul(&s.inclusion()).columns();
                current = Subspace::from_vectors(field, dim, vecs);
                acts = restrict(actions, &current);
            }
        }
    }
}

/// Composition factors as action lists, bottom to top.
pub fn composition_factors<F: Field, R: Rng + ?Sized>(
    field: &F,
    dim: usize,
    actions: &[Matrix<F>],
    rng: &mut R,
) -> Result<Vec<Vec<Matrix<F>>>> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    match split(field, dim, actions, rng)? {
        Splitting::Irreducible => Ok(vec![actions.to_vec()]),
        Splitting::Proper(s) => {
            let mut out = composition_factors(field, s.dim(), &restrict(actions, &s), rng)?;
            out.extend(composition_factors(
                field,
                dim - s.dim(),
                &quotient(actions, &s),
                rng,
            )?);
            Ok(out)
        }
    }
}

/// Whether `v` generates the whole module.
pub fn generates<F: Field>(field: &F, dim: usize, actions: &[Matrix<F>], v: &[F::Elem]) -> bool {
    spins_to_full(field, dim, actions, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Side;
    use crate::catalog;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn regular_m2_splits_into_two_simples() {
        let f = PrimeField::new(2).unwrap();
        let m2 = catalog::full_matrix(&f, 2);
        let acts = m2.regular_representation(Side::Left).to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let factors = composition_factors(&f, 4, &acts, &mut rng).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|a| a[0].rows() == 2));
    }

    #[test]
    fn field_extension_is_irreducible() {
        // GF(4) acting on GF(2)^2: every nonzero element is invertible.
        let f = PrimeField::new(2).unwrap();
        let one = Matrix::from_i64(&f, &[&[1, 0], &[0, 1]]);
        let w = Matrix::from_i64(&f, &[&[0, 1], &[1, 1]]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(is_irreducible(&f, 2, &[one, w], &mut rng).unwrap());
    }

    #[test]
    fn triangular_module_is_reducible() {
        let f = PrimeField::new(3).unwrap();
        let one = Matrix::from_i64(&f, &[&[1, 0], &[0, 1]]);
        let n = Matrix::from_i64(&f, &[&[0, 0], &[1, 0]]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        match split(&f, 2, &[one.clone(), n.clone()], &mut rng).unwrap() {
            Splitting::Proper(s) => {
                assert_eq!(s.vectors(), vec![vec![0, 1]]);
            }
            Splitting::Irreducible => panic!("x acts nilpotently, so not simple"),
        }
        let sub = simple_submodule(&f, 2, &[one, n], &mut rng).unwrap();
        assert_eq!(sub.dim(), 1);
    }

    #[test]
    fn points_cover_each_line_once() {
        let f = PrimeField::new(3).unwrap();
        let basis = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let mut seen = Vec::new();
        for_each_point(&f, &basis, |v| {
            seen.push(v.to_vec());
            false
        });
        assert_eq!(seen.len(), 4);
        assert_eq!(point_count(3, 2), 4);
    }
}
