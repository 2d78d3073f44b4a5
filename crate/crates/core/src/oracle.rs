//! Exhaustive enumerations over small finite fields, used to cross-check the
//! structural algorithms.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::module::ModuleRep;
use crate::semiperfect::product_space;

/// Refuse enumerations with more candidates than this.
pub const CANDIDATE_CAP: u64 = 1 << 22;

fn pow_checked(q: u64, e: usize) -> Option<u64> {
    let mut r: u64 = 1;
    for _ in 0..e {
        r = r.checked_mul(q)?;
    }
    Some(r)
}

/// Visits every vector of `F^len` in lexicographic digit order.
fn for_each_tuple<F: Field>(field: &F, len: usize, mut visit: impl FnMut(&[F::Elem])) {
    let elems = field.elements().expect("finite field");
    let mut digits = vec![0usize; len];
    let mut v: Vec<F::Elem> = vec![elems[0].clone(); len];
    loop {
        visit(&v);
        let mut i = 0;
        while i < len {
            digits[i] += 1;
            if digits[i] < elems.len() {
                v[i] = elems[digits[i]].clone();
                break;
            }
            digits[i] = 0;
            v[i] = elems[0].clone();
            i += 1;
        }
        if i == len {
            return;
        }
    }
}

/// Every subspace of `F^n`, each exactly once (one per RREF).
pub fn enumerate_subspaces<F: Field>(field: &F, n: usize) -> Result<Vec<Subspace<F>>> {
    field.order().ok_or(Error::NotPrimeField)?;
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        let pivots: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        // Free slots: row r, column c > pivot r, c not a pivot.
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        for_each_tuple(field, slots.len(), |vals| {
            let mut rows = vec![vec![field.zero(); n]; pivots.len()];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = field.one();
            }
            for (&(r, c), v) in slots.iter().zip(vals) {
                rows[r][c] = v.clone();
            }
            out.push(Subspace::from_vectors(field, n, rows));
        });
    }
    Ok(out)
}

/// All two-sided ideals `I` of `a` with `I I = I`, by filtering every
/// subspace.
pub fn idempotent_ideals_brute<F: Field>(a: &Algebra<F>) -> Result<Vec<Subspace<F>>> {
    Ok(enumerate_subspaces(a.field(), a.dim())?
        .into_iter()
        .filter(|s| a.is_two_sided(s) && product_space(a, s, s) == *s)
        .collect())
}

/// Words in the algebra generators whose values span the algebra, and the
/// change of basis expressing each basis element in those words.
struct WordBasis<F: Field> {
    /// `(generator position, parent word)`; the root (unit) has no parent.
    words: Vec<Option<(usize, usize)>>,
    /// Column `i` holds the coordinates of basis element `i` in the words.
    to_words: Matrix<F>,
}

fn word_basis<F: Field>(a: &Algebra<F>) -> Result<WordBasis<F>> {
    let f = a.field();
    let gens: Vec<Vec<F::Elem>> = a.generators().iter().map(|&g| a.basis_vector(g)).collect();
    let mut words = vec![None];
    let mut values = vec![a.unit().to_vec()];
    let mut span = crate::linalg::Echelon::new(f, a.dim());
    span.insert(a.unit());
    let mut head = 0;
    while head < values.len() && !span.is_full() {
        for (gi, g) in gens.iter().enumerate() {
            let v = a.mul(g, &values[head]);
            if span.insert(&v) {
                words.push(Some((gi, head)));
                values.push(v);
            }
        }
        head += 1;
    }
    if !span.is_full() {
        return Err(Error::InvalidAlgebra("generators do not span the algebra".into()));
    }
    let w = Matrix::from_columns(f, a.dim(), &values);
    let to_words = w.inverse().expect("word values form a basis");
    Ok(WordBasis { words, to_words })
}

/// All modules of dimension `d` over `a`, by choosing matrices for the
/// algebra generators and keeping the tuples that satisfy every relation.
#[derive(Debug, Clone)]
pub struct ModuleOracle<F: Field> {
    pub modules: Vec<ModuleRep<F>>,
    /// Generator tuples examined.
    pub candidates: u64,
}

pub fn enumerate_modules_of_dim<F: Field>(a: &Arc<Algebra<F>>, d: usize) -> Result<ModuleOracle<F>> {
    let f = a.field();
    let q = f.order().ok_or(Error::NotPrimeField)?;
    if d == 0 {
        return Ok(ModuleOracle { modules: vec![ModuleRep::zero(a)], candidates: 1 });
    }
    let g = a.generators().len();
    let len = g * d * d;
    let candidates = pow_checked(q, len)
        .filter(|&c| c <= CANDIDATE_CAP)
        .ok_or_else(|| Error::Inconclusive(format!("{q}^{len} candidate tuples exceed the cap")))?;
    let wb = word_basis(a)?;
    let mut modules = Vec::new();
    for_each_tuple(f, len, |vals| {
        let gm: Vec<Matrix<F>> = vals
            .chunks(d * d)
            .map(|c| Matrix::from_rows(f, d, c.chunks(d).map(|r| r.to_vec()).collect()).expect("shape"))
            .collect();
        let mut wv: Vec<Matrix<F>> = Vec::with_capacity(wb.words.len());
        for w in &wb.words {
            wv.push(match w {
                None => Matrix::identity(f, d),
                Some((gi, parent)) => gm[*gi].mul(&wv[*parent]),
            });
        }
        let actions = (0..a.dim())
            .map(|i| {
                let mut m = Matrix::zeros(f, d, d);
                for (w, val) in wv.iter().enumerate() {
                    let c = wb.to_words.get(w, i);
                    if !f.is_zero(c) {
                        m.add_scaled(c, val);
                    }
                }
                m
            })
            .collect();
        if let Ok(m) = ModuleRep::new(a.clone(), actions) {
            modules.push(m);
        }
    });
    Ok(ModuleOracle { modules, candidates })
}

/// All modules of dimension `0..=max_dim`.
pub fn enumerate_modules<F: Field>(a: &Arc<Algebra<F>>, max_dim: usize) -> Result<ModuleOracle<F>> {
    let mut modules = Vec::new();
    let mut candidates = 0;
    for d in 0..=max_dim {
        let o = enumerate_modules_of_dim(a, d)?;
        modules.extend(o.modules);
        candidates += o.candidates;
    }
    Ok(ModuleOracle { modules, candidates })
}

/// Every linear combination of `basis` (the full set, not just a basis).
pub fn span_elements<F: Field>(
    field: &F,
    (r, c): (usize, usize),
    basis: &[Matrix<F>],
) -> Result<Vec<Matrix<F>>> {
    let q = field.order().ok_or(Error::NotPrimeField)?;
    pow_checked(q, basis.len())
        .filter(|&c| c <= CANDIDATE_CAP)
        .ok_or_else(|| Error::Inconclusive("span too large to list".into()))?;
    let mut out = Vec::new();
    for_each_tuple(field, basis.len(), |cs| {
        let mut m = Matrix::zeros(field, r, c);
        for (ci, b) in cs.iter().zip(basis) {
            m.add_scaled(ci, b);
        }
        out.push(m);
    });
    Ok(out)
}

/// Every matrix `n x m` commuting with the actions, found by brute force.
pub fn all_homs_brute<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<Vec<Matrix<F>>> {
    let f = m.field();
    let q = f.order().ok_or(Error::NotPrimeField)?;
    let len = m.dim() * n.dim();
    pow_checked(q, len)
        .filter(|&c| c <= CANDIDATE_CAP)
        .ok_or_else(|| Error::Inconclusive("too many matrices".into()))?;
    let mut out = Vec::new();
    for_each_tuple(f, len, |vals| {
        let h = Matrix::from_fn(f, n.dim(), m.dim(), |r, c| vals[r * m.dim() + c].clone());
        if m.actions().iter().zip(n.actions()).all(|(am, an)| h.mul(am) == an.mul(&h)) {
            out.push(h);
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::PrimeField;

    #[test]
    fn subspace_counts() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(enumerate_subspaces(&f2, 3).unwrap().len(), 16);
        assert_eq!(enumerate_subspaces(&f2, 6).unwrap().len(), 2825);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(enumerate_subspaces(&f3, 2).unwrap().len(), 6);
    }

    #[test]
    fn module_counts() {
        let t2 = catalog::prime("t2_gf2");
        let o = enumerate_modules_of_dim(&t2, 1).unwrap();
        // S1, S2 only: the arrow acts as zero in dimension one.
        assert_eq!(o.modules.len(), 2);
        let o = enumerate_modules(&t2, 2).unwrap();
        assert_eq!(o.candidates, 1 + 4 + 256);
        let d = catalog::prime("dual_numbers_gf2");
        let o = enumerate_modules_of_dim(&d, 2).unwrap();
        // x acts by a nilpotent 2x2 matrix; there are q^2 = 4 of them.
        assert_eq!(o.modules.len(), 4);
    }

    #[test]
    fn brute_homs_match_basis() {
        let t2 = catalog::prime("t2_gf2");
        let r = ModuleRep::regular(&t2);
        let all = all_homs_brute(&r, &r).unwrap();
        assert_eq!(all.len(), 1 << crate::module::hom_dim(&r, &r).unwrap());
    }
}
