//! Built-in example algebras.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::quiver::{build_path_algebra, parse_quiver_spec};

/// An algebra over one of the two supported fields.
#[derive(Debug, Clone)]
pub enum AnyAlgebra {
    Prime(Arc<Algebra<PrimeField>>),
    Rational(Arc<Algebra<Rationals>>),
}

impl AnyAlgebra {
    pub fn dim(&self) -> usize {
        match self {
            AnyAlgebra::Prime(a) => a.dim(),
            AnyAlgebra::Rational(a) => a.dim(),
        }
    }

    pub fn field_spec(&self) -> FieldSpec {
        match self {
            AnyAlgebra::Prime(a) => a.field().spec(),
            AnyAlgebra::Rational(a) => a.field().spec(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Recipe {
    Quiver(&'static str),
    LowerTriangular(usize),
    FullMatrix(usize),
    ProductOfFields(usize),
    TruncatedPolynomial(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub field: FieldSpec,
    pub recipe: Recipe,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "t2_gf2",
        description: "lower triangular 2x2 matrices over GF(2)",
        field: FieldSpec::Prime(2),
        recipe: Recipe::LowerTriangular(2),
    },
    CatalogEntry {
        name: "t3_gf2",
        description: "lower triangular 3x3 matrices over GF(2)",
        field: FieldSpec::Prime(2),
        recipe: Recipe::LowerTriangular(3),
    },
    CatalogEntry {
        name: "a3_gf2",
        description: "path algebra of the A3 quiver 1 -> 2 <- 3 over GF(2)",
        field: FieldSpec::Prime(2),
        recipe: Recipe::Quiver("vertices: 1 2 3; arrows: a: 1 -> 2, b: 3 -> 2;"),
    },
    CatalogEntry {
        name: "kronecker_gf2",
        description: "Kronecker quiver (two arrows 1 -> 2) over GF(2)",
        field: FieldSpec::Prime(2),
        recipe: Recipe::Quiver("vertices: 1 2; arrows: a: 1 -> 2, b: 1 -> 2;"),
    },
    CatalogEntry {
        name: "dual_numbers_gf2",
        description: "GF(2)[x]/(x^2)",
        field: FieldSpec::Prime(2),
        recipe: Recipe::TruncatedPolynomial(2),
    },
    CatalogEntry {
        name: "dual_numbers_gf5",
        description: "GF(5)[x]/(x^2)",
        field: FieldSpec::Prime(5),
        recipe: Recipe::TruncatedPolynomial(2),
    },
    CatalogEntry {
        name: "loop_x4_gf2",
        description: "GF(2)[x]/(x^4) as a loop quiver with relation x^4",
        field: FieldSpec::Prime(2),
        recipe: Recipe::Quiver("vertices: v; arrows: x: v -> v; relations: x*x*x*x;"),
    },
    CatalogEntry {
        name: "m2_gf2",
        description: "full 2x2 matrix algebra over GF(2)",
        field: FieldSpec::Prime(2),
        recipe: Recipe::FullMatrix(2),
    },
    CatalogEntry {
        name: "gf3_cubed",
        description: "GF(3) x GF(3) x GF(3)",
        field: FieldSpec::Prime(3),
        recipe: Recipe::ProductOfFields(3),
    },
    CatalogEntry {
        name: "t2_q",
        description: "lower triangular 2x2 matrices over Q",
        field: FieldSpec::Rational(true),
        recipe: Recipe::LowerTriangular(2),
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

fn build_over<F: Field>(f: &F, recipe: Recipe) -> Result<Algebra<F>> {
    Ok(match recipe {
        Recipe::Quiver(text) => build_path_algebra(&parse_quiver_spec(text)?, f)?,
        Recipe::LowerTriangular(n) => lower_triangular(f, n),
        Recipe::FullMatrix(n) => full_matrix(f, n),
        Recipe::ProductOfFields(n) => product_of_fields(f, n),
        Recipe::TruncatedPolynomial(n) => truncated_polynomial(f, n),
    })
}

impl CatalogEntry {
    /// Builds and validates the entry.
    pub fn build(&self) -> Result<AnyAlgebra> {
        self.field.validate()?;
        let out = match self.field {
            FieldSpec::Prime(p) => AnyAlgebra::Prime(Arc::new(build_over(&PrimeField::new(p)?, self.recipe)?)),
            FieldSpec::Rational(_) => AnyAlgebra::Rational(Arc::new(build_over(&Rationals, self.recipe)?)),
        };
        let valid = match &out {
            AnyAlgebra::Prime(a) => a.validate().is_valid(),
            AnyAlgebra::Rational(a) => a.validate().is_valid(),
        };
        if !valid {
            return Err(crate::Error::InvalidAlgebra(format!("catalog entry {}", self.name)));
        }
        Ok(out)
    }

    /// Builds a GF(p) entry; `None` for the rational ones.
    pub fn build_prime(&self) -> Result<Option<Arc<Algebra<PrimeField>>>> {
        Ok(match self.build()? {
            AnyAlgebra::Prime(a) => Some(a),
            AnyAlgebra::Rational(_) => None,
        })
    }
}

/// Builds every entry, failing on the first one that does not validate.
pub fn build_all() -> Result<Vec<(&'static CatalogEntry, AnyAlgebra)>> {
    ENTRIES.iter().map(|e| Ok((e, e.build()?))).collect()
}

/// Looks up and builds a GF(p) catalog algebra by name. Panics on unknown
/// names; meant for tests and examples.
pub fn prime(name: &str) -> Arc<Algebra<PrimeField>> {
    entry(name)
        .unwrap_or_else(|| panic!("no catalog entry {name}"))
        .build_prime()
        .expect("catalog entries build")
        .unwrap_or_else(|| panic!("{name} is not over a prime field"))
}

fn from_table<F: Field>(
    f: &F,
    n: usize,
    unit: Vec<F::Elem>,
    labels: Vec<String>,
    product: impl Fn(usize, usize) -> Option<usize>,
) -> Algebra<F> {
    let mut c = vec![f.zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            if let Some(k) = product(i, j) {
                c[(i * n + j) * n + k] = f.one();
            }
        }
    }
    Algebra::from_flat(f, n, c, unit, Some(labels))
}

/// `F^n` with componentwise product; basis `e1..en`.
pub fn product_of_fields<F: Field>(f: &F, n: usize) -> Algebra<F> {
    from_table(
        f,
        n,
        vec![f.one(); n],
        (1..=n).map(|i| format!("e{i}")).collect(),
        |i, j| (i == j).then_some(i),
    )
}

fn matrix_units<F: Field>(f: &F, cells: Vec<(usize, usize)>) -> Algebra<F> {
    let n = cells.len();
    let unit = cells.iter().map(|&(r, c)| if r == c { f.one() } else { f.zero() }).collect();
    let labels = cells.iter().map(|&(r, c)| format!("E{}{}", r + 1, c + 1)).collect();
    let pos = |r: usize, c: usize| cells.iter().position(|&x| x == (r, c));
    from_table(f, n, unit, labels, |i, j| {
        let (a, b) = cells[i];
        let (c, d) = cells[j];
        if b == c {
            pos(a, d)
        } else {
            None
        }
    })
}

/// Lower triangular `n x n` matrices, basis `E_rc` (r >= c) in row-major
/// order: for n = 2 that is `E11, E21, E22`.
pub fn lower_triangular<F: Field>(f: &F, n: usize) -> Algebra<F> {
    matrix_units(f, (0..n).flat_map(|r| (0..=r).map(move |c| (r, c))).collect())
}

/// All `n x n` matrices, basis `E_rc` in row-major order.
pub fn full_matrix<F: Field>(f: &F, n: usize) -> Algebra<F> {
    matrix_units(f, (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).collect())
}

/// `F[x]/(x^n)` with basis `1, x, .., x^(n-1)`.
pub fn truncated_polynomial<F: Field>(f: &F, n: usize) -> Algebra<F> {
    let mut unit = vec![f.zero(); n];
    unit[0] = f.one();
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    from_table(f, n, unit, labels, |i, j| (i + j < n).then_some(i + j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds_and_validates() {
        let all = build_all().unwrap();
        assert_eq!(all.len(), ENTRIES.len());
        let dims: Vec<usize> = all.iter().map(|(_, a)| a.dim()).collect();
        assert_eq!(dims, [3, 6, 5, 4, 2, 2, 4, 4, 3, 3]);
    }

    #[test]
    fn matrix_unit_tables() {
        let f = PrimeField::new(2).unwrap();
        let t2 = lower_triangular(&f, 2);
        assert_eq!(t2.labels().unwrap(), ["E11", "E21", "E22"]);
        // E21 E11 = E21
        assert_eq!(t2.mul(&[0, 1, 0], &[1, 0, 0]), vec![0, 1, 0]);
        assert_eq!(t2.mul(&[1, 0, 0], &[0, 1, 0]), vec![0, 0, 0]);
        let m2 = full_matrix(&f, 2);
        assert_eq!(m2.unit(), &[1, 0, 0, 1]);
        assert!(m2.validate().is_valid());
    }
}
