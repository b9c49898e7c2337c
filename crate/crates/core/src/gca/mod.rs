//! Finite graded-commutative Poincaré duality algebras.
//!
//! A [`CohomologyRing`] models `H^*(X, Q)` of a compact complex manifold of
//! complex dimension `n`: a named basis in every degree `0..=2n`, structure
//! constants for the cup product, and a fundamental class in degree `2n`
//! against which top-degree classes are integrated. Loading validates the
//! full axiom set exactly: unit, graded commutativity, associativity, and
//! nondegenerate Poincaré pairings in every degree.

mod document;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmath::{self, rational_rank, MultiPoly, Rational};

pub use document::{
    emit_ring, load_ring, ring_from_document, ring_to_document, ProductEntry, RingDocument,
};

/// Errors from parsing or checking a ring.
#[derive(Debug, thiserror::Error)]
pub enum RingError {
    #[error("cannot parse ring document: {0}")]
    Parse(String),
    #[error("ring document violates the schema: {0}")]
    Schema(String),
    #[error("{0}")]
    Validation(#[from] ValidationError),
}

/// One violated ring identity, with enough indices to locate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnitDegree {
        betti0: usize,
    },
    TopDegree {
        betti_top: usize,
    },
    FundamentalName {
        expected: String,
        got: String,
    },
    Unit {
        degree: u32,
        index: usize,
    },
    Commutativity {
        a: (u32, usize),
        b: (u32, usize),
    },
    Associativity {
        a: (u32, usize),
        b: (u32, usize),
        c: (u32, usize),
    },
    Duality {
        degree: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnitDegree { betti0 } => {
                write!(f, "betti(0) = {betti0}, expected exactly one unit element")
            }
            Violation::TopDegree { betti_top } => {
                write!(
                    f,
                    "betti(2n) = {betti_top}, expected exactly one top element"
                )
            }
            Violation::FundamentalName { expected, got } => write!(
                f,
                "fundamental must name the degree-2n element '{expected}', got '{got}'"
            ),
            Violation::Unit { degree, index } => write!(
                f,
                "unit law fails: e(0,0) * e({degree},{index}) != e({degree},{index})"
            ),
            Violation::Commutativity { a, b } => write!(
                f,
                "graded commutativity fails for e({},{}) and e({},{})",
                a.0, a.1, b.0, b.1
            ),
            Violation::Associativity { a, b, c } => write!(
                f,
                "associativity fails for the triple e({},{}), e({},{}), e({},{})",
                a.0, a.1, b.0, b.1, c.0, c.1
            ),
            Violation::Duality { degree } => write!(
                f,
                "Poincare pairing between degrees {degree} and 2n-{degree} is degenerate"
            ),
        }
    }
}

/// Every violated identity found by the validator.
#[derive(Debug, Clone, thiserror::Error)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring fails validation:")?;
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        Ok(())
    }
}

type ProdKey = (u32, usize, u32, usize);

/// Sparse product listing as accepted by [`CohomologyRing::from_parts`]:
/// the two factors by (degree, index) and the coefficients of their cup
/// product on the target degree's basis.
pub type ProductList = Vec<((u32, usize), (u32, usize), Vec<Rational>)>;

/// A finite graded-commutative Poincaré duality algebra over `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyRing {
    name: String,
    complex_dim: u32,
    basis: Vec<Vec<String>>,
    products: BTreeMap<ProdKey, Vec<Rational>>,
    fundamental: String,
}

/// A concrete cohomology class: rational coordinates on the basis of one
/// degree. Degrees above `2n` have empty bases, so their only element is
/// the zero element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub degree: u32,
    pub coeffs: Vec<Rational>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// A cohomology class whose coordinates are polynomials in the coordinates
/// `t_0 .. t_{rho-1}` of a generic degree-2 class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicElement {
    pub degree: u32,
    pub coeffs: Vec<MultiPoly>,
}

impl CohomologyRing {
    /// Assemble and fully validate a ring. `products` lists cup products of
    /// basis pairs as coefficient vectors on the target degree's basis;
    /// pairs may be given in either or both orders. Missing pairs default
    /// to zero, missing opposite orders are generated by the Koszul sign.
    pub fn from_parts(
        name: String,
        complex_dim: u32,
        basis: Vec<Vec<String>>,
        products: ProductList,
        fundamental: String,
    ) -> Result<Self, RingError> {
        let n = complex_dim;
        if n < 1 {
            return Err(RingError::Schema("complex_dim must be at least 1".into()));
        }
        if basis.len() != 2 * n as usize + 1 {
            return Err(RingError::Schema(format!(
                "basis must list 2n+1 = {} degrees, got {}",
                2 * n + 1,
                basis.len()
            )));
        }
        for (d, names) in basis.iter().enumerate() {
            for (i, name_i) in names.iter().enumerate() {
                if names[..i].contains(name_i) {
                    return Err(RingError::Schema(format!(
                        "duplicate basis name '{name_i}' in degree {d}"
                    )));
                }
            }
        }

        let betti = |d: u32| -> usize { basis.get(d as usize).map_or(0, Vec::len) };

        let mut table: BTreeMap<ProdKey, Vec<Rational>> = BTreeMap::new();
        for ((da, ia), (db, ib), coeffs) in products {
            let dsum = da + db;
            if dsum > 2 * n {
                return Err(RingError::Schema(format!(
                    "product e({da},{ia}) * e({db},{ib}) lands above degree 2n"
                )));
            }
            if ia >= betti(da) || ib >= betti(db) {
                return Err(RingError::Schema(format!(
                    "product references e({da},{ia}) or e({db},{ib}) outside the basis"
                )));
            }
            if coeffs.len() != betti(dsum) {
                return Err(RingError::Schema(format!(
                    "product e({da},{ia}) * e({db},{ib}) has {} coefficients, expected betti({dsum}) = {}",
                    coeffs.len(),
                    betti(dsum)
                )));
            }
            if table.insert((da, ia, db, ib), coeffs).is_some() {
                return Err(RingError::Schema(format!(
                    "duplicate product entry for e({da},{ia}) * e({db},{ib})"
                )));
            }
        }

        // Fill the opposite orders by graded commutativity, and zero the rest.
        for da in 0..=2 * n {
            for ia in 0..betti(da) {
                for db in 0..=2 * n - da {
                    for ib in 0..betti(db) {
                        let key = (da, ia, db, ib);
                        if table.contains_key(&key) {
                            continue;
                        }
                        let entry = match table.get(&(db, ib, da, ia)) {
                            Some(v) => {
                                let sign = if (da & 1) * (db & 1) == 1 { -1 } else { 1 };
                                v.iter()
                                    .map(|c| c * Rational::from_integer(sign.into()))
                                    .collect()
                            }
                            None => vec![Rational::zero(); betti(da + db)],
                        };
                        table.insert(key, entry);
                    }
                }
            }
        }

        let ring = CohomologyRing {
            name,
            complex_dim: n,
            basis,
            products: table,
            fundamental,
        };
        ring.validate()?;
        Ok(ring)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Complex dimension `n`; cohomological degrees run `0..=2n`.
    pub fn complex_dim(&self) -> u32 {
        self.complex_dim
    }

    pub fn betti(&self, degree: u32) -> usize {
        self.basis.get(degree as usize).map_or(0, Vec::len)
    }

    pub fn betti_vector(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Number of degree-2 coordinates, the variable count of every
    /// discriminant polynomial.
    pub fn rho(&self) -> usize {
        self.betti(2)
    }

    pub fn basis_names(&self, degree: u32) -> &[String] {
        self.basis.get(degree as usize).map_or(&[], Vec::as_slice)
    }

    pub fn fundamental_name(&self) -> &str {
        &self.fundamental
    }

    pub fn zero_element(&self, degree: u32) -> Element {
        Element {
            degree,
            coeffs: vec![Rational::zero(); self.betti(degree)],
        }
    }

    pub fn basis_element(&self, degree: u32, index: usize) -> Element {
        let mut e = self.zero_element(degree);
        e.coeffs[index] = Rational::one();
        e
    }

    pub fn unit(&self) -> Element {
        self.basis_element(0, 0)
    }

    fn product_coeffs(&self, da: u32, ia: usize, db: u32, ib: usize) -> Option<&[Rational]> {
        self.products.get(&(da, ia, db, ib)).map(Vec::as_slice)
    }

    /// Cup product by bilinear extension of the structure constants.
    /// Degree overflow beyond `2n` yields the zero element of the formal
    /// sum degree.
    pub fn cup(&self, a: &Element, b: &Element) -> Element {
        let degree = a.degree + b.degree;
        let mut out = self.zero_element(degree);
        if degree > 2 * self.complex_dim {
            return out;
        }
        for (ia, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (ib, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                if let Some(coeffs) = self.product_coeffs(a.degree, ia, b.degree, ib) {
                    let factor = ca * cb;
                    for (m, s) in coeffs.iter().enumerate() {
                        if !s.is_zero() {
                            out.coeffs[m] += s * &factor;
                        }
                    }
                }
            }
        }
        out
    }

    /// Coefficient of the fundamental class; the input must live in the top
    /// degree `2n`.
    pub fn integrate(&self, a: &Element) -> Result<Rational, RingError> {
        if a.degree != 2 * self.complex_dim {
            return Err(RingError::Schema(format!(
                "integrate needs degree {}, got {}",
                2 * self.complex_dim,
                a.degree
            )));
        }
        Ok(a.coeffs[0].clone())
    }

    /// The generic degree-2 class `eta = sum t_s beta_s`.
    pub fn symbolic_eta(&self) -> SymbolicElement {
        let rho = self.rho();
        SymbolicElement {
            degree: 2,
            coeffs: (0..rho).map(|s| MultiPoly::var(rho, s)).collect(),
        }
    }

    pub fn symbolic_zero(&self, degree: u32) -> SymbolicElement {
        SymbolicElement {
            degree,
            coeffs: vec![MultiPoly::zero(self.rho()); self.betti(degree)],
        }
    }

    /// Cup product with polynomial coordinates.
    pub fn symbolic_cup(&self, a: &SymbolicElement, b: &SymbolicElement) -> SymbolicElement {
        let degree = a.degree + b.degree;
        let mut out = self.symbolic_zero(degree);
        if degree > 2 * self.complex_dim {
            return out;
        }
        for (ia, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (ib, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                if let Some(coeffs) = self.product_coeffs(a.degree, ia, b.degree, ib) {
                    let product = ca * cb;
                    for (m, s) in coeffs.iter().enumerate() {
                        if !s.is_zero() {
                            out.coeffs[m] = &out.coeffs[m] + &product.scale(s);
                        }
                    }
                }
            }
        }
        out
    }

    /// `eta^k` as a symbolic element of degree `2k`; every coordinate is
    /// homogeneous of polynomial degree `k`.
    pub fn symbolic_cup_power(&self, k: u32) -> Result<SymbolicElement, RingError> {
        if 2 * k > 2 * self.complex_dim {
            return Err(RingError::Schema(format!(
                "eta^{k} lies above the top degree of {}",
                self.name
            )));
        }
        let eta = self.symbolic_eta();
        let mut out = SymbolicElement {
            degree: 0,
            coeffs: vec![MultiPoly::one(self.rho())],
        };
        for _ in 0..k {
            out = self.symbolic_cup(&out, &eta);
        }
        Ok(out)
    }

    /// Evaluate the polynomial coordinates at a rational point.
    pub fn evaluate_symbolic(
        &self,
        a: &SymbolicElement,
        point: &[Rational],
    ) -> Result<Element, exactmath::Error> {
        Ok(Element {
            degree: a.degree,
            coeffs: a
                .coeffs
                .iter()
                .map(|p| p.eval(point))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Run the full validator, collecting every violated identity.
    pub fn validate(&self) -> Result<(), ValidationError> {
        let mut violations = Vec::new();
        let n = self.complex_dim;

        if self.betti(0) != 1 {
            violations.push(Violation::UnitDegree {
                betti0: self.betti(0),
            });
        }
        if self.betti(2 * n) != 1 {
            violations.push(Violation::TopDegree {
                betti_top: self.betti(2 * n),
            });
        }
        if !violations.is_empty() {
            // Without a unique unit and fundamental class the remaining
            // identities are not even well-posed.
            return Err(ValidationError { violations });
        }
        if self.fundamental != self.basis[2 * n as usize][0] {
            violations.push(Violation::FundamentalName {
                expected: self.basis[2 * n as usize][0].clone(),
                got: self.fundamental.clone(),
            });
        }

        // Unit law.
        for d in 0..=2 * n {
            for i in 0..self.betti(d) {
                let e = self.basis_element(d, i);
                let left = self.cup(&self.unit(), &e);
                let right = self.cup(&e, &self.unit());
                if left != e || right != e {
                    violations.push(Violation::Unit {
                        degree: d,
                        index: i,
                    });
                }
            }
        }

        // Graded commutativity on all basis pairs.
        for da in 0..=2 * n {
            for ia in 0..self.betti(da) {
                for db in da..=2 * n {
                    for ib in 0..self.betti(db) {
                        let a = self.basis_element(da, ia);
                        let b = self.basis_element(db, ib);
                        let ab = self.cup(&a, &b);
                        let mut ba = self.cup(&b, &a);
                        if (da & 1) * (db & 1) == 1 {
                            for c in &mut ba.coeffs {
                                *c = -c.clone();
                            }
                        }
                        if ab != ba {
                            violations.push(Violation::Commutativity {
                                a: (da, ia),
                                b: (db, ib),
                            });
                        }
                    }
                }
            }
        }

        // Associativity on all basis triples.
        let all: Vec<(u32, usize)> = (0..=2 * n)
            .flat_map(|d| (0..self.betti(d)).map(move |i| (d, i)))
            .collect();
        for &(da, ia) in &all {
            for &(db, ib) in &all {
                for &(dc, ic) in &all {
                    let a = self.basis_element(da, ia);
                    let b = self.basis_element(db, ib);
                    let c = self.basis_element(dc, ic);
                    let left = self.cup(&self.cup(&a, &b), &c);
                    let right = self.cup(&a, &self.cup(&b, &c));
                    if left != right {
                        violations.push(Violation::Associativity {
                            a: (da, ia),
                            b: (db, ib),
                            c: (dc, ic),
                        });
                    }
                }
            }
        }

        // Poincaré duality: pairing of degree d with 2n-d is nondegenerate.
        for d in 0..=n {
            let dual = 2 * n - d;
            let bd = self.betti(d);
            if bd != self.betti(dual) {
                violations.push(Violation::Duality { degree: d });
                continue;
            }
            if bd == 0 {
                continue;
            }
            let pairing: Vec<Vec<Rational>> = (0..bd)
                .map(|i| {
                    (0..bd)
                        .map(|j| {
                            let prod =
                                self.cup(&self.basis_element(d, i), &self.basis_element(dual, j));
                            prod.coeffs[0].clone()
                        })
                        .collect()
                })
                .collect();
            if rational_rank(&pairing) != bd {
                violations.push(Violation::Duality { degree: d });
            }
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationError { violations })
        }
    }
}

/// Re-coordinatize `H^2` by an invertible integer matrix and rebuild the
/// ring. Row `i` of `u` holds the old coordinates of the new basis vector
/// `beta'_i`. Every discriminant of the new ring is the substitution image
/// of the old one under `t_s -> sum_i u[i][s] t_i`, up to a nonzero scalar.
pub fn change_h2_basis(
    ring: &CohomologyRing,
    u: &[Vec<BigInt>],
) -> Result<CohomologyRing, RingError> {
    let rho = ring.rho();
    if u.len() != rho || u.iter().any(|col| col.len() != rho) {
        return Err(RingError::Schema(
            "change of basis must be a square matrix of size betti(2)".into(),
        ));
    }
    let u_rat: Vec<Vec<Rational>> = u
        .iter()
        .map(|col| {
            col.iter()
                .map(|v| Rational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    let inv = invert(&u_rat)
        .ok_or_else(|| RingError::Schema("change of basis matrix is singular".into()))?;

    let n = ring.complex_dim;
    // new basis element i of degree 2, written in old coordinates
    let new_h2 = |i: usize| -> Element {
        Element {
            degree: 2,
            coeffs: (0..rho).map(|s| u_rat[i][s].clone()).collect(),
        }
    };
    let as_old = |d: u32, i: usize| -> Element {
        if d == 2 {
            new_h2(i)
        } else {
            ring.basis_element(d, i)
        }
    };
    let to_new_coords = |e: &Element| -> Vec<Rational> {
        if e.degree == 2 {
            // solve sum_i x_i beta'_i = e, i.e. x = (u^T)^{-1} * old coords
            (0..rho)
                .map(|i| {
                    (0..rho)
                        .map(|s| &inv[s][i] * &e.coeffs[s])
                        .fold(Rational::zero(), |a, b| a + b)
                })
                .collect()
        } else {
            e.coeffs.clone()
        }
    };

    let mut products = Vec::new();
    for da in 0..=2 * n {
        for ia in 0..ring.betti(da) {
            for db in 0..=2 * n - da {
                for ib in 0..ring.betti(db) {
                    let prod = ring.cup(&as_old(da, ia), &as_old(db, ib));
                    let coeffs = to_new_coords(&prod);
                    if coeffs.iter().any(|c| !c.is_zero()) {
                        products.push(((da, ia), (db, ib), coeffs));
                    }
                }
            }
        }
    }

    CohomologyRing::from_parts(
        format!("{}'", ring.name),
        n,
        ring.basis.clone(),
        products,
        ring.fundamental.clone(),
    )
}

/// Inverse of a small rational matrix by Gauss-Jordan; `None` if singular.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let av = &a[col][j] * &f;
                    a[r][j] -= av;
                    let iv = &inv[col][j] * &f;
                    inv[r][j] -= iv;
                }
            }
        }
    }
    Some(inv)
}
