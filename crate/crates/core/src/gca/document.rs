//! The ring file format: a JSON document with exact integer fractions.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{CohomologyRing, RingError};
use crate::exactmath::Rational;

/// On-disk shape of a ring. Products may be given for either order of a
/// pair; omitted products are zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingDocument {
    pub name: String,
    pub complex_dim: u32,
    pub basis: Vec<Vec<String>>,
    pub products: Vec<ProductEntry>,
    pub fundamental: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductEntry {
    pub a: (u32, usize),
    pub b: (u32, usize),
    pub result: Vec<(serde_json::Number, serde_json::Number)>,
}

fn number_to_bigint(n: &serde_json::Number) -> Result<BigInt, RingError> {
    n.to_string()
        .parse::<BigInt>()
        .map_err(|_| RingError::Schema(format!("coefficient '{n}' is not an integer")))
}

fn bigint_to_number(v: &BigInt) -> serde_json::Number {
    serde_json::from_str(&v.to_string()).expect("an integer literal is a JSON number")
}

/// Parse and fully validate a ring document.
pub fn load_ring(content: &str) -> Result<CohomologyRing, RingError> {
    let doc: RingDocument =
        serde_json::from_str(content).map_err(|e| RingError::Parse(e.to_string()))?;
    ring_from_document(&doc)
}

pub fn ring_from_document(doc: &RingDocument) -> Result<CohomologyRing, RingError> {
    let mut products = Vec::with_capacity(doc.products.len());
    for entry in &doc.products {
        let coeffs = entry
            .result
            .iter()
            .map(|(p, q)| {
                let num = number_to_bigint(p)?;
                let den = number_to_bigint(q)?;
                if den <= BigInt::from(0) {
                    return Err(RingError::Schema(format!(
                        "denominator {den} must be positive"
                    )));
                }
                Ok(Rational::new(num, den))
            })
            .collect::<Result<Vec<_>, _>>()?;
        products.push((entry.a, entry.b, coeffs));
    }
    CohomologyRing::from_parts(
        doc.name.clone(),
        doc.complex_dim,
        doc.basis.clone(),
        products,
        doc.fundamental.clone(),
    )
}

/// Canonical document for a ring: products for `(a) <= (b)` only, nonzero
/// results only, sorted by basis position. Emitting then reloading always
/// round-trips byte-for-byte.
pub fn ring_to_document(ring: &CohomologyRing) -> RingDocument {
    let n = ring.complex_dim();
    let mut products = Vec::new();
    for da in 0..=2 * n {
        for ia in 0..ring.betti(da) {
            for db in da..=2 * n - da {
                for ib in 0..ring.betti(db) {
                    if db == da && ib < ia {
                        continue;
                    }
                    let prod = ring.cup(&ring.basis_element(da, ia), &ring.basis_element(db, ib));
                    if prod.is_zero() {
                        continue;
                    }
                    let result = prod
                        .coeffs
                        .iter()
                        .map(|c| (bigint_to_number(c.numer()), bigint_to_number(c.denom())))
                        .collect();
                    products.push(ProductEntry {
                        a: (da, ia),
                        b: (db, ib),
                        result,
                    });
                }
            }
        }
    }
    RingDocument {
        name: ring.name().to_string(),
        complex_dim: n,
        basis: (0..=2 * n).map(|d| ring.basis_names(d).to_vec()).collect(),
        products,
        fundamental: ring.fundamental_name().to_string(),
    }
}

/// Serialize the canonical document as pretty JSON with a trailing newline.
pub fn emit_ring(ring: &CohomologyRing) -> String {
    let doc = ring_to_document(ring);
    let mut s = serde_json::to_string_pretty(&doc).expect("ring documents always serialize");
    s.push('\n');
    s
}

impl RingDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("ring documents always serialize");
        s.push('\n');
        s
    }
}
