//! Constructors for verified example rings.
//!
//! Every constructor runs the full ring validator before returning, so a
//! successful call certifies the algebra axioms. Entries optionally carry
//! an ample class (a Lefschetz witness), nef-cone generators, and
//! contraction fixtures whose predictions can be cross-checked against the
//! computed discriminants.

use num_traits::{One, Zero};

use crate::exactmath::{rat, LinearForm, Rational};
use crate::gca::{CohomologyRing, ProductList, RingError};
use crate::geometry::ContractionRecord;

/// A catalog ring with its geometric side data.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub ring: CohomologyRing,
    /// A class guaranteed to satisfy the Lefschetz condition at all levels.
    pub ample: Option<Vec<Rational>>,
    /// Generators of the nef cone in `H^2` coordinates.
    pub nef_generators: Option<Vec<Vec<Rational>>>,
    pub fixtures: Vec<ContractionFixture>,
    /// Tori: every zero of `delta_n` is expected to be a zero of every
    /// `delta_k` (checked on samples by the tests).
    pub expects_containment: bool,
}

/// One contraction from the literature, with the support the discriminants
/// are expected to reveal.
#[derive(Debug, Clone)]
pub struct ContractionFixture {
    pub label: &'static str,
    pub record: ContractionRecord,
    /// Expected `(k, m)` from the dimension inequality, if any.
    pub expected_prediction: Option<(u32, u32)>,
    /// Expected multiplicity of the ray at the predicted level (or at the
    /// ray's would-be level when there is no prediction).
    pub expected_observed: u32,
}

/// Identity products `1 * e = e` for every basis element, which every
/// constructor must supply explicitly (omitted products are zero).
fn unit_products(basis: &[Vec<String>]) -> ProductList {
    let mut out = Vec::new();
    for (d, names) in basis.iter().enumerate() {
        for i in 0..names.len() {
            let mut coeffs = vec![Rational::zero(); names.len()];
            coeffs[i] = Rational::one();
            out.push(((0, 0), (d as u32, i), coeffs));
        }
    }
    out
}

/// `P^n`: basis `1, h, h^2, ..., h^n` in even degrees, `h^i * h^j = h^{i+j}`.
pub fn projective_space(n: u32) -> Result<CohomologyRing, RingError> {
    if n < 1 {
        return Err(RingError::Schema("projective space needs n >= 1".into()));
    }
    let mut basis = vec![Vec::new(); 2 * n as usize + 1];
    for i in 0..=n {
        let name = match i {
            0 => "1".to_string(),
            1 => "h".to_string(),
            _ => format!("h^{i}"),
        };
        basis[2 * i as usize].push(name);
    }
    let mut products = unit_products(&basis);
    for i in 1..=n {
        for j in i..=n {
            if i + j <= n {
                products.push(((2 * i, 0), (2 * j, 0), vec![Rational::one()]));
            }
        }
    }
    let fundamental = basis[2 * n as usize][0].clone();
    CohomologyRing::from_parts(format!("P{n}"), n, basis, products, fundamental)
}

/// Tensor product of two rings with the Koszul sign rule
/// `(x1 (x) y1)(x2 (x) y2) = (-1)^{deg y1 deg x2} (x1 x2) (x) (y1 y2)`.
pub fn kunneth_product(
    a: &CohomologyRing,
    b: &CohomologyRing,
) -> Result<CohomologyRing, RingError> {
    let n = a.complex_dim() + b.complex_dim();
    let top_a = 2 * a.complex_dim();
    let top_b = 2 * b.complex_dim();

    // degree d basis: pairs (p-degree element of a, (d-p)-degree of b),
    // ordered by p, then by factor indices
    let mut basis: Vec<Vec<String>> = vec![Vec::new(); 2 * n as usize + 1];
    let mut position = std::collections::BTreeMap::new();
    for d in 0..=2 * n {
        for p in 0..=d.min(top_a) {
            let q = d - p;
            if q > top_b {
                continue;
            }
            for (i, x) in a.basis_names(p).iter().enumerate() {
                for (j, y) in b.basis_names(q).iter().enumerate() {
                    position.insert((p, i, q, j), basis[d as usize].len());
                    basis[d as usize].push(format!("{x}(x){y}"));
                }
            }
        }
    }

    let mut products = Vec::new();
    let pairs: Vec<(u32, usize, u32, usize)> = position.keys().copied().collect();
    for &(p1, i1, q1, j1) in &pairs {
        for &(p2, i2, q2, j2) in &pairs {
            let d_total = p1 + q1 + p2 + q2;
            if d_total > 2 * n {
                continue;
            }
            let xa = a.cup(&a.basis_element(p1, i1), &a.basis_element(p2, i2));
            let yb = b.cup(&b.basis_element(q1, j1), &b.basis_element(q2, j2));
            if xa.is_zero() || yb.is_zero() {
                continue;
            }
            let negate = (q1 & 1) * (p2 & 1) == 1;
            let mut coeffs = vec![Rational::zero(); basis[d_total as usize].len()];
            let mut any = false;
            for (r, ca) in xa.coeffs.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (s, cb) in yb.coeffs.iter().enumerate() {
                    if cb.is_zero() {
                        continue;
                    }
                    let pos = position[&(p1 + p2, r, q1 + q2, s)];
                    let v = ca * cb;
                    coeffs[pos] = if negate { -v } else { v };
                    any = true;
                }
            }
            if any {
                products.push((
                    (p1 + q1, position[&(p1, i1, q1, j1)]),
                    (p2 + q2, position[&(p2, i2, q2, j2)]),
                    coeffs,
                ));
            }
        }
    }

    let fundamental = basis[2 * n as usize][0].clone();
    CohomologyRing::from_parts(
        format!("{}x{}", a.name(), b.name()),
        n,
        basis,
        products,
        fundamental,
    )
}

/// Simply connected surface model from an intersection matrix: betti
/// `[1, 0, rho, 0, 1]` and `b_i * b_j = M[i][j] * pt`.
pub fn surface_from_intersection_matrix(
    name: &str,
    m: &[Vec<i64>],
    h2_names: &[&str],
) -> Result<CohomologyRing, RingError> {
    let rho = m.len();
    if m.iter().any(|row| row.len() != rho) || h2_names.len() != rho {
        return Err(RingError::Schema(
            "intersection matrix must be square and match the name list".into(),
        ));
    }
    for (i, row) in m.iter().enumerate() {
        for (j, value) in row.iter().enumerate() {
            if *value != m[j][i] {
                return Err(RingError::Schema(
                    "intersection matrix must be symmetric".into(),
                ));
            }
        }
    }
    let as_rat: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| row.iter().map(|&v| rat(v)).collect())
        .collect();
    if crate::exactmath::rational_rank(&as_rat) != rho {
        return Err(RingError::Schema(
            "intersection matrix must be invertible".into(),
        ));
    }

    let basis = vec![
        vec!["1".to_string()],
        Vec::new(),
        h2_names.iter().map(|s| s.to_string()).collect(),
        Vec::new(),
        vec!["pt".to_string()],
    ];
    let mut products = unit_products(&basis);
    #[allow(clippy::needless_range_loop)]
    for i in 0..rho {
        for j in i..rho {
            if m[i][j] != 0 {
                products.push(((2, i), (2, j), vec![rat(m[i][j])]));
            }
        }
    }
    CohomologyRing::from_parts(name.to_string(), 2, basis, products, "pt".to_string())
}

/// Compact complex torus of dimension `n`: the exterior algebra on `2n`
/// degree-one generators, `betti(d) = C(2n, d)`, fundamental class the top
/// wedge.
pub fn torus(n: u32) -> Result<CohomologyRing, RingError> {
    if n < 1 {
        return Err(RingError::Schema("torus needs n >= 1".into()));
    }
    let gens = 2 * n as usize;
    // subsets of {1..2n} in lexicographic order per cardinality
    let mut subsets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); gens + 1];
    for mask in 0u32..(1 << gens) {
        let subset: Vec<usize> = (0..gens).filter(|&g| mask & (1 << g) != 0).collect();
        subsets[subset.len()].push(subset);
    }
    for class in &mut subsets {
        class.sort();
    }

    let name_of = |s: &[usize]| -> String {
        if s.is_empty() {
            "1".to_string()
        } else {
            s.iter()
                .map(|g| format!("e{}", g + 1))
                .collect::<Vec<_>>()
                .join("^")
        }
    };
    let basis: Vec<Vec<String>> = subsets
        .iter()
        .map(|class| class.iter().map(|s| name_of(s)).collect())
        .collect();

    let index_of = |s: &[usize]| -> usize {
        subsets[s.len()]
            .iter()
            .position(|t| t == s)
            .expect("subset")
    };

    let mut products = unit_products(&basis);
    for (da, class_a) in subsets.iter().enumerate() {
        if da == 0 {
            continue;
        }
        for (ia, sa) in class_a.iter().enumerate() {
            for (db, class_b) in subsets.iter().enumerate() {
                if db == 0 || da + db > gens {
                    continue;
                }
                for (ib, sb) in class_b.iter().enumerate() {
                    if sa.iter().any(|g| sb.contains(g)) {
                        continue;
                    }
                    // sign of the shuffle merging sa before sb
                    let inversions = sa
                        .iter()
                        .map(|&x| sb.iter().filter(|&&y| y < x).count())
                        .sum::<usize>();
                    let mut merged: Vec<usize> = sa.iter().chain(sb.iter()).copied().collect();
                    merged.sort();
                    let mut coeffs = vec![Rational::zero(); subsets[da + db].len()];
                    coeffs[index_of(&merged)] = if inversions % 2 == 0 {
                        Rational::one()
                    } else {
                        -Rational::one()
                    };
                    products.push(((da as u32, ia), (db as u32, ib), coeffs));
                }
            }
        }
    }

    let fundamental = basis[gens][0].clone();
    CohomologyRing::from_parts(format!("Torus{n}"), n, basis, products, fundamental)
}

/// A Hopf surface: betti `[1, 1, 0, 1, 1]`, `H^2 = 0`, so every
/// discriminant is void.
pub fn hopf_surface() -> Result<CohomologyRing, RingError> {
    let basis = vec![
        vec!["1".to_string()],
        vec!["a".to_string()],
        Vec::new(),
        vec!["b".to_string()],
        vec!["ab".to_string()],
    ];
    let mut products = unit_products(&basis);
    products.push(((1, 0), (3, 0), vec![Rational::one()]));
    CohomologyRing::from_parts("Hopf".to_string(), 2, basis, products, "ab".to_string())
}

fn rats(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| rat(v)).collect()
}

/// The full catalog in canonical order.
pub fn all() -> Vec<CatalogEntry> {
    let p1 = projective_space(1).expect("P1 is valid");
    let p2 = projective_space(2).expect("P2 is valid");
    let p3 = projective_space(3).expect("P3 is valid");
    let p1xp1 = kunneth_product(&p1, &p1).expect("P1xP1 is valid");
    let p1xp2 = kunneth_product(&p1, &p2).expect("P1xP2 is valid");
    let f1 = surface_from_intersection_matrix("F1", &[vec![1, 0], vec![0, -1]], &["H", "E"])
        .expect("F1 is valid");
    let dp7 = surface_from_intersection_matrix(
        "dP7",
        &[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]],
        &["H", "E1", "E2"],
    )
    .expect("dP7 is valid");
    let torus1 = torus(1).expect("Torus1 is valid");
    let torus2 = torus(2).expect("Torus2 is valid");
    let hopf = hopf_surface().expect("Hopf is valid");

    vec![
        CatalogEntry {
            key: "p1",
            ring: p1,
            ample: Some(rats(&[1])),
            nef_generators: Some(vec![rats(&[1])]),
            fixtures: vec![],
            expects_containment: false,
        },
        CatalogEntry {
            key: "p2",
            ring: p2,
            ample: Some(rats(&[1])),
            nef_generators: Some(vec![rats(&[1])]),
            fixtures: vec![ContractionFixture {
                label: "plane to a point",
                record: ContractionRecord::new(2, 2, 0)
                    .with_length(3)
                    .with_ray(LinearForm::from_integers(&[1])),
                expected_prediction: Some((2, 2)),
                expected_observed: 2,
            }],
            expects_containment: false,
        },
        CatalogEntry {
            key: "p3",
            ring: p3,
            ample: Some(rats(&[1])),
            nef_generators: Some(vec![rats(&[1])]),
            fixtures: vec![],
            expects_containment: false,
        },
        CatalogEntry {
            key: "p1xp1",
            ring: p1xp1,
            ample: Some(rats(&[1, 1])),
            nef_generators: Some(vec![rats(&[1, 0]), rats(&[0, 1])]),
            fixtures: vec![ContractionFixture {
                label: "ruling onto the first factor",
                record: ContractionRecord::new(2, 2, 1)
                    .with_length(2)
                    .with_ray(LinearForm::from_integers(&[1, 0])),
                expected_prediction: Some((2, 1)),
                expected_observed: 1,
            }],
            expects_containment: false,
        },
        CatalogEntry {
            key: "p1xp2",
            ring: p1xp2,
            ample: Some(rats(&[1, 1])),
            nef_generators: Some(vec![rats(&[1, 0]), rats(&[0, 1])]),
            fixtures: vec![
                ContractionFixture {
                    label: "projection to the line (plane fibers)",
                    record: ContractionRecord::new(3, 3, 1)
                        .with_length(3)
                        .with_ray(LinearForm::from_integers(&[1, 0])),
                    expected_prediction: Some((3, 2)),
                    expected_observed: 2,
                },
                ContractionFixture {
                    label: "projection to the plane (line fibers)",
                    record: ContractionRecord::new(3, 3, 2)
                        .with_length(2)
                        .with_ray(LinearForm::from_integers(&[0, 1])),
                    expected_prediction: Some((3, 1)),
                    expected_observed: 1,
                },
            ],
            expects_containment: false,
        },
        CatalogEntry {
            key: "f1",
            ring: f1,
            ample: Some(rats(&[2, -1])),
            nef_generators: Some(vec![rats(&[1, 0]), rats(&[1, -1])]),
            fixtures: vec![
                ContractionFixture {
                    label: "blow-down of the (-1)-curve",
                    record: ContractionRecord::new(2, 1, 0)
                        .with_length(1)
                        .with_ray(LinearForm::from_integers(&[0, 1])),
                    expected_prediction: None,
                    expected_observed: 0,
                },
                ContractionFixture {
                    label: "ruling over the line",
                    record: ContractionRecord::new(2, 2, 1)
                        .with_length(2)
                        .with_ray(LinearForm::from_integers(&[1, 1])),
                    expected_prediction: Some((2, 1)),
                    expected_observed: 1,
                },
            ],
            expects_containment: false,
        },
        CatalogEntry {
            key: "dp7",
            ring: dp7,
            ample: Some(rats(&[3, -1, -1])),
            nef_generators: Some(vec![rats(&[1, 0, 0]), rats(&[1, -1, 0]), rats(&[1, 0, -1])]),
            fixtures: vec![ContractionFixture {
                label: "blow-down of the first (-1)-curve",
                record: ContractionRecord::new(2, 1, 0)
                    .with_length(1)
                    .with_ray(LinearForm::from_integers(&[0, 1, 0])),
                expected_prediction: None,
                expected_observed: 0,
            }],
            expects_containment: false,
        },
        CatalogEntry {
            key: "torus1",
            ring: torus1,
            ample: None,
            nef_generators: None,
            fixtures: vec![],
            expects_containment: true,
        },
        CatalogEntry {
            key: "torus2",
            ring: torus2,
            ample: None,
            nef_generators: None,
            fixtures: vec![],
            expects_containment: true,
        },
        CatalogEntry {
            key: "hopf",
            ring: hopf,
            ample: None,
            nef_generators: None,
            fixtures: vec![],
            expects_containment: false,
        },
    ]
}

pub fn keys() -> Vec<&'static str> {
    all().iter().map(|e| e.key).collect()
}

pub fn get(key: &str) -> Option<CatalogEntry> {
    all().into_iter().find(|e| e.key == key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::{change_h2_basis, emit_ring, load_ring};
    use crate::geometry::cross_check;
    use crate::lefschetz::{check_lefschetz_at, full_discriminant};
    use crate::MultiPoly;
    use num_bigint::BigInt;

    #[test]
    fn projective_space_shapes() {
        assert_eq!(projective_space(1).unwrap().betti_vector(), vec![1, 0, 1]);
        assert_eq!(
            projective_space(3).unwrap().betti_vector(),
            vec![1, 0, 1, 0, 1, 0, 1]
        );
        assert!(projective_space(0).is_err());
    }

    #[test]
    fn kunneth_betti_convolution() {
        let p1 = projective_space(1).unwrap();
        let p2 = projective_space(2).unwrap();
        assert_eq!(
            kunneth_product(&p1, &p1).unwrap().betti_vector(),
            vec![1, 0, 2, 0, 1]
        );
        assert_eq!(
            kunneth_product(&p1, &p2).unwrap().betti_vector(),
            vec![1, 0, 2, 0, 2, 0, 1]
        );
        let t1 = torus(1).unwrap();
        assert_eq!(
            kunneth_product(&t1, &t1).unwrap().betti_vector(),
            vec![1, 4, 6, 4, 1]
        );
    }

    #[test]
    fn kunneth_square_of_torus_matches_torus2_up_to_relabeling() {
        let t1 = torus(1).unwrap();
        let square = kunneth_product(&t1, &t1).unwrap();
        let t2 = torus(2).unwrap();
        assert_eq!(square.betti_vector(), t2.betti_vector());

        // the H^2 bases correspond by the permutation sending the kunneth
        // order (1(x)e1^e2, e1(x)e1, e1(x)e2, e2(x)e1, e2(x)e2, e1^e2(x)1)
        // to the wedge order (e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4)
        let perm = [5usize, 1, 2, 3, 4, 0];
        let square_discs = full_discriminant(&square);
        let t2_discs = full_discriminant(&t2);
        for (ds, dt) in square_discs.iter().zip(&t2_discs) {
            let images: Vec<MultiPoly> = perm.iter().map(|&to| MultiPoly::var(6, to)).collect();
            let moved = ds.delta.substitute_all(&images);
            let (normalized, _) = moved.normalize_primitive().unwrap();
            assert_eq!(normalized, dt.delta, "k = {}", ds.k);
        }
    }

    #[test]
    fn kunneth_is_associative_on_betti_and_discriminants() {
        let p1 = projective_space(1).unwrap();
        let left = kunneth_product(&kunneth_product(&p1, &p1).unwrap(), &p1).unwrap();
        let right = kunneth_product(&p1, &kunneth_product(&p1, &p1).unwrap()).unwrap();
        assert_eq!(left.betti_vector(), right.betti_vector());
        let dl = full_discriminant(&left);
        let dr = full_discriminant(&right);
        for (a, b) in dl.iter().zip(&dr) {
            // bases agree up to order of the tensor factors; for the cube of
            // the line both orders give the same list in the same order
            assert_eq!(a.delta, b.delta, "k = {}", a.k);
        }
    }

    #[test]
    fn fiber_basis_quadric_surface() {
        let ring = surface_from_intersection_matrix("Q", &[vec![0, 1], vec![1, 0]], &["f1", "f2"])
            .unwrap();
        let discs = full_discriminant(&ring);
        assert_eq!(discs[1].delta, MultiPoly::parse("t0*t1", 2).unwrap());

        // base change from the fiber basis to the (H, E)-style basis of the
        // same lattice must transport the discriminant accordingly
        let u = vec![
            vec![BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(-1)],
        ];
        let moved = change_h2_basis(&ring, &u).unwrap();
        let moved_discs = full_discriminant(&moved);
        assert_eq!(
            moved_discs[1].delta,
            MultiPoly::parse("t0^2 - t1^2", 2).unwrap()
        );
    }

    #[test]
    fn surface_rejects_bad_matrices() {
        assert!(
            surface_from_intersection_matrix("S", &[vec![1, 1], vec![0, 1]], &["a", "b"]).is_err()
        );
        assert!(
            surface_from_intersection_matrix("S", &[vec![1, 1], vec![1, 1]], &["a", "b"]).is_err()
        );
    }

    #[test]
    fn torus_shapes() {
        assert_eq!(torus(1).unwrap().betti_vector(), vec![1, 2, 1]);
        assert_eq!(torus(2).unwrap().betti_vector(), vec![1, 4, 6, 4, 1]);
        assert!(torus(0).is_err());
    }

    #[test]
    fn hopf_shape() {
        let hopf = hopf_surface().unwrap();
        assert_eq!(hopf.betti_vector(), vec![1, 1, 0, 1, 1]);
        assert_eq!(hopf.rho(), 0);
    }

    #[test]
    fn catalog_rings_round_trip_through_the_file_format() {
        for entry in all() {
            let text = emit_ring(&entry.ring);
            let reloaded = load_ring(&text).unwrap();
            assert_eq!(entry.ring, reloaded, "{}", entry.key);
            assert_eq!(emit_ring(&reloaded), text, "{}", entry.key);
        }
    }

    #[test]
    fn designated_ample_classes_satisfy_lefschetz() {
        for entry in all() {
            if let Some(ample) = &entry.ample {
                let verdict = check_lefschetz_at(&entry.ring, ample).unwrap();
                assert!(verdict.all_pass, "{} at {ample:?}", entry.key);
            }
        }
    }

    #[test]
    fn fixtures_match_their_expectations() {
        for entry in all() {
            for fixture in &entry.fixtures {
                let report = cross_check(&entry.ring, &fixture.record).unwrap();
                assert_eq!(
                    report.prediction, fixture.expected_prediction,
                    "{}: {}",
                    entry.key, fixture.label
                );
                assert!(report.ok, "{}: {}", entry.key, fixture.label);
                match report.prediction {
                    Some((k, _)) => {
                        assert_eq!(
                            report.observed,
                            Some(crate::Multiplicity::Finite(fixture.expected_observed)),
                            "{}: {}",
                            entry.key,
                            fixture.label
                        );
                        assert!(report
                            .support
                            .iter()
                            .any(|&(level, m)| level == k && m == fixture.expected_observed))
                    }
                    None => {
                        assert_eq!(report.observed, None);
                        assert!(
                            report.support.is_empty(),
                            "{}: {} should be L-negligible",
                            entry.key,
                            fixture.label
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn keys_are_stable() {
        assert_eq!(
            keys(),
            vec!["p1", "p2", "p3", "p1xp1", "p1xp2", "f1", "dp7", "torus1", "torus2", "hopf"]
        );
        assert!(get("p2").is_some());
        assert!(get("nope").is_none());
    }
}
