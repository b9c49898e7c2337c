//! Lefschetz forms, discriminants, and L-supported classes.
//!
//! For a ring of complex dimension `n` and each level `k = 1..=n`, the cup
//! pairing `(chi, nu) -> chi * nu * eta^k` on degree `n-k` classes is a
//! `b_{n-k} x b_{n-k}` matrix of polynomials in the coordinates of the
//! generic degree-2 class `eta` — symmetric when `n-k` is even, skew when
//! odd. Its determinant `delta_k` (primitively normalized) cuts out the
//! k-th Lefschetz discriminant; a nonzero rational linear form dividing
//! some `delta_k` is L-supported of that type, with the exact divisor power
//! as its multiplicity.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exactmath::{
    self, linear_multiplicity, LinearForm, MultiPoly, Multiplicity, PolyMatrix, Rational,
};
use crate::gca::{CohomologyRing, RingError, SymbolicElement};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("level k = {k} is outside 1..={n}")]
    LevelOutOfRange { k: u32, n: u32 },
    #[error("no cone generators supplied")]
    EmptyGenerators,
    #[error(transparent)]
    Math(#[from] exactmath::Error),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Parity class of a Lefschetz pairing matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Skew,
}

/// The matrix of the level-`k` pairing in the degree-`n-k` basis.
#[derive(Debug, Clone)]
pub struct LefschetzMatrix {
    pub k: u32,
    pub space_degree: u32,
    pub matrix: PolyMatrix,
    pub symmetry: Symmetry,
}

/// `delta_k`, primitively normalized, with its expected degree and the
/// pfaffian part on skew levels. `is_zero` marks a void discriminant (the
/// pairing degenerates identically), a legitimate outcome for
/// non-projective rings, never an error.
#[derive(Debug, Clone)]
pub struct Discriminant {
    pub k: u32,
    pub space_dim: usize,
    pub delta: MultiPoly,
    pub expected_degree: u64,
    pub is_zero: bool,
    pub pfaffian_part: Option<MultiPoly>,
}

impl Discriminant {
    /// A level with an empty pairing space; its determinant is the unit
    /// and the Lefschetz condition holds vacuously.
    pub fn is_vacuous(&self) -> bool {
        self.space_dim == 0
    }
}

/// Build the level-`k` pairing matrix. Entry `(i, j)` is the integral of
/// `e_i * e_j * eta^k` over the fundamental class; exact symmetry or
/// skewness is asserted.
pub fn lefschetz_matrix(ring: &CohomologyRing, k: u32) -> Result<LefschetzMatrix, Error> {
    let n = ring.complex_dim();
    if k < 1 || k > n {
        return Err(Error::LevelOutOfRange { k, n });
    }
    let d = n - k;
    let b = ring.betti(d);
    let rho = ring.rho();
    let power = ring.symbolic_cup_power(k)?;

    // integral of e_{2d,m} * eta^k for every degree-2d basis element
    let pair_degree = 2 * d;
    let top_integrals: Vec<MultiPoly> = (0..ring.betti(pair_degree))
        .map(|m| {
            let base = SymbolicElement {
                degree: pair_degree,
                coeffs: (0..ring.betti(pair_degree))
                    .map(|i| {
                        if i == m {
                            MultiPoly::one(rho)
                        } else {
                            MultiPoly::zero(rho)
                        }
                    })
                    .collect(),
            };
            let top = ring.symbolic_cup(&base, &power);
            top.coeffs
                .first()
                .cloned()
                .unwrap_or_else(|| MultiPoly::zero(rho))
        })
        .collect();

    let mut matrix = PolyMatrix::zero(b, b, rho);
    for i in 0..b {
        for j in 0..b {
            let prod = ring.cup(&ring.basis_element(d, i), &ring.basis_element(d, j));
            let mut entry = MultiPoly::zero(rho);
            for (m, c) in prod.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    entry = &entry + &top_integrals[m].scale(c);
                }
            }
            matrix.set(i, j, entry);
        }
    }

    let symmetry = if d.is_multiple_of(2) {
        assert!(matrix.is_symmetric(), "level {k} pairing must be symmetric");
        Symmetry::Symmetric
    } else {
        assert!(matrix.is_skew_symmetric(), "level {k} pairing must be skew");
        Symmetry::Skew
    };

    Ok(LefschetzMatrix {
        k,
        space_degree: d,
        matrix,
        symmetry,
    })
}

/// Compute `delta_k` from the pairing matrix. A zero determinant is
/// reported as a void discriminant; on skew levels the pfaffian part is
/// attached (zero for odd-dimensional skew matrices, whose determinant
/// always vanishes).
pub fn discriminant(ring: &CohomologyRing, k: u32) -> Result<Discriminant, Error> {
    let lm = lefschetz_matrix(ring, k)?;
    let rho = ring.rho();
    let b = lm.matrix.rows();
    let raw = lm.matrix.det()?;
    let expected_degree = k as u64 * b as u64;

    let pfaffian_part = match lm.symmetry {
        Symmetry::Symmetric => None,
        Symmetry::Skew if b == 0 => None,
        Symmetry::Skew => {
            if b % 2 == 1 {
                Some(MultiPoly::zero(rho))
            } else {
                let pf = lm.matrix.pfaffian()?;
                if pf.is_zero() {
                    Some(pf)
                } else {
                    Some(pf.normalize_primitive()?.0)
                }
            }
        }
    };

    if raw.is_zero() {
        return Ok(Discriminant {
            k,
            space_dim: b,
            delta: MultiPoly::zero(rho),
            expected_degree,
            is_zero: true,
            pfaffian_part,
        });
    }
    let (delta, _scale) = raw.normalize_primitive()?;
    Ok(Discriminant {
        k,
        space_dim: b,
        delta,
        expected_degree,
        is_zero: false,
        pfaffian_part,
    })
}

/// All discriminants in level order `k = 1..=n`.
pub fn full_discriminant(ring: &CohomologyRing) -> Vec<Discriminant> {
    (1..=ring.complex_dim())
        .map(|k| discriminant(ring, k).expect("k is in range"))
        .collect()
}

/// One level of a pointwise Lefschetz check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelVerdict {
    pub k: u32,
    pub space_dim: usize,
    pub vacuous: bool,
    pub rank: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzVerdict {
    pub levels: Vec<LevelVerdict>,
    pub all_pass: bool,
}

/// Decide the Lefschetz condition at a concrete rational class `eta`:
/// level `k` passes when the evaluated pairing has full rank `b_{n-k}`,
/// and vacuously when that Betti number is zero.
pub fn check_lefschetz_at(
    ring: &CohomologyRing,
    eta: &[Rational],
) -> Result<LefschetzVerdict, Error> {
    if eta.len() != ring.rho() {
        return Err(Error::Math(exactmath::Error::PointLengthMismatch {
            got: eta.len(),
            expected: ring.rho(),
        }));
    }
    let n = ring.complex_dim();
    let mut levels = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let b = ring.betti(n - k);
        if b == 0 {
            levels.push(LevelVerdict {
                k,
                space_dim: 0,
                vacuous: true,
                rank: 0,
                pass: true,
            });
            continue;
        }
        let lm = lefschetz_matrix(ring, k)?;
        let rank = lm.matrix.rank_at(eta)?;
        levels.push(LevelVerdict {
            k,
            space_dim: b,
            vacuous: false,
            rank,
            pass: rank == b,
        });
    }
    let all_pass = levels.iter().all(|l| l.pass);
    Ok(LefschetzVerdict { levels, all_pass })
}

/// A candidate homology class with its discovered support: every level
/// whose discriminant it divides, with the exact multiplicity. Levels with
/// a void discriminant are excluded from the support and listed separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayForm {
    pub form: LinearForm,
    pub support: Vec<(u32, u32)>,
    pub void_levels: Vec<u32>,
}

impl RayForm {
    pub fn is_supported(&self) -> bool {
        !self.support.is_empty()
    }

    pub fn multiplicity_at(&self, k: u32) -> u32 {
        self.support
            .iter()
            .find(|(level, _)| *level == k)
            .map_or(0, |(_, m)| *m)
    }
}

/// Support pairs `(k, multiplicity)` of a form, plus the void levels.
type SupportAndVoids = (Vec<(u32, u32)>, Vec<u32>);

fn support_against(discs: &[Discriminant], form: &LinearForm) -> Result<SupportAndVoids, Error> {
    let mut support = Vec::new();
    let mut void_levels = Vec::new();
    for disc in discs {
        if disc.is_zero {
            void_levels.push(disc.k);
            continue;
        }
        match linear_multiplicity(&disc.delta, form)? {
            Multiplicity::Finite(0) => {}
            Multiplicity::Finite(m) => support.push((disc.k, m)),
            Multiplicity::Infinite => unreachable!("nonzero delta has finite multiplicities"),
        }
    }
    Ok((support, void_levels))
}

/// Classify one candidate class against every discriminant of the ring.
pub fn is_l_supported(ring: &CohomologyRing, alpha: &LinearForm) -> Result<RayForm, Error> {
    let form = alpha.primitive()?;
    let discs = full_discriminant(ring);
    let (support, void_levels) = support_against(&discs, &form)?;
    Ok(RayForm {
        form,
        support,
        void_levels,
    })
}

/// Search result: all supported primitive forms within the height bound,
/// plus the levels whose discriminant is identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub rays: Vec<RayForm>,
    pub void_levels: Vec<u32>,
}

/// Enumerate every primitive integer form with coefficients in
/// `[-height, height]`, deduplicated up to sign (first nonzero coefficient
/// positive), and keep the ones with nonempty support. Results are sorted
/// lexicographically descending by coefficient vector.
///
/// Candidates are first screened by evaluating each discriminant at one
/// deterministic rational point of the candidate's hyperplane: a nonzero
/// value proves non-divisibility, so only survivors reach the exact
/// multiplicity computation.
pub fn search_l_supported(ring: &CohomologyRing, height: u32) -> SearchReport {
    let discs = full_discriminant(ring);
    let void_levels: Vec<u32> = discs.iter().filter(|d| d.is_zero).map(|d| d.k).collect();
    let rho = ring.rho();
    let mut rays: Vec<RayForm> = Vec::new();
    if rho == 0 || height == 0 {
        return SearchReport { rays, void_levels };
    }

    let screens: Vec<Screen> = discs
        .iter()
        .filter(|d| !d.is_zero && d.delta.degree().unwrap_or(0) > 0)
        .map(|d| Screen::new(&d.delta))
        .collect();
    if screens.is_empty() {
        return SearchReport { rays, void_levels };
    }

    let h = height as i64;
    let mut coeffs = vec![-h; rho];
    'enumerate: loop {
        if let Some(pivot) = admissible_pivot(&coeffs) {
            if passes_screen(&screens, &coeffs, pivot) {
                let form = LinearForm::from_integers(&coeffs);
                let (support, _) =
                    support_against(&discs, &form).expect("screened candidate is well-formed");
                if !support.is_empty() {
                    rays.push(RayForm {
                        form,
                        support,
                        void_levels: void_levels.clone(),
                    });
                }
            }
        }
        let mut idx = rho;
        loop {
            if idx == 0 {
                break 'enumerate;
            }
            idx -= 1;
            if coeffs[idx] < h {
                coeffs[idx] += 1;
                for c in &mut coeffs[idx + 1..] {
                    *c = -h;
                }
                break;
            }
        }
    }
    rays.sort_by(|a, b| b.form.cmp(&a.form));
    SearchReport { rays, void_levels }
}

/// The first-nonzero-positive, content-1 representative test.
fn admissible_pivot(coeffs: &[i64]) -> Option<usize> {
    let pivot = coeffs.iter().position(|&c| c != 0)?;
    if coeffs[pivot] < 0 {
        return None;
    }
    let mut g: i64 = 0;
    for &c in coeffs {
        g = num_integer::gcd(g, c.abs());
    }
    (g == 1).then_some(pivot)
}

/// One discriminant prepared for fast exact evaluation at integer points.
struct Screen {
    exponents: Vec<Vec<u32>>,
    small: Option<Vec<i128>>,
    big: Vec<BigInt>,
}

impl Screen {
    fn new(delta: &MultiPoly) -> Screen {
        let mut exponents = Vec::with_capacity(delta.len());
        let mut big = Vec::with_capacity(delta.len());
        for (m, c) in delta.terms() {
            debug_assert!(c.is_integer(), "normalized discriminants are integral");
            exponents.push(m.exponents().to_vec());
            big.push(c.numer().clone());
        }
        let small = big.iter().map(|v| v.to_i128()).collect::<Option<Vec<_>>>();
        Screen {
            exponents,
            small,
            big,
        }
    }

    /// Exact zero test at an integer point, `None` only when the i128 fast
    /// path overflows (the caller then retries with big integers).
    fn is_zero_at_small(&self, point: &[i128]) -> Option<bool> {
        let coeffs = self.small.as_ref()?;
        let mut acc: i128 = 0;
        for (exps, c) in self.exponents.iter().zip(coeffs) {
            let mut term = *c;
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term = term.checked_mul(*x)?;
                }
            }
            acc = acc.checked_add(term)?;
        }
        Some(acc == 0)
    }

    fn is_zero_at_big(&self, point: &[i128]) -> bool {
        let mut acc = BigInt::zero();
        for (exps, c) in self.exponents.iter().zip(&self.big) {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term *= BigInt::from(*x);
                }
            }
            acc += term;
        }
        acc.is_zero()
    }
}

/// True when some discriminant vanishes at the sample point of the
/// candidate's hyperplane (a necessary condition for divisibility).
fn passes_screen(screens: &[Screen], coeffs: &[i64], pivot: usize) -> bool {
    // sample point: t_s = c_pivot * v_s for s != pivot and
    // t_pivot = -sum c_s v_s, an integer point on the hyperplane
    let c_pivot = coeffs[pivot] as i128;
    let mut point: Vec<i128> = Vec::with_capacity(coeffs.len());
    let mut pivot_value: i128 = 0;
    for (s, &c) in coeffs.iter().enumerate() {
        let aux = (s + 1) as i128;
        if s == pivot {
            point.push(0);
        } else {
            point.push(c_pivot * aux);
            pivot_value -= c as i128 * aux;
        }
    }
    point[pivot] = pivot_value;
    screens.iter().any(|s| {
        s.is_zero_at_small(&point)
            .unwrap_or_else(|| s.is_zero_at_big(&point))
    })
}

/// Per-level totals of the multiplicity count against its bound
/// `k * b_{n-k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub k: u32,
    pub sum: u64,
    pub bound: u64,
    pub ok: bool,
}

/// Sum the multiplicities of the found forms at every level and compare
/// with the degree bound.
pub fn verify_count_bound(ring: &CohomologyRing, rays: &[RayForm]) -> Vec<BoundReport> {
    let n = ring.complex_dim();
    (1..=n)
        .map(|k| {
            let sum: u64 = rays.iter().map(|r| r.multiplicity_at(k) as u64).sum();
            let bound = k as u64 * ring.betti(n - k) as u64;
            BoundReport {
                k,
                sum,
                bound,
                ok: sum <= bound,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeVerdict {
    Nonnegative,
    Nonpositive,
    Cut,
}

impl std::fmt::Display for ConeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConeVerdict::Nonnegative => write!(f, "nonnegative"),
            ConeVerdict::Nonpositive => write!(f, "nonpositive"),
            ConeVerdict::Cut => write!(f, "cut"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeCheck {
    pub values: Vec<Rational>,
    pub verdict: ConeVerdict,
}

/// Evaluate `alpha` on each cone generator. A strict sign change means the
/// hyperplane of `alpha` cuts the cone; an L-supported class on a valid
/// projective ring never cuts the nef cone.
pub fn cone_sign_check(
    generators: &[Vec<Rational>],
    alpha: &LinearForm,
) -> Result<ConeCheck, Error> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let values = generators
        .iter()
        .map(|g| alpha.eval(g))
        .collect::<Result<Vec<_>, _>>()?;
    let has_pos = values.iter().any(|v| v.is_positive());
    let has_neg = values.iter().any(|v| v.is_negative());
    let verdict = match (has_pos, has_neg) {
        (true, true) => ConeVerdict::Cut,
        (false, true) => ConeVerdict::Nonpositive,
        _ => ConeVerdict::Nonnegative,
    };
    Ok(ConeCheck { values, verdict })
}
