use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Error, MultiPoly, Rational};

/// A rational linear form `c_0 t_0 + ... + c_{r-1} t_{r-1}` on `H^2`;
/// under the intersection pairing these are the homology classes that may
/// divide a discriminant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(Vec<Rational>);

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        LinearForm(coeffs)
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        LinearForm(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Primitive normal form: integer coefficients with content 1 and the
    /// first nonzero coefficient positive.
    pub fn primitive(&self) -> Result<LinearForm, Error> {
        if self.is_zero() {
            return Err(Error::ZeroLinearForm);
        }
        let mut lcm = BigInt::one();
        for c in &self.0 {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| c.numer() * &lcm / c.denom())
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        let flip = ints.iter().find(|v| !v.is_zero()).unwrap().is_negative();
        Ok(LinearForm(
            ints.into_iter()
                .map(|v| {
                    let v = v / &content;
                    Rational::from_integer(if flip { -v } else { v })
                })
                .collect(),
        ))
    }

    /// Pairing with a vector in `H^2` coordinates.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, Error> {
        if point.len() != self.0.len() {
            return Err(Error::PointLengthMismatch {
                got: point.len(),
                expected: self.0.len(),
            });
        }
        Ok(self
            .0
            .iter()
            .zip(point)
            .map(|(c, x)| c * x)
            .fold(Rational::zero(), |a, b| a + b))
    }

    /// The form as a degree-1 polynomial.
    pub fn to_poly(&self) -> MultiPoly {
        let nv = self.0.len();
        MultiPoly::from_terms(
            nv,
            self.0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (super::Monomial::var(nv, i), c.clone())),
        )
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Exact power of a linear factor in a polynomial. The zero polynomial is
/// divisible by every power, reported as [`Multiplicity::Infinite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u32> {
        match self {
            Multiplicity::Finite(m) => Some(m),
            Multiplicity::Infinite => None,
        }
    }

    pub fn at_least(self, bound: u32) -> bool {
        match self {
            Multiplicity::Finite(m) => m >= bound,
            Multiplicity::Infinite => true,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

/// Largest `m >= 0` such that `l^m` divides the homogeneous polynomial `p`.
///
/// Divisibility is decided by substitution: with pivot variable `t_j`
/// (the first with a nonzero coefficient in `l`), a homogeneous `p` is
/// divisible by `l` exactly when substituting the solution of `l = 0` for
/// `t_j` annihilates `p`. The quotient is then taken by exact division and
/// the test repeats.
pub fn linear_multiplicity(p: &MultiPoly, l: &LinearForm) -> Result<Multiplicity, Error> {
    if l.is_zero() || l.is_empty() {
        return Err(Error::ZeroLinearForm);
    }
    if l.len() != p.num_vars() {
        return Err(Error::PointLengthMismatch {
            got: l.len(),
            expected: p.num_vars(),
        });
    }
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if p.is_zero() {
        return Ok(Multiplicity::Infinite);
    }

    let pivot = l.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let pivot_coeff = &l.coeffs()[pivot];
    // t_pivot = -(1/c_pivot) * sum_{s != pivot} c_s t_s on the hyperplane l = 0
    let nv = p.num_vars();
    let mut solution = MultiPoly::zero(nv);
    for (s, c) in l.coeffs().iter().enumerate() {
        if s != pivot && !c.is_zero() {
            solution = &solution + &MultiPoly::var(nv, s).scale(&(-(c / pivot_coeff)));
        }
    }
    let divisor = l.to_poly();

    let mut current = p.clone();
    let mut mult = 0u32;
    loop {
        if !current.substitute_var(pivot, &solution).is_zero() {
            return Ok(Multiplicity::Finite(mult));
        }
        current = current
            .div_exact(&divisor)
            .expect("substitution test certifies divisibility");
        mult += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    fn p(s: &str, nv: usize) -> MultiPoly {
        MultiPoly::parse(s, nv).unwrap()
    }

    #[test]
    fn factor_of_difference_of_squares() {
        let poly = p("t0^2 - t1^2", 2);
        let l = LinearForm::from_integers(&[1, 1]);
        assert_eq!(linear_multiplicity(&poly, &l), Ok(Multiplicity::Finite(1)));
    }

    #[test]
    fn monomial_power() {
        let poly = p("t0^2", 2);
        let l = LinearForm::from_integers(&[1, 0]);
        assert_eq!(linear_multiplicity(&poly, &l), Ok(Multiplicity::Finite(2)));
    }

    #[test]
    fn non_divisor_has_multiplicity_zero() {
        let poly = p("t0^2 - t1^2 - t2^2", 3);
        let l = LinearForm::from_integers(&[1, 1, 0]);
        assert_eq!(linear_multiplicity(&poly, &l), Ok(Multiplicity::Finite(0)));
    }

    #[test]
    fn zero_polynomial_yields_infinity() {
        let l = LinearForm::from_integers(&[1, 2]);
        assert_eq!(
            linear_multiplicity(&MultiPoly::zero(2), &l),
            Ok(Multiplicity::Infinite)
        );
    }

    #[test]
    fn error_paths() {
        let l0 = LinearForm::from_integers(&[0, 0]);
        assert_eq!(
            linear_multiplicity(&p("t0", 2), &l0),
            Err(Error::ZeroLinearForm)
        );
        let l = LinearForm::from_integers(&[1, 1]);
        assert_eq!(
            linear_multiplicity(&p("t0^2 + t1", 2), &l),
            Err(Error::NotHomogeneous)
        );
    }

    #[test]
    fn rescaling_the_form_does_not_change_multiplicity() {
        let poly = p("t0^3 + t0^2*t1", 2); // t0^2 * (t0 + t1)
        let l = LinearForm::from_integers(&[1, 0]);
        let scaled = LinearForm::new(vec![ratio(-7, 3), rat(0)]);
        assert_eq!(
            linear_multiplicity(&poly, &l).unwrap(),
            linear_multiplicity(&poly, &scaled).unwrap()
        );
        assert_eq!(linear_multiplicity(&poly, &l), Ok(Multiplicity::Finite(2)));
    }

    #[test]
    fn primitive_normal_form() {
        let l = LinearForm::new(vec![ratio(-2, 3), ratio(4, 3), rat(0)]);
        let prim = l.primitive().unwrap();
        assert_eq!(prim, LinearForm::from_integers(&[1, -2, 0]));
        assert!(LinearForm::from_integers(&[0]).primitive().is_err());
    }
}
