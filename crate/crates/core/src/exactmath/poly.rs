use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Error, Rational};

/// Exponent vector of a monomial, ordered graded-lexicographically:
/// higher total degree wins, ties break on the exponent vector itself
/// (so `t0` beats `t1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn constant(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exponentwise difference, `None` when `other` does not divide `self`.
    fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate polynomial over `Q` in variables `t0 .. t{num_vars-1}`,
/// stored as a map from exponent vector to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::constant(num_vars), c);
        p
    }

    /// The variable `t{index}`.
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index out of range");
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::var(num_vars, index), Rational::one());
        p
    }

    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(num_vars);
        for (m, c) in terms {
            assert_eq!(m.exponents().len(), num_vars, "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Common degree of all terms; `None` if the polynomial is inhomogeneous
    /// or zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Zero counts as homogeneous (of every degree).
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, Error> {
        if self.num_vars != other.num_vars {
            return Err(Error::MismatchedVariables(self.num_vars, other.num_vars));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, Error> {
        if self.num_vars != other.num_vars {
            return Err(Error::MismatchedVariables(self.num_vars, other.num_vars));
        }
        let mut out = MultiPoly::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.num_vars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, Error> {
        if point.len() != self.num_vars {
            return Err(Error::PointLengthMismatch {
                got: point.len(),
                expected: self.num_vars,
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    v *= x;
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Substitute the polynomial `sub` for the variable `t{index}`.
    pub fn substitute_var(&self, index: usize, sub: &MultiPoly) -> MultiPoly {
        assert!(index < self.num_vars);
        assert_eq!(sub.num_vars, self.num_vars);
        let max_e = self
            .terms
            .keys()
            .map(|m| m.exponents()[index])
            .max()
            .unwrap_or(0);
        let mut powers = Vec::with_capacity(max_e as usize + 1);
        powers.push(MultiPoly::one(self.num_vars));
        for e in 1..=max_e {
            powers.push(&powers[(e - 1) as usize] * sub);
        }
        let mut out = MultiPoly::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            let mut rest = m.exponents().to_vec();
            rest[index] = 0;
            let mut part = MultiPoly::zero(self.num_vars);
            part.add_term(Monomial::new(rest), c.clone());
            out = &out + &(&part * &powers[e as usize]);
        }
        out
    }

    /// Substitute `t_i -> image[i]` simultaneously for all variables. The
    /// images may live in a polynomial ring with a different variable count.
    pub fn substitute_all(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.num_vars);
        let target_vars = images
            .first()
            .map(|p| p.num_vars())
            .unwrap_or(self.num_vars);
        let mut out = MultiPoly::zero(target_vars);
        for (m, c) in &self.terms {
            let mut part = MultiPoly::constant(target_vars, c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                part = &part * &img.pow(e);
            }
            out = &out + &part;
        }
        out
    }

    /// Exact division: `Some(q)` with `self == q * divisor`, else `None`.
    ///
    /// Division by leading terms in graded-lex order is a complete
    /// divisibility test over an integral domain: if at any step the leading
    /// monomial of the remainder is not divisible by the divisor's, the
    /// remainder (hence `self`) is not a multiple of `divisor`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.num_vars, divisor.num_vars);
        let (dm, dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.num_vars);
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().expect("nonzero remainder has a term");
            let qm = rm.try_div(dm)?;
            let qc = rc / dc;
            let mut mono = MultiPoly::zero(self.num_vars);
            mono.add_term(qm.clone(), qc.clone());
            rem = &rem - &(&mono * divisor);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scale to integer coefficients with content 1 and positive leading
    /// coefficient (leading in graded-lex order). Returns the primitive
    /// polynomial together with the positive rational `scale` such that
    /// `self = ±scale * primitive`.
    pub fn normalize_primitive(&self) -> Result<(MultiPoly, Rational), Error> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * &denom_lcm / c.denom();
            content = content.gcd(&scaled);
        }
        // scale = content / denom_lcm, so self = ±scale * primitive
        let factor = Rational::new(denom_lcm.clone(), content.clone());
        let mut prim = self.scale(&factor);
        if prim.leading().expect("nonzero").1.is_negative() {
            prim = -&prim;
        }
        Ok((prim, Rational::new(content, denom_lcm)))
    }

    /// Parse the canonical text form, e.g. `"t0^2 - t1^2"` or `"2*t0*t1"`.
    pub fn parse(input: &str, num_vars: usize) -> Result<MultiPoly, Error> {
        Parser {
            chars: input.chars().peekable(),
            num_vars,
        }
        .parse()
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("mismatched variable counts")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("mismatched variable counts")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Monomials in graded-lex descending order: `t0^2 - t1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.total_degree() == 0 {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("t{v}")),
                    _ => factors.push(format!("t{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    num_vars: usize,
}

impl Parser<'_> {
    fn parse(mut self) -> Result<MultiPoly, Error> {
        let mut out = MultiPoly::zero(self.num_vars);
        self.skip_ws();
        let mut sign = match self.chars.peek() {
            Some('-') => {
                self.chars.next();
                -1
            }
            Some('+') => {
                self.chars.next();
                1
            }
            Some(_) => 1,
            None => return Err(Error::Parse("empty input".into())),
        };
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if sign < 0 { -c } else { c });
            self.skip_ws();
            match self.chars.next() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(ch) => return Err(Error::Parse(format!("unexpected character '{ch}'"))),
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, Rational), Error> {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; self.num_vars];
        let mut saw_factor = false;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(ch) if ch.is_ascii_digit() => {
                    coeff *= self.number()?;
                    saw_factor = true;
                }
                Some('t') => {
                    self.chars.next();
                    let idx = self.integer()? as usize;
                    if idx >= self.num_vars {
                        return Err(Error::Parse(format!(
                            "variable t{idx} out of range (num_vars = {})",
                            self.num_vars
                        )));
                    }
                    let mut e = 1u32;
                    if let Some('^') = self.chars.peek() {
                        self.chars.next();
                        e = self.integer()? as u32;
                    }
                    exps[idx] += e;
                    saw_factor = true;
                }
                _ => break,
            }
            self.skip_ws();
            if let Some('*') = self.chars.peek() {
                self.chars.next();
            } else {
                break;
            }
        }
        if !saw_factor {
            return Err(Error::Parse("expected a term".into()));
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn number(&mut self) -> Result<Rational, Error> {
        let numer = self.integer()?;
        if let Some('/') = self.chars.peek() {
            self.chars.next();
            let denom = self.integer()?;
            if denom == 0 {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rational::new(numer.into(), denom.into()))
        } else {
            Ok(Rational::from_integer(numer.into()))
        }
    }

    fn integer(&mut self) -> Result<u64, Error> {
        let mut digits = String::new();
        while let Some(ch) = self.chars.peek() {
            if ch.is_ascii_digit() {
                digits.push(*ch);
                self.chars.next();
            } else {
                break;
            }
        }
        digits
            .parse()
            .map_err(|_| Error::Parse(format!("expected an integer, got '{digits}'")))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(ch) if ch.is_whitespace()) {
            self.chars.next();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    fn t(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    #[test]
    fn monomial_product() {
        let p = &t(0) * &t(1);
        assert_eq!(p.to_string(), "t0*t1");
    }

    #[test]
    fn difference_of_squares() {
        let sum = &t(0) + &t(1);
        let diff = &t(0) - &t(1);
        let p = &sum * &diff;
        assert_eq!(p, MultiPoly::parse("t0^2 - t1^2", 2).unwrap());
    }

    #[test]
    fn additive_identity() {
        let p = MultiPoly::parse("3*t0^2 + t1", 2).unwrap();
        assert_eq!(&p + &MultiPoly::zero(2), p);
    }

    #[test]
    fn mismatched_vars_is_an_error() {
        let a = MultiPoly::var(2, 0);
        let b = MultiPoly::var(3, 0);
        assert_eq!(a.checked_add(&b), Err(Error::MismatchedVariables(2, 3)));
        assert_eq!(a.checked_mul(&b), Err(Error::MismatchedVariables(2, 3)));
    }

    #[test]
    fn homogeneity_tracking() {
        let p = MultiPoly::parse("t0^2 - t1^2", 2).unwrap();
        assert_eq!(p.homogeneous_degree(), Some(2));
        let q = MultiPoly::parse("t0^2 + t1", 2).unwrap();
        assert_eq!(q.homogeneous_degree(), None);
        assert!(MultiPoly::zero(2).is_homogeneous());
    }

    #[test]
    fn graded_lex_leading_term() {
        let p = MultiPoly::parse("t1^2 + t0*t1 + t0", 2).unwrap();
        let (m, _) = p.leading().unwrap();
        // degree 2 beats degree 1; t0*t1 beats t1^2 lexicographically
        assert_eq!(m.exponents(), &[1, 1]);
    }

    #[test]
    fn display_descending_and_signs() {
        let p = MultiPoly::parse("-t0^2 + 2*t1^2 - 1/2", 2).unwrap();
        assert_eq!(p.to_string(), "-t0^2 + 2*t1^2 - 1/2");
        assert_eq!(MultiPoly::zero(1).to_string(), "0");
        assert_eq!(MultiPoly::one(0).to_string(), "1");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["t0^2 - t1^2", "2*t0*t1", "t0^3 + 3/2*t0*t1^2 - 7", "0"] {
            let p = MultiPoly::parse(s, 2).unwrap();
            assert_eq!(MultiPoly::parse(&p.to_string(), 2).unwrap(), p);
        }
    }

    #[test]
    fn eval_substitute_consistency() {
        let p = MultiPoly::parse("t0^2*t1 - 3*t1^2 + t0", 2).unwrap();
        let point = [ratio(3, 2), rat(-2)];
        let direct = p.eval(&point).unwrap();
        let sub = p
            .substitute_var(0, &MultiPoly::constant(2, point[0].clone()))
            .substitute_var(1, &MultiPoly::constant(2, point[1].clone()));
        assert_eq!(sub.coeff(&Monomial::constant(2)), direct);
    }

    #[test]
    fn exact_division() {
        let p = MultiPoly::parse("t0^2 - t1^2", 2).unwrap();
        let l = MultiPoly::parse("t0 + t1", 2).unwrap();
        let q = p.div_exact(&l).unwrap();
        assert_eq!(q, MultiPoly::parse("t0 - t1", 2).unwrap());
        let r = MultiPoly::parse("t0^2 + t1^2", 2).unwrap();
        assert!(r.div_exact(&l).is_none());
    }

    #[test]
    fn normalize_examples() {
        let cases = [
            ("2*t0*t1", "t0*t1", rat(2)),
            ("-t0^2 + t1^2", "t0^2 - t1^2", rat(1)),
            ("1/2*t0", "t0", ratio(1, 2)),
        ];
        for (input, expect, scale) in cases {
            let p = MultiPoly::parse(input, 2).unwrap();
            let (prim, s) = p.normalize_primitive().unwrap();
            assert_eq!(prim, MultiPoly::parse(expect, 2).unwrap(), "{input}");
            assert_eq!(s, scale, "{input}");
        }
        assert_eq!(
            MultiPoly::zero(2).normalize_primitive(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn substitute_all_changes_variable_count() {
        let p = MultiPoly::parse("t0*t1", 2).unwrap();
        let images = [
            MultiPoly::var(3, 2),
            MultiPoly::parse("t0 - t1", 3).unwrap(),
        ];
        let q = p.substitute_all(&images);
        assert_eq!(q, MultiPoly::parse("t0*t2 - t1*t2", 3).unwrap());
    }
}
