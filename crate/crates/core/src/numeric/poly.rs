use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{rat_from, Rational};

/// Univariate polynomial with rational coefficients, stored in ascending
/// degree. The zero polynomial is the empty coefficient vector; otherwise the
/// leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(rat_from(1))
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Poly::new(vec![rat_from(0), rat_from(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Constant value if the polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(rat_from(0)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat_from(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_from(i as i64))
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Substitutes x -> x + shift (Taylor shift); handy for tests.
    pub fn compose_shift(&self, shift: &Rational) -> Poly {
        // Horner on (x + shift)
        let mut acc = Poly::zero();
        let xs = Poly::new(vec![shift.clone(), rat_from(1)]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &xs) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg(rem) < deg(divisor). Panics only on division by the zero
    /// polynomial, which callers must rule out.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let ddeg = divisor.coeffs.len() - 1;
        let dlead = divisor.coeffs.last().unwrap().clone();
        if rem.len() <= ddeg {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![rat_from(0); rem.len() - ddeg];
        while rem.len() > ddeg && !rem.is_empty() {
            let rdeg = rem.len() - 1;
            let factor = rem.last().unwrap() / &dlead;
            if !factor.is_zero() {
                quot[rdeg - ddeg] = factor.clone();
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    let idx = rdeg - ddeg + i;
                    rem[idx] = &rem[idx] - &(dc * &factor);
                }
            }
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= ddeg {
                break;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales so the leading coefficient is 1 (zero polynomial unchanged).
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = rat_from(1) / lc;
                self.scale(&inv)
            }
        }
    }

    /// Square-free part p / gcd(p, p'), monic.
    pub fn square_free_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.monic();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Divides out a known rational root once. Panics if `root` is not a root.
    pub fn deflate(&self, root: &Rational) -> Poly {
        let divisor = Poly::new(vec![-root.clone(), rat_from(1)]);
        let (q, r) = self.div_rem(&divisor);
        assert!(r.is_zero(), "deflate called with a non-root");
        q
    }

    /// Sign of the polynomial at a rational point: -1, 0, or 1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// A bound B such that all real roots lie in (-B, B) (Cauchy bound).
    pub fn root_bound(&self) -> Rational {
        match self.leading_coeff() {
            None => rat_from(1),
            Some(lc) => {
                let lc_abs = lc.abs();
                let mut max = rat_from(0);
                for c in &self.coeffs[..self.coeffs.len() - 1] {
                    let q = c.abs() / &lc_abs;
                    if q > max {
                        max = q;
                    }
                }
                max + rat_from(1)
            }
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let unit_coeff = mag.is_one();
            match i {
                0 => write!(f, "{}", mag)?,
                1 => {
                    if unit_coeff {
                        write!(f, "x")?;
                    } else {
                        write!(f, "{}*x", mag)?;
                    }
                }
                _ => {
                    if unit_coeff {
                        write!(f, "x^{}", i)?;
                    } else {
                        write!(f, "{}*x^{}", mag, i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| rat_from(0));
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(|| rat_from(0));
            out.push(a + b);
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![rat_from(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| rat_from(c)).collect())
    }

    #[test]
    fn normalization_strips_leading_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = p(&[1, 1]); // 1 + x
        let b = p(&[-1, 1]); // -1 + x
        assert_eq!(&a * &b, p(&[-1, 0, 1])); // x^2 - 1
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!((&a * &b).eval(&rat_from(3)), rat_from(8));
        assert_eq!(p(&[-1, 0, 1]).derivative(), p(&[0, 2]));
    }

    #[test]
    fn division_and_gcd() {
        let prod = &p(&[-1, 1]) * &p(&[-2, 1]); // (x-1)(x-2)
        let (q, r) = prod.div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_zero());

        let a = &p(&[-1, 1]) * &p(&[-2, 1]);
        let b = &p(&[-1, 1]) * &p(&[-3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn square_free_part_drops_multiplicity() {
        let dbl = &p(&[-1, 1]) * &p(&[-1, 1]); // (x-1)^2
        assert_eq!(dbl.square_free_part(), p(&[-1, 1]));
        let mixed = &dbl * &p(&[-2, 1]);
        assert_eq!(mixed.square_free_part(), &p(&[-1, 1]) * &p(&[-2, 1]));
    }

    #[test]
    fn display_round_readable() {
        assert_eq!(p(&[0, -1, 2]).to_string(), "2*x^2 - x");
        assert_eq!(Poly::constant(rat(1, 2)).to_string(), "1/2");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
