use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::PolyError;

/// Laurent polynomial in one variable, integer exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn mul(&self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Laurent polynomial in `A`: the home of the reduced bracket `<G>`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct OnePoly(Laurent);

/// Laurent polynomial in `t^(1/4)`; exponents are counted in quarters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QuarterPoly(Laurent);

macro_rules! uni_common {
    ($t:ident) => {
        impl $t {
            pub fn zero() -> Self {
                Self::default()
            }

            pub fn one() -> Self {
                Self::from_terms([(0, 1)])
            }

            pub fn from_terms<I, C>(terms: I) -> Self
            where
                I: IntoIterator<Item = (i64, C)>,
                C: Into<BigInt>,
            {
                let mut l = Laurent::default();
                for (e, c) in terms {
                    l.add_term(e, c.into());
                }
                Self(l)
            }

            pub fn is_zero(&self) -> bool {
                self.0.terms.is_empty()
            }

            pub fn is_one(&self) -> bool {
                *self == Self::one()
            }

            pub fn add_term(&mut self, e: i64, c: BigInt) {
                self.0.add_term(e, c);
            }

            /// Terms in descending exponent order.
            pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
                self.0.terms.iter().rev().map(|(e, c)| (*e, c))
            }

            pub fn coefficient(&self, e: i64) -> BigInt {
                self.0.terms.get(&e).cloned().unwrap_or_default()
            }

            pub fn min_exp(&self) -> Option<i64> {
                self.0.terms.keys().next().copied()
            }

            pub fn max_exp(&self) -> Option<i64> {
                self.0.terms.keys().next_back().copied()
            }

            /// `self += c * X^shift * other`.
            pub fn add_scaled_shift(&mut self, other: &Self, c: &BigInt, shift: i64) {
                for (e, k) in &other.0.terms {
                    self.0.add_term(e + shift, k * c);
                }
            }

            pub fn pow(&self, e: u32) -> Self {
                let mut out = Self::one();
                for _ in 0..e {
                    out = &out * self;
                }
                out
            }
        }

        impl Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $t(self.0.mul(&rhs.0))
            }
        }

        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                let mut out = self.clone();
                for (e, c) in &rhs.0.terms {
                    out.0.add_term(*e, c.clone());
                }
                out
            }
        }

        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                self + &(-rhs)
            }
        }

        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t(Laurent { terms: self.0.terms.iter().map(|(e, c)| (*e, -c)).collect() })
            }
        }
    };
}

uni_common!(OnePoly);
uni_common!(QuarterPoly);

impl OnePoly {
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.0.terms {
            out.add_term(e - 1, c * BigInt::from(*e));
        }
        out
    }

    pub fn eval(&self, a: i64) -> Result<BigRational, PolyError> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.0.terms {
            if a == 0 && *e < 0 {
                return Err(PolyError::ZeroAtNegativeExponent { var: 'A' });
            }
            let base = BigRational::from_integer(BigInt::from(a));
            let p =
                if *e >= 0 { num_traits::pow(base, *e as usize) } else { num_traits::pow(base.recip(), (-e) as usize) };
            acc += p * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    pub fn eval_integer(&self, a: i64) -> Result<BigInt, PolyError> {
        let r = self.eval(a)?;
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(PolyError::NotIntegral(r.to_string()))
        }
    }

    /// `V(t) = (-1)^n t^((3n - 6l)/4) <G>(t^(-1/4))`.
    ///
    /// Fails when a resulting exponent is not a multiple of one half, which
    /// cannot happen for a genuine reduced bracket.
    pub fn to_jones(&self, n: usize, loops: usize) -> Result<QuarterPoly, PolyError> {
        let shift = 3 * n as i64 - 6 * loops as i64;
        let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        let mut out = QuarterPoly::zero();
        for (e, c) in &self.0.terms {
            let q = shift - e;
            if q.rem_euclid(2) != 0 {
                return Err(PolyError::HalfIntegrality(q));
            }
            out.add_term(q, c * &sign);
        }
        Ok(out)
    }
}

impl QuarterPoly {
    /// `V(1)`, taking `1^(1/4) = 1`.
    pub fn value_at_one(&self) -> BigInt {
        self.0.terms.values().sum()
    }

    /// `4 V'(1)`, i.e. `Σ c·q` over terms `c t^(q/4)`.
    pub fn derivative_at_one_times_four(&self) -> BigInt {
        self.0.terms.iter().map(|(e, c)| c * BigInt::from(*e)).sum()
    }

    /// True when every exponent is a multiple of `t^(1/2)`.
    pub fn is_half_integral(&self) -> bool {
        self.0.terms.keys().all(|e| e.rem_euclid(2) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jones_of_edgeless_is_one() {
        for n in 0..6usize {
            let red = OnePoly::from_terms([(3 * n as i64, if n % 2 == 0 { 1 } else { -1 })]);
            assert!(red.to_jones(n, 0).unwrap().is_one());
        }
    }

    #[test]
    fn jones_of_p2() {
        // <P_2> = <K_2> = A^2 + 1 - A^-4
        let red = OnePoly::from_terms([(2, 1), (0, 1), (-4, -1)]);
        let v = red.to_jones(2, 0).unwrap();
        assert_eq!(v.to_string(), "-t^(5/2) + t^(3/2) + t");
        assert_eq!(v.value_at_one(), BigInt::one());
        assert!(v.derivative_at_one_times_four().is_zero());
    }

    #[test]
    fn jones_of_k3() {
        let red = OnePoly::from_terms([(-7, 1), (-3, -1), (5, -1)]);
        assert_eq!(red.to_jones(3, 0).unwrap().to_string(), "-t^4 + t^3 + t");
    }

    #[test]
    fn half_integrality_violation() {
        let red = OnePoly::from_terms([(1, 1)]);
        assert_eq!(red.to_jones(2, 0), Err(PolyError::HalfIntegrality(5)));
    }
}
