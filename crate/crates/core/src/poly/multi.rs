use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{OnePoly, PolyError, Var, NVARS};

/// Exponent vector over `A, B, d, x, y, z`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn abd(a: i32, b: i32, d: i32) -> Self {
        Monomial([a, b, d, 0, 0, 0])
    }

    pub fn var(v: Var, e: i32) -> Self {
        let mut m = Self::ONE;
        m.0[v.idx()] = e;
        m
    }

    #[inline]
    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.idx()]
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0) {
            *o += e;
        }
        out
    }
}

/// Sparse Laurent polynomial in `A, B, d, x, y, z` over the integers.
///
/// No zero coefficients are ever stored, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Monomial::var(v, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect() }
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        Self { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn min_exp(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    pub fn max_exp(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    /// True when no variable appears with a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, k: i32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.exp(v) == k {
                let mut m = *m;
                m.0[v.idx()] = 0;
                out.add_term(m, c.clone());
            }
        }
        out
    }

    /// Exact division by `d`; every term must carry a factor of `d`.
    pub fn exact_divide_by_d(&self) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.exp(Var::D) < 1 {
                return Err(PolyError::NotDivisibleByD(MultiPoly::term(c.clone(), *m).to_string()));
            }
            let mut m = *m;
            m.0[Var::D.idx()] -= 1;
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    /// Exact division of every coefficient by an integer.
    pub fn exact_divide_int(&self, k: &BigInt) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if !(c % k).is_zero() {
                return Err(PolyError::NotDivisible(k.to_string()));
            }
            out.add_term(*m, c / k);
        }
        Ok(out)
    }

    /// Replaces `v` by `value`. A negative power of `v` is only allowed when
    /// `value` is a monomial with coefficient ±1.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> Result<Self, PolyError> {
        let unit_inverse = value.as_unit_monomial().map(|(m, c)| {
            let mut inv = m;
            for e in inv.0.iter_mut() {
                *e = -*e;
            }
            (inv, c)
        });
        let mut powers: BTreeMap<i32, MultiPoly> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut rest = *m;
            rest.0[v.idx()] = 0;
            let factor = match powers.get(&e) {
                Some(p) => p.clone(),
                None => {
                    let p = if e >= 0 {
                        value.pow(e as u32)
                    } else {
                        let (inv, sign) =
                            unit_inverse.clone().ok_or(PolyError::NonInvertibleSubstitution(v.symbol()))?;
                        MultiPoly::term(sign, inv).pow((-e) as u32)
                    };
                    powers.insert(e, p.clone());
                    p
                }
            };
            for (fm, fc) in &factor.terms {
                out.add_term(rest.mul(fm), c * fc);
            }
        }
        Ok(out)
    }

    fn as_unit_monomial(&self) -> Option<(Monomial, BigInt)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        (c.abs().is_one()).then(|| (*m, c.clone()))
    }

    /// Permutes variables: exponent of `from[i]` moves to `to[i]`.
    pub fn rename(&self, mapping: &[(Var, Var)]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut nm = *m;
            for &(from, _) in mapping {
                nm.0[from.idx()] = 0;
            }
            for &(from, to) in mapping {
                nm.0[to.idx()] += m.exp(from);
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Swaps `A` and `B`.
    pub fn swap_ab(&self) -> Self {
        self.rename(&[(Var::A, Var::B), (Var::B, Var::A)])
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e != 0 {
                let mut nm = *m;
                nm.0[v.idx()] -= 1;
                out.add_term(nm, c * BigInt::from(e));
            }
        }
        out
    }

    /// Exact evaluation at an integer point (`values[i]` for `Var::ALL[i]`).
    pub fn eval(&self, values: &[i64; NVARS]) -> Result<BigRational, PolyError> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let x = values[v.idx()];
                if x == 0 && e < 0 {
                    return Err(PolyError::ZeroAtNegativeExponent { var: v.symbol() });
                }
                let base = BigRational::from_integer(BigInt::from(x));
                t *= if e > 0 {
                    num_traits::pow(base, e as usize)
                } else {
                    num_traits::pow(base.recip(), (-e) as usize)
                };
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluation that must land in the integers.
    pub fn eval_integer(&self, values: &[i64; NVARS]) -> Result<BigInt, PolyError> {
        let r = self.eval(values)?;
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(PolyError::NotIntegral(r.to_string()))
        }
    }

    /// Evaluates at `(A, B, d)` with the auxiliary variables set to 1.
    pub fn eval_abd(&self, a: i64, b: i64, d: i64) -> Result<BigInt, PolyError> {
        self.eval_integer(&[a, b, d, 1, 1, 1])
    }

    /// Rejects polynomials that mention `x`, `y` or `z`.
    pub fn check_bracket_vars(&self) -> Result<(), PolyError> {
        for m in self.terms.keys() {
            for v in [Var::X, Var::Y, Var::Z] {
                if m.exp(v) != 0 {
                    return Err(PolyError::UnexpectedVariable(v.symbol()));
                }
            }
        }
        Ok(())
    }

    /// The reduced bracket: `B ↦ A^-1`, `d ↦ -A^2 - A^-2`.
    pub fn reduce_single(&self) -> Result<OnePoly, PolyError> {
        self.check_bracket_vars()?;
        let loop_value = OnePoly::from_terms([(2, -1), (-2, -1)]);
        let mut powers: Vec<OnePoly> = vec![OnePoly::one()];
        let mut out = OnePoly::zero();
        for (m, c) in &self.terms {
            let k = m.exp(Var::D);
            if k < 0 {
                return Err(PolyError::UnexpectedVariable('d'));
            }
            let k = k as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * &loop_value;
                powers.push(next);
            }
            let shift = (m.exp(Var::A) - m.exp(Var::B)) as i64;
            out.add_scaled_shift(&powers[k], c, shift);
        }
        Ok(out)
    }

    /// The one-variable simplification `[G](A, 1, A)`.
    pub fn one_variable(&self) -> Result<Self, PolyError> {
        self.check_bracket_vars()?;
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial::abd(m.exp(Var::A) + m.exp(Var::D), 0, 0), c.clone());
        }
        Ok(out)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl FromIterator<(Monomial, BigInt)> for MultiPoly {
    fn from_iter<I: IntoIterator<Item = (Monomial, BigInt)>>(iter: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn binomial_square() {
        let q = p("A*d + B").pow(2);
        assert_eq!(q, p("A^2*d^2 + 2*A*B*d + B^2"));
        assert_eq!(q.to_string(), "A^2*d^2 + 2*A*B*d + B^2");
    }

    #[test]
    fn cancellation_gives_empty_map() {
        let q = p("3*A^-1*B - d + 7");
        assert!((&q + &(-&q)).is_zero());
        assert_eq!((&q - &q).len(), 0);
    }

    #[test]
    fn divide_by_d() {
        assert_eq!(p("2*A*B*d + B^2*d^2").exact_divide_by_d().unwrap(), p("2*A*B + B^2*d"));
        let k2 = &p("A + B*d").pow(2) - &p("A^2");
        assert_eq!(k2.exact_divide_by_d().unwrap(), p("2*A*B + B^2*d"));
        assert!(matches!(p("A + B").exact_divide_by_d(), Err(PolyError::NotDivisibleByD(_))));
    }

    #[test]
    fn reduce_examples() {
        for n in 0..5u32 {
            let en = p("A*d + B").pow(n);
            let expected = OnePoly::from_terms([(3 * n as i64, if n % 2 == 0 { 1 } else { -1 })]);
            assert_eq!(en.reduce_single().unwrap(), expected);
        }
        assert_eq!(p("A + B*d").reduce_single().unwrap().to_string(), "-A^-3");
        assert_eq!(p("A^2 + 2*A*B + B^2*d").reduce_single().unwrap().to_string(), "A^2 + 1 - A^-4");
    }

    #[test]
    fn substitution_with_inverse() {
        let q = p("A^-2*B + d");
        let r = q.substitute(Var::A, &p("-B")).unwrap();
        assert_eq!(r, p("B^-1 + d"));
        assert!(matches!(q.substitute(Var::A, &p("A + 1")), Err(PolyError::NonInvertibleSubstitution('A'))));
    }

    #[test]
    fn derivative_and_evaluation() {
        let k2 = p("A^2 + 2*A*B + B^2*d");
        assert_eq!(k2.eval_abd(1, 1, 1).unwrap(), BigInt::from(4));
        assert!(p("5").derivative(Var::A).is_zero());
        assert!(matches!(p("A^-1").eval_abd(0, 1, 1), Err(PolyError::ZeroAtNegativeExponent { var: 'A' })));
        assert!(matches!(p("A^-1").eval_abd(2, 1, 1), Err(PolyError::NotIntegral(_))));
        assert_eq!(p("A^-1").eval_abd(-1, 1, 1).unwrap(), BigInt::from(-1));
        let e2 = p("A*d + B").pow(2).reduce_single().unwrap();
        assert_eq!(e2.derivative().eval_integer(1).unwrap(), BigInt::from(6));
    }

    #[test]
    fn swap_and_one_variable() {
        let q = p("A^2*d + A*B");
        assert_eq!(q.swap_ab(), p("B^2*d + A*B"));
        assert_eq!(q.one_variable().unwrap(), p("A^3 + A"));
    }
}
