//! Closed forms for complete graphs, lollipops and paths.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;

use super::{state_sum_bracket, BracketError};
use crate::graph::{Family, LoopedGraph};
use crate::poly::{Monomial, MultiPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// `[K_n] = ((A + Bd)^n - A^n)/d + (A^n d if n odd, A^n if n even)`.
    Complete,
    /// `[L_n] = (A - A⁻¹B²)^n + A⁻¹B Σ_{i<n} (A - A⁻¹B²)^i [P_{n-i}]`.
    Lollipop,
    /// The radical-free binomial-sum expression for `[P_n]`.
    PathSum,
    /// The four-term linear recurrence for `[P_n]`, seeded with `n = 0..3`.
    PathRecurrence,
}

impl ClosedForm {
    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::Complete => "K_n",
            ClosedForm::Lollipop => "L_n",
            ClosedForm::PathSum => "P_n_sum",
            ClosedForm::PathRecurrence => "P_n_recurrence",
        }
    }
}

impl FromStr for ClosedForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "K_n" | "K" => Ok(ClosedForm::Complete),
            "L_n" | "L" => Ok(ClosedForm::Lollipop),
            "P_n_sum" => Ok(ClosedForm::PathSum),
            "P_n_recurrence" => Ok(ClosedForm::PathRecurrence),
            _ => Err(format!("unknown closed form `{s}`")),
        }
    }
}

fn mono(c: i64, a: i32, b: i32, d: i32) -> MultiPoly {
    MultiPoly::term(c, Monomial::abd(a, b, d))
}

pub fn closed_form(kind: ClosedForm, n: usize) -> Result<MultiPoly, BracketError> {
    match kind {
        ClosedForm::Complete => complete(n),
        ClosedForm::Lollipop => lollipop(n),
        ClosedForm::PathSum => path_sum(n),
        ClosedForm::PathRecurrence => path_recurrence(n),
    }
}

fn complete(n: usize) -> Result<MultiPoly, BracketError> {
    let n32 = n as u32;
    let a_plus_bd = mono(1, 1, 0, 0) + mono(1, 0, 1, 1);
    let an = mono(1, n as i32, 0, 0);
    let quotient = (&a_plus_bd.pow(n32) - &an).exact_divide_by_d()?;
    let tail = if n % 2 == 1 { mono(1, n as i32, 0, 1) } else { an };
    Ok(quotient + tail)
}

fn lollipop(n: usize) -> Result<MultiPoly, BracketError> {
    if n == 0 {
        return Err(BracketError::InvalidN { kind: "L_n", n });
    }
    let loop_coeff = mono(1, 1, 0, 0) - mono(1, -1, 2, 0);
    let mut sum = MultiPoly::zero();
    let mut power = MultiPoly::one();
    for i in 0..n {
        sum += &(&power * &path_sum(n - i)?);
        power = &power * &loop_coeff;
    }
    // `power` is now (A - A⁻¹B²)^n
    Ok(power + &mono(1, -1, 1, 0) * &sum)
}

/// `3·2^n [P_n]` assembled term by term, then divided exactly.
fn path_sum(n: usize) -> Result<MultiPoly, BracketError> {
    let n32 = n as u32;
    let d_minus_1 = mono(1, 0, 0, 1) - MultiPoly::one();
    let d_plus_2 = mono(1, 0, 0, 1) + MultiPoly::constant(2);
    let disc = mono(4, 2, 0, 0) - mono(3, 0, 2, 0);
    let minus_b = mono(-1, 0, 1, 0);
    let a_plus_b = mono(1, 1, 0, 0) + mono(1, 0, 1, 0);
    let two_n = BigInt::from(2u32).pow(n32);

    let mut total = (&d_plus_2 * &a_plus_b.pow(n32)).scale(&two_n);
    if n.is_multiple_of(2) {
        total -= &(&d_minus_1 * &disc.pow(n32 / 2));
    }
    let mut odd = MultiPoly::zero();
    let mut even = MultiPoly::zero();
    if n >= 1 {
        for j in 0..=(n - 1) / 2 {
            let dj = disc.pow(j as u32);
            let c_odd = BigInt::from(binomial(n as u64, 2 * j as u64 + 1));
            let c_even = BigInt::from(binomial(n as u64, 2 * j as u64));
            odd += &(&dj * &minus_b.pow((n - 2 * j - 1) as u32)).scale(&c_odd);
            even += &(&dj * &minus_b.pow((n - 2 * j) as u32)).scale(&(BigInt::from(3) * c_odd - c_even));
        }
    }
    // 3·2^n · (d-1)/(3·2^{n-2}) · A · Σ = 4 (d-1) A Σ
    total += &(&(&d_minus_1 * &mono(4, 1, 0, 0)) * &odd);
    total += &(&d_minus_1 * &even);
    Ok(total.exact_divide_int(&(BigInt::from(3) * two_n))?)
}

fn path_recurrence(n: usize) -> Result<MultiPoly, BracketError> {
    let mut seq: Vec<MultiPoly> = (0..4.min(n + 1))
        .map(|k| state_sum_bracket(&LoopedGraph::family(Family::Path, k).expect("small path")))
        .collect::<Result<_, _>>()?;
    let c1 = mono(1, -1, 2, 0);
    let c2 = &(mono(1, 1, 0, 0) + mono(1, 0, 1, 0)) * &(mono(2, 1, 0, 0) - mono(1, 0, 1, 0));
    let loop_coeff = mono(1, 1, 0, 0) - mono(1, -1, 2, 0);
    let c4 = &(mono(1, 2, 0, 0) + mono(1, 1, 1, 0)) * &loop_coeff.pow(2);
    for k in 4..=n {
        let next = &c1 * &seq[k - 1] + &c2 * &seq[k - 2] - &c4 * &seq[k - 4];
        seq.push(next);
    }
    Ok(seq.swap_remove(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_two() {
        assert_eq!(closed_form(ClosedForm::Complete, 2).unwrap(), "A^2 + 2*A*B + B^2*d".parse().unwrap());
        assert_eq!(closed_form(ClosedForm::Complete, 0).unwrap(), MultiPoly::one());
        assert_eq!(closed_form(ClosedForm::Complete, 1).unwrap(), "A*d + B".parse().unwrap());
    }

    #[test]
    fn small_paths() {
        assert_eq!(closed_form(ClosedForm::PathSum, 0).unwrap(), MultiPoly::one());
        assert_eq!(closed_form(ClosedForm::PathSum, 1).unwrap(), "A*d + B".parse().unwrap());
        assert_eq!(closed_form(ClosedForm::PathSum, 2).unwrap(), "A^2 + 2*A*B + B^2*d".parse().unwrap());
    }

    #[test]
    fn lollipop_needs_a_vertex() {
        assert!(matches!(closed_form(ClosedForm::Lollipop, 0), Err(BracketError::InvalidN { .. })));
        assert_eq!(closed_form(ClosedForm::Lollipop, 1).unwrap(), "A + B*d".parse().unwrap());
    }
}
