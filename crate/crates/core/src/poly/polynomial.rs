use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::flows::FlowCounter;
use super::ExactScalar;
use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Integer polynomial in `q`, coefficients lowest degree first, no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_exact(&self, q: &ExactScalar) -> ExactScalar {
        self.coefficients
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| acc * q + ExactScalar::from_integer(c.clone()))
    }
}

impl fmt::Display for IntPolynomial {
    /// Lowest degree first, e.g. `-1 + q` or `2 - 3q + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coefficients.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match power {
                0 => String::new(),
                1 => String::from("q"),
                p => alloc::format!("q^{p}"),
            };
            if power == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(&var)?;
        }
        Ok(())
    }
}

fn mul_linear(poly: &[ExactScalar], root: &ExactScalar) -> Vec<ExactScalar> {
    // poly · (X − root)
    let mut out = vec![ExactScalar::zero(); poly.len() + 1];
    for (i, c) in poly.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * root;
    }
    out
}

/// Lagrange interpolation through `(xs[i], ys[i])`, coefficients lowest first.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<ExactScalar> {
    let xs: Vec<ExactScalar> = xs.iter().cloned().map(ExactScalar::from_integer).collect();
    let mut sum = vec![ExactScalar::zero(); xs.len()];
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = vec![ExactScalar::one()];
        let mut denom = ExactScalar::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = mul_linear(&basis, xj);
                denom *= xi - xj;
            }
        }
        let scale = ExactScalar::from_integer(yi.clone()) / denom;
        for (s, b) in sum.iter_mut().zip(&basis) {
            *s += b * &scale;
        }
    }
    sum
}

/// The flow polynomial `C_G(q)`, interpolated from deletion–contraction
/// counts at `q = 2, …, |E| + 2`.
pub fn flow_polynomial(g: &Multigraph) -> Result<IntPolynomial> {
    let points: Vec<u32> = (2..=g.edge_count() as u32 + 2).collect();
    let xs: Vec<BigInt> = points.iter().map(|&q| BigInt::from(q)).collect();
    let ys: Vec<BigInt> = points.iter().map(|&q| FlowCounter::new(q).count(g)).collect();
    let coefficients = interpolate(&xs, &ys)
        .into_iter()
        .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::NonIntegralCoefficient) })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::new(coefficients))
}
