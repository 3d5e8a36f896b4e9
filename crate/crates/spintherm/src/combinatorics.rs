//! Exact integer and polynomial combinatorics.
//!
//! Everything in this module is arbitrary-precision and exact; it is the
//! backbone every multiplicity and partition-function computation rests on.
//! The central object is the [`MacrostatePolynomial`]: for `N` bosons in `d`
//! states the polynomial
//!
//! ```text
//! [N+d−1 choose d−1]_q = Σ_m g(m) q^m
//! ```
//!
//! lists the number of configurations `g(m)` for each macrostate
//! `m = Σ j·k_j` (the total shifted spin index). Two independent routes
//! produce these numbers: [`gaussian_binomial`] builds the q-binomial from its
//! product form by exact polynomial division, while [`grid_path_multiplicity`]
//! counts monotone lattice paths of a given enclosed area by direct
//! enumeration. They share no code, which is what makes their agreement a
//! meaningful test.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact macrostate multiplicities `g(m)`, indexed by `m = 0 ..= (d−1)·N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacrostatePolynomial {
    coeffs: Vec<BigUint>,
}

impl MacrostatePolynomial {
    /// Coefficient of `q^m`; zero beyond the degree.
    pub fn coeff(&self, m: usize) -> BigUint {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    /// All coefficients, index = macrostate.
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Degree of the polynomial (= largest reachable macrostate).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Value at q = 1: the total number of configurations.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Whether coefficients satisfy the spectrum-reflection symmetry
    /// `g(m) = g(degree − m)`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 1..=k {
        // Exact at every step: acc holds C(n, i) after the division.
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

/// Exact factorial n!.
pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

/// Exact multinomial coefficient N! / (k₀! k₁! ⋯), the number of
/// distinguishable assignments sharing the occupation vector `k`.
///
/// Errors if the occupations do not sum to `n`.
pub fn multinomial(n: u64, k: &[u64]) -> Result<BigUint> {
    let total: u64 = k.iter().sum();
    if total != n {
        return Err(Error::invalid(format!(
            "occupation vector sums to {total}, expected {n}"
        )));
    }
    let mut acc = factorial(n);
    for &ki in k {
        if ki > 1 {
            acc /= factorial(ki);
        }
    }
    Ok(acc)
}

/// The Gaussian (q-)binomial `[n_top choose k]_q` as an exact integer
/// polynomial.
///
/// Built from the product form
/// `∏_{i=1..k} (1 − q^{n_top−k+i}) / (1 − q^i)`
/// by iterated multiplication and exact synthetic division; after the i-th
/// step the intermediate is itself the q-binomial `[n_top−k+i choose i]_q`,
/// so every division is exact.
pub fn gaussian_binomial(n_top: u32, k: u32) -> Result<MacrostatePolynomial> {
    if k > n_top {
        return Err(Error::invalid(format!(
            "gaussian binomial requires k ≤ n_top, got k={k}, n_top={n_top}"
        )));
    }
    let w = (n_top - k) as usize;
    let mut coeffs: Vec<BigInt> = vec![BigInt::from(1)];
    for i in 1..=k as usize {
        // Multiply by (1 − q^(w+i)).
        let a = w + i;
        let mut prod = vec![BigInt::zero(); coeffs.len() + a];
        for (j, c) in coeffs.iter().enumerate() {
            prod[j] += c;
            prod[j + a] -= c;
        }
        // Divide exactly by (1 − q^i): quotient degree drops by i.
        let qlen = prod.len() - i;
        let mut quot = vec![BigInt::zero(); qlen];
        for j in 0..qlen {
            quot[j] = if j >= i {
                &prod[j] + &quot[j - i]
            } else {
                prod[j].clone()
            };
        }
        // The discarded top i entries are the remainder; it must vanish.
        debug_assert!((qlen..prod.len()).all(|j| {
            let r = if j >= i {
                &prod[j] + &quot[j - i]
            } else {
                prod[j].clone()
            };
            r.is_zero()
        }));
        coeffs = quot;
    }
    let coeffs = coeffs
        .into_iter()
        .map(|c| match c.into_parts() {
            (Sign::Minus, _) => Err(Error::invalid(
                "internal: negative coefficient in q-binomial".to_string(),
            )),
            (_, mag) => Ok(mag),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MacrostatePolynomial { coeffs })
}

/// Number of monotone lattice paths from (0,0) to (d−1, N) whose enclosed
/// area equals `m`, counted by explicit depth-first enumeration with
/// memoization.
///
/// Each right-step at height y contributes y to the area, which makes the
/// area exactly the macrostate index of a boson configuration. This is the
/// independent oracle for [`gaussian_binomial`] and deliberately does not
/// call it.
pub fn grid_path_multiplicity(n: u32, d: u32, m: u64) -> Result<BigUint> {
    if n < 1 || d < 1 {
        return Err(Error::invalid(format!(
            "grid requires N ≥ 1 and d ≥ 1, got N={n}, d={d}"
        )));
    }
    let max_area = (d as u64 - 1) * n as u64;
    if m > max_area {
        return Err(Error::invalid(format!(
            "macrostate {m} out of range 0..={max_area} for N={n}, d={d}"
        )));
    }
    // Paths on a (d−1) × N grid: x counts right-steps taken, y the height.
    let width = d - 1;
    let mut memo: HashMap<(u32, u32, u64), BigUint> = HashMap::new();
    fn count(
        x: u32,
        y: u32,
        rem: u64,
        width: u32,
        height: u32,
        memo: &mut HashMap<(u32, u32, u64), BigUint>,
    ) -> BigUint {
        if x == width {
            // Only up-steps remain; they add no area.
            return if rem == 0 {
                BigUint::from(1u32)
            } else {
                BigUint::ZERO
            };
        }
        // Remaining right-steps can contribute at most (width−x)·height
        // and at least (width−x)·y area.
        let remaining = (width - x) as u64;
        if rem < remaining * y as u64 || rem > remaining * height as u64 {
            return BigUint::ZERO;
        }
        if let Some(hit) = memo.get(&(x, y, rem)) {
            return hit.clone();
        }
        let mut total = count(x + 1, y, rem - y as u64, width, height, memo);
        if y < height {
            total += count(x, y + 1, rem, width, height, memo);
        }
        memo.insert((x, y, rem), total.clone());
        total
    }
    Ok(count(0, 0, m, width, n, &mut memo))
}
