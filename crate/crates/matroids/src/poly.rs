//! Characteristic polynomials and Orlik–Solomon dimensions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use tropcoh_core::error::{Error, Result};

use super::{bits, Matroid};

/// Coefficients in increasing degree.
pub type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect())
}

/// Multiplication by `λ - 1`.
fn times_lambda_minus_one(a: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + 1];
    for (i, c) in a.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c;
    }
    trim(out)
}

/// `χ_M(λ)` by deletion–contraction.
pub fn characteristic_polynomial(m: &Matroid) -> Poly {
    if m.ground_size() == 0 {
        return vec![BigInt::one()];
    }
    if !m.loops().is_empty() {
        return vec![BigInt::zero()];
    }
    let e = m.ground_size() - 1;
    let con = m.contraction(e).expect("element in range");
    if m.is_coloop(e) {
        return times_lambda_minus_one(&characteristic_polynomial(&con));
    }
    let del = m.deletion(e).expect("element in range");
    sub(&characteristic_polynomial(&del), &characteristic_polynomial(&con))
}

/// `χ_M(λ) = Σ_S (-1)^{|S|} λ^{r - rk S}`, summed over all subsets.
pub fn characteristic_polynomial_by_subsets(m: &Matroid) -> Poly {
    let r = m.rank();
    let mut out = vec![BigInt::zero(); r + 1];
    for s in 0..(1u64 << m.ground_size()) {
        let k = r - m.rank_of(s);
        if bits(s).count() % 2 == 0 {
            out[k] += 1;
        } else {
            out[k] -= 1;
        }
    }
    trim(out)
}

/// `χ_M(λ) / (λ - 1)` for a loopless matroid of positive rank.
pub fn reduced_characteristic_polynomial(m: &Matroid) -> Result<Poly> {
    if !m.loops().is_empty() {
        return Err(Error::Loop(m.loops()));
    }
    if m.rank() == 0 {
        return Err(Error::Validation("rank zero matroid has no reduced characteristic polynomial".into()));
    }
    let chi = characteristic_polynomial(m);
    // synthetic division by λ - 1, highest degree first
    let d = chi.len() - 1;
    let mut q = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for k in (1..=d).rev() {
        carry = &chi[k] + carry;
        q[k - 1] = carry.clone();
    }
    if !(&chi[0] + carry).is_zero() {
        return Err(Error::InternalConsistency("λ - 1 does not divide the characteristic polynomial".into()));
    }
    Ok(q)
}

/// Unsigned coefficients of the reduced characteristic polynomial, from the leading one down.
pub fn os_dims(m: &Matroid) -> Result<Vec<usize>> {
    let q = reduced_characteristic_polynomial(m)?;
    q.iter()
        .rev()
        .map(|c| {
            usize::try_from(c.abs()).map_err(|_| Error::InternalConsistency("coefficient overflow".into()))
        })
        .collect()
}
