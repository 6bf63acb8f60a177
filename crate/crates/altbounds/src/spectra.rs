//! Spectral data of the rank-distance graph on Alt_n(F_q).
//!
//! Two alternating matrices are adjacent when their difference has rank 2.
//! The resulting graph is distance-regular with diameter floor(n/2); its
//! distinct eigenvalues, intersection numbers, multiplicities, and
//! eigenmatrices all have closed forms in q and n, which this module
//! evaluates in exact integer and rational arithmetic.  Several quantities
//! are computed along two independent routes and asserted equal.

use crate::altforms::{count_rank, space_size};
use crate::gf::prime_power_decompose;
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Diameter of the graph: floor(n/2).
pub fn diameter(n: usize) -> usize {
    n / 2
}

/// Degree delta = (q^n - 1)(q^(n-1) - 1)/(q^2 - 1), the rank-2 count.
pub fn degree(n: usize, q: u64) -> BigUint {
    count_rank(n, q, 2)
}

fn qpow(q: u64, e: u64) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    let (quot, rem) = num_integer::Integer::div_rem(&num, den);
    assert!(rem.is_zero(), "expected exact division");
    quot
}

fn check_params(n: usize, q: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 2, got {n}"
        )));
    }
    if prime_power_decompose(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    Ok(())
}

/// Distinct eigenvalues with their multiplicities.
///
/// `theta` is strictly decreasing; `mult` stays empty until
/// [`multiplicities`] completes the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    pub n: usize,
    pub q: u64,
    pub theta: Vec<BigInt>,
    pub mult: Vec<BigUint>,
}

impl SpectrumTable {
    pub fn diameter(&self) -> usize {
        diameter(self.n)
    }

    pub fn is_complete(&self) -> bool {
        !self.mult.is_empty()
    }
}

/// The eigenvalue at index x is (q^(2n-2x-1) - q^n - q^(n-1) + 1)/(q^2 - 1),
/// for x = 0..=floor(n/2); the division is exact and the sequence strictly
/// decreasing, starting at the degree.
pub fn eigenvalues(n: usize, q: u64) -> Result<SpectrumTable> {
    check_params(n, q)?;
    let den = qpow(q, 2) - 1;
    let nn = n as u64;
    let theta: Vec<BigInt> = (0..=diameter(n) as u64)
        .map(|x| {
            let num = qpow(q, 2 * nn - 2 * x - 1) - qpow(q, nn) - qpow(q, nn - 1) + 1;
            exact_div(num, &den)
        })
        .collect();
    assert_eq!(theta[0], BigInt::from(degree(n, q)));
    for w in theta.windows(2) {
        assert!(w[0] > w[1], "eigenvalues must be strictly decreasing");
    }
    let last = theta.last().unwrap();
    if n >= 4 {
        assert!(*last < BigInt::from(-1), "smallest eigenvalue below -1");
    } else {
        // For n = 2, 3 the graph is complete and the smallest eigenvalue
        // is exactly -1.
        assert_eq!(*last, BigInt::from(-1));
    }
    for t in &theta[..theta.len() - 1] {
        assert!(t.is_positive());
    }
    Ok(SpectrumTable {
        n,
        q,
        theta,
        mult: Vec::new(),
    })
}

/// Intersection numbers b_i, c_i, a_i and valencies k_i, i = 0..=floor(n/2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionArray {
    pub n: usize,
    pub q: u64,
    pub b: Vec<BigUint>,
    pub c: Vec<BigUint>,
    pub a: Vec<BigUint>,
    pub k: Vec<BigUint>,
}

/// b_i = q^(4i)(q^(n-2i) - 1)(q^(n-2i-1) - 1)/(q^2 - 1) and
/// c_i = q^(2i-2)(q^(2i) - 1)/(q^2 - 1), with the vanishing boundary cases
/// taken before any negative exponent can occur; a_i closes the sum to the
/// degree, and the valencies follow from k_(i+1) = k_i b_i / c_(i+1).
pub fn intersection_array(n: usize, q: u64) -> Result<IntersectionArray> {
    check_params(n, q)?;
    let dd = diameter(n);
    let den = qpow(q, 2) - 1;
    let delta = BigInt::from(degree(n, q));
    let nn = n as u64;

    let b: Vec<BigUint> = (0..=dd as u64)
        .map(|i| {
            if nn == 2 * i {
                return BigUint::zero();
            }
            let num = qpow(q, 4 * i) * (qpow(q, nn - 2 * i) - 1) * (qpow(q, nn - 2 * i - 1) - 1);
            exact_div(num, &den).to_biguint().expect("b_i >= 0")
        })
        .collect();
    let c: Vec<BigUint> = (0..=dd as u64)
        .map(|i| {
            if i == 0 {
                return BigUint::zero();
            }
            let num = qpow(q, 2 * i - 2) * (qpow(q, 2 * i) - 1);
            exact_div(num, &den).to_biguint().expect("c_i >= 0")
        })
        .collect();
    let a: Vec<BigUint> = (0..=dd)
        .map(|i| {
            (delta.clone() - BigInt::from(b[i].clone()) - BigInt::from(c[i].clone()))
                .to_biguint()
                .expect("a_i >= 0")
        })
        .collect();

    let mut k = vec![BigUint::one()];
    for i in 0..dd {
        let num = k[i].clone() * &b[i];
        let (quot, rem) = num_integer::Integer::div_rem(&num, &c[i + 1]);
        assert!(rem.is_zero(), "valency chain must divide exactly");
        k.push(quot);
    }

    assert_eq!(b[0], degree(n, q));
    assert!(b[dd].is_zero());
    if dd >= 1 {
        assert!(c[1].is_one());
    }
    for (i, ki) in k.iter().enumerate() {
        assert_eq!(*ki, count_rank(n, q, 2 * i), "valency vs rank count at i={i}");
    }
    assert_eq!(k.iter().sum::<BigUint>(), space_size(n, q));

    Ok(IntersectionArray { n, q, b, c, a, k })
}

/// A polynomial with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    pub coeffs: Vec<BigRational>,
}

impl RationalPoly {
    fn constant(c: BigRational) -> RationalPoly {
        RationalPoly { coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigRational {
        self.eval(&BigRational::from_integer(x.clone()))
    }

    /// self * (x - root) - other * scale, the recurrence step shape.
    fn shift_mul_sub(&self, root: &BigRational, other: &RationalPoly, scale: &BigRational) -> RationalPoly {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] += c;
            coeffs[i] -= c * root;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] -= c * scale;
        }
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    fn scale(&self, factor: &BigRational) -> RationalPoly {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

/// Distance polynomials v_0..v_D defined by v_0 = 1, v_1 = x, and
/// c_(i+1) v_(i+1) = (x - a_i) v_i - b_(i-1) v_(i-1); v_i evaluated at the
/// j-th eigenvalue gives the P-eigenmatrix, and v_i(theta_0) = k_i.
pub fn distance_polynomials(ia: &IntersectionArray) -> Vec<RationalPoly> {
    let dd = diameter(ia.n);
    let rat = |u: &BigUint| BigRational::from_integer(BigInt::from(u.clone()));
    let mut v = vec![RationalPoly::constant(BigRational::one())];
    if dd >= 1 {
        v.push(RationalPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        });
    }
    for i in 1..dd {
        let a_i = rat(&ia.a[i]);
        let b_prev = rat(&ia.b[i - 1]);
        let c_next = rat(&ia.c[i + 1]);
        let next = v[i]
            .shift_mul_sub(&a_i, &v[i - 1], &b_prev)
            .scale(&c_next.recip());
        v.push(next);
    }
    let theta0 = BigInt::from(degree(ia.n, ia.q));
    for (i, vi) in v.iter().enumerate() {
        assert_eq!(vi.degree(), i);
        assert_eq!(
            vi.eval_int(&theta0),
            rat(&ia.k[i]),
            "v_{i} at the degree must equal the valency"
        );
    }
    v
}

/// Completes a spectrum table with exact multiplicities via the standard
/// sequence: mult_j = |X| / sum_i v_i(theta_j)^2 / k_i.
pub fn multiplicities(st: &SpectrumTable, ia: &IntersectionArray) -> Result<SpectrumTable> {
    if st.n != ia.n || st.q != ia.q {
        return Err(Error::InvalidParameter(
            "spectrum and intersection array describe different graphs".to_string(),
        ));
    }
    let v = distance_polynomials(ia);
    let size = BigRational::from_integer(BigInt::from(space_size(st.n, st.q)));
    let mut mult = Vec::with_capacity(st.theta.len());
    for (j, theta_j) in st.theta.iter().enumerate() {
        let mut denom = BigRational::zero();
        for (i, vi) in v.iter().enumerate() {
            let val = vi.eval_int(theta_j);
            let ki = BigRational::from_integer(BigInt::from(ia.k[i].clone()));
            denom += &val * &val / ki;
        }
        let m = &size / denom;
        if !m.is_integer() || !m.numer().is_positive() {
            return Err(Error::NonIntegralMultiplicity { index: j });
        }
        mult.push(m.to_integer().to_biguint().expect("positive"));
    }
    assert!(mult[0].is_one(), "top multiplicity of a connected graph");
    assert_eq!(mult.iter().sum::<BigUint>(), space_size(st.n, st.q));
    let trace: BigInt = st
        .theta
        .iter()
        .zip(&mult)
        .map(|(t, m)| t * BigInt::from(m.clone()))
        .sum();
    assert!(trace.is_zero(), "adjacency matrices are traceless");
    Ok(SpectrumTable {
        n: st.n,
        q: st.q,
        theta: st.theta.clone(),
        mult,
    })
}

/// First and second eigenmatrices, exact: p[j][i] = v_i(theta_j) and
/// q = |X| p^(-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenMatrices {
    pub p: Vec<Vec<BigRational>>,
    pub q: Vec<Vec<BigRational>>,
}

fn invert(matrix: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = matrix.len();
    let mut work: Vec<Vec<BigRational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        let inv = work[col][col].recip();
        for slot in &mut work[col] {
            *slot = &*slot * &inv;
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone();
            let pivot_row = work[col].clone();
            for (slot, p) in work[r].iter_mut().zip(&pivot_row) {
                let delta = &factor * p;
                *slot = &*slot - delta;
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Builds both eigenmatrices and checks p q = |X| I exactly.
pub fn eigenmatrices(st: &SpectrumTable, ia: &IntersectionArray) -> Result<EigenMatrices> {
    if !st.is_complete() {
        return Err(Error::InvalidParameter(
            "eigenmatrices need a completed spectrum table".to_string(),
        ));
    }
    let v = distance_polynomials(ia);
    let p: Vec<Vec<BigRational>> = st
        .theta
        .iter()
        .map(|theta_j| v.iter().map(|vi| vi.eval_int(theta_j)).collect())
        .collect();
    let size = BigRational::from_integer(BigInt::from(space_size(st.n, st.q)));
    let p_inv = invert(&p).ok_or(Error::InvalidParameter(
        "eigenvalue matrix is singular, which distinct eigenvalues forbid".to_string(),
    ))?;
    let q: Vec<Vec<BigRational>> = p_inv
        .iter()
        .map(|row| row.iter().map(|e| e * &size).collect())
        .collect();

    let dim = p.len();
    for (i, p_row) in p.iter().enumerate() {
        for j in 0..dim {
            let mut acc = BigRational::zero();
            for (pil, q_row) in p_row.iter().zip(&q) {
                acc += pil * &q_row[j];
            }
            let expect = if i == j { size.clone() } else { BigRational::zero() };
            assert_eq!(acc, expect, "P Q = |X| I fails at ({i},{j})");
        }
    }
    for (j, m) in st.mult.iter().enumerate() {
        assert_eq!(
            q[0][j],
            BigRational::from_integer(BigInt::from(m.clone())),
            "first row of Q must list the multiplicities"
        );
    }
    Ok(EigenMatrices { p, q })
}

/// Eigenvalues, multiplicities, and intersection array in one call.
pub fn spectrum(n: usize, q: u64) -> Result<(SpectrumTable, IntersectionArray)> {
    let ia = intersection_array(n, q)?;
    let st = multiplicities(&eigenvalues(n, q)?, &ia)?;
    Ok((st, ia))
}

/// Number of closed 3-walks at any vertex: delta * a_1, with the closed form
/// (q^n - 1)(q^(n-1) - 1)(q^(n+2) + q^(n+1) - q^n - q^(n-1) - q^4 - q^2 + 2)
/// / (q^2 - 1)^2.  Both routes are evaluated and must agree.
pub fn delta_walks(n: usize, q: u64) -> Result<BigUint> {
    check_params(n, q)?;
    let ia = intersection_array(n, q)?;
    let product_form = degree(n, q) * &ia.a[1];

    let nn = n as u64;
    let factor = qpow(q, nn + 2) + qpow(q, nn + 1)
        - qpow(q, nn)
        - qpow(q, nn - 1)
        - qpow(q, 4)
        - qpow(q, 2)
        + 2;
    let num = (qpow(q, nn) - 1) * (qpow(q, nn - 1) - 1) * factor;
    let base = qpow(q, 2) - 1;
    let den = &base * &base;
    let closed_form = exact_div(num, &den)
        .to_biguint()
        .expect("walk counts are nonnegative");
    assert_eq!(product_form, closed_form, "walk count routes disagree");
    Ok(closed_form)
}

/// Threshold t_n = (q^2(q^(n-2) - 1)(q^(n-3) - 1) - q^(2 floor(n/2) - 2) + 1)
/// / (q^(2 floor(n/2) - 2) - 1), which also equals
/// -(delta^2 + delta theta_D - Delta)/(delta (theta_D + 1)); the largest
/// index s with theta_s >= t_n picks the eigenvalues for the alpha_3 bound.
pub fn t_threshold(n: usize, q: u64) -> Result<BigRational> {
    check_params(n, q)?;
    if n < 6 {
        return Err(Error::InvalidParameter(format!(
            "threshold needs n >= 6, got {n}"
        )));
    }
    let nn = n as u64;
    let dd = diameter(n) as u64;
    let num = qpow(q, 2) * (qpow(q, nn - 2) - 1) * (qpow(q, nn - 3) - 1) - qpow(q, 2 * dd - 2) + 1;
    let den = qpow(q, 2 * dd - 2) - 1;
    let t = BigRational::new(num, den);

    let st = eigenvalues(n, q)?;
    let delta = BigRational::from_integer(BigInt::from(degree(n, q)));
    let theta_last = BigRational::from_integer(st.theta.last().unwrap().clone());
    let walks = BigRational::from_integer(BigInt::from(delta_walks(n, q)?));
    let spectral = -(&delta * &delta + &delta * &theta_last - walks)
        / (&delta * (&theta_last + BigRational::one()));
    assert_eq!(t, spectral, "threshold routes disagree");
    Ok(t)
}
