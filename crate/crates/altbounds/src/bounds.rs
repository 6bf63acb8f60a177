//! Upper bounds on the size of alternating rank-metric codes.
//!
//! A code here is a subset of Alt_n(F_q) whose nonzero pairwise differences
//! all have rank at least 2d.  The bounds below cap its cardinality along
//! independent routes: a Singleton-style dimension count, spectral ratio
//! bounds on powers of the rank-distance graph, two exact linear programs,
//! a code-anticode argument, sphere packing, and a total-distance average.
//! Everything is exact; floored integers sit next to the rational optima so
//! equality between bounds can be tested literally.

use crate::altforms::{ball_volume, space_size};
use crate::gf::prime_power_decompose;
use crate::ratlp::{self, Constraint, LinearProgram, LpStatus, Relation, Sense};
use crate::spectra::{
    self, diameter, eigenmatrices, eigenvalues, multiplicities, spectrum, t_threshold,
};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn rat_int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn rat_uint(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

fn check_common(q: u64, n: usize) -> Result<()> {
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

fn check_d(n: usize, d: usize) -> Result<()> {
    if d < 1 || d > diameter(n) {
        return Err(Error::InvalidParameter(format!(
            "d must lie in 1..={}, got {d}",
            diameter(n)
        )));
    }
    Ok(())
}

/// An exact rational bound together with its floor, which is the integer
/// cardinality cap actually quoted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactBound {
    pub exact: BigRational,
    pub floored: BigUint,
}

impl ExactBound {
    fn new(exact: BigRational) -> ExactBound {
        assert!(exact.is_positive(), "bounds are at least 1");
        let floored = exact
            .floor()
            .to_integer()
            .to_biguint()
            .expect("positive floor");
        assert!(!floored.is_zero(), "bounds are at least 1");
        ExactBound { exact, floored }
    }
}

/// Singleton-style bound q^((n(n-1)/(2 floor(n/2))) (floor(n/2) - d + 1));
/// the inner quotient is n-1 for even n and n for odd n, so the exponent is
/// always an integer.
pub fn singleton_like(q: u64, n: usize, d: usize) -> Result<BigUint> {
    check_common(q, n)?;
    check_d(n, d)?;
    let dd = diameter(n) as u64;
    let nn = n as u64;
    let half_dim = nn * (nn - 1);
    assert_eq!(half_dim % (2 * dd), 0, "exponent must be integral");
    let per_step = half_dim / (2 * dd);
    assert_eq!(per_step, if n.is_multiple_of(2) { nn - 1 } else { nn });
    let e = per_step * (dd - d as u64 + 1);
    Ok(BigUint::from(q).pow(e as u32))
}

/// Hoffman ratio bound |X| (-theta_D)/(theta_0 - theta_D) on independent
/// sets of the rank-distance graph, hence on codes with minimum distance 4.
pub fn hoffman(q: u64, n: usize) -> Result<ExactBound> {
    let st = eigenvalues(n, q)?;
    let theta0 = rat_int(st.theta[0].clone());
    let last = rat_int(st.theta.last().unwrap().clone());
    let size = rat_uint(&space_size(n, q));
    Ok(ExactBound::new(size * -&last / (theta0 - last)))
}

/// Ratio bound on the square of the graph, capping codes with minimum
/// distance 6.  The anchor eigenvalue is the largest one at most -1, found
/// by search; for this family it is always the smallest eigenvalue.
pub fn ratio_k2(q: u64, n: usize) -> Result<ExactBound> {
    if n < 6 {
        return Err(Error::InvalidParameter(format!(
            "the square ratio bound needs n >= 6, got {n}"
        )));
    }
    let st = eigenvalues(n, q)?;
    let i = (0..st.theta.len())
        .find(|&i| st.theta[i] <= BigInt::from(-1))
        .expect("the smallest eigenvalue is below -1");
    assert_eq!(i, diameter(n), "only the last eigenvalue is at most -1");
    let theta0 = rat_int(st.theta[0].clone());
    let ti = rat_int(st.theta[i].clone());
    let tprev = rat_int(st.theta[i - 1].clone());
    let size = rat_uint(&space_size(n, q));
    let num = &theta0 + &ti * &tprev;
    let den = (&theta0 - &ti) * (&theta0 - &tprev);
    Ok(ExactBound::new(size * num / den))
}

/// Ratio bound on the cube of the graph, capping codes with minimum
/// distance 8.  The split index s is the largest one with theta_s at or
/// above the threshold from [`spectra::t_threshold`]; the third anchor is
/// the smallest eigenvalue.
pub fn ratio_k3(q: u64, n: usize) -> Result<ExactBound> {
    if n < 8 {
        return Err(Error::InvalidParameter(format!(
            "the cube ratio bound needs n >= 8, got {n}"
        )));
    }
    let st = eigenvalues(n, q)?;
    let t = t_threshold(n, q)?;
    let s = (0..st.theta.len())
        .rev()
        .find(|&s| rat_int(st.theta[s].clone()) >= t)
        .expect("theta_0 exceeds the threshold");
    assert_eq!(s, diameter(n) - 2, "threshold splits two below the top gap");
    let theta0 = rat_int(st.theta[0].clone());
    let ts = rat_int(st.theta[s].clone());
    let ts1 = rat_int(st.theta[s + 1].clone());
    let tr = rat_int(st.theta.last().unwrap().clone());
    let walks = rat_uint(&spectra::delta_walks(n, q)?);
    let size = rat_uint(&space_size(n, q));
    let num = walks - &theta0 * (&ts + &ts1 + &tr) - &ts * &ts1 * &tr;
    let den = (&theta0 - &ts) * (&theta0 - &ts1) * (&theta0 - &tr);
    Ok(ExactBound::new(size * num / den))
}

/// The minor-polynomial program for alpha_k: minimize sum m(theta_i) x_i
/// with x_0 pinned to 1 and the Newton divided differences
/// f[theta_0..theta_s] forced to vanish for s = k+1 up to the number of
/// classes, over nonnegative x.
pub fn build_minor_lp(q: u64, n: usize, k: usize) -> Result<LinearProgram> {
    check_common(q, n)?;
    let dd = diameter(n);
    if k < 1 || k > dd {
        return Err(Error::InvalidParameter(format!(
            "k must lie in 1..={dd}, got {k}"
        )));
    }
    let (st, _) = spectrum(n, q)?;
    let theta: Vec<BigRational> = st.theta.iter().cloned().map(rat_int).collect();
    let objective: Vec<BigRational> = st.mult.iter().map(rat_uint).collect();

    let mut constraints = Vec::new();
    let mut pin = vec![BigRational::zero(); dd + 1];
    pin[0] = BigRational::one();
    constraints.push(Constraint {
        row: pin,
        relation: Relation::Eq,
        rhs: BigRational::one(),
    });
    for s in k + 1..=dd {
        let mut row = vec![BigRational::zero(); dd + 1];
        for (i, coeff) in row.iter_mut().enumerate().take(s + 1) {
            let mut denom = BigRational::one();
            for l in 0..=s {
                if l != i {
                    denom *= &theta[i] - &theta[l];
                }
            }
            *coeff = denom.recip();
        }
        constraints.push(Constraint {
            row,
            relation: Relation::Eq,
            rhs: BigRational::zero(),
        });
    }
    LinearProgram::nonneg(Sense::Minimize, objective, constraints)
}

/// Solves the minor-polynomial program; the optimum bounds alpha_k and so
/// any code with minimum rank distance 2(k+1).
pub fn ratio_general_lp(q: u64, n: usize, k: usize) -> Result<ExactBound> {
    let lp = build_minor_lp(q, n, k)?;
    let sol = ratlp::solve(&lp);
    if sol.status != LpStatus::Optimal {
        return Err(Error::NoOptimum("minor-polynomial program"));
    }
    Ok(ExactBound::new(sol.value.expect("optimal")))
}

/// The Delsarte program for minimum distance 2d: maximize the total mass
/// sum beta_i with beta_0 = 1, the first d-1 classes empty, the rest
/// nonnegative, and every dual constraint sum_i beta_i Q[i][j] >= 0.
pub fn build_delsarte_lp(q: u64, n: usize, d: usize) -> Result<LinearProgram> {
    check_common(q, n)?;
    check_d(n, d)?;
    let dd = diameter(n);
    let ia = spectra::intersection_array(n, q)?;
    let st = multiplicities(&eigenvalues(n, q)?, &ia)?;
    let em = eigenmatrices(&st, &ia)?;

    let objective = vec![BigRational::one(); dd + 1];
    let mut constraints = Vec::new();
    for (i, value) in (0..d).map(|i| (i, if i == 0 { 1 } else { 0 })) {
        let mut row = vec![BigRational::zero(); dd + 1];
        row[i] = BigRational::one();
        constraints.push(Constraint {
            row,
            relation: Relation::Eq,
            rhs: rat_int(BigInt::from(value)),
        });
    }
    for j in 1..=dd {
        let row: Vec<BigRational> = (0..=dd).map(|i| em.q[i][j].clone()).collect();
        constraints.push(Constraint {
            row,
            relation: Relation::Ge,
            rhs: BigRational::zero(),
        });
    }
    LinearProgram::nonneg(Sense::Maximize, objective, constraints)
}

/// Solves the Delsarte program and returns the exact optimum, which caps
/// the size of any code with minimum rank distance 2d.
pub fn delsarte_lp(q: u64, n: usize, d: usize) -> Result<ExactBound> {
    let lp = build_delsarte_lp(q, n, d)?;
    let sol = ratlp::solve(&lp);
    if sol.status != LpStatus::Optimal {
        return Err(Error::NoOptimum("Delsarte program"));
    }
    Ok(ExactBound::new(sol.value.expect("optimal")))
}

/// Code-anticode dimension bound (n(n-1) - 2(d-1)(2d-1))/2 for linear codes
/// with minimum rank distance 2d; the cardinality cap is q to this power.
pub fn code_anticode_dim(n: usize, d: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 2, got {n}"
        )));
    }
    check_d(n, d)?;
    let nn = n as u64;
    let dd = d as u64;
    assert!(2 * dd - 1 <= nn, "anticode radius fits inside the space");
    let num = nn * (nn - 1) - 2 * (dd - 1) * (2 * dd - 1);
    assert_eq!(num % 2, 0);
    Ok(num / 2)
}

/// Sphere-packing bound floor(|X| / ball_volume(n, q, t)) with the packing
/// radius t = floor((2d-1)/2) = d-1 measured in rank.
pub fn sphere_packing(q: u64, n: usize, d: usize) -> Result<BigUint> {
    check_common(q, n)?;
    check_d(n, d)?;
    let t = d - 1;
    let vol = ball_volume(n, q, t)?;
    Ok(space_size(n, q) / vol)
}

/// What the sphere-packing divisibility test says about perfect codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perfectness {
    /// Even d rules perfect codes out before any counting.
    PerfectImpossibleEvenD,
    /// The ball volume does not tile the space, or only trivially.
    NotTight,
    /// Balls of radius d-1 tile the space around at least two centers.
    Tight,
}

/// Tests whether a perfect code could exist at these parameters: impossible
/// outright for even d, otherwise an exact divisibility check of the ball
/// volume against the space size.  Unlike the cardinality bounds this test
/// is meaningful for any d whose packing radius fits the space, so d may
/// run past floor(n/2).
pub fn perfectness_check(q: u64, n: usize, d: usize) -> Result<Perfectness> {
    check_common(q, n)?;
    if d < 1 || d - 1 > n {
        return Err(Error::InvalidParameter(format!(
            "packing radius {} does not fit ranks in Alt_{n}",
            d.wrapping_sub(1)
        )));
    }
    if d.is_multiple_of(2) {
        return Ok(Perfectness::PerfectImpossibleEvenD);
    }
    let vol = ball_volume(n, q, d - 1)?;
    let size = space_size(n, q);
    let (quot, rem) = num_integer::Integer::div_rem(&size, &vol);
    if rem.is_zero() && quot >= BigUint::from(2u32) {
        Ok(Perfectness::Tight)
    } else {
        Ok(Perfectness::NotTight)
    }
}

/// A bound that only holds under a side condition carries the reason when
/// the condition fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Applicability<T> {
    Applies(T),
    NotApplicable(&'static str),
}

impl<T> Applicability<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Applicability::Applies(v) => Some(v),
            Applicability::NotApplicable(_) => None,
        }
    }
}

/// Total-distance averaging bound.  For even n it needs
/// d > n/2 - q^(1-n) and yields floor((d - n/2 + 1)/(d - n/2 + q^(1-n)));
/// odd n uses (n-1)/2 and q^(3-2n).  The side condition is decided with
/// exact rationals, and in integer terms it holds exactly at d = floor(n/2).
pub fn total_distance(q: u64, n: usize, d: usize) -> Result<Applicability<BigUint>> {
    check_common(q, n)?;
    check_d(n, d)?;
    let (half, eps, reason) = if n.is_multiple_of(2) {
        let eps = BigRational::new(BigInt::one(), BigInt::from(q).pow(n as u32 - 1));
        (n / 2, eps, "needs d > n/2 - q^(1-n)")
    } else {
        let eps = BigRational::new(BigInt::one(), BigInt::from(q).pow(2 * n as u32 - 3));
        ((n - 1) / 2, eps, "needs d > (n-1)/2 - q^(3-2n)")
    };
    let gap = rat_int(BigInt::from(d as i64 - half as i64));
    if gap + &eps <= BigRational::zero() {
        return Ok(Applicability::NotApplicable(reason));
    }
    let gap = rat_int(BigInt::from(d as i64 - half as i64));
    let value = (&gap + BigRational::one()) / (gap + eps);
    let floored = value
        .floor()
        .to_integer()
        .to_biguint()
        .expect("positive bound");
    Ok(Applicability::Applies(floored))
}

/// Dimension cap n/2 for linear codes whose minimum distance equals n,
/// available only for even n over fields of odd order.
pub fn gq_linear_dim(n: usize, q: u64) -> Result<Applicability<u64>> {
    check_common(q, n)?;
    if !n.is_multiple_of(2) {
        return Ok(Applicability::NotApplicable("needs n even"));
    }
    if q.is_multiple_of(2) {
        return Ok(Applicability::NotApplicable("needs q odd"));
    }
    Ok(Applicability::Applies(n as u64 / 2))
}

/// Whether a bound constrains every code or only linear ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    AnyCode,
    LinearOnly,
}

/// One evaluated bound inside a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    /// Integer cardinality cap.
    Count(BigUint),
    /// Cardinality cap from a rational optimum, kept in both forms.
    Lp { exact: BigRational, floored: BigUint },
    /// Dimension cap for linear codes, with the matching cardinality.
    Dimension { dim: u64, cardinality: BigUint },
    /// Bound does not constrain these parameters; the reason says why.
    NotApplicable(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: &'static str,
    pub scope: Scope,
    pub value: BoundValue,
    /// Set when the raw value exceeded the ambient space size and the
    /// reported integer was clamped down to it.
    pub clamped: bool,
}

/// Which of the pairwise bound identities held at these parameters; a flag
/// stays unset when its bounds do not both apply.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquivalenceFlags {
    pub hoffman_equals_singleton: Option<bool>,
    pub ratio_k2_equals_singleton: Option<bool>,
    pub ratio_k3_equals_singleton: Option<bool>,
    pub minor_lp_equals_delsarte: Option<bool>,
}

/// Every bound evaluated at one parameter triple, with equivalence flags
/// and the perfectness verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub q: u64,
    pub n: usize,
    pub d: usize,
    pub entries: Vec<BoundEntry>,
    pub flags: EquivalenceFlags,
    pub perfectness: Perfectness,
}

impl BoundReport {
    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Smallest cardinality cap among the bounds valid for arbitrary codes.
    pub fn best(&self) -> BigUint {
        let mut best: Option<BigUint> = None;
        for e in &self.entries {
            if e.scope != Scope::AnyCode {
                continue;
            }
            let v = match &e.value {
                BoundValue::Count(v) => v.clone(),
                BoundValue::Lp { floored, .. } => floored.clone(),
                _ => continue,
            };
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
        let best = best.expect("at least one bound always applies");
        assert!(!best.is_zero());
        best
    }
}

fn push_counted(
    entries: &mut Vec<BoundEntry>,
    name: &'static str,
    scope: Scope,
    value: BoundValue,
    size: &BigUint,
) {
    let (value, clamped) = match value {
        BoundValue::Count(v) if v > *size => (BoundValue::Count(size.clone()), true),
        BoundValue::Lp { exact, floored } if floored > *size => (
            BoundValue::Lp {
                exact,
                floored: size.clone(),
            },
            true,
        ),
        other => (other, false),
    };
    entries.push(BoundEntry {
        name,
        scope,
        value,
        clamped,
    });
}

/// Evaluates every bound at (q, n, d), records which equivalences held,
/// and clamps anything that overshoots the ambient space.
pub fn full_report(q: u64, n: usize, d: usize) -> Result<BoundReport> {
    check_common(q, n)?;
    check_d(n, d)?;
    let size = space_size(n, q);
    let mut entries = Vec::new();
    let mut flags = EquivalenceFlags::default();

    let single = singleton_like(q, n, d)?;
    push_counted(
        &mut entries,
        "singleton",
        Scope::AnyCode,
        BoundValue::Count(single.clone()),
        &size,
    );

    let hoffman_value = if d == 2 {
        let b = hoffman(q, n)?;
        flags.hoffman_equals_singleton = Some(b.floored == single);
        BoundValue::Lp {
            exact: b.exact,
            floored: b.floored,
        }
    } else {
        BoundValue::NotApplicable("applies only at d = 2")
    };
    push_counted(&mut entries, "hoffman", Scope::AnyCode, hoffman_value, &size);

    let k2_value = if d == 3 {
        let b = ratio_k2(q, n)?;
        flags.ratio_k2_equals_singleton = Some(b.floored == single);
        BoundValue::Lp {
            exact: b.exact,
            floored: b.floored,
        }
    } else {
        BoundValue::NotApplicable("applies only at d = 3")
    };
    push_counted(&mut entries, "ratio-k2", Scope::AnyCode, k2_value, &size);

    let k3_value = if d == 4 {
        let b = ratio_k3(q, n)?;
        flags.ratio_k3_equals_singleton = Some(b.floored == single);
        BoundValue::Lp {
            exact: b.exact,
            floored: b.floored,
        }
    } else {
        BoundValue::NotApplicable("applies only at d = 4")
    };
    push_counted(&mut entries, "ratio-k3", Scope::AnyCode, k3_value, &size);

    let minor_exact = if d >= 2 {
        let b = ratio_general_lp(q, n, d - 1)?;
        let exact = b.exact.clone();
        push_counted(
            &mut entries,
            "minor-lp",
            Scope::AnyCode,
            BoundValue::Lp {
                exact: b.exact,
                floored: b.floored,
            },
            &size,
        );
        Some(exact)
    } else {
        push_counted(
            &mut entries,
            "minor-lp",
            Scope::AnyCode,
            BoundValue::NotApplicable("needs d at least 2"),
            &size,
        );
        None
    };

    let dels = delsarte_lp(q, n, d)?;
    if let Some(me) = minor_exact {
        flags.minor_lp_equals_delsarte = Some(me == dels.exact);
    }
    push_counted(
        &mut entries,
        "delsarte-lp",
        Scope::AnyCode,
        BoundValue::Lp {
            exact: dels.exact,
            floored: dels.floored,
        },
        &size,
    );

    let dim = code_anticode_dim(n, d)?;
    push_counted(
        &mut entries,
        "code-anticode",
        Scope::LinearOnly,
        BoundValue::Dimension {
            dim,
            cardinality: BigUint::from(q).pow(dim as u32),
        },
        &size,
    );

    push_counted(
        &mut entries,
        "sphere-packing",
        Scope::AnyCode,
        BoundValue::Count(sphere_packing(q, n, d)?),
        &size,
    );

    let td_value = match total_distance(q, n, d)? {
        Applicability::Applies(v) => BoundValue::Count(v),
        Applicability::NotApplicable(r) => BoundValue::NotApplicable(r),
    };
    push_counted(
        &mut entries,
        "total-distance",
        Scope::AnyCode,
        td_value,
        &size,
    );

    let gq_value = if 2 * d == n {
        match gq_linear_dim(n, q)? {
            Applicability::Applies(dim) => BoundValue::Dimension {
                dim,
                cardinality: BigUint::from(q).pow(dim as u32),
            },
            Applicability::NotApplicable(r) => BoundValue::NotApplicable(r),
        }
    } else {
        BoundValue::NotApplicable("needs 2d = n")
    };
    push_counted(&mut entries, "gq-linear", Scope::LinearOnly, gq_value, &size);

    let perfectness = perfectness_check(q, n, d)?;
    let report = BoundReport {
        q,
        n,
        d,
        entries,
        flags,
        perfectness,
    };
    report.best();
    Ok(report)
}

/// Diagnostic exponent for the ball volume, re-exported beside the packing
/// bound that uses the exact volume.
pub fn packing_ball_exponent(n: usize, d: usize) -> Result<u64> {
    crate::altforms::ball_volume_exponent(n, (d.max(1)) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn singleton_values() {
        assert_eq!(singleton_like(2, 4, 2).unwrap(), big(8));
        assert_eq!(singleton_like(2, 4, 1).unwrap(), big(64));
        assert_eq!(singleton_like(2, 6, 3).unwrap(), big(32));
        assert_eq!(singleton_like(2, 7, 3).unwrap(), big(128));
        assert_eq!(singleton_like(2, 8, 4).unwrap(), big(128));
        assert!(singleton_like(2, 4, 0).is_err());
        assert!(singleton_like(2, 4, 3).is_err());
        assert!(singleton_like(6, 4, 2).is_err());
    }

    #[test]
    fn hoffman_values() {
        let b = hoffman(2, 4).unwrap();
        assert_eq!(b.exact, BigRational::from_integer(BigInt::from(8)));
        assert_eq!(b.floored, big(8));
        assert_eq!(hoffman(2, 5).unwrap().floored, big(32));
        assert_eq!(hoffman(2, 7).unwrap().floored, big(1 << 14));
        // Complete graphs have independence number 1.
        assert_eq!(hoffman(3, 2).unwrap().floored, big(1));
    }

    #[test]
    fn ratio_bounds_match_singleton() {
        assert_eq!(ratio_k2(2, 6).unwrap().floored, big(32));
        assert_eq!(ratio_k2(2, 7).unwrap().floored, big(128));
        assert!(ratio_k2(2, 5).is_err());
        assert_eq!(ratio_k3(2, 8).unwrap().floored, big(128));
        assert_eq!(ratio_k3(3, 8).unwrap().floored, big(2187));
        assert!(ratio_k3(2, 7).is_err());
        for n in 4..=9 {
            for q in [2, 3] {
                assert_eq!(
                    hoffman(q, n).unwrap().floored,
                    singleton_like(q, n, 2).unwrap(),
                    "distance-4 equivalence at n={n} q={q}"
                );
            }
        }
    }

    #[test]
    fn minor_lp_reduces_to_closed_forms() {
        for n in 4..=8 {
            for q in [2, 3] {
                assert_eq!(
                    ratio_general_lp(q, n, 1).unwrap().exact,
                    hoffman(q, n).unwrap().exact,
                    "k=1 vs Hoffman at n={n} q={q}"
                );
            }
        }
        assert_eq!(ratio_general_lp(2, 6, 2).unwrap().floored, big(32));
        assert_eq!(ratio_general_lp(2, 8, 3).unwrap().floored, big(128));
        // k equal to the class count leaves only the trivial clique.
        assert_eq!(ratio_general_lp(2, 4, 2).unwrap().floored, big(1));
        assert!(ratio_general_lp(2, 4, 0).is_err());
        assert!(ratio_general_lp(2, 4, 3).is_err());
    }

    #[test]
    fn delsarte_values() {
        assert_eq!(delsarte_lp(2, 4, 2).unwrap().floored, big(8));
        assert_eq!(delsarte_lp(2, 6, 3).unwrap().floored, big(32));
        for (q, n) in [(2, 4), (3, 4), (2, 5)] {
            assert_eq!(
                delsarte_lp(q, n, 1).unwrap().floored,
                space_size(n, q),
                "unconstrained program fills the space at q={q} n={n}"
            );
        }
    }

    #[test]
    fn lp_dumps_are_available() {
        let text = build_minor_lp(2, 4, 1).unwrap().dump();
        assert!(text.contains("minimize"));
        assert!(text.contains("1/1280"));
        let text = build_delsarte_lp(2, 4, 2).unwrap().dump();
        assert!(text.contains("maximize"));
        assert!(text.starts_with("maximize 1 x0 + 1 x1 + 1 x2"));
    }

    #[test]
    fn anticode_dimensions() {
        assert_eq!(code_anticode_dim(4, 2).unwrap(), 3);
        assert_eq!(code_anticode_dim(6, 3).unwrap(), 5);
        assert_eq!(code_anticode_dim(5, 1).unwrap(), 10);
        assert!(code_anticode_dim(4, 3).is_err());
        // Equality with the Singleton exponent happens exactly at n = 2d.
        // At d = 1 both bounds degenerate to the whole space, so the
        // boundary claim concerns d >= 2.
        for n in 4..=12usize {
            for d in 2..=diameter(n) {
                let k = code_anticode_dim(n, d).unwrap();
                let single = singleton_like(2, n, d).unwrap();
                let anticode_card = BigUint::from(2u32).pow(k as u32);
                assert!(single <= anticode_card, "n={n} d={d}");
                assert_eq!(single == anticode_card, n == 2 * d, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn packing_and_perfectness() {
        assert_eq!(sphere_packing(2, 4, 2).unwrap(), big(64));
        assert_eq!(sphere_packing(2, 5, 2).unwrap(), big(1024));
        assert_eq!(sphere_packing(2, 4, 1).unwrap(), big(64));
        assert_eq!(sphere_packing(2, 6, 3).unwrap(), big(50));
        assert_eq!(
            perfectness_check(2, 4, 2).unwrap(),
            Perfectness::PerfectImpossibleEvenD
        );
        assert_eq!(perfectness_check(2, 4, 1).unwrap(), Perfectness::Tight);
        assert_eq!(perfectness_check(2, 5, 3).unwrap(), Perfectness::NotTight);
    }

    #[test]
    fn total_distance_values() {
        assert_eq!(
            total_distance(2, 4, 2).unwrap(),
            Applicability::Applies(big(8))
        );
        assert_eq!(
            total_distance(2, 5, 2).unwrap(),
            Applicability::Applies(big(128))
        );
        assert_eq!(
            total_distance(2, 6, 3).unwrap(),
            Applicability::Applies(big(32))
        );
        assert!(matches!(
            total_distance(2, 6, 2).unwrap(),
            Applicability::NotApplicable(_)
        ));
        // The exact condition is equivalent to d reaching the diameter.
        for n in 4..=9usize {
            for q in [2u64, 3] {
                for d in 1..=diameter(n) {
                    let applies = total_distance(q, n, d)
                        .unwrap()
                        .value()
                        .is_some();
                    assert_eq!(applies, d == diameter(n), "q={q} n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn gq_dimension() {
        assert_eq!(gq_linear_dim(4, 3).unwrap(), Applicability::Applies(2));
        assert_eq!(
            gq_linear_dim(5, 3).unwrap(),
            Applicability::NotApplicable("needs n even")
        );
        assert_eq!(
            gq_linear_dim(4, 2).unwrap(),
            Applicability::NotApplicable("needs q odd")
        );
    }

    #[test]
    fn reports_collect_everything() {
        let r = full_report(2, 4, 2).unwrap();
        assert_eq!(r.best(), big(8));
        assert_eq!(r.flags.hoffman_equals_singleton, Some(true));
        assert_eq!(r.flags.minor_lp_equals_delsarte, Some(true));
        assert_eq!(r.perfectness, Perfectness::PerfectImpossibleEvenD);
        assert!(r.entry("gq-linear").is_some());
        assert!(!r.entry("singleton").unwrap().clamped);

        let r = full_report(2, 6, 3).unwrap();
        assert_eq!(r.best(), big(32));
        assert_eq!(r.flags.ratio_k2_equals_singleton, Some(true));
        assert_eq!(r.flags.minor_lp_equals_delsarte, Some(true));
        for name in ["singleton", "ratio-k2", "minor-lp", "delsarte-lp"] {
            let v = match &r.entry(name).unwrap().value {
                BoundValue::Count(v) => v.clone(),
                BoundValue::Lp { floored, .. } => floored.clone(),
                other => panic!("{name} should be numeric, got {other:?}"),
            };
            assert_eq!(v, big(32), "{name}");
        }

        let r = full_report(2, 8, 4).unwrap();
        assert_eq!(r.best(), big(128));
        assert_eq!(r.flags.ratio_k3_equals_singleton, Some(true));
        assert_eq!(r.flags.minor_lp_equals_delsarte, Some(true));
    }

    #[test]
    fn bounds_shrink_as_distance_grows() {
        for q in [2u64, 3] {
            let mut last: Option<(BigUint, BigUint, BigUint)> = None;
            for d in 1..=4 {
                let single = singleton_like(q, 8, d).unwrap();
                let dels = delsarte_lp(q, 8, d).unwrap().floored;
                let pack = sphere_packing(q, 8, d).unwrap();
                if let Some((s, de, p)) = last.take() {
                    assert!(single <= s);
                    assert!(dels <= de);
                    assert!(pack <= p);
                }
                last = Some((single, dels, pack));
            }
        }
    }

    #[test]
    fn delsarte_dominates_weaker_bounds() {
        for n in 4..=6usize {
            for q in [2u64, 3] {
                for d in 1..=diameter(n) {
                    let dels = delsarte_lp(q, n, d).unwrap().floored;
                    assert!(dels <= sphere_packing(q, n, d).unwrap(), "n={n} q={q} d={d}");
                    let k = code_anticode_dim(n, d).unwrap();
                    assert!(
                        dels <= BigUint::from(q).pow(k as u32),
                        "anticode dominance n={n} q={q} d={d}"
                    );
                }
            }
        }
    }
}
