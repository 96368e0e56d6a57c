//! Closed-form bounds on |Λ_p| and on the subtraction total `c`, checked
//! with integer arithmetic only.
//!
//! Every comparison against `√p` is moved to one side, signs are settled,
//! and both sides are squared. For a real `A` and `B ≥ 0`, `A < B·√p` is
//! `A·|A| < B²·p`. The signed square keeps the comparison monotone across
//! `A = 0`, so the same expression serves as the margin.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::residue_walk::LambdaProfile;

mod totient;

pub use totient::{totient_partial_sum, totient_sum_check, totients, TotientReport};

/// The main interval is a theorem for `p` above this value.
pub const THEOREM_RANGE_EXCLUSIVE_MIN: u64 = 1_000_000;
/// `c < (11/3)·p·√p` holds from here on.
pub const C_UPPER_RANGE_MIN: u64 = 17;
/// `c_{⌊p/18⌋} < (2/5)·p·√p + p` holds above this value.
pub const C18_RANGE_EXCLUSIVE_MIN: u64 = 256;
/// `c > (6/5)·p·√p − 16p` is asserted above this value.
pub const C_LOWER_RANGE_EXCLUSIVE_MIN: u64 = 1_000_000;

/// `24·|μ| ≤ p⁶ − 2p⁵ + 2p⁴ − 3p² + 2p` for every p-core p'-partition μ.
pub const MCSPIRIT_ONO: Polynomial = Polynomial {
    coefficients: [1, -2, 2, 0, -3, 2, 0],
    denominator: 24,
};

/// `24·|λ| ≤ p⁶ − 4p⁵ + 5p⁴ + 12p³ − 42p² + 52p − 24`.
pub const MCDOWELL_UPPER: Polynomial = Polynomial {
    coefficients: [1, -4, 5, 12, -42, 52, -24],
    denominator: 24,
};

/// Size of an explicit p-core p'-partition family:
/// `(p⁶ + 6p⁴ − 12p³ + 89p² − 120p − 48) / 96`.
pub const MCDOWELL_CONSTRUCTION: Polynomial = Polynomial {
    coefficients: [1, 0, 6, -12, 89, -120, -48],
    denominator: 96,
};

/// A degree-6 integer polynomial over a positive denominator. Coefficients
/// run from `p⁶` down to the constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Polynomial {
    pub coefficients: [i64; 7],
    pub denominator: u32,
}

impl Polynomial {
    /// Numerator at `p`, by Horner's rule.
    pub fn numerator(&self, p: u64) -> BigInt {
        let p = BigInt::from(p);
        self.coefficients
            .iter()
            .fold(BigInt::zero(), |acc, &c| acc * &p + c)
    }

    pub fn floor(&self, p: u64) -> BigInt {
        self.numerator(p).div_floor(&BigInt::from(self.denominator))
    }

    pub fn is_integral(&self, p: u64) -> bool {
        self.numerator(p)
            .is_multiple_of(&BigInt::from(self.denominator))
    }

    pub fn exact(&self, p: u64) -> BigRational {
        BigRational::new(self.numerator(p), BigInt::from(self.denominator))
    }
}

pub fn mcspirit_ono_bound(p: u64) -> BigInt {
    MCSPIRIT_ONO.floor(p)
}

pub fn mcdowell_upper(p: u64) -> BigInt {
    MCDOWELL_UPPER.floor(p)
}

pub fn mcdowell_construction_value(p: u64) -> BigRational {
    MCDOWELL_CONSTRUCTION.exact(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Applicability {
    /// A failure is a genuine violation.
    Asserted,
    /// Evaluated, but `p` lies outside the range where the statement is
    /// known to hold; never a failure.
    OutsideStatedRange,
    /// The statement has no meaning at this `p`.
    NotApplicable,
    /// Informational comparison only.
    ReportOnly,
}

impl Applicability {
    pub fn as_str(self) -> &'static str {
        match self {
            Applicability::Asserted => "asserted",
            Applicability::OutsideStatedRange => "outside-stated-range",
            Applicability::NotApplicable => "not-applicable",
            Applicability::ReportOnly => "report-only",
        }
    }
}

/// Outcome of one inequality.
///
/// For a strict inequality `holds ⇔ margin > 0`; otherwise `holds ⇔ margin ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub margin: BigInt,
    pub strict: bool,
    pub applicability: Applicability,
}

impl Verdict {
    pub fn strict(margin: BigInt, applicability: Applicability) -> Self {
        Verdict {
            holds: margin.is_positive(),
            margin,
            strict: true,
            applicability,
        }
    }

    pub fn non_strict(margin: BigInt, applicability: Applicability) -> Self {
        Verdict {
            holds: !margin.is_negative(),
            margin,
            strict: false,
            applicability,
        }
    }

    /// A structural check that passes iff nothing was counted against it.
    pub fn count(violations: u64, applicability: Applicability) -> Self {
        Verdict::non_strict(-BigInt::from(violations), applicability)
    }

    pub fn not_applicable() -> Self {
        Verdict::non_strict(BigInt::zero(), Applicability::NotApplicable)
    }

    pub fn failed(&self) -> bool {
        self.applicability == Applicability::Asserted && !self.holds
    }

    /// Margin sign agrees with the verdict.
    pub fn is_consistent(&self) -> bool {
        if self.strict {
            self.holds == self.margin.is_positive()
        } else {
            self.holds == !self.margin.is_negative()
        }
    }
}

fn signed_square(x: &BigInt) -> BigInt {
    x * x.abs()
}

fn asserted_if(condition: bool) -> Applicability {
    if condition {
        Applicability::Asserted
    } else {
        Applicability::OutsideStatedRange
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdicts {
    /// `p⁶/24 − p⁵√p < |Λ_p|`
    pub lower: Verdict,
    /// `|Λ_p| < p⁶/24 − p⁵√p/200`
    pub upper: Verdict,
}

/// Both sides of the main interval, with `L = p⁶ − 24·size`:
///
/// * lower ⇔ `L < 24·p⁵·√p` ⇔ `L·|L| < 576·p¹¹`
/// * upper ⇔ `25·L > 3·p⁵·√p` ⇔ `625·L·|L| > 9·p¹¹`
pub fn theorem_interval_check(p: u64, size: &BigInt) -> TheoremVerdicts {
    let pb = BigInt::from(p);
    let p5 = num_traits::pow(pb.clone(), 5);
    let p6 = &p5 * &pb;
    let p11 = &p5 * &p6;
    let gap = &p6 - size * 24;
    let gap_sq = signed_square(&gap);
    let applicability = asserted_if(p > THEOREM_RANGE_EXCLUSIVE_MIN);
    TheoremVerdicts {
        lower: Verdict::strict(&p11 * 576 - &gap_sq, applicability),
        upper: Verdict::strict(gap_sq * 625 - p11 * 9, applicability),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CBoundVerdicts {
    /// `c < (11/3)·p·√p` ⇔ `9c² < 121p³`
    pub upper: Verdict,
    /// `c > (6/5)·p·√p − 16p` ⇔ `(5c + 80p)² > 36p³`
    pub lower: Verdict,
    /// `c_k < (2/5)·p·√p + p`, `k = ⌊p/18⌋` ⇔ `25·(c_k − p)·|c_k − p| < 4p³`
    pub c18: Verdict,
}

pub fn c_bounds_check(profile: &LambdaProfile) -> CBoundVerdicts {
    let p = profile.p;
    let pb = BigInt::from(p);
    let p3 = &pb * &pb * &pb;
    let c = BigInt::from(profile.c);

    let upper = Verdict::strict(&p3 * 121 - &c * &c * 9, asserted_if(p >= C_UPPER_RANGE_MIN));

    let shifted = &c * 5 + &pb * 80;
    let lower = Verdict::strict(
        signed_square(&shifted) - &p3 * 36,
        asserted_if(p > C_LOWER_RANGE_EXCLUSIVE_MIN),
    );

    let k = p / 18;
    let c18 = if k == 0 {
        Verdict::not_applicable()
    } else {
        let excess = BigInt::from(profile.c_at(k)) - &pb;
        Verdict::strict(
            &p3 * 4 - signed_square(&excess) * 25,
            asserted_if(p > C18_RANGE_EXCLUSIVE_MIN),
        )
    };
    CBoundVerdicts { upper, lower, c18 }
}

/// `Σ b_i = ½p²(p−1) − ½pc − 1`, compared after doubling. The margin is
/// minus the absolute discrepancy.
pub fn sum_b_identity(profile: &LambdaProfile) -> Verdict {
    let p = BigInt::from(profile.p);
    let lhs: BigInt = profile.b.iter().map(|&b| BigInt::from(b)).sum::<BigInt>() * 2;
    let rhs: BigInt = &p * &p * (&p - 1) - &p * BigInt::from(profile.c) - 2;
    Verdict::non_strict(-(lhs - rhs).abs(), Applicability::Asserted)
}

/// Every bound evaluated for one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub p: u64,
    pub size: BigInt,
    pub theorem_lower: Verdict,
    pub theorem_upper: Verdict,
    /// `|Λ_p| ≤ ⌊MCDOWELL_UPPER⌋`
    pub eq1_upper: Verdict,
    /// `|Λ_p| ≤ ⌊MCSPIRIT_ONO⌋`
    pub mcspirit_ono_upper: Verdict,
    /// Margin `96·|Λ_p| − numerator(MCDOWELL_CONSTRUCTION)`; informational.
    pub construction_comparison: Verdict,
    pub c_upper: Verdict,
    pub c_lower: Verdict,
    pub c18: Verdict,
    pub notes: Vec<String>,
}

impl BoundsReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 8] {
        [
            ("theorem_lower", &self.theorem_lower),
            ("theorem_upper", &self.theorem_upper),
            ("eq1_upper", &self.eq1_upper),
            ("mcspirit_ono_upper", &self.mcspirit_ono_upper),
            ("construction_comparison", &self.construction_comparison),
            ("c_upper", &self.c_upper),
            ("c_lower", &self.c_lower),
            ("c18", &self.c18),
        ]
    }

    pub fn passed(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| !v.failed())
    }
}

pub fn bounds_report(profile: &LambdaProfile) -> BoundsReport {
    let p = profile.p;
    let size = profile.size.clone();
    let mut notes = Vec::new();
    for (name, poly) in [
        ("mcdowell_upper", MCDOWELL_UPPER),
        ("mcspirit_ono", MCSPIRIT_ONO),
    ] {
        if !poly.is_integral(p) {
            notes.push(format!(
                "{name} is not an integer at p = {p}; using its floor"
            ));
        }
    }
    let TheoremVerdicts { lower, upper } = theorem_interval_check(p, &size);
    let CBoundVerdicts {
        upper: c_upper,
        lower: c_lower,
        c18,
    } = c_bounds_check(profile);
    BoundsReport {
        p,
        theorem_lower: lower,
        theorem_upper: upper,
        eq1_upper: Verdict::non_strict(mcdowell_upper(p) - &size, Applicability::Asserted),
        mcspirit_ono_upper: Verdict::non_strict(
            mcspirit_ono_bound(p) - &size,
            Applicability::Asserted,
        ),
        construction_comparison: Verdict::non_strict(
            &size * 96 - MCDOWELL_CONSTRUCTION.numerator(p),
            Applicability::ReportOnly,
        ),
        c_upper,
        c_lower,
        c18,
        size,
        notes,
    }
}

/// `numerator / denominator` truncated to `digits` decimals by long
/// division. Both arguments must be nonnegative and the denominator nonzero.
pub fn decimal_expansion(numerator: &BigInt, denominator: &BigInt, digits: usize) -> String {
    assert!(!numerator.is_negative() && denominator.is_positive());
    let (whole, mut rest) = numerator.div_rem(denominator);
    let mut out = whole.to_string();
    if digits > 0 {
        out.push('.');
        for _ in 0..digits {
            rest *= 10;
            let (digit, next) = rest.div_rem(denominator);
            out.push_str(&digit.to_string());
            rest = next;
        }
    }
    out
}

/// `24·|Λ_p| / p⁶` to twelve decimals.
pub fn ratio_24size_p6(p: u64, size: &BigInt) -> String {
    let p6 = num_traits::pow(BigInt::from(p), 6);
    decimal_expansion(&(size * 24), &p6, 12)
}
