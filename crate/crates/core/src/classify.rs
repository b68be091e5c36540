//! Closed-form criteria deciding whether the flow keeps `Ric > 0`.
//!
//! For a triple `a` with `theta = a1 + a2 + a3 - 1/2`:
//!
//! * `theta >= max_i theta_i(a_i)` forces every trajectory starting in the
//!   positive region to stay there;
//! * `a1 + a2 + a3 < 1/2` guarantees that some trajectories leave it;
//! * for equal parameters the picture is complete: all metrics lose
//!   positivity below `1/6`, some keep it on `[1/6, a*)`, all keep it from
//!   `a*` on, where `a*` is the real root of `32a^3 + 16a^2 + 2a - 1`.
//!
//! Anything else is reported as [`VerdictKind::Indeterminate`].

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{make_space, FamilySpec, SpaceParams};
use crate::error::{Error, Result};

/// Absolute tolerance for `theta` comparisons; ties go to the preserving side.
pub const THETA_TOL: f64 = 1e-12;

/// `theta_i(a) = a - 1/2 + (1/2) sqrt((1 - 2a) / (1 + 2a))` on `[0, 1/2]`.
/// Vanishes at both endpoints and stays below `1/6` in between.
pub fn theta_i(a: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&a) {
        return Err(Error::Domain {
            what: "theta_i",
            value: a,
            domain: "[0, 1/2]",
        });
    }
    Ok(a - 0.5 + 0.5 * ((1.0 - 2.0 * a) / (1.0 + 2.0 * a)).sqrt())
}

/// `[theta_1(a1), theta_2(a2), theta_3(a3)]`.
pub fn theta_components(a: &SpaceParams) -> [f64; 3] {
    // SpaceParams guarantees (0, 1/2]
    a.as_array().map(|ai| theta_i(ai).expect("validated parameter"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PreserveCheck {
    pub holds: bool,
    /// `4 (1 + 2 a_i) (a_j + a_k)^2 - (1 - 2 a_i)` for `i = 1, 2, 3`.
    pub residuals: [f64; 3],
}

/// The polynomial form of `theta >= theta_i` for each `i`.
pub fn preserve_inequalities(a: &SpaceParams) -> PreserveCheck {
    let v = a.as_array();
    let residuals = [0, 1, 2].map(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let s = v[j] + v[k];
        4.0 * (1.0 + 2.0 * v[i]) * s * s - (1.0 - 2.0 * v[i])
    });
    PreserveCheck {
        holds: residuals.iter().all(|&r| r >= 0.0),
        residuals,
    }
}

/// `a* = (mu - 1)^2 / (12 mu)`, `mu = cbrt(28 + 3 sqrt(87))`.
pub fn a_star_exact() -> f64 {
    let mu = (28.0 + 3.0 * 87f64.sqrt()).cbrt();
    (mu - 1.0) * (mu - 1.0) / (12.0 * mu)
}

/// `h(a) = 32a^3 + 16a^2 + 2a - 1`.
pub fn equal_threshold_poly(a: f64) -> f64 {
    ((32.0 * a + 16.0) * a + 2.0) * a - 1.0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubicRoots {
    /// Distinct real roots in ascending order.
    pub roots: Vec<f64>,
    /// `18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2`: negative for one
    /// real root, positive for three, zero for a repeated root.
    pub discriminant: f64,
}

/// Real roots of `c3 t^3 + c2 t^2 + c1 t + c0` by Cardano / the trigonometric
/// form, each polished with Newton's method on the original polynomial.
pub fn real_roots_cubic(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<CubicRoots> {
    if c3 == 0.0 || !c3.is_finite() {
        return Err(Error::DegenerateCubic);
    }
    let discriminant = 18.0 * c3 * c2 * c1 * c0 - 4.0 * c2.powi(3) * c0 + c2 * c2 * c1 * c1
        - 4.0 * c3 * c1.powi(3)
        - 27.0 * c3 * c3 * c0 * c0;

    let (b, c, d) = (c2 / c3, c1 / c3, c0 / c3);
    // t = s - b/3 gives s^3 + p s + q = 0
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b.powi(3) / 27.0 - b * c / 3.0 + d;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);

    let mut raw = Vec::with_capacity(3);
    if disc > 0.0 {
        // pick the sign that avoids cancellation, recover the other cube root
        // from u v = -p/3
        let u = (-q / 2.0 - q.signum() * disc.sqrt()).cbrt();
        let v = if u != 0.0 { -p / (3.0 * u) } else { 0.0 };
        raw.push(u + v - shift);
    } else if p == 0.0 {
        raw.push(-shift);
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        for k in 0..3 {
            raw.push(m * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - shift);
        }
    }

    let poly = |t: f64| ((c3 * t + c2) * t + c1) * t + c0;
    let dpoly = |t: f64| (3.0 * c3 * t + 2.0 * c2) * t + c1;
    let mut roots: Vec<f64> = raw
        .into_iter()
        .map(|mut t| {
            for _ in 0..60 {
                let (f, df) = (poly(t), dpoly(t));
                if f == 0.0 || df == 0.0 {
                    break;
                }
                let next = t - f / df;
                // only accept steps that do not make the residual worse
                if poly(next).abs() > f.abs() {
                    break;
                }
                if next == t {
                    break;
                }
                t = next;
            }
            t
        })
        .collect();
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-9 * (1.0 + y.abs()));
    Ok(CubicRoots { roots, discriminant })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    AllLose,
    SomeLose,
    SomePreserve,
    AllPreserve,
    Indeterminate,
}

/// Which criterion produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Equal parameters, `a < 1/6`.
    EqualBelowSixth,
    /// Equal parameters, `1/6 <= a < a*`.
    EqualBetween,
    /// Equal parameters, `a >= a*`.
    EqualAboveThreshold,
    /// `theta >= max theta_i`.
    ThetaDominates,
    /// `a1 + a2 + a3 < 1/2`.
    SumBelowHalf,
    /// `a1 + a2 + a3 = 1/2`, classified only with the conjecture enabled.
    SumAtHalfConjecture,
    /// No criterion applies.
    Open,
}

impl Rule {
    pub fn describe(self) -> &'static str {
        match self {
            Rule::EqualBelowSixth => "equal parameters with a < 1/6: every metric with Ric>0 loses it",
            Rule::EqualBetween => "equal parameters with 1/6 <= a < a*: some metrics keep Ric>0",
            Rule::EqualAboveThreshold => "equal parameters with a >= a*: every metric keeps Ric>0",
            Rule::ThetaDominates => "theta >= max theta_i: every metric keeps Ric>0",
            Rule::SumBelowHalf => {
                "a1+a2+a3 < 1/2: some metrics lose Ric>0 (that all of them do is conjectured, not proven)"
            }
            Rule::SumAtHalfConjecture => {
                "a1+a2+a3 = 1/2: some metrics lose Ric>0 under the conjectured extension of the strict-sum criterion"
            }
            Rule::Open => "0 <= theta < max theta_i with distinct parameters: no criterion applies",
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Treat `a1 + a2 + a3 = 1/2` like the strict inequality.
    pub conjecture: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    #[serde(serialize_with = "serialize_rule")]
    pub rule: Rule,
    pub theta: f64,
    pub theta_i: [f64; 3],
    pub a_star: f64,
    /// The common parameter, when the equal-parameter criterion fired.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
}

fn serialize_rule<S: serde::Serializer>(rule: &Rule, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(rule.describe())
}

impl Verdict {
    /// Recomputes the kind from the stored certificates alone.
    pub fn rederive(&self) -> VerdictKind {
        if let Some(a) = self.a {
            return equal_kind(a, self.a_star).0;
        }
        let max_theta_i = self.theta_i.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if self.theta >= max_theta_i - THETA_TOL {
            VerdictKind::AllPreserve
        } else if self.theta < -THETA_TOL || self.rule == Rule::SumAtHalfConjecture {
            VerdictKind::SomeLose
        } else {
            VerdictKind::Indeterminate
        }
    }
}

fn equal_kind(a: f64, a_star: f64) -> (VerdictKind, Rule) {
    if a < 1.0 / 6.0 - THETA_TOL {
        (VerdictKind::AllLose, Rule::EqualBelowSixth)
    } else if a < a_star - THETA_TOL {
        (VerdictKind::SomePreserve, Rule::EqualBetween)
    } else {
        (VerdictKind::AllPreserve, Rule::EqualAboveThreshold)
    }
}

fn check_open(a: f64, what: &'static str) -> Result<()> {
    if a > 0.0 && a < 0.5 {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: a,
            domain: "(0, 1/2)",
        })
    }
}

/// Trichotomy for `a1 = a2 = a3 = a`.
pub fn classify_equal(a: f64) -> Result<Verdict> {
    check_open(a, "classify_equal")?;
    let a_star = a_star_exact();
    let (kind, rule) = equal_kind(a, a_star);
    let t = theta_i(a)?;
    Ok(Verdict {
        kind,
        rule,
        theta: 3.0 * a - 0.5,
        theta_i: [t; 3],
        a_star,
        a: Some(a),
    })
}

/// Applies the general criteria, delegating to [`classify_equal`] when the
/// three parameters coincide.
pub fn classify_general(a: &SpaceParams, opts: ClassifyOptions) -> Result<Verdict> {
    for v in a.as_array() {
        check_open(v, "classify_general")?;
    }
    if a.is_equal() {
        return classify_equal(a.a1());
    }
    let theta = a.theta();
    let theta_i = theta_components(a);
    let max_theta_i = theta_i.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (kind, rule) = if theta >= max_theta_i - THETA_TOL {
        (VerdictKind::AllPreserve, Rule::ThetaDominates)
    } else if theta < -THETA_TOL {
        (VerdictKind::SomeLose, Rule::SumBelowHalf)
    } else if opts.conjecture && theta <= THETA_TOL {
        (VerdictKind::SomeLose, Rule::SumAtHalfConjecture)
    } else {
        (VerdictKind::Indeterminate, Rule::Open)
    };
    Ok(Verdict {
        kind,
        rule,
        theta,
        theta_i,
        a_star: a_star_exact(),
        a: None,
    })
}

/// Upper bound `32 eps^2 / (1 - 16 eps^2)` on `t` in [`partial_solutions`].
pub fn partial_solution_t_bound(eps: f64) -> Option<f64> {
    let e2 = eps * eps;
    (eps > 0.0 && 16.0 * e2 < 1.0).then(|| 32.0 * e2 / (1.0 - 16.0 * e2))
}

/// The explicit family `a1 = a2 = eps (t + 1)`,
/// `a3 = (1 - 16 eps^2) / (2 (1 + 16 eps^2)) (t + 1)`. The result is checked
/// against the cube and against [`preserve_inequalities`] directly, since
/// the admissible range of `eps` is not known in closed form.
pub fn partial_solutions(eps: f64, t: f64) -> Result<SpaceParams> {
    let bound = partial_solution_t_bound(eps).ok_or(Error::Domain {
        what: "partial_solutions eps",
        value: eps,
        domain: "(0, 1/4)",
    })?;
    if !(t > 0.0 && t < bound) {
        return Err(Error::Domain {
            what: "partial_solutions t",
            value: t,
            domain: "(0, 32 eps^2 / (1 - 16 eps^2))",
        });
    }
    let e2 = eps * eps;
    let s = t + 1.0;
    let a12 = eps * s;
    let a3 = (1.0 - 16.0 * e2) / (2.0 * (1.0 + 16.0 * e2)) * s;
    let params = SpaceParams::new(a12, a12, a3)?;
    if !params.in_open_cube() {
        return Err(Error::Domain {
            what: "partial_solutions result",
            value: a3.max(a12),
            domain: "(0, 1/2)",
        });
    }
    if !preserve_inequalities(&params).holds {
        return Err(Error::Domain {
            what: "partial_solutions eps (inequalities fail)",
            value: eps,
            domain: "eps small enough for all three inequalities",
        });
    }
    Ok(params)
}

/// Instances to enumerate in [`family_scan`]. Ranges are inclusive; empty
/// ranges yield no instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanRange {
    /// `k = l = m` over the range (rows 1-3).
    EqualK(RangeInclusive<u32>),
    /// All `k >= l >= m` with each index in its range (rows 1-3).
    Triples {
        k: RangeInclusive<u32>,
        l: RangeInclusive<u32>,
        m: RangeInclusive<u32>,
    },
    /// Single parameter `l` (rows 4-5).
    L(RangeInclusive<u32>),
    /// The parameterless rows 6-15.
    Fixed,
}

impl ScanRange {
    pub fn instances(&self, row: u8) -> Result<Vec<FamilySpec>> {
        let specs = match (row, self) {
            (1..=3, ScanRange::EqualK(ks)) => ks
                .clone()
                .map(|k| FamilySpec::from_row(row, Some(k), Some(k), Some(k)))
                .collect::<Result<Vec<_>>>()?,
            (1..=3, ScanRange::Triples { k, l, m }) => {
                let mut out = Vec::new();
                for kk in k.clone() {
                    for ll in l.clone().filter(|&ll| ll <= kk) {
                        for mm in m.clone().filter(|&mm| mm >= 1 && mm <= ll) {
                            out.push(FamilySpec::from_row(row, Some(kk), Some(ll), Some(mm))?);
                        }
                    }
                }
                out
            }
            (4..=5, ScanRange::L(ls)) => ls
                .clone()
                .map(|l| FamilySpec::from_row(row, None, Some(l), None))
                .collect::<Result<Vec<_>>>()?,
            (6..=15, ScanRange::Fixed) => vec![FamilySpec::from_row(row, None, None, None)?],
            _ => {
                return Err(Error::InvalidFamily {
                    row,
                    reason: format!("scan range {self:?} does not apply to this row"),
                })
            }
        };
        Ok(specs)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanEntry {
    pub family: u8,
    pub spec: String,
    pub params: Option<SpaceParams>,
    pub verdict: Option<Verdict>,
    /// Why no verdict was produced (e.g. a parameter equal to 1/2).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl ScanEntry {
    pub fn kind(&self) -> Option<VerdictKind> {
        self.verdict.map(|v| v.kind)
    }
}

/// Classifies every instance of `row` in `range`, in enumeration order.
pub fn family_scan(row: u8, range: &ScanRange, opts: ClassifyOptions) -> Result<Vec<ScanEntry>> {
    let specs = range.instances(row)?;
    Ok(specs
        .par_iter()
        .map(|&spec| {
            let base = ScanEntry {
                family: spec.row(),
                spec: spec.to_string(),
                params: None,
                verdict: None,
                skipped: None,
            };
            let params = match make_space(spec) {
                Ok(p) => p,
                Err(e) => {
                    return ScanEntry {
                        skipped: Some(e.to_string()),
                        ..base
                    }
                }
            };
            match classify_general(&params, opts) {
                Ok(v) => ScanEntry {
                    params: Some(params),
                    verdict: Some(v),
                    ..base
                },
                Err(e) => ScanEntry {
                    params: Some(params),
                    skipped: Some(e.to_string()),
                    ..base
                },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn theta_i_values() {
        assert_eq!(theta_i(0.0).unwrap(), 0.0);
        assert_eq!(theta_i(0.5).unwrap(), 0.0);
        assert!(theta_i(1e-12).unwrap().abs() < 1e-11);
        assert!(theta_i(0.5 - 1e-12).unwrap().abs() < 1e-5);
        let expect = -1.0 / 3.0 + 0.5 * 0.5f64.sqrt();
        assert_relative_eq!(theta_i(1.0 / 6.0).unwrap(), expect, epsilon = 1e-15);
        assert_relative_eq!(expect, 0.02022, epsilon = 1e-5);
        assert_relative_eq!(theta_i(0.4196).unwrap(), 0.0674, epsilon = 1e-4);
        assert!(theta_i(-0.1).is_err());
        assert!(theta_i(0.6).is_err());
        assert!(theta_i(f64::NAN).is_err());
    }

    #[test]
    fn preserve_examples() {
        let row4 = SpaceParams::new(0.375, 0.125, 0.25).unwrap();
        assert!(preserve_inequalities(&row4).holds);
        let row3 = SpaceParams::equal(0.125).unwrap();
        let chk = preserve_inequalities(&row3);
        assert!(!chk.holds);
        // 4 (1 + 1/4) (1/4)^2 - 3/4 = 5/16 - 12/16
        for r in chk.residuals {
            assert_relative_eq!(r, -7.0 / 16.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn a_star_value() {
        let a = a_star_exact();
        assert!((a - 0.1739051924).abs() < 1e-9);
        assert!(equal_threshold_poly(a).abs() < 1e-12);
        assert!(1.0 / 6.0 < a && a < 0.25);
        assert_relative_eq!(equal_threshold_poly(1.0 / 6.0), -2.0 / 27.0, epsilon = 1e-15);
        assert_eq!(equal_threshold_poly(0.25), 1.0);
    }

    #[test]
    fn cubic_threshold_poly() {
        let c = real_roots_cubic(32.0, 16.0, 2.0, -1.0).unwrap();
        assert_eq!(c.roots.len(), 1);
        assert!(c.discriminant < 0.0);
        assert!((c.roots[0] - a_star_exact()).abs() < 1e-12);
    }

    #[test]
    fn cubic_theta_max_poly() {
        let c = real_roots_cubic(4.0, 4.0, 0.0, -1.0).unwrap();
        assert_eq!(c.roots.len(), 1);
        assert!(c.roots[0] > 0.4 && c.roots[0] < 0.5);
        assert!((c.roots[0] - 0.4196).abs() < 1e-4);
    }

    #[test]
    fn cubic_theta_bound_poly() {
        let c = real_roots_cubic(-72.0, 60.0, -2.0, -7.0).unwrap();
        assert!(c.discriminant < 0.0);
        assert_eq!(c.roots.len(), 1);
        assert!(c.roots[0] < 0.0);
    }

    #[test]
    fn cubic_three_and_repeated_roots() {
        // (t - 1)(t - 2)(t + 3) = t^3 - 7t + 6
        let c = real_roots_cubic(1.0, 0.0, -7.0, 6.0).unwrap();
        assert!(c.discriminant > 0.0);
        assert_eq!(c.roots.len(), 3);
        for (r, e) in c.roots.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((r - e).abs() < 1e-13);
        }
        // (t - 1)^2 (t + 2) = t^3 - 3t + 2
        let c = real_roots_cubic(1.0, 0.0, -3.0, 2.0).unwrap();
        assert_eq!(c.discriminant, 0.0);
        assert_eq!(c.roots.len(), 2);
        assert!((c.roots[0] + 2.0).abs() < 1e-12 && (c.roots[1] - 1.0).abs() < 1e-7);
        // t^3
        let c = real_roots_cubic(2.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(c.roots, vec![0.0]);
        assert!(matches!(
            real_roots_cubic(0.0, 1.0, 1.0, 1.0),
            Err(Error::DegenerateCubic)
        ));
    }

    #[test]
    fn equal_trichotomy() {
        for k in 1..50u32 {
            let a = k as f64 / (6 * k + 2) as f64;
            assert_eq!(classify_equal(a).unwrap().kind, VerdictKind::AllLose);
        }
        assert_eq!(classify_equal(4.0 / 23.0).unwrap().kind, VerdictKind::AllPreserve);
        let v = classify_equal(25.0 / 146.0).unwrap();
        assert_eq!(v.kind, VerdictKind::SomePreserve);
        assert_eq!(v.a, Some(25.0 / 146.0));
        let a = a_star_exact();
        assert_eq!(classify_equal(a - 1e-9).unwrap().kind, VerdictKind::SomePreserve);
        assert_eq!(classify_equal(a + 1e-9).unwrap().kind, VerdictKind::AllPreserve);
        assert!(classify_equal(0.5).is_err());
        assert!(classify_equal(0.0).is_err());
    }

    #[test]
    fn general_examples() {
        let opts = ClassifyOptions::default();
        for (k, l, m) in [(2, 1, 1), (3, 2, 1), (5, 5, 2), (9, 4, 4)] {
            let a = make_space(FamilySpec::Symplectic { k, l, m }).unwrap();
            let v = classify_general(&a, opts).unwrap();
            assert_eq!(v.kind, VerdictKind::SomeLose, "({k},{l},{m})");
            assert_eq!(v.rule, Rule::SumBelowHalf);
        }
        // equal k = l = m delegates to the sharper equal-parameter rule
        let a = make_space(FamilySpec::Symplectic { k: 2, l: 2, m: 2 }).unwrap();
        assert_eq!(classify_general(&a, opts).unwrap().kind, VerdictKind::AllLose);

        let a = SpaceParams::new(0.23, 0.31, 0.49).unwrap();
        assert_eq!(classify_general(&a, opts).unwrap().kind, VerdictKind::AllPreserve);

        let a = SpaceParams::new(0.2, 0.2, 0.11).unwrap();
        let v = classify_general(&a, opts).unwrap();
        assert_relative_eq!(v.theta, 0.01, epsilon = 1e-15);
        assert!(v.theta_i[0] > 0.01 && v.theta_i[2] < 0.01);
        assert_eq!(v.kind, VerdictKind::Indeterminate);
        assert_eq!(v.rederive(), v.kind);

        assert!(classify_general(&SpaceParams::new(0.5, 0.25, 0.25).unwrap(), opts).is_err());
    }

    #[test]
    fn sum_at_half_needs_conjecture() {
        let a = make_space(FamilySpec::Unitary { k: 3, l: 2, m: 1 }).unwrap();
        assert_eq!(a.theta(), 0.0);
        let v = classify_general(&a, ClassifyOptions::default()).unwrap();
        assert_eq!(v.kind, VerdictKind::Indeterminate);
        let v = classify_general(&a, ClassifyOptions { conjecture: true }).unwrap();
        assert_eq!(v.kind, VerdictKind::SomeLose);
        assert_eq!(v.rule, Rule::SumAtHalfConjecture);
        assert_eq!(v.rederive(), VerdictKind::SomeLose);
    }

    #[test]
    fn verdict_json() {
        let v = classify_equal(1.0 / 9.0).unwrap();
        let j = serde_json::to_value(v).unwrap();
        assert_eq!(j["kind"], "AllLose");
        assert!(j["rule"].as_str().unwrap().contains("1/6"));
        assert_eq!(j["theta_i"].as_array().unwrap().len(), 3);
        assert!(j["a_star"].as_f64().is_some());
        assert!(j["theta"].as_f64().is_some());
    }

    #[test]
    fn partial_solution_example() {
        let bound = partial_solution_t_bound(0.1).unwrap();
        assert_relative_eq!(bound, 0.32 / 0.84, epsilon = 1e-15);
        assert_relative_eq!(bound, 0.38095, epsilon = 1e-5);
        let a = partial_solutions(0.1, 0.1).unwrap();
        assert_relative_eq!(a.a1(), 0.11, epsilon = 1e-15);
        assert_relative_eq!(a.a2(), 0.11, epsilon = 1e-15);
        assert_relative_eq!(a.a3(), 0.84 / 2.32 * 1.1, epsilon = 1e-15);
        assert_relative_eq!(a.a3(), 0.398276, epsilon = 1e-6);
        let chk = preserve_inequalities(&a);
        assert!(chk.holds && chk.residuals.iter().all(|&r| r > 0.0));
        assert!(partial_solutions(0.1, 0.5).is_err());
        assert!(partial_solutions(0.1, 0.0).is_err());
        assert!(partial_solutions(0.3, 0.01).is_err());
    }

    #[test]
    #[allow(clippy::reversed_empty_ranges)]
    fn scan_rows() {
        let opts = ClassifyOptions::default();
        let entries = family_scan(1, &ScanRange::EqualK(2..=25), opts).unwrap();
        assert_eq!(entries.len(), 24);
        for e in &entries {
            let k = e.params.unwrap().a1();
            let expect = if k >= a_star_exact() {
                VerdictKind::AllPreserve
            } else {
                VerdictKind::SomePreserve
            };
            assert_eq!(e.kind(), Some(expect), "{}", e.spec);
        }
        for row in [9, 11, 13] {
            let e = &family_scan(row, &ScanRange::Fixed, opts).unwrap()[0];
            assert_eq!(e.kind(), Some(VerdictKind::AllPreserve));
        }
        assert!(family_scan(1, &ScanRange::EqualK(5..=4), opts).unwrap().is_empty());
        assert!(family_scan(4, &ScanRange::EqualK(1..=2), opts).is_err());

        let triples = ScanRange::Triples {
            k: 1..=3,
            l: 1..=3,
            m: 1..=3,
        };
        let entries = family_scan(1, &triples, opts).unwrap();
        assert_eq!(entries.len(), 10);
        // (1,1,1), (2,1,1), (3,1,1) have a1 = 1/2: outside the open cube
        assert_eq!(entries.iter().filter(|e| e.skipped.is_some()).count(), 3);
    }
}
