//! Parameter triples of the generalized Wallach spaces with simple `G`.
//!
//! Every space in the list is described by `(a1, a2, a3)` in `(0, 1/2]^3`;
//! the dynamics below depend on nothing else. Rows 1-3 carry integer
//! parameters `k >= l >= m >= 1`, rows 4-5 a single `l`, rows 6-15 are fixed.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Admissible parameter triple together with `theta = a1 + a2 + a3 - 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpaceParams {
    a1: f64,
    a2: f64,
    a3: f64,
    theta: f64,
}

impl SpaceParams {
    /// Validates each component against `(0, 1/2]`.
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        for (i, &v) in [a1, a2, a3].iter().enumerate() {
            // written so that NaN fails too
            if !(v > 0.0 && v <= 0.5) {
                return Err(Error::ParamOutOfRange { index: i + 1, value: v });
            }
        }
        Ok(Self {
            a1,
            a2,
            a3,
            theta: a1 + a2 + a3 - 0.5,
        })
    }

    /// All three parameters equal to `a`.
    pub fn equal(a: f64) -> Result<Self> {
        Self::new(a, a, a)
    }

    fn from_rationals(num: [u64; 3], den: u64) -> Self {
        let to_f = |n: u64| n as f64 / den as f64;
        // theta = (2 (n1 + n2 + n3) - den) / (2 den), evaluated from integers
        let twice_sum = 2 * (num[0] + num[1] + num[2]) as i64;
        let theta = (twice_sum - den as i64) as f64 / (2 * den) as f64;
        Self {
            a1: to_f(num[0]),
            a2: to_f(num[1]),
            a3: to_f(num[2]),
            theta,
        }
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn a3(&self) -> f64 {
        self.a3
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `1/a1 + 1/a2 + 1/a3`, the total weight of the first integral.
    pub fn weight_sum(&self) -> f64 {
        1.0 / self.a1 + 1.0 / self.a2 + 1.0 / self.a3
    }

    /// Whether the triple lies in the open cube `(0, 1/2)^3`, which the
    /// closed-form classification criteria require.
    pub fn in_open_cube(&self) -> bool {
        self.as_array().iter().all(|&a| a < 0.5)
    }

    /// Whether all three parameters coincide (exactly, as floats).
    pub fn is_equal(&self) -> bool {
        self.a1 == self.a2 && self.a2 == self.a3
    }

    /// Parameters permuted so that component `i` of the result is component
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let a = self.as_array();
        Self {
            a1: a[perm[0]],
            a2: a[perm[1]],
            a3: a[perm[2]],
            theta: self.theta,
        }
    }
}

/// Validation result for a free triple; see [`validate_params`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Validated {
    pub params: SpaceParams,
    pub open_cube: bool,
}

/// Accepts `(a1, a2, a3)` iff every component lies in `(0, 1/2]`, and flags
/// membership in the open cube.
pub fn validate_params(a1: f64, a2: f64, a3: f64) -> Result<Validated> {
    let params = SpaceParams::new(a1, a2, a3)?;
    Ok(Validated {
        open_cube: params.in_open_cube(),
        params,
    })
}

/// One row of the table of generalized Wallach spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// Row 1: `so(k+l+m) / so(k)+so(l)+so(m)`.
    Orthogonal { k: u32, l: u32, m: u32 },
    /// Row 2: `su(k+l+m) / su(k)+su(l)+su(m)`.
    Unitary { k: u32, l: u32, m: u32 },
    /// Row 3: `sp(k+l+m) / sp(k)+sp(l)+sp(m)`.
    Symplectic { k: u32, l: u32, m: u32 },
    /// Row 4: `su(2l) / u(l)`, `l >= 2`.
    UnitaryHermitian { l: u32 },
    /// Row 5: `so(2l) / u(1)+u(l-1)`, `l >= 4`.
    OrthogonalHermitian { l: u32 },
    /// Rows 6-15: exceptional Lie algebras, no parameters.
    Exceptional(u8),
}

pub const ROW_COUNT: u8 = 15;

/// Rows 6..=15: `(numerators, common denominator)` and the pair of algebras.
const FIXED_ROWS: [([u64; 3], u64, &str, &str); 10] = [
    ([6, 6, 4], 24, "e6", "su(4)+2sp(1)+R"),
    ([1, 1, 1], 6, "e6", "so(8)+R^2"),
    ([6, 3, 7], 24, "e6", "sp(3)+sp(1)"),
    ([4, 4, 4], 18, "e7", "so(8)+3sp(1)"),
    ([4, 3, 5], 18, "e7", "su(6)+sp(1)+R"),
    ([5, 5, 5], 18, "e7", "so(8)"),
    ([3, 3, 4], 15, "e8", "so(12)+2sp(1)"),
    ([4, 4, 4], 15, "e8", "so(8)+so(8)"),
    ([5, 5, 2], 18, "f4", "so(5)+2sp(1)"),
    ([1, 1, 1], 9, "f4", "so(8)"),
];

impl FamilySpec {
    /// Builds a spec from a row number and whichever integer parameters that
    /// row needs. `l` is shared between the `(k, l, m)` rows and rows 4-5.
    pub fn from_row(row: u8, k: Option<u32>, l: Option<u32>, m: Option<u32>) -> Result<Self> {
        let missing = |name: &str| Error::InvalidFamily {
            row,
            reason: format!("parameter {name} is required"),
        };
        let spec = match row {
            1..=3 => {
                let k = k.ok_or_else(|| missing("k"))?;
                let l = l.ok_or_else(|| missing("l"))?;
                let m = m.ok_or_else(|| missing("m"))?;
                match row {
                    1 => FamilySpec::Orthogonal { k, l, m },
                    2 => FamilySpec::Unitary { k, l, m },
                    _ => FamilySpec::Symplectic { k, l, m },
                }
            }
            4 => FamilySpec::UnitaryHermitian {
                l: l.ok_or_else(|| missing("l"))?,
            },
            5 => FamilySpec::OrthogonalHermitian {
                l: l.ok_or_else(|| missing("l"))?,
            },
            6..=15 => FamilySpec::Exceptional(row),
            _ => {
                return Err(Error::InvalidFamily {
                    row,
                    reason: format!("rows are numbered 1..={ROW_COUNT}"),
                })
            }
        };
        spec.check()?;
        Ok(spec)
    }

    /// Row 1 with `k = l = m`.
    pub fn orthogonal_equal(k: u32) -> Self {
        FamilySpec::Orthogonal { k, l: k, m: k }
    }

    pub fn row(&self) -> u8 {
        match *self {
            FamilySpec::Orthogonal { .. } => 1,
            FamilySpec::Unitary { .. } => 2,
            FamilySpec::Symplectic { .. } => 3,
            FamilySpec::UnitaryHermitian { .. } => 4,
            FamilySpec::OrthogonalHermitian { .. } => 5,
            FamilySpec::Exceptional(row) => row,
        }
    }

    /// `(g, h)` as printed in the table.
    pub fn algebras(&self) -> (&'static str, &'static str) {
        match *self {
            FamilySpec::Orthogonal { .. } => ("so(k+l+m)", "so(k)+so(l)+so(m)"),
            FamilySpec::Unitary { .. } => ("su(k+l+m)", "su(k)+su(l)+su(m)"),
            FamilySpec::Symplectic { .. } => ("sp(k+l+m)", "sp(k)+sp(l)+sp(m)"),
            FamilySpec::UnitaryHermitian { .. } => ("su(2l)", "u(l)"),
            FamilySpec::OrthogonalHermitian { .. } => ("so(2l)", "u(1)+u(l-1)"),
            FamilySpec::Exceptional(row) => {
                let (_, _, g, h) = FIXED_ROWS[(row - 6) as usize];
                (g, h)
            }
        }
    }

    /// Closed-form `(a1, a2, a3, theta)` column text of the table.
    pub fn formula(row: u8) -> Option<[&'static str; 4]> {
        Some(match row {
            1 => ["k/(2(k+l+m-2))", "l/(2(k+l+m-2))", "m/(2(k+l+m-2))", "1/(k+l+m-2)"],
            2 => ["k/(2(k+l+m))", "l/(2(k+l+m))", "m/(2(k+l+m))", "0"],
            3 => ["k/(2(k+l+m+1))", "l/(2(k+l+m+1))", "m/(2(k+l+m+1))", "-1/(2(k+l+m+1))"],
            4 => ["(l+1)/(4l)", "(l-1)/(4l)", "1/4", "1/4"],
            5 => ["(l-2)/(4(l-1))", "(l-2)/(4(l-1))", "1/(2(l-1))", "0"],
            _ => return None,
        })
    }

    /// Integer parameters, for serialization.
    pub fn int_params(&self) -> IntParams {
        match *self {
            FamilySpec::Orthogonal { k, l, m }
            | FamilySpec::Unitary { k, l, m }
            | FamilySpec::Symplectic { k, l, m } => IntParams {
                k: Some(k),
                l: Some(l),
                m: Some(m),
            },
            FamilySpec::UnitaryHermitian { l } | FamilySpec::OrthogonalHermitian { l } => IntParams {
                l: Some(l),
                ..IntParams::default()
            },
            FamilySpec::Exceptional(_) => IntParams::default(),
        }
    }

    fn check(&self) -> Result<()> {
        let fail = |reason: String| {
            Err(Error::InvalidFamily {
                row: self.row(),
                reason,
            })
        };
        match *self {
            FamilySpec::Orthogonal { k, l, m }
            | FamilySpec::Unitary { k, l, m }
            | FamilySpec::Symplectic { k, l, m } => {
                if m < 1 {
                    return fail(format!("m = {m} must be at least 1"));
                }
                if !(k >= l && l >= m) {
                    return fail(format!("expected k >= l >= m, got ({k}, {l}, {m})"));
                }
                Ok(())
            }
            FamilySpec::UnitaryHermitian { l } if l < 2 => fail(format!("l = {l} but the row requires l >= 2")),
            FamilySpec::OrthogonalHermitian { l } if l < 4 => fail(format!("l = {l} but the row requires l >= 4")),
            FamilySpec::Exceptional(row) if !(6..=ROW_COUNT).contains(&row) => {
                fail("exceptional rows are 6..=15".to_string())
            }
            _ => Ok(()),
        }
    }

    fn rationals(&self) -> ([u64; 3], u64) {
        match *self {
            FamilySpec::Orthogonal { k, l, m } => ([k, l, m].map(u64::from), 2 * (u64::from(k + l + m) - 2)),
            FamilySpec::Unitary { k, l, m } => ([k, l, m].map(u64::from), 2 * u64::from(k + l + m)),
            FamilySpec::Symplectic { k, l, m } => ([k, l, m].map(u64::from), 2 * (u64::from(k + l + m) + 1)),
            FamilySpec::UnitaryHermitian { l } => {
                let l = u64::from(l);
                ([l + 1, l - 1, l], 4 * l)
            }
            FamilySpec::OrthogonalHermitian { l } => {
                let l = u64::from(l);
                ([l - 2, l - 2, 2], 4 * (l - 1))
            }
            FamilySpec::Exceptional(row) => {
                let (num, den, _, _) = FIXED_ROWS[(row - 6) as usize];
                (num, den)
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}", self.row())?;
        match *self {
            FamilySpec::Orthogonal { k, l, m }
            | FamilySpec::Unitary { k, l, m }
            | FamilySpec::Symplectic { k, l, m } => write!(f, " (k={k}, l={l}, m={m})"),
            FamilySpec::UnitaryHermitian { l } | FamilySpec::OrthogonalHermitian { l } => write!(f, " (l={l})"),
            FamilySpec::Exceptional(_) => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

/// Parameter triple of a table row.
pub fn make_space(spec: FamilySpec) -> Result<SpaceParams> {
    spec.check()?;
    let (num, den) = spec.rationals();
    let params = SpaceParams::from_rationals(num, den);
    // every table row lands in (0, 1/2]; kept as a guard on the table data
    SpaceParams::new(params.a1, params.a2, params.a3).map_err(|e| Error::InvalidFamily {
        row: spec.row(),
        reason: e.to_string(),
    })?;
    Ok(params)
}

/// JSON record `{family, params, a1, a2, a3, theta}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogRecord {
    pub family: u8,
    pub params: IntParams,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub theta: f64,
}

impl CatalogRecord {
    pub fn new(spec: FamilySpec, space: &SpaceParams) -> Self {
        Self {
            family: spec.row(),
            params: spec.int_params(),
            a1: space.a1,
            a2: space.a2,
            a3: space.a3,
            theta: space.theta,
        }
    }
}

/// One representative instance per row: the smallest admissible integer
/// parameters for rows 1-5, the fixed triple for rows 6-15.
pub fn representatives() -> Vec<FamilySpec> {
    (1..=ROW_COUNT)
        .map(|row| match row {
            1 => FamilySpec::Orthogonal { k: 2, l: 2, m: 2 },
            2 => FamilySpec::Unitary { k: 1, l: 1, m: 1 },
            3 => FamilySpec::Symplectic { k: 1, l: 1, m: 1 },
            4 => FamilySpec::UnitaryHermitian { l: 2 },
            5 => FamilySpec::OrthogonalHermitian { l: 4 },
            _ => FamilySpec::Exceptional(row),
        })
        .collect()
}
