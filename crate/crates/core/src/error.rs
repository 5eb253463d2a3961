use core::fmt;

/// Errors shared by the library modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Elliptic parameter m = k² outside [0, 1).
    ParameterOutOfRange(f64),
    /// Elliptic modulus k outside [0, 1].
    ModulusOutOfRange(f64),
    /// Ellipse semi-axes violate a required ordering (e.g. a_c ≤ b_c).
    InvalidAxes { a: f64, b: f64 },
    /// A bisection search did not bracket a sign change.
    RootNotBracketed { lo: f64, hi: f64 },
    /// EG − F² ≤ 0 at a surface node: the parametrization is not an
    /// immersion there.
    DegenerateMetric { u: f64, v: f64 },
    /// The closed-form curvature denominator came out non-positive,
    /// which signals a convention mismatch with the numeric pipeline.
    NonPositiveDenominator { u: f64, v: f64, value: f64 },
    /// Facet index outside 1..=3.
    InvalidFacet(usize),
    /// Grid or sample-count too small for the requested operation.
    GridTooSmall { nu: usize, nv: usize },
    /// Curvature requested before `fundamental_forms` ran on the patch.
    FormsNotFilled,
    /// Two space curves approach closer than the kernel can resolve.
    CurvesTooClose { min_distance: f64, required: f64 },
    /// A curve has fewer than 3 points or repeats consecutive points.
    DegenerateCurve,
    /// Too few samples along a swept curve.
    TooFewSamples { got: usize, min: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParameterOutOfRange(m) => {
                write!(f, "elliptic parameter m = {m} outside [0, 1)")
            }
            Error::ModulusOutOfRange(k) => {
                write!(f, "elliptic modulus k = {k} outside [0, 1]")
            }
            Error::InvalidAxes { a, b } => {
                write!(f, "semi-axes ({a}, {b}) must satisfy a > b > 0")
            }
            Error::RootNotBracketed { lo, hi } => {
                write!(f, "root not bracketed in [{lo}, {hi}]")
            }
            Error::DegenerateMetric { u, v } => {
                write!(f, "EG - F^2 <= 0 at (u, v) = ({u}, {v})")
            }
            Error::NonPositiveDenominator { u, v, value } => {
                write!(
                    f,
                    "closed-form denominator {value} <= 0 at (u, v) = ({u}, {v})"
                )
            }
            Error::InvalidFacet(i) => write!(f, "facet index {i} outside 1..=3"),
            Error::GridTooSmall { nu, nv } => {
                write!(f, "grid {nu}x{nv} below the minimum resolution")
            }
            Error::FormsNotFilled => {
                write!(f, "fundamental forms have not been computed for this patch")
            }
            Error::CurvesTooClose {
                min_distance,
                required,
            } => write!(
                f,
                "curves approach to {min_distance}, below the {required} separation \
                 required for a reliable linking number"
            ),
            Error::DegenerateCurve => write!(f, "curve is degenerate"),
            Error::TooFewSamples { got, min } => {
                write!(f, "{got} samples requested, at least {min} required")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
