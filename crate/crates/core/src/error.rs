use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FusionError {
    #[error("image must be at least 1x1, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },

    #[error("{width}x{height} image needs {expected} pixels, got {actual}")]
    PixelCount {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },

    #[error("dimension mismatch: {left_width}x{left_height} vs {right_width}x{right_height}")]
    DimensionMismatch {
        left_width: usize,
        left_height: usize,
        right_width: usize,
        right_height: usize,
    },

    #[error("{metric} needs at least {min_width}x{min_height} pixels, got {width}x{height}")]
    ImageTooSmall {
        metric: &'static str,
        min_width: usize,
        min_height: usize,
        width: usize,
        height: usize,
    },

    #[error("gamma must be positive and finite, got {0}")]
    InvalidGamma(f64),

    #[error("unknown fusion method `{0}`")]
    UnknownMethod(String),

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
}

impl FusionError {
    pub(crate) fn mismatch(left: (usize, usize), right: (usize, usize)) -> Self {
        FusionError::DimensionMismatch {
            left_width: left.0,
            left_height: left.1,
            right_width: right.0,
            right_height: right.1,
        }
    }
}

pub type Result<T> = std::result::Result<T, FusionError>;
