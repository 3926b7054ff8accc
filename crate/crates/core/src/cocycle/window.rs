use serde::{Deserialize, Serialize};

use super::CocycleError;

/// Index truncation `[-N, N]` with a core `[-N + margin, N - margin]` on which
/// dimensions are reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    half_width: i64,
    margin: i64,
}

impl Window {
    pub const DEFAULT_HALF_WIDTH: u32 = 12;
    pub const DEFAULT_MARGIN: u32 = 3;
    pub const DEFAULT_STABILIZATION_STEPS: usize = 3;

    pub fn new(half_width: u32, margin: u32) -> Result<Self, CocycleError> {
        if margin < 1 {
            return Err(CocycleError::InvalidWindow("margin must be at least 1".into()));
        }
        if half_width < margin + 3 {
            return Err(CocycleError::InvalidWindow(format!(
                "window {half_width} with margin {margin} leaves a core narrower than 3"
            )));
        }
        Ok(Window {
            half_width: half_width.into(),
            margin: margin.into(),
        })
    }

    pub fn half_width(&self) -> i64 {
        self.half_width
    }

    pub fn margin(&self) -> i64 {
        self.margin
    }

    pub fn core_half_width(&self) -> i64 {
        self.half_width - self.margin
    }

    pub fn contains(&self, index: i64) -> bool {
        index.abs() <= self.half_width
    }

    pub fn core_contains(&self, index: i64) -> bool {
        index.abs() <= self.core_half_width()
    }

    /// The window `N + 2 * step` with the same margin.
    pub fn widened(&self, step: usize) -> Window {
        Window {
            half_width: self.half_width + 2 * step as i64,
            margin: self.margin,
        }
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::new(Self::DEFAULT_HALF_WIDTH, Self::DEFAULT_MARGIN).expect("default window is valid")
    }
}
