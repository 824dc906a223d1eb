//! Process-wide size bounds for the exponential searches.
//!
//! Defaults can be overridden with `GFQREG_MAX_CLASSES` (parallel classes or
//! ground-set elements entering a subset enumeration) and `GFQREG_MAX_FIELD`
//! (largest field accepted by representability and projective-equivalence
//! searches).

use std::sync::OnceLock;

pub const DEFAULT_MAX_CLASSES: usize = 24;
pub const DEFAULT_MAX_FIELD: u32 = 16;
pub const DEFAULT_MAX_FIELD_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_classes: usize,
    pub max_field: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_classes: DEFAULT_MAX_CLASSES,
            max_field: DEFAULT_MAX_FIELD,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(v) = std::env::var("GFQREG_MAX_CLASSES")
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            l.max_classes = v;
        }
        if let Some(v) = std::env::var("GFQREG_MAX_FIELD")
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            l.max_field = v;
        }
        l
    }
}

static LIMITS: OnceLock<Limits> = OnceLock::new();

/// Current limits, read from the environment on first use.
pub fn limits() -> Limits {
    *LIMITS.get_or_init(Limits::from_env)
}
